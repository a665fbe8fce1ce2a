fn main() {
    // Die quietly on closed pipes (e.g. `eigenflow ... | head`) instead of
    // panicking on the first print after the reader goes away.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(eigenflow::cli::run());
}

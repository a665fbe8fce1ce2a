//! Permutations on `{0, .., n-1}` stored as an image vector.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation `p` with `p.apply(i) = image[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation from its image vector, rejecting non-bijections.
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n {
                return Err(Error::parse(format!(
                    "permutation image {v} out of range for size {n}"
                )));
            }
            if seen[v] {
                return Err(Error::parse(format!(
                    "permutation image contains {v} twice"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Composition `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "size mismatch in composition");
        Permutation {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Cycle decomposition. Each cycle lists its elements in traversal order
    /// starting from the smallest; fixed points appear as singleton cycles.
    /// Cycles are ordered by their smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.image[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image[cur];
            }
            out.push(cycle);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_roundtrip() {
        let p = Permutation::identity(5);
        assert!(p.is_identity());
        assert_eq!(p.inverse(), p);
        assert_eq!(p.compose(&p), p);
        assert_eq!(p.cycles().len(), 5);
    }

    #[test]
    fn from_image_rejects_non_bijections() {
        assert!(Permutation::from_image(vec![0, 0, 2]).is_err());
        assert!(Permutation::from_image(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_image(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn compose_applies_right_operand_first() {
        // other: 0->1->2->0, self: swap 0,1
        let other = Permutation::from_image(vec![1, 2, 0]).unwrap();
        let swap = Permutation::from_image(vec![1, 0, 2]).unwrap();
        let c = swap.compose(&other);
        assert_eq!(c.apply(0), 0); // other: 0->1, swap: 1->0
        assert_eq!(c.apply(1), 2);
        assert_eq!(c.apply(2), 1);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Permutation::from_image(vec![3, 1, 4, 0, 2]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn cycles_of_mixed_permutation() {
        // (0 3)(1)(2 4)
        let p = Permutation::from_image(vec![3, 1, 4, 0, 2]).unwrap();
        let cycles = p.cycles();
        assert_eq!(cycles, vec![vec![0, 3], vec![1], vec![2, 4]]);
    }
}

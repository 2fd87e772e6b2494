//! Exponent vectors over a list of generators or atoms.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A factorization: one non-negative exponent per atom (poset factorizations)
/// or per generator, multiplicity first (semigroup factorizations).
///
/// Ordering is lexicographic on the exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Factorization(pub Vec<u32>);

impl Factorization {
    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut z = Self::zero(len);
        z.0[i] = 1;
        z
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total number of atoms used.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn shares_support(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).any(|(&a, &b)| a > 0 && b > 0)
    }

    pub fn plus_unit(&self, i: usize) -> Self {
        let mut z = self.clone();
        z.0[i] += 1;
        z
    }

    pub fn minus_unit(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut z = self.clone();
        z.0[i] -= 1;
        Some(z)
    }

    /// Same exponents with `first` prepended.
    pub fn prepend(&self, first: u32) -> Self {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(first);
        v.extend_from_slice(&self.0);
        Self(v)
    }

    /// Drops the leading coordinate.
    pub fn tail(&self) -> Self {
        Self(self.0[1..].to_vec())
    }

    /// Componentwise `self - other + add`, if `other <= self`.
    pub fn apply_move(&self, remove: &Self, add: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.len());
        for ((&z, &r), &a) in self.0.iter().zip(&remove.0).zip(&add.0) {
            out.push(z.checked_sub(r)? + a);
        }
        Some(Self(out))
    }

    /// `self - other` as signed integers.
    pub fn difference(&self, other: &Self) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| i64::from(a) - i64::from(b))
            .collect()
    }
}

/// A pair of factorizations of the same element.
///
/// `at` is the element both sides evaluate to: a semigroup element for
/// semigroup trades, a residue class for poset trades. The derived ordering
/// sorts by `(at, left, right)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Trade {
    pub at: u64,
    pub left: Factorization,
    pub right: Factorization,
}

impl Trade {
    /// `left - right`, one row of a presentation matrix.
    pub fn row(&self) -> Vec<i64> {
        self.left.difference(&self.right)
    }
}

impl From<Vec<u32>> for Factorization {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_and_moves() {
        let z = Factorization(vec![3, 0, 0, 1]);
        assert_eq!(z.support().collect::<Vec<_>>(), vec![0, 3]);
        assert!(z.shares_support(&Factorization(vec![1, 0, 0, 2])));
        assert!(!z.shares_support(&Factorization(vec![0, 1, 1, 0])));
        let moved = z
            .apply_move(&Factorization(vec![3, 0, 0, 0]), &Factorization(vec![0, 1, 1, 0]))
            .unwrap();
        assert_eq!(moved, Factorization(vec![0, 1, 1, 1]));
        assert_eq!(z.apply_move(&Factorization(vec![4, 0, 0, 0]), &z), None);
        assert_eq!(z.prepend(5).tail(), z);
    }
}

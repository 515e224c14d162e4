use alloc::vec::Vec;
use core::ops::{Deref, DerefMut};

use crate::error::{invalid, Result};

/// Dense real coefficient vector with finite entries.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Signal(Vec<f64>);

impl Signal {
    /// Checked constructor: rejects non-finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid(alloc::format!("non-finite entry at index {i}")));
        }
        Ok(Signal(values))
    }

    pub fn zeros(n: usize) -> Self {
        Signal(alloc::vec![0.0; n])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> Support {
        Support::from_sorted_unchecked(
            self.0.len(),
            self.0
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    /// Copy of `x` restricted to `support`, zero elsewhere.
    pub fn restricted(x: &[f64], support: &Support) -> Self {
        let mut out = alloc::vec![0.0; x.len()];
        for &i in support.indices() {
            out[i] = x[i];
        }
        Signal(out)
    }
}

impl From<Vec<f64>> for Signal {
    fn from(v: Vec<f64>) -> Self {
        debug_assert!(v.iter().all(|x| x.is_finite()));
        Signal(v)
    }
}

impl Deref for Signal {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for Signal {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

/// Strictly increasing set of indices into an ambient dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Support {
    n: usize,
    indices: Vec<usize>,
}

impl Support {
    /// Builds a support from arbitrary indices; sorts, rejects duplicates and
    /// out-of-range entries.
    pub fn new(n: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("duplicate index in support"));
        }
        if indices.last().is_some_and(|&i| i >= n) {
            return Err(invalid("support index out of range"));
        }
        Ok(Support { n, indices })
    }

    pub fn empty(n: usize) -> Self {
        Support {
            n,
            indices: Vec::new(),
        }
    }

    pub(crate) fn from_sorted_unchecked(n: usize, indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.last().is_none_or(|&i| i < n));
        Support { n, indices }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Support {
            n: mask.len(),
            indices: mask
                .iter()
                .enumerate()
                .filter(|(_, b)| **b)
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn to_mask(&self) -> Vec<bool> {
        let mut mask = alloc::vec![false; self.n];
        for &i in &self.indices {
            mask[i] = true;
        }
        mask
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn union(&self, other: &Support) -> Support {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (
            self.indices.iter().peekable(),
            other.indices.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x < y {
                        out.push(x);
                        a.next();
                    } else if y < x {
                        out.push(y);
                        b.next();
                    } else {
                        out.push(x);
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Support {
            n: self.n.max(other.n),
            indices: out,
        }
    }

    pub fn intersection(&self, other: &Support) -> Support {
        Support {
            n: self.n.max(other.n),
            indices: self
                .indices
                .iter()
                .copied()
                .filter(|&i| other.contains(i))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn support_validation() {
        assert_eq!(Support::new(4, vec![3, 1]).unwrap().indices(), &[1, 3]);
        assert!(Support::new(4, vec![1, 1]).is_err());
        assert!(Support::new(4, vec![4]).is_err());
    }

    #[test]
    fn signal_rejects_nan() {
        assert!(Signal::new(vec![1.0, f64::NAN]).is_err());
        assert_eq!(
            Signal::new(vec![0.0, 2.0]).unwrap().support().indices(),
            &[1]
        );
    }

    #[test]
    fn union_and_intersection() {
        let a = Support::new(6, vec![0, 2, 4]).unwrap();
        let b = Support::new(6, vec![1, 2, 5]).unwrap();
        assert_eq!(a.union(&b).indices(), &[0, 1, 2, 4, 5]);
        assert_eq!(a.intersection(&b).indices(), &[2]);
    }
}

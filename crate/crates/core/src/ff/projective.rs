use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::field::{Fe, Field};
use super::matrix::FFMatrix;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// The points of PG(n-1, q), each stored as the row vector whose first
/// nonzero entry is 1. Matrices act on the right, v -> vM, so products of
/// matrices map to products of permutations in the same order.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    field: Arc<Field>,
    n: usize,
    points: Vec<Vec<Fe>>,
    index: FxHashMap<Vec<Fe>, usize>,
}

impl ProjectiveSpace {
    pub fn new(field: &Arc<Field>, n: usize) -> Result<Self> {
        let q = field.size() as u128;
        let count = (q.checked_pow(n as u32).unwrap_or(u128::MAX) - 1) / (q - 1);
        if n == 0 || count > 1 << 20 {
            return Err(Error::InvalidParameters(format!(
                "projective space of dimension {n} is too large"
            )));
        }
        let mut points = Vec::with_capacity(count as usize);
        for lead in 0..n {
            let free = n - lead - 1;
            for k in 0..(q as u64).pow(free as u32) {
                let mut v = vec![0; n];
                v[lead] = 1;
                let mut k = k;
                for slot in v.iter_mut().skip(lead + 1) {
                    *slot = (k % q as u64) as Fe;
                    k /= q as u64;
                }
                points.push(v);
            }
        }
        let index = points.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(ProjectiveSpace {
            field: field.clone(),
            n,
            points,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Fe>] {
        &self.points
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn index_of(&self, v: &[Fe]) -> Option<usize> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        let inv = self.field.inv(lead).ok()?;
        let normal: Vec<Fe> = v.iter().map(|&x| self.field.mul(x, inv)).collect();
        self.index.get(&normal).copied()
    }

    fn permutation_by(&self, f: impl Fn(&[Fe]) -> Vec<Fe>) -> Result<Permutation> {
        let images = self
            .points
            .iter()
            .map(|v| self.index_of(&f(v)).ok_or(Error::NotBijectiveAction))
            .collect::<Result<Vec<_>>>()?;
        Ok(Permutation::from_images(images)?)
    }

    /// The permutation v -> vM of the points.
    pub fn permutation(&self, m: &FFMatrix) -> Result<Permutation> {
        if m.rows() != self.n || m.cols() != self.n || **m.field() != *self.field {
            return Err(Error::Dimension(format!(
                "matrix does not act on PG({}, q)",
                self.n - 1
            )));
        }
        let f = &self.field;
        self.permutation_by(|v| {
            (0..self.n)
                .map(|c| (0..self.n).fold(0, |acc, r| f.add(acc, f.mul(v[r], m.get(r, c)))))
                .collect()
        })
    }

    /// The permutation induced by the field automorphism x -> x^(p^t).
    pub fn frobenius(&self, t: u32) -> Result<Permutation> {
        self.permutation_by(|v| v.iter().map(|&x| self.field.frobenius(x, t)).collect())
    }
}

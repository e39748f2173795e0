use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{Fe, Field};
use super::matrix::{FFMatrix, RowReducer};
use crate::error::{Error, Result};

/// The matrix groups whose automorphisms the lifting code handles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// SL(d, p^e).
    Sl { d: usize, p: u32, e: u32 },
    /// Sp(4, 2^e).
    Sp4 { e: u32 },
    /// Ω⁺(2d, 3).
    OmegaPlus { d: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Sl { d, p, e } => write!(f, "SL({d},{})", p.pow(e)),
            Family::Sp4 { e } => write!(f, "Sp(4,{})", 1u32 << e),
            Family::OmegaPlus { d } => write!(f, "Omega+({},3)", 2 * d),
        }
    }
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidParameters(format!("{self}: {s}")));
        match *self {
            Family::Sl { d, .. } if d < 2 => bad("needs d >= 2"),
            Family::Sp4 { e } if e < 2 => bad("needs e >= 2"),
            Family::OmegaPlus { d } if d < 4 => bad("needs d >= 4"),
            _ => Ok(()),
        }
    }

    pub fn field(&self) -> Result<Arc<Field>> {
        self.validate()?;
        let (p, e) = match *self {
            Family::Sl { p, e, .. } => (p, e),
            Family::Sp4 { e } => (2, e),
            Family::OmegaPlus { .. } => (3, 1),
        };
        Ok(Arc::new(Field::new(p, e)?))
    }

    /// Dimension of the natural module.
    pub fn dim(&self) -> usize {
        match *self {
            Family::Sl { d, .. } => d,
            Family::Sp4 { .. } => 4,
            Family::OmegaPlus { d } => 2 * d,
        }
    }

    /// Row of the basis vector labelled ±i (i >= 1). Symplectic labels are
    /// ordered 1, -1, 2, -2 so that the form is block diagonal; orthogonal
    /// labels are ordered 1..d, -1..-d.
    fn index(&self, i: i32) -> usize {
        let a = i.unsigned_abs() as usize - 1;
        match *self {
            Family::Sl { .. } => a,
            Family::Sp4 { .. } => 2 * a + usize::from(i < 0),
            Family::OmegaPlus { d } => a + if i < 0 { d } else { 0 },
        }
    }

    /// I + Σ c·e_{i,j} over the given labelled entries.
    fn elementary(&self, f: &Arc<Field>, terms: &[(i32, i32, Fe)]) -> FFMatrix {
        let mut m = FFMatrix::identity(f, self.dim());
        for &(i, j, c) in terms {
            let (r, k) = (self.index(i), self.index(j));
            let v = f.add(m.get(r, k), c);
            m.set(r, k, v);
        }
        m
    }

    /// The generating set L of root elements, each of order p.
    pub fn standard_generators(&self) -> Result<Vec<FFMatrix>> {
        let f = self.field()?;
        let mut out = Vec::new();
        match *self {
            Family::Sl { d, .. } => {
                for i in 1..=d as i32 {
                    for j in 1..=d as i32 {
                        if i != j {
                            for b in f.units() {
                                out.push(self.elementary(&f, &[(i, j, b)]));
                            }
                        }
                    }
                }
            }
            Family::Sp4 { .. } | Family::OmegaPlus { .. } => {
                let d = self.dim() as i32 / 2;
                let sp = matches!(self, Family::Sp4 { .. });
                let pairs: Vec<(i32, i32)> = (1..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j))).collect();
                for ty in 0..4 {
                    for &(i, j) in &pairs {
                        for b in f.units() {
                            let nb = f.neg(b);
                            let terms = match ty {
                                0 => vec![(i, j, b), (-j, -i, nb)],
                                1 => vec![(-i, -j, nb), (j, i, b)],
                                2 if sp => vec![(i, -j, b), (j, -i, b)],
                                2 => vec![(i, -j, b), (j, -i, nb)],
                                _ if sp => vec![(-i, j, b), (-j, i, b)],
                                _ => vec![(-i, j, b), (-j, i, nb)],
                            };
                            out.push(self.elementary(&f, &terms));
                        }
                    }
                }
                if sp {
                    for i in 1..=d {
                        for b in f.units() {
                            out.push(self.elementary(&f, &[(i, -i, b)]));
                        }
                        for b in f.units() {
                            out.push(self.elementary(&f, &[(-i, i, b)]));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Gram matrix of the preserved form.
    pub fn form_matrix(&self) -> Result<FFMatrix> {
        let f = self.field()?;
        let n = self.dim();
        let mut x = FFMatrix::zero(&f, n, n);
        match *self {
            Family::Sl { .. } => {
                return Err(Error::InvalidParameters(format!("{self} preserves no form")));
            }
            Family::Sp4 { .. } => {
                for b in 0..2 {
                    x.set(2 * b, 2 * b + 1, 1);
                    x.set(2 * b + 1, 2 * b, f.neg(1));
                }
            }
            Family::OmegaPlus { d } => {
                for i in 0..d {
                    x.set(i, d + i, 1);
                    x.set(d + i, i, 1);
                }
            }
        }
        Ok(x)
    }

    /// Membership in the matrix group up to the checks available here:
    /// determinant one, and the form is preserved where there is one.
    pub fn contains(&self, m: &FFMatrix) -> Result<bool> {
        let n = self.dim();
        if m.rows() != n || m.cols() != n {
            return Ok(false);
        }
        if m.det()? != 1 {
            return Ok(false);
        }
        match self {
            Family::Sl { .. } => Ok(true),
            _ => {
                let x = self.form_matrix()?;
                Ok(m.transpose().mul(&x)?.mul(m)? == x)
            }
        }
    }

    /// The scalar matrices in the group.
    pub fn center(&self) -> Result<Vec<FFMatrix>> {
        let f = self.field()?;
        let n = self.dim();
        let mut out = Vec::new();
        for c in f.units() {
            let s = FFMatrix::scalar(&f, n, c);
            let ok = match self {
                Family::Sl { .. } => f.pow(c, n as u64) == 1,
                // -I lies in Ω⁺(2d,3) exactly when d is even.
                Family::OmegaPlus { d } => c == 1 || d % 2 == 0,
                Family::Sp4 { .. } => c == 1,
            };
            if ok {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// The characteristic of the field, which is the order of every member of L.
    pub fn characteristic(&self) -> u32 {
        match *self {
            Family::Sl { p, .. } => p,
            Family::Sp4 { .. } => 2,
            Family::OmegaPlus { .. } => 3,
        }
    }

    pub fn field_degree(&self) -> u32 {
        match *self {
            Family::Sl { e, .. } => e,
            Family::Sp4 { e } => e,
            Family::OmegaPlus { .. } => 1,
        }
    }
}

/// Row-reduces the linear system F·U_j = A_j·F in the n² entries of F,
/// with the unknown F[r][k] at column r*n + k. Stops early once only F = 0
/// remains, if asked to.
fn commutation_system(gens: &[FFMatrix], images: &[FFMatrix], stop_at_zero: bool) -> Result<(usize, RowReducer)> {
    if gens.len() != images.len() || gens.is_empty() {
        return Err(Error::Dimension(format!(
            "{} generators, {} images",
            gens.len(),
            images.len()
        )));
    }
    let n = gens[0].rows();
    let field = gens[0].field().clone();
    for m in gens.iter().chain(images) {
        if m.rows() != n || m.cols() != n {
            return Err(Error::Dimension("matrices differ in size".into()));
        }
        if **m.field() != *field {
            return Err(Error::Dimension("matrices over different fields".into()));
        }
    }
    let f = &field;
    let mut reducer = RowReducer::new(&field, n * n);
    for (u, a) in gens.iter().zip(images) {
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![0; n * n];
                for k in 0..n {
                    row[r * n + k] = f.add(row[r * n + k], u.get(k, c));
                    row[k * n + c] = f.sub(row[k * n + c], a.get(r, k));
                }
                reducer.push(row);
            }
        }
        if stop_at_zero && reducer.rank() == n * n {
            break;
        }
    }
    Ok((n, reducer))
}

/// A nonzero F with F·U_j = A_j·F for all j, from the first nullspace basis
/// vector. Returns `None` when only F = 0 solves the system.
///
/// When both representations are irreducible a nonzero solution is
/// invertible; a singular one is reported as an error.
pub fn solve_commutation(gens: &[FFMatrix], images: &[FFMatrix]) -> Result<Option<FFMatrix>> {
    let (n, reducer) = commutation_system(gens, images, true)?;
    let Some(v) = reducer.nullspace().into_iter().next() else {
        return Ok(None);
    };
    let rows: Vec<Vec<Fe>> = v.chunks(n).map(|c| c.to_vec()).collect();
    let m = FFMatrix::from_rows(gens[0].field(), &rows)?;
    if m.det()? == 0 {
        return Err(Error::Precondition(
            "singular commutation solution: the representations are not irreducible".into(),
        ));
    }
    Ok(Some(m))
}

/// Dimension of the space of F with F·U_j = A_j·F.
pub fn commutation_dimension(gens: &[FFMatrix], images: &[FFMatrix]) -> Result<usize> {
    let (n, reducer) = commutation_system(gens, images, false)?;
    Ok(n * n - reducer.rank())
}

/// An automorphism of a matrix group given by the images of its standard
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAut {
    family: Family,
    images: Vec<FFMatrix>,
}

impl MatrixAut {
    pub fn new(family: Family, images: Vec<FFMatrix>) -> Result<Self> {
        let gens = family.standard_generators()?;
        if images.len() != gens.len() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators of {family}",
                images.len(),
                gens.len()
            )));
        }
        for m in &images {
            if !family.contains(m)? {
                return Err(Error::BadHint(format!("image is not in {family}")));
            }
        }
        Ok(MatrixAut { family, images })
    }

    /// Skips the membership checks; the images must already lie in the group.
    pub(crate) fn new_unchecked(family: Family, images: Vec<FFMatrix>) -> Self {
        MatrixAut { family, images }
    }

    pub fn identity(family: Family) -> Result<Self> {
        Ok(MatrixAut {
            family,
            images: family.standard_generators()?,
        })
    }

    /// U -> F U F^-1.
    pub fn conjugation(family: Family, f: &FFMatrix) -> Result<Self> {
        let inv = f.inverse()?;
        let images = family
            .standard_generators()?
            .iter()
            .map(|u| f.mul(u)?.mul(&inv))
            .collect::<Result<_>>()?;
        Ok(MatrixAut { family, images })
    }

    /// The automorphism U -> (U^-1)^t.
    pub fn transpose_inverse(family: Family) -> Result<Self> {
        let images = family
            .standard_generators()?
            .iter()
            .map(|u| Ok(u.inverse()?.transpose()))
            .collect::<Result<_>>()?;
        Ok(MatrixAut { family, images })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn images(&self) -> &[FFMatrix] {
        &self.images
    }
}

use std::fmt;
use std::sync::Arc;

use super::field::{Fe, Field};
use crate::error::{Error, Result};

/// Dense matrix over a finite field, row-major.
#[derive(Clone)]
pub struct FFMatrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl PartialEq for FFMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && *self.field == *other.field
    }
}

impl Eq for FFMatrix {}

impl std::hash::Hash for FFMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.field)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FFMatrix {
    pub fn zero(field: &Arc<Field>, rows: usize, cols: usize) -> Self {
        FFMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: &Arc<Field>, n: usize, c: Fe) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(field: &Arc<Field>, rows: &[Vec<Fe>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if r == 0 || c == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for &x in row {
                if x >= field.size() {
                    return Err(Error::InvalidParameters(format!("{x} is not an element of {field:?}")));
                }
                data.push(x);
            }
        }
        Ok(FFMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: Fe) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn mul(&self, other: &FFMatrix) -> Result<FFMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = FFMatrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = f.add(out.get(i, j), f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FFMatrix) -> Result<FFMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shapes differ".into()));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(FFMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: Fe) -> FFMatrix {
        let f = &self.field;
        FFMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut out = FFMatrix::zero(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Entrywise x -> x^(p^t).
    pub fn frobenius(&self, t: u32) -> FFMatrix {
        let f = &self.field;
        FFMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.frobenius(a, t)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar_of(1)
    }

    fn is_scalar_of(&self, c: Fe) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..self.cols).all(|k| self.get(r, k) == if r == k { c } else { 0 }))
    }

    /// The scalar c if this is cI.
    pub fn scalar_value(&self) -> Option<Fe> {
        if !self.is_square() {
            return None;
        }
        let c = self.get(0, 0);
        self.is_scalar_of(c).then_some(c)
    }

    /// Some c != 0 with self = c * other, if one exists.
    pub fn proportional(&self, other: &FFMatrix) -> Option<Fe> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let f = &self.field;
        let k = other.data.iter().position(|&x| x != 0)?;
        if self.data[k] == 0 {
            return None;
        }
        let c = f.mul(self.data[k], f.inv(other.data[k]).ok()?);
        self.data
            .iter()
            .zip(&other.data)
            .all(|(&a, &b)| a == f.mul(c, b))
            .then_some(c)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!("{}x{} is not square", self.rows, self.cols)))
        }
    }

    pub fn det(&self) -> Result<Fe> {
        self.require_square()?;
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m.get(r, col) != 0) else {
                return Ok(0);
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = f.neg(det);
            }
            let pv = m.get(col, col);
            det = f.mul(det, pv);
            let inv = f.inv(pv)?;
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), inv);
                if factor != 0 {
                    m.sub_row_multiple(r, col, factor);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[r] -= factor * row[s]
    fn sub_row_multiple(&mut self, r: usize, s: usize, factor: Fe) {
        let f = self.field.clone();
        for c in 0..self.cols {
            let v = f.sub(self.get(r, c), f.mul(factor, self.get(s, c)));
            self.set(r, c, v);
        }
    }

    fn scale_row(&mut self, r: usize, factor: Fe) {
        let f = self.field.clone();
        for c in 0..self.cols {
            let v = f.mul(self.get(r, c), factor);
            self.set(r, c, v);
        }
    }

    pub fn inverse(&self) -> Result<FFMatrix> {
        self.require_square()?;
        let f = self.field.clone();
        let n = self.rows;
        let mut aug = FFMatrix::zero(&f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| aug.get(r, col) != 0).ok_or(Error::Singular)?;
            aug.swap_rows(piv, col);
            aug.scale_row(col, f.inv(aug.get(col, col))?);
            for r in 0..n {
                if r != col && aug.get(r, col) != 0 {
                    let factor = aug.get(r, col);
                    aug.sub_row_multiple(r, col, factor);
                }
            }
        }
        let mut out = FFMatrix::zero(&f, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut k: u64) -> Result<FFMatrix> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = FFMatrix::identity(&self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order, if at most `bound`.
    pub fn order(&self, bound: u64) -> Result<Option<u64>> {
        self.require_square()?;
        let mut x = self.clone();
        for k in 1..=bound {
            if x.is_identity() {
                return Ok(Some(k));
            }
            x = x.mul(self)?;
        }
        Ok(None)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.iter().filter(|p| p.is_some()).count()
    }

    /// Reduced row echelon form and, per column, the pivot row if any.
    fn rref(&self) -> (FFMatrix, Vec<Option<usize>>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = vec![None; self.cols];
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(piv, row);
            m.scale_row(row, f.inv(m.get(row, col)).unwrap());
            for r in 0..self.rows {
                if r != row && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    m.sub_row_multiple(r, row, factor);
                }
            }
            pivots[col] = Some(row);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis of the right nullspace {v : Av = 0}, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let (m, pivots) = self.rref();
        nullspace_from_rref(&self.field, &m, &pivots)
    }
}

fn nullspace_from_rref(f: &Field, m: &FFMatrix, pivots: &[Option<usize>]) -> Vec<Vec<Fe>> {
    let cols = pivots.len();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| pivots[c].is_none()) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (c, p) in pivots.iter().enumerate() {
            if let Some(r) = p {
                v[c] = f.neg(m.get(*r, free));
            }
        }
        basis.push(v);
    }
    basis
}

/// Incremental row reduction: rows are added one at a time and only the
/// echelon basis is kept, so tall systems never materialize.
pub(crate) struct RowReducer {
    field: Arc<Field>,
    cols: usize,
    /// Reduced rows, each with its pivot column; pivot entries are 1.
    rows: Vec<(usize, Vec<Fe>)>,
}

impl RowReducer {
    pub fn new(field: &Arc<Field>, cols: usize) -> Self {
        RowReducer {
            field: field.clone(),
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn push(&mut self, mut v: Vec<Fe>) {
        let f = &self.field;
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return;
        };
        let inv = f.inv(v[p]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        self.rows.push((p, v));
    }

    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let mut sorted = self.rows.clone();
        sorted.sort_by_key(|(p, _)| *p);
        let mut pivots = vec![None; self.cols];
        let mut m = FFMatrix::zero(&self.field, sorted.len().max(1), self.cols);
        for (r, (p, row)) in sorted.iter().enumerate() {
            pivots[*p] = Some(r);
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        nullspace_from_rref(&self.field, &m, &pivots)
    }
}

//! Permutations of `{0, .., n-1}` stored as image tables.
//!
//! Composition is left-to-right: `a.compose(&b)` applies `a` first and then
//! `b`, so `x^(ab) = (x^a)^b`. Text I/O uses 1-based disjoint cycle notation.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("point {point} out of range for degree {degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image table is not a bijection")]
    NotBijection,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from 0-based cycles; unmentioned points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p >= degree {
                    return Err(PermError::OutOfRange { point: p + 1, degree });
                }
                if seen[p] {
                    return Err(PermError::RepeatedPoint(p + 1));
                }
                seen[p] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based disjoint cycle notation such as `(1 2 3)(4 5)` or `()`.
    /// Points inside a cycle may be separated by spaces or commas.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let s = text.trim();
        if s.is_empty() {
            return Err(PermError::Malformed("empty string".into()));
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(PermError::Malformed(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(PermError::Malformed("unbalanced parenthesis".into()));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(PermError::Malformed("nested parenthesis".into()));
            }
            let mut cycle = Vec::new();
            for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| PermError::Malformed(format!("bad point {tok:?}")))?;
                if p == 0 || p > degree {
                    return Err(PermError::OutOfRange { point: p, degree });
                }
                cycle.push(p - 1);
            }
            if cycle.is_empty() && !(s == "()") {
                return Err(PermError::Malformed("empty cycle".into()));
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    fn mul_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `other^-1 * self * other`, i.e. `self` conjugated by `other`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[other.images[i] as usize] = other.images[x as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles (0-based), fixed points omitted, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Least k >= 1 with self^k = 1, the lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::from(1u32), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    /// Element order when it fits in a machine word.
    pub fn order_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for c in self.cycles() {
            let l = c.len() as u64;
            acc = acc.checked_mul(l / acc.gcd(&l))?;
        }
        Some(acc)
    }

    pub fn moves(&self, point: usize) -> bool {
        self.image(point) != point
    }

    /// Smallest point that is not fixed.
    pub fn first_moved(&self) -> Option<usize> {
        (0..self.degree()).find(|&p| self.moves(p))
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Shifts the support by `offset` inside a domain of size `degree`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation { images }
    }

    /// Restriction to `[start, start + len)`, which must be invariant.
    pub fn restrict(&self, start: usize, len: usize) -> Permutation {
        let images = (start..start + len)
            .map(|i| {
                let x = self.image(i);
                debug_assert!(x >= start && x < start + len);
                (x - start) as u32
            })
            .collect();
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product; panics on degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

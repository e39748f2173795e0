//! Lifting automorphisms of projective groups to their matrix covers and
//! sorting them into inner-diagonal, field and graph parts.

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{solve_commutation, FFMatrix, Family, MatrixAut};

/// An automorphism of the projective group, given by a representative
/// matrix of λ(UZ) for each U in the standard generating set L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveAut {
    family: Family,
    images: Vec<FFMatrix>,
}

impl ProjectiveAut {
    pub fn new(family: Family, images: Vec<FFMatrix>) -> Result<Self> {
        let n = family.standard_generators()?.len();
        if images.len() != n {
            return Err(Error::Dimension(format!(
                "{} images for {n} generators of {family}",
                images.len()
            )));
        }
        for m in &images {
            if !family.contains(m)? {
                return Err(Error::BadHint(format!("image is not in {family}")));
            }
        }
        Ok(ProjectiveAut { family, images })
    }

    /// The projection of a matrix automorphism.
    pub fn from_matrix_aut(alpha: &MatrixAut) -> Self {
        ProjectiveAut {
            family: alpha.family(),
            images: alpha.images().to_vec(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn images(&self) -> &[FFMatrix] {
        &self.images
    }
}

/// Whether `a` and `b` lie in the same coset of the centre.
pub fn projectively_equal(family: &Family, a: &FFMatrix, b: &FFMatrix) -> Result<bool> {
    let q = a.mul(&b.inverse()?)?;
    Ok(family.center()?.contains(&q))
}

/// What the coset scans saw while lifting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub cosets: usize,
    pub coset_size: usize,
    /// Every scanned coset held exactly one element of order p.
    pub unique: bool,
}

fn has_order(m: &FFMatrix, p: u64) -> Result<bool> {
    Ok(!m.is_identity() && m.pow(p)?.is_identity())
}

fn lift_by_scan(lambda: &ProjectiveAut) -> Result<(MatrixAut, LiftReport)> {
    let family = lambda.family;
    let center = family.center()?;
    let p = family.characteristic() as u64;
    let mut images = Vec::with_capacity(lambda.images.len());
    for v in &lambda.images {
        let mut found = Vec::new();
        for z in &center {
            let w = v.mul(z)?;
            if has_order(&w, p)? {
                found.push(w);
            }
        }
        match found.len() {
            0 => {
                return Err(Error::Precondition(format!(
                    "a coset of the centre holds no element of order {p}; the map is not an automorphism"
                )))
            }
            1 => images.push(found.pop().unwrap()),
            k => {
                return Err(Error::Internal(format!(
                    "a coset of the centre holds {k} elements of order {p}"
                )))
            }
        }
    }
    let report = LiftReport {
        cosets: images.len(),
        coset_size: center.len(),
        unique: true,
    };
    Ok((MatrixAut::new(family, images)?, report))
}

/// Lifts λ on PSL(d, q), d >= 3, to SL(d, q): each generator goes to the
/// unique element of order p in its coset of the centre.
pub fn lift_psl_aut(lambda: &ProjectiveAut) -> Result<(MatrixAut, LiftReport)> {
    match lambda.family {
        Family::Sl { d, p, e } if d >= 3 && !(p == 2 && e == 1 && (d == 3 || d == 4)) => lift_by_scan(lambda),
        f => Err(Error::Precondition(format!("{f} is outside the lifting range"))),
    }
}

/// Lifts λ on PΩ⁺(2d, 3) to Ω⁺(2d, 3) in the same way.
pub fn lift_omega_aut(lambda: &ProjectiveAut) -> Result<(MatrixAut, LiftReport)> {
    match lambda.family {
        Family::OmegaPlus { .. } => lift_by_scan(lambda),
        f => Err(Error::Precondition(format!("{f} is not an orthogonal family"))),
    }
}

/// Lifts for any supported family. Sp(4, 2^e) has trivial centre, so λ is
/// already a matrix automorphism there.
pub fn lift_aut(lambda: &ProjectiveAut) -> Result<(MatrixAut, LiftReport)> {
    match lambda.family {
        Family::Sl { .. } => lift_psl_aut(lambda),
        Family::OmegaPlus { .. } => lift_omega_aut(lambda),
        Family::Sp4 { .. } => {
            let report = LiftReport {
                cosets: lambda.images.len(),
                coset_size: 1,
                unique: true,
            };
            Ok((MatrixAut::new(lambda.family, lambda.images.clone())?, report))
        }
    }
}

/// An invertible F with F U F^-1 = α(U) for all U in L, if α is inner or
/// diagonal.
pub fn is_inner_or_diagonal(alpha: &MatrixAut) -> Result<Option<FFMatrix>> {
    let gens = alpha.family().standard_generators()?;
    let Some(f) = solve_commutation(&gens, alpha.images())? else {
        return Ok(None);
    };
    let inv = f.inverse()?;
    for (u, a) in gens.iter().zip(alpha.images()) {
        if f.mul(u)?.mul(&inv)? != *a {
            return Err(Error::Internal(
                "commutation solution does not conjugate L correctly".into(),
            ));
        }
    }
    Ok(Some(f))
}

/// Index permutation of L: position i goes to the position of `map(L[i])`.
fn permutation_of_l(gens: &[FFMatrix], map: impl Fn(&FFMatrix) -> Result<FFMatrix>) -> Result<Vec<usize>> {
    let index: FxHashMap<&FFMatrix, usize> = gens.iter().enumerate().map(|(i, m)| (m, i)).collect();
    gens.iter()
        .map(|m| {
            let image = map(m)?;
            index
                .get(&image)
                .copied()
                .ok_or_else(|| Error::Internal("map does not permute the generating set".into()))
        })
        .collect()
}

/// The entrywise Frobenius x -> x^(p^t) as a permutation of L.
pub fn frobenius_on_l(family: &Family, t: u32) -> Result<Vec<usize>> {
    let gens = family.standard_generators()?;
    permutation_of_l(&gens, |m| Ok(m.frobenius(t)))
}

/// The graph automorphism as a permutation of L: transpose-inverse for SL,
/// and for Sp(4, 2^e) the map exchanging long and short root elements,
/// x_r(t) -> x_r'(t^2) for r long and x_r(t) -> x_r'(t) for r short.
pub fn graph_on_l(family: &Family) -> Result<Vec<usize>> {
    match *family {
        Family::Sl { .. } => {
            let gens = family.standard_generators()?;
            permutation_of_l(&gens, |m| Ok(m.inverse()?.transpose()))
        }
        Family::Sp4 { e } => sp4_graph(e, SQUARE_LONG_ROOTS),
        Family::OmegaPlus { .. } => Err(Error::Unsupported(format!("no graph map for {family}"))),
    }
}

/// Which root lengths get t -> t^2 under the Sp4 graph map.
pub const SQUARE_LONG_ROOTS: bool = true;

/// The Sp4 graph map with t -> t^2 on the long roots if `square_long`,
/// otherwise on the short roots.
pub fn sp4_graph(e: u32, square_long: bool) -> Result<Vec<usize>> {
    let family = Family::Sp4 { e };
    let f = family.field()?;
    let units = (1usize << e) - 1;
    // L holds four short root blocks e1-e2, e2-e1, e1+e2, -e1-e2, then the
    // long root blocks 2e1, -2e1, 2e2, -2e2, each over the units 1..q in
    // order. The graph map pairs e1-e2 with 2e2 and e1+e2 with 2e1.
    let partner = [6, 7, 4, 5, 2, 3, 0, 1];
    let mut out = vec![0; 8 * units];
    for (k, &pk) in partner.iter().enumerate() {
        let long = k >= 4;
        for j in 0..units {
            let t = (j + 1) as u32;
            let image = if long == square_long { f.mul(t, t) } else { t };
            out[k * units + j] = pk * units + image as usize - 1;
        }
    }
    Ok(out)
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// α ∘ π for a permutation π of L, where π sends L[i] to L[π[i]].
fn precompose(alpha: &MatrixAut, perm: &[usize]) -> MatrixAut {
    let images = perm.iter().map(|&j| alpha.images()[j].clone()).collect();
    MatrixAut::new_unchecked(alpha.family(), images)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutClassification {
    /// Field part: α ∘ f^-t' ∘ g^-t'' is inner-diagonal, with t' in [1, e]
    /// and t' = e meaning no field part. Always 1 for Ω⁺(2d, 3).
    pub t_prime: u32,
    /// Graph part, 0 or 1. Always 0 for Ω⁺(2d, 3), where `in_gamma` carries
    /// the form test instead.
    pub t_double_prime: u32,
    pub witness: Option<FFMatrix>,
    pub in_gamma: bool,
}

/// For Ω⁺(2d, 3): Some(c) if F X F^t = cX.
pub fn form_scalar(family: &Family, f: &FFMatrix) -> Result<Option<u32>> {
    let x = family.form_matrix()?;
    let y = f.mul(&x)?.mul(&f.transpose())?;
    Ok(y.proportional(&x))
}

/// Splits α into its field and graph exponents by trying every (t', t'')
/// until α ∘ f^-t' ∘ g^-t'' becomes inner-diagonal. For Ω⁺(2d, 3) the
/// conjugating matrix is tested against the form instead.
pub fn classify_aut(alpha: &MatrixAut) -> Result<AutClassification> {
    let family = alpha.family();
    if let Family::OmegaPlus { .. } = family {
        let f = is_inner_or_diagonal(alpha)?
            .ok_or_else(|| Error::Precondition("no matrix conjugates L to its image".into()))?;
        let field = family.field()?;
        let in_gamma = form_scalar(&family, &f)?.is_some_and(|c| field.is_square(c));
        return Ok(AutClassification {
            t_prime: 1,
            t_double_prime: 0,
            witness: Some(f),
            in_gamma,
        });
    }
    if let Family::Sl { d, .. } = family {
        if d < 3 {
            return Err(Error::Precondition(format!(
                "{family}: the graph map is inner in dimension 2"
            )));
        }
    }
    let e = family.field_degree();
    let graph_inv = invert(&graph_on_l(&family)?);
    let identity: Vec<usize> = (0..graph_inv.len()).collect();
    let mut passing = Vec::new();
    for t2 in 0..2u32 {
        let g = if t2 == 0 { &identity } else { &graph_inv };
        for t1 in 1..=e {
            // f^-t' is the Frobenius with exponent e - t'.
            let fr = frobenius_on_l(&family, (e - t1) % e)?;
            // (α ∘ f^-t' ∘ g^-t'')(L[i]) = α(L[fr[g[i]]]).
            let combined: Vec<usize> = g.iter().map(|&j| fr[j]).collect();
            let beta = precompose(alpha, &combined);
            if let Some(w) = is_inner_or_diagonal(&beta)? {
                passing.push((t1, t2, w));
            }
        }
    }
    match passing.len() {
        0 => Err(Error::Precondition("no (t', t'') makes the map inner-diagonal".into())),
        1 => {
            let (t1, t2, w) = passing.pop().unwrap();
            Ok(AutClassification {
                t_prime: t1,
                t_double_prime: t2,
                witness: Some(w),
                in_gamma: t2 == 0,
            })
        }
        k => Err(Error::Internal(format!("{k} choices of (t', t'') pass"))),
    }
}

/// Whether every generator avoids the graph part (or passes the form test
/// for Ω⁺), i.e. whether the group they generate lies in the semilinear group.
pub fn subgroup_in_gamma(auts: &[MatrixAut]) -> Result<bool> {
    for a in auts {
        if !classify_aut(a)?.in_gamma {
            return Ok(false);
        }
    }
    Ok(true)
}

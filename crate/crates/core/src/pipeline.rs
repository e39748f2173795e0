//! μ(G) for Fitting-free permutation groups, assembled from one almost
//! simple group per minimal normal subgroup.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::aut_lift::{classify_aut, lift_aut, AutClassification, ProjectiveAut};
use crate::bsgs::{induced_action, PermGroup};
use crate::error::{Error, Result};
use crate::hint::{HintIso, RecognitionHint};
use crate::oracle::mu_oracle;
use crate::perm::Permutation;
use crate::simple_id::{mu_simple, name_simple, Exceptional, SimpleName, Sporadic};
use crate::small_group::{isomorphism_search, list_elements, CayleyGroup, QuotientGroup, DEFAULT_SUBGROUP_LIMIT};
use crate::socle::{normalizer_of_factor, socle_fitting_free, SocleOptions};

/// Largest automorphism group materialized for the Alt(6) row.
const ALT6_AUT_ORDER: usize = 1440;

/// N_G(S1), C_G(S1) and the orders of A = N/C and S1.
#[derive(Clone, Debug)]
pub struct InducedAut {
    pub factor: PermGroup,
    pub normalizer: PermGroup,
    pub centralizer: PermGroup,
    pub a_order: BigUint,
    pub s_order: BigUint,
}

impl InducedAut {
    /// |A/S|, which divides |Out(S)| and so is small.
    pub fn a_over_s(&self) -> Result<u64> {
        (&self.a_order / &self.s_order)
            .to_u64()
            .ok_or_else(|| Error::Internal("|A/S| does not fit in 64 bits".into()))
    }

    /// A as a permutation group on the elements of S1, acting by conjugation.
    pub fn materialize(&self, bound: u64) -> Result<PermGroup> {
        let elements = self.factor.elements(bound)?;
        let index: FxHashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let hom = induced_action(&self.normalizer, elements.len(), |g| {
            let images = elements
                .iter()
                .map(|x| index.get(&x.conjugate(g)).copied())
                .collect::<Option<Vec<_>>>()?;
            Permutation::from_images(images).ok()
        })?;
        Ok(hom.target().clone())
    }
}

/// The automorphism group induced on `factors[index]` by its normalizer.
pub fn induced_aut_group(g: &PermGroup, index: usize, factors: &[PermGroup], budget: usize) -> Result<InducedAut> {
    let factor = factors
        .get(index)
        .ok_or_else(|| Error::Precondition(format!("no factor {index}")))?
        .clone();
    let normalizer = normalizer_of_factor(g, index, factors)?;
    let centralizer = normalizer.centralizer_of_normal(&factor, budget)?;
    let a_order = normalizer.order() / centralizer.order();
    let s_order = factor.order();
    Ok(InducedAut {
        factor,
        normalizer,
        centralizer,
        a_order,
        s_order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    /// Index into the normalizer's generators.
    pub generator: usize,
    pub t_prime: u32,
    pub t_double_prime: u32,
    pub in_gamma: bool,
}

/// μ(A) with the table row that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dispatch {
    pub mu: u64,
    pub rule: String,
    pub classifications: Vec<ClassificationRecord>,
}

fn classify_all(data: &InducedAut, iso: &HintIso) -> Result<Vec<(usize, AutClassification)>> {
    data.normalizer
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let images = iso.transport(g)?;
            let lambda = ProjectiveAut::new(iso.family, images)?;
            let (alpha, _) = lift_aut(&lambda)?;
            Ok((i, classify_aut(&alpha)?))
        })
        .collect()
}

fn records(cl: &[(usize, AutClassification)]) -> Vec<ClassificationRecord> {
    cl.iter()
        .map(|(i, c)| ClassificationRecord {
            generator: *i,
            t_prime: c.t_prime,
            t_double_prime: c.t_double_prime,
            in_gamma: c.in_gamma,
        })
        .collect()
}

fn is_s6(a: &PermGroup) -> Result<bool> {
    let ca = CayleyGroup::from_group(a, ALT6_AUT_ORDER)?;
    let s6 = CayleyGroup::from_group(&PermGroup::symmetric(6), ALT6_AUT_ORDER)?;
    Ok(isomorphism_search(&ca, &s6, ALT6_AUT_ORDER)?.is_some())
}

/// Applies the almost-simple table to A. With a hint the generators of A
/// are always classified, which also validates the hint.
pub fn dispatch_table(name: &SimpleName, data: &InducedAut, iso: Option<&HintIso>) -> Result<Dispatch> {
    let mu = mu_simple(name)?;
    let k = data.a_over_s()?;
    let classified = match iso {
        Some(iso) => {
            if iso.name != *name {
                return Err(Error::BadHint(format!("hint describes {}, factor is {name}", iso.name)));
            }
            classify_all(data, iso)?
        }
        None => Vec::new(),
    };
    let done = |mu: u64, rule: &str| {
        Ok(Dispatch {
            mu,
            rule: rule.to_string(),
            classifications: records(&classified),
        })
    };
    let default = |mu| done(mu, "default");
    match *name {
        SimpleName::Alt { n: 6 } => match k {
            1 => default(mu),
            2 => {
                let a = data.materialize(360)?;
                if is_s6(&a)? {
                    default(mu)
                } else {
                    done(10, "row 1")
                }
            }
            _ => done(10, "row 1"),
        },
        SimpleName::Psl { d: 2, q: 7 } if k == 2 => done(8, "row 2"),
        SimpleName::Sporadic(Sporadic::M12) if k == 2 => done(2 * mu, "row 3"),
        SimpleName::Sporadic(Sporadic::ON) if k == 2 => done(2 * mu, "row 4"),
        SimpleName::Psu { d: 3, q: 5 } if k % 3 == 0 => done(126, "row 5"),
        SimpleName::POmegaPlus { dim: 8, q: 2 } if k % 3 == 0 => done(3 * mu, "row 6"),
        SimpleName::POmegaPlus { dim: 8, q: 3 } if k % 12 == 0 => done(3360, "row 8"),
        SimpleName::POmegaPlus { dim: 8, q: 3 } if k % 3 == 0 => done(3 * mu, "row 7"),
        SimpleName::Exceptional {
            ty: Exceptional::G2,
            q: 3,
        } if k == 2 => done(2 * mu, "row 9"),
        SimpleName::POmegaPlus { dim: 8, q } if q >= 4 && k % 3 == 0 => done(3 * mu, "row 10"),
        SimpleName::Psl { d, .. } if d >= 3 => graph_row(name, mu, k, &classified, "row 11", done),
        SimpleName::Psp { dim: 4, q } if q % 2 == 0 => graph_row(name, mu, k, &classified, "row 12", done),
        SimpleName::POmegaPlus { dim, q: 3 } => {
            if k % 2 == 1 {
                return default(mu);
            }
            if iso.is_none() {
                return Err(Error::HintRequired(format!("{name} with |A/S| = {k}")));
            }
            let all_in = classified.iter().all(|(_, c)| c.in_gamma);
            match (dim, all_in) {
                (_, true) => default(mu),
                (8, false) => Err(Error::Unsupported(format!(
                    "{name}: A leaves the orthogonal group and containment in a conjugate under triality is not decided"
                ))),
                (_, false) => {
                    let m = dim / 2;
                    let v = (3u64.pow(m) - 1) * (3u64.pow(m - 1) + 1) / 2;
                    done(v, "row 13")
                }
            }
        }
        SimpleName::Exceptional { ty, q } => {
            let row = match ty {
                Exceptional::G2 if q != 3 && q % 3 == 0 => "row 14",
                Exceptional::F4 if q % 2 == 0 => "row 15",
                Exceptional::E6 => "row 16",
                _ => return default(mu),
            };
            if k % 2 == 1 {
                default(mu)
            } else {
                Err(Error::Unsupported(format!("{name} with |A/S| = {k} ({row})")))
            }
        }
        _ => default(mu),
    }
}

/// Rows 11 and 12: μ doubles exactly when some generator of A carries a
/// graph part. An odd |A/S| leaves no room for one.
fn graph_row(
    name: &SimpleName,
    mu: u64,
    k: u64,
    classified: &[(usize, AutClassification)],
    row: &str,
    done: impl Fn(u64, &str) -> Result<Dispatch>,
) -> Result<Dispatch> {
    if k % 2 == 1 {
        return done(mu, "default");
    }
    if classified.is_empty() {
        return Err(Error::HintRequired(format!("{name} with |A/S| = {k}")));
    }
    if classified.iter().any(|(_, c)| !c.in_gamma) {
        done(2 * mu, row)
    } else {
        done(mu, "default")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub kind: String,
    pub message: String,
}

impl Failure {
    fn from_error(e: &Error) -> Self {
        let kind = match e {
            Error::Unsupported(_) => "unsupported",
            Error::HintRequired(_) => "hint-required",
            Error::UnknownOrder(_) => "unknown-order",
            Error::Ambiguous(..) => "ambiguous",
            _ => "error",
        };
        Failure {
            kind: kind.to_string(),
            message: e.to_string(),
        }
    }

    fn is_partial(e: &Error) -> bool {
        matches!(
            e,
            Error::Unsupported(_) | Error::HintRequired(_) | Error::UnknownOrder(_) | Error::Ambiguous(..)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalNormalRecord {
    /// Socle factors making up this minimal normal subgroup.
    pub factors: Vec<usize>,
    /// Number of simple factors.
    pub ell: usize,
    /// The factor whose induced automorphism group was used.
    pub representative: usize,
    pub factor_order: String,
    pub name: Option<SimpleName>,
    pub mu_simple: Option<u64>,
    pub a_order: String,
    pub a_over_s: u64,
    pub rule: Option<String>,
    pub mu: Option<u64>,
    pub hint_used: bool,
    pub classifications: Vec<ClassificationRecord>,
    pub failure: Option<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuCertificate {
    pub degree: usize,
    pub group_order: String,
    pub socle_order: String,
    pub factor_count: usize,
    pub minimal_normals: Vec<MinimalNormalRecord>,
    /// Σ ell·μ over the records; absent if any record failed.
    pub total: Option<u64>,
    pub probabilistic: bool,
    pub hint_used: bool,
    pub unsupported: bool,
}

impl MuCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate: {e}")))
    }

    /// The total, or the first record's failure.
    pub fn into_result(self) -> Result<u64> {
        if let Some(t) = self.total {
            return Ok(t);
        }
        let f = self
            .minimal_normals
            .iter()
            .find_map(|r| r.failure.clone())
            .ok_or_else(|| Error::Internal("certificate has neither total nor failure".into()))?;
        Err(match f.kind.as_str() {
            "hint-required" => Error::HintRequired(f.message),
            _ => Error::Unsupported(f.message),
        })
    }

    /// Whether the total matches the records.
    pub fn is_consistent(&self) -> bool {
        let sum: Option<u64> = self
            .minimal_normals
            .iter()
            .map(|r| r.mu.map(|m| m * r.ell as u64))
            .sum();
        sum == self.total && self.minimal_normals.iter().all(|r| r.ell == r.factors.len())
    }
}

/// Which factor each hint describes.
fn locate_hints(hints: &[RecognitionHint], factors: &[PermGroup]) -> Result<Vec<usize>> {
    let degree = factors.first().map(|f| f.degree()).unwrap_or(0);
    hints
        .iter()
        .map(|h| {
            let (_, _, pairs) = h.pairs(degree)?;
            let span = PermGroup::new(degree, pairs.into_iter().map(|(p, _)| p).collect())?;
            match h.factor_index {
                Some(i) if i < factors.len() && factors[i].same_group(&span) => Ok(i),
                Some(i) => Err(Error::BadHint(format!("hint does not generate factor {i}"))),
                None => factors
                    .iter()
                    .position(|f| f.same_group(&span))
                    .ok_or_else(|| Error::BadHint("hint generates no socle factor".into())),
            }
        })
        .collect()
}

fn record_for(
    g: &PermGroup,
    orbit: &[usize],
    factors: &[PermGroup],
    hint: Option<(usize, &RecognitionHint)>,
    opts: &SocleOptions,
) -> Result<MinimalNormalRecord> {
    let representative = hint.map(|(i, _)| i).unwrap_or(orbit[0]);
    let data = induced_aut_group(g, representative, factors, opts.budget)?;
    let mut rec = MinimalNormalRecord {
        factors: orbit.to_vec(),
        ell: orbit.len(),
        representative,
        factor_order: data.s_order.to_string(),
        name: None,
        mu_simple: None,
        a_order: data.a_order.to_string(),
        a_over_s: data.a_over_s()?,
        rule: None,
        mu: None,
        hint_used: hint.is_some(),
        classifications: Vec::new(),
        failure: None,
    };
    let outcome = (|| {
        let name = name_simple(&data.factor)?;
        rec.name = Some(name.clone());
        rec.mu_simple = Some(mu_simple(&name)?);
        let iso = hint.map(|(_, h)| HintIso::new(h, &data.factor)).transpose()?;
        dispatch_table(&name, &data, iso.as_ref())
    })();
    match outcome {
        Ok(d) => {
            rec.mu = Some(d.mu);
            rec.rule = Some(d.rule);
            rec.classifications = d.classifications;
        }
        Err(e) if Failure::is_partial(&e) => rec.failure = Some(Failure::from_error(&e)),
        Err(e) => return Err(e),
    }
    Ok(rec)
}

/// μ(G) = Σ ell_i μ(G, N_i) over the minimal normal subgroups N_i. Cases
/// the table cannot settle leave `total` empty and record why.
pub fn mu_fitting_free(g: &PermGroup, hints: &[RecognitionHint], opts: &SocleOptions) -> Result<MuCertificate> {
    let soc = socle_fitting_free(g, opts)?;
    let located = locate_hints(hints, &soc.factors)?;
    let mut records = Vec::new();
    let mut used = vec![false; hints.len()];
    for orbit in &soc.minimal_normals {
        let hint = located.iter().position(|i| orbit.contains(i));
        if let Some(h) = hint {
            used[h] = true;
        }
        let rec = record_for(g, orbit, &soc.factors, hint.map(|h| (located[h], &hints[h])), opts)?;
        records.push(rec);
    }
    let total = records.iter().map(|r| r.mu.map(|m| m * r.ell as u64)).sum();
    let unsupported = records.iter().any(|r| r.failure.is_some());
    Ok(MuCertificate {
        degree: g.degree(),
        group_order: g.order().to_string(),
        socle_order: soc.socle.order().to_string(),
        factor_count: soc.factors.len(),
        minimal_normals: records,
        total,
        probabilistic: soc.probabilistic,
        hint_used: used.iter().any(|&u| u),
        unsupported,
    })
}

/// μ(G/K) by listing the quotient and running the exact oracle.
pub fn mu_small_quotient(q: &QuotientGroup, bound: usize) -> Result<usize> {
    let c = list_elements(q, bound)?;
    Ok(mu_oracle(&c, DEFAULT_SUBGROUP_LIMIT)?.0)
}

//! Recognition hints: an explicit isomorphism from a simple factor onto the
//! standard projective matrix group, given on generators.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bsgs::{Chain, Homomorphism, Payload, PermGroup};
use crate::error::{Error, Result};
use crate::ff::{FFMatrix, Family, Field, ProjectiveSpace};
use crate::perm::Permutation;
use crate::simple_id::{prime_power, SimpleName};

pub const FIELD_CONVENTION: &str = "lex-least-irreducible";

/// One generator of the factor and its matrix image. Entries are
/// coefficient vectors over the prime field, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorImage {
    pub permutation: String,
    pub matrix: Vec<Vec<Vec<u32>>>,
}

/// The hint file as written on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecognitionHint {
    /// Index into the socle factors; located automatically when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_index: Option<usize>,
    /// "PSL", "PSp" or "POmegaPlus".
    pub family: String,
    /// Dimension of the natural module.
    pub d: u32,
    pub q: u64,
    pub field_convention: String,
    pub generator_images: Vec<GeneratorImage>,
}

impl RecognitionHint {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("hint: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("hint serializes")
    }

    /// The matrix family and the simple group it covers.
    pub fn family(&self) -> Result<(Family, SimpleName)> {
        if self.field_convention != FIELD_CONVENTION {
            return Err(Error::BadHint(format!(
                "field convention {:?}, expected {FIELD_CONVENTION:?}",
                self.field_convention
            )));
        }
        let (p, e) =
            prime_power(self.q).ok_or_else(|| Error::BadHint(format!("q = {} is not a prime power", self.q)))?;
        let bad = || {
            Error::BadHint(format!(
                "{}({},{}) is not a supported family",
                self.family, self.d, self.q
            ))
        };
        let (family, name) = match self.family.as_str() {
            "PSL" if self.d >= 3 => (
                Family::Sl {
                    d: self.d as usize,
                    p: p as u32,
                    e,
                },
                SimpleName::psl(self.d, self.q)?,
            ),
            "PSp" if self.d == 4 && p == 2 && e >= 2 => (Family::Sp4 { e }, SimpleName::psp(4, self.q)?),
            "POmegaPlus" if self.q == 3 && self.d >= 8 && self.d.is_multiple_of(2) => (
                Family::OmegaPlus { d: self.d as usize / 2 },
                SimpleName::pomega_plus(self.d, 3)?,
            ),
            _ => return Err(bad()),
        };
        family.validate()?;
        Ok((family, name))
    }

    /// Parsed generator pairs, with every matrix checked to lie in the family.
    pub fn pairs(&self, degree: usize) -> Result<(Family, SimpleName, Vec<(Permutation, FFMatrix)>)> {
        let (family, name) = self.family()?;
        let field = family.field()?;
        if self.generator_images.is_empty() {
            return Err(Error::BadHint("no generator images".into()));
        }
        let mut out = Vec::with_capacity(self.generator_images.len());
        for (i, gi) in self.generator_images.iter().enumerate() {
            let perm = Permutation::parse(&gi.permutation, degree)
                .map_err(|e| Error::BadHint(format!("generator {i}: {e}")))?;
            let m = parse_matrix(&field, &gi.matrix).map_err(|e| Error::BadHint(format!("generator {i}: {e}")))?;
            if !family.contains(&m)? {
                return Err(Error::BadHint(format!("generator {i}: matrix is not in {family}")));
            }
            out.push((perm, m));
        }
        Ok((family, name, out))
    }

    /// A hint from generator pairs.
    pub fn from_pairs(family_name: &str, d: u32, q: u64, pairs: &[(Permutation, FFMatrix)]) -> Self {
        RecognitionHint {
            factor_index: None,
            family: family_name.to_string(),
            d,
            q,
            field_convention: FIELD_CONVENTION.to_string(),
            generator_images: pairs
                .iter()
                .map(|(p, m)| GeneratorImage {
                    permutation: p.to_string(),
                    matrix: render_matrix(m),
                })
                .collect(),
        }
    }
}

fn parse_matrix(field: &Arc<Field>, rows: &[Vec<Vec<u32>>]) -> Result<FFMatrix> {
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for row in rows {
        if row.len() != n {
            return Err(Error::Dimension("matrix is not square".into()));
        }
        out.push(row.iter().map(|c| field.from_coeffs(c)).collect::<Result<Vec<_>>>()?);
    }
    FFMatrix::from_rows(field, &out)
}

pub fn render_matrix(m: &FFMatrix) -> Vec<Vec<Vec<u32>>> {
    let f = m.field();
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| f.coeffs(m.get(r, c))).collect())
        .collect()
}

/// A matrix standing for its coset of scalars.
#[derive(Clone, Debug)]
pub(crate) struct ProjMatrix(pub FFMatrix);

impl Payload for ProjMatrix {
    fn mul(&self, other: &Self) -> Self {
        ProjMatrix(self.0.mul(&other.0).expect("payload matrices share a size"))
    }
    fn inv(&self) -> Self {
        ProjMatrix(self.0.inverse().expect("payload matrices are invertible"))
    }
    fn is_trivial(&self) -> bool {
        self.0.scalar_value().is_some()
    }
}

/// The isomorphism S1 -> P(family) described by a hint, with its inverse.
pub struct HintIso {
    pub family: Family,
    pub name: SimpleName,
    factor: PermGroup,
    forward: Chain<ProjMatrix>,
    space: ProjectiveSpace,
    backward: Homomorphism,
}

impl HintIso {
    /// Checks that the hint defines an isomorphism from `factor`: the
    /// permutations generate `factor`, the assignment respects every
    /// relation, and the orders agree.
    pub fn new(hint: &RecognitionHint, factor: &PermGroup) -> Result<Self> {
        let degree = factor.degree();
        let (family, name, pairs) = hint.pairs(degree)?;
        let perms: Vec<Permutation> = pairs.iter().map(|(p, _)| p.clone()).collect();
        let span = PermGroup::new(degree, perms.clone())?;
        if !span.same_group(factor) {
            return Err(Error::BadHint("hint permutations do not generate the factor".into()));
        }
        let order = name
            .order()
            .ok_or_else(|| Error::Unsupported(format!("order of {name}")))?;
        if factor.order() != order.into() {
            return Err(Error::BadHint(format!(
                "factor has order {}, {name} has order {order}",
                factor.order()
            )));
        }
        if pairs.iter().all(|(_, m)| m.scalar_value().is_some()) {
            return Err(Error::BadHint("all matrices are scalar".into()));
        }
        let field = family.field()?;
        let one = ProjMatrix(FFMatrix::identity(&field, family.dim()));
        let forward = Chain::build(
            degree,
            &factor.base(),
            one,
            pairs.iter().map(|(p, m)| (p.clone(), ProjMatrix(m.clone()))),
        );
        if forward.violated {
            return Err(Error::BadHint("generator map is not a homomorphism".into()));
        }
        // The kernel is a proper normal subgroup of a simple group, so the map
        // is injective, and onto because the orders agree.
        let space = ProjectiveSpace::new(&field, family.dim())?;
        let mats = pairs
            .iter()
            .map(|(_, m)| space.permutation(m))
            .collect::<Result<Vec<_>>>()?;
        let image = PermGroup::new(space.len(), mats)?;
        if image.order() != factor.order() {
            return Err(Error::BadHint("matrices generate a group of the wrong order".into()));
        }
        let backward = Homomorphism::new(&image, degree, perms)
            .map_err(|_| Error::BadHint("inverse map is not a homomorphism".into()))?;
        Ok(HintIso {
            family,
            name,
            factor: factor.clone(),
            forward,
            space,
            backward,
        })
    }

    /// Iso(x), a representative of the image coset.
    pub fn image(&self, x: &Permutation) -> Result<FFMatrix> {
        self.forward.payload_of(x).map(|p| p.0).ok_or(Error::NotInGroup)
    }

    /// Iso^-1 of the projective class of `m`.
    pub fn preimage(&self, m: &FFMatrix) -> Result<Permutation> {
        self.backward.image(&self.space.permutation(m)?)
    }

    /// Representatives of λ_g(U) = Iso(g^-1 Iso^-1(U) g) for U in L.
    pub fn transport(&self, g: &Permutation) -> Result<Vec<FFMatrix>> {
        self.family
            .standard_generators()?
            .iter()
            .map(|u| {
                let x = self.preimage(u)?.conjugate(g);
                if !self.factor.contains(&x) {
                    return Err(Error::Precondition("element does not normalize the factor".into()));
                }
                self.image(&x)
            })
            .collect()
    }
}

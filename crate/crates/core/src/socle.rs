//! Socle of a Fitting-free permutation group and its simple factors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::bsgs::{Homomorphism, PermGroup, DEFAULT_SEARCH_BUDGET};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Minimality of a normal subgroup up to this order is certified by
/// checking every conjugacy class.
pub const EXHAUSTIVE_MINIMALITY_BOUND: u64 = 10_000;

/// Random elements tried as normal-closure seeds during descent.
const DESCENT_RANDOM_SEEDS: usize = 64;

/// Random elements sampled when minimality cannot be checked exhaustively.
const MINIMALITY_SAMPLES: usize = 256;

#[derive(Clone, Copy, Debug)]
pub struct SocleOptions {
    pub seed: u64,
    /// Node budget for centralizer searches.
    pub budget: usize,
}

impl Default for SocleOptions {
    fn default() -> Self {
        SocleOptions {
            seed: 0,
            budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimalNormal {
    pub group: PermGroup,
    /// Minimality was checked on random samples only.
    pub probabilistic: bool,
}

#[derive(Clone, Debug)]
pub struct SocleDecomposition {
    pub socle: PermGroup,
    pub factors: Vec<PermGroup>,
    /// Orbits of G on `factors`; each orbit spans one minimal normal subgroup.
    pub minimal_normals: Vec<Vec<usize>>,
    /// The centralizer of the socle was computed and found trivial.
    pub fitting_free: bool,
    pub probabilistic: bool,
}

impl SocleDecomposition {
    /// The minimal normal subgroup spanned by orbit `i`.
    pub fn minimal_normal(&self, i: usize) -> PermGroup {
        let degree = self.socle.degree();
        let gens = self.minimal_normals[i]
            .iter()
            .flat_map(|&k| self.factors[k].generators().iter().cloned())
            .collect();
        PermGroup::new(degree, gens).expect("factors share the degree")
    }
}

/// Generators, then products of generator pairs, then random elements.
fn descent_seeds(n: &PermGroup, rng: &mut ChaCha8Rng) -> Vec<Permutation> {
    let gens = n.generators();
    let mut out = gens.to_vec();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            out.push(a * b);
        }
    }
    out.extend((0..DESCENT_RANDOM_SEEDS).map(|_| n.random_element(rng)));
    out.retain(|x| !x.is_identity());
    out
}

/// A G-normal subgroup strictly inside `n` found from one of `seeds`.
fn smaller_closure(
    g: &PermGroup,
    n: &PermGroup,
    seeds: impl IntoIterator<Item = Permutation>,
) -> Result<Option<PermGroup>> {
    let order = n.order();
    for y in seeds {
        if y.is_identity() {
            continue;
        }
        let m = g.normal_closure(&[y])?;
        if m.order() < order {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// One representative of each G-conjugacy class of nontrivial elements of `n`.
fn class_representatives(g: &PermGroup, n: &PermGroup) -> Result<Vec<Permutation>> {
    let mut seen: FxHashSet<Permutation> = FxHashSet::default();
    let mut reps = Vec::new();
    for x in n.elements(EXHAUSTIVE_MINIMALITY_BOUND)? {
        if x.is_identity() || seen.contains(&x) {
            continue;
        }
        reps.push(x.clone());
        seen.insert(x.clone());
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            for s in g.generators() {
                let z = y.conjugate(s);
                if seen.insert(z.clone()) {
                    queue.push(z);
                }
            }
        }
    }
    Ok(reps)
}

fn minimal_normal_with(g: &PermGroup, c: &PermGroup, rng: &mut ChaCha8Rng) -> Result<MinimalNormal> {
    if c.order() == 1u32.into() {
        return Err(Error::Precondition("C is trivial".into()));
    }
    if !c.is_subgroup_of(g) || !c.is_normalized_by(g) {
        return Err(Error::Precondition("C is not a normal subgroup of G".into()));
    }
    let seeds = descent_seeds(c, rng);
    let mut n = g.normal_closure(&seeds[..1])?;
    loop {
        let seeds = descent_seeds(&n, rng);
        if let Some(m) = smaller_closure(g, &n, seeds)? {
            n = m;
            continue;
        }
        if n.order() <= EXHAUSTIVE_MINIMALITY_BOUND.into() {
            match smaller_closure(g, &n, class_representatives(g, &n)?)? {
                Some(m) => n = m,
                None => {
                    return Ok(MinimalNormal {
                        group: n,
                        probabilistic: false,
                    })
                }
            }
        } else {
            let samples: Vec<Permutation> = (0..MINIMALITY_SAMPLES).map(|_| n.random_element(rng)).collect();
            match smaller_closure(g, &n, samples)? {
                Some(m) => n = m,
                None => {
                    return Ok(MinimalNormal {
                        group: n,
                        probabilistic: true,
                    })
                }
            }
        }
    }
}

/// A minimal normal subgroup of G inside the nontrivial normal subgroup C,
/// found by descending through normal closures of single elements.
pub fn minimal_normal_under(g: &PermGroup, c: &PermGroup, seed: u64) -> Result<MinimalNormal> {
    minimal_normal_with(g, c, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn is_trivial(g: &PermGroup) -> bool {
    g.order() == 1u32.into()
}

fn reject_abelian(n: &PermGroup) -> Result<()> {
    if n.is_abelian() {
        return Err(Error::NotFittingFree(format!(
            "abelian minimal normal subgroup of order {}",
            n.order()
        )));
    }
    Ok(())
}

fn simple_factors_with(soc: &PermGroup, opts: &SocleOptions, rng: &mut ChaCha8Rng) -> Result<(Vec<PermGroup>, bool)> {
    let mut factors: Vec<PermGroup> = Vec::new();
    let mut probabilistic = false;
    let mut c = soc.clone();
    while !is_trivial(&c) {
        let s = minimal_normal_with(soc, &c, rng)?;
        reject_abelian(&s.group)?;
        probabilistic |= s.probabilistic;
        factors.push(s.group);
        let gens: Vec<Permutation> = factors.iter().flat_map(|f| f.generators().iter().cloned()).collect();
        let m = PermGroup::new(soc.degree(), gens)?;
        c = soc.centralizer_of_normal(&m, opts.budget)?;
    }
    Ok((factors, probabilistic))
}

/// Splits a direct product of non-abelian simple groups into its factors.
pub fn simple_factors(soc: &PermGroup, opts: &SocleOptions) -> Result<Vec<PermGroup>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    Ok(simple_factors_with(soc, opts, &mut rng)?.0)
}

/// How each generator of G permutes the factors under conjugation.
pub fn factor_action(g: &PermGroup, factors: &[PermGroup]) -> Result<Vec<Permutation>> {
    let k = factors.len();
    g.generators()
        .iter()
        .map(|x| {
            let images = (0..k)
                .map(|i| {
                    let conj: Vec<Permutation> = factors[i].generators().iter().map(|s| s.conjugate(x)).collect();
                    (0..k)
                        .find(|&j| conj.iter().all(|s| factors[j].contains(s)))
                        .ok_or_else(|| Error::Internal(format!("conjugate of factor {i} matches no factor")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Permutation::from_images(images)?)
        })
        .collect()
}

/// Orbits of G on the simple factors of its socle, in order of least member.
pub fn minimal_normal_subgroups(g: &PermGroup, factors: &[PermGroup]) -> Result<Vec<Vec<usize>>> {
    let action = factor_action(g, factors)?;
    let mut seen = vec![false; factors.len()];
    let mut orbits = Vec::new();
    for start in 0..factors.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            for a in &action {
                let j = a.image(orbit[i]);
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// N_G(S) for the factor `factors[index]`: the stabilizer of that factor in
/// the action of G on the factors.
pub fn normalizer_of_factor(g: &PermGroup, index: usize, factors: &[PermGroup]) -> Result<PermGroup> {
    if index >= factors.len() {
        return Err(Error::Precondition(format!("no factor {index}")));
    }
    let action = factor_action(g, factors)?;
    if action.iter().all(|a| a.image(index) == index) {
        return Ok(g.clone());
    }
    let hom = Homomorphism::new(g, factors.len(), action)?;
    hom.preimage_of_stabilizer(index)
}

/// Socle of a Fitting-free group, grown one minimal normal subgroup at a time
/// inside the centralizer of what has been found so far. Fails with
/// `NotFittingFree` as soon as an abelian minimal normal subgroup appears.
pub fn socle_fitting_free(g: &PermGroup, opts: &SocleOptions) -> Result<SocleDecomposition> {
    if is_trivial(g) {
        return Err(Error::Precondition("G is trivial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let first = minimal_normal_with(g, g, &mut rng)?;
    reject_abelian(&first.group)?;
    let mut probabilistic = first.probabilistic;
    let mut m = first.group;
    loop {
        let c = g.centralizer_of_normal(&m, opts.budget)?;
        if is_trivial(&c) {
            break;
        }
        let n = minimal_normal_with(g, &c, &mut rng)?;
        reject_abelian(&n.group)?;
        probabilistic |= n.probabilistic;
        m = m.join(n.group.generators());
    }
    let (factors, p) = simple_factors_with(&m, opts, &mut rng)?;
    let minimal_normals = minimal_normal_subgroups(g, &factors)?;
    Ok(SocleDecomposition {
        socle: m,
        factors,
        minimal_normals,
        fitting_free: true,
        probabilistic: probabilistic || p,
    })
}

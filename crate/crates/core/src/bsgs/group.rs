use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;

use super::chain::Chain;
use super::word::{Slp, Word};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Node budget for backtrack searches unless the caller overrides it.
pub const DEFAULT_SEARCH_BUDGET: usize = 2_000_000;

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<Arc<Chain<()>>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("gens", &self.gens)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        Ok(Self::from_parts(degree, gens))
    }

    /// Drops identity generators; caller guarantees degrees.
    pub(crate) fn from_parts(degree: usize, gens: Vec<Permutation>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        PermGroup {
            degree,
            gens,
            chain: OnceLock::new(),
        }
    }

    pub(crate) fn with_chain(degree: usize, chain: Chain<()>) -> Self {
        let gens = chain.strong_generators();
        let lock = OnceLock::new();
        let _ = lock.set(Arc::new(chain));
        PermGroup {
            degree,
            gens,
            chain: lock,
        }
    }

    pub fn parse(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse(s, degree))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, Vec::new())
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        Self::from_parts(n, gens)
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        Self::from_parts(n, gens)
    }

    /// Direct product acting on the disjoint union of the domains.
    pub fn direct_product(factors: &[PermGroup]) -> Self {
        let degree: usize = factors.iter().map(|f| f.degree).sum();
        let mut gens = Vec::new();
        let mut offset = 0;
        for f in factors {
            gens.extend(f.gens.iter().map(|g| g.shifted(offset, degree)));
            offset += f.degree;
        }
        Self::from_parts(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub(crate) fn chain(&self) -> &Chain<()> {
        self.chain.get_or_init(|| {
            Arc::new(Chain::build(
                self.degree,
                &[],
                (),
                self.gens.iter().map(|g| (g.clone(), ())),
            ))
        })
    }

    /// Forces construction of the stabilizer chain.
    pub fn build(&self) -> &Self {
        self.chain();
        self
    }

    /// A fresh chain for this group whose base begins with `prefix`.
    pub(crate) fn chain_with_base(&self, prefix: &[usize]) -> Chain<()> {
        let current = self.chain();
        if current.base().starts_with(prefix) {
            return current.clone();
        }
        Chain::build(
            self.degree,
            prefix,
            (),
            current.strong_generators().into_iter().map(|g| (g, ())),
        )
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain().strong_generators()
    }

    fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: g.degree(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().contains(g)
    }

    /// Membership with a witness word over `generators()`.
    pub fn contains_with_word(&self, g: &Permutation) -> Result<Option<Word>> {
        self.check_degree(g)?;
        if !self.contains(g) {
            return Ok(None);
        }
        let base = self.base();
        let chain = Chain::build(
            self.degree,
            &base,
            Slp::one(),
            self.gens.iter().enumerate().map(|(i, g)| (g.clone(), Slp::gen(i))),
        );
        Ok(chain.payload_of(g).map(|w| w.flatten()))
    }

    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(orbit_of(point, self.degree, &self.gens))
    }

    /// The orbits, each sorted, in order of least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let o = orbit_of(p, self.degree, &self.gens);
                for &x in &o {
                    seen[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    /// Points moved by some generator.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&p| self.gens.iter().any(|g| g.moves(p)))
            .collect()
    }

    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &p in points {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        let mut chain = self.chain_with_base(points);
        let depth = chain.base().iter().take_while(|b| points.contains(b)).count();
        chain.levels.drain(..depth);
        Ok(PermGroup::with_chain(self.degree, chain))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random(rng)
    }

    /// All elements, refusing groups larger than `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigUint::from(limit) {
            return Err(Error::BoundExceeded { order, bound: limit });
        }
        Ok(self.chain().elements())
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// Same element set.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && self.order() == other.order()
    }

    /// Whether each generator of `by` conjugates this group into itself.
    pub fn is_normalized_by(&self, by: &PermGroup) -> bool {
        by.gens
            .iter()
            .all(|x| self.gens.iter().all(|h| self.contains(&h.conjugate(x))))
    }

    pub fn conjugate_by(&self, x: &Permutation) -> PermGroup {
        PermGroup::from_parts(self.degree, self.gens.iter().map(|g| g.conjugate(x)).collect())
    }

    /// The subgroup generated by this group and `extra`.
    pub fn join(&self, extra: &[Permutation]) -> PermGroup {
        let mut chain = self.chain().clone();
        let mut gens = self.gens.clone();
        for g in extra {
            if !chain.contains(g) {
                chain.add_generator(g.clone(), ());
                gens.push(g.clone());
            }
        }
        let lock = OnceLock::new();
        let _ = lock.set(Arc::new(chain));
        PermGroup {
            degree: self.degree,
            gens,
            chain: lock,
        }
    }

    /// Smallest normal subgroup containing `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Result<PermGroup> {
        for s in elements {
            self.check_degree(s)?;
            if !self.contains(s) {
                return Err(Error::NotInGroup);
            }
        }
        Ok(normal_closure_in(self.degree, &self.gens, elements))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gens;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| &g[i] * &g[j] == &g[j] * &g[i]))
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = &(&(&a.inverse() * &b.inverse()) * a) * b;
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        normal_closure_in(self.degree, &self.gens, &comms)
    }

    /// `C_G(H)` for a subgroup `H` normalized by `G`.
    pub fn centralizer_of_normal(&self, h: &PermGroup, budget: usize) -> Result<PermGroup> {
        if h.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: h.degree,
            });
        }
        if !h.is_normalized_by(self) {
            return Err(Error::Precondition("G does not normalize H".into()));
        }
        if h.is_trivial() {
            return Ok(self.clone());
        }
        let hgens = h.gens.clone();
        let commutes = |x: &Permutation| hgens.iter().all(|y| x * y == y * x);
        // Elements of G that are known to commute with H.
        let known: Vec<Permutation> = self.gens.iter().filter(|g| commutes(g)).cloned().collect();
        let prune = |fixed: &[bool], g: &Permutation| {
            // x = s g with s fixing every `fixed` point, so x agrees with g
            // there; compare (d^x)^h with (d^h)^x where both are known.
            hgens.iter().all(|y| {
                (0..fixed.len()).all(|d| {
                    if !fixed[d] {
                        return true;
                    }
                    let dh = y.image(d);
                    !fixed[dh] || y.image(g.image(d)) == g.image(dh)
                })
            })
        };
        subgroup_search(self, &prune, &commutes, &known, budget, "centralizer")
    }

    /// `G ∩ H` for a subgroup `H` normalized by `G`.
    pub fn intersect_with_normal(&self, h: &PermGroup, budget: usize) -> Result<PermGroup> {
        if h.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: h.degree,
            });
        }
        if !h.is_normalized_by(self) {
            return Err(Error::Precondition("G does not normalize H".into()));
        }
        if self.is_subgroup_of(h) {
            return Ok(self.clone());
        }
        if h.is_subgroup_of(self) {
            return Ok(h.clone());
        }
        let hchain = h.chain_with_base(&self.base());
        let known: Vec<Permutation> = self
            .gens
            .iter()
            .filter(|g| hchain.contains(g))
            .chain(h.gens.iter().filter(|g| self.contains(g)))
            .cloned()
            .collect();
        let base = self.base();
        let prune = |fixed: &[bool], g: &Permutation| {
            // Partial sift through H along the determined prefix of G's base.
            let mut t = g.clone();
            for (l, &b) in base.iter().enumerate() {
                if !fixed[b] || l >= hchain.levels.len() || hchain.levels[l].base != b {
                    break;
                }
                match hchain.levels[l].entry(t.image(b)) {
                    Some(e) => t = &t * &e.u_inv,
                    None => return false,
                }
            }
            true
        };
        let test = |x: &Permutation| hchain.contains(x);
        subgroup_search(self, &prune, &test, &known, budget, "intersection")
    }
}

pub(crate) fn orbit_of(point: usize, degree: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        i += 1;
    }
    orbit.sort_unstable();
    orbit
}

pub(crate) fn normal_closure_in(degree: usize, gens: &[Permutation], elements: &[Permutation]) -> PermGroup {
    let mut chain: Chain<()> = Chain::new(degree, &[], ());
    let mut ngens: Vec<Permutation> = Vec::new();
    for s in elements {
        if !s.is_identity() && !chain.contains(s) {
            chain.add_generator(s.clone(), ());
            ngens.push(s.clone());
        }
    }
    let mut i = 0;
    while i < ngens.len() {
        let n = ngens[i].clone();
        for g in gens {
            let c = n.conjugate(g);
            if !chain.contains(&c) {
                chain.add_generator(c.clone(), ());
                ngens.push(c);
            }
        }
        i += 1;
    }
    let lock = OnceLock::new();
    let _ = lock.set(Arc::new(chain));
    PermGroup {
        degree,
        gens: ngens,
        chain: lock,
    }
}

/// Sims-style backtrack for the subgroup `{x in G : test(x)}`.
///
/// `prune(fixed, g)` sees a coset `G^(l) g` through the points whose images
/// are constant on it and must return false only when the coset holds no
/// solution. `known` are solutions found beforehand.
pub(crate) fn subgroup_search(
    group: &PermGroup,
    prune: &dyn Fn(&[bool], &Permutation) -> bool,
    test: &dyn Fn(&Permutation) -> bool,
    known: &[Permutation],
    budget: usize,
    what: &'static str,
) -> Result<PermGroup> {
    let chain = group.chain();
    let base = chain.base();
    let k = chain.levels.len();
    let fixed: Vec<Vec<bool>> = (0..=k)
        .map(|l| {
            let mut f = vec![false; group.degree];
            for x in chain.fixed_at(l) {
                f[x] = true;
            }
            f
        })
        .collect();
    let mut found = Chain::new(group.degree, &base, ());
    let mut found_gens = Vec::new();
    for g in known {
        if !found.contains(g) {
            found.add_generator(g.clone(), ());
            found_gens.push(g.clone());
        }
    }
    let mut state = SearchState {
        chain,
        fixed: &fixed,
        prune,
        test,
        nodes: 0,
        budget,
        what,
    };
    for l in (0..k).rev() {
        let mut orbit = chain.levels[l].orbit.clone();
        orbit.sort_unstable();
        for &delta in &orbit {
            if delta == base[l] {
                continue;
            }
            // Only the least point of each orbit of the found subgroup's
            // level-l stabilizer needs a search.
            let kgens: Vec<Permutation> = found
                .levels
                .get(l)
                .map(|lv| lv.gens.iter().map(|(g, _)| g.clone()).collect())
                .unwrap_or_default();
            if orbit_of(delta, group.degree, &kgens)[0] < delta {
                continue;
            }
            let g = chain.levels[l].entry(delta).unwrap().u.clone();
            if let Some(x) = state.dfs(l + 1, g)? {
                found.add_generator(x.clone(), ());
                found_gens.push(x);
            }
        }
    }
    let mut result = PermGroup::with_chain(group.degree, found);
    result.gens = found_gens;
    Ok(result)
}

struct SearchState<'a> {
    chain: &'a Chain<()>,
    fixed: &'a [Vec<bool>],
    prune: &'a dyn Fn(&[bool], &Permutation) -> bool,
    test: &'a dyn Fn(&Permutation) -> bool,
    nodes: usize,
    budget: usize,
    what: &'static str,
}

impl SearchState<'_> {
    fn dfs(&mut self, depth: usize, g: Permutation) -> Result<Option<Permutation>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                what: self.what,
                budget: self.budget,
            });
        }
        if !(self.prune)(&self.fixed[depth], &g) {
            return Ok(None);
        }
        if depth == self.chain.levels.len() {
            return Ok((self.test)(&g).then_some(g));
        }
        let level = &self.chain.levels[depth];
        for t in &level.trans {
            let next = &t.u * &g;
            if let Some(x) = self.dfs(depth + 1, next)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

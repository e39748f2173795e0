//! Small groups as multiplication tables: element listing, subgroup
//! lattices, automorphisms and isomorphisms by generator enumeration.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::bsgs::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_SUBGROUP_LIMIT: usize = 2000;
pub const DEFAULT_AUTOMORPHISM_LIMIT: usize = 5000;

/// `G/K` for `K` normal in `G`, both acting on the same points.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    g: PermGroup,
    k: PermGroup,
}

impl QuotientGroup {
    pub fn new(g: PermGroup, k: PermGroup) -> Result<Self> {
        if g.degree() != k.degree() {
            return Err(Error::DegreeMismatch {
                expected: g.degree(),
                got: k.degree(),
            });
        }
        if !k.is_subgroup_of(&g) {
            return Err(Error::Precondition("K is not a subgroup of G".into()));
        }
        if !k.is_normalized_by(&g) {
            return Err(Error::Precondition("K is not normal in G".into()));
        }
        Ok(QuotientGroup { g, k })
    }

    pub fn group(&self) -> &PermGroup {
        &self.g
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.k
    }

    pub fn order(&self) -> BigUint {
        self.g.order() / self.k.order()
    }
}

/// A finite group given by its full multiplication table. Element 0 is the
/// identity.
#[derive(Clone, Debug)]
pub struct CayleyGroup {
    m: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    reps: Vec<Permutation>,
}

impl CayleyGroup {
    pub fn from_group(g: &PermGroup, bound: usize) -> Result<Self> {
        list_elements(&QuotientGroup::new(g.clone(), PermGroup::trivial(g.degree()))?, bound)
    }

    /// Builds from an explicit table whose row 0 must be the identity.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidParameters("empty table".into()));
        }
        let mut table = Vec::with_capacity(m * m);
        for row in rows {
            if row.len() != m {
                return Err(Error::InvalidParameters("table is not square".into()));
            }
            table.extend(row.iter().map(|&x| x as u32));
        }
        Self::from_flat(m, table, Vec::new())
    }

    fn from_flat(m: usize, table: Vec<u32>, reps: Vec<Permutation>) -> Result<Self> {
        for i in 0..m {
            let mut row = FixedBitSet::with_capacity(m);
            let mut col = FixedBitSet::with_capacity(m);
            for j in 0..m {
                let r = table[i * m + j] as usize;
                let c = table[j * m + i] as usize;
                if r >= m || c >= m || row.put(r) || col.put(c) {
                    return Err(Error::InvalidParameters("table is not a Latin square".into()));
                }
            }
            if table[i] as usize != i || table[i * m] as usize != i {
                return Err(Error::InvalidParameters("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![0u32; m];
        for i in 0..m {
            inv[i] = (0..m).find(|&j| table[i * m + j] == 0).unwrap() as u32;
        }
        let c = CayleyGroup { m, table, inv, reps };
        if !c.check_associative() {
            return Err(Error::InvalidParameters("table is not associative".into()));
        }
        Ok(c)
    }

    /// Exhaustive for order at most 256, otherwise a fixed sample of triples.
    fn check_associative(&self) -> bool {
        let m = self.m;
        let ok = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if m <= 256 {
            return (0..m).all(|a| (0..m).all(|b| (0..m).all(|c| ok(a, b, c))));
        }
        let mut x: u64 = 0x9E37_79B9_7F4A_7C15;
        (0..20_000).all(|_| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let m64 = m as u64;
            ok(
                (x % m64) as usize,
                ((x >> 20) % m64) as usize,
                ((x >> 40) % m64) as usize,
            )
        })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let inv = (0..n).map(|i| ((n - i) % n) as u32).collect();
        CayleyGroup {
            m: n,
            table,
            inv,
            reps: Vec::new(),
        }
    }

    pub fn direct_product(a: &CayleyGroup, b: &CayleyGroup) -> Self {
        let m = a.m * b.m;
        let mut table = vec![0u32; m * m];
        for x in 0..m {
            for y in 0..m {
                let (xa, xb) = (x / b.m, x % b.m);
                let (ya, yb) = (y / b.m, y % b.m);
                table[x * m + y] = (a.mul(xa, ya) * b.m + b.mul(xb, yb)) as u32;
            }
        }
        let inv = (0..m).map(|x| (a.inv(x / b.m) * b.m + b.inv(x % b.m)) as u32).collect();
        CayleyGroup {
            m,
            table,
            inv,
            reps: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.m + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// Permutation representatives, when the table came from a group listing.
    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.m).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.m).all(|a| (a + 1..self.m).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(self.m);
        set.insert(0);
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        self.close(&mut set, &gens);
        Subgroup { set, gens }
    }

    /// Closes `set` (already containing the identity and closed under the
    /// older generators) under right multiplication by `gens`.
    fn close(&self, set: &mut FixedBitSet, gens: &[usize]) {
        let mut queue: Vec<usize> = set.ones().collect();
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set.put(y) {
                    queue.push(y);
                }
            }
        }
    }

    /// `<H, c>`. Only new elements need multiplying by the old generators,
    /// since `H` is already closed under them.
    fn join(&self, h: &Subgroup, c: usize) -> Subgroup {
        let mut gens = h.gens.clone();
        gens.push(c);
        let mut set = h.set.clone();
        let mut queue: Vec<usize> = Vec::new();
        for x in h.set.ones() {
            let y = self.mul(x, c);
            if !set.put(y) {
                queue.push(y);
            }
        }
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !set.put(y) {
                    queue.push(y);
                }
            }
        }
        Subgroup { set, gens }
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let mut set = FixedBitSet::with_capacity(self.m);
        for &x in elements {
            if x >= self.m {
                return false;
            }
            set.insert(x);
        }
        set.contains(0)
            && elements
                .iter()
                .all(|&a| elements.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    /// Image of an element set under `x -> g^-1 x g`.
    pub fn conjugate_set(&self, set: &FixedBitSet, g: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.m);
        for x in set.ones() {
            out.insert(self.conj(x, g));
        }
        out
    }

    /// Small generating set: greedily add the element of rarest order that
    /// enlarges the generated subgroup.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut freq: HashMap<usize, usize> = HashMap::new();
        for &o in &orders {
            *freq.entry(o).or_default() += 1;
        }
        let mut candidates: Vec<usize> = (1..self.m).collect();
        // Prefer high order first (fewer generators), then rarity.
        candidates.sort_by_key(|&x| (std::cmp::Reverse(orders[x]), freq[&orders[x]], x));
        let mut gens = Vec::new();
        let mut sub = self.generate(&[]);
        for x in candidates {
            if sub.order() == self.m {
                break;
            }
            if !sub.contains(x) {
                gens.push(x);
                sub = self.generate(&gens);
            }
        }
        gens
    }
}

/// A subgroup of a `CayleyGroup` as an element bitset plus generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    set: FixedBitSet,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.set.count_ones(..)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.set.ones().collect()
    }

    pub fn set(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }
}

/// Lists `G/K` by closing the generators under multiplication. Two
/// representatives name the same coset iff `x y^-1` lies in `K`.
pub fn list_elements(q: &QuotientGroup, bound: usize) -> Result<CayleyGroup> {
    let order = q.order();
    if order > BigUint::from(bound) {
        return Err(Error::BoundExceeded {
            order,
            bound: bound as u64,
        });
    }
    let n = q.g.degree();
    let k = &q.k;
    // The action on K-orbits is constant on cosets, so it buckets candidates.
    let mut orbit_id = vec![0u32; n];
    let orbits = k.orbits();
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_id[x] = i as u32;
        }
    }
    let key = |x: &Permutation| -> Vec<u32> { orbits.iter().map(|o| orbit_id[x.image(o[0])]).collect() };
    let mut reps: Vec<Permutation> = vec![Permutation::identity(n)];
    let mut buckets: FxHashMap<Vec<u32>, Vec<u32>> = FxHashMap::default();
    buckets.insert(key(&reps[0]), vec![0]);
    let find = |buckets: &FxHashMap<Vec<u32>, Vec<u32>>, reps: &[Permutation], x: &Permutation| {
        let b = buckets.get(&key(x))?;
        b.iter().copied().find(|&i| {
            let r = &reps[i as usize];
            if k.is_trivial() {
                r == x
            } else {
                k.contains(&(x * &r.inverse()))
            }
        })
    };
    let gens = q.g.generators();
    let mut i = 0;
    while i < reps.len() {
        for g in gens {
            let y = &reps[i] * g;
            if find(&buckets, &reps, &y).is_none() {
                buckets.entry(key(&y)).or_default().push(reps.len() as u32);
                reps.push(y);
            }
        }
        i += 1;
    }
    let m = reps.len();
    if BigUint::from(m) != q.order() {
        return Err(Error::Internal("coset listing disagrees with order".into()));
    }
    let mut table = vec![0u32; m * m];
    for a in 0..m {
        for b in 0..m {
            let y = &reps[a] * &reps[b];
            table[a * m + b] = find(&buckets, &reps, &y).expect("closed under products");
        }
    }
    let mut inv = vec![0u32; m];
    for a in 0..m {
        inv[a] = (0..m).find(|&b| table[a * m + b] == 0).unwrap() as u32;
    }
    Ok(CayleyGroup { m, table, inv, reps })
}

/// Every subgroup exactly once, ordered by size and then elements.
///
/// Every subgroup is generated by its elements of prime-power order, so
/// joining with cyclic subgroups of prime-power order reaches all of them.
pub fn all_subgroups(c: &CayleyGroup, limit: usize) -> Result<Vec<Subgroup>> {
    if c.m > limit {
        return Err(Error::BoundExceeded {
            order: BigUint::from(c.m),
            bound: limit as u64,
        });
    }
    let orders = c.element_orders();
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut seen_cyclic: FxHashSet<FixedBitSet> = FxHashSet::default();
    for x in 1..c.m {
        if !is_prime_power(orders[x]) {
            continue;
        }
        let s = c.generate(&[x]);
        if seen_cyclic.insert(s.set.clone()) {
            cyclic.push(s);
        }
    }
    let mut all: Vec<Subgroup> = vec![c.generate(&[])];
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    seen.insert(all[0].set.clone());
    let mut i = 0;
    while i < all.len() {
        for cy in &cyclic {
            let g = cy.gens[0];
            if all[i].contains(g) {
                continue;
            }
            let j = c.join(&all[i], g);
            if seen.insert(j.set.clone()) {
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(&b.elements())));
    Ok(all)
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut k = n;
    while k.is_multiple_of(p) {
        k /= p;
    }
    k == 1
}

/// Sorted multiset of element orders, an isomorphism invariant.
fn order_profile(c: &CayleyGroup) -> Vec<usize> {
    let mut v = c.element_orders();
    v.sort_unstable();
    v
}

struct Enumerator<'a> {
    src: &'a CayleyGroup,
    dst: &'a CayleyGroup,
    gens: Vec<usize>,
    /// Spanning tree of the source Cayley graph: (element, parent, generator).
    tree: Vec<(usize, usize, usize)>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> Enumerator<'a> {
    fn new(src: &'a CayleyGroup, dst: &'a CayleyGroup) -> Self {
        let gens = src.greedy_generators();
        let mut seen = vec![false; src.m];
        seen[0] = true;
        let mut tree = Vec::with_capacity(src.m);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (j, &g) in gens.iter().enumerate() {
                let y = src.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    tree.push((y, x, j));
                    queue.push_back(y);
                }
            }
        }
        let dst_orders = dst.element_orders();
        let candidates = gens
            .iter()
            .map(|&g| {
                let o = src.element_order(g);
                (0..dst.m).filter(|&y| dst_orders[y] == o).collect()
            })
            .collect();
        Enumerator {
            src,
            dst,
            gens,
            tree,
            candidates,
        }
    }

    /// Extends generator images to a full map, checking the homomorphism
    /// property on every (element, generator) pair and injectivity.
    fn extend(&self, images: &[usize]) -> Option<Vec<u32>> {
        let m = self.src.m;
        let mut phi = vec![u32::MAX; m];
        let mut used = vec![false; self.dst.m];
        phi[0] = 0;
        used[0] = true;
        for &(y, x, j) in &self.tree {
            let v = self.dst.mul(phi[x] as usize, images[j]);
            if used[v] {
                return None;
            }
            used[v] = true;
            phi[y] = v as u32;
        }
        for x in 0..m {
            for (j, &g) in self.gens.iter().enumerate() {
                let lhs = phi[self.src.mul(x, g)] as usize;
                if lhs != self.dst.mul(phi[x] as usize, images[j]) {
                    return None;
                }
            }
        }
        Some(phi)
    }

    /// Calls `visit` for every injective homomorphism onto the target;
    /// stops early when `visit` returns false.
    fn run(&self, visit: &mut dyn FnMut(Vec<u32>) -> bool) {
        let mut images = Vec::with_capacity(self.gens.len());
        self.rec(&mut images, visit);
    }

    fn rec(&self, images: &mut Vec<usize>, visit: &mut dyn FnMut(Vec<u32>) -> bool) -> bool {
        let i = images.len();
        if i == self.gens.len() {
            return match self.extend(images) {
                Some(phi) => visit(phi),
                None => true,
            };
        }
        // The image of a new generator lies outside the span of the
        // previous images, just as the generator does.
        let span = self.dst.generate(images);
        for &y in &self.candidates[i] {
            if span.contains(y) {
                continue;
            }
            images.push(y);
            let go_on = self.rec(images, visit);
            images.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// All automorphisms as element maps, the identity first.
pub fn automorphism_group(c: &CayleyGroup, limit: usize) -> Result<Vec<Vec<u32>>> {
    if c.m > limit {
        return Err(Error::BoundExceeded {
            order: BigUint::from(c.m),
            bound: limit as u64,
        });
    }
    let e = Enumerator::new(c, c);
    let mut out = Vec::new();
    e.run(&mut |phi| {
        out.push(phi);
        true
    });
    out.sort();
    Ok(out)
}

/// An isomorphism `c1 -> c2` as an element map, if one exists.
pub fn isomorphism_search(c1: &CayleyGroup, c2: &CayleyGroup, limit: usize) -> Result<Option<Vec<u32>>> {
    for c in [c1, c2] {
        if c.m > limit {
            return Err(Error::BoundExceeded {
                order: BigUint::from(c.m),
                bound: limit as u64,
            });
        }
    }
    if c1.m != c2.m || order_profile(c1) != order_profile(c2) {
        return Ok(None);
    }
    let e = Enumerator::new(c1, c2);
    let mut found = None;
    e.run(&mut |phi| {
        found = Some(phi);
        false
    });
    Ok(found)
}

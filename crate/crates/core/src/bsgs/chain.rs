//! Deterministic Schreier-Sims over permutations carrying an optional payload.
//!
//! A payload rides along with every permutation in the chain and is
//! multiplied in lockstep. With `()` this is the plain algorithm; with a
//! permutation or matrix payload the chain evaluates a generator assignment
//! as a homomorphism, and `violated` records a relation whose payload image
//! is nontrivial.

use num_bigint::BigUint;
use rand::Rng;

use crate::perm::Permutation;

pub trait Payload: Clone {
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    /// Whether this payload can sit over the identity permutation.
    fn is_trivial(&self) -> bool;
}

impl Payload for () {
    fn mul(&self, _: &Self) -> Self {}
    fn inv(&self) -> Self {}
    fn is_trivial(&self) -> bool {
        true
    }
}

impl Payload for Permutation {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_trivial(&self) -> bool {
        self.is_identity()
    }
}

const NONE: u32 = u32::MAX;

#[derive(Clone)]
pub(crate) struct TransEntry<P> {
    pub u: Permutation,
    pub u_inv: Permutation,
    pub p: P,
    pub p_inv: P,
}

#[derive(Clone)]
pub(crate) struct Level<P> {
    pub base: usize,
    /// Strong generators fixing all earlier base points.
    pub gens: Vec<(Permutation, P)>,
    pub orbit: Vec<usize>,
    slot: Vec<u32>,
    pub trans: Vec<TransEntry<P>>,
    checked: Vec<usize>,
}

impl<P: Payload> Level<P> {
    fn new(degree: usize, base: usize, one: &P) -> Self {
        let mut slot = vec![NONE; degree];
        slot[base] = 0;
        let id = Permutation::identity(degree);
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            slot,
            trans: vec![TransEntry {
                u: id.clone(),
                u_inv: id,
                p: one.clone(),
                p_inv: one.clone(),
            }],
            checked: vec![0],
        }
    }

    /// Transversal entry mapping the base point to `point`, if in the orbit.
    #[inline]
    pub fn entry(&self, point: usize) -> Option<&TransEntry<P>> {
        match self.slot[point] {
            NONE => None,
            i => Some(&self.trans[i as usize]),
        }
    }

    fn extend_orbit(&mut self) {
        let mut idx = 0;
        while idx < self.orbit.len() {
            let gamma = self.orbit[idx];
            for s in 0..self.gens.len() {
                let img = self.gens[s].0.image(gamma);
                if self.slot[img] == NONE {
                    let t = &self.trans[self.slot[gamma] as usize];
                    let u = &t.u * &self.gens[s].0;
                    let p = t.p.mul(&self.gens[s].1);
                    self.slot[img] = self.trans.len() as u32;
                    self.trans.push(TransEntry {
                        u_inv: u.inverse(),
                        u,
                        p_inv: p.inv(),
                        p,
                    });
                    self.orbit.push(img);
                    self.checked.push(0);
                }
            }
            idx += 1;
        }
    }
}

#[derive(Clone)]
pub(crate) struct Chain<P> {
    pub degree: usize,
    pub levels: Vec<Level<P>>,
    one: P,
    pub violated: bool,
}

pub(crate) struct Sifted<P> {
    pub residue: Permutation,
    pub payload: P,
    pub level: usize,
}

impl<P: Payload> Chain<P> {
    /// Empty chain whose base starts with `prefix`.
    pub fn new(degree: usize, prefix: &[usize], one: P) -> Self {
        let mut levels: Vec<Level<P>> = Vec::new();
        for &b in prefix {
            if levels.iter().all(|l| l.base != b) {
                levels.push(Level::new(degree, b, &one));
            }
        }
        Chain {
            degree,
            levels,
            one,
            violated: false,
        }
    }

    pub fn build<I>(degree: usize, prefix: &[usize], one: P, gens: I) -> Self
    where
        I: IntoIterator<Item = (Permutation, P)>,
    {
        let mut chain = Chain::new(degree, prefix, one);
        for (g, p) in gens {
            chain.add_generator(g, p);
        }
        chain
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels
            .first()
            .map(|l| l.gens.iter().map(|(g, _)| g.clone()).collect())
            .unwrap_or_default()
    }

    /// Strips `g` through the levels starting at `from`.
    pub fn sift_from(&self, mut g: Permutation, mut p: P, from: usize) -> Sifted<P> {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.image(level.base);
            let Some(t) = level.entry(beta) else {
                return Sifted {
                    residue: g,
                    payload: p,
                    level: l,
                };
            };
            g = &g * &t.u_inv;
            p = p.mul(&t.p_inv);
        }
        Sifted {
            residue: g,
            payload: p,
            level: self.levels.len(),
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let mut g = g.clone();
        for level in &self.levels {
            let Some(t) = level.entry(g.image(level.base)) else {
                return false;
            };
            g = &g * &t.u_inv;
        }
        g.is_identity()
    }

    /// Payload of a member, as the product of the transversal payloads
    /// met while sifting. `None` if `g` is not in the group.
    pub fn payload_of(&self, g: &Permutation) -> Option<P> {
        let mut g = g.clone();
        let mut parts: Vec<&P> = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let t = level.entry(g.image(level.base))?;
            g = &g * &t.u_inv;
            parts.push(&t.p);
        }
        if !g.is_identity() {
            return None;
        }
        let mut acc = self.one.clone();
        for p in parts.into_iter().rev() {
            acc = acc.mul(p);
        }
        Some(acc)
    }

    pub fn add_generator(&mut self, g: Permutation, p: P) {
        let s = self.sift_from(g, p, 0);
        if s.residue.is_identity() {
            if !s.payload.is_trivial() {
                self.violated = true;
            }
            return;
        }
        self.insert(s.residue, s.payload, 0, s.level);
        self.complete();
    }

    fn insert(&mut self, h: Permutation, p: P, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = h.first_moved().expect("nontrivial residue");
            let level = Level::new(self.degree, b, &self.one);
            self.levels.push(level);
        }
        for l in from..=to {
            self.levels[l].gens.push((h.clone(), p.clone()));
            self.levels[l].extend_orbit();
        }
    }

    /// Finds a Schreier generator at level `i` that does not sift through the
    /// deeper levels. Progress is recorded so verified pairs are never
    /// revisited; this is sound because the deeper subgroup only grows.
    fn scan(&mut self, i: usize) -> Option<Sifted<P>> {
        let mut idx = 0;
        while idx < self.levels[i].orbit.len() {
            let level = &self.levels[i];
            let gamma = level.orbit[idx];
            let ngens = level.gens.len();
            let mut s = level.checked[idx];
            while s < ngens {
                let level = &self.levels[i];
                let t = level.entry(gamma).unwrap();
                let (sg, sp) = &level.gens[s];
                let img = sg.image(gamma);
                let t2 = level.entry(img).unwrap();
                let h = &(&t.u * sg) * &t2.u_inv;
                let hp = t.p.mul(sp).mul(&t2.p_inv);
                s += 1;
                let sifted = self.sift_from(h, hp, i + 1);
                if !sifted.residue.is_identity() {
                    self.levels[i].checked[idx] = s;
                    return Some(sifted);
                }
                if !sifted.payload.is_trivial() {
                    self.violated = true;
                }
            }
            self.levels[i].checked[idx] = s;
            idx += 1;
        }
        None
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            match self.scan(i as usize) {
                Some(s) => {
                    let to = s.level;
                    self.insert(s.residue, s.payload, i as usize + 1, to);
                    i = to as isize;
                }
                None => i -= 1,
            }
        }
    }

    /// Uniform random element: one uniform transversal choice per level.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let k = rng.gen_range(0..level.trans.len());
            g = &g * &level.trans[k].u;
        }
        g
    }

    /// Every element, deepest level varying slowest.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.trans.len());
            for g in &out {
                for t in &level.trans {
                    next.push(g * &t.u);
                }
            }
            out = next;
        }
        out
    }

    /// Points fixed by every strong generator at level `l`, so that the
    /// images of these points are constant on each coset of `G^(l)`.
    pub fn fixed_at(&self, l: usize) -> Vec<usize> {
        if l >= self.levels.len() {
            return (0..self.degree).collect();
        }
        let gens = &self.levels[l].gens;
        (0..self.degree)
            .filter(|&x| gens.iter().all(|(g, _)| g.image(x) == x))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn orders() {
        let c: Chain<()> = Chain::build(5, &[], (), [(p("(1 2)", 5), ()), (p("(1 2 3 4 5)", 5), ())]);
        assert_eq!(c.order(), BigUint::from(120u32));
        let c: Chain<()> = Chain::build(4, &[3, 2], (), [(p("(1 2 3 4)", 4), ())]);
        assert_eq!(c.base()[..2], [3, 2]);
        assert_eq!(c.order(), BigUint::from(4u32));
    }

    #[test]
    fn payload_detects_bad_assignment() {
        // (1 2 3) -> (1 2) is not a homomorphism; (1 2 3)(4 5) -> (1 2) is.
        let bad: Chain<Permutation> =
            Chain::build(3, &[], Permutation::identity(2), [(p("(1 2 3)", 3), p("(1 2)", 2))]);
        assert!(bad.violated);
        let good: Chain<Permutation> = Chain::build(
            5,
            &[],
            Permutation::identity(2),
            [(p("(1 2 3)(4 5)", 5), p("(1 2)", 2))],
        );
        assert!(!good.violated);
        assert_eq!(good.payload_of(&p("(4 5)", 5)).unwrap(), p("(1 2)", 2));
        assert_eq!(good.payload_of(&p("(1 3 2)", 5)).unwrap(), Permutation::identity(2));
    }
}

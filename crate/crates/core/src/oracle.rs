//! Exact μ(G) for small groups: the least Σ [G:Hᵢ] over collections of
//! subgroups whose cores meet trivially.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::small_group::{all_subgroups, CayleyGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleWitness {
    pub subgroups: Vec<Vec<usize>>,
    pub total_degree: usize,
    pub core_intersection: Vec<usize>,
}

fn to_set(c: &CayleyGroup, h: &[usize]) -> Result<FixedBitSet> {
    if !c.is_subgroup(h) {
        return Err(Error::NotASubgroup);
    }
    let mut s = FixedBitSet::with_capacity(c.order());
    s.extend(h.iter().copied());
    Ok(s)
}

/// Shrinks `set` by conjugating with generators until it is stable, which
/// leaves the largest normal subgroup inside it.
fn core_of(c: &CayleyGroup, gens: &[usize], set: &FixedBitSet) -> FixedBitSet {
    let mut k = set.clone();
    loop {
        let before = k.count_ones(..);
        for &g in gens {
            k.intersect_with(&c.conjugate_set(&k, g));
        }
        if k.count_ones(..) == before {
            return k;
        }
    }
}

/// Largest normal subgroup of `c` contained in the subgroup `h`.
pub fn core(c: &CayleyGroup, h: &[usize]) -> Result<Vec<usize>> {
    let s = to_set(c, h)?;
    Ok(core_of(c, &c.greedy_generators(), &s).ones().collect())
}

pub fn is_faithful_collection(c: &CayleyGroup, hs: &[Vec<usize>]) -> Result<bool> {
    let gens = c.greedy_generators();
    let mut acc = FixedBitSet::with_capacity(c.order());
    acc.insert_range(..);
    for h in hs {
        acc.intersect_with(&core_of(c, &gens, &to_set(c, h)?));
    }
    Ok(acc.count_ones(..) == 1)
}

/// Conjugacy classes of `subs` under `c`, as index lists into `subs`.
pub fn subgroup_classes(c: &CayleyGroup, subs: &[Subgroup]) -> Vec<Vec<usize>> {
    let gens = c.greedy_generators();
    let index: FxHashMap<&FixedBitSet, usize> = subs.iter().enumerate().map(|(i, h)| (h.set(), i)).collect();
    let mut class = vec![usize::MAX; subs.len()];
    let mut out = Vec::new();
    for i in 0..subs.len() {
        if class[i] != usize::MAX {
            continue;
        }
        let id = out.len();
        class[i] = id;
        let mut members = vec![i];
        let mut k = 0;
        while k < members.len() {
            let s = subs[members[k]].set();
            for &g in &gens {
                let j = index[&c.conjugate_set(s, g)];
                if class[j] == usize::MAX {
                    class[j] = id;
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

struct Edge {
    core: FixedBitSet,
    cost: usize,
    subgroup: usize,
}

/// Distinct cores, each with the least index of a subgroup having it, minus
/// those that a cheaper choice makes redundant.
fn edges(c: &CayleyGroup, subs: &[Subgroup]) -> Vec<Edge> {
    let m = c.order();
    let gens = c.greedy_generators();
    let mut best: FxHashMap<FixedBitSet, (usize, usize)> = FxHashMap::default();
    for class in subgroup_classes(c, subs) {
        let i = class[0];
        let h = &subs[i];
        if h.order() == m {
            continue;
        }
        let core = core_of(c, &gens, h.set());
        let cost = m / h.order();
        let e = best.entry(core).or_insert((cost, i));
        if cost < e.0 {
            *e = (cost, i);
        }
    }
    let mut all: Vec<Edge> = best
        .into_iter()
        .map(|(core, (cost, subgroup))| Edge { core, cost, subgroup })
        .collect();
    all.sort_by(|a, b| a.cost.cmp(&b.cost).then_with(|| a.core.ones().cmp(b.core.ones())));

    // A core is redundant if a strictly smaller core costs no more, or if it
    // is the intersection of two larger cores costing no more in total.
    let n = all.len();
    let mut containing = vec![FixedBitSet::with_capacity(n); m];
    for (j, e) in all.iter().enumerate() {
        for x in e.core.ones() {
            containing[x].insert(j);
        }
    }
    let above = |i: usize| {
        let mut acc = FixedBitSet::with_capacity(n);
        acc.insert_range(..);
        for x in generators_of(c, &all[i].core) {
            acc.intersect_with(&containing[x]);
        }
        acc.set(i, false);
        acc
    };
    let mut keep = vec![true; n];
    for j in 0..n {
        for i in above(j).ones() {
            if all[i].cost >= all[j].cost {
                keep[i] = false;
            }
        }
    }
    for i in 0..n {
        if !keep[i] {
            continue;
        }
        let up: Vec<usize> = above(i).ones().take_while(|&j| all[j].cost <= all[i].cost).collect();
        let size = all[i].core.count_ones(..);
        'pairs: for (a, &f) in up.iter().enumerate() {
            for &g in &up[a + 1..] {
                if all[f].cost + all[g].cost > all[i].cost {
                    break;
                }
                if all[f].core.intersection(&all[g].core).count() == size {
                    keep[i] = false;
                    break 'pairs;
                }
            }
        }
    }
    all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect()
}

/// A few elements generating the subgroup `set`.
fn generators_of(c: &CayleyGroup, set: &FixedBitSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut sub = c.generate(&[]);
    for x in set.ones() {
        if !sub.contains(x) {
            gens.push(x);
            sub = c.generate(&gens);
        }
    }
    gens
}

/// μ(G) with a witnessing collection of subgroups.
///
/// Shortest paths over normal subgroups: start at G, step from N to N ∩ C
/// at cost [G:H] for a subgroup H with core C, stop at the trivial group.
pub fn mu_oracle(c: &CayleyGroup, limit: usize) -> Result<(usize, OracleWitness)> {
    let m = c.order();
    if m == 1 {
        return Ok((
            0,
            OracleWitness {
                subgroups: Vec::new(),
                total_degree: 0,
                core_intersection: vec![0],
            },
        ));
    }
    let subs = all_subgroups(c, limit)?;
    let edges = edges(c, &subs);

    let mut start = FixedBitSet::with_capacity(m);
    start.insert_range(..);
    let mut ids: FxHashMap<FixedBitSet, usize> = FxHashMap::default();
    let mut states: Vec<FixedBitSet> = vec![start.clone()];
    let mut dist: Vec<usize> = vec![0];
    let mut prev: Vec<Option<(usize, usize)>> = vec![None];
    ids.insert(start, 0);
    let mut heap = BinaryHeap::from([Reverse((0usize, 0usize))]);
    let goal = loop {
        let Some(Reverse((d, s))) = heap.pop() else {
            return Err(Error::Internal("no faithful collection found".into()));
        };
        if d > dist[s] {
            continue;
        }
        if states[s].count_ones(..) == 1 {
            break s;
        }
        let size = states[s].count_ones(..);
        for (k, e) in edges.iter().enumerate() {
            let mut next = states[s].clone();
            next.intersect_with(&e.core);
            if next.count_ones(..) == size {
                continue;
            }
            let nd = d + e.cost;
            let t = match ids.get(&next) {
                Some(&t) => t,
                None => {
                    let t = states.len();
                    ids.insert(next.clone(), t);
                    states.push(next);
                    dist.push(usize::MAX);
                    prev.push(None);
                    t
                }
            };
            if nd < dist[t] {
                dist[t] = nd;
                prev[t] = Some((s, k));
                heap.push(Reverse((nd, t)));
            }
        }
    };

    let mut subgroups = Vec::new();
    let mut s = goal;
    while let Some((p, k)) = prev[s] {
        subgroups.push(subs[edges[k].subgroup].elements());
        s = p;
    }
    subgroups.reverse();
    let total = dist[goal];
    Ok((
        total,
        OracleWitness {
            subgroups,
            total_degree: total,
            core_intersection: states[goal].ones().collect(),
        },
    ))
}

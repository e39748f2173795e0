//! Permutation representations of a few standard groups.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bsgs::PermGroup;
use crate::error::{Error, Result};
use crate::ff::{FFMatrix, Family, ProjectiveSpace};
use crate::hint::RecognitionHint;
use crate::perm::Permutation;
use crate::simple_id::prime_power;

fn field_family(d: usize, q: u64) -> Result<Family> {
    let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
    Ok(Family::Sl { d, p: p as u32, e })
}

/// The group generated by `mats` acting on the points of PG(d-1, q).
pub fn projective_group(space: &ProjectiveSpace, mats: &[FFMatrix]) -> Result<PermGroup> {
    let gens = mats.iter().map(|m| space.permutation(m)).collect::<Result<Vec<_>>>()?;
    PermGroup::new(space.len(), gens)
}

fn diagonal_generator(family: &Family) -> Result<FFMatrix> {
    let f = family.field()?;
    let mut m = FFMatrix::identity(&f, family.dim());
    m.set(0, 0, f.primitive());
    Ok(m)
}

/// PSL(d, q) on the points of PG(d-1, q).
pub fn psl(d: usize, q: u64) -> Result<PermGroup> {
    let family = field_family(d, q)?;
    let space = ProjectiveSpace::new(&family.field()?, d)?;
    projective_group(&space, &family.standard_generators()?)
}

/// PGL(d, q) on the points of PG(d-1, q).
pub fn pgl(d: usize, q: u64) -> Result<PermGroup> {
    let family = field_family(d, q)?;
    let space = ProjectiveSpace::new(&family.field()?, d)?;
    let mut mats = family.standard_generators()?;
    mats.push(diagonal_generator(&family)?);
    projective_group(&space, &mats)
}

/// PΓL(d, q) on the points of PG(d-1, q).
pub fn pgaml(d: usize, q: u64) -> Result<PermGroup> {
    let family = field_family(d, q)?;
    let space = ProjectiveSpace::new(&family.field()?, d)?;
    let mut mats = family.standard_generators()?;
    mats.push(diagonal_generator(&family)?);
    Ok(projective_group(&space, &mats)?.join(&[space.frobenius(1)?]))
}

/// PSL(3, q) on the points and lines of PG(2, q), with the points first.
/// A line is stored by its normal vector w and M sends it to w M^-t. With
/// `graph` the polarity exchanging point i and line i is added, and it
/// induces the transpose-inverse automorphism.
pub fn psl3_points_and_lines(q: u64, graph: bool) -> Result<PermGroup> {
    let family = field_family(3, q)?;
    let space = ProjectiveSpace::new(&family.field()?, 3)?;
    let n = space.len();
    let mut gens = Vec::new();
    for m in family.standard_generators()? {
        gens.push(points_and_lines(&space, &m)?);
    }
    if graph {
        let images = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::new(2 * n, gens)
}

/// The permutation of points and lines induced by `m`.
pub fn points_and_lines(space: &ProjectiveSpace, m: &FFMatrix) -> Result<Permutation> {
    let n = space.len();
    let on_points = space.permutation(m)?;
    let on_lines = space.permutation(&m.inverse()?.transpose())?;
    let images = (0..2 * n)
        .map(|i| {
            if i < n {
                on_points.image(i)
            } else {
                on_lines.image(i - n) + n
            }
        })
        .collect();
    Ok(Permutation::from_images(images)?)
}

/// H wr Z2 on two copies of the domain of H.
pub fn wreath_with_z2(h: &PermGroup) -> Result<PermGroup> {
    let n = h.degree();
    let base = PermGroup::direct_product(&[h.clone(), h.clone()]);
    let swap = Permutation::from_images((0..2 * n).map(|i| (i + n) % (2 * n)).collect())?;
    let mut gens = base.generators().to_vec();
    gens.push(swap);
    PermGroup::new(2 * n, gens)
}

/// The action of G by conjugation on the conjugates of its subgroup H.
pub fn action_on_conjugates(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let mut class = vec![h.clone()];
    let find = |class: &[PermGroup], k: &PermGroup| class.iter().position(|c| k.is_subgroup_of(c));
    let mut i = 0;
    while i < class.len() {
        for x in g.generators() {
            let k = class[i].conjugate_by(x);
            if find(&class, &k).is_none() {
                class.push(k);
            }
        }
        i += 1;
    }
    let gens = g
        .generators()
        .iter()
        .map(|x| {
            let images = class
                .iter()
                .map(|c| find(&class, &c.conjugate_by(x)).expect("class is closed"))
                .collect();
            Ok(Permutation::from_images(images)?)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(class.len(), gens)
}

/// A subgroup ⟨a, b⟩ of G of the given order with a, b of orders `oa`, `ob`,
/// found from seeded random elements.
pub fn find_two_generated(g: &PermGroup, oa: u64, ob: u64, order: u64, seed: u64, tries: usize) -> Result<PermGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let of_order = |o: u64, rng: &mut ChaCha8Rng| {
        for _ in 0..tries {
            let x = g.random_element(rng);
            if let Some(k) = x.order_u64() {
                if k % o == 0 {
                    return Some(x.pow(k / o));
                }
            }
        }
        None
    };
    for _ in 0..tries {
        let (Some(a), Some(b)) = (of_order(oa, &mut rng), of_order(ob, &mut rng)) else {
            break;
        };
        let h = PermGroup::new(g.degree(), vec![a, b])?;
        if h.order() == order.into() {
            return Ok(h);
        }
    }
    Err(Error::BudgetExceeded {
        what: "subgroup search",
        budget: tries,
    })
}

/// PSL(2, 11) on the 11 conjugates of a subgroup isomorphic to Alt(5).
pub fn psl2_11_on_11_points() -> Result<PermGroup> {
    let g = psl(2, 11)?;
    let a5 = find_two_generated(&g, 2, 3, 60, 11, 2000)?;
    let out = action_on_conjugates(&g, &a5)?;
    debug_assert_eq!(out.degree(), 11);
    Ok(out)
}

/// The standard generating set of SL(d, q) paired with its permutations of
/// the points of PG(d-1, q), or of points and lines when `with_lines`.
pub fn psl_hint(d: usize, q: u64, with_lines: bool) -> Result<RecognitionHint> {
    let family = field_family(d, q)?;
    let space = ProjectiveSpace::new(&family.field()?, d)?;
    let mut pairs = Vec::new();
    for m in family.standard_generators()? {
        let p = if with_lines {
            points_and_lines(&space, &m)?
        } else {
            space.permutation(&m)?
        };
        pairs.push((p, m));
    }
    Ok(RecognitionHint::from_pairs("PSL", d as u32, q, &pairs))
}

/// M10 on 10 points: PSL(2, 9) extended by the product of a diagonal
/// automorphism and the Frobenius map.
pub fn m10() -> Result<PermGroup> {
    let family = field_family(2, 9)?;
    let space = ProjectiveSpace::new(&family.field()?, 2)?;
    let delta = space.permutation(&diagonal_generator(&family)?)?;
    let extra = &delta * &space.frobenius(1)?;
    Ok(projective_group(&space, &family.standard_generators()?)?.join(&[extra]))
}

/// M12 on 12 points.
pub fn m12() -> Result<PermGroup> {
    PermGroup::parse(
        12,
        &[
            "(1,2,3,4,5,6,7,8,9,10,11)",
            "(3,7,11,8)(4,10,5,6)",
            "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)",
        ],
    )
}

/// M24 on 24 points.
pub fn m24() -> Result<PermGroup> {
    PermGroup::parse(
        24,
        &[
            "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
            "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
            "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)",
        ],
    )
}

fn mask_image(x: &Permutation, mask: u32) -> u32 {
    (0..24)
        .filter(|&i| mask >> i & 1 == 1)
        .fold(0, |m, i| m | 1 << x.image(i))
}

/// A weight-12 word of the Golay code preserved by `m24()`. The octad
/// through five points adds the one orbit of size 3 of their pointwise
/// stabilizer; the
/// sum of two octads meeting in two points is a dodecad.
pub fn dodecad(m24: &PermGroup) -> Result<u32> {
    let stab = m24.pointwise_stabilizer(&[0, 1, 2, 3, 4])?;
    let mut octad = 0b11111u32;
    for orbit in stab.orbits() {
        if orbit.len() == 3 {
            octad |= orbit.iter().fold(0, |m, &i| m | 1 << i);
        }
    }
    if octad.count_ones() != 8 {
        return Err(Error::Internal("five-point stabilizer does not fix an octad".into()));
    }
    let mut octads = vec![octad];
    let mut seen: rustc_hash::FxHashSet<u32> = octads.iter().copied().collect();
    let mut i = 0;
    while i < octads.len() {
        for g in m24.generators() {
            let o = mask_image(g, octads[i]);
            if seen.insert(o) {
                octads.push(o);
            }
        }
        i += 1;
    }
    octads
        .iter()
        .find_map(|&o| {
            let d = octad ^ o;
            ((octad & o).count_ones() == 2 && d.count_ones() == 12).then_some(d)
        })
        .ok_or_else(|| Error::Internal("no dodecad found".into()))
}

/// M12.2 on 24 points: the stabilizer in M24 of a dodecad and its
/// complement, built from seeded random elements that preserve the pair.
pub fn m12_2(seed: u64) -> Result<PermGroup> {
    let m24 = m24()?;
    let d = dodecad(&m24)?;
    let complement = !d & ((1 << 24) - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = PermGroup::trivial(24);
    let target = num_bigint::BigUint::from(190_080u32);
    for _ in 0..200_000 {
        if h.order() == target {
            return Ok(h);
        }
        let x = m24.random_element(&mut rng);
        let img = mask_image(&x, d);
        if (img == d || img == complement) && !h.contains(&x) {
            h = h.join(&[x]);
        }
    }
    Err(Error::BudgetExceeded {
        what: "dodecad stabilizer sampling",
        budget: 200_000,
    })
}

use std::collections::BTreeMap;

use super::chain::Chain;
use super::group::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A homomorphism between permutation groups, given on the source
/// generators and evaluated by sifting through a chain that carries images.
#[derive(Clone)]
pub struct Homomorphism {
    source: PermGroup,
    target: PermGroup,
    images: Vec<Permutation>,
    chain: Chain<Permutation>,
}

impl Homomorphism {
    /// Fails with `NotHomomorphism` if the assignment does not extend.
    pub fn new(source: &PermGroup, target_degree: usize, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        for im in &images {
            if im.degree() != target_degree {
                return Err(Error::DegreeMismatch {
                    expected: target_degree,
                    got: im.degree(),
                });
            }
        }
        let chain = Chain::build(
            source.degree(),
            &source.base(),
            Permutation::identity(target_degree),
            source.generators().iter().cloned().zip(images.iter().cloned()),
        );
        if chain.violated {
            return Err(Error::NotHomomorphism);
        }
        let target = PermGroup::new(target_degree, images.clone())?;
        Ok(Homomorphism {
            source: source.clone(),
            target,
            images,
            chain,
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    /// The image group, generated by the generator images.
    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        if g.degree() != self.source.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.source.degree(),
                got: g.degree(),
            });
        }
        self.chain.payload_of(g).ok_or(Error::NotInGroup)
    }

    /// Subgroup of the source generated by the diagonal elements `(g, φ(g))`
    /// on the disjoint union of both domains.
    fn graph(&self) -> PermGroup {
        let n = self.source.degree();
        let m = self.target.degree();
        let gens = self
            .source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, h)| {
                let mut im: Vec<usize> = (0..n).map(|i| g.image(i)).collect();
                im.extend((0..m).map(|j| h.image(j) + n));
                Permutation::from_images(im).unwrap()
            })
            .collect();
        PermGroup::from_parts(n + m, gens)
    }

    pub fn kernel(&self) -> PermGroup {
        let n = self.source.degree();
        let m = self.target.degree();
        let targets: Vec<usize> = (n..n + m).collect();
        let stab = self.graph().pointwise_stabilizer(&targets).unwrap();
        restrict_group(&stab, n)
    }

    /// Preimage of the stabilizer of `point` in the image group.
    pub fn preimage_of_stabilizer(&self, point: usize) -> Result<PermGroup> {
        let n = self.source.degree();
        if point >= self.target.degree() {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.target.degree(),
            });
        }
        let stab = self.graph().pointwise_stabilizer(&[n + point])?;
        Ok(restrict_group(&stab, n))
    }
}

fn restrict_group(g: &PermGroup, n: usize) -> PermGroup {
    PermGroup::from_parts(n, g.generators().iter().map(|x| x.restrict(0, n)).collect())
}

/// The action of `G` on `m` objects given by `rule`, which maps each
/// generator to a permutation of the objects (or `None` if it does not act).
pub fn induced_action<F>(g: &PermGroup, m: usize, rule: F) -> Result<Homomorphism>
where
    F: Fn(&Permutation) -> Option<Permutation>,
{
    let mut images = Vec::with_capacity(g.generators().len());
    for x in g.generators() {
        let im = rule(x).ok_or(Error::NotBijectiveAction)?;
        if im.degree() != m {
            return Err(Error::NotBijectiveAction);
        }
        images.push(im);
    }
    Homomorphism::new(g, m, images)
}

/// Action on a list of point sets, which must be permuted by `G`.
pub fn action_on_sets(g: &PermGroup, sets: &[Vec<usize>]) -> Result<Homomorphism> {
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (i, s) in sets.iter().enumerate() {
        let mut s = s.clone();
        s.sort_unstable();
        if index.insert(s, i).is_some() {
            return Err(Error::NotBijectiveAction);
        }
    }
    induced_action(g, sets.len(), |x| {
        let images: Option<Vec<usize>> = sets
            .iter()
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|&p| x.image(p)).collect();
                t.sort_unstable();
                index.get(&t).copied()
            })
            .collect();
        Permutation::from_images(images?).ok()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn pairings_of_four_points() {
        let s4 = PermGroup::symmetric(4);
        let pairs = [vec![0, 1, 2, 3], vec![0, 2, 1, 3], vec![0, 3, 1, 2]];
        let hom = induced_action(&s4, 3, |x| {
            let key = |p: &Vec<usize>| {
                let mut a = [x.image(p[0]), x.image(p[1])];
                a.sort();
                let mut b = [x.image(p[2]), x.image(p[3])];
                b.sort();
                let mut k = [a, b];
                k.sort();
                k
            };
            let canon: Vec<[[usize; 2]; 2]> = pairs
                .iter()
                .map(|p| {
                    let mut k = [[p[0], p[1]], [p[2], p[3]]];
                    k.sort();
                    k
                })
                .collect();
            let im = pairs
                .iter()
                .map(|p| canon.iter().position(|c| *c == key(p)))
                .collect::<Option<Vec<_>>>()?;
            Permutation::from_images(im).ok()
        })
        .unwrap();
        assert_eq!(hom.target().order(), BigUint::from(6u32));
        assert_eq!(hom.kernel().order(), BigUint::from(4u32));
    }
}

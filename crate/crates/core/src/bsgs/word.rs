use std::sync::Arc;

use super::chain::Payload;
use crate::perm::Permutation;

/// A word over group generators. Letter `k > 0` stands for generator
/// `k - 1`, and `-k` for its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Evaluates left to right over `gens`.
    pub fn evaluate(&self, gens: &[Permutation], degree: usize) -> Permutation {
        let mut acc = Permutation::identity(degree);
        for &k in &self.0 {
            let g = &gens[k.unsigned_abs() as usize - 1];
            acc = if k > 0 { &acc * g } else { &acc * &g.inverse() };
        }
        acc
    }
}

/// Straight-line program used as a chain payload; flattened only on output.
#[derive(Clone)]
pub(crate) struct Slp(Arc<Node>);

enum Node {
    One,
    Gen(i32),
    Prod(Slp, Slp),
    Inv(Slp),
}

impl Slp {
    pub fn one() -> Self {
        Slp(Arc::new(Node::One))
    }

    pub fn gen(index: usize) -> Self {
        Slp(Arc::new(Node::Gen(index as i32 + 1)))
    }

    pub fn flatten(&self) -> Word {
        let mut out: Vec<i32> = Vec::new();
        // Explicit stack of (node, inverted) to survive deep programs.
        let mut stack: Vec<(&Slp, bool)> = vec![(self, false)];
        while let Some((s, inv)) = stack.pop() {
            match &*s.0 {
                Node::One => {}
                Node::Gen(k) => {
                    let k = if inv { -k } else { *k };
                    if out.last() == Some(&-k) {
                        out.pop();
                    } else {
                        out.push(k);
                    }
                }
                Node::Prod(a, b) => {
                    if inv {
                        stack.push((a, true));
                        stack.push((b, true));
                    } else {
                        stack.push((b, false));
                        stack.push((a, false));
                    }
                }
                Node::Inv(a) => stack.push((a, !inv)),
            }
        }
        Word(out)
    }
}

impl Payload for Slp {
    fn mul(&self, other: &Self) -> Self {
        match (&*self.0, &*other.0) {
            (Node::One, _) => other.clone(),
            (_, Node::One) => self.clone(),
            _ => Slp(Arc::new(Node::Prod(self.clone(), other.clone()))),
        }
    }
    fn inv(&self) -> Self {
        match &*self.0 {
            Node::One => self.clone(),
            Node::Inv(a) => a.clone(),
            _ => Slp(Arc::new(Node::Inv(self.clone()))),
        }
    }
    fn is_trivial(&self) -> bool {
        true
    }
}

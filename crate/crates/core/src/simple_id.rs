//! Names of non-abelian simple groups, looked up by order, and their minimal
//! faithful permutation degrees.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bsgs::PermGroup;
use crate::error::{Error, Result};
use crate::small_group::CayleyGroup;

/// Orders up to this bound are covered by the injectivity self-check.
pub const SELF_CHECK_BOUND: u128 = 1_000_000_000_000;

/// Random elements whose normal closures are tested by the simplicity check.
const SIMPLICITY_SAMPLES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sporadic {
    M12,
    ON,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exceptional {
    G2,
    F4,
    E6,
}

/// A non-abelian simple group, always stored in canonical form.
///
/// Isomorphic names collapse to one representative: Alt(5) for PSL(2,4) and
/// PSL(2,5), Alt(6) for PSL(2,9), Alt(8) for PSL(4,2), PSL(2,7) for PSL(3,2)
/// and PSp(4,3) for PSU(4,2). Classical dimensions start where no further
/// isomorphisms occur.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SimpleName {
    Alt {
        n: u32,
    },
    Psl {
        d: u32,
        q: u64,
    },
    /// PSp(dim, q).
    Psp {
        dim: u32,
        q: u64,
    },
    /// PΩ⁺(dim, q).
    POmegaPlus {
        dim: u32,
        q: u64,
    },
    /// PΩ⁻(dim, q).
    POmegaMinus {
        dim: u32,
        q: u64,
    },
    Psu {
        d: u32,
        q: u64,
    },
    Sporadic(Sporadic),
    Exceptional {
        ty: Exceptional,
        q: u64,
    },
}

/// `(p, e)` with `q = p^e`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow(q: u64, k: u32) -> Option<u128> {
    (q as u128).checked_pow(k)
}

/// Π (q^i - s^i) over i in `range`, with s = ±1.
fn product(q: u64, range: impl Iterator<Item = u32>, sign: i128) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in range {
        let qi = pow(q, i)? as i128;
        let term = qi - sign.pow(i);
        acc = acc.checked_mul(term as u128)?;
    }
    Some(acc)
}

impl SimpleName {
    pub fn alt(n: u32) -> Result<Self> {
        Self::canonical(SimpleName::Alt { n })
    }

    pub fn psl(d: u32, q: u64) -> Result<Self> {
        Self::canonical(SimpleName::Psl { d, q })
    }

    pub fn psp(dim: u32, q: u64) -> Result<Self> {
        Self::canonical(SimpleName::Psp { dim, q })
    }

    pub fn pomega_plus(dim: u32, q: u64) -> Result<Self> {
        Self::canonical(SimpleName::POmegaPlus { dim, q })
    }

    pub fn psu(d: u32, q: u64) -> Result<Self> {
        Self::canonical(SimpleName::Psu { d, q })
    }

    /// Checks the simplicity range and applies the alias rule.
    pub fn canonical(self) -> Result<Self> {
        use SimpleName::*;
        let bad = || {
            Err(Error::InvalidParameters(format!(
                "{self} is not a simple group in the supported range"
            )))
        };
        let q_ok = |q: u64| prime_power(q).is_some();
        let valid = match self {
            Alt { n } => n >= 5,
            Psl { d, q } => q_ok(q) && d >= 2 && !(d == 2 && q <= 3),
            Psp { dim, q } => q_ok(q) && dim >= 4 && dim % 2 == 0 && !(dim == 4 && q == 2),
            POmegaPlus { dim, q } | POmegaMinus { dim, q } => q_ok(q) && dim >= 8 && dim % 2 == 0,
            Psu { d, q } => q_ok(q) && d >= 3 && !(d == 3 && q == 2),
            Sporadic(_) => true,
            Exceptional { ty, q } => q_ok(q) && !(ty == self::Exceptional::G2 && q == 2),
        };
        if !valid {
            return bad();
        }
        Ok(match self {
            Psl { d: 2, q: 4 | 5 } => Alt { n: 5 },
            Psl { d: 2, q: 9 } => Alt { n: 6 },
            Psl { d: 4, q: 2 } => Alt { n: 8 },
            Psl { d: 3, q: 2 } => Psl { d: 2, q: 7 },
            Psu { d: 4, q: 2 } => Psp { dim: 4, q: 3 },
            other => other,
        })
    }

    /// The group order, or `None` if it does not fit in 128 bits.
    pub fn order(&self) -> Option<u128> {
        use SimpleName::*;
        match *self {
            Alt { n } => (3..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)),
            Psl { d, q } => {
                let num = pow(q, d * (d - 1) / 2)?.checked_mul(product(q, 2..=d, 1)?)?;
                Some(num / gcd(d as u128, q as u128 - 1))
            }
            Psp { dim, q } => {
                let m = dim / 2;
                let num = pow(q, m * m)?.checked_mul(product(q, (1..=m).map(|i| 2 * i), 1)?)?;
                Some(num / gcd(2, q as u128 - 1))
            }
            POmegaPlus { dim, q } | POmegaMinus { dim, q } => {
                let m = dim / 2;
                let plus = matches!(self, POmegaPlus { .. });
                let qm = pow(q, m)?;
                let twist = if plus { qm - 1 } else { qm + 1 };
                let num =
                    pow(q, m * (m - 1))?
                        .checked_mul(twist)?
                        .checked_mul(product(q, (1..m).map(|i| 2 * i), 1)?)?;
                Some(num / gcd(4, twist))
            }
            Psu { d, q } => {
                let num = pow(q, d * (d - 1) / 2)?.checked_mul(product(q, 2..=d, -1)?)?;
                Some(num / gcd(d as u128, q as u128 + 1))
            }
            Sporadic(self::Sporadic::M12) => Some(95_040),
            Sporadic(self::Sporadic::ON) => Some(460_815_505_920),
            Exceptional { ty, q } => {
                let (top, degrees): (u32, &[u32]) = match ty {
                    self::Exceptional::G2 => (6, &[2, 6]),
                    self::Exceptional::F4 => (24, &[2, 6, 8, 12]),
                    self::Exceptional::E6 => (36, &[2, 5, 6, 8, 9, 12]),
                };
                let num = pow(q, top)?.checked_mul(product(q, degrees.iter().copied(), 1)?)?;
                let z = if ty == self::Exceptional::E6 {
                    gcd(3, q as u128 - 1)
                } else {
                    1
                };
                Some(num / z)
            }
        }
    }

    /// Family label and the `(d, q, tag)` parameters the μ table matches on.
    fn table_key(&self) -> (&'static str, Option<u32>, Option<u64>, Option<&'static str>) {
        use SimpleName::*;
        match *self {
            Alt { n } => ("Alt", Some(n), None, None),
            Psl { d, q } => ("PSL", Some(d), Some(q), None),
            Psp { dim, q } => ("PSp", Some(dim), Some(q), None),
            POmegaPlus { dim, q } => ("POmegaPlus", Some(dim), Some(q), None),
            POmegaMinus { dim, q } => ("POmegaMinus", Some(dim), Some(q), None),
            Psu { d, q } => ("PSU", Some(d), Some(q), None),
            Sporadic(s) => ("Sporadic", None, None, Some(s.tag())),
            Exceptional { ty, q } => (ty.tag(), None, Some(q), None),
        }
    }
}

impl Sporadic {
    fn tag(self) -> &'static str {
        match self {
            Sporadic::M12 => "M12",
            Sporadic::ON => "ON",
        }
    }
}

impl Exceptional {
    fn tag(self) -> &'static str {
        match self {
            Exceptional::G2 => "G2",
            Exceptional::F4 => "F4",
            Exceptional::E6 => "E6",
        }
    }
}

impl fmt::Display for SimpleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SimpleName::*;
        match *self {
            Alt { n } => write!(f, "Alt({n})"),
            Psl { d, q } => write!(f, "PSL({d},{q})"),
            Psp { dim, q } => write!(f, "PSp({dim},{q})"),
            POmegaPlus { dim, q } => write!(f, "POmegaPlus({dim},{q})"),
            POmegaMinus { dim, q } => write!(f, "POmegaMinus({dim},{q})"),
            Psu { d, q } => write!(f, "PSU({d},{q})"),
            Sporadic(s) => f.write_str(s.tag()),
            Exceptional { ty, q } => write!(f, "{}({q})", ty.tag()),
        }
    }
}

impl FromStr for SimpleName {
    type Err = Error;

    /// Parses the display form. Non-canonical aliases are accepted and mapped
    /// to their canonical name.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unrecognized simple group name {s:?}"));
        match s {
            "M12" => return Ok(SimpleName::Sporadic(Sporadic::M12)),
            "ON" | "O'N" => return Ok(SimpleName::Sporadic(Sporadic::ON)),
            _ => {}
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<u64> = args
            .split(',')
            .map(|a| a.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let small = |x: u64| u32::try_from(x).map_err(|_| bad());
        let name = match (head, nums.as_slice()) {
            ("Alt", &[n]) => SimpleName::Alt { n: small(n)? },
            ("PSL", &[d, q]) => SimpleName::Psl { d: small(d)?, q },
            ("PSp", &[d, q]) => SimpleName::Psp { dim: small(d)?, q },
            ("POmegaPlus", &[d, q]) => SimpleName::POmegaPlus { dim: small(d)?, q },
            ("POmegaMinus", &[d, q]) => SimpleName::POmegaMinus { dim: small(d)?, q },
            ("PSU", &[d, q]) => SimpleName::Psu { d: small(d)?, q },
            ("G2", &[q]) => SimpleName::Exceptional { ty: Exceptional::G2, q },
            ("F4", &[q]) => SimpleName::Exceptional { ty: Exceptional::F4, q },
            ("E6", &[q]) => SimpleName::Exceptional { ty: Exceptional::E6, q },
            _ => return Err(bad()),
        };
        name.canonical()
    }
}

impl From<SimpleName> for String {
    fn from(n: SimpleName) -> String {
        n.to_string()
    }
}

impl TryFrom<String> for SimpleName {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Every canonical name of order at most `bound`, sorted by order then name.
pub fn names_up_to(bound: u128) -> Vec<SimpleName> {
    let mut out = Vec::new();
    let fits = |n: &SimpleName| n.order().is_some_and(|o| o <= bound);
    let push_while = |make: &dyn Fn(u32) -> SimpleName, start: u32, step: u32, out: &mut Vec<SimpleName>| {
        let mut k = start;
        loop {
            let name = make(k);
            if !fits(&name) {
                break;
            }
            if let Ok(c) = name.canonical() {
                out.push(c);
            }
            k += step;
        }
    };
    push_while(&|n| SimpleName::Alt { n }, 5, 1, &mut out);
    let mut q = 2u64;
    // PSL(2,q) is the smallest group attached to q.
    while (q as u128) * ((q as u128) * (q as u128) - 1) / 2 <= bound {
        if prime_power(q).is_some() {
            push_while(&|d| SimpleName::Psl { d, q }, 2, 1, &mut out);
            push_while(&|d| SimpleName::Psp { dim: d, q }, 4, 2, &mut out);
            push_while(&|d| SimpleName::POmegaPlus { dim: d, q }, 8, 2, &mut out);
            push_while(&|d| SimpleName::POmegaMinus { dim: d, q }, 8, 2, &mut out);
            push_while(&|d| SimpleName::Psu { d, q }, 3, 1, &mut out);
            for ty in [Exceptional::G2, Exceptional::F4, Exceptional::E6] {
                let name = SimpleName::Exceptional { ty, q };
                if fits(&name) {
                    if let Ok(c) = name.canonical() {
                        out.push(c);
                    }
                }
            }
        }
        q += 1;
    }
    for s in [Sporadic::M12, Sporadic::ON] {
        let name = SimpleName::Sporadic(s);
        if fits(&name) {
            out.push(name);
        }
    }
    out.sort_by_key(|n| (n.order(), n.clone()));
    out.dedup();
    out
}

/// Canonical names of the given order.
pub fn names_of_order(order: u128) -> Vec<SimpleName> {
    names_up_to(order)
        .into_iter()
        .filter(|n| n.order() == Some(order))
        .collect()
}

/// Checks that order determines the name up to `bound`, apart from the
/// Alt(8)/PSL(3,4) pair which `name_simple` separates by element orders.
pub fn order_table_self_check(bound: u128) -> Result<()> {
    let mut by_order: BTreeMap<u128, Vec<SimpleName>> = BTreeMap::new();
    for n in names_up_to(bound) {
        by_order.entry(n.order().unwrap()).or_default().push(n);
    }
    let pair = [SimpleName::Alt { n: 8 }, SimpleName::Psl { d: 3, q: 4 }];
    for (order, names) in by_order {
        if names.len() > 1 && !(names.len() == 2 && pair.iter().all(|p| names.contains(p))) {
            let list: Vec<String> = names.iter().map(|n| n.to_string()).collect();
            return Err(Error::Internal(format!("order {order} shared by {}", list.join(", "))));
        }
    }
    Ok(())
}

fn checked_table() -> Result<()> {
    static CHECK: OnceLock<Result<()>> = OnceLock::new();
    CHECK.get_or_init(|| order_table_self_check(SELF_CHECK_BOUND)).clone()
}

/// Picks the name of a simple group of the given order, using `has_order_six`
/// only for the Alt(8)/PSL(3,4) tie.
fn resolve(order: u128, has_order_six: impl FnOnce() -> Result<bool>) -> Result<SimpleName> {
    checked_table()?;
    let names = names_of_order(order);
    match names.as_slice() {
        [] => Err(Error::UnknownOrder(order.into())),
        [SimpleName::Psp { dim, q }] if *dim >= 6 && q % 2 == 1 => Err(Error::Unsupported(format!(
            "order {order} is shared by PSp({dim},{q}) and an odd-dimensional orthogonal group"
        ))),
        [one] => Ok(one.clone()),
        [a, b] if order == 20_160 => {
            let (alt, psl) = if matches!(a, SimpleName::Alt { .. }) {
                (a, b)
            } else {
                (b, a)
            };
            Ok(if has_order_six()? { alt.clone() } else { psl.clone() })
        }
        _ => {
            let list: Vec<String> = names.iter().map(|n| n.to_string()).collect();
            Err(Error::Ambiguous(order.into(), list.join(", ")))
        }
    }
}

/// Names a simple permutation group.
///
/// Simplicity is checked heuristically: the group must be perfect, and the
/// normal closures of the generators and of a few seeded random elements must
/// all be the whole group.
pub fn name_simple(g: &PermGroup) -> Result<SimpleName> {
    if g.is_trivial() || g.is_abelian() {
        return Err(Error::NotSimple);
    }
    let order = g.order();
    if g.derived_subgroup().order() != order {
        return Err(Error::NotSimple);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut seeds: Vec<_> = g.generators().to_vec();
    seeds.extend((0..SIMPLICITY_SAMPLES).map(|_| g.random_element(&mut rng)));
    for x in seeds.iter().filter(|x| !x.is_identity()) {
        if g.normal_closure(std::slice::from_ref(x))?.order() != order {
            return Err(Error::NotSimple);
        }
    }
    let order = order.to_u128().ok_or_else(|| Error::UnknownOrder(g.order()))?;
    resolve(order, || {
        let elements = g.elements(order as u64)?;
        Ok(elements.iter().any(|x| x.order_u64() == Some(6)))
    })
}

/// Names a simple group given by its multiplication table.
pub fn name_simple_cayley(c: &CayleyGroup) -> Result<SimpleName> {
    let m = c.order();
    if m == 1 || c.is_abelian() {
        return Err(Error::NotSimple);
    }
    // Exact: every conjugacy class must generate the whole group.
    let mut seen = vec![false; m];
    for x in 1..m {
        if seen[x] {
            continue;
        }
        let class: Vec<usize> = (0..m).map(|g| c.conj(x, g)).collect();
        for &y in &class {
            seen[y] = true;
        }
        if c.generate(&class).order() != m {
            return Err(Error::NotSimple);
        }
    }
    resolve(m as u128, || Ok((0..m).any(|x| c.element_order(x) == 6)))
}

#[derive(Debug, Deserialize)]
struct Table {
    entry: Vec<TableRow>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRow {
    family: String,
    d: Option<u32>,
    d_min: Option<u32>,
    q: Option<u64>,
    q_min: Option<u64>,
    p: Option<u64>,
    e_min: Option<u32>,
    tag: Option<String>,
    formula: String,
    value: Option<u64>,
    source: String,
}

/// A row of the μ table, as matched for one name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuTableEntry {
    pub name: SimpleName,
    pub formula: String,
    pub source: String,
    pub mu: u64,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| toml::from_str(include_str!("../data/mu_table.toml")).expect("bundled mu table parses"))
}

impl TableRow {
    fn matches(&self, name: &SimpleName) -> bool {
        let (family, d, q, tag) = name.table_key();
        if self.family != family {
            return false;
        }
        let pe = q.and_then(prime_power);
        let eq = |want: Option<u64>, have: Option<u64>| want.is_none() || want == have;
        let at_least = |want: Option<u64>, have: Option<u64>| match (want, have) {
            (Some(w), Some(h)) => h >= w,
            (Some(_), None) => false,
            (None, _) => true,
        };
        eq(self.d.map(u64::from), d.map(u64::from))
            && at_least(self.d_min.map(u64::from), d.map(u64::from))
            && eq(self.q, q)
            && at_least(self.q_min, q)
            && eq(self.p, pe.map(|x| x.0))
            && at_least(self.e_min.map(u64::from), pe.map(|x| u64::from(x.1)))
            && (self.tag.is_none() || self.tag.as_deref() == tag)
    }

    fn evaluate(&self, name: &SimpleName) -> Option<u128> {
        let (_, d, q, _) = name.table_key();
        let q128 = q.map(u128::from);
        let qpow = |k: u32| q.and_then(|q| pow(q, k));
        let over_q1 = |num: u128| num.checked_div(q128? - 1);
        match self.formula.as_str() {
            "degree" => d.map(u128::from),
            "constant" => self.value.map(u128::from),
            "projective-line" => q128.map(|q| q + 1),
            "projective-space" => over_q1(qpow(d?)? - 1),
            "omega-plus-3" => {
                let m = d? / 2;
                pow(3, m - 1)?.checked_mul(pow(3, m)? - 1).map(|x| x / 2)
            }
            "omega-plus-8" => over_q1((qpow(4)? - 1).checked_mul(qpow(3)? + 1)?),
            "g2" => over_q1(qpow(6)? - 1),
            "f4" => over_q1((qpow(12)? - 1).checked_mul(qpow(4)? + 1)?),
            "e6" => over_q1((qpow(9)? - 1).checked_mul(qpow(8)? + qpow(4)? + 1)?),
            _ => None,
        }
    }
}

/// The μ table row that applies to `name`.
pub fn mu_table_entry(name: &SimpleName) -> Result<MuTableEntry> {
    let row = table()
        .entry
        .iter()
        .find(|r| r.matches(name))
        .ok_or_else(|| Error::Unsupported(format!("no verified minimal degree for {name}")))?;
    let mu = row
        .evaluate(name)
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::Unsupported(format!("minimal degree of {name} does not fit in 64 bits")))?;
    Ok(MuTableEntry {
        name: name.clone(),
        formula: row.formula.clone(),
        source: row.source.clone(),
        mu,
    })
}

/// μ(S) for a supported simple group.
pub fn mu_simple(name: &SimpleName) -> Result<u64> {
    Ok(mu_table_entry(name)?.mu)
}

use std::fmt;

use crate::error::{Error, Result};

/// Field element: the coefficient vector (constant term first) read as a
/// base-p integer.
pub type Fe = u32;

pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// F_q with q = p^e. The modulus is the least monic irreducible polynomial of
/// degree e, ordering polynomials by their base-p encoding.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    /// Coefficients of the modulus below the leading 1, constant term first.
    modulus: Vec<u32>,
    exp: Vec<Fe>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.e)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Polynomials over F_p as coefficient vectors, constant term first.
fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let inv_lead = mod_inv(b[db], p);
    while a.len() > db {
        let lead = *a.last().unwrap();
        if lead != 0 {
            let f = lead * inv_lead % p;
            let shift = a.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p * p - f * c % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero mod prime")
}

fn digits(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f.to_vec(), &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameters(format!("{p} is not prime")));
        }
        if e == 0 || (p as u64).pow(e) > MAX_FIELD_SIZE as u64 {
            return Err(Error::InvalidParameters(format!(
                "field of size {p}^{e} is not supported"
            )));
        }
        let q = p.pow(e);
        let modulus = (0..q)
            .map(|low| digits(low, p, e as usize))
            .find(|low| {
                let mut f = low.clone();
                f.push(1);
                irreducible(&f, p)
            })
            .expect("an irreducible polynomial exists in every degree");
        let mut field = Field {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// Multiplication without tables, used once to find a primitive element.
    fn slow_mul(&self, a: Fe, b: Fe) -> Fe {
        let (p, e) = (self.p, self.e as usize);
        let (x, y) = (digits(a, p, e), digits(b, p, e));
        let mut prod = vec![0u32; 2 * e];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        let mut m = self.modulus.clone();
        m.push(1);
        let r = poly_rem(prod, &m, p);
        r.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let order = q - 1;
        let generator = (1..q)
            .find(|&g| {
                let mut x = g;
                let mut k = 1;
                while x != 1 {
                    x = self.slow_mul(x, g);
                    k += 1;
                }
                k == order
            })
            .unwrap();
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1;
        for k in 0..order {
            exp.push(x);
            log[x as usize] = k;
            x = self.slow_mul(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Monic modulus coefficients, constant term first.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn primitive(&self) -> Fe {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.q
    }

    pub fn units(&self) -> impl Iterator<Item = Fe> {
        1..self.q
    }

    /// The element with the given coefficients, constant term first.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameters(format!(
                "bad coefficients {coeffs:?} for {self:?}"
            )));
        }
        Ok(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        digits(x, self.p, self.e as usize)
    }

    /// The integer n reduced into the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.p as i64) as Fe
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return a ^ b;
        }
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % order) as usize]
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a == 0 {
            return Err(Error::Singular);
        }
        let order = self.q - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: Fe, k: u64) -> Fe {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (k % order)) % order) as usize]
    }

    /// x^(p^t).
    pub fn frobenius(&self, x: Fe, t: u32) -> Fe {
        self.pow(x, (self.p as u64).pow(t % self.e))
    }

    pub fn is_square(&self, a: Fe) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize].is_multiple_of(2)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> u32 {
        let order = self.q - 1;
        let l = self.log[a as usize];
        order / gcd(order, l)
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

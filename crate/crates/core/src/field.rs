//! Arithmetic in GF(p^n) with elements stored as coefficient vectors.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    p: u64,
    n: u32,
    /// Monic modulus, lowest degree first, length `n + 1`.
    modulus: Vec<u64>,
}

/// Polynomial of degree `< n` over GF(p), lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

/// `(p, n)` with `q = p^n`, or `None` if `q` is not a prime power.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|k| q % k == 0)?;
    let (mut rest, mut n) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, n))
}

/// Base-`p` digits of `index`, lowest first, padded to `len`.
fn digits(mut index: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let c = index % p;
            index /= p;
            c
        })
        .collect()
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let deg = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > deg {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - deg;
            for (k, &mk) in m[..deg].iter().enumerate() {
                r[shift + k] = (r[shift + k] + (p - lead) * mk) % p;
            }
        }
    }
    r.resize(deg, 0);
    r
}

fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    (1..=n / 2).all(|k| {
        (0..p.pow(k as u32)).all(|idx| {
            let mut div = digits(idx, p, k);
            div.push(1);
            poly_rem(m, &div, p).iter().any(|&c| c != 0)
        })
    })
}

impl Field {
    /// GF(q) with the smallest monic irreducible modulus, ordering candidates
    /// by the integer `Σ c_k p^k` of their lower coefficients.
    pub fn new(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower { q })?;
        let modulus = (0..p.pow(n))
            .map(|idx| {
                let mut m = digits(idx, p, n as usize);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial exists in every degree");
        Ok(Self { p, n, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// Element whose coefficients are the base-`p` digits of `index`;
    /// this numbers the elements `0..q`, with 0 and 1 the additive and
    /// multiplicative identities.
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(index < self.order(), "index {index} outside GF({})", self.order());
        FieldElement { coeffs: digits(index, self.p, self.n as usize) }
    }

    pub fn index_of(&self, a: &FieldElement) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|k| self.element(k))
    }

    fn check(&self, a: &FieldElement) {
        assert!(
            a.coeffs.len() == self.n as usize && a.coeffs.iter().all(|&c| c < self.p),
            "element {a:?} does not belong to GF({})",
            self.order()
        );
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        FieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % self.p).collect() }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.check(a);
        FieldElement { coeffs: a.coeffs.iter().map(|x| (self.p - x) % self.p).collect() }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let n = self.n as usize;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        FieldElement { coeffs: poly_rem(&prod, &self.modulus, self.p) }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let (mut base, mut acc) = (a.clone(), self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `a^(q−2)`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a);
        if a.coeffs.iter().all(|&c| c == 0) {
            return Err(Error::DivisionByZero { q: self.order() });
        }
        Ok(self.pow(a, self.order() - 2))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .modulus
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                let coef = if c == 1 && k > 0 { String::new() } else { c.to_string() };
                match k {
                    0 => coef,
                    1 => format!("{coef}x"),
                    _ => format!("{coef}x^{k}"),
                }
            })
            .collect();
        write!(f, "GF({}) mod {}", self.order(), terms.join(" + "))
    }
}

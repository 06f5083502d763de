//! Small finite fields `F_q`, `q = p^f`, with full operation tables.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`,
//! the coefficients of a polynomial modulo the defining polynomial.

use crate::error::{Error, Result};

pub type Fq = u16;

/// Largest field order supported (operation tables are `q^2`).
pub const MAX_ORDER: usize = 1024;

#[derive(Clone, Debug)]
pub struct FqField {
    p: usize,
    f: usize,
    q: usize,
    /// Monic defining polynomial, coefficients from degree 0 to `f`.
    modulus: Vec<usize>,
    mu: Fq,
    add: Vec<Fq>,
    mul: Vec<Fq>,
    neg: Vec<Fq>,
    inv: Vec<Fq>,
    frob: Vec<Fq>,
}

fn digits(mut x: usize, p: usize, f: usize) -> Vec<usize> {
    (0..f)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], p: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`.
fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
            }
        }
    }
    r
}

fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn is_irreducible(m: &[usize], p: usize) -> bool {
    let f = m.len() - 1;
    // Trial division by every monic polynomial of degree 1..=f/2.
    for d in 1..=f / 2 {
        for low in 0..p.pow(d as u32) {
            let mut div = digits(low, p, d);
            div.push(1);
            if poly_rem(m, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut f = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        f += 1;
    }
    (m == 1).then_some((p, f))
}

impl FqField {
    /// The field of order `q`. The defining polynomial is the monic
    /// irreducible of degree `f` whose lower coefficients, read as a base-`p`
    /// integer, are smallest; `mu` is the smallest primitive element.
    pub fn new(q: usize) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
        if q > MAX_ORDER {
            return Err(Error::InvalidParameters(format!("field order {q} exceeds {MAX_ORDER}")));
        }
        let modulus = (0..p.pow(f as u32))
            .map(|low| {
                let mut m = digits(low, p, f);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("irreducible polynomials exist in every degree");
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, p, f);
            for b in 0..q {
                let db = digits(b, p, f);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as Fq;
                let mut prod = poly_rem(&poly_mul(&da, &db, p), &modulus, p);
                prod.resize(f, 0);
                mul[a * q + b] = undigits(&prod, p) as Fq;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Fq)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as Fq
                }
            })
            .collect();
        let mut field = Self {
            p,
            f,
            q,
            modulus,
            mu: 0,
            add,
            mul,
            neg,
            inv,
            frob: Vec::new(),
        };
        field.frob = (0..q as Fq).map(|a| field.pow(a, p as u64)).collect();
        field.mu = (1..q as Fq).find(|&a| field.multiplicative_order(a) == q - 1).unwrap();
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    /// Fixed generator of the multiplicative group.
    pub fn primitive(&self) -> Fq {
        self.mu
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q as Fq
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    /// `a^p`.
    #[inline]
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.frob[a as usize]
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut r: Fq = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    pub fn multiplicative_order(&self, a: Fq) -> usize {
        assert!(a != 0);
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Embeds an integer via the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.p as i64) as Fq
    }

    pub fn is_square(&self, a: Fq) -> bool {
        a == 0 || self.p == 2 || self.pow(a, (self.q as u64 - 1) / 2) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FqField::new(6).is_err());
        assert!(FqField::new(1).is_err());
        assert!(FqField::new(2048).is_err());
    }

    #[test]
    fn moduli_are_smallest_irreducibles() {
        assert_eq!(FqField::new(9).unwrap().modulus(), &[1, 0, 1]); // x^2 + 1
        assert_eq!(FqField::new(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FqField::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FqField::new(27).unwrap().modulus(), &[1, 2, 0, 1]);
    }

    #[test]
    fn primitive_element_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 13, 16, 25, 27, 81, 125] {
            let k = FqField::new(q).unwrap();
            assert_eq!(k.multiplicative_order(k.primitive()), q - 1, "q={q}");
        }
    }

    #[test]
    fn frobenius_has_order_f() {
        for q in [9, 25, 27, 64, 81] {
            let k = FqField::new(q).unwrap();
            for a in k.elements() {
                let mut x = a;
                for _ in 0..k.degree() {
                    x = k.frobenius(x);
                }
                assert_eq!(x, a);
            }
            // Fixed points of the Frobenius are exactly the prime field.
            let fixed = k.elements().filter(|&a| k.frobenius(a) == a).count();
            assert_eq!(fixed, k.characteristic());
        }
    }

    #[test]
    fn squares_are_half() {
        for q in [5, 9, 27] {
            let k = FqField::new(q).unwrap();
            let squares = k.elements().filter(|&a| a != 0 && k.is_square(a)).count();
            assert_eq!(squares, (q - 1) / 2);
        }
    }

    proptest! {
        #[test]
        fn field_axioms(qi in 0usize..6, a in 0u16..1024, b in 0u16..1024, c in 0u16..1024) {
            let q = [4, 8, 9, 25, 27, 49][qi];
            let k = FqField::new(q).unwrap();
            let (a, b, c) = (a % q as u16, b % q as u16, c % q as u16);
            prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
            prop_assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
            prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
            prop_assert_eq!(k.mul(a, b), k.mul(b, a));
            prop_assert_eq!(k.sub(k.add(a, b), b), a);
            if a != 0 {
                prop_assert_eq!(k.mul(a, k.inv(a)), 1);
            }
            prop_assert_eq!(k.frobenius(k.mul(a, b)), k.mul(k.frobenius(a), k.frobenius(b)));
            prop_assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
        }
    }
}

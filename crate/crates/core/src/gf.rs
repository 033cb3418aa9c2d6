//! Arithmetic in GF(q) for prime powers q ≤ 64.
//!
//! An element of GF(p^h) is stored as the integer Σ aᵢ pⁱ, where Σ aᵢ αⁱ is
//! its expansion in the polynomial basis of a root α of the field's defining
//! polynomial. Addition works digit-wise modulo p; multiplication goes
//! through log/antilog tables built once per field.

use crate::error::{Error, Result};

/// A field element. Always in `[0, q)` for the field it belongs to.
pub type Elem = u8;

/// Largest supported field order.
pub const MAX_Q: u32 = 64;

/// (q, p, h, encoded polynomial) for every prime power q ≤ 64 with h > 1.
/// The polynomial encoding drops the leading 1 and reads the remaining
/// coefficients as base-p digits, lowest degree first.
const EXTENSION_POLYS: &[(u8, u8, u8, u32)] = &[
    (4, 2, 2, 3),   // x^2 + x + 1
    (8, 2, 3, 3),   // x^3 + x + 1
    (9, 3, 2, 8),   // x^2 + 2x + 2
    (16, 2, 4, 3),  // x^4 + x + 1
    (25, 5, 2, 22), // x^2 + 4x + 2
    (27, 3, 3, 7),  // x^3 + 2x + 1
    (32, 2, 5, 5),  // x^5 + x^2 + 1
    (49, 7, 2, 45), // x^2 + 6x + 3
    (64, 2, 6, 27), // x^6 + x^4 + x^3 + x + 1
];

/// Splits `q` into `(p, h)` with `q = p^h`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut h = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        h += 1;
    }
    (rest == 1).then_some((p, h))
}

/// Immutable description of GF(q) together with its arithmetic tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u8,
    h: u8,
    q: u8,
    poly: u32,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    /// exp[i] = g^i for i in [0, 2(q-1)), so products of logs need no reduction.
    exp: Vec<Elem>,
    log: Vec<u8>,
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("q", &self.q)
            .field("poly", &self.poly)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.poly == other.poly
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// The field of order `q` with the canonical polynomial from the built-in table.
    pub fn new(q: u64) -> Result<Self> {
        let (p, h) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_Q as u64 {
            return Err(Error::Unsupported(q));
        }
        let poly = if h == 1 {
            0
        } else {
            EXTENSION_POLYS
                .iter()
                .find(|e| e.0 as u64 == q)
                .map(|e| e.3)
                .expect("table covers every extension field up to 64")
        };
        debug_assert!(p <= 61);
        Self::build(p as u8, h as u8, poly)
    }

    /// The field of order `q` defined by an explicit polynomial (as named in
    /// a file header). Fails if the polynomial is not irreducible.
    pub fn with_poly(q: u64, poly: u32) -> Result<Self> {
        let (p, h) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_Q as u64 {
            return Err(Error::Unsupported(q));
        }
        Self::build(p as u8, h as u8, poly)
    }

    fn build(p: u8, h: u8, poly: u32) -> Result<Self> {
        let q = (p as u32).pow(h as u32);
        let coeffs = poly_coeffs(p, h, poly);
        if poly >= q || !is_irreducible(p, &coeffs) {
            return Err(Error::Reducible { poly, p, degree: h });
        }
        let q8 = q as u8;
        let qs = q as usize;

        let mut add = vec![0; qs * qs];
        let mut neg = vec![0; qs];
        for a in 0..qs {
            for b in 0..qs {
                add[a * qs + b] = digit_op(p, h, a as u32, b as u32, |x, y| (x + y) % p as u32);
            }
            neg[a] = digit_op(p, h, 0, a as u32, |_, y| (p as u32 - y) % p as u32);
        }

        // Schoolbook multiplication mod the polynomial, used only to find a
        // primitive element and fill the log tables.
        let slow_mul = |a: u32, b: u32| -> u32 {
            let x = to_digits(p, h, a);
            let y = to_digits(p, h, b);
            let mut prod = vec![0u32; 2 * h as usize];
            for (i, xi) in x.iter().enumerate() {
                for (j, yj) in y.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + xi * yj) % p as u32;
                }
            }
            // reduce using x^h = -(c_{h-1} x^{h-1} + ... + c_0)
            for deg in (h as usize..prod.len()).rev() {
                let lead = prod[deg];
                if lead == 0 {
                    continue;
                }
                prod[deg] = 0;
                for (i, c) in coeffs.iter().enumerate().take(h as usize) {
                    let idx = deg - h as usize + i;
                    prod[idx] = (prod[idx] + (p as u32 - c % p as u32) * lead) % p as u32;
                }
            }
            from_digits(p, &prod[..h as usize])
        };

        let order = q - 1;
        let primitive = (1..q)
            .find(|&g| {
                let mut x = 1;
                for e in 1..=order {
                    x = slow_mul(x, g);
                    if x == 1 {
                        return e == order;
                    }
                }
                false
            })
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0; 2 * order as usize];
        let mut log = vec![0; qs];
        let mut x = 1;
        for i in 0..order as usize {
            exp[i] = x as Elem;
            exp[i + order as usize] = x as Elem;
            log[x as usize] = i as u8;
            x = slow_mul(x, primitive);
        }
        let mut inv = vec![0; qs];
        for a in 1..qs {
            let l = log[a] as usize;
            inv[a] = exp[(order as usize - l) % order as usize];
        }

        Ok(FieldSpec {
            p,
            h,
            q: q8,
            poly,
            add,
            neg,
            inv,
            exp,
            log,
        })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn h(&self) -> u8 {
        self.h
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Encoded defining polynomial (non-leading coefficients as base-p digits).
    pub fn poly(&self) -> u32 {
        self.poly
    }

    pub fn is_prime_field(&self) -> bool {
        self.h == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    pub fn check(&self, value: u64) -> Result<Elem> {
        if value < self.q as u64 {
            Ok(value as Elem)
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    /// Inverse of a value the caller knows is nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = self.q as u64 - 1;
        let l = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    /// The element α^i, i.e. the i-th polynomial basis vector.
    pub fn basis_element(&self, i: u8) -> Elem {
        assert!(i < self.h);
        (self.p as u32).pow(i as u32) as Elem
    }

    /// True if z² + b z + c has no root in the field.
    pub fn quadratic_is_irreducible(&self, b: Elem, c: Elem) -> bool {
        self.elements()
            .all(|z| self.add(self.add(self.mul(z, z), self.mul(b, z)), c) != 0)
    }
}

fn to_digits(p: u8, h: u8, mut v: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(h as usize);
    for _ in 0..h {
        d.push(v % p as u32);
        v /= p as u32;
    }
    d
}

fn from_digits(p: u8, d: &[u32]) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p as u32 + x)
}

fn digit_op(p: u8, h: u8, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> Elem {
    let x = to_digits(p, h, a);
    let y = to_digits(p, h, b);
    let z: Vec<u32> = x.iter().zip(&y).map(|(&u, &v)| f(u, v)).collect();
    from_digits(p, &z) as Elem
}

/// Full coefficient list (lowest first, including the leading 1) of the
/// monic degree-h polynomial with the given encoding.
fn poly_coeffs(p: u8, h: u8, poly: u32) -> Vec<u32> {
    let mut c = to_digits(p, h, poly);
    c.push(1);
    c
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p); both lowest first.
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - (c * lead) % p)) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(p: u8, coeffs: &[u32]) -> bool {
    let deg = coeffs.len() - 1;
    if deg <= 1 {
        return true;
    }
    let p32 = p as u32;
    for d in 1..=deg / 2 {
        let count = p32.pow(d as u32);
        for enc in 0..count {
            let mut divisor = to_digits(p, d as u8, enc);
            divisor.push(1);
            if poly_rem(p32, coeffs, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// All prime powers q with 2 ≤ q ≤ 64.
pub fn supported_orders() -> impl Iterator<Item = u8> {
    (2..=MAX_Q as u64)
        .filter(|&q| prime_power(q).is_some())
        .map(|q| q as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Multiplication straight from polynomial arithmetic, no tables.
    fn brute_mul(f: &FieldSpec, a: Elem, b: Elem) -> Elem {
        let p = f.p() as u32;
        let h = f.h();
        let m = poly_coeffs(f.p(), h, f.poly());
        let x = to_digits(f.p(), h, a as u32);
        let y = to_digits(f.p(), h, b as u32);
        let mut prod = vec![0u32; 2 * h as usize - 1];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        let r = poly_rem(p, &prod, &m);
        let mut digits = r.clone();
        digits.resize(h as usize, 0);
        from_digits(f.p(), &digits) as Elem
    }

    #[test]
    fn field_new_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!((f2.p(), f2.h(), f2.q()), (2, 1, 2));
        let f4 = FieldSpec::new(4).unwrap();
        assert_eq!((f4.p(), f4.h(), f4.poly()), (2, 2, 3));
        assert_eq!(FieldSpec::new(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(FieldSpec::new(128).unwrap_err(), Error::Unsupported(128));
        assert_eq!(FieldSpec::new(1).unwrap_err(), Error::NotPrimePower(1));
    }

    #[test]
    fn only_irreducible_quadratic_over_gf2() {
        // Among x^2, x^2+1, x^2+x, x^2+x+1 only the last is irreducible.
        let irreducible: Vec<u32> = (0..4)
            .filter(|&enc| is_irreducible(2, &poly_coeffs(2, 2, enc)))
            .collect();
        assert_eq!(irreducible, vec![3]);
        assert!(FieldSpec::with_poly(4, 1).is_err());
    }

    #[test]
    fn arith_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        let f4 = FieldSpec::new(4).unwrap();
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn every_table_polynomial_is_irreducible() {
        for q in supported_orders() {
            FieldSpec::new(q as u64).unwrap();
        }
        assert_eq!(supported_orders().count(), 27);
    }

    #[test]
    fn tables_match_polynomial_arithmetic() {
        for q in supported_orders() {
            let f = FieldSpec::new(q as u64).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), brute_mul(&f, a, b), "q={q} {a}*{b}");
                }
            }
        }
    }

    #[test]
    fn exhaustive_axioms_small_fields() {
        for q in supported_orders().filter(|&q| q <= 16) {
            let f = FieldSpec::new(q as u64).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.pow(a, q as u64), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.inv(f.inv(a).unwrap()).unwrap(), a);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    let p = f.p() as u64;
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(61), Some((61, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(8192), Some((2, 13)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn random_triples_in_large_fields(qi in 0usize..27, a in 0u8..64, b in 0u8..64, c in 0u8..64) {
                let q = supported_orders().nth(qi).unwrap();
                let f = FieldSpec::new(q as u64).unwrap();
                let (a, b, c) = (a % q, b % q, c % q);
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.pow(a, q as u64), a);
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
    }
}

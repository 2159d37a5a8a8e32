//! Table-driven arithmetic in GF(q), q = t², together with the involution
//! x ↦ x^t that fixes the subfield GF(t).
//!
//! Elements are dense indices `0..q`. An index encodes the coefficient
//! vector of a polynomial over GF(p) in base p, lowest degree first, so
//! index `p` is the class of `x` modulo the defining polynomial.

use std::fmt;

use crate::error::{Error, Result};

/// An element of GF(q) as a dense table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Subfield orders this crate supports.
pub const SUPPORTED_T: [u32; 4] = [2, 3, 4, 5];

/// Characteristic, extension degree over the prime field, and defining
/// polynomial (coefficients of x^0..x^{k-1} of the monic reduction rule
/// x^k = -(c_0 + c_1 x + ...)) for each supported t.
struct FieldParams {
    p: u32,
    k: u32,
    /// Monic defining polynomial, low degree first, length k+1.
    poly: &'static [u32],
    display: &'static str,
}

fn params_for(t: u32) -> Option<FieldParams> {
    match t {
        2 => Some(FieldParams {
            p: 2,
            k: 2,
            poly: &[1, 1, 1],
            display: "x^2+x+1 over GF(2)",
        }),
        3 => Some(FieldParams {
            p: 3,
            k: 2,
            poly: &[1, 0, 1],
            display: "x^2+1 over GF(3)",
        }),
        4 => Some(FieldParams {
            p: 2,
            k: 4,
            poly: &[1, 1, 0, 0, 1],
            display: "x^4+x+1 over GF(2)",
        }),
        5 => Some(FieldParams {
            p: 5,
            k: 2,
            poly: &[2, 0, 1],
            display: "x^2+2 over GF(5)",
        }),
        _ => None,
    }
}

/// The field GF(t²) with full operation tables.
///
/// Immutable after construction and `Sync`, so census workers share one
/// instance by reference.
#[derive(Clone)]
pub struct FieldSpec {
    t: u32,
    q: u32,
    p: u32,
    poly: &'static str,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    conj: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("t", &self.t)
            .field("q", &self.q)
            .field("p", &self.p)
            .field("poly", &self.poly)
            .finish()
    }
}

fn to_digits(mut n: u32, p: u32, k: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(k as usize);
    for _ in 0..k {
        d.push(n % p);
        n /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two residues modulo the defining polynomial.
fn poly_mul(a: &[u32], b: &[u32], params: &FieldParams) -> Vec<u32> {
    let (p, k) = (params.p, params.k as usize);
    let mut prod = vec![0u32; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // Reduce from the top: x^k = -(poly[0] + ... + poly[k-1] x^{k-1}).
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &pc) in params.poly[..k].iter().enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + (p - c) * pc % p) % p;
        }
    }
    prod.truncate(k);
    prod
}

/// Builds GF(t²) for a supported subfield order `t`.
pub fn build_field(t: u32) -> Result<FieldSpec> {
    let params = params_for(t).ok_or(Error::UnsupportedSubfield(t))?;
    let q = t * t;
    debug_assert_eq!(params.p.pow(params.k), q);
    let qs = q as usize;

    let digits: Vec<Vec<u32>> = (0..q).map(|n| to_digits(n, params.p, params.k)).collect();
    let mut add = vec![0u8; qs * qs];
    let mut mul = vec![0u8; qs * qs];
    for a in 0..qs {
        for b in 0..qs {
            let s: Vec<u32> = digits[a]
                .iter()
                .zip(&digits[b])
                .map(|(x, y)| (x + y) % params.p)
                .collect();
            add[a * qs + b] = from_digits(&s, params.p) as u8;
            mul[a * qs + b] = from_digits(&poly_mul(&digits[a], &digits[b], &params), params.p) as u8;
        }
    }

    let mut neg = vec![0u8; qs];
    let mut inv = vec![0u8; qs];
    for a in 0..qs {
        neg[a] = (0..qs)
            .find(|&b| add[a * qs + b] == 0)
            .expect("additive group") as u8;
        if a != 0 {
            inv[a] = (0..qs)
                .find(|&b| mul[a * qs + b] == 1)
                .ok_or(Error::Internal(format!(
                    "defining polynomial {} is reducible: {a} has no inverse",
                    params.display
                )))? as u8;
        }
    }

    let mut conj = vec![0u8; qs];
    for (a, c) in conj.iter_mut().enumerate() {
        let mut acc = 1usize;
        for _ in 0..t {
            acc = mul[acc * qs + a] as usize;
        }
        *c = acc as u8;
    }

    let field = FieldSpec {
        t,
        q,
        p: params.p,
        poly: params.display,
        add,
        mul,
        neg,
        inv,
        conj,
    };
    field.self_check()?;
    Ok(field)
}

impl FieldSpec {
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Human-readable defining polynomial, recorded in every report.
    pub fn defining_polynomial(&self) -> &'static str {
        self.poly
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.q as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q as u8).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.q as u8).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.index() * self.size() + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.index() * self.size() + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (!a.is_zero()).then(|| Elem(self.inv[a.index()]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// The involution a ↦ a^t.
    #[inline]
    pub fn conjugate(&self, a: Elem) -> Elem {
        Elem(self.conj[a.index()])
    }

    /// The Hermitian norm a^{t+1} = a · a^t, which lies in GF(t).
    #[inline]
    pub fn norm(&self, a: Elem) -> Elem {
        self.mul(a, self.conjugate(a))
    }

    pub fn pow(&self, a: Elem, mut e: u32) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Whether `a` lies in the subfield GF(t).
    pub fn in_subfield(&self, a: Elem) -> bool {
        self.conjugate(a) == a
    }

    /// Raw access for hot loops that index the tables directly.
    #[inline]
    pub(crate) fn add_table(&self) -> &[u8] {
        &self.add
    }

    #[inline]
    pub(crate) fn mul_table(&self) -> &[u8] {
        &self.mul
    }

    /// Exhaustive check of the field axioms and the conjugation properties.
    fn self_check(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Internal(format!("GF({}) table check failed: {what}", self.q)));
        let els: Vec<Elem> = self.elements().collect();
        for &a in &els {
            if self.add(a, Elem::ZERO) != a || self.mul(a, Elem::ONE) != a {
                return fail("identity");
            }
            if self.conjugate(self.conjugate(a)) != a {
                return fail("conjugation is not an involution");
            }
            for &b in &els {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                if self.conjugate(self.mul(a, b)) != self.mul(self.conjugate(a), self.conjugate(b))
                    || self.conjugate(self.add(a, b)) != self.add(self.conjugate(a), self.conjugate(b))
                {
                    return fail("conjugation is not an automorphism");
                }
                for &c in &els {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("associativity");
                    }
                }
            }
        }
        let fixed = els.iter().filter(|&&a| self.in_subfield(a)).count();
        if fixed != self.t as usize {
            return fail("conjugation fixes the wrong number of elements");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_characteristic() {
        let f = build_field(2).unwrap();
        assert_eq!((f.q(), f.characteristic()), (4, 2));
        let f = build_field(3).unwrap();
        assert_eq!((f.q(), f.characteristic()), (9, 3));
        let f = build_field(4).unwrap();
        assert_eq!((f.q(), f.characteristic()), (16, 2));
        let f = build_field(5).unwrap();
        assert_eq!((f.q(), f.characteristic()), (25, 5));
    }

    #[test]
    fn unsupported_subfield_rejected() {
        for t in [0, 1, 6, 7, 8, 9] {
            assert!(matches!(build_field(t), Err(Error::UnsupportedSubfield(_))));
        }
    }

    // Polynomial oracle over GF(2)[x]/(x^2+x+1): elements are pairs (c0, c1).
    fn gf4_oracle_mul(a: (u8, u8), b: (u8, u8)) -> (u8, u8) {
        // (a0 + a1 x)(b0 + b1 x) = a0b0 + (a0b1 + a1b0) x + a1b1 x^2, x^2 = x + 1
        let c0 = (a.0 & b.0) ^ (a.1 & b.1);
        let c1 = (a.0 & b.1) ^ (a.1 & b.0) ^ (a.1 & b.1);
        (c0, c1)
    }

    #[test]
    fn gf4_matches_polynomial_oracle() {
        let f = build_field(2).unwrap();
        for a in 0..4u8 {
            for b in 0..4u8 {
                let (c0, c1) = gf4_oracle_mul((a & 1, a >> 1), (b & 1, b >> 1));
                assert_eq!(f.mul(Elem(a), Elem(b)), Elem(c0 | (c1 << 1)));
            }
        }
        let omega = Elem(2);
        assert_eq!(f.mul(omega, omega), f.add(omega, Elem::ONE));
    }

    #[test]
    fn conjugation_in_gf4_and_gf9() {
        let f = build_field(2).unwrap();
        let omega = Elem(2);
        assert_eq!(f.conjugate(Elem::ONE), Elem::ONE);
        assert_eq!(f.conjugate(omega), f.mul(omega, omega));
        assert_eq!(f.conjugate(omega), f.add(omega, Elem::ONE));

        let f = build_field(3).unwrap();
        for a in f.elements() {
            assert_eq!(f.conjugate(a), f.pow(a, 3));
            assert_eq!(f.conjugate(f.conjugate(a)), a);
        }
    }

    #[test]
    fn norm_lands_in_subfield() {
        for t in SUPPORTED_T {
            let f = build_field(t).unwrap();
            for a in f.elements() {
                assert!(f.in_subfield(f.norm(a)));
            }
            assert_eq!(f.elements().filter(|&a| f.in_subfield(a)).count(), t as usize);
        }
    }

    #[test]
    fn inverses() {
        for t in SUPPORTED_T {
            let f = build_field(t).unwrap();
            assert_eq!(f.inv(Elem::ZERO), None);
            for a in f.nonzero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            }
        }
    }
}

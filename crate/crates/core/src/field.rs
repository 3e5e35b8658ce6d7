//! Prime fields GF(q) and table-backed extension fields GF(q^k).
//!
//! An [`ExtField`] stores every nonzero element twice: `antilog[i]` is the
//! packed coefficient vector of `α^i`, and `log` maps a packed vector back to
//! its exponent. A packed vector is the integer `Σ c_j q^j` where `c_j` is the
//! coefficient of `x^j` in the polynomial-basis representation modulo the
//! field's modulus. Multiplication is exponent addition; addition goes through
//! the coefficient vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, is_prime, prime_divisors};
use crate::cyclic_poly::Poly;
use crate::error::{Error, Result};

/// Default upper bound on `q^k` for table-backed fields.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 22;

/// The prime field GF(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if q >= 1 << 32 {
            return Err(Error::InvalidParameters(format!(
                "base prime {q} must be below 2^32"
            )));
        }
        Ok(PrimeField { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.q - a % self.q) % self.q
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (!a.is_multiple_of(self.q)).then(|| crate::arith::inv_mod_prime(a % self.q, self.q))
    }
}

/// A nonzero element is stored as its discrete log to the field's generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldElement {
    Zero,
    /// `α^i`, with `i` in `[0, q^k - 2]`.
    Exp(u64),
}

impl FieldElement {
    pub fn is_zero(self) -> bool {
        matches!(self, FieldElement::Zero)
    }
}

/// Serializable description of an extension field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub q: u64,
    pub k: u32,
    /// Monic modulus, low degree first.
    pub modulus: Vec<u64>,
}

/// GF(q^k) with a verified irreducible modulus, a verified generator `α` of
/// the multiplicative group, and complete log/antilog tables.
#[derive(Clone)]
pub struct ExtField {
    base: PrimeField,
    k: u32,
    order: u64,
    modulus: Poly,
    generator: Poly,
    antilog: Vec<u32>,
    log: Vec<u32>,
    traces: Vec<u32>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("q", &self.q())
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.modulus == other.modulus
            && self.generator == other.generator
    }
}

impl ExtField {
    pub fn new(q: u64, k: u32) -> Result<Self> {
        Self::with_cap(q, k, DEFAULT_TABLE_CAP)
    }

    /// Builds GF(q^k). The modulus is the first irreducible monic polynomial
    /// of degree `k` when the lower coefficients are read as a base-`q`
    /// integer; the generator is `x` when that is primitive, otherwise the
    /// first primitive element in packed order.
    pub fn with_cap(q: u64, k: u32, cap: u64) -> Result<Self> {
        let base = PrimeField::new(q)?;
        if k == 0 {
            return Err(Error::InvalidParameters(
                "extension degree must be at least 1".into(),
            ));
        }
        let order = match checked_pow(q, k) {
            Some(o) if o <= cap && o <= u32::MAX as u64 => o,
            other => {
                let order = other
                    .map(u128::from)
                    .unwrap_or_else(|| (q as u128).saturating_pow(k));
                return Err(Error::TableCapExceeded { order, cap });
            }
        };
        let kk = k as usize;

        let modulus = (0..order)
            .map(|tail| Poly::monic_from_index(q, kk, tail))
            .find(|f| f.is_irreducible())
            .ok_or(Error::NoIrreducibleFound { q, k })?;

        let group = order - 1;
        let primes = prime_divisors(group);
        let is_primitive = |e: &Poly| -> bool {
            !e.is_zero()
                && primes.iter().all(|&p| {
                    !e.mod_pow(group / p, &modulus)
                        .expect("modulus is nonzero")
                        .is_one()
                })
        };
        let x_first = (k > 1).then(|| Poly::x(q));
        let generator = x_first
            .into_iter()
            .chain((1..order).map(|v| unpack_poly(q, kk, v)))
            .find(|e| is_primitive(e))
            .ok_or(Error::NoIrreducibleFound { q, k })?;

        let mut antilog = vec![0u32; group as usize];
        let mut log = vec![u32::MAX; order as usize];
        let gen_digits = digits_of(&generator, kk);
        let mod_digits = digits_of(&modulus, kk + 1);
        let mut cur = vec![0u64; kk];
        cur[0] = 1;
        for (i, slot) in antilog.iter_mut().enumerate() {
            let packed = pack(q, &cur);
            assert_eq!(
                log[packed as usize],
                u32::MAX,
                "generator order below q^k - 1"
            );
            *slot = packed as u32;
            log[packed as usize] = i as u32;
            cur = mul_reduce(q, &cur, &gen_digits, &mod_digits);
        }

        let mut field = ExtField {
            base,
            k,
            order,
            modulus,
            generator,
            antilog,
            log,
            traces: Vec::new(),
        };
        field.traces = field.build_trace_table();
        Ok(field)
    }

    /// Trace of every power of `α`, using linearity over the polynomial basis.
    fn build_trace_table(&self) -> Vec<u32> {
        let q = self.q();
        let kk = self.k as usize;
        let basis: Vec<u64> = (0..kk)
            .map(|j| {
                let xj = self.from_packed(checked_pow(q, j as u32).unwrap()).unwrap();
                self.trace(xj).expect("basis element belongs to the field")
            })
            .collect();
        self.antilog
            .iter()
            .map(|&packed| {
                let mut v = packed as u64;
                let mut t = 0;
                for b in &basis {
                    t = (t + (v % q) * b) % q;
                    v /= q;
                }
                t as u32
            })
            .collect()
    }

    pub fn q(&self) -> u64 {
        self.base.q()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    /// Number of elements, `q^k`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Order of the multiplicative group, `q^k - 1`.
    pub fn group_order(&self) -> u64 {
        self.order - 1
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// The generator `α` as a polynomial residue.
    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            q: self.q(),
            k: self.k,
            modulus: self.modulus.coeffs().to_vec(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::Zero
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::Exp(0)
    }

    pub fn alpha(&self) -> FieldElement {
        FieldElement::Exp(1 % self.group_order())
    }

    /// `α^m` for any integer `m`.
    pub fn alpha_pow(&self, m: i64) -> FieldElement {
        FieldElement::Exp(m.rem_euclid(self.group_order() as i64) as u64)
    }

    /// Embeds a base-field value.
    pub fn from_base(&self, c: u64) -> FieldElement {
        self.from_packed(c % self.q())
            .expect("constants are in range")
    }

    /// Element whose coefficient vector packs to `v`.
    pub fn from_packed(&self, v: u64) -> Result<FieldElement> {
        if v >= self.order {
            return Err(Error::FieldMismatch);
        }
        Ok(match v {
            0 => FieldElement::Zero,
            v => FieldElement::Exp(self.log[v as usize] as u64),
        })
    }

    pub fn to_packed(&self, a: FieldElement) -> Result<u64> {
        self.check(a)?;
        Ok(match a {
            FieldElement::Zero => 0,
            FieldElement::Exp(i) => self.antilog[i as usize] as u64,
        })
    }

    pub fn from_poly(&self, p: &Poly) -> Result<FieldElement> {
        if p.q() != self.q() {
            return Err(Error::FieldMismatch);
        }
        let r = p.rem(&self.modulus)?;
        self.from_packed(pack(self.q(), r.coeffs()))
    }

    pub fn to_poly(&self, a: FieldElement) -> Result<Poly> {
        Ok(unpack_poly(self.q(), self.k as usize, self.to_packed(a)?))
    }

    /// The base-field value of `a`, or `None` when `a ∉ GF(q)`.
    pub fn to_base(&self, a: FieldElement) -> Result<Option<u64>> {
        let v = self.to_packed(a)?;
        Ok((v < self.q()).then_some(v))
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        match a {
            FieldElement::Exp(i) if i >= self.group_order() => Err(Error::FieldMismatch),
            _ => Ok(()),
        }
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (FieldElement::Exp(i), FieldElement::Exp(j)) => {
                FieldElement::Exp((i + j) % self.group_order())
            }
            _ => FieldElement::Zero,
        })
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (u, v) = (self.to_packed(a)?, self.to_packed(b)?);
        self.from_packed(self.add_packed(u, v))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        let q = self.q();
        let mut v = self.to_packed(a)?;
        let mut out = 0;
        let mut place = 1;
        while v > 0 {
            out += ((q - v % q) % q) * place;
            v /= q;
            place *= q;
        }
        self.from_packed(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.add(a, self.neg(b)?)
    }

    /// `a^e`; `Zero^0` is one.
    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        self.check(a)?;
        Ok(match a {
            _ if e == 0 => self.one(),
            FieldElement::Zero => FieldElement::Zero,
            FieldElement::Exp(i) => {
                let g = self.group_order();
                FieldElement::Exp(crate::arith::mul_mod(i, e % g, g))
            }
        })
    }

    pub fn inv(&self, a: FieldElement) -> Result<Option<FieldElement>> {
        self.check(a)?;
        Ok(match a {
            FieldElement::Zero => None,
            FieldElement::Exp(i) => Some(FieldElement::Exp(
                (self.group_order() - i) % self.group_order(),
            )),
        })
    }

    /// The exponent `ι` with `α^ι = x`.
    pub fn discrete_log(&self, x: FieldElement) -> Result<u64> {
        self.check(x)?;
        match x {
            FieldElement::Zero => Err(Error::LogOfZero),
            FieldElement::Exp(i) => Ok(i),
        }
    }

    /// `Tr(ξ) = Σ_{j<k} ξ^(q^j)`, evaluated from the definition.
    pub fn trace(&self, xi: FieldElement) -> Result<u64> {
        self.check(xi)?;
        let mut acc = FieldElement::Zero;
        let mut frob = xi;
        for _ in 0..self.k {
            acc = self.add(acc, frob)?;
            frob = self.pow(frob, self.q())?;
        }
        let v = self.to_packed(acc)?;
        assert!(v < self.q(), "trace landed outside the base field");
        Ok(v)
    }

    /// `Tr(α^i)` from the precomputed table.
    #[inline]
    pub fn trace_of_power(&self, i: u64) -> u64 {
        self.traces[(i % self.group_order()) as usize] as u64
    }

    /// `Tr(α^i)` for `i = 0, …, q^k - 2`.
    pub fn trace_table(&self) -> &[u32] {
        &self.traces
    }

    /// All field elements: zero first, then `α^0, α^1, …`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(FieldElement::Zero).chain((0..self.group_order()).map(FieldElement::Exp))
    }

    pub(crate) fn add_packed(&self, u: u64, v: u64) -> u64 {
        let q = self.q();
        if q == 2 {
            return u ^ v;
        }
        let (mut u, mut v) = (u, v);
        let mut out = 0;
        let mut place = 1;
        while u > 0 || v > 0 {
            out += ((u % q + v % q) % q) * place;
            u /= q;
            v /= q;
            place *= q;
        }
        out
    }
}

fn pack(q: u64, digits: &[u64]) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * q + d)
}

fn unpack_poly(q: u64, k: usize, mut v: u64) -> Poly {
    let mut c = Vec::with_capacity(k);
    for _ in 0..k {
        c.push(v % q);
        v /= q;
    }
    Poly::new(q, c)
}

fn digits_of(p: &Poly, len: usize) -> Vec<u64> {
    (0..len).map(|i| p.coeff(i)).collect()
}

/// `a * b mod f` on dense digit vectors; `f` is monic of length `k + 1`.
fn mul_reduce(q: u64, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
    let k = a.len();
    let b_len = b.iter().rposition(|&c| c != 0).map_or(0, |d| d + 1);
    let mut prod = vec![0u64; k + b_len];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b[..b_len].iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % q;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, &fj) in f[..k].iter().enumerate() {
            let idx = top - k + j;
            prod[idx] = (prod[idx] + q - c * fj % q) % q;
        }
        prod[top] = 0;
    }
    prod.truncate(k);
    prod
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_is_trivial() {
        let f = ExtField::new(2, 1).unwrap();
        assert_eq!(f.group_order(), 1);
        assert_eq!(f.to_packed(f.alpha()).unwrap(), 1);
        assert_eq!(f.elements().count(), 2);
    }

    #[test]
    fn gf4_uses_the_only_irreducible_quadratic() {
        // Exhaustive: x^2, x^2+1 = (x+1)^2, x^2+x = x(x+1) are reducible.
        let reducible: Vec<bool> = (0..4)
            .map(|t| Poly::monic_from_index(2, 2, t).is_irreducible())
            .collect();
        assert_eq!(reducible, vec![false, false, false, true]);
        let f = ExtField::new(2, 2).unwrap();
        assert_eq!(f.modulus().coeffs(), &[1, 1, 1]);
        assert_eq!(f.pow(f.alpha(), 3).unwrap(), f.one());
        assert_ne!(f.alpha(), f.one());
        // α + α² = 1 since α² = α + 1.
        assert_eq!(
            f.add(FieldElement::Exp(1), FieldElement::Exp(2)).unwrap(),
            FieldElement::Exp(0)
        );
    }

    #[test]
    fn gf16_tables_round_trip() {
        let f = ExtField::new(2, 4).unwrap();
        assert_eq!(f.modulus().to_string(), "x^4 + x + 1");
        for i in 0..15 {
            let packed = f.to_packed(FieldElement::Exp(i)).unwrap();
            assert_eq!(f.from_packed(packed).unwrap(), FieldElement::Exp(i));
        }
    }

    #[test]
    fn non_primitive_modulus_falls_back_to_scan() {
        // Over GF(3), x^2 + 1 is irreducible but x has order 4, not 8.
        let f = ExtField::new(3, 2).unwrap();
        assert_eq!(f.modulus().coeffs(), &[1, 0, 1]);
        assert_ne!(f.generator(), &Poly::x(3));
        let g = f.generator();
        assert!(!g.mod_pow(4, f.modulus()).unwrap().is_one());
        assert!(g.mod_pow(8, f.modulus()).unwrap().is_one());
    }

    #[test]
    fn multiplication_rules() {
        let f = ExtField::new(2, 4).unwrap();
        assert_eq!(
            f.mul(FieldElement::Zero, FieldElement::Exp(3)).unwrap(),
            FieldElement::Zero
        );
        assert_eq!(
            f.mul(FieldElement::Exp(9), FieldElement::Exp(10)).unwrap(),
            FieldElement::Exp(4)
        );
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let f = ExtField::new(2, 2).unwrap();
        assert_eq!(
            f.mul(FieldElement::Exp(3), f.one()),
            Err(Error::FieldMismatch)
        );
        assert_eq!(f.trace(FieldElement::Exp(7)), Err(Error::FieldMismatch));
        assert_eq!(f.from_poly(&Poly::x(3)), Err(Error::FieldMismatch));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(ExtField::new(4, 2).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            ExtField::new(2, 23),
            Err(Error::TableCapExceeded { .. })
        ));
        assert!(matches!(
            ExtField::with_cap(3, 3, 26),
            Err(Error::TableCapExceeded { .. })
        ));
        assert!(ExtField::with_cap(3, 3, 27).is_ok());
    }

    #[test]
    fn gf4_traces() {
        let f = ExtField::new(2, 2).unwrap();
        assert_eq!(f.trace(FieldElement::Zero).unwrap(), 0);
        assert_eq!(f.trace(f.one()).unwrap(), 0);
        assert_eq!(f.trace(f.alpha()).unwrap(), 1);
    }

    #[test]
    fn discrete_log_round_trip_gf16() {
        let f = ExtField::new(2, 4).unwrap();
        assert_eq!(f.discrete_log(f.one()).unwrap(), 0);
        assert_eq!(f.discrete_log(f.alpha()).unwrap(), 1);
        assert_eq!(f.discrete_log(FieldElement::Zero), Err(Error::LogOfZero));
        for m in 0..40 {
            let x = f.pow(f.alpha(), m).unwrap();
            assert_eq!(f.discrete_log(x).unwrap(), m % 15);
        }
    }

    fn small_fields() -> Vec<ExtField> {
        [
            (2, 1),
            (2, 2),
            (2, 3),
            (2, 4),
            (2, 6),
            (2, 10),
            (3, 1),
            (3, 2),
            (3, 4),
            (3, 6),
            (5, 1),
            (5, 2),
            (5, 4),
            (7, 2),
            (31, 2),
        ]
        .into_iter()
        .map(|(q, k)| ExtField::new(q, k).unwrap())
        .collect()
    }

    #[test]
    fn trace_table_matches_definition() {
        for f in small_fields() {
            for i in 0..f.group_order() {
                assert_eq!(f.trace_of_power(i), f.trace(FieldElement::Exp(i)).unwrap());
            }
        }
    }

    #[test]
    fn trace_is_linear_and_onto() {
        for f in small_fields() {
            let q = f.q();
            let mut hit = vec![false; q as usize];
            let elems: Vec<_> = f.elements().collect();
            for &a in &elems {
                hit[f.trace(a).unwrap() as usize] = true;
            }
            assert!(
                hit.iter().all(|&h| h),
                "trace not onto for q^k = {}",
                f.order()
            );
            if f.order() > 1 << 10 {
                continue;
            }
            for &a in &elems {
                for &b in &elems {
                    let lhs = f.trace(f.add(a, b).unwrap()).unwrap();
                    let rhs = (f.trace(a).unwrap() + f.trace(b).unwrap()) % q;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_trace() {
        for f in small_fields() {
            for a in f.elements() {
                let frob = f.pow(a, f.q()).unwrap();
                assert_eq!(f.trace(frob).unwrap(), f.trace(a).unwrap());
            }
        }
    }

    #[test]
    fn generator_is_primitive() {
        for f in small_fields() {
            let g = f.group_order();
            for d in crate::arith::divisors(g) {
                if d < g {
                    assert_ne!(f.pow(f.alpha(), d).unwrap(), f.one(), "q^k = {}", f.order());
                }
            }
        }
    }

    #[test]
    fn neg_and_sub() {
        for f in small_fields() {
            for a in f.elements().take(50) {
                assert_eq!(f.add(a, f.neg(a).unwrap()).unwrap(), FieldElement::Zero);
                assert_eq!(f.sub(a, a).unwrap(), FieldElement::Zero);
            }
        }
    }

    #[test]
    fn descriptor_json() {
        let f = ExtField::new(2, 4).unwrap();
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        assert_eq!(json, r#"{"q":2,"k":4,"modulus":[1,1,0,0,1]}"#);
    }
}

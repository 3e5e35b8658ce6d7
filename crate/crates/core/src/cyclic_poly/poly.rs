use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::inv_mod_prime;
use crate::error::{Error, Result};

/// Polynomial over the prime field GF(q), coefficients low degree first.
///
/// Always normalized: no trailing zero coefficients, so the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    q: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(q: u64, coeffs: impl Into<Vec<u64>>) -> Self {
        let mut coeffs = coeffs.into();
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        let mut p = Poly { q, coeffs };
        p.trim();
        p
    }

    /// Builds from signed coefficients, reducing each into `[0, q)`.
    pub fn from_signed(q: u64, coeffs: &[i64]) -> Self {
        let qi = q as i64;
        Poly::new(
            q,
            coeffs
                .iter()
                .map(|&c| c.rem_euclid(qi) as u64)
                .collect::<Vec<_>>(),
        )
    }

    pub fn zero(q: u64) -> Self {
        Poly {
            q,
            coeffs: Vec::new(),
        }
    }

    pub fn one(q: u64) -> Self {
        Poly::new(q, vec![1])
    }

    /// The indeterminate `x`.
    pub fn x(q: u64) -> Self {
        Poly::monomial(q, 1, 1)
    }

    pub fn monomial(q: u64, degree: usize, coeff: u64) -> Self {
        let mut c = vec![0; degree + 1];
        c[degree] = coeff;
        Poly::new(q, c)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(q: u64, n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[n] = 1;
        c[0] = (c[0] + q - 1) % q;
        Poly::new(q, c)
    }

    /// Monic polynomial of degree `k` whose lower coefficients are the
    /// base-`q` digits of `tail` (digit `i` is the coefficient of `x^i`).
    pub fn monic_from_index(q: u64, k: usize, mut tail: u64) -> Self {
        let mut c = Vec::with_capacity(k + 1);
        for _ in 0..k {
            c.push(tail % q);
            tail /= q;
        }
        c.push(1);
        Poly::new(q, c)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(inv_mod_prime(self.leading(), self.q))
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.q;
        Poly::new(
            self.q,
            self.coeffs
                .iter()
                .map(|&a| a * c % self.q)
                .collect::<Vec<_>>(),
        )
    }

    /// Evaluates at a point of GF(q).
    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.q;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (acc * x + c) % self.q)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn check_same_field(&self, other: &Poly) {
        assert_eq!(self.q, other.q, "polynomials over different fields");
    }

    /// Quotient and remainder with `self = quot * divisor + rem`,
    /// `deg rem < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_field(divisor);
        let dd = divisor.degree().ok_or(Error::DivideByZeroPoly)?;
        let q = self.q;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(q), Poly::zero(q)));
        };
        if nd < dd {
            return Ok((Poly::zero(q), self.clone()));
        }
        let inv_lead = inv_mod_prime(divisor.leading(), q);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd] * inv_lead % q;
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + q - c * d % q) % q;
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(q, quot), Poly::new(q, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact division; errors when `divisor` leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (quot, rem) = self.divmod(divisor)?;
        if !rem.is_zero() {
            return Err(Error::InvalidParameters(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(quot)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn mod_pow(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.q).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// `self^e mod modulus` for exponents beyond 64 bits.
    pub fn mod_pow_big(&self, e: &BigUint, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(self.q).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(modulus)?;
            if e.bit(i) {
                acc = (&acc * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check_same_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Ben-Or irreducibility test: `f` of degree `m` is irreducible iff
    /// `gcd(f, x^(q^i) - x) = 1` for every `1 <= i <= m/2`.
    pub fn is_irreducible(&self) -> bool {
        let Some(m) = self.degree() else {
            return false;
        };
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let x = Poly::x(self.q);
        let mut h = x.clone();
        for _ in 1..=m / 2 {
            h = h.mod_pow(self.q, self).expect("modulus is nonzero");
            if !self.gcd(&(&h - &x)).is_one() {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[GF({})]({})", self.q, self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_same_field(rhs);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let c: Vec<u64> = (0..len)
            .map(|i| (self.coeff(i) + rhs.coeff(i)) % self.q)
            .collect();
        Poly::new(self.q, c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let q = self.q;
        Poly::new(
            q,
            self.coeffs.iter().map(|&c| (q - c) % q).collect::<Vec<_>>(),
        )
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.q);
        }
        let q = self.q;
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % q;
            }
        }
        Poly::new(q, out)
    }
}

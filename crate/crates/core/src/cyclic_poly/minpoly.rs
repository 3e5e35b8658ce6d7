//! Minimal polynomials from cyclotomic cosets and the factorization of
//! `x^n - 1` over GF(q).
//!
//! For `β` of order `n` in an extension of GF(q), the minimal polynomial of
//! `β^s` is `M_s(X) = ∏_{η ∈ C_s} (X - β^η)` and `x^n - 1 = ∏_s M_s(X)` over
//! a set of coset leaders `s`. When the splitting field fits under the table
//! cap the product is expanded with [`ExtField`] arithmetic. Larger splitting
//! fields (`n` up to a few hundred can need degree ~200) are handled in a
//! polynomial-basis representation, where each `M_s` is found as the linear
//! dependency among `1, β^s, β^{2s}, …`.

use num_bigint::BigUint;

use super::linalg::solve_columns;
use super::Poly;
use crate::arith::{gcd, is_prime, prime_divisors};
use crate::cosets::{coset_leaders, multiplicative_order, CosetPartition};
use crate::error::{Error, Result};
use crate::field::{ExtField, FieldElement};

/// Largest splitting field `factor_xn_minus_1` builds log tables for.
pub const FACTOR_TABLE_CAP: u64 = 1 << 16;

/// `M_s(X) = ∏_{η ∈ C_s} (X - β^η)` where `β = α^((q^k - 1)/N)` has order
/// `N = partition.modulus` in `field`.
pub fn minimal_polynomial(s: u64, partition: &CosetPartition, field: &ExtField) -> Result<Poly> {
    let q = field.q();
    let n = partition.modulus;
    if partition.p % n != q % n {
        return Err(Error::InvalidParameters(format!(
            "cosets under {} cannot give minimal polynomials over GF({q})",
            partition.p
        )));
    }
    let group = field.group_order();
    if !group.is_multiple_of(n) {
        return Err(Error::OrderMismatch { q, k: field.k(), n });
    }
    let coset = partition
        .coset_of(s)
        .ok_or_else(|| Error::InvalidParameters(format!("{s} is not in the partition")))?;
    let step = group / n;

    // Coefficients low degree first, in the extension field.
    let mut coeffs = vec![field.one()];
    let mut eta = coset.leader;
    for _ in 0..coset.size {
        let root = FieldElement::Exp(eta * step % group);
        let neg_root = field.neg(root)?;
        let mut next = vec![FieldElement::Zero; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c)?;
            next[i] = field.add(next[i], field.mul(c, neg_root)?)?;
        }
        coeffs = next;
        eta = eta * q % n;
    }
    let base: Vec<u64> = coeffs
        .into_iter()
        .map(|c| field.to_base(c)?.ok_or(Error::NotInBaseField))
        .collect::<Result<_>>()?;
    let m = Poly::new(q, base);
    assert_eq!(m.degree(), Some(coset.size as usize));
    assert!(
        m.is_monic() && m.is_irreducible(),
        "{m} is not a minimal polynomial"
    );
    Ok(m)
}

/// Irreducible factors of `x^n - 1` over GF(q), one per `q`-cyclotomic coset
/// mod `n`, ordered by coset leader.
pub fn factor_xn_minus_1(n: u64, q: u64) -> Result<Vec<Poly>> {
    factor_xn_minus_1_with_cap(n, q, FACTOR_TABLE_CAP)
}

/// As [`factor_xn_minus_1`], using log tables only when `q^m <= table_cap`
/// (`m = ord_n(q)`).
pub fn factor_xn_minus_1_with_cap(n: u64, q: u64, table_cap: u64) -> Result<Vec<Poly>> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if n == 0 {
        return Err(Error::InvalidParameters(
            "x^0 - 1 is the zero polynomial".into(),
        ));
    }
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime(n, q));
    }
    let partition = coset_leaders(n, q)?;
    let m = multiplicative_order(q, n)? as u32;
    let fits = q.checked_pow(m).is_some_and(|order| order <= table_cap);
    if fits {
        let field = ExtField::with_cap(q, m, table_cap)?;
        partition
            .cosets
            .iter()
            .map(|c| minimal_polynomial(c.leader, &partition, &field))
            .collect()
    } else {
        let field = SplittingField::new(q, m)?;
        let beta = field.element_of_order(n)?;
        partition
            .cosets
            .iter()
            .map(|c| field.minimal_polynomial(&field.pow(&beta, c.leader), c.size as usize))
            .collect()
    }
}

/// GF(q^m) as `GF(q)[y] / (f)` without tables, for degrees beyond the cap.
#[derive(Debug, Clone)]
pub struct SplittingField {
    q: u64,
    m: u32,
    modulus: Poly,
}

impl SplittingField {
    /// Uses the first irreducible monic polynomial of degree `m` in the same
    /// scan order as [`ExtField`].
    pub fn new(q: u64, m: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let modulus = (0u64..)
            .map(|tail| Poly::monic_from_index(q, m as usize, tail))
            .find(Poly::is_irreducible)
            .ok_or(Error::NoIrreducibleFound { q, k: m })?;
        Ok(SplittingField { q, m, modulus })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    fn group_order(&self) -> BigUint {
        BigUint::from(self.q).pow(self.m) - 1u32
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        (a * b).rem(&self.modulus).expect("modulus is nonzero")
    }

    pub fn pow(&self, a: &Poly, e: u64) -> Poly {
        a.mod_pow(e, &self.modulus).expect("modulus is nonzero")
    }

    /// First element in packed order (`1, 2, …, y, y+1, …`) whose
    /// `(q^m - 1)/n`-th power has order exactly `n`.
    pub fn element_of_order(&self, n: u64) -> Result<Poly> {
        let group = self.group_order();
        if &group % n != BigUint::from(0u32) {
            return Err(Error::OrderMismatch {
                q: self.q,
                k: self.m,
                n,
            });
        }
        let cofactor = &group / n;
        let primes = prime_divisors(n);
        for v in 1u64.. {
            let g = poly_from_packed(self.q, v);
            let h = g.mod_pow_big(&cofactor, &self.modulus)?;
            if primes.iter().all(|&p| !self.pow(&h, n / p).is_one()) {
                return Ok(h);
            }
            if v > 1 << 20 {
                break;
            }
        }
        Err(Error::OrderMismatch {
            q: self.q,
            k: self.m,
            n,
        })
    }

    /// Minimal polynomial of `r`, known to have degree `degree`.
    pub fn minimal_polynomial(&self, r: &Poly, degree: usize) -> Result<Poly> {
        let m = self.m as usize;
        let vector = |p: &Poly| (0..m).map(|i| p.coeff(i)).collect::<Vec<u64>>();
        let mut powers = Vec::with_capacity(degree + 1);
        let mut cur = Poly::one(self.q);
        for _ in 0..=degree {
            powers.push(vector(&cur));
            cur = self.mul(&cur, r);
        }
        let top = powers.pop().expect("degree + 1 powers");
        let neg_top: Vec<u64> = top.iter().map(|&c| (self.q - c) % self.q).collect();
        let lower = solve_columns(&powers, &neg_top, self.q).ok_or(Error::NotInBaseField)?;
        let mut coeffs = lower;
        coeffs.push(1);
        let p = Poly::new(self.q, coeffs);
        assert!(p.is_irreducible(), "{p} is not a minimal polynomial");
        Ok(p)
    }
}

fn poly_from_packed(q: u64, mut v: u64) -> Poly {
    let mut c = Vec::new();
    while v > 0 {
        c.push(v % q);
        v /= q;
    }
    Poly::new(q, c)
}

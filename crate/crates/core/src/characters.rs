//! Additive and multiplicative characters of GF(q^k) and Gauss sums.
//!
//! Every character value is a root of unity whose angle is an exact rational
//! multiple of 2π. Angles are reduced as integers before any `sin_cos` call,
//! so no phase error accumulates with the exponent.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::cyclic_poly::CodeSpec;
use crate::error::{Error, Result};
use crate::field::{ExtField, FieldElement};

pub type ComplexVal = Complex64;

/// Values smaller than this are treated as zero when extracting a phase.
const ZERO_TOLERANCE: f64 = 1e-9;

/// `e^(2πi · num/den)` with `num` already reduced modulo `den`.
#[inline]
fn root_of_unity(num: u128, den: u128) -> Complex64 {
    let (s, c) = (TAU * (num as f64 / den as f64)).sin_cos();
    Complex64::new(c, s)
}

/// A Gauss sum `G = |G| e^(iγ)` with `γ ∈ (-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussSumValue {
    pub re: f64,
    pub im: f64,
    pub gamma: f64,
    pub magnitude: f64,
}

impl GaussSumValue {
    pub fn from_value(value: Complex64) -> Result<Self> {
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::UndefinedPhase);
        }
        let magnitude = value.norm();
        if magnitude < ZERO_TOLERANCE {
            return Err(Error::UndefinedPhase);
        }
        // Snap summation noise so real values get γ = 0 or π exactly.
        let mut v = value;
        if v.im.abs() <= 1e-12 * magnitude {
            v.im = 0.0;
        }
        if v.re.abs() <= 1e-12 * magnitude {
            v.re = 0.0;
        }
        let mut gamma = v.im.atan2(v.re);
        if gamma <= -PI {
            gamma = PI;
        }
        Ok(GaussSumValue {
            re: v.re,
            im: v.im,
            gamma,
            magnitude,
        })
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// `e_β(a) = e^(2πi Tr(βa)/q)`.
pub fn additive_character(
    beta: FieldElement,
    a: FieldElement,
    field: &ExtField,
) -> Result<ComplexVal> {
    let t = field.trace(field.mul(beta, a)?)?;
    Ok(root_of_unity(t as u128, field.q() as u128))
}

/// `χ_j(α^m) = e^(2πi jm/(q^k - 1))`.
pub fn multiplicative_character(j: u64, x: FieldElement, field: &ExtField) -> Result<ComplexVal> {
    let m = match field.discrete_log(x) {
        Err(Error::LogOfZero) => return Err(Error::CharacterOfZero),
        other => other?,
    };
    let g = field.group_order() as u128;
    Ok(root_of_unity(j as u128 % g * m as u128 % g, g))
}

/// `G(χ_j, e_β) = Σ_{x ∈ F*} χ_j(x) e_β(x)`, summed term by term in
/// exponent order.
pub fn gauss_sum(j: u64, beta: FieldElement, field: &ExtField) -> Result<GaussSumValue> {
    GaussSums::new(field).sum(j, beta)
}

/// Root-of-unity tables for many Gauss sums over one field: each term is
/// `χ_j(α^m)·e_β(α^m)`, a product of two table entries.
#[derive(Debug, Clone)]
pub struct GaussSums<'a> {
    field: &'a ExtField,
    /// `e^(2πi r/(q^k - 1))`.
    chi: Vec<Complex64>,
    /// `e^(2πi t/q)`.
    psi: Vec<Complex64>,
}

impl<'a> GaussSums<'a> {
    pub fn new(field: &'a ExtField) -> Self {
        let g = field.group_order() as u128;
        let q = field.q() as u128;
        GaussSums {
            field,
            chi: (0..g).map(|r| root_of_unity(r, g)).collect(),
            psi: (0..q).map(|t| root_of_unity(t, q)).collect(),
        }
    }

    pub fn sum(&self, j: u64, beta: FieldElement) -> Result<GaussSumValue> {
        GaussSumValue::from_value(self.terms(j, beta)?.sum())
    }

    /// The summands, indexed by discrete log.
    pub fn terms(
        &self,
        j: u64,
        beta: FieldElement,
    ) -> Result<impl Iterator<Item = Complex64> + '_> {
        let field = self.field;
        let beta_log = match beta {
            FieldElement::Zero => None,
            b => Some(field.discrete_log(b)?),
        };
        let g = field.group_order();
        let j = j % g;
        let traces = field.trace_table();
        // r = j·m and i = b + m, both mod q^k - 1, stepped incrementally.
        let step = move |x: &mut u64, by: u64| {
            *x += by;
            if *x >= g {
                *x -= g;
            }
        };
        Ok(
            (0..g).scan((0u64, beta_log.unwrap_or(0)), move |(r, i), _| {
                let t = if beta_log.is_some() {
                    traces[*i as usize]
                } else {
                    0
                };
                let term = self.chi[*r as usize] * self.psi[t as usize];
                step(r, j);
                step(i, 1);
                Some(term)
            }),
        )
    }
}

/// `d = gcd(N, (q^k - 1)/(q - 1))`, the order of the character in the
/// weight formula.
pub fn character_order(spec: &CodeSpec) -> u64 {
    let group = spec.field.group_order();
    gcd(spec.index, group / (spec.q - 1))
}

/// `G(χ̄^a, e_1)` for `a = 1, …, d - 1`, where `χ̄(α) = e^(2πi/d)`, i.e.
/// `χ̄ = χ_j` with `j = (q^k - 1)/d`.
///
/// Summands are bucketed by `(m mod d, Tr(α^m))` with exact integer counts,
/// so the cost is `O(q^k + d²q)` for all `d - 1` sums together.
pub fn order_d_character_sums(spec: &CodeSpec) -> Result<Vec<GaussSumValue>> {
    let field = &spec.field;
    let d = character_order(spec);
    let q = field.q();
    let mut counts = vec![0u64; (d * q) as usize];
    for m in 0..field.group_order() {
        let t = field.trace_of_power(m);
        counts[((m % d) * q + t) as usize] += 1;
    }
    let den = (q * d) as u128;
    (1..d)
        .map(|a| {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..d {
                for t in 0..q {
                    let c = counts[(r * q + t) as usize];
                    if c == 0 {
                        continue;
                    }
                    let num = ((a * r % d) as u128 * q as u128 + t as u128 * d as u128) % den;
                    acc += root_of_unity(num, den) * c as f64;
                }
            }
            GaussSumValue::from_value(acc)
        })
        .collect()
}

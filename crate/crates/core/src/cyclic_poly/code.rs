use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::minpoly::minimal_polynomial;
use super::Poly;
use crate::arith::{checked_pow, divisors, is_prime};
use crate::cosets::{coset_leaders, multiplicative_order};
use crate::error::{Error, Result};
use crate::field::{ExtField, FieldDescriptor, FieldElement, DEFAULT_TABLE_CAP};

/// An irreducible cyclic `[n, k]` code over GF(q), with `n·N = q^k - 1`.
///
/// Codewords are `(Tr(τ), Tr(τα^N), …, Tr(τα^((n-1)N)))` for `τ ∈ GF(q^k)`.
/// The check polynomial is the minimal polynomial of `α^(-N)`, which makes
/// the generator polynomial's row space exactly that set of trace words.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    pub q: u64,
    pub k: u32,
    pub n: u64,
    /// `N = (q^k - 1) / n`.
    pub index: u64,
    pub field: Arc<ExtField>,
    pub generator: Poly,
    pub check: Poly,
}

/// JSON view of a [`CodeSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub q: u64,
    pub k: u32,
    pub n: u64,
    #[serde(rename = "N")]
    pub index: u64,
    pub field: FieldDescriptor,
    pub generator: Vec<u64>,
    pub check: Vec<u64>,
}

impl CodeSpec {
    pub fn summary(&self) -> CodeSummary {
        CodeSummary {
            q: self.q,
            k: self.k,
            n: self.n,
            index: self.index,
            field: self.field.descriptor(),
            generator: self.generator.coeffs().to_vec(),
            check: self.check.coeffs().to_vec(),
        }
    }

    /// `q^k`, the number of codewords.
    pub fn size(&self) -> u64 {
        self.field.order()
    }

    /// Whether `word` is a multiple of the generator polynomial.
    pub fn contains(&self, word: &[u64]) -> bool {
        word.len() as u64 == self.n
            && Poly::new(self.q, word.to_vec())
                .rem(&self.generator)
                .is_ok_and(|r| r.is_zero())
    }
}

/// Builds the irreducible cyclic code of dimension `k` and length
/// `(q^k - 1)/N` over GF(q).
pub fn irreducible_cyclic_code(q: u64, k: u32, index: u64) -> Result<CodeSpec> {
    irreducible_cyclic_code_with_cap(q, k, index, DEFAULT_TABLE_CAP)
}

pub fn irreducible_cyclic_code_with_cap(
    q: u64,
    k: u32,
    index: u64,
    table_cap: u64,
) -> Result<CodeSpec> {
    let n = validate_parameters(q, k, index)?;
    let field = ExtField::with_cap(q, k, table_cap)?;

    // α^N has order n; the check polynomial's roots are the conjugates of α^(-N).
    let partition = coset_leaders(n, q)?;
    let check = minimal_polynomial((n - 1) % n, &partition, &field)?;
    if check.degree() != Some(k as usize) {
        return Err(Error::NoDegreeKFactor { n, k });
    }
    let generator = Poly::x_pow_minus_one(q, n as usize).div_exact(&check)?;
    Ok(CodeSpec {
        q,
        k,
        n,
        index,
        field: Arc::new(field),
        generator,
        check,
    })
}

/// Checks `N | q^k - 1` and `ord_n(q) = k`; returns `n`.
pub fn validate_parameters(q: u64, k: u32, index: u64) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let order = checked_pow(q, k).filter(|_| k >= 1).ok_or_else(|| {
        Error::InvalidParameters(format!("q^k out of range for q = {q}, k = {k}"))
    })?;
    let group = order - 1;
    if index == 0 || group % index != 0 {
        return Err(Error::InvalidParameters(format!(
            "N = {index} does not divide q^k - 1 = {group}"
        )));
    }
    let n = group / index;
    let ord = multiplicative_order(q, n)?;
    if ord != k as u64 {
        return Err(Error::InvalidParameters(format!(
            "ord_{n}({q}) = {ord}, but the code needs k = {k}"
        )));
    }
    Ok(n)
}

/// Every `(k, N)` giving a valid irreducible cyclic code over GF(q) with
/// `q^k <= max_size`, ordered by `k` then `N`.
pub fn irreducible_code_parameters(q: u64, max_size: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::new();
    for k in 1u32.. {
        let Some(order) = checked_pow(q, k).filter(|&o| o <= max_size) else {
            break;
        };
        for index in divisors(order - 1) {
            if validate_parameters(q, k, index).is_ok() {
                out.push((k, index));
            }
        }
    }
    out
}

/// `k × n` matrix whose row `i` is the coefficient vector of `x^i g(x)`.
pub fn generator_matrix(spec: &CodeSpec) -> Vec<Vec<u64>> {
    let n = spec.n as usize;
    (0..spec.k as usize)
        .map(|i| {
            let mut row = vec![0u64; n];
            for (j, &c) in spec.generator.coeffs().iter().enumerate() {
                row[i + j] = c;
            }
            row
        })
        .collect()
}

/// `(Tr(τ), Tr(τα^N), …, Tr(τα^((n-1)N)))`.
pub fn codeword_from_trace(tau: FieldElement, spec: &CodeSpec) -> Result<Vec<u64>> {
    let field = &spec.field;
    let t = match tau {
        FieldElement::Zero => return Ok(vec![0; spec.n as usize]),
        FieldElement::Exp(t) if t < field.group_order() => t,
        FieldElement::Exp(_) => return Err(Error::FieldMismatch),
    };
    Ok((0..spec.n)
        .map(|j| field.trace_of_power(t + j * spec.index))
        .collect())
}

//! Oracles shared by the integration tests. None of them use the weight
//! formula, the MacWilliams transform or the coset sieve.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cyclotome::cyclic_poly::{generator_matrix, irreducible_code_parameters, linalg, CodeSpec};
use cyclotome::weights::WeightSpectrum;

/// Every valid `(q, k, N)` with `q ∈ {2, 3, 5}` and `q^k <= 2^12`.
pub fn sweep() -> Vec<(u64, u32, u64)> {
    [2u64, 3, 5]
        .into_iter()
        .flat_map(|q| {
            irreducible_code_parameters(q, 1 << 12)
                .into_iter()
                .map(move |(k, n)| (q, k, n))
        })
        .collect()
}

pub fn hamming_weight(word: &[u64]) -> u64 {
    word.iter().filter(|&&c| c != 0).count() as u64
}

/// Spectrum of the row space of `rows`, enumerated message by message.
pub fn span_spectrum(rows: &[Vec<u64>], q: u64, n: u64) -> WeightSpectrum {
    let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
    for mut msg in 0..q.pow(rows.len() as u32) {
        let mut word = vec![0u64; n as usize];
        for row in rows {
            let c = msg % q;
            msg /= q;
            for (x, &y) in word.iter_mut().zip(row) {
                *x = (*x + c * y) % q;
            }
        }
        *tally.entry(hamming_weight(&word)).or_default() += 1;
    }
    WeightSpectrum::from_counts(n, tally)
}

/// Basis of `{v : G v = 0}` from the reduced generator matrix.
pub fn null_space(spec: &CodeSpec) -> Vec<Vec<u64>> {
    let q = spec.q;
    let n = spec.n as usize;
    let mut rows = generator_matrix(spec);
    let rank = linalg::row_reduce(&mut rows, q);
    let pivots: Vec<usize> = rows[..rank]
        .iter()
        .map(|r| r.iter().position(|&v| v != 0).unwrap())
        .collect();
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = (q - rows[r][f]) % q;
            }
            v
        })
        .collect()
}

/// Dual spectrum by enumerating the null space of the generator matrix.
pub fn dual_spectrum_by_enumeration(spec: &CodeSpec) -> WeightSpectrum {
    span_spectrum(&null_space(spec), spec.q, spec.n)
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    let mut sieve = vec![true; limit as usize + 1];
    let mut out = Vec::new();
    for p in 2..=limit as usize {
        if sieve[p] {
            out.push(p as u64);
            for m in (p * p..=limit as usize).step_by(p) {
                sieve[m] = false;
            }
        }
    }
    out
}

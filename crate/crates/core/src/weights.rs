//! Weight spectra of irreducible cyclic codes.
//!
//! The McEliece route evaluates `S(ι)` once per `q`-cyclotomic coset of
//! `{0, …, N-1}`: the word for `τ = α^ι` has weight `S(ι)`, `S` only depends
//! on `ι mod d`, and each coset of size `v` stands for `v·n` words once the
//! `n` cyclic shifts are counted.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{order_d_character_sums, GaussSumValue};
use crate::cosets::{coset_leaders, CosetPartition};
use crate::cyclic_poly::{codeword_from_trace, CodeSpec};
use crate::error::{Error, Result};

/// Largest `q^k` the brute-force oracle enumerates by default.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 16;

/// Allowed distance between a computed weight and the nearest integer.
pub const WEIGHT_TOLERANCE: f64 = 1e-6;

/// Allowed imaginary residue of `S(ι)`.
pub const IMAGINARY_TOLERANCE: f64 = 1e-6;

/// `A_i` for each weight `i` with a nonzero count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpectrum {
    pub n: u64,
    #[serde(with = "counts_serde")]
    pub counts: BTreeMap<u64, BigUint>,
}

impl WeightSpectrum {
    pub fn from_counts<I, C>(n: u64, counts: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigUint>,
    {
        let mut map = BTreeMap::new();
        for (w, c) in counts {
            let c = c.into();
            if !c.is_zero() {
                *map.entry(w).or_insert_with(BigUint::zero) += c;
            }
        }
        WeightSpectrum { n, counts: map }
    }

    pub fn get(&self, weight: u64) -> BigUint {
        self.counts.get(&weight).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn nonzero_weights(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.keys().copied().filter(|&w| w != 0)
    }

    /// Checks `A_0 = 1`, `Σ A_i = size` and every weight `<= n`.
    pub fn validate(&self, size: &BigUint) -> Result<()> {
        if self.get(0) != BigUint::from(1u32) {
            return Err(Error::SpectrumMismatch(format!(
                "A_0 = {}, expected 1",
                self.get(0)
            )));
        }
        if let Some((&w, _)) = self.counts.iter().next_back().filter(|(&w, _)| w > self.n) {
            return Err(Error::SpectrumMismatch(format!(
                "weight {w} exceeds length {}",
                self.n
            )));
        }
        let total = self.total();
        if &total != size {
            return Err(Error::SpectrumMismatch(format!(
                "spectrum sums to {total}, expected {size}"
            )));
        }
        Ok(())
    }
}

/// Serde for weight → count maps as `{"0": 1, "8": 15}`, with counts as
/// JSON integers of any size.
pub mod counts_serde {
    use std::collections::BTreeMap;
    use std::str::FromStr;

    use num_bigint::BigUint;
    use serde::de::Error as _;
    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(
        counts: &BTreeMap<u64, BigUint>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(counts.len()))?;
        for (w, c) in counts {
            let number = Number::from_str(&c.to_string()).map_err(serde::ser::Error::custom)?;
            map.serialize_entry(&w.to_string(), &number)?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<u64, BigUint>, D::Error> {
        let raw = BTreeMap::<String, Number>::deserialize(d)?;
        raw.into_iter()
            .map(|(w, c)| {
                let w = w.parse::<u64>().map_err(D::Error::custom)?;
                let c = BigUint::from_str(&c.to_string()).map_err(D::Error::custom)?;
                Ok((w, c))
            })
            .collect()
    }
}

/// Serde for one count as a JSON integer of any size.
pub mod big_serde {
    use std::str::FromStr;

    use num_bigint::BigUint;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        Number::from_str(&value.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let n = Number::deserialize(d)?;
        BigUint::from_str(&n.to_string()).map_err(D::Error::custom)
    }
}

/// `A(x, y) = Σ A_i x^(n-i) y^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator {
    pub spectrum: WeightSpectrum,
}

impl From<WeightSpectrum> for WeightEnumerator {
    fn from(spectrum: WeightSpectrum) -> Self {
        WeightEnumerator { spectrum }
    }
}

pub fn evaluate_enumerator(w: &WeightEnumerator, x: f64, y: f64) -> f64 {
    let n = w.spectrum.n as i32;
    w.spectrum
        .counts
        .iter()
        .map(|(&i, a)| {
            a.to_f64().unwrap_or(f64::INFINITY) * x.powi(n - i as i32) * y.powi(i as i32)
        })
        .sum()
}

/// Exact evaluation at integer points.
pub fn evaluate_enumerator_exact(w: &WeightEnumerator, x: &BigInt, y: &BigInt) -> BigInt {
    let n = w.spectrum.n as u32;
    w.spectrum
        .counts
        .iter()
        .map(|(&i, a)| BigInt::from(a.clone()) * x.pow(n - i as u32) * y.pow(i as u32))
        .sum()
}

/// `S(ι)` for the code, from the phases of `gauss` (one per `a = 1, …, d-1`).
pub fn s_function(iota: u64, gauss: &[GaussSumValue], spec: &CodeSpec) -> Result<f64> {
    let phases: Vec<f64> = gauss.iter().map(|g| g.gamma).collect();
    real_part(iota, s_complex(iota, &phases, spec))
}

pub(crate) fn real_part(iota: u64, s: Complex64) -> Result<f64> {
    if s.im.abs() > IMAGINARY_TOLERANCE {
        return Err(Error::NonRealResult {
            iota,
            residue: s.im,
        });
    }
    Ok(s.re)
}

/// `S(ι)` before the imaginary part is dropped, with `G_a = √(q^k) e^(iγ_a)`.
pub(crate) fn s_complex(iota: u64, phases: &[f64], spec: &CodeSpec) -> Complex64 {
    let q = spec.q as f64;
    let order = spec.size() as f64;
    let scale = (q - 1.0) / (q * spec.index as f64);
    let d = phases.len() as u64 + 1;
    let iota = iota % d;
    let mut sum = Complex64::new(0.0, 0.0);
    for (a, &gamma) in (1..d).zip(phases) {
        let turn = (a * iota % d) as f64 / d as f64;
        sum += Complex64::from_polar(1.0, gamma - std::f64::consts::TAU * turn);
    }
    Complex64::new(order * scale, 0.0) - sum * (scale * order.sqrt())
}

/// Weight of the words of one coset: `size` values of `ι`, each standing for
/// `n` cyclic shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetWeight {
    pub leader: u64,
    pub size: u64,
    pub weight: u64,
}

/// `S` at every coset leader of `{0, …, N-1}` under `q`, rounded.
pub fn coset_weights(
    spec: &CodeSpec,
    gauss: &[GaussSumValue],
    cosets: &CosetPartition,
) -> Result<Vec<CosetWeight>> {
    cosets
        .cosets
        .iter()
        .map(|c| {
            let value = s_function(c.leader, gauss, spec)?;
            let weight = value.round();
            if (value - weight).abs() >= WEIGHT_TOLERANCE || weight < 0.0 {
                return Err(Error::NonIntegerWeight { value });
            }
            Ok(CosetWeight {
                leader: c.leader,
                size: c.size,
                weight: weight as u64,
            })
        })
        .collect()
}

/// Builds the spectrum from per-coset weights: `A_w = n · Σ sizes`, plus
/// `A_0 = 1`, then validates it.
pub(crate) fn assemble_spectrum(
    spec: &CodeSpec,
    weights: impl IntoIterator<Item = (u64, u64)>,
) -> Result<WeightSpectrum> {
    let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
    for (w, size) in weights {
        *tally.entry(w).or_default() += size;
    }
    let spectrum = WeightSpectrum::from_counts(
        spec.n,
        std::iter::once((0, BigUint::from(1u32))).chain(
            tally
                .into_iter()
                .map(|(w, a)| (w, BigUint::from(a) * spec.n)),
        ),
    );
    spectrum.validate(&BigUint::from(spec.size()))?;
    Ok(spectrum)
}

pub fn weight_spectrum_mceliece(spec: &CodeSpec) -> Result<WeightSpectrum> {
    let gauss = order_d_character_sums(spec)?;
    let cosets = coset_leaders(spec.index, spec.q)?;
    let weights = coset_weights(spec, &gauss, &cosets)?;
    assemble_spectrum(spec, weights.iter().map(|c| (c.weight, c.size)))
}

pub fn weight_spectrum_bruteforce(spec: &CodeSpec) -> Result<WeightSpectrum> {
    weight_spectrum_bruteforce_with_cap(spec, DEFAULT_ORACLE_CAP)
}

/// Enumerates all `q^k` trace words.
pub fn weight_spectrum_bruteforce_with_cap(spec: &CodeSpec, cap: u64) -> Result<WeightSpectrum> {
    if spec.size() > cap {
        return Err(Error::OracleCapExceeded {
            order: spec.size(),
            cap,
        });
    }
    let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
    for tau in spec.field.elements() {
        let word = codeword_from_trace(tau, spec)?;
        *tally
            .entry(word.iter().filter(|&&c| c != 0).count() as u64)
            .or_default() += 1;
    }
    let spectrum = WeightSpectrum::from_counts(spec.n, tally);
    spectrum.validate(&BigUint::from(spec.size()))?;
    Ok(spectrum)
}

/// Enumerator of the dual `[n, n-k]` code:
/// `A⊥(x, y) = q^(-k) A(x + (q-1)y, x - y)`.
///
/// The substitution is applied as `P(X+Y, Y)`, swap, `Y → qY`, `P(X-Y, Y)`,
/// which needs only additions and one scaling pass.
pub fn macwilliams_dual(w: &WeightEnumerator, q: u64, k: u64, n: u64) -> Result<WeightEnumerator> {
    if w.spectrum.n != n {
        return Err(Error::InvalidParameters(format!(
            "enumerator has length {}, expected {n}",
            w.spectrum.n
        )));
    }
    if k > n {
        return Err(Error::InvalidParameters(format!(
            "dimension {k} exceeds length {n}"
        )));
    }
    let len = n as usize + 1;
    // c[i] is the coefficient of X^(n-i) Y^i.
    let mut c = vec![BigInt::zero(); len];
    for (&i, a) in &w.spectrum.counts {
        c[i as usize] = BigInt::from(a.clone());
    }
    shift_x(&mut c, true);
    c.reverse();
    let qb = BigInt::from(q);
    let mut power = BigInt::from(1u32);
    for v in c.iter_mut() {
        *v *= &power;
        power *= &qb;
    }
    shift_x(&mut c, false);

    let divisor = BigInt::from(q).pow(k as u32);
    let mut counts = BTreeMap::new();
    for (i, v) in c.into_iter().enumerate() {
        let (quot, rem) = (&v / &divisor, &v % &divisor);
        if !rem.is_zero() || quot.sign() == Sign::Minus {
            return Err(Error::NonIntegerDualCoefficient { weight: i });
        }
        if !quot.is_zero() {
            counts.insert(i as u64, quot.to_biguint().expect("non-negative"));
        }
    }
    let spectrum = WeightSpectrum { n, counts };
    spectrum
        .validate(&BigUint::from(q).pow((n - k) as u32))
        .map_err(|_| Error::NonIntegerDualCoefficient { weight: 0 })?;
    Ok(WeightEnumerator { spectrum })
}

/// `P(X, Y) → P(X ± Y, Y)` as a Taylor shift of `p(t) = P(t, 1)`.
fn shift_x(c: &mut [BigInt], plus: bool) {
    // In ascending powers of t, a[j] = c[n - j]; reversing gives that order.
    c.reverse();
    let n = c.len() - 1;
    for i in 0..n {
        for j in (i..n).rev() {
            let (lo, hi) = c.split_at_mut(j + 1);
            if plus {
                lo[j] += &hi[0];
            } else {
                lo[j] -= &hi[0];
            }
        }
    }
    c.reverse();
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use proptest::prelude::*;

    use super::*;
    use crate::cosets::cosets_full;
    use crate::cyclic_poly::{
        generator_matrix, irreducible_code_parameters, irreducible_cyclic_code, linalg,
    };
    use crate::field::FieldElement;

    fn spectrum(n: u64, pairs: &[(u64, u64)]) -> WeightSpectrum {
        WeightSpectrum::from_counts(n, pairs.iter().copied())
    }

    /// Brute-force dual: null space of the generator matrix, enumerated.
    fn dual_spectrum_oracle(spec: &CodeSpec) -> WeightSpectrum {
        let q = spec.q;
        let n = spec.n as usize;
        let mut rows = generator_matrix(spec);
        let rank = linalg::row_reduce(&mut rows, q);
        let pivots: Vec<usize> = rows[..rank]
            .iter()
            .map(|r| r.iter().position(|&v| v != 0).unwrap())
            .collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<u64>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u64; n];
                v[f] = 1;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = (q - rows[r][f]) % q;
                }
                v
            })
            .collect();
        let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
        let mut seen = HashSet::new();
        for mut msg in 0..q.pow(basis.len() as u32) {
            let mut word = vec![0u64; n];
            for b in &basis {
                let c = msg % q;
                msg /= q;
                for (x, &y) in word.iter_mut().zip(b) {
                    *x = (*x + c * y) % q;
                }
            }
            let gen = generator_matrix(spec);
            for g in &gen {
                let dot: u64 = g.iter().zip(&word).map(|(a, b)| a * b % q).sum();
                assert_eq!(dot % q, 0);
            }
            *tally
                .entry(word.iter().filter(|&&x| x != 0).count() as u64)
                .or_default() += 1;
            seen.insert(word);
        }
        assert_eq!(seen.len() as u64, q.pow((n - rank) as u32));
        WeightSpectrum::from_counts(spec.n, tally)
    }

    #[test]
    fn simplex_spectrum() {
        let spec = irreducible_cyclic_code(2, 4, 1).unwrap();
        let expected = spectrum(15, &[(0, 1), (8, 15)]);
        assert_eq!(weight_spectrum_bruteforce(&spec).unwrap(), expected);
        assert_eq!(weight_spectrum_mceliece(&spec).unwrap(), expected);
        for iota in 0..15 {
            assert_eq!(s_function(iota, &[], &spec).unwrap(), 8.0);
        }
    }

    #[test]
    fn length_five_spectrum() {
        let spec = irreducible_cyclic_code(2, 4, 3).unwrap();
        // Even-weight words of length 5, listed by hand.
        let mut brute: BTreeMap<u64, u64> = BTreeMap::new();
        for v in 0u32..32 {
            if v.count_ones() % 2 == 0 {
                *brute.entry(v.count_ones() as u64).or_default() += 1;
            }
        }
        let expected = WeightSpectrum::from_counts(5, brute);
        assert_eq!(expected, spectrum(5, &[(0, 1), (2, 10), (4, 5)]));
        assert_eq!(weight_spectrum_bruteforce(&spec).unwrap(), expected);
        assert_eq!(weight_spectrum_mceliece(&spec).unwrap(), expected);
    }

    #[test]
    fn s_matches_word_weights() {
        let params = [2u64, 3, 5].into_iter().flat_map(|q| {
            irreducible_code_parameters(q, 1 << 9)
                .into_iter()
                .map(move |(k, index)| (q, k, index))
        });
        for (q, k, index) in params {
            let spec = irreducible_cyclic_code(q, k, index).unwrap();
            let gauss = order_d_character_sums(&spec).unwrap();
            for iota in 0..spec.field.group_order() {
                let w = codeword_from_trace(FieldElement::Exp(iota), &spec).unwrap();
                let weight = w.iter().filter(|&&c| c != 0).count() as f64;
                let s = s_function(iota, &gauss, &spec).unwrap();
                assert!(
                    (s - weight).abs() < 1e-9,
                    "q = {q}, k = {k}, N = {index}, ι = {iota}"
                );
            }
        }
    }

    #[test]
    fn coset_invariance() {
        for q in [2u64, 3, 5] {
            for (k, index) in irreducible_code_parameters(q, 1 << 10) {
                let spec = irreducible_cyclic_code(q, k, index).unwrap();
                let gauss = order_d_character_sums(&spec).unwrap();
                for c in cosets_full(index, q).unwrap().cosets {
                    let s0 = s_function(c.leader, &gauss, &spec).unwrap();
                    for &m in c.members.as_ref().unwrap() {
                        assert!((s_function(m, &gauss, &spec).unwrap() - s0).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn enumerator_values() {
        let simplex: WeightEnumerator = spectrum(15, &[(0, 1), (8, 15)]).into();
        assert_eq!(evaluate_enumerator(&simplex, 1.0, 1.0), 16.0);
        assert_eq!(evaluate_enumerator(&simplex, 1.0, 0.0), 1.0);
        assert_eq!(evaluate_enumerator(&simplex, 1.0, 2.0), 3841.0);
        assert_eq!(
            evaluate_enumerator_exact(&simplex, &BigInt::from(1), &BigInt::from(2)),
            BigInt::from(3841)
        );
    }

    #[test]
    fn dual_of_simplex_is_hamming() {
        let spec = irreducible_cyclic_code(2, 4, 1).unwrap();
        let w: WeightEnumerator = weight_spectrum_mceliece(&spec).unwrap().into();
        let dual = macwilliams_dual(&w, 2, 4, 15).unwrap();
        let oracle = dual_spectrum_oracle(&spec);
        assert_eq!(dual.spectrum, oracle);
        assert_eq!(oracle.get(3), BigUint::from(35u32));
        assert_eq!(oracle.get(4), BigUint::from(105u32));
        assert_eq!(oracle.total(), BigUint::from(2048u32));
    }

    #[test]
    fn dual_matches_null_space_oracle() {
        for q in [2u64, 3, 5] {
            for (k, index) in irreducible_code_parameters(q, 1 << 12) {
                let spec = irreducible_cyclic_code(q, k, index).unwrap();
                let dual_dim = (spec.n - k as u64) as u32;
                if q.checked_pow(dual_dim).is_none_or(|s| s > 1 << 16) {
                    continue;
                }
                let w: WeightEnumerator = weight_spectrum_bruteforce(&spec).unwrap().into();
                let dual = macwilliams_dual(&w, q, k as u64, spec.n).unwrap();
                assert_eq!(
                    dual.spectrum,
                    dual_spectrum_oracle(&spec),
                    "q = {q}, k = {k}, N = {index}"
                );
            }
        }
    }

    #[test]
    fn full_space_and_zero_code() {
        for (q, n) in [(2u64, 6u64), (3, 4), (5, 3)] {
            let full = WeightSpectrum::from_counts(
                n,
                (0..=n).map(|i| {
                    let binom = (0..i).fold(BigUint::from(1u32), |acc, j| acc * (n - j) / (j + 1));
                    (i, binom * BigUint::from(q - 1).pow(i as u32))
                }),
            );
            let dual = macwilliams_dual(&full.clone().into(), q, n, n).unwrap();
            assert_eq!(dual.spectrum, spectrum(n, &[(0, 1)]));
            let back = macwilliams_dual(&dual, q, 0, n).unwrap();
            assert_eq!(back.spectrum, full);
        }
    }

    #[test]
    fn wrong_inputs_are_rejected() {
        let w: WeightEnumerator = spectrum(5, &[(0, 1), (2, 10), (4, 5)]).into();
        assert!(matches!(
            macwilliams_dual(&w, 2, 3, 5),
            Err(Error::NonIntegerDualCoefficient { .. })
        ));
        assert!(matches!(
            macwilliams_dual(&w, 2, 4, 6),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn oracle_cap() {
        let spec = irreducible_cyclic_code(2, 4, 1).unwrap();
        assert_eq!(
            weight_spectrum_bruteforce_with_cap(&spec, 8),
            Err(Error::OracleCapExceeded { order: 16, cap: 8 })
        );
    }

    #[test]
    fn json_counts_are_integers() {
        let s = spectrum(15, &[(0, 1), (8, 15)]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"n":15,"counts":{"0":1,"8":15}}"#);
        let big = WeightSpectrum::from_counts(3000, [(0u64, BigUint::from(3u32).pow(200))]);
        let json = serde_json::to_string(&big).unwrap();
        assert!(json.contains(&BigUint::from(3u32).pow(200).to_string()));
        assert_eq!(serde_json::from_str::<WeightSpectrum>(&json).unwrap(), big);
    }

    proptest! {
        #[test]
        fn macwilliams_is_an_involution(
            q in prop::sample::select(vec![2u64, 3, 5]),
            k in 1usize..5,
            extra in 0usize..5,
            seed in prop::collection::vec(0u64..5, 25),
        ) {
            // Random code from a random k × n generator matrix in systematic form.
            let n = k + extra;
            let mut rows = Vec::new();
            for i in 0..k {
                let mut row = vec![0u64; n];
                row[i] = 1;
                for j in k..n {
                    row[j] = seed[(i * 5 + j) % seed.len()] % q;
                }
                rows.push(row);
            }
            let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
            for mut msg in 0..q.pow(k as u32) {
                let mut word = vec![0u64; n];
                for row in &rows {
                    let c = msg % q;
                    msg /= q;
                    for (x, &y) in word.iter_mut().zip(row) {
                        *x = (*x + c * y) % q;
                    }
                }
                *tally.entry(word.iter().filter(|&&x| x != 0).count() as u64).or_default() += 1;
            }
            let w: WeightEnumerator = WeightSpectrum::from_counts(n as u64, tally).into();
            let dual = macwilliams_dual(&w, q, k as u64, n as u64).unwrap();
            let back = macwilliams_dual(&dual, q, (n - k) as u64, n as u64).unwrap();
            prop_assert_eq!(back, w);
        }
    }
}

//! Divisibility exponent, phase-error bound, and the recovery pipeline with a
//! noisy Gauss-sum phase oracle.
//!
//! All nonzero weights of an irreducible cyclic code are multiples of
//! `q^(θ-1)`. If every phase `γ_a` is known to within
//! `ε <= q^(θ-1) / (4√(q^k))`, each noisy `S(ι)` lands within a quarter of that
//! spacing of the true weight, so rounding to the nearest multiple recovers the
//! spectrum exactly.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::checked_pow;
pub use crate::arith::digit_sum;
use crate::characters::{character_order, order_d_character_sums, GaussSumValue};
use crate::cosets::{coset_leaders, multiplicative_order, CosetPartition};
use crate::cyclic_poly::{irreducible_cyclic_code_with_cap, CodeSpec};
use crate::error::{Error, Result};
use crate::field::DEFAULT_TABLE_CAP;
use crate::weights::{assemble_spectrum, coset_weights, s_complex, CosetWeight, WeightSpectrum};

/// `min_{1 <= j <= N} s_q(j·n)`.
pub fn min_digit_sum(q: u64, n: u64, index: u64) -> u64 {
    (1..=index).map(|j| digit_sum(j * n, q)).min().unwrap_or(0)
}

/// `θ = min_{1 <= j <= N} s_q(j·n) / (q - 1)`, required to be an integer.
pub fn theta(spec: &CodeSpec) -> Result<u64> {
    let m = min_digit_sum(spec.q, spec.n, spec.index);
    if !m.is_multiple_of(spec.q - 1) {
        return Err(Error::NonIntegralTheta {
            min_digit_sum: m,
            q_minus_1: spec.q - 1,
        });
    }
    Ok(m / (spec.q - 1))
}

/// `⌈min_j s_q(j·n) / (q - 1)⌉`: equals [`theta`] when that is integral, and
/// is the exponent used for rounding and for the bound.
pub fn divisibility_exponent(spec: &CodeSpec) -> u64 {
    exponent_for(spec.q, spec.n, spec.index)
}

fn exponent_for(q: u64, n: u64, index: u64) -> u64 {
    min_digit_sum(q, n, index).div_ceil(q - 1)
}

/// `q^(θ-1) / (4√(q^k))`.
pub fn epsilon_bound(spec: &CodeSpec) -> f64 {
    bound_for(spec.q, spec.k, exponent_for(spec.q, spec.n, spec.index))
}

fn bound_for(q: u64, k: u32, exponent: u64) -> f64 {
    (q as f64).powi(exponent as i32 - 1) / (4.0 * (q as f64).powi(k as i32).sqrt())
}

/// Parameters of a candidate family member, `N = α·k^s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IcqParams {
    pub q: u64,
    pub k: u32,
    pub s: f64,
    pub alpha: f64,
    pub epsilon: f64,
}

impl IcqParams {
    /// `s = 0`, so `α = N`.
    pub fn from_index(q: u64, k: u32, index: u64, epsilon: f64) -> Self {
        IcqParams {
            q,
            k,
            s: 0.0,
            alpha: index as f64,
            epsilon,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MembershipFailure {
    IntegralityFailed,
    OrderFailed,
    EpsilonTooLarge,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralityClause {
    pub passed: bool,
    /// `α·k^s` before rounding.
    pub alpha_k_s: f64,
    #[serde(rename = "N")]
    pub index: Option<u64>,
    pub n: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderClause {
    pub passed: bool,
    pub order: Option<u64>,
    pub k: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonClause {
    pub passed: bool,
    pub epsilon: f64,
    pub theta: Option<u64>,
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub params: IcqParams,
    pub member: bool,
    /// First failing clause.
    pub failure: Option<MembershipFailure>,
    pub integrality: IntegralityClause,
    pub order: OrderClause,
    pub epsilon: EpsilonClause,
}

/// Checks `n = (q^k - 1)/(α k^s)` integral, `ord_n(q) = k`, and
/// `0 < ε < 1` with `ε` at most the bound.
pub fn icq_membership(params: IcqParams) -> MembershipReport {
    let IcqParams {
        q,
        k,
        s,
        alpha,
        epsilon,
    } = params;
    let group = checked_pow(q, k).filter(|&o| o >= 2).map(|o| o - 1);
    let alpha_k_s = alpha * (k as f64).powf(s);
    let rounded = alpha_k_s.round();
    let index = (alpha_k_s.is_finite()
        && rounded >= 1.0
        && (alpha_k_s - rounded).abs() <= 1e-9 * rounded.max(1.0))
    .then_some(rounded as u64);
    let n = match (group, index) {
        (Some(g), Some(i)) if g % i == 0 => Some(g / i),
        _ => None,
    };
    let integrality = IntegralityClause {
        passed: n.is_some() && crate::arith::is_prime(q),
        alpha_k_s,
        index,
        n,
    };

    let ord = n
        .filter(|_| integrality.passed)
        .and_then(|n| multiplicative_order(q, n).ok());
    let order = OrderClause {
        passed: ord == Some(k as u64),
        order: ord,
        k,
    };

    let theta = match (order.passed, n, index) {
        (true, Some(n), Some(i)) => Some(exponent_for(q, n, i)),
        _ => None,
    };
    let bound = theta.map(|t| bound_for(q, k, t));
    let eps_ok = epsilon > 0.0 && epsilon < 1.0 && bound.is_some_and(|b| epsilon <= b);
    let epsilon_clause = EpsilonClause {
        passed: eps_ok,
        epsilon,
        theta,
        bound,
    };

    let failure = if !integrality.passed {
        Some(MembershipFailure::IntegralityFailed)
    } else if !order.passed {
        Some(MembershipFailure::OrderFailed)
    } else if !eps_ok {
        Some(MembershipFailure::EpsilonTooLarge)
    } else {
        None
    };
    MembershipReport {
        params,
        member: failure.is_none(),
        failure,
        integrality,
        order,
        epsilon: epsilon_clause,
    }
}

/// Seeded source of phase estimates `γ + u`, `u` uniform on `(-ε, ε)`.
#[derive(Debug, Clone)]
pub struct NoisyGaussOracle {
    rng: ChaCha8Rng,
    epsilon: f64,
    errors: Vec<f64>,
}

impl NoisyGaussOracle {
    pub fn new(epsilon: f64, seed: u64) -> Self {
        NoisyGaussOracle {
            rng: ChaCha8Rng::seed_from_u64(seed),
            epsilon,
            errors: Vec::new(),
        }
    }

    pub fn sample(&mut self, true_gamma: f64) -> f64 {
        let u = if self.epsilon > 0.0 {
            loop {
                let u = self.rng.gen_range(-self.epsilon..self.epsilon);
                if u != -self.epsilon {
                    break u;
                }
            }
        } else {
            0.0
        };
        self.errors.push(u);
        true_gamma + u
    }

    /// Injected errors in call order.
    pub fn errors(&self) -> &[f64] {
        &self.errors
    }

    pub fn calls(&self) -> usize {
        self.errors.len()
    }
}

/// One draw from a fresh oracle seeded with `seed`.
pub fn noisy_gauss_oracle(true_gamma: f64, epsilon: f64, seed: u64) -> f64 {
    NoisyGaussOracle::new(epsilon, seed).sample(true_gamma)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub q: u64,
    pub k: u32,
    pub n: u64,
    #[serde(rename = "N")]
    pub index: u64,
    pub seed: u64,
    pub epsilon: f64,
    /// Divisibility exponent; weights are rounded to multiples of `q^(θ-1)`.
    pub theta: u64,
    pub epsilon_max: f64,
    pub d: u64,
    pub num_cosets: u64,
    pub oracle_calls: u64,
    pub injected_errors: Vec<f64>,
    pub recovered_spectrum: WeightSpectrum,
    pub exact: bool,
}

/// Per-code state shared by every trial: exact Gauss sums, cosets, and the
/// noiseless spectrum.
#[derive(Debug, Clone)]
pub struct PreparedPipeline {
    spec: CodeSpec,
    gauss: Vec<GaussSumValue>,
    cosets: CosetPartition,
    weights: Vec<CosetWeight>,
    reference: WeightSpectrum,
    theta: u64,
    epsilon_max: f64,
}

impl PreparedPipeline {
    pub fn new(q: u64, k: u32, index: u64) -> Result<Self> {
        Self::with_cap(q, k, index, DEFAULT_TABLE_CAP)
    }

    pub fn with_cap(q: u64, k: u32, index: u64, table_cap: u64) -> Result<Self> {
        let spec = irreducible_cyclic_code_with_cap(q, k, index, table_cap)?;
        let gauss = order_d_character_sums(&spec)?;
        let cosets = coset_leaders(index, q)?;
        let weights = coset_weights(&spec, &gauss, &cosets)?;
        let reference = assemble_spectrum(&spec, weights.iter().map(|c| (c.weight, c.size)))?;
        let theta = divisibility_exponent(&spec);
        let epsilon_max = epsilon_bound(&spec);
        Ok(PreparedPipeline {
            spec,
            gauss,
            cosets,
            weights,
            reference,
            theta,
            epsilon_max,
        })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    /// Noiseless spectrum.
    pub fn reference(&self) -> &WeightSpectrum {
        &self.reference
    }

    pub fn epsilon_bound(&self) -> f64 {
        self.epsilon_max
    }

    pub fn theta(&self) -> u64 {
        self.theta
    }

    /// Runs one trial; a recovered spectrum that differs from the noiseless
    /// one is a [`Error::RecoveryFailed`].
    pub fn run(&self, epsilon: f64, seed: u64) -> Result<PipelineReport> {
        let (report, deviations) = self.simulate(epsilon, seed);
        if report.exact {
            Ok(report)
        } else {
            Err(Error::RecoveryFailed(deviations.join("; ")))
        }
    }

    /// Runs one trial and reports it whether or not recovery succeeded, with
    /// one line per coset whose rounded weight is wrong.
    pub fn simulate(&self, epsilon: f64, seed: u64) -> (PipelineReport, Vec<String>) {
        let spec = &self.spec;
        let mut oracle = NoisyGaussOracle::new(epsilon, seed);
        let phases: Vec<f64> = self.gauss.iter().map(|g| oracle.sample(g.gamma)).collect();
        let spacing = (spec.q as f64).powi(self.theta as i32 - 1);

        let mut deviations = Vec::new();
        let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
        for c in &self.weights {
            let noisy = s_complex(c.leader, &phases, spec).re;
            let w = (noisy / spacing).round() * spacing;
            let exact = c.weight as f64;
            if w != exact || w < 1.0 || w > spec.n as f64 {
                deviations.push(format!(
                    "coset {}: S = {noisy:.6} rounded to {w}, true weight {exact}",
                    c.leader
                ));
            }
            *tally.entry(w.max(0.0) as u64).or_default() += c.size;
        }
        let recovered = WeightSpectrum::from_counts(
            spec.n,
            std::iter::once((0, BigUint::from(1u32))).chain(
                tally
                    .into_iter()
                    .map(|(w, a)| (w, BigUint::from(a) * spec.n)),
            ),
        );
        let exact = deviations.is_empty() && recovered == self.reference;
        if !exact && deviations.is_empty() {
            deviations.push("spectrum differs from the noiseless reference".into());
        }
        let report = PipelineReport {
            q: spec.q,
            k: spec.k,
            n: spec.n,
            index: spec.index,
            seed,
            epsilon,
            theta: self.theta,
            epsilon_max: self.epsilon_max,
            d: character_order(spec),
            num_cosets: self.cosets.len() as u64,
            oracle_calls: oracle.calls() as u64,
            injected_errors: oracle.errors().to_vec(),
            recovered_spectrum: recovered,
            exact,
        };
        (report, deviations)
    }
}

/// Builds the code, checks membership unless `force`, and runs one trial.
pub fn run_pipeline(
    q: u64,
    k: u32,
    index: u64,
    epsilon: f64,
    seed: u64,
    force: bool,
) -> Result<PipelineReport> {
    check_membership(q, k, index, epsilon, force)?;
    PreparedPipeline::new(q, k, index)?.run(epsilon, seed)
}

pub(crate) fn check_membership(
    q: u64,
    k: u32,
    index: u64,
    epsilon: f64,
    force: bool,
) -> Result<()> {
    if force {
        return Ok(());
    }
    let m = icq_membership(IcqParams::from_index(q, k, index, epsilon));
    match m.failure {
        None => Ok(()),
        Some(MembershipFailure::EpsilonTooLarge) => Err(Error::MembershipFailed(format!(
            "epsilon {epsilon} exceeds the bound {}",
            m.epsilon
                .bound
                .map_or("undefined".into(), |b| b.to_string())
        ))),
        Some(f) => Err(Error::MembershipFailed(format!("{f:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub q: u64,
    pub k: u32,
    #[serde(rename = "N")]
    pub index: u64,
    pub epsilon: f64,
    pub epsilon_max: f64,
    pub trials: u64,
    pub exact: u64,
    pub deviations: u64,
    pub failures: Vec<TrialFailure>,
}

/// Trials with seeds `first_seed, first_seed + 1, …`.
pub fn run_trials(
    pipeline: &PreparedPipeline,
    epsilon: f64,
    first_seed: u64,
    trials: u64,
) -> TrialSummary {
    let mut failures = Vec::new();
    for seed in first_seed..first_seed + trials {
        if let Err(e) = pipeline.run(epsilon, seed) {
            failures.push(TrialFailure {
                seed,
                detail: e.to_string(),
            });
        }
    }
    let spec = pipeline.spec();
    TrialSummary {
        q: spec.q,
        k: spec.k,
        index: spec.index,
        epsilon,
        epsilon_max: pipeline.epsilon_bound(),
        trials,
        exact: trials - failures.len() as u64,
        deviations: failures.len() as u64,
        failures,
    }
}

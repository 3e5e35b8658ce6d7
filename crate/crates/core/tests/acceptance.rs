//! Acceptance criteria. Run with
//! `cargo test -p cyclotome --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use cyclotome::characters::GaussSums;
use cyclotome::cli;
use cyclotome::cosets::{coset_count_formula, CosetLeaders};
use cyclotome::cyclic_poly::{factor_xn_minus_1, irreducible_cyclic_code, Poly};
use cyclotome::field::{ExtField, FieldElement};
use cyclotome::icq::{divisibility_exponent, run_trials, PreparedPipeline};
use cyclotome::weights::{
    macwilliams_dual, weight_spectrum_bruteforce, weight_spectrum_mceliece, WeightEnumerator,
};
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:?}, limit {limit:?}")
    })
}

fn criterion_1() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let start = Instant::now();
    let code = cli::run(["cyclotome", "cosets", "16", "3"], &mut out, &mut err);
    let elapsed = start.elapsed();
    ensure(code == 0 && err.is_empty(), || {
        format!("exit {code}, stderr {:?}", String::from_utf8_lossy(&err))
    })?;
    let expected = "{0}\n{1,3,9,11}\n{2,6}\n{4,12}\n{5,15,13,7}\n{8}\n{10,14}\n";
    let got = String::from_utf8(out).unwrap();
    ensure(got == expected, || format!("output {got:?}"))?;
    within(elapsed, Duration::from_millis(1), "cosets 16 3")?;
    Ok(format!("seven cosets reproduced in {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let formula = coset_count_formula(358_701, 2).map_err(|e| e.to_string())?;
    ensure(formula == 546, || format!("formula gives {formula}"))?;
    let start = Instant::now();
    let sieve = CosetLeaders::new(358_701, 2)
        .map_err(|e| e.to_string())?
        .count();
    let elapsed = start.elapsed();
    ensure(sieve == 546, || format!("sieve gives {sieve}"))?;
    within(elapsed, Duration::from_secs(5), "sieve")?;
    Ok(format!(
        "formula and sieve both give 546; sieve took {elapsed:?}"
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let codes = common::sweep();
    for &(q, k, index) in &codes {
        let spec =
            irreducible_cyclic_code(q, k, index).map_err(|e| format!("({q},{k},{index}): {e}"))?;
        let formula =
            weight_spectrum_mceliece(&spec).map_err(|e| format!("({q},{k},{index}): {e}"))?;
        let brute =
            weight_spectrum_bruteforce(&spec).map_err(|e| format!("({q},{k},{index}): {e}"))?;
        ensure(formula == brute, || {
            format!("({q},{k},{index}): {formula:?} != {brute:?}")
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120), "sweep")?;
    Ok(format!("{} codes agree, {elapsed:?}", codes.len()))
}

fn criterion_4() -> Outcome {
    let mut fields = 0;
    let mut sums = 0u64;
    let mut worst: f64 = 0.0;
    for q in common::primes_up_to(1 << 12) {
        let mut order = q;
        let mut k = 1;
        while order <= 1 << 12 {
            let field = ExtField::new(q, k).map_err(|e| e.to_string())?;
            let tables = GaussSums::new(&field);
            let group = field.group_order();
            let root = (order as f64).sqrt();
            for j in 0..group {
                // β = 1 always, plus one more β that moves with j.
                let betas = [0, (j * 7919 + 1) % group];
                for m in betas {
                    let g = tables
                        .sum(j, FieldElement::Exp(m))
                        .map_err(|e| e.to_string())?;
                    sums += 1;
                    if j == 0 {
                        let dev = (g.value() - num_complex::Complex64::new(-1.0, 0.0)).norm();
                        ensure(dev < 1e-12, || {
                            format!("GF({q}^{k}) trivial character off by {dev:e}")
                        })?;
                    } else {
                        let rel = (g.magnitude - root).abs() / root;
                        worst = worst.max(rel);
                        ensure(rel < 1e-9, || {
                            format!("GF({q}^{k}) j = {j}, β = α^{m}: relative error {rel:e}")
                        })?;
                    }
                }
            }
            fields += 1;
            k += 1;
            order = match order.checked_mul(q) {
                Some(o) => o,
                None => break,
            };
        }
    }
    Ok(format!(
        "{sums} sums over {fields} fields, worst relative error {worst:.1e}"
    ))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for q in [2u64, 3, 5] {
        for n in 1..=200u64 {
            if n % q == 0 {
                continue;
            }
            let factors = factor_xn_minus_1(n, q).map_err(|e| format!("n = {n}, q = {q}: {e}"))?;
            let product = factors.iter().fold(Poly::one(q), |acc, f| &acc * f);
            ensure(product == Poly::x_pow_minus_one(q, n as usize), || {
                format!("n = {n}, q = {q}: product {product}")
            })?;
            ensure(factors.iter().all(Poly::is_irreducible), || {
                format!("n = {n}, q = {q}: reducible factor")
            })?;
            let count = coset_count_formula(n, q).map_err(|e| e.to_string())?;
            ensure(factors.len() as u64 == count, || {
                format!(
                    "n = {n}, q = {q}: {} factors, formula {count}",
                    factors.len()
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} factorizations exact"))
}

fn criterion_6() -> Outcome {
    let codes = common::sweep();
    for &(q, k, index) in &codes {
        let spec = irreducible_cyclic_code(q, k, index).map_err(|e| e.to_string())?;
        let spectrum = weight_spectrum_bruteforce(&spec).map_err(|e| e.to_string())?;
        let divisor = q.pow(divisibility_exponent(&spec) as u32 - 1);
        for w in spectrum.nonzero_weights() {
            ensure(w % divisor == 0, || {
                format!("({q},{k},{index}): weight {w} not divisible by {divisor}")
            })?;
        }
        let distinct = spectrum.nonzero_weights().count() as u64;
        ensure(distinct <= index, || {
            format!("({q},{k},{index}): {distinct} distinct weights")
        })?;
    }
    Ok(format!(
        "{} codes: divisibility and distinct-weight bound hold",
        codes.len()
    ))
}

fn criterion_7() -> Outcome {
    let simplex = irreducible_cyclic_code(2, 4, 1).map_err(|e| e.to_string())?;
    let w: WeightEnumerator = weight_spectrum_mceliece(&simplex)
        .map_err(|e| e.to_string())?
        .into();
    let dual = macwilliams_dual(&w, 2, 4, 15).map_err(|e| e.to_string())?;
    let oracle = common::dual_spectrum_by_enumeration(&simplex);
    ensure(dual.spectrum == oracle, || {
        format!("{:?} != {oracle:?}", dual.spectrum)
    })?;

    let codes = common::sweep();
    for &(q, k, index) in &codes {
        let spec = irreducible_cyclic_code(q, k, index).map_err(|e| e.to_string())?;
        let w: WeightEnumerator = weight_spectrum_mceliece(&spec)
            .map_err(|e| e.to_string())?
            .into();
        let dual = macwilliams_dual(&w, q, k as u64, spec.n)
            .map_err(|e| format!("({q},{k},{index}): {e}"))?;
        let back = macwilliams_dual(&dual, q, spec.n - k as u64, spec.n)
            .map_err(|e| format!("({q},{k},{index}): {e}"))?;
        ensure(back == w, || {
            format!("({q},{k},{index}): double transform differs")
        })?;
    }
    Ok(format!(
        "simplex dual matches enumeration; involution holds on {} codes",
        codes.len()
    ))
}

fn criterion_8() -> Outcome {
    let codes = common::sweep();
    for &(q, k, index) in &codes {
        let pipeline = PreparedPipeline::new(q, k, index).map_err(|e| e.to_string())?;
        let spec = pipeline.spec();
        let brute = weight_spectrum_bruteforce(spec).map_err(|e| e.to_string())?;
        ensure(pipeline.reference() == &brute, || {
            format!("({q},{k},{index}): reference differs from enumeration")
        })?;
        let summary = run_trials(&pipeline, pipeline.epsilon_bound(), 0, 100);
        ensure(summary.exact == 100, || {
            format!(
                "({q},{k},{index}): {}/100 exact, first failure {:?}",
                summary.exact,
                summary.failures.first()
            )
        })?;
    }
    let pipeline = PreparedPipeline::new(2, 4, 3).map_err(|e| e.to_string())?;
    let noisy = run_trials(&pipeline, 10.0 * pipeline.epsilon_bound(), 0, 100);
    ensure(noisy.deviations >= 1, || {
        "no deviation at 10x the bound".into()
    })?;
    Ok(format!(
        "100/100 exact on {} codes at the bound; [5,4] at 10x bound: {}/100 deviated",
        codes.len(),
        noisy.deviations
    ))
}

fn criterion_9() -> Outcome {
    let invocations: &[&[&str]] = &[
        &[
            "pipeline",
            "2",
            "4",
            "3",
            "--epsilon",
            "0.125",
            "--seed",
            "7",
            "--json",
        ],
        &[
            "pipeline",
            "2",
            "6",
            "3",
            "--epsilon",
            "0.01",
            "--seed",
            "11",
            "--trials",
            "20",
            "--json",
        ],
        &[
            "pipeline",
            "2",
            "4",
            "3",
            "--epsilon",
            "1.25",
            "--seed",
            "0",
            "--trials",
            "50",
            "--force",
            "--json",
        ],
        &["weights", "3", "4", "16", "--method", "both", "--json"],
        &["dual", "2", "4", "1", "--json"],
        &["gauss", "2", "4", "5", "--beta", "3", "--json"],
        &["cosets", "16", "3", "--members", "--json"],
        &["theta", "3", "3", "2", "--json"],
        &["icq-check", "2", "4", "1", "--epsilon", "0.4", "--json"],
    ];
    let bin = env!("CARGO_BIN_EXE_cyclotome");
    for args in invocations {
        let first = Command::new(bin)
            .args(*args)
            .output()
            .map_err(|e| e.to_string())?;
        let second = Command::new(bin)
            .args(*args)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(first.status.success(), || {
            format!("{args:?} exited with {}", first.status)
        })?;
        ensure(first.stdout == second.stdout, || {
            format!("{args:?} output differs between runs")
        })?;
        serde_json::from_slice::<serde_json::Value>(&first.stdout)
            .map_err(|e| format!("{args:?}: {e}"))?;
    }
    Ok(format!(
        "{} invocations byte-identical across two runs",
        invocations.len()
    ))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("cosets 16 3 listing", criterion_1),
        ("coset count for N = 358701", criterion_2),
        ("formula equals enumeration", criterion_3),
        ("Gauss sum magnitudes", criterion_4),
        ("factorization of x^n - 1", criterion_5),
        ("weight divisibility", criterion_6),
        ("MacWilliams transform", criterion_7),
        ("noisy recovery", criterion_8),
        ("deterministic JSON", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                println!("FAIL criterion {}: {name}: {why} [{elapsed:.2?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn big_counts_survive_json() {
    // Dual spectra overflow u64 quickly; the JSON keeps every digit.
    let spec = irreducible_cyclic_code(2, 12, 1).unwrap();
    let w: WeightEnumerator = weight_spectrum_mceliece(&spec).unwrap().into();
    let dual = macwilliams_dual(&w, 2, 12, spec.n).unwrap();
    assert_eq!(dual.spectrum.total(), BigUint::from(2u32).pow(4095 - 12));
    let json = serde_json::to_string(&dual.spectrum).unwrap();
    let back: cyclotome::weights::WeightSpectrum = serde_json::from_str(&json).unwrap();
    assert_eq!(back, dual.spectrum);
}

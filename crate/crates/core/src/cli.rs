//! The `cyclotome` command line.
//!
//! Exit status: 0 on success, 1 on a domain error (the error's variant name
//! is printed on stderr), 2 on a usage error. Every JSON document carries
//! `"schema": 1`.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::characters::gauss_sum;
use crate::cosets::{coset_leaders, cosets_full, Coset};
use crate::cyclic_poly::{
    factor_xn_minus_1_with_cap, generator_matrix, irreducible_cyclic_code_with_cap, CodeSpec,
    CodeSummary,
};
use crate::error::{Error, Result};
use crate::field::{ExtField, FieldElement, DEFAULT_TABLE_CAP};
use crate::icq::{
    check_membership, divisibility_exponent, epsilon_bound, icq_membership, min_digit_sum,
    run_trials, theta, IcqParams, MembershipReport, PipelineReport, PreparedPipeline, TrialSummary,
};
use crate::weights::{
    big_serde, counts_serde, macwilliams_dual, weight_spectrum_bruteforce_with_cap,
    weight_spectrum_mceliece, WeightSpectrum, DEFAULT_ORACLE_CAP,
};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "cyclotome",
    version,
    about = "Weight enumerators of irreducible cyclic codes"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest field order given log/antilog tables.
    #[arg(long, global = true, default_value_t = DEFAULT_TABLE_CAP)]
    pub table_cap: u64,
    /// Largest code size the brute-force enumerator accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cyclotomic cosets of {0, ..., N-1} under multiplication by p.
    Cosets {
        #[arg(value_name = "N")]
        modulus: u64,
        p: u64,
        /// Include member lists in JSON output.
        #[arg(long)]
        members: bool,
    },
    /// Irreducible factors of x^n - 1 over GF(q).
    Factor { n: u64, q: u64 },
    /// The irreducible cyclic code with parameters (q, k, N).
    Code {
        q: u64,
        k: u32,
        #[arg(value_name = "N")]
        index: u64,
        /// Also print the generator matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// The Gauss sum G(chi_j, e_beta) over GF(q^k).
    Gauss {
        q: u64,
        k: u32,
        j: u64,
        /// beta = alpha^m; defaults to beta = 1.
        #[arg(long, value_name = "m")]
        beta: Option<u64>,
    },
    /// Weight spectrum of the code.
    Weights {
        q: u64,
        k: u32,
        #[arg(value_name = "N")]
        index: u64,
        #[arg(long, value_enum, default_value_t = Method::Mceliece)]
        method: Method,
    },
    /// Weight spectrum of the dual code.
    Dual {
        q: u64,
        k: u32,
        #[arg(value_name = "N")]
        index: u64,
    },
    /// Divisibility exponent and phase-error bound.
    Theta {
        q: u64,
        k: u32,
        #[arg(value_name = "N")]
        index: u64,
    },
    /// Family membership for a phase-error level.
    IcqCheck {
        q: u64,
        k: u32,
        #[arg(value_name = "N")]
        index: u64,
        #[arg(long)]
        epsilon: f64,
        /// Complexity exponent; alpha = N / k^s.
        #[arg(long, default_value_t = 0.0)]
        s: f64,
    },
    /// Spectrum recovery from noisy Gauss-sum phases.
    Pipeline {
        q: u64,
        k: u32,
        #[arg(value_name = "N")]
        index: u64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        seed: u64,
        /// Runs seeds seed, seed + 1, ... and reports a summary.
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// Skip the membership check.
        #[arg(long)]
        force: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mceliece,
    Brute,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosetsOutput {
    pub schema: u32,
    #[serde(rename = "N")]
    pub modulus: u64,
    pub p: u64,
    pub count: u64,
    pub cosets: Vec<Coset>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorOutput {
    pub schema: u32,
    pub n: u64,
    pub q: u64,
    pub count: u64,
    /// Coefficients, low degree first.
    pub factors: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeOutput {
    pub schema: u32,
    pub code: CodeSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_matrix: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussOutput {
    pub schema: u32,
    pub q: u64,
    pub k: u32,
    pub j: u64,
    /// `β = α^beta`.
    pub beta: u64,
    pub re: f64,
    pub im: f64,
    pub gamma: f64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratorCheck {
    #[serde(rename = "A11", with = "big_serde")]
    pub a11: BigUint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightsOutput {
    pub schema: u32,
    pub q: u64,
    pub k: u32,
    #[serde(rename = "N")]
    pub index: u64,
    pub n: u64,
    pub method: Method,
    #[serde(with = "counts_serde")]
    pub spectrum: std::collections::BTreeMap<u64, BigUint>,
    pub enumerator_check: EnumeratorCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualOutput {
    pub schema: u32,
    pub q: u64,
    pub k: u32,
    #[serde(rename = "N")]
    pub index: u64,
    pub n: u64,
    pub dual_dimension: u64,
    #[serde(with = "counts_serde")]
    pub spectrum: std::collections::BTreeMap<u64, BigUint>,
    pub enumerator_check: EnumeratorCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaOutput {
    pub schema: u32,
    pub q: u64,
    pub k: u32,
    #[serde(rename = "N")]
    pub index: u64,
    pub n: u64,
    pub min_digit_sum: u64,
    /// `min_digit_sum / (q - 1)` when that is an integer.
    pub theta: Option<u64>,
    /// Rounding exponent: the ceiling of that quotient.
    pub divisibility_exponent: u64,
    pub weight_divisor: u64,
    pub epsilon_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IcqCheckOutput {
    pub schema: u32,
    pub membership: MembershipReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineOutput {
    pub schema: u32,
    pub report: PipelineReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialsOutput {
    pub schema: u32,
    pub summary: TrialSummary,
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    if !rendered.contains("Usage:") {
                        let _ = writeln!(err, "\n{}", Cli::command().render_usage());
                    }
                    2
                }
            };
        }
    };
    let mut out = PipeWatch {
        inner: out,
        closed: false,
    };
    match execute(&cli, &mut out) {
        Ok(()) => 0,
        // A reader that stops early, as with `| head`, is not a failure.
        Err(_) if out.closed => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            1
        }
    }
}

struct PipeWatch<'a> {
    inner: &'a mut dyn Write,
    closed: bool,
}

impl PipeWatch<'_> {
    fn note<T>(&mut self, r: std::io::Result<T>) -> std::io::Result<T> {
        if let Err(e) = &r {
            self.closed |= e.kind() == std::io::ErrorKind::BrokenPipe;
        }
        r
    }
}

impl Write for PipeWatch<'_> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let r = self.inner.write(buf);
        self.note(r)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        let r = self.inner.flush();
        self.note(r)
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let json = serde_json::to_string_pretty(value).map_err(|e| Error::Output(e.to_string()))?;
    writeln!(out, "{json}").map_err(io_error)
}

fn io_error(e: std::io::Error) -> Error {
    Error::Output(e.to_string())
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(io_error)?
    };
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Cosets {
            modulus,
            p,
            members,
        } => {
            let partition = if members || !cli.json {
                cosets_full(modulus, p)?
            } else {
                coset_leaders(modulus, p)?
            };
            if cli.json {
                emit(
                    out,
                    &CosetsOutput {
                        schema: SCHEMA,
                        modulus,
                        p,
                        count: partition.len() as u64,
                        cosets: partition.cosets,
                    },
                )
            } else {
                write!(out, "{partition}").map_err(io_error)
            }
        }
        Command::Factor { n, q } => {
            let factors = factor_xn_minus_1_with_cap(n, q, cli.table_cap)?;
            if cli.json {
                emit(
                    out,
                    &FactorOutput {
                        schema: SCHEMA,
                        n,
                        q,
                        count: factors.len() as u64,
                        factors: factors.iter().map(|f| f.coeffs().to_vec()).collect(),
                    },
                )
            } else {
                for f in &factors {
                    say!(out, "{f}");
                }
                Ok(())
            }
        }
        Command::Code {
            q,
            k,
            index,
            matrix,
        } => {
            let spec = build(cli, q, k, index)?;
            let rows = matrix.then(|| generator_matrix(&spec));
            if cli.json {
                emit(
                    out,
                    &CodeOutput {
                        schema: SCHEMA,
                        code: spec.summary(),
                        generator_matrix: rows,
                    },
                )
            } else {
                say!(
                    out,
                    "[{}, {}] irreducible cyclic code over GF({q}), N = {index}",
                    spec.n,
                    k
                );
                say!(out, "field: GF({q}^{k}) modulo {}", spec.field.modulus());
                say!(out, "generator: {}", spec.generator);
                say!(out, "check: {}", spec.check);
                for row in rows.iter().flatten() {
                    let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                    say!(out, "{}", cells.join(" "));
                }
                Ok(())
            }
        }
        Command::Gauss { q, k, j, beta } => {
            let field = ExtField::with_cap(q, k, cli.table_cap)?;
            let m = beta.unwrap_or(0) % field.group_order();
            let g = gauss_sum(j, FieldElement::Exp(m), &field)?;
            if cli.json {
                emit(
                    out,
                    &GaussOutput {
                        schema: SCHEMA,
                        q,
                        k,
                        j,
                        beta: m,
                        re: g.re,
                        im: g.im,
                        gamma: g.gamma,
                        magnitude: g.magnitude,
                    },
                )
            } else {
                say!(out, "re: {}", g.re);
                say!(out, "im: {}", g.im);
                say!(out, "gamma: {}", g.gamma);
                say!(out, "magnitude: {}", g.magnitude);
                Ok(())
            }
        }
        Command::Weights {
            q,
            k,
            index,
            method,
        } => {
            let spec = build(cli, q, k, index)?;
            let spectrum = match method {
                Method::Mceliece => weight_spectrum_mceliece(&spec)?,
                Method::Brute => weight_spectrum_bruteforce_with_cap(&spec, cli.oracle_cap)?,
                Method::Both => {
                    let formula = weight_spectrum_mceliece(&spec)?;
                    let brute = weight_spectrum_bruteforce_with_cap(&spec, cli.oracle_cap)?;
                    if formula != brute {
                        return Err(Error::SpectrumMismatch(
                            "formula and enumeration disagree".into(),
                        ));
                    }
                    formula
                }
            };
            let a11 = spectrum.total();
            if cli.json {
                emit(
                    out,
                    &WeightsOutput {
                        schema: SCHEMA,
                        q,
                        k,
                        index,
                        n: spec.n,
                        method,
                        spectrum: spectrum.counts,
                        enumerator_check: EnumeratorCheck { a11 },
                    },
                )
            } else {
                print_spectrum(out, &spectrum)?;
                say!(out, "A(1,1) = {a11}");
                Ok(())
            }
        }
        Command::Dual { q, k, index } => {
            let spec = build(cli, q, k, index)?;
            let primal = weight_spectrum_mceliece(&spec)?;
            let dual = macwilliams_dual(&primal.into(), q, k as u64, spec.n)?.spectrum;
            let a11 = dual.total();
            if cli.json {
                emit(
                    out,
                    &DualOutput {
                        schema: SCHEMA,
                        q,
                        k,
                        index,
                        n: spec.n,
                        dual_dimension: spec.n - k as u64,
                        spectrum: dual.counts,
                        enumerator_check: EnumeratorCheck { a11 },
                    },
                )
            } else {
                print_spectrum(out, &dual)?;
                say!(out, "A(1,1) = {a11}");
                Ok(())
            }
        }
        Command::Theta { q, k, index } => {
            let spec = build(cli, q, k, index)?;
            let exponent = divisibility_exponent(&spec);
            let output = ThetaOutput {
                schema: SCHEMA,
                q,
                k,
                index,
                n: spec.n,
                min_digit_sum: min_digit_sum(q, spec.n, index),
                theta: theta(&spec).ok(),
                divisibility_exponent: exponent,
                weight_divisor: q.pow(exponent as u32 - 1),
                epsilon_bound: epsilon_bound(&spec),
            };
            if cli.json {
                emit(out, &output)
            } else {
                say!(out, "min digit sum: {}", output.min_digit_sum);
                match output.theta {
                    Some(t) => say!(out, "theta: {t}"),
                    None => say!(
                        out,
                        "theta: not an integer ({} / {})",
                        output.min_digit_sum,
                        q - 1
                    ),
                }
                say!(out, "weights divisible by: {}", output.weight_divisor);
                say!(out, "epsilon bound: {}", output.epsilon_bound);
                Ok(())
            }
        }
        Command::IcqCheck {
            q,
            k,
            index,
            epsilon,
            s,
        } => {
            let alpha = index as f64 / (k as f64).powf(s);
            let report = icq_membership(IcqParams {
                q,
                k,
                s,
                alpha,
                epsilon,
            });
            if cli.json {
                emit(
                    out,
                    &IcqCheckOutput {
                        schema: SCHEMA,
                        membership: report,
                    },
                )
            } else {
                print_membership(out, &report)
            }
        }
        Command::Pipeline {
            q,
            k,
            index,
            epsilon,
            seed,
            trials,
            force,
        } => {
            check_membership(q, k, index, epsilon, force)?;
            let pipeline = PreparedPipeline::with_cap(q, k, index, cli.table_cap)?;
            if trials <= 1 {
                let report = pipeline.run(epsilon, seed)?;
                if cli.json {
                    emit(
                        out,
                        &PipelineOutput {
                            schema: SCHEMA,
                            report,
                        },
                    )
                } else {
                    say!(
                        out,
                        "theta: {}, epsilon: {} (bound {})",
                        report.theta,
                        report.epsilon,
                        report.epsilon_max
                    );
                    say!(
                        out,
                        "oracle calls: {}, cosets: {}",
                        report.oracle_calls,
                        report.num_cosets
                    );
                    print_spectrum(out, &report.recovered_spectrum)?;
                    say!(out, "exact: {}", report.exact);
                    Ok(())
                }
            } else {
                let summary = run_trials(&pipeline, epsilon, seed, trials);
                if cli.json {
                    emit(
                        out,
                        &TrialsOutput {
                            schema: SCHEMA,
                            summary,
                        },
                    )
                } else {
                    say!(
                        out,
                        "epsilon: {} (bound {})",
                        summary.epsilon,
                        summary.epsilon_max
                    );
                    say!(out, "exact: {}/{}", summary.exact, summary.trials);
                    for f in &summary.failures {
                        say!(out, "seed {}: {}", f.seed, f.detail);
                    }
                    Ok(())
                }
            }
        }
    }
}

fn build(cli: &Cli, q: u64, k: u32, index: u64) -> Result<CodeSpec> {
    irreducible_cyclic_code_with_cap(q, k, index, cli.table_cap)
}

fn print_spectrum(out: &mut dyn Write, spectrum: &WeightSpectrum) -> Result<()> {
    for (w, c) in &spectrum.counts {
        say!(out, "{w} {c}");
    }
    Ok(())
}

fn print_membership(out: &mut dyn Write, r: &MembershipReport) -> Result<()> {
    let mark = |ok: bool| if ok { "pass" } else { "fail" };
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
    say!(
        out,
        "integrality: {} (alpha k^s = {}, N = {}, n = {})",
        mark(r.integrality.passed),
        r.integrality.alpha_k_s,
        opt(r.integrality.index),
        opt(r.integrality.n)
    );
    say!(
        out,
        "order: {} (ord_n(q) = {}, k = {})",
        mark(r.order.passed),
        opt(r.order.order),
        r.order.k
    );
    say!(
        out,
        "epsilon: {} (epsilon = {}, bound = {})",
        mark(r.epsilon.passed),
        r.epsilon.epsilon,
        r.epsilon.bound.map_or("-".to_string(), |b| b.to_string())
    );
    match r.failure {
        None => say!(out, "member: yes"),
        Some(f) => say!(out, "member: no ({f:?})"),
    }
    Ok(())
}

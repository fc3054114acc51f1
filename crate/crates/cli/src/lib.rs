//! The `stirling` command-line tool.
//!
//! Every subcommand prints one [`OutputRecord`] as JSON, CSV or aligned
//! text. Exit status is 0 on success, 2 for usage errors (including
//! arguments outside a function's domain) and 1 for numerical failures.

pub mod output;
pub mod parse;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use stirling_core::asymptotic::{
    self, constant_claim_partial_sums, euler_constant_claim, factor_series_coefficients,
    stirling_coefficient, stirling_terms, DEFAULT_MAX_TERMS, HALF_LN_TWO_PI,
};
use stirling_core::bernoulli::{bernoulli, zeta_even_coefficient};
use stirling_core::charpoly::{polynomial_roots, CharacteristicOperator, SuperposedSolution};
use stirling_core::euler_maclaurin::{em_sum_error_bound, em_sum_with_head};
use stirling_core::oracle::{lgamma_ref, sum_direct, zeta_direct};
use stirling_core::oscillatory::{resum_coefficients, resum_term_check};
use stirling_core::{Error, EvalReport, Forcing};

pub use output::{Cell, Format, OutputRecord, Row};
use parse::{parse_coefficients, parse_forcing, parse_real};

pub const DEFAULT_MODES: u64 = 20;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "stirling", version, about = "Stirling series, Bernoulli numbers and Euler–Maclaurin tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

// An alias keeps clap from treating the list as a repeated flag.
type Coefficients = Vec<f64>;

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact Bernoulli numbers B_0..B_max.
    Bernoulli {
        #[arg(long, default_value_t = 12)]
        max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// ζ(2n) = q·π^{2n} for n = 1..max, with the exact q.
    Zeta {
        #[arg(long, default_value_t = 8)]
        max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Euler–Maclaurin sum of g(k) for k = a..b, compared with direct summation.
    Emsum {
        /// One of 1, x, x^n, exp(a x), log(x), 1/x.
        #[arg(long, default_value = "1/x", value_parser = parse_forcing)]
        g: Forcing,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, default_value_t = 1000, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, default_value_t = 5)]
        order: usize,
        /// Terms added directly before the antidifference takes over.
        #[arg(long, default_value_t = 0)]
        head: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Terms of the Stirling series at x, marking the optimal truncation.
    Stirling {
        #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// log Γ(x) from the corrected and the flawed series, against the oracle.
    Lgamma {
        #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Flawed minus corrected series, next to ½ log x.
    Discrepancy {
        #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
        x: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Exact coefficients c_0..c_m of exp(Stirling series) in powers of 1/x.
    FactorCoeffs {
        #[arg(long, visible_alias = "max", default_value_t = 3)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Both sides of the mode resummation identity for n = 0..max.
    VerifyResum {
        #[arg(long, value_parser = parse_real, default_value = "1", allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 8)]
        max: usize,
        /// Modes in the direct ζ summation column.
        #[arg(long, default_value_t = DEFAULT_MODES)]
        modes: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Roots of a constant-coefficient operator and the residual of the
    /// superposed simple-root solution.
    SolveOde {
        /// a_0,a_1,...,a_n for a_0 f + a_1 f' + ... + a_n f^(n).
        #[arg(long, value_parser = parse_coefficients, allow_hyphen_values = true)]
        coeffs: Coefficients,
        /// One of 1, x, x^n, exp(a x), log(x), 1/x.
        #[arg(long, default_value = "1", value_parser = parse_forcing)]
        forcing: Forcing,
        /// Lower limit of the mode integrals.
        #[arg(long, value_parser = parse_real, default_value = "0", allow_negative_numbers = true)]
        x_lo: f64,
        /// Right end of the residual sample range.
        #[arg(long, value_parser = parse_real, default_value = "2", allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, value_parser = parse_real, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Reference values: log Γ(x), or ζ(s) by direct summation with --s.
    Oracle {
        #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
        s: Option<f64>,
        #[arg(long, default_value_t = 1_000_000)]
        terms: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Partial sums of 1 - Σ B_2n/((2n-1)2n) against ½ log 2π.
    ConstantClaim {
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// What a run produced: the exit status and both output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Parse(_) => 2,
        _ => 1,
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => Outcome { code: 0, stdout: out, stderr: String::new() },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn report_row(form: &str, r: &EvalReport) -> Row {
    row! {
        "form" => form,
        "value" => r.value,
        "truncation_index" => r.truncation_index,
        "error_estimate" => r.error_estimate,
        "oracle_value" => r.oracle_value,
        "abs_error" => r.abs_error,
    }
}

fn execute(command: Command) -> Result<String, Error> {
    let (record, format) = match command {
        Command::Bernoulli { max, common } => {
            let mut rec = OutputRecord::new("bernoulli", row! { "max" => max });
            for n in 0..=max {
                let b = bernoulli(n);
                rec.results.push(row! { "n" => n, "value" => b.to_string(), "approx" => b.to_f64() });
            }
            (rec, common.format)
        }
        Command::Zeta { max, common } => {
            let mut rec = OutputRecord::new("zeta", row! { "max" => max });
            for n in 1..=max {
                let q = zeta_even_coefficient(n)?;
                let value = q.to_f64() * std::f64::consts::PI.powi(2 * n as i32);
                rec.results.push(row! {
                    "s" => 2 * n,
                    "coefficient_of_pi_power" => q.to_string(),
                    "value" => value,
                });
            }
            (rec, common.format)
        }
        Command::Emsum { g, a, b, order, head, common } => {
            let value = em_sum_with_head(&g, a, b, order, head)?;
            let bound = em_sum_error_bound(&g, a, b, order, head)?;
            let direct = sum_direct(&g, a, b)?;
            let mut rec = OutputRecord::new(
                "emsum",
                row! { "g" => g.to_string(), "a" => a, "b" => b, "order" => order, "head" => head },
            );
            rec.results.push(row! {
                "em_sum" => value,
                "error_bound" => bound,
                "direct_sum" => direct,
                "abs_diff" => (value - direct).abs(),
            });
            (rec, common.format)
        }
        Command::Stirling { x, max, common } => {
            let terms = stirling_terms(x, max)?;
            let n_opt = asymptotic::optimal_truncation(&terms);
            let mut rec = OutputRecord::new("stirling", row! { "x" => x, "max" => max });
            for (i, t) in terms.iter().enumerate() {
                rec.results.push(row! {
                    "n" => i + 1,
                    "coefficient" => stirling_coefficient(i + 1).to_string(),
                    "term" => *t,
                    "kept" => i < n_opt,
                });
            }
            (rec, common.format)
        }
        Command::Lgamma { x, max, common } => {
            let corrected = asymptotic::log_gamma_corrected(x, max)?;
            let euler = asymptotic::log_gamma_euler(x, max)?;
            let mut rec = OutputRecord::new("lgamma", row! { "x" => x, "max" => max });
            rec.results.push(report_row("corrected", &corrected));
            rec.results.push(report_row("euler", &euler));
            (rec, common.format)
        }
        Command::Discrepancy { x, common } => {
            let d = asymptotic::discrepancy(x)?;
            let half_log = 0.5 * x.ln();
            let mut rec = OutputRecord::new("discrepancy", row! { "x" => x });
            rec.results.push(row! {
                "discrepancy" => d,
                "half_log_x" => half_log,
                "abs_diff" => (d - half_log).abs(),
            });
            (rec, common.format)
        }
        Command::FactorCoeffs { m, common } => {
            let coeffs = factor_series_coefficients(m)?;
            let mut rec = OutputRecord::new("factor-coeffs", row! { "m" => m });
            for (j, c) in coeffs.iter().enumerate() {
                rec.results.push(row! { "j" => j, "coefficient" => c.to_string() });
            }
            (rec, common.format)
        }
        Command::VerifyResum { x, max, modes, common } => {
            if modes == 0 {
                return Err(Error::Domain("--modes must be at least 1".into()));
            }
            let mut rec =
                OutputRecord::new("verify-resum", row! { "x" => x, "max" => max, "modes" => modes });
            for n in 0..=max {
                let (lhs, rhs) = resum_term_check(n, x)?;
                let (lq, rq) = resum_coefficients(n);
                // Σ_{k≤K} 2/k^{2n+2} · (-1)^n (2n)! / ((2π)^{2n+2} x^{2n+1})
                let s = (2 * n + 2) as f64;
                let zeta = zeta_direct(s, modes)?;
                let scale = (if n % 2 == 0 { 2.0 } else { -2.0 })
                    * (1..=2 * n).map(|i| i as f64).product::<f64>()
                    / ((2.0 * std::f64::consts::PI).powf(s) * x.powi(2 * n as i32 + 1));
                rec.results.push(row! {
                    "n" => n,
                    "lhs" => lhs,
                    "rhs" => rhs,
                    "abs_diff" => (lhs - rhs).abs(),
                    "exact_equal" => lq == rq,
                    "direct_lhs" => scale * zeta.value,
                    "direct_tail_bound" => (scale * zeta.guaranteed_abs_error).abs(),
                });
            }
            (rec, common.format)
        }
        Command::SolveOde { coeffs, forcing, x_lo, x, samples, tol, common } => {
            let op = CharacteristicOperator::from_real(&coeffs)?;
            let roots = polynomial_roots(&op, tol)?;
            let mut rec = OutputRecord::new(
                "solve-ode",
                row! {
                    "coeffs" => coeffs.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
                    "forcing" => forcing.to_string(),
                    "x_lo" => x_lo,
                    "x" => x,
                    "tol" => tol,
                },
            );
            for (r, m) in &roots.roots {
                let dp: Complex64 = op.eval_derivative(*r);
                rec.results.push(row! {
                    "kind" => "root",
                    "re" => r.re,
                    "im" => r.im,
                    "multiplicity" => *m,
                    "basis" => format!("exp(({}{:+}i) x)", r.re, r.im),
                    "p_prime_abs" => dp.norm(),
                });
            }
            let solution = SuperposedSolution::new(&op, &forcing, x_lo, tol)?;
            let count = samples.max(1);
            for i in 0..count {
                let t = if count == 1 {
                    x
                } else {
                    x_lo + (x - x_lo) * (i + 1) as f64 / count as f64
                };
                rec.results.push(row! {
                    "kind" => "residual",
                    "x" => t,
                    "residual" => solution.residual(&[t])?,
                });
            }
            (rec, common.format)
        }
        Command::Oracle { x, s, terms, common } => {
            let mut rec = OutputRecord::new("oracle", row! { "x" => x, "s" => s, "terms" => terms });
            if x.is_none() && s.is_none() {
                return Err(Error::Domain("oracle needs --x or --s".into()));
            }
            if let Some(x) = x {
                let v = lgamma_ref(x)?;
                rec.results.push(row! {
                    "quantity" => "lgamma",
                    "value" => v.value,
                    "guaranteed_abs_error" => v.guaranteed_abs_error,
                    "method" => format!("{:?}", v.method),
                });
            }
            if let Some(s) = s {
                let v = zeta_direct(s, terms)?;
                rec.results.push(row! {
                    "quantity" => "zeta",
                    "value" => v.value,
                    "guaranteed_abs_error" => v.guaranteed_abs_error,
                    "method" => format!("{:?}", v.method),
                });
            }
            (rec, common.format)
        }
        Command::ConstantClaim { max, common } => {
            let report = euler_constant_claim(max)?;
            let sums = constant_claim_partial_sums(max)?;
            let terms = stirling_terms(1.0, max)?;
            let mut rec = OutputRecord::new(
                "constant-claim",
                row! {
                    "max" => max,
                    "target" => HALF_LN_TWO_PI,
                    "optimal_index" => report.truncation_index,
                    "optimal_value" => report.value,
                },
            );
            for (i, (s, t)) in sums.iter().zip(&terms).enumerate() {
                rec.results.push(row! {
                    "n" => i + 1,
                    "term" => *t,
                    "partial_sum" => *s,
                    "abs_error" => (s - HALF_LN_TWO_PI).abs(),
                    "optimal" => i + 1 == report.truncation_index,
                });
            }
            (rec, common.format)
        }
    };
    Ok(record.render(format))
}

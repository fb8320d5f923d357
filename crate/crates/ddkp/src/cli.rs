//! Command-line entry point.
//!
//! Exit codes: 0 everything verified, 1 a verification failed, 2 usage or
//! parse error, 3 engine error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ddkp_core::oracle::{zero_test, ZeroTestConfig, DEFAULT_SEED};
use ddkp_core::symmetry::{builtin, BuiltinName, Suite, SuiteConfig, VerificationReport};
use ddkp_core::{
    directional_derivative_with, frechet_operator, normalize_with, Error as CoreError, Expression,
    Summation,
};
use serde_json::json;

use crate::cache::HierarchyCache;
use crate::error::Error;
use crate::parse::parse_tree;
use crate::print::{print_canonical, print_latex};
use crate::report::{render_text, report_json, verdict_json, verdict_name};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;

/// Overrides the default oracle seed.
pub const SEED_ENV: &str = "DDKP_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "ddkp",
    version,
    about = "Symmetry calculus for the differential-difference KP equation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical normal form.
    Normalize {
        expr: String,
        #[arg(long, value_enum, default_value_t = Sums::Strict)]
        sums: Sums,
    },
    /// Print the normal form as LaTeX.
    Latex {
        expr: String,
        #[arg(long, value_enum, default_value_t = Sums::Strict)]
        sums: Sums,
    },
    /// Lie bracket [F, G].
    Bracket {
        f: String,
        g: String,
        #[arg(long, value_enum, default_value_t = Sums::Polynomial)]
        sums: Sums,
    },
    /// Fréchet derivative of F as an operator, or applied to a direction.
    Frechet {
        f: String,
        #[arg(long)]
        direction: Option<String>,
        #[arg(long, value_enum, default_value_t = Sums::Polynomial)]
        sums: Sums,
    },
    /// Run one of the verification suites.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Build H1 = K, H2, ... with the master symmetry and check commutativity.
    Hierarchy {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Time-dependent symmetry exp(-t ad_K) G0.
    Timesym {
        #[arg(long)]
        generator: String,
        #[arg(long, default_value_t = 16)]
        cap: usize,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Exact randomized evaluation.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// [K, G] = 0.
    Symmetry {
        #[arg(long, default_value = "G3")]
        generator: String,
    },
    /// W is a master symmetry and [W, K] = -2 G3.
    Master,
    /// The sl(2) relations among M, N, H.
    Sl2,
    /// [H, ad_N2^m K] = (m + 2) ad_N2^m K.
    Weights {
        #[arg(long)]
        m: usize,
    },
    /// ad_K^{l+1} ad_N^l ad_N2^m K = 0.
    Nilpotent {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OracleAction {
    /// Decide whether EXPR vanishes on random states.
    Zero {
        expr: String,
        #[arg(long)]
        trials: Option<u32>,
        #[arg(long)]
        width: Option<u32>,
        #[arg(long)]
        xdeg: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value_t = Sums::Strict)]
        sums: Sums,
    },
}

#[derive(Args, Debug)]
struct VerifyOpts {
    /// Machine-readable report.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<u32>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Sums {
    /// Reject (S-1)^{-1} of a pure coefficient.
    Strict,
    /// Sum polynomial coefficients from n = 0.
    Polynomial,
}

impl From<Sums> for Summation {
    fn from(s: Sums) -> Self {
        match s {
            Sums::Strict => Summation::QuasiLocal,
            Sums::Polynomial => Summation::Polynomial,
        }
    }
}

struct Outcome {
    code: i32,
    stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
        }
    }
}

fn default_seed() -> Result<u64, String> {
    match std::env::var(SEED_ENV) {
        Err(_) => Ok(DEFAULT_SEED),
        Ok(s) => {
            let t = s.trim();
            let parsed = match t.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => t.parse(),
            };
            parsed.map_err(|_| format!("{SEED_ENV}={s} is not an unsigned integer"))
        }
    }
}

fn zero_config(seed: Option<u64>, trials: Option<u32>, default_seed: u64) -> ZeroTestConfig {
    let mut cfg = ZeroTestConfig::default().with_seed(seed.unwrap_or(default_seed));
    if let Some(t) = trials {
        cfg = cfg.with_trials(t);
    }
    cfg
}

fn suite(opts: &VerifyOpts, default_seed: u64) -> Suite {
    Suite::new(SuiteConfig {
        zero_test: zero_config(opts.seed, opts.trials, default_seed),
        ..SuiteConfig::default()
    })
}

fn expr(src: &str, sums: Summation) -> Result<Expression, Error> {
    Ok(normalize_with(&parse_tree(src)?, sums)?)
}

fn emit(report: &VerificationReport, json: bool, extra: Option<serde_json::Value>) -> Outcome {
    let stdout = if json {
        let mut v = report_json(report);
        if let Some(extra) = extra {
            v["result"] = extra;
        }
        serde_json::to_string_pretty(&v).expect("reports serialize") + "\n"
    } else {
        render_text(report)
    };
    Outcome {
        code: if report.passed() {
            EXIT_OK
        } else {
            EXIT_FAILED
        },
        stdout,
    }
}

fn timed<T>(
    f: impl FnOnce() -> Result<T, CoreError>,
) -> Result<(T, std::time::Duration), CoreError> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed()))
}

fn verify(target: VerifyTarget, opts: &VerifyOpts, seed: u64) -> Result<Outcome, Error> {
    let s = suite(opts, seed);
    let (mut report, elapsed) = match target {
        VerifyTarget::Symmetry { generator } => {
            let g = expr(&generator, Summation::QuasiLocal)?;
            timed(|| s.is_symmetry(&builtin(BuiltinName::K), &g))?
        }
        VerifyTarget::Master => timed(|| s.master_symmetry_report())?,
        VerifyTarget::Sl2 => timed(|| s.sl2_verify())?,
        VerifyTarget::Weights { m } => timed(|| s.weight_verify(m))?,
        VerifyTarget::Nilpotent { m, l } => timed(|| s.nilpotency_verify(m, l))?,
    };
    report.elapsed = Some(elapsed);
    Ok(emit(&report, opts.json, None))
}

fn execute(cli: Cli, seed: u64) -> Result<Outcome, Error> {
    match cli.command {
        Command::Normalize { expr: src, sums } => Ok(Outcome::ok(
            print_canonical(&expr(&src, sums.into())?) + "\n",
        )),
        Command::Latex { expr: src, sums } => {
            Ok(Outcome::ok(print_latex(&expr(&src, sums.into())?) + "\n"))
        }
        Command::Bracket { f, g, sums } => {
            let sums = sums.into();
            let (f, g) = (expr(&f, sums)?, expr(&g, sums)?);
            let b = ddkp_core::lie_bracket_with(&f, &g, sums)?;
            Ok(Outcome::ok(print_canonical(&b) + "\n"))
        }
        Command::Frechet { f, direction, sums } => {
            let sums = sums.into();
            let f = expr(&f, sums)?;
            let out = match direction {
                Some(v) => {
                    let v = expr(&v, sums)?;
                    print_canonical(&directional_derivative_with(&f, &v, sums)?)
                }
                None => {
                    let op = frechet_operator(&f);
                    if op.is_empty() {
                        "0".to_string()
                    } else {
                        op.iter()
                            .map(|t| t.to_string())
                            .collect::<Vec<_>>()
                            .join(" + ")
                    }
                }
            };
            Ok(Outcome::ok(out + "\n"))
        }
        Command::Verify { target, opts } => verify(target, &opts, seed),
        Command::Hierarchy { depth, out, opts } => {
            let s = suite(&opts, seed);
            let (h, elapsed) = timed(|| s.hierarchy(depth))?;
            let mut report = h.report.clone();
            report.elapsed = Some(elapsed);
            if let Some(path) = &out {
                HierarchyCache::new(&h, s.config()).save(path)?;
                report
                    .notes
                    .push(format!("cache written to {}", path.display()));
            }
            let members: Vec<String> = h.members.iter().map(print_canonical).collect();
            let mut o = emit(&report, opts.json, Some(json!({ "members": members })));
            if !opts.json {
                for (i, m) in members.iter().enumerate() {
                    o.stdout.push_str(&format!("H{} = {m}\n", i + 1));
                }
            }
            Ok(o)
        }
        Command::Timesym {
            generator,
            cap,
            opts,
        } => {
            let s = suite(&opts, seed);
            let g0 = expr(&generator, Summation::QuasiLocal)?;
            let start = Instant::now();
            let ts = s.time_symmetry(&g0, cap)?;
            let mut report = s.verify_time_symmetry(&ts.polynomial)?;
            report.checks.insert(0, ts.termination.clone());
            report.elapsed = Some(start.elapsed());
            for (k, c) in ts.polynomial.terms() {
                report
                    .notes
                    .push(format!("t^{k} coefficient: {}", print_canonical(c)));
            }
            let result = json!({
                "polynomial": ts.polynomial.to_string(),
                "latex": print_latex(&ts.polynomial),
                "degree": ts.polynomial.degree(),
            });
            let mut o = emit(&report, opts.json, Some(result));
            if !opts.json {
                o.stdout.push_str(&format!("G(t) = {}\n", ts.polynomial));
                o.stdout
                    .push_str(&format!("latex: {}\n", print_latex(&ts.polynomial)));
            }
            Ok(o)
        }
        Command::Oracle {
            action:
                OracleAction::Zero {
                    expr: src,
                    trials,
                    width,
                    xdeg,
                    seed: s,
                    json,
                    sums,
                },
        } => {
            let e = expr(&src, sums.into())?;
            let mut cfg = zero_config(s, trials, seed);
            if let Some(w) = width {
                cfg.support_width = w;
            }
            if let Some(d) = xdeg {
                cfg.xdeg_max = d;
            }
            let verdict = zero_test(&e, &cfg)?;
            let code = if verdict.is_exact_zero() {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            let stdout = if json {
                let v = json!({
                    "expression": print_canonical(&e),
                    "oracle": verdict_json(&verdict),
                    "parameters": crate::report::parameters_json(&cfg),
                });
                serde_json::to_string_pretty(&v).expect("verdicts serialize") + "\n"
            } else {
                let mut r = VerificationReport::new("oracle zero test", cfg);
                r.checks.push(ddkp_core::symmetry::Check {
                    label: format!("{} = 0", print_canonical(&e)),
                    outcome: ddkp_core::symmetry::Outcome::Identity {
                        symbolic: if e.is_zero() {
                            ddkp_core::symmetry::SymbolicVerdict::SyntacticZero
                        } else {
                            ddkp_core::symmetry::SymbolicVerdict::NonzeroNormalForm {
                                terms: e.len(),
                            }
                        },
                        oracle: Some(verdict.clone()),
                        syntactic_only: false,
                    },
                });
                let mut text = render_text(&r);
                text.push_str(&format!("verdict: {}\n", verdict_name(&verdict)));
                text
            };
            Ok(Outcome { code, stdout })
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_USAGE,
        Error::Engine(CoreError::InvalidArgument(_) | CoreError::DepthCap { .. }) => EXIT_USAGE,
        Error::Engine(_) | Error::Json(_) | Error::Io { .. } => EXIT_ENGINE,
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let seed = match default_seed() {
        Ok(s) => s,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match execute(cli, seed) {
        Ok(o) => {
            let _ = stdout.write_all(o.stdout.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            error_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["ddkp"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn normalize_and_latex() {
        assert_eq!(
            call(&["normalize", "N"]),
            (0, "-1/2*x\n".into(), String::new())
        );
        let (code, out, _) = call(&["latex", "H"]);
        assert_eq!((code, out.as_str()), (0, "-xu_{x}-u\n"));
    }

    #[test]
    fn bracket_w_k_is_minus_two_g3() {
        let (code, out, _) = call(&["bracket", "W", "K"]);
        assert_eq!(code, 0);
        let want = print_canonical(&builtin(BuiltinName::G3).scale(&ddkp_core::rational::int(-2)));
        assert_eq!(out.trim_end(), want);
    }

    #[test]
    fn frechet_forms() {
        let (code, out, _) = call(&["frechet", "H"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim_end(), "(-1) + (-x) Dx");
        let (_, out, _) = call(&["frechet", "u^2", "--direction", "u[0,1]"]);
        assert_eq!(out.trim_end(), "2*u*u[0,1]");
        let (_, out, _) = call(&["frechet", "x"]);
        assert_eq!(out.trim_end(), "0");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["verify", "sl2"]).0, EXIT_OK);
        assert_eq!(
            call(&["oracle", "zero", "Theta(u)*u - u*Theta(u)"]).0,
            EXIT_OK
        );
        let (code, out, _) = call(&["oracle", "zero", "Theta(u*u[0,1]) - u*Theta(u[0,1])"]);
        assert_eq!(code, EXIT_FAILED);
        assert!(out.contains("witness"));
        assert_eq!(call(&["normalize", "u +"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        let (code, _, err) = call(&["normalize", "Theta(x)"]);
        assert_eq!(code, EXIT_ENGINE);
        assert!(err.contains("non-summable"));
        assert_eq!(
            call(&["verify", "nilpotent", "--m", "0", "--l", "3"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["timesym", "--generator", "u", "--cap", "2"]).0,
            EXIT_ENGINE
        );
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn json_output_is_deterministic() {
        let a = call(&["verify", "symmetry", "--json", "--trials", "3"]);
        let b = call(&["verify", "symmetry", "--json", "--trials", "3"]);
        assert_eq!(a.0, EXIT_OK);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
        assert_eq!(v["parameters"]["trials"], 3);
    }
}

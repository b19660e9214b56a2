//! Command-line front end: argument parsing, validation and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bp_fgl::{load_or_build, verify_lemma4_with_law, FglContext, TruncSeries};
use crate::chern_integral::{chern_gap_report, verify_lemma1, Orientation, VerifyOptions};
use crate::error::{Error, Result};
use crate::group_rep::{census_report, is_quadratic_residue, GnEpsilonConfig};
use crate::report::{serialize_report, to_json, OutputFormat, VerificationReport};
use crate::report::{SCHEMA_VERSION, TOOL_VERSION};

/// Environment variable read for the log filter.
pub const LOG_ENV: &str = "CHERN_GAP_LOG";

/// Parameter tuples `(p, n, ε)` swept when none are given.
pub const DEFAULT_SWEEP: [(u64, u32, i64); 5] =
    [(5, 4, 1), (5, 4, 2), (5, 5, 1), (7, 4, 1), (7, 4, 3)];

#[derive(Parser, Debug)]
#[command(
    name = "chern-gap",
    version,
    about = "Chern classes of the p-groups G(n, epsilon) restricted to a cyclic subgroup"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: OutputFormat,
    /// Directory for cached formal group law coefficients.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Order and irreducible representations of G(n, epsilon).
    Info(GroupArgs),
    /// Run one of the verifications.
    Verify {
        #[command(subcommand)]
        claim: VerifyCommand,
    },
    /// Formal group law utilities.
    Fgl {
        #[command(subcommand)]
        action: FglCommand,
    },
    /// Every verification over a list of parameter tuples.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long, default_value_t = 5)]
    p: u64,
    #[arg(long, default_value_t = 4)]
    n: u32,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    epsilon: i64,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Truncation in cohomological degree (even).
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    orientation: Orientation,
    #[arg(long, hide = true)]
    corrupt_expectation: bool,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Res Cor(γ^(p-1) β^m) = -β′^(m+p-1) and the restricted Chern image.
    Lemma1 {
        #[command(flatten)]
        check: CheckArgs,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
    },
    /// β′^(p+1) is hit by a transfer but missed by the Chern image.
    Gap {
        #[command(flatten)]
        check: CheckArgs,
    },
    /// The same gap in Brown-Peterson cohomology, modulo (p, v1, v2, ...).
    Lemma4 {
        #[command(flatten)]
        check: CheckArgs,
        /// Number of v-generators.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum FglCommand {
    /// Print log, exp, F(x, y) and some multiples [m]x.
    Show {
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Comma-separated multiples to print (default: 2 and p).
        #[arg(long, value_delimiter = ',')]
        m: Vec<u64>,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Comma-separated primes; with --n and --epsilon forms a cartesian product.
    #[arg(long, value_delimiter = ',')]
    p: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    epsilon: Vec<i64>,
    #[arg(long, default_value_t = 4)]
    m_max: u32,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, value_enum, default_value_t)]
    orientation: Orientation,
    #[arg(long, hide = true)]
    corrupt_expectation: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunCommand {
    Info,
    Lemma1,
    Gap,
    Lemma4,
    FglShow,
    Sweep,
}

/// Validated parameters of one invocation. Degrees here are half-degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: RunCommand,
    pub p: u64,
    pub n: u32,
    pub epsilon: u64,
    pub m_max: u32,
    pub max_half_degree: u32,
    pub k: usize,
    pub format: OutputFormat,
    pub cache_dir: Option<PathBuf>,
    pub orientation: Orientation,
    pub corrupt_expectation: bool,
    /// Sweep only: validated `(p, n, ε)`, sorted.
    pub sweep: Vec<(u64, u32, u64)>,
    /// `fgl show` only.
    pub multiples: Vec<u64>,
}

fn usage(msg: impl std::fmt::Display) -> clap::Error {
    Cli::command().error(ErrorKind::ValueValidation, msg)
}

fn half_degree(max_degree: Option<u32>, default: u32) -> std::result::Result<u32, clap::Error> {
    match max_degree {
        None => Ok(default),
        Some(d) if d % 2 == 1 => Err(usage(format!(
            "--max-degree must be even (cohomological degree), got {d}"
        ))),
        Some(d) => Ok(d / 2),
    }
}

fn group_config(
    p: u64,
    n: u32,
    epsilon: i64,
    d: u32,
) -> std::result::Result<GnEpsilonConfig, clap::Error> {
    let cfg = GnEpsilonConfig::with_any_epsilon(p, n, epsilon, d).map_err(|e| {
        usage(match e {
            Error::Config(m) => m,
            other => other.to_string(),
        })
    })?;
    if cfg.epsilon != 1 && is_quadratic_residue(cfg.epsilon, p) {
        log::warn!(
            "epsilon = {} is a square mod {p}; G({n}, {}) is isomorphic to G({n}, 1)",
            cfg.epsilon,
            cfg.epsilon
        );
    }
    Ok(cfg)
}

fn set_group(cfg: &mut RunConfig, g: &GroupArgs, d: u32) -> std::result::Result<(), clap::Error> {
    let v = group_config(g.p, g.n, g.epsilon, d)?;
    cfg.p = v.p;
    cfg.n = v.n;
    cfg.epsilon = v.epsilon;
    cfg.max_half_degree = d;
    Ok(())
}

fn default_cache_dir() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("chern-gap"))
}

pub fn bp_default_half_degree(p: u64) -> u32 {
    p as u32 + 3
}

/// Parses `argv` (including the program name) and validates it. Help and
/// version requests come back as errors whose exit code is 0.
pub fn parse_and_validate<I, T>(argv: I) -> std::result::Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let cache_dir = if cli.no_cache {
        None
    } else {
        cli.cache_dir.or_else(default_cache_dir)
    };
    let mut cfg = RunConfig {
        command: RunCommand::Info,
        p: 5,
        n: 4,
        epsilon: 1,
        m_max: 4,
        max_half_degree: 0,
        k: 2,
        format: cli.format,
        cache_dir,
        orientation: Orientation::Plus,
        corrupt_expectation: false,
        sweep: Vec::new(),
        multiples: Vec::new(),
    };
    match cli.command {
        CliCommand::Info(g) => {
            set_group(
                &mut cfg,
                &g,
                GnEpsilonConfig::default_max_half_degree(g.p.max(5)),
            )?;
        }
        CliCommand::Verify { claim } => {
            let (command, check, default_d) = match claim {
                VerifyCommand::Lemma1 { check, m_max } => {
                    cfg.m_max = m_max;
                    let d = GnEpsilonConfig::default_max_half_degree(check.group.p);
                    (RunCommand::Lemma1, check, d)
                }
                VerifyCommand::Gap { check } => {
                    let d = GnEpsilonConfig::default_max_half_degree(check.group.p);
                    (RunCommand::Gap, check, d)
                }
                VerifyCommand::Lemma4 { check, k } => {
                    cfg.k = k;
                    let d = bp_default_half_degree(check.group.p);
                    (RunCommand::Lemma4, check, d)
                }
            };
            cfg.command = command;
            let d = half_degree(check.max_degree, default_d)?;
            set_group(&mut cfg, &check.group, d)?;
            cfg.orientation = check.orientation;
            cfg.corrupt_expectation = check.corrupt_expectation;
        }
        CliCommand::Fgl {
            action:
                FglCommand::Show {
                    p,
                    max_degree,
                    k,
                    m,
                },
        } => {
            cfg.command = RunCommand::FglShow;
            cfg.p = p;
            cfg.k = k;
            cfg.max_half_degree = half_degree(max_degree, bp_default_half_degree(p))?;
            cfg.multiples = if m.is_empty() { vec![2, p] } else { m };
        }
        CliCommand::Sweep(s) => {
            cfg.command = RunCommand::Sweep;
            cfg.m_max = s.m_max;
            cfg.k = s.k;
            cfg.orientation = s.orientation;
            cfg.corrupt_expectation = s.corrupt_expectation;
            let tuples: Vec<(u64, u32, i64)> =
                if s.p.is_empty() && s.n.is_empty() && s.epsilon.is_empty() {
                    DEFAULT_SWEEP.to_vec()
                } else {
                    let ps = if s.p.is_empty() { vec![5] } else { s.p };
                    let ns = if s.n.is_empty() { vec![4] } else { s.n };
                    let es = if s.epsilon.is_empty() {
                        vec![1]
                    } else {
                        s.epsilon
                    };
                    ps.iter()
                        .flat_map(|&p| {
                            let es = &es;
                            ns.iter()
                                .flat_map(move |&n| es.iter().map(move |&e| (p, n, e)))
                        })
                        .collect()
                };
            for (p, n, e) in tuples {
                let g = group_config(p, n, e, GnEpsilonConfig::default_max_half_degree(p))?;
                cfg.sweep.push((g.p, g.n, g.epsilon));
            }
            cfg.sweep.sort();
            cfg.sweep.dedup();
        }
    }
    Ok(cfg)
}

/// What a run prints and whether every claim held.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub pass: bool,
}

fn law(cfg: &RunConfig, p: u64, d: u32) -> Result<FglContext> {
    let (ctx, status) = load_or_build(cfg.cache_dir.as_deref(), p, d, cfg.k)?;
    log::info!("formal group law p={p} D={d} K={}: {status:?}", cfg.k);
    Ok(ctx)
}

fn options(cfg: &RunConfig) -> VerifyOptions {
    VerifyOptions {
        orientation: cfg.orientation,
        corrupt_expectation: cfg.corrupt_expectation,
    }
}

fn group_of(cfg: &RunConfig) -> Result<GnEpsilonConfig> {
    GnEpsilonConfig::with_any_epsilon(cfg.p, cfg.n, cfg.epsilon as i64, cfg.max_half_degree)
}

fn single(r: VerificationReport, format: OutputFormat) -> Outcome {
    Outcome {
        output: serialize_report(&r, format),
        pass: r.pass,
    }
}

fn fgl_show(cfg: &RunConfig) -> Result<Outcome> {
    let ctx = law(cfg, cfg.p, cfg.max_half_degree)?;
    ctx.verify_multiples(&cfg.multiples)?;
    let x = TruncSeries::var(&["x"], ctx.max_degree(), 0);
    let mut multiples = Vec::new();
    for &m in &cfg.multiples {
        multiples.push(json!({ "m": m, "series": ctx.multiple(m, &x)?.to_string() }));
    }
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "p": ctx.p(),
        "max_degree": 2 * ctx.max_degree(),
        "k": ctx.k() as u64,
        "log": ctx.log().to_string(),
        "exp": ctx.exp().to_string(),
        "law": ctx.law().to_string(),
        "multiples": multiples,
        "invariants_verified": true,
    });
    let output = match cfg.format {
        OutputFormat::Json => to_json(&doc),
        OutputFormat::Text => {
            let mut s = format!(
                "p={} max_degree={} k={}\nlog(x) = {}\nexp(x) = {}\nF(x, y) = {}\n",
                ctx.p(),
                2 * ctx.max_degree(),
                ctx.k(),
                ctx.log(),
                ctx.exp(),
                ctx.law()
            );
            for m in &multiples {
                s.push_str(&format!(
                    "[{}]x = {}\n",
                    m["m"],
                    m["series"].as_str().unwrap_or("")
                ));
            }
            s
        }
    };
    Ok(Outcome { output, pass: true })
}

/// All reports for one `(p, n, ε)`.
fn sweep_case(
    cfg: &RunConfig,
    (p, n, e): (u64, u32, u64),
    fgl: &FglContext,
) -> Result<Vec<VerificationReport>> {
    let opts = options(cfg);
    let integral = GnEpsilonConfig::with_any_epsilon(
        p,
        n,
        e as i64,
        GnEpsilonConfig::default_max_half_degree(p),
    )?;
    let bp = GnEpsilonConfig::with_any_epsilon(p, n, e as i64, fgl.max_degree())?;
    Ok(vec![
        census_report(&integral)?,
        verify_lemma1(&integral, cfg.m_max, opts)?,
        chern_gap_report(&integral, opts)?,
        verify_lemma4_with_law(&bp, fgl, opts)?,
    ])
}

fn sweep(cfg: &RunConfig) -> Result<Outcome> {
    let mut primes: Vec<u64> = cfg.sweep.iter().map(|c| c.0).collect();
    primes.dedup();
    let laws: Vec<FglContext> = primes
        .par_iter()
        .map(|&p| law(cfg, p, bp_default_half_degree(p)))
        .collect::<Result<_>>()?;
    let runs: Vec<Vec<VerificationReport>> = cfg
        .sweep
        .par_iter()
        .map(|&case| {
            let i = primes
                .iter()
                .position(|&p| p == case.0)
                .expect("prime collected");
            sweep_case(cfg, case, &laws[i])
        })
        .collect::<Result<_>>()?;
    let pass = runs.iter().flatten().all(|r| r.pass);
    let output = match cfg.format {
        OutputFormat::Json => {
            let entries: Vec<Value> = cfg
                .sweep
                .iter()
                .zip(&runs)
                .map(|(&(p, n, e), reports)| json!({ "p": p, "n": n, "epsilon": e, "reports": reports }))
                .collect();
            to_json(&json!({
                "claim": "sweep",
                "pass": pass,
                "runs": entries,
                "schema_version": SCHEMA_VERSION,
                "tool_version": TOOL_VERSION,
            }))
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for (&(p, n, e), reports) in cfg.sweep.iter().zip(&runs) {
                s.push_str(&format!("== p={p} n={n} epsilon={e} ==\n"));
                for r in reports {
                    s.push_str(&serialize_report(r, OutputFormat::Text));
                }
            }
            let status = if pass { "PASS" } else { "FAIL" };
            s.push_str(&format!(
                "[{status}] sweep over {} parameter tuples\n",
                cfg.sweep.len()
            ));
            s
        }
    };
    Ok(Outcome { output, pass })
}

/// Runs a validated configuration and returns its output.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let opts = options(cfg);
    match cfg.command {
        RunCommand::Info => Ok(single(census_report(&group_of(cfg)?)?, cfg.format)),
        RunCommand::Lemma1 => Ok(single(
            verify_lemma1(&group_of(cfg)?, cfg.m_max, opts)?,
            cfg.format,
        )),
        RunCommand::Gap => Ok(single(chern_gap_report(&group_of(cfg)?, opts)?, cfg.format)),
        RunCommand::Lemma4 => {
            let fgl = law(cfg, cfg.p, cfg.max_half_degree)?;
            Ok(single(
                verify_lemma4_with_law(&group_of(cfg)?, &fgl, opts)?,
                cfg.format,
            ))
        }
        RunCommand::FglShow => fgl_show(cfg),
        RunCommand::Sweep => sweep(cfg),
    }
}

/// Runs, prints, and returns the exit code: 0 when every claim holds, 1
/// when one fails, 2 for configuration errors, 3 for internal ones.
pub fn run(cfg: &RunConfig) -> i32 {
    match execute(cfg) {
        Ok(out) => {
            print!("{}", out.output);
            if out.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &str) -> std::result::Result<RunConfig, clap::Error> {
        parse_and_validate(std::iter::once("chern-gap").chain(args.split_whitespace()))
    }

    #[test]
    fn lemma1_arguments() {
        let cfg = parse("verify lemma1 --p 5 --n 4 --epsilon 1 --m-max 4 --no-cache").unwrap();
        assert_eq!(cfg.command, RunCommand::Lemma1);
        assert_eq!(
            (cfg.p, cfg.n, cfg.epsilon, cfg.m_max, cfg.max_half_degree),
            (5, 4, 1, 4, 14)
        );
        assert_eq!(cfg.cache_dir, None);
    }

    #[test]
    fn rejected_arguments() {
        for bad in [
            "verify gap --p 4",
            "verify gap --p 3",
            "verify gap --n 3",
            "verify gap --epsilon 10",
            "verify gap --max-degree 15",
            "verify nonsense",
        ] {
            let e = parse(bad).unwrap_err();
            assert_eq!(e.exit_code(), 2, "{bad}");
        }
        let msg = parse("info --p 3").unwrap_err().to_string();
        assert!(msg.contains("p must be >= 5"), "{msg}");
    }

    #[test]
    fn epsilon_handling() {
        assert_eq!(parse("verify gap --epsilon 3").unwrap().epsilon, 3);
        // a square other than 1 only warns
        assert_eq!(parse("verify gap --epsilon 4").unwrap().epsilon, 4);
        assert_eq!(parse("verify gap --epsilon -1").unwrap().epsilon, 4);
    }

    #[test]
    fn bp_defaults_and_sweep() {
        let cfg = parse("verify lemma4 --p 7").unwrap();
        assert_eq!((cfg.max_half_degree, cfg.k), (10, 2));
        let cfg = parse("sweep").unwrap();
        assert_eq!(
            cfg.sweep,
            vec![(5, 4, 1), (5, 4, 2), (5, 5, 1), (7, 4, 1), (7, 4, 3)]
        );
        let cfg = parse("sweep --p 7,5 --epsilon 1").unwrap();
        assert_eq!(cfg.sweep, vec![(5, 4, 1), (7, 4, 1)]);
    }

    #[test]
    fn execute_reports() {
        let cfg = parse("verify gap --format json --no-cache").unwrap();
        let out = execute(&cfg).unwrap();
        assert!(out.pass);
        assert!(out.output.contains("\"gap_degree\": 12"));
        let mut bad = cfg.clone();
        bad.corrupt_expectation = true;
        assert!(!execute(&bad).unwrap().pass);
        assert_eq!(run(&bad), 1);
    }
}

//! The `rankpit` command line: argument parsing, dispatch and report rendering.
//!
//! Exit codes: 0 success (and "zero" for `pit`), 1 "nonzero" for `pit`,
//! 2 computation errors, 64 usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algdep::{
    algebraic_rank, annihilator_rank, find_annihilator, newton_reconstruct, reconstruct_dependence,
    rewrite_circuit, sample_good_translation, RankMode, TranslationSampler,
};
use crate::circuit::{Circuit, CircuitFile};
use crate::error::{Error, Result};
use crate::field::Domain;
use crate::measure::{circuit_measure_bound, psp_dimension_capped, sweep, sweep_csv, MeasureSpec};
use crate::nw::{
    extract_nw_projection, hard_polynomial, instantiate_parameters, nw_polynomial, restrict, sample_restriction,
    slot_survival_experiment, HardPolyParams, NWParams,
};
use crate::pit::{pit_test, Mode, PitOptions, Verdict};
use crate::poly::{Monomial, PolyRepr, Polynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONZERO: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "rankpit", version, about = "Algebraic rank, functional dependence, shifted partials and identity tests")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand; the resolved values are echoed in JSON reports.
#[derive(Clone, Debug, Args, Serialize)]
pub struct RunConfig {
    #[arg(long, global = true, env = "RANKPIT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Shorthand for `--output json`.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub json: bool,
    /// Replaces the field named in input files: `Q` or a prime.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<Domain>,
    #[arg(long, global = true, default_value_t = crate::poly::DEFAULT_TERM_CAP)]
    pub max_terms: usize,
    #[arg(long, global = true, default_value_t = crate::measure::DEFAULT_MATRIX_CAP)]
    pub matrix_cap: u128,
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub max_points: u64,
    /// Annihilator degree cap, below the theoretical bound.
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub timings: bool,
}

impl RunConfig {
    fn is_json(&self) -> bool {
        self.json || self.output == Output::Json
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Text,
    Json,
}

fn parse_field(s: &str) -> std::result::Result<Domain, String> {
    if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("rational") {
        return Ok(Domain::Rational);
    }
    let p: u64 = s
        .trim_start_matches("F_")
        .parse()
        .map_err(|_| format!("'{s}' is neither Q nor a prime"))?;
    Domain::prime(p).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a circuit is identically zero.
    Pit {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, value_enum, default_value_t = PitMode::HittingSet)]
        mode: PitMode,
        #[arg(long, default_value_t = 20)]
        rounds: u32,
        /// Check every gate's rank against the declared k first.
        #[arg(long)]
        certify_rank: bool,
    },
    /// Algebraic rank and a transcendence basis (1-based).
    Rank {
        #[arg(long)]
        poly_file: PathBuf,
        #[arg(long, value_enum, default_value_t = RankKind::Randomized)]
        method: RankKind,
    },
    /// Minimal-degree annihilating polynomial in z1, ..., zt.
    Annihilate {
        #[arg(long)]
        poly_file: PathBuf,
    },
    /// Functional dependence of every non-basis polynomial on a transcendence basis.
    Depend {
        #[arg(long)]
        poly_file: PathBuf,
        /// Also run the Newton lifting oracle.
        #[arg(long)]
        newton: bool,
    },
    /// Rewrite a circuit onto homogeneous components of transcendence bases.
    Rewrite {
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Projected shifted partial derivative dimension.
    Measure {
        #[arg(long)]
        poly_file: PathBuf,
        /// 1-based index of the polynomial in the file.
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Comma-separated derivative monomials such as `x1*x2,x3*x4`; default: all multilinear of degree r.
        #[arg(long)]
        derivs: Option<String>,
        /// Sweep over these r values and print CSV.
        #[arg(long, value_delimiter = ',')]
        sweep_r: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        sweep_m: Vec<u32>,
    },
    /// Nisan-Wigderson polynomials, restrictions and parameter instantiation.
    Nw {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Replication factor; switches to the restriction experiment.
        #[arg(long)]
        gamma: Option<u32>,
        /// Survival probability (default N^-delta).
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        /// Report the lower-bound parameter choice for this n instead.
        #[arg(long)]
        instantiate: bool,
    },
    /// Toy-scale experiments.
    Bench {
        #[arg(value_enum)]
        experiment: Experiment,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long = "top-fan-in", default_value_t = 1)]
        t: u64,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        s: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PitMode {
    HittingSet,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RankKind {
    Randomized,
    Symbolic,
    Annihilator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// Exact measure of NW against the circuit upper bound.
    Separation,
}

/// A list of polynomials over one field.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    pub field: Domain,
    pub nvars: usize,
    pub polys: Vec<PolyRepr>,
}

impl PolyFile {
    pub fn new(polys: &[Polynomial]) -> Self {
        let domain = polys.first().map_or(Domain::Rational, Polynomial::domain);
        PolyFile {
            field: domain,
            nvars: polys.iter().map(Polynomial::nvars).max().unwrap_or(0),
            polys: polys.iter().map(PolyRepr::from_poly).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_polys(&self) -> Result<Vec<Polynomial>> {
        self.polys.iter().map(|p| p.to_poly(self.field, self.nvars)).collect()
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_polys(path: &Path, cfg: &RunConfig) -> Result<Vec<Polynomial>> {
    let mut f = PolyFile::parse(&read(path)?)?;
    if let Some(d) = cfg.field {
        f.field = d;
    }
    f.to_polys()
}

fn load_circuit(path: &Path, cfg: &RunConfig) -> Result<Circuit> {
    let mut f = CircuitFile::parse(&read(path)?)?;
    if let Some(d) = cfg.field {
        f.field = d;
    }
    f.to_circuit()
}

fn formatted(p: &Polynomial, prefix: &str) -> String {
    p.to_text(prefix)
}

fn point(domain: Domain, a: &[crate::field::Coeff]) -> Vec<String> {
    a.iter().map(|c| domain.format(c)).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

/// A finished command: its JSON report, the text rendering, and the exit code.
struct Outcome {
    report: Value,
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(report: Value, text: String) -> Self {
        Outcome { report, text, code: EXIT_OK }
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    let start = Instant::now();
    let mut out = match cmd {
        Command::Pit {
            circuit,
            mode,
            rounds,
            certify_rank,
        } => {
            let c = load_circuit(circuit, cfg)?;
            let opts = PitOptions {
                mode: match mode {
                    PitMode::HittingSet => Mode::HittingSet,
                    PitMode::Oracle => Mode::Oracle,
                    PitMode::Both => Mode::Both,
                },
                seed: cfg.seed,
                rounds: *rounds,
                max_points: cfg.max_points,
                expansion_cap: cfg.max_terms,
                certify_rank: *certify_rank,
            };
            let r = pit_test(&c, &opts)?;
            let mut text = format!("{}", if r.verdict == Verdict::Zero { "zero" } else { "nonzero" });
            if let Some(w) = &r.witness {
                text.push_str(&format!("\nwitness ({})", w.join(", ")));
            }
            if let Some(h) = &r.hitting_set {
                text.push_str(&format!(
                    "\nsupport bound {} (effective {}), {} points, {} evaluated",
                    h.bound.ell, h.ell, h.size, h.points_evaluated
                ));
            }
            if !r.consistent {
                text.push_str("\nwarning: cross-checks disagree");
            }
            Outcome {
                code: if r.verdict == Verdict::Zero { EXIT_OK } else { EXIT_NONZERO },
                report: serde_json::to_value(&r).expect("report serializes"),
                text,
            }
        }
        Command::Rank { poly_file, method } => {
            let q = load_polys(poly_file, cfg)?;
            let (rank, basis, method_json) = match method {
                RankKind::Randomized | RankKind::Symbolic => {
                    let mode = if *method == RankKind::Symbolic {
                        RankMode::Symbolic
                    } else {
                        RankMode::randomized(cfg.seed)
                    };
                    let cert = algebraic_rank(&q, mode)?;
                    (cert.rank, cert.basis_indices, serde_json::to_value(&cert.method).unwrap())
                }
                RankKind::Annihilator => {
                    let (rank, basis) = annihilator_rank(&q)?;
                    (rank, basis, json!({"kind": "annihilator"}))
                }
            };
            let basis = one_based(&basis);
            let text = format!(
                "rank {rank}\nbasis {}",
                basis.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
            );
            Outcome::ok(json!({"rank": rank, "basis": basis, "method": method_json}), text)
        }
        Command::Annihilate { poly_file } => {
            let q = load_polys(poly_file, cfg)?;
            let a = find_annihilator(&q, cfg.max_degree)?;
            let text = formatted(&a.r, "z");
            Outcome::ok(json!({"degree": a.degree, "annihilator": text}), text)
        }
        Command::Depend { poly_file, newton } => {
            let q = load_polys(poly_file, cfg)?;
            let domain = q.first().map_or(Domain::Rational, Polynomial::domain);
            let cert = algebraic_rank(&q, RankMode::randomized(cfg.seed))?;
            let basis = cert.basis_indices;
            let d = q.iter().map(Polynomial::total_degree).max().unwrap_or(1);
            let sampler = TranslationSampler::new(q.len().max(1), basis.len(), d, cfg.seed);
            let tr = sample_good_translation(&q, &basis, &sampler)?;
            let w = reconstruct_dependence(&q, &basis, &tr.point, cfg.max_degree)?;
            let mut text = format!(
                "basis {}\ntranslation ({})",
                one_based(&basis).iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "),
                point(domain, &tr.point).join(", ")
            );
            let mut deps = serde_json::Map::new();
            for (i, f) in &w.f {
                let fi = formatted(f, "z");
                text.push_str(&format!("\nF{} = {fi}", i + 1));
                deps.insert(
                    (i + 1).to_string(),
                    json!({"f": fi, "truncation_degree": w.truncation_degrees[i]}),
                );
            }
            let mut report = json!({
                "basis": one_based(&basis),
                "translation": point(domain, &tr.point),
                "attempts": tr.attempts,
                "dependencies": deps,
                "verified": w.verify(&q)?,
            });
            if *newton {
                let mut agree = true;
                let mut iters = serde_json::Map::new();
                for &i in w.f.keys() {
                    let nc = newton_reconstruct(&q, &basis, &tr.point, i)?;
                    let n = q[i].nvars().max(nc.series.nvars());
                    let target = q[i].clone().with_nvars(n).translate(&tr.point)?;
                    agree &= nc.series.clone().with_nvars(n) == target;
                    iters.insert((i + 1).to_string(), json!(nc.iterations));
                }
                report["newton"] = json!({"agrees": agree, "iterations": iters});
                text.push_str(&format!("\nnewton {}", if agree { "agrees" } else { "DISAGREES" }));
            }
            Outcome::ok(report, text)
        }
        Command::Rewrite { circuit } => {
            let c = load_circuit(circuit, cfg)?;
            let r = rewrite_circuit(&c, cfg.seed)?;
            let file = CircuitFile::from_circuit(&r.circuit);
            let text = file.to_canonical_string();
            Outcome::ok(
                json!({
                    "translation": point(c.domain(), &r.a),
                    "attempts": r.attempts,
                    "circuit": serde_json::to_value(&file).unwrap(),
                }),
                text.trim_end().to_string(),
            )
        }
        Command::Measure {
            poly_file,
            index,
            r,
            m,
            derivs,
            sweep_r,
            sweep_m,
        } => {
            let q = load_polys(poly_file, cfg)?;
            let p = index
                .checked_sub(1)
                .and_then(|i| q.get(i))
                .ok_or_else(|| Error::InvalidParams(format!("no polynomial {index} in the file")))?;
            if !sweep_r.is_empty() || !sweep_m.is_empty() {
                let rs = if sweep_r.is_empty() { vec![*r] } else { sweep_r.clone() };
                let ms = if sweep_m.is_empty() { vec![*m] } else { sweep_m.clone() };
                let mut rows = sweep(p, &rs, &ms, cfg.matrix_cap)?;
                if !cfg.timings {
                    rows.iter_mut().for_each(|row| row.millis = 0);
                }
                let csv = sweep_csv(&rows);
                Outcome::ok(serde_json::to_value(&rows).unwrap(), csv.trim_end().to_string())
            } else {
                let spec = match derivs {
                    Some(list) => {
                        let monos = list
                            .split(',')
                            .map(|s| parse_monomial(s.trim(), p.nvars()))
                            .collect::<Result<Vec<_>>>()?;
                        MeasureSpec::new(monos, *m)?
                    }
                    None => MeasureSpec::all_multilinear(p.nvars(), *r, *m),
                };
                let mut rep = psp_dimension_capped(p, &spec, cfg.matrix_cap)?;
                if !cfg.timings {
                    rep.millis = None;
                }
                let text = format!("dimension {}\nrows {}\ncols {}", rep.dimension, rep.rows, rep.cols);
                Outcome::ok(serde_json::to_value(&rep).unwrap(), text)
            }
        }
        Command::Nw {
            n,
            q,
            e,
            gamma,
            p,
            delta,
            trials,
            instantiate,
        } => {
            if *instantiate {
                let inst = instantiate_parameters(*n)?;
                let text = format!(
                    "epsilon {}\nr {}\nq {}\nN {}\ns {}\nm {}\ne {}\nconstraint {:?}\nvalid {}",
                    inst.epsilon, inst.r, inst.q, inst.big_n, inst.s, inst.m, inst.e, inst.q_power_constraint, inst.valid
                );
                Outcome::ok(serde_json::to_value(&inst).unwrap(), text)
            } else {
                let n = u32::try_from(*n).map_err(|_| Error::InvalidParams(format!("n = {n} too large")))?;
                let base = NWParams::new(n, *q, *e)?;
                let domain = cfg.field.unwrap_or(Domain::Rational);
                match gamma {
                    None => {
                        let poly = nw_polynomial(&base, domain);
                        let text = poly.to_string();
                        Outcome::ok(
                            json!({"params": base, "nvars": base.nvars(), "monomials": poly.len(), "polynomial": text}),
                            text,
                        )
                    }
                    Some(g) => {
                        let hp = match p {
                            Some(p) => HardPolyParams::with_p(base, *delta, *p, *g)?,
                            None => HardPolyParams::new(base, *delta, *g)?,
                        };
                        let stats = slot_survival_experiment(&hp, *trials, cfg.seed);
                        let sample = sample_restriction(hp.nvars(), hp.p, cfg.seed)?;
                        let projection = match hard_polynomial(&hp, domain, cfg.max_terms) {
                            Ok(h) => match extract_nw_projection(&restrict(&h, &sample), &hp, &sample) {
                                Ok(proj) => json!({"recovered": proj == nw_polynomial(&base, domain)}),
                                Err(Error::SlotDied { i, j }) => json!({"slot_died": [i, j]}),
                                Err(e) => return Err(e),
                            },
                            Err(Error::ExpansionTooLarge { cap }) => json!({"skipped": format!("expansion above {cap} terms")}),
                            Err(e) => return Err(e),
                        };
                        let text = format!(
                            "dead slot fraction {:.6} (expected {:.6}, sigma {:.6}, within 3 sigma: {})\nprojection {}",
                            stats.dead_fraction, stats.expected, stats.sigma, stats.within_three_sigma, projection
                        );
                        Outcome::ok(
                            json!({"params": hp, "survival": stats, "projection": projection, "alive": sample.survivors().len()}),
                            text,
                        )
                    }
                }
            }
        }
        Command::Bench {
            experiment: Experiment::Separation,
            n,
            q,
            e,
            r,
            m,
            t,
            k,
            s,
        } => {
            let base = NWParams::new(*n, *q, *e)?;
            let nw = nw_polynomial(&base, cfg.field.unwrap_or(Domain::Rational));
            let big_n = base.nvars() as u64;
            let spec = MeasureSpec::all_multilinear(base.nvars(), *r, *m);
            let phi = psp_dimension_capped(&nw, &spec, cfg.matrix_cap)?.dimension;
            let bound = circuit_measure_bound(*t, big_n, *k, *n as u64, *r as u64, *m as u64, *s)?;
            let per_gate = circuit_measure_bound(1, big_n, *k, *n as u64, *r as u64, *m as u64, *s)?;
            let ratio = bound.to_f64().unwrap_or(f64::INFINITY) / (phi.max(1) as f64);
            let min_fan_in = (num_bigint::BigUint::from(phi) + &per_gate - 1u32) / &per_gate;
            let text = format!(
                "phi(NW) {phi}\ncircuit bound {bound}\nratio {ratio:.6}\nminimum top fan-in {min_fan_in}"
            );
            Outcome::ok(
                json!({
                    "params": base,
                    "r": r, "m": m, "top_fan_in": t, "k": k, "s": s,
                    "phi": phi,
                    "bound": bound.to_string(),
                    "ratio": ratio,
                    "min_top_fan_in": min_fan_in.to_string(),
                }),
                text,
            )
        }
    };
    if cfg.timings {
        out.report["millis"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok(out)
}

fn parse_monomial(s: &str, nvars: usize) -> Result<Monomial> {
    let p = Polynomial::parse(Domain::Rational, Some(nvars), s)?;
    let mono = p.monomials().next().filter(|_| p.len() == 1).cloned();
    mono.ok_or_else(|| Error::InvalidParams(format!("'{s}' is not a monomial")))
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let mut cfg = cli.config.clone();
    if cfg.json {
        cfg.output = Output::Json;
    }
    let threads = cfg
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {threads} worker threads: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| dispatch(&cli.command, &cfg)) {
        Ok(o) => {
            if cfg.is_json() {
                let mut report = o.report;
                if let Value::Object(map) = &mut report {
                    map.insert("config".into(), serde_json::to_value(&cfg).unwrap());
                }
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                let _ = writeln!(out, "{}", o.text);
            }
            o.code
        }
        Err(e) => {
            if cfg.is_json() {
                let report = json!({"error": error_kind(&e), "message": e.to_string()});
                let _ = writeln!(err, "{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            EXIT_COMPUTATION
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("rankpit").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(run_str(&["rank", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(run_str(&[]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn computation_errors_exit_2() {
        let (code, _, err) = run_str(&["nw", "--n", "2", "--q", "4"]);
        assert_eq!(code, EXIT_COMPUTATION);
        assert!(err.contains("not prime"));
        let (code, _, err) = run_str(&["--json", "rank", "--poly-file", "/nonexistent.json"]);
        assert_eq!(code, EXIT_COMPUTATION);
        assert!(err.contains("\"error\": \"Io\""));
    }

    #[test]
    fn nw_text_and_instantiation() {
        let (code, out, _) = run_str(&["nw", "--n", "2", "--q", "2", "--e", "1"]);
        assert_eq!((code, out.trim()), (0, "x1*x3 + x2*x4"));
        let (code, out, _) = run_str(&["--json", "nw", "--n", "100", "--instantiate"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["valid"], json!(false));
        assert_eq!(v["config"]["seed"], json!(0));
    }

    #[test]
    fn field_override_parses() {
        assert_eq!(parse_field("Q"), Ok(Domain::Rational));
        assert_eq!(parse_field("101"), Ok(Domain::Prime(101)));
        assert!(parse_field("100").is_err());
    }
}

//! The `jonq` command line. [`run`] does all the work and returns the exit
//! code with both output streams, so tests can drive it in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{betti_table, cm_report, corrupt_sequence, hilbert_from_betti, verify_sequence, VerifyOptions};
use crate::downgrade::{
    downgraded_sequence, implicit_equation, k_ideal, maximal_ideal, minors_generators, partial_ideal,
    rees_ideal_from, symmetric_ideal, DowngradeError, DowngradedSequence, GeneratorSet, ImplicitEquation,
};
use crate::jonq::{load_instance, DeJonquieresMap, InstanceError, MapError};
use crate::oracle::{Budget, IdealHandle, Oracle, OracleError};
use crate::poly::{Field, Polynomial, TermOrder};

#[derive(Debug, Parser)]
#[command(name = "jonq", version, about = "Rees algebras of de Jonquieres maps")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    /// Coefficient field, overriding the instance file: Q or Fp=<p>.
    #[arg(long, global = true, value_parser = parse_field_arg)]
    pub field: Option<Field>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of S-pairs per Groebner basis run.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timings in verify reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[arg(long, global = true, hide = true)]
    pub corrupt: bool,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Print the downgraded sequence h1..hL with bidegrees.
    Sequence { instance: PathBuf },
    /// Print the generators of the defining ideal J.
    Rees { instance: PathBuf },
    /// Print the implicit equation, or "dominant".
    Implicitize { instance: PathBuf },
    /// Print the bigraded Betti table of S(I).
    Betti { instance: PathBuf },
    /// Print dimension, depth and Cohen-Macaulayness of R(I).
    Report { instance: PathBuf },
    /// Run the verification suite.
    Verify {
        instance: PathBuf,
        /// Random partial-column trials for the well-definedness check.
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Run one oracle computation on a named generator set
    /// (minors, L, J, J<i>, K, m).
    Oracle {
        op: OracleOp,
        set: String,
        instance: PathBuf,
        /// Second ideal for colon and saturate.
        #[arg(long, default_value = "m")]
        by: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleOp {
    Gb,
    Saturate,
    Eliminate,
    Dim,
    Colon,
}

fn parse_field_arg(s: &str) -> Result<Field, String> {
    let field = crate::jonq::parse_field(s).ok_or_else(|| format!("expected Q or Fp=<p>, got {s:?}"))?;
    if let Field::Prime(p) = field {
        if !crate::poly::is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
    }
    Ok(field)
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Format(String),
    Validation(String),
    Resource(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(_) | Failure::Format(_) | Failure::Validation(_) => EXIT_VALIDATION,
            Failure::Verification(_) => EXIT_VERIFICATION,
            Failure::Resource(_) => EXIT_RESOURCE,
        }
    }

    fn line(&self) -> String {
        let (kind, msg) = match self {
            Failure::Usage(m) => ("usage", m),
            Failure::Io(m) => ("io", m),
            Failure::Format(m) => ("format", m),
            Failure::Validation(m) => ("validation", m),
            Failure::Resource(m) => ("resource_limit", m),
            Failure::Verification(m) => ("verification", m),
        };
        let flat: Vec<&str> = msg.split_whitespace().collect();
        format!("error: {kind}: {}\n", flat.join(" "))
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::ResourceLimit(_) => Failure::Resource(e.to_string()),
            other => Failure::Validation(other.to_string()),
        }
    }
}

impl From<DowngradeError> for Failure {
    fn from(e: DowngradeError) -> Self {
        match e {
            DowngradeError::InternalInvariantViolation(_) => Failure::Verification(e.to_string()),
            other => Failure::Validation(other.to_string()),
        }
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        match &e {
            InstanceError::Io { .. } => Failure::Io(e.to_string()),
            InstanceError::Format { .. } | InstanceError::Poly { .. } => Failure::Format(e.to_string()),
            InstanceError::Invalid(MapError::Oracle(OracleError::ResourceLimit(_))) => Failure::Resource(e.to_string()),
            InstanceError::Invalid(_) => Failure::Validation(e.to_string()),
        }
    }
}

struct Env {
    oracle: Oracle,
    cli: Cli,
}

impl Env {
    fn load(&self, path: &Path) -> Result<DeJonquieresMap, Failure> {
        Ok(load_instance(path, self.cli.field, &self.oracle)?)
    }

    fn sequence(&self, map: &DeJonquieresMap) -> Result<DowngradedSequence, Failure> {
        let seq = downgraded_sequence(map)?;
        Ok(if self.cli.corrupt { corrupt_sequence(&seq) } else { seq })
    }
}

fn poly_lines(ps: &[Polynomial]) -> String {
    if ps.is_empty() {
        return "0\n".into();
    }
    ps.iter().map(|p| format!("{p}\n")).collect()
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn named_set(name: &str, map: &DeJonquieresMap, seq: &DowngradedSequence) -> Result<GeneratorSet, Failure> {
    let ring = map.ring();
    Ok(match name {
        "minors" => minors_generators(ring),
        "L" => symmetric_ideal(map),
        "J" => rees_ideal_from(ring, seq),
        "K" => k_ideal(ring),
        "m" => maximal_ideal(ring),
        other => {
            let i = other
                .strip_prefix('J')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&i| (1..=seq.len()).contains(&i))
                .ok_or_else(|| {
                    Failure::Usage(format!("unknown generator set {other:?}; use minors, L, J, J1..J{}, K or m", seq.len()))
                })?;
            partial_ideal(ring, seq, i)
        }
    })
}

fn execute(env: &Env) -> Result<(i32, String), Failure> {
    let json = env.cli.json;
    match &env.cli.verb {
        Verb::Sequence { instance } => {
            let map = env.load(instance)?;
            let seq = env.sequence(&map)?;
            if json {
                let items: Vec<_> = seq
                    .polys
                    .iter()
                    .enumerate()
                    .map(|(k, h)| json!({ "i": k + 1, "bidegree": h.bidegree().to_string(), "poly": h.to_string() }))
                    .collect();
                return Ok((EXIT_OK, to_json(&items)));
            }
            let mut out = String::new();
            for (k, h) in seq.polys.iter().enumerate() {
                let _ = writeln!(out, "h{} {}: {h}", k + 1, h.bidegree());
            }
            Ok((EXIT_OK, out))
        }
        Verb::Rees { instance } => {
            let map = env.load(instance)?;
            let j = rees_ideal_from(map.ring(), &env.sequence(&map)?);
            if json {
                return Ok((EXIT_OK, to_json(&json!({ "label": j.label.to_string(), "generators": strings(&j.gens) }))));
            }
            Ok((EXIT_OK, poly_lines(&j.gens)))
        }
        Verb::Implicitize { instance } => {
            let map = env.load(instance)?;
            let eq = implicit_equation(&map)?;
            let text = match &eq {
                ImplicitEquation::Hypersurface(p) => p.to_string(),
                ImplicitEquation::Dominant => "dominant".into(),
            };
            if json {
                let v = match &eq {
                    ImplicitEquation::Hypersurface(p) => json!({ "dominant": false, "equation": p.to_string() }),
                    ImplicitEquation::Dominant => json!({ "dominant": true, "equation": null }),
                };
                return Ok((EXIT_OK, to_json(&v)));
            }
            Ok((EXIT_OK, format!("{text}\n")))
        }
        Verb::Betti { instance } => {
            let map = env.load(instance)?;
            let table = betti_table(map.n(), map.d());
            let numerator = hilbert_from_betti(&table);
            if json {
                let v = json!({ "table": table, "ranks": table.ranks(), "hilbert_numerator": numerator.to_string() });
                return Ok((EXIT_OK, to_json(&v)));
            }
            let mut out = table.to_string();
            let _ = writeln!(out, "ranks: {:?}", table.ranks());
            let _ = writeln!(out, "hilbert numerator: {numerator}");
            Ok((EXIT_OK, out))
        }
        Verb::Report { instance } => {
            let map = env.load(instance)?;
            let r = cm_report(&map);
            if json {
                return Ok((EXIT_OK, to_json(&json!({ "report": r, "source": "closed formula" }))));
            }
            Ok((EXIT_OK, r.to_string()))
        }
        Verb::Verify { instance, trials } => {
            let map = env.load(instance)?;
            let seq = env.sequence(&map)?;
            let opts = VerifyOptions { trials: *trials, timing: env.cli.timing, ..VerifyOptions::default() };
            let report = verify_sequence(&map, &seq, env.cli.seed, &env.oracle, opts);
            let out = if json { format!("{}\n", report.to_json()) } else { report.to_text() };
            let code = if report.has_failure() {
                EXIT_VERIFICATION
            } else if report.has_resource_limit() {
                EXIT_RESOURCE
            } else {
                EXIT_OK
            };
            Ok((code, out))
        }
        Verb::Oracle { op, set, instance, by } => {
            let map = env.load(instance)?;
            let seq = env.sequence(&map)?;
            let a = IdealHandle::new(named_set(set, &map, &seq)?);
            let oracle = &env.oracle;
            let (value, text) = match op {
                OracleOp::Gb => {
                    let gb = oracle.basis(&a, TermOrder::Grevlex)?;
                    let gens = gb.basis().to_vec();
                    (json!({ "basis": strings(&gens) }), poly_lines(&gens))
                }
                OracleOp::Saturate => {
                    let b = IdealHandle::new(named_set(by, &map, &seq)?);
                    let sat = oracle.saturate(&a, &b)?;
                    let gens = sat.ideal.gens().to_vec();
                    let text = format!("steps={}\n{}", sat.steps, poly_lines(&gens));
                    (json!({ "steps": sat.steps, "generators": strings(&gens) }), text)
                }
                OracleOp::Eliminate => {
                    let e = oracle.eliminate_x(&a)?;
                    let gens = e.gens().to_vec();
                    (json!({ "generators": strings(&gens) }), poly_lines(&gens))
                }
                OracleOp::Dim => {
                    let d = oracle.krull_dimension(&a)?;
                    (json!({ "dim": d }), format!("{d}\n"))
                }
                OracleOp::Colon => {
                    let b = IdealHandle::new(named_set(by, &map, &seq)?);
                    let c = oracle.colon_ideal(&a, &b)?;
                    let gens = c.gens().to_vec();
                    (json!({ "generators": strings(&gens) }), poly_lines(&gens))
                }
            };
            Ok((EXIT_OK, if json { to_json(&value) } else { text }))
        }
    }
}

pub fn run<I, T>(args: I) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    RunResult { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
                }
                _ => {
                    let first = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
                    let f = Failure::Usage(first);
                    RunResult { code: f.code(), stdout: String::new(), stderr: f.line() }
                }
            };
        }
    };
    let budget = cli.budget.map_or_else(Budget::default, Budget::with_pairs);
    let env = Env { oracle: Oracle::new(budget), cli };
    match execute(&env) {
        Ok((code, stdout)) => RunResult { code, stdout, stderr: String::new() },
        Err(f) => RunResult { code: f.code(), stdout: String::new(), stderr: f.line() },
    }
}

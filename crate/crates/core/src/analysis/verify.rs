use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::downgrade::{
    downgraded_sequence, downgraded_sequence_random, implicit_equation, maximal_ideal, minors_generators,
    partial_ideal, rees_ideal_from, sequence_length, symmetric_ideal, DowngradeError, DowngradedSequence,
    ImplicitEquation, Label,
};
use crate::jonq::{DeJonquieresMap, InstanceEcho};
use crate::oracle::{IdealHandle, Oracle, OracleError};
use crate::poly::{substitute, Bidegree, BidegreeOf, Mode, Polynomial, TermOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Value recorded without a target to compare against.
    Observed,
    ResourceLimit,
}

impl CheckStatus {
    fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Observed => "observed",
            CheckStatus::ResourceLimit => "resource_limit",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub status: CheckStatus,
    pub witness: String,
    /// Wall time in milliseconds; only filled when timing is requested.
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Random `∂` trials for the well-definedness check.
    pub trials: usize,
    /// Largest power for the linkage colons.
    pub linkage_max_power: u32,
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { trials: 10, linkage_max_power: 2, timing: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub instance: InstanceEcho,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn check(&self, id: u8) -> &CheckResult {
        self.checks.iter().find(|c| c.id == id).expect("unknown check id")
    }

    pub fn has_failure(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn has_resource_limit(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::ResourceLimit)
    }

    pub fn all_passed(&self) -> bool {
        !self.has_failure() && !self.has_resource_limit()
    }

    pub fn failed_ids(&self) -> Vec<u8> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail).map(|c| c.id).collect()
    }

    pub fn to_text(&self) -> String {
        let i = &self.instance;
        let mut out = String::new();
        let _ = writeln!(out, "instance: mode={} n={} d={} field={}", i.mode, i.n, i.d, i.field);
        let _ = writeln!(out, "  f = {}", i.f);
        let _ = writeln!(out, "  g = {}", i.g);
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "checks:");
        for c in &self.checks {
            let _ = write!(out, "  {} {}: {} ({})", c.id, c.name, c.status.as_str(), c.witness);
            if let Some(ms) = c.timing_ms {
                let _ = write!(out, " [{ms:.1} ms]");
            }
            out.push('\n');
        }
        let verdict = if self.has_failure() {
            "fail"
        } else if self.has_resource_limit() {
            "resource_limit"
        } else {
            "pass"
        };
        let _ = writeln!(out, "result: {verdict}");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Drops the last term of `h_2` (of `h_1` for one-element sequences).
pub fn corrupt_sequence(seq: &DowngradedSequence) -> DowngradedSequence {
    let mut polys = seq.polys.clone();
    let k = if polys.len() >= 2 { 1 } else { 0 };
    let keep = polys[k].len().saturating_sub(1);
    let mut count = 0;
    polys[k] = polys[k].filter_terms(|_| {
        count += 1;
        count <= keep
    });
    DowngradedSequence { polys }
}

type Outcome = Result<(CheckStatus, String), OracleError>;

struct Ctx<'a> {
    map: &'a DeJonquieresMap,
    seq: &'a DowngradedSequence,
    oracle: &'a Oracle,
    seed: u64,
    opts: VerifyOptions,
}

fn pass(w: impl Into<String>) -> Outcome {
    Ok((CheckStatus::Pass, w.into()))
}

fn fail(w: impl Into<String>) -> Outcome {
    Ok((CheckStatus::Fail, w.into()))
}

impl Ctx<'_> {
    fn j(&self) -> IdealHandle {
        IdealHandle::new(rees_ideal_from(self.map.ring(), self.seq))
    }

    fn kernel(&self) -> Outcome {
        let s = self.map.rees_substitution();
        let gens = rees_ideal_from(self.map.ring(), self.seq).gens;
        for g in &gens {
            if !substitute(g, &s).is_zero() {
                return fail(format!("{g} does not vanish"));
            }
        }
        pass(format!("{} generators vanish", gens.len()))
    }

    fn ladder(&self) -> Outcome {
        let want = sequence_length(self.map);
        if self.seq.len() != want {
            return fail(format!("length {} but expected {want}", self.seq.len()));
        }
        let d = self.map.d();
        for (k, h) in self.seq.polys.iter().enumerate() {
            let i = k as u32 + 1;
            if i > d {
                return fail(format!("h{i} past degree {d}"));
            }
            let expect = Bidegree::new(d - i, i);
            if h.bidegree() != BidegreeOf::Bihomogeneous(expect) {
                return fail(format!("h{i} is not of bidegree {expect}"));
            }
        }
        pass(format!("{want} terms"))
    }

    fn exchange(&self) -> Outcome {
        let ring = self.map.ring();
        let n = self.map.n();
        let gb = self.oracle.buchberger(&minors_generators(ring), TermOrder::Grevlex)?;
        let mut count = 0;
        for i in 2..=self.seq.len() {
            let (hi, hp) = (self.seq.h(i), self.seq.h(i - 1));
            for j in 1..=n {
                let e = &(&Polynomial::x(ring, j) * hi) - &(&Polynomial::y(ring, j) * hp);
                let r = self.oracle.normal_form(&e, &gb);
                if !r.is_zero() {
                    return fail(format!("x{j}*h{i} - y{j}*h{} has normal form {r}", i - 1));
                }
                count += 1;
            }
            let e = &(hp * &Polynomial::y(ring, n)) - &(&Polynomial::x(ring, n) * hi);
            let r = self.oracle.normal_form(&e, &gb);
            if !r.is_zero() {
                return fail(format!("h{}*y{n} - x{n}*h{i} has normal form {r}", i - 1));
            }
            count += 1;
        }
        pass(format!("{count} relations reduce to 0"))
    }

    fn well_defined(&self) -> Outcome {
        let ring = self.map.ring();
        let canon: Vec<IdealHandle> =
            (1..=self.seq.len()).map(|i| IdealHandle::new(partial_ideal(ring, self.seq, i))).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for t in 0..self.opts.trials {
            let other = match downgraded_sequence_random(self.map, &mut rng) {
                Ok(s) => s,
                Err(e) => return fail(format!("trial {t}: {e}")),
            };
            if other.len() != self.seq.len() {
                return fail(format!("trial {t}: length {} vs {}", other.len(), self.seq.len()));
            }
            for (k, c) in canon.iter().enumerate() {
                let r = IdealHandle::new(partial_ideal(ring, &other, k + 1));
                if !self.oracle.ideal_equality(&r, c)? {
                    return fail(format!("trial {t}: J{} differs", k + 1));
                }
            }
        }
        pass(format!("{} trials", self.opts.trials))
    }

    fn saturation(&self) -> Outcome {
        let ring = self.map.ring();
        let l = IdealHandle::new(symmetric_ideal(self.map));
        let m = IdealHandle::new(maximal_ideal(ring));
        let sat = self.oracle.saturate(&l, &m)?;
        let bound = match self.map.mode() {
            Mode::Standard => self.map.d() as usize - 1,
            Mode::Generalized => self.map.d() as usize - 2,
        };
        if !self.oracle.ideal_equality(&sat.ideal, &self.j())? {
            return fail(format!("L : m^inf differs from J (steps={})", sat.steps));
        }
        if sat.steps > bound {
            return fail(format!("steps={} bound={bound}", sat.steps));
        }
        pass(format!("steps={} bound={bound}", sat.steps))
    }

    fn elimination(&self) -> Outcome {
        let e = self.oracle.eliminate_x(&self.j())?;
        match implicit_equation(self.map) {
            Ok(ImplicitEquation::Dominant) => {
                if e.gens().is_empty() {
                    pass("J ∩ k[y] = 0")
                } else {
                    fail(format!("J ∩ k[y] contains {}", e.gens()[0]))
                }
            }
            Ok(ImplicitEquation::Hypersurface(_)) => {
                let last = self.seq.polys.last().expect("nonempty sequence").monic();
                if e.gens() != [last.clone()] {
                    let shown: Vec<String> = e.gens().iter().map(|p| p.to_string()).collect();
                    return fail(format!("J ∩ k[y] = ({}) but h_L = {last}", shown.join(", ")));
                }
                let graph = self.oracle.implicitize_elimination(self.map)?;
                if graph != last {
                    return fail(format!("graph elimination gives {graph} but h_L = {last}"));
                }
                pass(format!("J ∩ k[y] = ({last})"))
            }
            Err(e) => fail(e.to_string()),
        }
    }

    fn dimension(&self) -> Outcome {
        let l = IdealHandle::new(symmetric_ideal(self.map));
        let dim = self.oracle.krull_dimension(&l)?;
        let n = self.map.n();
        match self.map.mode() {
            Mode::Standard if dim == n + 1 => pass(format!("dim S(I)={dim}")),
            Mode::Standard => fail(format!("dim S(I)={dim}, expected {}", n + 1)),
            Mode::Generalized => Ok((CheckStatus::Observed, format!("dim S(I)={dim} (n+2={})", n + 2))),
        }
    }

    fn linkage(&self) -> Outcome {
        let ring = self.map.ring();
        let n = self.map.n();
        let minors = minors_generators(ring);
        let xn = Polynomial::x(ring, n);
        let yn = Polynomial::y(ring, n);
        let m = maximal_ideal(ring).gens;
        for i in 1..=self.opts.linkage_max_power {
            let lift = |name: &str, extra: Vec<Polynomial>| {
                IdealHandle::new(minors.extended(Label::Custom(format!("{name}^{i}")), extra))
            };
            let xi = lift("xn", vec![xn.pow(i)]);
            let ki = lift("K", powers_of(&[xn.clone(), yn.clone()], i));
            let mi = lift("m", powers_of(&m, i));
            if !self.oracle.ideal_equality(&self.oracle.colon_ideal(&xi, &ki)?, &mi)? {
                return fail(format!("(xn^{i}) : K^{i} differs from m^{i}"));
            }
            if !self.oracle.ideal_equality(&self.oracle.colon_ideal(&xi, &mi)?, &ki)? {
                return fail(format!("(xn^{i}) : m^{i} differs from K^{i}"));
            }
        }
        pass(format!("i=1..{}", self.opts.linkage_max_power))
    }
}

/// All products of `i` elements of `gens` (with repetition).
fn powers_of(gens: &[Polynomial], i: u32) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::one(gens[0].ring())];
    for _ in 0..i {
        let mut next: Vec<Polynomial> = Vec::new();
        for p in &out {
            for g in gens {
                let q = p * g;
                if !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

/// Runs all checks against a caller-supplied sequence.
pub fn verify_sequence(
    map: &DeJonquieresMap,
    seq: &DowngradedSequence,
    seed: u64,
    oracle: &Oracle,
    opts: VerifyOptions,
) -> VerifyReport {
    let ctx = Ctx { map, seq, oracle, seed, opts };
    type Check<'a> = (u8, &'static str, fn(&Ctx<'a>) -> Outcome);
    let checks: [Check; 8] = [
        (1, "kernel", Ctx::kernel),
        (2, "bidegree_ladder", Ctx::ladder),
        (3, "exchange_relations", Ctx::exchange),
        (4, "well_defined", Ctx::well_defined),
        (5, "saturation", Ctx::saturation),
        (6, "elimination", Ctx::elimination),
        (7, "dimension", Ctx::dimension),
        (8, "linkage", Ctx::linkage),
    ];
    let results = checks
        .par_iter()
        .map(|&(id, name, run)| {
            let start = Instant::now();
            let (status, witness) = match run(&ctx) {
                Ok(r) => r,
                Err(OracleError::ResourceLimit(w)) => (CheckStatus::ResourceLimit, w),
                Err(e) => (CheckStatus::Fail, e.to_string()),
            };
            let timing_ms = opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            CheckResult { id, name, status, witness, timing_ms }
        })
        .collect();
    VerifyReport { instance: InstanceEcho::from(map), seed, checks: results }
}

pub fn verify_suite(
    map: &DeJonquieresMap,
    seed: u64,
    oracle: &Oracle,
    opts: VerifyOptions,
) -> Result<VerifyReport, DowngradeError> {
    let seq = downgraded_sequence(map)?;
    Ok(verify_sequence(map, &seq, seed, oracle, opts))
}

//! De Jonquières instances with identity Cremona support: validation, the
//! canonical partial column `∂`, the presentation matrix and the initial
//! syzygy `h`.

mod instance;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::downgrade::{GeneratorSet, Label};
use crate::oracle::{IdealHandle, Oracle, OracleError};
use crate::poly::{format_poly, Mode, Monomial, Polynomial, Ring, RingSpec, Substitution, Term};

pub use instance::{load_instance, parse_field, parse_instance, Instance, InstanceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("f and g are not coprime")]
    NotCoprime,
    #[error("{which} is not an x{var}-monoid: term {term} has degree {exp} in x{var}")]
    NotMonoid { which: String, term: String, var: usize, exp: u16 },
    #[error("neither f nor g involves x{0}")]
    MonoidMissingLastVariable(usize),
    #[error("{0} is not a nonzero homogeneous form in the x-variables")]
    NotHomogeneous(String),
    #[error("term {0} is not divisible by any of x1..xn")]
    NotInIdeal(String),
    #[error("polynomial belongs to a different ring")]
    WrongRing,
    #[error("coprimality check failed: {0}")]
    Oracle(#[from] OracleError),
}

/// A validated de Jonquières map `(f x_1, ..., f x_n, g)`.
#[derive(Clone, Debug)]
pub struct DeJonquieresMap {
    ring: Arc<Ring>,
    f: Polynomial,
    g: Polynomial,
    d: u32,
}

impl DeJonquieresMap {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }
    pub fn spec(&self) -> &RingSpec {
        self.ring.spec()
    }
    pub fn mode(&self) -> Mode {
        self.ring.spec().mode
    }
    pub fn n(&self) -> usize {
        self.ring.n()
    }
    pub fn f(&self) -> &Polynomial {
        &self.f
    }
    pub fn g(&self) -> &Polynomial {
        &self.g
    }
    /// `deg g`.
    pub fn d(&self) -> u32 {
        self.d
    }

    /// The generators `f x_1, ..., f x_n, g` of `I`.
    pub fn generators(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = (1..=self.n()).map(|j| &self.f * &Polynomial::x(&self.ring, j)).collect();
        out.push(self.g.clone());
        out
    }

    /// The Rees substitution `y_j -> f x_j`, `y_{n+1} -> g`.
    pub fn rees_substitution(&self) -> Substitution {
        Substitution::new(self.generators()).expect("generators share the map's ring")
    }
}

/// `p = p0 + p1 * x_{n+1}` with `p0`, `p1` free of `x_{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonoidDecomposition {
    pub p0: Polynomial,
    pub p1: Polynomial,
}

/// A column `c` with `[x_1 .. x_n] * c = p`.
#[derive(Clone, Debug, PartialEq)]
pub struct SyzygyColumn {
    pub entries: Vec<Polynomial>,
}

impl SyzygyColumn {
    /// `sum_j v_j * entries[j]` for the given row of multipliers.
    pub fn contract(&self, row: &[Polynomial]) -> Polynomial {
        assert_eq!(row.len(), self.entries.len());
        let ring = row[0].ring();
        row.iter().zip(&self.entries).fold(Polynomial::zero(ring), |acc, (v, e)| &acc + &(v * e))
    }
}

#[derive(Clone, Debug)]
pub struct PresentationMatrix {
    /// Row-major, `n + 1` rows and `C(n,2) + 1` columns.
    pub entries: Vec<Vec<Polynomial>>,
}

impl PresentationMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|row| row[c].clone()).collect()
    }

    /// `row * matrix`.
    pub fn left_multiply(&self, row: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(row.len(), self.rows());
        (0..self.cols())
            .map(|c| {
                let ring = row[0].ring();
                row.iter()
                    .zip(&self.entries)
                    .fold(Polynomial::zero(ring), |acc, (v, r)| &acc + &(v * &r[c]))
            })
            .collect()
    }
}

fn describe_term(ring: &Arc<Ring>, t: &Term) -> String {
    format_poly(&Polynomial::monomial(ring, t.coeff.clone(), t.mono))
}

pub fn validate_map(ring: &Arc<Ring>, f: Polynomial, g: Polynomial) -> Result<DeJonquieresMap, MapError> {
    validate_map_with(ring, f, g, &Oracle::default())
}

pub fn validate_map_with(
    ring: &Arc<Ring>,
    f: Polynomial,
    g: Polynomial,
    oracle: &Oracle,
) -> Result<DeJonquieresMap, MapError> {
    for (name, p) in [("f", &f), ("g", &g)] {
        if **p.ring() != **ring {
            return Err(MapError::WrongRing);
        }
        if p.is_zero() || p.involves_y() || p.homogeneous_degree().is_none() {
            return Err(MapError::NotHomogeneous(name.into()));
        }
    }
    let df = f.homogeneous_degree().unwrap();
    let d = g.homogeneous_degree().unwrap();
    if df == 0 {
        return Err(MapError::DegreeMismatch("deg f must be positive".into()));
    }
    if d != df + 1 {
        return Err(MapError::DegreeMismatch(format!("deg g = {d} but deg f + 1 = {}", df + 1)));
    }
    if ring.spec().mode == Mode::Generalized {
        let f_split = monoid_split(&f).map_err(|e| rename_monoid(e, "f"))?;
        let g_split = monoid_split(&g).map_err(|e| rename_monoid(e, "g"))?;
        if f_split.p1.is_zero() && g_split.p1.is_zero() {
            return Err(MapError::MonoidMissingLastVariable(ring.n() + 1));
        }
    }
    // gcd(f, g) = 1  <=>  (f) : (g) = (f)
    let fi = IdealHandle::new(GeneratorSet::new(Label::Custom("(f)".into()), vec![f.clone()]));
    let gi = IdealHandle::new(GeneratorSet::new(Label::Custom("(g)".into()), vec![g.clone()]));
    let colon = oracle.colon_ideal(&fi, &gi)?;
    if !oracle.ideal_equality(&colon, &fi)? {
        return Err(MapError::NotCoprime);
    }
    Ok(DeJonquieresMap { ring: ring.clone(), f, g, d })
}

fn rename_monoid(e: MapError, name: &str) -> MapError {
    match e {
        MapError::NotMonoid { term, var, exp, .. } => MapError::NotMonoid { which: name.into(), term, var, exp },
        other => other,
    }
}

pub fn monoid_split(p: &Polynomial) -> Result<MonoidDecomposition, MapError> {
    let ring = p.ring();
    let last = ring.n() + 1;
    if ring.spec().mode != Mode::Generalized {
        return Ok(MonoidDecomposition { p0: p.clone(), p1: Polynomial::zero(ring) });
    }
    let idx = ring.x_index(last);
    if let Some(t) = p.terms().iter().find(|t| t.mono.exp(idx) >= 2) {
        return Err(MapError::NotMonoid {
            which: format_poly(p),
            term: describe_term(ring, t),
            var: last,
            exp: t.mono.exp(idx),
        });
    }
    let p0 = p.filter_terms(|t| t.mono.exp(idx) == 0);
    let with_last = p.filter_terms(|t| t.mono.exp(idx) == 1);
    let p1 = Polynomial::from_terms(
        ring,
        with_last
            .terms()
            .iter()
            .map(|t| {
                let mut m = t.mono;
                m.set_exp(idx, 0);
                Term { coeff: t.coeff.clone(), mono: m }
            })
            .collect(),
    );
    Ok(MonoidDecomposition { p0, p1 })
}

/// Builds `∂p`, sending each term to the entry picked by `choose` among
/// the indices `j <= n` with `x_j | m` (0-based, nonempty, increasing).
fn partial_column_by(
    p: &Polynomial,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Result<SyzygyColumn, MapError> {
    let ring = p.ring();
    let n = ring.n();
    let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); n];
    for t in p.terms() {
        let dividing: Vec<usize> = (0..n).filter(|&j| t.mono.exp(ring.x_index(j + 1)) > 0).collect();
        if dividing.is_empty() {
            return Err(MapError::NotInIdeal(describe_term(ring, t)));
        }
        let j = choose(&dividing);
        let idx = ring.x_index(j + 1);
        let mut m: Monomial = t.mono;
        m.set_exp(idx, m.exp(idx) - 1);
        buckets[j].push(Term { coeff: t.coeff.clone(), mono: m });
    }
    Ok(SyzygyColumn { entries: buckets.into_iter().map(|ts| Polynomial::from_terms(ring, ts)).collect() })
}

/// Canonical `∂p`: each term goes to the smallest `j` with `x_j | m`.
pub fn partial_column(p: &Polynomial) -> Result<SyzygyColumn, MapError> {
    partial_column_by(p, |js| js[0])
}

/// `∂p` with a uniformly random dividing index per term.
pub fn partial_column_random(p: &Polynomial, rng: &mut impl rand::Rng) -> Result<SyzygyColumn, MapError> {
    partial_column_by(p, |js| js[rng.gen_range(0..js.len())])
}

pub fn presentation_matrix(map: &DeJonquieresMap) -> PresentationMatrix {
    let ring = map.ring();
    let n = map.n();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let zero = Polynomial::zero(ring);
    let mut entries = vec![vec![zero; pairs.len() + 1]; n + 1];
    for (c, &(i, j)) in pairs.iter().enumerate() {
        entries[i - 1][c] = Polynomial::x(ring, j).neg();
        entries[j - 1][c] = Polynomial::x(ring, i);
    }
    let dg = partial_column(map.g()).expect("g lies in the ideal (x1..xn) for a validated map");
    for (r, e) in dg.entries.into_iter().enumerate() {
        entries[r][pairs.len()] = e;
    }
    entries[n][pairs.len()] = map.f().neg();
    PresentationMatrix { entries }
}

/// `h = sum_j y_j (∂g)_j - f y_{n+1}`.
pub fn initial_syzygy_h(map: &DeJonquieresMap) -> Polynomial {
    let ring = map.ring();
    let dg = partial_column(map.g()).expect("g lies in the ideal (x1..xn) for a validated map");
    let ys: Vec<Polynomial> = (1..=map.n()).map(|j| Polynomial::y(ring, j)).collect();
    &dg.contract(&ys) - &(map.f() * &Polynomial::y(ring, map.n() + 1))
}

/// Snapshot of a map for reports.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceEcho {
    pub mode: Mode,
    pub n: usize,
    pub d: u32,
    pub field: String,
    pub f: String,
    pub g: String,
}

impl From<&DeJonquieresMap> for InstanceEcho {
    fn from(m: &DeJonquieresMap) -> Self {
        InstanceEcho {
            mode: m.mode(),
            n: m.n(),
            d: m.d(),
            field: m.spec().field.to_string(),
            f: format_poly(m.f()),
            g: format_poly(m.g()),
        }
    }
}

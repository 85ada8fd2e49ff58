//! Downgraded sequences and the generator sets built from them.
//!
//! Starting from `h_1 = h`, each step sets `h_i = [y_1 .. y_n] * ∂h_{i-1}`.
//! With the canonical `∂` this trades, in every term, the x-variable of
//! smallest index among `x_1..x_n` for the matching y-variable.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::jonq::{initial_syzygy_h, partial_column, partial_column_random, DeJonquieresMap, MapError, SyzygyColumn};
use crate::poly::{Bidegree, BidegreeOf, Mode, Polynomial, Ring};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DowngradeError {
    #[error("cannot downgrade: {0}")]
    NotDowngradable(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl From<MapError> for DowngradeError {
    fn from(e: MapError) -> Self {
        match e {
            MapError::NotInIdeal(t) => DowngradeError::NotDowngradable(format!("term {t} is free of x1..xn")),
            other => DowngradeError::NotDowngradable(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    Minors,
    SymmetricL,
    PartialJ(usize),
    ReesJ,
    K,
    Maximal,
    Custom(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Minors => write!(f, "minors"),
            Label::SymmetricL => write!(f, "L"),
            Label::PartialJ(i) => write!(f, "J{i}"),
            Label::ReesJ => write!(f, "J"),
            Label::K => write!(f, "K"),
            Label::Maximal => write!(f, "m"),
            Label::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// A labelled list of generators in one ring. Not minimalized.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub label: Label,
    pub gens: Vec<Polynomial>,
    pub ring: Arc<Ring>,
}

impl GeneratorSet {
    /// Panics if `gens` is empty; use [`GeneratorSet::with_ring`] for that.
    pub fn new(label: Label, gens: Vec<Polynomial>) -> Self {
        let ring = gens.first().expect("generator set needs a ring").ring().clone();
        Self::with_ring(label, gens, &ring)
    }

    pub fn with_ring(label: Label, gens: Vec<Polynomial>, ring: &Arc<Ring>) -> Self {
        assert!(gens.iter().all(|g| **g.ring() == **ring), "generators from different rings");
        GeneratorSet { label, gens, ring: ring.clone() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn extended(&self, label: Label, extra: impl IntoIterator<Item = Polynomial>) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        GeneratorSet { label, gens, ring: self.ring.clone() }
    }
}

/// `h_1, ..., h_L`.
#[derive(Clone, Debug, PartialEq)]
pub struct DowngradedSequence {
    pub polys: Vec<Polynomial>,
}

impl DowngradedSequence {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// `h_i`, 1-based.
    pub fn h(&self, i: usize) -> &Polynomial {
        &self.polys[i - 1]
    }
}

fn step_from_column(h_prev: &Polynomial, col: &SyzygyColumn) -> Polynomial {
    let ring = h_prev.ring();
    let ys: Vec<Polynomial> = (1..=ring.n()).map(|j| Polynomial::y(ring, j)).collect();
    col.contract(&ys)
}

pub fn downgrade_step(h_prev: &Polynomial) -> Result<Polynomial, DowngradeError> {
    let col = partial_column(h_prev)?;
    Ok(step_from_column(h_prev, &col))
}

/// One step with a random admissible `∂`.
pub fn downgrade_step_random(h_prev: &Polynomial, rng: &mut impl rand::Rng) -> Result<Polynomial, DowngradeError> {
    let col = partial_column_random(h_prev, rng)?;
    Ok(step_from_column(h_prev, &col))
}

/// Length of a full sequence: `d` (standard) or `d - 1` (generalized).
pub fn sequence_length(map: &DeJonquieresMap) -> usize {
    match map.mode() {
        Mode::Standard => map.d() as usize,
        Mode::Generalized => map.d() as usize - 1,
    }
}

fn build_sequence(
    map: &DeJonquieresMap,
    mut step: impl FnMut(&Polynomial) -> Result<Polynomial, DowngradeError>,
) -> Result<DowngradedSequence, DowngradeError> {
    let len = sequence_length(map);
    let mut polys = vec![initial_syzygy_h(map)];
    while polys.len() < len {
        let next = step(polys.last().unwrap())?;
        polys.push(next);
    }
    let d = map.d();
    for (k, h) in polys.iter().enumerate() {
        let i = k as u32 + 1;
        if h.is_zero() {
            return Err(DowngradeError::InternalInvariantViolation(format!("h{i} vanished")));
        }
        let expected = Bidegree::new(d - i, i);
        if h.bidegree() != BidegreeOf::Bihomogeneous(expected) {
            return Err(DowngradeError::InternalInvariantViolation(format!(
                "h{i} = {h} is not bihomogeneous of bidegree {expected}"
            )));
        }
    }
    Ok(DowngradedSequence { polys })
}

pub fn downgraded_sequence(map: &DeJonquieresMap) -> Result<DowngradedSequence, DowngradeError> {
    build_sequence(map, downgrade_step)
}

/// A full sequence where each `∂` picks dividing indices at random.
pub fn downgraded_sequence_random(
    map: &DeJonquieresMap,
    rng: &mut impl rand::Rng,
) -> Result<DowngradedSequence, DowngradeError> {
    build_sequence(map, |h| downgrade_step_random(h, rng))
}

/// The 2x2 minors `x_i y_j - x_j y_i`, `1 <= i < j <= n`.
pub fn minors_generators(ring: &Arc<Ring>) -> GeneratorSet {
    let n = ring.n();
    let mut gens = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            let a = &Polynomial::x(ring, i) * &Polynomial::y(ring, j);
            let b = &Polynomial::x(ring, j) * &Polynomial::y(ring, i);
            gens.push(&a - &b);
        }
    }
    GeneratorSet::with_ring(Label::Minors, gens, ring)
}

/// `L = I_2(ψ) + (h)`.
pub fn symmetric_ideal(map: &DeJonquieresMap) -> GeneratorSet {
    minors_generators(map.ring()).extended(Label::SymmetricL, [initial_syzygy_h(map)])
}

/// `J_i = I_2(ψ) + (h_1, ..., h_i)` for a given sequence.
pub fn partial_ideal(ring: &Arc<Ring>, seq: &DowngradedSequence, i: usize) -> GeneratorSet {
    minors_generators(ring).extended(Label::PartialJ(i), seq.polys[..i].iter().cloned())
}

/// `J = I_2(ψ) + (h_1, ..., h_L)` from a given sequence.
pub fn rees_ideal_from(ring: &Arc<Ring>, seq: &DowngradedSequence) -> GeneratorSet {
    minors_generators(ring).extended(Label::ReesJ, seq.polys.iter().cloned())
}

pub fn rees_ideal(map: &DeJonquieresMap) -> Result<GeneratorSet, DowngradeError> {
    Ok(rees_ideal_from(map.ring(), &downgraded_sequence(map)?))
}

#[derive(Clone, Debug, PartialEq)]
pub enum ImplicitEquation {
    Hypersurface(Polynomial),
    /// The map is dominant: the fiber ring is the whole polynomial ring.
    Dominant,
}

pub fn implicit_equation(map: &DeJonquieresMap) -> Result<ImplicitEquation, DowngradeError> {
    match map.mode() {
        Mode::Generalized => Ok(ImplicitEquation::Dominant),
        Mode::Standard => {
            let seq = downgraded_sequence(map)?;
            Ok(ImplicitEquation::Hypersurface(seq.polys.last().unwrap().clone()))
        }
    }
}

/// `K = I_2(ψ) + (x_n, y_n)`.
pub fn k_ideal(ring: &Arc<Ring>) -> GeneratorSet {
    let n = ring.n();
    minors_generators(ring).extended(Label::K, [Polynomial::x(ring, n), Polynomial::y(ring, n)])
}

/// `m = (x_1, ..., x_n)`.
pub fn maximal_ideal(ring: &Arc<Ring>) -> GeneratorSet {
    GeneratorSet::with_ring(Label::Maximal, (1..=ring.n()).map(|j| Polynomial::x(ring, j)).collect(), ring)
}

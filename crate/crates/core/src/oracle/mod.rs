//! Gröbner-basis engine used to verify ideal identities: membership,
//! equality, intersection, colon, saturation, elimination and Krull
//! dimension.

mod groebner;

use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::downgrade::{GeneratorSet, Label};
use crate::jonq::DeJonquieresMap;
use crate::poly::{Mode, Monomial, Polynomial, Ring, TermOrder};

use groebner::{reduce, reduced_basis, Counters, Reducers};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("ideal is the unit ideal")]
    ImproperIdeal,
    #[error("elimination ideal is not principal: {0}")]
    NotPrincipal(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Per-call work limits for Buchberger runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_pairs: u64,
    pub max_monomial_ops: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 1_000_000, max_monomial_ops: 10_000_000 }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_pairs: u64::MAX, max_monomial_ops: u64::MAX }
    }

    pub fn with_pairs(max_pairs: u64) -> Self {
        Budget { max_pairs, ..Budget::default() }
    }
}

/// Working field for randomized oracle runs.
pub const DEFAULT_PRIME: u32 = 32003;

/// A reduced Gröbner basis: monic leads, no lead dividing another, tails
/// fully reduced. Sorted by ascending lead monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> TermOrder {
        self.ring.order()
    }

    /// The ring carrying this basis's term order.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|p| p.lead_monomial().unwrap()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(Polynomial::is_constant)
    }

    /// Every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        groebner::is_groebner(&self.basis, &self.ring)
    }
}

/// Generators plus lazily computed bases, one slot per term order.
#[derive(Clone, Debug)]
pub struct IdealHandle {
    gens: GeneratorSet,
    cache: [OnceLock<GroebnerBasis>; 3],
}

impl IdealHandle {
    pub fn new(gens: GeneratorSet) -> Self {
        IdealHandle { gens, cache: Default::default() }
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens.gens
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.gens.ring
    }

    pub fn label(&self) -> &Label {
        &self.gens.label
    }

    pub fn relabel(mut self, label: Label) -> Self {
        self.gens.label = label;
        self
    }

    fn from_basis(label: Label, base: &Arc<Ring>, gb: GroebnerBasis) -> Self {
        let gens = gb.basis.iter().map(|p| p.to_ring(base)).collect();
        let handle = IdealHandle::new(GeneratorSet::with_ring(label, gens, base));
        let _ = handle.cache[gb.order().slot()].set(gb);
        handle
    }
}

impl From<GeneratorSet> for IdealHandle {
    fn from(g: GeneratorSet) -> Self {
        IdealHandle::new(g)
    }
}

/// Result of [`Oracle::saturate`].
#[derive(Clone, Debug)]
pub struct Saturation {
    pub ideal: IdealHandle,
    /// Number of colon steps that strictly enlarged the ideal.
    pub steps: usize,
}

/// Entry point for oracle computations under one budget.
#[derive(Clone, Debug, Default)]
pub struct Oracle {
    pub budget: Budget,
}

const MAX_SATURATION_STEPS: usize = 64;

impl Oracle {
    pub fn new(budget: Budget) -> Self {
        Oracle { budget }
    }

    pub fn buchberger(&self, gens: &GeneratorSet, order: TermOrder) -> Result<GroebnerBasis, OracleError> {
        self.basis_in(&gens.gens, &gens.ring.reorder(order))
    }

    fn basis_in(&self, gens: &[Polynomial], ring: &Arc<Ring>) -> Result<GroebnerBasis, OracleError> {
        let mut counters = Counters::default();
        let basis = reduced_basis(gens, ring, &self.budget, &mut counters)?;
        Ok(GroebnerBasis { ring: ring.clone(), basis })
    }

    /// Cached basis of `ideal` under `order`.
    pub fn basis<'a>(&self, ideal: &'a IdealHandle, order: TermOrder) -> Result<&'a GroebnerBasis, OracleError> {
        let slot = &ideal.cache[order.slot()];
        if let Some(gb) = slot.get() {
            return Ok(gb);
        }
        let gb = self.buchberger(&ideal.gens, order)?;
        let _ = slot.set(gb);
        Ok(slot.get().unwrap())
    }

    pub fn normal_form(&self, p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
        let q = p.to_ring(&gb.ring);
        let red = Reducers::new(gb.basis.iter());
        let r = reduce(&q, &red, &gb.ring, &mut Counters::default(), &Budget::unlimited())
            .expect("unlimited budget");
        r.to_ring(p.ring())
    }

    pub fn contains(&self, ideal: &IdealHandle, p: &Polynomial) -> Result<bool, OracleError> {
        let gb = self.basis(ideal, TermOrder::Grevlex)?;
        Ok(self.normal_form(p, gb).is_zero())
    }

    /// `a ⊆ b`.
    pub fn is_subset(&self, a: &IdealHandle, b: &IdealHandle) -> Result<bool, OracleError> {
        let gb = self.basis(b, TermOrder::Grevlex)?;
        Ok(a.gens().iter().all(|g| self.normal_form(g, gb).is_zero()))
    }

    pub fn ideal_equality(&self, a: &IdealHandle, b: &IdealHandle) -> Result<bool, OracleError> {
        Ok(self.is_subset(a, b)? && self.is_subset(b, a)?)
    }

    /// `a ∩ b` as `(w a + (1 - w) b) ∩ k[x, y]`.
    pub fn intersect(&self, a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle, OracleError> {
        let base = a.ring().reorder(TermOrder::Grevlex);
        let label = Label::Custom(format!("({}) ∩ ({})", a.label(), b.label()));
        let a_gens: Vec<&Polynomial> = a.gens().iter().filter(|g| !g.is_zero()).collect();
        let b_gens: Vec<&Polynomial> = b.gens().iter().filter(|g| !g.is_zero()).collect();
        if a_gens.is_empty() || b_gens.is_empty() {
            return Ok(IdealHandle::new(GeneratorSet::with_ring(label, vec![], &base)));
        }
        let aux = Ring::with_aux(*base.spec(), TermOrder::Grevlex, 1);
        let w = Polynomial::var(&aux, aux.aux_index(0));
        let one_minus_w = &Polynomial::one(&aux) - &w;
        let mut gens: Vec<Polynomial> = a_gens.iter().map(|g| &w * &g.to_ring(&aux)).collect();
        gens.extend(b_gens.iter().map(|g| &one_minus_w * &g.to_ring(&aux)));
        let gb = self.basis_in(&gens, &aux)?;
        let widx = aux.aux_index(0);
        let kept: Vec<Polynomial> =
            gb.basis.iter().filter(|p| !p.involves_var(widx)).map(|p| p.to_ring(&base)).collect();
        let result = self.basis_in(&kept, &base)?;
        Ok(IdealHandle::from_basis(label, &base, result))
    }

    /// `a : (g)` for a single polynomial.
    pub fn colon_poly(&self, a: &IdealHandle, g: &Polynomial) -> Result<IdealHandle, OracleError> {
        let base = a.ring().reorder(TermOrder::Grevlex);
        let label = Label::Custom(format!("({}) : ({})", a.label(), g));
        if g.is_zero() {
            return Ok(IdealHandle::new(GeneratorSet::with_ring(label, vec![Polynomial::one(&base)], &base)));
        }
        let principal =
            IdealHandle::new(GeneratorSet::with_ring(Label::Custom(g.to_string()), vec![g.to_ring(a.ring())], a.ring()));
        let meet = self.intersect(a, &principal)?;
        let g_base = g.to_ring(&base);
        let quotients: Vec<Polynomial> = meet
            .gens()
            .iter()
            .map(|p| p.div_exact(&g_base).expect("elements of a ∩ (g) are multiples of g"))
            .collect();
        let gb = self.basis_in(&quotients, &base)?;
        Ok(IdealHandle::from_basis(label, &base, gb))
    }

    /// `a : b = ∩_g (a : g)` over the generators `g` of `b`.
    pub fn colon_ideal(&self, a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle, OracleError> {
        let gens: Vec<&Polynomial> = b.gens().iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(OracleError::Precondition("colon by the zero ideal".into()));
        }
        let mut acc = self.colon_poly(a, gens[0])?;
        for g in &gens[1..] {
            let next = self.colon_poly(a, g)?;
            acc = self.intersect(&acc, &next)?;
        }
        Ok(acc.relabel(Label::Custom(format!("({}) : ({})", a.label(), b.label()))))
    }

    /// `a : b^∞`, iterating colons until the chain stabilizes.
    pub fn saturate(&self, a: &IdealHandle, b: &IdealHandle) -> Result<Saturation, OracleError> {
        let mut current = a.clone();
        for steps in 0..MAX_SATURATION_STEPS {
            let next = self.colon_ideal(&current, b)?;
            if self.is_subset(&next, &current)? {
                let ideal = current.relabel(Label::Custom(format!("({}) : ({})^inf", a.label(), b.label())));
                return Ok(Saturation { ideal, steps });
            }
            current = next;
        }
        Err(OracleError::ResourceLimit(format!("saturation did not stabilize in {MAX_SATURATION_STEPS} steps")))
    }

    /// Contraction of `a` to `k[y]`.
    pub fn eliminate_x(&self, a: &IdealHandle) -> Result<IdealHandle, OracleError> {
        let gb = self.basis(a, TermOrder::BlockEliminateX)?;
        let base = a.ring().reorder(TermOrder::Grevlex);
        let kept: Vec<Polynomial> = gb.basis.iter().filter(|p| !p.involves_x()).map(|p| p.to_ring(&base)).collect();
        let reduced = self.basis_in(&kept, &base)?;
        Ok(IdealHandle::from_basis(Label::Custom(format!("({}) ∩ k[y]", a.label())), &base, reduced))
    }

    /// Implicit equation of the image by eliminating `x` from the graph
    /// ideal `(y_j - f x_j, y_{n+1} - g)`, monic under grevlex.
    pub fn implicitize_elimination(&self, map: &DeJonquieresMap) -> Result<Polynomial, OracleError> {
        if map.mode() != Mode::Standard {
            return Err(OracleError::Precondition("elimination implicitization needs a standard map".into()));
        }
        let ring = map.ring();
        let gens: Vec<Polynomial> = map
            .generators()
            .iter()
            .enumerate()
            .map(|(k, image)| &Polynomial::y(ring, k + 1) - image)
            .collect();
        let graph = IdealHandle::new(GeneratorSet::with_ring(Label::Custom("graph".into()), gens, ring));
        let image = self.eliminate_x(&graph)?;
        match image.gens() {
            [eq] if eq.homogeneous_degree() == Some(map.d()) => Ok(eq.monic().to_ring(ring)),
            other => Err(OracleError::NotPrincipal(format!(
                "expected one generator of degree {}, got [{}]",
                map.d(),
                other.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    /// Krull dimension of `R / a`: the largest set of variables containing
    /// the support of no lead monomial of a Gröbner basis.
    pub fn krull_dimension(&self, a: &IdealHandle) -> Result<usize, OracleError> {
        let gb = self.basis(a, TermOrder::Grevlex)?;
        if gb.is_unit() {
            return Err(OracleError::ImproperIdeal);
        }
        let nv = a.ring().base_vars();
        let masks: Vec<u32> = gb.lead_monomials().iter().map(|m| m.support().fold(0u32, |acc, i| acc | 1 << i)).collect();
        Ok(max_independent_set(nv, &masks))
    }
}

fn max_independent_set(nv: usize, masks: &[u32]) -> usize {
    fn dfs(i: usize, set: u32, size: usize, nv: usize, masks: &[u32], best: &mut usize) {
        if size + (nv - i) <= *best {
            return;
        }
        if i == nv {
            *best = size;
            return;
        }
        let with = set | 1 << i;
        if masks.iter().all(|&m| m & !with != 0) {
            dfs(i + 1, with, size + 1, nv, masks, best);
        }
        dfs(i + 1, set, size, nv, masks, best);
    }
    let mut best = 0;
    dfs(0, 0, 0, nv, masks, &mut best);
    best
}

#[cfg(test)]
mod tests;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{is_prime, Field};
use super::monomial::{cmp_grevlex, cmp_lex, Monomial, MAX_VARS};
use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Standard,
    Generalized,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Standard => write!(f, "standard"),
            Mode::Generalized => write!(f, "generalized"),
        }
    }
}

/// The bigraded ring `k[x_1..x_m, y_1..y_{n+1}]` with `m = n` (standard) or
/// `m = n + 1` (generalized).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub mode: Mode,
    pub n: usize,
    pub field: Field,
}

impl RingSpec {
    pub fn new(mode: Mode, n: usize, field: Field) -> Result<Self, PolyError> {
        if n < 2 {
            return Err(PolyError::InvalidRing(format!("n must be at least 2, got {n}")));
        }
        if let Field::Prime(p) = field {
            if !is_prime(p) || p >= (1 << 31) {
                return Err(PolyError::InvalidRing(format!(
                    "field characteristic {p} is not a prime below 2^31"
                )));
            }
        }
        let spec = RingSpec { mode, n, field };
        // room for one auxiliary variable used by the oracle
        if spec.nvars() + 1 > MAX_VARS {
            return Err(PolyError::InvalidRing(format!(
                "n = {n} needs {} variables, more than the supported {}",
                spec.nvars() + 1,
                MAX_VARS
            )));
        }
        Ok(spec)
    }

    pub fn standard(n: usize, field: Field) -> Result<Self, PolyError> {
        Self::new(Mode::Standard, n, field)
    }

    pub fn generalized(n: usize, field: Field) -> Result<Self, PolyError> {
        Self::new(Mode::Generalized, n, field)
    }

    pub fn x_count(&self) -> usize {
        match self.mode {
            Mode::Standard => self.n,
            Mode::Generalized => self.n + 1,
        }
    }

    pub fn y_count(&self) -> usize {
        self.n + 1
    }

    pub fn nvars(&self) -> usize {
        self.x_count() + self.y_count()
    }
}

/// Monomial orders exposed to callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermOrder {
    Grevlex,
    Lex,
    /// x-block strictly above the y-block, grevlex inside each block.
    BlockEliminateX,
}

impl TermOrder {
    pub const ALL: [TermOrder; 3] = [TermOrder::Grevlex, TermOrder::Lex, TermOrder::BlockEliminateX];

    pub(crate) fn slot(&self) -> usize {
        match self {
            TermOrder::Grevlex => 0,
            TermOrder::Lex => 1,
            TermOrder::BlockEliminateX => 2,
        }
    }
}

/// A concrete polynomial ring: variable layout, term order, and any
/// auxiliary variables (appended after the y-block, never user-visible).
///
/// With auxiliary variables the order first compares total auxiliary
/// degree, which makes it an elimination order for them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    spec: RingSpec,
    order: TermOrder,
    aux: usize,
}

impl Ring {
    pub fn new(spec: RingSpec) -> Arc<Ring> {
        Arc::new(Ring { spec, order: TermOrder::Grevlex, aux: 0 })
    }

    pub fn with_order(spec: RingSpec, order: TermOrder) -> Arc<Ring> {
        Arc::new(Ring { spec, order, aux: 0 })
    }

    pub(crate) fn with_aux(spec: RingSpec, order: TermOrder, aux: usize) -> Arc<Ring> {
        assert!(spec.nvars() + aux <= MAX_VARS);
        Arc::new(Ring { spec, order, aux })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn field(&self) -> Field {
        self.spec.field
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn aux(&self) -> usize {
        self.aux
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn x_count(&self) -> usize {
        self.spec.x_count()
    }

    pub fn y_count(&self) -> usize {
        self.spec.y_count()
    }

    /// Number of non-auxiliary variables.
    pub fn base_vars(&self) -> usize {
        self.spec.nvars()
    }

    pub fn nvars(&self) -> usize {
        self.spec.nvars() + self.aux
    }

    /// Variable index of `x_i` (1-based).
    pub fn x_index(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.x_count(), "x{i} is not a variable of this ring");
        i - 1
    }

    /// Variable index of `y_i` (1-based).
    pub fn y_index(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.y_count(), "y{i} is not a variable of this ring");
        self.x_count() + i - 1
    }

    pub(crate) fn aux_index(&self, i: usize) -> usize {
        assert!(i < self.aux);
        self.spec.nvars() + i
    }

    pub fn x_range(&self) -> std::ops::Range<usize> {
        0..self.x_count()
    }

    pub fn y_range(&self) -> std::ops::Range<usize> {
        self.x_count()..self.spec.nvars()
    }

    pub fn var_name(&self, index: usize) -> String {
        let xc = self.x_count();
        if index < xc {
            format!("x{}", index + 1)
        } else if index < self.spec.nvars() {
            format!("y{}", index - xc + 1)
        } else {
            format!("w{}", index - self.spec.nvars() + 1)
        }
    }

    /// Same variables and auxiliaries, different order.
    pub fn reorder(&self, order: TermOrder) -> Arc<Ring> {
        Arc::new(Ring { spec: self.spec, order, aux: self.aux })
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let base = self.spec.nvars();
        if self.aux > 0 {
            let da = a.degree_in(base..base + self.aux);
            let db = b.degree_in(base..base + self.aux);
            if da != db {
                return da.cmp(&db);
            }
        }
        let ord = match self.order {
            TermOrder::Grevlex => cmp_grevlex(a, b, 0..base),
            TermOrder::Lex => cmp_lex(a, b, 0..base),
            TermOrder::BlockEliminateX => cmp_grevlex(a, b, self.x_range())
                .then_with(|| cmp_grevlex(a, b, self.y_range())),
        };
        if ord != Ordering::Equal || self.aux == 0 {
            return ord;
        }
        cmp_grevlex(a, b, base..base + self.aux)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec3() -> RingSpec {
        RingSpec::standard(3, Field::Rationals).unwrap()
    }

    #[test]
    fn layout() {
        let r = Ring::new(spec3());
        assert_eq!(r.nvars(), 7);
        assert_eq!(r.var_name(r.x_index(3)), "x3");
        assert_eq!(r.var_name(r.y_index(4)), "y4");
        let g = Ring::new(RingSpec::generalized(3, Field::Prime(5)).unwrap());
        assert_eq!(g.x_count(), 4);
        assert_eq!(g.var_name(g.y_index(1)), "y1");
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(RingSpec::standard(1, Field::Rationals).is_err());
        assert!(RingSpec::standard(3, Field::Prime(4)).is_err());
        assert!(RingSpec::standard(3, Field::Prime(1)).is_err());
        assert!(RingSpec::standard(12, Field::Rationals).is_err());
        assert!(RingSpec::standard(11, Field::Rationals).is_ok());
    }

    #[test]
    fn block_order_eliminates_x() {
        let r = Ring::with_order(spec3(), TermOrder::BlockEliminateX);
        let x3 = Monomial::var(r.x_index(3));
        let y_big = Monomial::from_exponents(&[0, 0, 0, 5, 5, 5, 5]);
        assert_eq!(r.cmp(&x3, &y_big), Ordering::Greater);
    }
}

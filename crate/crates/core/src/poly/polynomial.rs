use std::cmp::Ordering;
use std::sync::Arc;

use super::field::Coeff;
use super::monomial::{Bidegree, Monomial};
use super::ring::{Ring, TermOrder};
use super::PolyError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

/// Sparse polynomial with terms strictly descending in the ring's order.
/// Immutable once built: every operation returns a fresh value.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Polynomial({})", super::format_poly(self))
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&super::format_poly(self))
    }
}

/// Result of [`Polynomial::bidegree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BidegreeOf {
    Zero,
    Bihomogeneous(Bidegree),
    NotBihomogeneous,
}

impl std::fmt::Display for BidegreeOf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BidegreeOf::Zero => write!(f, "zero"),
            BidegreeOf::Bihomogeneous(b) => write!(f, "{b}"),
            BidegreeOf::NotBihomogeneous => write!(f, "mixed"),
        }
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Coeff) -> Self {
        Self::monomial(ring, c, Monomial::one())
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, c: Coeff, mono: Monomial) -> Self {
        if ring.field().is_zero(&c) {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![Term { coeff: c, mono }] }
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        assert!(index < ring.nvars());
        Self::monomial(ring, ring.field().one(), Monomial::var(index))
    }

    /// `x_i`, 1-based.
    pub fn x(ring: &Arc<Ring>, i: usize) -> Self {
        Self::var(ring, ring.x_index(i))
    }

    /// `y_i`, 1-based.
    pub fn y(ring: &Arc<Ring>, i: usize) -> Self {
        Self::var(ring, ring.y_index(i))
    }

    /// Builds a canonical polynomial from arbitrary terms: sorts, merges
    /// duplicate monomials and drops zero coefficients.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<Term>) -> Self {
        let field = ring.field();
        terms.sort_by(|a, b| ring.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                }
                _ => {
                    if let Some(last) = out.last() {
                        if field.is_zero(&last.coeff) {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if let Some(last) = out.last() {
            if field.is_zero(&last.coeff) {
                out.pop();
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Caller guarantees canonical order and nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.mono)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// Total degree when every term has the same one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.mono.degree();
        self.terms.iter().all(|t| t.mono.degree() == d).then_some(d)
    }

    pub fn bidegree(&self) -> BidegreeOf {
        let mut it = self.terms.iter().map(|t| self.term_bidegree(&t.mono));
        let Some(first) = it.next() else {
            return BidegreeOf::Zero;
        };
        if it.all(|b| b == first) {
            BidegreeOf::Bihomogeneous(first)
        } else {
            BidegreeOf::NotBihomogeneous
        }
    }

    pub(crate) fn term_bidegree(&self, m: &Monomial) -> Bidegree {
        Bidegree::new(m.degree_in(self.ring.x_range()), m.degree_in(self.ring.y_range()))
    }

    pub fn involves_var(&self, index: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exp(index) > 0)
    }

    pub fn involves_y(&self) -> bool {
        self.ring.y_range().any(|i| self.involves_var(i))
    }

    pub fn involves_x(&self) -> bool {
        self.ring.x_range().any(|i| self.involves_var(i))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::MixedRings)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let field = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &Coeff| if negate { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { coeff: sign(&b[j].coeff), mono: b[j].mono });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        field.sub(&a[i].coeff, &b[j].coeff)
                    } else {
                        field.add(&a[i].coeff, &b[j].coeff)
                    };
                    if !field.is_zero(&c) {
                        out.push(Term { coeff: c, mono: a[i].mono });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term { coeff: sign(&t.coeff), mono: t.mono }));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        let field = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for s in &self.terms {
            for t in &other.terms {
                terms.push(Term { coeff: field.mul(&s.coeff, &t.coeff), mono: s.mono.mul(&t.mono) });
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|t| Term { coeff: field.neg(&t.coeff), mono: t.mono }).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|t| Term { coeff: field.mul(&t.coeff, c), mono: t.mono }).collect(),
        }
    }

    /// Multiplies by `c * m`; monomial multiplication preserves the order.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: field.mul(&t.coeff, c), mono: t.mono.mul(m) })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.lead() {
            None => self.clone(),
            Some(t) => {
                let field = self.ring.field();
                if field.is_one(&t.coeff) {
                    self.clone()
                } else {
                    self.scale(&field.inv(&t.coeff))
                }
            }
        }
    }

    /// Re-expresses the polynomial in a ring with the same base variables
    /// (possibly another order or a different number of auxiliary
    /// variables). Panics if an auxiliary variable would be dropped.
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Polynomial {
        assert_eq!(self.ring.spec(), ring.spec(), "incompatible rings");
        if Arc::ptr_eq(&self.ring, ring) || *self.ring == **ring {
            return Polynomial { ring: ring.clone(), terms: self.terms.clone() };
        }
        for t in &self.terms {
            for i in ring.nvars()..self.ring.nvars() {
                assert_eq!(t.mono.exp(i), 0, "auxiliary variable cannot be dropped");
            }
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.cmp(&b.mono, &a.mono));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn with_order(&self, order: TermOrder) -> Polynomial {
        self.to_ring(&self.ring.reorder(order))
    }

    /// Exact quotient `self / divisor`; `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let lead = divisor.lead()?.clone();
        let field = self.ring.field();
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some(t) = rem.lead() {
            let m = t.mono.div(&lead.mono)?;
            let c = field.div(&t.coeff, &lead.coeff);
            rem = &rem - &divisor.mul_term(&c, &m);
            quotient.push(Term { coeff: c, mono: m });
        }
        Some(Polynomial::from_terms(&self.ring, quotient))
    }

    /// Splits by a predicate on terms.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Term) -> bool) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    /// Multiplies by `x_i^e` for a variable index.
    pub fn mul_var(&self, index: usize, e: u16) -> Polynomial {
        let mut m = Monomial::one();
        m.set_exp(index, e);
        self.mul_term(&self.ring.field().one(), &m)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$inner(rhs).expect("polynomials from different rings")
            }
        }
        impl std::ops::$trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$inner(&rhs).expect("polynomials from different rings")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

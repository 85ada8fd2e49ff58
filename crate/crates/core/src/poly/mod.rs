//! Exact multivariate polynomials over `Q` and `F_p` in the bigraded ring
//! `k[x, y]`, with canonical parsing and printing.
//!
//! Rees-kernel membership is tested by substituting `y_i -> F_i` without the
//! Rees parameter `t`. For a bihomogeneous `p` of y-degree `b` the image of
//! `p` under `y_i -> F_i t` equals `t^b` times its image under `y_i -> F_i`,
//! so the two vanish together.

mod field;
mod monomial;
mod parse;
mod polynomial;
mod ring;

use std::fmt::Write;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use field::{is_prime, Coeff, Field};
pub use monomial::{Bidegree, Monomial, MAX_VARS};
pub use parse::parse_poly;
pub use polynomial::{BidegreeOf, Polynomial, Term};
pub use ring::{Mode, Ring, RingSpec, TermOrder};

pub(crate) use field::format_rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("coefficient {text} at position {pos} is not in field {field}")]
    CoefficientNotInField { pos: usize, text: String, field: Field },
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

pub fn bidegree_of(p: &Polynomial) -> BidegreeOf {
    p.bidegree()
}

fn format_monomial(ring: &Ring, m: &Monomial, out: &mut String) {
    let mut first = true;
    for i in m.support() {
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&ring.var_name(i));
        let e = m.exp(i);
        if e > 1 {
            write!(out, "^{e}").unwrap();
        }
    }
}

/// Canonical text: terms in the ring's order, explicit `*` and `^`,
/// unit coefficients suppressed, `F_p` coefficients in the symmetric range.
pub fn format_poly(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ring = p.ring();
    let field = ring.field();
    let mut out = String::new();
    for (k, t) in p.terms().iter().enumerate() {
        let c = field.signed_repr(&t.coeff);
        let neg = c.is_negative();
        let abs = c.abs();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if t.mono.is_one() {
            out.push_str(&format_rational(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&format_rational(&abs));
                out.push('*');
            }
            format_monomial(ring, &t.mono, &mut out);
        }
        debug_assert!(!abs.is_zero());
    }
    out
}

/// Images for the y-variables; x-variables map to themselves.
#[derive(Clone, Debug)]
pub struct Substitution {
    images: Vec<Polynomial>,
}

impl Substitution {
    /// One image per y-variable, all in the same ring.
    pub fn new(images: Vec<Polynomial>) -> Result<Self, PolyError> {
        let Some(first) = images.first() else {
            return Err(PolyError::InvalidRing("substitution needs images".into()));
        };
        let ring = first.ring().clone();
        if images.len() != ring.y_count() || images.iter().any(|p| **p.ring() != *ring) {
            return Err(PolyError::MixedRings);
        }
        Ok(Substitution { images })
    }

    /// `y_i -> y_i`.
    pub fn identity(ring: &Arc<Ring>) -> Self {
        Substitution { images: (1..=ring.y_count()).map(|i| Polynomial::y(ring, i)).collect() }
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }
}

pub fn substitute(p: &Polynomial, s: &Substitution) -> Polynomial {
    let ring = p.ring();
    let field = ring.field();
    // cached powers of each image
    let mut powers: Vec<Vec<Polynomial>> = s.images.iter().map(|img| vec![Polynomial::one(ring), img.clone()]).collect();
    let mut acc = Polynomial::zero(ring);
    for t in p.terms() {
        let mut xpart = t.mono;
        let mut value = Polynomial::one(ring);
        for (j, yi) in ring.y_range().enumerate() {
            let e = t.mono.exp(yi) as usize;
            if e == 0 {
                continue;
            }
            xpart.set_exp(yi, 0);
            while powers[j].len() <= e {
                let next = &powers[j][powers[j].len() - 1] * &s.images[j];
                powers[j].push(next);
            }
            value = &value * &powers[j][e];
        }
        acc = &acc + &value.mul_term(&t.coeff, &xpart);
    }
    debug_assert!(acc.terms().iter().all(|t| !field.is_zero(&t.coeff)));
    acc
}

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::jonq::{validate_map, DeJonquieresMap};
use crate::poly::{Field, Mode, Monomial, Polynomial, Ring, RingSpec, Term};

/// Shape of a random instance over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub mode: Mode,
    pub n: usize,
    pub d: u32,
    pub prime: u32,
}

const MAX_ATTEMPTS: usize = 10_000;

/// All x-monomials of degree `k`, at most linear in `x_{n+1}` for
/// generalized rings.
fn x_monomials(ring: &Ring, k: u32) -> Vec<Monomial> {
    fn go(ring: &Ring, var: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        let nx = ring.x_count();
        if var + 1 == nx {
            let cap = if ring.spec().mode == Mode::Generalized { 1 } else { u32::MAX };
            if left <= cap {
                cur.set_exp(ring.x_index(var + 1), left as u16);
                out.push(*cur);
                cur.set_exp(ring.x_index(var + 1), 0);
            }
            return;
        }
        for e in 0..=left {
            cur.set_exp(ring.x_index(var + 1), e as u16);
            go(ring, var + 1, left - e, cur, out);
        }
        cur.set_exp(ring.x_index(var + 1), 0);
    }
    let mut out = Vec::new();
    go(ring, 0, k, &mut Monomial::one(), &mut out);
    out
}

/// A form of degree `k` with 3 to 6 terms (fewer if the degree has fewer
/// monomials) and nonzero coefficients.
pub fn random_homogeneous(ring: &Arc<Ring>, k: u32, rng: &mut impl Rng) -> Polynomial {
    let field = ring.field();
    let pool = x_monomials(ring, k);
    let count = rng.gen_range(3..=6).min(pool.len());
    let chosen: Vec<&Monomial> = pool.choose_multiple(rng, count).collect();
    let terms = chosen
        .into_iter()
        .map(|m| {
            let c = match field {
                Field::Prime(p) => rng.gen_range(1..p as i64),
                Field::Rationals => {
                    let v = rng.gen_range(1..=9i64);
                    if rng.gen_bool(0.5) {
                        -v
                    } else {
                        v
                    }
                }
            };
            Term { coeff: field.from_i64(c), mono: *m }
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Samples `f`, `g` until they form a valid map.
pub fn random_map(spec: RandomSpec, rng: &mut impl Rng) -> DeJonquieresMap {
    let ring = Ring::new(RingSpec::new(spec.mode, spec.n, Field::Prime(spec.prime)).expect("valid random ring"));
    for _ in 0..MAX_ATTEMPTS {
        let f = random_homogeneous(&ring, spec.d - 1, rng);
        let g = random_homogeneous(&ring, spec.d, rng);
        if let Ok(map) = validate_map(&ring, f, g) {
            return map;
        }
    }
    panic!("no valid instance for {spec:?} after {MAX_ATTEMPTS} attempts");
}

//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the
//! normal selection strategy.

use std::cmp::Ordering;
use std::sync::Arc;

use super::{Budget, OracleError};
use crate::poly::{Monomial, Polynomial, Ring, Term};

/// Work counters checked against a [`Budget`].
#[derive(Debug, Default)]
pub(crate) struct Counters {
    pub pairs: u64,
    pub monomial_ops: u64,
}

impl Counters {
    fn charge_ops(&mut self, n: usize, budget: &Budget) -> Result<(), OracleError> {
        self.monomial_ops += n as u64;
        if self.monomial_ops > budget.max_monomial_ops {
            return Err(OracleError::ResourceLimit(format!(
                "more than {} monomial operations",
                budget.max_monomial_ops
            )));
        }
        Ok(())
    }

    fn charge_pair(&mut self, budget: &Budget) -> Result<(), OracleError> {
        self.pairs += 1;
        if self.pairs > budget.max_pairs {
            return Err(OracleError::ResourceLimit(format!("more than {} pair reductions", budget.max_pairs)));
        }
        Ok(())
    }
}

#[inline]
fn support_mask(m: &Monomial) -> u32 {
    m.support().fold(0u32, |acc, i| acc | (1 << i))
}

/// Divisors available for reduction, with cached lead data.
pub(crate) struct Reducers<'a> {
    polys: Vec<&'a Polynomial>,
    leads: Vec<(Monomial, u32)>,
}

impl<'a> Reducers<'a> {
    pub fn new(polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let polys: Vec<&Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        let leads = polys
            .iter()
            .map(|p| {
                let m = p.lead_monomial().unwrap();
                (m, support_mask(&m))
            })
            .collect();
        Reducers { polys, leads }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = support_mask(m);
        self.leads
            .iter()
            .position(|(lm, lmask)| lmask & !mask == 0 && lm.divides(m))
    }
}

/// Full reduction of `p` by `reducers`: no term of the result is divisible
/// by a lead monomial. All polynomials must live in `ring`.
pub(crate) fn reduce(
    p: &Polynomial,
    reducers: &Reducers<'_>,
    ring: &Arc<Ring>,
    counters: &mut Counters,
    budget: &Budget,
) -> Result<Polynomial, OracleError> {
    let field = ring.field();
    let mut work: Vec<Term> = p.terms().to_vec();
    let mut head = 0usize;
    let mut rem: Vec<Term> = Vec::new();
    while head < work.len() {
        let t = &work[head];
        match reducers.find(&t.mono) {
            None => {
                rem.push(work[head].clone());
                head += 1;
            }
            Some(k) => {
                let g = reducers.polys[k];
                let lead = g.lead().unwrap();
                let c = field.div(&t.coeff, &lead.coeff);
                let m = t.mono.div(&lead.mono).unwrap();
                // work[head+1..] - c*m*g[1..]
                let tail = &work[head + 1..];
                let gt = &g.terms()[1..];
                let mut out = Vec::with_capacity(tail.len() + gt.len());
                let (mut i, mut j) = (0, 0);
                while i < tail.len() && j < gt.len() {
                    let gm = gt[j].mono.mul(&m);
                    match ring.cmp(&tail[i].mono, &gm) {
                        Ordering::Greater => {
                            out.push(tail[i].clone());
                            i += 1;
                        }
                        Ordering::Less => {
                            out.push(Term { coeff: field.neg(&field.mul(&c, &gt[j].coeff)), mono: gm });
                            j += 1;
                        }
                        Ordering::Equal => {
                            let v = field.sub(&tail[i].coeff, &field.mul(&c, &gt[j].coeff));
                            if !field.is_zero(&v) {
                                out.push(Term { coeff: v, mono: gm });
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
                out.extend(tail[i..].iter().cloned());
                out.extend(gt[j..].iter().map(|t| Term { coeff: field.neg(&field.mul(&c, &t.coeff)), mono: t.mono.mul(&m) }));
                counters.charge_ops(tail.len() + gt.len(), budget)?;
                work = out;
                head = 0;
            }
        }
    }
    Ok(Polynomial::from_sorted_terms(ring, rem))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn s_polynomial(a: &Polynomial, b: &Polynomial, lcm: &Monomial) -> Polynomial {
    let field = a.ring().field();
    let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
    let ma = lcm.div(&la.mono).unwrap();
    let mb = lcm.div(&lb.mono).unwrap();
    let pa = a.mul_term(&field.inv(&la.coeff), &ma);
    let pb = b.mul_term(&field.inv(&lb.coeff), &mb);
    &pa - &pb
}

struct State {
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lead(&self, i: usize) -> Monomial {
        self.polys[i].lead_monomial().unwrap()
    }

    /// Gebauer–Möller update for a new basis element.
    fn insert(&mut self, h: Polynomial) {
        let hn = self.polys.len();
        let lh = h.lead_monomial().unwrap();
        self.polys.push(h);
        self.active.push(true);

        let candidates: Vec<Pair> = (0..hn)
            .filter(|&g| self.active[g])
            .map(|g| Pair { i: g, j: hn, lcm: lh.lcm(&self.lead(g)) })
            .collect();

        // Chain criterion among the new pairs: keep (h,g1) if its lead is
        // coprime with h or no other new pair's lcm properly divides it.
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let coprime = lh.is_coprime(&self.lead(p.i));
            let dominated = candidates.iter().enumerate().any(|(l, q)| {
                l != k && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || l < k)
            });
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        // Drop duplicates of equal lcm that survived, preferring the first.
        let mut deduped: Vec<Pair> = Vec::new();
        for p in kept {
            if !deduped.iter().any(|q| q.lcm == p.lcm) {
                deduped.push(p);
            }
        }
        // Product criterion.
        let fresh: Vec<Pair> = deduped
            .into_iter()
            .filter(|p| !lh.is_coprime(&self.lead(p.i)))
            .collect();

        // Old pairs made redundant by h.
        let leads: Vec<Monomial> = (0..self.polys.len()).map(|k| self.lead(k)).collect();
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && leads[p.i].lcm(&lh) != p.lcm && leads[p.j].lcm(&lh) != p.lcm)
        });
        self.pairs.extend(fresh);

        for (active, lead) in self.active.iter_mut().zip(&leads).take(hn) {
            if *active && lh.divides(lead) {
                *active = false;
            }
        }
    }

    fn active_polys(&self) -> impl Iterator<Item = &Polynomial> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p)
    }
}

/// Reduced Gröbner basis of `gens` (all in `ring`), sorted by ascending
/// lead monomial. Empty for the zero ideal.
pub(crate) fn reduced_basis(
    gens: &[Polynomial],
    ring: &Arc<Ring>,
    budget: &Budget,
    counters: &mut Counters,
) -> Result<Vec<Polynomial>, OracleError> {
    let mut inputs: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.to_ring(ring).monic()).collect();
    inputs.sort_by(|a, b| ring.cmp(&a.lead_monomial().unwrap(), &b.lead_monomial().unwrap()));

    let mut st = State { polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in inputs {
        let r = {
            let red = Reducers::new(st.active_polys());
            reduce(&g, &red, ring, counters, budget)?
        };
        if !r.is_zero() {
            if r.is_constant() {
                return Ok(vec![Polynomial::one(ring)]);
            }
            st.insert(r.monic());
        }
    }

    while !st.pairs.is_empty() {
        let mut best = 0;
        for k in 1..st.pairs.len() {
            if ring.cmp(&st.pairs[k].lcm, &st.pairs[best].lcm) == Ordering::Less {
                best = k;
            }
        }
        let pair = st.pairs.swap_remove(best);
        counters.charge_pair(budget)?;
        let s = s_polynomial(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm);
        let r = {
            let red = Reducers::new(st.active_polys());
            reduce(&s, &red, ring, counters, budget)?
        };
        if !r.is_zero() {
            if r.is_constant() {
                return Ok(vec![Polynomial::one(ring)]);
            }
            st.insert(r.monic());
        }
    }

    // interreduce the minimal basis
    let minimal: Vec<Polynomial> = st.active_polys().cloned().collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, p) in minimal.iter().enumerate() {
        let others = Reducers::new(minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, q)| q));
        let lead = p.lead().unwrap().clone();
        let tail = Polynomial::from_sorted_terms(ring, p.terms()[1..].to_vec());
        let tail = reduce(&tail, &others, ring, counters, budget)?;
        let mut terms = vec![lead];
        terms.extend(tail.into_terms());
        reduced.push(Polynomial::from_sorted_terms(ring, terms).monic());
    }
    reduced.sort_by(|a, b| ring.cmp(&a.lead_monomial().unwrap(), &b.lead_monomial().unwrap()));
    Ok(reduced)
}

/// Checks that every S-polynomial of `basis` reduces to zero.
pub(crate) fn is_groebner(basis: &[Polynomial], ring: &Arc<Ring>) -> bool {
    let budget = Budget::unlimited();
    let mut counters = Counters::default();
    let red = Reducers::new(basis.iter());
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = basis[i].lead_monomial().unwrap().lcm(&basis[j].lead_monomial().unwrap());
            let s = s_polynomial(&basis[i], &basis[j], &lcm);
            match reduce(&s, &red, ring, &mut counters, &budget) {
                Ok(r) if r.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

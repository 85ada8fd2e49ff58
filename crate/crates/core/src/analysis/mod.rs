//! Closed-formula reporting for `S(I)` and `R(I)` plus the cross-checks
//! that tie the formulas to oracle computations.

mod random;
mod verify;

use std::fmt;

use serde::Serialize;

use crate::jonq::DeJonquieresMap;
use crate::oracle::GroebnerBasis;
use crate::poly::{Mode, Monomial};

pub use random::{random_homogeneous, random_map, RandomSpec};
pub use verify::{
    corrupt_sequence, verify_sequence, verify_suite, CheckResult, CheckStatus, VerifyOptions, VerifyReport,
};

/// One summand `B^rank(a, b)` of `F_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub rank: u64,
    pub shift: (i64, i64),
}

/// Minimal bigraded free resolution of `S(I) = B / L` over `B = k[x, y]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub n: usize,
    pub d: u32,
    pub entries: Vec<BettiEntry>,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j + 1) as u64)
}

fn push(entries: &mut Vec<BettiEntry>, i: usize, rank: u64, shift: (i64, i64)) {
    if rank == 0 {
        return;
    }
    match entries.iter_mut().find(|e| e.i == i && e.shift == shift) {
        Some(e) => e.rank += rank,
        None => entries.push(BettiEntry { i, rank, shift }),
    }
}

/// Mapping cone of `h` on the bigraded Eagon-Northcott complex of the
/// minors. The `i`-th Eagon-Northcott module splits as
/// `⊕_{p<i} B^{C(n,i+1)}(-p-1, -(i-p))`.
pub fn betti_table(n: usize, d: u32) -> BettiTable {
    assert!(n >= 2 && d >= 2, "betti_table needs n >= 2 and d >= 2");
    let di = d as i64;
    let mut entries = vec![BettiEntry { i: 0, rank: 1, shift: (0, 0) }];
    push(&mut entries, 1, 1, (-di + 1, -1));
    for i in 1..=n {
        let ii = i as i64;
        if i >= 2 {
            for p in 0..ii - 1 {
                push(&mut entries, i, binomial(n, i), (-p - di, -ii + p));
            }
        }
        for p in 0..ii {
            push(&mut entries, i, binomial(n, i + 1), (-p - 1, -(ii - p)));
        }
    }
    BettiTable { n, d, entries }
}

/// Same ranks as [`betti_table`], but each block collapsed onto one shift:
/// `(-d-i+2, -i)` and `(-i, -i)`. Agrees with [`betti_table`] for `n = 2`;
/// its Hilbert numerator is wrong once `n >= 3`.
pub fn betti_table_collapsed(n: usize, d: u32) -> BettiTable {
    assert!(n >= 2 && d >= 2, "betti_table needs n >= 2 and d >= 2");
    let di = d as i64;
    let mut entries = vec![BettiEntry { i: 0, rank: 1, shift: (0, 0) }];
    entries.push(BettiEntry { i: 1, rank: 1, shift: (-di + 1, -1) });
    entries.push(BettiEntry { i: 1, rank: binomial(n, 2), shift: (-1, -1) });
    for i in 2..n {
        let ii = i as i64;
        entries.push(BettiEntry { i, rank: binomial(n, i) * (i as u64 - 1), shift: (-di - ii + 2, -ii) });
        entries.push(BettiEntry { i, rank: binomial(n, i + 1) * i as u64, shift: (-ii, -ii) });
    }
    let nn = n as i64;
    entries.push(BettiEntry { i: n, rank: n as u64 - 1, shift: (-di - nn + 2, -nn) });
    BettiTable { n, d, entries }
}

impl BettiTable {
    pub fn rank(&self, i: usize) -> u64 {
        self.entries.iter().filter(|e| e.i == i).map(|e| e.rank).sum()
    }

    pub fn ranks(&self) -> Vec<u64> {
        (0..=self.n).map(|i| self.rank(i)).collect()
    }

    pub fn alternating_sum(&self) -> i64 {
        self.ranks().iter().enumerate().map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// Number of variables of `B`.
    pub fn nvars(&self) -> usize {
        2 * self.n + 1
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..=self.n {
            let parts: Vec<String> = self
                .entries
                .iter()
                .filter(|e| e.i == i && e.rank > 0)
                .map(|e| {
                    let power = if e.rank == 1 { String::new() } else { format!("^{}", e.rank) };
                    let shift = if e.shift == (0, 0) { String::new() } else { format!("({},{})", e.shift.0, e.shift.1) };
                    format!("B{power}{shift}")
                })
                .collect();
            writeln!(f, "F{i} = {}", parts.join(" + "))?;
        }
        Ok(())
    }
}

/// Dimension and depth of `R(I)` read off the closed formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CMReport {
    pub mode: Mode,
    pub n: usize,
    pub d: u32,
    pub dim_rees: usize,
    pub depth_rees: usize,
    pub is_cm: bool,
    pub is_almost_cm: bool,
}

pub fn cm_formula(mode: Mode, n: usize, d: u32) -> CMReport {
    // CM threshold on d, and dim R(I) = number of x-variables + 1
    let (bound, dim) = match mode {
        Mode::Standard => (n, n + 1),
        Mode::Generalized => (n + 1, n + 2),
    };
    let is_cm = d as usize <= bound;
    let depth = if is_cm { dim } else { dim - 1 };
    CMReport { mode, n, d, dim_rees: dim, depth_rees: depth, is_cm, is_almost_cm: dim - depth <= 1 }
}

pub fn cm_report(map: &DeJonquieresMap) -> CMReport {
    cm_formula(map.mode(), map.n(), map.d())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for CMReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = match self.mode {
            Mode::Standard => format!("n={}", self.n),
            Mode::Generalized => format!("n+1={}", self.n + 1),
        };
        let rel = if self.is_cm { "≤" } else { ">" };
        writeln!(
            f,
            "dim={} depth={} CM={} (d={} {rel} {bound})",
            self.dim_rees,
            self.depth_rees,
            yes_no(self.is_cm),
            self.d
        )?;
        writeln!(f, "almost_CM={} (per closed formula)", yes_no(self.is_almost_cm))
    }
}

/// Numerator `K(z)` of a Hilbert series `K(z) / (1 - z)^vars` under the
/// total-degree grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertNumerator {
    pub coeffs: Vec<i64>,
    pub vars: usize,
}

fn trim(mut c: Vec<i64>) -> Vec<i64> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, v) in b.iter().enumerate() {
        a[k + shift] -= v;
    }
}

impl HilbertNumerator {
    pub fn new(coeffs: Vec<i64>, vars: usize) -> Self {
        HilbertNumerator { coeffs: trim(coeffs), vars }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Multiplicity of `z = 1` as a root of `K`.
    pub fn vanishing_order_at_one(&self) -> usize {
        let mut c = self.coeffs.clone();
        let mut order = 0;
        while !c.is_empty() && c.iter().sum::<i64>() == 0 {
            // synthetic division by (z - 1)
            let mut q = vec![0i64; c.len() - 1];
            let mut carry = 0i64;
            for k in (1..c.len()).rev() {
                carry += c[k];
                q[k - 1] = carry;
            }
            c = trim(q);
            order += 1;
        }
        order
    }
}

impl fmt::Display for HilbertNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn hilbert_from_betti(table: &BettiTable) -> HilbertNumerator {
    let top = table.entries.iter().map(|e| (-(e.shift.0 + e.shift.1)) as usize).max().unwrap_or(0);
    let mut coeffs = vec![0i64; top + 1];
    for e in &table.entries {
        let k = (-(e.shift.0 + e.shift.1)) as usize;
        let sign = if e.i % 2 == 0 { 1 } else { -1 };
        coeffs[k] += sign * e.rank as i64;
    }
    HilbertNumerator::new(coeffs, table.nvars())
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator of `k[vars] / (gens)` for a monomial ideal.
fn monomial_numerator(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1i64];
        for m in &gens {
            let mut next = acc.clone();
            poly_sub_shifted(&mut next, &acc, m.degree() as usize);
            acc = next;
        }
        return acc;
    }
    // N(I' + (m)) = N(I') - z^deg(m) N(I' : m), pivoting on the largest generator
    let (pivot, rest) = gens.split_last().unwrap();
    let colon: Vec<Monomial> = rest.iter().map(|g| g.div(&g.gcd(pivot)).unwrap()).collect();
    let mut out = monomial_numerator(rest.to_vec());
    poly_sub_shifted(&mut out, &monomial_numerator(colon), pivot.degree() as usize);
    out
}

/// Hilbert numerator of the ring modulo the lead-term ideal of `gb`.
pub fn hilbert_from_initial(gb: &GroebnerBasis) -> HilbertNumerator {
    HilbertNumerator::new(monomial_numerator(gb.lead_monomials()), gb.ring().base_vars())
}

/// Hilbert numerator of a monomial ideal in `vars` variables.
pub fn hilbert_of_monomials(gens: &[Monomial], vars: usize) -> HilbertNumerator {
    HilbertNumerator::new(monomial_numerator(gens.to_vec()), vars)
}

#[cfg(test)]
mod tests;

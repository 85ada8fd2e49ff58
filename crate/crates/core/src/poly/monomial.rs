use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Upper bound on the number of variables of any ring, auxiliary ones included.
pub const MAX_VARS: usize = 24;

/// Dense exponent vector. Positions past the ring's variable count stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "Monomial{:?}", &self.exps[..last])
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { exps: [0; MAX_VARS] }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn var(index: usize) -> Self {
        let mut m = Self::one();
        m.exps[index] = 1;
        m
    }

    #[inline]
    pub fn exp(&self, index: usize) -> u16 {
        self.exps[index]
    }

    #[inline]
    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn set_exp(&mut self, index: usize, e: u16) {
        self.exps[index] = e;
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(*b);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

/// Bidegree `(x-degree, y-degree)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub xdeg: u32,
    pub ydeg: u32,
}

impl Bidegree {
    pub fn new(xdeg: u32, ydeg: u32) -> Self {
        Bidegree { xdeg, ydeg }
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.xdeg + rhs.xdeg, self.ydeg + rhs.ydeg)
    }
}

impl std::fmt::Display for Bidegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.xdeg, self.ydeg)
    }
}

/// Graded reverse lexicographic comparison on the variables in `range`.
pub(crate) fn cmp_grevlex(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>) -> Ordering {
    let da = a.degree_in(range.clone());
    let db = b.degree_in(range.clone());
    if da != db {
        return da.cmp(&db);
    }
    for i in range.rev() {
        let (ea, eb) = (a.exp(i), b.exp(i));
        if ea != eb {
            // smaller exponent in the last differing variable wins
            return eb.cmp(&ea);
        }
    }
    Ordering::Equal
}

pub(crate) fn cmp_lex(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>) -> Ordering {
    for i in range {
        let (ea, eb) = (a.exp(i), b.exp(i));
        if ea != eb {
            return ea.cmp(&eb);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_gcd_divide() {
        let a = Monomial::from_exponents(&[2, 0, 1]);
        let b = Monomial::from_exponents(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), Monomial::from_exponents(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), Monomial::from_exponents(&[1, 0, 0]));
        assert!(a.gcd(&b).divides(&a));
        assert_eq!(a.lcm(&b).div(&a), Some(Monomial::from_exponents(&[0, 3, 0])));
        assert_eq!(a.div(&b), None);
        assert!(!a.is_coprime(&b));
    }

    #[test]
    fn grevlex_basics() {
        // x1*x3 < x2^2 in grevlex on 3 variables
        let a = Monomial::from_exponents(&[1, 0, 1]);
        let b = Monomial::from_exponents(&[0, 2, 0]);
        assert_eq!(cmp_grevlex(&a, &b, 0..3), Ordering::Less);
        assert_eq!(cmp_lex(&a, &b, 0..3), Ordering::Greater);
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Coefficient field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

/// A field element. `P` values are always reduced into `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    P(u32),
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p as u64 {
        if (p as u64).is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Field {
    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(BigRational::zero()),
            Field::Prime(_) => Coeff::P(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match *self {
            Field::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coeff::P(v.rem_euclid(p as i64) as u32),
        }
    }

    /// Maps `num/den` into the field; `None` when the denominator vanishes in it.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Coeff> {
        match *self {
            Field::Rationals => {
                if den.is_zero() {
                    None
                } else {
                    Some(Coeff::Q(BigRational::new(num.clone(), den.clone())))
                }
            }
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = num.mod_floor(&pb).to_u64()?;
                let d = den.mod_floor(&pb).to_u64()?;
                if d == 0 {
                    return None;
                }
                let inv = pow_mod(d, p as u64 - 2, p as u64);
                Some(Coeff::P((n * inv % p as u64) as u32))
            }
        }
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Q(q) => q.is_zero(),
            Coeff::P(v) => *v == 0,
        }
    }

    pub fn is_one(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Q(q) => q.is_one(),
            Coeff::P(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (_, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (Field::Prime(p), Coeff::P(x), Coeff::P(y)) => {
                Coeff::P(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (_, Coeff::Q(x)) => Coeff::Q(-x),
            (Field::Prime(p), Coeff::P(x)) => Coeff::P(if *x == 0 { 0 } else { p - x }),
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (_, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (Field::Prime(p), Coeff::P(x), Coeff::P(y)) => {
                Coeff::P((*x as u64 * *y as u64 % *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (_, Coeff::Q(x)) => Coeff::Q(x.recip()),
            (Field::Prime(p), Coeff::P(x)) => {
                Coeff::P(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    /// Signed representative used for printing: rationals as-is, `F_p`
    /// elements in the symmetric range `(-p/2, p/2]`.
    pub fn signed_repr(&self, c: &Coeff) -> BigRational {
        match (self, c) {
            (_, Coeff::Q(q)) => q.clone(),
            (Field::Prime(p), Coeff::P(v)) => {
                let v = *v as i64;
                let p = *p as i64;
                let s = if v > p / 2 { v - p } else { v };
                BigRational::from_integer(BigInt::from(s))
            }
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    /// Reduces a rational with integer coefficients; `None` when `den ≡ 0`.
    pub fn from_rational(&self, q: &BigRational) -> Option<Coeff> {
        self.from_ratio(q.numer(), q.denom())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

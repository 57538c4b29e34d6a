use std::fmt;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Ground field. Elements of every field are carried as [`Rational`]s; over
/// `F_p` they are always the canonical residues `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// `F_p`, rejecting composite or too-small moduli.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("modulus {p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("modulus {p} exceeds 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Rational {
        Rational::zero()
    }

    pub fn one(&self) -> Rational {
        Rational::one()
    }

    pub fn from_int(&self, n: i64) -> Rational {
        match self {
            Field::Rationals => Rational::from_int(n),
            Field::Prime(p) => Rational::from_int(n.rem_euclid(*p as i64)),
        }
    }

    /// Maps an arbitrary rational into the field. Fails over `F_p` when the
    /// denominator is divisible by `p`.
    pub fn embed(&self, x: &Rational) -> Result<Rational> {
        match self {
            Field::Rationals => Ok(x.clone()),
            Field::Prime(p) => {
                let p_big = num_bigint::BigInt::from(*p);
                let reduce = |v: num_bigint::BigInt| -> i64 {
                    let r = ((v % &p_big) + &p_big) % &p_big;
                    i64::try_from(r).expect("residue fits")
                };
                let n = reduce(x.numer());
                let d = reduce(x.denom());
                if d == 0 {
                    return Err(Error::InvalidField(format!(
                        "value {x} has denominator divisible by {p}"
                    )));
                }
                Ok(self.mul(&Rational::from_int(n), &self.inv(&Rational::from_int(d))))
            }
        }
    }

    /// True when `x` is a canonical element of this field.
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            Field::Rationals => true,
            Field::Prime(p) => matches!(x.as_small(), Some((n, 1)) if (0..*p as i64).contains(&n)),
        }
    }

    #[inline]
    fn residue(x: &Rational) -> i64 {
        match x.as_small() {
            Some((n, 1)) => n,
            _ => panic!("non-canonical F_p element {x}"),
        }
    }

    #[inline]
    pub fn add(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            Field::Rationals => a + b,
            Field::Prime(p) => {
                Rational::from_int((Self::residue(a) + Self::residue(b)) % *p as i64)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            Field::Rationals => a - b,
            Field::Prime(p) => {
                let p = *p as i64;
                Rational::from_int((Self::residue(a) - Self::residue(b)).rem_euclid(p))
            }
        }
    }

    #[inline]
    pub fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            Field::Rationals => a * b,
            Field::Prime(p) => {
                Rational::from_int((Self::residue(a) * Self::residue(b)) % *p as i64)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: &Rational) -> Rational {
        match self {
            Field::Rationals => -a,
            Field::Prime(p) => {
                let r = Self::residue(a);
                Rational::from_int(if r == 0 { 0 } else { *p as i64 - r })
            }
        }
    }

    pub fn inv(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => {
                let p = *p as i64;
                // Fermat: a^(p-2).
                let mut base = Self::residue(a);
                let mut e = p - 2;
                let mut acc = 1i64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Rational::from_int(acc)
            }
        }
    }

    pub fn div(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            Field::Rationals => a / b,
            Field::Prime(_) => self.mul(a, &self.inv(b)),
        }
    }

    /// `acc + a * b`
    #[inline]
    pub fn mul_add(&self, acc: &Rational, a: &Rational, b: &Rational) -> Rational {
        if a.is_zero() || b.is_zero() {
            return acc.clone();
        }
        self.add(acc, &self.mul(a, b))
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Rational>) -> Rational {
        items
            .into_iter()
            .fold(Rational::zero(), |acc, x| self.add(&acc, x))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Coefficients of every class. Integral and modular domains only ever hold
/// values with denominator one.
pub type Scalar = BigRational;

/// Coefficient domain of a cohomology ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Integer,
    /// Integers modulo a prime `p`; values are kept in `0..p`.
    Modular(u32),
    Rational,
}

impl Domain {
    pub fn modular(p: u32) -> Result<Domain> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidDomain(format!("{p} is not prime")));
        }
        Ok(Domain::Modular(p))
    }

    pub fn from_int(&self, value: BigInt) -> Scalar {
        self.reduce(Scalar::from_integer(value))
    }

    /// Brings `value` into canonical form for this domain.
    pub fn reduce(&self, value: Scalar) -> Scalar {
        match *self {
            Domain::Integer => {
                debug_assert!(value.is_integer(), "non-integral value in integral ring");
                value
            }
            Domain::Rational => value,
            Domain::Modular(p) => {
                let p = BigInt::from(p);
                let numer = value.numer().mod_floor(&p);
                let denom = value.denom().mod_floor(&p);
                let inv = mod_inverse(&denom, &p)
                    .expect("denominator is not invertible modulo p");
                Scalar::from_integer((numer * inv).mod_floor(&p))
            }
        }
    }

    pub fn is_zero(&self, value: &Scalar) -> bool {
        match *self {
            Domain::Modular(p) => {
                value.is_integer() && value.numer().mod_floor(&BigInt::from(p)).is_zero()
            }
            _ => value.is_zero(),
        }
    }

    /// Zero test for an integer computed in the integral lift of the ring.
    pub fn int_is_zero(&self, value: i128) -> bool {
        match *self {
            Domain::Modular(p) => value.rem_euclid(p as i128) == 0,
            _ => value == 0,
        }
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(text.to_string());
        let value = match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Scalar::new(n, d)
            }
            None => Scalar::from_integer(text.trim().parse().map_err(|_| bad())?),
        };
        match self {
            Domain::Integer if !value.is_integer() => Err(bad()),
            Domain::Modular(p) if (value.denom() % BigInt::from(*p)).is_zero() => Err(bad()),
            _ => Ok(self.reduce(value)),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integer => write!(f, "Z"),
            Domain::Modular(p) => write!(f, "Z/{p}"),
            Domain::Rational => write!(f, "Q"),
        }
    }
}

/// Decimal form: `"n"` for integers and `"n/d"` otherwise.
pub(crate) fn format_scalar(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let egcd = a.extended_gcd(p);
    if egcd.gcd.abs().is_one() {
        Some(egcd.x.mod_floor(p))
    } else {
        None
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

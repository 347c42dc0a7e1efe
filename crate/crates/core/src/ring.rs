//! Coefficient rings.
//!
//! Linear algebra always runs over a principal ideal domain: Z, Q or the
//! localization Z_(p). Modules over Z/m are carried as Z-modules with the
//! extra relations m·e_i, so `la` maps `IntegersMod(m)` to `Integers`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{is_prime, valuation, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffRing {
    Integers,
    IntegersMod(u64),
    Rationals,
    PLocal(u64),
}

impl CoeffRing {
    pub fn new_mod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Precondition(format!("Z/{m} needs m >= 2")));
        }
        Ok(CoeffRing::IntegersMod(m))
    }

    pub fn new_plocal(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(CoeffRing::PLocal(p))
    }

    /// The principal ideal domain used for matrix computations.
    pub fn la(&self) -> CoeffRing {
        match self {
            CoeffRing::IntegersMod(_) => CoeffRing::Integers,
            r => *r,
        }
    }

    /// Extra annihilator carried by every generator, if any.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            CoeffRing::IntegersMod(m) => Some(*m),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            CoeffRing::Rationals => true,
            CoeffRing::IntegersMod(m) => is_prime(*m),
            _ => false,
        }
    }

    pub fn contains(&self, x: Scalar) -> bool {
        match self {
            CoeffRing::Integers | CoeffRing::IntegersMod(_) => x.is_integer(),
            CoeffRing::Rationals => true,
            CoeffRing::PLocal(p) => x.denom() % (*p as i128) != 0,
        }
    }

    /// Checks membership and returns the canonical representative.
    pub fn normalize(&self, x: Scalar) -> Result<Scalar> {
        if !self.contains(x) {
            return Err(Error::Precondition(format!("{x} is not an element of {self}")));
        }
        Ok(match self {
            CoeffRing::IntegersMod(m) => Scalar::int(x.numer().rem_euclid(*m as i128)),
            _ => x,
        })
    }

    /// Whether `p` is invertible in this ring.
    pub fn inverts(&self, p: u64) -> bool {
        match self {
            CoeffRing::Integers => p == 1,
            CoeffRing::IntegersMod(m) => num_integer::gcd(*m, p) == 1,
            CoeffRing::Rationals => p != 0,
            CoeffRing::PLocal(q) => p % q != 0,
        }
    }

    /// Unit test in the linear-algebra ring.
    pub fn is_unit(&self, x: Scalar) -> bool {
        if x.is_zero() {
            return false;
        }
        match self.la() {
            CoeffRing::Integers => x.abs().is_one(),
            CoeffRing::Rationals => true,
            CoeffRing::PLocal(p) => x.numer() % (p as i128) != 0,
            CoeffRing::IntegersMod(_) => unreachable!(),
        }
    }

    /// Euclidean size; only compared between non-zero elements.
    pub fn norm(&self, x: Scalar) -> u128 {
        match self.la() {
            CoeffRing::Integers => x.numer().unsigned_abs(),
            CoeffRing::Rationals => 0,
            CoeffRing::PLocal(p) => valuation(x.numer(), p) as u128,
            CoeffRing::IntegersMod(_) => unreachable!(),
        }
    }

    /// Division with remainder, `a = q·b + r` with `r = 0` or `norm(r) < norm(b)`.
    pub fn div_rem(&self, a: Scalar, b: Scalar) -> (Scalar, Scalar) {
        assert!(!b.is_zero(), "division by zero");
        match self.la() {
            CoeffRing::Integers => {
                let (a, b) = (a.numer(), b.numer());
                let mut q = a.div_euclid(b);
                let mut r = a - q * b;
                if 2 * r.abs() > b.abs() {
                    if b > 0 {
                        q += 1;
                        r -= b;
                    } else {
                        q -= 1;
                        r += b;
                    }
                }
                (Scalar::int(q), Scalar::int(r))
            }
            CoeffRing::Rationals => (a / b, Scalar::ZERO),
            CoeffRing::PLocal(p) => {
                if a.is_zero() || valuation(b.numer(), p) <= valuation(a.numer(), p) {
                    (a / b, Scalar::ZERO)
                } else {
                    (Scalar::ZERO, a)
                }
            }
            CoeffRing::IntegersMod(_) => unreachable!(),
        }
    }

    pub fn divides(&self, a: Scalar, b: Scalar) -> bool {
        if b.is_zero() {
            return true;
        }
        if a.is_zero() {
            return false;
        }
        self.div_rem(b, a).1.is_zero()
    }

    /// Splits `x = u·c` with `u` a unit and `c` the canonical associate.
    pub fn unit_normal(&self, x: Scalar) -> (Scalar, Scalar) {
        if x.is_zero() {
            return (Scalar::ONE, Scalar::ZERO);
        }
        match self.la() {
            CoeffRing::Integers => {
                if x.is_negative() {
                    (Scalar::int(-1), -x)
                } else {
                    (Scalar::ONE, x)
                }
            }
            CoeffRing::Rationals => (x, Scalar::ONE),
            CoeffRing::PLocal(p) => {
                let c = Scalar::int(p as i128).pow(valuation(x.numer(), p));
                (x / c, c)
            }
            CoeffRing::IntegersMod(_) => unreachable!(),
        }
    }

    /// Text for the cyclic module R/(d), with `d` a canonical non-unit.
    pub fn cyclic_name(&self, d: Scalar) -> String {
        if d.is_zero() {
            return self.to_string();
        }
        match self {
            CoeffRing::IntegersMod(m) if d == Scalar::int(*m as i128) => self.to_string(),
            CoeffRing::PLocal(_) => format!("{self}/{d}"),
            _ => format!("Z/{d}"),
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::IntegersMod(m) => write!(f, "Z/{m}"),
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::PLocal(p) => write!(f, "Z_({p})"),
        }
    }
}

impl FromStr for CoeffRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("unknown ring `{s}`"));
        match t {
            "Z" => Ok(CoeffRing::Integers),
            "Q" => Ok(CoeffRing::Rationals),
            _ => {
                if let Some(m) = t.strip_prefix("Z/") {
                    let m: u64 = m.parse().map_err(|_| bad())?;
                    CoeffRing::new_mod(m).map_err(|e| Error::Parse(e.to_string()))
                } else if let Some(p) = t.strip_prefix("Z_(").and_then(|r| r.strip_suffix(')')) {
                    let p: u64 = p.parse().map_err(|_| bad())?;
                    CoeffRing::new_plocal(p).map_err(|e| Error::Parse(e.to_string()))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl serde::Serialize for CoeffRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for CoeffRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

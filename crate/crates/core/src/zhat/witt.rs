//! The completed Burnside ring of Ẑ, truncated at a level bound.
//!
//! Elements are finite sums `Σ a_i ε_i` with `ε_i = [Z/i]`, multiplied by
//! `ε_i ε_j = gcd(i, j) ε_{lcm(i, j)}`. Levels above the bound form an ideal
//! and are dropped.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::CoeffRing;
use crate::scalar::{gcd, lcm, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittElement {
    ring: CoeffRing,
    bound: u64,
    coeffs: BTreeMap<u64, Scalar>,
}

impl WittElement {
    pub fn zero(ring: CoeffRing, bound: u64) -> Self {
        WittElement { ring, bound, coeffs: BTreeMap::new() }
    }

    pub fn one(ring: CoeffRing, bound: u64) -> Self {
        Self::basis(ring, bound, 1).expect("level 1 is always present")
    }

    /// `ε_i`.
    pub fn basis(ring: CoeffRing, bound: u64, i: u64) -> Result<Self> {
        Self::from_terms(ring, bound, &[(i, Scalar::ONE)])
    }

    pub fn from_terms(ring: CoeffRing, bound: u64, terms: &[(u64, Scalar)]) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Precondition("truncation bound must be positive".into()));
        }
        let mut out = Self::zero(ring, bound);
        for &(i, c) in terms {
            if i == 0 {
                return Err(Error::Precondition("levels start at 1".into()));
            }
            if i > bound {
                return Err(Error::OutsideTruncation(i));
            }
            out.add_term(i, ring.normalize(c)?);
        }
        Ok(out)
    }

    fn add_term(&mut self, i: u64, c: Scalar) {
        if i > self.bound {
            return;
        }
        let e = self.coeffs.entry(i).or_insert(Scalar::ZERO);
        *e = self.ring.normalize(*e + c).expect("ring closed under addition");
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn coeff(&self, i: u64) -> Scalar {
        self.coeffs.get(&i).copied().unwrap_or(Scalar::ZERO)
    }

    /// Non-zero terms in increasing level order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, Scalar)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.bound != other.bound {
            return Err(Error::Precondition(format!(
                "truncation bounds differ: {} vs {}",
                self.bound, other.bound
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-Scalar::ONE)?)
    }

    pub fn scale(&self, c: Scalar) -> Result<Self> {
        let c = self.ring.normalize(c)?;
        let mut out = Self::zero(self.ring, self.bound);
        for (i, a) in self.terms() {
            out.add_term(i, a * c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.ring, self.bound);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                let m = lcm(i, j);
                if m <= self.bound {
                    out.add_term(m, a * b * Scalar::from(gcd(i, j) as i128));
                }
            }
        }
        Ok(out)
    }

    /// Ghost component `g_n = Σ_{i | n} i·a_i`, the number of `nẐ`-fixed points.
    pub fn ghost(&self, n: u64) -> Result<Scalar> {
        if n == 0 || n > self.bound {
            return Err(Error::OutsideTruncation(n));
        }
        Ok(self.terms().filter(|(i, _)| n % i == 0).map(|(i, a)| a * Scalar::from(i as i128)).sum())
    }

    pub fn ghost_vector(&self) -> Vec<Scalar> {
        (1..=self.bound).map(|n| self.ghost(n).expect("within bound")).collect()
    }

    /// Parses sums of products such as `3*e2 - 1/3*e6` or `(1 - e2)*e3`.
    pub fn parse(text: &str, ring: CoeffRing, bound: u64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Precondition("truncation bound must be positive".into()));
        }
        let mut p = Parser { s: text.as_bytes(), pos: 0, ring, bound };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

impl fmt::Display for WittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (i, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if i == 1 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "e{i}")?;
            } else {
                write!(f, "{a}*e{i}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WittJson {
    ring: CoeffRing,
    bound: u64,
    terms: Vec<(u64, Scalar)>,
}

impl Serialize for WittElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WittJson { ring: self.ring, bound: self.bound, terms: self.terms().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WittElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = WittJson::deserialize(d)?;
        WittElement::from_terms(j.ring, j.bound, &j.terms).map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    ring: CoeffRing,
    bound: u64,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in Witt element", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<WittElement> {
        let mut acc = WittElement::zero(self.ring, self.bound);
        let mut sign = Scalar::ONE;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -Scalar::ONE;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = acc.add(&t.scale(sign)?)?;
            match self.peek() {
                Some(b'+') => sign = Scalar::ONE,
                Some(b'-') => sign = -Scalar::ONE,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<WittElement> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.error("expected an integer"))
    }

    fn factor(&mut self) -> Result<WittElement> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'e') => {
                self.pos += 1;
                let i = self.integer()?;
                if i == 0 {
                    return Err(self.error("levels start at 1"));
                }
                if i > self.bound {
                    return Ok(WittElement::zero(self.ring, self.bound));
                }
                WittElement::basis(self.ring, self.bound, i)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut c = Scalar::from(n as i128);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d == 0 {
                        return Err(self.error("zero denominator"));
                    }
                    c = c / Scalar::from(d as i128);
                }
                WittElement::one(self.ring, self.bound).scale(c)
            }
            _ => Err(self.error("expected a number, `e<level>` or `(`")),
        }
    }
}

/// The orthogonal idempotent `ε_(l) = (1/l) ε_l · Π (1 − ε_i / i)` over
/// `i > 1` prime to `p` not dividing `l`, computed modulo levels above `bound`.
pub fn p_local_idempotent(p: u64, l: u64, bound: u64) -> Result<WittElement> {
    let ring = CoeffRing::new_plocal(p)?;
    if l == 0 || gcd(l, p) != 1 {
        return Err(Error::Precondition(format!("level {l} is not prime to {p}")));
    }
    if l > bound {
        return Err(Error::OutsideTruncation(l));
    }
    let mut e = WittElement::basis(ring, bound, l)?.scale(Scalar::frac(1, l as i128))?;
    for i in 2..=bound {
        if i % p == 0 || l % i == 0 {
            continue;
        }
        let factor = WittElement::from_terms(ring, bound, &[(1, Scalar::ONE), (i, -Scalar::frac(1, i as i128))])?;
        e = e.mul(&factor)?;
    }
    Ok(e)
}

/// Levels `l ≤ bound` prime to `p`, indexing the idempotents that sum to 1.
pub fn idempotent_levels(p: u64, bound: u64) -> Vec<u64> {
    (1..=bound).filter(|l| l % p != 0).collect()
}

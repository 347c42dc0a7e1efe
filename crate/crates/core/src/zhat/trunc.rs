//! Ẑ-Mackey profunctors truncated to a divisor-closed set of levels.
//!
//! Level `l` stands for the orbit `Z/l = Ẑ/lẐ`. For `b | a` the quotient
//! `Z/a → Z/b` gives `v_{a,b}: M_a → M_b` and `f_{a,b}: M_b → M_a`, and
//! `σ_l` is the pushforward along `t ↦ t + 1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::mackey::{MackeyFunctor, OrbitCategory, OrbitMap};
use crate::matrix::Matrix;
use crate::module::{FpModule, ModuleMap};
use crate::ring::CoeffRing;
use crate::scalar::{gcd, lcm, Scalar};

use super::witt::WittElement;

/// What the profunctor is known to be at levels outside the truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tail {
    /// Genuinely zero: the truncation is exact.
    Zero,
    /// Dropped modulo an ideal; results are exact only below the bound.
    Truncated,
    /// Not known; any computation that needs it fails.
    Unknown,
}

/// Raw data of a truncated profunctor. Missing `v`/`f` maps are generated
/// by composing along intermediate levels; steps of prime index are required.
#[derive(Clone, Debug)]
pub struct ZMackeyParts {
    pub ring: CoeffRing,
    pub levels: Vec<u64>,
    pub tail: Tail,
    pub values: BTreeMap<u64, FpModule>,
    pub sigma: BTreeMap<u64, Matrix>,
    pub v: BTreeMap<(u64, u64), Matrix>,
    pub f: BTreeMap<(u64, u64), Matrix>,
}

#[derive(Clone, Debug)]
pub struct ZMackeyTrunc {
    ring: CoeffRing,
    levels: Vec<u64>,
    tail: Tail,
    values: BTreeMap<u64, FpModule>,
    sigma: BTreeMap<u64, ModuleMap>,
    v: BTreeMap<(u64, u64), ModuleMap>,
    f: BTreeMap<(u64, u64), ModuleMap>,
}

fn check_levels(levels: &[u64]) -> Result<Vec<u64>> {
    let mut ls = levels.to_vec();
    ls.sort_unstable();
    ls.dedup();
    if ls.is_empty() || ls[0] == 0 {
        return Err(Error::Precondition("levels must be a non-empty set of positive integers".into()));
    }
    for &l in &ls {
        for d in 1..l {
            if l % d == 0 && ls.binary_search(&d).is_err() {
                return Err(Error::Precondition(format!("level set is not divisor closed: {d} divides {l}")));
            }
        }
    }
    Ok(ls)
}

impl ZMackeyTrunc {
    pub fn from_parts(parts: ZMackeyParts) -> Result<Self> {
        let levels = check_levels(&parts.levels)?;
        let ring = parts.ring;
        let mut values = BTreeMap::new();
        let mut sigma = BTreeMap::new();
        for &l in &levels {
            let m = parts.values.get(&l).ok_or_else(|| Error::Dimension(format!("no module at level {l}")))?;
            if m.ring() != ring {
                return Err(Error::RingMismatch(m.ring().to_string(), ring.to_string()));
            }
            let s = match parts.sigma.get(&l) {
                Some(s) => ModuleMap::new(m.clone(), m.clone(), s.clone())?,
                None => m.identity(),
            };
            values.insert(l, m.clone());
            sigma.insert(l, s);
        }
        let mut out = ZMackeyTrunc { ring, levels, tail: parts.tail, values, sigma, v: BTreeMap::new(), f: BTreeMap::new() };
        let mut pairs: Vec<(u64, u64)> = out.pairs().collect();
        pairs.sort_by_key(|&(a, b)| (a / b, a));
        for (a, b) in pairs {
            let (ma, mb) = (out.values[&a].clone(), out.values[&b].clone());
            let (v, f) = if a == b {
                (
                    parts.v.get(&(a, a)).map(|m| ModuleMap::new(ma.clone(), ma.clone(), m.clone())).transpose()?,
                    parts.f.get(&(a, a)).map(|m| ModuleMap::new(ma.clone(), ma.clone(), m.clone())).transpose()?,
                )
            } else {
                (
                    parts.v.get(&(a, b)).map(|m| ModuleMap::new(ma.clone(), mb.clone(), m.clone())).transpose()?,
                    parts.f.get(&(a, b)).map(|m| ModuleMap::new(mb.clone(), ma.clone(), m.clone())).transpose()?,
                )
            };
            let mid = out.levels.iter().copied().find(|&c| c != a && c != b && a % c == 0 && c % b == 0);
            let v = match (v, mid) {
                (Some(v), _) => v,
                (None, _) if a == b => ma.identity(),
                (None, _) if ma.gens() == 0 || mb.gens() == 0 => ma.zero_map(&mb),
                (None, Some(c)) => out.v[&(a, c)].then(&out.v[&(c, b)]),
                (None, None) => return Err(Error::Dimension(format!("missing pushforward v_{{{a},{b}}}"))),
            };
            let f = match (f, mid) {
                (Some(f), _) => f,
                (None, _) if a == b => ma.identity(),
                (None, _) if ma.gens() == 0 || mb.gens() == 0 => mb.zero_map(&ma),
                (None, Some(c)) => out.f[&(c, b)].then(&out.f[&(a, c)]),
                (None, None) => return Err(Error::Dimension(format!("missing pullback f_{{{a},{b}}}"))),
            };
            out.v.insert((a, b), v);
            out.f.insert((a, b), f);
        }
        Ok(out)
    }

    /// The data of `self` with every map listed explicitly.
    pub fn to_parts(&self) -> ZMackeyParts {
        ZMackeyParts {
            ring: self.ring,
            levels: self.levels.clone(),
            tail: self.tail,
            values: self.values.clone(),
            sigma: self.sigma.iter().map(|(&l, s)| (l, s.matrix().clone())).collect(),
            v: self.v.iter().filter(|((a, b), _)| a != b).map(|(&k, m)| (k, m.matrix().clone())).collect(),
            f: self.f.iter().filter(|((a, b), _)| a != b).map(|(&k, m)| (k, m.matrix().clone())).collect(),
        }
    }

    /// The zero profunctor on levels `1..=bound`.
    pub fn zero(ring: CoeffRing, bound: u64) -> Self {
        let levels: Vec<u64> = (1..=bound).collect();
        let values = levels.iter().map(|&l| (l, FpModule::zero(ring))).collect();
        Self::from_parts(ZMackeyParts {
            ring,
            levels,
            tail: Tail::Zero,
            values,
            sigma: BTreeMap::new(),
            v: BTreeMap::new(),
            f: BTreeMap::new(),
        })
        .expect("zero data is consistent")
    }

    /// All pairs `(a, b)` of levels with `b | a`, including `a = b`.
    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.levels
            .iter()
            .flat_map(move |&a| self.levels.iter().filter(move |&&b| a % b == 0).map(move |&b| (a, b)))
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn levels(&self) -> &[u64] {
        &self.levels
    }

    pub fn bound(&self) -> u64 {
        *self.levels.last().expect("non-empty")
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn contains(&self, l: u64) -> bool {
        self.levels.binary_search(&l).is_ok()
    }

    pub fn value(&self, l: u64) -> Result<&FpModule> {
        self.values.get(&l).ok_or(Error::OutsideTruncation(l))
    }

    pub fn sigma(&self, l: u64) -> Result<&ModuleMap> {
        self.sigma.get(&l).ok_or(Error::OutsideTruncation(l))
    }

    /// `σ_l^e` for any integer exponent.
    pub fn sigma_pow(&self, l: u64, e: i64) -> Result<ModuleMap> {
        Ok(self.sigma(l)?.pow(e.rem_euclid(l as i64) as u64))
    }

    pub fn v(&self, a: u64, b: u64) -> Result<&ModuleMap> {
        self.pair(&self.v, a, b)
    }

    pub fn f(&self, a: u64, b: u64) -> Result<&ModuleMap> {
        self.pair(&self.f, a, b)
    }

    fn pair<'a>(&self, maps: &'a BTreeMap<(u64, u64), ModuleMap>, a: u64, b: u64) -> Result<&'a ModuleMap> {
        if b == 0 || a % b != 0 {
            return Err(Error::Precondition(format!("{b} does not divide {a}")));
        }
        maps.get(&(a, b)).ok_or(Error::OutsideTruncation(if self.contains(b) { a } else { b }))
    }

    /// Whether data needed at level `m` outside the truncation may be taken as zero.
    fn outside(&self, m: u64) -> Result<()> {
        match self.tail {
            Tail::Unknown => Err(Error::OutsideTruncation(m)),
            _ => Ok(()),
        }
    }

    /// Action of a completed Burnside element on `M_l`: `ε_k` acts as
    /// `gcd(k, l)·v_{m,l} ∘ f_{m,l}` with `m = lcm(k, l)`, one term per orbit
    /// of `Z/l × Z/k`.
    pub fn eps_action(&self, a: &WittElement, l: u64) -> Result<ModuleMap> {
        let ml = self.value(l)?;
        let mut out = ml.zero_map(ml);
        for (k, c) in a.terms() {
            let c = self.ring.normalize(c)?;
            let m = lcm(k, l);
            if !self.contains(m) {
                self.outside(m)?;
                continue;
            }
            let act = self.f(m, l)?.then(self.v(m, l)?);
            out = out.add(&act.scale(c * Scalar::from(gcd(k, l) as i128)));
        }
        Ok(out)
    }

    /// Verifies the relations on every tuple of levels, collecting failures.
    pub fn check(&self) -> ZReport {
        let mut violations = Vec::new();
        let mut fail = |relation, levels: &[u64]| violations.push(ZViolation { relation, levels: levels.to_vec() });
        for &l in &self.levels {
            let s = &self.sigma[&l];
            if !s.pow(l).equals(&self.values[&l].identity()) {
                fail(ZRelation::SigmaOrder, &[l]);
            }
        }
        for (a, b) in self.pairs() {
            let (v, f) = (&self.v[&(a, b)], &self.f[&(a, b)]);
            let (sa, sb) = (&self.sigma[&a], &self.sigma[&b]);
            if a == b {
                let id = self.values[&a].identity();
                if !v.equals(&id) || !f.equals(&id) {
                    fail(ZRelation::Transitivity, &[a, a]);
                }
                continue;
            }
            if !sa.pow(b).then(v).equals(v) {
                fail(ZRelation::PushInvariance, &[a, b]);
            }
            if !f.then(&sa.pow(b)).equals(f) {
                fail(ZRelation::PullInvariance, &[a, b]);
            }
            if !sa.then(v).equals(&v.then(sb)) || !sb.then(f).equals(&f.then(sa)) {
                fail(ZRelation::Equivariance, &[a, b]);
            }
            let mut avg = self.values[&a].zero_map(&self.values[&a]);
            for j in 0..a / b {
                avg = avg.add(&sa.pow(j * b));
            }
            if !v.then(f).equals(&avg) {
                fail(ZRelation::Averaging, &[a, b]);
            }
            for &c in &self.levels {
                if b % c == 0 && c != b {
                    let tv = v.then(&self.v[&(b, c)]);
                    let tf = self.f[&(b, c)].then(f);
                    if !tv.equals(&self.v[&(a, c)]) || !tf.equals(&self.f[&(a, c)]) {
                        fail(ZRelation::Transitivity, &[a, b, c]);
                    }
                }
            }
        }
        for &b in &self.levels {
            for &x in &self.levels {
                for &y in &self.levels {
                    if x % b != 0 || y % b != 0 || x == b || y == b {
                        continue;
                    }
                    let (g, m) = (gcd(x, y), lcm(x, y));
                    let relation = if g == b { ZRelation::CoprimeDoubleCoset } else { ZRelation::DoubleCoset };
                    let lhs = self.v[&(x, b)].then(&self.f[&(y, b)]);
                    let ok = if self.contains(m) {
                        let (fm, vm) = (&self.f[&(m, x)], &self.v[&(m, y)]);
                        let mut rhs = self.values[&x].zero_map(&self.values[&y]);
                        for j in 0..g / b {
                            rhs = rhs.add(&fm.then(&self.sigma[&m].pow(j * b)).then(vm));
                        }
                        lhs.equals(&rhs)
                    } else if self.tail == Tail::Unknown {
                        true
                    } else {
                        lhs.is_zero()
                    };
                    if !ok {
                        fail(relation, &[x, y, b]);
                    }
                }
            }
        }
        ZReport { violations }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZRelation {
    /// `σ_l^l = id`.
    SigmaOrder,
    /// `v_{a,b} ∘ σ_a^b = v_{a,b}`.
    PushInvariance,
    /// `σ_a^b ∘ f_{a,b} = f_{a,b}`.
    PullInvariance,
    /// Composition along `c | b | a`, and identities on the diagonal.
    Transitivity,
    /// `v` and `f` commute with `σ`.
    Equivariance,
    /// `f_{y,b} ∘ v_{x,b} = v_{m,y} ∘ f_{m,x}` when `x/b` and `y/b` are coprime.
    CoprimeDoubleCoset,
    /// `f_{a,b} ∘ v_{a,b} = Σ_j σ_a^{jb}`.
    Averaging,
    /// `f_{y,b} ∘ v_{x,b} = Σ_{j < gcd(x,y)/b} v_{m,y} ∘ σ_m^{jb} ∘ f_{m,x}`.
    DoubleCoset,
}

impl ZRelation {
    /// Short tag `Z1`…`Z6`, or `DC` for the general double coset identity.
    pub fn tag(&self) -> &'static str {
        match self {
            ZRelation::SigmaOrder => "Z0",
            ZRelation::PushInvariance => "Z1",
            ZRelation::PullInvariance => "Z2",
            ZRelation::Transitivity => "Z3",
            ZRelation::Equivariance => "Z4",
            ZRelation::CoprimeDoubleCoset => "Z5",
            ZRelation::Averaging => "Z6",
            ZRelation::DoubleCoset => "DC",
        }
    }
}

impl fmt::Display for ZRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ZRelation::SigmaOrder => "order of sigma",
            ZRelation::PushInvariance => "invariance of pushforward",
            ZRelation::PullInvariance => "invariance of pullback",
            ZRelation::Transitivity => "transitivity",
            ZRelation::Equivariance => "equivariance",
            ZRelation::CoprimeDoubleCoset => "coprime double coset formula",
            ZRelation::Averaging => "averaging",
            ZRelation::DoubleCoset => "double coset formula",
        };
        write!(f, "{} ({s})", self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZViolation {
    pub relation: ZRelation,
    pub levels: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZReport {
    pub violations: Vec<ZViolation>,
}

impl ZReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fails(&self, r: ZRelation) -> bool {
        self.violations.iter().any(|v| v.relation == r)
    }
}

impl fmt::Display for ZReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "pass");
        }
        writeln!(f, "fail: {} violated relations", self.violations.len())?;
        for v in &self.violations {
            let ls: Vec<String> = v.levels.iter().map(u64::to_string).collect();
            writeln!(f, "  {} at ({})", v.relation, ls.join(", "))?;
        }
        Ok(())
    }
}

/// The truncated completed Burnside functor `Â = B̂(pt, −)`.
///
/// `Â_l` has basis `β_k` for `lk ≤ bound`, the span `pt ← Z/lk → Z/l`.
pub fn burnside_truncation(bound: u64, ring: CoeffRing) -> Result<ZMackeyTrunc> {
    if bound == 0 {
        return Err(Error::Precondition("truncation bound must be positive".into()));
    }
    let levels: Vec<u64> = (1..=bound).collect();
    let rank = |l: u64| (bound / l) as usize;
    let values = levels.iter().map(|&l| (l, FpModule::free(ring, rank(l)))).collect();
    let mut v = BTreeMap::new();
    let mut f = BTreeMap::new();
    for &a in &levels {
        for &b in levels.iter().filter(|&&b| a % b == 0 && b < a) {
            let mut pv = Matrix::zeros(rank(b), rank(a));
            for k in 1..=bound / a {
                pv[((a * k / b - 1) as usize, (k - 1) as usize)] = Scalar::ONE;
            }
            let mut pf = Matrix::zeros(rank(a), rank(b));
            for k in 1..=bound / b {
                let m = lcm(b * k, a);
                if m <= bound {
                    pf[((m / a - 1) as usize, (k - 1) as usize)] += Scalar::from((gcd(b * k, a) / b) as i128);
                }
            }
            v.insert((a, b), pv);
            f.insert((a, b), pf);
        }
    }
    ZMackeyTrunc::from_parts(ZMackeyParts { ring, levels, tail: Tail::Truncated, values, sigma: BTreeMap::new(), v, f })
}

/// A cyclic group with a chosen generator, read as `Ẑ/nẐ`.
pub(crate) struct CyclicModel {
    pub group: Group,
    pub n: u64,
    /// `power[t]` is the element `g^t`.
    pub power: Vec<usize>,
}

impl CyclicModel {
    pub fn new(group: &Group) -> Result<Self> {
        let n = group.order();
        let g = (0..n)
            .find(|&g| group.element_order(g) == n)
            .ok_or_else(|| Error::InvalidGroup(format!("{} is not cyclic", group.name())))?;
        let mut power = vec![0; n];
        for t in 1..n {
            power[t] = group.mul(power[t - 1], g);
        }
        Ok(CyclicModel { group: group.clone(), n: n as u64, power })
    }

    /// The class of the stabilizer of `Z/d`, for `d | n`.
    pub fn class_of_level(&self, d: u64) -> usize {
        let s = self.group.generate(&[self.power[(d % self.n) as usize]]);
        self.group.class_of(&s)
    }

    /// The level `n / |K|` of a subgroup class.
    pub fn level_of_class(&self, c: usize) -> u64 {
        self.n / self.group.class(c).order() as u64
    }

    /// The orbit map `Z/a → Z/b`, `0 ↦ t`.
    pub fn map_id(&self, a: u64, b: u64, t: u64) -> usize {
        let (ca, cb) = (self.class_of_level(a), self.class_of_level(b));
        let point = self.group.cosets(cb).coset_of[self.power[(t % self.n) as usize]];
        OrbitCategory::of(&self.group).id_of(&OrbitMap { src: ca, dst: cb, point }).expect("orbit map exists")
    }

    /// The exponent `t` such that the orbit map sends `0` to `t` in `Z/level(dst)`.
    pub fn shift(&self, m: &OrbitMap) -> u64 {
        let r = self.group.cosets(m.dst).reps[m.point];
        self.power.iter().position(|&x| x == r).expect("element is a power of the generator") as u64
    }
}

/// `Infl^{nẐ}` of a Mackey functor over a cyclic group of order `n`:
/// `M_l = M(Z/l)` for `l | n`, zero otherwise, on levels `1..=bound`.
pub fn inflate_to_zhat(m: &MackeyFunctor, bound: u64) -> Result<ZMackeyTrunc> {
    let cm = CyclicModel::new(m.group())?;
    let ring = m.ring();
    let levels: Vec<u64> = (1..=bound).collect();
    let inside = |l: u64| cm.n % l == 0;
    let value = |l: u64| if inside(l) { m.value(cm.class_of_level(l)).clone() } else { FpModule::zero(ring) };
    let values = levels.iter().map(|&l| (l, value(l))).collect();
    let sigma = levels.iter().filter(|&&l| inside(l)).map(|&l| (l, m.push_matrix(cm.map_id(l, l, 1)).clone())).collect();
    let mut v = BTreeMap::new();
    let mut f = BTreeMap::new();
    for &a in &levels {
        for &b in levels.iter().filter(|&&b| a % b == 0 && b < a) {
            let (pv, pf) = if inside(a) {
                let id = cm.map_id(a, b, 0);
                (m.push_matrix(id).clone(), m.pull_matrix(id).clone())
            } else {
                let (ra, rb) = (value(a).gens(), value(b).gens());
                (Matrix::zeros(rb, ra), Matrix::zeros(ra, rb))
            };
            v.insert((a, b), pv);
            f.insert((a, b), pf);
        }
    }
    let tail = if cm.n <= bound { Tail::Zero } else { Tail::Truncated };
    ZMackeyTrunc::from_parts(ZMackeyParts { ring, levels, tail, values, sigma, v, f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::mackey::burnside_mackey;

    const Z: CoeffRing = CoeffRing::Integers;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from(x)).collect()
    }

    fn constant(bound: u64, v_scaled: bool) -> ZMackeyTrunc {
        let levels: Vec<u64> = (1..=bound).collect();
        let values = levels.iter().map(|&l| (l, FpModule::free(Z, 1))).collect();
        let mut v = BTreeMap::new();
        let mut f = BTreeMap::new();
        for &a in &levels {
            for &b in levels.iter().filter(|&&b| a % b == 0 && b < a) {
                let r = Matrix::from_i64(&[&[(a / b) as i64]]);
                let one = Matrix::identity(1);
                let (pv, pf) = if v_scaled { (r, one) } else { (one, r) };
                v.insert((a, b), pv);
                f.insert((a, b), pf);
            }
        }
        ZMackeyTrunc::from_parts(ZMackeyParts { ring: Z, levels, tail: Tail::Unknown, values, sigma: BTreeMap::new(), v, f })
            .unwrap()
    }

    #[test]
    fn constant_examples() {
        assert!(constant(8, true).check().passed());
        assert!(constant(8, false).check().passed());
        let levels: Vec<u64> = (1..=6).collect();
        let bad = ZMackeyTrunc::from_parts(ZMackeyParts {
            ring: Z,
            levels: levels.clone(),
            tail: Tail::Unknown,
            values: levels.iter().map(|&l| (l, FpModule::free(Z, 1))).collect(),
            sigma: BTreeMap::new(),
            v: BTreeMap::new(),
            f: BTreeMap::new(),
        });
        // prime steps are mandatory
        assert!(bad.is_err());
    }

    #[test]
    fn identity_maps_fail_averaging() {
        let levels: Vec<u64> = (1..=6).collect();
        let one = Matrix::identity(1);
        let mut v = BTreeMap::new();
        let mut f = BTreeMap::new();
        for &a in &levels {
            for &b in levels.iter().filter(|&&b| a % b == 0 && b < a) {
                v.insert((a, b), one.clone());
                f.insert((a, b), one.clone());
            }
        }
        let m = ZMackeyTrunc::from_parts(ZMackeyParts {
            ring: Z,
            levels: levels.clone(),
            tail: Tail::Unknown,
            values: levels.iter().map(|&l| (l, FpModule::free(Z, 1))).collect(),
            sigma: BTreeMap::new(),
            v,
            f,
        })
        .unwrap();
        let r = m.check();
        assert!(r.fails(ZRelation::Averaging));
        assert!(r.violations.iter().filter(|v| v.relation == ZRelation::Averaging).all(|v| v.levels[0] > v.levels[1]));
    }

    #[test]
    fn burnside_truncation_examples() {
        let a = burnside_truncation(6, Z).unwrap();
        assert_eq!(a.value(1).unwrap().to_string(), "Z^6");
        // v_{2,1} of the unit of Â_2 is ε_2
        assert_eq!(a.v(2, 1).unwrap().matrix().column(0), ints(&[0, 1, 0, 0, 0, 0]));
        assert!(a.sigma(1).unwrap().equals(&a.value(1).unwrap().identity()));
        assert!(burnside_truncation(12, Z).unwrap().check().passed());
    }

    #[test]
    fn eps_action_examples() {
        let a = burnside_truncation(8, Z).unwrap();
        let e4 = WittElement::basis(Z, 8, 4).unwrap();
        let act = a.eps_action(&e4, 2).unwrap();
        assert_eq!(act.matrix().column(0), ints(&[0, 2, 0, 0]));
        let one = WittElement::one(Z, 8);
        assert!(a.eps_action(&one, 3).unwrap().equals(&a.value(3).unwrap().identity()));
        // at level 1 the action is multiplication in the truncated ring
        let e2 = WittElement::basis(Z, 8, 2).unwrap();
        let x = a.eps_action(&e2, 1).unwrap().matrix().column(2);
        assert_eq!(x, ints(&[0, 0, 0, 0, 0, 1, 0, 0]));
    }

    #[test]
    fn unknown_tail_refuses() {
        let m = constant(4, true);
        let e3 = WittElement::basis(Z, 4, 3).unwrap();
        assert_eq!(m.eps_action(&e3, 2).unwrap_err(), Error::OutsideTruncation(6));
    }

    #[test]
    fn inflation_of_finite_functors() {
        for n in [1, 2, 4, 6] {
            let g = FiniteGroup::cyclic(n).unwrap();
            let m = inflate_to_zhat(&burnside_mackey(&g, Z), 12).unwrap();
            assert!(m.check().passed(), "n = {n}: {}", m.check());
            assert_eq!(m.value(n as u64).unwrap().gens(), 1);
        }
    }

    #[test]
    fn parts_round_trip() {
        let a = burnside_truncation(6, Z).unwrap();
        let b = ZMackeyTrunc::from_parts(a.to_parts()).unwrap();
        for (x, y) in a.pairs() {
            assert!(a.v(x, y).unwrap().equals(b.v(x, y).unwrap()));
        }
    }
}

//! Pairings of Mackey functors and the Green functor identities.

use std::fmt;

use crate::error::{Error, Result};
use crate::gset::fibered_product;
use crate::matrix::Matrix;
use crate::module::FpModule;
use crate::ring::CoeffRing;
use crate::scalar::Scalar;

use super::examples::{burnside_mackey, BurnsideBases};
use super::functor::MackeyFunctor;
use super::orbit::{OrbitCategory, OrbitMap};

/// `μ: M1(G/K) ⊗ M2(G/K) → M(G/K)` on every class; column `i·g2 + j`
/// of `mu[c]` is the image of `e_i ⊗ e_j`.
#[derive(Clone, Debug)]
pub struct GreenPairing {
    pub m1: MackeyFunctor,
    pub m2: MackeyFunctor,
    pub m: MackeyFunctor,
    pub mu: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GreenIdentity {
    /// `f^*(a·b) = f^*a · f^*b`.
    Restriction,
    /// `f_*(a · f^*b) = f_*a · b`.
    ProjectionLeft,
    /// `f_*(f^*a · b) = a · f_*b`.
    ProjectionRight,
}

impl fmt::Display for GreenIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GreenIdentity::Restriction => "multiplicativity of restriction",
            GreenIdentity::ProjectionLeft => "left projection formula",
            GreenIdentity::ProjectionRight => "right projection formula",
        })
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct GreenViolation {
    pub identity: GreenIdentity,
    pub map: OrbitMap,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct GreenReport {
    pub violations: Vec<GreenViolation>,
}

impl GreenReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn pair(mu: &Matrix, g2: usize, x: &Matrix, y: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(mu.rows(), 1);
    for i in 0..x.rows() {
        if x[(i, 0)].is_zero() {
            continue;
        }
        for j in 0..y.rows() {
            let c = x[(i, 0)] * y[(j, 0)];
            if c.is_zero() {
                continue;
            }
            for r in 0..mu.rows() {
                out[(r, 0)] += c * mu[(r, i * g2 + j)];
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Matrix {
    let mut v = Matrix::zeros(n, 1);
    v[(i, 0)] = Scalar::ONE;
    v
}

impl GreenPairing {
    pub fn new(m1: &MackeyFunctor, m2: &MackeyFunctor, m: &MackeyFunctor, mu: Vec<Matrix>) -> Result<Self> {
        let k = m.group().num_classes();
        if mu.len() != k {
            return Err(Error::Dimension("one pairing matrix per subgroup class is required".into()));
        }
        for c in 0..k {
            let (a, b, t) = (m1.value(c).gens(), m2.value(c).gens(), m.value(c).gens());
            if mu[c].rows() != t || mu[c].cols() != a * b {
                return Err(Error::Dimension(format!("pairing on class {c} has the wrong shape")));
            }
        }
        Ok(GreenPairing { m1: m1.clone(), m2: m2.clone(), m: m.clone(), mu })
    }

    fn mu(&self, c: usize, x: &Matrix, y: &Matrix) -> Matrix {
        pair(&self.mu[c], self.m2.value(c).gens(), x, y)
    }

    pub fn check(&self) -> GreenReport {
        let oc = OrbitCategory::of(self.m.group());
        let mut violations = Vec::new();
        for id in 0..oc.len() {
            let om = oc.map(id);
            let (a, b) = (om.src, om.dst);
            let (p1, q1) = (self.m1.push_matrix(id), self.m1.pull_matrix(id));
            let (p2, q2) = (self.m2.push_matrix(id), self.m2.pull_matrix(id));
            let (p, q) = (self.m.push_matrix(id), self.m.pull_matrix(id));
            let fails = |target: &FpModule, lhs: Matrix, rhs: Matrix| !target.vanishes(&lhs.sub(&rhs));
            let mut bad = [false; 3];
            'outer: for i in 0..self.m1.value(b).gens() {
                for j in 0..self.m2.value(b).gens() {
                    let (x, y) = (unit(self.m1.value(b).gens(), i), unit(self.m2.value(b).gens(), j));
                    let lhs = q.mul(&self.mu(b, &x, &y));
                    let rhs = self.mu(a, &q1.mul(&x), &q2.mul(&y));
                    if fails(self.m.value(a), lhs, rhs) {
                        bad[0] = true;
                        break 'outer;
                    }
                }
            }
            'outer: for i in 0..self.m1.value(a).gens() {
                for j in 0..self.m2.value(b).gens() {
                    let (x, y) = (unit(self.m1.value(a).gens(), i), unit(self.m2.value(b).gens(), j));
                    let lhs = p.mul(&self.mu(a, &x, &q2.mul(&y)));
                    let rhs = self.mu(b, &p1.mul(&x), &y);
                    if fails(self.m.value(b), lhs, rhs) {
                        bad[1] = true;
                        break 'outer;
                    }
                }
            }
            'outer: for i in 0..self.m1.value(b).gens() {
                for j in 0..self.m2.value(a).gens() {
                    let (x, y) = (unit(self.m1.value(b).gens(), i), unit(self.m2.value(a).gens(), j));
                    let lhs = p.mul(&self.mu(a, &q1.mul(&x), &y));
                    let rhs = self.mu(b, &x, &p2.mul(&y));
                    if fails(self.m.value(b), lhs, rhs) {
                        bad[2] = true;
                        break 'outer;
                    }
                }
            }
            let kinds = [GreenIdentity::Restriction, GreenIdentity::ProjectionLeft, GreenIdentity::ProjectionRight];
            for (k, b) in kinds.into_iter().zip(bad) {
                if b {
                    violations.push(GreenViolation { identity: k, map: om });
                }
            }
        }
        GreenReport { violations }
    }
}

/// The Burnside functor with its product `[U → S]·[V → S] = [U ×_S V → S]`.
pub fn burnside_pairing(group: &crate::group::Group, ring: CoeffRing) -> GreenPairing {
    let a = burnside_mackey(group, ring);
    let b = BurnsideBases::new(group);
    let mu = (0..group.num_classes())
        .map(|c| {
            let keys = &b.keys[c];
            let n = keys.len();
            let mut m = Matrix::zeros(n, n * n);
            for (i, ki) in keys.iter().enumerate() {
                for (j, kj) in keys.iter().enumerate() {
                    let (p, p1, _) =
                        fibered_product(&b.leg(group, c, ki), &b.leg(group, c, kj)).expect("common target");
                    let li = b.leg(group, c, ki);
                    for o in p.orbits() {
                        let r = b.key(group, o.class, c, li.apply(p1.apply(o.base)));
                        m[(r, i * n + j)] += Scalar::ONE;
                    }
                }
            }
            m
        })
        .collect();
    GreenPairing { m1: a.clone(), m2: a.clone(), m: a, mu }
}

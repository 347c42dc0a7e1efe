//! Mackey functors stored on the orbit category.

use std::fmt;

use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::gset::{GMap, GSet};
use crate::matrix::Matrix;
use crate::module::{FpModule, ModuleMap};
use crate::ring::CoeffRing;
use crate::scalar::Scalar;

use super::orbit::{OrbitCategory, OrbitMap};

/// Values `M(G/K)` on class representatives, with a pushforward and a
/// pullback matrix for every map of the orbit category.
#[derive(Clone, Debug)]
pub struct MackeyFunctor {
    group: Group,
    ring: CoeffRing,
    values: Vec<FpModule>,
    push: Vec<Matrix>,
    pull: Vec<Matrix>,
}

impl MackeyFunctor {
    /// Validates shapes and well-definedness of every matrix.
    pub fn from_parts(
        group: &Group,
        ring: CoeffRing,
        values: Vec<FpModule>,
        push: Vec<Matrix>,
        pull: Vec<Matrix>,
    ) -> Result<Self> {
        let m = Self::unchecked(group, ring, values, push, pull);
        m.check_shapes()?;
        for id in 0..m.push.len() {
            m.push_map(id).checked()?;
            m.pull_map(id).checked()?;
        }
        Ok(m)
    }

    pub(crate) fn unchecked(
        group: &Group,
        ring: CoeffRing,
        values: Vec<FpModule>,
        push: Vec<Matrix>,
        pull: Vec<Matrix>,
    ) -> Self {
        MackeyFunctor { group: group.clone(), ring, values, push, pull }
    }

    /// Builds the functor from a rule giving `(push, pull)` on each orbit map.
    pub(crate) fn tabulate(
        group: &Group,
        ring: CoeffRing,
        values: Vec<FpModule>,
        mut rule: impl FnMut(usize, OrbitMap) -> (Matrix, Matrix),
    ) -> Self {
        let oc = OrbitCategory::of(group);
        let (push, pull) = (0..oc.len()).map(|id| rule(id, oc.map(id))).unzip();
        Self::unchecked(group, ring, values, push, pull)
    }

    pub fn zero(group: &Group, ring: CoeffRing) -> Self {
        let values = vec![FpModule::zero(ring); group.num_classes()];
        Self::tabulate(group, ring, values, |_, _| (Matrix::zeros(0, 0), Matrix::zeros(0, 0)))
    }

    fn check_shapes(&self) -> Result<()> {
        let oc = OrbitCategory::of(&self.group);
        if self.values.len() != self.group.num_classes() {
            return Err(Error::Dimension(format!(
                "{} values for {} subgroup classes",
                self.values.len(),
                self.group.num_classes()
            )));
        }
        if self.push.len() != oc.len() || self.pull.len() != oc.len() {
            return Err(Error::Dimension("one matrix per orbit map is required".into()));
        }
        for (id, m) in oc.maps().iter().enumerate() {
            let (s, t) = (self.values[m.src].gens(), self.values[m.dst].gens());
            let (p, q) = (&self.push[id], &self.pull[id]);
            if (p.rows(), p.cols()) != (t, s) || (q.rows(), q.cols()) != (s, t) {
                return Err(Error::Dimension(format!("matrix for orbit map {m:?} has the wrong shape")));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn value(&self, class: usize) -> &FpModule {
        &self.values[class]
    }

    pub fn values(&self) -> &[FpModule] {
        &self.values
    }

    pub fn push_matrix(&self, id: usize) -> &Matrix {
        &self.push[id]
    }

    pub fn pull_matrix(&self, id: usize) -> &Matrix {
        &self.pull[id]
    }

    pub fn push_map(&self, id: usize) -> ModuleMap {
        let m = OrbitCategory::of(&self.group).map(id);
        ModuleMap::unchecked(self.values[m.src].clone(), self.values[m.dst].clone(), self.push[id].clone())
    }

    pub fn pull_map(&self, id: usize) -> ModuleMap {
        let m = OrbitCategory::of(&self.group).map(id);
        ModuleMap::unchecked(self.values[m.dst].clone(), self.values[m.src].clone(), self.pull[id].clone())
    }

    /// Transfer `M^K → M^H` along `eK ↦ gH`.
    pub fn transfer(&self, k: usize, h: usize, g: usize) -> Result<ModuleMap> {
        Ok(self.push_map(self.edge(k, h, g)?))
    }

    /// Restriction `M^H → M^K` along `eK ↦ gH`.
    pub fn restriction(&self, k: usize, h: usize, g: usize) -> Result<ModuleMap> {
        Ok(self.pull_map(self.edge(k, h, g)?))
    }

    fn edge(&self, k: usize, h: usize, g: usize) -> Result<usize> {
        let n = self.group.num_classes();
        if k >= n || h >= n || g >= self.group.order() {
            return Err(Error::Precondition("edge outside the group".into()));
        }
        let point = self.group.cosets(h).coset_of[g];
        OrbitCategory::of(&self.group)
            .id_of(&OrbitMap { src: k, dst: h, point })
            .ok_or_else(|| Error::Precondition(format!("no orbit map from class {k} to class {h} via {g}")))
    }

    /// A copy with `delta` added to one matrix entry.
    pub fn perturbed(&self, pushforward: bool, id: usize, row: usize, col: usize, delta: Scalar) -> Self {
        let mut out = self.clone();
        let m = if pushforward { &mut out.push[id] } else { &mut out.pull[id] };
        m[(row, col)] += delta;
        out
    }

    fn offsets(&self, s: &GSet) -> Vec<usize> {
        let mut off = Vec::with_capacity(s.orbits().len() + 1);
        let mut acc = 0;
        for o in s.orbits() {
            off.push(acc);
            acc += self.values[o.class].gens();
        }
        off.push(acc);
        off
    }

    /// `M(S) = ⊕ M(G/K_i)` over the orbits of `S`, in orbit order.
    pub fn evaluate(&self, s: &GSet) -> FpModule {
        FpModule::sum_all(self.ring, s.orbits().iter().map(|o| &self.values[o.class]))
    }

    /// Orbit-map id and target orbit for each source orbit of `f`.
    fn orbit_components(&self, f: &GMap) -> Vec<(usize, usize)> {
        let oc = OrbitCategory::of(&self.group);
        let (s, t) = (f.source(), f.target());
        s.orbits()
            .iter()
            .map(|o| {
                let y = f.apply(o.base);
                let j = t.orbit_of(y);
                let m = OrbitMap { src: o.class, dst: t.orbits()[j].class, point: t.coset_index(y) };
                (oc.id_of(&m).expect("equivariant maps factor through the orbit category"), j)
            })
            .collect()
    }

    pub fn push_along(&self, f: &GMap) -> ModuleMap {
        let (os, ot) = (self.offsets(f.source()), self.offsets(f.target()));
        let mut mat = Matrix::zeros(*ot.last().unwrap(), *os.last().unwrap());
        for (i, (id, j)) in self.orbit_components(f).into_iter().enumerate() {
            add_block(&mut mat, ot[j], os[i], &self.push[id]);
        }
        ModuleMap::unchecked(self.evaluate(f.source()), self.evaluate(f.target()), mat)
    }

    pub fn pull_along(&self, f: &GMap) -> ModuleMap {
        let (os, ot) = (self.offsets(f.source()), self.offsets(f.target()));
        let mut mat = Matrix::zeros(*os.last().unwrap(), *ot.last().unwrap());
        for (i, (id, j)) in self.orbit_components(f).into_iter().enumerate() {
            add_block(&mut mat, os[i], ot[j], &self.pull[id]);
        }
        ModuleMap::unchecked(self.evaluate(f.target()), self.evaluate(f.source()), mat)
    }

    /// The action of a span: pull back along the left leg, push along the right.
    pub fn apply_span(&self, e: &BurnsideElement) -> Result<ModuleMap> {
        if **e.group() != *self.group {
            return Err(Error::Precondition("span and functor live over different groups".into()));
        }
        let (s1, s2) = (e.source(), e.target());
        let mut out = self.evaluate(s1).zero_map(&self.evaluate(s2));
        for (key, &c) in e.coeffs() {
            let (_, l, r) = key.legs(&self.group, s1, s2);
            let term = self.pull_along(&l).then(&self.push_along(&r));
            out = out.add(&term.scale(Scalar::from(c as i128)));
        }
        Ok(out)
    }

    /// The action of `a ∈ A^G` on `M(S)` through `S ← S × U → S`.
    pub fn burnside_action(&self, a: &BurnsideElement, s: &GSet) -> Result<ModuleMap> {
        if !a.is_ring_element() {
            return Err(Error::Precondition("the Burnside action needs an element of A^G".into()));
        }
        if **a.group() != *self.group {
            return Err(Error::Precondition("element and functor live over different groups".into()));
        }
        let mut out = self.evaluate(s).zero_map(&self.evaluate(s));
        for (c, k) in a.class_coeffs().into_iter().enumerate() {
            if k == 0 {
                continue;
            }
            let u = GSet::orbit(&self.group, c);
            let prod = s.product(&u);
            let proj = GMap::unchecked(prod.clone(), s.clone(), (0..prod.size()).map(|x| x / u.size()).collect());
            let term = self.pull_along(&proj).then(&self.push_along(&proj));
            out = out.add(&term.scale(Scalar::from(k as i128)));
        }
        Ok(out)
    }

    /// Runs every check and collects the failures.
    pub fn check_axioms(&self) -> Result<AxiomReport> {
        self.check(usize::MAX)
    }

    /// Stops at the first failure.
    pub fn first_violation(&self) -> Result<Option<Violation>> {
        Ok(self.check(1)?.violations.into_iter().next())
    }

    fn check(&self, limit: usize) -> Result<AxiomReport> {
        self.check_shapes()?;
        let group = &self.group;
        let oc = OrbitCategory::of(group);
        let mut report = AxiomReport { group: group.name().to_string(), labels: group.class_labels(), violations: vec![] };
        let full = |r: &AxiomReport| r.violations.len() >= limit;
        for id in 0..oc.len() {
            let m = oc.map(id);
            for (push, mat) in [(true, &self.push[id]), (false, &self.pull[id])] {
                let (src, dst) = if push { (m.src, m.dst) } else { (m.dst, m.src) };
                if ModuleMap::new(self.values[src].clone(), self.values[dst].clone(), mat.clone()).is_err() {
                    report.violations.push(Violation {
                        identity: Identity::WellDefined,
                        classes: vec![m.src, m.dst],
                        maps: vec![m],
                    });
                    if full(&report) {
                        return Ok(report);
                    }
                }
            }
        }
        for c in 0..group.num_classes() {
            let id = oc.identity(c);
            let one = self.values[c].identity();
            if !self.push_map(id).equals(&one) || !self.pull_map(id).equals(&one) {
                report.violations.push(Violation { identity: Identity::Unit, classes: vec![c], maps: vec![oc.map(id)] });
                if full(&report) {
                    return Ok(report);
                }
            }
        }
        for a in 0..oc.len() {
            let ma = oc.map(a);
            for b in 0..oc.len() {
                let mb = oc.map(b);
                if mb.src != ma.dst {
                    continue;
                }
                let ab = oc.compose(group, a, b);
                let classes = vec![ma.src, ma.dst, mb.dst];
                if !self.push_map(a).then(&self.push_map(b)).equals(&self.push_map(ab)) {
                    report.violations.push(Violation {
                        identity: Identity::TransferTransitivity,
                        classes: classes.clone(),
                        maps: vec![ma, mb],
                    });
                    if full(&report) {
                        return Ok(report);
                    }
                }
                if !self.pull_map(b).then(&self.pull_map(a)).equals(&self.pull_map(ab)) {
                    report.violations.push(Violation {
                        identity: Identity::RestrictionTransitivity,
                        classes,
                        maps: vec![ma, mb],
                    });
                    if full(&report) {
                        return Ok(report);
                    }
                }
            }
        }
        for phi in 0..oc.len() {
            let mp = oc.map(phi);
            for psi in 0..oc.len() {
                let mq = oc.map(psi);
                if mq.dst != mp.dst {
                    continue;
                }
                let lhs = self.push_map(phi).then(&self.pull_map(psi));
                let mut rhs = self.values[mp.src].zero_map(&self.values[mq.src]);
                for (l, r) in oc.pullback(group, phi, psi) {
                    rhs = rhs.add(&self.pull_map(l).then(&self.push_map(r)));
                }
                if !lhs.equals(&rhs) {
                    report.violations.push(Violation {
                        identity: Identity::DoubleCoset,
                        classes: vec![mp.src, mq.src, mp.dst],
                        maps: vec![mp, mq],
                    });
                    if full(&report) {
                        return Ok(report);
                    }
                }
            }
        }
        Ok(report)
    }
}

pub(crate) fn add_block(m: &mut Matrix, r0: usize, c0: usize, b: &Matrix) {
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            let x = b[(i, j)];
            if !x.is_zero() {
                m[(r0 + i, c0 + j)] += x;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    WellDefined,
    Unit,
    TransferTransitivity,
    RestrictionTransitivity,
    DoubleCoset,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Identity::WellDefined => "well-definedness",
            Identity::Unit => "identity maps",
            Identity::TransferTransitivity => "transitivity of transfers",
            Identity::RestrictionTransitivity => "transitivity of restrictions",
            Identity::DoubleCoset => "double coset formula",
        };
        f.write_str(s)
    }
}

/// A failed identity, with the subgroup classes involved.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub identity: Identity,
    pub classes: Vec<usize>,
    pub maps: Vec<OrbitMap>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct AxiomReport {
    pub group: String,
    #[serde(skip)]
    labels: Vec<String>,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, v: &Violation) -> String {
        let names: Vec<&str> = v.classes.iter().map(|&c| self.labels[c].as_str()).collect();
        format!("{} at ({})", v.identity, names.join(", "))
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "pass");
        }
        writeln!(f, "fail: {} violated identities", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {}", self.describe(v))?;
        }
        Ok(())
    }
}

impl ModuleMap {
    pub(crate) fn checked(self) -> Result<ModuleMap> {
        ModuleMap::new(self.source().clone(), self.target().clone(), self.matrix().clone())
    }
}

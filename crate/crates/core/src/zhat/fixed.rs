//! Level-wise geometric fixed points, the canonical filtration and the
//! normal system of a truncated Ẑ-Mackey profunctor.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::mackey::{geometric_fixed_points, MackeyFunctor};
use crate::module::{intersect, sum_of_images, FpModule, ModuleMap};
use crate::scalar::divisors;

use super::trunc::{CyclicModel, Tail, ZMackeyParts, ZMackeyTrunc};

/// `F^{nẐ}M_l` and the cumulative step `F^n M_l = ∩_{n' ≤ n} F^{n'Ẑ}M_l`.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub n: u64,
    pub level: u64,
    /// Inclusion of `F^{nẐ}M_l`.
    pub step: ModuleMap,
    /// Inclusion of `F^n M_l`.
    pub cumulative: ModuleMap,
    /// False when levels above the truncation were dropped rather than known to vanish.
    pub exact: bool,
}

impl Filtration {
    pub fn step_module(&self) -> &FpModule {
        self.step.source()
    }

    pub fn cumulative_module(&self) -> &FpModule {
        self.cumulative.source()
    }

    /// `M_l / F^{nẐ}M_l`.
    pub fn quotient(&self) -> FpModule {
        self.step.cokernel().0
    }
}

/// Images of `v_{k,l}` over levels `k` with `l | k` and `k ∤ n`.
fn free_part(m: &ZMackeyTrunc, n: u64, l: u64) -> Result<ModuleMap> {
    let ml = m.value(l)?;
    let maps: Vec<ModuleMap> = m
        .levels()
        .iter()
        .filter(|&&k| k % l == 0 && n % k != 0)
        .map(|&k| m.v(k, l).cloned())
        .collect::<Result<_>>()?;
    Ok(sum_of_images(ml, &maps))
}

pub fn canonical_filtration(m: &ZMackeyTrunc, n: u64, l: u64) -> Result<Filtration> {
    if n == 0 {
        return Err(Error::Precondition("filtration index must be positive".into()));
    }
    let step = free_part(m, n, l)?;
    let mut cum = step.clone();
    for k in 1..n {
        cum = intersect(&cum, &free_part(m, k, l)?);
    }
    Ok(Filtration { n, level: l, step: step.image().1, cumulative: cum.image().1, exact: m.tail() == Tail::Zero })
}

/// `Φ^{nẐ}(M)` as a Mackey functor over `Z/n`, with the quotient maps
/// `M_d → Φ^{nẐ}(M)(Z/d)` for `d | n`.
#[derive(Clone, Debug)]
pub struct LevelFixedPoints {
    pub n: u64,
    pub functor: MackeyFunctor,
    /// Keyed by level `d | n`.
    pub projections: BTreeMap<u64, ModuleMap>,
    pub sections: BTreeMap<u64, ModuleMap>,
    /// Subgroup class of the orbit `Z/d`, keyed by `d`.
    pub classes: BTreeMap<u64, usize>,
    pub exact: bool,
}

impl LevelFixedPoints {
    pub fn at_level(&self, d: u64) -> Result<&FpModule> {
        let c = self.classes.get(&d).ok_or(Error::OutsideTruncation(d))?;
        Ok(self.functor.value(*c))
    }
}

pub fn level_fixed_points(m: &ZMackeyTrunc, n: u64) -> Result<LevelFixedPoints> {
    if n == 0 || !m.contains(n) {
        return Err(Error::OutsideTruncation(n));
    }
    let group = FiniteGroup::cyclic(n as usize)?;
    let cm = CyclicModel::new(&group)?;
    let mut projections = BTreeMap::new();
    let mut sections = BTreeMap::new();
    let mut classes = BTreeMap::new();
    for d in divisors(n) {
        let (_, proj, sec) = free_part(m, n, d)?.cokernel_with_section();
        projections.insert(d, proj);
        sections.insert(d, sec);
        classes.insert(d, cm.class_of_level(d));
    }
    let level: Vec<u64> = (0..group.num_classes()).map(|c| cm.level_of_class(c)).collect();
    let values = level.iter().map(|d| projections[d].target().clone()).collect();
    let mut failure = None;
    let functor = MackeyFunctor::tabulate(&group, m.ring(), values, |_, om| {
        let (a, b) = (level[om.src], level[om.dst]);
        let t = cm.shift(&om) as i64;
        let maps = (|| -> Result<(ModuleMap, ModuleMap)> {
            let push = sections[&a].then(m.v(a, b)?).then(&m.sigma_pow(b, t)?).then(&projections[&b]);
            let pull = sections[&b].then(&m.sigma_pow(b, -t)?).then(m.f(a, b)?).then(&projections[&a]);
            Ok((push, pull))
        })();
        match maps {
            Ok((p, q)) => (p.matrix().clone(), q.matrix().clone()),
            Err(e) => {
                failure.get_or_insert(e);
                (crate::Matrix::zeros(0, 0), crate::Matrix::zeros(0, 0))
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(LevelFixedPoints { n, functor, projections, sections, classes, exact: m.tail() == Tail::Zero })
}

/// The components `Φ^{nẐ}M` for every level `n`, with the transition maps
/// `Φ^{nẐ/n'Ẑ}Φ^{n'Ẑ}M → Φ^{nẐ}M` for `n | n'`, one per class of `Z/n`.
#[derive(Clone, Debug)]
pub struct NormalSystemTrunc {
    pub components: BTreeMap<u64, LevelFixedPoints>,
    pub transitions: BTreeMap<(u64, u64), Vec<ModuleMap>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: u64,
    pub surjective: bool,
    pub injective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    pub levels: Vec<LevelReport>,
    /// Every component satisfies the Mackey axioms.
    pub components_valid: bool,
    /// Every transition map is an isomorphism.
    pub transitions_iso: bool,
    pub surjective: bool,
    pub separated: bool,
    pub exact: bool,
}

pub struct Roundtrip {
    pub system: NormalSystemTrunc,
    /// `Infl Φ M`, present when the canonical map is surjective at every level.
    pub reconstructed: Option<ZMackeyTrunc>,
    /// The canonical map `M_l → (Infl Φ M)_l` at every level.
    pub canonical: BTreeMap<u64, ModuleMap>,
    pub report: RoundtripReport,
}

fn transition(upper: &LevelFixedPoints, lower: &LevelFixedPoints) -> Result<Vec<ModuleMap>> {
    let g = upper.functor.group();
    let nsub = g.generate(&[(lower.n % upper.n) as usize]);
    let gfp = geometric_fixed_points(&upper.functor, &nsub)?;
    let cm = CyclicModel::new(g)?;
    let mut maps = Vec::new();
    for (a, s) in gfp.inflated.iter().enumerate() {
        let d = cm.level_of_class(s.orbits()[0].class);
        let raw = gfp.section(a).then(&upper.sections[&d]).then(&lower.projections[&d]);
        maps.push(ModuleMap::new(raw.source().clone(), raw.target().clone(), raw.matrix().clone())?);
    }
    Ok(maps)
}

pub fn normal_system_roundtrip(m: &ZMackeyTrunc) -> Result<Roundtrip> {
    let mut components = BTreeMap::new();
    for &n in m.levels() {
        components.insert(n, level_fixed_points(m, n)?);
    }
    let mut components_valid = true;
    for c in components.values() {
        components_valid &= c.functor.check_axioms()?.passed();
    }
    let mut transitions = BTreeMap::new();
    let mut transitions_iso = true;
    for &n in m.levels() {
        for &n2 in m.levels().iter().filter(|&&k| k % n == 0 && k != n) {
            let t = transition(&components[&n2], &components[&n])?;
            transitions_iso &= t.iter().all(ModuleMap::is_isomorphism);
            transitions.insert((n, n2), t);
        }
    }
    let ring = m.ring();
    let mut canonical = BTreeMap::new();
    let mut levels = Vec::new();
    for &l in m.levels() {
        let over: Vec<u64> = m.levels().iter().copied().filter(|&n| n % l == 0).collect();
        let qs: Vec<FpModule> = over.iter().map(|n| components[n].projections[&l].target().clone()).collect();
        let total = FpModule::sum_all(ring, &qs);
        let ml = m.value(l)?;
        let mut canon = crate::Matrix::zeros(0, ml.gens());
        for n in &over {
            canon = canon.vstack(components[n].projections[&l].matrix());
        }
        let canon = ModuleMap::new(ml.clone(), total.clone(), canon)?;
        let mut rows = crate::Matrix::zeros(0, total.gens());
        let mut targets = Vec::new();
        for (i, &n) in over.iter().enumerate() {
            for (j, &n2) in over.iter().enumerate() {
                if n2 % n != 0 || n2 == n {
                    continue;
                }
                let pi = components[&n2].sections[&l].then(&components[&n].projections[&l]);
                let (_, proj_i) = FpModule::summand_maps(&qs, i);
                let (_, proj_j) = FpModule::summand_maps(&qs, j);
                let diff = proj_i.sub(&proj_j.then(&pi));
                rows = rows.vstack(diff.matrix());
                targets.push(qs[i].clone());
            }
        }
        let target = FpModule::sum_all(ring, &targets);
        let (_, incl) = ModuleMap::new(total.clone(), target, rows)?.kernel();
        let to_lim = incl.lift(&canon).ok_or_else(|| Error::Precondition("canonical map misses the limit".into()))?;
        levels.push(LevelReport { level: l, surjective: to_lim.is_surjective(), injective: to_lim.is_injective() });
        canonical.insert(l, to_lim);
    }
    let surjective = levels.iter().all(|r| r.surjective);
    let separated = levels.iter().all(|r| r.surjective && r.injective);
    let reconstructed = if surjective { Some(transport(m, &canonical)?) } else { None };
    Ok(Roundtrip {
        system: NormalSystemTrunc { components, transitions },
        reconstructed,
        canonical,
        report: RoundtripReport { levels, components_valid, transitions_iso, surjective, separated, exact: m.tail() == Tail::Zero },
    })
}

/// Pushes the structure maps of `m` along surjections `M_l → N_l`.
fn transport(m: &ZMackeyTrunc, can: &BTreeMap<u64, ModuleMap>) -> Result<ZMackeyTrunc> {
    let sec: BTreeMap<u64, ModuleMap> = can
        .iter()
        .map(|(&l, c)| (l, c.lift(&c.target().identity()).expect("surjective")))
        .collect();
    let mut parts = ZMackeyParts {
        ring: m.ring(),
        levels: m.levels().to_vec(),
        tail: m.tail(),
        values: can.iter().map(|(&l, c)| (l, c.target().clone())).collect(),
        sigma: BTreeMap::new(),
        v: BTreeMap::new(),
        f: BTreeMap::new(),
    };
    for &l in m.levels() {
        parts.sigma.insert(l, sec[&l].then(m.sigma(l)?).then(&can[&l]).matrix().clone());
    }
    for (a, b) in m.pairs().filter(|(a, b)| a != b) {
        parts.v.insert((a, b), sec[&a].then(m.v(a, b)?).then(&can[&b]).matrix().clone());
        parts.f.insert((a, b), sec[&b].then(m.f(a, b)?).then(&can[&a]).matrix().clone());
    }
    ZMackeyTrunc::from_parts(parts)
}

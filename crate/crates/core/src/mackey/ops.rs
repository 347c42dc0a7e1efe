//! Geometric and categorical fixed points, inflation and morphisms.

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::gset::{GMap, GSet};
use crate::matrix::Matrix;
use crate::module::{sum_of_images, FpModule, ModuleMap};

use super::functor::MackeyFunctor;
use super::orbit::OrbitCategory;

/// A map of Mackey functors, one matrix per subgroup class.
#[derive(Clone, Debug)]
pub struct MackeyMorphism {
    source: MackeyFunctor,
    target: MackeyFunctor,
    maps: Vec<Matrix>,
}

impl MackeyMorphism {
    /// Checks well-definedness and naturality for every orbit map.
    pub fn new(source: &MackeyFunctor, target: &MackeyFunctor, maps: Vec<Matrix>) -> Result<Self> {
        if **source.group() != **target.group() || source.ring() != target.ring() {
            return Err(Error::Precondition("morphism between functors over different data".into()));
        }
        let f = MackeyMorphism { source: source.clone(), target: target.clone(), maps };
        if f.maps.len() != source.group().num_classes() {
            return Err(Error::Dimension("one matrix per subgroup class is required".into()));
        }
        for c in 0..f.maps.len() {
            ModuleMap::new(source.value(c).clone(), target.value(c).clone(), f.maps[c].clone())?;
        }
        if let Some(id) = f.first_unnatural() {
            return Err(Error::NotWellDefined(format!(
                "morphism is not natural at orbit map {:?}",
                OrbitCategory::of(source.group()).map(id)
            )));
        }
        Ok(f)
    }

    pub(crate) fn unchecked(source: &MackeyFunctor, target: &MackeyFunctor, maps: Vec<Matrix>) -> Self {
        MackeyMorphism { source: source.clone(), target: target.clone(), maps }
    }

    pub fn source(&self) -> &MackeyFunctor {
        &self.source
    }

    pub fn target(&self) -> &MackeyFunctor {
        &self.target
    }

    pub fn component(&self, c: usize) -> ModuleMap {
        ModuleMap::unchecked(self.source.value(c).clone(), self.target.value(c).clone(), self.maps[c].clone())
    }

    fn first_unnatural(&self) -> Option<usize> {
        let oc = OrbitCategory::of(self.source.group());
        (0..oc.len()).find(|&id| {
            let m = oc.map(id);
            let (fa, fb) = (self.component(m.src), self.component(m.dst));
            let push_ok = self.source.push_map(id).then(&fb).equals(&fa.then(&self.target.push_map(id)));
            let pull_ok = self.source.pull_map(id).then(&fa).equals(&fb.then(&self.target.pull_map(id)));
            !(push_ok && pull_ok)
        })
    }

    pub fn is_natural(&self) -> bool {
        self.first_unnatural().is_none()
    }

    /// The map `M(S) → M'(S)`.
    pub fn evaluate(&self, s: &GSet) -> ModuleMap {
        let parts: Vec<ModuleMap> = s.orbits().iter().map(|o| self.component(o.class)).collect();
        let src = self.source.evaluate(s);
        let dst = self.target.evaluate(s);
        let mut mat = Matrix::zeros(dst.gens(), src.gens());
        let (mut r, mut c) = (0, 0);
        for p in &parts {
            mat.set_block(r, c, p.matrix());
            r += p.target().gens();
            c += p.source().gens();
        }
        ModuleMap::unchecked(src, dst, mat)
    }

    /// The action of `a ∈ A^G` as an endomorphism of `M`.
    pub fn burnside_action(m: &MackeyFunctor, a: &crate::burnside::BurnsideElement) -> Result<Self> {
        let g = m.group();
        let maps = (0..g.num_classes())
            .map(|c| Ok(m.burnside_action(a, &GSet::orbit(g, c))?.matrix().clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::unchecked(m, m, maps))
    }

    /// Classwise kernel, with its inclusion.
    pub fn kernel(&self) -> (MackeyFunctor, MackeyMorphism) {
        let m = &self.source;
        let g = m.group();
        let incl: Vec<ModuleMap> = (0..g.num_classes()).map(|c| self.component(c).kernel().1).collect();
        let values = incl.iter().map(|i| i.source().clone()).collect();
        let k = MackeyFunctor::tabulate(g, m.ring(), values, |id, om| {
            let (ia, ib) = (&incl[om.src], &incl[om.dst]);
            let push = ib.lift(&ia.then(&m.push_map(id))).expect("kernels are preserved");
            let pull = ia.lift(&ib.then(&m.pull_map(id))).expect("kernels are preserved");
            (push.matrix().clone(), pull.matrix().clone())
        });
        let inc = MackeyMorphism::unchecked(&k, m, incl.iter().map(|i| i.matrix().clone()).collect());
        (k, inc)
    }

    /// Classwise cokernel, with its projection.
    pub fn cokernel(&self) -> (MackeyFunctor, MackeyMorphism) {
        let t = &self.target;
        let g = t.group();
        let parts: Vec<(FpModule, ModuleMap, ModuleMap)> =
            (0..g.num_classes()).map(|c| self.component(c).cokernel_with_section()).collect();
        let values = parts.iter().map(|p| p.0.clone()).collect();
        let q = MackeyFunctor::tabulate(g, t.ring(), values, |id, om| {
            let (pa, pb) = (&parts[om.src], &parts[om.dst]);
            let push = pa.2.then(&t.push_map(id)).then(&pb.1);
            let pull = pb.2.then(&t.pull_map(id)).then(&pa.1);
            (push.matrix().clone(), pull.matrix().clone())
        });
        let proj = MackeyMorphism::unchecked(t, &q, parts.iter().map(|p| p.1.matrix().clone()).collect());
        (q, proj)
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.maps.len()).all(|c| self.component(c).is_surjective())
    }

    pub fn is_isomorphism(&self) -> bool {
        (0..self.maps.len()).all(|c| self.component(c).is_isomorphism())
    }
}

/// `Φ^N(M)` together with the presentation data used to build it.
pub struct GeometricFixedPoints {
    pub functor: MackeyFunctor,
    /// The quotient map `G → W = G/N`.
    pub quotient: Vec<usize>,
    /// The `G`-set inflated from each `W`-orbit.
    pub inflated: Vec<GSet>,
    projections: Vec<ModuleMap>,
    sections: Vec<ModuleMap>,
}

impl GeometricFixedPoints {
    /// Projection `M(Infl T_a) → Φ^N(M)(T_a)`.
    pub fn projection(&self, a: usize) -> &ModuleMap {
        &self.projections[a]
    }

    pub fn section(&self, a: usize) -> &ModuleMap {
        &self.sections[a]
    }

    /// `Φ^N` of a morphism whose source is the functor this was built from.
    pub fn on_morphism(&self, f: &MackeyMorphism, target: &GeometricFixedPoints) -> MackeyMorphism {
        let maps = (0..self.inflated.len())
            .map(|a| {
                let mid = f.evaluate(&self.inflated[a]);
                self.sections[a].then(&mid).then(&target.projections[a]).matrix().clone()
            })
            .collect();
        MackeyMorphism::unchecked(&self.functor, &target.functor, maps)
    }
}

fn normal_class(group: &Group, n: &Subgroup) -> Result<usize> {
    if !group.is_subgroup(n.elements()) {
        return Err(Error::InvalidGroup(format!("{:?} is not a subgroup", n.elements())));
    }
    if !group.is_normal(n) {
        return Err(Error::NotNormal(format!("{:?}", n.elements())));
    }
    Ok(group.class_of(n))
}

/// The inflation of a `W`-set along `G → W` as a `G`-map source or target.
fn inflate_map(f: &GMap, s: &GSet, t: &GSet) -> GMap {
    GMap::unchecked(s.clone(), t.clone(), f.graph().to_vec())
}

/// Geometric fixed points `Φ^N(M)`, a Mackey functor over `G/N`.
pub fn geometric_fixed_points(m: &MackeyFunctor, n: &Subgroup) -> Result<GeometricFixedPoints> {
    let group = m.group();
    let nc = normal_class(group, n)?;
    let w = &group.weyl(nc).group;
    let quotient: Vec<usize> = group.weyl(nc).quotient.iter().map(|x| x.expect("normal subgroup")).collect();
    let free_classes: Vec<usize> = (0..group.num_classes()).filter(|&c| !n.is_subset(&group.class(c).rep)).collect();
    let mut inflated = Vec::new();
    let mut projections = Vec::new();
    let mut sections = Vec::new();
    let mut values = Vec::new();
    for a in 0..w.num_classes() {
        let s = GSet::orbit(w, a).inflate(group, &quotient);
        let raw = m.evaluate(&s);
        let mut pushes = Vec::new();
        for &c in &free_classes {
            let rep = &group.class(c).rep;
            let reps = &group.cosets(c).reps;
            for x in s.fixed_indices(rep) {
                let graph = reps.iter().map(|&g| s.act(g, x)).collect();
                let f = GMap::unchecked(GSet::orbit(group, c), s.clone(), graph);
                pushes.push(m.push_along(&f));
            }
        }
        let image = sum_of_images(&raw, &pushes);
        let (q, proj, sec) = image.cokernel_with_section();
        values.push(q);
        projections.push(proj);
        sections.push(sec);
        inflated.push(s);
    }
    let functor = MackeyFunctor::tabulate(w, m.ring(), values, |_, om| {
        let f = GMap::between_orbits(w, om.src, om.dst, om.point);
        let g = inflate_map(&f, &inflated[om.src], &inflated[om.dst]);
        let push = sections[om.src].then(&m.push_along(&g)).then(&projections[om.dst]);
        let pull = sections[om.dst].then(&m.pull_along(&g)).then(&projections[om.src]);
        (push.matrix().clone(), pull.matrix().clone())
    });
    Ok(GeometricFixedPoints { functor, quotient, inflated, projections, sections })
}

/// `Ψ^H(M)(T) = M(G ×_H T)`, a Mackey functor over `H`.
pub struct CategoricalFixedPoints {
    pub functor: MackeyFunctor,
    /// Embedding of the elements of `H` into `G`.
    pub embedding: Vec<usize>,
    pub induced: Vec<GSet>,
    pairs: Vec<Vec<usize>>,
}

impl CategoricalFixedPoints {
    /// The induced `G`-map `G ×_H T → G ×_H T'` of an `H`-map between orbits.
    fn induce_map(&self, f: &GMap, a: usize, b: usize) -> GMap {
        let (ta, tb) = (f.source().size(), f.target().size());
        let sa = &self.induced[a];
        let mut graph = vec![usize::MAX; sa.size()];
        for (k, &p) in self.pairs[a].iter().enumerate() {
            let (g, t) = (k / ta, k % ta);
            if graph[p] == usize::MAX {
                graph[p] = self.pairs[b][g * tb + f.apply(t)];
            }
        }
        GMap::unchecked(sa.clone(), self.induced[b].clone(), graph)
    }

    pub fn on_morphism(&self, f: &MackeyMorphism, target: &CategoricalFixedPoints) -> MackeyMorphism {
        let maps = self.induced.iter().map(|s| f.evaluate(s).matrix().clone()).collect();
        MackeyMorphism::unchecked(&self.functor, &target.functor, maps)
    }

    /// The action of `z` in the centralizer of `H` on `Ψ^H(M)(H/K_a)`, by `[g, t] ↦ [g z⁻¹, t]`.
    pub fn centralizer_action(&self, m: &MackeyFunctor, a: usize, z: usize) -> Result<ModuleMap> {
        let group = m.group();
        if self.embedding.iter().any(|&h| group.mul(h, z) != group.mul(z, h)) {
            return Err(Error::Precondition(format!("element {z} does not centralize the subgroup")));
        }
        let sa = &self.induced[a];
        let ta = self.pairs[a].len() / group.order();
        let zi = group.inv(z);
        let mut graph = vec![0; sa.size()];
        for (k, &p) in self.pairs[a].iter().enumerate() {
            let (g, t) = (k / ta, k % ta);
            graph[p] = self.pairs[a][group.mul(g, zi) * ta + t];
        }
        Ok(m.push_along(&GMap::unchecked(sa.clone(), sa.clone(), graph)))
    }
}

pub fn categorical_fixed_points(m: &MackeyFunctor, h: &Subgroup) -> Result<CategoricalFixedPoints> {
    let group = m.group();
    if !group.is_subgroup(h.elements()) {
        return Err(Error::InvalidGroup(format!("{:?} is not a subgroup", h.elements())));
    }
    let (hg, emb) = group.subgroup_as_group(h);
    let mut induced = Vec::new();
    let mut pairs = Vec::new();
    for a in 0..hg.num_classes() {
        let (s, p) = GSet::induce(group, &emb, &GSet::orbit(&hg, a));
        induced.push(s);
        pairs.push(p);
    }
    let values = induced.iter().map(|s| m.evaluate(s)).collect();
    let mut out = CategoricalFixedPoints {
        functor: MackeyFunctor::zero(&hg, m.ring()),
        embedding: emb,
        induced,
        pairs,
    };
    out.functor = MackeyFunctor::tabulate(&hg, m.ring(), values, |_, om| {
        let f = GMap::between_orbits(&hg, om.src, om.dst, om.point);
        let g = out.induce_map(&f, om.src, om.dst);
        (m.push_along(&g).matrix().clone(), m.pull_along(&g).matrix().clone())
    });
    Ok(out)
}

/// `Infl^N(M)(S) = M(S^N)` for `M` over the quotient `G/N`.
pub fn inflation(m: &MackeyFunctor, group: &Group, n: &Subgroup) -> Result<MackeyFunctor> {
    let nc = normal_class(group, n)?;
    let w = &group.weyl(nc).group;
    if **w != **m.group() {
        return Err(Error::Precondition("functor does not live over the quotient group".into()));
    }
    let ring = m.ring();
    let fixed: Vec<Option<(GSet, Vec<usize>)>> = (0..group.num_classes())
        .map(|c| n.is_subset(&group.class(c).rep).then(|| GSet::orbit(group, c).fixed_points(nc)))
        .collect();
    let values = fixed
        .iter()
        .map(|f| match f {
            Some((s, _)) => m.evaluate(&s.transport(m.group(), &(0..w.order()).collect::<Vec<_>>())),
            None => FpModule::zero(ring),
        })
        .collect();
    let lifted: Vec<Option<GSet>> = fixed
        .iter()
        .map(|f| f.as_ref().map(|(s, _)| s.transport(m.group(), &(0..w.order()).collect::<Vec<_>>())))
        .collect();
    Ok(MackeyFunctor::tabulate(group, ring, values, |_, om| {
        match (&lifted[om.src], &lifted[om.dst]) {
            (Some(sa), Some(sb)) => {
                let phi = GMap::between_orbits(group, om.src, om.dst, om.point);
                let f = GMap::unchecked(sa.clone(), sb.clone(), phi.graph().to_vec());
                (m.push_along(&f).matrix().clone(), m.pull_along(&f).matrix().clone())
            }
            _ => {
                let (ga, gb) = (
                    lifted[om.src].as_ref().map_or(0, |s| m.evaluate(s).gens()),
                    lifted[om.dst].as_ref().map_or(0, |s| m.evaluate(s).gens()),
                );
                (Matrix::zeros(gb, ga), Matrix::zeros(ga, gb))
            }
        }
    }))
}

/// The unit `M → Infl^N Φ^N M`.
pub fn inflation_unit(m: &MackeyFunctor, n: &Subgroup) -> Result<(MackeyFunctor, MackeyMorphism)> {
    let group = m.group();
    let phi = geometric_fixed_points(m, n)?;
    let infl = inflation(&phi.functor, group, n)?;
    let nc = group.class_of(n);
    let maps = (0..group.num_classes())
        .map(|c| {
            if !n.is_subset(&group.class(c).rep) {
                return Matrix::zeros(0, m.value(c).gens());
            }
            let (x, _) = GSet::orbit(group, c).fixed_points(nc);
            let a = x.orbits()[0].class;
            let t = &phi.inflated[a];
            let graph = (0..x.size()).map(|p| x.coset_index(p)).collect();
            let iso = GMap::unchecked(GSet::orbit(group, c), t.clone(), graph);
            m.push_along(&iso).then(phi.projection(a)).matrix().clone()
        })
        .collect();
    let unit = MackeyMorphism::unchecked(m, &infl, maps);
    Ok((infl, unit))
}

/// Result of comparing `Φ^{H'} Ψ^H M` with `Ψ^{H/H'} Φ^{H'} M`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct PhiPsiReport {
    pub isomorphic: bool,
    /// Orbit maps (in the left functor) where the comparison failed.
    pub mismatches: Vec<String>,
}

/// Compares both sides on every orbit map, after transporting along the
/// canonical isomorphism of the two copies of `H/H'`.
pub fn phi_psi_commute_check(m: &MackeyFunctor, hp: &Subgroup, h: &Subgroup) -> Result<PhiPsiReport> {
    let group = m.group();
    if !hp.is_subset(h) || !group.is_subgroup(h.elements()) {
        return Err(Error::Precondition("H' must be a subgroup of H".into()));
    }
    if !group.is_normal(hp) {
        return Err(Error::NotNormal(format!("{:?}", hp.elements())));
    }
    // left: Φ^{H'} Ψ^H M
    let psi = categorical_fixed_points(m, h)?;
    let gamma = psi.functor.group().clone();
    let pos = |x: usize| psi.embedding.binary_search(&x).expect("element of H");
    let hp_in_gamma = Subgroup::from_sorted(hp.elements().iter().map(|&x| pos(x)).collect());
    let left = geometric_fixed_points(&psi.functor, &hp_in_gamma)?;
    // right: Ψ^{H/H'} Φ^{H'} M
    let phi = geometric_fixed_points(m, hp)?;
    let mut qh: Vec<usize> = h.elements().iter().map(|&x| phi.quotient[x]).collect();
    qh.sort_unstable();
    qh.dedup();
    let right = categorical_fixed_points(&phi.functor, &Subgroup::from_sorted(qh))?;
    let (w1, w3) = (left.functor.group().clone(), right.functor.group().clone());
    // iso W1 → W3 through elements of H
    let mut iso = vec![usize::MAX; w1.order()];
    for (gi, &x) in psi.embedding.iter().enumerate() {
        let w = left.quotient[gi];
        let v = right.embedding.binary_search(&phi.quotient[x]).expect("image of H");
        iso[w] = v;
    }
    let _ = gamma;
    let oc = OrbitCategory::of(&w1);
    let mut mismatches = Vec::new();
    for id in 0..oc.len() {
        let om = oc.map(id);
        let f = GMap::between_orbits(&w1, om.src, om.dst, om.point);
        let s = f.source().transport(&w3, &iso);
        let t = f.target().transport(&w3, &iso);
        let g = GMap::unchecked(s, t, f.graph().to_vec());
        let (lp, rp) = (left.functor.push_map(id), right.functor.push_along(&g));
        let (lq, rq) = (left.functor.pull_map(id), right.functor.pull_along(&g));
        let same = |a: &ModuleMap, b: &ModuleMap| -> Result<bool> {
            Ok(a.source().isomorphic(b.source())?
                && a.target().isomorphic(b.target())?
                && a.kernel().0.isomorphic(&b.kernel().0)?
                && a.cokernel().0.isomorphic(&b.cokernel().0)?)
        };
        if !same(&lp, &rp)? || !same(&lq, &rq)? {
            mismatches.push(format!("{om:?}"));
        }
    }
    Ok(PhiPsiReport { isomorphic: mismatches.is_empty(), mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::mackey::examples::{burnside_mackey, fixed_point_mackey};
    use crate::ring::CoeffRing;

    const Z: CoeffRing = CoeffRing::Integers;

    fn classwise_iso(a: &MackeyFunctor, b: &MackeyFunctor) -> bool {
        a.values().len() == b.values().len()
            && a.values().iter().zip(b.values()).all(|(x, y)| x.isomorphic(y).unwrap())
    }

    #[test]
    fn phi_of_burnside_prime() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let a = burnside_mackey(&g, Z);
        let phi = geometric_fixed_points(&a, &g.whole()).unwrap();
        assert_eq!(phi.functor.value(0).to_string(), "Z");
        let triv = geometric_fixed_points(&a, &g.trivial()).unwrap();
        assert!(classwise_iso(&triv.functor, &a));
    }

    #[test]
    fn phi_c2_of_z4() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let a = burnside_mackey(&g, Z);
        let c2 = g.class(1).rep.clone();
        let phi = geometric_fixed_points(&a, &c2).unwrap();
        let z2 = burnside_mackey(phi.functor.group(), Z);
        assert!(classwise_iso(&phi.functor, &z2));
        assert_eq!(phi.functor.value(1).to_string(), "Z^2");
        assert!(phi.functor.check_axioms().unwrap().passed());
    }

    #[test]
    fn psi_examples() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let a = burnside_mackey(&g, Z);
        let c2 = g.class(1).rep.clone();
        let psi = categorical_fixed_points(&a, &c2).unwrap();
        assert_eq!(psi.functor.value(1).to_string(), "Z^2");
        assert!(psi.functor.check_axioms().unwrap().passed());
        let top = categorical_fixed_points(&a, &g.whole()).unwrap();
        assert!(classwise_iso(&top.functor, &a));
        let bottom = categorical_fixed_points(&a, &g.trivial()).unwrap();
        assert!(bottom.functor.value(0).isomorphic(a.value(0)).unwrap());
    }

    #[test]
    fn inflation_examples() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let c2 = g.class(1).rep.clone();
        let w = g.weyl(1).group.clone();
        let a2 = burnside_mackey(&w, Z);
        let infl = inflation(&a2, &g, &c2).unwrap();
        assert!(infl.value(0).is_zero());
        assert!(infl.check_axioms().unwrap().passed());
        let back = geometric_fixed_points(&infl, &c2).unwrap();
        assert!(classwise_iso(&back.functor, &a2));
        let zero = inflation(&MackeyFunctor::zero(&w, Z), &g, &c2).unwrap();
        assert!(zero.values().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn unit_is_surjective_and_natural() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let a = burnside_mackey(&g, Z);
        for c in 0..g.num_classes() {
            let n = g.class(c).rep.clone();
            if !g.is_normal(&n) {
                continue;
            }
            let (_, unit) = inflation_unit(&a, &n).unwrap();
            assert!(unit.is_natural());
            assert!(unit.is_surjective());
        }
    }

    #[test]
    fn phi_psi_on_z4() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let a = burnside_mackey(&g, Z);
        let c2 = g.class(1).rep.clone();
        let r = phi_psi_commute_check(&a, &c2, &c2).unwrap();
        assert!(r.isomorphic);
        let r = phi_psi_commute_check(&a, &g.trivial(), &c2).unwrap();
        assert!(r.isomorphic);
        let t = fixed_point_mackey(&g, 0, Z).unwrap();
        assert!(phi_psi_commute_check(&t, &c2, &g.whole()).unwrap().isomorphic);
    }

    #[test]
    fn morphism_kernels_and_cokernels() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let a = burnside_mackey(&g, Z);
        let t = crate::burnside::BurnsideElement::from_classes(&g, &[(0, 1)]).unwrap();
        let f = MackeyMorphism::burnside_action(&a, &t).unwrap();
        assert!(f.is_natural());
        let (q, p) = f.cokernel();
        assert!(q.check_axioms().unwrap().passed());
        assert!(p.is_natural());
        let (k, i) = f.kernel();
        assert!(k.check_axioms().unwrap().passed());
        assert!(i.is_natural());
    }
}

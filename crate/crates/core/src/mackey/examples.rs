//! Standard Mackey functors: Burnside, fixed-point and invariants.

use std::collections::HashMap;

use crate::burnside::{hom_basis, SpanKey};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::gset::{fibered_product, GMap, GSet};
use crate::matrix::Matrix;
use crate::module::{FpModule, ModuleMap};
use crate::ring::CoeffRing;
use crate::scalar::Scalar;

use super::functor::MackeyFunctor;

/// Bases of `A(G/K) = B(pt, G/K)` on each class, with key lookup.
pub(crate) struct BurnsideBases {
    pub orbits: Vec<GSet>,
    pub point: GSet,
    pub keys: Vec<Vec<SpanKey>>,
    pub index: Vec<HashMap<SpanKey, usize>>,
}

impl BurnsideBases {
    pub fn new(group: &Group) -> Self {
        let point = GSet::point(group);
        let orbits: Vec<GSet> = (0..group.num_classes()).map(|c| GSet::orbit(group, c)).collect();
        let keys: Vec<Vec<SpanKey>> = orbits.iter().map(|o| hom_basis(&point, o)).collect();
        let index = keys.iter().map(|ks| ks.iter().enumerate().map(|(i, k)| (*k, i)).collect()).collect();
        BurnsideBases { orbits, point, keys, index }
    }

    /// Key of the orbit `G/K_c → G/K_a` hitting `y`, canonical in `B(pt, G/K_a)`.
    pub fn key(&self, group: &Group, c: usize, a: usize, y: usize) -> usize {
        let k = SpanKey::canonical(group, &self.point, &self.orbits[a], c, 0, y);
        self.index[a][&k]
    }

    /// The leg `G/K_c → G/K_a` of a basis key.
    pub fn leg(&self, group: &Group, a: usize, key: &SpanKey) -> GMap {
        GMap::between_orbits(group, key.class, a, key.right)
    }
}

/// The Burnside Mackey functor `A = B(pt, −)`.
pub fn burnside_mackey(group: &Group, ring: CoeffRing) -> MackeyFunctor {
    let b = BurnsideBases::new(group);
    let values = b.keys.iter().map(|k| FpModule::free(ring, k.len())).collect();
    MackeyFunctor::tabulate(group, ring, values, |_, m| {
        let phi = GMap::between_orbits(group, m.src, m.dst, m.point);
        let (na, nb) = (b.keys[m.src].len(), b.keys[m.dst].len());
        let mut push = Matrix::zeros(nb, na);
        for (i, k) in b.keys[m.src].iter().enumerate() {
            let j = b.key(group, k.class, m.dst, phi.apply(k.right));
            push[(j, i)] += Scalar::ONE;
        }
        let mut pull = Matrix::zeros(na, nb);
        for (j, k) in b.keys[m.dst].iter().enumerate() {
            let (p, _, p2) = fibered_product(&b.leg(group, m.dst, k), &phi).expect("common target");
            for o in p.orbits() {
                let i = b.key(group, o.class, m.src, p2.apply(o.base));
                pull[(i, j)] += Scalar::ONE;
            }
        }
        (push, pull)
    })
}

/// `T_H(S) = R[S^H]` for the representative `H` of class `h`.
pub fn fixed_point_mackey(group: &Group, h: usize, ring: CoeffRing) -> Result<MackeyFunctor> {
    if h >= group.num_classes() {
        return Err(Error::InvalidGroup(format!("no subgroup class {h}")));
    }
    let rep = group.class(h).rep.clone();
    let fixed: Vec<Vec<usize>> = (0..group.num_classes())
        .map(|c| GSet::orbit(group, c).fixed_indices(&rep))
        .collect();
    let values = fixed.iter().map(|f| FpModule::free(ring, f.len())).collect();
    Ok(MackeyFunctor::tabulate(group, ring, values, |_, m| {
        let phi = GMap::between_orbits(group, m.src, m.dst, m.point);
        let (fa, fb) = (&fixed[m.src], &fixed[m.dst]);
        let mut push = Matrix::zeros(fb.len(), fa.len());
        for (i, &x) in fa.iter().enumerate() {
            let j = fb.binary_search(&phi.apply(x)).expect("fixed points map to fixed points");
            push[(j, i)] = Scalar::ONE;
        }
        (push.clone(), push.transpose())
    }))
}

/// `S ↦ Hom_G(S, M)` for a `G`-module `M`; the value on `G/K` is `M^K`.
///
/// `action[g]` is the action of element `g` on `M`.
pub fn invariants_mackey(group: &Group, action: &[ModuleMap]) -> Result<MackeyFunctor> {
    if action.len() != group.order() {
        return Err(Error::Dimension("one action map per group element is required".into()));
    }
    let m = action[0].source().clone();
    for (g, a) in action.iter().enumerate() {
        if a.source() != &m || a.target() != &m {
            return Err(Error::Dimension(format!("action of element {g} is not an endomorphism")));
        }
        for h in 0..group.order() {
            let lhs = action[h].then(a);
            if !lhs.equals(&action[group.mul(g, h)]) {
                return Err(Error::InvalidGroup(format!("action is not multiplicative at ({g}, {h})")));
            }
        }
    }
    if !action[0].equals(&m.identity()) {
        return Err(Error::InvalidGroup("identity does not act trivially".into()));
    }
    let ring = m.ring();
    let incl: Vec<ModuleMap> = (0..group.num_classes())
        .map(|c| {
            let gens = group.generating_set(group.class(c).rep.elements());
            let mut stacked = Matrix::zeros(0, m.gens());
            let mut target = FpModule::zero(ring);
            for &g in &gens {
                let d = action[g].sub(&m.identity());
                stacked = stacked.vstack(d.matrix());
                target = target.direct_sum(&m);
            }
            ModuleMap::unchecked(m.clone(), target, stacked).kernel().1
        })
        .collect();
    let values = incl.iter().map(|i| i.source().clone()).collect();
    Ok(MackeyFunctor::tabulate(group, ring, values, |_, om| {
        let (ia, ib) = (&incl[om.src], &incl[om.dst]);
        let tb = group.cosets(om.dst);
        let mut sum = m.zero_map(&m);
        for &r in &group.cosets(om.src).reps {
            if tb.act(r, om.point) == 0 {
                sum = sum.add(&action[r]);
            }
        }
        let push = ib.lift(&ia.then(&sum)).expect("sums over cosets are invariant");
        let g = tb.reps[om.point];
        let pull = ia.lift(&ib.then(&action[g])).expect("translates of invariants are invariant");
        (push.matrix().clone(), pull.matrix().clone())
    }))
}

/// Permutation action of `G` on `R[S]`.
pub fn permutation_action(s: &GSet, ring: CoeffRing) -> Vec<ModuleMap> {
    let m = FpModule::free(ring, s.size());
    (0..s.group().order())
        .map(|g| {
            let mut mat = Matrix::zeros(s.size(), s.size());
            for x in 0..s.size() {
                mat[(s.act(g, x), x)] = Scalar::ONE;
            }
            ModuleMap::unchecked(m.clone(), m.clone(), mat)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{Identity, OrbitCategory, OrbitMap};
    use crate::burnside::BurnsideElement;
    use crate::group::FiniteGroup;

    const Z: CoeffRing = CoeffRing::Integers;

    #[test]
    fn corrupted_transfer_breaks_double_coset() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let a = burnside_mackey(&g, Z);
        let id = OrbitCategory::of(&g).id_of(&OrbitMap { src: 1, dst: 2, point: 0 }).unwrap();
        let bad = a.perturbed(true, id, 0, 0, Scalar::ONE);
        let r = bad.check_axioms().unwrap();
        assert!(r.violations.iter().any(|v| v.identity == Identity::DoubleCoset && v.classes == [1, 1, 2]));
    }

    #[test]
    fn burnside_of_prime_cyclic() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let a = burnside_mackey(&g, Z);
        assert_eq!(a.value(0).to_string(), "Z");
        assert_eq!(a.value(1).to_string(), "Z^2");
        // basis of A^G is (t, 1) in key order
        let res = a.restriction(0, 1, 0).unwrap();
        assert_eq!(res.matrix(), &Matrix::from_i64(&[&[3, 1]]));
        let tr = a.transfer(0, 1, 0).unwrap();
        assert_eq!(tr.matrix(), &Matrix::from_i64(&[&[1], &[0]]));
        assert!(a.check_axioms().unwrap().passed());
    }

    #[test]
    fn trivial_group_is_constant() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let a = burnside_mackey(&g, Z);
        assert_eq!(a.value(0).to_string(), "Z");
        assert!(a.check_axioms().unwrap().passed());
    }

    #[test]
    fn fixed_point_examples() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let t = fixed_point_mackey(&g, 0, Z).unwrap();
        assert_eq!(t.value(1).to_string(), "Z");
        assert_eq!(t.value(0).to_string(), "Z^2");
        let free = fixed_point_mackey(&g, 1, Z).unwrap();
        assert!(free.value(0).is_zero());
        let s3 = FiniteGroup::symmetric3();
        let t2 = fixed_point_mackey(&s3, 1, Z).unwrap();
        assert_eq!(t2.value(1).gens(), s3.class(1).weyl_order());
        assert!(t2.check_axioms().unwrap().passed());
        let e = BurnsideElement::from_classes(&g, &[(0, 1)]).unwrap();
        let act = t.burnside_action(&e, &GSet::point(&g)).unwrap();
        assert_eq!(act.matrix(), &Matrix::from_i64(&[&[2]]));
    }

    #[test]
    fn invariants_of_permutation_modules() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let s = GSet::orbit(&g, 0);
        let inv = invariants_mackey(&g, &permutation_action(&s, Z)).unwrap();
        assert!(inv.check_axioms().unwrap().passed());
        let t = fixed_point_mackey(&g, 0, Z).unwrap();
        for c in 0..3 {
            assert!(inv.value(c).isomorphic(t.value(c)).unwrap());
        }
    }
}

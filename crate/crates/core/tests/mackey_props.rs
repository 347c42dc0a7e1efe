use mackeylab::burnside::{hom_basis, BurnsideElement};
use mackeylab::group::Group;
use mackeylab::gset::GSet;
use mackeylab::json::parse_group;
use mackeylab::mackey::{
    burnside_mackey, categorical_fixed_points, fixed_point_mackey, geometric_fixed_points, MackeyFunctor,
    MackeyMorphism,
};
use mackeylab::CoeffRing;
use proptest::prelude::*;

const Z: CoeffRing = CoeffRing::Integers;

fn small() -> Vec<Group> {
    ["cyclic:4", "cyclic:6", "S3", "V4", "D8"].iter().map(|g| parse_group(g).unwrap()).collect()
}

fn classwise_iso(a: &MackeyFunctor, b: &MackeyFunctor) -> bool {
    a.values().len() == b.values().len() && a.values().iter().zip(b.values()).all(|(x, y)| x.isomorphic(y).unwrap())
}

fn functor(g: &Group, which: usize) -> MackeyFunctor {
    let k = g.num_classes();
    if which % (k + 1) == k {
        burnside_mackey(g, Z)
    } else {
        fixed_point_mackey(g, which % (k + 1), Z).unwrap()
    }
}

/// Multiplication by a Burnside ring element, a morphism with interesting kernel and cokernel.
fn endo(m: &MackeyFunctor, coeffs: &[i64]) -> MackeyMorphism {
    let k = m.group().num_classes();
    let terms: Vec<(usize, i64)> = coeffs.iter().copied().cycle().take(k).enumerate().collect();
    let a = BurnsideElement::from_classes(m.group(), &terms).unwrap();
    MackeyMorphism::burnside_action(m, &a).unwrap()
}

fn gset(g: &Group, f: &[(usize, usize)]) -> GSet {
    let k = g.num_classes();
    let form: Vec<(usize, usize)> = f.iter().map(|&(c, m)| (c % k, m)).collect();
    GSet::from_orbit_form(g, &form).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn apply_span_is_functorial(
        gi in 0usize..5, which in 0usize..9,
        f1 in prop::collection::vec((0usize..8, 1usize..3), 1..3),
        f2 in prop::collection::vec((0usize..8, 1usize..3), 1..3),
        f3 in prop::collection::vec((0usize..8, 1usize..3), 1..3),
        i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(),
    ) {
        let g = &small()[gi];
        let m = functor(g, which);
        let (s1, s2, s3) = (gset(g, &f1), gset(g, &f2), gset(g, &f3));
        let b1 = hom_basis(&s1, &s2);
        let b2 = hom_basis(&s2, &s3);
        let x = BurnsideElement::basis(&s1, &s2, b1[i.index(b1.len())]);
        let y = BurnsideElement::basis(&s2, &s3, b2[j.index(b2.len())]);
        let whole = m.apply_span(&x.then(&y).unwrap()).unwrap();
        let parts = m.apply_span(&x).unwrap().then(&m.apply_span(&y).unwrap());
        prop_assert!(whole.equals(&parts));
        prop_assert!(m.apply_span(&BurnsideElement::identity(&s1)).unwrap().equals(&m.evaluate(&s1).identity()));
    }

    #[test]
    fn geometric_fixed_points_are_right_exact(gi in 0usize..5, which in 0usize..9, coeffs in prop::collection::vec(-3i64..4, 1..4), ni in any::<prop::sample::Index>()) {
        let g = &small()[gi];
        let m = functor(g, which);
        let normal: Vec<usize> = (0..g.num_classes()).filter(|&c| g.is_normal(&g.class(c).rep)).collect();
        let n = g.class(normal[ni.index(normal.len())]).rep.clone();
        let f = endo(&m, &coeffs);
        let (c, _) = f.cokernel();
        let phi_m = geometric_fixed_points(&m, &n).unwrap();
        let phi_c = geometric_fixed_points(&c, &n).unwrap();
        let (want, _) = phi_m.on_morphism(&f, &phi_m).cokernel();
        prop_assert!(classwise_iso(&phi_c.functor, &want));
    }

    #[test]
    fn categorical_fixed_points_are_exact(gi in 0usize..5, which in 0usize..9, coeffs in prop::collection::vec(-3i64..4, 1..4), hi in any::<prop::sample::Index>()) {
        let g = &small()[gi];
        let m = functor(g, which);
        let h = g.class(hi.index(g.num_classes())).rep.clone();
        let f = endo(&m, &coeffs);
        let (k, _) = f.kernel();
        let (c, _) = f.cokernel();
        let psi_m = categorical_fixed_points(&m, &h).unwrap();
        let psi_f = psi_m.on_morphism(&f, &psi_m);
        prop_assert!(classwise_iso(&categorical_fixed_points(&k, &h).unwrap().functor, &psi_f.kernel().0));
        prop_assert!(classwise_iso(&categorical_fixed_points(&c, &h).unwrap().functor, &psi_f.cokernel().0));
    }
}

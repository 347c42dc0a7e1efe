use mackeylab::cyclic::{cyclic_homology, free_module, permutation_module, trivial_module};
use mackeylab::group::FiniteGroup;
use mackeylab::mackey::{burnside_mackey, fixed_point_mackey, invariants_mackey, MackeyFunctor};
use mackeylab::zhat::{
    burnside_truncation, canonical_filtration, derived_burnside_homology, gluing_value, idempotent_levels,
    inflate_to_zhat, level_fixed_points, p_local_idempotent, p_typical_reconstruct_check, WittElement,
};
use mackeylab::{CoeffRing, FpModule, ModuleMap, Scalar};
use proptest::prelude::*;

const Z: CoeffRing = CoeffRing::Integers;

fn witt_strategy(bound: u64) -> impl Strategy<Value = WittElement> {
    prop::collection::vec((1..=bound, -6i64..7, 1i64..4), 0..6).prop_map(move |terms| {
        let t: Vec<(u64, Scalar)> =
            terms.into_iter().map(|(i, a, b)| (i, Scalar::from(a) / Scalar::from(b))).collect();
        WittElement::from_terms(CoeffRing::Rationals, bound, &t).unwrap()
    })
}

/// A random `Z/n`-permutation module, as images of the generator.
fn perm_strategy(n: u64) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(prop::sample::select(divisors(n)), 1..4).prop_map(|orbits| {
        let mut perm = Vec::new();
        for d in orbits {
            let base = perm.len();
            perm.extend((0..d as usize).map(|k| base + (k + 1) % d as usize));
        }
        perm
    })
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn cyclic_action(n: u64, sigma: &ModuleMap) -> Vec<ModuleMap> {
    (0..n).map(|k| sigma.pow(k)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ghost_is_a_homomorphism(a in witt_strategy(24), b in witt_strategy(24)) {
        let (ga, gb) = (a.ghost_vector(), b.ghost_vector());
        let prod: Vec<Scalar> = ga.iter().zip(&gb).map(|(x, y)| *x * *y).collect();
        prop_assert_eq!(a.mul(&b).unwrap().ghost_vector(), prod);
        let sum: Vec<Scalar> = ga.iter().zip(&gb).map(|(x, y)| *x + *y).collect();
        prop_assert_eq!(a.add(&b).unwrap().ghost_vector(), sum);
    }

    #[test]
    fn ghost_is_injective(a in witt_strategy(24)) {
        prop_assert_eq!(a.is_zero(), a.ghost_vector().iter().all(|x| *x == Scalar::ZERO));
    }

    #[test]
    fn eps_action_is_multiplicative(i in 1u64..=12, j in 1u64..=12, li in any::<prop::sample::Index>()) {
        let a = burnside_truncation(12, Z).unwrap();
        let l = a.levels()[li.index(a.levels().len())];
        let (x, y) = (WittElement::basis(Z, 12, i).unwrap(), WittElement::basis(Z, 12, j).unwrap());
        let xy = x.mul(&y).unwrap();
        match (a.eps_action(&xy, l), a.eps_action(&x, l), a.eps_action(&y, l)) {
            (Ok(p), Ok(ax), Ok(ay)) => {
                prop_assert!(p.equals(&ay.then(&ax)));
                prop_assert!(p.equals(&ax.then(&ay)));
            }
            _ => {}
        }
    }

    #[test]
    fn eps_action_on_inflated_functors(n in 1u64..=8, i in 1u64..=8, j in 1u64..=8, fix in 0usize..4) {
        let g = FiniteGroup::cyclic(n as usize).unwrap();
        let m = if fix < g.num_classes() { fixed_point_mackey(&g, fix, Z).unwrap() } else { burnside_mackey(&g, Z) };
        let z = inflate_to_zhat(&m, 8).unwrap();
        prop_assert!(z.check().passed());
        let (x, y) = (WittElement::basis(Z, 8, i).unwrap(), WittElement::basis(Z, 8, j).unwrap());
        let xy = x.mul(&y).unwrap();
        for &l in z.levels() {
            if let (Ok(p), Ok(ax), Ok(ay)) = (z.eps_action(&xy, l), z.eps_action(&x, l), z.eps_action(&y, l)) {
                prop_assert!(p.equals(&ax.then(&ay)));
            }
        }
        let one = WittElement::one(Z, 8);
        for &l in z.levels() {
            prop_assert!(z.eps_action(&one, l).unwrap().equals(&z.value(l).unwrap().identity()));
        }
    }

    #[test]
    fn derived_burnside_homology_matches_permutation_modules(
        left in prop::collection::vec(1u64..5, 1..3),
        right in prop::collection::vec(1u64..5, 1..3),
        degree in 0u32..4,
    ) {
        let bound = 8;
        let got = derived_burnside_homology(&left, &right, degree, bound, Z).unwrap();
        for h in &got {
            let n = h.level;
            // (S × S')^{nẐ} as an explicit Z/n-set.
            let mut perm = Vec::new();
            for &a in left.iter().filter(|&&a| n % a == 0) {
                for &b in right.iter().filter(|&&b| n % b == 0) {
                    let base = perm.len();
                    for x in 0..a {
                        for y in 0..b {
                            perm.push(base + (((x + 1) % a) * b + (y + 1) % b) as usize);
                        }
                    }
                }
            }
            let want = if perm.is_empty() {
                FpModule::zero(Z)
            } else {
                cyclic_homology(n, &permutation_module(Z, &perm), degree).unwrap()
            };
            prop_assert!(h.value.isomorphic(&want).unwrap(), "level {}: {} vs {}", n, h.value, want);
        }
    }

    #[test]
    fn p_typical_reconstruction_on_inflated_functors(
        p in prop::sample::select(vec![2u64, 3]),
        n in 1u64..=6,
        perm in perm_strategy(6),
        kind in 0usize..3,
    ) {
        let ring = CoeffRing::PLocal(p);
        let g = FiniteGroup::cyclic(n as usize).unwrap();
        let m: MackeyFunctor = match kind {
            0 => burnside_mackey(&g, ring),
            1 => fixed_point_mackey(&g, 0, ring).unwrap(),
            _ => {
                // Restrict the Z/6-set to an action of Z/n only when it is one.
                let sigma = permutation_module(ring, &perm);
                if sigma.pow(n).equals(&sigma.source().identity()) {
                    invariants_mackey(&g, &cyclic_action(n, &sigma)).unwrap()
                } else {
                    burnside_mackey(&g, ring)
                }
            }
        };
        let z = inflate_to_zhat(&m, 12).unwrap();
        for &level in z.levels() {
            let r = p_typical_reconstruct_check(&z, p, level).unwrap();
            prop_assert!(r.isomorphic, "p = {}, level {}: {} vs {}", p, level, r.value, r.reconstructed);
        }
    }
}

#[test]
fn idempotents_are_orthogonal_and_complete() {
    for p in [2, 3] {
        for bound in 1..=12 {
            let ls = idempotent_levels(p, bound);
            let es: Vec<WittElement> = ls.iter().map(|&l| p_local_idempotent(p, l, bound).unwrap()).collect();
            let mut total = WittElement::zero(CoeffRing::PLocal(p), bound);
            for (i, e) in es.iter().enumerate() {
                assert_eq!(&e.mul(e).unwrap(), e, "p = {p}, N = {bound}, l = {}", ls[i]);
                for f in &es[i + 1..] {
                    assert!(e.mul(f).unwrap().is_zero());
                }
                total = total.add(e).unwrap();
            }
            assert_eq!(total, WittElement::one(CoeffRing::PLocal(p), bound));
        }
    }
}

#[test]
fn filtration_is_decreasing() {
    let a = burnside_truncation(12, Z).unwrap();
    for &l in a.levels() {
        for n in 1..=12 {
            let f = canonical_filtration(&a, n, l).unwrap();
            for k in 2..=12 / n {
                let g = canonical_filtration(&a, n * k, l).unwrap();
                assert!(g.step.image_within(&f.step), "F^{} not inside F^{} at level {l}", n * k, n);
            }
            assert!(f.cumulative.image_within(&f.step));
        }
    }
    for &l in a.levels() {
        assert!(canonical_filtration(&a, 12, l).unwrap().cumulative_module().is_zero());
    }
}

/// `Φ̃^l R^n` on the fixed-point functor of a `Z/n`-module, evaluated through
/// the truncated profunctor it inflates to.
fn composite(n: u64, l: u64, sigma: &ModuleMap) -> FpModule {
    let g = FiniteGroup::cyclic(n as usize).unwrap();
    let m = invariants_mackey(&g, &cyclic_action(n, sigma)).unwrap();
    let z = inflate_to_zhat(&m, 12).unwrap();
    match level_fixed_points(&z, l) {
        Ok(lf) => lf.at_level(l).unwrap().clone(),
        Err(_) => FpModule::zero(sigma.ring()),
    }
}

#[test]
fn gluing_matches_fixed_point_composite() {
    for n in 1..=12u64 {
        let modules = vec![trivial_module(Z), free_module(Z, n as usize, 1), trivial_module(Z).scale(Scalar::from(-1i64))];
        for sigma in modules.iter().filter(|s| s.pow(n).equals(&s.source().identity())) {
            for l in 1..=12u64 {
                let v = gluing_value(n, l, sigma).unwrap();
                let prime_step = n % l == 0 && n != l && mackeylab::scalar::is_prime(n / l);
                if l != n && !prime_step && n % l == 0 {
                    continue;
                }
                let direct = composite(n, l, sigma);
                let expected = match v.tate() {
                    Some(t) => t.even.clone(),
                    None if v.is_zero() => FpModule::zero(Z),
                    None => sigma.source().clone(),
                };
                assert!(direct.isomorphic(&expected).unwrap(), "n = {n}, l = {l}: {direct} vs {expected}");
            }
        }
    }
}

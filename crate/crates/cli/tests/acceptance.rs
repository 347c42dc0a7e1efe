//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mackeylab::burnside::{burnside_product, ghost, structure_constants, table_of_marks, BurnsideElement};
use mackeylab::cyclic::{cyclic_homology, cyclic_tate, free_module, permutation_module, trivial_module, TateResult};
use mackeylab::group::{FiniteGroup, Group, Subgroup};
use mackeylab::json::parse_group;
use mackeylab::mackey::{
    burnside_mackey, fixed_point_mackey, geometric_fixed_points, inflation, inflation_unit, invariants_mackey,
    phi_psi_commute_check, MackeyFunctor,
};
use mackeylab::matrix::Matrix;
use mackeylab::scalar::is_prime;
use mackeylab::zhat::{
    burnside_truncation, canonical_filtration, derived_burnside_homology, gluing_value, idempotent_levels,
    inflate_to_zhat, level_fixed_points, normal_system_roundtrip, p_local_idempotent, p_typical_component,
    WittElement, ZMackeyTrunc,
};
use mackeylab::{CoeffRing, FpModule, ModuleMap, Scalar};
use mackeylab_cli::fuzz::mutation_fuzz;

const Z: CoeffRing = CoeffRing::Integers;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Vec<Group> {
    let mut out: Vec<Group> = (1..=12).chain([16]).map(|n| FiniteGroup::cyclic(n).unwrap()).collect();
    for g in ["S3", "D8", "Q8", "V4"] {
        out.push(parse_group(g).unwrap());
    }
    out
}

fn classwise_iso(a: &MackeyFunctor, b: &MackeyFunctor) -> bool {
    a.values().len() == b.values().len() && a.values().iter().zip(b.values()).all(|(x, y)| x.isomorphic(y).unwrap())
}

fn normal_classes(g: &Group) -> Vec<usize> {
    (0..g.num_classes()).filter(|&c| g.is_normal(&g.class(c).rep)).collect()
}

fn cosets(g: &Group, h: &Subgroup) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    for x in 0..g.order() {
        let mut c: Vec<usize> = h.elements().iter().map(|&k| g.mul(x, k)).collect();
        c.sort_unstable();
        seen.insert(c);
    }
    seen.into_iter().collect()
}

/// Orbits of `G` on pairs of cosets, classified by stabilizer.
fn diagonal_orbits(g: &Group, h: &Subgroup, k: &Subgroup) -> Vec<i64> {
    let (ch, ck) = (cosets(g, h), cosets(g, k));
    let act = |x: usize, c: &Vec<usize>| {
        let mut v: Vec<usize> = c.iter().map(|&y| g.mul(x, y)).collect();
        v.sort_unstable();
        v
    };
    let mut out = vec![0; g.num_classes()];
    let mut done = BTreeSet::new();
    for a in &ch {
        for b in &ck {
            if done.contains(&(a.clone(), b.clone())) {
                continue;
            }
            let mut stab = Vec::new();
            for x in 0..g.order() {
                let p = (act(x, a), act(x, b));
                if p.0 == *a && p.1 == *b {
                    stab.push(x);
                }
                done.insert(p);
            }
            out[g.class_of(&Subgroup::from_sorted(stab))] += 1;
        }
    }
    out
}

fn criterion_1() -> Check {
    let groups = corpus();
    for g in &groups {
        let k = g.num_classes();
        let t = table_of_marks(g);
        let rows: Vec<Vec<Scalar>> =
            (0..k).map(|h| (0..k).map(|c| Scalar::from(t.marks[c][h] as i64)).collect()).collect();
        let free = FpModule::free(Z, k);
        let gh = ModuleMap::new(free.clone(), free, Matrix::from_rows(&rows)).unwrap();
        ensure(gh.is_injective(), || format!("ghost map of {} is not injective", g.name()))?;
        let sc = structure_constants(g);
        let basis: Vec<BurnsideElement> = (0..k).map(|c| BurnsideElement::from_classes(g, &[(c, 1)]).unwrap()).collect();
        for h in 0..k {
            for j in 0..k {
                let oracle = diagonal_orbits(g, &g.class(h).rep, &g.class(j).rep);
                ensure(sc[h][j] == oracle, || format!("{}: constants for ({h}, {j}) differ from orbit count", g.name()))?;
                let p = burnside_product(&basis[h], &basis[j]).unwrap();
                ensure(p.class_coeffs() == oracle, || format!("{}: product ({h}, {j})", g.name()))?;
                let (gx, gy) = (ghost(&basis[h]), ghost(&basis[j]));
                let pw: Vec<i64> = gx.iter().zip(&gy).map(|(a, b)| a * b).collect();
                ensure(ghost(&p) == pw, || format!("{}: ghost not multiplicative at ({h}, {j})", g.name()))?;
            }
        }
    }
    Ok(format!("{} groups, ghost injective and multiplicative, constants match orbit counts", groups.len()))
}

fn criterion_2() -> Check {
    let groups = corpus();
    let (mut total, mut caught, mut worst) = (0, 0, 1.0f64);
    for (i, g) in groups.iter().enumerate() {
        let a = burnside_mackey(g, Z);
        ensure(a.check_axioms().unwrap().passed(), || format!("burnside functor of {} fails", g.name()))?;
        for c in 0..g.num_classes() {
            let f = fixed_point_mackey(g, c, Z).unwrap();
            ensure(f.check_axioms().unwrap().passed(), || format!("fixed-point functor {c} of {} fails", g.name()))?;
        }
        let r = mutation_fuzz(&a, 1000 + i as u64, 50).unwrap();
        for m in r.mutations.iter().filter(|m| m.caught.is_none()) {
            let mutant = a.perturbed(m.pushforward, m.map, m.row, m.col, Scalar::from(m.delta));
            ensure(mutant.check_axioms().unwrap().passed(), || "uncaught mutant violates an axiom".into())?;
        }
        total += r.mutations.len();
        caught += r.caught();
        worst = worst.min(r.rate());
    }
    ensure(worst >= 0.95, || format!("lowest per-group rejection rate {:.2}", worst))?;
    Ok(format!("axioms hold on the corpus; {caught}/{total} mutants rejected, lowest group rate {:.0}%", worst * 100.0))
}

fn criterion_3() -> Check {
    let groups = corpus();
    let mut pairs = 0;
    for g in &groups {
        let a = burnside_mackey(g, Z);
        for c in normal_classes(g) {
            let n = g.class(c).rep.clone();
            let w = g.weyl(c).group.clone();
            for m in [burnside_mackey(&w, Z), fixed_point_mackey(&w, 0, Z).unwrap()] {
                let infl = inflation(&m, g, &n).unwrap();
                let back = geometric_fixed_points(&infl, &n).unwrap();
                ensure(classwise_iso(&back.functor, &m), || format!("{}: Phi Infl is not the identity", g.name()))?;
            }
            let (_, unit) = inflation_unit(&a, &n).unwrap();
            ensure(unit.is_surjective(), || format!("{}: unit not surjective", g.name()))?;
            pairs += 1;
        }
    }
    let z4 = FiniteGroup::cyclic(4).unwrap();
    let phi = geometric_fixed_points(&burnside_mackey(&z4, Z), &z4.class(1).rep).unwrap();
    ensure(classwise_iso(&phi.functor, &burnside_mackey(phi.functor.group(), Z)), || "Phi^C2 A(Z/4) is not A(Z/2)".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..20 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let normal = normal_classes(g);
        let hp = g.class(normal[rng.gen_range(0..normal.len())]).rep.clone();
        let over: Vec<usize> = (0..g.num_classes()).filter(|&c| hp.is_subset(&g.class(c).rep)).collect();
        let h = g.class(over[rng.gen_range(0..over.len())]).rep.clone();
        let m = if rng.gen_bool(0.5) {
            burnside_mackey(g, Z)
        } else {
            fixed_point_mackey(g, rng.gen_range(0..g.num_classes()), Z).unwrap()
        };
        let r = phi_psi_commute_check(&m, &hp, &h).unwrap();
        ensure(r.isomorphic, || format!("instance {trial} on {}: {:?}", g.name(), r.mismatches))?;
    }
    Ok(format!("{pairs} (group, normal subgroup) pairs, Phi^C2 A(Z/4) = A(Z/2), 20 Phi/Psi instances"))
}

fn criterion_4() -> Check {
    let big = 144;
    let e = |i| WittElement::basis(Z, big, i).unwrap();
    ensure(e(2).mul(&e(3)).unwrap() == e(6), || "e2 e3 != e6".into())?;
    ensure(e(2).mul(&e(4)).unwrap() == e(4).scale(Scalar::from(2i64)).unwrap(), || "e2 e4 != 2 e4".into())?;
    for i in 1..=12 {
        ensure(e(i).mul(&e(i)).unwrap() == e(i).scale(Scalar::from(i as i64)).unwrap(), || format!("e{i}^2"))?;
    }
    let n = 24;
    for i in 1..=n {
        for j in 1..=n {
            let (x, y) = (WittElement::basis(Z, n, i).unwrap(), WittElement::basis(Z, n, j).unwrap());
            let p = x.mul(&y).unwrap().ghost_vector();
            let pw: Vec<Scalar> = x.ghost_vector().iter().zip(y.ghost_vector()).map(|(a, b)| *a * b).collect();
            ensure(p == pw, || format!("ghost of e{i} e{j}"))?;
        }
    }
    Ok("relations hold; ghost multiplicative on all 576 basis pairs at N = 24".into())
}

fn criterion_5() -> Check {
    for p in [2, 3] {
        let ring = CoeffRing::PLocal(p);
        let ls = idempotent_levels(p, 12);
        let es: Vec<WittElement> = ls.iter().map(|&l| p_local_idempotent(p, l, 12).unwrap()).collect();
        let mut total = WittElement::zero(ring, 12);
        for (i, e) in es.iter().enumerate() {
            ensure(&e.mul(e).unwrap() == e, || format!("p = {p}: e_({})^2", ls[i]))?;
            for (j, f) in es.iter().enumerate().skip(i + 1) {
                ensure(e.mul(f).unwrap().is_zero(), || format!("p = {p}: e_({}) e_({})", ls[i], ls[j]))?;
            }
            total = total.add(e).unwrap();
        }
        ensure(total == WittElement::one(ring, 12), || format!("p = {p}: idempotents do not sum to 1"))?;
    }
    let a = burnside_truncation(6, CoeffRing::PLocal(2)).unwrap();
    let ranks: Vec<usize> = [1, 3, 5].iter().map(|&l| p_typical_component(&a, 2, l, 1).unwrap().0.rank()).collect();
    ensure(ranks == [3, 2, 1], || format!("component ranks {ranks:?}"))?;
    Ok(format!("p in {{2, 3}} at N = 12; ranks {ranks:?} sum to {}", ranks.iter().sum::<usize>()))
}

fn criterion_6() -> Check {
    let a = burnside_truncation(12, Z).unwrap();
    let r = a.check();
    ensure(r.passed(), || format!("Burnside truncation: {r}"))?;
    let mut parts = a.to_parts();
    let key = *parts.v.keys().find(|&&(x, y)| (x, y) == (2, 1)).unwrap();
    parts.v.get_mut(&key).unwrap()[(0, 0)] += Scalar::ONE;
    let bad = ZMackeyTrunc::from_parts(parts).unwrap().check();
    ensure(!bad.passed(), || "perturbed pushforward passes".into())?;
    let mut parts = a.to_parts();
    let s = parts.sigma.get_mut(&3).unwrap();
    *s = Matrix::zeros(s.rows(), s.cols());
    let bad2 = ZMackeyTrunc::from_parts(parts).unwrap().check();
    ensure(!bad2.passed(), || "zero sigma passes".into())?;
    Ok(format!(
        "N = 12 passes including the general double coset identity; controls fail ({} and {} violations)",
        bad.violations.len(),
        bad2.violations.len()
    ))
}

fn criterion_7() -> Check {
    let a = burnside_truncation(12, Z).unwrap();
    for n in 1..=8u64 {
        let lf = level_fixed_points(&a, n).unwrap();
        ensure(lf.functor.check_axioms().unwrap().passed(), || format!("fixed points at {n} fail the axioms"))?;
        let b = burnside_mackey(&FiniteGroup::cyclic(n as usize).unwrap(), Z);
        ensure(classwise_iso(&lf.functor, &b), || format!("fixed points at {n} differ from A(Z/{n})"))?;
    }
    for &l in a.levels() {
        for n in 1..=12 {
            let f = canonical_filtration(&a, n, l).unwrap();
            for k in 2..=12 / n {
                let g = canonical_filtration(&a, n * k, l).unwrap();
                ensure(g.step.image_within(&f.step), || format!("filtration not decreasing at {n}, {l}"))?;
            }
        }
        ensure(canonical_filtration(&a, 12, l).unwrap().cumulative_module().is_zero(), || {
            format!("nonzero intersection at level {l}")
        })?;
    }
    for n in 1..=12u64 {
        let d = (1..=n).filter(|k| n % k == 0).count();
        let q = canonical_filtration(&a, n, 1).unwrap().quotient();
        ensure(q.rank() == d && q.isomorphic(&FpModule::free(Z, d)).unwrap(), || format!("quotient at {n} is {q}"))?;
    }
    Ok("fixed points match A(Z/n) for n <= 8; filtration decreasing, zero intersection, quotient ranks d(n)".into())
}

fn criterion_8() -> Check {
    let mut count = 0;
    for n in [1usize, 2, 3, 4, 6] {
        let g = FiniteGroup::cyclic(n).unwrap();
        let mut functors = vec![burnside_mackey(&g, Z)];
        functors.extend((0..g.num_classes()).map(|c| fixed_point_mackey(&g, c, Z).unwrap()));
        for m in functors {
            let z = inflate_to_zhat(&m, 12).unwrap();
            let r = normal_system_roundtrip(&z).unwrap();
            ensure(r.report.separated && r.report.exact, || format!("Z/{n}: not separated"))?;
            let back = r.reconstructed.ok_or("no reconstruction")?;
            for &l in z.levels() {
                ensure(back.value(l).unwrap().isomorphic(z.value(l).unwrap()).unwrap(), || format!("Z/{n} level {l}"))?;
            }
            count += 1;
        }
    }
    let a = normal_system_roundtrip(&burnside_truncation(12, Z).unwrap()).unwrap();
    ensure(a.report.surjective, || "canonical map of the Burnside truncation is not surjective".into())?;
    Ok(format!("{count} finitely supported truncations reconstruct; surjective for the Burnside truncation at N = 12"))
}

fn gluing_composite(n: u64, l: u64, sigma: &ModuleMap) -> FpModule {
    let g = FiniteGroup::cyclic(n as usize).unwrap();
    let action: Vec<ModuleMap> = (0..n).map(|k| sigma.pow(k)).collect();
    let z = inflate_to_zhat(&invariants_mackey(&g, &action).unwrap(), 12).unwrap();
    match level_fixed_points(&z, l) {
        Ok(lf) => lf.at_level(l).unwrap().clone(),
        Err(_) => FpModule::zero(sigma.ring()),
    }
}

fn criterion_9() -> Check {
    let same = |t: &TateResult, u: &TateResult| t.even.isomorphic(&u.even).unwrap() && t.odd.isomorphic(&u.odd).unwrap();
    for n in 1..=12u64 {
        let t = cyclic_tate(n, &trivial_module(Z)).unwrap();
        let zn = FpModule::cyclic(Z, Scalar::from(n as i64));
        ensure(t.even.isomorphic(&zn).unwrap() && t.odd.is_zero(), || format!("Tate of Z/{n}: {} / {}", t.even, t.odd))?;
        ensure((-3..3).all(|i| t.degree(i).isomorphic(t.degree(i + 2)).unwrap()) && TateResult::PERIOD == 2, || {
            "period".into()
        })?;
        for copies in 1..=2 {
            ensure(cyclic_tate(n, &free_module(Z, n as usize, copies)).unwrap().is_zero(), || format!("free module, n = {n}"))?;
        }
    }
    let mut checked = 0;
    for n in 1..=12u64 {
        let sign = trivial_module(Z).scale(Scalar::from(-1i64));
        let modules = [trivial_module(Z), free_module(Z, n as usize, 1), sign];
        for sigma in modules.iter().filter(|s| s.pow(n).equals(&s.source().identity())) {
            for l in 1..=12u64 {
                let v = gluing_value(n, l, sigma).unwrap();
                let law_ok = if l == n {
                    v.tate().is_none() && !v.is_zero()
                } else if n % l == 0 && is_prime(n / l) {
                    v.tate().is_some_and(|t| same(t, &cyclic_tate(n / l, &sigma.pow(l)).unwrap()))
                } else {
                    v.is_zero()
                };
                ensure(law_ok, || format!("three-case law at n = {n}, l = {l}"))?;
                let composite_level = n % l == 0 && l != n && !is_prime(n / l);
                if composite_level {
                    continue;
                }
                let direct = gluing_composite(n, l, sigma);
                let expected = match v.tate() {
                    Some(t) => t.even.clone(),
                    None if v.is_zero() => FpModule::zero(Z),
                    None => sigma.source().clone(),
                };
                ensure(direct.isomorphic(&expected).unwrap(), || format!("cross-check n = {n}, l = {l}: {direct} vs {expected}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("Tate of Z/n for n <= 12, free modules vanish, period 2; gluing law and {checked} cross-checks"))
}

fn criterion_10() -> Check {
    let pt = [1u64];
    for (deg, want) in [(0u32, 0u64), (1, 1), (2, 2)] {
        for h in derived_burnside_homology(&pt, &pt, deg, 12, Z).unwrap() {
            let expect = match want {
                0 => FpModule::free(Z, 1),
                1 => FpModule::cyclic(Z, Scalar::from(h.level as i64)),
                _ => FpModule::zero(Z),
            };
            ensure(h.value.isomorphic(&expect).unwrap(), || format!("degree {deg}, level {}: {}", h.level, h.value))?;
        }
    }
    let two = [2u64];
    for deg in 0..4 {
        for h in derived_burnside_homology(&two, &two, deg, 12, Z).unwrap() {
            let n = h.level;
            let want = if n % 2 == 0 {
                // Z/2 × Z/2 is two orbits Z/2, each induced from the index-2 subgroup.
                let sub = cyclic_homology(n / 2, &trivial_module(Z), deg).unwrap();
                sub.direct_sum(&sub)
            } else {
                FpModule::zero(Z)
            };
            let direct = if n % 2 == 0 {
                cyclic_homology(n, &permutation_module(Z, &[1, 0, 3, 2]), deg).unwrap()
            } else {
                FpModule::zero(Z)
            };
            ensure(direct.isomorphic(&want).unwrap(), || format!("oracles disagree at level {n}"))?;
            ensure(h.value.isomorphic(&want).unwrap(), || format!("S = Z/2, degree {deg}, level {n}: {} vs {want}", h.value))?;
        }
    }
    Ok("pt x pt gives Z, Z/n, 0 in degrees 0, 1, 2; Z/2 level set matches Shapiro".into())
}

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(p).unwrap()
}

fn criterion_11() -> Check {
    let cases: [(&[&str], &str); 3] = [
        (&["marks", "--group", "cyclic:4"], "marks_cyclic4.txt"),
        (&["zhat", "idem", "-p", "2", "-l", "1", "-N", "5"], "idem_p2_l1_n5.txt"),
        (&["dbh", "-N", "6", "--deg", "1"], "dbh_n6_deg1.txt"),
    ];
    for (args, file) in cases {
        let want = golden(file);
        for _ in 0..3 {
            let out = Command::new(env!("CARGO_BIN_EXE_mackeylab")).args(args).output().unwrap();
            ensure(out.status.success() && out.stdout == want.as_bytes(), || format!("{args:?} differs from {file}"))?;
        }
    }
    ensure(golden("idem_p2_l1_n5.txt") == "1 - 1/3*e3 - 1/5*e5\n", || "idempotent golden".into())?;
    Ok("marks, idem and dbh outputs byte-identical to golden files over repeated runs".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("Burnside ring correctness", criterion_1),
        ("double coset formula and mutation fuzzer", criterion_2),
        ("fixed-point calculus", criterion_3),
        ("completed Burnside arithmetic", criterion_4),
        ("p-typical idempotents", criterion_5),
        ("Z-hat Mackey relations", criterion_6),
        ("level fixed points and filtration", criterion_7),
        ("normal-system roundtrip", criterion_8),
        ("Tate suite and gluing", criterion_9),
        ("derived Burnside homology", criterion_10),
        ("CLI determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let slow = secs > 60.0;
        match r {
            Ok(detail) if !slow => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Ok(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: over 60s budget; {detail} ({secs:.1}s)", i + 1)
            }
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", i + 1)
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Finite G-sets and equivariant maps.
//!
//! Every orbit carries a base point whose stabilizer is exactly the
//! representative of its subgroup class, and every point `x` a transversal
//! element `t` with `t·base = x`. Through these the orbit is identified
//! with the canonical coset space `G/K`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Points in increasing order.
    pub points: Vec<usize>,
    /// Point whose stabilizer is the class representative.
    pub base: usize,
    pub class: usize,
}

#[derive(Clone)]
pub struct GSet {
    group: Group,
    size: usize,
    act: Arc<Vec<usize>>,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
    transversal: Vec<usize>,
}

impl std::fmt::Debug for GSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GSet(size {}, orbits {:?})", self.size, self.orbit_form())
    }
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.act == other.act && *self.group == *other.group
    }
}

impl GSet {
    /// A G-set from its action table `act[g * size + x]`, validated.
    pub fn from_action(group: &Group, size: usize, act: Vec<usize>) -> Result<GSet> {
        let n = group.order();
        if act.len() != n * size || act.iter().any(|&x| x >= size) {
            return Err(Error::Dimension("action table has the wrong shape".into()));
        }
        for x in 0..size {
            if act[x] != x {
                return Err(Error::InvalidGroup("identity does not act trivially".into()));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                for x in 0..size {
                    if act[gh * size + x] != act[g * size + act[h * size + x]] {
                        return Err(Error::InvalidGroup(format!(
                            "action is not associative at ({g}, {h}, {x})"
                        )));
                    }
                }
            }
        }
        Ok(Self::build(group, size, act))
    }

    pub(crate) fn build(group: &Group, size: usize, act: Vec<usize>) -> GSet {
        let n = group.order();
        let mut orbit_of = vec![usize::MAX; size];
        let mut transversal = vec![usize::MAX; size];
        let mut orbits = Vec::new();
        for x0 in 0..size {
            if orbit_of[x0] != usize::MAX {
                continue;
            }
            let stab: Vec<usize> = (0..n).filter(|&g| act[g * size + x0] == x0).collect();
            let (class, w) = group.classify(&Subgroup::from_sorted(stab));
            let base = act[w * size + x0];
            let id = orbits.len();
            let mut points = Vec::new();
            for g in 0..n {
                let x = act[g * size + base];
                if transversal[x] == usize::MAX {
                    transversal[x] = g;
                    orbit_of[x] = id;
                    points.push(x);
                }
            }
            points.sort_unstable();
            orbits.push(Orbit { points, base, class });
        }
        GSet { group: group.clone(), size, act: Arc::new(act), orbits, orbit_of, transversal }
    }

    pub fn empty(group: &Group) -> GSet {
        Self::build(group, 0, vec![])
    }

    pub fn point(group: &Group) -> GSet {
        Self::build(group, 1, vec![0; group.order()])
    }

    /// The canonical orbit `G/K` for the class `c`.
    pub fn orbit(group: &Group, c: usize) -> GSet {
        let t = group.cosets(c);
        Self::build(group, t.size, t.act.clone())
    }

    /// Left cosets of an arbitrary subgroup.
    pub fn cosets(group: &Group, h: &Subgroup) -> GSet {
        let t = group.coset_table(h);
        Self::build(group, t.size, t.act)
    }

    /// `⨿ count · G/K_class`, in increasing class order.
    pub fn from_orbit_form(group: &Group, form: &[(usize, usize)]) -> Result<GSet> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &(c, k) in form {
            if c >= group.num_classes() {
                return Err(Error::InvalidGroup(format!("no subgroup class {c}")));
            }
            *counts.entry(c).or_default() += k;
        }
        let mut s = GSet::empty(group);
        for (c, k) in counts {
            let o = GSet::orbit(group, c);
            for _ in 0..k {
                s = s.union(&o);
            }
        }
        Ok(s)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.size + x]
    }

    pub fn action_table(&self) -> &[usize] {
        &self.act
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    pub fn transversal(&self, x: usize) -> usize {
        self.transversal[x]
    }

    /// Stabilizer class of each orbit, in orbit order.
    pub fn orbit_classes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.class).collect()
    }

    /// Multiset of stabilizer classes as `(class, multiplicity)` in class order.
    pub fn orbit_form(&self) -> Vec<(usize, usize)> {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for o in &self.orbits {
            *m.entry(o.class).or_default() += 1;
        }
        m.into_iter().collect()
    }

    pub fn isomorphic(&self, other: &GSet) -> bool {
        *self.group == *other.group && self.orbit_form() == other.orbit_form()
    }

    /// The coset of the canonical `G/K` corresponding to the point `x`.
    pub fn coset_index(&self, x: usize) -> usize {
        let c = self.orbits[self.orbit_of[x]].class;
        self.group.cosets(c).coset_of[self.transversal[x]]
    }

    /// The point of orbit `o` corresponding to coset `i` of the canonical `G/K`.
    pub fn point_of_coset(&self, o: usize, i: usize) -> usize {
        let orb = &self.orbits[o];
        let g = self.group.cosets(orb.class).reps[i];
        self.act(g, orb.base)
    }

    pub fn union(&self, other: &GSet) -> GSet {
        let n = self.group.order();
        let size = self.size + other.size;
        let mut act = vec![0; n * size];
        for g in 0..n {
            for x in 0..self.size {
                act[g * size + x] = self.act(g, x);
            }
            for y in 0..other.size {
                act[g * size + self.size + y] = self.size + other.act(g, y);
            }
        }
        Self::build(&self.group, size, act)
    }

    /// Cartesian product with the diagonal action; `(a, b)` is point `a·|other| + b`.
    pub fn product(&self, other: &GSet) -> GSet {
        let n = self.group.order();
        let size = self.size * other.size;
        let mut act = vec![0; n * size];
        for g in 0..n {
            for a in 0..self.size {
                for b in 0..other.size {
                    act[g * size + a * other.size + b] = self.act(g, a) * other.size + other.act(g, b);
                }
            }
        }
        Self::build(&self.group, size, act)
    }

    pub fn is_fixed(&self, h: &Subgroup, x: usize) -> bool {
        h.elements().iter().all(|&g| self.act(g, x) == x)
    }

    pub fn fixed_indices(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_fixed(h, x)).collect()
    }

    /// `|S^H|`.
    pub fn fixed_count(&self, h: &Subgroup) -> usize {
        (0..self.size).filter(|&x| self.is_fixed(h, x)).count()
    }

    /// `S^H` for the representative `H` of class `c`, as a set over `W_H`,
    /// together with the original index of each fixed point.
    pub fn fixed_points(&self, c: usize) -> (GSet, Vec<usize>) {
        let rep = &self.group.class(c).rep;
        let pts = self.fixed_indices(rep);
        let pos: BTreeMap<usize, usize> = pts.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let weyl = self.group.weyl(c);
        let w = &weyl.group;
        let k = pts.len();
        let mut act = vec![0; w.order() * k];
        for (wi, &g) in weyl.lift.iter().enumerate() {
            for (i, &x) in pts.iter().enumerate() {
                act[wi * k + i] = pos[&self.act(g, x)];
            }
        }
        (Self::build(w, k, act), pts)
    }

    /// Restriction to a subgroup, viewed as a group through `subgroup_as_group`.
    pub fn restrict(&self, h: &Subgroup) -> (Group, GSet) {
        let (hg, emb) = self.group.subgroup_as_group(h);
        let set = self.restrict_along(&hg, &emb);
        (hg, set)
    }

    /// Restriction along an embedding `emb: H → G`.
    pub fn restrict_along(&self, h: &Group, emb: &[usize]) -> GSet {
        let mut act = vec![0; h.order() * self.size];
        for (i, &g) in emb.iter().enumerate() {
            for x in 0..self.size {
                act[i * self.size + x] = self.act(g, x);
            }
        }
        Self::build(h, self.size, act)
    }

    /// `(G × T)/H` for an `H`-set `T` and embedding `emb: H → G`.
    ///
    /// Returns the induced set and the class `[g, t]` of each pair as
    /// `pair_index[g * |T| + t]`.
    pub fn induce(g: &Group, emb: &[usize], t: &GSet) -> (GSet, Vec<usize>) {
        let n = g.order();
        let tn = t.size();
        let mut class = vec![usize::MAX; n * tn];
        let mut count = 0;
        for a in 0..n {
            for x in 0..tn {
                if class[a * tn + x] != usize::MAX {
                    continue;
                }
                for (hi, &h) in emb.iter().enumerate() {
                    // (a, x) ~ (a·h, h⁻¹·x)
                    let hinv = t.group().inv(hi);
                    class[g.mul(a, h) * tn + t.act(hinv, x)] = count;
                }
                count += 1;
            }
        }
        let mut act = vec![0; n * count];
        let mut rep = vec![0; count];
        for a in (0..n).rev() {
            for x in (0..tn).rev() {
                rep[class[a * tn + x]] = a * tn + x;
            }
        }
        for h in 0..n {
            for (k, &r) in rep.iter().enumerate() {
                let (a, x) = (r / tn, r % tn);
                act[h * count + k] = class[g.mul(h, a) * tn + x];
            }
        }
        (Self::build(g, count, act), class)
    }

    /// A `W`-set regarded as a `G`-set through `quotient: G → W`.
    pub fn inflate(&self, g: &Group, quotient: &[usize]) -> GSet {
        let mut act = vec![0; g.order() * self.size];
        for (x, &w) in quotient.iter().enumerate() {
            for p in 0..self.size {
                act[x * self.size + p] = self.act(w, p);
            }
        }
        Self::build(g, self.size, act)
    }

    /// The same set over an isomorphic group, through `iso: self.group → target`.
    pub fn transport(&self, target: &Group, iso: &[usize]) -> GSet {
        let mut act = vec![0; target.order() * self.size];
        for (g, &h) in iso.iter().enumerate() {
            for x in 0..self.size {
                act[h * self.size + x] = self.act(g, x);
            }
        }
        Self::build(target, self.size, act)
    }

    /// The defining action of a permutation group.
    pub fn natural(group: &Group) -> Option<GSet> {
        let (degree, perms) = group.permutations()?;
        let mut act = vec![0; group.order() * degree];
        for (i, p) in perms.iter().enumerate() {
            act[i * degree..(i + 1) * degree].copy_from_slice(p);
        }
        Some(Self::build(group, degree, act))
    }

    /// Number of equivariant maps `self → other`.
    pub fn hom_count(&self, other: &GSet) -> u128 {
        self.orbits
            .iter()
            .map(|o| other.fixed_count(&self.group.class(o.class).rep) as u128)
            .product()
    }
}

/// An equivariant map of G-sets.
#[derive(Clone, Debug)]
pub struct GMap {
    source: GSet,
    target: GSet,
    graph: Vec<usize>,
}

impl GMap {
    pub fn new(source: GSet, target: GSet, graph: Vec<usize>) -> Result<GMap> {
        if *source.group != *target.group {
            return Err(Error::InvalidGroup("maps must stay over one group".into()));
        }
        if graph.len() != source.size || graph.iter().any(|&y| y >= target.size) {
            return Err(Error::Dimension("graph has the wrong shape".into()));
        }
        for g in 0..source.group.order() {
            for x in 0..source.size {
                if graph[source.act(g, x)] != target.act(g, graph[x]) {
                    return Err(Error::InvalidGroup(format!("map is not equivariant at ({g}, {x})")));
                }
            }
        }
        Ok(GMap { source, target, graph })
    }

    pub(crate) fn unchecked(source: GSet, target: GSet, graph: Vec<usize>) -> GMap {
        GMap { source, target, graph }
    }

    pub fn identity(s: &GSet) -> GMap {
        GMap { source: s.clone(), target: s.clone(), graph: (0..s.size).collect() }
    }

    /// The unique map to the one-point set.
    pub fn to_point(s: &GSet) -> GMap {
        GMap { source: s.clone(), target: GSet::point(&s.group), graph: vec![0; s.size] }
    }

    /// The map `G/K_src → G/K_dst` sending the base coset to coset `y`.
    pub fn between_orbits(group: &Group, src: usize, dst: usize, y: usize) -> GMap {
        let s = GSet::orbit(group, src);
        let t = GSet::orbit(group, dst);
        let cs = group.cosets(src);
        let graph = cs.reps.iter().map(|&g| t.act(g, y)).collect();
        GMap { source: s, target: t, graph }
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.graph[x]
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GMap) -> GMap {
        GMap {
            source: self.source.clone(),
            target: other.target.clone(),
            graph: self.graph.iter().map(|&x| other.graph[x]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.size];
        self.graph.len() == self.target.size && self.graph.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }
}

/// `S1 ×_S S2` with its two projections; pairs are listed lexicographically.
pub fn fibered_product(f: &GMap, g: &GMap) -> Result<(GSet, GMap, GMap)> {
    if f.target != g.target {
        return Err(Error::InvalidGroup("fibered product needs a common target".into()));
    }
    let group = f.source.group.clone();
    let mut pairs = Vec::new();
    let mut index = BTreeMap::new();
    for a in 0..f.source.size {
        for b in 0..g.source.size {
            if f.graph[a] == g.graph[b] {
                index.insert((a, b), pairs.len());
                pairs.push((a, b));
            }
        }
    }
    let n = group.order();
    let size = pairs.len();
    let mut act = vec![0; n * size];
    for h in 0..n {
        for (k, &(a, b)) in pairs.iter().enumerate() {
            act[h * size + k] = index[&(f.source.act(h, a), g.source.act(h, b))];
        }
    }
    let p = GSet::build(&group, size, act);
    let p1 = GMap::unchecked(p.clone(), f.source.clone(), pairs.iter().map(|x| x.0).collect());
    let p2 = GMap::unchecked(p.clone(), g.source.clone(), pairs.iter().map(|x| x.1).collect());
    Ok((p, p1, p2))
}

/// One component `G/H_s` of `(G/H') ×_{G/H} (G/H'')`.
#[derive(Clone, Debug)]
pub struct DoubleCosetComponent {
    /// Minimal element of the double coset `H' s H''`.
    pub witness: usize,
    /// `H_s = H' ∩ s H'' s⁻¹`.
    pub stabilizer: Subgroup,
    pub class: usize,
    /// `gH_s ↦ gH'`.
    pub left: GMap,
    /// `gH_s ↦ g s H''`.
    pub right: GMap,
}

/// Decomposition of `(G/H') ×_{G/H} (G/H'')` indexed by `H' \ H / H''`.
pub fn double_cosets(
    group: &Group,
    hp: &Subgroup,
    hpp: &Subgroup,
    h: &Subgroup,
) -> Result<Vec<DoubleCosetComponent>> {
    if !hp.is_subset(h) || !hpp.is_subset(h) {
        return Err(Error::Precondition("double cosets need H', H'' inside H".into()));
    }
    let mut seen = vec![false; group.order()];
    let left_set = GSet::cosets(group, hp);
    let right_set = GSet::cosets(group, hpp);
    let lt = group.coset_table(hp);
    let rt = group.coset_table(hpp);
    let mut out = Vec::new();
    for &s in h.elements() {
        if seen[s] {
            continue;
        }
        for &a in hp.elements() {
            for &b in hpp.elements() {
                seen[group.mul(group.mul(a, s), b)] = true;
            }
        }
        let conj = group.conjugate(s, hpp);
        let stab = hp.intersection(&conj);
        let comp = GSet::cosets(group, &stab);
        let ct = group.coset_table(&stab);
        let left = ct.reps.iter().map(|&g| lt.coset_of[g]).collect();
        let right = ct.reps.iter().map(|&g| rt.coset_of[group.mul(g, s)]).collect();
        let class = group.class_of(&stab);
        out.push(DoubleCosetComponent {
            witness: s,
            left: GMap::unchecked(comp.clone(), left_set.clone(), left),
            right: GMap::unchecked(comp, right_set.clone(), right),
            stabilizer: stab,
            class,
        });
    }
    Ok(out)
}

/// Convenience for tests and callers that only need a group handle.
pub fn regular(group: &Group) -> GSet {
    GSet::orbit(group, 0)
}

pub fn trivial_action(group: &Group, size: usize) -> GSet {
    let act = (0..group.order() * size).map(|k| k % size.max(1)).collect();
    GSet::build(group, size, act)
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn f<T: Send + Sync>() {}
    f::<GSet>();
    f::<FiniteGroup>();
}

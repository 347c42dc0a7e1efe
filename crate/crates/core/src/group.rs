//! Finite groups given by multiplication tables, and their subgroup lattices.
//!
//! Elements are `0..order` with `0` the identity. The lattice (all
//! subgroups, conjugacy classes, normalizers, Weyl groups) is computed on
//! first use and cached on the group.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub type Group = Arc<FiniteGroup>;

pub const DEFAULT_MAX_ORDER: usize = 96;

/// Size bound for enumerated groups; `MACKEYLAB_MAX_GROUP_ORDER` overrides it.
pub fn max_order() -> usize {
    std::env::var("MACKEYLAB_MAX_GROUP_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

/// A subgroup as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup(Vec<usize>);

impl Subgroup {
    pub fn from_sorted(elems: Vec<usize>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        Subgroup(elems)
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.0.iter().all(|&g| other.contains(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup(self.0.iter().copied().filter(|&g| other.contains(g)).collect())
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub index: usize,
    pub rep: Subgroup,
    /// Lattice indices of all conjugates of `rep`.
    pub members: Vec<usize>,
    pub normalizer: Subgroup,
    pub centralizer: Subgroup,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.rep.order()
    }

    pub fn weyl_order(&self) -> usize {
        self.normalizer.order() / self.rep.order()
    }
}

/// `W = N/H` with its quotient map.
#[derive(Debug)]
pub struct WeylGroup {
    pub group: Group,
    /// Image in `W` of each element of `G`, or `None` outside the normalizer.
    pub quotient: Vec<Option<usize>>,
    /// Minimal element of each coset.
    pub lift: Vec<usize>,
}

/// The canonical transitive G-set `G/H` for a class representative `H`.
#[derive(Debug)]
pub struct CosetTable {
    pub size: usize,
    /// `act[g * size + x]`.
    pub act: Vec<usize>,
    /// Minimal element of each coset; coset 0 is `H` itself.
    pub reps: Vec<usize>,
    pub coset_of: Vec<usize>,
}

impl CosetTable {
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.size + x]
    }
}

#[derive(Debug)]
struct Lattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    class_of: Vec<usize>,
    /// `witness[s]` conjugates subgroup `s` onto its class representative.
    witness: Vec<usize>,
    classes: Vec<SubgroupClass>,
    weyl: Vec<OnceLock<WeylGroup>>,
    cosets: Vec<OnceLock<Arc<CosetTable>>>,
}

pub struct FiniteGroup {
    name: String,
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    gens: Vec<usize>,
    perms: Option<(usize, Vec<Vec<usize>>)>,
    lattice: OnceLock<Lattice>,
    pub(crate) orbit_category: OnceLock<crate::mackey::OrbitCategory>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.n)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

fn check_bound(order: usize) -> Result<()> {
    let bound = max_order();
    if order > bound {
        return Err(Error::TooLarge { order, bound });
    }
    Ok(())
}

impl FiniteGroup {
    fn assemble(name: String, n: usize, mul: Vec<usize>, gens: Vec<usize>) -> Group {
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("inverse exists");
        }
        Arc::new(FiniteGroup {
            name,
            n,
            mul,
            inv,
            gens,
            perms: None,
            lattice: OnceLock::new(),
            orbit_category: OnceLock::new(),
        })
    }

    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        check_bound(n)?;
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        Ok(Self::assemble(format!("Z/{n}"), n, mul, gens))
    }

    /// A group from a full multiplication table `table[a][b] = a·b`.
    ///
    /// The identity is relabelled to `0` if necessary.
    pub fn from_table(name: &str, table: &[Vec<usize>]) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        check_bound(n)?;
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not a total n×n table on 0..n".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[mul[a * n + b]] = true;
                col[mul[b * n + a]] = true;
            }
            if row.iter().any(|x| !x) || col.iter().any(|x| !x) {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::NonAssociative(relabel(a), relabel(b), relabel(c)));
                    }
                }
            }
        }
        let g = Self::assemble(name.to_string(), n, mul, vec![]);
        let gens = g.generating_set(&(0..n).collect::<Vec<_>>());
        Ok(Self::assemble(name.to_string(), n, g.mul.clone(), gens))
    }

    /// The closure of permutations of `0..degree`; `(g·h)(x) = g(h(x))`.
    pub fn from_permutations(name: &str, degree: usize, gens: &[Vec<usize>]) -> Result<Group> {
        for p in gens {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup(format!("{p:?} is not a permutation of 0..{degree}")));
            }
        }
        let bound = max_order();
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let prod: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() == bound {
                        return Err(Error::TooLarge { order: elems.len() + 1, bound });
                    }
                    index.insert(prod.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let n = elems.len();
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = elems[b].iter().map(|&x| elems[a][x]).collect();
                mul[a * n + b] = index[&prod];
            }
        }
        let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).filter(|&i| i != 0).collect();
        let mut g = Self::assemble(name.to_string(), n, mul, gen_idx);
        Arc::get_mut(&mut g).expect("fresh group").perms = Some((degree, elems));
        Ok(g)
    }

    pub fn symmetric3() -> Group {
        Self::from_permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    /// Dihedral group of order `2m` acting on an m-gon.
    pub fn dihedral(m: usize) -> Result<Group> {
        if m < 2 {
            return Err(Error::InvalidGroup("dihedral group needs m >= 2".into()));
        }
        let rot: Vec<usize> = (0..m).map(|x| (x + 1) % m).collect();
        let refl: Vec<usize> = (0..m).map(|x| (m - x) % m).collect();
        Self::from_permutations(&format!("D{}", 2 * m), m, &[rot, refl])
    }

    pub fn klein4() -> Group {
        Self::from_permutations("V4", 4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).expect("V4")
    }

    pub fn quaternion8() -> Group {
        // ±1, ±i, ±j, ±k encoded as (sign, unit) with unit 0..4 = 1, i, j, k
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let code = |neg: bool, u: usize| u + if neg { 4 } else { 0 };
        let table: Vec<Vec<usize>> = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (neg, u) = unit_mul(a % 4, b % 4);
                        code(neg ^ (a >= 4) ^ (b >= 4), u)
                    })
                    .collect()
            })
            .collect();
        Self::from_table("Q8", &table).expect("Q8")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv[g])
    }

    /// Degree and element permutations, for groups built from permutations.
    pub fn permutations(&self) -> Option<(usize, &[Vec<usize>])> {
        self.perms.as_ref().map(|(d, p)| (*d, p.as_slice()))
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Subgroup(elems)
    }

    /// A small generating set of the subgroup spanned by `elems`, chosen greedily.
    pub fn generating_set(&self, elems: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.generate(&[]);
        for &g in elems {
            if !span.contains(g) {
                gens.push(g);
                span = self.generate(&gens);
            }
        }
        gens
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup((0..self.n).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup(vec![0])
    }

    pub fn conjugate(&self, g: usize, s: &Subgroup) -> Subgroup {
        let mut v: Vec<usize> = s.0.iter().map(|&x| self.conj(g, x)).collect();
        v.sort_unstable();
        Subgroup(v)
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let s: BTreeSet<usize> = elems.iter().copied().collect();
        s.contains(&0) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.mul(a, self.inv[b]))))
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        (0..self.n).all(|g| s.0.iter().all(|&x| s.contains(self.conj(g, x))))
    }

    fn lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| self.build_lattice())
    }

    fn build_lattice(&self) -> Lattice {
        let n = self.n;
        let mut found: BTreeSet<Subgroup> = BTreeSet::new();
        let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
        for g in 0..n {
            let c = self.generate(&[g]);
            if found.insert(c.clone()) {
                cyclic.push((g, c));
            }
        }
        let mut frontier: Vec<Subgroup> = found.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for (g, c) in &cyclic {
                    if c.is_subset(s) {
                        continue;
                    }
                    let mut gens = s.0.clone();
                    gens.push(*g);
                    let j = self.generate(&gens);
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut subgroups: Vec<Subgroup> = found.into_iter().collect();
        subgroups.sort_by(|a, b| (a.order(), &a.0).cmp(&(b.order(), &b.0)));
        let index: HashMap<Subgroup, usize> =
            subgroups.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

        let m = subgroups.len();
        let mut class_of = vec![usize::MAX; m];
        let mut witness = vec![0; m];
        let mut raw: Vec<(Subgroup, Vec<usize>)> = Vec::new();
        for s in 0..m {
            if class_of[s] != usize::MAX {
                continue;
            }
            // first conjugator reaching each member from subgroups[s]
            let mut reach: Vec<(usize, usize)> = Vec::new();
            for g in 0..n {
                let t = index[&self.conjugate(g, &subgroups[s])];
                if !reach.iter().any(|&(u, _)| u == t) {
                    reach.push((t, g));
                }
            }
            let &(rep_idx, h) = reach.iter().min_by_key(|&&(t, _)| t).unwrap();
            let cid = raw.len();
            for &(t, g) in &reach {
                class_of[t] = cid;
                witness[t] = self.mul(h, self.inv[g]);
            }
            let mut members: Vec<usize> = reach.iter().map(|&(t, _)| t).collect();
            members.sort_unstable();
            raw.push((subgroups[rep_idx].clone(), members));
        }
        // classes sorted by (order, minimal representative)
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| (raw[a].0.order(), &raw[a].0 .0).cmp(&(raw[b].0.order(), &raw[b].0 .0)));
        let mut renumber = vec![0; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        for c in class_of.iter_mut() {
            *c = renumber[*c];
        }
        let classes: Vec<SubgroupClass> = order
            .iter()
            .enumerate()
            .map(|(i, &old)| {
                let (rep, members) = raw[old].clone();
                let normalizer =
                    Subgroup((0..n).filter(|&g| self.conjugate(g, &rep) == rep).collect());
                let centralizer = Subgroup(
                    (0..n).filter(|&g| rep.0.iter().all(|&x| self.conj(g, x) == x)).collect(),
                );
                SubgroupClass { index: i, rep, members, normalizer, centralizer }
            })
            .collect();
        let k = classes.len();
        Lattice {
            subgroups,
            index,
            class_of,
            witness,
            classes,
            weyl: (0..k).map(|_| OnceLock::new()).collect(),
            cosets: (0..k).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.lattice().subgroups
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.lattice().classes
    }

    pub fn class(&self, c: usize) -> &SubgroupClass {
        &self.lattice().classes[c]
    }

    pub fn num_classes(&self) -> usize {
        self.lattice().classes.len()
    }

    /// Class index and a witness `w` with `w·s·w⁻¹ = rep`.
    pub fn classify(&self, s: &Subgroup) -> (usize, usize) {
        let l = self.lattice();
        let i = *l.index.get(s).expect("not a subgroup of this group");
        (l.class_of[i], l.witness[i])
    }

    pub fn class_of(&self, s: &Subgroup) -> usize {
        self.classify(s).0
    }

    /// Class index of a subgroup given by an arbitrary element list.
    pub fn class_index_of(&self, elems: &[usize]) -> Result<usize> {
        let mut v = elems.to_vec();
        v.sort_unstable();
        v.dedup();
        let s = Subgroup(v);
        match self.lattice().index.get(&s) {
            Some(&i) => Ok(self.lattice().class_of[i]),
            None => Err(Error::InvalidGroup(format!("{elems:?} is not a subgroup"))),
        }
    }

    pub fn class_of_whole(&self) -> usize {
        self.num_classes() - 1
    }

    pub fn weyl(&self, c: usize) -> &WeylGroup {
        self.lattice().weyl[c].get_or_init(|| {
            let cls = &self.lattice().classes[c];
            let (group, quotient_n, lift) = self.quotient_of(&cls.normalizer, &cls.rep);
            let mut quotient = vec![None; self.n];
            for (g, w) in quotient_n {
                quotient[g] = Some(w);
            }
            WeylGroup { group, quotient, lift }
        })
    }

    /// `big/small` for `small` normal in `big`; returns the group, the
    /// quotient map on elements of `big`, and coset minima.
    fn quotient_of(&self, big: &Subgroup, small: &Subgroup) -> (Group, Vec<(usize, usize)>, Vec<usize>) {
        let mut coset_id: HashMap<usize, usize> = HashMap::new();
        let mut lift = Vec::new();
        for &g in &big.0 {
            if coset_id.contains_key(&g) {
                continue;
            }
            let id = lift.len();
            lift.push(g);
            for &h in &small.0 {
                coset_id.insert(self.mul(g, h), id);
            }
        }
        let k = lift.len();
        let mut mul = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                mul[a * k + b] = coset_id[&self.mul(lift[a], lift[b])];
            }
        }
        let g = Self::assemble(format!("{}/{}", self.name, small.order()), k, mul, vec![]);
        let gens = g.generating_set(&(0..k).collect::<Vec<_>>());
        let g = Self::assemble(g.name.clone(), k, g.mul.clone(), gens);
        let q = big.0.iter().map(|&x| (x, coset_id[&x])).collect();
        (g, q, lift)
    }

    /// `G/N` for a normal subgroup, with the quotient map on all of `G`.
    pub fn quotient(&self, normal: &Subgroup) -> Result<(Group, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal(format!("{:?}", normal.0)));
        }
        let c = self.class_of(normal);
        let w = self.weyl(c);
        Ok((w.group.clone(), w.quotient.iter().map(|x| x.unwrap()).collect()))
    }

    /// A subgroup as a group in its own right, with the embedding of its elements.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> (Group, Vec<usize>) {
        let pos: HashMap<usize, usize> = s.0.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let k = s.order();
        let mut mul = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                mul[a * k + b] = pos[&self.mul(s.0[a], s.0[b])];
            }
        }
        let g = Self::assemble(format!("{}<{}>", self.name, k), k, mul, vec![]);
        let gens = g.generating_set(&(0..k).collect::<Vec<_>>());
        (Self::assemble(g.name.clone(), k, g.mul.clone(), gens), s.0.clone())
    }

    pub fn cosets(&self, c: usize) -> Arc<CosetTable> {
        self.lattice().cosets[c]
            .get_or_init(|| Arc::new(self.coset_table(&self.lattice().classes[c].rep)))
            .clone()
    }

    /// Left cosets `gH` ordered by minimal element, with the left action.
    pub fn coset_table(&self, h: &Subgroup) -> CosetTable {
        let mut coset_of = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &x in &h.0 {
                coset_of[self.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        let size = reps.len();
        let mut act = vec![0; self.n * size];
        for g in 0..self.n {
            for (i, &r) in reps.iter().enumerate() {
                act[g * size + i] = coset_of[self.mul(g, r)];
            }
        }
        CosetTable { size, act, reps, coset_of }
    }

    pub fn class_label(&self, c: usize) -> String {
        let cls = self.class(c);
        if cls.order() == 1 {
            "e".into()
        } else if cls.order() == self.n {
            "G".into()
        } else {
            let cyc = (0..self.n).any(|g| self.element_order(g) == cls.order() && cls.rep.contains(g));
            if cyc {
                format!("C{}", cls.order())
            } else {
                format!("H{}", cls.order())
            }
        }
    }

    /// Distinct labels for all classes, suffixed when orders collide.
    pub fn class_labels(&self) -> Vec<String> {
        let base: Vec<String> = (0..self.num_classes()).map(|c| self.class_label(c)).collect();
        let mut out = Vec::new();
        for (i, b) in base.iter().enumerate() {
            let same: Vec<usize> = (0..base.len()).filter(|&j| &base[j] == b).collect();
            if same.len() == 1 {
                out.push(b.clone());
            } else {
                let k = same.iter().position(|&j| j == i).unwrap();
                out.push(format!("{b}{}", (b'a' + k as u8) as char));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force subgroup count by closure of all element subsets.
    fn brute_subgroups(g: &FiniteGroup) -> usize {
        let n = g.order();
        assert!(n <= 12);
        (0u32..1 << n)
            .filter(|mask| {
                let elems: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                !elems.is_empty() && g.is_subgroup(&elems)
            })
            .count()
    }

    #[test]
    fn cyclic_group_table() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(g.mul(3, 2), 1);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.num_classes(), 3);
    }

    #[test]
    fn permutation_closure() {
        assert_eq!(FiniteGroup::symmetric3().order(), 6);
        let t = FiniteGroup::from_permutations("triv", 3, &[]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.num_classes(), 1);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
        assert_eq!(FiniteGroup::quaternion8().order(), 8);
    }

    #[test]
    fn class_counts_match_brute_force() {
        let groups = [
            FiniteGroup::cyclic(4).unwrap(),
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::symmetric3(),
            FiniteGroup::klein4(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::quaternion8(),
        ];
        for g in &groups {
            assert_eq!(g.subgroups().len(), brute_subgroups(g), "{}", g.name());
            let total: usize = g.classes().iter().map(|c| c.members.len()).sum();
            assert_eq!(total, g.subgroups().len());
        }
        assert_eq!(FiniteGroup::symmetric3().num_classes(), 4);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().num_classes(), 8);
        assert_eq!(FiniteGroup::quaternion8().num_classes(), 6);
    }

    #[test]
    fn witnesses_and_weyl_groups() {
        let g = FiniteGroup::symmetric3();
        for s in g.subgroups() {
            let (c, w) = g.classify(s);
            assert_eq!(g.conjugate(w, s), g.class(c).rep);
        }
        for c in g.classes() {
            assert!(c.rep.is_subset(&c.normalizer));
            assert_eq!(g.weyl(c.index).group.order(), c.weyl_order());
        }
        let c2 = g.class(1);
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.weyl_order(), 1);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let mut t: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        t[1][1] = 0;
        t[1][2] = 2;
        assert!(FiniteGroup::from_table("bad", &t).is_err());
    }

    #[test]
    fn size_bound_is_enforced() {
        let gens = vec![(0..5).map(|x| (x + 1) % 5).collect::<Vec<_>>(), vec![1, 0, 2, 3, 4]];
        assert!(matches!(
            FiniteGroup::from_permutations("S5", 5, &gens),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn quotient_by_normal_subgroup() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let c2 = g.class(1).rep.clone();
        let (w, q) = g.quotient(&c2).unwrap();
        assert_eq!(w.order(), 2);
        assert_eq!(q[1], q[3]);
        let s3 = FiniteGroup::symmetric3();
        assert!(s3.quotient(&s3.class(1).rep).is_err());
    }
}

//! The span category of finite G-sets and the Burnside ring.
//!
//! A basis span `S1 ← G/K → S2` is stored as a [`SpanKey`]: the class of
//! `K` and the images of the base coset in `S1` and `S2`. Two keys give
//! isomorphic spans exactly when the pairs of images differ by the
//! normalizer of `K`, so each key stores the minimal such pair.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::gset::{fibered_product, GMap, GSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpanKey {
    pub class: usize,
    pub left: usize,
    pub right: usize,
}

impl SpanKey {
    /// The canonical key for the span with middle `G/K_c` and base images `(l, r)`.
    pub fn canonical(group: &Group, s1: &GSet, s2: &GSet, class: usize, l: usize, r: usize) -> SpanKey {
        let norm = &group.class(class).normalizer;
        let (left, right) = norm
            .elements()
            .iter()
            .map(|&n| (s1.act(n, l), s2.act(n, r)))
            .min()
            .expect("normalizer contains the identity");
        SpanKey { class, left, right }
    }

    /// The middle orbit and both legs.
    pub fn legs(&self, group: &Group, s1: &GSet, s2: &GSet) -> (GSet, GMap, GMap) {
        let mid = GSet::orbit(group, self.class);
        let reps = &group.cosets(self.class).reps;
        let l = reps.iter().map(|&g| s1.act(g, self.left)).collect();
        let r = reps.iter().map(|&g| s2.act(g, self.right)).collect();
        (
            mid.clone(),
            GMap::unchecked(mid.clone(), s1.clone(), l),
            GMap::unchecked(mid, s2.clone(), r),
        )
    }
}

/// Decomposes a span `S1 ← U → S2` into basis keys with multiplicities.
pub fn span_keys(l: &GMap, r: &GMap) -> BTreeMap<SpanKey, i64> {
    let u = l.source();
    let group = u.group();
    let mut out = BTreeMap::new();
    for o in u.orbits() {
        let k = SpanKey::canonical(group, l.target(), r.target(), o.class, l.apply(o.base), r.apply(o.base));
        *out.entry(k).or_insert(0) += 1;
    }
    out
}

/// Composite of basis spans `a: S1 → S2` and `b: S2 → S3` by fibered product.
pub fn compose_keys(
    group: &Group,
    s1: &GSet,
    s2: &GSet,
    s3: &GSet,
    a: &SpanKey,
    b: &SpanKey,
) -> BTreeMap<SpanKey, i64> {
    let (_, l1, r1) = a.legs(group, s1, s2);
    let (_, l2, r2) = b.legs(group, s2, s3);
    let (_, p1, p2) = fibered_product(&r1, &l2).expect("common middle object");
    span_keys(&p1.then(&l1), &p2.then(&r2))
}

/// Basis of `B^G(S1, S2)`: one key per class `K` and `N_K`-orbit on `(S1 × S2)^K`.
pub fn hom_basis(s1: &GSet, s2: &GSet) -> Vec<SpanKey> {
    let group = s1.group();
    let mut keys = Vec::new();
    for c in 0..group.num_classes() {
        let rep = &group.class(c).rep;
        let f1 = s1.fixed_indices(rep);
        let f2 = s2.fixed_indices(rep);
        for &l in &f1 {
            for &r in &f2 {
                let k = SpanKey::canonical(group, s1, s2, c, l, r);
                if k.left == l && k.right == r {
                    keys.push(k);
                }
            }
        }
    }
    keys.sort();
    keys
}

/// An element of `B^G(S1, S2)` with integer coefficients.
#[derive(Clone, Debug)]
pub struct BurnsideElement {
    source: GSet,
    target: GSet,
    coeffs: BTreeMap<SpanKey, i64>,
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.coeffs == other.coeffs
    }
}

impl BurnsideElement {
    pub fn zero(source: &GSet, target: &GSet) -> Self {
        BurnsideElement { source: source.clone(), target: target.clone(), coeffs: BTreeMap::new() }
    }

    pub fn basis(source: &GSet, target: &GSet, key: SpanKey) -> Self {
        let mut e = Self::zero(source, target);
        e.coeffs.insert(key, 1);
        e
    }

    /// The span `S ←id− S −id→ S`.
    pub fn identity(s: &GSet) -> Self {
        let id = GMap::identity(s);
        Self::from_span(&id, &id)
    }

    pub fn from_span(l: &GMap, r: &GMap) -> Self {
        BurnsideElement {
            source: l.target().clone(),
            target: r.target().clone(),
            coeffs: span_keys(l, r),
        }
    }

    /// An element of `A^G = B^G(pt, pt)` from `(class, coefficient)` pairs.
    pub fn from_classes(group: &Group, terms: &[(usize, i64)]) -> Result<Self> {
        let pt = GSet::point(group);
        let mut e = Self::zero(&pt, &pt);
        for &(c, k) in terms {
            if c >= group.num_classes() {
                return Err(Error::InvalidGroup(format!("no subgroup class {c}")));
            }
            e.add_term(SpanKey { class: c, left: 0, right: 0 }, k);
        }
        Ok(e)
    }

    /// The class of the G-set `S` in `A^G`.
    pub fn of_gset(s: &GSet) -> Self {
        let terms: Vec<(usize, i64)> = s.orbit_form().iter().map(|&(c, k)| (c, k as i64)).collect();
        Self::from_classes(s.group(), &terms).expect("classes of the same group")
    }

    pub fn group(&self) -> &Group {
        self.source.group()
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn coeffs(&self) -> &BTreeMap<SpanKey, i64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, k: SpanKey, c: i64) {
        let e = self.coeffs.entry(k).or_insert(0);
        *e = e.checked_add(c).expect("Burnside coefficient overflow");
        if *e == 0 {
            self.coeffs.remove(&k);
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Precondition("elements live in different hom groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, *c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(&self.source, &self.target);
        for (k, x) in &self.coeffs {
            out.add_term(*k, x.checked_mul(c).expect("Burnside coefficient overflow"));
        }
        out
    }

    /// `self: S1 → S2` followed by `other: S2 → S3`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.target != other.source {
            return Err(Error::Precondition("span composition needs matching middle object".into()));
        }
        let group = self.group().clone();
        let mut out = Self::zero(&self.source, &other.target);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let comp = compose_keys(&group, &self.source, &self.target, &other.target, ka, kb);
                for (k, m) in comp {
                    out.add_term(k, ca * cb * m);
                }
            }
        }
        Ok(out)
    }

    /// Coefficients on subgroup classes, for elements of `A^G`.
    pub fn class_coeffs(&self) -> Vec<i64> {
        let mut v = vec![0; self.group().num_classes()];
        for (k, c) in &self.coeffs {
            v[k.class] += c;
        }
        v
    }

    pub fn is_ring_element(&self) -> bool {
        self.source.size() == 1 && self.target.size() == 1
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = self.group();
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let labels = group.class_labels();
        let mut first = true;
        for (k, c) in &self.coeffs {
            let name = if self.is_ring_element() {
                format!("[G/{}]", labels[k.class])
            } else {
                format!("[G/{} ; {} , {}]", labels[k.class], k.left, k.right)
            };
            let sign = if *c < 0 { "-" } else { "+" };
            let mag = c.unsigned_abs();
            let term = if mag == 1 { name } else { format!("{mag}{name}") };
            if first {
                write!(f, "{}{}", if *c < 0 { "-" } else { "" }, term)?;
            } else {
                write!(f, " {sign} {term}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// `[G/H]·[G/K] = Σ c_{H,K}^L [G/L]`, computed by orbit counting on products.
pub fn burnside_product(a: &BurnsideElement, b: &BurnsideElement) -> Result<BurnsideElement> {
    if !a.is_ring_element() || !b.is_ring_element() || **a.group() != **b.group() {
        return Err(Error::Precondition("Burnside product needs two elements of one A^G".into()));
    }
    let group = a.group();
    let consts = structure_constants(group);
    let (x, y) = (a.class_coeffs(), b.class_coeffs());
    let k = group.num_classes();
    let mut out = vec![0i64; k];
    for h in 0..k {
        for j in 0..k {
            if x[h] == 0 || y[j] == 0 {
                continue;
            }
            for l in 0..k {
                out[l] += x[h] * y[j] * consts[h][j][l];
            }
        }
    }
    let terms: Vec<(usize, i64)> = out.into_iter().enumerate().collect();
    BurnsideElement::from_classes(group, &terms)
}

/// `c[h][k][l]` with `[G/H][G/K] = Σ_l c[h][k][l] [G/L]`.
pub fn structure_constants(group: &Group) -> Vec<Vec<Vec<i64>>> {
    let k = group.num_classes();
    let orbits: Vec<GSet> = (0..k).map(|c| GSet::orbit(group, c)).collect();
    let mut out = vec![vec![vec![0; k]; k]; k];
    for h in 0..k {
        for j in h..k {
            for (l, m) in orbits[h].product(&orbits[j]).orbit_form() {
                out[h][j][l] = m as i64;
                out[j][h][l] = m as i64;
            }
        }
    }
    out
}

/// Marks `|(G/K)^H|`: row `K`, column `H`, both in class order.
#[derive(Clone, Debug, Serialize)]
pub struct MarksTable {
    pub group: String,
    pub classes: Vec<String>,
    pub marks: Vec<Vec<u64>>,
}

pub fn table_of_marks(group: &Group) -> MarksTable {
    let k = group.num_classes();
    let marks = (0..k)
        .map(|row| {
            let o = GSet::orbit(group, row);
            (0..k).map(|col| o.fixed_count(&group.class(col).rep) as u64).collect()
        })
        .collect();
    MarksTable { group: group.name().to_string(), classes: group.class_labels(), marks }
}

impl fmt::Display for MarksTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.classes.iter().map(|c| format!("G/{c}")).collect();
        let w0 = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let width = self
            .classes
            .iter()
            .map(|c| c.len())
            .chain(self.marks.iter().flatten().map(|m| m.to_string().len()))
            .max()
            .unwrap_or(1);
        let header: Vec<String> = self.classes.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(f, "{:w0$}  {}", "", header.join(" "))?;
        for (r, row) in rows.iter().zip(&self.marks) {
            let cells: Vec<String> = row.iter().map(|m| format!("{m:>width$}")).collect();
            writeln!(f, "{r:w0$}  {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Ghost coordinates `Σ_K a_K |(G/K)^H|`, one per class `H`.
pub fn ghost(a: &BurnsideElement) -> Vec<i64> {
    let t = table_of_marks(a.group());
    let x = a.class_coeffs();
    (0..x.len())
        .map(|h| x.iter().enumerate().map(|(k, c)| c * t.marks[k][h] as i64).sum())
        .collect()
}

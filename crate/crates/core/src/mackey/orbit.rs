//! The orbit category of a finite group on class representatives.

use std::collections::HashMap;

use crate::group::Group;
use crate::gset::{fibered_product, GMap};

/// The map `G/K_src → G/K_dst` sending the base coset to coset `point`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct OrbitMap {
    pub src: usize,
    pub dst: usize,
    pub point: usize,
}

#[derive(Debug)]
pub struct OrbitCategory {
    maps: Vec<OrbitMap>,
    index: HashMap<OrbitMap, usize>,
    identity: Vec<usize>,
}

impl OrbitCategory {
    pub fn of(group: &Group) -> &OrbitCategory {
        group.orbit_category.get_or_init(|| Self::build(group))
    }

    fn build(group: &Group) -> OrbitCategory {
        let k = group.num_classes();
        let mut maps = Vec::new();
        let mut index = HashMap::new();
        let mut identity = vec![0; k];
        for src in 0..k {
            let rep = &group.class(src).rep;
            for dst in 0..k {
                let t = group.cosets(dst);
                for y in 0..t.size {
                    if rep.elements().iter().all(|&h| t.act(h, y) == y) {
                        let m = OrbitMap { src, dst, point: y };
                        if src == dst && y == 0 {
                            identity[src] = maps.len();
                        }
                        index.insert(m, maps.len());
                        maps.push(m);
                    }
                }
            }
        }
        OrbitCategory { maps, index, identity }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[OrbitMap] {
        &self.maps
    }

    pub fn map(&self, id: usize) -> OrbitMap {
        self.maps[id]
    }

    pub fn id_of(&self, m: &OrbitMap) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn identity(&self, class: usize) -> usize {
        self.identity[class]
    }

    /// `second ∘ first`.
    pub fn compose(&self, group: &Group, first: usize, second: usize) -> usize {
        let a = self.maps[first];
        let b = self.maps[second];
        assert_eq!(a.dst, b.src, "orbit maps do not compose");
        let g = group.cosets(a.dst).reps[a.point];
        let point = group.cosets(b.dst).act(g, b.point);
        self.index[&OrbitMap { src: a.src, dst: b.dst, point }]
    }

    pub fn as_gmap(&self, group: &Group, id: usize) -> GMap {
        let m = self.maps[id];
        GMap::between_orbits(group, m.src, m.dst, m.point)
    }

    /// For `φ: G/K_a → G/K_h` and `ψ: G/K_b → G/K_h`, the orbits of the
    /// pullback as pairs of legs `(G/K_c → G/K_a, G/K_c → G/K_b)`.
    pub fn pullback(&self, group: &Group, phi: usize, psi: usize) -> Vec<(usize, usize)> {
        let (_, p1, p2) = fibered_product(&self.as_gmap(group, phi), &self.as_gmap(group, psi))
            .expect("common target");
        let a = self.maps[phi].src;
        let b = self.maps[psi].src;
        p1.source()
            .orbits()
            .iter()
            .map(|o| {
                let l = OrbitMap { src: o.class, dst: a, point: p1.apply(o.base) };
                let r = OrbitMap { src: o.class, dst: b, point: p2.apply(o.base) };
                (self.index[&l], self.index[&r])
            })
            .collect()
    }

    /// Ids of all maps with the given endpoints.
    pub fn between(&self, src: usize, dst: usize) -> Vec<usize> {
        (0..self.maps.len()).filter(|&i| self.maps[i].src == src && self.maps[i].dst == dst).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn counts_and_composition() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let oc = OrbitCategory::of(&g);
        // |(G/K)^H| summed over pairs: rows (4,0,0), (2,2,0), (1,1,1)
        assert_eq!(oc.len(), 11);
        for id in 0..oc.len() {
            let m = oc.map(id);
            assert_eq!(oc.compose(&g, oc.identity(m.src), id), id);
            assert_eq!(oc.compose(&g, id, oc.identity(m.dst)), id);
        }
    }

    #[test]
    fn pullback_matches_double_cosets() {
        let s3 = FiniteGroup::symmetric3();
        let oc = OrbitCategory::of(&s3);
        let to_top = oc.between(1, 3)[0];
        let legs = oc.pullback(&s3, to_top, to_top);
        let mut classes: Vec<usize> = legs.iter().map(|&(l, _)| oc.map(l).src).collect();
        classes.sort_unstable();
        assert_eq!(classes, vec![0, 1]);
    }
}

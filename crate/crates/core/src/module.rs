//! Finitely presented modules and maps between their presentations.
//!
//! A module is `R^gens / (column span of relations)`. A map is a matrix
//! acting on generator coordinates; it is checked to send relations into
//! relations when it is built.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::CoeffRing;
use crate::scalar::Scalar;
use crate::snf::{kernel_basis, smith_normal_form, solve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpModule {
    ring: CoeffRing,
    gens: usize,
    relations: Matrix,
}

/// Isomorphism invariants: canonical non-unit torsion factors in divisibility
/// order, then the free rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    pub torsion: Vec<Scalar>,
    pub free_rank: usize,
}

impl FpModule {
    pub fn new(ring: CoeffRing, gens: usize, relations: Matrix) -> Result<Self> {
        let relations = if relations.cols() == 0 { Matrix::zeros(gens, 0) } else { relations };
        if relations.rows() != gens {
            return Err(Error::Dimension(format!(
                "relations have {} rows for {} generators",
                relations.rows(),
                gens
            )));
        }
        for i in 0..relations.rows() {
            for j in 0..relations.cols() {
                ring.normalize(relations[(i, j)])?;
            }
        }
        Ok(FpModule { ring, gens, relations })
    }

    pub fn free(ring: CoeffRing, n: usize) -> Self {
        FpModule { ring, gens: n, relations: Matrix::zeros(n, 0) }
    }

    pub fn zero(ring: CoeffRing) -> Self {
        FpModule::free(ring, 0)
    }

    /// `R/(d)`.
    pub fn cyclic(ring: CoeffRing, d: Scalar) -> Self {
        FpModule { ring, gens: 1, relations: Matrix::from_rows(&[vec![d]]) }
    }

    /// Direct sum of cyclic modules `⊕ R/(d_i)`.
    pub fn from_factors(ring: CoeffRing, factors: &[Scalar]) -> Self {
        FpModule {
            ring,
            gens: factors.len(),
            relations: Matrix::diagonal(factors),
        }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    /// Relations including the implicit `m·e_i` over `Z/m`.
    pub fn full_relations(&self) -> Matrix {
        match self.ring.modulus() {
            Some(m) => self
                .relations
                .hstack(&Matrix::scalar(self.gens, Scalar::int(m as i128))),
            None => self.relations.clone(),
        }
    }

    pub fn direct_sum(&self, other: &FpModule) -> FpModule {
        assert_eq!(self.ring, other.ring, "direct sum over different rings");
        FpModule {
            ring: self.ring,
            gens: self.gens + other.gens,
            relations: self.relations.block_diag(&other.relations),
        }
    }

    pub fn sum_all<'a, I: IntoIterator<Item = &'a FpModule>>(ring: CoeffRing, mods: I) -> FpModule {
        mods.into_iter().fold(FpModule::zero(ring), |acc, m| acc.direct_sum(m))
    }

    pub fn structure(&self) -> Structure {
        let la = self.ring.la();
        let s = smith_normal_form(&la, &self.full_relations());
        let torsion = s.diagonal().into_iter().filter(|d| !la.is_unit(*d)).collect();
        Structure { torsion, free_rank: self.gens - s.rank }
    }

    pub fn is_zero(&self) -> bool {
        let s = self.structure();
        s.torsion.is_empty() && s.free_rank == 0
    }

    pub fn rank(&self) -> usize {
        self.structure().free_rank
    }

    pub fn isomorphic(&self, other: &FpModule) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(self.structure() == other.structure())
    }

    /// Whether every column of `v` (generator coordinates) is zero in the module.
    pub fn vanishes(&self, v: &Matrix) -> bool {
        assert_eq!(v.rows(), self.gens);
        if v.cols() == 0 || v.is_zero() {
            return true;
        }
        solve(&self.ring, &self.full_relations(), v).is_some()
    }

    pub fn identity(&self) -> ModuleMap {
        ModuleMap::unchecked(self.clone(), self.clone(), Matrix::identity(self.gens))
    }

    pub fn zero_map(&self, target: &FpModule) -> ModuleMap {
        ModuleMap::unchecked(self.clone(), target.clone(), Matrix::zeros(target.gens, self.gens))
    }

    /// An isomorphic presentation in Smith form with unit factors removed,
    /// together with mutually inverse maps `to: self → simple`, `from: simple → self`.
    pub fn simplified(&self) -> (FpModule, ModuleMap, ModuleMap) {
        let la = self.ring.la();
        let s = smith_normal_form(&la, &self.full_relations());
        let keep: Vec<usize> = (0..self.gens)
            .filter(|&i| i >= s.rank || !la.is_unit(s.d[(i, i)]))
            .collect();
        let factors: Vec<Scalar> = keep
            .iter()
            .map(|&i| if i < s.rank { s.d[(i, i)] } else { Scalar::ZERO })
            .collect();
        let rels: Vec<Vec<Scalar>> = factors
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(k, d)| {
                let mut c = vec![Scalar::ZERO; keep.len()];
                c[k] = *d;
                c
            })
            .collect();
        let simple = FpModule {
            ring: self.ring,
            gens: keep.len(),
            relations: Matrix::from_columns(keep.len(), &rels),
        };
        let to = ModuleMap::unchecked(self.clone(), simple.clone(), s.u.select_rows(&keep));
        let from = ModuleMap::unchecked(simple.clone(), self.clone(), s.u_inv.select_cols(&keep));
        (simple, to, from)
    }

    /// Injection of the `k`-th summand of `⊕ parts` and the matching projection.
    pub fn summand_maps(parts: &[FpModule], k: usize) -> (ModuleMap, ModuleMap) {
        let ring = parts[k].ring;
        let total = FpModule::sum_all(ring, parts);
        let offset: usize = parts[..k].iter().map(|p| p.gens).sum();
        let mut inj = Matrix::zeros(total.gens, parts[k].gens);
        for i in 0..parts[k].gens {
            inj[(offset + i, i)] = Scalar::ONE;
        }
        let proj = inj.transpose();
        (
            ModuleMap::unchecked(parts[k].clone(), total.clone(), inj),
            ModuleMap::unchecked(total, parts[k].clone(), proj),
        )
    }
}

impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.structure();
        let mut terms = Vec::new();
        match s.free_rank {
            0 => {}
            1 => terms.push(self.ring.to_string()),
            r => terms.push(format!("{}^{}", self.ring, r)),
        }
        let mut i = 0;
        while i < s.torsion.len() {
            let d = s.torsion[i];
            let mut j = i;
            while j < s.torsion.len() && s.torsion[j] == d {
                j += 1;
            }
            let name = self.ring.cyclic_name(d);
            if j - i == 1 {
                terms.push(name);
            } else {
                terms.push(format!("({name})^{}", j - i));
            }
            i = j;
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: FpModule,
    target: FpModule,
    matrix: Matrix,
}

impl ModuleMap {
    /// Builds a map after checking shapes and that relations go to relations.
    pub fn new(source: FpModule, target: FpModule, matrix: Matrix) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch(source.ring.to_string(), target.ring.to_string()));
        }
        if matrix.rows() != target.gens || matrix.cols() != source.gens {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens,
                source.gens
            )));
        }
        for i in 0..matrix.rows() {
            for j in 0..matrix.cols() {
                source.ring.normalize(matrix[(i, j)])?;
            }
        }
        let images = matrix.mul(&source.full_relations());
        if !target.vanishes(&images) {
            return Err(Error::NotWellDefined(
                "a source relation maps outside the target relations".into(),
            ));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    /// Builds a map the caller already knows to be well defined.
    pub(crate) fn unchecked(source: FpModule, target: FpModule, matrix: Matrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.gens);
        debug_assert_eq!(matrix.cols(), source.gens);
        ModuleMap { source, target, matrix }
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> CoeffRing {
        self.source.ring
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.target.gens, other.source.gens, "composition shape mismatch");
        ModuleMap::unchecked(self.source.clone(), other.target.clone(), other.matrix.mul(&self.matrix))
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, c: Scalar) -> ModuleMap {
        ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    pub fn pow(&self, e: u64) -> ModuleMap {
        ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.matrix.pow(e))
    }

    pub fn direct_sum(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::unchecked(
            self.source.direct_sum(&other.source),
            self.target.direct_sum(&other.target),
            self.matrix.block_diag(&other.matrix),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.target.vanishes(&self.matrix)
    }

    pub fn equals(&self, other: &ModuleMap) -> bool {
        self.matrix.rows() == other.matrix.rows()
            && self.matrix.cols() == other.matrix.cols()
            && self.target.vanishes(&self.matrix.sub(&other.matrix))
    }

    /// Generators of the preimage of the target relations, as source coordinates.
    fn preimage_lattice(&self) -> Matrix {
        let stacked = self.matrix.hstack(&self.target.full_relations());
        let k = kernel_basis(&self.ring(), &stacked);
        k.block(0, 0, self.source.gens, k.cols())
    }

    pub fn kernel(&self) -> (FpModule, ModuleMap) {
        let k = self.preimage_lattice();
        let stacked = k.hstack(&self.source.full_relations());
        let r = kernel_basis(&self.ring(), &stacked);
        let rels = r.block(0, 0, k.cols(), r.cols());
        let raw = FpModule { ring: self.ring(), gens: k.cols(), relations: rels };
        let (simple, _, from) = raw.simplified();
        let incl = k.mul(from.matrix());
        let incl = ModuleMap::unchecked(simple.clone(), self.source.clone(), incl);
        (simple, incl)
    }

    pub fn cokernel(&self) -> (FpModule, ModuleMap) {
        let raw = FpModule {
            ring: self.ring(),
            gens: self.target.gens,
            relations: self.target.relations.hstack(&self.matrix),
        };
        let (simple, to, _) = raw.simplified();
        let proj = ModuleMap::unchecked(self.target.clone(), simple.clone(), to.matrix);
        (simple, proj)
    }

    /// The cokernel with its projection and a set-theoretic section back into the target.
    pub fn cokernel_with_section(&self) -> (FpModule, ModuleMap, ModuleMap) {
        let raw = FpModule {
            ring: self.ring(),
            gens: self.target.gens,
            relations: self.target.relations.hstack(&self.matrix),
        };
        let (simple, to, from) = raw.simplified();
        let proj = ModuleMap::unchecked(self.target.clone(), simple.clone(), to.matrix);
        let section = ModuleMap::unchecked(simple.clone(), self.target.clone(), from.matrix);
        (simple, proj, section)
    }

    pub fn image(&self) -> (FpModule, ModuleMap) {
        let raw = FpModule {
            ring: self.ring(),
            gens: self.source.gens,
            relations: self.preimage_lattice(),
        };
        let (simple, _, from) = raw.simplified();
        let incl = self.matrix.mul(from.matrix());
        (simple.clone(), ModuleMap::unchecked(simple, self.target.clone(), incl))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `l` with `self ∘ l = g`, when `g` factors through `self`.
    pub fn lift(&self, g: &ModuleMap) -> Option<ModuleMap> {
        assert_eq!(self.target.gens, g.target.gens, "lift target mismatch");
        let stacked = self.matrix.hstack(&self.target.full_relations());
        let z = solve(&self.ring(), &stacked, &g.matrix)?;
        let l = z.block(0, 0, self.source.gens, g.source.gens);
        ModuleMap::new(g.source.clone(), self.source.clone(), l).ok()
    }

    /// Whether the image of `self` lies in the image of `other` (same target).
    pub fn image_within(&self, other: &ModuleMap) -> bool {
        let stacked = other.matrix.hstack(&self.target.full_relations());
        solve(&self.ring(), &stacked, &self.matrix).is_some()
    }

    /// Restriction of `self` to the submodule with inclusion `incl`.
    pub fn restrict(&self, incl: &ModuleMap) -> ModuleMap {
        incl.then(self)
    }
}

/// `ker(b) / im(a)` for `a: X → M`, `b: M → Y` with `b ∘ a = 0`.
pub fn homology(a: &ModuleMap, b: &ModuleMap) -> FpModule {
    let (_, incl) = b.kernel();
    let l = incl.lift(a).expect("composite b∘a must vanish");
    l.cokernel().0
}

/// Sum of the images of several maps into the same module, as one map.
pub fn sum_of_images(target: &FpModule, maps: &[ModuleMap]) -> ModuleMap {
    let mut m = Matrix::zeros(target.gens(), 0);
    for f in maps {
        m = m.hstack(f.matrix());
    }
    let free = FpModule::free(target.ring(), m.cols());
    ModuleMap::unchecked(free, target.clone(), m)
}

/// Intersection of two submodules given by maps into `target`.
pub fn intersect(a: &ModuleMap, b: &ModuleMap) -> ModuleMap {
    let stacked = a.matrix().hstack(&b.matrix().scale(-Scalar::ONE));
    let parts = FpModule::free(a.ring(), stacked.cols());
    let joint = ModuleMap::unchecked(parts, a.target().clone(), stacked);
    let (_, incl) = joint.kernel();
    let top = incl.matrix().block(0, 0, a.source().gens(), incl.matrix().cols());
    let free = FpModule::free(a.ring(), top.cols());
    ModuleMap::unchecked(free, a.target().clone(), a.matrix().mul(&top))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CoeffRing {
        CoeffRing::Integers
    }

    fn map(src: &FpModule, tgt: &FpModule, rows: &[&[i64]]) -> ModuleMap {
        ModuleMap::new(src.clone(), tgt.clone(), Matrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let zz = FpModule::free(z(), 1);
        assert_eq!(map(&zz, &zz, &[&[0]]).kernel().0.to_string(), "Z");
        assert_eq!(map(&zz, &zz, &[&[2]]).kernel().0.to_string(), "0");
        let z2 = FpModule::free(z(), 2);
        let norm = map(&z2, &z2, &[&[1, 1], &[1, 1]]);
        let (k, incl) = norm.kernel();
        assert_eq!(k.to_string(), "Z");
        let col = incl.matrix().column(0);
        assert_eq!(col[0], -col[1]);
        assert_eq!(col[0].abs(), Scalar::ONE);
    }

    #[test]
    fn cokernel_examples() {
        let zz = FpModule::free(z(), 1);
        assert_eq!(map(&zz, &zz, &[&[5]]).cokernel().0.to_string(), "Z/5");
        assert_eq!(map(&zz, &zz, &[&[0]]).cokernel().0.to_string(), "Z");
        let z2 = FpModule::free(z(), 2);
        let c = map(&z2, &z2, &[&[2, 0], &[0, 3]]).cokernel().0;
        assert_eq!(c.to_string(), "Z/6");
        let split = FpModule::from_factors(z(), &[Scalar::int(2), Scalar::int(3)]);
        assert!(c.isomorphic(&split).unwrap());
    }

    #[test]
    fn isomorphism_checks() {
        let a = FpModule::free(z(), 1);
        let b = FpModule::cyclic(z(), Scalar::int(2));
        assert!(!a.isomorphic(&b).unwrap());
        assert!(FpModule::zero(z()).isomorphic(&FpModule::zero(z())).unwrap());
        assert!(a.isomorphic(&FpModule::free(CoeffRing::Rationals, 1)).is_err());
    }

    #[test]
    fn well_definedness_is_enforced() {
        let z2 = FpModule::cyclic(z(), Scalar::int(2));
        let zz = FpModule::free(z(), 1);
        assert!(ModuleMap::new(z2.clone(), zz, Matrix::from_i64(&[&[1]])).is_err());
        let z4 = FpModule::cyclic(z(), Scalar::int(4));
        assert!(ModuleMap::new(z2, z4, Matrix::from_i64(&[&[2]])).is_ok());
    }

    #[test]
    fn modular_ring_display() {
        let m = FpModule::free(CoeffRing::IntegersMod(6), 2);
        assert_eq!(m.to_string(), "(Z/6)^2");
        let q = FpModule::free(CoeffRing::Rationals, 3);
        assert_eq!(q.to_string(), "Q^3");
        let p = FpModule::from_factors(CoeffRing::PLocal(2), &[Scalar::int(12), Scalar::ZERO]);
        assert_eq!(p.to_string(), "Z_(2) + Z_(2)/4");
    }

    #[test]
    fn homology_of_a_short_complex() {
        let zz = FpModule::free(z(), 1);
        let two = map(&zz, &zz, &[&[2]]);
        let zero = map(&zz, &zz, &[&[0]]);
        assert_eq!(homology(&two, &zero).to_string(), "Z/2");
        assert_eq!(homology(&zero, &two).to_string(), "0");
    }

    #[test]
    fn image_and_intersection() {
        let z2 = FpModule::free(z(), 2);
        let f = map(&z2, &z2, &[&[2, 0], &[0, 0]]);
        assert_eq!(f.image().0.to_string(), "Z");
        let a = map(&FpModule::free(z(), 1), &z2, &[&[2], &[0]]);
        let b = map(&FpModule::free(z(), 1), &z2, &[&[3], &[0]]);
        let i = intersect(&a, &b);
        assert!(i.image_within(&a) && i.image_within(&b));
        let c = map(&FpModule::free(z(), 1), &z2, &[&[6], &[0]]);
        assert!(c.image_within(&i));
    }
}

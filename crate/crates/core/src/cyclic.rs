//! Homology and Tate cohomology of finite cyclic groups.
//!
//! A Z/n-module is a module `M` with an automorphism `σ` of order dividing
//! `n`. Everything is read off the 2-periodic complex built from `σ − 1`
//! and the norm `N = Σ σ^k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::module::{homology, FpModule, ModuleMap};
use crate::scalar::{is_prime, Scalar};

/// Tate cohomology of a cyclic group; `Ĥ^i` depends only on the parity of `i`.
#[derive(Clone, Debug)]
pub struct TateResult {
    pub even: FpModule,
    pub odd: FpModule,
}

impl TateResult {
    /// Period of the cohomology, carried by the class `u` in degree 2.
    pub const PERIOD: u32 = 2;

    pub fn degree(&self, i: i64) -> &FpModule {
        if i.rem_euclid(2) == 0 {
            &self.even
        } else {
            &self.odd
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }
}

#[derive(Serialize)]
struct TateJson {
    even: String,
    odd: String,
}

impl Serialize for TateResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TateJson { even: self.even.to_string(), odd: self.odd.to_string() }.serialize(s)
    }
}

fn check_order(n: u64, sigma: &ModuleMap) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("cyclic group order must be positive".into()));
    }
    if sigma.source() != sigma.target() {
        return Err(Error::Dimension("sigma must be an endomorphism".into()));
    }
    if !sigma.pow(n).equals(&sigma.source().identity()) {
        return Err(Error::SigmaOrder(n));
    }
    Ok(())
}

/// `σ − 1` and `N = 1 + σ + … + σ^{n−1}`.
pub fn augmentation_and_norm(n: u64, sigma: &ModuleMap) -> (ModuleMap, ModuleMap) {
    let id = sigma.source().identity();
    let aug = sigma.sub(&id);
    let mut norm = id.scale(Scalar::ZERO);
    let mut power = id;
    for _ in 0..n {
        norm = norm.add(&power);
        power = power.then(sigma);
    }
    (aug, norm)
}

/// `H_i(Z/n; M)` for the action of `sigma`.
pub fn cyclic_homology(n: u64, sigma: &ModuleMap, i: u32) -> Result<FpModule> {
    check_order(n, sigma)?;
    let (aug, norm) = augmentation_and_norm(n, sigma);
    Ok(match i {
        0 => aug.cokernel().0,
        i if i % 2 == 1 => homology(&norm, &aug),
        _ => homology(&aug, &norm),
    })
}

pub fn cyclic_tate(n: u64, sigma: &ModuleMap) -> Result<TateResult> {
    check_order(n, sigma)?;
    let (aug, norm) = augmentation_and_norm(n, sigma);
    Ok(TateResult { even: homology(&norm, &aug), odd: homology(&aug, &norm) })
}

/// Maximal Tate cohomology; for a group of prime order it is the ordinary
/// Tate cohomology, and no other order is supported.
pub fn maximal_tate(n: u64, sigma: &ModuleMap) -> Result<TateResult> {
    if !is_prime(n) {
        return Err(Error::Precondition(format!(
            "maximal Tate cohomology is only available for prime order, got {n}"
        )));
    }
    cyclic_tate(n, sigma)
}

/// The trivial module `R` with `σ = id`.
pub fn trivial_module(ring: crate::ring::CoeffRing) -> ModuleMap {
    FpModule::free(ring, 1).identity()
}

/// The regular module `R[Z/n]` with `σ` the cyclic shift, repeated `copies` times.
pub fn free_module(ring: crate::ring::CoeffRing, n: usize, copies: usize) -> ModuleMap {
    let dim = n * copies;
    let mut m = crate::matrix::Matrix::zeros(dim, dim);
    for c in 0..copies {
        for k in 0..n {
            m[(c * n + (k + 1) % n, c * n + k)] = Scalar::ONE;
        }
    }
    let module = FpModule::free(ring, dim);
    ModuleMap::new(module.clone(), module, m).expect("shift is well defined")
}

/// The permutation module `R[X]` for a Z/n-set given by the image of each point under the generator.
pub fn permutation_module(ring: crate::ring::CoeffRing, perm: &[usize]) -> ModuleMap {
    let dim = perm.len();
    let mut m = crate::matrix::Matrix::zeros(dim, dim);
    for (x, &y) in perm.iter().enumerate() {
        m[(y, x)] = Scalar::ONE;
    }
    let module = FpModule::free(ring, dim);
    ModuleMap::new(module.clone(), module, m).expect("permutation is well defined")
}

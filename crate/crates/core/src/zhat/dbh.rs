//! Derived Burnside homology of admissible Ẑ-sets, level by level.

use serde::Serialize;

use crate::cyclic::{cyclic_homology, trivial_module};
use crate::error::{Error, Result};
use crate::module::FpModule;
use crate::ring::CoeffRing;
use crate::scalar::{gcd, lcm};

#[derive(Clone, Debug, Serialize)]
pub struct LevelHomology {
    pub level: u64,
    pub module: String,
    #[serde(skip)]
    pub value: FpModule,
}

/// `H_i(Z/n; R[(S × S')^{nẐ}])` for every `n ≤ bound`.
///
/// `left` and `right` list the orbit levels of `S` and `S'`. The product of
/// `Z/a` and `Z/b` is `gcd(a, b)` copies of `Z/lcm(a, b)`, and each orbit
/// `Z/m` with `m | n` contributes `H_i(Z/(n/m); R)` by Shapiro's lemma.
pub fn derived_burnside_homology(
    left: &[u64],
    right: &[u64],
    degree: u32,
    bound: u64,
    ring: CoeffRing,
) -> Result<Vec<LevelHomology>> {
    if left.iter().chain(right).any(|&a| a == 0) {
        return Err(Error::Precondition("orbit levels must be positive".into()));
    }
    let unit = trivial_module(ring);
    let mut out = Vec::new();
    for n in 1..=bound {
        let mut parts = Vec::new();
        for &a in left {
            for &b in right {
                let m = lcm(a, b);
                if n % m != 0 {
                    continue;
                }
                let h = cyclic_homology(n / m, &unit, degree)?;
                parts.extend(std::iter::repeat(h).take(gcd(a, b) as usize));
            }
        }
        let value = FpModule::sum_all(ring, &parts);
        out.push(LevelHomology { level: n, module: value.to_string(), value });
    }
    Ok(out)
}

//! Gluing data of the Ẑ-Mackey theory: `Φ̃^l R^n` evaluated on a module.

use serde::Serialize;

use crate::cyclic::{cyclic_tate, TateResult};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::gset::GSet;
use crate::module::{FpModule, ModuleMap};
use crate::scalar::is_prime;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum GluingCase {
    Identity { module: String },
    Tate { prime: u64, tate: TateResult },
    Zero,
}

#[derive(Clone, Debug, Serialize)]
pub struct GluingValue {
    pub n: u64,
    pub l: u64,
    #[serde(flatten)]
    pub case: GluingCase,
    /// Size of the double quotient `W_H \ [G/H']^H / W_{H'}` indexing the copies.
    pub multiplicity: usize,
}

impl GluingValue {
    pub fn is_zero(&self) -> bool {
        matches!(self.case, GluingCase::Zero)
    }
}

/// `Φ̃^l R^n(M)` for a `Z/n`-module `M` with generator `sigma`: `M` when
/// `l = n`, maximal Tate cohomology of `Z/p` when `n = pl`, zero otherwise.
pub fn gluing_value(n: u64, l: u64, sigma: &ModuleMap) -> Result<GluingValue> {
    if n == 0 || l == 0 {
        return Err(Error::Precondition("levels must be positive".into()));
    }
    let m: &FpModule = sigma.source();
    if sigma.target() != m {
        return Err(Error::Dimension("sigma must be an endomorphism".into()));
    }
    if !sigma.pow(n).equals(&m.identity()) {
        return Err(Error::SigmaOrder(n));
    }
    let case = if l == n {
        GluingCase::Identity { module: m.to_string() }
    } else if n % l == 0 && is_prime(n / l) {
        GluingCase::Tate { prime: n / l, tate: cyclic_tate(n / l, &sigma.pow(l))? }
    } else {
        GluingCase::Zero
    };
    let multiplicity = if n % l == 0 {
        let g = FiniteGroup::cyclic(n as usize)?;
        let h = g.generate(&[(l % n) as usize]);
        GSet::cosets(&g, &h).orbits().len()
    } else {
        0
    };
    Ok(GluingValue { n, l, case, multiplicity })
}

impl GluingValue {
    pub fn tate(&self) -> Option<&TateResult> {
        match &self.case {
            GluingCase::Tate { tate, .. } => Some(tate),
            _ => None,
        }
    }
}

//! The p-typical decomposition over a p-local coefficient ring.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::module::{FpModule, ModuleMap};
use crate::ring::CoeffRing;
use crate::scalar::prime_to_part;

use super::trunc::{ZMackeyParts, ZMackeyTrunc};
use super::witt::p_local_idempotent;

fn check_ring(m: &ZMackeyTrunc, p: u64) -> Result<()> {
    match m.ring() {
        CoeffRing::PLocal(q) if q == p => Ok(()),
        CoeffRing::Rationals => Ok(()),
        r => Err(Error::Precondition(format!("the p-typical decomposition needs a {p}-local ring, got {r}"))),
    }
}

/// Image of the idempotent `ε_(l)` acting on `M_n`.
pub fn p_typical_component(m: &ZMackeyTrunc, p: u64, l: u64, n: u64) -> Result<(FpModule, ModuleMap)> {
    check_ring(m, p)?;
    let e = p_local_idempotent(p, l, m.bound())?;
    Ok(m.eps_action(&e, n)?.image())
}

/// `Ψ^{LẐ}M`: level `j` carries `M_{Lj}`, and the generator of `LẐ` acts by `σ^L`.
pub fn restrict_to_subgroup(m: &ZMackeyTrunc, big_l: u64) -> Result<ZMackeyTrunc> {
    if big_l == 0 || !m.contains(big_l) {
        return Err(Error::OutsideTruncation(big_l));
    }
    let levels: Vec<u64> = m.levels().iter().filter(|&&k| k % big_l == 0).map(|&k| k / big_l).collect();
    let mut parts = ZMackeyParts {
        ring: m.ring(),
        levels: levels.clone(),
        tail: m.tail(),
        values: BTreeMap::new(),
        sigma: BTreeMap::new(),
        v: BTreeMap::new(),
        f: BTreeMap::new(),
    };
    for &j in &levels {
        parts.values.insert(j, m.value(big_l * j)?.clone());
        parts.sigma.insert(j, m.sigma(big_l * j)?.pow(big_l).matrix().clone());
        for &i in levels.iter().filter(|&&i| j % i == 0 && i != j) {
            parts.v.insert((j, i), m.v(big_l * j, big_l * i)?.matrix().clone());
            parts.f.insert((j, i), m.f(big_l * j, big_l * i)?.matrix().clone());
        }
    }
    ZMackeyTrunc::from_parts(parts)
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    /// The cofactor `l'` prime to `p`.
    pub cofactor: u64,
    /// Level of `M` the summand is read from.
    pub level: u64,
    pub component: String,
    pub coinvariants: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PTypicalReport {
    pub p: u64,
    pub n: u64,
    pub summands: Vec<Summand>,
    pub value: String,
    pub reconstructed: String,
    pub isomorphic: bool,
    /// Summands whose level lies outside the truncation are missing.
    pub exact: bool,
}

/// Compares `M_n` with the sum over `l'` prime to `p` of the `σ^l`-coinvariants
/// of `Φ^{(p)}_{(ll')}(M)` at `p^m`, where `n = l·p^m`.
pub fn p_typical_reconstruct_check(m: &ZMackeyTrunc, p: u64, n: u64) -> Result<PTypicalReport> {
    check_ring(m, p)?;
    let target = m.value(n)?.clone();
    let l = prime_to_part(n, p);
    let j = n / l;
    let mut summands = Vec::new();
    let mut parts = Vec::new();
    for lp in 1..=m.bound() / n {
        if lp % p == 0 {
            continue;
        }
        let big_l = l * lp;
        if !m.contains(big_l * j) {
            continue;
        }
        let psi = restrict_to_subgroup(m, big_l)?;
        let (comp, incl) = p_typical_component(&psi, p, 1, j)?;
        // the generator of Z/L inside Z/Lj: u ≡ 1 mod L, u ≡ 0 mod j
        let u = (0..big_l * j).find(|u| u % big_l == 1 % big_l && u % j == 0).expect("coprime moduli");
        let tau = m.sigma(big_l * j)?.pow((u * l) % (big_l * j));
        let moved = incl.then(&tau.sub(&m.value(big_l * j)?.identity()));
        let inner = incl.lift(&moved).ok_or_else(|| Error::Precondition("component is not sigma-stable".into()))?;
        let co = inner.cokernel().0;
        summands.push(Summand { cofactor: lp, level: big_l * j, component: comp.to_string(), coinvariants: co.to_string() });
        parts.push(co);
    }
    let total = FpModule::sum_all(m.ring(), &parts);
    Ok(PTypicalReport {
        p,
        n,
        summands,
        value: target.to_string(),
        reconstructed: total.to_string(),
        isomorphic: total.isomorphic(&target)?,
        exact: m.tail() == super::trunc::Tail::Zero,
    })
}

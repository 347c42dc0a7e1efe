//! Seeded single-entry mutations of a Mackey functor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use mackeylab::mackey::{MackeyFunctor, OrbitCategory};
use mackeylab::{Result, Scalar};

#[derive(Clone, Debug, Serialize)]
pub struct Mutation {
    pub pushforward: bool,
    pub map: usize,
    pub row: usize,
    pub col: usize,
    pub delta: i64,
    /// First violated identity, or `None` if the mutant is still a Mackey functor.
    pub caught: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzReport {
    pub group: String,
    pub seed: u64,
    pub mutations: Vec<Mutation>,
}

impl FuzzReport {
    pub fn caught(&self) -> usize {
        self.mutations.iter().filter(|m| m.caught.is_some()).count()
    }

    pub fn rate(&self) -> f64 {
        if self.mutations.is_empty() {
            return 1.0;
        }
        self.caught() as f64 / self.mutations.len() as f64
    }
}

/// Adds a random nonzero integer to one random entry of one structure map, `count` times.
pub fn mutation_fuzz(m: &MackeyFunctor, seed: u64, count: usize) -> Result<FuzzReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cat = OrbitCategory::of(m.group());
    let slots: Vec<(bool, usize)> = (0..cat.len())
        .flat_map(|id| [(true, id), (false, id)])
        .filter(|&(push, id)| {
            let x = if push { m.push_matrix(id) } else { m.pull_matrix(id) };
            x.rows() > 0 && x.cols() > 0
        })
        .collect();
    let mut mutations = Vec::with_capacity(count);
    if slots.is_empty() {
        return Ok(FuzzReport { group: m.group().name().to_string(), seed, mutations });
    }
    for _ in 0..count {
        let (pushforward, map) = slots[rng.gen_range(0..slots.len())];
        let x = if pushforward { m.push_matrix(map) } else { m.pull_matrix(map) };
        let (row, col) = (rng.gen_range(0..x.rows()), rng.gen_range(0..x.cols()));
        let delta = loop {
            let d: i64 = rng.gen_range(-3..=3);
            if d != 0 {
                break d;
            }
        };
        let mutant = m.perturbed(pushforward, map, row, col, Scalar::from(delta));
        let report = mutant.check_axioms()?;
        let caught = report.violations.first().map(|v| report.describe(v));
        mutations.push(Mutation { pushforward, map, row, col, delta, caught });
    }
    Ok(FuzzReport { group: m.group().name().to_string(), seed, mutations })
}

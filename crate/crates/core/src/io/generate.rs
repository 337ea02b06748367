//! Seeded random instances.
//!
//! Randomness comes from `Pcg64Mcg` (128-bit multiplicative congruential
//! state, 64-bit XSL-RR output) seeded through `seed_from_u64`, with ranges
//! drawn by `rand`'s uniform integer sampler. Both are platform independent,
//! so a seed names the same instance everywhere.
//!
//! Profiles:
//! - `paper`: p in [40, 60], lateness due dates in [60, 90], setup 10,
//!   capacity `max(2, n / 5)`.
//! - `small`: p in [1, 9], setup in [0, 5], capacity in [1, n - 1] and a mix
//!   of lateness, tardiness and affine costs; sized for the oracle.
//! - `prec`: the `small` numbers with unbounded capacity and every pair
//!   `i < j` linked `i -> j` with probability 0.3.
//! - `paper-prec`: the `paper` numbers with unbounded capacity and the
//!   `prec` edge rule.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;

use crate::model::{Capacity, CostSpec, Instance, Job, JobId};

pub const EDGE_PROBABILITY: f64 = 0.3;
pub const PAPER_SETUP: i64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    Paper,
    Small,
    Prec,
    PaperPrec,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(Profile::Paper),
            "small" => Ok(Profile::Small),
            "prec" => Ok(Profile::Prec),
            "paper-prec" => Ok(Profile::PaperPrec),
            other => Err(format!("unknown profile '{other}' (paper, small, prec, paper-prec)")),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Paper => "paper",
            Profile::Small => "small",
            Profile::Prec => "prec",
            Profile::PaperPrec => "paper-prec",
        })
    }
}

/// Default capacity of the `paper` profile.
pub fn paper_capacity(n: usize) -> usize {
    (n / 5).max(2)
}

pub fn gen_random(n: usize, seed: u64, profile: Profile) -> Instance {
    gen_random_with(n, seed, profile, None)
}

/// Like [`gen_random`]; `capacity` overrides the profile's batch capacity
/// for the bounded profiles.
pub fn gen_random_with(n: usize, seed: u64, profile: Profile, capacity: Option<usize>) -> Instance {
    assert!(n >= 1, "instances need at least one job");
    let mut rng = Pcg64Mcg::seed_from_u64(seed);
    let (setup, cap) = match profile {
        Profile::Paper => (PAPER_SETUP, Capacity::Bounded(capacity.unwrap_or_else(|| paper_capacity(n)))),
        Profile::Small => {
            let s = rng.gen_range(0..=5);
            let b = rng.gen_range(1..=n.saturating_sub(1).max(1));
            (s, Capacity::Bounded(capacity.unwrap_or(b)))
        }
        Profile::Prec => (rng.gen_range(0..=5), Capacity::Unbounded),
        Profile::PaperPrec => (PAPER_SETUP, Capacity::Unbounded),
    };
    let jobs = (0..n)
        .map(|j| {
            let (p, cost) = match profile {
                Profile::Paper | Profile::PaperPrec => {
                    (rng.gen_range(40..=60), CostSpec::Lateness { due: rng.gen_range(60..=90) })
                }
                Profile::Small | Profile::Prec => {
                    let p = rng.gen_range(1..=9);
                    let cost = match rng.gen_range(0..3) {
                        0 => CostSpec::Lateness { due: rng.gen_range(1..=30) },
                        1 => CostSpec::Tardiness { due: rng.gen_range(1..=30) },
                        _ => CostSpec::Affine { a: rng.gen_range(0..=3), c: rng.gen_range(-30..=10) },
                    };
                    (p, cost)
                }
            };
            Job { id: JobId(j), p, cost }
        })
        .collect();
    let mut edges = Vec::new();
    if matches!(profile, Profile::Prec | Profile::PaperPrec) {
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(EDGE_PROBABILITY) {
                    edges.push((JobId(a), JobId(b)));
                }
            }
        }
    }
    Instance::new(jobs, setup, cap, edges).expect("generated instances are valid")
}

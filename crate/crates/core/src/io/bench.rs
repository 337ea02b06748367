//! Wall-clock benchmarks on `paper`-profile instances.
//!
//! Repetition `r` uses seed `seed + r` at every size, and `main1` and
//! `main1_naive` see the same instances. `main2` runs on `paper-prec`
//! instances. Runs are sequential and only the solver call is timed.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use crate::io::generate::{gen_random_with, Profile};
use crate::model::Instance;
use crate::pareto::{main1, main1_naive, main2, ParetoFront};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Main1,
    Main1Naive,
    Main2,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Main1, Algorithm::Main1Naive, Algorithm::Main2];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Main1 => "main1",
            Algorithm::Main1Naive => "main1_naive",
            Algorithm::Main2 => "main2",
        }
    }

    pub fn profile(self) -> Profile {
        match self {
            Algorithm::Main1 | Algorithm::Main1Naive => Profile::Paper,
            Algorithm::Main2 => Profile::PaperPrec,
        }
    }

    pub fn run(self, instance: &Instance) -> ParetoFront {
        match self {
            Algorithm::Main1 => main1(instance),
            Algorithm::Main1Naive => main1_naive(instance),
            Algorithm::Main2 => main2(instance),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm '{s}' (main1, main1_naive, main2)"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    pub repetitions: usize,
    pub avg_seconds: f64,
    pub max_seconds: f64,
    /// Frontier points summed over repetitions.
    pub points: u64,
    /// Family moves summed over repetitions.
    pub moves: u64,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    /// Overrides the `paper` capacity rule.
    pub capacity: Option<usize>,
}

pub fn bench_instance(config: &BenchConfig, algorithm: Algorithm, n: usize, rep: usize) -> Instance {
    gen_random_with(n, config.seed.wrapping_add(rep as u64), algorithm.profile(), config.capacity)
}

/// One record per (algorithm, size), sorted by algorithm then size.
pub fn run_bench(config: &BenchConfig) -> Vec<BenchRecord> {
    assert!(config.repetitions >= 1, "at least one repetition");
    let mut algorithms = config.algorithms.clone();
    algorithms.sort();
    algorithms.dedup();
    let mut sizes = config.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let mut records = Vec::new();
    for &algorithm in &algorithms {
        for &n in &sizes {
            let mut total = 0.0;
            let mut max: f64 = 0.0;
            let mut points = 0;
            let mut moves = 0;
            for rep in 0..config.repetitions {
                let instance = bench_instance(config, algorithm, n, rep);
                let start = Instant::now();
                let front = algorithm.run(&instance);
                let secs = start.elapsed().as_secs_f64();
                total += secs;
                max = max.max(secs);
                points += front.points.len() as u64;
                moves += front.stats.csf_moves;
            }
            let avg = (total / config.repetitions as f64).min(max);
            records.push(BenchRecord {
                algorithm,
                n,
                repetitions: config.repetitions,
                avg_seconds: avg,
                max_seconds: max,
                points,
                moves,
            });
        }
    }
    records
}

pub const BENCH_HEADER: &str = "algorithm,n,avg_seconds,max_seconds,points,moves";

pub fn bench_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{:.6e},{:.6e},{},{}",
            r.algorithm, r.n, r.avg_seconds, r.max_seconds, r.points, r.moves
        );
    }
    out
}

/// Least-squares slope of `ln y` against `ln x`. Needs two distinct `x`
/// and positive values throughout.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Average-time slope per algorithm.
pub fn slopes(records: &[BenchRecord]) -> Vec<(Algorithm, Option<f64>)> {
    let mut algorithms: Vec<Algorithm> = records.iter().map(|r| r.algorithm).collect();
    algorithms.dedup();
    algorithms
        .into_iter()
        .map(|a| {
            let pts: Vec<(f64, f64)> =
                records.iter().filter(|r| r.algorithm == a).map(|r| (r.n as f64, r.avg_seconds)).collect();
            (a, loglog_slope(&pts))
        })
        .collect()
}

pub fn scaling_summary(records: &[BenchRecord]) -> String {
    let mut out = String::new();
    for (a, slope) in slopes(records) {
        match slope {
            Some(s) => {
                let _ = writeln!(out, "{a}: log-log slope of average time vs n = {s:.3}");
            }
            None => {
                let _ = writeln!(out, "{a}: log-log slope unavailable (needs two sizes)");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [10.0, 20.0, 40.0].iter().map(|&x: &f64| (x, 3.0 * x.powi(2))).collect();
        assert!((loglog_slope(&pts).unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(loglog_slope(&[(10.0, 1.0)]), None);
        assert_eq!(loglog_slope(&[(10.0, 0.0), (20.0, 1.0)]), None);
    }

    #[test]
    fn records_sorted_and_consistent() {
        let cfg = BenchConfig {
            sizes: vec![20, 10],
            repetitions: 1,
            seed: 5,
            algorithms: vec![Algorithm::Main1Naive, Algorithm::Main1],
            capacity: None,
        };
        let recs = run_bench(&cfg);
        let keys: Vec<(Algorithm, usize)> = recs.iter().map(|r| (r.algorithm, r.n)).collect();
        assert_eq!(
            keys,
            vec![(Algorithm::Main1, 10), (Algorithm::Main1, 20), (Algorithm::Main1Naive, 10), (Algorithm::Main1Naive, 20)]
        );
        for r in &recs {
            assert_eq!(r.avg_seconds, r.max_seconds);
        }
        assert_eq!(recs[0].points, recs[2].points);
        let csv = bench_csv(&recs);
        assert!(csv.starts_with("algorithm,n,avg_seconds,max_seconds,points,moves\nmain1,10,"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn algorithm_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
    }
}

//! Brute-force ground truth for small instances.
//!
//! Every feasible schedule is an ordered partition of the jobs into batches.
//! Set partitions are generated as restricted growth strings with capacity
//! and same-batch precedence pruning, then each partition's blocks are
//! ordered in every way compatible with the precedence relation. Each
//! schedule is produced exactly once.

use crate::error::OracleError;
use crate::model::{Capacity, Cost, Instance, JobId, Schedule, Time};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_n_bounded: usize,
    pub max_n_precedence: usize,
    pub max_schedules: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_n_bounded: 8, max_n_precedence: 7, max_schedules: 20_000_000 }
    }
}

impl EnumerationLimits {
    fn max_n(&self, instance: &Instance) -> usize {
        if instance.precedence().is_empty() {
            self.max_n_bounded
        } else {
            self.max_n_precedence
        }
    }
}

struct Walk<'a, F> {
    instance: &'a Instance,
    cap: usize,
    pred_mask: Vec<u64>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    limit: u64,
    count: u64,
    visit: F,
}

impl<F: FnMut(&[&[usize]])> Walk<'_, F> {
    fn partitions(&mut self, j: usize) -> Result<(), OracleError> {
        if j == self.instance.n() {
            return self.orderings();
        }
        for k in 0..=self.blocks.len() {
            if k == self.blocks.len() {
                self.blocks.push(Vec::new());
            }
            let fits = self.blocks[k].len() < self.cap
                && self.blocks[k].iter().all(|&o| {
                    self.pred_mask[j] & (1 << o) == 0 && self.pred_mask[o] & (1 << j) == 0
                });
            if fits {
                self.blocks[k].push(j);
                self.block_of[j] = k;
                self.partitions(j + 1)?;
                self.blocks[k].pop();
            }
            if self.blocks[k].is_empty() {
                self.blocks.pop();
                break;
            }
        }
        Ok(())
    }

    fn orderings(&mut self) -> Result<(), OracleError> {
        let m = self.blocks.len();
        let mut block_pred = vec![0u64; m];
        for (j, &mask) in self.pred_mask.iter().enumerate() {
            let mut rest = mask;
            while rest != 0 {
                let p = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                block_pred[self.block_of[j]] |= 1 << self.block_of[p];
            }
        }
        let mut order = Vec::with_capacity(m);
        self.place(&block_pred, 0, &mut order)
    }

    fn place(&mut self, block_pred: &[u64], placed: u64, order: &mut Vec<usize>) -> Result<(), OracleError> {
        let m = block_pred.len();
        if order.len() == m {
            self.count += 1;
            if self.count > self.limit {
                return Err(OracleError::TooManySchedules(self.limit));
            }
            let seq: Vec<&[usize]> = order.iter().map(|&b| self.blocks[b].as_slice()).collect();
            (self.visit)(&seq);
            return Ok(());
        }
        for b in 0..m {
            if placed & (1 << b) == 0 && block_pred[b] & !placed == 0 {
                order.push(b);
                self.place(block_pred, placed | (1 << b), order)?;
                order.pop();
            }
        }
        Ok(())
    }
}

/// Calls `visit` with the batches (earliest first) of every feasible
/// schedule and returns how many there were.
pub fn for_each_feasible(
    instance: &Instance,
    limits: &EnumerationLimits,
    visit: impl FnMut(&[&[usize]]),
) -> Result<u64, OracleError> {
    let n = instance.n();
    let max = limits.max_n(instance).min(63);
    if n > max {
        return Err(OracleError::TooManyJobs { n, max });
    }
    let mut pred_mask = vec![0u64; n];
    for &(a, b) in instance.precedence() {
        pred_mask[b.index()] |= 1 << a.index();
    }
    // close under transitivity so that block ordering sees implied edges
    for _ in 0..n {
        for j in 0..n {
            let mut acc = pred_mask[j];
            let mut rest = pred_mask[j];
            while rest != 0 {
                let p = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                acc |= pred_mask[p];
            }
            pred_mask[j] = acc;
        }
    }
    let cap = match instance.capacity() {
        Capacity::Bounded(b) => b,
        Capacity::Unbounded => n,
    };
    let mut walk = Walk {
        instance,
        cap,
        pred_mask,
        blocks: Vec::new(),
        block_of: vec![0; n],
        limit: limits.max_schedules,
        count: 0,
        visit,
    };
    walk.partitions(0)?;
    Ok(walk.count)
}

fn to_schedule(instance: &Instance, batches: &[&[usize]]) -> Schedule {
    let mut s = Schedule::from_batches(
        instance.n(),
        batches.iter().map(|b| b.iter().map(|&j| JobId(j)).collect()).collect(),
    );
    s.timetable(instance);
    s
}

/// Every feasible schedule, timetabled.
pub fn enumerate_feasible(instance: &Instance, limits: &EnumerationLimits) -> Result<Vec<Schedule>, OracleError> {
    let mut out = Vec::new();
    for_each_feasible(instance, limits, |batches| out.push(to_schedule(instance, batches)))?;
    Ok(out)
}

/// Makespan and maximum cost computed directly from a batch sequence.
pub fn evaluate(instance: &Instance, batches: &[&[usize]]) -> (Time, Cost) {
    let mut t = 0;
    let mut f = Cost::MIN;
    for batch in batches {
        t += instance.setup();
        t += batch.iter().map(|&j| instance.p(j)).sum::<Time>();
        for &j in batch.iter() {
            f = f.max(instance.cost(j, t));
        }
    }
    (t, f)
}

#[derive(Clone, Debug)]
pub struct OracleFront {
    /// Non-dominated `(makespan, max_cost)` pairs by increasing makespan, each
    /// with a witness schedule.
    pub points: Vec<(Time, Cost, Schedule)>,
    pub min_f_max: Cost,
    pub schedules: u64,
}

impl OracleFront {
    pub fn pairs(&self) -> Vec<(Time, Cost)> {
        self.points.iter().map(|(c, f, _)| (*c, *f)).collect()
    }
}

pub fn oracle_pareto(instance: &Instance, limits: &EnumerationLimits) -> Result<OracleFront, OracleError> {
    // best maximum cost per makespan
    let mut best: std::collections::BTreeMap<Time, (Cost, Vec<Vec<usize>>)> = Default::default();
    let schedules = for_each_feasible(instance, limits, |batches| {
        let (c, f) = evaluate(instance, batches);
        let better = best.get(&c).is_none_or(|&(bf, _)| f < bf);
        if better {
            best.insert(c, (f, batches.iter().map(|b| b.to_vec()).collect()));
        }
    })?;
    let mut points = Vec::new();
    let mut floor = Cost::MAX;
    for (c, (f, batches)) in best {
        if f < floor {
            floor = f;
            let refs: Vec<&[usize]> = batches.iter().map(Vec::as_slice).collect();
            points.push((c, f, to_schedule(instance, &refs)));
        }
    }
    Ok(OracleFront { points, min_f_max: floor, schedules })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CostSpec, Job};

    fn instance(ps: &[i64], dues: &[i64], s: i64, cap: Capacity, edges: &[(usize, usize)]) -> Instance {
        let jobs = ps
            .iter()
            .zip(dues)
            .enumerate()
            .map(|(j, (&p, &due))| Job { id: JobId(j), p, cost: CostSpec::Lateness { due } })
            .collect();
        let edges = edges.iter().map(|&(a, b)| (JobId(a), JobId(b))).collect();
        Instance::new(jobs, s, cap, edges).unwrap()
    }

    fn count(inst: &Instance) -> u64 {
        for_each_feasible(inst, &EnumerationLimits::default(), |_| {}).unwrap()
    }

    /// Ordered set partitions of `n` elements with every block of size at most `cap`.
    fn closed_form(n: usize, cap: usize) -> u64 {
        // a(n) = sum_{k=1..min(cap,n)} C(n,k) a(n-k)
        let mut a = vec![0u64; n + 1];
        a[0] = 1;
        for m in 1..=n {
            let mut binom = 1u64;
            for k in 1..=m.min(cap) {
                binom = binom * (m - k + 1) as u64 / k as u64;
                a[m] += binom * a[m - k];
            }
        }
        a[n]
    }

    #[test]
    fn worked_counts() {
        let a = instance(&[1, 3], &[3, 20], 2, Capacity::Bounded(2), &[]);
        assert_eq!(count(&a), 3);
        let chain = instance(&[1, 1], &[0, 0], 1, Capacity::Unbounded, &[(0, 1)]);
        assert_eq!(count(&chain), 1);
        let b = instance(&[3, 1, 2], &[5, 6, 10], 2, Capacity::Bounded(2), &[]);
        assert_eq!(count(&b), 12);
    }

    #[test]
    fn counts_match_closed_form() {
        for n in 1..=4 {
            for cap in 1..=n {
                let inst = instance(&vec![1; n], &vec![0; n], 1, Capacity::Bounded(cap), &[]);
                assert_eq!(count(&inst), closed_form(n, cap), "n={n} cap={cap}");
            }
        }
        // hand counts: ordered Bell numbers 1, 3, 13, 75
        assert_eq!([1, 2, 3, 4].map(|n| closed_form(n, n)), [1, 3, 13, 75]);
    }

    #[test]
    fn no_duplicates_and_all_valid() {
        let inst = instance(&[2, 1, 3, 1], &[4, 5, 9, 2], 1, Capacity::Unbounded, &[(0, 2), (1, 3)]);
        let all = enumerate_feasible(&inst, &EnumerationLimits::default()).unwrap();
        let mut keys: Vec<String> = all.iter().map(|s| s.encode_batches()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), all.len());
        assert!(all.iter().all(|s| s.validate(&inst).is_empty()));
    }

    #[test]
    fn worked_frontiers() {
        let lim = EnumerationLimits::default();
        let a = instance(&[1, 3], &[3, 20], 2, Capacity::Bounded(2), &[]);
        assert_eq!(oracle_pareto(&a, &lim).unwrap().pairs(), vec![(6, 3), (8, 0)]);
        let b = instance(&[3, 1, 2], &[5, 6, 10], 2, Capacity::Bounded(2), &[]);
        assert_eq!(oracle_pareto(&b, &lim).unwrap().pairs(), vec![(10, 1)]);
        let c = instance(&[2, 1, 1], &[3, 10, 10], 1, Capacity::Unbounded, &[(0, 1), (0, 2)]);
        let front = oracle_pareto(&c, &lim).unwrap();
        assert_eq!(front.pairs(), vec![(6, 0)]);
        assert_eq!(front.min_f_max, 0);
    }

    #[test]
    fn size_limits() {
        let big = instance(&[1; 9], &[0; 9], 0, Capacity::Bounded(2), &[]);
        assert_eq!(
            for_each_feasible(&big, &EnumerationLimits::default(), |_| {}),
            Err(OracleError::TooManyJobs { n: 9, max: 8 })
        );
        let lim = EnumerationLimits { max_schedules: 10, ..Default::default() };
        let small = instance(&[1; 4], &[0; 4], 0, Capacity::Bounded(3), &[]);
        assert_eq!(for_each_feasible(&small, &lim, |_| {}), Err(OracleError::TooManySchedules(10)));
    }
}

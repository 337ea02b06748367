//! Jobs, cost functions, instances and schedules on a serial-batch machine.
//!
//! A schedule has exactly `n` batch slots. Empty slots form a prefix and the
//! nonempty ones a contiguous suffix, so slot `n` (index `n - 1`) always holds
//! the last batch. Times follow the no-idle recurrence: an empty slot costs
//! neither setup nor processing, a nonempty one starts `s` after the previous
//! slot completes and runs for the sum of its jobs' processing times.

use std::cmp::{Ordering, Reverse};
use std::fmt;

use crate::error::InstanceError;

pub type Time = i64;
pub type Cost = i64;

/// Zero-based job index. Displayed 1-based, matching instance files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JobId(pub usize);

impl JobId {
    pub fn index(self) -> usize {
        self.0
    }

    /// The 1-based id used in files and traces.
    pub fn external(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for JobId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.external())
    }
}

/// A regular (non-decreasing) cost function of a job's completion time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CostSpec {
    Lateness { due: Time },
    Tardiness { due: Time },
    WeightedCompletion { w: i64 },
    Affine { a: i64, c: i64 },
    /// Piecewise constant: the value of the last breakpoint at or before `t`,
    /// and zero before the first breakpoint.
    StepTable { breakpoints: Vec<(Time, Cost)> },
}

impl CostSpec {
    pub fn eval(&self, t: Time) -> Cost {
        match self {
            CostSpec::Lateness { due } => t - due,
            CostSpec::Tardiness { due } => (t - due).max(0),
            CostSpec::WeightedCompletion { w } => w * t,
            CostSpec::Affine { a, c } => a * t + c,
            CostSpec::StepTable { breakpoints } => {
                match breakpoints.partition_point(|&(bt, _)| bt <= t) {
                    0 => 0,
                    k => breakpoints[k - 1].1,
                }
            }
        }
    }

    /// Checks the variant constraints that make `eval` non-decreasing.
    pub fn check_regular(&self) -> Result<(), String> {
        match self {
            CostSpec::Lateness { .. } | CostSpec::Tardiness { .. } => Ok(()),
            CostSpec::WeightedCompletion { w } if *w < 0 => {
                Err(format!("weighted_completion weight {w} is negative"))
            }
            CostSpec::Affine { a, .. } if *a < 0 => Err(format!("affine slope {a} is negative")),
            CostSpec::StepTable { breakpoints } => {
                if let Some(&(_, first)) = breakpoints.first() {
                    if first < 0 {
                        return Err(format!("step value {first} drops below the zero base"));
                    }
                }
                for w in breakpoints.windows(2) {
                    if w[1].0 <= w[0].0 {
                        return Err(format!("step times {} and {} are not increasing", w[0].0, w[1].0));
                    }
                    if w[1].1 < w[0].1 {
                        return Err(format!("step values {} then {} decrease", w[0].1, w[1].1));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Upper bound on the maximum cost. A schedule is admitted when every job's
/// cost is strictly below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    Finite(Cost),
    Unbounded,
}

impl Threshold {
    #[inline]
    pub fn admits(self, cost: Cost) -> bool {
        match self {
            Threshold::Finite(y) => cost < y,
            Threshold::Unbounded => true,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(y) => write!(f, "{y}"),
            Threshold::Unbounded => f.write_str("+inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub id: JobId,
    pub p: Time,
    pub cost: CostSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Capacity {
    Bounded(usize),
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    jobs: Vec<Job>,
    setup: Time,
    capacity: Capacity,
    precedence: Vec<(JobId, JobId)>,
}

impl Instance {
    /// Validates and builds an instance. Jobs may be given in any order; they
    /// are stored sorted by id and the ids must cover `0..n` exactly.
    pub fn new(
        mut jobs: Vec<Job>,
        setup: Time,
        capacity: Capacity,
        precedence: Vec<(JobId, JobId)>,
    ) -> Result<Self, InstanceError> {
        if jobs.is_empty() {
            return Err(InstanceError::NoJobs);
        }
        if setup < 0 {
            return Err(InstanceError::NegativeSetup(setup));
        }
        jobs.sort_by_key(|j| j.id);
        for (pos, job) in jobs.iter().enumerate() {
            if job.id.index() != pos {
                return Err(InstanceError::JobIds { expected: pos + 1, found: job.id.external() });
            }
            if job.p < 1 {
                return Err(InstanceError::ProcessingTime { job: job.id.external(), p: job.p });
            }
            job.cost
                .check_regular()
                .map_err(|reason| InstanceError::IrregularCost { job: job.id.external(), reason })?;
        }
        let n = jobs.len();
        match capacity {
            Capacity::Bounded(0) => return Err(InstanceError::ZeroCapacity),
            Capacity::Bounded(_) if !precedence.is_empty() => {
                return Err(InstanceError::BoundedWithPrecedence)
            }
            _ => {}
        }
        let mut edges = precedence;
        for &(a, b) in &edges {
            for end in [a, b] {
                if end.index() >= n {
                    return Err(InstanceError::UnknownJob(end.external()));
                }
            }
            if a == b {
                return Err(InstanceError::SelfLoop(a.external()));
            }
        }
        edges.sort();
        edges.dedup();
        let instance = Instance { jobs, setup, capacity, precedence: edges };
        if crate::prec::PrecGraph::from_instance(&instance).is_err() {
            return Err(InstanceError::Cycle);
        }
        Ok(instance)
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn job(&self, id: JobId) -> &Job {
        &self.jobs[id.index()]
    }

    pub fn setup(&self) -> Time {
        self.setup
    }

    pub fn capacity(&self) -> Capacity {
        self.capacity
    }

    /// Largest admissible batch size, `n` when capacity is unbounded.
    pub fn batch_limit(&self) -> usize {
        match self.capacity {
            Capacity::Bounded(b) => b,
            Capacity::Unbounded => self.n(),
        }
    }

    pub fn precedence(&self) -> &[(JobId, JobId)] {
        &self.precedence
    }

    #[inline]
    pub fn p(&self, j: usize) -> Time {
        self.jobs[j].p
    }

    #[inline]
    pub fn cost(&self, j: usize, t: Time) -> Cost {
        self.jobs[j].cost.eval(t)
    }

    /// Strict total order used wherever jobs compete for a batch: longer
    /// processing time first, then smaller id.
    #[inline]
    pub fn key(&self, j: usize) -> (Time, Reverse<usize>) {
        (self.jobs[j].p, Reverse(j))
    }

    #[inline]
    pub fn cmp_key(&self, a: usize, b: usize) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    pub fn total_processing(&self) -> Time {
        self.jobs.iter().map(|j| j.p).sum()
    }
}

/// `n` batch slots in time order with derived start and completion times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    slots: Vec<Vec<JobId>>,
    start: Vec<Time>,
    completion: Vec<Time>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SlotCount { expected: usize, found: usize },
    Gap(usize),
    Capacity { slot: usize, size: usize, limit: usize },
    Missing(JobId),
    Duplicate(JobId),
    UnknownJob(JobId),
    Precedence { pred: JobId, succ: JobId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SlotCount { expected, found } => {
                write!(f, "schedule has {found} slots, expected {expected}")
            }
            Violation::Gap(s) => write!(f, "slot {} is empty after a nonempty slot", s + 1),
            Violation::Capacity { slot, size, limit } => {
                write!(f, "slot {} holds {size} jobs, capacity {limit}", slot + 1)
            }
            Violation::Missing(j) => write!(f, "job {j} is not scheduled"),
            Violation::Duplicate(j) => write!(f, "job {j} is scheduled twice"),
            Violation::UnknownJob(j) => write!(f, "job {j} does not exist"),
            Violation::Precedence { pred, succ } => {
                write!(f, "job {pred} must finish before job {succ} starts")
            }
        }
    }
}

impl Schedule {
    /// Builds an untimed schedule; call [`Schedule::timetable`] before reading times.
    pub fn from_slots(slots: Vec<Vec<JobId>>) -> Self {
        let n = slots.len();
        Schedule { slots, start: vec![0; n], completion: vec![0; n] }
    }

    /// Places `batches` (earliest first) in the last slots of an `n`-slot schedule.
    pub fn from_batches(n: usize, batches: Vec<Vec<JobId>>) -> Self {
        assert!(batches.len() <= n, "more batches than slots");
        let mut slots = vec![Vec::new(); n - batches.len()];
        slots.extend(batches);
        Self::from_slots(slots)
    }

    pub fn n_slots(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Vec<JobId>] {
        &self.slots
    }

    pub fn slot(&self, i: usize) -> &[JobId] {
        &self.slots[i]
    }

    pub fn start(&self, i: usize) -> Time {
        self.start[i]
    }

    pub fn completion(&self, i: usize) -> Time {
        self.completion[i]
    }

    pub fn completions(&self) -> &[Time] {
        &self.completion
    }

    /// Nonempty slots, earliest first.
    pub fn batches(&self) -> impl Iterator<Item = &[JobId]> {
        self.slots.iter().filter(|s| !s.is_empty()).map(Vec::as_slice)
    }

    pub fn batch_count(&self) -> usize {
        self.slots.iter().filter(|s| !s.is_empty()).count()
    }

    /// Fills start and completion times for every slot.
    pub fn timetable(&mut self, instance: &Instance) {
        let mut t = 0;
        for (i, slot) in self.slots.iter().enumerate() {
            if !slot.is_empty() {
                t += instance.setup();
            }
            self.start[i] = t;
            t += slot.iter().map(|j| instance.p(j.index())).sum::<Time>();
            self.completion[i] = t;
        }
    }

    /// Timetables after checking the structural rules (suffix and capacity).
    pub fn timetabled(mut self, instance: &Instance) -> Result<Self, Vec<Violation>> {
        let limit = instance.batch_limit();
        let mut problems = Vec::new();
        if let Some(first) = self.slots.iter().position(|s| !s.is_empty()) {
            if let Some(gap) = self.slots[first..].iter().position(Vec::is_empty) {
                problems.push(Violation::Gap(first + gap));
            }
        }
        for (i, slot) in self.slots.iter().enumerate() {
            if slot.len() > limit {
                problems.push(Violation::Capacity { slot: i, size: slot.len(), limit });
            }
        }
        if problems.is_empty() {
            self.timetable(instance);
            Ok(self)
        } else {
            Err(problems)
        }
    }

    pub fn makespan(&self) -> Time {
        self.completion.last().copied().unwrap_or(0)
    }

    /// `(makespan, max_cost)` of a timetabled schedule.
    pub fn objectives(&self, instance: &Instance) -> (Time, Cost) {
        let f_max = self
            .slots
            .iter()
            .zip(&self.completion)
            .flat_map(|(slot, &c)| slot.iter().map(move |j| instance.cost(j.index(), c)))
            .max()
            .unwrap_or(Cost::MIN);
        (self.makespan(), f_max)
    }

    /// Slot index of every job, `None` for unscheduled ones.
    pub fn slot_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut at = vec![None; n];
        for (i, slot) in self.slots.iter().enumerate() {
            for j in slot {
                if j.index() < n {
                    at[j.index()] = Some(i);
                }
            }
        }
        at
    }

    /// Lists every rule the schedule breaks for `instance`; empty when valid.
    pub fn validate(&self, instance: &Instance) -> Vec<Violation> {
        let n = instance.n();
        let mut problems = Vec::new();
        if self.slots.len() != n {
            problems.push(Violation::SlotCount { expected: n, found: self.slots.len() });
        }
        if let Err(mut structural) = self.clone().timetabled(instance) {
            problems.append(&mut structural);
        }
        let mut seen = vec![false; n];
        for j in self.slots.iter().flatten() {
            if j.index() >= n {
                problems.push(Violation::UnknownJob(*j));
            } else if std::mem::replace(&mut seen[j.index()], true) {
                problems.push(Violation::Duplicate(*j));
            }
        }
        problems.extend(
            seen.iter().enumerate().filter(|(_, &s)| !s).map(|(j, _)| Violation::Missing(JobId(j))),
        );
        let at = self.slot_of(n);
        for &(pred, succ) in instance.precedence() {
            if let (Some(a), Some(b)) = (at[pred.index()], at[succ.index()]) {
                if a >= b {
                    problems.push(Violation::Precedence { pred, succ });
                }
            }
        }
        problems
    }

    /// `"1.2|3"`: ids within a batch joined by `.`, batches joined by `|`.
    pub fn encode_batches(&self) -> String {
        self.batches()
            .map(|b| {
                let mut ids: Vec<usize> = b.iter().map(|j| j.external()).collect();
                ids.sort_unstable();
                ids.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Same slot contents, ignoring order within each batch.
    pub fn same_batches(&self, other: &Schedule) -> bool {
        self.slots.len() == other.slots.len()
            && self.slots.iter().zip(&other.slots).all(|(a, b)| {
                let mut a = a.clone();
                let mut b = b.clone();
                a.sort_unstable();
                b.sort_unstable();
                a == b
            })
    }
}

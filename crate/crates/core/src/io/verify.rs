//! Oracle differential harness.
//!
//! Instance `k` of a run uses seed `seed + k`; its size is drawn from the
//! bit-complemented seed so that size and contents come from separate streams.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;

use crate::bounded::{aux1, form_schedule, BoundedSolverState};
use crate::error::OracleError;
use crate::io::generate::{gen_random, Profile};
use crate::model::{Capacity, Instance, Threshold, Time};
use crate::oracle::{oracle_pareto, EnumerationLimits};
use crate::pareto::{solve, ParetoFront};
use crate::trace::{Event, NoTrace, Observer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `small` profile, checked with the bounded solver.
    Bounded,
    /// `prec` profile, checked with the precedence solver.
    Precedence,
}

impl Variant {
    pub fn profile(self) -> Profile {
        match self {
            Variant::Bounded => Profile::Small,
            Variant::Precedence => Profile::Prec,
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bounded" => Ok(Variant::Bounded),
            "prec" => Ok(Variant::Precedence),
            other => Err(format!("unknown variant '{other}' (bounded, prec)")),
        }
    }
}

/// Findings for one instance. Counters are mismatches; zero is clean.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceCheck {
    pub n: usize,
    pub frontier: u32,
    pub pi_star: u32,
    pub differential: u32,
    pub rebuild: u32,
    pub moves: u32,
    pub times: u32,
    pub order: u32,
    pub invalid: u32,
    pub y_steps: u32,
    pub oracle_error: Option<OracleError>,
}

impl InstanceCheck {
    pub fn passed(&self) -> bool {
        self.oracle_error.is_none()
            && self.frontier
                + self.pi_star
                + self.differential
                + self.rebuild
                + self.moves
                + self.times
                + self.order
                + self.invalid
                == 0
    }
}

/// Counts completion times that went down since the previous report.
#[derive(Default)]
struct TimesWatch {
    last: Vec<Time>,
    regressions: u32,
}

impl Observer for TimesWatch {
    fn event(&mut self, event: Event<'_>) {
        if let Event::Times(t) = event {
            if self.last.len() == t.len() {
                self.regressions += t.iter().zip(&self.last).filter(|(now, before)| now < before).count() as u32;
            }
            self.last.clear();
            self.last.extend_from_slice(t);
        }
    }
}

fn frontier_checks(instance: &Instance, front: &ParetoFront, check: &mut InstanceCheck) {
    for w in front.points.windows(2) {
        if !(w[0].c_max < w[1].c_max && w[0].f_max > w[1].f_max) {
            check.order += 1;
        }
    }
    let all = front.points.iter().map(|p| &p.schedule).chain(std::iter::once(&front.pi_star));
    for s in all {
        if !s.validate(instance).is_empty() {
            check.invalid += 1;
        }
    }
    for p in &front.points {
        if p.schedule.objectives(instance) != (p.c_max, p.f_max) {
            check.invalid += 1;
        }
    }
    if front.points.len() > instance.n() {
        check.order += 1;
    }
    let n = instance.n() as u64;
    if front.stats.csf_moves > n * n.saturating_sub(1) {
        check.moves += 1;
    }
}

/// Replays the threshold sequence, answering every query with both the
/// incremental solver and a fresh reference solve on a copy of the same
/// family.
fn differential(instance: &Instance, check: &mut InstanceCheck) {
    let b = instance.batch_limit();
    let mut state = BoundedSolverState::new(instance);
    let mut y = Threshold::Unbounded;
    loop {
        check.y_steps += 1;
        let mut reference = state.csf().clone();
        let expected = aux1(instance, &mut reference, b, y, &mut NoTrace);
        let got = state.improaux1(y, &mut NoTrace);
        match (&got, &expected) {
            (Some(g), Some(e)) => {
                if g.objectives(instance) != e.objectives(instance) {
                    check.differential += 1;
                }
                match form_schedule(instance, state.csf(), b) {
                    Some(rebuilt) if g.same_batches(&rebuilt) => {}
                    _ => check.rebuild += 1,
                }
            }
            (None, None) => {}
            _ => check.differential += 1,
        }
        match got {
            Some(g) => y = Threshold::Finite(g.objectives(instance).1),
            None => return,
        }
    }
}

/// Runs every check on one instance.
pub fn check_instance(instance: &Instance, limits: &EnumerationLimits) -> InstanceCheck {
    let mut check = InstanceCheck { n: instance.n(), ..Default::default() };
    let mut watch = TimesWatch::default();
    let front = solve(instance, &mut watch);
    check.times = watch.regressions;
    frontier_checks(instance, &front, &mut check);
    if instance.capacity() != Capacity::Unbounded {
        differential(instance, &mut check);
    }
    match oracle_pareto(instance, limits) {
        Ok(truth) => {
            if truth.pairs() != front.pairs() {
                check.frontier += 1;
            }
            if front.pi_star.objectives(instance).1 != truth.min_f_max {
                check.pi_star += 1;
            }
        }
        Err(e) => check.oracle_error = Some(e),
    }
    check
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub count: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub seed: u64,
    pub variant: Variant,
    /// Worker threads; 0 picks the available parallelism.
    pub threads: usize,
    pub limits: EnumerationLimits,
}

impl VerifyConfig {
    pub fn new(variant: Variant, count: usize, min_n: usize, max_n: usize, seed: u64) -> Self {
        VerifyConfig { count, min_n, max_n, seed, variant, threads: 0, limits: EnumerationLimits::default() }
    }

    pub fn instance(&self, k: usize) -> (u64, Instance) {
        let seed = self.seed.wrapping_add(k as u64);
        let n = Pcg64Mcg::seed_from_u64(!seed).gen_range(self.min_n..=self.max_n);
        (seed, gen_random(n, seed, self.variant.profile()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub instances: usize,
    pub passed: usize,
    pub frontier: u64,
    pub pi_star: u64,
    pub differential: u64,
    pub rebuild: u64,
    pub moves: u64,
    pub times: u64,
    pub order: u64,
    pub invalid: u64,
    pub oracle_errors: u64,
    pub y_steps: u64,
    pub first_failing_seed: Option<u64>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.passed == self.instances
    }

    fn absorb(&mut self, seed: u64, c: &InstanceCheck) {
        self.instances += 1;
        self.frontier += c.frontier as u64;
        self.pi_star += c.pi_star as u64;
        self.differential += c.differential as u64;
        self.rebuild += c.rebuild as u64;
        self.moves += c.moves as u64;
        self.times += c.times as u64;
        self.order += c.order as u64;
        self.invalid += c.invalid as u64;
        self.oracle_errors += c.oracle_error.is_some() as u64;
        self.y_steps += c.y_steps as u64;
        if c.passed() {
            self.passed += 1;
        } else if self.first_failing_seed.is_none() {
            self.first_failing_seed = Some(seed);
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instances: {}", self.instances)?;
        writeln!(f, "passed: {}", self.passed)?;
        writeln!(f, "failed: {}", self.instances - self.passed)?;
        writeln!(f, "frontier mismatches: {}", self.frontier)?;
        writeln!(f, "pi_star mismatches: {}", self.pi_star)?;
        writeln!(f, "solver disagreements: {} over {} thresholds", self.differential, self.y_steps)?;
        writeln!(f, "rebuild mismatches: {}", self.rebuild)?;
        writeln!(f, "move bound violations: {}", self.moves)?;
        writeln!(f, "completion time regressions: {}", self.times)?;
        writeln!(f, "frontier order violations: {}", self.order)?;
        writeln!(f, "invalid schedules: {}", self.invalid)?;
        writeln!(f, "oracle errors: {}", self.oracle_errors)?;
        match self.first_failing_seed {
            Some(s) => writeln!(f, "first failing seed: {s}"),
            None => writeln!(f, "first failing seed: none"),
        }
    }
}

/// Checks `config.count` generated instances, spreading them over worker
/// threads. Results are folded in instance order, so the report does not
/// depend on the thread count.
pub fn run_verify(config: &VerifyConfig) -> VerifyReport {
    let threads = match config.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        t => t,
    }
    .min(config.count.max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<(u64, InstanceCheck)>>> = Mutex::new(vec![None; config.count]);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= config.count {
                    break;
                }
                let (seed, instance) = config.instance(k);
                let check = check_instance(&instance, &config.limits);
                results.lock().expect("no worker panicked")[k] = Some((seed, check));
            });
        }
    });
    let mut report = VerifyReport::default();
    for (seed, check) in results.into_inner().expect("no worker panicked").into_iter().flatten() {
        report.absorb(seed, &check);
    }
    report
}

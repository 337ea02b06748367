//! Frontier drivers.
//!
//! Starting from an unbounded threshold, each query returns the
//! minimum-makespan schedule whose costs all lie below the threshold; the
//! threshold then drops to that schedule's maximum cost. A schedule is kept
//! as a frontier point once the next query needs a strictly larger makespan,
//! and the last feasible schedule closes the frontier.

use std::fmt::Write as _;

use crate::bounded::{aux1, BoundedSolverState};
use crate::csf::Csf;
use crate::model::{Capacity, Cost, Instance, Schedule, Threshold, Time};
use crate::prec::PrecSolverState;
use crate::trace::{Event, NoTrace, Observer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParetoPoint {
    pub c_max: Time,
    pub f_max: Cost,
    pub schedule: Schedule,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Threshold queries issued, including the final infeasible one.
    pub queries: u64,
    /// Component relocations across the run.
    pub csf_moves: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParetoFront {
    /// Makespan strictly increasing, maximum cost strictly decreasing.
    pub points: Vec<ParetoPoint>,
    /// Minimizes maximum cost alone.
    pub pi_star: Schedule,
    pub stats: RunStats,
}

pub const CSV_HEADER: &str = "c_max,f_max,batches";

impl ParetoFront {
    pub fn pairs(&self) -> Vec<(Time, Cost)> {
        self.points.iter().map(|p| (p.c_max, p.f_max)).collect()
    }

    /// `c_max,f_max,batches` rows, one per point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for p in &self.points {
            let _ = writeln!(out, "{},{},{}", p.c_max, p.f_max, p.schedule.encode_batches());
        }
        out
    }
}

fn drive(instance: &Instance, mut query: impl FnMut(Threshold) -> Option<Schedule>) -> (Vec<ParetoPoint>, Schedule, u64) {
    let mut y = Threshold::Unbounded;
    let mut points = Vec::new();
    let mut last: Option<ParetoPoint> = None;
    let mut queries = 0;
    loop {
        queries += 1;
        match query(y) {
            Some(schedule) => {
                let (c_max, f_max) = schedule.objectives(instance);
                let next = ParetoPoint { c_max, f_max, schedule };
                if let Some(prev) = last.take() {
                    if prev.c_max < c_max {
                        points.push(prev);
                    }
                }
                y = Threshold::Finite(f_max);
                last = Some(next);
            }
            None => {
                let final_point = last.expect("an unbounded threshold always admits a schedule");
                let pi_star = final_point.schedule.clone();
                points.push(final_point);
                return (points, pi_star, queries);
            }
        }
    }
}

/// Frontier for a batch-capacity instance without precedence, using the
/// warm-started incremental solver.
///
/// Panics if the instance has precedence constraints.
pub fn main1(instance: &Instance) -> ParetoFront {
    main1_observed(instance, &mut NoTrace)
}

pub fn main1_observed(instance: &Instance, obs: &mut impl Observer) -> ParetoFront {
    assert!(instance.precedence().is_empty(), "main1 does not handle precedence constraints");
    let mut state = BoundedSolverState::new(instance);
    let (points, pi_star, queries) = drive(instance, |y| {
        let out = state.improaux1(y, obs);
        if out.is_some() {
            obs.event(Event::Family(state.csf()));
        }
        out
    });
    ParetoFront { points, pi_star, stats: RunStats { queries, csf_moves: state.csf().move_count() } }
}

/// Same frontier as [`main1`], solving every threshold from scratch with the
/// reference solver. Kept as a baseline for benchmarks.
pub fn main1_naive(instance: &Instance) -> ParetoFront {
    assert!(instance.precedence().is_empty(), "main1 does not handle precedence constraints");
    let b = instance.batch_limit();
    let mut moves = 0;
    let (points, pi_star, queries) = drive(instance, |y| {
        let mut csf = Csf::initial(instance);
        let out = aux1(instance, &mut csf, b, y, &mut NoTrace);
        moves += csf.move_count();
        out
    });
    ParetoFront { points, pi_star, stats: RunStats { queries, csf_moves: moves } }
}

/// Frontier for an unbounded-capacity instance under strict precedence.
///
/// Panics if the capacity is bounded.
pub fn main2(instance: &Instance) -> ParetoFront {
    main2_observed(instance, &mut NoTrace)
}

pub fn main2_observed(instance: &Instance, obs: &mut impl Observer) -> ParetoFront {
    assert_eq!(instance.capacity(), Capacity::Unbounded, "main2 needs unbounded capacity");
    let mut state = PrecSolverState::new(instance);
    let (points, pi_star, queries) = drive(instance, |y| {
        let out = state.aux2(y, obs);
        if out.is_some() {
            obs.event(Event::Family(state.csf()));
        }
        out
    });
    ParetoFront { points, pi_star, stats: RunStats { queries, csf_moves: state.csf().move_count() } }
}

/// [`main1`] for bounded capacity, [`main2`] otherwise.
pub fn solve(instance: &Instance, obs: &mut impl Observer) -> ParetoFront {
    match instance.capacity() {
        Capacity::Bounded(_) => main1_observed(instance, obs),
        Capacity::Unbounded => main2_observed(instance, obs),
    }
}

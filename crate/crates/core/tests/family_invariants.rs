//! Oracle-backed checks of the family invariants on small instances.

use std::collections::BTreeSet;

use proptest::prelude::*;
use sbatch_core::bounded::{aux1, form_schedule, BoundedSolverState};
use sbatch_core::csf::Csf;
use sbatch_core::io::generate::{gen_random, Profile};
use sbatch_core::oracle::{enumerate_feasible, EnumerationLimits};
use sbatch_core::prec::PrecSolverState;
use sbatch_core::trace::NoTrace;
use sbatch_core::{Instance, JobId, Schedule, Threshold, Time};

fn satisfies(csf: &Csf, s: &Schedule) -> bool {
    s.slot_of(csf.n()).iter().enumerate().all(|(j, slot)| slot.is_some_and(|i| i <= csf.ordinal(j)))
}

fn below(instance: &Instance, s: &Schedule, y: Threshold) -> bool {
    let (_, f) = s.objectives(instance);
    y.admits(f)
}

fn admissible(instance: &Instance, all: &[Schedule], csf: &Csf, y: Threshold) -> BTreeSet<String> {
    all.iter().filter(|s| satisfies(csf, s) && below(instance, s, y)).map(|s| s.encode_batches()).collect()
}

fn min_makespan(instance: &Instance, all: &[Schedule], y: Threshold) -> Option<Time> {
    all.iter().filter(|s| below(instance, s, y)).map(Schedule::makespan).min()
}

/// Walks the threshold sequence of one bounded run and checks every step
/// against the full schedule list.
fn walk_bounded(instance: &Instance) {
    let all = enumerate_feasible(instance, &EnumerationLimits::default()).unwrap();
    let mut state = BoundedSolverState::new(instance);
    let mut y = Threshold::Unbounded;
    loop {
        let before = state.csf().clone();
        let kept_before = admissible(instance, &all, &before, y);
        let got = state.improaux1(y, &mut NoTrace);
        assert_eq!(got.as_ref().map(Schedule::makespan), min_makespan(instance, &all, y), "optimum at y={y}");
        let Some(s) = got else { return };

        let kept_after = admissible(instance, &all, state.csf(), y);
        assert_eq!(kept_before, kept_after, "threshold set changed at y={y}");

        assert!(satisfies(state.csf(), &s));
        for other in all.iter().filter(|o| satisfies(state.csf(), o)) {
            assert!(s.batch_count() <= other.batch_count());
            for i in 0..instance.n() {
                assert!(s.completion(i) <= other.completion(i), "slot {i} beaten by {}", other.encode_batches());
            }
        }
        y = Threshold::Finite(s.objectives(instance).1);
    }
}

fn walk_precedence(instance: &Instance) {
    let all = enumerate_feasible(instance, &EnumerationLimits::default()).unwrap();
    let mut state = PrecSolverState::new(instance);
    let mut y = Threshold::Unbounded;
    loop {
        let got = state.aux2(y, &mut NoTrace);
        assert_eq!(got.as_ref().map(Schedule::makespan), min_makespan(instance, &all, y), "optimum at y={y}");
        let Some(s) = got else { return };
        assert!(s.validate(instance).is_empty());
        for (pred, succ) in instance.precedence() {
            assert!(state.csf().ordinal(pred.index()) < state.csf().ordinal(succ.index()));
        }
        y = Threshold::Finite(s.objectives(instance).1);
    }
}

#[test]
fn bounded_steps_against_enumeration() {
    for seed in 0..300 {
        let n = 2 + (seed as usize % 5);
        walk_bounded(&gen_random(n, seed, Profile::Small));
    }
}

#[test]
fn precedence_steps_against_enumeration() {
    for seed in 0..300 {
        let n = 2 + (seed as usize % 5);
        walk_precedence(&gen_random(n, seed, Profile::Prec));
    }
}

/// A family from arbitrary component choices, or `None` when the greedy
/// construction has no schedule for it.
fn family(instance: &Instance, picks: &[usize]) -> Option<Csf> {
    let n = instance.n();
    let mut members = vec![Vec::new(); n];
    for (j, &c) in picks.iter().enumerate() {
        members[c % n].push(JobId(j));
    }
    let csf = Csf::from_components(instance, &members).ok()?;
    form_schedule(instance, &csf, instance.batch_limit())?;
    Some(csf)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn solvers_agree_from_any_family(
        seed in 0u64..10_000,
        n in 2usize..9,
        picks in proptest::collection::vec(0usize..64, 8),
        y in prop_oneof![Just(None), (-40i64..60).prop_map(Some)],
    ) {
        let instance = gen_random(n, seed, Profile::Small);
        let csf = family(&instance, &picks[..n]);
        prop_assume!(csf.is_some());
        let csf = csf.unwrap();
        let y = y.map_or(Threshold::Unbounded, Threshold::Finite);
        let b = instance.batch_limit();

        let mut reference = csf.clone();
        let expected = aux1(&instance, &mut reference, b, y, &mut NoTrace);
        let mut state = BoundedSolverState::with_csf(&instance, csf).unwrap();
        let got = state.improaux1(y, &mut NoTrace);

        prop_assert_eq!(got.is_some(), expected.is_some());
        if let (Some(g), Some(e)) = (got, expected) {
            prop_assert_eq!(g.objectives(&instance), e.objectives(&instance));
            let rebuilt = form_schedule(&instance, state.csf(), b).unwrap();
            prop_assert!(g.same_batches(&rebuilt), "{} vs {}", g.encode_batches(), rebuilt.encode_batches());
            prop_assert!(g.validate(&instance).is_empty());
        }
    }
}

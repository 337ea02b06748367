use proptest::prelude::*;
use sbatch_core::io::generate::{gen_random, Profile};
use sbatch_core::io::{emit_instance, parse_instance};
use sbatch_core::trace::Event;
use sbatch_core::{solve, Capacity, CostSpec, Instance, Job, JobId, Schedule, Time};

fn cost_spec() -> impl Strategy<Value = CostSpec> {
    prop_oneof![
        (-50i64..50).prop_map(|due| CostSpec::Lateness { due }),
        (-50i64..50).prop_map(|due| CostSpec::Tardiness { due }),
        (0i64..5).prop_map(|w| CostSpec::WeightedCompletion { w }),
        (0i64..5, -50i64..50).prop_map(|(a, c)| CostSpec::Affine { a, c }),
        proptest::collection::btree_map(0i64..80, 0i64..10, 1..5).prop_map(|m| {
            let mut acc = 0;
            let breakpoints = m
                .into_iter()
                .map(|(t, step)| {
                    acc += step;
                    (t, acc)
                })
                .collect();
            CostSpec::StepTable { breakpoints }
        }),
    ]
}

fn instance() -> impl Strategy<Value = Instance> {
    (1usize..8, 0i64..6, prop_oneof![(1usize..9).prop_map(Some), Just(None)]).prop_flat_map(|(n, s, cap)| {
        let jobs = proptest::collection::vec((1i64..10, cost_spec()), n);
        let edges = proptest::collection::vec((0..n, 0..n), 0..n * 2);
        (jobs, edges).prop_map(move |(jobs, edges)| {
            let jobs = jobs
                .into_iter()
                .enumerate()
                .map(|(j, (p, cost))| Job { id: JobId(j), p, cost })
                .collect();
            let (capacity, edges) = match cap {
                Some(b) => (Capacity::Bounded(b), vec![]),
                None => (
                    Capacity::Unbounded,
                    edges.into_iter().filter(|(a, b)| a < b).map(|(a, b)| (JobId(a), JobId(b))).collect(),
                ),
            };
            Instance::new(jobs, s, capacity, edges).unwrap()
        })
    })
}

/// Random ordered partition of the jobs placed in the last slots.
fn schedule_for(instance: &Instance, labels: &[usize]) -> Schedule {
    let n = instance.n();
    let mut groups = vec![Vec::new(); n];
    for j in 0..n {
        groups[labels[j] % n].push(JobId(j));
    }
    let batches: Vec<Vec<JobId>> = groups.into_iter().filter(|g| !g.is_empty()).collect();
    Schedule::from_batches(n, batches)
}

proptest! {
    #[test]
    fn costs_are_non_decreasing(cost in cost_spec(), t1 in -100i64..200, dt in 0i64..100) {
        prop_assert!(cost.check_regular().is_ok());
        prop_assert!(cost.eval(t1) <= cost.eval(t1 + dt));
    }

    #[test]
    fn makespan_telescopes(inst in instance(), labels in proptest::collection::vec(0usize..8, 8)) {
        let mut s = schedule_for(&inst, &labels);
        s.timetable(&inst);
        let expected = s.batch_count() as Time * inst.setup() + inst.total_processing();
        prop_assert_eq!(s.makespan(), expected);
        let mut again = s.clone();
        again.timetable(&inst);
        prop_assert_eq!(again, s);
    }

    #[test]
    fn instance_files_round_trip(inst in instance()) {
        let text = emit_instance(&inst);
        let parsed = parse_instance(&text).unwrap();
        prop_assert_eq!(&parsed, &inst);
        prop_assert_eq!(emit_instance(&parsed), text);
    }

    #[test]
    fn frontier_shape(inst in instance()) {
        let mut last: Vec<Time> = Vec::new();
        let mut regressions = 0;
        let mut watch = |e: Event<'_>| {
            if let Event::Times(t) = e {
                if t.len() == last.len() {
                    regressions += t.iter().zip(&last).filter(|(a, b)| a < b).count();
                }
                last = t.to_vec();
            }
        };
        let front = solve(&inst, &mut watch);
        prop_assert_eq!(regressions, 0);
        prop_assert!(!front.points.is_empty() && front.points.len() <= inst.n());
        for w in front.points.windows(2) {
            prop_assert!(w[0].c_max < w[1].c_max && w[0].f_max > w[1].f_max);
        }
        for p in &front.points {
            prop_assert!(p.schedule.validate(&inst).is_empty());
            prop_assert_eq!(p.schedule.objectives(&inst), (p.c_max, p.f_max));
        }
        let n = inst.n() as u64;
        prop_assert!(front.stats.csf_moves <= n * (n - 1));
    }
}

#[test]
fn generated_files_round_trip() {
    for profile in [Profile::Paper, Profile::Small, Profile::Prec, Profile::PaperPrec] {
        for seed in 0..10 {
            let inst = gen_random(12, seed, profile);
            assert_eq!(parse_instance(&emit_instance(&inst)).unwrap(), inst);
        }
    }
}

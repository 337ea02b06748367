//! Solver instrumentation hooks.
//!
//! Solvers report relocations, bound updates and freshly computed slot
//! completion times to an [`Observer`]. [`TraceWriter`] renders the events as
//! the text lines printed by `sbatch pareto --trace`.

use std::io::Write;

use crate::csf::Csf;
use crate::model::{JobId, Threshold, Time};

#[derive(Clone, Debug)]
pub enum Event<'a> {
    /// A new threshold query starts.
    Query { y: Threshold },
    /// `job` moved from component `from` to component `to` (0-based).
    /// `case` is set by the incremental bounded solver.
    Move { job: JobId, from: usize, to: usize, case: Option<u8> },
    /// The admissible-slot bound of `job` dropped to `new` (0-based).
    Bound { job: JobId, new: usize },
    /// Completion time of every slot after the solver retimed its schedule.
    Times(&'a [Time]),
    /// The family after a query that returned a schedule.
    Family(&'a Csf),
}

pub trait Observer {
    fn event(&mut self, event: Event<'_>);
}

pub struct NoTrace;

impl Observer for NoTrace {
    #[inline]
    fn event(&mut self, _: Event<'_>) {}
}

impl<F: FnMut(Event<'_>)> Observer for F {
    fn event(&mut self, event: Event<'_>) {
        self(event)
    }
}

/// Writes the formatted events, one or more lines each; slot times are skipped.
pub struct TraceWriter<W: Write> {
    out: W,
}

impl<W: Write> TraceWriter<W> {
    pub fn new(out: W) -> Self {
        TraceWriter { out }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

pub fn format_event(event: &Event<'_>) -> Option<String> {
    match *event {
        Event::Move { job, from, to, case } => {
            let mut line = format!("move job={job} from={} to={}", from + 1, to + 1);
            if let Some(c) = case {
                line.push_str(&format!(" case={c}"));
            }
            Some(line)
        }
        Event::Bound { job, new } => Some(format!("bound job={job} new={}", new + 1)),
        Event::Query { y } => Some(format!("query y={y}")),
        Event::Times(_) => None,
        Event::Family(csf) => Some(format!("family\n{}", csf.to_string().trim_end())),
    }
}

impl<W: Write> Observer for TraceWriter<W> {
    fn event(&mut self, event: Event<'_>) {
        if let Some(line) = format_event(&event) {
            // trace output is best effort
            let _ = writeln!(self.out, "{line}");
        }
    }
}

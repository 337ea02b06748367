//! Exact Pareto frontier of makespan and maximum cost for scheduling jobs on
//! a single serial-batch machine.
//!
//! Two models are covered: batches of at most `b` jobs without precedence,
//! and unbounded batches under strict precedence. Both share one scheme:
//! repeatedly find the minimum-makespan schedule whose maximum cost lies
//! strictly below a threshold, then lower the threshold to the cost just
//! achieved. A candidate set family records for each job the latest batch
//! slot it may still occupy and carries that knowledge from one threshold to
//! the next, so the whole frontier costs `O(n^3)`.
//!
//! - [`model`]: jobs, regular cost functions, instances, schedules.
//! - [`csf`]: the candidate set family.
//! - [`bounded`]: capacity-`b` solvers (reference and incremental).
//! - [`prec`]: precedence graph, layered family, unbounded solver.
//! - [`pareto`]: frontier drivers.
//! - [`oracle`]: exhaustive enumeration for small instances.
//! - [`io`]: instance files, generators, verification and benchmark harnesses.

pub mod bounded;
pub mod csf;
pub mod error;
mod heap;
pub mod io;
pub mod model;
pub mod oracle;
pub mod pareto;
pub mod prec;
pub mod trace;

pub use error::{InstanceError, OracleError, ParseError};
pub use model::{Capacity, Cost, CostSpec, Instance, Job, JobId, Schedule, Threshold, Time, Violation};
pub use pareto::{main1, main1_naive, main2, solve, ParetoFront, ParetoPoint};

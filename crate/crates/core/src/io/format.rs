//! JSON instance files.
//!
//! ```json
//! {
//!   "setup": 2,
//!   "capacity": 2,
//!   "jobs": [
//!     { "id": 1, "p": 1, "cost": { "type": "lateness", "due": 3 } },
//!     { "id": 2, "p": 3, "cost": { "type": "step", "breakpoints": [[5, 1], [9, 4]] } }
//!   ],
//!   "precedence": [[1, 2]]
//! }
//! ```
//!
//! `capacity` is a positive integer or `"unbounded"`. Cost types are
//! `lateness` and `tardiness` (`due`), `weighted_completion` (`w`), `affine`
//! (`a`, `c`) and `step` (`breakpoints`). `precedence` is optional and lists
//! `[pred, succ]` id pairs.

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::model::{Capacity, CostSpec, Instance, Job, JobId};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    setup: i64,
    capacity: CapacityField,
    jobs: Vec<JobEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    precedence: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum CapacityField {
    Count(usize),
    Token(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobEntry {
    id: usize,
    p: i64,
    cost: CostEntry,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum CostEntry {
    Lateness { due: i64 },
    Tardiness { due: i64 },
    WeightedCompletion { w: i64 },
    Affine { a: i64, c: i64 },
    Step { breakpoints: Vec<(i64, i64)> },
}

const UNBOUNDED: &str = "unbounded";

fn field(path: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field { path: path.into(), message: message.into() }
}

fn job_id(raw: usize, path: impl FnOnce() -> String) -> Result<JobId, ParseError> {
    raw.checked_sub(1).map(JobId).ok_or_else(|| field(path(), "job ids start at 1"))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: match e.to_string().rsplit_once(" at line ") {
            Some((head, _)) => head.to_owned(),
            None => e.to_string(),
        },
    })?;
    let capacity = match file.capacity {
        CapacityField::Count(b) => Capacity::Bounded(b),
        CapacityField::Token(t) if t == UNBOUNDED => Capacity::Unbounded,
        CapacityField::Token(t) => {
            return Err(field("capacity", format!("expected an integer or \"{UNBOUNDED}\", got \"{t}\"")))
        }
    };
    let jobs = file
        .jobs
        .into_iter()
        .enumerate()
        .map(|(k, entry)| {
            let cost = match entry.cost {
                CostEntry::Lateness { due } => CostSpec::Lateness { due },
                CostEntry::Tardiness { due } => CostSpec::Tardiness { due },
                CostEntry::WeightedCompletion { w } => CostSpec::WeightedCompletion { w },
                CostEntry::Affine { a, c } => CostSpec::Affine { a, c },
                CostEntry::Step { breakpoints } => CostSpec::StepTable { breakpoints },
            };
            Ok(Job { id: job_id(entry.id, || format!("jobs[{k}].id"))?, p: entry.p, cost })
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    let precedence = file
        .precedence
        .iter()
        .enumerate()
        .map(|(k, &[a, b])| {
            let path = || format!("precedence[{k}]");
            Ok((job_id(a, path)?, job_id(b, path)?))
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ok(Instance::new(jobs, file.setup, capacity, precedence)?)
}

/// Canonical pretty-printed JSON: jobs by id, edges sorted, trailing newline.
pub fn emit_instance(instance: &Instance) -> String {
    let file = InstanceFile {
        setup: instance.setup(),
        capacity: match instance.capacity() {
            Capacity::Bounded(b) => CapacityField::Count(b),
            Capacity::Unbounded => CapacityField::Token(UNBOUNDED.to_owned()),
        },
        jobs: instance
            .jobs()
            .iter()
            .map(|j| JobEntry {
                id: j.id.external(),
                p: j.p,
                cost: match &j.cost {
                    CostSpec::Lateness { due } => CostEntry::Lateness { due: *due },
                    CostSpec::Tardiness { due } => CostEntry::Tardiness { due: *due },
                    CostSpec::WeightedCompletion { w } => CostEntry::WeightedCompletion { w: *w },
                    CostSpec::Affine { a, c } => CostEntry::Affine { a: *a, c: *c },
                    CostSpec::StepTable { breakpoints } => CostEntry::Step { breakpoints: breakpoints.clone() },
                },
            })
            .collect(),
        precedence: instance.precedence().iter().map(|(a, b)| [a.external(), b.external()]).collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("instance serializes");
    out.push('\n');
    out
}

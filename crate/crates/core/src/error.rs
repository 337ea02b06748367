use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("instance has no jobs")]
    NoJobs,
    #[error("setup time {0} is negative")]
    NegativeSetup(i64),
    #[error("job ids must be 1..n without gaps: expected {expected}, found {found}")]
    JobIds { expected: usize, found: usize },
    #[error("job {job} has processing time {p}; must be at least 1")]
    ProcessingTime { job: usize, p: i64 },
    #[error("job {job} has an irregular cost function: {reason}")]
    IrregularCost { job: usize, reason: String },
    #[error("batch capacity must be at least 1")]
    ZeroCapacity,
    #[error("bounded batch capacity combined with precedence constraints is not supported")]
    BoundedWithPrecedence,
    #[error("precedence edge references unknown job {0}")]
    UnknownJob(usize),
    #[error("job {0} cannot precede itself")]
    SelfLoop(usize),
    #[error("precedence relation contains a cycle")]
    Cycle,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} jobs exceeds the enumeration limit of {max}")]
    TooManyJobs { n: usize, max: usize },
    #[error("enumeration stopped after {0} schedules")]
    TooManySchedules(u64),
}

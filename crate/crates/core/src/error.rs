use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A digraph or composition violated a structural invariant.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// Text or JSON input could not be parsed. `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An instance exceeded a configured size cap.
    #[error("{what} requires n <= {limit}, got n = {got} (see PPL_BUDGET_N)")]
    Budget {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    /// `q` outside 1..=lambda(D)-1.
    #[error("q = {q} out of range 1..={max} (lambda = {lambda})")]
    QOutOfRange { q: usize, lambda: usize, max: usize },

    /// `k` outside 1..=n for a k-path-subdigraph query.
    #[error("k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },

    /// A structural precondition of a partitioner did not hold
    /// (e.g. acyclic method on a cyclic outer digraph).
    #[error("structure mismatch: {0}")]
    Structure(String),

    /// The part oracle failed on one part of a composition.
    #[error("part oracle failed on part {part}: {source}")]
    PartOracle {
        part: usize,
        #[source]
        source: Box<Error>,
    },

    /// The exhaustive bipartition sweep found no witness for some q.
    /// This is a conjecture counterexample candidate and is never
    /// silently swallowed.
    #[error("no witness partition exists at q = {q} after sweeping all {swept} bipartitions")]
    SweepExhausted { q: usize, swept: u64 },

    /// A constructed partition failed its own verification. Indicates
    /// either an implementation defect or a gap in the construction's
    /// argument; carries the full serialized trace.
    #[error("internal verification failure at q = {q}: {detail}")]
    VerificationFailed {
        q: usize,
        detail: String,
        trace_json: String,
    },

    /// No case of the semicomplete construction applies to this q.
    #[error("case exhaustion at q = {q}: no case-1/2/3 decomposition found; trace: {trace_json}")]
    CaseExhaustion { q: usize, trace_json: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

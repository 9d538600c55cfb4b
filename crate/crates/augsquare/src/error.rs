//! Error type shared by all modules.

use crate::search::SearchResult;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// `v` or `k` outside the supported range (`v >= 4`, `2 <= k <= v - 2`).
    #[error("bad dimensions: v = {v}, k = {k} (need v >= 4 and 2 <= k <= v - 2)")]
    BadDimensions { v: usize, k: usize },

    /// A contraction row is not a permutation of `1..=v` (1-based row index).
    #[error("row {0} is not a permutation of 1..=v")]
    RowNotPermutation(usize),

    /// A contraction column holds a repeated treatment (1-based column index).
    #[error("column {0} contains a duplicate treatment")]
    DuplicateInColumn(usize),

    /// An initial block has the wrong size, duplicates or out-of-range elements.
    #[error("bad initial block: {0}")]
    BadBlock(String),

    /// The information matrix has two or more zero eigenvalues, so the
    /// average efficiency factor is undefined.
    #[error("disconnected design: average efficiency factor undefined")]
    Disconnected,

    /// Harmonic mean of a list containing a non-positive value.
    #[error("non-positive value in harmonic mean input")]
    NonPositiveValue,

    /// Invalid scalar parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// `fill_entries` called on a design that already holds test entries.
    #[error("design already has test entries filled in")]
    AlreadyFilled,

    /// No connected design exists among the evaluated candidates.
    #[error("no connected design found")]
    NoConnectedDesign,

    /// The search finished without reaching the requested target; the best
    /// result found is carried along.
    #[error("search target not reached (best E_con = {:.6})", .0.report.e)]
    TargetUnreached(Box<SearchResult>),

    /// `verify_spectrum` called on a contraction and an augmented design
    /// that are not related by the switch construction.
    #[error("augmented design was not constructed from this contraction")]
    MismatchedPair,

    /// Malformed augmented-design grid or CSV text.
    #[error("bad grid: {0}")]
    BadGrid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

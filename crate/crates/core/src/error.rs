use thiserror::Error;

/// Errors raised by the combinatorial layer.
///
/// Each variant maps to a distinct failure class so the command-line front end
/// can turn it into a stable exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The total entry sum of `mu` does not equal the Kottwitz invariant `m`.
    #[error("kottwitz mismatch: sum of mu is {mu_sum}, expected {kappa}")]
    KappaMismatch { mu_sum: i64, kappa: i64 },

    /// The Mazur inequality fails, so the variety is empty.
    #[error("mazur inequality fails: {0}")]
    MazurFails(String),

    /// `gcd(m, h) != 1`: the datum is not superbasic.
    #[error("not superbasic: gcd({m}, {h}) = {gcd}")]
    NotSuperbasic { m: i64, h: usize, gcd: i64 },

    /// Shapes of two cocharacters disagree, or a shape is degenerate.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A precondition on the input was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An element outside the chart was passed where membership is required.
    #[error("{0} is not an element of the chart")]
    NotInChart(String),

    /// The stored function violates one of the extended-chart axioms.
    #[error("axiom violation: {0}")]
    Axiom(String),

    /// Two independent computations disagree; always a bug.
    #[error("internal disagreement: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

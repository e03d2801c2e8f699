use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Edge endpoint outside `0..n`.
    NodeOutOfRange { edge: (usize, usize), n: usize },
    SelfLoop { node: usize },
    DuplicateEdge { edge: (usize, usize) },
    /// Edge weight that is not finite and strictly positive.
    BadWeight { edge: (usize, usize), weight: f64 },
    /// An operation that needs an unweighted graph got weights other than 1.
    Weighted,
    /// Generic precondition failure on an argument.
    InvalidArgument(&'static str),
    /// Phase interaction bumps closer than the non-overlap distance.
    BumpOverlap { first: f64, second: f64, min_separation: f64 },
    /// Two bumps fold onto one center but ask for different phase targets.
    ConflictingBumps { center: f64 },
    /// A bump at Δφ = π asks for a target no odd periodic offset can reach.
    UnrealizableAntipodalTarget { target: f64 },
    DimensionMismatch { expected: usize, found: usize },
    /// A phase became NaN or infinite during integration.
    NonFinitePhase { step: u64, node: usize },
    /// Distance matrix is not square / symmetric / zero on the diagonal / nonnegative.
    InvalidDistanceMatrix(&'static str),
    /// Discrete configuration has the wrong shape for the problem.
    MalformedConfiguration(&'static str),
    /// Sampled state sits inside a bump zone where the gradient identity does not hold.
    NotInFlatZone { pair: (usize, usize), distance: f64 },
    /// Exact oracle refused an instance larger than its budget.
    OverBudget { problem: &'static str, n: usize, max_n: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NodeOutOfRange { edge, n } => {
                write!(f, "edge ({}, {}) has an endpoint outside 0..{}", edge.0, edge.1, n)
            }
            Error::SelfLoop { node } => write!(f, "self-loop at node {node}"),
            Error::DuplicateEdge { edge } => write!(f, "duplicate edge ({}, {})", edge.0, edge.1),
            Error::BadWeight { edge, weight } => {
                write!(f, "edge ({}, {}) has invalid weight {}", edge.0, edge.1, weight)
            }
            Error::Weighted => f.write_str("operation requires an unweighted graph"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::BumpOverlap { first, second, min_separation } => write!(
                f,
                "bumps at {first:.6} and {second:.6} are closer than {min_separation:.6} rad"
            ),
            Error::ConflictingBumps { center } => {
                write!(f, "bumps folding onto center {center:.6} request different targets")
            }
            Error::UnrealizableAntipodalTarget { target } => write!(
                f,
                "target {target:.6} at Δφ = π cannot be realized by an odd periodic offset"
            ),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            Error::NonFinitePhase { step, node } => write!(
                f,
                "phase of node {node} became non-finite at step {step} (time step too large?)"
            ),
            Error::InvalidDistanceMatrix(msg) => write!(f, "invalid distance matrix: {msg}"),
            Error::MalformedConfiguration(msg) => write!(f, "malformed configuration: {msg}"),
            Error::NotInFlatZone { pair, distance } => write!(
                f,
                "pair ({}, {}) is {distance:.3e} rad from a bump center, inside the bump zone",
                pair.0, pair.1
            ),
            Error::OverBudget { problem, n, max_n } => {
                write!(f, "{problem} oracle budget is n <= {max_n}, got n = {n}")
            }
        }
    }
}

impl core::error::Error for Error {}

use thiserror::Error;

/// Everything that can go wrong short of a refuted mathematical claim.
///
/// Claim refutations (a pattern mismatch, a failed identity, a non-EKR
/// instance) are reported through the result types of the verifiers, not
/// through this enum, so that callers can serialize the counterexample.
/// The one exception is [`Error::MappingCountVaries`]: a non-constant
/// mapping count invalidates every identity built on top of it, so the
/// canvass aborts with the offending pair.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters n={n}, p={p}, s={s}: {reason}")]
    InvalidParams {
        n: usize,
        p: usize,
        s: usize,
        reason: &'static str,
    },

    #[error("vertex index {vertex} out of range, the matching has {limit} vertices")]
    VertexOutOfRange { vertex: usize, limit: usize },

    #[error("bit set {bits:#x} has bits above position {limit}")]
    BitsOutOfRange { bits: u64, limit: usize },

    #[error("family has {size} members, exceeding the cap of {cap}")]
    CapExceeded { size: u64, cap: u64 },

    #[error("mapping enumeration for n={n} exceeds the cap of {cap}")]
    MapCapExceeded { n: usize, cap: usize },

    #[error(
        "quasi-interval bounds are only claimed for n >= 2p+s; got n={n} < {member_size}"
    )]
    RangeViolated { n: usize, member_size: usize },

    #[error("not a permutation of 0..{n}")]
    InvalidMapping { n: usize },

    #[error(
        "set spans {edges} edges and {isolated} isolated vertices, \
         expected ({expected_edges}, {expected_isolated})"
    )]
    ProfileMismatch {
        expected_edges: usize,
        expected_isolated: usize,
        edges: usize,
        isolated: usize,
    },

    #[error(
        "mapping count is not constant: pair (member {member_index}, interval \
         {interval_index}) gives {found}, earlier pairs gave {expected}"
    )]
    MappingCountVaries {
        member_index: usize,
        interval_index: usize,
        expected: u64,
        found: u64,
    },

    #[error("graph order {order} too large for exhaustive clique search (max {max})")]
    OrderTooLarge { order: usize, max: usize },
}

//! The perfect matching on `2n` vertices and the family of its vertex
//! subsets spanning exactly `p` edges and `s` isolated vertices.
//!
//! Vertices are encoded 0-based into a single word: `a_i` is bit `2i`,
//! `b_i` is bit `2i+1`, so the matching column of a bit is its index
//! halved and the edge/isolated profile of a set is a word-level count.

use crate::error::Error;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use std::fmt;

/// Largest supported number of matching edges; keeps a vertex set in one word.
pub const MAX_COLUMNS: usize = 32;

/// Mask of the `a`-row bit in every column.
const COLUMN_MASK: u64 = 0x5555_5555_5555_5555;

/// Binomial coefficient `C(n, k)`, exact in `u64` for the supported range.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// Validated instance parameters: `n` matching edges, members spanning `p`
/// edges and `s` isolated vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatchingParams {
    n: usize,
    p: usize,
    s: usize,
}

impl MatchingParams {
    pub fn new(n: usize, p: usize, s: usize) -> Result<Self, Error> {
        let fail = |reason| Error::InvalidParams { n, p, s, reason };
        if n == 0 {
            return Err(fail("the matching needs at least one edge"));
        }
        if n > MAX_COLUMNS {
            return Err(fail("2n does not fit in a 64-bit word"));
        }
        if 2 * p + s == 0 {
            return Err(fail("members would be empty (2p+s = 0)"));
        }
        if p + s > n {
            return Err(fail("p+s exceeds n, the family is empty"));
        }
        Ok(Self { n, p, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Number of vertices in every member: `2p+s`.
    pub fn member_size(&self) -> usize {
        2 * self.p + self.s
    }

    /// Number of vertices of the matching: `2n`.
    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    /// `n < 2p+s`: any two members must share a vertex, so the largest
    /// intersecting subfamily is the whole family rather than a star.
    pub fn is_degenerate(&self) -> bool {
        self.n < self.member_size()
    }

    /// Closed-form family size `C(n,p) * C(n-p,s) * 2^s`.
    pub fn family_size(&self) -> u64 {
        binomial(self.n, self.p)
            .checked_mul(binomial(self.n - self.p, self.s))
            .and_then(|v| v.checked_shl(self.s as u32))
            .expect("family size overflows u64")
    }

    /// Closed-form star size `(2p+s) / (2n) * |family|`, always an integer.
    pub fn star_size(&self) -> u64 {
        let total = self.family_size() * self.member_size() as u64;
        let vertices = self.vertex_count() as u64;
        assert_eq!(total % vertices, 0, "star size must be an integer");
        total / vertices
    }
}

impl fmt::Display for MatchingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, p={}, s={})", self.n, self.p, self.s)
    }
}

/// A subset of the matching's vertices, one bit per vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// Wraps a raw bit set, rejecting bits outside the `2n` vertices.
    pub fn from_bits(bits: u64, n: usize) -> Result<Self, Error> {
        let limit = 2 * n;
        if limit < 64 && bits >> limit != 0 {
            return Err(Error::BitsOutOfRange { bits, limit });
        }
        Ok(Self(bits))
    }

    pub fn from_vertices(vertices: &[usize], n: usize) -> Result<Self, Error> {
        let mut bits = 0u64;
        for &v in vertices {
            if v >= 2 * n {
                return Err(Error::VertexOutOfRange { vertex: v, limit: 2 * n });
            }
            bits |= 1 << v;
        }
        Ok(Self(bits))
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn contains(&self, vertex: usize) -> bool {
        vertex < 64 && self.0 >> vertex & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn intersects(&self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Vertex indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }

    /// Counts the columns fully contained in the set and the columns met in
    /// exactly one vertex: the `(edges, isolated)` profile.
    ///
    /// Requires every bit to sit below position `2n`.
    pub fn classify(&self, n: usize) -> (usize, usize) {
        debug_assert!(2 * n >= 64 || self.0 >> (2 * n) == 0);
        let paired = self.0 & self.0 >> 1 & COLUMN_MASK;
        let single = (self.0 ^ self.0 >> 1) & COLUMN_MASK;
        (paired.count_ones() as usize, single.count_ones() as usize)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}{}", if v % 2 == 0 { 'a' } else { 'b' }, v / 2)?;
        }
        write!(f, "}}")
    }
}

/// A vertex set together with its verified `(edges, isolated)` profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyElement {
    vertices: VertexSet,
    spanned_edges: usize,
    isolated: usize,
}

impl FamilyElement {
    /// Checks that `vertices` has the profile demanded by `params`.
    pub fn new(params: MatchingParams, vertices: VertexSet) -> Result<Self, Error> {
        let (edges, isolated) = vertices.classify(params.n());
        if edges != params.p() || isolated != params.s() {
            return Err(Error::ProfileMismatch {
                expected_edges: params.p(),
                expected_isolated: params.s(),
                edges,
                isolated,
            });
        }
        Ok(Self {
            vertices,
            spanned_edges: edges,
            isolated,
        })
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn spanned_edges(&self) -> usize {
        self.spanned_edges
    }

    pub fn isolated(&self) -> usize {
        self.isolated
    }
}

/// All members of the family for one parameter set, in ascending bit-set
/// order so that witnesses and reports are reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    params: MatchingParams,
    members: Vec<FamilyElement>,
}

impl Family {
    /// Enumerates the family by choosing the `p` edge columns, the `s`
    /// isolated columns and one endpoint per isolated column.
    pub fn enumerate(params: MatchingParams) -> Family {
        let (n, p, s) = (params.n(), params.p(), params.s());
        let mut sets: Vec<u64> = Vec::with_capacity(params.family_size() as usize);
        for edge_cols in (0..n).combinations(p) {
            let mut edge_bits = 0u64;
            for &c in &edge_cols {
                edge_bits |= 0b11 << (2 * c);
            }
            let rest: Vec<usize> = (0..n).filter(|c| !edge_cols.contains(c)).collect();
            for iso_cols in rest.iter().copied().combinations(s) {
                for pick in 0u32..1 << s {
                    let mut bits = edge_bits;
                    for (j, &c) in iso_cols.iter().enumerate() {
                        bits |= 1 << (2 * c + (pick >> j & 1) as usize);
                    }
                    sets.push(bits);
                }
            }
        }
        sets.sort_unstable();
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(sets.len() as u64, params.family_size());
        let members = sets
            .into_iter()
            .map(|bits| FamilyElement {
                vertices: VertexSet(bits),
                spanned_edges: p,
                isolated: s,
            })
            .collect();
        Family { params, members }
    }

    pub fn params(&self) -> MatchingParams {
        self.params
    }

    pub fn members(&self) -> &[FamilyElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Indices of the members containing `vertex`: the star centered there.
    pub fn star(&self, vertex: usize) -> Result<Vec<usize>, Error> {
        if vertex >= self.params.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex,
                limit: self.params.vertex_count(),
            });
        }
        Ok(self
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.vertices().contains(vertex))
            .map(|(i, _)| i)
            .collect())
    }

    /// The member placing edges on columns `0..p` and `a`-vertices on
    /// columns `p..p+s`; handy when any one member will do.
    pub fn canonical_member(params: MatchingParams) -> FamilyElement {
        let mut bits = 0u64;
        for c in 0..params.p() {
            bits |= 0b11 << (2 * c);
        }
        for c in params.p()..params.p() + params.s() {
            bits |= 1 << (2 * c);
        }
        FamilyElement {
            vertices: VertexSet(bits),
            spanned_edges: params.p(),
            isolated: params.s(),
        }
    }
}

/// True iff every pair of listed sets shares a vertex; empty and singleton
/// lists count as intersecting.
pub fn is_intersecting(sets: &[VertexSet]) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| a.intersects(*b)))
}

/// Draws a random intersecting subfamily: a random size target, a shuffled
/// member order, and a greedy pass keeping members that meet everything
/// kept so far. Returns ascending member indices, never empty.
pub fn sample_intersecting_subfamily<R: Rng>(family: &Family, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.shuffle(rng);
    let target = rng.random_range(1..=family.len());
    let mut chosen: Vec<usize> = Vec::new();
    let mut chosen_sets: Vec<VertexSet> = Vec::new();
    for idx in order {
        if chosen.len() == target {
            break;
        }
        let candidate = family.members()[idx].vertices();
        if chosen_sets.iter().all(|s| s.intersects(candidate)) {
            chosen.push(idx);
            chosen_sets.push(candidate);
        }
    }
    chosen.sort_unstable();
    chosen
}

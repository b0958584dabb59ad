//! The double cycle, proper mappings onto it, quasi-intervals, and the
//! double-counting identities that bound intersecting subfamilies.
//!
//! The double cycle has two rows over the cyclic column index `Z_n`; a
//! proper mapping is a bijection from the matching's vertices that keeps
//! each matched pair inside one column. Quasi-intervals are the
//! distinguished `(2p+s)`-point subsets built from one cyclic run per
//! row: `n` of them when `s` is even, `2n` interleaved by parity when
//! `s` is odd. Every verifier here recomputes its claim from scratch by
//! raw enumeration; nothing is trusted from the closed forms.

use crate::error::Error;
use crate::family::{is_intersecting, Family, FamilyElement, MatchingParams, VertexSet};
use crate::search::{max_clique, IntersectionGraph, SearchResult};
use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::fmt;

/// Default ceiling for full mapping enumeration (`n! * 2^n` mappings).
pub const DEFAULT_MAP_CAP: usize = 6;

/// Above this, `n! * 2^n` overflows u64 and enumeration is hopeless anyway.
pub const MAP_HARD_CAP: usize = 16;

/// Number of `(member, interval)` pairs sampled when the canvass is not
/// exhaustive.
const SAMPLED_PAIRS: usize = 10;

/// One point of the double cycle: a column in `Z_n` and a row in `{0,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclePoint {
    pub column: usize,
    pub row: usize,
}

/// A subset of the double cycle; point `(x, y)` occupies bit `2x+y`,
/// mirroring the vertex-set convention so mappings are bit permutations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycleSet(u64);

impl CycleSet {
    pub const EMPTY: CycleSet = CycleSet(0);

    pub fn from_points(points: &[(usize, usize)], n: usize) -> Result<Self, Error> {
        let mut bits = 0u64;
        for &(column, row) in points {
            let bit = 2 * column + row;
            if column >= n || row > 1 {
                return Err(Error::BitsOutOfRange {
                    bits: 1 << bit,
                    limit: 2 * n,
                });
            }
            bits |= 1 << bit;
        }
        Ok(Self(bits))
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, point: CyclePoint) -> bool {
        let bit = 2 * point.column + point.row;
        bit < 64 && self.0 >> bit & 1 == 1
    }

    pub fn intersects(&self, other: CycleSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = CyclePoint> + '_ {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(CyclePoint {
                column: b / 2,
                row: b % 2,
            })
        })
    }
}

impl fmt::Debug for CycleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, pt) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", pt.column, pt.row)?;
        }
        write!(f, "}}")
    }
}

/// One of the distinguished interval-like subsets of the double cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasiInterval {
    pub index: usize,
    pub points: CycleSet,
}

/// Sets `len` consecutive columns starting at `start` (mod n) in `row`;
/// a nonpositive run length is an empty set, which is what the odd-`s`
/// formulas need at `p = k = 0`.
fn row_run(n: usize, start: isize, len: usize, row: usize) -> u64 {
    let mut bits = 0u64;
    for j in 0..len {
        let col = (start + j as isize).rem_euclid(n as isize) as usize;
        bits |= 1 << (2 * col + row);
    }
    bits
}

/// Half of the isolated count: `k` with `s = 2k` or `s = 2k+1`.
fn half_isolated(params: MatchingParams) -> usize {
    params.s() / 2
}

/// Builds the quasi-interval system: `n` intervals for even `s`, `2n`
/// for odd `s`. Defined for every valid parameter set; the intersection
/// pattern and extremal bounds are only claimed for `n >= 2p+s`.
pub fn quasi_intervals(params: MatchingParams) -> Vec<QuasiInterval> {
    let (n, p) = (params.n(), params.p());
    let k = half_isolated(params);
    if params.s() % 2 == 0 {
        (0..n)
            .map(|i| {
                let base = i as isize;
                let points = row_run(n, base - k as isize, p + k, 0)
                    | row_run(n, base, p + k, 1);
                QuasiInterval {
                    index: i,
                    points: CycleSet(points),
                }
            })
            .collect()
    } else {
        (0..2 * n)
            .map(|index| {
                let base = (index / 2) as isize;
                let points = if index % 2 == 0 {
                    row_run(n, base - k as isize - 1, p + k + 1, 0)
                        | row_run(n, base, p + k, 1)
                } else {
                    row_run(n, base - k as isize, p + k, 0)
                        | row_run(n, base, p + k + 1, 1)
                };
                QuasiInterval {
                    index,
                    points: CycleSet(points),
                }
            })
            .collect()
    }
}

/// Size every intersecting quasi-interval subcollection is claimed to
/// respect (and to achieve): `p+k` for even `s`, `2p+s` for odd `s`.
pub fn expected_quasi_max(params: MatchingParams) -> usize {
    if params.s() % 2 == 0 {
        params.p() + half_isolated(params)
    } else {
        params.member_size()
    }
}

/// A bijection from the matching's vertices onto the double cycle that
/// keeps each matched pair in one column, stored factored: a column
/// permutation and one row-orientation flag per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperMapping {
    column_perm: Vec<usize>,
    flips: u32,
}

impl ProperMapping {
    /// `column_perm[i]` is the double-cycle column receiving matching
    /// column `i`; bit `i` of `flips` sends `a_i` to row 1 instead of 0.
    pub fn new(column_perm: Vec<usize>, flips: u32) -> Result<Self, Error> {
        let n = column_perm.len();
        let mut seen = vec![false; n];
        for &c in &column_perm {
            if c >= n || seen[c] {
                return Err(Error::InvalidMapping { n });
            }
            seen[c] = true;
        }
        if n < 32 && flips >> n != 0 {
            return Err(Error::InvalidMapping { n });
        }
        Ok(Self { column_perm, flips })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            column_perm: (0..n).collect(),
            flips: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.column_perm.len()
    }

    pub fn column_perm(&self) -> &[usize] {
        &self.column_perm
    }

    pub fn flips(&self) -> u32 {
        self.flips
    }

    /// Image of a vertex set; a bit permutation, so cardinality is kept.
    pub fn apply(&self, set: VertexSet) -> CycleSet {
        let bits = set.bits();
        let mut out = 0u64;
        for (i, &target) in self.column_perm.iter().enumerate() {
            let pair = bits >> (2 * i) & 0b11;
            if pair == 0 {
                continue;
            }
            let img = if self.flips >> i & 1 == 1 {
                (pair & 1) << 1 | pair >> 1
            } else {
                pair
            };
            out |= img << (2 * target);
        }
        CycleSet(out)
    }

    /// Unique vertex set mapping onto `points`.
    pub fn preimage_set(&self, points: CycleSet) -> VertexSet {
        let bits = points.bits();
        let mut out = 0u64;
        for (i, &target) in self.column_perm.iter().enumerate() {
            let pair = bits >> (2 * target) & 0b11;
            if pair == 0 {
                continue;
            }
            let img = if self.flips >> i & 1 == 1 {
                (pair & 1) << 1 | pair >> 1
            } else {
                pair
            };
            out |= img << (2 * i);
        }
        VertexSet::from_bits(out, self.n()).expect("preimage stays in range")
    }
}

/// `n! * 2^n`, the number of proper mappings.
pub fn total_mappings(n: usize) -> u64 {
    assert!(n <= MAP_HARD_CAP, "mapping count overflows u64 for n > {MAP_HARD_CAP}");
    let factorial: u64 = (1..=n as u64).product();
    factorial << n
}

/// Enumerates all proper mappings exactly once. Permutations vary in the
/// outer loop and orientations in the inner one, so the yield order is
/// deterministic.
pub fn proper_mappings(
    n: usize,
    cap: usize,
) -> Result<impl Iterator<Item = ProperMapping>, Error> {
    if n > cap {
        return Err(Error::MapCapExceeded { n, cap });
    }
    if n > MAP_HARD_CAP {
        return Err(Error::MapCapExceeded { n, cap: MAP_HARD_CAP });
    }
    Ok((0..n).permutations(n).flat_map(move |perm| {
        (0..1u64 << n).map(move |flips| ProperMapping {
            column_perm: perm.clone(),
            flips: flips as u32,
        })
    }))
}

/// Pulls a quasi-interval back through a mapping and checks that the
/// result really is a family member, which is the implicit claim that
/// quasi-intervals have `p` full and `s` half columns.
pub fn preimage(
    params: MatchingParams,
    mapping: &ProperMapping,
    interval: &QuasiInterval,
) -> Result<FamilyElement, Error> {
    FamilyElement::new(params, mapping.preimage_set(interval.points))
}

/// Number of proper mappings sending `member` onto `interval`, by raw
/// enumeration.
pub fn count_f(
    params: MatchingParams,
    member: &FamilyElement,
    interval: &QuasiInterval,
    cap: usize,
) -> Result<u64, Error> {
    let target = interval.points;
    let mut count = 0u64;
    for mapping in proper_mappings(params.n(), cap)? {
        if mapping.apply(member.vertices()) == target {
            count += 1;
        }
    }
    Ok(count)
}

/// Summary of the mapping-count canvass for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingReport {
    pub params: MatchingParams,
    /// The common mapping count across every canvassed pair.
    pub f_value: u64,
    /// `n! * 2^n`.
    pub total_mappings: u64,
    /// Number of quasi-intervals: `n` or `2n`.
    pub quasi_count: usize,
    /// Whether `n! * 2^n = |family| * f`.
    pub identity_holds: bool,
    pub pairs_checked: usize,
}

/// Checks that the mapping count is the same for every canvassed
/// `(member, interval)` pair and that `n! * 2^n = |family| * f`.
///
/// The canvass is exhaustive for `n <= 4` and a seeded 10-pair sample
/// otherwise; for odd `s` the sample is stratified so both interval
/// parities appear. A varying count aborts with the offending pair.
pub fn verify_counting_identities(
    family: &Family,
    cap: usize,
    seed: u64,
) -> Result<CountingReport, Error> {
    let params = family.params();
    let n = params.n();
    let mappings: Vec<ProperMapping> = proper_mappings(n, cap)?.collect();
    let intervals = quasi_intervals(params);

    let pairs: Vec<(usize, usize)> = if n <= 4 {
        (0..family.len())
            .cartesian_product(0..intervals.len())
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLED_PAIRS)
            .map(|i| {
                let member = rng.random_range(0..family.len());
                let interval = if params.s() % 2 == 1 {
                    // force both parities into the sample
                    let parity = i % 2;
                    2 * rng.random_range(0..params.n()) + parity
                } else {
                    rng.random_range(0..intervals.len())
                };
                (member, interval)
            })
            .collect()
    };

    let mut f_value: Option<u64> = None;
    for &(member_index, interval_index) in &pairs {
        let member = family.members()[member_index].vertices();
        let target = intervals[interval_index].points;
        let count = mappings.iter().filter(|m| m.apply(member) == target).count() as u64;
        match f_value {
            None => f_value = Some(count),
            Some(expected) if expected != count => {
                return Err(Error::MappingCountVaries {
                    member_index,
                    interval_index,
                    expected,
                    found: count,
                });
            }
            Some(_) => {}
        }
    }

    let f_value = f_value.expect("canvass is never empty");
    let total = total_mappings(n);
    Ok(CountingReport {
        params,
        f_value,
        total_mappings: total,
        quasi_count: intervals.len(),
        identity_holds: total == params.family_size() * f_value,
        pairs_checked: pairs.len(),
    })
}

/// One entry of the pairwise-intersection matrix that contradicts the
/// claimed distance pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternMismatch {
    pub i: usize,
    pub j: usize,
    pub distance: usize,
    pub expected_intersect: bool,
    pub actually_intersect: bool,
}

/// Pairwise-intersection matrix of the quasi-intervals plus the verdict
/// on the claimed pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternReport {
    pub quasi_count: usize,
    /// Claimed radius: intervals meet iff their cyclic index distance is
    /// positive and at most this.
    pub radius: usize,
    matrix: Vec<u64>,
    pub verdict: bool,
    pub pattern_mismatches: Vec<PatternMismatch>,
    /// Pairs claimed disjoint (index distance one past the radius) that
    /// are not.
    pub disjoint_violations: Vec<(usize, usize)>,
}

impl PatternReport {
    pub fn intersects(&self, i: usize, j: usize) -> bool {
        self.matrix[i] >> j & 1 == 1
    }
}

fn circular_distance(i: usize, j: usize, modulus: usize) -> usize {
    let d = i.abs_diff(j) % modulus;
    d.min(modulus - d)
}

/// Computes the full pairwise-intersection matrix and verifies the
/// claimed pattern verbatim: intervals meet iff their cyclic index
/// distance is at most `p+k-1` (even `s`, mod `n`) or `2p+2k` (odd `s`,
/// mod `2n`), and the explicitly claimed disjoint pairs at distance one
/// past the radius really are disjoint. Only claimed for `n >= 2p+s`.
pub fn intersection_pattern(params: MatchingParams) -> Result<PatternReport, Error> {
    if params.is_degenerate() {
        return Err(Error::RangeViolated {
            n: params.n(),
            member_size: params.member_size(),
        });
    }
    let intervals = quasi_intervals(params);
    let q = intervals.len();
    let (p, k) = (params.p(), half_isolated(params));
    let radius = if params.s() % 2 == 0 {
        p + k - 1
    } else {
        2 * p + 2 * k
    };

    let mut matrix = vec![0u64; q];
    for i in 0..q {
        for j in 0..q {
            if i != j && intervals[i].points.intersects(intervals[j].points) {
                matrix[i] |= 1 << j;
            }
        }
    }

    let mut pattern_mismatches = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            let distance = circular_distance(i, j, q);
            let expected = distance <= radius;
            let actual = matrix[i] >> j & 1 == 1;
            if expected != actual {
                pattern_mismatches.push(PatternMismatch {
                    i,
                    j,
                    distance,
                    expected_intersect: expected,
                    actually_intersect: actual,
                });
            }
        }
    }

    // the disjoint-pair claims: index difference radius+1, c past each i
    let mut disjoint_violations = Vec::new();
    let gap = radius + 1;
    for i in 0..q {
        for c in 1..=radius {
            let lo = (i + c + q - gap) % q;
            let hi = (i + c) % q;
            if intervals[lo].points.intersects(intervals[hi].points) {
                disjoint_violations.push((lo, hi));
            }
        }
    }
    disjoint_violations.sort_unstable();
    disjoint_violations.dedup();

    let verdict = pattern_mismatches.is_empty() && disjoint_violations.is_empty();
    Ok(PatternReport {
        quasi_count: q,
        radius,
        matrix,
        verdict,
        pattern_mismatches,
        disjoint_violations,
    })
}

/// Exact maximum pairwise-intersecting subcollection of the
/// quasi-intervals, by clique search on their intersection graph.
/// Only claimed (and only offered) for `n >= 2p+s`.
pub fn max_intersecting_quasi(params: MatchingParams) -> Result<SearchResult, Error> {
    if params.is_degenerate() {
        return Err(Error::RangeViolated {
            n: params.n(),
            member_size: params.member_size(),
        });
    }
    Ok(quasi_clique_maximum(params))
}

/// The same exact search without the range gate, for the unconditional
/// side of the double-count bound.
fn quasi_clique_maximum(params: MatchingParams) -> SearchResult {
    let sets: Vec<u64> = quasi_intervals(params)
        .iter()
        .map(|b| b.points.bits())
        .collect();
    max_clique(&IntersectionGraph::from_bitsets(&sets), &[])
}

/// Raw double count of `(member, mapping)` incidences for one subfamily.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCountReport {
    pub params: MatchingParams,
    pub subfamily_size: usize,
    /// `S`: pairs `(H, phi)` with `H` in the subfamily and `phi(H)` a
    /// quasi-interval, counted by raw enumeration.
    pub pair_count: u64,
    pub f_value: u64,
    pub quasi_count: usize,
    /// Exact maximum intersecting quasi-interval subcollection.
    pub quasi_max: usize,
    pub total_mappings: u64,
    pub subfamily_intersecting: bool,
    /// `S = |F| * Q * f`.
    pub identity_ok: bool,
    /// If the subfamily intersects pairwise, `S <= n! 2^n * quasi_max`.
    pub bound_ok: bool,
}

impl DoubleCountReport {
    /// The bound on `|F|` the chain yields once the identity and the cap
    /// are combined: `total * quasi_max / (Q * f)`, rounded down.
    pub fn derived_bound(&self) -> u64 {
        self.total_mappings * self.quasi_max as u64
            / (self.quasi_count as u64 * self.f_value)
    }
}

/// Counts `S` over the subfamily by enumerating every proper mapping,
/// then checks the counting identity and, for intersecting subfamilies,
/// the per-mapping cap.
pub fn double_count(
    family: &Family,
    subfamily: &[usize],
    cap: usize,
) -> Result<DoubleCountReport, Error> {
    let params = family.params();
    let intervals = quasi_intervals(params);
    let interval_values: HashSet<u64> =
        intervals.iter().map(|b| b.points.bits()).collect();

    let members: Vec<VertexSet> = subfamily
        .iter()
        .map(|&i| family.members()[i].vertices())
        .collect();

    let mut pair_count = 0u64;
    for mapping in proper_mappings(params.n(), cap)? {
        for member in &members {
            if interval_values.contains(&mapping.apply(*member).bits()) {
                pair_count += 1;
            }
        }
    }

    let f_value = count_f(
        params,
        &Family::canonical_member(params),
        &intervals[0],
        cap,
    )?;
    let quasi_max = quasi_clique_maximum(params).size;
    let total = total_mappings(params.n());
    let intersecting = is_intersecting(&members);

    Ok(DoubleCountReport {
        params,
        subfamily_size: subfamily.len(),
        pair_count,
        f_value,
        quasi_count: intervals.len(),
        quasi_max,
        total_mappings: total,
        subfamily_intersecting: intersecting,
        identity_ok: pair_count
            == subfamily.len() as u64 * intervals.len() as u64 * f_value,
        bound_ok: !intersecting || pair_count <= total * quasi_max as u64,
    })
}

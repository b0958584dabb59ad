//! Exact maximum-intersecting-subfamily computation.
//!
//! An intersecting subfamily is a clique in the graph whose vertices are
//! the family members and whose edges join intersecting pairs, so the
//! extremal question is answered by an exact maximum-clique search:
//! branch and bound over candidate bit rows with a greedy-coloring upper
//! bound, seeded with a star as the initial incumbent. A pruning-free
//! exhaustive solver doubles as the oracle for cross-validation.

use crate::bits::BitRow;
use crate::error::Error;
use crate::family::{is_intersecting, Family, MatchingParams, VertexSet};
use std::cmp::Reverse;
use std::fmt;

/// Default limit on the family size before building the quadratic
/// adjacency matrix; override consciously for bigger sweeps.
pub const DEFAULT_FAMILY_CAP: usize = 4096;

/// Largest order accepted by [`naive_max_clique`].
pub const NAIVE_MAX_ORDER: usize = 20;

/// Adjacency bit-matrix over family members (or any list of bit sets).
#[derive(Clone)]
pub struct IntersectionGraph {
    order: usize,
    rows: Vec<BitRow>,
    degrees: Vec<usize>,
}

impl IntersectionGraph {
    /// Joins two items iff their bit sets share a bit.
    pub fn from_bitsets(sets: &[u64]) -> Self {
        let order = sets.len();
        let mut rows = vec![BitRow::zeros(order); order];
        for i in 0..order {
            for j in i + 1..order {
                if sets[i] & sets[j] != 0 {
                    rows[i].set(j);
                    rows[j].set(i);
                }
            }
        }
        let degrees = rows.iter().map(BitRow::count_ones).collect();
        Self { order, rows, degrees }
    }

    pub fn from_family(family: &Family, cap: usize) -> Result<Self, Error> {
        if family.len() > cap {
            return Err(Error::CapExceeded {
                size: family.len() as u64,
                cap: cap as u64,
            });
        }
        let sets: Vec<u64> = family.members().iter().map(|m| m.vertices().bits()).collect();
        Ok(Self::from_bitsets(&sets))
    }

    /// Explicit edge list; ignores self-loops and duplicates.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Self {
        let mut rows = vec![BitRow::zeros(order); order];
        for &(u, v) in edges {
            if u != v {
                rows[u].set(v);
                rows[v].set(u);
            }
        }
        let degrees = rows.iter().map(BitRow::count_ones).collect();
        Self { order, rows, degrees }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].test(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub(crate) fn row(&self, v: usize) -> &BitRow {
        &self.rows[v]
    }
}

impl fmt::Debug for IntersectionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: usize = self.degrees.iter().sum::<usize>() / 2;
        write!(f, "IntersectionGraph(order={}, edges={})", self.order, edges)
    }
}

/// Outcome of an exact search, witness indices sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub size: usize,
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
    pub seeded_bound: usize,
}

struct Searcher<'a> {
    adj: &'a [BitRow],
    order: usize,
    best_size: usize,
    best: Vec<usize>,
    nodes: u64,
    // reusable coloring buffers; expand() never holds them across recursion
    classes: Vec<BitRow>,
    rest: BitRow,
    avail: BitRow,
    moved: Vec<usize>,
    mate: Vec<usize>,
    visited: BitRow,
}

const UNMATCHED: usize = usize::MAX;

/// Kuhn-style alternating-path search on the complement graph restricted
/// to `cand`. Finding another unmatched vertex flips the path and grows
/// the matching by one. Odd components can hide some augmenting paths
/// from this search; that only leaves the matching smaller, never
/// invalid, so the bound built on it stays sound.
fn augment(
    adj: &[BitRow],
    cand: &BitRow,
    mate: &mut [usize],
    visited: &mut BitRow,
    u: usize,
) -> bool {
    for w in cand.iter_ones_andnot(&adj[u]) {
        if w == u || visited.test(w) {
            continue;
        }
        visited.set(w);
        let x = mate[w];
        if x == UNMATCHED || augment(adj, cand, mate, visited, x) {
            mate[w] = u;
            mate[u] = w;
            return true;
        }
    }
    false
}

impl Searcher<'_> {
    /// Tomita-style expansion: color the candidates, keep only the
    /// vertices whose color bound beats the incumbent, and branch from
    /// the highest color downwards. Ties always break on the lowest
    /// rank, so the search is deterministic.
    fn expand(&mut self, cand: &BitRow, clique: &mut Vec<usize>) {
        self.nodes += 1;
        let threshold = self.best_size.saturating_sub(clique.len());
        let mut verts: Vec<usize> = Vec::new();
        let mut bounds: Vec<usize> = Vec::new();
        self.color(cand, threshold, &mut verts, &mut bounds);

        let mut cand = cand.clone();
        let mut next = BitRow::zeros(self.order);
        for i in (0..verts.len()).rev() {
            if clique.len() + bounds[i] <= self.best_size {
                // bounds are nondecreasing over verts, nothing earlier helps
                return;
            }
            let v = verts[i];
            clique.push(v);
            next.copy_from(&cand);
            next.and_with(&self.adj[v]);
            if next.is_empty() {
                if clique.len() > self.best_size {
                    self.best_size = clique.len();
                    self.best = clique.clone();
                }
            } else {
                self.expand(&next, clique);
            }
            clique.pop();
            cand.clear(v);
        }
    }

    /// Greedy sequential coloring (each class a maximal independent set
    /// over the remaining candidates) followed by a recoloring pass that
    /// tries to push every above-threshold vertex back below: find a low
    /// class holding exactly one of its neighbors and rehome that
    /// neighbor in another low class. Emits only the vertices that stay
    /// above the threshold, grouped by color ascending; everything below
    /// is prunable at entry and stays implicit in the candidate set.
    fn color(
        &mut self,
        cand: &BitRow,
        threshold: usize,
        verts: &mut Vec<usize>,
        bounds: &mut Vec<usize>,
    ) {
        let mut class_count = 0;
        let mut max_class = 0;
        self.rest.copy_from(cand);
        while !self.rest.is_empty() {
            if class_count == self.classes.len() {
                self.classes.push(BitRow::zeros(self.order));
            } else {
                self.classes[class_count].clear_all();
            }
            self.avail.copy_from(&self.rest);
            let mut size = 0;
            while let Some(v) = self.avail.first_set() {
                self.avail.clear(v);
                self.avail.and_not(&self.adj[v]);
                self.rest.clear(v);
                self.classes[class_count].set(v);
                size += 1;
            }
            max_class = max_class.max(size);
            class_count += 1;
        }

        // When even maximal independent sets stop at two vertices, the
        // coloring is just a matching on the complement, so drive that
        // matching towards maximum instead of exchanging classes.
        if max_class <= 2 && class_count > threshold {
            class_count = self.pair_up(cand);
            for (ci, members) in self.classes[..class_count].iter().enumerate().skip(threshold)
            {
                for v in members.iter_ones() {
                    verts.push(v);
                    bounds.push(ci + 1);
                }
            }
            return;
        }

        for high in threshold..class_count {
            self.moved.clear();
            self.moved.extend(self.classes[high].iter_ones());
            for i in 0..self.moved.len() {
                let v = self.moved[i];
                if self.recolor_below(v, threshold) {
                    self.classes[high].clear(v);
                } else {
                    verts.push(v);
                    bounds.push(high + 1);
                }
            }
        }
    }

    /// Rebuilds the classes as a complement matching: greedy pairs, then
    /// alternating-path augmentation from every unmatched vertex. Pairs
    /// and leftovers are independent sets of the graph, so the result is
    /// a proper coloring with one class per pair or singleton.
    fn pair_up(&mut self, cand: &BitRow) -> usize {
        for v in cand.iter_ones() {
            self.mate[v] = UNMATCHED;
        }
        for v in cand.iter_ones() {
            if self.mate[v] != UNMATCHED {
                continue;
            }
            for w in cand.iter_ones_andnot(&self.adj[v]) {
                if w != v && self.mate[w] == UNMATCHED {
                    self.mate[v] = w;
                    self.mate[w] = v;
                    break;
                }
            }
        }
        for v in cand.iter_ones() {
            if self.mate[v] == UNMATCHED {
                self.visited.clear_all();
                self.visited.set(v);
                augment(self.adj, cand, &mut self.mate, &mut self.visited, v);
            }
        }

        let mut class_count = 0;
        self.rest.copy_from(cand);
        while let Some(v) = self.rest.first_set() {
            self.rest.clear(v);
            if class_count == self.classes.len() {
                self.classes.push(BitRow::zeros(self.order));
            } else {
                self.classes[class_count].clear_all();
            }
            self.classes[class_count].set(v);
            let w = self.mate[v];
            if w != UNMATCHED {
                debug_assert!(self.rest.test(w) && !self.adj[v].test(w));
                self.rest.clear(w);
                self.classes[class_count].set(w);
            }
            class_count += 1;
        }
        class_count
    }

    /// The exchange step: a class `c1` below the threshold with a single
    /// neighbor `w` of `v`, plus a second low class with no neighbor of
    /// `w`, lets `w` move aside and `v` drop into `c1`. A low class that
    /// lost its only conflict takes `v` directly.
    fn recolor_below(&mut self, v: usize, threshold: usize) -> bool {
        let limit = threshold.min(self.classes.len());
        for c1 in 0..limit {
            let (conflicts, w) = self.classes[c1].conflict_probe(&self.adj[v]);
            if conflicts == 0 {
                self.classes[c1].set(v);
                return true;
            }
            if conflicts > 1 {
                continue;
            }
            for c2 in 0..limit {
                if c2 != c1 && !self.classes[c2].intersects(&self.adj[w]) {
                    self.classes[c1].clear(w);
                    self.classes[c2].set(w);
                    self.classes[c1].set(v);
                    return true;
                }
            }
        }
        false
    }
}

/// Reorders vertices by a greedy coloring of the whole graph (color
/// ascending, then the incoming order), so branching starts from the
/// vertices the coloring considers hardest.
fn color_order(graph: &IntersectionGraph, order: &[usize]) -> Vec<usize> {
    let n = graph.order();
    let mut remaining: Vec<usize> = order.to_vec();
    let mut out: Vec<usize> = Vec::with_capacity(n);
    let mut in_class = BitRow::zeros(n);
    while !remaining.is_empty() {
        in_class.clear_all();
        let mut rest = Vec::with_capacity(remaining.len());
        for &v in &remaining {
            if !in_class.intersects(graph.row(v)) {
                in_class.set(v);
                out.push(v);
            } else {
                rest.push(v);
            }
        }
        remaining = rest;
    }
    out
}

/// Exact maximum clique. `seed_clique` must be a clique (possibly empty);
/// it becomes the initial incumbent, so when it is already maximum the
/// search only has to prove optimality and returns it as the witness.
pub fn max_clique(graph: &IntersectionGraph, seed_clique: &[usize]) -> SearchResult {
    let order = graph.order();
    for (i, &u) in seed_clique.iter().enumerate() {
        assert!(u < order, "seed vertex {u} out of range");
        for &v in &seed_clique[i + 1..] {
            assert!(graph.adjacent(u, v), "seed is not a clique: {u} !~ {v}");
        }
    }

    // static order: degree descending, index ascending
    let mut by_rank: Vec<usize> = (0..order).collect();
    by_rank.sort_by_key(|&v| (Reverse(graph.degree(v)), v));
    by_rank = color_order(graph, &by_rank);
    let mut rank = vec![0usize; order];
    for (r, &v) in by_rank.iter().enumerate() {
        rank[v] = r;
    }
    let adj: Vec<BitRow> = by_rank
        .iter()
        .map(|&v| {
            let mut row = BitRow::zeros(order);
            for u in graph.row(v).iter_ones() {
                row.set(rank[u]);
            }
            row
        })
        .collect();

    let mut searcher = Searcher {
        adj: &adj,
        order,
        best_size: seed_clique.len(),
        best: seed_clique.iter().map(|&v| rank[v]).collect(),
        nodes: 0,
        classes: Vec::new(),
        rest: BitRow::zeros(order),
        avail: BitRow::zeros(order),
        moved: Vec::new(),
        mate: vec![UNMATCHED; order],
        visited: BitRow::zeros(order),
    };
    if order > 0 {
        let mut cand = BitRow::zeros(order);
        for v in 0..order {
            cand.set(v);
        }
        searcher.expand(&cand, &mut Vec::new());
    }

    let mut witness: Vec<usize> = searcher.best.iter().map(|&r| by_rank[r]).collect();
    witness.sort_unstable();
    for (i, &u) in witness.iter().enumerate() {
        for &v in &witness[i + 1..] {
            assert!(graph.adjacent(u, v), "witness failed adjacency re-check");
        }
    }
    assert_eq!(witness.len(), searcher.best_size);

    SearchResult {
        size: searcher.best_size,
        witness,
        nodes_explored: searcher.nodes,
        seeded_bound: seed_clique.len(),
    }
}

/// Exhaustive maximum-clique oracle: plain recursion over candidate
/// masks, no pruning beyond adjacency. Only for graphs of order <= 20.
pub fn naive_max_clique(graph: &IntersectionGraph) -> Result<usize, Error> {
    let order = graph.order();
    if order > NAIVE_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            max: NAIVE_MAX_ORDER,
        });
    }
    let masks: Vec<u32> = (0..order)
        .map(|v| graph.row(v).iter_ones().fold(0u32, |m, u| m | 1 << u))
        .collect();

    fn recurse(masks: &[u32], cand: u32, size: usize) -> usize {
        let mut best = size;
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            best = best.max(recurse(masks, c & masks[v], size + 1));
        }
        best
    }

    let all = if order == 0 { 0 } else { (1u32 << order) - 1 };
    Ok(recurse(&masks, all, 0))
}

/// Exact maximum intersecting subfamily, seeded with the star at vertex 0
/// unless `seed_star` is off.
pub fn max_intersecting(
    family: &Family,
    cap: usize,
    seed_star: bool,
) -> Result<SearchResult, Error> {
    let graph = IntersectionGraph::from_family(family, cap)?;
    let seed = if seed_star { family.star(0)? } else { Vec::new() };
    Ok(max_clique(&graph, &seed))
}

/// Which side of the `n >= 2p+s` threshold an instance sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    EkrRange,
    Degenerate,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::EkrRange => "ekr-range",
            Regime::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The verdict for one instance. In the EKR range the property holds iff
/// the exact maximum equals the star size; in the degenerate range iff
/// the whole family is pairwise intersecting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EkrVerdict {
    pub params: MatchingParams,
    pub family_size: u64,
    pub star_size: u64,
    pub max_intersecting: u64,
    pub regime: Regime,
    pub holds: bool,
}

/// Enumerates the family, solves it exactly and judges the instance.
/// The closed-form size check happens before enumeration so oversized
/// requests fail fast instead of allocating.
pub fn verify_ekr_instance(
    params: MatchingParams,
    cap: usize,
    seed_star: bool,
) -> Result<(EkrVerdict, SearchResult), Error> {
    if params.family_size() > cap as u64 {
        return Err(Error::CapExceeded {
            size: params.family_size(),
            cap: cap as u64,
        });
    }
    let family = Family::enumerate(params);
    let star = family.star(0)?;
    let star_size = star.len() as u64;
    assert_eq!(star_size, params.star_size(), "star size disagrees with closed form");

    let graph = IntersectionGraph::from_family(&family, cap)?;
    let seed: &[usize] = if seed_star { &star } else { &[] };
    let result = max_clique(&graph, seed);

    let regime = if params.is_degenerate() {
        Regime::Degenerate
    } else {
        Regime::EkrRange
    };
    let holds = match regime {
        Regime::EkrRange => result.size as u64 == star_size,
        Regime::Degenerate => {
            let sets: Vec<VertexSet> =
                family.members().iter().map(|m| m.vertices()).collect();
            is_intersecting(&sets) && result.size == family.len()
        }
    };
    let verdict = EkrVerdict {
        params,
        family_size: family.len() as u64,
        star_size,
        max_intersecting: result.size as u64,
        regime,
        holds,
    };
    Ok((verdict, result))
}

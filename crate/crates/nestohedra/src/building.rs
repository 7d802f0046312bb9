//! Building sets: construction, validation, restriction/contraction,
//! connectivity, graphical origin, chordality, flagness.
//!
//! A building set on a ground set `S ⊆ {1..n}` is a family of nonempty
//! subsets of `S` containing every singleton of `S` (B1) and closed under
//! unions of intersecting members (B2). Ground sets keep their original
//! labels through restriction and contraction because chordality depends on
//! the integer order of the labels.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::DEFAULT_MAX_N;

/// Search bound for `is_graphical`; the orientation search is exponential in
/// the number of co-member pairs.
pub const DEFAULT_GRAPHICAL_BOUND: usize = 8;

/// A subset of `{1..16}` as a bitmask; bit `i-1` encodes element `i`.
///
/// The canonical total order is by cardinality, then lexicographic on the
/// ascending element lists. That order is used everywhere determinism is
/// required (error witnesses, tie-breaking, serialized output).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        let mut mask = 0u32;
        for e in elements {
            assert!((1..=32).contains(&e), "element out of range");
            mask |= 1 << (e - 1);
        }
        Subset(mask)
    }

    /// The full set `{1..n}`.
    pub fn full(n: usize) -> Subset {
        if n == 0 {
            Subset(0)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset::from_elements([i])
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.0;
        (0..32).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn min_element(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    pub fn max_element(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(32 - self.0.leading_zeros() as usize)
        }
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(&self) -> Vec<Subset> {
        let m = self.0;
        let mut out = Vec::with_capacity(1 << self.len());
        let mut s = 0u32;
        loop {
            out.push(Subset(s));
            if s == m {
                break;
            }
            s = (s.wrapping_sub(m)) & m;
        }
        out
    }

    /// Label set as `{a,b,…}`, the vertex-label format of the complexes.
    pub fn label(&self) -> String {
        let inner: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements().cmp(other.elements()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl From<Subset> for Vec<usize> {
    fn from(s: Subset) -> Vec<usize> {
        s.elements().collect()
    }
}

impl TryFrom<Vec<usize>> for Subset {
    type Error = String;
    fn try_from(v: Vec<usize>) -> Result<Subset, String> {
        let mut seen = BTreeSet::new();
        for &e in &v {
            if !(1..=32).contains(&e) {
                return Err(format!("element {e} out of range 1..=32"));
            }
            if !seen.insert(e) {
                return Err(format!("duplicate element {e}"));
            }
        }
        Ok(Subset::from_elements(v))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("singleton {{{0}}} missing from building set")]
    MissingSingleton(usize),
    #[error("union closure violated: {0:?} and {1:?} intersect but their union is absent")]
    UnionClosureViolation(Subset, Subset),
    #[error("member {0:?} not contained in the ground set")]
    MemberOutsideGround(Subset),
    #[error("empty set is not a valid member")]
    EmptyMember,
    #[error("ground-set size {n} exceeds the configured cap {cap}")]
    GroundTooLarge { n: usize, cap: usize },
    #[error("graph arc ({0},{1}) out of range or a loop")]
    BadArc(usize, usize),
}

/// A building set over a labelled ground set `ground ⊆ {1..n}`.
///
/// Freshly validated building sets have `ground = {1..n}`; restrictions keep
/// the original labels, so their ground is a proper subset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BuildingSet {
    ground: Subset,
    /// Members in canonical order (cardinality, then lex).
    sets: Vec<Subset>,
    members: u64_or_set::MemberSet,
}

/// Membership lookup; a sorted Vec is enough at these sizes but a hash set
/// keeps `contains` O(1) in the hot enumeration loops.
mod u64_or_set {
    use super::Subset;
    use std::collections::HashSet;

    #[derive(Clone, PartialEq, Eq)]
    pub struct MemberSet(HashSet<u32>);

    impl MemberSet {
        pub fn new(sets: &[Subset]) -> Self {
            MemberSet(sets.iter().map(|s| s.0).collect())
        }
        pub fn contains(&self, s: &Subset) -> bool {
            self.0.contains(&s.0)
        }
    }

    impl std::hash::Hash for MemberSet {
        fn hash<H: std::hash::Hasher>(&self, _state: &mut H) {
            // the sorted `sets` vector already hashes the contents
        }
    }
}

impl fmt::Debug for BuildingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BuildingSet(ground={:?}, sets={:?})", self.ground, self.sets)
    }
}

impl BuildingSet {
    /// Validate `(sets, n)` as a building set on the full ground `{1..n}`.
    pub fn validate(sets: &[Subset], n: usize) -> Result<BuildingSet, BuildError> {
        BuildingSet::validate_with_cap(sets, n, DEFAULT_MAX_N)
    }

    pub fn validate_with_cap(sets: &[Subset], n: usize, cap: usize) -> Result<BuildingSet, BuildError> {
        if n > cap || n > 32 {
            return Err(BuildError::GroundTooLarge { n, cap: cap.min(32) });
        }
        BuildingSet::validate_on_ground(sets, Subset::full(n))
    }

    /// Validate over an arbitrary labelled ground set.
    pub fn validate_on_ground(sets: &[Subset], ground: Subset) -> Result<BuildingSet, BuildError> {
        let mut canon: Vec<Subset> = Vec::new();
        let mut seen = HashSet::new();
        for s in sets {
            if s.is_empty() {
                return Err(BuildError::EmptyMember);
            }
            if !s.is_subset_of(&ground) {
                return Err(BuildError::MemberOutsideGround(*s));
            }
            if seen.insert(s.0) {
                canon.push(*s);
            }
        }
        canon.sort();
        for i in ground.elements() {
            if !seen.contains(&Subset::singleton(i).0) {
                return Err(BuildError::MissingSingleton(i));
            }
        }
        // (B2), first violating pair in canonical order
        for (ai, a) in canon.iter().enumerate() {
            for b in canon.iter().skip(ai + 1) {
                if !a.intersection(b).is_empty() && !seen.contains(&a.union(b).0) {
                    return Err(BuildError::UnionClosureViolation(*a, *b));
                }
            }
        }
        let members = u64_or_set::MemberSet::new(&canon);
        Ok(BuildingSet { ground, sets: canon, members })
    }

    /// The empty building set (ground = ∅); the base case of every recursion.
    pub fn empty() -> BuildingSet {
        BuildingSet {
            ground: Subset::EMPTY,
            sets: Vec::new(),
            members: u64_or_set::MemberSet::new(&[]),
        }
    }

    pub fn ground(&self) -> Subset {
        self.ground
    }

    /// Number of ground elements.
    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    /// Members in canonical order.
    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.members.contains(s)
    }

    pub fn is_connected(&self) -> bool {
        self.ground.is_empty() || self.contains(&self.ground)
    }

    /// Inclusion-maximal members, in canonical order. They partition the ground set.
    pub fn maximal_elements(&self) -> Vec<Subset> {
        self.sets
            .iter()
            .filter(|s| !self.sets.iter().any(|t| s.is_subset_of(t) && *s != t))
            .copied()
            .collect()
    }

    /// Connected components: the restrictions to each maximal element.
    pub fn connected_components(&self) -> Vec<BuildingSet> {
        self.maximal_elements()
            .iter()
            .map(|m| self.restriction(*m))
            .collect()
    }

    /// `{J ∈ B : J ⊆ s}` over ground `ground ∩ s`, labels preserved.
    pub fn restriction(&self, s: Subset) -> BuildingSet {
        let ground = self.ground.intersection(&s);
        let sets: Vec<Subset> = self
            .sets
            .iter()
            .filter(|j| j.is_subset_of(&ground))
            .copied()
            .collect();
        let members = u64_or_set::MemberSet::new(&sets);
        BuildingSet { ground, sets, members }
    }

    /// Contraction by `i`: `{J \ i : J ∈ B, J ⊄ i}` over ground `ground \ i`.
    pub fn contraction(&self, i: Subset) -> BuildingSet {
        let ground = self.ground.difference(&i);
        let mut sets: Vec<Subset> = self
            .sets
            .iter()
            .filter(|j| !j.is_subset_of(&i))
            .map(|j| j.difference(&i))
            .collect();
        sets.sort();
        sets.dedup();
        let members = u64_or_set::MemberSet::new(&sets);
        BuildingSet { ground, sets, members }
    }

    /// Chordality: every suffix (in integer order) of every member is a member.
    pub fn is_chordal(&self) -> bool {
        self.sets.iter().all(|s| {
            let elems: Vec<usize> = s.elements().collect();
            (0..elems.len()).all(|k| self.contains(&Subset::from_elements(elems[k..].iter().copied())))
        })
    }

    /// Flagness: every non-singleton member splits as a disjoint union of two members.
    pub fn is_flag(&self) -> bool {
        self.sets.iter().all(|s| {
            s.len() <= 1
                || self.sets.iter().any(|a| {
                    a.is_subset_of(s) && a.len() < s.len() && self.contains(&s.difference(a))
                })
        })
    }

    /// Is every connected component's support of even (resp. odd) size.
    pub fn is_even(&self) -> bool {
        self.maximal_elements().iter().all(|m| m.len() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.maximal_elements().iter().all(|m| m.len() % 2 == 1)
    }

    /// Relabel every member and the ground through `f` (must be injective on labels).
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> BuildingSet {
        let map = |s: &Subset| Subset::from_elements(s.elements().map(&f));
        let ground = map(&self.ground);
        let mut sets: Vec<Subset> = self.sets.iter().map(map).collect();
        sets.sort();
        let members = u64_or_set::MemberSet::new(&sets);
        BuildingSet { ground, sets, members }
    }

    /// Search for a directed graph witnessing `from_graph(g) == self`.
    ///
    /// Tier 1 tries the candidate with antiparallel arcs exactly on 2-element
    /// members. Tier 2 searches arc options over pairs contained in some
    /// member: pairs that are members are forced antiparallel, other
    /// co-member pairs take one of {none, u→v, v→u} (both would force the
    /// pair into the building set), and arcs between pairs under no member
    /// can always be dropped without changing `from_graph`.
    pub fn is_graphical(&self) -> Result<Option<DirectedGraph>, BuildError> {
        self.is_graphical_with_bound(DEFAULT_GRAPHICAL_BOUND)
    }

    pub fn is_graphical_with_bound(&self, bound: usize) -> Result<Option<DirectedGraph>, BuildError> {
        let n = self.ground.max_element().unwrap_or(0);
        if self.ground_size() > bound {
            return Err(BuildError::GroundTooLarge { n: self.ground_size(), cap: bound });
        }
        let elems: Vec<usize> = self.ground.elements().collect();
        let mut forced = Vec::new();
        let mut free = Vec::new();
        for (ai, &u) in elems.iter().enumerate() {
            for &v in elems.iter().skip(ai + 1) {
                let pair = Subset::from_elements([u, v]);
                if self.contains(&pair) {
                    forced.push((u, v));
                } else if self.sets.iter().any(|s| pair.is_subset_of(s)) {
                    free.push((u, v));
                }
            }
        }
        let base: Vec<(usize, usize)> = forced
            .iter()
            .flat_map(|&(u, v)| [(u, v), (v, u)])
            .collect();
        // tier 1: the forced candidate alone
        let candidate = DirectedGraph::new(n, base.clone())?;
        if &from_graph_on(&candidate, self.ground) == self {
            return Ok(Some(candidate));
        }
        // tier 2: 3 options per free pair
        let mut choice = vec![0u8; free.len()];
        loop {
            // advance to the next configuration (the all-none one was tier 1)
            let mut k = 0;
            loop {
                if k == free.len() {
                    return Ok(None);
                }
                choice[k] += 1;
                if choice[k] < 3 {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            let mut arcs = base.clone();
            for (idx, &(u, v)) in free.iter().enumerate() {
                match choice[idx] {
                    1 => arcs.push((u, v)),
                    2 => arcs.push((v, u)),
                    _ => {}
                }
            }
            let g = DirectedGraph::new(n, arcs)?;
            if &from_graph_on(&g, self.ground) == self {
                return Ok(Some(g));
            }
        }
    }
}

/// Directed graph on nodes `1..=n`, no loops. Undirected graphs are encoded
/// as antiparallel arc pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedGraph {
    pub n: usize,
    pub arcs: BTreeSet<(usize, usize)>,
}

impl DirectedGraph {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, arcs: I) -> Result<DirectedGraph, BuildError> {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u == v || u < 1 || v < 1 || u > n || v > n {
                return Err(BuildError::BadArc(u, v));
            }
            set.insert((u, v));
        }
        Ok(DirectedGraph { n, arcs: set })
    }

    /// Undirected graph: each edge becomes an antiparallel arc pair.
    pub fn undirected<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<DirectedGraph, BuildError> {
        let mut arcs = Vec::new();
        for (u, v) in edges {
            arcs.push((u, v));
            arcs.push((v, u));
        }
        DirectedGraph::new(n, arcs)
    }

    pub fn path(n: usize) -> DirectedGraph {
        DirectedGraph::undirected(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    pub fn complete(n: usize) -> DirectedGraph {
        DirectedGraph::undirected(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)))).unwrap()
    }

    /// Star `K_{1,n}` on `n+1` nodes, center labelled `n+1`.
    pub fn star(n: usize) -> DirectedGraph {
        DirectedGraph::undirected(n + 1, (1..=n).map(|i| (i, n + 1))).unwrap()
    }

    /// Is the subgraph induced on `mask` strongly connected (nonempty)?
    pub fn strongly_connected_on(&self, mask: Subset) -> bool {
        let Some(start) = mask.min_element() else {
            return false;
        };
        let reach = |forward: bool| -> Subset {
            let mut seen = Subset::singleton(start);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &(a, b) in &self.arcs {
                    let (from, to) = if forward { (a, b) } else { (b, a) };
                    if from == u && mask.contains(to) && !seen.contains(to) {
                        seen = seen.union(&Subset::singleton(to));
                        stack.push(to);
                    }
                }
            }
            seen
        };
        reach(true) == mask && reach(false) == mask
    }
}

/// The graphical building set `{I : g|_I strongly connected}` on `{1..n}`.
pub fn from_graph(g: &DirectedGraph) -> BuildingSet {
    from_graph_on(g, Subset::full(g.n))
}

fn from_graph_on(g: &DirectedGraph, ground: Subset) -> BuildingSet {
    let sets: Vec<Subset> = ground
        .subsets()
        .into_iter()
        .filter(|s| !s.is_empty() && g.strongly_connected_on(*s))
        .collect();
    BuildingSet::validate_on_ground(&sets, ground).expect("graphical sets always satisfy (B1),(B2)")
}

/// Close a family under unions of intersecting members and add all
/// singletons of `ground`; used by generators, never by `validate`.
pub fn union_closure(sets: &[Subset], ground: Subset) -> Vec<Subset> {
    let mut family: BTreeSet<Subset> = sets.iter().copied().filter(|s| !s.is_empty()).collect();
    for i in ground.elements() {
        family.insert(Subset::singleton(i));
    }
    loop {
        let current: Vec<Subset> = family.iter().copied().collect();
        let mut added = false;
        for (ai, a) in current.iter().enumerate() {
            for b in current.iter().skip(ai + 1) {
                if !a.intersection(b).is_empty() {
                    added |= family.insert(a.union(b));
                }
            }
        }
        if !added {
            return family.into_iter().collect();
        }
    }
}

// ---------------------------------------------------------------------------
// JSON formats
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct BuildingSetJson {
    n: usize,
    sets: Vec<Subset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ground: Option<Subset>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    arcs: Vec<(usize, usize)>,
    #[serde(default)]
    undirected: bool,
}

impl BuildingSet {
    pub fn to_json(&self) -> serde_json::Value {
        let full = self.ground == Subset::full(self.ground.max_element().unwrap_or(0));
        serde_json::to_value(BuildingSetJson {
            n: self.ground.max_element().unwrap_or(0),
            sets: self.sets.clone(),
            ground: if full { None } else { Some(self.ground) },
        })
        .expect("serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<BuildingSet, String> {
        let parsed: BuildingSetJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        let ground = parsed.ground.unwrap_or_else(|| Subset::full(parsed.n));
        BuildingSet::validate_on_ground(&parsed.sets, ground).map_err(|e| e.to_string())
    }
}

impl DirectedGraph {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            n: self.n,
            arcs: self.arcs.iter().copied().collect(),
            undirected: false,
        })
        .expect("serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<DirectedGraph, String> {
        let parsed: GraphJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        let g = if parsed.undirected {
            DirectedGraph::undirected(parsed.n, parsed.arcs)
        } else {
            DirectedGraph::new(parsed.n, parsed.arcs)
        };
        g.map_err(|e| e.to_string())
    }
}

#[cfg(test)]
pub(crate) fn bs(n: usize, sets: &[&[usize]]) -> BuildingSet {
    let subsets: Vec<Subset> = sets.iter().map(|s| Subset::from_elements(s.iter().copied())).collect();
    BuildingSet::validate(&subsets, n).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn subsets(sets: &[&[usize]]) -> Vec<Subset> {
        sets.iter().map(|s| Subset::from_elements(s.iter().copied())).collect()
    }

    #[test]
    fn canonical_subset_order() {
        let mut v = subsets(&[&[2, 3], &[1], &[1, 4], &[1, 2, 3], &[2]]);
        v.sort();
        assert_eq!(v, subsets(&[&[1], &[2], &[1, 4], &[2, 3], &[1, 2, 3]]));
    }

    #[test]
    fn path_building_set_is_valid() {
        let sets = subsets(&[
            &[1], &[2], &[3], &[4], &[1, 2], &[2, 3], &[3, 4], &[1, 2, 3], &[2, 3, 4], &[1, 2, 3, 4],
        ]);
        assert!(BuildingSet::validate(&sets, 4).is_ok());
        assert!(BuildingSet::validate(&subsets(&[&[1]]), 1).is_ok());
    }

    #[test]
    fn union_closure_violation_names_first_pair() {
        let sets = subsets(&[&[1], &[2], &[3], &[1, 2], &[2, 3]]);
        let err = BuildingSet::validate(&sets, 3).unwrap_err();
        assert_eq!(
            err,
            BuildError::UnionClosureViolation(
                Subset::from_elements([1, 2]),
                Subset::from_elements([2, 3])
            )
        );
    }

    #[test]
    fn missing_singleton_detected() {
        let sets = subsets(&[&[1], &[1, 2]]);
        assert_eq!(BuildingSet::validate(&sets, 2).unwrap_err(), BuildError::MissingSingleton(2));
    }

    #[test]
    fn from_graph_path_gives_intervals() {
        let b = from_graph(&DirectedGraph::path(4));
        let expected = bs(4, &[
            &[1], &[2], &[3], &[4], &[1, 2], &[2, 3], &[3, 4], &[1, 2, 3], &[2, 3, 4], &[1, 2, 3, 4],
        ]);
        assert_eq!(b, expected);
    }

    #[test]
    fn from_graph_complete_gives_all_subsets() {
        let b = from_graph(&DirectedGraph::complete(3));
        assert_eq!(b.sets().len(), 7);
    }

    #[test]
    fn from_graph_directed_three_cycle() {
        // oracle: only the singletons and the whole cycle induce strongly
        // connected subgraphs (frozen by hand over all 7 nonempty subsets)
        let g = DirectedGraph::new(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
        let b = from_graph(&g);
        assert_eq!(b, bs(3, &[&[1], &[2], &[3], &[1, 2, 3]]));
    }

    #[test]
    fn restriction_and_contraction_examples() {
        let b = from_graph(&DirectedGraph::path(4));
        let r = b.restriction(Subset::from_elements([1, 2, 4]));
        assert_eq!(r.sets(), &subsets(&[&[1], &[2], &[4], &[1, 2]])[..]);
        assert_eq!(r.ground(), Subset::from_elements([1, 2, 4]));

        let c = b.contraction(Subset::singleton(2));
        assert_eq!(c.sets(), &subsets(&[&[1], &[3], &[4], &[1, 3], &[3, 4], &[1, 3, 4]])[..]);

        assert_eq!(b.restriction(Subset::full(4)), b);
    }

    #[test]
    fn components_and_maximal_elements() {
        let b = from_graph(&DirectedGraph::path(4));
        assert_eq!(b.maximal_elements(), vec![Subset::full(4)]);
        assert!(b.is_connected());

        let r = b.restriction(Subset::from_elements([1, 2, 4]));
        let maxes = r.maximal_elements();
        assert_eq!(maxes, subsets(&[&[4], &[1, 2]]));
        assert_eq!(r.connected_components().len(), 2);

        let singles = bs(3, &[&[1], &[2], &[3]]);
        assert_eq!(singles.connected_components().len(), 3);
    }

    #[test]
    fn chordality_examples() {
        assert!(from_graph(&DirectedGraph::complete(4)).is_chordal());
        assert!(from_graph(&DirectedGraph::path(4)).is_chordal());
        // path labelled 2-1-3: {1,2,3} is a member but its suffix {2,3} is not
        let g = DirectedGraph::undirected(3, [(2, 1), (1, 3)]).unwrap();
        assert!(!from_graph(&g).is_chordal());
    }

    #[test]
    fn flag_examples() {
        assert!(from_graph(&DirectedGraph::path(4)).is_flag());
        assert!(from_graph(&DirectedGraph::complete(4)).is_flag());
        assert!(!bs(3, &[&[1], &[2], &[3], &[1, 2, 3]]).is_flag());
        // the non-graphical example: {1,2}⊔{3} and {1,2,3}⊔{4}
        let b = bs(4, &[&[1], &[2], &[3], &[4], &[1, 2], &[2, 3], &[1, 3], &[1, 2, 3], &[1, 2, 3, 4]]);
        assert!(b.is_flag());
    }

    #[test]
    fn is_graphical_examples() {
        let b = bs(4, &[&[1], &[2], &[3], &[4], &[1, 2], &[2, 3], &[1, 3], &[1, 2, 3], &[1, 2, 3, 4]]);
        assert_eq!(b.is_graphical().unwrap(), None);

        let p4 = from_graph(&DirectedGraph::path(4));
        let witness = p4.is_graphical().unwrap().expect("graphical");
        assert_eq!(from_graph(&witness), p4);

        let edge = bs(2, &[&[1], &[2], &[1, 2]]);
        let witness = edge.is_graphical().unwrap().expect("graphical");
        assert_eq!(witness.arcs.len(), 2);

        // directed witness required: the 3-cycle building set
        let cyc = bs(3, &[&[1], &[2], &[3], &[1, 2, 3]]);
        let witness = cyc.is_graphical().unwrap().expect("graphical");
        assert_eq!(from_graph(&witness), cyc);
    }

    #[test]
    fn graphical_bound_is_enforced() {
        let b = from_graph(&DirectedGraph::path(4));
        assert!(matches!(b.is_graphical_with_bound(3), Err(BuildError::GroundTooLarge { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let b = from_graph(&DirectedGraph::path(3));
        let v = b.to_json();
        assert_eq!(BuildingSet::from_json(&v).unwrap(), b);
        let g = DirectedGraph::path(3);
        assert_eq!(DirectedGraph::from_json(&g.to_json()).unwrap(), g);
        // undirected expansion
        let v: serde_json::Value = serde_json::json!({"n": 2, "arcs": [[1,2]], "undirected": true});
        assert_eq!(DirectedGraph::from_json(&v).unwrap(), DirectedGraph::path(2));
    }

    /// Random valid building sets for property tests: union-closure of a few
    /// random subsets of `{1..n}`.
    pub(crate) fn arb_building_set(max_n: usize) -> impl Strategy<Value = BuildingSet> {
        (1..=max_n)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    proptest::collection::vec(1u32..(1 << n), 0..5),
                )
            })
            .prop_map(|(n, raw)| {
                let ground = Subset::full(n);
                let seed: Vec<Subset> = raw.into_iter().map(Subset).collect();
                let closed = union_closure(&seed, ground);
                BuildingSet::validate(&closed, n).expect("closure is valid")
            })
    }

    proptest! {
        #[test]
        fn from_graph_always_validates(n in 1usize..6, edges in proptest::collection::vec((1usize..6, 1usize..6), 0..8)) {
            let edges: Vec<(usize, usize)> = edges.into_iter()
                .filter(|(u, v)| u != v && *u <= n && *v <= n)
                .collect();
            let g = DirectedGraph::new(n, edges).unwrap();
            let b = from_graph(&g);
            prop_assert!(BuildingSet::validate(b.sets(), n).is_ok());
        }

        #[test]
        fn restriction_and_contraction_validate(b in arb_building_set(6), mask in 0u32..64) {
            let s = Subset(mask).intersection(&b.ground());
            let r = b.restriction(s);
            prop_assert!(BuildingSet::validate_on_ground(r.sets(), r.ground()).is_ok());
            let c = b.contraction(s);
            prop_assert!(BuildingSet::validate_on_ground(c.sets(), c.ground()).is_ok());
        }

        #[test]
        fn chordal_implies_flag(b in arb_building_set(6)) {
            if b.is_chordal() {
                prop_assert!(b.is_flag());
            }
        }

        #[test]
        fn restriction_of_chordal_is_chordal(b in arb_building_set(6), mask in 0u32..64) {
            if b.is_chordal() {
                prop_assert!(b.restriction(Subset(mask).intersection(&b.ground())).is_chordal());
            }
        }
    }
}

//! Posets: the weak Bruhat order, the partial weak Bruhat order on partial
//! permutations, flip posets on maximal (extended) nested collections,
//! lattice and Möbius computations, and shelling verification.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use thiserror::Error;

use crate::building::{BuildingSet, Subset};
use crate::complex::{extended_facets, maximal_nested_collections, ExtendedFacet};
use crate::perms::{b_partial_permutations, phi, PartialPermutation, PermsError};
use crate::SimplicialComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("size {0} exceeds the cap {1} for this construction")]
    SizeCap(usize, usize),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("complex is not pure")]
    NotPure,
    #[error("facet {0:?} does not belong to the complex")]
    UnknownFacet(Vec<String>),
    #[error("ordering must list every facet exactly once")]
    NotAFacetOrdering,
    #[error("flip relation has a cycle")]
    FlipCycle,
    #[error(transparent)]
    Perms(#[from] PermsError),
}

const WEAK_ORDER_CAP: usize = 7;
const PARTIAL_WEAK_CAP: usize = 6;

/// Finite poset with explicit labels; covers form the transitive reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// Reachability rows: `up[i]` holds the bitset of `j` with `i ≤ j`.
    up: Vec<Vec<u64>>,
    /// Transposed reachability: `down[j]` holds the bitset of `i` with `i ≤ j`.
    down: Vec<Vec<u64>>,
    covers: Vec<(u32, u32)>,
}

fn bit_get(row: &[u64], j: usize) -> bool {
    row[j / 64] & (1 << (j % 64)) != 0
}

fn bit_set(row: &mut [u64], j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

impl Poset {
    /// Build from a strict-or-equal relation given as pairs `(i ≤ j)`;
    /// reflexivity is implied, transitivity is closed off, antisymmetry is
    /// checked, and covers are recovered by transitive reduction.
    pub fn from_relation(labels: Vec<String>, leq_pairs: &[(u32, u32)]) -> Poset {
        let n = labels.len();
        let words = n.div_ceil(64);
        let mut up = vec![vec![0u64; words]; n];
        for (i, row) in up.iter_mut().enumerate() {
            bit_set(row, i);
        }
        for &(i, j) in leq_pairs {
            bit_set(&mut up[i as usize], j as usize);
        }
        // Floyd-Warshall style closure over the boolean matrix
        for k in 0..n {
            for i in 0..n {
                if bit_get(&up[i], k) {
                    let kk = up[k].clone();
                    for (w, bits) in kk.iter().enumerate() {
                        up[i][w] |= bits;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && bit_get(&up[i], j) && bit_get(&up[j], i) {
                    panic!("relation is not antisymmetric: {} and {}", labels[i], labels[j]);
                }
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !bit_get(&up[i], j) {
                    continue;
                }
                let implied = (0..n)
                    .any(|k| k != i && k != j && bit_get(&up[i], k) && bit_get(&up[k], j));
                if !implied {
                    covers.push((i as u32, j as u32));
                }
            }
        }
        covers.sort_unstable();
        let mut down = vec![vec![0u64; words]; n];
        for (i, row) in up.iter().enumerate() {
            for (j, down_row) in down.iter_mut().enumerate() {
                if bit_get(row, j) {
                    bit_set(down_row, i);
                }
            }
        }
        Poset { labels, up, down, covers }
    }

    /// Build from cover pairs `(lower, upper)`; panics on a cycle.
    pub fn from_covers(labels: Vec<String>, covers: &[(u32, u32)]) -> Poset {
        Poset::from_relation(labels, covers)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn covers(&self) -> &[(u32, u32)] {
        &self.covers
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        bit_get(&self.up[i], j)
    }

    pub fn dual(&self) -> Poset {
        let flipped: Vec<(u32, u32)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        Poset::from_covers(self.labels.clone(), &flipped)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| (0..self.len()).all(|i| i == j || !self.leq(i, j)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| j == i || !self.leq(i, j)))
            .collect()
    }

    /// Unique greatest lower bound, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let words = self.up.first().map_or(0, |r| r.len());
        let bound: Vec<u64> = (0..words)
            .map(|w| self.down[x][w] & self.down[y][w])
            .collect();
        self.unique_extreme(&bound, true)
    }

    /// Unique least upper bound, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let words = self.up.first().map_or(0, |r| r.len());
        let bound: Vec<u64> = (0..words)
            .map(|w| self.up[x][w] & self.up[y][w])
            .collect();
        self.unique_extreme(&bound, false)
    }

    /// The unique maximal (resp. minimal) element of a bitset of candidates.
    fn unique_extreme(&self, bound: &[u64], maximal: bool) -> Option<usize> {
        let mut found = None;
        for z in 0..self.len() {
            if !bit_get(bound, z) {
                continue;
            }
            let row = if maximal { &self.up[z] } else { &self.down[z] };
            // z is extreme iff the only candidate related above/below it is z
            let alone = row
                .iter()
                .zip(bound)
                .enumerate()
                .all(|(w, (r, b))| {
                    let mut masked = r & b;
                    if z / 64 == w {
                        masked &= !(1 << (z % 64));
                    }
                    masked == 0
                });
            if alone {
                if found.is_some() {
                    return None;
                }
                found = Some(z);
            }
        }
        found
    }

    /// Lattice test: every pair must have both a meet and a join; returns the
    /// first failing pair otherwise.
    pub fn lattice_check(&self) -> Result<(), (usize, usize)> {
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                if self.meet(x, y).is_none() || self.join(x, y).is_none() {
                    return Err((x, y));
                }
            }
        }
        Ok(())
    }

    /// Möbius function on the interval `[u, v]`.
    pub fn moebius(&self, u: usize, v: usize) -> Result<i64, OrderError> {
        if !self.leq(u, v) {
            return Err(OrderError::NotComparable(
                self.labels[u].clone(),
                self.labels[v].clone(),
            ));
        }
        fn mu(p: &Poset, u: usize, v: usize, memo: &mut HashMap<usize, i64>) -> i64 {
            if let Some(&m) = memo.get(&v) {
                return m;
            }
            let value = if u == v {
                1
            } else {
                let mut acc = 0i64;
                for z in 0..p.len() {
                    if z != v && p.leq(u, z) && p.leq(z, v) {
                        acc += mu(p, u, z, memo);
                    }
                }
                -acc
            };
            memo.insert(v, value);
            value
        }
        Ok(mu(self, u, v, &mut HashMap::new()))
    }

    /// Uniformly-ish random linear extension by repeatedly drawing one of the
    /// currently minimal elements.
    pub fn random_linear_extension<R: Rng>(&self, rng: &mut R) -> Vec<usize> {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            indeg[b as usize] += 1;
            above[a as usize].push(b as usize);
        }
        let mut avail: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while !avail.is_empty() {
            let k = rng.gen_range(0..avail.len());
            let x = avail.swap_remove(k);
            out.push(x);
            for &y in &above[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    avail.push(y);
                }
            }
        }
        assert_eq!(out.len(), n, "covers were acyclic");
        out
    }

    /// Hasse diagram in DOT.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for l in &self.labels {
            s.push_str(&format!("  \"{l}\";\n"));
        }
        for &(a, b) in &self.covers {
            s.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                self.labels[a as usize], self.labels[b as usize]
            ));
        }
        s.push_str("}\n");
        s
    }

    /// Backtracking isomorphism test on Hasse diagrams.
    pub fn is_isomorphic(&self, other: &Poset, budget: usize) -> Option<Vec<(String, String)>> {
        if self.len() != other.len() || self.covers.len() != other.covers.len() {
            return None;
        }
        let sig_a = poset_signatures(self);
        let sig_b = poset_signatures(other);
        let mut count_a: BTreeMap<u64, usize> = BTreeMap::new();
        let mut count_b: BTreeMap<u64, usize> = BTreeMap::new();
        for &s in &sig_a {
            *count_a.entry(s).or_default() += 1;
        }
        for &s in &sig_b {
            *count_b.entry(s).or_default() += 1;
        }
        if count_a != count_b {
            return None;
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| (count_a[&sig_a[v]], v));
        let mut mapping: Vec<Option<usize>> = vec![None; self.len()];
        let mut used = vec![false; self.len()];
        let mut nodes = 0usize;
        let covers_a: BTreeSet<(u32, u32)> = self.covers.iter().copied().collect();
        let covers_b: BTreeSet<(u32, u32)> = other.covers.iter().copied().collect();

        #[allow(clippy::too_many_arguments)]
        fn rec(
            pos: usize,
            order: &[usize],
            sig_a: &[u64],
            sig_b: &[u64],
            covers_a: &BTreeSet<(u32, u32)>,
            covers_b: &BTreeSet<(u32, u32)>,
            n: usize,
            mapping: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            nodes: &mut usize,
            budget: usize,
        ) -> bool {
            *nodes += 1;
            if *nodes > budget {
                return false;
            }
            if pos == order.len() {
                return true;
            }
            let u = order[pos];
            for w in 0..n {
                if used[w] || sig_a[u] != sig_b[w] {
                    continue;
                }
                let ok = mapping.iter().enumerate().all(|(x, m)| match m {
                    Some(y) => {
                        covers_a.contains(&(u as u32, x as u32)) == covers_b.contains(&(w as u32, *y as u32))
                            && covers_a.contains(&(x as u32, u as u32))
                                == covers_b.contains(&(*y as u32, w as u32))
                    }
                    None => true,
                });
                if !ok {
                    continue;
                }
                mapping[u] = Some(w);
                used[w] = true;
                if rec(pos + 1, order, sig_a, sig_b, covers_a, covers_b, n, mapping, used, nodes, budget) {
                    return true;
                }
                mapping[u] = None;
                used[w] = false;
            }
            false
        }

        if rec(
            0, &order, &sig_a, &sig_b, &covers_a, &covers_b, self.len(), &mut mapping, &mut used, &mut nodes, budget,
        ) {
            Some(
                mapping
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (self.labels[i].clone(), other.labels[m.unwrap()].clone()))
                    .collect(),
            )
        } else {
            None
        }
    }
}

fn poset_signatures(p: &Poset) -> Vec<u64> {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};
    let n = p.len();
    let mut down_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut up_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &p.covers {
        up_adj[a as usize].push(b as usize);
        down_adj[b as usize].push(a as usize);
    }
    let mut sig: Vec<u64> = (0..n)
        .map(|v| {
            let mut h = DefaultHasher::new();
            (down_adj[v].len(), up_adj[v].len()).hash(&mut h);
            h.finish()
        })
        .collect();
    for _ in 0..3 {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let mut lo: Vec<u64> = down_adj[v].iter().map(|&u| sig[u]).collect();
                let mut hi: Vec<u64> = up_adj[v].iter().map(|&u| sig[u]).collect();
                lo.sort_unstable();
                hi.sort_unstable();
                let mut h = DefaultHasher::new();
                (sig[v], lo, hi).hash(&mut h);
                h.finish()
            })
            .collect();
        sig = next;
    }
    sig
}

// ---------------------------------------------------------------------------
// Inversion sets and the weak orders
// ---------------------------------------------------------------------------

/// Inversion set of a word: value pairs `(a, b)` with `a > b` and `a`
/// appearing before `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionSet(pub BTreeSet<(usize, usize)>);

impl InversionSet {
    pub fn of_word(word: &[usize]) -> InversionSet {
        let mut set = BTreeSet::new();
        for (i, &a) in word.iter().enumerate() {
            for &b in word.iter().skip(i + 1) {
                if a > b {
                    set.insert((a, b));
                }
            }
        }
        InversionSet(set)
    }

    pub fn is_subset_of(&self, other: &InversionSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

pub fn word_label(word: &[usize]) -> String {
    let inner: Vec<String> = word.iter().map(|e| e.to_string()).collect();
    format!("({})", inner.join(","))
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn rec(pool: &[usize], acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pool.is_empty() {
            out.push(acc.clone());
            return;
        }
        for (i, &x) in pool.iter().enumerate() {
            let mut rest = pool.to_vec();
            rest.remove(i);
            acc.push(x);
            rec(&rest, acc, out);
            acc.pop();
        }
    }
    rec(&(1..=m).collect::<Vec<_>>(), &mut acc, &mut out);
    out.sort();
    out
}

/// The weak Bruhat order on `S_m` (inversion-set containment; covers are the
/// adjacent transpositions).
pub fn weak_order(m: usize) -> Result<Poset, OrderError> {
    if m > WEAK_ORDER_CAP {
        return Err(OrderError::SizeCap(m, WEAK_ORDER_CAP));
    }
    let perms = all_permutations(m);
    let labels: Vec<String> = perms.iter().map(|w| word_label(w)).collect();
    let index: HashMap<&Vec<usize>, u32> = perms.iter().zip(0u32..).collect();
    let mut covers = Vec::new();
    for (i, w) in perms.iter().enumerate() {
        for pos in 0..m.saturating_sub(1) {
            if w[pos] < w[pos + 1] {
                let mut v = w.clone();
                v.swap(pos, pos + 1);
                covers.push((i as u32, index[&v]));
            }
        }
    }
    Ok(Poset::from_covers(labels, &covers))
}

/// All partial permutations of `[n]` (or only the B-partial ones), ordered by
/// inversion-set containment of their `φ`-images.
pub fn partial_weak_order(b: Option<&BuildingSet>, n: usize) -> Result<Poset, OrderError> {
    if n > PARTIAL_WEAK_CAP {
        return Err(OrderError::SizeCap(n, PARTIAL_WEAK_CAP));
    }
    let words: Vec<PartialPermutation> = match b {
        Some(b) => {
            assert_eq!(b.ground_size(), n, "building set must live on [n]");
            b_partial_permutations(b)?
        }
        None => {
            let mut out = Vec::new();
            for s in Subset::full(n).subsets() {
                let elems: Vec<usize> = s.elements().collect();
                let mut acc = Vec::new();
                fn rec(pool: &[usize], acc: &mut Vec<usize>, out: &mut Vec<PartialPermutation>) {
                    if pool.is_empty() {
                        out.push(PartialPermutation { word: acc.clone() });
                        return;
                    }
                    for (i, &x) in pool.iter().enumerate() {
                        let mut rest = pool.to_vec();
                        rest.remove(i);
                        acc.push(x);
                        rec(&rest, acc, out);
                        acc.pop();
                    }
                }
                rec(&elems, &mut acc, &mut out);
            }
            out.sort();
            out
        }
    };
    let labels: Vec<String> = words.iter().map(|w| word_label(&w.word)).collect();
    let invs: Vec<InversionSet> = words
        .iter()
        .map(|w| InversionSet::of_word(&phi(w, n).word))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..words.len() {
        for j in 0..words.len() {
            if i != j && invs[i].is_subset_of(&invs[j]) {
                pairs.push((i as u32, j as u32));
            }
        }
    }
    Ok(Poset::from_relation(labels, &pairs))
}

// ---------------------------------------------------------------------------
// Flip posets on maximal (extended) nested collections
// ---------------------------------------------------------------------------

/// Top element of a member inside a maximal collection: the unique element
/// not covered by any smaller member of the collection.
fn top_of(members: &[Subset], m: &Subset) -> usize {
    let mut covered = Subset::EMPTY;
    for other in members {
        if other != m && other.is_subset_of(m) {
            covered = covered.union(other);
        }
    }
    let free = m.difference(&covered);
    debug_assert_eq!(free.len(), 1, "maximal collections cover all but the top");
    free.min_element().expect("nonempty top")
}

pub fn facet_label(members: &[Subset], designs: Subset) -> String {
    let mut parts: Vec<String> = members.iter().map(crate::complex::member_label).collect();
    parts.extend(designs.elements().map(crate::complex::design_label));
    parts.join("|")
}

/// Flip poset on maximal nested collections (`extended = false`) or maximal
/// extended nested collections (`extended = true`).
///
/// Edges are facet pairs sharing all but one element; a same-support edge is
/// oriented by comparing the top elements of the exchanged members, and a
/// support-changing edge (extended case only) points from larger support to
/// smaller. Acyclicity is asserted.
pub fn flip_poset(b: &BuildingSet, extended: bool) -> Result<Poset, OrderError> {
    let facets: Vec<ExtendedFacet> = if extended {
        extended_facets(b)
    } else {
        maximal_nested_collections(b)
            .into_iter()
            .map(|members| ExtendedFacet { members, designs: Subset::EMPTY })
            .collect()
    };
    let labels: Vec<String> = facets
        .iter()
        .map(|f| facet_label(&f.members, f.designs))
        .collect();
    let mut covers: Vec<(u32, u32)> = Vec::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            let fi = &facets[i];
            let fj = &facets[j];
            let shared_members = fi.members.iter().filter(|m| fj.members.contains(m)).count();
            let shared_designs = fi.designs.intersection(&fj.designs).len();
            let size = fi.members.len() + fi.designs.len();
            if shared_members + shared_designs != size - 1 {
                continue;
            }
            if fi.designs == fj.designs {
                let mi = *fi.members.iter().find(|m| !fj.members.contains(m)).expect("exchanged");
                let mj = *fj.members.iter().find(|m| !fi.members.contains(m)).expect("exchanged");
                let ti = top_of(&fi.members, &mi);
                let tj = top_of(&fj.members, &mj);
                if ti < tj {
                    covers.push((i as u32, j as u32));
                } else {
                    covers.push((j as u32, i as u32));
                }
            } else {
                // support-changing flip: orient from larger support to smaller
                if fi.designs.len() < fj.designs.len() {
                    covers.push((i as u32, j as u32));
                } else {
                    covers.push((j as u32, i as u32));
                }
            }
        }
    }
    if !is_acyclic(facets.len(), &covers) {
        return Err(OrderError::FlipCycle);
    }
    Ok(Poset::from_covers(labels, &covers))
}

fn is_acyclic(n: usize, edges: &[(u32, u32)]) -> bool {
    let mut indeg = vec![0usize; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        indeg[b as usize] += 1;
        adj[a as usize].push(b as usize);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(x) = stack.pop() {
        seen += 1;
        for &y in &adj[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                stack.push(y);
            }
        }
    }
    seen == n
}

/// Facet of `N□(B)` labelled by a partial permutation: working from the end
/// of the word, take the maximal member of the shrinking restriction that
/// contains the current entry.
pub fn facet_of_partial_permutation(b: &BuildingSet, w: &PartialPermutation) -> ExtendedFacet {
    let r = w.word.len();
    let mut members = Vec::new();
    for k in 1..=r {
        let prefix = Subset::from_elements(w.word[..r - k + 1].iter().copied());
        let target = w.word[r - k];
        let restricted = b.restriction(prefix);
        let c = restricted
            .maximal_elements()
            .into_iter()
            .find(|m| m.contains(target))
            .expect("some maximal member contains the entry");
        members.push(c);
    }
    members.sort();
    members.dedup();
    ExtendedFacet {
        members,
        designs: b.ground().difference(&w.entry_set()),
    }
}

// ---------------------------------------------------------------------------
// Shelling verification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingReport {
    pub ok: bool,
    /// 0-based positions `(i, j)` of the first failing pair.
    pub witness: Option<(usize, usize)>,
}

impl ShellingReport {
    pub fn to_json(&self) -> serde_json::Value {
        match self.witness {
            Some((i, j)) => serde_json::json!({"ok": self.ok, "witness": [i, j]}),
            None => serde_json::json!({"ok": self.ok}),
        }
    }
}

/// Check the pairwise shelling condition: for all `i < j`, some `ℓ < j` has
/// `F_i ∩ F_j ⊆ F_ℓ ∩ F_j` with `|F_ℓ ∩ F_j| = d - 1`.
pub fn verify_shelling(
    complex: &SimplicialComplex,
    order: &[Vec<String>],
) -> Result<ShellingReport, OrderError> {
    let d = complex.pure_facet_cardinality().map_err(|_| OrderError::NotPure)?;
    let mut facets: Vec<BTreeSet<u32>> = Vec::new();
    for labels in order {
        let mut f = BTreeSet::new();
        for l in labels {
            let v = complex
                .vertex_index(l)
                .ok_or_else(|| OrderError::UnknownFacet(labels.clone()))?;
            f.insert(v);
        }
        facets.push(f);
    }
    let mut canon: Vec<Vec<u32>> = facets
        .iter()
        .map(|f| f.iter().copied().collect::<Vec<u32>>())
        .collect();
    canon.sort();
    let mut actual: Vec<Vec<u32>> = complex.facets().to_vec();
    actual.sort();
    if canon != actual {
        return Err(OrderError::NotAFacetOrdering);
    }
    for j in 1..facets.len() {
        for i in 0..j {
            let inter: BTreeSet<u32> = facets[i].intersection(&facets[j]).copied().collect();
            let found = (0..j).any(|l| {
                let lj: BTreeSet<u32> = facets[l].intersection(&facets[j]).copied().collect();
                lj.len() == d - 1 && inter.is_subset(&lj)
            });
            if !found {
                return Ok(ShellingReport { ok: false, witness: Some((i, j)) });
            }
        }
    }
    Ok(ShellingReport { ok: true, witness: None })
}

//! Nested and extended nested collections, their simplicial complexes,
//! link decompositions, minimal non-faces, independence complexes, and a
//! generic isomorphism checker.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::building::{BuildingSet, Subset};
use crate::poly::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("member {0:?} is not in the building set")]
    MemberNotInBuildingSet(Subset),
    #[error("vertex {0} is not in the complex")]
    VertexNotInComplex(String),
    #[error("isomorphism search exceeded the node budget of {0}")]
    SearchBudgetExceeded(usize),
    #[error("complex is not pure: facet cardinalities {0} and {1} differ")]
    NotPure(usize, usize),
}

/// Vertex label of the complex vertex for a building-set member.
pub fn member_label(s: &Subset) -> String {
    s.label()
}

/// Vertex label for the design vertex `x_i`.
pub fn design_label(i: usize) -> String {
    format!("x_{i}")
}

/// An explicit vertex-labelled simplicial complex, given by its facets.
///
/// Facets are stored as sorted vertex-index lists in canonical order. A
/// vertex may be isolated (in no facet); independence complexes need that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Build from facets (vertex-index lists); prunes faces contained in
    /// another facet, dedups, and sorts canonically.
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<u32>>) -> SimplicialComplex {
        let mut norm: Vec<Vec<u32>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                for &v in &f {
                    assert!((v as usize) < vertices.len(), "facet vertex out of range");
                }
                f
            })
            .collect();
        norm.sort();
        norm.dedup();
        let maximal: Vec<Vec<u32>> = norm
            .iter()
            .filter(|f| {
                !norm
                    .iter()
                    .any(|g| g.len() > f.len() && f.iter().all(|v| g.binary_search(v).is_ok()))
            })
            .cloned()
            .collect();
        SimplicialComplex { vertices, facets: maximal }
    }

    pub fn from_labelled_facets(vertices: Vec<String>, facets: Vec<Vec<String>>) -> SimplicialComplex {
        let index: HashMap<&String, u32> = vertices.iter().zip(0u32..).collect();
        let facets = facets
            .iter()
            .map(|f| f.iter().map(|l| *index.get(l).expect("unknown vertex label")).collect())
            .collect();
        SimplicialComplex::new(vertices, facets)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|&v| self.vertices[v as usize].clone()).collect())
            .collect()
    }

    pub fn vertex_index(&self, label: &str) -> Option<u32> {
        self.vertices.iter().position(|v| v == label).map(|i| i as u32)
    }

    /// Facet cardinality if pure.
    pub fn pure_facet_cardinality(&self) -> Result<usize, ComplexError> {
        let mut it = self.facets.iter();
        let first = it.next().map_or(0, |f| f.len());
        for f in it {
            if f.len() != first {
                return Err(ComplexError::NotPure(first, f.len()));
            }
        }
        Ok(first)
    }

    pub fn is_face(&self, face: &[u32]) -> bool {
        self.facets
            .iter()
            .any(|f| face.iter().all(|v| f.binary_search(v).is_ok()))
    }

    /// All faces grouped by cardinality; index `k` holds the faces of size `k`.
    pub fn faces_by_size(&self) -> Vec<HashSet<Vec<u32>>> {
        let cap = self.facets.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut levels: Vec<HashSet<Vec<u32>>> = vec![HashSet::new(); cap + 1];
        levels[0].insert(Vec::new());
        for facet in &self.facets {
            let k = facet.len();
            let mut stack = vec![(Vec::new(), 0usize)];
            while let Some((face, idx)) = stack.pop() {
                if idx == k {
                    if !face.is_empty() {
                        levels[face.len()].insert(face);
                    }
                    continue;
                }
                let mut with = face.clone();
                with.push(facet[idx]);
                stack.push((with, idx + 1));
                stack.push((face, idx + 1));
            }
        }
        levels
    }

    /// `Σ_F u^{|F|}` over all faces including the empty face.
    pub fn face_count_polynomial(&self) -> IntPolynomial {
        let levels = self.faces_by_size();
        IntPolynomial::from_coeffs(levels.iter().map(|l| l.len() as i64).collect())
    }

    /// Link of a vertex: maximal sets `Φ \ {v}` over facets `Φ ∋ v`.
    /// Vertices of the link are those appearing in a link facet.
    pub fn link_of(&self, label: &str) -> Result<SimplicialComplex, ComplexError> {
        let v = self
            .vertex_index(label)
            .ok_or_else(|| ComplexError::VertexNotInComplex(label.to_string()))?;
        let mut used: BTreeSet<u32> = BTreeSet::new();
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for f in &self.facets {
            if f.binary_search(&v).is_ok() {
                let g: Vec<u32> = f.iter().copied().filter(|&u| u != v).collect();
                used.extend(g.iter().copied());
                raw.push(g);
            }
        }
        if raw.is_empty() {
            return Err(ComplexError::VertexNotInComplex(label.to_string()));
        }
        let verts: Vec<u32> = used.into_iter().collect();
        let remap: HashMap<u32, u32> = verts.iter().zip(0u32..).map(|(&old, new)| (old, new)).collect();
        let labels = verts.iter().map(|&u| self.vertices[u as usize].clone()).collect();
        let facets = raw
            .into_iter()
            .map(|f| f.into_iter().map(|u| remap[&u]).collect())
            .collect();
        Ok(SimplicialComplex::new(labels, facets))
    }

    /// Join: vertex labels must be disjoint; facets are pairwise unions.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut vertices = self.vertices.clone();
        for l in &other.vertices {
            assert!(!vertices.contains(l), "join requires disjoint vertex labels");
            vertices.push(l.clone());
        }
        let off = self.vertices.len() as u32;
        let self_facets: Vec<Vec<u32>> = if self.facets.is_empty() { vec![Vec::new()] } else { self.facets.clone() };
        let other_facets: Vec<Vec<u32>> = if other.facets.is_empty() { vec![Vec::new()] } else { other.facets.clone() };
        let mut facets = Vec::new();
        for a in &self_facets {
            for b in &other_facets {
                let mut f = a.clone();
                f.extend(b.iter().map(|&v| v + off));
                facets.push(f);
            }
        }
        SimplicialComplex::new(vertices, facets)
    }

    /// Minimal non-faces, level by level; sizes beyond
    /// `max_facet_cardinality + 1` cannot be minimal.
    pub fn minimal_non_faces(&self) -> Vec<Vec<u32>> {
        let cap = self.facets.iter().map(|f| f.len()).max().unwrap_or(0) + 1;
        let nv = self.vertices.len() as u32;
        let mut out: Vec<Vec<u32>> = Vec::new();
        let mut prev: HashSet<Vec<u32>> = HashSet::new();
        prev.insert(Vec::new());
        for size in 1..=cap {
            let mut level: HashSet<Vec<u32>> = HashSet::new();
            for face in &prev {
                let start = face.last().map_or(0, |&m| m + 1);
                for v in start..nv {
                    let mut cand = face.clone();
                    cand.push(v);
                    if self.is_face(&cand) {
                        level.insert(cand);
                    } else if size == 1
                        || (0..cand.len()).all(|skip| {
                            let sub: Vec<u32> = cand
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| *i != skip)
                                .map(|(_, &u)| u)
                                .collect();
                            sub.is_empty() || self.is_face(&sub)
                        })
                    {
                        out.push(cand);
                    }
                }
            }
            prev = level;
        }
        out.sort();
        out
    }

    /// Independence complex: minimal non-faces become the facets, on the same
    /// vertex list (vertices may be isolated).
    pub fn independence_complex(&self) -> SimplicialComplex {
        SimplicialComplex::new(self.vertices.clone(), self.minimal_non_faces())
    }

    /// 1-skeleton of the independence complex: edges = vertex pairs inside
    /// some minimal non-face.
    pub fn independence_graph(&self) -> Vec<(u32, u32)> {
        let mut edges = BTreeSet::new();
        for nf in self.minimal_non_faces() {
            for (i, &u) in nf.iter().enumerate() {
                for &v in nf.iter().skip(i + 1) {
                    edges.insert((u, v));
                }
            }
        }
        edges.into_iter().collect()
    }

    /// Connected components of the independence graph over all vertices.
    pub fn independence_components(&self) -> Vec<Vec<u32>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for (u, v) in self.independence_graph() {
            let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
            parent[ru] = rv;
        }
        let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x as u32);
        }
        groups.into_values().collect()
    }

    /// Dimension of the subcomplex restricted to `verts`: max face size − 1.
    pub fn m_size(&self, verts: &[u32]) -> i64 {
        let set: HashSet<u32> = verts.iter().copied().collect();
        let best = self
            .facets
            .iter()
            .map(|f| f.iter().filter(|v| set.contains(v)).count())
            .max()
            .unwrap_or(0);
        best as i64 - 1
    }

    /// DOT rendering of the independence graph.
    pub fn independence_graph_dot(&self) -> String {
        let mut s = String::from("graph independence {\n");
        for v in &self.vertices {
            s.push_str(&format!("  \"{v}\";\n"));
        }
        for (u, v) in self.independence_graph() {
            s.push_str(&format!(
                "  \"{}\" -- \"{}\";\n",
                self.vertices[u as usize], self.vertices[v as usize]
            ));
        }
        s.push_str("}\n");
        s
    }

    /// Apply a label map to every vertex, producing the image facet family
    /// in `other`'s indexing. The map must cover all vertices.
    fn mapped_facets(&self, other: &SimplicialComplex, map: &HashMap<String, String>) -> Option<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        for f in &self.facets {
            let mut img = Vec::new();
            for &v in f {
                let l = map.get(&self.vertices[v as usize])?;
                img.push(other.vertex_index(l)?);
            }
            img.sort_unstable();
            out.push(img);
        }
        out.sort();
        Some(out)
    }

    /// Does the given vertex bijection map facets onto facets?
    pub fn is_isomorphism_witness(&self, other: &SimplicialComplex, map: &HashMap<String, String>) -> bool {
        if self.vertices.len() != other.vertices.len() || map.len() != self.vertices.len() {
            return false;
        }
        let images: HashSet<&String> = map.values().collect();
        if images.len() != map.len() {
            return false;
        }
        match self.mapped_facets(other, map) {
            Some(imgs) => imgs == other.facets,
            None => false,
        }
    }

    /// Backtracking search for a vertex bijection mapping facets to facets.
    /// Deterministic under canonical vertex order; `budget` caps search nodes.
    pub fn is_isomorphic(
        &self,
        other: &SimplicialComplex,
        budget: usize,
    ) -> Result<Option<Vec<(String, String)>>, ComplexError> {
        if self.vertices.len() != other.vertices.len() || self.facets.len() != other.facets.len() {
            return Ok(None);
        }
        let mut sizes_a: Vec<usize> = self.facets.iter().map(|f| f.len()).collect();
        let mut sizes_b: Vec<usize> = other.facets.iter().map(|f| f.len()).collect();
        sizes_a.sort_unstable();
        sizes_b.sort_unstable();
        if sizes_a != sizes_b {
            return Ok(None);
        }

        let sig_a = refine_signatures(self);
        let sig_b = refine_signatures(other);
        let mut count_a: BTreeMap<&u64, usize> = BTreeMap::new();
        let mut count_b: BTreeMap<&u64, usize> = BTreeMap::new();
        for s in &sig_a {
            *count_a.entry(s).or_default() += 1;
        }
        for s in &sig_b {
            *count_b.entry(s).or_default() += 1;
        }
        if count_a != count_b {
            return Ok(None);
        }

        let adj_a = adjacency(self);
        let adj_b = adjacency(other);

        // map rarest signature classes first
        let mut order: Vec<u32> = (0..self.vertices.len() as u32).collect();
        order.sort_by_key(|&v| (count_a[&sig_a[v as usize]], v));

        let mut mapping: Vec<Option<u32>> = vec![None; self.vertices.len()];
        let mut used: Vec<bool> = vec![false; other.vertices.len()];
        let mut nodes = 0usize;

        #[allow(clippy::too_many_arguments)]
        fn backtrack(
            pos: usize,
            order: &[u32],
            a: &SimplicialComplex,
            b: &SimplicialComplex,
            sig_a: &[u64],
            sig_b: &[u64],
            adj_a: &[HashSet<u32>],
            adj_b: &[HashSet<u32>],
            mapping: &mut Vec<Option<u32>>,
            used: &mut Vec<bool>,
            nodes: &mut usize,
            budget: usize,
        ) -> Result<bool, ComplexError> {
            *nodes += 1;
            if *nodes > budget {
                return Err(ComplexError::SearchBudgetExceeded(budget));
            }
            if pos == order.len() {
                let map: HashMap<String, String> = mapping
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (a.vertices[i].clone(), b.vertices[m.unwrap() as usize].clone()))
                    .collect();
                return Ok(a.is_isomorphism_witness(b, &map));
            }
            let u = order[pos];
            for w in 0..b.vertices.len() as u32 {
                if used[w as usize] || sig_a[u as usize] != sig_b[w as usize] {
                    continue;
                }
                // adjacency consistency with everything already mapped
                let ok = mapping.iter().enumerate().all(|(x, m)| match m {
                    Some(y) => adj_a[u as usize].contains(&(x as u32)) == adj_b[w as usize].contains(y),
                    None => true,
                });
                if !ok {
                    continue;
                }
                mapping[u as usize] = Some(w);
                used[w as usize] = true;
                if backtrack(pos + 1, order, a, b, sig_a, sig_b, adj_a, adj_b, mapping, used, nodes, budget)? {
                    return Ok(true);
                }
                mapping[u as usize] = None;
                used[w as usize] = false;
            }
            Ok(false)
        }

        let found = backtrack(
            0, &order, self, other, &sig_a, &sig_b, &adj_a, &adj_b, &mut mapping, &mut used, &mut nodes, budget,
        )?;
        if found {
            let witness = mapping
                .iter()
                .enumerate()
                .map(|(i, m)| (self.vertices[i].clone(), other.vertices[m.unwrap() as usize].clone()))
                .collect();
            Ok(Some(witness))
        } else {
            Ok(None)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComplexJson {
            vertices: self.vertices.clone(),
            facets: self.facet_labels(),
        })
        .expect("serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<SimplicialComplex, String> {
        let parsed: ComplexJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        Ok(SimplicialComplex::from_labelled_facets(parsed.vertices, parsed.facets))
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
}

fn adjacency(c: &SimplicialComplex) -> Vec<HashSet<u32>> {
    let mut adj = vec![HashSet::new(); c.vertices.len()];
    for f in &c.facets {
        for (i, &u) in f.iter().enumerate() {
            for &v in f.iter().skip(i + 1) {
                adj[u as usize].insert(v);
                adj[v as usize].insert(u);
            }
        }
    }
    adj
}

/// Per-vertex invariant: facet-membership size multiset, refined twice by
/// neighbour signatures. Collision-resistant enough for pruning; the final
/// facet-bijection check is what certifies an isomorphism.
fn refine_signatures(c: &SimplicialComplex) -> Vec<u64> {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};

    let n = c.vertices.len();
    let adj = adjacency(c);
    let mut sig: Vec<u64> = (0..n)
        .map(|v| {
            let mut sizes: Vec<usize> = c
                .facets
                .iter()
                .filter(|f| f.binary_search(&(v as u32)).is_ok())
                .map(|f| f.len())
                .collect();
            sizes.sort_unstable();
            let mut h = DefaultHasher::new();
            sizes.hash(&mut h);
            h.finish()
        })
        .collect();
    for _ in 0..2 {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let mut neigh: Vec<u64> = adj[v].iter().map(|&u| sig[u as usize]).collect();
                neigh.sort_unstable();
                let mut h = DefaultHasher::new();
                (sig[v], neigh).hash(&mut h);
                h.finish()
            })
            .collect();
        sig = next;
    }
    sig
}

// ---------------------------------------------------------------------------
// Nested and extended nested collections
// ---------------------------------------------------------------------------

/// Can `j` be added to the nested collection `current` (conditions N1, N2)?
fn nested_can_add(b: &BuildingSet, current: &[Subset], j: Subset) -> bool {
    for i in current {
        if *i == j {
            return false;
        }
        let inter = i.intersection(&j);
        if !inter.is_empty() && !i.is_subset_of(&j) && !j.is_subset_of(i) {
            return false;
        }
    }
    // (N2): no pairwise-disjoint subfamily containing j has union in B
    let disjoint: Vec<Subset> = current
        .iter()
        .filter(|i| i.intersection(&j).is_empty())
        .copied()
        .collect();
    fn search(b: &BuildingSet, pool: &[Subset], from: usize, acc: Subset) -> bool {
        for (k, s) in pool.iter().enumerate().skip(from) {
            if s.intersection(&acc).is_empty() {
                let u = acc.union(s);
                if b.contains(&u) || search(b, pool, k + 1, u) {
                    return true;
                }
            }
        }
        false
    }
    !search(b, &disjoint, 0, j)
}

/// Is `members` a nested collection drawn from `B \ B_max` (N1, N2)?
pub fn is_nested(b: &BuildingSet, members: &[Subset]) -> Result<bool, ComplexError> {
    for m in members {
        if !b.contains(m) {
            return Err(ComplexError::MemberNotInBuildingSet(*m));
        }
    }
    let maxes = b.maximal_elements();
    if members.iter().any(|m| maxes.contains(m)) {
        return Ok(false);
    }
    Ok(is_collection_nested(b, members))
}

fn is_collection_nested(b: &BuildingSet, members: &[Subset]) -> bool {
    let mut current: Vec<Subset> = Vec::new();
    for m in members {
        if !nested_can_add(b, &current, *m) {
            return false;
        }
        current.push(*m);
    }
    true
}

/// Is `(members, designs)` an extended nested collection (E1, E2)? Members
/// may include maximal elements of `B`.
pub fn is_extended_nested(b: &BuildingSet, members: &[Subset], designs: Subset) -> Result<bool, ComplexError> {
    for m in members {
        if !b.contains(m) {
            return Err(ComplexError::MemberNotInBuildingSet(*m));
        }
    }
    if members.iter().any(|m| !m.intersection(&designs).is_empty()) {
        return Ok(false);
    }
    Ok(is_collection_nested(b, members))
}

/// Maximal nested collections of `B` (vertex set `B \ B_max`), in canonical order.
pub fn maximal_nested_collections(b: &BuildingSet) -> Vec<Vec<Subset>> {
    let maxes = b.maximal_elements();
    let cands: Vec<Subset> = b.sets().iter().filter(|s| !maxes.contains(s)).copied().collect();
    let mut out = Vec::new();
    fn rec(b: &BuildingSet, cands: &[Subset], current: &mut Vec<Subset>, start: usize, out: &mut Vec<Vec<Subset>>) {
        let mut extendable = false;
        for (i, &c) in cands.iter().enumerate() {
            if nested_can_add(b, current, c) {
                extendable = true;
                if i >= start {
                    current.push(c);
                    rec(b, cands, current, i + 1, out);
                    current.pop();
                }
            }
        }
        if !extendable {
            out.push(current.clone());
        }
    }
    rec(b, &cands, &mut Vec::new(), 0, &mut out);
    out.sort();
    out
}

/// A facet of the extended nested complex: members plus design indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtendedFacet {
    pub members: Vec<Subset>,
    pub designs: Subset,
}

impl ExtendedFacet {
    pub fn labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self.members.iter().map(member_label).collect();
        v.extend(self.designs.elements().map(design_label));
        v
    }

    pub fn support(&self) -> Subset {
        self.members.iter().fold(Subset::EMPTY, |acc, m| acc.union(m))
    }
}

/// Facets of the extended nested complex, enumerated per support: for each
/// `S ⊆ ground`, the maximal nested collections of `B|_S` together with all
/// maximal elements of `B|_S`, plus designs on `ground \ S`.
pub fn extended_facets(b: &BuildingSet) -> Vec<ExtendedFacet> {
    let mut out = Vec::new();
    for s in b.ground().subsets() {
        let r = b.restriction(s);
        let maxes = r.maximal_elements();
        // supports are exactly the subsets covered by their own maxima
        if maxes.iter().fold(Subset::EMPTY, |acc, m| acc.union(m)) != s {
            continue;
        }
        for coll in maximal_nested_collections(&r) {
            let mut members = coll;
            members.extend(maxes.iter().copied());
            members.sort();
            out.push(ExtendedFacet {
                members,
                designs: b.ground().difference(&s),
            });
        }
    }
    out.sort();
    out
}

/// Vertex labels of the nested complex: members of `B \ B_max`, canonical order.
pub fn nested_complex(b: &BuildingSet) -> SimplicialComplex {
    let maxes = b.maximal_elements();
    let verts: Vec<Subset> = b.sets().iter().filter(|s| !maxes.contains(s)).copied().collect();
    let labels: Vec<String> = verts.iter().map(member_label).collect();
    let index: HashMap<Subset, u32> = verts.iter().copied().zip(0u32..).collect();
    let facets = maximal_nested_collections(b)
        .into_iter()
        .map(|coll| coll.into_iter().map(|m| index[&m]).collect())
        .collect();
    SimplicialComplex::new(labels, facets)
}

/// Vertex labels of the extended nested complex: all members of `B`, then
/// `x_i` for every ground element, canonical order.
pub fn extended_nested_complex(b: &BuildingSet) -> SimplicialComplex {
    let verts: Vec<Subset> = b.sets().to_vec();
    let mut labels: Vec<String> = verts.iter().map(member_label).collect();
    labels.extend(b.ground().elements().map(design_label));
    let index: HashMap<Subset, u32> = verts.iter().copied().zip(0u32..).collect();
    let design_index: HashMap<usize, u32> = b
        .ground()
        .elements()
        .zip(verts.len() as u32..)
        .collect();
    let facets = extended_facets(b)
        .into_iter()
        .map(|f| {
            let mut fac: Vec<u32> = f.members.iter().map(|m| index[m]).collect();
            fac.extend(f.designs.elements().map(|i| design_index[&i]));
            fac
        })
        .collect();
    SimplicialComplex::new(labels, facets)
}

// ---------------------------------------------------------------------------
// Link decompositions
// ---------------------------------------------------------------------------

/// Symbolic description of the link of a vertex in the extended nested complex.
#[derive(Clone, Debug)]
pub enum LinkDecomposition {
    /// Link of `x_i`: join of the extended complexes of the components of
    /// `B` restricted to `ground \ {i}`.
    Design { removed: usize, components: Vec<BuildingSet> },
    /// Link of a member `C`: `N(B|_C) * N□(B/C)`.
    Member { restriction: BuildingSet, contraction: BuildingSet },
}

/// Link of a vertex of `N□(B)`, both symbolically and as the explicit witness
/// map onto the join complex. Returns the decomposition, the join complex,
/// and the vertex map sending join-complex labels to link labels.
pub fn link_decomposition(
    b: &BuildingSet,
    vertex: &str,
) -> Result<(LinkDecomposition, SimplicialComplex, HashMap<String, String>), ComplexError> {
    if let Some(i) = vertex.strip_prefix("x_").and_then(|s| s.parse::<usize>().ok()) {
        if !b.ground().contains(i) {
            return Err(ComplexError::VertexNotInComplex(vertex.to_string()));
        }
        let r = b.restriction(b.ground().difference(&Subset::singleton(i)));
        let components = r.connected_components();
        let mut join = SimplicialComplex::new(Vec::new(), vec![Vec::new()]);
        for c in &components {
            join = join.join(&extended_nested_complex(c));
        }
        // identity on labels
        let map: HashMap<String, String> = join.vertices().iter().map(|l| (l.clone(), l.clone())).collect();
        Ok((LinkDecomposition::Design { removed: i, components }, join, map))
    } else {
        let c = parse_member_label(vertex).ok_or_else(|| ComplexError::VertexNotInComplex(vertex.to_string()))?;
        if !b.contains(&c) {
            return Err(ComplexError::VertexNotInComplex(vertex.to_string()));
        }
        let restriction = b.restriction(c);
        let contraction = b.contraction(c);
        let join = nested_complex(&restriction).join(&extended_nested_complex(&contraction));
        // N(B|_C) vertices map to themselves; N□(B/C) members I map to I or
        // I ∪ C when that union is a member; designs map to themselves.
        let mut map: HashMap<String, String> = HashMap::new();
        let maxes = restriction.maximal_elements();
        for j in restriction.sets() {
            if !maxes.contains(j) {
                map.insert(member_label(j), member_label(j));
            }
        }
        for i in contraction.sets() {
            let u = i.union(&c);
            let image = if b.contains(&u) { u } else { *i };
            map.insert(member_label(i), member_label(&image));
        }
        for i in contraction.ground().elements() {
            map.insert(design_label(i), design_label(i));
        }
        Ok((LinkDecomposition::Member { restriction, contraction }, join, map))
    }
}

pub fn parse_member_label(label: &str) -> Option<Subset> {
    let inner = label.strip_prefix('{')?.strip_suffix('}')?;
    if inner.is_empty() {
        return Some(Subset::EMPTY);
    }
    let mut elems = Vec::new();
    for part in inner.split(',') {
        elems.push(part.trim().parse::<usize>().ok()?);
    }
    Some(Subset::from_elements(elems))
}

/// Check that the explicit link of `vertex` in `N□(B)` equals the image of
/// the decomposition join under the paper's explicit vertex maps.
pub fn verify_link_decomposition(b: &BuildingSet, vertex: &str) -> Result<bool, ComplexError> {
    let full = extended_nested_complex(b);
    let link = full.link_of(vertex)?;
    let (_, join, map) = link_decomposition(b, vertex)?;
    if join.vertices().len() != link.vertices().len() {
        return Ok(false);
    }
    let mut mapped: Vec<Vec<String>> = Vec::new();
    for f in join.facet_labels() {
        let mut img: Vec<String> = Vec::new();
        for l in &f {
            match map.get(l) {
                Some(t) => img.push(t.clone()),
                None => return Ok(false),
            }
        }
        img.sort();
        mapped.push(img);
    }
    mapped.sort();
    let mut actual: Vec<Vec<String>> = link
        .facet_labels()
        .into_iter()
        .map(|mut f| {
            f.sort();
            f
        })
        .collect();
    actual.sort();
    Ok(mapped == actual)
}

// ---------------------------------------------------------------------------
// Strongly connected components of a building set
// ---------------------------------------------------------------------------

/// Strongly connected components of `B`: connected components of the
/// independence graph of `N(B)`, as lists of members.
pub fn strongly_connected_components(b: &BuildingSet) -> Vec<Vec<Subset>> {
    let complex = nested_complex(b);
    complex
        .independence_components()
        .into_iter()
        .map(|comp| {
            comp.into_iter()
                .map(|v| parse_member_label(&complex.vertices()[v as usize]).expect("member label"))
                .collect()
        })
        .collect()
}

/// M-size of a strongly connected component: dimension of `N(B)` restricted
/// to the component's vertices.
pub fn component_m_size(b: &BuildingSet, component: &[Subset]) -> i64 {
    let complex = nested_complex(b);
    let verts: Vec<u32> = component
        .iter()
        .filter_map(|m| complex.vertex_index(&member_label(m)))
        .collect();
    complex.m_size(&verts)
}

/// Is every connected component of `B` a single strongly connected component?
/// Components whose support is a lone singleton contribute no vertices and
/// are vacuously strong.
pub fn is_strong(b: &BuildingSet) -> bool {
    let strong = strongly_connected_components(b);
    for m in b.maximal_elements() {
        let verts: BTreeSet<Subset> = b
            .sets()
            .iter()
            .filter(|j| j.is_subset_of(&m) && **j != m)
            .copied()
            .collect();
        if verts.is_empty() {
            continue;
        }
        let matching = strong
            .iter()
            .filter(|comp| comp.iter().any(|s| verts.contains(s)))
            .count();
        if matching != 1 {
            return false;
        }
    }
    true
}

//! Polytopal realizations: the stellar-subdivision model of the extended
//! nested complex on the cross-polytope boundary, integer vertex coordinates
//! of both polytopes, and edge orientations by generic cost vectors.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::building::{BuildingSet, Subset};
use crate::complex::{
    design_label, extended_facets, maximal_nested_collections, member_label, ExtendedFacet,
    SimplicialComplex,
};
use crate::orders::{facet_label, flip_poset, OrderError};
use crate::perms::{nested_to_forest, PermsError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("face to subdivide is missing: {0:?}")]
    FaceMissing(Subset),
    #[error("collection is not a maximal (extended) nested collection")]
    NotMaximal,
    #[error("cost vector is not generic: facets {0} and {1} tie")]
    NonGenericCost(String, String),
    #[error("cost vector has wrong dimension")]
    BadCostDimension,
    #[error("cost orientation is cyclic")]
    CyclicOrientation,
    #[error("cost orientation disagrees with the flip poset")]
    FlipPosetMismatch,
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Perms(#[from] PermsError),
}

/// Stellar subdivision of the face `face` (as vertex indices) of `complex`,
/// introducing a new vertex labelled `new_label`: facets containing the face
/// are replaced by `Φ \ {u} ∪ {v}` for each `u` in the face.
pub fn stellar_subdivide(
    complex: &SimplicialComplex,
    face: &[u32],
    new_label: String,
) -> SimplicialComplex {
    let mut vertices = complex.vertices().to_vec();
    let v = vertices.len() as u32;
    vertices.push(new_label);
    let mut facets: Vec<Vec<u32>> = Vec::new();
    for f in complex.facets() {
        if face.iter().all(|x| f.binary_search(x).is_ok()) {
            for &u in face {
                let mut g: Vec<u32> = f.iter().copied().filter(|&x| x != u).collect();
                g.push(v);
                facets.push(g);
            }
        } else {
            facets.push(f.clone());
        }
    }
    SimplicialComplex::new(vertices, facets)
}

/// Cross-polytope boundary on labels `{i}` and `x_i`: one facet per choice
/// of `{i}` or `x_i` in each coordinate.
pub fn cross_polytope_boundary(ground: Subset) -> SimplicialComplex {
    let elems: Vec<usize> = ground.elements().collect();
    let n = elems.len();
    let mut labels: Vec<String> = elems.iter().map(|&i| member_label(&Subset::singleton(i))).collect();
    labels.extend(elems.iter().map(|&i| design_label(i)));
    let mut facets = Vec::new();
    for mask in 0u32..(1 << n) {
        let facet: Vec<u32> = (0..n)
            .map(|k| if mask & (1 << k) != 0 { (k + n) as u32 } else { k as u32 })
            .collect();
        facets.push(facet);
    }
    SimplicialComplex::new(labels, facets)
}

/// Realize `N□(B)` by stellar subdivisions of the cross-polytope boundary:
/// subdivide the face `{{i} : i ∈ I}` for each non-singleton member `I` in
/// decreasing cardinality (ties broken by canonical subset order).
pub fn stellar_realization(b: &BuildingSet) -> Result<SimplicialComplex, GeomError> {
    let mut complex = cross_polytope_boundary(b.ground());
    let mut targets: Vec<Subset> = b.sets().iter().filter(|s| s.len() > 1).copied().collect();
    targets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    for i in targets {
        let face: Option<Vec<u32>> = i
            .elements()
            .map(|e| complex.vertex_index(&member_label(&Subset::singleton(e))))
            .collect();
        let face = face.ok_or(GeomError::FaceMissing(i))?;
        let mut face = face;
        face.sort_unstable();
        if !complex.is_face(&face) {
            return Err(GeomError::FaceMissing(i));
        }
        complex = stellar_subdivide(&complex, &face, member_label(&i));
    }
    Ok(complex)
}

/// Compare two complexes as families of facet label-sets.
pub fn same_facet_labels(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    let norm = |c: &SimplicialComplex| -> BTreeSet<Vec<String>> {
        c.facet_labels()
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect()
    };
    norm(a) == norm(b)
}

/// Coordinates of the extended-nestohedron vertex for a maximal extended
/// nested collection: 0 on design coordinates, otherwise
/// `|{I ∈ B : k ∈ I}| - |F_{≤k}| + 1` through the corresponding forest.
pub fn extended_vertex_coords(b: &BuildingSet, facet: &ExtendedFacet) -> Result<Vec<i64>, GeomError> {
    let forest = nested_to_forest(b, facet).map_err(|_| GeomError::NotMaximal)?;
    let mut coords = Vec::new();
    for k in b.ground().elements() {
        if facet.designs.contains(k) {
            coords.push(0);
        } else {
            let containing = b.sets().iter().filter(|i| i.contains(k)).count() as i64;
            let below = forest.descendants(k).len() as i64;
            coords.push(containing - below + 1);
        }
    }
    Ok(coords)
}

/// Coordinates of the nestohedron vertex for a maximal nested collection:
/// `v_i = |{I ∈ B : i ∈ I ⊆ T_{≤i}}|` where `T` is the forest of the
/// collection together with the maximal elements.
pub fn nestohedron_vertex_coords(b: &BuildingSet, members: &[Subset]) -> Result<Vec<i64>, GeomError> {
    let mut all = members.to_vec();
    all.extend(b.maximal_elements());
    all.sort();
    all.dedup();
    let full = ExtendedFacet { members: all, designs: Subset::EMPTY };
    let forest = nested_to_forest(b, &full).map_err(|_| GeomError::NotMaximal)?;
    let mut coords = Vec::new();
    for i in b.ground().elements() {
        let below = forest.descendants(i);
        let count = b
            .sets()
            .iter()
            .filter(|s| s.contains(i) && s.is_subset_of(&below))
            .count() as i64;
        coords.push(count);
    }
    Ok(coords)
}

/// Oriented dual graph of the (extended) nestohedron under a cost vector.
#[derive(Clone, Debug)]
pub struct CostOrientation {
    pub facet_labels: Vec<String>,
    pub coords: Vec<Vec<i64>>,
    /// Directed edges `(u, v)` with `c·coords[u] < c·coords[v]`.
    pub edges: Vec<(usize, usize)>,
}

impl CostOrientation {
    /// CSV table: facet label, coordinates.
    pub fn coords_csv(&self) -> String {
        let mut s = String::from("facet,coords\n");
        for (label, v) in self.facet_labels.iter().zip(&self.coords) {
            let nums: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("\"{}\",\"({})\"\n", label, nums.join(",")));
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph orientation {\n");
        for l in &self.facet_labels {
            s.push_str(&format!("  \"{l}\";\n"));
        }
        for &(u, v) in &self.edges {
            s.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                self.facet_labels[u], self.facet_labels[v]
            ));
        }
        s.push_str("}\n");
        s
    }

    pub fn sources(&self) -> Vec<usize> {
        let mut indeg = vec![0usize; self.facet_labels.len()];
        for &(_, v) in &self.edges {
            indeg[v] += 1;
        }
        (0..indeg.len()).filter(|&i| indeg[i] == 0).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let mut outdeg = vec![0usize; self.facet_labels.len()];
        for &(u, _) in &self.edges {
            outdeg[u] += 1;
        }
        (0..outdeg.len()).filter(|&i| outdeg[i] == 0).collect()
    }
}

fn dot(c: &[i64], v: &[i64]) -> i64 {
    c.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Orient the dual graph of `P□(B)` (or `P(B)`) by increasing `c`-value.
///
/// Genericity is required on adjacent facet pairs (the pairs the orientation
/// reads); acyclicity and agreement with the flip poset are asserted.
pub fn cost_orientation(b: &BuildingSet, c: &[i64], extended: bool) -> Result<CostOrientation, GeomError> {
    if c.len() != b.ground_size() {
        return Err(GeomError::BadCostDimension);
    }
    let (facets, coords): (Vec<ExtendedFacet>, Vec<Vec<i64>>) = if extended {
        let fs = extended_facets(b);
        let cs = fs
            .iter()
            .map(|f| extended_vertex_coords(b, f))
            .collect::<Result<Vec<_>, _>>()?;
        (fs, cs)
    } else {
        let fs: Vec<ExtendedFacet> = maximal_nested_collections(b)
            .into_iter()
            .map(|members| ExtendedFacet { members, designs: Subset::EMPTY })
            .collect();
        let cs = fs
            .iter()
            .map(|f| nestohedron_vertex_coords(b, &f.members))
            .collect::<Result<Vec<_>, _>>()?;
        (fs, cs)
    };
    let labels: Vec<String> = facets.iter().map(|f| facet_label(&f.members, f.designs)).collect();
    let size = facets
        .first()
        .map(|f| f.members.len() + f.designs.len())
        .unwrap_or(0);
    let mut edges = Vec::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            let shared = facets[i]
                .members
                .iter()
                .filter(|m| facets[j].members.contains(m))
                .count()
                + facets[i].designs.intersection(&facets[j].designs).len();
            if size == 0 || shared != size - 1 {
                continue;
            }
            let (ci, cj) = (dot(c, &coords[i]), dot(c, &coords[j]));
            if ci == cj {
                return Err(GeomError::NonGenericCost(labels[i].clone(), labels[j].clone()));
            }
            if ci < cj {
                edges.push((i, j));
            } else {
                edges.push((j, i));
            }
        }
    }
    // acyclicity
    let n = facets.len();
    {
        let mut indeg = vec![0usize; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in &edges {
            indeg[v] += 1;
            adj[u].push(v);
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
        if seen != n {
            return Err(GeomError::CyclicOrientation);
        }
    }
    // transitive closure must equal the flip-poset order
    let poset = flip_poset(b, extended)?;
    let index: HashMap<&String, usize> = poset.labels().iter().zip(0..).collect();
    let mut reach: Vec<BTreeSet<usize>> = (0..n).map(|i| BTreeSet::from([i])).collect();
    // simple fixed-point closure; facet counts stay small at desk scale
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in &edges {
            let addable: Vec<usize> = reach[v].iter().copied().filter(|x| !reach[u].contains(x)).collect();
            if !addable.is_empty() {
                reach[u].extend(addable);
                changed = true;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let pi = index[&labels[i]];
            let pj = index[&labels[j]];
            if reach[i].contains(&j) != poset.leq(pi, pj) {
                return Err(GeomError::FlipPosetMismatch);
            }
        }
    }
    Ok(CostOrientation { facet_labels: labels, coords, edges })
}

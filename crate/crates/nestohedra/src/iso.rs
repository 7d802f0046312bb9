//! Constructive isomorphisms between (extended) nested complexes: interval
//! extension, interval rotation, extended interval rotation, the flip
//! relabelling, and the spider-to-octopus construction. Every constructor
//! returns the image building set together with the explicit vertex map, and
//! verifies the map against the generic facet-bijection checker.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::building::{BuildingSet, Subset};
use crate::complex::{
    design_label, extended_nested_complex, member_label, nested_complex, SimplicialComplex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("building set is not an interval building set")]
    NotIntervalBuildingSet,
    #[error("required prefix/suffix intervals are missing")]
    PreconditionIntervalsMissing,
    #[error("legs do not form a spider building set")]
    NotSpider,
    #[error("legs do not form an octopus building set")]
    NotOctopus,
    #[error("constructed map failed the isomorphism check")]
    IsoCheckFailed,
}

/// An explicit vertex bijection between two complexes, by label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexMap(pub BTreeMap<String, String>);

impl VertexMap {
    pub fn to_json(&self) -> serde_json::Value {
        let pairs: Vec<serde_json::Value> = self
            .0
            .iter()
            .map(|(a, b)| serde_json::json!([a, b]))
            .collect();
        serde_json::Value::Array(pairs)
    }

    pub fn get(&self, label: &str) -> Option<&String> {
        self.0.get(label)
    }

    fn as_hash(&self) -> std::collections::HashMap<String, String> {
        self.0.iter().map(|(a, b)| (a.clone(), b.clone())).collect()
    }

    /// Verify the map as a facet bijection between the two complexes.
    pub fn verify(&self, from: &SimplicialComplex, to: &SimplicialComplex) -> bool {
        from.is_isomorphism_witness(to, &self.as_hash())
    }
}

fn is_interval(s: &Subset) -> bool {
    match (s.min_element(), s.max_element()) {
        (Some(lo), Some(hi)) => s.len() == hi - lo + 1,
        _ => false,
    }
}

fn interval(a: usize, b: usize) -> Subset {
    Subset::from_elements(a..=b)
}

/// Is every member an integer interval (on a full ground `{1..n}`)?
pub fn is_interval_building_set(b: &BuildingSet) -> bool {
    b.ground() == Subset::full(b.ground_size()) && b.sets().iter().all(is_interval)
}

/// Interval extension: `B' = B ∪ {[k, n+1] : 1 ≤ k ≤ n+1}` on `[n+1]`, with
/// `N□(B) ≅ N(B')` via `I ↦ I`, `x_i ↦ [i+1, n+1]`.
pub fn interval_extension(b: &BuildingSet) -> Result<(BuildingSet, VertexMap), IsoError> {
    if !is_interval_building_set(b) {
        return Err(IsoError::NotIntervalBuildingSet);
    }
    let n = b.ground_size();
    let mut sets = b.sets().to_vec();
    for k in 1..=n + 1 {
        sets.push(interval(k, n + 1));
    }
    let b_prime =
        BuildingSet::validate(&sets, n + 1).map_err(|_| IsoError::NotIntervalBuildingSet)?;
    let mut map = BTreeMap::new();
    for s in b.sets() {
        map.insert(member_label(s), member_label(s));
    }
    for i in 1..=n {
        map.insert(design_label(i), member_label(&interval(i + 1, n + 1)));
    }
    let map = VertexMap(map);
    if !map.verify(&extended_nested_complex(b), &nested_complex(&b_prime)) {
        return Err(IsoError::IsoCheckFailed);
    }
    Ok((b_prime, map))
}

fn rotation_image(i: &Subset, n: usize) -> Option<Subset> {
    let a = i.min_element()?;
    let b = i.max_element()?;
    if a > 1 {
        Some(interval(a - 1, b - 1))
    } else if b < n {
        Some(interval(b + 1, n))
    } else {
        None // [1, n] maps to the virtual empty set
    }
}

/// Interval rotation: `[a,b] ↦ [a-1,b-1]` for `a > 1`, `[1,b] ↦ [b+1,n]`,
/// with the virtual pair `[1,n] ↔ ∅` never stored. Requires every prefix
/// `[1,k]` to be a member. `N(B) ≅ N(B')`.
pub fn interval_rotation(b: &BuildingSet) -> Result<(BuildingSet, VertexMap), IsoError> {
    if !is_interval_building_set(b) {
        return Err(IsoError::NotIntervalBuildingSet);
    }
    let n = b.ground_size();
    if n == 0 {
        return Err(IsoError::PreconditionIntervalsMissing);
    }
    if (1..=n).any(|k| !b.contains(&interval(1, k))) {
        return Err(IsoError::PreconditionIntervalsMissing);
    }
    let mut sets: Vec<Subset> = b
        .sets()
        .iter()
        .filter_map(|i| rotation_image(i, n))
        .collect();
    sets.push(interval(1, n)); // image of the virtual empty set
    let b_prime = BuildingSet::validate(&sets, n).map_err(|_| IsoError::IsoCheckFailed)?;
    let mut map = BTreeMap::new();
    for i in b.sets() {
        if let Some(img) = rotation_image(i, n) {
            map.insert(member_label(i), member_label(&img));
        }
    }
    let map = VertexMap(map);
    if !map.verify(&nested_complex(b), &nested_complex(&b_prime)) {
        return Err(IsoError::IsoCheckFailed);
    }
    Ok((b_prime, map))
}

/// Extended interval rotation: `[a,b] ↦ [a-1,b-1]` for `a > 1`,
/// `[1,b] ↦ x_b`, `x_b ↦ [b,n]`. Requires all prefixes `[1,k]` and suffixes
/// `[k,n]`. `N□(B) ≅ N□(B*)`.
pub fn extended_interval_rotation(b: &BuildingSet) -> Result<(BuildingSet, VertexMap), IsoError> {
    if !is_interval_building_set(b) {
        return Err(IsoError::NotIntervalBuildingSet);
    }
    let n = b.ground_size();
    if n == 0 || (1..=n).any(|k| !b.contains(&interval(1, k)) || !b.contains(&interval(k, n))) {
        return Err(IsoError::PreconditionIntervalsMissing);
    }
    let mut sets = Vec::new();
    let mut map = BTreeMap::new();
    for i in b.sets() {
        let a = i.min_element().expect("nonempty member");
        let hi = i.max_element().expect("nonempty member");
        if a > 1 {
            let img = interval(a - 1, hi - 1);
            sets.push(img);
            map.insert(member_label(i), member_label(&img));
        } else {
            map.insert(member_label(i), design_label(hi));
        }
    }
    for k in 1..=n {
        let img = interval(k, n);
        sets.push(img);
        map.insert(design_label(k), member_label(&img));
    }
    let b_star = BuildingSet::validate(&sets, n).map_err(|_| IsoError::IsoCheckFailed)?;
    let map = VertexMap(map);
    if !map.verify(&extended_nested_complex(b), &extended_nested_complex(&b_star)) {
        return Err(IsoError::IsoCheckFailed);
    }
    Ok((b_star, map))
}

/// Flip relabelling `i ↦ n+1-i`, with `x_v ↦ x_{n+1-v}`; an involution.
pub fn flip(b: &BuildingSet) -> (BuildingSet, VertexMap) {
    let n = b.ground_size();
    let flipped = b.relabel(|i| n + 1 - i);
    let mut map = BTreeMap::new();
    for s in b.sets() {
        let img = Subset::from_elements(s.elements().map(|i| n + 1 - i));
        map.insert(member_label(s), member_label(&img));
    }
    for v in b.ground().elements() {
        map.insert(design_label(v), design_label(n + 1 - v));
    }
    (flipped, VertexMap(map))
}

// ---------------------------------------------------------------------------
// Spider and octopus building sets
// ---------------------------------------------------------------------------

/// Legs of a spider building set: leg `i` is an interval building set on
/// `[ℓ_i]` containing every prefix `[1,k]`; position 1 attaches to the body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpiderSpec {
    pub legs: Vec<BuildingSet>,
}

/// Legs of an octopus building set: leg `i` lives on `[ℓ_i + 1]` where
/// position 1 is the shared head `*` and positions `2..=ℓ_i+1` are
/// `v_{i,1..ℓ_i}`; every head prefix `[1,k]` and suction prefix `[2,k]` must
/// be present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctopusSpec {
    pub legs: Vec<BuildingSet>,
}

/// Where each leg's labels land inside the glued ground set.
#[derive(Clone, Debug)]
pub struct LegLayout {
    pub offsets: Vec<usize>,
    pub lengths: Vec<usize>,
    /// Total ground size of the glued building set.
    pub total: usize,
}

impl LegLayout {
    fn new(lengths: Vec<usize>, head: bool) -> LegLayout {
        let mut offsets = Vec::with_capacity(lengths.len());
        let mut acc = 0usize;
        for &l in &lengths {
            offsets.push(acc);
            acc += l;
        }
        LegLayout { offsets, lengths, total: acc + usize::from(head) }
    }

    /// Glued label of `v_{leg, pos}`, `pos ∈ 1..=ℓ_leg`.
    pub fn label(&self, leg: usize, pos: usize) -> usize {
        self.offsets[leg] + pos
    }

    /// Head label (octopus only): the last ground element.
    pub fn head(&self) -> usize {
        self.total
    }
}

impl SpiderSpec {
    pub fn validate(&self) -> Result<(), IsoError> {
        if self.legs.is_empty() {
            return Err(IsoError::NotSpider);
        }
        for leg in &self.legs {
            if !is_interval_building_set(leg) || leg.ground_size() == 0 {
                return Err(IsoError::NotSpider);
            }
            let l = leg.ground_size();
            if (1..=l).any(|k| !leg.contains(&interval(1, k))) {
                return Err(IsoError::NotSpider);
            }
        }
        Ok(())
    }

    pub fn layout(&self) -> LegLayout {
        LegLayout::new(self.legs.iter().map(|l| l.ground_size()).collect(), false)
    }

    /// The glued spider building set: translated leg sets plus every union
    /// of per-leg prefix sets across the legs.
    pub fn to_building_set(&self) -> Result<BuildingSet, IsoError> {
        self.validate()?;
        let layout = self.layout();
        let mut sets: Vec<Subset> = Vec::new();
        // per-leg choices of a prefix set (or nothing) for body sets
        let mut prefix_choices: Vec<Vec<Subset>> = Vec::new();
        for (i, leg) in self.legs.iter().enumerate() {
            let translate =
                |s: &Subset| Subset::from_elements(s.elements().map(|e| layout.label(i, e)));
            let mut choices = vec![Subset::EMPTY];
            for s in leg.sets() {
                if s.contains(1) {
                    choices.push(translate(s));
                } else {
                    sets.push(translate(s));
                }
            }
            prefix_choices.push(choices);
        }
        let mut bodies = vec![Subset::EMPTY];
        for choices in &prefix_choices {
            let mut next = Vec::new();
            for base in &bodies {
                for c in choices {
                    next.push(base.union(c));
                }
            }
            bodies = next;
        }
        sets.extend(bodies.into_iter().filter(|s| !s.is_empty()));
        let spider = BuildingSet::validate_with_cap(&sets, layout.total, 32)
            .map_err(|_| IsoError::NotSpider)?;
        validate_spider_conditions(&spider, self, &layout)?;
        Ok(spider)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"legs": self.legs.iter().map(|l| l.to_json()).collect::<Vec<_>>()})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<SpiderSpec, String> {
        let legs = v
            .get("legs")
            .and_then(|l| l.as_array())
            .ok_or("expected {\"legs\": [...]}")?
            .iter()
            .map(BuildingSet::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SpiderSpec { legs })
    }
}

/// Literal conditions 1–3 of the spider definition on the assembled set.
fn validate_spider_conditions(
    spider: &BuildingSet,
    spec: &SpiderSpec,
    layout: &LegLayout,
) -> Result<(), IsoError> {
    for (i, leg) in spec.legs.iter().enumerate() {
        let leg_ground = Subset::from_elements((1..=leg.ground_size()).map(|p| layout.label(i, p)));
        let attach = layout.label(i, 1);
        // restriction recovers the leg
        let restricted = spider.restriction(leg_ground);
        let mut translated: Vec<Subset> = leg
            .sets()
            .iter()
            .map(|s| Subset::from_elements(s.elements().map(|e| layout.label(i, e))))
            .collect();
        translated.sort();
        if restricted.sets() != translated.as_slice() {
            return Err(IsoError::NotSpider);
        }
        for s in spider.sets() {
            let inter = s.intersection(&leg_ground);
            if !inter.is_empty() && !s.is_subset_of(&leg_ground) && !s.contains(attach) {
                return Err(IsoError::NotSpider);
            }
            // condition 3: restriction to the leg is a leg member or empty
            if !inter.is_empty() && !restricted.contains(&inter) {
                return Err(IsoError::NotSpider);
            }
        }
    }
    // condition 2: unions of attachment-containing members are members
    let attach_all: Vec<usize> = (0..spec.legs.len()).map(|i| layout.label(i, 1)).collect();
    let body: Vec<Subset> = spider
        .sets()
        .iter()
        .filter(|s| attach_all.iter().any(|&a| s.contains(a)))
        .copied()
        .collect();
    for (k, a) in body.iter().enumerate() {
        for b in body.iter().skip(k + 1) {
            if !spider.contains(&a.union(b)) {
                return Err(IsoError::NotSpider);
            }
        }
    }
    Ok(())
}

impl OctopusSpec {
    pub fn validate(&self) -> Result<(), IsoError> {
        if self.legs.is_empty() {
            return Err(IsoError::NotOctopus);
        }
        for leg in &self.legs {
            if !is_interval_building_set(leg) || leg.ground_size() < 2 {
                return Err(IsoError::NotOctopus);
            }
            let l = leg.ground_size();
            // every head prefix [1,k] and suction prefix [2,k]
            if (1..=l).any(|k| !leg.contains(&interval(1, k)))
                || (2..=l).any(|k| !leg.contains(&interval(2, k)))
            {
                return Err(IsoError::NotOctopus);
            }
        }
        Ok(())
    }

    pub fn layout(&self) -> LegLayout {
        LegLayout::new(self.legs.iter().map(|l| l.ground_size() - 1).collect(), true)
    }

    /// The glued octopus building set; the head is the last ground element.
    pub fn to_building_set(&self) -> Result<BuildingSet, IsoError> {
        self.validate()?;
        let layout = self.layout();
        let head = layout.head();
        let mut sets: Vec<Subset> = Vec::new();
        let mut head_choices: Vec<Vec<Subset>> = Vec::new();
        for (i, leg) in self.legs.iter().enumerate() {
            let translate = |s: &Subset| {
                Subset::from_elements(s.elements().map(|e| {
                    if e == 1 {
                        head
                    } else {
                        layout.label(i, e - 1)
                    }
                }))
            };
            let mut choices = vec![Subset::singleton(head)];
            for s in leg.sets() {
                if s.contains(1) {
                    choices.push(translate(s));
                } else {
                    sets.push(translate(s));
                }
            }
            head_choices.push(choices);
        }
        let mut bodies = vec![Subset::singleton(head)];
        for choices in &head_choices {
            let mut next = Vec::new();
            for base in &bodies {
                for c in choices {
                    next.push(base.union(c));
                }
            }
            bodies = next;
        }
        sets.extend(bodies);
        BuildingSet::validate_with_cap(&sets, layout.total, 32).map_err(|_| IsoError::NotOctopus)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"legs": self.legs.iter().map(|l| l.to_json()).collect::<Vec<_>>()})
    }
}

/// The spider-to-octopus construction: per leg, interval extension followed
/// by interval rotation and the flip; gluing the first positions into the
/// shared head yields the octopus, and the composite per-leg maps assemble
/// the isomorphism `N□(spider) ≅ N(octopus)`.
pub fn spider_to_octopus(
    spec: &SpiderSpec,
) -> Result<(OctopusSpec, BuildingSet, VertexMap), IsoError> {
    spec.validate()?;
    let spider = spec.to_building_set()?;
    let s_layout = spec.layout();

    // per-leg pipelines and vertex maps in local coordinates
    let mut octo_legs = Vec::new();
    let mut leg_maps: Vec<VertexMap> = Vec::new();
    for leg in &spec.legs {
        let (extended, ext_map) = interval_extension(leg)?;
        let (rotated, rot_map) = interval_rotation(&extended)?;
        let (flipped, flip_map) = flip(&rotated);
        // compose: N□(leg) vertex -> N(flipped) member label
        let mut composed = BTreeMap::new();
        for (from, mid) in &ext_map.0 {
            let mid2 = rot_map.get(mid).ok_or(IsoError::IsoCheckFailed)?;
            let to = flip_map.get(mid2).ok_or(IsoError::IsoCheckFailed)?;
            composed.insert(from.clone(), to.clone());
        }
        octo_legs.push(flipped);
        leg_maps.push(VertexMap(composed));
    }
    let octopus = OctopusSpec { legs: octo_legs };
    let o_layout = octopus.layout();
    let glued = octopus.to_building_set()?;
    let head = o_layout.head();

    // translate a local octopus-leg member into glued coordinates
    let translate_leg = |i: usize, local: &Subset| -> Subset {
        Subset::from_elements(local.elements().map(|e| {
            if e == 1 {
                head
            } else {
                o_layout.label(i, e - 1)
            }
        }))
    };
    // image of one spider-leg restriction under leg i's composed map
    let leg_image = |i: usize, local: &Subset| -> Result<Subset, IsoError> {
        let label = member_label(local);
        let img = leg_maps[i].get(&label).ok_or(IsoError::IsoCheckFailed)?;
        let parsed = crate::complex::parse_member_label(img).ok_or(IsoError::IsoCheckFailed)?;
        Ok(translate_leg(i, &parsed))
    };

    // the virtual empty restriction of a body element maps through the
    // rotation's ∅ ↔ [1,n] convention to the full octopus leg
    let full_leg_image = |i: usize| -> Subset {
        translate_leg(i, &Subset::from_elements(1..=spec.legs[i].ground_size() + 1))
    };

    let mut map = BTreeMap::new();
    for c in spider.sets() {
        let is_body = (0..spec.legs.len()).any(|i| c.contains(s_layout.label(i, 1)));
        let mut image = Subset::EMPTY;
        for i in 0..spec.legs.len() {
            let leg_ground = Subset::from_elements(
                (1..=spec.legs[i].ground_size()).map(|p| s_layout.label(i, p)),
            );
            let local = Subset::from_elements(
                c.intersection(&leg_ground)
                    .elements()
                    .map(|e| e - s_layout.offsets[i]),
            );
            if !local.is_empty() {
                image = image.union(&leg_image(i, &local)?);
            } else if is_body {
                image = image.union(&full_leg_image(i));
            }
        }
        map.insert(member_label(c), member_label(&image));
    }
    for v in spider.ground().elements() {
        // find the leg and local position of v
        let (i, pos) = (0..spec.legs.len())
            .find_map(|i| {
                let off = s_layout.offsets[i];
                let len = s_layout.lengths[i];
                (v > off && v <= off + len).then_some((i, v - off))
            })
            .ok_or(IsoError::IsoCheckFailed)?;
        let label = design_label(pos);
        let img = leg_maps[i].get(&label).ok_or(IsoError::IsoCheckFailed)?;
        let parsed = crate::complex::parse_member_label(img).ok_or(IsoError::IsoCheckFailed)?;
        map.insert(design_label(v), member_label(&translate_leg(i, &parsed)));
    }
    let map = VertexMap(map);
    if !map.verify(&extended_nested_complex(&spider), &nested_complex(&glued)) {
        return Err(IsoError::IsoCheckFailed);
    }
    Ok((octopus, glued, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::{bs, from_graph, DirectedGraph};
    use crate::counting::{f_nestohedron_enum, f_nestohedron_recursive};

    fn sub(s: &[usize]) -> Subset {
        Subset::from_elements(s.iter().copied())
    }

    #[test]
    fn interval_extension_of_paths() {
        // B_{P_n} extends to B_{P_{n+1}}
        for n in 1..=4usize {
            let b = from_graph(&DirectedGraph::path(n));
            let (b_prime, map) = interval_extension(&b).unwrap();
            assert_eq!(b_prime, from_graph(&DirectedGraph::path(n + 1)));
            assert!(map.verify(&extended_nested_complex(&b), &nested_complex(&b_prime)));
        }
        // a lone singleton extends to the segment building set
        let single = bs(1, &[&[1]]);
        let (b_prime, _) = interval_extension(&single).unwrap();
        assert_eq!(b_prime, bs(2, &[&[1], &[2], &[1, 2]]));

        // deleting the members that contain n+1 recovers b
        let b = from_graph(&DirectedGraph::path(4));
        let (b_prime, _) = interval_extension(&b).unwrap();
        let recovered: Vec<Subset> = b_prime
            .sets()
            .iter()
            .filter(|s| !s.contains(5))
            .copied()
            .collect();
        assert_eq!(recovered.as_slice(), b.sets());

        let gapped = bs(3, &[&[1], &[2], &[3], &[1, 3], &[1, 2, 3]]);
        assert!(matches!(
            interval_extension(&gapped),
            Err(IsoError::NotIntervalBuildingSet)
        ));
    }

    #[test]
    fn interval_rotation_of_p4_is_stable() {
        let b = from_graph(&DirectedGraph::path(4));
        let (b_prime, map) = interval_rotation(&b).unwrap();
        assert_eq!(b_prime, b);
        assert_eq!(map.get("{2}").unwrap(), "{1}");
        assert_eq!(map.get("{1}").unwrap(), "{2,3,4}");
        assert_eq!(map.get("{1,2}").unwrap(), "{3,4}");
        // rotation preserves the f-polynomial
        assert_eq!(f_nestohedron_enum(&b), f_nestohedron_enum(&b_prime));

        let singleton = bs(1, &[&[1]]);
        let (r, _) = interval_rotation(&singleton).unwrap();
        assert_eq!(r.sets().len(), 1);

        let missing_prefix = bs(3, &[&[1], &[2], &[3], &[2, 3], &[1, 2, 3]]);
        assert!(matches!(
            interval_rotation(&missing_prefix),
            Err(IsoError::PreconditionIntervalsMissing)
        ));
    }

    #[test]
    fn rotation_preserves_f_polynomial_on_interval_sets() {
        // an interval building set with all prefixes but not all intervals
        let b = bs(4, &[&[1], &[2], &[3], &[4], &[1, 2], &[1, 2, 3], &[3, 4], &[1, 2, 3, 4]]);
        assert!(is_interval_building_set(&b));
        let (b_prime, map) = interval_rotation(&b).unwrap();
        assert!(map.verify(&nested_complex(&b), &nested_complex(&b_prime)));
        assert_eq!(f_nestohedron_recursive(&b), f_nestohedron_recursive(&b_prime));
    }

    #[test]
    fn extended_rotation_of_p3() {
        let b = from_graph(&DirectedGraph::path(3));
        let (b_star, map) = extended_interval_rotation(&b).unwrap();
        assert_eq!(b_star, b);
        assert_eq!(map.get("{1,2}").unwrap(), "x_2");
        assert_eq!(map.get("x_2").unwrap(), "{2,3}");
        assert_eq!(map.get("{2,3}").unwrap(), "{1,2}");

        // suffixes are also required
        let prefixes_only = bs(3, &[&[1], &[2], &[3], &[1, 2], &[1, 2, 3]]);
        assert!(matches!(
            extended_interval_rotation(&prefixes_only),
            Err(IsoError::PreconditionIntervalsMissing)
        ));
    }

    #[test]
    fn flip_is_an_involution() {
        let b = from_graph(&DirectedGraph::path(4));
        let (flipped, map) = flip(&b);
        assert_eq!(flipped, b); // the path is label-symmetric
        assert_eq!(map.get("x_1").unwrap(), "x_4");
        let asymmetric = bs(3, &[&[1], &[2], &[3], &[1, 2], &[1, 2, 3]]);
        let (once, _) = flip(&asymmetric);
        assert_ne!(once, asymmetric);
        let (twice, _) = flip(&once);
        assert_eq!(twice, asymmetric);
    }

    #[test]
    fn spider_with_point_legs_is_complete_graph() {
        // ℓ legs of length 1 glue to K_ℓ; the octopus is the star K_{1,ℓ}
        for l in 2..=4usize {
            let legs: Vec<BuildingSet> = (0..l).map(|_| bs(1, &[&[1]])).collect();
            let spec = SpiderSpec { legs };
            let spider = spec.to_building_set().unwrap();
            assert_eq!(spider, from_graph(&DirectedGraph::complete(l)));
            let (_, glued, map) = spider_to_octopus(&spec).unwrap();
            assert_eq!(glued, from_graph(&DirectedGraph::star(l)));
            assert!(map.verify(&extended_nested_complex(&spider), &nested_complex(&glued)));
        }
    }

    #[test]
    fn single_leg_spider_recovers_path_isomorphism() {
        for k in 1..=4usize {
            let spec = SpiderSpec { legs: vec![from_graph(&DirectedGraph::path(k))] };
            let spider = spec.to_building_set().unwrap();
            assert_eq!(spider, from_graph(&DirectedGraph::path(k)));
            let (_, glued, map) = spider_to_octopus(&spec).unwrap();
            // the octopus is a path with the head at the far end
            assert!(map.verify(&extended_nested_complex(&spider), &nested_complex(&glued)));
            assert!(nested_complex(&glued)
                .is_isomorphic(
                    &nested_complex(&from_graph(&DirectedGraph::path(k + 1))),
                    1_000_000
                )
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn worked_three_leg_example() {
        let leg1 = bs(3, &[&[1], &[2], &[3], &[1, 2], &[1, 2, 3]]);
        let leg2 = bs(2, &[&[1], &[2], &[1, 2]]);
        let leg3 = bs(1, &[&[1]]);
        let spec = SpiderSpec { legs: vec![leg1, leg2, leg3] };
        let (octopus, glued, map) = spider_to_octopus(&spec).unwrap();

        // octopus legs in local coordinates (head = 1)
        let expected_leg1 = bs(
            4,
            &[&[1], &[2], &[3], &[4], &[1, 2], &[1, 2, 3], &[1, 2, 3, 4], &[2, 3], &[2, 3, 4]],
        );
        let expected_leg2 = from_graph(&DirectedGraph::path(3));
        let expected_leg3 = bs(2, &[&[1], &[2], &[1, 2]]);
        assert_eq!(octopus.legs, vec![expected_leg1, expected_leg2, expected_leg3]);

        // glued: legs occupy 1..3, 4..5, 6; head is 7
        let head = 7;
        let mut suction = Vec::new();
        let mut leg_sets = Vec::new();
        let mut body = Vec::new();
        for s in glued.sets() {
            if s.contains(head) {
                body.push(*s);
            } else if s.contains(1) || s.contains(4) || s.contains(6) {
                suction.push(*s);
            } else {
                leg_sets.push(*s);
            }
        }
        assert_eq!(leg_sets, vec![sub(&[2]), sub(&[3]), sub(&[5])]);
        assert_eq!(
            suction,
            vec![sub(&[1]), sub(&[4]), sub(&[6]), sub(&[1, 2]), sub(&[4, 5]), sub(&[1, 2, 3])]
        );
        // body sets: {head} ∪ J_1 ∪ J_2 ∪ J_3 over suction prefixes or ∅
        assert_eq!(body.len(), 4 * 3 * 2);

        let spider = spec.to_building_set().unwrap();
        assert!(map.verify(&extended_nested_complex(&spider), &nested_complex(&glued)));
    }

    #[test]
    fn counterexample_fixture_map_verifies() {
        // a non-strong building set admits an isomorphism sending the full
        // set to a 2-element member
        let b = bs(3, &[&[1], &[2], &[3], &[1, 2], &[1, 2, 3]]);
        let b_prime = bs(
            4,
            &[&[1], &[2], &[3], &[4], &[1, 3], &[3, 4], &[1, 3, 4], &[2, 3, 4], &[1, 2, 3, 4]],
        );
        let mut map = BTreeMap::new();
        map.insert("x_1".to_string(), "{2,3,4}".to_string());
        map.insert("x_2".to_string(), "{3,4}".to_string());
        map.insert("x_3".to_string(), "{4}".to_string());
        map.insert("{1}".to_string(), "{1,3,4}".to_string());
        map.insert("{2}".to_string(), "{2}".to_string());
        map.insert("{3}".to_string(), "{3}".to_string());
        map.insert("{1,2}".to_string(), "{1}".to_string());
        map.insert("{1,2,3}".to_string(), "{1,3}".to_string());
        let map = VertexMap(map);
        assert!(map.verify(&extended_nested_complex(&b), &nested_complex(&b_prime)));
        assert_eq!(map.get("{1,2,3}").map(|s| s.as_str()), Some("{1,3}"));
    }

    #[test]
    fn spider_validation_rejects_bad_legs() {
        // leg missing the prefix [1,2]
        let bad = bs(3, &[&[1], &[2], &[3], &[2, 3], &[1, 2, 3]]);
        let spec = SpiderSpec { legs: vec![bad] };
        assert!(matches!(spec.to_building_set(), Err(IsoError::NotSpider)));
    }

    #[test]
    fn spider_spec_json_roundtrip() {
        let spec = SpiderSpec {
            legs: vec![from_graph(&DirectedGraph::path(2)), bs(1, &[&[1]])],
        };
        let v = spec.to_json();
        assert_eq!(SpiderSpec::from_json(&v).unwrap(), spec);
    }

    #[test]
    fn vertex_map_json_shape() {
        let b = from_graph(&DirectedGraph::path(2));
        let (_, map) = interval_extension(&b).unwrap();
        let v = map.to_json();
        assert!(v.as_array().unwrap().len() >= 4);
    }
}

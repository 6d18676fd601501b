//! Abstract simplicial complexes stored by their facets, and the
//! constructions that produce them from lattices: order complexes, nested
//! set complexes, stellar and barycentric subdivision.

use std::collections::{BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BuildingSet, FiniteLattice, Payload};

/// A finite abstract simplicial complex.
///
/// Vertices carry string labels and are kept sorted; facets are sorted
/// vertex-index lists, pairwise inclusion-incomparable, and the facet list
/// itself is sorted. Two complexes with the same faces therefore compare
/// equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexJson", into = "ComplexJson")]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

/// Exchange format: vertex labels plus facets as vertex-index lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<usize>>,
}

impl From<SimplicialComplex> for ComplexJson {
    fn from(k: SimplicialComplex) -> Self {
        ComplexJson {
            vertices: k.vertices,
            facets: k.facets,
        }
    }
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;

    fn try_from(j: ComplexJson) -> Result<Self> {
        let labels: HashSet<&String> = j.vertices.iter().collect();
        if labels.len() != j.vertices.len() {
            return Err(Error::Parse("duplicate vertex label".into()));
        }
        let mut facets = Vec::with_capacity(j.facets.len());
        for f in &j.facets {
            let mut fl = Vec::with_capacity(f.len());
            for &v in f {
                let label = j
                    .vertices
                    .get(v)
                    .ok_or_else(|| Error::Parse(format!("vertex index {v} out of range")))?;
                fl.push(label.clone());
            }
            facets.push(fl);
        }
        let k = SimplicialComplex::from_facets(facets);
        if k.vertices.len() != j.vertices.len() {
            return Err(Error::Parse("some vertex lies in no facet".into()));
        }
        Ok(k)
    }
}

impl SimplicialComplex {
    /// The complex generated by the given faces. Duplicates and non-maximal
    /// faces are dropped; empty faces are ignored.
    pub fn from_facets<I, F, S>(faces: I) -> Self
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let faces: Vec<BTreeSet<String>> = faces
            .into_iter()
            .map(|f| f.into_iter().map(Into::into).collect::<BTreeSet<String>>())
            .filter(|f| !f.is_empty())
            .collect();
        let vertices: Vec<String> = faces
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<String>>()
            .into_iter()
            .collect();
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let faces: Vec<Vec<usize>> = faces
            .iter()
            .map(|f| f.iter().map(|v| index[v.as_str()]).sorted().collect())
            .collect::<BTreeSet<Vec<usize>>>()
            .into_iter()
            .collect();
        let facets = maximal_faces(vertices.len(), faces);
        SimplicialComplex { vertices, facets }
    }

    /// The complex with no faces.
    pub fn empty() -> Self {
        SimplicialComplex {
            vertices: Vec::new(),
            facets: Vec::new(),
        }
    }

    /// A single simplex on the given vertices.
    pub fn simplex<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Self {
        Self::from_facets([vertices])
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| self.labels_of(f)).collect()
    }

    pub fn labels_of(&self, face: &[usize]) -> Vec<String> {
        face.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(label))
            .ok()
    }

    /// Sorted vertex indices for `labels`, or `None` if one is missing.
    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Option<Vec<usize>> {
        let mut idx = labels
            .iter()
            .map(|l| self.vertex_index(l.as_ref()))
            .collect::<Option<Vec<usize>>>()?;
        idx.sort_unstable();
        idx.dedup();
        Some(idx)
    }

    /// Dimension of the largest facet; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Vec::len).all_equal()
    }

    /// Whether the sorted index set `face` lies in some facet.
    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| is_sorted_subset(face, f))
    }

    pub fn contains_face_labels<S: AsRef<str>>(&self, labels: &[S]) -> bool {
        self.indices_of(labels)
            .is_some_and(|idx| self.contains_face(&idx))
    }

    /// All faces with `d + 1` vertices, sorted lexicographically.
    pub fn faces(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in &self.facets {
            if f.len() > d {
                out.extend(f.iter().copied().combinations(d + 1));
            }
        }
        out.into_iter().collect()
    }

    /// Number of faces in each dimension, starting with vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        match self.dimension() {
            None => Vec::new(),
            Some(dim) => (0..=dim).map(|d| self.faces(d).len()).collect(),
        }
    }

    /// Unreduced Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Renames vertices through `map` (labels absent from the map are kept).
    pub fn relabel(&self, map: &HashMap<String, String>) -> Result<Self> {
        let renamed: Vec<String> = self
            .vertices
            .iter()
            .map(|v| map.get(v).unwrap_or(v).clone())
            .collect();
        if renamed.iter().collect::<HashSet<_>>().len() != renamed.len() {
            return Err(Error::InvalidArgument("label map is not injective".into()));
        }
        Ok(Self::from_facets(
            self.facets
                .iter()
                .map(|f| f.iter().map(|&v| renamed[v].clone()).collect::<Vec<_>>()),
        ))
    }

    /// Facets containing `face`.
    fn star_facets(&self, face: &[usize]) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| is_sorted_subset(face, &self.facets[i]))
            .collect()
    }

    pub fn to_json(&self) -> ComplexJson {
        self.clone().into()
    }
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Keeps the inclusion-maximal sets among distinct sorted `faces`.
fn maximal_faces(num_vertices: usize, faces: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut containing = vec![FixedBitSet::with_capacity(faces.len()); num_vertices];
    for (i, f) in faces.iter().enumerate() {
        for &v in f {
            containing[v].insert(i);
        }
    }
    let mut keep = Vec::with_capacity(faces.len());
    for (i, f) in faces.iter().enumerate() {
        let mut common = containing[f[0]].clone();
        for &v in &f[1..] {
            common.intersect_with(&containing[v]);
        }
        if common.count_ones(..) == 1 {
            keep.push(i);
        }
    }
    keep.into_iter().map(|i| faces[i].clone()).collect()
}

/// Equality of facet sets after renaming the vertices of `a` through
/// `label_map` (identity when `None`).
pub fn complexes_equal(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    label_map: Option<&HashMap<String, String>>,
) -> Result<bool> {
    match label_map {
        None => Ok(a == b),
        Some(map) => {
            let values: HashSet<&String> = map.values().collect();
            if values.len() != map.len() {
                return Err(Error::InvalidArgument("label map is not injective".into()));
            }
            Ok(&a.relabel(map)? == b)
        }
    }
}

/// The order complex of the proper part: chains of elements other than the
/// bottom and top.
pub fn order_complex<P: Payload>(poset: &FiniteLattice<P>) -> SimplicialComplex {
    let proper = poset.proper_part();
    let is_proper = |x: usize| x != poset.bottom() && Some(x) != poset.top();
    let covers: HashMap<usize, Vec<usize>> = proper
        .iter()
        .map(|&x| {
            let c = poset
                .upper_covers(x)
                .into_iter()
                .filter(|&y| is_proper(y))
                .collect();
            (x, c)
        })
        .collect();
    let minimal: Vec<usize> = proper
        .iter()
        .copied()
        .filter(|&x| poset.down_set(x).ones().all(|y| y == x || !is_proper(y)))
        .collect();

    let mut chains: Vec<Vec<String>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn walk<P: Payload>(
        poset: &FiniteLattice<P>,
        covers: &HashMap<usize, Vec<usize>>,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<String>>,
    ) {
        let last = *stack.last().unwrap();
        if covers[&last].is_empty() {
            out.push(stack.iter().map(|&x| poset.label(x)).collect());
            return;
        }
        for &y in &covers[&last] {
            stack.push(y);
            walk(poset, covers, stack, out);
            stack.pop();
        }
    }
    for x in minimal {
        stack.push(x);
        walk(poset, &covers, &mut stack, &mut chains);
        stack.pop();
    }
    SimplicialComplex::from_facets(chains)
}

/// Whether every antichain of size at least two in `set` has its join
/// outside the building set.
pub fn is_nested<P>(lattice: &FiniteLattice<P>, building: &BuildingSet, set: &[usize]) -> bool {
    let k = set.len();
    if k > 24 {
        // Antichains in a lattice of rank r have at most as many nested
        // members as the rank, so this never triggers at desk scale.
        return false;
    }
    (0u32..1 << k).filter(|m| m.count_ones() >= 2).all(|m| {
        let members: Vec<usize> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| set[i]).collect();
        let antichain = members
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| !lattice.comparable(a, b));
        !antichain || !building.contains(lattice.join_all(members.iter().copied()))
    })
}

fn extends_nested<P>(
    lattice: &FiniteLattice<P>,
    building: &BuildingSet,
    set: &[usize],
    g: usize,
) -> bool {
    let incomparable: Vec<usize> = set
        .iter()
        .copied()
        .filter(|&s| !lattice.comparable(s, g))
        .collect();
    let k = incomparable.len();
    (1u32..1 << k).all(|m| {
        let members: Vec<usize> = (0..k)
            .filter(|i| m >> i & 1 == 1)
            .map(|i| incomparable[i])
            .collect();
        let antichain = members
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| !lattice.comparable(a, b));
        !antichain || !building.contains(lattice.join_all(members.iter().copied().chain([g])))
    })
}

/// All maximal nested sets, as sorted element-index lists. With
/// `include_top` the top element (a cone apex) is part of every facet.
pub fn maximal_nested_sets<P: Payload>(
    lattice: &FiniteLattice<P>,
    building: &BuildingSet,
    include_top: bool,
) -> Result<Vec<Vec<usize>>> {
    lattice.require_lattice("nested set complexes")?;
    let top = lattice.top().expect("lattices have a top");
    if !building.contains(top) {
        return Err(Error::InvalidBuildingSet(
            "only building sets containing the top element are supported".into(),
        ));
    }
    if !crate::lattice::is_building_set(lattice, building.members())? {
        return Err(Error::InvalidBuildingSet(
            "some lower interval is not the product of its factor intervals".into(),
        ));
    }
    let candidates: Vec<usize> = building
        .members()
        .iter()
        .copied()
        .filter(|&g| g != top)
        .collect();

    let mut faces: HashSet<Vec<usize>> = HashSet::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((set, from)) = stack.pop() {
        for pos in from..candidates.len() {
            let g = candidates[pos];
            if extends_nested(lattice, building, &set, g) {
                let mut next = set.clone();
                next.push(g);
                stack.push((next, pos + 1));
            }
        }
        faces.insert(set);
    }
    let mut facets: Vec<Vec<usize>> = faces
        .iter()
        .filter(|f| {
            !candidates.iter().any(|g| {
                if f.contains(g) {
                    return false;
                }
                let mut bigger = (*f).clone();
                let at = bigger.partition_point(|x| x < g);
                bigger.insert(at, *g);
                faces.contains(&bigger)
            })
        })
        .cloned()
        .collect();
    if include_top {
        for f in &mut facets {
            f.push(top);
            f.sort_unstable();
        }
    }
    facets.sort();
    Ok(facets)
}

/// The nested set complex of `building`; with `reduced` the cone apex `1̂`
/// is removed.
pub fn nested_set_complex<P: Payload>(
    lattice: &FiniteLattice<P>,
    building: &BuildingSet,
    reduced: bool,
) -> Result<SimplicialComplex> {
    let facets = maximal_nested_sets(lattice, building, !reduced)?;
    Ok(SimplicialComplex::from_facets(
        facets
            .iter()
            .map(|f| f.iter().map(|&x| lattice.label(x)).collect::<Vec<_>>()),
    ))
}

/// Stellar subdivision of `complex` at `face`, adding the vertex `new_label`.
///
/// Every facet `F ∪ R` containing the face is replaced by the facets
/// `{new} ∪ (F - f) ∪ R` for `f` in `F`.
pub fn stellar_subdivision<S: AsRef<str>>(
    complex: &SimplicialComplex,
    face: &[S],
    new_label: &str,
) -> Result<SimplicialComplex> {
    if face.len() < 2 {
        return Err(Error::InvalidArgument(
            "stellar subdivision needs a face with at least two vertices".into(),
        ));
    }
    if complex.vertex_index(new_label).is_some() {
        return Err(Error::InvalidArgument(format!(
            "vertex label {new_label:?} is already in use"
        )));
    }
    let idx = complex
        .indices_of(face)
        .filter(|idx| idx.len() == face.len() && complex.contains_face(idx))
        .ok_or_else(|| {
            Error::InvalidFace(format!(
                "{{{}}} is not a face",
                face.iter().map(|s| s.as_ref()).join(",")
            ))
        })?;
    let star = complex.star_facets(&idx);
    let star_set: HashSet<usize> = star.iter().copied().collect();
    let mut out: Vec<Vec<String>> = Vec::new();
    for (i, f) in complex.facets.iter().enumerate() {
        if !star_set.contains(&i) {
            out.push(complex.labels_of(f));
        }
    }
    for &i in &star {
        let rest: Vec<usize> = complex.facets[i]
            .iter()
            .copied()
            .filter(|v| !idx.contains(v))
            .collect();
        for &drop in &idx {
            let mut f: Vec<String> = idx
                .iter()
                .filter(|&&v| v != drop)
                .chain(rest.iter())
                .map(|&v| complex.vertices[v].clone())
                .collect();
            f.push(new_label.to_string());
            out.push(f);
        }
    }
    Ok(SimplicialComplex::from_facets(out))
}

/// Barycentric subdivision: vertices are the nonempty faces (labelled
/// `{a,b,...}`), simplices are inclusion chains.
pub fn barycentric_subdivision(complex: &SimplicialComplex) -> SimplicialComplex {
    let face_label = |face: &[usize]| format!("{{{}}}", complex.labels_of(face).join(","));
    let mut chains: Vec<Vec<String>> = Vec::new();
    for f in &complex.facets {
        for perm in f.iter().copied().permutations(f.len()) {
            let chain: Vec<String> = (1..=perm.len())
                .map(|k| {
                    let mut prefix = perm[..k].to_vec();
                    prefix.sort_unstable();
                    face_label(&prefix)
                })
                .collect();
            chains.push(chain);
        }
    }
    SimplicialComplex::from_facets(chains)
}

/// One stellar subdivision: the subdivided face and the new vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionStep {
    pub face: Vec<String>,
    pub new_vertex: String,
}

/// An ordered log of stellar subdivisions linking two complexes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionTrace {
    pub start: SimplicialComplex,
    pub steps: Vec<SubdivisionStep>,
    pub end: SimplicialComplex,
}

impl SubdivisionTrace {
    /// Every intermediate complex, from `start` to the result of the last step.
    pub fn intermediates(&self) -> Result<Vec<SimplicialComplex>> {
        let mut out = vec![self.start.clone()];
        for step in &self.steps {
            let next = stellar_subdivision(out.last().unwrap(), &step.face, &step.new_vertex)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Re-runs the steps from `start`.
    pub fn replay(&self) -> Result<SimplicialComplex> {
        let mut k = self.start.clone();
        for step in &self.steps {
            k = stellar_subdivision(&k, &step.face, &step.new_vertex)?;
        }
        Ok(k)
    }

    /// The facet of `start` whose subdivision contains the facet `simplex`
    /// of `end`, found by undoing the steps in reverse: a facet containing
    /// a new vertex `v` came from `(facet - v) ∪ face(v)`.
    pub fn locate_in_start<S: AsRef<str>>(&self, simplex: &[S]) -> Result<Vec<String>> {
        let mut current: BTreeSet<String> = simplex.iter().map(|s| s.as_ref().to_string()).collect();
        if !self.end.contains_face_labels(&current.iter().collect::<Vec<_>>()) {
            return Err(Error::InvalidFace("simplex is not a face of the end complex".into()));
        }
        for step in self.steps.iter().rev() {
            if current.remove(&step.new_vertex) {
                current.extend(step.face.iter().cloned());
            }
        }
        let labels: Vec<String> = current.into_iter().collect();
        if !self.start.contains_face_labels(&labels) {
            return Err(Error::Inconsistent(
                "undoing the trace left a set that is not a face of the start".into(),
            ));
        }
        Ok(labels)
    }
}

/// Subdivides the minimal reduced nested set complex of `lattice` into the
/// order complex: reducible proper elements are taken by decreasing rank
/// (ties by payload order), and each is inserted by a stellar subdivision of
/// the face spanned by its irreducible factors.
pub fn subdivide_to_order_complex<P: Payload>(
    lattice: &FiniteLattice<P>,
) -> Result<(SimplicialComplex, SubdivisionTrace)> {
    let irreducible = BuildingSet::irreducibles(lattice)?;
    let start = nested_set_complex(lattice, &irreducible, true)?;
    let mut reducible: Vec<usize> = lattice
        .proper_part()
        .into_iter()
        .filter(|&x| !irreducible.contains(x))
        .collect();
    reducible.sort_by(|&a, &b| {
        lattice
            .rank(b)
            .cmp(&lattice.rank(a))
            .then_with(|| lattice.element(a).cmp(lattice.element(b)))
    });
    let mut current = start.clone();
    let mut steps = Vec::with_capacity(reducible.len());
    for x in reducible {
        let face: Vec<String> = irreducible
            .factors(lattice, x)
            .into_iter()
            .map(|f| lattice.label(f))
            .collect();
        let new_vertex = lattice.label(x);
        current = stellar_subdivision(&current, &face, &new_vertex).map_err(|e| match e {
            Error::InvalidFace(msg) => Error::Inconsistent(format!(
                "factor face of {new_vertex} is missing at its step: {msg}"
            )),
            other => other,
        })?;
        steps.push(SubdivisionStep { face, new_vertex });
    }
    let trace = SubdivisionTrace {
        start,
        steps,
        end: current.clone(),
    };
    Ok((current, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_block_size_poset, build_partition_lattice};

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::simplex(["a", "b", "c"])
    }

    #[test]
    fn from_facets_drops_non_maximal_faces() {
        let k = SimplicialComplex::from_facets(vec![
            vec!["a", "b"],
            vec!["b", "a"],
            vec!["a"],
            vec!["c"],
        ]);
        assert_eq!(k.num_vertices(), 3);
        assert_eq!(k.facet_labels(), vec![vec!["a", "b"], vec!["c"]]);
        assert!(!k.is_pure());
        assert!(k.contains_face_labels(&["b"]));
        assert!(!k.contains_face_labels(&["b", "c"]));
    }

    #[test]
    fn json_reader_accepts_any_order() {
        let json = r#"{"vertices":["z","a","m"],"facets":[[2,0],[1,0]]}"#;
        let k: SimplicialComplex = serde_json::from_str(json).unwrap();
        let expected = SimplicialComplex::from_facets(vec![vec!["a", "z"], vec!["m", "z"]]);
        assert_eq!(k, expected);
        let written = serde_json::to_string(&k).unwrap();
        assert_eq!(written, r#"{"vertices":["a","m","z"],"facets":[[0,2],[1,2]]}"#);
        assert!(serde_json::from_str::<SimplicialComplex>(r#"{"vertices":["a"],"facets":[[3]]}"#).is_err());
    }

    #[test]
    fn stellar_edge_split_of_triangle() {
        let k = stellar_subdivision(&triangle(), &["a", "b"], "v").unwrap();
        assert_eq!(
            k.facet_labels(),
            vec![vec!["a", "c", "v"], vec!["b", "c", "v"]]
        );
        assert_eq!(k.num_vertices(), 4);
    }

    #[test]
    fn stellar_argument_errors() {
        let t = triangle();
        assert!(matches!(
            stellar_subdivision(&t, &["a"], "v"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            stellar_subdivision(&t, &["a", "b"], "c"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            stellar_subdivision(&t, &["a", "x"], "v"),
            Err(Error::InvalidFace(_))
        ));
    }

    #[test]
    fn figure_two_subdivision() {
        let t = SimplicialComplex::simplex(["23", "45", "145"]);
        let k = stellar_subdivision(&t, &["23", "145"], "145|23").unwrap();
        let k = stellar_subdivision(&k, &["23", "45"], "23|45").unwrap();
        assert_eq!(k.num_vertices(), 5);
        assert_eq!(k.num_facets(), 3);
        assert_eq!(k.f_vector(), vec![5, 7, 3]);
        assert!(k.contains_face_labels(&["23|45", "145|23"]));
    }

    #[test]
    fn barycentric_small_cases() {
        let b = barycentric_subdivision(&triangle());
        assert_eq!((b.num_vertices(), b.num_facets()), (7, 6));
        let e = barycentric_subdivision(&SimplicialComplex::simplex(["a", "b"]));
        assert_eq!((e.num_vertices(), e.num_facets()), (3, 2));
        assert_eq!(e.dimension(), Some(1));
    }

    #[test]
    fn order_complex_small_cases() {
        let l4 = build_partition_lattice(4).unwrap();
        let d = order_complex(&l4);
        assert_eq!((d.num_vertices(), d.num_facets()), (13, 18));
        assert!(d.facets().iter().all(|f| f.len() == 2));

        let antichain = order_complex(&build_block_size_poset(5, 2).unwrap());
        assert_eq!((antichain.num_vertices(), antichain.num_facets()), (10, 10));
        assert_eq!(antichain.dimension(), Some(0));

        let l2 = build_partition_lattice(2).unwrap();
        assert_eq!(order_complex(&l2), SimplicialComplex::empty());
    }

    #[test]
    fn nested_set_complex_of_pi3_is_three_points() {
        let l = build_partition_lattice(3).unwrap();
        let irr = BuildingSet::irreducibles(&l).unwrap();
        let n = nested_set_complex(&l, &irr, true).unwrap();
        assert_eq!(n.facet_labels(), vec![vec!["12"], vec!["13"], vec!["23"]]);
        let cone = nested_set_complex(&l, &irr, false).unwrap();
        assert_eq!(cone.num_facets(), 3);
        assert!(cone.facets().iter().all(|f| f.len() == 2));
    }

    #[test]
    fn invalid_building_sets_are_rejected() {
        let l = build_partition_lattice(4).unwrap();
        let mut atoms = l.atoms().to_vec();
        atoms.push(l.top().unwrap());
        let bogus = BuildingSet::new_unchecked(l.len(), atoms);
        assert!(matches!(
            nested_set_complex(&l, &bogus, true),
            Err(Error::InvalidBuildingSet(_))
        ));
    }

    #[test]
    fn complexes_equal_with_label_map() {
        let a = triangle();
        assert!(complexes_equal(&a, &a, None).unwrap());
        let map: HashMap<String, String> = [("a", "x"), ("b", "y"), ("c", "z")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let b = SimplicialComplex::simplex(["x", "y", "z"]);
        assert!(complexes_equal(&a, &b, Some(&map)).unwrap());
        let clash: HashMap<String, String> = [("a", "x"), ("b", "x")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        assert!(complexes_equal(&a, &b, Some(&clash)).is_err());
    }

    #[test]
    fn trace_of_pi3_is_empty() {
        let l = build_partition_lattice(3).unwrap();
        let (k, trace) = subdivide_to_order_complex(&l).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(k, order_complex(&l));
    }
}

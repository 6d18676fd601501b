//! Exact planar realizations in barycentric coordinates, used to decide
//! whether a segment is a union of closed cells of a realized complex.

use std::collections::HashMap;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::complex::{barycentric_subdivision, stellar_subdivision, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lattice::SetPartition;

/// Barycentric coordinates with respect to a fixed triangle.
pub type Point = [Rational64; 3];

/// Vertex positions of a complex realized inside a triangle.
#[derive(Debug, Clone, Default)]
pub struct Realization {
    points: HashMap<String, Point>,
}

impl Realization {
    /// Places the three labels at the corners of the triangle.
    pub fn standard_triangle(corners: [&str; 3]) -> Self {
        let mut points = HashMap::new();
        for (i, c) in corners.iter().enumerate() {
            let mut p = [Rational64::zero(); 3];
            p[i] = Rational64::one();
            points.insert(c.to_string(), p);
        }
        Realization { points }
    }

    pub fn point(&self, label: &str) -> Option<&Point> {
        self.points.get(label)
    }

    pub fn insert(&mut self, label: impl Into<String>, p: Point) {
        self.points.insert(label.into(), p);
    }

    /// Barycenter of the listed vertices.
    pub fn barycenter(&self, labels: &[String]) -> Result<Point> {
        if labels.is_empty() {
            return Err(Error::InvalidArgument("barycenter of no points".into()));
        }
        let mut acc = [Rational64::zero(); 3];
        for l in labels {
            let p = self
                .point(l)
                .ok_or_else(|| Error::InvalidArgument(format!("no position for {l}")))?;
            for i in 0..3 {
                acc[i] += p[i];
            }
        }
        let k = Rational64::from_integer(labels.len() as i64);
        Ok(acc.map(|c| c / k))
    }
}

/// Parameter `t` with `x = p + t (q - p)`, if `x` lies on the line through
/// `p` and `q`.
fn line_parameter(p: &Point, q: &Point, x: &Point) -> Option<Rational64> {
    let i = (0..3).find(|&i| q[i] != p[i])?;
    let t = (x[i] - p[i]) / (q[i] - p[i]);
    (0..3)
        .all(|j| x[j] == p[j] + t * (q[j] - p[j]))
        .then_some(t)
}

/// Whether the closed segment `[p, q]` is a union of closed cells of the
/// realized complex. Only edges can contribute, so this asks whether the
/// edges lying on the segment cover it.
pub fn segment_is_union_of_cells(
    p: &Point,
    q: &Point,
    complex: &SimplicialComplex,
    realization: &Realization,
) -> Result<bool> {
    if p == q {
        return Ok(complex
            .vertices()
            .iter()
            .any(|v| realization.point(v) == Some(p)));
    }
    let mut pieces = Vec::new();
    for edge in complex.faces(1) {
        let ends = complex.labels_of(&edge);
        let a = realization
            .point(&ends[0])
            .ok_or_else(|| Error::InvalidArgument(format!("no position for {}", ends[0])))?;
        let b = realization
            .point(&ends[1])
            .ok_or_else(|| Error::InvalidArgument(format!("no position for {}", ends[1])))?;
        let (Some(s), Some(t)) = (line_parameter(p, q, a), line_parameter(p, q, b)) else {
            continue;
        };
        let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
        if lo >= Rational64::zero() && hi <= Rational64::one() {
            pieces.push((lo, hi));
        }
    }
    pieces.sort();
    let mut reached = Rational64::zero();
    for (lo, hi) in pieces {
        if lo > reached {
            break;
        }
        reached = reached.max(hi);
    }
    Ok(reached == Rational64::one())
}

/// Findings on the two-step subdivision of the triangle `{23, 45, 145}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonRefinementReport {
    pub triangles: usize,
    pub edges: usize,
    pub contains_edge: bool,
    pub segment_is_union_of_cells: bool,
    pub control_edges_refine: bool,
    pub holds: bool,
}

/// Subdivides the triangle `{23, 45, 145}` at the edge `{23, 145}` and then
/// at `{23, 45}`, places each new vertex at the barycenter of its face, and
/// tests the edge between the two new vertices against the barycentric
/// subdivision of the triangle.
pub fn verify_remark3_non_refinement() -> Result<NonRefinementReport> {
    let label = |s: &str| -> Result<String> { Ok(SetPartition::parse(5, s)?.to_string()) };
    let corners = [label("23")?, label("45")?, label("145")?];
    let triangle = SimplicialComplex::simplex(corners.iter().cloned());
    let mut real = Realization::standard_triangle([&corners[0], &corners[1], &corners[2]]);

    let mut complex = triangle.clone();
    let mut new_vertices = Vec::new();
    for (face, x) in [
        ([&corners[0], &corners[2]], "23|145"),
        ([&corners[0], &corners[1]], "23|45"),
    ] {
        let face: Vec<String> = face.iter().map(|s| s.to_string()).collect();
        let v = label(x)?;
        real.insert(v.clone(), real.barycenter(&face)?);
        complex = stellar_subdivision(&complex, &face, &v)?;
        new_vertices.push(v);
    }
    let f = complex.f_vector();
    let contains_edge = complex.contains_face_labels(&new_vertices);

    let bsd = barycentric_subdivision(&triangle);
    let mut bsd_real = Realization::default();
    for v in bsd.vertices() {
        let members: Vec<String> = v
            .trim_start_matches('{')
            .trim_end_matches('}')
            .split(',')
            .map(str::to_string)
            .collect();
        bsd_real.insert(v.clone(), real.barycenter(&members)?);
    }
    let p = real.point(&new_vertices[0]).unwrap();
    let q = real.point(&new_vertices[1]).unwrap();
    let segment_is_union = segment_is_union_of_cells(p, q, &bsd, &bsd_real)?;

    let mut control = true;
    for edge in bsd.faces(1) {
        let ends = bsd.labels_of(&edge);
        let a = bsd_real.point(&ends[0]).unwrap();
        let b = bsd_real.point(&ends[1]).unwrap();
        control &= segment_is_union_of_cells(a, b, &bsd, &bsd_real)?;
    }

    let triangles = f.get(2).copied().unwrap_or(0);
    let edges = f.get(1).copied().unwrap_or(0);
    Ok(NonRefinementReport {
        triangles,
        edges,
        contains_edge,
        segment_is_union_of_cells: segment_is_union,
        control_edges_refine: control,
        holds: contains_edge && !segment_is_union,
    })
}

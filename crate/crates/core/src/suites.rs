//! Named verification suites. Each suite runs a family of exact checks and
//! collects expected and actual values side by side.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::complex::{nested_set_complex, order_complex, subdivide_to_order_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::verify_remark3_non_refinement;
use crate::homology::{reduced_betti, FieldChoice, DEFAULT_PRIME};
use crate::lattice::{
    build_block_size_poset, build_k_equal_lattice, build_partition_lattice, BuildingSet, FiniteLattice,
    Payload,
};
use crate::nbc::{admissible_trees, verify_admissible_basis, GeometricLattice};
use crate::tree::{enumerate_hanlon_k_trees, enumerate_k_equal_trees, enumerate_tn, hanlon_leaf_count};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    TreeIdentity,
    Subdivision,
    Bijections,
    SupportSimplices,
    AdmissibleBasis,
    NonRefinement,
    KEqual,
    KTreesEvidence,
    Betti,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::TreeIdentity,
        Suite::Subdivision,
        Suite::Bijections,
        Suite::SupportSimplices,
        Suite::AdmissibleBasis,
        Suite::NonRefinement,
        Suite::KEqual,
        Suite::KTreesEvidence,
        Suite::Betti,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TreeIdentity => "thm31",
            Suite::Subdivision => "cor32",
            Suite::Bijections => "prop44",
            Suite::SupportSimplices => "prop46",
            Suite::AdmissibleBasis => "prop48",
            Suite::NonRefinement => "remark3",
            Suite::KEqual => "prop56",
            Suite::KTreesEvidence => "q52-evidence",
            Suite::Betti => "betti",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::Parse(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Parameters shared by all suites. Unset `n` / `k` select each suite's
/// default range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub k: Option<usize>,
    #[serde(serialize_with = "display")]
    pub field: FieldChoice,
    pub max_n: usize,
}

fn display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            n: None,
            k: None,
            field: FieldChoice::Rational,
            max_n: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub params: SuiteParams,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn eq<T: fmt::Debug + PartialEq>(&mut self, name: impl Into<String>, expected: T, actual: T) {
        self.0.push(Check {
            name: name.into(),
            passed: expected == actual,
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        });
    }

    fn holds(&mut self, name: impl Into<String>, actual: bool) {
        self.eq(name, true, actual);
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Values of `n` to run: the requested one, or the suite default range
/// clipped at `max_n`. `limits` bounds the admissible values.
fn n_values(params: &SuiteParams, default: &[usize], limits: (usize, usize)) -> Result<Vec<usize>> {
    let (lo, hi) = limits;
    match params.n {
        Some(n) if n > params.max_n => Err(Error::InvalidParameter(format!(
            "n = {n} exceeds --max-n {}",
            params.max_n
        ))),
        Some(n) if n < lo || n > hi => Err(Error::InvalidParameter(format!(
            "this suite supports {lo} <= n <= {hi}, got {n}"
        ))),
        Some(n) => Ok(vec![n]),
        None => Ok(default.iter().copied().filter(|&n| n <= params.max_n).collect()),
    }
}

fn betti_vector(expected_degree: usize, value: usize) -> Vec<usize> {
    let mut v = vec![0; expected_degree + 1];
    v[expected_degree] = value;
    v
}

/// Runs a suite. Parameter problems surface as errors; failed checks are
/// recorded in the report.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<VerifyReport> {
    let mut checks = Checks::default();
    match suite {
        Suite::TreeIdentity => tree_identity(params, &mut checks)?,
        Suite::Betti => betti(params, &mut checks)?,
        Suite::Subdivision => subdivision(params, &mut checks)?,
        Suite::Bijections => bijections(params, &mut checks)?,
        Suite::SupportSimplices => support_simplices(params, &mut checks)?,
        Suite::AdmissibleBasis => admissible_basis(params, &mut checks)?,
        Suite::NonRefinement => non_refinement(&mut checks)?,
        Suite::KEqual => k_equal(params, &mut checks)?,
        Suite::KTreesEvidence => k_trees_evidence(params, &mut checks)?,
    }
    let checks = checks.0;
    Ok(VerifyReport {
        suite: suite.name().to_string(),
        params: *params,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn tree_identity(params: &SuiteParams, checks: &mut Checks) -> Result<()> {
    for n in n_values(params, &[3, 4, 5, 6], (3, 6))? {
        let trees = enumerate_tn(n)?;
        let lattice = build_partition_lattice(n)?;
        let minimal = BuildingSet::irreducibles(&lattice)?;
        let nested = nested_set_complex(&lattice, &minimal, true)?;
        checks.eq(
            format!("n={n}: vertices of tree complex and nested set complex"),
            nested.num_vertices(),
            trees.num_vertices(),
        );
        checks.eq(
            format!("n={n}: facets of tree complex and nested set complex"),
            nested.num_facets(),
            trees.num_facets(),
        );
        checks.holds(format!("n={n}: identical facet sets"), trees == nested);
    }
    Ok(())
}

fn betti(params: &SuiteParams, checks: &mut Checks) -> Result<()> {
    for n in n_values(params, &[3, 4, 5, 6], (3, 8))? {
        let trees = enumerate_tn(n)?;
        let expected = betti_vector(n - 3, factorial(n - 1));
        let chosen = reduced_betti(&trees, params.field)?;
        checks.eq(
            format!("n={n}: reduced Betti numbers over {}", params.field),
            expected.clone(),
            chosen.clone(),
        );
        let other = match params.field {
            FieldChoice::Rational => FieldChoice::Prime(DEFAULT_PRIME),
            FieldChoice::Prime(_) => FieldChoice::Rational,
        };
        checks.eq(
            format!("n={n}: agreement of {} and {other}", params.field),
            chosen,
            reduced_betti(&trees, other)?,
        );
    }
    Ok(())
}

/// Subdivision pipeline checks shared by the partition and k-equal suites.
fn pipeline<P: Payload>(
    tag: &str,
    lattice: &FiniteLattice<P>,
    start: &SimplicialComplex,
    field: FieldChoice,
    checks: &mut Checks,
) -> Result<()> {
    let (end, trace) = subdivide_to_order_complex(lattice)?;
    checks.holds(format!("{tag}: trace starts at the tree complex"), &trace.start == start);
    let delta = order_complex(lattice);
    checks.holds(format!("{tag}: trace ends at the order complex"), end == delta);
    checks.holds(format!("{tag}: replay reproduces the end"), trace.replay()? == end);
    let before = reduced_betti(start, field)?;
    let mut preserved = true;
    for (i, k) in trace.intermediates()?.iter().enumerate().skip(1) {
        let b = reduced_betti(k, field)?;
        if b != before {
            preserved = false;
            checks.eq(format!("{tag}: Betti numbers after step {i}"), before.clone(), b);
        }
    }
    checks.holds(
        format!("{tag}: Betti numbers {before:?} preserved by all {} steps", trace.steps.len()),
        preserved,
    );
    Ok(())
}

fn subdivision(params: &SuiteParams, checks: &mut Checks) -> Result<()> {
    for n in n_values(params, &[4, 5], (3, 6))? {
        let lattice = build_partition_lattice(n)?;
        let trees = enumerate_tn(n)?;
        pipeline(&format!("n={n}"), &lattice, &trees, params.field, checks)?;
        if n == 5 {
            let delta = order_complex(&lattice);
            checks.eq(
                "n=5: vertices and facets of the order complex",
                (50, 180),
                (delta.num_vertices(), delta.num_facets()),
            );
        }
    }
    Ok(())
}

fn bijections(params: &SuiteParams, checks: &mut Checks) -> Result<()> {
    for n in n_values(params, &[3, 4, 5, 6], (2, 7))? {
        let g = GeometricLattice::new(build_partition_lattice(n)?, None)?;
        let rep = g.verify_bijection_triangle()?;
        let f = factorial(n - 1);
        checks.eq(
            format!("n={n}: nbc bases, decreasing chains, proper nested sets"),
            (f, f, f),
            (rep.nbc_count, rep.dc_count, rep.pn_count),
        );
        checks.holds(format!("n={n}: nbc to chains is a bijection"), rep.psi_bijective);
        checks.holds(format!("n={n}: chains to nested sets is a bijection"), rep.theta_bijective);
        checks.holds(format!("n={n}: round trip is the identity"), rep.composite_identity);
        for c in rep.counterexamples {
            checks.eq(format!("n={n}: counterexample"), String::new(), c);
        }
    }
    Ok(())
}

fn support_simplices(params: &SuiteParams, checks: &mut Checks) -> Result<()> {
    for n in n_values(params, &[4, 5], (3, 6))? {
        let lattice = build_partition_lattice(n)?;
        let (_, trace) = subdivide_to_order_complex(&lattice)?;
        let g = GeometricLattice::new(lattice, None)?;
        let chains = g.maximal_chains();
        let mut mismatches = 0;
        for full in &chains {
            let proper = &full[1..full.len() - 1];
            let labels: Vec<String> = proper.iter().map(|&x| g.lattice().label(x)).collect();
            let located: BTreeSet<String> = trace.locate_in_start(&labels)?.into_iter().collect();
            let formula: BTreeSet<String> = g
                .support_simplex(proper)?
                .into_iter()
                .map(|x| g.lattice().label(x))
                .collect();
            if located != formula {
                mismatches += 1;
                checks.eq(
                    format!("n={n}: support of {}", labels.join("<")),
                    located,
                    formula,
                );
            }
        }
        let expected_chains = factorial(n) * factorial(n - 1) / (1 << (n - 1));
        checks.eq(format!("n={n}: maximal chains checked"), expected_chains, chains.len());
        checks.eq(format!("n={n}: mismatching support simplices"), 0, mismatches);
    }
    Ok(())
}

fn admissible_basis(params: &SuiteParams, checks: &mut Checks) -> Result<()> {
    for n in n_values(params, &[3, 4, 5], (3, 5))? {
        let rep = verify_admissible_basis(n)?;
        let f = factorial(n - 1);
        checks.eq(format!("n={n}: admissible trees"), f, rep.admissible);
        checks.eq(format!("n={n}: top cycles"), f, rep.cycles);
        checks.eq(format!("n={n}: rank of the evaluation matrix"), f, rep.rank);

        let g = GeometricLattice::new(build_partition_lattice(n)?, None)?;
        let top = g.lattice().top().expect("lattice top");
        let from_nested: BTreeSet<Vec<String>> = g
            .proper_nested_sets()?
            .into_iter()
            .map(|p| {
                let mut v: Vec<String> = p
                    .members
                    .into_iter()
                    .filter(|&x| x != top)
                    .map(|x| g.lattice().label(x))
                    .collect();
                v.sort();
                v
            })
            .collect();
        let from_trees: BTreeSet<Vec<String>> = admissible_trees(n)?
            .iter()
            .map(|t| {
                let mut v = t.vertex_labels();
                v.sort();
                v
            })
            .collect();
        checks.holds(
            format!("n={n}: admissible trees are the proper nested sets"),
            from_nested == from_trees,
        );
    }
    Ok(())
}

fn non_refinement(checks: &mut Checks) -> Result<()> {
    let rep = verify_remark3_non_refinement()?;
    checks.eq("triangles and edges of the two-step subdivision", (3, 7), (rep.triangles, rep.edges));
    checks.holds("subdivision contains the edge 23|45 - 23|145", rep.contains_edge);
    checks.eq(
        "edge segment is a union of barycentric cells",
        false,
        rep.segment_is_union_of_cells,
    );
    checks.holds("every barycentric edge is a union of barycentric cells", rep.control_edges_refine);
    Ok(())
}

fn k_equal(params: &SuiteParams, checks: &mut Checks) -> Result<()> {
    let k = params.k.unwrap_or(3);
    let defaults: Vec<usize> = (k + 2..=k + 4).collect();
    let params = SuiteParams {
        max_n: params.max_n.max(k + 4),
        ..*params
    };
    for n in n_values(&params, &defaults, (k + 1, 8))? {
        let tag = format!("n={n}, k={k}");
        let trees = enumerate_k_equal_trees(n, k)?;
        let lattice = build_k_equal_lattice(n, k)?;
        let minimal = BuildingSet::irreducibles(&lattice)?;
        let nested = nested_set_complex(&lattice, &minimal, true)?;
        checks.eq(
            format!("{tag}: facets of tree complex and nested set complex"),
            nested.num_facets(),
            trees.num_facets(),
        );
        checks.holds(format!("{tag}: identical facet sets"), trees == nested);
        pipeline(&tag, &lattice, &trees, params.field, checks)?;
    }
    Ok(())
}

fn k_trees_evidence(params: &SuiteParams, checks: &mut Checks) -> Result<()> {
    let k = params.k.unwrap_or(2);
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let params = SuiteParams {
        max_n: params.max_n.max(4),
        ..*params
    };
    for n in n_values(&params, &[3, 4], (3, 6))? {
        let leaves = hanlon_leaf_count(n, k);
        let tag = format!("n={n}, k={k}");
        let trees = enumerate_hanlon_k_trees(n, k)?;
        let poset = build_block_size_poset(leaves, k)?;
        let delta = order_complex(&poset);
        let from_trees = reduced_betti(&trees, params.field)?;
        let from_poset = reduced_betti(&delta, params.field)?;
        let d = n - 3;
        let lhs = from_trees.get(d).copied().unwrap_or(0);
        let rhs = from_poset.get(d).copied().unwrap_or(0);
        checks.eq(
            format!("{tag}: reduced Betti in degree {d} of k-trees and of the {leaves}-point poset"),
            lhs,
            rhs,
        );
        if n == 3 && k == 2 {
            checks.eq(format!("{tag}: reduced Betti in degree 0"), 9, lhs);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("thm32".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let p = SuiteParams {
            n: Some(4),
            ..SuiteParams::default()
        };
        for s in [Suite::TreeIdentity, Suite::Betti, Suite::Subdivision, Suite::Bijections] {
            let rep = run_suite(s, &p).unwrap();
            assert!(rep.passed, "{s}: {:?}", rep.failed().collect::<Vec<_>>());
        }
        assert!(run_suite(Suite::NonRefinement, &p).unwrap().passed);
    }

    #[test]
    fn out_of_range_n_is_a_parameter_error() {
        let p = SuiteParams {
            n: Some(7),
            ..SuiteParams::default()
        };
        assert!(matches!(
            run_suite(Suite::TreeIdentity, &p),
            Err(Error::InvalidParameter(_))
        ));
    }
}

//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero
//! exit status if any criterion fails.

use std::collections::{BTreeSet, VecDeque};
use std::process::ExitCode;
use std::time::Instant;

use treenest::complex::nested_set_complex;
use treenest::lattice::build_partition_lattice;
use treenest::suites::{run_suite, Suite, SuiteParams};
use treenest::{BuildingSet, Error, GeometricLattice, SetPartition, SimplicialComplex};

type Outcome = Result<(bool, String), Error>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn suite(s: Suite, params: SuiteParams) -> Outcome {
    let rep = run_suite(s, &params)?;
    let failed: Vec<String> = rep
        .failed()
        .map(|c| format!("{}: expected {}, got {}", c.name, c.expected, c.actual))
        .collect();
    let detail = if failed.is_empty() {
        format!("{} checks", rep.checks.len())
    } else {
        failed.join("; ")
    };
    Ok((rep.passed, detail))
}

fn suite_with_n(s: Suite, ns: &[usize]) -> Outcome {
    let mut total = 0;
    let mut failures = Vec::new();
    for &n in ns {
        let params = SuiteParams {
            n: Some(n),
            ..SuiteParams::default()
        };
        let rep = run_suite(s, &params)?;
        total += rep.checks.len();
        failures.extend(rep.failed().map(|c| format!("{}: expected {}, got {}", c.name, c.expected, c.actual)));
    }
    if failures.is_empty() {
        Ok((true, format!("{total} checks")))
    } else {
        Ok((false, failures.join("; ")))
    }
}

fn girth(adj: &[Vec<usize>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in 0..adj.len() {
        let mut dist = vec![usize::MAX; adj.len()];
        let mut parent = vec![usize::MAX; adj.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

fn petersen() -> Outcome {
    let lattice = build_partition_lattice(4)?;
    let minimal = BuildingSet::irreducibles(&lattice)?;
    let k: SimplicialComplex = nested_set_complex(&lattice, &minimal, true)?;
    let edges: Vec<&Vec<usize>> = k.facets().iter().filter(|f| f.len() == 2).collect();
    let all_edges = edges.len() == k.num_facets();
    let mut adj = vec![Vec::new(); k.num_vertices()];
    for e in &edges {
        adj[e[0]].push(e[1]);
        adj[e[1]].push(e[0]);
    }
    let regular = adj.iter().all(|a| a.len() == 3);
    let g = girth(&adj);
    let ok = k.num_vertices() == 10 && edges.len() == 15 && all_edges && regular && g == Some(5);
    Ok((
        ok,
        format!(
            "{} vertices, {} edges, 3-regular {regular}, girth {g:?}",
            k.num_vertices(),
            edges.len()
        ),
    ))
}

fn worked_example() -> Outcome {
    let canon = |s: &str| -> Result<String, Error> { Ok(SetPartition::parse(5, s)?.to_string()) };
    let g = GeometricLattice::new(build_partition_lattice(5)?, None)?;
    let l = g.lattice();
    let basis: Vec<usize> = ["12", "14", "23", "45"]
        .iter()
        .map(|s| l.find_label(&canon(s).unwrap()).unwrap())
        .collect();
    let chain = g.psi(&basis)?;
    let chain_labels: Vec<String> = chain.chain.iter().map(|&x| l.label(x)).collect();
    let expected_chain: Vec<String> = ["0̂", "45", "23|45", "23|145", "12345"]
        .iter()
        .map(|s| canon(s))
        .collect::<Result<_, _>>()?;

    let nested = g.theta(&chain)?;
    let members: BTreeSet<String> = nested.members.iter().map(|&x| l.label(x)).collect();
    let expected_members: BTreeSet<String> = ["23", "45", "145", "12345"]
        .iter()
        .map(|s| canon(s))
        .collect::<Result<_, _>>()?;

    let phi: BTreeSet<String> = g.phi(&nested.members).iter().map(|&x| l.label(x)).collect();
    let expected_phi: BTreeSet<String> = ["12", "23", "14", "45"]
        .iter()
        .map(|s| canon(s))
        .collect::<Result<_, _>>()?;

    let ok = chain_labels == expected_chain && members == expected_members && phi == expected_phi;
    Ok((
        ok,
        format!(
            "chain {}, nested {:?}, atoms {:?}",
            chain_labels.join("<"),
            members,
            phi
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("tree complex equals minimal nested set complex, n = 3..6", Box::new(|| suite(Suite::TreeIdentity, SuiteParams::default()))),
        ("wedge of spheres Betti numbers over Q and F_46337, n = 3..6", Box::new(|| suite(Suite::Betti, SuiteParams::default()))),
        ("stellar subdivision pipeline reaches the order complex, n = 4, 5", Box::new(|| suite(Suite::Subdivision, SuiteParams::default()))),
        ("nested set complex of the 4-point partition lattice is the Petersen graph", Box::new(petersen)),
        ("worked example of the nbc / chain / nested set maps on 5 points", Box::new(worked_example)),
        ("nbc bases, decreasing chains and proper nested sets agree, n = 3..6", Box::new(|| suite(Suite::Bijections, SuiteParams::default()))),
        ("support simplices match the subdivision trace, n = 4, 5", Box::new(|| suite(Suite::SupportSimplices, SuiteParams::default()))),
        ("admissible trees give a top cohomology basis, n = 3..5", Box::new(|| suite(Suite::AdmissibleBasis, SuiteParams::default()))),
        ("subdivision of a triangle not refined by its barycentric subdivision", Box::new(|| suite(Suite::NonRefinement, SuiteParams::default()))),
        ("k-equal trees equal the k-equal nested set complex, k = 3, n = 5..7", Box::new(|| suite_with_n(Suite::KEqual, &[5, 6, 7]))),
        ("k-trees and block-size posets have equal Betti numbers, k = 2, n = 3, 4", Box::new(|| suite(Suite::KTreesEvidence, SuiteParams::default()))),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        println!(
            "{} {:>2}. {name} [{:.1}s] {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

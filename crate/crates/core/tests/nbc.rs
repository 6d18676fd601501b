//! Broken circuits, decreasing chains and nested sets on partition lattices.

use std::collections::{BTreeSet, HashMap};

use treenest::homology::top_cycle_basis;
use treenest::lattice::{build_boolean_lattice, build_partition_lattice};
use treenest::linalg::{dense_rank, Rationals};
use treenest::nbc::{admissible_trees, is_admissible};
use treenest::tree::{binary_trees, enumerate_tn};
use treenest::{Error, GeometricLattice, SetPartition};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn pi(n: usize) -> GeometricLattice<SetPartition> {
    GeometricLattice::new(build_partition_lattice(n).unwrap(), None).unwrap()
}

#[test]
fn circuits_are_cycles_of_the_complete_graph() {
    for n in 3..=6 {
        let g = pi(n);
        let (circuits, broken) = g.circuits_and_broken_circuits();
        let cycles: usize = (3..=n).map(|k| binomial(n, k) * factorial(k - 1) / 2).sum();
        assert_eq!(circuits.len(), cycles, "n={n}");
        for (c, b) in circuits.iter().zip(&broken) {
            assert_eq!(&c[1..], &b[..]);
        }
    }
}

#[test]
fn counts_agree_for_lex_and_reversed_orders() {
    for n in 3..=6 {
        let lex = pi(n);
        let mut reversed = lex.omega().to_vec();
        reversed.reverse();
        let rev = GeometricLattice::new(build_partition_lattice(n).unwrap(), Some(reversed)).unwrap();
        for g in [&lex, &rev] {
            let rep = g.verify_bijection_triangle().unwrap();
            assert!(rep.holds, "n={n}: {:?}", rep.counterexamples);
            assert_eq!(rep.nbc_count, factorial(n - 1));
        }
    }
}

#[test]
fn reducible_lattice_has_no_proper_nested_sets() {
    // The irreducibles of a boolean lattice are its atoms, which miss the top.
    let g = GeometricLattice::new(build_boolean_lattice(4).unwrap(), None).unwrap();
    assert_eq!((g.nbc_bases().len(), g.decreasing_chains().len()), (1, 1));
    assert!(matches!(g.proper_nested_sets(), Err(Error::InvalidBuildingSet(_))));
    assert!(g.verify_bijection_triangle().is_err());
}

#[test]
fn omega_must_list_the_atoms() {
    let l = build_partition_lattice(3).unwrap();
    let bad = vec![l.atoms()[0], l.atoms()[0], l.atoms()[1]];
    assert!(GeometricLattice::new(l, Some(bad)).is_err());
}

#[test]
fn theta_without_top_is_the_support_simplex() {
    for n in 3..=5 {
        let g = pi(n);
        let top = g.lattice().top().unwrap();
        for c in g.decreasing_chains() {
            let mut theta = g.theta(&c).unwrap().members;
            theta.retain(|&x| x != top);
            let support = g.support_simplex(&c.chain[1..c.chain.len() - 1]).unwrap();
            assert_eq!(theta, support);
        }
    }
}

#[test]
fn support_facets_of_decreasing_chains_are_independent_in_cohomology() {
    for n in 3..=5 {
        let g = pi(n);
        let complex = enumerate_tn(n).unwrap();
        let basis = top_cycle_basis(&complex);
        let pos: HashMap<&[usize], usize> =
            basis.faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let rows: Vec<_> = g
            .decreasing_chains()
            .iter()
            .map(|c| {
                let support = g.support_simplex(&c.chain[1..c.chain.len() - 1]).unwrap();
                let labels: Vec<String> = support.iter().map(|&x| g.lattice().label(x)).collect();
                let face = complex.indices_of(&labels).unwrap();
                let i = pos[face.as_slice()];
                basis.cycles.iter().map(|z| z[i].clone()).collect::<Vec<_>>()
            })
            .collect();
        assert_eq!(dense_rank(&Rationals, rows), factorial(n - 1), "n={n}");
    }
}

#[test]
fn admissible_trees_counts_and_characterization() {
    for n in 3..=6 {
        let trees = admissible_trees(n).unwrap();
        assert_eq!(trees.len(), factorial(n - 1));
        let all = binary_trees(n).unwrap();
        assert_eq!(all.iter().filter(|t| is_admissible(t)).count(), trees.len());
    }
    let g = pi(5);
    let top = g.lattice().top().unwrap();
    let proper: BTreeSet<BTreeSet<String>> = g
        .proper_nested_sets()
        .unwrap()
        .into_iter()
        .map(|p| p.members.into_iter().filter(|&x| x != top).map(|x| g.lattice().label(x)).collect())
        .collect();
    let admissible: BTreeSet<BTreeSet<String>> = admissible_trees(5)
        .unwrap()
        .iter()
        .map(|t| t.vertex_labels().into_iter().collect())
        .collect();
    assert_eq!(proper, admissible);
}

#[test]
fn worked_example_on_five_points() {
    let g = pi(5);
    let l = g.lattice();
    let at = |s: &str| l.find_label(&SetPartition::parse(5, s).unwrap().to_string()).unwrap();
    let chain = g.psi(&[at("12"), at("14"), at("23"), at("45")]).unwrap();
    assert_eq!(g.chain_label(&chain.chain), "0̂<45<23|45<145|23<12345");
    let labels: Vec<String> = chain.labels.iter().map(|&a| l.label(a)).collect();
    assert_eq!(labels, ["45", "23", "14", "12"]);
    let nested = g.theta(&chain).unwrap();
    let members: Vec<String> = nested.members.iter().map(|&x| l.label(x)).collect();
    assert_eq!(members, ["23", "45", "145", "12345"]);
    let phi: Vec<String> = nested.phi_image.iter().map(|&x| l.label(x)).collect();
    assert_eq!(phi, ["23", "45", "14", "12"]);
}

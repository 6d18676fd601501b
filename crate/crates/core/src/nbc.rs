//! Geometric lattices with an ordered atom set: broken circuits, no broken
//! circuit bases, decreasing chains of the minimum-atom labelling, proper
//! maximal nested sets and the maps connecting them.
//!
//! Atom sets are handled internally as `u64` masks whose bit `i` stands for
//! the `i`-th atom in the chosen order, so `trailing_zeros` is the
//! order-minimum.

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use serde::Serialize;

use crate::complex::maximal_nested_sets;
use crate::error::{Error, Result};
use crate::homology::top_cycle_basis;
use crate::lattice::{BuildingSet, FiniteLattice, Payload};
use crate::linalg::{dense_rank, Rationals};
use crate::tree::{binary_trees, enumerate_tn, RootedTreeType};

/// A geometric lattice together with a total order on its atoms.
#[derive(Debug, Clone)]
pub struct GeometricLattice<P> {
    lattice: FiniteLattice<P>,
    omega: Vec<usize>,
    position: HashMap<usize, usize>,
    atom_mask: Vec<u64>,
    minimal: BuildingSet,
    rank: usize,
}

/// A maximal chain `0̂ = c_0 < c_1 < ... < c_r = 1̂` with its labels
/// `λ(c_i > c_{i-1})`, each the order-minimal atom below `c_i` but not
/// below `c_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledChain {
    pub chain: Vec<usize>,
    pub labels: Vec<usize>,
}

/// A maximal nested set of the unreduced minimal nested set complex
/// together with the minimal atoms below its members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProperMaximalNestedSet {
    pub members: Vec<usize>,
    pub phi_image: Vec<usize>,
}

/// Outcome of checking the nbc / decreasing chain / proper nested set
/// correspondences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub nbc_count: usize,
    pub dc_count: usize,
    pub pn_count: usize,
    pub psi_bijective: bool,
    pub theta_bijective: bool,
    pub composite_identity: bool,
    pub counterexamples: Vec<String>,
    pub holds: bool,
}

impl<P: Payload> GeometricLattice<P> {
    /// Certifies that `lattice` is geometric (atomic and semimodular) and
    /// attaches the atom order `omega` (element indices of the atoms, first
    /// is smallest). `None` uses the lattice's index order on atoms.
    pub fn new(lattice: FiniteLattice<P>, omega: Option<Vec<usize>>) -> Result<Self> {
        lattice.require_lattice("geometric lattice operations")?;
        let atoms = lattice.atoms().to_vec();
        if atoms.len() > 64 {
            return Err(Error::SizeCap {
                what: "atom count",
                value: atoms.len(),
                cap: 64,
            });
        }
        let omega = omega.unwrap_or_else(|| atoms.clone());
        let as_set: BTreeSet<usize> = omega.iter().copied().collect();
        if omega.len() != atoms.len() || as_set != atoms.iter().copied().collect() {
            return Err(Error::InvalidArgument(
                "the atom order must list every atom exactly once".into(),
            ));
        }
        let position: HashMap<usize, usize> =
            omega.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let atom_mask: Vec<u64> = (0..lattice.len())
            .map(|x| {
                omega
                    .iter()
                    .enumerate()
                    .filter(|&(_, &a)| lattice.leq(a, x))
                    .fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect();
        if !lattice.is_graded() {
            return Err(Error::Unsupported("lattice is not graded, hence not geometric".into()));
        }
        for x in 0..lattice.len() {
            let join = lattice.join_all(bits(atom_mask[x]).map(|i| omega[i]));
            if join != x {
                return Err(Error::Unsupported(format!(
                    "{} is not a join of atoms; the lattice is not geometric",
                    lattice.label(x)
                )));
            }
        }
        for x in 0..lattice.len() {
            for y in x + 1..lattice.len() {
                let lhs = lattice.rank(x) + lattice.rank(y);
                let rhs = lattice.rank(lattice.join(x, y)) + lattice.rank(lattice.meet(x, y));
                if lhs < rhs {
                    return Err(Error::Unsupported(format!(
                        "rank is not semimodular at {} and {}",
                        lattice.label(x),
                        lattice.label(y)
                    )));
                }
            }
        }
        let minimal = BuildingSet::irreducibles(&lattice)?;
        let rank = lattice.rank(lattice.top().expect("lattice top"));
        Ok(GeometricLattice {
            lattice,
            omega,
            position,
            atom_mask,
            minimal,
            rank,
        })
    }

    pub fn lattice(&self) -> &FiniteLattice<P> {
        &self.lattice
    }

    /// Atoms in increasing order.
    pub fn omega(&self) -> &[usize] {
        &self.omega
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn minimal_building_set(&self) -> &BuildingSet {
        &self.minimal
    }

    fn mask_of(&self, atoms: &[usize]) -> Result<u64> {
        let mut m = 0u64;
        for a in atoms {
            let pos = self.position.get(a).ok_or_else(|| {
                Error::InvalidArgument(format!("element {a} is not an atom"))
            })?;
            if m >> pos & 1 == 1 {
                return Err(Error::InvalidArgument("repeated atom".into()));
            }
            m |= 1 << pos;
        }
        Ok(m)
    }

    fn atoms_of(&self, mask: u64) -> Vec<usize> {
        bits(mask).map(|i| self.omega[i]).collect()
    }

    fn mask_rank(&self, mask: u64) -> usize {
        self.lattice
            .rank(self.lattice.join_all(bits(mask).map(|i| self.omega[i])))
    }

    fn mask_independent(&self, mask: u64) -> bool {
        self.mask_rank(mask) == mask.count_ones() as usize
    }

    /// Whether the atom list is a basis: `r` distinct independent atoms.
    pub fn is_basis(&self, atoms: &[usize]) -> bool {
        atoms.len() == self.rank
            && self
                .mask_of(atoms)
                .is_ok_and(|m| self.mask_independent(m))
    }

    /// `λ(upper > lower)`: the smallest atom below `upper` but not `lower`.
    pub fn label(&self, upper: usize, lower: usize) -> Option<usize> {
        let diff = self.atom_mask[upper] & !self.atom_mask[lower];
        (diff != 0).then(|| self.omega[diff.trailing_zeros() as usize])
    }

    fn circuit_masks(&self) -> Vec<u64> {
        let n = self.omega.len();
        let mut out = Vec::new();
        for size in 2..=(self.rank + 1).min(n) {
            for combo in (0..n).combinations(size) {
                let m = combo.iter().fold(0u64, |m, &i| m | 1 << i);
                if self.mask_rank(m) < size
                    && combo.iter().all(|&i| self.mask_independent(m & !(1 << i)))
                {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Circuits (minimal dependent atom sets) and broken circuits (each
    /// circuit minus its smallest atom), as atom lists in increasing order.
    pub fn circuits_and_broken_circuits(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let circuits = self.circuit_masks();
        let broken = circuits.iter().map(|&m| m & (m - 1)).collect::<Vec<_>>();
        (
            circuits.iter().map(|&m| self.atoms_of(m)).collect(),
            broken.iter().map(|&m| self.atoms_of(m)).collect(),
        )
    }

    /// Bases containing no broken circuit, each in increasing atom order.
    pub fn nbc_bases(&self) -> Vec<Vec<usize>> {
        let broken: Vec<u64> = self.circuit_masks().iter().map(|&m| m & (m - 1)).collect();
        (0..self.omega.len())
            .combinations(self.rank)
            .map(|combo| combo.iter().fold(0u64, |m, &i| m | 1 << i))
            .filter(|&m| self.mask_independent(m) && !broken.iter().any(|&b| m & b == b))
            .map(|m| self.atoms_of(m))
            .collect()
    }

    /// Labels a maximal chain `0̂ < c_1 < ... < 1̂` after checking that every
    /// step is a cover relation.
    pub fn labeled_chain(&self, chain: &[usize]) -> Result<LabeledChain> {
        let l = &self.lattice;
        let ok_ends = chain.first() == Some(&l.bottom()) && chain.last() == l.top().as_ref();
        if !ok_ends || chain.len() != self.rank + 1 {
            return Err(Error::InvalidArgument(
                "not a maximal chain from the bottom to the top".into(),
            ));
        }
        let mut labels = Vec::with_capacity(self.rank);
        for w in chain.windows(2) {
            if !(l.lt(w[0], w[1]) && l.rank(w[1]) == l.rank(w[0]) + 1) {
                return Err(Error::InvalidArgument(format!(
                    "{} does not cover {}",
                    l.label(w[1]),
                    l.label(w[0])
                )));
            }
            labels.push(self.label(w[1], w[0]).expect("cover adds an atom"));
        }
        Ok(LabeledChain {
            chain: chain.to_vec(),
            labels,
        })
    }

    fn is_decreasing(&self, chain: &LabeledChain) -> bool {
        chain
            .labels
            .windows(2)
            .all(|w| self.position[&w[0]] > self.position[&w[1]])
    }

    /// All maximal chains from the bottom to the top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        self.chains_where(|_, _| true)
    }

    fn chains_where(&self, keep: impl Fn(Option<usize>, usize) -> bool) -> Vec<Vec<usize>> {
        let l = &self.lattice;
        let top = l.top().expect("lattice top");
        let covers: Vec<Vec<usize>> = (0..l.len())
            .map(|x| {
                l.up_set(x)
                    .ones()
                    .filter(|&y| l.rank(y) == l.rank(x) + 1)
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut stack = vec![(vec![l.bottom()], None::<usize>)];
        while let Some((chain, last_label)) = stack.pop() {
            let x = *chain.last().unwrap();
            if x == top {
                out.push(chain);
                continue;
            }
            for &y in covers[x].iter().rev() {
                let lab = self.position[&self.label(y, x).unwrap()];
                if keep(last_label, lab) {
                    let mut next = chain.clone();
                    next.push(y);
                    stack.push((next, Some(lab)));
                }
            }
        }
        out.sort();
        out
    }

    /// Maximal chains whose label sequence strictly decreases.
    pub fn decreasing_chains(&self) -> Vec<LabeledChain> {
        self.chains_where(|prev, lab| prev.is_none_or(|p| lab < p))
            .iter()
            .map(|c| self.labeled_chain(c).expect("enumerated chains are maximal"))
            .collect()
    }

    /// `Ψ`: the chain of joins `a_r`, `a_r ∨ a_{r-1}`, ... of a basis taken
    /// from its largest atom down.
    pub fn psi(&self, basis: &[usize]) -> Result<LabeledChain> {
        if !self.is_basis(basis) {
            return Err(Error::InvalidArgument("atom set is not a basis".into()));
        }
        let mut sorted = basis.to_vec();
        sorted.sort_by_key(|a| self.position[a]);
        let mut chain = vec![self.lattice.bottom()];
        for &a in sorted.iter().rev() {
            let next = self.lattice.join(*chain.last().unwrap(), a);
            chain.push(next);
        }
        self.labeled_chain(&chain)
    }

    /// `Θ`: the union of the irreducible factor sets of the chain elements
    /// above the bottom, top included.
    pub fn theta(&self, chain: &LabeledChain) -> Result<ProperMaximalNestedSet> {
        let checked = self.labeled_chain(&chain.chain)?;
        if !self.is_decreasing(&checked) {
            return Err(Error::InvalidArgument(
                "chain labels are not strictly decreasing".into(),
            ));
        }
        let members: BTreeSet<usize> = checked.chain[1..]
            .iter()
            .flat_map(|&c| self.minimal.factors(&self.lattice, c))
            .collect();
        let members: Vec<usize> = members.into_iter().collect();
        let phi_image = self.phi(&members);
        Ok(ProperMaximalNestedSet { members, phi_image })
    }

    /// `φ` applied memberwise: the smallest atom below each member, in
    /// member order. Repeats are kept.
    pub fn phi(&self, members: &[usize]) -> Vec<usize> {
        members
            .iter()
            .map(|&s| self.omega[self.atom_mask[s].trailing_zeros() as usize])
            .collect()
    }

    pub fn is_proper(&self, members: &[usize]) -> bool {
        self.is_basis(&self.phi(members))
    }

    /// Maximal nested sets of the unreduced minimal nested set complex whose
    /// `φ`-image is a basis.
    pub fn proper_nested_sets(&self) -> Result<Vec<ProperMaximalNestedSet>> {
        Ok(maximal_nested_sets(&self.lattice, &self.minimal, true)?
            .into_iter()
            .filter(|m| self.is_proper(m))
            .map(|members| {
                let phi_image = self.phi(&members);
                ProperMaximalNestedSet { members, phi_image }
            })
            .collect())
    }

    fn set_label(&self, xs: &[usize]) -> String {
        format!("{{{}}}", xs.iter().map(|&x| self.lattice.label(x)).join(","))
    }

    /// Renders a chain as `0̂<45<23|45<145|23<12345`.
    pub fn chain_label(&self, chain: &[usize]) -> String {
        chain.iter().map(|&x| self.lattice.label(x)).join("<")
    }

    /// Checks that `Ψ` and `Θ` are bijections onto the decreasing chains and
    /// proper nested sets, and that `Φ ∘ Θ ∘ Ψ` is the identity.
    pub fn verify_bijection_triangle(&self) -> Result<BijectionReport> {
        let nbc = self.nbc_bases();
        let dc: HashSet<LabeledChain> = self.decreasing_chains().into_iter().collect();
        let pn: HashSet<Vec<usize>> = self
            .proper_nested_sets()?
            .into_iter()
            .map(|p| p.members)
            .collect();
        let mut counterexamples = Vec::new();

        let mut psi_images = HashSet::new();
        let mut theta_images = HashSet::new();
        let mut composite_identity = true;
        let mut psi_into = true;
        let mut theta_into = true;
        for b in &nbc {
            let chain = self.psi(b)?;
            if !dc.contains(&chain) {
                psi_into = false;
                counterexamples.push(format!(
                    "Ψ{} = {} is not a decreasing chain",
                    self.set_label(b),
                    self.chain_label(&chain.chain)
                ));
                continue;
            }
            psi_images.insert(chain.clone());
            let nested = self.theta(&chain)?;
            if !pn.contains(&nested.members) {
                theta_into = false;
                counterexamples.push(format!(
                    "Θ({}) = {} is not a proper maximal nested set",
                    self.chain_label(&chain.chain),
                    self.set_label(&nested.members)
                ));
            }
            theta_images.insert(nested.members.clone());
            let mut back = nested.phi_image.clone();
            back.sort_by_key(|a| self.position[a]);
            if &back != b {
                composite_identity = false;
                counterexamples.push(format!(
                    "Φ∘Θ∘Ψ{} = {}",
                    self.set_label(b),
                    self.set_label(&back)
                ));
            }
        }
        for c in &dc {
            if let Ok(nested) = self.theta(c) {
                theta_images.insert(nested.members);
            }
        }
        let psi_bijective = psi_into && psi_images.len() == nbc.len() && psi_images.len() == dc.len();
        let theta_bijective = theta_into
            && dc.iter().all(|c| self.theta(c).is_ok_and(|t| pn.contains(&t.members)))
            && theta_images.len() == dc.len()
            && theta_images == pn;
        let holds = psi_bijective && theta_bijective && composite_identity;
        Ok(BijectionReport {
            nbc_count: nbc.len(),
            dc_count: dc.len(),
            pn_count: pn.len(),
            psi_bijective,
            theta_bijective,
            composite_identity,
            counterexamples,
            holds,
        })
    }

    /// The facet of the reduced minimal nested set complex supporting the
    /// maximal chain `c_1 < ... < c_{r-1}` of the proper part: the union of
    /// the factor sets of the chain elements.
    pub fn support_simplex(&self, chain: &[usize]) -> Result<Vec<usize>> {
        let l = &self.lattice;
        let mut full = vec![l.bottom()];
        full.extend_from_slice(chain);
        full.push(l.top().expect("lattice top"));
        self.labeled_chain(&full).map_err(|_| {
            Error::InvalidArgument("not a maximal chain of the proper part".into())
        })?;
        let members: BTreeSet<usize> = chain
            .iter()
            .flat_map(|&c| self.minimal.factors(l, c))
            .collect();
        Ok(members.into_iter().collect())
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Binary trees on `n` leaves in which the second smallest leaf labels of
/// the `n - 1` non-leaves are exactly `2..n`, each once.
pub fn admissible_trees(n: usize) -> Result<Vec<RootedTreeType>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "admissible trees need n >= 3, got {n}"
        )));
    }
    Ok(binary_trees(n)?
        .into_iter()
        .filter(is_admissible)
        .collect())
}

pub fn is_admissible(tree: &RootedTreeType) -> bool {
    if !tree.is_binary() {
        return false;
    }
    let mut seconds: Vec<u32> = tree
        .non_leaf_leafsets()
        .iter()
        .map(|s| s[1])
        .collect();
    seconds.sort_unstable();
    seconds.into_iter().eq(2..=tree.n() as u32)
}

/// Outcome of testing the admissible-tree cochains against top cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleBasisReport {
    pub n: usize,
    pub admissible: usize,
    pub expected: usize,
    pub cycles: usize,
    pub rank: usize,
    pub full_rank: bool,
}

/// Evaluates the characteristic cochains of the admissible facets of the
/// complex of trees on a basis of top cycles; they form a cohomology basis
/// exactly when this square matrix has full rank `(n - 1)!`.
pub fn verify_admissible_basis(n: usize) -> Result<AdmissibleBasisReport> {
    if !(3..=5).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "the admissible basis check runs for 3 <= n <= 5, got {n}"
        )));
    }
    let complex = enumerate_tn(n)?;
    let basis = top_cycle_basis(&complex);
    let position: HashMap<&[usize], usize> = basis
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();
    let trees = admissible_trees(n)?;
    let mut rows = Vec::with_capacity(trees.len());
    for t in &trees {
        let face = complex
            .indices_of(&t.vertex_labels())
            .ok_or_else(|| Error::Inconsistent(format!("{t} has a vertex outside the complex")))?;
        let &pos = position
            .get(face.as_slice())
            .ok_or_else(|| Error::Inconsistent(format!("{t} is not a top face")))?;
        rows.push(basis.cycles.iter().map(|c| c[pos].clone()).collect::<Vec<_>>());
    }
    let expected: usize = (1..n).product();
    let rank = dense_rank(&Rationals, rows);
    Ok(AdmissibleBasisReport {
        n,
        admissible: trees.len(),
        expected,
        cycles: basis.cycles.len(),
        rank,
        full_rank: rank == expected && trees.len() == expected && basis.cycles.len() == expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_boolean_lattice, build_k_equal_lattice, build_partition_lattice, SetPartition};

    fn pi(n: usize) -> GeometricLattice<SetPartition> {
        GeometricLattice::new(build_partition_lattice(n).unwrap(), None).unwrap()
    }

    fn atom(g: &GeometricLattice<SetPartition>, s: &str) -> usize {
        g.lattice().find_label(s).unwrap()
    }

    fn labels(g: &GeometricLattice<SetPartition>, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| g.lattice().label(x)).collect()
    }

    #[test]
    fn circuits_of_pi3() {
        let g = pi(3);
        let (c, b) = g.circuits_and_broken_circuits();
        assert_eq!(c.len(), 1);
        assert_eq!(labels(&g, &c[0]), ["12", "13", "23"]);
        assert_eq!(labels(&g, &b[0]), ["13", "23"]);
    }

    #[test]
    fn boolean_lattice_has_no_circuits() {
        let g = GeometricLattice::new(build_boolean_lattice(3).unwrap(), None).unwrap();
        let (c, b) = g.circuits_and_broken_circuits();
        assert!(c.is_empty() && b.is_empty());
        assert_eq!(g.nbc_bases().len(), 1);
        assert_eq!(g.decreasing_chains().len(), 1);
        assert_eq!(g.maximal_chains().len(), 6);
    }

    #[test]
    fn k_equal_lattice_is_rejected() {
        let l = build_k_equal_lattice(5, 3).unwrap();
        assert!(matches!(GeometricLattice::new(l, None), Err(Error::Unsupported(_))));
    }

    #[test]
    fn psi_small_cases() {
        let g = pi(4);
        let b = [atom(&g, "12"), atom(&g, "13"), atom(&g, "14")];
        let c = g.psi(&b).unwrap();
        assert_eq!(g.chain_label(&c.chain), "0̂<14<134<1234");
        assert!(g.psi(&b[..2]).is_err());

        let g = pi(3);
        let c = g.psi(&[atom(&g, "13"), atom(&g, "12")]).unwrap();
        assert_eq!(g.chain_label(&c.chain), "0̂<13<123");
    }

    #[test]
    fn theta_and_phi_small_cases() {
        let g = pi(4);
        let chain: Vec<usize> = ["0̂", "14", "134", "1234"].iter().map(|s| atom(&g, s)).collect();
        let c = g.labeled_chain(&chain).unwrap();
        let t = g.theta(&c).unwrap();
        assert_eq!(labels(&g, &t.members), ["14", "134", "1234"]);

        let s = [atom(&g, "12"), atom(&g, "34"), atom(&g, "1234")];
        assert_eq!(labels(&g, &g.phi(&s)), ["12", "34", "12"]);
        assert!(!g.is_proper(&s));

        // Increasing labels are rejected.
        let chain: Vec<usize> = ["0̂", "12", "123", "1234"].iter().map(|s| atom(&g, s)).collect();
        let c = g.labeled_chain(&chain).unwrap();
        assert!(g.theta(&c).is_err());
    }

    #[test]
    fn rank_one_phi() {
        let g = pi(2);
        let top = g.lattice().top().unwrap();
        assert_eq!(labels(&g, &g.phi(&[top])), ["12"]);
        assert!(g.is_proper(&[top]));
    }

    #[test]
    fn admissible_trees_for_three_leaves() {
        let trees: Vec<String> = admissible_trees(3).unwrap().iter().map(|t| t.to_string()).collect();
        assert_eq!(trees, ["((1,3),2)", "(1,(2,3))"]);
    }

    #[test]
    fn support_simplex_rejects_short_chains() {
        let g = pi(4);
        assert!(g.support_simplex(&[atom(&g, "12")]).is_err());
    }
}

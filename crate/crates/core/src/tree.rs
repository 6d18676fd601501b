//! Rooted trees with labelled leaves and the complexes they span: the
//! complex of trees, complexes of k-trees, and complexes of k-equal trees.
//!
//! A tree type is determined by the leaf sets of its non-root internal
//! vertices (its *fingerprint*), a laminar family of subsets of `{1..n}`.
//! Faces of every tree complex are identified through that family, so
//! contracting an internal edge is the same as deleting one set.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::complex::{nested_set_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lattice::{build_partition_lattice, BuildingSet};
use crate::subset_label;

/// Largest leaf count accepted by the tree enumerations.
pub const MAX_LEAVES: usize = 13;

/// A node of a rooted tree; children are kept sorted by their smallest leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreeNode {
    Leaf(u32),
    Internal(Vec<TreeNode>),
}

impl TreeNode {
    fn mask(&self) -> u64 {
        match self {
            TreeNode::Leaf(l) => 1 << (l - 1),
            TreeNode::Internal(ch) => ch.iter().fold(0, |m, c| m | c.mask()),
        }
    }

    fn min_leaf(&self) -> u32 {
        self.mask().trailing_zeros() + 1
    }

    fn fmt_into(&self, out: &mut String) {
        match self {
            TreeNode::Leaf(l) => out.push_str(&l.to_string()),
            TreeNode::Internal(ch) => {
                out.push('(');
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    c.fmt_into(out);
                }
                out.push(')');
            }
        }
    }

    fn visit_internal(&self, is_root: bool, f: &mut impl FnMut(&TreeNode, bool)) {
        if let TreeNode::Internal(ch) = self {
            f(self, is_root);
            for c in ch {
                c.visit_internal(false, f);
            }
        }
    }
}

/// Combinatorial type of a rooted tree whose `n` leaves carry the labels
/// `1..n` and whose non-leaves all have outdegree at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTreeType {
    n: usize,
    root: TreeNode,
}

fn elements(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_of(n: usize, set: &[u32]) -> Result<u64> {
    let mut m = 0u64;
    for &e in set {
        if e == 0 || e as usize > n {
            return Err(Error::InvalidFace(format!("leaf {e} is not in 1..={n}")));
        }
        m |= 1 << (e - 1);
    }
    Ok(m)
}

impl RootedTreeType {
    /// The tree whose non-root internal vertices have exactly the given leaf
    /// sets: each set hangs below the smallest set strictly containing it (or
    /// the root), and leaves not covered by a smaller set are attached
    /// directly.
    pub fn from_nested(n: usize, sets: &[Vec<u32>]) -> Result<Self> {
        if !(1..=63).contains(&n) {
            return Err(Error::SizeCap {
                what: "leaf count",
                value: n,
                cap: 63,
            });
        }
        let masks = sets
            .iter()
            .map(|s| mask_of(n, s))
            .collect::<Result<Vec<u64>>>()?;
        Self::from_masks(n, &masks)
    }

    pub(crate) fn from_masks(n: usize, masks: &[u64]) -> Result<Self> {
        let full = full_mask(n);
        let mut masks: Vec<u64> = masks.to_vec();
        masks.sort_unstable();
        masks.dedup();
        for &m in &masks {
            if m.count_ones() < 2 || m & !full != 0 || m == full {
                return Err(Error::InvalidFace(format!(
                    "{{{}}} is not a proper subset of size at least two",
                    subset_label(elements(m), n)
                )));
            }
        }
        for (i, &a) in masks.iter().enumerate() {
            for &b in &masks[i + 1..] {
                let disjoint = a & b == 0;
                let nested = a & b == a || a & b == b;
                if !disjoint && !nested {
                    return Err(Error::InvalidFace(format!(
                        "{{{}}} and {{{}}} overlap without nesting",
                        subset_label(elements(a), n),
                        subset_label(elements(b), n)
                    )));
                }
            }
        }
        fn build(mask: u64, masks: &[u64]) -> TreeNode {
            let inside: Vec<u64> = masks
                .iter()
                .copied()
                .filter(|&m| m != mask && m & mask == m)
                .collect();
            let maximal: Vec<u64> = inside
                .iter()
                .copied()
                .filter(|&m| !inside.iter().any(|&o| o != m && m & o == m))
                .collect();
            let covered = maximal.iter().fold(0, |a, m| a | m);
            let mut children: Vec<TreeNode> = maximal.iter().map(|&m| build(m, &inside)).collect();
            children.extend(elements(mask & !covered).into_iter().map(TreeNode::Leaf));
            children.sort_by_key(TreeNode::min_leaf);
            TreeNode::Internal(children)
        }
        Ok(RootedTreeType {
            n,
            root: build(full, &masks),
        })
    }

    /// The tree with a single non-leaf.
    pub fn star(n: usize) -> Result<Self> {
        Self::from_masks(n, &[])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    /// Leaf sets of the internal vertices other than the root, as bit masks.
    pub fn fingerprint(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.root.visit_internal(true, &mut |node, is_root| {
            if !is_root {
                out.push(node.mask());
            }
        });
        out.sort_unstable();
        out
    }

    /// The nested set of the tree: leaf sets below the non-root internal
    /// vertices, each sorted, in lexicographic order.
    pub fn to_nested(&self) -> Vec<Vec<u32>> {
        let mut sets: Vec<Vec<u32>> = self.fingerprint().into_iter().map(elements).collect();
        sets.sort();
        sets
    }

    /// Vertex labels of the simplex this tree spans in a tree complex.
    pub fn vertex_labels(&self) -> Vec<String> {
        self.to_nested()
            .into_iter()
            .map(|s| subset_label(s, self.n))
            .collect()
    }

    /// Leaf sets of every non-leaf, root included.
    pub fn non_leaf_leafsets(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.root
            .visit_internal(true, &mut |node, _| out.push(elements(node.mask())));
        out
    }

    /// Outdegrees of all non-leaves.
    pub fn outdegrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.root.visit_internal(true, &mut |node, _| {
            if let TreeNode::Internal(ch) = node {
                out.push(ch.len());
            }
        });
        out
    }

    pub fn is_binary(&self) -> bool {
        self.outdegrees().iter().all(|&d| d == 2)
    }

    /// Contracts the internal edge above the vertex with leaf set `set`.
    pub fn contract(&self, set: &[u32]) -> Result<Self> {
        let m = mask_of(self.n, set)?;
        let fp = self.fingerprint();
        if !fp.contains(&m) {
            return Err(Error::InvalidArgument(format!(
                "no internal vertex has leaf set {{{}}}",
                subset_label(elements(m), self.n)
            )));
        }
        let rest: Vec<u64> = fp.into_iter().filter(|&x| x != m).collect();
        Self::from_masks(self.n, &rest)
    }
}

impl fmt::Display for RootedTreeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.root.fmt_into(&mut s);
        f.write_str(&s)
    }
}

impl FromStr for RootedTreeType {
    type Err = Error;

    /// Parses nested parentheses such as `((1,2),(3,4))`; the outermost
    /// group is the root. Leaves must be exactly `1..n`.
    fn from_str(s: &str) -> Result<Self> {
        struct Parser<'a> {
            bytes: &'a [u8],
            pos: usize,
        }
        impl Parser<'_> {
            fn skip_ws(&mut self) {
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                    self.pos += 1;
                }
            }
            fn err(&self, what: &str) -> Error {
                Error::Parse(format!("{what} at byte {}", self.pos))
            }
            fn node(&mut self) -> Result<TreeNode> {
                self.skip_ws();
                match self.bytes.get(self.pos) {
                    Some(b'(') => {
                        self.pos += 1;
                        let mut children = vec![self.node()?];
                        loop {
                            self.skip_ws();
                            match self.bytes.get(self.pos) {
                                Some(b',') => {
                                    self.pos += 1;
                                    children.push(self.node()?);
                                }
                                Some(b')') => {
                                    self.pos += 1;
                                    break;
                                }
                                _ => return Err(self.err("expected ',' or ')'")),
                            }
                        }
                        if children.len() < 2 {
                            return Err(self.err("non-leaf with outdegree below two"));
                        }
                        Ok(TreeNode::Internal(children))
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let start = self.pos;
                        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                            self.pos += 1;
                        }
                        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                        text.parse::<u32>()
                            .map(TreeNode::Leaf)
                            .map_err(|_| self.err("bad leaf label"))
                    }
                    _ => Err(self.err("expected '(' or a leaf label")),
                }
            }
        }
        let mut p = Parser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let root = p.node()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        if !matches!(root, TreeNode::Internal(_)) {
            return Err(Error::Parse("a tree needs at least one non-leaf".into()));
        }
        let mut leaves = Vec::new();
        fn collect(node: &TreeNode, out: &mut Vec<u32>) {
            match node {
                TreeNode::Leaf(l) => out.push(*l),
                TreeNode::Internal(ch) => ch.iter().for_each(|c| collect(c, out)),
            }
        }
        collect(&root, &mut leaves);
        let n = leaves.len();
        let distinct: BTreeSet<u32> = leaves.iter().copied().collect();
        if n > 63 || distinct.len() != n || distinct.iter().copied().ne(1..=n as u32) {
            return Err(Error::Parse(format!("leaves must be exactly 1..{n}")));
        }
        let mut masks = Vec::new();
        root.visit_internal(true, &mut |node, is_root| {
            if !is_root {
                masks.push(node.mask());
            }
        });
        Self::from_masks(n, &masks)
    }
}

/// Nonempty proper submasks of `mask` that contain its lowest bit.
fn splits_with_lowest(mask: u64) -> impl Iterator<Item = u64> {
    let low = mask & mask.wrapping_neg();
    let rest = mask ^ low;
    let mut sub = rest;
    let mut done = false;
    std::iter::from_fn(move || {
        while !done {
            let candidate = sub | low;
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & rest;
            }
            if candidate != mask {
                return Some(candidate);
            }
        }
        None
    })
}

/// Cartesian product of fingerprint lists, concatenated.
fn combine(parts: &[Vec<Vec<u64>>]) -> Vec<Vec<u64>> {
    parts.iter().fold(vec![Vec::new()], |acc, options| {
        acc.iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(o);
                    v
                })
            })
            .collect()
    })
}

/// Fingerprints of the binary-except-at-preleaves subtrees on `mask`
/// (internal vertices strictly below the subtree root). Preleaves carry
/// exactly `k` leaves; `k = 2` gives all binary trees.
fn k_equal_subtrees(mask: u64, k: u32) -> Vec<Vec<u64>> {
    let size = mask.count_ones();
    let mut out = Vec::new();
    if size == k {
        out.push(Vec::new());
    }
    let part = |m: u64| -> Option<Vec<Vec<u64>>> {
        match m.count_ones() {
            1 => Some(vec![Vec::new()]),
            c if c >= k => Some(
                k_equal_subtrees(m, k)
                    .into_iter()
                    .map(|mut fp| {
                        fp.push(m);
                        fp
                    })
                    .collect(),
            ),
            _ => None,
        }
    };
    for a in splits_with_lowest(mask) {
        let b = mask ^ a;
        if a.count_ones() == 1 && b.count_ones() == 1 {
            continue;
        }
        if let (Some(pa), Some(pb)) = (part(a), part(b)) {
            out.extend(combine(&[pa, pb]));
        }
    }
    out
}

/// Ways to split `mask` into exactly `blocks` blocks, each of size
/// congruent to 1 mod `k`, listed with the block containing the lowest
/// remaining element first.
fn congruent_block_splits(mask: u64, blocks: usize, k: u32) -> Vec<Vec<u64>> {
    if blocks == 0 {
        return if mask == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if mask == 0 {
        return Vec::new();
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask ^ low;
    let mut out = Vec::new();
    let mut sub = rest;
    loop {
        let block = sub | low;
        if block.count_ones() % k == 1 % k {
            for mut tail in congruent_block_splits(mask ^ block, blocks - 1, k) {
                tail.insert(0, block);
                out.push(tail);
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

/// Fingerprints of subtrees on `mask` in which every non-leaf has
/// outdegree exactly `k + 1` (internal vertices strictly below the root).
fn hanlon_subtrees(mask: u64, k: u32) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for split in congruent_block_splits(mask, k as usize + 1, k) {
        let parts: Vec<Vec<Vec<u64>>> = split
            .iter()
            .map(|&b| {
                if b.count_ones() == 1 {
                    vec![Vec::new()]
                } else {
                    hanlon_subtrees(b, k)
                        .into_iter()
                        .map(|mut fp| {
                            fp.push(b);
                            fp
                        })
                        .collect()
                }
            })
            .collect();
        out.extend(combine(&parts));
    }
    out
}

fn complex_from_fingerprints(n: usize, fps: &[Vec<u64>]) -> SimplicialComplex {
    SimplicialComplex::from_facets(
        fps.iter()
            .map(|fp| fp.iter().map(|&m| subset_label(elements(m), n)).collect::<Vec<_>>()),
    )
}

fn check_leaves(n: usize) -> Result<()> {
    if n > MAX_LEAVES {
        Err(Error::SizeCap {
            what: "leaf count",
            value: n,
            cap: MAX_LEAVES,
        })
    } else {
        Ok(())
    }
}

/// All binary rooted tree types on `n` leaves.
pub fn binary_trees(n: usize) -> Result<Vec<RootedTreeType>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("binary trees need n >= 2, got {n}")));
    }
    check_leaves(n)?;
    k_equal_subtrees(full_mask(n), 2)
        .iter()
        .map(|fp| RootedTreeType::from_masks(n, fp))
        .collect()
}

/// The complex of trees: facets are binary rooted trees on `n` leaves,
/// vertices are trees with one internal edge (identified with their
/// internal leaf set).
pub fn enumerate_tn(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "the complex of trees needs n >= 3, got {n}"
        )));
    }
    check_leaves(n)?;
    Ok(complex_from_fingerprints(n, &k_equal_subtrees(full_mask(n), 2)))
}

/// Facet trees of the complex of k-equal trees: binary except at preleaves,
/// which are k-ary.
pub fn k_equal_facet_trees(n: usize, k: usize) -> Result<Vec<RootedTreeType>> {
    check_k_equal(n, k)?;
    k_equal_subtrees(full_mask(n), k as u32)
        .iter()
        .map(|fp| RootedTreeType::from_masks(n, fp))
        .collect()
}

fn check_k_equal(n: usize, k: usize) -> Result<()> {
    if k < 2 || n <= k {
        return Err(Error::InvalidParameter(format!(
            "k-equal trees need n > k >= 2, got n = {n}, k = {k}"
        )));
    }
    check_leaves(n)
}

/// The complex of k-equal trees.
pub fn enumerate_k_equal_trees(n: usize, k: usize) -> Result<SimplicialComplex> {
    check_k_equal(n, k)?;
    Ok(complex_from_fingerprints(
        n,
        &k_equal_subtrees(full_mask(n), k as u32),
    ))
}

/// Number of leaves `(n - 1) k + 1` of the trees in the complex of k-trees.
pub fn hanlon_leaf_count(n: usize, k: usize) -> usize {
    (n - 1) * k + 1
}

/// Facet trees of the complex of k-trees: every non-leaf has outdegree
/// exactly `k + 1`.
pub fn hanlon_facet_trees(n: usize, k: usize) -> Result<Vec<RootedTreeType>> {
    check_hanlon(n, k)?;
    let leaves = hanlon_leaf_count(n, k);
    hanlon_subtrees(full_mask(leaves), k as u32)
        .iter()
        .map(|fp| RootedTreeType::from_masks(leaves, fp))
        .collect()
}

fn check_hanlon(n: usize, k: usize) -> Result<()> {
    if n < 3 || k < 1 {
        return Err(Error::InvalidParameter(format!(
            "k-trees need n >= 3 and k >= 1, got n = {n}, k = {k}"
        )));
    }
    check_leaves(hanlon_leaf_count(n, k))
}

/// The complex of k-trees on `(n - 1) k + 1` leaves: faces are trees whose
/// outdegrees are all at least `k + 1` and congruent to 1 mod `k`, with at
/// least one internal edge. Maximal faces are the trees with all outdegrees
/// equal to `k + 1`.
pub fn enumerate_hanlon_k_trees(n: usize, k: usize) -> Result<SimplicialComplex> {
    check_hanlon(n, k)?;
    let leaves = hanlon_leaf_count(n, k);
    Ok(complex_from_fingerprints(
        leaves,
        &hanlon_subtrees(full_mask(leaves), k as u32),
    ))
}

/// Whether the complex of trees equals the reduced minimal nested set
/// complex of the partition lattice, vertex for vertex.
pub fn verify_tn_identity(n: usize) -> Result<bool> {
    if !(3..=6).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "the tree identity check runs for 3 <= n <= 6, got {n}"
        )));
    }
    let trees = enumerate_tn(n)?;
    let lattice = build_partition_lattice(n)?;
    let minimal = BuildingSet::irreducibles(&lattice)?;
    let nested = nested_set_complex(&lattice, &minimal, true)?;
    crate::complex::complexes_equal(&trees, &nested, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_factorial(mut m: usize) -> usize {
        let mut acc = 1;
        while m > 1 {
            acc *= m;
            m -= 2;
        }
        acc
    }

    #[test]
    fn to_nested_examples() {
        let star: RootedTreeType = "(1,2,3,4)".parse().unwrap();
        assert!(star.to_nested().is_empty());
        let caterpillar: RootedTreeType = "(((1,2),3),4)".parse().unwrap();
        assert_eq!(caterpillar.to_nested(), vec![vec![1, 2], vec![1, 2, 3]]);
        let cherries: RootedTreeType = "((1,2),(3,4))".parse().unwrap();
        assert_eq!(cherries.to_nested(), vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn nested_to_tree_examples() {
        assert_eq!(RootedTreeType::from_nested(4, &[]).unwrap().to_string(), "(1,2,3,4)");
        let t = RootedTreeType::from_nested(5, &[vec![2, 3], vec![4, 5], vec![1, 4, 5]]).unwrap();
        assert_eq!(t.to_string(), "((1,(4,5)),(2,3))");
        let t = RootedTreeType::from_nested(4, &[vec![1, 2]]).unwrap();
        assert_eq!(t.to_string(), "((1,2),3,4)");
    }

    #[test]
    fn non_nested_families_are_rejected() {
        assert!(matches!(
            RootedTreeType::from_nested(4, &[vec![1, 2], vec![2, 3]]),
            Err(Error::InvalidFace(_))
        ));
        assert!(RootedTreeType::from_nested(4, &[vec![1, 2, 3, 4]]).is_err());
        assert!(RootedTreeType::from_nested(4, &[vec![1]]).is_err());
        assert!(RootedTreeType::from_nested(4, &[vec![1, 5]]).is_err());
    }

    #[test]
    fn parse_and_display_are_canonical() {
        let t: RootedTreeType = "(4,(3,(2,1)))".parse().unwrap();
        assert_eq!(t.to_string(), "(((1,2),3),4)");
        assert!("((1,2),3,5)".parse::<RootedTreeType>().is_err());
        assert!("((1),2)".parse::<RootedTreeType>().is_err());
        assert!("(1,2".parse::<RootedTreeType>().is_err());
        assert!("1".parse::<RootedTreeType>().is_err());
    }

    #[test]
    fn binary_tree_counts() {
        for n in 2..=7 {
            assert_eq!(binary_trees(n).unwrap().len(), double_factorial(2 * n - 3), "n = {n}");
        }
    }

    #[test]
    fn small_tree_complexes() {
        let t3 = enumerate_tn(3).unwrap();
        assert_eq!(t3.facet_labels(), vec![vec!["12"], vec!["13"], vec!["23"]]);
        let t4 = enumerate_tn(4).unwrap();
        assert_eq!((t4.num_vertices(), t4.num_facets()), (10, 15));
        let t5 = enumerate_tn(5).unwrap();
        assert_eq!((t5.num_vertices(), t5.num_facets(), t5.dimension()), (25, 105, Some(2)));
        assert!(enumerate_tn(2).is_err());
    }

    #[test]
    fn hanlon_small_cases() {
        let t = enumerate_hanlon_k_trees(3, 2).unwrap();
        assert_eq!((t.num_vertices(), t.num_facets(), t.dimension()), (10, 10, Some(0)));
        for n in 4..=5 {
            assert_eq!(enumerate_hanlon_k_trees(n, 1).unwrap(), enumerate_tn(n).unwrap());
        }
        let t = enumerate_hanlon_k_trees(4, 2).unwrap();
        assert!(t.is_pure());
        assert_eq!(t.dimension(), Some(1));
        assert!(enumerate_hanlon_k_trees(2, 2).is_err());
    }

    #[test]
    fn k_equal_trees_with_k_two_are_binary() {
        for n in 4..=5 {
            assert_eq!(enumerate_k_equal_trees(n, 2).unwrap(), enumerate_tn(n).unwrap());
        }
    }

    #[test]
    fn k_equal_facets_of_t73() {
        let trees = k_equal_facet_trees(7, 3).unwrap();
        let dims: BTreeSet<usize> = trees.iter().map(|t| t.fingerprint().len() - 1).collect();
        assert_eq!(dims, BTreeSet::from([2, 3]));
        for t in &trees {
            for (set, deg) in t.non_leaf_leafsets().iter().zip(t.outdegrees()) {
                assert!(deg == 2 || (deg == 3 && set.len() == 3), "{t}");
            }
        }
    }

    #[test]
    fn contraction_deletes_one_set() {
        let t: RootedTreeType = "(((1,2),3),(4,5))".parse().unwrap();
        let c = t.contract(&[1, 2, 3]).unwrap();
        assert_eq!(c.to_string(), "((1,2),3,(4,5))");
        assert!(t.contract(&[1, 3]).is_err());
    }
}

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::subset_label;

/// Largest ground set accepted by the lattice builders unless a caller
/// passes an explicit cap.
pub const DEFAULT_SIZE_CAP: usize = 8;

/// A set partition of `{1..n}` in canonical form: every block sorted
/// ascending, blocks sorted by their minimum.
///
/// Partitions are ordered first by `n`, then lexicographically by their list
/// of non-singleton blocks. On atoms of the partition lattice this is the
/// lexicographic order on pairs `ij`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: u8,
    blocks: Vec<Vec<u8>>,
}

impl SetPartition {
    /// Builds a partition from arbitrary blocks, validating that they are
    /// nonempty, pairwise disjoint and cover `{1..n}`.
    pub fn new(n: usize, blocks: Vec<Vec<u8>>) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::SizeCap {
                what: "ground set size",
                value: n,
                cap: 63,
            });
        }
        let mut seen = vec![false; n + 1];
        let mut canon = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            block.sort_unstable();
            for &e in &block {
                let e = e as usize;
                if e == 0 || e > n {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} is not in 1..={n}"
                    )));
                }
                if seen[e] {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} appears in two blocks"
                    )));
                }
                seen[e] = true;
            }
            canon.push(block);
        }
        if let Some(missing) = (1..=n).find(|&e| !seen[e]) {
            return Err(Error::InvalidArgument(format!(
                "element {missing} is not covered"
            )));
        }
        canon.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition {
            n: n as u8,
            blocks: canon,
        })
    }

    /// The partition into singletons.
    pub fn finest(n: usize) -> Self {
        SetPartition {
            n: n as u8,
            blocks: (1..=n as u8).map(|e| vec![e]).collect(),
        }
    }

    /// The partition with the single block `{1..n}`.
    pub fn coarsest(n: usize) -> Self {
        SetPartition {
            n: n as u8,
            blocks: vec![(1..=n as u8).collect()],
        }
    }

    /// The partition whose only non-singleton block is `block`.
    pub fn with_block(n: usize, block: &[u8]) -> Result<Self> {
        let inside: HashSet<u8> = block.iter().copied().collect();
        let mut blocks = vec![block.to_vec()];
        blocks.extend((1..=n as u8).filter(|e| !inside.contains(e)).map(|e| vec![e]));
        Self::new(n, blocks)
    }

    /// Every partition of `{1..n}`, enumerated through restricted growth
    /// strings.
    pub fn all(n: usize) -> Vec<SetPartition> {
        fn grow(n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<SetPartition>) {
            if rgs.len() == n {
                let mut blocks: Vec<Vec<u8>> = vec![Vec::new(); max + 1];
                for (i, &b) in rgs.iter().enumerate() {
                    blocks[b].push(i as u8 + 1);
                }
                out.push(SetPartition {
                    n: n as u8,
                    blocks,
                });
                return;
            }
            let top = if rgs.is_empty() { 0 } else { max + 1 };
            for b in 0..=top {
                rgs.push(b);
                grow(n, rgs, max.max(b), out);
                rgs.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            grow(n, &mut Vec::with_capacity(n), 0, &mut out);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Rank in the partition lattice: `n` minus the number of blocks.
    pub fn rank(&self) -> usize {
        self.n as usize - self.blocks.len()
    }

    pub fn non_singleton_blocks(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.blocks.iter().filter(|b| b.len() > 1)
    }

    fn block_ids(&self) -> Vec<usize> {
        let mut ids = vec![0; self.n as usize + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &e in b {
                ids[e as usize] = i;
            }
        }
        ids
    }

    /// `self <= other` in reverse refinement order: every block of `self`
    /// lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        if self.n != other.n {
            return false;
        }
        let ids = other.block_ids();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&e| ids[e as usize] == ids[b[0] as usize]))
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &SetPartition) -> SetPartition {
        let n = self.n as usize;
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                let (a, c) = (find(&mut parent, w[0] as usize), find(&mut parent, w[1] as usize));
                if a != c {
                    parent[a.max(c)] = a.min(c);
                }
            }
        }
        let mut blocks: Vec<Vec<u8>> = Vec::new();
        let mut slot = vec![usize::MAX; n + 1];
        for e in 1..=n {
            let r = find(&mut parent, e);
            if slot[r] == usize::MAX {
                slot[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[r]].push(e as u8);
        }
        SetPartition {
            n: self.n,
            blocks,
        }
    }

    /// Coarsest common refinement (blockwise intersections).
    pub fn meet(&self, other: &SetPartition) -> SetPartition {
        let ids = other.block_ids();
        let mut blocks = Vec::new();
        for b in &self.blocks {
            let mut groups: Vec<(usize, Vec<u8>)> = Vec::new();
            for &e in b {
                match groups.iter_mut().find(|(id, _)| *id == ids[e as usize]) {
                    Some((_, g)) => g.push(e),
                    None => groups.push((ids[e as usize], vec![e])),
                }
            }
            blocks.extend(groups.into_iter().map(|(_, g)| g));
        }
        blocks.sort_unstable_by_key(|b: &Vec<u8>| b[0]);
        SetPartition {
            n: self.n,
            blocks,
        }
    }

    /// Parses the label format produced by `Display` (`"145|23"`, `"0̂"`, or
    /// comma separated blocks for `n > 9`).
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0̂" {
            return Ok(Self::finest(n));
        }
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let block: Vec<u8> = if n <= 9 {
                part.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as u8)
                            .ok_or_else(|| Error::Parse(format!("bad element {c:?} in {s:?}")))
                    })
                    .collect::<Result<_>>()?
            } else {
                part.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u8>()
                            .map_err(|_| Error::Parse(format!("bad element {t:?} in {s:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            blocks.push(block);
        }
        let listed: BTreeSet<u8> = blocks.iter().flatten().copied().collect();
        blocks.extend((1..=n as u8).filter(|e| !listed.contains(e)).map(|e| vec![e]));
        Self::new(n, blocks)
    }
}

impl Ord for SetPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            self.non_singleton_blocks()
                .cmp(other.non_singleton_blocks())
        })
    }
}

impl PartialOrd for SetPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Non-singleton blocks joined by `|`; the partition into singletons
/// prints as `0̂`.
impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n as usize;
        let parts: Vec<String> = self
            .non_singleton_blocks()
            .map(|b| subset_label(b.iter().map(|&e| e as u32), n))
            .collect();
        if parts.is_empty() {
            f.write_str("0̂")
        } else {
            f.write_str(&parts.join("|"))
        }
    }
}

fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        Err(Error::SizeCap { what, value, cap })
    } else {
        Ok(())
    }
}

/// The partition lattice of `{1..n}` under reverse refinement.
pub fn build_partition_lattice(n: usize) -> Result<FiniteLattice<SetPartition>> {
    build_partition_lattice_capped(n, DEFAULT_SIZE_CAP)
}

pub fn build_partition_lattice_capped(n: usize, cap: usize) -> Result<FiniteLattice<SetPartition>> {
    if n < 2 {
        return Err(Error::SizeCap {
            what: "n",
            value: n,
            cap,
        });
    }
    check_cap("n", n, cap)?;
    FiniteLattice::from_order(SetPartition::all(n), |a, b| a.refines(b), true)
}

/// The sublattice of the partition lattice join-generated by the partitions
/// with exactly one non-singleton block, of size `k`, together with the
/// partition into singletons.
pub fn build_k_equal_lattice(n: usize, k: usize) -> Result<FiniteLattice<SetPartition>> {
    if k < 2 || n <= k {
        return Err(Error::InvalidParameter(format!(
            "the k-equal lattice needs n > k >= 2, got n = {n}, k = {k}"
        )));
    }
    check_cap("n", n, DEFAULT_SIZE_CAP)?;
    let generators: Vec<SetPartition> = itertools::Itertools::combinations(1..=n as u8, k)
        .map(|block| SetPartition::with_block(n, &block))
        .collect::<Result<_>>()?;
    let mut closed: HashSet<SetPartition> = generators.iter().cloned().collect();
    let mut frontier: Vec<SetPartition> = generators.clone();
    while let Some(p) = frontier.pop() {
        for g in &generators {
            let j = p.join(g);
            if closed.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    closed.insert(SetPartition::finest(n));
    FiniteLattice::from_order(closed.into_iter().collect(), |a, b| a.refines(b), true)
}

/// The induced subposet of the partition lattice on partitions whose block
/// sizes are all congruent to 1 mod `k`. Join and meet tables are not built:
/// the result is generally not a lattice.
pub fn build_block_size_poset(n: usize, k: usize) -> Result<FiniteLattice<SetPartition>> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!(
            "the block-size poset needs N >= 2 and k >= 1, got N = {n}, k = {k}"
        )));
    }
    check_cap("N", n, DEFAULT_SIZE_CAP)?;
    let elements: Vec<SetPartition> = SetPartition::all(n)
        .into_iter()
        .filter(|p| p.blocks.iter().all(|b| b.len() % k == 1 % k))
        .collect();
    FiniteLattice::from_order(elements, |a, b| a.refines(b), false)
}

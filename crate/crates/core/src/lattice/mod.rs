//! Finite lattices and posets materialized as explicit tables.

mod boolean;
mod building;
mod partition;

use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use boolean::{build_boolean_lattice, Subset};
pub use building::{factors, irreducibles, is_building_set, BuildingSet};
pub use partition::{
    build_block_size_poset, build_k_equal_lattice, build_partition_lattice,
    build_partition_lattice_capped, SetPartition, DEFAULT_SIZE_CAP,
};

/// Element payloads usable in a [`FiniteLattice`].
pub trait Payload: Clone + Ord + Hash + Display {}
impl<T: Clone + Ord + Hash + Display> Payload for T {}

/// A finite poset with a least element, stored with its full order relation.
///
/// Elements are indexed in a fixed linear extension: by rank, then by
/// payload. When built as a lattice the join and meet tables are present;
/// posets built with `with_tables = false` carry only the order.
#[derive(Debug, Clone)]
pub struct FiniteLattice<P> {
    elements: Vec<P>,
    index: HashMap<P, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    rank: Vec<usize>,
    bottom: usize,
    top: Option<usize>,
    atoms: Vec<usize>,
    join: Option<Vec<u16>>,
    meet: Option<Vec<u16>>,
}

impl<P: Payload> FiniteLattice<P> {
    /// Materializes the poset on `payloads` ordered by `leq`.
    ///
    /// Fails when `leq` is not a partial order, when there is no least
    /// element, or (with `with_tables`) when some pair lacks a join or meet.
    pub fn from_order<F>(payloads: Vec<P>, leq: F, with_tables: bool) -> Result<Self>
    where
        F: Fn(&P, &P) -> bool,
    {
        let m = payloads.len();
        if m == 0 {
            return Err(Error::InvalidArgument("empty poset".into()));
        }
        if m > u16::MAX as usize {
            return Err(Error::SizeCap {
                what: "poset size",
                value: m,
                cap: u16::MAX as usize,
            });
        }
        let mut le = vec![FixedBitSet::with_capacity(m); m];
        for (i, a) in payloads.iter().enumerate() {
            for (j, b) in payloads.iter().enumerate() {
                if i == j || leq(a, b) {
                    le[i].insert(j);
                }
            }
        }
        for i in 0..m {
            for j in le[i].ones() {
                if i != j && le[j].contains(i) {
                    return Err(Error::InvalidArgument(format!(
                        "order is not antisymmetric at {} and {}",
                        payloads[i], payloads[j]
                    )));
                }
            }
        }
        // Longest-chain rank; processing by number of lower elements is a
        // linear extension for any partial order.
        let below_count: Vec<usize> = (0..m)
            .map(|j| (0..m).filter(|&i| le[i].contains(j)).count())
            .collect();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| below_count[i]);
        let mut rank = vec![0usize; m];
        for (pos, &j) in order.iter().enumerate() {
            for &i in &order[..pos] {
                if le[i].contains(j) {
                    rank[j] = rank[j].max(rank[i] + 1);
                }
            }
        }
        for i in 0..m {
            // Transitivity: everything above an upper element is above i.
            for j in le[i].ones() {
                if !le[j].is_subset(&le[i]) {
                    return Err(Error::InvalidArgument(format!(
                        "order is not transitive through {}",
                        payloads[j]
                    )));
                }
            }
        }

        let mut perm: Vec<usize> = (0..m).collect();
        perm.sort_by(|&a, &b| rank[a].cmp(&rank[b]).then_with(|| payloads[a].cmp(&payloads[b])));
        let mut new_of = vec![0usize; m];
        for (new, &old) in perm.iter().enumerate() {
            new_of[old] = new;
        }
        let elements: Vec<P> = perm.iter().map(|&o| payloads[o].clone()).collect();
        let rank: Vec<usize> = perm.iter().map(|&o| rank[o]).collect();
        let mut up = vec![FixedBitSet::with_capacity(m); m];
        let mut down = vec![FixedBitSet::with_capacity(m); m];
        for (old_i, row) in le.iter().enumerate() {
            let i = new_of[old_i];
            for old_j in row.ones() {
                let j = new_of[old_j];
                up[i].insert(j);
                down[j].insert(i);
            }
        }
        let index: HashMap<P, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        if index.len() != m {
            return Err(Error::InvalidArgument("duplicate elements".into()));
        }
        let bottom = (0..m)
            .find(|&i| up[i].count_ones(..) == m)
            .ok_or_else(|| Error::InvalidArgument("poset has no least element".into()))?;
        let top = (0..m).find(|&i| down[i].count_ones(..) == m);
        let atoms: Vec<usize> = (0..m)
            .filter(|&i| i != bottom && down[i].count_ones(..) == 2)
            .collect();

        let mut lattice = FiniteLattice {
            elements,
            index,
            up,
            down,
            rank,
            bottom,
            top,
            atoms,
            join: None,
            meet: None,
        };
        if with_tables {
            lattice.build_tables()?;
        }
        Ok(lattice)
    }

    fn build_tables(&mut self) -> Result<()> {
        let m = self.elements.len();
        let mut join = vec![0u16; m * m];
        let mut meet = vec![0u16; m * m];
        let mut scratch = FixedBitSet::with_capacity(m);
        for a in 0..m {
            for b in a..m {
                scratch.clone_from(&self.up[a]);
                scratch.intersect_with(&self.up[b]);
                // Indices follow a rank-increasing linear extension, so the
                // first common upper bound is the least one if any exists.
                let j = scratch.minimum().filter(|&j| scratch.is_subset(&self.up[j]));
                let j = j.ok_or_else(|| {
                    Error::Unsupported(format!(
                        "{} and {} have no join; the poset is not a lattice",
                        self.elements[a], self.elements[b]
                    ))
                })?;
                scratch.clone_from(&self.down[a]);
                scratch.intersect_with(&self.down[b]);
                let w = scratch.maximum().filter(|&w| scratch.is_subset(&self.down[w]));
                let w = w.ok_or_else(|| {
                    Error::Unsupported(format!(
                        "{} and {} have no meet; the poset is not a lattice",
                        self.elements[a], self.elements[b]
                    ))
                })?;
                join[a * m + b] = j as u16;
                join[b * m + a] = j as u16;
                meet[a * m + b] = w as u16;
                meet[b * m + a] = w as u16;
            }
        }
        if self.top.is_none() {
            return Err(Error::Unsupported("lattice has no greatest element".into()));
        }
        self.join = Some(join);
        self.meet = Some(meet);
        Ok(())
    }
}

impl<P> FiniteLattice<P> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[P] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &P {
        &self.elements[i]
    }

    /// True when join and meet tables are present.
    pub fn is_lattice(&self) -> bool {
        self.join.is_some()
    }

    pub(crate) fn require_lattice(&self, what: &str) -> Result<()> {
        if self.is_lattice() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "{what} needs a lattice, got a poset without join/meet tables"
            )))
        }
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Length of the longest chain from the bottom.
    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Elements `y` with `x <= y`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// Elements `y` with `y <= x`.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Panics on a poset built without tables.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let m = self.elements.len();
        self.join.as_ref().expect("join table")[a * m + b] as usize
    }

    /// Panics on a poset built without tables.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        let m = self.elements.len();
        self.meet.as_ref().expect("meet table")[a * m + b] as usize
    }

    /// Join of a family; the bottom for an empty family.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// The closed interval `[a, b]` in index order.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        let mut s = self.up[a].clone();
        s.intersect_with(&self.down[b]);
        s.ones().collect()
    }

    /// Maximal elements of `set` under the lattice order.
    pub fn maximal(&self, set: &[usize]) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&x| !set.iter().any(|&y| self.lt(x, y)))
            .collect()
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        let above: Vec<usize> = self.up[x].ones().filter(|&y| y != x).collect();
        above
            .iter()
            .copied()
            .filter(|&y| !above.iter().any(|&z| z != y && self.leq(z, y)))
            .collect()
    }

    /// Elements other than the bottom and (if present) the top.
    pub fn proper_part(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&x| x != self.bottom && Some(x) != self.top)
            .collect()
    }

    /// True when all maximal chains have the same length.
    pub fn is_graded(&self) -> bool {
        (0..self.len()).all(|x| {
            self.upper_covers(x)
                .into_iter()
                .all(|y| self.rank[y] == self.rank[x] + 1)
        })
    }
}

impl<P: Payload> FiniteLattice<P> {
    pub fn index_of(&self, p: &P) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Display label of element `x`.
    pub fn label(&self, x: usize) -> String {
        self.elements[x].to_string()
    }

    /// Index of the element whose display label is `label`.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        (0..self.len()).find(|&i| self.elements[i].to_string() == label)
    }
}

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::subset_label;

/// A subset of `{1..n}` stored as a bit mask (bit `i - 1` for element `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    n: u8,
    mask: u64,
}

impl Subset {
    pub fn new(n: usize, elements: &[u32]) -> Result<Self> {
        if n > 63 {
            return Err(Error::SizeCap {
                what: "ground set size",
                value: n,
                cap: 63,
            });
        }
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e as usize > n {
                return Err(Error::InvalidArgument(format!("element {e} is not in 1..={n}")));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Subset { n: n as u8, mask })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn elements(&self) -> Vec<u32> {
        (0..self.n as u32)
            .filter(|i| self.mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.mask & !other.mask == 0
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.elements()).cmp(&(other.n, other.elements()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            f.write_str("∅")
        } else {
            f.write_str(&subset_label(self.elements(), self.n as usize))
        }
    }
}

/// The Boolean lattice of subsets of `{1..n}` ordered by inclusion.
pub fn build_boolean_lattice(n: usize) -> Result<FiniteLattice<Subset>> {
    if n == 0 || n > 12 {
        return Err(Error::SizeCap {
            what: "n",
            value: n,
            cap: 12,
        });
    }
    let items: Vec<Subset> = (0..1u64 << n)
        .map(|mask| Subset { n: n as u8, mask })
        .collect();
    FiniteLattice::from_order(items, |a, b| a.is_subset_of(b), true)
}

//! Building sets, irreducible elements and sets of factors.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, Payload};

/// A validated building set of a lattice, as a set of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingSet {
    members: Vec<usize>,
    mask: FixedBitSet,
}

impl BuildingSet {
    /// Validates `members` against the building set axiom.
    pub fn new<P: Payload>(lattice: &FiniteLattice<P>, members: Vec<usize>) -> Result<Self> {
        if !is_building_set(lattice, &members)? {
            return Err(Error::InvalidBuildingSet(
                "some lower interval is not the product of its factor intervals".into(),
            ));
        }
        Ok(Self::new_unchecked(lattice.len(), members))
    }

    pub(crate) fn new_unchecked(size: usize, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = FixedBitSet::with_capacity(size);
        for &g in &members {
            mask.insert(g);
        }
        BuildingSet { members, mask }
    }

    /// The minimal building set: all irreducible elements.
    pub fn irreducibles<P: Payload>(lattice: &FiniteLattice<P>) -> Result<Self> {
        Ok(Self::new_unchecked(lattice.len(), irreducibles(lattice)?))
    }

    /// The maximal building set: every element above the bottom.
    pub fn maximal<P: Payload>(lattice: &FiniteLattice<P>) -> Result<Self> {
        lattice.require_lattice("the maximal building set")?;
        let members = (0..lattice.len()).filter(|&x| x != lattice.bottom()).collect();
        Ok(Self::new_unchecked(lattice.len(), members))
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_top<P>(&self, lattice: &FiniteLattice<P>) -> bool {
        lattice.top().is_some_and(|t| self.contains(t))
    }

    /// Maximal members below or equal to `x`.
    pub fn factors<P>(&self, lattice: &FiniteLattice<P>, x: usize) -> Vec<usize> {
        let below: Vec<usize> = lattice
            .down_set(x)
            .ones()
            .filter(|&g| self.contains(g))
            .collect();
        lattice.maximal(&below)
    }
}

/// The set of factors of `x`: the maximal members of `members` below or
/// equal to `x`.
pub fn factors<P: Payload>(
    lattice: &FiniteLattice<P>,
    members: &[usize],
    x: usize,
) -> Result<Vec<usize>> {
    if x == lattice.bottom() {
        return Err(Error::InvalidArgument(
            "factors are only defined above the bottom element".into(),
        ));
    }
    let below: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&g| lattice.leq(g, x))
        .collect();
    Ok(lattice.maximal(&below))
}

/// Whether `(x_1, ..., x_k) -> x_1 v ... v x_k` is an order isomorphism from
/// the product of the lower intervals of `gens` onto the lower interval of
/// `x`.
fn join_map_is_isomorphism<P>(lattice: &FiniteLattice<P>, gens: &[usize], x: usize) -> bool {
    let target = lattice.down_set(x).count_ones(..);
    let intervals: Vec<Vec<usize>> = gens.iter().map(|&g| lattice.down_set(g).ones().collect()).collect();
    let size = intervals
        .iter()
        .try_fold(1usize, |acc, iv| acc.checked_mul(iv.len()));
    if size != Some(target) {
        return false;
    }
    let mut tuples: Vec<Vec<usize>> = Vec::with_capacity(target);
    let mut images: Vec<usize> = Vec::with_capacity(target);
    let mut seen: HashMap<usize, usize> = HashMap::with_capacity(target);
    let mut digits = vec![0usize; gens.len()];
    loop {
        let tuple: Vec<usize> = digits
            .iter()
            .zip(&intervals)
            .map(|(&d, iv)| iv[d])
            .collect();
        let image = lattice.join_all(tuple.iter().copied());
        if !lattice.leq(image, x) || seen.insert(image, tuples.len()).is_some() {
            return false;
        }
        images.push(image);
        tuples.push(tuple);
        // Mixed-radix increment.
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                break;
            }
            digits[pos] += 1;
            if digits[pos] < intervals[pos].len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == digits.len() {
            break;
        }
    }
    // The join map is monotone; check that it reflects the order.
    for (a, ta) in tuples.iter().enumerate() {
        for (b, tb) in tuples.iter().enumerate() {
            if a != b && lattice.leq(images[a], images[b]) {
                let componentwise = ta.iter().zip(tb).all(|(&u, &v)| lattice.leq(u, v));
                if !componentwise {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `[0̂, x]` splits as a nontrivial product `[0̂, y] × [0̂, z]`,
/// found by exhaustive search over complementary pairs in the interval.
fn has_product_split<P>(lattice: &FiniteLattice<P>, x: usize) -> bool {
    let bottom = lattice.bottom();
    let interval: Vec<usize> = lattice.down_set(x).ones().collect();
    let size = interval.len();
    let count = |e: usize| lattice.down_set(e).count_ones(..);
    for (i, &y) in interval.iter().enumerate() {
        if y == bottom || y == x {
            continue;
        }
        let cy = count(y);
        if !size.is_multiple_of(cy) {
            continue;
        }
        for &z in &interval[i + 1..] {
            if z == x
                || count(z) * cy != size
                || lattice.meet(y, z) != bottom
                || lattice.join(y, z) != x
            {
                continue;
            }
            if join_map_is_isomorphism(lattice, &[y, z], x) {
                return true;
            }
        }
    }
    false
}

/// Elements above the bottom whose lower interval admits no nontrivial
/// product decomposition.
pub fn irreducibles<P: Payload>(lattice: &FiniteLattice<P>) -> Result<Vec<usize>> {
    lattice.require_lattice("irreducibles")?;
    Ok((0..lattice.len())
        .filter(|&x| x != lattice.bottom() && !has_product_split(lattice, x))
        .collect())
}

/// Checks the building set axiom: for every `x` above the bottom, the join
/// map from the product of the factor intervals onto `[0̂, x]` is an order
/// isomorphism.
pub fn is_building_set<P: Payload>(lattice: &FiniteLattice<P>, members: &[usize]) -> Result<bool> {
    lattice.require_lattice("is_building_set")?;
    if members.contains(&lattice.bottom()) {
        return Err(Error::InvalidArgument(
            "a building set may not contain the bottom element".into(),
        ));
    }
    if let Some(&bad) = members.iter().find(|&&g| g >= lattice.len()) {
        return Err(Error::InvalidArgument(format!("element index {bad} out of range")));
    }
    for x in 0..lattice.len() {
        if x == lattice.bottom() {
            continue;
        }
        let fs = factors(lattice, members, x)?;
        if fs.is_empty() || !join_map_is_isomorphism(lattice, &fs, x) {
            return Ok(false);
        }
    }
    Ok(true)
}

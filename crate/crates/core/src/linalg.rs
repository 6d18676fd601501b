//! Exact sparse elimination over the rationals or a prime field.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arithmetic of a field, carried by a context value so prime fields can
/// pick their modulus at run time.
pub trait FieldOps {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl FieldOps for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
}

/// Integers modulo a prime `p < 2^32`.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::InvalidArgument(format!(
                "{p} is not a prime below 2^32"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl FieldOps for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat.
        let (mut base, mut exp, mut acc) = (*a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Sparse vector: `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `a + c * b` for sparse vectors.
fn axpy<F: FieldOps>(f: &F, a: &SparseVec<F::Elem>, c: &F::Elem, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Result of reducing the columns of a matrix.
#[derive(Debug, Clone)]
pub struct ColumnReduction<E> {
    pub rank: usize,
    /// Basis of the null space, as sparse combinations of columns. Only
    /// filled when requested.
    pub kernel: Vec<SparseVec<E>>,
}

/// Left-to-right column reduction by lowest nonzero row. `columns` holds
/// integer entries; the reduction runs in the field `f`.
pub fn reduce_columns<F: FieldOps>(
    f: &F,
    columns: &[Vec<(usize, i64)>],
    want_kernel: bool,
) -> ColumnReduction<F::Elem> {
    let mut reduced: Vec<SparseVec<F::Elem>> = Vec::with_capacity(columns.len());
    let mut combos: Vec<SparseVec<F::Elem>> = Vec::new();
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut kernel = Vec::new();
    let mut rank = 0;
    for (j, col) in columns.iter().enumerate() {
        let mut r: SparseVec<F::Elem> = col
            .iter()
            .map(|&(i, v)| (i, f.from_i64(v)))
            .filter(|(_, v)| !f.is_zero(v))
            .collect();
        r.sort_by_key(|(i, _)| *i);
        let mut v: SparseVec<F::Elem> = if want_kernel {
            vec![(j, f.one())]
        } else {
            Vec::new()
        };
        while let Some((low, val)) = r.last().cloned() {
            match pivot_of.get(&low) {
                Some(&k) => {
                    let pivot_val = &reduced[k].last().unwrap().1;
                    let c = f.neg(&f.mul(&val, &f.inv(pivot_val)));
                    r = axpy(f, &r, &c, &reduced[k]);
                    if want_kernel {
                        v = axpy(f, &v, &c, &combos[k]);
                    }
                }
                None => break,
            }
        }
        match r.last() {
            Some(&(low, _)) => {
                pivot_of.insert(low, j);
                rank += 1;
            }
            None => {
                if want_kernel {
                    kernel.push(v.clone());
                }
            }
        }
        reduced.push(r);
        if want_kernel {
            combos.push(v);
        }
    }
    ColumnReduction { rank, kernel }
}

/// Rank of a dense matrix given by rows.
pub fn dense_rank<F: FieldOps>(f: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][c])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(&rows[rank][c]);
        for r in 0..rows.len() {
            if r != rank && !f.is_zero(&rows[r][c]) {
                let factor = f.neg(&f.mul(&rows[r][c], &inv));
                for cc in c..ncols {
                    let delta = f.mul(&factor, &rows[rank][cc]);
                    rows[r][cc] = f.add(&rows[r][cc], &delta);
                }
            }
        }
        rank += 1;
    }
    rank
}

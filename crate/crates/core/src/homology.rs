//! Reduced simplicial homology over the rationals or a prime field.
//!
//! Faces of each dimension are ordered lexicographically by their sorted
//! vertex indices and oriented by ascending vertex order. The augmentation
//! map serves as the boundary in degree 0, so all Betti numbers are reduced.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{reduce_columns, FieldOps, PrimeField, Rationals};

/// The prime used for the fast modular mode.
pub const DEFAULT_PRIME: u64 = 46337;

/// Coefficient field for homology computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldChoice {
    #[default]
    Rational,
    Prime(u64),
}

impl FromStr for FieldChoice {
    type Err = Error;

    /// Accepts `rational` or `prime:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(FieldChoice::Rational);
        }
        let p = s
            .strip_prefix("prime:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("expected `rational` or `prime:<p>`, got {s:?}")))?;
        PrimeField::new(p)?;
        Ok(FieldChoice::Prime(p))
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rational => f.write_str("rational"),
            FieldChoice::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

/// A sparse integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[i][j] = v;
            }
        }
        m
    }

    pub fn rank(&self, field: FieldChoice) -> Result<usize> {
        Ok(match field {
            FieldChoice::Rational => reduce_columns(&Rationals, &self.columns, false).rank,
            FieldChoice::Prime(p) => reduce_columns(&PrimeField::new(p)?, &self.columns, false).rank,
        })
    }
}

/// Ordered faces and boundary maps of the augmented chain complex.
/// `boundaries[0]` is the augmentation `C_0 -> k`.
#[derive(Debug, Clone)]
pub struct ChainComplexMatrices {
    pub faces: Vec<Vec<Vec<usize>>>,
    pub boundaries: Vec<BoundaryMatrix>,
}

pub fn chain_complex(complex: &SimplicialComplex) -> ChainComplexMatrices {
    let dim = match complex.dimension() {
        Some(d) => d,
        None => {
            return ChainComplexMatrices {
                faces: Vec::new(),
                boundaries: Vec::new(),
            }
        }
    };
    let faces: Vec<Vec<Vec<usize>>> = (0..=dim).map(|d| complex.faces(d)).collect();
    let mut boundaries = Vec::with_capacity(dim + 1);
    boundaries.push(BoundaryMatrix {
        rows: 1,
        cols: faces[0].len(),
        columns: vec![vec![(0, 1)]; faces[0].len()],
    });
    for d in 1..=dim {
        let index: HashMap<&[usize], usize> = faces[d - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let columns = faces[d]
            .iter()
            .map(|f| {
                let mut col: Vec<(usize, i64)> = (0..f.len())
                    .map(|skip| {
                        let facet: Vec<usize> = f
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &v)| v)
                            .collect();
                        let sign = if skip % 2 == 0 { 1 } else { -1 };
                        (index[facet.as_slice()], sign)
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        boundaries.push(BoundaryMatrix {
            rows: faces[d - 1].len(),
            cols: faces[d].len(),
            columns,
        });
    }
    ChainComplexMatrices { faces, boundaries }
}

/// The boundary map from `d`-faces to `(d-1)`-faces (the augmentation for
/// `d = 0`).
pub fn boundary_matrix(complex: &SimplicialComplex, d: usize) -> Result<BoundaryMatrix> {
    match complex.dimension() {
        Some(dim) if d <= dim => Ok(chain_complex(complex).boundaries.swap_remove(d)),
        _ => Err(Error::InvalidArgument(format!(
            "dimension {d} is outside 0..=dim of the complex"
        ))),
    }
}

/// Reduced Betti numbers in degrees `0..=dim`; empty for the empty complex.
pub fn reduced_betti(complex: &SimplicialComplex, field: FieldChoice) -> Result<Vec<usize>> {
    let cc = chain_complex(complex);
    let ranks: Vec<usize> = cc
        .boundaries
        .iter()
        .map(|b| b.rank(field))
        .collect::<Result<_>>()?;
    Ok((0..cc.faces.len())
        .map(|d| {
            let next = ranks.get(d + 1).copied().unwrap_or(0);
            cc.faces[d].len() - ranks[d] - next
        })
        .collect())
}

/// Alternating sum `sum (-1)^d b_d` of reduced Betti numbers; equals the
/// Euler characteristic minus one.
pub fn reduced_euler_from_betti(betti: &[usize]) -> i64 {
    betti
        .iter()
        .enumerate()
        .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}

/// A basis of top-dimensional reduced cycles, as dense rational vectors over
/// the lexicographically ordered top faces.
#[derive(Debug, Clone)]
pub struct CycleBasis {
    pub faces: Vec<Vec<usize>>,
    pub cycles: Vec<Vec<BigRational>>,
}

pub fn top_cycle_basis(complex: &SimplicialComplex) -> CycleBasis {
    let mut cc = chain_complex(complex);
    let (Some(faces), Some(top)) = (cc.faces.pop(), cc.boundaries.pop()) else {
        return CycleBasis {
            faces: Vec::new(),
            cycles: Vec::new(),
        };
    };
    let red = reduce_columns(&Rationals, &top.columns, true);
    let cycles = red
        .kernel
        .into_iter()
        .map(|sparse| {
            let mut dense = vec![Rationals.zero(); faces.len()];
            for (j, v) in sparse {
                dense[j] = v;
            }
            dense
        })
        .filter(|c| c.iter().any(|v| !v.is_zero()))
        .collect();
    CycleBasis { faces, cycles }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(vec![vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]])
    }

    #[test]
    fn triangle_boundary_signs() {
        let t = SimplicialComplex::simplex(["a", "b", "c"]);
        let d2 = boundary_matrix(&t, 2).unwrap();
        assert_eq!(d2.to_dense(), vec![vec![1], vec![-1], vec![1]]);
        assert!(boundary_matrix(&t, 3).is_err());
    }

    #[test]
    fn consecutive_boundaries_compose_to_zero() {
        let k = SimplicialComplex::from_facets(vec![
            vec!["a", "b", "c", "d"],
            vec!["c", "d", "e"],
            vec!["e", "f"],
        ]);
        let cc = chain_complex(&k);
        for d in 1..cc.boundaries.len() {
            let lower = cc.boundaries[d - 1].to_dense();
            let upper = cc.boundaries[d].to_dense();
            for i in 0..lower.len() {
                for j in 0..upper[0].len() {
                    let s: i64 = (0..upper.len()).map(|t| lower[i][t] * upper[t][j]).sum();
                    assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn betti_of_small_complexes() {
        assert_eq!(
            reduced_betti(&SimplicialComplex::simplex(["p"]), FieldChoice::Rational).unwrap(),
            vec![0]
        );
        assert_eq!(
            reduced_betti(&hollow_triangle(), FieldChoice::Rational).unwrap(),
            vec![0, 1]
        );
        let two_points = SimplicialComplex::from_facets(vec![vec!["a"], vec!["b"]]);
        assert_eq!(
            reduced_betti(&two_points, FieldChoice::Prime(DEFAULT_PRIME)).unwrap(),
            vec![1]
        );
        assert!(reduced_betti(&SimplicialComplex::empty(), FieldChoice::Rational)
            .unwrap()
            .is_empty());
        assert!(reduced_betti(&two_points, FieldChoice::Prime(4)).is_err());
    }

    #[test]
    fn cycle_bases() {
        assert_eq!(top_cycle_basis(&hollow_triangle()).cycles.len(), 1);
        assert!(top_cycle_basis(&SimplicialComplex::simplex(["a", "b", "c"]))
            .cycles
            .is_empty());
    }

    #[test]
    fn field_choice_parsing() {
        assert_eq!("rational".parse::<FieldChoice>().unwrap(), FieldChoice::Rational);
        assert_eq!(
            "prime:46337".parse::<FieldChoice>().unwrap(),
            FieldChoice::Prime(46337)
        );
        assert!("prime:46336".parse::<FieldChoice>().is_err());
        assert!("reals".parse::<FieldChoice>().is_err());
    }
}

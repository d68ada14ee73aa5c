//! Moment matrices of basis sequences and their exact inverses.
//!
//! For a basis sequence of braids `σ₁^{n₀}, σ₁^{n₁}, …` the matrix `M_r`
//! has the powers `nₖⁱ` down column `k`, so `M_r · a` lists the moments of
//! `Σ aₖ σ₁^{nₖ}`. The factors `1/(2ⁱ i!)` that turn moments into `Zᵢ` are
//! left out by default; `with_factorials` puts the `1/i!` back.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::braid_ring::BraidSum;
use crate::error::{Error, Result};
use crate::kontsevich::z_i;
use crate::scalar::{factorial, int, Rational};

/// A dense square matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

/// Which basis sequence a matrix is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// `1, σ, σ̄, σ², σ̄², …`: nodes `0, 1, −1, 2, −2, …`.
    Balanced,
    /// `1, σ, σ², …`: nodes `0, 1, 2, …`.
    Unbalanced,
}

impl BasisKind {
    pub fn nodes(self, r: usize) -> Vec<i64> {
        match self {
            BasisKind::Balanced => {
                let mut nodes = vec![0];
                for k in 1..=r as i64 {
                    nodes.push(k);
                    nodes.push(-k);
                }
                nodes
            }
            BasisKind::Unbalanced => (0..=r as i64).collect(),
        }
    }

    pub fn build(self, r: usize, with_factorials: bool) -> ExactMatrix {
        moment_matrix(&self.nodes(r), with_factorials)
    }
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch(dim, bad.len()));
        }
        Ok(ExactMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Rational::one();
        }
        ExactMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Zero-based access.
    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim + col]
    }

    /// One-based access, as in the usual `(row, col)` notation.
    pub fn entry(&self, row: usize, col: usize) -> Result<&Rational> {
        if row == 0 || col == 0 || row > self.dim || col > self.dim {
            return Err(Error::IndexOutOfRange {
                row,
                col,
                dim: self.dim,
            });
        }
        Ok(self.get(row - 1, col - 1))
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        self.entries.chunks(self.dim.max(1))
    }

    pub fn multiply(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(ExactMatrix { dim: n, entries })
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        Ok(self
            .rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).fold(Rational::zero(), |x, y| x + y))
            .collect())
    }

    /// Clears denominators row by row: returns integer rows and the
    /// multiplier used on each.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = Vec::with_capacity(self.dim);
        let mut scales = Vec::with_capacity(self.dim);
        for row in self.rows() {
            let scale = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            rows.push(
                row.iter()
                    .map(|c| c.numer() * (&scale / c.denom()))
                    .collect(),
            );
            scales.push(scale);
        }
        (rows, scales)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Rational {
        let (mut a, scales) = self.integer_rows();
        let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        match bareiss_forward(&mut a, &mut []) {
            Some(sign) => {
                let det = if self.dim == 0 {
                    BigInt::one()
                } else {
                    a[self.dim - 1][self.dim - 1].clone()
                };
                Rational::new(det * sign, scale)
            }
            None => Rational::zero(),
        }
    }

    /// Exact inverse.
    ///
    /// The matrix is scaled to integer rows `A = D·M`, `[A | I]` is reduced
    /// fraction-free to upper-triangular form, and back substitution makes
    /// the only divisions. Then `M⁻¹ = A⁻¹ D`.
    pub fn invert(&self) -> Result<ExactMatrix> {
        let n = self.dim;
        let (mut a, scales) = self.integer_rows();
        let mut rhs: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        if bareiss_forward(&mut a, &mut rhs).is_none() {
            return Err(Error::Singular);
        }
        let mut inverse = vec![Rational::zero(); n * n];
        for col in 0..n {
            for i in (0..n).rev() {
                let mut acc = Rational::from_integer(rhs[i][col].clone());
                for j in i + 1..n {
                    if !a[i][j].is_zero() {
                        acc -= Rational::from_integer(a[i][j].clone()) * &inverse[j * n + col];
                    }
                }
                inverse[i * n + col] = acc / Rational::from_integer(a[i][i].clone());
            }
        }
        // Undo the row scaling: column j of A⁻¹ picks up the factor D_j.
        for i in 0..n {
            for (j, s) in scales.iter().enumerate() {
                inverse[i * n + j] *= Rational::from_integer(s.clone());
            }
        }
        let inverse = ExactMatrix { dim: n, entries: inverse };
        debug_assert_eq!(self.multiply(&inverse).ok(), Some(ExactMatrix::identity(n)));
        Ok(inverse)
    }
}

/// Bareiss elimination to upper-triangular form, applying the same row
/// operations to `rhs`. Returns the sign of the row permutation, or `None`
/// if the matrix is singular.
fn bareiss_forward(a: &mut [Vec<BigInt>], rhs: &mut [Vec<BigInt>]) -> Option<i32> {
    let n = a.len();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        if pivot != k {
            a.swap(pivot, k);
            if !rhs.is_empty() {
                rhs.swap(pivot, k);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
            if !rhs.is_empty() {
                for j in 0..rhs[i].len() {
                    rhs[i][j] = (&rhs[i][j] * &a[k][k] - &a[i][k] * &rhs[k][j]) / &prev;
                }
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Some(sign)
}

/// Rows are powers `0, 1, …, len−1` of the nodes, with `0⁰ = 1`.
pub fn moment_matrix(nodes: &[i64], with_factorials: bool) -> ExactMatrix {
    let n = nodes.len();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        let scale = if with_factorials {
            Rational::new(BigInt::one(), factorial(i as u32))
        } else {
            Rational::one()
        };
        for node in nodes {
            let power = num_traits::pow(BigInt::from(*node), i);
            entries.push(Rational::from_integer(power) * &scale);
        }
    }
    ExactMatrix { dim: n, entries }
}

/// `M_r` for the balanced basis `1, σ, σ̄, …, σʳ, σ̄ʳ`.
pub fn build_balanced(r: usize) -> ExactMatrix {
    BasisKind::Balanced.build(r, false)
}

/// `M_r` for the unbalanced basis `1, σ, …, σʳ`.
pub fn build_unbalanced(r: usize) -> ExactMatrix {
    BasisKind::Unbalanced.build(r, false)
}

/// `N_r(row, col)` (one-based) for each `r` in `r_range`.
pub fn entry_sequence(
    kind: BasisKind,
    row: usize,
    col: usize,
    r_range: impl IntoIterator<Item = usize>,
) -> Result<Vec<Rational>> {
    r_range
        .into_iter()
        .map(|r| kind.build(r, false).invert()?.entry(row, col).cloned())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zeta2Row {
    pub r: usize,
    pub entry: Rational,
    pub partial_sum: Rational,
    pub equal: bool,
}

/// Compares `−N_r(1,3)` for the balanced basis with `Σ_{k≤r} 1/k²`.
pub fn zeta2_check(r_max: usize) -> Result<Vec<Zeta2Row>> {
    let mut partial = Rational::zero();
    let mut rows = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        partial += Rational::new(BigInt::one(), BigInt::from(r * r));
        let entry = build_balanced(r).invert()?.entry(1, 3)?.clone();
        rows.push(Zeta2Row {
            r,
            equal: -entry.clone() == partial,
            entry,
            partial_sum: partial.clone(),
        });
    }
    Ok(rows)
}

/// Solves `Zᵢ(Σ aₖ σ₁^{nₖ}) = δᵢ₁` for `i = 0..dim` over the basis of size
/// `dim`, returning the braid sum `Σ aₖ σ₁^{nₖ}`.
///
/// In terms of the moment matrix this is `M_r · a = (0, 2, 0, …)`, the
/// factor 2 coming from `Z₁(σ₁ⁿ) = n/2`.
pub fn solve_t(kind: BasisKind, r: usize) -> Result<BraidSum> {
    let nodes = kind.nodes(r);
    let inverse = moment_matrix(&nodes, false).invert()?;
    let mut target = vec![Rational::zero(); nodes.len()];
    if target.len() > 1 {
        target[1] = int(2);
    }
    let a = inverse.apply(&target)?;
    let b = BraidSum::from_terms(nodes.iter().copied().zip(a));
    debug_assert!((0..nodes.len()).all(|i| z_i(&b, i) == if i == 1 { int(1) } else { int(0) }));
    Ok(b)
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for row in cells.chunks(self.dim.max(1)) {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", line.join("  "))?;
        }
        Ok(())
    }
}

/// Largest absolute value of an entry, for growth diagnostics.
pub fn max_abs_entry(m: &ExactMatrix) -> Rational {
    m.entries
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

//! Dense square matrices over a [`Domain`].
//!
//! Indices are zero-based throughout. Determinants come in two flavours:
//! [`determinant_cofactor`] works in every domain and never divides;
//! [`determinant_bareiss`] is fraction-free elimination and needs
//! [`ExactDiv`].

use crate::error::{Error, Result};
use crate::ring::{Domain, ExactDiv};

/// Largest order accepted by [`determinant_cofactor`]; its minor table has
/// `2^order` entries.
pub const MAX_COFACTOR_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix<D> {
    order: usize,
    entries: Vec<D>,
}

/// Right-hand side of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnVector<D>(pub Vec<D>);

impl<D: Domain> SquareMatrix<D> {
    /// Builds a matrix from row-major entries.
    pub fn new(order: usize, entries: Vec<D>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::ShapeMismatch {
                expected: order * order,
                found: entries.len(),
            });
        }
        Ok(Self { order, entries })
    }

    pub fn from_rows(rows: Vec<Vec<D>>) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::ShapeMismatch {
                    expected: order,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { order, entries })
    }

    pub fn identity(order: usize) -> Self {
        let entries = (0..order * order)
            .map(|k| if k / order == k % order { D::one() } else { D::zero() })
            .collect();
        Self { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &D {
        &self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[D] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[D]> {
        self.entries.chunks(self.order.max(1)).take(self.order)
    }

    fn check_index(&self, row: usize, col: usize) -> Result<()> {
        if row >= self.order || col >= self.order {
            return Err(Error::IndexOutOfRange {
                row,
                col,
                order: self.order,
            });
        }
        Ok(())
    }

    /// The matrix with `row` and `col` deleted.
    pub fn minor(&self, row: usize, col: usize) -> Result<Self> {
        self.check_index(row, col)?;
        if self.order == 1 {
            return Err(Error::EmptyMinor);
        }
        Ok(self.minor_unchecked(row, col))
    }

    fn minor_unchecked(&self, row: usize, col: usize) -> Self {
        let order = self.order - 1;
        let entries = (0..self.order)
            .filter(|&i| i != row)
            .flat_map(|i| {
                (0..self.order)
                    .filter(move |&j| j != col)
                    .map(move |j| self.get(i, j).clone())
            })
            .collect();
        Self { order, entries }
    }

    /// `(-1)^(row+col)` times the determinant of the minor. The 1×1 case
    /// uses the empty determinant, so its single cofactor is 1.
    pub fn cofactor(&self, row: usize, col: usize) -> Result<D> {
        self.check_index(row, col)?;
        let det = if self.order == 1 {
            D::one()
        } else {
            determinant_cofactor(&self.minor_unchecked(row, col))
        };
        Ok(if (row + col).is_multiple_of(2) { det } else { det.neg() })
    }

    /// Laplace expansion along an arbitrary row.
    pub fn laplace_along_row(&self, row: usize) -> Result<D> {
        self.check_index(row, 0)?;
        (0..self.order).try_fold(D::zero(), |acc, j| {
            Ok(acc.add(&self.get(row, j).mul(&self.cofactor(row, j)?)))
        })
    }

    /// Laplace expansion along an arbitrary column.
    pub fn laplace_along_column(&self, col: usize) -> Result<D> {
        self.check_index(0, col)?;
        (0..self.order).try_fold(D::zero(), |acc, i| {
            Ok(acc.add(&self.get(i, col).mul(&self.cofactor(i, col)?)))
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_index(a, b)?;
        if a != b {
            for j in 0..self.order {
                self.entries.swap(a * self.order + j, b * self.order + j);
            }
        }
        Ok(())
    }

    pub fn replace_column(&self, col: usize, values: &ColumnVector<D>) -> Result<Self> {
        self.check_index(0, col)?;
        if values.0.len() != self.order {
            return Err(Error::ShapeMismatch {
                expected: self.order,
                found: values.0.len(),
            });
        }
        let mut out = self.clone();
        for (i, v) in values.0.iter().enumerate() {
            out.entries[i * self.order + col] = v.clone();
        }
        Ok(out)
    }
}

/// Determinant by Laplace expansion along the first row.
///
/// Minors are shared: the determinant of rows `k..m` restricted to a column
/// subset is computed once per subset, so the cost is `O(m·2^m)` ring
/// operations instead of `O(m!)`. No division is performed.
///
/// # Panics
///
/// If the order exceeds [`MAX_COFACTOR_ORDER`].
pub fn determinant_cofactor<D: Domain>(matrix: &SquareMatrix<D>) -> D {
    let m = matrix.order();
    assert!(
        m <= MAX_COFACTOR_ORDER,
        "cofactor expansion supports orders up to {MAX_COFACTOR_ORDER}, got {m}"
    );
    // minors[mask] = det of the last popcount(mask) rows on the columns in
    // mask. Removing a column lowers the mask, so ascending order suffices.
    let size = 1usize << m;
    let mut minors: Vec<D> = Vec::with_capacity(size);
    minors.push(D::one());
    for mask in 1..size {
        let row = m - mask.count_ones() as usize;
        let mut acc = D::zero();
        let mut position = 0;
        for col in 0..m {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = matrix.get(row, col);
            if !entry.is_zero() {
                let term = entry.mul(&minors[mask & !(1 << col)]);
                acc = if position % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            position += 1;
        }
        minors.push(acc);
    }
    minors.pop().expect("table holds at least the empty minor")
}

/// Determinant by Bareiss fraction-free elimination.
///
/// Every division performed is exact by Sylvester's identity; a failed
/// division is reported as [`Error::Internal`].
pub fn determinant_bareiss<D: ExactDiv>(matrix: &SquareMatrix<D>) -> Result<D> {
    let n = matrix.order();
    if n == 0 {
        return Ok(D::one());
    }
    let mut a: Vec<Vec<D>> = matrix.rows().map(<[D]>::to_vec).collect();
    let mut negate = false;
    let mut previous = D::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(D::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let numerator = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = numerator.exact_div(&previous).map_err(|e| {
                    Error::Internal(format!("fraction-free elimination: {e}"))
                })?;
            }
        }
        previous = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

fn check_distinct<D: Domain>(points: &[D]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    for (j, b) in points.iter().enumerate() {
        if let Some(i) = points[..j].iter().position(|a| a == b) {
            return Err(Error::DuplicateElement {
                element: b.to_string(),
                first: i,
                second: j,
            });
        }
    }
    Ok(())
}

/// The Vandermonde matrix with entry `(i, j) = points[j]^i`; row 0 is all
/// ones.
pub fn vandermonde_matrix<D: Domain>(points: &[D]) -> Result<SquareMatrix<D>> {
    check_distinct(points)?;
    let m = points.len();
    let mut entries = vec![D::one(); m * m];
    for i in 1..m {
        for j in 0..m {
            entries[i * m + j] = entries[(i - 1) * m + j].mul(&points[j]);
        }
    }
    Ok(SquareMatrix { order: m, entries })
}

/// Closed form `∏_{i<j} (s_j - s_i)`, equal to the determinant of
/// [`vandermonde_matrix`] for the same ordering of points.
pub fn vandermonde_det_product<D: Domain>(points: &[D]) -> Result<D> {
    check_distinct(points)?;
    let mut acc = D::one();
    for j in 0..points.len() {
        for i in 0..j {
            acc = acc.mul(&points[j].sub(&points[i]));
        }
    }
    Ok(acc)
}

/// Cramer numerators `det(A_j(b))`, where `A_j(b)` is `matrix` with column
/// `j` replaced by `rhs`. For a solution `x` of `A·x = b`,
/// `det(A)·x_j` equals the `j`-th numerator.
pub fn cramer_numerators<D: Domain>(
    matrix: &SquareMatrix<D>,
    rhs: &ColumnVector<D>,
) -> Result<Vec<D>> {
    (0..matrix.order())
        .map(|j| Ok(determinant_cofactor(&matrix.replace_column(j, rhs)?)))
        .collect()
}

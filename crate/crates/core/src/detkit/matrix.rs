//! Dense matrices over any [`Field`], determinants, minors and the Jacobi identity.

use std::fmt;

use crate::error::{Error, Result};
use crate::specfun::Field;

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidParameter {
                name: "data",
                reason: format!("expected {} entries, got {}", rows * cols, data.len()),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let data = (0..rows * cols)
            .map(|idx| f(idx / cols, idx % cols))
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn determinant(&self) -> Result<F> {
        determinant(self)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.rows {
            list.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        list.finish()
    }
}

/// Determinant by fraction-free Bareiss elimination (exact fields) or LU with
/// partial pivoting (float fields). The `0 × 0` determinant is 1.
pub fn determinant<F: Field>(m: &Matrix<F>) -> Result<F> {
    if !m.is_square() {
        return Err(Error::InvalidParameter {
            name: "matrix",
            reason: format!("determinant of a {}x{} matrix", m.rows, m.cols),
        });
    }
    if F::EXACT {
        Ok(bareiss(m))
    } else {
        Ok(lu(m))
    }
}

/// Division-free cofactor expansion along the column with the fewest nonzero
/// entries, skipping zeros. Fast on sparse matrices and exact in any field.
pub fn determinant_sparse<F: Field>(m: &Matrix<F>) -> Result<F> {
    if !m.is_square() {
        return Err(Error::InvalidParameter {
            name: "matrix",
            reason: format!("determinant of a {}x{} matrix", m.rows, m.cols),
        });
    }
    let rows: Vec<usize> = (0..m.rows).collect();
    let cols: Vec<usize> = (0..m.cols).collect();
    Ok(expand(m, &rows, &cols))
}

fn expand<F: Field>(m: &Matrix<F>, rows: &[usize], cols: &[usize]) -> F {
    match rows.len() {
        0 => return F::one(),
        1 => return m.get(rows[0], cols[0]).clone(),
        _ => {}
    }
    let nonzero = |c: usize| rows.iter().filter(|&&r| !m.get(r, c).is_zero()).count();
    let (pos, &col) = cols
        .iter()
        .enumerate()
        .min_by_key(|&(_, &c)| nonzero(c))
        .expect("nonempty");
    let rest_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != col).collect();
    let mut acc = F::zero();
    for (ri, &r) in rows.iter().enumerate() {
        let entry = m.get(r, col);
        if entry.is_zero() {
            continue;
        }
        let rest_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let term = entry.clone() * expand(m, &rest_rows, &rest_cols);
        acc = if (ri + pos) % 2 == 0 {
            acc + term
        } else {
            acc - term
        };
    }
    acc
}

fn bareiss<F: Field>(m: &Matrix<F>) -> F {
    let n = m.rows;
    let mut a: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut sign = false;
    let mut prev = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return F::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
            a[i][k] = F::zero();
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 {
        F::one()
    } else {
        a[n - 1][n - 1].clone()
    };
    if sign {
        -det
    } else {
        det
    }
}

fn lu<F: Field>(m: &Matrix<F>) -> F {
    let n = m.rows;
    let mut a: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut det = F::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[x][k].pivot_weight().total_cmp(&a[y][k].pivot_weight()))
            .expect("nonempty pivot range");
        if a[p][k].is_zero() {
            return F::zero();
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let piv = a[k][k].clone();
        det = det * piv.clone();
        for i in k + 1..n {
            let factor = a[i][k].clone() / piv.clone();
            let (upper, lower) = a.split_at_mut(i);
            for (x, y) in lower[0][k + 1..n].iter_mut().zip(&upper[k][k + 1..n]) {
                *x = x.clone() - factor.clone() * y.clone();
            }
        }
    }
    det
}

fn complement(n: usize, removed: &[usize], what: &str) -> Result<Vec<usize>> {
    let mut seen = vec![false; n];
    for &r in removed {
        if r == 0 || r > n {
            return Err(Error::Index(format!("{what} index {r} outside 1..={n}")));
        }
        if std::mem::replace(&mut seen[r - 1], true) {
            return Err(Error::Index(format!("{what} index {r} removed twice")));
        }
    }
    Ok((0..n).filter(|&i| !seen[i]).collect())
}

/// `D[rows | cols]`: determinant of `m` with the listed rows and columns
/// (1-based) removed. Removing everything leaves the empty minor, equal to 1.
pub fn minor<F: Field>(m: &Matrix<F>, removed_rows: &[usize], removed_cols: &[usize]) -> Result<F> {
    if removed_rows.len() != removed_cols.len() {
        return Err(Error::Index(format!(
            "removing {} rows but {} columns",
            removed_rows.len(),
            removed_cols.len()
        )));
    }
    if !m.is_square() {
        return Err(Error::InvalidParameter {
            name: "matrix",
            reason: "minors need a square matrix".into(),
        });
    }
    let rows = complement(m.rows, removed_rows, "row")?;
    let cols = complement(m.cols, removed_cols, "column")?;
    determinant(&m.select(&rows, &cols))
}

/// `D[p1,p2|q1,q2] D - D[p1|q1] D[p2|q2] + D[p1|q2] D[p2|q1]` (1-based indices).
///
/// The first product changes sign when exactly one of the pairs is given in
/// decreasing order, so the residual vanishes for every admissible choice.
pub fn jacobi_residual<F: Field>(
    m: &Matrix<F>,
    p1: usize,
    p2: usize,
    q1: usize,
    q2: usize,
) -> Result<F> {
    if p1 == p2 || q1 == q2 {
        return Err(Error::Index(format!(
            "Jacobi identity needs distinct indices, got ({p1},{p2}|{q1},{q2})"
        )));
    }
    let d = determinant(m)?;
    let both = minor(m, &[p1, p2], &[q1, q2])?;
    let d11 = minor(m, &[p1], &[q1])?;
    let d22 = minor(m, &[p2], &[q2])?;
    let d12 = minor(m, &[p1], &[q2])?;
    let d21 = minor(m, &[p2], &[q1])?;
    let lead = if (p1 < p2) == (q1 < q2) {
        both * d
    } else {
        -(both * d)
    };
    Ok(lead - d11 * d22 + d12 * d21)
}

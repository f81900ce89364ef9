//! Brackets of rectangular matrices, Plücker relations, and the matrix whose
//! Plücker relation reproduces the Hirota-like bilinear relations.

use super::matrix::{determinant_sparse, Matrix};
use crate::chain::{SpectralFamily, Topology};
use crate::error::{Error, Result};
use crate::hirota::{det_solution, hirota_like_residual};
use crate::specfun::{Coeff, Field, SpectralFunction};

/// An `(n+1) × (r+1)` matrix with `n >= r`, rows indexed from 0.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketMatrix<F: Field> {
    x: Matrix<F>,
}

/// Rows `i` that are the unit vector `e_p`, as `(i, p)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitRowSpec(pub Vec<(usize, usize)>);

impl<F: Field> BracketMatrix<F> {
    pub fn new(x: Matrix<F>) -> Result<Self> {
        if x.cols() == 0 || x.rows() < x.cols() {
            return Err(Error::InvalidParameter {
                name: "matrix",
                reason: format!(
                    "bracket matrix needs rows >= columns >= 1, got {}x{}",
                    x.rows(),
                    x.cols()
                ),
            });
        }
        Ok(BracketMatrix { x })
    }

    /// `n`, the largest row index.
    pub fn n(&self) -> usize {
        self.x.rows() - 1
    }

    /// `r`, one less than the number of columns.
    pub fn r(&self) -> usize {
        self.x.cols() - 1
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.x
    }

    /// `(i_0 … i_r)`: determinant of the listed rows in the listed order,
    /// by sparse cofactor expansion.
    pub fn bracket(&self, rows: &[usize]) -> Result<F> {
        if rows.len() != self.x.cols() {
            return Err(Error::Index(format!(
                "bracket needs {} indices, got {}",
                self.x.cols(),
                rows.len()
            )));
        }
        if let Some(&bad) = rows.iter().find(|&&i| i > self.n()) {
            return Err(Error::Index(format!("row {bad} outside 0..={}", self.n())));
        }
        if (1..rows.len()).any(|a| rows[..a].contains(&rows[a])) {
            return Ok(F::zero());
        }
        let cols: Vec<usize> = (0..self.x.cols()).collect();
        determinant_sparse(&self.x.select(rows, &cols))
    }

    /// The products `(j_p, i_1 … i_r)(j_0 … j_{p-1}, i_0, j_{p+1} … j_r)` for `p = 0..=r`.
    pub fn plucker_terms(&self, i: &[usize], j: &[usize]) -> Result<Vec<F>> {
        let r1 = self.x.cols();
        if i.len() != r1 || j.len() != r1 {
            return Err(Error::Index(format!(
                "Plücker relation needs two lists of {r1} indices"
            )));
        }
        (0..r1)
            .map(|p| {
                let mut left = i.to_vec();
                left[0] = j[p];
                let mut right = j.to_vec();
                right[p] = i[0];
                Ok(self.bracket(&left)? * self.bracket(&right)?)
            })
            .collect()
    }

    /// `(i)(j) - Σ_p (j_p, i_1 … i_r)(j_0 … i_0 … j_r)`.
    pub fn plucker_residual(&self, i: &[usize], j: &[usize]) -> Result<F> {
        let lead = self.bracket(i)? * self.bracket(j)?;
        Ok(self
            .plucker_terms(i, j)?
            .into_iter()
            .fold(lead, |acc, t| acc - t))
    }
}

/// Stack `top` above unit rows; the unit rows must extend `top` row by row.
pub fn with_unit_rows<F: Field>(top: &Matrix<F>, units: &UnitRowSpec) -> Result<BracketMatrix<F>> {
    let rows = top.rows() + units.0.len();
    let mut x = Matrix::zeros(rows, top.cols());
    for i in 0..top.rows() {
        for j in 0..top.cols() {
            x.set(i, j, top.get(i, j).clone());
        }
    }
    let mut seen = vec![false; rows];
    for &(i, p) in &units.0 {
        if i < top.rows() || i >= rows || p >= top.cols() || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Index(format!(
                "unit row ({i}, {p}) does not fit a {rows}x{} matrix",
                top.cols()
            )));
        }
        x.set(i, p, F::one());
    }
    BracketMatrix::new(x)
}

/// `M^{(k)}` with `M_{ij} = T_1^{[k+1-2i]} δ_{ij} + φ̄^{[k+1-2i]} δ_{i,j+1} + φ^{[k+1-2i]} δ_{i,j-1}`.
pub fn tridiagonal_matrix<C: Coeff>(
    t1: &SpectralFunction<C>,
    phi: &SpectralFunction<C>,
    k: usize,
) -> Matrix<SpectralFunction<C>> {
    let bar = phi.bar();
    let ki = k as i64;
    Matrix::from_fn(k, k, |i, j| {
        let s = ki + 1 - 2 * (i as i64 + 1);
        if i == j {
            t1.shift(s)
        } else if i == j + 1 {
            bar.shift(s)
        } else if i + 1 == j {
            phi.shift(s)
        } else {
            SpectralFunction::zero()
        }
    })
}

/// `r = k`, `n = r + a + 2`: `M^{(r+1)}` above the unit rows
/// `[r+1, 0], [r+2, r-a], …, [r+a+2, r]`.
pub fn build_hirota_plucker_matrix<C: Coeff>(
    t1: &SpectralFunction<C>,
    phi: &SpectralFunction<C>,
    k: usize,
    a: usize,
) -> Result<BracketMatrix<SpectralFunction<C>>> {
    if k == 0 || a >= k {
        return Err(Error::Index(format!(
            "Plücker construction needs 0 <= a < k, got k = {k}, a = {a}"
        )));
    }
    let r = k;
    let mut units = vec![(r + 1, 0)];
    units.extend((0..=a).map(|m| (r + 2 + m, r - a + m)));
    with_unit_rows(&tridiagonal_matrix(t1, phi, r + 1), &UnitRowSpec(units))
}

/// Index lists `i`, `j` selecting the Hirota-like relation `(k, a)`.
pub fn hirota_plucker_indices(k: usize, a: usize) -> (Vec<usize>, Vec<usize>) {
    let r = k;
    let j: Vec<usize> = (0..=r).collect();
    let i: Vec<usize> = (0..=r)
        .map(|l| {
            if l == 0 {
                r + 1
            } else if l + a < r {
                l
            } else {
                l + a + 2
            }
        })
        .collect();
    (i, j)
}

/// Outcome of the Plücker derivation of `H_{k,a} = 0`.
#[derive(Clone, Debug)]
pub struct PluckerCheck<C: Coeff> {
    pub k: usize,
    pub a: usize,
    pub residual: SpectralFunction<C>,
    /// Signed terms of the relation, `(i)(j)` followed by `-(…)(…)` for each `p`.
    pub terms: Vec<SpectralFunction<C>>,
    pub surviving: usize,
    /// `f` with `surviving term = f · term of H_{k,a}`, common to all three.
    pub factor: Option<SpectralFunction<C>>,
    /// Position in `H_{k,a}` matched by each surviving term.
    pub matching: Vec<usize>,
}

impl<C: Coeff> PluckerCheck<C> {
    pub fn holds(&self) -> bool {
        self.residual.is_zero() && self.surviving == 3 && self.factor.is_some()
    }
}

/// Evaluates the Plücker relation of [`build_hirota_plucker_matrix`] with the
/// indices of [`hirota_plucker_indices`], counts its nonvanishing terms and
/// matches them one by one against the terms of `H_{k,a}` evaluated on the
/// determinant solution built from the same `T_1`, `φ`.
///
/// Zero tests are structural, so this is meaningful in the exact model.
pub fn verify_hirota_like_via_plucker<C: Coeff>(
    t1: &SpectralFunction<C>,
    phi: &SpectralFunction<C>,
    k: usize,
    a: usize,
) -> Result<PluckerCheck<C>> {
    let x = build_hirota_plucker_matrix(t1, phi, k, a)?;
    let (i, j) = hirota_plucker_indices(k, a);
    let mut terms = vec![x.bracket(&i)? * x.bracket(&j)?];
    terms.extend(x.plucker_terms(&i, &j)?.into_iter().map(|t| -t));
    let residual = terms
        .iter()
        .cloned()
        .fold(SpectralFunction::zero(), |acc, t| acc + t);
    let live: Vec<&SpectralFunction<C>> = terms.iter().filter(|t| !t.is_zero()).collect();

    let t = (0..=k + 1).map(|m| det_solution(t1, phi, m)).collect();
    let family = SpectralFamily::from_data(
        "plucker",
        Topology::Open,
        t,
        phi.clone(),
        SpectralFunction::zero(),
    );
    let h = hirota_like_residual(&family, k, a)?;
    let h_terms = h.terms();

    let mut factor = None;
    let mut matching = Vec::new();
    if live.len() == h_terms.len() && h_terms.iter().all(|t| !t.is_zero()) {
        // Screen pairings at two off-lattice points before the symbolic check.
        let probes = [
            C::from_ratio(7, 3) + C::imag_unit() * C::from_ratio(1, 5),
            C::from_ratio(-5, 4) + C::imag_unit() * C::from_ratio(2, 7),
        ];
        let at = |f: &SpectralFunction<C>| probes.iter().map(|u| f.eval(u)).collect::<Vec<C>>();
        let lv: Vec<Vec<C>> = live.iter().map(|t| at(t)).collect();
        let hv: Vec<Vec<C>> = h_terms.iter().map(at).collect();
        let close = |x: &C, y: &C| (x.clone() - y.clone()).approx_zero(1e-9 * (x.abs() + y.abs()));
        for perm in permutations(live.len()) {
            let plausible = (1..perm.len()).all(|m| {
                (0..probes.len()).all(|s| {
                    close(
                        &(lv[m][s].clone() * hv[perm[0]][s].clone()),
                        &(lv[0][s].clone() * hv[perm[m]][s].clone()),
                    )
                })
            });
            if !plausible {
                continue;
            }
            let f0 = live[0].clone() / h_terms[perm[0]].clone();
            if perm
                .iter()
                .enumerate()
                .skip(1)
                .all(|(m, &p)| *live[m] == f0.clone() * h_terms[p].clone())
            {
                factor = Some(f0);
                matching = perm;
                break;
            }
        }
    }
    Ok(PluckerCheck {
        k,
        a,
        surviving: live.len(),
        residual,
        terms,
        factor,
        matching,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

//! Dense SVD, rank-k reconstruction, document folding and cosine similarity.

use nalgebra::{DMatrix, DVector};

use crate::error::{LingoError, Result};

/// Singular values at or below this fraction of the largest one are
/// treated as zero when determining the numerical rank.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Thin SVD restricted to the numerical rank: A = U diag(sigma) V^T.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    /// t x r, orthonormal columns.
    pub u: DMatrix<f64>,
    /// Nonincreasing, all positive.
    pub sigma: Vec<f64>,
    /// d x r, orthonormal columns.
    pub v: DMatrix<f64>,
}

impl SvdFactors {
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.rank() {
            return Err(LingoError::RankOutOfRange {
                k,
                max: self.rank(),
            });
        }
        Ok(())
    }

    /// Leading k columns of U.
    pub fn u_k(&self, k: usize) -> Result<DMatrix<f64>> {
        self.check_k(k)?;
        Ok(self.u.columns(0, k).into_owned())
    }

    /// Cumulative singular value ratio for the leading k values.
    pub fn quality(&self, k: usize) -> f64 {
        let k = k.min(self.rank());
        let mut head = 0.0;
        let mut total = 0.0;
        for (i, s) in self.sigma.iter().enumerate() {
            total += s;
            if i + 1 == k {
                head = total;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            head / total
        }
    }
}

/// A chosen truncation rank and the singular value mass it retains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationChoice {
    pub k: usize,
    pub quality: f64,
}

/// Computes the SVD of `a`, keeping only the numerically nonzero triples.
///
/// Columns are sorted by decreasing singular value and each pair of
/// singular vectors is signed so that the first nonzero entry of the U
/// column is positive.
pub fn svd(a: &DMatrix<f64>) -> Result<SvdFactors> {
    if a.iter().any(|x| !x.is_finite()) {
        return Err(LingoError::NonFinite);
    }
    let (t, d) = a.shape();
    if t == 0 || d == 0 {
        return Ok(SvdFactors {
            u: DMatrix::zeros(t, 0),
            sigma: Vec::new(),
            v: DMatrix::zeros(d, 0),
        });
    }

    let decomposition = a.clone().svd(true, true);
    let u_full = decomposition.u.expect("U requested");
    let v_t_full = decomposition.v_t.expect("V^T requested");
    let values = decomposition.singular_values;

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&x, &y| values[y].total_cmp(&values[x]).then(x.cmp(&y)));
    let largest = order.first().map(|&i| values[i]).unwrap_or(0.0);
    let kept: Vec<usize> = order
        .into_iter()
        .filter(|&i| largest > 0.0 && values[i] > RANK_TOLERANCE * largest)
        .collect();

    let r = kept.len();
    let mut u = DMatrix::zeros(t, r);
    let mut v = DMatrix::zeros(d, r);
    let mut sigma = Vec::with_capacity(r);
    for (c, &i) in kept.iter().enumerate() {
        let mut u_col = u_full.column(i).into_owned();
        let mut v_col = v_t_full.row(i).transpose();
        let flip = u_col
            .iter()
            .find(|x| x.abs() > 1e-12)
            .is_some_and(|&x| x < 0.0);
        if flip {
            u_col.neg_mut();
            v_col.neg_mut();
        }
        u.set_column(c, &u_col);
        v.set_column(c, &v_col);
        sigma.push(values[i]);
    }
    Ok(SvdFactors { u, sigma, v })
}

/// U_k diag(sigma_k) V_k^T.
pub fn reconstruct_rank_k(f: &SvdFactors, k: usize) -> Result<DMatrix<f64>> {
    f.check_k(k)?;
    let u_k = f.u.columns(0, k);
    let mut scaled_v = f.v.columns(0, k).into_owned();
    for (mut col, s) in scaled_v.column_iter_mut().zip(&f.sigma) {
        col *= *s;
    }
    Ok(u_k * scaled_v.transpose())
}

/// Projects a term-space vector into the k-dimensional latent space,
/// diag(sigma_k)^-1 U_k^T q.
pub fn fold_document(f: &SvdFactors, k: usize, q: &DVector<f64>) -> Result<DVector<f64>> {
    f.check_k(k)?;
    if q.len() != f.u.nrows() {
        return Err(LingoError::LengthMismatch {
            left: q.len(),
            right: f.u.nrows(),
        });
    }
    let mut projected = f.u.columns(0, k).tr_mul(q);
    for (x, s) in projected.iter_mut().zip(&f.sigma) {
        *x /= s;
    }
    Ok(projected)
}

/// Cosine of the angle between `x` and `y`; 0 when either is the zero vector.
pub fn cosine_similarity(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(LingoError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let (mut dot, mut nx, mut ny) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        dot += a * b;
        nx += a * a;
        ny += b * b;
    }
    if nx == 0.0 || ny == 0.0 {
        return Ok(0.0);
    }
    Ok((dot / (nx.sqrt() * ny.sqrt())).clamp(-1.0, 1.0))
}

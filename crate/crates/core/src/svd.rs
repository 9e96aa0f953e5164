use crate::error::{Error, Result};
use crate::householder::householder_qr;
use crate::matrix::{dot, frobenius_norm, DenseMatrix};

const MAX_SWEEPS: usize = 60;
const JACOBI_TOL: f64 = 1e-14;

/// All singular values of a dense matrix, sorted non-increasing.
///
/// One-sided Jacobi with cyclic sweeps: columns are rotated pairwise until
/// every off-diagonal inner product is negligible, at which point the column
/// norms are the singular values. Rotations are plane rotations, so the
/// spectrum is preserved exactly and the values come out with high relative
/// accuracy. Inputs with more columns than rows are transposed (same
/// spectrum); tall inputs are first reduced by QR so the iteration runs on a
/// square factor.
pub fn svd_values(a: &DenseMatrix) -> Result<Vec<f64>> {
    assert!(
        a.rows() >= 1 && a.cols() >= 1,
        "svd_values needs a nonempty matrix"
    );
    let work = if a.rows() < a.cols() {
        a.transposed()
    } else {
        a.clone()
    };
    let square = if work.rows() > work.cols() {
        let (_, r) = householder_qr(&work);
        r
    } else {
        work
    };
    jacobi_values(&square, MAX_SWEEPS)
}

/// Core iteration on a square matrix with an explicit sweep cap.
///
/// A column pair is converged when |u_i . u_j| falls at or below
/// `1e-14 * ||u_i|| * ||u_j||`. The threshold must scale with the column
/// norms on both sides: anything tighter than roughly `eps * ||u_i|| *
/// ||u_j||` is below the rounding floor of the rotation itself and stalls
/// the sweep, while a norm-relative cutoff also keeps tiny singular values
/// accurate to full relative precision.
pub(crate) fn jacobi_values(a: &DenseMatrix, max_sweeps: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(a.rows(), a.cols());
    let n = a.cols();
    let mut w = a.clone();
    if frobenius_norm(a) == 0.0 {
        return Ok(vec![0.0; n]);
    }

    let mut col_sq = vec![0.0f64; n];
    for _sweep in 0..max_sweeps {
        for (j, sq) in col_sq.iter_mut().enumerate() {
            *sq = dot(w.col(j), w.col(j));
        }
        let mut rotated = false;
        for i in 0..n.saturating_sub(1) {
            for j in i + 1..n {
                let d = col_dot(&w, i, j);
                let threshold = JACOBI_TOL * (col_sq[i] * col_sq[j]).sqrt();
                if d.abs() <= threshold {
                    continue;
                }
                rotated = true;
                let zeta = (col_sq[j] - col_sq[i]) / (2.0 * d);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_columns(&mut w, i, j, c, s);
                col_sq[i] -= t * d;
                col_sq[j] += t * d;
            }
        }
        if !rotated {
            let mut values: Vec<f64> = (0..n)
                .map(|j| dot(w.col(j), w.col(j)).sqrt())
                .collect();
            values.sort_by(|x, y| y.partial_cmp(x).expect("finite norms"));
            return Ok(values);
        }
    }
    Err(Error::NonConvergence {
        op: "svd_values",
        sweeps: max_sweeps,
    })
}

#[inline]
fn col_dot(w: &DenseMatrix, i: usize, j: usize) -> f64 {
    dot(w.col(i), w.col(j))
}

/// (col_i, col_j) <- (c*col_i - s*col_j, s*col_i + c*col_j) in one pass.
#[inline]
fn rotate_columns(w: &mut DenseMatrix, i: usize, j: usize, c: f64, s: f64) {
    let rows = w.rows();
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let data = w.data_mut();
    let (head, tail) = data.split_at_mut(hi * rows);
    let ci = &mut head[lo * rows..(lo + 1) * rows];
    let cj = &mut tail[..rows];
    // i < j always holds at the call sites, so (ci, cj) = (head, tail) order.
    for (a, b) in ci.iter_mut().zip(cj.iter_mut()) {
        let x = *a;
        let y = *b;
        *a = c * x - s * y;
        *b = s * x + c * y;
    }
}

use crate::error::{Error, Result};
use crate::householder::householder_qr;
use crate::matrix::{matmul, DenseMatrix};
use crate::rng::{gaussian_matrix, SeededRng};
use crate::svd::svd_values;

/// Tuning knobs for the randomized spectrum estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct RandNNConfig {
    /// Panel width b; every non-terminal panel processes exactly b columns.
    pub block_size: usize,
    /// Power-iteration rounds q applied to the sampling matrix. 0, 1 or 2 is
    /// plenty in practice; the sample is deliberately not re-orthonormalized
    /// between rounds, so very large q would let rounding flatten the sample
    /// toward the dominant subspace.
    pub power_rounds: usize,
    /// Stop once the largest singular value of a completed block falls below
    /// this threshold; 0 disables early stopping.
    pub early_stop_threshold: f64,
    /// Seed for the Gaussian sampling stream.
    pub seed: u64,
    /// Accumulate the Frobenius norm of the discarded off-diagonal blocks,
    /// which bounds the l2 error of the whole estimated spectrum.
    pub compute_bound: bool,
}

impl Default for RandNNConfig {
    fn default() -> Self {
        RandNNConfig {
            block_size: 64,
            power_rounds: 2,
            early_stop_threshold: 0.0,
            seed: 0,
            compute_bound: true,
        }
    }
}

/// Result of a spectrum estimation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate {
    /// Estimated singular values in block order: within each processed block
    /// the values are non-increasing, and blocks arrive in diagonal order.
    /// Length is always min(m, n); positions past an early stop are zero.
    pub values: Vec<f64>,
    /// Frobenius norm of everything discarded off the block diagonal.
    /// Sorting both spectra non-increasingly, the l2 norm of their difference
    /// is bounded by this value. `None` when the bound was not requested or
    /// when early termination made it non-comparable.
    pub bound_fro: Option<f64>,
    /// Number of panels processed, terminal panel included.
    pub blocks_processed: usize,
    /// True when the run stopped at the early-stop threshold and the
    /// remaining values were filled with zeros.
    pub terminated_early: bool,
}

/// Randomized range sample for one panel: Y = (A^T A)^q A^T G with G an
/// iid standard Gaussian matrix of shape rows(A) x b.
///
/// The power rounds sharpen Y toward the dominant right singular subspace.
/// No re-orthonormalization happens between rounds, matching the panel step
/// that consumes Y.
pub fn power_sample(
    awork: &DenseMatrix,
    b: usize,
    q: usize,
    rng: &mut SeededRng,
) -> Result<DenseMatrix> {
    if b < 1 {
        return Err(Error::invalid("power_sample", "block size must be at least 1"));
    }
    if awork.rows() == 0 || awork.cols() == 0 {
        return Err(Error::invalid("power_sample", "empty matrix"));
    }
    let g = gaussian_matrix(awork.rows(), b, rng);
    let mut y = matmul(awork, &g, true, false)?;
    for _ in 0..q {
        let z = matmul(awork, &y, false, false)?;
        y = matmul(awork, &z, true, false)?;
    }
    Ok(y)
}

/// One blocked reduction step on the working matrix.
///
/// Draws a Gaussian sample, builds an orthogonal V from the QR of the power
/// sample, forms T = A*V, then triangularizes the leading b columns of T
/// with a second QR whose transpose is applied to the trailing columns:
///
///   T[:, 0..b]   <- [R; 0]          (exact zeros below the b x b block)
///   T[:, b..]    <- U^T * T[:, b..]
///
/// Returns the updated working matrix and the singular values of R, which
/// estimate the b largest singular values of `awork`. Both orthogonal
/// factors stay implicit reflector products throughout.
pub fn step_nn(
    awork: &DenseMatrix,
    b: usize,
    q: usize,
    rng: &mut SeededRng,
) -> Result<(DenseMatrix, Vec<f64>)> {
    let (rows, cols) = awork.shape();
    if b < 1 {
        return Err(Error::invalid("step_nn", "block size must be at least 1"));
    }
    if cols < b + 1 {
        return Err(Error::invalid(
            "step_nn",
            format!("need at least b+1 = {} columns, got {cols}", b + 1),
        ));
    }
    if rows < cols {
        return Err(Error::invalid(
            "step_nn",
            format!("working matrix must be tall: {rows}x{cols}"),
        ));
    }

    let y = power_sample(awork, b, q, rng)?;
    let (v, _) = householder_qr(&y);

    let mut t = awork.clone();
    v.apply_right_in_place(&mut t)?;

    let panel = t.block(0, rows, 0, b);
    let (u, r) = householder_qr(&panel);

    let mut updated = DenseMatrix::zeros(rows, cols);
    updated.set_block(0, 0, &r);
    let mut trailing = t.block(0, rows, b, cols);
    u.apply_left_transpose_in_place(&mut trailing)?;
    updated.set_block(0, b, &trailing);

    let ss_part = svd_values(&r)?;
    Ok((updated, ss_part))
}

/// Estimates all singular values of `a` by blocked randomized reduction.
///
/// The driver walks the diagonal in panels of `block_size` columns. Each
/// non-terminal panel is processed by [`step_nn`] on the trailing submatrix;
/// the final panel (at most `block_size` columns) goes straight to the exact
/// SVD of what remains. Matrices with more columns than rows are transposed
/// first; the spectrum is unchanged.
///
/// When `compute_bound` is set, the squared Frobenius norm of each step's
/// off-diagonal block row is accumulated on the fly. Those rows are final the
/// moment a step completes, so the bound needs no retained copy of the
/// reduced matrix.
pub fn rand_nn(a: &DenseMatrix, cfg: &RandNNConfig) -> Result<SpectrumEstimate> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::invalid("rand_nn", "empty matrix"));
    }
    if cfg.block_size < 1 {
        return Err(Error::invalid("rand_nn", "block size must be at least 1"));
    }
    if !cfg.early_stop_threshold.is_finite() || cfg.early_stop_threshold < 0.0 {
        return Err(Error::invalid(
            "rand_nn",
            format!(
                "early stop threshold must be finite and non-negative, got {}",
                cfg.early_stop_threshold
            ),
        ));
    }

    let mut work = if a.rows() < a.cols() {
        a.transposed()
    } else {
        a.clone()
    };
    let total = work.cols();
    let b = cfg.block_size;

    let mut rng = SeededRng::new(cfg.seed);
    let mut values: Vec<f64> = Vec::with_capacity(total);
    let mut bound_sq = 0.0f64;
    let mut blocks_processed = 0usize;
    let mut terminated_early = false;

    loop {
        let (rows, cols) = work.shape();
        if cols <= b {
            // Terminal panel: the whole remaining block column, exactly.
            let tail = svd_values(&work)?;
            values.extend_from_slice(&tail);
            blocks_processed += 1;
            break;
        }

        let (updated, ss_part) = step_nn(&work, b, cfg.power_rounds, &mut rng)?;
        blocks_processed += 1;
        if cfg.compute_bound {
            for j in b..cols {
                for i in 0..b {
                    let x = updated.get(i, j);
                    bound_sq += x * x;
                }
            }
        }
        let block_max = ss_part[0];
        values.extend_from_slice(&ss_part);

        if cfg.early_stop_threshold > 0.0 && block_max < cfg.early_stop_threshold {
            terminated_early = true;
            values.resize(total, 0.0);
            break;
        }

        work = updated.block(b, rows, b, cols);
    }

    debug_assert_eq!(values.len(), total);
    let bound_fro = if cfg.compute_bound && !terminated_early {
        Some(bound_sq.sqrt())
    } else {
        None
    };
    Ok(SpectrumEstimate {
        values,
        bound_fro,
        blocks_processed,
        terminated_early,
    })
}

/// Sum of the estimated singular values: the nuclear-norm estimate.
pub fn nuclear_norm(est: &SpectrumEstimate) -> f64 {
    est.values.iter().sum()
}

/// Schatten p-norm of the estimated spectrum, (sum of sigma^p)^(1/p).
/// Requires p >= 1; p = 1 reduces to the nuclear norm exactly.
pub fn schatten_p(est: &SpectrumEstimate, p: f64) -> Result<f64> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::invalid(
            "schatten_p",
            format!("p must be finite and >= 1, got {p}"),
        ));
    }
    if p == 1.0 {
        return Ok(nuclear_norm(est));
    }
    let sum: f64 = est.values.iter().map(|v| v.powf(p)).sum();
    Ok(sum.powf(1.0 / p))
}

/// A-posteriori check of the spectrum error bound.
///
/// Sorts the estimated values non-increasingly, forms the l2 norm of the
/// difference against `true_vals` (which must already be sorted
/// non-increasingly), and compares it to the estimate's accumulated bound.
/// Returns `(lhs, bound_fro, holds)` where `holds` allows a relative slack
/// of 1e-10 on top of the bound.
pub fn error_bound_check(
    true_vals: &[f64],
    est: &SpectrumEstimate,
) -> Result<(f64, f64, bool)> {
    if true_vals.len() != est.values.len() {
        return Err(Error::invalid(
            "error_bound_check",
            format!(
                "length mismatch: {} true values vs {} estimates",
                true_vals.len(),
                est.values.len()
            ),
        ));
    }
    if true_vals.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::invalid(
            "error_bound_check",
            "true values must be sorted non-increasing",
        ));
    }
    let bound = est.bound_fro.ok_or_else(|| {
        Error::invalid(
            "error_bound_check",
            "estimate carries no comparable bound (not computed or run stopped early)",
        )
    })?;
    let mut sorted = est.values.clone();
    sorted.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    let lhs = true_vals
        .iter()
        .zip(&sorted)
        .map(|(t, e)| (t - e) * (t - e))
        .sum::<f64>()
        .sqrt();
    let holds = lhs <= bound + 1e-10 * (1.0 + bound);
    Ok((lhs, bound, holds))
}

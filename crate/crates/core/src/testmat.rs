use crate::error::{Error, Result};
use crate::householder::householder_qr;
use crate::matrix::DenseMatrix;
use crate::rng::{gaussian_matrix, SeededRng};

/// Validated singular-value prescription: finite, non-negative entries in
/// non-increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSpec {
    values: Vec<f64>,
}

impl SpectrumSpec {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("SpectrumSpec", "empty spectrum"));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::invalid(
                    "SpectrumSpec",
                    format!("entry {i} is {v}; values must be finite and non-negative"),
                ));
            }
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(
                "SpectrumSpec",
                "values must be sorted non-increasing",
            ));
        }
        Ok(SpectrumSpec { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sum of the prescribed values: the exact nuclear norm of any matrix
    /// built from this spectrum.
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Random `m x n` matrix with exactly the prescribed singular values.
///
/// Both orthogonal factors come from QR of seeded Gaussian matrices (with the
/// nonnegative-diagonal convention this samples the orthogonal group
/// uniformly), so the construction is a pure function of `(spec, m, seed)`.
pub fn prescribed_spectrum_matrix(
    spec: &SpectrumSpec,
    m: usize,
    seed: u64,
) -> Result<DenseMatrix> {
    let n = spec.len();
    if m < n {
        return Err(Error::invalid(
            "prescribed_spectrum_matrix",
            format!("row count {m} is smaller than spectrum length {n}"),
        ));
    }
    let mut rng = SeededRng::new(seed);
    let gu = gaussian_matrix(m, n, &mut rng);
    let (qu, _) = householder_qr(&gu);
    // U * diag(spec): scale the thin orthonormal columns directly.
    let mut a = qu.q_columns(n);
    for (j, sigma) in spec.values().iter().enumerate() {
        for v in a.col_mut(j) {
            *v *= sigma;
        }
    }
    let gv = gaussian_matrix(n, n, &mut rng);
    let (qv, _) = householder_qr(&gv);
    qv.apply_right_transpose_in_place(&mut a)?;
    Ok(a)
}

/// Logistic S-curve spectrum: values hover near 1, fall off around the
/// midpoint, and level out at 1e-6.
///
/// sigma_i = 1e-6 + (1 - 1e-6) / (1 + exp(alpha * (i - n/2))) for i = 1..n,
/// with alpha = 40/n so the curve has flattened to within 1% of the 1e-6
/// floor by i = n.
pub fn s_shaped_spectrum(n: usize) -> Result<SpectrumSpec> {
    if n < 3 {
        return Err(Error::invalid(
            "s_shaped_spectrum",
            format!("n = {n} is too small; need n >= 3"),
        ));
    }
    let floor = 1e-6;
    let alpha = 40.0 / n as f64;
    let mid = n as f64 / 2.0;
    let values: Vec<f64> = (1..=n)
        .map(|i| floor + (1.0 - floor) / (1.0 + (alpha * (i as f64 - mid)).exp()))
        .collect();
    SpectrumSpec::new(values)
}

/// Nystrom discretization of the single-layer potential on the unit circle.
///
/// Nodes s_i = 2*pi*i/n, kernel -(1/2pi) * log|x(s) - x(t)| with the chord
/// length 2*sin(|s-t|/2), uniform trapezoidal weights 2*pi/n. The diagonal
/// replaces the log singularity by the finite value -log(n), which makes
/// every row sum exactly match the vanishing continuum integral (the unit
/// circle has logarithmic capacity one), so the matrix carries a near-zero
/// singular value and is strongly ill-conditioned.
pub fn bie_single_layer_matrix(n: usize) -> Result<DenseMatrix> {
    if n < 16 || n % 2 != 0 {
        return Err(Error::invalid(
            "bie_single_layer_matrix",
            format!("n = {n}; need an even n >= 16"),
        ));
    }
    let nf = n as f64;
    // Kernel value as a function of index distance d = 0..n/2; shared between
    // (i, j) and (j, i) so the matrix is symmetric to the last bit.
    let mut f = vec![0.0f64; n / 2 + 1];
    f[0] = nf.ln() / nf;
    for (d, fd) in f.iter_mut().enumerate().skip(1) {
        let chord = 2.0 * (std::f64::consts::PI * d as f64 / nf).sin();
        *fd = -chord.ln() / nf;
    }
    let mut a = DenseMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            let k = i.abs_diff(j);
            let d = k.min(n - k);
            a.set(i, j, f[d]);
        }
    }
    Ok(a)
}

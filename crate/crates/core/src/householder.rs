use crate::error::{Error, Result};
use crate::matrix::{axpy, DenseMatrix};
use rayon::prelude::*;

/// One Householder reflection H = I - tau * v * v^T acting on rows
/// `offset..base_dim`. The stored vector is normalized so `v[0] == 1`.
#[derive(Debug, Clone)]
pub struct Reflector {
    offset: usize,
    v: Vec<f64>,
    tau: f64,
}

/// Implicit orthogonal factor: an ordered product of Householder
/// reflections, Q = H_0 * H_1 * ... * H_{p-1}, never materialized unless a
/// caller asks for explicit columns.
#[derive(Debug, Clone)]
pub struct ReflectorSet {
    base_dim: usize,
    reflectors: Vec<Reflector>,
}

/// Builds the reflector that maps `x` to `beta * e_1` with `beta >= 0`.
///
/// The sign-sensitive entry `v_0 = x_0 - beta` is computed without
/// cancellation: when `x_0 > 0` it is rewritten as
/// `-(sum of squared tail) / (x_0 + beta)`.
fn reflector_from_column(x: &[f64]) -> (Vec<f64>, f64, f64) {
    let x0 = x[0];
    let tail_sq: f64 = x[1..].iter().map(|v| v * v).sum();
    if tail_sq == 0.0 {
        let mut v = vec![0.0; x.len()];
        v[0] = 1.0;
        // Nothing below the diagonal; at most flip the sign of x0.
        return if x0 >= 0.0 {
            (v, 0.0, x0)
        } else {
            (v, 2.0, -x0)
        };
    }
    let beta = (x0 * x0 + tail_sq).sqrt();
    let v0 = if x0 <= 0.0 {
        x0 - beta
    } else {
        -tail_sq / (x0 + beta)
    };
    let tau = -v0 / beta;
    let mut v = Vec::with_capacity(x.len());
    v.push(1.0);
    for xi in &x[1..] {
        v.push(xi / v0);
    }
    (v, tau, beta)
}

/// Householder QR factorization A = Q * R.
///
/// Returns the implicit Q and the `min(m, n) x n` upper-triangular (or
/// upper-trapezoidal) factor R. Reflections are chosen so every diagonal
/// entry of R is nonnegative, and entries below the diagonal of R are exact
/// zeros by construction.
pub fn householder_qr(a: &DenseMatrix) -> (ReflectorSet, DenseMatrix) {
    let (m, n) = a.shape();
    assert!(m >= 1 && n >= 1, "householder_qr needs a nonempty matrix");
    let p = m.min(n);
    let mut work = a.clone();
    let mut reflectors = Vec::with_capacity(p);

    for k in 0..p {
        let (v, tau, beta) = reflector_from_column(&work.col(k)[k..m]);
        work.set(k, k, beta);
        let refl = Reflector { offset: k, v, tau };
        if tau != 0.0 {
            for j in k + 1..n {
                apply_reflector_to_column(&refl, work.col_mut(j));
            }
        }
        reflectors.push(refl);
    }

    let mut r = DenseMatrix::zeros(p, n);
    for j in 0..n {
        let upper = j.min(p - 1);
        for i in 0..=upper {
            r.set(i, j, work.get(i, j));
        }
    }
    (ReflectorSet { base_dim: m, reflectors }, r)
}

/// Applies H to one column of length `base_dim`: `col -= tau * (v . col) * v`.
#[inline]
fn apply_reflector_to_column(r: &Reflector, col: &mut [f64]) {
    let seg = &mut col[r.offset..];
    let mut s = seg[0];
    s += crate::matrix::dot(&r.v[1..], &seg[1..]);
    let t = r.tau * s;
    seg[0] -= t;
    axpy(-t, &r.v[1..], &mut seg[1..]);
}

// Column count below which per-reflector parallel dispatch is not worth it.
const PAR_MIN_COLS: usize = 64;

impl ReflectorSet {
    /// Dimension of the square orthogonal matrix this set represents.
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn len(&self) -> usize {
        self.reflectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reflectors.is_empty()
    }

    fn check_left(&self, b: &DenseMatrix) -> Result<()> {
        if b.rows() != self.base_dim {
            return Err(Error::shape(
                "apply_q",
                (self.base_dim, self.base_dim),
                b.shape(),
            ));
        }
        Ok(())
    }

    fn check_right(&self, b: &DenseMatrix) -> Result<()> {
        if b.cols() != self.base_dim {
            return Err(Error::shape(
                "apply_q",
                b.shape(),
                (self.base_dim, self.base_dim),
            ));
        }
        Ok(())
    }

    fn apply_left_one(&self, r: &Reflector, b: &mut DenseMatrix) {
        if r.tau == 0.0 {
            return;
        }
        let rows = b.rows();
        let cols = b.cols();
        if cols >= PAR_MIN_COLS && rayon::current_num_threads() > 1 {
            b.data_mut()
                .par_chunks_mut(rows)
                .for_each(|col| apply_reflector_to_column(r, col));
        } else {
            for j in 0..cols {
                apply_reflector_to_column(r, b.col_mut(j));
            }
        }
    }

    /// In-place Q^T * B: reflections applied in factorization order.
    pub fn apply_left_transpose_in_place(&self, b: &mut DenseMatrix) -> Result<()> {
        self.check_left(b)?;
        for r in &self.reflectors {
            self.apply_left_one(r, b);
        }
        Ok(())
    }

    /// In-place Q * B: reflections applied in reverse order.
    pub fn apply_left_in_place(&self, b: &mut DenseMatrix) -> Result<()> {
        self.check_left(b)?;
        for r in self.reflectors.iter().rev() {
            self.apply_left_one(r, b);
        }
        Ok(())
    }

    /// In-place B * H for one reflector: B -= tau * (B v) v^T.
    fn apply_right_one(&self, r: &Reflector, b: &mut DenseMatrix) {
        if r.tau == 0.0 {
            return;
        }
        let rows = b.rows();
        // y = B[:, offset..] * v, accumulated column by column in fixed order.
        let mut y = vec![0.0; rows];
        for (c, vc) in r.v.iter().enumerate() {
            if *vc != 0.0 {
                axpy(*vc, b.col(r.offset + c), &mut y);
            }
        }
        for (c, vc) in r.v.iter().enumerate() {
            let coeff = r.tau * vc;
            if coeff != 0.0 {
                axpy(-coeff, &y, b.col_mut(r.offset + c));
            }
        }
    }

    /// In-place B * Q.
    pub fn apply_right_in_place(&self, b: &mut DenseMatrix) -> Result<()> {
        self.check_right(b)?;
        for r in &self.reflectors {
            self.apply_right_one(r, b);
        }
        Ok(())
    }

    /// In-place B * Q^T.
    pub fn apply_right_transpose_in_place(&self, b: &mut DenseMatrix) -> Result<()> {
        self.check_right(b)?;
        for r in self.reflectors.iter().rev() {
            self.apply_right_one(r, b);
        }
        Ok(())
    }

    /// First `k` columns of Q as a dense `base_dim x k` matrix.
    pub fn q_columns(&self, k: usize) -> DenseMatrix {
        assert!(k <= self.base_dim);
        let mut padded = DenseMatrix::zeros(self.base_dim, k);
        for i in 0..k {
            padded.set(i, i, 1.0);
        }
        self.apply_left_in_place(&mut padded)
            .expect("identity pad conforms by construction");
        padded
    }

    /// Q as a dense square matrix. Intended for tests and small problems.
    pub fn dense_q(&self) -> DenseMatrix {
        self.q_columns(self.base_dim)
    }
}

/// Applies the implicit orthogonal factor without materializing it:
/// returns Q^T * B when `from_left` is true, otherwise B * Q.
pub fn apply_q_transpose(
    q: &ReflectorSet,
    b: &DenseMatrix,
    from_left: bool,
) -> Result<DenseMatrix> {
    let mut out = b.clone();
    if from_left {
        q.apply_left_transpose_in_place(&mut out)?;
    } else {
        q.apply_right_in_place(&mut out)?;
    }
    Ok(out)
}

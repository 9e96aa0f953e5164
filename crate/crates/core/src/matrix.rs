use crate::error::{Error, Result};
use rayon::prelude::*;

/// Dense real matrix stored column-major in a contiguous `Vec<f64>`.
///
/// Entry `(i, j)` lives at `data[j * rows + i]`, so a column is a contiguous
/// slice and all hot kernels walk columns.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Wraps an existing column-major buffer. The buffer length must equal
    /// `rows * cols`.
    pub fn from_column_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(
                "from_column_major",
                format!(
                    "buffer holds {} entries but shape {}x{} needs {}",
                    data.len(),
                    rows,
                    cols,
                    rows * cols
                ),
            ));
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    /// Builds from a row-major nested slice; handy in tests.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = DenseMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row in from_rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[j * self.rows + i] = v;
    }

    /// Column `j` as a contiguous slice.
    #[inline]
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Copies the sub-block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> DenseMatrix {
        assert!(r0 <= r1 && r1 <= self.rows, "row range out of bounds");
        assert!(c0 <= c1 && c1 <= self.cols, "column range out of bounds");
        let mut out = DenseMatrix::zeros(r1 - r0, c1 - c0);
        for j in 0..c1 - c0 {
            let src = &self.col(c0 + j)[r0..r1];
            out.col_mut(j).copy_from_slice(src);
        }
        out
    }

    /// Writes `sub` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, sub: &DenseMatrix) {
        assert!(r0 + sub.rows <= self.rows && c0 + sub.cols <= self.cols);
        let rows = self.rows;
        for j in 0..sub.cols {
            let dst = &mut self.data[(c0 + j) * rows + r0..(c0 + j) * rows + r0 + sub.rows];
            dst.copy_from_slice(sub.col(j));
        }
    }

    /// Out-of-place transpose.
    pub fn transposed(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            let src = self.col(j);
            for i in 0..self.rows {
                out.set(j, i, src[i]);
            }
        }
        out
    }

    /// True when every entry is a finite number.
    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Largest absolute entry-wise difference; shapes must match.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in max_abs_diff");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[j * self.rows + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[j * self.rows + i]
    }
}

/// Dot product with four-way accumulation so the loop vectorizes.
#[inline]
pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let mut acc = [0.0f64; 4];
    let xc = x.chunks_exact(4);
    let yc = y.chunks_exact(4);
    let xr = xc.remainder();
    let yr = yc.remainder();
    for (xs, ys) in xc.zip(yc) {
        acc[0] += xs[0] * ys[0];
        acc[1] += xs[1] * ys[1];
        acc[2] += xs[2] * ys[2];
        acc[3] += xs[3] * ys[3];
    }
    let mut tail = 0.0;
    for (xv, yv) in xr.iter().zip(yr) {
        tail += xv * yv;
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// `y += alpha * x`.
#[inline]
pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yv, xv) in y.iter_mut().zip(x) {
        *yv += alpha * xv;
    }
}

/// Frobenius norm: square root of the sum of squared entries.
pub fn frobenius_norm(a: &DenseMatrix) -> f64 {
    dot(a.data(), a.data()).sqrt()
}

// Below this much work matmul stays sequential; the parallel split pays for
// itself only on large products.
const PAR_MIN_FLOPS: usize = 1 << 22;

/// General dense product `op(A) * op(B)` where each operand is optionally
/// transposed. The inner dimensions must conform.
///
/// Columns of the result are computed independently with a fixed accumulation
/// order, so the output is bit-identical for any thread count.
pub fn matmul(
    a: &DenseMatrix,
    b: &DenseMatrix,
    transpose_a: bool,
    transpose_b: bool,
) -> Result<DenseMatrix> {
    let (m, ka) = if transpose_a {
        (a.cols, a.rows)
    } else {
        (a.rows, a.cols)
    };
    let (kb, n) = if transpose_b {
        (b.cols, b.rows)
    } else {
        (b.rows, b.cols)
    };
    if ka != kb {
        return Err(Error::shape("matmul", a.shape(), b.shape()));
    }
    let k = ka;

    let mut c = DenseMatrix::zeros(m, n);
    if m == 0 || n == 0 {
        return Ok(c);
    }

    let flops = 2usize.saturating_mul(m).saturating_mul(n).saturating_mul(k);
    let threads = rayon::current_num_threads();
    if flops >= PAR_MIN_FLOPS && threads > 1 && n > 1 {
        let cols_per_chunk = n.div_ceil(4 * threads).max(1);
        c.data
            .par_chunks_mut(cols_per_chunk * m)
            .enumerate()
            .for_each(|(chunk_idx, chunk)| {
                let j0 = chunk_idx * cols_per_chunk;
                fill_columns(chunk, j0, m, k, a, b, transpose_a, transpose_b);
            });
    } else {
        fill_columns(&mut c.data, 0, m, k, a, b, transpose_a, transpose_b);
    }
    Ok(c)
}

/// Fills columns `j0..` of the output held in `c` (a whole number of
/// column slices of height `m`).
fn fill_columns(
    c: &mut [f64],
    j0: usize,
    m: usize,
    k: usize,
    a: &DenseMatrix,
    b: &DenseMatrix,
    transpose_a: bool,
    transpose_b: bool,
) {
    let local_cols = c.len() / m;
    for jl in 0..local_cols {
        let j = j0 + jl;
        let cj = &mut c[jl * m..(jl + 1) * m];
        match (transpose_a, transpose_b) {
            (false, false) => {
                for p in 0..k {
                    axpy(b.get(p, j), a.col(p), cj);
                }
            }
            (true, false) => {
                let bj = b.col(j);
                for (i, out) in cj.iter_mut().enumerate() {
                    *out = dot(a.col(i), bj);
                }
            }
            (false, true) => {
                for p in 0..k {
                    axpy(b.get(j, p), a.col(p), cj);
                }
            }
            (true, true) => {
                for (i, out) in cj.iter_mut().enumerate() {
                    let ai = a.col(i);
                    let mut s = 0.0;
                    for p in 0..k {
                        s += ai[p] * b.get(j, p);
                    }
                    *out = s;
                }
            }
        }
    }
}

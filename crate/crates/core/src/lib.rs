//! Randomized blocked estimation of singular-value spectra.
//!
//! The centerpiece is [`rand_nn`]: a blocked two-sided orthogonal reduction
//! that estimates every singular value of a dense real matrix at roughly the
//! cost of a handful of matrix products per panel, together with an
//! a-posteriori Frobenius-norm bound on the l2 error of the whole estimated
//! spectrum. On top of the estimate sit [`nuclear_norm`] and the general
//! [`schatten_p`] norms.
//!
//! Supporting kernels are self-contained: a column-major [`DenseMatrix`],
//! Householder QR with implicit orthogonal factors ([`householder_qr`],
//! [`ReflectorSet`]), a one-sided Jacobi [`svd_values`] used as the exact
//! reference, and a deterministic seeded Gaussian source ([`SeededRng`]).
//! Reproducibility is a hard guarantee throughout: every randomized routine
//! is a pure function of its inputs and a seed.
//!
//! The [`testmat`] module builds the structured matrices used to exercise
//! the estimator: prescribed-spectrum factors, a logistic S-curve spectrum,
//! and an ill-conditioned boundary-integral discretization.

mod engine;
mod error;
mod householder;
mod matrix;
mod rng;
mod svd;
pub mod testmat;

pub use engine::{
    error_bound_check, nuclear_norm, power_sample, rand_nn, schatten_p, step_nn, RandNNConfig,
    SpectrumEstimate,
};
pub use error::{Error, Result};
pub use householder::{apply_q_transpose, householder_qr, Reflector, ReflectorSet};
pub use matrix::{frobenius_norm, matmul, DenseMatrix};
pub use rng::{gaussian_matrix, SeededRng};
pub use svd::svd_values;

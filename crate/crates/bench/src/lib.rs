//! Shared fixtures for the criterion benchmarks.

use nucnorm_core::testmat::{prescribed_spectrum_matrix, SpectrumSpec};
use nucnorm_core::{gaussian_matrix, DenseMatrix, SeededRng};

/// Square Gaussian matrix with a fixed seed derived from the size.
pub fn gaussian_square(n: usize) -> DenseMatrix {
    gaussian_matrix(n, n, &mut SeededRng::new(1000 + n as u64))
}

/// Square matrix with a geometric spectrum, fixed seed per size.
pub fn geometric_square(n: usize) -> DenseMatrix {
    let values: Vec<f64> = (1..=n).map(|i| 0.97f64.powi(i as i32)).collect();
    let spec = SpectrumSpec::new(values).expect("valid spectrum");
    prescribed_spectrum_matrix(&spec, n, 2000 + n as u64).expect("square build")
}

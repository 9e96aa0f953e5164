//! On-disk matrix container and CSV emission.
//!
//! Layout: magic "RNNM", format version u32, rows u64, cols u64, then
//! rows*cols little-endian real64 payload in column-major order. Everything
//! is validated on read so downstream code never touches a malformed file.

use std::fs;
use std::io;
use std::path::Path;

use nucnorm_core::DenseMatrix;

const MAGIC: [u8; 4] = *b"RNNM";
const VERSION: u32 = 1;
const HEADER_LEN: usize = 24;

pub fn write_matrix(path: &Path, a: &DenseMatrix) -> io::Result<()> {
    let mut buf = Vec::with_capacity(HEADER_LEN + a.data().len() * 8);
    buf.extend_from_slice(&MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(a.rows() as u64).to_le_bytes());
    buf.extend_from_slice(&(a.cols() as u64).to_le_bytes());
    for v in a.data() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    fs::write(path, buf)
}

pub fn read_matrix(path: &Path) -> io::Result<DenseMatrix> {
    let bytes = fs::read(path)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    let fail = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
    if bytes.len() < HEADER_LEN {
        return Err(fail(format!("{}: truncated header", path.display())));
    }
    if bytes[0..4] != MAGIC {
        return Err(fail(format!("{}: not a matrix file (bad magic)", path.display())));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(fail(format!(
            "{}: unsupported format version {version}",
            path.display()
        )));
    }
    let rows = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let cols = u64::from_le_bytes(bytes[16..24].try_into().unwrap());
    if rows == 0 || cols == 0 {
        return Err(fail(format!("{}: empty matrix", path.display())));
    }
    let count = rows
        .checked_mul(cols)
        .filter(|c| *c <= (usize::MAX / 8) as u64)
        .ok_or_else(|| fail(format!("{}: dimension overflow", path.display())))?;
    let expected = HEADER_LEN + count as usize * 8;
    if bytes.len() != expected {
        return Err(fail(format!(
            "{}: payload is {} bytes, header promises {}",
            path.display(),
            bytes.len() - HEADER_LEN,
            expected - HEADER_LEN
        )));
    }
    let mut data = Vec::with_capacity(count as usize);
    for chunk in bytes[HEADER_LEN..].chunks_exact(8) {
        let v = f64::from_le_bytes(chunk.try_into().unwrap());
        if !v.is_finite() {
            return Err(fail(format!("{}: non-finite entry {v}", path.display())));
        }
        data.push(v);
    }
    DenseMatrix::from_column_major(rows as usize, cols as usize, data)
        .map_err(|e| fail(format!("{}: {e}", path.display())))
}

/// 17 significant digits: enough to reproduce every real64 bit-exactly.
pub fn format_value(v: f64) -> String {
    format!("{:.16e}", v)
}

pub fn write_values_csv(path: &Path, values: &[f64]) -> io::Result<()> {
    let mut out = String::with_capacity(values.len() * 24);
    for v in values {
        out.push_str(&format_value(*v));
        out.push('\n');
    }
    fs::write(path, out)
}

//! Cloud file formats.
//!
//! * **CSV** — comma-separated decimal floats, one point per row. A first
//!   row that fails numeric parse is treated as a header and skipped.
//! * **MTDB** — bit-exact binary: magic `MTDB`, version byte `0x01`,
//!   little-endian `u32` point count, little-endian `u32` dimension, then
//!   `n·D` little-endian IEEE-754 doubles, row-major.
//!
//! Loading sniffs the magic bytes, so both formats are accepted anywhere a
//! cloud file is expected.

use std::fs;
use std::path::Path;

use mtopdiv::PointCloud;

use crate::CliError;

pub const MTDB_MAGIC: [u8; 4] = *b"MTDB";
pub const MTDB_VERSION: u8 = 0x01;
const MTDB_HEADER_LEN: usize = 4 + 1 + 4 + 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CloudFormat {
    Csv,
    Mtdb,
}

/// 17-significant-digit decimal; parses back to the identical `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn load_cloud(path: &Path) -> Result<PointCloud, CliError> {
    let bytes =
        fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    if bytes.starts_with(&MTDB_MAGIC) {
        parse_mtdb(&bytes, path)
    } else {
        parse_csv(&bytes, path)
    }
}

pub fn save_cloud(path: &Path, cloud: &PointCloud, format: CloudFormat) -> Result<(), CliError> {
    let bytes = match format {
        CloudFormat::Csv => {
            let mut s = String::new();
            for row in cloud.rows() {
                let fields: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
                s.push_str(&fields.join(","));
                s.push('\n');
            }
            s.into_bytes()
        }
        CloudFormat::Mtdb => {
            let mut b = Vec::with_capacity(MTDB_HEADER_LEN + cloud.as_slice().len() * 8);
            b.extend_from_slice(&MTDB_MAGIC);
            b.push(MTDB_VERSION);
            b.extend_from_slice(&(cloud.len() as u32).to_le_bytes());
            b.extend_from_slice(&(cloud.dim() as u32).to_le_bytes());
            for &x in cloud.as_slice() {
                b.extend_from_slice(&x.to_le_bytes());
            }
            b
        }
    };
    fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_mtdb(bytes: &[u8], path: &Path) -> Result<PointCloud, CliError> {
    let err = |msg: String| CliError::Parse(format!("{}: {msg}", path.display()));
    if bytes.len() < MTDB_HEADER_LEN {
        return Err(err(format!(
            "MTDB header truncated at byte {}",
            bytes.len()
        )));
    }
    if bytes[4] != MTDB_VERSION {
        return Err(err(format!("unsupported MTDB version {}", bytes[4])));
    }
    let n = u32::from_le_bytes(bytes[5..9].try_into().unwrap()) as usize;
    let dim = u32::from_le_bytes(bytes[9..13].try_into().unwrap()) as usize;
    if dim == 0 {
        return Err(err("MTDB dimension must be at least 1".into()));
    }
    let expected = MTDB_HEADER_LEN + n * dim * 8;
    if bytes.len() < expected {
        return Err(err(format!(
            "MTDB payload truncated: expected {expected} bytes, found {}",
            bytes.len()
        )));
    }
    if bytes.len() > expected {
        return Err(err(format!(
            "{} trailing bytes after MTDB payload",
            bytes.len() - expected
        )));
    }
    let data: Vec<f64> = bytes[MTDB_HEADER_LEN..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    PointCloud::new(data, n, dim).map_err(|e| err(e.to_string()))
}

fn parse_csv(bytes: &[u8], path: &Path) -> Result<PointCloud, CliError> {
    let err = |msg: String| CliError::Parse(format!("{}: {msg}", path.display()));
    let text = std::str::from_utf8(bytes).map_err(|e| err(format!("not UTF-8: {e}")))?;

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut first_data_row_seen = false;
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        match parsed {
            Ok(row) => {
                if let Some(first) = rows.first() {
                    if row.len() != first.len() {
                        return Err(err(format!(
                            "line {}: {} fields, expected {}",
                            idx + 1,
                            row.len(),
                            first.len()
                        )));
                    }
                }
                rows.push(row);
                first_data_row_seen = true;
            }
            Err(e) => {
                if first_data_row_seen || idx > 0 {
                    return Err(err(format!("line {}: {e}", idx + 1)));
                }
                // First row with non-numeric content: header, skipped.
            }
        }
    }
    if rows.is_empty() {
        return Err(err("no data rows".into()));
    }
    PointCloud::from_rows(&rows).map_err(|e| err(e.to_string()))
}

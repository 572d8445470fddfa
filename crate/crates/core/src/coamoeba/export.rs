//! CSV and ASCII PLY writers for point clouds.

use std::io::Write;

use super::PointCloud;
use crate::error::{Error, Result};

/// Writes `theta_1,...,theta_n` followed by one row per point, with 17
/// significant digits. Angles are in radians unless `degrees` is set.
pub fn write_csv<W: Write>(cloud: &PointCloud, mut out: W, degrees: bool) -> Result<()> {
    let header: Vec<String> = (1..=cloud.rank()).map(|k| format!("theta_{k}")).collect();
    writeln!(out, "{}", header.join(","))?;
    let mut line = String::new();
    for p in cloud.iter() {
        line.clear();
        for (k, &a) in p.iter().enumerate() {
            if k > 0 {
                line.push(',');
            }
            let v = if degrees { a.to_degrees() } else { a };
            line.push_str(&format!("{v:.16e}"));
        }
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(())
}

/// Writes an ASCII PLY file with one vertex per point. Clouds of rank 1 or
/// 2 are padded with zero coordinates.
pub fn write_ply<W: Write>(cloud: &PointCloud, mut out: W, degrees: bool) -> Result<()> {
    if cloud.rank() > 3 {
        return Err(Error::InvalidArgument(format!(
            "PLY export needs rank at most 3, got {}",
            cloud.rank()
        )));
    }
    writeln!(out, "ply")?;
    writeln!(out, "format ascii 1.0")?;
    writeln!(out, "comment {}", cloud.provenance().replace('\n', " "))?;
    writeln!(out, "element vertex {}", cloud.len())?;
    for axis in ["x", "y", "z"] {
        writeln!(out, "property double {axis}")?;
    }
    writeln!(out, "end_header")?;
    for p in cloud.iter() {
        let mut xyz = [0.0f64; 3];
        for (k, &a) in p.iter().enumerate() {
            xyz[k] = if degrees { a.to_degrees() } else { a };
        }
        writeln!(out, "{:.16e} {:.16e} {:.16e}", xyz[0], xyz[1], xyz[2])?;
    }
    out.flush()?;
    Ok(())
}

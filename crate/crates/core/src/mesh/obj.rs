use std::io::Write;

use super::{MeshError, TriMesh};
use crate::scalar::Scalar;

/// ASCII OBJ for viewers: one `o` group per shell, 9 significant digits, inches.
pub fn write_obj<S: Scalar, W: Write>(shells: &[TriMesh<S>], out: &mut W) -> Result<(), MeshError> {
    let mut base = 1u64;
    for (i, shell) in shells.iter().enumerate() {
        writeln!(out, "o shell_{i}")?;
        for v in &shell.vertices {
            writeln!(out, "v {:.8e} {:.8e} {:.8e}", v.x.as_f64(), v.y.as_f64(), v.z.as_f64())?;
        }
        for t in &shell.triangles {
            writeln!(out, "f {} {} {}", base + t[0] as u64, base + t[1] as u64, base + t[2] as u64)?;
        }
        base += shell.vertices.len() as u64;
    }
    Ok(())
}

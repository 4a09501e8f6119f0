use std::io::Write;

use super::{validate_mesh, MeshError, TriMesh};
use crate::scalar::Scalar;

pub const STL_HEADER_TAG: &str = concat!("interference-core ", env!("CARGO_PKG_VERSION"), " binary STL");

/// 80-byte header: fixed tag and version, then the optional note, zero padded.
/// Non-ASCII note characters become `?`.
pub fn stl_header(note: &str) -> [u8; 80] {
    let mut text = String::from(STL_HEADER_TAG);
    if !note.is_empty() {
        text.push_str(" | ");
        text.extend(note.chars().map(|c| if c.is_ascii() && !c.is_ascii_control() { c } else { '?' }));
    }
    let mut header = [0u8; 80];
    let bytes = text.as_bytes();
    let n = bytes.len().min(80);
    header[..n].copy_from_slice(&bytes[..n]);
    header
}

/// Writes shells (input order, triangles in generation order) as one binary STL.
/// Coordinates are multiplied by `unit_scale` (25.4 for inches to millimetres).
/// Returns the number of bytes written.
pub fn write_stl_binary<S: Scalar, W: Write>(
    shells: &[TriMesh<S>],
    unit_scale: S,
    note: &str,
    out: &mut W,
) -> Result<u64, MeshError> {
    for (i, shell) in shells.iter().enumerate() {
        let audit = validate_mesh(shell);
        if !audit.watertight {
            return Err(MeshError::NotWatertight {
                shell: i,
                boundary: audit.boundary_edges,
                nonmanifold: audit.nonmanifold_edges,
            });
        }
    }
    let count: u64 = shells.iter().map(|s| s.triangles.len() as u64).sum();
    let count32 = u32::try_from(count).map_err(|_| MeshError::TriangleOverflow { count })?;

    out.write_all(&stl_header(note))?;
    out.write_all(&count32.to_le_bytes())?;
    let mut facet = [0u8; 50];
    for shell in shells {
        for t in 0..shell.triangles.len() {
            let [a, b, c] = shell.corners(t);
            let n = (b - a).cross(c - a);
            let len = n.norm();
            let n = if len > S::zero() { n.scale(len.recip()) } else { n };
            let values = [n, a.scale(unit_scale), b.scale(unit_scale), c.scale(unit_scale)];
            for (k, v) in values.iter().enumerate() {
                for (j, x) in v.to_array().iter().enumerate() {
                    let off = 12 * k + 4 * j;
                    facet[off..off + 4].copy_from_slice(&(x.as_f64() as f32).to_le_bytes());
                }
            }
            facet[48..50].copy_from_slice(&0u16.to_le_bytes());
            out.write_all(&facet)?;
        }
    }
    Ok(84 + 50 * count)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn tetrahedron_is_284_bytes() {
        let mut buf = Vec::new();
        let n = write_stl_binary(&[tetrahedron()], 25.4, "", &mut buf).unwrap();
        assert_eq!(n, 284);
        assert_eq!(buf.len(), 284);
        assert_eq!(u32::from_le_bytes(buf[80..84].try_into().unwrap()), 4);
        assert!(buf[..80].starts_with(STL_HEADER_TAG.as_bytes()));
        assert!(!buf.starts_with(b"solid"));
    }

    #[test]
    fn refuses_open_shell() {
        let mut m = unit_box([0.0; 3], [1.0; 3]);
        m.triangles.pop();
        let err = write_stl_binary(&[tetrahedron(), m], 25.4, "", &mut Vec::new()).unwrap_err();
        assert!(matches!(err, MeshError::NotWatertight { shell: 1, boundary: 3, .. }));
    }

    #[test]
    fn header_note_truncated_and_padded() {
        let h = stl_header(&"x".repeat(200));
        assert!(h.iter().all(|&b| b != 0));
        let h = stl_header("seed é");
        let text = String::from_utf8_lossy(&h);
        assert!(text.contains("| seed ?"));
        assert_eq!(*h.last().unwrap(), 0);
    }

    #[test]
    fn deterministic_bytes() {
        let shells = [unit_box([0.0; 3], [1.0; 3]), tetrahedron()];
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_stl_binary(&shells, 25.4, "note", &mut a).unwrap();
        write_stl_binary(&shells, 25.4, "note", &mut b).unwrap();
        assert_eq!(a, b);
    }
}

//! Indexed triangle meshes, their audit, and fabrication export.

mod audit;
mod obj;
mod stl;

pub use audit::{validate_mesh, MeshAudit, DEGENERATE_AREA};
pub use obj::write_obj;
pub use stl::{stl_header, write_stl_binary, STL_HEADER_TAG};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::math::Vec3;
use crate::scalar::Scalar;

pub type TriIndex = [u32; 3];

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("triangle {triangle} references vertex {index} but the mesh has {len} vertices")]
    IndexOutOfRange { triangle: usize, index: u32, len: usize },
    #[error("triangle {triangle} repeats vertex index {index}")]
    RepeatedIndex { triangle: usize, index: u32 },
    #[error(
        "shell {shell} is not watertight ({boundary} boundary edges, {nonmanifold} non-manifold edges); export refused"
    )]
    NotWatertight { shell: usize, boundary: usize, nonmanifold: usize },
    #[error("{count} triangles exceed the 32-bit STL triangle counter")]
    TriangleOverflow { count: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Indexed triangle mesh. Coordinates are inches.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TriMesh<S: Scalar> {
    pub vertices: Vec<Vec3<S>>,
    pub triangles: Vec<TriIndex>,
}

impl<S: Scalar> TriMesh<S> {
    /// Checks index ranges and rejects triangles that repeat a vertex.
    pub fn new(vertices: Vec<Vec3<S>>, triangles: Vec<TriIndex>) -> Result<Self, MeshError> {
        let len = vertices.len();
        for (t, tri) in triangles.iter().enumerate() {
            for &i in tri {
                if i as usize >= len {
                    return Err(MeshError::IndexOutOfRange { triangle: t, index: i, len });
                }
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                let index = if tri[0] == tri[1] || tri[0] == tri[2] { tri[0] } else { tri[1] };
                return Err(MeshError::RepeatedIndex { triangle: t, index });
            }
        }
        Ok(Self { vertices, triangles })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn corners(&self, t: usize) -> [Vec3<S>; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a as usize], self.vertices[b as usize], self.vertices[c as usize]]
    }

    /// Axis-aligned bounds, `None` for a mesh without vertices.
    pub fn bounds(&self) -> Option<(Vec3<S>, Vec3<S>)> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(lo, hi), &v| (lo.min(v), hi.max(v))))
    }

    pub fn translate(&self, offset: Vec3<S>) -> Self {
        Self { vertices: self.vertices.iter().map(|&v| v + offset).collect(), triangles: self.triangles.clone() }
    }

    /// Appends `other` with index offsets. No welding.
    pub fn append(&mut self, other: &TriMesh<S>) {
        let offset = self.vertices.len() as u32;
        self.vertices.extend_from_slice(&other.vertices);
        self.triangles.extend(other.triangles.iter().map(|t| [t[0] + offset, t[1] + offset, t[2] + offset]));
    }

    pub fn cast<T: Scalar>(&self) -> TriMesh<T> {
        TriMesh {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vec3::new(T::lit(v.x.as_f64()), T::lit(v.y.as_f64()), T::lit(v.z.as_f64())))
                .collect(),
            triangles: self.triangles.clone(),
        }
    }
}

/// Concatenates shells into one buffer, offsetting indices; vertices are not welded.
pub fn merge_shells<S: Scalar>(shells: &[TriMesh<S>]) -> TriMesh<S> {
    let mut out = TriMesh {
        vertices: Vec::with_capacity(shells.iter().map(|s| s.vertices.len()).sum()),
        triangles: Vec::with_capacity(shells.iter().map(|s| s.triangles.len()).sum()),
    };
    for s in shells {
        out.append(s);
    }
    out
}

/// Rotates every vertex about the z axis by `angle_deg` (counterclockwise seen from +z).
pub fn rotate_about_z<S: Scalar>(m: &TriMesh<S>, angle_deg: S) -> TriMesh<S> {
    let reduced = angle_deg % S::lit(360.0);
    if reduced == S::zero() {
        return m.clone();
    }
    let (s, c) = reduced.deg_to_rad().sin_cos();
    TriMesh {
        vertices: m.vertices.iter().map(|v| Vec3::new(v.x * c - v.y * s, v.x * s + v.y * c, v.z)).collect(),
        triangles: m.triangles.clone(),
    }
}

/// Incremental mesh construction used by the generators.
#[derive(Debug, Default)]
pub(crate) struct MeshBuilder<S: Scalar> {
    mesh: TriMesh<S>,
}

impl<S: Scalar> MeshBuilder<S> {
    pub fn new() -> Self {
        Self { mesh: TriMesh { vertices: Vec::new(), triangles: Vec::new() } }
    }

    pub fn vertex(&mut self, p: Vec3<S>) -> u32 {
        self.mesh.vertices.push(p);
        (self.mesh.vertices.len() - 1) as u32
    }

    pub fn point(&self, i: u32) -> Vec3<S> {
        self.mesh.vertices[i as usize]
    }

    pub fn tri(&mut self, a: u32, b: u32, c: u32) {
        self.mesh.triangles.push([a, b, c]);
    }

    /// Quad `a b c d` in counterclockwise order as seen from outside.
    pub fn quad(&mut self, a: u32, b: u32, c: u32, d: u32) {
        self.tri(a, b, c);
        self.tri(a, c, d);
    }

    pub fn finish(self) -> TriMesh<S> {
        self.mesh
    }
}

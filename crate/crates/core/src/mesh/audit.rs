use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::TriMesh;
use crate::scalar::Scalar;

/// Triangles with area at or below this (square inches) count as degenerate.
pub const DEGENERATE_AREA: f64 = 1e-12;

/// Printability findings for one mesh. Computed from half-edge incidence counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshAudit {
    pub watertight: bool,
    pub consistent_winding: bool,
    pub degenerate_count: usize,
    pub shell_count: usize,
    /// Cubic inches; positive for outward winding.
    pub signed_volume: f64,
    /// Smallest per-shell signed volume. Negative means some shell is inside out.
    pub min_shell_volume: f64,
    pub euler_characteristic: i64,
    pub boundary_edges: usize,
    pub nonmanifold_edges: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub triangle_count: usize,
}

impl MeshAudit {
    /// Watertight, consistently wound, outward, and free of degenerate triangles.
    pub fn printable(&self) -> bool {
        self.watertight && self.consistent_winding && self.degenerate_count == 0 && self.min_shell_volume > 0.0
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

pub fn validate_mesh<S: Scalar>(m: &TriMesh<S>) -> MeshAudit {
    // undirected edge -> (uses as low->high, uses as high->low)
    let mut edges: HashMap<(u32, u32), (u32, u32)> = HashMap::with_capacity(m.triangles.len() * 2);
    let mut uf = UnionFind::new(m.vertices.len());
    let mut used = vec![false; m.vertices.len()];
    let mut degenerate_count = 0;
    let mut volume = 0.0;

    for (t, tri) in m.triangles.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            let entry = edges.entry((a.min(b), a.max(b))).or_insert((0, 0));
            if a < b {
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
            used[a as usize] = true;
        }
        uf.union(tri[0], tri[1]);
        uf.union(tri[1], tri[2]);

        let [p0, p1, p2] = m.corners(t).map(|p| p.to_array().map(Scalar::as_f64));
        let e1 = [p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]];
        let e2 = [p2[0] - p0[0], p2[1] - p0[1], p2[2] - p0[2]];
        let n = [e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2], e1[0] * e2[1] - e1[1] * e2[0]];
        let area = 0.5 * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if area <= DEGENERATE_AREA {
            degenerate_count += 1;
        }
        volume += signed_tet_volume(p0, p1, p2);
    }

    let mut boundary_edges = 0;
    let mut nonmanifold_edges = 0;
    let mut consistent_winding = true;
    for &(fwd, back) in edges.values() {
        match fwd + back {
            1 => boundary_edges += 1,
            2 => {}
            _ => nonmanifold_edges += 1,
        }
        if fwd > 1 || back > 1 {
            consistent_winding = false;
        }
    }

    // per-shell volumes, keyed by union-find root in first-seen order
    let mut shell_of_root: HashMap<u32, usize> = HashMap::new();
    let mut shell_volumes: Vec<f64> = Vec::new();
    for (t, tri) in m.triangles.iter().enumerate() {
        let root = uf.find(tri[0]);
        let next = shell_volumes.len();
        let idx = *shell_of_root.entry(root).or_insert(next);
        if idx == shell_volumes.len() {
            shell_volumes.push(0.0);
        }
        let [p0, p1, p2] = m.corners(t).map(|p| p.to_array().map(Scalar::as_f64));
        shell_volumes[idx] += signed_tet_volume(p0, p1, p2);
    }

    let vertex_count = used.iter().filter(|&&u| u).count();
    let edge_count = edges.len();
    let triangle_count = m.triangles.len();
    MeshAudit {
        watertight: boundary_edges == 0 && nonmanifold_edges == 0 && consistent_winding,
        consistent_winding,
        degenerate_count,
        shell_count: shell_volumes.len(),
        signed_volume: volume,
        min_shell_volume: shell_volumes.iter().copied().fold(f64::INFINITY, f64::min),
        euler_characteristic: vertex_count as i64 - edge_count as i64 + triangle_count as i64,
        boundary_edges,
        nonmanifold_edges,
        vertex_count,
        edge_count,
        triangle_count,
    }
}

fn signed_tet_volume(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])) / 6.0
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::rotate_about_z;
    use super::*;

    #[test]
    fn closed_box_is_sphere_like() {
        let a = validate_mesh(&unit_box([0.0; 3], [1.0, 2.0, 3.0]));
        assert!(a.watertight && a.consistent_winding && a.printable());
        assert_eq!((a.vertex_count, a.edge_count, a.triangle_count), (8, 18, 12));
        assert_eq!(a.euler_characteristic, 2);
        assert_eq!(a.shell_count, 1);
        assert!((a.signed_volume - 6.0).abs() < 1e-12);
    }

    #[test]
    fn open_box_has_four_boundary_edges() {
        let mut m = unit_box([0.0; 3], [1.0; 3]);
        m.triangles.truncate(10);
        let a = validate_mesh(&m);
        assert!(!a.watertight);
        assert_eq!(a.boundary_edges, 4);
    }

    #[test]
    fn flipped_triangle_breaks_winding() {
        let mut m = unit_box([0.0; 3], [1.0; 3]);
        m.triangles[3].swap(1, 2);
        let a = validate_mesh(&m);
        assert!(!a.consistent_winding);
        assert!(!a.watertight);
    }

    #[test]
    fn inverted_shell_detected() {
        let mut m = unit_box([0.0; 3], [1.0; 3]);
        for t in &mut m.triangles {
            t.swap(1, 2);
        }
        let a = validate_mesh(&m);
        assert!(a.watertight);
        assert!(a.signed_volume < 0.0);
        assert!(!a.printable());
    }

    #[test]
    fn degenerate_sliver_counted() {
        let mut m = tetrahedron();
        m.vertices[3] = m.vertices[3].scale(0.0) + crate::math::Vec3::new(0.5, 0.5, 0.0);
        assert!(validate_mesh(&m).degenerate_count >= 1);
    }

    #[test]
    fn audit_is_rotation_invariant() {
        let m = unit_box([0.3, 0.1, 0.0], [1.0, 2.0, 3.0]);
        let a = validate_mesh(&m);
        for deg in [13.0, 90.0, 217.5] {
            let b = validate_mesh(&rotate_about_z(&m, deg));
            assert_eq!(a.euler_characteristic, b.euler_characteristic);
            assert_eq!(a.watertight, b.watertight);
            assert!((a.signed_volume - b.signed_volume).abs() < 1e-9);
        }
    }
}

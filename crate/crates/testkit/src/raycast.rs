//! Brute-force segment and ray queries against triangle soups.

use super::{cross, dot, sub, Aabb, Point, Tri};

/// Möller–Trumbore. Returns the ray parameter of the hit, if any.
pub fn ray_triangle(o: Point, d: Point, t: &Tri) -> Option<f64> {
    let e1 = sub(t[1], t[0]);
    let e2 = sub(t[2], t[0]);
    let p = cross(d, e2);
    let det = dot(e1, p);
    if det.abs() < 1e-14 {
        return None;
    }
    let inv = 1.0 / det;
    let s = sub(o, t[0]);
    let u = dot(s, p) * inv;
    if !(0.0..=1.0).contains(&u) {
        return None;
    }
    let q = cross(s, e1);
    let v = dot(d, q) * inv;
    if v < 0.0 || u + v > 1.0 {
        return None;
    }
    Some(dot(e2, q) * inv)
}

const CHUNK: usize = 8;

struct Chunk {
    bounds: Aabb,
    tris: Vec<Tri>,
}

struct Group {
    bounds: Aabb,
    chunks: Vec<Chunk>,
}

/// Occlusion tester over a set of closed shells, culled per shell and per
/// run of eight consecutive triangles.
pub struct Occluder {
    groups: Vec<Group>,
}

impl Occluder {
    pub fn new(shells: &[Vec<Tri>]) -> Self {
        let groups = shells
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| Group {
                bounds: Aabb::of(s),
                chunks: s.chunks(CHUNK).map(|c| Chunk { bounds: Aabb::of(c), tris: c.to_vec() }).collect(),
            })
            .collect();
        Self { groups }
    }

    /// Whether the open segment from `a` to `b` crosses any triangle.
    pub fn blocks(&self, a: Point, b: Point) -> bool {
        let d = sub(b, a);
        self.groups.iter().any(|g| {
            g.bounds.hit_by_segment(a, d)
                && g.chunks.iter().any(|c| {
                    c.bounds.hit_by_segment(a, d)
                        && c.tris.iter().any(|t| ray_triangle(a, d, t).is_some_and(|s| s > 1e-12 && s < 1.0 - 1e-12))
                })
        })
    }
}

/// Parity point-in-solid test along a fixed oblique direction.
pub fn inside_solid(tris: &[Tri], p: Point) -> bool {
    let d = [0.573_576_436_351_046, 0.301_511_344_577_763_6, 0.761_939_990_867_428_5];
    let hits = tris.iter().filter(|t| ray_triangle(p, d, t).is_some_and(|s| s > 1e-12)).count();
    hits % 2 == 1
}

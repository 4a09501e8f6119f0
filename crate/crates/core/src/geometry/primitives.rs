//! Shell-building blocks shared by the ring, joint and base generators.

use spade::{ConstrainedDelaunayTriangulation, Point2, Triangulation};

use crate::math::Vec3;
use crate::mesh::MeshBuilder;
use crate::scalar::Scalar;

/// Revolves an (r, z) polyline about the z axis.
///
/// The polyline must follow the counterclockwise boundary of the solid's
/// cross-section (r as abscissa), so the solid lies to its left and the
/// generated faces point outward. Returns one vertex ring per profile point.
pub(crate) fn revolve<S: Scalar>(
    b: &mut MeshBuilder<S>,
    profile: &[(S, S)],
    closed: bool,
    segments: usize,
) -> Vec<Vec<u32>> {
    let rings: Vec<Vec<u32>> =
        profile.iter().map(|&(r, z)| circle(b, (S::zero(), S::zero()), r, z, segments)).collect();
    let spans = if closed { profile.len() } else { profile.len() - 1 };
    for i in 0..spans {
        let (lo, hi) = (&rings[i], &rings[(i + 1) % profile.len()]);
        for j in 0..segments {
            let k = (j + 1) % segments;
            // a = (i, j), b = (i+1, j), c = (i+1, j+1), d = (i, j+1)
            b.tri(lo[j], lo[k], hi[k]);
            b.tri(lo[j], hi[k], hi[j]);
        }
    }
    rings
}

/// Vertex ring of `segments` points on a horizontal circle, counterclockwise from +x.
pub(crate) fn circle<S: Scalar>(b: &mut MeshBuilder<S>, center: (S, S), radius: S, z: S, segments: usize) -> Vec<u32> {
    let n = S::from_count(segments as u64);
    (0..segments)
        .map(|j| {
            let a = S::TAU() * S::from_count(j as u64) / n;
            let p = Vec3::cylindrical(radius, a, z);
            b.vertex(Vec3::new(p.x + center.0, p.y + center.1, z))
        })
        .collect()
}

/// Quads between two matching counterclockwise rings (`bottom` below `top`).
/// `outward` chooses whether faces point away from or toward the ring axis.
pub(crate) fn wall<S: Scalar>(b: &mut MeshBuilder<S>, bottom: &[u32], top: &[u32], outward: bool) {
    let n = bottom.len();
    for j in 0..n {
        let k = (j + 1) % n;
        if outward {
            b.quad(bottom[j], bottom[k], top[k], top[j]);
        } else {
            b.quad(bottom[j], top[j], top[k], bottom[k]);
        }
    }
}

/// Triangle fan closing a convex counterclockwise ring; `up` selects a +z normal.
pub(crate) fn fan<S: Scalar>(b: &mut MeshBuilder<S>, ring: &[u32], up: bool) {
    let n = ring.len();
    let (mut cx, mut cy) = (S::zero(), S::zero());
    for &i in ring {
        let p = b.point(i);
        cx = cx + p.x;
        cy = cy + p.y;
    }
    let count = S::from_count(n as u64);
    let z = b.point(ring[0]).z;
    let c = b.vertex(Vec3::new(cx / count, cy / count, z));
    for j in 0..n {
        let k = (j + 1) % n;
        if up {
            b.tri(c, ring[j], ring[k]);
        } else {
            b.tri(c, ring[k], ring[j]);
        }
    }
}

/// Triangulates a horizontal planar region bounded by `outer` with `holes`,
/// reusing the existing boundary vertices so the face welds to its walls.
///
/// Uses a constrained Delaunay triangulation; ear clipping leaves near-zero-area
/// slivers where the bridges between many small holes run almost collinear.
pub(crate) fn planar_face<S: Scalar>(b: &mut MeshBuilder<S>, outer: &[u32], holes: &[&[u32]], up: bool) {
    let rings: Vec<&[u32]> = std::iter::once(outer).chain(holes.iter().copied()).collect();
    let xy = |b: &MeshBuilder<S>, i: u32| {
        let p = b.point(i);
        (p.x.as_f64(), p.y.as_f64())
    };
    let mut cdt = ConstrainedDelaunayTriangulation::<Point2<f64>>::new();
    let mut ids = Vec::new();
    let mut polys: Vec<Vec<(f64, f64)>> = Vec::with_capacity(rings.len());
    for ring in &rings {
        let pts: Vec<(f64, f64)> = ring.iter().map(|&i| xy(b, i)).collect();
        let handles: Vec<_> = pts
            .iter()
            .zip(ring.iter())
            .map(|(&(x, y), &id)| {
                let h = cdt.insert(Point2::new(x, y)).expect("finite boundary vertex");
                if h.index() >= ids.len() {
                    ids.resize(h.index() + 1, u32::MAX);
                }
                ids[h.index()] = id;
                h
            })
            .collect();
        for k in 0..handles.len() {
            cdt.add_constraint(handles[k], handles[(k + 1) % handles.len()]);
        }
        polys.push(pts);
    }
    let inside = |x: f64, y: f64| {
        let mut crossings = 0;
        for poly in &polys {
            for k in 0..poly.len() {
                let (p, q) = (poly[k], poly[(k + 1) % poly.len()]);
                if (p.1 > y) != (q.1 > y) && x < p.0 + (y - p.1) * (q.0 - p.0) / (q.1 - p.1) {
                    crossings += 1;
                }
            }
        }
        crossings % 2 == 1
    };
    for f in cdt.inner_faces() {
        let v = f.vertices();
        let pos = v.map(|h| h.position());
        let (cx, cy) = ((pos[0].x + pos[1].x + pos[2].x) / 3.0, (pos[0].y + pos[1].y + pos[2].y) / 3.0);
        if !inside(cx, cy) {
            continue;
        }
        let [i, j, k] = v.map(|h| ids[h.fix().index()]);
        if up {
            b.tri(i, j, k);
        } else {
            b.tri(i, k, j);
        }
    }
}

/// Radius whose inscribed `segments`-gon has faces at distance `radius` from the axis.
pub(crate) fn circumscribed<S: Scalar>(radius: S, segments: usize) -> S {
    radius / (S::PI() / S::from_count(segments as u64)).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::validate_mesh;

    #[test]
    fn revolved_rectangle_is_torus() {
        let mut b = MeshBuilder::<f64>::new();
        revolve(&mut b, &[(1.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0)], true, 32);
        let a = validate_mesh(&b.finish());
        assert!(a.printable(), "{a:?}");
        assert_eq!(a.euler_characteristic, 0);
    }

    #[test]
    fn disc_with_holes_closes_cylinder() {
        // washer: outer wall + inner wall, top and bottom faces via earcut with two pin holes
        let mut b = MeshBuilder::<f64>::new();
        let ob = circle(&mut b, (0.0, 0.0), 3.0, 0.0, 40);
        let ot = circle(&mut b, (0.0, 0.0), 3.0, 1.0, 40);
        wall(&mut b, &ob, &ot, true);
        let hb = circle(&mut b, (1.5, 0.0), 0.4, 0.0, 12);
        let ht = circle(&mut b, (1.5, 0.0), 0.4, 1.0, 12);
        wall(&mut b, &hb, &ht, false);
        let pb = circle(&mut b, (-1.5, 0.0), 0.4, 1.0, 12);
        let pt = circle(&mut b, (-1.5, 0.0), 0.4, 1.5, 12);
        wall(&mut b, &pb, &pt, true);
        fan(&mut b, &pt, true);
        planar_face(&mut b, &ot, &[&ht, &pb], true);
        planar_face(&mut b, &ob, &[&hb], false);
        let a = validate_mesh(&b.finish());
        assert!(a.printable(), "{a:?}");
        assert_eq!(a.shell_count, 1);
        // washer with one through hole: genus 1
        assert_eq!(a.euler_characteristic, 0);
    }

    #[test]
    fn circumscribed_faces_touch_circle() {
        let r = circumscribed(1.0_f64, 96);
        assert!((r * (std::f64::consts::PI / 96.0).cos() - 1.0).abs() < 1e-15);
    }
}

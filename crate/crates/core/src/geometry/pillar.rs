use serde::{Deserialize, Serialize};

use super::{GeometryConfig, GeometryError};
use crate::math::Vec3;
use crate::mesh::{MeshBuilder, TriMesh};
use crate::scalar::{normalize_angle, Scalar};

/// A rectangular-section pillar on a cylinder, swept along a constant-rate helix.
///
/// The section is `width` tangentially by `depth` radially, centered on
/// `radius`, and stays radially aligned at every height. A zero twist gives a
/// straight prism.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Pillar<S: Scalar> {
    pub radius: S,
    /// Radians at `z0`, in `[0, 2π)`.
    pub azimuth: S,
    /// Degrees of azimuth gained from `z0` to `z1`.
    pub twist: S,
    pub z0: S,
    pub z1: S,
    pub width: S,
    pub depth: S,
}

impl<S: Scalar> Pillar<S> {
    /// Unnormalized azimuth (radians) of the section center at height `z`.
    pub fn azimuth_at(&self, z: S) -> S {
        self.azimuth + self.twist.deg_to_rad() * (z - self.z0) / (self.z1 - self.z0)
    }

    /// Cross-section frames used for tessellation: `ceil(segments·|twist|/360) + 1`, at least 2.
    pub fn frame_count(&self, segments_per_turn: u32) -> usize {
        let steps = (S::from_count(segments_per_turn as u64) * self.twist.abs() / S::lit(360.0)).ceil();
        steps.to_usize().unwrap_or(0).max(1) + 1
    }

    /// Section corners, counterclockwise from above: inner-left, outer-left, outer-right, inner-right.
    pub fn corners_at(&self, azimuth: S, z: S) -> [Vec3<S>; 4] {
        let (s, c) = azimuth.sin_cos();
        let u = Vec3::new(c, s, S::zero());
        let v = Vec3::new(-s, c, S::zero());
        let (hd, hw) = (self.depth * S::half(), self.width * S::half());
        let (r_in, r_out) = (self.radius - hd, self.radius + hd);
        let lift = Vec3::new(S::zero(), S::zero(), z);
        [u * r_in - v * hw + lift, u * r_out - v * hw + lift, u * r_out + v * hw + lift, u * r_in + v * hw + lift]
    }

    /// Copy rotated counterclockwise by `radians`.
    pub fn rotated(&self, radians: S) -> Self {
        Self { azimuth: normalize_angle(self.azimuth + radians), ..*self }
    }
}

/// Closed, end-capped mesh of a pillar: `8·(frames − 1) + 4` triangles.
pub fn pillar_mesh<S: Scalar>(p: &Pillar<S>, segments_per_turn: u32) -> TriMesh<S> {
    let frames = p.frame_count(segments_per_turn);
    let last = S::from_count(frames as u64 - 1);
    let mut b = MeshBuilder::new();
    let mut rings: Vec<[u32; 4]> = Vec::with_capacity(frames);
    for k in 0..frames {
        let (z, az) = if k + 1 == frames {
            (p.z1, p.azimuth + p.twist.deg_to_rad())
        } else {
            let t = S::from_count(k as u64) / last;
            (p.z0 + (p.z1 - p.z0) * t, p.azimuth + p.twist.deg_to_rad() * t)
        };
        rings.push(p.corners_at(az, z).map(|c| b.vertex(c)));
    }
    for w in rings.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        for i in 0..4 {
            let j = (i + 1) % 4;
            b.quad(lo[i], lo[j], hi[j], hi[i]);
        }
    }
    let (bot, top) = (rings[0], rings[frames - 1]);
    b.quad(bot[0], bot[3], bot[2], bot[1]);
    b.quad(top[0], top[1], top[2], top[3]);
    b.finish()
}

fn pillar_span<S: Scalar>(height: S, cfg: &GeometryConfig<S>) -> Result<(S, S), GeometryError> {
    if !(height > S::two() * cfg.rim_height) {
        return Err(GeometryError::Degenerate { height: height.as_f64(), rim_height: cfg.rim_height.as_f64() });
    }
    Ok((cfg.rim_height, height - cfg.rim_height))
}

/// Box pillar between the rims of a ring of `height`, centered at `azimuth` radians.
pub fn straight_pillar<S: Scalar>(
    radius: S,
    azimuth: S,
    height: S,
    cfg: &GeometryConfig<S>,
) -> Result<TriMesh<S>, GeometryError> {
    helical_pillar(radius, azimuth, S::zero(), height, cfg)
}

/// Pillar whose section advances `twist` degrees between the rims.
pub fn helical_pillar<S: Scalar>(
    radius: S,
    start_azimuth: S,
    twist: S,
    height: S,
    cfg: &GeometryConfig<S>,
) -> Result<TriMesh<S>, GeometryError> {
    if !(twist.abs() <= S::lit(360.0)) {
        return Err(GeometryError::TwistOutOfRange { twist: twist.as_f64() });
    }
    let (z0, z1) = pillar_span(height, cfg)?;
    let p = Pillar {
        radius,
        azimuth: normalize_angle(start_azimuth),
        twist,
        z0,
        z1,
        width: cfg.pillar_width,
        depth: cfg.pillar_depth,
    };
    Ok(pillar_mesh(&p, cfg.segments_per_turn))
}

//! Print-in-place rotational interlock.
//!
//! Cross-section (r to the right, z up), hub counterclockwise from its outer
//! bottom corner:
//!
//! ```text
//!            lip                    hub_top
//!   rim |  +--------------------+
//!       |  +-------+            |   ceiling
//!       |==flange==|  channel   |
//!       |  +-------+            |   floor
//!       |  |                    |
//!          +----+--socket--+----+   z = 0
//! ```
//!
//! Every hub surface facing the inner ring sits exactly `joint_clearance`
//! away: the planar ceiling and floor by construction, the cylindrical lip and
//! back wall by circumscribing their polygons around the clearance circle.

use serde::{Deserialize, Serialize};

use super::primitives::{circle, circumscribed, fan, planar_face, revolve, wall};
use super::{GeometryConfig, GeometryError};
use crate::math::Vec3;
use crate::mesh::{MeshBuilder, TriMesh};
use crate::scalar::Scalar;

/// World-frame dimensions of the joint (inches).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct JointLayout<S: Scalar> {
    pub floor_z: S,
    /// Bottom of the inner ring and its flange.
    pub inner_base_z: S,
    pub flange_top_z: S,
    pub ceiling_z: S,
    pub hub_top_z: S,
    pub flange_inner_radius: S,
    pub flange_outer_radius: S,
    /// Vertex radius of the lip polygon; its faces lie at rim outer radius + clearance.
    pub lip_radius: S,
    /// Vertex radius of the channel back wall polygon.
    pub back_radius: S,
    pub hub_outer_radius: S,
    pub socket_radius: S,
    pub socket_depth: S,
    pub segments: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointParts<S: Scalar> {
    /// Added to the inner ring.
    pub flange: TriMesh<S>,
    /// Added to the outer ring: channel hub with alignment sockets underneath.
    pub channel: TriMesh<S>,
    pub layout: JointLayout<S>,
}

pub(crate) fn joint_layout<S: Scalar>(
    cfg: &GeometryConfig<S>,
    inner_ring_height: S,
) -> Result<JointLayout<S>, GeometryError> {
    cfg.validate()?;
    let c = cfg.joint_clearance;
    let infeasible = |m: String| Err(GeometryError::InfeasibleJoint(m));
    if c >= cfg.flange_thickness || c >= cfg.flange_width || c >= cfg.hub_floor || c >= cfg.hub_lip {
        return infeasible(format!(
            "clearance {c} must be smaller than flange thickness {}, flange width {}, hub floor {} and lip {}",
            cfg.flange_thickness, cfg.flange_width, cfg.hub_floor, cfg.hub_lip
        ));
    }
    let segments = cfg.segments_per_turn as usize;
    let rim_outer = cfg.inner_radius + cfg.rim_half_thickness();
    let floor_z = cfg.hub_floor;
    let inner_base_z = floor_z + c;
    let flange_top_z = inner_base_z + cfg.flange_thickness;
    let ceiling_z = flange_top_z + c;
    let hub_top_z = ceiling_z + cfg.hub_lip;
    let flange_outer_radius = rim_outer + cfg.flange_width;
    let lip_radius = circumscribed(rim_outer + c, segments);
    let back_radius = circumscribed(flange_outer_radius + c, segments);
    let hub_outer_radius = cfg.outer_radius + cfg.rim_half_thickness();
    let socket_radius = circumscribed(cfg.pin_radius + c, cfg.pin_segments as usize);
    let socket_depth = cfg.pin_height + c;

    if !(inner_ring_height > S::two() * cfg.rim_height) || !(inner_ring_height > cfg.flange_thickness) {
        return infeasible(format!("inner ring height {inner_ring_height} cannot carry the flange"));
    }
    if lip_radius >= flange_outer_radius {
        return infeasible("flange does not reach past the lip".into());
    }
    let socket_inner = cfg.outer_radius - socket_radius;
    if back_radius + c >= socket_inner {
        return infeasible(format!(
            "channel back wall at r = {back_radius} runs into the alignment sockets at r = {socket_inner}"
        ));
    }
    if cfg.outer_radius + socket_radius + c >= hub_outer_radius {
        return infeasible("alignment sockets break through the hub's outer wall".into());
    }
    if socket_depth + c >= hub_top_z {
        return infeasible(format!("sockets {socket_depth} deep break through the hub top at {hub_top_z}"));
    }
    Ok(JointLayout {
        floor_z,
        inner_base_z,
        flange_top_z,
        ceiling_z,
        hub_top_z,
        flange_inner_radius: cfg.inner_radius,
        flange_outer_radius,
        lip_radius,
        back_radius,
        hub_outer_radius,
        socket_radius,
        socket_depth,
        segments,
    })
}

/// Azimuths (radians) of the alignment pins and their sockets.
pub(crate) fn pin_azimuths<S: Scalar>(cfg: &GeometryConfig<S>) -> Vec<S> {
    let n = S::from_count(cfg.pin_count as u64);
    (0..cfg.pin_count as u64).map(|k| S::TAU() * S::from_count(k) / n).collect()
}

/// Flange for the inner ring and the capturing channel hub for the outer ring.
pub fn interlock_joint<S: Scalar>(
    cfg: &GeometryConfig<S>,
    inner_ring_height: S,
) -> Result<JointParts<S>, GeometryError> {
    let l = joint_layout(cfg, inner_ring_height)?;

    let mut fb = MeshBuilder::new();
    revolve(
        &mut fb,
        &[
            (l.flange_inner_radius, l.inner_base_z),
            (l.flange_outer_radius, l.inner_base_z),
            (l.flange_outer_radius, l.flange_top_z),
            (l.flange_inner_radius, l.flange_top_z),
        ],
        true,
        l.segments,
    );

    let mut hb = MeshBuilder::new();
    let rings = revolve(
        &mut hb,
        &[
            (l.hub_outer_radius, S::zero()),
            (l.hub_outer_radius, l.hub_top_z),
            (l.lip_radius, l.hub_top_z),
            (l.lip_radius, l.ceiling_z),
            (l.back_radius, l.ceiling_z),
            (l.back_radius, l.floor_z),
            (l.lip_radius, l.floor_z),
            (l.lip_radius, S::zero()),
        ],
        false,
        l.segments,
    );
    let mut sockets = Vec::new();
    for az in pin_azimuths(cfg) {
        let center = Vec3::cylindrical(cfg.outer_radius, az, S::zero());
        let segs = cfg.pin_segments as usize;
        let mouth = circle(&mut hb, (center.x, center.y), l.socket_radius, S::zero(), segs);
        let top = circle(&mut hb, (center.x, center.y), l.socket_radius, l.socket_depth, segs);
        wall(&mut hb, &mouth, &top, false);
        fan(&mut hb, &top, false);
        sockets.push(mouth);
    }
    let mut holes: Vec<&[u32]> = vec![&rings[7]];
    holes.extend(sockets.iter().map(Vec::as_slice));
    planar_face(&mut hb, &rings[0], &holes, false);

    Ok(JointParts { flange: fb.finish(), channel: hb.finish(), layout: l })
}

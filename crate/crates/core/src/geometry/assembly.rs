use serde::{Deserialize, Serialize};

use super::base::{base_layout, build_base, BaseLayout};
use super::joint::{interlock_joint, joint_layout, JointLayout};
use super::pillar::Pillar;
use super::ring::{build_ring, ring_pillars};
use super::{GeometryConfig, GeometryError, RingRole, RingSpec};
use crate::encoder::SculptureParams;
use crate::math::Vec3;
use crate::mesh::{merge_shells, TriMesh};
use crate::scalar::Scalar;

/// Where each part sits in the world frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SculptureLayout<S: Scalar> {
    /// Ring specs in their local frames (z from 0 to `height`).
    pub inner_ring: RingSpec<S>,
    pub outer_ring: RingSpec<S>,
    /// World z of each ring's local z = 0.
    pub inner_offset_z: S,
    pub outer_offset_z: S,
    pub joint: JointLayout<S>,
    pub base: BaseLayout<S>,
}

/// One month's printable parts.
#[derive(Debug, Clone, PartialEq)]
pub struct SculptureAssembly<S: Scalar> {
    /// Inner ring plus flange; rotates freely about z.
    pub inner: TriMesh<S>,
    /// Outer ring plus channel hub; sits on the base pins.
    pub outer: TriMesh<S>,
    pub base: TriMesh<S>,
    pub params: SculptureParams<S>,
    pub config: GeometryConfig<S>,
    pub layout: SculptureLayout<S>,
}

fn layout<S: Scalar>(
    params: &SculptureParams<S>,
    cfg: &GeometryConfig<S>,
) -> Result<SculptureLayout<S>, GeometryError> {
    cfg.validate()?;
    let h = params.height;
    // inner ring runs from inner_base_z = hub_floor + clearance up to h
    let joint = joint_layout(cfg, h - cfg.hub_floor - cfg.joint_clearance)?;
    let inner_ring = RingSpec {
        radius: cfg.inner_radius,
        spoke_count: params.inner_spoke_count,
        twist: params.inner_twist,
        height: h - joint.inner_base_z,
        role: RingRole::Inner,
    };
    let outer_ring = RingSpec {
        radius: cfg.outer_radius,
        spoke_count: params.outer_spoke_count,
        twist: params.outer_twist,
        height: h - joint.hub_top_z,
        role: RingRole::Outer,
    };
    Ok(SculptureLayout {
        inner_ring,
        outer_ring,
        inner_offset_z: joint.inner_base_z,
        outer_offset_z: joint.hub_top_z,
        joint,
        base: base_layout(cfg)?,
    })
}

/// Pillars of both rings in the world frame, inner ring first, at rest (rotation 0).
/// Inner ring pillars, then outer ring pillars.
pub type RingPillars<S> = (Vec<Pillar<S>>, Vec<Pillar<S>>);

pub fn sculpture_pillars<S: Scalar>(
    params: &SculptureParams<S>,
    cfg: &GeometryConfig<S>,
) -> Result<RingPillars<S>, GeometryError> {
    let l = layout(params, cfg)?;
    let lift = |ps: Vec<Pillar<S>>, dz: S| -> Vec<Pillar<S>> {
        ps.into_iter().map(|p| Pillar { z0: p.z0 + dz, z1: p.z1 + dz, ..p }).collect()
    };
    Ok((
        lift(ring_pillars(&l.inner_ring, cfg)?, l.inner_offset_z),
        lift(ring_pillars(&l.outer_ring, cfg)?, l.outer_offset_z),
    ))
}

/// Inner ring with flange, outer ring on its channel hub, and the base.
pub fn build_sculpture<S: Scalar>(
    params: &SculptureParams<S>,
    cfg: &GeometryConfig<S>,
) -> Result<SculptureAssembly<S>, GeometryError> {
    let l = layout(params, cfg)?;
    let joint = interlock_joint(cfg, l.inner_ring.height)?;
    let up = |dz: S| Vec3::new(S::zero(), S::zero(), dz);
    let inner_ring = build_ring(&l.inner_ring, cfg)?.translate(up(l.inner_offset_z));
    let outer_ring = build_ring(&l.outer_ring, cfg)?.translate(up(l.outer_offset_z));
    Ok(SculptureAssembly {
        inner: merge_shells(&[joint.flange, inner_ring]),
        outer: merge_shells(&[joint.channel, outer_ring]),
        base: build_base(cfg)?,
        params: *params,
        config: *cfg,
        layout: l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::validate_mesh;

    fn april() -> SculptureParams<f64> {
        SculptureParams {
            month: 4,
            height: 3.4,
            inner_spoke_count: 6,
            inner_twist: 96.0,
            outer_spoke_count: 8,
            outer_twist: -138.0,
        }
    }

    #[test]
    fn april_assembly() {
        let cfg = GeometryConfig::default();
        let a = build_sculpture(&april(), &cfg).unwrap();
        for m in [&a.inner, &a.outer, &a.base] {
            let audit = validate_mesh(m);
            assert!(audit.printable(), "{audit:?}");
        }
        let (inner, outer) = sculpture_pillars(&april(), &cfg).unwrap();
        assert_eq!(inner.iter().filter(|p| p.twist == 0.0).count(), 6);
        assert_eq!(outer.iter().filter(|p| p.twist == 0.0).count(), 8);
        // flange + 2 rims + 12 pillars; hub + 2 rims + 16 pillars
        assert_eq!(validate_mesh(&a.inner).shell_count, 15);
        assert_eq!(validate_mesh(&a.outer).shell_count, 19);
        for m in [&a.inner, &a.outer] {
            let (_, hi) = m.bounds().unwrap();
            assert!((hi.z - 3.4).abs() < 1e-12);
        }
    }

    #[test]
    fn deterministic() {
        let cfg = GeometryConfig::default();
        let a = build_sculpture(&april(), &cfg).unwrap();
        let b = build_sculpture(&april(), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pillars_match_meshes() {
        let cfg = GeometryConfig::default();
        let a = build_sculpture(&april(), &cfg).unwrap();
        let (inner, _) = sculpture_pillars(&april(), &cfg).unwrap();
        let lo = inner.iter().map(|p| p.z0).fold(f64::MAX, f64::min);
        assert!((lo - (a.layout.inner_offset_z + cfg.rim_height)).abs() < 1e-12);
        assert!(inner.iter().all(|p| (p.z1 - (3.4 - cfg.rim_height)).abs() < 1e-12));
    }
}

use super::pillar::{pillar_mesh, Pillar};
use super::primitives::revolve;
use super::{GeometryConfig, GeometryError, RingSpec};
use crate::mesh::{merge_shells, MeshBuilder, TriMesh};
use crate::scalar::{normalize_angle, Scalar};

fn rim<S: Scalar>(radius: S, z0: S, segments: usize, cfg: &GeometryConfig<S>) -> TriMesh<S> {
    let t = cfg.rim_half_thickness();
    let z1 = z0 + cfg.rim_height;
    let mut b = MeshBuilder::new();
    revolve(&mut b, &[(radius - t, z0), (radius + t, z0), (radius + t, z1), (radius - t, z1)], true, segments);
    b.finish()
}

/// Closed annular band `2·pillar_depth` thick and `rim_height` tall, bottom at `z0`.
pub fn annular_rim<S: Scalar>(radius: S, z0: S, cfg: &GeometryConfig<S>) -> Result<TriMesh<S>, GeometryError> {
    let min = S::two() * cfg.pillar_depth;
    if !(radius > min) {
        return Err(GeometryError::RadiusTooSmall { radius: radius.as_f64(), min: min.as_f64() });
    }
    Ok(rim(radius, z0, cfg.segments_per_turn as usize, cfg))
}

/// Half the angle subtended by a pillar's inner face: adjacent pillars closer than
/// twice this intersect.
fn pillar_half_angle<S: Scalar>(radius: S, cfg: &GeometryConfig<S>) -> S {
    (cfg.pillar_width * S::half()).atan2(radius - cfg.pillar_depth * S::half())
}

/// Largest straight-spoke count whose pillars (straight plus interleaved twisted) stay disjoint.
pub fn max_spoke_count<S: Scalar>(radius: S, cfg: &GeometryConfig<S>) -> u32 {
    let limit = S::PI() / pillar_half_angle(radius, cfg);
    let total = limit.ceil().to_u32().unwrap_or(1).saturating_sub(1);
    total / (cfg.twisted_per_straight + 1)
}

/// Pillar layout of a ring in its local frame: straight pillars at `2πk/n`, then
/// `twisted_per_straight` helical pillars evenly interleaved in each gap.
pub fn ring_pillars<S: Scalar>(spec: &RingSpec<S>, cfg: &GeometryConfig<S>) -> Result<Vec<Pillar<S>>, GeometryError> {
    spec.validate()?;
    let min_radius = S::two() * cfg.pillar_depth;
    if !(spec.radius > min_radius) {
        return Err(GeometryError::RadiusTooSmall { radius: spec.radius.as_f64(), min: min_radius.as_f64() });
    }
    if !(spec.height > S::two() * cfg.rim_height) {
        return Err(GeometryError::Degenerate { height: spec.height.as_f64(), rim_height: cfg.rim_height.as_f64() });
    }
    let max = max_spoke_count(spec.radius, cfg);
    if spec.spoke_count > max {
        return Err(GeometryError::PillarOverlap { requested: spec.spoke_count, max, radius: spec.radius.as_f64() });
    }
    let n = S::from_count(spec.spoke_count as u64);
    let per_gap = cfg.twisted_per_straight as u64;
    let base = Pillar {
        radius: spec.radius,
        azimuth: S::zero(),
        twist: S::zero(),
        z0: cfg.rim_height,
        z1: spec.height - cfg.rim_height,
        width: cfg.pillar_width,
        depth: cfg.pillar_depth,
    };
    let mut out = Vec::with_capacity(spec.spoke_count as usize * (1 + per_gap as usize));
    for k in 0..spec.spoke_count as u64 {
        let a = S::TAU() * S::from_count(k) / n;
        out.push(Pillar { azimuth: normalize_angle(a), ..base });
    }
    for k in 0..spec.spoke_count as u64 {
        for j in 0..per_gap {
            let frac = S::from_count(j + 1) / S::from_count(per_gap + 1);
            let a = S::TAU() * (S::from_count(k) + frac) / n;
            out.push(Pillar { azimuth: normalize_angle(a), twist: spec.twist, ..base });
        }
    }
    Ok(out)
}

/// Rim segment count: at least `segments_per_turn`, and a multiple of the spoke count
/// so the ring keeps its rotational symmetry.
fn rim_segments(spoke_count: u32, segments_per_turn: u32) -> usize {
    let n = spoke_count.max(1);
    (segments_per_turn.div_ceil(n) * n) as usize
}

/// Bottom rim, top rim and all pillars as one multi-shell mesh in the ring's local frame.
pub fn build_ring<S: Scalar>(spec: &RingSpec<S>, cfg: &GeometryConfig<S>) -> Result<TriMesh<S>, GeometryError> {
    let pillars = ring_pillars(spec, cfg)?;
    let segs = rim_segments(spec.spoke_count, cfg.segments_per_turn);
    let mut shells =
        vec![rim(spec.radius, S::zero(), segs, cfg), rim(spec.radius, spec.height - cfg.rim_height, segs, cfg)];
    shells.extend(pillars.iter().map(|p| pillar_mesh(p, cfg.segments_per_turn)));
    Ok(merge_shells(&shells))
}

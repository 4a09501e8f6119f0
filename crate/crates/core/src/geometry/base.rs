//! Base: LED recess on top, alignment pins around it, battery bay and cable
//! bore underneath.

use serde::{Deserialize, Serialize};

use super::joint::pin_azimuths;
use super::primitives::{circle, fan, planar_face, revolve, wall};
use super::{GeometryConfig, GeometryError};
use crate::math::Vec3;
use crate::mesh::{MeshBuilder, TriMesh};
use crate::scalar::Scalar;

/// Thinnest wall the layout checks allow between features (inches).
const MIN_WALL: f64 = 0.04;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct BaseLayout<S: Scalar> {
    pub radius: S,
    /// The base occupies z ∈ [-height, 0].
    pub height: S,
    pub led_recess_radius: S,
    pub led_recess_depth: S,
    pub bore_radius: S,
    /// `[x_min, x_max, y_min, y_max]` of the bay, open at z = -height.
    pub bay_rect: [S; 4],
    pub bay_ceiling_z: S,
    /// Pin centers (x, y) on the top face.
    pub pins: Vec<(S, S)>,
    pub pin_radius: S,
    pub pin_height: S,
}

/// Feature placement for `cfg`, or the first collision found.
pub fn base_layout<S: Scalar>(cfg: &GeometryConfig<S>) -> Result<BaseLayout<S>, GeometryError> {
    cfg.validate()?;
    let wall_min = S::lit(MIN_WALL);
    let layout_err = |m: String| Err(GeometryError::Layout(m));
    let radius = cfg.base_radius();
    let height = cfg.base_height;
    let led_r = cfg.led_recess_diameter * S::half();
    let led_d = cfg.led_recess_depth;
    let rb = cfg.bore_radius;
    let [bx, by, bd] = cfg.battery_bay;
    let bay_rect = [
        -bx * S::half(),
        bx * S::half(),
        cfg.battery_bay_offset - by * S::half(),
        cfg.battery_bay_offset + by * S::half(),
    ];
    let bay_ceiling_z = -height + bd;

    if !(led_d + wall_min < height) {
        return layout_err(format!("LED recess {led_d} deep leaves no floor in a {height} base"));
    }
    if !(led_r + wall_min < radius) {
        return layout_err(format!("LED recess radius {led_r} breaks through the base wall at {radius}"));
    }
    if !(rb + wall_min < led_r) {
        return layout_err(format!("bore radius {rb} does not fit inside the LED recess"));
    }
    let far_x = bay_rect[0].abs().max(bay_rect[1].abs());
    let far_y = bay_rect[2].abs().max(bay_rect[3].abs());
    if !((far_x * far_x + far_y * far_y).sqrt() + wall_min < radius) {
        return layout_err("battery bay corner breaks through the base wall".into());
    }
    let near_x = if bay_rect[0] > S::zero() {
        bay_rect[0]
    } else if bay_rect[1] < S::zero() {
        -bay_rect[1]
    } else {
        S::zero()
    };
    let near_y = if bay_rect[2] > S::zero() {
        bay_rect[2]
    } else if bay_rect[3] < S::zero() {
        -bay_rect[3]
    } else {
        S::zero()
    };
    if !((near_x * near_x + near_y * near_y).sqrt() > rb + wall_min) {
        return layout_err("battery bay runs into the cable bore".into());
    }
    if !(bay_ceiling_z + wall_min < -led_d) {
        return layout_err(format!(
            "battery bay ceiling at z = {bay_ceiling_z} runs into the LED recess floor at {}",
            -led_d
        ));
    }
    let pr = cfg.pin_radius;
    if !(cfg.outer_radius - pr > led_r + wall_min) {
        return layout_err("alignment pins run into the LED recess".into());
    }
    if !(cfg.outer_radius + pr + wall_min < radius) {
        return layout_err("alignment pins overhang the base".into());
    }
    let pins = pin_azimuths(cfg)
        .into_iter()
        .map(|az| {
            let p = Vec3::cylindrical(cfg.outer_radius, az, S::zero());
            (p.x, p.y)
        })
        .collect();
    Ok(BaseLayout {
        radius,
        height,
        led_recess_radius: led_r,
        led_recess_depth: led_d,
        bore_radius: rb,
        bay_rect,
        bay_ceiling_z,
        pins,
        pin_radius: pr,
        pin_height: cfg.pin_height,
    })
}

/// Single closed shell of the base, top face at z = 0.
pub fn build_base<S: Scalar>(cfg: &GeometryConfig<S>) -> Result<TriMesh<S>, GeometryError> {
    let l = base_layout(cfg)?;
    let segs = cfg.segments_per_turn as usize;
    let mut b = MeshBuilder::new();
    let outer = revolve(&mut b, &[(l.radius, -l.height), (l.radius, S::zero())], false, segs);
    let inner = revolve(
        &mut b,
        &[
            (l.led_recess_radius, S::zero()),
            (l.led_recess_radius, -l.led_recess_depth),
            (l.bore_radius, -l.led_recess_depth),
            (l.bore_radius, -l.height),
        ],
        false,
        segs,
    );

    let mut pin_rings = Vec::with_capacity(l.pins.len());
    for &c in &l.pins {
        let foot = circle(&mut b, c, l.pin_radius, S::zero(), cfg.pin_segments as usize);
        let cap = circle(&mut b, c, l.pin_radius, l.pin_height, cfg.pin_segments as usize);
        wall(&mut b, &foot, &cap, true);
        fan(&mut b, &cap, true);
        pin_rings.push(foot);
    }
    let mut top_holes: Vec<&[u32]> = vec![&inner[0]];
    top_holes.extend(pin_rings.iter().map(Vec::as_slice));
    planar_face(&mut b, &outer[1], &top_holes, true);

    let [x0, x1, y0, y1] = l.bay_rect;
    let corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)];
    let mouth: Vec<u32> = corners.iter().map(|&(x, y)| b.vertex(Vec3::new(x, y, -l.height))).collect();
    let ceiling: Vec<u32> = corners.iter().map(|&(x, y)| b.vertex(Vec3::new(x, y, l.bay_ceiling_z))).collect();
    wall(&mut b, &mouth, &ceiling, false);
    b.quad(ceiling[0], ceiling[3], ceiling[2], ceiling[1]);
    planar_face(&mut b, &outer[0], &[&inner[3], &mouth], false);

    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::validate_mesh;

    #[test]
    fn default_base_is_printable() {
        let cfg = GeometryConfig::<f64>::default();
        let m = build_base(&cfg).unwrap();
        let l = base_layout(&cfg).unwrap();
        let a = validate_mesh(&m);
        assert!(a.printable(), "{a:?}");
        assert_eq!(a.shell_count, 1);
        // the cable bore is the one through hole
        assert_eq!(a.euler_characteristic, 0);
        assert_eq!(l.pins.len(), 8);
        let (lo, hi) = m.bounds().unwrap();
        assert!((hi.z - cfg.pin_height).abs() < 1e-12);
        assert!((lo.z + 1.0).abs() < 1e-12);
    }

    #[test]
    fn base_volume_matches_layout() {
        let cfg = GeometryConfig::<f64>::default();
        let m = build_base(&cfg).unwrap();
        let l = base_layout(&cfg).unwrap();
        let ngon = |r: f64, n: f64| 0.5 * n * r * r * (std::f64::consts::TAU / n).sin();
        let n = cfg.segments_per_turn as f64;
        let p = cfg.pin_segments as f64;
        let [x0, x1, y0, y1] = l.bay_rect;
        let expected = ngon(l.radius, n) * l.height
            - ngon(l.led_recess_radius, n) * l.led_recess_depth
            - ngon(l.bore_radius, n) * (l.height - l.led_recess_depth)
            - (x1 - x0) * (y1 - y0) * (l.bay_ceiling_z + l.height)
            + 8.0 * ngon(l.pin_radius, p) * l.pin_height;
        assert!((validate_mesh(&m).signed_volume - expected).abs() < 1e-9);
    }

    #[test]
    fn layout_collisions_are_reported() {
        let d = GeometryConfig::<f64>::default();
        let bad = [
            GeometryConfig { battery_bay: [2.3, 1.3, 0.75], ..d },
            GeometryConfig { battery_bay: [4.0, 1.3, 0.6], ..d },
            GeometryConfig { battery_bay_offset: -0.3, ..d },
            GeometryConfig { led_recess_diameter: 3.9, ..d },
            GeometryConfig { bore_radius: 1.6, ..d },
        ];
        for cfg in bad {
            assert!(matches!(build_base(&cfg), Err(GeometryError::Layout(_))), "{cfg:?}");
        }
    }
}

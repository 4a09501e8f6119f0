//! Parametric sculpture solids.
//!
//! World frame: inches, z up, z = 0 on the top face of the base. The outer
//! ring's hub sits on the base; the inner ring hangs in the hub's channel by
//! its flange, clear of everything by `joint_clearance`.
//!
//! Solids are unions of closed shells that meet on coincident planar faces
//! (pillar caps on rim faces, rims on hub faces) instead of being merged by
//! boolean operations. Every shell is individually watertight.

mod assembly;
mod base;
mod joint;
mod pillar;
pub(crate) mod primitives;
mod ring;

pub use assembly::{build_sculpture, sculpture_pillars, RingPillars, SculptureAssembly, SculptureLayout};
pub use base::{base_layout, build_base, BaseLayout};
pub use joint::{interlock_joint, JointLayout, JointParts};
pub use pillar::{helical_pillar, pillar_mesh, straight_pillar, Pillar};
pub use ring::{annular_rim, build_ring, max_spoke_count, ring_pillars};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("invalid geometry config: {0}")]
    Config(String),
    #[error("height {height} leaves no pillar span between two {rim_height} rims")]
    Degenerate { height: f64, rim_height: f64 },
    #[error("twist {twist} deg exceeds one full turn")]
    TwistOutOfRange { twist: f64 },
    #[error("{role} ring twist {twist} deg has the wrong sign")]
    TwistSign { role: RingRole, twist: f64 },
    #[error("{requested} spokes overlap on radius {radius}; at most {max} fit")]
    PillarOverlap { requested: u32, max: u32, radius: f64 },
    #[error("radius {radius} must exceed {min}")]
    RadiusTooSmall { radius: f64, min: f64 },
    #[error("infeasible joint: {0}")]
    InfeasibleJoint(String),
    #[error("base layout collision: {0}")]
    Layout(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingRole {
    Inner,
    Outer,
}

impl std::fmt::Display for RingRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RingRole::Inner => "inner",
            RingRole::Outer => "outer",
        })
    }
}

/// One ring's data-driven description. The ring occupies local z ∈ [0, height].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct RingSpec<S: Scalar> {
    pub radius: S,
    pub spoke_count: u32,
    /// Degrees; inner rings twist counterclockwise (≥ 0), outer clockwise (≤ 0).
    pub twist: S,
    pub height: S,
    pub role: RingRole,
}

impl<S: Scalar> RingSpec<S> {
    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.spoke_count == 0 {
            return Err(GeometryError::Config("spoke_count must be at least 1".into()));
        }
        if self.twist.abs() > S::lit(360.0) || !self.twist.is_finite() {
            return Err(GeometryError::TwistOutOfRange { twist: self.twist.as_f64() });
        }
        let wrong = match self.role {
            RingRole::Inner => self.twist < S::zero(),
            RingRole::Outer => self.twist > S::zero(),
        };
        if wrong {
            return Err(GeometryError::TwistSign { role: self.role, twist: self.twist.as_f64() });
        }
        Ok(())
    }
}

/// Dimensions in inches. Defaults size a tabletop unit around a 3" LED puck.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", default)]
pub struct GeometryConfig<S: Scalar> {
    pub inner_radius: S,
    pub outer_radius: S,
    /// Tangential pillar size.
    pub pillar_width: S,
    /// Radial pillar size; rims are twice as thick.
    pub pillar_depth: S,
    pub rim_height: S,
    pub joint_clearance: S,
    pub twisted_per_straight: u32,
    pub segments_per_turn: u32,
    pub pin_count: u32,
    pub led_recess_diameter: S,
    pub base_height: S,

    /// Radial reach of the inner ring's flange beyond its bottom rim.
    pub flange_width: S,
    pub flange_thickness: S,
    /// Hub material under the channel.
    pub hub_floor: S,
    /// Hub material above the channel.
    pub hub_lip: S,
    pub pin_radius: S,
    pub pin_height: S,
    pub pin_segments: u32,
    pub led_recess_depth: S,
    pub bore_radius: S,
    /// Base overhang beyond the outer rim.
    pub base_margin: S,
    /// Battery bay, opening downward: size along x, size along y, depth.
    pub battery_bay: [S; 3],
    /// Bay center offset along y.
    pub battery_bay_offset: S,
}

impl<S: Scalar> Default for GeometryConfig<S> {
    fn default() -> Self {
        Self {
            inner_radius: S::lit(1.25),
            outer_radius: S::lit(2.0),
            pillar_width: S::lit(0.12),
            pillar_depth: S::lit(0.10),
            rim_height: S::lit(0.20),
            joint_clearance: S::lit(0.012),
            twisted_per_straight: 1,
            segments_per_turn: 96,
            pin_count: 8,
            led_recess_diameter: S::lit(3.0),
            base_height: S::lit(1.0),
            flange_width: S::lit(0.25),
            flange_thickness: S::lit(0.08),
            hub_floor: S::lit(0.06),
            hub_lip: S::lit(0.10),
            pin_radius: S::lit(0.06),
            pin_height: S::lit(0.15),
            pin_segments: 24,
            led_recess_depth: S::lit(0.3),
            bore_radius: S::lit(0.15),
            base_margin: S::lit(0.25),
            battery_bay: [S::lit(2.3), S::lit(1.3), S::lit(0.6)],
            battery_bay_offset: S::lit(-0.95),
        }
    }
}

impl<S: Scalar> GeometryConfig<S> {
    pub fn validate(&self) -> Result<(), GeometryError> {
        let cfg_err = |m: &str| Err(GeometryError::Config(m.into()));
        let positive = [
            ("inner_radius", self.inner_radius),
            ("pillar_width", self.pillar_width),
            ("pillar_depth", self.pillar_depth),
            ("rim_height", self.rim_height),
            ("joint_clearance", self.joint_clearance),
            ("led_recess_diameter", self.led_recess_diameter),
            ("base_height", self.base_height),
            ("flange_width", self.flange_width),
            ("flange_thickness", self.flange_thickness),
            ("hub_floor", self.hub_floor),
            ("hub_lip", self.hub_lip),
            ("pin_radius", self.pin_radius),
            ("pin_height", self.pin_height),
            ("led_recess_depth", self.led_recess_depth),
            ("bore_radius", self.bore_radius),
            ("base_margin", self.base_margin),
        ];
        for (name, v) in positive {
            if !(v > S::zero()) || !v.is_finite() {
                return Err(GeometryError::Config(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if !(self.inner_radius < self.outer_radius) {
            return cfg_err("inner_radius must be below outer_radius");
        }
        if self.segments_per_turn < 12 {
            return cfg_err("segments_per_turn must be at least 12");
        }
        if self.pin_segments < 6 {
            return cfg_err("pin_segments must be at least 6");
        }
        if self.pin_count == 0 {
            return cfg_err("pin_count must be at least 1");
        }
        if self.battery_bay.iter().any(|&v| !(v > S::zero())) {
            return cfg_err("battery bay dimensions must be positive");
        }
        Ok(())
    }

    /// Rim radial half-thickness.
    pub fn rim_half_thickness(&self) -> S {
        self.pillar_depth
    }

    pub fn base_radius(&self) -> S {
        self.outer_radius + self.pillar_depth + self.base_margin
    }
}

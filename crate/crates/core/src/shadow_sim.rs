//! Shadows of the two rings on a surrounding cylindrical screen.
//!
//! A point light sits on the rotation axis. The screen is a cylinder of
//! radius `screen_radius` unrolled to an (azimuth × height) raster: column
//! `j` of a `W`-wide frame samples azimuth `2π(j + ½)/W`, row 0 is the top.
//! The outer ring stands still and the inner ring turns counterclockwise at
//! `rotation_rpm`.
//!
//! Occlusion is computed from the pillar parameters rather than the meshes.
//! A screen row at height `Z` is reached by rays that cross radius `ρ` at
//! height `zl + ρ(Z − zl)/R`, so on each row a pillar blocks the azimuths
//! swept by its cross-section over the band of radii where the ray is inside
//! the pillar's height span. Rims are not occluders.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::encoder::SculptureParams;
use crate::geometry::{sculpture_pillars, GeometryConfig, GeometryError, Pillar, RingPillars, RingRole};
use crate::math::Vec3;
use crate::scalar::{normalize_angle, Scalar};

#[derive(Debug, Error)]
pub enum ShadowError {
    #[error("invalid scene: {0}")]
    Scene(String),
    #[error("point lies on the rotation axis; its azimuth is undefined")]
    OnAxis,
    #[error("light must be on the rotation axis")]
    LightOffAxis,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Scene<S: Scalar> {
    pub params: SculptureParams<S>,
    pub cfg: GeometryConfig<S>,
    /// Light height above the base top (inches).
    pub light_height: S,
    pub screen_radius: S,
    /// Screen bottom and height; both default to the vertical span of all pillar shadows.
    pub screen_bottom: Option<S>,
    pub screen_height: Option<S>,
    pub rotation_rpm: S,
    /// Shadow-casting pillar widths; a zero width removes that ring's shadows.
    pub inner_pillar_width: Option<S>,
    pub outer_pillar_width: Option<S>,
}

impl<S: Scalar> Scene<S> {
    pub fn new(params: SculptureParams<S>, cfg: GeometryConfig<S>) -> Self {
        Self {
            params,
            cfg,
            light_height: S::lit(0.25),
            screen_radius: S::lit(24.0),
            screen_bottom: None,
            screen_height: None,
            rotation_rpm: S::lit(5.0),
            inner_pillar_width: None,
            outer_pillar_width: None,
        }
    }

    pub fn validate(&self) -> Result<(), ShadowError> {
        let bad = |m: String| Err(ShadowError::Scene(m));
        let reach = self.cfg.outer_radius + self.cfg.pillar_depth;
        if !(self.screen_radius > reach) || !self.screen_radius.is_finite() {
            return bad(format!("screen radius {} must exceed the outer ring's reach {reach}", self.screen_radius));
        }
        if !(self.rotation_rpm > S::zero()) || !self.rotation_rpm.is_finite() {
            return bad(format!("rotation_rpm must be positive, got {}", self.rotation_rpm));
        }
        if !self.light_height.is_finite() {
            return bad("light_height must be finite".into());
        }
        for w in [self.inner_pillar_width, self.outer_pillar_width].into_iter().flatten() {
            if !(w >= S::zero()) || !w.is_finite() {
                return bad(format!("pillar width override {w} must be finite and non-negative"));
            }
        }
        if let Some(h) = self.screen_height {
            if !(h > S::zero()) || !h.is_finite() {
                return bad(format!("screen height {h} must be positive"));
            }
        }
        Ok(())
    }

    /// Shadow-casting pillars of both rings at rest, with width overrides applied.
    pub fn pillars(&self) -> Result<RingPillars<S>, ShadowError> {
        let (mut inner, mut outer) = sculpture_pillars(&self.params, &self.cfg)?;
        for (ps, w) in [(&mut inner, self.inner_pillar_width), (&mut outer, self.outer_pillar_width)] {
            if let Some(w) = w {
                ps.iter_mut().for_each(|p| p.width = w);
            }
        }
        Ok((inner, outer))
    }

    /// Inner ring rotation in degrees at time `t`, reduced to [0, 360).
    pub fn rotation_at(&self, t: S) -> S {
        normalize_angle((S::lit(6.0) * self.rotation_rpm * t).deg_to_rad()).to_degrees()
    }

    /// `(bottom, height)` of the screen window.
    pub fn screen_extent(&self) -> Result<(S, S), ShadowError> {
        self.validate()?;
        let (inner, outer) = sculpture_pillars(&self.params, &self.cfg)?;
        let (zl, r) = (self.light_height, self.screen_radius);
        let (mut lo, mut hi) = (S::infinity(), S::neg_infinity());
        for p in inner.iter().chain(&outer) {
            let (u0, rho_max) = radial_band(p);
            for z in [p.z0, p.z1] {
                for rho in [u0, rho_max] {
                    let h = zl + (z - zl) * r / rho;
                    lo = lo.min(h);
                    hi = hi.max(h);
                }
            }
        }
        let bottom = self.screen_bottom.unwrap_or(lo);
        let height = self.screen_height.unwrap_or(hi - bottom);
        if !(height > S::zero()) {
            return Err(ShadowError::Scene(format!("screen window [{bottom}, {}] is empty", bottom + height)));
        }
        Ok((bottom, height))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Projection<S> {
    OnScreen {
        azimuth: S,
        height: S,
    },
    /// The point is at or beyond the screen, so it casts nothing on it.
    BehindScreen,
}

/// Central projection of `p` from an axial `light` onto the screen cylinder.
pub fn project_point<S: Scalar>(p: Vec3<S>, light: Vec3<S>, screen_radius: S) -> Result<Projection<S>, ShadowError> {
    if light.x != S::zero() || light.y != S::zero() {
        return Err(ShadowError::LightOffAxis);
    }
    let r = p.radial();
    if r == S::zero() {
        return Err(ShadowError::OnAxis);
    }
    if r >= screen_radius {
        return Ok(Projection::BehindScreen);
    }
    Ok(Projection::OnScreen {
        azimuth: normalize_angle(p.azimuth()),
        height: light.z + (p.z - light.z) * (screen_radius / r),
    })
}

/// Inner face radius and farthest corner radius of a pillar section.
fn radial_band<S: Scalar>(p: &Pillar<S>) -> (S, S) {
    let (hw, hd) = (p.width * S::half(), p.depth * S::half());
    let u1 = p.radius + hd;
    (p.radius - hd, (u1 * u1 + hw * hw).sqrt())
}

/// Unwrapped azimuth ranges (radians) one pillar hides on the row at height `z_row`.
///
/// At radius ρ the section spans angular offsets `|δ| ∈ [lo(ρ), hi(ρ)]` from
/// its center, which sits at `c0 + βρ` along the ray. Both offset branches are
/// swept over the ray's radius band in closed form: `lo` is linear then
/// concave, `hi` concave then convex, so the extrema lie at band ends,
/// formula switch points, or the one stationary point of `acos(u0/ρ) + βρ`.
fn pillar_shadow<S: Scalar>(p: &Pillar<S>, light_z: S, screen_r: S, z_row: S) -> Vec<(S, S)> {
    if !(p.width > S::zero()) || !(p.depth > S::zero()) {
        return Vec::new();
    }
    let hw = p.width * S::half();
    let (u0, rho_max) = radial_band(p);
    let u1 = p.radius + p.depth * S::half();
    let rho_c = (u0 * u0 + hw * hw).sqrt();
    let span = p.z1 - p.z0;
    let dz = z_row - light_z;
    let (a, b) = if dz == S::zero() {
        if light_z < p.z0 || light_z > p.z1 {
            return Vec::new();
        }
        (u0, rho_max)
    } else {
        let ra = (p.z0 - light_z) * screen_r / dz;
        let rb = (p.z1 - light_z) * screen_r / dz;
        (ra.min(rb).max(u0), ra.max(rb).min(rho_max).min(screen_r))
    };
    if !(a <= b) {
        return Vec::new();
    }
    let tau = p.twist.deg_to_rad();
    let beta = tau * dz / (screen_r * span);
    let c0 = p.azimuth + tau * (light_z - p.z0) / span;

    let lo = |rho: S| if rho <= u1 { S::zero() } else { (u1 / rho).min(S::one()).acos() };
    let hi = |rho: S| (u0 / rho).min(S::one()).acos().min((hw / rho).min(S::one()).asin());
    let inside = |x: S| x > a && x < b;
    let min_lo = |beta: S| {
        let mut m = (lo(a) + beta * a).min(lo(b) + beta * b);
        if inside(u1) {
            m = m.min(lo(u1) + beta * u1);
        }
        m
    };
    let max_hi = |beta: S| {
        let mut m = (hi(a) + beta * a).max(hi(b) + beta * b);
        if inside(rho_c) {
            m = m.max(hi(rho_c) + beta * rho_c);
        }
        if beta < S::zero() {
            // d/dρ acos(u0/ρ) = u0 / (ρ √(ρ² − u0²)) = −β
            let u0sq = u0 * u0;
            let rho = ((u0sq + (u0sq * u0sq + S::lit(4.0) * u0sq / (beta * beta)).sqrt()) * S::half()).sqrt();
            if inside(rho) && rho <= rho_c {
                m = m.max(hi(rho) + beta * rho);
            }
        }
        m
    };
    let upper = (c0 + min_lo(beta), c0 + max_hi(beta));
    let lower = (c0 - max_hi(-beta), c0 - min_lo(-beta));
    // keep the two branches in one piece when they touch so wrapping cannot split them
    if lower.1 >= upper.0 {
        vec![(lower.0.min(upper.0), lower.1.max(upper.1))]
    } else {
        vec![lower, upper]
    }
}

/// Rotates raw ranges by `radians`, wraps them into [0, 2π] and merges overlaps.
fn shift_and_merge<S: Scalar>(raw: &[(S, S)], radians: S) -> Vec<(S, S)> {
    let tau = S::TAU();
    let mut out = Vec::with_capacity(raw.len() + 2);
    for &(lo, hi) in raw {
        let len = hi - lo;
        if len >= tau {
            out.push((S::zero(), tau));
            continue;
        }
        let start = normalize_angle(lo + radians);
        let end = start + len;
        if end > tau {
            out.push((start, tau));
            out.push((S::zero(), end - tau));
        } else {
            out.push((start, end));
        }
    }
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite interval bounds"));
    let mut merged: Vec<(S, S)> = Vec::with_capacity(out.len());
    for (lo, hi) in out {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    merged
}

fn row_raw<S: Scalar>(pillars: &[Pillar<S>], scene: &Scene<S>, z_row: S) -> Vec<(S, S)> {
    pillars.iter().flat_map(|p| pillar_shadow(p, scene.light_height, scene.screen_radius, z_row)).collect()
}

/// Azimuth intervals in [0, 2π], sorted and disjoint, that one ring's pillars hide
/// on the screen row at `row_height` when that ring is turned by `rotation` degrees.
pub fn occlusion_intervals<S: Scalar>(
    scene: &Scene<S>,
    role: RingRole,
    rotation: S,
    row_height: S,
) -> Result<Vec<(S, S)>, ShadowError> {
    scene.validate()?;
    let (inner, outer) = scene.pillars()?;
    let pillars = match role {
        RingRole::Inner => &inner,
        RingRole::Outer => &outer,
    };
    Ok(shift_and_merge(&row_raw(pillars, scene, row_height), normalize_angle(rotation.deg_to_rad())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PixelClass {
    Lit,
    InnerShadow,
    OuterShadow,
    Both,
}

impl PixelClass {
    pub const ALL: [PixelClass; 4] =
        [PixelClass::Lit, PixelClass::InnerShadow, PixelClass::OuterShadow, PixelClass::Both];

    pub fn gray(self) -> u8 {
        match self {
            PixelClass::Lit => 255,
            PixelClass::InnerShadow => 170,
            PixelClass::OuterShadow => 85,
            PixelClass::Both => 0,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShadowFrame<S> {
    pub width: usize,
    pub height: usize,
    /// Row-major, row 0 at the top of the screen.
    pub cells: Vec<PixelClass>,
    pub time: S,
}

impl<S: Scalar> ShadowFrame<S> {
    pub fn get(&self, row: usize, col: usize) -> PixelClass {
        self.cells[row * self.width + col]
    }

    /// Pixel counts in [`PixelClass::ALL`] order.
    pub fn counts(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for cell in &self.cells {
            c[cell.index()] += 1;
        }
        c
    }

    /// Fractions of (lit, inner, outer, both).
    pub fn coverage(&self) -> [S; 4] {
        let n = S::from_count(self.cells.len() as u64);
        self.counts().map(|c| S::from_count(c as u64) / n)
    }
}

/// Precomputed per-row occlusion for one scene and raster size.
#[derive(Debug, Clone)]
pub struct ShadowRenderer<S: Scalar> {
    scene: Scene<S>,
    width: usize,
    rows: Vec<S>,
    inner_raw: Vec<Vec<(S, S)>>,
    outer: Vec<Vec<(S, S)>>,
}

impl<S: Scalar> ShadowRenderer<S> {
    pub fn new(scene: &Scene<S>, width: usize, height: usize) -> Result<Self, ShadowError> {
        if width == 0 || height == 0 {
            return Err(ShadowError::Scene(format!("frame size {width}x{height} must be at least 1x1")));
        }
        let (bottom, screen_h) = scene.screen_extent()?;
        let (inner, outer) = scene.pillars()?;
        let top = bottom + screen_h;
        let step = screen_h / S::from_count(height as u64);
        let rows: Vec<S> = (0..height).map(|i| top - (S::from_count(i as u64) + S::half()) * step).collect();
        Ok(Self {
            inner_raw: rows.iter().map(|&z| row_raw(&inner, scene, z)).collect(),
            outer: rows.iter().map(|&z| shift_and_merge(&row_raw(&outer, scene, z), S::zero())).collect(),
            scene: *scene,
            width,
            rows,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// Screen height sampled by each row, top row first.
    pub fn row_heights(&self) -> &[S] {
        &self.rows
    }

    pub fn column_azimuth(&self, col: usize) -> S {
        S::TAU() * (S::from_count(col as u64) + S::half()) / S::from_count(self.width as u64)
    }

    pub fn frame(&self, t: S) -> ShadowFrame<S> {
        let rot = normalize_angle(self.scene.rotation_at(t).deg_to_rad());
        let thetas: Vec<S> = (0..self.width).map(|j| self.column_azimuth(j)).collect();
        let mut cells = Vec::with_capacity(self.width * self.rows.len());
        let mut inner_mask = vec![false; self.width];
        let mut outer_mask = vec![false; self.width];
        for (raw, outer) in self.inner_raw.iter().zip(&self.outer) {
            rasterize(&shift_and_merge(raw, rot), &thetas, &mut inner_mask);
            rasterize(outer, &thetas, &mut outer_mask);
            cells.extend(inner_mask.iter().zip(&outer_mask).map(|(&i, &o)| match (i, o) {
                (false, false) => PixelClass::Lit,
                (true, false) => PixelClass::InnerShadow,
                (false, true) => PixelClass::OuterShadow,
                (true, true) => PixelClass::Both,
            }));
        }
        ShadowFrame { width: self.width, height: self.rows.len(), cells, time: t }
    }
}

/// Marks columns whose azimuth lies in one of the sorted, disjoint closed `intervals`.
fn rasterize<S: Scalar>(intervals: &[(S, S)], thetas: &[S], mask: &mut [bool]) {
    let mut k = 0;
    for (m, &theta) in mask.iter_mut().zip(thetas) {
        while k < intervals.len() && intervals[k].1 < theta {
            k += 1;
        }
        *m = k < intervals.len() && intervals[k].0 <= theta;
    }
}

pub fn render_frame<S: Scalar>(
    scene: &Scene<S>,
    t: S,
    width: usize,
    height: usize,
) -> Result<ShadowFrame<S>, ShadowError> {
    Ok(ShadowRenderer::new(scene, width, height)?.frame(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", default)]
pub struct SimOptions<S: Scalar> {
    pub duration: S,
    pub dt: S,
    pub width: usize,
    pub height: usize,
}

impl<S: Scalar> Default for SimOptions<S> {
    fn default() -> Self {
        Self { duration: S::lit(12.0), dt: S::lit(0.1), width: 512, height: 256 }
    }
}

impl<S: Scalar> SimOptions<S> {
    /// Frames at t = 0, dt, …, duration.
    pub fn frame_count(&self) -> usize {
        (self.duration / self.dt).round().to_usize().unwrap_or(0) + 1
    }

    pub fn time(&self, k: usize) -> S {
        S::from_count(k as u64) * self.dt
    }

    fn validate(&self) -> Result<(), ShadowError> {
        if !(self.duration > S::zero()) || !(self.dt > S::zero()) || !self.duration.is_finite() || !self.dt.is_finite()
        {
            return Err(ShadowError::Scene(format!("duration {} and dt {} must be positive", self.duration, self.dt)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct InterferenceSeries<S: Scalar> {
    pub times: Vec<S>,
    /// Fraction of pixels in the inner ring's shadow (alone or overlapped).
    pub inner_coverage: Vec<S>,
    pub outer_coverage: Vec<S>,
    /// Fraction shadowed by both rings.
    pub overlap_fraction: Vec<S>,
}

impl<S: Scalar> InterferenceSeries<S> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    fn push(&mut self, f: &ShadowFrame<S>) {
        let [_, inner, outer, both] = f.counts();
        let n = S::from_count(f.cells.len() as u64);
        let frac = |c: usize| S::from_count(c as u64) / n;
        self.times.push(f.time);
        self.inner_coverage.push(frac(inner + both));
        self.outer_coverage.push(frac(outer + both));
        self.overlap_fraction.push(frac(both));
    }

    /// `t,inner,outer,overlap` with a header row.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "t,inner,outer,overlap")?;
        for i in 0..self.len() {
            writeln!(
                out,
                "{},{},{},{}",
                self.times[i], self.inner_coverage[i], self.outer_coverage[i], self.overlap_fraction[i]
            )?;
        }
        Ok(())
    }
}

/// Runs the scene and hands every frame to `on_frame` in time order.
pub fn simulate_with<S: Scalar, F>(
    scene: &Scene<S>,
    opts: &SimOptions<S>,
    mut on_frame: F,
) -> Result<InterferenceSeries<S>, ShadowError>
where
    F: FnMut(usize, &ShadowFrame<S>) -> io::Result<()>,
{
    opts.validate()?;
    let renderer = ShadowRenderer::new(scene, opts.width, opts.height)?;
    let mut series = InterferenceSeries::default();
    for k in 0..opts.frame_count() {
        let f = renderer.frame(opts.time(k));
        on_frame(k, &f)?;
        series.push(&f);
    }
    Ok(series)
}

pub fn simulate<S: Scalar>(scene: &Scene<S>, opts: &SimOptions<S>) -> Result<InterferenceSeries<S>, ShadowError> {
    simulate_with(scene, opts, |_, _| Ok(()))
}

/// Binary PGM; returns bytes written.
pub fn write_frame_image<S: Scalar, W: Write>(f: &ShadowFrame<S>, out: &mut W) -> io::Result<u64> {
    let header = format!("P5 {} {} 255\n", f.width, f.height);
    out.write_all(header.as_bytes())?;
    let bytes: Vec<u8> = f.cells.iter().map(|c| c.gray()).collect();
    out.write_all(&bytes)?;
    Ok((header.len() + bytes.len()) as u64)
}

use std::path::{Path, PathBuf};

use interference::encoder::{EncodingConfig, InnerTwistStrategy};
use interference::geometry::{base_layout, interlock_joint, GeometryConfig};
use interference::shadow_sim::{Scene, SimOptions};
use interference::Params;
use serde::{Deserialize, Serialize};

use crate::Failure;

/// Scene and simulation overrides; unset fields keep the library defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SceneOverrides {
    pub light_height: Option<f64>,
    pub screen_radius: Option<f64>,
    pub screen_bottom: Option<f64>,
    pub screen_height: Option<f64>,
    pub rotation_rpm: Option<f64>,
    pub inner_pillar_width: Option<f64>,
    pub outer_pillar_width: Option<f64>,
    pub duration: Option<f64>,
    pub dt: Option<f64>,
    pub width: Option<usize>,
    pub height: Option<usize>,
}

/// Contents of a `--config` file. Flags override these, which override defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub dataset: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub months: Option<Vec<u32>>,
    pub encoding: EncodingConfig<f64>,
    pub geometry: GeometryConfig<f64>,
    pub scene: SceneOverrides,
    pub seed_note: Option<String>,
}

/// Flags that may override the config file.
#[derive(Debug, Default)]
pub struct FlagOverrides {
    pub dataset: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub months: Option<Vec<u32>>,
    pub inner_twist_strategy: Option<InnerTwistStrategy>,
    pub seed_note: Option<String>,
    pub scene: SceneOverrides,
}

impl RunConfig {
    pub fn load(path: Option<&Path>, flags: FlagOverrides) -> Result<Self, Failure> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Failure::io(format!("{}: {e}", p.display())))?;
                serde_json::from_str(&text).map_err(|e| Failure::validation(format!("{}: {e}", p.display())))?
            }
            None => RunConfig::default(),
        };
        cfg.dataset = flags.dataset.or(cfg.dataset);
        cfg.out = flags.out.or(cfg.out);
        cfg.months = flags.months.or(cfg.months);
        cfg.seed_note = flags.seed_note.or(cfg.seed_note);
        if let Some(s) = flags.inner_twist_strategy {
            cfg.encoding.inner_twist_strategy = s;
        }
        let (f, s) = (flags.scene, &mut cfg.scene);
        macro_rules! take {
            ($($field:ident),*) => { $( if f.$field.is_some() { s.$field = f.$field; } )* };
        }
        take!(
            light_height,
            screen_radius,
            screen_bottom,
            screen_height,
            rotation_rpm,
            inner_pillar_width,
            outer_pillar_width,
            duration,
            dt,
            width,
            height
        );
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks every override before any work starts.
    pub fn validate(&self) -> Result<(), Failure> {
        self.encoding.validate().map_err(|e| Failure::validation(e.to_string()))?;
        self.geometry.validate().map_err(|e| Failure::validation(e.to_string()))?;
        // layout checks that do not depend on the month
        base_layout(&self.geometry).map_err(|e| Failure::validation(e.to_string()))?;
        interlock_joint(&self.geometry, self.encoding.height_max).map_err(|e| Failure::validation(e.to_string()))?;
        if let Some(ms) = &self.months {
            if ms.is_empty() {
                return Err(Failure::validation("month filter is empty"));
            }
            if let Some(m) = ms.iter().find(|m| !(1..=12).contains(*m)) {
                return Err(Failure::validation(format!("month {m} outside 1..12")));
            }
        }
        let opts = self.sim_options();
        if !(opts.duration > 0.0) || !(opts.dt > 0.0) || opts.width == 0 || opts.height == 0 {
            return Err(Failure::validation("duration, dt, width and height must be positive"));
        }
        let probe = Params {
            month: 1,
            height: self.encoding.height_min,
            inner_spoke_count: 1,
            inner_twist: 0.0,
            outer_spoke_count: 1,
            outer_twist: 0.0,
        };
        self.scene(probe).validate().map_err(|e| Failure::validation(e.to_string()))?;
        Ok(())
    }

    pub fn dataset(&self) -> Result<&Path, Failure> {
        self.dataset
            .as_deref()
            .ok_or_else(|| Failure::validation("no dataset given (use --dataset or the config file)"))
    }

    pub fn out(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("out"))
    }

    pub fn selected_months(&self) -> Vec<u32> {
        let mut ms = self.months.clone().unwrap_or_else(|| (1..=12).collect());
        ms.sort_unstable();
        ms.dedup();
        ms
    }

    pub fn scene(&self, params: Params) -> Scene<f64> {
        let mut scene = Scene::new(params, self.geometry);
        let o = &self.scene;
        scene.light_height = o.light_height.unwrap_or(scene.light_height);
        scene.screen_radius = o.screen_radius.unwrap_or(scene.screen_radius);
        scene.rotation_rpm = o.rotation_rpm.unwrap_or(scene.rotation_rpm);
        scene.screen_bottom = o.screen_bottom;
        scene.screen_height = o.screen_height;
        scene.inner_pillar_width = o.inner_pillar_width;
        scene.outer_pillar_width = o.outer_pillar_width;
        scene
    }

    pub fn sim_options(&self) -> SimOptions<f64> {
        let d = SimOptions::default();
        let o = &self.scene;
        SimOptions {
            duration: o.duration.unwrap_or(d.duration),
            dt: o.dt.unwrap_or(d.dt),
            width: o.width.unwrap_or(d.width),
            height: o.height.unwrap_or(d.height),
        }
    }
}

/// Parses `4`, `1,2,3` or `1-3,7`.
pub fn parse_months(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("`{t}` is not a month number"));
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty month range `{part}`"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() {
        return Err("no months given".into());
    }
    Ok(out)
}

//! Flat `key = value` configuration.
//!
//! ```text
//! # layout
//! seed = 7
//! s_min = 2.5
//! # tree mapping
//! h1 = 0.5
//! segments = 16
//! palette.water = 0.1, 0.3, 0.9, 0.8
//! ```
//!
//! Missing keys keep their defaults. Unknown keys and non-positive numbers
//! are rejected.

use std::path::Path;

use thiserror::Error;

use crate::geometry::{default_palette, SceneParams, TreeParams, MATERIAL_NAMES};
use crate::layout::LayoutParams;

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub layout: LayoutParams,
    pub tree: TreeParams,
    pub segments: usize,
    pub channel_width: f64,
    /// RGBA per entry of [`MATERIAL_NAMES`].
    pub palette: Vec<[f32; 4]>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            layout: LayoutParams::default(),
            tree: TreeParams::default(),
            segments: 12,
            channel_width: 0.3,
            palette: default_palette().into_iter().map(|m| m.base_color).collect(),
        }
    }
}

impl Config {
    pub fn scene_params(&self) -> SceneParams {
        let mut palette = default_palette();
        for (material, color) in palette.iter_mut().zip(&self.palette) {
            material.base_color = *color;
        }
        SceneParams {
            tree: self.tree,
            segments: self.segments,
            tier_drop: self.layout.tier_drop,
            channel_width: self.channel_width,
            palette,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{key}` must be positive")]
    NonPositiveValue { line: usize, key: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

pub fn load_config(path: &Path) -> Result<Config, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut config = Config::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Malformed {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        let malformed = |what: &str| ConfigError::Malformed {
            line,
            message: format!("`{key}`: expected {what}, got `{value}`"),
        };
        let non_positive = || ConfigError::NonPositiveValue { line, key: key.to_owned() };

        if let Some(material) = key.strip_prefix("palette.") {
            let slot = MATERIAL_NAMES
                .iter()
                .position(|&m| m == material)
                .ok_or_else(|| ConfigError::UnknownKey { line, key: key.to_owned() })?;
            let parts: Vec<f32> = value
                .split(',')
                .map(|p| p.trim().parse::<f32>())
                .collect::<Result<_, _>>()
                .map_err(|_| malformed("four comma-separated reals"))?;
            let rgba: [f32; 4] = parts.try_into().map_err(|_| malformed("four comma-separated reals"))?;
            if rgba.iter().any(|c| !(0.0..=1.0).contains(c)) {
                return Err(malformed("components in [0, 1]"));
            }
            config.palette[slot] = rgba;
            continue;
        }

        match key {
            "seed" => {
                let seed: u64 = value.parse().map_err(|_| malformed("an unsigned integer"))?;
                if seed == 0 {
                    return Err(non_positive());
                }
                config.layout.seed = seed;
            }
            "segments" => {
                let segments: i64 = value.parse().map_err(|_| malformed("an integer"))?;
                if segments <= 0 {
                    return Err(non_positive());
                }
                if segments < 8 {
                    return Err(malformed("at least 8"));
                }
                config.segments = segments as usize;
            }
            _ => {
                let slot = real_slot(&mut config, key).ok_or_else(|| ConfigError::UnknownKey { line, key: key.to_owned() })?;
                let v: f64 = value.parse().map_err(|_| malformed("a real number"))?;
                if !v.is_finite() {
                    return Err(malformed("a finite real number"));
                }
                if v <= 0.0 {
                    return Err(non_positive());
                }
                *slot = v;
            }
        }
    }
    Ok(config)
}

fn real_slot<'a>(config: &'a mut Config, key: &str) -> Option<&'a mut f64> {
    Some(match key {
        "s_min" => &mut config.layout.s_min,
        "tier_drop" => &mut config.layout.tier_drop,
        "base_radius_per_class" => &mut config.layout.base_radius_per_class,
        "island_margin" => &mut config.layout.island_margin,
        "h0" => &mut config.tree.h0,
        "h1" => &mut config.tree.h1,
        "r0" => &mut config.tree.r0,
        "c" => &mut config.tree.c,
        "leaf_radius" => &mut config.tree.leaf_radius,
        "canopy_coefficient" => &mut config.tree.canopy_coefficient,
        "canopy_min" => &mut config.tree.canopy_min,
        "channel_width" => &mut config.channel_width,
        _ => return None,
    })
}

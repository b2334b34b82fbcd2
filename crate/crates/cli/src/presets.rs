use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use anyhow::{anyhow, Context, Result};
use nsbox::measurement::{BlochDirection, PartySettings, Sign};
use serde::Deserialize;

const PRESETS_TOML: &str = include_str!("../presets.toml");

#[derive(Debug, Deserialize)]
struct PresetFile {
    version: u32,
    presets: BTreeMap<String, Preset>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Preset {
    pub description: String,
    alice: Vec<Angle>,
    bob: Vec<Angle>,
    #[serde(default)]
    source_bob: Option<Vec<Angle>>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
struct Angle {
    theta: f64,
    phi: f64,
    #[serde(default)]
    flip: bool,
}

fn party(angles: &[Angle]) -> Result<PartySettings<f64>> {
    let dirs = angles
        .iter()
        .map(|a| BlochDirection::new(a.theta * PI, a.phi * PI))
        .collect::<nsbox::Result<Vec<_>>>()?;
    let signs = angles
        .iter()
        .map(|a| if a.flip { Sign::Flip } else { Sign::Keep })
        .collect();
    Ok(PartySettings::new(dirs, signs)?)
}

impl Preset {
    /// Settings for `parties` parties; `source` selects the variant tuned
    /// for the source state when the preset has one.
    pub fn settings(&self, parties: usize, source: bool) -> Result<Vec<PartySettings<f64>>> {
        let alice = party(&self.alice)?;
        let bob_angles = match (&self.source_bob, source) {
            (Some(b), true) => b,
            _ => &self.bob,
        };
        let bob = party(bob_angles)?;
        Ok((0..parties)
            .map(|k| if k == 1 { bob.clone() } else { alice.clone() })
            .collect())
    }
}

fn table() -> &'static BTreeMap<String, Preset> {
    static PRESETS: OnceLock<BTreeMap<String, Preset>> = OnceLock::new();
    PRESETS.get_or_init(|| {
        let file: PresetFile = toml::from_str(PRESETS_TOML).expect("bundled presets parse");
        assert_eq!(file.version, 1, "unexpected presets version");
        file.presets
    })
}

pub fn names() -> Vec<&'static str> {
    table().keys().map(String::as_str).collect()
}

pub fn get(name: &str) -> Result<&'static Preset> {
    table()
        .get(name)
        .ok_or_else(|| anyhow!("unknown preset '{name}' (known: {})", names().join(", ")))
        .context("resolving --basis")
}

/// clap value parser: accepts only bundled preset names.
pub fn parse_name(s: &str) -> std::result::Result<String, String> {
    if table().contains_key(s) {
        Ok(s.to_string())
    } else {
        let known: Vec<String> = table()
            .iter()
            .map(|(name, p)| format!("{name} ({})", p.description))
            .collect();
        Err(format!("unknown preset; known: {}", known.join("; ")))
    }
}

//! Committed figure presets, compiled into the binary.

use crate::config::{parse_config, ConfigDocument, ConfigError};

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub id: &'static str,
    pub text: &'static str,
}

impl Preset {
    /// The leading `# ` comment line of the file.
    pub fn description(&self) -> &'static str {
        self.text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("# "))
            .unwrap_or("")
    }

    pub fn load(&self) -> Result<ConfigDocument, ConfigError> {
        parse_config(self.text)
    }
}

macro_rules! preset {
    ($id:literal) => {
        Preset {
            id: $id,
            text: include_str!(concat!("../presets/", $id, ".cfg")),
        }
    };
}

pub const PRESETS: &[Preset] = &[
    preset!("default"),
    preset!("fig2a"),
    preset!("fig2b"),
    preset!("fig2c"),
    preset!("fig2d"),
    preset!("fig2e"),
    preset!("fig3"),
    preset!("fig4"),
    preset!("fig5a"),
    preset!("fig5b"),
    preset!("fig5c"),
    preset!("fig5d"),
    preset!("fig6a"),
    preset!("fig6b"),
    preset!("fig7a"),
    preset!("fig7b"),
    preset!("fig7c"),
    preset!("fig7d"),
    preset!("fig7e"),
    preset!("fig7f"),
    preset!("fig8a"),
    preset!("fig8b"),
    preset!("fig9a"),
    preset!("fig9b"),
];

pub fn find(id: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.id == id)
}

/// Presets that describe a sweep, i.e. everything but `default`.
pub fn figures() -> impl Iterator<Item = &'static Preset> {
    PRESETS.iter().filter(|p| p.id != "default")
}

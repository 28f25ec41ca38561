//! JSON system configurations: parsing, validation and construction of code systems.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crclist::{
    BitBlock, CodeSystem, ConvCode, CrcPoly, GeneratorMatrix, ListConfig, PolarCode,
    ReliabilitySequence,
};

use crate::error::CliError;

/// A complete system description. Unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub code: CodeConfig,
    #[serde(default = "default_message_len")]
    pub message_len: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crc: Option<CrcConfig>,
    /// Mother-codeword positions deleted before transmission (TBCC only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub puncture: Vec<usize>,
    /// Defaults to `lva` for TBCC and `scl` for polar codes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoder: Option<DecoderName>,
    #[serde(default = "default_list")]
    pub list: ListConfig,
    #[serde(default)]
    pub seed: u64,
}

fn default_message_len() -> usize {
    32
}

fn default_list() -> ListConfig {
    ListConfig {
        l_min: 1,
        l_max: 32,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CodeConfig {
    /// Tail-biting convolutional code with octal generator polynomials.
    Tbcc {
        memory: usize,
        generators: Vec<String>,
    },
    /// Length-`n` polar code; the dimension is the message length plus the CRC width.
    /// Without `sequence_file` the bundled 5G reliability sequence is used.
    Polar {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sequence_file: Option<PathBuf>,
    },
    /// Explicit generator matrix, one binary string per row. Only usable for spectra.
    Generator { rows: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrcConfig {
    /// Hex with the leading coefficient, e.g. `0xD41`.
    pub poly: String,
    /// Degree; inferred from `poly` when absent and checked when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderName {
    Scl,
    Lva,
}

/// The object a configuration describes.
#[derive(Clone, Debug)]
pub enum Resolved {
    System(CodeSystem),
    Block(GeneratorMatrix),
}

impl SystemConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("invalid configuration: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    pub fn crc_poly(&self) -> Result<Option<CrcPoly>, CliError> {
        let Some(c) = &self.crc else { return Ok(None) };
        let g = CrcPoly::parse_hex_auto(&c.poly).map_err(config_err)?;
        if let Some(w) = c.width {
            if w != g.width() {
                return Err(CliError::Config(format!(
                    "CRC {} has degree {}, but width {w} was given",
                    c.poly,
                    g.width()
                )));
            }
        }
        Ok(Some(g))
    }

    /// Decoder implied by the code kind, checked against an explicit choice.
    pub fn decoder_name(&self) -> Result<DecoderName, CliError> {
        let implied = match self.code {
            CodeConfig::Tbcc { .. } => DecoderName::Lva,
            CodeConfig::Polar { .. } => DecoderName::Scl,
            CodeConfig::Generator { .. } => {
                return Err(CliError::Config(
                    "generator-matrix codes have no list decoder".into(),
                ))
            }
        };
        match self.decoder {
            Some(d) if d != implied => Err(CliError::Config(format!(
                "decoder {d:?} does not apply to this code kind (use {implied:?})"
            ))),
            _ => Ok(implied),
        }
    }

    pub fn list_config(&self) -> Result<ListConfig, CliError> {
        ListConfig::new(self.list.l_min, self.list.l_max).map_err(config_err)
    }

    /// Builds the system; relative sequence paths are resolved against `base_dir`.
    pub fn resolve(&self, base_dir: &Path) -> Result<Resolved, CliError> {
        let crc = self.crc_poly()?;
        self.list_config()?;
        match &self.code {
            CodeConfig::Tbcc { memory, generators } => {
                self.decoder_name()?;
                let code = ConvCode::from_octal(*memory, generators).map_err(config_err)?;
                CodeSystem::tbcc(self.message_len, crc, code, self.puncture.clone())
                    .map(Resolved::System)
                    .map_err(config_err)
            }
            CodeConfig::Polar { n, sequence_file } => {
                self.decoder_name()?;
                if !self.puncture.is_empty() {
                    return Err(CliError::Config("polar systems are not punctured".into()));
                }
                let seq = match sequence_file {
                    Some(p) => ReliabilitySequence::load(base_dir.join(p)).map_err(config_err)?,
                    None => ReliabilitySequence::nr5g(),
                };
                let k = self.message_len + crc.map_or(0, |g| g.width());
                let code = PolarCode::construct(&seq, *n, k).map_err(config_err)?;
                CodeSystem::polar(self.message_len, crc, code)
                    .map(Resolved::System)
                    .map_err(config_err)
            }
            CodeConfig::Generator { rows } => {
                if crc.is_some() || !self.puncture.is_empty() || self.decoder.is_some() {
                    return Err(CliError::Config(
                        "generator-matrix codes take no CRC, puncturing or decoder".into(),
                    ));
                }
                let rows = rows
                    .iter()
                    .map(|r| BitBlock::parse_binary(r))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(config_err)?;
                let n = rows.first().map_or(0, BitBlock::len);
                GeneratorMatrix::new(rows, n)
                    .map(Resolved::Block)
                    .map_err(config_err)
            }
        }
    }
}

fn config_err(e: crclist::Error) -> CliError {
    CliError::Config(e.to_string())
}

/// Reads a configuration file; relative paths inside it are taken relative to its directory.
pub fn load_config(path: &Path) -> Result<(SystemConfig, PathBuf), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let cfg = SystemConfig::from_json(&text)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((cfg, base))
}

/// Names and contents of the bundled presets.
pub const PRESETS: &[(&str, &str)] = &[
    (
        "polar_5g_512_43_crc0xD41",
        include_str!("../presets/polar_5g_512_43_crc0xD41.json"),
    ),
    (
        "tbcc_512_43_crc0xF69",
        include_str!("../presets/tbcc_512_43_crc0xF69.json"),
    ),
    (
        "polar_5g_512_crc24a",
        include_str!("../presets/polar_5g_512_crc24a.json"),
    ),
    (
        "polar_5g_512_crc24b",
        include_str!("../presets/polar_5g_512_crc24b.json"),
    ),
    (
        "polar_5g_512_crc24c",
        include_str!("../presets/polar_5g_512_crc24c.json"),
    ),
    (
        "polar_5g_512_crc16",
        include_str!("../presets/polar_5g_512_crc16.json"),
    ),
    (
        "polar_5g_512_crc11",
        include_str!("../presets/polar_5g_512_crc11.json"),
    ),
    (
        "polar_5g_512_crc6",
        include_str!("../presets/polar_5g_512_crc6.json"),
    ),
];

pub fn preset(name: &str) -> Result<SystemConfig, CliError> {
    let (_, text) = PRESETS.iter().find(|(n, _)| *n == name).ok_or_else(|| {
        let names: Vec<_> = PRESETS.iter().map(|(n, _)| *n).collect();
        CliError::Config(format!(
            "unknown preset {name:?}; available: {}",
            names.join(", ")
        ))
    })?;
    SystemConfig::from_json(text)
}

/// The published JSON schema for configuration files.
pub const SCHEMA: &str = include_str!("../schema/system_config.schema.json");

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> PathBuf {
        PathBuf::new()
    }

    #[test]
    fn presets_resolve() {
        for (name, _) in PRESETS {
            let cfg = preset(name).unwrap();
            let Resolved::System(s) = cfg.resolve(&base()).unwrap() else {
                panic!("{name} is not a system");
            };
            assert_eq!(s.message_len(), 32);
            assert_eq!(s.n(), 512, "{name}");
            cfg.decoder_name().unwrap();
        }
        assert!(preset("nope").is_err());
    }

    #[test]
    fn round_trips_through_json() {
        let cfg = preset("tbcc_512_43_crc0xF69").unwrap();
        assert_eq!(SystemConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        for text in [
            r#"{"code": {"kind": "polar", "n": 64}, "colour": 1}"#,
            r#"{"code": {"kind": "polar", "n": 64, "colour": 1}}"#,
            r#"{"code": {"kind": "polar", "n": 64}, "crc": {"poly": "0x7", "colour": 1}}"#,
            r#"{"code": {"kind": "polar", "n": 64}, "list": {"l_min": 1, "l_max": 2, "x": 0}}"#,
            r#"{"code": {"kind": "turbo"}}"#,
        ] {
            assert!(
                matches!(SystemConfig::from_json(text), Err(CliError::Config(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn defaults_fill_optional_fields() {
        let cfg = SystemConfig::from_json(r#"{"code": {"kind": "polar", "n": 64}}"#).unwrap();
        assert_eq!(cfg.message_len, 32);
        assert_eq!(cfg.crc, None);
        assert_eq!(cfg.decoder_name().unwrap(), DecoderName::Scl);
        assert_eq!(
            cfg.list,
            ListConfig {
                l_min: 1,
                l_max: 32
            }
        );
    }

    #[test]
    fn inconsistent_fields_are_config_errors() {
        let bad = [
            r#"{"code": {"kind": "polar", "n": 64}, "crc": {"poly": "0xD41", "width": 10}}"#,
            r#"{"code": {"kind": "polar", "n": 64}, "decoder": "lva"}"#,
            r#"{"code": {"kind": "polar", "n": 64}, "puncture": [1]}"#,
            r#"{"code": {"kind": "polar", "n": 60}}"#,
            r#"{"code": {"kind": "polar", "n": 64}, "list": {"l_min": 3, "l_max": 8}}"#,
            r#"{"code": {"kind": "tbcc", "memory": 2, "generators": ["9"]}}"#,
            r#"{"code": {"kind": "tbcc", "memory": 2, "generators": ["7"]}, "puncture": [64]}"#,
            r#"{"code": {"kind": "generator", "rows": ["11", "0"]}}"#,
            r#"{"code": {"kind": "generator", "rows": ["111"]}, "decoder": "scl"}"#,
            r#"{"code": {"kind": "polar", "n": 64, "sequence_file": "/nonexistent/seq.txt"}}"#,
        ];
        for text in bad {
            let cfg = SystemConfig::from_json(text).unwrap();
            assert!(
                matches!(cfg.resolve(&base()), Err(CliError::Config(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn crc_width_is_inferred() {
        let cfg = SystemConfig::from_json(
            r#"{"code": {"kind": "polar", "n": 512}, "crc": {"poly": "0x61"}}"#,
        )
        .unwrap();
        let Resolved::System(s) = cfg.resolve(&base()).unwrap() else {
            unreachable!()
        };
        assert_eq!(s.crc().unwrap().width(), 6);
        assert_eq!(s.inner_len(), 38);
    }

    #[test]
    fn generator_rows() {
        let cfg =
            SystemConfig::from_json(r#"{"code": {"kind": "generator", "rows": ["111"]}}"#).unwrap();
        let Resolved::Block(g) = cfg.resolve(&base()).unwrap() else {
            unreachable!()
        };
        assert_eq!((g.k(), g.n()), (1, 3));
        assert!(cfg.decoder_name().is_err());
    }
}

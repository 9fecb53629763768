//! Line-oriented `key = value` config files with unit suffixes.
//!
//! Grammar per line: `key = number [unit]`, `#` starts a comment, blank
//! lines ignored. Units: `nm`, `um` (lengths), `W` (power), `kHz`, `MHz`
//! (frequencies, converted to angular rad/s), bare numbers are dimensionless
//! (ratios to the dressed omega_tilde_1x where a frequency is expected).
//! `mode` selects the entry path: `physical`, `reduced3` or `reduced5`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::models::{FiveModeParams, ModelError, ThreeModeParams};
use crate::params::{FreqInput, ParamError, PerMode, PhysicalConfig};

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: cannot parse `{text}`")]
    Parse { line: usize, text: String },
    #[error("line {line}: unknown key `{key}` for mode {mode}")]
    UnknownKey { line: usize, key: String, mode: String },
    #[error("duplicate key `{key}` on lines {first} and {second}")]
    DuplicateKey { key: String, first: usize, second: usize },
    #[error("missing required key `{key}`")]
    MissingKey { key: String },
    #[error("missing mode (expected `mode = physical|reduced3|reduced5`)")]
    MissingMode,
    #[error("line {line}: unknown mode `{mode}`")]
    BadMode { line: usize, mode: String },
    #[error("line {line}: key `{key}` expects {expected}, got unit `{found}`")]
    UnitMismatch { line: usize, key: String, expected: &'static str, found: String },
    #[error("line {line}: invalid value for `{key}`: {msg}")]
    InvalidValue { line: usize, key: String, msg: String },
    #[error("key `{key}`: {msg}")]
    Inconsistent { key: String, msg: String },
    #[error("invalid physical parameters: {0}")]
    Params(#[from] ParamError),
    #[error("invalid model parameters: {0}")]
    Model(#[from] ModelError),
}

/// One parsed `key = value` entry.
#[derive(Debug, Clone, PartialEq)]
pub struct RawEntry {
    pub value: f64,
    pub unit: Option<String>,
    pub line: usize,
}

/// Parsed but not yet validated key/value map; also the substrate the sweep
/// machinery overrides per grid point.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, RawEntry>,
    /// `mode =` value, textual.
    pub mode: Option<(String, usize)>,
    /// `model =` value for physical mode (three_mode | five_mode).
    pub model: Option<(String, usize)>,
}

const STRING_KEYS: [&str; 2] = ["mode", "model"];

impl RawConfig {
    /// Parse the text of a config file.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RawConfig::default();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::Parse { line: line_no, text: raw_line.trim().into() })?;
            let key = key.trim().to_string();
            let value = value.trim();
            if key.is_empty() || value.is_empty() {
                return Err(ConfigError::Parse { line: line_no, text: raw_line.trim().into() });
            }
            if STRING_KEYS.contains(&key.as_str()) {
                let slot = if key == "mode" { &mut cfg.mode } else { &mut cfg.model };
                if let Some((_, first)) = slot {
                    return Err(ConfigError::DuplicateKey { key, first: *first, second: line_no });
                }
                *slot = Some((value.to_string(), line_no));
                continue;
            }
            let mut parts = value.split_whitespace();
            let number = parts.next().unwrap();
            let unit = parts.next().map(str::to_string);
            if parts.next().is_some() {
                return Err(ConfigError::Parse { line: line_no, text: raw_line.trim().into() });
            }
            let value: f64 = number
                .parse()
                .map_err(|_| ConfigError::Parse { line: line_no, text: raw_line.trim().into() })?;
            if let Some(prev) = cfg.entries.get(&key) {
                return Err(ConfigError::DuplicateKey { key, first: prev.line, second: line_no });
            }
            cfg.entries.insert(key, RawEntry { value, unit, line: line_no });
        }
        Ok(cfg)
    }

    /// Override or insert a numeric key (used by sweep axes). The previous
    /// unit, if any, is preserved.
    pub fn set(&mut self, key: &str, value: f64) {
        let unit = self.entries.get(key).and_then(|e| e.unit.clone());
        self.entries.insert(key.to_string(), RawEntry { value, unit, line: 0 });
    }

    /// Attach a unit suffix to an existing key (sweep axes over unit-bearing
    /// keys).
    pub fn set_unit(&mut self, key: &str, unit: &str) {
        if let Some(e) = self.entries.get_mut(key) {
            e.unit = Some(unit.to_string());
        }
    }

    pub fn get(&self, key: &str) -> Option<&RawEntry> {
        self.entries.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &String> {
        self.entries.keys()
    }

    /// Serialize back to the line format; `parse` of the output reproduces
    /// the same entries.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        if let Some((m, _)) = &self.mode {
            out.push_str(&format!("mode = {m}\n"));
        }
        if let Some((m, _)) = &self.model {
            out.push_str(&format!("model = {m}\n"));
        }
        for (k, e) in &self.entries {
            match &e.unit {
                Some(u) => out.push_str(&format!("{k} = {} {u}\n", e.value)),
                None => out.push_str(&format!("{k} = {}\n", e.value)),
            }
        }
        out
    }
}

/// Dimension a key expects.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Dim {
    Length,
    Power,
    /// Ratio to omega_tilde_1x when bare, rad/s when kHz/MHz.
    Frequency,
    Bare,
}

fn convert(key: &str, e: &RawEntry, dim: Dim) -> Result<ConvertedValue, ConfigError> {
    let mismatch = |expected: &'static str| ConfigError::UnitMismatch {
        line: e.line,
        key: key.to_string(),
        expected,
        found: e.unit.clone().unwrap_or_default(),
    };
    match dim {
        Dim::Length => match e.unit.as_deref() {
            Some("nm") => Ok(ConvertedValue::Plain(e.value * 1e-9)),
            Some("um") => Ok(ConvertedValue::Plain(e.value * 1e-6)),
            _ => Err(mismatch("a length unit (nm, um)")),
        },
        Dim::Power => match e.unit.as_deref() {
            Some("W") => Ok(ConvertedValue::Plain(e.value)),
            None => Ok(ConvertedValue::Plain(e.value)),
            _ => Err(mismatch("W")),
        },
        Dim::Frequency => match e.unit.as_deref() {
            None => Ok(ConvertedValue::Freq(FreqInput::Ratio(e.value))),
            Some("kHz") => {
                Ok(ConvertedValue::Freq(FreqInput::Angular(e.value * 2.0 * std::f64::consts::PI * 1e3)))
            }
            Some("MHz") => {
                Ok(ConvertedValue::Freq(FreqInput::Angular(e.value * 2.0 * std::f64::consts::PI * 1e6)))
            }
            _ => Err(mismatch("a frequency (bare ratio, kHz, MHz)")),
        },
        Dim::Bare => match e.unit.as_deref() {
            None => Ok(ConvertedValue::Plain(e.value)),
            _ => Err(mismatch("a dimensionless value")),
        },
    }
}

enum ConvertedValue {
    Plain(f64),
    Freq(FreqInput),
}

impl ConvertedValue {
    fn plain(self) -> f64 {
        match self {
            ConvertedValue::Plain(v) => v,
            ConvertedValue::Freq(FreqInput::Ratio(v)) => v,
            ConvertedValue::Freq(FreqInput::Angular(v)) => v,
        }
    }
    fn freq(self) -> FreqInput {
        match self {
            ConvertedValue::Freq(f) => f,
            ConvertedValue::Plain(v) => FreqInput::Ratio(v),
        }
    }
}

/// A fully validated configuration.
#[derive(Debug, Clone)]
pub enum LoadedConfig {
    Physical { config: PhysicalConfig, model: PhysicalModel },
    Reduced3(ThreeModeParams),
    Reduced5(FiveModeParams),
}

/// Which reduction the physical path builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhysicalModel {
    ThreeMode,
    FiveMode,
}

struct KeyReader<'a> {
    raw: &'a RawConfig,
    mode: &'static str,
    seen: Vec<String>,
}

impl<'a> KeyReader<'a> {
    fn new(raw: &'a RawConfig, mode: &'static str) -> Self {
        Self { raw, mode, seen: Vec::new() }
    }

    fn optional(&mut self, key: &str, dim: Dim) -> Result<Option<ConvertedValue>, ConfigError> {
        self.seen.push(key.to_string());
        match self.raw.get(key) {
            Some(e) => Ok(Some(convert(key, e, dim)?)),
            None => Ok(None),
        }
    }

    fn required(&mut self, key: &str, dim: Dim) -> Result<ConvertedValue, ConfigError> {
        self.optional(key, dim)?
            .ok_or_else(|| ConfigError::MissingKey { key: key.to_string() })
    }

    fn finish(self) -> Result<(), ConfigError> {
        for key in self.raw.keys() {
            if !self.seen.iter().any(|s| s == key) {
                let line = self.raw.get(key).map(|e| e.line).unwrap_or(0);
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.clone(),
                    mode: self.mode.to_string(),
                });
            }
        }
        Ok(())
    }
}

fn per_mode(r: &mut KeyReader, base_key: &str, default: Option<f64>) -> Result<PerMode, ConfigError> {
    let base = match r.optional(base_key, Dim::Bare)? {
        Some(v) => Some(v.plain()),
        None => default,
    };
    let mut out = match base {
        Some(v) => PerMode::uniform(v),
        None => return Err(ConfigError::MissingKey { key: base_key.to_string() }),
    };
    for (suffix, slot) in [("_1x", 0usize), ("_2x", 1), ("_1z", 2), ("_2z", 3)] {
        if let Some(v) = r.optional(&format!("{base_key}{suffix}"), Dim::Bare)? {
            let v = v.plain();
            match slot {
                0 => out.x1 = v,
                1 => out.x2 = v,
                2 => out.z1 = v,
                _ => out.z2 = v,
            }
        }
    }
    Ok(out)
}

fn load_physical(raw: &RawConfig) -> Result<LoadedConfig, ConfigError> {
    let mut r = KeyReader::new(raw, "physical");
    let radius = r.required("radius", Dim::Length)?.plain();
    let density = r.required("density", Dim::Bare)?.plain();
    let epsilon_r = r.required("epsilon_r", Dim::Bare)?.plain();
    let wavelength = r.required("wavelength", Dim::Length)?.plain();
    let power1 = r.required("power1", Dim::Power)?.plain();
    let power2 = r.required("power2", Dim::Power)?.plain();
    let na = r.required("na", Dim::Bare)?.plain();
    let waist = r.optional("waist", Dim::Length)?.map(ConvertedValue::plain);

    let sep_abs = r.optional("separation", Dim::Length)?.map(ConvertedValue::plain);
    let sep_rel = r.optional("separation_wavelengths", Dim::Bare)?.map(ConvertedValue::plain);
    let separation = match (sep_abs, sep_rel) {
        (Some(s), None) => s,
        (None, Some(m)) => m * wavelength,
        (Some(_), Some(_)) => {
            return Err(ConfigError::Inconsistent {
                key: "separation".into(),
                msg: "give either separation or separation_wavelengths, not both".into(),
            })
        }
        (None, None) => return Err(ConfigError::MissingKey { key: "separation".into() }),
    };

    let x1 = r.optional("x1", Dim::Length)?.map(ConvertedValue::plain);
    let x2 = r.optional("x2", Dim::Length)?.map(ConvertedValue::plain);
    let eps_cav = r.optional("eps_cav", Dim::Bare)?.map(ConvertedValue::plain);
    let detuning = r.required("detuning", Dim::Frequency)?.freq();
    let kappa = r.required("kappa", Dim::Frequency)?.freq();
    let gamma = per_mode(&mut r, "gamma", None)?;
    let n_th = per_mode(&mut r, "n_th", None)?;

    let model = match raw.model.as_ref() {
        Some((m, line)) => match m.as_str() {
            "three_mode" => PhysicalModel::ThreeMode,
            "five_mode" => PhysicalModel::FiveMode,
            other => {
                return Err(ConfigError::InvalidValue {
                    line: *line,
                    key: "model".into(),
                    msg: format!("expected three_mode or five_mode, got `{other}`"),
                })
            }
        },
        None => return Err(ConfigError::MissingKey { key: "model".into() }),
    };
    r.finish()?;

    let config = PhysicalConfig {
        radius,
        density,
        epsilon_r,
        wavelength,
        power1,
        power2,
        na,
        waist,
        separation,
        x1,
        x2,
        eps_cav,
        detuning,
        kappa,
        gamma,
        n_th,
    };
    config.validate()?;
    Ok(LoadedConfig::Physical { config, model })
}

fn load_reduced3(raw: &RawConfig) -> Result<LoadedConfig, ConfigError> {
    if raw.model.is_some() {
        return Err(ConfigError::Inconsistent {
            key: "model".into(),
            msg: "model selection applies to physical mode only".into(),
        });
    }
    let mut r = KeyReader::new(raw, "reduced3");
    let omega2 = r.required("omega2", Dim::Bare)?.plain();
    let g1 = r.required("g1", Dim::Bare)?.plain();
    let g2 = r.required("g2", Dim::Bare)?.plain();
    let g_x = r.required("gx", Dim::Bare)?.plain();
    let detuning = r.required("detuning", Dim::Bare)?.plain();
    let kappa = r.required("kappa", Dim::Bare)?.plain();
    let gamma = r.optional("gamma", Dim::Bare)?.map(ConvertedValue::plain);
    let gamma1 = r.optional("gamma1", Dim::Bare)?.map(ConvertedValue::plain);
    let gamma2 = r.optional("gamma2", Dim::Bare)?.map(ConvertedValue::plain);
    let n_th = r.optional("n_th", Dim::Bare)?.map(ConvertedValue::plain);
    let n_th1 = r.optional("n_th1", Dim::Bare)?.map(ConvertedValue::plain);
    let n_th2 = r.optional("n_th2", Dim::Bare)?.map(ConvertedValue::plain);
    let r1 = r.optional("r1", Dim::Bare)?.map(ConvertedValue::plain).unwrap_or(0.0);
    let r2 = r.optional("r2", Dim::Bare)?.map(ConvertedValue::plain).unwrap_or(0.0);
    r.finish()?;

    let pick = |specific: Option<f64>, shared: Option<f64>, key: &str| -> Result<f64, ConfigError> {
        specific.or(shared).ok_or_else(|| ConfigError::MissingKey { key: key.to_string() })
    };
    let mut p = crate::params::reduced_three_mode(
        omega2,
        g1,
        g2,
        g_x,
        detuning,
        kappa,
        pick(gamma1, gamma, "gamma")?,
        pick(gamma2, gamma, "gamma")?,
        pick(n_th1, n_th, "n_th")?,
        pick(n_th2, n_th, "n_th")?,
    )?;
    p.r1 = r1;
    p.r2 = r2;
    Ok(LoadedConfig::Reduced3(p))
}

fn load_reduced5(raw: &RawConfig) -> Result<LoadedConfig, ConfigError> {
    if raw.model.is_some() {
        return Err(ConfigError::Inconsistent {
            key: "model".into(),
            msg: "model selection applies to physical mode only".into(),
        });
    }
    let mut r = KeyReader::new(raw, "reduced5");
    let omega_2x = r.required("omega_2x", Dim::Bare)?.plain();
    let omega_1z = r.required("omega_1z", Dim::Bare)?.plain();
    let omega_2z = r.required("omega_2z", Dim::Bare)?.plain();
    let g_x = r.required("gx", Dim::Bare)?.plain();
    let g_z = r.required("gz", Dim::Bare)?.plain();
    let complex = |base: &str, r: &mut KeyReader| -> Result<Complex64, ConfigError> {
        let re = r.required(base, Dim::Bare)?.plain();
        let im = r
            .optional(&format!("{base}_im"), Dim::Bare)?
            .map(ConvertedValue::plain)
            .unwrap_or(0.0);
        Ok(Complex64::new(re, im))
    };
    let g_1x = complex("g_x1", &mut r)?;
    let g_2x = complex("g_x2", &mut r)?;
    let g_1z = complex("g_z1", &mut r)?;
    let g_2z = complex("g_z2", &mut r)?;
    let detuning = r.required("detuning", Dim::Bare)?.plain();
    let kappa = r.required("kappa", Dim::Bare)?.plain();
    let gamma = per_mode(&mut r, "gamma", None)?;
    let n_th = per_mode(&mut r, "n_th", None)?;
    r.finish()?;

    let p = FiveModeParams::reduced(
        omega_2x,
        omega_1z,
        omega_2z,
        g_x,
        g_z,
        g_1x,
        g_2x,
        g_1z,
        g_2z,
        detuning,
        kappa,
        [gamma.x1, gamma.x2, gamma.z1, gamma.z2],
        [n_th.x1, n_th.x2, n_th.z1, n_th.z2],
    )?;
    Ok(LoadedConfig::Reduced5(p))
}

/// Parse and validate a config file body.
pub fn load_config(text: &str) -> Result<LoadedConfig, ConfigError> {
    let raw = RawConfig::parse(text)?;
    load_raw(&raw)
}

/// Validate an already-parsed raw config (the sweep path re-enters here
/// after overriding axis keys).
pub fn load_raw(raw: &RawConfig) -> Result<LoadedConfig, ConfigError> {
    match raw.mode.as_ref() {
        None => Err(ConfigError::MissingMode),
        Some((m, line)) => match m.as_str() {
            "physical" => load_physical(raw),
            "reduced3" => load_reduced3(raw),
            "reduced5" => load_reduced5(raw),
            other => Err(ConfigError::BadMode { line: *line, mode: other.to_string() }),
        },
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const REF3_CONFIG: &str = "\
# three-mode reference set
mode = reduced3
omega2 = 0.75
g1 = 0.22
g2 = -0.19
gx = -0.046
detuning = 1.0
kappa = 0.2
gamma = 0.5e-8
n_th = 1e5
";

    #[test]
    fn reference_config_loads() {
        let LoadedConfig::Reduced3(p) = load_config(REF3_CONFIG).unwrap() else {
            panic!("wrong mode");
        };
        assert_eq!(p.omega2, 0.75);
        assert_eq!(p.g1, 0.22);
        assert_eq!(p.g2, -0.19);
        assert_eq!(p.g_x, -0.046);
        assert_eq!(p.kappa, 0.2);
        assert_eq!(p.n_th1, 1e5);
    }

    #[test]
    fn empty_input_is_missing_mode() {
        assert_eq!(load_config("").unwrap_err(), ConfigError::MissingMode);
        assert_eq!(load_config("# only comments\n").unwrap_err(), ConfigError::MissingMode);
    }

    #[test]
    fn duplicate_key_names_both_lines() {
        let text = "mode = reduced3\nomega2 = 0.75\nomega2 = 0.8\n";
        match load_config(text).unwrap_err() {
            ConfigError::DuplicateKey { key, first, second } => {
                assert_eq!(key, "omega2");
                assert_eq!((first, second), (2, 3));
            }
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected_with_line() {
        let text = format!("{REF3_CONFIG}bogus = 1\n");
        match load_config(&text).unwrap_err() {
            ConfigError::UnknownKey { key, line, .. } => {
                assert_eq!(key, "bogus");
                assert_eq!(line, 11);
            }
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn parse_error_carries_line_number() {
        let text = "mode = reduced3\nomega2 0.75\n";
        assert_eq!(
            load_config(text).unwrap_err(),
            ConfigError::Parse { line: 2, text: "omega2 0.75".into() }
        );
    }

    #[test]
    fn unit_mismatch_detected() {
        let text = "mode = reduced3\nomega2 = 0.75 nm\n";
        match load_config(text).unwrap_err() {
            ConfigError::UnitMismatch { key, .. } => assert_eq!(key, "omega2"),
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn bad_mode_rejected() {
        let text = "mode = reduced9\n";
        assert!(matches!(load_config(text).unwrap_err(), ConfigError::BadMode { .. }));
    }

    pub(crate) fn physical_text() -> String {
        "mode = physical\n\
         model = three_mode\n\
         radius = 90 nm\n\
         density = 2200\n\
         epsilon_r = 2.07\n\
         wavelength = 1064 nm\n\
         na = 0.8\n\
         waist = 600 nm\n\
         power1 = 0.8 W\n\
         power2 = 0.45 W\n\
         separation_wavelengths = 2.5\n\
         detuning = 1.0\n\
         kappa = 0.2\n\
         gamma = 0.5e-8\n\
         n_th = 1e5\n"
            .to_string()
    }

    #[test]
    fn physical_config_loads_with_units() {
        let LoadedConfig::Physical { config, model } = load_config(&physical_text()).unwrap()
        else {
            panic!("wrong mode")
        };
        assert_eq!(model, PhysicalModel::ThreeMode);
        approx::assert_relative_eq!(config.radius, 90e-9, max_relative = 1e-14);
        approx::assert_relative_eq!(config.waist.unwrap(), 600e-9, max_relative = 1e-14);
        approx::assert_relative_eq!(config.separation, 2.5 * 1064e-9, max_relative = 1e-14);
        assert_eq!(config.detuning, FreqInput::Ratio(1.0));
    }

    #[test]
    fn separation_given_both_ways_is_rejected() {
        let text = physical_text().replace(
            "separation_wavelengths = 2.5",
            "separation_wavelengths = 2.5\nseparation = 2660 nm",
        );
        assert!(matches!(load_config(&text).unwrap_err(), ConfigError::Inconsistent { .. }));
    }

    #[test]
    fn frequency_units_convert_to_angular() {
        let text = physical_text().replace("kappa = 0.2", "kappa = 100 kHz");
        let LoadedConfig::Physical { config, .. } = load_config(&text).unwrap() else {
            panic!()
        };
        let FreqInput::Angular(w) = config.kappa else { panic!("expected angular kappa") };
        approx::assert_relative_eq!(w, 2.0 * std::f64::consts::PI * 1e5, max_relative = 1e-14);
    }

    #[test]
    fn per_mode_overrides_apply() {
        let text = physical_text().replace("gamma = 0.5e-8", "gamma = 0.5e-8\ngamma_2x = 1e-7");
        let LoadedConfig::Physical { config, .. } = load_config(&text).unwrap() else {
            panic!()
        };
        assert_eq!(config.gamma.x1, 0.5e-8);
        assert_eq!(config.gamma.x2, 1e-7);
    }

    #[test]
    fn reduced5_loads_complex_couplings() {
        let text = "mode = reduced5\n\
                    omega_2x = 0.75\nomega_1z = 0.41\nomega_2z = 0.31\n\
                    gx = -0.02\ngz = -0.03\n\
                    g_x1 = -0.1\ng_x1_im = 0.01\ng_x2 = -0.09\n\
                    g_z1 = -0.10\ng_z2 = -0.09\n\
                    detuning = 1.0\nkappa = 0.2\ngamma = 0.5e-8\nn_th = 1e5\n";
        let LoadedConfig::Reduced5(p) = load_config(text).unwrap() else { panic!() };
        assert_eq!(p.g_1x, Complex64::new(-0.1, 0.01));
        assert_eq!(p.omega_2z, 0.31);
    }

    #[test]
    fn round_trip_preserves_entries() {
        let raw = RawConfig::parse(&physical_text()).unwrap();
        let emitted = raw.emit();
        let reparsed = RawConfig::parse(&emitted).unwrap();
        assert_eq!(raw.mode.as_ref().unwrap().0, reparsed.mode.as_ref().unwrap().0);
        for key in raw.keys() {
            let a = raw.get(key).unwrap();
            let b = reparsed.get(key).unwrap();
            assert_eq!(a.value, b.value, "{key}");
            assert_eq!(a.unit, b.unit, "{key}");
        }
    }

    #[test]
    fn trailing_comments_ignored() {
        let text = "mode = reduced3 # reduced entry\nomega2 = 0.75 # ratio\n\
                    g1 = 0.22\ng2 = -0.19\ngx = -0.046\ndetuning = 1\nkappa = 0.2\n\
                    gamma = 1e-8\nn_th = 1e5\n";
        assert!(load_config(text).is_ok());
    }
}

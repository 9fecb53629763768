//! Parameter sweeps: grid evaluation of the params -> models -> steady ->
//! darkmode pipeline.
//!
//! Grid points are independent pure evaluations; with the `parallel` feature
//! they fan out across a rayon pool. Output ordering is grid order (first
//! axis outermost) regardless of worker count, and per-point failures are
//! recorded in-row instead of aborting the sweep.

use std::time::{Duration, Instant};

use thiserror::Error;

use super::config::{load_raw, ConfigError, LoadedConfig, PhysicalModel, RawConfig};
use crate::darkmode::{
    dark_mode_measure, five_mode_transform, hybridize_five_mode, hybridize_two_mode,
    three_mode_transform,
};
use crate::models::{
    build_five_mode, build_three_mode, solve_semiclassical, FiveModeParams, LinearModel,
    ThreeModeParams,
};
use crate::params::derive_couplings;
use crate::steady::solve_cooling;

#[derive(Debug, Error, PartialEq)]
pub enum SweepError {
    #[error("sweep spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// One sweep axis: a numeric config key scanned linearly.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub key: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    /// Unit suffix applied to the swept values (for keys that require one,
    /// e.g. lengths).
    pub unit: Option<String>,
}

impl Axis {
    pub fn value_at(&self, i: usize) -> f64 {
        if self.count == 1 {
            return self.start;
        }
        self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
    }
}

/// A sweep: base config plus one or two axes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: RawConfig,
    pub axes: Vec<Axis>,
    pub output: Option<String>,
}

impl SweepSpec {
    pub fn new(base: RawConfig, axes: Vec<Axis>) -> Result<Self, SweepError> {
        let spec = Self { base, axes, output: None };
        spec.validate()?;
        Ok(spec)
    }

    /// Parse a sweep spec file: ordinary config lines plus
    /// `axisN = <key>`, `axisN_start/stop/count[/unit]`, optional `output`.
    pub fn parse(text: &str) -> Result<Self, SweepError> {
        let mut config_lines = String::new();
        let mut axis_fields: [std::collections::BTreeMap<&str, String>; 2] = Default::default();
        let mut output = None;
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let stripped = match raw_line.find('#') {
                Some(p) => &raw_line[..p],
                None => raw_line,
            }
            .trim();
            if stripped.is_empty() {
                config_lines.push('\n');
                continue;
            }
            let Some((key, value)) = stripped.split_once('=') else {
                return Err(ConfigError::Parse { line: line_no, text: stripped.into() }.into());
            };
            let key = key.trim();
            let value = value.trim();
            let axis_slot = |k: &str| -> Option<(usize, &'static str)> {
                for (i, prefix) in ["axis1", "axis2"].iter().enumerate() {
                    if k == *prefix {
                        return Some((i, "key"));
                    }
                    for field in ["start", "stop", "count", "unit"] {
                        if k == format!("{prefix}_{field}") {
                            return Some((i, field));
                        }
                    }
                }
                None
            };
            if key == "output" {
                output = Some(value.to_string());
                config_lines.push('\n');
            } else if let Some((slot, field)) = axis_slot(key) {
                axis_fields[slot].insert(field, value.to_string());
                config_lines.push('\n');
            } else {
                config_lines.push_str(raw_line);
                config_lines.push('\n');
            }
        }
        let mut axes = Vec::new();
        for fields in axis_fields.iter() {
            if fields.is_empty() {
                continue;
            }
            let get = |f: &str| -> Result<&String, SweepError> {
                fields.get(f).ok_or_else(|| SweepError::Spec(format!("axis missing `{f}`")))
            };
            let parse_f = |f: &str| -> Result<f64, SweepError> {
                get(f)?.parse().map_err(|_| SweepError::Spec(format!("axis `{f}` not a number")))
            };
            axes.push(Axis {
                key: get("key")?.clone(),
                start: parse_f("start")?,
                stop: parse_f("stop")?,
                count: get("count")?
                    .parse()
                    .map_err(|_| SweepError::Spec("axis count not an integer".into()))?,
                unit: fields.get("unit").cloned(),
            });
        }
        let base = RawConfig::parse(&config_lines)?;
        let mut spec = Self::new(base, axes)?;
        spec.output = output;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), SweepError> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(SweepError::Spec(format!("need 1 or 2 axes, got {}", self.axes.len())));
        }
        for a in &self.axes {
            if a.count == 0 {
                return Err(SweepError::Spec(format!("axis `{}` has zero points", a.key)));
            }
            if !a.start.is_finite() || !a.stop.is_finite() {
                return Err(SweepError::Spec(format!("axis `{}` has non-finite bounds", a.key)));
            }
        }
        if self.axes.len() == 2 && self.axes[0].key == self.axes[1].key {
            return Err(SweepError::Spec(format!("axes reference the same key `{}`", self.axes[0].key)));
        }
        Ok(())
    }

    pub fn axis_names(&self) -> Vec<String> {
        self.axes.iter().map(|a| a.key.clone()).collect()
    }

    fn grid_size(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    fn point_values(&self, flat: usize) -> Vec<f64> {
        match self.axes.len() {
            1 => vec![self.axes[0].value_at(flat)],
            _ => {
                let inner = self.axes[1].count;
                vec![self.axes[0].value_at(flat / inner), self.axes[1].value_at(flat % inner)]
            }
        }
    }
}

/// One grid point's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub axis_values: Vec<f64>,
    /// Flattened numeric inputs at this grid point (key order stable).
    pub params: Vec<(String, f64)>,
    /// Phonon numbers (1x, 2x, 1z, 2z); z entries absent for three-mode
    /// models, all absent for unstable or failed points.
    pub n: [Option<f64>; 4],
    pub stable: Option<bool>,
    /// Max drift-eigenvalue real part.
    pub margin: Option<f64>,
    pub dark_residual_x: Option<f64>,
    pub dark_residual_z: Option<f64>,
    pub error: Option<String>,
    pub wall: Duration,
}

impl RunRecord {
    fn failed(axis_values: Vec<f64>, error: String, wall: Duration) -> Self {
        Self {
            axis_values,
            params: Vec::new(),
            n: [None; 4],
            stable: None,
            margin: None,
            dark_residual_x: None,
            dark_residual_z: None,
            error: Some(error),
            wall,
        }
    }
}

/// Single-shot evaluation result: the record plus the model it came from.
#[derive(Debug, Clone)]
pub struct SingleShot {
    pub record: RunRecord,
    pub mode_labels: Vec<&'static str>,
}

fn assemble_three_mode(params: &ThreeModeParams) -> Result<(LinearModel, Option<f64>), String> {
    let model = build_three_mode(params).map_err(|e| e.to_string())?;
    let dark = hybridize_two_mode(params.omega1, params.omega2, params.g1, params.g2, params.g_x)
        .ok()
        .and_then(|h| {
            let t = three_mode_transform(&h);
            dark_mode_measure(&model, &t).ok().map(|r| r[0])
        });
    Ok((model, dark))
}

fn assemble_five_mode(
    params: &FiveModeParams,
) -> Result<(LinearModel, Option<f64>, Option<f64>), String> {
    let model = build_five_mode(params).map_err(|e| e.to_string())?;
    let dark = hybridize_five_mode(
        params.g_1x,
        params.g_2x,
        params.g_1z,
        params.g_2z,
        params.g_x,
        params.g_z,
    )
    .ok()
    .and_then(|h| {
        let t = five_mode_transform(&h);
        dark_mode_measure(&model, &t).ok()
    });
    match dark {
        Some(r) => Ok((model, Some(r[0]), Some(r[1]))),
        None => Ok((model, None, None)),
    }
}

/// Evaluate one validated config through the full pipeline.
pub fn evaluate_point(loaded: &LoadedConfig, axis_values: Vec<f64>) -> RunRecord {
    let start = Instant::now();
    let outcome = (|| -> Result<RunRecord, String> {
        let (model, dark_x, dark_z, is_five) = match loaded {
            LoadedConfig::Reduced3(p) => {
                let (model, dark) = assemble_three_mode(p)?;
                (model, dark, None, false)
            }
            LoadedConfig::Reduced5(p) => {
                let (model, dx, dz) = assemble_five_mode(p)?;
                (model, dx, dz, true)
            }
            LoadedConfig::Physical { config, model: which } => {
                let derived = derive_couplings(config).map_err(|e| e.to_string())?;
                let w_ref = derived.reference_frequency();
                let detuning = config.detuning.resolve(w_ref);
                let kappa = config.kappa.resolve(w_ref);
                match which {
                    PhysicalModel::ThreeMode => {
                        let p = ThreeModeParams::from_physical(
                            &derived,
                            detuning,
                            kappa,
                            (config.gamma.x1 * w_ref, config.gamma.x2 * w_ref),
                            (config.n_th.x1, config.n_th.x2),
                        )
                        .map_err(|e| e.to_string())?;
                        let (model, dark) = assemble_three_mode(&p)?;
                        (model, dark, None, false)
                    }
                    PhysicalModel::FiveMode => {
                        let gamma = [
                            config.gamma.x1 * w_ref,
                            config.gamma.x2 * w_ref,
                            config.gamma.z1 * w_ref,
                            config.gamma.z2 * w_ref,
                        ];
                        let n_th =
                            [config.n_th.x1, config.n_th.x2, config.n_th.z1, config.n_th.z2];
                        let sol = solve_semiclassical(&derived, detuning, kappa, gamma, n_th)
                            .map_err(|e| e.to_string())?;
                        let (model, dx, dz) = assemble_five_mode(&sol.params)?;
                        (model, dx, dz, true)
                    }
                }
            }
        };
        let cooling = solve_cooling(&model).map_err(|e| e.to_string())?;
        let mut n = [None; 4];
        if let Some(ph) = &cooling.phonons {
            for (i, v) in ph.iter().enumerate() {
                let slot = if is_five { i } else { i.min(1) };
                n[slot] = Some(*v);
            }
        }
        Ok(RunRecord {
            axis_values,
            params: Vec::new(),
            n,
            stable: Some(cooling.stable),
            margin: Some(cooling.margin),
            dark_residual_x: dark_x,
            dark_residual_z: dark_z,
            error: None,
            wall: Duration::ZERO,
        })
    })();
    let wall = start.elapsed();
    match outcome {
        Ok(mut rec) => {
            rec.wall = wall;
            rec
        }
        Err(e) => RunRecord::failed(Vec::new(), e, wall),
    }
}

fn evaluate_grid_point(spec: &SweepSpec, flat: usize) -> RunRecord {
    let values = spec.point_values(flat);
    let mut raw = spec.base.clone();
    for (axis, value) in spec.axes.iter().zip(values.iter()) {
        raw.set(&axis.key, *value);
        if let Some(unit) = &axis.unit {
            raw.set_unit(&axis.key, unit);
        }
    }
    let mut record = match load_raw(&raw) {
        Ok(loaded) => evaluate_point(&loaded, values.clone()),
        Err(e) => RunRecord::failed(values.clone(), e.to_string(), Duration::ZERO),
    };
    record.axis_values = values;
    record.params = raw.keys().map(|k| (k.clone(), raw.get(k).unwrap().value)).collect();
    record
}

/// Run every grid point. `workers = Some(1)` forces the serial path;
/// `Some(n > 1)` uses a pool of n threads; `None` uses the default pool
/// (serial when the `parallel` feature is off).
pub fn run_sweep(spec: &SweepSpec, workers: Option<usize>) -> Result<Vec<RunRecord>, SweepError> {
    spec.validate()?;
    let total = spec.grid_size();
    match workers {
        Some(1) => Ok(run_serial(spec, total)),
        #[cfg(feature = "parallel")]
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| SweepError::Spec(format!("thread pool: {e}")))?;
            Ok(pool.install(|| run_parallel(spec, total)))
        }
        #[cfg(feature = "parallel")]
        None => Ok(run_parallel(spec, total)),
        #[cfg(not(feature = "parallel"))]
        _ => Ok(run_serial(spec, total)),
    }
}

/// Serial executor; always available and the reference for record order.
pub fn run_serial(spec: &SweepSpec, total: usize) -> Vec<RunRecord> {
    (0..total).map(|i| evaluate_grid_point(spec, i)).collect()
}

/// Data-parallel executor over the grid; collection preserves grid order.
#[cfg(feature = "parallel")]
pub fn run_parallel(spec: &SweepSpec, total: usize) -> Vec<RunRecord> {
    use rayon::prelude::*;
    (0..total).into_par_iter().map(|i| evaluate_grid_point(spec, i)).collect()
}

/// Evaluate a plain config as a single run.
pub fn run_single(loaded: &LoadedConfig) -> SingleShot {
    let record = evaluate_point(loaded, Vec::new());
    let mode_labels = match loaded {
        LoadedConfig::Reduced3(_) => vec!["1x", "2x"],
        LoadedConfig::Physical { model: PhysicalModel::ThreeMode, .. } => vec!["1x", "2x"],
        _ => vec!["1x", "2x", "1z", "2z"],
    };
    SingleShot { record, mode_labels }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::tests::{physical_text, REF3_CONFIG};

    fn ref3_sweep(count: usize) -> SweepSpec {
        let base = RawConfig::parse(REF3_CONFIG).unwrap();
        SweepSpec::new(
            base,
            vec![Axis { key: "detuning".into(), start: 0.5, stop: 1.5, count, unit: None }],
        )
        .unwrap()
    }

    #[test]
    fn detuning_sweep_finds_sideband_minima() {
        let spec = ref3_sweep(101);
        let recs = run_sweep(&spec, Some(1)).unwrap();
        assert_eq!(recs.len(), 101);
        let n1: Vec<f64> = recs.iter().map(|r| r.n[0].unwrap()).collect();
        let n2: Vec<f64> = recs.iter().map(|r| r.n[1].unwrap()).collect();
        let i1 = n1.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
        let i2 = n2.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
        let d1 = recs[i1].axis_values[0];
        let d2 = recs[i2].axis_values[0];
        assert!(n1[i1] < 1.0 && n2[i2] < 1.0);
        assert!((d1 - 1.0).abs() <= 0.05, "n1 minimum at {d1}");
        assert!((d2 - 0.75).abs() <= 0.05, "n2 minimum at {d2}");
    }

    #[test]
    fn single_point_sweep_matches_single_shot() {
        let spec = {
            let base = RawConfig::parse(REF3_CONFIG).unwrap();
            SweepSpec::new(
                base,
                vec![Axis { key: "detuning".into(), start: 1.0, stop: 1.0, count: 1, unit: None }],
            )
            .unwrap()
        };
        let recs = run_sweep(&spec, Some(1)).unwrap();
        assert_eq!(recs.len(), 1);
        let single = run_single(&crate::harness::load_config(REF3_CONFIG).unwrap());
        assert_eq!(recs[0].n, single.record.n);
        assert_eq!(recs[0].margin, single.record.margin);
    }

    #[test]
    fn per_point_errors_recorded_in_row() {
        // axis drives kappa through zero into invalid territory
        let base = RawConfig::parse(REF3_CONFIG).unwrap();
        let spec = SweepSpec::new(
            base,
            vec![Axis { key: "kappa".into(), start: -0.1, stop: 0.2, count: 4, unit: None }],
        )
        .unwrap();
        let recs = run_sweep(&spec, Some(1)).unwrap();
        assert_eq!(recs.len(), 4);
        assert!(recs[0].error.is_some());
        assert!(recs[0].n[0].is_none());
        assert!(recs[3].error.is_none());
        assert!(recs[3].n[0].is_some());
    }

    #[test]
    fn physical_power_sweep_runs() {
        let base = RawConfig::parse(&physical_text()).unwrap();
        let spec = SweepSpec::new(
            base,
            vec![
                Axis { key: "power1".into(), start: 0.4, stop: 0.8, count: 3, unit: None },
                Axis { key: "power2".into(), start: 0.4, stop: 0.8, count: 3, unit: None },
            ],
        )
        .unwrap();
        let recs = run_sweep(&spec, Some(1)).unwrap();
        assert_eq!(recs.len(), 9);
        for r in &recs {
            assert!(r.error.is_none(), "{:?}", r.error);
            assert_eq!(r.stable, Some(true));
        }
        // equal powers sit on the dark-mode diagonal: suppressed cooling
        let diag = recs
            .iter()
            .filter(|r| (r.axis_values[0] - r.axis_values[1]).abs() < 1e-12)
            .map(|r| r.n[0].unwrap().max(r.n[1].unwrap()))
            .fold(f64::INFINITY, f64::min);
        let off = recs
            .iter()
            .filter(|r| (r.axis_values[0] - r.axis_values[1]).abs() > 0.1)
            .map(|r| r.n[0].unwrap().max(r.n[1].unwrap()))
            .fold(f64::INFINITY, f64::min);
        assert!(diag > 100.0 * off, "diag {diag} vs off-diagonal {off}");
    }

    #[test]
    fn physical_five_mode_single_shot() {
        // Off the nodes the z sector couples through nearly imaginary
        // strengths; the transcribed coefficient matrix is drift-unstable
        // there and the record must say so instead of faking cooling.
        let text = physical_text()
            .replace("model = three_mode", "model = five_mode")
            .replace("separation_wavelengths = 2.5", "separation_wavelengths = 2.3");
        let loaded = crate::harness::load_config(&text).unwrap();
        let shot = run_single(&loaded);
        assert!(shot.record.error.is_none(), "{:?}", shot.record.error);
        assert_eq!(shot.record.stable, Some(false));
        assert!(shot.record.n.iter().all(Option::is_none));
        assert!(shot.record.margin.unwrap() > 0.0);
    }

    #[test]
    fn physical_five_mode_at_nodes_matches_three_mode() {
        // at the node separation the z sector decouples and the x-sector
        // cooling agrees with the three-mode reduction
        let three = run_single(&crate::harness::load_config(&physical_text()).unwrap());
        let five_text = physical_text().replace("model = three_mode", "model = five_mode");
        let five = run_single(&crate::harness::load_config(&five_text).unwrap());
        assert_eq!(five.record.stable, Some(true), "{:?}", five.record);
        let (n1_3, n1_5) = (three.record.n[0].unwrap(), five.record.n[0].unwrap());
        let (n2_3, n2_5) = (three.record.n[1].unwrap(), five.record.n[1].unwrap());
        assert!((n1_3 - n1_5).abs() / n1_3 < 1e-6, "{n1_3} vs {n1_5}");
        assert!((n2_3 - n2_5).abs() / n2_3 < 1e-6, "{n2_3} vs {n2_5}");
        // the z modes keep their mutual coupling but lose the cooling
        // channel: the pair redistributes a little, stays at the bath scale
        assert!((five.record.n[2].unwrap() - 1e5).abs() / 1e5 < 0.15);
        assert!((five.record.n[3].unwrap() - 1e5).abs() / 1e5 < 0.15);
    }

    #[test]
    fn sweep_spec_text_round_trip() {
        let text = format!(
            "{REF3_CONFIG}axis1 = detuning\naxis1_start = 0.5\naxis1_stop = 1.5\naxis1_count = 11\noutput = out.csv\n"
        );
        let spec = SweepSpec::parse(&text).unwrap();
        assert_eq!(spec.axes.len(), 1);
        assert_eq!(spec.axes[0].key, "detuning");
        assert_eq!(spec.axes[0].count, 11);
        assert_eq!(spec.output.as_deref(), Some("out.csv"));
        let recs = run_sweep(&spec, Some(1)).unwrap();
        assert_eq!(recs.len(), 11);
    }

    #[test]
    fn duplicate_axes_rejected() {
        let base = RawConfig::parse(REF3_CONFIG).unwrap();
        let err = SweepSpec::new(
            base,
            vec![
                Axis { key: "detuning".into(), start: 0.5, stop: 1.5, count: 3, unit: None },
                Axis { key: "detuning".into(), start: 0.5, stop: 1.5, count: 3, unit: None },
            ],
        )
        .unwrap_err();
        assert!(matches!(err, SweepError::Spec(_)));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_equals_serial() {
        let spec = ref3_sweep(31);
        let serial = run_sweep(&spec, Some(1)).unwrap();
        for workers in [2, 8] {
            let par = run_sweep(&spec, Some(workers)).unwrap();
            assert_eq!(serial.len(), par.len());
            for (a, b) in serial.iter().zip(par.iter()) {
                assert_eq!(a.axis_values, b.axis_values);
                assert_eq!(a.n, b.n);
                assert_eq!(a.margin, b.margin);
            }
        }
    }
}

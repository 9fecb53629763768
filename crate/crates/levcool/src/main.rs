//! `levcool`: batch runner for the cavity-levitated cooling models.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nalgebra::DMatrix;

use levcool::harness::{self, LoadedConfig, SweepSpec};
use levcool::optics;
use levcool::params;

#[derive(Parser)]
#[command(name = "levcool", version, about = "Steady-state cooling of two cavity-coupled levitated nanoparticles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single configuration and print the steady state.
    Run {
        /// Config file (`key = value` lines).
        config: PathBuf,
        /// Also write a one-row CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a parameter sweep defined by a spec file.
    Sweep {
        /// Sweep spec file: config lines plus axis1/axis2 blocks.
        spec: PathBuf,
        /// CSV output path (overrides the spec's `output =` line).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also emit an SVG plot next to the CSV.
        #[arg(long)]
        svg: bool,
        /// Worker threads (1 = serial; default: all cores).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Scan the optical binding force over a separation range.
    ForceScan {
        /// Physical config file with r0_start/r0_stop/r0_count keys.
        config: PathBuf,
        /// CSV output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in invariant self-tests.
    Check,
}

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, out } => cmd_run(&config, out.as_deref()),
        Command::Sweep { spec, out, svg, workers } => cmd_sweep(&spec, out.as_deref(), svg, workers),
        Command::ForceScan { config, out } => cmd_force_scan(&config, out.as_deref()),
        Command::Check => cmd_check(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<(), (u8, String)>;

fn read_config(path: &Path) -> Result<String, (u8, String)> {
    std::fs::read_to_string(path)
        .map_err(|e| (EXIT_CONFIG, format!("cannot read {}: {e}", path.display())))
}

fn cmd_run(path: &Path, out: Option<&Path>) -> CmdResult {
    let text = read_config(path)?;
    let loaded = harness::load_config(&text).map_err(|e| (EXIT_CONFIG, e.to_string()))?;
    let shot = harness::run_single(&loaded);
    let rec = &shot.record;
    if let Some(err) = &rec.error {
        return Err((EXIT_NUMERICAL, err.clone()));
    }
    match rec.stable {
        Some(true) => {
            println!("stable: true (margin {:.6e})", rec.margin.unwrap());
            for (label, n) in shot.mode_labels.iter().zip(rec.n.iter()) {
                if let Some(n) = n {
                    println!("n_{label} = {n:.6e}");
                }
            }
        }
        _ => {
            println!("stable: false (margin {:.6e})", rec.margin.unwrap_or(f64::NAN));
            println!("no steady state; phonon numbers not defined");
        }
    }
    if let Some(dx) = rec.dark_residual_x {
        println!("dark_residual_x = {dx:.6e}");
    }
    if let Some(dz) = rec.dark_residual_z {
        println!("dark_residual_z = {dz:.6e}");
    }
    if let Some(out) = out {
        harness::emit_csv(out, &[], std::slice::from_ref(rec))
            .map_err(|e| (EXIT_NUMERICAL, format!("cannot write {}: {e}", out.display())))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn cmd_sweep(path: &Path, out: Option<&Path>, svg: bool, workers: Option<usize>) -> CmdResult {
    let text = read_config(path)?;
    let spec = SweepSpec::parse(&text).map_err(|e| (EXIT_CONFIG, e.to_string()))?;
    let records = harness::run_sweep(&spec, workers).map_err(|e| (EXIT_CONFIG, e.to_string()))?;
    let out_path = out
        .map(Path::to_path_buf)
        .or_else(|| spec.output.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("sweep.csv"));
    let names = spec.axis_names();
    harness::emit_csv(&out_path, &names, &records)
        .map_err(|e| (EXIT_NUMERICAL, format!("cannot write {}: {e}", out_path.display())))?;
    let failures = records.iter().filter(|r| r.error.is_some()).count();
    let unstable = records.iter().filter(|r| r.stable == Some(false)).count();
    println!(
        "wrote {} ({} points, {} unstable, {} failed)",
        out_path.display(),
        records.len(),
        unstable,
        failures
    );
    if svg {
        let svg_path = out_path.with_extension("svg");
        harness::write_svg(&svg_path, &names, &records)
            .map_err(|e| (EXIT_NUMERICAL, format!("cannot write {}: {e}", svg_path.display())))?;
        println!("wrote {}", svg_path.display());
    }
    if failures == records.len() {
        return Err((EXIT_NUMERICAL, "every grid point failed".into()));
    }
    Ok(())
}

fn cmd_force_scan(path: &Path, out: Option<&Path>) -> CmdResult {
    let text = read_config(path)?;
    // strip the scan keys, load the rest as a physical config
    let mut scan: std::collections::BTreeMap<String, f64> = Default::default();
    let mut rest = String::new();
    for line in text.lines() {
        let stripped = line.split('#').next().unwrap_or("").trim();
        let mut matched = false;
        for key in ["r0_start", "r0_stop", "r0_count"] {
            if let Some(v) = stripped.strip_prefix(key) {
                if let Some(v) = v.trim().strip_prefix('=') {
                    let v: f64 = v
                        .trim()
                        .parse()
                        .map_err(|_| (EXIT_CONFIG, format!("bad value for {key}")))?;
                    scan.insert(key.to_string(), v);
                    matched = true;
                }
            }
        }
        if !matched {
            rest.push_str(line);
            rest.push('\n');
        }
    }
    let loaded = harness::load_config(&rest).map_err(|e| (EXIT_CONFIG, e.to_string()))?;
    let LoadedConfig::Physical { config, .. } = loaded else {
        return Err((EXIT_CONFIG, "force-scan requires mode = physical".into()));
    };
    let particle = params::derive_particle(&config).map_err(|e| (EXIT_CONFIG, e.to_string()))?;
    let tw1 = params::derive_tweezer(&config, 1).map_err(|e| (EXIT_CONFIG, e.to_string()))?;
    let tw2 = params::derive_tweezer(&config, 2).map_err(|e| (EXIT_CONFIG, e.to_string()))?;
    let range = (
        scan.get("r0_start").copied().unwrap_or(0.3),
        scan.get("r0_stop").copied().unwrap_or(3.0),
    );
    let count = scan.get("r0_count").copied().unwrap_or(271.0) as usize;
    let rows = optics::force_scan(
        range,
        count,
        &optics::ForceScanParams {
            e10: tw1.eps_tw,
            e20: tw2.eps_tw,
            alpha: particle.polarizability,
            wavelength: config.wavelength,
        },
    )
    .map_err(|e| (EXIT_NUMERICAL, e.to_string()))?;
    let out_path = out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("force_scan.csv"));
    harness::emit_force_csv(&out_path, &rows)
        .map_err(|e| (EXIT_NUMERICAL, format!("cannot write {}: {e}", out_path.display())))?;
    println!("wrote {} ({} rows)", out_path.display(), rows.len());
    Ok(())
}

fn check_line(name: &str, ok: bool) -> bool {
    println!("{}: {name}", if ok { "PASS" } else { "FAIL" });
    ok
}

/// Built-in invariant battery: exercises the tensor identities, the Lyapunov
/// solver contract, and determinism of the sweep path.
fn cmd_check() -> CmdResult {
    use levcool::darkmode::{dark_mode_measure, hybridize_two_mode, three_mode_transform};
    use levcool::models::build_three_mode;
    use levcool::steady::{evolve_covariance, is_stable, solve_lyapunov};
    use nalgebra::Vector3;

    let mut all = true;

    // tensor identities on a fixed batch of directions
    let mut ok = true;
    let dirs = [
        Vector3::new(1.0, 0.0, 0.0),
        Vector3::new(0.0, 1.0, 0.0),
        Vector3::new(0.0, 0.0, 1.0),
        Vector3::new(0.6, -0.8, 0.0),
        Vector3::new(0.36, 0.48, 0.8),
        Vector3::new(-0.5, 0.5, std::f64::consts::FRAC_1_SQRT_2),
    ];
    for r in dirs {
        let mf = optics::far_tensor(r);
        let mn = optics::near_tensor(r);
        ok &= (mf * r).norm() < 1e-12;
        ok &= (mn * r - 2.0 * r).norm() < 1e-12;
    }
    all &= check_line("near/far tensor identities", ok);

    // Green parity and symmetry
    let k = 2.0 * std::f64::consts::PI / 1064e-9;
    let rv = Vector3::new(1.1e-6, -0.4e-6, 0.7e-6);
    let g1 = optics::green_tensor(rv, k).unwrap();
    let g2 = optics::green_tensor(-rv, k).unwrap();
    let mut ok = true;
    for i in 0..3 {
        for j in 0..3 {
            ok &= (g1[(i, j)] - g2[(i, j)]).norm() < 1e-12 * g1[(i, j)].norm().max(1e-30);
            ok &= (g1[(i, j)] - g1[(j, i)]).norm() < 1e-12 * g1[(i, j)].norm().max(1e-30);
        }
    }
    all &= check_line("Green tensor parity/symmetry", ok);

    // Lyapunov contract on the reference model
    let p = params::reduced_three_mode(0.75, 0.22, -0.19, -0.046, 1.0, 0.2, 0.5e-8, 0.5e-8, 1e5, 1e5)
        .unwrap();
    let m = build_three_mode(&p).unwrap();
    let st = is_stable(&m.drift).unwrap();
    let v = solve_lyapunov(&m.drift, &m.noise).unwrap();
    let resid = (&m.drift * &v + &v * m.drift.transpose() + &m.noise).norm() / m.noise.norm();
    all &= check_line("reference model stable", st.stable);
    all &= check_line("Lyapunov residual <= 1e-10", resid <= 1e-10);

    // direct solve vs time integration (enlarged damping)
    let p2 =
        params::reduced_three_mode(0.75, 0.22, -0.19, -0.046, 1.0, 0.2, 1e-3, 1e-3, 1e5, 1e5)
            .unwrap();
    let m2 = build_three_mode(&p2).unwrap();
    let v_direct = solve_lyapunov(&m2.drift, &m2.noise).unwrap();
    let t_final = 40.0 / is_stable(&m2.drift).unwrap().margin.abs();
    let v0 = DMatrix::<f64>::zeros(6, 6);
    let v_ode = evolve_covariance(&m2.drift, &m2.noise, &v0, t_final, 0.02).unwrap();
    let rel = (&v_ode - &v_direct).norm() / v_direct.norm();
    all &= check_line("ODE integration matches direct solve (1e-6)", rel < 1e-6);

    // dark-mode algebra
    let h = hybridize_two_mode(1.0, 1.0, 0.22, -0.22, -0.046).unwrap();
    let ok = h.g_q == 0.0 && h.g_p == 0.0;
    all &= check_line("dark-mode condition nulls hybrid couplings", ok);
    let pd = params::reduced_three_mode(1.0, 0.22, -0.22, -0.046, 1.0, 0.2, 0.5e-8, 0.5e-8, 1e5, 1e5)
        .unwrap();
    let md = build_three_mode(&pd).unwrap();
    let res = dark_mode_measure(&md, &three_mode_transform(&h)).unwrap();
    all &= check_line("dark-mode residual vanishes at the condition", res[0] < 1e-12);

    // determinism of the sweep -> CSV path
    let spec_text = "mode = reduced3\nomega2 = 0.75\ng1 = 0.22\ng2 = -0.19\ngx = -0.046\n\
                     detuning = 1.0\nkappa = 0.2\ngamma = 0.5e-8\nn_th = 1e5\n\
                     axis1 = detuning\naxis1_start = 0.5\naxis1_stop = 1.5\naxis1_count = 21\n";
    let spec = SweepSpec::parse(spec_text).unwrap();
    let names = spec.axis_names();
    let a = harness::records_csv_string(&names, &harness::run_sweep(&spec, Some(1)).unwrap());
    let b = harness::records_csv_string(&names, &harness::run_sweep(&spec, Some(1)).unwrap());
    all &= check_line("sweep CSV deterministic", a == b);
    #[cfg(feature = "parallel")]
    {
        let c = harness::records_csv_string(&names, &harness::run_sweep(&spec, Some(8)).unwrap());
        all &= check_line("parallel sweep identical to serial", a == c);
    }

    if all {
        Ok(())
    } else {
        Err((EXIT_NUMERICAL, "self-test failures".into()))
    }
}

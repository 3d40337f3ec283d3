//! `crn`: exact analysis of mass-action reaction networks from the command
//! line. Data goes to standard output (or `-o` files), diagnostics to standard
//! error.
//!
//! Exit codes: 0 success, 2 parse error, 3 unsupported dimension or size,
//! 4 invalid scalar polynomial, 1 any other failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crn_core::algebra::{format_polynomial, parse_polynomial};
use crn_core::classify::{classification_report, falsify_endotactic, falsify_strongly_endotactic};
use crn_core::dynamics::{integrate, newton_fixed_point, phase_portrait_grid, sample_steady_curve};
use crn_core::error::CrnError;
use crn_core::examples;
use crn_core::network::{field_from_json, field_to_json, MassActionSystem};
use crn_core::realize::{is_dynamically_equivalent, newton_polytope_candidates, wr_realizable_on, WrDecision};
use crn_core::transform::{apply_scalar_polynomial, construct_full_unit, ScalarPolynomial};

#[derive(Parser)]
#[command(
    name = "crn",
    version,
    about = "Construct, transform, classify, and numerically analyze \
             mass-action reaction networks with exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a network: linkage classes, deficiency, reversibility,
    /// endotactic tests, siphons.
    Classify {
        /// System JSON file.
        network: PathBuf,
        /// Emit the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
        /// Cross-check the endotactic verdicts with this many random
        /// directions (0 disables).
        #[arg(long, default_value_t = 0)]
        falsify: usize,
        /// Seed for the random-direction falsifier.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a full unit from a base system and a scalar multiplier.
    Construct {
        /// Base system JSON file.
        #[arg(long)]
        base: PathBuf,
        /// Scalar polynomial, e.g. "x^2+x*y^2+y-4*x*y".
        #[arg(long)]
        scalar: String,
        /// Output path for the combined system + field JSON (default stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide dynamical equivalence of two systems.
    Equiv {
        a: PathBuf,
        b: PathBuf,
    },
    /// Decide weakly reversible realizability of a field on the lattice
    /// points of its support hull (dilated by --margin).
    WrCheck {
        /// Field JSON file.
        #[arg(long)]
        field: PathBuf,
        /// Dilation margin for the candidate complex set.
        #[arg(long, default_value_t = 0)]
        margin: u32,
    },
    /// Integrate a system's mass-action dynamics and emit a CSV trajectory.
    Simulate {
        /// System JSON file.
        #[arg(long)]
        system: PathBuf,
        /// Initial state, comma-separated positives, e.g. "1.2,0.3".
        #[arg(long)]
        x0: String,
        #[arg(long, default_value_t = 20.0)]
        t_end: f64,
        /// Per-step error tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample the steady-state curve and fixed point of a bundled example.
    SteadyStates {
        /// Bundled example name (see `crn examples list`).
        #[arg(long)]
        example: String,
        /// Number of scan lines.
        #[arg(long, default_value_t = 146)]
        lines: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit a normalized vector-field grid as CSV.
    Portrait {
        /// System JSON file.
        #[arg(long)]
        system: PathBuf,
        /// Box as "lo,hi", applied to every coordinate.
        #[arg(long, default_value = "0,3")]
        bounds: String,
        #[arg(long, default_value_t = 50)]
        resolution: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List or export the bundled examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// Print the available example names.
    List,
    /// Write `<name>.base.json` and `<name>.field.json` into a directory.
    Export {
        name: String,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

enum CliError {
    Core(CrnError),
    Io(String),
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CrnError::Parse { .. } | CrnError::Json(_) => 2,
                CrnError::UnsupportedDimension { .. }
                | CrnError::ArrangementTooLarge { .. }
                | CrnError::TooManySpecies { .. }
                | CrnError::CandidateSetTooLarge { .. } => 3,
                CrnError::InvalidScalarPolynomial(_) => 4,
                _ => 1,
            },
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(m) | CliError::Usage(m) => m.clone(),
        }
    }
}

impl From<CrnError> for CliError {
    fn from(e: CrnError) -> Self {
        CliError::Core(e)
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<MassActionSystem, CliError> {
    Ok(MassActionSystem::from_json(&read_file(path)?)?)
}

fn emit(output: Option<&PathBuf>, data: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, data)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify { network, json, falsify, seed } => {
            let sys = load_system(&network)?;
            let report = classification_report(&sys)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report)
                        .map_err(|e| CliError::Io(e.to_string()))?
                );
            } else {
                print!("{}", report.to_table());
            }
            if falsify > 0 {
                let net = sys.network();
                match falsify_endotactic(net, falsify, seed) {
                    Some(u) if report.endotactic => {
                        return Err(CliError::Io(format!(
                            "falsifier refuted the endotactic verdict at {u:?}"
                        )))
                    }
                    Some(u) => eprintln!("falsifier confirms non-endotactic at {u:?}"),
                    None => eprintln!("falsifier found no refuting direction ({falsify} trials)"),
                }
                match falsify_strongly_endotactic(net, falsify, seed.wrapping_add(1)) {
                    Some(u) if report.strongly_endotactic => {
                        return Err(CliError::Io(format!(
                            "falsifier refuted the strongly endotactic verdict at {u:?}"
                        )))
                    }
                    _ => {}
                }
            }
            Ok(())
        }
        Command::Construct { base, scalar, output } => {
            let base_sys = load_system(&base)?;
            let species = base_sys.species().clone();
            let h = parse_polynomial(&scalar, species.names())?;
            let full = if h.has_negative_term() {
                let validated = ScalarPolynomial::validate(h.clone())?;
                let ones = vec![crn_core::algebra::rat_int(1); species.len()];
                eprintln!(
                    "scalar check: negative exponent strictly inside the positive hull; \
                     value at the all-ones point = {}",
                    crn_core::algebra::format_rational(&h.eval_rational(&ones)?)
                );
                construct_full_unit(&base_sys, &validated)?
            } else {
                eprintln!(
                    "scalar check: no negative term, construction proceeds without a \
                     steady-curve guarantee"
                );
                apply_scalar_polynomial(&base_sys, &h)?
            };
            let field = crn_core::network::mass_action_field(&full);
            let combined = serde_json::json!({
                "system": serde_json::from_str::<serde_json::Value>(&full.to_json())
                    .expect("system json is valid"),
                "field": serde_json::from_str::<serde_json::Value>(
                    &field_to_json(&species, &field)
                )
                .expect("field json is valid"),
            });
            let mut text =
                serde_json::to_string_pretty(&combined).map_err(|e| CliError::Io(e.to_string()))?;
            text.push('\n');
            emit(output.as_ref(), &text)
        }
        Command::Equiv { a, b } => {
            let sys_a = load_system(&a)?;
            let sys_b = load_system(&b)?;
            if is_dynamically_equivalent(&sys_a, &sys_b)? {
                println!("equivalent");
            } else {
                println!("not equivalent");
            }
            Ok(())
        }
        Command::WrCheck { field, margin } => {
            let (species, f) = field_from_json(&read_file(&field)?)?;
            let candidates = newton_polytope_candidates(&f, margin)?;
            let decision = wr_realizable_on(&species, &f, &candidates)?;
            let (realizable, witness) = match &decision {
                WrDecision::Realizable { witness, .. } => (
                    true,
                    Some(
                        serde_json::from_str::<serde_json::Value>(&witness.to_json())
                            .expect("witness json is valid"),
                    ),
                ),
                WrDecision::NotRealizable { .. } => (false, None),
            };
            eprintln!(
                "{} on candidate set (size {}, margin {margin})",
                if realizable { "WR-realizable" } else { "not WR-realizable" },
                candidates.len()
            );
            let value = serde_json::json!({
                "realizable": realizable,
                "margin": margin,
                "candidate_count": candidates.len(),
                "candidates": candidates
                    .complexes()
                    .iter()
                    .map(|e| e.entries().to_vec())
                    .collect::<Vec<_>>(),
                "rounds": decision.rounds(),
                "witness": witness,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&value).map_err(|e| CliError::Io(e.to_string()))?
            );
            Ok(())
        }
        Command::Simulate { system, x0, t_end, tol, output } => {
            let sys = load_system(&system)?;
            let start: Vec<f64> = x0
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Usage(format!("bad --x0: {e}")))?;
            if start.len() != sys.dim() {
                return Err(CliError::Usage(format!(
                    "--x0 has {} coordinates for {} species",
                    start.len(),
                    sys.dim()
                )));
            }
            let f = crn_core::network::mass_action_field(&sys);
            let traj = integrate(&f, &start, t_end, tol)?;
            let mut csv = format!("t,{}\n", sys.species().names().join(","));
            for (t, state) in traj.times.iter().zip(&traj.states) {
                let row: Vec<String> = state.iter().map(|c| format!("{c:.12e}")).collect();
                let _ = writeln!(csv, "{t:.12e},{}", row.join(","));
            }
            eprintln!(
                "integrated {} steps, termination: {:?}",
                traj.step_sizes.len(),
                traj.termination
            );
            emit(output.as_ref(), &csv)
        }
        Command::SteadyStates { example, lines, output } => {
            let bundle = examples::by_name(&example).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown example '{example}'; try `crn examples list`"
                ))
            })?;
            let h = bundle.scalar();
            let full = bundle.full_field();
            let sample = sample_steady_curve(&h, &bundle.bounds, lines)?;
            let refined = newton_fixed_point(&bundle.base_field(), &bundle.newton_seed, 1e-10)?;
            let names = bundle.species_list().names().join(",");
            let mut csv = format!("kind,{names},residual\n");
            let residuals = sample.residuals_against(&full);
            for (p, r) in sample.points.iter().zip(residuals) {
                let row: Vec<String> = p.iter().map(|c| format!("{c:.12e}")).collect();
                let _ = writeln!(csv, "curve,{},{r:.3e}", row.join(","));
            }
            let fixed_res = full
                .eval_f64(&refined.point)
                .iter()
                .fold(0.0_f64, |m, c| m.max(c.abs()));
            let row: Vec<String> = refined.point.iter().map(|c| format!("{c:.12e}")).collect();
            let _ = writeln!(csv, "fixed,{},{fixed_res:.3e}", row.join(","));
            if bundle.name == "ex3d" {
                eprintln!(
                    "note: the spatial base unit also has the boundary steady line \
                     (1, 0, z), z >= 0, outside the positive sampling box"
                );
            }
            eprintln!("{} curve points, fixed point at {:?}", sample.len(), refined.point);
            emit(output.as_ref(), &csv)
        }
        Command::Portrait { system, bounds, resolution, output } => {
            let sys = load_system(&system)?;
            let parts: Vec<f64> = bounds
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Usage(format!("bad --bounds: {e}")))?;
            if parts.len() != 2 || parts[1] <= parts[0] {
                return Err(CliError::Usage("--bounds must be \"lo,hi\" with lo < hi".into()));
            }
            let f = crn_core::network::mass_action_field(&sys);
            let box_: Vec<(f64, f64)> = (0..sys.dim()).map(|_| (parts[0], parts[1])).collect();
            let grid = phase_portrait_grid(&f, &box_, resolution)?;
            let names = sys.species().names();
            let u_names: Vec<String> = names.iter().map(|n| format!("u_{n}")).collect();
            let mut csv = format!("{},{},mag\n", names.join(","), u_names.join(","));
            for ((p, u), m) in grid.points.iter().zip(&grid.unit_vectors).zip(&grid.magnitudes) {
                let pr: Vec<String> = p.iter().map(|c| format!("{c:.6e}")).collect();
                let ur: Vec<String> = u.iter().map(|c| format!("{c:.6e}")).collect();
                let _ = writeln!(csv, "{},{},{m:.6e}", pr.join(","), ur.join(","));
            }
            emit(output.as_ref(), &csv)
        }
        Command::Examples { action } => match action {
            ExamplesAction::List => {
                for b in examples::all() {
                    println!("{:6} {}", b.name, b.description);
                }
                Ok(())
            }
            ExamplesAction::Export { name, dir } => {
                let bundle = examples::by_name(&name).ok_or_else(|| {
                    CliError::Usage(format!("unknown example '{name}'; try `crn examples list`"))
                })?;
                let species = bundle.species_list();
                let base_path = dir.join(format!("{name}.base.json"));
                let field_path = dir.join(format!("{name}.field.json"));
                std::fs::write(&base_path, bundle.base_system().to_json())
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", base_path.display())))?;
                std::fs::write(&field_path, field_to_json(&species, &bundle.full_field()))
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", field_path.display())))?;
                println!("scalar: {}", format_scalar(&bundle));
                println!("fixed point: {:?}", bundle.fixed_point);
                println!("wrote {} and {}", base_path.display(), field_path.display());
                Ok(())
            }
        },
    }
}

fn format_scalar(bundle: &examples::ExampleBundle) -> String {
    let species = bundle.species_list();
    format_polynomial(&bundle.scalar(), species.names())
}

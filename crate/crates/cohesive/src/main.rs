//! Command-line interface: law evaluation, hypothesis validation, opening
//! path simulation, and the quasistatic laminate solver.

use clap::{Parser, Subcommand};
use cohesive::config;
use cohesive::error::SolverError;
use cohesive::laminate::{run_evolution, SolverOptions};
use cohesive::mixedmode::{classify_region, CouplingMode, HistoryPair};
use cohesive::pathsim::{case_law, case_setup, simulate_path, LoadingPath, PathTrace};
use cohesive::plot::{line_plot, Series};
use cohesive::validate::{check_all, CheckReport, GridSpec};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_VALIDATION_FAIL: u8 = 1;
const EXIT_NO_CONVERGENCE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "cohesive",
    about = "Mixed-mode cohesive zone laws with loading/unloading history",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a law at one opening/history point.
    Eval {
        /// Law config file (TOML).
        #[arg(long)]
        law: PathBuf,
        /// Opening pair y1 y2.
        #[arg(long, num_args = 2, value_names = ["Y1", "Y2"])]
        y: Vec<f64>,
        /// History pair z1 z2 (default: 0 0).
        #[arg(long, num_args = 2, value_names = ["Z1", "Z2"], default_values_t = [0.0, 0.0])]
        z: Vec<f64>,
    },
    /// Run all hypothesis checks on a law and print the report table.
    Validate {
        /// Law config file (TOML).
        law: PathBuf,
        /// Points per sampling axis (default 40).
        #[arg(long, default_value_t = 40)]
        n_axis: usize,
        /// Random sample count (default 10000).
        #[arg(long, default_value_t = 10_000)]
        n_random: usize,
        /// RNG seed for the random cloud (default 42).
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Reproduce one of the four oscillating-path cases (1-4).
    Case {
        /// Case number (1-4).
        n: usize,
        /// Which construction to simulate (default: both).
        #[arg(long, default_value = "both", value_parser = ["potential", "nonpotential", "both"])]
        model: String,
        /// Samples along the path (default 2000).
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Output directory for CSV and SVG files.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a quasistatic laminate evolution from a problem config.
    Laminate {
        /// Problem config file (TOML).
        problem: PathBuf,
        /// Output directory for CSV and SVG files.
        #[arg(long)]
        out: PathBuf,
        /// Also dump per-node fields of the final step.
        #[arg(long, default_value_t = false)]
        fields: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successful exits
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK),
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Eval { law, y, z } => cmd_eval(&law, &y, &z),
        Command::Validate {
            law,
            n_axis,
            n_random,
            seed,
        } => cmd_validate(&law, n_axis, n_random, seed),
        Command::Case {
            n,
            model,
            samples,
            out,
        } => cmd_case(n, &model, samples, &out),
        Command::Laminate {
            problem,
            out,
            fields,
        } => cmd_laminate(&problem, &out, fields),
    }
}

fn cmd_eval(law_path: &Path, y: &[f64], z: &[f64]) -> Result<u8, String> {
    let law = config::load_law(law_path).map_err(|e| e.to_string())?;
    let (y1, y2) = (y[0], y[1]);
    let zp = HistoryPair::new(z[0], z[1]).map_err(|e| e.to_string())?;
    let region = classify_region(y1, y2, zp);
    let phi = law.phi(y1, y2, zp).map_err(|e| e.to_string())?;
    let grad = law.grad_phi(y1, y2, zp).map_err(|e| e.to_string())?;
    let tension = law.tension(y1, y2, zp).map_err(|e| e.to_string())?;
    let traction = law.traction(y1, y2, zp).map_err(|e| e.to_string())?;
    let mode = match law.mode() {
        CouplingMode::Potential => "potential",
        CouplingMode::NonPotential => "nonpotential",
    };
    println!("mode      = {mode}");
    println!("region    = {region:?}");
    println!("phi       = {phi:.12e}");
    println!("grad_phi  = [{:.12e}, {:.12e}]", grad[0], grad[1]);
    println!("tension   = [{:.12e}, {:.12e}]", tension[0], tension[1]);
    println!("traction  = [{:.12e}, {:.12e}]", traction[0], traction[1]);
    if law.nonphysical_coupling {
        println!("note      = coupling violates the admissibility bound for this mode");
    }
    Ok(EXIT_OK)
}

fn cmd_validate(law_path: &Path, n_axis: usize, n_random: usize, seed: u64) -> Result<u8, String> {
    let law = config::load_law(law_path).map_err(|e| e.to_string())?;
    let spec = GridSpec {
        n_axis,
        n_random,
        seed,
    };
    let reports = check_all(&law, &spec).map_err(|e| e.to_string())?;
    print_report_table(&reports);
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        println!("{failed} check(s) failed");
        Ok(EXIT_VALIDATION_FAIL)
    } else {
        println!("all checks passed");
        Ok(EXIT_OK)
    }
}

fn print_report_table(reports: &[CheckReport]) {
    println!("{:<24} {:<14} {:<13} witness", "check", "status", "worst");
    for r in reports {
        let witness = if r.witness.is_empty() {
            String::from("-")
        } else {
            let vals: Vec<String> = r.witness.iter().map(|v| format!("{v:.6e}")).collect();
            format!("[{}]", vals.join(", "))
        };
        println!("{:<24} {:<14} {:<13.3e} {}", r.id, r.status.to_string(), r.worst, witness);
    }
}

fn cmd_case(n: usize, model: &str, samples: usize, out: &Path) -> Result<u8, String> {
    if !(1..=4).contains(&n) {
        return Err(format!("case number must be 1-4, got {n}"));
    }
    std::fs::create_dir_all(out).map_err(|e| format!("cannot create {}: {e}", out.display()))?;
    let setup = case_setup(n);
    let path = LoadingPath::sinusoidal(setup.a, setup.b, 50.0, samples);

    let modes: &[(&str, CouplingMode)] = match model {
        "potential" => &[("potential", CouplingMode::Potential)],
        "nonpotential" => &[("nonpotential", CouplingMode::NonPotential)],
        _ => &[
            ("potential", CouplingMode::Potential),
            ("nonpotential", CouplingMode::NonPotential),
        ],
    };
    for (name, mode) in modes {
        let law = case_law(n, *mode).map_err(|e| e.to_string())?;
        let trace = simulate_path(&law, &path, HistoryPair::default()).map_err(|e| e.to_string())?;
        let csv_path = out.join(format!("trace_{name}.csv"));
        std::fs::write(&csv_path, trace.to_csv())
            .map_err(|e| format!("cannot write {}: {e}", csv_path.display()))?;
        write_case_svgs(out, name, &trace)?;
        println!("wrote {}", csv_path.display());
    }
    Ok(EXIT_OK)
}

fn write_case_svgs(out: &Path, name: &str, trace: &PathTrace) -> Result<(), String> {
    let series_t = |l: usize| Series {
        label: format!("t{}", l + 1),
        points: trace.samples.iter().map(|s| (s.t, s.traction[l])).collect(),
    };
    let svg1 = line_plot(
        &format!("{name}: traction components over time"),
        "t",
        "traction",
        &[series_t(0), series_t(1)],
    );
    write_file(&out.join(format!("tractions_{name}.svg")), &svg1)?;
    for l in 0..2 {
        let s = Series {
            label: format!("t{} vs y{}", l + 1, l + 1),
            points: trace
                .samples
                .iter()
                .map(|smp| (smp.y[l], smp.traction[l]))
                .collect(),
        };
        let svg = line_plot(
            &format!("{name}: opening-traction loops, direction {}", l + 1),
            &format!("y{}", l + 1),
            &format!("t{}", l + 1),
            &[s],
        );
        write_file(&out.join(format!("loop{}_{name}.svg", l + 1)), &svg)?;
    }
    Ok(())
}

fn cmd_laminate(problem_path: &Path, out: &Path, fields: bool) -> Result<u8, String> {
    let (problem, scheme) = config::load_problem(problem_path).map_err(|e| e.to_string())?;
    std::fs::create_dir_all(out).map_err(|e| format!("cannot create {}: {e}", out.display()))?;
    let evo = match run_evolution(&problem, scheme, &SolverOptions::default()) {
        Ok(evo) => evo,
        Err(
            e @ (SolverError::NonConvergence { .. } | SolverError::FixedPointStall { .. }),
        ) => {
            eprintln!("solver failed to converge: {e}");
            return Ok(EXIT_NO_CONVERGENCE);
        }
        Err(e) => return Err(e.to_string()),
    };

    let ledger_path = out.join("ledger.csv");
    write_file(&ledger_path, &evo.ledger_csv())?;
    println!("wrote {}", ledger_path.display());
    if fields {
        let fields_path = out.join("fields.csv");
        write_file(&fields_path, &evo.final_fields_csv(&problem.mesh))?;
        println!("wrote {}", fields_path.display());
    }

    let pick = |f: fn(&cohesive::laminate::LedgerRow) -> f64, label: &str| Series {
        label: label.to_string(),
        points: evo.ledger.iter().map(|r| (r.t, f(r))).collect(),
    };
    let svg = line_plot(
        "energies over time",
        "t",
        "energy",
        &[
            pick(|r| r.elastic, "elastic"),
            pick(|r| r.cohesive, "cohesive"),
            pick(|r| r.total, "total"),
            pick(|r| r.work, "work"),
        ],
    );
    write_file(&out.join("energies.svg"), &svg)?;
    let svg2 = line_plot(
        "history and slip over time",
        "t",
        "value",
        &[
            pick(|r| r.max_gamma1, "max gamma1"),
            pick(|r| r.max_gamma2, "max gamma2"),
            pick(|r| r.max_slip, "max |slip|"),
        ],
    );
    write_file(&out.join("history.svg"), &svg2)?;
    Ok(EXIT_OK)
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

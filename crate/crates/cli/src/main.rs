use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use lgfo_core::measures::evaluate;
use lgfo_core::pipeline::{
    emit_curves, generate_synthetic, parse_config, parse_dataset, parse_synth_spec, run,
    write_dataset,
};
use lgfo_core::{Dataset, Measure, ThresholdPair};

#[derive(Parser)]
#[command(
    name = "lgfo",
    version,
    about = "Cost-optimal per-group decision thresholds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the cost-minimal threshold pair and write the report and curves.
    Run {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        curves: PathBuf,
    },
    /// Print the unfairness measures and accuracy for one threshold pair.
    Measures {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        t0: f64,
        #[arg(long)]
        t1: f64,
    },
    /// Generate a seeded synthetic score file.
    Synth {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load_dataset(path: &Path) -> Result<Dataset> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    parse_dataset(file).with_context(|| format!("parsing {}", path.display()))
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Run {
            data,
            config,
            report,
            curves,
        } => {
            let dataset = load_dataset(&data)?;
            let config = parse_config(&read(&config)?)
                .with_context(|| format!("parsing {}", config.display()))?;
            let out = run(&dataset, &config)?;
            write(&report, &out.to_json()?)?;
            write(&curves, &emit_curves(&out))?;
            let cmp = &out.comparison;
            println!(
                "optimal {} (index {}, summed cost {})",
                out.optimal.pair, out.optimal.index, out.optimal.summed_cost
            );
            println!("{:<10} {:>12} {:>12}", "measure", "baseline", "optimal");
            for (name, b, o) in [
                ("SP", cmp.baseline.sp, cmp.optimal.sp),
                ("Suff", cmp.baseline.suff, cmp.optimal.suff),
                ("ΔF", cmp.baseline.delta_f, cmp.optimal.delta_f),
                ("accuracy", cmp.baseline.accuracy, cmp.optimal.accuracy),
            ] {
                println!("{name:<10} {b:>12.4} {o:>12.4}");
            }
        }
        Command::Measures { data, t0, t1 } => {
            let dataset = load_dataset(&data)?;
            let pair = ThresholdPair::new(t0, t1)?;
            let e = evaluate(&dataset, &pair);
            for m in Measure::ALL {
                let v = e.get(m);
                let note = if v.undefined_denominator {
                    " (undefined denominator)"
                } else {
                    ""
                };
                println!("{m}\t{}{note}", v.value);
            }
            println!("accuracy\t{}", e.accuracy);
        }
        Command::Synth { spec, out } => {
            let spec = parse_synth_spec(&read(&spec)?)
                .with_context(|| format!("parsing {}", spec.display()))?;
            let dataset = generate_synthetic(&spec)?;
            write(&out, &write_dataset(&dataset))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

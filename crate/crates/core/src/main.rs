use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spline_ids::classifier::{classify, confusion_matrix, ConfusionMatrix};
use spline_ids::pipeline::{
    emit_curves, emit_report, load_model, run_experiment, save_model,
    CongestionFilter, DataSource, ExperimentConfig, ModelKind, PipelineError, ReportFormat,
    SavedModel,
};
use spline_ids::spline_core::BasisKind;
use spline_ids::vanet_sim::{generate_dataset, read_csv_path, write_csv_path, ScenarioConfig};

#[derive(Parser)]
#[command(name = "spline-ids", version, about = "Spline-basis intrusion detection on packet delay")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic traffic CSV.
    Simulate {
        /// Scenario JSON; the built-in default scenario when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        n_records: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit and score the requested models, then print a confusion-matrix report.
    Experiment {
        #[command(flatten)]
        exp: ExperimentArgs,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Emit predicted-probability curves of every model over a delay grid.
    Curves {
        #[command(flatten)]
        exp: ExperimentArgs,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit a single model on the training split and save it.
    Train {
        #[arg(long)]
        model: ModelKind,
        #[command(flatten)]
        exp: ExperimentArgs,
        #[arg(long)]
        save: PathBuf,
    },
    /// Score a saved model on a CSV of labelled records.
    Evaluate {
        #[arg(long)]
        load: PathBuf,
        #[arg(long)]
        data: PathBuf,
        /// Override the threshold stored with the model.
        #[arg(long)]
        threshold: Option<f64>,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// Labelled traffic CSV.
    #[arg(long, conflicts_with = "scenario")]
    data: Option<PathBuf>,
    /// Scenario JSON to simulate from; the built-in default scenario when
    /// neither --data nor --scenario is given.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Overrides the scenario seed.
    #[arg(long, conflicts_with = "data")]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0.8)]
    split_ratio: f64,
    #[arg(long, default_value_t = 42)]
    split_seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75")]
    knots: Vec<f64>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "logistic,linear,quadratic,cubic,bspline"
    )]
    models: Vec<ModelKind>,
    #[arg(long, default_value_t = 3)]
    bspline_degree: u8,
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    /// all | congested | uncongested
    #[arg(long, default_value = "all")]
    congestion: CongestionFilter,
}

fn read_scenario(path: &Path) -> Result<ScenarioConfig, PipelineError> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| PipelineError::Config(format!("{}: {e}", path.display())))
}

impl ExperimentArgs {
    fn to_config(&self) -> Result<ExperimentConfig, PipelineError> {
        let data = match (&self.data, &self.scenario) {
            (Some(path), _) => DataSource::Csv(path.clone()),
            (None, scenario) => {
                let mut s = match scenario {
                    Some(p) => read_scenario(p)?,
                    None => ScenarioConfig::default(),
                };
                if let Some(seed) = self.seed {
                    s.seed = seed;
                }
                DataSource::Scenario(s)
            }
        };
        let config = ExperimentConfig {
            data,
            split_ratio: self.split_ratio,
            split_seed: self.split_seed,
            knot_probs: self.knots.clone(),
            models: self.models.clone(),
            threshold: self.threshold,
            bspline_degree: self.bspline_degree,
            congestion: self.congestion,
        };
        config.validate()?;
        Ok(config)
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), PipelineError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn print_matrix(label: &str, cm: &ConfusionMatrix) -> Result<(), PipelineError> {
    println!(
        "{label}: TP {} FP {} TN {} FN {}  accuracy {:.2}% (N = {})",
        cm.tp,
        cm.fp,
        cm.tn,
        cm.fn_,
        100.0 * cm.accuracy()?,
        cm.total()
    );
    Ok(())
}

fn run(command: Command) -> Result<(), PipelineError> {
    match command {
        Command::Simulate {
            config,
            seed,
            n_records,
            out,
        } => {
            let mut scenario = match config {
                Some(p) => read_scenario(&p)?,
                None => ScenarioConfig::default(),
            };
            if let Some(seed) = seed {
                scenario.seed = seed;
            }
            if let Some(n) = n_records {
                scenario.n_records = n;
            }
            let records = generate_dataset(&scenario)?;
            write_csv_path(&records, &out)?;
            eprintln!("wrote {} records to {}", records.len(), out.display());
        }
        Command::Experiment {
            exp,
            report,
            format,
        } => {
            let run = run_experiment(&exp.to_config()?)?;
            write_output(report.as_deref(), &emit_report(&run.report, format))?;
        }
        Command::Curves { exp, grid, out } => {
            let run = run_experiment(&exp.to_config()?)?;
            let table = emit_curves(&run, grid)?;
            write_output(out.as_deref(), &table.to_csv())?;
        }
        Command::Train { model, exp, save } => {
            let mut config = exp.to_config()?;
            config.models = vec![model];
            let run = spline_ids::pipeline::run_on_records(&config, &config.load_records()?)?;
            let trained = run.models.into_iter().next().expect("one model requested");
            save_model(
                &save,
                &SavedModel {
                    kind: model,
                    threshold: config.threshold,
                    model: trained.model,
                },
            )?;
            print_matrix(&format!("{} (test split)", model.display_name()), &run.report.rows[0].confusion)?;
            eprintln!("saved model to {}", save.display());
        }
        Command::Evaluate {
            load,
            data,
            threshold,
        } => {
            let saved = load_model(&load)?;
            let records = read_csv_path(&data)?;
            let mut x: Vec<f64> = records.iter().map(|r| r.packet_delay_ms).collect();
            let y: Vec<u8> = records.iter().map(|r| r.label()).collect();
            let mut clamped = 0;
            if let Some(spec) = &saved.model.basis_spec {
                if spec.kind() == BasisKind::BSpline {
                    let (lo, hi) = spec.domain();
                    for v in &mut x {
                        let c = v.clamp(lo, hi);
                        clamped += usize::from(c != *v);
                        *v = c;
                    }
                }
            }
            let threshold = threshold.unwrap_or(saved.threshold);
            if !(threshold > 0.0 && threshold < 1.0) {
                return Err(PipelineError::Config(format!("threshold {threshold} not in (0, 1)")));
            }
            let probs = saved.model.predict_x(&x)?;
            let cm = confusion_matrix(&classify(&probs, threshold), &y)?;
            print_matrix(saved.kind.display_name(), &cm)?;
            if clamped > 0 {
                eprintln!("warning: {clamped} delays clamped to the B-spline domain");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

//! Command implementations behind the `synthdata` binary.

pub mod config;

use std::fs;
use std::path::{Path, PathBuf};

use synthdata::evaluation::{render_matrix_heatmap, FidelityOptions, MAX_PAIRPLOT_COLUMNS};
use synthdata::{
    correlation_matrix, gen_abm, gen_bootstrap, gen_copula, gen_multivariate, load_csv,
    render_heatmap, render_pairplot, train_gan, write_csv, Dataset, GanModel, Matrix,
    PerformanceSource, RngStream, TrainLog,
};

use config::{Manifest, Method, RunConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Substream of the run seed used to sample from a GAN. Training uses 0 to 4.
pub const GAN_SAMPLE_STREAM: u64 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or inconsistent configuration and usage problems.
    #[error("{0}")]
    Config(String),
    /// Anything that fails while running a well-formed configuration.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }

    /// One line, prefixed by its kind: `error[config]: ...` or `error[runtime]: ...`.
    pub fn render(&self) -> String {
        let (kind, msg) = match self {
            CliError::Config(m) => ("config", m),
            CliError::Runtime(m) => ("runtime", m),
        };
        let flat: Vec<&str> = msg.split_whitespace().collect();
        format!("error[{kind}]: {}", flat.join(" "))
    }
}

impl From<synthdata::Error> for CliError {
    fn from(e: synthdata::Error) -> Self {
        match e {
            synthdata::Error::Config(m) => CliError::Config(m),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

/// What a command did, for the binary to print.
#[derive(Debug, Default)]
pub struct Outcome {
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

fn runtime(context: impl std::fmt::Display, e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(format!("{context}: {e}"))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| runtime(parent.display(), e))?;
    }
    fs::write(path, contents).map_err(|e| runtime(format!("cannot write {}", path.display()), e))
}

fn load_dataset(path: &Path) -> Result<Dataset, CliError> {
    let file =
        fs::File::open(path).map_err(|e| runtime(format!("cannot read {}", path.display()), e))?;
    load_csv(file).map_err(|e| runtime(path.display(), e))
}

fn csv_bytes(d: &Dataset) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    write_csv(d, &mut buf)?;
    Ok(buf)
}

/// `<dataset>.manifest.json`, beside the dataset.
pub fn manifest_path(dataset: &Path) -> PathBuf {
    let mut name = dataset.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    dataset.with_file_name(name)
}

fn json_bytes<T: serde::Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| runtime("serialize", e))?;
    text.push('\n');
    Ok(text.into_bytes())
}

/// Runs `generate`: builds the dataset, then writes it, its manifest and any figures.
pub fn generate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let dataset_path = PathBuf::from(cfg.require_output("dataset", &cfg.output.dataset)?);
    let mut outcome = Outcome::default();
    let (data, reference) = build_dataset(cfg, &mut outcome)?;

    write_file(&dataset_path, &csv_bytes(&data)?)?;
    let manifest = Manifest {
        tool: "synthdata".into(),
        version: VERSION.into(),
        rows: data.n_rows(),
        columns: data.names().to_vec(),
        config: cfg.clone(),
    };
    let manifest_file = manifest_path(&dataset_path);
    write_file(&manifest_file, &json_bytes(&manifest)?)?;
    outcome.notes.push(format!(
        "wrote {} rows to {} (manifest {})",
        data.n_rows(),
        dataset_path.display(),
        manifest_file.display()
    ));

    if let Some(dir) = &cfg.output.report_dir {
        let dir = Path::new(dir);
        write_file(
            &dir.join("heatmap.svg"),
            render_heatmap(&correlation_matrix(&data)?).as_bytes(),
        )?;
        // Compare against the input when it has the same columns; otherwise the
        // pair plot shows the synthetic data on its own.
        let real = reference
            .filter(|r| r.same_schema(&data))
            .unwrap_or_else(|| data.clone());
        if data.n_cols() <= MAX_PAIRPLOT_COLUMNS {
            write_file(
                &dir.join("pairplot.svg"),
                render_pairplot(&real, &data)?.as_bytes(),
            )?;
        } else {
            outcome.warnings.push(format!(
                "pair plot skipped: {} columns exceeds {MAX_PAIRPLOT_COLUMNS}",
                data.n_cols()
            ));
        }
        outcome
            .notes
            .push(format!("wrote figures to {}", dir.display()));
    }
    Ok(outcome)
}

/// The synthetic dataset plus the input it was derived from, if any.
fn build_dataset(
    cfg: &RunConfig,
    outcome: &mut Outcome,
) -> Result<(Dataset, Option<Dataset>), CliError> {
    match cfg.method {
        Method::Multivariate => {
            let c = cfg.multivariate_config(cfg.multivariate.as_ref().expect("validated"))?;
            Ok((gen_multivariate(&c)?, None))
        }
        Method::Bootstrap => {
            let c = cfg.bootstrap_config(cfg.bootstrap.as_ref().expect("validated"))?;
            let source = load_dataset(Path::new(cfg.require_input()?))?;
            Ok((gen_bootstrap(&source, &c)?, Some(source)))
        }
        Method::Copula => {
            let c = cfg.copula_config(cfg.copula.as_ref().expect("validated"))?;
            Ok((gen_copula(&c)?, None))
        }
        Method::Abm => {
            let c = cfg.abm_config(cfg.abm.as_ref().expect("validated"))?;
            let source = match c.performance_source {
                PerformanceSource::Column(_) => {
                    Some(load_dataset(Path::new(cfg.require_input()?))?)
                }
                PerformanceSource::Uniform { .. } => None,
            };
            Ok((gen_abm(&c, source.as_ref())?, source))
        }
        Method::Gan => {
            let block = cfg.gan.as_ref().expect("validated");
            let (model, source) = match &block.model {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| runtime(format!("cannot read {path}"), e))?;
                    (
                        GanModel::from_json(&text).map_err(|e| runtime(path, e))?,
                        None,
                    )
                }
                None => {
                    let source = load_dataset(Path::new(cfg.require_input()?))?;
                    let (model, log) = train_gan(&source, &cfg.gan_config(block)?)?;
                    persist_training(cfg, &model, &log, outcome)?;
                    (model, Some(source))
                }
            };
            let mut stream = RngStream::substream(cfg.seed, GAN_SAMPLE_STREAM);
            Ok((model.sample(block.n, &mut stream)?, source))
        }
    }
}

fn log_path(cfg: &RunConfig, model: &Path) -> PathBuf {
    cfg.output
        .log
        .as_ref()
        .map(PathBuf::from)
        .unwrap_or_else(|| model.with_extension("loss.csv"))
}

/// Warns on mode collapse, then writes the model and loss log if `output.model` is set.
fn persist_training(
    cfg: &RunConfig,
    model: &GanModel,
    log: &TrainLog,
    outcome: &mut Outcome,
) -> Result<(), CliError> {
    if let Some(check) = &log.mode_check {
        let collapsed: Vec<&str> = check
            .collapsed
            .iter()
            .zip(&model.scaling.names)
            .filter(|(c, _)| **c)
            .map(|(_, n)| n.as_str())
            .collect();
        if !collapsed.is_empty() {
            outcome.warnings.push(format!(
                "possible mode collapse: synthetic spread below 5% of real in [{}]",
                collapsed.join(", ")
            ));
        }
    }
    let Some(model_path) = cfg.output.model.as_ref().map(PathBuf::from) else {
        return Ok(());
    };
    write_file(&model_path, model.to_json()?.as_bytes())?;
    let log_file = log_path(cfg, &model_path);
    write_file(&log_file, log.to_csv().as_bytes())?;
    outcome.notes.push(format!(
        "wrote model to {} and {} loss rows to {}",
        model_path.display(),
        log.steps.len(),
        log_file.display()
    ));
    Ok(())
}

/// Runs `train-gan`: trains on the input and persists the model and loss log.
pub fn train_gan_command(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let block = match (cfg.method, &cfg.gan) {
        (Method::Gan, Some(b)) => b,
        _ => {
            return Err(CliError::Config(format!(
                "train-gan needs method \"gan\", config has \"{}\"",
                cfg.method.name()
            )))
        }
    };
    let gan_cfg = cfg.gan_config(block)?;
    cfg.require_output("model", &cfg.output.model)?;
    let source = load_dataset(Path::new(cfg.require_input()?))?;
    let (model, log) = train_gan(&source, &gan_cfg)?;
    let mut outcome = Outcome::default();
    persist_training(cfg, &model, &log, &mut outcome)?;
    Ok(outcome)
}

/// Runs `evaluate`: fidelity report, three heatmaps and a pair plot in `out`.
pub fn evaluate(
    real: &Path,
    synth: &Path,
    out: &Path,
    seed: Option<u64>,
) -> Result<Outcome, CliError> {
    let real_data = load_dataset(real)?;
    let synth_data = load_dataset(synth)?;
    let mut opts = FidelityOptions::default();
    if let Some(s) = seed {
        opts.seed = s;
    }
    let report = synthdata::evaluation::fidelity_report_with(&real_data, &synth_data, &opts)?;
    let mut outcome = Outcome::default();

    write_file(&out.join("report.json"), report.to_json()?.as_bytes())?;
    write_file(
        &out.join("heatmap_real.svg"),
        render_heatmap(&report.real_corr).as_bytes(),
    )?;
    write_file(
        &out.join("heatmap_synth.svg"),
        render_heatmap(&report.synth_corr).as_bytes(),
    )?;
    let (r, s) = (report.real_corr.matrix(), report.synth_corr.matrix());
    let diff = Matrix::from_vec(
        r.rows(),
        r.cols(),
        s.as_slice()
            .iter()
            .zip(r.as_slice())
            .map(|(a, b)| a - b)
            .collect(),
    )?;
    let labels = report.real_corr.labels();
    write_file(
        &out.join("heatmap_diff.svg"),
        render_matrix_heatmap(labels, &diff, "Correlation difference (synthetic - real)")
            .as_bytes(),
    )?;
    if real_data.n_cols() <= MAX_PAIRPLOT_COLUMNS {
        write_file(
            &out.join("pairplot.svg"),
            render_pairplot(&real_data, &synth_data)?.as_bytes(),
        )?;
    } else {
        outcome.warnings.push(format!(
            "pair plot skipped: {} columns exceeds {MAX_PAIRPLOT_COLUMNS}",
            real_data.n_cols()
        ));
    }
    outcome.notes.push(format!(
        "max |corr diff| {:.4}, max KS {:.4}; wrote report to {}",
        report.corr_max_abs_diff,
        report.max_ks(),
        out.display()
    ));
    Ok(outcome)
}

use serde::{Deserialize, Serialize};

use super::loss::{disc_loss, disc_loss_grad, gen_loss, gen_loss_grad};
use super::mlp::MlpParams;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::numerics::{Matrix, RngStream};

/// Substream indices of the training seed.
const STREAM_GEN_INIT: u64 = 0;
const STREAM_DISC_INIT: u64 = 1;
const STREAM_BATCH: u64 = 2;
const STREAM_NOISE: u64 = 3;
const STREAM_MODE_CHECK: u64 = 4;

const MODE_CHECK_SAMPLES: usize = 1000;
/// A column counts as collapsed when its synthetic std falls below this
/// fraction of the real std.
pub const COLLAPSE_RATIO: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GanConfig {
    pub noise_dim: usize,
    pub hidden: [usize; 2],
    pub learning_rate: f64,
    pub batch_size: usize,
    /// Number of alternating discriminator/generator batch steps.
    #[serde(alias = "epochs")]
    pub steps: usize,
    pub seed: u64,
}

impl Default for GanConfig {
    fn default() -> Self {
        Self {
            noise_dim: 8,
            hidden: [32, 32],
            // Plain SGD needs more signal than lr 0.01 over 2000 steps gives;
            // at that budget the generator barely leaves its initial state.
            learning_rate: 0.05,
            batch_size: 64,
            steps: 10_000,
            seed: 0,
        }
    }
}

impl GanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.noise_dim == 0 || self.hidden.contains(&0) || self.batch_size == 0 {
            return Err(Error::Config(
                "gan: noise_dim, hidden sizes and batch_size must be at least 1".into(),
            ));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::Config(format!(
                "gan: learning_rate must be positive, got {}",
                self.learning_rate
            )));
        }
        Ok(())
    }

    pub fn generator_sizes(&self, data_dim: usize) -> [usize; 4] {
        [self.noise_dim, self.hidden[0], self.hidden[1], data_dim]
    }

    pub fn discriminator_sizes(&self, data_dim: usize) -> [usize; 4] {
        [data_dim, self.hidden[0], self.hidden[1], 1]
    }
}

/// Per-column min-max scaling to [0, 1], kept with the model to map samples back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinMaxScaling {
    pub names: Vec<String>,
    pub mins: Vec<f64>,
    pub maxs: Vec<f64>,
}

impl MinMaxScaling {
    pub fn fit(d: &Dataset) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::EmptyInput("training data has no rows".into()));
        }
        let mut mins = Vec::with_capacity(d.n_cols());
        let mut maxs = Vec::with_capacity(d.n_cols());
        for (name, col) in d.names().iter().zip(d.columns()) {
            let lo = col.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if lo == hi {
                return Err(Error::DegenerateScaling(name.clone()));
            }
            mins.push(lo);
            maxs.push(hi);
        }
        Ok(Self {
            names: d.names().to_vec(),
            mins,
            maxs,
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Rows of `d` mapped into [0, 1]^k.
    pub fn scale(&self, d: &Dataset) -> Result<Matrix> {
        if d.names() != self.names.as_slice() {
            return Err(Error::Schema(
                "dataset columns differ from the scaling".into(),
            ));
        }
        let k = self.dim();
        let mut m = Matrix::zeros(d.n_rows(), k);
        for (j, col) in d.columns().iter().enumerate() {
            let span = self.maxs[j] - self.mins[j];
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = (v - self.mins[j]) / span;
            }
        }
        Ok(m)
    }

    /// Maps scaled rows back to the original ranges, clamped to [min, max].
    pub fn unscale(&self, m: &Matrix) -> Result<Dataset> {
        if m.cols() != self.dim() {
            return Err(Error::Shape(format!(
                "scaling has {} columns, batch has {}",
                self.dim(),
                m.cols()
            )));
        }
        let columns = (0..self.dim())
            .map(|j| {
                let (lo, hi) = (self.mins[j], self.maxs[j]);
                (0..m.rows())
                    .map(|i| (lo + m[(i, j)] * (hi - lo)).clamp(lo, hi))
                    .collect()
            })
            .collect();
        Dataset::from_parts(self.names.clone(), columns)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepLoss {
    pub step: usize,
    pub d_loss: f64,
    pub g_loss: f64,
}

/// Post-training spread check in scaled units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeCheck {
    pub real_std: Vec<f64>,
    pub synth_std: Vec<f64>,
    pub collapsed: Vec<bool>,
}

impl ModeCheck {
    pub fn any_collapsed(&self) -> bool {
        self.collapsed.iter().any(|&c| c)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrainLog {
    pub steps: Vec<StepLoss>,
    pub mode_check: Option<ModeCheck>,
}

impl TrainLog {
    /// Mean discriminator loss over steps `range`.
    pub fn mean_d_loss(&self, range: std::ops::Range<usize>) -> f64 {
        let s = &self.steps[range];
        s.iter().map(|l| l.d_loss).sum::<f64>() / s.len() as f64
    }

    /// `step,d_loss,g_loss` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,d_loss,g_loss\n");
        for s in &self.steps {
            out.push_str(&format!(
                "{},{},{}\n",
                s.step,
                crate::data::format_value(s.d_loss),
                crate::data::format_value(s.g_loss)
            ));
        }
        out
    }
}

/// Trained networks together with everything needed to sample from them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GanModel {
    pub config: GanConfig,
    pub scaling: MinMaxScaling,
    pub generator: MlpParams,
    pub discriminator: MlpParams,
}

fn normal_batch(rows: usize, cols: usize, stream: &mut RngStream) -> Matrix {
    let data = (0..rows * cols).map(|_| stream.standard_normal()).collect();
    Matrix::from_vec(rows, cols, data).expect("sized")
}

fn column_vec(v: Vec<f64>) -> Matrix {
    let n = v.len();
    Matrix::from_vec(n, 1, v).expect("sized")
}

fn column_std(m: &Matrix, j: usize) -> f64 {
    let n = m.rows() as f64;
    let mean = (0..m.rows()).map(|i| m[(i, j)]).sum::<f64>() / n;
    let ss: f64 = (0..m.rows()).map(|i| (m[(i, j)] - mean).powi(2)).sum();
    (ss / (n - 1.0)).sqrt()
}

/// Trains generator and discriminator with strict 1:1 alternation of plain
/// SGD steps on min-max scaled data.
pub fn train_gan(real: &Dataset, cfg: &GanConfig) -> Result<(GanModel, TrainLog)> {
    cfg.validate()?;
    let scaling = MinMaxScaling::fit(real)?;
    let data = scaling.scale(real)?;
    let k = scaling.dim();

    let mut generator = MlpParams::glorot(
        cfg.generator_sizes(k),
        &mut RngStream::substream(cfg.seed, STREAM_GEN_INIT),
    );
    let mut discriminator = MlpParams::glorot(
        cfg.discriminator_sizes(k),
        &mut RngStream::substream(cfg.seed, STREAM_DISC_INIT),
    );
    let mut batch_stream = RngStream::substream(cfg.seed, STREAM_BATCH);
    let mut noise_stream = RngStream::substream(cfg.seed, STREAM_NOISE);
    let mut log = TrainLog::default();
    let n = data.rows() as u64;
    let bs = cfg.batch_size;

    for step in 0..cfg.steps {
        // Discriminator step.
        let mut real_batch = Matrix::zeros(bs, k);
        for i in 0..bs {
            let idx = batch_stream.next_below(n) as usize;
            real_batch.row_mut(i).copy_from_slice(data.row(idx));
        }
        let z = normal_batch(bs, cfg.noise_dim, &mut noise_stream);
        let fake = generator.forward(&z)?;
        let real_trace = discriminator.forward_trace(&real_batch)?;
        let fake_trace = discriminator.forward_trace(&fake)?;
        let d_real = real_trace.output.as_slice();
        let d_fake = fake_trace.output.as_slice();
        let d_loss = disc_loss(d_real, d_fake);
        let (g_real, g_fake) = disc_loss_grad(d_real, d_fake);
        let mut grad = discriminator
            .backward(&real_trace, &column_vec(g_real))?
            .params;
        grad.add_scaled(
            &discriminator
                .backward(&fake_trace, &column_vec(g_fake))?
                .params,
            1.0,
        );
        discriminator.add_scaled(&grad, -cfg.learning_rate);

        // Generator step, fresh noise, through the updated discriminator.
        let z = normal_batch(bs, cfg.noise_dim, &mut noise_stream);
        let gen_trace = generator.forward_trace(&z)?;
        let disc_trace = discriminator.forward_trace(&gen_trace.output)?;
        let d_fake = disc_trace.output.as_slice();
        let g_loss = gen_loss(d_fake);
        let upstream = column_vec(gen_loss_grad(d_fake));
        let through_d = discriminator.backward(&disc_trace, &upstream)?.input;
        let g_grad = generator.backward(&gen_trace, &through_d)?.params;
        generator.add_scaled(&g_grad, -cfg.learning_rate);

        if !(d_loss.is_finite() && g_loss.is_finite()) {
            return Err(Error::Domain(format!("non-finite loss at step {step}")));
        }
        log.steps.push(StepLoss {
            step,
            d_loss,
            g_loss,
        });
    }

    if cfg.steps > 0 {
        let mut s = RngStream::substream(cfg.seed, STREAM_MODE_CHECK);
        let z = normal_batch(MODE_CHECK_SAMPLES, cfg.noise_dim, &mut s);
        let synth = generator.forward(&z)?;
        let real_std: Vec<f64> = (0..k).map(|j| column_std(&data, j)).collect();
        let synth_std: Vec<f64> = (0..k).map(|j| column_std(&synth, j)).collect();
        let collapsed = real_std
            .iter()
            .zip(&synth_std)
            .map(|(r, s)| *s < COLLAPSE_RATIO * r)
            .collect();
        log.mode_check = Some(ModeCheck {
            real_std,
            synth_std,
            collapsed,
        });
    }

    Ok((
        GanModel {
            config: cfg.clone(),
            scaling,
            generator,
            discriminator,
        },
        log,
    ))
}

/// Draws `n` rows: `z ~ N(0, I)`, generator forward pass, then un-scaling.
pub fn gan_sample(
    generator: &MlpParams,
    scaling: &MinMaxScaling,
    n: usize,
    stream: &mut RngStream,
) -> Result<Dataset> {
    if generator.output_dim() != scaling.dim() {
        return Err(Error::Shape(format!(
            "generator emits {} columns, scaling has {}",
            generator.output_dim(),
            scaling.dim()
        )));
    }
    let z = normal_batch(n, generator.input_dim(), stream);
    let out = generator.forward(&z)?;
    scaling.unscale(&out)
}

impl GanModel {
    pub fn sample(&self, n: usize, stream: &mut RngStream) -> Result<Dataset> {
        gan_sample(&self.generator, &self.scaling, n, stream)
    }

    pub fn validate(&self) -> Result<()> {
        self.config.validate()?;
        self.generator.validate()?;
        self.discriminator.validate()?;
        let k = self.scaling.dim();
        if self.scaling.mins.len() != k || self.scaling.maxs.len() != k {
            return Err(Error::Shape("scaling vectors disagree in length".into()));
        }
        if self.generator.sizes() != self.config.generator_sizes(k)
            || self.discriminator.sizes() != self.config.discriminator_sizes(k)
        {
            return Err(Error::Shape(
                "network sizes disagree with the config".into(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: GanModel = serde_json::from_str(text)?;
        m.validate()?;
        Ok(m)
    }
}

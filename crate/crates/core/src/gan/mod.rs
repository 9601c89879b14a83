//! Generative adversarial network built from two three-layer perceptrons.

mod loss;
mod mlp;
mod train;

pub use loss::{disc_loss, disc_loss_grad, gen_loss, gen_loss_grad, PROB_EPS};
pub use mlp::{backprop_grads, relu, sigmoid, ForwardTrace, Gradients, Layer, MlpParams};
pub use train::{
    gan_sample, train_gan, GanConfig, GanModel, MinMaxScaling, ModeCheck, StepLoss, TrainLog,
    COLLAPSE_RATIO,
};

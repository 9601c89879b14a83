//! Three-layer perceptron `sigmoid(W3 relu(W2 relu(W1 x + b1) + b2) + b3)` with
//! exact backpropagation. Batches are row-major matrices, one sample per row.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Matrix, RngStream};

/// Largest double below 1; keeps saturated sigmoid outputs strictly inside (0, 1).
const SIGMOID_MAX: f64 = 1.0 - f64::EPSILON / 2.0;

#[inline]
pub fn relu(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Logistic function, saturating at the nearest doubles inside (0, 1).
#[inline]
pub fn sigmoid(x: f64) -> f64 {
    let s = if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    };
    s.clamp(f64::MIN_POSITIVE, SIGMOID_MAX)
}

/// Affine layer: `weights` is out x in, `bias` has length out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub weights: Matrix,
    pub bias: Vec<f64>,
}

impl Layer {
    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        Self {
            weights: Matrix::zeros(outputs, inputs),
            bias: vec![0.0; outputs],
        }
    }

    /// Uniform(-r, r) weights with r = sqrt(6 / (fan_in + fan_out)); zero biases.
    pub fn glorot(inputs: usize, outputs: usize, stream: &mut RngStream) -> Self {
        let r = (6.0 / (inputs + outputs) as f64).sqrt();
        let mut layer = Self::zeros(inputs, outputs);
        for w in layer.weights.as_mut_slice() {
            *w = r * (2.0 * stream.next_open01() - 1.0);
        }
        layer
    }

    pub fn inputs(&self) -> usize {
        self.weights.cols()
    }

    pub fn outputs(&self) -> usize {
        self.weights.rows()
    }

    fn forward(&self, x: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(x.rows(), self.outputs());
        for i in 0..x.rows() {
            let xi = x.row(i);
            for (o, dst) in out.row_mut(i).iter_mut().enumerate() {
                let w = self.weights.row(o);
                *dst = self.bias[o] + w.iter().zip(xi).map(|(a, b)| a * b).sum::<f64>();
            }
        }
        out
    }
}

/// Weights and biases of the three layers, `layers[0]` being W1/b1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpParams {
    pub layers: [Layer; 3],
}

/// Intermediate values kept from a forward pass for backpropagation.
#[derive(Debug, Clone)]
pub struct ForwardTrace {
    pub input: Matrix,
    pub pre: [Matrix; 3],
    pub hidden: [Matrix; 2],
    pub output: Matrix,
}

/// Gradients shaped like the parameters, plus the gradient w.r.t. the input batch.
#[derive(Debug, Clone)]
pub struct Gradients {
    pub params: MlpParams,
    pub input: Matrix,
}

impl MlpParams {
    /// `sizes` = (in, h1, h2, out).
    pub fn zeros(sizes: [usize; 4]) -> Self {
        Self {
            layers: [
                Layer::zeros(sizes[0], sizes[1]),
                Layer::zeros(sizes[1], sizes[2]),
                Layer::zeros(sizes[2], sizes[3]),
            ],
        }
    }

    pub fn glorot(sizes: [usize; 4], stream: &mut RngStream) -> Self {
        Self {
            layers: [
                Layer::glorot(sizes[0], sizes[1], stream),
                Layer::glorot(sizes[1], sizes[2], stream),
                Layer::glorot(sizes[2], sizes[3], stream),
            ],
        }
    }

    pub fn sizes(&self) -> [usize; 4] {
        [
            self.layers[0].inputs(),
            self.layers[0].outputs(),
            self.layers[1].outputs(),
            self.layers[2].outputs(),
        ]
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].inputs()
    }

    pub fn output_dim(&self) -> usize {
        self.layers[2].outputs()
    }

    /// Checks the dimensional chain and that every entry is finite.
    pub fn validate(&self) -> Result<()> {
        for (i, l) in self.layers.iter().enumerate() {
            if l.bias.len() != l.outputs() {
                return Err(Error::Shape(format!(
                    "layer {} has {} biases for {} outputs",
                    i + 1,
                    l.bias.len(),
                    l.outputs()
                )));
            }
            if l.inputs() == 0 || l.outputs() == 0 {
                return Err(Error::Shape(format!(
                    "layer {} has a zero dimension",
                    i + 1
                )));
            }
            if i > 0 && self.layers[i - 1].outputs() != l.inputs() {
                return Err(Error::Shape(format!(
                    "layer {} outputs {} but layer {} expects {}",
                    i,
                    self.layers[i - 1].outputs(),
                    i + 1,
                    l.inputs()
                )));
            }
            let finite = l
                .weights
                .as_slice()
                .iter()
                .chain(&l.bias)
                .all(|v| v.is_finite());
            if !finite {
                return Err(Error::Domain(format!(
                    "layer {} holds non-finite values",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    fn check_input(&self, x: &Matrix) -> Result<()> {
        if x.cols() != self.input_dim() {
            return Err(Error::Shape(format!(
                "network expects {} inputs, batch has {}",
                self.input_dim(),
                x.cols()
            )));
        }
        Ok(())
    }

    pub fn forward_trace(&self, x: &Matrix) -> Result<ForwardTrace> {
        self.check_input(x)?;
        let pre1 = self.layers[0].forward(x);
        let h1 = map(&pre1, relu);
        let pre2 = self.layers[1].forward(&h1);
        let h2 = map(&pre2, relu);
        let pre3 = self.layers[2].forward(&h2);
        let output = map(&pre3, sigmoid);
        Ok(ForwardTrace {
            input: x.clone(),
            pre: [pre1, pre2, pre3],
            hidden: [h1, h2],
            output,
        })
    }

    pub fn forward(&self, x: &Matrix) -> Result<Matrix> {
        Ok(self.forward_trace(x)?.output)
    }

    /// Backpropagates `upstream` = dL/d(output) through the traced pass.
    pub fn backward(&self, trace: &ForwardTrace, upstream: &Matrix) -> Result<Gradients> {
        let out = &trace.output;
        if upstream.rows() != out.rows() || upstream.cols() != out.cols() {
            return Err(Error::Shape(format!(
                "upstream gradient is {}x{}, output is {}x{}",
                upstream.rows(),
                upstream.cols(),
                out.rows(),
                out.cols()
            )));
        }
        // Through the sigmoid head.
        let mut delta = upstream.clone();
        for (d, s) in delta.as_mut_slice().iter_mut().zip(out.as_slice()) {
            *d *= s * (1.0 - s);
        }
        let mut grads = MlpParams::zeros(self.sizes());
        let layer_inputs = [&trace.input, &trace.hidden[0], &trace.hidden[1]];
        for l in (0..3).rev() {
            let x = layer_inputs[l];
            let g = &mut grads.layers[l];
            for i in 0..delta.rows() {
                let di = delta.row(i);
                let xi = x.row(i);
                for (o, &d) in di.iter().enumerate() {
                    if d == 0.0 {
                        continue;
                    }
                    g.bias[o] += d;
                    for (gw, &xv) in g.weights.row_mut(o).iter_mut().zip(xi) {
                        *gw += d * xv;
                    }
                }
            }
            // dL/dx = delta * W
            let w = &self.layers[l].weights;
            let mut dx = Matrix::zeros(delta.rows(), w.cols());
            for i in 0..delta.rows() {
                for (o, &d) in delta.row(i).iter().enumerate() {
                    if d == 0.0 {
                        continue;
                    }
                    for (dst, &wv) in dx.row_mut(i).iter_mut().zip(w.row(o)) {
                        *dst += d * wv;
                    }
                }
            }
            if l > 0 {
                // ReLU subgradient, 0 at 0.
                for (d, &p) in dx
                    .as_mut_slice()
                    .iter_mut()
                    .zip(trace.pre[l - 1].as_slice())
                {
                    if p <= 0.0 {
                        *d = 0.0;
                    }
                }
            }
            delta = dx;
        }
        Ok(Gradients {
            params: grads,
            input: delta,
        })
    }

    /// `self += scale * other`, element by element.
    pub fn add_scaled(&mut self, other: &MlpParams, scale: f64) {
        for (l, g) in self.layers.iter_mut().zip(&other.layers) {
            for (w, gw) in l
                .weights
                .as_mut_slice()
                .iter_mut()
                .zip(g.weights.as_slice())
            {
                *w += scale * gw;
            }
            for (b, gb) in l.bias.iter_mut().zip(&g.bias) {
                *b += scale * gb;
            }
        }
    }

    /// All parameters flattened in layer order, weights before biases.
    pub fn flatten(&self) -> Vec<f64> {
        self.layers
            .iter()
            .flat_map(|l| l.weights.as_slice().iter().chain(&l.bias).copied())
            .collect()
    }

    pub fn param_mut(&mut self, mut index: usize) -> &mut f64 {
        for l in self.layers.iter_mut() {
            let nw = l.weights.as_slice().len();
            if index < nw {
                return &mut l.weights.as_mut_slice()[index];
            }
            index -= nw;
            if index < l.bias.len() {
                return &mut l.bias[index];
            }
            index -= l.bias.len();
        }
        panic!("parameter index out of range");
    }
}

/// Gradient of a loss w.r.t. the parameters for a given input batch and
/// upstream gradient dL/d(output).
pub fn backprop_grads(p: &MlpParams, input: &Matrix, upstream: &Matrix) -> Result<Gradients> {
    let trace = p.forward_trace(input)?;
    p.backward(&trace, upstream)
}

fn map(m: &Matrix, f: impl Fn(f64) -> f64) -> Matrix {
    let data = m.as_slice().iter().map(|&v| f(v)).collect();
    Matrix::from_vec(m.rows(), m.cols(), data).expect("same shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones_chain() -> MlpParams {
        let mut p = MlpParams::zeros([1, 1, 1, 1]);
        for l in p.layers.iter_mut() {
            l.weights.as_mut_slice()[0] = 1.0;
        }
        p
    }

    #[test]
    fn relu_definition() {
        assert_eq!(relu(-3.0), 0.0);
        assert_eq!(relu(2.0), 2.0);
        assert_eq!(relu(0.0), 0.0);
    }

    #[test]
    fn zero_network_outputs_half() {
        let p = MlpParams::zeros([3, 4, 5, 2]);
        let x = Matrix::from_rows(&[vec![1.0, -2.0, 3.0], vec![0.5, 0.5, 0.5]]).unwrap();
        let y = p.forward(&x).unwrap();
        assert!(y.as_slice().iter().all(|&v| v == 0.5));
    }

    #[test]
    fn unit_chain_evaluates_sigmoid_two() {
        let y = ones_chain()
            .forward(&Matrix::from_vec(1, 1, vec![2.0]).unwrap())
            .unwrap();
        assert!((y[(0, 0)] - 0.880_797_077_977_882_3).abs() < 1e-15);
    }

    #[test]
    fn sigmoid_stays_inside_open_interval() {
        assert!(sigmoid(1e3) < 1.0);
        assert!(sigmoid(-1e3) > 0.0);
        assert_eq!(sigmoid(0.0), 0.5);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let p = MlpParams::zeros([3, 4, 4, 1]);
        let x = Matrix::zeros(2, 2);
        assert!(matches!(p.forward(&x), Err(Error::Shape(_))));
        let x = Matrix::zeros(2, 3);
        let trace = p.forward_trace(&x).unwrap();
        assert!(matches!(
            p.backward(&trace, &Matrix::zeros(2, 2)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn validate_catches_broken_chain() {
        let mut p = MlpParams::zeros([3, 4, 4, 1]);
        assert!(p.validate().is_ok());
        p.layers[1] = Layer::zeros(5, 4);
        assert!(p.validate().is_err());
        let mut p = MlpParams::zeros([3, 4, 4, 1]);
        p.layers[2].bias[0] = f64::NAN;
        assert!(p.validate().is_err());
    }

    #[test]
    fn zero_upstream_gives_zero_gradient() {
        let mut s = RngStream::new(1);
        let p = MlpParams::glorot([3, 4, 4, 2], &mut s);
        let x = Matrix::from_rows(&[vec![0.1, 0.2, 0.3]]).unwrap();
        let g = backprop_grads(&p, &x, &Matrix::zeros(1, 2)).unwrap();
        assert!(g.params.flatten().iter().all(|&v| v == 0.0));
        assert!(g.input.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn flatten_and_param_mut_agree() {
        let mut s = RngStream::new(2);
        let mut p = MlpParams::glorot([2, 3, 3, 1], &mut s);
        let flat = p.flatten();
        for (i, &v) in flat.iter().enumerate() {
            assert_eq!(*p.param_mut(i), v);
        }
    }
}

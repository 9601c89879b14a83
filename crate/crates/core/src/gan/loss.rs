//! Binary cross-entropy losses of the adversarial game. Probabilities are
//! clamped to [EPS, 1 - EPS] before taking logs; the clamp is part of the loss,
//! so its gradient is zero wherever the clamp is active.

pub const PROB_EPS: f64 = 1e-7;

#[inline]
fn clamp_prob(p: f64) -> f64 {
    p.clamp(PROB_EPS, 1.0 - PROB_EPS)
}

#[inline]
fn clamp_active(p: f64) -> bool {
    !(PROB_EPS..=1.0 - PROB_EPS).contains(&p)
}

fn mean_of(xs: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().map(|&x| f(x)).sum::<f64>() / xs.len() as f64
}

/// Mean over the batch of `-[ln D(x_real) + ln(1 - D(G(z)))]`.
pub fn disc_loss(d_real: &[f64], d_fake: &[f64]) -> f64 {
    mean_of(d_real, |p| -clamp_prob(p).ln()) + mean_of(d_fake, |p| -(1.0 - clamp_prob(p)).ln())
}

/// Mean over the batch of `-ln D(G(z))`.
pub fn gen_loss(d_fake: &[f64]) -> f64 {
    mean_of(d_fake, |p| -clamp_prob(p).ln())
}

/// d disc_loss / d d_real and d disc_loss / d d_fake, element-wise.
pub fn disc_loss_grad(d_real: &[f64], d_fake: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let nr = d_real.len() as f64;
    let nf = d_fake.len() as f64;
    let real = d_real
        .iter()
        .map(|&p| {
            if clamp_active(p) {
                0.0
            } else {
                -1.0 / (nr * p)
            }
        })
        .collect();
    let fake = d_fake
        .iter()
        .map(|&p| {
            if clamp_active(p) {
                0.0
            } else {
                1.0 / (nf * (1.0 - p))
            }
        })
        .collect();
    (real, fake)
}

/// d gen_loss / d d_fake, element-wise.
pub fn gen_loss_grad(d_fake: &[f64]) -> Vec<f64> {
    let n = d_fake.len() as f64;
    d_fake
        .iter()
        .map(|&p| if clamp_active(p) { 0.0 } else { -1.0 / (n * p) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_loss_values() {
        assert!((disc_loss(&[0.5], &[0.5]) - 2.0 * std::f64::consts::LN_2).abs() < 1e-15);
        assert!(disc_loss(&[1.0 - 1e-12], &[1e-12]) < 1e-6);
        let l = disc_loss(&[0.0], &[0.5]);
        assert!(l.is_finite() && l > 15.0);
    }

    #[test]
    fn gen_loss_values() {
        assert!(gen_loss(&[1.0]) < 1e-6);
        assert!((gen_loss(&[0.5]) - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(gen_loss(&[0.3]) > gen_loss(&[0.7]));
        assert!(gen_loss(&[0.0]).is_finite());
    }

    #[test]
    fn gradient_at_half() {
        let (gr, gf) = disc_loss_grad(&[0.5], &[0.5]);
        assert_eq!(gr, vec![-2.0]);
        assert_eq!(gf, vec![2.0]);
        assert_eq!(gen_loss_grad(&[0.5]), vec![-2.0]);
    }

    #[test]
    fn clamped_region_has_zero_gradient() {
        let (gr, _) = disc_loss_grad(&[0.0], &[0.5]);
        assert_eq!(gr, vec![0.0]);
    }

    #[test]
    fn losses_are_nonnegative() {
        for i in 0..=100 {
            let p = i as f64 / 100.0;
            assert!(disc_loss(&[p], &[p]) >= 0.0);
            assert!(gen_loss(&[p]) >= 0.0);
        }
    }
}

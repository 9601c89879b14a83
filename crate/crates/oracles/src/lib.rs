//! Reference computations for tests. Everything here is deliberately naive:
//! direct series, quadrature, bisection and O(n^2) loops, sharing no code with
//! the production implementations they check.

use std::f64::consts::PI;

/// Kahan-compensated sum.
pub fn kahan_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for x in xs {
        let y = x - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// erf by its Maclaurin series, `2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1))`.
/// Cancellation limits this to roughly |x| <= 4 at 1e-10 accuracy.
pub fn erf_taylor(x: f64) -> f64 {
    let mut terms = Vec::new();
    let mut power = x; // x^(2n+1) / n!
    let mut n = 0u32;
    loop {
        let term = power / (2 * n + 1) as f64;
        terms.push(if n.is_multiple_of(2) { term } else { -term });
        n += 1;
        power *= x * x / n as f64;
        if term.abs() < 1e-30 && n > 5 {
            break;
        }
    }
    2.0 / PI.sqrt() * kahan_sum(terms)
}

pub fn normal_density(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal CDF at every (ascending) grid point by cumulative midpoint
/// integration of the density from -12 with step `h`.
pub fn normal_cdf_midpoint(grid: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    let mut comp = 0.0;
    let mut left = -12.0;
    for &x in grid {
        assert!(x >= left, "grid must be ascending and above -12");
        let steps = ((x - left) / h).round() as usize;
        let step = if steps == 0 {
            0.0
        } else {
            (x - left) / steps as f64
        };
        for k in 0..steps {
            let mid = left + (k as f64 + 0.5) * step;
            let y = normal_density(mid) * step - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        left = x;
        out.push(acc);
    }
    out
}

/// Root of a monotone increasing `f(x) = target` on [lo, hi] by bisection.
pub fn bisect(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Tanh-sinh quadrature on [a, b]. The step is halved until two successive
/// estimates agree to `tol` (relative). Endpoint singularities of integrable
/// type are handled since the nodes never touch the endpoints.
pub fn tanh_sinh(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> f64 {
        let s = 0.5 * PI * t.sinh();
        let c = s.cosh();
        let w = 0.5 * PI * t.cosh() / (c * c);
        // distance from the nearer endpoint, computed without cancellation
        let gap = half / (s.abs().exp() * c);
        let x = if t >= 0.0 { b - gap } else { a + gap };
        if w == 0.0 || x <= a || x >= b {
            return 0.0;
        }
        half * w * f(x)
    };
    let t_max = 4.0;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        sum += eval(k as f64 * h) + eval(-(k as f64) * h);
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..12 {
        h /= 2.0;
        let mut k = 1;
        while k as f64 * h <= t_max {
            sum += eval(k as f64 * h) + eval(-(k as f64) * h);
            k += 2;
        }
        let next = sum * h;
        let done = (next - estimate).abs() <= tol * next.abs();
        estimate = next;
        if done {
            break;
        }
    }
    estimate
}

/// ln Gamma(x) from `Gamma(x) = 2 * int_0^inf u^(2x-1) exp(-u^2) du`.
pub fn ln_gamma_integral(x: f64) -> f64 {
    // Below 1 the integrand's singularity at 0 is too sharp for the truncated
    // quadrature, so step up with Gamma(x) = Gamma(x + 1) / x.
    if x < 1.0 {
        return ln_gamma_integral(x + 1.0) - x.ln();
    }
    let f = |u: f64| {
        if u == 0.0 {
            if 2.0 * x - 1.0 == 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            2.0 * u.powf(2.0 * x - 1.0) * (-u * u).exp()
        }
    };
    // Split so the peak near sqrt(x - 1/2) is resolved.
    let peak = (x - 0.5).max(0.0).sqrt();
    let upper = peak + 12.0;
    let total =
        tanh_sinh(&f, 0.0, peak.max(1.0), 1e-15) + tanh_sinh(&f, peak.max(1.0), upper, 1e-15);
    total.ln()
}

/// Unnormalized incomplete beta integral `int_0^x t^(a-1) (1-t)^(b-1) dt`.
/// The pieces near 0 and 1 use t = u^2 and t = 1 - v^2 to remove endpoint
/// singularities for shapes below 1.
fn beta_integral(x: f64, a: f64, b: f64) -> f64 {
    let near_zero = |u: f64| {
        if u == 0.0 {
            return if a == 0.5 { 2.0 } else { 0.0 };
        }
        2.0 * u.powf(2.0 * a - 1.0) * (1.0 - u * u).powf(b - 1.0)
    };
    let near_one = |v: f64| {
        if v == 0.0 {
            return if b == 0.5 { 2.0 } else { 0.0 };
        }
        2.0 * v.powf(2.0 * b - 1.0) * (1.0 - v * v).powf(a - 1.0)
    };
    let tol = 1e-15;
    if x <= 0.5 {
        tanh_sinh(&near_zero, 0.0, x.sqrt(), tol)
    } else {
        let head = tanh_sinh(&near_zero, 0.0, 0.5f64.sqrt(), tol);
        // int_{0.5}^{x} = int over v from sqrt(1-x) to sqrt(0.5)
        head + tanh_sinh(&near_one, (1.0 - x).sqrt(), 0.5f64.sqrt(), tol)
    }
}

/// Regularized incomplete beta by quadrature.
pub fn beta_cdf_quadrature(x: f64, a: f64, b: f64) -> f64 {
    beta_integral(x, a, b) / beta_integral(1.0, a, b)
}

/// Central-difference gradient of `f` at `x` with step `h`.
pub fn central_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            probe[i] = x[i] + h;
            let up = f(&probe);
            probe[i] = x[i] - h;
            let down = f(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// Largest elementwise `|a - b| / max(|a|, |b|, floor)`.
pub fn max_relative_error(a: &[f64], b: &[f64], floor: f64) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(floor))
        .fold(0.0, f64::max)
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample covariance by an explicit double loop over columns and rows.
pub fn naive_covariance(cols: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = cols.len();
    let n = cols[0].len();
    let mut out = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let mi = mean(&cols[i]);
            let mj = mean(&cols[j]);
            let mut s = 0.0;
            for (a, b) in cols[i].iter().zip(&cols[j]) {
                s += (a - mi) * (b - mj);
            }
            out[i][j] = s / (n as f64 - 1.0);
        }
    }
    out
}

pub fn naive_correlation(cols: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let cov = naive_covariance(cols);
    let k = cols.len();
    let mut out = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            out[i][j] = cov[i][j] / (cov[i][i].sqrt() * cov[j][j].sqrt());
        }
    }
    out
}

/// Average ranks by counting: `1 + #{less} + (#{equal} - 1) / 2`.
pub fn naive_ranks(xs: &[f64]) -> Vec<f64> {
    xs.iter()
        .map(|&x| {
            let less = xs.iter().filter(|&&y| y < x).count() as f64;
            let equal = xs.iter().filter(|&&y| y == x).count() as f64;
            1.0 + less + (equal - 1.0) / 2.0
        })
        .collect()
}

pub fn naive_spearman(cols: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let ranked: Vec<Vec<f64>> = cols.iter().map(|c| naive_ranks(c)).collect();
    naive_correlation(&ranked)
}

/// Two-sample KS statistic by evaluating both ECDFs at every sample point.
pub fn naive_ks(a: &[f64], b: &[f64]) -> f64 {
    let ecdf = |xs: &[f64], t: f64| xs.iter().filter(|&&x| x <= t).count() as f64 / xs.len() as f64;
    a.iter()
        .chain(b)
        .map(|&t| (ecdf(a, t) - ecdf(b, t)).abs())
        .fold(0.0, f64::max)
}

/// Kendall tau-b by counting concordant and discordant pairs.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let (mut conc, mut disc, mut tie_x, mut tie_y) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let dx = x[i] - x[j];
            let dy = y[i] - y[j];
            if dx == 0.0 && dy == 0.0 {
                continue;
            } else if dx == 0.0 {
                tie_x += 1;
            } else if dy == 0.0 {
                tie_y += 1;
            } else if (dx > 0.0) == (dy > 0.0) {
                conc += 1;
            } else {
                disc += 1;
            }
        }
    }
    let n0 = (conc + disc) as f64;
    (conc - disc) as f64 / ((n0 + tie_x as f64) * (n0 + tie_y as f64)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles_agree_with_closed_forms() {
        assert!((erf_taylor(1.0) - 0.842_700_792_949_714_9).abs() < 1e-14);
        assert!((ln_gamma_integral(0.5) - PI.sqrt().ln()).abs() < 1e-10);
        assert!((ln_gamma_integral(5.0) - 24f64.ln()).abs() < 1e-10);
        let x: f64 = 0.3;
        let closed = 1.0 - (1.0 - x).powi(5) * (1.0 + 5.0 * x);
        assert!((beta_cdf_quadrature(x, 2.0, 5.0) - closed).abs() < 1e-12);
        // arcsine law: I_x(1/2, 1/2) = 2/pi asin(sqrt x)
        let x: f64 = 0.7;
        let closed = 2.0 / PI * x.sqrt().asin();
        assert!((beta_cdf_quadrature(x, 0.5, 0.5) - closed).abs() < 1e-10);
        let cdf = normal_cdf_midpoint(&[0.0, 1.959_963_984_540_054], 1e-4);
        assert!((cdf[0] - 0.5).abs() < 1e-10);
        assert!((cdf[1] - 0.975).abs() < 1e-10);
        assert_eq!(naive_ranks(&[1.0, 1.0, 2.0]), vec![1.5, 1.5, 3.0]);
        assert!((naive_ks(&[1.0, 2.0, 3.0], &[1.0, 2.0, 4.0]) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(kendall_tau(&[1.0, 2.0, 3.0], &[1.0, 5.0, 9.0]), 1.0);
    }
}

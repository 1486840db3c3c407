//! Small regression helpers used by the tail certification and the decay
//! diagnostics.

/// Least-squares line fit with coefficient of determination.
#[derive(Debug, Clone, Copy)]
pub struct LinFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub n: usize,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinFit> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Some(LinFit {
        slope,
        intercept,
        r2,
        n,
    })
}

/// Fit ln(y) = slope * x + intercept over the samples with y > floor.
/// Returns None if fewer than two usable samples remain.
pub fn log_linear_fit(xs: &[f64], ys: &[f64], floor: f64) -> Option<LinFit> {
    let mut fx = Vec::with_capacity(xs.len());
    let mut fy = Vec::with_capacity(ys.len());
    for (&x, &y) in xs.iter().zip(ys) {
        if y > floor && y.is_finite() {
            fx.push(x);
            fy.push(y.ln());
        }
    }
    linear_fit(&fx, &fy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x - 1.0).collect();
        let f = linear_fit(&xs, &ys).unwrap();
        assert!((f.slope - 2.5).abs() < 1e-12);
        assert!((f.intercept + 1.0).abs() < 1e-12);
        assert!((f.r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exponential_decay_rate() {
        let xs: Vec<f64> = (0..50).map(|i| 0.3 * i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 4.0 * (-1.7 * x).exp()).collect();
        let f = log_linear_fit(&xs, &ys, 0.0).unwrap();
        assert!((f.slope + 1.7).abs() < 1e-10);
        assert!(f.r2 > 0.999999);
    }

    #[test]
    fn floor_filters_nonpositive() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 0.1, 0.0, -0.5];
        let f = log_linear_fit(&xs, &ys, 0.0).unwrap();
        assert_eq!(f.n, 2);
    }
}

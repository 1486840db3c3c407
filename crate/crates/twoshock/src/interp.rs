//! Shape-preserving cubic interpolation on a uniform grid.
//!
//! Node derivatives follow the Fritsch-Carlson construction: averaged
//! secants clipped to three times the neighbouring secant magnitudes and
//! zeroed at local extrema, which keeps the interpolant monotone wherever
//! the data are. Evaluation clamps to the end values outside the table.

#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x0: f64,
    dx: f64,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl MonotoneCubic {
    pub fn from_uniform(x0: f64, dx: f64, y: Vec<f64>) -> Self {
        assert!(y.len() >= 2, "need at least two nodes");
        assert!(dx > 0.0);
        let n = y.len();
        let mut secants = vec![0.0; n - 1];
        for i in 0..n - 1 {
            secants[i] = (y[i + 1] - y[i]) / dx;
        }
        let mut d = vec![0.0; n];
        d[0] = secants[0];
        d[n - 1] = secants[n - 2];
        for i in 1..n - 1 {
            let (sl, sr) = (secants[i - 1], secants[i]);
            if sl * sr <= 0.0 {
                d[i] = 0.0;
            } else {
                let avg = 0.5 * (sl + sr);
                let cap = 3.0 * sl.abs().min(sr.abs());
                d[i] = avg.clamp(-cap, cap);
            }
        }
        // End slopes keep the sign of the adjacent secant.
        if d[0] * secants[0] < 0.0 {
            d[0] = 0.0;
        }
        if d[n - 1] * secants[n - 2] < 0.0 {
            d[n - 1] = 0.0;
        }
        Self { x0, dx, y, d }
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn x_min(&self) -> f64 {
        self.x0
    }

    pub fn x_max(&self) -> f64 {
        self.x0 + self.dx * (self.y.len() - 1) as f64
    }

    /// Hermite evaluation, clamped to the end values outside the table.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.y.len();
        if x <= self.x0 {
            return self.y[0];
        }
        let s = (x - self.x0) / self.dx;
        let i = s.floor() as usize;
        if i >= n - 1 {
            return self.y[n - 1];
        }
        let t = s - i as f64;
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let (d0, d1) = (self.d[i], self.d[i + 1]);
        let h = self.dx;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
    }
}

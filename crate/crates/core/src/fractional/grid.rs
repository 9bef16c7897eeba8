use serde::Serialize;

use crate::error::{Error, Result};

/// Strictly increasing positive sample times. The origin is implicit: the
/// quadrature always adds a panel `[0, t_1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid {
    points: Vec<f64>,
    max_spacing: f64,
    /// Set when `points[i] = (i + 1) * step`, which makes the quadrature
    /// weights translation invariant.
    #[serde(skip)]
    step: Option<f64>,
}

impl Grid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {}",
                points.len()
            )));
        }
        if !(points[0] > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "points must be positive, first is {}",
                points[0]
            )));
        }
        let mut max_spacing = points[0];
        for (i, w) in points.windows(2).enumerate() {
            if !(w[1] > w[0]) || !w[1].is_finite() {
                return Err(Error::InvalidGrid(format!(
                    "points must be finite and strictly increasing (index {})",
                    i + 1
                )));
            }
            max_spacing = max_spacing.max(w[1] - w[0]);
        }
        Ok(Grid {
            points,
            max_spacing,
            step: None,
        })
    }

    /// `n` equally spaced points from `t_min` to `t_max` inclusive.
    pub fn uniform(t_min: f64, t_max: f64, n: usize) -> Result<Self> {
        check_range(t_min, t_max, n)?;
        let h = (t_max - t_min) / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| t_min + i as f64 * h).collect();
        points[n - 1] = t_max;
        Self::new(points)
    }

    /// `t_i = i t_max / n` for `i = 1..=n`, so that `t_min` equals the spacing.
    pub fn uniform_from_origin(t_max: f64, n: usize) -> Result<Self> {
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "t_max must be positive, got {t_max}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {n}"
            )));
        }
        let points = (1..=n).map(|i| i as f64 * t_max / n as f64).collect();
        let mut grid = Self::new(points)?;
        grid.step = Some(t_max / n as f64);
        Ok(grid)
    }

    /// `n` geometrically spaced points from `t_min` to `t_max` inclusive.
    pub fn log_spaced(t_min: f64, t_max: f64, n: usize) -> Result<Self> {
        check_range(t_min, t_max, n)?;
        let ratio = (t_max / t_min).ln() / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| t_min * (i as f64 * ratio).exp()).collect();
        points[0] = t_min;
        points[n - 1] = t_max;
        Self::new(points)
    }

    /// `t_i = t_max (i / n)^r`, clustering points near the origin for `r > 1`.
    pub fn graded(t_max: f64, n: usize, r: f64) -> Result<Self> {
        if !(r >= 1.0) || !r.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "grading exponent must be >= 1, got {r}"
            )));
        }
        if r == 1.0 {
            return Self::uniform_from_origin(t_max, n);
        }
        if !(t_max > 0.0) || !t_max.is_finite() || n < 2 {
            return Err(Error::InvalidGrid(format!(
                "graded grid needs t_max > 0 and n >= 2, got t_max = {t_max}, n = {n}"
            )));
        }
        let points = (1..=n)
            .map(|i| t_max * (i as f64 / n as f64).powf(r))
            .collect();
        Self::new(points)
    }

    /// Halves every panel, including `[0, t_1]`.
    pub fn refine(&self) -> Grid {
        if self.step.is_some() {
            return Self::uniform_from_origin(self.t_max(), 2 * self.len())
                .expect("refining a valid grid");
        }
        let mut points = Vec::with_capacity(2 * self.len());
        let mut prev = 0.0;
        for &t in &self.points {
            points.push(0.5 * (prev + t));
            points.push(t);
            prev = t;
        }
        Self::new(points).expect("refining a valid grid")
    }

    /// The points at odd positions (1-based even), i.e. every other panel
    /// merged. `None` if fewer than 4 points.
    pub fn coarsen(&self) -> Option<Grid> {
        if self.len() < 4 {
            return None;
        }
        let points: Vec<f64> = self.points.iter().skip(1).step_by(2).copied().collect();
        let mut grid = Self::new(points).ok()?;
        grid.step = self.step.map(|h| 2.0 * h);
        Some(grid)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn t_min(&self) -> f64 {
        self.points[0]
    }

    pub fn t_max(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Largest panel width, the origin panel included.
    pub fn max_spacing(&self) -> f64 {
        self.max_spacing
    }

    pub(crate) fn step(&self) -> Option<f64> {
        self.step
    }
}

fn check_range(t_min: f64, t_max: f64, n: usize) -> Result<()> {
    if !(t_min > 0.0) || !(t_max > t_min) || !t_max.is_finite() {
        return Err(Error::InvalidGrid(format!(
            "need 0 < t_min < t_max, got t_min = {t_min}, t_max = {t_max}"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points, got {n}"
        )));
    }
    Ok(())
}

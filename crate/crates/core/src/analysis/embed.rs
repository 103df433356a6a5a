//! Delay embedding.

use crate::error::{Error, Result};

/// Points in `R^dim`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || !coords.len().is_multiple_of(dim) {
            return Err(Error::domain(format!(
                "{} coordinates do not form points of dimension {dim}",
                coords.len()
            )));
        }
        Ok(PointCloud { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    /// Coordinate `c` of every point.
    pub fn coordinate(&self, c: usize) -> Vec<f64> {
        self.points().map(|p| p[c]).collect()
    }

    /// Per-axis `(min, max)`.
    pub fn bounding_box(&self) -> Vec<(f64, f64)> {
        let mut bb = vec![(f64::INFINITY, f64::NEG_INFINITY); self.dim];
        for p in self.points() {
            for (b, &x) in bb.iter_mut().zip(p) {
                b.0 = b.0.min(x);
                b.1 = b.1.max(x);
            }
        }
        bb
    }

    /// Length of the bounding-box diagonal.
    pub fn diameter(&self) -> f64 {
        self.bounding_box()
            .iter()
            .map(|(lo, hi)| (hi - lo) * (hi - lo))
            .sum::<f64>()
            .sqrt()
    }
}

/// Points `(Y(t), Y(t + lag), ..., Y(t + (dim-1) lag))` for every `t` that
/// fits, `n - (dim-1) lag` in total.
pub fn delay_embed(series: &[f64], dim: usize, lag: usize) -> Result<PointCloud> {
    if dim == 0 || lag == 0 {
        return Err(Error::domain(
            "embedding dimension and lag must be positive",
        ));
    }
    let span = (dim - 1) * lag;
    if series.len() <= span {
        return Err(Error::domain(format!(
            "series of {} values too short for a {dim}-dimensional embedding with lag {lag}",
            series.len()
        )));
    }
    let n = series.len() - span;
    let mut coords = Vec::with_capacity(n * dim);
    for t in 0..n {
        coords.extend((0..dim).map(|i| series[t + i * lag]));
    }
    PointCloud::new(dim, coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_series() {
        let c = delay_embed(&[1.0, 2.0, 3.0, 4.0, 5.0], 3, 1).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.point(0), &[1.0, 2.0, 3.0]);
        assert_eq!(c.point(2), &[3.0, 4.0, 5.0]);
        let c = delay_embed(&[7.0; 10], 3, 2).unwrap();
        assert!(c.points().all(|p| p == [7.0, 7.0, 7.0]));
        assert!(delay_embed(&[1.0, 2.0], 3, 1).is_err());
    }

    #[test]
    fn diameter_is_box_diagonal() {
        let c = PointCloud::new(3, vec![0.0, 0.0, 0.0, 1.0, 2.0, 2.0]).unwrap();
        assert_eq!(c.diameter(), 3.0);
    }

    proptest! {
        #[test]
        fn first_coordinate_recovers_series(
            y in proptest::collection::vec(-1e3f64..1e3, 1..200),
            dim in 1usize..5,
            lag in 1usize..4,
        ) {
            prop_assume!(y.len() > (dim - 1) * lag);
            let c = delay_embed(&y, dim, lag).unwrap();
            prop_assert_eq!(c.coordinate(0), y[..y.len() - (dim - 1) * lag].to_vec());
        }
    }
}

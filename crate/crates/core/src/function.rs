//! Real-valued functions on the vertex set.

use std::ops::{Deref, DerefMut};

use serde::Serialize;

/// A function `f: V -> R`, stored densely by vertex id.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VertexFunction(Vec<f64>);

impl VertexFunction {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self(vec![c; n])
    }

    /// The indicator `delta_r` of a single vertex.
    pub fn indicator(n: usize, r: usize) -> Self {
        let mut f = Self::zeros(n);
        f.0[r] = 1.0;
        f
    }

    /// Indicator of a vertex set.
    pub fn characteristic(n: usize, set: &[usize]) -> Self {
        let mut f = Self::zeros(n);
        for &v in set {
            f.0[v] = 1.0;
        }
        f
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn avg(&self) -> f64 {
        if self.0.is_empty() {
            0.0
        } else {
            self.sum() / self.0.len() as f64
        }
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn sum_squares(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }

    /// `f - avg(f)`.
    pub fn centered(&self) -> Self {
        let a = self.avg();
        Self(self.0.iter().map(|v| v - a).collect())
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self(self.0.iter().map(|v| v * s).collect())
    }

    pub fn shifted(&self, c: f64) -> Self {
        Self(self.0.iter().map(|v| v + c).collect())
    }
}

impl Deref for VertexFunction {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for VertexFunction {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for VertexFunction {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centering() {
        let f = VertexFunction::new(vec![1.0, 2.0, 6.0]);
        assert_eq!(f.avg(), 3.0);
        assert!(f.centered().avg().abs() < 1e-12);
        assert_eq!(VertexFunction::indicator(3, 1).values(), &[0.0, 1.0, 0.0]);
    }
}

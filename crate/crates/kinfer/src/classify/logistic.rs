//! Batch-gradient logistic regression over standardized features.

use super::{check_features, BinaryClassifier, TrainError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LogisticRegression {
    weights: Vec<f64>,
    bias: f64,
    means: Vec<f64>,
    /// Per-feature standard deviations; constant features get 1.0.
    scales: Vec<f64>,
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2: f64,
}

impl LogisticRegression {
    pub fn fit(features: &[Vec<f64>], labels: &[bool]) -> Result<Self, TrainError> {
        Self::fit_with(features, labels, 0.5, 400, 1e-3)
    }

    pub fn fit_with(
        features: &[Vec<f64>],
        labels: &[bool],
        learning_rate: f64,
        epochs: usize,
        l2: f64,
    ) -> Result<Self, TrainError> {
        let width = check_features(features, labels)?;
        let n = features.len() as f64;

        let mut means = vec![0.0; width];
        for row in features {
            for (m, v) in means.iter_mut().zip(row) {
                *m += v / n;
            }
        }
        let mut scales = vec![0.0; width];
        for row in features {
            for ((s, m), v) in scales.iter_mut().zip(&means).zip(row) {
                *s += (v - m).powi(2) / n;
            }
        }
        for s in &mut scales {
            *s = s.sqrt();
            if *s < 1e-12 {
                *s = 1.0;
            }
        }

        let standardized: Vec<Vec<f64>> = features
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&means)
                    .zip(&scales)
                    .map(|((v, m), s)| (v - m) / s)
                    .collect()
            })
            .collect();

        let mut model = LogisticRegression {
            weights: vec![0.0; width],
            bias: 0.0,
            means,
            scales,
            learning_rate,
            epochs,
            l2,
        };

        for _ in 0..epochs {
            let mut grad_w = vec![0.0; width];
            let mut grad_b = 0.0;
            for (row, &label) in standardized.iter().zip(labels) {
                let p = sigmoid(model.linear_standardized(row));
                let err = p - f64::from(label);
                for (g, v) in grad_w.iter_mut().zip(row) {
                    *g += err * v / n;
                }
                grad_b += err / n;
            }
            for (w, g) in model.weights.iter_mut().zip(&grad_w) {
                *w -= learning_rate * (g + l2 * *w);
            }
            model.bias -= learning_rate * grad_b;
        }
        Ok(model)
    }

    fn linear_standardized(&self, standardized: &[f64]) -> f64 {
        self.bias
            + self
                .weights
                .iter()
                .zip(standardized)
                .map(|(w, v)| w * v)
                .sum::<f64>()
    }
}

impl BinaryClassifier for LogisticRegression {
    fn probability(&self, features: &[f64]) -> f64 {
        let z = self.bias
            + self
                .weights
                .iter()
                .zip(features)
                .zip(self.means.iter().zip(&self.scales))
                .map(|((w, v), (m, s))| w * ((v - m) / s))
                .sum::<f64>();
        sigmoid(z)
    }
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

//! Bernoulli naive Bayes over binary feature vectors, with add-one
//! smoothing on the per-feature conditionals.

use super::{check_features, BinaryClassifier, TrainError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BernoulliNaiveBayes {
    positive_count: usize,
    negative_count: usize,
    /// Per-feature counts of value 1 within each class.
    positive_ones: Vec<usize>,
    negative_ones: Vec<usize>,
}

impl BernoulliNaiveBayes {
    pub fn fit(features: &[Vec<f64>], labels: &[bool]) -> Result<Self, TrainError> {
        let width = check_features(features, labels)?;
        let mut model = BernoulliNaiveBayes {
            positive_count: 0,
            negative_count: 0,
            positive_ones: vec![0; width],
            negative_ones: vec![0; width],
        };
        for (row, &label) in features.iter().zip(labels) {
            let (count, ones) = if label {
                (&mut model.positive_count, &mut model.positive_ones)
            } else {
                (&mut model.negative_count, &mut model.negative_ones)
            };
            *count += 1;
            for (slot, v) in ones.iter_mut().zip(row) {
                if *v >= 0.5 {
                    *slot += 1;
                }
            }
        }
        Ok(model)
    }

    /// log P(class) + sum of log P(feature | class), add-one smoothed.
    fn log_joint(&self, features: &[f64], positive: bool) -> f64 {
        let (count, ones) = if positive {
            (self.positive_count, &self.positive_ones)
        } else {
            (self.negative_count, &self.negative_ones)
        };
        let total = (self.positive_count + self.negative_count) as f64;
        let prior = ((count as f64 + 1.0) / (total + 2.0)).ln();
        let mut log_p = prior;
        for (slot, v) in ones.iter().zip(features) {
            let p_one = (*slot as f64 + 1.0) / (count as f64 + 2.0);
            log_p += if *v >= 0.5 { p_one.ln() } else { (1.0 - p_one).ln() };
        }
        log_p
    }
}

impl BernoulliNaiveBayes {
    /// log P(+|x) - log P(-|x); positive means the positive class wins.
    pub fn log_odds(&self, features: &[f64]) -> f64 {
        self.log_joint(features, true) - self.log_joint(features, false)
    }

    pub fn feature_count(&self) -> usize {
        self.positive_ones.len()
    }
}

impl BinaryClassifier for BernoulliNaiveBayes {
    fn probability(&self, features: &[f64]) -> f64 {
        let pos = self.log_joint(features, true);
        let neg = self.log_joint(features, false);
        // Normalize in log space.
        let max = pos.max(neg);
        let pos_exp = (pos - max).exp();
        let neg_exp = (neg - max).exp();
        pos_exp / (pos_exp + neg_exp)
    }
}

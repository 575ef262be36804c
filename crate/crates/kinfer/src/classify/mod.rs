//! From-scratch binary classifiers shared by the attribution and vocative
//! modules, plus stratified k-fold cross-validation.

mod bayes;
mod logistic;
mod rule_list;
mod tree;

pub use bayes::BernoulliNaiveBayes;
pub use logistic::LogisticRegression;
pub use rule_list::RuleListClassifier;
pub use tree::DecisionTree;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TrainError {
    #[error("no training examples")]
    Empty,
    #[error("need at least {folds} positive examples for {folds}-fold cross-validation, got {positives}")]
    TooFewPositives { folds: usize, positives: usize },
    #[error("feature vectors have inconsistent lengths")]
    RaggedFeatures,
}

/// A trained binary classifier over fixed-length numeric feature vectors.
pub trait BinaryClassifier {
    /// Probability of the positive class, in [0, 1].
    fn probability(&self, features: &[f64]) -> f64;

    fn label(&self, features: &[f64]) -> bool {
        self.probability(features) >= 0.5
    }
}

pub fn check_features(features: &[Vec<f64>], labels: &[bool]) -> Result<usize, TrainError> {
    if features.is_empty() || features.len() != labels.len() {
        return Err(TrainError::Empty);
    }
    let width = features[0].len();
    if features.iter().any(|f| f.len() != width) {
        return Err(TrainError::RaggedFeatures);
    }
    Ok(width)
}

/// Stratified k-fold split: positives and negatives are shuffled separately
/// (seeded) and dealt round-robin, so every fold keeps the class balance.
/// Returns `k` disjoint index sets covering all examples.
pub fn stratified_folds(labels: &[bool], k: usize, seed: u64) -> Result<Vec<Vec<usize>>, TrainError> {
    let positives: Vec<usize> = (0..labels.len()).filter(|&i| labels[i]).collect();
    let negatives: Vec<usize> = (0..labels.len()).filter(|&i| !labels[i]).collect();
    if positives.len() < k {
        return Err(TrainError::TooFewPositives {
            folds: k,
            positives: positives.len(),
        });
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut positives = positives;
    let mut negatives = negatives;
    positives.shuffle(&mut rng);
    negatives.shuffle(&mut rng);

    let mut folds = vec![Vec::new(); k];
    for (i, idx) in positives.into_iter().chain(negatives).enumerate() {
        folds[i % k].push(idx);
    }
    Ok(folds)
}

/// Indices not in `fold`, preserving order.
pub fn complement(fold: &[usize], total: usize) -> Vec<usize> {
    let mut in_fold = vec![false; total];
    for &i in fold {
        in_fold[i] = true;
    }
    (0..total).filter(|&i| !in_fold[i]).collect()
}

pub fn select<T: Clone>(items: &[T], indices: &[usize]) -> Vec<T> {
    indices.iter().map(|&i| items[i].clone()).collect()
}

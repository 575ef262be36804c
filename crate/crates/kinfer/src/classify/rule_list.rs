//! Sequential-covering rule-list learner: greedily grows conjunctive rules
//! for the positive class, removes covered examples, and repeats.

use super::{check_features, BinaryClassifier, TrainError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Test {
    AtMost(f64),
    Above(f64),
}

impl Test {
    fn passes(&self, value: f64) -> bool {
        match self {
            Test::AtMost(t) => value <= *t,
            Test::Above(t) => value > *t,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LearnedRule {
    pub conditions: Vec<(usize, Test)>,
    /// Laplace precision of the rule on its training cover.
    pub probability: f64,
}

impl LearnedRule {
    fn covers(&self, features: &[f64]) -> bool {
        self.conditions
            .iter()
            .all(|(f, test)| test.passes(features.get(*f).copied().unwrap_or(0.0)))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleListClassifier {
    pub rules: Vec<LearnedRule>,
    /// Positive probability when no rule fires.
    pub default_probability: f64,
}

const MAX_RULES: usize = 12;
const MAX_CONDITIONS: usize = 4;

impl RuleListClassifier {
    pub fn fit(features: &[Vec<f64>], labels: &[bool]) -> Result<Self, TrainError> {
        check_features(features, labels)?;
        let mut remaining: Vec<usize> = (0..features.len()).collect();
        let mut rules = Vec::new();

        while rules.len() < MAX_RULES {
            let positives = remaining.iter().filter(|&&i| labels[i]).count();
            if positives == 0 {
                break;
            }
            let Some(rule) = grow_rule(features, labels, &remaining) else {
                break;
            };
            let covered_positive_rate = {
                let covered: Vec<usize> = remaining
                    .iter()
                    .copied()
                    .filter(|&i| rule.covers(&features[i]))
                    .collect();
                let pos = covered.iter().filter(|&&i| labels[i]).count();
                (pos as f64 + 1.0) / (covered.len() as f64 + 2.0)
            };
            // A rule no better than guessing on the remainder is useless.
            let base_rate =
                (positives as f64 + 1.0) / (remaining.len() as f64 + 2.0);
            if covered_positive_rate <= base_rate || covered_positive_rate < 0.5 {
                break;
            }
            remaining.retain(|&i| !rule.covers(&features[i]));
            rules.push(rule);
        }

        let leftover_pos = remaining.iter().filter(|&&i| labels[i]).count();
        let default_probability = (leftover_pos as f64 + 1.0) / (remaining.len() as f64 + 2.0);
        Ok(RuleListClassifier {
            rules,
            default_probability,
        })
    }
}

impl BinaryClassifier for RuleListClassifier {
    fn probability(&self, features: &[f64]) -> f64 {
        for rule in &self.rules {
            if rule.covers(features) {
                return rule.probability;
            }
        }
        self.default_probability
    }
}

/// Grow a single rule by greedily adding the condition that maximizes
/// Laplace precision over the currently covered set.
fn grow_rule(features: &[Vec<f64>], labels: &[bool], remaining: &[usize]) -> Option<LearnedRule> {
    let width = features[remaining[0]].len();
    let mut covered: Vec<usize> = remaining.to_vec();
    let mut conditions: Vec<(usize, Test)> = Vec::new();
    let mut precision = laplace_precision(labels, &covered);

    while conditions.len() < MAX_CONDITIONS {
        let mut best: Option<(f64, usize, Test)> = None;
        #[allow(clippy::needless_range_loop)]
        for feature in 0..width {
            let mut values: Vec<f64> = covered.iter().map(|&i| features[i][feature]).collect();
            values.sort_by(|a, b| a.total_cmp(b));
            values.dedup();
            for window in values.windows(2) {
                let threshold = (window[0] + window[1]) / 2.0;
                for test in [Test::AtMost(threshold), Test::Above(threshold)] {
                    let subset: Vec<usize> = covered
                        .iter()
                        .copied()
                        .filter(|&i| test.passes(features[i][feature]))
                        .collect();
                    if subset.is_empty() || !subset.iter().any(|&i| labels[i]) {
                        continue;
                    }
                    let p = laplace_precision(labels, &subset);
                    if best.as_ref().is_none_or(|(bp, _, _)| p > *bp) {
                        best = Some((p, feature, test));
                    }
                }
            }
        }
        let Some((p, feature, test)) = best else { break };
        if p <= precision + 1e-12 {
            break;
        }
        covered.retain(|&i| test.passes(features[i][feature]));
        conditions.push((feature, test));
        precision = p;
        if covered.iter().all(|&i| labels[i]) {
            break;
        }
    }

    if conditions.is_empty() {
        return None;
    }
    Some(LearnedRule {
        conditions,
        probability: precision,
    })
}

fn laplace_precision(labels: &[bool], indices: &[usize]) -> f64 {
    let positives = indices.iter().filter(|&&i| labels[i]).count();
    (positives as f64 + 1.0) / (indices.len() as f64 + 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_a_simple_interval() {
        let features: Vec<Vec<f64>> = (0..30).map(|i| vec![i as f64]).collect();
        let labels: Vec<bool> = (0..30).map(|i| i >= 20).collect();
        let model = RuleListClassifier::fit(&features, &labels).unwrap();
        assert!(model.label(&[25.0]));
        assert!(!model.label(&[5.0]));
    }

    #[test]
    fn learns_a_conjunction() {
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for x in 0..5 {
            for y in 0..5 {
                features.push(vec![x as f64, y as f64]);
                labels.push(x >= 2 && y <= 1);
            }
        }
        let model = RuleListClassifier::fit(&features, &labels).unwrap();
        assert!(model.label(&[4.0, 0.0]));
        assert!(!model.label(&[4.0, 4.0]));
        assert!(!model.label(&[0.0, 0.0]));
    }

    #[test]
    fn all_negative_training_data_predicts_negative() {
        let features = vec![vec![0.0], vec![1.0], vec![2.0]];
        let labels = vec![false, false, false];
        let model = RuleListClassifier::fit(&features, &labels).unwrap();
        assert!(model.rules.is_empty());
        assert!(!model.label(&[1.0]));
    }
}

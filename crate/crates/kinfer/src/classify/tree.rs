//! Depth-limited CART-style decision tree with Gini impurity splits.

use super::{check_features, BinaryClassifier, TrainError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Node {
    Leaf {
        /// Laplace-smoothed positive fraction of the training examples here.
        probability: f64,
    },
    Split {
        feature: usize,
        threshold: f64,
        below: Box<Node>,
        above: Box<Node>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecisionTree {
    root: Node,
    pub max_depth: usize,
    pub min_leaf: usize,
}

impl DecisionTree {
    pub fn fit(features: &[Vec<f64>], labels: &[bool]) -> Result<Self, TrainError> {
        Self::fit_with(features, labels, 6, 2)
    }

    pub fn fit_with(
        features: &[Vec<f64>],
        labels: &[bool],
        max_depth: usize,
        min_leaf: usize,
    ) -> Result<Self, TrainError> {
        check_features(features, labels)?;
        let indices: Vec<usize> = (0..features.len()).collect();
        let root = grow(features, labels, &indices, max_depth, min_leaf);
        Ok(DecisionTree {
            root,
            max_depth,
            min_leaf,
        })
    }
}

impl BinaryClassifier for DecisionTree {
    fn probability(&self, features: &[f64]) -> f64 {
        let mut node = &self.root;
        loop {
            match node {
                Node::Leaf { probability } => return *probability,
                Node::Split {
                    feature,
                    threshold,
                    below,
                    above,
                } => {
                    let value = features.get(*feature).copied().unwrap_or(0.0);
                    node = if value <= *threshold { below } else { above };
                }
            }
        }
    }
}

fn leaf(labels: &[bool], indices: &[usize]) -> Node {
    let positives = indices.iter().filter(|&&i| labels[i]).count();
    Node::Leaf {
        probability: (positives as f64 + 1.0) / (indices.len() as f64 + 2.0),
    }
}

fn gini(positives: usize, total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let p = positives as f64 / total as f64;
    2.0 * p * (1.0 - p)
}

fn grow(
    features: &[Vec<f64>],
    labels: &[bool],
    indices: &[usize],
    depth: usize,
    min_leaf: usize,
) -> Node {
    let positives = indices.iter().filter(|&&i| labels[i]).count();
    if depth == 0 || indices.len() < 2 * min_leaf || positives == 0 || positives == indices.len() {
        return leaf(labels, indices);
    }

    let parent_impurity = gini(positives, indices.len());
    let width = features[indices[0]].len();
    let mut best: Option<(f64, usize, f64)> = None; // (gain, feature, threshold)

    #[allow(clippy::needless_range_loop)]
    for feature in 0..width {
        let mut values: Vec<f64> = indices.iter().map(|&i| features[i][feature]).collect();
        values.sort_by(|a, b| a.total_cmp(b));
        values.dedup();
        for window in values.windows(2) {
            let threshold = (window[0] + window[1]) / 2.0;
            let mut below = (0usize, 0usize); // (positives, total)
            let mut above = (0usize, 0usize);
            for &i in indices {
                let side = if features[i][feature] <= threshold {
                    &mut below
                } else {
                    &mut above
                };
                side.0 += usize::from(labels[i]);
                side.1 += 1;
            }
            if below.1 < min_leaf || above.1 < min_leaf {
                continue;
            }
            let weighted = (below.1 as f64 * gini(below.0, below.1)
                + above.1 as f64 * gini(above.0, above.1))
                / indices.len() as f64;
            let gain = parent_impurity - weighted;
            if gain > 1e-12 && best.is_none_or(|(g, _, _)| gain > g) {
                best = Some((gain, feature, threshold));
            }
        }
    }

    let Some((_, feature, threshold)) = best else {
        return leaf(labels, indices);
    };
    let (below_idx, above_idx): (Vec<usize>, Vec<usize>) = indices
        .iter()
        .partition(|&&i| features[i][feature] <= threshold);
    Node::Split {
        feature,
        threshold,
        below: Box::new(grow(features, labels, &below_idx, depth - 1, min_leaf)),
        above: Box::new(grow(features, labels, &above_idx, depth - 1, min_leaf)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn learns_a_threshold_split() {
        let features: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64]).collect();
        let labels: Vec<bool> = (0..20).map(|i| i >= 10).collect();
        let tree = DecisionTree::fit(&features, &labels).unwrap();
        assert!(!tree.label(&[3.0]));
        assert!(tree.label(&[15.0]));
        assert!(tree.probability(&[15.0]) > 0.8);
    }

    #[test]
    fn learns_an_axis_aligned_corner() {
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for x in 0..6 {
            for y in 0..6 {
                features.push(vec![x as f64, y as f64]);
                labels.push(x >= 3 && y >= 3);
            }
        }
        let tree = DecisionTree::fit(&features, &labels).unwrap();
        assert!(tree.label(&[5.0, 5.0]));
        assert!(!tree.label(&[5.0, 0.0]));
        assert!(!tree.label(&[0.0, 5.0]));
    }

    #[test]
    fn pure_labels_give_a_single_leaf() {
        let features = vec![vec![1.0], vec![2.0], vec![3.0]];
        let labels = vec![true, true, true];
        let tree = DecisionTree::fit(&features, &labels).unwrap();
        // Laplace: (3+1)/(3+2)
        assert!((tree.probability(&[9.9]) - 0.8).abs() < 1e-12);
    }
}

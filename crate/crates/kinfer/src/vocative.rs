//! Vocative detection: utterances in which a target family nominal is used
//! as a direct address. Two detectors are provided: an unsupervised
//! punctuation-pattern matcher and a naive-Bayes classifier over binary
//! per-occurrence features.

use crate::classify::{stratified_folds, BernoulliNaiveBayes, BinaryClassifier, TrainError};
use crate::corpus::{tokenize, Document, Lexicons, Token, Utterance, UtteranceId};
use crate::metrics::Prf;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// One occurrence of a target nominal inside a candidate utterance.
/// `token_index` indexes the token list of the utterance's inner text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NominalOccurrence {
    pub utterance: UtteranceId,
    pub lemma: String,
    pub token_index: usize,
    pub char_offset: usize,
}

/// Gold label for one nominal occurrence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VocativeLabel {
    pub utterance_id: UtteranceId,
    pub token_index: usize,
    pub label: bool,
}

pub const VOCATIVE_FEATURE_COUNT: usize = 13;

/// Candidate selection: every occurrence of a target nominal in every
/// speaker-utterance. Utterances without a target nominal are excluded.
pub fn select_candidates(document: &Document, lexicons: &Lexicons) -> Vec<NominalOccurrence> {
    let mut occurrences = Vec::new();
    for utterance in document.speaker_utterances() {
        for (token_index, token) in tokenize(&utterance.text, 0).iter().enumerate() {
            if token.is_word() && lexicons.nominal(&token.lower).is_some() {
                occurrences.push(NominalOccurrence {
                    utterance: utterance.id,
                    lemma: token.lower.clone(),
                    token_index,
                    char_offset: token.span.start,
                });
            }
        }
    }
    occurrences
}

fn is_dear(lower: &str) -> bool {
    lower == "dear" || lower == "dearest"
}

/// Index of the first token of the address phrase: the nominal with its
/// optional `my` / `dear(est)` prefix absorbed (in the order my, dear(est)).
fn phrase_start(tokens: &[Token], nominal_index: usize) -> usize {
    let mut start = nominal_index;
    if start > 0 && tokens[start - 1].is_word() && is_dear(&tokens[start - 1].lower) {
        start -= 1;
    }
    if start > 0 && tokens[start - 1].is_word() && tokens[start - 1].lower == "my" {
        start -= 1;
    }
    start
}

/// True when the position immediately outside the index range is punctuation
/// or the utterance boundary (the enclosing quotation mark counts as
/// punctuation).
fn punct_or_boundary(tokens: &[Token], index: Option<usize>) -> bool {
    match index {
        None => true,
        Some(i) => tokens.get(i).is_some_and(|t| t.is_punct()),
    }
}

/// Unsupervised detector: the nominal matches `<P my dear(est) T P>`, where
/// `my` and `dear(est)` are optional and P is any punctuation mark,
/// including the enclosing quotation marks.
pub fn detect_pattern(utterance: &Utterance, occurrence: &NominalOccurrence) -> bool {
    let tokens = tokenize(&utterance.text, 0);
    if occurrence.token_index >= tokens.len() {
        return false;
    }
    let start = phrase_start(&tokens, occurrence.token_index);
    let before = start.checked_sub(1);
    let after = if occurrence.token_index + 1 < tokens.len() {
        Some(occurrence.token_index + 1)
    } else {
        None
    };
    punct_or_boundary(&tokens, before) && punct_or_boundary(&tokens, after)
}

/// Binary feature vector for one occurrence. Indices:
///
/// 0. `my` immediately precedes the nominal by itself
/// 1. `dear(est)` immediately precedes, without `my` in front
/// 2. `my dear(est)` precedes in combination
/// 3. `you` adjacent before the nominal, ignoring punctuation
/// 4. `you` adjacent after the nominal, ignoring punctuation
/// 5. `oh` anywhere before the nominal
/// 6. `you` or `my dear` anywhere in the utterance
/// 7. comma/period/question/exclamation or quote boundary immediately right
/// 8. address phrase surrounded by commas
/// 9. address phrase surrounded by any punctuation, quotes included
/// 10. nominal at utterance start (only punctuation before the phrase)
/// 11. nominal at utterance end (only punctuation after it)
/// 12. the nominal's lemma occurs more than once in the utterance
pub fn extract_vocative_features(utterance: &Utterance, occurrence: &NominalOccurrence) -> Vec<f64> {
    let tokens = tokenize(&utterance.text, 0);
    let mut features = vec![0.0; VOCATIVE_FEATURE_COUNT];
    let idx = occurrence.token_index;
    if idx >= tokens.len() {
        return features;
    }

    let prev_word = |i: usize| -> Option<&Token> {
        tokens[..i].iter().rev().find(|t| t.is_word())
    };
    let next_word = |i: usize| -> Option<&Token> {
        tokens[i + 1..].iter().find(|t| t.is_word())
    };

    // Lexical: my / dear(est) immediately preceding.
    let immediately_dear = idx > 0 && tokens[idx - 1].is_word() && is_dear(&tokens[idx - 1].lower);
    let immediately_my = idx > 0 && tokens[idx - 1].is_word() && tokens[idx - 1].lower == "my";
    let my_before_dear =
        immediately_dear && idx > 1 && tokens[idx - 2].is_word() && tokens[idx - 2].lower == "my";
    features[0] = f64::from(immediately_my);
    features[1] = f64::from(immediately_dear && !my_before_dear);
    features[2] = f64::from(my_before_dear);

    // `you` adjacent (ignoring punctuation).
    features[3] = f64::from(prev_word(idx).is_some_and(|t| t.lower == "you"));
    features[4] = f64::from(next_word(idx).is_some_and(|t| t.lower == "you"));

    // `oh` anywhere before.
    features[5] = f64::from(tokens[..idx].iter().any(|t| t.is_word() && t.lower == "oh"));

    // `you` or `my dear(est)` anywhere in the utterance.
    let has_you = tokens.iter().any(|t| t.is_word() && t.lower == "you");
    let has_my_dear = tokens.windows(2).any(|w| {
        w[0].is_word() && w[0].lower == "my" && w[1].is_word() && is_dear(&w[1].lower)
    });
    features[6] = f64::from(has_you || has_my_dear);

    // Punctuation context.
    let start = phrase_start(&tokens, idx);
    let right = if idx + 1 < tokens.len() { Some(idx + 1) } else { None };
    let left = start.checked_sub(1);
    features[7] = f64::from(punct_or_boundary(&tokens, right));
    let comma_at = |i: Option<usize>| i.is_some_and(|i| tokens[i].lower == ",");
    features[8] = f64::from(comma_at(left) && comma_at(right));
    features[9] = f64::from(punct_or_boundary(&tokens, left) && punct_or_boundary(&tokens, right));

    // Positional.
    features[10] = f64::from(tokens[..start].iter().all(|t| t.is_punct()));
    features[11] = f64::from(tokens[idx + 1..].iter().all(|t| t.is_punct()));

    // Multiplicity.
    let lemma_count = tokens
        .iter()
        .filter(|t| t.is_word() && t.lower == occurrence.lemma)
        .count();
    features[12] = f64::from(lemma_count > 1);

    features
}

/// Run the pattern detector over all candidate occurrences.
pub fn detect_pattern_all(
    document: &Document,
    occurrences: &[NominalOccurrence],
) -> Vec<NominalOccurrence> {
    occurrences
        .iter()
        .filter(|o| {
            document
                .utterance(o.utterance)
                .is_some_and(|u| detect_pattern(u, o))
        })
        .cloned()
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct DetectionOutcome {
    /// Occurrences predicted vocative.
    pub positive_occurrences: Vec<NominalOccurrence>,
    /// Utterances with at least one positive occurrence.
    pub vocative_utterances: BTreeSet<UtteranceId>,
    /// Utterance-level precision/recall/F against the gold vocative set,
    /// when gold labels were supplied.
    pub report: Option<Prf>,
}

pub fn utterance_level(occurrences: &[NominalOccurrence]) -> BTreeSet<UtteranceId> {
    occurrences.iter().map(|o| o.utterance).collect()
}

/// Utterance-level P/R/F of a predicted vocative-utterance set.
pub fn score_detection(
    predicted: &BTreeSet<UtteranceId>,
    gold: &BTreeSet<UtteranceId>,
) -> Prf {
    let tp = predicted.intersection(gold).count();
    Prf::from_counts(tp, predicted.len() - tp, gold.len() - tp)
}

/// Supervised detector: label each occurrence's feature vector with naive
/// Bayes under stratified k-fold cross-validation, unioning the per-fold
/// predictions. An utterance is predicted vocative iff any of its
/// occurrences is classified positive.
pub fn detect_supervised(
    document: &Document,
    occurrences: &[NominalOccurrence],
    labels: &[VocativeLabel],
    folds: usize,
    seed: u64,
) -> Result<DetectionOutcome, TrainError> {
    detect_supervised_with(document, occurrences, labels, folds, seed, |x, y| {
        Ok(Box::new(BernoulliNaiveBayes::fit(x, y)?))
    })
}

/// Like `detect_supervised`, but with a caller-chosen classifier. Any of the
/// attribution module's classifiers can be swapped in for experiments.
pub fn detect_supervised_with(
    document: &Document,
    occurrences: &[NominalOccurrence],
    labels: &[VocativeLabel],
    folds: usize,
    seed: u64,
    fit: impl Fn(&[Vec<f64>], &[bool]) -> Result<Box<dyn BinaryClassifier>, TrainError>,
) -> Result<DetectionOutcome, TrainError> {
    let label_map: BTreeMap<(UtteranceId, usize), bool> = labels
        .iter()
        .map(|l| ((l.utterance_id, l.token_index), l.label))
        .collect();
    let truth: Vec<bool> = occurrences
        .iter()
        .map(|o| {
            label_map
                .get(&(o.utterance, o.token_index))
                .copied()
                .unwrap_or(false)
        })
        .collect();
    let features: Vec<Vec<f64>> = occurrences
        .iter()
        .map(|o| {
            let utterance = document
                .utterance(o.utterance)
                .expect("occurrence references a parsed utterance");
            extract_vocative_features(utterance, o)
        })
        .collect();

    let fold_sets = stratified_folds(&truth, folds, seed)?;
    let mut predicted = vec![false; occurrences.len()];
    for test_idx in &fold_sets {
        let train_idx = crate::classify::complement(test_idx, occurrences.len());
        let train_x = crate::classify::select(&features, &train_idx);
        let train_y = crate::classify::select(&truth, &train_idx);
        let model = fit(&train_x, &train_y)?;
        for &i in test_idx {
            predicted[i] = model.label(&features[i]);
        }
    }

    let positive_occurrences: Vec<NominalOccurrence> = occurrences
        .iter()
        .zip(&predicted)
        .filter(|(_, &p)| p)
        .map(|(o, _)| o.clone())
        .collect();
    let vocative_utterances = utterance_level(&positive_occurrences);

    let gold_utterances: BTreeSet<UtteranceId> = occurrences
        .iter()
        .zip(&truth)
        .filter(|(_, &t)| t)
        .map(|(o, _)| o.utterance)
        .collect();
    let report = Some(score_detection(&vocative_utterances, &gold_utterances));

    Ok(DetectionOutcome {
        positive_occurrences,
        vocative_utterances,
        report,
    })
}

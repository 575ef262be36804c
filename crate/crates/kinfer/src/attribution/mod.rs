//! Utterance attribution: every speaker-utterance is assigned one of six
//! categories, then attributed either heuristically (trigram and dialog
//! chains) or by ranking classifier scores over nearby candidate mentions.

use crate::classify::{
    stratified_folds, BinaryClassifier, DecisionTree, LogisticRegression, RuleListClassifier,
    TrainError,
};
use crate::corpus::{
    tokenize, CharacterId, CharacterMention, Document, GoldAnnotations, Lexicons, MentionKind,
    Paragraph, Token, Utterance, UtteranceId,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UtteranceCategory {
    CharacterTrigram,
    AddedQuote,
    QuoteAlone,
    ApparentConversation,
    Anaphora,
    Backoff,
}

impl UtteranceCategory {
    pub fn is_heuristic(self) -> bool {
        matches!(
            self,
            UtteranceCategory::CharacterTrigram
                | UtteranceCategory::AddedQuote
                | UtteranceCategory::ApparentConversation
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Before,
    After,
}

#[derive(Debug, Clone)]
pub struct CandidateSpeaker {
    pub mention: CharacterMention,
    pub paragraph_index: usize,
    /// Token distance from the nearest utterance boundary.
    pub distance: usize,
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassifierKind {
    Tree,
    Rules,
    Logistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ranking {
    Label,
    Probability,
    Hybrid,
    Combined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Combiner {
    Max,
    Mean,
    Median,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainSource {
    Gold,
    Predicted,
}

#[derive(Debug, Clone)]
pub struct AttributionConfig {
    pub ranking: Ranking,
    /// Probability cutoff; used only by probability-based rankings.
    pub threshold: f64,
    pub combiner: Combiner,
    pub chain_source: ChainSource,
    /// Classifier consulted by the label/probability/hybrid rankings.
    pub classifier: ClassifierKind,
    /// Candidate window, in paragraphs on each side of the utterance.
    pub window: usize,
}

impl Default for AttributionConfig {
    fn default() -> Self {
        AttributionConfig {
            ranking: Ranking::Hybrid,
            threshold: 0.5,
            combiner: Combiner::Mean,
            chain_source: ChainSource::Gold,
            classifier: ClassifierKind::Logistic,
            window: 2,
        }
    }
}

pub const FEATURE_COUNT: usize = 16;

// ---------------------------------------------------------------------------
// Categorization
// ---------------------------------------------------------------------------

/// Adjacent non-punctuation unit next to an utterance boundary: either a
/// character mention or a plain word.
enum Unit<'a> {
    Mention(&'a CharacterMention),
    Word(&'a Token),
}

fn paragraph_tokens(document: &Document, paragraph: &Paragraph) -> Vec<Token> {
    tokenize(&document.text[paragraph.span.clone()], paragraph.span.start)
}

fn inside_any_utterance(paragraph: &Paragraph, span: &std::ops::Range<usize>) -> bool {
    paragraph
        .utterances
        .iter()
        .any(|u| span.start < u.span.end && u.span.start < span.end)
}

/// Walk outward from one utterance boundary collecting up to two units,
/// skipping punctuation and stopping at another utterance.
fn adjacent_units<'a>(
    document: &'a Document,
    tokens: &'a [Token],
    utterance: &Utterance,
    side: Side,
) -> Vec<Unit<'a>> {
    let paragraph = &document.paragraphs[utterance.paragraph_index];
    let mut units = Vec::new();
    let mut skip_until: Option<usize> = None;

    let ordered: Vec<&Token> = match side {
        Side::After => tokens
            .iter()
            .filter(|t| t.span.start >= utterance.span.end)
            .collect(),
        Side::Before => tokens
            .iter()
            .filter(|t| t.span.end <= utterance.span.start)
            .rev()
            .collect(),
    };

    for token in ordered {
        if units.len() == 2 {
            break;
        }
        if let Some(boundary) = skip_until {
            let past = match side {
                Side::After => token.span.start >= boundary,
                Side::Before => token.span.end <= boundary,
            };
            if !past {
                continue;
            }
            skip_until = None;
        }
        if inside_any_utterance(paragraph, &token.span) {
            break;
        }
        if token.is_punct() {
            continue;
        }
        if let Some(mention) = paragraph
            .mentions
            .iter()
            .find(|m| token.span.start >= m.span.start && token.span.end <= m.span.end)
        {
            units.push(Unit::Mention(mention));
            skip_until = Some(match side {
                Side::After => mention.span.end,
                Side::Before => mention.span.start,
            });
        } else {
            units.push(Unit::Word(token));
        }
    }
    units
}

/// A mention + expression-verb pair (in either order) adjacent to the
/// utterance. Returns the mention when the pattern holds.
fn trigram_mention<'a>(
    document: &'a Document,
    tokens: &'a [Token],
    utterance: &Utterance,
    lexicons: &Lexicons,
    pronouns: bool,
) -> Option<&'a CharacterMention> {
    for side in [Side::After, Side::Before] {
        let units = adjacent_units(document, tokens, utterance, side);
        if units.len() < 2 {
            continue;
        }
        let kind_ok = |m: &CharacterMention| {
            if pronouns {
                m.kind == MentionKind::Pronoun
            } else {
                m.kind != MentionKind::Pronoun
            }
        };
        match (&units[0], &units[1]) {
            (Unit::Mention(m), Unit::Word(w))
                if kind_ok(m) && lexicons.is_expression_verb(&w.lower) =>
            {
                return Some(m)
            }
            (Unit::Word(w), Unit::Mention(m))
                if kind_ok(m) && lexicons.is_expression_verb(&w.lower) =>
            {
                return Some(m)
            }
            _ => {}
        }
    }
    None
}

fn paragraph_content_start(document: &Document, paragraph: &Paragraph) -> usize {
    let slice = &document.text[paragraph.span.clone()];
    let trimmed = slice.len() - slice.trim_start().len();
    paragraph.span.start + trimmed
}

/// The utterance is alone in its paragraph: the only utterance, with nothing
/// but whitespace and punctuation around it.
fn quote_alone_shape(document: &Document, tokens: &[Token], utterance: &Utterance) -> bool {
    let paragraph = &document.paragraphs[utterance.paragraph_index];
    if paragraph.utterances.len() != 1 {
        return false;
    }
    tokens
        .iter()
        .filter(|t| t.span.end <= utterance.span.start || t.span.start >= utterance.span.end)
        .all(|t| t.is_punct())
}

fn begins_with_single_utterance(document: &Document, paragraph: &Paragraph) -> bool {
    paragraph.utterances.len() == 1
        && paragraph.utterances[0].span.start == paragraph_content_start(document, paragraph)
}

/// Assign the first matching category, in the fixed order: character
/// trigram, added quote, apparent conversation, quote alone, anaphora,
/// backoff.
pub fn categorize(
    utterance: &Utterance,
    document: &Document,
    lexicons: &Lexicons,
) -> UtteranceCategory {
    let paragraph = &document.paragraphs[utterance.paragraph_index];
    let tokens = paragraph_tokens(document, paragraph);

    if trigram_mention(document, &tokens, utterance, lexicons, false).is_some() {
        return UtteranceCategory::CharacterTrigram;
    }
    if utterance.position_in_paragraph > 0 {
        return UtteranceCategory::AddedQuote;
    }
    if quote_alone_shape(document, &tokens, utterance) {
        let p = utterance.paragraph_index;
        let conversational = p >= 2
            && begins_with_single_utterance(document, &document.paragraphs[p - 1])
            && begins_with_single_utterance(document, &document.paragraphs[p - 2]);
        return if conversational {
            UtteranceCategory::ApparentConversation
        } else {
            UtteranceCategory::QuoteAlone
        };
    }
    if trigram_mention(document, &tokens, utterance, lexicons, true).is_some() {
        return UtteranceCategory::Anaphora;
    }
    UtteranceCategory::Backoff
}

// ---------------------------------------------------------------------------
// Heuristic attribution
// ---------------------------------------------------------------------------

/// Speaker lookup for dialog-chain heuristics, drawn from gold or from the
/// predictions made so far.
fn chain_speaker(
    id: UtteranceId,
    gold: Option<&GoldAnnotations>,
    prior: &BTreeMap<UtteranceId, Option<CharacterId>>,
    config: &AttributionConfig,
) -> Option<CharacterId> {
    match config.chain_source {
        ChainSource::Gold => gold.and_then(|g| g.speaker_of(id).cloned()),
        ChainSource::Predicted => prior.get(&id).cloned().flatten(),
    }
}

pub fn attribute_heuristic(
    utterance: &Utterance,
    category: UtteranceCategory,
    document: &Document,
    lexicons: &Lexicons,
    gold: Option<&GoldAnnotations>,
    prior: &BTreeMap<UtteranceId, Option<CharacterId>>,
    config: &AttributionConfig,
) -> Option<CharacterId> {
    match category {
        UtteranceCategory::CharacterTrigram => {
            let paragraph = &document.paragraphs[utterance.paragraph_index];
            let tokens = paragraph_tokens(document, paragraph);
            trigram_mention(document, &tokens, utterance, lexicons, false)
                .and_then(|m| m.resolved.clone())
        }
        UtteranceCategory::AddedQuote => {
            let prev = UtteranceId::new(
                utterance.paragraph_index,
                utterance.position_in_paragraph.checked_sub(1)?,
            );
            chain_speaker(prev, gold, prior, config)
        }
        UtteranceCategory::ApparentConversation => {
            let p = utterance.paragraph_index.checked_sub(2)?;
            let first = document.paragraphs[p].utterances.first()?;
            chain_speaker(first.id, gold, prior, config)
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Candidates and features
// ---------------------------------------------------------------------------

/// All mentions within `window` paragraphs of the utterance, ordered by
/// token distance. The anaphora category restricts candidates to pronoun
/// mentions; every other supervised category uses named and nominal ones.
pub fn gather_candidates(
    utterance: &Utterance,
    document: &Document,
    window: usize,
    category: UtteranceCategory,
) -> Vec<CandidateSpeaker> {
    let p = utterance.paragraph_index;
    let lo = p.saturating_sub(window);
    let hi = (p + window).min(document.paragraphs.len().saturating_sub(1));

    let mut tokens: Vec<Token> = Vec::new();
    for paragraph in &document.paragraphs[lo..=hi] {
        tokens.extend(paragraph_tokens(document, paragraph));
    }

    let mut candidates = Vec::new();
    for paragraph in &document.paragraphs[lo..=hi] {
        for mention in &paragraph.mentions {
            let wanted = match category {
                UtteranceCategory::Anaphora => mention.kind == MentionKind::Pronoun,
                _ => mention.kind != MentionKind::Pronoun,
            };
            if !wanted {
                continue;
            }
            // Mentions inside the utterance being attributed are not
            // candidate speakers.
            if mention.span.start < utterance.span.end && utterance.span.start < mention.span.end {
                continue;
            }
            let (side, distance) = if mention.span.end <= utterance.span.start {
                let d = tokens
                    .iter()
                    .filter(|t| {
                        t.span.start >= mention.span.end && t.span.end <= utterance.span.start
                    })
                    .count();
                (Side::Before, d)
            } else {
                let d = tokens
                    .iter()
                    .filter(|t| {
                        t.span.start >= utterance.span.end && t.span.end <= mention.span.start
                    })
                    .count();
                (Side::After, d)
            };
            candidates.push(CandidateSpeaker {
                mention: mention.clone(),
                paragraph_index: paragraph.index,
                distance,
                side,
            });
        }
    }
    candidates.sort_by_key(|c| (c.distance, c.side == Side::Before));
    candidates
}

/// Fixed-length numeric feature vector per (utterance, candidate) pair.
pub fn extract_features(
    utterance: &Utterance,
    candidate: &CandidateSpeaker,
    document: &Document,
    lexicons: &Lexicons,
) -> Vec<f64> {
    let mut features = vec![0.0; FEATURE_COUNT];

    // 0: candidate appearance count in the document.
    let appearances = match &candidate.mention.resolved {
        Some(id) => document
            .mentions()
            .filter(|m| m.resolved.as_ref() == Some(id))
            .count(),
        None => {
            let surface = candidate.mention.surface.to_lowercase();
            document
                .mentions()
                .filter(|m| m.surface.to_lowercase() == surface)
                .count()
        }
    };
    features[0] = appearances as f64;

    // 1: utterance length in word tokens.
    features[1] = tokenize(&utterance.text, 0)
        .iter()
        .filter(|t| t.is_word())
        .count() as f64;

    // 2-3: distance and side.
    features[2] = candidate.distance as f64;
    features[3] = f64::from(candidate.side == Side::After);

    // 4-7: type of the utterance-final punctuation inside the quote.
    match utterance.text.trim_end().chars().next_back() {
        Some(',') => features[4] = 1.0,
        Some('.') => features[5] = 1.0,
        Some('?') => features[6] = 1.0,
        Some('!') => features[7] = 1.0,
        _ => {}
    }

    // 8: expression verb adjacent to the candidate (nearest word on either
    // side, ignoring punctuation).
    let paragraph = &document.paragraphs[candidate.paragraph_index];
    let tokens = paragraph_tokens(document, paragraph);
    let before = tokens
        .iter()
        .rfind(|t| t.span.end <= candidate.mention.span.start && t.is_word());
    let after = tokens
        .iter()
        .find(|t| t.span.start >= candidate.mention.span.end && t.is_word());
    let verb_adjacent = [before, after]
        .into_iter()
        .flatten()
        .any(|t| lexicons.is_expression_verb(&t.lower));
    features[8] = f64::from(verb_adjacent);

    // 9-11: candidate kind.
    match candidate.mention.kind {
        MentionKind::Named => features[9] = 1.0,
        MentionKind::Nominal => features[10] = 1.0,
        MentionKind::Pronoun => features[11] = 1.0,
    }

    // 12-15: paragraph-position indicators.
    let home = &document.paragraphs[utterance.paragraph_index];
    features[12] = f64::from(utterance.position_in_paragraph == 0);
    features[13] = f64::from(utterance.position_in_paragraph + 1 == home.utterances.len());
    features[14] = f64::from(candidate.paragraph_index == utterance.paragraph_index);
    features[15] = candidate.paragraph_index as f64 - utterance.paragraph_index as f64;

    features
}

// ---------------------------------------------------------------------------
// Model and training
// ---------------------------------------------------------------------------

pub const MODEL_FORMAT_VERSION: u32 = 1;

/// Ensemble of the three from-scratch classifiers over candidate features.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AttributionModel {
    pub version: u32,
    pub tree: DecisionTree,
    pub rules: RuleListClassifier,
    pub logistic: LogisticRegression,
}

/// Per-candidate classifier outputs fed to the ranking step.
#[derive(Debug, Clone)]
pub struct ScoredCandidate {
    pub candidate: CandidateSpeaker,
    pub labels: [bool; 3],
    pub probabilities: [f64; 3],
}

impl AttributionModel {
    pub fn fit(features: &[Vec<f64>], labels: &[bool]) -> Result<Self, TrainError> {
        Ok(AttributionModel {
            version: MODEL_FORMAT_VERSION,
            tree: DecisionTree::fit(features, labels)?,
            rules: RuleListClassifier::fit(features, labels)?,
            logistic: LogisticRegression::fit(features, labels)?,
        })
    }

    pub fn score(&self, candidate: CandidateSpeaker, features: &[f64]) -> ScoredCandidate {
        let probabilities = [
            self.tree.probability(features),
            self.rules.probability(features),
            self.logistic.probability(features),
        ];
        ScoredCandidate {
            candidate,
            labels: [
                probabilities[0] >= 0.5,
                probabilities[1] >= 0.5,
                probabilities[2] >= 0.5,
            ],
            probabilities,
        }
    }

    pub fn save(&self, path: &std::path::Path) -> std::io::Result<()> {
        let json = serde_json::to_string_pretty(self).expect("model serializes");
        std::fs::write(path, json)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, String> {
        let raw = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let model: AttributionModel = serde_json::from_str(&raw).map_err(|e| e.to_string())?;
        if model.version != MODEL_FORMAT_VERSION {
            return Err(format!(
                "model format version {} is not supported (expected {})",
                model.version, MODEL_FORMAT_VERSION
            ));
        }
        Ok(model)
    }
}

#[derive(Debug, Clone)]
pub struct TrainingPair {
    pub utterance: UtteranceId,
    pub features: Vec<f64>,
    pub label: bool,
}

/// Labeled (utterance, candidate) pairs for every supervised-category
/// speaker-utterance with a gold attribution.
pub fn build_training_pairs(
    document: &Document,
    gold: &GoldAnnotations,
    lexicons: &Lexicons,
    config: &AttributionConfig,
) -> Vec<TrainingPair> {
    let mut pairs = Vec::new();
    for utterance in document.speaker_utterances() {
        let category = categorize(utterance, document, lexicons);
        if category.is_heuristic() {
            continue;
        }
        let Some(speaker) = gold.speaker_of(utterance.id) else {
            continue;
        };
        for candidate in gather_candidates(utterance, document, config.window, category) {
            let label = candidate.mention.resolved.as_ref() == Some(speaker);
            pairs.push(TrainingPair {
                utterance: utterance.id,
                features: extract_features(utterance, &candidate, document, lexicons),
                label,
            });
        }
    }
    pairs
}

#[derive(Debug, Clone, Serialize)]
pub struct FoldReport {
    pub fold: usize,
    pub test_pairs: usize,
    pub tree_accuracy: f64,
    pub rules_accuracy: f64,
    pub logistic_accuracy: f64,
}

#[derive(Debug)]
pub struct TrainedAttribution {
    /// Model trained on all pairs; used for attribution proper.
    pub model: AttributionModel,
    /// One model per fold, trained on the other nine folds.
    pub fold_models: Vec<AttributionModel>,
    pub fold_reports: Vec<FoldReport>,
    pub warnings: Vec<String>,
}

/// Stratified k-fold training. Each fold's model sees only the other folds;
/// fold accuracies are pair-level.
pub fn train(pairs: &[TrainingPair], folds: usize, seed: u64) -> Result<TrainedAttribution, TrainError> {
    let features: Vec<Vec<f64>> = pairs.iter().map(|p| p.features.clone()).collect();
    let labels: Vec<bool> = pairs.iter().map(|p| p.label).collect();

    let mut warnings = Vec::new();
    if labels.iter().all(|&l| l) {
        warnings.push("all training pairs are positive; classifiers will predict positive everywhere".into());
    }
    if labels.iter().all(|&l| !l) {
        warnings.push("no positive training pairs".into());
    }

    let fold_indices = stratified_folds(&labels, folds, seed)?;
    let mut fold_models = Vec::with_capacity(folds);
    let mut fold_reports = Vec::with_capacity(folds);

    for (fold, test_idx) in fold_indices.iter().enumerate() {
        let train_idx = crate::classify::complement(test_idx, pairs.len());
        let train_x = crate::classify::select(&features, &train_idx);
        let train_y = crate::classify::select(&labels, &train_idx);
        let model = AttributionModel::fit(&train_x, &train_y)?;

        let mut correct = [0usize; 3];
        for &i in test_idx {
            let truth = labels[i];
            let scores = [
                model.tree.label(&features[i]),
                model.rules.label(&features[i]),
                model.logistic.label(&features[i]),
            ];
            for (c, s) in correct.iter_mut().zip(scores) {
                *c += usize::from(s == truth);
            }
        }
        let denom = test_idx.len().max(1) as f64;
        fold_reports.push(FoldReport {
            fold,
            test_pairs: test_idx.len(),
            tree_accuracy: correct[0] as f64 / denom,
            rules_accuracy: correct[1] as f64 / denom,
            logistic_accuracy: correct[2] as f64 / denom,
        });
        fold_models.push(model);
    }

    Ok(TrainedAttribution {
        model: AttributionModel::fit(&features, &labels)?,
        fold_models,
        fold_reports,
        warnings,
    })
}

// ---------------------------------------------------------------------------
// Ranking
// ---------------------------------------------------------------------------

fn combine(probabilities: &[f64; 3], combiner: Combiner) -> f64 {
    match combiner {
        Combiner::Max => probabilities.iter().copied().fold(f64::MIN, f64::max),
        Combiner::Mean => probabilities.iter().sum::<f64>() / 3.0,
        Combiner::Median => {
            let mut sorted = *probabilities;
            sorted.sort_by(|a, b| a.total_cmp(b));
            sorted[1]
        }
        Combiner::Product => probabilities.iter().product(),
    }
}

fn classifier_index(kind: ClassifierKind) -> usize {
    match kind {
        ClassifierKind::Tree => 0,
        ClassifierKind::Rules => 1,
        ClassifierKind::Logistic => 2,
    }
}

/// Probability argmax with deterministic tie-breaking: the candidate closer
/// to the utterance wins, then the one on the `after` side.
fn argmax_candidate(scored: &[ScoredCandidate], value: impl Fn(&ScoredCandidate) -> f64) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, s) in scored.iter().enumerate() {
        let better = match best {
            None => true,
            Some(b) => {
                let (vb, vi) = (value(&scored[b]), value(s));
                vi > vb
                    || (vi == vb
                        && (s.candidate.distance, s.candidate.side == Side::Before)
                            < (scored[b].candidate.distance, scored[b].candidate.side == Side::Before))
            }
        };
        if better {
            best = Some(i);
        }
    }
    best
}

/// Rank scored candidates into an attribution, or abstain.
pub fn rank(scored: &[ScoredCandidate], config: &AttributionConfig) -> Option<CharacterId> {
    if scored.is_empty() {
        return None;
    }
    let k = classifier_index(config.classifier);

    let by_label = || -> Option<CharacterId> {
        let positives: Vec<&ScoredCandidate> = scored.iter().filter(|s| s.labels[k]).collect();
        match positives.as_slice() {
            [only] => only.candidate.mention.resolved.clone(),
            _ => None,
        }
    };
    let by_probability = |value: &dyn Fn(&ScoredCandidate) -> f64| -> Option<CharacterId> {
        let best = argmax_candidate(scored, value)?;
        if value(&scored[best]) < config.threshold {
            return None;
        }
        scored[best].candidate.mention.resolved.clone()
    };

    match config.ranking {
        Ranking::Label => by_label(),
        Ranking::Probability => by_probability(&|s| s.probabilities[k]),
        Ranking::Hybrid => by_label().or_else(|| by_probability(&|s| s.probabilities[k])),
        Ranking::Combined => by_probability(&|s| combine(&s.probabilities, config.combiner)),
    }
}

// ---------------------------------------------------------------------------
// Full-document attribution
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct AttributionOutcome {
    pub assignments: BTreeMap<UtteranceId, Option<CharacterId>>,
    pub categories: BTreeMap<UtteranceId, UtteranceCategory>,
    pub tallies: BTreeMap<UtteranceCategory, usize>,
    /// Fraction of gold-labeled speaker-utterances attributed to the gold
    /// speaker; an abstention on a labeled utterance counts as an error.
    pub accuracy: Option<f64>,
    pub correct: usize,
    pub evaluated: usize,
}

/// Attribute every speaker-utterance in discourse order.
pub fn attribute_all(
    document: &Document,
    gold: Option<&GoldAnnotations>,
    lexicons: &Lexicons,
    model: Option<&AttributionModel>,
    config: &AttributionConfig,
) -> AttributionOutcome {
    let mut assignments: BTreeMap<UtteranceId, Option<CharacterId>> = BTreeMap::new();
    let mut categories = BTreeMap::new();
    let mut tallies: BTreeMap<UtteranceCategory, usize> = BTreeMap::new();

    for paragraph in &document.paragraphs {
        for utterance in &paragraph.utterances {
            if !utterance.is_speaker_utterance {
                continue;
            }
            let category = categorize(utterance, document, lexicons);
            *tallies.entry(category).or_default() += 1;
            categories.insert(utterance.id, category);

            let speaker = if category.is_heuristic() {
                attribute_heuristic(
                    utterance,
                    category,
                    document,
                    lexicons,
                    gold,
                    &assignments,
                    config,
                )
            } else {
                match model {
                    Some(model) => {
                        let scored: Vec<ScoredCandidate> =
                            gather_candidates(utterance, document, config.window, category)
                                .into_iter()
                                .map(|c| {
                                    let features =
                                        extract_features(utterance, &c, document, lexicons);
                                    model.score(c, &features)
                                })
                                .collect();
                        rank(&scored, config)
                    }
                    None => None,
                }
            };
            assignments.insert(utterance.id, speaker);
        }
    }

    let (mut correct, mut evaluated) = (0usize, 0usize);
    if let Some(gold) = gold {
        for (id, speaker) in &assignments {
            if let Some(expected) = gold.speaker_of(*id) {
                evaluated += 1;
                if speaker.as_ref() == Some(expected) {
                    correct += 1;
                }
            }
        }
    }

    AttributionOutcome {
        assignments,
        categories,
        tallies,
        accuracy: (evaluated > 0).then(|| correct as f64 / evaluated as f64),
        correct,
        evaluated,
    }
}

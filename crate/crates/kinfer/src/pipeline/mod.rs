//! Orchestration: experiment arms (extracted / cleaned / oracle /
//! cleaned-oracle), relation-level evaluation, and graph export.

pub mod export;

use crate::attribution::{
    attribute_all, build_training_pairs, train, AttributionConfig, AttributionOutcome,
};
use crate::corpus::{CharacterId, CharacterRegistry, Document, GoldAnnotations, Lexicons};
use crate::extraction::{extract_seeds, Attributions, SeedRelation};
use crate::kinship::{
    infer_spousal_from_titles, propagate, KinshipGraph, PropagationDiagnostics, RelationType,
    RuleSet, SeedFact,
};
use crate::metrics::Prf;
use crate::vocative::{
    detect_pattern_all, detect_supervised, select_candidates, NominalOccurrence,
    VocativeLabel,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("training failed: {0}")]
    Train(#[from] crate::classify::TrainError),
    #[error("supervised vocative detection requires gold vocative labels")]
    MissingVocativeLabels,
    #[error("cleaning file {path}: {message}")]
    Cleaning { path: String, message: String },
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid json in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

// ---------------------------------------------------------------------------
// Relation evaluation
// ---------------------------------------------------------------------------

pub type Triple = (CharacterId, RelationType, CharacterId);

/// Canonical directed form of a triple: endpoints ordered by id, the
/// relation inverted (by the new holder's gender) when the order flips.
pub fn canonical_triple(triple: &Triple, registry: &CharacterRegistry) -> Triple {
    let (a1, relation, a2) = triple;
    if a1 <= a2 {
        triple.clone()
    } else {
        (
            a2.clone(),
            relation.inverse(registry.gender(a2)),
            a1.clone(),
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvaluationReport {
    pub label: String,
    #[serde(flatten)]
    pub prf: Prf,
}

/// Bidirectional relation evaluation. A predicted fact `(A, r, B)` is a
/// true positive iff gold contains `(A, r, B)` or `(B, inverse(r), A)`;
/// a fact and its inverse count once; the recall denominator counts each
/// bidirectional gold relation once. Ungendered gold types match either
/// gendered prediction.
pub fn evaluate_relations(
    predicted: &[Triple],
    gold: &[Triple],
    registry: &CharacterRegistry,
    label: &str,
) -> EvaluationReport {
    let mut predicted_canonical: Vec<Triple> = Vec::new();
    for t in predicted {
        let c = canonical_triple(t, registry);
        if !predicted_canonical.contains(&c) {
            predicted_canonical.push(c);
        }
    }
    let mut gold_canonical: Vec<Triple> = Vec::new();
    for t in gold {
        let c = canonical_triple(t, registry);
        if !gold_canonical.contains(&c) {
            gold_canonical.push(c);
        }
    }

    let mut matched = vec![false; gold_canonical.len()];
    let mut tp = 0usize;
    for (a1, relation, a2) in &predicted_canonical {
        let hit = gold_canonical.iter().enumerate().find(|(i, (g1, gr, g2))| {
            !matched[*i] && g1 == a1 && g2 == a2 && gr.matches_gold(*relation)
        });
        if let Some((i, _)) = hit {
            matched[i] = true;
            tp += 1;
        }
    }

    EvaluationReport {
        label: label.to_string(),
        prf: Prf::from_counts(
            tp,
            predicted_canonical.len() - tp,
            gold_canonical.len() - tp,
        ),
    }
}

pub fn graph_triples(graph: &KinshipGraph) -> Vec<Triple> {
    graph
        .undirected_facts()
        .map(|f| (f.a1.clone(), f.relation, f.a2.clone()))
        .collect()
}

pub fn seed_triples(seeds: &[SeedRelation]) -> Vec<Triple> {
    seeds
        .iter()
        .map(|s| (s.a1.clone(), s.relation, s.a2.clone()))
        .collect()
}

pub fn gold_triples(gold: &GoldAnnotations) -> Vec<Triple> {
    gold.relations
        .iter()
        .map(|r| (r.from.clone(), r.relation, r.to.clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// Cleaning
// ---------------------------------------------------------------------------

/// Manual cleaning: remove incorrect seeds, never correct them. Entries are
/// either indices into the extracted seed list or (a1, relation, a2)
/// triples.
#[derive(Debug, Clone, Default)]
pub struct CleaningList {
    pub indices: Vec<usize>,
    pub triples: Vec<(String, String, String)>,
}

impl CleaningList {
    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let raw = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let value: serde_json::Value =
            serde_json::from_str(&raw).map_err(|source| PipelineError::Json {
                path: path.display().to_string(),
                source,
            })?;
        let items = value.as_array().ok_or_else(|| PipelineError::Cleaning {
            path: path.display().to_string(),
            message: "expected a json array".into(),
        })?;
        let mut list = CleaningList::default();
        for item in items {
            if let Some(index) = item.as_u64() {
                list.indices.push(index as usize);
            } else if let Some(object) = item.as_object() {
                let field = |key: &str| -> Result<String, PipelineError> {
                    object
                        .get(key)
                        .and_then(|v| v.as_str())
                        .map(str::to_string)
                        .ok_or_else(|| PipelineError::Cleaning {
                            path: path.display().to_string(),
                            message: format!("entry missing string field {key:?}"),
                        })
                };
                list.triples
                    .push((field("a1")?, field("relation")?, field("a2")?));
            } else {
                return Err(PipelineError::Cleaning {
                    path: path.display().to_string(),
                    message: format!("entry {item} is neither an index nor a triple"),
                });
            }
        }
        Ok(list)
    }

    fn drops(&self, index: usize, seed: &SeedRelation) -> bool {
        self.indices.contains(&index)
            || self.triples.iter().any(|(a1, relation, a2)| {
                seed.a1.0 == *a1 && seed.relation.name() == relation && seed.a2.0 == *a2
            })
    }
}

/// How cleaned arms decide which seeds to drop.
#[derive(Debug, Clone, Default)]
pub enum Cleaning {
    /// No cleaning.
    #[default]
    None,
    /// Explicit list from a cleaning file.
    List(CleaningList),
    /// Drop every seed that does not match a gold relation. This reproduces
    /// manual cleaning on an annotated corpus: incorrect seeds are removed,
    /// never corrected.
    GoldDerived,
}

fn seed_is_correct(seed: &SeedRelation, gold: &[Triple], registry: &CharacterRegistry) -> bool {
    let canonical = canonical_triple(
        &(seed.a1.clone(), seed.relation, seed.a2.clone()),
        registry,
    );
    gold.iter().any(|g| {
        let g = canonical_triple(g, registry);
        g.0 == canonical.0 && g.2 == canonical.2 && g.1.matches_gold(canonical.1)
    })
}

pub fn apply_cleaning(
    seeds: &[SeedRelation],
    cleaning: &Cleaning,
    gold: &[Triple],
    registry: &CharacterRegistry,
) -> Vec<SeedRelation> {
    match cleaning {
        Cleaning::None => seeds.to_vec(),
        Cleaning::List(list) => seeds
            .iter()
            .enumerate()
            .filter(|(i, s)| !list.drops(*i, s))
            .map(|(_, s)| s.clone())
            .collect(),
        Cleaning::GoldDerived => seeds
            .iter()
            .filter(|s| seed_is_correct(s, gold, registry))
            .cloned()
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Arms
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentArm {
    Extracted,
    Cleaned,
    Oracle,
    CleanedOracle,
}

impl ExperimentArm {
    pub fn is_oracle(self) -> bool {
        matches!(self, ExperimentArm::Oracle | ExperimentArm::CleanedOracle)
    }

    pub fn is_cleaned(self) -> bool {
        matches!(self, ExperimentArm::Cleaned | ExperimentArm::CleanedOracle)
    }

    pub fn label(self) -> &'static str {
        match self {
            ExperimentArm::Extracted => "extracted",
            ExperimentArm::Cleaned => "cleaned",
            ExperimentArm::Oracle => "oracle",
            ExperimentArm::CleanedOracle => "cleaned_oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Detector {
    Pattern,
    Supervised,
}

#[derive(Debug, Clone)]
pub struct ArmConfig {
    pub arm: ExperimentArm,
    pub attribution: AttributionConfig,
    pub detector: Detector,
    pub folds: usize,
    pub seed: u64,
    pub cleaning: Cleaning,
    /// Run Mr./Mrs. title inference before propagation.
    pub title_inference: bool,
}

impl ArmConfig {
    pub fn new(arm: ExperimentArm) -> Self {
        ArmConfig {
            arm,
            attribution: AttributionConfig::default(),
            detector: Detector::Pattern,
            folds: 10,
            seed: 17,
            cleaning: if arm.is_cleaned() {
                Cleaning::GoldDerived
            } else {
                Cleaning::None
            },
            title_inference: true,
        }
    }
}

#[derive(Debug)]
pub struct ArmOutcome {
    pub arm: ExperimentArm,
    pub attribution: Option<AttributionOutcome>,
    pub candidate_occurrences: usize,
    pub detections: Vec<NominalOccurrence>,
    pub vocative_report: Option<Prf>,
    pub seeds: Vec<SeedRelation>,
    pub cleaned_seeds: Vec<SeedRelation>,
    pub seed_report: EvaluationReport,
    pub propagated_report: EvaluationReport,
    pub graph: KinshipGraph,
    pub propagation: PropagationDiagnostics,
    pub warnings: Vec<String>,
}

/// Run one experiment arm end to end: attribution (gold for oracle arms),
/// vocative detection, seed extraction, optional cleaning, title inference,
/// propagation, and evaluation before and after propagation.
pub fn run_arm(
    document: &Document,
    gold: &GoldAnnotations,
    lexicons: &Lexicons,
    rules: &RuleSet,
    vocative_labels: Option<&[VocativeLabel]>,
    config: &ArmConfig,
) -> Result<ArmOutcome, PipelineError> {
    let mut warnings = Vec::new();
    let registry = &gold.registry;

    // 1. Speaker attribution. Oracle arms substitute ground truth here.
    let (attributions, attribution_outcome): (Attributions, Option<AttributionOutcome>) =
        if config.arm.is_oracle() {
            (gold.attributions.clone(), None)
        } else {
            let pairs = build_training_pairs(document, gold, lexicons, &config.attribution);
            let model = match train(&pairs, config.folds, config.seed) {
                Ok(trained) => {
                    warnings.extend(trained.warnings.iter().cloned());
                    Some(trained.model)
                }
                Err(err) => {
                    warnings.push(format!(
                        "classifier training unavailable ({err}); supervised categories will abstain"
                    ));
                    None
                }
            };
            let outcome = attribute_all(
                document,
                Some(gold),
                lexicons,
                model.as_ref(),
                &config.attribution,
            );
            let map: Attributions = outcome
                .assignments
                .iter()
                .filter_map(|(id, speaker)| speaker.clone().map(|s| (*id, s)))
                .collect();
            (map, Some(outcome))
        };

    // 2. Vocative detection.
    let candidates = select_candidates(document, lexicons);
    let (detections, vocative_report) = match config.detector {
        Detector::Pattern => (detect_pattern_all(document, &candidates), None),
        Detector::Supervised => {
            let labels = vocative_labels.ok_or(PipelineError::MissingVocativeLabels)?;
            let outcome =
                detect_supervised(document, &candidates, labels, config.folds, config.seed)?;
            (outcome.positive_occurrences, outcome.report)
        }
    };

    // 3. Seed extraction.
    let extraction = extract_seeds(document, &attributions, &detections, lexicons, registry);
    warnings.extend(extraction.diagnostics.iter().cloned());
    let seeds = extraction.seeds;

    // 4. Cleaning (cleaned arms only).
    let gold_rel = gold_triples(gold);
    let cleaned_seeds = if config.arm.is_cleaned() {
        apply_cleaning(&seeds, &config.cleaning, &gold_rel, registry)
    } else {
        seeds.clone()
    };

    // 5. Title inference + propagation.
    let mut facts: Vec<SeedFact> = cleaned_seeds
        .iter()
        .map(|s| SeedFact {
            a1: s.a1.clone(),
            relation: s.relation,
            a2: s.a2.clone(),
            count: s.count,
        })
        .collect();
    if config.title_inference {
        facts.extend(infer_spousal_from_titles(registry));
    }
    let (graph, propagation) = propagate(&facts, rules, registry);

    // 6. Evaluation before and after propagation.
    let seed_report = evaluate_relations(
        &seed_triples(&cleaned_seeds),
        &gold_rel,
        registry,
        &format!("{} seeds", config.arm.label()),
    );
    let propagated_report = evaluate_relations(
        &graph_triples(&graph),
        &gold_rel,
        registry,
        &format!("{} propagated", config.arm.label()),
    );

    Ok(ArmOutcome {
        arm: config.arm,
        attribution: attribution_outcome,
        candidate_occurrences: candidates.len(),
        detections,
        vocative_report,
        seeds,
        cleaned_seeds,
        seed_report,
        propagated_report,
        graph,
        propagation,
        warnings,
    })
}

// ---------------------------------------------------------------------------
// Interchange files
// ---------------------------------------------------------------------------

pub fn load_vocative_labels(path: &Path) -> Result<Vec<VocativeLabel>, PipelineError> {
    let raw = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&raw).map_err(|source| PipelineError::Json {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_seeds(path: &Path) -> Result<Vec<SeedRelation>, PipelineError> {
    let raw = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&raw).map_err(|source| PipelineError::Json {
        path: path.display().to_string(),
        source,
    })
}

/// Utterance -> attributed speaker map, serialized as a JSON object with
/// null for abstentions.
pub fn attributions_to_json(outcome: &AttributionOutcome) -> serde_json::Value {
    let map: BTreeMap<String, Option<String>> = outcome
        .assignments
        .iter()
        .map(|(id, speaker)| (id.to_string(), speaker.as_ref().map(|s| s.0.clone())))
        .collect();
    serde_json::json!(map)
}

pub fn load_attributions(path: &Path) -> Result<Attributions, PipelineError> {
    let raw = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let map: BTreeMap<String, Option<String>> =
        serde_json::from_str(&raw).map_err(|source| PipelineError::Json {
            path: path.display().to_string(),
            source,
        })?;
    Ok(map
        .into_iter()
        .filter_map(|(id, speaker)| {
            let id = id.parse().ok()?;
            speaker.map(|s| (id, CharacterId::new(s)))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Character, Gender};
    use proptest::prelude::*;

    fn registry() -> CharacterRegistry {
        let mk = |id: &str, gender: Gender| Character {
            id: CharacterId::new(id),
            canonical_name: id.to_uppercase(),
            gender,
            aliases: std::iter::once(id.to_uppercase()).collect(),
        };
        CharacterRegistry::new(vec![
            mk("a", Gender::Female),
            mk("b", Gender::Female),
            mk("c", Gender::Male),
            mk("d", Gender::Female),
        ])
        .unwrap()
    }

    fn t(a1: &str, r: RelationType, a2: &str) -> Triple {
        (CharacterId::new(a1), r, CharacterId::new(a2))
    }

    #[test]
    fn identical_sets_give_perfect_scores() {
        let reg = registry();
        let gold = vec![t("a", RelationType::MotherOf, "b"), t("b", RelationType::SisterOf, "d")];
        let report = evaluate_relations(&gold, &gold, &reg, "test");
        assert_eq!(report.prf.precision, 1.0);
        assert_eq!(report.prf.recall, 1.0);
        assert_eq!(report.prf.f1, 1.0);
    }

    #[test]
    fn inverse_fact_matches_gold() {
        let reg = registry();
        let gold = vec![t("a", RelationType::MotherOf, "b")];
        let predicted = vec![t("b", RelationType::DaughterOf, "a")];
        let report = evaluate_relations(&predicted, &gold, &reg, "test");
        assert_eq!(report.prf.true_positives, 1);
        assert_eq!(report.prf.false_positives, 0);
    }

    #[test]
    fn fact_and_its_inverse_count_once() {
        let reg = registry();
        let gold = vec![t("a", RelationType::MotherOf, "b")];
        let predicted = vec![
            t("a", RelationType::MotherOf, "b"),
            t("b", RelationType::DaughterOf, "a"),
        ];
        let report = evaluate_relations(&predicted, &gold, &reg, "test");
        assert_eq!(report.prf.true_positives, 1);
        assert_eq!(report.prf.false_positives, 0);
        assert_eq!(report.prf.precision, 1.0);
    }

    #[test]
    fn bidirectional_gold_counts_once_in_recall() {
        let reg = registry();
        let gold = vec![
            t("a", RelationType::MotherOf, "b"),
            t("b", RelationType::DaughterOf, "a"),
        ];
        let predicted = vec![t("a", RelationType::MotherOf, "b")];
        let report = evaluate_relations(&predicted, &gold, &reg, "test");
        assert_eq!(report.prf.recall, 1.0);
    }

    #[test]
    fn ungendered_gold_matches_gendered_prediction() {
        let reg = registry();
        let gold = vec![t("b", RelationType::SiblingOf, "d")];
        let predicted = vec![t("b", RelationType::SisterOf, "d")];
        let report = evaluate_relations(&predicted, &gold, &reg, "test");
        assert_eq!(report.prf.true_positives, 1);
    }

    #[test]
    fn derived_counts_three_predicted_two_correct_four_gold() {
        let reg = registry();
        let gold = vec![
            t("a", RelationType::MotherOf, "b"),
            t("a", RelationType::MotherOf, "d"),
            t("b", RelationType::SisterOf, "d"),
            t("c", RelationType::UncleOf, "b"),
        ];
        let predicted = vec![
            t("a", RelationType::MotherOf, "b"),
            t("b", RelationType::SisterOf, "d"),
            t("c", RelationType::FatherOf, "d"),
        ];
        let report = evaluate_relations(&predicted, &gold, &reg, "test");
        assert!((report.prf.precision - 2.0 / 3.0).abs() < 1e-12);
        assert!((report.prf.recall - 0.5).abs() < 1e-12);
        assert!((report.prf.f1 - 4.0 / 7.0).abs() < 1e-12);
    }

    proptest! {
        /// Replacing every predicted fact with its inverse leaves the
        /// evaluation unchanged.
        #[test]
        fn evaluation_symmetric_under_inversion(flags in proptest::collection::vec(any::<bool>(), 4)) {
            let reg = registry();
            let gold = vec![
                t("a", RelationType::MotherOf, "b"),
                t("b", RelationType::SisterOf, "d"),
                t("c", RelationType::UncleOf, "d"),
            ];
            let all_predictions = [
                t("a", RelationType::MotherOf, "b"),
                t("d", RelationType::SisterOf, "b"),
                t("c", RelationType::UncleOf, "a"),
                t("a", RelationType::AuntOf, "c"),
            ];
            let predicted: Vec<Triple> = all_predictions
                .iter()
                .zip(&flags)
                .filter(|(_, &keep)| keep)
                .map(|(p, _)| p.clone())
                .collect();
            let inverted: Vec<Triple> = predicted
                .iter()
                .map(|(a1, r, a2)| (a2.clone(), r.inverse(reg.gender(a2)), a1.clone()))
                .collect();
            let direct = evaluate_relations(&predicted, &gold, &reg, "x");
            let mirrored = evaluate_relations(&inverted, &gold, &reg, "x");
            prop_assert_eq!(direct.prf, mirrored.prf);
        }
    }

    #[test]
    fn gold_derived_cleaning_keeps_only_correct_seeds() {
        let reg = registry();
        let gold = vec![t("a", RelationType::MotherOf, "b")];
        let seeds = vec![
            SeedRelation {
                a1: CharacterId::new("a"),
                relation: RelationType::MotherOf,
                a2: CharacterId::new("b"),
                count: 2,
                evidence: vec![],
            },
            SeedRelation {
                a1: CharacterId::new("c"),
                relation: RelationType::BrotherOf,
                a2: CharacterId::new("d"),
                count: 1,
                evidence: vec![],
            },
        ];
        let cleaned = apply_cleaning(&seeds, &Cleaning::GoldDerived, &gold, &reg);
        assert_eq!(cleaned.len(), 1);
        assert_eq!(cleaned[0].a1, CharacterId::new("a"));
        // Cleaning never decreases precision and never increases recall.
        let before = evaluate_relations(&seed_triples(&seeds), &gold, &reg, "before");
        let after = evaluate_relations(&seed_triples(&cleaned), &gold, &reg, "after");
        assert!(after.prf.precision >= before.prf.precision);
        assert!(after.prf.recall <= before.prf.recall);
        assert_eq!(after.prf.precision, 1.0);
    }

    #[test]
    fn cleaning_list_by_triple_and_index() {
        let seeds = vec![
            SeedRelation {
                a1: CharacterId::new("a"),
                relation: RelationType::MotherOf,
                a2: CharacterId::new("b"),
                count: 1,
                evidence: vec![],
            },
            SeedRelation {
                a1: CharacterId::new("c"),
                relation: RelationType::BrotherOf,
                a2: CharacterId::new("d"),
                count: 1,
                evidence: vec![],
            },
            SeedRelation {
                a1: CharacterId::new("d"),
                relation: RelationType::SisterOf,
                a2: CharacterId::new("a"),
                count: 1,
                evidence: vec![],
            },
        ];
        let list = CleaningList {
            indices: vec![2],
            triples: vec![("c".into(), "brother_of".into(), "d".into())],
        };
        let cleaned = apply_cleaning(&seeds, &Cleaning::List(list), &[], &registry());
        assert_eq!(cleaned.len(), 1);
        assert_eq!(cleaned[0].a1, CharacterId::new("a"));
    }
}

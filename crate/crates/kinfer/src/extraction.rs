//! Seed relation extraction: each detected vocative utterance yields an
//! (A1, R, A2) triple where R is the vocative nominal's canonical relation,
//! A2 is the speaker, and the recipient A1 is chosen from the adjacent
//! speakers under three constraints.

use crate::corpus::{
    CharacterId, CharacterRegistry, Document, GenderConstraint, Lexicons, UtteranceId,
};
use crate::kinship::RelationType;
use crate::vocative::NominalOccurrence;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecipientSource {
    PrecedingUtterance,
    FollowingUtterance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecipientCandidate {
    pub character: CharacterId,
    pub source: RecipientSource,
    /// Signed paragraph distance from the vocative utterance.
    pub paragraph_distance: i64,
}

/// A seed kinship triple with its support count and evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRelation {
    pub a1: CharacterId,
    pub relation: RelationType,
    pub a2: CharacterId,
    pub count: u32,
    pub evidence: Vec<UtteranceId>,
}

#[derive(Debug, Clone, Default)]
pub struct ExtractionOutcome {
    pub seeds: Vec<SeedRelation>,
    pub diagnostics: Vec<String>,
    /// Vocative occurrences that produced no seed (rejected or abandoned).
    pub abandoned: usize,
}

/// Attribution map consumed by extraction: utterance -> speaker (when
/// attributed). Oracle runs substitute the gold attributions here.
pub type Attributions = BTreeMap<UtteranceId, CharacterId>;

/// Up to two potential recipients: the nearest attributed speaker-utterance
/// before and after the vocative utterance in discourse order. A side with
/// no attributed utterance yields no candidate.
pub fn candidate_recipients(
    vocative: UtteranceId,
    attributions: &Attributions,
    document: &Document,
) -> Vec<RecipientCandidate> {
    let ids = document.utterance_ids();
    let Some(position) = ids.iter().position(|id| *id == vocative) else {
        return Vec::new();
    };
    let paragraph = vocative.paragraph as i64;
    let mut candidates = Vec::new();

    let preceding = ids[..position]
        .iter()
        .rev()
        .find_map(|id| attributions.get(id).map(|c| (*id, c.clone())));
    if let Some((id, character)) = preceding {
        candidates.push(RecipientCandidate {
            character,
            source: RecipientSource::PrecedingUtterance,
            paragraph_distance: id.paragraph as i64 - paragraph,
        });
    }
    let following = ids[position + 1..]
        .iter()
        .find_map(|id| attributions.get(id).map(|c| (*id, c.clone())));
    if let Some((id, character)) = following {
        candidates.push(RecipientCandidate {
            character,
            source: RecipientSource::FollowingUtterance,
            paragraph_distance: id.paragraph as i64 - paragraph,
        });
    }
    candidates
}

/// The three constraints, applied in order:
///
/// 1. the candidate's gender must match the vocative's gender constraint;
/// 2. the candidate's utterance must be in the paragraph immediately
///    preceding or following the vocative utterance;
/// 3. if both candidates survive, the speaker of the following utterance is
///    chosen.
///
/// All candidates rejected: the relation is abandoned.
pub fn apply_constraints(
    candidates: &[RecipientCandidate],
    gender: GenderConstraint,
    registry: &CharacterRegistry,
) -> Option<CharacterId> {
    let surviving: Vec<&RecipientCandidate> = candidates
        .iter()
        .filter(|c| gender.admits(registry.gender(&c.character)))
        .filter(|c| c.paragraph_distance.abs() == 1)
        .collect();
    surviving
        .iter()
        .find(|c| c.source == RecipientSource::FollowingUtterance)
        .or_else(|| surviving.first())
        .map(|c| c.character.clone())
}

/// Extract and aggregate seed relations from positively detected vocative
/// occurrences. Identical triples merge with their counts summed; the
/// recipient is the relation holder.
pub fn extract_seeds(
    document: &Document,
    attributions: &Attributions,
    detections: &[NominalOccurrence],
    lexicons: &Lexicons,
    registry: &CharacterRegistry,
) -> ExtractionOutcome {
    let mut outcome = ExtractionOutcome::default();
    let mut merged: BTreeMap<(CharacterId, RelationType, CharacterId), (u32, Vec<UtteranceId>)> =
        BTreeMap::new();

    for occurrence in detections {
        let Some(speaker) = attributions.get(&occurrence.utterance).cloned() else {
            outcome.abandoned += 1;
            continue;
        };
        let Some(entry) = lexicons.nominal(&occurrence.lemma) else {
            outcome.diagnostics.push(format!(
                "utterance {}: {:?} is not a target nominal; dropped",
                occurrence.utterance, occurrence.lemma
            ));
            outcome.abandoned += 1;
            continue;
        };
        let Some(relation) = entry.relation else {
            outcome.diagnostics.push(format!(
                "utterance {}: nominal {:?} has no canonical relation mapping; dropped",
                occurrence.utterance, occurrence.lemma
            ));
            outcome.abandoned += 1;
            continue;
        };

        let candidates = candidate_recipients(occurrence.utterance, attributions, document);
        let Some(recipient) = apply_constraints(&candidates, entry.gender, registry) else {
            outcome.abandoned += 1;
            continue;
        };
        // Gender-neutral nominals (child, cousin) specialize by the
        // recipient's gender when it is known.
        let relation = relation.specialize(registry.gender(&recipient));
        if recipient == speaker {
            outcome.diagnostics.push(format!(
                "utterance {}: self-relation ({}, {}, {}) rejected",
                occurrence.utterance, recipient, relation, speaker
            ));
            outcome.abandoned += 1;
            continue;
        }

        let slot = merged
            .entry((recipient, relation, speaker))
            .or_insert_with(|| (0, Vec::new()));
        slot.0 += 1;
        slot.1.push(occurrence.utterance);
    }

    outcome.seeds = merged
        .into_iter()
        .map(|((a1, relation, a2), (count, evidence))| SeedRelation {
            a1,
            relation,
            a2,
            count,
            evidence,
        })
        .collect();
    outcome
}

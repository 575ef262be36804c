//! Corpus ingestion: narrative text, character registry, gold annotations
//! and lexicon files. Everything downstream consumes the types defined here.

mod lexicon;
mod parse;

pub use lexicon::{GenderConstraint, Lexicons, NominalEntry};
pub use parse::{parse_narrative, tokenize, ParseConfig, QuoteStyle, Token, TokenKind};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
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
    #[error("character {0:?} declares no aliases")]
    EmptyAliasSet(CharacterId),
    #[error("alias {alias:?} is claimed by both {first:?} and {second:?}")]
    DuplicateAlias {
        alias: String,
        first: CharacterId,
        second: CharacterId,
    },
    #[error("duplicate character id {0:?}")]
    DuplicateCharacter(CharacterId),
    #[error("attribution for utterance {utterance} references unknown character {id:?}")]
    DanglingAttribution { utterance: UtteranceId, id: CharacterId },
    #[error("relation entry references unknown character {0:?}")]
    DanglingRelationCharacter(CharacterId),
    #[error("unknown relation type {0:?} in annotations")]
    UnknownRelation(String),
    #[error("lexicon error: {0}")]
    Lexicon(String),
}

/// Opaque character identifier, shared by all interchange files.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharacterId(pub String);

impl CharacterId {
    pub fn new(id: impl Into<String>) -> Self {
        CharacterId(id.into())
    }
}

impl fmt::Display for CharacterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Female,
    Male,
    Unknown,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Character {
    pub id: CharacterId,
    pub canonical_name: String,
    pub gender: Gender,
    pub aliases: BTreeSet<String>,
}

/// Ground-truth character registry with an alias index.
///
/// Aliases must be non-empty per character and pairwise distinct across
/// characters; both are enforced at construction.
#[derive(Debug, Clone, Default)]
pub struct CharacterRegistry {
    characters: BTreeMap<CharacterId, Character>,
    alias_index: BTreeMap<String, CharacterId>,
}

impl CharacterRegistry {
    pub fn new(characters: Vec<Character>) -> Result<Self, CorpusError> {
        let mut registry = CharacterRegistry::default();
        for ch in characters {
            if ch.aliases.is_empty() {
                return Err(CorpusError::EmptyAliasSet(ch.id));
            }
            if registry.characters.contains_key(&ch.id) {
                return Err(CorpusError::DuplicateCharacter(ch.id));
            }
            for alias in &ch.aliases {
                if let Some(existing) = registry.alias_index.get(alias) {
                    return Err(CorpusError::DuplicateAlias {
                        alias: alias.clone(),
                        first: existing.clone(),
                        second: ch.id,
                    });
                }
                registry.alias_index.insert(alias.clone(), ch.id.clone());
            }
            registry.characters.insert(ch.id.clone(), ch);
        }
        Ok(registry)
    }

    pub fn get(&self, id: &CharacterId) -> Option<&Character> {
        self.characters.get(id)
    }

    pub fn gender(&self, id: &CharacterId) -> Gender {
        self.get(id).map_or(Gender::Unknown, |c| c.gender)
    }

    pub fn contains(&self, id: &CharacterId) -> bool {
        self.characters.contains_key(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Character> {
        self.characters.values()
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn aliases(&self) -> impl Iterator<Item = (&String, &CharacterId)> {
        self.alias_index.iter()
    }
}

/// Case-sensitive exact lookup of a surface form in the alias registry.
pub fn resolve_alias(surface: &str, registry: &CharacterRegistry) -> Option<CharacterId> {
    registry.alias_index.get(surface).cloned()
}

/// Utterance identifier: `<paragraph_index>:<position_in_paragraph>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UtteranceId {
    pub paragraph: usize,
    pub position: usize,
}

impl UtteranceId {
    pub fn new(paragraph: usize, position: usize) -> Self {
        UtteranceId { paragraph, position }
    }
}

impl fmt::Display for UtteranceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.paragraph, self.position)
    }
}

impl FromStr for UtteranceId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, i) = s
            .split_once(':')
            .ok_or_else(|| format!("utterance id {s:?} is not <paragraph>:<position>"))?;
        Ok(UtteranceId {
            paragraph: p.parse().map_err(|e| format!("bad paragraph in {s:?}: {e}"))?,
            position: i.parse().map_err(|e| format!("bad position in {s:?}: {e}"))?,
        })
    }
}

impl Serialize for UtteranceId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for UtteranceId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A span of narrative enclosed in quotation marks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Utterance {
    pub id: UtteranceId,
    /// Byte offsets into the source text, including the quotation marks.
    pub span: Range<usize>,
    /// Inner quoted text, without the enclosing marks.
    pub text: String,
    pub paragraph_index: usize,
    pub position_in_paragraph: usize,
    /// False marks quoted phrases and aphorisms left unattributed.
    pub is_speaker_utterance: bool,
    /// Speech runs on into the next paragraph (re-opened quote convention).
    pub continues: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MentionKind {
    Named,
    Nominal,
    Pronoun,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterMention {
    pub kind: MentionKind,
    pub span: Range<usize>,
    pub surface: String,
    pub resolved: Option<CharacterId>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Paragraph {
    pub index: usize,
    /// Byte offsets of this paragraph's tile in the source text. Tiles cover
    /// the text exactly: each includes its trailing blank-line separator, so
    /// concatenating the slices in order reproduces the input.
    pub span: Range<usize>,
    pub utterances: Vec<Utterance>,
    pub mentions: Vec<CharacterMention>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub source_name: String,
    pub text: String,
    pub paragraphs: Vec<Paragraph>,
    /// Parser diagnostics (unbalanced quotes and similar recoveries).
    pub diagnostics: Vec<String>,
}

impl Document {
    pub fn utterances(&self) -> impl Iterator<Item = &Utterance> {
        self.paragraphs.iter().flat_map(|p| p.utterances.iter())
    }

    pub fn speaker_utterances(&self) -> impl Iterator<Item = &Utterance> {
        self.utterances().filter(|u| u.is_speaker_utterance)
    }

    pub fn mentions(&self) -> impl Iterator<Item = &CharacterMention> {
        self.paragraphs.iter().flat_map(|p| p.mentions.iter())
    }

    pub fn utterance(&self, id: UtteranceId) -> Option<&Utterance> {
        self.paragraphs
            .get(id.paragraph)
            .and_then(|p| p.utterances.get(id.position))
    }

    /// Utterances in discourse order, flattened.
    pub fn utterance_ids(&self) -> Vec<UtteranceId> {
        self.utterances().map(|u| u.id).collect()
    }
}

/// One `(from, type, to)` gold relation; interpreted bidirectionally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldRelation {
    pub from: CharacterId,
    #[serde(rename = "type")]
    pub relation: crate::kinship::RelationType,
    pub to: CharacterId,
}

#[derive(Debug, Clone, Default)]
pub struct GoldAnnotations {
    pub attributions: BTreeMap<UtteranceId, CharacterId>,
    pub relations: Vec<GoldRelation>,
    pub registry: CharacterRegistry,
}

impl GoldAnnotations {
    pub fn speaker_of(&self, id: UtteranceId) -> Option<&CharacterId> {
        self.attributions.get(&id)
    }
}

// ---------------------------------------------------------------------------
// Annotation file schema
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
struct AnnotationsFile {
    characters: Vec<CharacterEntry>,
    #[serde(default)]
    attributions: Vec<AttributionEntry>,
    #[serde(default)]
    relations: Vec<RelationEntry>,
}

#[derive(Debug, Deserialize)]
struct CharacterEntry {
    id: String,
    name: String,
    gender: Gender,
    aliases: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct AttributionEntry {
    utterance_id: UtteranceId,
    character_id: String,
}

#[derive(Debug, Deserialize)]
struct RelationEntry {
    from: String,
    #[serde(rename = "type")]
    relation: String,
    to: String,
}

fn read_to_string(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parse the annotations JSON document (characters, attributions, relations).
pub fn load_annotations(path: &Path) -> Result<GoldAnnotations, CorpusError> {
    let raw = read_to_string(path)?;
    let file: AnnotationsFile = serde_json::from_str(&raw).map_err(|source| CorpusError::Json {
        path: path.display().to_string(),
        source,
    })?;

    let characters = file
        .characters
        .into_iter()
        .map(|c| Character {
            id: CharacterId(c.id),
            canonical_name: c.name,
            gender: c.gender,
            aliases: c.aliases.into_iter().collect(),
        })
        .collect();
    let registry = CharacterRegistry::new(characters)?;

    let mut attributions = BTreeMap::new();
    for entry in file.attributions {
        let id = CharacterId(entry.character_id);
        if !registry.contains(&id) {
            return Err(CorpusError::DanglingAttribution {
                utterance: entry.utterance_id,
                id,
            });
        }
        attributions.insert(entry.utterance_id, id);
    }

    let mut relations = Vec::new();
    for entry in file.relations {
        let from = CharacterId(entry.from);
        let to = CharacterId(entry.to);
        for id in [&from, &to] {
            if !registry.contains(id) {
                return Err(CorpusError::DanglingRelationCharacter(id.clone()));
            }
        }
        let relation: crate::kinship::RelationType = entry
            .relation
            .parse()
            .map_err(|_| CorpusError::UnknownRelation(entry.relation.clone()))?;
        relations.push(GoldRelation { from, relation, to });
    }

    Ok(GoldAnnotations {
        attributions,
        relations,
        registry,
    })
}

/// Summary counts reported by `load_corpus`.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub paragraphs: usize,
    pub utterances: usize,
    pub speaker_utterances: usize,
    pub mentions: usize,
    pub characters: usize,
    pub diagnostics: usize,
}

/// Load narrative + annotations + lexicons and cross-validate everything.
pub fn load_corpus(
    narrative_path: &Path,
    annotations_path: &Path,
    lexicon_dir: &Path,
    config: &ParseConfig,
) -> Result<(Document, GoldAnnotations, Lexicons, CorpusReport), CorpusError> {
    let gold = load_annotations(annotations_path)?;
    let lexicons = Lexicons::load_dir(lexicon_dir)?;
    let text = read_to_string(narrative_path)?;
    let source_name = narrative_path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| narrative_path.display().to_string());

    let mut document = parse_narrative(&text, &gold.registry, &lexicons, config);
    document.source_name = source_name;

    // Gold attribution overrides the non-speaker heuristic.
    for paragraph in &mut document.paragraphs {
        for utterance in &mut paragraph.utterances {
            if gold.attributions.contains_key(&utterance.id) {
                utterance.is_speaker_utterance = true;
            }
        }
    }

    let report = CorpusReport {
        paragraphs: document.paragraphs.len(),
        utterances: document.utterances().count(),
        speaker_utterances: document.speaker_utterances().count(),
        mentions: document.mentions().count(),
        characters: gold.registry.len(),
        diagnostics: document.diagnostics.len(),
    };
    Ok((document, gold, lexicons, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn character(id: &str, gender: Gender, aliases: &[&str]) -> Character {
        Character {
            id: CharacterId::new(id),
            canonical_name: id.to_string(),
            gender,
            aliases: aliases.iter().map(|a| a.to_string()).collect(),
        }
    }

    #[test]
    fn resolve_alias_exact_match() {
        let registry = CharacterRegistry::new(vec![character(
            "elizabeth",
            Gender::Female,
            &["Elizabeth", "Miss Eliza", "Eliza"],
        )])
        .unwrap();
        assert_eq!(
            resolve_alias("Eliza", &registry),
            Some(CharacterId::new("elizabeth"))
        );
        assert_eq!(resolve_alias("Zzz", &registry), None);
        // Case-sensitive: lowercase surface does not match.
        assert_eq!(resolve_alias("eliza", &registry), None);
    }

    #[test]
    fn shared_alias_rejected_at_load() {
        let err = CharacterRegistry::new(vec![
            character("a", Gender::Female, &["Jane"]),
            character("b", Gender::Female, &["Jane"]),
        ])
        .unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateAlias { .. }));
    }

    #[test]
    fn empty_alias_set_rejected() {
        let err = CharacterRegistry::new(vec![character("a", Gender::Male, &[])]).unwrap_err();
        assert!(matches!(err, CorpusError::EmptyAliasSet(_)));
    }

    #[test]
    fn utterance_id_round_trip() {
        let id = UtteranceId::new(12, 3);
        assert_eq!(id.to_string(), "12:3");
        assert_eq!("12:3".parse::<UtteranceId>().unwrap(), id);
        assert!("12".parse::<UtteranceId>().is_err());
    }
}

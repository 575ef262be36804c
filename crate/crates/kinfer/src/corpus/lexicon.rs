//! Lexicon files: expression verbs, head nouns and target family nominals.
//!
//! All three ship as editable line-oriented text files. Target-nominal lines
//! are `<lemma>\t<f|m|e>[\t<canonical relation>]`; when the third column is
//! absent the lemma itself must name a canonical relation base (`mother` ->
//! `mother_of`).

use super::CorpusError;
use crate::kinship::RelationType;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenderConstraint {
    Female,
    Male,
    Either,
}

impl GenderConstraint {
    pub fn admits(self, gender: super::Gender) -> bool {
        match (self, gender) {
            (GenderConstraint::Either, _) => true,
            // An unknown gender is never grounds for rejection.
            (_, super::Gender::Unknown) => true,
            (GenderConstraint::Female, super::Gender::Female) => true,
            (GenderConstraint::Male, super::Gender::Male) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NominalEntry {
    pub gender: GenderConstraint,
    /// Canonical relation this nominal maps to when used as a vocative.
    pub relation: Option<RelationType>,
}

#[derive(Debug, Clone, Default)]
pub struct Lexicons {
    pub expression_verbs: BTreeSet<String>,
    pub head_nouns: BTreeSet<String>,
    pub target_nominals: BTreeMap<String, NominalEntry>,
}

/// Base nominals that every target-nominal lexicon must contain.
const REQUIRED_NOMINALS: &[&str] = &[
    "mother",
    "father",
    "son",
    "daughter",
    "child",
    "sister",
    "brother",
    "cousin",
    "aunt",
    "uncle",
    "niece",
    "nephew",
    "wife",
    "husband",
    "grandfather",
    "grandmother",
    "mother-in-law",
    "father-in-law",
    "sister-in-law",
    "brother-in-law",
];

impl Lexicons {
    pub fn is_expression_verb(&self, lemma: &str) -> bool {
        self.expression_verbs.contains(lemma)
    }

    pub fn is_head_noun(&self, lemma: &str) -> bool {
        self.head_nouns.contains(lemma)
    }

    pub fn nominal(&self, lemma: &str) -> Option<&NominalEntry> {
        self.target_nominals.get(lemma)
    }

    /// Load `expression_verbs.txt`, `head_nouns.txt` and
    /// `target_nominals.tsv` from a directory.
    pub fn load_dir(dir: &Path) -> Result<Self, CorpusError> {
        let verbs = read_lines(&dir.join("expression_verbs.txt"))?;
        let nouns = read_lines(&dir.join("head_nouns.txt"))?;
        let nominals = read_lines(&dir.join("target_nominals.tsv"))?;
        Lexicons::from_lines(&verbs, &nouns, &nominals)
    }

    /// Built-in seed lexicons covering the repository fixtures.
    pub fn builtin() -> Self {
        let verbs: Vec<String> = include_str!("../../data/lexicons/expression_verbs.txt")
            .lines()
            .map(str::to_string)
            .collect();
        let nouns: Vec<String> = include_str!("../../data/lexicons/head_nouns.txt")
            .lines()
            .map(str::to_string)
            .collect();
        let nominals: Vec<String> = include_str!("../../data/lexicons/target_nominals.tsv")
            .lines()
            .map(str::to_string)
            .collect();
        Lexicons::from_lines(&verbs, &nouns, &nominals)
            .expect("builtin lexicons must be well-formed")
    }

    pub fn from_lines(
        verbs: &[String],
        nouns: &[String],
        nominal_lines: &[String],
    ) -> Result<Self, CorpusError> {
        let mut lexicons = Lexicons {
            expression_verbs: clean(verbs),
            head_nouns: clean(nouns),
            target_nominals: BTreeMap::new(),
        };

        for (lineno, line) in nominal_lines.iter().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let lemma = cols
                .next()
                .ok_or_else(|| CorpusError::Lexicon(format!("line {}: empty", lineno + 1)))?
                .trim()
                .to_lowercase();
            let gender = match cols.next().map(str::trim) {
                Some("f") => GenderConstraint::Female,
                Some("m") => GenderConstraint::Male,
                Some("e") => GenderConstraint::Either,
                other => {
                    return Err(CorpusError::Lexicon(format!(
                        "line {}: gender column must be f, m or e, got {:?}",
                        lineno + 1,
                        other
                    )))
                }
            };
            let relation = match cols.next().map(str::trim) {
                Some(name) if !name.is_empty() => Some(name.parse::<RelationType>().map_err(
                    |_| {
                        CorpusError::Lexicon(format!(
                            "line {}: unknown relation {:?}",
                            lineno + 1,
                            name
                        ))
                    },
                )?),
                _ => format!("{}_of", lemma.replace('-', "_"))
                    .parse::<RelationType>()
                    .ok(),
            };
            lexicons
                .target_nominals
                .insert(lemma, NominalEntry { gender, relation });
        }

        for required in REQUIRED_NOMINALS {
            if !lexicons.target_nominals.contains_key(*required) {
                return Err(CorpusError::Lexicon(format!(
                    "target nominal lexicon is missing required entry {required:?}"
                )));
            }
        }
        Ok(lexicons)
    }
}

fn clean(lines: &[String]) -> BTreeSet<String> {
    lines
        .iter()
        .map(|l| l.trim().to_lowercase())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn read_lines(path: &Path) -> Result<Vec<String>, CorpusError> {
    Ok(std::fs::read_to_string(path)
        .map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?
        .lines()
        .map(str::to_string)
        .collect())
}

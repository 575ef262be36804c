//! Propagation-rule file parsing and mechanical expansion.
//!
//! Line grammar (`#` starts a comment):
//!
//! ```text
//! [category] (VAR, relation, VAR) [& (VAR, relation, VAR)] [& GENDER(VAR)] => (VAR, relation, VAR) [!noexpand]
//! ```
//!
//! `category` is one of `compliment`, `transitivity`, `compound`; when
//! omitted it is inferred from the rule shape. Unless a line ends with
//! `!noexpand`, analogues are generated mechanically: the opposite-gender
//! analogue (every gendered relation and guard flipped), and for unguarded
//! single-antecedent rules the opposite-direction analogue (antecedent and
//! consequent swapped). Duplicates are collapsed after variable
//! canonicalization.

use super::RelationType;
use crate::corpus::Gender;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RuleError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("failed to read rule file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleCategory {
    Compliment,
    Transitivity,
    Compound,
}

impl fmt::Display for RuleCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleCategory::Compliment => f.write_str("compliment"),
            RuleCategory::Transitivity => f.write_str("transitivity"),
            RuleCategory::Compound => f.write_str("compound"),
        }
    }
}

/// Rule variable; canonicalized to 0, 1, 2 (printed A, B, C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Variable(pub u8);

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", (b'A' + self.0) as char)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RulePattern {
    pub holder: Variable,
    pub relation: RelationType,
    pub target: Variable,
}

impl fmt::Display for RulePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.holder, self.relation, self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub id: String,
    pub category: RuleCategory,
    pub antecedents: Vec<RulePattern>,
    /// Gender guards over variables (e.g. `FEMALE(B)`); a guard fails when
    /// the bound character's gender is unknown.
    pub guards: Vec<(Variable, Gender)>,
    pub consequent: RulePattern,
}

impl Rule {
    pub fn variable_count(&self) -> usize {
        let mut max = 0u8;
        for pattern in self.antecedents.iter().chain(std::iter::once(&self.consequent)) {
            max = max.max(pattern.holder.0).max(pattern.target.0);
        }
        max as usize + 1
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.category)?;
        for (i, a) in self.antecedents.iter().enumerate() {
            if i > 0 {
                write!(f, " & ")?;
            }
            write!(f, "{a}")?;
        }
        for (var, gender) in &self.guards {
            let name = if *gender == Gender::Female { "FEMALE" } else { "MALE" };
            write!(f, " & {name}({var})")?;
        }
        write!(f, " => {}", self.consequent)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
}

impl RuleSet {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter()
    }
}

/// The default propagation rules shipped with the crate. The file is a
/// reconstruction: it expands to exactly 21 rules across the three
/// categories and is user-replaceable.
pub fn default_rules() -> RuleSet {
    parse_rules(include_str!("../../data/rules/default.rules"))
        .expect("builtin rule file must parse")
}

pub fn load_rules(path: &std::path::Path) -> Result<RuleSet, RuleError> {
    let text = std::fs::read_to_string(path).map_err(|source| RuleError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_rules(&text)
}

pub fn parse_rules(text: &str) -> Result<RuleSet, RuleError> {
    let mut expanded: Vec<Rule> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (line, noexpand) = match line.strip_suffix("!noexpand") {
            Some(rest) => (rest.trim_end(), true),
            None => (line, false),
        };
        let parsed = parse_line(line, lineno + 1)?;
        let variants = if noexpand {
            vec![parsed]
        } else {
            expand(parsed)
        };
        for rule in variants {
            if !expanded.iter().any(|r| same_rule(r, &rule)) {
                expanded.push(rule);
            }
        }
    }
    for (i, rule) in expanded.iter_mut().enumerate() {
        rule.id = format!("r{:02}", i + 1);
    }
    Ok(RuleSet { rules: expanded })
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(idx) => &line[..idx],
        None => line,
    }
}

fn same_rule(a: &Rule, b: &Rule) -> bool {
    a.category == b.category
        && a.antecedents == b.antecedents
        && a.guards == b.guards
        && a.consequent == b.consequent
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct LineParser<'a> {
    rest: &'a str,
    line: usize,
    names: Vec<String>,
}

impl<'a> LineParser<'a> {
    fn error(&self, message: impl Into<String>) -> RuleError {
        RuleError::Parse {
            line: self.line,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if let Some(rest) = self.rest.strip_prefix(token) {
            self.rest = rest;
            true
        } else {
            false
        }
    }

    fn variable(&mut self, name: &str) -> Variable {
        if let Some(idx) = self.names.iter().position(|n| n == name) {
            Variable(idx as u8)
        } else {
            self.names.push(name.to_string());
            Variable((self.names.len() - 1) as u8)
        }
    }

    fn ident(&mut self) -> Result<String, RuleError> {
        self.skip_ws();
        let end = self
            .rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(self.rest.len());
        if end == 0 {
            return Err(self.error(format!("expected identifier at {:?}", self.rest)));
        }
        let (ident, rest) = self.rest.split_at(end);
        self.rest = rest;
        Ok(ident.to_string())
    }

    fn pattern(&mut self) -> Result<RulePattern, RuleError> {
        if !self.eat("(") {
            return Err(self.error(format!("expected '(' at {:?}", self.rest)));
        }
        let holder_name = self.ident()?;
        if !self.eat(",") {
            return Err(self.error("expected ',' after holder variable"));
        }
        let relation_name = self.ident()?;
        let relation: RelationType = relation_name
            .parse()
            .map_err(|_| self.error(format!("unknown relation name {relation_name:?}")))?;
        if !self.eat(",") {
            return Err(self.error("expected ',' after relation name"));
        }
        let target_name = self.ident()?;
        if !self.eat(")") {
            return Err(self.error("expected ')' to close pattern"));
        }
        let holder = self.variable(&holder_name);
        let target = self.variable(&target_name);
        Ok(RulePattern {
            holder,
            relation,
            target,
        })
    }
}

fn parse_line(line: &str, lineno: usize) -> Result<Rule, RuleError> {
    let mut parser = LineParser {
        rest: line,
        line: lineno,
        names: Vec::new(),
    };

    parser.skip_ws();
    let mut category = None;
    for (word, value) in [
        ("compliment", RuleCategory::Compliment),
        ("transitivity", RuleCategory::Transitivity),
        ("compound", RuleCategory::Compound),
    ] {
        if parser.rest.starts_with(word) {
            parser.rest = &parser.rest[word.len()..];
            category = Some(value);
            break;
        }
    }

    let mut antecedents = vec![parser.pattern()?];
    let mut guards = Vec::new();
    loop {
        if !parser.eat("&") {
            break;
        }
        parser.skip_ws();
        if parser.rest.starts_with("FEMALE") || parser.rest.starts_with("MALE") {
            let gender = if parser.eat("FEMALE") {
                Gender::Female
            } else {
                parser.eat("MALE");
                Gender::Male
            };
            if !parser.eat("(") {
                return Err(parser.error("expected '(' after gender guard"));
            }
            let name = parser.ident()?;
            if !parser.names.contains(&name) {
                return Err(parser.error(format!("gender guard references unbound variable {name:?}")));
            }
            let var = parser.variable(&name);
            if !parser.eat(")") {
                return Err(parser.error("expected ')' to close gender guard"));
            }
            guards.push((var, gender));
        } else {
            antecedents.push(parser.pattern()?);
        }
    }

    if !parser.eat("=>") {
        return Err(parser.error(format!("expected '=>' at {:?}", parser.rest)));
    }
    let bound = parser.names.len();
    let consequent = parser.pattern()?;
    if let Some(var_name) = parser.names.get(bound) {
        return Err(parser.error(format!(
            "consequent variable {var_name:?} is not bound by any antecedent"
        )));
    }
    parser.skip_ws();
    if !parser.rest.is_empty() {
        return Err(parser.error(format!("trailing input {:?}", parser.rest)));
    }

    if antecedents.len() > 2 {
        return Err(parser.error("a rule may have at most two antecedents"));
    }

    let category = category.unwrap_or_else(|| infer_category(&antecedents, &consequent));
    Ok(canonicalize(Rule {
        id: String::new(),
        category,
        antecedents,
        guards,
        consequent,
    }))
}

fn infer_category(antecedents: &[RulePattern], consequent: &RulePattern) -> RuleCategory {
    if antecedents.len() == 1 {
        RuleCategory::Compliment
    } else if antecedents
        .iter()
        .all(|a| a.relation.generalization() == consequent.relation.generalization())
    {
        RuleCategory::Transitivity
    } else {
        RuleCategory::Compound
    }
}

// ---------------------------------------------------------------------------
// Expansion
// ---------------------------------------------------------------------------

/// Rename variables to 0, 1, 2 in order of first appearance (antecedents
/// first, then consequent) so that analogue duplicates collapse.
fn canonicalize(rule: Rule) -> Rule {
    let mut mapping: Vec<u8> = Vec::new();
    let mut remap = |v: Variable| -> Variable {
        if let Some(idx) = mapping.iter().position(|m| *m == v.0) {
            Variable(idx as u8)
        } else {
            mapping.push(v.0);
            Variable((mapping.len() - 1) as u8)
        }
    };
    let antecedents = rule
        .antecedents
        .iter()
        .map(|p| RulePattern {
            holder: remap(p.holder),
            relation: p.relation,
            target: remap(p.target),
        })
        .collect();
    let consequent = RulePattern {
        holder: remap(rule.consequent.holder),
        relation: rule.consequent.relation,
        target: remap(rule.consequent.target),
    };
    let mut guards: Vec<(Variable, Gender)> = rule
        .guards
        .iter()
        .map(|(v, g)| (remap(*v), *g))
        .collect();
    guards.sort();
    Rule {
        id: rule.id,
        category: rule.category,
        antecedents,
        guards,
        consequent,
    }
}

fn gender_analogue(rule: &Rule) -> Rule {
    let flip = |p: &RulePattern| RulePattern {
        holder: p.holder,
        relation: p.relation.gender_analogue(),
        target: p.target,
    };
    canonicalize(Rule {
        id: String::new(),
        category: rule.category,
        antecedents: rule.antecedents.iter().map(flip).collect(),
        guards: rule
            .guards
            .iter()
            .map(|(v, g)| {
                let flipped = match g {
                    Gender::Female => Gender::Male,
                    Gender::Male => Gender::Female,
                    Gender::Unknown => Gender::Unknown,
                };
                (*v, flipped)
            })
            .collect(),
        consequent: flip(&rule.consequent),
    })
}

/// Opposite-direction analogue: premise and conclusion swapped. Only defined
/// for unguarded single-antecedent rules; for guarded or two-antecedent
/// rules the opposite direction is realized by the graph's inverse closure.
fn direction_analogue(rule: &Rule) -> Option<Rule> {
    if rule.antecedents.len() != 1 || !rule.guards.is_empty() {
        return None;
    }
    Some(canonicalize(Rule {
        id: String::new(),
        category: rule.category,
        antecedents: vec![rule.consequent],
        guards: Vec::new(),
        consequent: rule.antecedents[0],
    }))
}

fn expand(rule: Rule) -> Vec<Rule> {
    let mut out = vec![rule.clone()];
    let push = |candidate: Rule, out: &mut Vec<Rule>| {
        if !out.iter().any(|r| same_rule(r, &candidate)) {
            out.push(candidate);
        }
    };
    let analogue = gender_analogue(&rule);
    push(analogue.clone(), &mut out);
    if let Some(dir) = direction_analogue(&rule) {
        push(dir, &mut out);
    }
    if let Some(dir) = direction_analogue(&analogue) {
        push(dir, &mut out);
    }
    out
}

//! Canonical family-relation taxonomy, the kinship fact graph, and the
//! forward-chaining propagation engine with count-arbitrated contradiction
//! resolution.

mod engine;
mod rules;

pub use engine::{propagate, PropagationDiagnostics};
pub use rules::{
    default_rules, load_rules, parse_rules, Rule, RuleCategory, RuleError, RulePattern, RuleSet,
    Variable,
};

use crate::corpus::{CharacterId, CharacterRegistry, Gender, GenderConstraint};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// All relation names read `A <relation> B`, e.g. `(A, mother_of, B)` means
/// A is B's mother. Ungendered variants (`parent_of`, `sibling_of`, ...) are
/// placeholders used when the holder's gender is unknown; gold annotations
/// may also use them as wildcards over the gendered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationType {
    MotherOf,
    FatherOf,
    ParentOf,
    DaughterOf,
    SonOf,
    ChildOf,
    SisterOf,
    BrotherOf,
    SiblingOf,
    CousinOf,
    AuntOf,
    UncleOf,
    AuntOrUncleOf,
    NieceOf,
    NephewOf,
    NieceOrNephewOf,
    WifeOf,
    HusbandOf,
    SpouseOf,
    GrandmotherOf,
    GrandfatherOf,
    GrandparentOf,
    GranddaughterOf,
    GrandsonOf,
    GrandchildOf,
    MotherInLawOf,
    FatherInLawOf,
    ParentInLawOf,
    DaughterInLawOf,
    SonInLawOf,
    ChildInLawOf,
    SisterInLawOf,
    BrotherInLawOf,
    SiblingInLawOf,
    /// Honorific couple pairing used by the title-inference compliment rule.
    MrAndMrs,
}

use RelationType::*;

pub const ALL_RELATION_TYPES: &[RelationType] = &[
    MotherOf,
    FatherOf,
    ParentOf,
    DaughterOf,
    SonOf,
    ChildOf,
    SisterOf,
    BrotherOf,
    SiblingOf,
    CousinOf,
    AuntOf,
    UncleOf,
    AuntOrUncleOf,
    NieceOf,
    NephewOf,
    NieceOrNephewOf,
    WifeOf,
    HusbandOf,
    SpouseOf,
    GrandmotherOf,
    GrandfatherOf,
    GrandparentOf,
    GranddaughterOf,
    GrandsonOf,
    GrandchildOf,
    MotherInLawOf,
    FatherInLawOf,
    ParentInLawOf,
    DaughterInLawOf,
    SonInLawOf,
    ChildInLawOf,
    SisterInLawOf,
    BrotherInLawOf,
    SiblingInLawOf,
    MrAndMrs,
];

impl RelationType {
    pub fn name(self) -> &'static str {
        match self {
            MotherOf => "mother_of",
            FatherOf => "father_of",
            ParentOf => "parent_of",
            DaughterOf => "daughter_of",
            SonOf => "son_of",
            ChildOf => "child_of",
            SisterOf => "sister_of",
            BrotherOf => "brother_of",
            SiblingOf => "sibling_of",
            CousinOf => "cousin_of",
            AuntOf => "aunt_of",
            UncleOf => "uncle_of",
            AuntOrUncleOf => "aunt_or_uncle_of",
            NieceOf => "niece_of",
            NephewOf => "nephew_of",
            NieceOrNephewOf => "niece_or_nephew_of",
            WifeOf => "wife_of",
            HusbandOf => "husband_of",
            SpouseOf => "spouse_of",
            GrandmotherOf => "grandmother_of",
            GrandfatherOf => "grandfather_of",
            GrandparentOf => "grandparent_of",
            GranddaughterOf => "granddaughter_of",
            GrandsonOf => "grandson_of",
            GrandchildOf => "grandchild_of",
            MotherInLawOf => "mother_in_law_of",
            FatherInLawOf => "father_in_law_of",
            ParentInLawOf => "parent_in_law_of",
            DaughterInLawOf => "daughter_in_law_of",
            SonInLawOf => "son_in_law_of",
            ChildInLawOf => "child_in_law_of",
            SisterInLawOf => "sister_in_law_of",
            BrotherInLawOf => "brother_in_law_of",
            SiblingInLawOf => "sibling_in_law_of",
            MrAndMrs => "mr_and_mrs",
        }
    }

    /// Gender the relation holder (A in `(A, r, B)`) must have.
    pub fn holder_gender(self) -> GenderConstraint {
        match self {
            MotherOf | DaughterOf | SisterOf | AuntOf | NieceOf | WifeOf | GrandmotherOf
            | GranddaughterOf | MotherInLawOf | DaughterInLawOf | SisterInLawOf => {
                GenderConstraint::Female
            }
            FatherOf | SonOf | BrotherOf | UncleOf | NephewOf | HusbandOf | GrandfatherOf
            | GrandsonOf | FatherInLawOf | SonInLawOf | BrotherInLawOf => GenderConstraint::Male,
            _ => GenderConstraint::Either,
        }
    }

    /// The ungendered placeholder this type specializes, if any.
    pub fn generalization(self) -> RelationType {
        match self {
            MotherOf | FatherOf => ParentOf,
            DaughterOf | SonOf => ChildOf,
            SisterOf | BrotherOf => SiblingOf,
            AuntOf | UncleOf => AuntOrUncleOf,
            NieceOf | NephewOf => NieceOrNephewOf,
            WifeOf | HusbandOf => SpouseOf,
            GrandmotherOf | GrandfatherOf => GrandparentOf,
            GranddaughterOf | GrandsonOf => GrandchildOf,
            MotherInLawOf | FatherInLawOf => ParentInLawOf,
            DaughterInLawOf | SonInLawOf => ChildInLawOf,
            SisterInLawOf | BrotherInLawOf => SiblingInLawOf,
            other => other,
        }
    }

    /// Specialize a placeholder by the holder's gender; gendered types are
    /// returned unchanged.
    pub fn specialize(self, gender: Gender) -> RelationType {
        match (self, gender) {
            (ParentOf, Gender::Female) => MotherOf,
            (ParentOf, Gender::Male) => FatherOf,
            (ChildOf, Gender::Female) => DaughterOf,
            (ChildOf, Gender::Male) => SonOf,
            (SiblingOf, Gender::Female) => SisterOf,
            (SiblingOf, Gender::Male) => BrotherOf,
            (AuntOrUncleOf, Gender::Female) => AuntOf,
            (AuntOrUncleOf, Gender::Male) => UncleOf,
            (NieceOrNephewOf, Gender::Female) => NieceOf,
            (NieceOrNephewOf, Gender::Male) => NephewOf,
            (SpouseOf, Gender::Female) => WifeOf,
            (SpouseOf, Gender::Male) => HusbandOf,
            (GrandparentOf, Gender::Female) => GrandmotherOf,
            (GrandparentOf, Gender::Male) => GrandfatherOf,
            (GrandchildOf, Gender::Female) => GranddaughterOf,
            (GrandchildOf, Gender::Male) => GrandsonOf,
            (ParentInLawOf, Gender::Female) => MotherInLawOf,
            (ParentInLawOf, Gender::Male) => FatherInLawOf,
            (ChildInLawOf, Gender::Female) => DaughterInLawOf,
            (ChildInLawOf, Gender::Male) => SonInLawOf,
            (SiblingInLawOf, Gender::Female) => SisterInLawOf,
            (SiblingInLawOf, Gender::Male) => BrotherInLawOf,
            (other, _) => other,
        }
    }

    /// `(A, r, B)` implies `(B, r.inverse(gender of B), A)`.
    pub fn inverse(self, counterpart_gender: Gender) -> RelationType {
        let base = match self {
            MotherOf | FatherOf | ParentOf => ChildOf,
            DaughterOf | SonOf | ChildOf => ParentOf,
            SisterOf | BrotherOf | SiblingOf => SiblingOf,
            CousinOf => CousinOf,
            AuntOf | UncleOf | AuntOrUncleOf => NieceOrNephewOf,
            NieceOf | NephewOf | NieceOrNephewOf => AuntOrUncleOf,
            WifeOf | HusbandOf | SpouseOf => SpouseOf,
            GrandmotherOf | GrandfatherOf | GrandparentOf => GrandchildOf,
            GranddaughterOf | GrandsonOf | GrandchildOf => GrandparentOf,
            MotherInLawOf | FatherInLawOf | ParentInLawOf => ChildInLawOf,
            DaughterInLawOf | SonInLawOf | ChildInLawOf => ParentInLawOf,
            SisterInLawOf | BrotherInLawOf | SiblingInLawOf => SiblingInLawOf,
            MrAndMrs => MrAndMrs,
        };
        base.specialize(counterpart_gender)
    }

    /// Opposite-gender analogue used by rule expansion (mother <-> father).
    pub fn gender_analogue(self) -> RelationType {
        match self {
            MotherOf => FatherOf,
            FatherOf => MotherOf,
            DaughterOf => SonOf,
            SonOf => DaughterOf,
            SisterOf => BrotherOf,
            BrotherOf => SisterOf,
            AuntOf => UncleOf,
            UncleOf => AuntOf,
            NieceOf => NephewOf,
            NephewOf => NieceOf,
            WifeOf => HusbandOf,
            HusbandOf => WifeOf,
            GrandmotherOf => GrandfatherOf,
            GrandfatherOf => GrandmotherOf,
            GranddaughterOf => GrandsonOf,
            GrandsonOf => GranddaughterOf,
            MotherInLawOf => FatherInLawOf,
            FatherInLawOf => MotherInLawOf,
            DaughterInLawOf => SonInLawOf,
            SonInLawOf => DaughterInLawOf,
            SisterInLawOf => BrotherInLawOf,
            BrotherInLawOf => SisterInLawOf,
            other => other,
        }
    }

    pub fn is_in_law(self) -> bool {
        matches!(
            self,
            MotherInLawOf
                | FatherInLawOf
                | ParentInLawOf
                | DaughterInLawOf
                | SonInLawOf
                | ChildInLawOf
                | SisterInLawOf
                | BrotherInLawOf
                | SiblingInLawOf
        )
    }

    /// Evaluation-time match: exact, or the gold side is an ungendered
    /// placeholder covering the predicted gendered type.
    pub fn matches_gold(self, predicted: RelationType) -> bool {
        self == predicted || predicted.generalization() == self
    }
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_RELATION_TYPES
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown relation type {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Seed,
    Propagated,
}

/// How a propagated fact was derived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub rule_id: String,
    pub antecedents: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KinshipFact {
    pub id: u64,
    pub a1: CharacterId,
    pub relation: RelationType,
    pub a2: CharacterId,
    pub count: u32,
    pub provenance: Provenance,
    pub derivation: Option<Derivation>,
}

/// Fact set indexed by ordered character pair. At most one relation type per
/// ordered pair, and closed under the inverse map: storing `(A, r, B)` also
/// stores `(B, inverse(r), A)` with the same count.
#[derive(Debug, Clone, Default)]
pub struct KinshipGraph {
    facts: BTreeMap<(CharacterId, CharacterId), KinshipFact>,
    next_id: u64,
}

/// Outcome of proposing a fact to the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insertion {
    Added,
    CountRaised,
    Replaced,
    Unchanged,
    Cancelled,
    RejectedSelfRelation,
}

impl KinshipGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn facts(&self) -> impl Iterator<Item = &KinshipFact> {
        self.facts.values()
    }

    pub fn get(&self, a1: &CharacterId, a2: &CharacterId) -> Option<&KinshipFact> {
        self.facts.get(&(a1.clone(), a2.clone()))
    }

    /// Facts with inverse duplicates suppressed: of each stored pair, the
    /// direction whose endpoint ids are lexicographically ordered.
    pub fn undirected_facts(&self) -> impl Iterator<Item = &KinshipFact> {
        self.facts.values().filter(|f| f.a1 <= f.a2)
    }

    /// Propose `(a1, relation, a2)` with the given count, applying the
    /// count-arbitration policy:
    ///
    /// * no fact on the pair: add it and its inverse;
    /// * identical type: keep the larger count;
    /// * different type (contradiction): replace only when the new count
    ///   strictly exceeds the existing one, otherwise cancel.
    ///
    /// One carve-out: an existing `mr_and_mrs` pairing always yields to a
    /// real kinship relation regardless of counts. It is an honorific
    /// bookkeeping fact, and the compliment rule that consumes it produces
    /// its consequent on the very pair it occupies.
    #[allow(clippy::too_many_arguments)]
    pub fn propose(
        &mut self,
        a1: &CharacterId,
        relation: RelationType,
        a2: &CharacterId,
        count: u32,
        provenance: Provenance,
        derivation: Option<Derivation>,
        registry: &CharacterRegistry,
    ) -> Insertion {
        if a1 == a2 {
            return Insertion::RejectedSelfRelation;
        }
        // Normalize the relation's gendering to the holder: placeholders
        // specialize when the gender is known, and a relation whose gender
        // disagrees with the holder is re-gendered. This keeps the inverse
        // map exactly involutive on stored facts.
        let relation = relation.generalization().specialize(registry.gender(a1));
        let key = (a1.clone(), a2.clone());
        match self.facts.get(&key) {
            None => {
                self.store(a1, relation, a2, count, provenance, derivation, registry);
                Insertion::Added
            }
            Some(existing) if existing.relation == relation => {
                if count > existing.count {
                    self.bump_count(a1, a2, count);
                    Insertion::CountRaised
                } else {
                    Insertion::Unchanged
                }
            }
            Some(existing) => {
                let yields = existing.relation == MrAndMrs && relation != MrAndMrs;
                if yields || count > existing.count {
                    self.remove_pair(a1, a2);
                    self.store(a1, relation, a2, count, provenance, derivation, registry);
                    Insertion::Replaced
                } else {
                    Insertion::Cancelled
                }
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn store(
        &mut self,
        a1: &CharacterId,
        relation: RelationType,
        a2: &CharacterId,
        count: u32,
        provenance: Provenance,
        derivation: Option<Derivation>,
        registry: &CharacterRegistry,
    ) {
        let forward = KinshipFact {
            id: self.next_id,
            a1: a1.clone(),
            relation,
            a2: a2.clone(),
            count,
            provenance,
            derivation: derivation.clone(),
        };
        let inverse = KinshipFact {
            id: self.next_id + 1,
            a1: a2.clone(),
            relation: relation.inverse(registry.gender(a2)),
            a2: a1.clone(),
            count,
            provenance,
            derivation,
        };
        self.next_id += 2;
        self.facts.insert((a1.clone(), a2.clone()), forward);
        self.facts.insert((a2.clone(), a1.clone()), inverse);
    }

    fn bump_count(&mut self, a1: &CharacterId, a2: &CharacterId, count: u32) {
        for key in [(a1.clone(), a2.clone()), (a2.clone(), a1.clone())] {
            if let Some(fact) = self.facts.get_mut(&key) {
                fact.count = fact.count.max(count);
            }
        }
    }

    fn remove_pair(&mut self, a1: &CharacterId, a2: &CharacterId) {
        self.facts.remove(&(a1.clone(), a2.clone()));
        self.facts.remove(&(a2.clone(), a1.clone()));
    }
}

/// `(A, r, B) -> (B, inverse(r), A)`, same count. The gendered inverse falls
/// back to the ungendered placeholder when the counterpart's gender is
/// unknown.
pub fn invert(fact: &KinshipFact, registry: &CharacterRegistry) -> KinshipFact {
    KinshipFact {
        id: fact.id,
        a1: fact.a2.clone(),
        relation: fact.relation.inverse(registry.gender(&fact.a2)),
        a2: fact.a1.clone(),
        count: fact.count,
        provenance: fact.provenance,
        derivation: fact.derivation.clone(),
    }
}

/// A seed fact before graph insertion: `(a1, relation, a2)` with a support
/// count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedFact {
    pub a1: CharacterId,
    pub relation: RelationType,
    pub a2: CharacterId,
    pub count: u32,
}

/// Infer `wife_of` facts from honorific alias pairs: a `Mrs. X` character
/// and a `Mr. X` character with the same last name and female/male genders
/// yield `(Mrs. X, wife_of, Mr. X)` with count 1.
pub fn infer_spousal_from_titles(registry: &CharacterRegistry) -> Vec<SeedFact> {
    let mut by_surname: BTreeMap<String, (Option<CharacterId>, Option<CharacterId>)> =
        BTreeMap::new();
    for (alias, id) in registry.aliases() {
        let (slot_is_mr, surname) = if let Some(rest) = strip_title(alias, &["Mr. ", "Mr "]) {
            (true, rest)
        } else if let Some(rest) = strip_title(alias, &["Mrs. ", "Mrs "]) {
            (false, rest)
        } else {
            continue;
        };
        let entry = by_surname.entry(surname.to_string()).or_default();
        if slot_is_mr {
            entry.0 = Some(id.clone());
        } else {
            entry.1 = Some(id.clone());
        }
    }

    let mut facts = Vec::new();
    for (mr, mrs) in by_surname.values() {
        if let (Some(mr), Some(mrs)) = (mr, mrs) {
            if mr == mrs {
                continue;
            }
            if registry.gender(mr) == Gender::Male && registry.gender(mrs) == Gender::Female {
                facts.push(SeedFact {
                    a1: mrs.clone(),
                    relation: WifeOf,
                    a2: mr.clone(),
                    count: 1,
                });
            }
        }
    }
    facts
}

fn strip_title<'a>(alias: &'a str, prefixes: &[&str]) -> Option<&'a str> {
    for prefix in prefixes {
        if let Some(rest) = alias.strip_prefix(prefix) {
            let rest = rest.trim();
            if !rest.is_empty() {
                return Some(rest);
            }
        }
    }
    None
}

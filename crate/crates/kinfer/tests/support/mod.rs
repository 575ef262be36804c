//! Shared acceptance-test machinery: an independent brute-force saturation
//! oracle, random family generation, and small helpers.
//!
//! Each integration-test binary compiles this module separately and uses a
//! different subset of it.
#![allow(dead_code)]

use kinfer::corpus::{Character, CharacterId, CharacterRegistry, Gender};
use kinfer::kinship::{KinshipGraph, RelationType, RuleSet, SeedFact};
use rand::rngs::StdRng;
use rand::Rng;
use std::collections::BTreeMap;

pub type OracleFacts = BTreeMap<(CharacterId, CharacterId), (RelationType, u32)>;

pub fn registry(entries: &[(&str, Gender)]) -> CharacterRegistry {
    CharacterRegistry::new(
        entries
            .iter()
            .map(|(id, gender)| Character {
                id: CharacterId::new(*id),
                canonical_name: id.to_string(),
                gender: *gender,
                aliases: std::iter::once(format!("@{id}")).collect(),
            })
            .collect(),
    )
    .unwrap()
}

pub fn seed(a1: &str, relation: RelationType, a2: &str, count: u32) -> SeedFact {
    SeedFact {
        a1: CharacterId::new(a1),
        relation,
        a2: CharacterId::new(a2),
        count,
    }
}

/// Propose a fact into the naive fact map under the arbitration policy:
/// specialize by holder gender, reject self-relations, keep inverse closure,
/// merge identical types by max count, replace a contradicted type only on
/// strictly larger count (an existing mr_and_mrs pairing always yields to a
/// real relation).
fn propose_naive(
    facts: &mut OracleFacts,
    a1: &CharacterId,
    relation: RelationType,
    a2: &CharacterId,
    count: u32,
    registry: &CharacterRegistry,
) -> bool {
    if a1 == a2 {
        return false;
    }
    let relation = relation.generalization().specialize(registry.gender(a1));
    let forward = (a1.clone(), a2.clone());
    let backward = (a2.clone(), a1.clone());
    match facts.get(&forward).cloned() {
        None => {
            facts.insert(forward, (relation, count));
            facts.insert(
                backward,
                (relation.inverse(registry.gender(a2)), count),
            );
            true
        }
        Some((existing, existing_count)) if existing == relation => {
            if count > existing_count {
                facts.get_mut(&forward).unwrap().1 = count;
                facts.get_mut(&backward).unwrap().1 = count;
                true
            } else {
                false
            }
        }
        Some((existing, existing_count)) => {
            let yields = existing == RelationType::MrAndMrs && relation != RelationType::MrAndMrs;
            if yields || count > existing_count {
                facts.insert(forward, (relation, count));
                facts.insert(
                    backward,
                    (relation.inverse(registry.gender(a2)), count),
                );
                true
            } else {
                false
            }
        }
    }
}

/// Brute-force saturation: repeatedly enumerate every rule against every
/// variable binding over the full character set until nothing changes.
/// Shares the arbitration policy with the engine but none of its machinery.
pub fn saturate(seeds: &[SeedFact], rules: &RuleSet, registry: &CharacterRegistry) -> OracleFacts {
    let mut facts = OracleFacts::new();
    for s in seeds {
        propose_naive(&mut facts, &s.a1, s.relation, &s.a2, s.count, registry);
    }

    let characters: Vec<CharacterId> = registry.iter().map(|c| c.id.clone()).collect();
    loop {
        let mut changed = false;
        for rule in rules.iter() {
            let vars = rule.variable_count();
            let mut assignment = vec![0usize; vars];
            loop {
                let binding: Vec<&CharacterId> =
                    assignment.iter().map(|&i| &characters[i]).collect();

                let antecedents_hold = rule.antecedents.iter().all(|pattern| {
                    let key = (
                        binding[pattern.holder.0 as usize].clone(),
                        binding[pattern.target.0 as usize].clone(),
                    );
                    facts.get(&key).is_some_and(|(r, _)| *r == pattern.relation)
                });
                let guards_hold = rule
                    .guards
                    .iter()
                    .all(|(var, gender)| registry.gender(binding[var.0 as usize]) == *gender);

                if antecedents_hold && guards_hold {
                    let count = rule
                        .antecedents
                        .iter()
                        .map(|pattern| {
                            let key = (
                                binding[pattern.holder.0 as usize].clone(),
                                binding[pattern.target.0 as usize].clone(),
                            );
                            facts[&key].1
                        })
                        .max()
                        .unwrap_or(0);
                    let a1 = binding[rule.consequent.holder.0 as usize].clone();
                    let a2 = binding[rule.consequent.target.0 as usize].clone();
                    changed |= propose_naive(
                        &mut facts,
                        &a1,
                        rule.consequent.relation,
                        &a2,
                        count,
                        registry,
                    );
                }

                // Advance the odometer.
                let mut position = 0;
                loop {
                    if position == vars {
                        break;
                    }
                    assignment[position] += 1;
                    if assignment[position] < characters.len() {
                        break;
                    }
                    assignment[position] = 0;
                    position += 1;
                }
                if position == vars {
                    break;
                }
            }
        }
        if !changed {
            break;
        }
    }
    facts
}

fn random_gender(rng: &mut StdRng) -> Gender {
    if rng.random_bool(0.5) {
        Gender::Female
    } else {
        Gender::Male
    }
}

fn sibling_type(gender: Gender) -> RelationType {
    match gender {
        Gender::Female => RelationType::SisterOf,
        Gender::Male => RelationType::BrotherOf,
        Gender::Unknown => RelationType::SiblingOf,
    }
}

/// A consistent random family of up to 8 members, with seed facts drawn
/// from its true direct relations: parents and children, siblings, spouses,
/// a grandmother, and an aunt/uncle. Each chosen seed gets a random support
/// count in 1..=5 and a random direction.
pub fn random_family(rng: &mut StdRng) -> (CharacterRegistry, Vec<SeedFact>) {
    let mut characters: Vec<(String, Gender)> =
        vec![("father".into(), Gender::Male), ("mother".into(), Gender::Female)];
    let kid_count = rng.random_range(1..=3);
    let mut kids = Vec::new();
    for i in 0..kid_count {
        let id = format!("kid{i}");
        let gender = random_gender(rng);
        characters.push((id.clone(), gender));
        kids.push((id, gender));
    }
    let with_grandmother = rng.random_bool(0.5);
    if with_grandmother {
        characters.push(("grandma".into(), Gender::Female));
    }
    let sibling = rng.random_bool(0.6).then(|| {
        let gender = random_gender(rng);
        characters.push(("sib".into(), gender));
        gender
    });
    let sibling_spouse = sibling.and_then(|sib_gender| {
        (characters.len() < 8 && rng.random_bool(0.5)).then(|| {
            let gender = match sib_gender {
                Gender::Female => Gender::Male,
                _ => Gender::Female,
            };
            characters.push(("sibsp".into(), gender));
            gender
        })
    });

    let registry = CharacterRegistry::new(
        characters
            .iter()
            .map(|(id, gender)| Character {
                id: CharacterId::new(id),
                canonical_name: id.clone(),
                gender: *gender,
                aliases: std::iter::once(format!("@{id}")).collect(),
            })
            .collect(),
    )
    .unwrap();

    let mut candidates: Vec<SeedFact> = Vec::new();
    for (kid, _) in &kids {
        candidates.push(seed("mother", RelationType::MotherOf, kid, 1));
        candidates.push(seed("father", RelationType::FatherOf, kid, 1));
    }
    for i in 0..kids.len() {
        for j in (i + 1)..kids.len() {
            candidates.push(seed(&kids[i].0, sibling_type(kids[i].1), &kids[j].0, 1));
        }
    }
    candidates.push(seed("mother", RelationType::WifeOf, "father", 1));
    if with_grandmother {
        candidates.push(seed("grandma", RelationType::MotherOf, "mother", 1));
        for (kid, _) in &kids {
            candidates.push(seed("grandma", RelationType::GrandmotherOf, kid, 1));
        }
        if sibling.is_some() {
            candidates.push(seed("grandma", RelationType::MotherOf, "sib", 1));
        }
    }
    if let Some(sib_gender) = sibling {
        candidates.push(seed("sib", sibling_type(sib_gender), "mother", 1));
        let avuncular = match sib_gender {
            Gender::Female => RelationType::AuntOf,
            _ => RelationType::UncleOf,
        };
        for (kid, _) in &kids {
            candidates.push(seed("sib", avuncular, kid, 1));
        }
        if let Some(spouse_gender) = sibling_spouse {
            let marital = match spouse_gender {
                Gender::Female => RelationType::WifeOf,
                _ => RelationType::HusbandOf,
            };
            candidates.push(seed("sibsp", marital, "sib", 1));
        }
    }

    let mut seeds = Vec::new();
    for candidate in &candidates {
        if !rng.random_bool(0.5) {
            continue;
        }
        let count = rng.random_range(1..=5);
        if rng.random_bool(0.5) {
            seeds.push(SeedFact { count, ..candidate.clone() });
        } else {
            seeds.push(SeedFact {
                a1: candidate.a2.clone(),
                relation: candidate
                    .relation
                    .inverse(registry.gender(&candidate.a2)),
                a2: candidate.a1.clone(),
                count,
            });
        }
    }
    if seeds.is_empty() {
        seeds.push(SeedFact {
            count: rng.random_range(1..=5),
            ..candidates[0].clone()
        });
    }
    (registry, seeds)
}

/// An arbitrary (typically inconsistent) random seed set over 3..=8
/// characters, for fuzzing termination and the graph invariants.
pub fn random_seed_set(rng: &mut StdRng) -> (CharacterRegistry, Vec<SeedFact>) {
    let n = rng.random_range(3..=8);
    let characters: Vec<(String, Gender)> = (0..n)
        .map(|i| {
            let gender = match rng.random_range(0..5) {
                0 | 1 => Gender::Female,
                2 | 3 => Gender::Male,
                _ => Gender::Unknown,
            };
            (format!("c{i}"), gender)
        })
        .collect();
    let registry = CharacterRegistry::new(
        characters
            .iter()
            .map(|(id, gender)| Character {
                id: CharacterId::new(id),
                canonical_name: id.clone(),
                gender: *gender,
                aliases: std::iter::once(format!("@{id}")).collect(),
            })
            .collect(),
    )
    .unwrap();

    let pool = kinfer::kinship::ALL_RELATION_TYPES;
    let seed_count = rng.random_range(1..=12);
    let mut seeds = Vec::new();
    for _ in 0..seed_count {
        let a1 = rng.random_range(0..n);
        let mut a2 = rng.random_range(0..n);
        if a1 == a2 {
            a2 = (a2 + 1) % n;
        }
        seeds.push(SeedFact {
            a1: CharacterId::new(&characters[a1].0),
            relation: pool[rng.random_range(0..pool.len())],
            a2: CharacterId::new(&characters[a2].0),
            count: rng.random_range(1..=5),
        });
    }
    (registry, seeds)
}

/// Number of connected components among characters that appear in facts.
pub fn component_count(graph: &KinshipGraph) -> usize {
    let mut nodes: Vec<CharacterId> = Vec::new();
    let mut edges: Vec<(CharacterId, CharacterId)> = Vec::new();
    for fact in graph.undirected_facts() {
        for id in [&fact.a1, &fact.a2] {
            if !nodes.contains(id) {
                nodes.push(id.clone());
            }
        }
        edges.push((fact.a1.clone(), fact.a2.clone()));
    }
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for (a, b) in &edges {
        let ia = nodes.iter().position(|n| n == a).unwrap();
        let ib = nodes.iter().position(|n| n == b).unwrap();
        let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    (0..nodes.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}

//! Fixed-point forward chaining over the kinship graph.
//!
//! Repeats until no change: for each rule instantiation whose antecedents
//! hold, propose the consequent with count = max of the antecedent counts.
//! The graph's arbitration policy (see `KinshipGraph::propose`) decides
//! whether the proposal lands. Termination follows from finiteness: a pair's
//! stored count never decreases, and its (type, count) only changes by
//! strict count increase.

use super::rules::{Rule, RuleSet};
use super::{Derivation, Insertion, KinshipFact, KinshipGraph, Provenance, SeedFact};
use crate::corpus::{CharacterId, CharacterRegistry};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Default)]
pub struct PropagationDiagnostics {
    pub iterations: usize,
    /// Seeds whose insertion was cancelled by an existing higher-count fact.
    pub cancelled_seeds: Vec<SeedFact>,
    /// Ordered pairs whose relation type was replaced more than once
    /// (oscillation-capable arbitration chains).
    pub oscillating_pairs: Vec<(CharacterId, CharacterId)>,
}

pub fn propagate(
    seeds: &[SeedFact],
    rules: &RuleSet,
    registry: &CharacterRegistry,
) -> (KinshipGraph, PropagationDiagnostics) {
    let mut graph = KinshipGraph::new();
    let mut diagnostics = PropagationDiagnostics::default();
    let mut replacements: BTreeMap<(CharacterId, CharacterId), usize> = BTreeMap::new();

    for seed in seeds {
        let outcome = graph.propose(
            &seed.a1,
            seed.relation,
            &seed.a2,
            seed.count,
            Provenance::Seed,
            None,
            registry,
        );
        if outcome == Insertion::Cancelled {
            diagnostics.cancelled_seeds.push(seed.clone());
        }
        if outcome == Insertion::Replaced {
            *replacements.entry((seed.a1.clone(), seed.a2.clone())).or_default() += 1;
        }
    }

    loop {
        diagnostics.iterations += 1;
        let mut changed = false;
        for rule in rules.iter() {
            changed |= apply_rule(rule, &mut graph, registry, &mut replacements);
        }
        if !changed {
            break;
        }
    }

    diagnostics.oscillating_pairs = replacements
        .into_iter()
        .filter(|(_, n)| *n > 1)
        .map(|(pair, _)| pair)
        .collect();
    (graph, diagnostics)
}

fn apply_rule(
    rule: &Rule,
    graph: &mut KinshipGraph,
    registry: &CharacterRegistry,
    replacements: &mut BTreeMap<(CharacterId, CharacterId), usize>,
) -> bool {
    // Snapshot so each pass matches against a stable fact set; facts added
    // by this pass are picked up on the next fixed-point iteration.
    let snapshot: Vec<KinshipFact> = graph.facts().cloned().collect();
    let mut changed = false;

    match rule.antecedents.len() {
        1 => {
            let pattern = rule.antecedents[0];
            for fact in &snapshot {
                if fact.relation != pattern.relation {
                    continue;
                }
                let mut binding = Binding::new(rule.variable_count());
                binding.set(pattern.holder.0, &fact.a1);
                binding.set(pattern.target.0, &fact.a2);
                changed |= fire(rule, &binding, fact.count, &[fact.id], graph, registry, replacements);
            }
        }
        2 => {
            let first = rule.antecedents[0];
            let second = rule.antecedents[1];
            let candidates: Vec<&KinshipFact> = snapshot
                .iter()
                .filter(|f| f.relation == second.relation)
                .collect();
            for fact_a in snapshot.iter().filter(|f| f.relation == first.relation) {
                let mut base = Binding::new(rule.variable_count());
                base.set(first.holder.0, &fact_a.a1);
                base.set(first.target.0, &fact_a.a2);
                for fact_b in &candidates {
                    let mut binding = base.clone();
                    if !binding.unify(second.holder.0, &fact_b.a1)
                        || !binding.unify(second.target.0, &fact_b.a2)
                    {
                        continue;
                    }
                    changed |= fire(
                        rule,
                        &binding,
                        fact_a.count.max(fact_b.count),
                        &[fact_a.id, fact_b.id],
                        graph,
                        registry,
                        replacements,
                    );
                }
            }
        }
        _ => {}
    }
    changed
}

fn fire(
    rule: &Rule,
    binding: &Binding,
    count: u32,
    antecedent_ids: &[u64],
    graph: &mut KinshipGraph,
    registry: &CharacterRegistry,
    replacements: &mut BTreeMap<(CharacterId, CharacterId), usize>,
) -> bool {
    for (var, gender) in &rule.guards {
        match binding.get(var.0) {
            Some(id) if registry.gender(id) == *gender => {}
            _ => return false,
        }
    }
    let (Some(a1), Some(a2)) = (
        binding.get(rule.consequent.holder.0),
        binding.get(rule.consequent.target.0),
    ) else {
        return false;
    };
    let a1 = a1.clone();
    let a2 = a2.clone();
    let outcome = graph.propose(
        &a1,
        rule.consequent.relation,
        &a2,
        count,
        Provenance::Propagated,
        Some(Derivation {
            rule_id: rule.id.clone(),
            antecedents: antecedent_ids.to_vec(),
        }),
        registry,
    );
    if outcome == Insertion::Replaced {
        *replacements.entry((a1, a2)).or_default() += 1;
    }
    matches!(
        outcome,
        Insertion::Added | Insertion::CountRaised | Insertion::Replaced
    )
}

#[derive(Debug, Clone)]
struct Binding {
    slots: Vec<Option<CharacterId>>,
}

impl Binding {
    fn new(vars: usize) -> Self {
        Binding {
            slots: vec![None; vars],
        }
    }

    fn set(&mut self, var: u8, id: &CharacterId) {
        self.slots[var as usize] = Some(id.clone());
    }

    fn get(&self, var: u8) -> Option<&CharacterId> {
        self.slots.get(var as usize).and_then(|s| s.as_ref())
    }

    fn unify(&mut self, var: u8, id: &CharacterId) -> bool {
        match &self.slots[var as usize] {
            Some(existing) => existing == id,
            None => {
                self.slots[var as usize] = Some(id.clone());
                true
            }
        }
    }
}

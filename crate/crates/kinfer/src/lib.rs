//! Family-relation extraction from English narrative fiction.
//!
//! The pipeline attributes quoted utterances to speakers, detects
//! family-term vocatives inside them, extracts seed kinship triples from
//! speaker/addressee pairs, and expands the seeds with a rule-based
//! propagation engine that resolves contradictions by support counts.

pub mod attribution;
pub mod classify;
pub mod corpus;
pub mod extraction;
pub mod kinship;
pub mod metrics;
pub mod pipeline;
pub mod vocative;

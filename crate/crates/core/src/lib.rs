//! Low-resource text summarization toolkit.
//!
//! Two pipelines around a shared corpus/evaluation stack:
//!
//! 1. **mixsumm** — LLM-based data augmentation: cluster a small seed set by
//!    topic, prompt an LLM to synthesize new documents that mix topics from
//!    distant cluster pairs, then label the synthetic documents with the LLM
//!    (extractive sentence scoring, optionally followed by an abstractive
//!    paraphrase of the extract).
//! 2. **ppsl** — prompt-based pseudo-labeling for semi-supervised learning:
//!    train a teacher on the labeled pool, shortlist its most confident
//!    pseudo-labels, optionally relabel and score them with an LLM, and fold
//!    the best candidates back into the training set cycle after cycle.
//!
//! Everything runs offline against the deterministic mock client in
//! [`llm::mock`]; the same code paths talk to any OpenAI-compatible endpoint
//! via [`llm::http`].
//!
//! Data-parallel inner loops (k-means assignment, corpus scoring, pool
//! prediction) go through [`exec`], which uses rayon when the `parallel`
//! feature is enabled (the default) and falls back to sequential iteration
//! otherwise.

pub mod augment;
pub mod cluster;
pub mod corpus;
pub mod embed;
pub mod error;
pub mod eval;
pub mod exec;
pub mod llm;
pub mod ppsl;
pub mod seeding;
pub mod teacher;

pub use error::{Error, Result};

//! Tame finite partial orders.
//!
//! A finite strict partial order is *tame* when it contains no induced copy
//! of `R_{2,2}` (two disjoint 2-chains). This crate decides tameness,
//! quotients an order by the "same down-set and up-set" equivalence,
//! computes tame ranks, builds the canonical embedding `x ↦ (m(x), M(x))`
//! into the template order `R_λ`, and realizes any tame order as a
//! restriction of an inflated `R_λ`. Brute-force oracles and an exhaustive
//! small-instance harness cross-check all of it.

pub mod embedding;
pub mod enumerate;
pub mod error;
pub mod poset;
mod search;
pub mod set;
pub mod tame;
pub mod template;
pub mod text;

pub use embedding::{
    embeds_r22, find_embedding, find_embedding_with_budget, pattern_r22, pattern_s_n2,
    verify_embedding, Embedding, R22Witness,
};
pub use enumerate::{
    all_labeled_posets, random_poset, verify_proposition, verify_samples, CheckKind,
    Counterexample, GeneratorConfig, VerificationReport, VerifyOptions,
};
pub use error::{Error, Result};
pub use poset::{build_poset, Poset};
pub use set::ElementSet;
pub use tame::{
    canonical_embedding, check_claim_inequalities, claim_report, cu_family, d_comparable, d_family,
    frak_d_family, is_reduced, is_tame, m_value, minimal_rank_bruteforce, reduce, tame_rank,
    u_comparable, ClaimReport, M_value, ReductionResult, SetFamily, TameProfile, TameReport,
};
pub use template::{
    cummings_blocks, inflate, r_lambda, r_lambda_pairs, realize, BlockEnd, Inflation, OrderPair,
    Realization,
};
pub use text::{parse_poset, to_text};

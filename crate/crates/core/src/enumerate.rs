//! Exhaustive and seeded-random poset generation, and the finite-scope
//! verification harness built on them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::embedding::{embeds_r22, find_embedding_with_budget, pattern_r22, verify_embedding};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::set::ElementSet;
use crate::tame::{
    canonical_embedding, claim_report, d_comparable, d_family, frak_d_family, is_reduced,
    minimal_rank_bruteforce, reduce, tame_rank, u_comparable, BRUTE_FORCE_LIMIT,
};
use crate::template::R_LAMBDA_CAP;
use crate::text::to_text;

/// Largest `n` for [`all_labeled_posets`].
pub const LABELED_LIMIT: usize = 6;
/// Largest `n` for the default exhaustive verification.
pub const EXHAUSTIVE_DEFAULT_LIMIT: usize = 5;

/// Every labeled strict partial order on elements `"0"..n-1`, each exactly
/// once.
///
/// Orders on `0..k` are obtained from orders on `0..k-1` by choosing a
/// down-closed set `D` and an up-closed set `U` for the new element with
/// `D × U` already related. Every order on `0..k` restricts to a unique
/// order on `0..k-1`, so nothing is produced twice.
pub fn all_labeled_posets(n: usize) -> Result<LabeledPosets> {
    if n > LABELED_LIMIT {
        return Err(Error::SizeLimitExceeded {
            what: "labeled poset enumeration",
            limit: LABELED_LIMIT,
            got: n,
        });
    }
    let mut out = Vec::new();
    extend_orders(n, &Vec::new(), &mut out);
    Ok(LabeledPosets {
        n,
        rows: out.into_iter(),
    })
}

/// Up-set bitmask rows; bit `j` of `rows[i]` means `i < j`.
type Rows = Vec<u8>;

fn extend_orders(n: usize, rows: &Rows, out: &mut Vec<Rows>) {
    let k = rows.len();
    if k == n {
        out.push(rows.clone());
        return;
    }
    let members = |s: u8| (0..k).filter(move |&x| s & (1 << x) != 0);
    let downs: Vec<u8> = (0..k)
        .map(|x| {
            members(u8::MAX)
                .filter(|&z| rows[z] & (1 << x) != 0)
                .fold(0, |m, z| m | 1 << z)
        })
        .collect();
    for d in 0u8..(1 << k) {
        if !members(d).all(|x| downs[x] & !d == 0) {
            continue;
        }
        for u in 0u8..(1 << k) {
            let admissible = d & u == 0
                && members(u).all(|x| rows[x] & !u == 0)
                && members(d).all(|x| rows[x] & u == u);
            if !admissible {
                continue;
            }
            let mut child = rows.clone();
            for x in members(d) {
                child[x] |= 1 << k;
            }
            child.push(u);
            extend_orders(n, &child, out);
        }
    }
}

/// Iterator returned by [`all_labeled_posets`].
pub struct LabeledPosets {
    n: usize,
    rows: std::vec::IntoIter<Rows>,
}

impl Iterator for LabeledPosets {
    type Item = Poset;

    fn next(&mut self) -> Option<Poset> {
        let rows = self.rows.next()?;
        let labels = (0..self.n).map(|i| i.to_string()).collect();
        Some(
            Poset::from_closed_relation(labels, |i, j| rows[i] & (1 << j) != 0)
                .expect("enumerated relations are orders"),
        )
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.rows.size_hint()
    }
}

impl ExactSizeIterator for LabeledPosets {}

/// Parameters of [`random_poset`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub edge_probability: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.edge_probability) {
            return Err(Error::InvalidParameter(format!(
                "edge probability {} is outside [0, 1]",
                self.edge_probability
            )));
        }
        Ok(())
    }
}

/// Draws a uniformly random linear extension, keeps each forward pair with
/// probability `edge_probability`, and closes transitively. Labels are
/// `"0"..n-1`; the output depends only on the config.
pub fn random_poset(cfg: &GeneratorConfig) -> Result<Poset> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut perm: Vec<usize> = (0..cfg.n).collect();
    perm.shuffle(&mut rng);
    let mut pairs = Vec::new();
    for i in 0..cfg.n {
        for j in i + 1..cfg.n {
            if rng.gen_bool(cfg.edge_probability) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    let labels = (0..cfg.n).map(|i| i.to_string()).collect();
    Poset::from_index_pairs(labels, &pairs)
}

/// Individual checks run by the verification harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `R_{2,2}`-freeness ⟺ up-set comparability ⟺ down-set comparability.
    LemmaEquivalence,
    /// Fast witness detection agrees with generic embedding search.
    PatternSearchAgreement,
    /// The reduction embeds canonically into `R_{tame rank}`.
    CanonicalEmbedding,
    /// A non-tame order embeds into no `R_λ`, `λ ≤ n`.
    NonTameNotEmbeddable,
    /// Brute-force least embedding ordinal equals the tame rank.
    Minimality,
    ClaimInequalities,
    /// `rank ≤ tame rank ≤ |p|`.
    RankBounds,
    /// The reduction has the same tame rank.
    ReductionInvariance,
    /// `𝔇(S) = D(S) ∪ {∅}` on finite tame orders.
    FrakDDegeneracy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Position in the enumeration or sample sequence.
    pub index: usize,
    pub check: CheckKind,
    pub detail: String,
    /// The offending poset in text format.
    pub poset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub mode: &'static str,
    pub total: usize,
    pub tame_count: usize,
    pub reduced_tame_count: usize,
    pub minimality_checked: usize,
    /// Instances whose brute-force searches were skipped for size.
    pub brute_force_skipped: usize,
    /// In enumeration order.
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn first_counterexample(&self) -> Option<&Counterexample> {
        self.counterexamples.first()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub jobs: usize,
    /// Node cap for each brute-force embedding search.
    pub budget: Option<u64>,
    /// Allow exhaustive runs at `n = 6`.
    pub extended: bool,
}

#[derive(Default)]
struct Outcome {
    tame: bool,
    reduced: bool,
    minimality_checked: bool,
    brute_force_skipped: bool,
    failures: Vec<(CheckKind, String)>,
}

impl Outcome {
    fn check(&mut self, kind: CheckKind, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push((kind, detail()));
        }
    }

    /// Records errors other than an exhausted budget as failures.
    fn absorb<T>(&mut self, kind: CheckKind, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e @ Error::BudgetExceeded(_)) => Err(e),
            Err(e) => {
                self.failures.push((kind, e.to_string()));
                Ok(None)
            }
        }
    }
}

fn check_instance(p: &Poset, budget: Option<u64>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n = p.len();
    let brute = n <= BRUTE_FORCE_LIMIT;

    let witness = embeds_r22(p);
    let (uc, dc) = (u_comparable(p), d_comparable(p));
    out.check(
        CheckKind::LemmaEquivalence,
        witness.is_none() == uc && uc == dc,
        || {
            format!(
                "r22-free={} u-comparable={uc} d-comparable={dc}",
                witness.is_none()
            )
        },
    );

    if brute {
        let searched = find_embedding_with_budget(&pattern_r22(), p, budget)?;
        out.check(
            CheckKind::PatternSearchAgreement,
            searched.is_some() == witness.is_some(),
            || {
                format!(
                    "search found={} witness found={}",
                    searched.is_some(),
                    witness.is_some()
                )
            },
        );
    }
    if let Some(w) = witness {
        let ok = out.absorb(
            CheckKind::PatternSearchAgreement,
            verify_embedding(&w.to_embedding(p)),
        )?;
        out.check(CheckKind::PatternSearchAgreement, ok == Some(true), || {
            format!("witness {:?} is not an induced R22", w.labels(p))
        });
    }

    if witness.is_none() {
        out.tame = true;
        out.reduced = is_reduced(p);
        let Some(rank) = out.absorb(CheckKind::RankBounds, tame_rank(p))? else {
            return Ok(out);
        };
        let wf = p.well_founded_rank();
        out.check(CheckKind::RankBounds, wf <= rank && rank <= n, || {
            format!("rank {wf}, tame rank {rank}, size {n}")
        });

        let quotient = reduce(p).quotient;
        if let Some(qr) = out.absorb(CheckKind::ReductionInvariance, tame_rank(&quotient))? {
            out.check(CheckKind::ReductionInvariance, qr == rank, || {
                format!("tame rank {rank}, quotient tame rank {qr}")
            });
        }

        if let Some(e) = out.absorb(
            CheckKind::CanonicalEmbedding,
            canonical_embedding(&quotient),
        )? {
            let expected = rank * (rank + 1) / 2;
            out.check(
                CheckKind::CanonicalEmbedding,
                e.verified() && e.target().len() == expected,
                || {
                    format!(
                        "embedding verified={} into {} points",
                        e.verified(),
                        e.target().len()
                    )
                },
            );
        }

        if let Some(claims) = out.absorb(CheckKind::ClaimInequalities, claim_report(p))? {
            out.check(CheckKind::ClaimInequalities, claims.holds(), || {
                format!("{claims:?}")
            });
        }

        if n > 0 {
            let frak = frak_d_family(p);
            let empty = ElementSet::empty(n);
            let mut expected = d_family(p).members;
            if !expected.contains(&empty) {
                expected.push(empty);
            }
            let same = frak.len() == expected.len() && expected.iter().all(|d| frak.contains(d));
            out.check(CheckKind::FrakDDegeneracy, same, || {
                format!("𝔇 has {} members", frak.len())
            });
        }

        if out.reduced {
            if brute {
                out.minimality_checked = true;
                let least = minimal_rank_bruteforce(p, budget);
                if let Some(least) = out.absorb(CheckKind::Minimality, least)? {
                    out.check(CheckKind::Minimality, least == rank, || {
                        format!("least embedding ordinal {least}, tame rank {rank}")
                    });
                }
            } else {
                out.brute_force_skipped = true;
            }
        }
    } else if brute {
        for lambda in 0..=n {
            let target = crate::template::r_lambda(lambda)?;
            let found = find_embedding_with_budget(p, &target, budget)?;
            out.check(CheckKind::NonTameNotEmbeddable, found.is_none(), || {
                format!("non-tame order embeds into R_{lambda}")
            });
        }
    } else {
        out.brute_force_skipped = true;
    }
    Ok(out)
}

fn run_checks(
    n: usize,
    mode: &'static str,
    posets: Vec<Poset>,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let budget = opts.budget;
    let outcomes: Vec<Result<Outcome>> = if opts.jobs <= 1 {
        posets.iter().map(|p| check_instance(p, budget)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| {
            posets
                .par_iter()
                .map(|p| check_instance(p, budget))
                .collect()
        })
    };

    let mut report = VerificationReport {
        n,
        mode,
        total: posets.len(),
        tame_count: 0,
        reduced_tame_count: 0,
        minimality_checked: 0,
        brute_force_skipped: 0,
        counterexamples: Vec::new(),
    };
    for (index, (p, outcome)) in posets.iter().zip(outcomes).enumerate() {
        let outcome = outcome?;
        report.tame_count += usize::from(outcome.tame);
        report.reduced_tame_count += usize::from(outcome.tame && outcome.reduced);
        report.minimality_checked += usize::from(outcome.minimality_checked);
        report.brute_force_skipped += usize::from(outcome.brute_force_skipped);
        for (check, detail) in outcome.failures {
            report.counterexamples.push(Counterexample {
                index,
                check,
                detail,
                poset: to_text(p),
            });
        }
    }
    Ok(report)
}

/// Runs every finite-scope check on all labeled posets on `n` elements.
///
/// `n ≤ 5`, or `n ≤ 6` with `opts.extended`.
pub fn verify_proposition(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let limit = if opts.extended {
        LABELED_LIMIT
    } else {
        EXHAUSTIVE_DEFAULT_LIMIT
    };
    if n > limit {
        return Err(Error::SizeLimitExceeded {
            what: "exhaustive verification",
            limit,
            got: n,
        });
    }
    run_checks(n, "exhaustive", all_labeled_posets(n)?.collect(), opts)
}

/// The `i`-th generator config of a seeded sample sequence.
pub fn sample_configs(n: usize, samples: usize, seed: u64) -> Vec<GeneratorConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| GeneratorConfig {
            n,
            edge_probability: rng.gen::<f64>(),
            seed: rng.gen(),
        })
        .collect()
}

/// Runs the same checks on `samples` random posets of size `n`.
///
/// Brute-force searches are skipped above the brute-force size limit.
pub fn verify_samples(
    n: usize,
    samples: usize,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    if n > R_LAMBDA_CAP {
        return Err(Error::SizeLimitExceeded {
            what: "sampled verification",
            limit: R_LAMBDA_CAP,
            got: n,
        });
    }
    let posets = sample_configs(n, samples, seed)
        .iter()
        .map(random_poset)
        .collect::<Result<Vec<_>>>()?;
    run_checks(n, "samples", posets, opts)
}

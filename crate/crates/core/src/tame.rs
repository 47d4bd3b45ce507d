//! Tameness, reduction, the `D` / `CU` / `𝔇` set families, tame rank, and
//! the canonical embedding `x ↦ (m(x), M(x))` into `R_λ`.
//!
//! Only finite orders are handled. For those the infinite pattern
//! `S_{ω,2}` can never embed, so tameness is decided by `R_{2,2}` alone.

use std::collections::HashMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::embedding::{embeds_r22, find_embedding_with_budget, Embedding, R22Witness};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::set::ElementSet;
use crate::template::{r_lambda, r_lambda_index, OrderPair};

/// Largest poset accepted by [`minimal_rank_bruteforce`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Whether the up-sets `u(x)` are pairwise ⊆-comparable.
pub fn u_comparable(p: &Poset) -> bool {
    pairwise_comparable((0..p.len()).map(|x| p.up(x)).collect())
}

/// Whether the down-sets `d(x)` are pairwise ⊆-comparable.
pub fn d_comparable(p: &Poset) -> bool {
    pairwise_comparable((0..p.len()).map(|x| p.down(x)).collect())
}

fn pairwise_comparable(sets: Vec<&ElementSet>) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| a.is_comparable(b)))
}

fn not_tame(p: &Poset, w: R22Witness) -> Error {
    Error::NotTame {
        witness: w.labels(p),
    }
}

fn require_tame(p: &Poset) -> Result<()> {
    match embeds_r22(p) {
        Some(w) => Err(not_tame(p, w)),
        None => Ok(()),
    }
}

/// A duplicate-free family of element sets.
///
/// When the family is a ⊆-chain (`chain == true`) the members are listed in
/// strictly increasing order; otherwise they appear in first-occurrence
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    pub members: Vec<ElementSet>,
    pub chain: bool,
}

impl SetFamily {
    fn from_sets<I: IntoIterator<Item = ElementSet>>(sets: I) -> SetFamily {
        let mut members: Vec<ElementSet> = Vec::new();
        for s in sets {
            if !members.contains(&s) {
                members.push(s);
            }
        }
        let mut sorted = members.clone();
        // ⊆-chains are ordered by cardinality
        sorted.sort_by_key(ElementSet::len);
        let chain = sorted.windows(2).all(|w| w[0].is_proper_subset(&w[1]));
        if chain {
            members = sorted;
        }
        SetFamily { members, chain }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &ElementSet) -> bool {
        self.members.contains(s)
    }

    /// Number of members strictly contained in `s`.
    pub fn count_proper_subsets_of(&self, s: &ElementSet) -> usize {
        self.members
            .iter()
            .filter(|m| m.is_proper_subset(s))
            .count()
    }
}

/// `D(S) = { d(x) | x ∈ S }`.
pub fn d_family(p: &Poset) -> SetFamily {
    SetFamily::from_sets((0..p.len()).map(|x| p.down(x).clone()))
}

/// `CU(S) = { cu(x) | x ∈ S }`.
pub fn cu_family(p: &Poset) -> SetFamily {
    SetFamily::from_sets((0..p.len()).map(|x| p.cu(x)))
}

/// `𝔇(S)`: `D(S)` together with the union of every ⊊-downward-closed
/// subfamily of `D(S)`.
///
/// The union of an arbitrary subfamily equals the union of its downward
/// closure, so the unions of downward-closed subfamilies are exactly the
/// unions of arbitrary subfamilies. The result is therefore the closure of
/// `D(S) ∪ {∅}` under binary union.
pub fn frak_d_family(p: &Poset) -> SetFamily {
    let base = d_family(p).members;
    let mut closed: Vec<ElementSet> = vec![ElementSet::empty(p.len())];
    for d in &base {
        if !closed.contains(d) {
            closed.push(d.clone());
        }
    }
    let mut frontier = closed.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &base {
                let u = a.union(b);
                if !closed.contains(&u) && !next.contains(&u) {
                    next.push(u);
                }
            }
        }
        closed.extend(next.iter().cloned());
        frontier = next;
    }
    SetFamily::from_sets(closed)
}

/// Tame rank: the order type of `(CU(S), ⊊)`, here its cardinality.
pub fn tame_rank(p: &Poset) -> Result<usize> {
    require_tame(p)?;
    Ok(cu_family(p).len())
}

/// The families of a tame order and its `m` / `M` coordinates.
#[derive(Clone, Debug)]
pub struct TameProfile {
    pub frak_d: SetFamily,
    pub cu: SetFamily,
    /// `m(x)`: members of `𝔇(S)` strictly below `d(x)`.
    pub m: Vec<usize>,
    /// `M(x)`: members of `CU(S)` strictly below `cu(x)`.
    pub big_m: Vec<usize>,
}

impl TameProfile {
    pub fn new(p: &Poset) -> Result<TameProfile> {
        require_tame(p)?;
        let frak_d = frak_d_family(p);
        let cu = cu_family(p);
        let m = (0..p.len())
            .map(|x| frak_d.count_proper_subsets_of(p.down(x)))
            .collect();
        let big_m = (0..p.len())
            .map(|x| cu.count_proper_subsets_of(&p.cu(x)))
            .collect();
        Ok(TameProfile {
            frak_d,
            cu,
            m,
            big_m,
        })
    }

    pub fn tame_rank(&self) -> usize {
        self.cu.len()
    }

    pub fn coordinates(&self, x: usize) -> OrderPair {
        OrderPair {
            alpha: self.m[x],
            beta: self.big_m[x],
        }
    }
}

pub fn m_value(p: &Poset, x: usize) -> Result<usize> {
    check_index(p, x)?;
    Ok(TameProfile::new(p)?.m[x])
}

#[allow(non_snake_case)]
pub fn M_value(p: &Poset, x: usize) -> Result<usize> {
    check_index(p, x)?;
    Ok(TameProfile::new(p)?.big_m[x])
}

fn check_index(p: &Poset, x: usize) -> Result<()> {
    if x < p.len() {
        Ok(())
    } else {
        Err(Error::UnknownElement(x.to_string()))
    }
}

/// The `~_S` quotient and its bookkeeping.
#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub quotient: Poset,
    /// Class index of every element of the input.
    pub class_of: Vec<usize>,
    /// Least element index of each class.
    pub representatives: Vec<usize>,
    /// Members of each class in ascending index order.
    pub classes: Vec<Vec<usize>>,
}

impl ReductionResult {
    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// First pair of distinct elements sharing `(d(x), u(x))`, if any.
pub fn duplicate_signature(p: &Poset) -> Option<(usize, usize)> {
    let mut seen: HashMap<(&ElementSet, &ElementSet), usize> = HashMap::new();
    for x in 0..p.len() {
        if let Some(&y) = seen.get(&(p.down(x), p.up(x))) {
            return Some((y, x));
        }
        seen.insert((p.down(x), p.up(x)), x);
    }
    None
}

pub fn is_reduced(p: &Poset) -> bool {
    duplicate_signature(p).is_none()
}

/// Quotient by `x ~ y ⟺ (d(x), u(x)) = (d(y), u(y))`.
///
/// Classes are numbered in order of their least element, which also labels
/// the quotient element.
pub fn reduce(p: &Poset) -> ReductionResult {
    let mut by_signature: HashMap<(&ElementSet, &ElementSet), usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(p.len());
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..p.len() {
        let next = classes.len();
        let c = *by_signature.entry((p.down(x), p.up(x))).or_insert(next);
        if c == next {
            classes.push(Vec::new());
        }
        classes[c].push(x);
        class_of.push(c);
    }
    let representatives: Vec<usize> = classes.iter().map(|c| c[0]).collect();

    #[cfg(debug_assertions)]
    for a in 0..classes.len() {
        for b in 0..classes.len() {
            let rep = p.less(representatives[a], representatives[b]);
            debug_assert!(
                classes[a]
                    .iter()
                    .all(|&x| classes[b].iter().all(|&y| p.less(x, y) == rep)),
                "quotient relation is not well defined"
            );
        }
    }

    let labels = representatives
        .iter()
        .map(|&r| p.label(r).to_string())
        .collect();
    let quotient = Poset::from_closed_relation(labels, |a, b| {
        p.less(representatives[a], representatives[b])
    })
    .expect("representative labels are distinct");
    ReductionResult {
        quotient,
        class_of,
        representatives,
        classes,
    }
}

/// `π(x) = (m(x), M(x))` into `R_λ` with `λ` the tame rank.
///
/// Requires a reduced tame order. The returned embedding has been verified;
/// a failed verification is reported as `InternalInvariantViolation`.
pub fn canonical_embedding(p: &Poset) -> Result<Embedding> {
    let profile = TameProfile::new(p)?;
    if let Some((a, b)) = duplicate_signature(p) {
        return Err(Error::NotReduced(p.label(a).into(), p.label(b).into()));
    }
    canonical_from_profile(p, &profile)
}

fn canonical_from_profile(p: &Poset, profile: &TameProfile) -> Result<Embedding> {
    let lambda = profile.tame_rank();
    let mut map = Vec::with_capacity(p.len());
    for x in 0..p.len() {
        let pair = profile.coordinates(x);
        if pair.alpha > pair.beta || pair.beta >= lambda {
            return Err(Error::InternalInvariantViolation(format!(
                "({}, {}) for `{}` lies outside R_{lambda}",
                pair.alpha,
                pair.beta,
                p.label(x)
            )));
        }
        map.push(r_lambda_index(lambda, pair));
    }
    let mut e = Embedding::new(p.clone(), r_lambda(lambda)?, map);
    if !e.verify()? {
        return Err(Error::InternalInvariantViolation(
            "canonical map (m, M) is not an embedding".into(),
        ));
    }
    Ok(e)
}

/// Outcome of the tameness test.
///
/// For finite orders only `R_{2,2}` is searched: the infinite pattern
/// `S_{ω,2}` cannot embed into a finite order, so its absence is vacuous.
#[derive(Clone, Debug)]
pub struct TameReport {
    pub tame: bool,
    /// `(x, x', y, y')` with `x < y`, `x' < y'`; present iff not tame.
    pub witness: Option<[String; 4]>,
    /// Present iff tame.
    pub tame_rank: Option<usize>,
    /// Present iff tame and reduced.
    pub canonical: Option<Embedding>,
    /// `(m, M)` per element; present iff tame.
    pub coordinates: Option<Vec<OrderPair>>,
    labels: Vec<String>,
}

pub fn is_tame(p: &Poset) -> Result<TameReport> {
    let labels = p.labels().to_vec();
    if let Some(w) = embeds_r22(p) {
        return Ok(TameReport {
            tame: false,
            witness: Some(w.labels(p)),
            tame_rank: None,
            canonical: None,
            coordinates: None,
            labels,
        });
    }
    let profile = TameProfile::new(p)?;
    let canonical = if is_reduced(p) {
        Some(canonical_from_profile(p, &profile)?)
    } else {
        None
    };
    Ok(TameReport {
        tame: true,
        witness: None,
        tame_rank: Some(profile.tame_rank()),
        canonical,
        coordinates: Some((0..p.len()).map(|x| profile.coordinates(x)).collect()),
        labels,
    })
}

impl Serialize for TameReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Coords<'a>(&'a [String], &'a [OrderPair]);
        impl Serialize for Coords<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(self.0.len()))?;
                for (l, c) in self.0.iter().zip(self.1) {
                    m.serialize_entry(l, &[c.alpha, c.beta])?;
                }
                m.end()
            }
        }
        let mut st = serializer.serialize_struct("TameReport", 4)?;
        st.serialize_field("tame", &self.tame)?;
        if let Some(w) = &self.witness {
            st.serialize_field("witness", w)?;
        }
        if let Some(r) = self.tame_rank {
            st.serialize_field("tame_rank", &r)?;
        }
        if self.canonical.is_some() {
            let coords = self.coordinates.as_deref().unwrap_or_default();
            st.serialize_field("embedding", &Coords(&self.labels, coords))?;
        }
        st.end()
    }
}

/// Least `λ` such that `p` embeds into `R_λ`, by ascending exhaustive search.
///
/// Independent of the `(m, M)` construction; limited to
/// [`BRUTE_FORCE_LIMIT`] elements.
pub fn minimal_rank_bruteforce(p: &Poset, budget: Option<u64>) -> Result<usize> {
    if p.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimitExceeded {
            what: "brute-force minimal rank",
            limit: BRUTE_FORCE_LIMIT,
            got: p.len(),
        });
    }
    require_tame(p)?;
    if let Some((a, b)) = duplicate_signature(p) {
        return Err(Error::NotReduced(p.label(a).into(), p.label(b).into()));
    }
    for lambda in 0..=p.len() {
        if find_embedding_with_budget(p, &r_lambda(lambda)?, budget)?.is_some() {
            return Ok(lambda);
        }
    }
    Err(Error::InternalInvariantViolation(format!(
        "tame reduced order on {} elements embeds into no R_λ with λ ≤ {}",
        p.len(),
        p.len()
    )))
}

/// Pairs violating each inequality certified by the embedding proof.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    /// `x` with `m(x) > M(x)`.
    pub lower_exceeds_upper: Vec<usize>,
    /// `x < y` with `M(x) ≥ m(y)`.
    pub related_not_separated: Vec<(usize, usize)>,
    /// `x ⊀ y`, `x` and `y` incomparable or equal, with `m(y) > M(x)`.
    pub unrelated_overlap: Vec<(usize, usize)>,
    /// `y < x` with `m(y) > M(x)`; the literal quantifier `x ⊀ y` covers
    /// this case as well, so it is tracked separately.
    pub reversed_overlap: Vec<(usize, usize)>,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        self.lower_exceeds_upper.is_empty()
            && self.related_not_separated.is_empty()
            && self.unrelated_overlap.is_empty()
            && self.reversed_overlap.is_empty()
    }
}

pub fn claim_report(p: &Poset) -> Result<ClaimReport> {
    let prof = TameProfile::new(p)?;
    let (m, big_m) = (&prof.m, &prof.big_m);
    let mut report = ClaimReport::default();
    for x in 0..p.len() {
        if m[x] > big_m[x] {
            report.lower_exceeds_upper.push(x);
        }
        for y in 0..p.len() {
            if p.less(x, y) {
                if big_m[x] >= m[y] {
                    report.related_not_separated.push((x, y));
                }
            } else if m[y] > big_m[x] {
                if p.less(y, x) {
                    report.reversed_overlap.push((x, y));
                } else {
                    report.unrelated_overlap.push((x, y));
                }
            }
        }
    }
    Ok(report)
}

/// `m(x) ≤ M(x)` for all `x`, `M(x) < m(y)` for all `x < y`, and
/// `m(y) ≤ M(x)` for all `x ⊀ y`.
pub fn check_claim_inequalities(p: &Poset) -> Result<bool> {
    Ok(claim_report(p)?.holds())
}

//! Order embeddings and the forbidden patterns.
//!
//! An embedding is an injection `π` with `x < y ⟺ π(x) < π(y)`: it preserves
//! both comparability and incomparability, so the image is an induced
//! suborder isomorphic to the source.

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::search::EmbeddingSearch;
use crate::set::ElementSet;

/// An injective element map between two posets.
///
/// `verified` is only ever set by [`Embedding::verify`] after the two-way
/// order condition has been checked on every pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: Poset,
    target: Poset,
    map: Vec<usize>,
    verified: bool,
}

impl Embedding {
    /// An unverified map; `map[x]` is the target index of source element `x`.
    pub fn new(source: Poset, target: Poset, map: Vec<usize>) -> Embedding {
        Embedding {
            source,
            target,
            map,
            verified: false,
        }
    }

    pub fn from_labels<S: AsRef<str>, T: AsRef<str>>(
        source: Poset,
        target: Poset,
        pairs: &[(S, T)],
    ) -> Result<Embedding> {
        let mut map = vec![usize::MAX; source.len()];
        for (s, t) in pairs {
            map[source.index_of(s.as_ref())?] = target.index_of(t.as_ref())?;
        }
        if let Some(x) = map.iter().position(|&t| t == usize::MAX) {
            return Err(Error::InvalidParameter(format!(
                "map is not defined on `{}`",
                source.label(x)
            )));
        }
        Ok(Embedding::new(source, target, map))
    }

    /// Runs [`verify_embedding`] and records the outcome.
    pub fn verify(&mut self) -> Result<bool> {
        self.verified = verify_embedding(self)?;
        Ok(self.verified)
    }

    pub fn verified(&self) -> bool {
        self.verified
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Image labels in source order.
    pub fn label_pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.map
            .iter()
            .enumerate()
            .map(|(x, &t)| (self.source.label(x), self.target.label(t)))
    }

    /// The image as a subset of the target.
    pub fn image_set(&self) -> ElementSet {
        ElementSet::from_indices(self.target.len(), self.map.iter().copied())
    }

    /// `next ∘ self`, returned unverified.
    pub fn compose(&self, next: &Embedding) -> Result<Embedding> {
        if self.target != next.source {
            return Err(Error::InvalidParameter(
                "composition requires matching target and source".into(),
            ));
        }
        let map = self.map.iter().map(|&y| next.map[y]).collect();
        Ok(Embedding::new(
            self.source.clone(),
            next.target.clone(),
            map,
        ))
    }
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Pairs<'a>(&'a Embedding);
        impl Serialize for Pairs<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(self.0.map.len()))?;
                for (s, t) in self.0.label_pairs() {
                    m.serialize_entry(s, t)?;
                }
                m.end()
            }
        }
        let mut st = serializer.serialize_struct("Embedding", 3)?;
        st.serialize_field("source", self.source.labels())?;
        st.serialize_field("target", self.target.labels())?;
        st.serialize_field("map", &Pairs(self))?;
        st.end()
    }
}

/// True iff the map is injective and `x < y ⟺ π(x) < π(y)` for all pairs.
pub fn verify_embedding(e: &Embedding) -> Result<bool> {
    if e.map.len() != e.source.len() {
        return Err(Error::InvalidParameter(format!(
            "map has {} entries for {} source elements",
            e.map.len(),
            e.source.len()
        )));
    }
    if let Some(&bad) = e.map.iter().find(|&&t| t >= e.target.len()) {
        return Err(Error::UnknownElement(bad.to_string()));
    }
    let mut seen = ElementSet::empty(e.target.len());
    for &t in &e.map {
        if seen.contains(t) {
            return Ok(false);
        }
        seen.insert(t);
    }
    for x in 0..e.source.len() {
        for y in 0..e.source.len() {
            if e.source.less(x, y) != e.target.less(e.map[x], e.map[y]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lexicographically least embedding of `pattern` into `target`, if any.
pub fn find_embedding(pattern: &Poset, target: &Poset) -> Option<Embedding> {
    find_embedding_with_budget(pattern, target, None)
        .expect("unbounded search cannot exceed a budget")
}

/// As [`find_embedding`], failing with `BudgetExceeded` once more than
/// `budget` candidate assignments have been tried.
pub fn find_embedding_with_budget(
    pattern: &Poset,
    target: &Poset,
    budget: Option<u64>,
) -> Result<Option<Embedding>> {
    let Some(map) = EmbeddingSearch::new(pattern, target).budget(budget).run()? else {
        return Ok(None);
    };
    let mut e = Embedding::new(pattern.clone(), target.clone(), map);
    if !e.verify()? {
        return Err(Error::InternalInvariantViolation(
            "search returned a map that does not verify".into(),
        ));
    }
    Ok(Some(e))
}

/// The four-element order of two disjoint 2-chains, `x0 < y0` and `x1 < y1`.
pub fn pattern_r22() -> Poset {
    Poset::build(&["x0", "x1", "y0", "y1"], &[("x0", "y0"), ("x1", "y1")])
        .expect("pattern is a valid order")
}

/// Truncation of the infinite pattern `S_{ω,2}` to indices below `n`:
/// `x_m < y_k` iff `m ≥ k`.
pub fn pattern_s_n2(n: usize) -> Result<Poset> {
    if n == 0 {
        return Err(Error::InvalidParameter("pattern_s_n2 needs n ≥ 1".into()));
    }
    let labels = (0..n)
        .map(|m| format!("x{m}"))
        .chain((0..n).map(|k| format!("y{k}")))
        .collect();
    // x_m is index m, y_k is index n + k
    Poset::from_closed_relation(labels, |a, b| a < n && b >= n && a >= b - n)
}

/// Indices `(x, x', y, y')` of an induced copy of `R_{2,2}`:
/// `x < y`, `x' < y'`, and no other relations among the four.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct R22Witness {
    pub x: usize,
    pub x_prime: usize,
    pub y: usize,
    pub y_prime: usize,
}

impl R22Witness {
    pub fn as_array(&self) -> [usize; 4] {
        [self.x, self.x_prime, self.y, self.y_prime]
    }

    pub fn labels(&self, p: &Poset) -> [String; 4] {
        self.as_array().map(|i| p.label(i).to_string())
    }

    /// The witness as an embedding of [`pattern_r22`] into `p`, unverified.
    pub fn to_embedding(&self, p: &Poset) -> Embedding {
        // pattern order: x0 x1 y0 y1
        Embedding::new(pattern_r22(), p.clone(), self.as_array().to_vec())
    }
}

/// Detects `R_{2,2}` through up-set comparability.
///
/// Takes the least pair `x < x'` (by index) whose up-sets are
/// ⊆-incomparable, then the least `y ∈ u(x) \ u(x')` and the least
/// `y' ∈ u(x') \ u(x)`. Those four elements always induce `R_{2,2}`.
pub fn embeds_r22(p: &Poset) -> Option<R22Witness> {
    for x in 0..p.len() {
        for x_prime in x + 1..p.len() {
            let (ux, uxp) = (p.up(x), p.up(x_prime));
            if ux.is_comparable(uxp) {
                continue;
            }
            let y = ux.difference(uxp).first()?;
            let y_prime = uxp.difference(ux).first()?;
            return Some(R22Witness {
                x,
                x_prime,
                y,
                y_prime,
            });
        }
    }
    None
}

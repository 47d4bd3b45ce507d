//! The template orders `R_λ`, class inflation, and realization of a tame
//! order as a restriction of an inflated `R_λ`.
//!
//! `R_λ` has elements `(α, β)` with `α ≤ β < λ`, ordered by
//! `(α, β) < (α', β') ⟺ β < α'`. Elements are listed in lexicographic
//! `(α, β)` order and labeled `"α,β"`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::set::ElementSet;
use crate::tame::{canonical_embedding, reduce, tame_rank};

/// Largest `λ` accepted by [`r_lambda`].
pub const R_LAMBDA_CAP: usize = 64;

/// An element `(α, β)` of `R_λ`, `α ≤ β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrderPair {
    pub alpha: usize,
    pub beta: usize,
}

impl OrderPair {
    pub fn new(alpha: usize, beta: usize) -> OrderPair {
        debug_assert!(alpha <= beta);
        OrderPair { alpha, beta }
    }

    /// The template order relation.
    pub fn less(self, other: OrderPair) -> bool {
        self.beta < other.alpha
    }
}

impl fmt::Display for OrderPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.alpha, self.beta)
    }
}

/// Elements of `R_λ` in index order.
pub fn r_lambda_pairs(lambda: usize) -> Vec<OrderPair> {
    (0..lambda)
        .flat_map(|a| (a..lambda).map(move |b| OrderPair::new(a, b)))
        .collect()
}

/// Index of `pair` in [`r_lambda`]`(lambda)`.
pub fn r_lambda_index(lambda: usize, pair: OrderPair) -> usize {
    let a = pair.alpha;
    // rows 0..a hold λ, λ-1, ..., λ-a+1 entries
    a * lambda - a * a.saturating_sub(1) / 2 + (pair.beta - a)
}

pub fn r_lambda(lambda: usize) -> Result<Poset> {
    if lambda > R_LAMBDA_CAP {
        return Err(Error::SizeLimitExceeded {
            what: "R_lambda",
            limit: R_LAMBDA_CAP,
            got: lambda,
        });
    }
    let pairs = r_lambda_pairs(lambda);
    let labels = pairs.iter().map(OrderPair::to_string).collect();
    Poset::from_closed_relation(labels, |i, j| pairs[i].less(pairs[j]))
}

/// An inflated poset together with its projection onto the base.
#[derive(Clone, Debug)]
pub struct Inflation {
    pub poset: Poset,
    /// Base element of every copy.
    pub projection: Vec<usize>,
    /// Copy number `μ` of every element.
    pub copy: Vec<usize>,
}

impl Inflation {
    /// Index of copy `copy` of base element `base`, if it exists.
    pub fn index_of_copy(&self, base: usize, copy: usize) -> Option<usize> {
        self.projection
            .iter()
            .zip(&self.copy)
            .position(|(&b, &c)| b == base && c == copy)
    }
}

/// Replaces each base element `x` by `multiplicity[x]` pairwise incomparable
/// copies labeled `"x#μ"`, with `(x, i) < (y, j) ⟺ x < y`.
pub fn inflate(base: &Poset, multiplicity: &[usize]) -> Result<Inflation> {
    if multiplicity.len() != base.len() {
        return Err(Error::InvalidParameter(format!(
            "{} multiplicities for {} elements",
            multiplicity.len(),
            base.len()
        )));
    }
    if let Some(x) = multiplicity.iter().position(|&m| m == 0) {
        return Err(Error::InvalidMultiplicity(base.label(x).to_string()));
    }
    let mut projection = Vec::new();
    let mut copy = Vec::new();
    let mut labels = Vec::new();
    for (x, &mult) in multiplicity.iter().enumerate() {
        for mu in 0..mult {
            projection.push(x);
            copy.push(mu);
            labels.push(format!("{}#{mu}", base.label(x)));
        }
    }
    let poset =
        Poset::from_closed_relation(labels, |i, j| base.less(projection[i], projection[j]))?;
    Ok(Inflation {
        poset,
        projection,
        copy,
    })
}

/// A tame order realized inside an inflated `R_λ`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub lambda: usize,
    /// `π` from the reduction into `R_λ`.
    pub canonical: Embedding,
    pub inflated: Inflation,
    /// The chosen points `W` of the inflated template.
    pub window: ElementSet,
    /// Isomorphism from the input onto `restrict(inflated, W)`; verified.
    pub iso: Embedding,
}

/// Reduce, embed the reduction canonically into `R_λ`, inflate each image
/// point to the size of its class, and restrict to the used copies.
///
/// Copies are handed out in ascending element order within each class. Only
/// the order-restriction conclusion of the construction is modeled.
pub fn realize(s: &Poset) -> Result<Realization> {
    let lambda = tame_rank(s)?;
    let reduction = reduce(s);
    let canonical = canonical_embedding(&reduction.quotient)?;
    let template = canonical.target();

    let mut multiplicity = vec![1usize; template.len()];
    for (class, members) in reduction.classes.iter().enumerate() {
        multiplicity[canonical.image(class)] = members.len();
    }
    let inflated = inflate(template, &multiplicity)?;

    let mut point_of = vec![0usize; s.len()];
    for (class, members) in reduction.classes.iter().enumerate() {
        let base = canonical.image(class);
        for (mu, &x) in members.iter().enumerate() {
            point_of[x] = inflated
                .index_of_copy(base, mu)
                .expect("multiplicity covers every class member");
        }
    }
    let window = ElementSet::from_indices(inflated.poset.len(), point_of.iter().copied());
    let restricted = inflated.poset.restrict(&window)?;
    // position of each window point inside the restriction
    let rank_in_window: Vec<usize> = {
        let mut r = vec![usize::MAX; inflated.poset.len()];
        for (i, w) in window.iter().enumerate() {
            r[w] = i;
        }
        r
    };
    let map = point_of.iter().map(|&w| rank_in_window[w]).collect();
    let mut iso = Embedding::new(s.clone(), restricted, map);
    if !iso.verify()? || iso.target().len() != s.len() {
        return Err(Error::InternalInvariantViolation(
            "restriction of the inflated template is not isomorphic to the input".into(),
        ));
    }
    Ok(Realization {
        lambda,
        canonical,
        inflated,
        window,
        iso,
    })
}

impl Serialize for Realization {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let window: Vec<&str> = self
            .window
            .iter()
            .map(|w| self.inflated.poset.label(w))
            .collect();
        let mut st = serializer.serialize_struct("Realization", 4)?;
        st.serialize_field("lambda", &self.lambda)?;
        st.serialize_field("inflated_size", &self.inflated.poset.len())?;
        st.serialize_field("window", &window)?;
        st.serialize_field("iso", &self.iso)?;
        st.end()
    }
}

/// Upper end of a Cummings block: a finite ordinal or `∞`, which exceeds
/// every natural.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockEnd {
    Finite(usize),
    Infinite,
}

impl fmt::Display for BlockEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockEnd::Finite(b) => write!(f, "{b}"),
            BlockEnd::Infinite => f.write_str("inf"),
        }
    }
}

/// Blocks `(α, β)` with `α < o` and `β ∈ {α+1, …, o-1} ∪ {∞}`, ordered by
/// `(α', β') < (α, β) ⟺ β' ≤ α`.
pub fn cummings_blocks(o: usize) -> Result<Poset> {
    if o == 0 {
        return Err(Error::InvalidParameter(
            "cummings_blocks needs o ≥ 1".into(),
        ));
    }
    let blocks: Vec<(usize, BlockEnd)> = (0..o)
        .flat_map(|a| {
            (a + 1..o)
                .map(BlockEnd::Finite)
                .chain(std::iter::once(BlockEnd::Infinite))
                .map(move |b| (a, b))
        })
        .collect();
    let labels = blocks.iter().map(|(a, b)| format!("{a},{b}")).collect();
    Poset::from_closed_relation(labels, |i, j| match blocks[i].1 {
        BlockEnd::Finite(b) => b <= blocks[j].0,
        BlockEnd::Infinite => false,
    })
}

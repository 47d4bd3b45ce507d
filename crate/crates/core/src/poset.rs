//! Finite strict partial orders.
//!
//! A [`Poset`] owns its element labels and keeps the strict relation
//! transitively closed, both as up-set rows and down-set rows. All
//! computation uses dense element indices; labels are only consulted at the
//! API boundary.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::search;
use crate::set::ElementSet;

/// Largest poset accepted by [`Poset::is_isomorphic`].
pub const ISOMORPHISM_LIMIT: usize = 30;

/// A finite strict partial order with labeled elements.
#[derive(Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[x]` = `{ z | x < z }`
    up: Vec<ElementSet>,
    /// `down[x]` = `{ z | z < x }`
    down: Vec<ElementSet>,
}

impl Poset {
    /// Builds the poset generated by `pairs`, where `(a, b)` means `a < b`.
    ///
    /// The pairs need not be transitively closed.
    pub fn build<S: AsRef<str>, T: AsRef<str>>(elements: &[S], pairs: &[(T, T)]) -> Result<Poset> {
        let labels: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let index = index_labels(&labels)?;
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let a = lookup(&index, a.as_ref())?;
            let b = lookup(&index, b.as_ref())?;
            edges.push((a, b));
        }
        Poset::close(labels, index, &edges)
    }

    /// Builds a poset from labels and index pairs `(a, b)` meaning `a < b`.
    pub fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let index = index_labels(&labels)?;
        for &(a, b) in pairs {
            for i in [a, b] {
                if i >= labels.len() {
                    return Err(Error::UnknownElement(i.to_string()));
                }
            }
        }
        Poset::close(labels, index, pairs)
    }

    /// Builds a poset from a relation predicate that is already a strict
    /// partial order. Used by the generators whose rules are closed by
    /// construction; debug builds re-check the order axioms.
    pub(crate) fn from_closed_relation<F>(labels: Vec<String>, less: F) -> Result<Poset>
    where
        F: Fn(usize, usize) -> bool,
    {
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut up = vec![ElementSet::empty(n); n];
        let mut down = vec![ElementSet::empty(n); n];
        for x in 0..n {
            for y in 0..n {
                if x != y && less(x, y) {
                    up[x].insert(y);
                    down[y].insert(x);
                }
            }
        }
        let poset = Poset {
            labels,
            index,
            up,
            down,
        };
        debug_assert!(
            poset.check_axioms().is_ok(),
            "generator produced a non-order"
        );
        Ok(poset)
    }

    fn close(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        edges: &[(usize, usize)],
    ) -> Result<Poset> {
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(a, b) in edges {
            if a == b {
                return Err(Error::CycleDetected(labels[a].clone()));
            }
            succ[a].push(b);
            indegree[b] += 1;
        }

        // Kahn's algorithm; anything left over lies on or behind a cycle.
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).rev().filter(|&x| indegree[x] == 0).collect();
        while let Some(x) = ready.pop() {
            order.push(x);
            for &y in &succ[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.push(y);
                }
            }
        }
        if order.len() < n {
            let on_cycle = (0..n)
                .filter(|&x| indegree[x] > 0)
                .find(|&x| reaches(&succ, x, x))
                .expect("unprocessed vertices imply a cycle");
            return Err(Error::CycleDetected(labels[on_cycle].clone()));
        }

        let mut up = vec![ElementSet::empty(n); n];
        for &x in order.iter().rev() {
            let mut row = ElementSet::empty(n);
            for &y in &succ[x] {
                row.insert(y);
                row.union_with(&up[y]);
            }
            up[x] = row;
        }
        let mut down = vec![ElementSet::empty(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        Ok(Poset {
            labels,
            index,
            up,
            down,
        })
    }

    /// The empty order.
    pub fn empty() -> Poset {
        Poset {
            labels: Vec::new(),
            index: HashMap::new(),
            up: Vec::new(),
            down: Vec::new(),
        }
    }

    /// An antichain on the given labels.
    pub fn antichain<S: AsRef<str>>(elements: &[S]) -> Result<Poset> {
        Poset::build::<S, &str>(elements, &[])
    }

    /// A chain `e0 < e1 < ...` in the given label order.
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<Poset> {
        let pairs: Vec<(&str, &str)> = elements
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        Poset::build(elements, &pairs)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        lookup(&self.index, label)
    }

    /// `x < y` in the strict order.
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `x` and `y` are distinct and related in either direction.
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.less(x, y) || self.less(y, x)
    }

    /// Strict down-set `d(x)`.
    pub fn down(&self, x: usize) -> &ElementSet {
        &self.down[x]
    }

    /// Strict up-set `u(x)`.
    pub fn up(&self, x: usize) -> &ElementSet {
        &self.up[x]
    }

    /// `cu(x)`: everything not strictly above `x`, including `x` itself.
    pub fn cu(&self, x: usize) -> ElementSet {
        self.up[x].complement()
    }

    pub fn down_set(&self, label: &str) -> Result<ElementSet> {
        Ok(self.down[self.index_of(label)?].clone())
    }

    pub fn up_set(&self, label: &str) -> Result<ElementSet> {
        Ok(self.up[self.index_of(label)?].clone())
    }

    pub fn cu_set(&self, label: &str) -> Result<ElementSet> {
        Ok(self.cu(self.index_of(label)?))
    }

    /// Every related pair `(x, y)` with `x < y`, in ascending `(x, y)` order.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |y| (x, y)))
    }

    pub fn relation_count(&self) -> usize {
        self.up.iter().map(ElementSet::len).sum()
    }

    /// Covering pairs of the order (its transitive reduction).
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].iter() {
                // y covers x unless some z sits strictly between them
                if self.up[x].intersection(&self.down[y]).is_empty() {
                    covers.push((x, y));
                }
            }
        }
        covers
    }

    /// Set of all element indices.
    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// Builds an [`ElementSet`] from labels.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        let mut set = ElementSet::empty(self.len());
        for l in labels {
            set.insert(self.index_of(l.as_ref())?);
        }
        Ok(set)
    }

    /// The suborder induced on `subset`, keeping the original label order.
    pub fn restrict(&self, subset: &ElementSet) -> Result<Poset> {
        if subset.universe() != self.len() {
            return Err(Error::UnknownElement(format!(
                "subset over {} elements applied to a poset of {}",
                subset.universe(),
                self.len()
            )));
        }
        let kept: Vec<usize> = subset.iter().collect();
        let labels = kept.iter().map(|&x| self.labels[x].clone()).collect();
        Poset::from_closed_relation(labels, |i, j| self.less(kept[i], kept[j]))
    }

    /// Rank of each element: 0 for minimal elements, otherwise one more
    /// than the largest rank strictly below.
    pub fn element_ranks(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        // |d(y)| < |d(x)| whenever y < x, so this is a linear extension.
        order.sort_by_key(|&x| self.down[x].len());
        let mut rank = vec![0usize; self.len()];
        for x in order {
            rank[x] = self.down[x].iter().map(|y| rank[y] + 1).max().unwrap_or(0);
        }
        rank
    }

    /// Number of elements in a longest chain; 0 for the empty order.
    pub fn well_founded_rank(&self) -> usize {
        self.element_ranks()
            .into_iter()
            .map(|r| r + 1)
            .max()
            .unwrap_or(0)
    }

    /// Checks irreflexivity, antisymmetry, transitivity, and row consistency
    /// by direct scan.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            if self.less(x, x) {
                return Err(Error::InternalInvariantViolation(format!(
                    "`{}` < `{}`",
                    self.labels[x], self.labels[x]
                )));
            }
            for y in 0..n {
                if self.less(x, y) != self.down[y].contains(x) {
                    return Err(Error::InternalInvariantViolation(
                        "up-set and down-set rows disagree".into(),
                    ));
                }
                if self.less(x, y) && self.less(y, x) {
                    return Err(Error::InternalInvariantViolation(format!(
                        "`{}` and `{}` are related both ways",
                        self.labels[x], self.labels[y]
                    )));
                }
                if self.less(x, y) && !self.up[y].is_subset(&self.up[x]) {
                    return Err(Error::InternalInvariantViolation(format!(
                        "relation is not transitive through `{}`",
                        self.labels[y]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether an order isomorphism exists between `self` and `other`.
    ///
    /// Labels are ignored. Both posets must have at most
    /// [`ISOMORPHISM_LIMIT`] elements.
    pub fn is_isomorphic(&self, other: &Poset) -> Result<bool> {
        for p in [self, other] {
            if p.len() > ISOMORPHISM_LIMIT {
                return Err(Error::SizeLimitExceeded {
                    what: "isomorphism test",
                    limit: ISOMORPHISM_LIMIT,
                    got: p.len(),
                });
            }
        }
        if self.len() != other.len() || self.relation_count() != other.relation_count() {
            return Ok(false);
        }
        let signature = |p: &Poset| {
            let mut s: Vec<(usize, usize)> = (0..p.len())
                .map(|x| (p.down[x].len(), p.up[x].len()))
                .collect();
            s.sort_unstable();
            s
        };
        if signature(self) != signature(other) {
            return Ok(false);
        }
        let found = search::EmbeddingSearch::new(self, other)
            .exact_degrees()
            .run()?;
        Ok(found.is_some())
    }
}

impl PartialEq for Poset {
    /// Identical labeling and identical relation.
    fn eq(&self, other: &Poset) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<(&str, &str)> = self
            .relations()
            .map(|(x, y)| (self.label(x), self.label(y)))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.labels)
            .field("less", &rels)
            .finish()
    }
}

/// Free-function form of [`Poset::build`].
pub fn build_poset<S: AsRef<str>, T: AsRef<str>>(
    elements: &[S],
    pairs: &[(T, T)],
) -> Result<Poset> {
    Poset::build(elements, pairs)
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() || l.chars().any(char::is_whitespace) {
            return Err(Error::InvalidParameter(format!(
                "element identifier {l:?} must be non-empty and contain no whitespace"
            )));
        }
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateElement(l.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, label: &str) -> Result<usize> {
    index
        .get(label)
        .copied()
        .ok_or_else(|| Error::UnknownElement(label.to_string()))
}

fn reaches(succ: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut seen = vec![false; succ.len()];
    let mut stack = succ[from].clone();
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        if !std::mem::replace(&mut seen[v], true) {
            stack.extend_from_slice(&succ[v]);
        }
    }
    false
}

//! Backtracking search for order embeddings.
//!
//! Source elements are assigned in ascending index order and candidates in
//! ascending target index, so the first map found is the lexicographically
//! least embedding.

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::set::ElementSet;

pub(crate) struct EmbeddingSearch<'a> {
    source: &'a Poset,
    target: &'a Poset,
    exact: bool,
    budget: Option<u64>,
    nodes: u64,
}

impl<'a> EmbeddingSearch<'a> {
    pub(crate) fn new(source: &'a Poset, target: &'a Poset) -> Self {
        EmbeddingSearch {
            source,
            target,
            exact: false,
            budget: None,
            nodes: 0,
        }
    }

    /// Require equal down/up-set sizes (isomorphism search).
    pub(crate) fn exact_degrees(mut self) -> Self {
        self.exact = true;
        self
    }

    pub(crate) fn budget(mut self, nodes: Option<u64>) -> Self {
        self.budget = nodes;
        self
    }

    pub(crate) fn run(mut self) -> Result<Option<Vec<usize>>> {
        let (s, t) = (self.source, self.target);
        if s.len() > t.len() {
            return Ok(None);
        }
        let candidates: Vec<Vec<usize>> = (0..s.len())
            .map(|x| {
                let (dx, ux) = (s.down(x).len(), s.up(x).len());
                (0..t.len())
                    .filter(|&c| {
                        let (dc, uc) = (t.down(c).len(), t.up(c).len());
                        if self.exact {
                            dc == dx && uc == ux
                        } else {
                            dc >= dx && uc >= ux
                        }
                    })
                    .collect()
            })
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            return Ok(None);
        }
        let mut map = Vec::with_capacity(s.len());
        let mut used = ElementSet::empty(t.len());
        if self.extend(&candidates, &mut map, &mut used)? {
            Ok(Some(map))
        } else {
            Ok(None)
        }
    }

    fn extend(
        &mut self,
        candidates: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut ElementSet,
    ) -> Result<bool> {
        let x = map.len();
        if x == self.source.len() {
            return Ok(true);
        }
        for &c in &candidates[x] {
            if used.contains(c) {
                continue;
            }
            self.nodes += 1;
            if let Some(limit) = self.budget {
                if self.nodes > limit {
                    return Err(Error::BudgetExceeded(limit));
                }
            }
            let consistent = map.iter().enumerate().all(|(y, &cy)| {
                self.source.less(y, x) == self.target.less(cy, c)
                    && self.source.less(x, y) == self.target.less(c, cy)
            });
            if !consistent {
                continue;
            }
            map.push(c);
            used.insert(c);
            if self.extend(candidates, map, used)? {
                return Ok(true);
            }
            used.remove(c);
            map.pop();
        }
        Ok(false)
    }
}

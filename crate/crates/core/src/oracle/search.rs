use alloc::vec::Vec;

use super::graph::{clique_within, low_mask, Graph, MAX_ORDER};
use crate::{Error, Result};

/// Default ceiling on the order of exhaustive searches.
pub const DEFAULT_CEILING: usize = 8;

/// Exhaustive search over labelled `(m,n;p)`-graphs.
///
/// Vertices are added one at a time with every possible neighbourhood
/// among the earlier vertices; a branch is cut as soon as the new vertex
/// closes a `K_m` or an independent `n`-set. No isomorph rejection.
#[derive(Debug, Clone, Copy)]
pub struct EdgeSearch {
    m: usize,
    n: usize,
    order: usize,
}

/// A valid `(m,n)`-graph on the first `len` vertices, used to split a
/// search into independent partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prefix {
    rows: [u16; MAX_ORDER],
    len: usize,
}

impl Prefix {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Smallest and largest edge counts found by a (partial) search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extremes {
    pub min: usize,
    pub max: usize,
}

impl Extremes {
    pub fn merge(a: Option<Extremes>, b: Option<Extremes>) -> Option<Extremes> {
        match (a, b) {
            (Some(x), Some(y)) => Some(Extremes { min: x.min.min(y.min), max: x.max.max(y.max) }),
            (x, None) => x,
            (None, y) => y,
        }
    }
}

impl EdgeSearch {
    pub fn new(m: usize, n: usize, order: usize, ceiling: usize) -> Result<Self> {
        let ceiling = ceiling.min(MAX_ORDER);
        if order > ceiling {
            return Err(Error::CeilingExceeded { order, ceiling });
        }
        Ok(EdgeSearch { m, n, order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn admits(&self, rows: &[u16], v: usize, nbrs: u16) -> bool {
        let earlier = low_mask(v);
        let non = !nbrs & earlier;
        // complement rows restricted to earlier vertices
        let mut co = [0u16; MAX_ORDER];
        for u in 0..v {
            co[u] = !rows[u] & earlier & !(1 << u);
        }
        !clique_within(rows, nbrs, self.m.saturating_sub(1))
            && !clique_within(&co, non, self.n.saturating_sub(1))
            && self.m > 0
            && self.n > 0
    }

    fn extend<F: FnMut(&[u16; MAX_ORDER], usize)>(&self, rows: &mut [u16; MAX_ORDER], len: usize, stop: usize, f: &mut F) {
        if len == stop {
            f(rows, len);
            return;
        }
        let v = len;
        for nbrs in 0..=low_mask(v) {
            if !self.admits(rows, v, nbrs) {
                continue;
            }
            rows[v] = nbrs;
            for u in super::graph::bits(nbrs) {
                rows[u] |= 1 << v;
            }
            self.extend(rows, len + 1, stop, f);
            for u in super::graph::bits(nbrs) {
                rows[u] &= !(1 << v);
            }
            rows[v] = 0;
        }
    }

    /// All valid prefixes on the first `depth` vertices (clamped to the order).
    pub fn partitions(&self, depth: usize) -> Vec<Prefix> {
        let depth = depth.min(self.order);
        let mut out = Vec::new();
        let mut rows = [0u16; MAX_ORDER];
        self.extend(&mut rows, 0, depth, &mut |r, len| out.push(Prefix { rows: *r, len }));
        out
    }

    /// Calls `f` on every `(m,n;p)`-graph extending `prefix`.
    pub fn visit_from<F: FnMut(&Graph)>(&self, prefix: &Prefix, mut f: F) {
        let mut rows = prefix.rows;
        self.extend(&mut rows, prefix.len, self.order, &mut |r, len| f(&Graph::from_rows(len, r)));
    }

    /// Calls `f` on every labelled `(m,n;p)`-graph.
    pub fn visit<F: FnMut(&Graph)>(&self, f: F) {
        let root = Prefix { rows: [0; MAX_ORDER], len: 0 };
        self.visit_from(&root, f);
    }

    pub fn extremes_from(&self, prefix: &Prefix) -> Option<Extremes> {
        let mut acc: Option<Extremes> = None;
        let mut rows = prefix.rows;
        self.extend(&mut rows, prefix.len, self.order, &mut |r, len| {
            let e = r[..len].iter().map(|x| x.count_ones() as usize).sum::<usize>() / 2;
            acc = Extremes::merge(acc, Some(Extremes { min: e, max: e }));
        });
        acc
    }

    pub fn extremes(&self) -> Option<Extremes> {
        self.partitions(0).iter().fold(None, |acc, p| Extremes::merge(acc, self.extremes_from(p)))
    }

    pub fn exists(&self) -> bool {
        let mut found = false;
        let mut rows = [0u16; MAX_ORDER];
        // cheap enough at oracle scale; no early exit plumbing
        self.extend(&mut rows, 0, self.order, &mut |_, _| found = true);
        found
    }
}

/// Exact `(e(m,n;p), E(m,n;p))`, or `None` when no `(m,n;p)`-graph exists.
pub fn exact_edge_numbers(m: usize, n: usize, p: usize, ceiling: usize) -> Result<Option<(usize, usize)>> {
    let search = EdgeSearch::new(m, n, p, ceiling)?;
    Ok(search.extremes().map(|x| (x.min, x.max)))
}

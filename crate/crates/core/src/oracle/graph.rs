use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::binom3;
use crate::{Error, Result};

/// Largest order the bitset representation supports.
pub const MAX_ORDER: usize = 16;

/// A simple graph on at most [`MAX_ORDER`] vertices, one adjacency bitset per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    rows: [u16; MAX_ORDER],
}

impl Graph {
    /// The edgeless graph of the given order.
    pub fn empty(order: usize) -> Self {
        assert!(order <= MAX_ORDER, "order {order} exceeds {MAX_ORDER}");
        Graph { order, rows: [0; MAX_ORDER] }
    }

    pub fn complete(order: usize) -> Self {
        Graph::empty(order).complement()
    }

    pub fn cycle(order: usize) -> Self {
        let mut g = Graph::empty(order);
        if order >= 3 {
            for v in 0..order {
                g.add_edge(v, (v + 1) % order);
            }
        }
        g
    }

    /// Builds a graph from one bit per vertex pair. Pairs are numbered
    /// `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...`, so the graph induced
    /// on the first `k` vertices only reads the low `C(k,2)` bits.
    pub fn from_edge_mask(order: usize, mask: u128) -> Self {
        let mut g = Graph::empty(order);
        let mut bit = 0;
        for j in 1..order {
            for i in 0..j {
                if mask >> bit & 1 == 1 {
                    g.add_edge(i, j);
                }
                bit += 1;
            }
        }
        g
    }

    pub(crate) fn from_rows(order: usize, rows: &[u16]) -> Self {
        let mut g = Graph::empty(order);
        g.rows[..order].copy_from_slice(&rows[..order]);
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Full vertex mask.
    pub fn vertices(&self) -> u16 {
        low_mask(self.order)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.order && v < self.order);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> u16 {
        self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    /// `n_d`: number of vertices of each degree `d = 0..order`.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.order.max(1)];
        for v in 0..self.order {
            hist[self.degree(v)] += 1;
        }
        hist
    }

    pub fn edge_count(&self) -> usize {
        self.rows[..self.order].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Self {
        let all = self.vertices();
        let mut g = Graph::empty(self.order);
        for v in 0..self.order {
            g.rows[v] = !self.rows[v] & all & !(1 << v);
        }
        g
    }

    /// The subgraph induced by `subset`, relabelled to `0..|subset|` in
    /// increasing vertex order.
    pub fn induced(&self, subset: u16) -> Self {
        let verts: Vec<usize> = bits(subset & self.vertices()).collect();
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// `G_v^+`, the subgraph induced by the neighbours of `v`.
    pub fn neighbourhood(&self, v: usize) -> Self {
        self.induced(self.rows[v])
    }

    /// `G_v^-`, the subgraph induced by the vertices other than `v` that are not adjacent to it.
    pub fn non_neighbourhood(&self, v: usize) -> Self {
        self.induced(!self.rows[v] & self.vertices() & !(1 << v))
    }

    /// Whether `G` contains a clique on `k` vertices.
    pub fn has_clique(&self, k: usize) -> bool {
        clique_within(&self.rows, self.vertices(), k)
    }

    pub fn has_independent_set(&self, k: usize) -> bool {
        self.complement().has_clique(k)
    }

    pub fn clique_number(&self) -> usize {
        (0..=self.order).rev().find(|&k| self.has_clique(k)).unwrap_or(0)
    }

    /// `N(K_3; G)`.
    pub fn triangle_count(&self) -> u64 {
        let mut count = 0;
        for u in 0..self.order {
            for v in bits(self.rows[u] & !low_mask(u + 1)) {
                count += (self.rows[u] & self.rows[v] & !low_mask(v + 1)).count_ones() as u64;
            }
        }
        count
    }

    /// `N(K_3; G, v)`: the number of edges among the neighbours of `v`.
    pub fn triangle_count_at(&self, v: usize) -> u64 {
        let nb = self.rows[v];
        bits(nb).map(|u| (self.rows[u] & nb).count_ones() as u64).sum::<u64>() / 2
    }

    /// Parses `'0'`/`'1'` adjacency rows, one per line.
    pub fn parse_matrix(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let order = lines.len();
        if order > MAX_ORDER {
            return Err(Error::CeilingExceeded { order, ceiling: MAX_ORDER });
        }
        let mut g = Graph::empty(order);
        for (i, line) in lines.iter().enumerate() {
            if line.len() != order {
                return Err(Error::InvalidArgument("adjacency matrix is not square"));
            }
            for (j, c) in line.bytes().enumerate() {
                match c {
                    b'1' if i != j => g.rows[i] |= 1 << j,
                    b'0' => {}
                    _ => return Err(Error::InvalidArgument("adjacency entries must be 0/1 with a zero diagonal")),
                }
            }
        }
        if (0..order).any(|i| (0..order).any(|j| g.has_edge(i, j) != g.has_edge(j, i))) {
            return Err(Error::InvalidArgument("adjacency matrix is not symmetric"));
        }
        Ok(g)
    }

    pub fn to_matrix_string(&self) -> String {
        let mut s = String::with_capacity(self.order * (self.order + 1));
        for i in 0..self.order {
            for j in 0..self.order {
                s.push(if self.has_edge(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})\n{}", self.order, self.to_matrix_string())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_matrix_string())
    }
}

/// `G` is an `(m,n)`-graph: no `K_m` and no independent set of size `n`.
pub fn is_mn_graph(g: &Graph, m: usize, n: usize) -> bool {
    !g.has_clique(m) && !g.has_independent_set(n)
}

pub fn triangle_count(g: &Graph) -> u64 {
    g.triangle_count()
}

pub fn triangle_count_at(g: &Graph, v: usize) -> u64 {
    g.triangle_count_at(v)
}

/// Checks `N(K_3;G) + N(K_3;Ḡ) = C(p,3) - ½ Σ_v d_v(p - d_v - 1)`.
pub fn goodman_check(g: &Graph) -> bool {
    let p = g.order() as i128;
    let lhs = (g.triangle_count() + g.complement().triangle_count()) as i128;
    let sum: i128 = g.degrees().iter().map(|&d| d as i128 * (p - d as i128 - 1)).sum();
    2 * lhs == 2 * binom3(p) - sum
}

pub(crate) fn low_mask(k: usize) -> u16 {
    if k >= 16 {
        u16::MAX
    } else {
        (1u16 << k) - 1
    }
}

pub(crate) fn bits(mut set: u16) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

/// Whether `cand` contains a clique of size `k` in the graph given by `rows`.
pub(crate) fn clique_within(rows: &[u16], cand: u16, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < k {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        if (rest.count_ones() as usize) < k {
            return false;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if clique_within(rows, rest & rows[v], k - 1) {
            return true;
        }
    }
    false
}

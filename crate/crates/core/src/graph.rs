//! Simple undirected graphs on labeled vertices.
//!
//! Adjacency is stored as a packed bit vector over the upper triangle, one
//! bit per unordered pair. Pair `(i, j)` with `i < j` (0-indexed) lives at bit
//! `j(j-1)/2 + i`, which is the column-major order graph6 uses, so the packed
//! bits and the graph6 payload share one layout.

use std::fmt;

use rand::RngCore;

use crate::error::GraphError;

/// Largest order [`enumerate`] accepts unless a higher cap is requested.
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

/// Enumeration masks are `u64`, so at most 63 potential edges.
pub const MAX_ENUMERATION_ORDER: usize = 11;

/// Number of unordered vertex pairs, `n(n-1)/2`.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[inline]
pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// A simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidOrder);
        }
        Ok(Self {
            n,
            bits: vec![0; pair_count(n).div_ceil(64)],
        })
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Ok(Self::empty(n)?.complement())
    }

    /// Builds a graph from 0-indexed edges. Duplicate edges are idempotent.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: a.max(b),
                    n,
                });
            }
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            g.set_edge(a, b, true);
        }
        Ok(g)
    }

    /// Graph whose edge bits are the low `n(n-1)/2` bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        let pairs = pair_count(n);
        if n > MAX_ENUMERATION_ORDER {
            return Err(GraphError::EnumerationCap {
                n,
                cap: MAX_ENUMERATION_ORDER,
            });
        }
        let mut g = Self::empty(n)?;
        if pairs > 0 {
            g.bits[0] = mask & low_bits(pairs);
        }
        Ok(g)
    }

    /// Draws every potential edge independently with probability 1/2.
    ///
    /// Bits are taken from consecutive `next_u64` outputs in pair order, so a
    /// given generator state always produces the same graph.
    pub fn sample_uniform<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for word in g.bits.iter_mut() {
            *word = rng.next_u64();
        }
        g.clear_padding();
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Edge bitmask as an integer. Only defined for orders with at most 64 pairs.
    pub fn mask(&self) -> Option<u64> {
        match self.bits.len() {
            0 => Some(0),
            1 => Some(self.bits[0]),
            _ => None,
        }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == b || a >= self.n || b >= self.n {
            return false;
        }
        let k = pair_index(a.min(b), a.max(b));
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    /// Sets or clears edge `{a, b}`. Panics on a self-loop or an out-of-range vertex.
    pub fn set_edge(&mut self, a: usize, b: usize, present: bool) {
        assert!(a != b, "self-loop at vertex {a}");
        assert!(a < self.n && b < self.n, "vertex out of range");
        let k = pair_index(a.min(b), a.max(b));
        let bit = 1u64 << (k % 64);
        if present {
            self.bits[k / 64] |= bit;
        } else {
            self.bits[k / 64] &= !bit;
        }
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Edges as 0-indexed pairs `(i, j)` with `i < j`, in pair-index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n)
            .flat_map(move |j| (0..j).map(move |i| (i, j)))
            .filter(move |&(i, j)| self.has_edge(i, j))
    }

    /// 0/1 adjacency matrix, row-major.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n]; self.n];
        for (i, j) in self.edges() {
            a[i][j] = 1;
            a[j][i] = 1;
        }
        a
    }

    /// The complement graph: every pair flips.
    pub fn complement(&self) -> Self {
        let mut g = self.clone();
        for word in g.bits.iter_mut() {
            *word = !*word;
        }
        g.clear_padding();
        g
    }

    /// Seidel switching with respect to `w`: every pair with exactly one end
    /// in `w` flips, all other pairs are kept.
    pub fn switch(&self, w: &VertexSet) -> Result<Self, GraphError> {
        if w.order() != self.n {
            return Err(GraphError::OrderMismatch {
                graph: self.n,
                set: w.order(),
            });
        }
        let mut g = self.clone();
        for j in 1..self.n {
            let wj = w.contains(j);
            for i in 0..j {
                if w.contains(i) != wj {
                    let k = pair_index(i, j);
                    g.bits[k / 64] ^= 1u64 << (k % 64);
                }
            }
        }
        Ok(g)
    }

    fn clear_padding(&mut self) {
        let pairs = pair_count(self.n);
        if let Some(last) = self.bits.last_mut() {
            let used = pairs % 64;
            if used != 0 {
                *last &= low_bits(used);
            }
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[inline]
fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// A subset of the vertices of an order-`n` graph.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    n: usize,
    members: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            members: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        Self::empty(n).complement()
    }

    /// Set from 0-indexed vertices.
    pub fn from_vertices<I>(n: usize, vertices: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut w = Self::empty(n);
        for v in vertices {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            w.members[v / 64] |= 1u64 << (v % 64);
        }
        Ok(w)
    }

    /// Each vertex included independently with probability 1/2.
    pub fn sample_uniform<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut w = Self::empty(n);
        for word in w.members.iter_mut() {
            *word = rng.next_u64();
        }
        w.clear_padding();
        w
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.members[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.members.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    /// `V \ W`.
    pub fn complement(&self) -> Self {
        let mut w = self.clone();
        for word in w.members.iter_mut() {
            *word = !*word;
        }
        w.clear_padding();
        w
    }

    fn clear_padding(&mut self) {
        let used = self.n % 64;
        if used != 0 {
            if let Some(last) = self.members.last_mut() {
                *last &= low_bits(used);
            }
        }
    }
}

/// Every labeled graph on `n` vertices, in ascending edge-mask order.
///
/// Fails when `n` exceeds [`DEFAULT_ENUMERATION_CAP`]; use
/// [`enumerate_with_cap`] to go higher.
pub fn enumerate(n: usize) -> Result<Enumeration, GraphError> {
    enumerate_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_with_cap(n: usize, cap: usize) -> Result<Enumeration, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidOrder);
    }
    let cap = cap.min(MAX_ENUMERATION_ORDER);
    if n > cap {
        return Err(GraphError::EnumerationCap { n, cap });
    }
    let end = 1u64 << pair_count(n);
    Ok(Enumeration { n, next: 0, end })
}

/// Iterator over a contiguous range of edge masks.
#[derive(Clone, Debug)]
pub struct Enumeration {
    n: usize,
    next: u64,
    end: u64,
}

impl Enumeration {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Total number of graphs still to be produced.
    pub fn remaining(&self) -> u64 {
        self.end - self.next
    }

    /// Splits the remaining range into consecutive chunks of at most
    /// `chunk` masks. Concatenating the chunks reproduces this iterator.
    pub fn split_ranges(&self, chunk: u64) -> Vec<Enumeration> {
        assert!(chunk > 0);
        let mut out = Vec::new();
        let mut start = self.next;
        while start < self.end {
            let stop = start.saturating_add(chunk).min(self.end);
            out.push(Enumeration {
                n: self.n,
                next: start,
                end: stop,
            });
            start = stop;
        }
        out
    }
}

impl Iterator for Enumeration {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        Some(Graph::from_mask(self.n, mask).expect("order checked at construction"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining()).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(Graph::empty(0), Err(GraphError::InvalidOrder));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(Graph::sample_uniform(0, &mut rng).is_err());
        assert!(enumerate(0).is_err());
    }

    #[test]
    fn single_vertex_sample_is_edgeless() {
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = Graph::sample_uniform(1, &mut rng).unwrap();
            assert_eq!(g.order(), 1);
            assert_eq!(g.edge_count(), 0);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = Graph::sample_uniform(5, &mut ChaCha8Rng::seed_from_u64(77)).unwrap();
        let b = Graph::sample_uniform(5, &mut ChaCha8Rng::seed_from_u64(77)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_edge_count_matches_binomial_mean() {
        // Binomial(190, 1/2): mean 95, variance 47.5. The mean of 10000
        // samples has standard error sqrt(47.5 / 10000).
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let samples = 10_000;
        let total: usize = (0..samples)
            .map(|_| Graph::sample_uniform(20, &mut rng).unwrap().edge_count())
            .sum();
        let mean = total as f64 / samples as f64;
        let se = (47.5f64 / samples as f64).sqrt();
        assert!((mean - 95.0).abs() <= 3.0 * se, "mean {mean}");
    }

    #[test]
    fn complement_examples() {
        assert_eq!(
            Graph::empty(4).unwrap().complement(),
            Graph::complete(4).unwrap()
        );
        assert_eq!(Graph::complete(4).unwrap().edge_count(), 6);
        let c = path3().complement();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn switch_examples() {
        let g = path3();
        assert_eq!(g.switch(&VertexSet::empty(3)).unwrap(), g);
        assert_eq!(g.switch(&VertexSet::full(3)).unwrap(), g);
        let k3 = Graph::complete(3).unwrap();
        let w = VertexSet::from_vertices(3, [0]).unwrap();
        let s = k3.switch(&w).unwrap();
        assert_eq!(s.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn switch_rejects_foreign_sets() {
        assert_eq!(
            VertexSet::from_vertices(3, [3]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        let err = path3().switch(&VertexSet::empty(4)).unwrap_err();
        assert_eq!(err, GraphError::OrderMismatch { graph: 3, set: 4 });
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(2).unwrap().count(), 2);
        assert_eq!(enumerate(4).unwrap().count(), 64);
        let masks: Vec<u64> = enumerate(5).unwrap().map(|g| g.mask().unwrap()).collect();
        assert_eq!(masks.len(), 1024);
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_cap() {
        assert_eq!(
            enumerate(9).unwrap_err(),
            GraphError::EnumerationCap { n: 9, cap: 8 }
        );
        assert!(enumerate_with_cap(9, 9).is_ok());
        assert!(enumerate_with_cap(12, 100).is_err());
    }

    #[test]
    fn partition_concatenates_to_whole() {
        let whole: Vec<Graph> = enumerate(4).unwrap().collect();
        let parts: Vec<Graph> = enumerate(4)
            .unwrap()
            .split_ranges(7)
            .into_iter()
            .flatten()
            .collect();
        assert_eq!(whole, parts);
    }

    #[test]
    fn multiword_graphs() {
        // 12 vertices has 66 pairs, spilling into a second word.
        let mut g = Graph::empty(12).unwrap();
        g.set_edge(10, 11, true);
        g.set_edge(0, 1, true);
        assert_eq!(g.edge_count(), 2);
        assert!(g.mask().is_none());
        assert_eq!(g.complement().edge_count(), 64);
        assert_eq!(g.complement().complement(), g);
    }
}

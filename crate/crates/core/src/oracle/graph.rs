//! Half-edge graphs: a finite set of half-edges, an involution whose
//! 2-orbits are edges and fixed points are leaves, and a partition of the
//! half-edges into vertices.

/// A graph as a triple (H, E, V), with half-edges `0..h_count`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfEdgeGraph {
    pairing: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl HalfEdgeGraph {
    /// Builds a graph, checking the involution and partition invariants.
    /// Panics on malformed input; graphs are produced by enumerators.
    pub fn new(pairing: Vec<usize>, blocks: Vec<Vec<usize>>) -> Self {
        let h = pairing.len();
        for (i, &p) in pairing.iter().enumerate() {
            assert!(p < h, "pairing out of range");
            assert_eq!(pairing[p], i, "pairing is not an involution");
        }
        let mut seen = vec![false; h];
        for block in &blocks {
            assert!(!block.is_empty(), "empty vertex block");
            for &e in block {
                assert!(e < h && !seen[e], "blocks must partition the half-edges");
                seen[e] = true;
            }
        }
        assert!(seen.iter().all(|&s| s), "blocks must cover all half-edges");
        HalfEdgeGraph { pairing, blocks }
    }

    pub fn h_count(&self) -> usize {
        self.pairing.len()
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of 2-orbits of the involution.
    pub fn edge_count(&self) -> usize {
        self.pairing
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i < p)
            .count()
    }

    /// Number of fixed points of the involution.
    pub fn leaf_count(&self) -> usize {
        self.pairing
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i == p)
            .count()
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.len()
    }

    /// chi(G) = v(G) - e(G). Leaves contribute to neither count.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64
    }

    /// Block index of each half-edge.
    pub fn block_assignment(&self) -> Vec<usize> {
        let mut assign = vec![usize::MAX; self.h_count()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                assign[e] = b;
            }
        }
        assign
    }

    /// True iff the vertices form a single component under the edges.
    /// The empty graph and any graph with no vertices are not connected.
    pub fn connected(&self) -> bool {
        let k = self.vertex_count();
        if k == 0 {
            return false;
        }
        let assign = self.block_assignment();
        let mut uf = UnionFind::new(k);
        for (i, &p) in self.pairing.iter().enumerate() {
            if i < p {
                uf.union(assign[i], assign[p]);
            }
        }
        uf.components() == 1
    }

    /// True iff no edge closes a cycle (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        let k = self.vertex_count();
        let assign = self.block_assignment();
        let mut uf = UnionFind::new(k);
        for (i, &p) in self.pairing.iter().enumerate() {
            if i < p && uf.union(assign[i], assign[p]).is_none() {
                return false;
            }
        }
        true
    }

    /// Leafless admissibility: no fixed points and every vertex >= 3-valent.
    pub fn is_admissible_leafless(&self) -> bool {
        self.leaf_count() == 0 && self.blocks.iter().all(|b| b.len() >= 3)
    }

    /// Tree admissibility: leaves allowed, every vertex >= 3-valent,
    /// connected and acyclic.
    pub fn is_admissible_tree(&self) -> bool {
        self.blocks.iter().all(|b| b.len() >= 3) && self.connected() && self.is_acyclic()
    }
}

/// Small union-find without path compression, so unions can be undone.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    merges: usize,
}

impl UnionFind {
    pub(crate) fn new(k: usize) -> Self {
        UnionFind {
            parent: (0..k as u32).collect(),
            merges: 0,
        }
    }

    pub(crate) fn reset(&mut self, k: usize) {
        self.parent.clear();
        self.parent.extend(0..k as u32);
        self.merges = 0;
    }

    pub(crate) fn find(&self, mut a: usize) -> usize {
        while self.parent[a] as usize != a {
            a = self.parent[a] as usize;
        }
        a
    }

    /// Merges the classes of a and b. Returns the root that was attached
    /// (for undo), or None if they were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return None;
        }
        self.parent[rb] = ra as u32;
        self.merges += 1;
        Some(rb)
    }

    pub(crate) fn undo(&mut self, attached_root: usize) {
        self.parent[attached_root] = attached_root as u32;
        self.merges -= 1;
    }

    pub(crate) fn components(&self) -> usize {
        self.parent.len() - self.merges
    }
}

/// Connectivity of a raw (pairing, block assignment) pair without building a
/// `HalfEdgeGraph`; the hot path of the census loops.
pub(crate) fn is_connected_raw(
    pairing: &[usize],
    assign: &[u8],
    k: usize,
    uf: &mut UnionFind,
) -> bool {
    if k == 0 {
        return false;
    }
    uf.reset(k);
    for (i, &p) in pairing.iter().enumerate() {
        if i < p {
            uf.union(assign[i] as usize, assign[p] as usize);
        }
    }
    uf.components() == 1
}

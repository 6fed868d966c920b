//! Deterministic construction of the underlying graph `Λ_k`.
//!
//! `Λ_1` is the motif itself with every bond basic. `Λ_j` is obtained from
//! `q` copies of `Λ_{j-1}`: external node `j` of copy `i` is identified with
//! external node `i` of copy `j` for every `i != j`, and external node `i` of
//! copy `i` becomes external node `i` of `Λ_j`. The new external nodes are then
//! joined along the motif bonds by `r` decoration slots.
//!
//! Node ids are compact: after every gluing step the `q` external nodes get
//! ids `0..q` and the remaining nodes follow in order of first appearance
//! when scanning the copies in order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::motif::{MotifId, MotifSpec};
use crate::{Error, Result};

/// How a node came to exist in the current graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeOrigin {
    /// External node carrying the given motif index.
    External(u8),
    /// Node created by identifying external node `j` of copy `i` with
    /// external node `i` of copy `j`; stored as `(min, max)`.
    Glued(u8, u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NodeRecord {
    pub id: u32,
    /// `l` such that the node was external in some `Λ_l` and is internal in
    /// every larger sub-construction; external nodes of `Λ_k` have class `k`.
    pub level_class: u32,
    pub origin: NodeOrigin,
}

impl NodeRecord {
    pub fn is_external(&self) -> bool {
        matches!(self.origin, NodeOrigin::External(_))
    }

    /// Degree carried by the basic bonds alone.
    pub fn basic_degree(&self, motif: &MotifSpec) -> u32 {
        match self.origin {
            NodeOrigin::External(i) => motif.base_degree(i),
            NodeOrigin::Glued(i, j) => motif.base_degree(i) + motif.base_degree(j),
        }
    }

    /// Number of decoration slots incident to this node in `Λ_k`.
    pub fn slot_count(&self, motif: &MotifSpec, k: u32) -> u32 {
        match self.origin {
            NodeOrigin::External(i) => motif.base_degree(i) * (k - 1),
            NodeOrigin::Glued(..) => self.basic_degree(motif) * (self.level_class - 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlotRecord {
    pub endpoints: (u32, u32),
    pub creation_level: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_nodes: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { max_nodes: 1 << 22 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphTopology {
    motif: MotifId,
    k: u32,
    nodes: Vec<NodeRecord>,
    basic_edges: Vec<(u32, u32)>,
    slots: Vec<SlotRecord>,
}

impl GraphTopology {
    pub fn motif(&self) -> MotifId {
        self.motif
    }

    pub fn motif_spec(&self) -> &'static MotifSpec {
        self.motif.spec()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    pub fn node(&self, id: u32) -> Option<&NodeRecord> {
        self.nodes.get(id as usize)
    }

    /// Basic bonds as `(u, v)` with `u < v`.
    pub fn basic_edges(&self) -> &[(u32, u32)] {
        &self.basic_edges
    }

    pub fn decoration_slots(&self) -> &[SlotRecord] {
        &self.slots
    }

    /// Ids of the external nodes, indexed by motif node. These are always
    /// `0..q`.
    pub fn external_ids(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.motif.spec().q() as u32
    }

    /// Basic degree of every node, counted from the edge list.
    pub fn basic_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.nodes.len()];
        for &(u, v) in &self.basic_edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    /// Number of decoration slots touching every node, counted from the slot
    /// list.
    pub fn slot_incidence(&self) -> Vec<u32> {
        let mut inc = vec![0u32; self.nodes.len()];
        for s in &self.slots {
            inc[s.endpoints.0 as usize] += 1;
            inc[s.endpoints.1 as usize] += 1;
        }
        inc
    }
}

/// `|V_k| = (q^k + q) / 2`, or `None` on overflow.
pub fn node_count_closed(q: usize, k: u32) -> Option<u128> {
    let qk = (q as u128).checked_pow(k)?;
    Some((qk + q as u128) / 2)
}

/// `|E'_k| = r q^{k-1}`.
pub fn basic_edge_count_closed(motif: &MotifSpec, k: u32) -> u128 {
    motif.r() as u128 * (motif.q() as u128).pow(k - 1)
}

/// `|E''_k| = r (q^{k-1} - 1) / (q - 1)`.
pub fn slot_count_closed(motif: &MotifSpec, k: u32) -> u128 {
    let q = motif.q() as u128;
    motif.r() as u128 * (q.pow(k - 1) - 1) / (q - 1)
}

/// `|V_k^{(l)}|`: `q^{k-l}(q-1)/2` for `l < k`, `q` for `l = k`.
pub fn level_size_closed(q: usize, k: u32, l: u32) -> u128 {
    let q = q as u128;
    if l == k {
        q
    } else {
        q.pow(k - l) * (q - 1) / 2
    }
}

/// Expected number of bonds `r q^{k-1} + r p (q^{k-1} - 1)/(q - 1)`.
pub fn expected_edge_count(motif: &MotifSpec, k: u32, p: f64) -> f64 {
    let q = motif.q() as f64;
    let r = motif.r() as f64;
    let qk1 = libm::pow(q, f64::from(k - 1));
    r * qk1 + r * p * (qk1 - 1.0) / (q - 1.0)
}

pub fn build(motif: &MotifSpec, k: u32) -> Result<GraphTopology> {
    build_with(motif, k, &BuildOptions::default())
}

pub fn build_with(motif: &MotifSpec, k: u32, opts: &BuildOptions) -> Result<GraphTopology> {
    if k == 0 {
        return Err(Error::InvalidLevel(k));
    }
    let q = motif.q();
    match node_count_closed(q, k) {
        Some(n) if n <= opts.max_nodes as u128 => {}
        Some(n) => return Err(Error::CapacityExceeded { requested: n, cap: opts.max_nodes }),
        None => return Err(Error::CapacityExceeded { requested: u128::MAX, cap: opts.max_nodes }),
    }

    let mut g = GraphTopology {
        motif: motif.id(),
        k: 1,
        nodes: (0..q as u8)
            .map(|i| NodeRecord { id: u32::from(i), level_class: 1, origin: NodeOrigin::External(i) })
            .collect(),
        basic_edges: motif.edges().iter().map(|&(i, j)| (u32::from(i), u32::from(j))).collect(),
        slots: Vec::new(),
    };
    for level in 2..=k {
        g = glue(motif, &g, level);
    }
    Ok(g)
}

/// One gluing step: `q` copies of `prev` (which is `Λ_{level-1}`) become
/// `Λ_level`.
fn glue(motif: &MotifSpec, prev: &GraphTopology, level: u32) -> GraphTopology {
    let q = motif.q();
    let n = prev.nodes.len();
    let global = |copy: usize, v: u32| copy * n + v as usize;

    let mut sets = DisjointSet::new(q * n);
    for i in 0..q {
        for j in (i + 1)..q {
            sets.union(global(i, j as u32), global(j, i as u32));
        }
    }

    const UNSET: u32 = u32::MAX;
    let mut new_id = vec![UNSET; q * n];
    let mut nodes = Vec::with_capacity(q * n - q * (q - 1) / 2);
    for i in 0..q {
        let root = sets.find(global(i, i as u32));
        new_id[root] = i as u32;
        nodes.push(NodeRecord { id: i as u32, level_class: level, origin: NodeOrigin::External(i as u8) });
    }
    for copy in 0..q {
        for v in 0..n as u32 {
            let root = sets.find(global(copy, v));
            if new_id[root] != UNSET {
                continue;
            }
            let id = nodes.len() as u32;
            new_id[root] = id;
            let old = prev.nodes[v as usize];
            let record = match old.origin {
                // External node `v` of copy `copy` is glued to external node
                // `copy` of copy `v`.
                NodeOrigin::External(j) => {
                    let i = copy as u8;
                    NodeRecord { id, level_class: level - 1, origin: NodeOrigin::Glued(i.min(j), i.max(j)) }
                }
                NodeOrigin::Glued(..) => NodeRecord { id, ..old },
            };
            nodes.push(record);
        }
    }
    let relabel = |copy: usize, v: u32| new_id[sets.find_immutable(global(copy, v))];

    let mut basic_edges = Vec::with_capacity(q * prev.basic_edges.len());
    let mut slots = Vec::with_capacity(q * prev.slots.len() + motif.r());
    for copy in 0..q {
        basic_edges.extend(prev.basic_edges.iter().map(|&(u, v)| ordered(relabel(copy, u), relabel(copy, v))));
        slots.extend(prev.slots.iter().map(|s| SlotRecord {
            endpoints: ordered(relabel(copy, s.endpoints.0), relabel(copy, s.endpoints.1)),
            creation_level: s.creation_level,
        }));
    }
    slots.extend(
        motif
            .edges()
            .iter()
            .map(|&(i, j)| SlotRecord { endpoints: (u32::from(i), u32::from(j)), creation_level: level }),
    );

    GraphTopology { motif: prev.motif, k: level, nodes, basic_edges, slots }
}

fn ordered(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Node counts per level class.
pub fn level_partition(g: &GraphTopology) -> BTreeMap<u32, usize> {
    let mut counts = BTreeMap::new();
    for node in &g.nodes {
        *counts.entry(node.level_class).or_insert(0) += 1;
    }
    counts
}

/// Union-find with path halving; the smaller root wins so the structure is
/// deterministic.
struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn find_immutable(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

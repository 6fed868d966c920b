//! Clustering, diameters and boundary ratios of realized graphs.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::decoration::DecorationRealization;
use crate::hierarchy::GraphTopology;
use crate::motif::MotifSpec;

/// Compressed adjacency of a realized graph; neighbor lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Adjacency {
    pub fn from_edges(node_count: usize, edges: &[(u32, u32)]) -> Self {
        let mut offsets = vec![0usize; node_count + 1];
        for &(u, v) in edges {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; offsets[node_count]];
        for &(u, v) in edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for i in 0..node_count {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Adjacency { offsets, targets }
    }

    pub fn realized(g: &GraphTopology, real: &DecorationRealization) -> Self {
        let edges: Vec<_> = real.realized_edges(g).collect();
        Self::from_edges(g.node_count(), &edges)
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn mean_degree(&self) -> f64 {
        self.targets.len() as f64 / self.node_count() as f64
    }

    /// `N(v)`: number of bonds among the neighbors of `v`.
    pub fn neighbor_links(&self, v: u32) -> usize {
        let nv = self.neighbors(v);
        let mut links = 0;
        for &u in nv {
            links += count_common(self.neighbors(u), nv);
        }
        links / 2
    }

    /// `Q(v) = 2N(v)/(n(v)(n(v)-1))`, zero when `n(v) < 2`.
    pub fn local_clustering(&self, v: u32) -> f64 {
        let n = self.degree(v);
        if n < 2 {
            return 0.0;
        }
        2.0 * self.neighbor_links(v) as f64 / (n * (n - 1)) as f64
    }

    /// Largest BFS distance from `source`, or `None` if some node is
    /// unreachable.
    pub fn eccentricity(&self, source: u32) -> Option<u32> {
        let n = self.node_count();
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::with_capacity(n);
        dist[source as usize] = 0;
        queue.push_back(source);
        let mut seen = 1;
        let mut far = 0;
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            far = d;
            for &u in self.neighbors(v) {
                if dist[u as usize] == u32::MAX {
                    dist[u as usize] = d + 1;
                    seen += 1;
                    queue.push_back(u);
                }
            }
        }
        (seen == n).then_some(far)
    }

    /// Exact diameter by BFS from every node; `None` if disconnected.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for v in 0..self.node_count() as u32 {
            best = best.max(self.eccentricity(v)?);
        }
        Some(best)
    }
}

fn count_common(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

pub fn clustering_average(g: &GraphTopology, real: &DecorationRealization) -> f64 {
    let adj = Adjacency::realized(g, real);
    let n = adj.node_count();
    (0..n as u32).map(|v| adj.local_clustering(v)).sum::<f64>() / n as f64
}

/// Mean `Q(i)` over each level class.
pub fn per_level_clustering(g: &GraphTopology, adj: &Adjacency) -> BTreeMap<u32, f64> {
    let mut acc: BTreeMap<u32, (f64, usize)> = BTreeMap::new();
    for node in g.nodes() {
        let e = acc.entry(node.level_class).or_insert((0.0, 0));
        e.0 += adj.local_clustering(node.id);
        e.1 += 1;
    }
    acc.into_iter().map(|(l, (s, c))| (l, s / c as f64)).collect()
}

pub fn diameter(g: &GraphTopology, real: &DecorationRealization) -> u32 {
    // The basic skeleton is connected, so every realization is.
    Adjacency::realized(g, real).diameter().expect("realized graphs are connected")
}

/// `(k(q-1)² + (q-1)(k+2)) / ((q^k + q)/2)`.
pub fn boundary_ratio_closed(motif: &MotifSpec, k: u32) -> f64 {
    let q = motif.q() as f64;
    let kf = f64::from(k);
    let boundary = kf * (q - 1.0) * (q - 1.0) + (q - 1.0) * (kf + 2.0);
    boundary / ((libm::pow(q, kf) + q) / 2.0)
}

/// Partial sum `4 Σ_{l=1}^{terms} 3^{-l}/(4l-1)`, the large-`k` clustering of
/// the fully decorated triangle graph.
pub fn clustering_limit_m1_decorated(terms: u32) -> f64 {
    4.0 * (1..=terms).map(|l| libm::pow(3.0, -f64::from(l)) / (4.0 * f64::from(l) - 1.0)).sum::<f64>()
}

/// Average clustering of the fully decorated triangle graph `Λ_k` under the
/// per-node counts `N = 4l` (internal) and `N = 2k - 1` (external). These
/// undercount the links for `l >= 2`; see [`clustering_m1_decorated_exact`].
pub fn clustering_m1_decorated_closed(k: u32) -> f64 {
    let three_k = libm::pow(3.0, f64::from(k));
    let series: f64 = (1..k).map(|l| libm::pow(3.0, -f64::from(l)) / (4.0 * f64::from(l) - 1.0)).sum();
    4.0 * three_k / (three_k + 3.0) * series + 6.0 / (f64::from(k) * (three_k + 3.0))
}

/// Average clustering of the fully decorated triangle graph from the link
/// counts of the construction itself: a level-`l` internal node has
/// `n = 4l`, `N = 6l - 2`, an external node `n = 2k`, `N = 3k - 2`.
pub fn clustering_m1_decorated_exact(k: u32) -> f64 {
    let kf = f64::from(k);
    let three_k = libm::pow(3.0, kf);
    let internal: f64 = (1..k)
        .map(|l| {
            let lf = f64::from(l);
            libm::pow(3.0, kf - lf) * 2.0 * (6.0 * lf - 2.0) / (4.0 * lf * (4.0 * lf - 1.0))
        })
        .sum();
    let external = 3.0 * 2.0 * (3.0 * kf - 2.0) / (2.0 * kf * (2.0 * kf - 1.0));
    (internal + external) / ((three_k + 3.0) / 2.0)
}

/// Large-`k` limit of [`clustering_m1_decorated_exact`] summed to `terms`:
/// `Σ_l 2·3^{-l} (3l - 1)/(l(4l - 1))`.
pub fn clustering_limit_m1_decorated_exact(terms: u32) -> f64 {
    (1..=terms)
        .map(|l| {
            let lf = f64::from(l);
            2.0 * libm::pow(3.0, -lf) * (3.0 * lf - 1.0) / (lf * (4.0 * lf - 1.0))
        })
        .sum()
}

/// Average clustering of the bare triangle graph `Λ_k`, `k >= 2`:
/// `1/3 + |V^{(1)}|/(6|V|) + 2/|V|`.
pub fn clustering_m1_bare_closed(k: u32) -> f64 {
    let v = (libm::pow(3.0, f64::from(k)) + 3.0) / 2.0;
    let v1 = libm::pow(3.0, f64::from(k - 1));
    1.0 / 3.0 + v1 / (6.0 * v) + 2.0 / v
}

/// Average clustering of the bare complete-four-node graph `Λ_k`, `k >= 2`:
/// `2/5 + 2|V^{(1)}|/(15|V|) + 12/(5|V|)`.
pub fn clustering_m5_bare_closed(k: u32) -> f64 {
    let v = (libm::pow(4.0, f64::from(k)) + 4.0) / 2.0;
    let v1 = 1.5 * libm::pow(4.0, f64::from(k - 1));
    0.4 + 2.0 * v1 / (15.0 * v) + 12.0 / (5.0 * v)
}

/// `diam ≤ C log_{⟨n⟩} |V|` with `⟨n⟩` the realized mean degree.
pub fn small_world_bound_holds(adj: &Adjacency, diameter: u32, c: f64) -> bool {
    let n = adj.node_count() as f64;
    let mean = adj.mean_degree();
    f64::from(diameter) <= c * libm::log(n) / libm::log(mean)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    pub clustering_avg: f64,
    pub diameter: u32,
    pub boundary_ratio: f64,
    pub per_level_clustering: BTreeMap<u32, f64>,
}

pub fn structure_report(g: &GraphTopology, real: &DecorationRealization) -> StructureReport {
    let adj = Adjacency::realized(g, real);
    let n = adj.node_count();
    StructureReport {
        clustering_avg: (0..n as u32).map(|v| adj.local_clustering(v)).sum::<f64>() / n as f64,
        diameter: adj.diameter().expect("realized graphs are connected"),
        boundary_ratio: boundary_ratio_closed(g.motif_spec(), g.k()),
        per_level_clustering: per_level_clustering(g, &adj),
    }
}

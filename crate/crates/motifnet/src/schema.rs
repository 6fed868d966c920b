//! Serialized documents. Every JSON document carries `schema_version`; CSV
//! rows use the field names below as their header.

use std::collections::BTreeMap;

use motifnet_core::degree::FitReport;
use motifnet_core::ising::{IsingTrajectory, PhasePoint};
use motifnet_core::{DecorationRealization, GraphTopology};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct NodeDoc {
    pub id: u32,
    pub level_class: u32,
    pub external: bool,
}

#[derive(Debug, Serialize)]
pub struct SlotDoc {
    pub endpoints: [u32; 2],
    pub creation_level: u32,
}

#[derive(Debug, Serialize)]
pub struct GraphDoc {
    pub schema_version: u32,
    pub motif: String,
    pub k: u32,
    pub nodes: Vec<NodeDoc>,
    pub basic_edges: Vec<[u32; 2]>,
    pub slots: Vec<SlotDoc>,
}

impl GraphDoc {
    pub fn new(g: &GraphTopology) -> Self {
        GraphDoc {
            schema_version: SCHEMA_VERSION,
            motif: g.motif().to_string(),
            k: g.k(),
            nodes: g
                .nodes()
                .iter()
                .map(|n| NodeDoc { id: n.id, level_class: n.level_class, external: n.is_external() })
                .collect(),
            basic_edges: g.basic_edges().iter().map(|&(u, v)| [u, v]).collect(),
            slots: g
                .decoration_slots()
                .iter()
                .map(|s| SlotDoc { endpoints: [s.endpoints.0, s.endpoints.1], creation_level: s.creation_level })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Basic,
    Decoration,
}

#[derive(Debug, Serialize)]
pub struct EdgeRow {
    pub u: u32,
    pub v: u32,
    pub kind: EdgeKind,
}

pub fn edge_rows(g: &GraphTopology, real: &DecorationRealization) -> Vec<EdgeRow> {
    let basic = g.basic_edges().iter().map(|&(u, v)| EdgeRow { u, v, kind: EdgeKind::Basic });
    let decorations = real.active_slots().map(|s| {
        let (u, v) = g.decoration_slots()[s].endpoints;
        EdgeRow { u, v, kind: EdgeKind::Decoration }
    });
    basic.chain(decorations).collect()
}

#[derive(Debug, Serialize)]
pub struct RealizationDoc {
    pub schema_version: u32,
    pub motif: String,
    pub k: u32,
    pub p: f64,
    pub seed: u64,
    pub node_count: usize,
    pub edges: Vec<EdgeRow>,
}

impl RealizationDoc {
    pub fn new(g: &GraphTopology, real: &DecorationRealization) -> Self {
        RealizationDoc {
            schema_version: SCHEMA_VERSION,
            motif: g.motif().to_string(),
            k: g.k(),
            p: real.p(),
            seed: real.seed(),
            node_count: g.node_count(),
            edges: edge_rows(g, real),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DegreeRow {
    pub degree: u32,
    pub empirical_prob: f64,
    pub model_prob: f64,
}

#[derive(Debug, Serialize)]
pub struct CharFnDoc {
    pub t: f64,
    pub empirical_re: f64,
    pub empirical_im: f64,
    pub model_re: f64,
    pub model_im: f64,
}

#[derive(Debug, Serialize)]
pub struct DegreeDoc {
    pub schema_version: u32,
    pub motif: String,
    pub k: u32,
    pub p: f64,
    pub seed: u64,
    pub samples: u64,
    pub empirical_mean: f64,
    pub mean_standard_error: f64,
    pub closed_mean: f64,
    pub total_variation: f64,
    pub histogram: Vec<DegreeRow>,
    pub char_fn: Vec<CharFnDoc>,
}

pub fn degree_rows(fit: &FitReport) -> Vec<DegreeRow> {
    fit.histogram
        .iter()
        .map(|h| DegreeRow { degree: h.degree, empirical_prob: h.empirical, model_prob: h.model })
        .collect()
}

impl DegreeDoc {
    pub fn new(fit: &FitReport, seed: u64) -> Self {
        DegreeDoc {
            schema_version: SCHEMA_VERSION,
            motif: fit.motif.to_string(),
            k: fit.k,
            p: fit.p,
            seed,
            samples: fit.n_samples,
            empirical_mean: fit.empirical_mean,
            mean_standard_error: fit.mean_standard_error,
            closed_mean: fit.closed_mean,
            total_variation: fit.total_variation,
            histogram: degree_rows(fit),
            char_fn: fit
                .char_fn
                .iter()
                .map(|c| CharFnDoc {
                    t: c.t,
                    empirical_re: c.empirical.re,
                    empirical_im: c.empirical.im,
                    model_re: c.model.re,
                    model_im: c.model.im,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureRow {
    pub k: u32,
    #[serde(rename = "Q_k")]
    pub q_k: f64,
    pub diam: u32,
    pub boundary_ratio: f64,
}

#[derive(Debug, Serialize)]
pub struct StructureDoc {
    pub schema_version: u32,
    pub motif: String,
    pub p: f64,
    pub seed: u64,
    pub samples: u64,
    /// One row per level `1..=k`: mean clustering and largest diameter over
    /// the ensemble.
    pub series: Vec<StructureRow>,
    /// Mean clustering per level class at the top level.
    pub per_level_clustering: BTreeMap<u32, f64>,
}

#[derive(Clone, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct PhaseRow {
    pub L: f64,
    pub p: f64,
    pub K: f64,
    pub t: f64,
    pub x1: f64,
    pub x_star1: Option<f64>,
    pub x_star2: Option<f64>,
    pub K_star: Option<f64>,
    pub verdict: String,
}

impl From<&PhasePoint> for PhaseRow {
    fn from(pp: &PhasePoint) -> Self {
        PhaseRow {
            L: pp.params.decoration,
            p: pp.params.p,
            K: pp.params.basic,
            t: pp.t,
            x1: pp.x1,
            x_star1: pp.x_star1,
            x_star2: pp.x_star2,
            K_star: pp.k_star,
            verdict: pp.verdict.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PhaseDoc {
    pub schema_version: u32,
    pub rows: Vec<PhaseRow>,
}

#[derive(Debug, Serialize)]
#[allow(non_snake_case)]
pub struct TrajectoryDoc {
    pub schema_version: u32,
    pub K: f64,
    pub L: f64,
    pub p: f64,
    pub t: f64,
    pub y1: [f64; 3],
    /// `x_1 ..`; `null` once the sequence has escaped to infinity.
    pub x: Vec<Option<f64>>,
    pub dobrushin_S: Vec<f64>,
    pub diameter_Y: Vec<f64>,
    pub verdict: String,
}

impl TrajectoryDoc {
    pub fn new(traj: &IsingTrajectory) -> Self {
        TrajectoryDoc {
            schema_version: SCHEMA_VERSION,
            K: traj.params.basic,
            L: traj.params.decoration,
            p: traj.params.p,
            t: traj.params.t(),
            y1: traj.y[0],
            x: traj.x.iter().map(|&x| x.is_finite().then_some(x)).collect(),
            dobrushin_S: traj.dobrushin_s.clone(),
            diameter_Y: traj.diameter_y.clone(),
            verdict: traj.verdict.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
#[allow(non_snake_case)]
pub struct TrajectoryRow {
    pub k: usize,
    pub x: Option<f64>,
    pub dobrushin_S: Option<f64>,
    pub diameter_Y: f64,
}

pub fn trajectory_rows(traj: &IsingTrajectory) -> Vec<TrajectoryRow> {
    traj.diameter_y
        .iter()
        .enumerate()
        .map(|(i, &d)| TrajectoryRow {
            k: i + 1,
            x: traj.x.get(i).copied().filter(|x| x.is_finite()),
            dobrushin_S: traj.dobrushin_s.get(i).copied(),
            diameter_Y: d,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyDoc {
    pub schema_version: u32,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckRow>,
}

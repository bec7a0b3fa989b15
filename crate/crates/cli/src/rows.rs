//! Fixed CSV schemas, one struct per file kind.

use serde::Serialize;
use unifoliate::construct::{ConstructionReport, Layer, LayeredHypergraph};

/// `construct g --report` and `report`: `section,key,value`.
#[derive(Serialize)]
pub struct ReportRow {
    pub section: &'static str,
    pub key: String,
    pub value: String,
}

/// `--degrees`: one row per vertex. `required` is the exact degree for `D`
/// and the lower bound for `C_i`; empty for `A`.
#[derive(Serialize)]
pub struct DegreeRow {
    pub vertex: String,
    pub layer: String,
    pub degree: usize,
    pub required: Option<u64>,
}

/// `lemma near-or-far`.
#[derive(Serialize)]
pub struct NearOrFarRow {
    pub trial: String,
    pub seed: u64,
    pub d: usize,
    pub a: Option<f64>,
    pub rho_xy: Option<f64>,
    pub rho_yz: Option<f64>,
    pub rho_xz: Option<f64>,
    pub hypothesis: Option<bool>,
    pub conclusion: Option<bool>,
    pub margin: Option<f64>,
    pub pass_fraction: Option<f64>,
}

/// `lemma cap`.
#[derive(Serialize)]
pub struct CapRow {
    pub d: usize,
    pub radius: f64,
    pub samples: usize,
    pub seed: u64,
    pub estimate: f64,
    pub std_err: f64,
}

/// `lemma theta-chain`.
#[derive(Serialize)]
pub struct ChainRow {
    pub step: String,
    pub theta: f64,
    pub f: usize,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub ln_lhs: Option<f64>,
    pub ln_rhs: Option<f64>,
    pub holds: Option<bool>,
    pub pass_fraction: Option<f64>,
}

pub fn report_rows(g: &LayeredHypergraph, report: &ConstructionReport) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    let mut push = |section: &'static str, key: &str, value: String| {
        rows.push(ReportRow {
            section,
            key: key.to_string(),
            value,
        })
    };
    let p = &g.params;
    for (key, value) in [
        ("r", p.r.to_string()),
        ("n", p.n.to_string()),
        ("k", p.k.to_string()),
        ("seed", p.seed.to_string()),
        ("mode", p.mode.clone()),
        ("f", p.geo.f.to_string()),
        ("beta", p.geo.beta.to_string()),
        ("theta", p.geo.theta.to_string()),
        ("ell", p.ell.to_string()),
        ("cycle_span", p.cycle_span.to_string()),
        ("blowup", p.blowup.to_string()),
        ("sparsen_p", p.sparsen_p.to_string()),
        ("points", p.points.to_string()),
        ("d", p.d.to_string()),
    ] {
        push("param", key, value);
    }
    let s = &p.pipeline;
    for (key, value) in [
        ("tuples", s.tuples.to_string()),
        ("h_prime_edges", s.h_prime_edges.to_string()),
        ("blowup_edges", s.blowup_edges.to_string()),
        ("sparsened_edges", s.sparsened_edges.to_string()),
        ("deleted_edges", s.deleted_edges.to_string()),
        ("v0_tuples", s.v0_tuples.to_string()),
        ("v0_ratio", s.v0_ratio.to_string()),
        ("v0_reference", s.v0_reference.to_string()),
        ("h0_vertices", s.h0_vertices.to_string()),
        ("h0_edges", s.h0_edges.to_string()),
    ] {
        push("pipeline", key, value);
    }
    for l in &report.layers {
        let name = l.layer.to_string();
        push("layer", &format!("{name}.vertices"), l.vertices.to_string());
        push("layer", &format!("{name}.min_degree"), l.min_degree.to_string());
        push("layer", &format!("{name}.mean_degree"), l.mean_degree.to_string());
        push("layer", &format!("{name}.max_degree"), l.max_degree.to_string());
    }
    let e = &report.edge_types;
    push("edges", "inside_a", e.inside_a.to_string());
    push("edges", "transversal", e.transversal.to_string());
    push("edges", "cross", e.cross.to_string());
    push("edges", "other", e.other.to_string());
    push("degree", "d_degree", report.d_degree.to_string());
    push("degree", "a_degree_reference", report.a_degree_reference.to_string());
    push("degree", "a_degree_ratio", opt(report.a_degree_ratio));
    if let Some(a) = &report.a_independence {
        push("independence", "alpha_a", a.alpha.to_string());
        push("independence", "exact", a.exact.to_string());
        push("independence", "ratio", a.ratio.to_string());
    }
    let pre = &report.preconditions;
    push("precondition", "theta_budget_ok", pre.theta_budget_ok.to_string());
    push("precondition", "cap_diameter_ok", pre.cap_diameter_ok.to_string());
    push("precondition", "beta_certified", pre.beta_certified.to_string());
    push("precondition", "cap_measure", pre.cap_measure.to_string());
    push("flag", "a_layer_edgeless", (e.inside_a == 0).to_string());
    for c in &report.checks {
        push("check", &c.name, c.passed.to_string());
    }
    push("summary", "passed", report.passed.to_string());
    rows
}

pub fn degree_rows(g: &LayeredHypergraph, report: &ConstructionReport) -> Vec<DegreeRow> {
    (0..g.graph.num_vertices())
        .map(|v| DegreeRow {
            vertex: g.graph.name(v).to_string(),
            layer: g.layers[v].to_string(),
            degree: g.graph.degree_of(v),
            required: match g.layers[v] {
                Layer::A => None,
                Layer::C(_) | Layer::D => Some(report.d_degree),
            },
        })
        .collect()
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::geometric::GeometricVertex;
use super::pipeline::{build_h0, derive_seed, PipelineOptions, PipelineStats, H0};
use crate::error::{Budget, Error, Result};
use crate::hypercore::{independence_number, Hypergraph, HypergraphFile, IndependenceOutcome};
use crate::spheregeo::{
    cap_estimate, chord, choose_beta, choose_theta, sample_points, GeoParams, SphereSample,
};

/// Layer of a vertex of `G`: `A`, `C_i` (1-based) or `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Layer {
    A,
    C(usize),
    D,
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Layer::A => write!(f, "A"),
            Layer::C(i) => write!(f, "C{i}"),
            Layer::D => write!(f, "D"),
        }
    }
}

impl FromStr for Layer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Layer::A),
            "D" => Ok(Layer::D),
            _ => s
                .strip_prefix('C')
                .and_then(|i| i.parse().ok())
                .filter(|&i| i >= 1)
                .map(Layer::C)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown layer `{s}`"))),
        }
    }
}

impl From<Layer> for String {
    fn from(l: Layer) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for Layer {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum Mode {
    /// `beta` certified from cap samples and `theta` from the grid search.
    Strict,
    /// Caller-chosen `beta` and `theta`; failed preconditions are flagged.
    Relaxed { beta: f64, theta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GOptions {
    /// Target chromatic number. Recorded only: at desk scale it does not
    /// change any parameter.
    pub k: usize,
    pub epsilon: f64,
    pub n: usize,
    pub seed: u64,
    pub mode: Mode,
    pub blowup: usize,
    pub sparsen_p: f64,
    /// Size of the sphere sample `P` behind `H′`.
    pub points: usize,
    pub d: usize,
    pub beta_samples: usize,
}

impl GOptions {
    pub fn relaxed(n: usize, seed: u64, beta: f64, theta: f64) -> Self {
        GOptions {
            k: 3,
            epsilon: 0.1,
            n,
            seed,
            mode: Mode::Relaxed { beta, theta },
            blowup: 2,
            sparsen_p: 1.0,
            points: 6,
            d: 3,
            beta_samples: 20_000,
        }
    }

    pub fn strict(n: usize, seed: u64, epsilon: f64) -> Self {
        GOptions {
            epsilon,
            mode: Mode::Strict,
            ..GOptions::relaxed(n, seed, 0.0, 0.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preconditions {
    /// `4^f theta^(2^-f) < 1/10`.
    pub theta_budget_ok: bool,
    /// Cap diameter below `2 - 4^f theta^(2^-f)`.
    pub cap_diameter_ok: bool,
    /// Cap measure at radius `√2 - beta` is at least `1/2 - epsilon` after
    /// subtracting three standard errors.
    pub beta_certified: bool,
    pub cap_measure: f64,
}

impl Preconditions {
    pub fn all_ok(&self) -> bool {
        self.theta_budget_ok && self.cap_diameter_ok && self.beta_certified
    }

    pub fn failing(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.theta_budget_ok {
            out.push("theta budget");
        }
        if !self.cap_diameter_ok {
            out.push("cap diameter");
        }
        if !self.beta_certified {
            out.push("beta certification");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub r: usize,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub mode: String,
    pub geo: GeoParams,
    pub ell: usize,
    /// `|V(F)|`: cycles spanning at most this many vertices were deleted.
    pub cycle_span: usize,
    pub blowup: usize,
    pub sparsen_p: f64,
    pub points: usize,
    pub d: usize,
    pub preconditions: Preconditions,
    pub pipeline: PipelineStats,
}

/// The layered hypergraph `G(F, k, epsilon, n)` with its geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LayeredFile", into = "LayeredFile")]
pub struct LayeredHypergraph {
    pub graph: Hypergraph,
    pub layers: Vec<Layer>,
    /// Tuple of each `A` vertex, `None` elsewhere.
    pub tuples: Vec<Option<GeometricVertex>>,
    /// Index into `c_samples[i - 1]` of each `C_i` vertex, `None` elsewhere.
    pub c_points: Vec<Option<usize>>,
    pub a_sample: SphereSample,
    pub c_samples: Vec<SphereSample>,
    pub params: ConstructionParams,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeometryFile {
    pub a_sample: SphereSample,
    pub c_samples: Vec<SphereSample>,
    pub a_tuples: BTreeMap<String, GeometricVertex>,
    pub c_points: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayeredFile {
    #[serde(flatten)]
    pub graph: HypergraphFile,
    pub layers: BTreeMap<String, Layer>,
    pub geometry: GeometryFile,
    pub params: ConstructionParams,
}

impl From<LayeredHypergraph> for LayeredFile {
    fn from(g: LayeredHypergraph) -> Self {
        let name = |v: usize| g.graph.name(v).to_string();
        let n = g.graph.num_vertices();
        LayeredFile {
            graph: g.graph.to_file(),
            layers: (0..n).map(|v| (name(v), g.layers[v])).collect(),
            geometry: GeometryFile {
                a_tuples: (0..n)
                    .filter_map(|v| g.tuples[v].clone().map(|t| (name(v), t)))
                    .collect(),
                c_points: (0..n)
                    .filter_map(|v| g.c_points[v].map(|i| (name(v), i)))
                    .collect(),
                a_sample: g.a_sample,
                c_samples: g.c_samples,
            },
            params: g.params,
        }
    }
}

impl TryFrom<LayeredFile> for LayeredHypergraph {
    type Error = Error;

    fn try_from(file: LayeredFile) -> Result<Self> {
        let graph = Hypergraph::try_from(file.graph)?;
        let mut layers = Vec::with_capacity(graph.num_vertices());
        let mut tuples = Vec::with_capacity(graph.num_vertices());
        let mut c_points = Vec::with_capacity(graph.num_vertices());
        for name in graph.names() {
            let layer = *file
                .layers
                .get(name)
                .ok_or_else(|| Error::InvalidArgument(format!("vertex `{name}` has no layer")))?;
            let tuple = file.geometry.a_tuples.get(name).cloned();
            let point = file.geometry.c_points.get(name).copied();
            let consistent = match layer {
                Layer::A => tuple.is_some() && point.is_none(),
                Layer::C(i) => {
                    tuple.is_none()
                        && i < graph.r()
                        && point.is_some_and(|p| {
                            file.geometry.c_samples.get(i - 1).is_some_and(|s| p < s.len())
                        })
                }
                Layer::D => tuple.is_none() && point.is_none(),
            };
            if !consistent {
                return Err(Error::InvalidArgument(format!(
                    "geometry of `{name}` does not match its layer {layer}"
                )));
            }
            layers.push(layer);
            tuples.push(tuple);
            c_points.push(point);
        }
        Ok(LayeredHypergraph {
            graph,
            layers,
            tuples,
            c_points,
            a_sample: file.geometry.a_sample,
            c_samples: file.geometry.c_samples,
            params: file.params,
        })
    }
}

impl LayeredHypergraph {
    pub fn vertices_in(&self, layer: Layer) -> Vec<usize> {
        (0..self.layers.len()).filter(|&v| self.layers[v] == layer).collect()
    }

    /// `G[A]` with the `A/` prefix stripped, so it compares equal to `H₀`.
    pub fn a_layer(&self) -> Result<Hypergraph> {
        let a = self.vertices_in(Layer::A);
        let sub = self.graph.induced_indices(&a);
        let names = sub
            .names()
            .iter()
            .map(|s| s.strip_prefix("A/").unwrap_or(s).to_string())
            .collect();
        Hypergraph::from_indices(sub.r(), names, sub.edges().to_vec())
    }

    /// Does `w ∈ A` see the `C`-point `c` of `C_j` within `√2 - beta` in
    /// every coordinate?
    fn close(&self, w: usize, j: usize, c: usize) -> bool {
        let limit = std::f64::consts::SQRT_2 - self.params.geo.beta;
        let q = self.c_samples[j - 1].point(c);
        self.tuples[w]
            .as_ref()
            .is_some_and(|t| t.tuple.iter().all(|&p| chord(self.a_sample.point(p), q) < limit))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("layered hypergraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// `G` together with the `H₀` placed on its `A` layer.
#[derive(Debug, Clone)]
pub struct Construction {
    pub g: LayeredHypergraph,
    pub h0: H0,
}

pub fn build_g(f: &Hypergraph, opts: &GOptions, budget: &mut Budget) -> Result<LayeredHypergraph> {
    Ok(construct_g(f, opts, budget)?.g)
}

pub fn construct_g(f: &Hypergraph, opts: &GOptions, budget: &mut Budget) -> Result<Construction> {
    let r = f.r();
    if r < 3 {
        return Err(Error::InvalidArgument(format!("the construction needs r >= 3, got {r}")));
    }
    if opts.n == 0 || !opts.n.is_multiple_of(r) {
        return Err(Error::InvalidArgument(format!(
            "n = {} must be a positive multiple of r = {r}",
            opts.n
        )));
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let beta_seed = derive_seed(opts.seed, "beta");
    let (geo, measure, lower) = match opts.mode {
        Mode::Strict => {
            let choice = choose_beta(opts.epsilon, opts.d, opts.beta_samples, beta_seed)?;
            let mut geo = choose_theta(f.num_edges(), choice.beta).map_err(|e| match e {
                Error::Infeasible(msg) => Error::Infeasible(format!(
                    "{msg}; strict mode is infeasible for f = {}, rerun with --mode relaxed",
                    f.num_edges()
                )),
                other => other,
            })?;
            geo.epsilon = Some(opts.epsilon);
            (geo, choice.measure, choice.certified)
        }
        Mode::Relaxed { beta, theta } => {
            if !(beta > 0.0 && beta < sqrt2) || theta.is_nan() || theta <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "need 0 < beta < √2 and theta > 0 (beta = {beta}, theta = {theta})"
                )));
            }
            let mut geo = GeoParams::relaxed(beta, theta, f.num_edges());
            geo.epsilon = Some(opts.epsilon);
            let cap = cap_estimate(opts.d, sqrt2 - beta, opts.beta_samples, beta_seed)?;
            (geo, cap.measure, cap.measure - 3.0 * cap.std_err)
        }
    };
    let preconditions = Preconditions {
        theta_budget_ok: geo.budget_ok(),
        cap_diameter_ok: geo.diameter_ok(),
        beta_certified: lower >= 0.5 - opts.epsilon,
        cap_measure: measure,
    };

    let pipeline = PipelineOptions {
        points: opts.points,
        d: opts.d,
        theta: geo.theta,
        blowup: opts.blowup,
        sparsen_p: opts.sparsen_p,
        cycle_span: f.num_vertices(),
        seed: opts.seed,
    };
    let h0 = build_h0(r, &pipeline, budget)?;
    let m = opts.n / r;
    let c_samples = (1..r)
        .map(|j| sample_points(m, opts.d, derive_seed(opts.seed, &format!("C{j}"))))
        .collect::<Result<Vec<_>>>()?;

    let na = h0.graph.num_vertices();
    let mut names: Vec<String> = h0.graph.names().iter().map(|s| format!("A/{s}")).collect();
    let mut layers = vec![Layer::A; na];
    let mut tuples: Vec<Option<GeometricVertex>> = h0.geometry.iter().cloned().map(Some).collect();
    let mut c_points = vec![None; na];
    for j in 1..r {
        for i in 0..m {
            names.push(format!("C{j}/{i}"));
            layers.push(Layer::C(j));
            tuples.push(None);
            c_points.push(Some(i));
        }
    }
    for i in 0..m {
        names.push(format!("D/{i}"));
        layers.push(Layer::D);
        tuples.push(None);
        c_points.push(None);
    }
    let c_start = |j: usize| na + (j - 1) * m;
    let d_start = na + (r - 1) * m;

    let mut layered = LayeredHypergraph {
        graph: Hypergraph::edgeless(r, names.clone())?,
        layers,
        tuples,
        c_points,
        a_sample: h0.sample.clone(),
        c_samples,
        params: ConstructionParams {
            r,
            n: opts.n,
            k: opts.k,
            seed: opts.seed,
            mode: match opts.mode {
                Mode::Strict => "strict".into(),
                Mode::Relaxed { .. } => "relaxed".into(),
            },
            geo,
            ell: h0.ell,
            cycle_span: f.num_vertices(),
            blowup: opts.blowup,
            sparsen_p: opts.sparsen_p,
            points: opts.points,
            d: opts.d,
            preconditions,
            pipeline: h0.stats.clone(),
        },
    };

    let mut edges: Vec<Vec<usize>> = h0.graph.edges().to_vec();
    // C_1 × ... × C_{r-1} × D, complete
    let mut choice = vec![0usize; r];
    for_each_product(&vec![m; r], &mut choice, &mut |c| {
        budget.tick("transversal C×D edges")?;
        let mut e: Vec<usize> = (1..r).map(|j| c_start(j) + c[j - 1]).collect();
        e.push(d_start + c[r - 1]);
        edges.push(e);
        Ok(())
    })?;
    // A × C_1 × ... × C_{r-1}, by the cap rule
    for w in 0..na {
        let compat: Vec<Vec<usize>> = (1..r)
            .map(|j| (0..m).filter(|&c| layered.close(w, j, c)).collect())
            .collect();
        let sizes: Vec<usize> = compat.iter().map(Vec::len).collect();
        let mut choice = vec![0usize; r - 1];
        for_each_product(&sizes, &mut choice, &mut |c| {
            budget.tick("A×C edges")?;
            let mut e = vec![w];
            e.extend((1..r).map(|j| c_start(j) + compat[j - 1][c[j - 1]]));
            edges.push(e);
            Ok(())
        })?;
    }
    layered.graph = Hypergraph::from_indices(r, names, edges)?;
    Ok(Construction { g: layered, h0 })
}

/// Calls `visit` on every point of `[0, sizes[0]) × ... × [0, sizes[k-1])`
/// in lexicographic order.
fn for_each_product(
    sizes: &[usize],
    choice: &mut [usize],
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if sizes.contains(&0) {
        return Ok(());
    }
    choice.iter_mut().for_each(|c| *c = 0);
    loop {
        visit(choice)?;
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < sizes[i] {
                break;
            }
            choice[i] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerStats {
    pub layer: Layer,
    pub vertices: usize,
    pub min_degree: usize,
    pub mean_degree: f64,
    pub max_degree: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeTypeCounts {
    pub inside_a: usize,
    /// `C_1 × ... × C_{r-1} × D`.
    pub transversal: usize,
    /// `A × C_1 × ... × C_{r-1}`.
    pub cross: usize,
    pub other: usize,
}

impl EdgeTypeCounts {
    pub fn total(&self) -> usize {
        self.inside_a + self.transversal + self.cross + self.other
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AIndependence {
    /// Exact `alpha(G[A])`, or the best lower bound found within budget.
    pub alpha: usize,
    pub exact: bool,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub layers: Vec<LayerStats>,
    pub edge_types: EdgeTypeCounts,
    /// `(n/r)^(r-1)`: exact degree of every `D` vertex.
    pub d_degree: u64,
    /// `(n/(r 2^ell))^(r-1)`, the leading term of the `A` degree bound.
    pub a_degree_reference: f64,
    /// Minimum `A` degree divided by the reference.
    pub a_degree_ratio: Option<f64>,
    pub a_independence: Option<AIndependence>,
    pub preconditions: Preconditions,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Node budget for the independence number of `G[A]` in reports.
pub const REPORT_ALPHA_NODES: u64 = 2_000_000;

pub fn verify_construction(g: &LayeredHypergraph) -> ConstructionReport {
    verify_construction_with(g, &mut Budget::new(REPORT_ALPHA_NODES))
}

pub fn verify_construction_with(g: &LayeredHypergraph, alpha_budget: &mut Budget) -> ConstructionReport {
    let h = &g.graph;
    let r = h.r();
    let p = &g.params;
    let m = p.n / r.max(1);
    let mut order: Vec<Layer> = vec![Layer::A];
    order.extend((1..r).map(Layer::C));
    order.push(Layer::D);

    let layers: Vec<LayerStats> = order
        .iter()
        .map(|&layer| {
            let vs = g.vertices_in(layer);
            let degs: Vec<usize> = vs.iter().map(|&v| h.degree_of(v)).collect();
            LayerStats {
                layer,
                vertices: vs.len(),
                min_degree: degs.iter().copied().min().unwrap_or(0),
                mean_degree: if degs.is_empty() {
                    0.0
                } else {
                    degs.iter().sum::<usize>() as f64 / degs.len() as f64
                },
                max_degree: degs.iter().copied().max().unwrap_or(0),
            }
        })
        .collect();

    let mut edge_types = EdgeTypeCounts::default();
    let mut cross_rule_ok = true;
    for e in h.edges() {
        let mut ls: Vec<Layer> = e.iter().map(|&v| g.layers[v]).collect();
        ls.sort_unstable();
        let cs_ok = (1..r).all(|j| ls.contains(&Layer::C(j)));
        if ls.iter().all(|&l| l == Layer::A) {
            edge_types.inside_a += 1;
        } else if cs_ok && ls.contains(&Layer::D) {
            edge_types.transversal += 1;
        } else if cs_ok && ls.contains(&Layer::A) {
            edge_types.cross += 1;
            let w = e[0];
            cross_rule_ok &= e[1..].iter().all(|&c| match (g.layers[c], g.c_points[c]) {
                (Layer::C(j), Some(i)) => g.close(w, j, i),
                _ => false,
            });
        } else {
            edge_types.other += 1;
        }
    }

    let a = g.vertices_in(Layer::A);
    // every rule-compatible A × C tuple must be an edge
    let c_layers: Vec<Vec<usize>> = (1..r).map(|j| g.vertices_in(Layer::C(j))).collect();
    let expected_cross: usize = a
        .iter()
        .map(|&w| {
            c_layers
                .iter()
                .map(|cs| {
                    cs.iter()
                        .filter(|&&c| matches!((g.layers[c], g.c_points[c]), (Layer::C(j), Some(i)) if g.close(w, j, i)))
                        .count()
                })
                .product::<usize>()
        })
        .sum();
    let d_degree = (m as u64).pow(r as u32 - 1);
    let stats = |l: Layer| layers.iter().find(|s| s.layer == l).expect("layer listed").clone();
    let d = stats(Layer::D);
    let sizes_ok = (1..r).all(|j| stats(Layer::C(j)).vertices == m) && d.vertices == m;
    let c_ok = (1..r).all(|j| stats(Layer::C(j)).min_degree as u64 >= d_degree);
    let d_ok = d.vertices > 0 && d.min_degree as u64 == d_degree && d.max_degree as u64 == d_degree;

    let checks = vec![
        Check { name: "layer sizes n/r".into(), passed: sizes_ok },
        Check { name: "D degrees exact".into(), passed: d_ok },
        Check { name: "C degrees at least (n/r)^(r-1)".into(), passed: c_ok },
        Check { name: "edge types partition".into(), passed: edge_types.other == 0 && edge_types.total() == h.num_edges() },
        Check { name: "C×D transversal complete".into(), passed: edge_types.transversal as u64 == d_degree * m as u64 },
        Check { name: "A×C edges follow cap rule".into(), passed: cross_rule_ok && edge_types.cross == expected_cross },
    ];

    let a_degree_reference =
        (p.n as f64 / (r as f64 * 2f64.powi(p.ell as i32))).powi(r as i32 - 1);
    let a_stats = stats(Layer::A);
    let a_degree_ratio =
        (a_stats.vertices > 0).then(|| a_stats.min_degree as f64 / a_degree_reference);
    let a_independence = (!a.is_empty()).then(|| {
        let sub = h.induced_indices(&a);
        let outcome = independence_number(&sub, alpha_budget);
        let (alpha, exact) = match &outcome {
            IndependenceOutcome::Exact { size, .. } => (*size, true),
            IndependenceOutcome::BudgetExhausted { lower_bound, .. } => (*lower_bound, false),
        };
        AIndependence {
            alpha,
            exact,
            ratio: alpha as f64 / a.len() as f64,
        }
    });
    let passed = checks.iter().all(|c| c.passed);
    ConstructionReport {
        layers,
        edge_types,
        d_degree,
        a_degree_reference,
        a_degree_ratio,
        a_independence,
        preconditions: p.preconditions.clone(),
        checks,
        passed,
    }
}

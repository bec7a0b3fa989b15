use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use rand::Rng;
use serde::{Deserialize, Serialize};
use unifoliate::bundle::{
    color_or_embed, dim_at_least, t_bundle, ColorOrEmbedOptions, Embedding, KSpec, Outcome,
};
use unifoliate::construct::{construct_g, derive_seed, verify_construction, GOptions, LayeredHypergraph, Mode};
use unifoliate::fixtures::complete;
use unifoliate::recognize::{
    classify, is_strong_unifoliate, verify_certificate, ClassificationFile, PartitionWitness, WitnessFile,
};
use unifoliate::spheregeo::{
    cap_estimate, chord, near_or_far_hypothesis, near_or_far_margin, rng_from_seed,
    sample_near_or_far_triple, theta_chain, verify_near_or_far,
};
use unifoliate::{Budget, Coloring, Hypergraph};

use crate::rows::{degree_rows, report_rows, CapRow, ChainRow, NearOrFarRow};
use crate::{Bundle, Check, Command, Construct, ConstructG, Lemma, ModeArg};

pub const BUDGET_VAR: &str = "UNIFOLIATE_BUDGET";

#[derive(Debug)]
pub enum CliError {
    Lib(unifoliate::Error),
    Io(PathBuf, io::Error),
    Csv(csv::Error),
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(unifoliate::Error::BudgetExhausted { .. }) => 3,
            CliError::Lib(unifoliate::Error::Infeasible(_)) => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Csv(e) => write!(f, "csv: {e}"),
            CliError::Input(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<unifoliate::Error> for CliError {
    fn from(e: unifoliate::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn parse_radius(s: &str) -> Result<f64, String> {
    match s {
        "sqrt2" => Ok(std::f64::consts::SQRT_2),
        _ => s.parse().map_err(|_| format!("`{s}` is neither a number nor sqrt2")),
    }
}

fn budget() -> CliResult<Budget> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Budget::new)
            .map_err(|_| CliError::Input(format!("{BUDGET_VAR}=`{v}` is not a node count"))),
        Err(_) => Ok(Budget::default()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn read_hypergraph(path: &Path) -> CliResult<Hypergraph> {
    Hypergraph::from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn sink(out: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(fs::File::create(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    let mut w = sink(out)?;
    writeln!(w, "{text}").map_err(|e| CliError::Io(out.unwrap_or(Path::new("<stdout>")).to_path_buf(), e))
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> CliResult<()> {
    emit(out, &serde_json::to_string_pretty(value).expect("output serializes"))
}

fn emit_csv<T: Serialize>(out: Option<&Path>, rows: &[T]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(sink(out)?);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| CliError::Io(out.unwrap_or(Path::new("<stdout>")).to_path_buf(), e))
}

pub fn run(command: Command) -> CliResult<ExitCode> {
    match command {
        Command::Classify { file, out } => {
            let f = read_hypergraph(&file)?;
            let c = classify(&f, &mut budget()?)?;
            emit_json(out.as_deref(), &c.to_file(&f))?;
        }
        Command::Construct(Construct::G(args)) => construct(args)?,
        Command::Check(check) => return run_check(check),
        Command::Lemma(lemma) => run_lemma(lemma)?,
        Command::Bundle(Bundle::Dim { h, t_file, part_size, t, out }) => {
            let h = read_hypergraph(&h)?;
            let tree = read_hypergraph(&t_file)?;
            let mut b = budget()?;
            let bundle = t_bundle(&h, &tree, &mut b)?;
            let spec = KSpec {
                parts: h.r().saturating_sub(1),
                part_size,
            };
            let found = dim_at_least(&bundle, spec, t, &mut b)?;
            emit_json(
                out.as_deref(),
                &DimOutput {
                    t,
                    part_size,
                    base_edges: bundle.base.num_edges(),
                    matching: found.map(|m| {
                        m.iter()
                            .map(|&id| bundle.base.edge_names(id).into_iter().map(String::from).collect())
                            .collect()
                    }),
                },
            )?;
        }
        Command::ColorOrEmbed { h, g, witness, part_size_cap, out } => {
            let h = read_hypergraph(&h)?;
            let g = read_hypergraph(&g)?;
            let mut b = budget()?;
            let w = match witness {
                Some(path) => read_witness(&g, &path)?,
                None => is_strong_unifoliate(&g, &mut b)?
                    .ok_or_else(|| CliError::Input("G is not strong unifoliate".into()))?,
            };
            let opts = ColorOrEmbedOptions {
                part_size_cap,
                budget: b.limit().saturating_sub(b.used()),
            };
            let result = color_or_embed(&h, &g, &w, &opts)?;
            emit_json(out.as_deref(), &ResultFile::from_run(&h, &g, result))?;
        }
        Command::Report { construction, out, degrees } => {
            let g = read_layered(&construction)?;
            write_report(&g, out.as_deref(), degrees.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_layered(path: &Path) -> CliResult<LayeredHypergraph> {
    LayeredHypergraph::from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Accepts a bare `{"parts": ...}` witness or a `classify` certificate.
fn read_witness(g: &Hypergraph, path: &Path) -> CliResult<PartitionWitness> {
    let text = read(path)?;
    let file = match serde_json::from_str::<ClassificationFile>(&text) {
        Ok(cert) => cert
            .witness
            .ok_or_else(|| CliError::Input(format!("{}: certificate has no witness", path.display())))?,
        Err(_) => serde_json::from_str::<WitnessFile>(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
    };
    Ok(PartitionWitness::from_file(g, &file)?)
}

fn construct(a: ConstructG) -> CliResult<()> {
    let f = match &a.f_file {
        Some(path) => read_hypergraph(path)?,
        None => complete(a.r, a.r + 1),
    };
    if f.r() != a.r {
        return Err(CliError::Input(format!("F is {}-uniform but --r is {}", f.r(), a.r)));
    }
    let opts = GOptions {
        k: a.k,
        epsilon: a.eps,
        n: a.n,
        seed: a.seed,
        mode: match a.mode {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Relaxed => Mode::Relaxed {
                beta: a.beta,
                theta: a.theta,
            },
        },
        blowup: a.blowup,
        sparsen_p: a.sparsen_p,
        points: a.points,
        d: a.d,
        beta_samples: a.beta_samples,
    };
    let c = construct_g(&f, &opts, &mut budget()?)?;
    let failing = c.g.params.preconditions.failing();
    if !failing.is_empty() {
        eprintln!("note: relaxed parameters fail: {}", failing.join(", "));
    }
    emit(a.out.as_deref(), &c.g.to_json())?;
    if a.report.is_some() || a.degrees.is_some() {
        write_report(&c.g, a.report.as_deref(), a.degrees.as_deref())?;
    }
    Ok(())
}

fn write_report(g: &LayeredHypergraph, out: Option<&Path>, degrees: Option<&Path>) -> CliResult<()> {
    let report = verify_construction(g);
    emit_csv(out, &report_rows(g, &report))?;
    if let Some(path) = degrees {
        emit_csv(Some(path), &degree_rows(g, &report))?;
    }
    Ok(())
}

fn run_check(check: Check) -> CliResult<ExitCode> {
    let problem = match check {
        Check::Certificate { f, cert } => {
            let f = read_hypergraph(&f)?;
            let cert: ClassificationFile = read_json(&cert)?;
            verify_certificate(&f, &cert)?
        }
        Check::Construction { file } => {
            let report = verify_construction(&read_layered(&file)?);
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.as_str())
                .collect();
            (!failed.is_empty()).then(|| format!("failed checks: {}", failed.join(", ")))
        }
        Check::Result { h, g, result } => {
            let h = read_hypergraph(&h)?;
            let g = read_hypergraph(&g)?;
            let file: ResultFile = read_json(&result)?;
            check_result(&h, &g, &file)?
        }
    };
    Ok(match problem {
        None => {
            println!("ok");
            ExitCode::SUCCESS
        }
        Some(msg) => {
            println!("invalid: {msg}");
            ExitCode::from(1)
        }
    })
}

fn check_result(h: &Hypergraph, g: &Hypergraph, file: &ResultFile) -> CliResult<Option<String>> {
    if let Some(map) = &file.embedding {
        let e = Embedding::from_named(g, h, map)?;
        return Ok((!e.verify(g, h)).then(|| "some edge of G does not map to an edge of H".into()));
    }
    if let Some(map) = &file.coloring {
        let c = Coloring::from_named(h, map)?;
        if !c.is_proper(h) {
            return Ok(Some("colouring has a monochromatic edge".into()));
        }
        if file.colors.is_some_and(|k| k != c.num_colors()) {
            return Ok(Some(format!("file claims {:?} colours, found {}", file.colors, c.num_colors())));
        }
        if let Some(bound) = file.bound.filter(|&b| c.num_colors() > b) {
            return Ok(Some(format!("{} colours exceed the bound {bound}", c.num_colors())));
        }
        return Ok(None);
    }
    Err(CliError::Input("result has neither `embedding` nor `coloring`".into()))
}

#[derive(Serialize)]
struct DimOutput {
    t: usize,
    part_size: usize,
    base_edges: usize,
    matching: Option<Vec<Vec<String>>>,
}

/// `color-or-embed` output; exactly one of `embedding` and `coloring` is set.
#[derive(Serialize, Deserialize)]
struct ResultFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    embedding: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coloring: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colors: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base_colors: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base_exact: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bound: Option<usize>,
    #[serde(default)]
    part_size: usize,
    #[serde(default)]
    part_size_unclamped: u64,
    #[serde(default)]
    t: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matching: Option<Vec<Vec<String>>>,
    #[serde(default)]
    notes: Vec<String>,
}

impl ResultFile {
    fn from_run(h: &Hypergraph, g: &Hypergraph, run: unifoliate::bundle::ColorOrEmbed) -> Self {
        let mut file = ResultFile {
            embedding: None,
            coloring: None,
            colors: None,
            base_colors: None,
            base_exact: None,
            bound: None,
            part_size: run.part_size,
            part_size_unclamped: run.part_size_unclamped,
            t: run.t,
            matching: run.matching.map(|m| {
                m.iter()
                    .map(|e| e.iter().map(|&v| h.name(v).to_string()).collect())
                    .collect()
            }),
            notes: run.notes,
        };
        match run.outcome {
            Outcome::Embedding(e) => file.embedding = Some(e.named(g, h)),
            Outcome::Coloring(c) => {
                file.coloring = Some(c.coloring.named(h));
                file.colors = Some(c.colors);
                file.base_colors = c.base_colors;
                file.base_exact = Some(c.base_exact);
                file.bound = c.bound;
            }
        }
        file
    }
}

fn run_lemma(lemma: Lemma) -> CliResult<()> {
    match lemma {
        Lemma::NearOrFar { trials, d, a_max, seed, out } => {
            if !(a_max > 0.0 && a_max <= 0.1) {
                return Err(CliError::Input(format!("--a-max {a_max} must lie in (0, 0.1]")));
            }
            let mut rng = rng_from_seed(derive_seed(seed, "near-or-far"));
            let mut rows = Vec::with_capacity(trials + 1);
            let mut passed = 0;
            for trial in 0..trials {
                let a = loop {
                    let a = rng.gen_range(0.0..a_max);
                    if a > 0.0 {
                        break a;
                    }
                };
                let (x, y, z) = sample_near_or_far_triple(&mut rng, d, a);
                let conclusion = verify_near_or_far(&x, &y, &z, a)?;
                passed += conclusion as usize;
                rows.push(NearOrFarRow {
                    trial: trial.to_string(),
                    seed,
                    d,
                    a: Some(a),
                    rho_xy: Some(chord(&x, &y)),
                    rho_yz: Some(chord(&y, &z)),
                    rho_xz: Some(chord(&x, &z)),
                    hypothesis: Some(near_or_far_hypothesis(&x, &y, &z, a)?),
                    conclusion: Some(conclusion),
                    margin: Some(near_or_far_margin(&x, &z, a)),
                    pass_fraction: None,
                });
            }
            rows.push(NearOrFarRow {
                trial: "summary".into(),
                seed,
                d,
                a: None,
                rho_xy: None,
                rho_yz: None,
                rho_xz: None,
                hypothesis: None,
                conclusion: None,
                margin: None,
                pass_fraction: Some(fraction(passed, trials)),
            });
            emit_csv(out.as_deref(), &rows)
        }
        Lemma::Cap { d, radius, samples, seed, out } => {
            let rows = radius
                .iter()
                .enumerate()
                .map(|(i, &rho)| {
                    let s = derive_seed(seed, &format!("cap{i}"));
                    let est = cap_estimate(d, rho, samples, s)?;
                    Ok(CapRow {
                        d,
                        radius: rho,
                        samples,
                        seed: s,
                        estimate: est.measure,
                        std_err: est.std_err,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            emit_csv(out.as_deref(), &rows)
        }
        Lemma::ThetaChain { f, theta, out } => {
            if !(theta > 0.0 && theta < 1.0) {
                return Err(CliError::Input(format!("--theta {theta} must lie in (0, 1)")));
            }
            let steps = theta_chain(theta, f);
            let passed = steps.iter().filter(|s| s.holds).count();
            let mut rows: Vec<ChainRow> = steps
                .iter()
                .map(|s| ChainRow {
                    step: s.j.to_string(),
                    theta,
                    f,
                    lhs: Some(s.lhs),
                    rhs: Some(s.rhs),
                    ln_lhs: Some(s.ln_lhs),
                    ln_rhs: Some(s.ln_rhs),
                    holds: Some(s.holds),
                    pass_fraction: None,
                })
                .collect();
            rows.push(ChainRow {
                step: "summary".into(),
                theta,
                f,
                lhs: None,
                rhs: None,
                ln_lhs: None,
                ln_rhs: None,
                holds: None,
                pass_fraction: Some(fraction(passed, steps.len())),
            });
            emit_csv(out.as_deref(), &rows)
        }
    }
}

fn fraction(passed: usize, total: usize) -> f64 {
    if total == 0 {
        1.0
    } else {
        passed as f64 / total as f64
    }
}

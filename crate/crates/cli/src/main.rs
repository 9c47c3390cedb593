use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use qwalk::spectral::{spectrum_table, support_table, EigenvalueEntry};
use qwalk::transfer::{
    analyze, cross_validate, predict, resolve_in, resolve_target, strong_cospectrality, vertex_periodicity,
    AnalysisOptions, CospectralVerdict, PairVertex, PeriodContext, PeriodVerdict, Subject, Target,
};
use qwalk::walk::{
    fidelity_trace, max_fidelity_search, max_twin_fidelity_search, pair_amplitude, trace_csv, SearchOptions,
    SearchResult,
};
use qwalk::{decompose, Error, GraphExpr};

const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Quantum walks and state transfer on blow-up graphs")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Distinct eigenvalues, multiplicities and closed forms.
    Spectrum(Common),
    /// Eigenvalue support of a vertex.
    Support(Common),
    /// Strong cospectrality of a pair.
    Cospectral(Common),
    /// Periodicity of a vertex, or of its copies with --n or a blow-up.
    Periodic(Common),
    /// Perfect state transfer between twin copies or a pair.
    Pst(Common),
    /// Pretty good state transfer; --window adds a fidelity search as evidence.
    Pgst(Common),
    /// Fidelity at --time, or the best fidelity over --window.
    Simulate(Common),
    /// Fidelity over --window as CSV.
    Trace(Common),
    /// Closed-form report for a catalogued family.
    Predict(Common),
    /// Predictor, decider and simulation side by side.
    Validate(Common),
    /// One JSON line per instance of a parameterized graph.
    Sweep(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Graph expression, e.g. "blowup(2, path(11))". In `sweep`, `{}` marks the parameter.
    #[arg(long)]
    graph: String,
    /// Base vertex (label or index); `c:b` and `apex<c>` are accepted for blow-ups.
    #[arg(long)]
    vertex: Option<String>,
    /// A vertex pair of the whole graph.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pair: Option<Vec<String>>,
    /// Number of copies in the blow-up.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    window: Option<Vec<f64>>,
    #[arg(long)]
    steps: Option<usize>,
    /// Time for `simulate`.
    #[arg(long)]
    time: Option<f64>,
    /// Parameter range for `sweep`.
    #[arg(long, num_args = 2, value_names = ["FROM", "TO"])]
    range: Option<Vec<usize>>,
    /// Spaces per indentation level; 0 prints one line.
    #[arg(long, default_value_t = 2)]
    json_indent: usize,
    /// Eigenvalue support threshold on ||E_j e_u||.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Exit 0 even when a verdict rests on a numeric lattice.
    #[arg(long)]
    heuristic_ok: bool,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Numeric(_) => EXIT_NUMERIC,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type Outcome = Result<Output, Failure>;

enum Output {
    Text(String),
    /// Report text plus a non-zero status for heuristic verdicts.
    Heuristic(String),
}

fn to_json<T: Serialize>(value: &T, indent: usize) -> Result<String, Failure> {
    let mut buf = Vec::new();
    let res = if indent == 0 {
        serde_json::to_writer(&mut buf, value)
    } else {
        let pad = vec![b' '; indent];
        let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
        value.serialize(&mut serde_json::Serializer::with_formatter(&mut buf, fmt))
    };
    res.map_err(|e| Failure { code: EXIT_NUMERIC, message: format!("serialization failed: {e}") })?;
    let mut s = String::from_utf8(buf).expect("serde_json writes UTF-8");
    s.push('\n');
    Ok(s)
}

impl Common {
    fn expr(&self) -> Result<GraphExpr, Failure> {
        Ok(GraphExpr::parse(&self.graph)?)
    }

    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            evidence: self.search().ok(),
            support_threshold: self.tolerance,
            ..AnalysisOptions::default()
        }
    }

    fn search(&self) -> Result<SearchOptions, Failure> {
        let w = self.window.as_ref().ok_or_else(|| usage("--window <lo> <hi> is required"))?;
        let mut s = SearchOptions::window(w[0], w[1]);
        if let Some(k) = self.steps {
            s = s.with_steps(k);
        }
        Ok(s)
    }

    fn target(&self, expr: &GraphExpr) -> Result<Target, Failure> {
        let pair = self.pair.as_ref().map(|p| (p[0].as_str(), p[1].as_str()));
        Ok(resolve_target(expr, self.vertex.as_deref(), pair, self.n)?)
    }

    fn subject(&self, expr: &GraphExpr) -> Result<Subject, Failure> {
        let s = Subject::from_expr(expr)?;
        Ok(match self.tolerance {
            Some(t) => s.with_support_threshold(t),
            None => s,
        })
    }

    fn json<T: Serialize>(&self, value: &T) -> Outcome {
        Ok(Output::Text(to_json(value, self.json_indent)?))
    }
}

#[derive(Serialize)]
struct SpectrumOut {
    graph: String,
    vertices: usize,
    eigenvalues: Vec<EigenvalueEntry>,
}

#[derive(Serialize)]
struct SupportOut {
    graph: String,
    vertex: PairVertex,
    contains_zero: bool,
    support: Vec<EigenvalueEntry>,
}

#[derive(Serialize)]
struct CospectralOut {
    graph: String,
    pair: [PairVertex; 2],
    #[serde(flatten)]
    verdict: CospectralVerdict,
}

#[derive(Serialize)]
struct PeriodicOut {
    graph: String,
    vertex: PairVertex,
    copies: Option<usize>,
    #[serde(flatten)]
    verdict: PeriodVerdict,
}

#[derive(Serialize)]
struct SimulateOut {
    graph: String,
    pair: [PairVertex; 2],
    time: Option<f64>,
    amplitude: Option<[f64; 2]>,
    fidelity: Option<f64>,
    search: Option<SearchResult>,
}

#[derive(Serialize)]
struct SweepLine {
    graph: String,
    pair: [PairVertex; 2],
    strong_cospectral: bool,
    pst: bool,
    pst_time: Option<String>,
    pgst: &'static str,
    heuristic: bool,
    predicted_pgst: Option<&'static str>,
    consistent: bool,
}

fn pair_vertex(g: &qwalk::Graph, i: usize) -> PairVertex {
    PairVertex { index: i, label: g.label(i).to_string() }
}

fn single_vertex(c: &Common, expr: &GraphExpr, g: &qwalk::Graph) -> Result<usize, Failure> {
    let v = c.vertex.as_deref().ok_or_else(|| usage("--vertex is required"))?;
    Ok(resolve_in(expr, g, v)?)
}

fn spectrum(c: &Common) -> Outcome {
    let expr = c.expr()?;
    let dec = c.subject(&expr)?;
    c.json(&SpectrumOut {
        graph: expr.to_string(),
        vertices: dec.graph().n_vertices(),
        eigenvalues: spectrum_table(dec.decomposition()),
    })
}

fn support(c: &Common) -> Outcome {
    let expr = c.expr()?;
    let s = c.subject(&expr)?;
    let u = single_vertex(c, &expr, s.graph())?;
    let rows = support_table(s.decomposition(), u)?;
    let zero = qwalk::spectral::support(s.decomposition(), u)?.contains_zero;
    c.json(&SupportOut {
        graph: expr.to_string(),
        vertex: pair_vertex(s.graph(), u),
        contains_zero: zero,
        support: rows,
    })
}

fn cospectral(c: &Common) -> Outcome {
    let expr = c.expr()?;
    let target = c.target(&expr)?;
    let whole = target.graph_expr();
    let s = c.subject(&whole)?;
    let (a, b) = target.pair_indices()?;
    c.json(&CospectralOut {
        graph: whole.to_string(),
        pair: [pair_vertex(s.graph(), a), pair_vertex(s.graph(), b)],
        verdict: strong_cospectrality(s.decomposition(), a, b)?,
    })
}

fn periodic(c: &Common) -> Outcome {
    let expr = c.expr()?;
    let (base, copies) = match (&expr, c.n) {
        (GraphExpr::Blowup(n, inner), _) => ((**inner).clone(), Some(*n)),
        (_, n) => (expr.clone(), n),
    };
    let s = c.subject(&base)?;
    let v = c.vertex.as_deref().ok_or_else(|| usage("--vertex is required"))?;
    // `c:b` names base vertex b
    let u = qwalk::transfer::resolve_vertex(s.graph(), v.split_once(':').map_or(v, |(_, b)| b))?;
    let context = match copies {
        Some(n) if n >= 1 => PeriodContext::Blowup(n),
        Some(_) => return Err(usage("--n must be at least 1")),
        None => PeriodContext::BaseGraph,
    };
    c.json(&PeriodicOut {
        graph: expr.to_string(),
        vertex: pair_vertex(s.graph(), u),
        copies,
        verdict: vertex_periodicity(&s, u, context)?,
    })
}

fn transfer(c: &Common, evidence: bool) -> Outcome {
    let expr = c.expr()?;
    let target = c.target(&expr)?;
    let mut opts = c.options();
    if !evidence {
        opts.evidence = None;
    }
    let report = analyze(&target, &opts)?;
    let text = to_json(&report, c.json_indent)?;
    if report.pgst.heuristic && !c.heuristic_ok {
        return Ok(Output::Heuristic(text));
    }
    Ok(Output::Text(text))
}

fn simulate(c: &Common) -> Outcome {
    let expr = c.expr()?;
    let target = c.target(&expr)?;
    let whole = target.graph_expr();
    let g = whole.build()?;
    let (a, b) = target.pair_indices()?;
    let pair = [pair_vertex(&g, a), pair_vertex(&g, b)];
    if let Some(t) = c.time {
        let dec = decompose(&g)?;
        let z = pair_amplitude(&dec, a, b, t)?;
        return c.json(&SimulateOut {
            graph: whole.to_string(),
            pair,
            time: Some(t),
            amplitude: Some([z.re, z.im]),
            fidelity: Some(z.norm_sqr()),
            search: None,
        });
    }
    let opts = c.search()?;
    let result = match &target {
        // twin copies through the base graph alone
        Target::Twin { base, u, copies } => max_twin_fidelity_search(&decompose(&base.build()?)?, *copies, *u, &opts)?,
        _ => max_fidelity_search(&decompose(&g)?, a, b, &opts)?,
    };
    c.json(&SimulateOut {
        graph: whole.to_string(),
        pair,
        time: None,
        amplitude: None,
        fidelity: None,
        search: Some(result),
    })
}

fn trace(c: &Common) -> Outcome {
    let expr = c.expr()?;
    let target = c.target(&expr)?;
    let g = target.graph_expr().build()?;
    let (a, b) = target.pair_indices()?;
    let w = c.window.as_ref().ok_or_else(|| usage("--window <lo> <hi> is required"))?;
    let steps = c.steps.unwrap_or(1000);
    Ok(Output::Text(trace_csv(&fidelity_trace(&decompose(&g)?, a, b, w[0], w[1], steps)?)))
}

fn predict_verb(c: &Common) -> Outcome {
    let expr = c.expr()?;
    c.json(&predict(&c.target(&expr)?)?)
}

fn validate(c: &Common) -> Outcome {
    let expr = c.expr()?;
    c.json(&cross_validate(&c.target(&expr)?, &c.options())?)
}

fn sweep(c: &Common) -> Outcome {
    if !c.graph.contains("{}") {
        return Err(usage("sweep needs `{}` in --graph for the parameter"));
    }
    let r = c.range.as_ref().ok_or_else(|| usage("--range <from> <to> is required"))?;
    let opts = AnalysisOptions { support_threshold: c.tolerance, ..AnalysisOptions::default() };
    let instances: Vec<usize> = (r[0]..=r[1]).collect();
    let lines: Vec<Result<Vec<String>, Failure>> = instances
        .par_iter()
        .map(|&k| {
            let expr = GraphExpr::parse(&c.graph.replace("{}", &k.to_string()))?;
            let vertices: Vec<String> = match &c.vertex {
                Some(v) => vec![v.clone()],
                None => {
                    let base = match &expr {
                        GraphExpr::Blowup(_, inner) => inner.build()?,
                        other => other.build()?,
                    };
                    base.labels().to_vec()
                }
            };
            let mut out = Vec::new();
            for v in vertices {
                let target = resolve_target(&expr, Some(&v), None, c.n)?;
                let rep = analyze(&target, &opts)?;
                let line = SweepLine {
                    graph: rep.graph.clone(),
                    pair: rep.pair.clone(),
                    strong_cospectral: rep.strong_cospectral,
                    pst: rep.pst.occurs,
                    pst_time: rep.pst.exact_time.map(|t| t.to_string()),
                    pgst: rep.pgst.verdict.as_str(),
                    heuristic: rep.pgst.heuristic,
                    predicted_pgst: predict(&target).ok().map(|p| p.pgst.verdict.as_str()),
                    consistent: rep.consistent(),
                };
                out.push(to_json(&line, 0)?);
            }
            Ok(out)
        })
        .collect();
    let mut text = String::new();
    for l in lines {
        text.extend(l?);
    }
    Ok(Output::Text(text))
}

fn run(verb: &Verb) -> Outcome {
    match verb {
        Verb::Spectrum(c) => spectrum(c),
        Verb::Support(c) => support(c),
        Verb::Cospectral(c) => cospectral(c),
        Verb::Periodic(c) => periodic(c),
        Verb::Pst(c) => transfer(c, false),
        Verb::Pgst(c) => transfer(c, true),
        Verb::Simulate(c) => simulate(c),
        Verb::Trace(c) => trace(c),
        Verb::Predict(c) => predict_verb(c),
        Verb::Validate(c) => validate(c),
        Verb::Sweep(c) => sweep(c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(&cli.verb) {
        Ok(Output::Text(s)) => {
            let _ = stdout.write_all(s.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Output::Heuristic(s)) => {
            let _ = stdout.write_all(s.as_bytes());
            eprintln!("qwalk: verdict rests on a numeric lattice; pass --heuristic-ok to accept it");
            ExitCode::from(EXIT_NUMERIC)
        }
        Err(f) => {
            eprintln!("qwalk: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

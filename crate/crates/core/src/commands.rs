//! Text reports behind the command line subcommands.

use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::groebner::{buchberger_complete, Completeness, GroebnerBasis};
use crate::koszul::{koszul_resolution, KoszulOptions};
use crate::par::Exec;
use crate::problem::Problem;
use crate::quiver::VertexId;
use crate::quotient::QuotientAlgebra;
use crate::resolution::{build_resolution, verify_complex, Label, Presentation, Resolution, ResolutionOptions};
use crate::syntax::render_element;

pub const DEFAULT_STEPS: usize = 4;

/// Settings from the command line; unset values fall back to the problem
/// file, then to defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub steps: Option<usize>,
    pub degree_cap: Option<usize>,
    pub length_cap: Option<usize>,
    pub no_verify: bool,
    pub fast: bool,
    pub exec: Exec,
}

impl RunOptions {
    fn steps(&self, p: &Problem) -> usize {
        self.steps.or(p.steps).unwrap_or(DEFAULT_STEPS)
    }

    fn degree_cap(&self, p: &Problem) -> Option<usize> {
        self.degree_cap.or(p.degree_cap)
    }

    fn length_cap(&self, p: &Problem) -> Option<usize> {
        self.length_cap.or(p.length_cap)
    }

    fn verify(&self, p: &Problem) -> bool {
        !self.no_verify && p.verify.unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<String>,
    /// False when a verification check failed.
    pub ok: bool,
}

impl Report {
    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

fn header(alg: &PathAlgebra) -> Vec<String> {
    vec![
        format!("field: {}", alg.field()),
        format!("order: {}", alg.order().render(alg.quiver())),
    ]
}

fn basis_lines(alg: &PathAlgebra, gb: &GroebnerBasis) -> Vec<String> {
    let status = match gb.completeness() {
        Completeness::Complete => "complete".to_string(),
        Completeness::Truncated { degree_cap, pending } => {
            format!("truncated at degree {degree_cap}, {pending} pending")
        }
    };
    let mut out = vec![format!("Gröbner basis ({} elements, {status}):", gb.len())];
    out.extend(gb.elements().iter().map(|g| format!("  {}", render_element(alg, g))));
    out
}

pub fn run_groebner(p: &Problem, opts: &RunOptions) -> Result<Report> {
    let alg = &p.algebra;
    let gb = buchberger_complete(alg, &p.relations, opts.degree_cap(p))?;
    let mut lines = header(alg);
    lines.extend(basis_lines(alg, &gb));
    if gb.is_complete() {
        let q = QuotientAlgebra::new(alg.clone(), gb, opts.length_cap(p));
        let nt = q.nontips();
        if nt.is_finite() {
            lines.push(format!("nontips: {} (dim Λ = {})", nt.len(), nt.len()));
        } else {
            lines.push("nontips: infinite".to_string());
        }
    }
    Ok(Report { lines, ok: true })
}

fn presentation(p: &Problem, q: &QuotientAlgebra) -> Result<Presentation> {
    let m = p
        .module
        .as_ref()
        .ok_or_else(|| Error::Precondition("the problem has no `module:` block".into()))?;
    Presentation::new(q, m.targets.clone(), m.sources.clone(), m.matrix.clone())
}

fn summands(alg: &PathAlgebra, vs: &[VertexId]) -> String {
    if vs.is_empty() {
        return "0".to_string();
    }
    vs.iter()
        .map(|&v| alg.quiver().vertex_name(v))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn label(alg: &PathAlgebra, l: &Label) -> String {
    match l {
        Label::Column(j) => format!("col {}", j + 1),
        Label::Lift => "lift".to_string(),
        Label::Overlap { coord, path } => format!("({}, {})", coord + 1, path.render(alg.quiver())),
        Label::Rereduced => "rereduced".to_string(),
        Label::Span => "span".to_string(),
    }
}

/// Level-by-level description of a resolution.
pub fn render_resolution(alg: &PathAlgebra, res: &Resolution) -> Vec<String> {
    let mut out = Vec::new();
    let d = res.presentation.matrix();
    out.push(format!(
        "presentation: {} -> {}",
        summands(alg, res.presentation.sources()),
        summands(alg, res.presentation.targets())
    ));
    if d.rows() > 0 && d.cols() > 0 {
        out.push("D =".to_string());
        out.extend(d.render(alg).into_iter().map(|r| format!("  {r}")));
    }
    out.push(format!("L^0 = {}", summands(alg, res.presentation.targets())));
    for stage in &res.stages {
        let n = stage.level;
        let t = if stage.generators.is_empty() {
            format!("T_{n} = ∅")
        } else {
            let labels: Vec<String> = stage.generators.iter().map(|g| label(alg, &g.label)).collect();
            format!("T_{n} = {{{}}}", labels.join(", "))
        };
        let u = if stage.primed.is_empty() {
            format!("U_{n} = ∅")
        } else {
            format!("|U_{n}| = {}", stage.primed.len())
        };
        out.push(format!("{t}, {u}"));
        if stage.rereduced {
            out.push(format!("  (level {n} was re-reduced)"));
        }
        if stage.is_terminal() {
            break;
        }
        out.push(format!("L^{n} = {}", summands(alg, &stage.summands())));
        out.push(format!("e^{n} ="));
        out.extend(res.differential(n).render(alg).into_iter().map(|r| format!("  {r}")));
    }
    let ranks: Vec<String> = res.ranks().iter().map(|r| r.to_string()).collect();
    out.push(format!("ranks: {}", ranks.join(", ")));
    match res.terminated {
        Some(n) => out.push(format!("resolution terminated at level {n}")),
        None => out.push(format!("resolution computed through level {}", res.top())),
    }
    out
}

fn verification(q: &QuotientAlgebra, res: &Resolution, lines: &mut Vec<String>) -> bool {
    let report = verify_complex(q, res);
    lines.push("verification:".to_string());
    lines.extend(report.render(q.algebra()).into_iter().map(|l| format!("  {l}")));
    report.passed()
}

fn quotient(p: &Problem, opts: &RunOptions) -> Result<QuotientAlgebra> {
    QuotientAlgebra::from_relations(p.algebra.clone(), &p.relations, opts.degree_cap(p), None)
}

fn resolve(p: &Problem, opts: &RunOptions, verify: bool) -> Result<(QuotientAlgebra, Resolution)> {
    let q = quotient(p, opts)?;
    let pres = presentation(p, &q)?;
    let ro = ResolutionOptions {
        steps: opts.steps(p),
        extension_cap: opts.length_cap(p),
        verify,
        exec: opts.exec,
        ..ResolutionOptions::default()
    };
    let res = build_resolution(&q, &pres, &ro)?;
    Ok((q, res))
}

pub fn run_resolve(p: &Problem, opts: &RunOptions) -> Result<Report> {
    let verify = opts.verify(p);
    let (q, res) = resolve(p, opts, verify)?;
    let alg = q.algebra();
    let mut lines = header(alg);
    lines.extend(basis_lines(alg, q.basis()));
    lines.extend(render_resolution(alg, &res));
    let ok = !verify || verification(&q, &res, &mut lines);
    Ok(Report { lines, ok })
}

pub fn run_verify(p: &Problem, opts: &RunOptions) -> Result<Report> {
    let (q, res) = resolve(p, opts, true)?;
    let alg = q.algebra();
    let mut lines = header(alg);
    let ranks: Vec<String> = res.ranks().iter().map(|r| r.to_string()).collect();
    lines.push(format!("ranks: {}", ranks.join(", ")));
    let ok = verification(&q, &res, &mut lines);
    lines.push(if ok { "all checks passed" } else { "verification FAILED" }.to_string());
    Ok(Report { lines, ok })
}

pub fn run_koszul(p: &Problem, opts: &RunOptions) -> Result<Report> {
    let alg = &p.algebra;
    let gb = buchberger_complete(alg, &p.relations, opts.degree_cap(p))?;
    let q = QuotientAlgebra::new(alg.clone(), gb, None);
    let pres = presentation(p, &q)?;
    let ko = KoszulOptions {
        steps: opts.steps(p),
        fast: opts.fast,
        exec: opts.exec,
        ..KoszulOptions::default()
    };
    let res = koszul_resolution(&q, &p.relations, &pres, &ko)?;
    let mut lines = header(alg);
    lines.extend(basis_lines(alg, q.basis()));
    lines.push(if opts.fast {
        "method: linear algebra".to_string()
    } else {
        "method: overlaps with quadratic relations, cross-checked by linear algebra".to_string()
    });
    lines.extend(render_resolution(alg, &res));
    let ok = !opts.verify(p) || verification(&q, &res, &mut lines);
    Ok(Report { lines, ok })
}

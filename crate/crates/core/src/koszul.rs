//! Linear resolutions of linear modules over quadratic algebras.
//!
//! Every generator is linear, so only the quadratic part `G₂` of the
//! Gröbner basis is ever used: each overlap has `q′` a vertex and `p` an
//! arrow. A second construction reads the next generators off the kernel of
//! a coefficient matrix; by default both run and must agree.

use std::collections::HashMap;

use crate::algebra::{Element, PathAlgebra};
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::groebner::tip_reduce_ideal_generators;
use crate::linalg::Matrix;
use crate::matrix::ElementMatrix;
use crate::module::{Frame, FreeModule, IndexOrder, ModuleVector};
use crate::par::{self, Exec};
use crate::quiver::Path;
use crate::quotient::QuotientAlgebra;
use crate::resolution::{Generator, Label, Presentation, Primed, PrimedSource, Resolution, Stage};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KoszulOptions {
    pub steps: usize,
    /// Skip the overlap step and use only the linear-algebra construction.
    pub fast: bool,
    pub exec: Exec,
    pub index_order: IndexOrder,
}

impl Default for KoszulOptions {
    fn default() -> Self {
        KoszulOptions {
            steps: 4,
            fast: false,
            exec: Exec::default(),
            index_order: IndexOrder::default(),
        }
    }
}

fn is_linear(v: &ModuleVector) -> bool {
    v.entries().iter().all(|(_, x)| x.is_homogeneous_of(1))
}

/// Tip-reduced monic generators, after checking every relation is
/// homogeneous of length 2.
pub fn quadratic_part(alg: &PathAlgebra, relations: &[Element]) -> Result<Vec<Element>> {
    if relations.iter().any(|r| !r.is_zero() && !r.is_homogeneous_of(2)) {
        return Err(Error::Precondition("relations are not quadratic".into()));
    }
    let nonzero: Vec<Element> = relations.iter().filter(|r| !r.is_zero()).cloned().collect();
    tip_reduce_ideal_generators(alg, &nonzero)
}

/// `{ε_i · g : g ∈ G₂ starting at v_i}`.
fn primed_relations(frame: &Frame, g2: &[Element]) -> Vec<Primed> {
    let mut out = Vec::new();
    for (i, &v) in frame.vertices().iter().enumerate() {
        for (k, g) in g2.iter().enumerate() {
            if g.left_vertex() == Some(v) {
                out.push(Primed {
                    vector: ModuleVector::unit(i, g.clone()),
                    source: PrimedSource::Relation {
                        coord: i,
                        prefix: Path::vertex(v),
                        relation: k,
                    },
                });
            }
        }
    }
    out
}

/// Level 1 for a linear presentation: the tip-reduced nonzero columns.
pub fn koszul_lift(q: &QuotientAlgebra, presentation: &Presentation, g2: &[Element], index_order: IndexOrder) -> Result<Stage> {
    let alg = q.algebra();
    let matrix = presentation.matrix();
    if matrix.entries().any(|(_, _, x)| !x.is_zero() && !x.is_homogeneous_of(1)) {
        return Err(Error::Precondition("not a linear presentation".into()));
    }
    let frame = Frame::new(presentation.targets().to_vec()).with_index_order(index_order);
    let module = FreeModule::new(alg, &frame);
    let columns: Vec<(usize, ModuleVector)> = presentation
        .columns(alg)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let vectors: Vec<ModuleVector> = columns.iter().map(|(_, c)| c.clone()).collect();
    let reduced = if vectors.is_empty() {
        Vec::new()
    } else {
        module.right_tip_reduce(&vectors)?
    };
    let generators = reduced
        .into_iter()
        .map(|v| {
            let label = columns
                .iter()
                .find(|(_, c)| *c == v)
                .map_or(Label::Lift, |(j, _)| Label::Column(*j));
            Generator { vector: v, label }
        })
        .collect();
    Ok(Stage {
        level: 1,
        primed: primed_relations(&frame, g2),
        frame,
        generators,
        rereduced: false,
    })
}

/// Level `n` to `n + 1` by overlaps of generator tips (arrows) with `G₂`.
///
/// The primed set `{ε_i · g}` is first tip-reduced together with `f^n`,
/// recording each reduced element as `Σ f_l · a_l` plus an ideal part, so a
/// division by the reduced set can be rewritten over `f^n` alone.
pub fn koszul_step(q: &QuotientAlgebra, g2: &[Element], stage: &Stage, exec: Exec, index_order: IndexOrder) -> Result<Stage> {
    let alg = q.algebra();
    let level = stage.level;
    let module = FreeModule::new(alg, &stage.frame);
    let f = stage.vectors();
    let primed = primed_relations(&stage.frame, g2);
    let frame = Frame::new(stage.summands()).with_index_order(index_order);

    let inputs: Vec<ModuleVector> = f.iter().cloned().chain(primed.iter().map(|p| p.vector.clone())).collect();
    let reduced = if inputs.is_empty() {
        Vec::new()
    } else {
        module.right_tip_reduce_tracked(&inputs)?
    };
    if reduced.len() < f.len() || reduced[..f.len()].iter().zip(&f).any(|(t, x)| t.vector != *x) {
        return Err(Error::Integrity(format!("level {level}: generators changed under tip-reduction")));
    }
    let bold = &reduced[f.len()..];
    let divisors: Vec<ModuleVector> = f.iter().cloned().chain(bold.iter().map(|t| t.vector.clone())).collect();

    let mut tasks = Vec::new();
    for (i, x) in f.iter().enumerate() {
        let t = module.tip(x).ok_or(Error::ZeroElement("stage generator"))?;
        if t.path.len() != 1 {
            return Err(Error::Integrity(format!(
                "input not linear / algebra not Koszul at this step (level {level})"
            )));
        }
        for (k, g) in g2.iter().enumerate() {
            let gt = g.tip_path().expect("nonzero relation");
            if let Some(y) = alg.quiver().left_divides(&t.path, gt) {
                tasks.push((i, t.clone(), k, y));
            }
        }
    }

    let not_koszul = || Error::Integrity(format!("input not linear / algebra not Koszul at this step (level {level})"));
    let built = par::try_map(exec, &tasks, |(i, t, k, y)| -> Result<ModuleVector> {
        let g = &g2[*k];
        let c = t.coeff.try_div(g.leading_coeff().expect("nonzero relation"))?;
        let w = f[*i].mul_path(alg, y).sub(alg, &ModuleVector::unit(t.coord, alg.scale(g, &c)));
        let div = module.divide(&w, &divisors);
        if !div.remainder.is_zero() {
            return Err(Error::Integrity(format!("level {level}: element not in span")));
        }
        let (r, s) = div.quotients.split_at(f.len());
        if r.iter().any(|x| !x.is_zero() && !x.is_homogeneous_of(1)) || s.iter().any(|x| !x.is_zero() && !x.is_homogeneous_of(0)) {
            return Err(not_koszul());
        }
        let mut r_full = ModuleVector::from_dense(alg, r.to_vec());
        for (b, s_k) in bold.iter().zip(s) {
            if s_k.is_zero() {
                continue;
            }
            let a = ModuleVector::from_entries(
                alg,
                b.combination.entries().iter().filter(|(l, _)| *l < f.len()).cloned(),
            );
            r_full = r_full.add(alg, &a.right_action(alg, s_k));
        }
        Ok(ModuleVector::unit(*i, alg.path(y.clone())).sub(alg, &r_full))
    })?;

    let mut generators = Vec::new();
    for ((i, t, _, y), v) in tasks.iter().zip(built) {
        if v.is_zero() {
            continue;
        }
        if !is_linear(&v) {
            return Err(not_koszul());
        }
        let path = t.path.mul(y).expect("tip extends");
        generators.push(Generator {
            vector: v,
            label: Label::Overlap { coord: *i, path },
        });
    }
    let generators = reduce_generators(alg, &frame, generators)?;
    Ok(Stage {
        level: level + 1,
        primed: primed_relations(&frame, g2),
        frame,
        generators,
        rereduced: false,
    })
}

/// Tip-reduces in the new frame; unchanged vectors keep their labels.
fn reduce_generators(alg: &PathAlgebra, frame: &Frame, generators: Vec<Generator>) -> Result<Vec<Generator>> {
    if generators.is_empty() {
        return Ok(generators);
    }
    let module = FreeModule::new(alg, frame);
    let vectors: Vec<ModuleVector> = generators.iter().map(|g| g.vector.clone()).collect();
    Ok(module
        .right_tip_reduce(&vectors)?
        .into_iter()
        .map(|v| {
            let label = generators
                .iter()
                .find(|g| g.vector == v)
                .map_or(Label::Rereduced, |g| g.label.clone());
            Generator { vector: v, label }
        })
        .collect())
}

/// The next generators as the kernel of `[A | B]`, where `A` has columns
/// `f_i · a` for arrows `a` and `B` has columns `ε_j · g` for `g ∈ G₂`, all
/// written on the basis of `(coordinate, length-2 path)` monomials. A kernel
/// vector's `A` part `Σ α_{i,a} ε_i · a` is a next-level element; the list
/// is tip-reduced over the frame of the current generators' termini.
pub fn linear_algebra_f2(alg: &PathAlgebra, g2: &[Element], stage: &Stage, index_order: IndexOrder) -> Result<Vec<ModuleVector>> {
    let quiver = alg.quiver();
    let f = stage.vectors();
    let frame = Frame::new(stage.summands()).with_index_order(index_order);

    let mut index: HashMap<(usize, Path), usize> = HashMap::new();
    let mut column = |v: &ModuleVector| -> Result<Vec<(usize, Scalar)>> {
        let mut col = Vec::new();
        for (j, x) in v.entries() {
            for t in x.terms() {
                if t.path.len() != 2 {
                    return Err(Error::Integrity("input not linear / algebra not Koszul at this step".into()));
                }
                let n = index.len();
                let r = *index.entry((*j, t.path.clone())).or_insert(n);
                col.push((r, t.coeff.clone()));
            }
        }
        Ok(col)
    };

    let mut a_cols = Vec::new();
    let mut a_keys = Vec::new();
    for (i, x) in f.iter().enumerate() {
        let v = x.right_vertex().expect("right uniform");
        for &a in quiver.outgoing(v) {
            let arrow = quiver.arrow_path(a);
            a_cols.push(column(&x.mul_path(alg, &arrow))?);
            a_keys.push((i, arrow));
        }
    }
    let mut b_cols = Vec::new();
    for p in primed_relations(&stage.frame, g2) {
        b_cols.push(column(&p.vector)?);
    }
    let rows = index.len();
    let all: Vec<Vec<(usize, Scalar)>> = a_cols.into_iter().chain(b_cols).collect();
    let m = Matrix::from_sparse_columns(alg.field(), rows, &all);

    let mut out = Vec::new();
    for alpha in m.nullspace() {
        let v = ModuleVector::from_entries(
            alg,
            a_keys
                .iter()
                .zip(&alpha)
                .filter(|(_, c)| !c.is_zero())
                .map(|((i, a), c)| (*i, alg.monomial(a.clone(), c.clone()))),
        );
        if !v.is_zero() {
            out.push(v);
        }
    }
    if out.is_empty() {
        return Ok(out);
    }
    FreeModule::new(alg, &frame).right_tip_reduce(&out)
}

/// Both lists divide each other to remainder zero.
pub fn same_span(module: &FreeModule<'_>, xs: &[ModuleVector], ys: &[ModuleVector]) -> bool {
    let covers = |a: &[ModuleVector], b: &[ModuleVector]| {
        b.iter().all(|x| {
            if a.is_empty() {
                return x.is_zero();
            }
            module.divide(x, a).remainder.is_zero()
        })
    };
    covers(xs, ys) && covers(ys, xs)
}

/// Linear resolution of a linear presentation over `kQ/(relations)` with
/// quadratic relations. Every level is checked for linearity; unless
/// `opts.fast`, each level is built twice and the spans compared.
pub fn koszul_resolution(
    q: &QuotientAlgebra,
    relations: &[Element],
    presentation: &Presentation,
    opts: &KoszulOptions,
) -> Result<Resolution> {
    let alg = q.algebra();
    let g2 = quadratic_part(alg, relations)?;
    let mut res = Resolution {
        presentation: presentation.clone(),
        stages: Vec::new(),
        differentials: Vec::new(),
        terminated: None,
    };
    if opts.steps == 0 {
        return Ok(res);
    }
    let mut stage = koszul_lift(q, presentation, &g2, opts.index_order)?;
    loop {
        let level = stage.level;
        if stage.generators.iter().any(|g| !is_linear(&g.vector)) {
            return Err(Error::Integrity(format!(
                "input not linear / algebra not Koszul at this step (level {level})"
            )));
        }
        if stage.is_terminal() {
            res.terminated = Some(level - 1);
            res.stages.push(stage);
            break;
        }
        let rows = res.summands(level - 1).len();
        res.differentials
            .push(ElementMatrix::from_columns(rows, &stage.vectors()).map(|x| q.normal_form(x)));
        res.stages.push(stage);
        if level >= opts.steps {
            break;
        }
        let prev = res.stages.last().expect("just pushed");
        let span = linear_algebra_f2(alg, &g2, prev, opts.index_order)?;
        stage = if opts.fast {
            let frame = Frame::new(prev.summands()).with_index_order(opts.index_order);
            Stage {
                level: level + 1,
                primed: primed_relations(&frame, &g2),
                frame,
                generators: span
                    .into_iter()
                    .map(|v| Generator {
                        vector: v,
                        label: Label::Span,
                    })
                    .collect(),
                rereduced: false,
            }
        } else {
            let next = koszul_step(q, &g2, prev, opts.exec, opts.index_order)?;
            let module = FreeModule::new(alg, &next.frame);
            if !same_span(&module, &next.vectors(), &span) {
                return Err(Error::Integrity(format!(
                    "level {}: overlap step and linear algebra disagree",
                    level + 1
                )));
            }
            next
        };
    }
    Ok(res)
}

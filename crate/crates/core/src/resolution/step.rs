use log::{debug, warn};

use crate::error::{Error, Result};
use crate::module::{Frame, FreeModule, ModuleTip, ModuleVector};
use crate::par;
use crate::quiver::Path;
use crate::quotient::QuotientAlgebra;

use super::{overlap_sets, Generator, Label, OPath, Primed, PrimedSource, ResolutionOptions, Stage};

const REREDUCE_ROUNDS: usize = 10_000;

/// Level `n` to level `n + 1`.
///
/// For `q ∈ O(tippath f_i)`, write `q = tippath · p = q′ · tip(g)` and
/// `w = f_i · p − ε_{i*} · c · q′ · g`. The part of `w` over `f^n` is
/// `Σ f_l r_l`, and the new generator has entry `p` at `i` and `−r_l` at `l`.
/// Every `q ∈ N(tippath f_i)` yields the primed element `ε_i · z · g`.
pub fn main_step(q: &QuotientAlgebra, stage: &Stage, opts: &ResolutionOptions) -> Result<Stage> {
    let alg = q.algebra();
    let module = FreeModule::new(alg, &stage.frame);
    let f = stage.vectors();
    let fp = stage.primed_vectors();
    let frame = Frame::new(stage.summands()).with_index_order(opts.index_order);
    let cap = opts.extension_cap.or_else(|| q.default_extension_cap());

    let tips: Vec<ModuleTip> = f
        .iter()
        .map(|x| module.tip(x).ok_or(Error::ZeroElement("stage generator")))
        .collect::<Result<_>>()?;
    let sets = par::try_map(opts.exec, &tips, |t| overlap_sets(q, &t.path, cap))?;

    let tasks: Vec<(usize, &OPath)> = sets
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.o.iter().map(move |o| (i, o)))
        .collect();
    let built = par::try_map(opts.exec, &tasks, |&(i, o)| overlap_generator(q, &module, &f, &fp, i, &tips[i], o))?;
    let generators: Vec<Generator> = built
        .into_iter()
        .zip(&tasks)
        .filter_map(|(v, &(i, o))| {
            if v.is_zero() {
                debug!("level {}: overlap ({i}, {}) gave zero", stage.level + 1, o.q.render(alg.quiver()));
                return None;
            }
            Some(Generator {
                vector: v,
                label: Label::Overlap {
                    coord: i,
                    path: o.q.clone(),
                },
            })
        })
        .collect();

    let gb = q.basis().elements();
    let primed: Vec<Primed> = sets
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            s.n.iter().map(move |n| Primed {
                vector: ModuleVector::unit(i, alg.mul_path_left(&n.z, &gb[n.relation])),
                source: PrimedSource::Relation {
                    coord: i,
                    prefix: n.z.clone(),
                    relation: n.relation,
                },
            })
        })
        .collect();

    let (generators, primed, rereduced) = stabilize(q, &frame, generators, primed)?;
    Ok(Stage {
        level: stage.level + 1,
        frame,
        generators,
        primed,
        rereduced,
    })
}

fn overlap_generator(
    q: &QuotientAlgebra,
    module: &FreeModule<'_>,
    f: &[ModuleVector],
    fp: &[ModuleVector],
    i: usize,
    tip: &ModuleTip,
    o: &OPath,
) -> Result<ModuleVector> {
    let alg = q.algebra();
    let g = &q.basis().elements()[o.relation];
    let c = tip.coeff.try_div(g.leading_coeff().expect("nonzero relation"))?;
    let end = ModuleVector::unit(tip.coord, alg.scale(&alg.mul_path_left(&o.prefix, g), &c));
    let w = f[i].mul_path(alg, &o.ext).sub(alg, &end);
    let part = module.first_part(&w, f, fp).map_err(|e| match e {
        Error::Integrity(m) => Error::Integrity(format!("{m} (overlap at generator {i}, q = {})", o.q.render(alg.quiver()))),
        other => other,
    })?;
    Ok(ModuleVector::unit(i, alg.path(o.ext.clone())).sub(alg, &part.coefficients))
}

/// Makes sure the union of a stage's generators and primed elements is right
/// tip-reduced and that no generator tip contains a Gröbner tip.
///
/// When either fails, the union is re-reduced after adding `ε_i · u · g` for
/// the first tip occurrence `u · tip(g)` inside an offending generator tip,
/// until both hold; the result is then split by ideal membership.
pub fn stabilize(
    q: &QuotientAlgebra,
    frame: &Frame,
    generators: Vec<Generator>,
    primed: Vec<Primed>,
) -> Result<(Vec<Generator>, Vec<Primed>, bool)> {
    let alg = q.algebra();
    let module = FreeModule::new(alg, frame);
    let all: Vec<ModuleVector> = generators
        .iter()
        .map(|g| g.vector.clone())
        .chain(primed.iter().map(|p| p.vector.clone()))
        .collect();
    let tips_ok = generators
        .iter()
        .all(|g| module.tip(&g.vector).is_some_and(|t| q.is_nontip(&t.path)));
    if tips_ok && module.is_right_tip_reduced(&all) {
        return Ok((generators, primed, false));
    }
    warn!("stage over {} summands needed re-reduction", frame.len());

    let in_ideal = |x: &ModuleVector| x.entries().iter().all(|(_, e)| q.normal_form(e).is_zero());
    let mut items = all;
    for _ in 0..REREDUCE_ROUNDS {
        items = if items.is_empty() { items } else { module.right_tip_reduce(&items)? };
        let offending = items.iter().find_map(|x| {
            if in_ideal(x) {
                return None;
            }
            let t = module.tip(x)?;
            first_tip_occurrence(q, &t.path).map(|(u, k)| (t.coord, u, k))
        });
        let Some((coord, u, k)) = offending else {
            let mut gens = Vec::new();
            let mut prim = Vec::new();
            for x in items {
                if in_ideal(&x) {
                    let source = primed
                        .iter()
                        .find(|p| p.vector == x)
                        .map_or(PrimedSource::Rereduced, |p| p.source.clone());
                    prim.push(Primed { vector: x, source });
                } else {
                    let label = generators
                        .iter()
                        .find(|g| g.vector == x)
                        .map_or(Label::Rereduced, |g| g.label.clone());
                    gens.push(Generator { vector: x, label });
                }
            }
            return Ok((gens, prim, true));
        };
        let g = &q.basis().elements()[k];
        items.insert(0, ModuleVector::unit(coord, alg.mul_path_left(&u, g)));
    }
    Err(Error::Integrity("re-reduction of a stage did not settle".into()))
}

/// `(u, k)` with `u · tip(g_k)` the shortest prefix of `p` ending in a tip.
fn first_tip_occurrence(q: &QuotientAlgebra, p: &Path) -> Option<(Path, usize)> {
    let quiver = q.algebra().quiver();
    let tips = q.basis().tips();
    (0..=p.len()).find_map(|end| {
        let prefix = quiver.segment(p, 0, end);
        tips.iter()
            .enumerate()
            .find_map(|(k, t)| quiver.right_divides(t, &prefix).map(|u| (u, k)))
    })
}

/// Structural checks on a freshly built stage against the previous one.
pub(crate) fn check_stage(q: &QuotientAlgebra, prev: &Stage, stage: &Stage) -> Result<()> {
    let alg = q.algebra();
    let module = FreeModule::new(alg, &stage.frame);
    let level = stage.level;
    let union: Vec<ModuleVector> = stage.vectors().into_iter().chain(stage.primed_vectors()).collect();
    if !module.is_right_tip_reduced(&union) {
        return Err(Error::Integrity(format!("level {level}: stage is not right tip-reduced")));
    }
    for x in &union {
        module.validate(x)?;
        if !x.is_right_uniform() {
            return Err(Error::Integrity(format!("level {level}: element is not right uniform")));
        }
    }
    for p in &stage.primed {
        if p.vector.entries().iter().any(|(_, e)| !q.normal_form(e).is_zero()) {
            return Err(Error::Integrity(format!("level {level}: primed element outside the ideal")));
        }
    }
    let prev_module = FreeModule::new(alg, &prev.frame);
    let f = prev.vectors();
    for (s, g) in stage.generators.iter().enumerate() {
        let t = module.tip(&g.vector).expect("nonzero generator");
        if !q.is_nontip(&t.path) {
            return Err(Error::Integrity(format!("level {level}: generator {s} has a tip in the ideal")));
        }
        let expanded = prev_module.combine(&f, &g.vector);
        if expanded.entries().iter().any(|(_, e)| !q.normal_form(e).is_zero()) {
            return Err(Error::Integrity(format!(
                "level {level}: generator {s} does not map into the ideal part of level {}",
                level - 1
            )));
        }
    }
    Ok(())
}

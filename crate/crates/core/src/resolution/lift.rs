use crate::error::Result;
use crate::module::{Frame, FreeModule, ModuleVector};
use crate::quotient::QuotientAlgebra;

use super::{stabilize, Generator, Label, Presentation, Primed, PrimedSource, ResolutionOptions, Stage};

/// Level 1: tip-reduce the presentation columns together with `ε_i · g` for
/// every `g ∈ rtG` starting at `v_i`, then split off the elements lying in
/// `⨿ v_i I`.
pub fn lift_presentation(q: &QuotientAlgebra, presentation: &Presentation, opts: &ResolutionOptions) -> Result<Stage> {
    q.require_finite_rtg()?;
    let alg = q.algebra();
    let frame = Frame::new(presentation.targets().to_vec()).with_index_order(opts.index_order);
    let module = FreeModule::new(alg, &frame);

    let columns: Vec<(usize, ModuleVector)> = presentation
        .columns(alg)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let mut inputs: Vec<ModuleVector> = columns.iter().map(|(_, c)| c.clone()).collect();
    for (i, &v) in frame.vertices().iter().enumerate() {
        for e in q.rtg().starting_at(v) {
            inputs.push(ModuleVector::unit(i, e.element.clone()));
        }
    }
    let reduced = if inputs.is_empty() {
        Vec::new()
    } else {
        module.right_tip_reduce_tracked(&inputs)?
    };

    let mut generators = Vec::new();
    let mut primed = Vec::new();
    for t in reduced {
        let in_ideal = t.vector.entries().iter().all(|(_, x)| q.normal_form(x).is_zero());
        if in_ideal {
            primed.push(Primed {
                vector: t.vector,
                source: PrimedSource::Lift,
            });
            continue;
        }
        let label = match t.combination.entries() {
            [(k, x)] if *k < columns.len() && x.len() == 1 && x.terms()[0].path.is_trivial() => Label::Column(columns[*k].0),
            _ => Label::Lift,
        };
        generators.push(Generator { vector: t.vector, label });
    }
    let (generators, primed, rereduced) = stabilize(q, &frame, generators, primed)?;
    Ok(Stage {
        level: 1,
        frame,
        generators,
        primed,
        rereduced,
    })
}

//! Projective resolutions built level by level from overlaps with the
//! Gröbner tips.
//!
//! Level `n` carries generators `f^n` and primed elements `f^n′`, both
//! vectors over the frame `T_{n−1}` whose vertices are the termini of the
//! level `n − 1` generators. A generator vector is at the same time the
//! column of the differential `h^{n−1,n}`.

mod lift;
mod overlap;
mod step;
mod verify;

pub use lift::lift_presentation;
pub use overlap::{overlap_sets, OPath, NPath, OverlapSets};
pub use step::{main_step, stabilize};
pub use verify::{verify_complex, verify_complex_to, ExactnessRow, ExactnessStatus, ProductFailure, VerifyReport};

use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::matrix::ElementMatrix;
use crate::module::{Frame, FreeModule, IndexOrder, ModuleVector};
use crate::par::Exec;
use crate::quiver::{Path, VertexId};
use crate::quotient::QuotientAlgebra;

/// `⨿ w_j Λ → ⨿ v_i Λ` given by a matrix whose entry `(i, j)` lies in
/// `v_i Λ w_j`. The module presented is the cokernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    targets: Vec<VertexId>,
    sources: Vec<VertexId>,
    matrix: ElementMatrix,
}

impl Presentation {
    /// Checks shape and uniformity and stores entries in normal form.
    pub fn new(
        q: &QuotientAlgebra,
        targets: Vec<VertexId>,
        sources: Vec<VertexId>,
        matrix: ElementMatrix,
    ) -> Result<Self> {
        if matrix.rows() != targets.len() || matrix.cols() != sources.len() {
            return Err(Error::Precondition(format!(
                "matrix is {}x{} but the module declares {} targets and {} sources",
                matrix.rows(),
                matrix.cols(),
                targets.len(),
                sources.len()
            )));
        }
        let alg = q.algebra();
        for (i, j, x) in matrix.entries() {
            if x.is_zero() {
                continue;
            }
            if x.uniform_endpoints() != Some((targets[i], sources[j])) {
                return Err(Error::Precondition(format!(
                    "entry ({}, {}) is not in {}Λ{}",
                    i + 1,
                    j + 1,
                    alg.quiver().vertex_name(targets[i]),
                    alg.quiver().vertex_name(sources[j])
                )));
            }
        }
        let matrix = matrix.map(|x| q.normal_form(x));
        Ok(Presentation { targets, sources, matrix })
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    pub fn sources(&self) -> &[VertexId] {
        &self.sources
    }

    pub fn matrix(&self) -> &ElementMatrix {
        &self.matrix
    }

    pub fn columns(&self, alg: &PathAlgebra) -> Vec<ModuleVector> {
        self.matrix.columns(alg)
    }
}

/// Where a generator came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    /// Level 1: the reduced form of presentation column `k`.
    Column(usize),
    /// Level 1: produced by tip-reducing columns against the ideal.
    Lift,
    /// `(i, q)` with `q ∈ O(tippath f_i)`.
    Overlap { coord: usize, path: Path },
    /// Produced by the re-reduction fallback.
    Rereduced,
    /// Read off a kernel basis by linear algebra.
    Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimedSource {
    /// `ε_coord · (prefix · g_relation)`.
    Relation { coord: usize, prefix: Path, relation: usize },
    Lift,
    Rereduced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub vector: ModuleVector,
    pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primed {
    pub vector: ModuleVector,
    pub source: PrimedSource,
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub level: usize,
    /// `T_{level−1}`.
    pub frame: Frame,
    pub generators: Vec<Generator>,
    pub primed: Vec<Primed>,
    /// Whether the re-reduction fallback ran for this stage.
    pub rereduced: bool,
}

impl Stage {
    pub fn vectors(&self) -> Vec<ModuleVector> {
        self.generators.iter().map(|g| g.vector.clone()).collect()
    }

    pub fn primed_vectors(&self) -> Vec<ModuleVector> {
        self.primed.iter().map(|p| p.vector.clone()).collect()
    }

    /// Vertices `v^level_i`: termini of the generators.
    pub fn summands(&self) -> Vec<VertexId> {
        self.generators
            .iter()
            .map(|g| g.vector.right_vertex().expect("generators are right uniform"))
            .collect()
    }

    pub fn is_terminal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn module<'a>(&'a self, alg: &'a PathAlgebra) -> FreeModule<'a> {
        FreeModule::new(alg, &self.frame)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolutionOptions {
    /// Number of levels to compute after `L^0`.
    pub steps: usize,
    /// Longest extension searched for `N`-type overlaps; derived from the
    /// nontips when `None`.
    pub extension_cap: Option<usize>,
    pub verify: bool,
    pub exec: Exec,
    pub index_order: IndexOrder,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions {
            steps: 4,
            extension_cap: None,
            verify: true,
            exec: Exec::default(),
            index_order: IndexOrder::default(),
        }
    }
}

/// `… → L^2 → L^1 → L^0 → M → 0` with `L^n = ⨿ v^n_i Λ`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub presentation: Presentation,
    /// `stages[k]` is level `k + 1`; a terminal stage, if any, is last.
    pub stages: Vec<Stage>,
    /// `e^n` for `n = 1..=top()`, normal-form entries.
    pub differentials: Vec<ElementMatrix>,
    /// Set to `n` when `T_{n+1}` came out empty.
    pub terminated: Option<usize>,
}

impl Resolution {
    /// Highest level with a nonzero module.
    pub fn top(&self) -> usize {
        self.differentials.len()
    }

    pub fn summands(&self, level: usize) -> Vec<VertexId> {
        if level == 0 {
            self.presentation.targets.clone()
        } else {
            self.stages[level - 1].summands()
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.top()).map(|n| self.summands(n).len()).collect()
    }

    pub fn differential(&self, level: usize) -> &ElementMatrix {
        &self.differentials[level - 1]
    }

    pub fn stage(&self, level: usize) -> Option<&Stage> {
        level.checked_sub(1).and_then(|k| self.stages.get(k))
    }
}

fn differential(q: &QuotientAlgebra, rows: usize, stage: &Stage) -> ElementMatrix {
    ElementMatrix::from_columns(rows, &stage.vectors()).map(|x| q.normal_form(x))
}

/// Lifts the presentation, then applies the main step until `opts.steps`
/// levels exist or some `T_n` is empty.
pub fn build_resolution(q: &QuotientAlgebra, presentation: &Presentation, opts: &ResolutionOptions) -> Result<Resolution> {
    q.require_finite_rtg()?;
    let mut res = Resolution {
        presentation: presentation.clone(),
        stages: Vec::new(),
        differentials: Vec::new(),
        terminated: None,
    };
    if opts.steps == 0 {
        return Ok(res);
    }
    let mut stage = lift_presentation(q, presentation, opts)?;
    loop {
        let level = stage.level;
        if stage.is_terminal() {
            res.terminated = Some(level - 1);
            res.stages.push(stage);
            break;
        }
        let rows = res.summands(level - 1).len();
        res.differentials.push(differential(q, rows, &stage));
        res.stages.push(stage);
        if level >= opts.steps {
            break;
        }
        let prev = res.stages.last().expect("just pushed");
        stage = main_step(q, prev, opts)?;
        if opts.verify {
            step::check_stage(q, prev, &stage)?;
        }
    }
    Ok(res)
}

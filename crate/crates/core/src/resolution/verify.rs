use std::collections::HashMap;

use crate::algebra::{Element, PathAlgebra};
use crate::linalg::Matrix;
use crate::matrix::ElementMatrix;
use crate::nontips::{enumerate_nontips, Nontips};
use crate::quiver::{Path, VertexId};
use crate::quotient::QuotientAlgebra;
use crate::syntax::render_element;

use super::Resolution;

/// Degree bound for the graded exactness check on infinite-dimensional `Λ`.
pub const DEFAULT_GRADED_DEGREE: usize = 6;

/// Entry of `e^{level−1} · e^level` with a nonzero normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFailure {
    pub level: usize,
    pub row: usize,
    pub col: usize,
    pub residue: Element,
}

/// At `level > 0`: `kernel = dim L^n − rank e^n`, `image = rank e^{n+1}`.
/// At level 0: `kernel = rank D`, `image = rank e^1`, and `ok` also asks
/// that the two images coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessRow {
    pub level: usize,
    pub dim: usize,
    pub kernel: usize,
    pub image: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactnessStatus {
    /// Over the whole (finite) nontip basis.
    Checked(Vec<ExactnessRow>),
    /// Summed over internal degrees `0..=max_degree`; `ok` holds in each.
    Graded { max_degree: usize, rows: Vec<ExactnessRow> },
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub products: Vec<ProductFailure>,
    pub exactness: ExactnessStatus,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        let rows_ok = match &self.exactness {
            ExactnessStatus::Checked(rows) | ExactnessStatus::Graded { rows, .. } => rows.iter().all(|r| r.ok),
            ExactnessStatus::Skipped(_) => true,
        };
        self.products.is_empty() && rows_ok
    }

    pub fn render(&self, alg: &PathAlgebra) -> Vec<String> {
        let mut out = Vec::new();
        if self.products.is_empty() {
            out.push("complex: every product of consecutive differentials is zero".to_string());
        }
        for p in &self.products {
            out.push(format!(
                "complex: FAIL at level {}, row {}, column {}: {}",
                p.level,
                p.row + 1,
                p.col + 1,
                render_element(alg, &p.residue)
            ));
        }
        let rows = match &self.exactness {
            ExactnessStatus::Checked(rows) => {
                out.push("exactness: over the nontip basis".to_string());
                rows
            }
            ExactnessStatus::Graded { max_degree, rows } => {
                out.push(format!("exactness: graded, degrees 0..={max_degree}"));
                rows
            }
            ExactnessStatus::Skipped(why) => {
                out.push(format!("exactness: skipped ({why})"));
                return out;
            }
        };
        for r in rows {
            let verdict = if r.ok { "ok" } else { "FAIL" };
            if r.level == 0 {
                out.push(format!(
                    "  L^0: dim {}, rank D = {}, rank e^1 = {}: {verdict}",
                    r.dim, r.kernel, r.image
                ));
            } else {
                out.push(format!(
                    "  L^{}: dim {}, dim ker e^{} = {}, rank e^{} = {}: {verdict}",
                    r.level,
                    r.dim,
                    r.level,
                    r.kernel,
                    r.level + 1,
                    r.image
                ));
            }
        }
        out
    }
}

pub fn verify_complex(q: &QuotientAlgebra, res: &Resolution) -> VerifyReport {
    verify_complex_to(q, res, DEFAULT_GRADED_DEGREE)
}

/// Checks `e^{n−1} e^n = 0` entrywise and, with exact linear algebra over
/// `k`, that the complex is exact at every level it covers. Infinite `Λ` is
/// checked degree by degree up to `max_degree` when all maps are
/// homogeneous.
pub fn verify_complex_to(q: &QuotientAlgebra, res: &Resolution, max_degree: usize) -> VerifyReport {
    let alg = q.algebra();
    if !q.basis().is_complete() {
        return VerifyReport {
            products: Vec::new(),
            exactness: ExactnessStatus::Skipped("the Gröbner basis is incomplete".into()),
        };
    }
    let mut products = Vec::new();
    for n in 2..=res.top() {
        let prod = res.differential(n - 1).mul(alg, res.differential(n));
        for (row, col, x) in prod.entries() {
            let r = q.normal_form(x);
            if !r.is_zero() {
                products.push(ProductFailure {
                    level: n,
                    row,
                    col,
                    residue: r,
                });
            }
        }
    }
    let exactness = if q.nontips().is_finite() {
        let ctx = Slices::new(q, res);
        ExactnessStatus::Checked(ctx.rows(q.nontips(), None))
    } else {
        match degrees(res) {
            Some(deg) => {
                let nontips = enumerate_nontips(alg, q.basis(), Some(max_degree));
                let ctx = Slices::new(q, res);
                let mut total: Option<Vec<ExactnessRow>> = None;
                for d in 0..=max_degree {
                    let rows = ctx.rows(&nontips, Some((&deg, d)));
                    total = Some(match total {
                        None => rows,
                        Some(acc) => acc
                            .into_iter()
                            .zip(rows)
                            .map(|(a, b)| ExactnessRow {
                                level: a.level,
                                dim: a.dim + b.dim,
                                kernel: a.kernel + b.kernel,
                                image: a.image + b.image,
                                ok: a.ok && b.ok,
                            })
                            .collect(),
                    });
                }
                ExactnessStatus::Graded {
                    max_degree,
                    rows: total.unwrap_or_default(),
                }
            }
            None => ExactnessStatus::Skipped("Λ is infinite dimensional and the complex is not graded".into()),
        }
    };
    VerifyReport { products, exactness }
}

/// Degrees of the summands, level 0 first and the presentation sources
/// last, when every nonzero entry is homogeneous and degrees are consistent.
fn degrees(res: &Resolution) -> Option<Vec<Vec<usize>>> {
    // Per column: `None` overall when inconsistent, `Some(None)` for a zero column.
    fn column_degrees(m: &ElementMatrix, rows: &[usize]) -> Option<Vec<Option<usize>>> {
        (0..m.cols())
            .map(|j| {
                let mut deg = None;
                for (i, &row_deg) in rows.iter().enumerate() {
                    let x = m.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    let len = x.max_len();
                    if !x.is_homogeneous_of(len) {
                        return None;
                    }
                    match deg {
                        None => deg = Some(row_deg + len),
                        Some(e) if e == row_deg + len => {}
                        Some(_) => return None,
                    }
                }
                Some(deg)
            })
            .collect()
    }
    let d = res.presentation.matrix();
    let mut out: Vec<Vec<usize>> = vec![vec![0; d.rows()]];
    for n in 1..=res.top() {
        let next = column_degrees(res.differential(n), &out[n - 1])?;
        out.push(next.into_iter().collect::<Option<_>>()?);
    }
    // Zero presentation columns map nothing; any degree will do.
    let src = column_degrees(d, &out[0])?;
    out.push(src.into_iter().map(|x| x.unwrap_or(0)).collect());
    Some(out)
}

struct Basis {
    items: Vec<(usize, Path)>,
    index: HashMap<(usize, Path), usize>,
}

impl Basis {
    fn new(summands: &[VertexId], nontips: &Nontips, degrees: Option<(&[usize], usize)>) -> Self {
        let mut items = Vec::new();
        for (s, &v) in summands.iter().enumerate() {
            for p in nontips.starting_at(v) {
                let keep = match degrees {
                    None => true,
                    Some((deg, d)) => deg[s] + p.len() == d,
                };
                if keep {
                    items.push((s, p.clone()));
                }
            }
        }
        let index = items.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect();
        Basis { items, index }
    }

    fn len(&self) -> usize {
        self.items.len()
    }
}

struct Slices<'a> {
    q: &'a QuotientAlgebra,
    res: &'a Resolution,
}

impl<'a> Slices<'a> {
    fn new(q: &'a QuotientAlgebra, res: &'a Resolution) -> Self {
        Slices { q, res }
    }

    /// k-matrix of `m : ⨿ cols → ⨿ rows` on the given bases.
    fn k_matrix(&self, m: &ElementMatrix, rows: &Basis, cols: &Basis) -> Matrix {
        let alg = self.q.algebra();
        let columns: Vec<Vec<(usize, crate::coeff::Scalar)>> = cols
            .items
            .iter()
            .map(|(s, p)| {
                let mut col = Vec::new();
                for l in 0..m.rows() {
                    let x = m.get(l, *s);
                    if x.is_zero() {
                        continue;
                    }
                    let y = self.q.normal_form(&alg.mul_path_right(x, p));
                    for t in y.terms() {
                        match rows.index.get(&(l, t.path.clone())) {
                            Some(&r) => col.push((r, t.coeff.clone())),
                            None => panic!("normal form term outside the row basis"),
                        }
                    }
                }
                col
            })
            .collect();
        Matrix::from_sparse_columns(alg.field(), rows.len(), &columns)
    }

    fn rows(&self, nontips: &Nontips, grading: Option<(&Vec<Vec<usize>>, usize)>) -> Vec<ExactnessRow> {
        let res = self.res;
        let top = res.top();
        let deg = |level: usize| grading.map(|(g, d)| (g[level].as_slice(), d));
        let bases: Vec<Basis> = (0..=top).map(|n| Basis::new(&res.summands(n), nontips, deg(n))).collect();
        let src_deg = grading.map(|(g, d)| (g[top + 1].as_slice(), d));
        let sources = Basis::new(res.presentation.sources(), nontips, src_deg);
        let ranks: Vec<usize> = (1..=top)
            .map(|n| self.k_matrix(res.differential(n), &bases[n - 1], &bases[n]).rank())
            .collect();
        let rank_e = |n: usize| if n >= 1 && n <= top { ranks[n - 1] } else { 0 };

        let mut rows = Vec::new();
        let d_k = self.k_matrix(res.presentation.matrix(), &bases[0], &sources);
        let rank_d = d_k.rank();
        let joint = if top >= 1 {
            d_k.hcat(&self.k_matrix(res.differential(1), &bases[0], &bases[1])).rank()
        } else {
            rank_d
        };
        let covers_l1 = top >= 1 || res.terminated == Some(0);
        if covers_l1 {
            rows.push(ExactnessRow {
                level: 0,
                dim: bases[0].len(),
                kernel: rank_d,
                image: rank_e(1),
                ok: rank_d == rank_e(1) && joint == rank_d,
            });
        }
        for (n, basis) in bases.iter().enumerate().take(top + 1).skip(1) {
            if n == top && res.terminated != Some(top) {
                break;
            }
            let kernel = basis.len() - rank_e(n);
            rows.push(ExactnessRow {
                level: n,
                dim: basis.len(),
                kernel,
                image: rank_e(n + 1),
                ok: kernel == rank_e(n + 1),
            });
        }
        rows
    }
}

#![allow(dead_code)]

use pathres::algebra::{Element, PathAlgebra};
use pathres::coeff::{Field, Scalar};
use pathres::groebner::buchberger_complete;
use pathres::linalg::Matrix;
use pathres::matrix::ElementMatrix;
use pathres::module::{Frame, FreeModule, IndexOrder, ModuleVector};
use pathres::order::AdmissibleOrder;
use pathres::problem::{parse_problem, Problem};
use pathres::syntax::parse_element;
use pathres::quiver::{Path, Quiver, VertexId};
use pathres::quotient::QuotientAlgebra;
use pathres::resolution::{Presentation, Resolution, Stage};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::HashMap;

pub struct Instance {
    pub seed: u64,
    pub quotient: QuotientAlgebra,
    pub relations: Vec<Element>,
    pub presentation: Presentation,
}

/// Every path of length exactly `len` starting at `v`.
pub fn paths_from(quiver: &Quiver, v: VertexId, len: usize) -> Vec<Path> {
    let mut level = vec![Path::vertex(v)];
    for _ in 0..len {
        level = level
            .iter()
            .flat_map(|p| {
                quiver
                    .outgoing(p.terminus())
                    .iter()
                    .map(move |&a| p.push(a, quiver.arrow(a).target))
            })
            .collect();
    }
    level
}

/// Every path of length at most `len`, shortest first.
pub fn all_paths(quiver: &Quiver, len: usize) -> Vec<Path> {
    (0..=len)
        .flat_map(|l| quiver.vertices().flat_map(move |v| paths_from(quiver, v, l)))
        .collect()
}

fn scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    loop {
        let c = field.from_i64(rng.gen_range(-3..=3));
        if !c.is_zero() {
            return c;
        }
    }
}

fn random_quiver(rng: &mut ChaCha8Rng) -> Quiver {
    let nv = rng.gen_range(1..=4);
    let na = rng.gen_range(1..=6);
    let vs: Vec<String> = (1..=nv).map(|k| format!("v{k}")).collect();
    let arrows: Vec<(String, String, String)> = (0..na)
        .map(|k| {
            let s = rng.gen_range(0..nv);
            let t = rng.gen_range(0..nv);
            (((b'a' + k as u8) as char).to_string(), vs[s].clone(), vs[t].clone())
        })
        .collect();
    Quiver::new(&vs, &arrows).expect("valid random quiver")
}

fn random_relation(rng: &mut ChaCha8Rng, alg: &PathAlgebra, len: usize) -> Option<Element> {
    let quiver = alg.quiver();
    let field = alg.field();
    let v = VertexId(rng.gen_range(0..quiver.vertex_count()) as u32);
    let candidates = paths_from(quiver, v, len);
    let p = candidates.choose(rng)?.clone();
    let others: Vec<&Path> = candidates
        .iter()
        .filter(|q| **q != p && q.terminus() == p.terminus())
        .collect();
    let mut terms = vec![(p, scalar(rng, field))];
    if rng.gen_bool(0.6) {
        if let Some(q) = others.choose(rng) {
            terms.push(((*q).clone(), scalar(rng, field)));
        }
    }
    alg.from_terms(terms).ok()
}

fn random_presentation(rng: &mut ChaCha8Rng, q: &QuotientAlgebra, linear: bool) -> Option<Presentation> {
    let alg = q.algebra();
    let quiver = alg.quiver();
    let nv = quiver.vertex_count();
    if linear {
        let v = VertexId(rng.gen_range(0..nv) as u32);
        let arrows = quiver.outgoing(v);
        let sources: Vec<VertexId> = arrows.iter().map(|&a| quiver.arrow(a).target).collect();
        let columns: Vec<ModuleVector> = arrows
            .iter()
            .map(|&a| ModuleVector::unit(0, alg.path(quiver.arrow_path(a))))
            .collect();
        let m = ElementMatrix::from_columns(1, &columns);
        return Presentation::new(q, vec![v], sources, m).ok();
    }
    let nt = rng.gen_range(1..=2);
    let targets: Vec<VertexId> = (0..nt).map(|_| VertexId(rng.gen_range(0..nv) as u32)).collect();
    let ncols = rng.gen_range(1..=3);
    let mut sources = Vec::new();
    let mut columns = Vec::new();
    for _ in 0..ncols {
        let i = rng.gen_range(0..nt);
        let len = rng.gen_range(1..=2);
        let firsts: Vec<&Path> = q.nontips().starting_at(targets[i]).filter(|p| p.len() == len).collect();
        let Some(p) = firsts.choose(rng) else { continue };
        let p = (*p).clone();
        let mut col = ModuleVector::unit(i, alg.monomial(p.clone(), scalar(rng, alg.field())));
        if nt == 2 && rng.gen_bool(0.5) {
            let j = 1 - i;
            let seconds: Vec<&Path> = q
                .nontips()
                .starting_at(targets[j])
                .filter(|x| x.terminus() == p.terminus() && x.len() <= 2)
                .collect();
            if let Some(x) = seconds.choose(rng) {
                col = col.add(alg, &ModuleVector::unit(j, alg.monomial((*x).clone(), scalar(rng, alg.field()))));
            }
        }
        sources.push(p.terminus());
        columns.push(col);
    }
    if columns.is_empty() {
        return None;
    }
    let m = ElementMatrix::from_columns(nt, &columns);
    Presentation::new(q, targets, sources, m).ok()
}

const PRIMES: [u64; 3] = [2, 3, 7];

/// A random instance from `seed`, or `None` when the draw is rejected
/// (incomplete or infinite algebra, or too large).
pub fn random_instance(seed: u64, quadratic: bool) -> Option<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quiver = random_quiver(&mut rng);
    let mut vs: Vec<VertexId> = quiver.vertices().collect();
    let mut arrs: Vec<_> = quiver.arrow_ids().collect();
    vs.shuffle(&mut rng);
    arrs.shuffle(&mut rng);
    let order = AdmissibleOrder::length_lex(&quiver, &vs, &arrs).ok()?;
    let field = if seed.is_multiple_of(2) {
        Field::Rationals
    } else {
        Field::prime(PRIMES[(seed / 2 % 3) as usize]).ok()?
    };
    let alg = PathAlgebra::new(quiver, order, field);
    let nrel = rng.gen_range(1..=3);
    let mut relations = Vec::new();
    for _ in 0..nrel {
        let len = if quadratic { 2 } else { rng.gen_range(2..=3) };
        if let Some(r) = random_relation(&mut rng, &alg, len) {
            relations.push(r);
        }
    }
    let gb = buchberger_complete(&alg, &relations, Some(8)).ok()?;
    if !gb.is_complete() {
        return None;
    }
    if quadratic && gb.elements().iter().any(|g| !g.is_homogeneous_of(2)) {
        return None;
    }
    let q = QuotientAlgebra::new(alg, gb, None);
    if !q.nontips().is_finite() || q.nontips().len() > 40 {
        return None;
    }
    let presentation = random_presentation(&mut rng, &q, quadratic)?;
    Some(Instance {
        seed,
        quotient: q,
        relations,
        presentation,
    })
}

/// The first `count` accepted instances from consecutive seeds.
pub fn instances(count: usize, quadratic: bool) -> Vec<Instance> {
    let base = if quadratic { 50_000 } else { 10_000 };
    (base..base + 200_000)
        .filter_map(|s| random_instance(s, quadratic))
        .take(count)
        .collect()
}

/// Coordinates of `x` over `(coord, nontip)` pairs after taking normal forms.
fn nf_coordinates(q: &QuotientAlgebra, x: &ModuleVector, index: &mut HashMap<(usize, Path), usize>) -> Vec<(usize, Scalar)> {
    let mut out = Vec::new();
    for (j, e) in x.entries() {
        for t in q.normal_form(e).terms() {
            let n = index.len();
            let r = *index.entry((*j, t.path.clone())).or_insert(n);
            out.push((r, t.coeff.clone()));
        }
    }
    out
}

/// Checks by brute-force linear algebra that the level `n + 1` set
/// generates `{y ∈ ⨿_{T_n} v R : Σ f^n_i y_i ∈ ⨿ ε I}`, using every `y`
/// of the form `Σ α ε_i p` with `p` a nontip and `|tip f_i| + |p| ≤ bound`,
/// plus `ε_i · rtG`. Conversely every generator must land in `⨿ ε I`.
pub fn check_level(q: &QuotientAlgebra, stage: &Stage, next: &Stage, bound: usize) -> Result<(), String> {
    let alg = q.algebra();
    let module = FreeModule::new(alg, &stage.frame);
    let f = stage.vectors();
    let next_module = FreeModule::new(alg, &next.frame);
    let divisors: Vec<ModuleVector> = next.vectors().into_iter().chain(next.primed_vectors()).collect();
    let member = |y: &ModuleVector| -> bool {
        if y.is_zero() {
            return true;
        }
        !divisors.is_empty() && next_module.divide(y, &divisors).remainder.is_zero()
    };

    let mut keys = Vec::new();
    let mut columns = Vec::new();
    let mut index = HashMap::new();
    for (i, fi) in f.iter().enumerate() {
        let tip_len = module.tip(fi).expect("nonzero").path.len();
        let end = fi.right_vertex().expect("right uniform");
        for p in q.nontips().starting_at(end) {
            if tip_len + p.len() > bound {
                continue;
            }
            columns.push(nf_coordinates(q, &fi.mul_path(alg, p), &mut index));
            keys.push((i, p.clone()));
        }
    }
    let m = Matrix::from_sparse_columns(alg.field(), index.len(), &columns);
    for alpha in m.nullspace() {
        let y = ModuleVector::from_entries(
            alg,
            keys.iter()
                .zip(&alpha)
                .filter(|(_, c)| !c.is_zero())
                .map(|((i, p), c)| (*i, alg.monomial(p.clone(), c.clone()))),
        );
        if !member(&y) {
            return Err(format!("level {}: kernel element {:?} is not generated", next.level, y));
        }
    }
    for (i, &v) in next.frame.vertices().iter().enumerate() {
        for e in q.rtg().starting_at(v) {
            let y = ModuleVector::unit(i, e.element.clone());
            if !member(&y) {
                return Err(format!("level {}: ideal element {:?} is not generated", next.level, y));
            }
        }
    }
    for x in divisors.iter() {
        let expanded = module.combine(&f, x);
        if expanded.entries().iter().any(|(_, e)| !q.normal_form(e).is_zero()) {
            return Err(format!("level {}: {:?} does not map into the ideal", next.level, x));
        }
    }
    Ok(())
}

/// Level 1 against the presentation: the stage generates `⨿ D_j R + ⨿ ε I`
/// and lies in it.
pub fn check_lift(q: &QuotientAlgebra, res: &Resolution) -> Result<(), String> {
    let Some(stage) = res.stages.first() else { return Ok(()) };
    let alg = q.algebra();
    let module = FreeModule::new(alg, &stage.frame);
    let divisors: Vec<ModuleVector> = stage.vectors().into_iter().chain(stage.primed_vectors()).collect();
    let member = |y: &ModuleVector| y.is_zero() || (!divisors.is_empty() && module.divide(y, &divisors).remainder.is_zero());
    let columns = res.presentation.columns(alg);
    for c in &columns {
        if !member(c) {
            return Err(format!("presentation column {c:?} is not generated"));
        }
    }
    for (i, &v) in stage.frame.vertices().iter().enumerate() {
        for e in q.rtg().starting_at(v) {
            if !member(&ModuleVector::unit(i, e.element.clone())) {
                return Err("an ideal element is not generated at level 1".into());
            }
        }
    }
    // Converse: the image of each element in ⨿ Λ is in the span of the columns.
    let mut index = HashMap::new();
    let mut span = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        for p in q.nontips().starting_at(res.presentation.sources()[j]) {
            span.push(nf_coordinates(q, &c.mul_path(alg, p), &mut index));
        }
    }
    for x in &divisors {
        let col = nf_coordinates(q, x, &mut index);
        let rows = index.len();
        let base = Matrix::from_sparse_columns(alg.field(), rows, &span).rank();
        let mut with = span.clone();
        with.push(col);
        if Matrix::from_sparse_columns(alg.field(), rows, &with).rank() != base {
            return Err(format!("level 1 element {x:?} is outside the presented submodule"));
        }
    }
    Ok(())
}

/// Every consecutive pair of computed stages, plus the lift.
pub fn check_intersections(q: &QuotientAlgebra, res: &Resolution, bound: usize) -> Result<(), String> {
    check_lift(q, res)?;
    for w in res.stages.windows(2) {
        check_level(q, &w[0], &w[1], bound)?;
    }
    Ok(())
}

/// Parses a problem file and builds its quotient and presentation.
pub fn load(text: &str) -> (Problem, QuotientAlgebra, Presentation) {
    let p = parse_problem(text).expect("problem parses");
    let q = QuotientAlgebra::from_relations(p.algebra.clone(), &p.relations, p.degree_cap, None).expect("complete");
    let m = p.module.clone().expect("module block");
    let pres = Presentation::new(&q, m.targets, m.sources, m.matrix).expect("valid presentation");
    (p, q, pres)
}

/// Whether each column of `m` is a nonzero scalar multiple of the column
/// of `expected` (given row by row as element strings).
pub fn equal_up_to_column_scalars(alg: &PathAlgebra, m: &ElementMatrix, expected: &[&[&str]]) -> bool {
    if m.rows() != expected.len() || expected.iter().any(|r| r.len() != m.cols()) {
        return false;
    }
    (0..m.cols()).all(|j| {
        let want: Vec<Element> = expected.iter().map(|r| parse_element(alg, r[j]).expect("element")).collect();
        let got: Vec<&Element> = (0..m.rows()).map(|i| m.get(i, j)).collect();
        let Some(k) = want.iter().position(|x| !x.is_zero()) else {
            return got.iter().all(|x| x.is_zero());
        };
        let Some(g) = got[k].leading_coeff() else { return false };
        let c = want[k].leading_coeff().unwrap().try_div(g).unwrap();
        want.iter().zip(&got).all(|(w, g)| alg.scale(g, &c) == *w)
    })
}

pub fn vertex_names(q: &QuotientAlgebra, vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(|&v| q.algebra().quiver().vertex_name(v).to_string()).collect()
}

/// Admissible-order axioms on every pair of paths of length at most
/// `max_len`: a total order, compatible with multiplication on either side,
/// with every path above its proper subpaths.
pub fn check_order_axioms(alg: &PathAlgebra, max_len: usize) -> Result<usize, String> {
    let quiver = alg.quiver();
    let mut paths = all_paths(quiver, max_len);
    let name = |p: &Path| p.render(quiver);
    for p in &paths {
        for q in &paths {
            let pq = alg.cmp(p, q);
            if pq != alg.cmp(q, p).reverse() || (pq == Ordering::Equal) != (p == q) {
                return Err(format!("{} and {} are not totally ordered", name(p), name(q)));
            }
            if pq != Ordering::Less {
                continue;
            }
            for a in quiver.arrow_ids() {
                let r = quiver.arrow_path(a);
                if let (Some(pr), Some(qr)) = (p.mul(&r), q.mul(&r)) {
                    if alg.cmp(&pr, &qr) != Ordering::Less {
                        return Err(format!("right multiplication by {} breaks {} < {}", name(&r), name(p), name(q)));
                    }
                }
                if let (Some(rp), Some(rq)) = (r.mul(p), r.mul(q)) {
                    if alg.cmp(&rp, &rq) != Ordering::Less {
                        return Err(format!("left multiplication by {} breaks {} < {}", name(&r), name(p), name(q)));
                    }
                }
            }
        }
        for k in 0..p.len() {
            for m in k..=p.len() {
                let sub = quiver.segment(p, k, m);
                if sub != *p && alg.cmp(&sub, p) != Ordering::Less {
                    return Err(format!("subpath {} is not below {}", name(&sub), name(p)));
                }
            }
        }
    }
    // transitivity: sorting must agree with every pairwise comparison
    paths.sort_by(|p, q| alg.cmp(p, q));
    for (i, p) in paths.iter().enumerate() {
        for q in &paths[i + 1..] {
            if alg.cmp(p, q) != Ordering::Less {
                return Err(format!("{} and {} are not transitively ordered", name(p), name(q)));
            }
        }
    }
    Ok(paths.len())
}

/// A random element of `kQ` supported on paths of length at most `max_len`.
pub fn random_element(rng: &mut ChaCha8Rng, alg: &PathAlgebra, max_len: usize) -> Element {
    let paths = all_paths(alg.quiver(), max_len);
    let n = rng.gen_range(1..=4);
    let terms: Vec<(Path, Scalar)> = (0..n)
        .map(|_| (paths.choose(rng).unwrap().clone(), scalar(rng, alg.field())))
        .collect();
    alg.from_terms(terms).unwrap()
}

/// A random element of the ideal: `Σ c · l · g · r` over basis elements `g`.
pub fn random_ideal_element(rng: &mut ChaCha8Rng, q: &QuotientAlgebra, max_len: usize) -> Element {
    let alg = q.algebra();
    let paths = all_paths(alg.quiver(), max_len);
    let mut x = Element::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let Some(g) = q.basis().elements().choose(rng) else { break };
        let (u, v) = g.uniform_endpoints().expect("uniform basis element");
        let ls: Vec<&Path> = paths.iter().filter(|p| p.terminus() == u).collect();
        let rs: Vec<&Path> = paths.iter().filter(|p| p.origin() == v).collect();
        let y = alg.mul_paths(ls.choose(rng).unwrap(), g, rs.choose(rng).unwrap());
        x = alg.add_scaled(&x, &scalar(rng, alg.field()), &y);
    }
    x
}

/// NF is idempotent, supported on nontips, differs from `x` by an ideal
/// element, and vanishes on ideal elements.
pub fn check_normal_forms(q: &QuotientAlgebra, seed: u64, trials: usize) -> Result<(), String> {
    let alg = q.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x = random_element(&mut rng, alg, 5);
        let nf = q.normal_form(&x);
        if q.normal_form(&nf) != nf {
            return Err("normal form is not idempotent".into());
        }
        if nf.terms().iter().any(|t| !q.is_nontip(&t.path)) {
            return Err("normal form has a tip".into());
        }
        if !q.basis().contains(alg, &alg.sub(&x, &nf)) {
            return Err("x − NF(x) is not in the ideal".into());
        }
        let y = random_ideal_element(&mut rng, q, 3);
        if !q.normal_form(&y).is_zero() {
            return Err("an ideal element has nonzero normal form".into());
        }
        if q.normal_form(&alg.add(&x, &y)) != nf {
            return Err("normal form depends on the coset representative".into());
        }
    }
    Ok(())
}

/// `(i, p) < (j, q)` implies `(i, p r) < (j, q r)` in both index orders.
pub fn check_module_order(alg: &PathAlgebra, max_len: usize) -> Result<(), String> {
    let quiver = alg.quiver();
    let paths = all_paths(quiver, max_len);
    let vs: Vec<VertexId> = quiver.vertices().chain(quiver.vertices()).collect();
    for order in [IndexOrder::Ascending, IndexOrder::Descending] {
        let frame = Frame::new(vs.clone()).with_index_order(order);
        let m = FreeModule::new(alg, &frame);
        let vs = &vs;
        let monomials: Vec<(usize, &Path)> = paths
            .iter()
            .flat_map(|p| (0..vs.len()).filter(move |&i| vs[i] == p.origin()).map(move |i| (i, p)))
            .collect();
        for &x in &monomials {
            for &y in &monomials {
                if m.cmp_monomial(x, y) != Ordering::Less {
                    continue;
                }
                for a in quiver.arrow_ids() {
                    let r = quiver.arrow_path(a);
                    if let (Some(xr), Some(yr)) = (x.1.mul(&r), y.1.mul(&r)) {
                        if m.cmp_monomial((x.0, &xr), (y.0, &yr)) != Ordering::Less {
                            return Err(format!("module order not compatible with {}", r.render(quiver)));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

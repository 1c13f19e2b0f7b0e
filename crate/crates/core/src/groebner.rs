//! Two-sided ideals of `kQ`: division, tip-reduction of generators and
//! overlap completion.

use std::cmp::Ordering;

use log::{debug, warn};

use crate::algebra::{Element, PathAlgebra};
use crate::error::{Error, Result};
use crate::quiver::Path;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    /// Overlaps whose tips are longer than `degree_cap` were left unprocessed.
    Truncated { degree_cap: usize, pending: usize },
}

/// A uniform, tip-reduced, monic generating set of an ideal, sorted by tip
/// (largest first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Element>,
    completeness: Completeness,
}

impl GroebnerBasis {
    /// Wraps elements already known to form a reduced basis.
    pub fn from_reduced(alg: &PathAlgebra, mut elements: Vec<Element>, completeness: Completeness) -> Self {
        sort_by_tip_desc(alg, &mut elements);
        GroebnerBasis { elements, completeness }
    }

    pub fn empty() -> Self {
        GroebnerBasis {
            elements: Vec::new(),
            completeness: Completeness::Complete,
        }
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn completeness(&self) -> &Completeness {
        &self.completeness
    }

    pub fn is_complete(&self) -> bool {
        self.completeness == Completeness::Complete
    }

    pub fn tips(&self) -> Vec<&Path> {
        self.elements.iter().map(|g| g.tip_path().expect("nonzero")).collect()
    }

    pub fn max_tip_len(&self) -> usize {
        self.tips().iter().map(|t| t.len()).max().unwrap_or(0)
    }

    /// The elements whose tip has exactly the given length.
    pub fn of_tip_len(&self, len: usize) -> Vec<Element> {
        self.elements
            .iter()
            .filter(|g| g.tip_path().is_some_and(|t| t.len() == len))
            .cloned()
            .collect()
    }

    pub fn normal_form(&self, alg: &PathAlgebra, x: &Element) -> Element {
        normal_form(alg, x, &self.elements)
    }

    pub fn contains(&self, alg: &PathAlgebra, x: &Element) -> bool {
        self.normal_form(alg, x).is_zero()
    }

    /// True when some tip occurs in `p` as a subpath.
    pub fn is_tip_path(&self, alg: &PathAlgebra, p: &Path) -> bool {
        self.tips().iter().any(|t| alg.quiver().divides(t, p).is_some())
    }
}

fn sort_by_tip_desc(alg: &PathAlgebra, xs: &mut [Element]) {
    xs.sort_by(|a, b| alg.cmp(b.tip_path().expect("nonzero"), a.tip_path().expect("nonzero")));
}

/// Smallest index `k` whose tip divides `p`, with the leftmost occurrence.
fn find_reducer(alg: &PathAlgebra, p: &Path, basis: &[Element], skip: Option<usize>) -> Option<(usize, Path, Path)> {
    basis.iter().enumerate().find_map(|(k, g)| {
        if Some(k) == skip {
            return None;
        }
        let t = g.tip_path()?;
        if t.len() > p.len() {
            return None;
        }
        alg.quiver().divides(t, p).map(|(l, r)| (k, l, r))
    })
}

/// Remainder of `x` under division by `basis`: always reduce the largest
/// reducible path, using the reducer with the smallest index and its
/// leftmost occurrence. No path of the result is divisible by a tip.
pub fn normal_form(alg: &PathAlgebra, x: &Element, basis: &[Element]) -> Element {
    normal_form_skipping(alg, x, basis, None)
}

fn normal_form_skipping(alg: &PathAlgebra, x: &Element, basis: &[Element], skip: Option<usize>) -> Element {
    let mut rem = x.clone();
    let mut i = 0;
    while i < rem.len() {
        let term = &rem.terms()[i];
        match find_reducer(alg, &term.path, basis, skip) {
            Some((k, l, r)) => {
                let g = &basis[k];
                let c = term.coeff.try_div(g.leading_coeff().expect("nonzero")).expect("nonzero tip");
                let lgr = alg.mul_paths(&l, g, &r);
                rem = alg.add_scaled(&rem, &-c, &lgr);
            }
            None => i += 1,
        }
    }
    rem
}

/// Reducer choice shared by the generator and module tip-reduction loops:
/// `i` may reduce `j` when its tip divides `j`'s, except that of two equal
/// tips only the later element is reduced.
fn may_reduce(i: usize, j: usize, ti: &Path, tj: &Path) -> bool {
    i != j && (ti != tj || i < j)
}

/// Splits into uniform pieces, then reduces tips against each other until no
/// tip divides another. Output elements are uniform and monic and generate
/// the same two-sided ideal.
pub fn tip_reduce_ideal_generators(alg: &PathAlgebra, xs: &[Element]) -> Result<Vec<Element>> {
    if xs.iter().any(Element::is_zero) {
        return Err(Error::ZeroElement("ideal generators must be nonzero"));
    }
    let mut items: Vec<Element> = Vec::new();
    for x in xs {
        for piece in alg.uniform_split(x) {
            items.push(alg.monic(&piece)?);
        }
    }
    let q = alg.quiver();
    loop {
        let target = (0..items.len()).find(|&j| {
            let tj = items[j].tip_path().unwrap();
            (0..items.len()).any(|i| {
                let ti = items[i].tip_path().unwrap();
                may_reduce(i, j, ti, tj) && q.divides(ti, tj).is_some()
            })
        });
        let Some(j) = target else { break };
        let mut x = items[j].clone();
        while let Some(tj) = x.tip_path().cloned() {
            let reducer = (0..items.len()).find_map(|i| {
                let ti = items[i].tip_path().unwrap();
                if !may_reduce(i, j, ti, &tj) {
                    return None;
                }
                q.divides(ti, &tj).map(|(l, r)| (i, l, r))
            });
            let Some((i, l, r)) = reducer else { break };
            let c = x.leading_coeff().unwrap().try_div(items[i].leading_coeff().unwrap())?;
            x = alg.add_scaled(&x, &-c, &alg.mul_paths(&l, &items[i], &r));
        }
        if x.is_zero() {
            debug!("generator {j} reduced to zero and was dropped");
            items.remove(j);
        } else {
            items[j] = alg.monic(&x)?;
        }
    }
    Ok(items)
}

#[derive(Clone, Debug)]
struct Pending {
    tip: Path,
    i: usize,
    j: usize,
    /// `g_i · right − left · g_j` for overlaps, `g_i − left · g_j · right`
    /// for inclusions.
    left: Path,
    right: Path,
    inclusion: bool,
}

fn pending_cmp(alg: &PathAlgebra, a: &Pending, b: &Pending) -> Ordering {
    alg.cmp(&a.tip, &b.tip)
        .then(a.inclusion.cmp(&b.inclusion))
        .then(a.i.cmp(&b.i))
        .then(a.j.cmp(&b.j))
        .then(a.left.len().cmp(&b.left.len()))
}

fn relations_for(alg: &PathAlgebra, basis: &[Element], k: usize, out: &mut Vec<Pending>) {
    let q = alg.quiver();
    let tk = basis[k].tip_path().unwrap().clone();
    for (m, g) in basis.iter().enumerate().take(k + 1) {
        let tm = g.tip_path().unwrap().clone();
        let mut pairs = vec![(k, m, &tk, &tm)];
        if m != k {
            pairs.push((m, k, &tm, &tk));
        }
        for (i, j, ti, tj) in pairs {
            for (r, s) in q.overlaps(ti, tj) {
                let tip = ti.mul(&r).expect("overlap composes");
                out.push(Pending {
                    tip,
                    i,
                    j,
                    left: s,
                    right: r,
                    inclusion: false,
                });
            }
        }
        if m != k {
            // Tips of new elements are irreducible, so only tip_k can sit inside tip_m.
            for (l, r) in q.divisions(&tk, &tm) {
                out.push(Pending {
                    tip: tm.clone(),
                    i: m,
                    j: k,
                    left: l,
                    right: r,
                    inclusion: true,
                });
            }
        }
    }
}

/// `2 · (longest input tip) + diameter(Q)`.
pub fn default_degree_cap(alg: &PathAlgebra, xs: &[Element]) -> usize {
    let longest = xs.iter().filter_map(|x| x.tip_path()).map(Path::len).max().unwrap_or(0);
    2 * longest + alg.quiver().diameter()
}

/// Noncommutative Buchberger completion. Every overlap and inclusion
/// relation whose tip has length at most `degree_cap` is reduced; nonzero
/// remainders are adjoined. The result is inter-reduced and monic.
pub fn buchberger_complete(alg: &PathAlgebra, xs: &[Element], degree_cap: Option<usize>) -> Result<GroebnerBasis> {
    if xs.is_empty() {
        return Ok(GroebnerBasis::empty());
    }
    let mut basis = tip_reduce_ideal_generators(alg, xs)?;
    let longest = basis.iter().map(|g| g.tip_path().unwrap().len()).max().unwrap_or(0);
    let cap = degree_cap.unwrap_or_else(|| default_degree_cap(alg, xs));
    if cap < longest {
        return Err(Error::Precondition(format!(
            "degree cap {cap} is below the longest generator tip ({longest})"
        )));
    }
    let mut pending = Vec::new();
    for k in 0..basis.len() {
        relations_for(alg, &basis, k, &mut pending);
    }
    loop {
        let next = pending
            .iter()
            .enumerate()
            .filter(|(_, p)| p.tip.len() <= cap)
            .min_by(|(_, a), (_, b)| pending_cmp(alg, a, b))
            .map(|(k, _)| k);
        let Some(k) = next else { break };
        let p = pending.swap_remove(k);
        let (gi, gj) = (&basis[p.i], &basis[p.j]);
        let o = if p.inclusion {
            alg.sub(gi, &alg.mul_paths(&p.left, gj, &p.right))
        } else {
            alg.sub(&alg.mul_path_right(gi, &p.right), &alg.mul_path_left(&p.left, gj))
        };
        let rem = normal_form(alg, &o, &basis);
        if rem.is_zero() {
            continue;
        }
        let g = alg.monic(&rem)?;
        debug!("completion adjoins an element with tip of length {}", g.tip_path().unwrap().len());
        basis.push(g);
        relations_for(alg, &basis, basis.len() - 1, &mut pending);
    }
    let completeness = if pending.is_empty() {
        Completeness::Complete
    } else {
        warn!("completion truncated at degree {cap} with {} pending relations", pending.len());
        Completeness::Truncated {
            degree_cap: cap,
            pending: pending.len(),
        }
    };
    let reduced = inter_reduce(alg, basis)?;
    let gb = GroebnerBasis::from_reduced(alg, reduced, completeness);
    if gb.is_complete() {
        for x in xs {
            if !gb.contains(alg, x) {
                return Err(Error::Integrity("a generator does not reduce to zero by the completed basis".into()));
            }
        }
    }
    Ok(gb)
}

/// Drops elements whose tip is a multiple of another tip, then replaces each
/// remaining element by its tip plus the normal form of its tail.
fn inter_reduce(alg: &PathAlgebra, basis: Vec<Element>) -> Result<Vec<Element>> {
    let q = alg.quiver();
    let tips: Vec<Path> = basis.iter().map(|g| g.tip_path().unwrap().clone()).collect();
    let mut kept: Vec<Element> = basis
        .iter()
        .enumerate()
        .filter(|(j, _)| {
            !(0..tips.len()).any(|i| may_reduce(i, *j, &tips[i], &tips[*j]) && q.divides(&tips[i], &tips[*j]).is_some())
        })
        .map(|(_, g)| g.clone())
        .collect();
    for k in 0..kept.len() {
        let g = normal_form_skipping(alg, &kept[k], &kept, Some(k));
        kept[k] = alg.monic(&g)?;
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_algebra, OrderChoice};
    use crate::quiver::Quiver;
    use crate::syntax::{parse_element, render_element};
    use crate::{AdmissibleOrder, Field};

    fn els(alg: &PathAlgebra, xs: &[&str]) -> Vec<Element> {
        xs.iter().map(|x| parse_element(alg, x).unwrap()).collect()
    }

    fn rendered(alg: &PathAlgebra, gb: &GroebnerBasis) -> Vec<String> {
        gb.elements().iter().map(|g| render_element(alg, g)).collect()
    }

    #[test]
    fn example_bases() {
        let one = example_algebra(OrderChoice::One);
        let gb = buchberger_complete(&one, &els(&one, &["a*b - c*d", "b*e"]), Some(10)).unwrap();
        assert!(gb.is_complete());
        assert_eq!(rendered(&one, &gb), ["c*d*e", "a*b - c*d", "b*e"]);

        let two = example_algebra(OrderChoice::Two);
        let gb = buchberger_complete(&two, &els(&two, &["a*b - c*d", "b*e"]), Some(10)).unwrap();
        assert!(gb.is_complete());
        assert_eq!(rendered(&two, &gb), ["c*d - a*b", "b*e"]);

        let gb = buchberger_complete(&one, &els(&one, &["a*b"]), None).unwrap();
        assert!(gb.is_complete());
        assert_eq!(rendered(&one, &gb), ["a*b"]);
    }

    #[test]
    fn normal_forms() {
        let alg = example_algebra(OrderChoice::One);
        let gb = buchberger_complete(&alg, &els(&alg, &["a*b - c*d", "b*e"]), None).unwrap();
        let nf = |s: &str| render_element(&alg, &gb.normal_form(&alg, &parse_element(&alg, s).unwrap()));
        assert_eq!(nf("a*b"), "c*d");
        assert_eq!(nf("c*d*e"), "0");
        assert_eq!(nf("a*b*e"), "0");
        assert_eq!(nf("v1"), "v1");
        assert_eq!(nf("2*a*b + d*e"), "2*c*d + d*e");
    }

    #[test]
    fn generator_tip_reduction() {
        let alg = example_algebra(OrderChoice::One);
        let xs = els(&alg, &["a*b - c*d", "b*e", "a*b"]);
        let ys = tip_reduce_ideal_generators(&alg, &xs).unwrap();
        let tips: Vec<String> = ys.iter().map(|y| y.tip_path().unwrap().render(alg.quiver())).collect();
        assert_eq!(tips, ["a*b", "b*e", "c*d"]);
        for x in &xs {
            assert!(normal_form(&alg, x, &ys).is_zero());
        }
        let gb = buchberger_complete(&alg, &xs, None).unwrap();
        for y in &ys {
            assert!(gb.normal_form(&alg, y).is_zero());
        }
        let single = els(&alg, &["a*b - c*d"]);
        assert_eq!(tip_reduce_ideal_generators(&alg, &single).unwrap(), single);
        assert!(tip_reduce_ideal_generators(&alg, &[Element::zero()]).is_err());
    }

    #[test]
    fn non_uniform_generators_are_split() {
        let alg = example_algebra(OrderChoice::One);
        let gb = buchberger_complete(&alg, &els(&alg, &["a*b - c*d + b*e"]), None).unwrap();
        assert_eq!(rendered(&alg, &gb), ["c*d*e", "a*b - c*d", "b*e"]);
    }

    #[test]
    fn truncation_is_flagged() {
        let q = Quiver::new(&["v"], &[("x", "v", "v"), ("y", "v", "v")]).unwrap();
        let order = AdmissibleOrder::declaration_order(&q);
        let alg = PathAlgebra::new(q, order, Field::Rationals);
        let gb = buchberger_complete(&alg, &els(&alg, &["x*y*x - y*x*y"]), Some(3)).unwrap();
        assert!(matches!(gb.completeness(), Completeness::Truncated { degree_cap: 3, .. }));
        assert!(buchberger_complete(&alg, &els(&alg, &["x*y*x - y*x*y"]), Some(2)).is_err());
    }

    #[test]
    fn commutator_is_already_complete() {
        let q = Quiver::new(&["v"], &[("x", "v", "v"), ("y", "v", "v")]).unwrap();
        let order = AdmissibleOrder::declaration_order(&q);
        let alg = PathAlgebra::new(q, order, Field::prime(7).unwrap());
        let gb = buchberger_complete(&alg, &els(&alg, &["x*y - y*x"]), None).unwrap();
        assert!(gb.is_complete());
        assert_eq!(rendered(&alg, &gb), ["x*y + 6*y*x"]);
    }
}

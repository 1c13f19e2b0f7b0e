//! Nontip paths (a basis of `Λ = kQ/I`) and the right Gröbner basis `rtG`.

use std::collections::HashMap;

use crate::algebra::{Element, PathAlgebra};
use crate::groebner::GroebnerBasis;
use crate::quiver::{Path, VertexId};

#[derive(Clone, Debug)]
pub struct Nontips {
    paths: Vec<Path>,
    finite: bool,
    index: HashMap<Path, usize>,
}

impl Nontips {
    /// All nontips found, by increasing length (then in discovery order).
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// True when the enumeration exhausted every nontip.
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn longest(&self) -> usize {
        self.paths.iter().map(Path::len).max().unwrap_or(0)
    }

    pub fn position(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.index.contains_key(p)
    }

    pub fn starting_at(&self, v: VertexId) -> impl Iterator<Item = &Path> + '_ {
        self.paths.iter().filter(move |p| p.origin() == v)
    }
}

/// Whether some tip ends exactly at the end of `p`.
fn ends_in_tip(alg: &PathAlgebra, tips: &[&Path], p: &Path) -> bool {
    tips.iter().any(|t| alg.quiver().right_divides(t, p).is_some())
}

fn extend(alg: &PathAlgebra, tips: &[&Path], level: &[Path]) -> Vec<Path> {
    let q = alg.quiver();
    let mut next = Vec::new();
    for p in level {
        for &a in q.outgoing(p.terminus()) {
            let np = p.push(a, q.arrow(a).target);
            if !ends_in_tip(alg, tips, &np) && !ends_in_tip(alg, tips, &Path::vertex(np.terminus())) {
                next.push(np);
            }
        }
    }
    next
}

/// Whether some nontip of length `window` can be extended forever. A path
/// of length at least `window` is a nontip exactly when each step keeps the
/// last `window` arrows a nontip and creates no tip, so this is cycle
/// detection on those suffixes.
fn has_cycle(alg: &PathAlgebra, tips: &[&Path], states: &[Path], window: usize) -> bool {
    let index: HashMap<&Path, usize> = states.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let succ: Vec<Vec<usize>> = states
        .iter()
        .map(|s| {
            extend(alg, tips, std::slice::from_ref(s))
                .iter()
                .filter_map(|np| index.get(&alg.quiver().segment(np, np.len() - window, np.len())).copied())
                .collect()
        })
        .collect();
    // 0 unvisited, 1 on stack, 2 done
    let mut mark = vec![0u8; states.len()];
    for root in 0..states.len() {
        if mark[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        mark[root] = 1;
        while let Some(&mut (v, ref mut k)) = stack.last_mut() {
            if *k < succ[v].len() {
                let w = succ[v][*k];
                *k += 1;
                match mark[w] {
                    1 => return true,
                    0 => {
                        mark[w] = 1;
                        stack.push((w, 0));
                    }
                    _ => {}
                }
            } else {
                mark[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

/// Breadth-first search over paths, extending by one arrow and pruning any
/// path that contains a tip.
///
/// With a `length_cap`, every nontip up to that length is returned and the
/// set counts as finite only if the search ran dry first. Without one,
/// infinite sets are detected up front and only the nontips of length at
/// most the longest tip minus one are returned.
pub fn enumerate_nontips(alg: &PathAlgebra, gb: &GroebnerBasis, length_cap: Option<usize>) -> Nontips {
    let q = alg.quiver();
    let tips = gb.tips();
    let window = tips.iter().map(|t| t.len()).max().unwrap_or(1).max(1) - 1;
    let mut paths: Vec<Path> = Vec::new();
    let mut level: Vec<Path> = q
        .vertices()
        .map(Path::vertex)
        .filter(|p| !ends_in_tip(alg, &tips, p))
        .collect();
    let mut len = 0;
    let finite = loop {
        if level.is_empty() {
            break true;
        }
        if length_cap.is_some_and(|cap| len > cap) {
            break false;
        }
        if length_cap.is_none() && len == window && has_cycle(alg, &tips, &level, window) {
            paths.extend(level);
            break false;
        }
        paths.extend(level.iter().cloned());
        level = extend(alg, &tips, &level);
        len += 1;
    };
    let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    Nontips { paths, finite, index }
}

/// An element `p · g` of the right Gröbner basis: `p` a nontip and the tip
/// of `g` the only tip occurring in `p · tip(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RtgElement {
    pub prefix: Path,
    pub relation: usize,
    pub element: Element,
}

impl RtgElement {
    pub fn tip(&self) -> &Path {
        self.element.tip_path().expect("nonzero")
    }
}

#[derive(Clone, Debug)]
pub struct RightGroebner {
    pub elements: Vec<RtgElement>,
    pub finite: bool,
}

impl RightGroebner {
    pub fn starting_at(&self, v: VertexId) -> impl Iterator<Item = &RtgElement> + '_ {
        self.elements.iter().filter(move |e| e.prefix.origin() == v)
    }

    pub fn max_tip_len(&self) -> usize {
        self.elements.iter().map(|e| e.tip().len()).max().unwrap_or(0)
    }
}

/// True when the only tip occurrence in `q` ends at its last position.
pub fn tip_only_at_end(alg: &PathAlgebra, tips: &[&Path], q: &Path) -> bool {
    let quiver = alg.quiver();
    let mut at_end = 0;
    for t in tips {
        for k in quiver.occurrences(t, q) {
            if k + t.len() != q.len() {
                return false;
            }
            at_end += 1;
        }
    }
    at_end == 1
}

/// `rtG` from an enumerated nontip set. When the nontips are infinite the
/// result is flagged incomplete and consumers must refuse it; a basis with
/// no elements yields the empty (finite) set regardless.
pub fn compute_rtg(alg: &PathAlgebra, gb: &GroebnerBasis, nontips: &Nontips) -> RightGroebner {
    let tips = gb.tips();
    let mut elements = Vec::new();
    for p in nontips.paths() {
        for (k, g) in gb.elements().iter().enumerate() {
            let Some(q) = p.mul(tips[k]) else { continue };
            if tip_only_at_end(alg, &tips, &q) {
                elements.push(RtgElement {
                    prefix: p.clone(),
                    relation: k,
                    element: alg.mul_path_left(p, g),
                });
            }
        }
    }
    elements.sort_by(|a, b| alg.cmp(b.tip(), a.tip()));
    RightGroebner {
        elements,
        finite: nontips.is_finite() || gb.is_empty(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_algebra, OrderChoice};
    use crate::groebner::buchberger_complete;
    use crate::quiver::Quiver;
    use crate::syntax::{parse_element, render_element};
    use crate::{AdmissibleOrder, Field};

    fn basis(alg: &PathAlgebra, xs: &[&str]) -> GroebnerBasis {
        let xs: Vec<Element> = xs.iter().map(|x| parse_element(alg, x).unwrap()).collect();
        buchberger_complete(alg, &xs, None).unwrap()
    }

    fn names(alg: &PathAlgebra, ps: &[Path]) -> Vec<String> {
        let mut v: Vec<String> = ps.iter().map(|p| p.render(alg.quiver())).collect();
        v.sort();
        v
    }

    #[test]
    fn example_nontips() {
        let alg = example_algebra(OrderChoice::One);
        let gb = basis(&alg, &["a*b - c*d", "b*e"]);
        let nt = enumerate_nontips(&alg, &gb, None);
        assert!(nt.is_finite());
        assert_eq!(nt.len(), 12);
        assert_eq!(
            names(&alg, nt.paths()),
            ["a", "b", "c", "c*d", "d", "d*e", "e", "v1", "v2", "v3", "v4", "v5"]
        );
    }

    #[test]
    fn arrows_as_tips_leave_vertices() {
        let alg = example_algebra(OrderChoice::One);
        let gb = basis(&alg, &["a", "b", "c", "d", "e"]);
        let nt = enumerate_nontips(&alg, &gb, None);
        assert!(nt.is_finite());
        assert_eq!(names(&alg, nt.paths()), ["v1", "v2", "v3", "v4", "v5"]);
    }

    #[test]
    fn cycles_without_relations_are_infinite() {
        let q = Quiver::new(&["u", "w"], &[("x", "u", "w"), ("y", "w", "u")]).unwrap();
        let order = AdmissibleOrder::declaration_order(&q);
        let alg = PathAlgebra::new(q, order, Field::Rationals);
        let nt = enumerate_nontips(&alg, &GroebnerBasis::empty(), None);
        assert!(!nt.is_finite());
        let capped = enumerate_nontips(&alg, &GroebnerBasis::empty(), Some(5));
        assert!(!capped.is_finite());
        assert_eq!(capped.longest(), 5);
        let gb = basis(&alg, &["x*y*x"]);
        let nt = enumerate_nontips(&alg, &gb, None);
        assert!(nt.is_finite());
        assert_eq!(nt.longest(), 3);
        let gb = basis(&alg, &["x*y*x*y"]);
        assert!(enumerate_nontips(&alg, &gb, None).is_finite());
    }

    #[test]
    fn loops_with_commutator_are_infinite() {
        let q = Quiver::new(&["v"], &[("x", "v", "v"), ("y", "v", "v")]).unwrap();
        let order = AdmissibleOrder::declaration_order(&q);
        let alg = PathAlgebra::new(q, order, Field::Rationals);
        let gb = basis(&alg, &["x*y - y*x"]);
        assert!(!enumerate_nontips(&alg, &gb, None).is_finite());
        let gb = basis(&alg, &["x*y - y*x", "x*x", "y*y"]);
        let nt = enumerate_nontips(&alg, &gb, None);
        assert!(nt.is_finite());
        assert_eq!(nt.len(), 4);
    }

    #[test]
    fn right_groebner_examples() {
        let one = example_algebra(OrderChoice::One);
        let gb = basis(&one, &["a*b - c*d", "b*e"]);
        let rtg = compute_rtg(&one, &gb, &enumerate_nontips(&one, &gb, None));
        assert!(rtg.finite);
        let got: Vec<String> = rtg.elements.iter().map(|e| render_element(&one, &e.element)).collect();
        assert_eq!(got, ["c*d*e", "a*b - c*d", "b*e"]);

        let two = example_algebra(OrderChoice::Two);
        let gb = basis(&two, &["a*b - c*d", "b*e"]);
        let nt = enumerate_nontips(&two, &gb, None);
        let rtg = compute_rtg(&two, &gb, &nt);
        let got: Vec<String> = rtg.elements.iter().map(|e| render_element(&two, &e.element)).collect();
        assert_eq!(got, ["a*b*e", "c*d - a*b", "b*e"]);
        assert!(rtg.elements.len() <= nt.len() * gb.len());

        let gb = basis(&one, &["a*b"]);
        let rtg = compute_rtg(&one, &gb, &enumerate_nontips(&one, &gb, None));
        let got: Vec<String> = rtg.elements.iter().map(|e| render_element(&one, &e.element)).collect();
        assert_eq!(got, ["a*b"]);

        let empty = GroebnerBasis::empty();
        let rtg = compute_rtg(&one, &empty, &enumerate_nontips(&one, &empty, None));
        assert!(rtg.elements.is_empty() && rtg.finite);
    }
}

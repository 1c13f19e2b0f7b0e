//! Elements of the path algebra `kQ`: sparse linear combinations of paths.

use std::cmp::Ordering;

use crate::coeff::{Field, Scalar};
use crate::error::{Error, Result};
use crate::order::AdmissibleOrder;
use crate::quiver::{Path, Quiver, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub path: Path,
    pub coeff: Scalar,
}

/// Terms are kept sorted by the ambient admissible order, largest first,
/// with no zero coefficients. The tip is therefore `terms[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: Vec<Term>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn tip(&self) -> Result<&Term> {
        self.terms.first().ok_or(Error::ZeroElement("tip of the zero element"))
    }

    pub fn tip_path(&self) -> Option<&Path> {
        self.terms.first().map(|t| &t.path)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// `(origin, terminus)` when every term shares both endpoints.
    pub fn uniform_endpoints(&self) -> Option<(VertexId, VertexId)> {
        let first = self.terms.first()?;
        let ends = (first.path.origin(), first.path.terminus());
        self.terms
            .iter()
            .all(|t| (t.path.origin(), t.path.terminus()) == ends)
            .then_some(ends)
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform_endpoints().is_some()
    }

    /// Common terminus of all terms, if any.
    pub fn right_vertex(&self) -> Option<VertexId> {
        let v = self.terms.first()?.path.terminus();
        self.terms.iter().all(|t| t.path.terminus() == v).then_some(v)
    }

    pub fn left_vertex(&self) -> Option<VertexId> {
        let v = self.terms.first()?.path.origin();
        self.terms.iter().all(|t| t.path.origin() == v).then_some(v)
    }

    /// Every term has exactly this length.
    pub fn is_homogeneous_of(&self, len: usize) -> bool {
        self.terms.iter().all(|t| t.path.len() == len)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|t| t.path.len()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, p: &Path) -> Option<&Scalar> {
        self.terms.iter().find(|t| &t.path == p).map(|t| &t.coeff)
    }
}

/// The ambient context: quiver, admissible order and coefficient field.
/// All element arithmetic goes through here so that term order is always
/// the one fixed for the computation.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    quiver: Quiver,
    order: AdmissibleOrder,
    field: Field,
}

impl PathAlgebra {
    pub fn new(quiver: Quiver, order: AdmissibleOrder, field: Field) -> Self {
        PathAlgebra { quiver, order, field }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn order(&self) -> &AdmissibleOrder {
        &self.order
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cmp(&self, p: &Path, q: &Path) -> Ordering {
        self.order.compare(p, q)
    }

    pub fn monomial(&self, path: Path, coeff: Scalar) -> Element {
        if coeff.is_zero() {
            return Element::zero();
        }
        Element {
            terms: vec![Term { path, coeff }],
        }
    }

    pub fn path(&self, path: Path) -> Element {
        self.monomial(path, self.field.one())
    }

    pub fn vertex(&self, v: VertexId) -> Element {
        self.path(Path::vertex(v))
    }

    /// Builds an element from arbitrary terms: sorts, merges repeats, drops zeros.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Path, Scalar)>) -> Result<Element> {
        let mut raw: Vec<Term> = Vec::new();
        for (path, coeff) in terms {
            if coeff.field() != self.field {
                return Err(Error::FieldMismatch(self.field, coeff.field()));
            }
            if !self.quiver.contains(&path) {
                return Err(Error::InvalidPath(format!("{path:?} is not a path of this quiver")));
            }
            raw.push(Term { path, coeff });
        }
        Ok(self.collect_terms(raw))
    }

    /// Parses a path written as `a*b*c` or a vertex name.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let names: Vec<&str> = text.split('*').map(str::trim).collect();
        self.quiver.path_from_names(&names)
    }

    fn collect_terms(&self, mut raw: Vec<Term>) -> Element {
        raw.sort_by(|a, b| self.order.compare(&b.path, &a.path));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.path == t.path => last.coeff = &last.coeff + &t.coeff,
                _ => {
                    if let Some(last) = terms.last() {
                        if last.coeff.is_zero() {
                            terms.pop();
                        }
                    }
                    terms.push(t)
                }
            }
        }
        if terms.last().is_some_and(|t| t.coeff.is_zero()) {
            terms.pop();
        }
        Element { terms }
    }

    /// `x + c·y`, by merging the two sorted term lists.
    pub fn add_scaled(&self, x: &Element, c: &Scalar, y: &Element) -> Element {
        if c.is_zero() || y.is_zero() {
            return x.clone();
        }
        let mut out = Vec::with_capacity(x.terms.len() + y.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < x.terms.len() && j < y.terms.len() {
            let (a, b) = (&x.terms[i], &y.terms[j]);
            match self.order.compare(&a.path, &b.path) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        path: b.path.clone(),
                        coeff: c * &b.coeff,
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = &a.coeff + &(c * &b.coeff);
                    if !coeff.is_zero() {
                        out.push(Term {
                            path: a.path.clone(),
                            coeff,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(x.terms[i..].iter().cloned());
        out.extend(y.terms[j..].iter().map(|t| Term {
            path: t.path.clone(),
            coeff: c * &t.coeff,
        }));
        Element { terms: out }
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        self.add_scaled(x, &self.field.one(), y)
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        self.add_scaled(x, &-self.field.one(), y)
    }

    pub fn neg(&self, x: &Element) -> Element {
        self.scale(x, &-self.field.one())
    }

    pub fn scale(&self, x: &Element, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: x
                .terms
                .iter()
                .map(|t| Term {
                    path: t.path.clone(),
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    /// Scales so the tip coefficient is 1.
    pub fn monic(&self, x: &Element) -> Result<Element> {
        let lc = x.tip()?.coeff.clone();
        Ok(self.scale(x, &lc.try_inverse()?))
    }

    /// `l · x · r` for paths `l`, `r`. Multiplying by paths preserves the
    /// relative order of the surviving terms, so no re-sort is needed.
    pub fn mul_paths(&self, l: &Path, x: &Element, r: &Path) -> Element {
        let terms = x
            .terms
            .iter()
            .filter_map(|t| {
                let p = l.mul(&t.path)?.mul(r)?;
                Some(Term {
                    path: p,
                    coeff: t.coeff.clone(),
                })
            })
            .collect();
        Element { terms }
    }

    pub fn mul_path_right(&self, x: &Element, r: &Path) -> Element {
        let terms = x
            .terms
            .iter()
            .filter_map(|t| {
                Some(Term {
                    path: t.path.mul(r)?,
                    coeff: t.coeff.clone(),
                })
            })
            .collect();
        Element { terms }
    }

    pub fn mul_path_left(&self, l: &Path, x: &Element) -> Element {
        let terms = x
            .terms
            .iter()
            .filter_map(|t| {
                Some(Term {
                    path: l.mul(&t.path)?,
                    coeff: t.coeff.clone(),
                })
            })
            .collect();
        Element { terms }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut raw = Vec::with_capacity(x.terms.len() * y.terms.len());
        for a in &x.terms {
            for b in &y.terms {
                if let Some(path) = a.path.mul(&b.path) {
                    raw.push(Term {
                        path,
                        coeff: &a.coeff * &b.coeff,
                    });
                }
            }
        }
        self.collect_terms(raw)
    }

    /// Splits `x` into its pieces `u·x·v` over vertex pairs, in tip order.
    pub fn uniform_split(&self, x: &Element) -> Vec<Element> {
        let mut pieces: Vec<((VertexId, VertexId), Vec<Term>)> = Vec::new();
        for t in &x.terms {
            let key = (t.path.origin(), t.path.terminus());
            match pieces.iter_mut().find(|(k, _)| *k == key) {
                Some((_, ts)) => ts.push(t.clone()),
                None => pieces.push((key, vec![t.clone()])),
            }
        }
        pieces.into_iter().map(|(_, terms)| Element { terms }).collect()
    }

    pub fn is_sorted(&self, x: &Element) -> bool {
        x.terms
            .windows(2)
            .all(|w| self.order.compare(&w[0].path, &w[1].path) == Ordering::Greater)
            && x.terms.iter().all(|t| !t.coeff.is_zero())
    }

    /// The sub-sum of terms whose paths have the given length.
    pub fn homogeneous_part(&self, x: &Element, len: usize) -> Element {
        Element {
            terms: x.terms.iter().filter(|t| t.path.len() == len).cloned().collect(),
        }
    }
}

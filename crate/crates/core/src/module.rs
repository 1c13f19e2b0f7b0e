//! Free right modules `⨿ v_i R` over a finite frame of vertices.

use std::cmp::Ordering;

use log::debug;

use crate::algebra::{Element, PathAlgebra};
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::quiver::{Path, VertexId};
use crate::syntax::render_element;

/// Which coordinate wins a tie between equal tip paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IndexOrder {
    /// Larger index is larger.
    #[default]
    Ascending,
    /// Smaller index is larger.
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    vertices: Vec<VertexId>,
    index_order: IndexOrder,
}

impl Frame {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        Frame {
            vertices,
            index_order: IndexOrder::Ascending,
        }
    }

    pub fn with_index_order(mut self, order: IndexOrder) -> Self {
        self.index_order = order;
        self
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> VertexId {
        self.vertices[i]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_order(&self) -> IndexOrder {
        self.index_order
    }

    fn cmp_index(&self, i: usize, j: usize) -> Ordering {
        match self.index_order {
            IndexOrder::Ascending => i.cmp(&j),
            IndexOrder::Descending => j.cmp(&i),
        }
    }
}

/// Sparse vector of path-algebra elements, by ascending coordinate, with no
/// zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModuleVector {
    entries: Vec<(usize, Element)>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector { entries: Vec::new() }
    }

    /// `ε_i · x`.
    pub fn unit(coord: usize, x: Element) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        ModuleVector {
            entries: vec![(coord, x)],
        }
    }

    /// Builds from `(coordinate, entry)` pairs; repeated coordinates are summed.
    pub fn from_entries(alg: &PathAlgebra, entries: impl IntoIterator<Item = (usize, Element)>) -> Self {
        let mut v = Self::zero();
        for (i, x) in entries {
            v = v.add(alg, &Self::unit(i, x));
        }
        v
    }

    /// Dense form: entry `k` goes to coordinate `k`.
    pub fn from_dense(alg: &PathAlgebra, entries: Vec<Element>) -> Self {
        Self::from_entries(alg, entries.into_iter().enumerate())
    }

    pub fn entries(&self) -> &[(usize, Element)] {
        &self.entries
    }

    pub fn get(&self, coord: usize) -> Option<&Element> {
        self.entries.iter().find(|(i, _)| *i == coord).map(|(_, x)| x)
    }

    /// Entry at `coord`, zero when absent.
    pub fn entry(&self, coord: usize) -> Element {
        self.get(coord).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The common terminus of every path in every coordinate.
    pub fn right_vertex(&self) -> Option<VertexId> {
        let v = self.entries.first()?.1.right_vertex()?;
        self.entries
            .iter()
            .all(|(_, x)| x.right_vertex() == Some(v))
            .then_some(v)
    }

    pub fn is_right_uniform(&self) -> bool {
        self.right_vertex().is_some()
    }

    pub fn max_len(&self) -> usize {
        self.entries.iter().map(|(_, x)| x.max_len()).max().unwrap_or(0)
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, alg: &PathAlgebra, c: &Scalar, other: &ModuleVector) -> ModuleVector {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let a = self.entries.get(i);
            let b = other.entries.get(j);
            match (a, b) {
                (Some((ia, xa)), Some((ib, _))) if ia < ib => {
                    out.push((*ia, xa.clone()));
                    i += 1;
                }
                (Some((ia, xa)), Some((ib, xb))) if ia == ib => {
                    let s = alg.add_scaled(xa, c, xb);
                    if !s.is_zero() {
                        out.push((*ia, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ia, xa)), None) => {
                    out.push((*ia, xa.clone()));
                    i += 1;
                }
                (_, Some((ib, xb))) => {
                    out.push((*ib, alg.scale(xb, c)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        ModuleVector { entries: out }
    }

    pub fn add(&self, alg: &PathAlgebra, other: &ModuleVector) -> ModuleVector {
        self.add_scaled(alg, &alg.field().one(), other)
    }

    pub fn sub(&self, alg: &PathAlgebra, other: &ModuleVector) -> ModuleVector {
        self.add_scaled(alg, &-alg.field().one(), other)
    }

    pub fn scale(&self, alg: &PathAlgebra, c: &Scalar) -> ModuleVector {
        if c.is_zero() {
            return Self::zero();
        }
        ModuleVector {
            entries: self.entries.iter().map(|(i, x)| (*i, alg.scale(x, c))).collect(),
        }
    }

    pub fn neg(&self, alg: &PathAlgebra) -> ModuleVector {
        self.scale(alg, &-alg.field().one())
    }

    /// Coordinatewise right multiplication by a path.
    pub fn mul_path(&self, alg: &PathAlgebra, p: &Path) -> ModuleVector {
        self.filter_map_entries(|x| alg.mul_path_right(x, p))
    }

    /// Coordinatewise right multiplication by an element.
    pub fn right_action(&self, alg: &PathAlgebra, y: &Element) -> ModuleVector {
        self.filter_map_entries(|x| alg.mul(x, y))
    }

    /// Applies `f` to every entry, dropping entries that become zero.
    pub fn filter_map_entries(&self, mut f: impl FnMut(&Element) -> Element) -> ModuleVector {
        ModuleVector {
            entries: self
                .entries
                .iter()
                .filter_map(|(i, x)| {
                    let y = f(x);
                    (!y.is_zero()).then_some((*i, y))
                })
                .collect(),
        }
    }

    pub fn render(&self, alg: &PathAlgebra, len: usize) -> String {
        let parts: Vec<String> = (0..len).map(|i| render_element(alg, &self.entry(i))).collect();
        format!("({})", parts.join(", "))
    }
}

/// `ε_coord · path` with its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleTip {
    pub coord: usize,
    pub path: Path,
    pub coeff: Scalar,
}

impl ModuleTip {
    pub fn same_monomial(&self, other: &ModuleTip) -> bool {
        self.coord == other.coord && self.path == other.path
    }
}

/// A vector expressed through a generating list: `Σ_l gens[l] · quotients[l]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Element>,
    pub remainder: ModuleVector,
}

/// Output of a tracked reduction: the reduced vector and how it is written
/// in terms of the inputs (coordinate `k` refers to input `k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tracked {
    pub vector: ModuleVector,
    pub combination: ModuleVector,
}

/// The module operations that depend on the frame's monomial order.
#[derive(Clone, Copy, Debug)]
pub struct FreeModule<'a> {
    pub alg: &'a PathAlgebra,
    pub frame: &'a Frame,
}

impl<'a> FreeModule<'a> {
    pub fn new(alg: &'a PathAlgebra, frame: &'a Frame) -> Self {
        FreeModule { alg, frame }
    }

    /// Path first; equal paths are ordered by coordinate.
    pub fn cmp_monomial(&self, (i, p): (usize, &Path), (j, q): (usize, &Path)) -> Ordering {
        self.alg.cmp(p, q).then_with(|| self.frame.cmp_index(i, j))
    }

    pub fn tip(&self, v: &ModuleVector) -> Option<ModuleTip> {
        let mut best: Option<(usize, &crate::algebra::Term)> = None;
        for (i, x) in v.entries() {
            let t = &x.terms()[0];
            best = match best {
                Some((j, b)) if self.cmp_monomial((j, &b.path), (*i, &t.path)) != Ordering::Less => Some((j, b)),
                _ => Some((*i, t)),
            };
        }
        best.map(|(coord, t)| ModuleTip {
            coord,
            path: t.path.clone(),
            coeff: t.coeff.clone(),
        })
    }

    /// `s` with `b = a · s` when `a` left-divides `b`.
    pub fn left_divides(&self, a: &ModuleTip, b: &ModuleTip) -> Option<Path> {
        if a.coord != b.coord {
            return None;
        }
        self.alg.quiver().left_divides(&a.path, &b.path)
    }

    /// Every coordinate index is in range and every entry starts at its
    /// coordinate's vertex.
    pub fn validate(&self, v: &ModuleVector) -> Result<()> {
        for (i, x) in v.entries() {
            if *i >= self.frame.len() {
                return Err(Error::Integrity(format!("coordinate {i} outside a frame of size {}", self.frame.len())));
            }
            if x.left_vertex() != Some(self.frame.vertex(*i)) {
                return Err(Error::Integrity(format!("entry at coordinate {i} does not start at its vertex")));
            }
        }
        Ok(())
    }

    pub fn is_right_tip_reduced(&self, xs: &[ModuleVector]) -> bool {
        let tips: Vec<Option<ModuleTip>> = xs.iter().map(|x| self.tip(x)).collect();
        if tips.iter().any(Option::is_none) {
            return false;
        }
        let tips: Vec<ModuleTip> = tips.into_iter().map(Option::unwrap).collect();
        (0..tips.len()).all(|j| (0..tips.len()).all(|i| i == j || self.left_divides(&tips[i], &tips[j]).is_none()))
    }

    pub fn right_tip_reduce(&self, xs: &[ModuleVector]) -> Result<Vec<ModuleVector>> {
        Ok(self.right_tip_reduce_tracked(xs)?.into_iter().map(|t| t.vector).collect())
    }

    /// While some tip left-divides another, replace the divided element
    /// `x_j` by `x_j − c · x_i · s`. Scans for the smallest such `j`, reduces
    /// its tip until irreducible, drops it if it became zero, and repeats.
    /// Of two equal tips only the later element is reduced.
    pub fn right_tip_reduce_tracked(&self, xs: &[ModuleVector]) -> Result<Vec<Tracked>> {
        if xs.iter().any(ModuleVector::is_zero) {
            return Err(Error::ZeroElement("right tip-reduction input"));
        }
        let mut items: Vec<Tracked> = xs
            .iter()
            .enumerate()
            .map(|(k, x)| Tracked {
                vector: x.clone(),
                combination: ModuleVector::unit(k, self.alg.vertex(x.right_vertex().unwrap_or_else(|| self.frame.vertex(0)))),
            })
            .collect();
        let mut tips: Vec<ModuleTip> = items.iter().map(|t| self.tip(&t.vector).unwrap()).collect();
        let reducer_for = |tips: &[ModuleTip], j: usize, tj: &ModuleTip| -> Option<(usize, Path)> {
            (0..tips.len()).find_map(|i| {
                if i == j || (tips[i].same_monomial(tj) && i > j) {
                    return None;
                }
                self.left_divides(&tips[i], tj).map(|s| (i, s))
            })
        };
        loop {
            let target = (0..items.len()).find(|&j| reducer_for(&tips, j, &tips[j]).is_some());
            let Some(j) = target else { break };
            let mut cur = items[j].clone();
            let mut tj = tips[j].clone();
            while let Some((i, s)) = reducer_for(&tips, j, &tj) {
                let c = tj.coeff.try_div(&tips[i].coeff)?;
                cur.vector = cur.vector.add_scaled(self.alg, &-&c, &items[i].vector.mul_path(self.alg, &s));
                cur.combination = cur
                    .combination
                    .add_scaled(self.alg, &-c, &items[i].combination.mul_path(self.alg, &s));
                match self.tip(&cur.vector) {
                    Some(t) => tj = t,
                    None => break,
                }
            }
            if cur.vector.is_zero() {
                debug!("right tip-reduction dropped a zero element");
                items.remove(j);
                tips.remove(j);
            } else {
                items[j] = cur;
                tips[j] = tj;
            }
        }
        Ok(items)
    }

    /// Division by a right tip-reduced list: repeatedly cancel the largest
    /// monomial of the remainder that some divisor tip left-divides, using
    /// the divisor with the smallest index.
    pub fn divide(&self, x: &ModuleVector, divisors: &[ModuleVector]) -> Division {
        let tips: Vec<ModuleTip> = divisors.iter().map(|d| self.tip(d).expect("nonzero divisor")).collect();
        let mut quotients = vec![Element::zero(); divisors.len()];
        let mut rem = x.clone();
        loop {
            let mut best: Option<(usize, Path, Scalar, usize, Path)> = None;
            for (coord, entry) in rem.entries() {
                let hit = entry.terms().iter().find_map(|t| {
                    tips.iter().enumerate().find_map(|(l, d)| {
                        if d.coord != *coord {
                            return None;
                        }
                        self.alg
                            .quiver()
                            .left_divides(&d.path, &t.path)
                            .map(|s| (l, s, t.path.clone(), t.coeff.clone()))
                    })
                });
                if let Some((l, s, path, coeff)) = hit {
                    let better = match &best {
                        None => true,
                        Some((bc, bp, ..)) => self.cmp_monomial((*coord, &path), (*bc, bp)) == Ordering::Greater,
                    };
                    if better {
                        best = Some((*coord, path, coeff, l, s));
                    }
                }
            }
            let Some((_, _, coeff, l, s)) = best else { break };
            let c = coeff.try_div(&tips[l].coeff).expect("nonzero tip");
            rem = rem.add_scaled(self.alg, &-&c, &divisors[l].mul_path(self.alg, &s));
            quotients[l] = self.alg.add(&quotients[l], &self.alg.monomial(s, c));
        }
        Division {
            quotients,
            remainder: rem,
        }
    }

    /// `Σ gens[l] · coeffs[l]`, reading coordinate `l` of `coeffs`.
    pub fn combine(&self, gens: &[ModuleVector], coeffs: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (l, c) in coeffs.entries() {
            out = out.add(self.alg, &gens[*l].right_action(self.alg, c));
        }
        out
    }

    /// Divides `x` by `h ++ h_prime` and keeps the `h` part. The remainder
    /// must vanish.
    pub fn first_part(&self, x: &ModuleVector, h: &[ModuleVector], h_prime: &[ModuleVector]) -> Result<FirstPart> {
        let all: Vec<ModuleVector> = h.iter().chain(h_prime).cloned().collect();
        let div = self.divide(x, &all);
        if !div.remainder.is_zero() {
            return Err(Error::Integrity("element not in span".into()));
        }
        let mut quotients = div.quotients;
        let primed = quotients.split_off(h.len());
        let coefficients = ModuleVector::from_dense(self.alg, quotients);
        let part = self.combine(h, &coefficients);
        Ok(FirstPart {
            part,
            coefficients,
            primed_coefficients: ModuleVector::from_dense(self.alg, primed),
        })
    }

    /// Column `j` holds the coefficients writing `h[j]` over `f`.
    pub fn create_matrix(&self, h: &[ModuleVector], f: &[ModuleVector]) -> Result<Vec<ModuleVector>> {
        h.iter()
            .map(|hj| {
                let div = self.divide(hj, f);
                if !div.remainder.is_zero() {
                    return Err(Error::Integrity("element not in span".into()));
                }
                Ok(ModuleVector::from_dense(self.alg, div.quotients))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstPart {
    /// `Σ h_l · r_l`.
    pub part: ModuleVector,
    /// `r_l` at coordinate `l`.
    pub coefficients: ModuleVector,
    pub primed_coefficients: ModuleVector,
}

//! Finite quivers, paths and the path arithmetic used by every other module.

use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    names: HashMap<String, Symbol>,
    outgoing: Vec<Vec<ArrowId>>,
}

/// What a declared identifier refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Vertex(VertexId),
    Arrow(ArrowId),
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, target)` arrow triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let mut names = HashMap::new();
        let mut vertex_names = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            let v = v.as_ref();
            check_identifier(v)?;
            if names.insert(v.to_string(), Symbol::Vertex(VertexId(i as u32))).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate identifier `{v}`")));
            }
            vertex_names.push(v.to_string());
        }
        let mut arrow_list = Vec::with_capacity(arrows.len());
        let mut outgoing = vec![Vec::new(); vertices.len()];
        for (i, (name, s, t)) in arrows.iter().enumerate() {
            let name = name.as_ref();
            check_identifier(name)?;
            let lookup = |v: &str| match names.get(v) {
                Some(Symbol::Vertex(id)) => Ok(*id),
                _ => Err(Error::InvalidQuiver(format!("arrow `{name}` uses undeclared vertex `{v}`"))),
            };
            let source = lookup(s.as_ref())?;
            let target = lookup(t.as_ref())?;
            if names.insert(name.to_string(), Symbol::Arrow(ArrowId(i as u32))).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate identifier `{name}`")));
            }
            outgoing[source.0 as usize].push(ArrowId(i as u32));
            arrow_list.push(Arrow {
                name: name.to_string(),
                source,
                target,
            });
        }
        Ok(Quiver {
            vertices: vertex_names,
            arrows: arrow_list,
            names,
            outgoing,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0 as usize]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0 as usize]
    }

    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v.0 as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.names.get(name).copied()
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        match self.lookup(name) {
            Some(Symbol::Vertex(v)) => Some(v),
            _ => None,
        }
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        match self.lookup(name) {
            Some(Symbol::Arrow(a)) => Some(a),
            _ => None,
        }
    }

    /// Path of length one.
    pub fn arrow_path(&self, a: ArrowId) -> Path {
        let arrow = self.arrow(a);
        Path {
            origin: arrow.source,
            terminus: arrow.target,
            arrows: SmallVec::from_slice(&[a]),
        }
    }

    /// Validates and builds the path `a_1 a_2 ... a_n` (left to right).
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidPath("empty arrow sequence".into()));
        };
        for a in arrows {
            if a.0 as usize >= self.arrows.len() {
                return Err(Error::InvalidPath(format!("unknown arrow id {}", a.0)));
            }
        }
        for w in arrows.windows(2) {
            if self.arrow(w[0]).target != self.arrow(w[1]).source {
                return Err(Error::InvalidPath(format!(
                    "`{}` and `{}` do not compose",
                    self.arrow(w[0]).name,
                    self.arrow(w[1]).name
                )));
            }
        }
        Ok(Path {
            origin: self.arrow(first).source,
            terminus: self.arrow(*arrows.last().unwrap()).target,
            arrows: SmallVec::from_slice(arrows),
        })
    }

    /// Parses a `*`-free sequence of names, e.g. `["a", "b"]`.
    pub fn path_from_names(&self, names: &[&str]) -> Result<Path> {
        let mut acc: Option<Path> = None;
        for n in names {
            let piece = match self.lookup(n) {
                Some(Symbol::Vertex(v)) => Path::vertex(v),
                Some(Symbol::Arrow(a)) => self.arrow_path(a),
                None => return Err(Error::InvalidPath(format!("undeclared identifier `{n}`"))),
            };
            acc = Some(match acc {
                None => piece,
                Some(p) => p
                    .mul(&piece)
                    .ok_or_else(|| Error::InvalidPath(format!("non-composable path at `{n}`")))?,
            });
        }
        acc.ok_or_else(|| Error::InvalidPath("empty path".into()))
    }

    /// True when every id in `p` is declared here and consecutive arrows compose.
    pub fn contains(&self, p: &Path) -> bool {
        if p.is_trivial() {
            return (p.origin.0 as usize) < self.vertices.len() && p.origin == p.terminus;
        }
        self.path(&p.arrows).map(|q| &q == p).unwrap_or(false)
    }

    /// Checked composition; `Ok(None)` is the zero product.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Option<Path>> {
        for x in [p, q] {
            if !self.contains(x) {
                return Err(Error::InvalidPath(format!("path {x:?} does not belong to this quiver")));
            }
        }
        Ok(p.mul(q))
    }

    /// Vertex sitting at position `k` of `p` (0 = origin, len = terminus).
    pub fn vertex_at(&self, p: &Path, k: usize) -> VertexId {
        if k == 0 {
            p.origin
        } else {
            self.arrow(p.arrows[k - 1]).target
        }
    }

    /// The subpath occupying positions `start..end`.
    pub fn segment(&self, p: &Path, start: usize, end: usize) -> Path {
        debug_assert!(start <= end && end <= p.len());
        if start == end {
            return Path::vertex(self.vertex_at(p, start));
        }
        let arrows = &p.arrows[start..end];
        Path {
            origin: self.arrow(arrows[0]).source,
            terminus: self.arrow(arrows[arrows.len() - 1]).target,
            arrows: SmallVec::from_slice(arrows),
        }
    }

    /// All `(r, s)` with `q = r p s`, in order of increasing `len(r)`.
    pub fn divisions(&self, p: &Path, q: &Path) -> Vec<(Path, Path)> {
        self.occurrences(p, q)
            .map(|k| (self.segment(q, 0, k), self.segment(q, k + p.len(), q.len())))
            .collect()
    }

    /// First witness `(r, s)` with `q = r p s`, leftmost occurrence.
    pub fn divides(&self, p: &Path, q: &Path) -> Option<(Path, Path)> {
        self.occurrences(p, q)
            .next()
            .map(|k| (self.segment(q, 0, k), self.segment(q, k + p.len(), q.len())))
    }

    /// `s` with `q = p s`.
    pub fn left_divides(&self, p: &Path, q: &Path) -> Option<Path> {
        if p.origin != q.origin || !q.arrows.starts_with(&p.arrows) {
            return None;
        }
        Some(self.segment(q, p.len(), q.len()))
    }

    /// `r` with `q = r p`.
    pub fn right_divides(&self, p: &Path, q: &Path) -> Option<Path> {
        if p.terminus != q.terminus || !q.arrows.ends_with(&p.arrows) {
            return None;
        }
        Some(self.segment(q, 0, q.len() - p.len()))
    }

    /// Start positions of `p` inside `q`.
    pub fn occurrences<'a>(&'a self, p: &'a Path, q: &'a Path) -> impl Iterator<Item = usize> + 'a {
        let (n, m) = (p.len(), q.len());
        let upper = if n <= m { m - n + 1 } else { 0 };
        (0..upper).filter(move |&k| {
            if n == 0 {
                self.vertex_at(q, k) == p.origin
            } else {
                q.arrows[k..k + n] == p.arrows[..]
            }
        })
    }

    /// Longest shortest-path distance between two vertices joined by a path.
    pub fn diameter(&self) -> usize {
        let n = self.vertices.len();
        let mut best = 0;
        for start in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &a in &self.outgoing[v] {
                    let t = self.arrows[a.0 as usize].target.0 as usize;
                    if dist[t] == usize::MAX {
                        dist[t] = dist[v] + 1;
                        best = best.max(dist[t]);
                        queue.push_back(t);
                    }
                }
            }
        }
        best
    }

    /// Every `(r, s)` with `p r = s q`, `len(r) >= 1` and `len(s) < len(p)`,
    /// ordered by `len(s)`. Both paths must be nontrivial.
    pub fn overlaps(&self, p: &Path, q: &Path) -> Vec<(Path, Path)> {
        let (n, m) = (p.len(), q.len());
        if n == 0 || m == 0 {
            return Vec::new();
        }
        // s has length k; the shared part is p[k..n] = q[0..n-k], and n - k < m.
        let lowest = if n >= m { n - m + 1 } else { 0 };
        (lowest..n)
            .filter(|&k| p.arrows[k..] == q.arrows[..n - k])
            .map(|k| (self.segment(q, n - k, m), self.segment(p, 0, k)))
            .collect()
    }
}

fn check_identifier(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidQuiver(format!("`{name}` is not a valid identifier")))
    }
}

/// A vertex (length 0) or a composable arrow sequence, read left to right.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Path {
    origin: VertexId,
    terminus: VertexId,
    arrows: SmallVec<[ArrowId; 8]>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            origin: v,
            terminus: v,
            arrows: SmallVec::new(),
        }
    }

    pub fn origin(&self) -> VertexId {
        self.origin
    }

    pub fn terminus(&self) -> VertexId {
        self.terminus
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// Concatenation `self · other`, or `None` when the endpoints disagree.
    pub fn mul(&self, other: &Path) -> Option<Path> {
        if self.terminus != other.origin {
            return None;
        }
        if other.is_trivial() {
            return Some(self.clone());
        }
        if self.is_trivial() {
            return Some(other.clone());
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            origin: self.origin,
            terminus: other.terminus,
            arrows,
        })
    }

    /// Appends one arrow whose source is `self.terminus()`.
    pub fn push(&self, a: ArrowId, target: VertexId) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path {
            origin: self.origin,
            terminus: target,
            arrows,
        }
    }

    pub fn render(&self, quiver: &Quiver) -> String {
        if self.is_trivial() {
            quiver.vertex_name(self.origin).to_string()
        } else {
            self.arrows
                .iter()
                .map(|a| quiver.arrow(*a).name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "e{}", self.origin.0)
        } else {
            let ids: Vec<String> = self.arrows.iter().map(|a| a.0.to_string()).collect();
            write!(f, "[{}]", ids.join(","))
        }
    }
}

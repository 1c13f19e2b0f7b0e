//! Admissible orders on the path basis.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    /// Vertices below arrows; longer paths larger; equal lengths compared
    /// arrow by arrow from the left.
    LengthLeftLex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleOrder {
    kind: OrderKind,
    vertex_rank: Vec<u32>,
    arrow_rank: Vec<u32>,
}

impl AdmissibleOrder {
    /// Length-left-lexicographic order from ascending priority lists
    /// (first entry smallest). Both lists must be permutations of the
    /// quiver's vertices and arrows.
    pub fn length_lex(quiver: &Quiver, vertices_ascending: &[VertexId], arrows_ascending: &[ArrowId]) -> Result<Self> {
        let vertex_rank = ranks(
            vertices_ascending.iter().map(|v| v.0 as usize),
            quiver.vertex_count(),
            "vertex",
        )?;
        let arrow_rank = ranks(arrows_ascending.iter().map(|a| a.0 as usize), quiver.arrow_count(), "arrow")?;
        Ok(AdmissibleOrder {
            kind: OrderKind::LengthLeftLex,
            vertex_rank,
            arrow_rank,
        })
    }

    /// Earlier declarations rank higher: `a > b > c ...`, `v1 > v2 > ...`.
    pub fn declaration_order(quiver: &Quiver) -> Self {
        let vs: Vec<VertexId> = quiver.vertices().collect::<Vec<_>>().into_iter().rev().collect();
        let arrs: Vec<ArrowId> = quiver.arrow_ids().collect::<Vec<_>>().into_iter().rev().collect();
        Self::length_lex(quiver, &vs, &arrs).expect("declaration order is a permutation")
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn compare(&self, p: &Path, q: &Path) -> Ordering {
        match p.len().cmp(&q.len()) {
            Ordering::Equal => {}
            other => return other,
        }
        if p.is_trivial() {
            return self.vertex_rank[p.origin().0 as usize].cmp(&self.vertex_rank[q.origin().0 as usize]);
        }
        for (a, b) in p.arrows().iter().zip(q.arrows()) {
            if a != b {
                return self.arrow_rank[a.0 as usize].cmp(&self.arrow_rank[b.0 as usize]);
            }
        }
        Ordering::Equal
    }

    pub fn vertices_ascending(&self) -> Vec<VertexId> {
        sorted_by_rank(&self.vertex_rank).into_iter().map(|i| VertexId(i as u32)).collect()
    }

    pub fn arrows_ascending(&self) -> Vec<ArrowId> {
        sorted_by_rank(&self.arrow_rank).into_iter().map(|i| ArrowId(i as u32)).collect()
    }

    /// `lenlex vertices(v5<v4<...) arrows(e<d<...)`
    pub fn render(&self, quiver: &Quiver) -> String {
        let vs: Vec<&str> = self.vertices_ascending().into_iter().map(|v| quiver.vertex_name(v)).collect();
        let arrs: Vec<&str> = self
            .arrows_ascending()
            .into_iter()
            .map(|a| quiver.arrow(a).name.as_str())
            .collect();
        format!("lenlex vertices({}) arrows({})", vs.join("<"), arrs.join("<"))
    }
}

fn ranks(items: impl Iterator<Item = usize>, n: usize, what: &str) -> Result<Vec<u32>> {
    let mut rank = vec![u32::MAX; n];
    let mut count = 0;
    for (r, i) in items.enumerate() {
        if i >= n || rank[i] != u32::MAX {
            return Err(Error::InvalidOrder(format!("{what} priority list is not a permutation")));
        }
        rank[i] = r as u32;
        count += 1;
    }
    if count != n {
        return Err(Error::InvalidOrder(format!("{what} priority list must mention every {what}")));
    }
    Ok(rank)
}

fn sorted_by_rank(rank: &[u32]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..rank.len()).collect();
    idx.sort_by_key(|&i| rank[i]);
    idx
}

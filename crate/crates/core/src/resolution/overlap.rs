use crate::error::{Error, Result};
use crate::nontips::tip_only_at_end;
use crate::quiver::Path;
use crate::quotient::QuotientAlgebra;

/// `q = p · ext = prefix · tip(g_relation)` with the tip starting inside `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OPath {
    pub q: Path,
    pub ext: Path,
    pub prefix: Path,
    pub relation: usize,
}

/// `q = p · z · tip(g_relation)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPath {
    pub q: Path,
    pub z: Path,
    pub relation: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OverlapSets {
    pub o: Vec<OPath>,
    pub n: Vec<NPath>,
}

/// Paths `q` with left factor `p` whose only tip occurrence ends `q`, split
/// by whether that tip overlaps `p`. Both lists ascend in `q`.
///
/// The `N` list comes from a breadth-first search over `z` that stops
/// extending once `p · z` contains a tip; a frontier surviving past
/// `extension_cap` is an error.
pub fn overlap_sets(q: &QuotientAlgebra, p: &Path, extension_cap: Option<usize>) -> Result<OverlapSets> {
    let alg = q.algebra();
    let quiver = alg.quiver();
    let gb = q.basis();
    let tips = gb.tips();
    let mut out = OverlapSets::default();
    if tips.is_empty() {
        return Ok(out);
    }

    for (k, t) in tips.iter().enumerate() {
        for (ext, prefix) in quiver.overlaps(p, t) {
            let full = p.mul(&ext).expect("overlap composes");
            if tip_only_at_end(alg, &tips, &full) {
                out.o.push(OPath {
                    q: full,
                    ext,
                    prefix,
                    relation: k,
                });
            }
        }
    }

    let Some(cap) = extension_cap else {
        return Err(Error::Precondition(
            "nontips are infinite: an explicit length cap is needed to enumerate N-sets".into(),
        ));
    };
    let mut frontier = vec![Path::vertex(p.terminus())];
    while !frontier.is_empty() {
        if frontier[0].len() > cap {
            return Err(Error::CapExhausted(format!(
                "rtG-finiteness violated or cap too small (extension length {cap})"
            )));
        }
        let mut next = Vec::new();
        for z in &frontier {
            let pz = p.mul(z).expect("extension composes");
            for (k, t) in tips.iter().enumerate() {
                let Some(full) = pz.mul(t) else { continue };
                if tip_only_at_end(alg, &tips, &full) {
                    out.n.push(NPath {
                        q: full,
                        z: z.clone(),
                        relation: k,
                    });
                }
            }
            for &a in quiver.outgoing(z.terminus()) {
                let z2 = z.push(a, quiver.arrow(a).target);
                let pz2 = p.mul(&z2).expect("extension composes");
                if q.is_nontip(&pz2) {
                    next.push(z2);
                }
            }
        }
        frontier = next;
    }

    out.o.sort_by(|a, b| alg.cmp(&a.q, &b.q).then(a.relation.cmp(&b.relation)));
    out.n.sort_by(|a, b| alg.cmp(&a.q, &b.q).then(a.relation.cmp(&b.relation)));
    Ok(out)
}

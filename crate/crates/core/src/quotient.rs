//! `Λ = kQ/I` packaged with the data the resolution algorithms consume.

use crate::algebra::{Element, PathAlgebra};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_complete, Completeness, GroebnerBasis};
use crate::nontips::{compute_rtg, enumerate_nontips, Nontips, RightGroebner};
use crate::quiver::Path;

#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    alg: PathAlgebra,
    gb: GroebnerBasis,
    nontips: Nontips,
    rtg: RightGroebner,
}

impl QuotientAlgebra {
    /// Uses a basis computed elsewhere; nontips are enumerated under
    /// `length_cap` (automatic finiteness detection when `None`).
    pub fn new(alg: PathAlgebra, gb: GroebnerBasis, length_cap: Option<usize>) -> Self {
        let nontips = enumerate_nontips(&alg, &gb, length_cap);
        let rtg = compute_rtg(&alg, &gb, &nontips);
        QuotientAlgebra { alg, gb, nontips, rtg }
    }

    /// Completes `relations`; a truncated completion is an error here because
    /// the resolution step needs exact normal forms.
    pub fn from_relations(
        alg: PathAlgebra,
        relations: &[Element],
        degree_cap: Option<usize>,
        length_cap: Option<usize>,
    ) -> Result<Self> {
        let gb = buchberger_complete(&alg, relations, degree_cap)?;
        if let Completeness::Truncated { degree_cap, pending } = gb.completeness() {
            return Err(Error::CapExhausted(format!(
                "Gröbner completion stopped at degree {degree_cap} with {pending} pending overlaps"
            )));
        }
        Ok(Self::new(alg, gb, length_cap))
    }

    pub fn algebra(&self) -> &PathAlgebra {
        &self.alg
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn nontips(&self) -> &Nontips {
        &self.nontips
    }

    pub fn rtg(&self) -> &RightGroebner {
        &self.rtg
    }

    pub fn normal_form(&self, x: &Element) -> Element {
        self.gb.normal_form(&self.alg, x)
    }

    /// `dim_k Λ` when the nontips are finite.
    pub fn dimension(&self) -> Option<usize> {
        self.nontips.is_finite().then(|| self.nontips.len())
    }

    pub fn is_nontip(&self, p: &Path) -> bool {
        !self.gb.is_tip_path(&self.alg, p)
    }

    /// Bound on the extension length searched for `N`-type overlaps: any
    /// longer extension already contains a tip.
    pub fn default_extension_cap(&self) -> Option<usize> {
        if self.gb.is_empty() {
            return Some(0);
        }
        self.nontips
            .is_finite()
            .then(|| self.nontips.longest() + self.gb.max_tip_len() + 1)
    }

    pub fn require_finite_rtg(&self) -> Result<()> {
        if self.rtg.finite {
            Ok(())
        } else {
            Err(Error::Precondition(
                "the right Gröbner basis is not known to be finite (nontip enumeration did not terminate)".into(),
            ))
        }
    }
}

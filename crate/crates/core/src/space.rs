//! Finite-dimensional spaces of polynomial forms with a verified basis.

use std::sync::OnceLock;

use crate::error::{FeecError, Result};
use crate::form::{combos, FormPoly};
use crate::linalg::{independent_subset, Coords, Echelon, SparseVec};
use crate::poly::{MultiIndex, Polynomial};
use crate::rational::Rational;

/// An ordered, linearly independent list of forms of one degree.
#[derive(Debug)]
pub struct PolySpace {
    nvars: usize,
    s: usize,
    tag: String,
    basis: Vec<FormPoly>,
    echelon: OnceLock<Echelon>,
}

impl Clone for PolySpace {
    fn clone(&self) -> Self {
        PolySpace { nvars: self.nvars, s: self.s, tag: self.tag.clone(), basis: self.basis.clone(), echelon: OnceLock::new() }
    }
}

impl PolySpace {
    /// Wraps `basis`, rejecting linearly dependent input.
    pub fn new(nvars: usize, s: usize, tag: impl Into<String>, basis: Vec<FormPoly>) -> Result<Self> {
        check_shape(nvars, s, &basis)?;
        let mut e = Echelon::new();
        let mut rank = 0;
        for b in &basis {
            if e.insert(&b.coords()) {
                rank += 1;
            }
        }
        if rank < basis.len() {
            return Err(FeecError::Dependent { rank, len: basis.len() });
        }
        let echelon = OnceLock::new();
        let _ = echelon.set(e);
        Ok(PolySpace { nvars, s, tag: tag.into(), basis, echelon })
    }

    /// Keeps a maximal independent subset of `gens`, in order.
    pub fn spanned_by(nvars: usize, s: usize, tag: impl Into<String>, gens: Vec<FormPoly>) -> Result<Self> {
        check_shape(nvars, s, &gens)?;
        let coords: Vec<SparseVec> = gens.iter().map(|g| g.coords()).collect();
        let keep = independent_subset(&coords);
        let basis: Vec<FormPoly> = keep.into_iter().map(|i| gens[i].clone()).collect();
        PolySpace::new(nvars, s, tag, basis)
    }

    /// Wraps `basis` without the independence check. The caller guarantees
    /// independence, e.g. after deliberately corrupting a verified basis.
    pub fn new_unchecked(nvars: usize, s: usize, tag: impl Into<String>, basis: Vec<FormPoly>) -> Self {
        PolySpace { nvars, s, tag: tag.into(), basis, echelon: OnceLock::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn form_degree(&self) -> usize {
        self.s
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FormPoly] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<FormPoly> {
        self.basis
    }

    fn echelon(&self) -> &Echelon {
        self.echelon.get_or_init(|| Echelon::from_vectors(self.basis.iter().map(|b| b.coords()).collect::<Vec<_>>().iter()))
    }

    /// Exact rank of the stored list.
    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn contains(&self, w: &FormPoly) -> bool {
        w.dim() == self.nvars && w.degree() == self.s && self.echelon().contains(&w.coords())
    }

    pub fn contains_space(&self, other: &PolySpace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn span_equal(&self, other: &PolySpace) -> bool {
        self.rank() == other.rank() && self.contains_space(other) && other.contains_space(self)
    }

    /// Direct sum of two spaces of the same type; errors if they intersect.
    pub fn direct_sum(&self, other: &PolySpace, tag: impl Into<String>) -> Result<PolySpace> {
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        PolySpace::new(self.nvars, self.s, tag, basis)
    }
}

fn check_shape(nvars: usize, s: usize, basis: &[FormPoly]) -> Result<()> {
    if basis.iter().any(|b| b.dim() != nvars || b.degree() != s) {
        return Err(FeecError::DimensionMismatch(format!("space of {s}-forms in {nvars} variables")));
    }
    Ok(())
}

fn scalars(nvars: usize, ms: Vec<MultiIndex>, tag: String) -> PolySpace {
    let basis = ms.into_iter().map(|m| FormPoly::scalar(Polynomial::monomial(nvars, m, Rational::one()))).collect();
    PolySpace::new(nvars, 0, tag, basis).expect("distinct monomials are independent")
}

/// Monomials of degree at most `k` in `nvars` variables; empty for `k < 0`.
pub fn space_p(k: i64, nvars: usize) -> PolySpace {
    scalars(nvars, MultiIndex::up_to_degree(nvars, k), format!("P{k}"))
}

/// Homogeneous monomials of degree exactly `k`; empty for `k < 0`.
pub fn space_ptilde(k: i64, nvars: usize) -> PolySpace {
    let ms = if k < 0 { Vec::new() } else { MultiIndex::of_degree(nvars, k as u32) };
    scalars(nvars, ms, format!("Ptilde{k}"))
}

/// Monomials with per-variable degree bounds; empty if any bound is negative.
pub fn space_q(degs: &[i64]) -> PolySpace {
    let nvars = degs.len();
    let mut ms = Vec::new();
    if degs.iter().all(|&d| d >= 0) {
        let mut cur = vec![0u32; nvars];
        loop {
            ms.push(MultiIndex::new(&cur));
            let mut i = nvars;
            loop {
                if i == 0 {
                    ms.sort();
                    return scalars(nvars, ms, format!("Q{degs:?}"));
                }
                i -= 1;
                if (cur[i] as i64) < degs[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
    }
    scalars(nvars, ms, format!("Q{degs:?}"))
}

/// Scalar polynomials of a 0-form space.
pub fn scalar_basis(space: &PolySpace) -> Vec<Polynomial> {
    space.basis().iter().map(|b| b.comp(0).clone()).collect()
}

/// `(scalars)^{C(n,s)}`: every scalar placed in every component.
pub fn componentwise(scalars: &[Polynomial], nvars: usize, s: usize) -> Vec<FormPoly> {
    let n = combos(nvars, s).len();
    let mut out = Vec::new();
    for c in 0..n {
        for p in scalars {
            let mut comps = vec![Polynomial::zero(nvars); n];
            comps[c] = p.clone();
            out.push(FormPoly::new(nvars, s, comps).expect("component count"));
        }
    }
    out
}

/// `P^{k} Λ^s` in `nvars` variables.
pub fn full_forms(k: i64, nvars: usize, s: usize) -> Vec<FormPoly> {
    componentwise(&scalar_basis(&space_p(k, nvars)), nvars, s)
}

/// `P̃^{k} Λ^s` in `nvars` variables.
pub fn homogeneous_forms(k: i64, nvars: usize, s: usize) -> Vec<FormPoly> {
    componentwise(&scalar_basis(&space_ptilde(k, nvars)), nvars, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{barycentrics, CellKind};

    #[test]
    fn dimensions() {
        assert_eq!(space_p(2, 4).dim(), 15);
        assert_eq!(space_p(0, 4).dim(), 1);
        assert_eq!(space_p(-1, 4).dim(), 0);
        assert_eq!(space_ptilde(2, 4).dim(), 10);
        assert_eq!(space_q(&[1, 2]).dim(), 6);
        assert_eq!(space_q(&[-1, 2]).dim(), 0);
    }

    #[test]
    fn stars_and_bars() {
        let binom = |n: i64, k: i64| Rational::binomial(n, k).to_i64().unwrap() as usize;
        for n in 1..=4usize {
            for k in 0..=6i64 {
                assert_eq!(space_ptilde(k, n).dim(), binom(k + n as i64 - 1, n as i64 - 1));
                assert_eq!(space_p(k, n).dim(), binom(k + n as i64, n as i64));
            }
        }
    }

    #[test]
    fn q_is_sorted_in_library_order() {
        let b = scalar_basis(&space_q(&[2, 1]));
        let keys: Vec<u64> = b.iter().map(|p| p.terms().next().unwrap().0.key()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn barycentrics_span_affine_functions() {
        let lam: Vec<FormPoly> = barycentrics(CellKind::Pentatope).into_iter().map(FormPoly::scalar).collect();
        let bary = PolySpace::new(4, 0, "lambda", lam).unwrap();
        assert!(bary.span_equal(&space_p(1, 4)));
    }

    #[test]
    fn dependent_basis_rejected() {
        let x = FormPoly::scalar(Polynomial::var(4, 0));
        let err = PolySpace::new(4, 0, "dup", vec![x.clone(), x.scale(&Rational::from_int(2))]).unwrap_err();
        assert_eq!(err, FeecError::Dependent { rank: 1, len: 2 });
    }
}

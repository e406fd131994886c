//! Checks shared by both reference elements: the exact sequence property,
//! unisolvency and bubble correctness, plus the kernel helper used to build
//! constraint-defined spaces.

use serde::Serialize;

use crate::dofs::{dof_matrix, Dof};
use crate::error::Result;
use crate::form::FormPoly;
use crate::linalg::{det, kernel_of_columns, rank_sparse, Coords, SparseVec};
use crate::rational::Rational;
use crate::space::PolySpace;

/// Image keys of [`Coords`] stay below this bound.
const KEY_OFFSET: u64 = 1 << 50;

/// Linear combination `Σ c_j gens[j]`.
pub fn combine(gens: &[FormPoly], coeffs: &SparseVec) -> FormPoly {
    let mut out = FormPoly::zero(gens[0].dim(), gens[0].degree());
    for (j, c) in coeffs {
        out = &out + &gens[*j as usize].scale(c);
    }
    out
}

/// The subspace of `span(gens)` annihilated by the linear map `map`.
/// `gens` must be independent.
pub fn constrained(
    nvars: usize,
    s: usize,
    tag: impl Into<String>,
    gens: &[FormPoly],
    map: impl Fn(&FormPoly) -> SparseVec,
) -> Result<PolySpace> {
    if gens.is_empty() {
        return PolySpace::new(nvars, s, tag, Vec::new());
    }
    let cols: Vec<SparseVec> = gens.iter().map(&map).collect();
    let ker = kernel_of_columns(&cols, KEY_OFFSET, cols.len());
    PolySpace::new(nvars, s, tag, ker.iter().map(|v| combine(gens, v)).collect())
}

/// Rank of a list of forms.
pub fn rank_of(forms: &[FormPoly]) -> usize {
    rank_sparse(&forms.iter().map(|f| f.coords()).collect::<Vec<_>>())
}

/// Exact-sequence data for a chain `V^0 → V^1 → … → V^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub dims: Vec<usize>,
    /// `d(V^s) ⊆ V^{s+1}` for `s = 0..n-1`.
    pub maps_into: Vec<bool>,
    /// `d ∘ d = 0` on every basis member.
    pub dd_zero: bool,
    /// `rank d^s` for `s = 0..n-1`.
    pub image_ranks: Vec<usize>,
    /// `dim ker d^s` for `s = 0..n` (the last map is zero).
    pub kernel_dims: Vec<usize>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.maps_into.iter().all(|&b| b)
            && self.dd_zero
            && self.kernel_dims.first() == Some(&1)
            && (1..self.kernel_dims.len()).all(|s| self.image_ranks[s - 1] == self.kernel_dims[s])
    }
}

/// Checks the chain property and the rank identities on a sequence of
/// spaces of consecutive form degrees.
pub fn exactness(spaces: &[PolySpace]) -> Result<ExactnessReport> {
    let n = spaces.len() - 1;
    let mut maps_into = Vec::new();
    let mut image_ranks = Vec::new();
    let mut kernel_dims = Vec::new();
    let mut dd_zero = true;
    for s in 0..n {
        let images: Vec<FormPoly> = spaces[s].basis().iter().map(|b| b.d()).collect::<Result<_>>()?;
        maps_into.push(images.iter().all(|w| spaces[s + 1].contains(w)));
        if s + 1 < n {
            for w in &images {
                dd_zero &= w.d()?.is_zero();
            }
        }
        let r = rank_of(&images);
        image_ranks.push(r);
        kernel_dims.push(spaces[s].dim() - r);
    }
    kernel_dims.push(spaces[n].dim());
    Ok(ExactnessReport { dims: spaces.iter().map(|v| v.dim()).collect(), maps_into, dd_zero, image_ranks, kernel_dims })
}

/// Exact determinant of the dof-by-basis matrix; errors when it is not
/// square.
pub fn unisolvency_det(dofs: &[Dof], space: &PolySpace) -> Result<Rational> {
    det(&dof_matrix(dofs, space.basis())?)
}

/// Bubble family audit against a space and its boundary dofs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BubbleReport {
    pub count: usize,
    pub expected: usize,
    pub rank: usize,
    /// Index of the first bubble outside the space, if any.
    pub first_non_member: Option<usize>,
    /// Number of nonzero (trace dof, bubble) pairings.
    pub nonzero_traces: usize,
}

impl BubbleReport {
    pub fn ok(&self) -> bool {
        self.count == self.expected && self.rank == self.count && self.first_non_member.is_none() && self.nonzero_traces == 0
    }
}

pub fn check_bubbles(space: &PolySpace, bubbles: &[FormPoly], trace: &[Dof], expected: usize) -> Result<BubbleReport> {
    let first_non_member = bubbles.iter().position(|b| !space.contains(b));
    let nonzero_traces = if bubbles.is_empty() || trace.is_empty() {
        0
    } else {
        let m = dof_matrix(trace, bubbles)?;
        m.to_rows().iter().flatten().filter(|v| !v.is_zero()).count()
    };
    Ok(BubbleReport { count: bubbles.len(), expected, rank: rank_of(bubbles), first_non_member, nonzero_traces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::rational::qi;
    use crate::space::{full_forms, homogeneous_forms};

    #[test]
    fn constrained_kernel_of_divergence_free_linear_fields() {
        // linear vector fields in 2D with zero divergence: dimension 3 of 4
        let gens = homogeneous_forms(1, 2, 1);
        let sp = constrained(2, 1, "divfree", &gens, |f| (&f.comp(0).deriv(0) + &f.comp(1).deriv(1)).coords()).unwrap();
        assert_eq!(sp.dim(), 3);
    }

    #[test]
    fn full_polynomial_chain_is_exact() {
        let spaces: Vec<PolySpace> = (0..=4).map(|s| PolySpace::new(4, s, "P", full_forms(2 - s as i64, 4, s)).unwrap()).collect();
        // degrees drop along the chain: P^2 → P^1 Λ^1 → P^0 Λ^2 → 0
        let r = exactness(&spaces).unwrap();
        assert!(r.maps_into[0] && r.maps_into[1]);
        assert!(r.dd_zero);
        assert_eq!(r.kernel_dims[0], 1);
    }

    #[test]
    fn combine_is_linear() {
        let gens = vec![FormPoly::scalar(Polynomial::one(2)), FormPoly::scalar(Polynomial::var(2, 0))];
        let w = combine(&gens, &vec![(0, qi(2)), (1, qi(-1))]);
        assert_eq!(w.comp(0), &(&Polynomial::constant(2, qi(2)) - &Polynomial::var(2, 0)));
    }
}

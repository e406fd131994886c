//! Exact integration of polynomials over reference domains.

use crate::error::{FeecError, Result};
use crate::poly::{MultiIndex, Polynomial};
use crate::rational::{qi, Rational};

/// Integration domains.
///
/// The `Unit*` domains are the chart domains of entities (coordinates in
/// `[0, 1]`). The `Ref*` domains use the `[-1, 1]`-style coordinates of the
/// reference cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// A single point; integration is evaluation at the origin.
    Point,
    /// `{t >= 0, sum t <= 1}` in `d` dimensions.
    UnitSimplex(usize),
    /// `[0, 1]^d`.
    UnitCube(usize),
    /// Unit triangle times `[0, 1]`, variables `(t1, t2, tau)`.
    UnitTriPrism,
    /// The reference pentatope.
    RefPentatope,
    /// The reference tetrahedral prism.
    RefTetPrism,
    /// The tetrahedral factor of the prism, in `(x1, x2, x3)`.
    RefTet,
    /// The segment `[-1, 1]`.
    RefSegment,
}

impl Domain {
    /// Number of coordinates on the domain.
    pub fn dim(&self) -> usize {
        match self {
            Domain::Point => 0,
            Domain::UnitSimplex(d) | Domain::UnitCube(d) => *d,
            Domain::UnitTriPrism | Domain::RefTet => 3,
            Domain::RefPentatope | Domain::RefTetPrism => 4,
            Domain::RefSegment => 1,
        }
    }
}

/// `∫ x^alpha` over the unit `d`-simplex, `prod(alpha_i!) / (d + |alpha|)!`.
pub fn monomial_integral_simplex(alpha: &[u32], d: usize) -> Rational {
    assert_eq!(alpha.len(), d, "multi-index length must equal the simplex dimension");
    let num: Rational = alpha.iter().map(|&a| Rational::factorial(a)).product();
    let total: u32 = alpha.iter().sum();
    num / Rational::factorial(d as u32 + total)
}

fn exps(m: &MultiIndex, n: usize) -> Vec<u32> {
    (0..n).map(|i| m.exp(i)).collect()
}

fn integrate_unit_simplex_cube(p: &Polynomial, simplex_vars: usize, cube_vars: usize) -> Rational {
    let mut total = Rational::zero();
    for (m, c) in p.terms() {
        let e = exps(m, simplex_vars + cube_vars);
        let mut v = monomial_integral_simplex(&e[..simplex_vars], simplex_vars);
        for &a in &e[simplex_vars..] {
            v /= qi(a as i64 + 1);
        }
        total += c * &v;
    }
    total
}

/// Maps `[-1,1]`-style coordinates onto the unit domain: `x_i = -1 + 2 y_i`.
fn to_unit(p: &Polynomial) -> Polynomial {
    let n = p.nvars();
    let args: Vec<Polynomial> = (0..n).map(|i| &Polynomial::var(n, i).scale(&qi(2)) - &Polynomial::one(n)).collect();
    p.compose(&args)
}

/// Exact integral of `p` over `domain`.
pub fn integrate(p: &Polynomial, domain: Domain) -> Result<Rational> {
    let need = domain.dim();
    if domain != Domain::Point && p.nvars() != need {
        return Err(FeecError::UnsupportedDomain(format!("{domain:?} needs a polynomial in {need} variables, got {}", p.nvars())));
    }
    Ok(match domain {
        Domain::Point => p.eval(&vec![Rational::zero(); p.nvars()]),
        Domain::UnitSimplex(d) => integrate_unit_simplex_cube(p, d, 0),
        Domain::UnitCube(d) => integrate_unit_simplex_cube(p, 0, d),
        Domain::UnitTriPrism => integrate_unit_simplex_cube(p, 2, 1),
        // x = -1 + 2y on every axis; Jacobian 2^dim
        Domain::RefPentatope => integrate_unit_simplex_cube(&to_unit(p), 4, 0) * qi(16),
        Domain::RefTetPrism => integrate_unit_simplex_cube(&to_unit(p), 3, 1) * qi(16),
        Domain::RefTet => integrate_unit_simplex_cube(&to_unit(p), 3, 0) * qi(8),
        Domain::RefSegment => integrate_unit_simplex_cube(&to_unit(p), 0, 1) * qi(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    /// Iterated one-variable integration over the unit simplex: integrate the
    /// last variable from 0 to 1 - (sum of the others), then recurse.
    fn iterated_simplex(p: &Polynomial, d: usize) -> Rational {
        if d == 0 {
            return p.eval(&vec![Rational::zero(); p.nvars()]);
        }
        let n = p.nvars();
        let v = d - 1;
        let anti = p.antideriv(v);
        let mut upper = Polynomial::one(n);
        for i in 0..v {
            upper = &upper - &Polynomial::var(n, i);
        }
        let args: Vec<Polynomial> = (0..n).map(|i| if i == v { upper.clone() } else { Polynomial::var(n, i) }).collect();
        iterated_simplex(&anti.compose(&args), d - 1)
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(monomial_integral_simplex(&[0, 0, 0, 0], 4), q(1, 24));
        assert_eq!(monomial_integral_simplex(&[1, 0, 0, 0], 4), q(1, 120));
        assert_eq!(monomial_integral_simplex(&[1, 1, 0], 3), q(1, 120));
        let x1x2 = &Polynomial::var(4, 0) * &Polynomial::var(4, 1);
        assert_eq!(integrate(&x1x2, Domain::UnitSimplex(4)).unwrap(), q(1, 720));
    }

    #[test]
    fn reference_volumes() {
        assert_eq!(integrate(&Polynomial::one(4), Domain::RefPentatope).unwrap(), q(2, 3));
        assert_eq!(integrate(&Polynomial::one(1), Domain::RefSegment).unwrap(), qi(2));
        assert_eq!(integrate(&Polynomial::one(4), Domain::RefTetPrism).unwrap(), q(8, 3));
        assert_eq!(integrate(&Polynomial::one(3), Domain::RefTet).unwrap(), q(4, 3));
    }

    #[test]
    fn wrong_variable_count_is_an_error() {
        assert!(integrate(&Polynomial::one(3), Domain::RefPentatope).is_err());
    }

    #[test]
    fn formula_matches_iterated_oracle() {
        for d in 1..=4usize {
            for m in MultiIndex::up_to_degree(d, 6) {
                let p = Polynomial::monomial(d, m, Rational::one());
                let e: Vec<u32> = (0..d).map(|i| m.exp(i)).collect();
                assert_eq!(monomial_integral_simplex(&e, d), iterated_simplex(&p, d), "{m:?} d={d}");
            }
        }
    }

    fn small_poly(n: usize, coeffs: &[i64]) -> Polynomial {
        let ms = MultiIndex::up_to_degree(n, 2);
        Polynomial::from_terms(n, ms.into_iter().zip(coeffs).map(|(m, &c)| (m, qi(c))))
    }

    proptest! {
        #[test]
        fn integration_is_linear(a in -5i64..5, b in -5i64..5, c1 in proptest::collection::vec(-4i64..4, 15), c2 in proptest::collection::vec(-4i64..4, 15)) {
            let p = small_poly(4, &c1);
            let r = small_poly(4, &c2);
            let comb = &p.scale(&qi(a)) + &r.scale(&qi(b));
            for dom in [Domain::RefPentatope, Domain::RefTetPrism, Domain::UnitSimplex(4)] {
                let lhs = integrate(&comb, dom).unwrap();
                let rhs = qi(a) * integrate(&p, dom).unwrap() + qi(b) * integrate(&r, dom).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn fubini_on_prism(c1 in proptest::collection::vec(-4i64..4, 10), c2 in proptest::collection::vec(-4i64..4, 3)) {
            let f = small_poly(3, &c1);
            let g = small_poly(1, &c2);
            let prod = &f.embed(4, &[0, 1, 2]) * &g.embed(4, &[3]);
            let lhs = integrate(&prod, Domain::RefTetPrism).unwrap();
            let rhs = integrate(&f, Domain::RefTet).unwrap() * integrate(&g, Domain::RefSegment).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

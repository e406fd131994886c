//! Shifted Legendre and Jacobi polynomials on `[0, 1]`, their integrated
//! variants, and homogenized two-argument forms.
//!
//! Conventions: Jacobi polynomials are `P_i^{(alpha, 0)}` mapped to `[0, 1]`
//! (weight `(1 - x)^alpha`); integrated families are `L_i(x) = ∫_0^x P_{i-1}`.

use crate::error::{FeecError, Result};
use crate::poly::Polynomial;
use crate::rational::{qi, Rational};

fn x() -> Polynomial {
    Polynomial::var(1, 0)
}

/// Shifted Legendre polynomial of degree `i` on `[0, 1]`.
pub fn legendre(i: u32) -> Polynomial {
    let t = &x().scale(&qi(2)) - &Polynomial::one(1);
    let mut prev = Polynomial::one(1);
    if i == 0 {
        return prev;
    }
    let mut cur = t.clone();
    for n in 1..i {
        let n = n as i64;
        let next = &(&t * &cur).scale(&qi(2 * n + 1)) - &prev.scale(&qi(n));
        prev = cur;
        cur = next.scale(&Rational::new(1, n + 1));
    }
    cur
}

/// Shifted Jacobi polynomial `P_i^{(alpha, 0)}` on `[0, 1]`.
pub fn jacobi(i: u32, alpha: u32) -> Polynomial {
    let n = i as i64;
    let a = alpha as i64;
    let xm1 = &x() - &Polynomial::one(1);
    let mut acc = Polynomial::zero(1);
    for s in 0..=i {
        let c = Rational::binomial(n + a, n - s as i64) * Rational::binomial(n, s as i64);
        let term = &xm1.pow(s) * &x().pow(i - s);
        acc.add_scaled(&term, &c);
    }
    acc
}

/// `L_i(x) = ∫_0^x P_{i-1}`; requires `i >= 1`.
pub fn integrated_legendre(i: u32) -> Result<Polynomial> {
    if i == 0 {
        return Err(FeecError::InvalidArgument("integrated Legendre index must be at least 1".into()));
    }
    Ok(legendre(i - 1).antideriv(0))
}

/// `L_i^alpha(x) = ∫_0^x P_{i-1}^alpha`; requires `i >= 1`.
pub fn integrated_jacobi(i: u32, alpha: u32) -> Result<Polynomial> {
    if i == 0 {
        return Err(FeecError::InvalidArgument("integrated Jacobi index must be at least 1".into()));
    }
    Ok(jacobi(i - 1, alpha).antideriv(0))
}

/// Homogenization `t^n f(s / t)` with `n = deg f`, as a polynomial in
/// `(s, t)`.
pub fn scaled(f: &Polynomial) -> Polynomial {
    let n = f.degree().unwrap_or(0);
    let mut out = Polynomial::zero(2);
    for (m, c) in f.terms() {
        let e = m.exp(0);
        out.add_term(crate::poly::MultiIndex::new(&[e, n - e]), c.clone());
    }
    out
}

/// `t^n f(s / t)` evaluated on polynomial arguments, with `n = deg f`.
pub fn scaled_at(f: &Polynomial, s: &Polynomial, t: &Polynomial) -> Polynomial {
    scaled(f).compose(&[s.clone(), t.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::{integrate, Domain};
    use crate::rational::q;
    use proptest::prelude::*;

    fn on01(p: &Polynomial) -> Rational {
        integrate(p, Domain::UnitCube(1)).unwrap()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(0), Polynomial::one(1));
        assert_eq!(legendre(1), &x().scale(&qi(2)) - &Polynomial::one(1));
        assert!(on01(&(&legendre(2) * &legendre(1))).is_zero());
        assert!(on01(&(&legendre(0) * &legendre(1))).is_zero());
    }

    #[test]
    fn legendre_orthogonality_and_norm() {
        for i in 0..7 {
            for j in 0..7 {
                let v = on01(&(&legendre(i) * &legendre(j)));
                if i == j {
                    assert_eq!(v, q(1, 2 * i as i64 + 1));
                } else {
                    assert!(v.is_zero());
                }
            }
            assert_eq!(legendre(i).eval(&[qi(1)]), qi(1));
        }
    }

    #[test]
    fn jacobi_examples() {
        for a in 0..4 {
            assert_eq!(jacobi(0, a), Polynomial::one(1));
        }
        let w = (&Polynomial::one(1) - &x()).pow(2);
        assert!(on01(&(&(&jacobi(3, 2) * &jacobi(1, 2)) * &w)).is_zero());
        assert_eq!(jacobi(2, 0), legendre(2));
    }

    #[test]
    fn jacobi_weighted_orthogonality() {
        for a in 0..5u32 {
            let w = (&Polynomial::one(1) - &x()).pow(a);
            for i in 0..5 {
                for j in 0..i {
                    assert!(on01(&(&(&jacobi(i, a) * &jacobi(j, a)) * &w)).is_zero(), "a={a} i={i} j={j}");
                }
            }
        }
        for i in 0..8 {
            assert_eq!(jacobi(i, 0), legendre(i));
        }
    }

    #[test]
    fn integrated_examples() {
        assert_eq!(integrated_legendre(1).unwrap(), x());
        assert_eq!(integrated_legendre(2).unwrap(), &x().pow(2) - &x());
        for i in 2..=6 {
            let l = integrated_legendre(i).unwrap();
            assert!(l.eval(&[qi(0)]).is_zero());
            assert!(l.eval(&[qi(1)]).is_zero(), "L_{i}(1)");
        }
        assert!(integrated_legendre(0).is_err());
        assert!(integrated_jacobi(0, 3).is_err());
        for a in 0..4 {
            for i in 1..6 {
                assert!(integrated_jacobi(i, a).unwrap().eval(&[qi(0)]).is_zero());
            }
        }
    }

    #[test]
    fn degrees() {
        for i in 0..7 {
            assert_eq!(legendre(i).degree(), Some(i));
            for a in 0..4 {
                assert_eq!(jacobi(i, a).degree(), Some(i));
            }
        }
        for i in 1..7 {
            assert_eq!(integrated_legendre(i).unwrap().degree(), Some(i));
            assert_eq!(integrated_jacobi(i, 2).unwrap().degree(), Some(i));
        }
    }

    #[test]
    fn scaled_examples() {
        let s = Polynomial::var(2, 0);
        let t = Polynomial::var(2, 1);
        assert_eq!(scaled(&legendre(1)), &s.scale(&qi(2)) - &t);
        assert_eq!(scaled(&integrated_legendre(2).unwrap()), &s.pow(2) - &(&s * &t));
        let f = jacobi(3, 1);
        let at1 = scaled(&f).compose(&[x(), Polynomial::one(1)]);
        assert_eq!(at1, f);
    }

    proptest! {
        #[test]
        fn scaled_is_homogeneous(i in 1u32..7, a in 0u32..4, lam in -5i64..6) {
            let f = integrated_jacobi(i, a).unwrap();
            let g = scaled(&f);
            prop_assert!(g.is_homogeneous(i));
            let s = Polynomial::var(2, 0);
            let t = Polynomial::var(2, 1);
            let lhs = g.compose(&[s.scale(&qi(lam)), t.scale(&qi(lam))]);
            prop_assert_eq!(lhs, g.scale(&qi(lam).pow(i)));
        }
    }
}

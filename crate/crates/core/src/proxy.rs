//! Vector proxies of forms in four dimensions and the first-order operators
//! acting on them.
//!
//! Proxies: 0- and 4-forms are scalars, 1-forms the vector `(w1..w4)`,
//! 2-forms the skew matrix `½ L(w)` and 3-forms `(w234, -w134, w124, -w123)`.

use crate::error::{FeecError, Result};
use crate::form::FormPoly;
use crate::poly::Polynomial;
use crate::rational::{qi, Rational};

/// A 4-vector of polynomials.
pub type Vec4 = [Polynomial; 4];

/// Index pairs of the six skew slots, in form component order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Levi-Civita symbol on `{0,1,2,3}`.
pub fn levi_civita(i: usize, j: usize, k: usize, l: usize) -> i64 {
    let p = [i, j, k, l];
    for a in 0..4 {
        for b in a + 1..4 {
            if p[a] == p[b] {
                return 0;
            }
        }
    }
    crate::form::perm_sign(&p)
}

fn perms4() -> impl Iterator<Item = ([usize; 4], i64)> {
    (0..256usize).filter_map(|n| {
        let p = [n & 3, (n >> 2) & 3, (n >> 4) & 3, (n >> 6) & 3];
        let e = levi_civita(p[0], p[1], p[2], p[3]);
        (e != 0).then_some((p, e))
    })
}

/// A 4×4 skew-symmetric matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMat4 {
    m: [[Polynomial; 4]; 4],
}

impl SkewMat4 {
    pub fn zero(nvars: usize) -> Self {
        SkewMat4 { m: std::array::from_fn(|_| std::array::from_fn(|_| Polynomial::zero(nvars))) }
    }

    /// Checks antisymmetry (including a zero diagonal).
    pub fn from_matrix(m: [[Polynomial; 4]; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                if m[i][j] != -&m[j][i] {
                    return Err(FeecError::NotSkew);
                }
            }
        }
        Ok(SkewMat4 { m })
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.m[i][j]
    }

    pub fn entries(&self) -> &[[Polynomial; 4]; 4] {
        &self.m
    }

    pub fn nvars(&self) -> usize {
        self.m[0][1].nvars()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SkewMat4 { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].scale(c))) }
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        SkewMat4 { m: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.m[i][j]))) }
    }

    pub fn add(&self, o: &SkewMat4) -> Self {
        SkewMat4 { m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] + &o.m[i][j])) }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|p| p.is_zero())
    }
}

/// The skew map `L`: slot `(i,j)` of `w` goes to entry `(i,j)`, its negative
/// to `(j,i)`.
pub fn vtom(w: &[Polynomial; 6]) -> SkewMat4 {
    let mut s = SkewMat4::zero(w[0].nvars());
    for (a, &(i, j)) in PAIRS.iter().enumerate() {
        s.m[i][j] = w[a].clone();
        s.m[j][i] = -&w[a];
    }
    s
}

/// Inverse of [`vtom`].
pub fn mtov(a: &SkewMat4) -> [Polynomial; 6] {
    std::array::from_fn(|k| a.m[PAIRS[k].0][PAIRS[k].1].clone())
}

/// Inverse of [`vtom`] on a general matrix; errors unless it is skew.
pub fn mtov_checked(m: [[Polynomial; 4]; 4]) -> Result<[Polynomial; 6]> {
    Ok(mtov(&SkewMat4::from_matrix(m)?))
}

/// Proxy of a form.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proxy {
    Scalar(Polynomial),
    Vector(Vec4),
    Skew(SkewMat4),
}

impl Proxy {
    pub fn scalar(&self) -> &Polynomial {
        match self {
            Proxy::Scalar(p) => p,
            _ => panic!("proxy is not a scalar"),
        }
    }

    pub fn vector(&self) -> &Vec4 {
        match self {
            Proxy::Vector(v) => v,
            _ => panic!("proxy is not a vector"),
        }
    }

    pub fn skew(&self) -> &SkewMat4 {
        match self {
            Proxy::Skew(m) => m,
            _ => panic!("proxy is not a skew matrix"),
        }
    }
}

/// `Υ_s ω` for a form on `R^4`.
pub fn upsilon(w: &FormPoly) -> Proxy {
    assert_eq!(w.dim(), 4, "proxies are defined in four dimensions");
    let c = w.comps();
    match w.degree() {
        0 | 4 => Proxy::Scalar(c[0].clone()),
        1 => Proxy::Vector([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]),
        2 => {
            let half = Rational::new(1, 2);
            let v: [Polynomial; 6] = std::array::from_fn(|k| c[k].scale(&half));
            Proxy::Skew(vtom(&v))
        }
        3 => Proxy::Vector([c[3].clone(), -&c[2], c[1].clone(), -&c[0]]),
        _ => unreachable!(),
    }
}

/// Inverse of [`upsilon`]; `s` selects between the 1- and 3-form readings
/// of a vector and the 0- and 4-form readings of a scalar.
pub fn upsilon_inv(s: usize, p: &Proxy) -> Result<FormPoly> {
    match (s, p) {
        (0 | 4, Proxy::Scalar(u)) => FormPoly::new(4, s, vec![u.clone()]),
        (1, Proxy::Vector(e)) => FormPoly::new(4, 1, e.to_vec()),
        (2, Proxy::Skew(f)) => FormPoly::new(4, 2, mtov(f).iter().map(|p| p.scale(&qi(2))).collect()),
        (3, Proxy::Vector(g)) => FormPoly::new(4, 3, vec![-&g[3], g[2].clone(), -&g[1], g[0].clone()]),
        _ => Err(FeecError::DimensionMismatch(format!("proxy shape does not fit a {s}-form"))),
    }
}

/// Gradient of a scalar.
pub fn grad(u: &Polynomial) -> Vec4 {
    std::array::from_fn(|i| u.deriv(i))
}

/// `½((Grad E)^T - Grad E)` with `[Grad E]_ij = ∂_j E_i`.
pub fn skw_grad(e: &Vec4) -> SkewMat4 {
    let half = Rational::new(1, 2);
    SkewMat4 { m: std::array::from_fn(|i| std::array::from_fn(|j| (&e[j].deriv(i) - &e[i].deriv(j)).scale(&half))) }
}

/// `[curl F]_i = Σ_{j,k,l} ε_ijkl ∂_j F_kl`.
pub fn curl_skew(f: &SkewMat4) -> Vec4 {
    let n = f.nvars();
    let mut out: Vec4 = std::array::from_fn(|_| Polynomial::zero(n));
    for (p, e) in perms4() {
        out[p[0]].add_scaled(&f.m[p[2]][p[3]].deriv(p[1]), &qi(e));
    }
    out
}

/// `Σ_i ∂_i G_i`.
pub fn div_vec(g: &Vec4) -> Polynomial {
    let mut acc = Polynomial::zero(g[0].nvars());
    for (i, gi) in g.iter().enumerate() {
        acc = &acc + &gi.deriv(i);
    }
    acc
}

/// `[Curl E]_ij = Σ_{k,l} ε_ijkl ∂_k E_l`.
pub fn curl_vec(e: &Vec4) -> SkewMat4 {
    let mut out = SkewMat4::zero(e[0].nvars());
    for (p, s) in perms4() {
        out.m[p[0]][p[1]].add_scaled(&e[p[3]].deriv(p[2]), &qi(s));
    }
    out
}

/// `[Div F]_i = Σ_j ∂_j F_ij`.
pub fn div_skew(f: &SkewMat4) -> Vec4 {
    std::array::from_fn(|i| {
        let mut acc = Polynomial::zero(f.nvars());
        for j in 0..4 {
            acc = &acc + &f.m[i][j].deriv(j);
        }
        acc
    })
}

/// `[M × N]_ij = Σ_{k,l} ε_ijkl M_k N_l`.
pub fn cross_vv(m: &Vec4, n: &Vec4) -> SkewMat4 {
    let mut out = SkewMat4::zero(m[0].nvars());
    for (p, s) in perms4() {
        out.m[p[0]][p[1]].add_scaled(&(&m[p[2]] * &n[p[3]]), &qi(s));
    }
    out
}

/// `[M × U]_i = Σ_{j,k,l} ε_ijkl M_j U_kl`.
pub fn cross_vm(m: &Vec4, u: &SkewMat4) -> Vec4 {
    let mut out: Vec4 = std::array::from_fn(|_| Polynomial::zero(m[0].nvars()));
    for (p, s) in perms4() {
        out[p[0]].add_scaled(&(&m[p[1]] * &u.m[p[2]][p[3]]), &qi(s));
    }
    out
}

/// `[u × v × w]_i = Σ_{j,k,l} ε_ijkl u_j v_k w_l`.
pub fn cross3(u: &Vec4, v: &Vec4, w: &Vec4) -> Vec4 {
    let mut out: Vec4 = std::array::from_fn(|_| Polynomial::zero(u[0].nvars()));
    for (p, s) in perms4() {
        out[p[0]].add_scaled(&(&(&u[p[1]] * &v[p[2]]) * &w[p[3]]), &qi(s));
    }
    out
}

/// Euclidean dot product.
pub fn dot(a: &Vec4, b: &Vec4) -> Polynomial {
    let mut acc = Polynomial::zero(a[0].nvars());
    for i in 0..4 {
        acc = &acc + &(&a[i] * &b[i]);
    }
    acc
}

/// Frobenius pairing `A : B = Σ_ij A_ij B_ij`.
pub fn frob(a: &SkewMat4, b: &SkewMat4) -> Polynomial {
    let mut acc = Polynomial::zero(a.nvars());
    for i in 0..4 {
        for j in 0..4 {
            acc = &acc + &(&a.m[i][j] * &b.m[i][j]);
        }
    }
    acc
}

/// `½(E ⊗ n - n ⊗ E)`.
pub fn skew_outer(e: &Vec4, n: &Vec4) -> SkewMat4 {
    let half = Rational::new(1, 2);
    SkewMat4 { m: std::array::from_fn(|i| std::array::from_fn(|j| (&(&e[i] * &n[j]) - &(&n[i] * &e[j])).scale(&half))) }
}

/// Matrix-vector product `A v`.
pub fn mat_vec(a: &SkewMat4, v: &Vec4) -> Vec4 {
    std::array::from_fn(|i| {
        let mut acc = Polynomial::zero(a.nvars());
        for j in 0..4 {
            acc = &acc + &(&a.m[i][j] * &v[j]);
        }
        acc
    })
}

/// Constant vector with rational entries.
pub fn const_vec(nvars: usize, v: &[Rational]) -> Vec4 {
    std::array::from_fn(|i| Polynomial::constant(nvars, v[i].clone()))
}

/// The position vector `x`.
pub fn position(nvars: usize) -> Vec4 {
    std::array::from_fn(|i| Polynomial::var(nvars, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::tests_support::random_form;
    use crate::rational::q;
    use proptest::prelude::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(4, i)
    }

    fn c(v: i64) -> Polynomial {
        Polynomial::constant(4, qi(v))
    }

    fn zero() -> Polynomial {
        Polynomial::zero(4)
    }

    fn unit(i: usize) -> Vec4 {
        std::array::from_fn(|j| c((i == j) as i64))
    }

    #[test]
    fn upsilon_examples() {
        let w = FormPoly::basic(Polynomial::one(4), &[0]);
        assert_eq!(upsilon(&w), Proxy::Vector(unit(0)));
        let w = FormPoly::basic(Polynomial::one(4), &[0, 1]);
        let f = upsilon(&w);
        assert_eq!(f.skew().get(0, 1), &Polynomial::constant(4, q(1, 2)));
        assert_eq!(f.skew().get(1, 0), &Polynomial::constant(4, q(-1, 2)));
        let w = FormPoly::basic(Polynomial::one(4), &[0, 1, 2]);
        assert_eq!(upsilon(&w), Proxy::Vector([zero(), zero(), zero(), c(-1)]));
    }

    #[test]
    fn upsilon_round_trip() {
        for s in 0..=4 {
            let w = random_form(s, &[1, -2, 0, 3, 5, -1, 2]);
            assert_eq!(upsilon_inv(s, &upsilon(&w)).unwrap(), w);
        }
        assert!(upsilon_inv(2, &Proxy::Scalar(zero())).is_err());
    }

    #[test]
    fn vtom_examples() {
        let w = [c(1), zero(), zero(), zero(), zero(), zero()];
        let a = vtom(&w);
        assert_eq!(a.get(0, 1), &c(1));
        assert_eq!(a.get(1, 0), &c(-1));
        assert!(vtom(&std::array::from_fn(|_| zero())).is_zero());
        let mut bad = vtom(&w).entries().clone();
        bad[1][0] = c(1);
        assert_eq!(mtov_checked(bad), Err(FeecError::NotSkew));
    }

    #[test]
    fn operator_examples() {
        let u = &x(0) * &x(1);
        assert_eq!(grad(&u), [x(1), x(0), zero(), zero()]);
        let u3 = &u * &x(2);
        assert!(skw_grad(&grad(&u3)).is_zero());
        assert_eq!(div_vec(&position(4)), c(4));
    }

    #[test]
    fn cross_examples() {
        let m = cross_vv(&unit(0), &unit(1));
        assert_eq!(m.get(2, 3), &c(1));
        assert_eq!(m.get(3, 2), &c(-1));
        let mut count = 0;
        for i in 0..4 {
            for j in 0..4 {
                if !m.get(i, j).is_zero() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 2);
        let v = [x(0), c(2), x(3), c(-1)];
        assert!(cross_vv(&v, &v).is_zero());
        let w = [zero(), zero(), zero(), c(7), zero(), zero()];
        let t = cross_vm(&unit(3), &vtom(&w));
        assert_eq!(t, [c(14), zero(), zero(), zero()]);
    }

    #[test]
    fn levi_civita_values() {
        assert_eq!(levi_civita(0, 1, 2, 3), 1);
        assert_eq!(levi_civita(1, 0, 2, 3), -1);
        assert_eq!(levi_civita(0, 3, 1, 2), 1);
        assert_eq!(levi_civita(0, 0, 1, 2), 0);
        assert_eq!(perms4().count(), 24);
    }

    fn vec_of(p: &[i64]) -> Vec4 {
        let f = random_form(1, p);
        upsilon(&f).vector().clone()
    }

    proptest! {
        #[test]
        fn mtov_vtom_round_trip(w in proptest::collection::vec((-9i64..10, 1i64..5), 6)) {
            let v: [Polynomial; 6] = std::array::from_fn(|k| Polynomial::constant(4, q(w[k].0, w[k].1)));
            prop_assert_eq!(mtov(&vtom(&v)), v);
        }

        #[test]
        fn commuting_diagram(s in 0usize..4, cs in proptest::collection::vec(-3i64..4, 20..40)) {
            let w = random_form(s, &cs);
            let dw = upsilon(&w.d().unwrap());
            let lhs = match s {
                0 => Proxy::Vector(grad(upsilon(&w).scalar())),
                1 => Proxy::Skew(skw_grad(upsilon(&w).vector())),
                2 => Proxy::Vector(curl_skew(upsilon(&w).skew())),
                _ => Proxy::Scalar(div_vec(upsilon(&w).vector())),
            };
            prop_assert_eq!(lhs, dw);
        }

        #[test]
        fn sequence_property(cs in proptest::collection::vec(-3i64..4, 20..40)) {
            let e = vec_of(&cs);
            prop_assert!(curl_skew(&skw_grad(&e)).iter().all(|p| p.is_zero()));
            let f = upsilon(&random_form(2, &cs)).skew().clone();
            prop_assert!(div_vec(&curl_skew(&f)).is_zero());
            prop_assert!(div_skew(&curl_vec(&e)).iter().all(|p| p.is_zero()));
        }

        #[test]
        fn triple_cross_of_gradients(c1 in proptest::collection::vec(-3i64..4, 15), c2 in proptest::collection::vec(-3i64..4, 15), c3 in proptest::collection::vec(-3i64..4, 15)) {
            let u = random_form(0, &c1);
            let v = random_form(0, &c2);
            let w = random_form(0, &c3);
            let g = u.d().unwrap().wedge(&v.d().unwrap()).unwrap().wedge(&w.d().unwrap()).unwrap();
            let lhs = upsilon(&g).vector().clone();
            let rhs = cross3(&grad(u.comp(0)), &grad(v.comp(0)), &grad(w.comp(0)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

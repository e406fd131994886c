//! Differential forms with polynomial coefficients.
//!
//! A form of degree `s` on `R^n` stores one polynomial per increasing index
//! tuple, tuples in lexicographic order. In four dimensions that gives
//! `(1,2,3,4)` for 1-forms, `(12,13,14,23,24,34)` for 2-forms and
//! `(123,124,134,234)` for 3-forms. Components are raw coefficients: no
//! proxy factors are applied here.

use std::ops::{Add, Neg, Sub};

use crate::error::{FeecError, Result};
use crate::linalg::{Coords, SparseVec};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Increasing index tuples of length `s` from `0..n`, lexicographic.
pub fn combos(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, s: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, s, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s <= n {
        rec(n, s, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Position of an increasing tuple in [`combos`].
pub fn combo_index(n: usize, tuple: &[usize]) -> usize {
    combos(n, tuple.len()).iter().position(|c| c == tuple).expect("not an increasing index tuple")
}

/// Sign of the permutation sorting `seq` (which must have distinct entries).
pub fn perm_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn binom(n: usize, k: usize) -> usize {
    combos(n, k).len()
}

/// A polynomial differential form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormPoly {
    dim: usize,
    s: usize,
    comps: Vec<Polynomial>,
}

impl FormPoly {
    pub fn new(dim: usize, s: usize, comps: Vec<Polynomial>) -> Result<Self> {
        if s > dim {
            return Err(FeecError::InvalidDegree(format!("{s}-form in dimension {dim}")));
        }
        if comps.len() != binom(dim, s) {
            return Err(FeecError::DimensionMismatch(format!(
                "{s}-form in dimension {dim} needs {} components, got {}",
                binom(dim, s),
                comps.len()
            )));
        }
        if comps.iter().any(|c| c.nvars() != dim) {
            return Err(FeecError::DimensionMismatch("component variable count".into()));
        }
        Ok(FormPoly { dim, s, comps })
    }

    pub fn zero(dim: usize, s: usize) -> Self {
        FormPoly { dim, s, comps: vec![Polynomial::zero(dim); binom(dim, s)] }
    }

    /// A 0-form.
    pub fn scalar(p: Polynomial) -> Self {
        FormPoly { dim: p.nvars(), s: 0, comps: vec![p] }
    }

    /// `f dx^{tuple}` (tuple need not be sorted; zero if it repeats).
    pub fn basic(f: Polynomial, tuple: &[usize]) -> Self {
        let dim = f.nvars();
        let mut sorted = tuple.to_vec();
        sorted.sort_unstable();
        let mut out = Self::zero(dim, tuple.len());
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return out;
        }
        let sign = perm_sign(tuple);
        out.comps[combo_index(dim, &sorted)] = f.scale(&Rational::from_int(sign));
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.s
    }

    pub fn comps(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    /// Coefficient of `dx^{tuple}` for an increasing tuple.
    pub fn get(&self, tuple: &[usize]) -> &Polynomial {
        &self.comps[combo_index(self.dim, tuple)]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Largest total degree among components.
    pub fn poly_degree(&self) -> Option<u32> {
        self.comps.iter().filter_map(|c| c.degree()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FormPoly { dim: self.dim, s: self.s, comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    /// Multiplies every component by a polynomial.
    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        FormPoly { dim: self.dim, s: self.s, comps: self.comps.iter().map(|p| p * f).collect() }
    }

    /// Applies a map to every component.
    pub fn map_comps(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let comps: Vec<Polynomial> = self.comps.iter().map(f).collect();
        let dim = comps[0].nvars();
        FormPoly { dim, s: self.s, comps }
    }

    fn check_same(&self, o: &FormPoly) {
        assert!(self.dim == o.dim && self.s == o.s, "forms of different type");
    }

    /// Exterior derivative. Errors on top-degree forms.
    pub fn d(&self) -> Result<FormPoly> {
        if self.s >= self.dim {
            return Err(FeecError::InvalidDegree(format!("d of a {}-form in dimension {}", self.s, self.dim)));
        }
        let targets = combos(self.dim, self.s + 1);
        let comps = targets
            .iter()
            .map(|j| {
                let mut acc = Polynomial::zero(self.dim);
                for (p, &i) in j.iter().enumerate() {
                    let rest: Vec<usize> = j.iter().copied().filter(|&x| x != i).collect();
                    let sign = if p % 2 == 0 { Rational::one() } else { -Rational::one() };
                    acc.add_scaled(&self.get(&rest).deriv(i), &sign);
                }
                acc
            })
            .collect();
        Ok(FormPoly { dim: self.dim, s: self.s + 1, comps })
    }

    /// Wedge product.
    pub fn wedge(&self, other: &FormPoly) -> Result<FormPoly> {
        if self.dim != other.dim {
            return Err(FeecError::DimensionMismatch("wedge of forms in different dimensions".into()));
        }
        let s = self.s + other.s;
        if s > self.dim {
            return Ok(FormPoly::zero(self.dim, self.dim));
        }
        let mut out = FormPoly::zero(self.dim, s);
        for (a, i) in combos(self.dim, self.s).iter().enumerate() {
            if self.comps[a].is_zero() {
                continue;
            }
            for (b, j) in combos(self.dim, other.s).iter().enumerate() {
                if other.comps[b].is_zero() || i.iter().any(|x| j.contains(x)) {
                    continue;
                }
                let seq: Vec<usize> = i.iter().chain(j).copied().collect();
                let mut sorted = seq.clone();
                sorted.sort_unstable();
                let k = combo_index(self.dim, &sorted);
                let prod = &self.comps[a] * &other.comps[b];
                out.comps[k].add_scaled(&prod, &Rational::from_int(perm_sign(&seq)));
            }
        }
        Ok(out)
    }

    /// Koszul operator: contraction with the position vector `x`.
    pub fn koszul(&self) -> Result<FormPoly> {
        if self.s == 0 {
            return Err(FeecError::InvalidDegree("koszul of a 0-form".into()));
        }
        let mut out = FormPoly::zero(self.dim, self.s - 1);
        for (a, i) in combos(self.dim, self.s).iter().enumerate() {
            if self.comps[a].is_zero() {
                continue;
            }
            for (p, &ip) in i.iter().enumerate() {
                let rest: Vec<usize> = i.iter().copied().filter(|&x| x != ip).collect();
                let k = combo_index(self.dim, &rest);
                let term = &self.comps[a] * &Polynomial::var(self.dim, ip);
                let sign = if p % 2 == 0 { Rational::one() } else { -Rational::one() };
                out.comps[k].add_scaled(&term, &sign);
            }
        }
        Ok(out)
    }

    /// Pullback by the affine map `x = origin + A t`, where `A` has one
    /// column per chart coordinate (`dirs[a]` is column `a`). The result is a
    /// form in `dirs.len()` variables.
    pub fn pullback_affine(&self, origin: &[Rational], dirs: &[Vec<Rational>]) -> FormPoly {
        assert_eq!(origin.len(), self.dim);
        let d = dirs.len();
        assert!(d >= 1, "pullback to a point: evaluate instead");
        let args: Vec<Polynomial> = (0..self.dim)
            .map(|i| {
                let c: Vec<Rational> = dirs.iter().map(|v| v[i].clone()).collect();
                Polynomial::affine(d, origin[i].clone(), &c)
            })
            .collect();
        let composed: Vec<Polynomial> =
            self.comps.iter().map(|p| if p.is_zero() { Polynomial::zero(d) } else { p.compose(&args) }).collect();
        if self.s > d {
            return FormPoly::zero(d, d.min(self.s));
        }
        let src = combos(self.dim, self.s);
        let comps = combos(d, self.s)
            .iter()
            .map(|j| {
                let mut acc = Polynomial::zero(d);
                for (a, i) in src.iter().enumerate() {
                    if composed[a].is_zero() {
                        continue;
                    }
                    let minor: Vec<Vec<Rational>> = i.iter().map(|&r| j.iter().map(|&c| dirs[c][r].clone()).collect()).collect();
                    let m = small_det(&minor);
                    if !m.is_zero() {
                        acc.add_scaled(&composed[a], &m);
                    }
                }
                acc
            })
            .collect();
        FormPoly { dim: d, s: self.s, comps }
    }

    /// Embeds a form on `R^m` into `R^n` with coordinate `i` sent to `map[i]`.
    pub fn embed(&self, n: usize, map: &[usize]) -> FormPoly {
        let mut out = FormPoly::zero(n, self.s);
        for (a, i) in combos(self.dim, self.s).iter().enumerate() {
            let tuple: Vec<usize> = i.iter().map(|&x| map[x]).collect();
            let b = FormPoly::basic(self.comps[a].embed(n, map), &tuple);
            out = &out + &b;
        }
        out
    }
}

/// Determinant of a small rational matrix by cofactor expansion.
pub fn small_det(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        0 => Rational::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        n => {
            let mut total = Rational::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rational>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
                let t = &m[0][j] * &small_det(&minor);
                total = if j % 2 == 0 { total + t } else { total - t };
            }
            total
        }
    }
}

impl<'a> Add<&'a FormPoly> for &'a FormPoly {
    type Output = FormPoly;
    fn add(self, rhs: &FormPoly) -> FormPoly {
        self.check_same(rhs);
        FormPoly { dim: self.dim, s: self.s, comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a FormPoly> for &'a FormPoly {
    type Output = FormPoly;
    fn sub(self, rhs: &FormPoly) -> FormPoly {
        self.check_same(rhs);
        FormPoly { dim: self.dim, s: self.s, comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &FormPoly {
    type Output = FormPoly;
    fn neg(self) -> FormPoly {
        self.scale(&-Rational::one())
    }
}

impl Coords for FormPoly {
    fn coords(&self) -> SparseVec {
        let mut v = Vec::new();
        for (i, c) in self.comps.iter().enumerate() {
            for (m, a) in c.terms() {
                v.push(((i as u64) << 40 | m.key(), a.clone()));
            }
        }
        v.sort_by_key(|(k, _)| *k);
        v
    }
}

impl Coords for Polynomial {
    fn coords(&self) -> SparseVec {
        let mut v: SparseVec = self.terms().map(|(m, a)| (m.key(), a.clone())).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use crate::poly::MultiIndex;
    use crate::rational::qi;

    /// A quadratic 4D form whose coefficients cycle through `coeffs`.
    pub(crate) fn random_form(s: usize, coeffs: &[i64]) -> FormPoly {
        let ms = MultiIndex::up_to_degree(4, 2);
        let n = combos(4, s).len();
        let comps = (0..n)
            .map(|c| Polynomial::from_terms(4, ms.iter().enumerate().map(|(i, m)| (*m, qi(coeffs[(c * 15 + i) % coeffs.len()])))))
            .collect();
        FormPoly::new(4, s, comps).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::random_form;
    use super::*;
    use crate::rational::qi;
    use proptest::prelude::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(4, i)
    }

    fn one() -> Polynomial {
        Polynomial::one(4)
    }

    #[test]
    fn component_orders() {
        let c2: Vec<Vec<usize>> = combos(4, 2);
        assert_eq!(c2, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combos(4, 3), vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn d_examples() {
        let w = FormPoly::scalar(x(0));
        assert_eq!(w.d().unwrap().comps(), &[one(), Polynomial::zero(4), Polynomial::zero(4), Polynomial::zero(4)]);
        let w = FormPoly::basic(x(2), &[0, 1]);
        let dw = w.d().unwrap();
        assert_eq!(dw.get(&[0, 1, 2]), &one());
        assert!(dw.get(&[0, 1, 3]).is_zero() && dw.get(&[0, 2, 3]).is_zero() && dw.get(&[1, 2, 3]).is_zero());
        assert!(FormPoly::basic(one(), &[0, 1, 2, 3]).d().is_err());
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(FormPoly::basic(one(), &[0]).koszul().unwrap(), FormPoly::scalar(x(0)));
        let k = FormPoly::basic(one(), &[0, 1]).koszul().unwrap();
        let expected = &FormPoly::basic(x(0), &[1]) - &FormPoly::basic(x(1), &[0]);
        assert_eq!(k, expected);
        assert!(FormPoly::scalar(one()).koszul().is_err());
    }

    #[test]
    fn wedge_of_basics() {
        let a = FormPoly::basic(one(), &[1]);
        let b = FormPoly::basic(one(), &[0]);
        assert_eq!(a.wedge(&b).unwrap(), FormPoly::basic(-&one(), &[0, 1]));
        assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn pullback_identity_chart() {
        let w = random_form(2, &[1, -2, 3, 0, 5]);
        let e: Vec<Vec<Rational>> = (0..4).map(|i| (0..4).map(|j| qi((i == j) as i64)).collect()).collect();
        assert_eq!(w.pullback_affine(&[qi(0), qi(0), qi(0), qi(0)], &e), w);
    }

    proptest! {
        #[test]
        fn dd_is_zero(s in 0usize..3, c in proptest::collection::vec(-3i64..4, 20..40)) {
            let w = random_form(s, &c);
            prop_assert!(w.d().unwrap().d().unwrap().is_zero());
        }

        #[test]
        fn kk_is_zero(s in 2usize..5, c in proptest::collection::vec(-3i64..4, 20..40)) {
            let w = random_form(s, &c);
            prop_assert!(w.koszul().unwrap().koszul().unwrap().is_zero());
        }

        #[test]
        fn leibniz(c1 in proptest::collection::vec(-3i64..4, 20), c2 in proptest::collection::vec(-3i64..4, 20)) {
            let a = random_form(1, &c1);
            let b = random_form(1, &c2);
            let lhs = a.wedge(&b).unwrap().d().unwrap();
            let rhs = &a.d().unwrap().wedge(&b).unwrap() - &a.wedge(&b.d().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pullback_commutes_with_d(s in 0usize..3, c in proptest::collection::vec(-3i64..4, 20), m in proptest::collection::vec(-2i64..3, 15)) {
            let w = random_form(s, &c);
            let origin: Vec<Rational> = m[..4].iter().map(|&v| qi(v)).collect();
            let dirs: Vec<Vec<Rational>> = (0..3).map(|a| (0..4).map(|i| qi(m[4 + (a * 4 + i) % 11])).collect()).collect();
            let lhs = w.pullback_affine(&origin, &dirs).d().unwrap();
            let rhs = w.d().unwrap().pullback_affine(&origin, &dirs);
            prop_assert_eq!(lhs, rhs);
        }
    }
}

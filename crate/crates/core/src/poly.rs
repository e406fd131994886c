//! Sparse multivariate polynomials with rational coefficients in up to four
//! variables.
//!
//! Monomials are ordered by total degree first and then lexicographically
//! with `x1` largest, so degree-one monomials come out as `x1, x2, x3, x4`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

/// Maximum number of variables.
pub const MAX_VARS: usize = 4;

/// Exponent vector of a monomial. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(pub [u8; MAX_VARS]);

impl MultiIndex {
    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most four variables");
        let mut e = [0u8; MAX_VARS];
        for (slot, &x) in e.iter_mut().zip(exps) {
            *slot = u8::try_from(x).expect("exponent too large");
        }
        MultiIndex(e)
    }

    /// Unit exponent in variable `i`.
    pub fn unit(i: usize) -> Self {
        let mut e = [0u8; MAX_VARS];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        let mut e = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i].checked_add(other.0[i]).expect("exponent overflow");
        }
        MultiIndex(e)
    }

    /// Order-preserving packed key.
    pub fn key(&self) -> u64 {
        let mut k = (self.degree() as u64) << 32;
        for i in 0..MAX_VARS {
            k |= ((255 - self.0[i]) as u64) << (8 * (3 - i));
        }
        k
    }

    /// All exponent vectors in `nvars` variables of total degree exactly `d`,
    /// in the library monomial order.
    pub fn of_degree(nvars: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(nvars: usize, i: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<MultiIndex>) {
            if i + 1 == nvars {
                cur[i] = left;
                out.push(MultiIndex::new(&cur[..nvars]));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(nvars, i + 1, left - e, cur, out);
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            return out;
        }
        rec(nvars, 0, d, &mut [0; MAX_VARS], &mut out);
        out
    }

    /// All exponent vectors of total degree at most `d` (none when `d < 0`).
    pub fn up_to_degree(nvars: usize, d: i64) -> Vec<MultiIndex> {
        (0..=d.max(-1)).flat_map(|j| Self::of_degree(nvars, j as u32)).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A polynomial in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&nvars), "nvars must be 1..=4");
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(MultiIndex::default(), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::monomial(nvars, MultiIndex::unit(i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: MultiIndex, c: Rational) -> Self {
        debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    /// Affine polynomial `c0 + sum_i c[i] x_i`.
    pub fn affine(nvars: usize, c0: Rational, c: &[Rational]) -> Self {
        let mut p = Self::constant(nvars, c0);
        for (i, ci) in c.iter().enumerate() {
            p.add_term(MultiIndex::unit(i), ci.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Largest exponent of variable `i` that occurs.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(i)).max()
    }

    /// True when every term has total degree `d` (the zero polynomial counts).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Adds `c x^m` in place.
    pub fn add_term(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        self.check_vars(other);
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(*m, a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn deriv(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = *m;
                m2.0[i] -= 1;
                out.add_term(m2, c * &Rational::from_int(e as i64));
            }
        }
        out
    }

    /// Antiderivative in variable `i` vanishing on `x_i = 0`.
    pub fn antideriv(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = *m;
            m2.0[i] += 1;
            out.add_term(m2, c / &Rational::from_int(m2.0[i] as i64));
        }
        out
    }

    /// Evaluation at a rational point.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars, "point dimension");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, xi) in x.iter().enumerate() {
                let e = m.0[i] as u32;
                if e > 0 {
                    t = &t * &xi.pow(e);
                }
            }
            total += t;
        }
        total
    }

    /// Substitutes `x_i -> args[i]`; the result lives in the variables of the
    /// arguments.
    pub fn compose(&self, args: &[Polynomial]) -> Polynomial {
        assert_eq!(args.len(), self.nvars, "one argument per variable");
        let out_vars = args[0].nvars;
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(self.nvars);
        for (i, a) in args.iter().enumerate() {
            assert_eq!(a.nvars, out_vars);
            let maxe = self.degree_in(i).unwrap_or(0);
            let mut pw = vec![Polynomial::one(out_vars)];
            for e in 1..=maxe {
                let next = &pw[e as usize - 1] * a;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = Polynomial::zero(out_vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(out_vars, c.clone());
            for (i, pw) in powers.iter().enumerate() {
                let e = m.0[i] as usize;
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            out.add_scaled(&t, &Rational::one());
        }
        out
    }

    /// Re-expresses the polynomial in `nvars` variables, sending variable `i`
    /// to variable `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = [0u8; MAX_VARS];
            for (i, &j) in map.iter().enumerate() {
                assert!(j < nvars);
                e[j] += m.0[i];
            }
            out.add_term(MultiIndex(e), c.clone());
        }
        out
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect() }
    }

    fn check_vars(&self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different variable counts");
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for i in 0..self.nvars {
                match m.0[i] {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    e => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn x(i: usize) -> Polynomial {
        Polynomial::var(4, i)
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let ms = MultiIndex::of_degree(4, 1);
        assert_eq!(ms, (0..4).map(MultiIndex::unit).collect::<Vec<_>>());
        let all = MultiIndex::up_to_degree(3, 2);
        assert_eq!(all.len(), 10);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(MultiIndex::up_to_degree(4, -1).len(), 0);
    }

    #[test]
    fn arithmetic_cancels() {
        let p = &x(0) + &x(1);
        let d = &(&p * &p) - &(&x(0) * &x(0));
        let expected = &(&x(1) * &x(1)) + &(&x(0) * &x(1)).scale(&qi(2));
        assert_eq!(d, expected);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn derivative_and_eval() {
        let p = &(&x(0) * &x(0)) * &x(2);
        assert_eq!(p.deriv(0), (&x(0) * &x(2)).scale(&qi(2)));
        assert_eq!(p.eval(&[q(1, 2), qi(7), qi(3), qi(0)]), q(3, 4));
    }

    #[test]
    fn compose_with_affine() {
        let t = Polynomial::var(1, 0);
        let one = Polynomial::one(1);
        // x1 x2 with x1 = 1 - 2t, x2 = -1 + 2t
        let args = vec![&one - &t.scale(&qi(2)), &t.scale(&qi(2)) - &one, -&one, -&one];
        let p = &x(0) * &x(1);
        let r = p.compose(&args);
        // -(1-2t)^2
        let expected = -&(&(&one - &t.scale(&qi(2))) * &(&one - &t.scale(&qi(2))));
        assert_eq!(r, expected);
    }

    #[test]
    fn embed_moves_variables() {
        let p = &Polynomial::var(1, 0) * &Polynomial::var(1, 0);
        let e = p.embed(4, &[3]);
        assert_eq!(e, &x(3) * &x(3));
    }
}

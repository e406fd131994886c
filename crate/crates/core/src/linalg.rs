//! Exact linear algebra over the rationals.
//!
//! Vectors are sparse, keyed by `u64` coordinates. An [`Echelon`] keeps rows
//! whose leading key is distinct; that is enough for rank, membership,
//! independent-subset extraction and kernels. Dense determinants use
//! fraction-free (Bareiss) elimination on integer-scaled rows.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{FeecError, Result};
use crate::rational::Rational;

/// Sparse vector: strictly increasing keys, no zero entries.
pub type SparseVec = Vec<(u64, Rational)>;

/// Things that have exact coordinates in some monomial basis.
pub trait Coords {
    fn coords(&self) -> SparseVec;
}

/// Row-echelon basis with distinct leading keys and unit pivots.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<u64, SparseVec>,
}

fn to_map(v: &SparseVec) -> BTreeMap<u64, Rational> {
    v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect()
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after eliminating every pivot key.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut w = to_map(v);
        let mut cursor = 0u64;
        loop {
            let hit = w.range(cursor..).find(|(k, _)| self.rows.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = hit else { break };
            let row = &self.rows[&k];
            for (j, a) in row {
                let e = w.entry(*j).or_default();
                *e -= &c * a;
                if e.is_zero() {
                    w.remove(j);
                }
            }
            cursor = k + 1;
        }
        w.into_iter().collect()
    }

    /// Adds `v`; returns false when `v` was already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        self.insert_reduced(r).is_some()
    }

    fn insert_reduced(&mut self, r: SparseVec) -> Option<u64> {
        let (k, lead) = r.first()?.clone();
        let inv = lead.recip();
        let row: SparseVec = r.into_iter().map(|(j, c)| (j, c * &inv)).collect();
        self.rows.insert(k, row);
        Some(k)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut e = Self::new();
        for v in vs {
            e.insert(v);
        }
        e
    }
}

/// Exact rank of a set of sparse vectors.
pub fn rank_sparse(vs: &[SparseVec]) -> usize {
    Echelon::from_vectors(vs).rank()
}

/// Indices of a maximal independent subset, greedy in input order.
pub fn independent_subset(vs: &[SparseVec]) -> Vec<usize> {
    let mut e = Echelon::new();
    (0..vs.len()).filter(|&i| e.insert(&vs[i])).collect()
}

/// Whether the two families span the same subspace.
pub fn span_equal_sparse(a: &[SparseVec], b: &[SparseVec]) -> bool {
    let ea = Echelon::from_vectors(a);
    let eb = Echelon::from_vectors(b);
    a.iter().all(|v| eb.contains(v)) && b.iter().all(|v| ea.contains(v))
}

fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u64, c.clone())).collect()
}

fn check_lengths(vs: &[Vec<Rational>]) -> Result<()> {
    if let Some(first) = vs.first() {
        if let Some(bad) = vs.iter().find(|v| v.len() != first.len()) {
            return Err(FeecError::DimensionMismatch(format!("vector lengths {} and {}", first.len(), bad.len())));
        }
    }
    Ok(())
}

/// Exact rank of dense vectors of equal length.
pub fn rank(vs: &[Vec<Rational>]) -> Result<usize> {
    check_lengths(vs)?;
    Ok(rank_sparse(&vs.iter().map(|v| dense_to_sparse(v)).collect::<Vec<_>>()))
}

/// Whether `v` lies in the span of `basis`.
pub fn is_member(v: &[Rational], basis: &[Vec<Rational>]) -> Result<bool> {
    check_lengths(basis)?;
    if let Some(b) = basis.first() {
        if b.len() != v.len() {
            return Err(FeecError::DimensionMismatch(format!("vector length {} vs {}", v.len(), b.len())));
        }
    }
    let e = Echelon::from_vectors(&basis.iter().map(|b| dense_to_sparse(b)).collect::<Vec<_>>());
    Ok(e.contains(&dense_to_sparse(v)))
}

/// Span equality of two dense families, by mutual membership.
pub fn span_equal(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Result<bool> {
    let all: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    check_lengths(&all)?;
    let sa: Vec<_> = a.iter().map(|v| dense_to_sparse(v)).collect();
    let sb: Vec<_> = b.iter().map(|v| dense_to_sparse(v)).collect();
    Ok(span_equal_sparse(&sa, &sb))
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        check_lengths(&rows)?;
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(FeecError::DimensionMismatch(format!("{} columns vs vector of {}", self.cols, v.len())));
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        rank_sparse(&(0..self.rows).map(|i| dense_to_sparse(self.row(i))).collect::<Vec<_>>())
    }
}

/// Exact determinant (fraction-free Bareiss elimination).
pub fn det(m: &Matrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(FeecError::DimensionMismatch(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    // Scale each row to integers; det(M) = det(A) / prod(scale).
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let l = m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
        a.push(m.row(i).iter().map(|x| x.numer() * (&l / x.denom())).collect());
        scale *= l;
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = Rational::from_big(a[n - 1][n - 1].clone(), scale);
    Ok(if sign < 0 { -d } else { d })
}

/// Basis of the right kernel `{v : M v = 0}`.
pub fn kernel(m: &Matrix) -> Vec<Vec<Rational>> {
    let rows: Vec<SparseVec> = (0..m.cols)
        .map(|j| {
            (0..m.rows)
                .filter_map(|i| {
                    let c = m.get(i, j);
                    (!c.is_zero()).then(|| (i as u64, c.clone()))
                })
                .collect()
        })
        .collect();
    kernel_of_columns(&rows, m.rows as u64, m.cols)
        .into_iter()
        .map(|v| {
            let mut d = vec![Rational::zero(); m.cols];
            for (j, c) in v {
                d[j as usize] = c;
            }
            d
        })
        .collect()
}

/// Kernel of the linear map whose `j`-th column image is `cols[j]`, where
/// image keys are all below `offset`. Returns sparse coefficient vectors
/// indexed by column.
pub fn kernel_of_columns(cols: &[SparseVec], offset: u64, ncols: usize) -> Vec<SparseVec> {
    assert_eq!(cols.len(), ncols);
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        debug_assert!(c.iter().all(|(k, _)| *k < offset));
        let mut v = c.clone();
        v.push((offset + j as u64, Rational::one()));
        let r = e.reduce(&v);
        if let Some((lead, _)) = r.first() {
            if *lead >= offset {
                out.push(r.iter().map(|(k, c)| (k - offset, c.clone())).collect());
            }
            e.insert_reduced(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap(), 2);
        assert!(rank(&[v(&[1, 0]), v(&[1])]).is_err());
    }

    #[test]
    fn det_examples() {
        let m = Matrix::from_rows(vec![vec![q(3, 2)]]).unwrap();
        assert_eq!(det(&m).unwrap(), q(3, 2));
        let m = Matrix::from_rows(vec![v(&[0, 1]), v(&[1, 0])]).unwrap();
        assert_eq!(det(&m).unwrap(), qi(-1));
        let m = Matrix::from_rows(vec![v(&[1, 2]), v(&[2, 4])]).unwrap();
        assert_eq!(det(&m).unwrap(), qi(0));
        assert!(det(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn kernel_example() {
        let m = Matrix::from_rows(vec![v(&[1, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn membership_and_span() {
        let a = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        let b = vec![v(&[1, 2, 1]), v(&[1, 0, -1])];
        assert!(span_equal(&a, &b).unwrap());
        assert!(is_member(&v(&[2, 3, 1]), &a).unwrap());
        assert!(!is_member(&v(&[1, 0, 0]), &a).unwrap());
    }

    /// Cofactor-expansion determinant, used as an oracle.
    fn det_cofactor(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut total = Rational::zero();
        for j in 0..n {
            let minor: Vec<Vec<Rational>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
            let t = &m[0][j] * &det_cofactor(&minor);
            total = if j % 2 == 0 { total + t } else { total - t };
        }
        total
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(entries in proptest::collection::vec((-6i64..6, 1i64..4), 16)) {
            let rows: Vec<Vec<Rational>> = entries.chunks(4).map(|c| c.iter().map(|&(a, b)| q(a, b)).collect()).collect();
            let m = Matrix::from_rows(rows.clone()).unwrap();
            prop_assert_eq!(det(&m).unwrap(), det_cofactor(&rows));
            let r = m.rank();
            prop_assert_eq!(r == 4, !det_cofactor(&rows).is_zero());
            let k = kernel(&m);
            prop_assert_eq!(k.len() + r, 4);
            for kv in &k {
                prop_assert!(m.mul_vec(kv).unwrap().iter().all(|x| x.is_zero()));
            }
        }
    }
}

//! Spaces, bubble bases and dof sets on the reference pentatope.
//!
//! Canonical bases: `λ^α` (`|α| = k`) for 0-forms, monomials of `P^{k-1}`
//! for 4-forms, and the trimmed (Koszul) construction otherwise. The
//! constraint-kernel construction is kept as an independent cross-check.

use crate::dofs::{proxy_weights, renumber, trace_dofs, volume_dofs, Dof};
use crate::element::constrained;
use crate::error::{FeecError, Result};
use crate::form::{combos, FormPoly};
use crate::geometry::{barycentrics, compositions, triple_cross, CellKind, RefCell};
use crate::linalg::{Coords, Matrix};
use crate::orthopoly::{integrated_jacobi, integrated_legendre, jacobi, legendre, scaled_at};
use crate::poly::Polynomial;
use crate::proxy::{mat_vec, mtov, position, upsilon_inv, vtom, Proxy, SkewMat4, Vec4, PAIRS};
use crate::rational::{qi, Rational};
use crate::space::{full_forms, homogeneous_forms, scalar_basis, space_p, PolySpace};

fn check(k: i64, s: usize) -> Result<()> {
    if k < 1 {
        return Err(FeecError::InvalidArgument(format!("polynomial order must be at least 1, got {k}")));
    }
    if s > 4 {
        return Err(FeecError::InvalidDegree(format!("form degree {s} on a 4-cell")));
    }
    Ok(())
}

fn exact(r: Rational) -> usize {
    r.to_i64().and_then(|v| usize::try_from(v).ok()).expect("closed form is a non-negative integer")
}

fn b4(n: i64) -> Rational {
    Rational::binomial(n, 4)
}

/// Closed-form `dim V^{k,s}(T4)`.
pub fn dim_formula(k: i64, s: usize) -> usize {
    let kk = qi(k);
    let v = match s {
        0 => b4(k + 4),
        1 => &kk * &qi((k + 2) * (k + 3) * (k + 4)) / qi(6),
        2 => &kk * &qi(k * k * k + 8 * k * k + 19 * k + 12) / qi(4),
        3 => &kk * &qi((k + 1) * (k + 2) * (k + 4)) / qi(6),
        _ => b4(k + 3),
    };
    exact(v)
}

/// Closed-form number of boundary dofs.
pub fn trace_dim_formula(k: i64, s: usize) -> usize {
    let v = match s {
        0 => qi(5 * k * (k * k + 5)) / qi(6),
        1 => qi(5 * k * (k * k + k + 2)) / qi(2),
        2 => qi(5 * k * (k + 1) * (k + 1)) / qi(2),
        3 => qi(5 * k * (k + 1) * (k + 2)) / qi(6),
        _ => qi(0),
    };
    exact(v)
}

/// Closed-form number of interior dofs.
pub fn vol_dim_formula(k: i64, s: usize) -> usize {
    let v = match s {
        0 => b4(k - 1),
        1 => qi(4) * b4(k),
        2 => qi(6) * b4(k + 1),
        3 => qi(4) * b4(k + 2),
        _ => b4(k + 3),
    };
    exact(v)
}

/// `P^{k-1}Λ^s ⊕ κ P̃^{k-1}Λ^{s+1}`.
pub fn koszul_space(k: i64, s: usize) -> Result<PolySpace> {
    check(k, s)?;
    let mut gens = full_forms(k - 1, 4, s);
    if s < 4 {
        for w in homogeneous_forms(k - 1, 4, s + 1) {
            gens.push(w.koszul()?);
        }
    }
    PolySpace::spanned_by(4, s, format!("T4 koszul k={k} s={s}"), gens)
}

/// The same spaces from the polynomial constraint characterizations.
pub fn constraint_space(k: i64, s: usize) -> Result<PolySpace> {
    check(k, s)?;
    let tag = format!("T4 constraint k={k} s={s}");
    let x = position(4);
    let low = || PolySpace::new(4, s, "low", full_forms(k - 1, 4, s));
    match s {
        0 => PolySpace::new(4, 0, tag, full_forms(k, 4, 0)),
        1 => {
            let hi = constrained(4, 1, "p.x=0", &homogeneous_forms(k, 4, 1), |w| {
                let e: Vec4 = std::array::from_fn(|i| w.comp(i).clone());
                crate::proxy::dot(&e, &x).coords()
            })?;
            low()?.direct_sum(&hi, tag)
        }
        2 => {
            let hi = constrained(4, 2, "Bx=0", &homogeneous_forms(k, 4, 2), |w| {
                let raw: [Polynomial; 6] = std::array::from_fn(|i| w.comp(i).clone());
                FormPoly::new(4, 1, mat_vec(&vtom(&raw), &x).to_vec()).expect("vector").coords()
            })?;
            low()?.direct_sum(&hi, tag)
        }
        3 => {
            let hi: Vec<FormPoly> = scalar_basis(&crate::space::space_ptilde(k - 1, 4))
                .iter()
                .map(|p| upsilon_inv(3, &Proxy::Vector(std::array::from_fn(|i| p * &x[i]))))
                .collect::<Result<_>>()?;
            low()?.direct_sum(&PolySpace::new(4, 3, "px", hi)?, tag)
        }
        _ => PolySpace::new(4, 4, tag, full_forms(k - 1, 4, 4)),
    }
}

/// `λ^α` over `|α| = k`, first component of `α` descending.
pub fn bernstein_basis(k: i64) -> Vec<Polynomial> {
    let lam = barycentrics(CellKind::Pentatope);
    compositions(5, k).into_iter().map(|a| a.iter().zip(&lam).fold(Polynomial::one(4), |acc, (&e, l)| &acc * &l.pow(e as u32))).collect()
}

/// Canonical basis of `V^{k,s}(T4)`.
pub fn space(k: i64, s: usize) -> Result<PolySpace> {
    check(k, s)?;
    let tag = format!("T4 k={k} s={s}");
    match s {
        0 => PolySpace::new(4, 0, tag, bernstein_basis(k).into_iter().map(FormPoly::scalar).collect()),
        4 => PolySpace::new(4, 4, tag, full_forms(k - 1, 4, 4)),
        _ => {
            let sp = koszul_space(k, s)?;
            Ok(PolySpace::new_unchecked(4, s, tag, sp.into_basis()))
        }
    }
}

/// The skew fields `B_1..B_4` whose `P̃^{k-1}` multiples complete the
/// 2-form space.
pub fn b_matrices() -> [SkewMat4; 4] {
    let x = |i: usize| Polynomial::var(4, i);
    let z = || Polynomial::zero(4);
    let raw: [[Polynomial; 6]; 4] = [
        [z(), z(), z(), x(3), -&x(2), x(1)],
        [z(), -&x(3), x(2), z(), z(), -&x(0)],
        [x(3), z(), -&x(1), z(), x(0), z()],
        [-&x(2), x(1), z(), -&x(0), z(), z()],
    ];
    raw.map(|r| vtom(&r))
}

/// The 6×4 matrix whose columns are `mtov(B_r)` evaluated at `x`.
pub fn c_matrix_at(x: &[Rational]) -> Matrix {
    let bs = b_matrices();
    let mut m = Matrix::zeros(6, 4);
    for (r, b) in bs.iter().enumerate() {
        for (i, p) in mtov(b).iter().enumerate() {
            m.set(i, r, p.eval(x));
        }
    }
    m
}

/// Named Koszul identities on generators, each with its outcome.
pub fn koszul_image_checks() -> Result<Vec<(&'static str, bool)>> {
    let x = position(4);
    let mut out = Vec::new();
    // κ dx^i = x_i
    let mut ok = true;
    for i in 0..4 {
        ok &= FormPoly::basic(Polynomial::one(4), &[i]).koszul()?.comp(0) == &x[i];
    }
    out.push(("one-form", ok));
    // κ(dx^i ∧ dx^j) = x_i dx^j − x_j dx^i
    let mut ok = true;
    for c in combos(4, 2) {
        let (i, j) = (c[0], c[1]);
        let lhs = FormPoly::basic(Polynomial::one(4), &[i, j]).koszul()?;
        let rhs = &FormPoly::basic(x[i].clone(), &[j]) - &FormPoly::basic(x[j].clone(), &[i]);
        ok &= lhs == rhs;
    }
    out.push(("two-form generators", ok));
    // Υ_1 κω = A (−x), A the coefficient matrix of ω
    let a: [Polynomial; 6] = std::array::from_fn(|i| Polynomial::constant(4, qi(i as i64 * 3 - 7)));
    let w = FormPoly::new(4, 2, a.to_vec())?;
    let minus_x: Vec4 = std::array::from_fn(|i| -&x[i]);
    out.push(("two-form matrix image", w.koszul()?.comps() == mat_vec(&vtom(&a), &minus_x).as_slice()));
    // Υ_2 κω = ½(−a123 B4 − a134 B2 + a124 B3 + a234 B1)
    let coef = [qi(2), qi(-3), qi(5), qi(7)]; // a123, a124, a134, a234
    let w3 = FormPoly::new(4, 3, coef.iter().map(|c| Polynomial::constant(4, c.clone())).collect())?;
    let b = b_matrices();
    let expect = b[3]
        .scale(&-coef[0].clone())
        .add(&b[1].scale(&-coef[2].clone()))
        .add(&b[2].scale(&coef[1]))
        .add(&b[0].scale(&coef[3]))
        .scale(&Rational::new(1, 2));
    out.push(("three-form image", crate::proxy::upsilon(&w3.koszul()?).skew() == &expect));
    // Υ_3 κ(dx^1234) = x
    let w4 = FormPoly::new(4, 4, vec![Polynomial::one(4)])?;
    out.push(("four-form image", crate::proxy::upsilon(&w4.koszul()?).vector() == &x));
    Ok(out)
}

/// Gradients of the barycentrics (constant vectors).
fn bary_grads(lam: &[Polynomial]) -> Vec<Vec<Rational>> {
    lam.iter().map(|l| (0..4).map(|i| l.deriv(i).eval(&vec![qi(0); 4])).collect()).collect()
}

struct Bary {
    lam: Vec<Polynomial>,
    beta: Vec<Vec<Rational>>,
}

impl Bary {
    fn new() -> Self {
        let lam = barycentrics(CellKind::Pentatope);
        let beta = bary_grads(&lam);
        Bary { lam, beta }
    }

    /// `f1(λb; λa+λb) f2(λc; Σ3) f3(λd; Σ4) f4(λe)` with homogenized factors.
    fn chain(&self, t: [usize; 5], f: [&Polynomial; 4]) -> Polynomial {
        let l = &self.lam;
        let s2 = &l[t[0]] + &l[t[1]];
        let s3 = &s2 + &l[t[2]];
        let s4 = &s3 + &l[t[3]];
        let p = &scaled_at(f[0], &l[t[1]], &s2) * &scaled_at(f[1], &l[t[2]], &s3);
        let p = &p * &scaled_at(f[2], &l[t[3]], &s4);
        &p * &f[3].compose(&[l[t[4]].clone()])
    }

    /// `λa ∇λb − λb ∇λa`.
    fn whitney1(&self, a: usize, b: usize) -> Vec4 {
        let (l, be) = (&self.lam, &self.beta);
        std::array::from_fn(|i| &l[a].scale(&be[b][i]) - &l[b].scale(&be[a][i]))
    }

    /// Raw components of `λa(βb⊗βc − βc⊗βb) + cyclic`.
    fn whitney2(&self, a: usize, b: usize, c: usize) -> [Polynomial; 6] {
        let (l, be) = (&self.lam, &self.beta);
        let wedge = |u: &[Rational], v: &[Rational], p: usize, q: usize| &u[p] * &v[q] - &v[p] * &u[q];
        std::array::from_fn(|k| {
            let (p, q) = PAIRS[k];
            let mut out = l[a].scale(&wedge(&be[b], &be[c], p, q));
            out = &out + &l[b].scale(&wedge(&be[c], &be[a], p, q));
            &out + &l[c].scale(&wedge(&be[a], &be[b], p, q))
        })
    }

    /// `λa(βb×βc×βd) − λb(βc×βd×βa) + λc(βd×βa×βb) − λd(βa×βb×βc)`.
    fn whitney3(&self, a: usize, b: usize, c: usize, d: usize) -> Vec4 {
        let (l, be) = (&self.lam, &self.beta);
        let terms = [
            (a, triple_cross(&be[b], &be[c], &be[d]), 1),
            (b, triple_cross(&be[c], &be[d], &be[a]), -1),
            (c, triple_cross(&be[d], &be[a], &be[b]), 1),
            (d, triple_cross(&be[a], &be[b], &be[c]), -1),
        ];
        std::array::from_fn(|i| {
            let mut out = Polynomial::zero(4);
            for (v, cr, sg) in &terms {
                out.add_scaled(&l[*v], &(&cr[i] * &qi(*sg)));
            }
            out
        })
    }
}

const CYCLIC: [[usize; 5]; 5] = [[0, 1, 2, 3, 4], [1, 2, 3, 4, 0], [2, 3, 4, 0, 1], [3, 4, 0, 1, 2], [4, 0, 1, 2, 3]];
const THETA_EXTRA: [usize; 5] = [0, 1, 3, 2, 4];

/// Index tuples `(i, j, l, m)` with lower bounds `lo` and `n = i+j+l+m` in
/// `[nmin, nmax]`.
fn tuples(lo: [i64; 4], nmin: i64, nmax: i64) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for n in nmin.max(lo.iter().sum())..=nmax {
        for c in compositions(4, n - lo.iter().sum::<i64>()) {
            out.push(std::array::from_fn(|t| (c[t] + lo[t]) as u32));
        }
    }
    out
}

fn il(i: u32) -> Polynomial {
    integrated_legendre(i).expect("index at least 1")
}

fn ij(i: u32, a: u32) -> Polynomial {
    integrated_jacobi(i, a).expect("index at least 1")
}

/// Explicit interior basis of `V^{k,s}(T4)` from the hierarchical formulas.
pub fn bubbles(k: i64, s: usize) -> Result<Vec<FormPoly>> {
    check(k, s)?;
    let bary = Bary::new();
    let mut out = Vec::new();
    match s {
        0 => {
            for [i, j, l, m] in tuples([2, 1, 1, 1], 5, k) {
                let f = bary.chain(CYCLIC[0], [&il(i), &ij(j, 2 * i), &ij(l, 2 * (i + j)), &ij(m, 2 * (i + j + l))]);
                out.push(FormPoly::scalar(f));
            }
        }
        1 => {
            for t in &CYCLIC[..4] {
                for [i, j, l, m] in tuples([0, 1, 1, 1], 3, k - 1) {
                    let f = bary.chain(*t, [&legendre(i), &ij(j, 2 * i + 1), &ij(l, 2 * (i + j)), &ij(m, 2 * (i + j + l))]);
                    let v = bary.whitney1(t[0], t[1]);
                    out.push(FormPoly::new(4, 1, v.iter().map(|c| &f * c).collect())?);
                }
            }
        }
        2 => {
            let mut ts: Vec<[usize; 5]> = CYCLIC.to_vec();
            ts.push(THETA_EXTRA);
            for t in &ts {
                for [i, j, l, m] in tuples([0, 0, 1, 1], 2, k - 1) {
                    let f = bary.chain(*t, [&legendre(i), &jacobi(j, 2 * i + 1), &ij(l, 2 * (i + j + 1)), &ij(m, 2 * (i + j + l))]);
                    let w = bary.whitney2(t[0], t[1], t[2]);
                    out.push(FormPoly::new(4, 2, w.iter().map(|c| &f * c).collect())?);
                }
            }
        }
        3 => {
            for t in &CYCLIC[..4] {
                for [i, j, l, m] in tuples([0, 0, 0, 1], 1, k - 1) {
                    let f = bary.chain(*t, [&legendre(i), &jacobi(j, 2 * i + 1), &jacobi(l, 2 * (i + j + 1)), &ij(m, 2 * (i + j + l) + 3)]);
                    let g = bary.whitney3(t[0], t[1], t[2], t[3]);
                    out.push(upsilon_inv(3, &Proxy::Vector(std::array::from_fn(|c| &f * &g[c])))?);
                }
            }
        }
        _ => {
            for [i, j, l, m] in tuples([0, 0, 0, 0], 0, k - 1) {
                let f = bary
                    .chain(CYCLIC[0], [&legendre(i), &jacobi(j, 2 * i + 1), &jacobi(l, 2 * (i + j + 1)), &jacobi(m, 2 * (i + j + l) + 3)]);
                out.push(FormPoly::new(4, 4, vec![f])?);
            }
        }
    }
    Ok(out)
}

/// Interior moment weights, raw component order.
pub fn volume_weights(k: i64, s: usize) -> Result<Vec<Vec<Polynomial>>> {
    check(k, s)?;
    let ps = |m: i64| scalar_basis(&space_p(m, 4));
    let each = |m: i64, n: usize| -> Vec<Vec<Polynomial>> {
        let mut out = Vec::new();
        for c in 0..n {
            for p in ps(m) {
                out.push(crate::dofs::place(n, c, p));
            }
        }
        out
    };
    Ok(match s {
        0 => each(k - 5, 1),
        1 => each(k - 4, 4),
        2 => each(k - 3, 6),
        3 => {
            let mut out = Vec::new();
            for c in 0..4 {
                for p in ps(k - 2) {
                    let mut v: Vec4 = std::array::from_fn(|_| Polynomial::zero(4));
                    v[c] = p;
                    out.push(proxy_weights(3, &Proxy::Vector(v))?);
                }
            }
            out
        }
        _ => each(k - 1, 1),
    })
}

/// Full dof set: boundary dofs entity by entity, then interior moments.
pub fn dofs(k: i64, s: usize) -> Result<Vec<Dof>> {
    check(k, s)?;
    let cell = RefCell::new(CellKind::Pentatope);
    let mut out = if s < 4 { trace_dofs(&cell, s, k)? } else { Vec::new() };
    out.extend(volume_dofs(&cell, s, "vol", volume_weights(k, s)?));
    renumber(&mut out);
    Ok(out)
}

/// The scalar `β1 · (β2 × β3 × β4)` for barycentric gradients.
pub fn lemma_scalar() -> Rational {
    let be = bary_grads(&barycentrics(CellKind::Pentatope));
    triple_cross(&be[1], &be[2], &be[3]).iter().zip(&be[0]).map(|(a, b)| a * b).sum()
}

/// `C(x)` of the 3-form generator: the linear part of the `whitney3`
/// bracket on `(λ1, λ2, λ3, λ4)`.
pub fn lemma_linear_part() -> Vec4 {
    let bary = Bary::new();
    let g = bary.whitney3(0, 1, 2, 3);
    std::array::from_fn(|i| {
        let c0 = g[i].eval(&vec![qi(0); 4]);
        &g[i] - &Polynomial::constant(4, c0)
    })
}

/// Generators of the lemma memberships, multiplied by `f`.
pub fn lemma_generators(f: &Polynomial) -> Result<[FormPoly; 3]> {
    let bary = Bary::new();
    let v1 = bary.whitney1(0, 1);
    let w2 = bary.whitney2(0, 1, 2);
    let g3 = bary.whitney3(0, 1, 2, 3);
    Ok([
        FormPoly::new(4, 1, v1.iter().map(|c| f * c).collect())?,
        FormPoly::new(4, 2, w2.iter().map(|c| f * c).collect())?,
        upsilon_inv(3, &Proxy::Vector(std::array::from_fn(|c| f * &g3[c])))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{check_bubbles, exactness, unisolvency_det};
    use crate::rational::q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_poly(rng: &mut ChaCha8Rng, k: i64) -> Polynomial {
        let mut p = Polynomial::zero(4);
        for b in scalar_basis(&space_p(k, 4)) {
            p.add_scaled(&b, &q(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
        }
        p
    }

    #[test]
    fn closed_forms_are_consistent() {
        for k in 1..=6 {
            for s in 0..=4 {
                assert_eq!(trace_dim_formula(k, s) + vol_dim_formula(k, s), dim_formula(k, s), "k={k} s={s}");
            }
        }
        assert_eq!(dim_formula(2, 0), 15);
        assert_eq!(dim_formula(1, 1), 10);
        assert_eq!(dim_formula(2, 2), 45);
        assert_eq!(dim_formula(1, 3), 5);
        assert_eq!(dim_formula(1, 4), 1);
    }

    #[test]
    fn constructions_agree_with_closed_forms() {
        for k in 1..=3 {
            for s in 0..=4 {
                let a = space(k, s).unwrap();
                let b = constraint_space(k, s).unwrap();
                let c = koszul_space(k, s).unwrap();
                assert_eq!(a.rank(), dim_formula(k, s), "k={k} s={s}");
                assert!(a.span_equal(&b) && a.span_equal(&c), "k={k} s={s}");
            }
        }
    }

    #[test]
    fn b_matrices_annihilate_position() {
        let x = position(4);
        for b in b_matrices() {
            assert!(mat_vec(&b, &x).iter().all(|p| p.is_zero()));
        }
        let m4 = mtov(&b_matrices()[3]);
        let v = |i| Polynomial::var(4, i);
        assert_eq!(m4, [-&v(2), v(1), Polynomial::zero(4), -&v(0), Polynomial::zero(4), Polynomial::zero(4)]);
    }

    #[test]
    fn c_matrix_has_rank_three() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let x: Vec<Rational> = (0..4).map(|_| q(rng.gen_range(1..=9), rng.gen_range(1..=4))).collect();
            assert_eq!(c_matrix_at(&x).rank(), 3);
        }
    }

    #[test]
    fn koszul_images() {
        for (name, ok) in koszul_image_checks().unwrap() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn b_multiples_lie_in_two_form_space() {
        let sp = space(2, 2).unwrap();
        for b in b_matrices() {
            for p in scalar_basis(&crate::space::space_ptilde(1, 4)) {
                let raw = mtov(&b);
                let w = FormPoly::new(4, 2, raw.iter().map(|c| &p * c).collect()).unwrap();
                assert!(sp.contains(&w));
            }
        }
    }

    #[test]
    fn lemma_linear_part_is_scalar_times_position() {
        let c = lemma_linear_part();
        let x = position(4);
        let l = lemma_scalar();
        assert!(!l.is_zero());
        for i in 0..4 {
            assert_eq!(c[i], x[i].scale(&l));
        }
    }

    #[test]
    fn lemma_memberships() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..=3 {
            let targets = [space(k + 1, 1).unwrap(), space(k + 1, 2).unwrap(), space(k + 1, 3).unwrap()];
            for _ in 0..5 {
                let f = rand_poly(&mut rng, k);
                for (g, t) in lemma_generators(&f).unwrap().iter().zip(&targets) {
                    assert!(t.contains(g), "k={k} s={}", g.degree());
                }
            }
        }
    }

    #[test]
    fn bubble_examples() {
        assert_eq!(bubbles(4, 0).unwrap().len(), 0);
        let b5 = bubbles(5, 0).unwrap();
        assert_eq!(b5.len(), 1);
        let prod = barycentrics(CellKind::Pentatope).iter().fold(Polynomial::one(4), |a, l| &a * l);
        let ratio = b5[0].comp(0).terms().next().map(|(m, c)| c / &prod.coeff(m)).unwrap();
        assert_eq!(b5[0].comp(0), &prod.scale(&ratio));
        assert_eq!(bubbles(2, 3).unwrap().len(), 4);
        assert_eq!(bubbles(3, 1).unwrap().len(), 0);
    }

    #[test]
    fn bubbles_are_interior_and_complete() {
        for (k, s) in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (3, 4), (4, 1), (5, 0)] {
            let sp = space(k, s).unwrap();
            let cell = RefCell::new(CellKind::Pentatope);
            let tr = if s < 4 { trace_dofs(&cell, s, k).unwrap() } else { Vec::new() };
            let r = check_bubbles(&sp, &bubbles(k, s).unwrap(), &tr, vol_dim_formula(k, s)).unwrap();
            assert!(r.ok(), "k={k} s={s} {r:?}");
        }
    }

    #[test]
    fn dof_counts() {
        for k in 1..=3 {
            for s in 0..=4 {
                let d = dofs(k, s).unwrap();
                let ntr = d.iter().filter(|d| d.group != "vol").count();
                assert_eq!(ntr, trace_dim_formula(k, s), "k={k} s={s}");
                assert_eq!(d.len(), dim_formula(k, s));
            }
        }
    }

    #[test]
    fn unisolvency_examples() {
        assert_eq!(unisolvency_det(&dofs(1, 0).unwrap(), &space(1, 0).unwrap()).unwrap(), qi(1));
        assert_eq!(unisolvency_det(&dofs(1, 4).unwrap(), &space(1, 4).unwrap()).unwrap(), q(2, 3));
        for s in 0..=4 {
            assert!(!unisolvency_det(&dofs(2, s).unwrap(), &space(2, s).unwrap()).unwrap().is_zero(), "s={s}");
        }
    }

    #[test]
    fn sequence_is_exact() {
        for k in 1..=2 {
            let sp: Vec<PolySpace> = (0..=4).map(|s| space(k, s).unwrap()).collect();
            let r = exactness(&sp).unwrap();
            assert!(r.is_exact(), "k={k} {r:?}");
        }
        let sp: Vec<PolySpace> = (0..=4).map(|s| space(1, s).unwrap()).collect();
        let r = exactness(&sp).unwrap();
        assert_eq!((r.image_ranks[0], r.kernel_dims[1]), (4, 4));
    }
}

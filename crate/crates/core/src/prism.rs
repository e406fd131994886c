//! Spaces, bubble bases and dof sets on the reference tetrahedral prism.
//!
//! Three-dimensional building blocks live on the tetrahedral factor in
//! `(x1, x2, x3)`; the segment factor uses `x4`. Raviart-Thomas fields are
//! stored as 2-forms with raw components `(12, 13, 23) = (v3, -v2, v1)`.

use crate::dofs::{product_scalars, proxy_weights, renumber, trace_dofs, volume_dofs, Dof};
use crate::element::constrained;
use crate::error::{FeecError, Result};
use crate::form::FormPoly;
use crate::geometry::{compositions, segment_barycentrics, tet_barycentrics, CellKind, RefCell};
use crate::linalg::Coords;
use crate::orthopoly::{integrated_jacobi, integrated_legendre, jacobi, legendre, scaled_at};
use crate::poly::Polynomial;
use crate::proxy::{upsilon_inv, Proxy, Vec4};
use crate::rational::{qi, Rational};
use crate::space::{full_forms, homogeneous_forms, scalar_basis, space_p, space_ptilde, PolySpace};

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

/// Closed-form `dim V^{k,s}(W4)`.
pub fn dim_formula(k: i64, s: usize) -> usize {
    let v = match s {
        0 => qi((k + 1) * (k + 1) * (k + 2) * (k + 3)) / qi(6),
        1 => qi(2 * k * (k + 1) * (k + 2) * (k + 3)) / qi(3),
        2 => qi(k * k * (k + 2) * (k + 3) + k * (k + 1) * (k + 1) * (k + 3)) / qi(2),
        3 => qi(k * (k + 1) * (k + 1) * (k + 2)) / qi(6) + qi(k * k * (k + 1) * (k + 3)) / qi(2),
        _ => qi(k * k * (k + 1) * (k + 2)) / qi(6),
    };
    exact(v)
}

/// Closed-form number of boundary dofs.
pub fn trace_dim_formula(k: i64, s: usize) -> usize {
    let v = match s {
        0 => qi(k * (7 * k * k + 17)) / qi(3),
        1 => qi(k * (7 * k * k + 3 * k + 6)),
        2 => qi(k * (7 * k * k + 6 * k + 1)),
        3 => qi(k * (7 * k * k + 9 * k + 2)) / qi(3),
        _ => qi(0),
    };
    exact(v)
}

fn c3(n: i64) -> i64 {
    Rational::binomial(n, 3).to_i64().expect("small")
}

/// Closed-form number of interior dofs, summed over the displayed groups.
pub fn vol_dim_formula(k: i64, s: usize) -> usize {
    let v = match s {
        0 => (k - 1) * c3(k - 1),
        1 => 3 * (k - 1) * c3(k) + k * c3(k - 1),
        2 => 3 * k * c3(k) + 3 * (k - 1) * c3(k + 1),
        3 => 3 * k * c3(k + 1) + (k - 1) * c3(k + 2),
        _ => k * c3(k + 2),
    };
    v.max(0) as usize
}

/// Three- and one-dimensional building-block spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// `CG^k(T3)`, scalars.
    CgTet,
    /// `DG^k(T3)`, scalars.
    DgTet,
    /// `N^k(T3)`, 1-forms.
    Nedelec,
    /// `RT^k(T3)`, 2-forms.
    RaviartThomas,
    /// `CG^k(T1)`.
    CgSeg,
    /// `DG^k(T1)`.
    DgSeg,
}

impl std::str::FromStr for BlockKind {
    type Err = FeecError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "CG3" => BlockKind::CgTet,
            "DG3" => BlockKind::DgTet,
            "N" => BlockKind::Nedelec,
            "RT" => BlockKind::RaviartThomas,
            "CG1" => BlockKind::CgSeg,
            "DG1" => BlockKind::DgSeg,
            _ => return Err(FeecError::InvalidArgument(format!("unknown block space {s:?}"))),
        })
    }
}

/// Building block with the superscript convention of the sequence: `N^m`
/// and `RT^m` are the spaces with full polynomial part `P^m`.
pub fn block(kind: BlockKind, m: i64) -> Result<PolySpace> {
    if m < 0 {
        return Err(FeecError::InvalidArgument(format!("block degree must be non-negative, got {m}")));
    }
    let tag = format!("{kind:?}^{m}");
    match kind {
        BlockKind::CgTet | BlockKind::DgTet => PolySpace::new(3, 0, tag, full_forms(m, 3, 0)),
        BlockKind::CgSeg | BlockKind::DgSeg => PolySpace::new(1, 0, tag, full_forms(m, 1, 0)),
        BlockKind::Nedelec => {
            let hi = constrained(3, 1, "p.x=0", &homogeneous_forms(m + 1, 3, 1), |w| {
                let mut dot = Polynomial::zero(3);
                for i in 0..3 {
                    dot = &dot + &(w.comp(i) * &Polynomial::var(3, i));
                }
                dot.coords()
            })?;
            PolySpace::new(3, 1, "low", full_forms(m, 3, 1))?.direct_sum(&hi, tag)
        }
        BlockKind::RaviartThomas => {
            let mut basis = full_forms(m, 3, 2);
            let x = |i| Polynomial::var(3, i);
            for p in scalar_basis(&space_ptilde(m, 3)) {
                basis.push(FormPoly::new(3, 2, vec![&p * &x(2), -&(&p * &x(1)), &p * &x(0)])?);
            }
            PolySpace::new(3, 2, tag, basis)
        }
    }
}

/// Vector field `(v1, v2, v3)` of an RT 2-form.
pub fn rt_vector(w: &FormPoly) -> [Polynomial; 3] {
    [w.comp(2).clone(), -w.comp(1), w.comp(0).clone()]
}

fn tet4(w: &FormPoly) -> FormPoly {
    w.embed(4, &[0, 1, 2])
}

fn seg4(w: &FormPoly) -> FormPoly {
    w.embed(4, &[3])
}

/// `(U × W)_s = ⊕_{i+j=s} U_i ∧ W_j` with `U = (CG^k, N^{k-1}, RT^{k-1},
/// DG^{k-1})` on the tetrahedron and `W = (CG^k, DG^{k-1} dx4)` on the
/// segment.
pub fn tensor_space(k: i64, s: usize) -> Result<PolySpace> {
    check(k, s)?;
    let u = [
        block(BlockKind::CgTet, k)?,
        block(BlockKind::Nedelec, k - 1)?,
        block(BlockKind::RaviartThomas, k - 1)?,
        PolySpace::new(3, 3, "DG", full_forms(k - 1, 3, 3))?,
    ];
    let w = [block(BlockKind::CgSeg, k)?, PolySpace::new(1, 1, "DG dx", full_forms(k - 1, 1, 1))?];
    let mut gens = Vec::new();
    for j in 0..=1usize {
        if s < j || s - j > 3 {
            continue;
        }
        for a in u[s - j].basis() {
            for b in w[j].basis() {
                gens.push(tet4(a).wedge(&seg4(b))?);
            }
        }
    }
    PolySpace::new(4, s, format!("W4 tensor k={k} s={s}"), gens)
}

fn times(p: &Polynomial, comps: &[Polynomial]) -> Vec<Polynomial> {
    comps.iter().map(|c| p * c).collect()
}

/// Raw 2-form slots `(14, 24, 34)` from a 3-vector.
fn slot_n(v: &[Polynomial]) -> Vec<Polynomial> {
    let z = Polynomial::zero(4);
    vec![z.clone(), z.clone(), v[0].clone(), z.clone(), v[1].clone(), v[2].clone()]
}

/// Raw 2-form slots `(12, 13, 23) = (v3, -v2, v1)`.
fn slot_rt(v: &[Polynomial]) -> Vec<Polynomial> {
    let z = Polynomial::zero(4);
    vec![v[2].clone(), -&v[1], z.clone(), v[0].clone(), z.clone(), z]
}

/// 3-form from the vector proxy `(v1, v2, v3, v4)`.
fn three_form(v: [Polynomial; 4]) -> Result<FormPoly> {
    upsilon_inv(3, &Proxy::Vector(v))
}

fn vec3_to4(v: &[Polynomial]) -> [Polynomial; 4] {
    [v[0].clone(), v[1].clone(), v[2].clone(), Polynomial::zero(4)]
}

fn e4(p: Polynomial) -> [Polynomial; 4] {
    [Polynomial::zero(4), Polynomial::zero(4), Polynomial::zero(4), p]
}

/// The Nédélec-Raviart-Thomas realization, assembled slot by slot.
pub fn nrt_space(k: i64, s: usize) -> Result<PolySpace> {
    check(k, s)?;
    let seg = |m: i64| -> Vec<Polynomial> { scalar_basis(&space_p(m, 1)).iter().map(|p| p.embed(4, &[3])).collect() };
    let tet = |m: i64| -> Vec<Polynomial> { scalar_basis(&space_p(m, 3)).iter().map(|p| p.embed(4, &[0, 1, 2])).collect() };
    let ned: Vec<Vec<Polynomial>> =
        block(BlockKind::Nedelec, k - 1)?.basis().iter().map(|w| w.comps().iter().map(|c| c.embed(4, &[0, 1, 2])).collect()).collect();
    let rt: Vec<Vec<Polynomial>> = block(BlockKind::RaviartThomas, k - 1)?
        .basis()
        .iter()
        .map(|w| rt_vector(w).iter().map(|c| c.embed(4, &[0, 1, 2])).collect())
        .collect();
    let mut gens = Vec::new();
    match s {
        0 => {
            for a in seg(k) {
                for b in tet(k) {
                    gens.push(FormPoly::scalar(&a * &b));
                }
            }
        }
        1 => {
            for a in seg(k) {
                for n in &ned {
                    let mut c = times(&a, n);
                    c.push(Polynomial::zero(4));
                    gens.push(FormPoly::new(4, 1, c)?);
                }
            }
            for a in seg(k - 1) {
                for b in tet(k) {
                    gens.push(FormPoly::new(4, 1, e4(&a * &b).to_vec())?);
                }
            }
        }
        2 => {
            for a in seg(k - 1) {
                for n in &ned {
                    gens.push(FormPoly::new(4, 2, slot_n(&times(&a, n)))?);
                }
            }
            for a in seg(k) {
                for v in &rt {
                    gens.push(FormPoly::new(4, 2, slot_rt(&times(&a, v)))?);
                }
            }
        }
        3 => {
            for a in seg(k) {
                for b in tet(k - 1) {
                    gens.push(three_form(e4(&a * &b))?);
                }
            }
            for a in seg(k - 1) {
                for v in &rt {
                    gens.push(three_form(vec3_to4(&times(&a, v)))?);
                }
            }
        }
        _ => {
            for a in seg(k - 1) {
                for b in tet(k - 1) {
                    gens.push(FormPoly::new(4, 4, vec![&a * &b])?);
                }
            }
        }
    }
    PolySpace::new(4, s, format!("W4 nrt k={k} s={s}"), gens)
}

/// `ν^b λ^α` over `|α| = |b| = k`, segment factor outermost.
pub fn shape_basis(k: i64) -> Vec<Polynomial> {
    let lam = tet_barycentrics(4);
    let nu = segment_barycentrics(4, 3);
    let mut out = Vec::new();
    for b in compositions(2, k) {
        let sp = &nu[0].pow(b[0] as u32) * &nu[1].pow(b[1] as u32);
        for a in compositions(4, k) {
            out.push(a.iter().zip(&lam).fold(sp.clone(), |acc, (&e, l)| &acc * &l.pow(e as u32)));
        }
    }
    out
}

/// Canonical basis of `V^{k,s}(W4)`: shape products for 0-forms, the NRT
/// assembly otherwise.
pub fn space(k: i64, s: usize) -> Result<PolySpace> {
    check(k, s)?;
    if s == 0 {
        return PolySpace::new(4, 0, format!("W4 k={k} s=0"), shape_basis(k).into_iter().map(FormPoly::scalar).collect());
    }
    nrt_space(k, s)
}

/// Factors of the prism bubbles, as polynomials in four variables.
pub struct Factors {
    pub lam: Vec<Polynomial>,
    pub nu: [Polynomial; 2],
    beta: Vec<[Rational; 3]>,
}

/// `(a, b, c, d)` for `r = 1, 2, 3`.
pub const TET_TUPLES: [[usize; 4]; 3] = [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1]];

fn cross(u: &[Rational; 3], v: &[Rational; 3]) -> [Rational; 3] {
    [&u[1] * &v[2] - &u[2] * &v[1], &u[2] * &v[0] - &u[0] * &v[2], &u[0] * &v[1] - &u[1] * &v[0]]
}

impl Factors {
    pub fn new() -> Self {
        let lam = tet_barycentrics(4);
        let zero = vec![qi(0); 4];
        let beta = lam.iter().map(|l| std::array::from_fn(|i| l.deriv(i).eval(&zero))).collect();
        Factors { lam, nu: segment_barycentrics(4, 3), beta }
    }

    /// `ϑ^b(x4) = ν1 ν2`.
    pub fn seg_bubble(&self) -> Polynomial {
        &self.nu[0] * &self.nu[1]
    }

    /// `ϑ^b(x1, x2, x3) = λ1 λ2 λ3 λ4`.
    pub fn tet_bubble(&self) -> Polynomial {
        self.lam.iter().fold(Polynomial::one(4), |a, l| &a * l)
    }

    /// `Φ^{b,r} = λc λd`.
    pub fn phi_b(&self, r: usize) -> Polynomial {
        let t = TET_TUPLES[r];
        &self.lam[t[2]] * &self.lam[t[3]]
    }

    /// `Ψ^{b,r} = λd`.
    pub fn psi_b(&self, r: usize) -> Polynomial {
        self.lam[TET_TUPLES[r][3]].clone()
    }

    /// `N^r = λa ∇λb − λb ∇λa`.
    pub fn n_r(&self, r: usize) -> [Polynomial; 3] {
        let [a, b, ..] = TET_TUPLES[r];
        std::array::from_fn(|i| &self.lam[a].scale(&self.beta[b][i]) - &self.lam[b].scale(&self.beta[a][i]))
    }

    /// `𝒩^r = λa ∇λb×∇λc + λb ∇λc×∇λa + λc ∇λa×∇λb`.
    pub fn cal_n(&self, r: usize) -> [Polynomial; 3] {
        let [a, b, c, _] = TET_TUPLES[r];
        let be = &self.beta;
        let terms = [(a, cross(&be[b], &be[c])), (b, cross(&be[c], &be[a])), (c, cross(&be[a], &be[b]))];
        std::array::from_fn(|i| {
            let mut out = Polynomial::zero(4);
            for (v, cr) in &terms {
                out.add_scaled(&self.lam[*v], &cr[i]);
            }
            out
        })
    }

    /// `∇λa × ∇λb · ∇λc` for tuple `r`.
    pub fn triple(&self, r: usize) -> Rational {
        let [a, b, c, _] = TET_TUPLES[r];
        cross(&self.beta[a], &self.beta[b]).iter().zip(&self.beta[c]).map(|(x, y)| x * y).sum()
    }

    /// `f1(λb; λa+λb) f2(λc; λa+λb+λc) f3(λd)` with homogenized factors.
    fn chain(&self, t: [usize; 4], f: [&Polynomial; 3]) -> Polynomial {
        let l = &self.lam;
        let s2 = &l[t[0]] + &l[t[1]];
        let s3 = &s2 + &l[t[2]];
        let p = &scaled_at(f[0], &l[t[1]], &s2) * &scaled_at(f[1], &l[t[2]], &s3);
        &p * &f[2].compose(&[l[t[3]].clone()])
    }
}

impl Default for Factors {
    fn default() -> Self {
        Self::new()
    }
}

fn tuples3(lo: [i64; 3], nmin: i64, nmax: i64) -> Vec<[u32; 3]> {
    let base: i64 = lo.iter().sum();
    let mut out = Vec::new();
    for n in nmin.max(base)..=nmax {
        for c in compositions(3, n - base) {
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

/// Hierarchical interior families on the tetrahedral factor and the segment.
struct Families {
    f: Factors,
    k: i64,
}

impl Families {
    /// `ϑ_{ijl}`, `n = 4..k`.
    fn theta3(&self) -> Vec<Polynomial> {
        tuples3([2, 1, 1], 4, self.k)
            .into_iter()
            .map(|[i, j, l]| self.f.chain([0, 1, 2, 3], [&il(i), &ij(j, 2 * i), &ij(l, 2 * (i + j))]))
            .collect()
    }

    /// `Φ^r_{ijl}`, `n = 2..k-1`.
    fn phi3(&self, r: usize) -> Vec<[Polynomial; 3]> {
        let n = self.f.n_r(r);
        tuples3([0, 1, 1], 2, self.k - 1)
            .into_iter()
            .map(|[i, j, l]| {
                let s = self.f.chain(TET_TUPLES[r], [&legendre(i), &ij(j, 2 * i + 1), &ij(l, 2 * (i + j))]);
                std::array::from_fn(|c| &s * &n[c])
            })
            .collect()
    }

    /// `Ψ^r_{ijl}`, `n = 1..k-1`.
    fn psi3(&self, r: usize) -> Vec<[Polynomial; 3]> {
        let n = self.f.cal_n(r);
        tuples3([0, 0, 1], 1, self.k - 1)
            .into_iter()
            .map(|[i, j, l]| {
                let s = self.f.chain(TET_TUPLES[r], [&legendre(i), &jacobi(j, 2 * i + 1), &ij(l, 2 * (i + j + 1))]);
                std::array::from_fn(|c| &s * &n[c])
            })
            .collect()
    }

    /// `ϱ_{ijl}`, `n = 0..k-1`.
    fn rho3(&self) -> Vec<Polynomial> {
        tuples3([0, 0, 0], 0, self.k - 1)
            .into_iter()
            .map(|[i, j, l]| self.f.chain([0, 1, 2, 3], [&legendre(i), &jacobi(j, 2 * i + 1), &jacobi(l, 2 * (i + j + 1))]))
            .collect()
    }

    /// `ϑ_m = L_m(ν2)`, `m = 2..k`.
    fn theta1(&self) -> Vec<Polynomial> {
        (2..=self.k.max(1) as u32).map(|m| il(m).compose(&[self.f.nu[1].clone()])).collect()
    }

    /// `ϱ_m = P_m(ν2)`, `m = 0..k-1`.
    fn rho1(&self) -> Vec<Polynomial> {
        (0..self.k as u32).map(|m| legendre(m).compose(&[self.f.nu[1].clone()])).collect()
    }
}

/// Bubbles from the explicit hierarchical families.
pub fn bubbles(k: i64, s: usize) -> Result<Vec<FormPoly>> {
    check(k, s)?;
    let fam = Families { f: Factors::new(), k };
    let mut out = Vec::new();
    match s {
        0 => {
            for a in fam.theta3() {
                for m in fam.theta1() {
                    out.push(FormPoly::scalar(&a * &m));
                }
            }
        }
        1 => {
            for r in 0..3 {
                for v in fam.phi3(r) {
                    for m in fam.theta1() {
                        out.push(FormPoly::new(4, 1, vec3_to4(&times(&m, &v)).to_vec())?);
                    }
                }
            }
            for a in fam.theta3() {
                for m in fam.rho1() {
                    out.push(FormPoly::new(4, 1, e4(&a * &m).to_vec())?);
                }
            }
        }
        2 => {
            for r in 0..3 {
                for v in fam.phi3(r) {
                    for m in fam.rho1() {
                        out.push(FormPoly::new(4, 2, slot_n(&times(&m, &v)))?);
                    }
                }
            }
            for r in 0..3 {
                for v in fam.psi3(r) {
                    for m in fam.theta1() {
                        out.push(FormPoly::new(4, 2, slot_rt(&times(&m, &v)))?);
                    }
                }
            }
        }
        3 => {
            for a in fam.rho3() {
                for m in fam.theta1() {
                    out.push(three_form(e4(&a * &m))?);
                }
            }
            for r in 0..3 {
                for v in fam.psi3(r) {
                    for m in fam.rho1() {
                        out.push(three_form(vec3_to4(&times(&m, &v)))?);
                    }
                }
            }
        }
        _ => {
            for a in fam.rho3() {
                for m in fam.rho1() {
                    out.push(FormPoly::new(4, 4, vec![&a * &m])?);
                }
            }
        }
    }
    Ok(out)
}

fn seg_scalars(m: i64) -> Vec<Polynomial> {
    scalar_basis(&space_p(m, 1)).iter().map(|p| p.embed(4, &[3])).collect()
}

fn tet_scalars(m: i64) -> Vec<Polynomial> {
    scalar_basis(&space_p(m, 3)).iter().map(|p| p.embed(4, &[0, 1, 2])).collect()
}

/// Bubbles in factored form: fixed bubble factors times full polynomial
/// spaces on each factor.
pub fn bubbles_factored(k: i64, s: usize) -> Result<Vec<FormPoly>> {
    check(k, s)?;
    let f = Factors::new();
    let (tb, sb) = (f.tet_bubble(), f.seg_bubble());
    let mut out = Vec::new();
    match s {
        0 => {
            for q in product_scalars(k - 2, k - 4) {
                out.push(FormPoly::scalar(&(&tb * &sb) * &q));
            }
        }
        1 => {
            for r in 0..3 {
                let w = &f.phi_b(r) * &sb;
                for q in product_scalars(k - 2, k - 3) {
                    out.push(FormPoly::new(4, 1, vec3_to4(&times(&(&w * &q), &f.n_r(r))).to_vec())?);
                }
            }
            for q in product_scalars(k - 1, k - 4) {
                out.push(FormPoly::new(4, 1, e4(&tb * &q).to_vec())?);
            }
        }
        2 => {
            for r in 0..3 {
                for q in product_scalars(k - 1, k - 3) {
                    out.push(FormPoly::new(4, 2, slot_n(&times(&(&f.phi_b(r) * &q), &f.n_r(r))))?);
                }
            }
            for r in 0..3 {
                let w = &f.psi_b(r) * &sb;
                for q in product_scalars(k - 2, k - 2) {
                    out.push(FormPoly::new(4, 2, slot_rt(&times(&(&w * &q), &f.cal_n(r))))?);
                }
            }
        }
        3 => {
            for q in product_scalars(k - 2, k - 1) {
                out.push(three_form(e4(&sb * &q))?);
            }
            for r in 0..3 {
                for q in product_scalars(k - 1, k - 2) {
                    out.push(three_form(vec3_to4(&times(&(&f.psi_b(r) * &q), &f.cal_n(r))))?);
                }
            }
        }
        _ => {
            for a in seg_scalars(k - 1) {
                for b in tet_scalars(k - 1) {
                    out.push(FormPoly::new(4, 4, vec![&a * &b])?);
                }
            }
        }
    }
    Ok(out)
}

/// Named groups of interior moment weights.
pub type WeightGroups = Vec<(&'static str, Vec<Vec<Polynomial>>)>;

/// Interior moment weights per group, raw component order.
pub fn volume_weights(k: i64, s: usize) -> Result<WeightGroups> {
    check(k, s)?;
    let f = Factors::new();
    let (tb, sb) = (f.tet_bubble(), f.seg_bubble());
    let vec1 = |v: [Polynomial; 4]| v.to_vec();
    let vec3 = |v: [Polynomial; 4]| proxy_weights(3, &Proxy::Vector(v));
    Ok(match s {
        0 => vec![("vol", product_scalars(k - 2, k - 4).iter().map(|q| vec![&(&tb * &sb) * q]).collect())],
        1 => {
            let mut g1 = Vec::new();
            for r in 0..3 {
                let w = &f.phi_b(r) * &sb;
                for q in product_scalars(k - 2, k - 3) {
                    g1.push(vec1(vec3_to4(&times(&(&w * &q), &f.n_r(r)))));
                }
            }
            let g2 = product_scalars(k - 1, k - 4).iter().map(|q| vec1(e4(&tb * q))).collect();
            vec![("vol-1", g1), ("vol-2", g2)]
        }
        2 => {
            let mut g1 = Vec::new();
            for r in 0..3 {
                for q in product_scalars(k - 1, k - 3) {
                    g1.push(slot_n(&times(&(&f.phi_b(r) * &q), &f.n_r(r))));
                }
            }
            let mut g2 = Vec::new();
            for r in 0..3 {
                let w = &f.psi_b(r) * &sb;
                for q in product_scalars(k - 2, k - 2) {
                    g2.push(slot_rt(&times(&(&w * &q), &f.cal_n(r))));
                }
            }
            vec![("vol-1", g1), ("vol-2", g2)]
        }
        3 => {
            let mut g1 = Vec::new();
            for r in 0..3 {
                for q in product_scalars(k - 1, k - 2) {
                    g1.push(vec3(vec3_to4(&times(&(&f.psi_b(r) * &q), &f.cal_n(r))))?);
                }
            }
            let g2 = product_scalars(k - 2, k - 1).iter().map(|q| vec3(e4(&sb * q))).collect::<Result<_>>()?;
            vec![("vol-1", g1), ("vol-2", g2)]
        }
        _ => vec![("vol", product_scalars(k - 1, k - 1).into_iter().map(|q| vec![q]).collect())],
    })
}

/// Full dof set: boundary dofs entity by entity, then interior moments.
pub fn dofs(k: i64, s: usize) -> Result<Vec<Dof>> {
    check(k, s)?;
    let cell = RefCell::new(CellKind::TetPrism);
    let mut out = if s < 4 { trace_dofs(&cell, s, k)? } else { Vec::new() };
    for (g, ws) in volume_weights(k, s)? {
        out.extend(volume_dofs(&cell, s, g, ws));
    }
    renumber(&mut out);
    Ok(out)
}

/// Three-dimensional divergence of a field in the first three variables.
pub fn div3(v: &[Polynomial; 3]) -> Polynomial {
    (0..3).fold(Polynomial::zero(v[0].nvars()), |acc, i| &acc + &v[i].deriv(i))
}

/// Embeds a 3-vector of polynomials as a 4-vector with zero last entry.
pub fn lift(v: &[Polynomial; 3]) -> Vec4 {
    vec3_to4(v)
}

//! Facet traces, the raw-to-local identification, entity degrees of freedom
//! and dof-matrix assembly.
//!
//! Every entity carries the affine chart of its sorted vertex list (see
//! [`RefCell::chart`]). Local traces are chart pullbacks, and entity dofs are
//! moments `Σ_c ∫ w_c (φ^*ω)_c` of the pulled-back components against
//! weights on the chart domain. Cell-interior dofs use the identity chart
//! on the reference cell.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{FeecError, Result};
use crate::form::FormPoly;
use crate::geometry::{Chart, Entity, EntityKind, RefCell};
use crate::integrate::{integrate, Domain};
use crate::linalg::Matrix;
use crate::poly::{MultiIndex, Polynomial};
use crate::proxy::{const_vec, cross_vm, skew_outer, upsilon, Proxy, SkewMat4};
use crate::rational::{qi, Rational};
use crate::space::{scalar_basis, space_p, space_q};

/// Trace of a form on a facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceResult {
    pub entity: Option<Entity>,
    /// Facet normal used by `raw`; its length is the chart volume factor.
    pub normal: Vec<Rational>,
    /// `u|_F`, `½(E⊗n − n⊗E)|_F`, `(n×F)|_F` or `(G·n)|_F`, composed with
    /// the chart (polynomials in the chart coordinates).
    pub raw: Proxy,
    /// Chart proxy: scalar, 3-vector of the pulled-back 1-form,
    /// `(ω_23, −ω_13, ω_12)` of the pulled-back 2-form, or the pulled-back
    /// 3-form scalar.
    pub local: Vec<Polynomial>,
}

/// Trace of `w` on the facet spanned by `chart`, with the raw trace built
/// from `normal` (parallel to the chart's weighted normal).
pub fn trace_on_chart(w: &FormPoly, chart: &Chart, normal: &[Rational]) -> Result<TraceResult> {
    let s = w.degree();
    if s == 4 {
        return Err(FeecError::InvalidDegree("traces of 4-forms are not defined".into()));
    }
    if chart.dim() != 3 || w.dim() != 4 {
        return Err(FeecError::InvalidArgument("traces are taken on 3D facets of 4D cells".into()));
    }
    let x = chart_coords(chart);
    let on_f = |p: &Polynomial| p.compose(&x);
    let n = const_vec(3, normal);
    let raw = match upsilon(w) {
        Proxy::Scalar(u) => Proxy::Scalar(on_f(&u)),
        Proxy::Vector(v) if s == 1 => Proxy::Skew(skew_outer(&v.map(|p| on_f(&p)), &n)),
        Proxy::Vector(g) => {
            let mut acc = Polynomial::zero(3);
            for i in 0..4 {
                acc.add_scaled(&on_f(&g[i]), &normal[i]);
            }
            Proxy::Scalar(acc)
        }
        Proxy::Skew(f) => Proxy::Vector(cross_vm(&n, &f.map(on_f))),
    };
    let pulled = chart.pullback(w);
    let c = pulled.comps();
    let local = match s {
        2 => vec![c[2].clone(), -&c[1], c[0].clone()],
        _ => c.to_vec(),
    };
    Ok(TraceResult { entity: None, normal: normal.to_vec(), raw, local })
}

/// Trace on a facet of `cell`, using the outward weighted normal.
pub fn trace(w: &FormPoly, cell: &RefCell, facet: &Entity) -> Result<TraceResult> {
    if facet.kind.dim() != 3 {
        return Err(FeecError::InvalidArgument(format!("{} is not a facet", facet.kind.name())));
    }
    let chart = cell.chart(facet);
    let mut t = trace_on_chart(w, &chart, &cell.outward_normal(facet)?)?;
    t.entity = Some(facet.clone());
    Ok(t)
}

/// `p` composed with the chart, as a polynomial in chart coordinates.
pub fn restrict_to_chart(p: &Polynomial, chart: &Chart) -> Polynomial {
    p.compose(&chart_coords(chart))
}

fn chart_coords(chart: &Chart) -> Vec<Polynomial> {
    let d = chart.dim();
    (0..4)
        .map(|i| {
            let c: Vec<Rational> = chart.dirs.iter().map(|v| v[i].clone()).collect();
            Polynomial::affine(d, chart.origin[i].clone(), &c)
        })
        .collect()
}

/// Recovers the local trace from the raw one on the chart's facet:
/// `E·t = −2 n·(R t)/|n|²` for 1-forms, `ω(u, v) = det(P, n, u, v)/|n|²`
/// for 2-forms, and the orientation sign for 3-forms.
pub fn xi(t: &TraceResult, chart: &Chart, s: usize) -> Result<Vec<Polynomial>> {
    let n = &t.normal;
    let nn: Rational = n.iter().map(|x| x * x).sum();
    let chart_n = chart.weighted_normal()?;
    match (s, &t.raw) {
        (0, Proxy::Scalar(u)) => Ok(vec![u.clone()]),
        (1, Proxy::Skew(r)) => Ok(chart
            .dirs
            .iter()
            .map(|d| {
                let mut acc = Polynomial::zero(3);
                for i in 0..4 {
                    for j in 0..4 {
                        acc.add_scaled(r.get(i, j), &(&n[i] * &d[j]));
                    }
                }
                acc.scale(&(qi(-2) / nn.clone()))
            })
            .collect()),
        (2, Proxy::Vector(p)) => {
            let d = &chart.dirs;
            let omega = |a: usize, b: usize| {
                // det(P, n, u, v) by expansion along the polynomial column
                let mut acc = Polynomial::zero(3);
                for i in 0..4 {
                    let minor: Vec<Vec<Rational>> =
                        (0..4).filter(|&r| r != i).map(|r| vec![n[r].clone(), d[a][r].clone(), d[b][r].clone()]).collect();
                    let sign = if i % 2 == 0 { qi(1) } else { qi(-1) };
                    acc.add_scaled(&p[i], &(sign * crate::form::small_det(&minor)));
                }
                acc.scale(&(qi(1) / nn.clone()))
            };
            Ok(vec![omega(1, 2), -&omega(0, 2), omega(0, 1)])
        }
        (3, Proxy::Scalar(g)) => {
            let same = !n.iter().zip(&chart_n).map(|(a, b)| a * b).sum::<Rational>().is_negative();
            Ok(vec![if same { g.clone() } else { -g }])
        }
        _ => Err(FeecError::DimensionMismatch(format!("raw trace does not fit a {s}-form"))),
    }
}

/// How a dof acts on the pulled-back form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DofRule {
    /// Value of a 0-form at the chart origin.
    PointEval,
    /// `Σ_c ∫ w_c (φ^*ω)_c` over the chart domain, one weight per raw
    /// component of the pulled-back form.
    Moment(Vec<Polynomial>),
}

/// One linear functional of a dof set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dof {
    pub id: usize,
    pub entity: Entity,
    pub s: usize,
    /// Dof family within the entity, e.g. `M1` / `M2` or `vol-1`.
    pub group: String,
    pub chart: Chart,
    pub rule: DofRule,
}

impl Dof {
    /// Exact value of the dof on `w`.
    pub fn apply(&self, w: &FormPoly) -> Result<Rational> {
        if w.degree() != self.s || w.dim() != 4 {
            return Err(FeecError::DimensionMismatch(format!("dof for {}-forms applied to a {}-form", self.s, w.degree())));
        }
        match &self.rule {
            DofRule::PointEval => Ok(w.comp(0).eval(&self.chart.origin)),
            DofRule::Moment(ws) => {
                let pulled = self.pull(w);
                let mut total = Rational::zero();
                for (wc, pc) in ws.iter().zip(pulled.comps()) {
                    if !wc.is_zero() && !pc.is_zero() {
                        total += integrate(&(wc * pc), self.chart.domain)?;
                    }
                }
                Ok(total)
            }
        }
    }

    fn pull(&self, w: &FormPoly) -> FormPoly {
        if self.entity.kind == EntityKind::Cell {
            w.clone()
        } else {
            self.chart.pullback(w)
        }
    }
}

fn scalars_p(m: i64, d: usize) -> Vec<Polynomial> {
    scalar_basis(&space_p(m, d))
}

fn scalars_q(degs: &[i64]) -> Vec<Polynomial> {
    scalar_basis(&space_q(degs))
}

/// `Q^a(τ) × P^b(T2)` in chart variables `(t1, t2, τ)`.
pub fn triprism_scalars(a: i64, b: i64) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for m in MultiIndex::up_to_degree(2, b) {
        for j in 0..=a.max(-1) {
            out.push(Polynomial::monomial(3, MultiIndex::new(&[m.exp(0), m.exp(1), j as u32]), Rational::one()));
        }
    }
    if a < 0 {
        out.clear();
    }
    out
}

/// Products `f(x1, x2, x3) g(x4)` for `f ∈ P^b(T3)`, `g ∈ P^a(T1)`, in four
/// variables.
pub fn product_scalars(a: i64, b: i64) -> Vec<Polynomial> {
    let mut out = Vec::new();
    if a < 0 || b < 0 {
        return out;
    }
    for m in MultiIndex::up_to_degree(3, b) {
        for j in 0..=a as u32 {
            out.push(Polynomial::monomial(4, MultiIndex::new(&[m.exp(0), m.exp(1), m.exp(2), j]), Rational::one()));
        }
    }
    out
}

/// Weight vector with `p` in slot `c` of `n` components.
pub fn place(n: usize, c: usize, p: Polynomial) -> Vec<Polynomial> {
    let nv = p.nvars();
    let mut w = vec![Polynomial::zero(nv); n];
    w[c] = p;
    w
}

type Group = (&'static str, Vec<Vec<Polynomial>>);

fn single(name: &'static str, ncomp: usize, comp: usize, ps: Vec<Polynomial>, sign: i64) -> Group {
    (name, ps.into_iter().map(|p| place(ncomp, comp, p.scale(&qi(sign)))).collect())
}

fn each_comp(name: &'static str, ncomp: usize, ps: &[Polynomial]) -> Group {
    let mut ws = Vec::new();
    for c in 0..ncomp {
        for p in ps {
            ws.push(place(ncomp, c, p.clone()));
        }
    }
    (name, ws)
}

/// Weight groups for the dofs of an `s`-form on a boundary entity of the
/// given kind, in the entity chart's raw component order.
pub fn entity_weights(kind: EntityKind, s: usize, k: i64) -> Result<Vec<Group>> {
    use EntityKind::*;
    let bad = || Err(FeecError::InvalidArgument(format!("no {s}-form dofs on a {}", kind.name())));
    if s > kind.dim() || kind == Vertex || kind == Cell {
        return bad();
    }
    Ok(match (kind, s) {
        (Edge, 0) => vec![single("", 1, 0, scalars_p(k - 2, 1), 1)],
        (Edge, 1) => vec![single("", 1, 0, scalars_p(k - 1, 1), 1)],
        (Triangle, 0) => vec![single("", 1, 0, scalars_p(k - 3, 2), 1)],
        (Triangle, 1) => vec![each_comp("", 2, &scalars_p(k - 2, 2))],
        (Triangle, 2) => vec![single("", 1, 0, scalars_p(k - 1, 2), 1)],
        (Quad, 0) => vec![single("", 1, 0, scalars_q(&[k - 2, k - 2]), 1)],
        // rotated tangential moments: (0, q1) and (−q2, 0)
        (Quad, 1) => vec![single("", 2, 1, scalars_q(&[k - 2, k - 1]), 1), single("", 2, 0, scalars_q(&[k - 1, k - 2]), -1)],
        (Quad, 2) => vec![single("", 1, 0, scalars_q(&[k - 1, k - 1]), 1)],
        (Tet, 0) => vec![single("", 1, 0, scalars_p(k - 4, 3), 1)],
        (Tet, 1) => vec![each_comp("", 3, &scalars_p(k - 3, 3))],
        // proxy (ω_23, −ω_13, ω_12) against (P^{k−2})^3
        (Tet, 2) => {
            let ps = scalars_p(k - 2, 3);
            let mut g = single("", 3, 2, ps.clone(), 1);
            g.1.extend(single("", 3, 1, ps.clone(), -1).1);
            g.1.extend(single("", 3, 0, ps, 1).1);
            vec![g]
        }
        (Tet, 3) => vec![single("", 1, 0, scalars_p(k - 1, 3), 1)],
        (PrismFacet, 0) => vec![single("", 1, 0, triprism_scalars(k - 2, k - 3), 1)],
        (PrismFacet, 1) => {
            let m1 = each_comp("M1", 2, &triprism_scalars(k - 2, k - 2));
            let m1 = (
                "M1",
                m1.1.into_iter()
                    .map(|mut w| {
                        w.push(Polynomial::zero(3));
                        w
                    })
                    .collect(),
            );
            vec![m1, single("M2", 3, 2, triprism_scalars(k - 1, k - 3), 1)]
        }
        // proxy (ω_{t2τ}, −ω_{t1τ}, ω_{t1t2}); raw order (t1t2, t1τ, t2τ)
        (PrismFacet, 2) => {
            let ps = triprism_scalars(k - 1, k - 2);
            let mut m1 = single("M1", 3, 2, ps.clone(), 1);
            m1.1.extend(single("M1", 3, 1, ps, -1).1);
            vec![m1, single("M2", 3, 0, triprism_scalars(k - 2, k - 1), 1)]
        }
        (PrismFacet, 3) => vec![single("", 1, 0, triprism_scalars(k - 1, k - 1), 1)],
        _ => return bad(),
    })
}

/// Dofs of an `s`-form attached to one boundary entity of `cell`.
pub fn entity_dofs(cell: &RefCell, e: &Entity, s: usize, k: i64) -> Result<Vec<Dof>> {
    let chart = cell.chart(e);
    let mk = |group: &str, rule| Dof { id: 0, entity: e.clone(), s, group: group.to_string(), chart: chart.clone(), rule };
    if e.kind == EntityKind::Vertex {
        return if s == 0 {
            Ok(vec![mk("", DofRule::PointEval)])
        } else {
            Err(FeecError::InvalidArgument(format!("no {s}-form dofs on a vertex")))
        };
    }
    Ok(entity_weights(e.kind, s, k)?
        .into_iter()
        .flat_map(|(g, ws)| ws.into_iter().map(move |w| (g, w)))
        .map(|(g, w)| mk(g, DofRule::Moment(w)))
        .collect())
}

/// All boundary dofs of `s`-forms on `cell`, entity by entity in lattice
/// order, numbered from 0.
pub fn trace_dofs(cell: &RefCell, s: usize, k: i64) -> Result<Vec<Dof>> {
    let mut out = Vec::new();
    for e in cell.trace_entities(s) {
        out.extend(entity_dofs(cell, e, s, k)?);
    }
    renumber(&mut out);
    Ok(out)
}

/// Interior moment dofs `∫_K Σ_c w_c ω_c` on the reference cell.
pub fn volume_dofs(cell: &RefCell, s: usize, group: &str, weights: Vec<Vec<Polynomial>>) -> Vec<Dof> {
    let e = cell.entities_of(EntityKind::Cell)[0].clone();
    let chart = cell.chart(&e);
    weights
        .into_iter()
        .map(|w| Dof { id: 0, entity: e.clone(), s, group: group.to_string(), chart: chart.clone(), rule: DofRule::Moment(w) })
        .collect()
}

pub fn renumber(dofs: &mut [Dof]) {
    for (i, d) in dofs.iter_mut().enumerate() {
        d.id = i;
    }
}

/// Raw-component weights `w` with `Σ_c w_c ω_c = pairing(Υ_s ω, q)`, where
/// the pairing is the product, dot product, or `F : Q`.
pub fn proxy_weights(s: usize, q: &Proxy) -> Result<Vec<Polynomial>> {
    match (s, q) {
        (0 | 4, Proxy::Scalar(p)) => Ok(vec![p.clone()]),
        (1, Proxy::Vector(v)) => Ok(v.to_vec()),
        (2, Proxy::Skew(m)) => Ok(crate::proxy::mtov(m).to_vec()),
        (3, Proxy::Vector(v)) => Ok(vec![-&v[3], v[2].clone(), -&v[1], v[0].clone()]),
        _ => Err(FeecError::DimensionMismatch(format!("test proxy does not fit a {s}-form"))),
    }
}

/// Skew test matrix from six raw-order entries.
pub fn skew_from_raw(w: &[Polynomial]) -> SkewMat4 {
    crate::proxy::vtom(&[w[0].clone(), w[1].clone(), w[2].clone(), w[3].clone(), w[4].clone(), w[5].clone()])
}

struct Moments {
    cache: HashMap<(Domain, MultiIndex), Rational>,
}

impl Moments {
    fn get(&mut self, d: Domain, m: MultiIndex, nvars: usize) -> Rational {
        self.cache
            .entry((d, m))
            .or_insert_with(|| integrate(&Polynomial::monomial(nvars, m, Rational::one()), d).expect("chart domain"))
            .clone()
    }
}

/// Square or rectangular matrix `M[i][j] = dofs[i](basis[j])`.
///
/// Pullbacks are computed once per entity and moments are taken monomial by
/// monomial with a cache of monomial integrals.
pub fn dof_matrix(dofs: &[Dof], basis: &[FormPoly]) -> Result<Matrix> {
    if let Some(b) = basis.iter().find(|b| dofs.first().is_some_and(|d| d.s != b.degree())) {
        return Err(FeecError::DimensionMismatch(format!("{}-form basis against dofs of another degree", b.degree())));
    }
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for (i, d) in dofs.iter().enumerate() {
        match groups.last_mut() {
            Some((start, end)) if dofs[*start].entity == d.entity => *end = i + 1,
            _ => groups.push((i, i + 1)),
        }
    }
    let blocks: Vec<Vec<Vec<Rational>>> = groups
        .par_iter()
        .map(|&(start, end)| {
            let first = &dofs[start];
            let pulled: Vec<FormPoly> = basis.iter().map(|b| first.pull(b)).collect();
            let mut moments = Moments { cache: HashMap::new() };
            dofs[start..end]
                .iter()
                .map(|d| match &d.rule {
                    DofRule::PointEval => basis.iter().map(|b| b.comp(0).eval(&d.chart.origin)).collect(),
                    DofRule::Moment(ws) => {
                        let dom = d.chart.domain;
                        // functional on monomials, per component
                        let mut fun: Vec<HashMap<MultiIndex, Rational>> = vec![HashMap::new(); ws.len()];
                        pulled
                            .iter()
                            .map(|p| {
                                let mut total = Rational::zero();
                                for (c, pc) in p.comps().iter().enumerate() {
                                    let wc = &ws[c];
                                    if wc.is_zero() {
                                        continue;
                                    }
                                    let nv = pc.nvars();
                                    for (m, a) in pc.terms() {
                                        let v = match fun[c].get(m) {
                                            Some(v) => v.clone(),
                                            None => {
                                                let mut v = Rational::zero();
                                                for (m2, b) in wc.terms() {
                                                    v += b * &moments.get(dom, m.mul(m2), nv);
                                                }
                                                fun[c].insert(*m, v.clone());
                                                v
                                            }
                                        };
                                        total += a * &v;
                                    }
                                }
                                total
                            })
                            .collect()
                    }
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(blocks.into_iter().flatten().collect()).or_else(|_| Ok(Matrix::zeros(dofs.len(), basis.len())))
}

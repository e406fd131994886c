//! Verification suites over both reference cells, run as independent cases
//! on a worker pool and collected into a sorted report.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dofs::trace_dofs;
use crate::element::{check_bubbles, exactness, unisolvency_det, BubbleReport};
use crate::error::{FeecError, Result};
use crate::form::{combos, FormPoly};
use crate::geometry::{CellKind, CellMap, Entity, RefCell};
use crate::integrate::integrate;
use crate::poly::{MultiIndex, Polynomial};
use crate::proxy::{curl_skew, curl_vec, div_skew, div_vec, dot, frob, grad, mat_vec, position, skw_grad, upsilon};
use crate::rational::{q, qi, Rational};
use crate::space::PolySpace;
use crate::{dofs, pentatope, prism};

/// Seed of every randomized check; reports are reproducible.
pub const SEED: u64 = 0x4d_4645_4543;

/// Verification suites selectable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Dims,
    Exactness,
    Unisolvency,
    Bubbles,
    Traces,
    TensorVsNrt,
    Pullback,
}

impl Check {
    pub const ALL: [Check; 7] =
        [Check::Dims, Check::Exactness, Check::Unisolvency, Check::Bubbles, Check::Traces, Check::TensorVsNrt, Check::Pullback];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Dims => "dims",
            Check::Exactness => "exactness",
            Check::Unisolvency => "unisolvency",
            Check::Bubbles => "bubbles",
            Check::Traces => "traces",
            Check::TensorVsNrt => "tensor-vs-nrt",
            Check::Pullback => "pullback",
        }
    }
}

impl std::str::FromStr for Check {
    type Err = FeecError;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL.iter().find(|c| c.name() == s).copied().ok_or_else(|| FeecError::Parse(format!("unknown check '{s}'")))
    }
}

/// Parses a comma-separated check list.
pub fn parse_checks(list: &str) -> Result<Vec<Check>> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

/// One verification outcome. `s` and `k` are absent for cell-level checks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CheckRecord {
    pub cell: String,
    pub s: Option<usize>,
    pub k: Option<i64>,
    pub check: String,
    pub status: Status,
    pub witness: String,
}

/// Test hook: adds `x1^{k+1}` to component 0 of one basis member of one
/// canonical space, pushing it outside every space of the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corruption {
    pub cell: CellKind,
    pub s: usize,
    pub k: i64,
    pub member: usize,
}

impl std::str::FromStr for Corruption {
    type Err = FeecError;
    /// `cell:s:k:member`, e.g. `prism:2:1:0`.
    fn from_str(v: &str) -> Result<Self> {
        let bad = || FeecError::Parse(format!("corruption must be cell:s:k:member, got {v:?}"));
        let parts: Vec<&str> = v.split(':').collect();
        if parts.len() != 4 {
            return Err(bad());
        }
        Ok(Corruption {
            cell: parts[0].parse()?,
            s: parts[1].parse().map_err(|_| bad())?,
            k: parts[2].parse().map_err(|_| bad())?,
            member: parts[3].parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub cells: Vec<CellKind>,
    pub max_k: i64,
    pub checks: Vec<Check>,
    pub corrupt: Option<Corruption>,
    /// Worker cap; `None` uses the machine default.
    pub threads: Option<usize>,
}

impl VerifyOptions {
    pub fn new(cells: Vec<CellKind>, max_k: i64) -> Self {
        VerifyOptions { cells, max_k, checks: Check::ALL.to_vec(), corrupt: None, threads: None }
    }
}

/// Worker cap from `FEEC4D_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("FEEC4D_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub records: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let mut out = String::new();
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(
                out,
                "{status} {:<9} s={:<1} k={:<1} {:<13} {}",
                r.cell,
                opt(r.s.map(|v| v.to_string())),
                opt(r.k.map(|v| v.to_string())),
                r.check,
                r.witness
            );
        }
        let nfail = self.failures().count();
        let _ = writeln!(out, "{} checks, {} failed", self.records.len(), nfail);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("cell,s,k,check,status,witness\n");
        for r in &self.records {
            let status = if r.status == Status::Pass { "PASS" } else { "FAIL" };
            let w = r.witness.replace('"', "\"\"");
            let _ = writeln!(
                out,
                "{},{},{},{},{status},\"{w}\"",
                r.cell,
                r.s.map(|v| v.to_string()).unwrap_or_default(),
                r.k.map(|v| v.to_string()).unwrap_or_default(),
                r.check
            );
        }
        out
    }
}

/// Canonical basis of `V^{k,s}` on `cell`.
pub fn canonical_space(cell: CellKind, k: i64, s: usize) -> Result<PolySpace> {
    match cell {
        CellKind::Pentatope => pentatope::space(k, s),
        CellKind::TetPrism => prism::space(k, s),
    }
}

pub fn dim_formula(cell: CellKind, k: i64, s: usize) -> usize {
    match cell {
        CellKind::Pentatope => pentatope::dim_formula(k, s),
        CellKind::TetPrism => prism::dim_formula(k, s),
    }
}

pub fn trace_dim_formula(cell: CellKind, k: i64, s: usize) -> usize {
    match cell {
        CellKind::Pentatope => pentatope::trace_dim_formula(k, s),
        CellKind::TetPrism => prism::trace_dim_formula(k, s),
    }
}

pub fn vol_dim_formula(cell: CellKind, k: i64, s: usize) -> usize {
    match cell {
        CellKind::Pentatope => pentatope::vol_dim_formula(k, s),
        CellKind::TetPrism => prism::vol_dim_formula(k, s),
    }
}

pub fn cell_dofs(cell: CellKind, k: i64, s: usize) -> Result<Vec<dofs::Dof>> {
    match cell {
        CellKind::Pentatope => pentatope::dofs(k, s),
        CellKind::TetPrism => prism::dofs(k, s),
    }
}

/// Bubble families of a cell; the prism has the explicit and the factored
/// family.
pub fn bubble_families(cell: CellKind, k: i64, s: usize) -> Result<Vec<(&'static str, Vec<FormPoly>)>> {
    Ok(match cell {
        CellKind::Pentatope => vec![("explicit", pentatope::bubbles(k, s)?)],
        CellKind::TetPrism => vec![("explicit", prism::bubbles(k, s)?), ("factored", prism::bubbles_factored(k, s)?)],
    })
}

/// Applies the corruption hook if it targets `(cell, k, s)`.
pub fn corrupted(space: PolySpace, cell: CellKind, k: i64, s: usize, c: Option<Corruption>) -> PolySpace {
    match c {
        Some(c) if c.cell == cell && c.k == k && c.s == s && c.member < space.dim() => {
            let (nvars, tag) = (space.nvars(), space.tag().to_string());
            let mut basis = space.into_basis();
            let w = &basis[c.member];
            let mut comps = w.comps().to_vec();
            comps[0] = &comps[0] + &Polynomial::var(nvars, 0).pow((k + 1) as u32);
            basis[c.member] = FormPoly::new(w.dim(), s, comps).expect("same shape");
            PolySpace::new_unchecked(nvars, s, tag + " (corrupted)", basis)
        }
        _ => space,
    }
}

fn space_for(cell: CellKind, k: i64, s: usize, c: Option<Corruption>) -> Result<PolySpace> {
    Ok(corrupted(canonical_space(cell, k, s)?, cell, k, s, c))
}

#[derive(Clone, Copy, Debug)]
enum Case {
    Sk(CellKind, Check, usize, i64),
    K(CellKind, Check, i64),
    Cell(CellKind, Check),
}

fn cases(opts: &VerifyOptions) -> Vec<Case> {
    let mut out = Vec::new();
    for &cell in &opts.cells {
        for &check in &opts.checks {
            match check {
                Check::Exactness => out.extend((1..=opts.max_k).map(|k| Case::K(cell, check, k))),
                Check::Pullback => out.push(Case::Cell(cell, check)),
                Check::TensorVsNrt if cell == CellKind::Pentatope => {
                    out.push(Case::Cell(cell, check));
                    out.extend((1..=opts.max_k).flat_map(|k| (1..=3).map(move |s| Case::Sk(cell, check, s, k))));
                }
                Check::Traces => {
                    out.push(Case::Cell(cell, check));
                    out.extend((1..=opts.max_k).flat_map(|k| (0..=4).map(move |s| Case::Sk(cell, check, s, k))));
                }
                _ => out.extend((1..=opts.max_k).flat_map(|k| (0..=4).map(move |s| Case::Sk(cell, check, s, k)))),
            }
        }
    }
    out
}

fn record(cell: CellKind, s: Option<usize>, k: Option<i64>, check: Check, outcome: Result<(bool, String)>) -> CheckRecord {
    let (status, witness) = match outcome {
        Ok((true, w)) => (Status::Pass, w),
        Ok((false, w)) => (Status::Fail, w),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    CheckRecord { cell: cell.name().into(), s, k, check: check.name().into(), status, witness }
}

fn run_case(case: Case, c: Option<Corruption>) -> CheckRecord {
    match case {
        Case::Sk(cell, check, s, k) => {
            let outcome = match check {
                Check::Dims => check_dims(cell, k, s, c),
                Check::Unisolvency => check_unisolvency(cell, k, s, c),
                Check::Bubbles => check_bubble_families(cell, k, s, c),
                Check::Traces => check_trace_counts(cell, k, s),
                Check::TensorVsNrt => check_alternative(cell, k, s),
                _ => unreachable!("not an (s, k) case"),
            };
            record(cell, Some(s), Some(k), check, outcome)
        }
        Case::K(cell, check, k) => record(cell, None, Some(k), check, check_exactness(cell, k, c)),
        Case::Cell(cell, check) => {
            let outcome = match check {
                Check::Pullback => check_pullback(cell, 10),
                Check::Traces => check_ibp(cell, 5),
                _ => check_structure_lemmas(),
            };
            record(cell, None, None, check, outcome)
        }
    }
}

/// Runs every selected case, honoring the worker cap, and returns the
/// records sorted by `(cell, s, k, check)`.
pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.max_k < 1 {
        return Err(FeecError::InvalidArgument("max-k must be at least 1".into()));
    }
    let cases = cases(opts);
    let work = || cases.par_iter().map(|&cs| run_case(cs, opts.corrupt)).collect::<Vec<_>>();
    let mut records = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| FeecError::InvalidArgument(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    records.sort();
    Ok(VerifyReport { records })
}

fn check_dims(cell: CellKind, k: i64, s: usize, c: Option<Corruption>) -> Result<(bool, String)> {
    let sp = space_for(cell, k, s, c)?;
    let rank = sp.rank();
    let formula = dim_formula(cell, k, s);
    let alt = match cell {
        CellKind::Pentatope => pentatope::koszul_space(k, s)?,
        CellKind::TetPrism => prism::tensor_space(k, s)?,
    };
    let same = alt.span_equal(&sp);
    let ok = rank == formula && sp.dim() == formula && same;
    Ok((ok, format!("rank={rank} formula={formula} alt_span_equal={same}")))
}

fn check_unisolvency(cell: CellKind, k: i64, s: usize, c: Option<Corruption>) -> Result<(bool, String)> {
    let sp = space_for(cell, k, s, c)?;
    let d = cell_dofs(cell, k, s)?;
    if d.len() != sp.dim() {
        return Ok((false, format!("dofs={} dim={}", d.len(), sp.dim())));
    }
    let det = unisolvency_det(&d, &sp)?;
    Ok((!det.is_zero(), format!("n={} det={}", d.len(), det.to_pq())))
}

fn bubble_witness(name: &str, r: &BubbleReport) -> String {
    let nm = r.first_non_member.map(|i| i.to_string()).unwrap_or_else(|| "none".into());
    format!("{name}: count={} expected={} rank={} non_member={nm} nonzero_traces={}", r.count, r.expected, r.rank, r.nonzero_traces)
}

fn check_bubble_families(cell: CellKind, k: i64, s: usize, c: Option<Corruption>) -> Result<(bool, String)> {
    let sp = space_for(cell, k, s, c)?;
    let tr = if s < 4 { trace_dofs(&RefCell::new(cell), s, k)? } else { Vec::new() };
    let expected = vol_dim_formula(cell, k, s);
    let mut ok = true;
    let mut parts = Vec::new();
    let mut spans = Vec::new();
    for (name, fam) in bubble_families(cell, k, s)? {
        let r = check_bubbles(&sp, &fam, &tr, expected)?;
        ok &= r.ok();
        parts.push(bubble_witness(name, &r));
        spans.push(fam);
    }
    if spans.len() == 2 && ok {
        let a = PolySpace::new_unchecked(4, s, "a", spans.remove(0));
        let b = PolySpace::new_unchecked(4, s, "b", spans.remove(0));
        let same = a.span_equal(&b);
        ok &= same;
        parts.push(format!("families_span_equal={same}"));
    }
    Ok((ok, parts.join("; ")))
}

fn check_trace_counts(cell: CellKind, k: i64, s: usize) -> Result<(bool, String)> {
    let n = if s < 4 { trace_dofs(&RefCell::new(cell), s, k)?.len() } else { 0 };
    let f = trace_dim_formula(cell, k, s);
    let total = cell_dofs(cell, k, s)?.len();
    let dim = dim_formula(cell, k, s);
    Ok((n == f && total == dim, format!("trace={n} formula={f} total={total} dim={dim}")))
}

/// Prism: tensor-product versus NRT spans. Pentatope: Koszul versus
/// constraint-kernel spans.
fn check_alternative(cell: CellKind, k: i64, s: usize) -> Result<(bool, String)> {
    let (a, b) = match cell {
        CellKind::Pentatope => (pentatope::koszul_space(k, s)?, pentatope::constraint_space(k, s)?),
        CellKind::TetPrism => (prism::tensor_space(k, s)?, prism::nrt_space(k, s)?),
    };
    let same = a.span_equal(&b);
    Ok((same && a.dim() == b.dim(), format!("dims={}/{} span_equal={same}", a.dim(), b.dim())))
}

fn check_exactness(cell: CellKind, k: i64, c: Option<Corruption>) -> Result<(bool, String)> {
    let spaces: Vec<PolySpace> = (0..=4).map(|s| space_for(cell, k, s, c)).collect::<Result<_>>()?;
    let r = exactness(&spaces)?;
    Ok((
        r.is_exact(),
        format!(
            "dims={:?} image_ranks={:?} kernel_dims={:?} into={:?} dd_zero={}",
            r.dims, r.image_ranks, r.kernel_dims, r.maps_into, r.dd_zero
        ),
    ))
}

/// `B_r x = 0`, rank of `C(x)` at random points, and the Koszul images.
fn check_structure_lemmas() -> Result<(bool, String)> {
    let x = position(4);
    let bx = pentatope::b_matrices().iter().all(|b| mat_vec(b, &x).iter().all(|p| p.is_zero()));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ranks: Vec<usize> = (0..5)
        .map(|_| {
            let pt: Vec<Rational> = (0..4).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=7))).collect();
            pentatope::c_matrix_at(&pt).rank()
        })
        .collect();
    let images = pentatope::koszul_image_checks()?;
    let ok = bx && ranks.iter().all(|&r| r == 3) && images.iter().all(|(_, b)| *b);
    let failed: Vec<&str> = images.iter().filter(|(_, b)| !b).map(|(n, _)| *n).collect();
    Ok((ok, format!("Bx=0:{bx} C_ranks={ranks:?} koszul_failures={failed:?}")))
}

/// A form whose components are random quadratics with small integer
/// coefficients.
pub fn random_form(rng: &mut impl Rng, s: usize) -> FormPoly {
    let ms = MultiIndex::up_to_degree(4, 2);
    let comps = (0..combos(4, s).len()).map(|_| Polynomial::from_terms(4, ms.iter().map(|m| (*m, qi(rng.gen_range(-4..=4)))))).collect();
    FormPoly::new(4, s, comps).expect("component count matches")
}

/// A random invertible affine map; prism maps keep `x4` separate from
/// `(x1, x2, x3)`.
pub fn random_map(rng: &mut impl Rng, kind: CellKind) -> CellMap {
    loop {
        let a: [[Rational; 4]; 4] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if kind == CellKind::TetPrism && (i == 3) != (j == 3) {
                    qi(0)
                } else {
                    q(rng.gen_range(-6..=6), rng.gen_range(1..=4))
                }
            })
        });
        let b: [Rational; 4] = std::array::from_fn(|_| q(rng.gen_range(-6..=6), rng.gen_range(1..=4)));
        if let Ok(m) = CellMap::from_affine(kind, a, b) {
            return m;
        }
    }
}

/// `d ∘ φ* = φ* ∘ d` and `(φ ∘ ψ)* = ψ* φ*` on random forms and maps.
pub fn check_pullback(cell: CellKind, nmaps: usize) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ cell as u64);
    let mut bad = 0;
    for _ in 0..nmaps {
        let m = random_map(&mut rng, cell);
        let m2 = random_map(&mut rng, cell);
        for s in 0..=3 {
            let w = random_form(&mut rng, s);
            if m.pullback(&w).d()? != m.pullback(&w.d()?) || m.compose(&m2).pullback(&w) != m2.pullback(&m.pullback(&w)) {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("maps={nmaps} failures={bad}")))
}

fn boundary_sum(cell: &RefCell, integrand: impl Fn(&Entity) -> Result<Polynomial>) -> Result<Rational> {
    let mut total = Rational::zero();
    for f in cell.facets() {
        total += integrate(&integrand(f)?, cell.chart(f).domain)?;
    }
    Ok(total)
}

/// Integration-by-parts identities pairing the three boundary traces with
/// the interior operators, boundary side summed facet by facet.
pub fn check_ibp(kind: CellKind, trials: usize) -> Result<(bool, String)> {
    let cell = RefCell::new(kind);
    let vol = |p: &Polynomial| integrate(p, kind.domain());
    let on_facet = |f: &Entity, p: &Polynomial| dofs::restrict_to_chart(p, &cell.chart(f));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x1b9 ^ kind as u64);
    let mut bad = [0usize; 3];
    for _ in 0..trials {
        let (w0, w1, w2, w3) = (random_form(&mut rng, 0), random_form(&mut rng, 1), random_form(&mut rng, 2), random_form(&mut rng, 3));
        let e = upsilon(&w1).vector().clone();
        let fm = upsilon(&w2).skew().clone();
        let g = upsilon(&w3).vector().clone();
        let u = w0.comp(0).clone();

        // tangential 1-form trace against F
        let lhs = boundary_sum(&cell, |f| Ok(frob(dofs::trace(&w1, &cell, f)?.raw.skew(), &fm.map(|p| on_facet(f, p)))))?;
        let rhs = vol(&dot(&div_skew(&fm), &e))? - vol(&frob(&fm, &skw_grad(&e)))?;
        bad[0] += usize::from(lhs != rhs);

        // n × F against E
        let lhs = boundary_sum(&cell, |f| {
            let ef = e.clone().map(|p| on_facet(f, &p));
            Ok(dot(dofs::trace(&w2, &cell, f)?.raw.vector(), &ef))
        })?;
        let rhs = vol(&dot(&curl_skew(&fm), &e))? - vol(&frob(&curl_vec(&e), &fm))?;
        bad[1] += usize::from(lhs != rhs);

        // G · n against u
        let lhs = boundary_sum(&cell, |f| Ok(dofs::trace(&w3, &cell, f)?.raw.scalar() * &on_facet(f, &u)))?;
        let rhs = vol(&(&div_vec(&g) * &u))? + vol(&dot(&g, &grad(&u)))?;
        bad[2] += usize::from(lhs != rhs);
    }
    Ok((bad.iter().all(|&b| b == 0), format!("trials={trials} failures(1-form,2-form,3-form)={bad:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_check_lists() {
        assert_eq!(parse_checks("dims, tensor-vs-nrt").unwrap(), vec![Check::Dims, Check::TensorVsNrt]);
        assert!(parse_checks("dims,bogus").is_err());
        let c: Corruption = "prism:2:1:3".parse().unwrap();
        assert_eq!(c, Corruption { cell: CellKind::TetPrism, s: 2, k: 1, member: 3 });
        assert!("prism:2".parse::<Corruption>().is_err());
    }

    #[test]
    fn small_suite_passes_and_is_sorted() {
        let opts = VerifyOptions::new(vec![CellKind::Pentatope, CellKind::TetPrism], 1);
        let r = run(&opts).unwrap();
        assert!(r.all_pass(), "{}", r.to_text());
        let mut sorted = r.records.clone();
        sorted.sort();
        assert_eq!(sorted, r.records);
        let mut o2 = opts.clone();
        o2.threads = Some(1);
        assert_eq!(run(&o2).unwrap(), r);
    }

    #[test]
    fn identities_hold_on_both_cells() {
        for kind in [CellKind::Pentatope, CellKind::TetPrism] {
            assert!(check_ibp(kind, 2).unwrap().0);
            assert!(check_pullback(kind, 3).unwrap().0);
        }
    }

    #[test]
    fn corruption_flips_checks() {
        for (cell, s) in [(CellKind::Pentatope, 0), (CellKind::TetPrism, 2), (CellKind::TetPrism, 4)] {
            let mut opts = VerifyOptions::new(vec![cell], 1);
            opts.checks = vec![Check::Dims, Check::Exactness, Check::Bubbles];
            opts.corrupt = Some(Corruption { cell, s, k: 1, member: 0 });
            let r = run(&opts).unwrap();
            assert!(r.failures().any(|f| f.check == "dims" && f.s == Some(s)), "{}", r.to_text());
        }
    }
}

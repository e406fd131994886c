//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact; the only tolerances are the wall-clock budgets below.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use feec4d::dofs::trace_dofs;
use feec4d::element::{check_bubbles, exactness, unisolvency_det};
use feec4d::geometry::{CellKind, EntityKind, RefCell};
use feec4d::proxy::{mat_vec, position};
use feec4d::rational::q;
use feec4d::space::PolySpace;
use feec4d::verify::{self, Check, Corruption, VerifyOptions};
use feec4d::{pentatope, prism};

/// Exact integer and rational comparisons admit no slack.
const EXACT_TOLERANCE: usize = 0;

const BUDGET_DIMS_PENTATOPE: Duration = Duration::from_secs(60);
const BUDGET_DIMS_PRISM: Duration = Duration::from_secs(60);
const BUDGET_TRACES: Duration = Duration::from_secs(30);
const BUDGET_EXACTNESS: Duration = Duration::from_secs(300);
const BUDGET_UNISOLVENCY: Duration = Duration::from_secs(600);
const BUDGET_BUBBLES: Duration = Duration::from_secs(300);
const BUDGET_STRUCTURE: Duration = Duration::from_secs(120);
const BUDGET_IDENTITIES: Duration = Duration::from_secs(120);
const BUDGET_CLI: Duration = Duration::from_secs(600);

const CELLS: [CellKind; 2] = [CellKind::Pentatope, CellKind::TetPrism];

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

#[allow(clippy::absurd_extreme_comparisons)]
fn exact_eq(a: usize, b: usize) -> bool {
    a.abs_diff(b) <= EXACT_TOLERANCE
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn dims_pentatope() -> Outcome {
    for k in 1..=4 {
        for s in 0..=4 {
            let r = pentatope::space(k, s).map_err(err)?.rank();
            let f = pentatope::dim_formula(k, s);
            ensure(exact_eq(r, f), || format!("k={k} s={s}: rank {r} vs formula {f}"))?;
        }
    }
    for (k, s, want) in [(2, 0, 15), (1, 1, 10), (2, 2, 45), (1, 3, 5), (1, 4, 1)] {
        let r = pentatope::space(k, s).map_err(err)?.rank();
        ensure(exact_eq(r, want), || format!("k={k} s={s}: rank {r}, expected {want}"))?;
    }
    Ok("20 cases, ranks equal closed forms".into())
}

fn dims_prism() -> Outcome {
    for k in 1..=3 {
        for s in 0..=4 {
            let r = prism::space(k, s).map_err(err)?.rank();
            let f = prism::dim_formula(k, s);
            ensure(exact_eq(r, f), || format!("k={k} s={s}: rank {r} vs formula {f}"))?;
        }
    }
    let c = RefCell::new(CellKind::TetPrism);
    let entities = [
        c.count(EntityKind::Vertex),
        c.count(EntityKind::Edge),
        c.count(EntityKind::Triangle) + c.count(EntityKind::Quad),
        c.count(EntityKind::Tet) + c.count(EntityKind::PrismFacet),
        1,
    ];
    ensure(entities == [8, 16, 14, 6, 1], || format!("entity counts {entities:?}"))?;
    for (s, &n) in entities.iter().enumerate() {
        let r = prism::space(1, s).map_err(err)?.rank();
        ensure(exact_eq(r, n), || format!("k=1 s={s}: rank {r} vs {n} entities"))?;
    }
    Ok("15 cases, k=1 totals (8, 16, 14, 6, 1)".into())
}

fn trace_counts() -> Outcome {
    let mut n = 0;
    for cell in CELLS {
        let rc = RefCell::new(cell);
        for k in 1..=3 {
            for s in 0..=3 {
                let got = trace_dofs(&rc, s, k).map_err(err)?.len();
                let want = verify::trace_dim_formula(cell, k, s);
                ensure(exact_eq(got, want), || format!("{} k={k} s={s}: {got} vs {want}", cell.name()))?;
                n += 1;
            }
        }
    }
    // spot values of the closed forms themselves
    for k in 1..=3i64 {
        ensure(6 * pentatope::trace_dim_formula(k, 0) as i64 == 5 * k * (k * k + 5), || "pentatope s=0 closed form".into())?;
        ensure(prism::trace_dim_formula(k, 1) as i64 == k * (7 * k * k + 3 * k + 6), || "prism s=1 closed form".into())?;
    }
    Ok(format!("{n} cases"))
}

fn exact_sequences() -> Outcome {
    for cell in CELLS {
        for k in 1..=3 {
            let spaces: Vec<PolySpace> = (0..=4).map(|s| verify::canonical_space(cell, k, s)).collect::<Result<_, _>>().map_err(err)?;
            let r = exactness(&spaces).map_err(err)?;
            ensure(r.is_exact(), || format!("{} k={k}: {r:?}", cell.name()))?;
        }
    }
    Ok("6 sequences exact".into())
}

fn unisolvency() -> Outcome {
    let mut n = 0;
    for cell in CELLS {
        for k in 1..=3 {
            for s in 0..=4 {
                let sp = verify::canonical_space(cell, k, s).map_err(err)?;
                let d = verify::cell_dofs(cell, k, s).map_err(err)?;
                ensure(d.len() == sp.dim(), || format!("{} k={k} s={s}: {} dofs for dim {}", cell.name(), d.len(), sp.dim()))?;
                let det = unisolvency_det(&d, &sp).map_err(err)?;
                ensure(!det.is_zero(), || format!("{} k={k} s={s}: singular", cell.name()))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} nonzero determinants"))
}

fn bubbles() -> Outcome {
    let mut n = 0;
    let mut cases: Vec<(CellKind, i64, usize)> = Vec::new();
    for cell in CELLS {
        for k in 1..=3 {
            cases.extend((0..=4).map(|s| (cell, k, s)));
        }
    }
    cases.extend([(CellKind::Pentatope, 4, 0), (CellKind::Pentatope, 5, 0)]);
    for (cell, k, s) in cases {
        let sp = verify::canonical_space(cell, k, s).map_err(err)?;
        let tr = if s < 4 { trace_dofs(&RefCell::new(cell), s, k).map_err(err)? } else { Vec::new() };
        let expected = verify::vol_dim_formula(cell, k, s);
        for (name, fam) in verify::bubble_families(cell, k, s).map_err(err)? {
            let r = check_bubbles(&sp, &fam, &tr, expected).map_err(err)?;
            ensure(r.ok(), || format!("{} {name} k={k} s={s}: {r:?}", cell.name()))?;
            n += fam.len();
        }
    }
    let first = pentatope::bubbles(5, 0).map_err(err)?.len();
    ensure(first > 0, || "no pentatope 0-form bubble at k=5".into())?;
    Ok(format!("{n} bubbles checked"))
}

fn structure_lemmas() -> Outcome {
    let x = position(4);
    for (r, b) in pentatope::b_matrices().iter().enumerate() {
        ensure(mat_vec(b, &x).iter().all(|p| p.is_zero()), || format!("B{} x != 0", r + 1))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..5 {
        let pt: Vec<_> = (0..4).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=7))).collect();
        let r = pentatope::c_matrix_at(&pt).rank();
        ensure(exact_eq(r, 3), || format!("C rank {r} at {pt:?}"))?;
    }
    for (name, ok) in pentatope::koszul_image_checks().map_err(err)? {
        ensure(ok, || format!("Koszul image '{name}'"))?;
    }
    for k in 1..=3 {
        for s in 0..=4 {
            let a = prism::tensor_space(k, s).map_err(err)?;
            let b = prism::nrt_space(k, s).map_err(err)?;
            ensure(a.span_equal(&b), || format!("tensor vs NRT k={k} s={s}"))?;
        }
    }
    Ok("B x = 0, rank C = 3 at 5 points, Koszul images, 15 span equalities".into())
}

fn identities() -> Outcome {
    let (ok, w) = verify::check_ibp(CellKind::Pentatope, 5).map_err(err)?;
    ensure(ok, || format!("integration by parts: {w}"))?;
    let mut maps = 0;
    for cell in CELLS {
        let (ok, w) = verify::check_pullback(cell, 5).map_err(err)?;
        ensure(ok, || format!("pullback {}: {w}", cell.name()))?;
        maps += 5;
    }
    Ok(format!("3 identities x 5 pairs, {maps} maps"))
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_feec4d");
    let run = |args: &[&str]| Command::new(bin).args(args).env("FEEC4D_THREADS", "2").output().map_err(err);
    let a = run(&["verify", "--all", "--max-k", "3"])?;
    let b = run(&["verify", "--all", "--max-k", "3"])?;
    ensure(a.status.code() == Some(0), || format!("clean run exit {:?}", a.status.code()))?;
    ensure(a.stdout == b.stdout, || "report not deterministic".into())?;
    let bad = run(&["verify", "--all", "--max-k", "3", "--corrupt", "prism:2:2:5"])?;
    ensure(bad.status.code() == Some(1), || format!("corrupted run exit {:?}", bad.status.code()))?;
    let text = String::from_utf8_lossy(&bad.stdout);
    ensure(text.lines().any(|l| l.starts_with("FAIL prism") && l.contains("s=2 k=2 dims")), || "corrupted dims not flagged".into())?;
    let usage = run(&["verify", "--checks", "bogus"])?;
    ensure(usage.status.code() == Some(2), || format!("bogus check exit {:?}", usage.status.code()))?;

    // every single-member corruption at k = 1 flips the dimension audit
    let mut flipped = 0;
    for cell in CELLS {
        for s in 0..=4 {
            let dim = verify::canonical_space(cell, 1, s).map_err(err)?.dim();
            for member in [0, dim - 1] {
                let mut o = VerifyOptions::new(vec![cell], 1);
                o.checks = vec![Check::Dims];
                o.corrupt = Some(Corruption { cell, s, k: 1, member });
                let r = verify::run(&o).map_err(err)?;
                ensure(r.failures().any(|f| f.s == Some(s)), || format!("{} s={s} member {member} not detected", cell.name()))?;
                flipped += 1;
            }
        }
    }
    Ok(format!("exit 0, deterministic, corruption -> exit 1, {flipped} hooks flipped"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("dimension audit, pentatope", BUDGET_DIMS_PENTATOPE, dims_pentatope),
        ("dimension audit, prism", BUDGET_DIMS_PRISM, dims_prism),
        ("trace-dof audit", BUDGET_TRACES, trace_counts),
        ("exact sequence", BUDGET_EXACTNESS, exact_sequences),
        ("unisolvency", BUDGET_UNISOLVENCY, unisolvency),
        ("bubble correctness", BUDGET_BUBBLES, bubbles),
        ("structure lemmas", BUDGET_STRUCTURE, structure_lemmas),
        ("trace and pullback identities", BUDGET_IDENTITIES, identities),
        ("CLI contract", BUDGET_CLI, cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let dt = t.elapsed();
        let outcome = match outcome {
            Ok(w) if dt > *budget => Err(format!("{w}; took {dt:.1?} over budget {budget:?}")),
            o => o,
        };
        match outcome {
            Ok(w) => println!("PASS criterion {}: {name} ({w}; {dt:.2?})", i + 1),
            Err(w) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({w}; {dt:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

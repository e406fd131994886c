//! Interior bubble families: membership, independence and vanishing traces.

use feec4d::dofs::trace_dofs;
use feec4d::element::check_bubbles;
use feec4d::geometry::{CellKind, RefCell};
use feec4d::verify::{bubble_families, canonical_space, vol_dim_formula};

fn main() -> feec4d::Result<()> {
    for (cell, k, s) in [(CellKind::Pentatope, 5, 0), (CellKind::Pentatope, 3, 2), (CellKind::TetPrism, 3, 1), (CellKind::TetPrism, 2, 3)] {
        let sp = canonical_space(cell, k, s)?;
        let tr = trace_dofs(&RefCell::new(cell), s, k)?;
        for (name, fam) in bubble_families(cell, k, s)? {
            let r = check_bubbles(&sp, &fam, &tr, vol_dim_formula(cell, k, s))?;
            println!("{} k={k} s={s} {name}: {} bubbles, rank {}, ok={}", cell.name(), r.count, r.rank, r.ok());
        }
    }
    Ok(())
}

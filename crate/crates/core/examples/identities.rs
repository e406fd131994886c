//! Integration by parts against facet traces, and pullbacks commuting with d.

use feec4d::geometry::CellKind;
use feec4d::verify::{check_ibp, check_pullback};

fn main() -> feec4d::Result<()> {
    for cell in [CellKind::Pentatope, CellKind::TetPrism] {
        let (ibp, w1) = check_ibp(cell, 5)?;
        let (pb, w2) = check_pullback(cell, 10)?;
        println!("{}: ibp={ibp} ({w1}), pullback={pb} ({w2})", cell.name());
    }
    Ok(())
}

//! Constructed dimensions of V^{k,s} on both cells against the closed forms.

use feec4d::geometry::CellKind;
use feec4d::verify::{canonical_space, dim_formula, trace_dim_formula, vol_dim_formula};

fn main() -> feec4d::Result<()> {
    for cell in [CellKind::Pentatope, CellKind::TetPrism] {
        println!("{}", cell.name());
        for k in 1..=3 {
            let dims: Vec<String> = (0..=4)
                .map(|s| {
                    let r = canonical_space(cell, k, s).map(|v| v.rank())?;
                    Ok(format!("{r}={}+{}", trace_dim_formula(cell, k, s), vol_dim_formula(cell, k, s)))
                })
                .collect::<feec4d::Result<_>>()?;
            assert!((0..=4).all(|s| canonical_space(cell, k, s).unwrap().rank() == dim_formula(cell, k, s)));
            println!("  k={k}: {}", dims.join("  "));
        }
    }
    Ok(())
}

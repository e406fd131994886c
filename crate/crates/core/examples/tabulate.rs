//! Exact tabulation of the lowest-order prism 1-form basis at the centroid.

use feec4d::geometry::{CellKind, RefCell};
use feec4d::tabulate::tabulate;

fn main() -> feec4d::Result<()> {
    let c = RefCell::new(CellKind::TetPrism).centroid();
    let t = tabulate(CellKind::TetPrism, 1, 1, &[c])?;
    print!("{}", t.to_csv());
    Ok(())
}

//! Exact determinants of the dof-by-basis matrices on the pentatope.

use feec4d::element::unisolvency_det;
use feec4d::pentatope;

fn main() -> feec4d::Result<()> {
    for k in 1..=2 {
        for s in 0..=4 {
            let det = unisolvency_det(&pentatope::dofs(k, s)?, &pentatope::space(k, s)?)?;
            println!("k={k} s={s} dim={:>3} det={det}", pentatope::dim_formula(k, s));
        }
    }
    Ok(())
}

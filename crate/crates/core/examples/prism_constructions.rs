//! The tensor-product and NRT realizations of the prism spaces coincide.

use feec4d::prism::{nrt_space, tensor_space};

fn main() -> feec4d::Result<()> {
    for k in 1..=3 {
        for s in 0..=4 {
            let a = tensor_space(k, s)?;
            let b = nrt_space(k, s)?;
            println!("k={k} s={s} dim={:>3} span_equal={}", a.dim(), a.span_equal(&b));
        }
    }
    Ok(())
}

//! Kernel and image ranks of d along the discrete sequence on the prism.

use feec4d::element::exactness;
use feec4d::prism;

fn main() -> feec4d::Result<()> {
    let k = 2;
    let spaces = (0..=4).map(|s| prism::space(k, s)).collect::<feec4d::Result<Vec<_>>>()?;
    let r = exactness(&spaces)?;
    println!("dims        {:?}", r.dims);
    println!("rank d^s    {:?}", r.image_ranks);
    println!("dim ker d^s {:?}", r.kernel_dims);
    println!("exact: {}", r.is_exact());
    Ok(())
}

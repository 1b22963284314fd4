//! Reduce a form and compose classes of discriminant -23.
//!
//! cargo run --example reduce_compose

use qforms::classgroup::{compose, inverse, order, power};
use qforms::Form;

fn main() -> qforms::Result<()> {
    let f = Form::new(12, 11, 3)?;
    let (r, m) = f.reduce();
    println!("{f} reduces to {r} via {:?}", m.0);

    let q7: Form = "2,1,3".parse()?;
    let q8 = inverse(&q7);
    println!("{q7} * {q7} = {}", compose(&q7, &q7)?);
    println!("{q7} * {q8} = {}", compose(&q7, &q8)?);
    println!("order of {q7}: {}", order(&q7)?);
    println!("{q7}^-1 = {}", power(&q7, -1)?);
    Ok(())
}

//! Non-square multiples of a locally represented value.
//!
//! cargo run --example nonsquare_multiple

use num_bigint::BigInt;
use qforms::represent::{joint_nonsquare_multiple, nonsquare_multiple, represents};
use qforms::Form;

fn main() -> qforms::Result<()> {
    let f: Form = "1,1,12".parse()?;
    let g: Form = "1,1,6".parse()?;
    let m = BigInt::from(2);
    println!("{f} represents 2: {}", represents(&f, &m).is_some());
    println!("{f}: {}", nonsquare_multiple(&f, &m, 100)?);
    println!(
        "{f} and {g}: {}",
        joint_nonsquare_multiple(&f, &g, &m, 100)?
    );
    match nonsquare_multiple(&"1,0,1".parse()?, &BigInt::from(3), 100) {
        Ok(r) => println!("{r}"),
        Err(e) => println!("x^2 + y^2, m = 3: {e}"),
    }
    Ok(())
}

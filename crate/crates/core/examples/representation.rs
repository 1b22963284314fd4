//! Witnesses for represented values, and the values shared by every form of
//! a discriminant.
//!
//! cargo run --example representation

use num_bigint::BigInt;
use qforms::classgroup::odd_witness;
use qforms::forms::enumerate_reduced;
use qforms::represent::{properly_represents, rep_set, represents};
use qforms::{Discriminant, Form};

fn main() -> qforms::Result<()> {
    let f = Form::new(2, 0, 11)?;
    let p = BigInt::from(659);
    println!("{f} at {:?} gives {p}", represents(&f, &p));
    println!("properly: {:?}", properly_represents(&f, &p));

    let d = Discriminant::new(-47)?;
    let forms = enumerate_reduced(&d);
    let shared = rep_set(&forms, 1_000)?;
    println!(
        "values <= 1000 represented by all forms of -47: {:?}",
        shared.values
    );
    println!("odd witness of -47: {}", odd_witness(&d)?);
    Ok(())
}

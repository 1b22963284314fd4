//! Local representability at every place, and genus characters.
//!
//! cargo run --example local

use num_bigint::BigInt;
use qforms::represent::{genus_characters, locally_represented};
use qforms::Form;

fn main() -> qforms::Result<()> {
    for (f, m) in [("1,1,12", 2), ("1,0,1", 6), ("1,0,5", 21)] {
        let f: Form = f.parse()?;
        let r = locally_represented(&f, &BigInt::from(m))?;
        let places: Vec<String> = r
            .places
            .iter()
            .map(|p| format!("{}:{}", p.place, if p.represented { "yes" } else { "no" }))
            .collect();
        println!(
            "{f} = {m}: locally {} [{}]",
            r.represented,
            places.join(" ")
        );
    }
    for f in ["1,0,5", "2,2,3"] {
        let g = genus_characters(&f.parse()?)?;
        println!("{f}: {:?} = {:?}", g.labels, g.values);
    }
    Ok(())
}

//! Decide whether all forms of a discriminant share a nonzero value, with
//! Hasse certificates for the anisotropic pairs.
//!
//! cargo run --example intersection -- -20 -23 -56

use qforms::isotropy::{pair_certificates, trivial_intersection};
use qforms::Discriminant;

fn main() -> qforms::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let discs = if args.is_empty() {
        vec![-20, -23, -47, -56]
    } else {
        args
    };
    for v in discs {
        let d = Discriminant::new(v)?;
        let verdict = trivial_intersection(&d)?;
        println!("{}", serde_json::to_string(&verdict).expect("serializable"));
        if verdict.class_number > 1 {
            for c in pair_certificates(&d)? {
                println!("  {}", serde_json::to_string(&c).expect("serializable"));
            }
        }
    }
    Ok(())
}

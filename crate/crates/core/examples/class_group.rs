//! Class groups, invariant factors and genera for a few discriminants.
//!
//! cargo run --example class_group -- -84

use qforms::classgroup::ClassGroup;
use qforms::Discriminant;

fn main() -> qforms::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let discs = if args.is_empty() {
        vec![-47, -84, -87, -88]
    } else {
        args
    };
    for v in discs {
        let g = ClassGroup::new(&Discriminant::new(v)?)?;
        println!(
            "Δ = {v}: h = {}, invariant factors {:?}, {} genera",
            g.class_number(),
            g.invariant_factors(),
            g.genus_count()
        );
        for (i, f) in g.elements().iter().enumerate() {
            println!("  {f:>10}  order {}", g.order_of(i));
        }
    }
    Ok(())
}

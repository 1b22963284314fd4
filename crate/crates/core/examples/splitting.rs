//! How primes split in the Hilbert class field of Q(sqrt -87), compared with
//! the order of the class that represents them.
//!
//! cargo run --example splitting

use qforms::arith::primes_in;
use qforms::classfield::{hilbert_class_polynomial, verify_theorem8_with};
use qforms::{Discriminant, Error};

fn main() -> qforms::Result<()> {
    let d = Discriminant::new(-87)?;
    let h = hilbert_class_polynomial(&d)?;
    for p in primes_in(2, 80).chain([659]) {
        if p == 3 || p == 29 {
            continue;
        }
        match verify_theorem8_with(&h, p) {
            Ok(c) => {
                let r = &c.report;
                let forms: Vec<String> = c.representing.iter().map(|f| f.to_string()).collect();
                println!(
                    "p = {p:>3}: (Δ/p) = {:>2}, f = {}, total = {:>2}, class order {:?} {:?} holds = {}",
                    r.kronecker, r.f, r.total, c.order, forms, c.holds
                );
            }
            Err(Error::NonGenericPrime(..)) => println!("p = {p:>3}: divides disc(H)"),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

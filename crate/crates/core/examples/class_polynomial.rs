//! Hilbert class polynomials from CM values of j.
//!
//! cargo run --example class_polynomial -- -23

use qforms::classfield::{hilbert_class_polynomial, j_invariant, CmPoint};
use qforms::forms::enumerate_reduced;
use qforms::Discriminant;

fn main() -> qforms::Result<()> {
    let v: i64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(-23);
    let d = Discriminant::new(v)?;
    for f in enumerate_reduced(&d) {
        let tau = CmPoint::new(&f, 30)?;
        let j = j_invariant(&tau, 30)?;
        println!(
            "j({:.6} {:+.6}i) = {:.6} {:+.6}i",
            tau.re(),
            tau.im(),
            j.re(),
            j.im()
        );
    }
    let h = hilbert_class_polynomial(&d)?;
    println!("H_{v}(X) = {h}");
    if let Some(p) = &h.precision {
        println!("{} digits, residual {:.1e}", p.digits, p.residual);
    }
    Ok(())
}

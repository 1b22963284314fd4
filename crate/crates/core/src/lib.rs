//! Positive-definite binary quadratic forms: reduction, class groups,
//! representation of integers, isotropy of difference forms and Hilbert class
//! polynomials.
//!
//! ```
//! use qforms::classgroup::{compose, odd_witness};
//! use qforms::{Discriminant, Form};
//!
//! let f: Form = "2,1,3".parse().unwrap();
//! assert_eq!(compose(&f, &f).unwrap(), Form::new(2, -1, 3).unwrap());
//! let w = odd_witness(&Discriminant::new(-23).unwrap()).unwrap();
//! assert_eq!(w, 6.into());
//! ```
//!
//! Runnable examples live in `examples/`: `reduce_compose`, `class_group`,
//! `representation`, `local`, `nonsquare_multiple`, `intersection`,
//! `class_polynomial`, `splitting` and `cli`.

pub mod arith;
pub mod classfield;
pub mod classgroup;
pub mod cli;
pub mod error;
pub mod forms;
pub mod isotropy;
pub mod represent;

pub use error::{Error, Result};
pub use forms::{Discriminant, Form};

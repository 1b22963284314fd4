//! Positive-definite primitive binary quadratic forms `ax^2 + bxy + cy^2`,
//! discriminants, Gauss reduction and enumeration of reduced forms.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};

/// A primitive, positive-definite integral binary quadratic form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Form {
    /// Builds a form, rejecting indefinite, degenerate and imprimitive triples.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        check_definite(&a, &b, &c)?;
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            return Err(Error::Imprimitive(format!("{a},{b},{c}"), g.to_string()));
        }
        Ok(Form { a, b, c })
    }

    pub(crate) fn new_unchecked(a: BigInt, b: BigInt, c: BigInt) -> Self {
        debug_assert!(Form::new(a.clone(), b.clone(), c.clone()).is_ok());
        Form { a, b, c }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// `b^2 - 4ac`, always negative.
    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// The classified discriminant of this form.
    pub fn discriminant(&self) -> Result<Discriminant> {
        Discriminant::new(self.disc())
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// Reduced conditions: `|b| <= a <= c`, and `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let abs_b = self.b.abs();
        if abs_b > self.a || self.a > self.c {
            return false;
        }
        if (abs_b == self.a || self.a == self.c) && self.b.is_negative() {
            return false;
        }
        true
    }

    /// The unique reduced form properly equivalent to `self`, and a
    /// determinant-one matrix `M` with `self(M (x, y)) = reduced(x, y)`.
    pub fn reduce(&self) -> (Form, Mat2) {
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        let mut m = Mat2::identity();
        let two_a = |a: &BigInt| a * 2;
        loop {
            // x -> x + k y moves b into (-a, a]
            let k = (&a - &b).div_floor(&two_a(&a));
            if !k.is_zero() {
                let nb = &b + two_a(&a) * &k;
                c = &a * &k * &k + &b * &k + &c;
                b = nb;
                m = m.mul(&Mat2::shear(k));
            }
            if a > c {
                // (x, y) -> (-y, x)
                std::mem::swap(&mut a, &mut c);
                b = -b;
                m = m.mul(&Mat2::rotate());
            } else {
                break;
            }
        }
        if a == c && b.is_negative() {
            b = -b;
            m = m.mul(&Mat2::rotate());
        }
        let reduced = Form { a, b, c };
        debug_assert!(reduced.is_reduced());
        debug_assert_eq!(m.det(), BigInt::one());
        debug_assert_eq!(m.act_on(self), reduced);
        (reduced, m)
    }

    pub fn reduced(&self) -> Form {
        self.reduce().0
    }

    /// `(a, -b, c)`; the inverse class under composition.
    pub fn opposite(&self) -> Form {
        Form {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
        }
    }

    /// Coefficients as `i128` when they fit with room for evaluation.
    pub(crate) fn small(&self) -> Option<(i128, i128, i128)> {
        let lim = 1i128 << 40;
        let a = self.a.to_i128()?;
        let b = self.b.to_i128()?;
        let c = self.c.to_i128()?;
        if a.abs() > lim || b.abs() > lim || c.abs() > lim {
            return None;
        }
        Some((a, b, c))
    }
}

fn check_definite(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<()> {
    let d = b * b - BigInt::from(4) * a * c;
    if !a.is_positive() || !d.is_negative() {
        return Err(Error::NotPositiveDefinite(format!("{a},{b},{c}")));
    }
    Ok(())
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl Ord for Form {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.a, &self.b, &self.c).cmp(&(&other.a, &other.b, &other.c))
    }
}

impl PartialOrd for Form {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Parses the `a,b,c` syntax: three signed decimal integers, no spaces.
fn parse_triple(s: &str) -> Result<(BigInt, BigInt, BigInt)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::parse(s, "expected a,b,c"));
    }
    let mut out = Vec::with_capacity(3);
    for p in parts {
        let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(Error::parse(
                s,
                format!("{p:?} is not a signed decimal integer"),
            ));
        }
        out.push(BigInt::from_str(p).map_err(|e| Error::parse(s, e.to_string()))?);
    }
    let c = out.pop().unwrap();
    let b = out.pop().unwrap();
    let a = out.pop().unwrap();
    Ok((a, b, c))
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b, c) = parse_triple(s)?;
        Form::new(a, b, c)
    }
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An imprimitive form `g * (a, b, c)` with `(a, b, c)` primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledForm {
    pub scale: BigInt,
    pub primitive: Form,
}

impl ScaledForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        check_definite(&a, &b, &c)?;
        let g = a.gcd(&b).gcd(&c);
        let primitive = Form::new_unchecked(&a / &g, &b / &g, &c / &g);
        Ok(ScaledForm {
            scale: g,
            primitive,
        })
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.scale * self.primitive.eval(x, y)
    }
}

impl FromStr for ScaledForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b, c) = parse_triple(s)?;
        ScaledForm::new(a, b, c)
    }
}

/// A 2x2 integer matrix acting on forms by `f -> f o M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2(pub [[BigInt; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([
            [BigInt::one(), BigInt::zero()],
            [BigInt::zero(), BigInt::one()],
        ])
    }

    fn shear(k: BigInt) -> Self {
        Mat2([[BigInt::one(), k], [BigInt::zero(), BigInt::one()]])
    }

    fn rotate() -> Self {
        Mat2([
            [BigInt::zero(), BigInt::from(-1)],
            [BigInt::one(), BigInt::zero()],
        ])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let m = &self.0;
        let n = &o.0;
        Mat2([
            [
                &m[0][0] * &n[0][0] + &m[0][1] * &n[1][0],
                &m[0][0] * &n[0][1] + &m[0][1] * &n[1][1],
            ],
            [
                &m[1][0] * &n[0][0] + &m[1][1] * &n[1][0],
                &m[1][0] * &n[0][1] + &m[1][1] * &n[1][1],
            ],
        ])
    }

    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_unimodular(&self) -> Mat2 {
        debug_assert!(self.det().is_one());
        let m = &self.0;
        Mat2([[m[1][1].clone(), -&m[0][1]], [-&m[1][0], m[0][0].clone()]])
    }

    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        let m = &self.0;
        (&m[0][0] * x + &m[0][1] * y, &m[1][0] * x + &m[1][1] * y)
    }

    /// Coefficients of `f(M (x, y))`.
    pub fn act_on(&self, f: &Form) -> Form {
        let [[p, q], [r, s]] = &self.0;
        let (a, b, c) = (&f.a, &f.b, &f.c);
        let na = a * p * p + b * p * r + c * r * r;
        let nb = BigInt::from(2) * a * p * q + b * (p * s + q * r) + BigInt::from(2) * c * r * s;
        let nc = a * q * q + b * q * s + c * s * s;
        Form {
            a: na,
            b: nb,
            c: nc,
        }
    }
}

/// A negative discriminant `Δ ≡ 0, 1 (mod 4)` with its decomposition.
///
/// `Δ = s^2 n` with `n` squarefree, and `Δ = f^2 d_K` where `d_K` is the
/// discriminant of `Q(sqrt(n))` and `f` the conductor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Discriminant {
    value: BigInt,
    small: i64,
    squarefree: BigInt,
    square_part: BigInt,
    field_disc: BigInt,
    conductor: BigInt,
}

impl Discriminant {
    pub fn new(value: impl Into<BigInt>) -> Result<Self> {
        let value = value.into();
        if !value.is_negative() {
            return Err(Error::InvalidDiscriminant(
                value.to_string(),
                "must be negative",
            ));
        }
        let r = value.mod_floor(&BigInt::from(4));
        if r != BigInt::zero() && r != BigInt::one() {
            return Err(Error::InvalidDiscriminant(
                value.to_string(),
                "must be 0 or 1 mod 4",
            ));
        }
        let small = value
            .to_i64()
            .ok_or_else(|| Error::TooLarge(value.to_string()))?;
        let fac = arith::factor(&value)?;
        let mut squarefree = BigInt::from(-1);
        let mut square_part = BigInt::one();
        for &(p, e) in &fac.primes {
            if e % 2 == 1 {
                squarefree *= p;
            }
            square_part *= BigInt::from(p).pow(e / 2);
        }
        if let Some(u) = fac.unsplit {
            squarefree *= u;
        }
        let field_disc = if squarefree.mod_floor(&BigInt::from(4)).is_one() {
            squarefree.clone()
        } else {
            &squarefree * 4
        };
        let conductor = (&value / &field_disc).sqrt();
        debug_assert_eq!(&conductor * &conductor * &field_disc, value);
        Ok(Discriminant {
            value,
            small,
            squarefree,
            square_part,
            field_disc,
            conductor,
        })
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub(crate) fn as_i64(&self) -> i64 {
        self.small
    }

    /// Squarefree `n` with `Δ = s^2 n`.
    pub fn squarefree_part(&self) -> &BigInt {
        &self.squarefree
    }

    /// `s` with `Δ = s^2 n`.
    pub fn square_part(&self) -> &BigInt {
        &self.square_part
    }

    /// `d_K = n` if `n ≡ 1 (mod 4)`, else `4n`.
    pub fn field_discriminant(&self) -> &BigInt {
        &self.field_disc
    }

    pub fn conductor(&self) -> &BigInt {
        &self.conductor
    }

    pub fn is_fundamental(&self) -> bool {
        self.conductor.is_one()
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Fundamental discriminant test: `Δ ≡ 1 (mod 4)` squarefree, or `Δ = 4n`
/// with `n ≡ 2, 3 (mod 4)` squarefree.
pub fn is_fundamental(delta: &BigInt) -> Result<bool> {
    let r = delta.mod_floor(&BigInt::from(4));
    if r == BigInt::one() {
        Ok(arith::factor(delta)?.is_squarefree())
    } else if r.is_zero() {
        let n: BigInt = delta / 4;
        let rn = n.mod_floor(&BigInt::from(4));
        if rn == BigInt::from(2) || rn == BigInt::from(3) {
            Ok(arith::factor(&n)?.is_squarefree())
        } else {
            Ok(false)
        }
    } else {
        Err(Error::InvalidDiscriminant(
            delta.to_string(),
            "must be 0 or 1 mod 4",
        ))
    }
}

/// `x^2 - (Δ/4) y^2` or `x^2 + xy + ((1-Δ)/4) y^2`.
pub fn principal_form(d: &Discriminant) -> Form {
    let v = d.value();
    if v.is_even() {
        Form::new_unchecked(BigInt::one(), BigInt::zero(), -(v / 4u32))
    } else {
        Form::new_unchecked(BigInt::one(), BigInt::one(), (BigInt::one() - v) / 4u32)
    }
}

/// All primitive reduced forms of discriminant `Δ`, ordered by `(a, b, c)`.
pub fn enumerate_reduced(d: &Discriminant) -> Vec<Form> {
    let delta = d.as_i64() as i128;
    let abs = -delta;
    let mut out = Vec::new();
    let mut a: i128 = 1;
    while 3 * a * a <= abs {
        for b in (-a + 1)..=a {
            let num = b * b - delta;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            out.push(Form::new_unchecked(a.into(), b.into(), c.into()));
        }
        a += 1;
    }
    out.sort();
    out
}

/// `h(Δ)`, the number of reduced forms.
pub fn class_number(d: &Discriminant) -> usize {
    enumerate_reduced(d).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c).unwrap()
    }

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(f(2, 1, 11).disc(), BigInt::from(-87));
        assert_eq!(f(1, 0, 1).disc(), BigInt::from(-4));
        assert_eq!(f(2, 2, 11).disc(), BigInt::from(-84));
        let dd = d(-84);
        assert_eq!(dd.field_discriminant(), &BigInt::from(-84));
        assert!(dd.is_fundamental());
        let dd = d(-12);
        assert_eq!(dd.field_discriminant(), &BigInt::from(-3));
        assert_eq!(dd.conductor(), &BigInt::from(2));
        assert!(!dd.is_fundamental());
        let dd = d(-88);
        assert_eq!(dd.squarefree_part(), &BigInt::from(-22));
        assert_eq!(dd.square_part(), &BigInt::from(2));
        assert_eq!(dd.field_discriminant(), &BigInt::from(-88));
        let dd = d(-75);
        assert_eq!(dd.squarefree_part(), &BigInt::from(-3));
        assert_eq!(dd.conductor(), &BigInt::from(5));
        assert!(Discriminant::new(-5).is_err());
        assert!(Discriminant::new(0).is_err());
        assert!(Discriminant::new(12).is_err());
    }

    #[test]
    fn constructor_errors() {
        assert!(matches!(Form::new(2, 2, 2), Err(Error::Imprimitive(..))));
        assert!(matches!(
            Form::new(1, 3, 1),
            Err(Error::NotPositiveDefinite(_))
        ));
        assert!(matches!(
            Form::new(-1, 0, -1),
            Err(Error::NotPositiveDefinite(_))
        ));
        let s = ScaledForm::new(2, 2, 2).unwrap();
        assert_eq!(s.scale, BigInt::from(2));
        assert_eq!(s.primitive, f(1, 1, 1));
        assert_eq!(s.eval(&BigInt::from(1), &BigInt::from(1)), BigInt::from(6));
    }

    #[test]
    fn parsing() {
        assert_eq!("2,-1,6".parse::<Form>().unwrap(), f(2, -1, 6));
        assert_eq!(f(2, -1, 6).to_string(), "2,-1,6");
        for bad in ["2, 1,6", "2,1", "2,1,6,7", "a,b,c", "2,,6", "2,1,6 "] {
            assert!(
                matches!(bad.parse::<Form>(), Err(Error::Parse(..))),
                "{bad}"
            );
        }
        assert!("4,4,4".parse::<ScaledForm>().is_ok());
    }

    #[test]
    fn reduced_predicate() {
        assert!(f(2, -1, 6).is_reduced());
        assert!(!Form::new(2, -2, 3).unwrap().is_reduced());
        assert!(!f(3, 7, 5).is_reduced());
        assert!(!f(3, -1, 3).is_reduced());
        assert!(f(3, 1, 3).is_reduced());
    }

    #[test]
    fn reduction_examples() {
        let (r, m) = f(3, 7, 5).reduce();
        assert_eq!(r, f(1, 1, 3));
        assert_eq!(m.act_on(&f(3, 7, 5)), r);
        let (r, m) = f(1, 0, 5).reduce();
        assert_eq!(r, f(1, 0, 5));
        assert_eq!(m, Mat2::identity());
        // (12,11,3) has discriminant -23; the loop lands on (2,-1,3)
        assert_eq!(f(12, 11, 3).disc(), BigInt::from(-23));
        assert_eq!(f(12, 11, 3).reduced(), f(2, -1, 3));
        // boundary cases of (R2)
        assert_eq!(Form::new(2, -2, 3).unwrap().reduced(), f(2, 2, 3));
        assert_eq!(f(3, -1, 3).reduced(), f(3, 1, 3));
    }

    #[test]
    fn principal_forms() {
        assert_eq!(principal_form(&d(-47)), f(1, 1, 12));
        assert_eq!(principal_form(&d(-4)), f(1, 0, 1));
        assert_eq!(principal_form(&d(-88)), f(1, 0, 22));
    }

    #[test]
    fn reduced_lists() {
        assert_eq!(
            enumerate_reduced(&d(-47)),
            vec![
                f(1, 1, 12),
                f(2, -1, 6),
                f(2, 1, 6),
                f(3, -1, 4),
                f(3, 1, 4)
            ]
        );
        assert_eq!(
            enumerate_reduced(&d(-23)),
            vec![f(1, 1, 6), f(2, -1, 3), f(2, 1, 3)]
        );
        assert_eq!(enumerate_reduced(&d(-4)), vec![f(1, 0, 1)]);
        assert_eq!(class_number(&d(-87)), 6);
        assert_eq!(class_number(&d(-47)), 5);
        assert_eq!(class_number(&d(-3)), 1);
        // (2,2,2) is imprimitive and excluded at Δ = -12
        assert_eq!(enumerate_reduced(&d(-12)), vec![f(1, 0, 3)]);
    }

    #[test]
    fn fundamental_discriminants() {
        let fund = |v: i64| is_fundamental(&BigInt::from(v)).unwrap();
        assert!(fund(-87));
        assert!(fund(-20));
        assert!(!fund(-12));
        assert!(fund(-3));
        assert!(fund(-4));
        assert!(fund(-8));
        assert!(!fund(-16));
        assert!(!fund(-75));
        assert!(is_fundamental(&BigInt::from(-6)).is_err());
        for v in (-400..=-3).filter(|v: &i64| v.rem_euclid(4) <= 1) {
            assert_eq!(fund(v), d(v).is_fundamental(), "{v}");
        }
    }
}

//! Hilbert class polynomials from CM values of `j`, and the splitting of
//! rational primes in the Hilbert class field read off from their
//! factorization modulo `p`.

mod fixed;
mod fp;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::classgroup;
use crate::error::{Error, Result};
use crate::forms::{enumerate_reduced, Discriminant, Form};
use crate::represent;

use fixed::{Complex, Fixed};

/// Largest precision, in decimal digits, accepted for a single evaluation.
pub const MAX_DIGITS: u32 = 200_000;

/// Guard digits added to the coefficient size estimate.
pub const GUARD_DIGITS: u32 = 15;

const MAX_RETRIES: u32 = 4;
const MAX_RESIDUAL: f64 = 1e-5;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Environment variable naming the default class-polynomial cache file.
pub const CACHE_ENV: &str = "QF_CACHE";

/// `tau = (-b + i sqrt|Δ|) / 2a` for a form `(a, b, c)`.
#[derive(Clone, Debug)]
pub struct CmPoint {
    form: Form,
    digits: u32,
    ctx: Fixed,
    re: BigInt,
    im: BigInt,
}

impl CmPoint {
    pub fn new(form: &Form, digits: u32) -> Result<Self> {
        check_digits(digits)?;
        let ctx = Fixed::new(bits_for(digits as f64));
        let two_a = form.a() * 2u32;
        let re = ctx.int(-form.b()).div_floor(&two_a);
        let im = ctx.sqrt(&ctx.int(-form.disc())).div_floor(&two_a);
        Ok(CmPoint {
            form: form.clone(),
            digits,
            ctx,
            re,
            im,
        })
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn re(&self) -> f64 {
        self.ctx.to_f64(&self.re)
    }

    pub fn im(&self) -> f64 {
        self.ctx.to_f64(&self.im)
    }

    pub fn re_decimal(&self) -> String {
        self.ctx.to_decimal(&self.re, self.digits)
    }

    pub fn im_decimal(&self) -> String {
        self.ctx.to_decimal(&self.im, self.digits)
    }
}

/// A complex number held to a fixed number of binary places.
#[derive(Clone, Debug)]
pub struct HpComplex {
    ctx: Fixed,
    re: BigInt,
    im: BigInt,
}

impl HpComplex {
    pub fn re(&self) -> f64 {
        self.ctx.to_f64(&self.re)
    }

    pub fn im(&self) -> f64 {
        self.ctx.to_f64(&self.im)
    }

    pub fn re_decimal(&self, digits: u32) -> String {
        self.ctx.to_decimal(&self.re, digits)
    }

    pub fn im_decimal(&self, digits: u32) -> String {
        self.ctx.to_decimal(&self.im, digits)
    }

    /// Distance of the real part from the nearest integer plus `|im|`,
    /// together with that integer.
    pub fn nearest_integer(&self) -> (BigInt, f64) {
        let n = self.ctx.round(&self.re);
        let err = &self.re - self.ctx.int(n.clone());
        (
            n,
            self.ctx.to_f64(&err.abs()) + self.ctx.to_f64(&self.im.abs()),
        )
    }

    /// `|self - n| < 10^-digits`, decided exactly on the mantissas.
    pub fn within(&self, n: &BigInt, digits: u32) -> bool {
        let tol = (BigInt::one() << self.ctx.bits) / BigInt::from(10).pow(digits);
        (&self.re - self.ctx.int(n.clone())).abs() < tol && self.im.abs() < tol
    }
}

fn check_digits(digits: u32) -> Result<()> {
    if digits == 0 || digits > MAX_DIGITS {
        return Err(Error::PrecisionInfeasible(digits, MAX_DIGITS));
    }
    Ok(())
}

fn bits_for(digits: f64) -> u32 {
    (digits * LOG2_10).ceil() as u32 + 64
}

/// `log10 |j(tau)|` is about `pi sqrt|Δ| / (a ln 10)`.
fn log10_size(form: &Form) -> f64 {
    let abs = (-form.disc()).to_f64().unwrap_or(f64::MAX);
    let a = form.a().to_f64().unwrap_or(f64::MAX);
    std::f64::consts::PI * abs.sqrt() / (a * std::f64::consts::LN_10)
}

fn sigma3(n: u64) -> u64 {
    let mut s = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += d * d * d;
            let e = n / d;
            if e != d {
                s += e * e * e;
            }
        }
        d += 1;
    }
    s
}

/// `j(tau) = E4(q)^3 / (q prod (1 - q^n)^24)`, `q = e^(2 pi i tau)`.
fn j_fixed(form: &Form, ctx: Fixed) -> Complex {
    let pi = ctx.pi();
    let a = form.a().clone();
    let root = ctx.sqrt(&ctx.int(-form.disc()));
    let x = ctx.mul(&pi, &root) / &a;
    let theta = (&pi * form.b()) / &a;
    let ex = ctx.exp(&x);
    let emx = ctx.exp(&-&x);
    let (cos, sin) = ctx.cos_sin(&theta);
    let inv_q = (ctx.mul(&ex, &cos), ctx.mul(&ex, &sin));
    let q = (ctx.mul(&emx, &cos), -ctx.mul(&emx, &sin));

    let mut powers: Vec<Complex> = vec![(ctx.one(), BigInt::zero())];
    let mut e4 = (ctx.one(), BigInt::zero());
    loop {
        let next = ctx.cmul(powers.last().unwrap(), &q);
        // below one unit in the last place; the floor shift leaves -1
        // rather than 0 for negative mantissas
        if next.0.abs() <= BigInt::one() && next.1.abs() <= BigInt::one() {
            break;
        }
        let n = powers.len() as u64;
        let s = BigInt::from(240u64 * sigma3(n));
        e4.0 += &next.0 * &s;
        e4.1 += &next.1 * &s;
        powers.push(next);
    }
    // Euler: prod (1 - q^n) = sum_k (-1)^k q^(k(3k-1)/2), k over all integers
    let mut eta = (ctx.one(), BigInt::zero());
    let mut k = 1i64;
    loop {
        let e1 = (k * (3 * k - 1) / 2) as usize;
        if e1 >= powers.len() {
            break;
        }
        let e2 = (k * (3 * k + 1) / 2) as usize;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for e in [e1, e2] {
            if let Some(t) = powers.get(e) {
                eta.0 += &t.0 * sign;
                eta.1 += &t.1 * sign;
            }
        }
        k += 1;
    }
    let e2 = ctx.cmul(&eta, &eta);
    let e4p = ctx.cmul(&e2, &e2);
    let e8 = ctx.cmul(&e4p, &e4p);
    let e16 = ctx.cmul(&e8, &e8);
    let e24 = ctx.cmul(&e16, &e8);
    let num = ctx.cmul(&ctx.cmul(&ctx.cmul(&e4, &e4), &e4), &inv_q);
    ctx.cdiv(&num, &e24)
}

/// `j(tau)` with absolute error below `10^-digits`.
pub fn j_invariant(point: &CmPoint, digits: u32) -> Result<HpComplex> {
    check_digits(digits)?;
    let size = log10_size(&point.form) + 4.0;
    let ctx = Fixed::new(bits_for(digits as f64 + size) + 32);
    let (re, im) = j_fixed(&point.form, ctx);
    Ok(HpComplex { ctx, re, im })
}

/// Precision used to produce a class polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Precision {
    pub digits: u32,
    /// Largest distance of a computed coefficient from its rounded value.
    pub residual: f64,
}

/// Monic integer polynomial `prod (X - j(tau_Q))` over the reduced forms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassPolynomial {
    pub discriminant: i64,
    /// Ascending order; the last coefficient is 1.
    #[serde(with = "decimal_vec")]
    pub coefficients: Vec<BigInt>,
    /// `None` when loaded from a cache.
    pub precision: Option<Precision>,
}

mod decimal_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

impl ClassPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let pb = BigInt::from(p);
        let mut acc = BigInt::zero();
        for c in self.coefficients.iter().rev() {
            acc = (acc * x + c).mod_floor(&pb);
        }
        acc.to_u64().unwrap()
    }

    fn reduce_mod(&self, p: u64) -> fp::Poly {
        let pb = BigInt::from(p);
        fp::trim(
            self.coefficients
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }
}

impl std::fmt::Display for ClassPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{mag}*X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{mag}*X^{i}")?,
            }
        }
        Ok(())
    }
}

fn require_fundamental(d: &Discriminant) -> Result<()> {
    if !d.is_fundamental() {
        return Err(Error::NotFundamental(
            d.to_string(),
            d.conductor().to_string(),
        ));
    }
    Ok(())
}

/// Decimal digits of the largest coefficient, roughly.
pub fn coefficient_digits(d: &Discriminant) -> f64 {
    enumerate_reduced(d).iter().map(log10_size).sum::<f64>()
}

/// `H_Δ` for a fundamental discriminant.
pub fn hilbert_class_polynomial(d: &Discriminant) -> Result<ClassPolynomial> {
    hilbert_class_polynomial_with_guard(d, GUARD_DIGITS)
}

/// As [`hilbert_class_polynomial`] starting from `guard` extra digits;
/// on a rounding failure the guard is doubled, up to four times.
pub fn hilbert_class_polynomial_with_guard(
    d: &Discriminant,
    guard: u32,
) -> Result<ClassPolynomial> {
    require_fundamental(d)?;
    let forms = enumerate_reduced(d);
    let base = coefficient_digits(d).ceil() as u32 + 1;
    let mut guard = guard.max(1);
    let mut digits = base + guard;
    for _ in 0..=MAX_RETRIES {
        digits = base + guard;
        check_digits(digits)?;
        let ctx = Fixed::new(bits_for(digits as f64));
        let mut poly: Vec<Complex> = vec![(ctx.one(), BigInt::zero())];
        for f in &forms {
            let j = j_fixed(f, ctx);
            // poly *= (X - j)
            let mut next = vec![(BigInt::zero(), BigInt::zero()); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1].0 += &c.0;
                next[i + 1].1 += &c.1;
                let t = ctx.cmul(c, &j);
                next[i].0 -= t.0;
                next[i].1 -= t.1;
            }
            poly = next;
        }
        let mut residual = 0f64;
        let coefficients: Vec<BigInt> = poly
            .iter()
            .map(|(re, im)| {
                let n = ctx.round(re);
                let err = ctx.to_f64(&(re - ctx.int(n.clone())).abs()) + ctx.to_f64(&im.abs());
                residual = residual.max(err);
                n
            })
            .collect();
        if residual < MAX_RESIDUAL && coefficients.last().is_some_and(|c| c.is_one()) {
            return Ok(ClassPolynomial {
                discriminant: d.as_i64(),
                coefficients,
                precision: Some(Precision { digits, residual }),
            });
        }
        guard *= 2;
    }
    Err(Error::PrecisionExhausted(d.to_string(), digits))
}

/// JSON file mapping discriminants to coefficient lists.
#[derive(Debug)]
pub struct ClassPolynomialCache {
    path: PathBuf,
    entries: BTreeMap<String, Vec<String>>,
}

impl ClassPolynomialCache {
    /// Opens `path`, treating a missing file as empty.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let entries = match fs::read_to_string(&path) {
            Ok(text) => serde_json::from_str(&text)
                .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        Ok(ClassPolynomialCache { path, entries })
    }

    /// The cache named by `QF_CACHE`, if set.
    pub fn from_env() -> Option<Result<Self>> {
        std::env::var_os(CACHE_ENV).map(|p| Self::open(PathBuf::from(p)))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, d: &Discriminant) -> Option<Result<ClassPolynomial>> {
        let coeffs = self.entries.get(&d.to_string())?;
        Some(
            coeffs
                .iter()
                .map(|c| {
                    c.parse::<BigInt>()
                        .map_err(|_| Error::Cache(format!("bad coefficient {c:?} for {d}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(|coefficients| ClassPolynomial {
                    discriminant: d.as_i64(),
                    coefficients,
                    precision: None,
                }),
        )
    }

    pub fn insert(&mut self, poly: &ClassPolynomial) {
        self.entries.insert(
            poly.discriminant.to_string(),
            poly.coefficients.iter().map(|c| c.to_string()).collect(),
        );
    }

    /// Writes through a temporary file in the same directory and renames it
    /// over the target.
    pub fn save(&self) -> Result<()> {
        let text =
            serde_json::to_string_pretty(&self.entries).map_err(|e| Error::Cache(e.to_string()))?;
        let dir = self.path.parent().filter(|p| !p.as_os_str().is_empty());
        let dir = dir.unwrap_or(Path::new("."));
        let name = self
            .path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "cache".into());
        let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", self.path.display()));
        fs::write(&tmp, text + "\n").map_err(io)?;
        fs::rename(&tmp, &self.path).map_err(io)
    }

    pub fn get_or_compute(&mut self, d: &Discriminant) -> Result<ClassPolynomial> {
        if let Some(hit) = self.get(d) {
            return hit;
        }
        let poly = hilbert_class_polynomial(d)?;
        self.insert(&poly);
        self.save()?;
        Ok(poly)
    }
}

/// Number of irreducible factors of each degree of `poly` modulo `p`.
/// Coefficients are listed in ascending order and the polynomial must be
/// monic and squarefree modulo `p`.
pub fn distinct_degree_factor(poly: &[BigInt], p: u64) -> Result<Vec<(usize, usize)>> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let pb = BigInt::from(p);
    let f = fp::trim(
        poly.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    );
    if f.len() != poly.len() || f.last() != Some(&1) {
        return Err(Error::InvalidArgument("polynomial must be monic".into()));
    }
    if !fp::is_squarefree(&f, p) {
        return Err(Error::NonGenericPrime(p, "the given polynomial".into()));
    }
    Ok(fp::distinct_degree(&f, p))
}

/// How a rational prime decomposes in the Hilbert class field `L` of
/// `K = Q(sqrt Δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub p: u64,
    pub discriminant: i64,
    pub class_number: usize,
    /// `(Δ/p)`: 1 split in `K`, -1 inert.
    pub kronecker: i8,
    /// Whether `H_Δ` stays squarefree modulo `p`. Inert primes often fail
    /// this; their count does not depend on it.
    pub generic: bool,
    /// Factorization pattern of `H_Δ mod p` as `(degree, count)`, empty when
    /// not generic.
    pub degree_pattern: Vec<(usize, usize)>,
    /// Inertial degree of a prime of `K` above `p` in `L / K`.
    pub f: usize,
    /// Primes of `L` above each prime of `K` above `p`.
    pub g: usize,
    /// Primes of `L` above `p`.
    pub total: usize,
    /// Order of the classes representing `p`, when some class does.
    pub m: Option<u64>,
}

/// [`splitting_count_with`] after computing `H_Δ`.
pub fn splitting_count(p: u64, d: &Discriminant) -> Result<SplitReport> {
    require_fundamental(d)?;
    check_prime(p, d)?;
    splitting_count_with(&hilbert_class_polynomial(d)?, p)
}

fn check_prime(p: u64, d: &Discriminant) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if (d.field_discriminant() % p).is_zero() {
        return Err(Error::PrimeDividesDiscriminant(
            p.to_string(),
            d.to_string(),
        ));
    }
    Ok(())
}

/// Decomposition of `p` in `L`. When `p` splits in `K`, each of its two
/// primes has inertial degree `f` in `L / K`, the common degree of the
/// irreducible factors of `H_Δ mod p`; this needs `H_Δ` squarefree mod `p`.
/// An inert `p` generates a principal prime of `K`, which splits completely
/// in `L`, so `total = h` whatever the factorization.
pub fn splitting_count_with(poly: &ClassPolynomial, p: u64) -> Result<SplitReport> {
    let d = Discriminant::new(poly.discriminant)?;
    require_fundamental(&d)?;
    check_prime(p, &d)?;
    let h = poly.degree();
    let f_p = poly.reduce_mod(p);
    let kronecker = arith::kronecker(d.value(), &BigInt::from(p));
    let generic = fp::is_squarefree(&f_p, p);
    if !generic && kronecker == 1 {
        return Err(Error::NonGenericPrime(p, poly.discriminant.to_string()));
    }
    let pattern = if generic {
        fp::distinct_degree(&f_p, p)
    } else {
        Vec::new()
    };
    let (f, g, total) = if kronecker == 1 {
        if pattern.len() != 1 {
            return Err(Error::Consistency(format!(
                "H_{} mod {p} has factors of unequal degree: {pattern:?}",
                poly.discriminant
            )));
        }
        let f = pattern[0].0;
        (f, h / f, 2 * (h / f))
    } else {
        (1, h, h)
    };
    let m = representing_classes(&d, p)
        .first()
        .map(classgroup::order)
        .transpose()?;
    Ok(SplitReport {
        p,
        discriminant: poly.discriminant,
        class_number: h,
        kronecker,
        generic,
        degree_pattern: pattern,
        f,
        g,
        total,
        m,
    })
}

/// Reduced forms representing `p`.
pub fn representing_classes(d: &Discriminant, p: u64) -> Vec<Form> {
    let pb = BigInt::from(p);
    enumerate_reduced(d)
        .into_iter()
        .filter(|f| represent::represents(f, &pb).is_some())
        .collect()
}

/// Outcome of checking that `p` is represented by a class of order `m`
/// exactly when it has `2h/m` prime factors in `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem8Check {
    pub representing: Vec<Form>,
    pub order: Option<u64>,
    pub expected_total: Option<usize>,
    pub report: SplitReport,
    pub holds: bool,
}

/// [`verify_theorem8_with`] after computing `H_Δ`.
pub fn verify_theorem8(p: u64, d: &Discriminant) -> Result<Theorem8Check> {
    require_fundamental(d)?;
    check_prime(p, d)?;
    verify_theorem8_with(&hilbert_class_polynomial(d)?, p)
}

/// When some class of order `m` represents `p`, checks `total = 2h/m` and
/// that `m` equals the inertial degree `f`. Otherwise checks that `p` is
/// inert in `K`, since a prime split in `K` is the norm of an ideal and so is
/// represented by that ideal's class.
pub fn verify_theorem8_with(poly: &ClassPolynomial, p: u64) -> Result<Theorem8Check> {
    let report = splitting_count_with(poly, p)?;
    let d = Discriminant::new(poly.discriminant)?;
    let representing = representing_classes(&d, p);
    let h = report.class_number;
    let (order, expected_total, holds) = match report.m {
        Some(m) => {
            let expected = 2 * h / m as usize;
            let orders_agree = representing
                .iter()
                .all(|f| classgroup::order(f).is_ok_and(|o| o == m));
            let holds = orders_agree
                && report.kronecker == 1
                && report.total == expected
                && report.f as u64 == m;
            (Some(m), Some(expected), holds)
        }
        None => (None, None, report.kronecker == -1),
    };
    Ok(Theorem8Check {
        representing,
        order,
        expected_total,
        report,
        holds,
    })
}

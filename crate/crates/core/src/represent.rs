//! Representation of integers by forms: witnesses, bounded represented sets
//! and their intersections, local representability over `Z_p`, genus
//! characters, and searches for non-square multiples.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Place};
use crate::error::{Error, Result};
use crate::forms::{enumerate_reduced, Discriminant, Form};

/// An `(x, y)` pair with `Q(x, y) = m`.
pub type Witness = (BigInt, BigInt);

/// Above this many ellipse rows the exact search hands over to the
/// algebraic route.
const SEARCH_ROWS: i128 = 4_000_000;

/// A witness `(x, y)` with `f(x, y) = m`, or `None` when `m` is not
/// represented. Negative `m` is never represented by a positive-definite form.
pub fn represents(f: &Form, m: &BigInt) -> Option<Witness> {
    find_representation(f, m, false)
}

/// As [`represents`], restricted to witnesses with `gcd(x, y) = 1`.
pub fn properly_represents(f: &Form, m: &BigInt) -> Option<Witness> {
    find_representation(f, m, true)
}

fn find_representation(f: &Form, m: &BigInt, proper: bool) -> Option<Witness> {
    if m.is_negative() {
        return None;
    }
    if m.is_zero() {
        return if proper {
            None
        } else {
            Some((BigInt::zero(), BigInt::zero()))
        };
    }
    let rows = ellipse_rows(f, m);
    let found = match rows {
        Some(rows) if rows <= SEARCH_ROWS => search_ellipse(f, m, proper),
        _ => match represents_algebraic(f, m, proper) {
            Some(result) => result,
            None => search_ellipse(f, m, proper),
        },
    };
    debug_assert!(found.as_ref().is_none_or(|(x, y)| &f.eval(x, y) == m));
    found
}

/// Number of `x` rows in the ellipse `f(x, y) = m`, `x >= 0`.
fn ellipse_rows(f: &Form, m: &BigInt) -> Option<i128> {
    let (_, _, c) = f.small()?;
    let m = m.to_i128()?;
    let abs = -f.disc().to_i128()?;
    let num = 4i128.checked_mul(c)?.checked_mul(m)?;
    Some((num / abs).sqrt() + 1)
}

/// Scan `x = 0, 1, 2, ...` over the ellipse `|x| <= sqrt(4cm/|Δ|)` solving
/// for `y`, larger root first.
fn search_ellipse(f: &Form, m: &BigInt, proper: bool) -> Option<Witness> {
    if let (Some((a, b, c)), Some(mm), Some(abs)) = (f.small(), m.to_i128(), (-f.disc()).to_i128())
    {
        if let Some(four_cm) = 4i128.checked_mul(c).and_then(|v| v.checked_mul(mm)) {
            let xmax = (four_cm / abs).sqrt() + 1;
            for x in 0..=xmax {
                let disc = four_cm - abs * x * x;
                if disc < 0 {
                    break;
                }
                let r = disc.sqrt();
                if r * r != disc {
                    continue;
                }
                for s in [r, -r] {
                    let num = -b * x + s;
                    if num % (2 * c) != 0 {
                        continue;
                    }
                    let y = num / (2 * c);
                    if proper && x.gcd(&y) != 1 {
                        continue;
                    }
                    debug_assert_eq!(a * x * x + b * x * y + c * y * y, mm);
                    return Some((BigInt::from(x), BigInt::from(y)));
                }
            }
            return None;
        }
    }
    // arbitrary-precision fallback
    let abs = -f.disc();
    let four_cm = BigInt::from(4) * f.c() * m;
    let xmax = (&four_cm / &abs).sqrt() + 1;
    let mut x = BigInt::zero();
    while x <= xmax {
        let disc = &four_cm - &abs * &x * &x;
        if disc.is_negative() {
            break;
        }
        let r = disc.sqrt();
        if &r * &r == disc {
            for s in [r.clone(), -r.clone()] {
                let num = -f.b() * &x + s;
                let two_c = f.c() * 2u32;
                if !(&num % &two_c).is_zero() {
                    continue;
                }
                let y = num / two_c;
                if proper && !x.gcd(&y).is_one() {
                    continue;
                }
                return Some((x, y));
            }
        }
        x += 1;
    }
    None
}

/// Square roots of `delta` modulo `q^k`.
fn sqrt_mod_prime_power(delta: &BigInt, q: u64, k: u32) -> Vec<BigInt> {
    let qb = BigInt::from(q);
    let mut modulus = qb.clone();
    let divides = (delta % &qb).is_zero() || q == 2;
    let mut roots: Vec<BigInt> = if divides {
        (0..q)
            .map(BigInt::from)
            .filter(|x| ((x * x - delta).mod_floor(&qb)).is_zero())
            .collect()
    } else {
        match arith::sqrt_mod(delta, &qb) {
            Ok(Some(r)) => {
                let other = &qb - &r;
                if other == r {
                    vec![r]
                } else {
                    vec![r, other]
                }
            }
            _ => Vec::new(),
        }
    };
    for _ in 1..k {
        let next = &modulus * &qb;
        let mut lifted = BTreeSet::new();
        for r in &roots {
            if divides {
                for t in 0..q {
                    let cand = r + &modulus * t;
                    if ((&cand * &cand - delta).mod_floor(&next)).is_zero() {
                        lifted.insert(cand);
                    }
                }
            } else {
                // Newton step, 2r invertible mod q
                let inv = (BigInt::from(2) * r)
                    .modpow(&(&qb - 2u32), &qb)
                    .mod_floor(&qb);
                let inv = hensel_inverse(&(BigInt::from(2) * r), &inv, &next);
                let cand = (r - (r * r - delta) * inv).mod_floor(&next);
                lifted.insert(cand);
            }
        }
        roots = lifted.into_iter().collect();
        modulus = next;
    }
    roots
}

/// Lift an inverse of `a` mod `q` to an inverse mod `modulus` (a power of `q`).
fn hensel_inverse(a: &BigInt, inv: &BigInt, modulus: &BigInt) -> BigInt {
    let mut x = inv.clone();
    // x <- x (2 - a x) doubles the precision
    for _ in 0..64 {
        let next = (&x * (BigInt::from(2) - a * &x)).mod_floor(modulus);
        if next == x {
            break;
        }
        x = next;
    }
    x
}

/// Square roots of `delta` modulo `modulus` given its factorization.
fn sqrt_mod_composite(delta: &BigInt, factors: &[(u64, u32)]) -> Vec<(BigInt, BigInt)> {
    // (residue, modulus) pairs combined by CRT
    let mut acc: Vec<(BigInt, BigInt)> = vec![(BigInt::zero(), BigInt::one())];
    for &(q, k) in factors {
        let qk = BigInt::from(q).pow(k);
        let roots = sqrt_mod_prime_power(delta, q, k);
        if roots.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(acc.len() * roots.len());
        for (r1, m1) in &acc {
            let e = m1.extended_gcd(&qk);
            for r2 in &roots {
                // x ≡ r1 (m1), x ≡ r2 (qk)
                let m = m1 * &qk;
                let x = (r1 * &e.y * &qk + r2 * &e.x * m1).mod_floor(&m);
                next.push((x, m));
            }
        }
        acc = next;
    }
    acc
}

/// Representation through the correspondence between proper representations
/// of `n` and solutions of `b^2 ≡ Δ (mod 4n)`. Returns `None` when `m` cannot
/// be fully factored by trial division.
fn represents_algebraic(f: &Form, m: &BigInt, proper: bool) -> Option<Option<Witness>> {
    let fac = arith::factor(m).ok()?;
    if !fac.is_complete() {
        return None;
    }
    let delta = f.disc();
    let (target, to_target) = f.reduce();
    // all d with d^2 | m, smallest first
    let mut divisors = vec![(BigInt::one(), fac.primes.clone())];
    if !proper {
        for &(p, e) in &fac.primes {
            let mut next = Vec::new();
            for (d, rest) in &divisors {
                for j in 0..=e / 2 {
                    let mut r = rest.clone();
                    for entry in r.iter_mut() {
                        if entry.0 == p {
                            entry.1 -= 2 * j;
                        }
                    }
                    next.push((d * BigInt::from(p).pow(j), r));
                }
            }
            divisors = next;
        }
        divisors.sort_by(|x, y| x.0.cmp(&y.0));
    }
    for (d, n_factors) in divisors {
        let n: BigInt = m / (&d * &d);
        let mut mod4n: BTreeMap<u64, u32> = n_factors
            .iter()
            .filter(|&&(_, e)| e > 0)
            .map(|&(p, e)| (p, e))
            .collect();
        *mod4n.entry(2).or_insert(0) += 2;
        let factors: Vec<(u64, u32)> = mod4n.into_iter().collect();
        let two_n = &n * 2;
        let bs: BTreeSet<BigInt> = sqrt_mod_composite(&delta, &factors)
            .into_iter()
            .map(|(b, _)| b.mod_floor(&two_n))
            .collect();
        for b in bs {
            let num = &b * &b - &delta;
            let four_n = &n * 4u32;
            if !(&num % &four_n).is_zero() {
                continue;
            }
            let c = num / four_n;
            let Ok(g) = Form::new(n.clone(), b, c) else {
                continue;
            };
            let (rg, to_rg) = g.reduce();
            if rg != target {
                continue;
            }
            // g(1,0) = n, rg(v) = g(to_rg v), target(u) = f(to_target u)
            let v = to_rg
                .inverse_unimodular()
                .apply(&BigInt::one(), &BigInt::zero());
            let (x, y) = to_target.apply(&v.0, &v.1);
            let w = (x * &d, y * &d);
            debug_assert_eq!(&f.eval(&w.0, &w.1), m);
            return Some(Some(w));
        }
    }
    Some(None)
}

/// Fixed-size bitset over `0..=bound`.
#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(bound: u64) -> Self {
        BitSet {
            words: vec![0; (bound / 64 + 1) as usize],
        }
    }

    fn insert(&mut self, i: u64) {
        self.words[(i / 64) as usize] |= 1 << (i % 64);
    }

    fn contains(&self, i: u64) -> bool {
        self.words[(i / 64) as usize] & (1 << (i % 64)) != 0
    }

    fn intersect(&mut self, other: &BitSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64)
                .filter(move |b| w & (1 << b) != 0)
                .map(move |b| i as u64 * 64 + b)
        })
    }
}

/// Visit every lattice point with `0 < f(x, y) <= bound`, one of each `±(x, y)`
/// pair, in order of increasing `y` then `x`.
fn for_each_point(f: &Form, bound: u64, mut visit: impl FnMut(u64, i64, i64)) -> Result<()> {
    let (a, b, c) = f
        .small()
        .ok_or_else(|| Error::TooLarge(format!("coefficients of {f}")))?;
    let abs = (-f.disc())
        .to_i128()
        .ok_or_else(|| Error::TooLarge(f.to_string()))?;
    let bound = bound as i128;
    let ymax = (4 * a * bound / abs).sqrt() + 1;
    for y in 0..=ymax {
        let disc = 4 * a * bound - abs * y * y;
        if disc < 0 {
            break;
        }
        let r = disc.sqrt() + 1;
        let lo = Integer::div_floor(&(-b * y - r), &(2 * a));
        let hi = Integer::div_floor(&(-b * y + r), &(2 * a)) + 1;
        let lo = if y == 0 { 1 } else { lo };
        for x in lo..=hi {
            let v = a * x * x + b * x * y + c * y * y;
            if v > 0 && v <= bound {
                visit(v as u64, x as i64, y as i64);
            }
        }
    }
    Ok(())
}

fn value_bits(f: &Form, bound: u64) -> Result<BitSet> {
    let mut bits = BitSet::new(bound);
    for_each_point(f, bound, |v, _, _| bits.insert(v))?;
    Ok(bits)
}

/// Sorted values `0 < m <= bound` represented by `f`.
pub fn represented_values(f: &Form, bound: u64) -> Result<Vec<u64>> {
    Ok(value_bits(f, bound)?.iter().filter(|&v| v > 0).collect())
}

/// Values up to a bound represented by every form of a collection, with one
/// witness per value and form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSet {
    pub forms: Vec<Form>,
    pub bound: u64,
    pub values: Vec<u64>,
    /// value -> one `[x, y]` per form, in the order of `forms`
    pub witnesses: BTreeMap<u64, Vec<[i64; 2]>>,
}

impl RepSet {
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Re-evaluates every witness.
    pub fn verify(&self) -> bool {
        let sorted = self.values.windows(2).all(|w| w[0] < w[1]);
        sorted
            && self.values.iter().all(|v| {
                self.witnesses.get(v).is_some_and(|ws| {
                    ws.len() == self.forms.len()
                        && ws.iter().zip(&self.forms).all(|(w, f)| {
                            f.eval(&BigInt::from(w[0]), &BigInt::from(w[1])) == BigInt::from(*v)
                        })
                })
            })
    }
}

/// `int(S)` truncated at `bound`: values `0 < m <= bound` represented by every
/// form in `forms`.
pub fn rep_set(forms: &[Form], bound: u64) -> Result<RepSet> {
    if forms.is_empty() {
        return Err(Error::InvalidArgument(
            "rep_set needs at least one form".into(),
        ));
    }
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be positive".into()));
    }
    let mut common = value_bits(&forms[0], bound)?;
    for f in &forms[1..] {
        common.intersect(&value_bits(f, bound)?);
    }
    let values: Vec<u64> = common.iter().filter(|&v| v > 0).collect();
    let mut witnesses: BTreeMap<u64, Vec<[i64; 2]>> = values
        .iter()
        .map(|&v| (v, Vec::with_capacity(forms.len())))
        .collect();
    if !values.is_empty() {
        for f in forms {
            let mut first: BTreeMap<u64, [i64; 2]> = BTreeMap::new();
            for_each_point(f, bound, |v, x, y| {
                if common.contains(v) {
                    first.entry(v).or_insert([x, y]);
                }
            })?;
            for (v, w) in first {
                witnesses.get_mut(&v).unwrap().push(w);
            }
        }
    }
    Ok(RepSet {
        forms: forms.to_vec(),
        bound,
        values,
        witnesses,
    })
}

/// Whether an odd prime `p ∤ Δ` is represented by some form of discriminant
/// `Δ`, decided by `(Δ/p) = 1` and cross-checked by direct search for
/// `p <= 10^4`.
pub fn prime_represented_by_some_form(d: &Discriminant, p: u64) -> Result<bool> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let pb = BigInt::from(p);
    if (d.value() % &pb).is_zero() {
        return Err(Error::PrimeDividesDiscriminant(
            p.to_string(),
            d.to_string(),
        ));
    }
    let by_symbol = arith::kronecker(d.value(), &pb) == 1;
    if p <= 10_000 {
        let by_search = enumerate_reduced(d)
            .iter()
            .any(|f| represents(f, &pb).is_some());
        if by_search != by_symbol {
            return Err(Error::Consistency(format!(
                "residue test and search disagree for p = {p}, Δ = {d}"
            )));
        }
    }
    Ok(by_symbol)
}

/// Local solvability of `f = m` at one place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalPlace {
    #[serde(serialize_with = "ser_place", deserialize_with = "de_place")]
    pub place: Place,
    pub represented: bool,
}

fn ser_place<S: serde::Serializer>(p: &Place, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn de_place<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Place, D::Error> {
    let s = String::deserialize(d)?;
    if s == "inf" {
        Ok(Place::Infinity)
    } else {
        s.parse()
            .map(Place::Prime)
            .map_err(serde::de::Error::custom)
    }
}

/// Per-place report of local representability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub form: Form,
    pub value: String,
    pub represented: bool,
    pub places: Vec<LocalPlace>,
}

impl LocalReport {
    pub fn obstruction(&self) -> Option<Place> {
        self.places.iter().find(|p| !p.represented).map(|p| p.place)
    }
}

/// Whether `m >= 1` is represented by `f` over the reals and over every
/// `Z_p`. Only primes dividing `2Δm` can obstruct.
pub fn locally_represented(f: &Form, m: &BigInt) -> Result<LocalReport> {
    if !m.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "locally_represented needs m >= 1, got {m}"
        )));
    }
    let delta = f.disc();
    let fac = arith::factor(&(&delta * m * 2))?;
    if let Some(u) = fac.unsplit {
        return Err(Error::TooLarge(format!("cofactor {u} of 2Δm")));
    }
    let mut places = vec![LocalPlace {
        place: Place::Infinity,
        represented: true,
    }];
    for &(p, _) in &fac.primes {
        places.push(LocalPlace {
            place: Place::Prime(p),
            represented: represented_over_zp(f, m, p)?,
        });
    }
    let represented = places.iter().all(|p| p.represented);
    Ok(LocalReport {
        form: f.clone(),
        value: m.to_string(),
        represented,
        places,
    })
}

/// Decides `f(x, y) = m` over `Z_p`.
///
/// Any solution has `2 min(v(x), v(y)) <= v(m)`, so it suffices to look for a
/// primitive solution of `f = m / p^(2s)` for each such `s`. For a primitive
/// vector the gradient valuation `t` is at most `v(Δ)`, and a solution modulo
/// `p^j` with `j >= 2t + 1` lifts by Hensel's lemma.
pub fn represented_over_zp(f: &Form, m: &BigInt, p: u64) -> Result<bool> {
    let delta = f.disc();
    let pb = BigInt::from(p);
    let v_delta = arith::valuation(&delta, p).0;
    if p != 2 && v_delta == 0 {
        // unimodular at odd p: represents all units, and p | m' primitively iff isotropic mod p
        let v_m = arith::valuation(m, p).0;
        return Ok(v_m.is_multiple_of(2) || arith::kronecker(&delta, &pb) == 1);
    }
    if p != 2 {
        return Ok(represented_odd(f, m, p, v_delta));
    }
    let (v_m, _) = arith::valuation(m, p);
    let k = 2 * v_delta + 1;
    let modulus = pb
        .pow(k)
        .to_i128()
        .ok_or_else(|| Error::TooLarge(format!("{p}^{k}")))?;
    if modulus > (1i128 << 40) {
        return Err(Error::TooLarge(format!("{p}^{k}")));
    }
    let reduce = |n: &BigInt| -> i128 { n.mod_floor(&BigInt::from(modulus)).to_i128().unwrap() };
    let (a, b, c) = (reduce(f.a()), reduce(f.b()), reduce(f.c()));
    for s in 0..=v_m / 2 {
        let target = reduce(&(m / pb.pow(2 * s)));
        if primitive_solution_mod(a, b, c, target, p as i128, k) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Odd `p` dividing `Δ`. A primitive form takes some unit value `u1` and then
/// splits over `Z_p` as `<u1> + <u2 p^v>` with `u1 u2 p^v = -Δ/4`.
fn represented_odd(f: &Form, m: &BigInt, p: u64, v: u32) -> bool {
    let pb = BigInt::from(p);
    let u1 = [f.a().clone(), f.c().clone(), f.a() + f.b() + f.c()]
        .into_iter()
        .find(|u| !(u % &pb).is_zero())
        .expect("primitive form takes a unit value mod p");
    let rest = -f.disc() / pb.pow(v);
    let chi1 = arith::kronecker(&u1, &pb);
    let chi2 = arith::kronecker(&rest, &pb) * chi1;
    let (e, w) = arith::valuation(m, p);
    diagonal_represents((0, chi1), (v, chi2), e, arith::kronecker(&w, &pb), p)
}

/// Whether `u1 p^α x^2 + u2 p^β y^2` represents `p^e w` over `Z_p`, `p` odd,
/// with the units given by their Legendre symbols.
fn diagonal_represents(mut x: (u32, i8), mut y: (u32, i8), mut e: u32, w: i8, p: u64) -> bool {
    let minus_one = if p % 4 == 1 { 1 } else { -1 };
    loop {
        if x.0 > y.0 {
            std::mem::swap(&mut x, &mut y);
        }
        let ((alpha, c1), (beta, c2)) = (x, y);
        if alpha > 0 {
            if e < alpha {
                return false;
            }
            e -= alpha;
            x.0 = 0;
            y.0 = beta - alpha;
            continue;
        }
        if beta == 0 {
            return e.is_multiple_of(2) || minus_one * c1 * c2 == 1;
        }
        if e == 0 {
            return c1 * w == 1;
        }
        // p | m forces p | x
        x.0 = 2;
    }
}

fn val_capped(n: i128, p: i128, cap: u32) -> u32 {
    if n == 0 {
        return cap;
    }
    let mut n = n;
    let mut k = 0;
    while n % p == 0 && k < cap {
        n /= p;
        k += 1;
    }
    k
}

/// Breadth-first lifting of primitive solutions of `ax^2+bxy+cy^2 ≡ m`
/// from `p` to `p^k`, stopping at the first Hensel-liftable one.
fn primitive_solution_mod(a: i128, b: i128, c: i128, m: i128, p: i128, k: u32) -> bool {
    let q = |x: i128, y: i128| a * x * x + b * x * y + c * y * y;
    let mut level: Vec<(i128, i128)> = (0..p)
        .flat_map(|x| (0..p).map(move |y| (x, y)))
        .filter(|&(x, y)| (x % p != 0 || y % p != 0) && (q(x, y) - m).rem_euclid(p) == 0)
        .collect();
    let mut pj = p;
    for j in 1..=k {
        for &(x, y) in &level {
            let t = val_capped(2 * a * x + b * y, p, j).min(val_capped(b * x + 2 * c * y, p, j));
            if 2 * t < j {
                return true;
            }
        }
        if j == k || level.is_empty() {
            break;
        }
        let next_pj = pj * p;
        let mut next = Vec::new();
        for &(x, y) in &level {
            for s in 0..p {
                for t in 0..p {
                    let (nx, ny) = (x + s * pj, y + t * pj);
                    if (q(nx, ny) - m).rem_euclid(next_pj) == 0 {
                        next.push((nx, ny));
                    }
                }
            }
        }
        level = next;
        pj = next_pj;
    }
    false
}

/// Values of the assigned genus characters on a form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusCharacters {
    /// `chi_p` for odd `p | Δ`, then `delta`, `epsilon` or `delta*epsilon`
    /// as dictated by `Δ / 4 (mod 8)`.
    pub labels: Vec<String>,
    pub values: Vec<i8>,
    /// The represented value coprime to `2Δ` the characters were evaluated on.
    pub evaluated_at: u64,
}

#[derive(Clone, Copy)]
enum Character {
    Legendre(u64),
    Delta,
    Epsilon,
    DeltaEpsilon,
}

impl Character {
    fn label(&self) -> String {
        match self {
            Character::Legendre(p) => format!("chi_{p}"),
            Character::Delta => "delta".into(),
            Character::Epsilon => "epsilon".into(),
            Character::DeltaEpsilon => "delta*epsilon".into(),
        }
    }

    fn eval(&self, n: u64) -> i8 {
        let delta = if n % 4 == 1 { 1 } else { -1 };
        let eps = if n % 8 == 1 || n % 8 == 7 { 1 } else { -1 };
        match self {
            Character::Legendre(p) => arith::kronecker_i64(n as i64, *p as i64),
            Character::Delta => delta,
            Character::Epsilon => eps,
            Character::DeltaEpsilon => delta * eps,
        }
    }
}

fn assigned_characters(d: &Discriminant) -> Result<Vec<Character>> {
    let delta = d.as_i64();
    let mut chars: Vec<Character> = arith::factor(&BigInt::from(delta))?
        .primes
        .iter()
        .filter(|&&(p, _)| p != 2)
        .map(|&(p, _)| Character::Legendre(p))
        .collect();
    if delta.rem_euclid(4) == 0 {
        let n = -delta / 4;
        match n.rem_euclid(8) {
            3 | 7 => {}
            1 | 5 | 4 => chars.push(Character::Delta),
            2 => chars.push(Character::DeltaEpsilon),
            6 => chars.push(Character::Epsilon),
            0 => {
                chars.push(Character::Delta);
                chars.push(Character::Epsilon);
            }
            _ => unreachable!(),
        }
    }
    Ok(chars)
}

/// Assigned characters evaluated on a value represented by `f` and coprime to
/// `2Δ`. Two forms of one discriminant lie in the same genus iff their
/// vectors agree.
pub fn genus_characters(f: &Form) -> Result<GenusCharacters> {
    let d = f.discriminant()?;
    let chars = assigned_characters(&d)?;
    let two_delta = (2 * d.as_i64()).unsigned_abs();
    let mut bound = 64u64;
    let n = loop {
        let vals = represented_values(f, bound)?;
        if let Some(&n) = vals.iter().find(|&&v| v.gcd(&two_delta) == 1) {
            break n;
        }
        bound *= 4;
    };
    Ok(GenusCharacters {
        labels: chars.iter().map(Character::label).collect(),
        values: chars.iter().map(|c| c.eval(n)).collect(),
        evaluated_at: n,
    })
}

/// Outcome of a bounded multiple search. Running out of bound is not a proof
/// of nonexistence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultipleSearch {
    Found {
        k: u64,
        value: BigInt,
        witnesses: Vec<Witness>,
    },
    BoundExhausted {
        bound: u64,
    },
}

impl fmt::Display for MultipleSearch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultipleSearch::Found { k, value, .. } => write!(f, "k = {k}, value = {value}"),
            MultipleSearch::BoundExhausted { bound } => {
                write!(f, "no admissible k <= {bound} (bound exhausted)")
            }
        }
    }
}

fn require_local(f: &Form, m: &BigInt) -> Result<()> {
    let report = locally_represented(f, m)?;
    match report.obstruction() {
        None => Ok(()),
        Some(place) => Err(Error::NotLocallyRepresented {
            form: f.to_string(),
            value: m.to_string(),
            place: place.to_string(),
        }),
    }
}

/// `k` is admissible when neither `k` nor `m*k` is a perfect square.
fn admissible(k: u64, m: &BigInt) -> bool {
    let kb = BigInt::from(k);
    !arith::is_square(&kb) && !arith::is_square(&(m * &kb))
}

/// Smallest admissible `k <= bound` with `m*k` represented by `f`.
pub fn nonsquare_multiple(f: &Form, m: &BigInt, bound: u64) -> Result<MultipleSearch> {
    joint_nonsquare_multiple_of(&[f], m, bound)
}

/// Smallest admissible `k <= bound` with `m*k` represented by both forms.
///
/// The companion integer `n ≢ 0 (mod m)` of the existence theorem plays no
/// role in the search and is not taken as input.
pub fn joint_nonsquare_multiple(
    f1: &Form,
    f2: &Form,
    m: &BigInt,
    bound: u64,
) -> Result<MultipleSearch> {
    joint_nonsquare_multiple_of(&[f1, f2], m, bound)
}

fn joint_nonsquare_multiple_of(forms: &[&Form], m: &BigInt, bound: u64) -> Result<MultipleSearch> {
    if !m.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "m must be positive, got {m}"
        )));
    }
    for f in forms {
        require_local(f, m)?;
    }
    'k: for k in 2..=bound {
        if !admissible(k, m) {
            continue;
        }
        let value = m * BigInt::from(k);
        let mut witnesses = Vec::with_capacity(forms.len());
        for f in forms {
            match represents(f, &value) {
                Some(w) => witnesses.push(w),
                None => continue 'k,
            }
        }
        return Ok(MultipleSearch::Found {
            k,
            value,
            witnesses,
        });
    }
    Ok(MultipleSearch::BoundExhausted { bound })
}

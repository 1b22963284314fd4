//! Integer and rational number theory used by every other module: residue
//! symbols, modular square roots, primality, trial-division factorization and
//! local Hilbert symbols.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division bound used by [`factor`].
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Miller–Rabin bases that are deterministic for every `n < 3.3 * 10^24`,
/// which covers all of `u64`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// A place of the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Kronecker symbol `(a / n)`.
///
/// `kronecker(a, 0)` is 1 when `a = ±1` and 0 otherwise. For an odd prime `n`
/// this is the Legendre symbol.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i8 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    let mut n = n.clone();
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    let twos = n.trailing_zeros().unwrap_or(0);
    if twos > 0 {
        if a.is_even() {
            return 0;
        }
        n >>= twos;
        let a8 = a.mod_floor(&BigInt::from(8)).to_u8().unwrap();
        if twos % 2 == 1 && (a8 == 3 || a8 == 5) {
            result = -result;
        }
    }
    result * jacobi(a, &n)
}

/// Kronecker symbol on machine integers.
pub fn kronecker_i64(a: i64, n: i64) -> i8 {
    kronecker(&BigInt::from(a), &BigInt::from(n))
}

/// Jacobi symbol for odd positive `n`.
fn jacobi(a: &BigInt, n: &BigInt) -> i8 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result: i8 = 1;
    while !a.is_zero() {
        let twos = a.trailing_zeros().unwrap_or(0);
        a >>= twos;
        let n8 = (&n % 8u32).to_u8().unwrap();
        if twos % 2 == 1 && (n8 == 3 || n8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u8() == Some(3) && (&n % 4u32).to_u8() == Some(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit integers (Miller–Rabin with the
/// first twelve primes as witnesses).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary-precision input; values of 2^64 or more are
/// rejected since the witness set is only proven below that.
pub fn is_prime_big(n: &BigInt) -> Result<bool> {
    if n.is_negative() {
        return Ok(false);
    }
    let small = n.to_u64().ok_or_else(|| Error::TooLarge(n.to_string()))?;
    Ok(is_prime(small))
}

/// Square root of `a` modulo the prime `p` by Tonelli–Shanks. Returns the
/// smaller of the two roots, or `None` when `a` is a non-residue.
pub fn sqrt_mod(a: &BigInt, p: &BigInt) -> Result<Option<BigInt>> {
    if !is_prime_big(p)? {
        return Err(Error::NotPrime(p.to_string()));
    }
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Ok(Some(a));
    }
    if p == &BigInt::from(2) {
        return Ok(Some(a));
    }
    if kronecker(&a, p) != 1 {
        return Ok(None);
    }
    let one = BigInt::one();
    let pm1: BigInt = p - &one;
    let s = pm1.trailing_zeros().unwrap();
    let q: BigInt = &pm1 >> s;

    let root = if s == 1 {
        a.modpow(&((p + &one) >> 2), p)
    } else {
        let mut z = BigInt::from(2);
        while kronecker(&z, p) != -1 {
            z += 1;
        }
        let mut m = s;
        let mut c = z.modpow(&q, p);
        let mut t = a.modpow(&q, p);
        let mut r = a.modpow(&((&q + &one) >> 1), p);
        while !t.is_one() {
            let mut i = 0;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = (&t2 * &t2) % p;
                i += 1;
            }
            let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
            m = i;
            c = (&b * &b) % p;
            t = (&t * &c) % p;
            r = (&r * &b) % p;
        }
        r
    };
    let other = p - &root;
    Ok(Some(if other < root { other } else { root }))
}

/// `p`-adic valuation of a nonzero integer together with the cofactor.
pub fn valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    debug_assert!(!n.is_zero() && p >= 2);
    let p = BigInt::from(p);
    let mut k = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        rest = q;
        k += 1;
    }
    (k, rest)
}

/// Result of trial-division factorization of `|n|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub primes: Vec<(u64, u32)>,
    /// A cofactor with no prime factor below the trial bound that is known to be
    /// a product of two distinct primes (hence squarefree) but was not split.
    pub unsplit: Option<u64>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unsplit.is_none()
    }

    pub fn is_squarefree(&self) -> bool {
        self.primes.iter().all(|&(_, e)| e == 1)
    }
}

/// Factor `|n|` by trial division up to [`DEFAULT_TRIAL_BOUND`] plus a
/// primality test on the remaining cofactor.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    factor_with_bound(n, DEFAULT_TRIAL_BOUND)
}

pub fn factor_with_bound(n: &BigInt, bound: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut rest = n.abs();
    let mut primes = Vec::new();
    let mut d: u64 = 2;
    while d <= bound {
        let dd = BigInt::from(d);
        if &dd * &dd > rest {
            break;
        }
        if (&rest % &dd).is_zero() {
            let mut e = 0;
            while (&rest % &dd).is_zero() {
                rest /= &dd;
                e += 1;
            }
            primes.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(Factorization {
            primes,
            unsplit: None,
        });
    }
    let r = rest
        .to_u64()
        .ok_or_else(|| Error::TooLarge(format!("unfactored cofactor {rest} of {n}")))?;
    let bound128 = bound as u128;
    if (r as u128) < (d as u128) * (d as u128) || is_prime(r) {
        primes.push((r, 1));
    } else {
        let s = r.sqrt();
        if s * s == r && is_prime(s) {
            primes.push((s, 2));
        } else if (r as u128) < bound128 * bound128 * bound128 {
            // no factor below the bound, not prime, not a square: two distinct primes
            primes.sort_unstable();
            return Ok(Factorization {
                primes,
                unsplit: Some(r),
            });
        } else {
            return Err(Error::TooLarge(format!(
                "cofactor {r} of {n} cannot be classified by trial division"
            )));
        }
    }
    primes.sort_unstable();
    Ok(Factorization {
        primes,
        unsplit: None,
    })
}

/// The squarefree integer in the square class of `n` (sign kept).
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let fac = factor(n)?;
    let mut out = n.signum();
    for (p, e) in fac.primes {
        if e % 2 == 1 {
            out *= p;
        }
    }
    if let Some(u) = fac.unsplit {
        out *= u;
    }
    Ok(out)
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub(crate) fn is_square(n: &BigInt) -> bool {
    is_perfect_square(n)
}

/// Hilbert symbol `(a, b)_v` for nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    // a = n/d lies in the square class of n*d
    let a = a.numer() * a.denom();
    let b = b.numer() * b.denom();
    hilbert_symbol_int(&a, &b, place)
}

/// Hilbert symbol `(a, b)_v` for nonzero integers.
///
/// Odd `p`: `(-1)^(αβε(p)) (u/p)^β (v/p)^α` for `a = p^α u`, `b = p^β v`.
/// `p = 2`: `(-1)^(ε(u)ε(v) + αω(v) + βω(u))`. Real place: `-1` iff both are
/// negative.
pub fn hilbert_symbol_int(a: &BigInt, b: &BigInt, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let p = match place {
        Place::Infinity => {
            return Ok(if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            })
        }
        Place::Prime(p) => p,
    };
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let (alpha, u) = valuation(a, p);
    let (beta, v) = valuation(b, p);
    if p == 2 {
        let eps = |x: &BigInt| -> u32 {
            // (x - 1)/2 mod 2 for odd x
            let r = x.mod_floor(&BigInt::from(4)).to_u32().unwrap();
            if r == 3 {
                1
            } else {
                0
            }
        };
        let omega = |x: &BigInt| -> u32 {
            // (x^2 - 1)/8 mod 2 for odd x
            let r = x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
            if r == 3 || r == 5 {
                1
            } else {
                0
            }
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        Ok(if e % 2 == 0 { 1 } else { -1 })
    } else {
        let pb = BigInt::from(p);
        let mut s: i8 = if (alpha * beta) % 2 == 1 && p % 4 == 3 {
            -1
        } else {
            1
        };
        if beta % 2 == 1 {
            s *= kronecker(&u, &pb);
        }
        if alpha % 2 == 1 {
            s *= kronecker(&v, &pb);
        }
        Ok(s)
    }
}

/// Whether a nonzero integer is a square in the `p`-adic field.
pub fn is_padic_square(n: &BigInt, p: u64) -> bool {
    debug_assert!(!n.is_zero());
    let (v, u) = valuation(n, p);
    if v % 2 == 1 {
        return false;
    }
    if p == 2 {
        u.mod_floor(&BigInt::from(8)) == BigInt::one()
    } else {
        kronecker(&u, &BigInt::from(p)) == 1
    }
}

/// Smallest prime greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

/// Primes in `[lo, hi)`.
pub fn primes_in(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..hi).filter(|&n| is_prime(n))
}

//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the algorithm it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use qforms::classgroup::ClassGroup;
use qforms::{Discriminant, Form};

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn coeffs(f: &Form) -> (i64, i64, i64) {
    (
        f.a().to_i64().unwrap(),
        f.b().to_i64().unwrap(),
        f.c().to_i64().unwrap(),
    )
}

pub fn form(a: i64, b: i64, c: i64) -> Form {
    Form::new(a, b, c).unwrap()
}

pub fn disc(v: i64) -> Discriminant {
    Discriminant::new(v).unwrap()
}

/// Negative discriminants in `[lo, hi]`.
pub fn discriminants(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi.min(-3)).filter(|d| d.rem_euclid(4) <= 1).collect()
}

/// Reduced primitive forms by direct search over `|b| <= a <= c`.
pub fn naive_reduced(delta: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -delta {
        for b in -a..=a {
            let num = b * b - delta;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || gcd(gcd(a, b), c) != 1 {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            out.push((a, b, c));
        }
        a += 1;
    }
    out.sort();
    out
}

pub fn eval(f: (i64, i64, i64), x: i64, y: i64) -> i64 {
    f.0 * x * x + f.1 * x * y + f.2 * y * y
}

/// All values `0 < v <= bound` of `f`, scanning a box that contains the
/// ellipse.
pub fn naive_values(f: (i64, i64, i64), bound: i64) -> BTreeSet<i64> {
    let abs = f.1 * f.1 - 4 * f.0 * f.2;
    let abs = -abs;
    let xmax = isqrt(4 * f.2 * bound / abs) + 1;
    let ymax = isqrt(4 * f.0 * bound / abs) + 1;
    let mut out = BTreeSet::new();
    for x in -xmax..=xmax {
        for y in -ymax..=ymax {
            let v = eval(f, x, y);
            if v > 0 && v <= bound {
                out.insert(v);
            }
        }
    }
    out
}

/// For each `y` in the ellipse, solves `a x^2 + b y x + c y^2 - m = 0`.
pub fn naive_represents(f: (i64, i64, i64), m: i64) -> bool {
    if m == 0 {
        return true;
    }
    let (a, b, c) = (f.0 as i128, f.1 as i128, f.2 as i128);
    let delta = b * b - 4 * a * c;
    let m = m as i128;
    let ymax = isqrt((4 * a * m / -delta) as i64) as i128 + 1;
    (-ymax..=ymax).any(|y| {
        let disc = delta * y * y + 4 * a * m;
        if disc < 0 {
            return false;
        }
        let s = isqrt(disc as i64) as i128;
        s * s == disc && [-b * y + s, -b * y - s].iter().any(|n| n % (2 * a) == 0)
    })
}

pub fn valuation(mut n: i64, p: i64) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn squarefree(n: i64) -> i64 {
    let mut n = n;
    let mut d = 2;
    while d * d <= n.abs() {
        while n % (d * d) == 0 {
            n /= d * d;
        }
        d += 1;
    }
    n
}

/// `(a, b)_p` from solvability of `z^2 = a x^2 + b y^2`.
///
/// After reducing `a, b` to squarefree, a primitive solution has gradient
/// valuation at most 1 for odd `p` and at most 2 for `p = 2`, so primitive
/// solvability modulo `p^3` or `2^5` lifts and decides the symbol.
pub fn hilbert_oracle(a: i64, b: i64, p: i64) -> i8 {
    let (a, b) = (squarefree(a), squarefree(b));
    let k = if p == 2 { 5 } else { 3 };
    let q = p.pow(k);
    let mut square = vec![false; q as usize];
    let mut unit_square = vec![false; q as usize];
    for z in 0..q {
        let s = (z * z % q) as usize;
        square[s] = true;
        if z % p != 0 {
            unit_square[s] = true;
        }
    }
    for x in 0..q {
        for y in 0..q {
            let r = (a * x * x + b * y * y).rem_euclid(q) as usize;
            let primitive = x % p != 0 || y % p != 0;
            if (primitive && square[r]) || unit_square[r] {
                return 1;
            }
        }
    }
    -1
}

/// Local representability through genera: `m` is represented by `f` over
/// every `Z_p` iff some form of the genus `f C^2` represents `m`.
pub fn genus_local_oracle(group: &ClassGroup, f: &Form, m: i64) -> bool {
    let i = group.index_of(f).expect("reduced form");
    let squares: BTreeSet<usize> = (0..group.class_number()).map(|s| group.mul(s, s)).collect();
    squares
        .iter()
        .map(|&s| group.mul(i, s))
        .any(|g| naive_represents(coeffs(&group.elements()[g]), m))
}

/// Solvability of `f(x, y) ≡ m (mod p^n)` by scanning all residues.
/// `None` when the scan would exceed `limit` pairs.
pub fn modular_oracle(f: (i64, i64, i64), m: i64, p: i64, n: u32, limit: i64) -> Option<bool> {
    let q = p.checked_pow(n)?;
    if q.checked_mul(q)? > limit {
        return None;
    }
    let target = m.rem_euclid(q);
    for x in 0..q {
        for y in 0..q {
            let v = (f.0 as i128 * (x * x) as i128
                + f.1 as i128 * (x * y) as i128
                + f.2 as i128 * (y * y) as i128)
                .rem_euclid(q as i128) as i64;
            if v == target {
                return Some(true);
            }
        }
    }
    Some(false)
}

pub fn primes_below(n: i64) -> Vec<i64> {
    (2..n)
        .filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
        .collect()
}

pub fn prime_factors(n: i64) -> Vec<i64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

//! Dense polynomials over `F_p`, coefficients in ascending order with no
//! trailing zeros.

pub(crate) type Poly = Vec<u64>;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn degree(f: &Poly) -> Option<usize> {
    f.len().checked_sub(1)
}

fn sub(f: &Poly, g: &Poly, p: u64) -> Poly {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            (a + p - b) % p
        })
        .collect();
    trim(out)
}

fn mul(f: &Poly, g: &Poly, p: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `g` nonzero.
fn divrem(f: &Poly, g: &Poly, p: u64) -> (Poly, Poly) {
    let dg = degree(g).expect("division by zero polynomial");
    let lead_inv = inv_mod(g[dg], p);
    let mut r = f.clone();
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - dg];
    for i in (dg..r.len()).rev() {
        let coef = mul_mod(r[i], lead_inv, p);
        if coef == 0 {
            continue;
        }
        q[i - dg] = coef;
        for (j, &b) in g.iter().enumerate() {
            let k = i - dg + j;
            r[k] = (r[k] + p - mul_mod(coef, b, p)) % p;
        }
    }
    (trim(q), trim(r))
}

fn rem(f: &Poly, g: &Poly, p: u64) -> Poly {
    divrem(f, g, p).1
}

fn monic(f: Poly, p: u64) -> Poly {
    match f.last() {
        Some(&l) => {
            let inv = inv_mod(l, p);
            f.into_iter().map(|c| mul_mod(c, inv, p)).collect()
        }
        None => f,
    }
}

pub(crate) fn gcd(f: &Poly, g: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(a, p)
}

pub(crate) fn derivative(f: &Poly, p: u64) -> Poly {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect(),
    )
}

/// `base^e mod m`.
fn pow_mod(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut acc = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn is_squarefree(f: &Poly, p: u64) -> bool {
    degree(&gcd(f, &derivative(f, p), p)) == Some(0)
}

/// `(d, count)` pairs: the number of irreducible factors of each degree of a
/// monic squarefree `f`.
pub(crate) fn distinct_degree(f: &Poly, p: u64) -> Vec<(usize, usize)> {
    let x: Poly = vec![0, 1];
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while degree(&rest).unwrap_or(0) >= 2 * d {
        h = pow_mod(&h, p, &rest, p);
        let g = gcd(&rest, &sub(&h, &x, p), p);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 {
            out.push((d, dg / d));
            rest = divrem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
        }
        d += 1;
    }
    if let Some(dr) = degree(&rest) {
        if dr > 0 {
            out.push((dr, 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        // X^2 + 1
        assert_eq!(distinct_degree(&vec![1, 0, 1], 5), vec![(1, 2)]);
        assert_eq!(distinct_degree(&vec![1, 0, 1], 7), vec![(2, 1)]);
        // X^3 + X + 1 is irreducible mod 2
        assert_eq!(distinct_degree(&vec![1, 1, 0, 1], 2), vec![(3, 1)]);
        // (X - 1)(X^2 + 1) mod 3
        let f = mul(&vec![2, 1], &vec![1, 0, 1], 3);
        assert_eq!(distinct_degree(&f, 3), vec![(1, 1), (2, 1)]);
        assert!(!is_squarefree(&mul(&vec![2, 1], &vec![2, 1], 3), 3));
        assert!(is_squarefree(&f, 3));
    }

    #[test]
    fn x_to_the_p_minus_x_splits_completely() {
        for p in [2u64, 3, 5, 7, 11] {
            let mut f = vec![0u64; p as usize + 1];
            f[p as usize] = 1;
            f[1] = p - 1;
            assert_eq!(distinct_degree(&f, p), vec![(1, p as usize)]);
        }
    }
}

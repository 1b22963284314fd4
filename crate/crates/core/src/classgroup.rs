//! Composition of form classes and the structure of the class group `C(Δ)`.
//!
//! Composition follows the classical concordant-forms algorithm (Dirichlet's
//! united forms as laid out in Cohen, Algorithm 5.4.7), followed by Gauss
//! reduction.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{enumerate_reduced, principal_form, Discriminant, Form};
use crate::represent;

/// Extended gcd returning `(u, v, g)` with `u*x + v*y = g >= 0`.
fn xgcd(x: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = x.extended_gcd(y);
    if e.gcd.is_negative() {
        (-e.x, -e.y, -e.gcd)
    } else {
        (e.x, e.y, e.gcd)
    }
}

/// Reduced representative of the composite class `[f][g]`.
pub fn compose(f: &Form, g: &Form) -> Result<Form> {
    let disc = f.disc();
    if disc != g.disc() {
        return Err(Error::DiscriminantMismatch(
            disc.to_string(),
            g.disc().to_string(),
        ));
    }
    let (f1, f2) = if f.a() > g.a() { (g, f) } else { (f, g) };
    let (a1, b1) = (f1.a(), f1.b());
    let (a2, b2, c2) = (f2.a(), f2.b(), f2.c());

    let s: BigInt = (b1 + b2) / 2;
    let n: BigInt = b2 - &s;

    let (y1, d) = if (a2 % a1).is_zero() {
        (BigInt::zero(), a1.clone())
    } else {
        let (u, _v, d) = xgcd(a2, a1);
        (u, d)
    };
    let (x2, y2, d1) = if (&s % &d).is_zero() {
        (BigInt::zero(), BigInt::from(-1), d.clone())
    } else {
        let (x2, y2, d1) = xgcd(&s, &d);
        (x2, -y2, d1)
    };

    let v1: BigInt = a1 / &d1;
    let v2: BigInt = a2 / &d1;
    let r = (&y1 * &y2 * &n - &x2 * c2).mod_floor(&v1);
    let b3 = b2 + BigInt::from(2) * &v2 * &r;
    let a3 = &v1 * &v2;
    let num = &b3 * &b3 - &disc;
    let four_a3 = &a3 * 4u32;
    if !(&num % &four_a3).is_zero() {
        return Err(Error::Consistency(format!(
            "composition of {f} and {g} produced non-integral c"
        )));
    }
    let c3 = num / four_a3;
    Ok(Form::new(a3, b3, c3)?.reduced())
}

/// Reduced representative of `(a, -b, c)`.
pub fn inverse(f: &Form) -> Form {
    f.opposite().reduced()
}

/// `f` composed with itself `k` times (inverse for negative `k`).
pub fn power(f: &Form, k: i64) -> Result<Form> {
    let d = f.discriminant()?;
    let mut base = if k < 0 { inverse(f) } else { f.reduced() };
    let mut e = k.unsigned_abs();
    let mut acc = principal_form(&d);
    while e > 0 {
        if e & 1 == 1 {
            acc = compose(&acc, &base)?;
        }
        base = compose(&base, &base)?;
        e >>= 1;
    }
    Ok(acc)
}

/// Order of the class of `f` in `C(Δ)`.
pub fn order(f: &Form) -> Result<u64> {
    let d = f.discriminant()?;
    let e = principal_form(&d);
    let g = f.reduced();
    let mut acc = g.clone();
    let mut k = 1;
    while acc != e {
        acc = compose(&acc, &g)?;
        k += 1;
    }
    Ok(k)
}

/// The class group of a discriminant with its full composition table.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    discriminant: Discriminant,
    elements: Vec<Form>,
    index: HashMap<Form, usize>,
    table: Vec<Vec<usize>>,
    invariant_factors: Vec<u64>,
}

impl ClassGroup {
    pub fn new(d: &Discriminant) -> Result<Self> {
        let elements = enumerate_reduced(d);
        let index: HashMap<Form, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        debug_assert_eq!(elements[0], principal_form(d));
        let h = elements.len();
        let mut table = vec![vec![0usize; h]; h];
        for i in 0..h {
            for j in i..h {
                let prod = compose(&elements[i], &elements[j])?;
                let k = *index.get(&prod).ok_or_else(|| {
                    Error::Consistency(format!("composite {prod:?} is not a reduced form of {d}"))
                })?;
                table[i][j] = k;
                table[j][i] = k;
            }
        }
        let mut group = ClassGroup {
            discriminant: d.clone(),
            elements,
            index,
            table,
            invariant_factors: Vec::new(),
        };
        group.invariant_factors = group.compute_invariant_factors();
        Ok(group)
    }

    pub fn discriminant(&self) -> &Discriminant {
        &self.discriminant
    }

    pub fn elements(&self) -> &[Form] {
        &self.elements
    }

    pub fn class_number(&self) -> usize {
        self.elements.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// `d_1 | d_2 | ...` with product `h`; empty for the trivial group.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn index_of(&self, f: &Form) -> Option<usize> {
        self.index.get(&f.reduced()).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        (0..self.class_number())
            .find(|&j| self.table[i][j] == 0)
            .expect("group table has inverses")
    }

    pub fn pow_index(&self, i: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.table[acc][i];
        }
        acc
    }

    pub fn order_of(&self, i: usize) -> u64 {
        let mut acc = i;
        let mut k = 1;
        while acc != 0 {
            acc = self.table[acc][i];
            k += 1;
        }
        k
    }

    /// Number of genera, `|C / C^2|`.
    pub fn genus_count(&self) -> usize {
        let mut squares: Vec<usize> = (0..self.class_number()).map(|i| self.table[i][i]).collect();
        squares.sort_unstable();
        squares.dedup();
        self.class_number() / squares.len()
    }

    /// Invariant factors from the counts `#{g : g^(p^k) = 1}` of each
    /// `p`-primary part.
    fn compute_invariant_factors(&self) -> Vec<u64> {
        let h = self.class_number() as u64;
        let orders: Vec<u64> = (0..self.class_number()).map(|i| self.order_of(i)).collect();
        let mut primes = Vec::new();
        let mut rest = h;
        let mut p = 2;
        while rest > 1 {
            if rest.is_multiple_of(p) {
                primes.push(p);
                while rest.is_multiple_of(p) {
                    rest /= p;
                }
            }
            p += 1;
        }
        // for each prime, the exponents e_1 >= e_2 >= ... of the cyclic p-factors
        let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for &p in &primes {
            let e = p_valuation(h, p);
            // log_p #{g : g^(p^k) = 1} = sum_i min(k, e_i)
            let mut logs = vec![0u32];
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                let n = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
                logs.push(ilog(n, p));
            }
            // number of cyclic factors with exponent >= k
            let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
            let num_factors = at_least.first().copied().unwrap_or(0);
            let exps = (0..num_factors)
                .map(|i| at_least.iter().filter(|&&g| g > i).count() as u32)
                .collect();
            per_prime.push((p, exps));
        }
        let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; width];
        for (p, exps) in &per_prime {
            // largest exponent goes to the last invariant factor
            for (i, &e) in exps.iter().enumerate() {
                factors[width - 1 - i] *= p.pow(e);
            }
        }
        factors
    }
}

fn p_valuation(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

fn ilog(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}

/// Full group structure of `C(Δ)`.
pub fn group_structure(d: &Discriminant) -> Result<ClassGroup> {
    ClassGroup::new(d)
}

/// The unique class `g` with `g^2 = f`; requires odd class number.
pub fn sqrt_in_group(f: &Form) -> Result<Form> {
    let d = f.discriminant()?;
    let h = enumerate_reduced(&d).len();
    if h.is_multiple_of(2) {
        return Err(Error::EvenClassNumber(d.to_string(), h));
    }
    // f^h = 1, so (f^((h+1)/2))^2 = f
    power(f, (h as i64 + 1) / 2)
}

/// Product of `a * c` over one representative of each inverse pair of
/// non-principal classes. Requires odd class number; the value is checked to
/// be represented by every reduced form before it is returned.
pub fn odd_witness(d: &Discriminant) -> Result<BigInt> {
    let forms = enumerate_reduced(d);
    let h = forms.len();
    if h.is_multiple_of(2) {
        return Err(Error::EvenClassNumber(d.to_string(), h));
    }
    let mut product = BigInt::one();
    for f in forms.iter().skip(1) {
        // one of (a, b, c) and (a, -b, c) per pair; the positive-b member
        if f.b().is_positive() {
            product *= f.a() * f.c();
        }
    }
    for f in &forms {
        if represent::represents(f, &product).is_none() {
            return Err(Error::Consistency(format!(
                "witness {product} is not represented by {f:?}"
            )));
        }
    }
    Ok(product)
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
    fn compose_examples() {
        assert_eq!(compose(&f(2, 1, 3), &f(2, 1, 3)).unwrap(), f(2, -1, 3));
        assert_eq!(compose(&f(1, 1, 12), &f(3, 1, 4)).unwrap(), f(3, 1, 4));
        assert_eq!(compose(&f(2, 1, 3), &f(2, -1, 3)).unwrap(), f(1, 1, 6));
        assert!(matches!(
            compose(&f(2, 1, 3), &f(1, 1, 12)),
            Err(Error::DiscriminantMismatch(..))
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&f(2, 1, 6)), f(2, -1, 6));
        assert_eq!(inverse(&f(1, 1, 12)), f(1, 1, 12));
        assert_eq!(inverse(&f(2, 2, 11)), f(2, 2, 11));
    }

    #[test]
    fn power_and_order() {
        assert_eq!(power(&f(2, 1, 3), 3).unwrap(), f(1, 1, 6));
        assert_eq!(power(&f(3, 1, 4), 0).unwrap(), f(1, 1, 12));
        assert_eq!(power(&f(2, 1, 11), 6).unwrap(), f(1, 1, 22));
        assert_eq!(power(&f(2, 1, 3), -1).unwrap(), f(2, -1, 3));
        assert_eq!(order(&f(2, 1, 11)).unwrap(), 6);
        assert_eq!(order(&f(1, 1, 12)).unwrap(), 1);
        assert_eq!(order(&f(2, 0, 11)).unwrap(), 2);
    }

    #[test]
    fn structures() {
        assert_eq!(
            group_structure(&d(-84)).unwrap().invariant_factors(),
            &[2, 2]
        );
        assert_eq!(group_structure(&d(-47)).unwrap().invariant_factors(), &[5]);
        assert_eq!(group_structure(&d(-23)).unwrap().invariant_factors(), &[3]);
        assert_eq!(group_structure(&d(-88)).unwrap().invariant_factors(), &[2]);
        assert_eq!(group_structure(&d(-87)).unwrap().invariant_factors(), &[6]);
        assert!(group_structure(&d(-3))
            .unwrap()
            .invariant_factors()
            .is_empty());
        // 1365 is idoneal, so C(-4·1365) is elementary abelian of order 16
        assert_eq!(
            group_structure(&d(-5460)).unwrap().invariant_factors(),
            &[2, 2, 2, 2]
        );
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_in_group(&f(2, 1, 3)).unwrap(), f(2, -1, 3));
        assert_eq!(sqrt_in_group(&f(1, 1, 6)).unwrap(), f(1, 1, 6));
        assert_eq!(sqrt_in_group(&f(3, 1, 4)).unwrap(), f(2, -1, 6));
        assert!(matches!(
            sqrt_in_group(&f(2, 1, 11)),
            Err(Error::EvenClassNumber(..))
        ));
    }

    #[test]
    fn square_root_by_table_lookup() {
        let g = ClassGroup::new(&d(-47)).unwrap();
        let target = g.index_of(&f(3, 1, 4)).unwrap();
        let roots: Vec<usize> = (0..g.class_number())
            .filter(|&i| g.mul(i, i) == target)
            .collect();
        assert_eq!(roots.len(), 1);
        assert_eq!(g.elements()[roots[0]], f(2, -1, 6));
    }

    #[test]
    fn witnesses() {
        assert_eq!(odd_witness(&d(-23)).unwrap(), BigInt::from(6));
        assert_eq!(odd_witness(&d(-47)).unwrap(), BigInt::from(144));
        assert_eq!(odd_witness(&d(-3)).unwrap(), BigInt::from(1));
        assert!(odd_witness(&d(-20)).is_err());
    }
}

//! Binary fixed-point reals and complexes on `BigInt` mantissas: a value `v`
//! is stored as `round(v * 2^bits)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Extra bits carried by the transcendental routines.
const GUARD: u32 = 32;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fixed {
    pub bits: u32,
}

pub(crate) type Complex = (BigInt, BigInt);

impl Fixed {
    pub fn new(bits: u32) -> Self {
        Fixed { bits }
    }

    pub fn one(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    pub fn int(&self, n: impl Into<BigInt>) -> BigInt {
        n.into() << self.bits
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.bits
    }

    pub fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a << self.bits).div_floor(b)
    }

    pub fn sqrt(&self, a: &BigInt) -> BigInt {
        (a << self.bits).sqrt()
    }

    /// Nearest integer.
    pub fn round(&self, a: &BigInt) -> BigInt {
        if self.bits == 0 {
            return a.clone();
        }
        (a + (BigInt::one() << (self.bits - 1))) >> self.bits
    }

    pub fn to_f64(self, a: &BigInt) -> f64 {
        let keep = 60;
        if self.bits > keep {
            (a >> (self.bits - keep)).to_f64().unwrap_or(f64::NAN) / (keep as f64).exp2()
        } else {
            a.to_f64().unwrap_or(f64::NAN) / (self.bits as f64).exp2()
        }
    }

    fn widen(&self) -> Fixed {
        Fixed::new(self.bits + GUARD)
    }

    fn narrow(&self, a: BigInt) -> BigInt {
        a >> GUARD
    }

    /// `atan(1/n)` by its Taylor series.
    fn atan_inv(&self, n: u64) -> BigInt {
        let n2 = BigInt::from(n) * n;
        let mut power = self.one() / n;
        let mut sum = power.clone();
        let mut k = 1u64;
        while !power.is_zero() {
            power /= &n2;
            let term = &power / (2 * k + 1);
            if k % 2 == 1 {
                sum -= term;
            } else {
                sum += term;
            }
            k += 1;
        }
        sum
    }

    /// Machin: `pi = 16 atan(1/5) - 4 atan(1/239)`.
    pub fn pi(&self) -> BigInt {
        let w = self.widen();
        self.narrow(w.atan_inv(5) * 16 - w.atan_inv(239) * 4)
    }

    pub fn exp(&self, x: &BigInt) -> BigInt {
        if x.is_negative() {
            let pos = self.widen().exp(&(-x << GUARD));
            return self.narrow(self.widen().div(&self.widen().one(), &pos));
        }
        // exp(x) = exp(x / 2^k)^(2^k) with x / 2^k < 1/2
        let k = (x.bits() as i64 - self.bits as i64 + 1).max(0) as u32;
        let w = Fixed::new(self.bits + GUARD + k);
        let r = (x << (GUARD + k)) >> k;
        let mut term = w.one();
        let mut sum = w.one();
        let mut n = 1u64;
        while !term.is_zero() {
            term = w.mul(&term, &r) / n;
            sum += &term;
            n += 1;
        }
        for _ in 0..k {
            sum = w.mul(&sum, &sum);
        }
        sum >> (GUARD + k)
    }

    pub fn cos_sin(&self, x: &BigInt) -> Complex {
        let w = self.widen();
        let two_pi = w.pi() * 2;
        let xw = x << GUARD;
        // reduce to [-pi, pi]
        let turns = w.round(&w.div(&xw, &two_pi));
        let r = xw - turns * &two_pi;
        let r2 = w.mul(&r, &r);
        let (mut cos, mut sin) = (w.one(), r.clone());
        let (mut tc, mut ts) = (w.one(), r);
        let mut n = 1u64;
        while !(tc.is_zero() && ts.is_zero()) {
            tc = -w.mul(&tc, &r2) / ((2 * n - 1) * (2 * n));
            ts = -w.mul(&ts, &r2) / ((2 * n) * (2 * n + 1));
            cos += &tc;
            sin += &ts;
            n += 1;
        }
        (self.narrow(cos), self.narrow(sin))
    }

    pub fn cmul(&self, a: &Complex, b: &Complex) -> Complex {
        (
            self.mul(&a.0, &b.0) - self.mul(&a.1, &b.1),
            self.mul(&a.0, &b.1) + self.mul(&a.1, &b.0),
        )
    }

    pub fn cdiv(&self, a: &Complex, b: &Complex) -> Complex {
        let norm = &b.0 * &b.0 + &b.1 * &b.1;
        let re = &a.0 * &b.0 + &a.1 * &b.1;
        let im = &a.1 * &b.0 - &a.0 * &b.1;
        (
            (re << self.bits).div_floor(&norm),
            (im << self.bits).div_floor(&norm),
        )
    }

    /// Decimal expansion with `digits` fractional digits, truncated.
    pub fn to_decimal(self, a: &BigInt, digits: u32) -> String {
        let sign = if a.is_negative() { "-" } else { "" };
        let a = a.abs();
        let int = &a >> self.bits;
        let frac = &a - (&int << self.bits);
        if digits == 0 {
            return format!("{sign}{int}");
        }
        let scaled = (frac * BigInt::from(10).pow(digits)) >> self.bits;
        format!(
            "{sign}{int}.{:0>width$}",
            scaled.to_string(),
            width = digits as usize
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(ctx: &Fixed, a: &BigInt, want: f64) {
        let got = ctx.to_f64(a);
        assert!(
            (got - want).abs() < 1e-12 * want.abs().max(1.0),
            "{got} vs {want}"
        );
    }

    #[test]
    fn constants() {
        let ctx = Fixed::new(200);
        close(&ctx, &ctx.pi(), std::f64::consts::PI);
        assert_eq!(
            ctx.to_decimal(&ctx.pi(), 50),
            "3.14159265358979323846264338327950288419716939937510"
        );
        close(&ctx, &ctx.exp(&ctx.one()), std::f64::consts::E);
        close(&ctx, &ctx.exp(&ctx.int(-3)), (-3f64).exp());
        close(&ctx, &ctx.exp(&ctx.int(40)), 40f64.exp());
        assert_eq!(ctx.exp(&BigInt::zero()), ctx.one());
    }

    #[test]
    fn trig() {
        let ctx = Fixed::new(200);
        for x in [-7.0f64, -1.0, 0.0, 0.5, 3.0, 10.0] {
            let xb = BigInt::from((x * 1024.0) as i64) << (ctx.bits - 10);
            let (c, s) = ctx.cos_sin(&xb);
            close(&ctx, &c, x.cos());
            close(&ctx, &s, x.sin());
        }
    }

    #[test]
    fn complex_division() {
        let ctx = Fixed::new(100);
        let a = (ctx.int(3), ctx.int(4));
        let b = (ctx.int(1), ctx.int(-2));
        let q = ctx.cdiv(&a, &b);
        let back = ctx.cmul(&q, &b);
        assert!((ctx.to_f64(&back.0) - 3.0).abs() < 1e-20);
        assert!((ctx.to_f64(&back.1) - 4.0).abs() < 1e-20);
    }
}

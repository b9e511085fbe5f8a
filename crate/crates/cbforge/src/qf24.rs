//! Exact arithmetic in the ring ℤ[√2, √3].
//!
//! Every quantity the engine needs (doubled bilinear form values, root
//! coordinates, Cramer determinants) lies in this ring, so coefficients are
//! kept as integers. Signs are decided by a certified floating-point filter
//! followed by interval refinement with big integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};

/// `a + b√2 + c√3 + d√6` with integer coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Qf24 {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

fn add_i(x: i128, y: i128) -> i128 {
    x.checked_add(y).expect("coefficient overflow in Z[√2,√3]")
}

fn mul_i(x: i128, y: i128) -> i128 {
    x.checked_mul(y).expect("coefficient overflow in Z[√2,√3]")
}

impl Qf24 {
    pub const ZERO: Qf24 = Qf24::new(0, 0, 0, 0);
    pub const ONE: Qf24 = Qf24::new(1, 0, 0, 0);

    pub const fn new(a: i128, b: i128, c: i128, d: i128) -> Self {
        Qf24 { a, b, c, d }
    }

    pub const fn int(a: i128) -> Self {
        Qf24::new(a, 0, 0, 0)
    }

    pub const fn sqrt2() -> Self {
        Qf24::new(0, 1, 0, 0)
    }

    pub const fn sqrt3() -> Self {
        Qf24::new(0, 0, 1, 0)
    }

    pub fn is_zero(&self) -> bool {
        *self == Qf24::ZERO
    }

    pub fn scale(&self, k: i128) -> Self {
        Qf24::new(mul_i(self.a, k), mul_i(self.b, k), mul_i(self.c, k), mul_i(self.d, k))
    }

    /// Approximate value; only for display and heuristics.
    pub fn to_f64(&self) -> f64 {
        self.a as f64
            + self.b as f64 * std::f64::consts::SQRT_2
            + self.c as f64 * 3f64.sqrt()
            + self.d as f64 * 6f64.sqrt()
    }

    /// Exact sign as -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(s) = self.float_sign() {
            return s;
        }
        self.refined_sign()
    }

    pub fn cmp_zero(&self) -> Ordering {
        self.signum().cmp(&0)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -*self
        } else {
            *self
        }
    }

    // Double precision with a generous rounding bound; undecided near zero.
    fn float_sign(&self) -> Option<i8> {
        let parts = [
            self.a as f64,
            self.b as f64 * std::f64::consts::SQRT_2,
            self.c as f64 * 3f64.sqrt(),
            self.d as f64 * 6f64.sqrt(),
        ];
        let value: f64 = parts.iter().sum();
        let magnitude: f64 = parts.iter().map(|p| p.abs()).sum();
        let bound = magnitude * 1e-13;
        if value > bound {
            Some(1)
        } else if value < -bound {
            Some(-1)
        } else {
            None
        }
    }

    // Bracket each surd between consecutive integers at 2^p scale and
    // double p until the enclosure excludes zero.
    fn refined_sign(&self) -> i8 {
        let mut bits: u32 = 128;
        loop {
            let scale = BigInt::from(1u8) << bits;
            let four_p = BigInt::from(1u8) << (2 * bits);
            let r2 = (&four_p * 2u8).sqrt();
            let r3 = (&four_p * 3u8).sqrt();
            let r6 = (&four_p * 6u8).sqrt();
            let mut lo = BigInt::from(self.a) * &scale;
            let mut hi = lo.clone();
            for (coef, root) in [(self.b, &r2), (self.c, &r3), (self.d, &r6)] {
                let k = BigInt::from(coef);
                let low_term = &k * root;
                let high_term = &k * (root + 1u8);
                if coef >= 0 {
                    lo += low_term;
                    hi += high_term;
                } else {
                    lo += high_term;
                    hi += low_term;
                }
            }
            if lo.sign() == Sign::Plus {
                return 1;
            }
            if hi.sign() == Sign::Minus {
                return -1;
            }
            bits *= 2;
        }
    }
}

impl Add for Qf24 {
    type Output = Qf24;
    fn add(self, o: Qf24) -> Qf24 {
        Qf24::new(add_i(self.a, o.a), add_i(self.b, o.b), add_i(self.c, o.c), add_i(self.d, o.d))
    }
}

impl AddAssign for Qf24 {
    fn add_assign(&mut self, o: Qf24) {
        *self = *self + o;
    }
}

impl Neg for Qf24 {
    type Output = Qf24;
    fn neg(self) -> Qf24 {
        Qf24::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Sub for Qf24 {
    type Output = Qf24;
    fn sub(self, o: Qf24) -> Qf24 {
        self + (-o)
    }
}

impl SubAssign for Qf24 {
    fn sub_assign(&mut self, o: Qf24) {
        *self = *self - o;
    }
}

impl Mul for Qf24 {
    type Output = Qf24;
    fn mul(self, o: Qf24) -> Qf24 {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (e, f, g, h) = (o.a, o.b, o.c, o.d);
        let sum = |xs: [i128; 4]| xs.into_iter().fold(0, add_i);
        Qf24::new(
            sum([mul_i(a, e), mul_i(2, mul_i(b, f)), mul_i(3, mul_i(c, g)), mul_i(6, mul_i(d, h))]),
            sum([mul_i(a, f), mul_i(b, e), mul_i(3, mul_i(c, h)), mul_i(3, mul_i(d, g))]),
            sum([mul_i(a, g), mul_i(c, e), mul_i(2, mul_i(b, h)), mul_i(2, mul_i(d, f))]),
            sum([mul_i(a, h), mul_i(d, e), mul_i(b, g), mul_i(c, f)]),
        )
    }
}

impl From<i128> for Qf24 {
    fn from(a: i128) -> Self {
        Qf24::int(a)
    }
}

impl fmt::Display for Qf24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (coef, unit) in [(self.a, ""), (self.b, "√2"), (self.c, "√3"), (self.d, "√6")] {
            if coef == 0 {
                continue;
            }
            let sign = if coef < 0 { "-" } else if first { "" } else { "+" };
            let mag = coef.unsigned_abs();
            if mag == 1 && !unit.is_empty() {
                write!(f, "{sign}{unit}")?;
            } else {
                write!(f, "{sign}{mag}{unit}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Sign of p + q√2 by squaring.
    fn sign_r2(p: i128, q: i128) -> i8 {
        let (sp, sq) = (p.signum() as i8, q.signum() as i8);
        if sp == sq || sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        sp * (p * p - 2 * q * q).signum() as i8
    }

    // Sign of X + √3·Y with X = a + b√2, Y = c + d√2, again by squaring.
    fn sign_oracle(q: &Qf24) -> i8 {
        let sx = sign_r2(q.a, q.b);
        let sy = sign_r2(q.c, q.d);
        if sx == sy || sy == 0 {
            return sx;
        }
        if sx == 0 {
            return sy;
        }
        // X² - 3Y² in Z[√2]
        let p = q.a * q.a + 2 * q.b * q.b - 3 * (q.c * q.c + 2 * q.d * q.d);
        let r = 2 * q.a * q.b - 6 * q.c * q.d;
        sx * sign_r2(p, r)
    }

    #[test]
    fn listed_signs() {
        assert_eq!(Qf24::ZERO.signum(), 0);
        assert_eq!(Qf24::new(-1, 1, 0, 0).signum(), 1);
        assert_eq!(Qf24::new(-5, 0, 0, 2).signum(), -1);
    }

    #[test]
    fn near_cancellation_needs_refinement() {
        // 1 + √2 + √3 − √6 vs. tiny values from high powers of (√2 − 1)
        let mut x = Qf24::ONE;
        let unit = Qf24::new(-1, 1, 0, 0);
        for _ in 0..40 {
            x = x * unit;
        }
        assert_eq!(x.signum(), 1);
        assert!(x.float_sign().is_none());
        assert_eq!((-x).signum(), -1);
        assert_eq!(x.refined_sign(), 1);
    }

    #[test]
    fn surd_products() {
        let r2 = Qf24::sqrt2();
        let r3 = Qf24::sqrt3();
        assert_eq!(r2 * r2, Qf24::int(2));
        assert_eq!(r3 * r3, Qf24::int(3));
        assert_eq!(r2 * r3, Qf24::new(0, 0, 0, 1));
        assert_eq!(Qf24::new(0, 0, 0, 1) * Qf24::new(0, 0, 0, 1), Qf24::int(6));
        assert_eq!(Qf24::new(0, 0, 0, 1) * r2, Qf24::new(0, 0, 2, 0));
        assert_eq!(format!("{}", Qf24::new(-1, 1, 0, -3)), "-1+√2-3√6");
    }

    proptest! {
        #[test]
        fn sign_matches_squaring(a in -2000i128..2000, b in -2000i128..2000,
                                 c in -2000i128..2000, d in -2000i128..2000) {
            let q = Qf24::new(a, b, c, d);
            prop_assert_eq!(q.signum(), sign_oracle(&q));
            prop_assert_eq!(q.refined_sign_or_zero(), sign_oracle(&q));
        }

        #[test]
        fn ring_laws(x in prop::array::uniform4(-50i128..50), y in prop::array::uniform4(-50i128..50),
                     z in prop::array::uniform4(-50i128..50)) {
            let [x, y, z] = [x, y, z].map(|v| Qf24::new(v[0], v[1], v[2], v[3]));
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x * y, y * x);
            let approx = (x * y).to_f64() - x.to_f64() * y.to_f64();
            prop_assert!(approx.abs() < 1e-6 * (1.0 + (x.to_f64() * y.to_f64()).abs()));
        }
    }

    impl Qf24 {
        fn refined_sign_or_zero(&self) -> i8 {
            if self.is_zero() {
                0
            } else {
                self.refined_sign()
            }
        }
    }
}

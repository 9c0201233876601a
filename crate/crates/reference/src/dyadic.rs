//! Exact binary fractions `mantissa * 2^exp` with directed rounding.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub(crate) fn zero() -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub(crate) fn one() -> Self {
        Self {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    /// Exact value of a finite `f64`.
    pub(crate) fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "dyadic conversion of non-finite {x}");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        let mant = BigInt::from(m);
        Self {
            mant: if negative { -mant } else { mant },
            exp: e,
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub(crate) fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Number of significant bits in the mantissa.
    fn bits(&self) -> u64 {
        self.mant.magnitude().bits()
    }

    /// `floor(log2 |x|) + 1` for non-zero `x`.
    pub(crate) fn magnitude_exponent(&self) -> i64 {
        self.exp + self.bits() as i64
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &other.mant << (other.exp - exp) as u64;
        (a, b, exp)
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        let (a, b, exp) = self.aligned(other);
        Self { mant: a + b, exp }
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        let (a, b, exp) = self.aligned(other);
        Self { mant: a - b, exp }
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        Self {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
    }

    /// Multiplication by `2^k`.
    pub(crate) fn scale(&self, k: i64) -> Self {
        Self {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Exact integer power by repeated squaring.
    pub(crate) fn powu(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Rounds to at most `prec` significant bits in direction `dir`.
    pub(crate) fn round(&self, prec: u64, dir: Round) -> Self {
        let bits = self.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = bits - prec;
        let magnitude = self.mant.magnitude();
        let mut q = magnitude >> shift;
        let inexact = (&q << shift) != *magnitude;
        let away_from_zero = match dir {
            Round::Up => !self.is_negative(),
            Round::Down => self.is_negative(),
        };
        if inexact && away_from_zero {
            q += 1u32;
        }
        let mant = BigInt::from_biguint(self.mant.sign(), q);
        Self {
            mant,
            exp: self.exp + shift as i64,
        }
    }

    pub(crate) fn mul_round(&self, other: &Self, prec: u64, dir: Round) -> Self {
        self.mul(other).round(prec, dir)
    }

    /// Square root of a non-negative value with at least `prec` bits,
    /// rounded in direction `dir`.
    pub(crate) fn sqrt(&self, prec: u64, dir: Round) -> Self {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        let bits = self.bits();
        let mut shift = (2 * prec + 2).saturating_sub(bits);
        if (self.exp - shift as i64).rem_euclid(2) != 0 {
            shift += 1;
        }
        let radicand: BigUint = self.mant.magnitude() << shift;
        let mut root = radicand.sqrt();
        if dir == Round::Up && &root * &root != radicand {
            root += 1u32;
        }
        Self {
            mant: BigInt::from(root),
            exp: (self.exp - shift as i64) / 2,
        }
    }

    /// Quotient of two positive values with at least `prec` bits.
    pub(crate) fn div(&self, other: &Self, prec: u64, dir: Round) -> Self {
        assert!(self.mant.is_positive() && other.mant.is_positive());
        let shift = (prec + 1 + other.bits()).saturating_sub(self.bits());
        let numerator: BigUint = self.mant.magnitude() << shift;
        let (mut q, r) = numerator.div_rem(other.mant.magnitude());
        if dir == Round::Up && !r.is_zero() {
            q += 1u32;
        }
        Self {
            mant: BigInt::from(q),
            exp: self.exp - shift as i64 - other.exp,
        }
    }

    /// Nearest `f64` (ties to even), or the neighbour in direction `dir`.
    /// Assumes the value lies in the normal binary64 range; a tiny value
    /// rounded up saturates at `f64::MIN_POSITIVE`.
    pub(crate) fn to_f64(&self, dir: Option<Round>) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let negative = self.is_negative();
        let magnitude = self.mant.magnitude();
        let bits = magnitude.bits();
        let (mut q, exp) = if bits <= 53 {
            (magnitude.to_u64().unwrap(), self.exp)
        } else {
            let shift = bits - 53;
            let q = (magnitude >> shift).to_u64().unwrap();
            let rest = magnitude - (BigUint::from(q) << shift);
            let half = BigUint::one() << (shift - 1);
            let bump = match dir {
                None => rest > half || (rest == half && q & 1 == 1),
                Some(Round::Up) => !negative && !rest.is_zero(),
                Some(Round::Down) => negative && !rest.is_zero(),
            };
            (q + u64::from(bump), self.exp + shift as i64)
        };
        if q == 1 << 53 {
            q >>= 1;
            return finish(q, exp + 1, negative, dir);
        }
        finish(q, exp, negative, dir)
    }

    pub(crate) fn cmp_value(&self, other: &Self) -> Ordering {
        match self.sub(other).mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

fn finish(q: u64, exp: i64, negative: bool, dir: Option<Round>) -> f64 {
    let mut v = q as f64;
    let mut e = exp;
    while e > 0 {
        let step = e.min(1000);
        v *= 2f64.powi(step as i32);
        e -= step;
    }
    while e < 0 {
        let step = (-e).min(1000);
        v *= 2f64.powi(-(step as i32));
        e += step;
    }
    if dir == Some(Round::Up) && !negative && v < f64::MIN_POSITIVE {
        v = f64::MIN_POSITIVE;
    }
    if negative {
        -v
    } else {
        v
    }
}

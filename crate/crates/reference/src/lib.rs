//! Independent oracles for checking `binexp-core`.
//!
//! Nothing here calls into the algorithms being judged; `binexp-core` is used
//! for its result and error types only. Integer oracles use built-in
//! arithmetic. Real oracles compute rigorous enclosures with exact big-integer
//! dyadic arithmetic and directed rounding:
//!
//! * [`ref_pow`] splits `t` into its integer part, raised exactly by repeated
//!   squaring, and its binary fraction, whose digits select factors from a
//!   chain of floor/ceiling square roots of the base.
//! * [`ref_pow_rational`] brackets `y` with `y^q = a^p` by bisection, comparing
//!   exact powers.
//! * [`ref_log`] bisects on `x` until `b^x` is pinned against `a`.
//!
//! Enclosures are tightened until the half-width is below `1e-12` relative,
//! far below the tolerances they are used to check.

mod dyadic;

use std::cmp::Ordering;

use binexp_core::{Error, QuotRem};

use dyadic::{Dyadic, Round};

/// Starting working precision in bits.
const START_PREC: u64 = 160;
/// Precision at which refinement gives up.
const MAX_PREC: u64 = 2048;
/// Largest `|t|` accepted by [`ref_pow`]; beyond it every binary64 base other
/// than 1 over- or underflows anyway.
const MAX_EXPONENT: f64 = 65536.0;
const POW_REL_BOUND: f64 = 1e-12;

type OracleOutcome<T> = Result<T, Error>;

/// An `f64` estimate together with a guaranteed bound: the exact value lies
/// within `value ± error_bound`, and within `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub error_bound: f64,
    lower: f64,
    upper: f64,
}

impl OracleResult {
    fn exact(value: f64) -> Self {
        Self {
            value,
            error_bound: 0.0,
            lower: value,
            upper: value,
        }
    }

    fn from_enclosure(lo: &Dyadic, hi: &Dyadic) -> Self {
        let mid = lo.add(hi).scale(-1);
        let value = mid.to_f64(None);
        let v = Dyadic::from_f64(value);
        let above = hi.sub(&v);
        let below = v.sub(lo);
        let widest = if above.cmp_value(&below) == Ordering::Greater {
            above
        } else {
            below
        };
        let error_bound = if widest.is_negative() || widest.is_zero() {
            0.0
        } else {
            widest.to_f64(Some(Round::Up))
        };
        Self {
            value,
            error_bound,
            lower: lo.to_f64(Some(Round::Down)),
            upper: hi.to_f64(Some(Round::Up)),
        }
    }

    /// Outward-rounded enclosure.
    pub fn enclosure(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    /// `|x - exact| / |exact|`, bounded from above.
    pub fn relative_error_of(&self, x: f64) -> f64 {
        ((x - self.value).abs() + self.error_bound) / self.lower.abs().min(self.upper.abs())
    }
}

/// `a * b` by built-in checked multiplication.
pub fn ref_mul(a: u64, b: u64) -> OracleOutcome<u64> {
    a.checked_mul(b).ok_or(Error::Overflow {
        op: "ref_mul",
        step: 0,
        what: "product",
    })
}

/// `a / d` and `a % d` by built-in division.
///
/// Mirrors the range of the doubling algorithm: inputs for which the least
/// multiple `2^i d > a` does not fit in `u64` are reported as overflow.
pub fn ref_divmod(a: u64, d: u64) -> OracleOutcome<QuotRem> {
    if d == 0 {
        return Err(Error::ZeroDivisor);
    }
    if doubling_exceeds_u64(a, d) {
        return Err(Error::Overflow {
            op: "ref_divmod",
            step: 0,
            what: "doubling",
        });
    }
    Ok(QuotRem {
        quotient: a / d,
        remainder: a % d,
    })
}

/// Whether the least `2^i d` exceeding `a` is beyond `u64::MAX`.
pub fn doubling_exceeds_u64(a: u64, d: u64) -> bool {
    let a = u128::from(a);
    let d = u128::from(d);
    let i = (128 - a.leading_zeros()).saturating_sub(128 - d.leading_zeros());
    let mut multiple = d << i;
    if multiple <= a {
        multiple <<= 1;
    }
    multiple > u128::from(u64::MAX)
}

/// Correctly rounded square root, as provided by the platform.
pub fn ref_sqrt(a: f64) -> f64 {
    a.sqrt()
}

/// Enclosure of `a^t` for `a > 0` and finite `t`.
pub fn ref_pow(a: f64, t: f64) -> OracleOutcome<OracleResult> {
    const OP: &str = "ref_pow";
    if !(a.is_finite() && a > 0.0) {
        return Err(domain(OP, "base must be positive and finite"));
    }
    if !t.is_finite() || t.abs() > MAX_EXPONENT {
        return Err(domain(OP, "exponent must be finite and moderate"));
    }
    if t == 0.0 || a == 1.0 {
        return Ok(OracleResult::exact(1.0));
    }
    let base = Dyadic::from_f64(a);
    let magnitude = t.abs();
    let whole = magnitude.trunc();
    let fraction = magnitude - whole;

    let mut prec = START_PREC;
    loop {
        let exact_whole = base.powu(whole as u64);
        let mut lo = exact_whole.round(prec, Round::Down);
        let mut hi = exact_whole.round(prec, Round::Up);
        if fraction > 0.0 {
            let mut roots = RootChain::new(&base, prec);
            let (flo, fhi) = roots.power(fraction);
            lo = lo.mul_round(&flo, prec, Round::Down);
            hi = hi.mul_round(&fhi, prec, Round::Up);
        }
        if t < 0.0 {
            let one = Dyadic::one();
            (lo, hi) = (
                one.div(&hi, prec, Round::Down),
                one.div(&lo, prec, Round::Up),
            );
        }
        if tight_enough(&lo, &hi) || prec >= MAX_PREC {
            return Ok(OracleResult::from_enclosure(&lo, &hi));
        }
        prec *= 2;
    }
}

/// Enclosure of `a^(p/q)`: the exact `a^p`, then the `q`-th root bracketed
/// by bisection on exact powers.
pub fn ref_pow_rational(a: f64, p: u64, q: u64) -> OracleOutcome<OracleResult> {
    const OP: &str = "ref_pow_rational";
    if !(a.is_finite() && a > 0.0) {
        return Err(domain(OP, "base must be positive and finite"));
    }
    if q == 0 {
        return Err(domain(OP, "denominator must be positive"));
    }
    if p > 4096 || q > 4096 {
        return Err(domain(OP, "exponent terms must be at most 4096"));
    }
    if p == 0 {
        return Ok(OracleResult::exact(1.0));
    }
    let target = Dyadic::from_f64(a).powu(p);
    let e = target.magnitude_exponent();
    let q_i = q as i64;
    // 2^lo_exp <= target^(1/q) < 2^hi_exp.
    let lo_exp = (e - 1).div_euclid(q_i);
    let hi_exp = -((-e).div_euclid(q_i));
    let mut lo = Dyadic::one().scale(lo_exp);
    let mut hi = Dyadic::one().scale(hi_exp);
    let stop_exp = lo_exp - START_PREC as i64;
    while !hi.sub(&lo).is_zero() && hi.sub(&lo).magnitude_exponent() > stop_exp {
        let mid = lo.add(&hi).scale(-1);
        match mid.powu(q).cmp_value(&target) {
            Ordering::Greater => hi = mid,
            Ordering::Less => lo = mid,
            Ordering::Equal => return Ok(OracleResult::from_enclosure(&mid, &mid)),
        }
    }
    Ok(OracleResult::from_enclosure(&lo, &hi))
}

/// Enclosure of `log_b a` for `b > 1`, `1 <= a < b`, by bisection on `x`
/// with `b^x` enclosed through a cached root chain of `b`.
pub fn ref_log(b: f64, a: f64) -> OracleOutcome<OracleResult> {
    const OP: &str = "ref_log";
    if !(b.is_finite() && b > 1.0) {
        return Err(domain(OP, "base must be finite and greater than 1"));
    }
    if !(a >= 1.0 && a < b) {
        return Err(domain(OP, "argument must satisfy 1 <= a < b"));
    }
    if a == 1.0 {
        return Ok(OracleResult::exact(0.0));
    }
    let target = Dyadic::from_f64(a);
    let base = Dyadic::from_f64(b);
    let mut prec = START_PREC;
    let mut roots = RootChain::new(&base, prec);
    // b^lo <= a < b^hi throughout.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > f64::EPSILON {
        let mid = (lo + hi) / 2.0;
        let (plo, phi) = roots.power(mid);
        if phi.cmp_value(&target) == Ordering::Less {
            lo = mid;
        } else if plo.cmp_value(&target) == Ordering::Greater {
            hi = mid;
        } else if plo.cmp_value(&phi) == Ordering::Equal {
            return Ok(OracleResult::exact(mid));
        } else if prec < MAX_PREC {
            prec *= 2;
            roots = RootChain::new(&base, prec);
        } else {
            break;
        }
    }
    Ok(OracleResult::from_enclosure(
        &Dyadic::from_f64(lo),
        &Dyadic::from_f64(hi),
    ))
}

fn tight_enough(lo: &Dyadic, hi: &Dyadic) -> bool {
    let width = hi.sub(lo);
    if width.is_zero() {
        return true;
    }
    let width = width.to_f64(Some(Round::Up));
    width / 2.0 <= POW_REL_BOUND * lo.to_f64(Some(Round::Down))
}

fn domain(op: &'static str, reason: &'static str) -> Error {
    Error::Domain { op, reason }
}

/// Lower and upper bounds of `base^(2^-i)` for `i = 0, 1, ...`, extended on
/// demand.
struct RootChain {
    prec: u64,
    lower: Vec<Dyadic>,
    upper: Vec<Dyadic>,
}

impl RootChain {
    fn new(base: &Dyadic, prec: u64) -> Self {
        Self {
            prec,
            lower: vec![base.round(prec, Round::Down)],
            upper: vec![base.round(prec, Round::Up)],
        }
    }

    fn root(&mut self, i: usize) -> (&Dyadic, &Dyadic) {
        while self.lower.len() <= i {
            let lo = self.lower.last().unwrap().sqrt(self.prec, Round::Down);
            let hi = self.upper.last().unwrap().sqrt(self.prec, Round::Up);
            self.lower.push(lo.round(self.prec, Round::Down));
            self.upper.push(hi.round(self.prec, Round::Up));
        }
        (&self.lower[i], &self.upper[i])
    }

    /// Enclosure of `base^f` for a binary fraction `0 <= f < 1`.
    fn power(&mut self, f: f64) -> (Dyadic, Dyadic) {
        debug_assert!((0.0..1.0).contains(&f));
        let prec = self.prec;
        let mut lo = Dyadic::one();
        let mut hi = Dyadic::one();
        for i in fraction_bits(f) {
            let (rlo, rhi) = self.root(i);
            lo = lo.mul_round(rlo, prec, Round::Down);
            hi = hi.mul_round(rhi, prec, Round::Up);
        }
        (lo, hi)
    }
}

/// Positions `i >= 1` with a 1 in the binary expansion `f = sum 2^-i`.
fn fraction_bits(f: f64) -> Vec<usize> {
    let mut bits = Vec::new();
    let mut rest = f;
    let mut i = 0;
    // Doubling a binary64 fraction and dropping its integer part is exact.
    while rest > 0.0 {
        i += 1;
        rest *= 2.0;
        if rest >= 1.0 {
            bits.push(i);
            rest -= 1.0;
        }
    }
    bits
}

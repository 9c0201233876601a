use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::trace::{Inputs, Payload, Recorder, TraceLog, TraceResult};

use super::heron::heron_sqrt;
use super::log::MAX_CHAIN;
use super::{BriggsChain, SqrtMode, ToleranceConfig};

/// Iterated square roots `√b, √√b, ...` kept while they exceed 1.
///
/// With correctly rounded roots, base 10 yields 53 values: each root roughly
/// halves `v - 1`, and it takes about one root per significand bit for that
/// gap to fall below the spacing of floats just above 1.
pub fn briggs_chain(
    b: f64,
    mode: SqrtMode,
    cfg: &ToleranceConfig,
    trace: Option<&mut TraceLog>,
) -> Result<BriggsChain> {
    let mut rec = Recorder::start(trace, Inputs::Briggs { b, sqrt_mode: mode }, Some(*cfg));
    let outcome = chain(b, mode, cfg, &mut rec);
    rec.finish(outcome, |c| TraceResult::Count {
        count: c.count() as u64,
    })
}

fn chain(
    b: f64,
    mode: SqrtMode,
    cfg: &ToleranceConfig,
    rec: &mut Recorder<'_>,
) -> Result<BriggsChain> {
    cfg.validate()?;
    if !(b.is_finite() && b > 1.0) {
        return Err(Error::domain(
            "briggs_chain",
            "base must be finite and greater than 1",
        ));
    }
    let sqrt = |v: f64| -> Result<f64> {
        match mode {
            SqrtMode::CorrectlyRounded => Ok(libm::sqrt(v)),
            SqrtMode::Heron => heron_sqrt(v, cfg, None),
        }
    };

    let mut values = Vec::new();
    let mut v = sqrt(b)?;
    while v > 1.0 {
        if values.len() as u32 == MAX_CHAIN {
            return Err(Error::NonConvergence {
                op: "briggs_chain",
                iterations: MAX_CHAIN,
            });
        }
        values.push(v);
        rec.push(Payload::Briggs {
            k: values.len() as u32,
            value: v,
        });
        v = sqrt(v)?;
    }
    Ok(BriggsChain { base: b, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_of(b: f64) -> BriggsChain {
        briggs_chain(
            b,
            SqrtMode::CorrectlyRounded,
            &ToleranceConfig::default(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn base_ten_gives_53() {
        assert_eq!(chain_of(10.0).count(), 53);
    }

    #[test]
    fn base_four_starts_at_two() {
        assert_eq!(chain_of(4.0).values()[0], 2.0);
    }

    #[test]
    fn strictly_decreasing_above_one() {
        for b in [1.5, 2.0, 10.0, 1.0e10, f64::MAX] {
            let c = chain_of(b);
            assert!(c.values().windows(2).all(|w| w[0] > w[1]));
            assert!(c.values().iter().all(|&v| v > 1.0));
        }
    }

    #[test]
    fn base_just_above_one() {
        let b = 1.0 + f64::EPSILON;
        let c = chain_of(b);
        assert_eq!(c.count(), 0);
        let c = chain_of(1.0 + 4.0 * f64::EPSILON);
        assert!((1..=2).contains(&c.count()));
    }

    #[test]
    fn domain() {
        let cfg = ToleranceConfig::default();
        for b in [1.0, 0.5, f64::NAN, f64::INFINITY] {
            assert!(briggs_chain(b, SqrtMode::CorrectlyRounded, &cfg, None).is_err());
        }
    }
}

use binexp_core::{
    binary_digits, briggs_chain, div_qr, egyptian_mul, heron_run, log_base, pow_rational, pow_real,
    BinaryExpansion, Payload, RationalExponent, SqrtMode, ToleranceConfig, TraceLog,
};
use binexp_reference::{ref_divmod, ref_log, ref_mul, ref_pow};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// Operands whose product is likely to fit: `a` of random width, `b` below
/// `u64::MAX / a` most of the time.
fn mul_operands() -> impl Strategy<Value = (u64, u64)> {
    (0u32..=64, 0u32..=64, any::<u64>(), any::<u64>()).prop_map(|(wa, wb, a, b)| {
        let mask = |w: u32| if w == 64 { u64::MAX } else { (1u64 << w) - 1 };
        (a & mask(wa), b & mask(wb))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn egyptian_mul_matches_builtin((a, b) in mul_operands()) {
        let ours = egyptian_mul(a, b, None).map_err(|e| e.kind());
        let oracle = ref_mul(a, b).map_err(|e| e.kind());
        prop_assert_eq!(ours, oracle);
    }

    #[test]
    fn div_qr_matches_builtin(a in any::<u64>(), d in 1u64..=u64::MAX, w in 1u32..=64) {
        let d = if w == 64 { d } else { d & ((1u64 << w) - 1) }.max(1);
        let ours = div_qr(a, d, None).map_err(|e| e.kind());
        prop_assert_eq!(ours, ref_divmod(a, d).map_err(|e| e.kind()));
        if let Ok(qr) = ours {
            prop_assert!(qr.satisfies(a, d));
        }
    }

    #[test]
    fn division_round_trips_through_multiplication(a in any::<u64>(), d in 1u64..1 << 40) {
        if let Ok(qr) = div_qr(a, d, None) {
            let back = egyptian_mul(qr.quotient, d, None).unwrap() + qr.remainder;
            prop_assert_eq!(back, a);
        }
    }

    #[test]
    fn digits_reconstruct(n in any::<u64>()) {
        let e = binary_digits(n);
        prop_assert_eq!(e.value(), n);
        prop_assert!(e.positions().windows(2).all(|w| w[0] < w[1]));
        let rebuilt = BinaryExpansion::from_positions(e.positions().to_vec()).unwrap();
        prop_assert_eq!(binary_digits(rebuilt.value()), e);
    }

    #[test]
    fn mul_trace_rows_follow_digits(a in 0u64..1 << 32, b in 1u64..1 << 32) {
        let mut log = TraceLog::new();
        let product = egyptian_mul(a, b, Some(&mut log)).unwrap();
        let digits = binary_digits(b);
        prop_assert_eq!(log.len() as u32, digits.bit_length());
        let mut marked_sum = 0u64;
        for (i, event) in log.events().iter().enumerate() {
            let Payload::EgyptianMul { power, doubled, marked, accumulated, remaining } = event.payload else {
                panic!("foreign payload");
            };
            prop_assert_eq!(power, 1u64 << i);
            prop_assert_eq!(doubled, a << i);
            prop_assert_eq!(marked, digits.digit(i as u32));
            if marked {
                marked_sum += doubled;
            }
            prop_assert_eq!(accumulated, marked_sum);
            // a0 * b0 = r + (2a) * remaining after the step.
            prop_assert_eq!(
                u128::from(a) * u128::from(b),
                u128::from(accumulated) + 2 * u128::from(doubled) * u128::from(remaining)
            );
        }
        prop_assert_eq!(marked_sum, product);
    }

    #[test]
    fn div_trace_keeps_identity(a in any::<u64>(), d in 1u64..1 << 20) {
        let mut log = TraceLog::new();
        if div_qr(a, d, Some(&mut log)).is_ok() {
            for event in log.events() {
                let Payload::DivQr { position, multiple, residue, quotient, .. } = event.payload else {
                    panic!("foreign payload");
                };
                prop_assert_eq!(u128::from(multiple), u128::from(d) << position);
                prop_assert_eq!(u128::from(quotient) * u128::from(multiple) + u128::from(residue), u128::from(a));
                prop_assert!(residue < multiple);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn heron_iterates_stay_above_the_root(a in 1e-6f64..1e6) {
        let mut log = TraceLog::new();
        heron_run(a, &cfg(), Some(&mut log)).unwrap();
        for event in log.events() {
            let Payload::Heron { iterate, .. } = event.payload else { panic!() };
            prop_assert!(iterate * iterate >= a * (1.0 - 1e-12));
        }
    }

    #[test]
    fn heron_is_within_four_ulp(a in 1e-300f64..1e300) {
        let x = heron_run(a, &cfg(), None).unwrap().root;
        let exact = a.sqrt();
        let ulp = exact.next_up() - exact;
        prop_assert!((x - exact).abs() <= 4.0 * ulp);
    }

    #[test]
    fn rational_and_real_paths_agree(a in 1e-3f64..1e3, p in 0u64..=64, q in 1u64..=64) {
        let e = RationalExponent::new(p, q).unwrap();
        let r = pow_rational(a, e, &cfg(), None).unwrap();
        let t = pow_real(a, e.to_f64(), &cfg(), None).unwrap();
        prop_assert!((r - t).abs() <= 1e-9 * r);
    }

    #[test]
    fn pow_real_matches_oracle(a in 1e-3f64..1e3, t in 0.0f64..32.0) {
        let ours = pow_real(a, t, &cfg(), None).unwrap();
        let oracle = ref_pow(a, t).unwrap();
        prop_assert!(oracle.relative_error_of(ours) <= 1e-9);
    }

    #[test]
    fn log_and_pow_are_inverse(b in 1.0001f64..=100.0, frac in 0.0f64..1.0) {
        let a = 1.0 + frac * (b - 1.0);
        prop_assume!(a < b);
        let x = log_base(b, a, &cfg(), None).unwrap();
        prop_assert!((0.0..1.0).contains(&x.value()));
        let back = pow_real(b, x.value(), &cfg(), None).unwrap();
        prop_assert!((back - a).abs() <= 1e-8 * a);
        let oracle = ref_log(b, a).unwrap();
        prop_assert!((x.value() - oracle.value).abs() <= 1e-10 + oracle.error_bound);
    }

    #[test]
    fn log_digits_are_deterministic(b in 1.01f64..100.0, frac in 0.0f64..1.0) {
        let a = 1.0 + frac * (b - 1.0);
        prop_assume!(a < b);
        let one = log_base(b, a, &cfg(), None).unwrap();
        let two = log_base(b, a, &cfg(), None).unwrap();
        prop_assert_eq!(one.value().to_bits(), two.value().to_bits());
        prop_assert_eq!(one.digits(), two.digits());
        let sum: f64 = one.digits().iter().enumerate()
            .filter(|(_, &d)| d == 1)
            .map(|(i, _)| 2f64.powi(-(i as i32 + 1)))
            .sum();
        prop_assert!((sum - one.value()).abs() <= f64::EPSILON);
    }

    #[test]
    fn briggs_chain_is_monotone(b in 1.0f64..1e300, mode in prop_oneof![Just(SqrtMode::CorrectlyRounded), Just(SqrtMode::Heron)]) {
        prop_assume!(b > 1.0);
        let c = briggs_chain(b, mode, &cfg(), None).unwrap();
        prop_assert!(c.values().iter().all(|&v| v > 1.0));
        prop_assert!(c.values().windows(2).all(|w| w[0] > w[1]));
        for w in c.values().windows(2) {
            prop_assert!((w[1] * w[1] - w[0]).abs() <= 4.0 * f64::EPSILON * w[0]);
        }
    }

    #[test]
    fn tracing_does_not_change_results(a in 1e-3f64..1e3, t in 0.0f64..8.0, b in 1.5f64..50.0) {
        let mut log = TraceLog::new();
        let traced = pow_real(a, t, &cfg(), Some(&mut log)).unwrap();
        prop_assert_eq!(traced.to_bits(), pow_real(a, t, &cfg(), None).unwrap().to_bits());

        let traced = heron_run(a, &cfg(), Some(&mut log)).unwrap();
        prop_assert_eq!(traced, heron_run(a, &cfg(), None).unwrap());

        let traced = log_base(b, 1.25, &cfg(), Some(&mut log)).unwrap();
        prop_assert_eq!(traced, log_base(b, 1.25, &cfg(), None).unwrap());

        let e = RationalExponent::new(7, 3).unwrap();
        let traced = pow_rational(a, e, &cfg(), Some(&mut log)).unwrap();
        prop_assert_eq!(traced.to_bits(), pow_rational(a, e, &cfg(), None).unwrap().to_bits());
    }
}

#[test]
fn heron_correct_digits_double() {
    let root2 = ref_pow(2.0, 0.5).unwrap().value;
    let mut log = TraceLog::new();
    heron_run(2.0, &cfg(), Some(&mut log)).unwrap();
    let digits: Vec<f64> = log
        .events()
        .iter()
        .map(|e| match e.payload {
            Payload::Heron { iterate, .. } => -((iterate - root2).abs() / root2).log10(),
            _ => unreachable!(),
        })
        .take_while(|d| d.is_finite() && *d < 15.0)
        .collect();
    assert!(digits.len() >= 3, "{digits:?}");
    for w in digits.windows(2) {
        assert!(w[1] >= 2.0 * w[0] - 1.0, "{digits:?}");
    }
}

#[test]
fn heron_briggs_count_is_near_53() {
    let c = briggs_chain(10.0, SqrtMode::Heron, &cfg(), None).unwrap();
    assert!((52..=54).contains(&c.count()), "count {}", c.count());
}

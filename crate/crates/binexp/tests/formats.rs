use binexp::{from_json, render_briggs, render_division, render_rhind, render_text, to_json};
use binexp_core::{
    briggs_chain, div_qr, egyptian_mul, heron_run, log_base, pow_rational, pow_real, Payload,
    RationalExponent, SqrtMode, ToleranceConfig, TraceLog,
};
use proptest::prelude::*;

const RHIND: &str = include_str!("fixtures/rhind_27_23.txt");
const DIVISION: &str = include_str!("fixtures/division_626_27.txt");

#[test]
fn rhind_table_matches_fixture() {
    let mut log = TraceLog::new();
    egyptian_mul(27, 23, Some(&mut log)).unwrap();
    assert_eq!(render_rhind(&log).unwrap(), RHIND);
}

#[test]
fn division_chain_matches_fixture() {
    let mut log = TraceLog::new();
    div_qr(626, 27, Some(&mut log)).unwrap();
    assert_eq!(render_division(&log).unwrap(), DIVISION);
}

#[test]
fn briggs_of_ten_renders_one_line_per_root() {
    let mut log = TraceLog::new();
    briggs_chain(
        10.0,
        SqrtMode::CorrectlyRounded,
        &ToleranceConfig::default(),
        Some(&mut log),
    )
    .unwrap();
    let text = render_briggs(&log).unwrap();
    assert_eq!(text.lines().count(), 53);
    assert!(text.starts_with("  1  3.1622776601683795\n"));
}

#[test]
fn rendering_is_deterministic() {
    let cfg = ToleranceConfig::default();
    let mut one = TraceLog::new();
    let mut two = TraceLog::new();
    log_base(10.0, 2.0, &cfg, Some(&mut one)).unwrap();
    log_base(10.0, 2.0, &cfg, Some(&mut two)).unwrap();
    assert_eq!(render_text(&one).unwrap(), render_text(&two).unwrap());
    assert_eq!(to_json(&one), to_json(&two));
}

fn assert_round_trip(log: &TraceLog) {
    let back = from_json(&to_json(log)).unwrap();
    assert_eq!(&back, log);
    // Equality on f64 treats 0.0 and -0.0 alike; compare bits too.
    for (x, y) in log.events().iter().zip(back.events()) {
        assert_eq!(format!("{:?}", x.payload), format!("{:?}", y.payload));
    }
}

#[test]
fn error_logs_round_trip() {
    let mut log = TraceLog::new();
    assert!(egyptian_mul(u64::MAX, 3, Some(&mut log)).is_err());
    assert_round_trip(&log);
    assert!(div_qr(5, 0, Some(&mut log)).is_err());
    assert_round_trip(&log);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn integer_traces_round_trip(a in any::<u64>(), b in any::<u64>()) {
        let mut log = TraceLog::new();
        let _ = egyptian_mul(a, b >> 32, Some(&mut log));
        assert_round_trip(&log);
        let _ = div_qr(a, b.max(1), Some(&mut log));
        assert_round_trip(&log);
    }

    #[test]
    fn real_traces_round_trip(a in 1e-3f64..1e3, t in 0.0f64..16.0, p in 0u64..40, q in 1u64..40) {
        let cfg = ToleranceConfig::default();
        let mut log = TraceLog::new();
        heron_run(a, &cfg, Some(&mut log)).unwrap();
        assert_round_trip(&log);
        pow_real(a, t, &cfg, Some(&mut log)).unwrap();
        assert_round_trip(&log);
        pow_rational(a, RationalExponent::new(p, q).unwrap(), &cfg, Some(&mut log)).unwrap();
        assert_round_trip(&log);
        let b = 1.0 + a;
        log_base(b, 1.0 + a / 2.0, &cfg, Some(&mut log)).unwrap();
        assert_round_trip(&log);
        briggs_chain(b, SqrtMode::Heron, &cfg, Some(&mut log)).unwrap();
        assert_round_trip(&log);
    }

    #[test]
    fn every_trace_renders(a in 1u64..1 << 30, b in 0u64..1 << 30) {
        let mut log = TraceLog::new();
        egyptian_mul(a, b, Some(&mut log)).unwrap();
        let text = render_text(&log).unwrap();
        let rows = log.events().len();
        prop_assert_eq!(text.lines().count(), rows + 2);
        let marks = log.events().iter().filter(|e| matches!(e.payload, Payload::EgyptianMul { marked: true, .. })).count();
        prop_assert_eq!(text.matches('\\').count(), marks);
        div_qr(a * 7 + b, a, Some(&mut log)).unwrap();
        prop_assert_eq!(render_text(&log).unwrap().lines().count(), log.len());
    }
}

use super::*;
use crate::sequences::{make_power_law, make_power_log, TailModel};

fn cp(theta: f64) -> ClassParams {
    ClassParams::new(theta, 0.5, 0.5, 2, 2.0).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn fin(v: SumValue) -> f64 {
    v.finite().expect("finite value")
}

/// `sum_{nu >= from} nu^{-s}` by direct summation to `10^6` closed with the
/// midpoint integral.
fn zeta_tail(s: f64, from: usize) -> f64 {
    const L: usize = 1_000_000;
    let direct: f64 = (from..=L).rev().map(|nu| (nu as f64).powf(-s)).sum();
    direct + (L as f64 + 0.5).powf(1.0 - s) / (s - 1.0)
}

#[test]
fn class_parameter_checks() {
    assert!(ClassParams::new(1.0, 0.5, 0.5, 2, 2.0).is_ok());
    assert!(ClassParams::new(1.0, 0.8, 0.5, 1, 2.0).is_err());
    assert!(ClassParams::new(-1.0, 0.5, 0.5, 2, 2.0).is_err());
    assert!(ClassParams::new(1.0, 0.5, 0.5, 2, 1.0).is_err());
    assert!(ClassParams::new(1.0, 0.5, 0.5, 1, 2.0).is_err());
    assert_eq!(ClassParams::violations(-1.0, 0.0, 0.5, 0, 0.5).len(), 4);
}

#[test]
fn cell_weights_match_the_plain_antiderivative() {
    for a in [0.25, 0.5, 1.0, 3.0] {
        for nu in [1usize, 2, 7, 40] {
            let (lo, hi) = (1.0 / (nu + 1) as f64, 1.0 / nu as f64);
            let plain = (lo.powf(-a) - hi.powf(-a)) / a;
            assert!(rel(cell_weight(a, nu), plain) < 1e-12);
            assert!(rel(power_weight(a, lo, hi), plain) < 1e-12);
        }
    }
    // Far out the plain difference cancels; compare with the midpoint rule.
    let nu = 1usize << 30;
    let x = nu as f64 + 0.5;
    let approx = x.powf(0.5 - 1.0) * 1.0;
    assert!(rel(cell_weight(0.5, nu), approx) < 1e-12);
    assert_eq!(power_weight(1.0, 0.5, 0.5), 0.0);
}

#[test]
fn zero_sequence_gives_zero() {
    let zero = CoefficientSequence::from_head(vec![0.0; 5]).unwrap();
    for theta in [1.0, 2.0] {
        let c = cp(theta);
        for source in [ModulusSource::default(), ModulusSource::Bounds] {
            for delta in [0.9, 0.125, 0.013] {
                assert_eq!(integral_seminorm(&zero, &c, delta, source).unwrap(), SumValue::Finite(0.0));
            }
            for n in [1, 4, 30] {
                assert_eq!(discrete_seminorm(&zero, &c, n, source).unwrap(), SumValue::Finite(0.0));
            }
        }
        assert_eq!(coefficient_functional(&zero, &c, 3).unwrap(), SumValue::Finite(0.0));
    }
}

/// `I(delta)` for `omega(t) = t^k`.
fn power_modulus_closed_form(c: &ClassParams, delta: f64) -> f64 {
    let (k, r, l, th) = (c.k as f64, c.r, c.lambda, c.theta);
    (delta.powf((k - r) * th) / ((k - r) * th)
        + delta.powf(l * th) * (1.0 - delta.powf((k - r - l) * th)) / ((k - r - l) * th))
        .powf(1.0 / th)
}

#[test]
fn cells_bracket_the_power_modulus() {
    // omega frozen at the right end of each cell overestimates t^k, at the
    // left end it underestimates.
    for theta in [1.0, 2.0, 0.5] {
        let c = cp(theta);
        let k = c.k as i32;
        for delta in [0.9, 0.5, 0.3, 0.13, 0.125, 1.0 / 9.0, 0.01, 0.0017] {
            let exact = power_modulus_closed_form(&c, delta);
            let mut upper_oracle = FnOracle(|nu: usize| (1.0 / nu as f64).powi(k));
            let mut lower_oracle = FnOracle(|nu: usize| (1.0 / (nu + 1) as f64).powi(k));
            let upper = fin(integral_seminorm_with(&mut upper_oracle, &c, delta).unwrap());
            let lower = fin(integral_seminorm_with(&mut lower_oracle, &c, delta).unwrap());
            assert!(lower <= exact * (1.0 + 1e-4), "theta={theta} delta={delta}: {lower} > {exact}");
            assert!(exact <= upper * (1.0 + 1e-4), "theta={theta} delta={delta}: {exact} > {upper}");
            // The cells are at most a factor (1 + 1/nu)^k apart.
            assert!(upper / lower < 2f64.powi(k) * (1.0 + 1e-4));
        }
    }
}

#[test]
fn discrete_seminorm_single_harmonic() {
    // a = (1): omega(1/nu) = 2 sin(1/(2 nu)) sqrt(pi) for k = 1 and its
    // square for k = 2, attained at h = 1/nu.
    let one = CoefficientSequence::from_head(vec![1.0]).unwrap();
    for k in [2usize, 3] {
        let c = ClassParams::new(1.0, 0.5, 0.5, k, 2.0).unwrap();
        let amp = |nu: usize| (2.0 * (0.5 / nu as f64).sin()).powi(k as i32) * std::f64::consts::PI.sqrt();
        const L: usize = 2_000_000;
        let direct: f64 = (2..=L).rev().map(|nu| amp(nu) * (nu as f64).powf(-0.5)).sum();
        // amp(nu) nu^{-1/2} ~ sqrt(pi) nu^{-k - 1/2} beyond L.
        let remainder = std::f64::consts::PI.sqrt() * (L as f64 + 0.5).powf(0.5 - k as f64) / (k as f64 - 0.5);
        let expect = direct + remainder + amp(1);
        let got = fin(discrete_seminorm(&one, &c, 1, ModulusSource::default()).unwrap());
        assert!(rel(got, expect) < 1e-4, "k={k}: {got} vs {expect}");
    }
}

#[test]
fn coefficient_functional_examples() {
    let c = cp(1.0);
    let single = CoefficientSequence::from_head(vec![1.0, 0.0, 0.0]).unwrap();
    let k2 = fin(coefficient_functional(&single, &c, 2).unwrap());
    assert!(rel(k2, 0.5f64.sqrt()) < 1e-15);

    // theta = 1: K(n) = sum_{nu>n} nu^{r - 1/p - beta} + n^{-lambda} sum_{nu<=n} nu^{r + lambda - 1/p - beta}.
    for beta in [1.5, 2.0, 3.0] {
        let s = make_power_law(1.0, beta, 16).unwrap();
        for n in [1usize, 4, 10, 33] {
            let tail = zeta_tail(beta - 0.5 + 0.5, n + 1);
            let head: f64 = (1..=n).map(|nu| (nu as f64).powf(0.5 + 0.5 - 0.5 - beta)).sum();
            let expect = tail + (n as f64).powf(-0.5) * head;
            let got = fin(coefficient_functional(&s, &c, n).unwrap());
            assert!(rel(got, expect) < 1e-9, "beta={beta} n={n}: {got} vs {expect}");
        }
    }
    let slow = make_power_law(1.0, 0.9, 4).unwrap();
    assert!(coefficient_functional(&slow, &c, 3).unwrap().is_divergent());
}

#[test]
fn functionals_are_one_homogeneous() {
    let s = 3.7;
    let seqs = [
        make_power_law(1.0, 2.0, 12).unwrap(),
        make_power_log(1.0, 1.5, 1.0, 12).unwrap(),
    ];
    let c = cp(2.0);
    for seq in &seqs {
        let scaled = seq.scaled(s).unwrap();
        for source in [ModulusSource::default(), ModulusSource::Bounds] {
            let i = |q: &CoefficientSequence| fin(integral_seminorm(q, &c, 0.2, source).unwrap());
            let j = |q: &CoefficientSequence| fin(discrete_seminorm(q, &c, 5, source).unwrap());
            assert!(rel(i(&scaled), s * i(seq)) < 1e-10);
            assert!(rel(j(&scaled), s * j(seq)) < 1e-10);
        }
        let k = |q: &CoefficientSequence| fin(coefficient_functional(q, &c, 5).unwrap());
        assert!(rel(k(&scaled), s * k(seq)) < 1e-10);
    }
}

#[test]
fn phi_examples() {
    assert!(rel(phi_eval(&PhiSpec::Power { alpha: 0.5 }, 0.25).unwrap(), 0.5) < 1e-15);
    assert!(phi_eval(&PhiSpec::Power { alpha: 0.5 }, 1.0).is_err());
    assert!(phi_eval(&PhiSpec::Power { alpha: 0.5 }, 0.0).is_err());
    let d = 0.1f64;
    let pl = phi_eval(&PhiSpec::PowerLog { alpha: 0.3, gamma: -1.5 }, d).unwrap();
    assert!(rel(pl, d.powf(0.3) * (1.0 + d.ln().abs()).powf(-1.5)) < 1e-15);

    let grid: Vec<f64> = (1..=400).map(|i| 0.5 * i as f64 / 400.0).collect();
    assert_eq!(phi_validate(&PhiSpec::Constant { c: 1.0 }, &grid).unwrap(), (1.0, 1.0));
    for alpha in [0.1, 0.25, 0.49] {
        let (c1, c2) = phi_validate(&PhiSpec::Power { alpha }, &grid).unwrap();
        assert_eq!(c1, 1.0);
        assert!((c2 - 2f64.powf(alpha)).abs() < 1e-9);
    }
    assert!(phi_validate(&PhiSpec::Constant { c: 0.0 }, &grid).is_err());
    assert!(phi_validate(&PhiSpec::Constant { c: 1.0 }, &[0.3, 0.2]).is_err());
    assert!(phi_validate(&PhiSpec::Constant { c: 1.0 }, &[0.3, 0.7]).is_err());
}

#[test]
fn phi_parameter_checks() {
    assert!(PhiSpec::Power { alpha: 0.25 }.validate(0.5).is_ok());
    assert!(PhiSpec::Power { alpha: 0.5 }.validate(0.5).is_err());
    assert!(PhiSpec::Power { alpha: 0.0 }.validate(0.5).is_err());
    assert!(PhiSpec::Constant { c: -1.0 }.validate(0.5).is_err());
    assert!(PhiSpec::PowerLog { alpha: 0.0, gamma: 1.0 }.validate(0.5).is_ok());
}

fn dyadic(lo: u32, hi: u32) -> Vec<usize> {
    (lo..=hi).map(|i| 1usize << i).collect()
}

#[test]
fn single_coefficient_family_is_discriminated() {
    let c = cp(2.0);
    let phi = PhiSpec::Power { alpha: 0.25 };
    let exponent = 0.5 + 0.25 + 1.0 - 0.5;
    let grid = dyadic(1, 12);
    let inside = make_power_law(1.0, exponent, 8).unwrap();
    let outside = make_power_law(1.0, exponent - 0.2, 8).unwrap();
    let m_in = membership_test(&inside, &c, &phi, Functional::K, &grid, ModulusSource::Bounds).unwrap();
    let m_out = membership_test(&outside, &c, &phi, Functional::K, &grid, ModulusSource::Bounds).unwrap();
    assert_eq!(m_in.verdict, Verdict::Bounded, "{}", m_in.evidence);
    assert_eq!(m_out.verdict, Verdict::Unbounded, "{}", m_out.evidence);
    assert!(m_out.ratios.windows(2).all(|w| w[1] > w[0]));
    assert!(m_in.running_sup.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn nikolskii_criterion_agrees_with_membership() {
    let c = cp(2.0);
    let (r, alpha, p) = (0.5, 0.25, 2.0);
    let s = r + alpha + 1.0 - 1.0 / p;
    let grid = dyadic(1, 12);
    let phi = PhiSpec::Power { alpha };
    let families = [
        (make_power_law(1.0, s, 8).unwrap(), true),
        (make_power_law(1.0, s + 0.3, 8).unwrap(), true),
        (make_power_law(1.0, s - 0.3, 8).unwrap(), false),
        (make_power_log(1.0, s, 1.0, 8).unwrap(), true),
        (make_power_log(1.0, s - 0.3, 1.0, 8).unwrap(), false),
    ];
    for (seq, bounded) in &families {
        let crit = nikolskii_criterion(seq, r, alpha, p).unwrap();
        assert_eq!(!crit.is_divergent(), *bounded);
        let m = membership_test(seq, &c, &phi, Functional::K, &grid, ModulusSource::Bounds).unwrap();
        let verdict_bounded = m.verdict == Verdict::Bounded;
        assert_eq!(verdict_bounded, *bounded, "{:?}: {}", seq.tail(), m.evidence);
    }
}

#[test]
fn nikolskii_criterion_values() {
    let head = CoefficientSequence::from_head(vec![1.0, 0.5, 0.1]).unwrap();
    let got = fin(nikolskii_criterion(&head, 0.5, 0.25, 2.0).unwrap());
    assert!(rel(got, 0.5 * 2f64.powf(1.25)) < 1e-15);
    let seq = CoefficientSequence::new(vec![1.0], TailModel::PowerLog { c: 1.0, beta: 1.75, gamma: 2.0 }).unwrap();
    let got = fin(nikolskii_criterion(&seq, 0.5, 0.25, 2.0).unwrap());
    let brute = (1..10_000)
        .map(|nu| seq.value(nu) * (nu as f64).powf(1.25))
        .fold(0.0, f64::max);
    assert!(rel(got, brute) < 1e-15);
}

#[test]
fn constant_weight_follows_series_convergence() {
    let c = cp(1.0);
    let phi = PhiSpec::Constant { c: 1.0 };
    let grid = dyadic(1, 10);
    // The series has terms a_nu nu^0, so it converges iff beta > 1.
    for (beta, converges) in [(1.2, true), (0.8, false)] {
        let seq = make_power_law(1.0, beta, 8).unwrap();
        assert_eq!(!besov_series(&seq, &c).unwrap().is_divergent(), converges);
        let m = membership_test(&seq, &c, &phi, Functional::K, &grid, ModulusSource::Bounds).unwrap();
        let expect = if converges { Verdict::Bounded } else { Verdict::NotInClass };
        assert_eq!(m.verdict, expect, "{}", m.evidence);
    }
}

#[test]
fn membership_input_checks() {
    let c = cp(1.0);
    let seq = make_power_law(1.0, 2.0, 8).unwrap();
    let phi = PhiSpec::Power { alpha: 0.25 };
    let src = ModulusSource::Bounds;
    assert!(membership_test(&seq, &c, &phi, Functional::K, &[], src).is_err());
    assert!(membership_test(&seq, &c, &phi, Functional::K, &[4, 2], src).is_err());
    assert!(membership_test(&seq, &c, &phi, Functional::K, &[1, 2], src).is_err());
    assert!(membership_test(&seq, &c, &PhiSpec::Power { alpha: 0.7 }, Functional::K, &[2, 4], src).is_err());
    let m = membership_test(&seq, &c, &phi, Functional::K, &[2, 3], src).unwrap();
    assert_eq!(m.verdict, Verdict::Inconclusive);
    assert!(m.growth.is_none());
}

#[test]
fn seminorm_memberships_use_the_moduli() {
    let c = cp(1.0);
    let seq = make_power_law(1.0, 2.0, 8).unwrap();
    let phi = PhiSpec::Constant { c: 1.0 };
    for f in [Functional::I, Functional::J] {
        let m = membership_test(&seq, &c, &phi, f, &dyadic(1, 6), ModulusSource::Bounds).unwrap();
        assert_eq!(m.verdict, Verdict::Bounded, "{f}: {}", m.evidence);
    }
}

#[test]
fn equivalence_bands_on_the_default_family() {
    let c = cp(1.0);
    let seq = make_power_law(1.0, 2.0, 8).unwrap();
    let rep = equivalence_report(&seq, &c, &dyadic(1, 5), ModulusSource::Bounds).unwrap();
    assert!(!rep.divergent);
    for band in [rep.bands.ji, rep.bands.kj, rep.bands.we] {
        let b = band.unwrap();
        assert_eq!(b.count, 5);
        assert!(b.min > 0.0 && b.spread() < 10.0);
    }
}

#[test]
fn equivalence_of_zero_sequence_has_no_bands() {
    let zero = CoefficientSequence::from_head(vec![0.0; 3]).unwrap();
    let rep = equivalence_report(&zero, &cp(1.0), &[2, 4], ModulusSource::default()).unwrap();
    assert_eq!(rep.bands, Bands { ji: None, kj: None, we: None });
}

#[test]
fn bounds_table_matches_coefficient_expression() {
    let params = SmoothnessParams::new(2, 1.5).unwrap();
    for seq in [
        make_power_log(1.0, 1.3, 0.5, 10).unwrap(),
        CoefficientSequence::from_head(vec![3.0, 2.0, 2.0, 1.0, 0.5]).unwrap(),
    ] {
        let mut table = OmegaTable::new(&seq, params, ModulusSource::Bounds).unwrap();
        for nu in [7, 1, 3, 40, 12, 500] {
            let expect = fin(crate::smoothness::modulus_core(&seq, &params, nu).unwrap());
            let got = fin(table.omega(nu).unwrap());
            assert!(rel(got, expect) < 1e-9, "{nu}: {got} vs {expect}");
        }
    }
    let rising = CoefficientSequence::from_head(vec![1.0, 2.0]).unwrap();
    let mut table = OmegaTable::new(&rising, params, ModulusSource::Bounds).unwrap();
    assert!(table.omega(1).is_err());
}

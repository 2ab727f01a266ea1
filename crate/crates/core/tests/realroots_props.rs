//! Property suites for the exact polynomial machinery, plus the appendix
//! polynomial test vectors in full.

mod common;

use branchforge::exact::{rat, rat_int, Rat};
use branchforge::realroots::{
    descartes_positive_bound, discriminant, isolate_roots, resultant, sturm_count, Bound,
    IntPolynomial,
};
use common::SplitMix;
use num_traits::{One, Signed, Zero};

fn random_poly(rng: &mut SplitMix, degree: usize) -> IntPolynomial {
    loop {
        let coeffs: Vec<i64> = (0..=degree).map(|_| rng.below(41) as i64 - 20).collect();
        if coeffs[degree] != 0 {
            return IntPolynomial::from_ints(&coeffs);
        }
    }
}

#[test]
fn sturm_count_matches_isolation_on_random_polynomials() {
    let mut rng = SplitMix::new(0x0707_2024);
    let precision = rat(1, 1 << 24);
    let mut tested = 0;
    while tested < 200 {
        let degree = 2 + rng.below(7) as usize;
        let p = random_poly(&mut rng, degree);
        // Non-squarefree draws are rejected by sturm_count; skip those.
        let Ok(total) = sturm_count(&p, &Bound::NegInf, &Bound::PosInf) else {
            continue;
        };
        let roots = isolate_roots(&p, &precision).unwrap();
        assert_eq!(roots.len(), total, "count mismatch for {p:?}");
        for root in &roots {
            // Each isolating interval contains a sign change (or an exact
            // rational root at an endpoint).
            let lo = p.eval(&root.lo);
            let hi = p.eval(&root.hi);
            assert!(
                (lo * hi).is_negative() || p.eval(&root.hi).is_zero(),
                "no sign change in isolating interval of {p:?}"
            );
            assert!((&root.hi - &root.lo) <= precision);
        }
        // Intervals are pairwise disjoint and sorted.
        for pair in roots.windows(2) {
            assert!(pair[0].hi <= pair[1].lo);
        }
        tested += 1;
    }
}

#[test]
fn cubic_discriminant_sign_classifies_real_roots() {
    let mut rng = SplitMix::new(0x0d15_c0de);
    let mut tested = 0;
    while tested < 200 {
        let p = random_poly(&mut rng, 3);
        let disc = discriminant(&p).unwrap();
        if disc.is_zero() {
            continue;
        }
        let count = sturm_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap();
        if disc.is_negative() {
            assert_eq!(count, 1, "negative discriminant must give one real root: {p:?}");
        } else {
            assert_eq!(count, 3, "positive discriminant must give three real roots: {p:?}");
        }
        tested += 1;
    }
}

#[test]
fn resultant_vanishes_iff_common_root() {
    // (x−a) shares a root with (x−a)(x−b).
    let f = IntPolynomial::from_ints(&[-3, 1]);
    let g = IntPolynomial::from_ints(&[6, -5, 1]); // (x−2)(x−3)
    assert!(resultant(&f, &g).is_zero());
    let h = IntPolynomial::from_ints(&[2, -3, 1]); // (x−1)(x−2)
    assert!(!resultant(&f, &h).is_zero());
}

// ── appendix polynomial vectors ─────────────────────────────────────────

fn case1_cubic(w: &Rat) -> IntPolynomial {
    let one = Rat::one();
    IntPolynomial::new(vec![
        rat_int(-2048) * (w - &one) * (w - &one) * (w - &one),
        rat_int(20736) * (w * w + rat_int(2) * w + rat_int(29)),
        rat_int(-54432) * (w + &one),
        rat_int(35721),
    ])
}

#[test]
fn case1_sextic_vector() {
    let sextic = IntPolynomial::from_ints(&[4902, -6588, 2328, 40, -84, 6, 1]);
    // Exactly two real roots, both negative.
    assert_eq!(sturm_count(&sextic, &Bound::NegInf, &Bound::PosInf).unwrap(), 2);
    assert_eq!(
        sturm_count(&sextic, &Bound::Finite(Rat::zero()), &Bound::PosInf).unwrap(),
        0
    );
    assert_eq!(
        sturm_count(&sextic, &Bound::Finite(rat_int(-12)), &Bound::Finite(rat_int(-10))).unwrap(),
        1
    );
    // All roots simple: gcd with the derivative is constant.
    assert_eq!(sextic.gcd(&sextic.derivative()).degree(), 0);
}

#[test]
fn case1_discriminant_quartic_vector() {
    let quartic = IntPolynomial::from_ints(&[-2751, -132, -186, -4, 1]);
    assert_eq!(descartes_positive_bound(&quartic).unwrap(), 1);
    // The single positive root in Ω² lies in (16, 17].
    assert_eq!(
        sturm_count(&quartic, &Bound::Finite(rat_int(16)), &Bound::Finite(rat_int(17))).unwrap(),
        1
    );
    let roots = isolate_roots(&quartic, &rat(1, 1 << 30)).unwrap();
    let positive: Vec<_> = roots.iter().filter(|r| r.midpoint.is_positive()).collect();
    assert_eq!(positive.len(), 1);
    let y = &positive[0].midpoint;
    assert!(rat_int(16) < *y && *y < rat_int(17));
}

#[test]
fn case1_cubic_discriminant_bracket() {
    // Δ(Ω) evaluations at Ω=4 and Ω=√17 bracket the sign change: the
    // quartic factor is negative at y=16 and positive at y=17.
    let quartic = IntPolynomial::from_ints(&[-2751, -132, -186, -4, 1]);
    assert!(quartic.eval(&rat_int(16)).is_negative());
    assert!(quartic.eval(&rat_int(17)).is_positive());
    // The full discriminant of the eliminated cubic obeys the stated
    // factorization at those sample frequencies.
    for w in [rat_int(16), rat_int(17)] {
        let disc = discriminant(&case1_cubic(&w)).unwrap();
        let expected = rat_int(20643001562824704)
            * (&w + rat_int(23))
            * (&w + rat_int(23))
            * quartic.eval(&w);
        assert_eq!(disc, expected);
    }
}

#[test]
fn case1_cubic_root_counts_switch_at_critical_frequency() {
    // One positive B² root for Ω² < y*, three for Ω² > y*.
    for (w, expected) in [(rat_int(4), 1usize), (rat_int(16), 1), (rat_int(17), 3), (rat_int(25), 3)] {
        let cubic = case1_cubic(&w);
        let count = sturm_count(&cubic, &Bound::Finite(Rat::zero()), &Bound::PosInf).unwrap();
        assert_eq!(count, expected, "at omega^2 = {w}");
    }
}

#[test]
fn eliminated_polynomial_divides_by_linear_factor() {
    let sextic = IntPolynomial::from_ints(&[4902, -6588, 2328, 40, -84, 6, 1]);
    let linear = IntPolynomial::from_ints(&[1, 2]);
    let full = sextic.mul(&linear);
    assert_eq!(full.degree(), 7);
    let (quotient, remainder) = full.div_rem(&linear);
    assert!(remainder.is_zero());
    assert_eq!(quotient, sextic);
}

use dashu_int::IBig;
use dashu_ratio::RBig;
use proptest::prelude::*;

use topvertex::localflop::{check_ck_product_inversion, check_tau_sum_transform};
use topvertex::partitions::{c_table, enumerate, kappa, partitions_of, Partition};
use topvertex::qcore::{Laurent, QRational};
use topvertex::schur::{schur_principal, skew_schur_rational, Alphabet};

/// Ratios of small Laurent polynomials, with cyclotomic and non-cyclotomic
/// denominators.
fn arb_qrational() -> impl Strategy<Value = QRational> {
    let poly = (-3i64..3, prop::collection::vec(-3i64..=3, 1..5));
    let den = prop_oneof![
        (1i64..4).prop_map(|k| {
            let mut c = vec![0; 2 * k as usize + 1];
            c[0] = 1;
            c[2 * k as usize] = -1;
            Laurent::from_small(0, &c)
        }),
        (1i64..3).prop_map(|k| Laurent::from_small(0, &[2, 0, -(k as i64)])),
        Just(Laurent::from_small(1, &[1])),
    ];
    (poly, den).prop_map(|((v, c), d)| {
        QRational::from_fraction(Laurent::from_small(v, &c), d).expect("nonzero denominator")
    })
}

fn arb_partition(max: u32) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(|n| {
        let ps = partitions_of(n);
        (0..ps.len()).prop_map(move |i| ps[i].clone())
    })
}

fn arb_point() -> impl Strategy<Value = RBig> {
    (2i64..40, 1i64..7, any::<bool>())
        .prop_map(|(a, b, s)| RBig::from_parts_signed(IBig::from(if s { a } else { -a }), IBig::from(b)))
        .prop_filter("away from ±1", |t| *t != RBig::ONE && *t != -RBig::ONE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_then_quotient_is_identity(f in arb_qrational(), g in arb_qrational()) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!(&(&f * &g) / &g, f);
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in arb_qrational(), g in arb_qrational(), t in arb_point()) {
        if let (Some(a), Some(b)) = (f.eval(&t), g.eval(&t)) {
            prop_assert_eq!((&f * &g).eval(&t).unwrap(), &a * &b);
            prop_assert_eq!((&f + &g).eval(&t).unwrap(), &a + &b);
        }
    }

    #[test]
    fn kappa_is_odd_under_conjugation(mu in arb_partition(8)) {
        prop_assert_eq!(kappa(&mu.conjugate()), -kappa(&mu));
        prop_assert_eq!(kappa(&mu) % 2, 0);
    }

    #[test]
    fn ck_sum_rules_and_conjugation(mu in arb_partition(5), nu in arb_partition(5)) {
        let c = c_table(&mu, &nu).unwrap();
        prop_assert_eq!(c.total(), (mu.size() + nu.size()) as u64);
        prop_assert_eq!(2 * c.first_moment(), kappa(&mu) + kappa(&nu));
        let ct = c_table(&mu.conjugate(), &nu.conjugate()).unwrap();
        for (k, v) in c.iter() {
            prop_assert_eq!(ct.get(-k), v);
        }
        prop_assert_eq!(ct.total(), c.total());
    }

    #[test]
    fn skew_schur_vanishes_off_containment(lam in arb_partition(5), mu in arb_partition(5), nu in arb_partition(2)) {
        prop_assume!(!lam.contains(&mu));
        prop_assert!(schur_principal(&lam, &mu, &nu, false).is_zero());
        prop_assert!(skew_schur_rational(&lam, &mu, &Alphabet::principal(&nu).scaled(1, vec![])).is_zero());
    }
}

#[test]
fn tau_sum_transform_for_small_boundaries() {
    let ps = enumerate(2);
    for a in &ps {
        for b in &ps {
            for c in &ps {
                for d in &ps {
                    let l = [a.clone(), b.clone(), c.clone(), d.clone()];
                    assert_eq!(check_tau_sum_transform(&l), None, "{l:?}");
                }
            }
        }
    }
}

#[test]
fn ck_product_inversion() {
    let ps = enumerate(4);
    for a in &ps {
        for b in &ps {
            assert_eq!(check_ck_product_inversion(a, b).unwrap(), None, "({a}, {b})");
        }
    }
}

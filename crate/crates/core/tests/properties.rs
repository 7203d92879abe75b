mod common;

use borromean::state::AmplitudeRecord;
use borromean::*;
use common::*;
use num_complex::Complex64 as C;
use proptest::prelude::*;

fn free_coin() -> impl Strategy<Value = FreeCoin<f64>> {
    prop_oneof![
        Just(FreeCoin::Identity),
        Just(FreeCoin::Hadamard),
        (0.0..3.2f64, -3.2..3.2f64, -3.2..3.2f64).prop_map(|(theta, xi, zeta)| FreeCoin::Parametrized {
            theta,
            xi,
            zeta
        }),
    ]
}

/// Random normalized state with walkers drawn from a narrow window of sites
/// so that co-located groups are common.
fn state() -> impl Strategy<Value = PureState<f64>> {
    (1usize..=4, 2usize..=10, 0.01..6.27f64, free_coin()).prop_flat_map(|(n, d, phi, coin)| {
        let window = d.min(3) as i64;
        let term = (
            proptest::collection::vec(0..window, n),
            proptest::collection::vec(any::<bool>(), n),
            -1.0..1.0f64,
            -1.0..1.0f64,
        );
        (
            Just((n, d, phi, coin)),
            0..d as i64,
            proptest::collection::vec(term, 1..8),
        )
            .prop_map(|((n, d, phi, coin), offset, terms)| {
                let cfg = LatticeConfig::new(n, d, phi).unwrap().with_free_coin(coin);
                let entries = terms.into_iter().map(|(pos, coins, re, im)| {
                    let pos: Vec<i64> = pos.iter().map(|x| x + offset).collect();
                    let coins: Vec<Coin> = coins
                        .iter()
                        .map(|&l| if l { Coin::Left } else { Coin::Right })
                        .collect();
                    (BasisLabel::new(&cfg, &pos, &coins).unwrap(), C::new(re, im))
                });
                let s = PureState::from_amplitudes(cfg, entries).unwrap();
                if s.is_empty() {
                    PureState::basis(cfg, &vec![0; n], &vec![Coin::Right; n]).unwrap()
                } else {
                    s.normalized()
                }
            })
    })
}

fn dist(a: &PureState<f64>, b: &PureState<f64>) -> f64 {
    a.add_scaled(C::new(-1.0, 0.0), b).unwrap().norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn step_is_unitary(s in state()) {
        let op = StepOperator::unitary(s.config());
        prop_assert!((op.apply(&s).norm_sqr() - s.norm_sqr()).abs() < 1e-12);
        prop_assert!((apply_shift(&s).norm_sqr() - s.norm_sqr()).abs() < 1e-12);
        prop_assert!((apply_interaction(&s).norm_sqr() - s.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn projected_step_contracts(s in state()) {
        prop_assert!(projected_step(&s).norm() <= s.norm() + 1e-12);
        prop_assert!(project_bound(&s).norm() <= s.norm() + 1e-12);
    }

    #[test]
    fn step_commutes_with_translation(s in state(), shift in -5isize..5) {
        let op = StepOperator::unitary(s.config());
        let a = op.apply(&s.translated(shift));
        let b = op.apply(&s).translated(shift);
        prop_assert!(dist(&a, &b) < 1e-12);
    }

    #[test]
    fn inner_product_is_sesquilinear(a in state(), re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let lam = C::new(re, im);
        let b = step(&a);
        let lhs = a.inner_product(&b.scaled(lam)).unwrap();
        let rhs = a.inner_product(&b).unwrap() * lam;
        prop_assert!((lhs - rhs).norm() < 1e-12);
        let swapped = b.inner_product(&a).unwrap().conj();
        prop_assert!((a.inner_product(&b).unwrap() - swapped).norm() < 1e-14);
    }

    #[test]
    fn records_roundtrip(s in state()) {
        let json = serde_json::to_string(&s.to_records()).unwrap();
        let back: Vec<AmplitudeRecord> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(PureState::from_records(*s.config(), &back).unwrap(), s);
    }
}

#[test]
fn pruning_keeps_norm_over_long_runs() {
    use borromean::lattice::FreeCoin;
    // single Hadamard walker, 10^4 steps on 100 sites
    let cfg = LatticeConfig::<f64>::new(1, 100, 1.0)
        .unwrap()
        .with_free_coin(FreeCoin::Hadamard);
    let op = StepOperator::unitary(&cfg);
    let start = PureState::basis(cfg, &[0], &[Coin::Right]).unwrap();
    let mut pruned = start.clone().with_prune_epsilon(1e-14);
    let mut exact = start.with_prune_epsilon(0.0);
    for _ in 0..10_000 {
        pruned = op.apply(&pruned);
        exact = op.apply(&exact);
    }
    assert!((pruned.norm_sqr() - exact.norm_sqr()).abs() < 1e-12);
    // rounding alone drifts slowly
    assert!((exact.norm_sqr() - 1.0).abs() < 1e-11);

    // interacting pair, compared against an unpruned trajectory
    let cfg = LatticeConfig::new(2, 20, TWO_PI_3)
        .unwrap()
        .with_free_coin(FreeCoin::Hadamard);
    let op = StepOperator::unitary(&cfg);
    let start = PureState::basis(cfg, &[0, 1], &[Coin::Right, Coin::Left]).unwrap();
    let mut a = start.clone().with_prune_epsilon(1e-14);
    let mut b = start.with_prune_epsilon(0.0);
    for _ in 0..300 {
        a = op.apply(&a);
        b = op.apply(&b);
    }
    assert!((a.norm_sqr() - b.norm_sqr()).abs() < 1e-12);
}

mod common;

use common::{rng, Op};
use energy_lab::energy::{
    additive_energy, incidence_count, multiplicative_energy, t_energy, weighted_energy,
    weighted_pair_energy, weighted_t_energy, EnergyOp,
};
use energy_lab::setcore::{rep_function, signed_sumset, sumset, IntSet, PairOp};
use energy_lab::Limits;

#[test]
fn pair_energies_match_enumeration() {
    let mut r = rng(11);
    for _ in 0..100 {
        let a = common::random_set(&mut r, 12, -25, 25);
        let b = common::random_set(&mut r, 12, -25, 25);
        assert_eq!(
            additive_energy(&a, &b).unwrap().value,
            common::pair_energy(&a, &b, Op::Add)
        );
        let m = multiplicative_energy(&a, &b).unwrap();
        assert_eq!(m.value, common::pair_energy(&a, &b, Op::Mul));
        assert_eq!(m.zero_in_input, a.contains(0) || b.contains(0));
    }
}

#[test]
fn higher_energies_match_enumeration() {
    let mut r = rng(12);
    for i in 0..60 {
        let a = common::random_set(&mut r, 8, -9, 9);
        let k = 1 + i % 3;
        assert_eq!(
            t_energy(&a, k, EnergyOp::Sum).unwrap().value,
            common::t_energy(&a, k, Op::Add)
        );
        assert_eq!(
            t_energy(&a, k, EnergyOp::Product).unwrap().value,
            common::t_energy(&a, k, Op::Mul)
        );
    }
}

#[test]
fn weighted_energies_match_enumeration() {
    let mut r = rng(13);
    for _ in 0..60 {
        let f: Vec<_> = (0..4)
            .map(|_| common::random_int_weight(&mut r, 10, -15, 15))
            .collect();
        assert_eq!(
            weighted_energy(&f[0], &f[1], &f[2], &f[3]).unwrap(),
            common::weighted_energy([&f[0], &f[1], &f[2], &f[3]])
        );
        // With indicators the weighted forms reduce to set energies.
        let a = f[0].support();
        let b = f[1].support();
        let e = common::pair_energy(&a, &b, Op::Add) as f64;
        assert_eq!(weighted_pair_energy(&a, &b, EnergyOp::Sum).unwrap(), e);
        assert_eq!(
            weighted_t_energy(&a, 2, EnergyOp::Product).unwrap(),
            common::t_energy(&a, 2, Op::Mul) as f64
        );
    }
}

#[test]
fn incidences_match_enumeration() {
    let mut r = rng(14);
    for _ in 0..100 {
        let f = common::random_set(&mut r, 12, -20, 20);
        let b = common::random_set(&mut r, 12, -20, 20);
        let c = common::random_set(&mut r, 12, -40, 40);
        assert_eq!(
            incidence_count(&f, &b, &c).unwrap(),
            common::incidences(&f, &b, &c)
        );
    }
}

#[test]
fn set_arithmetic_matches_enumeration() {
    let mut r = rng(15);
    let limits = Limits::default();
    for _ in 0..100 {
        let a = common::random_set(&mut r, 12, -30, 30);
        let b = common::random_set(&mut r, 12, -30, 30);
        assert_eq!(sumset(&a, &b).unwrap().len(), common::sumset_size(&a, &b));
        let rep = rep_function(&a, &b, PairOp::Sum).unwrap();
        assert_eq!(rep.mass(), (a.len() * b.len()) as u128);
        assert_eq!(rep.sum_of_squares(), common::pair_energy(&a, &b, Op::Add));
        for (n, m) in [(2, 0), (1, 1), (2, 1), (0, 3)] {
            assert_eq!(
                signed_sumset(&a, n, m, &limits).unwrap().len(),
                common::signed_sumset_size(&a, n, m)
            );
        }
    }
    let empty = IntSet::empty();
    assert_eq!(additive_energy(&empty, &empty).unwrap().value, 0);
}

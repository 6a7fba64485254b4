use equivar::abgrp::Z;
use equivar::groups::dihedral_projection;
use equivar::hr::{burnside_quotient, hr0, hr_homology, phi_compatibility, DiscreteEsigmaRing, HrComplex, RingWithInvolution};
use equivar::mackey::mackey_iso;
use equivar::witt::WittTower;

const BUDGET: u128 = 1 << 25;

fn rings() -> Vec<DiscreteEsigmaRing> {
    vec![DiscreteEsigmaRing::constant_z(), DiscreteEsigmaRing::zmod(2), DiscreteEsigmaRing::zmod(3), DiscreteEsigmaRing::burnside(), DiscreteEsigmaRing::zero()]
}

#[test]
fn ring_structures() {
    for r in rings() {
        r.check_structure().unwrap();
    }
    for name in ["constZ", "Z/4", "burnside", "zero"] {
        assert_eq!(DiscreteEsigmaRing::parse(name).unwrap().name, name);
    }
    assert!(DiscreteEsigmaRing::parse("Q").is_err());
}

#[test]
fn simplicial_identities_and_d_squared() {
    for r in rings() {
        for (m, top) in [(1, 3), (3, 2), (5, 1)] {
            let c = HrComplex::new(&r, m, top, BUDGET).unwrap();
            c.check_simplicial().unwrap();
            c.check_d_squared().unwrap();
            for b in &c.terms {
                b.check_axioms().unwrap();
            }
        }
    }
}

#[test]
fn hr0_of_constant_z_is_the_burnside_quotient() {
    let z = DiscreteEsigmaRing::constant_z();
    for m in [1, 3, 5, 9, 15] {
        let h = hr0(&z, m, BUDGET).unwrap();
        let q = burnside_quotient(m);
        let seed = vec![h.gens.iter().map(|(l, _)| q.unit(*l)).collect()];
        let f = mackey_iso(&h, &q, &seed).unwrap();
        assert!(f.is_iso(&h, &q), "m={m}");
        let g = &h.group;
        // The underlying level is HH_0(Z) = Z; mu_m sees the Burnside ring of mu_m.
        assert_eq!(h.value(g.trivial()).invariant_factors(), vec![Z::from(0)]);
        let divisors = (1..=m).filter(|d| m % d == 0).count();
        assert_eq!(h.value(g.mu(m)).rank(), divisors);
    }
}

#[test]
fn hr0_of_finite_rings() {
    for n in [2u32, 3, 4] {
        let h = hr0(&DiscreteEsigmaRing::zmod(n), 3, BUDGET).unwrap();
        assert_eq!(h.value(h.group.trivial()).invariant_factors(), vec![Z::from(n)]);
    }
    assert!(hr0(&DiscreteEsigmaRing::zero(), 3, BUDGET).unwrap().lewis().is_zero());
}

#[test]
fn higher_homology_of_constant_z_vanishes() {
    let z = DiscreteEsigmaRing::constant_z();
    for (m, n) in [(1, 1), (1, 2), (3, 1)] {
        assert!(hr_homology(&z, m, n, BUDGET).unwrap().is_zero(), "m={m} n={n}");
    }
}

#[test]
fn geometric_fixed_points_of_the_complex() {
    let z = DiscreteEsigmaRing::constant_z();
    let c = phi_compatibility(&z, 3, 3, 2, BUDGET).unwrap();
    assert_eq!(c.degrees.len(), 3);
    let h9 = hr0(&z, 9, BUDGET).unwrap();
    let phi = h9.geometric_fixed_points(&dihedral_projection(9, 3));
    let h3 = hr0(&z, 3, BUDGET).unwrap();
    let seed = vec![phi.gens.iter().map(|(l, _)| h3.unit(*l)).collect()];
    assert!(mackey_iso(&phi, &h3, &seed).unwrap().is_iso(&phi, &h3));
}

#[test]
fn involutive_rings() {
    for r in [RingWithInvolution::integers(), RingWithInvolution::zmod(6), RingWithInvolution::gaussian()] {
        r.check().unwrap();
    }
    assert!(RingWithInvolution::gaussian().to_esigma().is_err());
    let z = RingWithInvolution::integers().to_esigma().unwrap();
    assert!(z.mackey.value(1).same_iso_type(DiscreteEsigmaRing::constant_z().mackey.value(1)));
}

#[test]
fn witt_levels_are_free() {
    let z = DiscreteEsigmaRing::constant_z();
    for (p, levels) in [(3, 3), (5, 2)] {
        let t = WittTower::new(&z, p, levels, BUDGET).unwrap();
        for (n, ok) in t.levelwise_free() {
            assert!(ok, "p={p}: W_{n}");
        }
        for (j, w) in t.w.iter().enumerate() {
            // Both levels agree and restriction to the underlying level is injective.
            let (e, d2) = (w.group.trivial(), w.group.whole());
            assert!(w.value(e).same_iso_type(w.value(d2)));
            assert!(w.res_hom(d2, e).is_injective(), "p={p}: W_{}", j + 1);
        }
        for j in 1..t.levels() {
            assert!(t.fv_is_p(j));
        }
        if levels > 2 {
            assert!(t.rf_commute(2));
        }
    }
}

#[test]
fn witt_coinvariants_for_p3() {
    let t = WittTower::new(&DiscreteEsigmaRing::constant_z(), 3, 3, BUDGET).unwrap();
    let c1: Vec<Vec<Z>> = t.coinvariants(1).iter().map(|a| a.invariant_factors()).collect();
    let c2: Vec<Vec<Z>> = t.coinvariants(2).iter().map(|a| a.invariant_factors()).collect();
    assert_eq!(c1, vec![vec![Z::from(3)]; 2]);
    assert_eq!(c2, vec![vec![Z::from(9)]; 2]);
}

#[test]
fn burnside_ring_has_no_higher_homology() {
    let a = DiscreteEsigmaRing::burnside();
    for m in [1, 3, 5] {
        let h = hr0(&a, m, BUDGET).unwrap();
        let b = equivar::mackey::Mackey::burnside(&h.group);
        let seed = vec![h.gens.iter().map(|(l, _)| b.unit(*l)).collect()];
        assert!(mackey_iso(&h, &b, &seed).unwrap().is_iso(&h, &b), "m={m}");
        assert!(hr_homology(&a, m, 1, BUDGET).unwrap().is_zero(), "m={m}");
    }
}

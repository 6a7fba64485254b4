use std::sync::Arc;

use equivar::boxnorm::{box_mackey, norm_mackey, zbar_d2};
use equivar::groups::{dihedral_inclusion, dihedral_projection, FiniteGroup};
use equivar::gsets::GSet;
use equivar::hr::{burnside_quotient, burnside_quotient_green};
use equivar::mackey::{mackey_iso, Mackey, Presentation, Relation};
use equivar::suite::norm_of_representable;
use proptest::prelude::*;

fn unit_seed(src: &Mackey, dst: &Mackey) -> Vec<Vec<Vec<i64>>> {
    vec![src.gens.iter().map(|(l, _)| dst.unit(*l)).collect()]
}

fn certified(a: &Mackey, b: &Mackey) -> bool {
    match mackey_iso(a, b, &unit_seed(a, b)) {
        Ok(f) => f.is_iso(a, b) && f.check_natural(a, b).is_ok(),
        Err(_) => false,
    }
}

fn small_group(k: u8, n: u32) -> Arc<FiniteGroup> {
    Arc::new(match k {
        0 => FiniteGroup::dihedral(n),
        1 => FiniteGroup::cyclic(n + 1),
        _ => FiniteGroup::symmetric(3),
    })
}

/// Rank of the representable at K: one generator per K-orbit of T and class of
/// subgroups of its stabilizer.
fn representable_rank(g: &Arc<FiniteGroup>, t: &GSet, k: usize) -> usize {
    let emb = g.subgroup_as_group(k);
    let kg = &emb.src;
    t.restrict(&emb).orbits().iter().map(|o| kg.local_class_reps(o.stabilizer).len()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn representables(kind in 0u8..3, n in 1u32..=6, a in 0usize..64, b in 0usize..64) {
        let g = small_group(kind, n);
        let s = g.num_subgroups();
        let t = GSet::cosets(&g, a % s).disjoint_union(&GSet::cosets(&g, b % s));
        let m = Mackey::representable(&t);
        m.check_axioms().unwrap();
        for k in 0..s {
            let v = m.value(k);
            prop_assert!(v.is_free());
            prop_assert_eq!(v.rank(), representable_rank(&g, &t, k));
        }
    }

    #[test]
    fn box_of_cyclic_functors_is_symmetric(n in 1u32..=5, c1 in 1i64..4, c2 in 1i64..4) {
        let g = Arc::new(FiniteGroup::dihedral(n));
        let top = g.whole();
        let d2 = g.dih_sub(1);
        let a = Presentation::burnside_quotient(&g, top, vec![(top, 0, c1)], vec![(d2, 0, 1)]);
        let b = Presentation::burnside_quotient(&g, top, vec![(top, 0, c2)], vec![(g.trivial(), 0, 1)]);
        let ab = box_mackey(&a, &b);
        let ba = box_mackey(&b, &a);
        ab.check_axioms().unwrap();
        prop_assert!(certified(&ab, &ba));
        let ab_c = box_mackey(&a.box_product(&b), &a);
        let a_bc = box_mackey(&a, &b.box_product(&a));
        prop_assert!(certified(&ab_c, &a_bc));
    }
}

#[test]
fn box_of_representables() {
    let g = Arc::new(FiniteGroup::dihedral(3));
    let s = GSet::cosets(&g, g.dih_sub(1));
    let t = GSet::cosets(&g, g.mu(3));
    let b = box_mackey(&Presentation::free(s.clone()), &Presentation::free(t.clone()));
    let r = Mackey::representable(&s.product(&t));
    for h in 0..g.num_subgroups() {
        assert!(b.value(h).same_iso_type(r.value(h)));
    }
}

#[test]
fn realized_diagrams_satisfy_the_axioms() {
    for m in [1, 2, 3, 5, 6, 9] {
        let g = Arc::new(FiniteGroup::dihedral(m));
        Mackey::burnside(&g).check_axioms().unwrap();
        norm_mackey(&zbar_d2(), &dihedral_inclusion(1, m), 1 << 22).unwrap().check_axioms().unwrap();
    }
    for m in [3, 5, 9] {
        burnside_quotient(m).check_axioms().unwrap();
        burnside_quotient_green(m).unwrap().check_axioms().unwrap();
    }
}

#[test]
fn congruence_quotient_is_a_green_ideal() {
    for m in [3, 5, 9] {
        let q = burnside_quotient_green(m).unwrap();
        for h in 0..q.group.num_subgroups() {
            for v in q.relations(h).basis() {
                let v: Vec<i64> = v.iter().map(|c| i64::try_from(c).unwrap()).collect();
                for i in 0..q.dim(h) {
                    let y = q.basis_vec(h, i);
                    assert_zero(&q, h, &q.cover.mul(h, &v, &y));
                }
            }
        }
        assert!(certified(&burnside_quotient(m), &q));
    }
}

fn assert_zero(q: &Mackey, h: usize, v: &[i64]) {
    assert!(q.is_zero(h, v), "product leaves the ideal at {}", q.group.sub_name(h));
}

#[test]
fn fixed_points_keep_the_top_value() {
    for (m, d) in [(3, 3), (9, 3), (15, 5), (15, 15)] {
        for x in [burnside_quotient(m), Mackey::burnside(&Arc::new(FiniteGroup::dihedral(m)))] {
            let proj = dihedral_projection(m, d);
            let f = x.fixed_points(&proj);
            f.check_axioms().unwrap();
            assert!(f.value(f.group.whole()).same_iso_type(x.value(x.group.whole())));
            x.geometric_fixed_points(&proj).check_axioms().unwrap();
        }
    }
}

#[test]
fn norms_of_representables() {
    for g in [Arc::new(FiniteGroup::dihedral(3)), Arc::new(FiniteGroup::dihedral(4)), Arc::new(FiniteGroup::cyclic(6)), Arc::new(FiniteGroup::symmetric(3))] {
        for h in g.class_reps() {
            if h == g.whole() || g.index(h, g.whole()) > 7 {
                continue;
            }
            let hg = g.subgroup_as_group(h).src;
            for t in [GSet::point(&hg), GSet::trivial(&hg, 2), GSet::trivial(&hg, 3), GSet::cosets(&hg, hg.trivial())] {
                if (t.len() as u32).pow(g.index(h, g.whole()) as u32) > 81 {
                    continue;
                }
                norm_of_representable(&g, h, &t).unwrap();
            }
        }
    }
}

#[test]
fn norm_does_not_depend_on_the_presentation() {
    // The constant functor again, now with two generators identified.
    let d2 = Arc::new(FiniteGroup::dihedral(1));
    let rels = vec![
        Relation { level: 1, lhs: vec![(1, 0, 1)], rhs: vec![(1, 1, 1)] },
        Relation { level: 1, lhs: vec![(1, 0, 2)], rhs: vec![(0, 0, 1)] },
    ];
    let other = Presentation::new(GSet::trivial(&d2, 2), rels).unwrap();
    for m in [3, 5] {
        let emb = dihedral_inclusion(1, m);
        let a = norm_mackey(&zbar_d2(), &emb, 1 << 22).unwrap();
        let b = norm_mackey(&other, &emb, 1 << 22).unwrap();
        assert!(certified(&b, &a), "m={m}");
        for h in 0..a.group.num_subgroups() {
            assert!(a.value(h).same_iso_type(b.value(h)));
        }
    }
}

#[test]
fn restriction_of_the_norm() {
    for (m, k) in [(9, 3), (15, 5), (15, 3)] {
        let n = norm_mackey(&zbar_d2(), &dihedral_inclusion(1, m), 1 << 22).unwrap();
        let small = norm_mackey(&zbar_d2(), &dihedral_inclusion(1, k), 1 << 22).unwrap();
        assert!(certified(&n.restrict(&dihedral_inclusion(k, m)), &small), "m={m} k={k}");
        let g = &n.group;
        let mu = g.subgroup_as_group(g.mu(k));
        let r = n.restrict(&mu);
        let a = Mackey::burnside(&mu.src);
        assert!(certified(&r, &a));
        let top = r.value(r.group.whole());
        let count = (1..=k).filter(|d| k % d == 0).count();
        assert_eq!((top.is_free(), top.rank()), (true, count));
    }
}

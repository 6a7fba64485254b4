use std::sync::Arc;

use equivar::burnside::{c_p_d_p, BurnsideSystem};
use equivar::abgrp::{FgAbelianGroup, IntMatrix};
use equivar::groups::{dihedral_inclusion, FiniteGroup, GroupHom, SubId};
use equivar::gsets::{coinduce, exponential_diagram, table_of_marks, GMap, GSet};
use proptest::prelude::*;

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

fn group(kind: u8, n: u32) -> Arc<FiniteGroup> {
    Arc::new(match kind {
        0 => FiniteGroup::dihedral(n),
        1 => FiniteGroup::cyclic(2 * n),
        _ => FiniteGroup::symmetric(if n.is_multiple_of(2) { 3 } else { 4 }),
    })
}

fn groups() -> impl Strategy<Value = Arc<FiniteGroup>> {
    (0u8..3, 1u32..=8).prop_map(|(k, n)| group(k, n))
}

#[test]
fn subgroup_counts() {
    for m in 1..=15u32 {
        let d = divisors(m);
        let want = d.len() + d.iter().sum::<u32>() as usize;
        assert_eq!(FiniteGroup::dihedral(m).num_subgroups(), want, "D{}", 2 * m);
    }
    for n in 1..=20u32 {
        assert_eq!(FiniteGroup::cyclic(n).num_subgroups(), divisors(n).len());
    }
    let s4 = FiniteGroup::symmetric(4);
    assert_eq!((s4.num_subgroups(), s4.class_reps().len()), (30, 11));
    let a4 = FiniteGroup::alternating(4);
    assert_eq!((a4.num_subgroups(), a4.class_reps().len()), (10, 5));
}

#[test]
fn odd_dihedral_subgroups_are_mu_or_dihedral() {
    for m in (1..=15u32).step_by(2) {
        let g = FiniteGroup::dihedral(m);
        let mut named = vec![];
        for k in (1..=m).filter(|k| m % k == 0) {
            named.push(g.mu(k));
            named.push(g.dih_sub(k));
        }
        for h in 0..g.num_subgroups() {
            let hits = named.iter().filter(|&&n| g.elements().any(|a| g.conj_sub(a, h) == n)).count();
            assert_eq!(hits, 1, "D{}: {}", 2 * m, g.sub_name(h));
        }
        assert_eq!(g.class_reps().len(), named.len());
    }
}

#[test]
fn classes_are_conjugation_stable() {
    for g in [FiniteGroup::dihedral(6), FiniteGroup::symmetric(4), FiniteGroup::alternating(4), FiniteGroup::cyclic(12)] {
        for h in 0..g.num_subgroups() {
            for a in g.elements() {
                assert_eq!(g.class_of(g.conj_sub(a, h)), g.class_of(h));
            }
        }
    }
}

#[test]
fn table_of_marks_is_invertible() {
    for g in [FiniteGroup::dihedral(9), FiniteGroup::dihedral(12), FiniteGroup::symmetric(4), FiniteGroup::cyclic(30)] {
        let t = table_of_marks(&g);
        let n = t.len();
        let flat: Vec<i64> = t.concat().iter().map(|&x| x as i64).collect();
        let a = FgAbelianGroup::new(n, IntMatrix::from_i64(n, n, &flat));
        assert_eq!(a.rank(), 0, "{}", g.name);
    }
}

#[test]
fn coinduction_of_trivial_sets_has_the_expected_size() {
    for g in [Arc::new(FiniteGroup::dihedral(6)), Arc::new(FiniteGroup::cyclic(12)), Arc::new(FiniteGroup::symmetric(4))] {
        for h in g.class_reps() {
            let index = g.index(h, g.whole());
            if index > 12 {
                continue;
            }
            let emb = g.subgroup_as_group(h);
            for n in 1..=if index > 8 { 2 } else { 3 } {
                let x = coinduce(&emb, &GSet::trivial(&emb.src, n), 1 << 22).unwrap().gset;
                assert_eq!(x.len(), n.pow(index as u32));
            }
        }
    }
}

/// Map^H(G, T) against Map^{H/N}(G/N, T) pulled back along G -> G/N.
fn coinduce_through_quotient(g: &Arc<FiniteGroup>, n: SubId, h: SubId, k: usize) -> bool {
    let q = g.quotient(n).unwrap();
    let qg = q.dst.clone();
    let qemb = qg.subgroup_as_group(q.image_sub(h));
    let hq = qemb.src.clone();
    let t_small = GSet::cosets(&hq, k % hq.num_subgroups()).disjoint_union(&GSet::point(&hq));
    let hemb = g.subgroup_as_group(h);
    let back = qemb.partial_inverse();
    let to_hq: Vec<_> = hemb.src.elements().map(|x| back[q.apply(hemb.apply(x)) as usize]).collect();
    let t = t_small.restrict(&GroupHom::new(hemb.src.clone(), hq.clone(), to_hq).unwrap());
    let direct = coinduce(&hemb, &t, 1 << 22).unwrap().gset;
    let via = coinduce(&qemb, &t_small, 1 << 22).unwrap().gset.restrict(&q);
    direct.is_isomorphic(&via)
}

#[test]
fn dihedral_element_orders() {
    let g = FiniteGroup::dihedral(15);
    assert_eq!(g.order(), 30);
    assert_eq!(g.elt_order(g.dih(1, 0)), 15);
    assert!((0..15).all(|j| g.elt_order(g.dih(j, 1)) == 2));
    let d2 = FiniteGroup::dihedral(1);
    assert_eq!(d2.order(), 2);
}

#[test]
fn coinduced_orbit_types() {
    for p in [3u32, 5, 7, 11] {
        let emb = dihedral_inclusion(1, p);
        let g = emb.dst.clone();
        let x = coinduce(&emb, &GSet::trivial(&emb.src, 2), 1 << 22).unwrap().gset;
        assert_eq!(x.len(), 1 << p);
        let t = x.iso_type();
        let d2 = g.class_rep(g.dih_sub(1));
        assert_eq!(t.get(&g.whole()), Some(&2));
        assert_eq!(t.get(&d2).copied().unwrap_or(0), (1 << p.div_ceil(2)) - 2);
        let free = ((1usize << (p - 1)) - 1) / p as usize + 1 - (1 << ((p - 1) / 2));
        assert_eq!(t.get(&g.trivial()).copied().unwrap_or(0), free);
        let y = coinduce(&emb, &GSet::cosets(&emb.src, emb.src.trivial()), 1 << 22).unwrap().gset;
        let (c, d) = c_p_d_p(p).unwrap();
        let want = GSet::cosets(&g, g.mu(p)).disjoint_union(&GSet::cosets(&g, g.trivial()).multiple((c + d) as usize));
        assert!(y.is_isomorphic(&want), "p={p}: {}", y.describe());
    }
    assert_eq!(c_p_d_p(3).unwrap(), (1, 0));
    assert_eq!(c_p_d_p(5).unwrap(), (3, 0));
    assert_eq!(c_p_d_p(7).unwrap(), (7, 2));
}

/// |Map^H(G, T)^K| as a product over K\G/H of fixed points of T.
fn coinduced_mark(g: &FiniteGroup, h: SubId, t: &GSet, hg_pre: impl Fn(SubId) -> SubId, k: SubId) -> usize {
    g.double_cosets(k, h)
        .iter()
        .map(|&r| t.fixed_points(hg_pre(g.intersect(h, g.conj_sub(g.inv(r), k)))).len())
        .product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn double_cosets_partition(g in groups(), a in 0usize..64, b in 0usize..64) {
        let (k, h) = (a % g.num_subgroups(), b % g.num_subgroups());
        let total: usize = g
            .double_cosets(k, h)
            .iter()
            .map(|&r| g.sub_order(k) * g.sub_order(h) / g.sub_order(g.intersect(k, g.conj_sub(r, h))))
            .sum();
        prop_assert_eq!(total, g.order());
    }

    #[test]
    fn marks_count_fixed_points(g in groups()) {
        let reps = g.class_reps();
        let tom = table_of_marks(&g);
        for (i, &hi) in reps.iter().enumerate() {
            let x = GSet::cosets(&g, hi);
            prop_assert_eq!(x.len(), g.index(hi, g.whole()));
            for (j, &hj) in reps.iter().enumerate() {
                prop_assert_eq!(tom[i][j] as usize, x.fixed_points(hj).len());
            }
        }
    }

    #[test]
    fn coinduction_marks(g in groups(), a in 0usize..64, n in 1usize..=3) {
        let h = g.class_reps()[a % g.class_reps().len()];
        prop_assume!(g.index(h, g.whole()) <= 8);
        let emb = g.subgroup_as_group(h);
        let t = GSet::trivial(&emb.src, n).disjoint_union(&GSet::cosets(&emb.src, emb.src.trivial()));
        let x = coinduce(&emb, &t, 1 << 22).unwrap().gset;
        prop_assert_eq!(x.len() as u128, (t.len() as u128).pow(g.index(h, g.whole()) as u32));
        for k in g.class_reps() {
            prop_assert_eq!(x.fixed_points(k).len(), coinduced_mark(&g, h, &t, |s| emb.preimage_sub(s), k));
        }
    }

    #[test]
    fn dependent_product_is_coinduction(g in groups(), a in 0usize..64) {
        let h = g.class_reps()[a % g.class_reps().len()];
        prop_assume!(g.index(h, g.whole()) <= 6 && g.sub_order(h) <= 4);
        let down = GMap::projection(&g, h, g.whole()).unwrap();
        let over = GMap::projection(&g, g.trivial(), h).unwrap();
        let e = exponential_diagram(&down, &over, 1 << 22).unwrap();
        let emb = g.subgroup_as_group(h);
        let x = coinduce(&emb, &GSet::cosets(&emb.src, emb.src.trivial()), 1 << 22).unwrap().gset;
        prop_assert!(e.pi.is_isomorphic(&x));
        // The pullback is U x_S Pi.
        prop_assert_eq!(e.pullback.len(), down.source.len() * e.pi.len());
    }

    #[test]
    fn coinduction_factors_through_quotients(m in 2u32..=9, a in 0usize..16, b in 0usize..64, k in 0usize..16) {
        let g = Arc::new(FiniteGroup::dihedral(m));
        let divs: Vec<u32> = (2..=m).filter(|d| m % d == 0).collect();
        let n = g.mu(divs[a % divs.len()]);
        let above: Vec<SubId> = (0..g.num_subgroups()).filter(|&h| g.le(n, h)).collect();
        let h = above[b % above.len()];
        prop_assume!(g.index(h, g.whole()) <= 6);
        prop_assert!(coinduce_through_quotient(&g, n, h, k));
    }

    #[test]
    fn restriction_matches_gsets(g in groups(), a in 0usize..64, coeffs in proptest::collection::vec(0i128..3, 12)) {
        let sys = BurnsideSystem::new(&g);
        let top = sys.top();
        let h = a % g.num_subgroups();
        let x: Vec<i128> = (0..top.rank()).map(|i| coeffs[i % coeffs.len()]).collect();
        let mut orbits = vec![];
        for (i, &c) in x.iter().enumerate() {
            orbits.extend(std::iter::repeat_n(top.classes[i], c as usize));
        }
        let set = GSet::from_orbits(&g, &orbits);
        let emb = g.subgroup_as_group(h);
        let hsys = BurnsideSystem::new(&emb.src);
        let brute = hsys.class_of_gset(&set.restrict(&emb));
        let r = sys.res(g.whole(), h, &x);
        let mut mapped = vec![0; brute.len()];
        for (i, &c) in r.iter().enumerate() {
            mapped[hsys.top().class_of(emb.preimage_sub(sys.level(h).classes[i]))] += c;
        }
        prop_assert_eq!(mapped, brute);
        // tr of an induced set is the induced set.
        let y = GSet::induce(&set.restrict(&emb), &emb);
        prop_assert_eq!(sys.class_of_gset(&y), sys.tr(h, g.whole(), &r));
    }
}

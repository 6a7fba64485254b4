use std::sync::Arc;

use equivar::burnside::{badd, BurnsideSystem, SpanHom};
use equivar::gsets::{coinduce, GSet};
use equivar::groups::FiniteGroup;
use equivar::tambara::{verify_reciprocity, DihedralReciprocity, Reciprocity};
use proptest::prelude::*;

fn groups() -> impl Strategy<Value = Arc<FiniteGroup>> {
    (0u8..4, 1u32..=6).prop_map(|(k, n)| {
        Arc::new(match k {
            0 => FiniteGroup::dihedral(n),
            1 => FiniteGroup::cyclic(2 * n),
            2 => FiniteGroup::alternating(4),
            _ => FiniteGroup::symmetric(3),
        })
    })
}

fn elem(rank: usize, c: &[i128]) -> Vec<i128> {
    (0..rank).map(|i| c[i % c.len()]).collect()
}

fn small_set(g: &Arc<FiniteGroup>, a: usize, b: usize) -> GSet {
    let n = g.num_subgroups();
    GSet::cosets(g, a % n).disjoint_union(&GSet::cosets(g, b % n))
}

fn random_span(src: &GSet, dst: &GSet, picks: &[(usize, usize, usize, i64)]) -> SpanHom {
    let g = &src.group;
    let mut s = SpanHom::zero(src, dst);
    for &(k, x, y, c) in picks {
        let k = k % g.num_subgroups();
        let (xs, ys) = (src.fixed_points(k), dst.fixed_points(k));
        if xs.is_empty() || ys.is_empty() {
            continue;
        }
        s.add_term(k, xs[x % xs.len()], ys[y % ys.len()], c).unwrap();
    }
    s
}

fn same(a: &SpanHom, b: &SpanHom) -> bool {
    a.terms == b.terms
}

type Picks = Vec<(usize, usize, usize, i64)>;

fn picks() -> impl Strategy<Value = Picks> {
    proptest::collection::vec((0usize..32, 0usize..32, 0usize..32, -2i64..=2), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn span_composition_is_associative_and_unital(n in 1u32..=4, sets in proptest::collection::vec(0usize..32, 8), p1 in picks(), p2 in picks(), p3 in picks()) {
        let g = Arc::new(FiniteGroup::dihedral(n));
        let xs: Vec<GSet> = (0..4).map(|i| small_set(&g, sets[2 * i], sets[2 * i + 1])).collect();
        let f = random_span(&xs[0], &xs[1], &p1);
        let h = random_span(&xs[1], &xs[2], &p2);
        let k = random_span(&xs[2], &xs[3], &p3);
        let left = f.then(&h).unwrap().then(&k).unwrap();
        let right = f.then(&h.then(&k).unwrap()).unwrap();
        prop_assert!(same(&left, &right));
        prop_assert!(same(&SpanHom::identity(&xs[0]).then(&f).unwrap(), &f));
        prop_assert!(same(&f.then(&SpanHom::identity(&xs[1])).unwrap(), &f));
    }

    #[test]
    fn summands_are_orbits_of_functions(g in groups(), s in 0usize..64) {
        let h = g.class_reps()[s % g.class_reps().len()];
        prop_assume!(g.index(h, g.whole()) <= 8);
        let r = Reciprocity::new(&g, h, 1 << 22).unwrap();
        let emb = g.subgroup_as_group(h);
        let x = coinduce(&emb, &GSet::trivial(&emb.src, 2), 1 << 22).unwrap().gset;
        prop_assert_eq!(r.summands.len(), x.orbits().len());
    }

    #[test]
    fn products_agree_with_gset_products(g in groups(), a in proptest::collection::vec(0i128..3, 8), b in proptest::collection::vec(0i128..3, 8)) {
        let sys = BurnsideSystem::new(&g);
        let n = sys.top().rank();
        let (x, y) = (elem(n, &a), elem(n, &b));
        prop_assert_eq!(sys.top().mul(&x, &y), sys.mul_bruteforce(&x, &y).unwrap());
    }

    #[test]
    fn frobenius_reciprocity(g in groups(), s in 0usize..64, a in proptest::collection::vec(-3i128..4, 8), b in proptest::collection::vec(-3i128..4, 8)) {
        let sys = BurnsideSystem::new(&g);
        let top = g.whole();
        let h = s % g.num_subgroups();
        let x = elem(sys.top().rank(), &a);
        let y = elem(sys.level(h).rank(), &b);
        let lhs = sys.top().mul(&x, &sys.tr(h, top, &y));
        let rhs = sys.tr(h, top, &sys.level(h).mul(&sys.res(top, h, &x), &y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn res_is_a_ring_map(g in groups(), s in 0usize..64, a in proptest::collection::vec(-3i128..4, 8), b in proptest::collection::vec(-3i128..4, 8)) {
        let sys = BurnsideSystem::new(&g);
        let top = g.whole();
        let h = s % g.num_subgroups();
        let (x, y) = (elem(sys.top().rank(), &a), elem(sys.top().rank(), &b));
        let lhs = sys.res(top, h, &sys.top().mul(&x, &y));
        let rhs = sys.level(h).mul(&sys.res(top, h, &x), &sys.res(top, h, &y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn norms_by_marks_and_by_coinduction(g in groups(), s in 0usize..64, a in proptest::collection::vec(0i128..3, 8)) {
        let sys = BurnsideSystem::new(&g);
        let h = g.class_reps()[s % g.class_reps().len()];
        prop_assume!(g.index(h, g.whole()) <= 6);
        let x = elem(sys.level(h).rank(), &a);
        prop_assume!(x.iter().sum::<i128>() <= 3);
        let marks = sys.norm_marks(h, g.whole(), &x);
        prop_assert_eq!(marks, sys.norm_coinduction(h, g.whole(), &x, 1 << 22).unwrap());
    }

    #[test]
    fn norm_is_multiplicative(g in groups(), s in 0usize..64, a in proptest::collection::vec(-3i128..4, 8), b in proptest::collection::vec(-3i128..4, 8)) {
        let sys = BurnsideSystem::new(&g);
        let top = g.whole();
        let h = s % g.num_subgroups();
        let lh = sys.level(h);
        let (x, y) = (elem(lh.rank(), &a), elem(lh.rank(), &b));
        let lhs = sys.norm_marks(h, top, &lh.mul(&x, &y));
        let rhs = sys.top().mul(&sys.norm_marks(h, top, &x), &sys.norm_marks(h, top, &y));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(sys.norm_marks(h, top, &lh.one()), sys.top().one());
    }

    #[test]
    fn reciprocity_random_seeds(g in groups(), s in 0usize..64, seed in any::<u64>()) {
        let h = g.class_reps()[s % g.class_reps().len()];
        let r = verify_reciprocity(&g, h, 4, seed, 1 << 22).unwrap();
        prop_assert!(r.ok(), "{:?}", r.failure);
    }
}

#[test]
fn norm_of_sum_over_d6_by_hand() {
    let g = Arc::new(FiniteGroup::dihedral(3));
    let sys = BurnsideSystem::new(&g);
    let d2 = g.dih_sub(1);
    let one = sys.level(d2).one();
    // N(1 + 1) = N(2) is the class of Map^D2(D6, {a, b}) = 2 + 2[D6/D2].
    let two = badd(&one, &one);
    assert_eq!(sys.format(g.whole(), &sys.norm_marks(d2, g.whole(), &two)), "2 + 2[G/D2]");
    let r = Reciprocity::new(&g, d2, 1 << 20).unwrap();
    assert_eq!(r.summands.len(), 4);
}

#[test]
fn dihedral_formula_word_counts() {
    for (p, x, y) in [(3u32, 2usize, 0usize), (5, 6, 0), (7, 14, 2), (11, 62, 62)] {
        let d = DihedralReciprocity::new(p).unwrap();
        assert_eq!((d.x_words.len(), d.y_words.len()), (x, y), "p={p}");
    }
}

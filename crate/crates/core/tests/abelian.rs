use equivar::abgrp::{homology, kernel_basis, smith, AbHom, FgAbelianGroup, IntMatrix, Z};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn z(v: i64) -> Z {
    Z::from(v)
}

/// Laplace expansion, fine for the small sizes used here.
fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect()).collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] as i128 * det(&minor)
        })
        .sum()
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1..=rows, 1..=cols).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-6i64..=6, r * c)))
}

/// A random unimodular matrix and its inverse, as products of elementary moves.
fn unimodular(n: usize, moves: &[(usize, usize, i64)]) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    for &(i, j, c) in moves {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = IntMatrix::identity(n);
        e.set(i, j, z(c));
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(i, j, z(-c));
        u = e.mul(&u);
        inv = inv.mul(&e_inv);
    }
    (u, inv)
}

fn moves() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    proptest::collection::vec((0usize..8, 0usize..8, -3i64..=3), 0..8)
}

proptest! {
    #[test]
    fn invariants_survive_change_of_presentation((r, c, vals) in matrix(4, 4), m1 in moves(), m2 in moves()) {
        let a = IntMatrix::from_i64(r, c, &vals);
        let (p, _) = unimodular(r, &m1);
        let (q, _) = unimodular(c, &m2);
        let b = p.mul(&a).mul(&q);
        let ga = FgAbelianGroup::new(r, a);
        let gb = FgAbelianGroup::new(r, b);
        prop_assert_eq!(ga.invariant_factors(), gb.invariant_factors());
        prop_assert!(ga.same_iso_type(&gb));
    }

    #[test]
    fn homology_survives_change_of_basis(x in proptest::collection::vec(-4i64..=4, 6), y in proptest::collection::vec(-4i64..=4, 6), m in moves()) {
        let d_out = IntMatrix::from_i64(2, 3, &x);
        let k = kernel_basis(&d_out);
        let d_in = k.mul(&IntMatrix::from_i64(k.cols, 2, &y[..2 * k.cols]));
        let h = |din: &IntMatrix, dout: &IntMatrix| {
            let a = AbHom::new(FgAbelianGroup::free(2), FgAbelianGroup::free(3), din.clone()).unwrap();
            let b = AbHom::new(FgAbelianGroup::free(3), FgAbelianGroup::free(2), dout.clone()).unwrap();
            homology(&a, &b).unwrap().group
        };
        let (p, p_inv) = unimodular(3, &m);
        prop_assert!(p.mul(&p_inv).sub(&IntMatrix::identity(3)).is_zero());
        let before = h(&d_in, &d_out);
        let after = h(&p.mul(&d_in), &d_out.mul(&p_inv));
        prop_assert_eq!(before.invariant_factors(), after.invariant_factors());
    }

    #[test]
    fn smith_form_is_a_factorization((r, c, vals) in matrix(4, 5)) {
        let a = IntMatrix::from_i64(r, c, &vals);
        let s = smith(&a);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..r {
            for j in 0..c {
                let want = if i == j && i < s.diag.len() { s.diag[i].clone() } else { Z::zero() };
                prop_assert_eq!(d.get(i, j), &want);
            }
        }
        prop_assert!(s.u.mul(&s.u_inv).sub(&IntMatrix::identity(r)).is_zero());
        for w in s.diag[..s.rank].windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.diag[..s.rank].iter().all(|x| x.is_positive()));
        prop_assert!(s.diag[s.rank..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn cokernel_order_is_the_determinant(n in 1usize..=4, vals in proptest::collection::vec(-5i64..=5, 16)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| vals[i * n..(i + 1) * n].to_vec()).collect();
        let flat: Vec<i64> = rows.concat();
        let d = det(&rows);
        let g = FgAbelianGroup::new(n, IntMatrix::from_i64(n, n, &flat));
        if d == 0 {
            prop_assert!(g.rank() > 0);
        } else {
            prop_assert_eq!(g.rank(), 0);
            let order: Z = g.torsion().iter().product();
            prop_assert_eq!(order, Z::from(d.abs()));
        }
    }

    #[test]
    fn kernel_basis_spans_the_kernel((r, c, vals) in matrix(4, 5)) {
        let a = IntMatrix::from_i64(r, c, &vals);
        let k = kernel_basis(&a);
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(k.cols, c - smith(&a).rank);
    }

    #[test]
    fn composite_chain_homology(x in proptest::collection::vec(-4i64..=4, 6), y in proptest::collection::vec(-4i64..=4, 6)) {
        // d_out d_in = 0 by building d_in from the kernel of d_out.
        let d_out = IntMatrix::from_i64(2, 3, &x);
        let k = kernel_basis(&d_out);
        let coeffs = IntMatrix::from_i64(k.cols, 2, &y[..2 * k.cols]);
        let d_in = k.mul(&coeffs);
        let a = AbHom::new(FgAbelianGroup::free(2), FgAbelianGroup::free(3), d_in.clone()).unwrap();
        let b = AbHom::new(FgAbelianGroup::free(3), FgAbelianGroup::free(2), d_out.clone()).unwrap();
        let h = homology(&a, &b).unwrap();
        // rank H = dim ker d_out - rank d_in
        prop_assert_eq!(h.group.rank(), k.cols - smith(&d_in).rank);
    }
}

#[test]
fn small_values() {
    let two = AbHom::new(FgAbelianGroup::free(1), FgAbelianGroup::free(1), IntMatrix::from_i64(1, 1, &[2])).unwrap();
    assert_eq!(two.cokernel().invariant_factors(), vec![z(2)]);
    let zero = AbHom::new(FgAbelianGroup::free(1), FgAbelianGroup::free(1), IntMatrix::from_i64(1, 1, &[0])).unwrap();
    assert!(zero.cokernel().same_iso_type(&FgAbelianGroup::free(1)));
    let a = AbHom::new(FgAbelianGroup::free(1), FgAbelianGroup::free(2), IntMatrix::from_i64(2, 1, &[1, 1])).unwrap();
    let b = AbHom::new(FgAbelianGroup::free(2), FgAbelianGroup::free(1), IntMatrix::from_i64(1, 2, &[1, -1])).unwrap();
    assert!(homology(&a, &b).unwrap().group.is_zero());
    let t = FgAbelianGroup::from_invariants(&[z(2)]).tensor(&FgAbelianGroup::from_invariants(&[z(3)]));
    assert!(t.is_zero());
    let t = FgAbelianGroup::from_invariants(&[z(4)]).tensor(&FgAbelianGroup::from_invariants(&[z(6)]));
    assert_eq!(t.invariant_factors(), vec![z(2)]);
}

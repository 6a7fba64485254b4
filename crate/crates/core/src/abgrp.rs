//! Finitely generated abelian groups: Smith normal form with transforms,
//! Hermite-reduced lattices, kernels, cokernels and homology.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Z = BigInt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Z>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![Z::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Z::one();
        }
        m
    }
    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> IntMatrix {
        assert_eq!(vals.len(), rows * cols);
        IntMatrix { rows, cols, data: vals.iter().map(|&x| Z::from(x)).collect() }
    }
    pub fn from_rows(rows: &[Vec<Z>], cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (c, x) in row.iter().enumerate() {
                m.data[r * cols + c] = x.clone();
            }
        }
        m
    }
    pub fn from_cols(cols: &[Vec<Z>], rows: usize) -> IntMatrix {
        IntMatrix::from_rows(cols, rows).transpose()
    }
    pub fn from_i64_cols(cols: &[Vec<i64>], rows: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                if x != 0 {
                    m.data[r * cols.len() + c] = Z::from(x);
                }
            }
        }
        m
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Z {
        &self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: Z) {
        self.data[r * self.cols + c] = x;
    }
    pub fn row(&self, r: usize) -> &[Z] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn col(&self, c: usize) -> Vec<Z> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
    pub fn cols_vec(&self) -> Vec<Vec<Z>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }
    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut m = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        m.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        m
    }
    pub fn apply(&self, v: &[Z]) -> Vec<Z> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut s = Z::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }
    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }
    pub fn scale(&self, k: &Z) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }
    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (i, &c) in cols.iter().enumerate() {
                m.set(r, i, self.get(r, c).clone());
            }
        }
        m
    }
    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.get(r, c).clone());
            }
        }
        m
    }
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_i64()).collect()).collect()
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array((0..self.rows).map(|r| serde_json::Value::Array(self.row(r).iter().map(z_json).collect())).collect())
    }
}

pub fn z_json(x: &Z) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

pub fn zvec(v: &[i64]) -> Vec<Z> {
    v.iter().map(|&x| Z::from(x)).collect()
}

/// U * A * V = diag(d), with U, V unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of length min(rows, cols); nonzero entries first, each dividing the next.
    pub diag: Vec<Z>,
    pub rank: usize,
}

pub fn smith(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut a: Vec<Vec<Z>> = (0..r).map(|i| m.row(i).to_vec()).collect();
    let mut u: Vec<Vec<Z>> = (0..r).map(|i| unit_row(r, i)).collect();
    let mut ui: Vec<Vec<Z>> = (0..r).map(|i| unit_row(r, i)).collect();
    let mut v: Vec<Vec<Z>> = (0..c).map(|i| unit_row(c, i)).collect();

    // Row i -= q * row t, tracked in u and u_inv.
    fn row_axpy(a: &mut [Vec<Z>], u: &mut [Vec<Z>], ui: &mut [Vec<Z>], i: usize, t: usize, q: &Z) {
        let (ri, rt) = two_mut(a, i, t);
        for (x, y) in ri.iter_mut().zip(rt.iter()) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
        let (ri, rt) = two_mut(u, i, t);
        for (x, y) in ri.iter_mut().zip(rt.iter()) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
        for row in ui.iter_mut() {
            if !row[i].is_zero() {
                let add = q * &row[i];
                row[t] += add;
            }
        }
    }
    // Column j -= q * column t; v tracks columns as rows of its transpose.
    fn col_axpy(a: &mut [Vec<Z>], v: &mut [Vec<Z>], j: usize, t: usize, q: &Z) {
        for row in a.iter_mut() {
            if !row[t].is_zero() {
                let sub = q * &row[t];
                row[j] -= sub;
            }
        }
        for row in v.iter_mut() {
            if !row[t].is_zero() {
                let sub = q * &row[t];
                row[j] -= sub;
            }
        }
    }

    let n = r.min(c);
    let mut t = 0;
    while t < n {
        // Pivot: smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, &mut u, &mut ui, t, pi);
        swap_cols(&mut a, &mut v, t, pj);
        loop {
            let p = a[t][t].clone();
            for i in t + 1..r {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    row_axpy(&mut a, &mut u, &mut ui, i, t, &q);
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&p);
                    col_axpy(&mut a, &mut v, j, t, &q);
                }
            }
            let mut small: Option<(bool, usize)> = None;
            let mut small_abs = p.abs();
            for i in t + 1..r {
                if !a[i][t].is_zero() && a[i][t].abs() < small_abs {
                    small_abs = a[i][t].abs();
                    small = Some((true, i));
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() && a[t][j].abs() < small_abs {
                    small_abs = a[t][j].abs();
                    small = Some((false, j));
                }
            }
            match small {
                Some((true, i)) => {
                    swap_rows(&mut a, &mut u, &mut ui, t, i);
                    continue;
                }
                Some((false, j)) => {
                    swap_cols(&mut a, &mut v, t, j);
                    continue;
                }
                None => {}
            }
            // Row and column t are clear; enforce divisibility of the rest.
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&a[i][j] % &p).is_zero()));
            if let Some(i) = bad {
                row_axpy(&mut a, &mut u, &mut ui, t, i, &Z::from(-1));
                continue;
            }
            break;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
            for row in ui.iter_mut() {
                row[t] = -row[t].clone();
            }
        }
        t += 1;
    }
    let diag: Vec<Z> = (0..n).map(|i| a[i][i].clone()).collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    Smith {
        u: IntMatrix::from_rows(&u, r),
        u_inv: IntMatrix::from_rows(&ui, r),
        v: IntMatrix::from_rows(&v, c),
        diag,
        rank,
    }
}

fn unit_row(n: usize, i: usize) -> Vec<Z> {
    let mut r = vec![Z::zero(); n];
    r[i] = Z::one();
    r
}

fn two_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &mut a[j])
    }
}

fn swap_rows(a: &mut [Vec<Z>], u: &mut [Vec<Z>], ui: &mut [Vec<Z>], i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
        u.swap(i, j);
        for row in ui.iter_mut() {
            row.swap(i, j);
        }
    }
}

fn swap_cols(a: &mut [Vec<Z>], v: &mut [Vec<Z>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// Integer solution of a x = b, if one exists.
pub fn solve(a: &IntMatrix, b: &[Z]) -> Option<Vec<Z>> {
    solve_with(a, &smith(a), b)
}

/// Solutions of a x = b for several right-hand sides, sharing one decomposition.
pub fn solve_many(a: &IntMatrix, bs: &[Vec<Z>]) -> Option<Vec<Vec<Z>>> {
    let s = smith(a);
    bs.iter().map(|b| solve_with(a, &s, b)).collect()
}

fn solve_with(a: &IntMatrix, s: &Smith, b: &[Z]) -> Option<Vec<Z>> {
    let ub = s.u.apply(b);
    let mut y = vec![Z::zero(); a.cols];
    for i in 0..a.rows {
        if i < s.rank {
            let (q, rem) = ub[i].div_rem(&s.diag[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    Some(s.v.apply(&y))
}

/// A basis (as columns) of the integer kernel of a.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let cols: Vec<usize> = (s.rank..a.cols).collect();
    s.v.select_cols(&cols)
}

/// A sublattice of Z^dim kept in reduced row echelon (Hermite) form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<Z>>,
}

fn pivot(v: &[Z]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl Lattice {
    pub fn zero(dim: usize) -> Lattice {
        Lattice { dim, rows: vec![] }
    }
    pub fn full(dim: usize) -> Lattice {
        Lattice { dim, rows: (0..dim).map(|i| unit_row(dim, i)).collect() }
    }
    pub fn from_vectors<I: IntoIterator<Item = Vec<Z>>>(dim: usize, vs: I) -> Lattice {
        let mut l = Lattice::zero(dim);
        for v in vs {
            l.add(v);
        }
        l
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn basis(&self) -> &[Vec<Z>] {
        &self.rows
    }
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_cols(&self.rows, self.dim)
    }

    fn reduce_vec(&self, v: &mut [Z]) {
        for row in &self.rows {
            let p = pivot(row).unwrap();
            if !v[p].is_zero() {
                let q = v[p].div_floor(&row[p]);
                if !q.is_zero() {
                    for (x, y) in v.iter_mut().zip(row) {
                        if !y.is_zero() {
                            *x -= &q * y;
                        }
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Z]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce_vec(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        self.contains(&zvec(v))
    }

    /// Adds a vector; returns whether the lattice grew.
    pub fn add(&mut self, v: Vec<Z>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v;
        let mut changed = false;
        while let Some(p) = pivot(&v) {
            match self.rows.binary_search_by_key(&p, |r| pivot(r).unwrap()) {
                Ok(ri) => {
                    let a = self.rows[ri][p].clone();
                    let b = v[p].clone();
                    if (&b % &a).is_zero() {
                        let q = &b / &a;
                        for (x, y) in v.iter_mut().zip(&self.rows[ri]) {
                            if !y.is_zero() {
                                *x -= &q * y;
                            }
                        }
                    } else {
                        let eg = a.extended_gcd(&b);
                        let (g, s, t) = (eg.gcd, eg.x, eg.y);
                        let row = &self.rows[ri];
                        let new_row: Vec<Z> = row.iter().zip(&v).map(|(x, y)| &s * x + &t * y).collect();
                        let (ag, bg) = (&a / &g, &b / &g);
                        let new_v: Vec<Z> = row.iter().zip(&v).map(|(x, y)| &ag * y - &bg * x).collect();
                        self.rows[ri] = new_row;
                        v = new_v;
                        changed = true;
                    }
                }
                Err(pos) => {
                    self.rows.insert(pos, v);
                    changed = true;
                    break;
                }
            }
        }
        if changed {
            self.normalize();
        }
        changed
    }

    pub fn add_i64(&mut self, v: &[i64]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return false;
        }
        self.add(zvec(v))
    }

    fn normalize(&mut self) {
        for r in 0..self.rows.len() {
            let p = pivot(&self.rows[r]).unwrap();
            if self.rows[r][p].is_negative() {
                for x in self.rows[r].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        for r in 0..self.rows.len() {
            let p = pivot(&self.rows[r]).unwrap();
            let pr = self.rows[r].clone();
            for r2 in 0..r {
                let q = self.rows[r2][p].div_floor(&pr[p]);
                if !q.is_zero() {
                    for (x, y) in self.rows[r2].iter_mut().zip(&pr) {
                        if !y.is_zero() {
                            *x -= &q * y;
                        }
                    }
                }
            }
        }
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut l = self.clone();
        for r in &other.rows {
            l.add(r.clone());
        }
        l
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// The quotient Z^dim / self.
    pub fn quotient(&self) -> FgAbelianGroup {
        FgAbelianGroup::new(self.dim, self.basis_matrix())
    }
}

/// Z^ngens modulo the column span of `rels`.
#[derive(Clone)]
pub struct FgAbelianGroup {
    ngens: usize,
    rels: IntMatrix,
    snf: OnceLock<(Smith, Vec<(usize, Z)>)>,
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl FgAbelianGroup {
    pub fn new(ngens: usize, rels: IntMatrix) -> FgAbelianGroup {
        assert_eq!(rels.rows, ngens, "relation matrix must have one row per generator");
        FgAbelianGroup { ngens, rels, snf: OnceLock::new() }
    }
    pub fn free(n: usize) -> FgAbelianGroup {
        FgAbelianGroup::new(n, IntMatrix::zeros(n, 0))
    }
    pub fn from_invariants(ds: &[Z]) -> FgAbelianGroup {
        let n = ds.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, d) in ds.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        FgAbelianGroup::new(n, m)
    }
    pub fn ngens(&self) -> usize {
        self.ngens
    }
    pub fn relations(&self) -> &IntMatrix {
        &self.rels
    }

    fn snf(&self) -> &(Smith, Vec<(usize, Z)>) {
        self.snf.get_or_init(|| {
            let s = smith(&self.rels);
            let keep = (0..self.ngens)
                .filter_map(|i| {
                    let d = if i < s.rank { s.diag[i].clone() } else { Z::zero() };
                    (!d.is_one()).then_some((i, d))
                })
                .collect();
            (s, keep)
        })
    }

    /// Invariant factors d_1 | d_2 | ... with free summands reported as 0 at the end.
    pub fn invariant_factors(&self) -> Vec<Z> {
        self.snf().1.iter().map(|(_, d)| d.clone()).collect()
    }
    pub fn invariant_factors_i64(&self) -> Vec<i64> {
        self.invariant_factors().iter().map(|d| d.to_i64().expect("invariant factor overflows i64")).collect()
    }
    pub fn rank(&self) -> usize {
        self.snf().1.iter().filter(|(_, d)| d.is_zero()).count()
    }
    pub fn torsion(&self) -> Vec<Z> {
        self.snf().1.iter().filter(|(_, d)| !d.is_zero()).map(|(_, d)| d.clone()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.snf().1.is_empty()
    }
    pub fn is_free(&self) -> bool {
        self.torsion().is_empty()
    }
    pub fn same_iso_type(&self, other: &FgAbelianGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }
    /// Number of canonical coordinates.
    pub fn num_coords(&self) -> usize {
        self.snf().1.len()
    }

    /// Canonical coordinates of the class of x (torsion parts reduced).
    pub fn coords(&self, x: &[Z]) -> Vec<Z> {
        assert_eq!(x.len(), self.ngens);
        let (s, keep) = self.snf();
        let ux = s.u.apply(x);
        keep.iter()
            .map(|(i, d)| if d.is_zero() { ux[*i].clone() } else { ux[*i].mod_floor(d) })
            .collect()
    }
    pub fn coords_i64(&self, x: &[i64]) -> Vec<Z> {
        self.coords(&zvec(x))
    }
    /// A representative in generator coordinates of canonical coordinates y.
    pub fn lift(&self, y: &[Z]) -> Vec<Z> {
        let (s, keep) = self.snf();
        assert_eq!(y.len(), keep.len());
        let mut e = vec![Z::zero(); self.ngens];
        for ((i, _), yi) in keep.iter().zip(y) {
            e[*i] = yi.clone();
        }
        s.u_inv.apply(&e)
    }
    pub fn is_zero_elem(&self, x: &[Z]) -> bool {
        self.coords(x).iter().all(|c| c.is_zero())
    }
    pub fn equal_elems(&self, x: &[Z], y: &[Z]) -> bool {
        let d: Vec<Z> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero_elem(&d)
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let n = self.ngens + other.ngens;
        let mut m = IntMatrix::zeros(n, self.rels.cols + other.rels.cols);
        for r in 0..self.ngens {
            for c in 0..self.rels.cols {
                m.set(r, c, self.rels.get(r, c).clone());
            }
        }
        for r in 0..other.ngens {
            for c in 0..other.rels.cols {
                m.set(self.ngens + r, self.rels.cols + c, other.rels.get(r, c).clone());
            }
        }
        FgAbelianGroup::new(n, m)
    }

    pub fn tensor(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let (a, b) = (self.ngens, other.ngens);
        let mut cols: Vec<Vec<Z>> = vec![];
        for c in 0..self.rels.cols {
            for j in 0..b {
                let mut v = vec![Z::zero(); a * b];
                for i in 0..a {
                    v[i * b + j] = self.rels.get(i, c).clone();
                }
                cols.push(v);
            }
        }
        for c in 0..other.rels.cols {
            for i in 0..a {
                let mut v = vec![Z::zero(); a * b];
                for j in 0..b {
                    v[i * b + j] = other.rels.get(j, c).clone();
                }
                cols.push(v);
            }
        }
        FgAbelianGroup::new(a * b, IntMatrix::from_cols(&cols, a * b))
    }

    /// e.g. "Z^2 + Z/2".
    pub fn describe(&self) -> String {
        let inv = self.invariant_factors();
        if inv.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = inv.iter().filter(|d| !d.is_zero()).map(|d| format!("Z/{d}")).collect();
        let r = self.rank();
        if r > 0 {
            parts.insert(0, if r == 1 { "Z".to_string() } else { format!("Z^{r}") });
        }
        parts.join(" + ")
    }
}

/// A homomorphism in generator coordinates: `matrix` is target.ngens x source.ngens.
#[derive(Clone, Debug)]
pub struct AbHom {
    pub source: FgAbelianGroup,
    pub target: FgAbelianGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix) -> Result<AbHom> {
        if matrix.rows != target.ngens || matrix.cols != source.ngens {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a map Z^{} -> Z^{}",
                matrix.rows, matrix.cols, source.ngens, target.ngens
            )));
        }
        let h = AbHom { source, target, matrix };
        for c in 0..h.source.rels.cols {
            let img = h.matrix.apply(&h.source.rels.col(c));
            if !h.target.is_zero_elem(&img) {
                return Err(Error::NotWellDefined(format!("relation {c} does not map to zero")));
            }
        }
        Ok(h)
    }

    pub fn apply(&self, x: &[Z]) -> Vec<Z> {
        self.matrix.apply(x)
    }

    /// The matrix in canonical coordinates of source and target.
    pub fn canonical_matrix(&self) -> IntMatrix {
        let n = self.source.num_coords();
        let mut cols = vec![];
        for j in 0..n {
            let mut e = vec![Z::zero(); n];
            e[j] = Z::one();
            let x = self.source.lift(&e);
            cols.push(self.target.coords(&self.matrix.apply(&x)));
        }
        IntMatrix::from_cols(&cols, self.target.num_coords())
    }

    pub fn compose(&self, first: &AbHom) -> AbHom {
        AbHom { source: first.source.clone(), target: self.target.clone(), matrix: self.matrix.mul(&first.matrix) }
    }

    pub fn is_zero(&self) -> bool {
        (0..self.source.ngens).all(|c| self.target.is_zero_elem(&self.matrix.apply(&unit_row(self.source.ngens, c))))
    }

    pub fn cokernel(&self) -> FgAbelianGroup {
        FgAbelianGroup::new(self.target.ngens, self.target.rels.hstack(&self.matrix))
    }

    /// The kernel, with a basis of its generators in source coordinates.
    pub fn kernel(&self) -> Subquotient {
        let n = self.source.ngens;
        let big = self.matrix.hstack(&self.target.rels);
        let kb = kernel_basis(&big);
        let proj = Lattice::from_vectors(n, kb.cols_vec().into_iter().map(|c| c[..n].to_vec()));
        Subquotient::new(&proj, &self.source.rels.cols_vec())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_zero()
    }
    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero()
    }
    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// A subgroup L of Z^n modulo relations contained in L, with a basis of L.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FgAbelianGroup,
    /// n x k matrix whose columns are the generators.
    pub basis: IntMatrix,
}

impl Subquotient {
    pub fn new(sub: &Lattice, rels: &[Vec<Z>]) -> Subquotient {
        let basis = sub.basis_matrix();
        let k = basis.cols;
        let mut cols = vec![];
        for r in rels {
            let c = solve(&basis, r).expect("relation outside the subgroup");
            cols.push(c);
        }
        Subquotient { group: FgAbelianGroup::new(k, IntMatrix::from_cols(&cols, k)), basis }
    }

    /// Coordinates in terms of the basis of an element of the subgroup.
    pub fn express(&self, x: &[Z]) -> Option<Vec<Z>> {
        solve(&self.basis, x)
    }
}

/// Homology at the middle of a -> b -> c.
pub fn homology(d_in: &AbHom, d_out: &AbHom) -> Result<Subquotient> {
    if d_in.target.ngens != d_out.source.ngens {
        return Err(Error::Dimension("composable maps expected".into()));
    }
    if !d_out.compose(d_in).is_zero() {
        return Err(Error::NotAComplex(0));
    }
    let k = d_out.kernel();
    let mut rels: Vec<Vec<Z>> = d_out.source.rels.cols_vec();
    rels.extend(d_in.matrix.cols_vec());
    let sub = Lattice::from_vectors(k.basis.rows, k.basis.cols_vec());
    Ok(Subquotient::new(&sub, &rels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> Z {
        Z::from(v)
    }

    #[test]
    fn smith_transforms() {
        let m = IntMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
        let s = smith(&m);
        let d = s.u.mul(&m).mul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(d.get(i, j).is_zero());
                }
            }
        }
        assert_eq!(s.diag, vec![z(2), z(6), z(12)]);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(3));
    }

    #[test]
    fn quotient_coordinates() {
        let g = FgAbelianGroup::new(2, IntMatrix::from_i64(2, 1, &[2, -1]));
        assert_eq!(g.invariant_factors(), vec![z(0)]);
        let h = FgAbelianGroup::new(3, IntMatrix::from_i64(3, 2, &[2, 0, 0, 4, 0, 0]));
        assert_eq!(h.invariant_factors(), vec![z(2), z(4), z(0)]);
        assert_eq!(h.describe(), "Z + Z/2 + Z/4");
        let x = zvec(&[3, 5, 7]);
        assert_eq!(h.coords(&h.lift(&h.coords(&x))), h.coords(&x));
    }

    #[test]
    fn lattice_hnf() {
        let mut l = Lattice::zero(2);
        l.add(zvec(&[4, 6]));
        l.add(zvec(&[6, 4]));
        assert!(l.contains(&zvec(&[2, -2])));
        assert!(!l.contains(&zvec(&[2, 0])));
        let l2 = Lattice::from_vectors(2, [zvec(&[2, -2]), zvec(&[0, 10]), zvec(&[4, 6])]);
        assert_eq!(l, l2);
    }

    #[test]
    fn homology_of_multiplication() {
        // Z --2--> Z --0--> Z: H = Z/2.
        let a = FgAbelianGroup::free(1);
        let d1 = AbHom::new(a.clone(), a.clone(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let d2 = AbHom::new(a.clone(), a.clone(), IntMatrix::from_i64(1, 1, &[0])).unwrap();
        let h = homology(&d1, &d2).unwrap();
        assert_eq!(h.group.invariant_factors(), vec![z(2)]);
        let t = FgAbelianGroup::from_invariants(&[z(4)]).tensor(&FgAbelianGroup::from_invariants(&[z(6)]));
        assert_eq!(t.invariant_factors(), vec![z(2)]);
    }
}

//! Finite G-sets as action tables, equivariant maps, induction,
//! coinduction Map^H(G, T), dependent products and tables of marks.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{ElemSet, Elt, FiniteGroup, GroupHom, SubId};

/// Default bound on the number of points of a coinduced set.
pub const DEFAULT_COINDUCTION_BUDGET: u128 = 10_000_000;

#[derive(Clone)]
pub struct GSet {
    pub group: Arc<FiniteGroup>,
    n: usize,
    act: Vec<u32>,
    /// Optional total ordering of the points, as a rank per point.
    pub ordering: Option<Vec<u32>>,
}

impl std::fmt::Debug for GSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-set of size {}: {}", self.group.name, self.n, self.describe())
    }
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub rep: u32,
    pub points: Vec<u32>,
    pub stabilizer: SubId,
}

impl GSet {
    /// `act[g * n + x]` is g.x.
    pub fn new(group: Arc<FiniteGroup>, n: usize, act: Vec<u32>) -> Result<GSet> {
        let s = GSet { group, n, act, ordering: None };
        if s.act.len() != s.group.order() * n || s.act.iter().any(|&y| y as usize >= n) {
            return Err(Error::InvalidAction("action table has wrong shape".into()));
        }
        for x in 0..n as u32 {
            if s.act(0, x) != x {
                return Err(Error::InvalidAction("identity acts nontrivially".into()));
            }
        }
        for a in s.group.elements() {
            for b in s.group.elements() {
                for x in 0..n as u32 {
                    if s.act(s.group.mul(a, b), x) != s.act(a, s.act(b, x)) {
                        return Err(Error::InvalidAction(format!("(ab).x != a.(b.x) at x = {x}")));
                    }
                }
            }
        }
        Ok(s)
    }

    fn new_unchecked(group: Arc<FiniteGroup>, n: usize, act: Vec<u32>) -> GSet {
        GSet { group, n, act, ordering: None }
    }

    pub fn from_fn(group: &Arc<FiniteGroup>, n: usize, f: impl Fn(Elt, u32) -> u32) -> Result<GSet> {
        let mut act = Vec::with_capacity(group.order() * n);
        for g in group.elements() {
            for x in 0..n as u32 {
                act.push(f(g, x));
            }
        }
        GSet::new(group.clone(), n, act)
    }

    pub fn empty(group: &Arc<FiniteGroup>) -> GSet {
        GSet::new_unchecked(group.clone(), 0, vec![])
    }

    pub fn point(group: &Arc<FiniteGroup>) -> GSet {
        GSet::trivial(group, 1)
    }

    /// n fixed points.
    pub fn trivial(group: &Arc<FiniteGroup>, n: usize) -> GSet {
        let act = group.elements().flat_map(|_| 0..n as u32).collect();
        GSet::new_unchecked(group.clone(), n, act)
    }

    /// G/H, points indexed by the minimal coset representatives.
    pub fn cosets(group: &Arc<FiniteGroup>, h: SubId) -> GSet {
        let reps = group.left_coset_reps(h);
        let mut which = vec![0u32; group.order()];
        for (i, &r) in reps.iter().enumerate() {
            for &x in group.sub_elems(h) {
                which[group.mul(r, x) as usize] = i as u32;
            }
        }
        let n = reps.len();
        let mut act = Vec::with_capacity(group.order() * n);
        for g in group.elements() {
            for &r in &reps {
                act.push(which[group.mul(g, r) as usize]);
            }
        }
        GSet::new_unchecked(group.clone(), n, act)
    }

    /// Disjoint union of orbits G/H_i.
    pub fn from_orbits(group: &Arc<FiniteGroup>, subs: &[SubId]) -> GSet {
        subs.iter().fold(GSet::empty(group), |acc, &h| acc.disjoint_union(&GSet::cosets(group, h)))
    }

    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    #[inline]
    pub fn act(&self, g: Elt, x: u32) -> u32 {
        self.act[g as usize * self.n + x as usize]
    }

    pub fn with_ordering(mut self, ranks: Vec<u32>) -> Result<GSet> {
        let mut sorted = ranks.clone();
        sorted.sort_unstable();
        if ranks.len() != self.n || sorted.iter().enumerate().any(|(i, &r)| r as usize != i) {
            return Err(Error::InvalidAction("ordering is not a permutation of the points".into()));
        }
        self.ordering = Some(ranks);
        Ok(self)
    }

    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        assert!(Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group);
        let n = self.n + other.n;
        let mut act = Vec::with_capacity(self.group.order() * n);
        for g in self.group.elements() {
            for x in 0..self.n as u32 {
                act.push(self.act(g, x));
            }
            for x in 0..other.n as u32 {
                act.push(self.n as u32 + other.act(g, x));
            }
        }
        GSet::new_unchecked(self.group.clone(), n, act)
    }

    /// Product with points x * other.len() + y.
    pub fn product(&self, other: &GSet) -> GSet {
        assert!(Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group);
        let n = self.n * other.n;
        let mut act = Vec::with_capacity(self.group.order() * n);
        for g in self.group.elements() {
            for x in 0..self.n as u32 {
                for y in 0..other.n as u32 {
                    act.push(self.act(g, x) * other.n as u32 + other.act(g, y));
                }
            }
        }
        GSet::new_unchecked(self.group.clone(), n, act)
    }

    pub fn multiple(&self, k: usize) -> GSet {
        (0..k).fold(GSet::empty(&self.group), |acc, _| acc.disjoint_union(self))
    }

    pub fn stabilizer(&self, x: u32) -> SubId {
        let set = ElemSet::from_elems(self.group.elements().filter(|&g| self.act(g, x) == x));
        self.group.sub_by_set(&set).expect("stabilizer is a subgroup")
    }

    pub fn is_fixed_by(&self, h: SubId, x: u32) -> bool {
        self.group.sub_elems(h).iter().all(|&g| self.act(g, x) == x)
    }

    pub fn fixed_points(&self, h: SubId) -> Vec<u32> {
        (0..self.n as u32).filter(|&x| self.is_fixed_by(h, x)).collect()
    }

    /// Orbits in order of their minimal points.
    pub fn orbits(&self) -> Vec<Orbit> {
        let mut seen = vec![false; self.n];
        let mut out = vec![];
        for x in 0..self.n as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut pts: Vec<u32> = self.group.elements().map(|g| self.act(g, x)).collect();
            pts.sort_unstable();
            pts.dedup();
            for &p in &pts {
                seen[p as usize] = true;
            }
            out.push(Orbit { rep: x, points: pts, stabilizer: self.stabilizer(x) });
        }
        out
    }

    /// Multiplicity of each orbit type, keyed by conjugacy-class representative.
    pub fn iso_type(&self) -> BTreeMap<SubId, usize> {
        let mut m = BTreeMap::new();
        for o in self.orbits() {
            *m.entry(self.group.class_rep(o.stabilizer)).or_insert(0) += 1;
        }
        m
    }

    pub fn is_isomorphic(&self, other: &GSet) -> bool {
        self.iso_type() == other.iso_type()
    }

    /// |X^H| for each class representative H.
    pub fn marks(&self) -> Vec<u64> {
        self.group.class_reps().iter().map(|&h| self.fixed_points(h).len() as u64).collect()
    }

    /// e.g. "G/D2 + 2 G/e".
    pub fn describe(&self) -> String {
        let t = self.iso_type();
        if t.is_empty() {
            return "0".into();
        }
        t.iter()
            .rev()
            .map(|(&h, &c)| {
                let o = format!("G/{}", self.group.sub_name(h));
                if c == 1 {
                    o
                } else {
                    format!("{c} {o}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Restriction along a homomorphism K -> G.
    pub fn restrict(&self, hom: &GroupHom) -> GSet {
        let k = &hom.src;
        let mut act = Vec::with_capacity(k.order() * self.n);
        for g in k.elements() {
            let gg = hom.apply(g);
            for x in 0..self.n as u32 {
                act.push(self.act(gg, x));
            }
        }
        GSet::new_unchecked(k.clone(), self.n, act)
    }

    /// G x_H T for an injective hom H -> G; points (coset j, t) as j * |T| + t.
    pub fn induce(t: &GSet, emb: &GroupHom) -> GSet {
        let g = &emb.dst;
        let hsub = emb.image_sub(emb.src.whole());
        let reps = g.left_coset_reps(hsub);
        let inv = emb.partial_inverse();
        let mut which = vec![(0u32, 0 as Elt); g.order()];
        for (i, &r) in reps.iter().enumerate() {
            for &x in g.sub_elems(hsub) {
                which[g.mul(r, x) as usize] = (i as u32, inv[x as usize]);
            }
        }
        let n = reps.len() * t.n;
        let mut act = Vec::with_capacity(g.order() * n);
        for a in g.elements() {
            for &r in &reps {
                // a r = r' h
                let (j, h) = which[g.mul(a, r) as usize];
                for y in 0..t.n as u32 {
                    act.push(j * t.n as u32 + t.act(h, y));
                }
            }
        }
        GSet::new_unchecked(g.clone(), n, act)
    }
}

/// An equivariant map between G-sets.
#[derive(Clone, Debug)]
pub struct GMap {
    pub source: GSet,
    pub target: GSet,
    pub map: Vec<u32>,
}

impl GMap {
    pub fn new(source: &GSet, target: &GSet, map: Vec<u32>) -> Result<GMap> {
        if map.len() != source.len() || map.iter().any(|&y| y as usize >= target.len()) {
            return Err(Error::Dimension("map has wrong size".into()));
        }
        for g in source.group.elements() {
            for x in 0..source.len() as u32 {
                if map[source.act(g, x) as usize] != target.act(g, map[x as usize]) {
                    return Err(Error::NotEquivariant(format!("at point {x}")));
                }
            }
        }
        Ok(GMap { source: source.clone(), target: target.clone(), map })
    }
    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }
    pub fn fiber(&self, y: u32) -> Vec<u32> {
        (0..self.source.len() as u32).filter(|&x| self.map[x as usize] == y).collect()
    }
    /// The fold map X + X + ... -> X.
    pub fn fold(x: &GSet, k: usize) -> GMap {
        let src = x.multiple(k);
        let map = (0..src.len() as u32).map(|p| p % x.len() as u32).collect();
        GMap { source: src, target: x.clone(), map }
    }
    /// G/K -> G/H for K <= g^-1 H g... here the canonical projection for K <= H.
    pub fn projection(group: &Arc<FiniteGroup>, k: SubId, h: SubId) -> Result<GMap> {
        if !group.le(k, h) {
            return Err(Error::NotSubgroup(format!("{} in {}", group.sub_name(k), group.sub_name(h))));
        }
        let src = GSet::cosets(group, k);
        let dst = GSet::cosets(group, h);
        let reps = group.left_coset_reps(k);
        let hreps = group.left_coset_reps(h);
        let map = reps
            .iter()
            .map(|&r| hreps.iter().position(|&s| group.sub_contains(h, group.mul(group.inv(s), r))).unwrap() as u32)
            .collect();
        GMap::new(&src, &dst, map)
    }
}

/// Right cosets H g_j of the image of H -> G, with the right translation action:
/// g_j k = emb(h) g_{j'} recorded as (h, j').
#[derive(Clone, Debug)]
pub struct RightCosetAction {
    pub emb: GroupHom,
    pub reps: Vec<Elt>,
    next: Vec<u32>,
    hfac: Vec<Elt>,
    /// For each element x of G, (j, h) with x = emb(h) g_j.
    pub decompose: Vec<(u32, Elt)>,
}

impl RightCosetAction {
    pub fn new(emb: &GroupHom) -> RightCosetAction {
        let g = &emb.dst;
        let hsub = emb.image_sub(emb.src.whole());
        let reps = g.right_coset_reps(hsub);
        let inv = emb.partial_inverse();
        let mut decompose = vec![(0u32, 0 as Elt); g.order()];
        for (j, &r) in reps.iter().enumerate() {
            for &x in g.sub_elems(hsub) {
                decompose[g.mul(x, r) as usize] = (j as u32, inv[x as usize]);
            }
        }
        let n = reps.len();
        let mut next = vec![0; g.order() * n];
        let mut hfac = vec![0; g.order() * n];
        for k in g.elements() {
            for (j, &r) in reps.iter().enumerate() {
                let (jj, h) = decompose[g.mul(r, k) as usize];
                next[k as usize * n + j] = jj;
                hfac[k as usize * n + j] = h;
            }
        }
        RightCosetAction { emb: emb.clone(), reps, next, hfac, decompose }
    }
    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
    /// (h, j') with g_j k = h g_{j'}.
    #[inline]
    pub fn step(&self, k: Elt, j: usize) -> (Elt, usize) {
        let i = k as usize * self.reps.len() + j;
        (self.hfac[i], self.next[i] as usize)
    }
    /// (k.F)_j = h.F_{j'}: the action on value tuples over an H-set.
    pub fn act_tuple(&self, t: &GSet, k: Elt, f: &[u32], out: &mut [u32]) {
        for (j, o) in out.iter_mut().enumerate() {
            let (h, jj) = self.step(k, j);
            *o = t.act(h, f[jj]);
        }
    }
}

/// Map^H(G, T) as a G-set; H-equivariance is F(h x) = h F(x), and G acts by
/// (k F)(x) = F(x k). Points are encoded in base |T| by their values F(g_j).
#[derive(Clone, Debug)]
pub struct Coinduction {
    pub gset: GSet,
    pub cosets: RightCosetAction,
    pub radix: usize,
}

impl Coinduction {
    pub fn encode(&self, vals: &[u32]) -> u32 {
        vals.iter().rev().fold(0u64, |acc, &v| acc * self.radix as u64 + v as u64) as u32
    }
    pub fn decode(&self, mut x: u32) -> Vec<u32> {
        (0..self.cosets.len())
            .map(|_| {
                let v = x % self.radix as u32;
                x /= self.radix as u32;
                v
            })
            .collect()
    }
    /// The value F(x) for an arbitrary x in G.
    pub fn eval(&self, t: &GSet, point: u32, x: Elt) -> u32 {
        let (j, h) = self.cosets.decompose[x as usize];
        let vals = self.decode(point);
        t.act(h, vals[j as usize])
    }
}

pub fn coinduction_size(t_len: usize, index: usize) -> u128 {
    (t_len as u128).checked_pow(index as u32).unwrap_or(u128::MAX)
}

/// Materializes Map^H(G, T) for an injective hom H -> G.
pub fn coinduce(emb: &GroupHom, t: &GSet, budget: u128) -> Result<Coinduction> {
    let rca = RightCosetAction::new(emb);
    let n = rca.len();
    let size = coinduction_size(t.len(), n);
    let g = &emb.dst;
    if size > budget || size * g.order() as u128 > u32::MAX as u128 {
        return Err(Error::Budget { what: "coinduction points", needed: size, limit: budget });
    }
    let size = size as usize;
    let radix = t.len();
    let mut co = Coinduction { gset: GSet::empty(g), cosets: rca, radix };
    let mut act = vec![0u32; g.order() * size];
    let mut vals = vec![0u32; n];
    let mut out = vec![0u32; n];
    for x in 0..size as u32 {
        let mut y = x;
        for v in vals.iter_mut() {
            *v = y % radix as u32;
            y /= radix as u32;
        }
        for k in g.elements() {
            co.cosets.act_tuple(t, k, &vals, &mut out);
            act[k as usize * size + x as usize] = co.encode(&out);
        }
    }
    co.gset = GSet::new_unchecked(g.clone(), size, act);
    Ok(co)
}

/// An orbit of a tuple space found by streaming enumeration.
#[derive(Clone, Debug)]
pub struct TupleOrbit {
    pub rep: Vec<u32>,
    pub stabilizer: SubId,
    pub size: usize,
}

/// Orbits of the subgroup `ksub` of G on tuples (x_j) with x_j in lists[j],
/// where k acts by (k x)_j = h x_{j'} for g_j k = h g_{j'} and x lives in the H-set `s`.
/// The lists must be compatible with the action.
pub fn tuple_orbits(rca: &RightCosetAction, s: &GSet, lists: &[Vec<u32>], ksub: SubId, budget: u128) -> Result<Vec<TupleOrbit>> {
    let n = rca.len();
    assert_eq!(lists.len(), n);
    let size: u128 = lists.iter().map(|l| l.len() as u128).try_fold(1u128, |a, b| a.checked_mul(b)).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::Budget { what: "coinduction points", needed: size, limit: budget });
    }
    if size == 0 {
        return Ok(vec![]);
    }
    let size = size as usize;
    let g = &rca.emb.dst;
    let kel = g.sub_elems(ksub).to_vec();
    let mut pos: Vec<HashMap<u32, u32>> = vec![];
    for l in lists {
        pos.push(l.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect());
    }
    let radices: Vec<usize> = lists.iter().map(|l| l.len()).collect();
    let mut visited = vec![0u64; size.div_ceil(64)];
    let mut out = vec![];
    let mut vals = vec![0u32; n];
    let mut img = vec![0u32; n];
    for idx in 0..size {
        if visited[idx / 64] >> (idx % 64) & 1 == 1 {
            continue;
        }
        let mut y = idx;
        for j in 0..n {
            vals[j] = lists[j][y % radices[j]];
            y /= radices[j];
        }
        let mut stab = ElemSet::default();
        let mut count = 0;
        for &k in &kel {
            rca.act_tuple(s, k, &vals, &mut img);
            let mut code = 0usize;
            for j in (0..n).rev() {
                let p = *pos[j].get(&img[j]).ok_or_else(|| Error::InvalidAction("tuple lists are not invariant".into()))?;
                code = code * radices[j] + p as usize;
            }
            if code == idx {
                stab.insert(k);
            }
            if visited[code / 64] >> (code % 64) & 1 == 0 {
                visited[code / 64] |= 1 << (code % 64);
                count += 1;
            }
        }
        out.push(TupleOrbit { rep: vals.clone(), stabilizer: g.sub_by_set(&stab).unwrap(), size: count });
    }
    Ok(out)
}

/// Orbit decomposition of Map^H(G, T) without materializing the action table.
pub fn coinduce_orbits(emb: &GroupHom, t: &GSet, budget: u128) -> Result<Vec<TupleOrbit>> {
    let rca = RightCosetAction::new(emb);
    let all: Vec<u32> = (0..t.len() as u32).collect();
    let lists = vec![all; rca.len()];
    tuple_orbits(&rca, t, &lists, emb.dst.whole(), budget)
}

/// The dependent product along g: U -> S of h: T -> U, with its exponential diagram.
#[derive(Clone, Debug)]
pub struct ExponentialDiagram {
    /// Points (s, section) with section listed over g^-1(s) in increasing order.
    pub pi: GSet,
    pub pi_points: Vec<(u32, Vec<u32>)>,
    /// U x_S Pi as pairs (u, p).
    pub pullback: GSet,
    pub pullback_points: Vec<(u32, u32)>,
    /// pullback -> T, (u, (s, sigma)) -> sigma(u).
    pub f_prime: GMap,
    /// pullback -> Pi.
    pub g_prime: GMap,
    /// Pi -> S.
    pub h_prime: GMap,
}

pub fn exponential_diagram(g: &GMap, h: &GMap, budget: u128) -> Result<ExponentialDiagram> {
    let (u, s, t) = (&g.source, &g.target, &h.source);
    if h.target.len() != u.len() {
        return Err(Error::Dimension("h must land in the source of g".into()));
    }
    let grp = &s.group;
    let fibers: Vec<Vec<u32>> = (0..s.len() as u32).map(|y| g.fiber(y)).collect();
    let hfib: Vec<Vec<u32>> = (0..u.len() as u32).map(|x| h.fiber(x)).collect();
    let mut points: Vec<(u32, Vec<u32>)> = vec![];
    for (y, fib) in fibers.iter().enumerate() {
        let count: u128 = fib.iter().map(|&x| hfib[x as usize].len() as u128).product();
        if points.len() as u128 + count > budget {
            return Err(Error::Budget { what: "dependent product points", needed: points.len() as u128 + count, limit: budget });
        }
        let mut idx = vec![0usize; fib.len()];
        if fib.iter().any(|&x| hfib[x as usize].is_empty()) {
            continue;
        }
        loop {
            points.push((y as u32, fib.iter().zip(&idx).map(|(&x, &i)| hfib[x as usize][i]).collect()));
            let mut c = 0;
            while c < idx.len() {
                idx[c] += 1;
                if idx[c] < hfib[fib[c] as usize].len() {
                    break;
                }
                idx[c] = 0;
                c += 1;
            }
            if c == idx.len() {
                break;
            }
        }
    }
    let index: HashMap<(u32, Vec<u32>), u32> = points.iter().cloned().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let pi = GSet::from_fn(grp, points.len(), |a, p| {
        let (y, sec) = &points[p as usize];
        let y2 = s.act(a, *y);
        let fib = &fibers[*y as usize];
        // (a sigma)(a x) = a sigma(x)
        let mut new = vec![0u32; fib.len()];
        let fib2 = &fibers[y2 as usize];
        for (i, &x) in fib.iter().enumerate() {
            let ax = u.act(a, x);
            let pos = fib2.binary_search(&ax).unwrap();
            new[pos] = t.act(a, sec[i]);
        }
        index[&(y2, new)]
    })?;
    let mut pb_points = vec![];
    for (p, (y, _)) in points.iter().enumerate() {
        for &x in &fibers[*y as usize] {
            pb_points.push((x, p as u32));
        }
    }
    pb_points.sort_unstable();
    let pb_index: HashMap<(u32, u32), u32> = pb_points.iter().enumerate().map(|(i, &q)| (q, i as u32)).collect();
    let pullback = GSet::from_fn(grp, pb_points.len(), |a, q| {
        let (x, p) = pb_points[q as usize];
        pb_index[&(u.act(a, x), pi.act(a, p))]
    })?;
    let fmap = pb_points
        .iter()
        .map(|&(x, p)| {
            let (y, sec) = &points[p as usize];
            sec[fibers[*y as usize].binary_search(&x).unwrap()]
        })
        .collect();
    let f_prime = GMap::new(&pullback, t, fmap)?;
    let g_prime = GMap::new(&pullback, &pi, pb_points.iter().map(|&(_, p)| p).collect())?;
    let h_prime = GMap::new(&pi, s, points.iter().map(|(y, _)| *y).collect())?;
    Ok(ExponentialDiagram { pi, pi_points: points, pullback, pullback_points: pb_points, f_prime, g_prime, h_prime })
}

pub fn dependent_product(g: &GMap, h: &GMap, budget: u128) -> Result<GSet> {
    Ok(exponential_diagram(g, h, budget)?.pi)
}

/// Table of marks: entry [i][j] = |(G/H_i)^{H_j}| over class representatives.
pub fn table_of_marks(group: &FiniteGroup) -> Vec<Vec<u64>> {
    let reps = group.class_reps();
    reps.iter()
        .map(|&hi| {
            reps.iter()
                .map(|&hj| {
                    let c = group.elements().filter(|&g| group.le(group.conj_sub(group.inv(g), hj), hi)).count();
                    (c / group.sub_order(hi)) as u64
                })
                .collect()
        })
        .collect()
}

/// The points mu_{2m(k+1)} on the circle with the reflection-rotation action of D_{2m}.
pub fn circle_points(m: u32, k: u32) -> GSet {
    let g = Arc::new(FiniteGroup::dihedral(m));
    let n = 2 * m * (k + 1);
    GSet::from_fn(&g, n as usize, |a, j| {
        let (i, e) = ((a % m) as i64, a / m);
        let step = 2 * (k as i64 + 1);
        let x = if e == 0 { j as i64 } else { -(j as i64) };
        (x + i * step).rem_euclid(n as i64) as u32
    })
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_orbits() {
        let g = Arc::new(FiniteGroup::dihedral(3));
        let x = GSet::cosets(&g, g.dih_sub(1));
        assert_eq!(x.len(), 3);
        assert_eq!(x.orbits().len(), 1);
        let p = x.product(&x);
        let t = p.iso_type();
        assert_eq!(t[&g.dih_sub(1)], 1);
        assert_eq!(t[&0], 1);
    }

    #[test]
    fn marks_d6() {
        let g = FiniteGroup::dihedral(3);
        let m = table_of_marks(&g);
        // classes: e, D2, mu3, G
        assert_eq!(m[0], vec![6, 0, 0, 0]);
        assert_eq!(m[1], vec![3, 1, 0, 0]);
        assert_eq!(m[2], vec![2, 0, 2, 0]);
        assert_eq!(m[3], vec![1, 1, 1, 1]);
    }

    #[test]
    fn circle_points_decompose() {
        for m in [1u32, 3, 5] {
            for k in 0..3 {
                let x = circle_points(m, k);
                let g = x.group.clone();
                let want = GSet::from_orbits(&g, &[g.dih_sub(1), g.dih_sub_at(1, 1)])
                    .disjoint_union(&GSet::cosets(&g, 0).multiple(k as usize));
                assert!(x.is_isomorphic(&want), "m={m} k={k}: {}", x.describe());
            }
        }
    }

    #[test]
    fn induce_restrict_sizes() {
        let g = Arc::new(FiniteGroup::dihedral(5));
        let inc = g.subgroup_as_group(g.dih_sub(1));
        let t = GSet::point(&inc.src).disjoint_union(&GSet::cosets(&inc.src, 0));
        let ind = GSet::induce(&t, &inc);
        assert_eq!(ind.len(), 15);
        assert_eq!(ind.restrict(&inc).len(), 15);
    }
}

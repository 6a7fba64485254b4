//! Tambara reciprocity for norms of sums.
//!
//! For H <= G, N_H^G(a + b) is a sum over G-orbits of functions F: H\G -> {a, b}
//! with stabilizer K_F. Each summand is the transfer from K_F of a product over
//! double cosets H d K_F of N_{K_F cap d^-1 H d}^{K_F}(d . res(F(d))), where
//! d . x is the right action c_{d^-1}. G acts on functions by (k F)(x) = F(x k).

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::burnside::{BElem, BurnsideSystem};
use crate::error::{Error, Result};
use crate::groups::{ElemSet, Elt, FiniteGroup, GroupKind, SubId};
use crate::gsets::{coinduction_size, RightCosetAction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A,
    B,
}

impl Var {
    fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
        }
    }
}

/// An expression in a Tambara functor over two variables living at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(Var, SubId),
    Lit(i64, SubId),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Res { to: SubId, arg: Box<Expr> },
    Tr { to: SubId, arg: Box<Expr> },
    Norm { to: SubId, arg: Box<Expr> },
    /// d . x: level L -> d^-1 L d.
    Weyl { g: Elt, arg: Box<Expr> },
}

impl Expr {
    pub fn level(&self, g: &FiniteGroup) -> SubId {
        match self {
            Expr::Var(_, l) | Expr::Lit(_, l) => *l,
            Expr::Sum(v) | Expr::Prod(v) => v.first().map(|e| e.level(g)).unwrap_or(g.whole()),
            Expr::Res { to, .. } | Expr::Tr { to, .. } | Expr::Norm { to, .. } => *to,
            Expr::Weyl { g: d, arg } => g.conj_sub(g.inv(*d), arg.level(g)),
        }
    }

    /// Checks that subgroup annotations compose.
    pub fn check(&self, g: &FiniteGroup) -> Result<()> {
        let bad = |s: &str| Err(Error::NotSubgroup(s.to_string()));
        match self {
            Expr::Var(..) | Expr::Lit(..) => Ok(()),
            Expr::Sum(v) | Expr::Prod(v) => {
                let l = self.level(g);
                for e in v {
                    e.check(g)?;
                    if e.level(g) != l {
                        return bad("operands live at different levels");
                    }
                }
                Ok(())
            }
            Expr::Res { to, arg } => {
                arg.check(g)?;
                if !g.le(*to, arg.level(g)) {
                    return bad("restriction to a non-subgroup");
                }
                Ok(())
            }
            Expr::Tr { to, arg } | Expr::Norm { to, arg } => {
                arg.check(g)?;
                if !g.le(arg.level(g), *to) {
                    return bad("transfer or norm into a non-supergroup");
                }
                Ok(())
            }
            Expr::Weyl { arg, .. } => arg.check(g),
        }
    }

    pub fn evaluate<I: TambaraInstance>(&self, inst: &I, a: &I::Elem, b: &I::Elem) -> I::Elem {
        let g = inst.group().clone();
        match self {
            Expr::Var(Var::A, _) => a.clone(),
            Expr::Var(Var::B, _) => b.clone(),
            Expr::Lit(n, l) => inst.lit(*l, *n),
            Expr::Sum(v) => {
                let l = self.level(&g);
                let mut acc = inst.lit(l, 0);
                for e in v {
                    inst.add_assign(l, &mut acc, &e.evaluate(inst, a, b));
                }
                acc
            }
            Expr::Prod(v) => {
                let l = self.level(&g);
                let mut acc = inst.lit(l, 1);
                for e in v {
                    inst.mul_assign(l, &mut acc, &e.evaluate(inst, a, b));
                }
                acc
            }
            Expr::Res { to, arg } => inst.res(arg.level(&g), *to, &arg.evaluate(inst, a, b)),
            Expr::Tr { to, arg } => inst.tr(arg.level(&g), *to, &arg.evaluate(inst, a, b)),
            Expr::Norm { to, arg } => inst.norm(arg.level(&g), *to, &arg.evaluate(inst, a, b)),
            Expr::Weyl { g: d, arg } => inst.conj(g.inv(*d), arg.level(&g), &arg.evaluate(inst, a, b)),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Expr::Lit(0, _))
    }

    /// Substitutes b = 0 and simplifies zeros away.
    pub fn with_b_zero(&self, g: &FiniteGroup) -> Expr {
        let l = self.level(g);
        let zero = Expr::Lit(0, l);
        match self {
            Expr::Var(Var::B, _) => zero,
            Expr::Var(..) | Expr::Lit(..) => self.clone(),
            Expr::Sum(v) => {
                let mut kept: Vec<Expr> = v.iter().map(|e| e.with_b_zero(g)).filter(|e| !e.is_zero()).collect();
                match kept.len() {
                    0 => zero,
                    1 => kept.pop().unwrap(),
                    _ => Expr::Sum(kept),
                }
            }
            Expr::Prod(v) => {
                let mut kept: Vec<Expr> = v.iter().map(|e| e.with_b_zero(g)).collect();
                if kept.iter().any(|e| e.is_zero()) {
                    zero
                } else if kept.len() == 1 {
                    kept.pop().unwrap()
                } else {
                    Expr::Prod(kept)
                }
            }
            Expr::Res { to, arg } | Expr::Tr { to, arg } | Expr::Norm { to, arg } => {
                let inner = arg.with_b_zero(g);
                if inner.is_zero() {
                    return zero;
                }
                let arg = Box::new(inner);
                match self {
                    Expr::Res { .. } => Expr::Res { to: *to, arg },
                    Expr::Tr { .. } => Expr::Tr { to: *to, arg },
                    _ => Expr::Norm { to: *to, arg },
                }
            }
            Expr::Weyl { g: d, arg } => {
                let inner = arg.with_b_zero(g);
                if inner.is_zero() {
                    zero
                } else {
                    Expr::Weyl { g: *d, arg: Box::new(inner) }
                }
            }
        }
    }

    pub fn render(&self, g: &FiniteGroup, latex: bool) -> String {
        let sub = |h: SubId| if latex { latex_sub(g, h) } else { g.sub_name(h) };
        match self {
            Expr::Var(v, l) => {
                if latex {
                    format!("{}_{{{}}}", v.name(), latex_sub(g, *l))
                } else {
                    v.name().to_string()
                }
            }
            Expr::Lit(n, _) => n.to_string(),
            Expr::Sum(v) => v.iter().map(|e| e.render(g, latex)).collect::<Vec<_>>().join(" + "),
            Expr::Prod(v) => {
                let sep = if latex { " \\cdot " } else { " * " };
                v.iter()
                    .map(|e| match e {
                        Expr::Sum(_) => format!("({})", e.render(g, latex)),
                        _ => e.render(g, latex),
                    })
                    .collect::<Vec<_>>()
                    .join(sep)
            }
            Expr::Res { to, arg } => {
                let from = sub(arg.level(g));
                if latex {
                    format!("\\res^{{{}}}_{{{}}}({})", from, sub(*to), arg.render(g, latex))
                } else {
                    format!("res^{}_{}({})", from, sub(*to), arg.render(g, latex))
                }
            }
            Expr::Tr { to, arg } => {
                let from = sub(arg.level(g));
                if latex {
                    format!("\\tr_{{{}}}^{{{}}}({})", from, sub(*to), arg.render(g, latex))
                } else {
                    format!("tr_{}^{}({})", from, sub(*to), arg.render(g, latex))
                }
            }
            Expr::Norm { to, arg } => {
                let from = sub(arg.level(g));
                if latex {
                    format!("N_{{{}}}^{{{}}}({})", from, sub(*to), arg.render(g, latex))
                } else {
                    format!("N_{}^{}({})", from, sub(*to), arg.render(g, latex))
                }
            }
            Expr::Weyl { g: d, arg } => {
                if latex {
                    format!("{} \\cdot {}", latex_elt(g, *d), arg.render(g, latex))
                } else {
                    format!("{}.{}", g.label(*d), arg.render(g, latex))
                }
            }
        }
    }
}

fn latex_elt(g: &FiniteGroup, a: Elt) -> String {
    let l = g.label(a);
    if matches!(g.kind, GroupKind::Dihedral { .. }) {
        let mut s = l.replace('z', "\\zeta").replace('t', "\\tau");
        if let Some(p) = s.find('^') {
            let end = s[p + 1..].find(|c: char| !c.is_ascii_digit()).map(|e| p + 1 + e).unwrap_or(s.len());
            s = format!("{}^{{{}}}{}", &s[..p], &s[p + 1..end], &s[end..]);
        }
        s
    } else {
        l.to_string()
    }
}

fn latex_sub(g: &FiniteGroup, h: SubId) -> String {
    let n = g.sub_name(h);
    if n == "G" {
        return match g.kind {
            GroupKind::Dihedral { m } => format!("D_{{{}}}", 2 * m),
            GroupKind::Cyclic { n } => format!("C_{{{n}}}"),
            _ => "G".into(),
        };
    }
    if let Some(k) = n.strip_prefix("mu_") {
        return format!("\\mu_{{{k}}}");
    }
    if let Some(rest) = n.strip_prefix('D') {
        let (num, tail) = rest.split_at(rest.find('[').unwrap_or(rest.len()));
        return format!("D_{{{num}}}{tail}");
    }
    if let Some(k) = n.strip_prefix('C') {
        return format!("C_{{{k}}}");
    }
    n
}

/// Ring operations needed to evaluate expressions in a Tambara functor.
pub trait TambaraInstance {
    type Elem: Clone + PartialEq + Debug;
    fn group(&self) -> &Arc<FiniteGroup>;
    fn lit(&self, l: SubId, n: i64) -> Self::Elem;
    fn add_assign(&self, l: SubId, acc: &mut Self::Elem, x: &Self::Elem);
    fn mul_assign(&self, l: SubId, acc: &mut Self::Elem, x: &Self::Elem);
    fn res(&self, k: SubId, l: SubId, x: &Self::Elem) -> Self::Elem;
    fn tr(&self, l: SubId, k: SubId, x: &Self::Elem) -> Self::Elem;
    fn norm(&self, l: SubId, k: SubId, x: &Self::Elem) -> Self::Elem;
    /// c_g: level L -> g L g^-1.
    fn conj(&self, a: Elt, l: SubId, x: &Self::Elem) -> Self::Elem;
}

/// The Burnside Tambara functor with elements stored as mark vectors.
pub struct BurnsideMarks {
    pub sys: BurnsideSystem,
}

impl BurnsideMarks {
    pub fn new(g: &Arc<FiniteGroup>) -> BurnsideMarks {
        BurnsideMarks { sys: BurnsideSystem::new(g) }
    }
    pub fn from_basis(&self, l: SubId, x: &[i128]) -> Vec<i128> {
        self.sys.level(l).to_marks(x)
    }
    pub fn to_basis(&self, l: SubId, phi: &[i128]) -> BElem {
        self.sys.level(l).from_marks(phi).expect("integral marks")
    }
}

impl TambaraInstance for BurnsideMarks {
    type Elem = Vec<i128>;
    fn group(&self) -> &Arc<FiniteGroup> {
        &self.sys.group
    }
    fn lit(&self, l: SubId, n: i64) -> Vec<i128> {
        vec![n as i128; self.sys.level(l).rank()]
    }
    fn add_assign(&self, _l: SubId, acc: &mut Vec<i128>, x: &Vec<i128>) {
        for (a, b) in acc.iter_mut().zip(x) {
            *a += b;
        }
    }
    fn mul_assign(&self, _l: SubId, acc: &mut Vec<i128>, x: &Vec<i128>) {
        for (a, b) in acc.iter_mut().zip(x) {
            *a *= b;
        }
    }
    fn res(&self, k: SubId, l: SubId, x: &Vec<i128>) -> Vec<i128> {
        let bk = self.sys.level(k);
        self.sys.level(l).classes.iter().map(|&j| x[bk.class_of(j)]).collect()
    }
    fn tr(&self, l: SubId, k: SubId, x: &Vec<i128>) -> Vec<i128> {
        let g = &self.sys.group;
        let bl = self.sys.level(l);
        let cos = g.left_coset_reps_in(k, l);
        self.sys
            .level(k)
            .classes
            .iter()
            .map(|&j| {
                cos.iter()
                    .filter_map(|&a| {
                        let ja = g.conj_sub(g.inv(a), j);
                        g.le(ja, l).then(|| x[bl.class_of(ja)])
                    })
                    .sum()
            })
            .collect()
    }
    fn norm(&self, l: SubId, k: SubId, x: &Vec<i128>) -> Vec<i128> {
        let g = &self.sys.group;
        let bl = self.sys.level(l);
        self.sys
            .level(k)
            .classes
            .iter()
            .map(|&j| {
                g.double_cosets_in(k, j, l)
                    .iter()
                    .map(|&r| x[bl.class_of(g.intersect(l, g.conj_sub(g.inv(r), j)))])
                    .product()
            })
            .collect()
    }
    fn conj(&self, a: Elt, l: SubId, x: &Vec<i128>) -> Vec<i128> {
        let g = &self.sys.group;
        let bl = self.sys.level(l);
        let l2 = g.conj_sub(a, l);
        let ai = g.inv(a);
        self.sys.level(l2).classes.iter().map(|&j| x[bl.class_of(g.conj_sub(ai, j))]).collect()
    }
}

/// The fixed-point Tambara functor of Z/n (n = 0 for Z) with trivial action:
/// res = id, tr = index, N = power by the index.
pub struct FixedPointRing {
    pub group: Arc<FiniteGroup>,
    pub modulus: i128,
}

impl FixedPointRing {
    pub fn new(g: &Arc<FiniteGroup>, modulus: i128) -> FixedPointRing {
        FixedPointRing { group: g.clone(), modulus }
    }
    pub fn reduce(&self, x: i128) -> i128 {
        if self.modulus == 0 {
            x
        } else {
            x.rem_euclid(self.modulus)
        }
    }
    pub fn pow(&self, x: i128, e: usize) -> i128 {
        (0..e).fold(self.reduce(1), |acc, _| self.reduce(acc * x))
    }
}

impl TambaraInstance for FixedPointRing {
    type Elem = i128;
    fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    fn lit(&self, _l: SubId, n: i64) -> i128 {
        self.reduce(n as i128)
    }
    fn add_assign(&self, _l: SubId, acc: &mut i128, x: &i128) {
        *acc = self.reduce(*acc + x);
    }
    fn mul_assign(&self, _l: SubId, acc: &mut i128, x: &i128) {
        *acc = self.reduce(*acc * x);
    }
    fn res(&self, _k: SubId, _l: SubId, x: &i128) -> i128 {
        *x
    }
    fn tr(&self, l: SubId, k: SubId, x: &i128) -> i128 {
        self.reduce(x * self.group.index(l, k) as i128)
    }
    fn norm(&self, l: SubId, k: SubId, x: &i128) -> i128 {
        self.pow(*x, self.group.index(l, k))
    }
    fn conj(&self, _a: Elt, _l: SubId, x: &i128) -> i128 {
        *x
    }
}

/// One summand: the orbit of a function, stored as a bitmask over right cosets
/// (bit j set when F(g_j) = b), and its stabilizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Summand {
    pub function: u32,
    pub stabilizer: SubId,
}

/// One factor N_L^K(d . res^H_{d L d^-1}(v)).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub delta: Elt,
    pub level: SubId,
    pub var: Var,
}

/// Conjugation-invariant description of a summand: the minimum over g of
/// (stabilizer g^-1 K g, sorted (min element of (H d K) g, value)).
pub type SummandKey = (SubId, Vec<(Elt, Var)>);

pub fn summand_key(g: &FiniteGroup, h: SubId, k: SubId, factors: &[(Elt, Var)]) -> SummandKey {
    let dcs: Vec<(Vec<Elt>, Var)> = factors
        .iter()
        .map(|&(d, v)| {
            let mut s = ElemSet::default();
            for &x in g.sub_elems(h) {
                for &y in g.sub_elems(k) {
                    s.insert(g.mul(g.mul(x, d), y));
                }
            }
            (s.iter().collect(), v)
        })
        .collect();
    g.elements()
        .map(|a| {
            let mut parts: Vec<(Elt, Var)> =
                dcs.iter().map(|(els, v)| (els.iter().map(|&x| g.mul(x, a)).min().unwrap(), *v)).collect();
            parts.sort();
            (g.conj_sub(g.inv(a), k), parts)
        })
        .min()
        .unwrap()
}

/// The reciprocity formula for N_H^G(a + b).
pub struct Reciprocity {
    pub group: Arc<FiniteGroup>,
    pub sub: SubId,
    pub cosets: RightCosetAction,
    pub summands: Vec<Summand>,
}

/// Bit permutations of H\G induced by right translation, by byte lookup.
struct BitActions {
    n: usize,
    tables: Vec<Vec<[u32; 256]>>,
}

impl BitActions {
    fn new(rca: &RightCosetAction) -> BitActions {
        let g = &rca.emb.dst;
        let n = rca.len();
        let nbytes = n.div_ceil(8).max(1);
        let tables = g
            .elements()
            .map(|k| {
                // (kF)_j = F_{next(k, j)}: source bit i feeds target j with next(k, j) = i.
                let mut target = vec![0usize; n];
                for j in 0..n {
                    target[rca.step(k, j).1] = j;
                }
                (0..nbytes)
                    .map(|b| {
                        let mut t = [0u32; 256];
                        for (v, slot) in t.iter_mut().enumerate() {
                            for i in 0..8 {
                                let src = 8 * b + i;
                                if src < n && v >> i & 1 == 1 {
                                    *slot |= 1 << target[src];
                                }
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        BitActions { n, tables }
    }
    #[inline]
    fn act(&self, k: Elt, f: u32) -> u32 {
        let t = &self.tables[k as usize];
        let mut out = 0;
        for (b, tb) in t.iter().enumerate() {
            out |= tb[(f >> (8 * b) & 0xff) as usize];
        }
        let _ = self.n;
        out
    }
}

impl Reciprocity {
    /// Enumerates G-orbits of Map^H(G, {a, b}).
    pub fn new(g: &Arc<FiniteGroup>, h: SubId, budget: u128) -> Result<Reciprocity> {
        let emb = g.subgroup_as_group(h);
        let rca = RightCosetAction::new(&emb);
        let n = rca.len();
        let size = coinduction_size(2, n);
        if size > budget || n > 30 {
            return Err(Error::Budget { what: "coinduction points", needed: size, limit: budget });
        }
        let acts = BitActions::new(&rca);
        let size = size as usize;
        let mut visited = vec![0u64; size.div_ceil(64)];
        let mut summands = vec![];
        for f in 0..size as u32 {
            if visited[f as usize / 64] >> (f % 64) & 1 == 1 {
                continue;
            }
            let mut stab = ElemSet::default();
            for k in g.elements() {
                let img = acts.act(k, f);
                if img == f {
                    stab.insert(k);
                }
                visited[img as usize / 64] |= 1 << (img % 64);
            }
            let k = g.sub_by_set(&stab).expect("stabilizer is a subgroup");
            let mut s = Summand { function: f, stabilizer: k };
            if g.sub_order(k) > 1 {
                // Prefer the representative whose stabilizer is the class representative.
                let rep = g.class_rep(k);
                let best = g.elements().filter(|&a| g.conj_sub(a, k) == rep).map(|a| acts.act(a, f)).min().unwrap();
                s = Summand { function: best, stabilizer: rep };
            }
            summands.push(s);
        }
        summands.sort_by_key(|s| (std::cmp::Reverse(g.sub_order(s.stabilizer)), s.function));
        Ok(Reciprocity { group: g.clone(), sub: h, cosets: rca, summands })
    }

    pub fn value_at(&self, s: &Summand, d: Elt) -> Var {
        let j = self.cosets.decompose[d as usize].0;
        if s.function >> j & 1 == 1 {
            Var::B
        } else {
            Var::A
        }
    }

    pub fn factors(&self, s: &Summand) -> Vec<Factor> {
        let g = &self.group;
        let k = s.stabilizer;
        g.double_cosets(self.sub, k)
            .iter()
            .map(|&d| Factor { delta: d, level: g.intersect(k, g.conj_sub(g.inv(d), self.sub)), var: self.value_at(s, d) })
            .collect()
    }

    pub fn key(&self, s: &Summand) -> SummandKey {
        let f: Vec<(Elt, Var)> = self.factors(s).iter().map(|f| (f.delta, f.var)).collect();
        summand_key(&self.group, self.sub, s.stabilizer, &f)
    }

    pub fn summand_expr(&self, s: &Summand) -> Expr {
        summand_expr(&self.group, self.sub, s.stabilizer, &self.factors(s))
    }

    pub fn to_expr(&self) -> Expr {
        Expr::Sum(self.summands.iter().map(|s| self.summand_expr(s)).collect())
    }

    /// Fast evaluation: factors cached per stabilizer, products accumulated per stabilizer.
    pub fn evaluate<I: TambaraInstance>(&self, inst: &I, a: &I::Elem, b: &I::Elem) -> I::Elem {
        let g = &self.group;
        let h = self.sub;
        let top = g.whole();
        // Per stabilizer: coset bit of each double coset, factor values for a and b, running sum.
        let mut per_k: HashMap<SubId, (Vec<u32>, Vec<[I::Elem; 2]>, I::Elem)> = HashMap::new();
        let mut buf: Option<I::Elem> = None;
        for s in &self.summands {
            let k = s.stabilizer;
            let entry = per_k.entry(k).or_insert_with(|| {
                let factors = self.factors(s);
                let bits = factors.iter().map(|f| self.cosets.decompose[f.delta as usize].0).collect();
                let facs = factors
                    .iter()
                    .map(|f| {
                        let lo = g.conj_sub(f.delta, f.level);
                        let one = |x: &I::Elem| {
                            let r = inst.res(h, lo, x);
                            let c = inst.conj(g.inv(f.delta), lo, &r);
                            inst.norm(f.level, k, &c)
                        };
                        [one(a), one(b)]
                    })
                    .collect();
                (bits, facs, inst.lit(k, 0))
            });
            for (i, &j) in entry.0.iter().enumerate() {
                let x = &entry.1[i][(s.function >> j & 1) as usize];
                match (&mut buf, i == 0) {
                    (Some(bf), true) => bf.clone_from(x),
                    (None, _) => buf = Some(x.clone()),
                    (Some(bf), false) => inst.mul_assign(k, bf, x),
                }
            }
            inst.add_assign(k, &mut entry.2, buf.as_ref().unwrap());
        }
        let mut total = inst.lit(top, 0);
        let mut ks: Vec<&SubId> = per_k.keys().collect();
        ks.sort();
        for k in ks {
            let t = inst.tr(*k, top, &per_k[k].2);
            inst.add_assign(top, &mut total, &t);
        }
        total
    }

    pub fn render(&self, latex: bool) -> String {
        let g = &self.group;
        let lhs = if latex {
            format!("N_{{{}}}^{{{}}}(a + b)", latex_sub(g, self.sub), latex_sub(g, g.whole()))
        } else {
            format!("N_{}^{}(a + b)", g.sub_name(self.sub), g.sub_name(g.whole()))
        };
        let terms: Vec<String> = self.summands.iter().map(|s| self.summand_expr(s).render(g, latex)).collect();
        let sep = if latex { "\\\\\n  &+ " } else { "\n  + " };
        format!("{lhs} = {}", terms.join(sep))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let g = &self.group;
        let summands: Vec<serde_json::Value> = self
            .summands
            .iter()
            .map(|s| {
                let vals: String = (0..self.cosets.len()).map(|j| if s.function >> j & 1 == 1 { 'b' } else { 'a' }).collect();
                serde_json::json!({
                    "stabilizer": g.sub_name(s.stabilizer),
                    "function": vals,
                    "text": self.summand_expr(s).render(g, false),
                })
            })
            .collect();
        serde_json::json!({
            "schema": "equivar.reciprocity/1",
            "group": crate::mackey::group_json(g),
            "subgroup": g.sub_name(self.sub),
            "coset_reps": self.cosets.reps.iter().map(|&r| g.label(r).to_string()).collect::<Vec<_>>(),
            "summands": summands,
        })
    }
}

/// tr_K^G(prod of factors) with trivial wrappers omitted.
pub fn summand_expr(g: &FiniteGroup, h: SubId, k: SubId, factors: &[Factor]) -> Expr {
    let mut parts: Vec<Expr> = factors
        .iter()
        .map(|f| {
            let lo = g.conj_sub(f.delta, f.level);
            let mut e = Expr::Var(f.var, h);
            if lo != h {
                e = Expr::Res { to: lo, arg: Box::new(e) };
            }
            if f.delta != 0 {
                e = Expr::Weyl { g: f.delta, arg: Box::new(e) };
            }
            if f.level != k {
                e = Expr::Norm { to: k, arg: Box::new(e) };
            }
            e
        })
        .collect();
    let body = if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Prod(parts) };
    if k == g.whole() {
        body
    } else {
        Expr::Tr { to: g.whole(), arg: Box::new(body) }
    }
}

/// The dihedral formula for N_{D_2}^{D_2p}(a + b) built from words: X-words are
/// nonconstant palindromic functions on rotations, Y-words are bracelets with trivial symmetry.
pub struct DihedralReciprocity {
    pub group: Arc<FiniteGroup>,
    pub p: u32,
    /// (x_0, ..., x_{(p-1)/2}).
    pub x_words: Vec<Vec<Var>>,
    /// (y_1, ..., y_p) with y_p = y(1).
    pub y_words: Vec<Vec<Var>>,
}

fn word_of(bits: u32, len: usize) -> Vec<Var> {
    (0..len).map(|i| if bits >> i & 1 == 1 { Var::B } else { Var::A }).collect()
}

impl DihedralReciprocity {
    pub fn new(p: u32) -> Result<DihedralReciprocity> {
        if p < 3 || p.is_multiple_of(2) || (2..p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Unsupported(format!("the dihedral formula needs an odd prime, got {p}")));
        }
        let g = Arc::new(FiniteGroup::dihedral(p));
        let half = (p as usize).div_ceil(2);
        let x_words: Vec<Vec<Var>> = (1..(1u32 << half) - 1).map(|bits| word_of(bits, half)).collect();
        // Words indexed by rotation i in 0..p; rotation acts by shift, reflection by i -> -i.
        let n = p as usize;
        let images = |w: u32| -> Vec<u32> {
            let mut out = vec![];
            for s in 0..n {
                for refl in [false, true] {
                    let mut v = 0u32;
                    for i in 0..n {
                        let src = if refl { (n + s - i) % n } else { (i + s) % n };
                        if w >> src & 1 == 1 {
                            v |= 1 << i;
                        }
                    }
                    out.push(v);
                }
            }
            out
        };
        let mut y_words = vec![];
        for w in 1..(1u32 << n) - 1 {
            let imgs = images(w);
            if imgs.iter().filter(|&&v| v == w).count() == 1 && imgs.iter().all(|&v| v >= w) {
                // y_i = y(z^i) for i = 1..p.
                y_words.push((1..=n).map(|i| if w >> (i % n) & 1 == 1 { Var::B } else { Var::A }).collect());
            }
        }
        Ok(DihedralReciprocity { group: g, p, x_words, y_words })
    }

    fn d2(&self) -> SubId {
        self.group.dih_sub(1)
    }

    /// Summands as (stabilizer, [(delta, value)]), constants first.
    pub fn summands(&self) -> Vec<(SubId, Vec<Factor>)> {
        let g = &self.group;
        let (d2, e, top) = (self.d2(), g.trivial(), g.whole());
        let mut out = vec![];
        for v in [Var::A, Var::B] {
            out.push((top, vec![Factor { delta: 0, level: d2, var: v }]));
        }
        for x in &self.x_words {
            let mut f = vec![Factor { delta: 0, level: d2, var: x[0] }];
            for (i, &v) in x.iter().enumerate().skip(1) {
                f.push(Factor { delta: g.dih(i as i64, 0), level: e, var: v });
            }
            out.push((d2, f));
        }
        for y in &self.y_words {
            let f = y.iter().enumerate().map(|(i, &v)| Factor { delta: g.dih(i as i64 + 1, 0), level: e, var: v }).collect();
            out.push((e, f));
        }
        out
    }

    pub fn keys(&self) -> Vec<SummandKey> {
        let g = &self.group;
        let mut ks: Vec<SummandKey> = self
            .summands()
            .iter()
            .map(|(k, f)| summand_key(g, self.d2(), *k, &f.iter().map(|x| (x.delta, x.var)).collect::<Vec<_>>()))
            .collect();
        ks.sort();
        ks
    }

    pub fn to_expr(&self) -> Expr {
        let g = &self.group;
        Expr::Sum(self.summands().iter().map(|(k, f)| summand_expr(g, self.d2(), *k, f)).collect())
    }

    pub fn render(&self, latex: bool) -> String {
        let g = &self.group;
        let terms: Vec<String> = self.summands().iter().map(|(k, f)| summand_expr(g, self.d2(), *k, f).render(g, latex)).collect();
        let lhs = if latex { format!("N_{{D_{{2}}}}^{{D_{{{}}}}}(a + b)", 2 * self.p) } else { "N_D2^G(a + b)".to_string() };
        let sep = if latex { "\\\\\n  &+ " } else { "\n  + " };
        format!("{lhs} = {}", terms.join(sep))
    }
}

/// Canonical keys of the general formula, sorted.
pub fn general_keys(r: &Reciprocity) -> Vec<SummandKey> {
    let mut ks: Vec<SummandKey> = r.summands.iter().map(|s| r.key(s)).collect();
    ks.sort();
    ks
}

/// Bound on coinduction size for the direct Burnside oracle; above it the
/// oracle falls back to the marks formula applied to a + b.
pub const DIRECT_NORM_LIMIT: u128 = 200_000;

/// N_H^G(a + b) without the reciprocity formula.
pub fn brute_force_norm_of_sum(sys: &BurnsideSystem, h: SubId, a: &[i128], b: &[i128], budget: u128) -> Result<(BElem, bool)> {
    let g = &sys.group;
    let x: Vec<i128> = a.iter().zip(b).map(|(p, q)| p + q).collect();
    let points: i128 = x.iter().zip(&sys.level(h).classes).map(|(&c, &j)| c * g.index(j, h) as i128).sum();
    let size = coinduction_size(points as usize, g.index(h, g.whole()));
    if size <= DIRECT_NORM_LIMIT.min(budget) {
        Ok((sys.norm_coinduction(h, g.whole(), &x, budget)?, true))
    } else {
        Ok((sys.norm_marks(h, g.whole(), &x), false))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub group: String,
    pub sub: String,
    pub summands: usize,
    pub burnside_pairs: usize,
    pub direct_pairs: usize,
    pub ring_checks: usize,
    pub failure: Option<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Compares the formula with direct norms on random effective pairs in the
/// Burnside functor and in the fixed-point functors of Z, Z/4, Z/6.
pub fn verify_reciprocity(g: &Arc<FiniteGroup>, h: SubId, pairs: usize, seed: u64, budget: u128) -> Result<VerifyReport> {
    let r = Reciprocity::new(g, h, budget)?;
    let bm = BurnsideMarks::new(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((g.order() as u64) << 32) ^ h as u64);
    let mut rep = VerifyReport {
        group: g.name.clone(),
        sub: g.sub_name(h),
        summands: r.summands.len(),
        burnside_pairs: 0,
        direct_pairs: 0,
        ring_checks: 0,
        failure: None,
    };
    let rank = bm.sys.level(h).rank();
    let index = g.index(h, g.whole());
    let maxc = if index >= 12 { 1 } else { 2 };
    for i in 0..pairs {
        let mut gen = || -> Vec<i128> { (0..rank).map(|_| rng.gen_range(0..=maxc)).collect() };
        let (a, b) = if i == 0 { (bm.sys.level(h).one(), bm.sys.level(h).one()) } else { (gen(), gen()) };
        let val = r.evaluate(&bm, &bm.from_basis(h, &a), &bm.from_basis(h, &b));
        let got = bm.to_basis(g.whole(), &val);
        let (want, direct) = brute_force_norm_of_sum(&bm.sys, h, &a, &b, budget)?;
        rep.burnside_pairs += 1;
        rep.direct_pairs += direct as usize;
        if got != want {
            rep.failure = Some(format!("Burnside a={a:?} b={b:?}: formula {got:?}, direct {want:?}"));
            return Ok(rep);
        }
    }
    for modulus in [0i128, 4, 6] {
        let ring = FixedPointRing::new(g, modulus);
        for _ in 0..pairs.min(8) {
            let a = ring.reduce(rng.gen_range(-3..=3));
            let b = ring.reduce(rng.gen_range(-3..=3));
            let got = r.evaluate(&ring, &a, &b);
            let want = ring.pow(a + b, index);
            rep.ring_checks += 1;
            if got != want {
                rep.failure = Some(format!("Z/{modulus} a={a} b={b}: formula {got}, direct {want}"));
                return Ok(rep);
            }
        }
    }
    Ok(rep)
}

/// The groups covered by the reciprocity suite: cyclic and dihedral groups of
/// order at most 24, and symmetric and alternating groups on at most 4 letters.
pub fn small_groups() -> Vec<Arc<FiniteGroup>> {
    let mut out = vec![];
    for n in 1..=24 {
        out.push(Arc::new(FiniteGroup::cyclic(n)));
    }
    for m in 1..=12 {
        out.push(Arc::new(FiniteGroup::dihedral(m)));
    }
    for k in 2..=4 {
        out.push(Arc::new(FiniteGroup::symmetric(k)));
        out.push(Arc::new(FiniteGroup::alternating(k)));
    }
    out
}

/// Orbit counts of Map^{D_2}(D_2p, {a, b}) by stabilizer order.
pub fn orbit_type_counts(r: &Reciprocity) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for s in &r.summands {
        *m.entry(r.group.sub_order(s.stabilizer)).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsets::DEFAULT_COINDUCTION_BUDGET;

    #[test]
    fn d6_formula_shape() {
        let g = Arc::new(FiniteGroup::dihedral(3));
        let r = Reciprocity::new(&g, g.dih_sub(1), DEFAULT_COINDUCTION_BUDGET).unwrap();
        assert_eq!(r.summands.len(), 4);
        let text = r.render(false);
        assert!(text.contains("tr_D2^D6(a * N_e^D2(z.res^D2_e(b)))"), "{text}");
        assert!(text.contains("tr_D2^D6(b * N_e^D2(z.res^D2_e(a)))"), "{text}");
    }

    #[test]
    fn b_zero_collapses() {
        let g = Arc::new(FiniteGroup::dihedral(3));
        let h = g.dih_sub(1);
        let r = Reciprocity::new(&g, h, DEFAULT_COINDUCTION_BUDGET).unwrap();
        let e = r.to_expr().with_b_zero(&g);
        assert_eq!(e, Expr::Norm { to: g.whole(), arg: Box::new(Expr::Var(Var::A, h)) });
    }

    #[test]
    fn dihedral_matches_general() {
        for p in [3, 5, 7] {
            let d = DihedralReciprocity::new(p).unwrap();
            let r = Reciprocity::new(&d.group, d.group.dih_sub(1), DEFAULT_COINDUCTION_BUDGET).unwrap();
            assert_eq!(d.keys(), general_keys(&r), "p = {p}");
        }
    }

    #[test]
    fn verify_small() {
        let g = Arc::new(FiniteGroup::dihedral(3));
        for h in g.class_reps() {
            let rep = verify_reciprocity(&g, h, 20, 7, DEFAULT_COINDUCTION_BUDGET).unwrap();
            assert!(rep.ok(), "{rep:?}");
        }
    }

    #[test]
    fn tree_and_fast_evaluation_agree() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let bm = BurnsideMarks::new(&g);
        for h in g.class_reps() {
            let r = Reciprocity::new(&g, h, DEFAULT_COINDUCTION_BUDGET).unwrap();
            let e = r.to_expr();
            e.check(&g).unwrap();
            let a = bm.from_basis(h, &bm.sys.level(h).one());
            let b = bm.lit(h, 2);
            assert_eq!(e.evaluate(&bm, &a, &b), r.evaluate(&bm, &a, &b));
        }
    }
}

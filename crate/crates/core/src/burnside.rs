//! Burnside rings of all subgroups of a finite group, via tables of marks,
//! with restriction, transfer, conjugation and norm; spans of G-sets.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{Elt, FiniteGroup, GroupHom, SubId};
use crate::gsets::{coinduce_orbits, GSet};

pub type BElem = Vec<i128>;

/// The Burnside ring A(K) of a subgroup K, on K-classes of subgroups of K.
#[derive(Clone, Debug)]
pub struct LocalBurnside {
    pub level: SubId,
    /// Class representatives (minimal in their K-class), ordered by (order, id).
    pub classes: Vec<SubId>,
    /// Class index of every subgroup of the ambient group lying in K.
    class_index: Vec<usize>,
    /// marks[i][j] = |(K/J_i)^{J_j}|.
    pub marks: Vec<Vec<i128>>,
}

impl LocalBurnside {
    pub fn new(g: &FiniteGroup, k: SubId) -> LocalBurnside {
        let mut classes = g.local_class_reps(k);
        classes.sort_by_key(|&j| (g.sub_order(j), j));
        let mut class_index = vec![usize::MAX; g.num_subgroups()];
        for &j in g.subgroups_of(k) {
            let r = g.local_rep(k, j);
            class_index[j] = classes.iter().position(|&c| c == r).unwrap();
        }
        let kel = g.sub_elems(k);
        let marks = classes
            .iter()
            .map(|&ji| {
                classes
                    .iter()
                    .map(|&jj| {
                        let c = kel.iter().filter(|&&x| g.le(g.conj_sub(g.inv(x), jj), ji)).count();
                        (c / g.sub_order(ji)) as i128
                    })
                    .collect()
            })
            .collect();
        LocalBurnside { level: k, classes, class_index, marks }
    }
    pub fn rank(&self) -> usize {
        self.classes.len()
    }
    pub fn class_of(&self, j: SubId) -> usize {
        let c = self.class_index[j];
        assert!(c != usize::MAX, "subgroup {j} is not contained in level {}", self.level);
        c
    }
    pub fn contains(&self, j: SubId) -> bool {
        self.class_index[j] != usize::MAX
    }
    pub fn basis(&self, j: SubId) -> BElem {
        let mut v = vec![0; self.rank()];
        v[self.class_of(j)] = 1;
        v
    }
    pub fn one(&self) -> BElem {
        self.basis(self.level)
    }
    pub fn zero(&self) -> BElem {
        vec![0; self.rank()]
    }
    pub fn from_int(&self, n: i128) -> BElem {
        let mut v = self.one();
        let i = self.class_of(self.level);
        v[i] = n;
        v
    }
    pub fn to_marks(&self, x: &[i128]) -> Vec<i128> {
        (0..self.rank())
            .map(|j| x.iter().enumerate().map(|(i, &c)| c * self.marks[i][j]).sum())
            .collect()
    }
    pub fn from_marks(&self, phi: &[i128]) -> Result<BElem> {
        let n = self.rank();
        let mut x = vec![0i128; n];
        for j in (0..n).rev() {
            let mut r = phi[j];
            for i in j + 1..n {
                r -= x[i] * self.marks[i][j];
            }
            let d = self.marks[j][j];
            if r % d != 0 {
                return Err(Error::NotWellDefined(format!("mark vector {phi:?} is not in the image of the mark map")));
            }
            x[j] = r / d;
        }
        Ok(x)
    }
    pub fn mul(&self, a: &[i128], b: &[i128]) -> BElem {
        let (pa, pb) = (self.to_marks(a), self.to_marks(b));
        let p: Vec<i128> = pa.iter().zip(&pb).map(|(x, y)| x * y).collect();
        self.from_marks(&p).expect("product of marks is a mark vector")
    }
    /// The mark of x at an arbitrary subgroup j of K.
    pub fn mark_at(&self, x: &[i128], j: SubId) -> i128 {
        let c = self.class_of(j);
        x.iter().enumerate().map(|(i, &a)| a * self.marks[i][c]).sum()
    }
}

pub fn badd(a: &[i128], b: &[i128]) -> BElem {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
pub fn bsub(a: &[i128], b: &[i128]) -> BElem {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
pub fn bscale(a: &[i128], k: i128) -> BElem {
    a.iter().map(|x| x * k).collect()
}

/// Burnside rings of every subgroup of G with the Mackey and norm structure.
#[derive(Clone, Debug)]
pub struct BurnsideSystem {
    pub group: Arc<FiniteGroup>,
    pub levels: Vec<LocalBurnside>,
}

impl BurnsideSystem {
    pub fn new(group: &Arc<FiniteGroup>) -> BurnsideSystem {
        let levels = (0..group.num_subgroups()).map(|k| LocalBurnside::new(group, k)).collect();
        BurnsideSystem { group: group.clone(), levels }
    }
    pub fn level(&self, k: SubId) -> &LocalBurnside {
        &self.levels[k]
    }
    pub fn top(&self) -> &LocalBurnside {
        &self.levels[self.group.whole()]
    }

    /// res^K_L: [K/J] -> sum over L\K/J of [L/(L cap g J g^-1)].
    pub fn res(&self, k: SubId, l: SubId, x: &[i128]) -> BElem {
        let g = &self.group;
        assert!(g.le(l, k));
        let (bk, bl) = (&self.levels[k], &self.levels[l]);
        let mut out = bl.zero();
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let j = bk.classes[i];
            for &r in g.double_cosets_in(k, l, j).iter() {
                out[bl.class_of(g.intersect(l, g.conj_sub(r, j)))] += c;
            }
        }
        out
    }

    /// tr_L^K: [L/J] -> [K/J].
    pub fn tr(&self, l: SubId, k: SubId, x: &[i128]) -> BElem {
        assert!(self.group.le(l, k));
        let (bl, bk) = (&self.levels[l], &self.levels[k]);
        let mut out = bk.zero();
        for (i, &c) in x.iter().enumerate() {
            out[bk.class_of(bl.classes[i])] += c;
        }
        out
    }

    /// c_g: A(L) -> A(g L g^-1).
    pub fn conj(&self, gel: Elt, l: SubId, x: &[i128]) -> BElem {
        let g = &self.group;
        let l2 = g.conj_sub(gel, l);
        let (bl, bl2) = (&self.levels[l], &self.levels[l2]);
        let mut out = bl2.zero();
        for (i, &c) in x.iter().enumerate() {
            out[bl2.class_of(g.conj_sub(gel, bl.classes[i]))] += c;
        }
        out
    }

    /// The multiplicative transfer N_L^K through the marks formula
    /// phi_J(N x) = prod over J\K/L of phi_{L cap g^-1 J g}(x).
    pub fn norm_marks(&self, l: SubId, k: SubId, x: &[i128]) -> BElem {
        let g = &self.group;
        assert!(g.le(l, k));
        let (bl, bk) = (&self.levels[l], &self.levels[k]);
        let phi: Vec<i128> = bk
            .classes
            .iter()
            .map(|&j| {
                g.double_cosets_in(k, j, l)
                    .iter()
                    .map(|&r| bl.mark_at(x, g.intersect(l, g.conj_sub(g.inv(r), j))))
                    .product()
            })
            .collect();
        bk.from_marks(&phi).expect("norm marks are integral")
    }

    /// The multiplicative transfer by enumerating Map^L(K, X) for an effective x.
    pub fn norm_coinduction(&self, l: SubId, k: SubId, x: &[i128], budget: u128) -> Result<BElem> {
        if x.iter().any(|&c| c < 0) {
            return Err(Error::NotEffective);
        }
        let g = &self.group;
        let kinc = g.subgroup_as_group(k);
        let kg = kinc.src.clone();
        let linc = g.subgroup_as_group(l);
        let kinv = kinc.partial_inverse();
        let emb = GroupHom { src: linc.src.clone(), dst: kg.clone(), map: linc.map.iter().map(|&e| kinv[e as usize]).collect() };
        let bl = &self.levels[l];
        let mut orbits = vec![];
        for (i, &c) in x.iter().enumerate() {
            orbits.extend(std::iter::repeat_n(linc.preimage_sub(bl.classes[i]), c as usize));
        }
        let xs = GSet::from_orbits(&linc.src, &orbits);
        let bk = &self.levels[k];
        let mut out = bk.zero();
        for o in coinduce_orbits(&emb, &xs, budget)? {
            out[bk.class_of(kinc.image_sub(o.stabilizer))] += 1;
        }
        Ok(out)
    }

    /// Class of a G-set in A(G).
    pub fn class_of_gset(&self, x: &GSet) -> BElem {
        let top = self.top();
        let mut v = top.zero();
        for o in x.orbits() {
            v[top.class_of(o.stabilizer)] += 1;
        }
        v
    }

    /// Product by forming the product G-set of effective elements.
    pub fn mul_bruteforce(&self, a: &[i128], b: &[i128]) -> Result<BElem> {
        let to_set = |x: &[i128]| -> Result<GSet> {
            let mut orbits = vec![];
            for (i, &c) in x.iter().enumerate() {
                if c < 0 {
                    return Err(Error::NotEffective);
                }
                orbits.extend(std::iter::repeat_n(self.top().classes[i], c as usize));
            }
            Ok(GSet::from_orbits(&self.group, &orbits))
        };
        Ok(self.class_of_gset(&to_set(a)?.product(&to_set(b)?)))
    }

    pub fn format(&self, k: SubId, x: &[i128]) -> String {
        let g = &self.group;
        let b = &self.levels[k];
        let outer = if k == g.whole() { "G".to_string() } else { g.sub_name(k) };
        let mut terms = vec![];
        for i in (0..x.len()).rev() {
            let c = x[i];
            if c == 0 {
                continue;
            }
            let j = b.classes[i];
            let t = if j == k {
                c.to_string()
            } else if c == 1 {
                format!("[{outer}/{}]", g.sub_name(j))
            } else {
                format!("{c}[{outer}/{}]", g.sub_name(j))
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }

    /// Parses expressions such as `2[G/D2] - [G/mu_3] + 1` at level k.
    pub fn parse(&self, k: SubId, s: &str) -> Result<BElem> {
        let g = &self.group;
        let b = &self.levels[k];
        let mut out = b.zero();
        let src = s.replace(' ', "");
        let err = || Error::Parse(format!("cannot parse Burnside element '{s}'"));
        let mut rest = src.as_str();
        if rest.is_empty() {
            return Err(err());
        }
        while !rest.is_empty() {
            let mut sign = 1i128;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                sign = -1;
            }
            let digits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let coef: Option<i128> = if digits > 0 { Some(rest[..digits].parse().map_err(|_| err())?) } else { None };
            rest = &rest[digits..];
            rest = rest.strip_prefix('*').unwrap_or(rest);
            if let Some(r) = rest.strip_prefix('[') {
                let close = r.find(']').ok_or_else(err)?;
                let inner = &r[..close];
                let slash = inner.find('/').ok_or_else(err)?;
                let j = g.parse_sub(&inner[slash + 1..])?;
                if !g.le(j, k) {
                    return Err(Error::Parse(format!("{} is not below level {}", g.sub_name(j), g.sub_name(k))));
                }
                out[b.class_of(j)] += sign * coef.unwrap_or(1);
                rest = &r[close + 1..];
            } else {
                let c = coef.ok_or_else(err)?;
                out[b.class_of(k)] += sign * c;
            }
        }
        Ok(out)
    }
}

/// A span X <- G/K -> Y recorded by (K, x, y), minimized over conjugation.
pub type SpanKey = (SubId, u32, u32);

/// A virtual span between G-sets.
#[derive(Clone, Debug)]
pub struct SpanHom {
    pub source: GSet,
    pub target: GSet,
    pub terms: BTreeMap<SpanKey, i64>,
}

impl SpanHom {
    pub fn zero(source: &GSet, target: &GSet) -> SpanHom {
        SpanHom { source: source.clone(), target: target.clone(), terms: BTreeMap::new() }
    }

    fn canon(&self, key: SpanKey) -> SpanKey {
        let g = &self.source.group;
        let (k, x, y) = key;
        g.elements().map(|a| (g.conj_sub(a, k), self.source.act(a, x), self.target.act(a, y))).min().unwrap()
    }

    pub fn add_term(&mut self, k: SubId, x: u32, y: u32, c: i64) -> Result<()> {
        if !self.source.is_fixed_by(k, x) || !self.target.is_fixed_by(k, y) {
            return Err(Error::NotEquivariant("span legs are not equivariant".into()));
        }
        let key = self.canon((k, x, y));
        let e = self.terms.entry(key).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn identity(x: &GSet) -> SpanHom {
        let mut s = SpanHom::zero(x, x);
        for o in x.orbits() {
            s.add_term(o.stabilizer, o.rep, o.rep, 1).unwrap();
        }
        s
    }

    /// X <- X -> Y along f.
    pub fn transfer_along(f: &crate::gsets::GMap) -> SpanHom {
        let mut s = SpanHom::zero(&f.source, &f.target);
        for o in f.source.orbits() {
            s.add_term(o.stabilizer, o.rep, f.apply(o.rep), 1).unwrap();
        }
        s
    }

    /// Y <- X -> X along f.
    pub fn restriction_along(f: &crate::gsets::GMap) -> SpanHom {
        let mut s = SpanHom::zero(&f.target, &f.source);
        for o in f.source.orbits() {
            s.add_term(o.stabilizer, f.apply(o.rep), o.rep, 1).unwrap();
        }
        s
    }

    pub fn add(&self, other: &SpanHom) -> SpanHom {
        let mut s = self.clone();
        for (&(k, x, y), &c) in &other.terms {
            s.add_term(k, x, y, c).unwrap();
        }
        s
    }

    /// `other` after `self` (self: X -> Y, other: Y -> Z), by pullback.
    pub fn then(&self, other: &SpanHom) -> Result<SpanHom> {
        if self.target.len() != other.source.len() {
            return Err(Error::Dimension("spans are not composable".into()));
        }
        let g = &self.source.group;
        let mut out = SpanHom::zero(&self.source, &other.target);
        for (&(k, x, y), &c1) in &self.terms {
            for (&(l, y2, z), &c2) in &other.terms {
                // Cosets bL with b.y2 = y, up to the action of K.
                let cos: Vec<Elt> = g.left_coset_reps(l).into_iter().filter(|&b| other.source.act(b, y2) == y).collect();
                let mut seen = vec![false; cos.len()];
                for i in 0..cos.len() {
                    if seen[i] {
                        continue;
                    }
                    for &a in g.sub_elems(k) {
                        let ab = g.mul(a, cos[i]);
                        if let Some(p) = cos.iter().position(|&b| g.sub_contains(l, g.mul(g.inv(b), ab))) {
                            seen[p] = true;
                        }
                    }
                    let b = cos[i];
                    let st = g.intersect(k, g.conj_sub(b, l));
                    out.add_term(st, x, other.target.act(b, z), c1 * c2)?;
                }
            }
        }
        Ok(out)
    }
}

/// c_p = 2^((p-1)/2) - 1 and d_p = (2^(p-1) - 1)/p - c_p for an odd prime p:
/// N_{D_2}^{D_2p}(2) = 2 + 2 c_p [D_2p/D_2] + d_p [D_2p].
pub fn c_p_d_p(p: u32) -> Result<(u64, u64)> {
    if p < 3 || p.is_multiple_of(2) || (2..p).any(|d| p.is_multiple_of(d)) || p > 61 {
        return Err(Error::Unsupported(format!("c_p, d_p need an odd prime below 64, got {p}")));
    }
    let c = (1u64 << ((p - 1) / 2)) - 1;
    let free = ((1u64 << (p - 1)) - 1) / p as u64;
    Ok((c, free - c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsets::GMap;

    #[test]
    fn d6_products() {
        let g = Arc::new(FiniteGroup::dihedral(3));
        let b = BurnsideSystem::new(&g);
        let top = b.top();
        let d2 = top.basis(g.dih_sub(1));
        let mu = top.basis(g.mu(3));
        let p = top.mul(&d2, &mu);
        assert_eq!(p, top.basis(0));
        assert_eq!(b.mul_bruteforce(&d2, &mu).unwrap(), p);
        let p2 = top.mul(&d2, &d2);
        assert_eq!(b.format(g.whole(), &p2), "[G/D2] + [G/e]");
    }

    #[test]
    fn norm_routes_agree_d6() {
        let g = Arc::new(FiniteGroup::dihedral(3));
        let b = BurnsideSystem::new(&g);
        let d2 = g.dih_sub(1);
        let x = b.level(d2).basis(0);
        let a = b.norm_marks(d2, g.whole(), &x);
        let c = b.norm_coinduction(d2, g.whole(), &x, 1 << 20).unwrap();
        assert_eq!(a, c);
        assert_eq!(b.format(g.whole(), &a), "[G/mu_3] + [G/e]");
    }

    #[test]
    fn parse_roundtrip() {
        let g = Arc::new(FiniteGroup::dihedral(5));
        let b = BurnsideSystem::new(&g);
        let x = b.parse(g.whole(), "2[G/D2] - [G/mu_5] + 3").unwrap();
        assert_eq!(b.parse(g.whole(), &b.format(g.whole(), &x)).unwrap(), x);
    }

    #[test]
    fn transfer_then_restriction_span() {
        let g = Arc::new(FiniteGroup::dihedral(1));
        let free = GSet::cosets(&g, 0);
        let pt = GSet::point(&g);
        let f = GMap::new(&free, &pt, vec![0, 0]).unwrap();
        let tr = SpanHom::transfer_along(&f);
        let res = SpanHom::restriction_along(&f);
        let comp = tr.then(&res).unwrap();
        let flip = {
            let mut s = SpanHom::zero(&free, &free);
            s.add_term(0, 0, 1, 1).unwrap();
            s
        };
        let want = SpanHom::identity(&free).add(&flip);
        assert_eq!(comp.terms, want.terms);
        let back = res.then(&tr).unwrap();
        assert_eq!(back.terms.len(), 1);
        assert_eq!(*back.terms.values().next().unwrap(), 1);
    }
}

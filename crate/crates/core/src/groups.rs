//! Finite groups stored as multiplication tables, with a lazily built
//! subgroup lattice, conjugation tables, double cosets and quotients.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub type Elt = u32;
pub type SubId = usize;

/// Largest group whose subgroup lattice may be enumerated by default.
pub const DEFAULT_GROUP_BUDGET: usize = 200;
const SET_WORDS: usize = 4;
/// Hard cap imposed by the bitset width.
pub const MAX_LATTICE_ORDER: usize = 64 * SET_WORDS;

/// A set of group elements as a fixed-width bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet([u64; SET_WORDS]);

impl ElemSet {
    pub fn insert(&mut self, x: Elt) {
        self.0[(x / 64) as usize] |= 1u64 << (x % 64);
    }
    pub fn contains(&self, x: Elt) -> bool {
        self.0[(x / 64) as usize] >> (x % 64) & 1 == 1
    }
    pub fn and(&self, other: &ElemSet) -> ElemSet {
        let mut r = [0u64; SET_WORDS];
        for (i, w) in r.iter_mut().enumerate() {
            *w = self.0[i] & other.0[i];
        }
        ElemSet(r)
    }
    pub fn is_subset(&self, other: &ElemSet) -> bool {
        (0..SET_WORDS).all(|i| self.0[i] & !other.0[i] == 0)
    }
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn iter(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..SET_WORDS).flat_map(move |i| {
            let w = self.0[i];
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| (i * 64 + b) as Elt)
        })
    }
    pub fn from_elems(xs: impl IntoIterator<Item = Elt>) -> ElemSet {
        let mut s = ElemSet::default();
        for x in xs {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// D_{2m}: elements (i mod m, eps) with (i,a)(j,b) = (i + (-1)^a j, a+b).
    Dihedral { m: u32 },
    Cyclic { n: u32 },
    Perm { degree: usize, generators: Vec<Vec<usize>> },
    Table,
}

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elems: Vec<Elt>,
    pub set: ElemSet,
    pub gens: Vec<Elt>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elems.len()
    }
}

#[derive(Debug)]
pub struct SubgroupLattice {
    pub subs: Vec<Subgroup>,
    index: HashMap<ElemSet, SubId>,
    conj: Vec<SubId>,
    pub class_of: Vec<usize>,
    /// Conjugacy classes; `classes[c][0]` is the canonical representative.
    pub classes: Vec<Vec<SubId>>,
    normalizer: Vec<SubId>,
    below: Vec<Vec<SubId>>,
}

pub struct FiniteGroup {
    pub kind: GroupKind,
    pub name: String,
    n: usize,
    mul: Vec<Elt>,
    inv: Vec<Elt>,
    labels: Vec<String>,
    lattice: OnceLock<SubgroupLattice>,
    dc_cache: std::sync::Mutex<HashMap<(SubId, SubId, SubId), Arc<Vec<Elt>>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.n)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.mul == other.mul
    }
}

fn check_table(n: usize, mul: &[Elt]) -> Result<Vec<Elt>> {
    if n == 0 || mul.len() != n * n {
        return Err(Error::InvalidAction("multiplication table has wrong size".into()));
    }
    for a in 0..n {
        if mul[a] as usize != a || mul[a * n] as usize != a {
            return Err(Error::InvalidAction("element 0 is not the identity".into()));
        }
    }
    let mut inv = vec![u32::MAX; n];
    for a in 0..n {
        for b in 0..n {
            if mul[a * n + b] == 0 {
                inv[a] = b as Elt;
            }
        }
        if inv[a] == u32::MAX {
            return Err(Error::InvalidAction(format!("element {a} has no inverse")));
        }
    }
    Ok(inv)
}

impl FiniteGroup {
    fn build(kind: GroupKind, name: String, n: usize, mul: Vec<Elt>, labels: Vec<String>) -> Result<FiniteGroup> {
        let inv = check_table(n, &mul)?;
        Ok(FiniteGroup {
            kind,
            name,
            n,
            mul,
            inv,
            labels,
            lattice: OnceLock::new(),
            dc_cache: Default::default(),
        })
    }

    /// The dihedral group D_{2m} of order 2m, generated by z = (1,0) and t = (0,1).
    pub fn dihedral(m: u32) -> FiniteGroup {
        assert!(m >= 1, "dihedral group needs m >= 1");
        let mm = m as usize;
        let n = 2 * mm;
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (i, e) = (a % mm, a / mm);
                let (j, d) = (b % mm, b / mm);
                let k = if e == 0 { (i + j) % mm } else { (i + mm - j) % mm };
                mul[a * n + b] = (((e + d) % 2) * mm + k) as Elt;
            }
        }
        let labels = (0..n)
            .map(|a| {
                let (i, e) = (a % mm, a / mm);
                let r = match i {
                    0 => String::new(),
                    1 => "z".to_string(),
                    _ => format!("z^{i}"),
                };
                match (r.is_empty(), e) {
                    (true, 0) => "1".to_string(),
                    (_, 0) => r,
                    (_, _) => format!("{r}t"),
                }
            })
            .collect();
        FiniteGroup::build(GroupKind::Dihedral { m }, format!("D{}", 2 * m), n, mul, labels).unwrap()
    }

    pub fn cyclic(n: u32) -> FiniteGroup {
        assert!(n >= 1);
        let nn = n as usize;
        let mul = (0..nn * nn).map(|x| ((x / nn + x % nn) % nn) as Elt).collect();
        let labels = (0..nn)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        FiniteGroup::build(GroupKind::Cyclic { n }, format!("C{n}"), nn, mul, labels).unwrap()
    }

    /// The permutation group generated by `gens` (images of 0..degree).
    pub fn from_permutations(name: &str, degree: usize, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidAction(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut q = VecDeque::from([0usize]);
        while let Some(a) = q.pop_front() {
            for g in gens {
                let p: Vec<usize> = (0..degree).map(|x| g[elems[a][x]]).collect();
                if !index.contains_key(&p) {
                    if elems.len() >= MAX_LATTICE_ORDER * 64 {
                        return Err(Error::Budget { what: "group order", needed: elems.len() as u128, limit: (MAX_LATTICE_ORDER * 64) as u128 });
                    }
                    index.insert(p.clone(), elems.len());
                    q.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut mul = vec![0; n * n];
        // (ab)(x) = a(b(x)).
        for a in 0..n {
            for b in 0..n {
                let p: Vec<usize> = (0..degree).map(|x| elems[a][elems[b][x]]).collect();
                mul[a * n + b] = index[&p] as Elt;
            }
        }
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        FiniteGroup::build(
            GroupKind::Perm { degree, generators: gens.to_vec() },
            name.to_string(),
            n,
            mul,
            labels,
        )
    }

    pub fn symmetric(k: usize) -> FiniteGroup {
        let mut gens = vec![];
        if k >= 2 {
            let mut sw: Vec<usize> = (0..k).collect();
            sw.swap(0, 1);
            gens.push(sw);
            let cyc: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
            gens.push(cyc);
        }
        FiniteGroup::from_permutations(&format!("S{k}"), k, &gens).unwrap()
    }

    pub fn alternating(k: usize) -> FiniteGroup {
        let mut gens = vec![];
        for i in 2..k {
            let mut p: Vec<usize> = (0..k).collect();
            p[0] = 1;
            p[1] = i;
            p[i] = 0;
            gens.push(p);
        }
        FiniteGroup::from_permutations(&format!("A{k}"), k.max(1), &gens).unwrap()
    }

    /// A group from an explicit table; element 0 must be the identity.
    pub fn from_table(name: &str, n: usize, mul: Vec<Elt>, labels: Option<Vec<String>>) -> Result<FiniteGroup> {
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("x{i}")).collect());
        let g = FiniteGroup::build(GroupKind::Table, name.to_string(), n, mul, labels)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (a, b, c) = (a as Elt, b as Elt, c as Elt);
                    if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::InvalidAction("table is not associative".into()));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.mul[a as usize * self.n + b as usize]
    }
    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        self.inv[a as usize]
    }
    /// g x g^-1
    #[inline]
    pub fn conj_elt(&self, g: Elt, x: Elt) -> Elt {
        self.mul(self.mul(g, x), self.inv(g))
    }
    pub fn label(&self, a: Elt) -> &str {
        &self.labels[a as usize]
    }
    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        0..self.n as Elt
    }
    pub fn elt_order(&self, a: Elt) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn dihedral_m(&self) -> Option<u32> {
        match self.kind {
            GroupKind::Dihedral { m } => Some(m),
            _ => None,
        }
    }

    /// z^i t^e in D_{2m}.
    pub fn dih(&self, i: i64, e: u32) -> Elt {
        let m = self.dihedral_m().expect("not a dihedral group") as i64;
        (e as i64 * m + i.rem_euclid(m)) as Elt
    }

    /// Subgroup closure of a list of elements.
    pub fn closure(&self, gens: &[Elt]) -> Vec<Elt> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0];
        let mut q = VecDeque::from([0 as Elt]);
        while let Some(x) = q.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                    q.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn try_lattice(&self, budget: usize) -> Result<&SubgroupLattice> {
        if self.lattice.get().is_none() && (self.n > budget || self.n > MAX_LATTICE_ORDER) {
            return Err(Error::Budget {
                what: "subgroup enumeration (group order)",
                needed: self.n as u128,
                limit: budget.min(MAX_LATTICE_ORDER) as u128,
            });
        }
        Ok(self.lattice.get_or_init(|| self.build_lattice()))
    }

    /// The subgroup lattice. Panics if the group exceeds the bitset width.
    pub fn lattice(&self) -> &SubgroupLattice {
        self.try_lattice(MAX_LATTICE_ORDER).expect("group too large for subgroup enumeration")
    }

    fn build_lattice(&self) -> SubgroupLattice {
        let n = self.n;
        let mut found: HashMap<ElemSet, Subgroup> = HashMap::new();
        let triv = Subgroup { elems: vec![0], set: ElemSet::from_elems([0]), gens: vec![] };
        found.insert(triv.set, triv.clone());
        let mut q = VecDeque::from([triv]);
        while let Some(s) = q.pop_front() {
            for g in 0..n as Elt {
                if s.set.contains(g) {
                    continue;
                }
                let mut gens = s.gens.clone();
                gens.push(g);
                let elems = self.closure(&gens);
                let set = ElemSet::from_elems(elems.iter().copied());
                if let std::collections::hash_map::Entry::Vacant(e) = found.entry(set) {
                    let sub = Subgroup { elems, set, gens };
                    e.insert(sub.clone());
                    q.push_back(sub);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found.into_values().collect();
        subs.sort_by(|a, b| (a.order(), &a.elems).cmp(&(b.order(), &b.elems)));
        let index: HashMap<ElemSet, SubId> = subs.iter().enumerate().map(|(i, s)| (s.set, i)).collect();
        let ns = subs.len();
        let mut conj = vec![0; n * ns];
        for g in 0..n as Elt {
            for (i, s) in subs.iter().enumerate() {
                let set = ElemSet::from_elems(s.elems.iter().map(|&x| self.conj_elt(g, x)));
                conj[g as usize * ns + i] = index[&set];
            }
        }
        let mut class_of = vec![usize::MAX; ns];
        let mut classes = vec![];
        for i in 0..ns {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members: Vec<SubId> = (0..n).map(|g| conj[g * ns + i]).collect();
            members.sort_unstable();
            members.dedup();
            for &j in &members {
                class_of[j] = classes.len();
            }
            classes.push(members);
        }
        let normalizer = (0..ns)
            .map(|i| {
                let els = (0..n).filter(|&g| conj[g * ns + i] == i).map(|g| g as Elt);
                index[&ElemSet::from_elems(els)]
            })
            .collect();
        let below = (0..ns)
            .map(|h| (0..=h).filter(|&k| subs[k].set.is_subset(&subs[h].set)).collect())
            .collect();
        SubgroupLattice { subs, index, conj, class_of, classes, normalizer, below }
    }

    pub fn num_subgroups(&self) -> usize {
        self.lattice().subs.len()
    }
    pub fn sub(&self, h: SubId) -> &Subgroup {
        &self.lattice().subs[h]
    }
    pub fn sub_order(&self, h: SubId) -> usize {
        self.lattice().subs[h].elems.len()
    }
    pub fn sub_elems(&self, h: SubId) -> &[Elt] {
        &self.lattice().subs[h].elems
    }
    pub fn sub_contains(&self, h: SubId, x: Elt) -> bool {
        self.lattice().subs[h].set.contains(x)
    }
    pub fn sub_by_set(&self, s: &ElemSet) -> Option<SubId> {
        self.lattice().index.get(s).copied()
    }
    /// The subgroup whose elements are exactly `elems`.
    pub fn sub_from_elems(&self, elems: &[Elt]) -> Result<SubId> {
        self.sub_by_set(&ElemSet::from_elems(elems.iter().copied()))
            .ok_or_else(|| Error::NotSubgroup(format!("{elems:?} in {}", self.name)))
    }
    pub fn generated(&self, gens: &[Elt]) -> SubId {
        let els = self.closure(gens);
        self.sub_from_elems(&els).unwrap()
    }
    pub fn trivial(&self) -> SubId {
        0
    }
    pub fn whole(&self) -> SubId {
        self.num_subgroups() - 1
    }
    /// g h g^-1
    #[inline]
    pub fn conj_sub(&self, g: Elt, h: SubId) -> SubId {
        let l = self.lattice();
        l.conj[g as usize * l.subs.len() + h]
    }
    pub fn le(&self, k: SubId, h: SubId) -> bool {
        let l = self.lattice();
        l.subs[k].set.is_subset(&l.subs[h].set)
    }
    pub fn intersect(&self, a: SubId, b: SubId) -> SubId {
        let l = self.lattice();
        l.index[&l.subs[a].set.and(&l.subs[b].set)]
    }
    /// All subgroups contained in h, ascending.
    pub fn subgroups_of(&self, h: SubId) -> &[SubId] {
        &self.lattice().below[h]
    }
    pub fn normalizer(&self, h: SubId) -> SubId {
        self.lattice().normalizer[h]
    }
    pub fn is_normal(&self, h: SubId) -> bool {
        self.normalizer(h) == self.whole()
    }
    pub fn index(&self, k: SubId, h: SubId) -> usize {
        self.sub_order(h) / self.sub_order(k)
    }
    pub fn class_of(&self, h: SubId) -> usize {
        self.lattice().class_of[h]
    }
    pub fn class_rep(&self, h: SubId) -> SubId {
        let l = self.lattice();
        l.classes[l.class_of[h]][0]
    }
    /// Canonical representatives of the conjugacy classes, ordered by (order, rep).
    pub fn class_reps(&self) -> Vec<SubId> {
        self.lattice().classes.iter().map(|c| c[0]).collect()
    }
    /// Representatives of the h-conjugacy classes of subgroups of h.
    pub fn local_class_reps(&self, h: SubId) -> Vec<SubId> {
        self.subgroups_of(h).iter().copied().filter(|&k| self.local_rep(h, k) == k).collect()
    }
    /// The minimal h-conjugate of k (k <= h).
    pub fn local_rep(&self, h: SubId, k: SubId) -> SubId {
        self.sub_elems(h).iter().map(|&x| self.conj_sub(x, k)).min().unwrap()
    }

    /// Representatives (minimal elements) of the double cosets k \ amb / h, for k, h <= amb.
    pub fn double_cosets_in(&self, amb: SubId, k: SubId, h: SubId) -> Arc<Vec<Elt>> {
        if let Some(v) = self.dc_cache.lock().unwrap().get(&(amb, k, h)) {
            return v.clone();
        }
        let mut seen = vec![false; self.n];
        let mut reps = vec![];
        let (ke, he) = (self.sub_elems(k), self.sub_elems(h));
        for &g in self.sub_elems(amb) {
            if seen[g as usize] {
                continue;
            }
            reps.push(g);
            for &a in ke {
                let ag = self.mul(a, g);
                for &b in he {
                    seen[self.mul(ag, b) as usize] = true;
                }
            }
        }
        let v = Arc::new(reps);
        self.dc_cache.lock().unwrap().insert((amb, k, h), v.clone());
        v
    }
    pub fn double_cosets(&self, k: SubId, h: SubId) -> Arc<Vec<Elt>> {
        self.double_cosets_in(self.whole(), k, h)
    }

    /// Minimal representatives of the left cosets g h inside amb.
    pub fn left_coset_reps_in(&self, amb: SubId, h: SubId) -> Vec<Elt> {
        self.double_cosets_in(amb, self.trivial(), h).to_vec()
    }
    pub fn left_coset_reps(&self, h: SubId) -> Vec<Elt> {
        self.left_coset_reps_in(self.whole(), h)
    }
    /// Minimal representatives of the right cosets h g.
    pub fn right_coset_reps(&self, h: SubId) -> Vec<Elt> {
        self.double_cosets_in(self.whole(), h, self.trivial()).to_vec()
    }

    /// The subgroup h as a group in its own right, with its inclusion.
    pub fn subgroup_as_group(self: &Arc<Self>, h: SubId) -> GroupHom {
        let elems = self.sub_elems(h).to_vec();
        let pos: HashMap<Elt, Elt> = elems.iter().enumerate().map(|(i, &x)| (x, i as Elt)).collect();
        let k = elems.len();
        let mut mul = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                mul[a * k + b] = pos[&self.mul(elems[a], elems[b])];
            }
        }
        let labels = elems.iter().map(|&x| self.label(x).to_string()).collect();
        let name = format!("{}<{}", self.sub_name(h), self.name);
        let sg = FiniteGroup::build(GroupKind::Table, name, k, mul, labels).unwrap();
        GroupHom { src: Arc::new(sg), dst: self.clone(), map: elems }
    }

    /// G/N for a normal subgroup N, as a table group with projection.
    pub fn quotient(self: &Arc<Self>, nsub: SubId) -> Result<GroupHom> {
        if !self.is_normal(nsub) {
            return Err(Error::NotNormal(self.sub_name(nsub)));
        }
        let reps = self.left_coset_reps(nsub);
        let mut proj = vec![0; self.n];
        for (i, &r) in reps.iter().enumerate() {
            for &x in self.sub_elems(nsub) {
                proj[self.mul(r, x) as usize] = i as Elt;
            }
        }
        let k = reps.len();
        let mut mul = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                mul[a * k + b] = proj[self.mul(reps[a], reps[b]) as usize];
            }
        }
        let labels = reps.iter().map(|&r| format!("[{}]", self.label(r))).collect();
        let q = FiniteGroup::build(GroupKind::Table, format!("{}/{}", self.name, self.sub_name(nsub)), k, mul, labels)?;
        Ok(GroupHom { src: self.clone(), dst: Arc::new(q), map: proj })
    }

    /// The Weyl group N_G(H)/H with its projection from N_G(H) (as a subgroup group).
    pub fn weyl_group(self: &Arc<Self>, h: SubId) -> Result<(GroupHom, GroupHom)> {
        let nh = self.normalizer(h);
        let incl = self.subgroup_as_group(nh);
        let ng = incl.src.clone();
        let hin = incl.preimage_sub(h);
        let proj = ng.quotient(hin)?;
        Ok((incl, proj))
    }

    /// A human-readable subgroup name that `parse_sub` accepts.
    pub fn sub_name(&self, h: SubId) -> String {
        let s = self.sub(h);
        if s.order() == 1 {
            return "e".into();
        }
        match self.kind {
            GroupKind::Dihedral { m } => {
                let m = m as usize;
                let refl: Vec<usize> = s.elems.iter().map(|&x| x as usize).filter(|&x| x >= m).map(|x| x - m).collect();
                if refl.is_empty() {
                    format!("mu_{}", s.order())
                } else {
                    let k = s.order() / 2;
                    let j = refl[0];
                    if j == 0 {
                        format!("D{}", 2 * k)
                    } else {
                        format!("D{}[{}]", 2 * k, self.label(self.dih(j as i64, 1)))
                    }
                }
            }
            GroupKind::Cyclic { .. } => format!("C{}", s.order()),
            _ => {
                if h == self.whole() {
                    "G".into()
                } else {
                    format!("H{h}")
                }
            }
        }
    }

    /// Parses names such as `e`, `G`, `D6`, `mu_3`, `D2[zt]`, `C4`, `H7`.
    pub fn parse_sub(&self, name: &str) -> Result<SubId> {
        let name = name.trim();
        let bad = || Error::Parse(format!("unknown subgroup '{name}' of {}", self.name));
        if name == "e" || name == "1" {
            return Ok(self.trivial());
        }
        if name == "G" {
            return Ok(self.whole());
        }
        match self.kind {
            GroupKind::Dihedral { m } => {
                let m = m as i64;
                if let Some(k) = name.strip_prefix("mu_").or_else(|| name.strip_prefix("mu")) {
                    let k: i64 = k.parse().map_err(|_| bad())?;
                    if k < 1 || m % k != 0 {
                        return Err(bad());
                    }
                    return Ok(self.generated(&[self.dih(m / k, 0)]));
                }
                if let Some(rest) = name.strip_prefix('D') {
                    let (ord, refl) = match rest.find('[') {
                        Some(p) => (&rest[..p], Some(rest[p + 1..].trim_end_matches(']'))),
                        None => (rest, None),
                    };
                    let ord: i64 = ord.parse().map_err(|_| bad())?;
                    if ord < 2 || ord % 2 != 0 || m % (ord / 2) != 0 {
                        return Err(bad());
                    }
                    let k = ord / 2;
                    let j = match refl {
                        None => 0,
                        Some(l) => (0..m).find(|&j| self.label(self.dih(j, 1)) == l).ok_or_else(bad)?,
                    };
                    return Ok(self.generated(&[self.dih(m / k, 0), self.dih(j, 1)]));
                }
                Err(bad())
            }
            GroupKind::Cyclic { n } => {
                let d: u32 = name.strip_prefix('C').and_then(|d| d.parse().ok()).ok_or_else(bad)?;
                if d == 0 || n % d != 0 {
                    return Err(bad());
                }
                Ok(self.generated(&[n / d]))
            }
            _ => {
                let i: usize = name.strip_prefix('H').and_then(|d| d.parse().ok()).ok_or_else(bad)?;
                if i < self.num_subgroups() {
                    Ok(i)
                } else {
                    Err(bad())
                }
            }
        }
    }

    /// mu_k = <z^{m/k}> in D_{2m}.
    pub fn mu(&self, k: u32) -> SubId {
        let m = self.dihedral_m().expect("not dihedral");
        assert!(m.is_multiple_of(k), "{k} does not divide {m}");
        self.generated(&[self.dih((m / k) as i64, 0)])
    }
    /// D_{2k} = <z^{m/k}, t> in D_{2m}.
    pub fn dih_sub(&self, k: u32) -> SubId {
        self.dih_sub_at(k, 0)
    }
    /// <z^{m/k}, z^j t> in D_{2m}.
    pub fn dih_sub_at(&self, k: u32, j: i64) -> SubId {
        let m = self.dihedral_m().expect("not dihedral");
        assert!(m.is_multiple_of(k), "{k} does not divide {m}");
        self.generated(&[self.dih((m / k) as i64, 0), self.dih(j, 1)])
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut c = vec![];
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push((x + 1).to_string());
            x = p[x];
        }
        out.push_str(&format!("({})", c.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// A homomorphism given by the images of all elements.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub src: Arc<FiniteGroup>,
    pub dst: Arc<FiniteGroup>,
    pub map: Vec<Elt>,
}

impl GroupHom {
    pub fn new(src: Arc<FiniteGroup>, dst: Arc<FiniteGroup>, map: Vec<Elt>) -> Result<GroupHom> {
        let h = GroupHom { src, dst, map };
        if h.map.len() != h.src.order() || h.map.iter().any(|&x| x as usize >= h.dst.order()) {
            return Err(Error::Dimension("element map has wrong size".into()));
        }
        for a in h.src.elements() {
            for b in h.src.elements() {
                if h.apply(h.src.mul(a, b)) != h.dst.mul(h.apply(a), h.apply(b)) {
                    return Err(Error::NotEquivariant("element map is not a homomorphism".into()));
                }
            }
        }
        Ok(h)
    }
    pub fn identity(g: &Arc<FiniteGroup>) -> GroupHom {
        GroupHom { src: g.clone(), dst: g.clone(), map: g.elements().collect() }
    }
    /// Determined by images of generators; the map is closed by BFS.
    pub fn from_generators(src: Arc<FiniteGroup>, dst: Arc<FiniteGroup>, gens: &[(Elt, Elt)]) -> Result<GroupHom> {
        let mut map = vec![u32::MAX; src.order()];
        map[0] = 0;
        let mut q = VecDeque::from([0 as Elt]);
        while let Some(x) = q.pop_front() {
            for &(s, t) in gens {
                let y = src.mul(x, s);
                let fy = dst.mul(map[x as usize], t);
                if map[y as usize] == u32::MAX {
                    map[y as usize] = fy;
                    q.push_back(y);
                }
            }
        }
        if map.contains(&u32::MAX) {
            return Err(Error::Dimension("generators do not generate the source".into()));
        }
        GroupHom::new(src, dst, map)
    }
    #[inline]
    pub fn apply(&self, x: Elt) -> Elt {
        self.map[x as usize]
    }
    pub fn is_injective(&self) -> bool {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v.len() == self.map.len()
    }
    pub fn is_surjective(&self) -> bool {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v.len() == self.dst.order()
    }
    pub fn image_sub(&self, s: SubId) -> SubId {
        let els: Vec<Elt> = self.src.sub_elems(s).iter().map(|&x| self.apply(x)).collect();
        self.dst.sub_by_set(&ElemSet::from_elems(els)).unwrap()
    }
    pub fn preimage_sub(&self, s: SubId) -> SubId {
        let els = self.src.elements().filter(|&x| self.dst.sub_contains(s, self.apply(x)));
        self.src.sub_by_set(&ElemSet::from_elems(els)).unwrap()
    }
    pub fn kernel(&self) -> SubId {
        self.preimage_sub(self.dst.trivial())
    }
    /// self after other.
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        GroupHom { src: other.src.clone(), dst: self.dst.clone(), map: other.map.iter().map(|&x| self.apply(x)).collect() }
    }
    /// For a surjection, the minimal preimage of each target element.
    pub fn section(&self) -> Vec<Elt> {
        let mut s = vec![u32::MAX; self.dst.order()];
        for x in self.src.elements() {
            let y = self.apply(x) as usize;
            if s[y] == u32::MAX {
                s[y] = x;
            }
        }
        s
    }
    /// For an injection, the inverse on the image (u32::MAX off the image).
    pub fn partial_inverse(&self) -> Vec<Elt> {
        let mut s = vec![u32::MAX; self.dst.order()];
        for x in self.src.elements() {
            s[self.apply(x) as usize] = x;
        }
        s
    }
}

/// D_{2k} -> D_{2m} for k | m, z -> z^{m/k}, t -> t.
pub fn dihedral_inclusion(k: u32, m: u32) -> GroupHom {
    assert!(m.is_multiple_of(k));
    let src = Arc::new(FiniteGroup::dihedral(k));
    let dst = Arc::new(FiniteGroup::dihedral(m));
    let map = src.elements().map(|x| {
        let (i, e) = ((x % k) as i64, x / k);
        dst.dih(i * (m / k) as i64, e)
    });
    let map = map.collect();
    GroupHom { src, dst, map }
}

/// D_2 -> D_{2m}, t -> z^j t.
pub fn reflection_inclusion(m: u32, j: i64) -> GroupHom {
    let src = Arc::new(FiniteGroup::dihedral(1));
    let dst = Arc::new(FiniteGroup::dihedral(m));
    let map = vec![0, dst.dih(j, 1)];
    GroupHom { src, dst, map }
}

/// D_{2m} -> D_{2m/d}, z -> z, t -> t, with kernel mu_d.
pub fn dihedral_projection(m: u32, d: u32) -> GroupHom {
    assert!(m.is_multiple_of(d));
    let src = Arc::new(FiniteGroup::dihedral(m));
    let dst = Arc::new(FiniteGroup::dihedral(m / d));
    let map = src.elements().map(|x| dst.dih((x % m) as i64, x / m)).collect();
    GroupHom { src, dst, map }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_counts() {
        let g = FiniteGroup::dihedral(3);
        assert_eq!(g.order(), 6);
        assert_eq!(g.num_subgroups(), 6);
        assert_eq!(g.class_reps().len(), 4);
        let z = g.dih(1, 0);
        let t = g.dih(0, 1);
        assert_eq!(g.mul(t, z), g.mul(g.inv(z), t));
        assert_eq!(g.sub_name(g.dih_sub(1)), "D2");
        assert_eq!(g.sub_name(g.mu(3)), "mu_3");
        assert_eq!(g.parse_sub("D2[zt]").unwrap(), g.dih_sub_at(1, 1));
    }

    #[test]
    fn odd_dihedral_reflection_subgroups_conjugate() {
        for m in [3u32, 5, 9, 15] {
            let g = FiniteGroup::dihedral(m);
            let d2 = g.dih_sub(1);
            let d2p = g.dih_sub_at(1, 1);
            let j = (m as i64 + 1) / 2;
            assert_eq!(g.conj_sub(g.dih(j, 0), d2), d2p);
            let divs = (1..=m).filter(|k| m % k == 0).count();
            assert_eq!(g.class_reps().len(), 2 * divs);
        }
    }

    #[test]
    fn symmetric_four() {
        let g = FiniteGroup::symmetric(4);
        assert_eq!(g.order(), 24);
        assert_eq!(g.num_subgroups(), 30);
        assert_eq!(g.class_reps().len(), 11);
        let a = FiniteGroup::alternating(4);
        assert_eq!(a.order(), 12);
        assert_eq!(a.num_subgroups(), 10);
        assert_eq!(a.class_reps().len(), 5);
    }

    #[test]
    fn double_coset_sizes_sum() {
        let g = FiniteGroup::dihedral(6);
        let k = g.dih_sub(1);
        let h = g.mu(3);
        let reps = g.double_cosets(k, h);
        let total: usize = reps
            .iter()
            .map(|&r| g.sub_order(k) * g.sub_order(h) / g.sub_order(g.intersect(k, g.conj_sub(r, h))))
            .sum();
        assert_eq!(total, g.order());
    }

    #[test]
    fn projection_kernel() {
        let p = dihedral_projection(9, 3);
        assert_eq!(p.kernel(), p.src.mu(3));
        assert!(GroupHom::new(p.src.clone(), p.dst.clone(), p.map.clone()).is_ok());
        let inc = dihedral_inclusion(3, 9);
        assert!(GroupHom::new(inc.src.clone(), inc.dst.clone(), inc.map.clone()).is_ok());
        assert_eq!(inc.image_sub(inc.src.whole()), inc.dst.dih_sub(3));
    }
}

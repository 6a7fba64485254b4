//! Real Hochschild homology of discrete E_sigma rings over dihedral groups.
//!
//! The complex in degree k is N_{D_2}^{D_2m} M box (N_e^{D_2m} i*M)^k box
//! N_{<z t>}^{D_2m} M, with faces given by the module and ring multiplications
//! and degeneracies by unit insertion. Only rings whose Mackey functor is a
//! quotient of the Burnside functor are handled: then every generator set is a
//! point and all structure maps are induced by the identity of that point.

use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::abgrp::{homology, AbHom, FgAbelianGroup, IntMatrix, Subquotient, Z};
use crate::boxnorm::norm_presentation;
use crate::error::{Error, Result};
use crate::groups::{dihedral_inclusion, dihedral_projection, reflection_inclusion, FiniteGroup, GroupHom, SubId};
use crate::gsets::{GMap, GSet};
use crate::mackey::{mackey_iso, LewisDiagram, LewisLevel, Mackey, MackeyMorphism, Presentation};

pub const MAX_BAR_DEGREE: usize = 3;

/// A finite rank ring over Z/n (n = 0 for Z) with an anti-involution.
#[derive(Clone, Debug)]
pub struct RingWithInvolution {
    pub name: String,
    pub rank: usize,
    pub modulus: i64,
    /// e_i e_j = sum_k mult[i][j][k] e_k.
    pub mult: Vec<Vec<Vec<i64>>>,
    pub unit: Vec<i64>,
    /// Column j is tau(e_j).
    pub tau: Vec<Vec<i64>>,
}

impl RingWithInvolution {
    pub fn integers() -> RingWithInvolution {
        RingWithInvolution::zmod(0)
    }
    pub fn zmod(n: i64) -> RingWithInvolution {
        RingWithInvolution {
            name: if n == 0 { "Z".into() } else { format!("Z/{n}") },
            rank: 1,
            modulus: n,
            mult: vec![vec![vec![1]]],
            unit: vec![1],
            tau: vec![vec![1]],
        }
    }
    /// Z[i] with complex conjugation.
    pub fn gaussian() -> RingWithInvolution {
        RingWithInvolution {
            name: "Z[i]".into(),
            rank: 2,
            modulus: 0,
            mult: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![-1, 0]]],
            unit: vec![1, 0],
            tau: vec![vec![1, 0], vec![0, -1]],
        }
    }

    fn reduce(&self, v: Vec<i64>) -> Vec<i64> {
        if self.modulus == 0 {
            v
        } else {
            v.into_iter().map(|x| x.rem_euclid(self.modulus)).collect()
        }
    }
    pub fn mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        for i in 0..self.rank {
            for j in 0..self.rank {
                for k in 0..self.rank {
                    out[k] += x[i] * y[j] * self.mult[i][j][k];
                }
            }
        }
        self.reduce(out)
    }
    pub fn apply_tau(&self, x: &[i64]) -> Vec<i64> {
        self.reduce((0..self.rank).map(|i| (0..self.rank).map(|j| self.tau[i][j] * x[j]).sum()).collect())
    }

    /// tau^2 = 1, tau(xy) = tau(y) tau(x), tau(1) = 1, and 1 is a unit.
    pub fn check(&self) -> Result<()> {
        let e = |i: usize| -> Vec<i64> { (0..self.rank).map(|j| (i == j) as i64).collect() };
        for i in 0..self.rank {
            if self.apply_tau(&self.apply_tau(&e(i))) != self.reduce(e(i)) {
                return Err(Error::InvalidAction("tau is not an involution".into()));
            }
            if self.mul(&self.unit, &e(i)) != self.reduce(e(i)) || self.mul(&e(i), &self.unit) != self.reduce(e(i)) {
                return Err(Error::InvalidAction("unit is not a unit".into()));
            }
            for j in 0..self.rank {
                let lhs = self.apply_tau(&self.mul(&e(i), &e(j)));
                let rhs = self.mul(&self.apply_tau(&e(j)), &self.apply_tau(&e(i)));
                if lhs != rhs {
                    return Err(Error::InvalidAction("tau is not anti-multiplicative".into()));
                }
            }
        }
        Ok(())
    }

    /// The fixed-point D_2 diagram: R^tau over the fixed level, R below,
    /// res the inclusion, tr = 1 + tau, Weyl action tau.
    pub fn lewis(&self) -> Result<LewisDiagram> {
        self.check()?;
        let g = Arc::new(FiniteGroup::dihedral(1));
        let r = self.rank;
        let n = Z::from(self.modulus);
        let mut rel = IntMatrix::zeros(r, r);
        for i in 0..r {
            rel.set(i, i, n.clone());
        }
        let under = FgAbelianGroup::new(r, rel);
        let tau = IntMatrix::from_i64(r, r, &(0..r).flat_map(|i| self.tau[i].clone()).collect::<Vec<_>>());
        let fixed: Subquotient = AbHom::new(under.clone(), under.clone(), tau.sub(&IntMatrix::identity(r)))?.kernel();
        let top_coords = |x: &[Z]| fixed.group.coords(&fixed.express(x).expect("fixed element"));
        let nt = fixed.group.num_coords();
        let nu = under.num_coords();
        let unit_vec = |k: usize, c: usize| -> Vec<Z> { (0..k).map(|i| Z::from((i == c) as i64)).collect() };
        let lift_top = |c: usize| -> Vec<Z> { fixed.basis.apply(&fixed.group.lift(&unit_vec(nt, c))) };
        let res = IntMatrix::from_cols(&(0..nt).map(|c| under.coords(&lift_top(c))).collect::<Vec<_>>(), nu);
        let one_plus = tau.clone().sub(&IntMatrix::identity(r).scale(&Z::from(-1)));
        let tr = IntMatrix::from_cols(
            &(0..nu).map(|c| top_coords(&one_plus.apply(&under.lift(&unit_vec(nu, c))))).collect::<Vec<_>>(),
            nt,
        );
        let weyl_e = IntMatrix::from_cols(
            &(0..nu).map(|c| under.coords(&tau.apply(&under.lift(&unit_vec(nu, c))))).collect::<Vec<_>>(),
            nu,
        );
        let mut resm = std::collections::BTreeMap::new();
        let mut trm = std::collections::BTreeMap::new();
        resm.insert((0, 1), res);
        trm.insert((0, 1), tr);
        Ok(LewisDiagram {
            group: g.clone(),
            levels: vec![
                LewisLevel { sub: g.trivial(), invariant_factors: under.invariant_factors(), weyl: vec![(g.dih(0, 1), weyl_e)] },
                LewisLevel { sub: g.whole(), invariant_factors: fixed.group.invariant_factors(), weyl: vec![] },
            ],
            res: resm,
            tr: trm,
        })
    }

    /// The presentation A^{D_2} / (2 = [D_2/e], n = 0), available for rank one.
    pub fn to_esigma(&self) -> Result<DiscreteEsigmaRing> {
        self.check()?;
        if self.rank != 1 {
            return Err(Error::Unsupported(format!("{} is not generated by its unit as a Mackey functor", self.name)));
        }
        Ok(if self.modulus == 0 { DiscreteEsigmaRing::constant_z() } else { DiscreteEsigmaRing::zmod(self.modulus as u32) })
    }
}

/// A discrete E_sigma ring presented as a quotient of the Burnside D_2 functor.
#[derive(Clone)]
pub struct DiscreteEsigmaRing {
    pub name: String,
    pub presentation: Presentation,
    pub mackey: Mackey,
}

impl DiscreteEsigmaRing {
    fn from_presentation(name: &str, p: Presentation) -> Result<DiscreteEsigmaRing> {
        if p.gens.len() != 1 {
            return Err(Error::Unsupported("only quotients of the Burnside functor are supported".into()));
        }
        let mackey = Mackey::from_presentation(&p);
        Ok(DiscreteEsigmaRing { name: name.into(), presentation: p, mackey })
    }
    /// The constant functor Z.
    pub fn constant_z() -> DiscreteEsigmaRing {
        DiscreteEsigmaRing::from_presentation("constZ", crate::boxnorm::zbar_d2()).unwrap()
    }
    /// The Burnside functor itself.
    pub fn burnside() -> DiscreteEsigmaRing {
        let g = Arc::new(FiniteGroup::dihedral(1));
        DiscreteEsigmaRing::from_presentation("burnside", Presentation::free(GSet::point(&g))).unwrap()
    }
    /// Z/n with the trivial involution.
    pub fn zmod(n: u32) -> DiscreteEsigmaRing {
        let mut p = crate::boxnorm::zbar_d2();
        p.rels.push(crate::mackey::Relation { level: 1, lhs: vec![(1, 0, n as i64)], rhs: vec![] });
        DiscreteEsigmaRing::from_presentation(&format!("Z/{n}"), p).unwrap()
    }
    /// The zero ring.
    pub fn zero() -> DiscreteEsigmaRing {
        let g = Arc::new(FiniteGroup::dihedral(1));
        let p = Presentation::burnside_quotient(&g, 1, vec![(1, 0, 1)], vec![]);
        DiscreteEsigmaRing::from_presentation("zero", p).unwrap()
    }

    pub fn parse(name: &str) -> Result<DiscreteEsigmaRing> {
        match name {
            "constZ" | "Z" => Ok(DiscreteEsigmaRing::constant_z()),
            "burnside" | "A" => Ok(DiscreteEsigmaRing::burnside()),
            "zero" | "0" => Ok(DiscreteEsigmaRing::zero()),
            s => {
                let n = s
                    .strip_prefix("Z/")
                    .and_then(|n| n.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown ring {s}; expected constZ, burnside, zero or Z/<n>")))?;
                Ok(DiscreteEsigmaRing::zmod(n))
            }
        }
    }

    /// The Mackey axioms, the Green ideal property of the relations, and the unit.
    pub fn check_structure(&self) -> Result<()> {
        let m = &self.mackey;
        m.check_axioms()?;
        let g = &m.group;
        for h in 0..g.num_subgroups() {
            let cl = m.cover_level(h);
            for r in m.relations(h).basis() {
                let r: Vec<i64> = r.iter().map(|x| x.to_i64().unwrap()).collect();
                for i in 0..m.dim(h) {
                    if !m.is_zero(h, &m.cover.mul(cl, &r, &m.basis_vec(h, i))) {
                        return Err(Error::NotWellDefined("relations are not an ideal".into()));
                    }
                }
            }
        }
        let top = g.whole();
        if m.res(top, g.trivial(), &m.unit(top)) != m.unit(g.trivial()) {
            return Err(Error::NotWellDefined("unit does not restrict to the unit".into()));
        }
        Ok(())
    }
}

fn trivial_embedding(g: &Arc<FiniteGroup>) -> GroupHom {
    GroupHom::new(Arc::new(FiniteGroup::cyclic(1)), g.clone(), vec![0]).unwrap()
}

/// The simplicial Mackey functor B_k with its faces and degeneracies.
pub struct HrComplex {
    pub m: u32,
    pub group: Arc<FiniteGroup>,
    pub presentations: Vec<Presentation>,
    pub terms: Vec<Mackey>,
    /// faces[k][i]: B_k -> B_{k-1}, for k >= 1 and i <= k.
    pub faces: Vec<Vec<MackeyMorphism>>,
    /// degens[k][j]: B_k -> B_{k+1}, for j <= k.
    pub degens: Vec<Vec<MackeyMorphism>>,
}

impl HrComplex {
    pub fn new(ring: &DiscreteEsigmaRing, m: u32, top_degree: usize, budget: u128) -> Result<HrComplex> {
        HrComplex::with_degree_limit(ring, m, top_degree, budget, MAX_BAR_DEGREE)
    }

    /// As `new`, with the bar degree cap given explicitly.
    pub fn with_degree_limit(ring: &DiscreteEsigmaRing, m: u32, top_degree: usize, budget: u128, max_degree: usize) -> Result<HrComplex> {
        if top_degree > max_degree {
            return Err(Error::Budget { what: "bar degree", needed: top_degree as u128, limit: max_degree as u128 });
        }
        if m == 0 || m.is_multiple_of(2) {
            return Err(Error::Unsupported(format!("m must be odd, got {m}")));
        }
        let p = &ring.presentation;
        let left = norm_presentation(p, &dihedral_inclusion(1, m), budget)?;
        let right = norm_presentation(p, &reflection_inclusion(m, 1), budget)?;
        let d2 = &p.group;
        let under = p.restrict(&trivial_embedding(d2)).prune();
        let g = left.group.clone();
        let mid = norm_presentation(&under, &trivial_embedding(&g), budget)?;
        for q in [&left, &mid, &right] {
            if q.gens.len() != 1 {
                return Err(Error::Unsupported("structure maps are only available for cyclic functors".into()));
            }
        }
        let mut presentations = vec![];
        let mut cur = left.clone();
        for _ in 0..=top_degree {
            presentations.push(cur.box_product(&right).prune());
            cur = cur.box_product(&mid).prune();
        }
        let terms: Vec<Mackey> = presentations.iter().map(Mackey::from_presentation).collect();
        let pt = GSet::point(&g);
        let id = GMap::new(&pt, &pt, vec![0])?;
        let mut faces = vec![vec![]];
        for k in 1..=top_degree {
            let fs = (0..=k).map(|_| MackeyMorphism::from_generator_map(&terms[k], &terms[k - 1], &id)).collect::<Result<Vec<_>>>()?;
            faces.push(fs);
        }
        let mut degens = vec![];
        for k in 0..top_degree {
            let ss = (0..=k).map(|_| MackeyMorphism::from_generator_map(&terms[k], &terms[k + 1], &id)).collect::<Result<Vec<_>>>()?;
            degens.push(ss);
        }
        Ok(HrComplex { m, group: g, presentations, terms, faces, degens })
    }

    pub fn top_degree(&self) -> usize {
        self.terms.len() - 1
    }

    /// All simplicial identities, as equalities modulo relations.
    pub fn check_simplicial(&self) -> Result<()> {
        let t = &self.terms;
        let fail = |s: String| Err(Error::NotWellDefined(s));
        for k in 2..=self.top_degree() {
            for j in 0..=k {
                for i in 0..j {
                    let a = self.faces[k - 1][i].compose(&self.faces[k][j]);
                    let b = self.faces[k - 1][j - 1].compose(&self.faces[k][i]);
                    if !a.equals(&b, &t[k], &t[k - 2]) {
                        return fail(format!("d_{i} d_{j} != d_{} d_{i} in degree {k}", j - 1));
                    }
                }
            }
        }
        for k in 0..self.top_degree() {
            for j in 0..=k {
                let s = &self.degens[k][j];
                for i in 0..=k + 1 {
                    let lhs = self.faces[k + 1][i].compose(s);
                    let ok = if i == j || i == j + 1 {
                        lhs.equals(&MackeyMorphism::identity(&t[k]), &t[k], &t[k])
                    } else if i < j {
                        lhs.equals(&self.degens[k - 1][j - 1].compose(&self.faces[k][i]), &t[k], &t[k])
                    } else {
                        lhs.equals(&self.degens[k - 1][j].compose(&self.faces[k][i - 1]), &t[k], &t[k])
                    };
                    if !ok {
                        return fail(format!("d_{i} s_{j} identity fails in degree {k}"));
                    }
                }
                if k + 1 < self.top_degree() {
                    for i in 0..=j {
                        let a = self.degens[k + 1][i].compose(s);
                        let b = self.degens[k + 1][j + 1].compose(&self.degens[k][i]);
                        if !a.equals(&b, &t[k], &t[k + 2]) {
                            return fail(format!("s_{i} s_{j} identity fails in degree {k}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The normalized chains at level h: B_k(h) modulo degenerate elements.
    pub fn normalized(&self, k: usize, h: SubId) -> FgAbelianGroup {
        let b = &self.terms[k];
        let mut cols: Vec<Vec<Z>> = b.relations(h).basis().to_vec();
        if k > 0 {
            for s in &self.degens[k - 1] {
                cols.extend(s.mats[h].cols_vec());
            }
        }
        FgAbelianGroup::new(b.dim(h), IntMatrix::from_cols(&cols, b.dim(h)))
    }

    /// The alternating sum of faces on normalized chains at level h.
    pub fn differential(&self, k: usize, h: SubId) -> Result<AbHom> {
        let src = self.normalized(k, h);
        if k == 0 {
            let zero = FgAbelianGroup::free(0);
            return AbHom::new(src, zero, IntMatrix::zeros(0, self.terms[0].dim(h)));
        }
        let dst = self.normalized(k - 1, h);
        let mut mat = IntMatrix::zeros(self.terms[k - 1].dim(h), self.terms[k].dim(h));
        for (i, f) in self.faces[k].iter().enumerate() {
            let sign = if i % 2 == 0 { Z::from(1) } else { Z::from(-1) };
            mat = mat.sub(&f.mats[h].scale(&(-sign)));
        }
        AbHom::new(src, dst, mat)
    }

    /// d o d = 0 at every level and degree.
    pub fn check_d_squared(&self) -> Result<()> {
        for k in 2..=self.top_degree() {
            for h in 0..self.group.num_subgroups() {
                if !self.differential(k - 1, h)?.compose(&self.differential(k, h)?).is_zero() {
                    return Err(Error::NotAComplex(k));
                }
            }
        }
        Ok(())
    }

    /// Homology in degree n at level h; needs degree n + 1 built.
    pub fn homology_at(&self, n: usize, h: SubId) -> Result<Subquotient> {
        if n + 1 > self.top_degree() {
            return Err(Error::Budget { what: "bar degree", needed: n as u128 + 1, limit: self.top_degree() as u128 });
        }
        homology(&self.differential(n + 1, h)?, &self.differential(n, h)?)
    }

    /// Homology in degree n as a Lewis diagram.
    pub fn homology(&self, n: usize) -> Result<LewisDiagram> {
        let g = &self.group;
        let mut sq = vec![None; g.num_subgroups()];
        for h in g.class_reps() {
            sq[h] = Some(self.homology_at(n, h)?);
        }
        let b = &self.terms[n];
        let to_i64 = |v: Vec<Z>| -> Vec<i64> { v.iter().map(|x| x.to_i64().expect("coefficient overflow")).collect() };
        Ok(LewisDiagram::from_parts(
            b,
            &|h| sq[h].as_ref().unwrap().group.clone(),
            &|h, y| {
                let s = sq[h].as_ref().unwrap();
                to_i64(s.basis.apply(&s.group.lift(y)))
            },
            &|h, v| {
                let s = sq[h].as_ref().unwrap();
                let x: Vec<Z> = v.iter().map(|&c| Z::from(c)).collect();
                s.group.coords(&s.express(&x).expect("cycle outside the cycle lattice"))
            },
        ))
    }

    /// HR_0 as the coequalizer of the two degree-one faces.
    pub fn hr0(&self) -> Result<Mackey> {
        if self.top_degree() < 1 {
            return Err(Error::Budget { what: "bar degree", needed: 1, limit: 0 });
        }
        let b0 = &self.terms[0];
        let b1 = &self.terms[1];
        let (d0, d1) = (&self.faces[1][0], &self.faces[1][1]);
        let mut elems = vec![];
        for h in self.group.class_reps() {
            for i in 0..b1.dim(h) {
                let x = b1.basis_vec(h, i);
                let v: Vec<i64> = d0.apply(h, &x).iter().zip(d1.apply(h, &x)).map(|(a, b)| a - b).collect();
                if v.iter().any(|&c| c != 0) {
                    elems.push((h, v));
                }
            }
        }
        Ok(b0.quotient_by_elements(&elems))
    }
}

/// HR_0 of a ring over D_2m.
pub fn hr0(ring: &DiscreteEsigmaRing, m: u32, budget: u128) -> Result<Mackey> {
    HrComplex::new(ring, m, 1, budget)?.hr0()
}

/// HR_n of a ring over D_2m as a Lewis diagram.
pub fn hr_homology(ring: &DiscreteEsigmaRing, m: u32, n: usize, budget: u128) -> Result<LewisDiagram> {
    HrComplex::new(ring, m, n + 1, budget)?.homology(n)
}

/// The Burnside quotient A^{D_2m} / (2 - [D_2m/mu_m]) as a Mackey quotient.
pub fn burnside_quotient(m: u32) -> Mackey {
    let g = Arc::new(FiniteGroup::dihedral(m));
    let a = Mackey::burnside(&g);
    let top = g.whole();
    let mut x = a.unit(top);
    for c in x.iter_mut() {
        *c *= 2;
    }
    x[a.cover.idx(top, g.mu(m), 0)] -= 1;
    a.quotient_by_elements(&[(top, x)])
}

/// The same quotient closed additionally under multiplication.
pub fn burnside_quotient_green(m: u32) -> Result<Mackey> {
    let g = Arc::new(FiniteGroup::dihedral(m));
    let a = Mackey::burnside(&g);
    let top = g.whole();
    let mut x = a.unit(top);
    for c in x.iter_mut() {
        *c *= 2;
    }
    x[a.cover.idx(top, g.mu(m), 0)] -= 1;
    a.quotient_by_congruence(&[(top, x)])
}

/// Certificates that the geometric fixed points for mu_d of the complex over
/// D_2m agree degreewise with the complex over D_2(m/d), compatibly with faces.
pub struct PhiCertificate {
    pub degrees: Vec<MackeyMorphism>,
    pub hr0: MackeyMorphism,
}

pub fn phi_compatibility(ring: &DiscreteEsigmaRing, m: u32, d: u32, top_degree: usize, budget: u128) -> Result<PhiCertificate> {
    if d == 0 || !m.is_multiple_of(d) {
        return Err(Error::NotSubgroup(format!("mu_{d} in D{}", 2 * m)));
    }
    let big = HrComplex::new(ring, m, top_degree, budget)?;
    let small = HrComplex::new(ring, m / d, top_degree, budget)?;
    let proj = dihedral_projection(m, d);
    if *proj.dst != *small.group {
        return Err(Error::GroupMismatch("quotient group differs from the smaller dihedral group".into()));
    }
    let q = &small.group;
    let pre: Vec<SubId> = (0..q.num_subgroups()).map(|l| proj.preimage_sub(l)).collect();
    let seeds = |phi: &Mackey, tgt: &Mackey| -> Vec<Vec<Vec<i64>>> { vec![phi.gens.iter().map(|(l, _)| tgt.unit(*l)).collect()] };
    let mut degrees = vec![];
    let mut phis = vec![];
    for k in 0..=top_degree {
        let phi = big.terms[k].geometric_fixed_points(&proj);
        let cert = mackey_iso(&phi, &small.terms[k], &seeds(&phi, &small.terms[k]))?;
        degrees.push(cert);
        phis.push(phi);
    }
    for k in 1..=top_degree {
        for i in 0..=k {
            let phi_face = MackeyMorphism { mats: pre.iter().map(|&h| big.faces[k][i].mats[h].clone()).collect() };
            let a = degrees[k - 1].compose(&phi_face);
            let b = small.faces[k][i].compose(&degrees[k]);
            if !a.equals(&b, &phis[k], &small.terms[k - 1]) {
                return Err(Error::NoCertificate(format!("face {i} in degree {k} does not commute with the certificates")));
            }
        }
    }
    let phi0 = big.hr0()?.geometric_fixed_points(&proj);
    let small0 = small.hr0()?;
    let hr0 = mackey_iso(&phi0, &small0, &seeds(&phi0, &small0))?;
    Ok(PhiCertificate { degrees, hr0 })
}

/// Levelwise check that two diagrams vanish or agree in invariants.
pub fn describe_levels(d: &LewisDiagram) -> Vec<(String, String)> {
    d.levels
        .iter()
        .map(|l| (d.group.sub_name(l.sub), FgAbelianGroup::from_invariants(&l.invariant_factors).describe()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsets::DEFAULT_COINDUCTION_BUDGET;
    use crate::mackey::identity_seed;

    #[test]
    fn hr0_m1_is_constant() {
        let z = DiscreteEsigmaRing::constant_z();
        let h = hr0(&z, 1, DEFAULT_COINDUCTION_BUDGET).unwrap();
        assert_eq!(h.value(1).invariant_factors_i64(), vec![0]);
        assert_eq!(h.value(0).invariant_factors_i64(), vec![0]);
    }

    #[test]
    fn hr0_m3_matches_quotient() {
        let z = DiscreteEsigmaRing::constant_z();
        let h = hr0(&z, 3, DEFAULT_COINDUCTION_BUDGET).unwrap();
        let q = burnside_quotient(3);
        let f = mackey_iso(&h, &q, &[identity_seed(&h)]).unwrap();
        assert!(f.is_iso(&h, &q));
        assert_eq!(h.value(h.group.whole()).invariant_factors_i64(), vec![0, 0]);
    }

    #[test]
    fn complex_identities() {
        let z = DiscreteEsigmaRing::constant_z();
        let c = HrComplex::new(&z, 3, 2, DEFAULT_COINDUCTION_BUDGET).unwrap();
        c.check_simplicial().unwrap();
        c.check_d_squared().unwrap();
    }

    #[test]
    fn gaussian_fixed_points() {
        let d = RingWithInvolution::gaussian().lewis().unwrap();
        assert_eq!(d.levels[1].invariant_factors, vec![Z::from(0)]);
        assert_eq!(d.levels[0].invariant_factors.len(), 2);
        assert!(RingWithInvolution::gaussian().to_esigma().is_err());
    }
}

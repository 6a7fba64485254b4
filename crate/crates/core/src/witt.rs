//! Dihedral Witt vectors from HR_0.
//!
//! W_{j+1}(M; p) is the D_2 Mackey functor of mu_{p^j} fixed points of
//! HR_0 over D_{2p^j}. F restricts to D_{2p^(j-1)}, V transfers back up, and R
//! passes through the mu_p geometric fixed points. Each of these lands in a
//! functor that is only isomorphic to the next term of the tower, so every
//! operator carries an isomorphism certificate sending unit to unit.

use num_traits::ToPrimitive;

use crate::abgrp::{FgAbelianGroup, IntMatrix, Z};
use crate::error::{Error, Result};
use crate::groups::{dihedral_inclusion, dihedral_projection, SubId};
use crate::hr::{hr0, DiscreteEsigmaRing};
use crate::mackey::{mackey_iso, Mackey, MackeyMorphism};

pub const MAX_WITT_ORDER: u32 = 27;

/// Seed sending each generator of `src` to the unit of `dst` at the same level.
fn unit_seed(src: &Mackey, dst: &Mackey) -> Vec<Vec<Vec<i64>>> {
    vec![src.gens.iter().map(|(l, _)| dst.unit(*l)).collect()]
}

pub struct WittTower {
    pub p: u32,
    /// hr[j] is HR_0 over D_{2p^j}.
    pub hr: Vec<Mackey>,
    /// w[j] is W_{j+1}, a functor over D_2.
    pub w: Vec<Mackey>,
    /// f[j], v[j], r[j] for j >= 1 connect w[j] and w[j-1].
    pub f: Vec<MackeyMorphism>,
    pub v: Vec<MackeyMorphism>,
    pub r: Vec<MackeyMorphism>,
}

impl WittTower {
    /// The tower W_1, ..., W_levels.
    pub fn new(ring: &DiscreteEsigmaRing, p: u32, levels: usize, budget: u128) -> Result<WittTower> {
        if p < 3 || p.is_multiple_of(2) || !(2..p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::Unsupported(format!("p must be an odd prime, got {p}")));
        }
        if levels == 0 {
            return Err(Error::Unsupported("at least one level is needed".into()));
        }
        let top = (levels - 1) as u32;
        let order = p.checked_pow(top).filter(|&o| o <= MAX_WITT_ORDER);
        let Some(_) = order else {
            return Err(Error::Budget { what: "p^(levels-1)", needed: (p as u128).pow(top), limit: MAX_WITT_ORDER as u128 });
        };
        let mut hr = vec![];
        let mut w = vec![];
        for j in 0..levels {
            let m = p.pow(j as u32);
            let h = hr0(ring, m, budget)?;
            w.push(h.fixed_points(&dihedral_projection(m, m)));
            hr.push(h);
        }
        let mut tower = WittTower { p, hr, w, f: vec![MackeyMorphism { mats: vec![] }], v: vec![MackeyMorphism { mats: vec![] }], r: vec![MackeyMorphism { mats: vec![] }] };
        for j in 1..levels {
            let (f, v, r) = tower.operators(j)?;
            tower.f.push(f);
            tower.v.push(v);
            tower.r.push(r);
        }
        Ok(tower)
    }

    pub fn levels(&self) -> usize {
        self.w.len()
    }

    /// The level of D_{2p^j} over a level of D_2.
    fn over(&self, j: usize, l: SubId) -> SubId {
        let m = self.p.pow(j as u32);
        dihedral_projection(m, m).preimage_sub(l)
    }

    fn operators(&self, j: usize) -> Result<(MackeyMorphism, MackeyMorphism, MackeyMorphism)> {
        let p = self.p;
        let m = p.pow(j as u32);
        let big = &self.hr[j];
        let small = &self.hr[j - 1];
        let incl = dihedral_inclusion(m / p, m);
        let restricted = big.restrict(&incl);
        let fwd = mackey_iso(&restricted, small, &unit_seed(&restricted, small))?;
        let back = mackey_iso(small, &restricted, &unit_seed(small, &restricted))?;
        if !back.compose(&fwd).equals(&MackeyMorphism::identity(&restricted), &restricted, &restricted) {
            return Err(Error::NoCertificate("restriction certificates are not mutually inverse".into()));
        }
        let proj = dihedral_projection(m, p);
        let phi = big.geometric_fixed_points(&proj);
        let rcert = mackey_iso(&phi, small, &unit_seed(&phi, small))?;
        let d2 = &self.w[j].group;
        let mut fm = vec![];
        let mut vm = vec![];
        let mut rm = vec![];
        for l in 0..d2.num_subgroups() {
            let hb = self.over(j, l);
            let ks = self.over(j - 1, l);
            let kb = incl.image_sub(ks);
            let fcols: Vec<Vec<i64>> = (0..big.dim(hb)).map(|i| fwd.apply(ks, &big.res(hb, kb, &big.basis_vec(hb, i)))).collect();
            let vcols: Vec<Vec<i64>> = (0..small.dim(ks)).map(|i| big.tr(kb, hb, &back.apply(ks, &small.basis_vec(ks, i)))).collect();
            let q = proj.image_sub(hb);
            if q != ks {
                return Err(Error::GroupMismatch("geometric fixed point levels do not line up".into()));
            }
            let rcols: Vec<Vec<i64>> = (0..big.dim(hb)).map(|i| rcert.apply(q, &big.basis_vec(hb, i))).collect();
            fm.push(IntMatrix::from_i64_cols(&fcols, small.dim(ks)));
            vm.push(IntMatrix::from_i64_cols(&vcols, big.dim(hb)));
            rm.push(IntMatrix::from_i64_cols(&rcols, small.dim(ks)));
        }
        let f = MackeyMorphism { mats: fm };
        let v = MackeyMorphism { mats: vm };
        let r = MackeyMorphism { mats: rm };
        for (name, op, s, t) in [("F", &f, &self.w[j], &self.w[j - 1]), ("V", &v, &self.w[j - 1], &self.w[j]), ("R", &r, &self.w[j], &self.w[j - 1])] {
            op.check_well_defined(s, t).map_err(|e| Error::NotWellDefined(format!("{name}: {e}")))?;
        }
        Ok((f, v, r))
    }

    /// Each level of W_{j+1} is free of rank j+1.
    pub fn levelwise_free(&self) -> Vec<(usize, bool)> {
        self.w
            .iter()
            .enumerate()
            .map(|(j, w)| {
                let ok = (0..w.group.num_subgroups()).all(|l| {
                    let v = w.value(l);
                    v.is_free() && v.rank() == j + 1
                });
                (j + 1, ok)
            })
            .collect()
    }

    /// R F = F R as maps W_{j+1} -> W_{j-1}.
    pub fn rf_commute(&self, j: usize) -> bool {
        let a = self.r[j - 1].compose(&self.f[j]);
        let b = self.f[j - 1].compose(&self.r[j]);
        a.equals(&b, &self.w[j], &self.w[j - 2])
    }

    /// F V = p on the underlying level of W_j.
    pub fn fv_is_p(&self, j: usize) -> bool {
        let w = &self.w[j - 1];
        let e = w.group.trivial();
        let fv = self.f[j].compose(&self.v[j]);
        (0..w.dim(e)).all(|i| {
            let x = w.basis_vec(e, i);
            let px: Vec<i64> = x.iter().map(|c| c * self.p as i64).collect();
            w.eq_at(e, &fv.apply(e, &x), &px)
        })
    }

    /// Cokernel of R - F: W_{j+1} -> W_j at each D_2 level.
    pub fn coinvariants(&self, j: usize) -> Vec<FgAbelianGroup> {
        let src = &self.w[j];
        let dst = &self.w[j - 1];
        (0..dst.group.num_subgroups())
            .map(|l| {
                let diff = self.r[j].mats[l].sub(&self.f[j].mats[l]);
                let mut cols: Vec<Vec<Z>> = dst.relations(l).basis().to_vec();
                cols.extend(diff.cols_vec());
                let _ = src;
                FgAbelianGroup::new(dst.dim(l), IntMatrix::from_cols(&cols, dst.dim(l)))
            })
            .collect()
    }
}

/// Ghost components of the underlying level through the marks of the Burnside
/// ring of mu_{p^j}: w_i is the mark at mu_{p^(j-i)}.
pub struct GhostOracle {
    pub p: u32,
    /// Certificates from HR_0 over D_{2p^j} to the Burnside quotient.
    certs: Vec<(Mackey, MackeyMorphism)>,
}

impl GhostOracle {
    pub fn new(tower: &WittTower) -> Result<GhostOracle> {
        let mut certs = vec![];
        for (j, h) in tower.hr.iter().enumerate() {
            let q = crate::hr::burnside_quotient(tower.p.pow(j as u32));
            let c = mackey_iso(h, &q, &unit_seed(h, &q))?;
            certs.push((q, c));
        }
        Ok(GhostOracle { p: tower.p, certs })
    }

    /// Ghost vector of an underlying element of W_{j+1}, given as an HR_0 cover vector.
    pub fn ghost(&self, j: usize, x: &[i64]) -> Vec<i128> {
        let (q, c) = &self.certs[j];
        let g = &q.group;
        let mu = g.mu(self.p.pow(j as u32));
        let y = c.apply(mu, x);
        let basis = q.cover_basis(mu);
        (0..=j)
            .map(|i| {
                let l = g.mu(self.p.pow((j - i) as u32));
                basis
                    .iter()
                    .zip(&y)
                    .filter(|((k, _), _)| g.le(l, *k))
                    .map(|((k, _), &c)| c as i128 * g.index(*k, mu) as i128)
                    .sum()
            })
            .collect()
    }

    /// The classical ghost formulas F(w) = (w_1..), R(w) = (..w_{j-1}),
    /// V(w) = (0, p w_0, ..) on every underlying basis element.
    pub fn check(&self, tower: &WittTower) -> Vec<(String, bool)> {
        let p = self.p as i128;
        let mut out = vec![];
        for j in 1..tower.levels() {
            let w = &tower.w[j];
            let ws = &tower.w[j - 1];
            let e = w.group.trivial();
            let mut f_ok = true;
            let mut r_ok = true;
            for i in 0..w.dim(e) {
                let x = w.basis_vec(e, i);
                let g = self.ghost(j, &x);
                f_ok &= self.ghost(j - 1, &tower.f[j].apply(e, &x)) == g[1..];
                r_ok &= self.ghost(j - 1, &tower.r[j].apply(e, &x)) == g[..j];
            }
            let mut v_ok = true;
            for i in 0..ws.dim(e) {
                let y = ws.basis_vec(e, i);
                let g = self.ghost(j - 1, &y);
                let mut expect = vec![0];
                expect.extend(g.iter().map(|c| c * p));
                v_ok &= self.ghost(j, &tower.v[j].apply(e, &y)) == expect;
            }
            out.push((format!("ghost F on W_{}", j + 1), f_ok));
            out.push((format!("ghost R on W_{}", j + 1), r_ok));
            out.push((format!("ghost V on W_{}", j), v_ok));
        }
        out
    }
}

pub fn group_json(a: &FgAbelianGroup) -> serde_json::Value {
    serde_json::json!({
        "invariant_factors": a.invariant_factors().iter().map(|x| x.to_i64().map(serde_json::Value::from).unwrap_or_else(|| x.to_string().into())).collect::<Vec<_>>(),
        "description": a.describe(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsets::DEFAULT_COINDUCTION_BUDGET;

    #[test]
    fn two_levels_for_p3() {
        let z = DiscreteEsigmaRing::constant_z();
        let t = WittTower::new(&z, 3, 2, DEFAULT_COINDUCTION_BUDGET).unwrap();
        assert!(t.levelwise_free().iter().all(|&(_, ok)| ok));
        assert!(t.fv_is_p(1));
        let o = GhostOracle::new(&t).unwrap();
        for (name, ok) in o.check(&t) {
            assert!(ok, "{name}");
        }
    }
}

//! Regression checks and acceptance criteria, shared by the command line
//! `check` verb and the acceptance harness.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::boxnorm::{norm_mackey, norm_span, zbar_d2};
use crate::burnside::{c_p_d_p, BurnsideSystem, SpanHom};
use crate::groups::{dihedral_inclusion, reflection_inclusion, FiniteGroup, GroupHom, SubId};
use crate::gsets::{circle_points, coinduce, GMap, GSet};
use crate::hr::{burnside_quotient, hr0, phi_compatibility, DiscreteEsigmaRing, HrComplex};
use crate::mackey::{identity_seed, mackey_iso, Mackey, Presentation, Relation};
use crate::tambara::{general_keys, small_groups, verify_reciprocity, BurnsideMarks, DihedralReciprocity, Reciprocity, TambaraInstance};
use crate::witt::{GhostOracle, WittTower};

type Outcome = std::result::Result<String, String>;

#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
    pub limit_ms: Option<u128>,
}

impl Check {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "limit_ms": self.limit_ms,
        })
    }
    pub fn line(&self) -> String {
        let limit = self.limit_ms.map(|l| format!(" (limit {} ms)", l)).unwrap_or_default();
        format!("{} {:<4} {} [{} ms{}] {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.millis, limit, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub pairs: usize,
    pub seed: u64,
    pub budget: u128,
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { pairs: 20, seed: 2024, budget: 1 << 25, jobs: 1 }
    }
}

fn run(id: &str, name: &str, limit_ms: Option<u128>, f: impl FnOnce() -> Outcome) -> Check {
    let t = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f));
    let millis = t.elapsed().as_millis();
    let (mut passed, mut detail) = match res {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(p) => (false, format!("panic: {}", p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())),
    };
    if let Some(l) = limit_ms {
        if millis > l {
            passed = false;
            detail = format!("over time limit; {detail}");
        }
    }
    Check { id: id.into(), name: name.into(), passed, detail, millis, limit_ms }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

trait Ctx<T> {
    fn ctx(self) -> std::result::Result<T, String>;
}

impl<T> Ctx<T> for crate::Result<T> {
    fn ctx(self) -> std::result::Result<T, String> {
        self.map_err(|e| e.to_string())
    }
}

fn dihedral(m: u32) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::dihedral(m))
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// Orbit counts of a G-set keyed by stabilizer order.
fn by_order(x: &GSet) -> std::collections::BTreeMap<usize, usize> {
    let mut out = std::collections::BTreeMap::new();
    for o in x.orbits() {
        *out.entry(x.group.sub_order(o.stabilizer)).or_insert(0) += 1;
    }
    out
}

/// Seed sending each generator to the unit at its level.
fn unit_seed(src: &Mackey, dst: &Mackey) -> Vec<Vec<Vec<i64>>> {
    vec![src.gens.iter().map(|(l, _)| dst.unit(*l)).collect()]
}

fn certify(a: &Mackey, b: &Mackey) -> std::result::Result<(), String> {
    let f = mackey_iso(a, b, &unit_seed(a, b)).ctx()?;
    ensure(f.is_iso(a, b), || "certificate is not levelwise bijective".into())?;
    f.check_natural(a, b).ctx()
}

/// The cover vector of the orbit level/sub at a Burnside-covered level.
fn orbit_vec(m: &Mackey, level: SubId, sub: SubId) -> Vec<i64> {
    let g = &m.group;
    let els = g.sub_elems(level);
    let i = m
        .cover_basis(level)
        .iter()
        .position(|&(k, _)| els.iter().any(|&a| g.conj_sub(a, k) == sub))
        .expect("orbit type present at this level");
    m.basis_vec(level, i)
}

fn scaled(v: &[i64], c: i64) -> Vec<i64> {
    v.iter().map(|x| x * c).collect()
}

/// Map^{D_2}(D_2p, T) for T = {a, b} with trivial action and T = D_2.
fn coinduction_counts(p: u32) -> Outcome {
    let g = dihedral(p);
    let emb = dihedral_inclusion(1, p);
    let two = GSet::trivial(&emb.src, 2);
    let x = coinduce(&emb, &two, 1 << 20).ctx()?.gset;
    let counts = by_order(&x);
    let fixed = x.fixed_points(g.whole()).len();
    let refl = counts.get(&2).copied().unwrap_or(0);
    let free = counts.get(&1).copied().unwrap_or(0);
    let want_refl = (1usize << p.div_ceil(2)) - 2;
    let want_free = ((1usize << (p - 1)) - 1) / p as usize + 1 - (1usize << ((p - 1) / 2));
    ensure(fixed == 2 && counts.get(&(2 * p as usize)) == Some(&2), || format!("p={p}: {fixed} fixed points"))?;
    ensure(refl == want_refl, || format!("p={p}: {refl} reflection orbits, expected {want_refl}"))?;
    ensure(free == want_free, || format!("p={p}: {free} free orbits, expected {want_free}"))?;
    ensure(counts.len() == 3 || (free == 0 && counts.len() == 2), || format!("p={p}: unexpected orbit types {counts:?}"))?;
    let d2 = GSet::cosets(&emb.src, emb.src.trivial());
    let y = coinduce(&emb, &d2, 1 << 20).ctx()?.gset;
    let (c, d) = c_p_d_p(p).ctx()?;
    let mut want = GSet::cosets(&g, g.mu(p));
    want = want.disjoint_union(&GSet::cosets(&g, g.trivial()).multiple((c + d) as usize));
    ensure(y.is_isomorphic(&want), || format!("p={p}: Map(D_2p, D_2) = {}", y.describe()))?;
    Ok(format!("p={p}: 2 fixed, {refl} of type D2, {free} free; D_2 coinduces to {}", y.describe()))
}

/// Criterion 1.
pub fn criterion_coinduction() -> Check {
    run("C1", "coinduction orbit counts for p = 3, 5, 7", Some(5_000), || {
        let mut out = vec![];
        for p in [3, 5, 7] {
            out.push(coinduction_counts(p)?);
        }
        Ok(out.join("; "))
    })
}

/// Criterion 2.
pub fn criterion_reciprocity(cfg: &SuiteConfig) -> Check {
    run("C2", "reciprocity formula against direct norms, |G| <= 24", Some(300_000), || {
        let mut jobs = vec![];
        for g in small_groups() {
            for h in g.class_reps() {
                jobs.push((g.clone(), h));
            }
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs.max(1)).build().map_err(|e| e.to_string())?;
        let reports: Vec<_> = pool.install(|| {
            jobs.par_iter().map(|(g, h)| verify_reciprocity(g, *h, cfg.pairs, cfg.seed, cfg.budget)).collect()
        });
        let mut pairs = 0;
        let mut direct = 0;
        let mut rings = 0;
        for r in reports {
            let r = r.ctx()?;
            if let Some(f) = &r.failure {
                return Err(format!("{} over {}: {f}", r.sub, r.group));
            }
            pairs += r.burnside_pairs;
            direct += r.direct_pairs;
            rings += r.ring_checks;
        }
        Ok(format!("{} (group, subgroup) cases, {pairs} Burnside pairs ({direct} by direct coinduction), {rings} ring checks", jobs.len()))
    })
}

fn d6_formula() -> Outcome {
    let g = dihedral(3);
    let r = Reciprocity::new(&g, g.dih_sub(1), 1 << 20).ctx()?;
    let text = r.render(false);
    for s in ["N_D2^D6(a)", "N_D2^D6(b)", "tr_D2^D6(a * N_e^D2(z.res^D2_e(b)))", "tr_D2^D6(b * N_e^D2(z.res^D2_e(a)))"] {
        ensure(text.contains(s), || format!("missing {s} in {text}"))?;
    }
    ensure(r.summands.len() == 4, || format!("{} summands", r.summands.len()))?;
    Ok(text.replace('\n', " "))
}

fn dihedral_word_counts(p: u32) -> Outcome {
    let d = DihedralReciprocity::new(p).ctx()?;
    let wx = (1usize << p.div_ceil(2)) - 2;
    ensure(d.x_words.len() == wx, || format!("p={p}: |X| = {}", d.x_words.len()))?;
    let free = ((1usize << (p - 1)) - 1) / p as usize + 1 - (1usize << ((p - 1) / 2));
    ensure(d.y_words.len() == free, || format!("p={p}: |Y| = {}, expected {free}", d.y_words.len()))?;
    Ok(format!("p={p}: |X|={}, |Y|={}", d.x_words.len(), d.y_words.len()))
}

/// Criterion 3.
pub fn criterion_dihedral() -> Check {
    run("C3", "dihedral formula: printed shape and agreement with the general builder", Some(10_000), || {
        let mut out = vec![d6_formula()?];
        for p in [3, 5, 7] {
            let d = DihedralReciprocity::new(p).ctx()?;
            let r = Reciprocity::new(&d.group, d.group.dih_sub(1), 1 << 20).ctx()?;
            ensure(d.keys() == general_keys(&r), || format!("p={p}: dihedral and general summands differ"))?;
            out.push(dihedral_word_counts(p)?);
        }
        let d14 = DihedralReciprocity::new(7).ctx()?;
        let text = d14.render(false);
        ensure(text.contains("tr_e^D14("), || "no free summand for p = 7".into())?;
        ensure(d14.y_words.iter().all(|w| w.len() == 7), || "free summands are not 7-fold products".into())?;
        Ok(out.join("; "))
    })
}

fn norm_theorem(m: u32, budget: u128) -> Outcome {
    let n = norm_mackey(&zbar_d2(), &dihedral_inclusion(1, m), budget).ctx()?;
    let q = burnside_quotient(m);
    certify(&n, &q)?;
    let g = q.group.clone();
    let top = g.whole();
    let divs = divisors(m);
    let val = q.value(top);
    ensure(val.is_free() && val.rank() == divs.len(), || format!("m={m}: top value {}", val.describe()))?;
    let cols: Vec<Vec<crate::abgrp::Z>> = divs.iter().map(|&k| q.coords(top, &orbit_vec(&q, top, g.dih_sub(k)))).collect();
    let basis = crate::abgrp::FgAbelianGroup::new(val.num_coords(), crate::abgrp::IntMatrix::from_cols(&cols, val.num_coords()));
    ensure(basis.is_zero(), || format!("m={m}: dihedral orbits do not form a basis"))?;
    for &k in &divs {
        let lhs = orbit_vec(&q, top, g.mu(k));
        let rhs = scaled(&orbit_vec(&q, top, g.dih_sub(k)), 2);
        ensure(q.eq_at(top, &lhs, &rhs), || format!("m={m}: [G/mu_{k}] != 2[G/D{}]", 2 * k))?;
    }
    Ok(format!("m={m}: certified, top rank {}", divs.len()))
}

/// Criterion 4.
pub fn criterion_norm(cfg: &SuiteConfig) -> Check {
    run("C4", "norm of the constant functor is the Burnside quotient", Some(120_000), || {
        let mut out = vec![];
        for m in [3, 5, 9, 15] {
            out.push(norm_theorem(m, cfg.budget)?);
        }
        Ok(out.join("; "))
    })
}

fn restriction_structure(m: u32, p: u32, budget: u128) -> Outcome {
    let k = m / p;
    let n = norm_mackey(&zbar_d2(), &dihedral_inclusion(1, m), budget).ctx()?;
    let incl = dihedral_inclusion(k, m);
    let rk = norm_mackey(&zbar_d2(), &dihedral_inclusion(1, k), budget).ctx()?;
    certify(&n.restrict(&incl), &rk)?;
    let cyc = Arc::new(FiniteGroup::cyclic(k));
    let mu = GroupHom::new(cyc.clone(), n.group.clone(), (0..k).map(|i| n.group.dih((p * i) as i64, 0)).collect()).ctx()?;
    certify(&n.restrict(&mu), &Mackey::burnside(&cyc))?;
    let q = burnside_quotient(m);
    let g = q.group.clone();
    let top = g.whole();
    let lk = g.dih_sub(k);
    for &j in &divisors(m) {
        let l = gcd(k, j);
        let got = q.res(top, lk, &orbit_vec(&q, top, g.dih_sub(j)));
        let want = scaled(&orbit_vec(&q, lk, g.dih_sub(l)), (p * l / j) as i64);
        ensure(q.eq_at(lk, &got, &want), || format!("(m,p)=({m},{p}): res of [G/D{}]", 2 * j))?;
    }
    for &j in &divisors(k) {
        let got = q.tr(lk, top, &orbit_vec(&q, lk, g.dih_sub(j)));
        ensure(q.eq_at(top, &got, &orbit_vec(&q, top, g.dih_sub(j))), || format!("(m,p)=({m},{p}): tr of [D{}/D{}]", 2 * k, 2 * j))?;
    }
    Ok(format!("(m,p)=({m},{p}) ok"))
}

fn gcd(a: u32, b: u32) -> u32 {
    num_integer::gcd(a, b)
}

/// Criterion 5.
pub fn criterion_restriction(cfg: &SuiteConfig) -> Check {
    run("C5", "restriction and transfer of the norm of the constant functor", None, || {
        let mut out = vec![];
        for (m, p) in [(3, 3), (9, 3), (15, 3), (15, 5)] {
            out.push(restriction_structure(m, p, cfg.budget)?);
        }
        Ok(out.join("; "))
    })
}

/// N_{<zt>} of the transported constant functor against N_{D_2}.
fn transport(m: u32, budget: u128) -> Outcome {
    let a = dihedral_inclusion(1, m);
    let b = reflection_inclusion(m, 1);
    let g = a.dst.clone();
    let z = g.dih(m.div_ceil(2) as i64, 0);
    for x in a.src.elements() {
        ensure(b.apply(x) == g.conj_elt(z, a.apply(x)), || format!("m={m}: the two reflections are not conjugate by z^{}", m.div_ceil(2)))?;
    }
    let na = norm_mackey(&zbar_d2(), &a, budget).ctx()?;
    let nb = norm_mackey(&zbar_d2(), &b, budget).ctx()?;
    certify(&nb, &na)?;
    Ok(format!("m={m}: transported norm certified"))
}

/// Criterion 6.
pub fn criterion_hr0(cfg: &SuiteConfig) -> Check {
    run("C6", "HR_0 of the constant functor is the Burnside quotient", Some(300_000), || {
        let z = DiscreteEsigmaRing::constant_z();
        let mut out = vec![];
        for m in [3, 5, 9] {
            let h = hr0(&z, m, cfg.budget).ctx()?;
            certify(&h, &burnside_quotient(m))?;
            out.push(transport(m, cfg.budget)?);
        }
        Ok(out.join("; "))
    })
}

/// Criterion 7.
pub fn criterion_cyclotomic(cfg: &SuiteConfig) -> Check {
    run("C7", "geometric fixed points of the dihedral bar complexes", None, || {
        let z = DiscreteEsigmaRing::constant_z();
        let a = phi_compatibility(&z, 3, 3, 2, cfg.budget).ctx()?;
        let b = phi_compatibility(&z, 9, 3, 1, cfg.budget).ctx()?;
        Ok(format!("m=3: {} degree certificates commuting with faces; m=9: HR_0 certificate over {} levels", a.degrees.len(), b.hr0.mats.len()))
    })
}

/// Criterion 8.
pub fn criterion_witt(cfg: &SuiteConfig) -> Check {
    run("C8", "Witt tower for p = 3: ranks, R F = F R, F V = p, ghost components", Some(600_000), || {
        let z = DiscreteEsigmaRing::constant_z();
        let t = WittTower::new(&z, 3, 3, cfg.budget).ctx()?;
        for (n, ok) in t.levelwise_free() {
            ensure(ok, || format!("W_{n} is not levelwise free of rank {n}"))?;
        }
        ensure(t.rf_commute(2), || "R F != F R on W_3".into())?;
        for j in 1..t.levels() {
            ensure(t.fv_is_p(j), || format!("F V != p on W_{j}"))?;
        }
        let o = GhostOracle::new(&t).ctx()?;
        for (name, ok) in o.check(&t) {
            ensure(ok, || format!("{name} disagrees with the ghost formula"))?;
        }
        Ok("W_1, W_2, W_3 free of ranks 1, 2, 3".into())
    })
}

/// Marks are injective and match fixed-point counts; products agree with G-set products.
pub fn marks_property(g: &Arc<FiniteGroup>) -> std::result::Result<(), String> {
    let sys = BurnsideSystem::new(g);
    let top = sys.top();
    let n = top.rank();
    for i in 0..n {
        let x = GSet::cosets(g, top.classes[i]);
        for j in 0..n {
            let brute = x.fixed_points(top.classes[j]).len() as i128;
            ensure(top.marks[i][j] == brute, || format!("{}: mark of class {i} at {j}", g.name))?;
            ensure(j <= i || brute == 0, || format!("{}: marks are not triangular", g.name))?;
        }
        ensure(top.marks[i][i] > 0, || format!("{}: zero diagonal mark", g.name))?;
    }
    for i in 0..n {
        for j in i..n {
            let (a, b) = (top.basis(top.classes[i]), top.basis(top.classes[j]));
            ensure(top.mul(&a, &b) == sys.mul_bruteforce(&a, &b).ctx()?, || format!("{}: product of classes {i}, {j}", g.name))?;
        }
    }
    Ok(())
}

pub fn property_groups() -> Vec<Arc<FiniteGroup>> {
    let mut out: Vec<Arc<FiniteGroup>> = (1..=30).map(|n| Arc::new(FiniteGroup::cyclic(n))).collect();
    out.extend((1..=15).map(dihedral));
    for k in 3..=4 {
        out.push(Arc::new(FiniteGroup::symmetric(k)));
        out.push(Arc::new(FiniteGroup::alternating(k)));
    }
    out
}

/// The norm of a representable, presented with a trivial relation, against
/// the representable of the coinduction.
pub fn norm_of_representable(g: &Arc<FiniteGroup>, h: SubId, t: &GSet) -> std::result::Result<(), String> {
    let emb = g.subgroup_as_group(h);
    let hg = &emb.src;
    let rel = Relation { level: hg.whole(), lhs: vec![(hg.trivial(), 0, 1)], rhs: vec![(hg.trivial(), 0, 1)] };
    let p = Presentation::new(t.clone(), vec![rel]).ctx()?;
    let n = norm_mackey(&p, &emb, 1 << 20).ctx()?;
    let r = Mackey::representable(&coinduce(&emb, t, 1 << 20).ctx()?.gset);
    n.check_axioms().ctx()?;
    for l in 0..g.num_subgroups() {
        ensure(n.value(l).same_iso_type(r.value(l)), || format!("{} from {}: values differ at {}", g.name, g.sub_name(h), g.sub_name(l)))?;
    }
    let f = mackey_iso(&n, &r, &[identity_seed(&n)]).ctx()?;
    ensure(f.is_iso(&n, &r), || "identity on generators is not an isomorphism".into())
}

/// Criterion 9.
pub fn criterion_properties(cfg: &SuiteConfig) -> Check {
    run("C9", "Mackey axioms, simplicial identities, marks, norms of representables", None, || {
        let z = DiscreteEsigmaRing::constant_z();
        let mut diagrams = 0;
        for m in [1, 3, 5, 9] {
            norm_mackey(&zbar_d2(), &dihedral_inclusion(1, m), cfg.budget).ctx()?.check_axioms().ctx()?;
            hr0(&z, m, cfg.budget).ctx()?.check_axioms().ctx()?;
            burnside_quotient(m).check_axioms().ctx()?;
            diagrams += 3;
        }
        let mut complexes = 0;
        for (m, top) in [(1, 3), (3, 2), (5, 2), (9, 1)] {
            let c = HrComplex::new(&z, m, top, cfg.budget).ctx()?;
            for b in &c.terms {
                b.check_axioms().ctx()?;
                diagrams += 1;
            }
            c.check_simplicial().ctx()?;
            c.check_d_squared().ctx()?;
            complexes += 1;
        }
        let t = WittTower::new(&z, 3, 3, cfg.budget).ctx()?;
        for w in &t.w {
            w.check_axioms().ctx()?;
            diagrams += 1;
        }
        let groups = property_groups();
        for g in &groups {
            marks_property(g)?;
        }
        let mut norms = 0;
        for g in [dihedral(2), dihedral(3), dihedral(4), dihedral(5), dihedral(7), Arc::new(FiniteGroup::cyclic(6)), Arc::new(FiniteGroup::symmetric(3)), Arc::new(FiniteGroup::symmetric(4))] {
            for h in g.class_reps() {
                if g.index(h, g.whole()) > 7 || h == g.whole() {
                    continue;
                }
                let emb = g.subgroup_as_group(h);
                let hg = emb.src.clone();
                let mut ts = vec![GSet::trivial(&hg, 2)];
                if hg.order() <= 3 && g.index(h, g.whole()) <= 4 {
                    ts.push(GSet::cosets(&hg, hg.trivial()));
                }
                for t in &ts {
                    norm_of_representable(&g, h, t)?;
                    norms += 1;
                    diagrams += 1;
                }
            }
        }
        Ok(format!("{diagrams} diagrams, {complexes} bar complexes, {} groups for marks, {norms} norms of representables", groups.len()))
    })
}

pub fn criteria(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        criterion_coinduction(),
        criterion_reciprocity(cfg),
        criterion_dihedral(),
        criterion_norm(cfg),
        criterion_restriction(cfg),
        criterion_hr0(cfg),
        criterion_cyclotomic(cfg),
        criterion_witt(cfg),
        criterion_properties(cfg),
    ]
}

/// Smaller regressions with known values.
pub fn regressions(cfg: &SuiteConfig) -> Vec<Check> {
    let b = cfg.budget;
    let mut out = vec![];
    out.push(run("R1", "D2 double cosets in D_2p number (p+1)/2", None, || {
        for p in [3u32, 5, 7] {
            let g = dihedral(p);
            let n = g.double_cosets(g.dih_sub(1), g.dih_sub(1)).len();
            ensure(n == (p as usize).div_ceil(2), || format!("p={p}: {n}"))?;
        }
        Ok("p = 3, 5, 7".into())
    }));
    out.push(run("R2", "conjugating D2 by z^((m+1)/2) gives <zt>", None, || {
        for m in [3u32, 5, 7, 9] {
            let g = dihedral(m);
            let z = g.dih(m.div_ceil(2) as i64, 0);
            ensure(g.conj_sub(z, g.dih_sub(1)) == g.dih_sub_at(1, 1), || format!("m={m}"))?;
        }
        Ok("m = 3, 5, 7, 9".into())
    }));
    out.push(run("R3", "Weyl group of mu_m in D_2m has order 2", None, || {
        for m in [3u32, 5, 9] {
            let g = dihedral(m);
            let mu = g.mu(m);
            let w = g.sub_order(g.normalizer(mu)) / g.sub_order(mu);
            ensure(w == 2, || format!("m={m}: {w}"))?;
            let x = GSet::cosets(&g, mu).restrict(&g.subgroup_as_group(mu));
            ensure(x.len() == 2 && x.orbits().len() == 2, || format!("m={m}: D_2m/mu_m restricted to mu_m is not two points"))?;
        }
        Ok("m = 3, 5, 9".into())
    }));
    out.push(run("R4", "Map^D2(D6, {a,b}) = 2 pt + 2 D6/D2", None, || {
        let emb = dihedral_inclusion(1, 3);
        let x = coinduce(&emb, &GSet::trivial(&emb.src, 2), b).ctx()?.gset;
        let g = emb.dst.clone();
        let want = GSet::from_orbits(&g, &[g.whole(), g.whole(), g.dih_sub(1), g.dih_sub(1)]);
        ensure(x.is_isomorphic(&want), || x.describe())?;
        Ok(x.describe())
    }));
    out.push(run("R5", "c_p and d_p", None, || {
        let got: Vec<(u64, u64)> = [3, 5, 7].iter().map(|&p| c_p_d_p(p).unwrap()).collect();
        ensure(got == vec![(1, 0), (3, 0), (7, 2)], || format!("{got:?}"))?;
        Ok(format!("{got:?}"))
    }));
    out.push(run("R6", "Map^D2(D_2p, D2) = D_2p/mu_p + (c_p + d_p) D_2p", None, || {
        let mut s = vec![];
        for p in [3u32, 5, 7] {
            let emb = dihedral_inclusion(1, p);
            let x = coinduce(&emb, &GSet::cosets(&emb.src, 0), b).ctx()?.gset;
            let g = emb.dst.clone();
            let (c, d) = c_p_d_p(p).ctx()?;
            let want = GSet::cosets(&g, g.mu(p)).disjoint_union(&GSet::cosets(&g, 0).multiple((c + d) as usize));
            ensure(x.is_isomorphic(&want), || format!("p={p}: {}", x.describe()))?;
            s.push(x.describe());
        }
        Ok(s.join("; "))
    }));
    out.push(run("R7", "circle points mu_18 over D6 = D6/D2 + 2 D6 + D6/<zt>", None, || {
        let x = circle_points(3, 2);
        let g = x.group.clone();
        let want = GSet::from_orbits(&g, &[g.dih_sub(1), g.dih_sub_at(1, 1), 0, 0]);
        ensure(x.is_isomorphic(&want), || x.describe())?;
        Ok(x.describe())
    }));
    out.push(run("R8", "D18/H x D18/mu_9 for H = D6 and H = mu_3", None, || {
        let g = dihedral(9);
        let top = GSet::cosets(&g, g.mu(9));
        let a = GSet::cosets(&g, g.dih_sub(3)).product(&top);
        ensure(a.is_isomorphic(&GSet::cosets(&g, g.mu(3))), || a.describe())?;
        let c = GSet::cosets(&g, g.mu(3)).product(&top);
        ensure(c.is_isomorphic(&GSet::cosets(&g, g.mu(3)).multiple(2)), || c.describe())?;
        Ok(format!("{}; {}", a.describe(), c.describe()))
    }));
    out.push(run("R9", "[D_2m/D_2k][D_2m/mu_m] = [D_2m/mu_k]", None, || {
        for m in [9u32, 15] {
            let g = dihedral(m);
            let sys = BurnsideSystem::new(&g);
            let top = sys.top();
            for k in divisors(m) {
                let prod = top.mul(&top.basis(g.dih_sub(k)), &top.basis(g.mu(m)));
                ensure(prod == top.basis(g.mu(k)), || format!("m={m} k={k}"))?;
            }
        }
        Ok("m = 9, 15".into())
    }));
    out.push(run("R10", "Burnside functor of D2: tr(1) = [D2/e], res [D2/e] = 2", None, || {
        let g = dihedral(1);
        let sys = BurnsideSystem::new(&g);
        let t = sys.tr(0, 1, &sys.level(0).one());
        ensure(t == sys.top().basis(0), || format!("{t:?}"))?;
        let r = sys.res(1, 0, &sys.top().basis(0));
        ensure(r == sys.level(0).from_int(2), || format!("{r:?}"))?;
        Ok("ok".into())
    }));
    out.push(run("R11", "N_D2^D_2p([D2/e]) and N_D2^D_2p(2) by coinduction and by marks", None, || {
        for p in [3u32, 5, 7] {
            let g = dihedral(p);
            let sys = BurnsideSystem::new(&g);
            let d2 = g.dih_sub(1);
            let (c, d) = c_p_d_p(p).ctx()?;
            let top = sys.top();
            let free = sys.level(d2).basis(0);
            let mut want = top.basis(g.mu(p));
            want[top.class_of(0)] += (c + d) as i128;
            let two = sys.level(d2).from_int(2);
            let mut want2 = top.from_int(2);
            want2[top.class_of(d2)] += 2 * c as i128;
            want2[top.class_of(0)] += d as i128;
            for (x, w) in [(&free, &want), (&two, &want2)] {
                ensure(sys.norm_coinduction(d2, g.whole(), x, b).ctx()? == *w, || format!("p={p}: coinduction"))?;
                ensure(sys.norm_marks(d2, g.whole(), x) == *w, || format!("p={p}: marks"))?;
            }
        }
        Ok("p = 3, 5, 7".into())
    }));
    out.push(run("R12", "norms of the fold span and of the transfer span", None, || {
        for p in [3u32, 5, 7] {
            let emb = dihedral_inclusion(1, p);
            let d2 = emb.src.clone();
            let g = emb.dst.clone();
            let (c, d) = c_p_d_p(p).ctx()?;
            let pt = GSet::point(&d2);
            let mut fold = SpanHom::zero(&pt, &pt);
            fold.add_term(d2.whole(), 0, 0, 2).ctx()?;
            let n = norm_span(&emb, &fold, b).ctx()?;
            let mut counts = std::collections::BTreeMap::new();
            for (&(k, _, _), &m) in &n.terms {
                *counts.entry(g.sub_order(k)).or_insert(0i64) += m;
            }
            let want: std::collections::BTreeMap<usize, i64> =
                [(2 * p as usize, 2), (2, 2 * c as i64), (1, d as i64)].into_iter().filter(|&(_, v)| v != 0).collect();
            ensure(counts == want, || format!("p={p}: fold gives {counts:?}"))?;
            let tr = SpanHom::transfer_along(&GMap::new(&GSet::cosets(&d2, 0), &pt, vec![0, 0]).ctx()?);
            let nt = norm_span(&emb, &tr, b).ctx()?;
            let mut apex = std::collections::BTreeMap::new();
            for (&(k, _, _), &m) in &nt.terms {
                *apex.entry(g.sub_order(k)).or_insert(0i64) += m;
            }
            let want: std::collections::BTreeMap<usize, i64> = [(p as usize, 1), (1, (c + d) as i64)].into_iter().collect();
            ensure(apex == want, || format!("p={p}: transfer gives {apex:?}"))?;
        }
        Ok("p = 3, 5, 7".into())
    }));
    out.push(run("R13", "reciprocity formula over D6 and the free summand over D14", None, || {
        let s = d6_formula()?;
        let d = DihedralReciprocity::new(7).ctx()?;
        ensure(d.render(false).contains("tr_e^D14("), || "no free summand".into())?;
        Ok(s)
    }));
    out.push(run("R14", "summand families |X| and |Y| for p = 3, 5, 7", None, || {
        let mut s = vec![];
        for p in [3, 5, 7] {
            s.push(dihedral_word_counts(p)?);
        }
        Ok(s.join("; "))
    }));
    out.push(run("R15", "reciprocity at a = b = 1 gives N(2)", None, || {
        for p in [3u32, 5, 7] {
            let g = dihedral(p);
            let d2 = g.dih_sub(1);
            let r = Reciprocity::new(&g, d2, b).ctx()?;
            let bm = BurnsideMarks::new(&g);
            let one = bm.lit(d2, 1);
            let got = bm.to_basis(g.whole(), &r.evaluate(&bm, &one, &one));
            let want = bm.sys.norm_marks(d2, g.whole(), &bm.sys.level(d2).from_int(2));
            ensure(got == want, || format!("p={p}: {got:?} vs {want:?}"))?;
        }
        Ok("p = 3, 5, 7".into())
    }));
    out.push(run("R16", "constant functor on D2 as a Burnside quotient", None, || {
        let z = DiscreteEsigmaRing::constant_z();
        let m = &z.mackey;
        let g = &m.group;
        let (e, top) = (g.trivial(), g.whole());
        ensure(m.value(e).invariant_factors_i64() == vec![0] && m.value(top).invariant_factors_i64() == vec![0], || "values are not Z".into())?;
        ensure(m.eq_at(e, &m.res(top, e, &m.unit(top)), &m.unit(e)), || "res is not 1".into())?;
        ensure(m.eq_at(top, &m.tr(e, top, &m.unit(e)), &scaled(&m.unit(top), 2)), || "tr is not 2".into())?;
        z.check_structure().ctx()?;
        Ok("res = 1, tr = 2".into())
    }));
    out.push(run("R17", "A^D6/(2 - [D6/mu_3]) has top basis 1, [D6/D2]", None, || norm_theorem(3, b)));
    out.push(run("R18", "norm of the constant functor to D18 and D30", None, || {
        Ok(format!("{}; {}", norm_theorem(9, b)?, norm_theorem(15, b)?))
    }));
    out.push(run("R19", "transported norm along <zt> agrees with the norm along D2", None, || {
        Ok(format!("{}; {}", transport(3, b)?, transport(5, b)?))
    }));
    out.push(run("R20", "degree one faces fix the unit; simplicial identities for m = 3", None, || {
        let z = DiscreteEsigmaRing::constant_z();
        let c = HrComplex::new(&z, 3, 2, b).ctx()?;
        let top = c.group.whole();
        for f in &c.faces[1] {
            ensure(c.terms[0].eq_at(top, &f.apply(top, &c.terms[1].unit(top)), &c.terms[0].unit(top)), || "face does not fix 1".into())?;
        }
        c.check_simplicial().ctx()?;
        c.check_d_squared().ctx()?;
        Ok("ok".into())
    }));
    out.push(run("R21", "HR_0 over D6 is the Burnside quotient; top ranks count divisors", None, || {
        let z = DiscreteEsigmaRing::constant_z();
        certify(&hr0(&z, 3, b).ctx()?, &burnside_quotient(3))?;
        let mut s = vec![];
        for m in [3u32, 5, 9, 15] {
            let h = hr0(&z, m, b).ctx()?;
            let v = h.value(h.group.whole());
            ensure(v.is_free() && v.rank() == divisors(m).len(), || format!("m={m}: {}", v.describe()))?;
            s.push(format!("m={m}: rank {}", v.rank()));
        }
        Ok(s.join("; "))
    }));
    out.push(run("R22", "W_2 and W_3 for p = 3 are levelwise free; R F = F R", None, || {
        let z = DiscreteEsigmaRing::constant_z();
        let t = WittTower::new(&z, 3, 3, b).ctx()?;
        ensure(t.levelwise_free().iter().all(|&(_, ok)| ok), || format!("{:?}", t.levelwise_free()))?;
        ensure(t.rf_commute(2), || "R F != F R".into())?;
        Ok("ok".into())
    }));
    out
}

/// The full suite: regressions followed by the acceptance criteria.
pub fn full_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = regressions(cfg);
    out.extend(criteria(cfg));
    out
}

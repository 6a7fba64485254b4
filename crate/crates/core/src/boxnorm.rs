//! Box products and norms of presented Mackey functors.
//!
//! Coinduction Map^H(G, -) carries effective spans to effective spans and
//! preserves reflexive coequalizers, so a presentation A_U => A_T of M gives a
//! presentation of N_H^G M with generators Map^H(G, T).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::burnside::SpanHom;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupHom, SubId};
use crate::gsets::{coinduce, coinduce_orbits, coinduction_size, tuple_orbits, Coinduction, GMap, GSet, RightCosetAction};
use crate::mackey::{Mackey, Presentation, Relation, SpanTerms};

/// An effective span X <- Z -> Y of H-sets with explicit legs.
#[derive(Clone, Debug)]
pub struct ExplicitSpan {
    pub apex: GSet,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

/// H/K with points the minimal left coset representatives, and the coset of each element.
fn coset_index(g: &FiniteGroup, k: SubId) -> (Vec<u32>, Vec<u32>) {
    let reps = g.left_coset_reps(k);
    let mut which = vec![0u32; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &x in g.sub_elems(k) {
            which[g.mul(r, x) as usize] = i as u32;
        }
    }
    (reps, which)
}

/// Builds the apex of a relation side: one copy of H/K per unit of coefficient,
/// mapped to the orbit H/L at `u_offset` and to T via hK -> h t.
fn side_span(t: &GSet, level: SubId, u_offset: u32, terms: &SpanTerms, apex: &mut GSet, left: &mut Vec<u32>, right: &mut Vec<u32>) -> Result<()> {
    let g = &t.group;
    let (_, lwhich) = coset_index(g, level);
    for &(k, x, c) in terms {
        if c < 0 {
            return Err(Error::NotEffective);
        }
        let (kreps, _) = coset_index(g, k);
        for _ in 0..c {
            *apex = apex.disjoint_union(&GSet::cosets(g, k));
            for &r in &kreps {
                left.push(u_offset + lwhich[r as usize]);
                right.push(t.act(r, x));
            }
        }
    }
    Ok(())
}

/// The reflexive pair U + T <= Z_i => T describing a presentation.
pub struct ReflexivePair {
    pub ut: GSet,
    /// Points of UT at or above this index lie in the T copy.
    pub t_start: u32,
    pub sides: [ExplicitSpan; 2],
}

pub fn reflexive_pair(p: &Presentation) -> Result<ReflexivePair> {
    let g = &p.group;
    let t = &p.gens;
    let mut u = GSet::empty(g);
    let mut sides: Vec<ExplicitSpan> = (0..2).map(|_| ExplicitSpan { apex: GSet::empty(g), left: vec![], right: vec![] }).collect();
    for r in &p.rels {
        let off = u.len() as u32;
        u = u.disjoint_union(&GSet::cosets(g, r.level));
        for (side, terms) in sides.iter_mut().zip([&r.lhs, &r.rhs]) {
            side_span(t, r.level, off, terms, &mut side.apex, &mut side.left, &mut side.right)?;
        }
    }
    let t_start = u.len() as u32;
    let ut = u.disjoint_union(t);
    for side in sides.iter_mut() {
        side.apex = side.apex.disjoint_union(t);
        for x in 0..t.len() as u32 {
            side.left.push(t_start + x);
            side.right.push(x);
        }
    }
    let [a, b]: [ExplicitSpan; 2] = sides.try_into().map_err(|_| Error::Dimension("sides".into()))?;
    Ok(ReflexivePair { ut, t_start, sides: [a, b] })
}

/// N_H^G of a presented Mackey functor along an injective hom H -> G.
pub fn norm_presentation(p: &Presentation, emb: &GroupHom, budget: u128) -> Result<Presentation> {
    if !emb.is_injective() {
        return Err(Error::NotSubgroup("norms need an injective hom".into()));
    }
    if *emb.src != *p.group {
        return Err(Error::GroupMismatch("presentation is not over the source group".into()));
    }
    let g = &emb.dst;
    let pair = reflexive_pair(p)?;
    let gens: Coinduction = coinduce(emb, &p.gens, budget)?;
    let rca = RightCosetAction::new(emb);
    let n = rca.len();
    let needed = coinduction_size(pair.ut.len(), n);
    if needed > budget {
        return Err(Error::Budget { what: "coinduction points", needed, limit: budget });
    }
    let mut rels = vec![];
    for orb in coinduce_orbits(emb, &pair.ut, budget)? {
        if orb.rep.iter().all(|&x| x >= pair.t_start) {
            continue;
        }
        let kf = orb.stabilizer;
        let mut sides: Vec<SpanTerms> = vec![];
        for side in &pair.sides {
            let lists: Vec<Vec<u32>> = orb
                .rep
                .iter()
                .map(|&f| (0..side.apex.len() as u32).filter(|&z| side.left[z as usize] == f).collect())
                .collect();
            let mut terms: BTreeMap<(SubId, u32), i64> = BTreeMap::new();
            for lift in tuple_orbits(&rca, &side.apex, &lists, kf, budget)? {
                let vals: Vec<u32> = lift.rep.iter().map(|&z| side.right[z as usize]).collect();
                *terms.entry((lift.stabilizer, gens.encode(&vals))).or_insert(0) += 1;
            }
            sides.push(terms.into_iter().map(|((k, x), c)| (k, x, c)).collect());
        }
        let rhs = sides.pop().unwrap();
        let lhs = sides.pop().unwrap();
        rels.push(Relation { level: kf, lhs, rhs });
    }
    Ok(Presentation { group: g.clone(), gens: gens.gset, rels }.prune())
}

pub fn norm_mackey(p: &Presentation, emb: &GroupHom, budget: u128) -> Result<Mackey> {
    Ok(Mackey::from_presentation(&norm_presentation(p, emb, budget)?))
}

/// The coinduced map Map^H(G, X) -> Map^H(G, Y).
pub fn norm_gmap(emb: &GroupHom, f: &GMap, budget: u128) -> Result<GMap> {
    let cx = coinduce(emb, &f.source, budget)?;
    let cy = coinduce(emb, &f.target, budget)?;
    let map = (0..cx.gset.len() as u32)
        .map(|p| {
            let vals: Vec<u32> = cx.decode(p).iter().map(|&x| f.apply(x)).collect();
            cy.encode(&vals)
        })
        .collect();
    Ok(GMap { source: cx.gset, target: cy.gset, map })
}

/// The norm of an effective span, by coinducing both legs.
pub fn norm_span(emb: &GroupHom, s: &SpanHom, budget: u128) -> Result<SpanHom> {
    let h = &emb.src;
    let mut apex = GSet::empty(h);
    let mut left = vec![];
    let mut right = vec![];
    for (&(k, x, y), &c) in &s.terms {
        if c < 0 {
            return Err(Error::NotEffective);
        }
        let (reps, _) = coset_index(h, k);
        for _ in 0..c {
            apex = apex.disjoint_union(&GSet::cosets(h, k));
            for &r in &reps {
                left.push(s.source.act(r, x));
                right.push(s.target.act(r, y));
            }
        }
    }
    let cx = coinduce(emb, &s.source, budget)?;
    let cy = coinduce(emb, &s.target, budget)?;
    let cz = coinduce(emb, &apex, budget)?;
    let mut out = SpanHom::zero(&cx.gset, &cy.gset);
    for o in cz.gset.orbits() {
        let vals = cz.decode(o.rep);
        let a = cx.encode(&vals.iter().map(|&z| left[z as usize]).collect::<Vec<_>>());
        let b = cy.encode(&vals.iter().map(|&z| right[z as usize]).collect::<Vec<_>>());
        out.add_term(o.stabilizer, a, b, 1)?;
    }
    Ok(out)
}

/// Box product of presented functors, realized.
pub fn box_mackey(a: &Presentation, b: &Presentation) -> Mackey {
    Mackey::from_presentation(&a.box_product(b))
}

/// The constant functor Z on D_2 presented as A / ([D2/D2]*2 = [D2/e]).
pub fn zbar_d2() -> Presentation {
    let g = Arc::new(FiniteGroup::dihedral(1));
    Presentation::burnside_quotient(&g, 1, vec![(1, 0, 2)], vec![(0, 0, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{dihedral_inclusion, reflection_inclusion};
    use crate::gsets::DEFAULT_COINDUCTION_BUDGET;
    use crate::mackey::mackey_iso;

    #[test]
    fn norm_of_burnside_is_burnside() {
        let g = Arc::new(FiniteGroup::dihedral(1));
        let a = Presentation::free(GSet::point(&g));
        let n = norm_mackey(&a, &dihedral_inclusion(1, 3), DEFAULT_COINDUCTION_BUDGET).unwrap();
        let b = Mackey::burnside(&n.group);
        for h in 0..n.group.num_subgroups() {
            assert!(n.value(h).same_iso_type(b.value(h)));
        }
    }

    #[test]
    fn norm_of_zbar_is_mackey() {
        let p = zbar_d2();
        for m in [2, 3, 4] {
            let n = norm_mackey(&p, &dihedral_inclusion(1, m), DEFAULT_COINDUCTION_BUDGET).unwrap();
            n.check_axioms().unwrap();
            let nz = norm_mackey(&p, &reflection_inclusion(m, 1), DEFAULT_COINDUCTION_BUDGET).unwrap();
            nz.check_axioms().unwrap();
            if m % 2 == 1 {
                // For odd m the two reflections are conjugate, so the unit goes to the unit.
                let seed = vec![n.gens.iter().map(|(l, _)| nz.unit(*l)).collect()];
                let f = mackey_iso(&n, &nz, &seed).unwrap();
                assert!(f.is_iso(&n, &nz));
                f.check_natural(&n, &nz).unwrap();
            }
        }
    }
}

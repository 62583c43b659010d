//! Ideals of finite rings, kept fully enumerated.
//!
//! An ideal is identified by its sorted element set; the generator list is
//! carried along for readability and for cheap products.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::caps::Caps;
use crate::error::{check_cap, internal, Error, Result};
use crate::ring::{same_ring, Elem, FiniteRing, RingHom, RingRef};
use crate::snf::relation_quotient;

#[derive(Debug, Clone)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Elem>,
    elements: Vec<Elem>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.elements == other.elements
    }
}

impl Eq for Ideal {}

impl Ideal {
    /// The least ideal containing `gens`, by fixed-point closure.
    pub fn closure(ring: &RingRef, gens: Vec<Elem>) -> Ideal {
        let n = ring.order();
        let mut seed_seen = vec![false; n];
        let mut seeds = Vec::new();
        for &g in &gens {
            for r in ring.elements() {
                let s = ring.mul(r, g);
                if s != Elem::ZERO && !core::mem::replace(&mut seed_seen[s.index()], true) {
                    seeds.push(s);
                }
            }
        }
        let elements = additive_span(ring, &seeds);
        Ideal { ring: ring.clone(), generators: gens, elements }
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal { ring: ring.clone(), generators: Vec::new(), elements: vec![Elem::ZERO] }
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal::closure(ring, vec![ring.one()])
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Sorted element set.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false: every ideal contains zero.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == self.ring.order()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `self ⊆ other`
    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::MismatchedRings)
        }
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let r = &self.ring;
        let mut gens: Vec<Elem> =
            self.generators.iter().flat_map(|&a| other.generators.iter().map(move |&b| r.mul(a, b))).filter(|&x| x != Elem::ZERO).collect();
        gens.sort();
        gens.dedup();
        Ok(Ideal::closure(r, gens))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().copied().filter(|g| !self.generators.contains(g)));
        Ok(Ideal::closure(&self.ring, gens))
    }

    /// `self^e`, with `self^0 = (1)`.
    pub fn power(&self, e: usize) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..e {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// `contains` in the ideal-arithmetic sense: `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        Ok(other.is_subset(self))
    }

    /// Image under a ring hom, as an ideal of the target (the extension `φ(I)·T`).
    pub fn extend(&self, hom: &RingHom) -> Result<Ideal> {
        if !same_ring(hom.source(), &self.ring) {
            return Err(Error::MismatchedRings);
        }
        let gens = self.generators.iter().map(|&g| hom.apply(g)).collect();
        Ok(Ideal::closure(hom.target(), gens))
    }

    /// Least `n ≥ 1` with `self^n = 0`, if any.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut p = self.clone();
        let mut prev_len = usize::MAX;
        for n in 1.. {
            if p.is_zero() {
                return Some(n);
            }
            if p.len() == prev_len {
                return None;
            }
            prev_len = p.len();
            p = p.product(self).expect("same ring");
        }
        unreachable!()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    /// The lexicographically first `a` with `(a) = self`, if the ideal is principal.
    pub fn principal_generator(&self) -> Option<Elem> {
        self.elements.iter().copied().find(|&a| Ideal::closure(&self.ring, vec![a]).elements == self.elements)
    }
}

/// Additive subgroup generated by `seeds` (sorted).
fn additive_span(ring: &FiniteRing, seeds: &[Elem]) -> Vec<Elem> {
    let mut seen = vec![false; ring.order()];
    seen[0] = true;
    let mut out = vec![Elem::ZERO];
    let mut queue = VecDeque::from([Elem::ZERO]);
    while let Some(x) = queue.pop_front() {
        for &s in seeds {
            let y = ring.add(x, s);
            if !core::mem::replace(&mut seen[y.index()], true) {
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort();
    out
}

/// `R/J` with its projection. The additive decomposition of the quotient is
/// recomputed from scratch by Smith normal form.
pub fn quotient_ring(j: &Ideal) -> Result<(RingRef, RingHom)> {
    let r = j.ring();
    let relations: Vec<Vec<i64>> = j.elements().iter().map(|&x| r.coeffs(x).into_iter().map(|c| c as i64).collect()).collect();
    let dec = relation_quotient(r.additive_orders(), &relations);
    let new_orders = dec.orders.clone();

    let project = |x: Elem| -> Vec<u64> {
        let c = r.coeffs(x);
        new_orders
            .iter()
            .enumerate()
            .map(|(f, &s)| {
                let v: u128 = c.iter().zip(&dec.project).map(|(&cj, p)| cj as u128 * p[f] as u128).sum();
                (v % s as u128) as u64
            })
            .collect()
    };
    let lift = |f: usize| -> Elem {
        let coeffs: Vec<i64> = dec.lift[f].iter().map(|&c| c as i64).collect();
        r.elem_from_coeffs(&coeffs).expect("lift has one coefficient per generator")
    };

    let k = new_orders.len();
    let lifts: Vec<Elem> = (0..k).map(lift).collect();
    let one = project(r.one());
    let mul: Vec<Vec<Vec<u64>>> = (0..k).map(|a| (0..k).map(|b| project(r.mul(lifts[a], lifts[b]))).collect()).collect();
    let label = r.label().map(|l| {
        let gens: Vec<String> = j.generators().iter().map(|&g| r.fmt_elem(g)).collect();
        format!("{l}/({})", gens.join(","))
    });
    // the quotient is never larger than R, so the ring cap cannot bite here
    let caps = Caps { ring: usize::MAX, ..Caps::default() };
    let q = FiniteRing::new(dec.orders.clone(), one, mul, label, &caps).map_err(|e| internal(format!("quotient ring invalid: {e}")))?;
    if q.order() * j.len() != r.order() {
        return Err(internal("quotient order times ideal order differs from ring order"));
    }
    let q = Arc::new(q);
    let images: Vec<Elem> = (0..r.generator_count())
        .map(|i| {
            let c: Vec<i64> = project(r.generator(i)).into_iter().map(|x| x as i64).collect();
            q.elem_from_coeffs(&c).expect("projection has one coefficient per factor")
        })
        .collect();
    let hom = RingHom::new(r.clone(), q.clone(), images).map_err(|e| internal(format!("projection is not a hom: {e}")))?;
    Ok((q, hom))
}

/// Every ideal of `ring`, each exactly once, ordered by size then element set.
pub fn enumerate_ideals(ring: &RingRef, caps: &Caps) -> Result<Vec<Ideal>> {
    check_cap("exhaustive ideal enumeration", ring.order() as u128, caps.ideal_enum)?;
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut found = Vec::new();
    let zero = Ideal::zero(ring);
    seen.insert(zero.elements.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(i) = queue.pop_front() {
        for x in ring.elements() {
            if i.contains(x) {
                continue;
            }
            let mut gens = i.generators.clone();
            gens.push(x);
            let j = Ideal::closure(ring, gens);
            if seen.insert(j.elements.clone()) {
                queue.push_back(j);
            }
        }
        found.push(i);
    }
    found.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
    Ok(found)
}

/// Local-ring data: the maximal ideal, residue field size and nilpotency index.
#[derive(Debug, Clone)]
pub struct LocalStructure {
    pub is_local: bool,
    pub maximal_ideal: Option<Ideal>,
    pub residue_field_order: Option<usize>,
    pub nilpotency_index: Option<usize>,
    /// Every unit with its lexicographically first inverse.
    pub units: Vec<(Elem, Elem)>,
}

impl LocalStructure {
    pub fn maximal(&self) -> Result<&Ideal> {
        self.maximal_ideal.as_ref().ok_or(Error::NotLocal)
    }

    pub fn residue_order(&self) -> Result<usize> {
        self.residue_field_order.ok_or(Error::NotLocal)
    }
}

pub fn local_structure(ring: &RingRef) -> LocalStructure {
    let units = ring.units();
    let mut is_unit = vec![false; ring.order()];
    for &(u, _) in &units {
        is_unit[u.index()] = true;
    }
    let non_units: Vec<Elem> = ring.elements().filter(|x| !is_unit[x.index()]).collect();
    // non-units are always closed under multiplication by R; local iff also under +
    let is_local = !ring.is_zero_ring() && non_units.iter().all(|&a| non_units.iter().all(|&b| !is_unit[ring.add(a, b).index()]));
    if !is_local {
        return LocalStructure { is_local, maximal_ideal: None, residue_field_order: None, nilpotency_index: None, units };
    }
    let mut m = Ideal { ring: ring.clone(), generators: Vec::new(), elements: non_units };
    m.generators = greedy_minimal_generators(&m, &m).expect("m·m ⊆ m");
    let residue = ring.order() / m.len();
    let nil = m.nilpotency_index();
    LocalStructure { is_local, maximal_ideal: Some(m), residue_field_order: Some(residue), nilpotency_index: nil, units }
}

fn greedy_minimal_generators(i: &Ideal, m: &Ideal) -> Result<Vec<Elem>> {
    let ring = i.ring();
    let mi = m.product(i)?;
    let mut span = mi.clone();
    let mut chosen = Vec::new();
    for &x in i.elements() {
        if span.len() == i.len() {
            break;
        }
        if !span.contains(x) {
            chosen.push(x);
            let mut gens = mi.generators().to_vec();
            gens.extend(&chosen);
            span = Ideal::closure(ring, gens);
        }
    }
    Ok(chosen)
}

/// A minimal generating set of `i` over a local ring, lifting a residue basis
/// of `I/mI` chosen lexicographically.
pub fn minimal_generators(i: &Ideal) -> Result<Vec<Elem>> {
    let ls = local_structure(i.ring());
    let m = ls.maximal()?;
    let gens = greedy_minimal_generators(i, m)?;
    let q = ls.residue_order()?;
    let mi = m.product(i)?;
    let quotient = i.len() / mi.len();
    if q.checked_pow(gens.len() as u32) != Some(quotient) {
        return Err(internal("minimal generator count differs from dim I/mI"));
    }
    if Ideal::closure(i.ring(), gens.clone()) != *i {
        return Err(internal("minimal generators do not generate the ideal"));
    }
    Ok(gens)
}

/// Outcome of the generator-lifting check through a nilpotent ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerationReport {
    /// `A[elems] = B`.
    pub generates: bool,
    /// The residues of `elems` generate `B/IB` over `A`.
    pub residues_generate: bool,
}

/// Decide whether `elems` generate `B` as an `A`-algebra, alongside whether
/// their residues generate `B/IB`. With `I` nilpotent the second implies the first.
pub fn subalgebra_generates(hom: &RingHom, i: &Ideal, elems: &[Elem]) -> Result<GenerationReport> {
    if !same_ring(i.ring(), hom.source()) {
        return Err(Error::MismatchedRings);
    }
    if !i.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let b = hom.target();
    let image: Vec<Elem> = hom.source().elements().map(|a| hom.apply(a)).collect();
    let mut seeds = image.clone();
    seeds.extend_from_slice(elems);
    let generates = subring_closure(b, &seeds).len() == b.order();

    let ib = i.extend(hom)?;
    seeds.extend_from_slice(ib.elements());
    let residues_generate = subring_closure(b, &seeds).len() == b.order();
    Ok(GenerationReport { generates, residues_generate })
}

/// Closure of `seeds` under addition and multiplication (sorted).
pub fn subring_closure(ring: &FiniteRing, seeds: &[Elem]) -> Vec<Elem> {
    let mut seen = vec![false; ring.order()];
    let mut list: Vec<Elem> = Vec::new();
    let mut push = |x: Elem, list: &mut Vec<Elem>| {
        if !core::mem::replace(&mut seen[x.index()], true) {
            list.push(x);
        }
    };
    push(Elem::ZERO, &mut list);
    for &s in seeds {
        push(s, &mut list);
    }
    let mut next = 0;
    while next < list.len() {
        let x = list[next];
        let mut i = 0;
        while i <= next {
            let y = list[i];
            push(ring.add(x, y), &mut list);
            push(ring.mul(x, y), &mut list);
            i += 1;
        }
        next += 1;
    }
    list.sort();
    list
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, RingSpec};

    fn ring(spec: RingSpec) -> RingRef {
        build_ring(&spec, &Caps::default()).unwrap()
    }

    fn dual() -> RingRef {
        ring(RingSpec::truncated_poly(RingSpec::zmod(2), 1, 2))
    }

    fn plane() -> RingRef {
        ring(RingSpec::truncated_poly(RingSpec::zmod(2), 2, 2))
    }

    #[test]
    fn closure_in_z4() {
        let r = ring(RingSpec::zmod(4));
        assert_eq!(Ideal::closure(&r, vec![Elem(2)]).elements(), &[Elem(0), Elem(2)]);
        assert_eq!(Ideal::closure(&r, vec![]).elements(), &[Elem(0)]);
    }

    #[test]
    fn closure_of_x_in_plane() {
        let r = plane();
        let x = r.generator(1);
        assert_eq!(Ideal::closure(&r, vec![x]).elements(), &[Elem::ZERO, x]);
    }

    #[test]
    fn ideal_arithmetic() {
        let z4 = ring(RingSpec::zmod(4));
        let m = local_structure(&z4).maximal_ideal.unwrap();
        let two = Ideal::closure(&z4, vec![Elem(2)]);
        assert!(m.product(&two).unwrap().is_zero());

        let r = plane();
        let m = local_structure(&r).maximal_ideal.unwrap();
        assert!(m.power(2).is_zero());

        let z8 = ring(RingSpec::zmod(8));
        let two = Ideal::closure(&z8, vec![Elem(2)]);
        assert_eq!(two.product(&two).unwrap().elements(), &[Elem(0), Elem(4)]);
        assert!(two.contains_ideal(&two.product(&two).unwrap()).unwrap());
        assert_eq!(two.sum(&Ideal::zero(&z8)).unwrap(), two);
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = Ideal::zero(&ring(RingSpec::zmod(4)));
        let b = Ideal::zero(&ring(RingSpec::zmod(8)));
        assert_eq!(a.product(&b), Err(Error::MismatchedRings));
        assert_eq!(a.sum(&b), Err(Error::MismatchedRings));
    }

    #[test]
    fn local_structure_examples() {
        let z4 = local_structure(&ring(RingSpec::zmod(4)));
        assert!(z4.is_local);
        assert_eq!(z4.maximal_ideal.as_ref().unwrap().elements(), &[Elem(0), Elem(2)]);
        assert_eq!(z4.residue_field_order, Some(2));
        assert_eq!(z4.nilpotency_index, Some(2));

        assert!(!local_structure(&ring(RingSpec::zmod(6))).is_local);

        let p = local_structure(&plane());
        assert!(p.is_local);
        assert_eq!(p.maximal_ideal.as_ref().unwrap().len(), 4);
        assert_eq!(p.nilpotency_index, Some(2));

        let f4 = local_structure(&ring(RingSpec::f4()));
        assert_eq!(f4.nilpotency_index, Some(1));
        assert_eq!(f4.residue_field_order, Some(4));
    }

    #[test]
    fn zero_ring_is_not_local() {
        let z1 = ring(RingSpec::zmod(1));
        assert_eq!(z1.order(), 1);
        assert!(!local_structure(&z1).is_local);
    }

    #[test]
    fn quotients() {
        let z4 = ring(RingSpec::zmod(4));
        let (q, hom) = quotient_ring(&Ideal::closure(&z4, vec![Elem(2)])).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.additive_orders(), &[2]);
        assert_eq!(hom.apply(Elem(3)), q.one());

        let (q, hom) = quotient_ring(&Ideal::zero(&z4)).unwrap();
        assert_eq!(q.order(), 4);
        assert!(hom.is_bijective());

        let r = plane();
        let (q, _) = quotient_ring(&Ideal::closure(&r, vec![r.generator(1)])).unwrap();
        assert_eq!(q.order(), 4);
        let nilpotents = q.elements().filter(|&a| a != Elem::ZERO && q.mul(a, a) == Elem::ZERO).count();
        assert_eq!(nilpotents, 1);
        // matches F_2[y]/y²: same unit count, same nilpotent count
        assert_eq!(q.units().len(), dual().units().len());

        let (q, _) = quotient_ring(&Ideal::unit(&z4)).unwrap();
        assert!(q.is_zero_ring());
    }

    #[test]
    fn ideal_enumeration() {
        let z4 = ring(RingSpec::zmod(4));
        let ideals = enumerate_ideals(&z4, &Caps::default()).unwrap();
        let sets: Vec<&[Elem]> = ideals.iter().map(|i| i.elements()).collect();
        assert_eq!(sets, vec![&[Elem(0)][..], &[Elem(0), Elem(2)][..], &[Elem(0), Elem(1), Elem(2), Elem(3)][..]]);

        assert_eq!(enumerate_ideals(&ring(RingSpec::f4()), &Caps::default()).unwrap().len(), 2);
        assert_eq!(enumerate_ideals(&ring(RingSpec::zmod(5)), &Caps::default()).unwrap().len(), 2);
        assert_eq!(enumerate_ideals(&dual(), &Caps::default()).unwrap().len(), 3);
        // every F_2-subspace of m plus R itself
        assert_eq!(enumerate_ideals(&plane(), &Caps::default()).unwrap().len(), 6);

        let caps = Caps { ideal_enum: 4, ..Caps::default() };
        assert!(matches!(enumerate_ideals(&plane(), &caps), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn minimal_generator_examples() {
        let r = plane();
        let m = local_structure(&r).maximal_ideal.unwrap();
        let gens = minimal_generators(&m).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(Ideal::closure(&r, gens), m);

        assert!(minimal_generators(&Ideal::zero(&r)).unwrap().is_empty());

        let z4 = ring(RingSpec::zmod(4));
        assert_eq!(minimal_generators(&Ideal::closure(&z4, vec![Elem(2)])).unwrap(), vec![Elem(2)]);

        let z6 = ring(RingSpec::zmod(6));
        assert_eq!(minimal_generators(&Ideal::zero(&z6)), Err(Error::NotLocal));
    }

    fn z4_eps() -> RingRef {
        ring(RingSpec::Table { orders: vec![4, 2], one: vec![1, 0], mul: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]] })
    }

    #[test]
    fn generator_lifting() {
        let a = ring(RingSpec::zmod(4));
        let b = z4_eps();
        let hom = RingHom::new(a.clone(), b.clone(), vec![b.one()]).unwrap();
        let i = Ideal::closure(&a, vec![Elem(2)]);
        let eps = b.generator(1);
        let rep = subalgebra_generates(&hom, &i, &[eps]).unwrap();
        assert_eq!(rep, GenerationReport { generates: true, residues_generate: true });

        let rep = subalgebra_generates(&hom, &i, &[]).unwrap();
        assert_eq!(rep, GenerationReport { generates: false, residues_generate: false });

        let id = RingHom::identity(&a);
        let rep = subalgebra_generates(&id, &i, &[]).unwrap();
        assert!(rep.generates && rep.residues_generate);

        assert_eq!(subalgebra_generates(&id, &Ideal::unit(&a), &[]), Err(Error::NotNilpotent));
    }

    #[test]
    fn principal_generators() {
        let r = plane();
        let m = local_structure(&r).maximal_ideal.unwrap();
        assert_eq!(m.principal_generator(), None);
        let z8 = ring(RingSpec::zmod(8));
        assert_eq!(Ideal::closure(&z8, vec![Elem(6)]).principal_generator(), Some(Elem(2)));
    }
}

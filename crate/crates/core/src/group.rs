//! Automorphism groups `GL_E(T)` of base-changed modules, enumerated with a
//! verified composition table, plus the parabolic subfunctor and the kernels
//! of restriction maps `P(R) → P(R/J)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::caps::Caps;
use crate::error::{check_cap, internal, Error, Result};
use crate::ideal::{local_structure, quotient_ring, Ideal};
use crate::module::{base_change, elements_of, hom_enumerate, is_free_oracle, ElementsRef, FPModule, ModuleHom};
use crate::ring::{Elem, RingHom};

/// Full associativity check up to this order; sampled above it.
const FULL_ASSOCIATIVITY: usize = 64;
const SAMPLED_TRIPLES: usize = 4096;

/// A finite group of module automorphisms with its multiplication table.
#[derive(Debug, Clone)]
pub struct AutGroup {
    module: ElementsRef,
    carrier: Vec<ModuleHom>,
    identity: usize,
    /// `table[a·n + b]` is the index of `a ∘ b`.
    table: Vec<u32>,
    inverse: Vec<usize>,
    index: BTreeMap<Vec<Vec<Elem>>, usize>,
}

impl AutGroup {
    /// Build and verify the group on a set of automorphisms of `module`.
    pub fn from_carrier(module: ElementsRef, mut carrier: Vec<ModuleHom>, caps: &Caps) -> Result<Self> {
        check_cap("automorphism group order", carrier.len() as u128, caps.group)?;
        carrier.sort_by(|a, b| a.images().cmp(b.images()));
        carrier.dedup_by(|a, b| a.images() == b.images());
        let n = carrier.len();
        let index: BTreeMap<Vec<Vec<Elem>>, usize> = carrier.iter().enumerate().map(|(i, h)| (h.images().to_vec(), i)).collect();
        let id = ModuleHom::identity(&module);
        let identity = *index.get(id.images()).ok_or_else(|| internal("identity is missing from the group"))?;

        let mut table = vec![0u32; n * n];
        for (a, ha) in carrier.iter().enumerate() {
            for (b, hb) in carrier.iter().enumerate() {
                let c = hb.then(ha)?;
                let ci = *index.get(c.images()).ok_or_else(|| internal("automorphisms not closed under composition"))?;
                table[a * n + b] = ci as u32;
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            if table[a * n + identity] as usize != a || table[identity * n + a] as usize != a {
                return Err(internal("identity law fails in the composition table"));
            }
            inverse[a] = (0..n)
                .find(|&b| table[a * n + b] as usize == identity && table[b * n + a] as usize == identity)
                .ok_or_else(|| internal("element without inverse"))?;
        }
        let group = AutGroup { module, carrier, identity, table, inverse, index };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.len();
        let ok = |a: usize, b: usize, c: usize| self.compose(self.compose(a, b), c) == self.compose(a, self.compose(b, c));
        if n <= FULL_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !ok(a, b, c) {
                            return Err(internal(format!("associativity fails on ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.next_u64() as usize % n, rng.next_u64() as usize % n, rng.next_u64() as usize % n);
                if !ok(a, b, c) {
                    return Err(internal(format!("associativity fails on ({a}, {b}, {c})")));
                }
            }
        }
        Ok(())
    }

    pub fn module(&self) -> &ElementsRef {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> &[ModuleHom] {
        &self.carrier
    }

    pub fn element(&self, i: usize) -> &ModuleHom {
        &self.carrier[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Index of `a ∘ b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn index_of(&self, h: &ModuleHom) -> Option<usize> {
        self.index.get(h.images()).copied()
    }

    /// Subgroup generated by the given elements.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut next = 0;
        while next < out.len() {
            let x = out[next];
            for &g in gens {
                let y = self.compose(g, x);
                if !core::mem::replace(&mut seen[y], true) {
                    out.push(y);
                }
            }
            next += 1;
        }
        out.sort();
        out
    }

    /// A generating set chosen greedily in carrier order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.generated(&gens);
        for i in 0..self.len() {
            if span.binary_search(&i).is_err() {
                gens.push(i);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// Whether `members` (sorted indices) form a subgroup.
    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let has = |x: usize| members.binary_search(&x).is_ok();
        has(self.identity) && members.iter().all(|&a| has(self.inverse(a)) && members.iter().all(|&b| has(self.compose(a, b))))
    }
}

/// `GL_E(T)` for `T` reached by `hom: R → T`.
pub fn gl_points(e: &FPModule, hom: &RingHom, caps: &Caps) -> Result<AutGroup> {
    let et = base_change(e, hom)?;
    let elems = elements_of(&et, caps)?;
    automorphisms(&elems, caps)
}

/// Automorphism group of an enumerated module. Bijectivity is decided by
/// injectivity on elements and, over a local ring, cross-checked against
/// surjectivity modulo the maximal ideal.
pub fn automorphisms(elems: &ElementsRef, caps: &Caps) -> Result<AutGroup> {
    let ends = hom_enumerate(elems, elems, caps)?;
    let ring = elems.ring();
    let ls = local_structure(ring);
    let residue = match &ls.maximal_ideal {
        Some(m) => {
            let (_, proj) = quotient_ring(m)?;
            let reduced = elements_of(&base_change(elems.module(), &proj)?, caps)?;
            Some((proj, reduced))
        }
        None => None,
    };
    let mut carrier = Vec::new();
    for h in ends {
        let bijective = h.is_bijective();
        if let Some((proj, reduced)) = &residue {
            let surjective_mod_m = h.base_change(proj, reduced, reduced)?.is_surjective();
            if surjective_mod_m != bijective {
                return Err(internal("bijectivity and surjectivity modulo m disagree"));
            }
        }
        if bijective {
            carrier.push(h);
        }
    }
    AutGroup::from_carrier(elems.clone(), carrier, caps)
}

/// Automorphisms preserving the submodule spanned by a subset of generators.
#[derive(Debug, Clone)]
pub struct ParabolicSubgroup {
    pub parent: AutGroup,
    /// Sorted indices into `parent`.
    pub members: Vec<usize>,
    pub submodule_gens: Vec<usize>,
    /// Canonical elements of `E'_T`.
    pub submodule: Vec<Vec<Elem>>,
    /// Whether `E/E'` is free over the base (the hypothesis for representability
    /// of the subfunctor); reported, not required.
    pub quotient_free: bool,
}

impl ParabolicSubgroup {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, parent_index: usize) -> Option<usize> {
        self.members.binary_search(&parent_index).ok()
    }
}

pub fn parabolic_points(e: &FPModule, submodule_gens: &[usize], hom: &RingHom, caps: &Caps) -> Result<ParabolicSubgroup> {
    if submodule_gens.iter().any(|&g| g >= e.generator_count()) {
        return Err(Error::Precondition("submodule generator index out of range".into()));
    }
    let parent = gl_points(e, hom, caps)?;
    let elems = parent.module().clone();
    let gens: Vec<Vec<Elem>> = submodule_gens.iter().map(|&i| elems.generator(i)).collect();
    let submodule = elems.submodule(&gens);
    let inside = |v: &Vec<Elem>| submodule.binary_search(v).is_ok();
    let members: Vec<usize> = (0..parent.len())
        .filter(|&i| {
            let h = parent.element(i);
            submodule_gens.iter().all(|&g| inside(&h.images()[g]))
        })
        .collect();
    if !parent.is_subgroup(&members) {
        return Err(internal("submodule-preserving automorphisms do not form a subgroup"));
    }
    let columns: Vec<Vec<Elem>> = submodule_gens.iter().map(|&i| unit(e, i)).collect();
    let quotient = FPModule::new(e.presentation().with_columns(&columns)?);
    let quotient_free = is_free_oracle(&quotient, caps)?.free;
    Ok(ParabolicSubgroup { parent, members, submodule_gens: submodule_gens.to_vec(), submodule, quotient_free })
}

fn unit(e: &FPModule, i: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; e.generator_count()];
    v[i] = e.ring().one();
    v
}

/// The restriction `P(R) → P(R/J)` and its kernel.
#[derive(Debug, Clone)]
pub struct RestrictionKernel {
    pub source: ParabolicSubgroup,
    pub target: ParabolicSubgroup,
    /// `map[i]`: position in `target` of the image of the `i`-th member of `source`.
    pub map: Vec<usize>,
    /// Positions in `source` of the kernel members.
    pub kernel: Vec<usize>,
}

impl RestrictionKernel {
    pub fn kernel_homs(&self) -> Vec<&ModuleHom> {
        self.kernel.iter().map(|&k| self.source.parent.element(self.source.members[k])).collect()
    }
}

pub fn restriction_kernel(e: &FPModule, submodule_gens: &[usize], j: &Ideal, caps: &Caps) -> Result<RestrictionKernel> {
    let ring = e.ring();
    let (_, proj) = quotient_ring(j)?;
    let source = parabolic_points(e, submodule_gens, &RingHom::identity(ring), caps)?;
    let target = parabolic_points(e, submodule_gens, &proj, caps)?;
    let (sg, tg) = (&source.parent, &target.parent);
    let mut map = Vec::with_capacity(source.len());
    for &i in &source.members {
        let h = sg.element(i).base_change(&proj, tg.module(), tg.module())?;
        let ti = tg.index_of(&h).ok_or_else(|| internal("restriction of an automorphism is not an automorphism"))?;
        map.push(target.position(ti).ok_or_else(|| internal("restriction leaves the parabolic subgroup"))?);
    }
    for (x, &a) in source.members.iter().enumerate() {
        for (y, &b) in source.members.iter().enumerate() {
            let ab = source.position(sg.compose(a, b)).ok_or_else(|| internal("parabolic not closed"))?;
            let lhs = target.members[map[ab]];
            let rhs = tg.compose(target.members[map[x]], target.members[map[y]]);
            if lhs != rhs {
                return Err(internal("restriction is not a group homomorphism"));
            }
        }
    }
    let target_id = target.position(tg.identity()).ok_or_else(|| internal("identity outside parabolic"))?;
    let kernel = (0..map.len()).filter(|&x| map[x] == target_id).collect();
    Ok(RestrictionKernel { source, target, map, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Presentation;
    use crate::ring::{build_ring, RingRef, RingSpec};

    fn z4() -> RingRef {
        build_ring(&RingSpec::zmod(4), &Caps::default()).unwrap()
    }

    fn z2_plus_z4() -> FPModule {
        FPModule::new(Presentation::from_coeffs(z4(), 2, 1, &[vec![vec![2]], vec![vec![0]]]).unwrap())
    }

    #[test]
    fn gl_of_z2_plus_z4() {
        let caps = Caps::default();
        let e = z2_plus_z4();
        let g = gl_points(&e, &RingHom::identity(e.ring()), &caps).unwrap();
        assert_eq!(g.len(), 8);
        assert_eq!(g.generated(&g.generators()).len(), 8);

        let (_, proj) = quotient_ring(&Ideal::closure(e.ring(), vec![Elem(2)])).unwrap();
        assert_eq!(gl_points(&e, &proj, &caps).unwrap().len(), 6);
    }

    #[test]
    fn gl_of_rank_one_is_unit_group() {
        let r = z4();
        let g = gl_points(&FPModule::free(r.clone(), 1), &RingHom::identity(&r), &Caps::default()).unwrap();
        let images: Vec<Elem> = g.carrier().iter().map(|h| h.images()[0][0]).collect();
        let units: Vec<Elem> = r.units().into_iter().map(|(u, _)| u).collect();
        assert_eq!(images, units);
    }

    #[test]
    fn parabolic_examples() {
        let caps = Caps::default();
        let e = z2_plus_z4();
        let id = RingHom::identity(e.ring());
        let p = parabolic_points(&e, &[0], &id, &caps).unwrap();
        // block count |GL_1(F_2)|·|F_2|·|GL_1(Z/4)| = 1·2·2
        assert_eq!(p.len(), 4);
        assert!(p.quotient_free);
        assert_eq!(parabolic_points(&e, &[], &id, &caps).unwrap().len(), 8);
        assert_eq!(parabolic_points(&e, &[0, 1], &id, &caps).unwrap().len(), 8);
        assert!(parabolic_points(&e, &[2], &id, &caps).is_err());
    }

    #[test]
    fn restriction_kernel_examples() {
        let caps = Caps::default();
        let e = z2_plus_z4();
        let r = e.ring().clone();
        let k = restriction_kernel(&e, &[0], &Ideal::closure(&r, vec![Elem(2)]), &caps).unwrap();
        assert_eq!(k.kernel.len(), 2);
        let k = restriction_kernel(&e, &[0], &Ideal::unit(&r), &caps).unwrap();
        assert_eq!(k.kernel.len(), k.source.len());
        let k = restriction_kernel(&e, &[0], &Ideal::zero(&r), &caps).unwrap();
        assert_eq!(k.kernel.len(), 1);
    }

    #[test]
    fn group_cap() {
        let caps = Caps { group: 4, ..Caps::default() };
        let e = z2_plus_z4();
        let err = gl_points(&e, &RingHom::identity(e.ring()), &caps).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }
}

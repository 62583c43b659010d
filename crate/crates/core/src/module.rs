//! Finitely presented modules `coker(φ: R^q → R^p)` over finite rings.
//!
//! Everything is computed from the presentation matrix: the minimal
//! presentation and flattening ideal on the algebraic side, and full element
//! and hom-set enumeration on the brute-force side. The two sides never share
//! code paths, which is what makes the freeness oracle a real cross-check.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use alloc::{format, string::String};
use core::ops::ControlFlow;

use crate::caps::Caps;
use crate::error::{check_cap, internal, Error, Result};
use crate::ideal::{enumerate_ideals, local_structure, Ideal};
use crate::ring::{same_ring, Elem, FiniteRing, RingHom, RingRef};

/// A `p×q` matrix over `R`; the module it presents has `p` generators and
/// one relation per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Elem>>,
}

impl Presentation {
    pub fn new(ring: RingRef, rows: usize, cols: usize, entries: Vec<Vec<Elem>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Malformed(format!("presentation entries are not {rows}×{cols}")));
        }
        if entries.iter().flatten().any(|&x| !ring.contains(x)) {
            return Err(Error::Malformed("presentation entry outside the ring".into()));
        }
        Ok(Presentation { ring, rows, cols, entries })
    }

    /// Build from coefficient vectors, `entries[row][col]`.
    pub fn from_coeffs(ring: RingRef, rows: usize, cols: usize, entries: &[Vec<Vec<i64>>]) -> Result<Self> {
        let parsed = entries
            .iter()
            .map(|row| row.iter().map(|c| ring.elem_from_coeffs(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(ring, rows, cols, parsed)
    }

    /// Free module of the given rank (no relations).
    pub fn free(ring: RingRef, rank: usize) -> Self {
        Presentation { ring, rows: rank, cols: 0, entries: vec![Vec::new(); rank] }
    }

    /// `(R/(a))^n ⊕ R^m`: torsion generators first.
    pub fn standard(ring: RingRef, a: Elem, n: usize, m: usize) -> Self {
        let entries = (0..n + m).map(|i| (0..n).map(|j| if i == j { a } else { Elem::ZERO }).collect()).collect();
        Presentation { ring, rows: n + m, cols: n, entries }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Vec<Elem>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Elem {
        self.entries[row][col]
    }

    pub fn column(&self, col: usize) -> Vec<Elem> {
        self.entries.iter().map(|r| r[col]).collect()
    }

    /// Append relation columns.
    pub fn with_columns(&self, columns: &[Vec<Elem>]) -> Result<Self> {
        let mut entries = self.entries.clone();
        for c in columns {
            if c.len() != self.rows {
                return Err(Error::Malformed("relation column has the wrong length".into()));
            }
            for (row, &x) in entries.iter_mut().zip(c) {
                row.push(x);
            }
        }
        Presentation::new(self.ring.clone(), self.rows, self.cols + columns.len(), entries)
    }
}

/// `coker(φ)`. Derived data is always recomputed from the presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPModule {
    presentation: Presentation,
}

impl FPModule {
    pub fn new(presentation: Presentation) -> Self {
        FPModule { presentation }
    }

    pub fn free(ring: RingRef, rank: usize) -> Self {
        FPModule::new(Presentation::free(ring, rank))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn ring(&self) -> &RingRef {
        &self.presentation.ring
    }

    pub fn generator_count(&self) -> usize {
        self.presentation.rows
    }
}

pub fn vec_add(ring: &FiniteRing, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| ring.add(x, y)).collect()
}

pub fn vec_scale(ring: &FiniteRing, r: Elem, v: &[Elem]) -> Vec<Elem> {
    v.iter().map(|&x| ring.mul(r, x)).collect()
}

/// `Σ coeffs[i] · vectors[i]`
pub fn vec_combination(ring: &FiniteRing, coeffs: &[Elem], vectors: &[Vec<Elem>], len: usize) -> Vec<Elem> {
    let mut acc = vec![Elem::ZERO; len];
    for (&c, v) in coeffs.iter().zip(vectors) {
        if c != Elem::ZERO {
            for (a, &x) in acc.iter_mut().zip(v) {
                *a = ring.add(*a, ring.mul(c, x));
            }
        }
    }
    acc
}

/// A minimal presentation together with mutually inverse generator maps
/// between the original module and the minimal one.
#[derive(Debug, Clone)]
pub struct MinimalForm {
    pub presentation: Presentation,
    /// Row `i`: original generator `i` written in the minimal generators.
    pub to_min: Vec<Vec<Elem>>,
    /// Row `k`: minimal generator `k` written in the original generators.
    pub from_min: Vec<Vec<Elem>>,
}

/// Repeatedly pivot on the first unit entry (row-major), clear its row and
/// column, drop the pivot row and column; finally drop zero columns.
pub fn minimal_form(e: &FPModule) -> Result<MinimalForm> {
    let ring = e.ring().clone();
    let ls = local_structure(&ring);
    if !ls.is_local {
        return Err(Error::NotLocal);
    }
    let mut inverse = vec![None; ring.order()];
    for &(u, inv) in &ls.units {
        inverse[u.index()] = Some(inv);
    }
    let p = e.presentation();
    let mut m = p.entries.clone();
    let mut cols = p.cols;
    // original generator i = Σ_k to_min[i][k] g_k ; g_k = Σ_i from_min[k][i] orig_i
    let mut to_min: Vec<Vec<Elem>> = (0..p.rows).map(|i| unit_vector(p.rows, i, ring.one())).collect();
    let mut from_min: Vec<Vec<Elem>> = (0..p.rows).map(|i| unit_vector(p.rows, i, ring.one())).collect();

    loop {
        let pivot = m.iter().enumerate().find_map(|(i, row)| row.iter().position(|x| inverse[x.index()].is_some()).map(|j| (i, j)));
        let Some((pi, pj)) = pivot else { break };
        let u_inv = inverse[m[pi][pj].index()].unwrap();
        // rows: row_k -= (m[k][pj]·u⁻¹)·row_pi
        for k in 0..m.len() {
            if k == pi || m[k][pj] == Elem::ZERO {
                continue;
            }
            let c = ring.mul(m[k][pj], u_inv);
            let pivot_row = m[pi].clone();
            for (x, &y) in m[k].iter_mut().zip(&pivot_row) {
                *x = ring.sub(*x, ring.mul(c, y));
            }
            // generators: g'_pi = g_pi + c·g_k
            let gk = from_min[k].clone();
            for (x, &y) in from_min[pi].iter_mut().zip(&gk) {
                *x = ring.add(*x, ring.mul(c, y));
            }
            for row in to_min.iter_mut() {
                row[k] = ring.sub(row[k], ring.mul(c, row[pi]));
            }
        }
        // columns: col_l -= (m[pi][l]·u⁻¹)·col_pj ; no effect on generators
        for l in 0..cols {
            if l == pj || m[pi][l] == Elem::ZERO {
                continue;
            }
            let c = ring.mul(m[pi][l], u_inv);
            for row in m.iter_mut() {
                row[l] = ring.sub(row[l], ring.mul(c, row[pj]));
            }
        }
        // relation `u·g_pi = 0` kills g_pi
        m.remove(pi);
        for row in m.iter_mut() {
            row.remove(pj);
        }
        cols -= 1;
        from_min.remove(pi);
        for row in to_min.iter_mut() {
            row.remove(pi);
        }
    }

    let keep: Vec<usize> = (0..cols).filter(|&j| m.iter().any(|row| row[j] != Elem::ZERO)).collect();
    let entries: Vec<Vec<Elem>> = m.iter().map(|row| keep.iter().map(|&j| row[j]).collect()).collect();
    let rows = entries.len();
    let presentation = Presentation { ring, rows, cols: keep.len(), entries };
    Ok(MinimalForm { presentation, to_min, from_min })
}

fn unit_vector(len: usize, i: usize, one: Elem) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; len];
    v[i] = one;
    v
}

/// A presentation of a module isomorphic to `e` with no unit entries.
pub fn minimal_presentation(e: &FPModule) -> Result<Presentation> {
    Ok(minimal_form(e)?.presentation)
}

/// The ideal generated by the entries of a minimal presentation.
pub fn flattening_ideal(e: &FPModule) -> Result<Ideal> {
    let min = minimal_presentation(e)?;
    let mut gens: Vec<Elem> = min.entries.iter().flatten().copied().filter(|&x| x != Elem::ZERO).collect();
    gens.sort();
    gens.dedup();
    Ok(Ideal::closure(min.ring(), gens))
}

/// Pull a module back along `hom`: map every presentation entry.
pub fn base_change(e: &FPModule, hom: &RingHom) -> Result<FPModule> {
    if !same_ring(e.ring(), hom.source()) {
        return Err(Error::MismatchedRings);
    }
    let p = e.presentation();
    let entries = p.entries.iter().map(|row| row.iter().map(|&x| hom.apply(x)).collect()).collect();
    Ok(FPModule::new(Presentation { ring: hom.target().clone(), rows: p.rows, cols: p.cols, entries }))
}

/// Full element enumeration of a module: one canonical (lexicographically
/// least) representative per coset of the relation span inside `R^p`.
#[derive(Debug)]
pub struct ModuleElements {
    module: FPModule,
    span_size: usize,
    /// Indexed by vector code: code of the canonical representative.
    rep_of: Vec<u32>,
    /// Codes of canonical representatives, increasing.
    reps: Vec<u32>,
}

pub type ElementsRef = Arc<ModuleElements>;

pub fn elements_of(e: &FPModule, caps: &Caps) -> Result<ElementsRef> {
    let ring = e.ring();
    let p = e.generator_count();
    let total = (ring.order() as u128).checked_pow(p as u32).unwrap_or(u128::MAX);
    check_cap("module vectors R^p", total, caps.module_enum)?;
    let total = total as usize;
    let codec = Codec { base: ring.order(), len: p };

    // relation span: additive closure of all r·column
    let mut seeds: Vec<u32> = Vec::new();
    let mut seed_seen = vec![false; total];
    for j in 0..e.presentation.cols {
        let col = e.presentation.column(j);
        for r in ring.elements() {
            let c = codec.encode(&vec_scale(ring, r, &col));
            if c != 0 && !core::mem::replace(&mut seed_seen[c as usize], true) {
                seeds.push(c);
            }
        }
    }
    drop(seed_seen);
    let mut in_span = vec![false; total];
    in_span[0] = true;
    let mut span = vec![0u32];
    let mut next = 0;
    while next < span.len() {
        let x = codec.decode(span[next]);
        for &s in &seeds {
            let y = codec.encode(&vec_add(ring, &x, &codec.decode(s)));
            if !core::mem::replace(&mut in_span[y as usize], true) {
                span.push(y);
            }
        }
        next += 1;
    }
    drop(in_span);
    let span_vecs: Vec<Vec<Elem>> = span.iter().map(|&s| codec.decode(s)).collect();

    const UNSET: u32 = u32::MAX;
    let mut rep_of = vec![UNSET; total];
    let mut reps = Vec::with_capacity(total / span.len());
    for v in 0..total as u32 {
        if rep_of[v as usize] != UNSET {
            continue;
        }
        reps.push(v);
        let vv = codec.decode(v);
        for s in &span_vecs {
            rep_of[codec.encode(&vec_add(ring, &vv, s)) as usize] = v;
        }
    }
    if reps.len() * span.len() != total {
        return Err(internal("coset count times span size differs from |R|^p"));
    }
    Ok(Arc::new(ModuleElements { module: e.clone(), span_size: span.len(), rep_of, reps }))
}

#[derive(Debug, Clone, Copy)]
struct Codec {
    base: usize,
    len: usize,
}

impl Codec {
    fn encode(&self, v: &[Elem]) -> u32 {
        v.iter().fold(0u32, |acc, x| acc * self.base as u32 + x.0)
    }

    fn decode(&self, mut code: u32) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; self.len];
        for slot in v.iter_mut().rev() {
            *slot = Elem(code % self.base as u32);
            code /= self.base as u32;
        }
        v
    }
}

impl ModuleElements {
    fn codec(&self) -> Codec {
        Codec { base: self.ring().order(), len: self.module.generator_count() }
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn ring(&self) -> &RingRef {
        self.module.ring()
    }

    /// `|E|`
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Size of the relation span inside `R^p`.
    pub fn span_size(&self) -> usize {
        self.span_size
    }

    pub fn generator_count(&self) -> usize {
        self.module.generator_count()
    }

    /// Canonical representatives in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let codec = self.codec();
        self.reps.iter().map(move |&c| codec.decode(c))
    }

    pub fn get(&self, index: usize) -> Vec<Elem> {
        self.codec().decode(self.reps[index])
    }

    pub fn canonical(&self, v: &[Elem]) -> Vec<Elem> {
        let codec = self.codec();
        codec.decode(self.rep_of[codec.encode(v) as usize])
    }

    /// Position of the coset of `v` among the canonical representatives.
    pub fn index_of(&self, v: &[Elem]) -> usize {
        let rep = self.rep_of[self.codec().encode(v) as usize];
        self.reps.binary_search(&rep).expect("representative is listed")
    }

    pub fn is_zero(&self, v: &[Elem]) -> bool {
        self.rep_of[self.codec().encode(v) as usize] == 0
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![Elem::ZERO; self.generator_count()]
    }

    /// Canonical image of generator `i`.
    pub fn generator(&self, i: usize) -> Vec<Elem> {
        self.canonical(&unit_vector(self.generator_count(), i, self.ring().one()))
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        self.canonical(&vec_add(self.ring(), a, b))
    }

    pub fn scale(&self, r: Elem, v: &[Elem]) -> Vec<Elem> {
        self.canonical(&vec_scale(self.ring(), r, v))
    }

    /// Canonical elements of the submodule generated by `gens`, increasing.
    pub fn submodule(&self, gens: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let ring = self.ring();
        let mut seen = vec![false; self.len()];
        let mut seeds = Vec::new();
        for g in gens {
            for r in ring.elements() {
                let s = self.scale(r, g);
                let i = self.index_of(&s);
                if !core::mem::replace(&mut seen[i], true) {
                    seeds.push(s);
                }
            }
        }
        let mut in_span = vec![false; self.len()];
        in_span[self.index_of(&self.zero())] = true;
        let mut out = vec![self.zero()];
        let mut next = 0;
        while next < out.len() {
            let x = out[next].clone();
            for s in &seeds {
                let y = self.add(&x, s);
                if !core::mem::replace(&mut in_span[self.index_of(&y)], true) {
                    out.push(y);
                }
            }
            next += 1;
        }
        out.sort();
        out
    }
}

/// An `R`-linear map between enumerated modules, given by generator images.
#[derive(Debug, Clone)]
pub struct ModuleHom {
    source: ElementsRef,
    target: ElementsRef,
    images: Vec<Vec<Elem>>,
}

impl PartialEq for ModuleHom {
    fn eq(&self, other: &Self) -> bool {
        self.source.module == other.source.module && self.target.module == other.target.module && self.images == other.images
    }
}

impl Eq for ModuleHom {}

impl ModuleHom {
    /// Checks every source relation maps to zero; images are canonicalised.
    pub fn new(source: ElementsRef, target: ElementsRef, images: Vec<Vec<Elem>>) -> Result<Self> {
        if !same_ring(source.ring(), target.ring()) {
            return Err(Error::MismatchedRings);
        }
        if images.len() != source.generator_count() || images.iter().any(|v| v.len() != target.generator_count()) {
            return Err(Error::Malformed("generator images have the wrong shape".into()));
        }
        let images: Vec<Vec<Elem>> = images.iter().map(|v| target.canonical(v)).collect();
        if !respects_relations(&source, &target, &images) {
            return Err(Error::Precondition("generator images violate a relation of the source".into()));
        }
        Ok(ModuleHom { source, target, images })
    }

    pub fn identity(e: &ElementsRef) -> Self {
        let images = (0..e.generator_count()).map(|i| e.generator(i)).collect();
        ModuleHom { source: e.clone(), target: e.clone(), images }
    }

    pub fn source(&self) -> &ElementsRef {
        &self.source
    }

    pub fn target(&self) -> &ElementsRef {
        &self.target
    }

    pub fn images(&self) -> &[Vec<Elem>] {
        &self.images
    }

    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        let t = &self.target;
        t.canonical(&vec_combination(t.ring(), v, &self.images, t.generator_count()))
    }

    /// `other ∘ self`
    pub fn then(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if self.target.module != other.source.module {
            return Err(Error::MismatchedRings);
        }
        let images = self.images.iter().map(|v| other.apply(v)).collect();
        Ok(ModuleHom { source: self.source.clone(), target: other.target.clone(), images })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.source.iter().all(|v| !core::mem::replace(&mut seen[self.target.index_of(&self.apply(&v))], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        let mut hit = 0;
        for v in self.source.iter() {
            if !core::mem::replace(&mut seen[self.target.index_of(&self.apply(&v))], true) {
                hit += 1;
            }
        }
        hit == self.target.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    /// The induced map on `E⊗T → F⊗T` for a ring hom `R → T`, given
    /// enumerations of the base-changed modules.
    pub fn base_change(&self, hom: &RingHom, source_t: &ElementsRef, target_t: &ElementsRef) -> Result<ModuleHom> {
        let images = self.images.iter().map(|v| v.iter().map(|&x| hom.apply(x)).collect()).collect();
        ModuleHom::new(source_t.clone(), target_t.clone(), images)
    }
}

fn respects_relations(source: &ModuleElements, target: &ModuleElements, images: &[Vec<Elem>]) -> bool {
    let p = source.module.presentation();
    let ring = target.ring();
    (0..p.cols).all(|j| target.is_zero(&vec_combination(ring, &p.column(j), images, target.generator_count())))
}

/// Visit every hom `E → F`, in lexicographic order of generator-image tuples.
pub fn for_each_hom<B>(
    source: &ElementsRef,
    target: &ElementsRef,
    caps: &Caps,
    mut visit: impl FnMut(ModuleHom) -> ControlFlow<B>,
) -> Result<Option<B>> {
    if !same_ring(source.ring(), target.ring()) {
        return Err(Error::MismatchedRings);
    }
    let p = source.generator_count();
    let count = (target.len() as u128).checked_pow(p as u32).unwrap_or(u128::MAX);
    check_cap("hom candidates |F|^p", count, caps.module_enum)?;
    let candidates: Vec<Vec<Elem>> = target.iter().collect();
    let mut choice = vec![0usize; p];
    loop {
        let images: Vec<Vec<Elem>> = choice.iter().map(|&c| candidates[c].clone()).collect();
        if respects_relations(source, target, &images) {
            let h = ModuleHom { source: source.clone(), target: target.clone(), images };
            if let ControlFlow::Break(b) = visit(h) {
                return Ok(Some(b));
            }
        }
        let mut i = p;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// All homs `E → F`.
pub fn hom_enumerate(source: &ElementsRef, target: &ElementsRef, caps: &Caps) -> Result<Vec<ModuleHom>> {
    let mut out = Vec::new();
    for_each_hom::<()>(source, target, caps, |h| {
        out.push(h);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// The first bijective hom `E → F`, if the modules are isomorphic.
pub fn find_isomorphism(source: &ElementsRef, target: &ElementsRef, caps: &Caps) -> Result<Option<ModuleHom>> {
    if source.len() != target.len() {
        return Ok(None);
    }
    for_each_hom(source, target, caps, |h| if h.is_bijective() { ControlFlow::Break(h) } else { ControlFlow::Continue(()) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeVerdict {
    pub free: bool,
    pub rank: Option<usize>,
}

/// Brute-force freeness: `|E| = |R|^r` and some hom `R^r → E` is bijective.
/// Shares nothing with the flattening-ideal computation.
pub fn is_free_oracle(e: &FPModule, caps: &Caps) -> Result<FreeVerdict> {
    let elems = elements_of(e, caps)?;
    is_free_enumerated(&elems, caps)
}

pub fn is_free_enumerated(elems: &ElementsRef, caps: &Caps) -> Result<FreeVerdict> {
    let ring = elems.ring();
    if ring.is_zero_ring() {
        return Ok(FreeVerdict { free: true, rank: Some(0) });
    }
    let (q, n) = (ring.order() as u128, elems.len() as u128);
    let mut rank = 0usize;
    let mut size = 1u128;
    while size < n {
        size *= q;
        rank += 1;
    }
    if size != n {
        return Ok(FreeVerdict { free: false, rank: None });
    }
    let free = elements_of(&FPModule::free(ring.clone(), rank), caps)?;
    let found = find_isomorphism(&free, elems, caps)?;
    Ok(FreeVerdict { free: found.is_some(), rank: found.map(|_| rank) })
}

/// One row of the universal-property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealVerdict {
    pub ideal: Ideal,
    /// `E/JE` is free over `R/J` (oracle).
    pub quotient_free: bool,
    pub quotient_rank: Option<usize>,
    /// `I ⊆ J`
    pub contains_flattening: bool,
}

impl IdealVerdict {
    pub fn agrees(&self) -> bool {
        self.quotient_free == self.contains_flattening
    }
}

#[derive(Debug, Clone)]
pub struct UniversalReport {
    pub flattening: Ideal,
    pub rows: Vec<IdealVerdict>,
    /// Ideals `K` with `E/JE free ⟺ K ⊆ J` for every `J`; should be exactly `[I]`.
    pub satisfying: Vec<Ideal>,
}

impl UniversalReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(IdealVerdict::agrees) && self.satisfying.len() == 1 && self.satisfying[0] == self.flattening
    }
}

/// For every ideal `J`, decide freeness of `E/JE` by the oracle and compare
/// with `I ⊆ J`.
pub fn verify_flattening_universal(e: &FPModule, caps: &Caps) -> Result<UniversalReport> {
    let ring = e.ring();
    let ideals = enumerate_ideals(ring, caps)?;
    let flattening = flattening_ideal(e)?;
    let mut rows = Vec::with_capacity(ideals.len());
    for j in &ideals {
        let (_, proj) = crate::ideal::quotient_ring(j)?;
        let ej = base_change(e, &proj)?;
        let v = is_free_oracle(&ej, caps)?;
        rows.push(IdealVerdict {
            ideal: j.clone(),
            quotient_free: v.free,
            quotient_rank: v.rank,
            contains_flattening: flattening.is_subset(j),
        });
    }
    let satisfying = ideals.iter().filter(|k| rows.iter().all(|row| row.quotient_free == k.is_subset(&row.ideal))).cloned().collect();
    Ok(UniversalReport { flattening, rows, satisfying })
}

/// `E/mE` dimension over the residue field, computed by counting elements.
pub fn residue_dimension(e: &FPModule, caps: &Caps) -> Result<usize> {
    let ring = e.ring();
    let ls = local_structure(ring);
    let m = ls.maximal()?;
    let q = ls.residue_order()?;
    let (_, proj) = crate::ideal::quotient_ring(m)?;
    let reduced = elements_of(&base_change(e, &proj)?, caps)?;
    let mut dim = 0;
    let mut size = 1;
    while size < reduced.len() {
        size *= q;
        dim += 1;
    }
    if size != reduced.len() {
        return Err(internal(format!("|E/mE| = {} is not a power of {q}", reduced.len())));
    }
    Ok(dim)
}

pub fn fmt_vector(ring: &FiniteRing, v: &[Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| ring.fmt_elem(x)).collect();
    format!("({})", parts.join(", "))
}

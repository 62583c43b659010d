//! Certificates that `GL_E` is not representable: the kernel of
//! `P(R) → P(R/I)` has the `1 ⊕ (1+W)` block shape while `|I|^{n²}` distinct
//! coordinate points `δ+V` all induce the identity automorphism.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::caps::Caps;
use crate::decompose::{reduce_to_obstruction, split_principal, DecompositionCertificate, Matrix, ReductionTrace};
use crate::error::{check_cap, internal, Error, Result};
use crate::group::{gl_points, restriction_kernel, AutGroup};
use crate::ideal::{local_structure, quotient_ring, Ideal};
use crate::module::{elements_of, flattening_ideal, minimal_form, ElementsRef, FPModule, ModuleHom, Presentation};
use crate::ring::{Elem, FiniteRing, RingHom, RingRef};

pub const DEFAULT_RANDOM_SAMPLES: usize = 100;
const MAX_RANDOM_DEGREE: u64 = 5;

/// Matrix of an endomorphism: column `j` is the canonical image of generator `j`.
pub fn hom_matrix(h: &ModuleHom) -> Matrix {
    let rows = h.target().generator_count();
    (0..rows).map(|i| h.images().iter().map(|col| col[i]).collect()).collect()
}

/// Returns the principal generator after checking the hypotheses shared by
/// the kernel and phantom checks.
fn check_ideal(ring: &RingRef, ideal: &Ideal) -> Result<Elem> {
    if !crate::ring::same_ring(ring, ideal.ring()) {
        return Err(Error::MismatchedRings);
    }
    let ls = local_structure(ring);
    let m = ls.maximal()?;
    let a = ideal.principal_generator().ok_or(Error::NotPrincipal)?;
    if !m.product(ideal)?.is_zero() {
        return Err(Error::NotAnnihilated);
    }
    Ok(a)
}

fn standard_elements(ring: &RingRef, a: Elem, n: usize, m: usize, caps: &Caps) -> Result<ElementsRef> {
    elements_of(&FPModule::new(Presentation::standard(ring.clone(), a, n, m)), caps)
}

/// All tuples of length `len` over `alphabet`, in lexicographic order.
fn tuples(alphabet: &[Elem], len: usize, what: &'static str, caps: &Caps) -> Result<Vec<Vec<Elem>>> {
    let count = (alphabet.len() as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    check_cap(what, count, caps.module_enum)?;
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                alphabet.iter().map(move |&x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBlockReport {
    pub n: usize,
    pub m: usize,
    /// Sorted matrices of the enumerated kernel.
    pub kernel: Vec<Matrix>,
    /// Sorted matrices `1_n ⊕ (1+W)`, `W ∈ M_m(I)`.
    pub block_set: Vec<Matrix>,
    pub expected_size: usize,
    pub kernel_in_blocks: bool,
    pub blocks_in_kernel: bool,
    /// No kernel element moves the `(R/I)^n` block.
    pub fixes_torsion: bool,
}

impl KernelBlockReport {
    pub fn pass(&self) -> bool {
        self.kernel_in_blocks && self.blocks_in_kernel && self.fixes_torsion && self.kernel.len() == self.expected_size
    }
}

/// Compare the kernel of `P(R) → P(R/I)` on `(R/I)^n ⊕ R^m` with the block shape.
pub fn kernel_block_report(ring: &RingRef, ideal: &Ideal, n: usize, m: usize, caps: &Caps) -> Result<KernelBlockReport> {
    let a = check_ideal(ring, ideal)?;
    let e = FPModule::new(Presentation::standard(ring.clone(), a, n, m));
    let torsion: Vec<usize> = (0..n).collect();
    let rk = restriction_kernel(&e, &torsion, ideal, caps)?;
    let elems = rk.source.parent.module().clone();
    let mut kernel: Vec<Matrix> = rk.kernel_homs().into_iter().map(hom_matrix).collect();
    kernel.sort();

    let mut block_set = Vec::new();
    for w in tuples(ideal.elements(), m * m, "block matrices W", caps)? {
        let mut images: Vec<Vec<Elem>> = (0..n + m).map(|j| elems.generator(j)).collect();
        for beta in 0..m {
            for alpha in 0..m {
                let col = &mut images[n + beta];
                col[n + alpha] = ring.add(col[n + alpha], w[alpha * m + beta]);
            }
        }
        block_set.push(hom_matrix(&ModuleHom::new(elems.clone(), elems.clone(), images)?));
    }
    block_set.sort();
    block_set.dedup();

    let id = hom_matrix(&ModuleHom::identity(&elems));
    let fixes_torsion = kernel.iter().all(|k| k.iter().zip(&id).all(|(row, idrow)| row[..n] == idrow[..n]));
    let expected_size = ideal.len().pow((m * m) as u32);
    Ok(KernelBlockReport {
        n,
        m,
        kernel_in_blocks: kernel.iter().all(|k| block_set.binary_search(k).is_ok()),
        blocks_in_kernel: block_set.iter().all(|b| kernel.binary_search(b).is_ok()),
        fixes_torsion,
        expected_size,
        kernel,
        block_set,
    })
}

pub fn kernel_block_check(ring: &RingRef, ideal: &Ideal, n: usize, m: usize, caps: &Caps) -> Result<bool> {
    Ok(kernel_block_report(ring, ideal, n, m, caps)?.pass())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhantomOptions {
    pub seed: u64,
    pub random_samples: usize,
}

impl Default for PhantomOptions {
    fn default() -> Self {
        PhantomOptions { seed: 0, random_samples: DEFAULT_RANDOM_SAMPLES }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    /// Coordinates `x` (n²), `y` (nm), `z` (m²).
    pub variables: usize,
    /// Monomials of total degree at most 2.
    pub monomials: usize,
    /// `(u, monomial)` pairs checked at every family member.
    pub low_degree_checks: usize,
    pub random_samples: usize,
    pub failures: usize,
}

impl CongruenceReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhantomFamily {
    pub n: usize,
    pub m: usize,
    /// The `n×n` matrices `δ+V`, `V ∈ M_n(I)`, sorted.
    pub members: Vec<Matrix>,
    pub congruence: CongruenceReport,
    pub identity_inducing: bool,
    pub distinct: bool,
}

impl PhantomFamily {
    pub fn pass(&self) -> bool {
        self.congruence.pass() && self.identity_inducing && self.distinct && self.members.len() >= 2
    }
}

/// Coordinate values of the point `(δ+V, 0, δ)`.
fn point(r: &FiniteRing, x: &Matrix, n: usize, m: usize) -> Vec<Elem> {
    let mut p = Vec::with_capacity(n * n + n * m + m * m);
    p.extend(x.iter().flatten().copied());
    p.extend(core::iter::repeat_n(Elem::ZERO, n * m));
    for i in 0..m {
        p.extend((0..m).map(|j| if i == j { r.one() } else { Elem::ZERO }));
    }
    p
}

fn monomial(r: &FiniteRing, p: &[Elem], vars: &[usize]) -> Elem {
    vars.iter().fold(r.one(), |acc, &v| r.mul(acc, p[v]))
}

pub fn phantom_family(ring: &RingRef, ideal: &Ideal, n: usize, m: usize, opts: PhantomOptions, caps: &Caps) -> Result<PhantomFamily> {
    let a = check_ideal(ring, ideal)?;
    if ideal.is_zero() {
        return Err(Error::Precondition("the phantom family needs a nonzero ideal".into()));
    }
    if n == 0 {
        return Err(Error::Precondition("the phantom family needs n ≥ 1".into()));
    }
    let r = &**ring;
    let one = r.one();
    let members: Vec<Matrix> = tuples(ideal.elements(), n * n, "phantom family", caps)?
        .into_iter()
        .map(|v| (0..n).map(|i| (0..n).map(|j| r.add(v[i * n + j], if i == j { one } else { Elem::ZERO })).collect()).collect())
        .collect();
    let mut sorted = members.clone();
    sorted.sort();
    sorted.dedup();
    let distinct = sorted.len() == members.len();

    let variables = n * n + n * m + m * m;
    let base = point(r, &members[0], n, m);
    let points: Vec<Vec<Elem>> = sorted.iter().map(|x| point(r, x, n, m)).collect();
    let mut failures = 0;
    let mut check = |u: Elem, vars: &[usize]| {
        let expected = r.mul(u, monomial(r, &base, vars));
        failures += points.iter().filter(|p| r.mul(u, monomial(r, p, vars)) != expected).count();
    };
    let mut monomials: Vec<Vec<usize>> = vec![Vec::new()];
    monomials.extend((0..variables).map(|i| vec![i]));
    monomials.extend((0..variables).flat_map(|i| (i..variables).map(move |j| vec![i, j])));
    for &u in ideal.elements() {
        for mono in &monomials {
            check(u, mono);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pick = |rng: &mut ChaCha8Rng, k: usize| (rng.next_u64() % k as u64) as usize;
    for _ in 0..opts.random_samples {
        let u = ideal.elements()[pick(&mut rng, ideal.len())];
        let degree = rng.next_u64() % (MAX_RANDOM_DEGREE + 1);
        let vars: Vec<usize> = (0..degree).map(|_| pick(&mut rng, variables)).collect();
        check(u, &vars);
    }
    let congruence = CongruenceReport {
        variables,
        monomials: monomials.len(),
        low_degree_checks: ideal.len() * monomials.len(),
        random_samples: opts.random_samples,
        failures,
    };

    let elems = standard_elements(ring, a, n, m, caps)?;
    let id = ModuleHom::identity(&elems);
    let mut identity_inducing = true;
    for x in &sorted {
        let mut images: Vec<Vec<Elem>> = (0..n + m).map(|j| elems.generator(j)).collect();
        for (j, col) in images.iter_mut().enumerate().take(n) {
            for i in 0..n {
                col[i] = x[i][j];
            }
        }
        identity_inducing &= ModuleHom::new(elems.clone(), elems.clone(), images)? == id;
    }
    Ok(PhantomFamily { n, m, members: sorted, congruence, identity_inducing, distinct })
}

/// Self-contained evidence that `GL_E` is not representable, stated over the
/// final ring of the reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub ring: RingRef,
    pub ideal: Ideal,
    pub generator: Elem,
    pub n: usize,
    pub m: usize,
    pub kernel: Vec<Matrix>,
    pub kernel_size: usize,
    pub phantoms: Vec<Matrix>,
    pub phantom_family_size: usize,
    pub congruence: CongruenceReport,
    pub seed: u64,
    pub random_samples: usize,
}

impl ObstructionCertificate {
    pub const VERDICT: &'static str = "non-representable";
}

#[derive(Debug, Clone)]
pub struct Obstruction {
    pub trace: ReductionTrace,
    pub decomposition: DecompositionCertificate,
    pub certificate: ObstructionCertificate,
}

#[derive(Debug, Clone)]
pub enum Certification {
    /// Flattening ideal is zero: `E ≅ R^rank`, `GL_E = GL_rank`.
    Free {
        rank: usize,
    },
    NonRepresentable(Box<Obstruction>),
}

pub fn certify_nonrepresentable(e: &FPModule, opts: PhantomOptions, caps: &Caps) -> Result<Certification> {
    local_structure(e.ring()).maximal().map_err(|err| err.at_stage("locality"))?;
    let ideal = flattening_ideal(e).map_err(|err| err.at_stage("flattening ideal"))?;
    if ideal.is_zero() {
        let rank = minimal_form(e).map_err(|err| err.at_stage("minimal presentation"))?.presentation.rows();
        return Ok(Certification::Free { rank });
    }
    let trace = reduce_to_obstruction(e).map_err(|err| err.at_stage("reduction"))?;
    let decomposition = split_principal(&trace.final_module, caps).map_err(|err| err.at_stage("splitting"))?;
    decomposition.verify().map_err(|err| err.at_stage("splitting"))?;
    let (ring, n, m) = (trace.final_ring.clone(), decomposition.n, decomposition.m);
    let ideal = trace.final_ideal.clone();
    if n == 0 {
        return Err(internal("non-free module split with no torsion summand").at_stage("splitting"));
    }
    let kernel = kernel_block_report(&ring, &ideal, n, m, caps).map_err(|err| err.at_stage("kernel block check"))?;
    if !kernel.pass() {
        return Err(internal("kernel does not have the block shape").at_stage("kernel block check"));
    }
    let phantoms = phantom_family(&ring, &ideal, n, m, opts, caps).map_err(|err| err.at_stage("phantom family"))?;
    if !phantoms.pass() {
        return Err(internal(format!("phantom family check failed: {:?}", phantoms.congruence)).at_stage("phantom family"));
    }
    let certificate = ObstructionCertificate {
        generator: ideal.principal_generator().ok_or_else(|| internal("final ideal is not principal"))?,
        ring,
        ideal,
        n,
        m,
        kernel_size: kernel.kernel.len(),
        kernel: kernel.kernel,
        phantom_family_size: phantoms.members.len(),
        phantoms: phantoms.members,
        congruence: phantoms.congruence,
        seed: opts.seed,
        random_samples: opts.random_samples,
    };
    Ok(Certification::NonRepresentable(Box::new(Obstruction { trace, decomposition, certificate })))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecheckReport {
    pub checks: Vec<(&'static str, bool)>,
}

impl RecheckReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }
}

/// Re-derive every claim of a certificate from its ring, ideal, block sizes and seed.
/// Cap violations propagate; any other failure marks the relevant check false.
pub fn recheck(cert: &ObstructionCertificate, caps: &Caps) -> Result<RecheckReport> {
    fn soft<T>(r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e) if matches!(e.root(), Error::CapExceeded { .. }) => Err(e),
            Err(_) => Ok(None),
        }
    }
    let ring = &cert.ring;
    let mut checks = Vec::new();
    let principal = Ideal::closure(ring, vec![cert.generator]);
    checks.push(("ideal is generated by the recorded element", principal == cert.ideal && !cert.ideal.is_zero()));
    checks.push(("ring is local", local_structure(ring).is_local));
    checks.push(("ideal is annihilated by the maximal ideal", soft(check_ideal(ring, &cert.ideal))?.is_some()));
    checks.push(("n is positive", cert.n >= 1));

    let kernel = soft(kernel_block_report(ring, &cert.ideal, cert.n, cert.m, caps))?;
    let expected_kernel = cert.ideal.len().checked_pow((cert.m * cert.m) as u32);
    checks.push((
        "kernel equals the block set",
        kernel.as_ref().is_some_and(|k| k.pass() && k.kernel == cert.kernel)
            && Some(cert.kernel_size) == expected_kernel
            && cert.kernel.len() == cert.kernel_size,
    ));

    let opts = PhantomOptions { seed: cert.seed, random_samples: cert.random_samples };
    let phantoms = soft(phantom_family(ring, &cert.ideal, cert.n, cert.m, opts, caps))?;
    let expected_phantoms = cert.ideal.len().checked_pow((cert.n * cert.n) as u32);
    checks.push((
        "phantoms are distinct and induce the identity",
        phantoms.as_ref().is_some_and(|p| p.identity_inducing && p.distinct && p.members == cert.phantoms)
            && Some(cert.phantom_family_size) == expected_phantoms
            && cert.phantoms.len() == cert.phantom_family_size
            && cert.phantom_family_size >= 2,
    ));
    checks
        .push(("congruence identity holds", phantoms.as_ref().is_some_and(|p| p.congruence == cert.congruence) && cert.congruence.pass()));
    Ok(RecheckReport { checks })
}

/// `(T/nT)^×` computed directly and as `GL` of the `T`-module `T/nT`.
#[derive(Debug, Clone)]
pub struct UnitsFunctorReport {
    pub quotient: RingRef,
    /// Units of `T/nT`, sorted.
    pub direct: Vec<Elem>,
    pub group: AutGroup,
    /// Image of the generator under each automorphism, projected to `T/nT`, sorted.
    pub via_gl: Vec<Elem>,
}

impl UnitsFunctorReport {
    pub fn agree(&self) -> bool {
        self.direct == self.via_gl && self.group.len() == self.direct.len()
    }
}

pub fn units_functor_points(n: u64, t: &RingRef, caps: &Caps) -> Result<UnitsFunctorReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let n = t.from_int(i64::try_from(n).map_err(|_| Error::Precondition("n is too large".into()))?);
    let (quotient, proj) = quotient_ring(&Ideal::closure(t, vec![n]))?;
    let e = FPModule::new(Presentation::new(t.clone(), 1, 1, vec![vec![n]])?);
    let group = gl_points(&e, &RingHom::identity(t), caps)?;
    let mut via_gl: Vec<Elem> = group.carrier().iter().map(|h| proj.apply(h.images()[0][0])).collect();
    via_gl.sort();
    let mut direct: Vec<Elem> = quotient.units().into_iter().map(|(u, _)| u).collect();
    direct.sort();
    Ok(UnitsFunctorReport { quotient, direct, group, via_gl })
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

    #[test]
    fn kernel_block_examples() {
        let caps = Caps::default();
        let z4 = ring(RingSpec::zmod(4));
        let i = Ideal::closure(&z4, vec![Elem(2)]);
        let rep = kernel_block_report(&z4, &i, 1, 1, &caps).unwrap();
        assert!(rep.pass());
        assert_eq!(
            rep.kernel,
            vec![vec![vec![Elem(1), Elem(0)], vec![Elem(0), Elem(1)]], vec![vec![Elem(1), Elem(0)], vec![Elem(0), Elem(3)]]]
        );

        let rep = kernel_block_report(&z4, &i, 2, 0, &caps).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.kernel.len(), 1);

        let d = dual();
        let eps = Ideal::closure(&d, vec![d.generator(1)]);
        let rep = kernel_block_report(&d, &eps, 1, 1, &caps).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.kernel.len(), 2);
    }

    #[test]
    fn kernel_preconditions() {
        let caps = Caps::default();
        let z8 = ring(RingSpec::zmod(8));
        let i = Ideal::closure(&z8, vec![Elem(2)]);
        assert!(matches!(kernel_block_check(&z8, &i, 1, 1, &caps), Err(Error::NotAnnihilated)));
        let z6 = ring(RingSpec::zmod(6));
        assert!(matches!(kernel_block_check(&z6, &Ideal::zero(&z6), 1, 1, &caps), Err(Error::NotLocal)));
    }

    #[test]
    fn phantom_examples() {
        let caps = Caps::default();
        let z4 = ring(RingSpec::zmod(4));
        let i = Ideal::closure(&z4, vec![Elem(2)]);
        let fam = phantom_family(&z4, &i, 1, 1, PhantomOptions::default(), &caps).unwrap();
        assert!(fam.pass());
        assert_eq!(fam.members, vec![vec![vec![Elem(1)]], vec![vec![Elem(3)]]]);
        assert_eq!(fam.congruence.monomials, 10);

        let z8 = ring(RingSpec::zmod(8));
        let err = phantom_family(&z8, &Ideal::closure(&z8, vec![Elem(2)]), 1, 1, PhantomOptions::default(), &caps);
        assert!(matches!(err, Err(Error::NotAnnihilated)));
        assert!(phantom_family(&z4, &Ideal::zero(&z4), 1, 1, PhantomOptions::default(), &caps).is_err());
        assert!(phantom_family(&z4, &i, 0, 1, PhantomOptions::default(), &caps).is_err());
    }

    #[test]
    fn congruence_detects_wrong_ideal() {
        // a unit multiplier separates the points, a multiplier from I does not
        let z4 = ring(RingSpec::zmod(4));
        let r = &*z4;
        let base = point(r, &vec![vec![Elem(1)]], 1, 0);
        let moved = point(r, &vec![vec![Elem(3)]], 1, 0);
        assert_ne!(monomial(r, &base, &[0]), monomial(r, &moved, &[0]));
        assert_eq!(r.mul(Elem(2), monomial(r, &base, &[0, 0])), r.mul(Elem(2), monomial(r, &moved, &[0, 0])));
    }

    #[test]
    fn certify_examples() {
        let caps = Caps::default();
        let z4 = ring(RingSpec::zmod(4));
        let e = FPModule::new(Presentation::from_coeffs(z4.clone(), 2, 1, &[vec![vec![2]], vec![vec![0]]]).unwrap());
        let Certification::NonRepresentable(ob) = certify_nonrepresentable(&e, PhantomOptions::default(), &caps).unwrap() else {
            panic!("expected an obstruction");
        };
        let c = &ob.certificate;
        assert_eq!((c.n, c.m, c.kernel_size, c.phantom_family_size), (1, 1, 2, 2));
        assert!(recheck(c, &caps).unwrap().pass());

        let mut forged = c.clone();
        forged.phantoms.pop();
        assert!(!recheck(&forged, &caps).unwrap().pass());

        match certify_nonrepresentable(&FPModule::free(z4, 3), PhantomOptions::default(), &caps).unwrap() {
            Certification::Free { rank } => assert_eq!(rank, 3),
            _ => panic!("free module certified"),
        }
    }

    #[test]
    fn certify_residue_field() {
        let caps = Caps::default();
        let r = ring(RingSpec::truncated_poly(RingSpec::zmod(2), 2, 2));
        let (x, y) = (r.generator(1), r.generator(2));
        let e = FPModule::new(Presentation::new(r, 1, 2, vec![vec![x, y]]).unwrap());
        let Certification::NonRepresentable(ob) = certify_nonrepresentable(&e, PhantomOptions::default(), &caps).unwrap() else {
            panic!("expected an obstruction");
        };
        assert_eq!(ob.trace.steps.len(), 1);
        let c = &ob.certificate;
        assert_eq!((c.n, c.m, c.phantom_family_size, c.ring.order()), (1, 0, 2, 4));
        assert!(recheck(c, &caps).unwrap().pass());
    }

    #[test]
    fn stage_is_named() {
        let z6 = ring(RingSpec::zmod(6));
        let e = FPModule::new(Presentation::from_coeffs(z6, 1, 1, &[vec![vec![2]]]).unwrap());
        let err = certify_nonrepresentable(&e, PhantomOptions::default(), &Caps::default()).unwrap_err();
        assert!(matches!(err, Error::Stage { stage: "locality", .. }));
        assert_eq!(err.kind(), "not_local");
    }

    #[test]
    fn units_functor_examples() {
        let caps = Caps::default();
        let z8 = ring(RingSpec::zmod(8));
        let rep = units_functor_points(2, &z8, &caps).unwrap();
        assert!(rep.agree());
        assert_eq!(rep.group.len(), 1);
        assert_eq!(units_functor_points(4, &z8, &caps).unwrap().group.len(), 2);
        let rep = units_functor_points(2, &dual(), &caps).unwrap();
        assert!(rep.agree());
        assert_eq!(rep.group.len(), 2);
    }
}

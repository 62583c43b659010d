//! Splitting a module with principal, square-zero flattening ideal into
//! `R^m ⊕ (R/(a))^n`, and the quotient pipeline that reaches that situation
//! from an arbitrary non-free module over a finite local ring.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::caps::Caps;
use crate::error::{internal, Error, Result};
use crate::ideal::{local_structure, minimal_generators, quotient_ring, Ideal};
use crate::module::{
    base_change, elements_of, flattening_ideal, is_free_oracle, minimal_form, vec_combination, FPModule, ModuleHom, Presentation,
};
use crate::ring::{Elem, FiniteRing, RingHom, RingRef};

pub type Matrix = Vec<Vec<Elem>>;

/// Evidence that `E ≅ R^m ⊕ (R/(a))^n`.
#[derive(Debug, Clone)]
pub struct DecompositionCertificate {
    pub ring: RingRef,
    /// Free summands.
    pub m: usize,
    /// Torsion summands `R/(a)`.
    pub n: usize,
    /// Principal generator of the flattening ideal.
    pub a: Elem,
    pub minimal: Presentation,
    /// Unit cofactors: `minimal = a·psi`, zero entries kept zero.
    pub psi: Matrix,
    pub row_ops: Matrix,
    pub row_ops_inv: Matrix,
    pub col_ops: Matrix,
    pub col_ops_inv: Matrix,
    /// `E → (R/(a))^n ⊕ R^m`
    pub iso_witness: ModuleHom,
    /// `(R/(a))^n ⊕ R^m → E`
    pub iso_inverse: ModuleHom,
}

impl DecompositionCertificate {
    /// `p'×q'` block matrix with `1_n` top-left and zeros elsewhere.
    pub fn block(&self) -> Matrix {
        let (p, q) = (self.minimal.rows(), self.minimal.cols());
        let one = self.ring.one();
        (0..p).map(|i| (0..q).map(|j| if i == j && i < self.n { one } else { Elem::ZERO }).collect()).collect()
    }

    pub fn standard_module(&self) -> FPModule {
        FPModule::new(Presentation::standard(self.ring.clone(), self.a, self.n, self.m))
    }

    /// Re-derive every invariant from the recorded data.
    pub fn verify(&self) -> Result<()> {
        let r = &*self.ring;
        let (p, q) = (self.minimal.rows(), self.minimal.cols());
        if self.m + self.n != p {
            return Err(internal("m + n differs from the minimal generator count"));
        }
        if mat_mul(r, &self.row_ops, &self.row_ops_inv) != identity(r, p) || mat_mul(r, &self.col_ops, &self.col_ops_inv) != identity(r, q)
        {
            return Err(internal("change-of-basis matrices are not inverse pairs"));
        }
        let phi = self.minimal.entries().to_vec();
        for (i, row) in self.psi.iter().enumerate() {
            for (j, &u) in row.iter().enumerate() {
                if r.mul(self.a, u) != phi[i][j] {
                    return Err(internal("minimal presentation differs from a·psi"));
                }
                if u != Elem::ZERO && !r.is_unit(u) {
                    return Err(internal("psi has a nonzero non-unit entry"));
                }
            }
        }
        let block = self.block();
        let transformed = mat_mul(r, &mat_mul(r, &self.row_ops, &phi), &self.col_ops);
        let scaled: Matrix = block.iter().map(|row| row.iter().map(|&x| r.mul(self.a, x)).collect()).collect();
        if transformed != scaled {
            return Err(internal("row_ops·φ·col_ops differs from a·block"));
        }
        let ls = local_structure(&self.ring);
        let max = ls.maximal()?;
        let psi_t = mat_mul(r, &mat_mul(r, &self.row_ops, &self.psi), &self.col_ops);
        for (row_t, row_b) in psi_t.iter().zip(&block) {
            for (&x, &y) in row_t.iter().zip(row_b) {
                if !max.contains(r.sub(x, y)) {
                    return Err(internal("row_ops·psi·col_ops is not the block form modulo m"));
                }
            }
        }
        let src = self.iso_witness.source();
        let dst = self.iso_witness.target();
        if !self.iso_witness.is_bijective() {
            return Err(internal("iso witness is not bijective"));
        }
        for v in src.iter() {
            if self.iso_inverse.apply(&self.iso_witness.apply(&v)) != v {
                return Err(internal("inverse ∘ witness is not the identity"));
            }
        }
        for v in dst.iter() {
            if self.iso_witness.apply(&self.iso_inverse.apply(&v)) != v {
                return Err(internal("witness ∘ inverse is not the identity"));
            }
        }
        let quotient = r.order() / Ideal::closure(&self.ring, vec![self.a]).len();
        let expected = (r.order() as u128).pow(self.m as u32) * (quotient as u128).pow(self.n as u32);
        if src.len() as u128 != expected {
            return Err(internal(format!("|E| = {} but |R|^m·|R/(a)|^n = {expected}", src.len())));
        }
        Ok(())
    }
}

fn identity(r: &FiniteRing, n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { r.one() } else { Elem::ZERO }).collect()).collect()
}

pub fn mat_mul(r: &FiniteRing, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| r.sum((0..inner).map(|k| r.mul(row[k], b[k][j])))).collect()).collect()
}

/// Split `E` along a principal flattening ideal `(a)` with `m·a = 0`.
pub fn split_principal(e: &FPModule, caps: &Caps) -> Result<DecompositionCertificate> {
    let ring = e.ring().clone();
    let r = &*ring;
    let form = minimal_form(e)?;
    let min = form.presentation.clone();
    let mut gens: Vec<Elem> = min.entries().iter().flatten().copied().filter(|&x| x != Elem::ZERO).collect();
    gens.sort();
    gens.dedup();
    let ideal = Ideal::closure(&ring, gens);
    let a = ideal.principal_generator().ok_or(Error::NotPrincipal)?;
    let ls = local_structure(&ring);
    let max = ls.maximal()?;
    if !max.product(&ideal)?.is_zero() {
        return Err(Error::NotAnnihilated);
    }
    let (p, q) = (min.rows(), min.cols());

    let psi: Matrix = if a == Elem::ZERO {
        if q != 0 {
            return Err(internal("zero flattening ideal but the minimal presentation has relations"));
        }
        vec![Vec::new(); p]
    } else {
        let units: Vec<Elem> = ls.units.iter().map(|&(u, _)| u).collect();
        min.entries()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| {
                        if x == Elem::ZERO {
                            Ok(Elem::ZERO)
                        } else {
                            units
                                .iter()
                                .copied()
                                .find(|&u| r.mul(u, a) == x)
                                .ok_or_else(|| internal(format!("entry {} is not a unit multiple of a", r.fmt_elem(x))))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
    };

    let mut inverse = vec![None; r.order()];
    for &(u, inv) in &ls.units {
        inverse[u.index()] = Some(inv);
    }
    let mut w = psi.clone();
    let mut pm = identity(r, p);
    let mut pm_inv = identity(r, p);
    let mut qm = identity(r, q);
    let mut qm_inv = identity(r, q);
    let mut t = 0;
    while t < p.min(q) {
        let pivot = (t..p).find_map(|i| (t..q).find(|&j| inverse[w[i][j].index()].is_some()).map(|j| (i, j)));
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            w.swap(t, pi);
            pm.swap(t, pi);
            for row in pm_inv.iter_mut() {
                row.swap(t, pi);
            }
        }
        if pj != t {
            for row in w.iter_mut() {
                row.swap(t, pj);
            }
            for row in qm.iter_mut() {
                row.swap(t, pj);
            }
            qm_inv.swap(t, pj);
        }
        let u = w[t][t];
        let u_inv = inverse[u.index()].unwrap();
        for x in w[t].iter_mut().chain(pm[t].iter_mut()) {
            *x = r.mul(u_inv, *x);
        }
        for row in pm_inv.iter_mut() {
            row[t] = r.mul(u, row[t]);
        }
        for k in 0..p {
            let f = w[k][t];
            if k == t || f == Elem::ZERO {
                continue;
            }
            let (wt, pt) = (w[t].clone(), pm[t].clone());
            for (x, &y) in w[k].iter_mut().zip(&wt) {
                *x = r.sub(*x, r.mul(f, y));
            }
            for (x, &y) in pm[k].iter_mut().zip(&pt) {
                *x = r.sub(*x, r.mul(f, y));
            }
            for row in pm_inv.iter_mut() {
                row[t] = r.add(row[t], r.mul(f, row[k]));
            }
        }
        for l in 0..q {
            let f = w[t][l];
            if l == t || f == Elem::ZERO {
                continue;
            }
            for row in w.iter_mut().chain(qm.iter_mut()) {
                row[l] = r.sub(row[l], r.mul(f, row[t]));
            }
            let ql = qm_inv[l].clone();
            for (x, &y) in qm_inv[t].iter_mut().zip(&ql) {
                *x = r.add(*x, r.mul(f, y));
            }
        }
        t += 1;
    }
    let n = t;
    if (a == Elem::ZERO) != (n == 0) {
        return Err(internal("torsion multiplicity must be positive exactly when a ≠ 0"));
    }
    let m = p - n;

    let source = elements_of(e, caps)?;
    let standard = FPModule::new(Presentation::standard(ring.clone(), a, n, m));
    let target = elements_of(&standard, caps)?;
    let forward: Vec<Vec<Elem>> = form.to_min.iter().map(|v| mat_vec(r, &pm, v)).collect();
    let backward: Vec<Vec<Elem>> = (0..p)
        .map(|k| {
            let col: Vec<Elem> = pm_inv.iter().map(|row| row[k]).collect();
            vec_combination(r, &col, &form.from_min, e.generator_count())
        })
        .collect();
    let iso_witness = ModuleHom::new(source.clone(), target.clone(), forward).map_err(|err| internal(format!("witness: {err}")))?;
    let iso_inverse = ModuleHom::new(target, source, backward).map_err(|err| internal(format!("inverse witness: {err}")))?;

    let cert = DecompositionCertificate {
        ring,
        m,
        n,
        a,
        minimal: min,
        psi,
        row_ops: pm,
        row_ops_inv: pm_inv,
        col_ops: qm,
        col_ops_inv: qm_inv,
        iso_witness,
        iso_inverse,
    };
    cert.verify()?;
    Ok(cert)
}

fn mat_vec(r: &FiniteRing, a: &[Vec<Elem>], v: &[Elem]) -> Vec<Elem> {
    a.iter().map(|row| r.sum(row.iter().zip(v).map(|(&x, &y)| r.mul(x, y)))).collect()
}

#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub description: String,
    pub hom: RingHom,
}

/// Record of the quotients taken to reach a principal flattening ideal
/// annihilated by the maximal ideal.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub initial_ideal: Ideal,
    /// Minimal generator count of the initial flattening ideal.
    pub r_initial: usize,
    pub steps: Vec<ReductionStep>,
    pub final_ring: RingRef,
    pub final_module: FPModule,
    pub final_ideal: Ideal,
}

impl ReductionTrace {
    /// Composite projection from the original ring onto `final_ring`.
    pub fn composite(&self) -> RingHom {
        let mut hom = RingHom::identity(self.initial_ideal.ring());
        for s in &self.steps {
            hom = hom.then(&s.hom).expect("consecutive steps chain");
        }
        hom
    }
}

/// Quotient by the first `r−1` minimal generators of the flattening ideal,
/// then by `m·I`, recomputing `I` after every step.
pub fn reduce_to_obstruction(e: &FPModule) -> Result<ReductionTrace> {
    let initial_ideal = flattening_ideal(e)?;
    if initial_ideal.is_zero() {
        let rank = minimal_form(e)?.presentation.rows();
        return Err(Error::AlreadyFree { rank });
    }
    let r_initial = minimal_generators(&initial_ideal)?.len();
    let mut module = e.clone();
    let mut ideal = initial_ideal.clone();
    let mut steps = Vec::new();
    loop {
        if steps.len() > r_initial + 1 {
            return Err(internal("reduction did not terminate within r+1 quotient steps"));
        }
        let ring = module.ring().clone();
        let gens = minimal_generators(&ideal)?;
        let (j, description) = if gens.len() >= 2 {
            let keep = &gens[..gens.len() - 1];
            let shown: Vec<String> = keep.iter().map(|&g| ring.fmt_elem(g)).collect();
            (
                Ideal::closure(&ring, keep.to_vec()),
                format!("quotient by the first {} minimal generators ({})", keep.len(), shown.join(", ")),
            )
        } else {
            let ls = local_structure(&ring);
            let mi = ls.maximal()?.product(&ideal)?;
            if mi.is_zero() {
                break;
            }
            (mi, String::from("quotient by m·I"))
        };
        let (_, hom) = quotient_ring(&j)?;
        module = base_change(&module, &hom)?;
        ideal = flattening_ideal(&module)?;
        steps.push(ReductionStep { description, hom });
    }
    let final_ring = module.ring().clone();
    if ideal.is_zero() || ideal.principal_generator().is_none() {
        return Err(internal("final flattening ideal is zero or not principal"));
    }
    if !local_structure(&final_ring).maximal()?.product(&ideal)?.is_zero() {
        return Err(internal("final flattening ideal is not annihilated by m"));
    }
    Ok(ReductionTrace { initial_ideal, r_initial, steps, final_ring, final_module: module, final_ideal: ideal })
}

/// Per-power record of the freeness check behind "free modulo every `m^n` ⇒ free".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationReport {
    pub nilpotency_index: usize,
    /// `(n, E/m^nE free (oracle), I ⊆ m^n)` for `2 ≤ n ≤ ν`.
    pub per_power: Vec<(usize, bool, bool)>,
    /// `E/m^nE` free for every `2 ≤ n ≤ ν`.
    pub all_truncations_free: bool,
    /// Flattening ideal is zero.
    pub free: bool,
}

impl TruncationReport {
    pub fn holds(&self) -> bool {
        self.all_truncations_free == self.free && self.per_power.iter().all(|&(_, f, c)| f == c)
    }
}

pub fn truncation_freeness_report(e: &FPModule, caps: &Caps) -> Result<TruncationReport> {
    let ring = e.ring();
    let ls = local_structure(ring);
    let m = ls.maximal()?;
    let nu = ls.nilpotency_index.ok_or_else(|| internal("maximal ideal of a finite local ring is not nilpotent"))?;
    let ideal = flattening_ideal(e)?;
    let mut per_power = Vec::new();
    for n in 2..=nu {
        let mn = m.power(n);
        let (_, hom) = quotient_ring(&mn)?;
        let verdict = is_free_oracle(&base_change(e, &hom)?, caps)?;
        per_power.push((n, verdict.free, ideal.is_subset(&mn)));
    }
    Ok(TruncationReport {
        nilpotency_index: nu,
        all_truncations_free: per_power.iter().all(|&(_, f, _)| f),
        per_power,
        free: ideal.is_zero(),
    })
}

/// Always `true` on valid input; a failing biconditional is reported as an
/// internal inconsistency.
pub fn truncation_freeness_check(e: &FPModule, caps: &Caps) -> Result<bool> {
    let rep = truncation_freeness_report(e, caps)?;
    if rep.holds() {
        Ok(true)
    } else {
        Err(internal(format!("freeness modulo powers of m disagrees with the flattening ideal: {rep:?}")))
    }
}

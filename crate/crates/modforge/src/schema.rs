//! JSON documents for rings, modules, homs and certificates.
//!
//! Elements are coefficient vectors over the ring's additive basis.

use serde::{Deserialize, Serialize};

use modforge_core::decompose::Matrix;
use modforge_core::ideal::quotient_ring;
use modforge_core::obstruction::{CongruenceReport, ObstructionCertificate};
use modforge_core::ring::build_ring;
use modforge_core::{Caps, Elem, Error, FPModule, FiniteRing, Ideal, Presentation, RingHom, RingRef, RingSpec};

pub type Coeffs = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDoc {
    Zmod { n: u64 },
    TruncatedPoly { base: Box<RingDoc>, vars: usize, degree: usize },
    Table { orders: Vec<u64>, one: Coeffs, mul: Vec<Vec<Coeffs>> },
    Quotient { of: Box<RingDoc>, ideal: Vec<Coeffs> },
}

impl RingDoc {
    pub fn to_spec(&self) -> RingSpec {
        match self {
            RingDoc::Zmod { n } => RingSpec::zmod(*n),
            RingDoc::TruncatedPoly { base, vars, degree } => RingSpec::truncated_poly(base.to_spec(), *vars, *degree),
            RingDoc::Table { orders, one, mul } => RingSpec::Table { orders: orders.clone(), one: one.clone(), mul: mul.clone() },
            RingDoc::Quotient { of, ideal } => RingSpec::quotient(of.to_spec(), ideal.clone()),
        }
    }

    pub fn build(&self, caps: &Caps) -> Result<RingRef, Error> {
        build_ring(&self.to_spec(), caps)
    }

    /// Structure constants of a built ring.
    pub fn table(ring: &FiniteRing) -> RingDoc {
        let signed = |v: &[u64]| v.iter().map(|&c| c as i64).collect::<Coeffs>();
        RingDoc::Table {
            orders: ring.additive_orders().to_vec(),
            one: signed(ring.one_coeffs()),
            mul: ring.structure().iter().map(|row| row.iter().map(|c| signed(c)).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub rows: usize,
    pub cols: usize,
    /// `entries[row][col]`
    pub entries: Vec<Vec<Coeffs>>,
}

impl PresentationDoc {
    pub fn build(&self, ring: &RingRef) -> Result<FPModule, Error> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Malformed(format!("presentation entries are not {}×{}", self.rows, self.cols)));
        }
        Ok(FPModule::new(Presentation::from_coeffs(ring.clone(), self.rows, self.cols, &self.entries)?))
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        let r = p.ring();
        PresentationDoc { rows: p.rows(), cols: p.cols(), entries: p.entries().iter().map(|row| elems(r, row)).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HomDoc {
    /// Projection onto `R/J`, `J` generated by `ideal`.
    Quotient { ideal: Vec<Coeffs> },
    /// Images of the additive generators of the source.
    Map { target: RingDoc, images: Vec<Coeffs> },
}

impl HomDoc {
    pub fn build(&self, source: &RingRef, caps: &Caps) -> Result<RingHom, Error> {
        match self {
            HomDoc::Quotient { ideal } => {
                let gens = parse_elems(source, ideal)?;
                Ok(quotient_ring(&Ideal::closure(source, gens))?.1)
            }
            HomDoc::Map { target, images } => {
                let t = target.build(caps)?;
                let images = parse_elems(&t, images)?;
                RingHom::new(source.clone(), t, images)
            }
        }
    }
}

/// Input document of every command except `recheck`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDoc {
    pub ring: RingDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom: Option<HomDoc>,
    /// Generator indices spanning the submodule for the parabolic subgroup.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub submodule: Option<Vec<usize>>,
}

pub fn elem(r: &FiniteRing, x: Elem) -> Coeffs {
    r.coeffs(x).into_iter().map(|c| c as i64).collect()
}

pub fn elems(r: &FiniteRing, xs: &[Elem]) -> Vec<Coeffs> {
    xs.iter().map(|&x| elem(r, x)).collect()
}

pub fn matrix(r: &FiniteRing, m: &Matrix) -> Vec<Vec<Coeffs>> {
    m.iter().map(|row| elems(r, row)).collect()
}

pub fn parse_elems(r: &FiniteRing, xs: &[Coeffs]) -> Result<Vec<Elem>, Error> {
    xs.iter().map(|c| r.elem_from_coeffs(c)).collect()
}

fn parse_matrix(r: &FiniteRing, m: &[Vec<Coeffs>]) -> Result<Matrix, Error> {
    m.iter().map(|row| parse_elems(r, row)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDoc {
    pub generator: Coeffs,
    pub elements: Vec<Coeffs>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceDoc {
    pub variables: usize,
    pub monomials: usize,
    pub low_degree_checks: usize,
    pub random_samples: usize,
    pub failures: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub ring: RingDoc,
    pub ideal: IdealDoc,
    pub n: usize,
    pub m: usize,
    pub kernel: Vec<Vec<Vec<Coeffs>>>,
    pub kernel_size: usize,
    pub phantoms: Vec<Vec<Vec<Coeffs>>>,
    pub phantom_family_size: usize,
    pub congruence_report: CongruenceDoc,
    pub seed: u64,
    pub verdict: String,
}

impl CertificateDoc {
    pub fn from_certificate(c: &ObstructionCertificate) -> Self {
        let r = &*c.ring;
        let g = &c.congruence;
        CertificateDoc {
            ring: RingDoc::table(r),
            ideal: IdealDoc { generator: elem(r, c.generator), elements: elems(r, c.ideal.elements()) },
            n: c.n,
            m: c.m,
            kernel: c.kernel.iter().map(|k| matrix(r, k)).collect(),
            kernel_size: c.kernel_size,
            phantoms: c.phantoms.iter().map(|p| matrix(r, p)).collect(),
            phantom_family_size: c.phantom_family_size,
            congruence_report: CongruenceDoc {
                variables: g.variables,
                monomials: g.monomials,
                low_degree_checks: g.low_degree_checks,
                random_samples: g.random_samples,
                failures: g.failures,
                pass: g.pass(),
            },
            seed: c.seed,
            verdict: ObstructionCertificate::VERDICT.to_string(),
        }
    }

    /// Rebuild the certificate. Claims are not checked here.
    pub fn to_certificate(&self, caps: &Caps) -> Result<ObstructionCertificate, Error> {
        let ring = self.ring.build(caps)?;
        let r = &*ring;
        let g = &self.congruence_report;
        Ok(ObstructionCertificate {
            ideal: Ideal::closure(&ring, parse_elems(r, &self.ideal.elements)?),
            generator: r.elem_from_coeffs(&self.ideal.generator)?,
            n: self.n,
            m: self.m,
            kernel: self.kernel.iter().map(|k| parse_matrix(r, k)).collect::<Result<_, _>>()?,
            kernel_size: self.kernel_size,
            phantoms: self.phantoms.iter().map(|p| parse_matrix(r, p)).collect::<Result<_, _>>()?,
            phantom_family_size: self.phantom_family_size,
            congruence: CongruenceReport {
                variables: g.variables,
                monomials: g.monomials,
                low_degree_checks: g.low_degree_checks,
                random_samples: g.random_samples,
                failures: g.failures,
            },
            seed: self.seed,
            random_samples: g.random_samples,
            ring,
        })
    }
}

//! Jobs: one command over one input document, producing a [`Report`].

use std::path::PathBuf;
use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use modforge_core::decompose::{reduce_to_obstruction, split_principal, DecompositionCertificate, ReductionTrace};
use modforge_core::group::{gl_points, parabolic_points};
use modforge_core::ideal::{local_structure, minimal_generators};
use modforge_core::module::{flattening_ideal, is_free_oracle, minimal_form, verify_flattening_universal};
use modforge_core::obstruction::{certify_nonrepresentable, hom_matrix, recheck, Certification, PhantomOptions, DEFAULT_RANDOM_SAMPLES};
use modforge_core::{Caps, Error, FPModule, FiniteRing, Ideal, ModuleHom, RingHom, RingRef};

use crate::corpus;
use crate::report::{ErrorDoc, Report, EXIT_CAP, EXIT_INPUT, EXIT_INTERNAL, EXIT_NON_REPRESENTABLE, EXIT_OK, TOOL_VERSION};
use crate::schema::{elem, elems, matrix, CertificateDoc, InputDoc, PresentationDoc, RingDoc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate,
    Analyze,
    Decompose,
    Gl,
    Certify,
    Recheck,
    Corpus { bound: usize, dir: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Analyze => "analyze",
            Command::Decompose => "decompose",
            Command::Gl => "gl",
            Command::Certify => "certify",
            Command::Recheck => "recheck",
            Command::Corpus { .. } => "corpus",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Job {
    pub command: Command,
    /// Raw input document; absent only for `corpus`.
    pub input: Option<Vec<u8>>,
    pub caps: Caps,
    pub seed: u64,
}

enum Failure {
    Core(Error),
    Input(String),
    /// A certificate failed re-validation; the value lists the checks.
    Rejected(Value, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(Value, i32), Failure>;

pub fn run(job: &Job) -> Report {
    let start = Instant::now();
    let input_digest = job.input.as_ref().map(|b| hex::encode(Sha256::digest(b)));
    let (result, exit_code, error) = match execute(job) {
        Ok((v, code)) => (Some(v), code, None),
        Err(Failure::Core(e)) => {
            let code = match e.root() {
                Error::CapExceeded { .. } => EXIT_CAP,
                Error::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_INPUT,
            };
            let stage = match &e {
                Error::Stage { stage, .. } => Some(stage.to_string()),
                _ => None,
            };
            (None, code, Some(ErrorDoc { kind: e.kind().into(), stage, message: e.root().to_string() }))
        }
        Err(Failure::Input(msg)) => (None, EXIT_INPUT, Some(ErrorDoc { kind: "input".into(), stage: None, message: msg })),
        Err(Failure::Rejected(v, msg)) => {
            (Some(v), EXIT_INPUT, Some(ErrorDoc { kind: "certificate_rejected".into(), stage: None, message: msg }))
        }
    };
    Report {
        command: job.command.name().into(),
        tool_version: TOOL_VERSION.into(),
        input_digest,
        exit_code,
        result,
        error,
        elapsed: start.elapsed(),
    }
}

fn execute(job: &Job) -> Outcome {
    let caps = &job.caps;
    if let Command::Corpus { bound, dir } = &job.command {
        return corpus_job(*bound, dir, caps);
    }
    let bytes = job.input.as_deref().ok_or_else(|| Failure::Input("no input document".into()))?;
    if job.command == Command::Recheck {
        return recheck_job(bytes, caps);
    }
    let doc: InputDoc = serde_json::from_slice(bytes).map_err(|e| Failure::Input(format!("invalid input document: {e}")))?;
    let ring = doc.ring.build(caps)?;
    let module = doc.presentation.as_ref().map(|p| p.build(&ring)).transpose()?;
    let need_module = || module.clone().ok_or_else(|| Failure::Input(format!("`{}` needs a presentation", job.command.name())));
    match job.command {
        Command::Validate => validate(&ring, module.as_ref()),
        Command::Analyze => analyze(&need_module()?, caps),
        Command::Decompose => decompose(&need_module()?, caps),
        Command::Gl => {
            let hom = match &doc.hom {
                Some(h) => h.build(&ring, caps)?,
                None => RingHom::identity(&ring),
            };
            gl(&need_module()?, &hom, doc.submodule.as_deref(), caps)
        }
        Command::Certify => certify(&need_module()?, job.seed, caps),
        Command::Recheck | Command::Corpus { .. } => unreachable!(),
    }
}

fn ideal_doc(i: &Ideal) -> Result<Value, Error> {
    let r = &**i.ring();
    let gens = minimal_generators(i)?;
    Ok(json!({ "generators": elems(r, &gens), "order": i.len(), "elements": elems(r, i.elements()) }))
}

fn local_doc(ring: &RingRef) -> Value {
    let ls = local_structure(ring);
    json!({
        "order": ring.order(),
        "additive_orders": ring.additive_orders(),
        "local": ls.is_local,
        "residue_field_order": ls.residue_field_order,
        "maximal_ideal_order": ls.maximal_ideal.as_ref().map(Ideal::len),
        "nilpotency_index": ls.nilpotency_index,
        "units": ls.units.len(),
    })
}

fn validate(ring: &RingRef, module: Option<&FPModule>) -> Outcome {
    let mut v = json!({ "ring": local_doc(ring), "axioms": "ok" });
    if let Some(e) = module {
        v["module"] = json!({ "rows": e.presentation().rows(), "cols": e.presentation().cols() });
    }
    Ok((v, EXIT_OK))
}

fn analyze(e: &FPModule, caps: &Caps) -> Outcome {
    let ring = e.ring();
    local_structure(ring).maximal()?;
    let min = minimal_form(e)?;
    let ideal = flattening_ideal(e)?;
    let oracle = is_free_oracle(e, caps)?;
    let uni = verify_flattening_universal(e, caps)?;
    let free = ideal.is_zero();
    let rank = free.then(|| min.presentation.rows());
    if oracle.free != free || oracle.rank != rank || !uni.pass() {
        return Err(Failure::Core(modforge_core::Error::Internal(
            "flattening ideal, freeness oracle and universal property disagree".into(),
        )));
    }
    let r = &**ring;
    let rows: Vec<Value> = uni
        .rows
        .iter()
        .map(|row| {
            json!({
                "ideal": elems(r, row.ideal.elements()),
                "quotient_free": row.quotient_free,
                "quotient_rank": row.quotient_rank,
                "contains_flattening": row.contains_flattening,
            })
        })
        .collect();
    let summary = match rank {
        Some(k) => format!("locally free of rank {k}, GL_E = GL_{k}"),
        None => format!("not locally free: flattening ideal of order {}", ideal.len()),
    };
    let v = json!({
        "ring": local_doc(ring),
        "minimal_presentation": PresentationDoc::from_presentation(&min.presentation),
        "flattening_ideal": ideal_doc(&ideal)?,
        "free": free,
        "rank": rank,
        "oracle": { "free": oracle.free, "rank": oracle.rank },
        "universal_property": {
            "ideals_checked": uni.rows.len(),
            "rows": rows,
            "satisfying": uni.satisfying.len(),
            "pass": uni.pass(),
        },
        "summary": summary,
    });
    Ok((v, EXIT_OK))
}

fn images(h: &ModuleHom) -> Value {
    json!(matrix(h.target().ring(), &hom_matrix(h)))
}

fn decomposition_doc(d: &DecompositionCertificate) -> Value {
    let r = &*d.ring;
    json!({
        "ring": RingDoc::table(r),
        "a": elem(r, d.a),
        "n": d.n,
        "m": d.m,
        "minimal": PresentationDoc::from_presentation(&d.minimal),
        "psi": matrix(r, &d.psi),
        "row_ops": matrix(r, &d.row_ops),
        "row_ops_inv": matrix(r, &d.row_ops_inv),
        "col_ops": matrix(r, &d.col_ops),
        "col_ops_inv": matrix(r, &d.col_ops_inv),
        "iso_witness": images(&d.iso_witness),
        "iso_inverse": images(&d.iso_inverse),
    })
}

fn trace_doc(t: &ReductionTrace) -> Result<Value, Error> {
    let fin = &*t.final_ring;
    let steps: Vec<Value> =
        t.steps.iter().map(|s| json!({ "description": s.description, "target_ring": RingDoc::table(s.hom.target()) })).collect();
    Ok(json!({
        "initial_ideal": ideal_doc(&t.initial_ideal)?,
        "minimal_generator_count": t.r_initial,
        "steps": steps,
        "final_ring": RingDoc::table(fin),
        "final_ideal": ideal_doc(&t.final_ideal)?,
    }))
}

fn decompose(e: &FPModule, caps: &Caps) -> Outcome {
    local_structure(e.ring()).maximal()?;
    if flattening_ideal(e)?.is_zero() {
        let rank = minimal_form(e)?.presentation.rows();
        return Ok((json!({ "free": true, "rank": rank }), EXIT_OK));
    }
    let trace = reduce_to_obstruction(e).map_err(|err| err.at_stage("reduction"))?;
    let cert = split_principal(&trace.final_module, caps).map_err(|err| err.at_stage("splitting"))?;
    cert.verify().map_err(|err| err.at_stage("splitting"))?;
    Ok((json!({ "free": false, "trace": trace_doc(&trace)?, "certificate": decomposition_doc(&cert) }), EXIT_OK))
}

fn gl(e: &FPModule, hom: &RingHom, submodule: Option<&[usize]>, caps: &Caps) -> Outcome {
    let g = gl_points(e, hom, caps)?;
    let t: &FiniteRing = hom.target();
    let gens: Vec<Value> = g.generators().into_iter().map(|i| images(g.element(i))).collect();
    let mut v = json!({
        "target_ring": RingDoc::table(t),
        "order": g.len(),
        "generators": gens,
    });
    if let Some(sub) = submodule {
        let p = parabolic_points(e, sub, hom, caps)?;
        v["parabolic"] = json!({ "submodule": sub, "order": p.len(), "quotient_free": p.quotient_free });
    }
    Ok((v, EXIT_OK))
}

fn certify(e: &FPModule, seed: u64, caps: &Caps) -> Outcome {
    let opts = PhantomOptions { seed, random_samples: DEFAULT_RANDOM_SAMPLES };
    match certify_nonrepresentable(e, opts, caps)? {
        Certification::Free { rank } => {
            Ok((json!({ "verdict": "free", "rank": rank, "note": format!("GL_E is representable by GL_{rank}") }), EXIT_OK))
        }
        Certification::NonRepresentable(ob) => Ok((
            json!({
                "verdict": "non-representable",
                "trace": trace_doc(&ob.trace)?,
                "decomposition": decomposition_doc(&ob.decomposition),
                "certificate": CertificateDoc::from_certificate(&ob.certificate),
            }),
            EXIT_NON_REPRESENTABLE,
        )),
    }
}

/// Accepts a bare certificate or a `certify` report containing one.
fn recheck_job(bytes: &[u8], caps: &Caps) -> Outcome {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| Failure::Input(format!("invalid certificate document: {e}")))?;
    let cert_value = value.pointer("/result/certificate").cloned().unwrap_or(value);
    let doc: CertificateDoc =
        serde_json::from_value(cert_value.clone()).map_err(|e| Failure::Input(format!("invalid certificate document: {e}")))?;
    let cert = doc.to_certificate(caps)?;
    let report = recheck(&cert, caps)?;
    let reserialized = serde_json::to_value(CertificateDoc::from_certificate(&cert)).expect("certificates are plain data");
    let bit_exact = reserialized == cert_value;
    let verdict_ok = doc.verdict == modforge_core::ObstructionCertificate::VERDICT;
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|&(name, pass)| json!({ "name": name, "pass": pass }))
        .chain([json!({ "name": "re-serialization is bit-exact", "pass": bit_exact }), json!({ "name": "verdict", "pass": verdict_ok })])
        .collect();
    if report.pass() && bit_exact && verdict_ok {
        Ok((json!({ "verdict": "non-representable", "checks": checks }), EXIT_NON_REPRESENTABLE))
    } else {
        let failed: Vec<&str> = checks.iter().filter(|c| c["pass"] == json!(false)).filter_map(|c| c["name"].as_str()).collect();
        Err(Failure::Rejected(json!({ "checks": checks }), format!("failed checks: {}", failed.join("; "))))
    }
}

fn corpus_job(bound: usize, dir: &std::path::Path, caps: &Caps) -> Outcome {
    let written = corpus::write(dir, bound, caps).map_err(|e| match e {
        corpus::WriteError::Core(e) => Failure::Core(e),
        corpus::WriteError::Io(e) => Failure::Input(format!("cannot write corpus: {e}")),
        corpus::WriteError::Json(e) => Failure::Input(format!("cannot serialize corpus: {e}")),
    })?;
    let rings: Vec<&str> = written.iter().filter_map(|p| p.strip_prefix("rings/").and_then(|p| p.strip_suffix(".json"))).collect();
    let modules = written.len() - rings.len();
    Ok((json!({ "bound": bound, "rings": rings, "modules": modules }), EXIT_OK))
}

//! The fixed test corpus: eight small local rings and every presentation with
//! at most two generators and two relations over canonical entries.

use std::fs;
use std::path::Path;

use modforge_core::ideal::{enumerate_ideals, minimal_generators};
use modforge_core::{Caps, Elem, Error, FPModule, Presentation, RingRef};

use crate::schema::{InputDoc, PresentationDoc, RingDoc};

#[derive(Debug, Clone)]
pub struct CorpusRing {
    pub name: &'static str,
    pub doc: RingDoc,
    pub ring: RingRef,
}

#[derive(Debug, Clone)]
pub struct CorpusModule {
    /// Stable file stem.
    pub name: String,
    pub ring: &'static str,
    pub module: FPModule,
}

fn fixed_list() -> Vec<(&'static str, RingDoc)> {
    let z2 = || Box::new(RingDoc::Zmod { n: 2 });
    vec![
        ("z2", RingDoc::Zmod { n: 2 }),
        ("z4", RingDoc::Zmod { n: 4 }),
        ("z8", RingDoc::Zmod { n: 8 }),
        ("z16", RingDoc::Zmod { n: 16 }),
        (
            "f4",
            RingDoc::Table { orders: vec![2, 2], one: vec![1, 0], mul: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]] },
        ),
        ("f2_dual", RingDoc::TruncatedPoly { base: z2(), vars: 1, degree: 2 }),
        ("f2_xy_square_zero", RingDoc::TruncatedPoly { base: z2(), vars: 2, degree: 2 }),
        (
            "z4_dual",
            RingDoc::Table { orders: vec![4, 2], one: vec![1, 0], mul: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]] },
        ),
    ]
}

/// Corpus rings of order at most `bound`, in a fixed order.
pub fn rings(bound: usize, caps: &Caps) -> Result<Vec<CorpusRing>, Error> {
    if bound > caps.ring {
        return Err(Error::CapExceeded { what: "corpus bound", needed: bound as u128, cap: caps.ring as u128 });
    }
    let mut out = Vec::new();
    for (name, doc) in fixed_list() {
        let ring = doc.build(caps)?;
        if ring.order() <= bound {
            out.push(CorpusRing { name, doc, ring });
        }
    }
    Ok(out)
}

/// Zero together with the minimal generators of every ideal, sorted.
pub fn canonical_entries(ring: &RingRef, caps: &Caps) -> Result<Vec<Elem>, Error> {
    let mut out = vec![Elem::ZERO];
    for i in enumerate_ideals(ring, caps)? {
        out.extend(minimal_generators(&i)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Every presentation with `1 ≤ p ≤ 2`, `0 ≤ q ≤ 2` over the canonical entries.
pub fn modules(cr: &CorpusRing, caps: &Caps) -> Result<Vec<CorpusModule>, Error> {
    let entries = canonical_entries(&cr.ring, caps)?;
    let mut out = Vec::new();
    for p in 1..=2 {
        for q in 0..=2 {
            let cells = p * q;
            let mut digits = vec![0usize; cells];
            for index in 0..entries.len().pow(cells as u32) {
                let rows = (0..p).map(|i| (0..q).map(|j| entries[digits[i * q + j]]).collect()).collect();
                let module = FPModule::new(Presentation::new(cr.ring.clone(), p, q, rows)?);
                out.push(CorpusModule { name: format!("{}_p{p}_q{q}_{index:04}", cr.name), ring: cr.name, module });
                for d in digits.iter_mut().rev() {
                    *d += 1;
                    if *d < entries.len() {
                        break;
                    }
                    *d = 0;
                }
            }
        }
    }
    Ok(out)
}

/// Write `rings/<name>.json` and `modules/<name>.json` under `dir`; returns
/// the relative paths written, in order.
pub fn write(dir: &Path, bound: usize, caps: &Caps) -> Result<Vec<String>, WriteError> {
    let mut written = Vec::new();
    fs::create_dir_all(dir.join("rings"))?;
    fs::create_dir_all(dir.join("modules"))?;
    for cr in rings(bound, caps)? {
        let rel = format!("rings/{}.json", cr.name);
        let doc = InputDoc { ring: cr.doc.clone(), presentation: None, hom: None, submodule: None };
        fs::write(dir.join(&rel), serde_json::to_string_pretty(&doc)? + "\n")?;
        written.push(rel);
        for m in modules(&cr, caps)? {
            let rel = format!("modules/{}.json", m.name);
            let doc = InputDoc {
                ring: cr.doc.clone(),
                presentation: Some(PresentationDoc::from_presentation(m.module.presentation())),
                hom: None,
                submodule: None,
            };
            fs::write(dir.join(&rel), serde_json::to_string_pretty(&doc)? + "\n")?;
            written.push(rel);
        }
    }
    Ok(written)
}

#[derive(Debug)]
pub enum WriteError {
    Core(Error),
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl From<Error> for WriteError {
    fn from(e: Error) -> Self {
        WriteError::Core(e)
    }
}

impl From<std::io::Error> for WriteError {
    fn from(e: std::io::Error) -> Self {
        WriteError::Io(e)
    }
}

impl From<serde_json::Error> for WriteError {
    fn from(e: serde_json::Error) -> Self {
        WriteError::Json(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        let caps = Caps::default();
        assert_eq!(rings(16, &caps).unwrap().len(), 8);
        let small: Vec<_> = rings(2, &caps).unwrap().into_iter().map(|r| r.name).collect();
        assert_eq!(small, ["z2"]);
        assert!(rings(0, &caps).unwrap().is_empty());
        assert!(matches!(rings(caps.ring + 1, &caps), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn canonical_entries_of_z4() {
        let caps = Caps::default();
        let z4 = &rings(4, &caps).unwrap()[1];
        assert_eq!(canonical_entries(&z4.ring, &caps).unwrap(), [Elem(0), Elem(1), Elem(2)]);
        // Σ 3^{pq} over p ∈ {1,2}, q ∈ {0,1,2}
        assert_eq!(modules(z4, &caps).unwrap().len(), 1 + 3 + 9 + 1 + 9 + 81);
    }

    #[test]
    fn write_is_stable() {
        let caps = Caps::default();
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let wa = write(a.path(), 4, &caps).unwrap();
        let wb = write(b.path(), 4, &caps).unwrap();
        assert_eq!(wa, wb);
        for rel in &wa {
            assert_eq!(fs::read(a.path().join(rel)).unwrap(), fs::read(b.path().join(rel)).unwrap());
        }
        assert!(write(a.path(), 0, &caps).unwrap().is_empty());
    }
}

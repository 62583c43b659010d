use alloc::boxed::Box;
use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A ring axiom fails on the named generator triple.
    #[error("ring axiom `{law}` fails on generators ({}, {}, {})", .at.0, .at.1, .at.2)]
    Axiom { law: &'static str, at: (usize, usize, usize) },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("{what} needs {needed} but the cap is {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u128 },

    #[error("operands live over different rings")]
    MismatchedRings,

    #[error("ring is not local")]
    NotLocal,

    #[error("ideal is not nilpotent")]
    NotNilpotent,

    #[error("flattening ideal is not principal")]
    NotPrincipal,

    #[error("maximal ideal does not annihilate the flattening ideal")]
    NotAnnihilated,

    #[error("module is already free of rank {rank}")]
    AlreadyFree { rank: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A mathematical invariant that must hold did not. Always a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("{stage}: {source}")]
    Stage { stage: &'static str, source: Box<Error> },
}

impl Error {
    /// Wrap with the name of the pipeline stage that failed.
    pub fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage { stage, source: Box::new(self) }
    }

    /// The innermost error, skipping stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    /// Short stable identifier used in structured reports.
    pub fn kind(&self) -> &'static str {
        match self.root() {
            Error::Axiom { .. } => "axiom",
            Error::Malformed(_) => "malformed",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::MismatchedRings => "mismatched_rings",
            Error::NotLocal => "not_local",
            Error::NotNilpotent => "not_nilpotent",
            Error::NotPrincipal => "not_principal",
            Error::NotAnnihilated => "not_annihilated",
            Error::AlreadyFree { .. } => "already_free",
            Error::Precondition(_) => "precondition",
            Error::Internal(_) => "internal",
            Error::Stage { .. } => unreachable!(),
        }
    }
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

pub(crate) fn check_cap(what: &'static str, needed: u128, cap: usize) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::CapExceeded { what, needed, cap: cap as u128 })
    } else {
        Ok(())
    }
}

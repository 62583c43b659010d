/// Bounds on the size of the universe that is enumerated exhaustively.
///
/// The statements verified here are universally quantified; these caps make
/// the verified part explicit instead of hiding it in constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest ring order accepted by `build_ring`.
    pub ring: usize,
    /// Largest ring order for which all ideals are enumerated.
    pub ideal_enum: usize,
    /// Largest number of vectors / candidate tuples scanned by module enumeration.
    pub module_enum: usize,
    /// Largest automorphism group for which a composition table is built.
    pub group: usize,
}

impl Caps {
    pub const DEFAULT_RING: usize = 4096;
    pub const DEFAULT_IDEAL_ENUM: usize = 256;
    pub const DEFAULT_MODULE_ENUM: usize = 1 << 16;
    pub const DEFAULT_GROUP: usize = 1024;
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ring: Self::DEFAULT_RING,
            ideal_enum: Self::DEFAULT_IDEAL_ENUM,
            module_enum: Self::DEFAULT_MODULE_ENUM,
            group: Self::DEFAULT_GROUP,
        }
    }
}

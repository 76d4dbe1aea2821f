/// Resource caps shared by the Gröbner, closure and resolution engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of elements in any Gröbner basis.
    pub max_basis: usize,
    /// Maximum weighted degree of an S-pair.
    pub max_degree: u32,
    /// Maximum group order produced by closure.
    pub max_group: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_basis: 20_000,
            max_degree: 200,
            max_group: 10_000,
        }
    }
}

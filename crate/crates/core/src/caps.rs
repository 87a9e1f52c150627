/// Resource limits shared by the enumerating operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Upper bound on the number of presheaves an enumeration may produce.
    /// The search itself may visit sixteen times as many partial families.
    pub max_presheaves: u128,
    /// Size bound for probe objects in bounded initiality checks.
    pub probe_bound: usize,
    /// Seed for sampled checks.
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_presheaves: 1_000_000,
            probe_bound: 2,
            seed: 0,
        }
    }
}

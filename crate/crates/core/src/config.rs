use std::time::Duration;

/// Size limits for enumeration and search. Overridable through `SIGMA_*` env vars.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Largest order that is fully enumerated.
    pub elements: usize,
    /// Largest order whose full subgroup lattice is computed.
    pub lattice: usize,
    /// Largest order that gets a full multiplication table.
    pub table: usize,
    /// Wall-clock budget for one exact cover solve.
    pub time_budget: Duration,
    /// Largest order for which the exact solver cross-checks formula values.
    pub exact_crosscheck: usize,
    /// Largest number of cosets `|X:N|` for which sigma-star enumerates coset subsets.
    pub coset_subsets: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            elements: 20_000,
            lattice: 10_000,
            table: 8_192,
            time_budget: Duration::from_secs(60),
            exact_crosscheck: 500,
            coset_subsets: 12,
        }
    }
}

impl Caps {
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        let read = |key: &str| {
            std::env::var(key)
                .ok()
                .and_then(|v| v.parse::<usize>().ok())
        };
        if let Some(v) = read("SIGMA_ELEMENT_CAP") {
            caps.elements = v;
        }
        if let Some(v) = read("SIGMA_LATTICE_CAP") {
            caps.lattice = v;
        }
        if let Some(v) = read("SIGMA_TABLE_CAP") {
            caps.table = v;
        }
        if let Some(v) = read("SIGMA_TIME_BUDGET") {
            caps.time_budget = Duration::from_secs(v as u64);
        }
        if let Some(v) = read("SIGMA_EXACT_CROSSCHECK") {
            caps.exact_crosscheck = v;
        }
        caps
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = budget;
        self
    }
}

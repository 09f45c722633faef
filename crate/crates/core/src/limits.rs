//! Configurable resource guards for the enumerators and the oracle.

/// Environment variable that overrides [`Limits::max_nodes`].
pub const MAX_NODES_ENV: &str = "CGG_MAX_NODES";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest m for simple perfect matching enumeration (Catalan growth).
    pub spm_max_m: usize,
    /// Largest m for semi-simple matching enumeration.
    pub semi_simple_max_m: usize,
    /// Largest m for enumerating all odd-order perfect matchings (m! members).
    pub odd_max_m: usize,
    /// Largest m for enumerating every perfect matching ((2m-1)!! members).
    pub perfect_max_m: usize,
    pub blocker_max_m: usize,
    /// Largest m accepted by the transversal oracle by default.
    pub oracle_max_m: usize,
    /// Largest m accepted when `oracle_extended` is set.
    pub oracle_extended_max_m: usize,
    pub oracle_extended: bool,
    /// Node ceiling for one transversal search.
    pub max_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            spm_max_m: 12,
            semi_simple_max_m: 10,
            odd_max_m: 9,
            perfect_max_m: 7,
            blocker_max_m: 16,
            oracle_max_m: 5,
            oracle_extended_max_m: 6,
            oracle_extended: false,
            max_nodes: 1_000_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with `CGG_MAX_NODES` applied when it parses as an integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(MAX_NODES_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.max_nodes = n;
        }
        limits
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn extended_oracle(mut self) -> Self {
        self.oracle_extended = true;
        self
    }

    pub fn oracle_limit(&self) -> usize {
        if self.oracle_extended {
            self.oracle_extended_max_m
        } else {
            self.oracle_max_m
        }
    }
}

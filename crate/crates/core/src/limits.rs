//! Resource ceilings shared by every operation that enumerates pairs or
//! materializes sets.

/// Environment variable that overrides [`Limits::pair_ceiling`].
pub const PAIR_CEILING_ENV: &str = "ENERGY_LAB_CEILING";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `|A|·|B|` an operation may enumerate.
    pub pair_ceiling: u64,
    /// Largest set a generator may produce.
    pub cardinality_ceiling: u64,
    /// Largest support of an intermediate multiplicity table.
    pub support_ceiling: u64,
    /// Largest sieve limit.
    pub sieve_ceiling: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            pair_ceiling: 1_000_000_000,
            cardinality_ceiling: 10_000_000,
            support_ceiling: 50_000_000,
            sieve_ceiling: 100_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with the pair ceiling taken from `ENERGY_LAB_CEILING` when it
    /// parses as a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(PAIR_CEILING_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
        {
            limits.pair_ceiling = v;
        }
        limits
    }

    pub fn check_pairs(&self, what: &'static str, a: usize, b: usize) -> crate::Result<()> {
        let needed = a as u128 * b as u128;
        if needed > self.pair_ceiling as u128 {
            return Err(crate::Error::Ceiling {
                what,
                needed,
                limit: self.pair_ceiling as u128,
                hint: "; raise ENERGY_LAB_CEILING to allow it",
            });
        }
        Ok(())
    }

    pub fn check_cardinality(&self, what: &'static str, n: u128) -> crate::Result<()> {
        if n > self.cardinality_ceiling as u128 {
            return Err(crate::Error::Ceiling {
                what,
                needed: n,
                limit: self.cardinality_ceiling as u128,
                hint: "",
            });
        }
        Ok(())
    }

    pub fn check_support(&self, what: &'static str, n: u128) -> crate::Result<()> {
        if n > self.support_ceiling as u128 {
            return Err(crate::Error::Ceiling {
                what,
                needed: n,
                limit: self.support_ceiling as u128,
                hint: "; use a smaller set or fewer summands",
            });
        }
        Ok(())
    }
}

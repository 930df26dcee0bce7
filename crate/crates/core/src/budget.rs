/// Size caps for the exponential-time operations.
///
/// Everything here is a hard guard, not a heuristic: operations return
/// [`crate::Error::Budget`] instead of starting a search that cannot
/// finish at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Cap on n for lambda_k / coverage / signature computations.
    pub lambda_n: usize,
    /// Cap on n for full maximum-system enumeration.
    pub enum_n: usize,
    /// Cap on n for exhaustive 2^n bipartition sweeps.
    pub sweep_n: usize,
    /// Cap on n(n-1) for exhaustive labeled-digraph enumeration.
    pub exhaustive_bits: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            lambda_n: 14,
            enum_n: 10,
            sweep_n: 12,
            exhaustive_bits: 30,
        }
    }
}

impl Budget {
    /// Defaults overridden by `PPL_BUDGET_N` (lambda cap), and the
    /// fine-grained `PPL_BUDGET_ENUM_N`, `PPL_BUDGET_SWEEP_N`,
    /// `PPL_BUDGET_BITS`. Vertex caps clamp to 24, the widest order
    /// the subset tables represent.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(v) = read_env("PPL_BUDGET_N") {
            b.lambda_n = v.min(24);
        }
        if let Some(v) = read_env("PPL_BUDGET_ENUM_N") {
            b.enum_n = v.min(24);
        }
        if let Some(v) = read_env("PPL_BUDGET_SWEEP_N") {
            b.sweep_n = v.min(24);
        }
        if let Some(v) = read_env("PPL_BUDGET_BITS") {
            b.exhaustive_bits = (v as u32).min(126);
        }
        b
    }

    pub(crate) fn check(&self, what: &'static str, limit: usize, n: usize) -> crate::Result<()> {
        if n > limit {
            Err(crate::Error::Budget {
                what,
                limit,
                got: n,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_lambda(&self, n: usize) -> crate::Result<()> {
        self.check("lambda computation", self.lambda_n, n)
    }

    pub fn check_enum(&self, n: usize) -> crate::Result<()> {
        self.check("maximum-system enumeration", self.enum_n, n)
    }

    pub fn check_sweep(&self, n: usize) -> crate::Result<()> {
        self.check("bipartition sweep", self.sweep_n, n)
    }
}

fn read_env(key: &str) -> Option<usize> {
    std::env::var(key).ok()?.trim().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let b = Budget::default();
        assert_eq!(b.lambda_n, 14);
        assert_eq!(b.enum_n, 10);
        assert_eq!(b.sweep_n, 12);
    }

    #[test]
    fn check_rejects_over_cap() {
        let b = Budget::default();
        assert!(b.check_lambda(14).is_ok());
        assert!(matches!(
            b.check_lambda(15),
            Err(crate::Error::Budget {
                limit: 14,
                got: 15,
                ..
            })
        ));
    }
}

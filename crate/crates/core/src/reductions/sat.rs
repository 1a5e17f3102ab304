use alloc::vec;
use alloc::vec::Vec;

use super::{CnfFormula, ReductionError};

pub const MAX_SAT_VARIABLES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatResult {
    pub satisfiable: bool,
    /// First satisfying assignment in lexicographic order (`false < true`,
    /// variable 1 most significant).
    pub witness: Option<Vec<bool>>,
}

/// Tries every truth assignment.
pub fn sat_bruteforce(f: &CnfFormula) -> Result<SatResult, ReductionError> {
    let n = f.num_vars() as usize;
    if n > MAX_SAT_VARIABLES {
        return Err(ReductionError::TooLarge { size: n, limit: MAX_SAT_VARIABLES });
    }
    let mut assignment = vec![false; n];
    for mask in 0u32..1 << n {
        for (j, a) in assignment.iter_mut().enumerate() {
            *a = mask >> (n - 1 - j) & 1 == 1;
        }
        if f.evaluate(&assignment) {
            return Ok(SatResult { satisfiable: true, witness: Some(assignment) });
        }
    }
    Ok(SatResult { satisfiable: false, witness: None })
}

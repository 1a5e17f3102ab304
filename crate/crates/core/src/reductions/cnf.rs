use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    /// 1-based variable index.
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn from_dimacs(x: i64) -> Option<Self> {
        let var = u32::try_from(x.unsigned_abs()).ok().filter(|&v| v != 0)?;
        Some(Literal { var, positive: x > 0 })
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            i64::from(self.var)
        } else {
            -i64::from(self.var)
        }
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var as usize - 1] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("invalid literal `{0}`")]
    BadLiteral(String),
    #[error("clause {index} has {len} literals, expected 3")]
    ClauseWidth { index: usize, len: usize },
    #[error("variable {var} outside 1..={n}")]
    VariableOutOfRange { var: u32, n: u32 },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
}

/// A 3-CNF formula over variables `1..=num_vars`. Literals may repeat
/// within a clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<[Literal; 3]>) -> Result<Self, CnfError> {
        for c in &clauses {
            if let Some(l) = c.iter().find(|l| l.var > num_vars) {
                return Err(CnfError::VariableOutOfRange { var: l.var, n: num_vars });
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Convenience constructor from DIMACS-style signed integers.
    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[[i64; 3]]) -> Result<Self, CnfError> {
        let mut out = Vec::with_capacity(clauses.len());
        for c in clauses {
            let mut lits = [Literal { var: 1, positive: true }; 3];
            for (slot, &x) in lits.iter_mut().zip(c) {
                *slot = Literal::from_dimacs(x).ok_or_else(|| CnfError::BadLiteral(x.to_string()))?;
            }
            out.push(lits);
        }
        Self::new(num_vars, out)
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }
}

/// Parses DIMACS CNF. Comment lines (`c ...`) are skipped, clauses may span
/// lines and end with `0`, and a lone `%` ends the input.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(CnfError::MalformedHeader(line.to_string()));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", n, m] => n.parse().ok().zip(m.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| CnfError::MalformedHeader(line.to_string()))?);
            continue;
        }
        if header.is_none() {
            return Err(CnfError::MissingHeader);
        }
        for tok in line.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| CnfError::BadLiteral(tok.to_string()))?;
            if x == 0 {
                if current.len() != 3 {
                    return Err(CnfError::ClauseWidth { index: clauses.len() + 1, len: current.len() });
                }
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
            } else {
                current.push(Literal::from_dimacs(x).ok_or_else(|| CnfError::BadLiteral(tok.to_string()))?);
            }
        }
    }
    let (n, m) = header.ok_or(CnfError::MissingHeader)?;
    if !current.is_empty() {
        if current.len() != 3 {
            return Err(CnfError::ClauseWidth { index: clauses.len() + 1, len: current.len() });
        }
        clauses.push([current[0], current[1], current[2]]);
    }
    if clauses.len() != m {
        return Err(CnfError::ClauseCount { declared: m, found: clauses.len() });
    }
    CnfFormula::new(n, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(x: i64) -> Literal {
        Literal::from_dimacs(x).unwrap()
    }

    #[test]
    fn single_clause() {
        let f = parse_dimacs_cnf("p cnf 3 1\n1 -3 2 0\n").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.clauses(), &[[lit(1), lit(-3), lit(2)]]);
    }

    #[test]
    fn comments_multiline_and_terminator() {
        let text = "c example\nc second\np cnf 5 2\n1 -3\n 2 0 3 4\n5 0\n%\n0\n";
        let f = parse_dimacs_cnf(text).unwrap();
        assert_eq!(f.num_vars(), 5);
        assert_eq!(f.clauses().len(), 2);
        assert_eq!(f.clauses()[1], [lit(3), lit(4), lit(5)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_dimacs_cnf("p cnf 2 1\n1 2 0\n"), Err(CnfError::ClauseWidth { index: 1, len: 2 }));
        assert_eq!(parse_dimacs_cnf("1 2 3 0\n"), Err(CnfError::MissingHeader));
        assert!(matches!(parse_dimacs_cnf("p dnf 3 1\n1 2 3 0\n"), Err(CnfError::MalformedHeader(_))));
        assert!(matches!(parse_dimacs_cnf("p cnf 3 1\n1 x 3 0\n"), Err(CnfError::BadLiteral(_))));
        assert_eq!(
            parse_dimacs_cnf("p cnf 2 1\n1 2 3 0\n"),
            Err(CnfError::VariableOutOfRange { var: 3, n: 2 })
        );
        assert_eq!(parse_dimacs_cnf("p cnf 3 2\n1 2 3 0\n"), Err(CnfError::ClauseCount { declared: 2, found: 1 }));
    }

    #[test]
    fn duplicate_literals_accepted() {
        let f = parse_dimacs_cnf("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n").unwrap();
        assert!(!f.evaluate(&[true]) && !f.evaluate(&[false]));
    }
}

//! 3CNF formulas read under not-all-equal semantics, plus a brute-force oracle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest variable count the brute-force oracle will enumerate.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// A signed variable index: `3` is `x3`, `-3` is `not x3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal(pub i32);

impl Literal {
    pub fn var(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn positive(self) -> bool {
        self.0 > 0
    }

    pub fn eval(self, a: &Assignment) -> bool {
        a.value(self.var()) == self.positive()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive() {
            write!(f, "x{}", self.var())
        } else {
            write!(f, "~x{}", self.var())
        }
    }
}

pub type Clause = [Literal; 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaeFormula {
    variable_count: usize,
    clauses: Vec<Clause>,
}

impl NaeFormula {
    pub fn new(variable_count: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        if variable_count == 0 {
            return Err(Error::InvalidFormula("needs at least one variable".into()));
        }
        let mut out = Vec::with_capacity(clauses.len());
        for (ci, c) in clauses.iter().enumerate() {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > variable_count {
                    return Err(Error::InvalidFormula(format!(
                        "clause {} has literal {l} outside 1..={variable_count}",
                        ci + 1
                    )));
                }
            }
            out.push(c.map(Literal));
        }
        Ok(NaeFormula {
            variable_count,
            clauses: out,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Every clause has a true and a false literal.
    pub fn nae_satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses.iter().all(|c| {
            let t = c.iter().filter(|l| l.eval(a)).count();
            t > 0 && t < 3
        })
    }
}

impl fmt::Display for NaeFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({} | {} | {})", c[0], c[1], c[2]))
            .collect();
        write!(f, "{}", parts.join(" & "))
    }
}

/// Truth values for `x1..=xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    /// Value of variable `var` (1-based).
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn complement(&self) -> Assignment {
        Assignment(self.0.iter().map(|b| !b).collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.0.iter().map(|&b| if b { "T" } else { "F" }).collect();
        write!(f, "({})", s.join(","))
    }
}

/// First NAE-satisfying assignment in lexicographic order (F < T, `x1` most
/// significant), or `None`.
pub fn nae_satisfiable_bruteforce(phi: &NaeFormula) -> Result<Option<Assignment>> {
    let n = phi.variable_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyVariables(n, BRUTE_FORCE_LIMIT));
    }
    for bits in 0u32..(1u32 << n) {
        let a = Assignment((0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect());
        if phi.nae_satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Parses DIMACS CNF. Every clause must have exactly three literals.
pub fn parse_dimacs(text: &str) -> Result<NaeFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let f: Vec<&str> = t.split_whitespace().collect();
            if f.len() != 4 || f[1] != "cnf" {
                return Err(Error::Parse {
                    line: line_no,
                    column: 1,
                    message: "expected `p cnf <vars> <clauses>`".into(),
                });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    column: 1,
                    message: format!("bad number {s:?} in header"),
                })
            };
            header = Some((parse(f[2])?, parse(f[3])?));
            continue;
        }
        if header.is_none() {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: "clause before `p cnf` header".into(),
            });
        }
        for tok in t.split_whitespace() {
            let l: i32 = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                column: 1,
                message: format!("bad literal {tok:?}"),
            })?;
            if l == 0 {
                if current.len() != 3 {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: format!("clause has {} literals, expected 3", current.len()),
                    });
                }
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
            } else {
                current.push(l);
            }
        }
    }
    if !current.is_empty() {
        return Err(Error::InvalidFormula("unterminated clause".into()));
    }
    let (vars, count) = header.ok_or(Error::InvalidFormula("missing header".into()))?;
    if count != clauses.len() {
        return Err(Error::InvalidFormula(format!(
            "header declares {count} clauses, found {}",
            clauses.len()
        )));
    }
    NaeFormula::new(vars, clauses)
}

pub fn to_dimacs(phi: &NaeFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.variable_count(), phi.clauses().len());
    for c in phi.clauses() {
        out.push_str(&format!("{} {} {} 0\n", c[0].0, c[1].0, c[2].0));
    }
    out
}

/// The three-clause, four-variable formula used as the running example.
pub fn sample_formula() -> NaeFormula {
    NaeFormula::new(4, vec![[-2, 3, -4], [1, 2, 4], [1, -3, -4]]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_clause_first_witness() {
        let phi = NaeFormula::new(3, vec![[1, 2, 3]]).unwrap();
        let a = nae_satisfiable_bruteforce(&phi).unwrap().unwrap();
        assert_eq!(a, Assignment::new(vec![false, false, true]));
    }

    #[test]
    fn repeated_literal_is_unsat() {
        let phi = NaeFormula::new(1, vec![[1, 1, 1]]).unwrap();
        assert_eq!(nae_satisfiable_bruteforce(&phi).unwrap(), None);
    }

    #[test]
    fn sample_formula_witness() {
        let phi = sample_formula();
        assert!(phi.nae_satisfied_by(&Assignment::new(vec![true, true, true, false])));
        assert!(nae_satisfiable_bruteforce(&phi).unwrap().is_some());
    }

    #[test]
    fn guard_and_validation() {
        let phi = NaeFormula::new(25, vec![[1, 2, 3]]).unwrap();
        assert_eq!(
            nae_satisfiable_bruteforce(&phi),
            Err(Error::TooManyVariables(25, BRUTE_FORCE_LIMIT))
        );
        assert!(NaeFormula::new(2, vec![[1, 2, 3]]).is_err());
        assert!(NaeFormula::new(2, vec![[1, 0, 2]]).is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let phi = sample_formula();
        let text = to_dimacs(&phi);
        assert_eq!(parse_dimacs(&text).unwrap(), phi);
        assert!(parse_dimacs("p cnf 2 1\n1 2 0\n").is_err());
        assert!(parse_dimacs("c comment\np cnf 3 1\n1 -2\n3 0\n").is_ok());
    }
}

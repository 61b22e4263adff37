//! 2CNF formulas for the hexagram reduction.

use serde::{Deserialize, Serialize};

use crate::error::{BttError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: u32,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: u32) -> Self {
        Literal { var, negated: true }
    }

    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var as usize] != self.negated
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Validity {
    /// No repeated clauses, every variable occurs exactly four times and
    /// exactly once negated, and there are `2n` clauses.
    Strict,
    /// Only per-hexagram crown capacity is enforced: at most three negated
    /// and three positive occurrences per variable.
    Relaxed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCnfFormula {
    vars: u32,
    clauses: Vec<[Literal; 2]>,
}

impl TwoCnfFormula {
    pub fn new(vars: u32, clauses: Vec<[Literal; 2]>) -> Result<Self> {
        if let Some(l) = clauses.iter().flatten().find(|l| l.var >= vars) {
            return Err(BttError::input(format!("literal on variable {} but only {vars} variables", l.var)));
        }
        Ok(TwoCnfFormula { vars, clauses })
    }

    /// Parses DIMACS `p cnf V C` text where every clause has two literals.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(u32, usize)> = None;
        let mut clauses = Vec::new();
        let mut pending: Vec<i64> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let perr = |message: String| BttError::Parse { line: idx + 1, message };
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let t: Vec<&str> = line.split_whitespace().collect();
                if t.len() != 4 || t[1] != "cnf" {
                    return Err(perr("header must be `p cnf <vars> <clauses>`".into()));
                }
                let v = t[2].parse().map_err(|_| perr("bad variable count".into()))?;
                let c = t[3].parse().map_err(|_| perr("bad clause count".into()))?;
                header = Some((v, c));
                continue;
            }
            let (vars, _) = header.ok_or_else(|| perr("clause before `p cnf` header".into()))?;
            for tok in line.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| perr(format!("bad literal `{tok}`")))?;
                if lit == 0 {
                    if pending.len() != 2 {
                        return Err(perr(format!("clause has {} literals, expected 2", pending.len())));
                    }
                    let to_lit = |l: i64| -> Result<Literal> {
                        let var = l.unsigned_abs();
                        if var == 0 || var > vars as u64 {
                            return Err(perr(format!("variable {var} out of range")));
                        }
                        Ok(Literal { var: var as u32 - 1, negated: l < 0 })
                    };
                    clauses.push([to_lit(pending[0])?, to_lit(pending[1])?]);
                    pending.clear();
                } else {
                    pending.push(lit);
                }
            }
        }
        let (vars, count) = header.ok_or_else(|| BttError::Parse { line: 0, message: "missing `p cnf` header".into() })?;
        if !pending.is_empty() {
            return Err(BttError::Parse { line: 0, message: "last clause is not terminated by 0".into() });
        }
        if clauses.len() != count {
            return Err(BttError::Parse {
                line: 0,
                message: format!("header announces {count} clauses, found {}", clauses.len()),
            });
        }
        TwoCnfFormula::new(vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            let lit = |l: &Literal| if l.negated { -(l.var as i64 + 1) } else { l.var as i64 + 1 };
            out.push_str(&format!("{} {} 0\n", lit(&c[0]), lit(&c[1])));
        }
        out
    }

    pub fn var_count(&self) -> u32 {
        self.vars
    }

    pub fn clauses(&self) -> &[[Literal; 2]] {
        &self.clauses
    }

    /// Checks the conditions of `mode`, naming the first violated one.
    pub fn validate(&self, mode: Validity) -> Result<()> {
        let mut pos = vec![0usize; self.vars as usize];
        let mut neg = vec![0usize; self.vars as usize];
        for l in self.clauses.iter().flatten() {
            if l.negated {
                neg[l.var as usize] += 1;
            } else {
                pos[l.var as usize] += 1;
            }
        }
        for v in 0..self.vars as usize {
            if neg[v] > 3 || pos[v] > 3 {
                return Err(BttError::input(format!(
                    "variable {} has {} negated and {} positive occurrences; a hexagram hosts at most 3 of each",
                    v + 1,
                    neg[v],
                    pos[v]
                )));
            }
        }
        if mode == Validity::Relaxed {
            return Ok(());
        }
        if self.clauses.len() != 2 * self.vars as usize {
            return Err(BttError::input(format!(
                "clause count {} differs from twice the variable count {}",
                self.clauses.len(),
                2 * self.vars
            )));
        }
        for v in 0..self.vars as usize {
            if neg[v] != 1 || pos[v] != 3 {
                return Err(BttError::input(format!(
                    "variable {} must occur exactly four times with one negation (has {} negated, {} positive)",
                    v + 1,
                    neg[v],
                    pos[v]
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for c in &self.clauses {
            let key = if (c[0].var, c[0].negated) <= (c[1].var, c[1].negated) { (c[0], c[1]) } else { (c[1], c[0]) };
            if !seen.insert(key) {
                return Err(BttError::input("repeated clause".to_string()));
            }
        }
        Ok(())
    }

    pub fn unsatisfied(&self, assignment: &[bool]) -> usize {
        self.clauses.iter().filter(|c| !c[0].holds(assignment) && !c[1].holds(assignment)).count()
    }

    /// Minimum number of unsatisfied clauses with a witness, by enumerating
    /// all assignments (at most 20 variables).
    pub fn min_unsatisfied(&self) -> Result<(usize, Vec<bool>)> {
        if self.vars > 20 {
            return Err(BttError::Capacity(format!("{} variables exceed the 20-variable enumeration bound", self.vars)));
        }
        let n = self.vars as usize;
        let mut best = (usize::MAX, vec![false; n]);
        for mask in 0u32..(1u32 << n) {
            let a: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let u = self.unsatisfied(&a);
            if u < best.0 {
                best = (u, a);
            }
        }
        Ok(best)
    }
}

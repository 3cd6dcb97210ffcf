//! Hard instances from 3-SAT.
//!
//! For a formula with `n` variables, `m` clauses and `γ ≥ 2`, [`reduce`]
//! builds a link stream over `T = [0, (m+1)γ - 1]` whose maximum γ-matching
//! reaches `(2m+1)n + m` exactly when the formula is satisfiable.
//!
//! Per variable `x` there is a spine `x= – x+`, `x= – x-` active at every
//! instant, and per clause index `j` two gadget edges `x+ – x++j`,
//! `x- – x--j` active on `[jγ+1, (j+1)γ]`. The clause vertex `c` is linked
//! to `x++j` (resp. `x--j`) on the same window when `x` occurs positively
//! (resp. negatively) in clause `j`.

use std::collections::BTreeSet;
use std::fmt;
use std::io::BufRead;

use crate::error::{check_gamma, Error, Result};
use crate::stream::{GammaEdge, GammaMatching, LinkStream, Time};

/// A signed variable occurrence; variables are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: u32) -> Self {
        Literal { var, positive: false }
    }

    fn from_dimacs(x: i64) -> Self {
        Literal {
            var: x.unsigned_abs() as u32,
            positive: x > 0,
        }
    }

    fn satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment[self.var as usize - 1] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

/// A CNF formula whose clauses have 1 to 3 literals over distinct variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: u32,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(variable_count: u32, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            if clause.is_empty() || clause.len() > 3 {
                return Err(Error::InvalidFormula(format!(
                    "clause {j} has {} literals, expected 1 to 3",
                    clause.len()
                )));
            }
            let mut seen = BTreeSet::new();
            for lit in clause {
                if lit.var == 0 || lit.var > variable_count {
                    return Err(Error::InvalidFormula(format!(
                        "clause {j} uses variable {} outside 1..={variable_count}",
                        lit.var
                    )));
                }
                if !seen.insert(lit.var) {
                    return Err(Error::InvalidFormula(format!(
                        "clause {j} contains variable {} twice",
                        lit.var
                    )));
                }
            }
        }
        Ok(CnfFormula {
            variable_count,
            clauses,
        })
    }

    /// Reads DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>`
    /// header, then 0-terminated clauses. A `%` line ends the body.
    pub fn from_dimacs(reader: impl BufRead) -> Result<Self> {
        let mut header: Option<(u32, usize)> = None;
        let mut clauses = Vec::new();
        let mut clause = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            if trimmed.starts_with('%') {
                break;
            }
            let parse_err = |message: String| Error::Parse {
                line: lineno,
                message,
            };
            if trimmed.starts_with('p') {
                let parts: Vec<&str> = trimmed.split_whitespace().collect();
                match parts.as_slice() {
                    ["p", "cnf", n, m] => {
                        let n = n.parse().map_err(|_| parse_err(format!("bad variable count `{n}`")))?;
                        let m = m.parse().map_err(|_| parse_err(format!("bad clause count `{m}`")))?;
                        header = Some((n, m));
                    }
                    _ => return Err(parse_err(format!("bad problem line `{trimmed}`"))),
                }
                continue;
            }
            if header.is_none() {
                return Err(parse_err("clause before `p cnf` line".into()));
            }
            for tok in trimmed.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| parse_err(format!("bad literal `{tok}`")))?;
                if x == 0 {
                    clauses.push(std::mem::take(&mut clause));
                } else {
                    clause.push(Literal::from_dimacs(x));
                }
            }
        }
        let (n, m) = header.ok_or_else(|| Error::InvalidFormula("missing `p cnf` line".into()))?;
        if !clause.is_empty() {
            clauses.push(clause);
        }
        if clauses.len() != m {
            return Err(Error::InvalidFormula(format!(
                "header announces {m} clauses, found {}",
                clauses.len()
            )));
        }
        CnfFormula::new(n, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let v = lit.var as i64;
                out.push_str(&format!("{} ", if lit.positive { v } else { -v }));
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn variable_count(&self) -> u32 {
        self.variable_count
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    /// `assignment[i]` is the value of variable `i + 1`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.variable_count as usize
            && self
                .clauses
                .iter()
                .all(|c| c.iter().any(|l| l.satisfied_by(assignment)))
    }

    /// First satisfying assignment in truth-table order, if any.
    pub fn solve_by_truth_table(&self) -> Option<Vec<bool>> {
        let n = self.variable_count as usize;
        assert!(n < 32, "truth table too large");
        (0u64..1 << n)
            .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.is_satisfied_by(a))
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, clause) in self.clauses.iter().enumerate() {
            if j > 0 {
                f.write_str(" ∧ ")?;
            }
            f.write_str("(")?;
            for (i, lit) in clause.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ∨ ")?;
                }
                write!(f, "{lit}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Named vertices of the construction. Variables are 1-based, clause
/// indices 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetVertex {
    Minus(u32),
    Equal(u32),
    Plus(u32),
    PlusPlus(u32, usize),
    MinusMinus(u32, usize),
    Clause,
}

impl GadgetVertex {
    pub fn name(&self) -> String {
        match self {
            GadgetVertex::Minus(x) => format!("x{x}-"),
            GadgetVertex::Equal(x) => format!("x{x}="),
            GadgetVertex::Plus(x) => format!("x{x}+"),
            GadgetVertex::PlusPlus(x, j) => format!("x{x}++{j}"),
            GadgetVertex::MinusMinus(x, j) => format!("x{x}--{j}"),
            GadgetVertex::Clause => "c".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub formula: CnfFormula,
    pub stream: LinkStream,
    pub gamma: u64,
    /// `(2m+1)n + m`.
    pub target: usize,
}

impl ReductionInstance {
    pub fn gamma_edge(&self, start: Time, a: GadgetVertex, b: GadgetVertex) -> GammaEdge {
        self.stream
            .gamma_edge(start, &a.name(), &b.name(), self.gamma)
            .expect("gadget vertices exist in the reduction stream")
    }
}

pub fn reduce(formula: &CnfFormula, gamma: u64) -> Result<ReductionInstance> {
    check_gamma(gamma, 2)?;
    let n = formula.variable_count();
    let m = formula.clause_count();
    let horizon = (m as u64 + 1) * gamma;
    let window = |j: usize| (j as u64 * gamma + 1)..=((j as u64 + 1) * gamma);

    let mut b = LinkStream::builder()
        .interval(0, horizon - 1)
        .vertex(GadgetVertex::Clause.name());
    for x in 1..=n {
        let (minus, equal, plus) = (
            GadgetVertex::Minus(x).name(),
            GadgetVertex::Equal(x).name(),
            GadgetVertex::Plus(x).name(),
        );
        for t in 0..horizon {
            b.add_edge(t, equal.clone(), plus.clone());
            b.add_edge(t, equal.clone(), minus.clone());
        }
        for j in 0..m {
            let pp = GadgetVertex::PlusPlus(x, j).name();
            let mm = GadgetVertex::MinusMinus(x, j).name();
            for t in window(j) {
                b.add_edge(t, plus.clone(), pp.clone());
                b.add_edge(t, minus.clone(), mm.clone());
            }
            b.add_vertex(pp);
            b.add_vertex(mm);
        }
        b.add_vertex(minus);
        b.add_vertex(equal);
        b.add_vertex(plus);
    }
    let c = GadgetVertex::Clause.name();
    for (j, clause) in formula.clauses().iter().enumerate() {
        for lit in clause {
            let gadget = if lit.positive {
                GadgetVertex::PlusPlus(lit.var, j)
            } else {
                GadgetVertex::MinusMinus(lit.var, j)
            };
            let name = gadget.name();
            for t in window(j) {
                b.add_edge(t, c.clone(), name.clone());
            }
        }
    }
    Ok(ReductionInstance {
        formula: formula.clone(),
        stream: b.build()?,
        gamma,
        target: (2 * m + 1) * n as usize + m,
    })
}

/// The γ-matching of size `(2m+1)n + m` induced by a satisfying assignment.
/// Each clause is witnessed by its lowest-index satisfied literal.
pub fn assignment_to_matching(instance: &ReductionInstance, assignment: &[bool]) -> Result<GammaMatching> {
    let formula = &instance.formula;
    if !formula.is_satisfied_by(assignment) {
        return Err(Error::UnsatisfyingAssignment);
    }
    let gamma = instance.gamma;
    let m = formula.clause_count();
    let mut members = Vec::with_capacity(instance.target);
    for x in 1..=formula.variable_count() {
        let value = assignment[x as usize - 1];
        let (spine, free) = if value {
            (GadgetVertex::Plus(x), GadgetVertex::Minus(x))
        } else {
            (GadgetVertex::Minus(x), GadgetVertex::Plus(x))
        };
        for j in 0..=m {
            members.push(instance.gamma_edge(j as u64 * gamma, GadgetVertex::Equal(x), spine));
        }
        for j in 0..m {
            let gadget = if value {
                GadgetVertex::MinusMinus(x, j)
            } else {
                GadgetVertex::PlusPlus(x, j)
            };
            members.push(instance.gamma_edge(j as u64 * gamma + 1, free, gadget));
        }
    }
    for (j, clause) in formula.clauses().iter().enumerate() {
        let lit = clause
            .iter()
            .filter(|l| l.satisfied_by(assignment))
            .min_by_key(|l| l.var)
            .expect("clause satisfied");
        let witness = if lit.positive {
            GadgetVertex::PlusPlus(lit.var, j)
        } else {
            GadgetVertex::MinusMinus(lit.var, j)
        };
        members.push(instance.gamma_edge(j as u64 * gamma + 1, GadgetVertex::Clause, witness));
    }
    GammaMatching::from_edges(gamma, members)
}

use std::fmt::Write as _;

use super::LpError;
use crate::rational::Rational;

/// Index of a variable inside a [`LinearProgram`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(VarId, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn activity(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::ZERO;
        for (var, coef) in &self.terms {
            acc += coef * &point[var.0];
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    pub sense: Sense,
    pub terms: Vec<(VarId, Rational)>,
}

impl Objective {
    pub fn value(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::ZERO;
        for (var, coef) in &self.terms {
            acc += coef * &point[var.0];
        }
        acc
    }
}

/// A linear program over exact rationals with sparse rows and optional
/// variable bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearProgram {
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
    objective: Option<Objective>,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_variable(
        &mut self,
        name: impl Into<String>,
        lower: Option<Rational>,
        upper: Option<Rational>,
    ) -> VarId {
        self.variables.push(Variable {
            name: name.into(),
            lower,
            upper,
        });
        VarId(self.variables.len() - 1)
    }

    /// Appends a row and returns its index. Repeated variables are summed when
    /// the program is solved.
    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(VarId, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) -> usize {
        self.constraints.push(Constraint {
            name: name.into(),
            terms,
            relation,
            rhs,
        });
        self.constraints.len() - 1
    }

    pub fn set_objective(&mut self, sense: Sense, terms: Vec<(VarId, Rational)>) {
        self.objective = Some(Objective { sense, terms });
    }

    pub fn clear_objective(&mut self) {
        self.objective = None;
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable(&self, id: VarId) -> &Variable {
        &self.variables[id.0]
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> Option<&Objective> {
        self.objective.as_ref()
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Checks variable references and bound consistency.
    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.variables.len();
        for (idx, var) in self.variables.iter().enumerate() {
            if let (Some(lo), Some(hi)) = (&var.lower, &var.upper) {
                if lo > hi {
                    return Err(LpError::EmptyBounds {
                        variable: var.name.clone(),
                        index: idx,
                    });
                }
            }
        }
        let check = |terms: &[(VarId, Rational)], row: Option<usize>| {
            for (var, _) in terms {
                if var.0 >= n {
                    return Err(LpError::UnknownVariable {
                        row,
                        index: var.0,
                    });
                }
            }
            Ok(())
        };
        for (idx, row) in self.constraints.iter().enumerate() {
            check(&row.terms, Some(idx))?;
        }
        if let Some(obj) = &self.objective {
            check(&obj.terms, None)?;
        }
        Ok(())
    }

    /// Index of the first row or bound violated by `point`, if any.
    pub fn first_violation(&self, point: &[Rational]) -> Option<Violated> {
        if point.len() != self.variables.len() {
            return Some(Violated::Length);
        }
        for (idx, var) in self.variables.iter().enumerate() {
            let x = &point[idx];
            if var.lower.as_ref().is_some_and(|lo| x < lo)
                || var.upper.as_ref().is_some_and(|hi| x > hi)
            {
                return Some(Violated::Bound(idx));
            }
        }
        self.constraints
            .iter()
            .position(|row| !row.relation.holds(&row.activity(point), &row.rhs))
            .map(Violated::Row)
    }

    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        self.first_violation(point).is_none()
    }

    /// Renders the program in CPLEX LP text format. Coefficients are printed
    /// as decimal approximations; the dump is for cross-checking only.
    pub fn to_lp_format(&self) -> String {
        let mut out = String::new();
        let name = |v: VarId| sanitize(&self.variables[v.0].name, v.0);
        let write_terms = |out: &mut String, terms: &[(VarId, Rational)]| {
            if terms.is_empty() {
                out.push_str(" 0 ");
                out.push_str(&name(VarId(0)));
                return;
            }
            for (var, coef) in terms {
                let c = decimal(coef);
                match c.strip_prefix('-') {
                    Some(abs) => {
                        let _ = write!(out, " - {} {}", abs, name(*var));
                    }
                    None => {
                        let _ = write!(out, " + {} {}", c, name(*var));
                    }
                }
            }
        };
        match &self.objective {
            Some(obj) => {
                out.push_str(match obj.sense {
                    Sense::Maximize => "Maximize\n obj:",
                    Sense::Minimize => "Minimize\n obj:",
                });
                write_terms(&mut out, &obj.terms);
                out.push('\n');
            }
            None => out.push_str("Minimize\n obj:\n"),
        }
        out.push_str("Subject To\n");
        for (idx, row) in self.constraints.iter().enumerate() {
            let _ = write!(out, " r{idx}:");
            write_terms(&mut out, &row.terms);
            let _ = writeln!(out, " {} {}", row.relation.symbol(), decimal(&row.rhs));
        }
        out.push_str("Bounds\n");
        for (idx, var) in self.variables.iter().enumerate() {
            let n = sanitize(&var.name, idx);
            match (&var.lower, &var.upper) {
                (None, None) => {
                    let _ = writeln!(out, " {n} free");
                }
                (Some(lo), Some(hi)) => {
                    let _ = writeln!(out, " {} <= {n} <= {}", decimal(lo), decimal(hi));
                }
                (Some(lo), None) => {
                    let _ = writeln!(out, " {n} >= {}", decimal(lo));
                }
                (None, Some(hi)) => {
                    let _ = writeln!(out, " -inf <= {n} <= {}", decimal(hi));
                }
            }
        }
        out.push_str("End\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violated {
    Length,
    Bound(usize),
    Row(usize),
}

fn decimal(value: &Rational) -> String {
    if value.denominator().is_one() {
        value.to_string()
    } else {
        format!("{:e}", value.to_f64().value())
    }
}

fn sanitize(name: &str, idx: usize) -> String {
    let clean: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect();
    if clean.is_empty() || clean.starts_with(|c: char| c.is_ascii_digit()) {
        format!("x{idx}_{clean}")
    } else {
        clean
    }
}

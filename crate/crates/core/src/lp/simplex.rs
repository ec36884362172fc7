//! Dense dictionary simplex for `max c.x + c0` subject to `A x <= b`,
//! `x >= 0`.
//!
//! Rows are stored densely but pivots only touch nonzero entries, which keeps
//! the sparse constraint systems built elsewhere in the crate cheap.

use super::LpError;
use crate::rational::{is_negative, is_positive, Rational};

/// Problem in inequality standard form; rows are sparse `(column, coef)`.
pub(crate) struct StandardForm {
    pub columns: usize,
    pub rows: Vec<Vec<(usize, Rational)>>,
    pub rhs: Vec<Rational>,
    pub cost: Vec<Rational>,
}

pub(crate) enum SimplexResult {
    Optimal(Vec<Rational>),
    Infeasible,
    /// A feasible point and a direction of unbounded improvement.
    Unbounded(Vec<Rational>, Vec<Rational>),
}

/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 50;

struct Dictionary {
    /// `basic[i] = rhs[i] + sum_j rows[i][j] * nonbasic[j]`.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    blocked: Vec<bool>,
    /// Objective rows `z = constant + sum_j coefs[j] * nonbasic[j]`; index 0
    /// is the phase-one objective.
    objectives: [(Vec<Rational>, Rational); 2],
    pivots: usize,
    limit: usize,
}

enum Step {
    Optimal,
    Unbounded(usize),
}

impl Dictionary {
    fn pivot(&mut self, r: usize, j: usize) -> Result<(), LpError> {
        self.pivots += 1;
        if self.pivots > self.limit {
            return Err(LpError::IterationLimit { limit: self.limit });
        }
        let mut prow = std::mem::take(&mut self.rows[r]);
        let inv = Rational::ONE / &prow[j];
        let neg_inv = -inv.clone();
        for (k, entry) in prow.iter_mut().enumerate() {
            if k == j {
                *entry = inv.clone();
            } else if !entry.is_zero() {
                *entry = &*entry * &neg_inv;
            }
        }
        let prhs = &self.rhs[r] * &neg_inv;
        let support: Vec<usize> = (0..prow.len()).filter(|&k| !prow[k].is_zero()).collect();

        let eliminate = |row: &mut Vec<Rational>, constant: &mut Rational| {
            if row[j].is_zero() {
                return;
            }
            let f = std::mem::replace(&mut row[j], Rational::ZERO);
            for &k in &support {
                row[k] += &f * &prow[k];
            }
            if !prhs.is_zero() {
                *constant += &f * &prhs;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row, &mut self.rhs[i]);
            }
        }
        for (coefs, constant) in self.objectives.iter_mut() {
            eliminate(coefs, constant);
        }

        self.rows[r] = prow;
        self.rhs[r] = prhs;
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[j]);
        Ok(())
    }

    fn entering(&self, objective: usize, bland: bool) -> Option<usize> {
        let coefs = &self.objectives[objective].0;
        let mut best: Option<usize> = None;
        for (j, c) in coefs.iter().enumerate() {
            if self.blocked[j] || !is_positive(c) {
                continue;
            }
            best = match best {
                None => Some(j),
                Some(b) => {
                    let better = if bland {
                        self.nonbasic[j] < self.nonbasic[b]
                    } else {
                        c > &coefs[b] || (c == &coefs[b] && self.nonbasic[j] < self.nonbasic[b])
                    };
                    Some(if better { j } else { b })
                }
            };
        }
        best
    }

    /// Minimum-ratio row for entering column `j`, ties to the lowest label.
    fn leaving(&self, j: usize) -> Option<(usize, Rational)> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let d = &row[j];
            if !is_negative(d) {
                continue;
            }
            let ratio = &self.rhs[i] / &-d;
            let better = match &best {
                None => true,
                Some((b, r)) => ratio < *r || (ratio == *r && self.basic[i] < self.basic[*b]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best
    }

    fn run(&mut self, objective: usize) -> Result<Step, LpError> {
        let mut streak = 0usize;
        loop {
            let bland = streak >= DEGENERATE_STREAK;
            let Some(j) = self.entering(objective, bland) else {
                return Ok(Step::Optimal);
            };
            let Some((r, ratio)) = self.leaving(j) else {
                return Ok(Step::Unbounded(j));
            };
            if ratio.is_zero() {
                streak += 1;
            } else {
                streak = 0;
            }
            self.pivot(r, j)?;
        }
    }

    fn point(&self, columns: usize) -> Vec<Rational> {
        let mut x = vec![Rational::ZERO; columns];
        for (i, &label) in self.basic.iter().enumerate() {
            if label < columns {
                x[label] = self.rhs[i].clone();
            }
        }
        x
    }
}

pub(crate) fn solve_standard(form: &StandardForm, limit: usize) -> Result<(SimplexResult, usize), LpError> {
    let m = form.rows.len();
    let n = form.columns;
    // column n is reserved for the phase-one auxiliary variable
    let width = n + 1;
    let artificial = n + m;
    let mut rows = Vec::with_capacity(m);
    for row in &form.rows {
        let mut dense = vec![Rational::ZERO; width];
        for (col, coef) in row {
            dense[*col] -= coef;
        }
        rows.push(dense);
    }
    let mut cost = vec![Rational::ZERO; width];
    for (j, c) in form.cost.iter().enumerate() {
        cost[j] = c.clone();
    }
    let mut dict = Dictionary {
        rows,
        rhs: form.rhs.clone(),
        basic: (n..n + m).collect(),
        nonbasic: (0..n).chain([artificial]).collect(),
        blocked: (0..width).map(|j| j == n).collect(),
        objectives: [
            (vec![Rational::ZERO; width], Rational::ZERO),
            (cost, Rational::ZERO),
        ],
        pivots: 0,
        limit,
    };

    let worst = (0..m)
        .filter(|&i| dict.rhs[i] < Rational::ZERO)
        .min_by(|&a, &b| dict.rhs[a].cmp(&dict.rhs[b]).then(a.cmp(&b)));
    if let Some(start) = worst {
        for i in 0..m {
            if dict.rhs[i] < Rational::ZERO {
                dict.rows[i][n] = Rational::ONE;
            }
        }
        dict.objectives[0].0[n] = Rational::NEG_ONE;
        dict.blocked[n] = false;
        dict.pivot(start, n)?;
        match dict.run(0)? {
            Step::Optimal => {}
            Step::Unbounded(_) => unreachable!("phase-one objective is bounded by zero"),
        }
        if dict.objectives[0].1 < Rational::ZERO {
            return Ok((SimplexResult::Infeasible, dict.pivots));
        }
        if let Some(r) = dict.basic.iter().position(|&b| b == artificial) {
            match (0..width).find(|&k| !dict.rows[r][k].is_zero()) {
                Some(k) => dict.pivot(r, k)?,
                None => {
                    dict.rows.remove(r);
                    dict.rhs.remove(r);
                    dict.basic.remove(r);
                }
            }
        }
        // a removed all-zero row takes the auxiliary variable with it
        if let Some(col) = dict.nonbasic.iter().position(|&l| l == artificial) {
            dict.blocked[col] = true;
            for row in dict.rows.iter_mut() {
                row[col] = Rational::ZERO;
            }
            dict.objectives[1].0[col] = Rational::ZERO;
        }
    }

    match dict.run(1)? {
        Step::Optimal => Ok((SimplexResult::Optimal(dict.point(n)), dict.pivots)),
        Step::Unbounded(j) => {
            let point = dict.point(n);
            let mut ray = vec![Rational::ZERO; n];
            if dict.nonbasic[j] < n {
                ray[dict.nonbasic[j]] = Rational::ONE;
            }
            for (i, &label) in dict.basic.iter().enumerate() {
                if label < n {
                    ray[label] = dict.rows[i][j].clone();
                }
            }
            Ok((SimplexResult::Unbounded(point, ray), dict.pivots))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn form(columns: usize, rows: Vec<(Vec<i64>, i64)>, cost: Vec<i64>) -> StandardForm {
        StandardForm {
            columns,
            rows: rows
                .iter()
                .map(|(coefs, _)| {
                    coefs
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(j, &c)| (j, int(c)))
                        .collect()
                })
                .collect(),
            rhs: rows.iter().map(|(_, b)| int(*b)).collect(),
            cost: cost.into_iter().map(int).collect(),
        }
    }

    #[test]
    fn textbook_optimum() {
        // max 2x + 3y, 2x + y <= 18, 6x + 5y <= 60, 2x + 5y <= 40
        let f = form(
            2,
            vec![(vec![2, 1], 18), (vec![6, 5], 60), (vec![2, 5], 40)],
            vec![2, 3],
        );
        match solve_standard(&f, 100).unwrap().0 {
            SimplexResult::Optimal(x) => assert_eq!(x, vec![int(5), int(6)]),
            _ => panic!("expected optimum"),
        }
    }

    #[test]
    fn phase_one_detects_infeasibility() {
        // x >= 1 and x <= 0
        let f = form(1, vec![(vec![-1], -1), (vec![1], 0)], vec![0]);
        assert!(matches!(
            solve_standard(&f, 100).unwrap().0,
            SimplexResult::Infeasible
        ));
    }

    #[test]
    fn unbounded_ray_improves() {
        // max x + y, x - y <= 1
        let f = form(2, vec![(vec![1, -1], 1)], vec![1, 1]);
        match solve_standard(&f, 100).unwrap().0 {
            SimplexResult::Unbounded(_, ray) => {
                assert!(ray[0] >= int(0) && ray[1] >= int(0));
                assert!(&ray[0] - &ray[1] <= int(0));
                assert!(&ray[0] + &ray[1] > int(0));
            }
            _ => panic!("expected unbounded"),
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = form(
            2,
            vec![(vec![2, 1], 18), (vec![6, 5], 60), (vec![2, 5], 40)],
            vec![2, 3],
        );
        assert!(matches!(
            solve_standard(&f, 1),
            Err(LpError::IterationLimit { limit: 1 })
        ));
    }
}

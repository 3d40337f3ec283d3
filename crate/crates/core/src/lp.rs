//! Exact rational simplex for small dense linear programs.
//!
//! Solves `max c·x  s.t.  A x = b, x >= 0` with a two-phase full-tableau
//! simplex using Bland's rule, so termination is guaranteed and infeasibility
//! verdicts are exact (no tolerances). Problem sizes in this crate are tiny
//! (tens of rows, at most a few thousand columns), so a dense tableau over
//! `BigRational` is the simplest correct choice.

use num_traits::{Signed, Zero};

use crate::algebra::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rational>, value: Rational },
}

/// Maximizes `obj . x` over `{ x >= 0 : a x = b }`.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], obj: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = if m > 0 { a[0].len() } else { obj.len() };
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);
    debug_assert_eq!(obj.len(), n);

    if m == 0 {
        // Only x >= 0. Unbounded along any coordinate with positive cost.
        if obj.iter().any(|c| c.is_positive()) {
            return LpOutcome::Unbounded;
        }
        return LpOutcome::Optimal {
            x: vec![Rational::zero(); n],
            value: Rational::zero(),
        };
    }

    let mut t = Tableau::new(a, b, n);
    if !t.phase_one() {
        return LpOutcome::Infeasible;
    }
    t.phase_two(obj)
}

/// Finds any feasible point of `{ x >= 0 : a x = b }`.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = if a.is_empty() { 0 } else { a[0].len() };
    match maximize(a, b, &vec![Rational::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

struct Tableau {
    /// `rows` of `n + m_art + 1` entries; last entry is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Number of structural (non-artificial) columns.
    n: usize,
    /// Total columns (structural + artificial).
    ncols: usize,
}

impl Tableau {
    fn new(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Tableau {
        let m = a.len();
        let ncols = n + m;
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let mut row: Vec<Rational> = Vec::with_capacity(ncols + 1);
            let flip = b[i].is_negative();
            for j in 0..n {
                row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
            }
            for k in 0..m {
                row.push(if k == i { Rational::from_integer(1.into()) } else { Rational::zero() });
            }
            row.push(if flip { -b[i].clone() } else { b[i].clone() });
            rows.push(row);
        }
        let basis = (n..n + m).collect();
        Tableau { rows, basis, n, ncols }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let pivot = self.rows[r][c].clone();
        debug_assert!(!pivot.is_zero());
        for e in self.rows[r].iter_mut() {
            *e /= &pivot;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                *e -= &factor * p;
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations minimizing the objective encoded in `cost`
    /// (reduced-cost row over all columns, plus the negated objective value in
    /// the last slot). Bland's rule: entering = lowest-index column with a
    /// negative reduced cost, leaving = lowest basis index among ratio ties.
    /// Columns in `banned` never enter. Returns false on unboundedness.
    fn iterate(&mut self, cost: &mut Vec<Rational>, banned_from: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..banned_from {
                if cost[j].is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rows[i][self.ncols] / &self.rows[i][c];
                    let better = match &leaving {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leaving else { return false };
            self.pivot(r, c);
            // Update the cost row with the same elimination.
            let factor = cost[c].clone();
            if !factor.is_zero() {
                let pivot_row = self.rows[r].clone();
                for (e, p) in cost.iter_mut().zip(&pivot_row) {
                    *e -= &factor * p;
                }
            }
        }
    }

    /// Phase one: minimize the sum of artificial variables. Returns true when
    /// the original constraints are feasible; afterwards no artificial
    /// variable is basic and all redundant rows have been removed.
    fn phase_one(&mut self) -> bool {
        let mut cost: Vec<Rational> = vec![Rational::zero(); self.ncols + 1];
        for j in self.n..self.ncols {
            cost[j] = Rational::from_integer(1.into());
        }
        // Price out the artificial basis.
        for i in 0..self.rows.len() {
            let row = self.rows[i].clone();
            for (e, p) in cost.iter_mut().zip(&row) {
                *e -= p;
            }
        }
        let bounded = self.iterate(&mut cost, self.ncols);
        debug_assert!(bounded, "phase-one objective is bounded below by zero");
        // Objective value is -cost[last].
        if !cost[self.ncols].is_zero() {
            return false;
        }
        // Drive remaining artificials out of the basis (their value is zero).
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.n {
                let mut pivot_col = None;
                for j in 0..self.n {
                    if !self.rows[i][j].is_zero() {
                        pivot_col = Some(j);
                        break;
                    }
                }
                match pivot_col {
                    Some(j) => {
                        self.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        // Redundant constraint.
                        self.rows.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        true
    }

    fn phase_two(&mut self, obj: &[Rational]) -> LpOutcome {
        // Minimize -obj.
        let mut cost: Vec<Rational> = vec![Rational::zero(); self.ncols + 1];
        for j in 0..self.n {
            cost[j] = -obj[j].clone();
        }
        // Price out the current basis.
        for i in 0..self.rows.len() {
            let factor = cost[self.basis[i]].clone();
            if !factor.is_zero() {
                let row = self.rows[i].clone();
                for (e, p) in cost.iter_mut().zip(&row) {
                    *e -= &factor * p;
                }
            }
        }
        // Artificial columns (>= n) are banned from entering.
        if !self.iterate(&mut cost, self.n) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); self.n];
        for (i, &bj) in self.basis.iter().enumerate() {
            debug_assert!(bj < self.n);
            if bj < self.n {
                x[bj] = self.rows[i][self.ncols].clone();
            }
        }
        // The cost row's last slot carries the negated value of the minimized
        // objective -obj, which is exactly the maximized value of obj.
        let value = cost[self.ncols].clone();
        LpOutcome::Optimal { x, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};

    fn r(v: i64) -> Rational {
        rat_int(v)
    }

    fn rows(data: &[&[i64]]) -> Vec<Vec<Rational>> {
        data.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect()
    }

    #[test]
    fn maximizes_with_slacks() {
        // max x + 2y  s.t. x + y + s1 = 4, 2x + y + s2 = 6 -> x=0, y=4, value 8.
        let a = rows(&[&[1, 1, 1, 0], &[2, 1, 0, 1]]);
        let b = vec![r(4), r(6)];
        let obj = vec![r(1), r(2), r(0), r(0)];
        match maximize(&a, &b, &obj) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, r(8));
                assert_eq!(x[0], r(0));
                assert_eq!(x[1], r(4));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        // x + y = -1 with x, y >= 0 is written with b >= 0 internally; use
        // x + y = 2 and x + y = 3 which contradict.
        let a = rows(&[&[1, 1], &[1, 1]]);
        let b = vec![r(2), r(3)];
        assert_eq!(maximize(&a, &b, &[r(0), r(0)]), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        // max x - y s.t. x - y = 0: x = y = t, objective 0... bounded.
        // max x + y s.t. x - y = 0: objective 2t, unbounded.
        let a = rows(&[&[1, -1]]);
        let b = vec![r(0)];
        assert_eq!(maximize(&a, &b, &[r(1), r(1)]), LpOutcome::Unbounded);
        match maximize(&a, &b, &[r(1), r(-1)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, r(0)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn handles_negative_rhs() {
        // -x = -3 -> x = 3.
        let a = rows(&[&[-1]]);
        let b = vec![r(-3)];
        match maximize(&a, &b, &[r(-1)]) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x[0], r(3));
                assert_eq!(value, r(-3));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn handles_redundant_rows() {
        // Duplicate constraint rows.
        let a = rows(&[&[1, 1], &[2, 2]]);
        let b = vec![r(2), r(4)];
        match maximize(&a, &b, &[r(1), r(0)]) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, r(2));
                assert_eq!(x[0], r(2));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn exact_rational_answers() {
        // max x s.t. 3x + 2y = 1 -> x = 1/3.
        let a = rows(&[&[3, 2]]);
        let b = vec![r(1)];
        match maximize(&a, &b, &[r(1), r(0)]) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rat(1, 3));
                assert_eq!(x[0], rat(1, 3));
                assert_eq!(x[1], r(0));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn feasible_point_satisfies_constraints() {
        let a = rows(&[&[1, 2, -1], &[0, 1, 1]]);
        let b = vec![r(3), r(5)];
        let x = feasible_point(&a, &b).expect("feasible");
        for (row, rhs) in a.iter().zip(&b) {
            let lhs: Rational = row.iter().zip(&x).map(|(c, v)| c * v).sum();
            assert_eq!(lhs, *rhs);
        }
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn empty_constraint_matrix() {
        assert_eq!(
            maximize(&[], &[], &[r(-1), r(-2)]),
            LpOutcome::Optimal { x: vec![r(0), r(0)], value: r(0) }
        );
        assert_eq!(maximize(&[], &[], &[r(1)]), LpOutcome::Unbounded);
    }
}

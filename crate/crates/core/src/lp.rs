//! Dense primal simplex over exact rationals.
//!
//! Only the form needed for regularity certificates is supported: maximize
//! `c·x` subject to `A x <= b`, `x >= 0` with `b >= 0`, so the slack basis is
//! feasible from the start. Bland's rule guarantees termination on the heavily
//! degenerate systems (`b = 0` rows) that kink constraints produce.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<BigRational>,
    pub rows: Vec<(Vec<BigRational>, BigRational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: BigRational, point: Vec<BigRational> },
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    NegativeRhs(usize),
    RowLength { row: usize, expected: usize, got: usize },
}

struct Tableau {
    // rows x (vars + slacks + 1); the last column is the right-hand side
    cells: Vec<Vec<BigRational>>,
    // reduced costs, same width
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn entering(&self) -> Option<usize> {
        (0..self.width - 1).find(|&j| self.cost[j].is_negative())
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let rhs = self.width - 1;
        let mut best: Option<(usize, BigRational)> = None;
        for (r, row) in self.cells.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[col];
            best = match best {
                None => Some((r, ratio)),
                Some((br, bv)) => {
                    if ratio < bv || (ratio == bv && self.basis[r] < self.basis[br]) {
                        Some((r, ratio))
                    } else {
                        Some((br, bv))
                    }
                }
            };
        }
        best.map(|(r, _)| r)
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.cells[r][col].clone();
        for v in self.cells[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.cells[r].clone();
        let nonzero: Vec<usize> = (0..self.width).filter(|&k| !pivot_row[k].is_zero()).collect();
        for (i, row) in self.cells.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &k in &nonzero {
                row[k] = &row[k] - &f * &pivot_row[k];
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for &k in &nonzero {
                self.cost[k] = &self.cost[k] - &f * &pivot_row[k];
            }
        }
        self.basis[r] = col;
    }
}

impl LinearProgram {
    pub fn maximize(&self) -> Result<LpOutcome, LpError> {
        let n = self.objective.len();
        let m = self.rows.len();
        let width = n + m + 1;
        let mut cells = Vec::with_capacity(m);
        for (r, (coeffs, rhs)) in self.rows.iter().enumerate() {
            if coeffs.len() != n {
                return Err(LpError::RowLength { row: r, expected: n, got: coeffs.len() });
            }
            if rhs.is_negative() {
                return Err(LpError::NegativeRhs(r));
            }
            let mut row = vec![BigRational::zero(); width];
            row[..n].clone_from_slice(coeffs);
            row[n + r] = BigRational::from_integer(1.into());
            row[width - 1] = rhs.clone();
            cells.push(row);
        }
        let mut cost = vec![BigRational::zero(); width];
        for (k, c) in self.objective.iter().enumerate() {
            cost[k] = -c.clone();
        }
        let mut tab = Tableau { cells, cost, basis: (n..n + m).collect(), width };

        while let Some(col) = tab.entering() {
            match tab.leaving(col) {
                Some(r) => tab.pivot(r, col),
                None => return Ok(LpOutcome::Unbounded),
            }
        }
        let mut point = vec![BigRational::zero(); n];
        for (r, &b) in tab.basis.iter().enumerate() {
            if b < n {
                point[b] = tab.cells[r][width - 1].clone();
            }
        }
        Ok(LpOutcome::Optimal { value: tab.cost[width - 1].clone(), point })
    }
}

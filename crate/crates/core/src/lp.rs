//! Dense two-phase simplex over exact rationals.
//!
//! Problems are given in equality form `A x = b, x >= 0` with integer data.
//! Pivoting follows Bland's rule, so the method terminates on degenerate
//! problems, which are the norm here (lattice points on faces of polytopes).
//!
//! The tableau first runs over `Ratio<i128>` with checked arithmetic; if any
//! operation overflows, the solve is repeated over `BigRational`. Both paths
//! are exact, so the outcome does not depend on which one finished.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
}

impl LpOutcome {
    pub fn optimal_value(&self) -> Option<&BigRational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// `minimize c·x subject to A x = b, x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    rows: Vec<Vec<i64>>,
    rhs: Vec<i64>,
    objective: Vec<i64>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            rows: Vec::new(),
            rhs: Vec::new(),
            objective: vec![0; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Adds the constraint `row · x = rhs`.
    pub fn add_equality(&mut self, row: Vec<i64>, rhs: i64) {
        assert_eq!(row.len(), self.num_vars, "constraint width");
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn set_objective(&mut self, objective: Vec<i64>) {
        assert_eq!(objective.len(), self.num_vars, "objective width");
        self.objective = objective;
    }

    pub fn is_feasible(&self) -> bool {
        match Tableau::<Ratio<i128>>::phase_one(self) {
            Some(result) => result.is_some(),
            None => Tableau::<BigRational>::phase_one(self)
                .expect("big rationals do not overflow")
                .is_some(),
        }
    }

    pub fn minimize(&self) -> LpOutcome {
        solve::<Ratio<i128>>(self)
            .unwrap_or_else(|| solve::<BigRational>(self).expect("big rationals do not overflow"))
    }

    pub fn maximize(&self) -> LpOutcome {
        let mut negated = self.clone();
        negated.objective = self.objective.iter().map(|c| -c).collect();
        match negated.minimize() {
            LpOutcome::Optimal { value, point } => LpOutcome::Optimal {
                value: -value,
                point,
            },
            other => other,
        }
    }
}

/// Exact ordered field with overflow reporting.
trait Field: Clone + PartialOrd + Debug + Default {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn sub(&self, rhs: &Self) -> Option<Self>;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn div(&self, rhs: &Self) -> Option<Self>;
    fn to_big(&self) -> BigRational;
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        Some(self / rhs)
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

impl Field for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        *self.numer() == 0
    }
    fn is_negative(&self) -> bool {
        *self.numer() < 0
    }
    fn is_positive(&self) -> bool {
        *self.numer() > 0
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(rhs)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs)
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

/// `None` means the arithmetic overflowed.
fn solve<F: Field>(lp: &LinearProgram) -> Option<LpOutcome> {
    let Some(mut tableau) = Tableau::<F>::phase_one(lp)? else {
        return Some(LpOutcome::Infeasible);
    };
    tableau.install_objective(&lp.objective)?;
    if !tableau.run()? {
        return Some(LpOutcome::Unbounded);
    }
    let rhs_col = tableau.width - 1;
    let mut point = vec![<BigRational as Zero>::zero(); lp.num_vars];
    for (r, &var) in tableau.basis.iter().enumerate() {
        if var < lp.num_vars {
            point[var] = tableau.cells[r][rhs_col].to_big();
        }
    }
    let value = -tableau.cost[rhs_col].to_big();
    Some(LpOutcome::Optimal { value, point })
}

struct Tableau<F> {
    /// Columns: structural variables, then artificials (phase one only), then rhs.
    cells: Vec<Vec<F>>,
    /// Reduced costs; the last entry holds minus the objective value.
    cost: Vec<F>,
    basis: Vec<usize>,
    width: usize,
    /// Columns at or beyond this index may not enter the basis.
    enter_limit: usize,
}

impl<F: Field> Tableau<F> {
    /// Runs phase one. Outer `None` on overflow, inner `None` if infeasible.
    fn phase_one(lp: &LinearProgram) -> Option<Option<Tableau<F>>> {
        let n = lp.num_vars;
        let m = lp.rows.len();
        let width = n + m + 1;
        let mut cells = Vec::with_capacity(m);
        let mut cost = vec![F::zero(); width];
        for (i, (row, &b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
            let sign = if b < 0 { -1 } else { 1 };
            let mut line = Vec::with_capacity(width);
            for (j, &a) in row.iter().enumerate() {
                line.push(F::from_i64(sign * a));
                cost[j] = cost[j].sub(&line[j])?;
            }
            for j in 0..m {
                line.push(if i == j { F::one() } else { F::zero() });
            }
            line.push(F::from_i64(sign * b));
            cost[width - 1] = cost[width - 1].sub(&line[width - 1])?;
            cells.push(line);
        }
        let mut t = Tableau {
            cells,
            cost,
            basis: (n..n + m).collect(),
            width,
            enter_limit: n,
        };
        let bounded = t.run()?;
        debug_assert!(bounded, "phase one is bounded below by zero");
        if !t.cost[width - 1].is_zero() {
            return Some(None);
        }
        t.drive_out_artificials(n)?;
        t.drop_artificial_columns(n);
        Some(Some(t))
    }

    fn drive_out_artificials(&mut self, n: usize) -> Option<()> {
        let mut r = 0;
        while r < self.cells.len() {
            if self.basis[r] < n {
                r += 1;
                continue;
            }
            match (0..n).find(|&j| !self.cells[r][j].is_zero()) {
                Some(j) => {
                    self.pivot(r, j)?;
                    r += 1;
                }
                None => {
                    // redundant equality
                    self.cells.remove(r);
                    self.basis.remove(r);
                }
            }
        }
        Some(())
    }

    fn drop_artificial_columns(&mut self, n: usize) {
        let rhs_col = self.width - 1;
        for line in &mut self.cells {
            let rhs = std::mem::take(&mut line[rhs_col]);
            line.truncate(n);
            line.push(rhs);
        }
        self.width = n + 1;
        self.cost = vec![F::zero(); self.width];
    }

    fn install_objective(&mut self, objective: &[i64]) -> Option<()> {
        let mut cost: Vec<F> = objective.iter().map(|&c| F::from_i64(c)).collect();
        cost.push(F::zero());
        for (r, &var) in self.basis.iter().enumerate() {
            if objective[var] == 0 {
                continue;
            }
            let cb = F::from_i64(objective[var]);
            for (c, a) in cost.iter_mut().zip(&self.cells[r]) {
                if !a.is_zero() {
                    *c = c.sub(&cb.mul(a)?)?;
                }
            }
        }
        self.cost = cost;
        self.enter_limit = self.width - 1;
        Some(())
    }

    /// Iterates to optimality. `Some(false)` if the objective is unbounded.
    fn run(&mut self) -> Option<bool> {
        loop {
            let Some(enter) = (0..self.enter_limit).find(|&j| self.cost[j].is_negative()) else {
                return Some(true);
            };
            let rhs_col = self.width - 1;
            let mut leave: Option<(usize, F)> = None;
            for (r, line) in self.cells.iter().enumerate() {
                let a = &line[enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = line[rhs_col].div(a)?;
                let better = match &leave {
                    None => true,
                    Some((best_r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*best_r])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Some(false);
            };
            self.pivot(row, enter)?;
        }
    }

    fn pivot(&mut self, row: usize, col: usize) -> Option<()> {
        let inv = F::one().div(&self.cells[row][col])?;
        for a in self.cells[row].iter_mut() {
            if !a.is_zero() {
                *a = a.mul(&inv)?;
            }
        }
        let pivot_row = std::mem::take(&mut self.cells[row]);
        for line in self.cells.iter_mut() {
            if line.is_empty() {
                continue;
            }
            eliminate(line, &pivot_row, col)?;
        }
        eliminate(&mut self.cost, &pivot_row, col)?;
        self.cells[row] = pivot_row;
        self.basis[row] = col;
        Some(())
    }
}

fn eliminate<F: Field>(line: &mut [F], pivot_row: &[F], col: usize) -> Option<()> {
    let factor = line[col].clone();
    if factor.is_zero() {
        return Some(());
    }
    for (a, p) in line.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *a = a.sub(&factor.mul(p)?)?;
        }
    }
    Some(())
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

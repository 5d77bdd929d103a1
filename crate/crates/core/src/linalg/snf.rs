use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AbelianGroupStructure, IntMatrix, LinalgError};

/// Smith decomposition `u · m · v = d` with `u`, `v` unimodular.
///
/// `u_inv` is carried along so that generators of cokernels can be lifted
/// without a separate inversion.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// The `min(rows, cols)` diagonal entries of `d`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Quotient rounded to the nearest integer, keeping remainders at most half the divisor.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let twice = r.abs() * 2;
    if twice > b.abs() {
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn row_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    fn col_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
    }

    fn row_swap(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
        self.u_inv.swap_cols(x, y);
    }

    fn col_swap(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
    }

    fn row_negate(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    fn smallest_in_corner(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().map_or(true, |(_, _, b)| ax < *b) {
                    let done = ax.is_one();
                    best = Some((i, j, ax));
                    if done {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn reduce_pivot(&mut self, t: usize) {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !self.a[(i, t)].is_zero() {
                    let q = nearest_quotient(&self.a[(i, t)], &self.a[(t, t)]);
                    self.row_add(i, t, &-q);
                    dirty |= !self.a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !self.a[(t, j)].is_zero() {
                    let q = nearest_quotient(&self.a[(t, j)], &self.a[(t, t)]);
                    self.col_add(j, t, &-q);
                    dirty |= !self.a[(t, j)].is_zero();
                }
            }
            if dirty {
                // a remainder is strictly smaller than the pivot; bring the smallest one in
                let mut best: Option<(bool, usize, BigInt)> = None;
                for i in t + 1..rows {
                    let x = self.a[(i, t)].abs();
                    if !x.is_zero() && best.as_ref().map_or(true, |b| x < b.2) {
                        best = Some((true, i, x));
                    }
                }
                for j in t + 1..cols {
                    let x = self.a[(t, j)].abs();
                    if !x.is_zero() && best.as_ref().map_or(true, |b| x < b.2) {
                        best = Some((false, j, x));
                    }
                }
                match best {
                    Some((true, i, _)) => self.row_swap(t, i),
                    Some((false, j, _)) => self.col_swap(t, j),
                    None => unreachable!("dirty pivot without remainder"),
                }
                continue;
            }
            let pivot = self.a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => self.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if self.a[(t, t)].is_negative() {
            self.row_negate(t);
        }
    }
}

/// Smith normal form with transforms: `u · m · v = d`, `d` diagonal with
/// `d[i] | d[i+1]` and nonnegative entries.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = r.smallest_in_corner(t) else { break };
        r.row_swap(t, pi);
        r.col_swap(t, pj);
        r.reduce_pivot(t);
        t += 1;
    }
    Smith { u: r.u, u_inv: r.u_inv, v: r.v, d: r.a, rank: t }
}

/// Structure of `Z^rows / im(r)`; invariant factors equal to 1 are dropped.
pub fn cokernel_structure(r: &IntMatrix) -> AbelianGroupStructure {
    let smith = smith_normal_form(r);
    let diag = smith.diagonal();
    let factors = diag[..smith.rank].iter().filter(|d| !d.is_one()).cloned().collect();
    AbelianGroupStructure::new(r.rows() - smith.rank, factors)
        .expect("smith diagonal is a divisibility chain")
}

/// Reusable solver for `a · x = b` over the integers.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    smith: Smith,
}

impl LinearSolver {
    pub fn new(a: &IntMatrix) -> Self {
        LinearSolver { smith: smith_normal_form(a) }
    }

    pub fn rows(&self) -> usize {
        self.smith.u.rows()
    }

    pub fn cols(&self) -> usize {
        self.smith.v.rows()
    }

    pub fn smith(&self) -> &Smith {
        &self.smith
    }

    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        if b.len() != self.rows() {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows(), self.cols()),
                right: (b.len(), 1),
            });
        }
        let c = self.smith.u.mul_vec(b);
        let rank = self.smith.rank;
        if c[rank..].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        let mut y = vec![BigInt::zero(); self.cols()];
        for i in 0..rank {
            let (q, r) = c[i].div_rem(&self.smith.d[(i, i)]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
        Ok(Some(self.smith.v.mul_vec(&y)))
    }

    /// Whether `b` lies in the column span of the matrix.
    pub fn contains(&self, b: &[BigInt]) -> bool {
        matches!(self.solve(b), Ok(Some(_)))
    }
}

/// An integral solution of `a · x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    LinearSolver::new(a).solve(b)
}

/// Columns form a Z-basis of `{x : a · x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let smith = smith_normal_form(a);
    let cols: Vec<usize> = (smith.rank..a.cols()).collect();
    smith.v.select_columns(&cols)
}

/// Columns form a Z-basis of the column span of `a`.
pub fn image_basis(a: &IntMatrix) -> IntMatrix {
    let smith = smith_normal_form(a);
    let mut basis = IntMatrix::zeros(a.rows(), smith.rank);
    for j in 0..smith.rank {
        let d = &smith.d[(j, j)];
        for i in 0..a.rows() {
            basis[(i, j)] = &smith.u_inv[(i, j)] * d;
        }
    }
    basis
}

use std::fmt;

use super::{Field, ScalarError};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, ScalarError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(ScalarError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Result<Self, ScalarError> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(ScalarError::DimensionMismatch("column length".into()));
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if self.cols != rhs.rows {
            return Err(ScalarError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let mut t = a.clone();
                        t *= b;
                        out.data[i * rhs.cols + j] += &t;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, ScalarError> {
        if v.len() != self.cols {
            return Err(ScalarError::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        let mut t = a.clone();
                        t *= b;
                        acc += &t;
                    }
                }
                acc
            })
            .collect())
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if self.rows != rhs.rows {
            return Err(ScalarError::DimensionMismatch("hstack row count".into()));
        }
        let cols = self.cols + rhs.cols;
        Ok(Self::from_fn(self.rows, cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        }))
    }

    /// Fails with `IncompatibleFields` when entries come from two different
    /// cyclotomic fields.
    pub fn check_fields(&self) -> Result<(), ScalarError> {
        let mut seen = 1u32;
        for x in &self.data {
            let c = x.conductor();
            if c == 1 {
                continue;
            }
            if seen == 1 {
                seen = c;
            } else if seen != c {
                return Err(ScalarError::IncompatibleFields(seen, c));
            }
        }
        Ok(())
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    ///
    /// Rows are first scaled to primitive integral form; the pivot in each
    /// column is the entry of smallest bit size. Every intermediate entry
    /// is a minor of the scaled matrix, so the division by the previous
    /// pivot is exact.
    pub fn rank(&self) -> Result<usize, ScalarError> {
        self.check_fields()?;
        let mut a: Vec<Vec<F>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        for row in a.iter_mut() {
            F::clear_denominators(row);
        }
        let mut prev = F::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let pivot = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].bit_size());
            let Some(p) = pivot else { continue };
            a.swap(r, p);
            let (top, rest) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pv = pivot_row[c].clone();
            for row in rest.iter_mut() {
                let factor = std::mem::replace(&mut row[c], F::zero());
                for j in c + 1..self.cols {
                    let mut t = row[j].clone();
                    t *= &pv;
                    if !factor.is_zero() && !pivot_row[j].is_zero() {
                        let mut u = factor.clone();
                        u *= &pivot_row[j];
                        t -= &u;
                    }
                    row[j] = if t.is_zero() { t } else { t.try_div(&prev)? };
                }
            }
            prev = pv;
            r += 1;
        }
        Ok(r)
    }

    /// Reduced row echelon form by Gauss-Jordan with first-nonzero
    /// pivoting. Returns the form and its pivot columns.
    pub fn rref(&self) -> Result<(Self, Vec<usize>), ScalarError> {
        self.check_fields()?;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    m.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = m.get(r, c).try_inv()?;
            for j in c..self.cols {
                let idx = r * self.cols + j;
                if !m.data[idx].is_zero() {
                    m.data[idx] *= &inv;
                }
            }
            for i in 0..self.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..self.cols {
                    let pj = m.get(r, j);
                    if pj.is_zero() {
                        continue;
                    }
                    let mut t = factor.clone();
                    t *= pj;
                    m.data[i * self.cols + j] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    /// Rank computed twice, by Bareiss on the matrix and by Gauss-Jordan on
    /// its transpose; disagreement is reported as an error.
    pub fn rank_cross_checked(&self) -> Result<usize, ScalarError> {
        let bareiss = self.rank()?;
        let gauss_jordan = self.transpose().rref()?.1.len();
        if bareiss != gauss_jordan {
            return Err(ScalarError::RankMismatch {
                bareiss,
                gauss_jordan,
            });
        }
        Ok(bareiss)
    }

    /// Basis of the right kernel `{v : self * v = 0}`; one vector per free
    /// column, with that free coordinate equal to 1.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<F>>, ScalarError> {
        let (r, pivots) = self.rref()?;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (k, &p) in pivots.iter().enumerate() {
                let x = r.get(k, free);
                if !x.is_zero() {
                    v[p] = -x.clone();
                }
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// Indices of columns forming a basis of the column space.
    pub fn pivot_columns(&self) -> Result<Vec<usize>, ScalarError> {
        Ok(self.rref()?.1)
    }

    /// Entrywise map into another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Cyclotomic, Rational};

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        for (r, c) in [(0, 0), (1, 4), (3, 2), (5, 5)] {
            assert_eq!(Matrix::<Rational>::zeros(r, c).rank().unwrap(), 0);
        }
    }

    #[test]
    fn identity_rank_and_kernel() {
        let id = Matrix::<Rational>::identity(3);
        assert_eq!(id.rank().unwrap(), 3);
        assert!(id.kernel_basis().unwrap().is_empty());
    }

    #[test]
    fn kernel_of_row_one_one() {
        let m = qm(&[&[1, 1]]);
        let k = m.kernel_basis().unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0].clone() + k[0][1].clone(), rat(0));
        assert_ne!(k[0][0], rat(0));
    }

    #[test]
    fn boundary_rows_of_order_two_square() {
        // Rows: coordinates of d(e_S) in the basis e_ab (a < b) of E^2 on
        // [6] for S = 135, 146, 236, 245. Two distinct triples share exactly
        // one element, so no pair e_ab occurs in two rows: the supports are
        // disjoint and the rows are independent.
        let pairs: Vec<(usize, usize)> = (1..=6)
            .flat_map(|a| (a + 1..=6).map(move |b| (a, b)))
            .collect();
        let triples = [(1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)];
        let idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b)).unwrap();
        let rows: Vec<Vec<Rational>> = triples
            .iter()
            .map(|&(a, b, c)| {
                let mut row = vec![rat(0); pairs.len()];
                row[idx(b, c)] += rat(1);
                row[idx(a, c)] -= rat(1);
                row[idx(a, b)] += rat(1);
                row
            })
            .collect();
        let m = Matrix::from_rows(rows).unwrap();
        assert_eq!(m.rank_cross_checked().unwrap(), 4);
        // Appending their sum adds nothing.
        let mut with_sum: Vec<Vec<Rational>> = (0..4).map(|i| m.row(i).to_vec()).collect();
        let sum: Vec<Rational> = (0..pairs.len())
            .map(|j| (0..4).fold(rat(0), |acc, i| acc + m.get(i, j).clone()))
            .collect();
        with_sum.push(sum);
        assert_eq!(Matrix::from_rows(with_sum).unwrap().rank().unwrap(), 4);
    }

    #[test]
    fn mixed_conductors_are_rejected() {
        let m = Matrix::from_rows(vec![vec![
            Cyclotomic::zeta(3).unwrap(),
            Cyclotomic::zeta(5).unwrap(),
        ]])
        .unwrap();
        assert_eq!(m.rank(), Err(ScalarError::IncompatibleFields(3, 5)));
        assert!(m.kernel_basis().is_err());
    }

    #[test]
    fn cyclotomic_rank_deficiency() {
        // Rows (1, w) and (w^2, 1) are proportional in Q(w), w^3 = 1.
        let w = Cyclotomic::zeta(3).unwrap();
        let w2 = w.clone() * w.clone();
        let m = Matrix::from_rows(vec![
            vec![Cyclotomic::from_i64(1), w.clone()],
            vec![w2, Cyclotomic::from_i64(1)],
        ])
        .unwrap();
        assert_eq!(m.rank_cross_checked().unwrap(), 1);
        assert_eq!(m.kernel_basis().unwrap().len(), 1);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        assert!(Matrix::from_rows(vec![vec![rat(1)], vec![rat(1), rat(2)]]).is_err());
    }
}

//! Dense matrices over exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is needed when there
    /// are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        RationalMatrix { rows: r, cols, data }
    }

    pub fn from_integer_rows<T: Clone + Into<BigInt>>(cols: usize, rows: &[Vec<T>]) -> Self {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone().into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] *= &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        let delta = &factor * &m[(r, j)];
                        m[(i, j)] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column with that
    /// column set to 1.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.cols];
                x[f] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -r[(i, f)].clone();
                }
                x
            })
            .collect()
    }

    /// A solution of `A x = b` with free variables set to zero, checked by
    /// substitution; `None` if the system is inconsistent.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows, "shape mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        assert_eq!(self.mul_vec(&x), b, "back-substitution check failed");
        Some(x)
    }

    /// Determinant by rational Gaussian elimination.
    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] / &pivot;
                for j in c..n {
                    let delta = &factor * &m[(c, j)];
                    m[(i, j)] -= delta;
                }
            }
        }
        det
    }

    /// Inverse via RREF of `[A | I]`, or `None` when singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = BigRational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().filter(|&&p| p < n).count() < n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    assert_eq!(a.len(), b.len(), "length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn bareiss_determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    for row in &m {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // exact by Sylvester's identity
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (denominators cleared, gcd divided out).
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_positive(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn int_matrix(rows: &[Vec<i64>]) -> RationalMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        RationalMatrix::from_integer_rows(cols, rows)
    }

    /// Leibniz expansion over all permutations.
    fn leibniz(m: &[Vec<i64>]) -> BigInt {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.len();
        let mut total = BigInt::zero();
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = BigInt::one();
            for (i, &pi) in p.iter().enumerate() {
                term *= m[i][pi];
            }
            if inversions % 2 == 1 {
                term = -term;
            }
            total += term;
        }
        total
    }

    #[test]
    fn rank_and_rref() {
        let m = int_matrix(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.row(0), &[q(1), q(0), q(1)]);
        assert_eq!(RationalMatrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = int_matrix(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![q(1), q(-1), q(1)]);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
        assert_eq!(RationalMatrix::zeros(0, 2).nullspace().len(), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = int_matrix(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.solve(&[q(3), q(1)]), Some(vec![q(2), q(1)]));
        let singular = int_matrix(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(singular.solve(&[q(1), q(3)]), None);
        assert_eq!(singular.solve(&[q(1), q(2)]), Some(vec![q(1), q(0)]));
    }

    #[test]
    fn inverse_round_trip() {
        let m = int_matrix(&[vec![2, 1], vec![7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(2));
        assert!(int_matrix(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
            q(0),
        ];
        let ints: Vec<i64> = primitive_integer_vector(&v)
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(ints, vec![2, -3, 0]);
    }

    proptest! {
        #[test]
        fn determinants_agree(n in 0usize..5, entries in proptest::collection::vec(-5i64..=5, 16)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
            let expected = leibniz(&rows);
            let big: Vec<Vec<BigInt>> =
                rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            prop_assert_eq!(bareiss_determinant(&big), expected.clone());
            let m = RationalMatrix::from_integer_rows(n, &rows);
            prop_assert_eq!(m.determinant(), BigRational::from_integer(expected.clone()));
            prop_assert_eq!(m.inverse().is_some(), !expected.is_zero());
        }

        #[test]
        fn rank_nullity(r in 0usize..5, c in 1usize..5, entries in proptest::collection::vec(-3i64..=3, 25)) {
            let rows: Vec<Vec<i64>> = (0..r).map(|i| entries[i * c..(i + 1) * c].to_vec()).collect();
            let m = RationalMatrix::from_integer_rows(c, &rows);
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.len(), c);
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}

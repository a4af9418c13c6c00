//! Dense matrices over [`Scalar`].

use std::fmt;
use std::ops::Index;

use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// A 3x3 matrix; the type is shared with the general case.
pub type Mat3 = Matrix;
pub type Vec3 = [Scalar; 3];

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "] over {}", self.ring)
    }
}

/// One bracketed row per line, columns right-aligned.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(0);
        for row in cells.chunks(self.cols.max(1)) {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", padded.join("  "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn from_fn(ring: &RingSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                assert!(s.ring() == ring, "entry ring {} differs from {}", s.ring(), ring);
                data.push(s);
            }
        }
        Matrix { ring: ring.clone(), rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have equal length and share `ring`.
    pub fn from_rows(ring: &RingSpec, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for s in row {
                if s.ring() != ring {
                    return Err(Error::RingMismatch { left: s.ring().to_string(), right: ring.to_string() });
                }
                data.push(s);
            }
        }
        Ok(Matrix { ring: ring.clone(), rows: r, cols: c, data })
    }

    pub fn from_i64(ring: &RingSpec, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_fn(ring, r, c, |i, j| ring.from_i64(rows[i][j]))
    }

    pub fn zeros(ring: &RingSpec, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(ring, rows, cols, |_, _| ring.zero())
    }

    pub fn identity(ring: &RingSpec, n: usize) -> Matrix {
        Matrix::from_fn(ring, n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn diagonal(ring: &RingSpec, entries: &[Scalar]) -> Matrix {
        let n = entries.len();
        Matrix::from_fn(ring, n, n, |i, j| if i == j { entries[i].clone() } else { ring.zero() })
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(value.ring() == &self.ring);
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(&self.ring, rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { left: self.ring.to_string(), right: other.ring.to_string() });
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(&self.ring, self.rows, other.cols, |i, j| {
            let mut acc = self.ring.zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &other[(k, j)];
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    /// Product; panics on shape or ring mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (k, x) in v.iter().enumerate() {
                    acc = &acc + &(&self[(i, k)] * x);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(&self.ring, self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(&self.ring, self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, self.cols, |i, j| -&self[(i, j)])
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, self.cols, |i, j| s * &self[(i, j)])
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// The submatrix with row `i` and column `j` removed.
    pub fn delete(&self, i: usize, j: usize) -> Matrix {
        let keep_r: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        Matrix::from_fn(&self.ring, keep_r.len(), keep_c.len(), |a, b| self[(keep_r[a], keep_c[b])].clone())
    }

    /// Unsigned minor: the determinant after deleting row `i` and column `j` (0-based).
    pub fn minor(&self, i: usize, j: usize) -> Scalar {
        self.delete(i, j).det()
    }

    /// Determinant. Cofactor expansion for n <= 4, Gaussian elimination over
    /// fields, and the division-free Berkowitz algorithm otherwise.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        match self.rows {
            0 => self.ring.one(),
            1 => self.data[0].clone(),
            2 => &(&self.data[0] * &self.data[3]) - &(&self.data[1] * &self.data[2]),
            3 | 4 => {
                let mut acc = self.ring.zero();
                for j in 0..self.cols {
                    let a = &self[(0, j)];
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor(0, j);
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
            _ if self.ring.is_field() => self.det_gauss(),
            _ => self.det_berkowitz(),
        }
    }

    fn det_gauss(&self) -> Scalar {
        let n = self.rows;
        let mut m: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i)).collect();
        let mut det = self.ring.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return self.ring.zero();
            };
            if p != c {
                m.swap(p, c);
                det = -&det;
            }
            det = &det * &m[c][c];
            let inv = m[c][c].inverse().expect("nonzero pivot in a field");
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] * &inv;
                for k in c..n {
                    let v = &m[r][k] - &(&f * &m[c][k]);
                    m[r][k] = v;
                }
            }
        }
        det
    }

    /// Berkowitz: builds the characteristic polynomial of leading principal
    /// submatrices by Toeplitz products, using only ring operations.
    fn det_berkowitz(&self) -> Scalar {
        let n = self.rows;
        let ring = &self.ring;
        let mut p = vec![ring.one()];
        for r in 0..n {
            let a = &self[(r, r)];
            let mut t = Vec::with_capacity(r + 2);
            t.push(ring.one());
            t.push(-a);
            let mut v: Vec<Scalar> = (0..r).map(|i| self[(i, r)].clone()).collect();
            for _ in 0..r {
                let mut dot = ring.zero();
                for (k, x) in v.iter().enumerate() {
                    dot = &dot + &(&self[(r, k)] * x);
                }
                t.push(-&dot);
                v = (0..r)
                    .map(|i| {
                        let mut acc = ring.zero();
                        for (k, x) in v.iter().enumerate() {
                            acc = &acc + &(&self[(i, k)] * x);
                        }
                        acc
                    })
                    .collect();
            }
            let mut next = vec![ring.zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate().take(i + 1) {
                    *slot = &*slot + &(&t[i - j] * pj);
                }
            }
            p = next;
        }
        let last = p[n].clone();
        if n.is_multiple_of(2) {
            last
        } else {
            -&last
        }
    }

    /// Classical adjugate: transpose of the signed cofactor matrix.
    pub fn adjugate(&self) -> Matrix {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(&self.ring, 1);
        }
        Matrix::from_fn(&self.ring, n, n, |i, j| {
            let m = self.minor(j, i);
            if (i + j) % 2 == 0 {
                m
            } else {
                -&m
            }
        })
    }

    /// Exact inverse; the determinant must be a unit.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let d = self.det();
        if !d.is_unit() {
            return Err(Error::Singular);
        }
        Ok(self.adjugate().scale(&d.inverse()?))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        let data: Vec<Scalar> = self.data.iter().map(f).collect();
        let ring = data.first().map_or_else(|| self.ring.clone(), |s| s.ring().clone());
        Matrix { ring, rows: self.rows, cols: self.cols, data }
    }
}

pub fn vec3(ring: &RingSpec, v: [i64; 3]) -> Vec3 {
    v.map(|x| ring.from_i64(x))
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let ring = a[0].ring().clone();
    a.iter().zip(b).fold(ring.zero(), |acc, (x, y)| &acc + &(x * y))
}

pub fn cross(a: &[Scalar], b: &[Scalar]) -> Vec3 {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_rational_matrix() {
        let q = RingSpec::rationals();
        let m = Matrix::from_i64(&q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&q, 3));
        assert_eq!(m.det(), q.from_i64(18));
    }

    #[test]
    fn integer_inverse_needs_unit_determinant() {
        let z = RingSpec::integers();
        let m = Matrix::from_i64(&z, &[&[2, 0], &[0, 1]]);
        assert_eq!(m.inverse(), Err(Error::Singular));
        let u = Matrix::from_i64(&z, &[&[2, 1], &[1, 1]]);
        assert_eq!(u.inverse().unwrap(), Matrix::from_i64(&z, &[&[1, -1], &[-1, 2]]));
    }

    #[test]
    fn unsigned_minors() {
        let z = RingSpec::integers();
        let m = Matrix::from_i64(&z, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        // delete row 0, column 1: [[4,6],[7,10]] -> 40 - 42
        assert_eq!(m.minor(0, 1), z.from_i64(-2));
        assert_eq!(m.det(), z.from_i64(-3));
    }

    fn leibniz(m: &Matrix) -> Scalar {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 1 {
                return vec![(vec![0], true)];
            }
            let mut out = Vec::new();
            for (p, even) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    let flips = (n - 1 - pos) % 2 == 1;
                    out.push((q, even != flips));
                }
            }
            out
        }
        let ring = m.ring().clone();
        let mut acc = ring.zero();
        for (p, even) in perms(m.rows()) {
            let mut term = ring.one();
            for (i, &j) in p.iter().enumerate() {
                term = &term * &m[(i, j)];
            }
            acc = if even { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn determinant_algorithms_agree_with_leibniz() {
        let z = RingSpec::integers();
        let f7 = RingSpec::prime_field(7).unwrap();
        let mut seed = 11u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 9) as i64 - 4
        };
        for n in 5..=6 {
            let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let mz = Matrix::from_i64(&z, &refs);
            assert_eq!(mz.det(), leibniz(&mz));
            let mf = Matrix::from_i64(&f7, &refs);
            assert_eq!(mf.det(), leibniz(&mf));
        }
    }

    #[test]
    fn symbolic_adjugate_identity() {
        let names: Vec<String> = (1..=3).flat_map(|i| (1..=3).map(move |j| format!("g{i}{j}"))).collect();
        let r = RingSpec::polynomials(&names).unwrap();
        let g = Matrix::from_fn(&r, 3, 3, |i, j| r.variable(&format!("g{}{}", i + 1, j + 1)).unwrap());
        let prod = g.mul(&g.adjugate());
        assert_eq!(prod, Matrix::identity(&r, 3).scale(&g.det()));
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Rational, Scalar};

/// Dense row-major matrix of exact scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from column vectors of equal length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Scalar) {
        self.data[i * self.cols + j] += v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(|s| s.as_rational().is_some())
    }

    /// Field order shared by the entries; errors if two differ.
    pub fn field_order(&self) -> Result<u32> {
        let mut order = 1;
        for s in &self.data {
            let o = s.order();
            if o != 1 {
                if order != 1 && order != o {
                    return Err(Error::IncompatibleOrders(order, o));
                }
                order = o;
            }
        }
        Ok(order)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let t = a * b;
                        out.add_to(i, j, &t);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Columns of `self` followed by those of `other`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Keeps the listed rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(k, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.is_rational() {
            return sparse_rank(self.integer_rows());
        }
        // rank over Q(zeta) is the rank over Q of the restriction divided by
        // the degree; fraction-free elimination keeps this fast
        let phi = crate::field::totient(self.field_order().expect("one cyclotomic field"));
        let restricted = self.restrict_scalars().expect("one cyclotomic field");
        sparse_rank(restricted.integer_rows()) / phi
    }

    /// Each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let lcm = row.iter().fold(BigInt::one(), |acc, s| {
                    let r = s.as_rational().expect("rational entry");
                    acc.lcm(r.denom())
                });
                row.iter()
                    .map(|s| {
                        let r = s.as_rational().unwrap();
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// In-place Gaussian elimination to reduced row echelon form; returns
    /// the pivot columns.
    fn row_echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let pj = self.get(r, j);
                    if pj.is_zero() {
                        continue;
                    }
                    let t = &f * pj;
                    self.data[i * self.cols + j] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right null space, as columns of the returned matrix.
    pub fn kernel(&self) -> Matrix {
        let mut m = self.clone();
        let pivots = m.row_echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, Scalar::one());
            for (r, &pc) in pivots.iter().enumerate() {
                let v = -m.get(r, f);
                out.set(pc, k, v);
            }
        }
        out
    }

    /// Matrix over `Q` of the same map after restriction of scalars from
    /// `Q(zeta_m)`; each entry becomes a `phi(m) x phi(m)` block.
    pub fn restrict_scalars(&self) -> Result<Matrix> {
        let order = self.field_order()?;
        if order == 1 {
            return Ok(self.clone());
        }
        let field = crate::field::CyclotomicField::new(order)?;
        let phi = field.degree();
        let basis: Vec<Scalar> = (0..phi)
            .map(|k| {
                Scalar::from_cyclotomic(crate::field::Cyclotomic::from_coeffs(&field, {
                    let mut v = vec![Rational::zero(); phi];
                    v[k] = Rational::one();
                    v
                }))
            })
            .collect();
        let mut out = Matrix::zeros(self.rows * phi, self.cols * phi);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                for (k, b) in basis.iter().enumerate() {
                    let img = e * b;
                    let coords = coordinates(&img, phi);
                    for (l, c) in coords.into_iter().enumerate() {
                        out.set(i * phi + l, j * phi + k, Scalar::Rat(c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Plain text grid for debugging.
    pub fn dump(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(String::len)
            .max()
            .unwrap_or(1);
        cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| format!("{c:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn coordinates(s: &Scalar, phi: usize) -> Vec<Rational> {
    match s {
        Scalar::Rat(r) => {
            let mut v = vec![Rational::zero(); phi];
            v[0] = r.clone();
            v
        }
        Scalar::Cyc(c) => c.coeffs().to_vec(),
    }
}

/// Fraction-free (Bareiss) elimination over the integers; returns the rank.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // smallest nonzero pivot keeps entries short
        let Some(p) = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].bits())
        else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            if f.is_zero() {
                for v in row[c + 1..].iter_mut() {
                    if !v.is_zero() {
                        *v *= &pivot;
                        if !prev.is_one() {
                            *v = &*v / &prev;
                        }
                    }
                }
                continue;
            }
            for (v, pv) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                let mut t = &*v * &pivot;
                if !pv.is_zero() {
                    t -= &f * pv;
                }
                if !prev.is_one() {
                    debug_assert!((&t % &prev).is_zero());
                    t /= &prev;
                }
                *v = t;
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Fraction-free elimination over the integers that only touches rows with
/// a nonzero entry in the pivot column and keeps every row primitive.
/// Suited to the sparse, banded matrices of the truncated complexes.
pub fn sparse_rank(rows: Vec<Vec<BigInt>>) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter_map(|mut row| make_primitive(&mut row).then_some(row))
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| (m[i][c].bits(), m[i][c..].iter().filter(|v| !v.is_zero()).count()))
        else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        let support: Vec<usize> = (c + 1..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let a = pivot / &g;
            let b = &row[c] / &g;
            row[c] = BigInt::zero();
            if !a.is_one() {
                for v in row[c + 1..].iter_mut() {
                    if !v.is_zero() {
                        *v *= &a;
                    }
                }
            }
            for &j in &support {
                row[j] -= &b * &pivot_row[j];
            }
            make_primitive(row);
        }
        r += 1;
    }
    r
}

/// Divides a row by the gcd of its entries; false for a zero row.
fn make_primitive(row: &mut [BigInt]) -> bool {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return true;
            }
        }
    }
    if g.is_zero() {
        return false;
    }
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v /= &g;
        }
    }
    true
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.dump())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_i64(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn small_ranks() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(m(&[&[0, 1, 2], &[0, 0, 3], &[0, 2, 1]]).rank(), 2);
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(Matrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn kernel_small() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).unwrap().is_zero());
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn cyclotomic_rank_matches_restriction() {
        let z = Scalar::zeta(3).unwrap();
        let one = Scalar::one();
        // rows (1, z) and (z, z^2) are dependent
        let a = Matrix::from_rows(vec![
            vec![one.clone(), z.clone()],
            vec![z.clone(), &z * &z],
        ]);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.restrict_scalars().unwrap().rank(), 2);
        let b = Matrix::from_rows(vec![vec![one.clone(), z.clone()], vec![z.clone(), one]]);
        assert_eq!(b.rank(), 2);
        assert_eq!(b.restrict_scalars().unwrap().rank(), 4);
    }

    fn int_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec((-3i64..4, 1i64..3), c), r)
                .prop_map(|rows| {
                    Matrix::from_rows(
                        rows.into_iter()
                            .map(|row| {
                                row.into_iter()
                                    .map(|(n, d)| Scalar::from_ratio(n, d))
                                    .collect()
                            })
                            .collect(),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in int_matrix()) {
            let k = a.kernel();
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
            prop_assert!(a.mul(&k).unwrap().is_zero());
        }

        #[test]
        fn cyclotomic_rank_agrees_with_gauss(a in int_matrix(), k in prop::sample::select(vec![1i64, 2])) {
            let z = Scalar::root_of_unity(3, k).unwrap();
            let mut b = a.clone();
            for i in 0..b.rows() {
                let v = b.get(i, i % b.cols()) * &z;
                b.set(i, i % b.cols(), v);
            }
            let mut g = b.clone();
            prop_assert_eq!(b.rank(), g.row_echelon().len());
        }

        #[test]
        fn bareiss_agrees_with_gauss(a in int_matrix()) {
            let mut g = a.clone();
            prop_assert_eq!(a.rank(), g.row_echelon().len());
            prop_assert_eq!(bareiss_rank(a.integer_rows()), a.rank());
        }

        #[test]
        fn sparse_rank_agrees_with_bareiss(
            rows in proptest::collection::vec(proptest::collection::vec(
                prop::sample::select(vec![0i64, 0, 0, 1, -1, 2, 5, -7, 12]), 8), 1..9)
        ) {
            let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            prop_assert_eq!(sparse_rank(big.clone()), bareiss_rank(big));
        }

        #[test]
        fn cyclotomic_rank_vs_restriction(a in int_matrix(), k in prop::sample::select(vec![1i64, 3])) {
            // twist the first column by zeta_4^k so the matrix leaves Q
            let z = Scalar::root_of_unity(4, k).unwrap();
            let mut b = a.clone();
            for i in 0..b.rows() {
                let v = b.get(i, 0) * &z;
                b.set(i, 0, v);
            }
            let phi = if b.field_order().unwrap() == 1 { 1 } else { 2 };
            prop_assert_eq!(b.rank() * phi, b.restrict_scalars().unwrap().rank());
        }
    }
}

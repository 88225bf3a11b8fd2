//! Dense matrices with arbitrary-precision integer entries, exact
//! characteristic polynomials and coronals, plus the structurally
//! independent oracles used to cross-validate them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::ratfunc::RatFunc;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    /// All-ones matrix J.
    pub fn ones(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::one(); rows * cols],
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flat_map(|row| row.iter().map(|&v| BigInt::from(v))).collect(),
        }
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.entries[i * self.cols + j] = v.into();
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} · {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        *out.get_mut(i * other.rows + p, j * other.cols + q) =
                            a * other.get(p, q);
                    }
                }
            }
        }
        out
    }

    /// Assembles a block matrix from a grid; rows of the grid must agree on
    /// heights and columns on widths.
    pub fn from_blocks(grid: &[Vec<IntMatrix>]) -> Result<Self> {
        if grid.is_empty() || grid.iter().any(|r| r.is_empty()) {
            return Err(Error::DimensionMismatch("empty block grid".into()));
        }
        let block_cols = grid[0].len();
        if grid.iter().any(|r| r.len() != block_cols) {
            return Err(Error::DimensionMismatch("ragged block grid".into()));
        }
        let heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for (bi, row) in grid.iter().enumerate() {
            for (bj, blk) in row.iter().enumerate() {
                if blk.rows != heights[bi] || blk.cols != widths[bj] {
                    return Err(Error::DimensionMismatch(format!(
                        "block ({bi},{bj}) is {}x{}, expected {}x{}",
                        blk.rows, blk.cols, heights[bi], widths[bj]
                    )));
                }
            }
        }
        let total_rows: usize = heights.iter().sum();
        let total_cols: usize = widths.iter().sum();
        let mut out = Self::zeros(total_rows, total_cols);
        let mut row_off = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut col_off = 0;
            for blk in row {
                for i in 0..blk.rows {
                    for j in 0..blk.cols {
                        *out.get_mut(row_off + i, col_off + j) = blk.get(i, j).clone();
                    }
                }
                col_off += blk.cols;
            }
            row_off += heights[bi];
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    /// M − αJ.
    pub fn sub_scaled_ones(&self, alpha: &BigInt) -> Result<Self> {
        self.sub(&Self::ones(self.rows, self.cols).scale(alpha))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom("entry grid does not match dimensions"));
        }
        let mut entries = Vec::with_capacity(repr.rows * repr.cols);
        for row in &repr.entries {
            for s in row {
                entries.push(
                    s.parse::<BigInt>()
                        .map_err(|e| D::Error::custom(format!("bad entry `{s}`: {e}")))?,
                );
            }
        }
        Ok(IntMatrix {
            rows: repr.rows,
            cols: repr.cols,
            entries,
        })
    }
}

fn require_square(m: &IntMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(m.rows)
}

/// Characteristic polynomial det(λI − M) by the Faddeev–LeVerrier
/// recurrence; every intermediate division is exact.
///
/// The recurrence multiplies M into a dense workspace each step, so the
/// multiply walks M sparsely: product matrices here are mostly zeros with
/// small entries while the workspace carries large ones.
pub fn charpoly(m: &IntMatrix) -> Result<IntPoly> {
    let n = require_square(m)?;
    // Sparse view of M with the ±1 entries special-cased.
    let sparse: Vec<Vec<(usize, &BigInt)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter_map(|k| {
                    let a = m.get(i, k);
                    (!a.is_zero()).then_some((k, a))
                })
                .collect()
        })
        .collect();

    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // b holds B_{k−1}, starting from the identity; work receives M·B_{k−1}.
    let mut b: Vec<BigInt> = IntMatrix::identity(n).entries;
    let mut work: Vec<BigInt> = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        for w in work.iter_mut() {
            w.set_zero();
        }
        for (i, row) in sparse.iter().enumerate() {
            let out = &mut work[i * n..(i + 1) * n];
            for &(t, a) in row {
                let src = &b[t * n..(t + 1) * n];
                if a.is_one() {
                    for (o, s) in out.iter_mut().zip(src) {
                        *o += s;
                    }
                } else if (-a).is_one() {
                    for (o, s) in out.iter_mut().zip(src) {
                        *o -= s;
                    }
                } else {
                    for (o, s) in out.iter_mut().zip(src) {
                        *o += a * s;
                    }
                }
            }
        }
        let tr: BigInt = (0..n).map(|i| &work[i * n + i]).sum();
        let (q, r) = (-tr).div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::InternalInconsistency(
                "trace not divisible in characteristic-polynomial recurrence".into(),
            ));
        }
        std::mem::swap(&mut b, &mut work);
        for i in 0..n {
            b[i * n + i] += &q;
        }
        coeffs[n - k] = q;
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Fraction-free Bareiss determinant; exact over ℤ.
pub fn bareiss_det(m: &IntMatrix) -> Result<BigInt> {
    let n = require_square(m)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                if !r.is_zero() {
                    return Err(Error::InternalInconsistency(
                        "inexact division in fraction-free elimination".into(),
                    ));
                }
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign * a[n - 1][n - 1].clone())
}

/// Lagrange interpolation through (xs[i], ys[i]); xs must be distinct.
pub(crate) fn interpolate_rational(xs: &[BigInt], ys: &[BigRational]) -> Vec<BigRational> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    // full(x) = Π (x − x_j)
    let mut full = vec![BigRational::one()];
    for x in xs {
        let xr = BigRational::from(x.clone());
        let mut next = vec![BigRational::zero(); full.len() + 1];
        for (k, c) in full.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xr;
        }
        full = next;
    }

    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis_i = full / (x − x_i) by synthetic division
        let xi = BigRational::from(xs[i].clone());
        let mut basis = vec![BigRational::zero(); n];
        let mut carry = BigRational::zero();
        for k in (0..n).rev() {
            let c = full[k + 1].clone() + &carry;
            carry = c.clone() * &xi;
            basis[k] = c;
        }
        // denom = Π_{j≠i} (x_i − x_j) = basis_i(x_i)
        let mut denom = BigRational::zero();
        for k in (0..n).rev() {
            denom = denom * &xi + &basis[k];
        }
        let w = ys[i].clone() / denom;
        for k in 0..n {
            acc[k] += &basis[k] * &w;
        }
    }
    acc
}

pub(crate) fn rational_coeffs_to_poly(coeffs: &[BigRational]) -> Result<IntPoly> {
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if !c.denom().is_one() {
            return Err(Error::InternalInconsistency(
                "interpolated polynomial has non-integer coefficients".into(),
            ));
        }
        out.push(c.numer().clone());
    }
    Ok(IntPoly::from_coeffs(out))
}

/// λ0·I − M as an integer matrix.
fn shifted_identity_minus(m: &IntMatrix, lambda0: &BigInt) -> IntMatrix {
    let n = m.rows;
    let mut out = m.neg();
    for i in 0..n {
        *out.get_mut(i, i) += lambda0;
    }
    out
}

pub const CHARPOLY_ORACLE_LIMIT: usize = 10;

/// Independent characteristic-polynomial oracle: Bareiss determinants of
/// λ0·I − M at n+1 integer points, then Lagrange interpolation.
pub fn charpoly_oracle(m: &IntMatrix) -> Result<IntPoly> {
    let n = require_square(m)?;
    if n > CHARPOLY_ORACLE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: CHARPOLY_ORACLE_LIMIT,
        });
    }
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| bareiss_det(&shifted_identity_minus(m, x)).map(BigRational::from))
        .collect::<Result<_>>()?;
    rational_coeffs_to_poly(&interpolate_rational(&xs, &ys))
}

/// Coronal χ_M(λ) = 1ᵀ(λI−M)⁻¹1, computed as f_{M−J}/f_M − 1 via the
/// rank-one determinant identity.
pub fn coronal(m: &IntMatrix) -> Result<RatFunc> {
    require_square(m)?;
    let f = charpoly(m)?;
    let f_shifted = charpoly(&m.sub_scaled_ones(&BigInt::one())?)?;
    RatFunc::new(&f_shifted - &f, f)
}

pub const CORONAL_ORACLE_LIMIT: usize = 6;

/// Independent coronal oracle: sums the adjugate of λI−M entrywise, every
/// adjugate entry interpolated from Bareiss minors.
pub fn coronal_oracle(m: &IntMatrix) -> Result<RatFunc> {
    let n = require_square(m)?;
    if n > CORONAL_ORACLE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: CORONAL_ORACLE_LIMIT,
        });
    }
    let det_xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let det_ys: Vec<BigRational> = det_xs
        .iter()
        .map(|x| bareiss_det(&shifted_identity_minus(m, x)).map(BigRational::from))
        .collect::<Result<_>>()?;
    let det_poly = rational_coeffs_to_poly(&interpolate_rational(&det_xs, &det_ys))?;

    let minor_xs: Vec<BigInt> = (0..n as i64).map(BigInt::from).collect();
    let mut adj_sum = IntPoly::zero();
    for i in 0..n {
        for j in 0..n {
            // adj(λI−M)_{ij} = (−1)^{i+j} · minor_{ji}(λI−M)
            let ys: Vec<BigRational> = minor_xs
                .iter()
                .map(|x| {
                    let shifted = shifted_identity_minus(m, x);
                    bareiss_det(&delete_row_col(&shifted, j, i)).map(BigRational::from)
                })
                .collect::<Result<_>>()?;
            let minor = rational_coeffs_to_poly(&interpolate_rational(&minor_xs, &ys))?;
            if (i + j) % 2 == 0 {
                adj_sum = adj_sum.add(&minor);
            } else {
                adj_sum = adj_sum.sub(&minor);
            }
        }
    }
    RatFunc::new(adj_sum, det_poly)
}

fn delete_row_col(m: &IntMatrix, row: usize, col: usize) -> IntMatrix {
    let mut entries = Vec::with_capacity((m.rows - 1) * (m.cols - 1));
    for i in 0..m.rows {
        if i == row {
            continue;
        }
        for j in 0..m.cols {
            if j == col {
                continue;
            }
            entries.push(m.get(i, j).clone());
        }
    }
    IntMatrix {
        rows: m.rows - 1,
        cols: m.cols - 1,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn charpoly_nilpotent_path() {
        let a = IntMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(charpoly(&a).unwrap(), p(&[0, 0, 1]));
        assert_eq!(charpoly_oracle(&a).unwrap(), p(&[0, 0, 1]));
    }

    #[test]
    fn charpoly_three_cycle() {
        let a = IntMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(charpoly(&a).unwrap(), p(&[-1, 0, 0, 1]));
        assert_eq!(charpoly_oracle(&a).unwrap(), p(&[-1, 0, 0, 1]));
    }

    #[test]
    fn charpoly_two_cycle_oracle() {
        let a = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(charpoly_oracle(&a).unwrap(), p(&[-1, 0, 1]));
        assert_eq!(charpoly(&a).unwrap(), p(&[-1, 0, 1]));
    }

    #[test]
    fn charpoly_rejects_non_square() {
        let a = IntMatrix::zeros(2, 3);
        assert!(matches!(charpoly(&a), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn oracle_size_guard() {
        let a = IntMatrix::identity(11);
        assert!(matches!(charpoly_oracle(&a), Err(Error::TooLarge { .. })));
        let a = IntMatrix::identity(7);
        assert!(matches!(coronal_oracle(&a), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn coronal_scalar_zero() {
        let m = IntMatrix::zeros(1, 1);
        let chi = coronal(&m).unwrap();
        assert_eq!(chi, RatFunc::new(p(&[1]), p(&[0, 1])).unwrap());
        assert_eq!(coronal_oracle(&m).unwrap(), chi);
    }

    #[test]
    fn coronal_constant_row_sums() {
        // A(C3): row sums 1 → 3/(λ−1)
        let a = IntMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let chi = coronal(&a).unwrap();
        assert_eq!(chi, RatFunc::new(p(&[3]), p(&[-1, 1])).unwrap());
    }

    #[test]
    fn coronal_directed_path() {
        // A(P2) → (2λ+1)/λ²
        let a = IntMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let expect = RatFunc::new(p(&[1, 2]), p(&[0, 0, 1])).unwrap();
        assert_eq!(coronal(&a).unwrap(), expect);
        assert_eq!(coronal_oracle(&a).unwrap(), expect);
    }

    #[test]
    fn coronal_oracle_two_cycle_reduces() {
        // (2λ+2)/(λ²−1) reduces to 2/(λ−1)
        let a = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let expect = RatFunc::new(p(&[2]), p(&[-1, 1])).unwrap();
        assert_eq!(coronal_oracle(&a).unwrap(), expect);
        assert_eq!(coronal(&a).unwrap(), expect);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = IntMatrix::from_i64_rows(&[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]]);
        // det = 2(4·−2 − 1·2) + 1(0·−2 − 1·5) + 3(0·2 − 4·5) = −20 − 5 − 60
        assert_eq!(bareiss_det(&m).unwrap(), BigInt::from(-85));
    }

    #[test]
    fn bareiss_singular() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(bareiss_det(&m).unwrap(), BigInt::zero());
    }

    #[test]
    fn kronecker_with_identity() {
        let j = IntMatrix::ones(1, 2);
        let k = IntMatrix::identity(2).kronecker(&j);
        assert_eq!(k, IntMatrix::from_i64_rows(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
    }

    #[test]
    fn block_assembly() {
        let m = IntMatrix::from_blocks(&[
            vec![IntMatrix::identity(2), IntMatrix::ones(2, 1)],
            vec![IntMatrix::zeros(1, 2), IntMatrix::from_i64_rows(&[&[5]])],
        ])
        .unwrap();
        assert_eq!(
            m,
            IntMatrix::from_i64_rows(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 5]])
        );
    }

    #[test]
    fn json_round_trip() {
        let m = IntMatrix::from_i64_rows(&[&[0, 1], &[-3, 7]]);
        let js = serde_json::to_string(&m).unwrap();
        assert_eq!(
            js,
            r#"{"rows":2,"cols":2,"entries":[["0","1"],["-3","7"]]}"#
        );
        let back: IntMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
    }
}

//! Dense square matrices and vectors over the max-plus semiring.
//!
//! Storage is row-major and every value is immutable after construction;
//! all operations are pure functions of their inputs. The product
//! (A ⊗ B)_{ij} = max_k (a_{ik} + b_{kj}) is the only O(n^3) kernel.

use std::fmt;

use crate::error::{MpError, Result};
use crate::scalar::MpScalar;

/// A square matrix over R ∪ {-inf}, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MpMatrix {
    n: usize,
    data: Vec<MpScalar>,
}

impl MpMatrix {
    /// All-(-inf) matrix, the additive zero.
    pub fn zero(n: usize) -> MpMatrix {
        assert!(n >= 1, "matrix dimension must be at least 1");
        MpMatrix {
            n,
            data: vec![MpScalar::ZERO; n * n],
        }
    }

    /// Identity: unit (0) on the diagonal, -inf elsewhere.
    pub fn identity(n: usize) -> MpMatrix {
        let mut m = MpMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, MpScalar::UNIT);
        }
        m
    }

    /// Builds from rows of raw floats; -inf encodes the semiring zero.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<MpMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(MpError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MpError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for &v in row {
                data.push(MpScalar::new(v)?);
            }
        }
        Ok(MpMatrix { n, data })
    }

    /// Builds an n×n matrix from a function of (row, column).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> MpScalar) -> MpMatrix {
        let mut m = MpMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> MpScalar {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: MpScalar) {
        self.data[i * self.n + j] = v;
    }

    /// Row i as a slice.
    pub fn row(&self, i: usize) -> &[MpScalar] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Column j collected into a vector.
    pub fn column(&self, j: usize) -> MpVector {
        MpVector::from_scalars((0..self.n).map(|i| self.get(i, j)).collect())
    }

    /// Elementwise maximum A ⊕ B.
    pub fn oplus(&self, rhs: &MpMatrix) -> Result<MpMatrix> {
        self.check_dim(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| a.oplus(b))
            .collect();
        Ok(MpMatrix { n: self.n, data })
    }

    /// Max-plus product: (A ⊗ B)_{ij} = max_k (a_{ik} + b_{kj}).
    pub fn matmul(&self, rhs: &MpMatrix) -> Result<MpMatrix> {
        self.check_dim(rhs)?;
        let n = self.n;
        let mut out = MpMatrix::zero(n);
        for i in 0..n {
            let arow = self.row(i);
            let orow = &mut out.data[i * n..(i + 1) * n];
            for (k, &aik) in arow.iter().enumerate() {
                if aik.is_zero() {
                    continue;
                }
                let brow = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = o.oplus(aik.otimes(b));
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product (A ⊗ x)_i = max_j (a_{ij} + x_j).
    pub fn apply(&self, x: &MpVector) -> Result<MpVector> {
        if x.len() != self.n {
            return Err(MpError::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut acc = MpScalar::ZERO;
            for (a, &xv) in self.row(i).iter().zip(x.as_slice()) {
                acc = acc.oplus(a.otimes(xv));
            }
            out.push(acc);
        }
        Ok(MpVector::from_scalars(out))
    }

    /// Exact k-th power by binary exponentiation; A^0 is the identity.
    pub fn power(&self, k: u64) -> MpMatrix {
        let mut result = MpMatrix::identity(self.n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base).expect("same dimension");
            }
        }
        result
    }

    /// Adds a finite constant to every finite entry.
    pub fn shift(&self, offset: f64) -> MpMatrix {
        let data = self.data.iter().map(|s| s.shift(offset)).collect();
        MpMatrix { n: self.n, data }
    }

    /// Entrywise comparison within eps (-inf matches only -inf).
    pub fn approx_eq(&self, rhs: &MpMatrix, eps: f64) -> bool {
        self.n == rhs.n
            && self
                .data
                .iter()
                .zip(&rhs.data)
                .all(|(&a, &b)| a.approx_eq(b, eps))
    }

    fn check_dim(&self, rhs: &MpMatrix) -> Result<()> {
        if self.n != rhs.n {
            Err(MpError::DimensionMismatch {
                expected: self.n,
                found: rhs.n,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for MpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A vector over R ∪ {-inf}.
#[derive(Debug, Clone, PartialEq)]
pub struct MpVector {
    data: Vec<MpScalar>,
}

impl MpVector {
    pub fn zero(n: usize) -> MpVector {
        MpVector {
            data: vec![MpScalar::ZERO; n],
        }
    }

    pub fn from_scalars(data: Vec<MpScalar>) -> MpVector {
        MpVector { data }
    }

    pub fn from_values(values: &[f64]) -> Result<MpVector> {
        let data = values
            .iter()
            .map(|&v| MpScalar::new(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(MpVector { data })
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> MpScalar {
        self.data[i]
    }

    pub fn set(&mut self, i: usize, v: MpScalar) {
        self.data[i] = v;
    }

    pub fn as_slice(&self) -> &[MpScalar] {
        &self.data
    }

    pub fn iter(&self) -> impl Iterator<Item = MpScalar> + '_ {
        self.data.iter().copied()
    }

    /// Elementwise maximum.
    pub fn oplus(&self, rhs: &MpVector) -> MpVector {
        assert_eq!(self.len(), rhs.len());
        MpVector::from_scalars(
            self.data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a.oplus(b))
                .collect(),
        )
    }

    pub fn approx_eq(&self, rhs: &MpVector, eps: f64) -> bool {
        self.len() == rhs.len()
            && self
                .data
                .iter()
                .zip(&rhs.data)
                .all(|(&a, &b)| a.approx_eq(b, eps))
    }
}

impl fmt::Display for MpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row: Vec<String> = self.data.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", row.join(" "))
    }
}

/// A rectangular max-plus matrix. Only the CSR factors need this shape,
/// so the surface is minimal.
#[derive(Debug, Clone, PartialEq)]
pub struct MpRect {
    rows: usize,
    cols: usize,
    data: Vec<MpScalar>,
}

impl MpRect {
    pub fn zero(rows: usize, cols: usize) -> MpRect {
        MpRect {
            rows,
            cols,
            data: vec![MpScalar::ZERO; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> MpScalar {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MpScalar) {
        self.data[i * self.cols + j] = v;
    }

    /// Rectangular max-plus product.
    pub fn matmul(&self, rhs: &MpRect) -> Result<MpRect> {
        if self.cols != rhs.rows {
            return Err(MpError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = MpRect::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).oplus(aik.otimes(rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Reinterprets a square rectangle as an `MpMatrix`.
    pub fn into_square(self) -> MpMatrix {
        assert_eq!(self.rows, self.cols);
        MpMatrix {
            n: self.rows,
            data: self.data,
        }
    }

    pub fn from_square(m: &MpMatrix) -> MpRect {
        MpRect {
            rows: m.n,
            cols: m.n,
            data: m.data.clone(),
        }
    }
}

/// One stop of the squaring chain A, A^2, A^4, ...: the power A^r for the
/// first r = 2^k at or above the requested minimum, with the multiplication
/// count that produced it.
#[derive(Debug, Clone)]
pub struct PowerTable {
    /// The exact exponent reached (a power of two, or 1).
    pub exponent: u64,
    /// A^exponent.
    pub power: MpMatrix,
    /// Number of matrix multiplications spent (= log2 of the exponent).
    pub multiplications: usize,
}

/// Raises `a` to some power r >= rmin using only squarings, returning the
/// power together with the exponent actually reached.
pub fn mp_power_residues(a: &MpMatrix, rmin: u64) -> PowerTable {
    assert!(rmin >= 1, "rmin must be at least 1");
    let mut exponent: u64 = 1;
    let mut power = a.clone();
    let mut multiplications = 0;
    while exponent < rmin {
        power = power.matmul(&power).expect("same dimension");
        exponent *= 2;
        multiplications += 1;
    }
    PowerTable {
        exponent,
        power,
        multiplications,
    }
}

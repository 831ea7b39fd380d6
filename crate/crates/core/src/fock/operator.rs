use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::{check_omega, Error, Result, C64, I};

/// Dense complex matrix representing an operator on the first `dim`
/// biorthogonal Fock levels.
///
/// Entry `(m, n)` is the pairing `ₗ⟨m|Ô|n⟩ᵣ`. The top level is a truncation
/// edge: raising maps `|dim−1⟩` to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    entries: DMatrix<C64>,
}

impl TruncatedOperator {
    pub const MIN_DIM: usize = 2;

    pub fn from_matrix(entries: DMatrix<C64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        check_dim(entries.nrows(), Self::MIN_DIM)?;
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim, Self::MIN_DIM)?;
        Ok(Self {
            entries: DMatrix::identity(dim, dim),
        })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim, Self::MIN_DIM)?;
        Ok(Self {
            entries: DMatrix::zeros(dim, dim),
        })
    }

    /// Diagonal operator with the given entries.
    pub fn diagonal(diag: &[C64]) -> Result<Self> {
        check_dim(diag.len(), Self::MIN_DIM)?;
        let dim = diag.len();
        Ok(Self {
            entries: DMatrix::from_fn(dim, dim, |r, c| if r == c { diag[r] } else { C64::new(0.0, 0.0) }),
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[(row, col)]
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            entries: &self.entries * factor,
        }
    }

    /// Matrix conjugate transpose. In the biorthogonal frame this is *not* the
    /// physical adjoint; see [`crate::fock::OperatorExpression::adjoint`].
    pub fn conj_transpose(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        same_dim(self.dim(), rhs.dim())?;
        Ok(Self {
            entries: &self.entries * &rhs.entries,
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        same_dim(self.dim(), rhs.dim())?;
        Ok(Self {
            entries: &self.entries + &rhs.entries,
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        same_dim(self.dim(), rhs.dim())?;
        Ok(Self {
            entries: &self.entries - &rhs.entries,
        })
    }

    /// Action on a coefficient vector.
    pub fn apply(&self, coeffs: &[C64]) -> Result<Vec<C64>> {
        same_dim(self.dim(), coeffs.len())?;
        let dim = self.dim();
        Ok((0..dim)
            .map(|r| (0..dim).map(|c| self.entries[(r, c)] * coeffs[c]).sum())
            .collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Largest entry magnitude of `self − other` over the leading
    /// `block × block` corner.
    pub fn max_abs_diff_on_block(&self, other: &Self, block: usize) -> Result<f64> {
        same_dim(self.dim(), other.dim())?;
        if block == 0 || block > self.dim() {
            return Err(Error::InvalidArgument(format!(
                "block {block} outside 1..={}",
                self.dim()
            )));
        }
        let mut worst = 0.0_f64;
        for r in 0..block {
            for c in 0..block {
                worst = worst.max((self.entries[(r, c)] - other.entries[(r, c)]).norm());
            }
        }
        Ok(worst)
    }

    /// Eigenvalues via complex Schur decomposition, sorted by imaginary then
    /// real part.
    pub fn eigenvalues(&self) -> Vec<C64> {
        let schur = nalgebra::Schur::new(self.entries.clone());
        let mut values: Vec<C64> = schur.unpack().1.diagonal().iter().copied().collect();
        values.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
        values
    }
}

fn check_dim(dim: usize, min: usize) -> Result<()> {
    if dim < min {
        Err(Error::InvalidDimension { dim, min })
    } else {
        Ok(())
    }
}

fn same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

impl Add for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn add(self, rhs: Self) -> TruncatedOperator {
        self.try_add(rhs).expect("operator dimensions differ")
    }
}

impl Sub for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn sub(self, rhs: Self) -> TruncatedOperator {
        self.try_sub(rhs).expect("operator dimensions differ")
    }
}

impl Mul for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn mul(self, rhs: Self) -> TruncatedOperator {
        self.try_mul(rhs).expect("operator dimensions differ")
    }
}

impl Mul<C64> for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn mul(self, rhs: C64) -> TruncatedOperator {
        self.scale(rhs)
    }
}

impl Neg for &TruncatedOperator {
    type Output = TruncatedOperator;
    fn neg(self) -> TruncatedOperator {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// `â₋`: `√n` at `(n−1, n)`.
pub fn build_lowering(dim: usize) -> Result<TruncatedOperator> {
    check_dim(dim, TruncatedOperator::MIN_DIM)?;
    let mut m = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        m[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    Ok(TruncatedOperator { entries: m })
}

/// `â₊`: `√n` at `(n, n−1)`.
pub fn build_raising(dim: usize) -> Result<TruncatedOperator> {
    check_dim(dim, TruncatedOperator::MIN_DIM)?;
    let mut m = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        m[(n, n - 1)] = C64::new((n as f64).sqrt(), 0.0);
    }
    Ok(TruncatedOperator { entries: m })
}

/// `n̂ = â₊â₋`, diagonal `0..dim−1`.
pub fn build_number(dim: usize) -> Result<TruncatedOperator> {
    Ok(&build_raising(dim)? * &build_lowering(dim)?)
}

/// `Ĥ = iω(n̂ + ½)`.
pub fn build_hamiltonian(dim: usize, omega: f64) -> Result<TruncatedOperator> {
    check_omega(omega)?;
    let shifted = &build_number(dim)? + &TruncatedOperator::identity(dim)?.scale(C64::new(0.5, 0.0));
    Ok(shifted.scale(I * omega))
}

/// `[A, B] = AB − BA`.
pub fn commutator(a: &TruncatedOperator, b: &TruncatedOperator) -> Result<TruncatedOperator> {
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

/// The `n`-th standard unit vector of length `dim`.
pub fn fock_state(dim: usize, n: usize) -> Result<Vec<C64>> {
    if n >= dim {
        return Err(Error::InvalidArgument(format!("level {n} outside truncation {dim}")));
    }
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[n] = C64::new(1.0, 0.0);
    Ok(v)
}

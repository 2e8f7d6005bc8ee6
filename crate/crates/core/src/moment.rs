//! Moment vectors `μ·h(ξ)` and rank-one Toeplitz matrices.
//!
//! `h(ξ) = [1, ξ, …, ξ^{ℓ-1}]` and `h(∞) = [0, …, 0, 1]`. A Toeplitz matrix has
//! rank one exactly when its coordinate vector is a nonzero multiple of some
//! `h(ξ)`, with `ξ` ranging over the projective line.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::structmat::{DenseMatrix, ToeplitzMatrix};

/// A point of the projective line `F ∪ {∞}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjectiveParameter<F> {
    Finite(F),
    Infinity,
}

impl<F: Field> ProjectiveParameter<F> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn finite(&self) -> Option<&F> {
        match self {
            Self::Finite(x) => Some(x),
            Self::Infinity => None,
        }
    }

    /// The scalar token, or `inf`.
    pub fn to_token(&self) -> String {
        match self {
            Self::Finite(x) => x.to_token(),
            Self::Infinity => "inf".to_string(),
        }
    }

    pub fn parse_token(token: &str) -> Result<Self> {
        if token == "inf" {
            Ok(Self::Infinity)
        } else {
            F::parse_token(token).map(Self::Finite)
        }
    }

    /// All `p + 1` points, for finite fields.
    pub fn all_points() -> Option<Vec<Self>> {
        let mut pts: Vec<Self> = F::elements()?.into_iter().map(Self::Finite).collect();
        pts.push(Self::Infinity);
        Some(pts)
    }
}

impl<F: Field> fmt::Display for ProjectiveParameter<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_token())
    }
}

/// `h(ξ)` of length `len`, without validation.
pub fn moment_curve<F: Field>(p: &ProjectiveParameter<F>, len: usize) -> Vec<F> {
    match p {
        ProjectiveParameter::Finite(x) => {
            let mut out = Vec::with_capacity(len);
            let mut acc = F::one();
            for _ in 0..len {
                out.push(acc.clone());
                acc = acc * x.clone();
            }
            out
        }
        ProjectiveParameter::Infinity => {
            let mut out = vec![F::zero(); len];
            if let Some(last) = out.last_mut() {
                *last = F::one();
            }
            out
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentVector<F> {
    scale: F,
    parameter: ProjectiveParameter<F>,
    entries: Vec<F>,
}

impl<F: Field> MomentVector<F> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self) -> &F {
        &self.scale
    }

    pub fn parameter(&self) -> &ProjectiveParameter<F> {
        &self.parameter
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<F> {
        self.entries
    }
}

/// `μ·h(ξ)` of length `ℓ >= 3`.
pub fn moment_vector<F: Field>(p: ProjectiveParameter<F>, mu: F, ell: usize) -> Result<MomentVector<F>> {
    if mu.is_zero() {
        return Err(Error::ZeroScale);
    }
    if ell < 3 {
        return Err(Error::TooSmall(ell));
    }
    let entries = moment_curve(&p, ell)
        .into_iter()
        .map(|h| mu.clone() * h)
        .collect();
    Ok(MomentVector {
        scale: mu,
        parameter: p,
        entries,
    })
}

/// `A = μ·e_1 e_nᵀ` for `ξ = ∞`, otherwise `A = μ·[ξ^{m-1}, …, 1]ᵀ[1, ξ, …, ξ^{n-1}]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankOneFactorization<F> {
    pub scale: F,
    pub parameter: ProjectiveParameter<F>,
}

impl<F: Field> RankOneFactorization<F> {
    pub fn coords(&self, ell: usize) -> Vec<F> {
        moment_curve(&self.parameter, ell)
            .into_iter()
            .map(|h| self.scale.clone() * h)
            .collect()
    }

    pub fn reconstruct(&self, m: usize, n: usize) -> Result<ToeplitzMatrix<F>> {
        ToeplitzMatrix::from_coords(m, n, self.coords(m + n - 1))
    }
}

/// Decide whether `v` is a nonzero multiple of some `h(ξ)`.
///
/// The test is that every 2x2 minor of the window matrix
/// `[[v_1 … v_{ℓ-1}], [v_2 … v_ℓ]]` vanishes. Adjacent minors alone are not
/// enough: `[1, 0, 0, 0, 1]` passes them but its Toeplitz matrix has rank 2.
pub fn moment_membership<F: Field>(v: &[F]) -> Option<RankOneFactorization<F>> {
    let len = v.len();
    if len < 2 || v.iter().all(Zero::is_zero) {
        return None;
    }
    for i in 0..len - 1 {
        for j in i + 1..len - 1 {
            if v[i].clone() * v[j + 1].clone() != v[i + 1].clone() * v[j].clone() {
                return None;
            }
        }
    }
    let found = if v[0].is_zero() {
        RankOneFactorization {
            scale: v[len - 1].clone(),
            parameter: ProjectiveParameter::Infinity,
        }
    } else {
        let xi = v[1].clone() / v[0].clone();
        RankOneFactorization {
            scale: v[0].clone(),
            parameter: ProjectiveParameter::Finite(xi),
        }
    };
    // a rank-one window with v_1 = 0 forces all but the last entry to vanish
    (found.coords(len) == v).then_some(found)
}

/// Factor a rank-one Toeplitz matrix; `None` when the rank is not one.
pub fn rank_one_toeplitz_factor<F: Field>(a: &ToeplitzMatrix<F>) -> Option<RankOneFactorization<F>> {
    moment_membership(a.coords())
}

/// The generator `X_ξ` of shape `m x n`, whose coordinates are `h(ξ)`.
pub fn rank_one_generator<F: Field>(p: &ProjectiveParameter<F>, m: usize, n: usize) -> Result<ToeplitzMatrix<F>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidShape {
            rows: m,
            cols: n,
            reason: "dimensions must be positive",
        });
    }
    ToeplitzMatrix::from_coords(m, n, moment_curve(p, m + n - 1))
}

/// Matrix whose columns are `h(ξ_1), …, h(ξ_k)`.
pub fn moment_matrix<F: Field>(points: &[ProjectiveParameter<F>], len: usize) -> DenseMatrix<F> {
    let cols: Vec<Vec<F>> = points.iter().map(|p| moment_curve(p, len)).collect();
    DenseMatrix::from_fn(len, points.len(), |i, j| cols[j][i].clone())
}

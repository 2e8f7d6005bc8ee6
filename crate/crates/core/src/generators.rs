//! The structured matrices behind rank-one preservers and the construction of
//! preserver pairs `A -> M A N`.
//!
//! Every coordinate matrix `L` of a standard preserver has one of three shapes,
//! written row by row as polynomials `P_j` with `L h(ξ) = [P_1(ξ), …, P_ℓ(ξ)]`:
//!
//! | form | `L`              | `P_j(x)`                               |
//! |------|------------------|----------------------------------------|
//! | `v`  | `γ D V(α)ᵀ`      | `γ r^{j-1} (x+α)^{j-1}`                |
//! | `vf` | `γ D F V(α)ᵀ`    | `γ r^{j-1} (x+α)^{ℓ-j}`                |
//! | `w`  | `γ D W(α,β)ᵀ`    | `γ r^{j-1} (x+α)^{j-1} (x+β)^{ℓ-j}`    |

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{binomial, powu, Field};
use crate::structmat::{DenseMatrix, ToeplitzMatrix};

/// The exchange matrix `F_n` (ones on the anti-diagonal).
pub fn flip<F: Field>(n: usize) -> DenseMatrix<F> {
    DenseMatrix::from_fn(n, n, |i, j| if i + j + 1 == n { F::one() } else { F::zero() })
}

/// `D_n(r) = diag(1, r, …, r^{n-1})`.
pub fn diag_powers<F: Field>(r: &F, n: usize) -> Result<DenseMatrix<F>> {
    if r.is_zero() {
        return Err(Error::ZeroRatio);
    }
    Ok(DenseMatrix::diagonal((0..n).map(|k| powu(r, k)).collect()))
}

/// The lower shift `Z_n`.
pub fn lower_shift<F: Field>(n: usize) -> DenseMatrix<F> {
    DenseMatrix::from_fn(n, n, |i, j| if i == j + 1 { F::one() } else { F::zero() })
}

/// The lower Jordan block `J_α = αI + Z_n`.
pub fn jordan<F: Field>(alpha: &F, n: usize) -> DenseMatrix<F> {
    DenseMatrix::from_fn(n, n, |i, j| {
        if i == j {
            alpha.clone()
        } else if i == j + 1 {
            F::one()
        } else {
            F::zero()
        }
    })
}

// v -> J_α v without forming the matrix
fn jordan_apply<F: Field>(alpha: &F, v: &[F]) -> Vec<F> {
    (0..v.len())
        .map(|i| {
            let below = if i == 0 { F::zero() } else { v[i - 1].clone() };
            alpha.clone() * v[i].clone() + below
        })
        .collect()
}

/// Confluent Vandermonde matrix: entry `(i, j)` is `C(j, i) α^{j-i}`, so that
/// `[1, x, …, x^{n-1}] V_n(α) = [1, x+α, …, (x+α)^{n-1}]`.
pub fn confluent_vandermonde<F: Field>(alpha: &F, n: usize) -> DenseMatrix<F> {
    DenseMatrix::from_fn(n, n, |i, j| {
        if i > j {
            F::zero()
        } else {
            binomial::<F>(j, i) * powu(alpha, j - i)
        }
    })
}

/// `W_n(α, β)`: column `j` (0-based) is `J_β^{n-1-j} J_α^j e_1`.
pub fn w_matrix<F: Field>(alpha: &F, beta: &F, n: usize) -> DenseMatrix<F> {
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = vec![F::zero(); n];
        v[0] = F::one();
        for _ in 0..j {
            v = jordan_apply(alpha, &v);
        }
        for _ in j + 1..n {
            v = jordan_apply(beta, &v);
        }
        cols.push(v);
    }
    DenseMatrix::from_fn(n, n, |i, j| cols[j][i].clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PreserverForm {
    Vandermonde,
    VandermondeFlip,
    WForm,
}

impl PreserverForm {
    pub const ALL: [Self; 3] = [Self::Vandermonde, Self::VandermondeFlip, Self::WForm];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Vandermonde => "v",
            Self::VandermondeFlip => "vf",
            Self::WForm => "w",
        }
    }
}

impl fmt::Display for PreserverForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for PreserverForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "v" => Ok(Self::Vandermonde),
            "vf" => Ok(Self::VandermondeFlip),
            "w" => Ok(Self::WForm),
            _ => Err(Error::Parse {
                what: "preserver form",
                token: s.to_string(),
            }),
        }
    }
}

/// Parameters of a standard preserver. `beta` is present exactly for the W form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSpec<F> {
    pub form: PreserverForm,
    pub gamma: F,
    pub r: F,
    pub alpha: F,
    pub beta: Option<F>,
}

impl<F: Field> GeneratorSpec<F> {
    pub fn vandermonde(gamma: F, r: F, alpha: F) -> Self {
        Self {
            form: PreserverForm::Vandermonde,
            gamma,
            r,
            alpha,
            beta: None,
        }
    }

    pub fn vandermonde_flip(gamma: F, r: F, alpha: F) -> Self {
        Self {
            form: PreserverForm::VandermondeFlip,
            gamma,
            r,
            alpha,
            beta: None,
        }
    }

    pub fn w_form(gamma: F, r: F, alpha: F, beta: F) -> Self {
        Self {
            form: PreserverForm::WForm,
            gamma,
            r,
            alpha,
            beta: Some(beta),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.gamma.is_zero() {
            return Err(Error::InvalidSpec("gamma must be nonzero"));
        }
        if self.r.is_zero() {
            return Err(Error::InvalidSpec("r must be nonzero"));
        }
        match (self.form, &self.beta) {
            (PreserverForm::WForm, None) => Err(Error::InvalidSpec("the w form needs beta")),
            (PreserverForm::WForm, Some(b)) if *b == self.alpha => {
                Err(Error::InvalidSpec("the w form needs alpha != beta"))
            }
            (PreserverForm::Vandermonde | PreserverForm::VandermondeFlip, Some(_)) => {
                Err(Error::InvalidSpec("beta only applies to the w form"))
            }
            _ => Ok(()),
        }
    }

    /// The right factor `N` at size `n`.
    pub fn right_factor(&self, n: usize) -> Result<DenseMatrix<F>> {
        self.validate()?;
        let d = diag_powers(&self.r, n)?;
        let base = match self.form {
            PreserverForm::Vandermonde => confluent_vandermonde(&self.alpha, n),
            PreserverForm::VandermondeFlip => &confluent_vandermonde(&self.alpha, n) * &flip(n),
            PreserverForm::WForm => w_matrix(&self.alpha, self.beta.as_ref().expect("validated"), n),
        };
        Ok(&base * &d)
    }
}

/// A pair `(M, N)` acting on `m x n` Toeplitz matrices by `A -> M A N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreserverPair<F> {
    pub left: DenseMatrix<F>,
    pub right: DenseMatrix<F>,
    pub spec: GeneratorSpec<F>,
}

impl<F: Field> PreserverPair<F> {
    pub fn rows(&self) -> usize {
        self.left.rows()
    }

    pub fn cols(&self) -> usize {
        self.right.cols()
    }

    pub fn apply(&self, a: &ToeplitzMatrix<F>) -> Result<ToeplitzMatrix<F>> {
        let image = self.left.matmul(&a.dense())?.matmul(&self.right)?;
        ToeplitzMatrix::from_dense(&image)
    }

    /// The same map written on Hankel matrices `H = F_m A`: `H -> (F_m M F_m) H N`.
    /// In the square case the left factor is `γ Nᵀ`.
    pub fn hankel_form(&self) -> (DenseMatrix<F>, DenseMatrix<F>) {
        let fm = flip(self.rows());
        (&(&fm * &self.left) * &fm, self.right.clone())
    }
}

/// Build `(M, N)` for `2 <= m <= n`. With `N_k` the right factor of the form at
/// size `k`, the pair is `M = γ F_m N_mᵀ F_m`, `N = N_n`; for `m = n` this is
/// `M = γ F_n Nᵀ F_n`.
pub fn build_preserver<F: Field>(spec: &GeneratorSpec<F>, m: usize, n: usize) -> Result<PreserverPair<F>> {
    spec.validate()?;
    if m < 2 || m > n {
        return Err(Error::InvalidShape {
            rows: m,
            cols: n,
            reason: "preservers need 2 <= m <= n",
        });
    }
    let fm = flip(m);
    let left = (&(&fm * &spec.right_factor(m)?.transpose()) * &fm).scale(&spec.gamma);
    Ok(PreserverPair {
        left,
        right: spec.right_factor(n)?,
        spec: spec.clone(),
    })
}

/// Coordinate matrix of `A -> M A N` on `m x n` Toeplitz matrices, where
/// `M` is `m x m` and `N` is `n x n`. Each basis image is checked to be
/// Toeplitz.
pub fn induced_coordinate_matrix_of<F: Field>(left: &DenseMatrix<F>, right: &DenseMatrix<F>) -> Result<DenseMatrix<F>> {
    let (m, n) = (left.rows(), right.cols());
    if !left.is_square() || !right.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "factors must be square, got {}x{} and {}x{}",
            left.rows(),
            left.cols(),
            right.rows(),
            right.cols()
        )));
    }
    let ell = m + n - 1;
    let mut cols = Vec::with_capacity(ell);
    for k in 0..ell {
        let mut e = vec![F::zero(); ell];
        e[k] = F::one();
        let basis = ToeplitzMatrix::from_coords(m, n, e)?;
        let image = left.matmul(&basis.dense())?.matmul(right)?;
        let t = ToeplitzMatrix::from_dense(&image).map_err(|_| Error::NotToeplitzClosed { index: k })?;
        cols.push(t.into_coords());
    }
    Ok(DenseMatrix::from_fn(ell, ell, |i, j| cols[j][i].clone()))
}

pub fn induced_coordinate_matrix<F: Field>(pair: &PreserverPair<F>) -> Result<DenseMatrix<F>> {
    induced_coordinate_matrix_of(&pair.left, &pair.right)
}

/// The coordinate matrix of the standard preserver, computed directly at
/// length `ℓ` (see the module table).
pub fn canonical_coordinate_matrix<F: Field>(spec: &GeneratorSpec<F>, ell: usize) -> Result<DenseMatrix<F>> {
    spec.validate()?;
    let d = diag_powers(&spec.r, ell)?;
    let core = match spec.form {
        PreserverForm::Vandermonde => confluent_vandermonde(&spec.alpha, ell).transpose(),
        PreserverForm::VandermondeFlip => &flip(ell) * &confluent_vandermonde(&spec.alpha, ell).transpose(),
        PreserverForm::WForm => w_matrix(&spec.alpha, spec.beta.as_ref().expect("validated"), ell).transpose(),
    };
    Ok((&d * &core).scale(&spec.gamma))
}

//! Classification of coordinate matrices `L` with `L(R) ⊆ R`, where `R` is the
//! set of rank-one coordinate vectors.
//!
//! An invertible `L` preserves `R` exactly when it is one of the three standard
//! forms (see [`crate::generators`]); a rank-one `L = b cᵀ` preserves `R` when
//! `b ∈ R` and `cᵀh(ξ)` never vanishes on the projective line. Everything else
//! fails. Accepted forms are always certified by rebuilding `L` exactly.

use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::generators::{build_preserver, canonical_coordinate_matrix, GeneratorSpec, PreserverForm};
use crate::moment::{moment_curve, moment_membership, moment_vector, MomentVector, ProjectiveParameter};
use crate::poly::{gcd, has_root, rational_roots, recover_linear_power, Polynomial};
use crate::scalar::{powu, Field};
use crate::structmat::{DenseMatrix, ToeplitzMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreserverVerdict<F> {
    /// `witness` is a point whose image leaves `R`; `None` when the failure
    /// happens only outside the field itself (an irrational real root over the
    /// rationals, a non-Gaussian complex root over `Q(i)`).
    NotPreserver { witness: Option<ProjectiveParameter<F>> },
    Canonical { spec: GeneratorSpec<F> },
    /// `L = h cᵀ` with `h = h(η)` of unit scale.
    RankOneFunctional { h: MomentVector<F>, c: Vec<F> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PreserverKind {
    Vandermonde,
    VFlip,
    W,
    RankOneFunctional,
    None,
}

impl PreserverKind {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Vandermonde => "v",
            Self::VFlip => "vf",
            Self::W => "w",
            Self::RankOneFunctional => "rank-one-functional",
            Self::None => "none",
        }
    }
}

impl fmt::Display for PreserverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl<F: Field> PreserverVerdict<F> {
    pub fn is_preserver(&self) -> bool {
        !matches!(self, Self::NotPreserver { .. })
    }

    pub fn is_canonical(&self) -> bool {
        matches!(self, Self::Canonical { .. })
    }

    pub fn kind(&self) -> PreserverKind {
        match self {
            Self::NotPreserver { .. } => PreserverKind::None,
            Self::RankOneFunctional { .. } => PreserverKind::RankOneFunctional,
            Self::Canonical { spec } => match spec.form {
                PreserverForm::Vandermonde => PreserverKind::Vandermonde,
                PreserverForm::VandermondeFlip => PreserverKind::VFlip,
                PreserverForm::WForm => PreserverKind::W,
            },
        }
    }

    pub fn spec(&self) -> Option<&GeneratorSpec<F>> {
        match self {
            Self::Canonical { spec } => Some(spec),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&ProjectiveParameter<F>> {
        match self {
            Self::NotPreserver { witness } => witness.as_ref(),
            _ => None,
        }
    }

    /// The coordinate matrix described by an accepting verdict.
    pub fn coordinate_matrix(&self, ell: usize) -> Result<DenseMatrix<F>> {
        match self {
            Self::Canonical { spec } => canonical_coordinate_matrix(spec, ell),
            Self::RankOneFunctional { h, c } => Ok(DenseMatrix::outer(h.entries(), c)),
            Self::NotPreserver { .. } => Err(Error::NotCanonical),
        }
    }
}

/// Whether the classification theorem is known to be complete over `F` at this
/// size: always for the infinite fields, and for `GF(p)` when `p >= ℓ² + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Proven,
    SmallField,
}

impl Regime {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Proven => "proven",
            Self::SmallField => "small-field",
        }
    }
}

pub fn regime<F: Field>(ell: usize) -> Regime {
    match F::descriptor().order() {
        Some(p) if (p as u128) < (ell as u128) * (ell as u128) + 1 => Regime::SmallField,
        _ => Regime::Proven,
    }
}

/// Rows of `L` read as polynomials: `P_j(x) = Σ_k L[j][k] x^k`, so that
/// `L h(ξ) = [P_1(ξ), …, P_ℓ(ξ)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowPolynomialProfile<F> {
    pub polynomials: Vec<Polynomial<F>>,
    /// Leading coefficients, zero for zero rows.
    pub leading: Vec<F>,
    pub degrees: Vec<Option<usize>>,
}

impl<F: Field> RowPolynomialProfile<F> {
    pub fn of(l: &DenseMatrix<F>) -> Self {
        let polynomials: Vec<Polynomial<F>> = (0..l.rows()).map(|j| Polynomial::new(l.row(j).to_vec())).collect();
        let leading = polynomials
            .iter()
            .map(|p| p.leading_coeff().cloned().unwrap_or_else(F::zero))
            .collect();
        let degrees = polynomials.iter().map(Polynomial::degree).collect();
        Self {
            polynomials,
            leading,
            degrees,
        }
    }

    /// `P_{j-1} P_{j+1} = P_j²` for every interior `j`.
    pub fn adjacent_identities_hold(&self) -> bool {
        self.polynomials
            .windows(3)
            .all(|w| &w[0] * &w[2] == &w[1] * &w[1])
    }

    pub fn leading_geometric(&self) -> bool {
        self.leading
            .windows(3)
            .all(|w| w[0].clone() * w[2].clone() == w[1].clone() * w[1].clone())
    }
}

fn check_input<F: Field>(l: &DenseMatrix<F>) -> Result<usize> {
    if !l.is_square() {
        return Err(Error::NonSquare {
            rows: l.rows(),
            cols: l.cols(),
        });
    }
    if l.rows() < 3 {
        return Err(Error::TooSmall(l.rows()));
    }
    Ok(l.rows())
}

/// `L h(ξ)` for a projective point.
pub fn image_of<F: Field>(l: &DenseMatrix<F>, p: &ProjectiveParameter<F>) -> Vec<F> {
    l.mul_vec(&moment_curve(p, l.cols())).expect("square coordinate matrix")
}

fn fails_at<F: Field>(l: &DenseMatrix<F>, p: &ProjectiveParameter<F>) -> bool {
    moment_membership(&image_of(l, p)).is_none()
}

/// Points tried when looking for a witness: all of them over a finite field;
/// `∞, 0, 1, -1, 2, -2, …` otherwise. A nonzero polynomial condition of
/// degree below `2ℓ - 1` fails at one of the first `2ℓ - 1` finite points, and
/// a kernel meeting the moment curve in more than `(ℓ-1)²` points would
/// contain it, so the infinite-field list has `max((ℓ-1)² + 1, 2ℓ - 1)` finite
/// points.
pub fn witness_candidates<F: Field>(ell: usize) -> Vec<ProjectiveParameter<F>> {
    let mut out = vec![ProjectiveParameter::Infinity];
    match F::elements() {
        Some(els) => out.extend(els.into_iter().map(ProjectiveParameter::Finite)),
        None => {
            let count = ((ell - 1) * (ell - 1) + 1).max(2 * ell - 1) as i64;
            out.push(ProjectiveParameter::Finite(F::zero()));
            let mut k = 1;
            while (out.len() as i64) < count + 1 {
                out.push(ProjectiveParameter::Finite(F::from_i64(k)));
                out.push(ProjectiveParameter::Finite(F::from_i64(-k)));
                k += 1;
            }
        }
    }
    out
}

pub fn find_witness<F: Field>(l: &DenseMatrix<F>) -> Option<ProjectiveParameter<F>> {
    witness_candidates::<F>(l.rows()).into_iter().find(|p| fails_at(l, p))
}

fn not_preserver<F: Field>(l: &DenseMatrix<F>) -> PreserverVerdict<F> {
    PreserverVerdict::NotPreserver { witness: find_witness(l) }
}

/// Decide whether `L` maps `R` into itself.
pub fn classify<F: Field>(l: &DenseMatrix<F>) -> Result<PreserverVerdict<F>> {
    let ell = check_input(l)?;
    if l.is_zero() {
        return Ok(PreserverVerdict::NotPreserver {
            witness: Some(ProjectiveParameter::Finite(F::zero())),
        });
    }
    let rank = l.rank();
    if rank == 1 {
        return classify_rank_one(l);
    }
    if rank < ell {
        return Ok(not_preserver(l));
    }
    Ok(match classify_invertible(l)? {
        Some(spec) => PreserverVerdict::Canonical { spec },
        None => not_preserver(l),
    })
}

fn classify_rank_one<F: Field>(l: &DenseMatrix<F>) -> Result<PreserverVerdict<F>> {
    let ell = l.rows();
    let col = (0..ell).find(|&j| !l.column(j).iter().all(Zero::is_zero)).expect("rank one");
    let b = l.column(col);
    let pivot = b.iter().position(|x| !x.is_zero()).expect("nonzero column");
    let c: Vec<F> = l.row(pivot).iter().map(|x| x.clone() / b[pivot].clone()).collect();
    let Some(factor) = moment_membership(&b) else {
        return Ok(not_preserver(l));
    };
    let functional = Polynomial::new(c.clone());
    let blocked = c[0].is_zero() || c[ell - 1].is_zero() || has_root(&functional)?;
    if blocked {
        let witness = find_witness(l).or_else(|| rational_root_witness(&functional));
        return Ok(PreserverVerdict::NotPreserver { witness });
    }
    let h = moment_vector(factor.parameter, F::one(), ell)?;
    let c = c.into_iter().map(|x| x * factor.scale.clone()).collect();
    Ok(PreserverVerdict::RankOneFunctional { h, c })
}

fn rational_root_witness<F: Field>(p: &Polynomial<F>) -> Option<ProjectiveParameter<F>> {
    let root = rational_roots(p).ok()??.into_iter().next()?;
    let x = F::from_bigint(root.numer()) / F::from_bigint(root.denom());
    Some(ProjectiveParameter::Finite(x))
}

/// Recover the parameters of an invertible `L`; `None` if it has none of the
/// standard forms.
fn classify_invertible<F: Field>(l: &DenseMatrix<F>) -> Result<Option<GeneratorSpec<F>>> {
    let ell = l.rows();
    let prof = RowPolynomialProfile::of(l);
    if prof.degrees.iter().any(Option::is_none) || !prof.adjacent_identities_hold() || !prof.leading_geometric() {
        return Ok(None);
    }
    let deg: Vec<usize> = prof.degrees.iter().map(|d| d.expect("checked")).collect();
    let gamma = prof.leading[0].clone();
    let r = prof.leading[1].clone() / gamma.clone();
    let shift = |p: &Polynomial<F>| -> Result<Option<F>> { Ok(recover_linear_power(p)?.map(|f| f.root_shift)) };
    let spec = if (0..ell).all(|j| deg[j] == j) {
        let Some(alpha) = shift(&prof.polynomials[1])? else {
            return Ok(None);
        };
        GeneratorSpec::vandermonde(gamma, r, alpha)
    } else if (0..ell).all(|j| deg[j] == ell - 1 - j) {
        let Some(alpha) = shift(&prof.polynomials[ell - 2])? else {
            return Ok(None);
        };
        GeneratorSpec::vandermonde_flip(gamma, r, alpha)
    } else if deg.iter().all(|&d| d == ell - 1) {
        let (Some(beta), Some(alpha)) = (shift(&prof.polynomials[0])?, shift(&prof.polynomials[ell - 1])?) else {
            return Ok(None);
        };
        GeneratorSpec::w_form(gamma, r, alpha, beta)
    } else {
        return Ok(None);
    };
    if spec.validate().is_err() {
        return Ok(None);
    }
    Ok((canonical_coordinate_matrix(&spec, ell)? == *l).then_some(spec))
}

/// Determinant data of a square canonical preserver on `n x n` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantReport<F> {
    pub det_left: F,
    pub det_right: F,
    /// `det(M) det(N)`; the map preserves determinants exactly when this is 1.
    pub product: F,
    pub holds: bool,
    /// `γ^n r^{n(n-1)}`.
    pub gamma_r_factor: F,
    /// `(α - β)^{n(n-1)}`, W form only.
    pub alpha_beta_factor: Option<F>,
    /// Both factors equal to 1 (sufficient, not necessary).
    pub factored_conditions_hold: bool,
}

pub fn determinant_report<F: Field>(verdict: &PreserverVerdict<F>, n: usize) -> Result<DeterminantReport<F>> {
    let spec = verdict.spec().ok_or(Error::NotCanonical)?;
    let pair = build_preserver(spec, n, n)?;
    let det_left = pair.left.det()?;
    let det_right = pair.right.det()?;
    let product = det_left.clone() * det_right.clone();
    let e = n * (n - 1);
    let gamma_r_factor = powu(&spec.gamma, n) * powu(&spec.r, e);
    let alpha_beta_factor = spec.beta.as_ref().map(|b| powu(&(spec.alpha.clone() - b.clone()), e));
    let factored_conditions_hold =
        gamma_r_factor.is_one() && alpha_beta_factor.as_ref().is_none_or(|f| f.is_one());
    Ok(DeterminantReport {
        holds: product.is_one(),
        det_left,
        det_right,
        product,
        gamma_r_factor,
        alpha_beta_factor,
        factored_conditions_hold,
    })
}

pub fn is_determinant_preserver<F: Field>(verdict: &PreserverVerdict<F>, n: usize) -> Result<(bool, DeterminantReport<F>)> {
    let report = determinant_report(verdict, n)?;
    Ok((report.holds, report))
}

/// `L` maps `R` onto `R`: both `L` and `L⁻¹` are canonical, and over a finite
/// field the induced map on projective points is a bijection.
pub fn is_strong_preserver<F: Field>(l: &DenseMatrix<F>) -> bool {
    let canonical = |m: &DenseMatrix<F>| classify(m).is_ok_and(|v| v.is_canonical());
    if !canonical(l) {
        return false;
    }
    let Ok(inv) = l.inverse() else {
        return false;
    };
    if !canonical(&inv) {
        return false;
    }
    match ProjectiveParameter::<F>::all_points() {
        None => true,
        Some(points) => {
            let images: Option<HashSet<ProjectiveParameter<F>>> = points
                .iter()
                .map(|p| moment_membership(&image_of(l, p)).map(|f| f.parameter))
                .collect();
            images.is_some_and(|s| s.len() == points.len())
        }
    }
}

/// Rank preservers on square Toeplitz matrices are exactly the canonical forms.
pub fn is_rank_preserver<F: Field>(l: &DenseMatrix<F>, n: usize) -> bool {
    l.rows() == 2 * n - 1 && classify(l).is_ok_and(|v| v.is_canonical())
}

/// Apply a coordinate matrix to a square Toeplitz matrix.
pub fn apply_coordinate_matrix<F: Field>(l: &DenseMatrix<F>, a: &ToeplitzMatrix<F>) -> Result<ToeplitzMatrix<F>> {
    ToeplitzMatrix::from_coords(a.rows(), a.cols(), l.mul_vec(a.coords())?)
}

/// Sample Toeplitz `A` of size `n` and return one with `rank T(A) != rank A`.
pub fn rank_preservation_counterexample<F: Field, R: Rng + ?Sized>(
    l: &DenseMatrix<F>,
    n: usize,
    samples: usize,
    rng: &mut R,
) -> Result<Option<ToeplitzMatrix<F>>> {
    for _ in 0..samples {
        let a = ToeplitzMatrix::square(n, (0..2 * n - 1).map(|_| F::sample(rng)).collect())?;
        if apply_coordinate_matrix(l, &a)?.rank() != a.rank() {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralTargetReport<F> {
    /// gcd of the entries of `u(x) = M [x^{n-1}, …, 1]ᵀ`; `None` when `u ≡ 0`.
    pub left_gcd: Option<Polynomial<F>>,
    /// gcd of the entries of `v(x) = [1, …, x^{n-1}] N`.
    pub right_gcd: Option<Polynomial<F>>,
    pub left_root_free: bool,
    pub right_root_free: bool,
    /// `M e_1 != 0` and `e_nᵀ N != 0`.
    pub infinity_ok: bool,
    pub holds: bool,
}

fn gcd_all<F: Field>(polys: impl IntoIterator<Item = Polynomial<F>>) -> Option<Polynomial<F>> {
    polys
        .into_iter()
        .filter(|p| !p.is_zero())
        .reduce(|a, b| gcd(&a, &b).expect("nonzero operands"))
        .map(|g| g.monic())
}

/// Check whether `A -> M A N` sends rank-one Toeplitz matrices to rank-one
/// matrices (of any structure).
pub fn verify_general_target<F: Field>(m: &DenseMatrix<F>, n_mat: &DenseMatrix<F>) -> Result<(bool, GeneralTargetReport<F>)> {
    for a in [m, n_mat] {
        if !a.is_square() {
            return Err(Error::NonSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
    }
    let n = m.rows();
    if n_mat.rows() != n {
        return Err(Error::DimensionMismatch(format!("left factor is {n}x{n}, right factor is {0}x{0}", n_mat.rows())));
    }
    let u = (0..n).map(|i| Polynomial::new((0..n).map(|k| m[(i, n - 1 - k)].clone()).collect()));
    let v = (0..n).map(|j| Polynomial::new(n_mat.column(j)));
    let left_gcd = gcd_all(u);
    let right_gcd = gcd_all(v);
    let root_free = |g: &Option<Polynomial<F>>| -> Result<bool> {
        match g {
            None => Ok(false),
            Some(g) => Ok(!has_root(g)?),
        }
    };
    let left_root_free = root_free(&left_gcd)?;
    let right_root_free = root_free(&right_gcd)?;
    let infinity_ok = !m.column(0).iter().all(Zero::is_zero) && !n_mat.row(n - 1).iter().all(Zero::is_zero);
    let holds = left_root_free && right_root_free && infinity_ok;
    Ok((
        holds,
        GeneralTargetReport {
            left_gcd,
            right_gcd,
            left_root_free,
            right_root_free,
            infinity_ok,
            holds,
        },
    ))
}

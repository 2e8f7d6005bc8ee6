//! Brute-force ground truth: direct checks of `L(R) ⊆ R`, rank-one censuses
//! and classifier-versus-oracle comparisons.
//!
//! Over a prime field the direct check is complete (every projective point is
//! tested). Over the infinite fields it samples points and can only refute.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classifier::{classify, image_of, regime, PreserverVerdict, Regime};
use crate::error::{Error, Result};
use crate::generators::{canonical_coordinate_matrix, GeneratorSpec};
use crate::moment::{moment_curve, moment_membership, ProjectiveParameter};
use crate::poly::{has_root, Polynomial};
use crate::scalar::{Field, FieldDescriptor};
use crate::structmat::{DenseMatrix, ToeplitzMatrix};

/// Default cap on the number of items an enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 50_000_000;
/// Sampled points per check over the infinite fields.
pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_SEED: u64 = 42;

/// All `p + 1` points of the projective line over a prime field.
pub fn projective_points<F: Field>() -> Result<Vec<ProjectiveParameter<F>>> {
    ProjectiveParameter::all_points().ok_or(Error::InfiniteField(F::descriptor()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectCheck<F> {
    pub preserver: bool,
    pub witness: Option<ProjectiveParameter<F>>,
    pub points_checked: usize,
    /// True when every projective point was checked.
    pub complete: bool,
}

fn check_points<F: Field>(l: &DenseMatrix<F>, points: impl IntoIterator<Item = ProjectiveParameter<F>>, complete: bool) -> DirectCheck<F> {
    let mut checked = 0;
    for p in points {
        checked += 1;
        if moment_membership(&image_of(l, &p)).is_none() {
            return DirectCheck {
                preserver: false,
                witness: Some(p),
                points_checked: checked,
                complete,
            };
        }
    }
    DirectCheck {
        preserver: true,
        witness: None,
        points_checked: checked,
        complete,
    }
}

/// `L h(ξ) ∈ R` at `∞` and then at `samples` random points (all points over a
/// prime field, where `samples` and `seed` are ignored).
pub fn direct_preserver_check_with<F: Field>(l: &DenseMatrix<F>, samples: usize, seed: u64) -> DirectCheck<F> {
    if let Some(points) = ProjectiveParameter::all_points() {
        // ∞ first, matching the classifier's witness order
        let mut ordered = vec![ProjectiveParameter::Infinity];
        ordered.extend(points.into_iter().filter(|p| !p.is_infinite()));
        return check_points(l, ordered, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled: Vec<ProjectiveParameter<F>> = (0..samples).map(|_| ProjectiveParameter::Finite(F::sample(&mut rng))).collect();
    check_points(l, std::iter::once(ProjectiveParameter::Infinity).chain(sampled), false)
}

pub fn direct_preserver_check<F: Field>(l: &DenseMatrix<F>) -> DirectCheck<F> {
    direct_preserver_check_with(l, DEFAULT_SAMPLES, DEFAULT_SEED)
}

fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        Err(Error::BudgetExceeded { required, budget })
    } else {
        Ok(())
    }
}

/// `p^k`, saturating.
fn count_vectors(p: u64, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, _| acc.saturating_mul(p as u128))
}

/// The vector with base-`p` digits of `code`, least significant first.
fn decode<F: Field>(els: &[F], mut code: u128, len: usize) -> Vec<F> {
    let p = els.len() as u128;
    (0..len)
        .map(|_| {
            let d = (code % p) as usize;
            code /= p;
            els[d].clone()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census<F> {
    pub field: FieldDescriptor,
    pub rows: usize,
    pub cols: usize,
    /// Coordinate vectors whose dense matrix has rank one, found by elimination.
    pub by_rank: Vec<Vec<F>>,
    /// The vectors `μ h(ξ)` built from the parametrization.
    pub by_parameters: Vec<Vec<F>>,
    pub agree: bool,
}

impl<F: Field> Census<F> {
    pub fn count(&self) -> usize {
        self.by_rank.len()
    }
}

/// Count rank-one `m x n` Toeplitz matrices over a prime field twice: by exact
/// rank over all `p^{m+n-1}` coordinate vectors, and through `μ h(ξ)`.
pub fn rank_one_census<F: Field>(m: usize, n: usize, budget: u128) -> Result<Census<F>> {
    let els = F::elements().ok_or(Error::InfiniteField(F::descriptor()))?;
    let ell = m + n - 1;
    ToeplitzMatrix::from_coords(m, n, vec![F::zero(); ell])?;
    let total = count_vectors(els.len() as u64, ell);
    check_budget(total, budget)?;
    let by_rank: Vec<Vec<F>> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let v = decode(&els, code, ell);
            let a = ToeplitzMatrix::from_coords(m, n, v).expect("valid shape");
            (a.rank() == 1).then(|| a.into_coords())
        })
        .collect();
    let mut by_parameters = Vec::new();
    for p in projective_points::<F>()? {
        let h = moment_curve(&p, ell);
        for mu in els.iter().filter(|x| !x.is_zero()) {
            by_parameters.push(h.iter().map(|x| x.clone() * mu.clone()).collect());
        }
    }
    let a: HashSet<&Vec<F>> = by_rank.iter().collect();
    let b: HashSet<&Vec<F>> = by_parameters.iter().collect();
    let agree = a == b && b.len() == by_parameters.len();
    Ok(Census {
        field: F::descriptor(),
        rows: m,
        cols: n,
        by_rank,
        by_parameters,
        agree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Every standard preserver on the full parameter grid plus every
    /// rank-one functional candidate.
    Families,
    /// Uniform random `L`.
    Random { samples: usize, seed: u64 },
    /// Every `L` in `F^{ℓ x ℓ}`.
    Exhaustive,
}

impl OracleMode {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Families => "families",
            Self::Random { .. } => "random",
            Self::Exhaustive => "exhaustive",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Self::Random { seed, .. } => Some(*seed),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement<F> {
    pub matrix: DenseMatrix<F>,
    pub classifier: PreserverVerdict<F>,
    pub oracle: bool,
    pub witness: Option<ProjectiveParameter<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport<F> {
    pub field: FieldDescriptor,
    pub ell: usize,
    pub mode: OracleMode,
    pub tested: u64,
    pub agreements: u64,
    pub disagreements: Vec<Disagreement<F>>,
    /// Inputs the classifier accepted (canonical or rank-one functional).
    pub classifier_accepted: u64,
    pub oracle_accepted: u64,
    pub regime: Regime,
}

impl<F: Field> OracleReport<F> {
    pub fn seed(&self) -> Option<u64> {
        self.mode.seed()
    }
}

struct Outcome<F> {
    accepted: bool,
    oracle: bool,
    disagreement: Option<Disagreement<F>>,
}

fn compare_one<F: Field>(l: DenseMatrix<F>) -> Result<Outcome<F>> {
    let verdict = classify(&l)?;
    let direct = direct_preserver_check(&l);
    let accepted = verdict.is_preserver();
    let disagreement = (accepted != direct.preserver).then(|| Disagreement {
        matrix: l,
        classifier: verdict,
        oracle: direct.preserver,
        witness: direct.witness,
    });
    Ok(Outcome {
        accepted,
        oracle: direct.preserver,
        disagreement,
    })
}

/// All rank-one functional candidates `h(η) cᵀ`: `c` ranges over vectors with
/// `c_ℓ != 0` whose polynomial has no root in the field.
pub fn functional_candidates<F: Field>(ell: usize, budget: u128) -> Result<Vec<DenseMatrix<F>>> {
    let els = F::elements().ok_or(Error::InfiniteField(F::descriptor()))?;
    let total = count_vectors(els.len() as u64, ell);
    check_budget(total, budget)?;
    let cs: Vec<Vec<F>> = (0..total)
        .into_par_iter()
        .map(|code| decode(&els, code, ell))
        .filter(|c| !c[ell - 1].is_zero() && !has_root(&Polynomial::new(c.clone())).expect("prime field"))
        .collect();
    let mut out = Vec::new();
    for eta in projective_points::<F>()? {
        let h = moment_curve(&eta, ell);
        out.extend(cs.iter().map(|c| DenseMatrix::outer(&h, c)));
    }
    Ok(out)
}

/// Every spec on the grid `γ, r ∈ F*`, `α, β ∈ F`, `α != β`.
pub fn family_grid<F: Field>() -> Result<Vec<GeneratorSpec<F>>> {
    let els = F::elements().ok_or(Error::InfiniteField(F::descriptor()))?;
    let units: Vec<F> = els.iter().filter(|x| !x.is_zero()).cloned().collect();
    let mut out = Vec::new();
    for g in &units {
        for r in &units {
            for a in &els {
                out.push(GeneratorSpec::vandermonde(g.clone(), r.clone(), a.clone()));
                out.push(GeneratorSpec::vandermonde_flip(g.clone(), r.clone(), a.clone()));
                for b in els.iter().filter(|b| *b != a) {
                    out.push(GeneratorSpec::w_form(g.clone(), r.clone(), a.clone(), b.clone()));
                }
            }
        }
    }
    Ok(out)
}

fn inputs<F: Field>(ell: usize, mode: OracleMode, budget: u128) -> Result<Vec<DenseMatrix<F>>> {
    match mode {
        OracleMode::Families => {
            let grid = family_grid::<F>()?;
            check_budget(grid.len() as u128, budget)?;
            let mut out: Vec<DenseMatrix<F>> = grid
                .par_iter()
                .map(|spec| canonical_coordinate_matrix(spec, ell))
                .collect::<Result<_>>()?;
            out.extend(functional_candidates(ell, budget)?);
            Ok(out)
        }
        OracleMode::Random { samples, seed } => {
            check_budget(samples as u128, budget)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..samples)
                .map(|_| DenseMatrix::from_fn(ell, ell, |_, _| F::sample(&mut rng)))
                .collect())
        }
        OracleMode::Exhaustive => {
            let els = F::elements().ok_or(Error::InfiniteField(F::descriptor()))?;
            let total = count_vectors(els.len() as u64, ell * ell);
            check_budget(total, budget)?;
            Ok((0..total)
                .into_par_iter()
                .map(|code| DenseMatrix::new(ell, ell, decode(&els, code, ell * ell)).expect("sized"))
                .collect())
        }
    }
}

/// Classify every input of the mode and compare with the direct check.
/// Results are merged in input order, so the report does not depend on the
/// thread count.
pub fn compare_classifier_oracle<F: Field>(ell: usize, mode: OracleMode, budget: u128) -> Result<OracleReport<F>> {
    if ell < 3 {
        return Err(Error::TooSmall(ell));
    }
    let ls = inputs::<F>(ell, mode, budget)?;
    let outcomes: Vec<Outcome<F>> = ls.into_par_iter().map(compare_one).collect::<Result<_>>()?;
    let tested = outcomes.len() as u64;
    let classifier_accepted = outcomes.iter().filter(|o| o.accepted).count() as u64;
    let oracle_accepted = outcomes.iter().filter(|o| o.oracle).count() as u64;
    let disagreements: Vec<Disagreement<F>> = outcomes.into_iter().filter_map(|o| o.disagreement).collect();
    Ok(OracleReport {
        field: F::descriptor(),
        ell,
        mode,
        agreements: tested - disagreements.len() as u64,
        tested,
        disagreements,
        classifier_accepted,
        oracle_accepted,
        regime: regime::<F>(ell),
    })
}

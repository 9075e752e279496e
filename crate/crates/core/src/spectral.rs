//! Eigenvalue discovery without determinants.
//!
//! The minimal polynomial is the lcm of the Krylov annihilators of the
//! standard basis vectors; its roots in Q(i) are the spectrum. Callers that
//! know eigenvalues the root finder cannot reach may supply them instead, in
//! which case each one is validated and completeness is enforced.

use crate::decomp::{stage_ladder, StageLadder};
use crate::error::{Error, Result};
use crate::matrix::{krylov_annihilator, rank, Matrix};
use crate::poly::{poly_roots_exact, Polynomial};
use crate::scalar::Gaussian;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub lambda: Gaussian,
    /// `dim Hau(λ)`.
    pub multiplicity: usize,
    /// `dim Eig(λ)`.
    pub geometric_dim: usize,
    /// Stabilization index of the stage ladder.
    pub max_stage: usize,
}

/// Distinct eigenvalues in canonical order with their counts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> Vec<Gaussian> {
        self.entries.iter().map(|e| e.lambda.clone()).collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.geometric_dim == e.multiplicity)
    }
}

fn require_square(a: &Matrix, op: &'static str) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            op,
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

pub fn minimal_polynomial(a: &Matrix) -> Result<Polynomial> {
    require_square(a, "minimal_polynomial")?;
    let n = a.rows();
    let mut p = Polynomial::one();
    for k in 0..n {
        p = p.lcm(&krylov_annihilator(a, &Matrix::unit(n, k))?);
    }
    Ok(p)
}

pub(crate) fn is_eigenvalue(a: &Matrix, lambda: &Gaussian) -> bool {
    rank(&a.shift(lambda)) < a.rows()
}

/// Distinct eigenvalues, sorted, either discovered or validated from `provided`.
/// Completeness of a provided list is checked later, once multiplicities are known.
fn distinct_eigenvalues(a: &Matrix, provided: Option<&[Gaussian]>) -> Result<Vec<Gaussian>> {
    let mut values = match provided {
        None => {
            let roots = poly_roots_exact(&minimal_polynomial(a)?)?;
            let values: Vec<Gaussian> = roots.into_iter().map(|(r, _)| r).collect();
            if let Some(bad) = values.iter().find(|l| !is_eigenvalue(a, l)) {
                return Err(Error::InternalInvariantViolation(format!(
                    "root {bad} of the minimal polynomial is not an eigenvalue"
                )));
            }
            values
        }
        Some(list) => {
            let mut seen: Vec<Gaussian> = Vec::with_capacity(list.len());
            for l in list {
                if seen.contains(l) {
                    return Err(Error::DuplicateProvidedEigenvalue(Box::new(l.clone())));
                }
                if !is_eigenvalue(a, l) {
                    return Err(Error::InvalidProvidedEigenvalue(Box::new(l.clone())));
                }
                seen.push(l.clone());
            }
            seen
        }
    };
    values.sort();
    Ok(values)
}

/// Spectrum together with the stage ladder of every eigenvalue, in the same order.
pub fn analyze_spectrum(
    a: &Matrix,
    provided: Option<&[Gaussian]>,
) -> Result<(Spectrum, Vec<StageLadder>)> {
    require_square(a, "spectrum")?;
    let n = a.rows();
    let values = distinct_eigenvalues(a, provided)?;
    let ladders = values
        .iter()
        .map(|l| stage_ladder(a, l))
        .collect::<Result<Vec<_>>>()?;
    let entries: Vec<SpectrumEntry> = ladders
        .iter()
        .map(|ladder| SpectrumEntry {
            lambda: ladder.lambda.clone(),
            multiplicity: ladder.top().dim(),
            geometric_dim: ladder.eigenspace().dim(),
            max_stage: ladder.max_stage(),
        })
        .collect();
    let spectrum = Spectrum { entries };
    let covered = spectrum.total_multiplicity();
    if covered != n {
        return Err(match provided {
            Some(_) => Error::IncompleteSpectrum { covered, n },
            None => Error::InternalInvariantViolation(format!(
                "discovered multiplicities sum to {covered}, expected {n}"
            )),
        });
    }
    Ok((spectrum, ladders))
}

pub fn spectrum(a: &Matrix, provided: Option<&[Gaussian]>) -> Result<Spectrum> {
    analyze_spectrum(a, provided).map(|(s, _)| s)
}

/// The canonically smallest eigenvalue.
pub fn find_eigenvalue(a: &Matrix) -> Result<Gaussian> {
    require_square(a, "find_eigenvalue")?;
    if a.rows() == 0 {
        return Err(Error::DimensionMismatch {
            op: "find_eigenvalue",
            detail: "empty matrix".into(),
        });
    }
    // smallest root is enough; no ladders needed
    Ok(distinct_eigenvalues(a, None)?.remove(0))
}

/// Parses a comma separated eigenvalue list such as `"3"` or `"1/2,-1i"`.
pub fn parse_eigenvalue_list(text: &str) -> Result<Vec<Gaussian>> {
    text.split(',')
        .map(|s| crate::scalar::parse_scalar(s.trim()))
        .collect()
}

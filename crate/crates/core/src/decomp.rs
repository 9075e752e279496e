//! Similarity transforms `A = V M V⁻¹` of increasing refinement: Schur-style
//! triangularization, block diagonalization along generalized eigenspaces,
//! blockwise triangularization, and the Jordan decomposition.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{complete_basis, inverse, nullspace_basis, rank, Basis, Matrix};
use crate::scalar::Gaussian;
use crate::spectral::{analyze_spectrum, is_eigenvalue, Spectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Schur,
    BlockDiag,
    BlockTri,
    Jordan,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Schur => "schur",
            Kind::BlockDiag => "blockdiag",
            Kind::BlockTri => "blocktri",
            Kind::Jordan => "jordan",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "schur" => Some(Kind::Schur),
            "blockdiag" => Some(Kind::BlockDiag),
            "blocktri" => Some(Kind::BlockTri),
            "jordan" => Some(Kind::Jordan),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A diagonal block of `M`, in layout order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub lambda: Gaussian,
    pub size: usize,
}

impl Block {
    pub fn new(lambda: Gaussian, size: usize) -> Self {
        Block { lambda, size }
    }
}

/// `A V = V M` with `V` invertible.
///
/// For `Schur` every diagonal entry is its own block of size 1; for
/// `BlockDiag`/`BlockTri` there is one block per eigenvalue; for `Jordan`
/// one block per Jordan chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: Kind,
    pub v: Matrix,
    pub m: Matrix,
    pub blocks: Vec<Block>,
}

/// Null spaces of `(A - λI)^k` for `k = 1..=L`, where `L` is the first power
/// after which the null spaces stop growing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageLadder {
    pub lambda: Gaussian,
    pub stage_bases: Vec<Basis>,
}

impl StageLadder {
    pub fn max_stage(&self) -> usize {
        self.stage_bases.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.stage_bases.iter().map(Basis::dim).collect()
    }

    /// Stage 1: the eigenspace.
    pub fn eigenspace(&self) -> &Basis {
        &self.stage_bases[0]
    }

    /// Stage `L`: the generalized eigenspace.
    pub fn top(&self) -> &Basis {
        self.stage_bases
            .last()
            .expect("ladder has at least one stage")
    }

    /// Canonical basis of stage `k` (1-based); stage 0 is the zero space.
    pub fn stage(&self, k: usize) -> Option<&Basis> {
        k.checked_sub(1).and_then(|i| self.stage_bases.get(i))
    }
}

pub fn stage_ladder(a: &Matrix, lambda: &Gaussian) -> Result<StageLadder> {
    let n = a.rows();
    let shifted = a.shift(lambda);
    let mut power = shifted.clone();
    let mut stage_bases = vec![nullspace_basis(&power)];
    if stage_bases[0].is_empty() {
        return Err(Error::NotAnEigenvalue(Box::new(lambda.clone())));
    }
    while stage_bases.len() < n {
        power = &power * &shifted;
        let next = nullspace_basis(&power);
        if next.dim() == stage_bases.last().expect("nonempty").dim() {
            break;
        }
        stage_bases.push(next);
    }
    Ok(StageLadder {
        lambda: lambda.clone(),
        stage_bases,
    })
}

/// `v1, ..., vℓ` with `(A - λI) v1 = 0` and `(A - λI) v_k = v_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanChain {
    pub lambda: Gaussian,
    pub vectors: Vec<Matrix>,
}

impl JordanChain {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn independent(ambient: usize, vectors: &[Matrix]) -> bool {
    vectors.is_empty() || rank(&Matrix::from_columns(ambient, vectors)) == vectors.len()
}

/// Builds a full set of Jordan chains from the ladder.
///
/// Stages are visited from `L` down to 1. At stage `ℓ` the vectors already
/// present are the stage-`ℓ` members of longer chains; the canonical basis of
/// `N^ℓ` is scanned in order and every vector independent of `N^{ℓ-1}`, those
/// members and the seeds accepted so far starts a new chain of length `ℓ`.
pub fn jordan_chains(a: &Matrix, ladder: &StageLadder) -> Result<Vec<JordanChain>> {
    let n = a.rows();
    let shifted = a.shift(&ladder.lambda);
    let top = ladder.max_stage();
    // each chain stored top-down: vectors[0] has stage `seed_stage`
    let mut chains: Vec<(usize, Vec<Matrix>)> = Vec::new();

    for stage in (1..=top).rev() {
        let mut span: Vec<Matrix> = ladder
            .stage(stage - 1)
            .map(|b| b.vectors.clone())
            .unwrap_or_default();
        for (seed_stage, vecs) in &chains {
            span.push(vecs[seed_stage - stage].clone());
        }
        let candidates = &ladder.stage(stage).expect("stage within ladder").vectors;
        for c in candidates {
            let mut trial = span.clone();
            trial.push(c.clone());
            if !independent(n, &trial) {
                continue;
            }
            span = trial;
            let mut vecs = vec![c.clone()];
            for _ in 1..stage {
                let next = &shifted * vecs.last().expect("nonempty");
                vecs.push(next);
            }
            chains.push((stage, vecs));
        }
    }

    let total: usize = chains.iter().map(|(s, _)| s).sum();
    if chains.len() != ladder.eigenspace().dim() || total != ladder.top().dim() {
        return Err(Error::InternalInvariantViolation(format!(
            "jordan_chains for {}: {} chains / {} vectors, expected {} / {}",
            ladder.lambda,
            chains.len(),
            total,
            ladder.eigenspace().dim(),
            ladder.top().dim()
        )));
    }

    // built in order of decreasing seed stage, so already sorted by length
    Ok(chains
        .into_iter()
        .map(|(_, mut vecs)| {
            vecs.reverse();
            JordanChain {
                lambda: ladder.lambda.clone(),
                vectors: vecs,
            }
        })
        .collect())
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

/// `V⁻¹ A V`.
fn conjugate(a: &Matrix, v: &Matrix) -> Result<Matrix> {
    Ok(&(&inverse(v)? * a) * v)
}

/// One step of the inductive triangularization: pick the smallest eigenvalue
/// of `b` among `candidates`, extend one eigenvector to a basis, split off the
/// `(λ *; 0 B')` form and recurse on `B'`.
fn schur_basis(b: &Matrix, candidates: &[Gaussian]) -> Result<Matrix> {
    let m = b.rows();
    if m <= 1 {
        return Ok(Matrix::identity(m));
    }
    let lambda = candidates
        .iter()
        .find(|l| is_eigenvalue(b, l))
        .ok_or_else(|| {
            Error::InternalInvariantViolation("trigonalize: block without eigenvalue".into())
        })?;
    let eigvec = nullspace_basis(&b.shift(lambda)).vectors.swap_remove(0);
    let first = complete_basis(&Basis {
        ambient_dim: m,
        vectors: vec![eigvec],
    })?;
    let t = conjugate(b, &first)?;
    if (1..m).any(|i| !t[(i, 0)].is_zero()) {
        return Err(Error::InternalInvariantViolation(
            "trigonalize: first column not deflated".into(),
        ));
    }
    let rest = t.submatrix(1, 1, m - 1, m - 1);
    let inner = schur_basis(&rest, candidates)?;
    let lift = Matrix::block_diag(&[Matrix::identity(1), inner]);
    Ok(&first * &lift)
}

pub fn trigonalize(a: &Matrix) -> Result<Decomposition> {
    trigonalize_with(a, None)
}

pub fn trigonalize_with(a: &Matrix, provided: Option<&[Gaussian]>) -> Result<Decomposition> {
    require_square(a, "trigonalize")?;
    let (spectrum, _) = analyze_spectrum(a, provided)?;
    let v = schur_basis(a, &spectrum.eigenvalues())?;
    let m = conjugate(a, &v)?;
    let blocks = m.diagonal().into_iter().map(|l| Block::new(l, 1)).collect();
    Ok(Decomposition {
        kind: Kind::Schur,
        v,
        m,
        blocks,
    })
}

fn offsets(blocks: &[Block]) -> Vec<usize> {
    blocks
        .iter()
        .scan(0, |at, b| {
            let start = *at;
            *at += b.size;
            Some(start)
        })
        .collect()
}

/// Whether `m` vanishes outside the diagonal blocks.
pub fn is_block_diagonal(m: &Matrix, blocks: &[Block]) -> bool {
    let mut owner = Vec::with_capacity(m.rows());
    for (k, b) in blocks.iter().enumerate() {
        owner.extend(std::iter::repeat_n(k, b.size));
    }
    if owner.len() != m.rows() || !m.is_square() {
        return false;
    }
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| owner[i] == owner[j] || m[(i, j)].is_zero()))
}

pub fn block_diagonalize(a: &Matrix) -> Result<Decomposition> {
    block_diagonalize_with(a, None)
}

pub fn block_diagonalize_with(a: &Matrix, provided: Option<&[Gaussian]>) -> Result<Decomposition> {
    require_square(a, "block_diagonalize")?;
    let (_, ladders) = analyze_spectrum(a, provided)?;
    let cols: Vec<Matrix> = ladders
        .iter()
        .flat_map(|l| l.top().vectors.iter().cloned())
        .collect();
    let v = Matrix::from_columns(a.rows(), &cols);
    let m = conjugate(a, &v)?;
    let blocks: Vec<Block> = ladders
        .iter()
        .map(|l| Block::new(l.lambda.clone(), l.top().dim()))
        .collect();
    if !is_block_diagonal(&m, &blocks) {
        return Err(Error::InternalInvariantViolation(
            "block_diagonalize: generalized eigenspaces not invariant".into(),
        ));
    }
    Ok(Decomposition {
        kind: Kind::BlockDiag,
        v,
        m,
        blocks,
    })
}

pub fn blockwise_trigonalize(a: &Matrix) -> Result<Decomposition> {
    blockwise_trigonalize_with(a, None)
}

pub fn blockwise_trigonalize_with(
    a: &Matrix,
    provided: Option<&[Gaussian]>,
) -> Result<Decomposition> {
    let bd = block_diagonalize_with(a, provided)?;
    let mut inner = Vec::with_capacity(bd.blocks.len());
    for (block, at) in bd.blocks.iter().zip(offsets(&bd.blocks)) {
        let sub = bd.m.submatrix(at, at, block.size, block.size);
        inner.push(schur_basis(&sub, std::slice::from_ref(&block.lambda))?);
    }
    let v = &bd.v * &Matrix::block_diag(&inner);
    let m = conjugate(a, &v)?;
    Ok(Decomposition {
        kind: Kind::BlockTri,
        v,
        m,
        blocks: bd.blocks,
    })
}

/// Everything computed on the way to the Jordan form.
#[derive(Clone, Debug)]
pub struct JordanAnalysis {
    pub spectrum: Spectrum,
    pub ladders: Vec<StageLadder>,
    /// Chains per eigenvalue, in the order of `spectrum.entries`.
    pub chains: Vec<Vec<JordanChain>>,
    pub decomposition: Decomposition,
}

/// Upper-bidiagonal Jordan block.
pub fn jordan_block(lambda: &Gaussian, size: usize) -> Matrix {
    let mut j = Matrix::diag(&vec![lambda.clone(); size]);
    for k in 1..size {
        j[(k - 1, k)] = Gaussian::one();
    }
    j
}

pub fn jordan_matrix(blocks: &[Block]) -> Matrix {
    let parts: Vec<Matrix> = blocks
        .iter()
        .map(|b| jordan_block(&b.lambda, b.size))
        .collect();
    Matrix::block_diag(&parts)
}

pub fn jordan_analysis(a: &Matrix, provided: Option<&[Gaussian]>) -> Result<JordanAnalysis> {
    require_square(a, "jordan_decomposition")?;
    let (spectrum, ladders) = analyze_spectrum(a, provided)?;
    let chains = ladders
        .iter()
        .map(|l| jordan_chains(a, l))
        .collect::<Result<Vec<_>>>()?;
    let mut cols = Vec::with_capacity(a.rows());
    let mut blocks = Vec::new();
    for chain in chains.iter().flatten() {
        cols.extend(chain.vectors.iter().cloned());
        blocks.push(Block::new(chain.lambda.clone(), chain.len()));
    }
    let v = Matrix::from_columns(a.rows(), &cols);
    let m = jordan_matrix(&blocks);
    if a * &v != &v * &m {
        return Err(Error::InternalInvariantViolation(
            "jordan_decomposition: A V != V J".into(),
        ));
    }
    inverse(&v)?;
    Ok(JordanAnalysis {
        spectrum,
        ladders,
        chains,
        decomposition: Decomposition {
            kind: Kind::Jordan,
            v,
            m,
            blocks,
        },
    })
}

pub fn jordan_decomposition(a: &Matrix) -> Result<Decomposition> {
    jordan_decomposition_with(a, None)
}

pub fn jordan_decomposition_with(
    a: &Matrix,
    provided: Option<&[Gaussian]>,
) -> Result<Decomposition> {
    jordan_analysis(a, provided).map(|j| j.decomposition)
}

/// Block list when `m` is a Jordan matrix: zero except the diagonal and a
/// superdiagonal of zeros and ones, each one joining equal diagonal entries.
pub fn is_jordan_matrix(m: &Matrix) -> Option<Vec<Block>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            if j != i && j != i + 1 && !m[(i, j)].is_zero() {
                return None;
            }
        }
    }
    let mut blocks: Vec<Block> = Vec::new();
    for k in 0..n {
        let joined = k > 0 && {
            let s = &m[(k - 1, k)];
            if s.is_one() {
                if m[(k - 1, k - 1)] != m[(k, k)] {
                    return None;
                }
                true
            } else if s.is_zero() {
                false
            } else {
                return None;
            }
        };
        match blocks.last_mut() {
            Some(b) if joined => b.size += 1,
            _ => blocks.push(Block::new(m[(k, k)].clone(), 1)),
        }
    }
    Some(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn g(s: &str) -> Gaussian {
        parse_scalar(s).unwrap()
    }

    fn worked_example() -> Matrix {
        Matrix::from_int_rows(&[[2, 1, 1], [-4, 5, 4], [1, 0, 2]])
    }

    fn assert_similar(a: &Matrix, d: &Decomposition) {
        assert_eq!(a * &d.v, &d.v * &d.m);
        inverse(&d.v).unwrap();
        assert_eq!(d.blocks.iter().map(|b| b.size).sum::<usize>(), a.rows());
    }

    #[test]
    fn ladder_examples() {
        let a = Matrix::from_int_rows(&[[1, 1, 1], [0, 1, 1], [0, 0, 1]]);
        let l = stage_ladder(&a, &g("1")).unwrap();
        assert_eq!(l.dims(), vec![1, 2, 3]);
        assert_eq!(l.max_stage(), 3);

        let l = stage_ladder(&worked_example(), &g("3")).unwrap();
        assert_eq!(l.dims(), vec![1, 2, 3]);
        assert_eq!(l.eigenspace().vectors, vec![Matrix::int_column(&[1, 0, 1])]);
        assert!(l
            .stage(2)
            .unwrap()
            .contains(&Matrix::int_column(&[1, 2, 0])));

        let l = stage_ladder(&Matrix::identity(2), &g("1")).unwrap();
        assert_eq!(l.dims(), vec![2]);

        assert_eq!(
            stage_ladder(&Matrix::identity(2), &g("2")),
            Err(Error::NotAnEigenvalue(Box::new(g("2"))))
        );
    }

    #[test]
    fn chain_examples() {
        let a = worked_example();
        let chains = jordan_chains(&a, &stage_ladder(&a, &g("3")).unwrap()).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(
            chains[0].vectors,
            vec![
                Matrix::int_column(&[-2, 0, -2]),
                Matrix::int_column(&[-1, -4, 1]),
                Matrix::int_column(&[1, 0, 0]),
            ]
        );

        let a = Matrix::from_int_rows(&[[1, 1], [0, 1]]);
        let chains = jordan_chains(&a, &stage_ladder(&a, &g("1")).unwrap()).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(
            chains[0].vectors,
            vec![Matrix::unit(2, 0), Matrix::unit(2, 1)]
        );

        let id = Matrix::identity(2);
        let chains = jordan_chains(&id, &stage_ladder(&id, &g("1")).unwrap()).unwrap();
        assert_eq!(chains.len(), 2);
        assert_eq!(chains[0].vectors, vec![Matrix::unit(2, 0)]);
        assert_eq!(chains[1].vectors, vec![Matrix::unit(2, 1)]);
    }

    #[test]
    fn chains_with_mixed_lengths() {
        // J = diag(J2(0), J1(0)) conjugated by a unipotent matrix
        let s = Matrix::from_int_rows(&[[1, 2, 0], [0, 1, -1], [0, 0, 1]]);
        let j = jordan_matrix(&[Block::new(g("0"), 2), Block::new(g("0"), 1)]);
        let a = &(&s * &j) * &inverse(&s).unwrap();
        let chains = jordan_chains(&a, &stage_ladder(&a, &g("0")).unwrap()).unwrap();
        assert_eq!(
            chains.iter().map(JordanChain::len).collect::<Vec<_>>(),
            vec![2, 1]
        );
        for c in &chains {
            assert!((&a * &c.vectors[0]).is_zero());
            for k in 1..c.len() {
                assert_eq!(&a * &c.vectors[k], c.vectors[k - 1]);
            }
        }
    }

    #[test]
    fn schur_examples() {
        let a = Matrix::from_int_rows(&[[1, 1], [0, 1]]);
        let d = trigonalize(&a).unwrap();
        assert_eq!(d.v, Matrix::identity(2));
        assert_eq!(d.m, a);

        let five = Matrix::diag(&[g("5")]);
        let d = trigonalize(&five).unwrap();
        assert_eq!(d.v, Matrix::identity(1));
        assert_eq!(d.m, five);

        let a = worked_example();
        let d = trigonalize(&a).unwrap();
        assert!(d.m.is_upper_triangular());
        assert_eq!(d.m.diagonal(), vec![g("3"); 3]);
        assert_similar(&a, &d);
    }

    #[test]
    fn schur_of_rotation_has_sorted_diagonal() {
        let a = Matrix::from_int_rows(&[[0, -1], [1, 0]]);
        let d = trigonalize(&a).unwrap();
        assert!(d.m.is_upper_triangular());
        assert_eq!(d.m.diagonal(), vec![g("-1i"), g("1i")]);
        assert_similar(&a, &d);
    }

    #[test]
    fn blockdiag_examples() {
        let d = Matrix::diag(&[g("2"), g("5")]);
        let bd = block_diagonalize(&d).unwrap();
        assert_eq!(bd.v, Matrix::identity(2));
        assert_eq!(bd.m, d);
        assert_eq!(
            bd.blocks,
            vec![Block::new(g("2"), 1), Block::new(g("5"), 1)]
        );

        let a = Matrix::from_int_rows(&[[1, 1], [0, 1]]);
        let bd = block_diagonalize(&a).unwrap();
        assert_eq!(bd.blocks, vec![Block::new(g("1"), 2)]);
        assert_similar(&a, &bd);

        let a = Matrix::from_int_rows(&[[1, 2, 0], [0, 3, 1], [0, 0, 1]]);
        let bd = block_diagonalize(&a).unwrap();
        assert_eq!(
            bd.blocks,
            vec![Block::new(g("1"), 2), Block::new(g("3"), 1)]
        );
        assert!(is_block_diagonal(&bd.m, &bd.blocks));
        assert_similar(&a, &bd);
    }

    #[test]
    fn blocktri_examples() {
        let a = Matrix::from_int_rows(&[[1, 1, 1], [0, 1, 1], [0, 0, 1]]);
        let d = blockwise_trigonalize(&a).unwrap();
        assert!(d.m.is_upper_triangular());
        assert_eq!(d.m.diagonal(), vec![g("1"); 3]);
        assert_similar(&a, &d);

        let diag = Matrix::diag(&[g("2"), g("5")]);
        assert_eq!(blockwise_trigonalize(&diag).unwrap().m, diag);

        let a = worked_example();
        let d = blockwise_trigonalize(&a).unwrap();
        assert!(d.m.is_upper_triangular());
        assert_eq!(d.m.diagonal(), vec![g("3"); 3]);
        assert_similar(&a, &d);
    }

    #[test]
    fn jordan_examples() {
        let d = jordan_decomposition(&worked_example()).unwrap();
        assert_eq!(
            d.v,
            Matrix::from_int_rows(&[[-2, -1, 1], [0, -4, 0], [-2, 1, 0]])
        );
        assert_eq!(
            d.m,
            Matrix::from_int_rows(&[[3, 1, 0], [0, 3, 1], [0, 0, 3]])
        );
        assert_eq!(d.blocks, vec![Block::new(g("3"), 3)]);

        let a = Matrix::from_int_rows(&[[1, 1], [0, 1]]);
        assert_eq!(jordan_decomposition(&a).unwrap().m, a);

        let d = jordan_decomposition(&Matrix::diag(&[g("5"), g("5"), g("2")])).unwrap();
        assert_eq!(d.m, Matrix::diag(&[g("2"), g("5"), g("5")]));
        assert_eq!(
            d.blocks,
            vec![
                Block::new(g("2"), 1),
                Block::new(g("5"), 1),
                Block::new(g("5"), 1)
            ]
        );
    }

    #[test]
    fn jordan_with_provided_spectrum_matches_discovery() {
        let a = worked_example();
        assert_eq!(
            jordan_decomposition_with(&a, Some(&[g("3")])).unwrap(),
            jordan_decomposition(&a).unwrap()
        );
    }

    #[test]
    fn is_jordan_examples() {
        let j = Matrix::from_int_rows(&[[3, 1, 0], [0, 3, 1], [0, 0, 3]]);
        assert_eq!(is_jordan_matrix(&j), Some(vec![Block::new(g("3"), 3)]));
        assert_eq!(
            is_jordan_matrix(&Matrix::identity(4)),
            Some(vec![Block::new(g("1"), 1); 4])
        );
        assert_eq!(
            is_jordan_matrix(&Matrix::from_int_rows(&[[1, 2], [0, 1]])),
            None
        );
        // a one joining different eigenvalues
        assert_eq!(
            is_jordan_matrix(&Matrix::from_int_rows(&[[1, 1], [0, 2]])),
            None
        );
        assert_eq!(
            is_jordan_matrix(&Matrix::from_int_rows(&[[1, 0], [1, 1]])),
            None
        );
        let two = Matrix::from_int_rows(&[[2, 1, 0, 0], [0, 2, 0, 0], [0, 0, 2, 1], [0, 0, 0, 2]]);
        assert_eq!(
            is_jordan_matrix(&two),
            Some(vec![Block::new(g("2"), 2), Block::new(g("2"), 2)])
        );
    }
}

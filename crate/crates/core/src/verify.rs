//! Executable structure checks and a round-trip case generator.
//!
//! [`check_decomposition`] audits any [`Decomposition`] against the matrix it
//! claims to decompose, recomputing everything it needs from `A` alone.
//! [`generate_case`] builds `A = S J S⁻¹` from a prescribed Jordan structure,
//! which gives an oracle for the whole pipeline that does not share code with
//! the chain construction.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::{
    is_block_diagonal, is_jordan_matrix, jordan_matrix, stage_ladder, Block, Decomposition,
    JordanAnalysis, Kind,
};
use crate::error::{Error, Result};
use crate::matrix::{inverse, nullspace_basis, solve, Matrix};
use crate::scalar::{parse_scalar, Gaussian};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    fn push(&mut self, name: &'static str, outcome: std::result::Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {:<22} {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

type Outcome = std::result::Result<String, String>;

fn distinct_lambdas(blocks: &[Block]) -> Vec<Gaussian> {
    let mut ls: Vec<Gaussian> = blocks.iter().map(|b| b.lambda.clone()).collect();
    ls.sort();
    ls.dedup();
    ls
}

fn block_offsets(blocks: &[Block]) -> Vec<usize> {
    let mut at = 0;
    blocks
        .iter()
        .map(|b| {
            let s = at;
            at += b.size;
            s
        })
        .collect()
}

fn check_dimensions(a: &Matrix, d: &Decomposition) -> Outcome {
    let n = a.rows();
    if !a.is_square() {
        return Err(format!("A is {}x{}", a.rows(), a.cols()));
    }
    for (name, m) in [("V", &d.v), ("M", &d.m)] {
        if m.rows() != n || m.cols() != n {
            return Err(format!(
                "{name} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            ));
        }
    }
    let total: usize = d.blocks.iter().map(|b| b.size).sum();
    if total != n || d.blocks.iter().any(|b| b.size == 0) {
        return Err(format!("block sizes sum to {total}, expected {n}"));
    }
    Ok(format!("{n}x{n}, {} blocks", d.blocks.len()))
}

fn check_similarity(a: &Matrix, d: &Decomposition) -> Outcome {
    if a * &d.v == &d.v * &d.m {
        Ok("A V = V M".into())
    } else {
        Err("A V != V M".into())
    }
}

fn check_invertibility(d: &Decomposition) -> Outcome {
    inverse(&d.v)
        .map(|_| "V invertible".into())
        .map_err(|e| e.to_string())
}

fn check_trace(a: &Matrix, d: &Decomposition) -> Outcome {
    let weighted = d.blocks.iter().fold(Gaussian::zero(), |acc, b| {
        &acc + &(&b.lambda * &Gaussian::from_int(b.size as i64))
    });
    let tr = a.trace();
    if tr == weighted {
        Ok(format!("trace = {tr}"))
    } else {
        Err(format!("trace(A) = {tr}, sum lambda*size = {weighted}"))
    }
}

fn check_multiplicities(a: &Matrix, d: &Decomposition) -> Outcome {
    let n = a.rows();
    let mut total = 0;
    for l in distinct_lambdas(&d.blocks) {
        let declared: usize = d
            .blocks
            .iter()
            .filter(|b| b.lambda == l)
            .map(|b| b.size)
            .sum();
        let mult = nullspace_basis(&a.shift(&l).pow(n as u32)).dim();
        if declared != mult {
            return Err(format!(
                "lambda {l}: blocks cover {declared}, dim Hau = {mult}"
            ));
        }
        total += mult;
    }
    if total == n {
        Ok(format!("sum of multiplicities = {n}"))
    } else {
        Err(format!("sum of multiplicities = {total}, expected {n}"))
    }
}

fn check_upper_triangular(d: &Decomposition) -> Outcome {
    if !d.m.is_upper_triangular() {
        return Err("M has nonzero entries below the diagonal".into());
    }
    Ok("M upper triangular".into())
}

fn check_schur_blocks(d: &Decomposition) -> Outcome {
    let diag = d.m.diagonal();
    let ok = d.blocks.len() == diag.len()
        && d.blocks
            .iter()
            .zip(&diag)
            .all(|(b, l)| b.size == 1 && b.lambda == *l);
    if ok {
        Ok("blocks list the diagonal".into())
    } else {
        Err("blocks do not match the diagonal of M".into())
    }
}

fn check_block_diagonal(d: &Decomposition) -> Outcome {
    if !is_block_diagonal(&d.m, &d.blocks) {
        return Err("M has entries outside the declared blocks".into());
    }
    let ls = distinct_lambdas(&d.blocks);
    if ls.len() != d.blocks.len() {
        return Err("an eigenvalue owns more than one block".into());
    }
    Ok("M zero outside blocks".into())
}

/// Each diagonal block has `λ` as its only eigenvalue.
fn check_block_spectrum(d: &Decomposition, constant_diagonal: bool) -> Outcome {
    for (b, at) in d.blocks.iter().zip(block_offsets(&d.blocks)) {
        let sub = d.m.submatrix(at, at, b.size, b.size);
        if constant_diagonal {
            if sub.diagonal().iter().any(|x| *x != b.lambda) {
                return Err(format!(
                    "block at {at}: diagonal is not constantly {}",
                    b.lambda
                ));
            }
        } else if !sub.shift(&b.lambda).pow(b.size as u32).is_zero() {
            return Err(format!("block at {at}: B - {}I is not nilpotent", b.lambda));
        }
    }
    Ok("each block has a single eigenvalue".into())
}

fn check_jordan_form(d: &Decomposition) -> Outcome {
    match is_jordan_matrix(&d.m) {
        None => Err("M is not a Jordan matrix".into()),
        Some(found) if found != d.blocks => Err(format!(
            "M has blocks {:?}, declared {:?}",
            found
                .iter()
                .map(|b| (b.lambda.to_string(), b.size))
                .collect::<Vec<_>>(),
            d.blocks
                .iter()
                .map(|b| (b.lambda.to_string(), b.size))
                .collect::<Vec<_>>()
        )),
        Some(_) => Ok("M is a Jordan matrix".into()),
    }
}

/// Block counts per eigenvalue against the ladder: the number of blocks of
/// size at least `ℓ` equals `dim N^ℓ - dim N^{ℓ-1}`.
fn check_chain_counts(a: &Matrix, d: &Decomposition) -> Outcome {
    for l in distinct_lambdas(&d.blocks) {
        let ladder = stage_ladder(a, &l).map_err(|e| e.to_string())?;
        let dims = ladder.dims();
        let sizes: Vec<usize> = d
            .blocks
            .iter()
            .filter(|b| b.lambda == l)
            .map(|b| b.size)
            .collect();
        if sizes.len() != dims[0] {
            return Err(format!(
                "lambda {l}: {} chains, dim Eig = {}",
                sizes.len(),
                dims[0]
            ));
        }
        if sizes.iter().sum::<usize>() != *dims.last().expect("nonempty") {
            return Err(format!("lambda {l}: chain lengths do not sum to dim Hau"));
        }
        if sizes.iter().any(|&s| s > dims.len()) {
            return Err(format!("lambda {l}: chain longer than L = {}", dims.len()));
        }
        for stage in 1..=dims.len() {
            let at_least = sizes.iter().filter(|&&s| s >= stage).count();
            let lower = if stage == 1 { 0 } else { dims[stage - 2] };
            if at_least != dims[stage - 1] - lower {
                return Err(format!(
                    "lambda {l}: {at_least} chains reach stage {stage}, ladder says {}",
                    dims[stage - 1] - lower
                ));
            }
        }
    }
    Ok("chain counts match ladders".into())
}

/// Audits `d` as a decomposition of `a`. Every check that applies to
/// `d.kind` appears exactly once.
pub fn check_decomposition(a: &Matrix, d: &Decomposition) -> CheckReport {
    let mut report = CheckReport::default();
    let dims = check_dimensions(a, d);
    let shape_ok = dims.is_ok();
    report.push("dimensions", dims);
    let mut run = |name: &'static str, f: &dyn Fn() -> Outcome| {
        let outcome = if shape_ok {
            f()
        } else {
            Err("skipped: dimension mismatch".into())
        };
        report.push(name, outcome);
    };
    run("similarity", &|| check_similarity(a, d));
    run("invertibility", &|| check_invertibility(d));
    run("trace_identity", &|| check_trace(a, d));
    run("multiplicity_sum", &|| check_multiplicities(a, d));
    match d.kind {
        Kind::Schur => {
            run("upper_triangular", &|| check_upper_triangular(d));
            run("schur_blocks", &|| check_schur_blocks(d));
        }
        Kind::BlockDiag => {
            run("block_diagonal", &|| check_block_diagonal(d));
            run("block_spectrum", &|| check_block_spectrum(d, false));
        }
        Kind::BlockTri => {
            // block diagonal with triangular blocks
            run("upper_triangular", &|| check_upper_triangular(d));
            run("block_diagonal", &|| check_block_diagonal(d));
            run("block_spectrum", &|| check_block_spectrum(d, true));
        }
        Kind::Jordan => {
            run("jordan_form", &|| check_jordan_form(d));
            run("block_spectrum", &|| check_block_spectrum(d, true));
            run("chain_counts", &|| check_chain_counts(a, d));
        }
    }
    report
}

/// Structural identities on the intermediate results of a Jordan run:
/// ladder growth and stabilization, chain relations, invariance of the
/// generalized eigenspaces, and the Schur diagonal.
pub fn check_jordan_analysis(a: &Matrix, analysis: &JordanAnalysis) -> CheckReport {
    let mut report = CheckReport::default();
    let n = a.rows();

    report.push("eigenvectors_exist", {
        let bad: Vec<String> = analysis
            .spectrum
            .entries
            .iter()
            .filter(|e| nullspace_basis(&a.shift(&e.lambda)).is_empty())
            .map(|e| e.lambda.to_string())
            .collect();
        if bad.is_empty() {
            Ok("every lambda has an eigenvector".into())
        } else {
            Err(format!("no eigenvector for {}", bad.join(", ")))
        }
    });

    report.push("ladder_growth", {
        analysis
            .ladders
            .iter()
            .find(|l| l.dims().windows(2).any(|w| w[0] >= w[1]) || l.max_stage() > n)
            .map_or(Ok("dims strictly increase up to L".into()), |l| {
                Err(format!("lambda {}: dims {:?}", l.lambda, l.dims()))
            })
    });

    report.push("ladder_stabilization", {
        let mut out = Ok("two further powers add nothing".to_string());
        for l in &analysis.ladders {
            let shifted = a.shift(&l.lambda);
            let top = l.max_stage() as u32;
            let dim_top = l.top().dim();
            let extra: Vec<usize> = (1..=2)
                .map(|k| nullspace_basis(&shifted.pow(top + k)).dim())
                .collect();
            if extra.iter().any(|&d| d != dim_top) {
                out = Err(format!(
                    "lambda {}: L = {top}, dims beyond {:?}",
                    l.lambda, extra
                ));
                break;
            }
            let nested = l
                .stage_bases
                .windows(2)
                .all(|w| w[0].vectors.iter().all(|v| w[1].contains(v)));
            if !nested {
                out = Err(format!("lambda {}: stages are not nested", l.lambda));
                break;
            }
        }
        out
    });

    report.push("hauptraum_invariance", {
        let mut out = Ok("A maps each generalized eigenspace into itself".to_string());
        for l in &analysis.ladders {
            let basis = l.top().to_matrix();
            let escaped = l
                .top()
                .vectors
                .iter()
                .any(|u| !matches!(solve(&basis, &(a * u)), Ok(Some(_))));
            if escaped {
                out = Err(format!("lambda {}: A u leaves Hau", l.lambda));
                break;
            }
        }
        out
    });

    report.push("chain_relations", {
        let mut out = Ok("(A - lambda I) v_k = v_(k-1), (A - lambda I) v_1 = 0".to_string());
        'outer: for chain in analysis.chains.iter().flatten() {
            let shifted = a.shift(&chain.lambda);
            if chain.vectors[0].is_zero() || !(&shifted * &chain.vectors[0]).is_zero() {
                out = Err(format!(
                    "lambda {}: v_1 is not an eigenvector",
                    chain.lambda
                ));
                break;
            }
            for k in 1..chain.len() {
                if &shifted * &chain.vectors[k] != chain.vectors[k - 1] {
                    out = Err(format!(
                        "lambda {}: relation broken at v_{}",
                        chain.lambda,
                        k + 1
                    ));
                    break 'outer;
                }
            }
        }
        out
    });

    report.push("chain_counts_per_lambda", {
        let mut out = Ok("#chains = dim Eig, sum of lengths = mult".to_string());
        for (entry, chains) in analysis.spectrum.entries.iter().zip(&analysis.chains) {
            let total: usize = chains.iter().map(|c| c.len()).sum();
            if chains.len() != entry.geometric_dim || total != entry.multiplicity {
                out = Err(format!(
                    "lambda {}: {} chains / {} vectors, expected {} / {}",
                    entry.lambda,
                    chains.len(),
                    total,
                    entry.geometric_dim,
                    entry.multiplicity
                ));
                break;
            }
        }
        out
    });

    report.push("spectrum_bounds", {
        let ok = analysis.spectrum.total_multiplicity() == n
            && analysis.spectrum.entries.iter().all(|e| {
                1 <= e.geometric_dim
                    && e.geometric_dim <= e.multiplicity
                    && 1 <= e.max_stage
                    && e.max_stage <= e.multiplicity
            });
        if ok {
            Ok("1 <= dim Eig <= mult, 1 <= L <= mult, sum mult = n".into())
        } else {
            Err("spectrum counts out of bounds".into())
        }
    });

    report.push("schur_diagonal", {
        let provided = analysis.spectrum.eigenvalues();
        match trigonalize_for_check(a, &provided) {
            Ok(diag) => {
                let mut expected: Vec<Gaussian> = analysis
                    .spectrum
                    .entries
                    .iter()
                    .flat_map(|e| std::iter::repeat_n(e.lambda.clone(), e.multiplicity))
                    .collect();
                let mut got = diag;
                expected.sort();
                got.sort();
                if got == expected {
                    Ok("Schur diagonal = spectrum with multiplicity".into())
                } else {
                    Err(format!("Schur diagonal {got:?}, spectrum {expected:?}"))
                }
            }
            Err(e) => Err(e.to_string()),
        }
    });

    report
}

fn trigonalize_for_check(a: &Matrix, eigenvalues: &[Gaussian]) -> Result<Vec<Gaussian>> {
    let d = crate::decomp::trigonalize_with(a, Some(eigenvalues))?;
    if !d.m.is_upper_triangular() {
        return Err(Error::InternalInvariantViolation(
            "Schur form not triangular".into(),
        ));
    }
    Ok(d.m.diagonal())
}

/// Prescribed Jordan structure: per eigenvalue, the multiset of chain lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanStructure {
    pub parts: Vec<(Gaussian, Vec<usize>)>,
}

impl JordanStructure {
    pub fn new(parts: Vec<(Gaussian, Vec<usize>)>) -> Result<Self> {
        let s = JordanStructure { parts };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if self.parts.is_empty() {
            return Err(Error::InvalidStructure("no eigenvalues".into()));
        }
        for (k, (l, lens)) in self.parts.iter().enumerate() {
            if self.parts[..k].iter().any(|(m, _)| m == l) {
                return Err(Error::InvalidStructure(format!("eigenvalue {l} repeated")));
            }
            if lens.is_empty() || lens.contains(&0) {
                return Err(Error::InvalidStructure(format!(
                    "eigenvalue {l} needs chain lengths >= 1"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().flat_map(|(_, lens)| lens).sum()
    }

    /// Blocks in canonical layout: eigenvalues ascending, lengths descending.
    pub fn canonical_blocks(&self) -> Vec<Block> {
        let mut parts = self.parts.clone();
        parts.sort_by(|x, y| x.0.cmp(&y.0));
        parts
            .into_iter()
            .flat_map(|(l, mut lens)| {
                lens.sort_unstable_by(|a, b| b.cmp(a));
                lens.into_iter().map(move |s| Block::new(l.clone(), s))
            })
            .collect()
    }

    pub fn jordan_matrix(&self) -> Matrix {
        jordan_matrix(&self.canonical_blocks())
    }
}

/// `λ:len(,len)*(;λ:len(,len)*)*`, e.g. `3:3` or `0:2,1;1:1`.
impl FromStr for JordanStructure {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidStructure(format!("cannot parse `{text}`"));
        let mut parts = Vec::new();
        for group in text.split(';') {
            let (l, lens) = group.trim().split_once(':').ok_or_else(bad)?;
            let lambda = parse_scalar(l.trim())?;
            let lens = lens
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            parts.push((lambda, lens));
        }
        JordanStructure::new(parts)
    }
}

impl fmt::Display for JordanStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (l, lens)) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ";")?;
            }
            let lens: Vec<String> = lens.iter().map(ToString::to_string).collect();
            write!(f, "{l}:{}", lens.join(","))?;
        }
        Ok(())
    }
}

/// Conjugator built from `2n` seeded elementary row operations on the
/// identity: row swaps, and adding an integer multiple in
/// `[-entry_bound, entry_bound]` of one row to another.
pub fn random_conjugator(n: usize, seed: u64, entry_bound: i64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Matrix::identity(n);
    if n < 2 {
        return s;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        if rng.gen_ratio(1, 4) {
            s.swap_rows(i, j);
        } else {
            let k = rng.gen_range(-entry_bound..=entry_bound);
            s.add_row_multiple(i, j, &Gaussian::from_int(k));
        }
    }
    s
}

/// A generated test case and the Jordan matrix it must reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedCase {
    pub a: Matrix,
    pub jordan: Matrix,
    pub conjugator: Matrix,
}

pub fn generate_case(
    structure: &JordanStructure,
    seed: u64,
    entry_bound: i64,
) -> Result<GeneratedCase> {
    structure.validate()?;
    if entry_bound < 1 {
        return Err(Error::InvalidStructure(format!(
            "entry bound must be >= 1, got {entry_bound}"
        )));
    }
    let jordan = structure.jordan_matrix();
    let s = random_conjugator(jordan.rows(), seed, entry_bound);
    let s_inv = inverse(&s)?;
    let a = &(&s * &jordan) * &s_inv;
    Ok(GeneratedCase {
        a,
        jordan,
        conjugator: s,
    })
}

/// Eigenvalues assigned to structures, in order.
pub fn palette() -> Vec<Gaussian> {
    vec![
        Gaussian::from_int(0),
        Gaussian::from_int(1),
        Gaussian::from_int(-1),
        Gaussian::from_int(2),
        Gaussian::i(),
    ]
}

/// Partitions of `n` with parts in descending order, reverse-lexicographic.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every Jordan structure of size `n` up to renaming of eigenvalues, with
/// eigenvalues taken from [`palette`] in order.
///
/// Listed by number of distinct eigenvalues, then by partition order
/// (larger generalized eigenspaces and coarser partitions first).
pub fn exhaustive_structures(n: usize) -> Vec<JordanStructure> {
    let pal = palette();
    let catalog: Vec<Vec<usize>> = (1..=n).rev().flat_map(partitions).collect();

    fn go(
        catalog: &[Vec<usize>],
        start: usize,
        slots: usize,
        rest: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for (k, p) in catalog.iter().enumerate().skip(start) {
            let size: usize = p.iter().sum();
            if size <= rest {
                cur.push(k);
                go(catalog, k, slots - 1, rest - size, cur, out);
                cur.pop();
            }
        }
    }

    let mut out = Vec::new();
    for slots in 1..=n.min(pal.len()) {
        let mut combos = Vec::new();
        go(&catalog, 0, slots, n, &mut Vec::new(), &mut combos);
        for combo in combos {
            let parts = combo
                .iter()
                .zip(&pal)
                .map(|(&k, l)| (l.clone(), catalog[k].clone()))
                .collect();
            out.push(JordanStructure { parts });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{jordan_decomposition, Kind};

    fn s(text: &str) -> JordanStructure {
        text.parse().unwrap()
    }

    #[test]
    fn structure_parse_and_display() {
        let st = s("0:2,1;1:1");
        assert_eq!(st.dim(), 4);
        assert_eq!(st.to_string(), "0:2,1;1:1");
        assert!("0:0".parse::<JordanStructure>().is_err());
        assert!("0:1;0:1".parse::<JordanStructure>().is_err());
        assert!("0".parse::<JordanStructure>().is_err());
        assert!("x:1".parse::<JordanStructure>().is_err());
    }

    #[test]
    fn exhaustive_small() {
        let show = |n| {
            exhaustive_structures(n)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        };
        assert_eq!(show(1), vec!["0:1"]);
        assert_eq!(show(2), vec!["0:2", "0:1,1", "0:1;1:1"]);
        assert_eq!(
            show(3),
            vec![
                "0:3",
                "0:2,1",
                "0:1,1,1",
                "0:2;1:1",
                "0:1,1;1:1",
                "0:1;1:1;-1:1"
            ]
        );
    }

    #[test]
    fn exhaustive_counts_match_brute_force() {
        // brute force: multisets of partitions, counted by sorting keys
        fn brute(n: usize) -> usize {
            use std::collections::BTreeSet;
            let mut seen = BTreeSet::new();
            // assign a size to up to 5 ordered slots, then a partition each
            fn rec(
                rest: usize,
                slots: usize,
                cur: &mut Vec<Vec<usize>>,
                seen: &mut BTreeSet<Vec<Vec<usize>>>,
            ) {
                if rest == 0 && !cur.is_empty() {
                    let mut key = cur.clone();
                    key.sort();
                    seen.insert(key);
                }
                if slots == 0 || rest == 0 {
                    return;
                }
                for size in 1..=rest {
                    for p in partitions(size) {
                        cur.push(p);
                        rec(rest - size, slots - 1, cur, seen);
                        cur.pop();
                    }
                }
            }
            rec(n, 5, &mut Vec::new(), &mut seen);
            seen.len()
        }
        for n in 1..=6 {
            let got = exhaustive_structures(n);
            assert_eq!(got.len(), brute(n), "n = {n}");
            assert!(got.iter().all(|st| st.dim() == n));
        }
    }

    #[test]
    fn generate_examples() {
        let c = generate_case(&s("3:3"), 11, 3).unwrap();
        assert_eq!(
            c.jordan,
            Matrix::from_int_rows(&[[3, 1, 0], [0, 3, 1], [0, 0, 3]])
        );
        assert_eq!(jordan_decomposition(&c.a).unwrap().m, c.jordan);

        for seed in 0..5 {
            let c = generate_case(&s("1:1,1"), seed, 3).unwrap();
            assert_eq!(c.a, Matrix::identity(2));
        }

        let c = generate_case(&s("0:2;1:1"), 5, 3).unwrap();
        let d = jordan_decomposition(&c.a).unwrap();
        assert_eq!(
            d.blocks,
            vec![
                Block::new(Gaussian::from_int(0), 2),
                Block::new(Gaussian::from_int(1), 1)
            ]
        );
        assert_eq!(generate_case(&s("0:2;1:1"), 5, 3).unwrap(), c);
        assert!(generate_case(&s("0:1"), 0, 0).is_err());
    }

    #[test]
    fn conjugator_is_unimodular_integer_matrix() {
        let s = random_conjugator(5, 42, 3);
        let inv = inverse(&s).unwrap();
        assert!(s
            .entries()
            .iter()
            .chain(inv.entries())
            .all(|e| e.is_real() && e.re.is_integer()));
    }

    #[test]
    fn check_worked_decomposition() {
        let a = Matrix::from_int_rows(&[[2, 1, 1], [-4, 5, 4], [1, 0, 2]]);
        let d = Decomposition {
            kind: Kind::Jordan,
            v: Matrix::from_int_rows(&[[-2, -1, 1], [0, -4, 0], [-2, 1, 0]]),
            m: Matrix::from_int_rows(&[[3, 1, 0], [0, 3, 1], [0, 0, 3]]),
            blocks: vec![Block::new(Gaussian::from_int(3), 3)],
        };
        let r = check_decomposition(&a, &d);
        assert!(r.passed(), "{r}");

        let mut swapped = d.clone();
        let cols = d.v.columns();
        swapped.v = Matrix::from_columns(3, &[cols[1].clone(), cols[0].clone(), cols[2].clone()]);
        let r = check_decomposition(&a, &swapped);
        assert!(!r.passed());
        assert!(!r.get("similarity").unwrap().passed);
    }

    #[test]
    fn check_identity_jordan() {
        let id = Matrix::identity(2);
        let d = Decomposition {
            kind: Kind::Jordan,
            v: id.clone(),
            m: id.clone(),
            blocks: vec![Block::new(Gaussian::from_int(1), 1); 2],
        };
        let r = check_decomposition(&id, &d);
        assert!(r.passed(), "{r}");
        assert_eq!(is_jordan_matrix(&d.m), Some(d.blocks.clone()));
    }

    #[test]
    fn check_catches_wrong_blocks() {
        let a = Matrix::from_int_rows(&[[1, 1], [0, 1]]);
        let d = Decomposition {
            kind: Kind::Jordan,
            v: Matrix::identity(2),
            m: a.clone(),
            blocks: vec![Block::new(Gaussian::from_int(1), 1); 2],
        };
        let r = check_decomposition(&a, &d);
        assert!(!r.get("jordan_form").unwrap().passed);
        assert!(!r.get("chain_counts").unwrap().passed);

        let bad_shape = Decomposition {
            kind: Kind::Schur,
            v: Matrix::identity(3),
            m: Matrix::identity(3),
            blocks: vec![],
        };
        let r = check_decomposition(&a, &bad_shape);
        assert!(r.failures().count() >= 5);
    }

    #[test]
    fn check_names_are_unique_per_kind() {
        let a = Matrix::from_int_rows(&[[2, 1, 1], [-4, 5, 4], [1, 0, 2]]);
        for d in [
            crate::decomp::trigonalize(&a).unwrap(),
            crate::decomp::block_diagonalize(&a).unwrap(),
            crate::decomp::blockwise_trigonalize(&a).unwrap(),
            jordan_decomposition(&a).unwrap(),
        ] {
            let r = check_decomposition(&a, &d);
            assert!(r.passed(), "{}: {r}", d.kind);
            let mut names: Vec<_> = r.checks.iter().map(|c| c.name).collect();
            let total = names.len();
            names.sort();
            names.dedup();
            assert_eq!(names.len(), total);
        }
    }
}

//! Checkers: generic elements with distinct eigenvalues, the rank bound for
//! rectangular spaces, and recovery of the block structure of spaces at the
//! equality dimension.

use std::fmt;

use num_traits::Zero;
use rand::Rng;

use crate::commrank::{dimension_bound, max_commutator_rank, trial_coefficients};
use crate::constructions::{exceptional_block_space, v_k, valid_splits, ExceptionalTag};
use crate::error::Result;
use crate::exact_linalg::{
    charpoly, charpoly_discriminant, commutator, rational_roots, Field, Mat, Rational,
};
use crate::rng;
use crate::subspace::{MatrixSubspace, RectSubspace, VectorSpace};

fn combination(basis: &[Mat], coeffs: &[i64], rows: usize, cols: usize) -> Mat {
    let mut acc = Mat::zeros(rows, cols);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = &acc + &b.scale(&Rational::from_i64(c));
        }
    }
    acc
}

/// A member with `n` distinct eigenvalues and the trial that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericElement {
    pub element: Mat,
    pub discriminant: Rational,
    pub trial: usize,
}

/// Trial 0 sums the basis; later trials draw seeded integer combinations.
/// `None` means no trial succeeded, not that no such member exists.
pub fn find_distinct_eigenvalue_element(
    v: &MatrixSubspace,
    trials: usize,
    seed: u64,
) -> Option<GenericElement> {
    let n = v.ambient();
    if v.is_zero() {
        return None;
    }
    for t in 0..trials {
        let coeffs = if t == 0 {
            vec![1; v.dim()]
        } else {
            trial_coefficients(v.dim(), seed, t).0
        };
        let element = combination(v.basis(), &coeffs, n, n);
        let discriminant = charpoly_discriminant(&element).expect("square");
        if !discriminant.is_zero() {
            return Some(GenericElement {
                element,
                discriminant,
                trial: t,
            });
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlandersReport {
    pub rows: usize,
    pub cols: usize,
    pub dim: usize,
    /// Largest member rank seen; a lower bound for the true maximum.
    pub k_hat: usize,
    pub bound: usize,
    pub pass: bool,
    pub slack: i64,
    pub trials: usize,
    pub seed: u64,
}

/// `dim <= k_hat * max(rows, cols)` with `k_hat` the largest rank among the
/// basis and `trials` seeded combinations.
pub fn flanders_check(v: &RectSubspace, trials: usize, seed: u64) -> FlandersReport {
    let (rows, cols) = (v.rows(), v.cols());
    let basis = v.basis();
    let mut k_hat = basis.iter().map(Mat::rank).max().unwrap_or(0);
    if !basis.is_empty() {
        for t in 0..trials {
            let m = combination(
                &basis,
                &trial_coefficients(basis.len(), seed, t).0,
                rows,
                cols,
            );
            k_hat = k_hat.max(m.rank());
        }
    }
    let bound = k_hat * rows.max(cols);
    FlandersReport {
        rows,
        cols,
        dim: v.dim(),
        k_hat,
        bound,
        pass: v.dim() <= bound,
        slack: bound as i64 - v.dim() as i64,
        trials,
        seed,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureStatus {
    MatchesVk,
    MatchesVkTranspose,
    Exceptional {
        tag: ExceptionalTag,
        transposed: bool,
    },
    NoMatch,
    NotEqualityCase,
}

impl StructureStatus {
    pub fn is_match(self) -> bool {
        matches!(
            self,
            StructureStatus::MatchesVk
                | StructureStatus::MatchesVkTranspose
                | StructureStatus::Exceptional { .. }
        )
    }

    pub fn name(self) -> String {
        match self {
            StructureStatus::MatchesVk => "MATCHES_VK".into(),
            StructureStatus::MatchesVkTranspose => "MATCHES_VK_TRANSPOSE".into(),
            StructureStatus::Exceptional { tag, transposed } => {
                format!(
                    "EXCEPTIONAL({}{})",
                    tag.tag(),
                    if transposed { ",T" } else { "" }
                )
            }
            StructureStatus::NoMatch => "NO_MATCH".into(),
            StructureStatus::NotEqualityCase => "NOT_EQUALITY_CASE".into(),
        }
    }
}

impl fmt::Display for StructureStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureVerdict {
    pub status: StructureStatus,
    pub n: usize,
    pub dim: usize,
    pub k_hat: usize,
    pub bound: Option<usize>,
    /// Split of the Schur corner, on a v_k match.
    pub l: Option<usize>,
    /// Dimensions of the recovered invariant subspaces `U1 (⊂ U2)`.
    pub chain_dims: Vec<usize>,
    /// `W` with `W V W^-1` (or the same for the transposed space) equal to
    /// the canonical construction.
    pub witness_basis: Option<Mat>,
    pub diagnostics: Vec<String>,
}

struct Found {
    status_tag: Option<ExceptionalTag>,
    l: Option<usize>,
    chain_dims: Vec<usize>,
    witness: Mat,
}

/// Attempts per corner shape when looking for a normalizing member.
const NORMAL_FORM_ATTEMPTS: usize = 16;

/// Members of `family` to try: the basis, then small seeded combinations.
fn candidates(family: &[Mat], m: usize, seed: u64) -> Vec<Mat> {
    let mut out: Vec<Mat> = family.to_vec();
    let mut g = rng::seeded(seed);
    for _ in 0..NORMAL_FORM_ATTEMPTS {
        let coeffs: Vec<i64> = (0..family.len()).map(|_| g.gen_range(-10..=10)).collect();
        out.push(combination(family, &coeffs, m, m));
    }
    out
}

fn scalar_part(a: &Mat) -> Rational {
    a.trace() / Rational::from_i64(a.rows() as i64)
}

/// Basis putting the quotient family into Schur form, with its split.
fn schur_frame(family: &[Mat], m: usize, n: usize, k: usize) -> Option<(Mat, usize)> {
    let mut image = VectorSpace::zero(m);
    for a in family {
        let nil = a.shift(&scalar_part(a));
        for c in nil.column_space() {
            image.insert(c).expect("sized");
        }
    }
    let l = image.dim();
    if !valid_splits(n, k).contains(&l) {
        return None;
    }
    Some((Mat::from_columns(m, &image.extend_to_basis()), l))
}

fn eigenbasis(b: &Mat) -> Option<Mat> {
    let m = b.rows();
    let roots = rational_roots(&charpoly(b).ok()?);
    if roots.len() != m {
        return None;
    }
    let cols: Vec<Vec<Rational>> = roots
        .iter()
        .map(|r| b.shift(r).kernel_basis().into_iter().next())
        .collect::<Option<_>>()?;
    Some(Mat::from_columns(m, &cols))
}

/// `[N^2 v, N v, v]` for `N = b - tr(b)/3` of rank two.
fn cyclic_basis(b: &Mat) -> Option<Mat> {
    let nil = b.shift(&scalar_part(b));
    if nil.rank() != 2 || !(&(&nil * &nil) * &nil).is_zero() {
        return None;
    }
    let n2 = &nil * &nil;
    let v = (0..3)
        .map(|i| Mat::<Rational>::unit(3, 1, i, 0).column(0))
        .find(|e| !n2.mul_vec(e).iter().all(Zero::is_zero))?;
    Some(Mat::from_columns(3, &[n2.mul_vec(&v), nil.mul_vec(&v), v]))
}

/// `[(b - a) v, v, w]` for a double eigenvalue `a` with a single Jordan
/// block and a simple eigenvalue `c` with eigenvector `w`.
fn jordan_plus_scalar_basis(b: &Mat) -> Option<Mat> {
    let roots = rational_roots(&charpoly(b).ok()?);
    if roots.len() != 2 {
        return None;
    }
    for (a, c) in [(&roots[0], &roots[1]), (&roots[1], &roots[0])] {
        let shifted = b.shift(a);
        let square = &shifted * &shifted;
        let generalized = square.kernel_basis();
        if generalized.len() != 2 || shifted.kernel_basis().len() != 1 {
            continue;
        }
        let eig = VectorSpace::span(3, shifted.kernel_basis()).expect("sized");
        let v = generalized.into_iter().find(|x| !eig.contains(x))?;
        let w = b.shift(c).kernel_basis().into_iter().next()?;
        return Some(Mat::from_columns(3, &[shifted.mul_vec(&v), v, w]));
    }
    None
}

fn exceptional_frame(tag: ExceptionalTag, family: &[Mat], m: usize, seed: u64) -> Vec<Mat> {
    candidates(family, m, seed)
        .iter()
        .filter_map(|b| match tag {
            ExceptionalTag::Diagonal => eigenbasis(b),
            ExceptionalTag::NilRank1PlusC => jordan_plus_scalar_basis(b),
            ExceptionalTag::NilRank2 => cyclic_basis(b),
        })
        .take(4)
        .collect()
}

/// Tries to conjugate `v` onto `v_k(n, k, l)` or an exceptional block space.
fn recover(
    v: &MatrixSubspace,
    k: usize,
    seed: u64,
    diagnostics: &mut Vec<String>,
) -> Option<Found> {
    let n = v.ambient();
    let basis = v.basis();
    let mut columns = VectorSpace::zero(n);
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            for c in commutator(&basis[i], &basis[j])
                .expect("square")
                .column_space()
            {
                columns.insert(c).expect("sized");
            }
        }
    }
    let u1 = columns.invariant_closure(basis);
    if u1.dim() != k {
        diagnostics.push(format!(
            "commutator closure has dim {}, expected {k}",
            u1.dim()
        ));
        return None;
    }
    let q1 = Mat::from_columns(n, &u1.extend_to_basis());
    let q1_inv = q1.inverse().expect("basis");
    let m = n - k;
    let family: Vec<Mat> = basis
        .iter()
        .map(|a| (&(&q1_inv * a) * &q1).block(k, n, k, n))
        .collect();
    let lift = |frame: &Mat| &q1 * &Mat::block_diag(&Mat::identity(k), frame);
    let check = |p: &Mat, target: &MatrixSubspace| -> Option<Mat> {
        let w = p.inverse()?;
        (v.conjugate(&w).ok()? == *target).then_some(w)
    };
    match schur_frame(&family, m, n, k) {
        Some((frame, l)) => {
            let target = v_k(n, k, l).expect("valid split");
            if let Some(w) = check(&lift(&frame), &target) {
                return Some(Found {
                    status_tag: None,
                    l: Some(l),
                    chain_dims: vec![k, k + l],
                    witness: w,
                });
            }
            diagnostics.push(format!(
                "Schur frame with split {l} does not conjugate onto v_k"
            ));
        }
        None => diagnostics.push("quotient images give no valid split".into()),
    }
    for tag in ExceptionalTag::all_for(m) {
        let target = exceptional_block_space(n, k, tag).expect("defined");
        for frame in exceptional_frame(tag, &family, m, seed) {
            if let Some(w) = check(&lift(&frame), &target) {
                return Some(Found {
                    status_tag: Some(tag),
                    l: None,
                    chain_dims: vec![k],
                    witness: w,
                });
            }
        }
    }
    None
}

/// Decides whether a space at the equality dimension is similar to `v_k`,
/// to its transpose, or to an exceptional block space. Every match is
/// confirmed by exact comparison of canonical bases.
pub fn structure_check(v: &MatrixSubspace, trials: usize, seed: u64) -> Result<StructureVerdict> {
    let n = v.ambient();
    let profile = max_commutator_rank(v, trials, seed)?;
    let k_hat = profile.probable_max;
    let bound = dimension_bound(n, k_hat).ok();
    let mut verdict = StructureVerdict {
        status: StructureStatus::NotEqualityCase,
        n,
        dim: v.dim(),
        k_hat,
        bound,
        l: None,
        chain_dims: Vec::new(),
        witness_basis: None,
        diagnostics: Vec::new(),
    };
    if bound != Some(v.dim()) {
        return Ok(verdict);
    }
    let mut diagnostics = Vec::new();
    for transposed in [false, true] {
        let space = if transposed {
            v.transpose_space()
        } else {
            v.clone()
        };
        if let Some(found) = recover(&space, k_hat, seed, &mut diagnostics) {
            verdict.status = match (found.status_tag, transposed) {
                (None, false) => StructureStatus::MatchesVk,
                (None, true) => StructureStatus::MatchesVkTranspose,
                (Some(tag), transposed) => StructureStatus::Exceptional { tag, transposed },
            };
            verdict.l = found.l;
            verdict.chain_dims = found.chain_dims;
            verdict.witness_basis = Some(found.witness);
            verdict.diagnostics = diagnostics;
            return Ok(verdict);
        }
    }
    verdict.status = StructureStatus::NoMatch;
    verdict.diagnostics = diagnostics;
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraStatus {
    Pass,
    Fail,
    /// Not an algebra, or not at the equality dimension.
    NotCovered,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraReport {
    pub is_algebra: bool,
    pub equality: bool,
    pub structure: StructureVerdict,
    pub status: AlgebraStatus,
}

/// An algebra at the equality dimension should match one of the known forms.
pub fn algebra_structure_report(
    v: &MatrixSubspace,
    trials: usize,
    seed: u64,
) -> Result<AlgebraReport> {
    let is_algebra = v.is_algebra();
    let structure = structure_check(v, trials, seed)?;
    let equality = structure.bound == Some(structure.dim);
    let status = if !is_algebra || !equality {
        AlgebraStatus::NotCovered
    } else if structure.status.is_match() {
        AlgebraStatus::Pass
    } else {
        AlgebraStatus::Fail
    };
    Ok(AlgebraReport {
        is_algebra,
        equality,
        structure,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commrank::DEFAULT_TRIALS;
    use crate::constructions::{flanders_space, schur_space, thm2_space, Thm2Side};
    use crate::exact_linalg::int;
    use crate::exact_linalg::mat::random_invertible;

    fn conj(v: &MatrixSubspace, seed: u64) -> MatrixSubspace {
        let q = random_invertible(&mut rng::seeded(seed), v.ambient(), 3);
        v.conjugate(&q).unwrap()
    }

    #[test]
    fn distinct_eigenvalue_examples() {
        let d = Mat::diag(&[int(1), int(2), int(3)]);
        let v = MatrixSubspace::span(3, std::slice::from_ref(&d)).unwrap();
        assert_eq!(
            find_distinct_eigenvalue_element(&v, 10, 0).unwrap().element,
            d
        );
        let e12 = MatrixSubspace::span(2, &[Mat::unit(2, 2, 0, 1)]).unwrap();
        assert!(find_distinct_eigenvalue_element(&e12, 10, 0).is_none());
    }

    #[test]
    fn flanders_examples() {
        let r = flanders_check(&flanders_space(4, 4, 2).unwrap(), DEFAULT_TRIALS, 0);
        assert_eq!((r.k_hat, r.dim, r.slack, r.pass), (2, 8, 0, true));
        let r = flanders_check(&RectSubspace::zero(3, 4), DEFAULT_TRIALS, 0);
        assert!(r.pass);
        let full: Vec<Mat> = (0..3)
            .flat_map(|i| (0..5).map(move |j| Mat::unit(3, 5, i, j)))
            .collect();
        let r = flanders_check(&RectSubspace::span(3, 5, &full).unwrap(), DEFAULT_TRIALS, 0);
        assert_eq!((r.k_hat, r.dim, r.slack), (3, 15, 0));
    }

    #[test]
    fn structure_round_trips() {
        let v = conj(&v_k(5, 2, 1).unwrap(), 3);
        let s = structure_check(&v, DEFAULT_TRIALS, 0).unwrap();
        assert_eq!(s.status, StructureStatus::MatchesVk);
        assert_eq!(s.chain_dims, vec![2, 3]);
        let w = s.witness_basis.unwrap();
        assert_eq!(v.conjugate(&w).unwrap(), v_k(5, 2, 1).unwrap());

        let t = conj(&v_k(5, 2, 2).unwrap(), 5).transpose_space();
        let s = structure_check(&t, DEFAULT_TRIALS, 0).unwrap();
        assert_eq!(s.status, StructureStatus::MatchesVkTranspose);
        let w = s.witness_basis.unwrap();
        assert_eq!(
            t.transpose_space().conjugate(&w).unwrap(),
            v_k(5, 2, 2).unwrap()
        );

        let s = structure_check(&schur_space(4).unwrap(), DEFAULT_TRIALS, 0).unwrap();
        assert_eq!((s.status, s.k_hat), (StructureStatus::MatchesVk, 0));
        assert_eq!(s.chain_dims, vec![0, 2]);
    }

    #[test]
    fn exceptional_round_trips() {
        for (n, k) in [(3, 1), (4, 1), (5, 2), (2, 0), (3, 0)] {
            for tag in ExceptionalTag::all_for(n - k) {
                let target = exceptional_block_space(n, k, tag).unwrap();
                let v = conj(&target, 11);
                let s = structure_check(&v, DEFAULT_TRIALS, 0).unwrap();
                assert!(s.status.is_match(), "{n} {k} {tag:?} {:?}", s.diagnostics);
                if let StructureStatus::Exceptional {
                    tag: found,
                    transposed: false,
                } = s.status
                {
                    assert_eq!(found, tag);
                    assert_eq!(v.conjugate(&s.witness_basis.unwrap()).unwrap(), target);
                }
            }
        }
    }

    #[test]
    fn not_equality_case() {
        let v = MatrixSubspace::span(3, &[Mat::identity(3)]).unwrap();
        let s = structure_check(&v, DEFAULT_TRIALS, 0).unwrap();
        assert_eq!(s.status, StructureStatus::NotEqualityCase);
    }

    #[test]
    fn algebra_reports() {
        let r = algebra_structure_report(&v_k(6, 2, 2).unwrap(), DEFAULT_TRIALS, 0).unwrap();
        assert_eq!(r.status, AlgebraStatus::Pass);
        let r = algebra_structure_report(
            &thm2_space(4, Thm2Side::LastRow).unwrap(),
            DEFAULT_TRIALS,
            0,
        )
        .unwrap();
        assert_eq!((r.status, r.structure.k_hat), (AlgebraStatus::Pass, 3));
        let r = algebra_structure_report(
            &thm2_space(4, Thm2Side::FirstCol).unwrap(),
            DEFAULT_TRIALS,
            0,
        )
        .unwrap();
        assert_eq!(r.status, AlgebraStatus::Pass);
        let swap =
            MatrixSubspace::span(2, &[Mat::unit(2, 2, 0, 1), Mat::unit(2, 2, 1, 0)]).unwrap();
        let r = algebra_structure_report(&swap, DEFAULT_TRIALS, 0).unwrap();
        assert!(!r.is_algebra);
        assert_eq!(r.status, AlgebraStatus::NotCovered);
    }
}

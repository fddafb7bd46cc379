//! Simultaneous triangularization of spaces whose commutators have rank at
//! most one, and of commuting spaces.
//!
//! The recursion finds one nontrivial common invariant subspace per level:
//! for a non-scalar member `A` with eigenvalue `λ`, either `ker(A - λI)` or
//! the range of `A - λI` is invariant when the commutators share a column
//! direction. Families sharing a row direction are transposed first.

// Errors carry their witness matrices by value.
#![allow(clippy::result_large_err)]

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use thiserror::Error;

use crate::commrank::satisfies_rank_condition;
use crate::commrank::RankVerdict;
use crate::exact_linalg::{
    charpoly, commutator, rational_roots, AlgebraicNumber, ExtensionContext, Field, Mat, Poly,
    Rational,
};
use crate::subspace::{MatrixSubspace, VectorSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// All commutators vanish.
    Zero,
    /// Commutators are `x0 y^T`.
    Left,
    /// Commutators are `y x0^T`.
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Zero => "ZERO",
            Side::Left => "LEFT",
            Side::Right => "RIGHT",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankOneFamily<F: Field = Rational> {
    pub side: Side,
    /// Shared direction, scaled so its first nonzero entry is 1.
    pub x0: Option<Vec<F>>,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum TriangularizeError {
    /// A commutator of rank at least two exists, or basis-pair commutators
    /// disagree on both directions.
    #[error("commutators are not of a single rank-one type: {detail}")]
    Inconsistent {
        /// Members of the space whose commutator has rank `rank >= 2`.
        witness: Option<(Mat, Mat)>,
        rank: Option<usize>,
        /// Basis index pairs with conflicting directions.
        conflict: Option<((usize, usize), (usize, usize))>,
        detail: String,
    },
    /// Neither kernel nor range of the chosen singular member is invariant.
    #[error("no invariant kernel or range at size {size}: {detail}")]
    InvariantFailure { size: usize, detail: String },
    #[error("basis elements {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    /// An eigenvalue outside the single supported extension was needed.
    #[error("no eigenvalue found in Q or in the extension by {modulus}")]
    NoEigenvalue { modulus: String },
    #[error("change of basis is singular")]
    Singular,
}

type TriResult<T> = std::result::Result<T, TriangularizeError>;

/// Normalizes so the first nonzero entry is one.
fn normalize<F: Field>(v: &[F]) -> Vec<F> {
    match v.iter().find(|x| !x.is_zero()).and_then(F::inv) {
        Some(inv) => v.iter().map(|x| x.clone() * &inv).collect(),
        None => v.to_vec(),
    }
}

fn parallel<F: Field>(a: &[F], b: &[F]) -> bool {
    // a is a normalized nonzero direction
    let Some(p) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let c = b[p].clone();
    a.iter().zip(b).all(|(x, y)| x.clone() * &c == *y)
}

/// Columns of `c` all parallel to `u`.
fn columns_along<F: Field>(c: &Mat<F>, u: &[F]) -> bool {
    c.columns().iter().all(|col| parallel(u, col))
}

fn rows_along<F: Field>(c: &Mat<F>, v: &[F]) -> bool {
    (0..c.rows()).all(|i| parallel(v, c.row(i)))
}

enum Classified<F: Field> {
    Family(RankOneFamily<F>),
    RankTwo { i: usize, j: usize, rank: usize },
    Conflict((usize, usize), (usize, usize)),
}

fn classify_ops<F: Field>(ops: &[Mat<F>]) -> Classified<F> {
    let mut comms = Vec::new();
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            let c = commutator(&ops[i], &ops[j]).expect("square");
            if c.is_zero() {
                continue;
            }
            let rank = c.rank();
            if rank >= 2 {
                return Classified::RankTwo { i, j, rank };
            }
            comms.push(((i, j), c));
        }
    }
    let Some((first_pair, first)) = comms.first() else {
        return Classified::Family(RankOneFamily {
            side: Side::Zero,
            x0: None,
        });
    };
    let u = normalize(
        &first.column(
            first
                .columns()
                .iter()
                .position(|c| c.iter().any(|x| !x.is_zero()))
                .expect("nonzero"),
        ),
    );
    let row = (0..first.rows())
        .find(|&i| first.row(i).iter().any(|x| !x.is_zero()))
        .expect("nonzero");
    let v = normalize(first.row(row));
    let left_bad = comms.iter().find(|(_, c)| !columns_along(c, &u));
    if left_bad.is_none() {
        return Classified::Family(RankOneFamily {
            side: Side::Left,
            x0: Some(u),
        });
    }
    let right_bad = comms.iter().find(|(_, c)| !rows_along(c, &v));
    match right_bad {
        None => Classified::Family(RankOneFamily {
            side: Side::Right,
            x0: Some(v),
        }),
        Some((pair, _)) => {
            let left_pair = left_bad.expect("checked").0;
            let other = if *pair != *first_pair {
                *pair
            } else {
                left_pair
            };
            Classified::Conflict(*first_pair, other)
        }
    }
}

/// Searches combinations of two conflicting basis pairs, then random
/// members, for a commutator of rank two or more.
fn conflict_witness(
    v: &MatrixSubspace,
    p: (usize, usize),
    q: (usize, usize),
) -> Option<(Mat, Mat, usize)> {
    let b = v.basis();
    for lambda in 1..=8i64 {
        let l = Rational::from_i64(lambda);
        for (x, y) in [(q.0, q.1), (q.1, q.0)] {
            let a = &b[p.0] + &b[x].scale(&l);
            let c = &b[p.1] + &b[y].scale(&l);
            let r = commutator(&a, &c).expect("square").rank();
            if r >= 2 {
                return Some((a, c, r));
            }
        }
    }
    if v.ambient() >= 2 {
        if let Ok(RankVerdict::CertifiedNo { a, b, rank, .. }) =
            satisfies_rank_condition(v, 1, 64, 0)
        {
            return Some((a, b, rank));
        }
    }
    None
}

/// Determines whether the basis-pair commutators share a column direction
/// (LEFT), a row direction (RIGHT), or all vanish. LEFT wins ties.
pub fn classify_rank_one_family(v: &MatrixSubspace) -> TriResult<RankOneFamily> {
    match classify_ops(v.basis()) {
        Classified::Family(f) => Ok(f),
        Classified::RankTwo { i, j, rank } => Err(TriangularizeError::Inconsistent {
            witness: Some((v.basis()[i].clone(), v.basis()[j].clone())),
            rank: Some(rank),
            conflict: None,
            detail: format!("basis elements {i} and {j} have a commutator of rank {rank}"),
        }),
        Classified::Conflict(p, q) => {
            let found = conflict_witness(v, p, q);
            let detail = match &found {
                Some((_, _, r)) => {
                    format!("basis pairs {p:?} and {q:?} conflict; witness of rank {r}")
                }
                None => format!("basis pairs {p:?} and {q:?} share neither direction"),
            };
            Err(TriangularizeError::Inconsistent {
                rank: found.as_ref().map(|w| w.2),
                witness: found.map(|(a, b, _)| (a, b)),
                conflict: Some((p, q)),
                detail,
            })
        }
    }
}

/// Outcome of a successful triangularization over a field `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularizationResult<F: Field = Rational> {
    pub p: Mat<F>,
    pub p_inv: Mat<F>,
    pub chain_dims: Vec<usize>,
    /// `P^-1 A P` for each basis element `A`, all upper triangular.
    pub triangular_forms: Vec<Mat<F>>,
}

impl<F: Field> TriangularizationResult<F> {
    /// Strictly lower parts of the triangular forms; all zero.
    pub fn certificate(&self) -> Vec<Mat<F>> {
        self.triangular_forms
            .iter()
            .map(Mat::strictly_lower)
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.triangular_forms.iter().all(Mat::is_upper_triangular)
    }
}

/// Triangularization over Q, or over `Q[t]/(modulus)` when no rational
/// eigenvalue was available.
#[derive(Clone, Debug, PartialEq)]
pub enum Triangularization {
    Rational(TriangularizationResult<Rational>),
    Extension {
        modulus: Poly<Rational>,
        result: TriangularizationResult<AlgebraicNumber>,
    },
}

impl Triangularization {
    pub fn chain_dims(&self) -> &[usize] {
        match self {
            Triangularization::Rational(r) => &r.chain_dims,
            Triangularization::Extension { result, .. } => &result.chain_dims,
        }
    }

    pub fn is_valid(&self) -> bool {
        match self {
            Triangularization::Rational(r) => r.is_valid(),
            Triangularization::Extension { result, .. } => result.is_valid(),
        }
    }

    pub fn rational(&self) -> Option<&TriangularizationResult<Rational>> {
        match self {
            Triangularization::Rational(r) => Some(r),
            Triangularization::Extension { .. } => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mode {
    Commuting,
    RankOne,
}

enum EngineError<F: Field> {
    Fatal(TriangularizeError),
    NoEigenvalue(Mat<F>),
}

impl<F: Field> From<TriangularizeError> for EngineError<F> {
    fn from(e: TriangularizeError) -> Self {
        EngineError::Fatal(e)
    }
}

/// Extra combinations tried when no basis operator has a known eigenvalue.
const COMBINATION_ATTEMPTS: usize = 16;

struct Engine<'a, F: Field> {
    mode: Mode,
    eigenvalue: &'a dyn Fn(&Mat<F>) -> Option<F>,
}

fn invariant<F: Field>(space: &VectorSpace<F>, ops: &[Mat<F>]) -> bool {
    ops.iter()
        .all(|a| space.basis().iter().all(|w| space.contains(&a.mul_vec(w))))
}

impl<F: Field> Engine<'_, F> {
    fn find_eigenpair(&self, ops: &[Mat<F>]) -> Option<(Mat<F>, F)> {
        for a in ops {
            if let Some(l) = (self.eigenvalue)(a) {
                return Some((a.clone(), l));
            }
        }
        let mut tried = 0;
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                if tried == COMBINATION_ATTEMPTS {
                    return None;
                }
                tried += 1;
                let c = &ops[i] + &ops[j].scale(&F::from_i64(j as i64 + 1));
                if c.scalar_value().is_some() {
                    continue;
                }
                if let Some(l) = (self.eigenvalue)(&c) {
                    return Some((c, l));
                }
            }
        }
        None
    }

    fn flag(&self, ops: &[Mat<F>], m: usize) -> Result<Mat<F>, EngineError<F>> {
        if m <= 1 {
            return Ok(Mat::identity(m));
        }
        let span = MatrixSubspace::span(m, ops).expect("square ops");
        let ops: Vec<Mat<F>> = span
            .basis()
            .iter()
            .filter(|a| a.scalar_value().is_none())
            .cloned()
            .collect();
        if ops.iter().all(Mat::is_upper_triangular) {
            return Ok(Mat::identity(m));
        }
        let mut use_range = false;
        if self.mode == Mode::RankOne {
            match classify_ops(&ops) {
                Classified::Family(f) if f.side == Side::Right => {
                    let transposed: Vec<_> = ops.iter().map(Mat::transpose).collect();
                    let pt = self.flag(&transposed, m)?;
                    let pt_inv = pt.inverse().ok_or(TriangularizeError::Singular)?;
                    return Ok(&pt_inv.transpose() * &Mat::reversal(m));
                }
                Classified::Family(f) => use_range = f.side == Side::Left,
                Classified::RankTwo { rank, .. } => {
                    return Err(TriangularizeError::Inconsistent {
                        witness: None,
                        rank: Some(rank),
                        conflict: None,
                        detail: format!(
                            "a compressed block of size {m} has a commutator of rank {rank}"
                        ),
                    }
                    .into())
                }
                Classified::Conflict(..) => {
                    return Err(TriangularizeError::Inconsistent {
                        witness: None,
                        rank: None,
                        conflict: None,
                        detail: format!("a compressed block of size {m} mixes directions"),
                    }
                    .into())
                }
            }
        }
        let Some((a, lambda)) = self.find_eigenpair(&ops) else {
            return Err(EngineError::NoEigenvalue(ops[0].clone()));
        };
        let b0 = a.shift(&lambda);
        if b0.rank() >= m {
            return Err(TriangularizeError::InvariantFailure {
                size: m,
                detail: "eigenvalue oracle returned a non-eigenvalue".into(),
            }
            .into());
        }
        let kernel = VectorSpace::span(m, b0.kernel_basis()).expect("sized");
        let w = if invariant(&kernel, &ops) {
            kernel
        } else {
            let range = VectorSpace::span(m, b0.column_space()).expect("sized");
            if use_range && invariant(&range, &ops) {
                range
            } else {
                return Err(TriangularizeError::InvariantFailure {
                    size: m,
                    detail: "kernel and range of the shifted member both fail".into(),
                }
                .into());
            }
        };
        let d = w.dim();
        let q = Mat::from_columns(m, &w.extend_to_basis());
        let q_inv = q.inverse().ok_or(TriangularizeError::Singular)?;
        let mut top = Vec::with_capacity(ops.len());
        let mut bottom = Vec::with_capacity(ops.len());
        for a in &ops {
            let c = &(&q_inv * a) * &q;
            if !c.block(d, m, 0, d).is_zero() {
                return Err(TriangularizeError::InvariantFailure {
                    size: m,
                    detail: "block form lost after change of basis".into(),
                }
                .into());
            }
            top.push(c.block(0, d, 0, d));
            bottom.push(c.block(d, m, d, m));
        }
        let pa = self.flag(&top, d)?;
        let pb = self.flag(&bottom, m - d)?;
        Ok(&q * &Mat::block_diag(&pa, &pb))
    }
}

fn finish<F: Field>(basis: &[Mat<F>], p: Mat<F>) -> TriResult<TriangularizationResult<F>> {
    let n = p.rows();
    let p_inv = p.inverse().ok_or(TriangularizeError::Singular)?;
    let triangular_forms: Vec<_> = basis.iter().map(|a| &(&p_inv * a) * &p).collect();
    let result = TriangularizationResult {
        p,
        p_inv,
        chain_dims: (1..=n).collect(),
        triangular_forms,
    };
    if !result.is_valid() {
        return Err(TriangularizeError::InvariantFailure {
            size: n,
            detail: "assembled change of basis does not triangularize".into(),
        });
    }
    Ok(result)
}

fn rational_eigenvalue(a: &Mat<Rational>) -> Option<Rational> {
    let p = charpoly(a).ok()?;
    rational_roots(&p).into_iter().next()
}

fn run(v: &MatrixSubspace, mode: Mode) -> TriResult<Triangularization> {
    let n = v.ambient();
    let mut ops: Vec<Mat> = v.basis().to_vec();
    ops.push(Mat::identity(n));
    let engine = Engine {
        mode,
        eigenvalue: &rational_eigenvalue,
    };
    match engine.flag(&ops, n) {
        Ok(p) => Ok(Triangularization::Rational(finish(v.basis(), p)?)),
        Err(EngineError::Fatal(e)) => Err(e),
        Err(EngineError::NoEigenvalue(op)) => {
            let f = charpoly(&op)
                .map_err(|_| TriangularizeError::Singular)?
                .squarefree_part();
            run_extension(v, mode, f)
        }
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// Square root in a quadratic extension `Q[t]/(t^2 + b t + c)`.
fn extension_sqrt(ctx: &Arc<ExtensionContext>, z: &AlgebraicNumber) -> Option<AlgebraicNumber> {
    if ctx.degree() != 2 {
        return None;
    }
    let half = Rational::new(1.into(), 2.into());
    let b = ctx.modulus().coeff(1);
    let c = ctx.modulus().coeff(0);
    // s = t + b/2 satisfies s^2 = e
    let e = &b * &b * &half * &half - &c;
    let z1 = z.poly().coeff(1);
    let z0 = z.poly().coeff(0) - &z1 * &b * &half;
    let (u, v) = if z1.is_zero() {
        match rational_sqrt(&z0) {
            Some(u) => (u, Rational::zero()),
            None => (Rational::zero(), rational_sqrt(&(&z0 / &e))?),
        }
    } else {
        // u^2 + e v^2 = z0, 2 u v = z1, so u^2 solves X^2 - z0 X + e z1^2 / 4 = 0
        let r = rational_sqrt(&(&z0 * &z0 - &e * &z1 * &z1))?;
        let u = [(&z0 + &r) * &half, (&z0 - &r) * &half]
            .iter()
            .filter(|x| !x.is_zero())
            .find_map(rational_sqrt)?;
        let v = &z1 * &half / &u;
        (u, v)
    };
    let s = Poly::new(vec![&u + &v * &b * &half, v]);
    Some(ctx.element(s))
}

/// Eigenvalue of a 2x2 matrix through the quadratic formula.
fn quadratic_eigenvalue(
    ctx: &Arc<ExtensionContext>,
    a: &Mat<AlgebraicNumber>,
) -> Option<AlgebraicNumber> {
    if a.rows() != 2 {
        return None;
    }
    let tr = a.trace();
    let det = a.get(0, 0).clone() * a.get(1, 1) - a.get(0, 1).clone() * a.get(1, 0);
    let disc = tr.clone() * &tr - AlgebraicNumber::from_i64(4) * &det;
    let s = extension_sqrt(ctx, &disc)?;
    Some((tr + &s) * &AlgebraicNumber::from_rational(Rational::new(1.into(), 2.into())))
}

/// Restarts over `Q[t]/(f)`, shrinking `f` whenever a zero divisor exposes a
/// factor.
fn run_extension(
    v: &MatrixSubspace,
    mode: Mode,
    mut f: Poly<Rational>,
) -> TriResult<Triangularization> {
    let rational_candidates: Vec<Rational> = {
        let mut c: Vec<Rational> = v
            .basis()
            .iter()
            .filter_map(|a| charpoly(a).ok())
            .flat_map(|p| rational_roots(&p))
            .collect();
        c.sort();
        c.dedup();
        c
    };
    let lift = |m: &Mat<Rational>| m.map(|x| AlgebraicNumber::from_rational(x.clone()));
    loop {
        let ctx = ExtensionContext::new(&f);
        let theta = ctx.theta();
        let mut candidates = vec![theta.clone()];
        if ctx.degree() == 2 {
            // other root of t^2 + b t + c is -b - t
            let b = AlgebraicNumber::from_rational(ctx.modulus().coeff(1));
            candidates.push(-b - theta.clone());
        }
        candidates.extend(
            rational_candidates
                .iter()
                .cloned()
                .map(AlgebraicNumber::from_rational),
        );
        let oracle = |a: &Mat<AlgebraicNumber>| -> Option<AlgebraicNumber> {
            let m = a.rows();
            candidates
                .iter()
                .find(|c| a.shift(c).rank() < m)
                .cloned()
                .or_else(|| quadratic_eigenvalue(&ctx, a).filter(|c| a.shift(c).rank() < m))
        };
        let n = v.ambient();
        let basis: Vec<_> = v.basis().iter().map(lift).collect();
        let mut ops = basis.clone();
        ops.push(Mat::identity(n));
        let engine = Engine {
            mode,
            eigenvalue: &oracle,
        };
        let outcome = engine.flag(&ops, n);
        let finished = match outcome {
            Ok(p) => Some(finish(&basis, p)),
            Err(EngineError::Fatal(e)) => Some(Err(e)),
            Err(EngineError::NoEigenvalue(_)) => None,
        };
        if let Some(g) = ctx.split_factor() {
            f = g;
            continue;
        }
        return match finished {
            Some(Ok(result)) => Ok(Triangularization::Extension { modulus: f, result }),
            Some(Err(e)) => Err(e),
            None => Err(TriangularizeError::NoEigenvalue {
                modulus: format!("{:?}", f.coeffs()),
            }),
        };
    }
}

/// Common-eigenvector recursion for a commuting space.
pub fn triangularize_commuting(v: &MatrixSubspace) -> TriResult<Triangularization> {
    let b = v.basis();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !commutator(&b[i], &b[j]).expect("square").is_zero() {
                return Err(TriangularizeError::NonCommuting(i, j));
            }
        }
    }
    run(v, Mode::Commuting)
}

/// Triangularizes a space whose commutators have rank at most one.
pub fn triangularize_rank_one(v: &MatrixSubspace) -> TriResult<Triangularization> {
    let family = classify_rank_one_family(v)?;
    if family.side == Side::Zero {
        return triangularize_commuting(v);
    }
    run(v, Mode::RankOne)
}

/// `P^-1 A P` is upper triangular for every basis element `A`.
pub fn verify_triangular<F: Field>(v: &MatrixSubspace<F>, p: &Mat<F>) -> crate::Result<bool> {
    let p_inv = p.inverse().ok_or(crate::Error::Singular)?;
    Ok(v.basis()
        .iter()
        .all(|a| (&(&p_inv * a) * p).is_upper_triangular()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{rank_one_max_space, RankOneVariant};
    use crate::exact_linalg::{int, mat::random_invertible};
    use crate::rng;

    fn e(n: usize, i: usize, j: usize) -> Mat {
        Mat::unit(n, n, i, j)
    }

    fn span(n: usize, mats: &[Mat]) -> MatrixSubspace {
        MatrixSubspace::span(n, mats).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = span(2, &[Mat::identity(2), e(2, 0, 0)]);
        assert_eq!(classify_rank_one_family(&c).unwrap().side, Side::Zero);
        let v = span(2, &[e(2, 0, 0), e(2, 0, 1)]);
        let f = classify_rank_one_family(&v).unwrap();
        assert_eq!(f.side, Side::Left);
        assert_eq!(f.x0, Some(vec![int(1), int(0)]));
        let r = rank_one_max_space(5, RankOneVariant::Generic(2)).unwrap();
        let f = classify_rank_one_family(&r).unwrap();
        assert_eq!(f.side, Side::Left);
        assert_eq!(
            f.x0.unwrap(),
            (0..5).map(|i| int((i == 0) as i64)).collect::<Vec<_>>()
        );
        let bad = span(2, &[e(2, 0, 1), e(2, 1, 0)]);
        match classify_rank_one_family(&bad) {
            Err(TriangularizeError::Inconsistent {
                witness: Some(_),
                rank: Some(2),
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn transposed_family_swaps_side() {
        let r = rank_one_max_space(4, RankOneVariant::Generic(1)).unwrap();
        let left = classify_rank_one_family(&r).unwrap();
        let right = classify_rank_one_family(&r.transpose_space()).unwrap();
        assert_eq!((left.side, right.side), (Side::Left, Side::Right));
        assert_eq!(left.x0, right.x0);
    }

    #[test]
    fn commuting_examples() {
        let t = triangularize_commuting(&span(3, &[Mat::identity(3)])).unwrap();
        assert_eq!(t.rational().unwrap().p, Mat::identity(3));
        let diag = span(3, &[e(3, 0, 0), e(3, 1, 1), e(3, 2, 2)]);
        assert_eq!(
            triangularize_commuting(&diag)
                .unwrap()
                .rational()
                .unwrap()
                .p,
            Mat::identity(3)
        );
        let strict = span(3, &[e(3, 0, 1), e(3, 1, 2), e(3, 0, 2)]);
        assert_eq!(
            triangularize_commuting(&strict),
            Err(TriangularizeError::NonCommuting(0, 2))
        );
        let pair = span(3, &[e(3, 0, 1), e(3, 0, 2)]);
        let t = triangularize_commuting(&pair).unwrap();
        assert!(verify_triangular(&pair, &t.rational().unwrap().p).unwrap());
        assert_eq!(t.chain_dims(), &[1, 2, 3]);
    }

    #[test]
    fn lower_borel_gives_swap() {
        let v = span(2, &[e(2, 1, 0), &e(2, 0, 0) - &e(2, 1, 1)]);
        let t = triangularize_rank_one(&v).unwrap();
        let p = &t.rational().unwrap().p;
        assert_eq!(*p, Mat::from_i64(&[&[0, 1], &[1, 0]]));
        assert!(verify_triangular(&v, p).unwrap());
    }

    #[test]
    fn already_triangular_gives_identity() {
        let v = rank_one_max_space(4, RankOneVariant::Generic(2)).unwrap();
        let t = triangularize_rank_one(&v).unwrap();
        assert!(verify_triangular(&v, &t.rational().unwrap().p).unwrap());
        assert_eq!(t.chain_dims(), &[1, 2, 3, 4]);
    }

    #[test]
    fn conjugated_spaces_triangularize() {
        let mut g = rng::seeded(9);
        for n in 2..6 {
            let v = rank_one_max_space(n, RankOneVariant::Generic((n - 1) / 2)).unwrap();
            let q = random_invertible(&mut g, n, 3);
            let w = v.conjugate(&q).unwrap();
            let t = triangularize_rank_one(&w).unwrap();
            assert!(verify_triangular(&w, &t.rational().unwrap().p).unwrap());
            let r = v.transpose_space().conjugate(&q).unwrap();
            let t = triangularize_rank_one(&r).unwrap();
            assert!(verify_triangular(&r, &t.rational().unwrap().p).unwrap());
        }
    }

    #[test]
    fn verify_examples() {
        let diag = span(2, &[e(2, 0, 0), e(2, 1, 1)]);
        assert!(verify_triangular(&diag, &Mat::identity(2)).unwrap());
        let low = span(2, &[e(2, 1, 0)]);
        assert!(!verify_triangular(&low, &Mat::identity(2)).unwrap());
        assert!(verify_triangular(&low, &Mat::from_i64(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(verify_triangular(&low, &Mat::zeros(2, 2)).is_err());
    }

    #[test]
    fn rotation_needs_extension() {
        let rot = Mat::from_i64(&[&[0, -1], &[1, 0]]);
        let v = span(2, &[Mat::identity(2), rot]);
        match triangularize_commuting(&v).unwrap() {
            Triangularization::Extension { modulus, result } => {
                assert_eq!(modulus.degree(), Some(2));
                assert!(result.is_valid());
            }
            other => panic!("expected an extension, got {other:?}"),
        }
    }

    #[test]
    fn reducible_modulus_splits() {
        // eigenvalues +-i and -1+-i: charpoly (x^2+1)(x^2+2x+2) is reducible
        let a = Mat::from_i64(&[
            &[0, -1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, -1, -1],
            &[0, 0, 1, -1],
        ]);
        let v = span(4, &[Mat::identity(4), a]);
        match triangularize_commuting(&v).unwrap() {
            Triangularization::Extension { modulus, result } => {
                assert_eq!(modulus.degree(), Some(2));
                assert!(result.is_valid());
            }
            other => panic!("expected an extension, got {other:?}"),
        }
    }

    #[test]
    fn two_independent_extensions_are_unsupported() {
        // +-i and +-sqrt 2 need a tower
        let a = Mat::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 2], &[0, 0, 1, 0]]);
        let v = span(4, &[Mat::identity(4), a]);
        assert!(matches!(
            triangularize_commuting(&v),
            Err(TriangularizeError::NoEigenvalue { .. })
        ));
    }

    #[test]
    fn extension_square_roots() {
        let ctx = ExtensionContext::new(&Poly::new(vec![int(1), int(0), int(1)]));
        let i = ctx.theta();
        let z = AlgebraicNumber::from_i64(2) * &i;
        let s = extension_sqrt(&ctx, &z).unwrap();
        assert_eq!(s.clone() * &s, z);
        let m4 = AlgebraicNumber::from_i64(-4);
        let s = extension_sqrt(&ctx, &m4).unwrap();
        assert_eq!(s.clone() * &s, m4);
        assert!(extension_sqrt(&ctx, &AlgebraicNumber::from_i64(2)).is_none());
    }

    #[test]
    fn rank_one_with_irrational_corner() {
        // first row free, corner generated by [[0,2],[1,0]] (eigenvalues ±sqrt 2)
        let n = 3;
        let mut mats = vec![Mat::identity(n), e(n, 0, 0), e(n, 0, 1), e(n, 0, 2)];
        let mut c = Mat::zeros(n, n);
        c.set(1, 2, int(2));
        c.set(2, 1, int(1));
        mats.push(c);
        let v = span(n, &mats);
        let q = random_invertible(&mut rng::seeded(2), n, 2);
        let w = v.conjugate(&q).unwrap();
        let t = triangularize_rank_one(&w).unwrap();
        assert!(matches!(t, Triangularization::Extension { .. }));
        assert!(t.is_valid());
    }
}

//! Commutator rank over a matrix space: randomized maximum with an exact
//! witness, the rank-condition test, and the dimension bound.
//!
//! Ranks are screened modulo the session prime. Reduction mod p can only lower
//! the rank of a rational matrix, so a screened rank above `k` is always a
//! genuine violation; the winning pair is recomputed over Q before it is
//! reported.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_linalg::{commutator, Field, Fp, Mat, Rational};
use crate::rng;
use crate::subspace::MatrixSubspace;

/// Coefficients of random combinations are drawn from `[-B, B]`.
pub const COEFF_BOUND: i64 = 1_000_000;

/// Trials used when a caller does not choose.
pub const DEFAULT_TRIALS: usize = 32;

/// Rank of `[A, B]` maximized over sampled pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorProfile {
    pub n: usize,
    pub dim: usize,
    /// Exact rank of the witness commutator.
    pub certified_lower: usize,
    /// The maximizing pair; `None` only for the zero space.
    pub witness: Option<(Mat, Mat)>,
    /// Index of the first trial attaining the maximum.
    pub witness_trial: Option<usize>,
    pub probable_max: usize,
    pub trials: usize,
    pub seed: u64,
}

impl CommutatorProfile {
    /// Estimated `k`; `None` when commutators can be invertible, in which case
    /// no `k < n` applies.
    pub fn k_hat(&self) -> Option<usize> {
        (self.probable_max < self.n).then_some(self.probable_max)
    }
}

fn coefficients(g: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vec<i64> {
    (0..dim).map(|_| g.gen_range(-bound..=bound)).collect()
}

fn combine<F: Field>(basis: &[Mat<F>], coeffs: &[i64], n: usize) -> Mat<F> {
    let mut acc = Mat::zeros(n, n);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = &acc + &b.scale(&F::from_i64(c));
        }
    }
    acc
}

/// The pair drawn by trial `t` of a seeded run, as coefficient vectors.
pub fn trial_coefficients(dim: usize, seed: u64, t: usize) -> (Vec<i64>, Vec<i64>) {
    let mut g = rng::trial(seed, t as u64);
    let a = coefficients(&mut g, dim, COEFF_BOUND);
    let b = coefficients(&mut g, dim, COEFF_BOUND);
    (a, b)
}

/// The exact pair drawn by trial `t`.
pub fn trial_pair(v: &MatrixSubspace, seed: u64, t: usize) -> (Mat, Mat) {
    let (ca, cb) = trial_coefficients(v.dim(), seed, t);
    let n = v.ambient();
    (combine(v.basis(), &ca, n), combine(v.basis(), &cb, n))
}

fn trial_rank<F: Field>(basis: &[Mat<F>], n: usize, seed: u64, t: usize) -> usize {
    let (ca, cb) = trial_coefficients(basis.len(), seed, t);
    let a = combine(basis, &ca, n);
    let b = combine(basis, &cb, n);
    commutator(&a, &b).expect("square").rank()
}

fn exact_rank(a: &Mat, b: &Mat) -> usize {
    commutator(a, b).expect("square").rank()
}

/// Max over trials, ties to the lowest trial index.
fn best_trial(ranks: Vec<(usize, usize)>) -> Option<(usize, usize)> {
    ranks
        .into_iter()
        .max_by(|(ra, ta), (rb, tb)| ra.cmp(rb).then(tb.cmp(ta)))
}

pub fn max_commutator_rank(
    v: &MatrixSubspace,
    trials: usize,
    seed: u64,
) -> Result<CommutatorProfile> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let n = v.ambient();
    let mut profile = CommutatorProfile {
        n,
        dim: v.dim(),
        certified_lower: 0,
        witness: None,
        witness_trial: None,
        probable_max: 0,
        trials,
        seed,
    };
    if v.is_zero() {
        return Ok(profile);
    }
    let screened = v.basis_fp().map(|basis| {
        let ranks: Vec<(usize, usize)> = (0..trials)
            .into_par_iter()
            .map(|t| (trial_rank::<Fp>(&basis, n, seed, t), t))
            .collect();
        best_trial(ranks).expect("trials >= 1")
    });
    let (rank, t) = match screened {
        Some((r, t)) => {
            let (a, b) = trial_pair(v, seed, t);
            if exact_rank(&a, &b) == r {
                (r, t)
            } else {
                rational_best(v, trials, seed)
            }
        }
        None => rational_best(v, trials, seed),
    };
    let (a, b) = trial_pair(v, seed, t);
    profile.certified_lower = exact_rank(&a, &b);
    debug_assert_eq!(profile.certified_lower, rank);
    profile.probable_max = rank;
    profile.witness = Some((a, b));
    profile.witness_trial = Some(t);
    Ok(profile)
}

fn rational_best(v: &MatrixSubspace, trials: usize, seed: u64) -> (usize, usize) {
    let ranks: Vec<(usize, usize)> = (0..trials)
        .into_par_iter()
        .map(|t| (trial_rank::<Rational>(v.basis(), v.ambient(), seed, t), t))
        .collect();
    best_trial(ranks).expect("trials >= 1")
}

/// Outcome of testing `rank [A, B] <= k` on sampled pairs.
#[derive(Clone, Debug, PartialEq)]
pub enum RankVerdict {
    /// No sampled pair exceeded `k`.
    ProbableYes { trials: usize },
    /// An exact pair with commutator rank above `k`.
    CertifiedNo {
        a: Mat,
        b: Mat,
        rank: usize,
        trial: usize,
    },
}

impl RankVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, RankVerdict::ProbableYes { .. })
    }
}

/// Tests trials in order and stops at the first violation.
pub fn satisfies_rank_condition(
    v: &MatrixSubspace,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<RankVerdict> {
    let n = v.ambient();
    if k >= n {
        return Err(Error::InvalidParameter(format!(
            "need k < n, got k={k}, n={n}"
        )));
    }
    if v.is_zero() {
        return Ok(RankVerdict::ProbableYes { trials });
    }
    let basis_fp = v.basis_fp();
    for t in 0..trials {
        let screened = match &basis_fp {
            Some(basis) => trial_rank::<Fp>(basis, n, seed, t),
            None => trial_rank::<Rational>(v.basis(), n, seed, t),
        };
        if screened > k {
            let (a, b) = trial_pair(v, seed, t);
            let rank = exact_rank(&a, &b);
            return Ok(RankVerdict::CertifiedNo {
                a,
                b,
                rank,
                trial: t,
            });
        }
    }
    Ok(RankVerdict::ProbableYes { trials })
}

/// Same test on a space given by a spanning list (need not be independent).
pub fn generators_satisfy_rank_condition(
    n: usize,
    generators: &[Mat],
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<RankVerdict> {
    satisfies_rank_condition(&MatrixSubspace::span(n, generators)?, k, trials, seed)
}

/// Largest exact commutator rank over basis pairs, with the first pair
/// attaining it.
pub fn basis_pair_max_rank<F: Field>(v: &MatrixSubspace<F>) -> (usize, Option<(usize, usize)>) {
    let mut best = (0, None);
    for (i, a) in v.basis().iter().enumerate() {
        for (j, b) in v.basis().iter().enumerate().skip(i + 1) {
            let r = commutator(a, b).expect("square").rank();
            if r > best.0 {
                best = (r, Some((i, j)));
            }
        }
    }
    best
}

/// `n k + floor((n-k)^2 / 4) + 1`.
pub fn dimension_bound(n: usize, k: usize) -> Result<usize> {
    if k >= n {
        return Err(Error::InvalidParameter(format!(
            "need k < n, got k={k}, n={n}"
        )));
    }
    let m = n - k;
    Ok(n * k + m * m / 4 + 1)
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundStatus {
    Pass {
        slack: usize,
    },
    /// `dim` exceeds the bound at the estimated `k`. Since the estimate is a
    /// certified lower bound on the true maximum, this means the sampled
    /// maximum is too low (raise trials) or the space is a counterexample.
    Fail {
        excess: usize,
    },
    /// Invertible commutators occur, so no `k < n` applies.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub dim: usize,
    pub k_hat: Option<usize>,
    pub bound: Option<usize>,
    pub status: BoundStatus,
    pub profile: CommutatorProfile,
}

pub fn check_dimension_bound(v: &MatrixSubspace, trials: usize, seed: u64) -> Result<BoundReport> {
    let profile = max_commutator_rank(v, trials, seed)?;
    let dim = v.dim();
    let k_hat = if v.ambient() == 0 {
        None
    } else {
        profile.k_hat()
    };
    let (bound, status) = match k_hat {
        None => (None, BoundStatus::NotApplicable),
        Some(k) => {
            let b = dimension_bound(v.ambient(), k)?;
            let status = if dim <= b {
                BoundStatus::Pass { slack: b - dim }
            } else {
                BoundStatus::Fail { excess: dim - b }
            };
            (Some(b), status)
        }
    };
    Ok(BoundReport {
        dim,
        k_hat,
        bound,
        status,
        profile,
    })
}

// ---------------------------------------------------------------------------
// Symbolic mode

/// Largest side for which the symbolic test is allowed.
pub const SYMBOLIC_MAX_N: usize = 3;

/// Monomial `x_{i1}..x_{ir} y_{j1}..y_{jr}` with sorted index lists.
type Monomial = (Vec<u8>, Vec<u8>);

/// Sparse polynomial in the combination coefficients of `A(x)` and `B(y)`.
#[derive(Clone, Debug, Default)]
struct SparsePoly(HashMap<Monomial, Rational>);

impl SparsePoly {
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_scaled(&mut self, other: &SparsePoly, sign: i64) {
        for (m, c) in &other.0 {
            let entry = self
                .0
                .entry(m.clone())
                .or_insert_with(|| Rational::from_i64(0));
            *entry = if sign >= 0 {
                entry.clone() + c
            } else {
                entry.clone() - c
            };
        }
        self.0.retain(|_, c| !num_traits::Zero::is_zero(c));
    }

    fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out: HashMap<Monomial, Rational> = HashMap::new();
        for ((xa, ya), ca) in &self.0 {
            for ((xb, yb), cb) in &other.0 {
                let mut x = xa.clone();
                x.extend_from_slice(xb);
                x.sort_unstable();
                let mut y = ya.clone();
                y.extend_from_slice(yb);
                y.sort_unstable();
                let prod = ca.clone() * cb;
                let entry = out.entry((x, y)).or_insert_with(|| Rational::from_i64(0));
                *entry = entry.clone() + &prod;
            }
        }
        out.retain(|_, c| !num_traits::Zero::is_zero(c));
        SparsePoly(out)
    }
}

fn permutations(r: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, r: usize, out: &mut Vec<(Vec<usize>, i64)>) {
        if prefix.len() == r {
            let mut inv = 0;
            for i in 0..r {
                for j in i + 1..r {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for c in 0..r {
            if !prefix.contains(&c) {
                prefix.push(c);
                rec(prefix, r, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), r, &mut out);
    out
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == r)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Exact decision of `rank [A, B] <= k` for all `A, B` in `V`: every
/// `(k+1)`-minor of the generic commutator `[A(x), B(y)]` is expanded as a
/// polynomial and tested for identical vanishing. Returns the first nonzero
/// minor's row and column sets when the condition fails.
pub fn symbolic_rank_condition(
    v: &MatrixSubspace,
    k: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let n = v.ambient();
    if n > SYMBOLIC_MAX_N {
        return Err(Error::GuardExceeded {
            n,
            max: SYMBOLIC_MAX_N,
        });
    }
    if k >= n {
        return Err(Error::InvalidParameter(format!(
            "need k < n, got k={k}, n={n}"
        )));
    }
    let basis = v.basis();
    let mut entries = vec![SparsePoly::default(); n * n];
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let c = commutator(a, b)?;
            for (slot, val) in entries.iter_mut().zip(c.entries()) {
                if !num_traits::Zero::is_zero(val) {
                    slot.0.insert((vec![i as u8], vec![j as u8]), val.clone());
                }
            }
        }
    }
    let r = k + 1;
    let perms = permutations(r);
    for rows in subsets(n, r) {
        for cols in subsets(n, r) {
            let mut minor = SparsePoly::default();
            for (perm, sign) in &perms {
                let mut term = entries[rows[0] * n + cols[perm[0]]].clone();
                for t in 1..r {
                    if term.is_zero() {
                        break;
                    }
                    term = term.mul(&entries[rows[t] * n + cols[perm[t]]]);
                }
                minor.add_scaled(&term, *sign);
            }
            if !minor.is_zero() {
                return Ok(Some((rows, cols)));
            }
        }
    }
    Ok(None)
}

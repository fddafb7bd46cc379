//! Named extremal spaces and witness pairs.
//!
//! Indices are zero-based throughout; `E(i, j)` below means the matrix unit
//! with a one in row `i`, column `j`.

use std::fmt;
use std::str::FromStr;

use crate::error::{mismatch, Error, Result};
use crate::exact_linalg::{Field, Mat, Rational};
use crate::subspace::{MatrixSubspace, RectSubspace};

fn e(n: usize, i: usize, j: usize) -> Mat {
    Mat::unit(n, n, i, j)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// `span{I} + span{E(i, j) : i < r <= j}` with `r = floor(n/2)`; the maximal
/// commutative space.
pub fn schur_space(n: usize) -> Result<MatrixSubspace> {
    if n == 0 {
        return Err(bad("schur_space needs n >= 1"));
    }
    v_k(n, 0, n / 2)
}

/// Valid split sizes `l` for `v_k(n, k, l)`.
pub fn valid_splits(n: usize, k: usize) -> Vec<usize> {
    let m = n - k;
    let mut ls = vec![m / 2];
    if m % 2 == 1 {
        ls.push(m / 2 + 1);
    }
    ls
}

/// The free `k x n` top band, a Schur block of split `l` in the remaining
/// corner, and the scalars.
pub fn v_k(n: usize, k: usize, l: usize) -> Result<MatrixSubspace> {
    if k >= n {
        return Err(bad(format!("need k < n, got k={k}, n={n}")));
    }
    if !valid_splits(n, k).contains(&l) {
        return Err(bad(format!(
            "split l={l} must be floor or ceil of (n-k)/2 = {}/2",
            n - k
        )));
    }
    Ok(v_k_unchecked(n, k, l))
}

fn v_k_unchecked(n: usize, k: usize, l: usize) -> MatrixSubspace {
    let mut mats = vec![Mat::identity(n)];
    for i in 0..k {
        for j in 0..n {
            mats.push(e(n, i, j));
        }
    }
    for i in k..k + l {
        for j in k + l..n {
            mats.push(e(n, i, j));
        }
    }
    MatrixSubspace::span(n, &mats).expect("units")
}

pub fn v_k_transpose(n: usize, k: usize, l: usize) -> Result<MatrixSubspace> {
    Ok(v_k(n, k, l)?.transpose_space())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Thm2Side {
    /// Last row vanishes except in the corner.
    LastRow,
    /// First column vanishes except in the corner.
    FirstCol,
}

/// Spaces of dimension `n^2 - n + 1` whose commutators are never invertible.
pub fn thm2_space(n: usize, side: Thm2Side) -> Result<MatrixSubspace> {
    if n < 2 {
        return Err(bad("thm2_space needs n >= 2"));
    }
    let positions: Vec<(usize, usize)> = match side {
        Thm2Side::LastRow => (0..n * n)
            .map(|t| (t / n, t % n))
            .filter(|&(i, j)| i < n - 1 || j == n - 1)
            .collect(),
        Thm2Side::FirstCol => (0..n * n)
            .map(|t| (t / n, t % n))
            .filter(|&(i, j)| j > 0 || i == 0)
            .collect(),
    };
    Ok(MatrixSubspace::coordinate(n, positions))
}

/// Commutative spaces of dimension `m` that contain `I_m`, used as the
/// southeast corner of block spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CornerBlock {
    /// `span{I} + span{E(i, j) : i < l <= j}`.
    Schur(usize),
    /// All diagonal matrices.
    Diagonal,
    /// `span{E(0,0) + E(1,1), E(0,1), E(2,2)}` (m = 3).
    NilRankOnePlusScalar,
    /// `span{I, N, N^2}` with `N = E(0,1) + E(1,2)` (m = 3).
    NilRankTwo,
}

impl CornerBlock {
    pub fn basis(self, m: usize) -> Result<Vec<Mat>> {
        Ok(match self {
            CornerBlock::Schur(l) => {
                if l > m {
                    return Err(bad(format!("corner split {l} exceeds size {m}")));
                }
                let mut mats = vec![Mat::identity(m)];
                for i in 0..l {
                    for j in l..m {
                        mats.push(e(m, i, j));
                    }
                }
                mats
            }
            CornerBlock::Diagonal => (0..m).map(|i| e(m, i, i)).collect(),
            CornerBlock::NilRankOnePlusScalar => {
                if m != 3 {
                    return Err(mismatch("corner size 3", m));
                }
                vec![&e(3, 0, 0) + &e(3, 1, 1), e(3, 0, 1), e(3, 2, 2)]
            }
            CornerBlock::NilRankTwo => {
                if m != 3 {
                    return Err(mismatch("corner size 3", m));
                }
                vec![Mat::identity(3), &e(3, 0, 1) + &e(3, 1, 2), e(3, 0, 2)]
            }
        })
    }

    pub fn space(self, m: usize) -> Result<MatrixSubspace> {
        MatrixSubspace::span(m, &self.basis(m)?)
    }
}

/// Embeds `c` (size `n - offset`) into the southeast corner of an `n x n`
/// zero matrix.
pub fn embed_southeast<F: Field>(n: usize, c: &Mat<F>) -> Mat<F> {
    let off = n - c.rows();
    let mut m = Mat::zeros(n, n);
    for i in 0..c.rows() {
        for j in 0..c.cols() {
            m.set(off + i, off + j, c.get(i, j).clone());
        }
    }
    m
}

/// Top `k` rows free, zeros below them in the first `k` columns, and the
/// corner drawn from a commutative block; plus the scalars.
pub fn block_space(n: usize, k: usize, corner: CornerBlock) -> Result<MatrixSubspace> {
    if k >= n {
        return Err(bad(format!("need k < n, got k={k}, n={n}")));
    }
    let m = n - k;
    let mut mats = vec![Mat::identity(n)];
    for i in 0..k {
        for j in 0..n {
            mats.push(e(n, i, j));
        }
    }
    for c in corner.basis(m)? {
        mats.push(embed_southeast(n, &c));
    }
    MatrixSubspace::span(n, &mats)
}

/// Shapes of the southeast corner for maximal spaces with rank-one
/// commutators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankOneVariant {
    /// Schur corner with split `l`; any `n >= 2`.
    Generic(usize),
    /// Diagonal corner, `n = 4`.
    Diag3,
    /// Rank-one nilpotent algebra plus scalars, `n = 4`.
    NilRank1PlusC,
    /// Algebra of a rank-two nilpotent, `n = 4`.
    NilRank2,
    /// Diagonal corner, `n = 3`.
    Diag2,
    /// Scalar corner, `n = 2`.
    Scalar,
}

impl RankOneVariant {
    pub fn tag(self) -> &'static str {
        match self {
            RankOneVariant::Generic(_) => "generic",
            RankOneVariant::Diag3 => "diag3",
            RankOneVariant::NilRank1PlusC => "nilrank1_plus_C",
            RankOneVariant::NilRank2 => "nilrank2",
            RankOneVariant::Diag2 => "diag2",
            RankOneVariant::Scalar => "scalar",
        }
    }

    /// All variants applicable at side `n`.
    pub fn all_for(n: usize) -> Vec<RankOneVariant> {
        let mut v: Vec<_> = valid_splits(n, 1)
            .into_iter()
            .map(RankOneVariant::Generic)
            .collect();
        match n {
            2 => v.push(RankOneVariant::Scalar),
            3 => v.push(RankOneVariant::Diag2),
            4 => v.extend([
                RankOneVariant::Diag3,
                RankOneVariant::NilRank1PlusC,
                RankOneVariant::NilRank2,
            ]),
            _ => {}
        }
        v
    }
}

pub fn rank_one_max_space(n: usize, variant: RankOneVariant) -> Result<MatrixSubspace> {
    if n < 2 {
        return Err(bad("rank_one_max_space needs n >= 2"));
    }
    let need = |want: usize| {
        if n == want {
            Ok(())
        } else {
            Err(bad(format!(
                "variant {} requires n = {want}, got {n}",
                variant.tag()
            )))
        }
    };
    let corner = match variant {
        RankOneVariant::Generic(l) => {
            if !valid_splits(n, 1).contains(&l) {
                return Err(bad(format!("split l={l} invalid for n={n}")));
            }
            CornerBlock::Schur(l)
        }
        RankOneVariant::Diag3 => {
            need(4)?;
            CornerBlock::Diagonal
        }
        RankOneVariant::NilRank1PlusC => {
            need(4)?;
            CornerBlock::NilRankOnePlusScalar
        }
        RankOneVariant::NilRank2 => {
            need(4)?;
            CornerBlock::NilRankTwo
        }
        RankOneVariant::Diag2 => {
            need(3)?;
            CornerBlock::Diagonal
        }
        RankOneVariant::Scalar => {
            need(2)?;
            CornerBlock::Schur(0)
        }
    };
    block_space(n, 1, corner)
}

/// Maximal commutative spaces outside the Schur family (`n` = 2 or 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExceptionalTag {
    Diagonal,
    NilRank1PlusC,
    NilRank2,
}

impl ExceptionalTag {
    pub fn tag(self) -> &'static str {
        match self {
            ExceptionalTag::Diagonal => "diag",
            ExceptionalTag::NilRank1PlusC => "nilrank1_plus_C",
            ExceptionalTag::NilRank2 => "nilrank2",
        }
    }

    fn corner(self) -> CornerBlock {
        match self {
            ExceptionalTag::Diagonal => CornerBlock::Diagonal,
            ExceptionalTag::NilRank1PlusC => CornerBlock::NilRankOnePlusScalar,
            ExceptionalTag::NilRank2 => CornerBlock::NilRankTwo,
        }
    }

    pub fn all_for(m: usize) -> Vec<ExceptionalTag> {
        match m {
            2 => vec![ExceptionalTag::Diagonal],
            3 => vec![
                ExceptionalTag::Diagonal,
                ExceptionalTag::NilRank1PlusC,
                ExceptionalTag::NilRank2,
            ],
            _ => Vec::new(),
        }
    }
}

pub fn exceptional_commutative(n: usize, tag: ExceptionalTag) -> Result<MatrixSubspace> {
    if !ExceptionalTag::all_for(n).contains(&tag) {
        return Err(bad(format!(
            "exceptional space {} not defined for n={n}",
            tag.tag()
        )));
    }
    tag.corner().space(n)
}

/// Free top band of height `k` with an exceptional commutative corner of
/// size `n - k`.
pub fn exceptional_block_space(n: usize, k: usize, tag: ExceptionalTag) -> Result<MatrixSubspace> {
    if k >= n || !ExceptionalTag::all_for(n - k).contains(&tag) {
        return Err(bad(format!(
            "exceptional corner {} needs n-k in {{2,3}}, got n={n}, k={k}",
            tag.tag()
        )));
    }
    block_space(n, k, tag.corner())
}

/// Rectangular space of dimension `k * max(m, n_cols)` whose members have
/// rank at most `k`: the first `k` rows when `m <= n_cols`, otherwise the
/// first `k` columns.
pub fn flanders_space(m: usize, n_cols: usize, k: usize) -> Result<RectSubspace> {
    if k > m.min(n_cols) {
        return Err(bad(format!(
            "need k <= min(m, n_cols), got k={k}, m={m}, n_cols={n_cols}"
        )));
    }
    let units: Vec<Mat> = if m <= n_cols {
        (0..k)
            .flat_map(|i| (0..n_cols).map(move |j| Mat::unit(m, n_cols, i, j)))
            .collect()
    } else {
        (0..m)
            .flat_map(|i| (0..k).map(move |j| Mat::unit(m, n_cols, i, j)))
            .collect()
    };
    RectSubspace::span(m, n_cols, &units)
}

/// `A` with `lambdas[t]` at `(t+1, t)`, `B` with `mus[t]` at `(t, t+1)`. Their
/// commutator is `Diag(-l0 m0, l0 m0 - l1 m1, ..., l_{s-1} m_{s-1}, 0, ...)`.
pub fn bidiagonal_witness_pair<F: Field>(
    n: usize,
    s: usize,
    lambdas: &[F],
    mus: &[F],
) -> Result<(Mat<F>, Mat<F>)> {
    if s == 0 || s >= n {
        return Err(bad(format!("need 1 <= s <= n-1, got s={s}, n={n}")));
    }
    if lambdas.len() != s {
        return Err(mismatch(s, lambdas.len()));
    }
    if mus.len() != s {
        return Err(mismatch(s, mus.len()));
    }
    let mut a = Mat::zeros(n, n);
    let mut b = Mat::zeros(n, n);
    for t in 0..s {
        a.set(t + 1, t, lambdas[t].clone());
        b.set(t, t + 1, mus[t].clone());
    }
    Ok((a, b))
}

/// The diagonal predicted for the bidiagonal pair's commutator.
pub fn bidiagonal_commutator_diagonal<F: Field>(n: usize, lambdas: &[F], mus: &[F]) -> Vec<F> {
    let p: Vec<F> = lambdas
        .iter()
        .zip(mus)
        .map(|(l, m)| l.clone() * m)
        .collect();
    (0..n)
        .map(|i| {
            let prev = if i >= 1 && i - 1 < p.len() {
                p[i - 1].clone()
            } else {
                F::zero()
            };
            let cur = p.get(i).cloned().unwrap_or_else(F::zero);
            prev - &cur
        })
        .collect()
}

/// Named families, as addressed from files and the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Schur,
    Vk,
    VkTranspose,
    Thm2LastRow,
    Thm2FirstCol,
    RankOneMax,
    Flanders,
    Exceptional,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Schur,
        Family::Vk,
        Family::VkTranspose,
        Family::Thm2LastRow,
        Family::Thm2FirstCol,
        Family::RankOneMax,
        Family::Flanders,
        Family::Exceptional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Schur => "schur",
            Family::Vk => "vk",
            Family::VkTranspose => "vk-t",
            Family::Thm2LastRow => "thm2-lastrow",
            Family::Thm2FirstCol => "thm2-firstcol",
            Family::RankOneMax => "rank1max",
            Family::Flanders => "flanders",
            Family::Exceptional => "exceptional",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| bad(format!("unknown family {s:?}")))
    }
}

/// A family plus its parameters. `cols` is only read by `Flanders`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub cols: Option<usize>,
    pub variant: Option<String>,
}

/// A built family member.
#[derive(Clone, Debug, PartialEq)]
pub enum BuiltSpace {
    Square(MatrixSubspace<Rational>),
    Rect(RectSubspace<Rational>),
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec {
            family,
            n,
            k: None,
            l: None,
            cols: None,
            variant: None,
        }
    }

    fn k_or(&self, default: usize) -> usize {
        self.k.unwrap_or(default)
    }

    fn split(&self, k: usize) -> Result<usize> {
        if k >= self.n {
            return Err(bad(format!("need k < n, got k={k}, n={}", self.n)));
        }
        Ok(self.l.unwrap_or((self.n - k) / 2))
    }

    pub fn build(&self) -> Result<BuiltSpace> {
        let n = self.n;
        let sq = |v: Result<MatrixSubspace>| v.map(BuiltSpace::Square);
        match self.family {
            Family::Schur => sq(schur_space(n)),
            Family::Vk => {
                let k = self.k_or(0);
                sq(v_k(n, k, self.split(k)?))
            }
            Family::VkTranspose => {
                let k = self.k_or(0);
                sq(v_k_transpose(n, k, self.split(k)?))
            }
            Family::Thm2LastRow => sq(thm2_space(n, Thm2Side::LastRow)),
            Family::Thm2FirstCol => sq(thm2_space(n, Thm2Side::FirstCol)),
            Family::RankOneMax => {
                let variant = match self.variant.as_deref().unwrap_or("generic") {
                    "generic" => RankOneVariant::Generic(self.split(1)?),
                    "diag3" => RankOneVariant::Diag3,
                    "nilrank1_plus_C" | "nilrank1_plus_c" => RankOneVariant::NilRank1PlusC,
                    "nilrank2" => RankOneVariant::NilRank2,
                    "diag2" => RankOneVariant::Diag2,
                    "scalar" => RankOneVariant::Scalar,
                    other => return Err(bad(format!("unknown variant {other:?}"))),
                };
                sq(rank_one_max_space(n, variant))
            }
            Family::Flanders => {
                let cols = self.cols.unwrap_or(n);
                flanders_space(n, cols, self.k_or(0)).map(BuiltSpace::Rect)
            }
            Family::Exceptional => {
                let tag = match self.variant.as_deref().unwrap_or("diag") {
                    "diag" => ExceptionalTag::Diagonal,
                    "nilrank1_plus_C" | "nilrank1_plus_c" => ExceptionalTag::NilRank1PlusC,
                    "nilrank2" => ExceptionalTag::NilRank2,
                    other => return Err(bad(format!("unknown variant {other:?}"))),
                };
                match self.k {
                    None | Some(0) => sq(exceptional_commutative(n, tag)),
                    Some(k) => sq(exceptional_block_space(n, k, tag)),
                }
            }
        }
    }
}

//! Spaces spanned by matrix units and diagonal matrices that are invariant
//! under conjugation by invertible upper triangular matrices, and an
//! exhaustive search for the largest such space with bounded commutator rank.
//!
//! A spec is a set `S` of off-diagonal positions plus a diagonal subspace
//! `D`; position `(i, j)` is bit `i * n + j` of a `u64`. Indices are 0-based.

use std::cmp::Reverse;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::commrank::{dimension_bound, satisfies_rank_condition, RankVerdict};
use crate::error::{Error, Result};
use crate::exact_linalg::{format_rational, Mat, Rational};
use crate::subspace::{MatrixSubspace, VectorSpace};

/// Default ambient-size guard for enumeration; `CRLAB_MAX_N` overrides it.
pub const DEFAULT_MAX_N: usize = 6;

/// Hard ceiling imposed by the `u64` position mask.
const MASK_MAX_N: usize = 8;

/// Which positions a lower unit `E_ij` (`i > j`) forces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RuleSet {
    /// Every `[E_pq, E_ij]` with `p < q`.
    #[default]
    Full,
    /// Only `p = j, j < q < i`, `j < p < i, q = i` and `p = j, q = i`.
    ThreeCase,
}

impl RuleSet {
    pub fn name(self) -> &'static str {
        match self {
            RuleSet::Full => "full",
            RuleSet::ThreeCase => "three-case",
        }
    }
}

impl std::str::FromStr for RuleSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(RuleSet::Full),
            "three-case" => Ok(RuleSet::ThreeCase),
            _ => Err(Error::InvalidParameter(format!(
                "unknown rule set {s:?}, expected full or three-case"
            ))),
        }
    }
}

fn bit(n: usize, i: usize, j: usize) -> u64 {
    1u64 << (i * n + j)
}

fn positions_of(n: usize, s: u64) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && s & bit(n, i, j) != 0)
        .collect()
}

fn diff_vector(n: usize, i: usize, j: usize) -> Vec<Rational> {
    let mut d = vec![Rational::zero(); n];
    d[i] = Rational::one();
    d[j] = -Rational::one();
    d
}

/// Positions a single member of `S` forces, including the upper positions
/// separating `i` and `j` once `E_ii - E_jj` is in `D`.
fn requirement(n: usize, i: usize, j: usize, rules: RuleSet) -> u64 {
    let mut m = 0u64;
    if i < j {
        for k in 0..=i {
            for l in j..n {
                m |= bit(n, k, l);
            }
        }
        return m;
    }
    match rules {
        RuleSet::Full => {
            for p in (0..i).filter(|&p| p != j) {
                m |= bit(n, p, j);
            }
            for q in (j + 1..n).filter(|&q| q != i) {
                m |= bit(n, i, q);
            }
        }
        RuleSet::ThreeCase => {
            for p in j + 1..i {
                m |= bit(n, p, j) | bit(n, i, p);
            }
        }
    }
    m |= bit(n, j, i);
    for a in [i, j] {
        for b in (0..n).filter(|&b| b != a) {
            m |= bit(n, a.min(b), a.max(b));
        }
    }
    m
}

fn requirements(n: usize, rules: RuleSet) -> Vec<u64> {
    let mut req = vec![0u64; n * n];
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            req[i * n + j] = requirement(n, i, j, rules);
        }
    }
    req
}

fn close_mask(mut s: u64, req: &[u64]) -> u64 {
    loop {
        let mut next = s;
        let mut rest = s;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= req[p];
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

fn is_closed_mask(s: u64, req: &[u64]) -> bool {
    let mut rest = s;
    while rest != 0 {
        let p = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if req[p] & !s != 0 {
            return false;
        }
    }
    true
}

/// `span{E_ij : (i,j) in S} + D`.
#[derive(Clone, PartialEq)]
pub struct InvariantSpaceSpec {
    n: usize,
    s: u64,
    d: VectorSpace<Rational>,
}

impl InvariantSpaceSpec {
    /// Fails when a position is out of range or on the diagonal, or when a
    /// generator has the wrong length.
    pub fn new(
        n: usize,
        positions: &[(usize, usize)],
        d_generators: &[Vec<Rational>],
    ) -> Result<Self> {
        if n > MASK_MAX_N {
            return Err(Error::GuardExceeded { n, max: MASK_MAX_N });
        }
        let mut s = 0u64;
        for &(i, j) in positions {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidParameter(format!(
                    "position ({i}, {j}) is not off-diagonal in size {n}"
                )));
            }
            s |= bit(n, i, j);
        }
        Ok(InvariantSpaceSpec {
            n,
            s,
            d: VectorSpace::span(n, d_generators.iter().cloned())?,
        })
    }

    /// No positions, `D` the scalars.
    pub fn scalars(n: usize) -> Self {
        Self::new(n, &[], &[vec![Rational::one(); n]]).expect("in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.s
    }

    pub fn positions(&self) -> Vec<(usize, usize)> {
        positions_of(self.n, self.s)
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.s & bit(self.n, i, j) != 0
    }

    pub fn diagonal(&self) -> &VectorSpace<Rational> {
        &self.d
    }

    pub fn dim(&self) -> usize {
        self.s.count_ones() as usize + self.d.dim()
    }

    pub fn realize(&self) -> MatrixSubspace {
        let n = self.n;
        let mut mats: Vec<Mat> = self
            .positions()
            .into_iter()
            .map(|(i, j)| Mat::unit(n, n, i, j))
            .collect();
        mats.extend(self.d.basis().iter().map(|d| Mat::diag(d)));
        MatrixSubspace::span(n, &mats).expect("square units")
    }

    /// Both parts contained in `other`'s.
    pub fn is_subspec_of(&self, other: &Self) -> bool {
        self.n == other.n
            && self.s & !other.s == 0
            && self.d.basis().iter().all(|v| other.d.contains(v))
    }

    fn sort_key(&self) -> (u64, Vec<Vec<Rational>>) {
        (self.s, self.d.basis().to_vec())
    }
}

impl fmt::Debug for InvariantSpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Positions are printed 1-based.
impl fmt::Display for InvariantSpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .positions()
            .iter()
            .map(|(i, j)| format!("({},{})", i + 1, j + 1))
            .collect();
        let d: Vec<String> = self
            .d
            .basis()
            .iter()
            .map(|v| {
                format!(
                    "[{}]",
                    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        write!(
            f,
            "n={} S={{{}}} D={{{}}}",
            self.n,
            s.join(","),
            d.join(",")
        )
    }
}

/// Least spec containing the input that satisfies the closure rules.
pub fn triangular_closure(spec: &InvariantSpaceSpec) -> InvariantSpaceSpec {
    triangular_closure_with(spec, RuleSet::Full)
}

pub fn triangular_closure_with(spec: &InvariantSpaceSpec, rules: RuleSet) -> InvariantSpaceSpec {
    let n = spec.n;
    let req = requirements(n, rules);
    let mut s = spec.s;
    let mut d = spec.d.clone();
    loop {
        s = close_mask(s, &req);
        for (i, j) in positions_of(n, s).into_iter().filter(|(i, j)| i > j) {
            d.insert(diff_vector(n, i, j)).expect("sized");
        }
        let mut grown = s;
        for v in d.basis() {
            for p in 0..n {
                for q in p + 1..n {
                    if v[p] != v[q] {
                        grown |= bit(n, p, q);
                    }
                }
            }
        }
        if grown == s {
            return InvariantSpaceSpec { n, s, d };
        }
        s = grown;
    }
}

/// Invariance under conjugation by every invertible upper triangular matrix,
/// through the elementary and diagonal generators.
pub fn is_triangular_invariant(v: &MatrixSubspace) -> bool {
    let n = v.ambient();
    let lines = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && v.contains(&Mat::unit(n, n, i, j)))
        .count();
    let diagonal = MatrixSubspace::coordinate(n, (0..n).map(|i| (i, i)));
    let d = v.intersect(&diagonal).expect("same size").dim();
    if lines + d != v.dim() {
        return false;
    }
    for p in 0..n {
        for q in p + 1..n {
            let e = Mat::unit(n, n, p, q);
            for a in v.basis() {
                let c = &(&e * a) - &(a * &e);
                if !v.contains(&c) || !v.contains(&(&(&e * a) * &e)) {
                    return false;
                }
            }
        }
    }
    true
}

fn max_n() -> usize {
    std::env::var("CRLAB_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
        .min(MASK_MAX_N)
}

fn check_guard(n: usize) -> Result<()> {
    let max = max_n();
    if n > max {
        return Err(Error::GuardExceeded { n, max });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    Ok(())
}

/// R1-closed sets of upper positions: row thresholds `c_0 <= c_1 <= ...`
/// with `(i, l)` present iff `l >= c_i`.
fn upper_sets(n: usize) -> Vec<u64> {
    fn go(n: usize, i: usize, min: usize, acc: u64, out: &mut Vec<u64>) {
        if i + 1 >= n {
            out.push(acc);
            return;
        }
        for c in min.max(i + 1)..=n {
            let mut row = acc;
            for l in c..n {
                row |= bit(n, i, l);
            }
            go(n, i + 1, c, row, out);
        }
    }
    let mut out = Vec::new();
    go(n, 0, 0, 0, &mut out);
    out
}

fn lower_positions(n: usize) -> Vec<u64> {
    (0..n)
        .flat_map(|i| (0..i).map(move |j| bit(n, i, j)))
        .collect()
}

/// Closed position sets, ascending.
fn closed_masks(n: usize, rules: RuleSet) -> Vec<u64> {
    let req = requirements(n, rules);
    let lower = lower_positions(n);
    let mut out: Vec<u64> = upper_sets(n)
        .into_par_iter()
        .flat_map_iter(|u| {
            let req = &req;
            let lower = &lower;
            (0u64..1 << lower.len()).filter_map(move |sub| {
                let mut s = u;
                for (b, &m) in lower.iter().enumerate() {
                    if sub >> b & 1 == 1 {
                        s |= m;
                    }
                }
                is_closed_mask(s, req).then_some(s)
            })
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn components(n: usize, s: u64) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while l[r] != r {
            r = l[r];
        }
        l[x] = r;
        r
    }
    for p in 0..n {
        for q in p + 1..n {
            if s & bit(n, p, q) == 0 {
                let (a, b) = (find(&mut label, p), find(&mut label, q));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|x| find(&mut label, x)).collect()
}

/// All set partitions of `0..c` as restricted growth strings.
fn set_partitions(c: usize) -> Vec<Vec<usize>> {
    fn go(c: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == c {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            go(c, cur, max.max(b), out);
            cur.pop();
        }
    }
    if c == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    go(c, &mut cur, 0, &mut out);
    out
}

/// Diagonal parts allowed for a closed `S`: the forced differences plus the
/// vectors constant on the blocks of a coarsening of the components of
/// `{p ~ q : p < q, (p,q) not in S}`. Includes both the least and the
/// maximal choice.
fn diagonal_choices(n: usize, s: u64) -> Vec<VectorSpace<Rational>> {
    let mut required = VectorSpace::span(n, [vec![Rational::one(); n]]).expect("sized");
    for (i, j) in positions_of(n, s).into_iter().filter(|(i, j)| i > j) {
        required.insert(diff_vector(n, i, j)).expect("sized");
    }
    let comp = components(n, s);
    let mut roots: Vec<usize> = comp.clone();
    roots.sort_unstable();
    roots.dedup();
    let mut out: Vec<VectorSpace<Rational>> = Vec::new();
    for part in set_partitions(roots.len()) {
        let blocks = part.iter().max().map_or(0, |m| m + 1);
        let mut d = required.clone();
        for b in 0..blocks {
            let v: Vec<Rational> = (0..n)
                .map(|x| {
                    let r = roots.binary_search(&comp[x]).expect("root");
                    if part[r] == b {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            d.insert(v).expect("sized");
        }
        if !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

/// Every closed spec with a partition-type diagonal part, each once, sorted
/// by position mask then diagonal basis.
pub fn enumerate_invariant_spaces(n: usize) -> Result<Vec<InvariantSpaceSpec>> {
    enumerate_invariant_spaces_with(n, RuleSet::Full)
}

pub fn enumerate_invariant_spaces_with(
    n: usize,
    rules: RuleSet,
) -> Result<Vec<InvariantSpaceSpec>> {
    check_guard(n)?;
    let mut specs: Vec<InvariantSpaceSpec> = closed_masks(n, rules)
        .into_par_iter()
        .flat_map_iter(|s| {
            diagonal_choices(n, s)
                .into_iter()
                .map(move |d| InvariantSpaceSpec { n, s, d })
        })
        .collect();
    specs.sort_by_cached_key(InvariantSpaceSpec::sort_key);
    Ok(specs)
}

/// Only the closed position sets, each with its maximal diagonal part.
pub fn enumerate_closed_position_sets(n: usize, rules: RuleSet) -> Result<Vec<InvariantSpaceSpec>> {
    check_guard(n)?;
    Ok(closed_masks(n, rules)
        .into_iter()
        .map(|s| InvariantSpaceSpec {
            n,
            s,
            d: diagonal_choices(n, s)
                .into_iter()
                .max_by_key(VectorSpace::dim)
                .expect("nonempty"),
        })
        .collect())
}

/// Number of super/sub-diagonal pairs whose presence certifies a commutator
/// of rank above `k`.
pub fn staircase_length(k: usize) -> usize {
    k.max(1)
}

/// `S` holds `(i, i+1)` and `(i+1, i)` for `i < staircase_length(k)`, so the
/// bidiagonal pair in the realized space has commutator rank above `k`.
pub fn staircase_pruned(spec: &InvariantSpaceSpec, k: usize) -> bool {
    let s = staircase_length(k);
    s < spec.n && (0..s).all(|i| spec.has(i, i + 1) && spec.has(i + 1, i))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport {
    pub n: usize,
    pub k: usize,
    pub rules: RuleSet,
    pub max_dim: usize,
    pub bound: usize,
    /// Every spec of dimension `max_dim` passing the sampled test, sorted.
    pub argmax: Vec<InvariantSpaceSpec>,
    pub enumerated: usize,
    /// Specs rejected by the staircase pattern without sampling.
    pub pruned: usize,
    pub sampled: usize,
    pub trials: usize,
    pub seed: u64,
}

impl SearchReport {
    pub fn matches_bound(&self) -> bool {
        self.max_dim == self.bound
    }
}

/// Largest spec whose realized space passes the sampled rank test, scanning
/// dimensions from the top.
pub fn search_max_dimension(n: usize, k: usize, trials: usize, seed: u64) -> Result<SearchReport> {
    search_max_dimension_with(n, k, trials, seed, RuleSet::Full)
}

pub fn search_max_dimension_with(
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
    rules: RuleSet,
) -> Result<SearchReport> {
    let bound = dimension_bound(n, k)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("need trials >= 1".into()));
    }
    let mut specs = enumerate_invariant_spaces_with(n, rules)?;
    let enumerated = specs.len();
    specs.sort_by_key(|s| Reverse(s.dim()));
    let mut pruned = 0;
    let mut sampled = 0;
    let mut start = 0;
    while start < specs.len() {
        let dim = specs[start].dim();
        let end = start + specs[start..].iter().take_while(|s| s.dim() == dim).count();
        let level: Vec<&InvariantSpaceSpec> = specs[start..end]
            .iter()
            .filter(|s| !staircase_pruned(s, k))
            .collect();
        pruned += (end - start) - level.len();
        sampled += level.len();
        let verdicts: Vec<Result<RankVerdict>> = level
            .par_iter()
            .map(|s| satisfies_rank_condition(&s.realize(), k, trials, seed))
            .collect();
        let mut argmax = Vec::new();
        for (spec, verdict) in level.iter().zip(verdicts) {
            if verdict?.is_yes() {
                argmax.push((*spec).clone());
            }
        }
        if !argmax.is_empty() {
            argmax.sort_by_cached_key(InvariantSpaceSpec::sort_key);
            return Ok(SearchReport {
                n,
                k,
                rules,
                max_dim: dim,
                bound,
                argmax,
                enumerated,
                pruned,
                sampled,
                trials,
                seed,
            });
        }
        start = end;
    }
    unreachable!("the scalar spec always passes")
}

/// `1 + (t + k)(n - t)` for `1 <= t <= n - k`.
pub fn t_bound(n: usize, k: usize, t: usize) -> Result<usize> {
    if k >= n || t == 0 || t > n - k {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= n - k, got n={n}, k={k}, t={t}"
        )));
    }
    Ok(1 + (t + k) * (n - t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commrank::DEFAULT_TRIALS;
    use crate::constructions::{schur_space, v_k};
    use crate::exact_linalg::int;
    use crate::exact_linalg::mat::random_invertible;
    use crate::rng;

    fn ones(n: usize) -> Vec<Rational> {
        vec![int(1); n]
    }

    #[test]
    fn closure_examples() {
        let s = InvariantSpaceSpec::scalars(3);
        assert_eq!(triangular_closure(&s), s);
        let s = InvariantSpaceSpec::new(3, &[(0, 1)], &[ones(3)]).unwrap();
        let c = triangular_closure(&s);
        assert_eq!(c.positions(), vec![(0, 1), (0, 2)]);
        assert_eq!(c.diagonal().dim(), 1);
        let s = InvariantSpaceSpec::new(2, &[(1, 0)], &[ones(2)]).unwrap();
        let c = triangular_closure(&s);
        assert_eq!(c.positions(), vec![(0, 1), (1, 0)]);
        assert_eq!(c.dim(), 4);
        assert_eq!(c.realize(), MatrixSubspace::full(2));
    }

    #[test]
    fn rule_sets_agree_on_closure() {
        for n in 2..=4 {
            assert_eq!(
                closed_masks(n, RuleSet::Full),
                closed_masks(n, RuleSet::ThreeCase)
            );
        }
    }

    #[test]
    fn invariance_examples() {
        assert!(is_triangular_invariant(&v_k(4, 1, 1).unwrap()));
        assert!(is_triangular_invariant(&v_k(5, 2, 2).unwrap()));
        assert!(is_triangular_invariant(&MatrixSubspace::full(3)));
        let q = random_invertible(&mut rng::seeded(4), 4, 5);
        assert!(!is_triangular_invariant(
            &v_k(4, 1, 1).unwrap().conjugate(&q).unwrap()
        ));
        let lower = MatrixSubspace::<Rational>::coordinate(2, [(1, 0)]);
        assert!(!is_triangular_invariant(&lower));
    }

    #[test]
    fn n2_position_sets() {
        let sets: Vec<Vec<(usize, usize)>> = enumerate_closed_position_sets(2, RuleSet::Full)
            .unwrap()
            .iter()
            .map(InvariantSpaceSpec::positions)
            .collect();
        assert_eq!(sets, vec![vec![], vec![(0, 1)], vec![(0, 1), (1, 0)]]);
    }

    /// Independent check: realize each of the 2^6 position sets with the
    /// forced diagonal part and test invariance on matrices.
    #[test]
    fn n3_count_matches_brute_force() {
        let n = 3;
        let offdiag: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect();
        let mut brute = 0;
        for sub in 0u32..1 << offdiag.len() {
            let mut mats = vec![Mat::identity(n)];
            for (b, &(i, j)) in offdiag.iter().enumerate() {
                if sub >> b & 1 == 1 {
                    mats.push(Mat::unit(n, n, i, j));
                    if i > j {
                        mats.push(&Mat::unit(n, n, i, i) - &Mat::unit(n, n, j, j));
                    }
                }
            }
            let v = MatrixSubspace::span(n, &mats).unwrap();
            let units = offdiag
                .iter()
                .filter(|&&(i, j)| v.contains(&Mat::unit(n, n, i, j)))
                .count();
            if units == sub.count_ones() as usize && is_triangular_invariant(&v) {
                brute += 1;
            }
        }
        assert_eq!(closed_masks(n, RuleSet::Full).len(), brute);
    }

    #[test]
    fn enumerated_specs_are_invariant_and_unique() {
        for n in 1..=4 {
            let specs = enumerate_invariant_spaces(n).unwrap();
            for w in specs.windows(2) {
                assert_ne!(w[0], w[1]);
            }
            for s in &specs {
                assert!(is_triangular_invariant(&s.realize()), "{s}");
                assert_eq!(s.realize().dim(), s.dim());
                assert_eq!(triangular_closure(s), *s);
            }
        }
    }

    #[test]
    fn guard() {
        assert!(matches!(
            enumerate_invariant_spaces(9),
            Err(Error::GuardExceeded { n: 9, .. })
        ));
    }

    #[test]
    fn search_small_cases() {
        let r = search_max_dimension(2, 1, DEFAULT_TRIALS, 0).unwrap();
        assert_eq!(r.max_dim, 3);
        let r = search_max_dimension(3, 1, DEFAULT_TRIALS, 0).unwrap();
        assert_eq!(r.max_dim, 5);
        assert!(r.matches_bound());
        let target = v_k(3, 1, 1).unwrap();
        assert!(r.argmax.iter().any(|s| s.realize() == target));
        let r = search_max_dimension(4, 0, DEFAULT_TRIALS, 0).unwrap();
        assert_eq!(r.max_dim, 5);
        let schur = schur_space(4).unwrap();
        assert!(r
            .argmax
            .iter()
            .any(|s| s.realize() == schur || s.realize() == schur.transpose_space()));
    }

    #[test]
    fn argmax_specs_are_algebras() {
        for (n, k) in [(3, 0), (3, 1), (3, 2), (4, 1), (4, 2)] {
            let r = search_max_dimension(n, k, DEFAULT_TRIALS, 0).unwrap();
            assert!(r.matches_bound(), "{n} {k}");
            for s in &r.argmax {
                assert!(s.realize().is_algebra(), "{s}");
            }
        }
    }

    #[test]
    fn pruned_specs_fail_when_sampled() {
        let mut checked = 0;
        for (n, k) in [(3, 1), (4, 1), (4, 2), (4, 0)] {
            for s in enumerate_invariant_spaces(n).unwrap() {
                if checked == 50 {
                    return;
                }
                if staircase_pruned(&s, k) {
                    let v = satisfies_rank_condition(&s.realize(), k, DEFAULT_TRIALS, 1).unwrap();
                    assert!(!v.is_yes(), "{s}");
                    checked += 1;
                }
            }
        }
    }

    #[test]
    fn t_bound_examples() {
        assert_eq!(t_bound(5, 2, 1).unwrap(), 13);
        assert_eq!(dimension_bound(5, 2).unwrap(), 13);
        assert_eq!(t_bound(5, 2, 3).unwrap(), 11);
        assert!(t_bound(5, 2, 0).is_err());
        assert!(t_bound(5, 2, 4).is_err());
        for n in 1..=10 {
            for k in 0..n {
                let best = (1..=n - k)
                    .map(|t| t_bound(n, k, t).unwrap())
                    .max()
                    .unwrap();
                assert_eq!(best, dimension_bound(n, k).unwrap(), "{n} {k}");
            }
        }
    }
}

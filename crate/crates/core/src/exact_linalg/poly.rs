//! Dense univariate polynomials: characteristic polynomials, resultants,
//! discriminants and exact rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rational};
use super::mat::Mat;
use crate::error::{Error, Result};

/// Coefficients low degree first; no trailing zeros, so the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Field = Rational> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(F::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `x - c`.
    pub fn linear_root(c: F) -> Self {
        Self::new(vec![-c, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * &F::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|v| v.clone() * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = std::mem::replace(&mut out[i + j], F::zero());
                out[i + j] = t + &(a.clone() * b);
            }
        }
        Self::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = divisor
            .leading()
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&d| d >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![F::zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            let c = rem[i].clone() * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = std::mem::replace(&mut rem[i - dd + j], F::zero());
                rem[i - dd + j] = t - &(c.clone() * d);
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(F::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(F::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().inv() {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    /// Product of the distinct irreducible factors, monic. Valid in
    /// characteristic zero.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Resultant by the Euclidean algorithm.
    pub fn resultant(&self, other: &Self) -> F {
        let (Some(_), Some(_)) = (self.degree(), other.degree()) else {
            return F::zero();
        };
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = F::one();
        loop {
            let da = a.degree().expect("nonzero");
            let db = b.degree().expect("nonzero");
            if db == 0 {
                let lb = b.leading();
                return (0..da).fold(acc, |x, _| x * &lb);
            }
            let r = a.rem(&b);
            let Some(dr) = r.degree() else {
                return F::zero();
            };
            if da % 2 == 1 && db % 2 == 1 {
                acc = -acc;
            }
            let lb = b.leading();
            acc = (0..da - dr).fold(acc, |x, _| x * &lb);
            a = b;
            b = r;
        }
    }

    /// `(-1)^{d(d-1)/2} res(p, p') / lc(p)`.
    pub fn discriminant(&self) -> F {
        let Some(d) = self.degree() else {
            return F::zero();
        };
        if d == 0 {
            return F::zero();
        }
        if d == 1 {
            return F::one();
        }
        let res = self.resultant(&self.derivative());
        let lc_inv = self.leading().inv().expect("nonzero leading coefficient");
        let v = res * &lc_inv;
        if (d * (d - 1) / 2) % 2 == 1 {
            -v
        } else {
            v
        }
    }

    /// Composition `self(other)`.
    pub fn compose(&self, other: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(other).add(&Self::constant(c.clone()))
        })
    }
}

/// Characteristic polynomial `det(xI - M)` by Faddeev-LeVerrier. Needs
/// characteristic zero or larger than the matrix size.
pub fn charpoly<F: Field>(m: &Mat<F>) -> Result<Poly<F>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![F::zero(); n + 1];
    coeffs[n] = F::one();
    let mut mk = Mat::<F>::zeros(n, n);
    for k in 1..=n {
        let prev = coeffs[n - k + 1].clone();
        mk = (m * &mk).shift(&-prev);
        let tr = (m * &mk).trace();
        let kinv = F::from_i64(k as i64).inv().ok_or(Error::InvalidParameter(
            "field characteristic divides the matrix size".into(),
        ))?;
        coeffs[n - k] = -(tr * &kinv);
    }
    Ok(Poly::new(coeffs))
}

pub fn charpoly_discriminant(m: &Mat<Rational>) -> Result<Rational> {
    Ok(charpoly(m)?.discriminant())
}

/// Integer polynomial with the same roots: denominators cleared, content
/// removed.
pub fn primitive_integer(p: &Poly<Rational>) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn sign_changes(seq: &[Vec<BigInt>], x: &BigInt) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in seq {
        let v = eval_int(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Sturm sequence of a squarefree polynomial, kept with integer coefficients
/// (positive rescaling does not move sign changes).
fn sturm_sequence(p: &Poly<Rational>) -> Vec<Vec<BigInt>> {
    let mut seq = vec![p.clone(), p.derivative()];
    while let Some(last) = seq.last().filter(|q| q.degree().unwrap_or(0) > 0) {
        let r = seq[seq.len() - 2].rem(last);
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&-Rational::one()));
    }
    seq.iter().map(primitive_integer).collect()
}

/// Distinct rational roots, ascending.
pub fn rational_roots(p: &Poly<Rational>) -> Vec<Rational> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let sf = p.squarefree_part();
    let ints = primitive_integer(&sf);
    let d = ints.len() - 1;
    let a = ints[d].clone();
    // monic integer transform: q(y) = a^{d-1} p(y / a); rational roots of p
    // become the integer roots of q.
    let mut q = Vec::with_capacity(d + 1);
    let mut pow = BigInt::one();
    let mut powers = vec![BigInt::one(); d + 1];
    for slot in powers.iter_mut().skip(1) {
        pow *= &a;
        *slot = pow.clone();
    }
    for (i, c) in ints.iter().enumerate() {
        q.push(if i == d {
            BigInt::one()
        } else {
            c * &powers[d - 1 - i]
        });
    }
    let qpoly = Poly::new(
        q.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    );
    let seq = sturm_sequence(&qpoly);
    let bound = q[..d]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
        + BigInt::one();
    let mut roots = Vec::new();
    let mut stack = vec![(-&bound - BigInt::one(), bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
        if count == 0 {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if eval_int(&q, &hi).is_zero() {
                roots.push(Rational::new(hi, a.clone()));
            }
            continue;
        }
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    roots.sort();
    roots
}

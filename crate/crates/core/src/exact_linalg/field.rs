//! Scalar fields: exact rationals and a prime field used for fast screening.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mat::{self, Mat};
use crate::error::{Error, Result};

/// Exact rational scalar. Numerator and denominator are kept coprime with a
/// positive denominator by `num-rational`.
pub type Rational = BigRational;

/// The default scalar of the crate.
pub type Scalar = Rational;

/// A commutative field with exact equality.
///
/// Arithmetic is expressed through the std operator traits. Right-hand
/// operands are taken by reference so big-integer values are not cloned twice.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Short label used in reports ("Q", "F_p", ...).
    const NAME: &'static str;

    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn rank_of(m: &Mat<Self>) -> usize {
        mat::gaussian_rank(m)
    }

    /// Discriminant of the characteristic polynomial. Only the rationals
    /// implement this.
    fn charpoly_discriminant_of(_m: &Mat<Self>) -> Result<Self> {
        Err(Error::RationalOnly)
    }
}

impl Field for Rational {
    const NAME: &'static str = "Q";

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn rank_of(m: &Mat<Self>) -> usize {
        mat::bareiss_rank(m)
    }

    fn charpoly_discriminant_of(m: &Mat<Self>) -> Result<Self> {
        super::poly::charpoly_discriminant(m)
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with arbitrary-precision decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("not a rational literal: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

// ---------------------------------------------------------------------------
// Prime field

/// 2^61 - 1.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

static MODULUS: OnceLock<u64> = OnceLock::new();

/// Fixes the screening prime for this process. Must run before the first
/// prime-field operation; later calls succeed only with the same value.
pub fn init_prime(p: u64) -> Result<u64> {
    validate_prime(p)?;
    let set = *MODULUS.get_or_init(|| p);
    if set != p {
        return Err(Error::InvalidPrime(
            p,
            "a different prime is already active",
        ));
    }
    Ok(set)
}

/// The active screening prime.
pub fn prime() -> u64 {
    *MODULUS.get_or_init(|| DEFAULT_PRIME)
}

fn validate_prime(p: u64) -> Result<()> {
    if p <= 1 << 30 {
        return Err(Error::InvalidPrime(p, "must exceed 2^30"));
    }
    if p >= 1 << 63 {
        return Err(Error::InvalidPrime(p, "must be below 2^63"));
    }
    if !is_prime_u64(p) {
        return Err(Error::InvalidPrime(p, "not prime"));
    }
    Ok(())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Residue modulo the session prime (see [`prime`]).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % prime())
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let p = BigInt::from(prime());
        let r = v.mod_floor(&p);
        Fp(r.to_u64().expect("residue fits in u64"))
    }

    /// Reduces a rational; `None` when the denominator vanishes mod p.
    pub fn from_rational(r: &Rational) -> Option<Self> {
        let den = Fp::from_bigint(r.denom());
        den.inv().map(|d| Fp::from_bigint(r.numer()) * d)
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let p = prime();
        let s = self.0 + o.0;
        Fp(if s >= p { s - p } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        let p = prime();
        Fp(if self.0 >= o.0 {
            self.0 - o.0
        } else {
            self.0 + p - o.0
        })
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        Fp(mul_mod(self.0, o.0, prime()))
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Fp) -> Fp {
        self * o.inv().expect("division by zero in F_p")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(prime() - self.0)
        }
    }
}

impl Add<&Fp> for Fp {
    type Output = Fp;
    fn add(self, o: &Fp) -> Fp {
        self + *o
    }
}

impl Sub<&Fp> for Fp {
    type Output = Fp;
    fn sub(self, o: &Fp) -> Fp {
        self - *o
    }
}

impl Mul<&Fp> for Fp {
    type Output = Fp;
    fn mul(self, o: &Fp) -> Fp {
        self * *o
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

impl Field for Fp {
    const NAME: &'static str = "F_p";

    fn from_i64(v: i64) -> Self {
        Fp((v as i128).rem_euclid(prime() as i128) as u64)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            let p = prime();
            Some(Fp(pow_mod(self.0, p - 2, p)))
        }
    }
}

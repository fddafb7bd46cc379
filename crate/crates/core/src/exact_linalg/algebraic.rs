//! Arithmetic in `Q[x]/(f)` for a squarefree `f`, used when a matrix has no
//! rational eigenvalue.
//!
//! `f` need not be irreducible. Inverting a zero divisor exposes a proper
//! factor of `f`; the factor is recorded on the shared context and the caller
//! restarts over the smaller modulus (dynamic evaluation). Results computed
//! after a split was recorded are meaningless and must be discarded.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use super::field::{format_rational, Field, Rational};
use super::poly::Poly;

#[derive(Debug)]
pub struct ExtensionContext {
    modulus: Poly<Rational>,
    split: Mutex<Option<Poly<Rational>>>,
}

impl ExtensionContext {
    /// `modulus` must be squarefree of degree at least 1; it is made monic.
    pub fn new(modulus: &Poly<Rational>) -> Arc<Self> {
        assert!(
            modulus.degree().unwrap_or(0) >= 1,
            "modulus must be nonconstant"
        );
        Arc::new(ExtensionContext {
            modulus: modulus.monic(),
            split: Mutex::new(None),
        })
    }

    pub fn modulus(&self) -> &Poly<Rational> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonconstant")
    }

    /// A proper factor found while inverting, if any.
    pub fn split_factor(&self) -> Option<Poly<Rational>> {
        self.split.lock().expect("split lock").clone()
    }

    fn record_split(&self, factor: Poly<Rational>) {
        let mut slot = self.split.lock().expect("split lock");
        if slot.is_none() {
            *slot = Some(factor);
        }
    }

    /// The generator `x mod f`.
    pub fn theta(self: &Arc<Self>) -> AlgebraicNumber {
        AlgebraicNumber::from_poly(self, Poly::new(vec![Rational::zero(), Rational::one()]))
    }

    pub fn element(self: &Arc<Self>, p: Poly<Rational>) -> AlgebraicNumber {
        AlgebraicNumber::from_poly(self, p)
    }
}

/// Element of `Q[x]/(f)`. Constants may omit the context, so `zero()` and
/// `one()` need none.
#[derive(Clone)]
pub struct AlgebraicNumber {
    value: Poly<Rational>,
    ctx: Option<Arc<ExtensionContext>>,
}

impl AlgebraicNumber {
    fn from_poly(ctx: &Arc<ExtensionContext>, p: Poly<Rational>) -> Self {
        AlgebraicNumber {
            value: p.rem(&ctx.modulus),
            ctx: Some(ctx.clone()),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        AlgebraicNumber {
            value: Poly::constant(r),
            ctx: None,
        }
    }

    /// Representative polynomial of degree below `deg f`.
    pub fn poly(&self) -> &Poly<Rational> {
        &self.value
    }

    pub fn context(&self) -> Option<&Arc<ExtensionContext>> {
        self.ctx.as_ref()
    }

    /// `Some(r)` when the element is the rational constant `r`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.value.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.value.leading()),
            _ => None,
        }
    }

    fn join(&self, other: &Self) -> Option<Arc<ExtensionContext>> {
        match (&self.ctx, &other.ctx) {
            (Some(a), Some(b)) => {
                debug_assert!(
                    Arc::ptr_eq(a, b) || a.modulus == b.modulus,
                    "mixed extensions"
                );
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn wrap(value: Poly<Rational>, ctx: Option<Arc<ExtensionContext>>) -> Self {
        let value = match &ctx {
            Some(c) if value.degree().unwrap_or(0) >= c.degree() => value.rem(&c.modulus),
            _ => value,
        };
        AlgebraicNumber { value, ctx }
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", format_rational(&r));
        }
        let terms: Vec<String> = self
            .value
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}*t", format_rational(c)),
                _ => format!("{}*t^{}", format_rational(c), i),
            })
            .collect();
        write!(f, "({})", terms.join(" + "))
    }
}

impl Zero for AlgebraicNumber {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl One for AlgebraicNumber {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Add for AlgebraicNumber {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self + &o
    }
}

impl Sub for AlgebraicNumber {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self - &o
    }
}

impl Mul for AlgebraicNumber {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}

impl Add<&AlgebraicNumber> for AlgebraicNumber {
    type Output = Self;
    fn add(self, o: &Self) -> Self {
        let ctx = self.join(o);
        Self::wrap(self.value.add(&o.value), ctx)
    }
}

impl Sub<&AlgebraicNumber> for AlgebraicNumber {
    type Output = Self;
    fn sub(self, o: &Self) -> Self {
        let ctx = self.join(o);
        Self::wrap(self.value.sub(&o.value), ctx)
    }
}

impl Mul<&AlgebraicNumber> for AlgebraicNumber {
    type Output = Self;
    fn mul(self, o: &Self) -> Self {
        let ctx = self.join(o);
        Self::wrap(self.value.mul(&o.value), ctx)
    }
}

impl Neg for AlgebraicNumber {
    type Output = Self;
    fn neg(self) -> Self {
        AlgebraicNumber {
            value: self.value.scale(&-Rational::one()),
            ctx: self.ctx,
        }
    }
}

impl Field for AlgebraicNumber {
    const NAME: &'static str = "Q(t)";

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_i64(v))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let Some(ctx) = &self.ctx else {
            return Some(Self::from_rational(self.value.leading().recip()));
        };
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(r.recip()));
        }
        let (g, s, _) = self.value.xgcd(&ctx.modulus);
        if g.degree() == Some(0) {
            return Some(Self::from_poly(ctx, s));
        }
        // zero divisor: keep the smaller of g and f/g
        let cofactor = ctx.modulus.div_rem(&g).0.monic();
        let factor = if g.degree() <= cofactor.degree() {
            g
        } else {
            cofactor
        };
        ctx.record_split(factor);
        Some(Self::zero())
    }
}

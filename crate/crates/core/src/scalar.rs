//! Exact coefficient fields: arbitrary-precision rationals and prime fields.
//!
//! Everything downstream (polynomials, Groebner bases, linear algebra) is
//! generic over [`FieldScalar`]. The two implementations are
//! [`Rational`] (`num::BigRational`) and [`Fp`], a prime-field residue that
//! carries its modulus. No floating point anywhere: ideal equality demands
//! exact arithmetic.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::Signed;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (guaranteed by `num::BigRational`).
pub type Rational = num::BigRational;

/// Which coefficient field a ring works over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
}

impl FieldDescriptor {
    /// The prime field `GF(p)`. Fails unless `2 <= p < 2^31` and `p` is prime.
    pub fn prime_field(p: u64) -> Result<Self> {
        if !(2..1u64 << 31).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldDescriptor::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "QQ"),
            FieldDescriptor::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element usable as a polynomial coefficient.
///
/// Implementations must be immutable values with structural equality; the
/// `Zero`/`One` constructors from `num_traits` give the additive and
/// multiplicative identities.
pub trait FieldScalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Embed the rational number `num/den` into the field described by
    /// `field`. Fails when `den` is not invertible (zero, or divisible by
    /// the characteristic).
    fn from_ratio(num: &BigInt, den: &BigInt, field: &FieldDescriptor) -> Result<Self>;

    /// Whether this scalar type can represent elements of `field`.
    fn accepts(field: &FieldDescriptor) -> bool;

    /// Attach field context to a bare identity produced by `zero()`/`one()`.
    /// A no-op for rationals.
    fn bind(self, field: &FieldDescriptor) -> Self;

    fn from_integer(n: i64, field: &FieldDescriptor) -> Self {
        Self::from_ratio(&BigInt::from(n), &BigInt::from(1), field)
            .expect("integer embedding cannot fail")
    }

    /// Split into a display sign and a magnitude string. Polynomial
    /// printing folds the sign into the `+`/`-` joining the terms.
    /// Prime-field residues are never negative.
    fn display_parts(&self) -> (bool, String) {
        (false, self.to_string())
    }

    /// Exact division; panics on a zero divisor, which callers rule out.
    fn div_exact(&self, d: &Self) -> Self {
        self.clone() * d.inv().expect("division by zero scalar")
    }
}

impl FieldScalar for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_ratio(num: &BigInt, den: &BigInt, _field: &FieldDescriptor) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational::new(num.clone(), den.clone()))
    }

    fn accepts(field: &FieldDescriptor) -> bool {
        matches!(field, FieldDescriptor::Rationals)
    }

    fn bind(self, _field: &FieldDescriptor) -> Self {
        self
    }

    fn display_parts(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

/// A residue in `GF(p)`, reduced to `[0, p)`.
///
/// The modulus travels with the value so that field operations need no
/// external context. The identities `Fp::zero()` and `Fp::one()` are created
/// without a modulus (`modulus == 0`); they adopt the modulus of the first
/// bound operand they meet. Arithmetic between two unbound values is only
/// defined while the result stays in `{0, 1}`, which is all the generic
/// algorithms ever produce before binding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Self {
        let p_i = p as i64;
        let mut v = value % p_i;
        if v < 0 {
            v += p_i;
        }
        Fp {
            value: v as u64,
            modulus: p,
        }
    }

    pub fn from_u64(value: u64, p: u64) -> Self {
        Fp {
            value: value % p,
            modulus: p,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn unify(a: Fp, b: Fp) -> (u64, u64, u64) {
        match (a.modulus, b.modulus) {
            (0, 0) => (a.value, b.value, 0),
            (0, p) => (a.value % p, b.value, p),
            (p, 0) => (a.value, b.value % p, p),
            (p, q) => {
                assert_eq!(p, q, "mixed prime-field moduli {p} and {q}");
                (a.value, b.value, p)
            }
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            let v = a + b;
            assert!(v <= 1, "unbound prime-field arithmetic left {{0,1}}");
            return Fp { value: v, modulus: 0 };
        }
        Fp {
            value: ((a as u128 + b as u128) % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            assert!(a >= b, "unbound prime-field arithmetic left {{0,1}}");
            return Fp { value: a - b, modulus: 0 };
        }
        Fp {
            value: ((a as u128 + p as u128 - b as u128) % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            return Fp { value: a * b, modulus: 0 };
        }
        Fp {
            value: ((a as u128 * b as u128) % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.modulus == 0 {
            assert!(self.value == 0, "unbound prime-field arithmetic left {{0,1}}");
            return self;
        }
        if self.value == 0 {
            self
        } else {
            Fp {
                value: self.modulus - self.value,
                modulus: self.modulus,
            }
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { value: 0, modulus: 0 }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { value: 1, modulus: 0 }
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
}

impl FieldScalar for Fp {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let p = self.modulus;
        assert!(p > 0, "cannot invert an unbound prime-field constant");
        // p - 2 exponent by square and multiply
        let mut base = self.value as u128;
        let mut exp = p - 2;
        let m = p as u128;
        let mut acc: u128 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Some(Fp {
            value: acc as u64,
            modulus: p,
        })
    }

    fn from_ratio(num: &BigInt, den: &BigInt, field: &FieldDescriptor) -> Result<Self> {
        let p = match field {
            FieldDescriptor::PrimeField(p) => *p,
            FieldDescriptor::Rationals => {
                return Err(Error::FieldMismatch(field.to_string()));
            }
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let reduce = |n: &BigInt| -> u64 {
            let m = BigInt::from(p);
            let mut r = n % &m;
            if r.is_negative() {
                r += &m;
            }
            u64::try_from(r).expect("reduced residue fits u64")
        };
        let d = reduce(den);
        let d = Fp { value: d, modulus: p };
        let dinv = d
            .inv()
            .ok_or_else(|| Error::NonInvertibleDenominator(den.to_string()))?;
        Ok(Fp { value: reduce(num), modulus: p } * dinv)
    }

    fn accepts(field: &FieldDescriptor) -> bool {
        matches!(field, FieldDescriptor::PrimeField(_))
    }

    fn bind(self, field: &FieldDescriptor) -> Self {
        if self.modulus != 0 {
            return self;
        }
        match field {
            FieldDescriptor::PrimeField(p) => Fp::from_u64(self.value, *p),
            FieldDescriptor::Rationals => panic!("binding Fp to QQ"),
        }
    }
}

/// Deterministic Miller-Rabin, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow_mod = |mut base: u128, mut exp: u64, m: u128| -> u128 {
        let mut acc: u128 = 1;
        base %= m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a as u128, d, n as u128);
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x % n as u128;
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

//! Exact commutative rings: the integers, prime fields `Z/p`, and univariate
//! polynomials over the integers.
//!
//! A [`RingValue`] always carries its [`Ring`], so values from different rings
//! can be detected and rejected. The checked operations (`try_add`, `try_mul`,
//! ...) report a mismatch as an error; the operator impls on references panic
//! instead, which is what the matrix code uses once shapes and rings have been
//! validated at construction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring mismatch: {left} vs {right}")]
    Mismatch { left: Ring, right: Ring },
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("expected a polynomial value, found an element of {0}")]
    NotPolynomial(Ring),
    #[error("cannot parse {input:?} as an element of {ring}: {reason}")]
    ParseValue {
        ring: Ring,
        input: String,
        reason: String,
    },
    #[error("unknown ring descriptor {0:?} (expected int, mod:p or poly:v)")]
    ParseRing(String),
}

/// Descriptor of one of the supported commutative rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    /// Integers modulo a prime `p`. Construct with [`Ring::prime_field`].
    PrimeField(u64),
    /// Univariate polynomials over the integers in the named variable.
    Poly(Arc<str>),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Self, RingError> {
        if is_prime_u64(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(RingError::NotPrime(p))
        }
    }

    pub fn poly(var: &str) -> Self {
        Ring::Poly(Arc::from(var))
    }

    pub fn zero(&self) -> RingValue {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingValue {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> RingValue {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> RingValue {
        match self {
            Ring::Integers => RingValue(Repr::Int(v.clone())),
            Ring::PrimeField(p) => RingValue(Repr::Mod {
                value: reduce_bigint(v, *p),
                modulus: *p,
            }),
            Ring::Poly(var) => RingValue::poly_from_coeffs(var.clone(), vec![v.clone()]),
        }
    }

    /// The polynomial variable itself. `None` unless this is a polynomial ring.
    pub fn variable(&self) -> Option<RingValue> {
        match self {
            Ring::Poly(var) => Some(RingValue::poly_from_coeffs(
                var.clone(),
                vec![BigInt::zero(), BigInt::one()],
            )),
            _ => None,
        }
    }

    /// Polynomial with the given coefficients, constant term first.
    pub fn poly_value(&self, coeffs: &[i64]) -> Result<RingValue, RingError> {
        match self {
            Ring::Poly(var) => Ok(RingValue::poly_from_coeffs(
                var.clone(),
                coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            )),
            other => Err(RingError::NotPolynomial(other.clone())),
        }
    }

    /// A random element. Integer entries (and polynomial coefficients) are
    /// drawn from `[-bound, bound]`; polynomials have degree at most 1.
    /// Prime-field residues are uniform over the whole field.
    pub fn random_value<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> RingValue {
        match self {
            Ring::Integers => self.from_i64(rng.gen_range(-bound..=bound)),
            Ring::PrimeField(p) => RingValue(Repr::Mod {
                value: rng.gen_range(0..*p),
                modulus: *p,
            }),
            Ring::Poly(var) => {
                let coeffs = (0..2)
                    .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                    .collect();
                RingValue::poly_from_coeffs(var.clone(), coeffs)
            }
        }
    }

    /// Parses a decimal integer, or a coefficient list `c0,c1,...` for
    /// polynomial rings.
    pub fn parse_value(&self, s: &str) -> Result<RingValue, RingError> {
        let err = |reason: &str| RingError::ParseValue {
            ring: self.clone(),
            input: s.to_string(),
            reason: reason.to_string(),
        };
        match self {
            Ring::Integers | Ring::PrimeField(_) => {
                let v = BigInt::from_str(s.trim()).map_err(|_| err("not a decimal integer"))?;
                Ok(self.from_bigint(&v))
            }
            Ring::Poly(var) => {
                let coeffs = s
                    .split(',')
                    .map(|c| BigInt::from_str(c.trim()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| err("not a comma-separated coefficient list"))?;
                Ok(RingValue::poly_from_coeffs(var.clone(), coeffs))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "int"),
            Ring::PrimeField(p) => write!(f, "mod:{p}"),
            Ring::Poly(var) => write!(f, "poly:{var}"),
        }
    }
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "int" {
            return Ok(Ring::Integers);
        }
        if let Some(p) = s.strip_prefix("mod:") {
            let p: u64 = p.parse().map_err(|_| RingError::ParseRing(s.to_string()))?;
            return Ring::prime_field(p);
        }
        if let Some(var) = s.strip_prefix("poly:") {
            if !var.is_empty() && var.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Ok(Ring::poly(var));
            }
        }
        Err(RingError::ParseRing(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Int(BigInt),
    Mod { value: u64, modulus: u64 },
    // Constant term first, no trailing zeros.
    Poly { coeffs: Vec<BigInt>, var: Arc<str> },
}

/// An element of one of the rings described by [`Ring`], always in canonical
/// form (reduced residues, trimmed coefficient lists).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingValue(Repr);

impl RingValue {
    fn poly_from_coeffs(var: Arc<str>, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RingValue(Repr::Poly { coeffs, var })
    }

    pub fn ring(&self) -> Ring {
        match &self.0 {
            Repr::Int(_) => Ring::Integers,
            Repr::Mod { modulus, .. } => Ring::PrimeField(*modulus),
            Repr::Poly { var, .. } => Ring::Poly(var.clone()),
        }
    }

    fn same_ring(&self, other: &RingValue) -> bool {
        match (&self.0, &other.0) {
            (Repr::Int(_), Repr::Int(_)) => true,
            (Repr::Mod { modulus: p, .. }, Repr::Mod { modulus: q, .. }) => p == q,
            (Repr::Poly { var: u, .. }, Repr::Poly { var: v, .. }) => u == v,
            _ => false,
        }
    }

    fn check(&self, other: &RingValue) -> Result<(), RingError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(RingError::Mismatch {
                left: self.ring(),
                right: other.ring(),
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Int(v) => v.is_zero(),
            Repr::Mod { value, .. } => *value == 0,
            Repr::Poly { coeffs, .. } => coeffs.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Int(v) => v.is_one(),
            Repr::Mod { value, .. } => *value == 1,
            Repr::Poly { coeffs, .. } => coeffs.len() == 1 && coeffs[0].is_one(),
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match &self.0 {
            Repr::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Mod { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// Coefficients of a polynomial value, constant term first.
    pub fn coefficients(&self) -> Option<&[BigInt]> {
        match &self.0 {
            Repr::Poly { coeffs, .. } => Some(coeffs),
            _ => None,
        }
    }

    pub fn try_add(&self, other: &RingValue) -> Result<RingValue, RingError> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &RingValue) -> Result<RingValue, RingError> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.negate()))
    }

    pub fn try_mul(&self, other: &RingValue) -> Result<RingValue, RingError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &RingValue) -> RingValue {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => RingValue(Repr::Int(a + b)),
            (Repr::Mod { value: a, modulus }, Repr::Mod { value: b, .. }) => {
                let s = (*a as u128 + *b as u128) % *modulus as u128;
                RingValue(Repr::Mod {
                    value: s as u64,
                    modulus: *modulus,
                })
            }
            (Repr::Poly { coeffs: a, var }, Repr::Poly { coeffs: b, .. }) => {
                let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                let mut out = long.clone();
                for (o, s) in out.iter_mut().zip(short) {
                    *o += s;
                }
                RingValue::poly_from_coeffs(var.clone(), out)
            }
            _ => unreachable!("ring checked by caller"),
        }
    }

    fn mul_unchecked(&self, other: &RingValue) -> RingValue {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => RingValue(Repr::Int(a * b)),
            (Repr::Mod { value: a, modulus }, Repr::Mod { value: b, .. }) => RingValue(Repr::Mod {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            }),
            (Repr::Poly { coeffs: a, var }, Repr::Poly { coeffs: b, .. }) => {
                if a.is_empty() || b.is_empty() {
                    return RingValue::poly_from_coeffs(var.clone(), Vec::new());
                }
                let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                RingValue::poly_from_coeffs(var.clone(), out)
            }
            _ => unreachable!("ring checked by caller"),
        }
    }

    pub fn negate(&self) -> RingValue {
        match &self.0 {
            Repr::Int(a) => RingValue(Repr::Int(-a)),
            Repr::Mod { value, modulus } => RingValue(Repr::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            }),
            Repr::Poly { coeffs, var } => RingValue(Repr::Poly {
                coeffs: coeffs.iter().map(|c| -c).collect(),
                var: var.clone(),
            }),
        }
    }

    /// Multiplies by an integer scalar.
    pub fn scale(&self, k: i64) -> RingValue {
        self * &self.ring().from_i64(k)
    }

    /// Image under the evaluation map `R[z] -> R`, `z ↦ 0`, as an integer.
    pub fn eval_at_zero(&self) -> Result<RingValue, RingError> {
        match &self.0 {
            Repr::Poly { coeffs, .. } => Ok(RingValue(Repr::Int(
                coeffs.first().cloned().unwrap_or_else(BigInt::zero),
            ))),
            _ => Err(RingError::NotPolynomial(self.ring())),
        }
    }

    /// Degree of a polynomial value; `None` for the zero polynomial.
    pub fn degree(&self) -> Result<Option<usize>, RingError> {
        match &self.0 {
            Repr::Poly { coeffs, .. } => Ok(coeffs.len().checked_sub(1)),
            _ => Err(RingError::NotPolynomial(self.ring())),
        }
    }

    /// Leading coefficient equal to 1. The constant polynomial 1 counts as
    /// monic; the zero polynomial does not.
    pub fn is_monic(&self) -> Result<bool, RingError> {
        match &self.0 {
            Repr::Poly { coeffs, .. } => Ok(coeffs.last().is_some_and(One::is_one)),
            _ => Err(RingError::NotPolynomial(self.ring())),
        }
    }

    /// Human-readable form, e.g. `-a^2 + 3` for polynomials. Integers and
    /// residues print as decimals.
    pub fn pretty(&self) -> String {
        let Repr::Poly { coeffs, var } = &self.0 else {
            return self.to_string();
        };
        if coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

impl fmt::Display for RingValue {
    /// Serialized form: decimal for integers and residues, `c0,c1,...` for
    /// polynomials (`0` for the zero polynomial).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Int(v) => write!(f, "{v}"),
            Repr::Mod { value, .. } => write!(f, "{value}"),
            Repr::Poly { coeffs, .. } => {
                if coeffs.is_empty() {
                    return write!(f, "0");
                }
                let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl Add for &RingValue {
    type Output = RingValue;

    fn add(self, rhs: &RingValue) -> RingValue {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &RingValue {
    type Output = RingValue;

    fn sub(self, rhs: &RingValue) -> RingValue {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &RingValue {
    type Output = RingValue;

    fn mul(self, rhs: &RingValue) -> RingValue {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &RingValue {
    type Output = RingValue;

    fn neg(self) -> RingValue {
        self.negate()
    }
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r.is_negative() {
        r + BigInt::from(p)
    } else {
        r
    };
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; these bases are exact for all 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
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

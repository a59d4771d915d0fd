//! Exact arithmetic over real quadratic fields.
//!
//! An [`ExactReal`] is a number `q + r*sqrt(d)` with `q, r` rational and `d`
//! a squarefree integer (`d = 0` for plain rationals). The representation is
//! canonical, so equality is structural, and every comparison and floor is
//! decided by integer arithmetic alone — no floating point ever enters a
//! decision, it is only used as a first guess that gets certified exactly.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest radicand accepted by the constructor.
///
/// Canonicalization must extract the full square part of `d`, which is done
/// by trial division up to `sqrt(d)`; this cap keeps that step exact and
/// cheap rather than silently skipping large square factors.
pub const MAX_RADICAND: u64 = 1_000_000_000_000;

/// A real number of the form `q + r*sqrt(d)`, kept in canonical form:
/// `d` is squarefree and at least 2, or `r = 0` and `d = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactReal {
    q: BigRational,
    r: BigRational,
    d: u64,
}

/// Splits `d` into `(s, d0)` with `d = s^2 * d0` and `d0` squarefree.
fn squarefree_split(d: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut d0 = d;
    let mut f = 2u64;
    while f * f <= d0 {
        while d0.is_multiple_of(f * f) {
            d0 /= f * f;
            s *= f;
        }
        f += 1;
    }
    (s, d0)
}

impl ExactReal {
    /// Builds `q + r*sqrt(d)` and canonicalizes: square factors of `d` move
    /// into `r`, and a perfect-square (or zero) radicand folds into `q`.
    pub fn new(q: BigRational, r: BigRational, d: i64) -> Result<Self> {
        if d < 0 {
            return Err(Error::NegativeRadicand(d));
        }
        let d = d as u64;
        if d > MAX_RADICAND {
            return Err(Error::RadicandTooLarge(d));
        }
        if r.is_zero() {
            return Ok(Self { q, r, d: 0 });
        }
        let (s, d0) = squarefree_split(d);
        let r = r * BigRational::from(BigInt::from(s));
        Ok(match d0 {
            // sqrt(0) = 0 and sqrt(1) = 1 fold into the rational part.
            0 => Self { q, r: BigRational::zero(), d: 0 },
            1 => Self { q: q + r, r: BigRational::zero(), d: 0 },
            _ => Self { q, r, d: d0 },
        })
    }

    /// The rational `q` as an exact real.
    pub fn from_rational(q: BigRational) -> Self {
        Self { q, r: BigRational::zero(), d: 0 }
    }

    /// The integer `n` as an exact real.
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(n)))
    }

    /// The integer `n` as an exact real.
    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from(n))
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    /// Rational part.
    pub fn q(&self) -> &BigRational {
        &self.q
    }

    /// Coefficient of `sqrt(d)`.
    pub fn r(&self) -> &BigRational {
        &self.r
    }

    /// The squarefree radicand, or 0 when the number is rational.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.r.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    /// Returns the rational value when `r = 0`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.q)
    }

    /// Rebuilds the canonical form after arithmetic (only the `r = 0`
    /// collapse can be needed; the radicand is already squarefree).
    fn normalized(q: BigRational, r: BigRational, d: u64) -> Self {
        if r.is_zero() {
            Self { q, r, d: 0 }
        } else {
            Self { q, r, d }
        }
    }

    /// The common radicand of two operands, or an error when both are
    /// irrational with different radicands.
    fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::MixedRadicands(a, b)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(&self.q + &other.q, &self.r + &other.r, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(&self.q - &other.q, &self.r - &other.r, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dd = BigRational::from(BigInt::from(d));
        let q = &self.q * &other.q + &self.r * &other.r * dd;
        let r = &self.q * &other.r + &self.r * &other.q;
        Ok(Self::normalized(q, r, d))
    }

    pub fn neg(&self) -> Self {
        Self { q: -&self.q, r: -&self.r, d: self.d }
    }

    /// Multiplies by the integer `n`.
    pub fn scale_int(&self, n: i64) -> Self {
        let f = BigRational::from(BigInt::from(n));
        Self::normalized(&self.q * &f, &self.r * &f, self.d)
    }

    /// Sign of the value, decided exactly: the signs of `q` and `r` settle
    /// most cases, and a mixed-sign pair needs a single squaring step
    /// (`q + r*sqrt(d)` and `q^2 - r^2 d` have the same sign as `q` then).
    pub fn sign(&self) -> Ordering {
        if self.r.is_zero() {
            return self.q.cmp(&BigRational::zero());
        }
        if self.q.is_zero() {
            return self.r.cmp(&BigRational::zero());
        }
        let sq = self.q.is_positive();
        let sr = self.r.is_positive();
        if sq == sr {
            return if sq { Ordering::Greater } else { Ordering::Less };
        }
        let lhs = &self.q * &self.q;
        let rhs = &self.r * &self.r * BigRational::from(BigInt::from(self.d));
        // Equality would force sqrt(d) to be rational, impossible for a
        // squarefree d >= 2 with r != 0.
        debug_assert_ne!(lhs, rhs, "sqrt({}) cannot be rational", self.d);
        if sq {
            lhs.cmp(&rhs)
        } else {
            rhs.cmp(&lhs)
        }
    }

    /// Exact three-way comparison. Fails only when the two numbers live in
    /// different quadratic fields.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.try_sub(other)?.sign())
    }

    /// Double-precision estimate, for pilots and initial floor guesses only.
    pub fn to_f64(&self) -> f64 {
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        if self.r.is_zero() {
            return q;
        }
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        q + r * (self.d as f64).sqrt()
    }

    /// Exact floor of the value, computed entirely in integer arithmetic:
    /// write the number as `(A + C*sqrt(d)) / B` with `B > 0`; then
    /// `floor(C*sqrt(d))` comes from an integer square root, and the final
    /// division by `B` cannot straddle an integer because the bracketing
    /// interval has length `1/B`.
    fn floor_exact(&self) -> BigInt {
        use num::Integer;
        let b1 = self.q.denom();
        let b2 = self.r.denom();
        let big_b = b1 * b2;
        let big_a = self.q.numer() * b2;
        let big_c = self.r.numer() * b1;
        let s = if big_c.is_zero() {
            BigInt::zero()
        } else {
            let t = (&big_c * &big_c * BigInt::from(self.d)).sqrt();
            if big_c.is_positive() {
                t
            } else {
                // C*sqrt(d) is irrational here, so floor(-x) = -floor(x) - 1.
                -t - 1
            }
        };
        (big_a + s).div_floor(&big_b)
    }

    /// The unique integer `t` with `t <= x < t + 1`.
    ///
    /// Starts from a double-precision guess and certifies it by exact
    /// comparison, walking at most a few steps; if the guess cannot be
    /// certified quickly the floor is recomputed exactly from an integer
    /// square root. Either way the returned value is checked against the
    /// defining bracket before being handed out.
    pub fn floor(&self) -> BigInt {
        if self.r.is_zero() {
            return self.q.floor().to_integer();
        }
        let t = match self.to_f64() {
            est if est.is_finite() => {
                let mut t = BigInt::from(est.floor() as i128);
                let mut certified = false;
                // The estimate is rarely off by more than one; give the walk
                // a short leash and fall back to the exact route otherwise.
                for _ in 0..4 {
                    match self.cmp_int(&t) {
                        Ordering::Less => t -= 1,
                        _ => {
                            if self.cmp_int(&(&t + 1)) == Ordering::Less {
                                certified = true;
                                break;
                            }
                            t += 1;
                        }
                    }
                }
                if certified {
                    t
                } else {
                    self.floor_exact()
                }
            }
            _ => self.floor_exact(),
        };
        debug_assert_ne!(self.cmp_int(&t), Ordering::Less);
        debug_assert_eq!(self.cmp_int(&(&t + 1)), Ordering::Less);
        t
    }

    /// Compares against the integer `n` (always the same field).
    fn cmp_int(&self, n: &BigInt) -> Ordering {
        let diff = Self {
            q: &self.q - BigRational::from(n.clone()),
            r: self.r.clone(),
            d: self.d,
        };
        diff.sign()
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r.is_zero() {
            return write!(f, "{}", self.q);
        }
        let root = if self.r.abs().is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.r.abs(), self.d)
        };
        if self.q.is_zero() {
            return if self.r.is_negative() {
                write!(f, "-{root}")
            } else {
                write!(f, "{root}")
            };
        }
        if self.r.is_negative() {
            write!(f, "{} - {root}", self.q)
        } else {
            write!(f, "{} + {root}", self.q)
        }
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactReal({self})")
    }
}

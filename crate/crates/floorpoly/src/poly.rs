//! Polynomials over a fixed real quadratic field, their integer companions,
//! and the algebraic tools built on them: denominator clearing, resultants,
//! root counting and localization, and a prime-power orbit check.
//!
//! The central object for everything downstream is the *cleared form* of a
//! polynomial `P` with rational non-constant coefficients: an integer `N`,
//! an integer polynomial `Q` with `Q(0) = 0`, and offsets `A_0..A_{N-1}`
//! such that `N*floor(P(N*k + j)) = A_j + Q(N*k + j)` for every integer `k`.
//! This identity turns questions about `floor(P(x)) mod m` into questions
//! about the integer polynomial `Q` modulo `N*m`.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactReal;

/// A polynomial with [`ExactReal`] coefficients that all live in one
/// quadratic field. Index `i` holds the coefficient of `x^i`; trailing
/// zeros are trimmed, and the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<ExactReal>,
}

impl Poly {
    /// Builds a polynomial, rejecting coefficients from different fields.
    pub fn new(mut coeffs: Vec<ExactReal>) -> Result<Self> {
        while coeffs.last().is_some_and(ExactReal::is_zero) {
            coeffs.pop();
        }
        let mut radicand = 0u64;
        for c in &coeffs {
            match (radicand, c.radicand()) {
                (_, 0) => {}
                (0, d) => radicand = d,
                (a, b) if a == b => {}
                (a, b) => return Err(Error::MixedRadicands(a, b)),
            }
        }
        Ok(Self { coeffs })
    }

    /// Convenience constructor from rational coefficients, low power first.
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        Self::new(coeffs.into_iter().map(ExactReal::from_rational).collect())
            .expect("rational coefficients cannot mix radicands")
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficients, lowest power first.
    pub fn coeffs(&self) -> &[ExactReal] {
        &self.coeffs
    }

    /// The coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> ExactReal {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactReal::zero)
    }

    /// The shared radicand of the coefficient field (0 when rational).
    pub fn radicand(&self) -> u64 {
        self.coeffs.iter().map(ExactReal::radicand).find(|&d| d != 0).unwrap_or(0)
    }

    /// True when some coefficient of `x^i`, `i >= 1`, is irrational.
    pub fn has_irrational_nonconstant(&self) -> bool {
        self.coeffs.iter().skip(1).any(|c| !c.is_rational())
    }

    /// Index of the first irrational non-constant coefficient, if any.
    pub fn first_irrational_nonconstant(&self) -> Option<usize> {
        self.coeffs.iter().enumerate().skip(1).find(|(_, c)| !c.is_rational()).map(|(i, _)| i)
    }

    /// Exact evaluation at the integer `k` by Horner's rule.
    pub fn eval(&self, k: i64) -> ExactReal {
        let mut acc = ExactReal::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale_int(k).try_add(c).expect("poly invariant: one shared radicand");
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale_int(i as i64))
            .collect();
        Poly::new(coeffs).expect("derivative stays in the same field")
    }

    /// Splits a polynomial of degree at most 1 into `(slope, intercept)`.
    pub fn linear_parts(&self) -> Option<(ExactReal, ExactReal)> {
        (self.coeffs.len() <= 2).then(|| (self.coeff(1), self.coeff(0)))
    }

    /// Recognizes `a*x^n + c` with rational `a != 0` and `n >= 1`, returning
    /// `(a, n, c)`.
    pub fn monomial_parts(&self) -> Option<(BigRational, u32, ExactReal)> {
        let n = self.degree().filter(|&n| n >= 1)?;
        if self.coeffs[1..n].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let a = self.coeffs[n].as_rational()?.clone();
        Some((a, n as u32, self.coeff(0)))
    }
}

/// Renders one term of the canonical form; `mag` is the unsigned magnitude.
fn push_term(out: &mut String, first: bool, negative: bool, body: &str) {
    if first {
        if negative {
            out.push('-');
        }
    } else if negative {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    out.push_str(body);
}

fn power_suffix(i: usize) -> String {
    match i {
        0 => String::new(),
        1 => "x".to_string(),
        _ => format!("x^{i}"),
    }
}

impl fmt::Display for Poly {
    /// Canonical textual form: descending powers, one term per rational or
    /// `sqrt` component, `*` between every written coefficient and `x`.
    /// Parsing this string back yields an identical polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            let xpart = power_suffix(i);
            if !c.q().is_zero() {
                let mag = c.q().abs();
                let body = if i == 0 {
                    format!("{mag}")
                } else if mag.is_one() {
                    xpart.clone()
                } else {
                    format!("{mag}*{xpart}")
                };
                let first = out.is_empty();
                push_term(&mut out, first, c.q().is_negative(), &body);
            }
            if !c.r().is_zero() {
                let mag = c.r().abs();
                let root = if mag.is_one() {
                    format!("sqrt({})", c.radicand())
                } else {
                    format!("{mag}*sqrt({})", c.radicand())
                };
                let body = if i == 0 { root } else { format!("{root}*{xpart}") };
                let first = out.is_empty();
                push_term(&mut out, first, c.r().is_negative(), &body);
            }
        }
        write!(f, "{out}")
    }
}

/// A polynomial with integer coefficients, index `i` holding the
/// coefficient of `x^i`; trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(BigInt::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    /// Adds the constant `s` to the polynomial.
    pub fn add_scalar(&self, s: &BigInt) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(s.clone());
        } else {
            coeffs[0] += s;
        }
        IntPoly::new(coeffs)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: u64) -> Vec<u64> {
        let mb = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&mb).to_u64().expect("residue fits in u64"))
            .collect()
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.coeffs.iter().cloned().map(BigRational::from).collect()
    }
}

/// Horner evaluation of reduced coefficients (`coeffs[i]` of `x^i`) at `x`
/// modulo `m`; all inputs must already lie in `[0, m)`.
pub fn horner_mod(coeffs: &[u64], x: u64, m: u64) -> u64 {
    let mut acc = 0u128;
    let (x, m) = (x as u128, m as u128);
    for c in coeffs.iter().rev() {
        acc = (acc * x + *c as u128) % m;
    }
    acc as u64
}

/// The cleared form of a polynomial `P` with rational non-constant
/// coefficients: `n` is the least common denominator of those coefficients,
/// `q = n * (P - P(0))` is an integer polynomial with `q(0) = 0`, and the
/// offsets satisfy `n * floor(P(x)) = a[x mod n] + q(x)` for every integer
/// `x`. The constant term of `P` may be irrational; only its floors enter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClearedForm {
    pub n: u64,
    pub q: IntPoly,
    pub a: Vec<BigInt>,
    pub p0_floor: BigInt,
}

/// Computes the [`ClearedForm`] of `P`.
pub fn clear_denominators(p: &Poly) -> Result<ClearedForm> {
    if let Some(i) = p.first_irrational_nonconstant() {
        return Err(Error::IrrationalCoefficient(i));
    }
    let mut n_big = BigInt::one();
    for c in p.coeffs().iter().skip(1) {
        n_big = n_big.lcm(c.q().denom());
    }
    let n = n_big.to_u64().ok_or_else(|| Error::Overflow("denominator lcm".into()))?;
    let q = IntPoly::new(
        std::iter::once(BigInt::zero())
            .chain(p.coeffs().iter().skip(1).map(|c| {
                let scaled = c.q() * BigRational::from(n_big.clone());
                debug_assert!(scaled.is_integer());
                scaled.to_integer()
            }))
            .collect(),
    );
    let mut a = Vec::with_capacity(n as usize);
    for j in 0..n {
        let fl = p.eval(j as i64).floor();
        a.push(&n_big * fl - q.eval_i64(j as i64));
    }
    let p0_floor = p.eval(0).floor();
    Ok(ClearedForm { n, q, a, p0_floor })
}

/// Resultant of two nonzero integer polynomials, as the determinant of the
/// Sylvester matrix with the rows of `f` on top, computed by fraction-free
/// (Bareiss) elimination so every intermediate value stays an integer.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    let size = m + n;
    if size == 0 {
        return Ok(BigInt::one());
    }
    // row i < n carries f shifted by i; row n + i carries g shifted by i
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            mat[n + i][i + k] = c.clone();
        }
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                let (quot, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                mat[i][j] = quot;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    Ok(BigInt::from(sign) * mat[size - 1][size - 1].clone())
}

/// All roots of `f` modulo the prime `p`, found by direct scan.
pub fn roots_mod_p(f: &IntPoly, p: u64) -> Result<Vec<u64>> {
    if !crate::nt::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let reduced = f.reduce_mod(p);
    if reduced.iter().all(|&c| c == 0) {
        return Err(Error::ZeroModP(p));
    }
    Ok((0..p).filter(|&x| horner_mod(&reduced, x, p) == 0).collect())
}

// ---- exact real-root counting via Sturm sequences ----

fn rp_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(BigRational::is_zero) {
        v.pop();
    }
    v
}

fn rp_derivative(v: &[BigRational]) -> Vec<BigRational> {
    rp_trim(
        v.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
            .collect(),
    )
}

/// Quotient and remainder of `a / b` over the rationals; `b` nonzero.
fn rp_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    if rem.len() <= db {
        return (Vec::new(), rp_trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let factor = &rem[dr] / lb;
        quot[dr - db] = factor.clone();
        for i in 0..=db {
            let t = &b[i] * &factor;
            rem[dr - db + i] -= t;
        }
        debug_assert!(rem[dr].is_zero());
        rem = rp_trim(rem);
    }
    (rp_trim(quot), rem)
}

/// Scales to make the leading coefficient have absolute value 1, keeping
/// its sign; controls coefficient growth along the Sturm chain.
fn rp_keep_sign_monic(v: Vec<BigRational>) -> Vec<BigRational> {
    match v.last() {
        None => v,
        Some(lc) => {
            let scale = lc.abs().recip();
            v.into_iter().map(|c| c * &scale).collect()
        }
    }
}

fn rp_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = rp_keep_sign_monic(rp_trim(a.to_vec()));
    let mut y = rp_keep_sign_monic(rp_trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = rp_div_rem(&x, &y);
        x = y;
        y = rp_keep_sign_monic(r);
    }
    x
}

fn sign_of(v: &BigRational) -> i32 {
    match v.cmp(&BigRational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn variations(signs: &[i32]) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of *distinct* real roots of a nonzero rational polynomial,
/// by a Sturm chain on its squarefree part evaluated at both infinities.
pub fn count_real_roots_rat(coeffs: &[BigRational]) -> Result<usize> {
    let f = rp_trim(coeffs.to_vec());
    if f.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if f.len() == 1 {
        return Ok(0);
    }
    // multiple roots would break the sign-variation count; divide them out
    let fp = rp_derivative(&f);
    let g = rp_gcd(&f, &fp);
    let f = if g.len() > 1 { rp_div_rem(&f, &g).0 } else { f };
    if f.len() == 1 {
        return Ok(0);
    }
    let mut chain = vec![rp_keep_sign_monic(f)];
    chain.push(rp_keep_sign_monic(rp_derivative(&chain[0])));
    while chain.last().is_some_and(|v| !v.is_empty()) {
        let k = chain.len();
        let (_, r) = rp_div_rem(&chain[k - 2], &chain[k - 1]);
        let neg: Vec<BigRational> = r.into_iter().map(|c| -c).collect();
        chain.push(rp_keep_sign_monic(neg));
    }
    chain.pop();
    let at_pos: Vec<i32> = chain.iter().map(|v| sign_of(v.last().unwrap())).collect();
    let at_neg: Vec<i32> = chain
        .iter()
        .map(|v| {
            let s = sign_of(v.last().unwrap());
            if (v.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    Ok(variations(&at_neg) - variations(&at_pos))
}

/// Number of distinct real roots of a nonzero integer polynomial.
pub fn count_real_roots(f: &IntPoly) -> Result<usize> {
    count_real_roots_rat(&f.to_rationals())
}

/// Finds an integer `M` such that `q + M + s` has no real roots for every
/// offset `s` in `shifts`. Requires `q` of even degree at least 2, so one
/// sign-definite direction exists; the search doubles `|M|` in that
/// direction and then binary-refines to the smallest magnitude that works.
pub fn choose_shift_no_real_roots(q: &IntPoly, shifts: &[BigInt]) -> Result<BigInt> {
    let deg = q.degree().ok_or(Error::ZeroPolynomial)?;
    if deg < 2 || deg % 2 != 0 {
        return Err(Error::NotEvenDegree);
    }
    let dir = if q.leading().is_positive() { 1i64 } else { -1i64 };
    let valid = |mag: &BigInt| -> Result<bool> {
        let m = BigInt::from(dir) * mag;
        for s in shifts {
            if count_real_roots(&q.add_scalar(&(&m + s)))? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut lo = BigInt::zero(); // largest magnitude known (or assumed) invalid
    let mut hi = BigInt::one();
    loop {
        if valid(&hi)? {
            break;
        }
        lo = hi.clone();
        hi *= 2;
        if hi.bits() > 256 {
            return Err(Error::Internal("shift doubling search diverged".into()));
        }
    }
    // validity is monotone in the magnitude, so the bracket (lo, hi] refines
    while &hi - &lo > BigInt::one() {
        let mid = (&lo + &hi) / 2;
        if valid(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(BigInt::from(dir) * hi)
}

/// Checks the prime-power orbit property: given `f(a) = 0 (mod p^2)` and
/// `f'(a) = 0 (mod p)`, verifies `f(a + k*p) = 0 (mod p^2)` for every
/// `k` in `[0, p)`. Precondition failures are reported as errors, distinct
/// from an honest `false`.
pub fn hensel_orbit_check(f: &IntPoly, a: i64, p: u64) -> Result<bool> {
    if !crate::nt::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p2 = p.checked_mul(p).ok_or_else(|| Error::Overflow(format!("{p}^2")))?;
    let reduced = f.reduce_mod(p2);
    let a_mod = (a as i128).rem_euclid(p2 as i128) as u64;
    if horner_mod(&reduced, a_mod, p2) != 0 {
        return Err(Error::HenselPrecondition(format!("f({a}) != 0 mod {p}^2")));
    }
    let dred = f.derivative().reduce_mod(p);
    if horner_mod(&dred, a_mod % p, p) != 0 {
        return Err(Error::HenselPrecondition(format!("f'({a}) != 0 mod {p}")));
    }
    for k in 0..p {
        let x = ((a_mod as u128 + k as u128 * p as u128) % p2 as u128) as u64;
        if horner_mod(&reduced, x, p2) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

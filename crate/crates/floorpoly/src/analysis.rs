//! Classifiers and constructive witness generators.
//!
//! Every negative verdict ships a certificate that an independent verifier
//! can re-establish by exhaustive scan: a non-uniformity witness names a
//! residue class that provably exceeds its fair share over one full period,
//! an incompleteness witness names a class that is never attained, and a
//! run witness names consecutive nth-power non-residues. Generators and the
//! verifier deliberately take different routes — generators exploit the
//! cleared-form structure, while [`verify_certificate`] recounts floors term
//! by term — so agreement between them is evidence, not circularity.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dist::{empirical_histogram, exact_histogram};
use crate::error::{Error, Result};
use crate::exact::ExactReal;
use crate::nt::{is_nth_power_residue, is_prime, mod_inv, trial_factor, PrimeIterator};
use crate::parse::parse_poly;
use crate::poly::{choose_shift_no_real_roots, clear_denominators, hensel_orbit_check,
                  horner_mod, roots_mod_p, IntPoly, Poly};

/// Search and scan limits. Finders never guess: when a budget runs out they
/// report exhaustion instead of an unproven witness.
#[derive(Serialize, Deserialize, Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest prime any search will accept.
    pub prime: u64,
    /// Largest anchor tried when hunting prime divisors of `Q'(a)`.
    pub anchor: u64,
    /// Largest full period any exact scan will walk.
    pub period: u64,
    /// Default sample count for empirical scans.
    pub samples: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { prime: 100_000, anchor: 10_000, period: 10_000_000, samples: 100_000 }
    }
}

/// Witness that `floor(P(k)) mod modulus` is not uniformly distributed:
/// over the period `k = 1..=period`, the named class occurs `count` times
/// with `count * modulus > period` strictly.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct NonUdWitness {
    pub p: u64,
    pub modulus: u64,
    /// Anchor whose derivative value surrendered the prime, when one was
    /// used (the nonlinear route); linear witnesses carry no anchor.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<i64>,
    pub class: u64,
    pub count: u64,
    pub period: u64,
    pub poly: String,
}

/// Witness that `floor(P(x)) mod modulus` misses the named class: scanning
/// one full period `k = 1..=period` (which covers every value attained over
/// all of the integers) never hits it.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct IncompletenessWitness {
    pub p: u64,
    pub modulus: u64,
    pub class: u64,
    pub period: u64,
    pub poly: String,
}

/// Witness of `l` consecutive nth-power non-residues modulo `p`, starting
/// at `t`: none of `t..t+l-1` is congruent to an nth power.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RunWitness {
    pub p: u64,
    pub t: u64,
    pub l: u64,
    pub n: u64,
    pub period: u64,
    pub poly: String,
}

/// A self-contained, independently checkable claim.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "type")]
pub enum Certificate {
    #[serde(rename = "nonud")]
    NonUd(NonUdWitness),
    #[serde(rename = "incomplete")]
    Incomplete(IncompletenessWitness),
    #[serde(rename = "run")]
    Run(RunWitness),
}

#[derive(Serialize, Deserialize, Copy, Clone, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    #[serde(rename = "ud")]
    UdInZ,
    #[serde(rename = "not_ud")]
    NotUd,
    #[serde(rename = "complete")]
    CompleteInZ,
    #[serde(rename = "incomplete")]
    Incomplete,
    #[serde(rename = "unknown")]
    Unknown,
}

/// Outcome of a classification. Negative verdicts always carry a verified
/// certificate; unknown verdicts always carry the budget that ran out.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget: Option<Budget>,
}

impl Verdict {
    fn positive(kind: VerdictKind, reason: impl Into<String>) -> Self {
        Verdict { kind, reason: reason.into(), certificate: None, budget: None }
    }

    fn negative(kind: VerdictKind, reason: impl Into<String>, cert: Certificate) -> Self {
        Verdict { kind, reason: reason.into(), certificate: Some(cert), budget: None }
    }

    fn unknown(reason: impl Into<String>, budget: &Budget) -> Self {
        Verdict {
            kind: VerdictKind::Unknown,
            reason: reason.into(),
            certificate: None,
            budget: Some(*budget),
        }
    }
}

fn to_u64(x: &BigInt, what: &str) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::Overflow(what.into()))
}

fn big_mod(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits u64")
}

/// Least common multiple of the denominators of the non-constant
/// coefficients — the scan period scale `N`. Computed directly from the
/// coefficients so the verifier does not depend on the cleared-form code.
fn lcm_denominators(p: &Poly) -> Result<u64> {
    let mut n = BigInt::one();
    for (i, c) in p.coeffs().iter().enumerate().skip(1) {
        let q = c.as_rational().ok_or(Error::IrrationalCoefficient(i))?;
        n = n.lcm(q.denom());
    }
    to_u64(&n, "denominator lcm")
}

/// Smallest prime factor of `|x|`, `|x| >= 2`, found by trial division up
/// to `bound`.
fn smallest_prime_factor(x: &BigInt, bound: u64) -> Result<u64> {
    let tf = trial_factor(x, bound)?;
    match tf.factors.first() {
        Some(&(p, _)) => Ok(p),
        None => Err(Error::BudgetExhausted(format!(
            "no prime factor of {x} within trial bound {bound}"
        ))),
    }
}

/// Runs the generated certificate through the independent verifier and
/// refuses to return it unless the claim re-establishes from scratch.
fn certify(cert: Certificate, p: &Poly) -> Result<Certificate> {
    match verify_certificate(&cert, Some(p)) {
        Ok(true) => Ok(cert),
        Ok(false) => Err(Error::Internal(format!(
            "generated certificate failed independent verification: {cert:?}"
        ))),
        Err(e) => Err(Error::Internal(format!(
            "generated certificate rejected as malformed: {e}, {cert:?}"
        ))),
    }
}

fn linear_poly(alpha: &ExactReal, beta: &ExactReal) -> Result<Poly> {
    Poly::new(vec![beta.clone(), alpha.clone()])
}

/// Decides uniform distribution of `floor(alpha*k + beta)`: uniformly
/// distributed in the integers exactly when `alpha` is irrational or
/// `alpha = 1/l` for a nonzero integer `l`. Failures are certified modulo
/// `|a|` where `alpha = a/b` in lowest terms (never uniform there because
/// replacing `k` by `k + b` shifts the floor by `a`, which fixes every
/// class modulo `|a|`).
pub fn classify_linear_ud(alpha: &ExactReal, beta: &ExactReal, budget: &Budget) -> Result<Verdict> {
    if !alpha.is_rational() {
        return Ok(Verdict::positive(
            VerdictKind::UdInZ,
            "irrational slope: the fractional parts equidistribute, so every modulus is fair",
        ));
    }
    let a = alpha.as_rational().expect("rational checked").numer().clone();
    let b = alpha.as_rational().expect("rational checked").denom().clone();
    if a.abs().is_one() {
        return Ok(Verdict::positive(
            VerdictKind::UdInZ,
            format!("slope is the reciprocal of the nonzero integer {}", if a.is_negative() { -b } else { b }),
        ));
    }
    let p_obj = linear_poly(alpha, beta)?;
    if a.is_zero() {
        // degenerate: the floor sequence is constant
        let hist = exact_histogram(&p_obj, 2, budget.period)?;
        let (class, count) = hist.heaviest_class();
        let cert = Certificate::NonUd(NonUdWitness {
            p: 2,
            modulus: 2,
            a: None,
            class,
            count,
            period: hist.scanned,
            poly: p_obj.to_string(),
        });
        return Ok(Verdict::negative(
            VerdictKind::NotUd,
            "zero slope: the floor sequence is constant, so one class mod 2 takes everything",
            certify(cert, &p_obj)?,
        ));
    }
    let modulus = to_u64(&a.abs(), "slope numerator")?;
    let p = smallest_prime_factor(&a, budget.prime)?;
    let hist = exact_histogram(&p_obj, modulus, budget.period)?;
    let (class, count) = hist.heaviest_class();
    if (count as u128) * (modulus as u128) <= hist.scanned as u128 {
        return Err(Error::Internal("slope-shift argument promises a heavy class".into()));
    }
    let cert = Certificate::NonUd(NonUdWitness {
        p,
        modulus,
        a: None,
        class,
        count,
        period: hist.scanned,
        poly: p_obj.to_string(),
    });
    Ok(Verdict::negative(
        VerdictKind::NotUd,
        format!("rational slope with numerator {a}: not uniformly distributed mod {modulus}"),
        certify(cert, &p_obj)?,
    ))
}

/// Decides completeness of `floor(alpha*k + beta)`: complete in the
/// integers exactly when `alpha` is irrational or `0 < |alpha| <= 1`.
/// Failures are certified by the smallest modulus with a missing class
/// (guaranteed to exist at `|a|`, where at most `b` classes are attained).
pub fn classify_linear_complete(
    alpha: &ExactReal,
    beta: &ExactReal,
    budget: &Budget,
) -> Result<Verdict> {
    if !alpha.is_rational() {
        return Ok(Verdict::positive(
            VerdictKind::CompleteInZ,
            "irrational slope: uniformly distributed, hence every class is attained",
        ));
    }
    let rat = alpha.as_rational().expect("rational checked");
    let (a, b) = (rat.numer().clone(), rat.denom().clone());
    let p_obj = linear_poly(alpha, beta)?;
    if a.is_zero() {
        let missing = ((p_obj.eval(0).floor() + 1u32).mod_floor(&BigInt::from(2)))
            .to_u64()
            .expect("class mod 2");
        let cert = Certificate::Incomplete(IncompletenessWitness {
            p: 2,
            modulus: 2,
            class: missing,
            period: 2,
            poly: p_obj.to_string(),
        });
        return Ok(Verdict::negative(
            VerdictKind::Incomplete,
            "zero slope: a constant sequence misses a class mod 2",
            certify(cert, &p_obj)?,
        ));
    }
    if a.abs() <= b {
        return Ok(Verdict::positive(
            VerdictKind::CompleteInZ,
            "slope magnitude in (0, 1]: consecutive floors step by at most 1, covering every integer",
        ));
    }
    // incomplete; certify with the smallest failing modulus <= |a|
    let bound = to_u64(&a.abs(), "slope numerator")?;
    for j in 2..=bound {
        let hist = exact_histogram(&p_obj, j, budget.period)?;
        let missing = hist.missing_classes();
        if let Some(&class) = missing.first() {
            let cert = Certificate::Incomplete(IncompletenessWitness {
                p: smallest_prime_factor(&BigInt::from(j), budget.prime)?,
                modulus: j,
                class,
                period: hist.scanned,
                poly: p_obj.to_string(),
            });
            return Ok(Verdict::negative(
                VerdictKind::Incomplete,
                format!(
                    "rational slope with |numerator| = {bound} > denominator {b}: \
                     at most {b} classes are attained mod {j}"
                ),
                certify(cert, &p_obj)?,
            ));
        }
    }
    Err(Error::Internal(
        "a slope of magnitude > 1 must miss a class modulo its numerator".into(),
    ))
}

/// Decides uniform distribution of `floor(P(k))` for any polynomial of
/// degree at least 1: uniformly distributed exactly when some non-constant
/// coefficient is irrational or `P = x/l + c`.
pub fn classify_ud(p: &Poly, budget: &Budget) -> Result<Verdict> {
    let deg = p.degree().unwrap_or(0);
    if deg < 1 {
        return Err(Error::DegreeTooSmall(deg));
    }
    if let Some(i) = p.first_irrational_nonconstant() {
        return Ok(Verdict::positive(
            VerdictKind::UdInZ,
            format!("irrational coefficient of x^{i}: the sequence equidistributes modulo every m"),
        ));
    }
    if deg == 1 {
        return classify_linear_ud(&p.coeff(1), &p.coeff(0), budget);
    }
    match find_nonud_modulus(p, budget) {
        Ok(w) => {
            let modulus = w.modulus;
            Ok(Verdict::negative(
                VerdictKind::NotUd,
                format!(
                    "degree {deg} with rational non-constant coefficients: \
                     a heavy class exists mod {modulus}"
                ),
                Certificate::NonUd(w),
            ))
        }
        Err(Error::BudgetExhausted(msg)) => Ok(Verdict::unknown(msg, budget)),
        Err(e) => Err(e),
    }
}

/// Decides completeness of `floor(P(k))` where this library has a decision
/// procedure: linear polynomials, any polynomial with an irrational
/// non-constant coefficient, even degrees, and monomials `a*x^n + c`.
/// Odd-degree non-monomials with rational coefficients are honestly
/// `Unknown`.
pub fn classify_complete(p: &Poly, budget: &Budget) -> Result<Verdict> {
    let deg = p.degree().unwrap_or(0);
    if deg < 1 {
        return Err(Error::DegreeTooSmall(deg));
    }
    if p.has_irrational_nonconstant() {
        return Ok(Verdict::positive(
            VerdictKind::CompleteInZ,
            "irrational non-constant coefficient: uniformly distributed modulo every m, \
             hence every class is attained",
        ));
    }
    if deg == 1 {
        return classify_linear_complete(&p.coeff(1), &p.coeff(0), budget);
    }
    let finder = if deg.is_multiple_of(2) {
        find_incomplete_prime_even(p, budget)
    } else if let Some((a, n, c)) = p.monomial_parts() {
        find_incomplete_prime_monomial(&a, n, &c, budget)
    } else {
        return Ok(Verdict::unknown(
            format!(
                "odd degree {deg} non-monomial with rational coefficients: \
                 no completeness decision procedure applies"
            ),
            budget,
        ));
    };
    match finder {
        Ok(w) => {
            let (pp, class) = (w.p, w.class);
            Ok(Verdict::negative(
                VerdictKind::Incomplete,
                format!("class {class} mod {pp} is never attained"),
                Certificate::Incomplete(w),
            ))
        }
        Err(Error::BudgetExhausted(msg)) => Ok(Verdict::unknown(msg, budget)),
        Err(e) => Err(e),
    }
}

/// Constructs a non-uniformity witness for a polynomial of degree at least
/// 2 with rational non-constant coefficients.
///
/// Route: clear denominators to `(N, Q)`; walk anchors `a = 1, 2, ...`
/// until `Q'(a)` owns a proven prime factor `p > 6N` within budget. Then
/// `f = Q - Q(a)` has `f(a) = 0 (mod p^2)` and `f'(a) = 0 (mod p)`, so the
/// whole progression `a + kp` stays a root of `f` mod `p^2` — at least `p`
/// of the `N*p^2` period positions land in at most `3N` floor classes mod
/// `p^2`, and `p > 6N` forces one class strictly over its fair share. The
/// heaviest class of an exact period scan is returned and the certificate
/// is re-verified independently before this function will surrender it.
pub fn find_nonud_modulus(p: &Poly, budget: &Budget) -> Result<NonUdWitness> {
    let deg = p.degree().unwrap_or(0);
    if deg < 2 {
        return Err(Error::DegreeTooSmall(deg));
    }
    let cf = clear_denominators(p)?;
    let qprime = cf.q.derivative();
    let six_n = 6 * cf.n;
    for a in 1..=budget.anchor {
        let v = qprime.eval_i64(a as i64);
        if v.is_zero() {
            continue;
        }
        let tf = trial_factor(&v, budget.prime)?;
        let candidate = tf.factors.iter().map(|&(q, _)| q).find(|&q| {
            q > six_n && cf.n.checked_mul(q * q).is_some_and(|t| t <= budget.period)
        });
        let Some(prime) = candidate else { continue };
        // the orbit property is the heart of the argument; check it honestly
        let f = cf.q.add_scalar(&(-cf.q.eval_i64(a as i64)));
        if !hensel_orbit_check(&f, a as i64, prime)? {
            return Err(Error::Internal(
                "orbit of a root with vanishing derivative must persist mod p^2".into(),
            ));
        }
        let modulus = prime * prime;
        let hist = exact_histogram(p, modulus, budget.period)?;
        let (class, count) = hist.heaviest_class();
        if (count as u128) * (modulus as u128) <= hist.scanned as u128 {
            return Err(Error::Internal("orbit argument promises a heavy class".into()));
        }
        let w = NonUdWitness {
            p: prime,
            modulus,
            a: Some(a as i64),
            class,
            count,
            period: hist.scanned,
            poly: p.to_string(),
        };
        certify(Certificate::NonUd(w.clone()), p)?;
        return Ok(w);
    }
    Err(Error::BudgetExhausted(format!(
        "no anchor a <= {} gives Q'(a) a prime factor in ({}, {}] fitting period budget {}",
        budget.anchor, six_n, budget.prime, budget.period
    )))
}

/// Constructs an incompleteness witness for an even-degree polynomial with
/// rational non-constant coefficients.
///
/// Route: clear denominators to `(N, Q, A)`; pick a shift `M` making every
/// `Q + M + A_j` root-free over the reals; their product `R` then has only
/// finitely many primes with roots, so the first prime `p > N` (not
/// dividing the leading coefficient) where `R` stays root-free makes
/// `floor(P(x)) = K (mod p)` unsolvable for `N*K = -M (mod p)`: a solution
/// would force `Q(x) + M + A_j = 0 (mod p)` for some `j`.
pub fn find_incomplete_prime_even(p: &Poly, budget: &Budget) -> Result<IncompletenessWitness> {
    let deg = p.degree().unwrap_or(0);
    if deg < 2 || !deg.is_multiple_of(2) {
        return Err(Error::NotEvenDegree);
    }
    let cf = clear_denominators(p)?;
    let mut offsets: Vec<BigInt> = cf.a.clone();
    offsets.sort();
    offsets.dedup();
    let m = choose_shift_no_real_roots(&cf.q, &offsets)?;
    let mut r = IntPoly::from_i64(&[1]);
    for off in &offsets {
        r = r.mul(&cf.q.add_scalar(&(&m + off)));
    }
    let lc = cf.q.leading();
    for prime in PrimeIterator::from(cf.n + 1) {
        if prime > budget.prime {
            return Err(Error::BudgetExhausted(format!(
                "no prime in ({}, {}] leaves the shifted product root-free",
                cf.n, budget.prime
            )));
        }
        if cf.n.checked_mul(prime).is_none_or(|t| t > budget.period) {
            return Err(Error::BudgetExhausted(format!(
                "period {}*{} exceeds scan budget {}",
                cf.n, prime, budget.period
            )));
        }
        if big_mod(&lc, prime) == 0 {
            continue;
        }
        if !roots_mod_p(&r, prime)?.is_empty() {
            continue;
        }
        let n_inv = mod_inv(cf.n % prime, prime).expect("prime exceeds n");
        let class = (big_mod(&-&m, prime) as u128 * n_inv as u128 % prime as u128) as u64;
        let hist = exact_histogram(p, prime, budget.period)?;
        if hist.counts[class as usize] != 0 {
            return Err(Error::Internal(
                "a root-free shifted product must exclude the matched class".into(),
            ));
        }
        let w = IncompletenessWitness {
            p: prime,
            modulus: prime,
            class,
            period: hist.scanned,
            poly: p.to_string(),
        };
        certify(Certificate::Incomplete(w.clone()), p)?;
        return Ok(w);
    }
    unreachable!("prime iterator is infinite")
}

/// Constructs an incompleteness witness for the monomial `a*x^n + c` with
/// rational `a = M/N` in lowest terms and `n >= 2`.
///
/// Even `n` routes through [`find_incomplete_prime_even`]. For odd `n` with
/// `M < 0`, the substitution `x -> -x` (which permutes the attained floor
/// values over the integers) reduces to `M > 0`. The core argument: with
/// offsets `A_j` and a run `t..t+l-1` of consecutive nth-power non-residues
/// mod `p > |MN|`, where `l = 1 + M^(n-1)*(max A - min A)`, the class
/// `K*(M^(n-1))^-1*N^-1 mod p` (for `K = t + M^(n-1)*max A`) is never
/// attained: hitting it would place the nth power `(Mx)^n` inside the
/// non-residue window.
pub fn find_incomplete_prime_monomial(
    a: &BigRational,
    n: u32,
    c: &ExactReal,
    budget: &Budget,
) -> Result<IncompletenessWitness> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n as usize));
    }
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let monomial = |coef: &BigRational| -> Result<Poly> {
        let mut coeffs = vec![ExactReal::zero(); n as usize + 1];
        coeffs[0] = c.clone();
        coeffs[n as usize] = ExactReal::from_rational(coef.clone());
        Poly::new(coeffs)
    };
    let p_obj = monomial(a)?;
    if n.is_multiple_of(2) {
        return find_incomplete_prime_even(&p_obj, budget);
    }
    // odd n: flip the sign of M via x -> -x if needed; the attained floor
    // values over the integers are identical, so the certificate carries
    // and is verified against the original polynomial
    let search_obj = if a.is_negative() { monomial(&-a)? } else { p_obj.clone() };
    let cf = clear_denominators(&search_obj)?;
    let m_big = a.numer().abs();
    let mn1 = m_big.pow(n - 1);
    let amax = cf.a.iter().max().expect("n >= 1 offsets").clone();
    let amin = cf.a.iter().min().expect("n >= 1 offsets").clone();
    let l_big: BigInt = BigInt::one() + &mn1 * (&amax - &amin);
    let l = to_u64(&l_big, "non-residue run length")?;
    let p_floor = to_u64(&(&m_big * BigInt::from(cf.n)), "|M*N|")?;
    let run = find_residue_run(n as u64, l, p_floor + 1, budget)?;
    let prime = run.p;
    if cf.n.checked_mul(prime).is_none_or(|t| t > budget.period) {
        return Err(Error::BudgetExhausted(format!(
            "period {}*{} exceeds scan budget {}",
            cf.n, prime, budget.period
        )));
    }
    let k_big = BigInt::from(run.t) + &mn1 * &amax;
    let mn1_inv = mod_inv(big_mod(&mn1, prime), prime).expect("p exceeds M");
    let n_inv = mod_inv(cf.n % prime, prime).expect("p exceeds N");
    let l_class = big_mod(&k_big, prime) as u128 * mn1_inv as u128 % prime as u128;
    let class = (l_class * n_inv as u128 % prime as u128) as u64;
    let hist = exact_histogram(&p_obj, prime, budget.period)?;
    if hist.counts[class as usize] != 0 {
        return Err(Error::Internal(
            "the non-residue window must exclude the matched class".into(),
        ));
    }
    let w = IncompletenessWitness {
        p: prime,
        modulus: prime,
        class,
        period: hist.scanned,
        poly: p_obj.to_string(),
    };
    certify(Certificate::Incomplete(w.clone()), &p_obj)?;
    Ok(w)
}

/// Finds the smallest prime `p >= p_min` (within budget) together with the
/// smallest start `t in [2, p-l]` such that `t, t+1, ..., t+l-1` are all
/// nth-power non-residues modulo `p`.
pub fn find_residue_run(n: u64, l: u64, p_min: u64, budget: &Budget) -> Result<RunWitness> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n as usize));
    }
    if l == 0 {
        return Err(Error::ZeroInput);
    }
    let start = p_min.max(l + 2).max(3);
    for p in PrimeIterator::from(start) {
        if p > budget.prime {
            return Err(Error::BudgetExhausted(format!(
                "no prime in [{}, {}] has {} consecutive {}th-power non-residues",
                start, budget.prime, l, n
            )));
        }
        // when gcd(n, p-1) = 1 the power map is a bijection: no non-residues
        if n.gcd(&(p - 1)) == 1 {
            continue;
        }
        let mut residue = vec![false; p as usize];
        for x in 1..p {
            let xn = crate::nt::pow_mod(x as i64, n, p)?;
            residue[xn as usize] = true;
        }
        let mut run_len = 0u64;
        for t in 2..p {
            if residue[t as usize] {
                run_len = 0;
                continue;
            }
            run_len += 1;
            if run_len == l {
                return Ok(RunWitness {
                    p,
                    t: t - l + 1,
                    l,
                    n,
                    period: p,
                    poly: String::new(),
                });
            }
        }
    }
    unreachable!("prime iterator is infinite")
}

/// Outcome of a bounded search for a prime `p` and window start `k` such
/// that `P(x) mod p` avoids all of `k, k+1, ..., k+l-1` (mod `p`).
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct WindowWitness {
    pub p: u64,
    pub k: u64,
    pub l: u64,
}

/// Searches primes in increasing order for a window of `l` consecutive
/// classes (mod `p`, wrapping allowed) that the values of the integer
/// polynomial `f` never touch. Returns `None` when the prime budget runs
/// out — no claim either way.
pub fn unattained_window_search(
    f: &IntPoly,
    l: u64,
    budget: &Budget,
) -> Result<Option<WindowWitness>> {
    if f.degree().is_none() {
        return Err(Error::ZeroPolynomial);
    }
    if l == 0 {
        return Err(Error::ZeroInput);
    }
    for p in PrimeIterator::from(2) {
        if p > budget.prime {
            return Ok(None);
        }
        if l >= p {
            continue;
        }
        let reduced = f.reduce_mod(p);
        let mut attained = vec![false; p as usize];
        for x in 0..p {
            attained[horner_mod(&reduced, x, p) as usize] = true;
        }
        'window: for k in 0..p {
            for i in 0..l {
                if attained[((k + i) % p) as usize] {
                    continue 'window;
                }
            }
            return Ok(Some(WindowWitness { p, k, l }));
        }
    }
    unreachable!("prime iterator is infinite")
}

/// Resolves the polynomial a certificate refers to: from the caller, from
/// the certificate's own `poly` field, or both (which must agree).
fn context_poly(cert_poly: &str, ctx: Option<&Poly>) -> Result<Poly> {
    match (cert_poly.is_empty(), ctx) {
        (true, None) => Err(Error::MalformedCertificate(
            "certificate names no polynomial and none was provided".into(),
        )),
        (true, Some(p)) => Ok(p.clone()),
        (false, None) => parse_poly(cert_poly),
        (false, Some(p)) => {
            let parsed = parse_poly(cert_poly)?;
            if parsed == *p {
                Ok(parsed)
            } else {
                Err(Error::MalformedCertificate(format!(
                    "certificate is for {parsed}, but {p} was provided"
                )))
            }
        }
    }
}

/// Re-establishes a certificate's claim from scratch.
///
/// The verifier shares no code with the generators' search routes: floors
/// are recounted term by term with exact field arithmetic, the period
/// scale is recomputed directly from the coefficient denominators, and
/// residue tests use the Euler criterion. `Ok(false)` means the claim is
/// false; `Err` means the certificate is structurally unusable (no or
/// mismatched polynomial context, out-of-range fields).
pub fn verify_certificate(cert: &Certificate, poly: Option<&Poly>) -> Result<bool> {
    match cert {
        Certificate::NonUd(w) => {
            let p_obj = context_poly(&w.poly, poly)?;
            check_bounds(w.modulus, w.class, w.period)?;
            let n = lcm_denominators(&p_obj)?;
            if !is_prime(w.p)
                || w.modulus % w.p != 0
                || n.checked_mul(w.modulus) != Some(w.period)
            {
                return Ok(false);
            }
            let hist = empirical_histogram(&p_obj, w.modulus, w.period)?;
            Ok(hist.counts[w.class as usize] == w.count
                && (w.count as u128) * (w.modulus as u128) > w.period as u128)
        }
        Certificate::Incomplete(w) => {
            let p_obj = context_poly(&w.poly, poly)?;
            check_bounds(w.modulus, w.class, w.period)?;
            let n = lcm_denominators(&p_obj)?;
            if !is_prime(w.p)
                || w.modulus % w.p != 0
                || n.checked_mul(w.modulus) != Some(w.period)
            {
                return Ok(false);
            }
            let hist = empirical_histogram(&p_obj, w.modulus, w.period)?;
            Ok(hist.counts[w.class as usize] == 0)
        }
        Certificate::Run(w) => {
            if !is_prime(w.p) || w.n < 2 || w.l == 0 || w.period != w.p {
                return Ok(false);
            }
            if w.t < 2 || w.t + w.l - 1 > w.p - 1 {
                return Ok(false);
            }
            for x in w.t..w.t + w.l {
                if is_nth_power_residue(x as i64, w.n, w.p)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn check_bounds(modulus: u64, class: u64, period: u64) -> Result<()> {
    if modulus < 2 {
        return Err(Error::MalformedCertificate(format!("modulus {modulus} < 2")));
    }
    if class >= modulus {
        return Err(Error::MalformedCertificate(format!(
            "class {class} outside [0, {modulus})"
        )));
    }
    if period == 0 {
        return Err(Error::MalformedCertificate("zero period".into()));
    }
    Ok(())
}

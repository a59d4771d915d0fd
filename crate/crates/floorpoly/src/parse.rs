//! Parser for polynomial expressions over a real quadratic field.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := coeff ('*'? x-part)? | x-part
//! x-part   := 'x' ('^' uint)?
//! coeff    := rational ('*'? root)? | root
//! root     := 'sqrt' '(' uint ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! The `*` between a coefficient and `x` is optional, so `2x^3`, `1/2 x`,
//! and `sqrt(2)x` are all accepted. Terms with the same power add up, which
//! makes the canonical printed form (`x + sqrt(5)*x` for the coefficient
//! `1 + sqrt(5)`) re-parse to an identical polynomial. All radicands must
//! belong to one quadratic field; violations and syntax errors carry the
//! byte position of the offending token.

use num::{BigInt, BigRational, One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{ExactReal, MAX_RADICAND};
use crate::poly::Poly;

/// Largest accepted exponent; keeps coefficient vectors a sane size.
const MAX_EXPONENT: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &s[start..i];
                toks.push((Tok::Num(digits.parse().expect("digits form an integer")), start));
            }
            b'x' | b'X' => {
                toks.push((Tok::X, i));
                i += 1;
            }
            b's' => {
                if s[i..].starts_with("sqrt") {
                    toks.push((Tok::Sqrt, i));
                    i += 4;
                } else {
                    return Err(err(i, "expected 'sqrt'"));
                }
            }
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            _ => return Err(err(i, format!("unexpected character '{}'", c as char))),
        }
    }
    Ok(toks)
}

/// One parsed term: a single rational or `r*sqrt(d)` coefficient attached
/// to a power of `x`, plus the source position for error reporting.
struct Term {
    power: usize,
    coeff: ExactReal,
    pos: usize,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|&(_, p)| p).unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        self.idx += 1;
        t
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if self.peek() == Some(&tok) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect_uint(&mut self, what: &str) -> Result<BigInt> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(n),
            _ => Err(err(pos, format!("expected {what}"))),
        }
    }

    /// `'sqrt' '(' uint ')'`; the `sqrt` token is already consumed.
    fn finish_root(&mut self) -> Result<(BigInt, usize)> {
        let pos = self.pos();
        if !self.eat(Tok::LParen) {
            return Err(err(self.pos(), "expected '(' after 'sqrt'"));
        }
        let d = self.expect_uint("radicand")?;
        if !self.eat(Tok::RParen) {
            return Err(err(self.pos(), "expected ')' after radicand"));
        }
        Ok((d, pos))
    }

    /// `('^' uint)?` following an `x`; returns the power.
    fn parse_power(&mut self) -> Result<usize> {
        if !self.eat(Tok::Caret) {
            return Ok(1);
        }
        let pos = self.pos();
        let e = self.expect_uint("exponent")?;
        match e.to_usize() {
            Some(e) if e <= MAX_EXPONENT => Ok(e),
            _ => Err(err(pos, format!("exponent exceeds {MAX_EXPONENT}"))),
        }
    }

    /// `rational := uint ('/' uint)?`, the leading integer already consumed.
    fn finish_rational(&mut self, numer: BigInt) -> Result<BigRational> {
        if !self.eat(Tok::Slash) {
            return Ok(BigRational::from(numer));
        }
        let pos = self.pos();
        let denom = self.expect_uint("denominator")?;
        if denom == BigInt::from(0) {
            return Err(err(pos, "zero denominator"));
        }
        Ok(BigRational::new(numer, denom))
    }

    fn parse_term(&mut self, negative: bool) -> Result<Term> {
        let pos = self.pos();
        let (mut magnitude, mut radicand): (BigRational, Option<(BigInt, usize)>) =
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let q = self.finish_rational(n)?;
                    // optional '*', then either a root or an x-part
                    let starred = self.eat(Tok::Star);
                    if self.peek() == Some(&Tok::Sqrt) {
                        self.idx += 1;
                        (q, Some(self.finish_root()?))
                    } else {
                        if starred && !matches!(self.peek(), Some(Tok::X)) {
                            return Err(err(self.pos(), "expected 'x' or 'sqrt' after '*'"));
                        }
                        (q, None)
                    }
                }
                Some(Tok::Sqrt) => (BigRational::one(), Some(self.finish_root()?)),
                Some(Tok::X) => {
                    let power = self.parse_power()?;
                    let coeff =
                        if negative { ExactReal::from_int(-1) } else { ExactReal::from_int(1) };
                    return Ok(Term { power, coeff, pos });
                }
                _ => return Err(err(pos, "expected a coefficient or 'x'")),
            };
        let power = if self.eat(Tok::Star) {
            if !matches!(self.peek(), Some(Tok::X)) {
                return Err(err(self.pos(), "expected 'x' after '*'"));
            }
            self.idx += 1;
            self.parse_power()?
        } else if self.eat(Tok::X) {
            self.parse_power()?
        } else {
            0
        };
        if negative {
            magnitude = -magnitude;
        }
        let coeff = match radicand.take() {
            None => ExactReal::from_rational(magnitude),
            Some((d, dpos)) => {
                if d > BigInt::from(MAX_RADICAND) {
                    return Err(Error::RadicandTooLarge(d.to_u64().unwrap_or(u64::MAX)));
                }
                let d = d.to_i64().expect("bounded by the radicand cap");
                ExactReal::new(BigRational::from(BigInt::from(0)), magnitude, d)
                    .map_err(|_| err(dpos, "invalid radicand"))?
            }
        };
        Ok(Term { power, coeff, pos })
    }

    fn parse_expr(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negative = if self.eat(Tok::Minus) {
            true
        } else {
            self.eat(Tok::Plus);
            false
        };
        loop {
            terms.push(self.parse_term(negative)?);
            match self.bump() {
                None => return Ok(terms),
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                Some(_) => {
                    return Err(err(
                        self.toks[self.idx - 1].1,
                        "expected '+', '-', or end of input",
                    ))
                }
            }
        }
    }
}

/// Parses a polynomial expression. See the module docs for the grammar.
pub fn parse_poly(s: &str) -> Result<Poly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(err(0, "empty polynomial expression"));
    }
    let mut parser = Parser { toks, idx: 0, len: s.len() };
    let terms = parser.parse_expr()?;
    let top = terms.iter().map(|t| t.power).max().unwrap_or(0);
    let mut coeffs = vec![ExactReal::zero(); top + 1];
    let mut field = 0u64;
    for t in terms {
        let d = t.coeff.radicand();
        if d != 0 {
            if field == 0 {
                field = d;
            } else if field != d {
                return Err(Error::ParseMixedField { pos: t.pos, d1: field, d2: d });
            }
        }
        coeffs[t.power] =
            coeffs[t.power].try_add(&t.coeff).expect("field consistency checked per term");
    }
    Ok(Poly::new(coeffs).expect("field consistency checked per term"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rational_poly(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_rationals(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn parses_basic_forms() {
        assert_eq!(parse_poly("1/2*x^2").unwrap(), rational_poly(&[(0, 1), (0, 1), (1, 2)]));
        assert_eq!(parse_poly("x").unwrap(), rational_poly(&[(0, 1), (1, 1)]));
        assert_eq!(parse_poly("-x^2 + 3*x - 1/2").unwrap(), rational_poly(&[(-1, 2), (3, 1), (-1, 1)]));
        assert_eq!(parse_poly("7").unwrap(), rational_poly(&[(7, 1)]));
        assert_eq!(parse_poly("0").unwrap(), Poly::new(vec![]).unwrap());
        assert_eq!(parse_poly("x + x").unwrap(), rational_poly(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn star_is_optional() {
        assert_eq!(parse_poly("2x^3").unwrap(), parse_poly("2*x^3").unwrap());
        assert_eq!(parse_poly("1/2 x").unwrap(), parse_poly("1/2*x").unwrap());
        assert_eq!(parse_poly("sqrt(2)x").unwrap(), parse_poly("sqrt(2)*x").unwrap());
        assert_eq!(parse_poly("3sqrt(5)x^2").unwrap(), parse_poly("3*sqrt(5)*x^2").unwrap());
    }

    #[test]
    fn parses_quadratic_field_coefficients() {
        let p = parse_poly("sqrt(2)*x + 1/2").unwrap();
        assert_eq!(p.coeff(1), ExactReal::new(rat(0, 1), rat(1, 1), 2).unwrap());
        assert_eq!(p.coeff(0), ExactReal::from_rational(rat(1, 2)));

        // same-power terms accumulate into one coefficient
        let q = parse_poly("x + sqrt(5)*x").unwrap();
        assert_eq!(q.coeff(1), ExactReal::new(rat(1, 1), rat(1, 1), 5).unwrap());

        // radicands are canonicalized, so sqrt(8) lands in the sqrt(2) field
        let r = parse_poly("sqrt(8)*x - sqrt(2)").unwrap();
        assert_eq!(r.coeff(1), ExactReal::new(rat(0, 1), rat(2, 1), 2).unwrap());

        let s = parse_poly("-3/4*sqrt(2)*x^2").unwrap();
        assert_eq!(s.coeff(2), ExactReal::new(rat(0, 1), rat(-3, 4), 2).unwrap());
    }

    #[test]
    fn rejects_mixed_fields_with_position() {
        match parse_poly("sqrt(2)*x + sqrt(3)") {
            Err(Error::ParseMixedField { pos, d1, d2 }) => {
                assert_eq!((d1, d2), (2, 3));
                assert_eq!(pos, 12);
            }
            other => panic!("expected mixed-field error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        for (input, bad_pos) in [
            ("", 0),
            ("x^", 2),
            ("1/0", 2),
            ("sqrt", 4),
            ("sqrt(4", 6),
            ("x + + 3", 4),
            ("3 & 4", 2),
            ("x 3", 2),
            ("3*", 2),
            ("x^999999999999999999999", 2),
        ] {
            match parse_poly(input) {
                Err(Error::Parse { pos, .. }) => {
                    assert_eq!(pos, bad_pos, "input {input:?}")
                }
                other => panic!("expected syntax error for {input:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn printed_canonical_forms_reparse_identically() {
        let samples = [
            "x^2 + 1/2",
            "-2/3*x",
            "-x^2 + x - 1/2",
            "0",
            "3/4*sqrt(2)*x + 1/2",
            "sqrt(2)*x^2 - sqrt(2)",
            "x + sqrt(5)*x",
            "-7",
            "x^6 - 1/9*x^3 + 2",
        ];
        for s in samples {
            let p = parse_poly(s).unwrap();
            assert_eq!(p.to_string(), s, "canonical form is stable");
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }

    prop_compose! {
        fn arb_poly()(
            d in prop::sample::select(vec![0i64, 2, 3, 5, 7, 10]),
            coeffs in prop::collection::vec((-99i64..=99, 1i64..=9, -9i64..=9, 1i64..=9), 0..=7),
        ) -> Poly {
            let cs = coeffs
                .into_iter()
                .map(|(qn, qd, rn, rd)| {
                    ExactReal::new(rat(qn, qd), rat(rn, rd), d).unwrap()
                })
                .collect();
            Poly::new(cs).unwrap()
        }
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            let printed = p.to_string();
            let reparsed = parse_poly(&printed).unwrap();
            prop_assert_eq!(reparsed, p);
        }

        /// Random grammar-valid strings parse, and the canonical reprint
        /// parses back to the same polynomial.
        #[test]
        fn liberal_inputs_normalize_stably(
            terms in prop::collection::vec(
                (
                    0usize..=4,                      // power
                    -50i64..=50,                     // numerator
                    1i64..=9,                        // denominator
                    prop::bool::ANY,                 // include sqrt(5) factor
                    prop::bool::ANY,                 // write the '*'
                ),
                1..=5,
            )
        ) {
            let mut src = String::new();
            for (i, (pow, num, den, root, star)) in terms.iter().enumerate() {
                let sep = if i == 0 { "" } else if num < &0 { " - " } else { " + " };
                src.push_str(sep);
                let mag = if i == 0 { *num } else { num.abs() };
                src.push_str(&format!("{mag}/{den}"));
                if *root {
                    src.push_str(if *star { "*sqrt(5)" } else { "sqrt(5)" });
                }
                match pow {
                    0 => {}
                    1 => src.push_str(if *star { "*x" } else { "x" }),
                    p => src.push_str(&format!("{}x^{p}", if *star { "*" } else { "" })),
                }
            }
            let parsed = parse_poly(&src).unwrap();
            let reparsed = parse_poly(&parsed.to_string()).unwrap();
            prop_assert_eq!(parsed, reparsed);
        }
    }
}

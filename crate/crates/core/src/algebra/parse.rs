//! Text format for polynomials and rationals.
//!
//! A polynomial is a sum of terms `c * s1^e1 * ... * sk^ek` where `c` is a
//! rational written `p/q` (or `p`) and each `si` is a declared species name.
//! The star between factors is required; `^1` may be omitted. Examples:
//! `"x^2 + x*y^2 + y - 4*x*y"`, `"1 - x + y^2 - x*y^2"`, `"3/2*x"`.
//!
//! Printing uses the canonical graded lexicographic term order, so parse and
//! print round-trip byte-identically.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Exponent, Polynomial, Rational};
use crate::error::{CrnError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            b'-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            b'*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            b'^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            b'/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits parse as BigInt");
                tokens.push((start, Token::Number(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((start, Token::Name(src[start..i].to_string())));
            }
            _ => {
                return Err(CrnError::Parse {
                    offset: i,
                    message: format!("unexpected character {:?}", b as char),
                })
            }
        }
    }
    Ok(tokens)
}

/// Parses a polynomial over the given species names.
pub fn parse_polynomial(src: &str, species: &[String]) -> Result<Polynomial> {
    let tokens = tokenize(src)?;
    let dim = species.len();
    let mut terms: Vec<(Exponent, Rational)> = Vec::new();
    let mut pos = 0;

    if tokens.is_empty() {
        return Err(CrnError::Parse {
            offset: 0,
            message: "empty polynomial".into(),
        });
    }

    while pos < tokens.len() {
        // sign
        let mut negative = false;
        loop {
            match tokens.get(pos) {
                Some((_, Token::Plus)) => pos += 1,
                Some((_, Token::Minus)) => {
                    negative = !negative;
                    pos += 1;
                }
                _ => break,
            }
        }
        // factors joined by '*'
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; dim];
        loop {
            match tokens.get(pos) {
                Some((off, Token::Number(n))) => {
                    pos += 1;
                    let mut r = Rational::from_integer(n.clone());
                    if let Some((_, Token::Slash)) = tokens.get(pos) {
                        pos += 1;
                        match tokens.get(pos) {
                            Some((_, Token::Number(d))) if !d.is_zero() => {
                                pos += 1;
                                r /= Rational::from_integer(d.clone());
                            }
                            Some((off2, _)) => {
                                return Err(CrnError::Parse {
                                    offset: *off2,
                                    message: "expected nonzero denominator after '/'".into(),
                                })
                            }
                            None => {
                                return Err(CrnError::Parse {
                                    offset: *off,
                                    message: "dangling '/' in coefficient".into(),
                                })
                            }
                        }
                    }
                    coeff *= r;
                }
                Some((off, Token::Name(name))) => {
                    pos += 1;
                    let idx = species.iter().position(|s| s == name).ok_or_else(|| {
                        CrnError::Parse {
                            offset: *off,
                            message: format!("unknown species name '{name}'"),
                        }
                    })?;
                    let mut power = 1u32;
                    if let Some((_, Token::Caret)) = tokens.get(pos) {
                        pos += 1;
                        match tokens.get(pos) {
                            Some((_, Token::Number(n))) => {
                                pos += 1;
                                power = u32::try_from(n.clone()).map_err(|_| CrnError::Parse {
                                    offset: *off,
                                    message: "exponent out of range".into(),
                                })?;
                            }
                            _ => {
                                return Err(CrnError::Parse {
                                    offset: *off,
                                    message: "expected integer exponent after '^'".into(),
                                })
                            }
                        }
                    }
                    exps[idx] += power;
                }
                Some((off, tok)) => {
                    return Err(CrnError::Parse {
                        offset: *off,
                        message: format!("unexpected token {tok:?} in term"),
                    })
                }
                None => {
                    return Err(CrnError::Parse {
                        offset: src.len(),
                        message: "unexpected end of input in term".into(),
                    })
                }
            }
            if let Some((_, Token::Star)) = tokens.get(pos) {
                pos += 1;
                continue;
            }
            break;
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((Exponent::new(exps), coeff));
        // next token, if any, must be +/-; the loop's sign step consumes it
        match tokens.get(pos) {
            None | Some((_, Token::Plus)) | Some((_, Token::Minus)) => {}
            Some((off, tok)) => {
                return Err(CrnError::Parse {
                    offset: *off,
                    message: format!("expected '+' or '-' before {tok:?}"),
                })
            }
        }
    }

    Polynomial::from_terms(dim, terms)
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` into a rational. The denominator must be positive.
pub fn parse_rational(src: &str) -> Result<Rational> {
    let src = src.trim();
    let err = |msg: &str| CrnError::Parse {
        offset: 0,
        message: format!("invalid rational '{src}': {msg}"),
    };
    let (num_str, den_str) = match src.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (src, None),
    };
    let num: BigInt = num_str.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| err("bad denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    if den.is_negative() {
        return Err(err("denominator must be positive"));
    }
    Ok(Rational::new(num, den))
}

/// Formats a polynomial in canonical term order with the given species names.
pub fn format_polynomial(p: &Polynomial, species: &[String]) -> String {
    assert_eq!(p.dim(), species.len(), "species list dimension mismatch");
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || e.is_zero() {
            factors.push(format_rational(&mag));
        }
        for (name, &k) in species.iter().zip(e.entries()) {
            match k {
                0 => {}
                1 => factors.push(name.clone()),
                _ => factors.push(format!("{name}^{k}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

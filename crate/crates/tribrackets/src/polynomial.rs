//! Six-variable polynomial invariants of tribrackets.
//!
//! Each element i of a tribracket contributes the monomial
//! x^l1 y^c1 z^r1 u^l2 v^c2 w^r2, where the six exponents count solutions j
//! of [i,j,j]=i, [j,i,j]=i, [j,j,i]=i, [i,j,j]=j, [j,i,j]=j, [j,j,i]=j.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{is_closed, SubsetError, Tribracket};

/// The six solution counts for one element. Field order matches the
/// defining equations; serialization order is u,v,w,x,y,z (see [`Exponents`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile {
    pub l1: u16,
    pub c1: u16,
    pub r1: u16,
    pub l2: u16,
    pub c2: u16,
    pub r2: u16,
}

/// Exponent key in variable order u,v,w,x,y,z.
pub type Exponents = [u16; 6];

const VARS: [char; 6] = ['u', 'v', 'w', 'x', 'y', 'z'];

/// Sparse polynomial in u,v,w,x,y,z with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TriPolynomial {
    terms: BTreeMap<Exponents, i64>,
}

impl TriPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exps).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&mut self, other: &TriPolynomial) {
        for (&e, &c) in &other.terms {
            self.add_term(e, c);
        }
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Terms in canonical order: exponent tuple descending.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, i64)> + '_ {
        self.terms.iter().rev().map(|(&e, &c)| (e, c))
    }

    /// Total degree of the leading (canonically first) term; 0 when zero.
    pub fn leading_degree(&self) -> u32 {
        self.terms()
            .next()
            .map(|(e, _)| e.iter().map(|&v| v as u32).sum())
            .unwrap_or(0)
    }

    /// Rows `[coeff, e_u, e_v, e_w, e_x, e_y, e_z]` in canonical term order.
    pub fn json_rows(&self) -> Vec<[i64; 7]> {
        self.terms()
            .map(|(e, c)| {
                [c, e[0] as i64, e[1] as i64, e[2] as i64, e[3] as i64, e[4] as i64, e[5] as i64]
            })
            .collect()
    }
}

impl fmt::Display for TriPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&canonical_string(self))
    }
}

/// Solution counts for element i (1-based) with j ranging over all of X.
pub fn profile(x: &Tribracket, i: usize) -> Profile {
    let n = x.n();
    assert!((1..=n).contains(&i), "element {i} out of range 1..={n}");
    let i0 = (i - 1) as u8;
    let mut p = Profile { l1: 0, c1: 0, r1: 0, l2: 0, c2: 0, r2: 0 };
    for j in 0..n as u8 {
        if x.ev0(i0, j, j) == i0 {
            p.l1 += 1;
        }
        if x.ev0(j, i0, j) == i0 {
            p.c1 += 1;
        }
        if x.ev0(j, j, i0) == i0 {
            p.r1 += 1;
        }
        if x.ev0(i0, j, j) == j {
            p.l2 += 1;
        }
        if x.ev0(j, i0, j) == j {
            p.c2 += 1;
        }
        if x.ev0(j, j, i0) == j {
            p.r2 += 1;
        }
    }
    p
}

/// The single-term polynomial x^l1 y^c1 z^r1 u^l2 v^c2 w^r2.
pub fn element_monomial(p: &Profile) -> TriPolynomial {
    let mut out = TriPolynomial::zero();
    out.add_term([p.l2, p.c2, p.r2, p.l1, p.c1, p.r1], 1);
    out
}

/// φ(X): sum of element monomials over all of X.
pub fn tribracket_polynomial(x: &Tribracket) -> TriPolynomial {
    let mut out = TriPolynomial::zero();
    for i in 1..=x.n() {
        out.add(&element_monomial(&profile(x, i)));
    }
    out
}

/// φ(S⊂X): contributions of the elements of S, counts still taken in X.
/// S must be closed under the operation.
pub fn subtribracket_polynomial(
    x: &Tribracket,
    s: &[usize],
) -> Result<TriPolynomial, SubsetError> {
    if !is_closed(x, s)? {
        return Err(SubsetError::NotClosed(s.to_vec()));
    }
    let mut out = TriPolynomial::zero();
    for &i in s {
        out.add(&element_monomial(&profile(x, i)));
    }
    Ok(out)
}

/// True iff all elements contribute the same monomial.
pub fn is_homogeneous(x: &Tribracket) -> bool {
    let first = profile(x, 1);
    (2..=x.n()).all(|i| profile(x, i) == first)
}

/// Deterministic rendering: terms in descending exponent order, variables
/// in the order u,v,w,x,y,z, `^e` only for e ≥ 2, unit coefficients omitted
/// on nonconstant terms, ` + ` as the separator, zero rendered as `0`.
pub fn canonical_string(p: &TriPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (exps, coeff) in p.terms() {
        let mut mono = String::new();
        for (v, &e) in VARS.iter().zip(exps.iter()) {
            match e {
                0 => {}
                1 => mono.push(*v),
                _ => {
                    mono.push(*v);
                    mono.push('^');
                    mono.push_str(&e.to_string());
                }
            }
        }
        if mono.is_empty() {
            parts.push(coeff.to_string());
        } else if coeff == 1 {
            parts.push(mono);
        } else {
            parts.push(format!("{coeff}{mono}"));
        }
    }
    parts.join(" + ")
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("empty term in {0:?}")]
    EmptyTerm(String),
    #[error("bad character {0:?}")]
    BadChar(char),
    #[error("missing exponent after ^")]
    MissingExponent,
    #[error("bad number {0:?}")]
    BadNumber(String),
}

fn superscript_digit(c: char) -> Option<u16> {
    match c {
        '\u{2070}' => Some(0),
        '\u{00b9}' => Some(1),
        '\u{00b2}' => Some(2),
        '\u{00b3}' => Some(3),
        '\u{2074}' => Some(4),
        '\u{2075}' => Some(5),
        '\u{2076}' => Some(6),
        '\u{2077}' => Some(7),
        '\u{2078}' => Some(8),
        '\u{2079}' => Some(9),
        _ => None,
    }
}

/// Parse the canonical-string format back into a polynomial. Accepts any
/// variable order, repeated terms, and exponents written either as `^e` or
/// with superscript digits; the result is re-canonicalized, so `parse(s)`
/// followed by [`canonical_string`] normalizes loose input.
pub fn parse_polynomial(text: &str) -> Result<TriPolynomial, PolyParseError> {
    let mut out = TriPolynomial::zero();
    let trimmed = text.trim();
    if trimmed == "0" {
        return Ok(out);
    }
    for raw in trimmed.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(PolyParseError::EmptyTerm(text.to_string()));
        }
        let mut chars = term.chars().peekable();
        let mut coeff: i64 = 1;
        let mut digits = String::new();
        if chars.peek() == Some(&'-') {
            chars.next();
            coeff = -1;
        }
        while let Some(&c) = chars.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                chars.next();
            } else {
                break;
            }
        }
        if !digits.is_empty() {
            coeff *= digits
                .parse::<i64>()
                .map_err(|_| PolyParseError::BadNumber(digits.clone()))?;
        }
        let mut exps: Exponents = [0; 6];
        while let Some(c) = chars.next() {
            let vi = VARS
                .iter()
                .position(|&v| v == c)
                .ok_or(PolyParseError::BadChar(c))?;
            let mut e: u16 = 1;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut ed = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        ed.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if ed.is_empty() {
                    return Err(PolyParseError::MissingExponent);
                }
                e = ed.parse().map_err(|_| PolyParseError::BadNumber(ed.clone()))?;
            } else if chars.peek().copied().and_then(superscript_digit).is_some() {
                e = 0;
                while let Some(d) = chars.peek().copied().and_then(superscript_digit) {
                    chars.next();
                    e = e * 10 + d;
                }
            }
            exps[vi] += e;
        }
        out.add_term(exps, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_tribracket, Tensor3};

    fn tb(text: &str) -> Tribracket {
        make_tribracket(&Tensor3::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn example3_profiles_and_polynomial() {
        let x = tb(crate::reference::EXAMPLE3_TENSOR);
        assert_eq!(
            profile(&x, 1),
            Profile { l1: 0, c1: 1, r1: 0, l2: 1, c2: 1, r2: 1 }
        );
        for i in 2..=3 {
            assert_eq!(profile(&x, i), profile(&x, 1));
        }
        let p = tribracket_polynomial(&x);
        assert_eq!(canonical_string(&p), "3uvwy");
        assert!(is_homogeneous(&x));
    }

    #[test]
    fn subpolynomial_example10() {
        let x = tb(crate::reference::EXAMPLE10_TENSOR);
        let p = subtribracket_polynomial(&x, &[1]).unwrap();
        assert_eq!(canonical_string(&p), "u^3v^3w^3xyz");
        assert!(matches!(
            subtribracket_polynomial(&x, &[2]),
            Err(SubsetError::NotClosed(_))
        ));
        let full = subtribracket_polynomial(&x, &[1, 2, 3]).unwrap();
        assert_eq!(full, tribracket_polynomial(&x));
    }

    #[test]
    fn order45_polynomials() {
        let x4 = tb(crate::reference::ORDER4_TENSOR);
        assert_eq!(canonical_string(&tribracket_polynomial(&x4)), "4uvwx^2y^2z^4");
        assert!(is_homogeneous(&x4));
        let x5 = tb(crate::reference::ORDER5_TENSOR);
        assert_eq!(
            canonical_string(&tribracket_polynomial(&x5)),
            "uvw^5xyz + 4uvxyz"
        );
        assert!(!is_homogeneous(&x5));
    }

    #[test]
    fn coefficient_sum_is_order() {
        for (_, text) in crate::reference::TENSORS {
            let x = tb(text);
            assert_eq!(tribracket_polynomial(&x).coefficient_sum(), x.n() as i64);
        }
    }

    #[test]
    fn canonical_corner_cases() {
        assert_eq!(canonical_string(&TriPolynomial::zero()), "0");
        let mut constant = TriPolynomial::zero();
        constant.add_term([0; 6], 2);
        assert_eq!(canonical_string(&constant), "2");
        let mut one = TriPolynomial::zero();
        one.add_term([0; 6], 1);
        assert_eq!(canonical_string(&one), "1");
        let mut p = TriPolynomial::zero();
        p.add_term([3, 3, 3, 1, 1, 1], 1);
        p.add_term([0, 0, 0, 1, 1, 1], 2);
        assert_eq!(canonical_string(&p), "u^3v^3w^3xyz + 2xyz");
        p.add_term([3, 3, 3, 1, 1, 1], -1);
        assert_eq!(canonical_string(&p), "2xyz");
    }

    #[test]
    fn parse_round_trips_table_strings() {
        for (_, row) in crate::reference::SPECTRA {
            for s in *row {
                let p = parse_polynomial(s).unwrap();
                assert_eq!(&canonical_string(&p), s, "not canonical: {s}");
            }
        }
    }

    #[test]
    fn parse_normalizes_loose_variable_order() {
        let a = parse_polynomial("3yuvw").unwrap();
        assert_eq!(canonical_string(&a), "3uvwy");
        let b = parse_polynomial("xyzu^3v^3w^3").unwrap();
        assert_eq!(canonical_string(&b), "u^3v^3w^3xyz");
        let c = parse_polynomial("2 + uvw").unwrap();
        assert_eq!(canonical_string(&c), "uvw + 2");
        assert!(parse_polynomial("3q").is_err());
        assert!(parse_polynomial("u^").is_err());
    }

    #[test]
    fn parse_accepts_superscript_exponents() {
        let a = parse_polynomial("xyzu\u{00b3}v\u{00b3}w\u{00b3}").unwrap();
        assert_eq!(canonical_string(&a), "u^3v^3w^3xyz");
        let b = parse_polynomial("3uvwx\u{00b9}\u{2078}y\u{00b2}z\u{2076}").unwrap();
        assert_eq!(canonical_string(&b), "3uvwx^18y^2z^6");
        assert_eq!(a, parse_polynomial("u^3v^3w^3xyz").unwrap());
    }

    #[test]
    fn json_rows_match_term_order() {
        let x = tb(crate::reference::ORDER5_TENSOR);
        let rows = tribracket_polynomial(&x).json_rows();
        assert_eq!(rows, vec![[1, 1, 1, 5, 1, 1, 1], [4, 1, 1, 0, 1, 1, 1]]);
    }
}

//! Commutative domains with exact division.
//!
//! Everything in this crate is generic over [`Domain`]. Two concrete domains
//! ship with it: arbitrary-precision integers ([`BigInt`]) and univariate
//! polynomials with integer coefficients ([`Polynomial`]). Neither is a field,
//! so a failed exact division is a real signal rather than a rounding artefact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of a commutative ring without zero divisors.
///
/// Arithmetic must be exact. `exact_div` returns the unique `q` with
/// `q * divisor == self`, or fails; it never truncates.
pub trait Domain:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Short tag used in matrix file headers (`int`, `poly`).
    const TAG: &'static str;

    fn mul_ref(&self, other: &Self) -> Self;

    /// Exact quotient `self / divisor`.
    fn exact_div(&self, divisor: &Self) -> Result<Self>;

    /// Embedding of the integers.
    fn from_integer(value: BigInt) -> Self;

    /// Parse from the element text grammar.
    fn parse_element(text: &str) -> Result<Self>;

    fn from_i64(value: i64) -> Self {
        Self::from_integer(BigInt::from(value))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl Domain for BigInt {
    const TAG: &'static str = "int";

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.div_rem(divisor);
        if !r.is_zero() {
            return Err(Error::NotDivisible {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            });
        }
        Ok(q)
    }

    fn from_integer(value: BigInt) -> Self {
        value
    }

    fn parse_element(text: &str) -> Result<Self> {
        parse_integer(text)
    }

    fn pow(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }
}

fn parse_integer(text: &str) -> Result<BigInt> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    if matches!(bytes.first(), Some(b'+') | Some(b'-')) {
        pos = 1;
    }
    if pos == bytes.len() {
        return Err(Error::parse(pos, "expected decimal digits"));
    }
    if let Some(off) = bytes[pos..].iter().position(|b| !b.is_ascii_digit()) {
        return Err(Error::parse(pos + off, "unexpected character in integer"));
    }
    text.parse::<BigInt>()
        .map_err(|e| Error::parse(0, e.to_string()))
}

/// Dense univariate polynomial over the integers in the variable `x`.
///
/// `coeffs[k]` is the coefficient of `x^k`. The vector never has trailing
/// zeros, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub const VARIABLE: &'static str = "x";

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Long division over the integers. Every step requires the divisor's
    /// leading coefficient to divide the current leading coefficient.
    /// Returns `None` when that fails.
    fn div_rem_integral(&self, divisor: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Some((Polynomial::zero(), Polynomial::zero()));
        };
        if nd < dd {
            return Some((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        Some((Polynomial::new(quot), Polynomial::new(rem)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str(Self::VARIABLE)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial {
            coeffs: vec![BigInt::one()],
        }
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], negate_b: bool) -> Polynomial {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let x = a.get(k).cloned().unwrap_or_default();
        let y = b.get(k).cloned().unwrap_or_default();
        out.push(if negate_b { x - y } else { x + y });
    }
    Polynomial::new(out)
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl<'a> Add<&'a Polynomial> for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl<'a> Sub<&'a Polynomial> for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        self.mul_ref(&rhs)
    }
}

impl Domain for Polynomial {
    const TAG: &'static str = "poly";

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.div_rem_integral(divisor) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::NotDivisible {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            }),
        }
    }

    fn from_integer(value: BigInt) -> Self {
        Polynomial::constant(value)
    }

    fn parse_element(text: &str) -> Result<Self> {
        PolyParser::new(text).parse()
    }
}

/// Scanner for sums of monomials: `c`, `c*x`,
/// `c*x^k`, `x^k`, `-x`, in any order, repeated degrees summed.
struct PolyParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn new(text: &'a str) -> Self {
        PolyParser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(Error::parse(0, "empty element"));
        }
        let mut first = true;
        while {
            self.skip_ws();
            self.peek().is_some()
        } {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(Error::parse(self.pos, "expected '+' or '-' between terms")),
            };
            first = false;
            self.skip_ws();
            let (coeff, degree) = self.term()?;
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, BigInt::zero());
            }
            if negative {
                coeffs[degree] -= coeff;
            } else {
                coeffs[degree] += coeff;
            }
        }
        Ok(Polynomial::new(coeffs))
    }

    fn term(&mut self) -> Result<(BigInt, usize)> {
        let coeff = match self.digits() {
            Some(d) => {
                let c: BigInt = d.parse().expect("ascii digits");
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek() != Some(b'x') {
                        return Err(Error::parse(self.pos, "expected 'x' after '*'"));
                    }
                } else {
                    return Ok((c, 0));
                }
                c
            }
            None => BigInt::one(),
        };
        if self.peek() != Some(b'x') {
            return Err(Error::parse(self.pos, "expected coefficient or 'x'"));
        }
        self.pos += 1;
        self.skip_ws();
        let mut degree = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let d = self
                .digits()
                .ok_or_else(|| Error::parse(at, "expected exponent"))?;
            degree = d
                .parse()
                .map_err(|_| Error::parse(at, "exponent out of range"))?;
        }
        Ok((coeff, degree))
    }
}

/// Parse `text` as an element of `D`.
pub fn parse_element<D: Domain>(text: &str) -> Result<D> {
    D::parse_element(text)
}

/// Canonical text form of an element.
pub fn format_element<D: Domain>(e: &D) -> String {
    e.to_string()
}

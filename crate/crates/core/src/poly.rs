//! Integer polynomials in `u` with arbitrary-precision coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients in ascending powers with no trailing zeros; the zero
/// polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c · u^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `(1 - u²)^k`.
    pub fn one_minus_u2_pow(k: usize) -> Self {
        Self::from_i64s(&[1, 0, -1]).pow(k)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `u^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// `p(-u)`.
    pub fn negate_argument(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// `u^d · p(1/u)`, the coefficient reversal against a nominal degree `d`.
    /// Panics if `d` is below the actual degree.
    pub fn reversed(&self, d: usize) -> Self {
        assert!(self.degree().map_or(true, |k| k <= d), "reversal degree below actual degree");
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[d - k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Quotient of an exact division; any remainder is an error.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.div_exact(self).is_ok()
    }

    /// Long division that stays in the integers: fails if a leading
    /// coefficient does not divide evenly.
    fn div_rem(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::InexactDivision);
        };
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let (q, r) = rem[top].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let shift = top - dd;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &q * c;
            }
            quot[shift] = q;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// `{"coefficients": [c0, c1, ...]}` with exact decimal integers.
    pub fn to_json(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        format!("{{\"coefficients\":[{}]}}", items.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { line: 1, msg };
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let obj = value.as_object().ok_or_else(|| bad("expected an object".into()))?;
        if obj.len() != 1 {
            return Err(bad("expected exactly the key \"coefficients\"".into()));
        }
        let list = obj
            .get("coefficients")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("\"coefficients\" must be an array".into()))?;
        let mut coeffs = Vec::with_capacity(list.len());
        for item in list {
            let num = item.as_number().ok_or_else(|| bad(format!("not a number: {item}")))?;
            let text = num.to_string();
            let digits = text.strip_prefix('-').unwrap_or(&text);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(format!("not an integer: {text}")));
            }
            coeffs.push(text.parse::<BigInt>().map_err(|e| bad(e.to_string()))?);
        }
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for IntPoly {
    /// Ascending powers with explicit signs, e.g. `1 - 2u^3 + u^6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "u")?,
                _ => write!(f, "u^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

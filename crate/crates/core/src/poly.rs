//! Dense univariate polynomials over the integers and rationals, with exact
//! division, Euclidean gcd, and the small parser/printer used for eigenvalue
//! specifications on the command line.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, coefficients low to high, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::new(vec![BigInt::from(c)])
    }

    /// The monomial x.
    pub fn x() -> Self {
        IntPoly::new(vec![BigInt::zero(), BigInt::one()])
    }

    /// x − a.
    pub fn linear(a: BigInt) -> Self {
        IntPoly::new(vec![-a, BigInt::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
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
        IntPoly::new(out)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// m(−x), normalized to be monic when m is.
    pub fn reflected(&self) -> IntPoly {
        let mut flipped: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        if flipped.last().is_some_and(|c| c.is_negative()) {
            for c in &mut flipped {
                *c = -&*c;
            }
        }
        IntPoly::new(flipped)
    }

    pub fn to_rational(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from(c.clone())).collect())
    }

    /// Divides out the gcd of the coefficients, keeping the leading sign positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }
}

impl fmt::Display for IntPoly {
    /// Renders in the CLI grammar, e.g. `x^2-2`, `x-1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str("-")?;
            } else {
                f.write_str("+")?;
            }
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("x")?;
                }
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// How many times `factor` exactly divides `p` (both nonzero, over Q).
pub fn factor_multiplicity(p: &IntPoly, factor: &IntPoly) -> usize {
    assert!(!factor.is_zero() && factor.degree() != Some(0), "factor must be nonconstant");
    let f = factor.to_rational();
    let mut cur = p.to_rational();
    let mut count = 0;
    while !cur.is_zero() {
        let (q, r) = cur.div_rem(&f);
        if !r.is_zero() {
            break;
        }
        cur = q;
        count += 1;
    }
    count
}

/// Rational polynomial, coefficients low to high, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly { coeffs: vec![BigRational::one()] }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, s: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division: `self = q * d + r` with deg r < deg d.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / lead;
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &q * c;
                }
                quot[k] = q;
            }
            rem.pop();
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, u) with g = gcd(self, other) monic and
    /// u * self ≡ g (mod other).
    pub fn extended_gcd(&self, other: &RatPoly) -> (RatPoly, RatPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut u0 = RatPoly::one();
        let mut u1 = RatPoly::zero();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let nu = u0.sub(&q.mul(&u1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = nu;
        }
        if r0.is_zero() {
            return (RatPoly::zero(), RatPoly::zero());
        }
        let lead = r0.coeffs.last().unwrap().clone();
        let inv = BigRational::one() / lead;
        (r0.scale(&inv), u0.scale(&inv))
    }

    pub fn monic(&self) -> RatPoly {
        match self.coeffs.last() {
            None => RatPoly::zero(),
            Some(lead) => {
                let inv = BigRational::one() / lead;
                self.scale(&inv)
            }
        }
    }

    /// Clears denominators and returns the primitive integer polynomial.
    pub fn to_integer_primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        IntPoly::new(self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect())
            .primitive_part()
    }
}

/// Parses the eigenvalue grammar: an integer or rational literal (`0`, `-1`,
/// `3/2`), or a sum of `x^k` terms with integer coefficients (`x^2-2`,
/// `x^2-x-1`). Returns the coefficient vector low to high.
pub fn parse_poly(input: &str) -> Result<Vec<BigRational>, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    if !s.contains('x') {
        // literal
        let val: BigRational = if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
            let d: BigInt = den.parse().map_err(|_| format!("bad denominator {den:?}"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            BigRational::new(n, d)
        } else {
            BigRational::from(s.parse::<BigInt>().map_err(|_| format!("bad literal {s:?}"))?)
        };
        // alpha = a encoded as the linear polynomial x - a
        return Ok(vec![-val, BigRational::one()]);
    }
    // split into signed terms
    let mut terms: Vec<(BigInt, usize)> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &s[start..i];
        if term.is_empty() {
            return Err("dangling sign".into());
        }
        let (coeff, power) = if let Some(rest) = term.strip_prefix('x') {
            let power = if let Some(p) = rest.strip_prefix('^') {
                p.parse::<usize>().map_err(|_| format!("bad exponent {p:?}"))?
            } else if rest.is_empty() {
                1
            } else {
                return Err(format!("unexpected {rest:?} after x"));
            };
            (BigInt::one(), power)
        } else if let Some(idx) = term.find('x') {
            let c: BigInt = term[..idx]
                .parse()
                .map_err(|_| format!("bad coefficient {:?}", &term[..idx]))?;
            let rest = &term[idx + 1..];
            let power = if let Some(p) = rest.strip_prefix('^') {
                p.parse::<usize>().map_err(|_| format!("bad exponent {p:?}"))?
            } else if rest.is_empty() {
                1
            } else {
                return Err(format!("unexpected {rest:?} after x"));
            };
            (c, power)
        } else {
            (term.parse::<BigInt>().map_err(|_| format!("bad term {term:?}"))?, 0)
        };
        terms.push((sign * coeff, power));
    }
    let deg = terms.iter().map(|&(_, p)| p).max().unwrap_or(0);
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (c, p) in terms {
        coeffs[p] += BigRational::from(c);
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Err("polynomial must have degree at least 1".into());
    }
    if !coeffs.last().unwrap().is_one() {
        return Err("leading coefficient must be 1".into());
    }
    Ok(coeffs)
}

//! Exact arithmetic in `Q[x]/(m(x))` for a monic squarefree m, the field where
//! eigenvalue multiplicities are computed. Elements are coefficient vectors of
//! degree below deg m; inversion runs the extended Euclidean algorithm, and a
//! nontrivial gcd along the way is proof that m is reducible, which is
//! surfaced as an error carrying the factor.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{parse_poly, IntPoly, RatPoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("reducible minimal polynomial: factor {factor}")]
    ReducibleMinPoly { factor: IntPoly },
    #[error("minimal polynomial must be monic with integer coefficients: {0}")]
    NotMonic(String),
    #[error("minimal polynomial must have degree at least 1")]
    ZeroDegree,
    #[error("minimal polynomial is not squarefree: gcd with derivative is {factor}")]
    NotSquarefree { factor: IntPoly },
    #[error("invalid polynomial: {0}")]
    BadPolynomial(String),
}

/// A totally real algebraic number α, given by its monic minimal polynomial.
///
/// Rational α (degree 1) takes a plain-rational fast path. Conjugate roots of
/// an irreducible m share every multiplicity computed here, so the spec never
/// identifies a particular real root; only exact zero tests are used.
#[derive(Debug, Clone, PartialEq)]
pub enum EigenvalueSpec {
    Rational(BigRational),
    Extension { minpoly: IntPoly },
}

impl EigenvalueSpec {
    pub fn rational(a: BigRational) -> Self {
        EigenvalueSpec::Rational(a)
    }

    pub fn integer(a: i64) -> Self {
        EigenvalueSpec::Rational(BigRational::from(BigInt::from(a)))
    }

    /// Builds a spec from a monic integer polynomial of degree ≥ 1.
    /// Degree 1 normalizes to the rational fast path. The polynomial must be
    /// squarefree; irreducibility is assumed and only disproved lazily during
    /// arithmetic.
    pub fn from_minpoly(m: IntPoly) -> Result<Self, SpectralError> {
        match m.degree() {
            None | Some(0) => return Err(SpectralError::ZeroDegree),
            Some(_) => {}
        }
        if !m.is_monic() {
            return Err(SpectralError::NotMonic(m.to_string()));
        }
        if m.degree() == Some(1) {
            return Ok(EigenvalueSpec::Rational(BigRational::from(-m.coeff(0))));
        }
        let g = m.to_rational().gcd(&m.derivative().to_rational());
        if g.degree() != Some(0) {
            return Err(SpectralError::NotSquarefree { factor: g.to_integer_primitive() });
        }
        Ok(EigenvalueSpec::Extension { minpoly: m })
    }

    /// Parses the CLI grammar (rational literal or monic integer polynomial
    /// in x). Non-integer rationals stay on the rational path.
    pub fn parse(input: &str) -> Result<Self, SpectralError> {
        let coeffs = parse_poly(input).map_err(SpectralError::BadPolynomial)?;
        if coeffs.len() == 2 {
            return Ok(EigenvalueSpec::Rational(-coeffs[0].clone()));
        }
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SpectralError::NotMonic(format!("non-integer coefficient {c}")))
                }
            })
            .collect::<Result<_, _>>()?;
        EigenvalueSpec::from_minpoly(IntPoly::new(ints))
    }

    /// Field extension degree d (1 for rational α).
    pub fn degree(&self) -> usize {
        match self {
            EigenvalueSpec::Rational(_) => 1,
            EigenvalueSpec::Extension { minpoly } => minpoly.degree().unwrap(),
        }
    }

    /// The minimal polynomial over Q (x − a for rational α).
    pub fn minpoly_rational(&self) -> RatPoly {
        match self {
            EigenvalueSpec::Rational(a) => {
                RatPoly::new(vec![-a.clone(), BigRational::one()])
            }
            EigenvalueSpec::Extension { minpoly } => minpoly.to_rational(),
        }
    }

    /// Integer minimal polynomial when α is an algebraic integer.
    pub fn minpoly_int(&self) -> Option<IntPoly> {
        match self {
            EigenvalueSpec::Rational(a) if a.is_integer() => {
                Some(IntPoly::linear(a.to_integer()))
            }
            EigenvalueSpec::Rational(_) => None,
            EigenvalueSpec::Extension { minpoly } => Some(minpoly.clone()),
        }
    }

    /// The spec for −α: minpoly m(−x), sign-normalized.
    pub fn negated(&self) -> Self {
        match self {
            EigenvalueSpec::Rational(a) => EigenvalueSpec::Rational(-a.clone()),
            EigenvalueSpec::Extension { minpoly } => {
                EigenvalueSpec::Extension { minpoly: minpoly.reflected() }
            }
        }
    }

    /// Searches for an integer root of the minimal polynomial (a linear
    /// factor x − r). Used by callers that want to reject obviously reducible
    /// specs eagerly; the library itself detects reducibility lazily.
    pub fn integer_root(&self) -> Option<BigInt> {
        let m = match self {
            EigenvalueSpec::Rational(_) => return None,
            EigenvalueSpec::Extension { minpoly } => minpoly,
        };
        let c0 = m.coeff(0);
        if c0.is_zero() {
            return Some(BigInt::zero());
        }
        for d in divisors_capped(&c0.abs(), 1_000_000) {
            for cand in [d.clone(), -d] {
                if m.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
        None
    }
}

impl fmt::Display for EigenvalueSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenvalueSpec::Rational(a) => write!(f, "{a}"),
            EigenvalueSpec::Extension { minpoly } => write!(f, "{minpoly}"),
        }
    }
}

/// Positive divisors of n, found by trial division; the scan is capped so
/// huge constant terms stay cheap (at worst some roots go undetected, which
/// is harmless for an eager pre-check).
fn divisors_capped(n: &BigInt, cap: u64) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    let mut steps = 0u64;
    while &(&d * &d) <= n && steps < cap {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
        steps += 1;
    }
    out
}

/// An element of `Q[x]/(m)`, reduced to degree < deg m.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldElement {
    coeffs: Vec<BigRational>,
}

impl FieldElement {
    pub fn from_coeffs(coeffs: Vec<BigRational>, spec: &EigenvalueSpec) -> Self {
        reduce(RatPoly::new(coeffs), spec)
    }

    pub fn zero(spec: &EigenvalueSpec) -> Self {
        FieldElement { coeffs: vec![BigRational::zero(); spec.degree()] }
    }

    pub fn from_integer(k: i64, spec: &EigenvalueSpec) -> Self {
        let mut e = FieldElement::zero(spec);
        e.coeffs[0] = BigRational::from(BigInt::from(k));
        e
    }

    /// The class of x, i.e. α itself.
    pub fn generator(spec: &EigenvalueSpec) -> Self {
        match spec {
            EigenvalueSpec::Rational(a) => FieldElement { coeffs: vec![a.clone()] },
            EigenvalueSpec::Extension { .. } => {
                let mut e = FieldElement::zero(spec);
                e.coeffs[1] = BigRational::one();
                e
            }
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &FieldElement, spec: &EigenvalueSpec) -> FieldElement {
        if spec.degree() == 1 {
            return FieldElement { coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let prod = RatPoly::new(self.coeffs.clone()).mul(&RatPoly::new(other.coeffs.clone()));
        reduce(prod, spec)
    }
}

fn reduce(p: RatPoly, spec: &EigenvalueSpec) -> FieldElement {
    let d = spec.degree();
    let r = if p.degree().is_some_and(|dp| dp >= d) {
        let (_, r) = p.div_rem(&spec.minpoly_rational());
        r
    } else {
        p
    };
    let mut coeffs = r.coeffs().to_vec();
    coeffs.resize(d, BigRational::zero());
    FieldElement { coeffs }
}

/// Multiplicative inverse in `Q[x]/(m)` via the extended Euclidean algorithm.
///
/// A nonzero element with a nontrivial gcd against m proves m reducible; the
/// error names the discovered factor.
pub fn nf_inverse(e: &FieldElement, spec: &EigenvalueSpec) -> Result<FieldElement, SpectralError> {
    if e.is_zero() {
        return Err(SpectralError::DivisionByZero);
    }
    if spec.degree() == 1 {
        return Ok(FieldElement { coeffs: vec![BigRational::one() / &e.coeffs[0]] });
    }
    let ep = RatPoly::new(e.coeffs.clone());
    let m = spec.minpoly_rational();
    let (g, u) = ep.extended_gcd(&m);
    if g.degree() != Some(0) {
        return Err(SpectralError::ReducibleMinPoly { factor: g.to_integer_primitive() });
    }
    // extended_gcd returns g monic with u*e ≡ g (mod m), so u is the inverse
    Ok(reduce(u, spec))
}

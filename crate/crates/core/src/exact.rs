//! Exact counts and probabilities.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactCount(pub BigUint);

impl ExactCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for ExactCount {
    fn from(v: u64) -> Self {
        ExactCount(BigUint::from(v))
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Probability in `[0, 1]` held as a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactProb {
    numer: BigUint,
    denom: BigUint,
}

impl ExactProb {
    pub fn new(numer: impl Into<BigUint>, denom: impl Into<BigUint>) -> Result<Self> {
        let (numer, denom) = (numer.into(), denom.into());
        if denom.is_zero() {
            return Err(Error::Internal("probability with zero denominator".into()));
        }
        if numer > denom {
            return Err(Error::Internal(format!("probability {numer}/{denom} exceeds 1")));
        }
        let g = numer.gcd(&denom);
        Ok(ExactProb {
            numer: numer / &g,
            denom: denom / g,
        })
    }

    pub fn zero() -> Self {
        ExactProb {
            numer: BigUint::zero(),
            denom: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        ExactProb {
            numer: BigUint::one(),
            denom: BigUint::one(),
        }
    }

    /// `1 / denom`.
    pub fn reciprocal_of(denom: impl Into<BigUint>) -> Result<Self> {
        Self::new(BigUint::one(), denom)
    }

    pub fn from_rational(r: &BigRational) -> Result<Self> {
        let (n, d) = (r.numer(), r.denom());
        if n.sign() == Sign::Minus || d.sign() != Sign::Plus {
            return Err(Error::Internal(format!("negative probability {r}")));
        }
        Self::new(n.magnitude().clone(), d.magnitude().clone())
    }

    pub fn numer(&self) -> &BigUint {
        &self.numer
    }

    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numer.clone()), BigInt::from(self.denom.clone()))
    }

    pub fn mul(&self, other: &ExactProb) -> ExactProb {
        let numer = &self.numer * &other.numer;
        let denom = &self.denom * &other.denom;
        let g = numer.gcd(&denom);
        ExactProb {
            numer: numer / &g,
            denom: denom / g,
        }
    }

    /// Floating read-out; exact to double precision even when the numerator and
    /// denominator overflow `f64`.
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.numer, &self.denom)
    }

    /// `log10` of the value, usable for magnitudes far below `f64::MIN_POSITIVE`.
    pub fn log10(&self) -> f64 {
        log10_big(&self.numer) - log10_big(&self.denom)
    }

    /// Decimal with 12 significant digits, e.g. `4.16666666667e-2`.
    pub fn to_decimal(&self) -> String {
        decimal_sig(&self.numer, &self.denom, 12)
    }
}

impl PartialOrd for ExactProb {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactProb {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

pub fn factorial(n: usize) -> BigUint {
    product_of((1..=n as u64).collect::<Vec<_>>().as_slice())
}

/// Product of small factors, multiplied pairwise to keep operands balanced.
pub fn product_of(factors: &[u64]) -> BigUint {
    match factors.len() {
        0 => BigUint::one(),
        1 => BigUint::from(factors[0]),
        n if n <= 16 => {
            let mut acc = BigUint::one();
            let mut word: u64 = 1;
            for &f in factors {
                match word.checked_mul(f) {
                    Some(w) => word = w,
                    None => {
                        acc *= word;
                        word = f;
                    }
                }
            }
            acc * word
        }
        n => product_of(&factors[..n / 2]) * product_of(&factors[n / 2..]),
    }
}

pub(crate) fn log10_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).log10();
    }
    let shift = bits - 900;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

pub(crate) fn ratio_to_f64(numer: &BigUint, denom: &BigUint) -> f64 {
    if numer.is_zero() {
        return 0.0;
    }
    match (numer.to_f64(), denom.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0 => a / b,
        _ => 10f64.powf(log10_big(numer) - log10_big(denom)),
    }
}

/// `numer/denom` rounded half-up to `digits` significant digits, in scientific
/// notation (`d.ddd…e±x`).
pub fn decimal_sig(numer: &BigUint, denom: &BigUint, digits: u32) -> String {
    if numer.is_zero() {
        return format!("0.{}e0", "0".repeat(digits as usize - 1));
    }
    // find e with 10^e <= numer/denom < 10^(e+1)
    let mut e = (log10_big(numer) - log10_big(denom)).floor() as i64;
    let ten = BigUint::from(10u32);
    let scaled = |e: i64| -> (BigUint, BigUint) {
        // value * 10^(digits-1-e)
        let shift = digits as i64 - 1 - e;
        if shift >= 0 {
            (numer * ten.pow(shift as u32), denom.clone())
        } else {
            (numer.clone(), denom * ten.pow((-shift) as u32))
        }
    };
    let lower = ten.pow(digits - 1);
    let upper = ten.pow(digits);
    let mut mantissa;
    loop {
        let (n, d) = scaled(e);
        let (q, r) = n.div_rem(&d);
        if q < lower {
            e -= 1;
            continue;
        }
        if q >= upper {
            e += 1;
            continue;
        }
        mantissa = q;
        if &r * 2u32 >= d {
            mantissa += 1u32;
        }
        if mantissa == upper {
            mantissa = lower.clone();
            e += 1;
        }
        break;
    }
    let s = mantissa.to_string();
    format!("{}.{}e{}", &s[..1], &s[1..], e)
}

/// Exact decimal for an arbitrary signed rational, 12 significant digits.
pub fn rational_decimal(r: &BigRational) -> String {
    let body = decimal_sig(r.numer().magnitude(), r.denom().magnitude(), 12);
    if r.numer().sign() == Sign::Minus {
        format!("-{body}")
    } else {
        body
    }
}

//! Exact counts of primitive and Lyndon words, and the probability that the
//! standard right factor of a uniform Lyndon word is the word minus its first
//! letter.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::Alphabet;

/// Möbius function by trial division.
pub fn mobius(d: u64) -> Result<i8> {
    if d == 0 {
        return Err(Error::InvalidArgument("mobius is defined for d >= 1".into()));
    }
    let mut m = d;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("word length must be at least 1".into()));
    }
    Ok(())
}

/// Number of primitive words of length `n`: sum over `d | n` of `mu(d) q^(n/d)`.
pub fn count_primitive(n: usize, alphabet: Alphabet) -> Result<BigUint> {
    check_n(n)?;
    let q = BigInt::from(alphabet.size());
    let mut total = BigInt::zero();
    for d in divisors(n as u64) {
        let mu = mobius(d)?;
        if mu != 0 {
            let term = num_traits::pow(q.clone(), n / d as usize);
            if mu > 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(total.to_biguint().expect("primitive count is non-negative"))
}

/// Number of Lyndon words of length `n`, one per primitive rotation class.
pub fn count_lyndon(n: usize, alphabet: Alphabet) -> Result<BigUint> {
    let primitive = count_primitive(n, alphabet)?;
    let n_big = BigUint::from(n);
    assert!(
        (&primitive % &n_big).is_zero(),
        "primitive count {primitive} not divisible by {n}"
    );
    Ok(primitive / n_big)
}

pub fn count_nonprimitive(n: usize, alphabet: Alphabet) -> Result<BigUint> {
    let all = num_traits::pow(BigUint::from(alphabet.size()), n);
    Ok(all - count_primitive(n, alphabet)?)
}

fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub q: usize,
    #[serde(serialize_with = "ser_decimal")]
    pub primitive_count: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub lyndon_count: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub nonprimitive_count: BigUint,
}

impl CountReport {
    pub fn new(n: usize, alphabet: Alphabet) -> Result<Self> {
        let primitive_count = count_primitive(n, alphabet)?;
        let lyndon_count = &primitive_count / BigUint::from(n);
        let nonprimitive_count = num_traits::pow(BigUint::from(alphabet.size()), n) - &primitive_count;
        Ok(CountReport {
            n,
            q: alphabet.size(),
            primitive_count,
            lyndon_count,
            nonprimitive_count,
        })
    }
}

/// Exact probability that a uniform Lyndon word of length `n` lies in the
/// atom class (standard right factor of length `n - 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomMass(pub BigRational);

impl AtomMass {
    pub fn numerator(&self) -> BigUint {
        self.0.numer().to_biguint().expect("positive")
    }

    pub fn denominator(&self) -> BigUint {
        self.0.denom().to_biguint().expect("positive")
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }
}

impl Serialize for AtomMass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("AtomMass", 3)?;
        st.serialize_field("numerator", &self.numerator().to_string())?;
        st.serialize_field("denominator", &self.denominator().to_string())?;
        st.serialize_field("value", &self.to_f64())?;
        st.end()
    }
}

/// Converts a big rational to the nearest-ish `f64`, staying accurate when
/// numerator and denominator both overflow `f64`.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(a), Some(b)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if a.is_finite() && b.is_finite() {
            return a / b;
        }
    }
    let shift = r.denom().bits().saturating_sub(60);
    let a = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let b = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    a / b
}

/// For `n >= 3` the atom class is the disjoint union over `j < q` of
/// `a_j L_{n-1}({a_j, .., a_q})`, hence
/// `sum_{k=2..q} count_lyndon(n-1, k) / count_lyndon(n, q)`. At `n = 2` every
/// Lyndon word `a_i a_j` (i < j) splits after its first letter, so the mass
/// is 1.
pub fn atom_mass(n: usize, alphabet: Alphabet) -> Result<AtomMass> {
    if n < 2 {
        return Err(Error::InvalidArgument("atom mass needs n >= 2".into()));
    }
    if n == 2 {
        return Ok(AtomMass(BigRational::one()));
    }
    let mut numer = BigUint::zero();
    for k in 2..=alphabet.size() {
        numer += count_lyndon(n - 1, Alphabet::new(k)?)?;
    }
    let denom = count_lyndon(n, alphabet)?;
    Ok(AtomMass(BigRational::new(numer.into(), denom.into())))
}

//! Laurent polynomials over `Z` in the variable `v`.
//!
//! This is the coefficient ring for everything else in the crate. Polynomials
//! are stored sparsely as exponent -> coefficient maps; zero coefficients are
//! never stored, so structural equality is arithmetic equality. Coefficients
//! are arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{Error as DeError, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// A Laurent polynomial in `Z[v, v^-1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `v^exp`.
    pub fn monomial(exp: i32) -> Self {
        Self::term(exp, 1)
    }

    /// `coeff * v^exp`.
    pub fn term(exp: i32, coeff: i64) -> Self {
        Self::term_big(exp, BigInt::from(coeff))
    }

    pub fn term_big(exp: i32, coeff: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != BigInt::ZERO {
            coeffs.insert(exp, coeff);
        }
        Self { coeffs }
    }

    pub fn from_terms(terms: &[(i32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(exp, c) in terms {
            p.add_term(exp, &BigInt::from(c));
        }
        p
    }

    /// `v + v^-1`, the ubiquitous scalar.
    pub fn v_plus_vinv() -> Self {
        Self::from_terms(&[(1, 1), (-1, 1)])
    }

    /// `F_l = 1 + v^2 + ... + v^(2l-2)`, zero when `l <= 0`.
    pub fn f_poly(l: i32) -> Self {
        let mut p = Self::zero();
        for i in 0..l.max(0) {
            p.add_term(2 * i, &BigInt::one());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    /// Coefficient of `v^exp`.
    pub fn coeff(&self, exp: i32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect();
        Self { coeffs }
    }

    /// Multiplication by `v^k`.
    pub fn shifted(&self, k: i32) -> Self {
        let coeffs = self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect();
        Self { coeffs }
    }

    /// True when every coefficient is nonnegative, i.e. the polynomial lies
    /// in `N[v, v^-1]`.
    pub fn is_nonneg(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Evaluation at `v = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn add_term(&mut self, exp: i32, delta: &BigInt) {
        if delta.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += delta;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, &-c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(&e, c)| (e, -c)).collect();
        LaurentPoly { coeffs }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.coeffs {
            let neg = c.is_negative();
            let abs = c.magnitude();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = abs.is_one();
            if !unit_coeff || e == 0 {
                write!(f, "{abs}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "v")?,
                _ => write!(f, "v^{e}")?,
            }
        }
        Ok(())
    }
}

// JSON form: an object mapping exponent strings to integer coefficients in
// ascending exponent order, e.g. `{"-1":1,"1":1}` for `v + v^-1`.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            let n: serde_json::Number = c
                .to_string()
                .parse()
                .map_err(serde::ser::Error::custom)?;
            map.serialize_entry(&e.to_string(), &n)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a map from exponent strings to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentPoly, A::Error> {
                let mut poly = LaurentPoly::zero();
                while let Some((key, value)) = access.next_entry::<String, serde_json::Number>()? {
                    let exp: i32 = key
                        .parse()
                        .map_err(|_| A::Error::custom(format!("bad exponent {key:?}")))?;
                    let repr = value.to_string();
                    if repr.contains(['.', 'e', 'E']) {
                        return Err(A::Error::custom(format!("non-integer coefficient {repr}")));
                    }
                    let coeff = BigInt::from_str(&repr)
                        .map_err(|_| A::Error::custom(format!("bad coefficient {repr}")))?;
                    poly.add_term(exp, &coeff);
                }
                Ok(poly)
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}

//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}`, reduced
//! modulo the `N`-th cyclotomic polynomial, so equality is coefficient
//! equality. The same reduction table also drives an integer-coefficient
//! fast path over `Z[ζ_N]` used by the character-table kernels.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

static FIELDS: LazyLock<RwLock<HashMap<u32, Arc<CyclotomicField>>>> = LazyLock::new(Default::default);

/// Reduction data for `Q(ζ_N)`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    /// Coefficients of `Φ_N`, lowest degree first (monic).
    minimal_polynomial: Vec<i64>,
    /// `powers[k]` is `ζ^k` in the power basis, for `0 <= k < N`.
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    /// The shared field descriptor for `Q(ζ_order)`.
    pub fn get(order: u32) -> Arc<CyclotomicField> {
        assert!(order >= 1, "cyclotomic order must be positive");
        if let Some(f) = FIELDS.read().unwrap().get(&order) {
            return f.clone();
        }
        let field = Arc::new(Self::build(order));
        FIELDS.write().unwrap().entry(order).or_insert(field).clone()
    }

    fn build(order: u32) -> Self {
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut current = vec![0i64; degree];
        current[0] = 1;
        for _ in 0..order {
            powers.push(current.clone());
            // multiply by x and reduce
            let lead = current[degree - 1];
            let mut next = vec![0i64; degree];
            next[1..degree].copy_from_slice(&current[..(degree - 1)]);
            for (i, c) in next.iter_mut().enumerate() {
                *c -= lead * phi[i];
            }
            current = next;
        }
        CyclotomicField {
            order,
            degree,
            minimal_polynomial: phi,
            powers,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minimal_polynomial(&self) -> &[i64] {
        &self.minimal_polynomial
    }

    /// `ζ^k` in the power basis.
    pub fn power(&self, k: i64) -> &[i64] {
        &self.powers[k.rem_euclid(self.order as i64) as usize]
    }

    /// `out += a * b` over `Z[ζ]`.
    pub fn mul_add_int(&self, a: &[i128], b: &[i128], out: &mut [i128]) {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let prod = x * y;
                for (o, &c) in out.iter_mut().zip(self.power((i + j) as i64)) {
                    *o += prod * c as i128;
                }
            }
        }
    }

    pub fn mul_int(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        let mut out = vec![0; self.degree];
        self.mul_add_int(a, b, &mut out);
        out
    }

    /// Complex conjugation over `Z[ζ]`.
    pub fn conj_int(&self, a: &[i128]) -> Vec<i128> {
        let mut out = vec![0; self.degree];
        for (k, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &c) in out.iter_mut().zip(self.power(-(k as i64))) {
                *o += x * c as i128;
            }
        }
        out
    }
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = poly_div_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd] / den[dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let field = CyclotomicField::get(order);
        let coeffs = vec![BigRational::zero(); field.degree];
        Cyclotomic { field, coeffs }
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u32, value: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(value.into()))
    }

    pub fn from_rational(order: u32, value: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = value;
        z
    }

    /// `ζ_N^k`.
    pub fn zeta_power(order: u32, k: i64) -> Self {
        let field = CyclotomicField::get(order);
        let coeffs = field
            .power(k)
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        Cyclotomic { field, coeffs }
    }

    /// Builds from power-basis coefficients (length `φ(N)`).
    pub fn from_coefficients(order: u32, coeffs: Vec<BigRational>) -> Self {
        let field = CyclotomicField::get(order);
        assert_eq!(coeffs.len(), field.degree, "wrong number of power-basis coefficients");
        Cyclotomic { field, coeffs }
    }

    pub fn from_int_coefficients(order: u32, coeffs: &[i128]) -> Self {
        Self::from_coefficients(
            order,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Power-basis coefficients as integers, if all are integral.
    pub fn to_int_coefficients(&self) -> Option<Vec<i128>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i128() } else { None })
            .collect()
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True iff every non-constant coefficient vanishes.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.order != other.field.order {
            return Err(Error::FieldMismatch {
                left: self.field.order,
                right: other.field.order,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut coeffs = vec![BigRational::zero(); self.field.degree];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                for (out, &c) in coeffs.iter_mut().zip(self.field.power((i + j) as i64)) {
                    if c != 0 {
                        *out += &prod * BigInt::from(c);
                    }
                }
            }
        }
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// Re-expresses `self` in `Q(ζ_order)`, which must contain it
    /// (`self.order()` divides `order`).
    pub fn embed(&self, order: u32) -> Result<Self> {
        let from = self.field.order;
        if !order.is_multiple_of(from) {
            return Err(Error::FieldMismatch {
                left: from,
                right: order,
            });
        }
        let step = (order / from) as i64;
        let mut out = Self::zero(order);
        for (k, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                out = &out + &Self::zeta_power(order, k as i64 * step).scale(a);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Complex conjugation, `ζ^k ↦ ζ^{N-k}`.
    pub fn complex_conjugate(&self) -> Self {
        let mut coeffs = vec![BigRational::zero(); self.field.degree];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (out, &c) in coeffs.iter_mut().zip(self.field.power(-(k as i64))) {
                if c != 0 {
                    *out += a * BigInt::from(c);
                }
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Parses an integer combination of `z^k` (with `z = ζ_N`), e.g.
    /// `1`, `-1`, `z^1 - z^2`, `2 + 3*z^3`, `-z`.
    pub fn parse(order: u32, s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty cyclotomic string".into()));
        }
        let mut value = Self::zero(order);
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in cleaned.char_indices() {
            if (c == '+' || c == '-') && i > start {
                terms.push(&cleaned[start..i]);
                start = i;
            }
        }
        terms.push(&cleaned[start..]);
        for term in terms {
            value = value.try_add(&parse_term(order, term).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("{m} in {s:?}")),
                other => other,
            })?)?;
        }
        Ok(value)
    }
}

fn parse_term(order: u32, term: &str) -> Result<Cyclotomic> {
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1i64, &term[1..]),
        Some(b'+') => (1, &term[1..]),
        _ => (1, term),
    };
    if body.is_empty() {
        return Err(Error::Parse(format!("dangling sign {term:?}")));
    }
    let (coef_str, zeta_str) = match body.find('z') {
        Some(pos) => (body[..pos].trim_end_matches('*'), Some(&body[pos + 1..])),
        None => (body, None),
    };
    let coef: i64 = if coef_str.is_empty() {
        1
    } else {
        coef_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {coef_str:?}")))?
    };
    let exponent: i64 = match zeta_str {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .and_then(|e| e.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad power of z {term:?}")))?,
    };
    let z = Cyclotomic::zeta_power(order, exponent);
    Ok(z.scale(&BigRational::from_integer(BigInt::from(sign * coef))))
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        -&self
    }
}

/// Panics on mixed fields; use [`Cyclotomic::try_add`] to get an error instead.
impl Add for &Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(rhs).expect("cyclotomic field mismatch")
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_sub(rhs).expect("cyclotomic field mismatch")
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs).expect("cyclotomic field mismatch")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({self})", self.field.order)
    }
}

/// Parses in `Q(ζ_1) = Q`; only rational literals make sense here.
impl FromStr for Cyclotomic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Cyclotomic::parse(1, s)
    }
}

//! Exact commutative coefficient rings with 1.
//!
//! A [`Ring`] is a runtime descriptor; a [`RingValue`] is an immutable exact
//! value tagged (implicitly, through its variant) with the ring it lives in.
//! Binary operations on values from different rings are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ErrorClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring mismatch: {left} vs {right}")]
    Mismatch { left: Ring, right: Ring },
    #[error("Laurent exponent overflow")]
    ExponentOverflow,
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),
    #[error("cannot parse {input:?} as an element of {ring}: {reason}")]
    Parse {
        ring: String,
        input: String,
        reason: String,
    },
}

impl RingError {
    pub fn class(&self) -> ErrorClass {
        match self {
            RingError::Mismatch { .. } => ErrorClass::Precondition,
            RingError::ExponentOverflow => ErrorClass::Budget,
            RingError::InvalidModulus(_) | RingError::Parse { .. } => ErrorClass::Input,
        }
    }
}

/// Descriptor of one of the supported coefficient rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    /// ℤ
    Integers,
    /// ℚ
    Rationals,
    /// ℤ/m with m ≥ 2
    IntegersMod(u64),
    /// ℚ[x, x⁻¹]
    Laurent,
}

/// Sparse Laurent polynomial over ℚ: exponent → nonzero coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingValue {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
    Laurent(LaurentPoly),
}

impl Ring {
    pub fn integers_mod(m: u64) -> Result<Ring, RingError> {
        if m < 2 {
            return Err(RingError::InvalidModulus(m));
        }
        Ok(Ring::IntegersMod(m))
    }

    pub fn zero(&self) -> RingValue {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingValue {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> RingValue {
        match *self {
            Ring::Integers => RingValue::Int(BigInt::from(n)),
            Ring::Rationals => RingValue::Rat(BigRational::from_integer(BigInt::from(n))),
            Ring::IntegersMod(m) => RingValue::Mod {
                value: (n as i128).rem_euclid(m as i128) as u64,
                modulus: m,
            },
            Ring::Laurent => RingValue::Laurent(LaurentPoly::constant(BigRational::from_integer(
                BigInt::from(n),
            ))),
        }
    }

    /// Whether `value` belongs to this ring.
    pub fn contains(&self, value: &RingValue) -> bool {
        value.ring() == *self
    }

    fn check(&self, value: &RingValue) -> Result<(), RingError> {
        if self.contains(value) {
            Ok(())
        } else {
            Err(RingError::Mismatch {
                left: *self,
                right: value.ring(),
            })
        }
    }

    pub fn add(&self, a: &RingValue, b: &RingValue) -> Result<RingValue, RingError> {
        self.check(a)?;
        self.check(b)?;
        a.add(b)
    }

    pub fn mul(&self, a: &RingValue, b: &RingValue) -> Result<RingValue, RingError> {
        self.check(a)?;
        self.check(b)?;
        a.mul(b)
    }

    /// Parses the textual form produced by [`RingValue`]'s `Display`.
    pub fn parse_value(&self, text: &str) -> Result<RingValue, RingError> {
        let err = |reason: &str| RingError::Parse {
            ring: self.to_string(),
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        match *self {
            Ring::Integers => t
                .parse::<BigInt>()
                .map(RingValue::Int)
                .map_err(|_| err("expected an integer")),
            Ring::Rationals => parse_rational(t).map(RingValue::Rat).ok_or_else(|| err("expected a/b")),
            Ring::IntegersMod(m) => {
                let (num, modulus) = match t.split_once("mod") {
                    Some((a, b)) => (a.trim(), Some(b.trim())),
                    None => (t, None),
                };
                if let Some(ms) = modulus {
                    let given: u64 = ms.parse().map_err(|_| err("bad modulus"))?;
                    if given != m {
                        return Err(err("modulus does not match the ring"));
                    }
                }
                let n: BigInt = num.parse().map_err(|_| err("expected an integer residue"))?;
                let r = n.mod_floor(&BigInt::from(m));
                let value = u64::try_from(r).map_err(|_| err("residue out of range"))?;
                Ok(RingValue::Mod { value, modulus: m })
            }
            Ring::Laurent => LaurentPoly::parse(t).map(RingValue::Laurent).map_err(|r| err(&r)),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::IntegersMod(m) => write!(f, "Zmod:{m}"),
            Ring::Laurent => write!(f, "laurent"),
        }
    }
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| RingError::Parse {
            ring: "ring selector".into(),
            input: s.into(),
            reason: reason.into(),
        };
        match s.trim() {
            "Z" | "z" => Ok(Ring::Integers),
            "Q" | "q" => Ok(Ring::Rationals),
            "laurent" | "Laurent" => Ok(Ring::Laurent),
            other => {
                let m = other
                    .strip_prefix("Zmod:")
                    .or_else(|| other.strip_prefix("zmod:"))
                    .ok_or_else(|| bad("expected Z, Q, Zmod:<m> or laurent"))?;
                let m: u64 = m.parse().map_err(|_| bad("modulus is not an integer"))?;
                Ring::integers_mod(m)
            }
        }
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    let t = t.trim();
    match t.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(BigRational::new(a, b))
            }
        }
        None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl RingValue {
    pub fn ring(&self) -> Ring {
        match self {
            RingValue::Int(_) => Ring::Integers,
            RingValue::Rat(_) => Ring::Rationals,
            RingValue::Mod { modulus, .. } => Ring::IntegersMod(*modulus),
            RingValue::Laurent(_) => Ring::Laurent,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Int(n) => n.is_zero(),
            RingValue::Rat(r) => r.is_zero(),
            RingValue::Mod { value, .. } => *value == 0,
            RingValue::Laurent(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring().one()
    }

    fn mismatch(&self, other: &RingValue) -> RingError {
        RingError::Mismatch {
            left: self.ring(),
            right: other.ring(),
        }
    }

    pub fn add(&self, other: &RingValue) -> Result<RingValue, RingError> {
        Ok(match (self, other) {
            (RingValue::Int(a), RingValue::Int(b)) => RingValue::Int(a + b),
            (RingValue::Rat(a), RingValue::Rat(b)) => RingValue::Rat(a + b),
            (
                RingValue::Mod { value: a, modulus: m },
                RingValue::Mod { value: b, modulus: n },
            ) if m == n => RingValue::Mod {
                value: ((*a as u128 + *b as u128) % *m as u128) as u64,
                modulus: *m,
            },
            (RingValue::Laurent(a), RingValue::Laurent(b)) => RingValue::Laurent(a.add(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn mul(&self, other: &RingValue) -> Result<RingValue, RingError> {
        Ok(match (self, other) {
            (RingValue::Int(a), RingValue::Int(b)) => RingValue::Int(a * b),
            (RingValue::Rat(a), RingValue::Rat(b)) => RingValue::Rat(a * b),
            (
                RingValue::Mod { value: a, modulus: m },
                RingValue::Mod { value: b, modulus: n },
            ) if m == n => RingValue::Mod {
                value: ((*a as u128 * *b as u128) % *m as u128) as u64,
                modulus: *m,
            },
            (RingValue::Laurent(a), RingValue::Laurent(b)) => RingValue::Laurent(a.mul(b)?),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn neg(&self) -> RingValue {
        match self {
            RingValue::Int(a) => RingValue::Int(-a),
            RingValue::Rat(a) => RingValue::Rat(-a),
            RingValue::Mod { value, modulus } => RingValue::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            RingValue::Laurent(p) => RingValue::Laurent(p.neg()),
        }
    }

    pub fn sub(&self, other: &RingValue) -> Result<RingValue, RingError> {
        self.add(&other.neg())
    }

    /// True when the printed form starts with a minus sign and the value is a
    /// plain negative number, so renderers can print `a - b` instead of `a + -b`.
    pub fn is_negative_scalar(&self) -> bool {
        match self {
            RingValue::Int(a) => a.is_negative(),
            RingValue::Rat(a) => a.is_negative(),
            RingValue::Mod { .. } => false,
            RingValue::Laurent(p) => p.terms.len() == 1 && p.terms.values().all(|c| c.is_negative()),
        }
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingValue::Int(a) => write!(f, "{a}"),
            RingValue::Rat(a) => write!(f, "{}", fmt_rational(a)),
            RingValue::Mod { value, modulus } => write!(f, "{value} mod {modulus}"),
            RingValue::Laurent(p) => write!(f, "{p}"),
        }
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·x^e`
    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponent → coefficient, ascending; never contains a zero coefficient.
    pub fn terms(&self) -> &BTreeMap<i64, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    fn accumulate(terms: &mut BTreeMap<i64, BigRational>, e: i64, c: BigRational) {
        let entry = terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            terms.remove(&e);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::accumulate(&mut terms, *e, c.clone());
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.checked_add(*e2).ok_or(RingError::ExponentOverflow)?;
                Self::accumulate(&mut terms, e, c1 * c2);
            }
        }
        Ok(LaurentPoly { terms })
    }

    /// Parses `c1*x^e1 + c2*x^e2 - ...`; bare `x`, `x^e`, and constants are accepted.
    pub fn parse(text: &str) -> Result<LaurentPoly, String> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty input".into());
        }
        // Split at top-level signs; a sign directly after '^' or at the start of a
        // term belongs to that term.
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') && prev != Some('*') {
                pieces.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                negative = ch == '-';
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        pieces.push((negative, current));

        let mut poly = LaurentPoly::zero();
        for (neg, piece) in pieces {
            if piece.is_empty() {
                return Err("dangling sign".into());
            }
            let (coef, exp) = match piece.find('x') {
                None => (parse_rational(&piece).ok_or("bad constant")?, 0),
                Some(i) => {
                    let head = piece[..i].trim_end_matches('*');
                    let coef = if head.is_empty() {
                        BigRational::one()
                    } else {
                        parse_rational(head).ok_or("bad coefficient")?
                    };
                    let tail = &piece[i + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .ok_or("expected ^ after x")?
                            .parse::<i64>()
                            .map_err(|_| "bad exponent")?
                    };
                    (coef, exp)
                }
            };
            let coef = if neg { -coef } else { coef };
            poly = poly.add(&LaurentPoly::monomial(coef, exp));
        }
        Ok(poly)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let power = match e {
                0 => String::new(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            };
            match (power.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", fmt_rational(&mag))?,
                (false, true) => write!(f, "{power}")?,
                (false, false) => write!(f, "{}*{power}", fmt_rational(&mag))?,
            }
        }
        Ok(())
    }
}

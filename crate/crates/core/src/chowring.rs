//! Square-free quotient ring `Z[r_{j,i}] / (r_{j,i}^2)` over the `2g`
//! ruling classes of `(P^1 x P^1)^g`.
//!
//! Monomials are bit sets over the `2g` generator slots, ordered by factor
//! index first and ruling second, so the product of two monomials is zero
//! exactly when their bit sets intersect.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Largest number of factors a monomial bit set can hold.
pub const MAX_FACTORS: u32 = 32;

/// Classes with more terms than this are not materialized.
pub const MAX_TERMS: usize = 1 << 22;

/// The pull-back `r_{ruling, factor}` of one of the two rulings of the
/// `factor`-th quadric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    factor: u32,
    ruling: u8,
}

impl Generator {
    pub fn new(ruling: u8, factor: u32, g: u32) -> Result<Self> {
        if !(1..=2).contains(&ruling) {
            return Err(Error::Parameter(format!("ruling index must be 1 or 2, got {ruling}")));
        }
        if factor < 1 || factor > g {
            return Err(Error::Parameter(format!("factor index {factor} outside 1..={g}")));
        }
        Ok(Self { factor, ruling })
    }

    pub fn ruling(&self) -> u8 {
        self.ruling
    }

    pub fn factor(&self) -> u32 {
        self.factor
    }

    fn bit(&self) -> u32 {
        2 * (self.factor - 1) + (self.ruling as u32 - 1)
    }

    fn from_bit(bit: u32) -> Self {
        Self { factor: bit / 2 + 1, ruling: (bit % 2) as u8 + 1 }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r[{},{}]", self.ruling, self.factor)
    }
}

/// A square-free monomial, stored as the bit set of its generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_generators<I: IntoIterator<Item = Generator>>(gens: I) -> Result<Self> {
        let mut bits = 0u64;
        for gen in gens {
            let b = 1u64 << gen.bit();
            if bits & b != 0 {
                return Err(Error::Parameter(format!("generator {gen} repeated in a square-free monomial")));
            }
            bits |= b;
        }
        Ok(Monomial(bits))
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.count_ones()
    }

    /// Generators in canonical `(factor, ruling)` order.
    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        let bits = self.0;
        (0..64).filter(move |b| bits >> b & 1 == 1).map(Generator::from_bit)
    }

    /// `None` when the product vanishes.
    pub fn checked_mul(self, other: Monomial) -> Option<Monomial> {
        (self.0 & other.0 == 0).then_some(Monomial(self.0 | other.0))
    }

    /// True iff the monomial picks exactly one ruling at every factor
    /// `1..=g`, i.e. it is one of the summands `R_{i,j}` of `H_1 ··· H_g`.
    pub fn is_transversal(&self, g: u32) -> bool {
        (0..g).all(|i| (self.0 >> (2 * i) & 0b11).count_ones() == 1) && self.0 >> (2 * g) == 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for gen in self.generators() {
            write!(f, "{gen}")?;
        }
        Ok(())
    }
}

/// An integer combination of square-free monomials in `2g` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClass {
    g: u32,
    terms: BTreeMap<Monomial, i64>,
}

fn check_factors(g: u32) -> Result<()> {
    if g > MAX_FACTORS {
        return Err(Error::Resource(format!("at most {MAX_FACTORS} factors supported, got {g}")));
    }
    Ok(())
}

impl CycleClass {
    pub fn zero(g: u32) -> Result<Self> {
        check_factors(g)?;
        Ok(Self { g, terms: BTreeMap::new() })
    }

    pub fn one(g: u32) -> Result<Self> {
        Self::monomial(g, Monomial::ONE, 1)
    }

    pub fn monomial(g: u32, mono: Monomial, coeff: i64) -> Result<Self> {
        let mut c = Self::zero(g)?;
        if mono.0 >> (2 * g) != 0 {
            return Err(Error::Parameter(format!("monomial {mono} uses factors beyond g = {g}")));
        }
        if coeff != 0 {
            c.terms.insert(mono, coeff);
        }
        Ok(c)
    }

    pub fn generator(g: u32, ruling: u8, factor: u32) -> Result<Self> {
        let gen = Generator::new(ruling, factor, g)?;
        Self::monomial(g, Monomial::from_generators([gen])?, 1)
    }

    pub fn ambient_g(&self) -> u32 {
        self.g
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: Monomial) -> i64 {
        self.terms.get(&mono).copied().unwrap_or(0)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, i64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.g != other.g {
            return Err(Error::Parameter(format!(
                "classes live in different rings (g = {} and g = {})",
                self.g, other.g
            )));
        }
        Ok(())
    }

    fn accumulate(terms: &mut BTreeMap<Monomial, i64>, mono: Monomial, coeff: i64) -> Result<()> {
        let entry = terms.entry(mono).or_insert(0);
        *entry = entry.checked_add(coeff).ok_or(Error::Overflow("cycle class coefficient"))?;
        if *entry == 0 {
            terms.remove(&mono);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in other.terms() {
            Self::accumulate(&mut terms, m, c)?;
        }
        Ok(Self { g: self.g, terms })
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Self::zero(self.g);
        }
        let terms = self
            .terms()
            .map(|(m, c)| c.checked_mul(k).map(|v| (m, v)))
            .collect::<Option<BTreeMap<_, _>>>()
            .ok_or(Error::Overflow("cycle class coefficient"))?;
        Ok(Self { g: self.g, terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1)?)
    }

    /// Ring product. Any monomial with a repeated generator vanishes.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut terms = BTreeMap::new();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if let Some(ab) = a.checked_mul(b) {
                    let c = ca.checked_mul(cb).ok_or(Error::Overflow("cycle class coefficient"))?;
                    Self::accumulate(&mut terms, ab, c)?;
                    if terms.len() > MAX_TERMS {
                        return Err(Error::Resource(format!("product exceeds {MAX_TERMS} terms")));
                    }
                }
            }
        }
        Ok(Self { g: self.g, terms })
    }
}

impl fmt::Display for CycleClass {
    /// Sorted terms `±c·r[j,i]...r[j,i]` separated by single spaces; `0` for
    /// the zero class.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            let sign = if c < 0 { '-' } else { '+' };
            write!(f, "{sign}{}·{m}", c.unsigned_abs())?;
        }
        Ok(())
    }
}

impl CycleClass {
    /// Parses the text form written by `Display`, for a ring with `g`
    /// factors.
    pub fn parse(g: u32, text: &str) -> Result<Self> {
        let mut class = Self::zero(g)?;
        let text = text.trim();
        if text == "0" {
            return Ok(class);
        }
        for tok in text.split_whitespace() {
            let bad = || Error::Parameter(format!("malformed term {tok:?}"));
            let (coeff, mono) = tok.split_once('·').ok_or_else(bad)?;
            let coeff = i64::from_str(coeff).map_err(|_| bad())?;
            let mono = if mono == "1" {
                Monomial::ONE
            } else {
                let mut gens = Vec::new();
                let mut rest = mono;
                while !rest.is_empty() {
                    let body = rest.strip_prefix("r[").ok_or_else(bad)?;
                    let (inner, tail) = body.split_once(']').ok_or_else(bad)?;
                    let (j, i) = inner.split_once(',').ok_or_else(bad)?;
                    let j = u8::from_str(j).map_err(|_| bad())?;
                    let i = u32::from_str(i).map_err(|_| bad())?;
                    gens.push(Generator::new(j, i, g)?);
                    rest = tail;
                }
                Monomial::from_generators(gens)?
            };
            Self::accumulate(&mut class.terms, mono, coeff)?;
        }
        Ok(class)
    }
}

/// `H_i = r_{1,i} + r_{2,i}`.
pub fn hyperplane_class(i: u32, g: u32) -> Result<CycleClass> {
    CycleClass::generator(g, 1, i)?.add(&CycleClass::generator(g, 2, i)?)
}

/// Number of terms of `H_1 ··· H_g`, without materializing the product.
pub fn product_h_term_count(g: u32) -> BigUint {
    BigUint::from(2u8).pow(g)
}

/// `H_1 ··· H_g`, the sum of all `2^g` transversal monomials.
pub fn product_h(g: u32) -> Result<CycleClass> {
    if g == 0 {
        return Err(Error::Parameter("product of hyperplane classes needs g >= 1".into()));
    }
    check_factors(g)?;
    if product_h_term_count(g) > BigUint::from(MAX_TERMS) {
        return Err(Error::Resource(format!(
            "H_1···H_{g} has 2^{g} terms, above the cap of {MAX_TERMS}"
        )));
    }
    (1..=g).try_fold(CycleClass::one(g)?, |acc, i| acc.mul(&hyperplane_class(i, g)?))
}

/// Degree of `c · V_0`: every transversal monomial pairs to 1 with `V_0`.
/// Any other monomial is rejected.
pub fn pair_with_v0(c: &CycleClass) -> Result<i64> {
    c.terms().try_fold(0i64, |acc, (m, coeff)| {
        if !m.is_transversal(c.g) {
            return Err(Error::Shape(format!(
                "monomial {m} does not pick exactly one ruling per factor 1..={}",
                c.g
            )));
        }
        acc.checked_add(coeff).ok_or(Error::Overflow("pair_with_v0"))
    })
}

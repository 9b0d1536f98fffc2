//! Combinatorics of the reducible limits `T = X ∪ Q` and
//! `Y = W ∪ Q_1 ∪ ... ∪ Q_g` of a general scroll.
//!
//! On `Y` a unisecant curve is a unisecant of the rational normal scroll `W`
//! together with a line or a conic on each quadric `Q_j`, matched along the
//! two rulings `l_{1,j}, l_{2,j}`. Matching is modelled purely by which of
//! the two rulings each piece picks; general position is assumed throughout.

use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{self, Parity};

/// Enumerations above this many factors are count-only.
pub const MAX_ENUM_FACTORS: u32 = 20;

/// A choice of ruling `1` or `2` at each of `g` positions.
///
/// Position 1 is the most significant bit with `1 < 2`, so the integer order
/// of the encoding is the lexicographic order of the labelings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labeling {
    len: u32,
    bits: u32,
}

impl Labeling {
    pub fn from_index(len: u32, bits: u32) -> Result<Self> {
        if len > 31 || (len < 32 && bits >> len != 0) {
            return Err(Error::Parameter(format!("labeling code {bits} does not fit {len} positions")));
        }
        Ok(Self { len, bits })
    }

    pub fn from_choices(choices: &[u8]) -> Result<Self> {
        let mut bits = 0u32;
        for &c in choices {
            if !(1..=2).contains(&c) {
                return Err(Error::Parameter(format!("labeling entries must be 1 or 2, got {c}")));
            }
            bits = bits << 1 | u32::from(c == 2);
        }
        Self::from_index(choices.len() as u32, bits)
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self) -> u32 {
        self.bits
    }

    /// Choice at 1-based `position`.
    pub fn get(&self, position: u32) -> u8 {
        assert!((1..=self.len).contains(&position), "position {position} outside 1..={}", self.len);
        1 + (self.bits >> (self.len - position) & 1) as u8
    }

    pub fn choices(&self) -> Vec<u8> {
        (1..=self.len).map(|p| self.get(p)).collect()
    }

    /// Positions where the two labelings differ.
    pub fn hamming(&self, other: &Labeling) -> u32 {
        debug_assert_eq!(self.len, other.len);
        (self.bits ^ other.bits).count_ones()
    }

    /// The labeling with position `position` flipped.
    pub fn flip(&self, position: u32) -> Labeling {
        Labeling { len: self.len, bits: self.bits ^ (1 << (self.len - position)) }
    }

    /// Drops `position`, keeping the remaining choices in order.
    pub fn remove(&self, position: u32) -> Labeling {
        let below = self.len - position;
        let low = self.bits & ((1 << below) - 1);
        let high = self.bits >> (below + 1);
        Labeling { len: self.len - 1, bits: high << below | low }
    }

    /// Inserts `choice` so that it lands at `position` of the result.
    pub fn insert(&self, position: u32, choice: u8) -> Labeling {
        let below = self.len + 1 - position;
        let low = self.bits & ((1 << below) - 1);
        let high = self.bits >> below;
        let mid = u32::from(choice == 2);
        Labeling { len: self.len + 1, bits: (high << 1 | mid) << below | low }
    }

    /// All `2^len` labelings in lexicographic order.
    pub fn all(len: u32) -> impl Iterator<Item = Labeling> {
        (0..1u32 << len).map(move |bits| Labeling { len, bits })
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 1..=self.len {
            write!(f, "{}", self.get(p))?;
        }
        Ok(())
    }
}

impl Serialize for Labeling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_parity(d: i64, g: i64, parity: Parity) -> Result<()> {
    let actual = Parity::of(d, g);
    if actual != parity {
        return Err(Error::Parameter(format!("d + g = {} is {actual}, not {parity}", d + g)));
    }
    Ok(())
}

/// Dimension of `Λ_k` (odd case, `g - 2k`) or `Λ'_k` (even case,
/// `g + 1 - 2k`): the linear system on `W` of unisecants completing `k`
/// conics and `g - k` lines.
pub fn lambda_dim(g: i64, k: i64, parity: Parity) -> Result<i64> {
    if g < 0 || k < 0 {
        return Err(Error::Parameter(format!("need g, k >= 0, got g = {g}, k = {k}")));
    }
    let dim = match parity {
        Parity::Odd => g - 2 * k,
        Parity::Even => g + 1 - 2 * k,
    };
    if dim < 0 {
        return Err(Error::Infeasible(format!("linear system for k = {k} conics is empty (dim {dim})")));
    }
    Ok(dim)
}

/// Degree on `W` of the part of a minimal-degree unisecant of `Y` that has
/// `k` conics: `ν_k = (d - g - 1)/2 - k` (odd) or `μ_k = (d - g)/2 - k`
/// (even). Must be at least the minimal unisecant degree of `W`.
pub fn w_degree(d: i64, g: i64, k: i64, parity: Parity) -> Result<i64> {
    numerics::require_hdg(d, g)?;
    check_parity(d, g, parity)?;
    if k < 0 || k > g {
        return Err(Error::Parameter(format!("conic count k = {k} outside 0..={g}")));
    }
    let degree = match parity {
        Parity::Odd => (d - g - 1) / 2 - k,
        Parity::Even => (d - g) / 2 - k,
    };
    // W is a balanced rational normal scroll of degree d - 2g
    let w_min = (d - 2 * g).div_euclid(2);
    if degree < w_min {
        return Err(Error::Infeasible(format!(
            "degree {degree} on W is below its minimal unisecant degree {w_min} (k = {k}, g = {g})"
        )));
    }
    Ok(degree)
}

/// `dim(V_k ∩ H_{k+1} ∩ ... ∩ H_g)`, which has to be non-negative for the
/// lines on the last `g - k` quadrics to match.
pub fn matching_dim(k: i64, parity: Parity) -> i64 {
    match parity {
        Parity::Odd => (-k).max(-1),
        Parity::Even => (1 - k).max(-1),
    }
}

/// Conic counts `k` for which minimal-degree unisecants of `Y` exist.
pub fn admissible_k(d: i64, g: i64, parity: Parity) -> Result<Vec<i64>> {
    numerics::require_hdg(d, g)?;
    check_parity(d, g, parity)?;
    Ok((0..=g)
        .filter(|&k| {
            lambda_dim(g, k, parity).is_ok()
                && w_degree(d, g, k, parity).is_ok()
                && matching_dim(k, parity) >= 0
        })
        .collect())
}

/// The `2^g` minimal sections in the limit `Y` when `d + g` is odd, one per
/// labeling, each with degree `ν_0` on `W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddLimit {
    pub degree_on_w: i64,
    pub labelings: Vec<Labeling>,
}

fn require_enumerable(g: i64) -> Result<u32> {
    if g > MAX_ENUM_FACTORS as i64 {
        return Err(Error::Resource(format!(
            "enumeration is capped at g <= {MAX_ENUM_FACTORS}, got {g}; use the count"
        )));
    }
    Ok(g as u32)
}

pub fn limit_unisecants_odd(d: i64, g: i64) -> Result<OddLimit> {
    numerics::require_hdg(d, g)?;
    check_parity(d, g, Parity::Odd)?;
    let len = require_enumerable(g)?;
    Ok(OddLimit {
        degree_on_w: w_degree(d, g, 0, Parity::Odd)?,
        labelings: Labeling::all(len).collect(),
    })
}

/// Count of [`limit_unisecants_odd`] without materializing it.
pub fn limit_unisecant_count_odd(d: i64, g: i64) -> Result<BigUint> {
    numerics::require_hdg(d, g)?;
    check_parity(d, g, Parity::Odd)?;
    Ok(BigUint::from(2u8).pow(g as u32))
}

/// Which piece of the limit family a component is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum ComponentKind {
    /// Lines on every quadric, chosen by the labeling; the family is a
    /// pencil on `W`.
    #[serde(rename = "xi")]
    PencilXi { labeling: Labeling },
    /// A pencil of conics on `Q_l` and lines on the other quadrics, chosen
    /// by the partial labeling of `{1..g} \ {l}`.
    #[serde(rename = "xi_prime")]
    ConicXiPrime { l: u32, partial: Labeling },
}

impl ComponentKind {
    /// Stable identifier: `xi_<labeling>` or `xip_<l>_<partial>`.
    pub fn id(&self) -> String {
        match self {
            ComponentKind::PencilXi { labeling } => format!("xi_{labeling}"),
            ComponentKind::ConicXiPrime { l, partial } => format!("xip_{l}_{partial}"),
        }
    }

    pub fn is_xi(&self) -> bool {
        matches!(self, ComponentKind::PencilXi { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LimitComponent {
    #[serde(flatten)]
    pub kind: ComponentKind,
    pub k: i64,
    pub degree_on_w: i64,
    pub family_dim: i64,
}

/// The pieces of the limit in `Y` of the one-dimensional family of
/// minimal-degree unisecants when `d + g` is even: `2^g` components of type
/// `Ξ` followed by `g·2^{g-1}` of type `Ξ'`, ordered by `l` and then by
/// partial labeling.
pub fn limit_components_even(d: i64, g: i64) -> Result<Vec<LimitComponent>> {
    numerics::require_hdg(d, g)?;
    check_parity(d, g, Parity::Even)?;
    if g < 1 {
        return Err(Error::Parameter("even-case limit components need g >= 1".into()));
    }
    let len = require_enumerable(g)?;
    let pencil = LimitComponent {
        kind: ComponentKind::PencilXi { labeling: Labeling { len: 0, bits: 0 } },
        k: 0,
        degree_on_w: w_degree(d, g, 0, Parity::Even)?,
        family_dim: lambda_dim(g, 0, Parity::Even)?,
    };
    let conic = LimitComponent {
        kind: pencil.kind,
        k: 1,
        degree_on_w: w_degree(d, g, 1, Parity::Even)?,
        family_dim: lambda_dim(g, 1, Parity::Even)?,
    };
    let xis = Labeling::all(len).map(|labeling| LimitComponent {
        kind: ComponentKind::PencilXi { labeling },
        ..pencil
    });
    let xips = (1..=len).flat_map(|l| {
        Labeling::all(len - 1).map(move |partial| LimitComponent {
            kind: ComponentKind::ConicXiPrime { l, partial },
            ..conic
        })
    });
    Ok(xis.chain(xips).collect())
}

/// `2^{g-1}(g + 2)`: the number of [`limit_components_even`].
pub fn limit_component_count_even(g: u32) -> BigUint {
    if g == 0 {
        return BigUint::from(1u8);
    }
    (BigUint::from(1u8) << (g - 1)) * BigUint::from(g + 2)
}

/// One irreducible piece `G_T^{m_X}` of the unisecants of degree `m` on
/// `T = X ∪ Q`: a degree-`m_X` unisecant on `X` glued to a degree
/// `m - m_X` unisecant on the quadric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplittingEntry {
    pub m_x: i64,
    pub dim_on_x: i64,
    pub dim_component: i64,
}

impl SplittingEntry {
    /// Dimension of the curves of type `(1, m - m_X - 1)` on the quadric.
    pub fn quadric_family_dim(&self, m: i64) -> i64 {
        2 * (m - self.m_x) - 1
    }

    /// Recomputes the component dimension from the two sides: the fibre over
    /// the `X`-side loses two matching conditions when `m - m_X > 1`, and one
    /// when `m - m_X = 1` (the quadric side is then a single `(1,1)` curve
    /// condition on `X`).
    pub fn glued_dim(&self, m: i64) -> i64 {
        if m - self.m_x > 1 {
            self.dim_on_x + self.quadric_family_dim(m) - 2
        } else {
            self.dim_on_x - 1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingRange {
    pub entries: Vec<SplittingEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Admissible splittings `m_X` for unisecants of degree `m` on `T`.
///
/// `m_X` runs from `⌊(d + g - 3)/2⌋` (which is `(d + g - 3)/2` or
/// `(d + g - 4)/2` according to parity) up to `m - 1`. When `d_m > 0` each
/// entry is one irreducible component.
pub fn splitting_range(d: i64, g: i64, m: i64) -> Result<SplittingRange> {
    if g < 1 {
        return Err(Error::Parameter("splitting needs g >= 1".into()));
    }
    let dm = numerics::expected_dim(d, g, m)?;
    if dm < 0 {
        return Ok(SplittingRange {
            entries: Vec::new(),
            note: Some(format!("d_m = -1: no unisecant curves of degree {m}")),
        });
    }
    if d < 3 {
        return Err(Error::Domain(format!("T = X ∪ Q needs deg X = d - 2 >= 1, got d = {d}")));
    }
    let low = (d + g - 3).div_euclid(2);
    let entries = (low..m)
        .map(|m_x| {
            Ok(SplittingEntry {
                m_x,
                dim_on_x: numerics::expected_dim(d - 2, g - 1, m_x)?,
                dim_component: dm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let note = (dm == 0).then(|| "d_m = 0: finitely many curves".to_string());
    Ok(SplittingRange { entries, note })
}

//! Closed-form numerology of linearly normal scrolls and of rank-two bundles
//! over their base curve.
//!
//! Everything here is exact integer or rational arithmetic. Formula
//! arithmetic is checked 64-bit; counts that grow like `2^g` are returned as
//! [`BigUint`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

fn ovf(what: &'static str) -> Error {
    Error::Overflow(what)
}

/// `2g + 3 + min{1, g - 1}`: the smallest degree for which the component of
/// general smooth non-special scrolls exists.
pub fn degree_bound(g: i64) -> Result<i64> {
    if g < 0 {
        return Err(Error::Parameter(format!("genus must be >= 0, got {g}")));
    }
    let k = 1.min(g - 1);
    g.checked_mul(2)
        .and_then(|v| v.checked_add(3 + k))
        .ok_or_else(|| ovf("degree_bound"))
}

/// True iff `d >= 2g + 3 + min{1, g - 1}`.
pub fn in_hdg(d: i64, g: i64) -> bool {
    matches!(degree_bound(g), Ok(b) if d >= b)
}

/// Smoothness of the general member: `g = 0`, or `g = 1` and `d >= 5`, or
/// `g >= 2` and `d >= 2g + 4`.
pub fn is_smooth(d: i64, g: i64) -> bool {
    match g {
        0 => true,
        1 => d >= 5,
        g if g >= 2 => g.checked_mul(2).and_then(|v| v.checked_add(4)).is_some_and(|b| d >= b),
        _ => false,
    }
}

fn check_dg(d: i64, g: i64) -> Result<()> {
    if g < 0 {
        return Err(Error::Parameter(format!("genus must be >= 0, got {g}")));
    }
    if d < 1 {
        return Err(Error::Parameter(format!("degree must be >= 1, got {d}")));
    }
    Ok(())
}

/// Fails with a domain error unless `(d, g)` satisfies the degree bound.
pub fn require_hdg(d: i64, g: i64) -> Result<()> {
    check_dg(d, g)?;
    let bound = degree_bound(g)?;
    if d < bound {
        return Err(Error::Domain(format!(
            "(d, g) = ({d}, {g}) violates d >= 2g + 3 + min{{1, g - 1}} = {bound}"
        )));
    }
    Ok(())
}

/// Numerology of a linearly normal scroll.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScrollParams {
    pub d: i64,
    pub g: i64,
    pub h1: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
}

impl ScrollParams {
    /// A non-special scroll of degree `d` and genus `g`.
    pub fn new(d: i64, g: i64) -> Result<Self> {
        check_dg(d, g)?;
        Ok(Self { d, g, h1: 0, m: None })
    }

    pub fn with_speciality(mut self, h1: i64) -> Result<Self> {
        if h1 < 0 {
            return Err(Error::Parameter(format!("speciality must be >= 0, got {h1}")));
        }
        self.h1 = h1;
        Ok(self)
    }

    pub fn with_unisecant_degree(mut self, m: i64) -> Result<Self> {
        if m < 0 {
            return Err(Error::Parameter(format!("unisecant degree must be >= 0, got {m}")));
        }
        self.m = Some(m);
        Ok(self)
    }

    pub fn in_hdg(&self) -> bool {
        in_hdg(self.d, self.g)
    }

    pub fn is_smooth(&self) -> bool {
        is_smooth(self.d, self.g)
    }

    pub fn ambient_dim(&self) -> Result<i64> {
        ambient_dim(self.d, self.g, self.h1, false)
    }
}

/// Parity of `d + g`, which decides whether minimal sections are finitely
/// many or move in a pencil-like family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(d: i64, g: i64) -> Self {
        if (d + g).rem_euclid(2) == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// Report produced by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub params: ScrollParams,
    pub degree_bound: i64,
    pub in_hdg: bool,
    pub smooth: bool,
    pub parity: Parity,
    pub ambient_dim: i64,
}

/// Checks `(d, g)` against the degree bound. In advisory mode a violation is
/// reported in the result; in strict mode it is an error.
pub fn validate(d: i64, g: i64, strict: bool) -> Result<Validation> {
    let params = ScrollParams::new(d, g)?;
    if strict {
        require_hdg(d, g)?;
    }
    Ok(Validation {
        params,
        degree_bound: degree_bound(g)?,
        in_hdg: params.in_hdg(),
        smooth: params.is_smooth(),
        parity: Parity::of(d, g),
        ambient_dim: params.ambient_dim()?,
    })
}

/// Expected dimension `max{-1, 2m - d - g + 1}` of the scheme of degree-`m`
/// unisecant curves.
pub fn expected_dim(d: i64, g: i64, m: i64) -> Result<i64> {
    check_dg(d, g)?;
    if m < 0 {
        return Err(Error::Parameter(format!("unisecant degree must be >= 0, got {m}")));
    }
    let raw = m
        .checked_mul(2)
        .and_then(|v| v.checked_sub(d))
        .and_then(|v| v.checked_sub(g))
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| ovf("expected_dim"))?;
    Ok(raw.max(-1))
}

/// `R = d - 2g + 1 + h1`. With `enforce_segre_bound` the speciality is also
/// required to satisfy `h1 <= g`.
pub fn ambient_dim(d: i64, g: i64, h1: i64, enforce_segre_bound: bool) -> Result<i64> {
    if h1 < 0 {
        return Err(Error::Parameter(format!("speciality must be >= 0, got {h1}")));
    }
    if enforce_segre_bound && h1 > g {
        return Err(Error::Parameter(format!("speciality {h1} exceeds the bound h1 <= g = {g}")));
    }
    g.checked_mul(2)
        .and_then(|tg| d.checked_sub(tg))
        .and_then(|v| v.checked_add(1))
        .and_then(|v| v.checked_add(h1))
        .ok_or_else(|| ovf("ambient_dim"))
}

/// Dimension `7(g - 1) + (d - 2g + 2)^2` of the component of general scrolls.
pub fn hilbert_dim(d: i64, g: i64) -> Result<i64> {
    require_hdg(d, g)?;
    let r1 = ambient_dim(d, g, 0, false)?
        .checked_add(1)
        .ok_or_else(|| ovf("hilbert_dim"))?;
    let sq = r1.checked_mul(r1).ok_or_else(|| ovf("hilbert_dim"))?;
    (g - 1)
        .checked_mul(7)
        .and_then(|v| v.checked_add(sq))
        .ok_or_else(|| ovf("hilbert_dim"))
}

/// Where a block of moduli comes from in the parameter count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParameterSource {
    CurveModuli,
    BundleModuli,
    Projectivities,
    CurveAction,
}

impl fmt::Display for ParameterSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParameterSource::CurveModuli => "curve moduli",
            ParameterSource::BundleModuli => "bundle moduli",
            ParameterSource::Projectivities => "projectivities",
            ParameterSource::CurveAction => "curve action",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParameterBlock {
    pub source: ParameterSource,
    pub count: i64,
}

/// Breakdown of the general point of the component into curve, bundle and
/// projective parameters. Sums to [`hilbert_dim`].
///
/// For `g = 1` the bundle count and the stabilizer of the scroll depend on
/// the parity of `d`, and the translations of the elliptic curve act on the
/// bundles, which removes one parameter. `g = 0` has no breakdown.
pub fn parameter_count(d: i64, g: i64) -> Result<Vec<ParameterBlock>> {
    require_hdg(d, g)?;
    let r1 = ambient_dim(d, g, 0, false)? + 1;
    let projective = r1
        .checked_mul(r1)
        .map(|v| v - 1)
        .ok_or_else(|| ovf("parameter_count"))?;
    let block = |source, count| ParameterBlock { source, count };
    match g {
        0 => Err(Error::Parameter(
            "no parameter breakdown is available for g = 0".into(),
        )),
        1 => {
            let (bundle, stabilizer) = if d % 2 == 1 { (1, 0) } else { (2, 1) };
            Ok(vec![
                block(ParameterSource::CurveModuli, 1),
                block(ParameterSource::BundleModuli, bundle),
                block(ParameterSource::Projectivities, projective - stabilizer),
                block(ParameterSource::CurveAction, -1),
            ])
        }
        _ => {
            let curve = g.checked_mul(3).map(|v| v - 3).ok_or_else(|| ovf("parameter_count"))?;
            let bundle = g.checked_mul(4).map(|v| v - 3).ok_or_else(|| ovf("parameter_count"))?;
            Ok(vec![
                block(ParameterSource::CurveModuli, curve),
                block(ParameterSource::BundleModuli, bundle),
                block(ParameterSource::Projectivities, projective),
            ])
        }
    }
}

fn pow2(g: i64) -> BigUint {
    BigUint::from(1u8) << (g as u64)
}

/// Shape of the family of minimal-degree unisecant curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalFamily {
    /// Finitely many sections, exactly this many.
    FiniteCount(BigUint),
    /// A smooth irreducible one-dimensional family.
    OneDimFamily,
}

impl Serialize for MinimalFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MinimalFamily", 2)?;
        match self {
            MinimalFamily::FiniteCount(n) => {
                st.serialize_field("kind", "finite_count")?;
                st.serialize_field("count", &n.to_string())?;
            }
            MinimalFamily::OneDimFamily => {
                st.serialize_field("kind", "one_dim_family")?;
                st.serialize_field("count", &Option::<String>::None)?;
            }
        }
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalSections {
    pub degree: i64,
    pub family: MinimalFamily,
}

/// Minimal degree of unisecant curves on the general scroll, together with
/// the shape of the family attaining it.
pub fn min_unisecant_degree(d: i64, g: i64) -> Result<MinimalSections> {
    require_hdg(d, g)?;
    let s = d.checked_add(g).ok_or_else(|| ovf("min_unisecant_degree"))?;
    Ok(match Parity::of(d, g) {
        Parity::Odd => MinimalSections {
            degree: (s - 1) / 2,
            family: MinimalFamily::FiniteCount(pow2(g)),
        },
        Parity::Even => MinimalSections {
            degree: s / 2,
            family: MinimalFamily::OneDimFamily,
        },
    })
}

/// Number of degree-`m` unisecants through `d_m` general points: `2^g`.
pub fn index(d: i64, g: i64, m: i64) -> Result<BigUint> {
    require_hdg(d, g)?;
    let dm = expected_dim(d, g, m)?;
    if dm <= 0 {
        return Err(Error::Precondition(format!(
            "index defined only for positive-dimensional families (d_m = {dm})"
        )));
    }
    Ok(pow2(g))
}

/// Image of the scroll under projection from `d_m` general points of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionImage {
    /// `(d', g, m')` of the projected scroll and curve.
    pub params: ScrollParams,
    pub ambient_dim: i64,
    /// `d_{m'}` on the image; always 0.
    pub expected_dim: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Projects from `d_m` general points: `d' = 2d + g - 2m - 1`,
/// `m' = d + g - 1 - m`, `R' = d' - 2g + 1`.
///
/// The image always has `d' + g` odd and `d_{m'} = 0`. If `d'` falls below
/// the degree bound the result carries a warning; if `d' < 1` there is no
/// image scroll and an error is returned.
pub fn projection_reduction(d: i64, g: i64, m: i64) -> Result<ProjectionImage> {
    let dm = expected_dim(d, g, m)?;
    if dm <= 0 {
        return Err(Error::Precondition(format!(
            "projection needs a positive-dimensional family (d_m = {dm})"
        )));
    }
    let d_img = d.checked_sub(dm).ok_or_else(|| ovf("projection_reduction"))?;
    let m_img = m.checked_sub(dm).ok_or_else(|| ovf("projection_reduction"))?;
    debug_assert_eq!(Some(d_img), d.checked_mul(2).map(|v| v + g - 2 * m - 1));
    debug_assert_eq!(m_img, d + g - 1 - m);
    if d_img < 1 {
        return Err(Error::Domain(format!(
            "projection from {dm} points leaves degree {d_img}; no image scroll"
        )));
    }
    let params = ScrollParams::new(d_img, g)?.with_unisecant_degree(m_img)?;
    let ambient = ambient_dim(d_img, g, 0, false)?;
    let expected = expected_dim(d_img, g, m_img)?;
    if Parity::of(d_img, g) != Parity::Odd || expected != 0 {
        return Err(Error::Internal(format!(
            "projection image ({d_img}, {g}, {m_img}) has d' + g even or d_m' = {expected}"
        )));
    }
    let warning = (!in_hdg(d_img, g)).then(|| {
        format!(
            "projected degree {d_img} is below the bound {} for genus {g}",
            degree_bound(g).unwrap_or(i64::MAX)
        )
    });
    Ok(ProjectionImage { params, ambient_dim: ambient, expected_dim: expected, warning })
}

/// Exact slope `deg / rank`, always reduced with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope(Ratio<i64>);

impl Slope {
    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn as_ratio(&self) -> Ratio<i64> {
        self.0
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Slope", 2)?;
        st.serialize_field("numerator", &self.numer())?;
        st.serialize_field("denominator", &self.denom())?;
        st.end()
    }
}

pub fn slope(degree: i64, rank: i64) -> Result<Slope> {
    if rank < 1 {
        return Err(Error::Parameter(format!("rank must be >= 1, got {rank}")));
    }
    Ok(Slope(Ratio::new(degree, rank)))
}

/// `L_1 ⊕ L_2`, with optional specialities of the summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecomposableBundle {
    pub summand_degrees: (i64, i64),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summand_h1: Option<(u64, u64)>,
}

impl DecomposableBundle {
    pub fn new(deg1: i64, deg2: i64) -> Self {
        Self { summand_degrees: (deg1, deg2), summand_h1: None }
    }

    pub fn degree(&self) -> Result<i64> {
        self.summand_degrees
            .0
            .checked_add(self.summand_degrees.1)
            .ok_or_else(|| ovf("bundle degree"))
    }

    pub fn speciality(&self) -> Option<Result<i64>> {
        self.summand_h1
            .map(|(a, b)| speciality_decomposable(&[a as i64, b as i64]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityKind {
    Stable,
    StrictlySemistable,
    Unstable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Summand {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub kind: StabilityKind,
    pub destabilizer: Option<Summand>,
    pub slope: Slope,
}

/// A decomposable bundle is never stable: it is strictly semistable when the
/// summands have equal degree, and otherwise destabilized by the larger one.
pub fn classify_decomposable(b: &DecomposableBundle) -> Result<StabilityVerdict> {
    let (d1, d2) = b.summand_degrees;
    let slope = slope(b.degree()?, 2)?;
    let (kind, destabilizer) = match d1.cmp(&d2) {
        Ordering::Equal => (StabilityKind::StrictlySemistable, None),
        Ordering::Greater => (StabilityKind::Unstable, Some(Summand::First)),
        Ordering::Less => (StabilityKind::Unstable, Some(Summand::Second)),
    };
    Ok(StabilityVerdict { kind, destabilizer, slope })
}

/// What a sub-line bundle of degree `deg_n` says about a rank-two bundle of
/// degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SublineWitness {
    WitnessesUnstable,
    WitnessesStrictBound,
    ConsistentWithStable,
}

pub fn classify_subline(deg_n: i64, d: i64) -> Result<SublineWitness> {
    let lhs = Ratio::from_integer(deg_n);
    let mu = slope(d, 2)?.as_ratio();
    Ok(match lhs.cmp(&mu) {
        Ordering::Greater => SublineWitness::WitnessesUnstable,
        Ordering::Equal => SublineWitness::WitnessesStrictBound,
        Ordering::Less => SublineWitness::ConsistentWithStable,
    })
}

/// Speciality of a direct sum: the sum of the summands' specialities.
pub fn speciality_decomposable(h1_summands: &[i64]) -> Result<i64> {
    if h1_summands.is_empty() {
        return Err(Error::Parameter("need at least one summand".into()));
    }
    h1_summands.iter().try_fold(0i64, |acc, &h| {
        if h < 0 {
            return Err(Error::Parameter(format!("negative speciality {h}")));
        }
        acc.checked_add(h).ok_or_else(|| ovf("speciality_decomposable"))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeTest {
    pub is_cone: bool,
    /// Set when the speciality forces `O_C ⊕ L` but the bundle was declared
    /// otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inconsistency: Option<String>,
}

/// Equality case `h1 = g` of the speciality bound, which holds only for
/// cones, i.e. for `F = O_C ⊕ L`.
pub fn cone_test(d: i64, g: i64, h1: i64, decomposable_with_trivial_summand: bool) -> Result<ConeTest> {
    if g < 1 {
        return Err(Error::Precondition(format!("cone test needs g >= 1, got {g}")));
    }
    if d < 2 * g + 2 {
        return Err(Error::Precondition(format!("cone test needs d >= 2g + 2 = {}, got {d}", 2 * g + 2)));
    }
    if h1 < 0 {
        return Err(Error::Parameter(format!("speciality must be >= 0, got {h1}")));
    }
    if h1 > g {
        return Err(Error::Parameter(format!("speciality {h1} violates h1 <= g = {g}")));
    }
    let is_cone = h1 == g;
    let inconsistency = (is_cone && !decomposable_with_trivial_summand)
        .then(|| "h1 = g forces the bundle to be O_C ⊕ L".to_string());
    Ok(ConeTest { is_cone, inconsistency })
}

/// Self-intersection `2m - d` of a unisecant of degree `m`.
pub fn self_intersection(d: i64, m: i64) -> Result<i64> {
    m.checked_mul(2)
        .and_then(|v| v.checked_sub(d))
        .ok_or_else(|| ovf("self_intersection"))
}

/// Canonical class `K ≡ -2H + (d + 2g - 2) f` in terms of hyperplane and fibre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CanonicalClass {
    pub coeff_h: i64,
    pub coeff_f: i64,
}

pub fn canonical_class(d: i64, g: i64) -> Result<CanonicalClass> {
    let coeff_f = g
        .checked_mul(2)
        .and_then(|v| v.checked_add(d))
        .and_then(|v| v.checked_sub(2))
        .ok_or_else(|| ovf("canonical_class"))?;
    Ok(CanonicalClass { coeff_h: -2, coeff_f })
}

/// Whether a degree-`m` unisecant of a non-special scroll is linearly
/// normally embedded: `m <= d - 2g + 1`.
pub fn linearly_normal_threshold(d: i64, g: i64, m: i64) -> Result<bool> {
    if g < 1 || d < 2 * g + 2 {
        return Err(Error::Domain(format!(
            "linear normality threshold needs g >= 1 and d >= 2g + 2, got (d, g) = ({d}, {g})"
        )));
    }
    Ok(m <= ambient_dim(d, g, 0, false)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonspecialRegime {
    /// Every semistable bundle of this degree is non-special.
    AllSemistableNonspecial,
    /// The general semistable bundle is non-special.
    GenericNonspecial,
    NoGuarantee,
}

pub fn nonspecial_thresholds(d: i64, g: i64) -> Result<NonspecialRegime> {
    if g < 1 {
        return Err(Error::Parameter(format!("genus must be >= 1, got {g}")));
    }
    let all = g.checked_mul(4).map(|v| v - 3).ok_or_else(|| ovf("nonspecial_thresholds"))?;
    Ok(if d >= all {
        NonspecialRegime::AllSemistableNonspecial
    } else if g >= 2 && d >= 2 * g {
        NonspecialRegime::GenericNonspecial
    } else {
        NonspecialRegime::NoGuarantee
    })
}

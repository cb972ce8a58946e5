//! Constructors and classifiers for C-sets: countable compact plane sets
//! whose only limit point is the origin, described lazily as point families
//! (rays from the origin or named sequences) plus finitely many extra points,
//! truncatable to finite sets.
//!
//! Desk-scale computation only ever touches finite truncations; limit claims
//! are phrased over the truncation index.

use crate::error::{Error, Result};
use crate::geometry::PlanarPoint;
use crate::scalar::{q, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeSet;

/// A nonempty finite set of exact points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSet {
    points: BTreeSet<PlanarPoint>,
}

impl FiniteSet {
    pub fn new<I: IntoIterator<Item = PlanarPoint>>(points: I) -> Result<FiniteSet> {
        let points: BTreeSet<PlanarPoint> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(FiniteSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &PlanarPoint) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &PlanarPoint> {
        self.points.iter()
    }

    /// Points in canonical (lexicographic) order.
    pub fn sorted_points(&self) -> Vec<PlanarPoint> {
        self.points.iter().cloned().collect()
    }

    pub fn is_subset_of(&self, other: &FiniteSet) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn with_point(&self, p: PlanarPoint) -> FiniteSet {
        let mut points = self.points.clone();
        points.insert(p);
        FiniteSet { points }
    }

    pub fn without_point(&self, p: &PlanarPoint) -> Result<FiniteSet> {
        let mut points = self.points.clone();
        points.remove(p);
        FiniteSet::new(points)
    }

    /// All points lie on one line.
    pub fn is_collinear(&self) -> bool {
        let pts = self.sorted_points();
        if pts.len() <= 2 {
            return true;
        }
        let p0 = &pts[0];
        let p1 = &pts[1];
        let dx = &p1.x - &p0.x;
        let dy = &p1.y - &p0.y;
        pts.iter().skip(2).all(|p| {
            let ex = &p.x - &p0.x;
            let ey = &p.y - &p0.y;
            (&dx * &ey - &dy * &ex).is_zero()
        })
    }
}

impl Serialize for FiniteSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.sorted_points().serialize(s)
    }
}

/// Strictly decreasing positive modulus rule with limit zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayRule {
    /// 1/i
    Harmonic,
    /// 1/i^p with p >= 1
    PowerHarmonic(u32),
    /// ratio^i with 0 < ratio < 1
    Geometric {
        #[serde(with = "crate::scalar::serde_q")]
        ratio: Q,
    },
}

impl DecayRule {
    pub fn validate(&self) -> Result<()> {
        match self {
            DecayRule::Harmonic => Ok(()),
            DecayRule::PowerHarmonic(p) => {
                if *p >= 1 {
                    Ok(())
                } else {
                    Err(Error::InvalidRule("power must be >= 1".into()))
                }
            }
            DecayRule::Geometric { ratio } => {
                if ratio.is_positive() && ratio < &Q::one() {
                    Ok(())
                } else {
                    Err(Error::InvalidRule(format!(
                        "geometric ratio {ratio} must lie in (0, 1)"
                    )))
                }
            }
        }
    }

    /// The i-th scale, i >= 1.
    pub fn value(&self, i: u64) -> Q {
        match self {
            DecayRule::Harmonic => q(1, i as i64),
            DecayRule::PowerHarmonic(p) => {
                let base = BigInt::from(i);
                let mut den = BigInt::one();
                for _ in 0..*p {
                    den *= &base;
                }
                Q::new(BigInt::one(), den)
            }
            DecayRule::Geometric { ratio } => {
                let mut v = Q::one();
                for _ in 0..i {
                    v *= ratio;
                }
                v
            }
        }
    }

    /// Smallest index whose scale is strictly below `threshold`.
    pub fn first_index_below(&self, threshold: &Q) -> u64 {
        let mut i = 1u64;
        while &self.value(i) >= threshold {
            i += 1;
        }
        i
    }
}

/// A ray from the origin holding infinitely many set points: the i-th point
/// is `direction` scaled by the i-th value of the rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaySpec {
    #[serde(with = "crate::scalar::serde_q_pair")]
    pub direction: (Q, Q),
    pub rule: DecayRule,
}

impl RaySpec {
    pub fn new(direction: (Q, Q), rule: DecayRule) -> Result<RaySpec> {
        if direction.0.is_zero() && direction.1.is_zero() {
            return Err(Error::InvalidRule("ray direction must be nonzero".into()));
        }
        rule.validate()?;
        Ok(RaySpec { direction, rule })
    }

    pub fn point(&self, i: u64) -> PlanarPoint {
        let t = self.rule.value(i);
        PlanarPoint::new(&self.direction.0 * &t, &self.direction.1 * &t)
    }

    /// Signed canonical direction key; rays are half-lines, so the sign of
    /// the direction matters.
    pub fn direction_key(&self) -> (Q, Q) {
        signed_direction_key(&self.direction.0, &self.direction.1)
    }

    /// Whether `p` is one of the ray's points (exact).
    pub fn contains(&self, p: &PlanarPoint) -> bool {
        if p.is_origin() {
            return false;
        }
        // p = direction * t with t > 0
        let t = if !self.direction.0.is_zero() {
            &p.x / &self.direction.0
        } else {
            &p.y / &self.direction.1
        };
        if !t.is_positive() {
            return false;
        }
        if &self.direction.0 * &t != p.x || &self.direction.1 * &t != p.y {
            return false;
        }
        let i = self.rule.first_index_below(&t);
        i > 1 && self.rule.value(i - 1) == t
    }
}

fn signed_direction_key(dx: &Q, dy: &Q) -> (Q, Q) {
    let scale = if !dx.is_zero() { dx.abs() } else { dy.abs() };
    (dx / &scale, dy / &scale)
}

/// Total angle order on nonzero directions, counterclockwise from the
/// positive x-axis.
pub fn cmp_by_angle(d1: &(Q, Q), d2: &(Q, Q)) -> Ordering {
    fn octant(d: &(Q, Q)) -> u8 {
        let xs = if d.0.is_zero() { 0 } else if d.0.is_positive() { 1 } else { -1 };
        let ys = if d.1.is_zero() { 0 } else if d.1.is_positive() { 1 } else { -1 };
        match (xs, ys) {
            (1, 0) => 0,
            (1, 1) => 1,
            (0, 1) => 2,
            (-1, 1) => 3,
            (-1, 0) => 4,
            (-1, -1) => 5,
            (0, -1) => 6,
            (1, -1) => 7,
            _ => unreachable!("zero direction"),
        }
    }
    let o1 = octant(d1);
    let o2 = octant(d2);
    if o1 != o2 {
        return o1.cmp(&o2);
    }
    if o1.is_multiple_of(2) {
        // Same axis octant: same angle.
        return Ordering::Equal;
    }
    // Within an open quadrant the angle increases with the slope y/x.
    let s1 = &d1.1 / &d1.0;
    let s2 = &d2.1 / &d2.0;
    s1.cmp(&s2)
}

/// A lazily described point family of a C-set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointFamily {
    Ray(RaySpec),
    /// The j-th point is (1/j, 1/j²).
    Parabola,
    /// Points approx(e^{i/m})/n enumerated along diagonals n + m = const,
    /// with cos/sin approximated by decimal rationals of the given precision.
    Spiral { precision: u32 },
}

impl PointFamily {
    pub fn point(&self, i: u64) -> PlanarPoint {
        match self {
            PointFamily::Ray(ray) => ray.point(i),
            PointFamily::Parabola => {
                let j = i as i64;
                PlanarPoint::new(q(1, j), q(1, j * j))
            }
            PointFamily::Spiral { precision } => {
                let (n, m) = diagonal_pair(i);
                let dir = spiral_direction(m, *precision);
                PlanarPoint::new(&dir.0 * &q(1, n as i64), &dir.1 * &q(1, n as i64))
            }
        }
    }

    /// Families whose moduli strictly decrease along the enumeration.
    pub fn modulus_monotone(&self) -> bool {
        matches!(self, PointFamily::Ray(_) | PointFamily::Parabola)
    }
}

/// The i-th pair (n, m) of the diagonal enumeration (1,1), (1,2), (2,1), ...
fn diagonal_pair(i: u64) -> (u64, u64) {
    let mut remaining = i - 1;
    let mut diag = 1u64;
    while remaining >= diag {
        remaining -= diag;
        diag += 1;
    }
    let n = remaining + 1;
    (n, diag + 1 - n)
}

/// Decimal rational approximation of (cos(1/m), sin(1/m)).
fn spiral_direction(m: u64, precision: u32) -> (Q, Q) {
    let theta = 1.0 / m as f64;
    let scale = BigInt::from(10u32).pow(precision);
    let approx = |v: f64| -> Q {
        let scaled = (v * 10f64.powi(precision as i32)).round() as i64;
        Q::new(BigInt::from(scaled), scale.clone())
    };
    (approx(theta.cos()), approx(theta.sin()))
}

/// Lazy description of a C-set: point families plus finitely many extra
/// points; the origin always belongs to the set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CSetSpec {
    pub families: Vec<PointFamily>,
    pub extras: BTreeSet<PlanarPoint>,
    /// Free-form notes, e.g. records of rational angle approximations.
    pub metadata: Vec<String>,
}

impl CSetSpec {
    pub fn new(
        families: Vec<PointFamily>,
        extras: BTreeSet<PlanarPoint>,
        metadata: Vec<String>,
    ) -> Result<CSetSpec> {
        let mut keys = BTreeSet::new();
        for f in &families {
            if let PointFamily::Ray(ray) = f {
                if !keys.insert(ray.direction_key()) {
                    return Err(Error::DuplicateRayAngles);
                }
            }
        }
        for e in &extras {
            if e.is_origin() {
                return Err(Error::ExtrasOnRay);
            }
            for f in &families {
                if let PointFamily::Ray(ray) = f {
                    if ray.contains(e) {
                        return Err(Error::ExtrasOnRay);
                    }
                }
            }
        }
        Ok(CSetSpec {
            families,
            extras,
            metadata,
        })
    }

    /// Ray families only, in construction order.
    pub fn rays(&self) -> Vec<&RaySpec> {
        self.families
            .iter()
            .filter_map(|f| match f {
                PointFamily::Ray(r) => Some(r),
                _ => None,
            })
            .collect()
    }

    pub fn is_kray(&self) -> bool {
        !self.families.is_empty()
            && self.families.iter().all(|f| matches!(f, PointFamily::Ray(_)))
    }

    pub fn is_strict_kray(&self) -> bool {
        self.is_kray() && self.extras.is_empty()
    }
}

/// The origin, the extras and the first N points of every family.
pub fn truncate(spec: &CSetSpec, n: u64) -> Result<FiniteSet> {
    if n < 1 {
        return Err(Error::InvalidInput("truncation index must be >= 1".into()));
    }
    let mut points = BTreeSet::new();
    points.insert(PlanarPoint::origin());
    points.extend(spec.extras.iter().cloned());
    for family in &spec.families {
        for i in 1..=n {
            points.insert(family.point(i));
        }
    }
    FiniteSet::new(points)
}

/// Truncation with a per-family point count (families in spec order).
pub fn truncate_with(spec: &CSetSpec, counts: &[u64]) -> Result<FiniteSet> {
    if counts.len() != spec.families.len() {
        return Err(Error::InvalidInput(
            "one truncation count per family required".into(),
        ));
    }
    let mut points = BTreeSet::new();
    points.insert(PlanarPoint::origin());
    points.extend(spec.extras.iter().cloned());
    for (family, &count) in spec.families.iter().zip(counts) {
        for i in 1..=count {
            points.insert(family.point(i));
        }
    }
    FiniteSet::new(points)
}

/// One ray of a partition: a signed direction and its points in strictly
/// decreasing modulus order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayPoints {
    #[serde(with = "crate::scalar::serde_q_pair")]
    pub direction: (Q, Q),
    pub points: Vec<PlanarPoint>,
}

/// Decomposition of a set into rays through the origin plus leftovers.
///
/// A partition computed from finite data is flagged `structural`: it records
/// the exact collinearity structure but makes no infinitude claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayPartition {
    pub rays: Vec<RayPoints>,
    pub leftovers: Vec<PlanarPoint>,
    pub structural: bool,
}

impl RayPartition {
    pub fn k(&self) -> usize {
        self.rays.len()
    }

    pub fn is_strict(&self) -> bool {
        self.leftovers.is_empty()
    }

    /// Exact collinearity of every ray point with the origin and the ray
    /// direction, and strict modulus decrease.
    pub fn validate(&self) -> Result<()> {
        for ray in &self.rays {
            let (dx, dy) = &ray.direction;
            let mut prev: Option<Q> = None;
            for p in &ray.points {
                if (&p.x * dy - &p.y * dx) != Q::zero() || p.is_origin() {
                    return Err(Error::InvalidRay);
                }
                let m = p.modulus_sq();
                if let Some(prev) = &prev {
                    if &m >= prev {
                        return Err(Error::InvalidRay);
                    }
                }
                prev = Some(m);
            }
        }
        Ok(())
    }
}

/// Spec-level ray classification: k = number of ray families, leftovers =
/// extras. Errors when the description holds non-ray families.
pub fn classify_spec(spec: &CSetSpec) -> Result<RayPartition> {
    if !spec.is_kray() {
        return Err(Error::NotKRay(
            "spec holds non-ray families; classify a truncation instead".into(),
        ));
    }
    let mut rays: Vec<RayPoints> = spec
        .rays()
        .iter()
        .map(|r| RayPoints {
            direction: r.direction_key(),
            points: Vec::new(),
        })
        .collect();
    rays.sort_by(|a, b| cmp_by_angle(&a.direction, &b.direction));
    Ok(RayPartition {
        rays,
        leftovers: spec.extras.iter().cloned().collect(),
        structural: false,
    })
}

/// Structural ray classification of a finite set containing the origin:
/// groups the nonzero points by the exact ray through the origin, each ray
/// in strictly decreasing modulus order, rays sorted by angle.
pub fn classify_finite(set: &FiniteSet) -> Result<RayPartition> {
    if !set.contains(&PlanarPoint::origin()) {
        return Err(Error::OriginMissing);
    }
    let mut groups: Vec<((Q, Q), Vec<PlanarPoint>)> = Vec::new();
    for p in set.iter() {
        if p.is_origin() {
            continue;
        }
        let key = signed_direction_key(&p.x, &p.y);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, points)) => points.push(p.clone()),
            None => groups.push((key, vec![p.clone()])),
        }
    }
    groups.sort_by(|a, b| cmp_by_angle(&a.0, &b.0));
    let rays = groups
        .into_iter()
        .map(|(direction, mut points)| {
            points.sort_by_key(|p| std::cmp::Reverse(p.modulus_sq()));
            RayPoints { direction, points }
        })
        .collect();
    Ok(RayPartition {
        rays,
        leftovers: Vec::new(),
        structural: true,
    })
}

/// A real C-set {0} ∪ {rule(i)} on the positive axis.
pub fn real_cset(rule: DecayRule) -> Result<CSetSpec> {
    let ray = RaySpec::new((Q::one(), Q::zero()), rule)?;
    CSetSpec::new(vec![PointFamily::Ray(ray)], BTreeSet::new(), Vec::new())
}

/// A strict k-ray spec from explicit directions sharing one modulus rule.
pub fn kray_set(
    directions: &[(Q, Q)],
    rule: DecayRule,
    extras: BTreeSet<PlanarPoint>,
) -> Result<CSetSpec> {
    let families = directions
        .iter()
        .map(|d| Ok(PointFamily::Ray(RaySpec::new(d.clone(), rule.clone())?)))
        .collect::<Result<Vec<_>>>()?;
    CSetSpec::new(families, extras, Vec::new())
}

/// Fixed table of exact rational directions used by demos, sorted by angle.
pub fn canonical_directions(k: usize) -> Vec<(Q, Q)> {
    let ints = [
        (1i64, 0i64),
        (1, 1),
        (0, 1),
        (-1, 1),
        (-1, 0),
        (-1, -1),
        (0, -1),
        (1, -1),
    ];
    ints.iter()
        .take(k)
        .map(|&(x, y)| (crate::scalar::q_int(x), crate::scalar::q_int(y)))
        .collect()
}

/// The set {0} ∪ {1/j + i/j²}.
pub fn parabola_set() -> CSetSpec {
    CSetSpec {
        families: vec![PointFamily::Parabola],
        extras: BTreeSet::new(),
        metadata: Vec::new(),
    }
}

/// The set {0} ∪ {e^{i/m}/n} ∪ {1/n}, with e^{i/m} replaced by a decimal
/// rational approximation of the given precision (recorded in metadata).
pub fn spiral_set(precision: u32) -> Result<CSetSpec> {
    let real_ray = RaySpec::new((Q::one(), Q::zero()), DecayRule::Harmonic)?;
    Ok(CSetSpec {
        families: vec![
            PointFamily::Ray(real_ray),
            PointFamily::Spiral { precision },
        ],
        extras: BTreeSet::new(),
        metadata: vec![format!(
            "spiral angles e^(i/m) approximated by decimal rationals with {precision} digits"
        )],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_int;

    #[test]
    fn truncate_real_harmonic() {
        let spec = real_cset(DecayRule::Harmonic).unwrap();
        let set = truncate(&spec, 3).unwrap();
        let expected: BTreeSet<PlanarPoint> = [
            PlanarPoint::origin(),
            PlanarPoint::new(q(1, 1), Q::zero()),
            PlanarPoint::new(q(1, 2), Q::zero()),
            PlanarPoint::new(q(1, 3), Q::zero()),
        ]
        .into_iter()
        .collect();
        assert_eq!(set.sorted_points(), expected.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn truncate_two_ray_harmonic() {
        let dirs = [(q_int(1), q_int(0)), (q_int(-1), q_int(0))];
        let spec = kray_set(&dirs, DecayRule::Harmonic, BTreeSet::new()).unwrap();
        let set = truncate(&spec, 2).unwrap();
        assert_eq!(set.len(), 5);
        for x in [0i64, 1, -1] {
            assert!(set.contains(&PlanarPoint::from_ints(x, 0)));
        }
        assert!(set.contains(&PlanarPoint::new(q(1, 2), Q::zero())));
        assert!(set.contains(&PlanarPoint::new(q(-1, 2), Q::zero())));
    }

    #[test]
    fn truncate_parabola() {
        let set = truncate(&parabola_set(), 2).unwrap();
        assert_eq!(set.len(), 3);
        assert!(set.contains(&PlanarPoint::new(q(1, 1), q(1, 1))));
        assert!(set.contains(&PlanarPoint::new(q(1, 2), q(1, 4))));
    }

    #[test]
    fn truncate_is_monotone() {
        let dirs = [(q_int(1), q_int(0)), (q_int(0), q_int(1))];
        let spec = kray_set(&dirs, DecayRule::Geometric { ratio: q(1, 2) }, BTreeSet::new())
            .unwrap();
        for n in 1..6 {
            let small = truncate(&spec, n).unwrap();
            let large = truncate(&spec, n + 1).unwrap();
            assert!(small.is_subset_of(&large));
        }
    }

    #[test]
    fn classify_two_ray_finite() {
        let dirs = [(q_int(1), q_int(0)), (q_int(-1), q_int(0))];
        let spec = kray_set(&dirs, DecayRule::Harmonic, BTreeSet::new()).unwrap();
        let set = truncate(&spec, 2).unwrap();
        let partition = classify_finite(&set).unwrap();
        assert_eq!(partition.k(), 2);
        assert!(partition.is_strict());
        assert!(partition.structural);
        partition.validate().unwrap();
        // decreasing modulus within each ray
        assert_eq!(partition.rays[0].points[0], PlanarPoint::from_ints(1, 0));
    }

    #[test]
    fn classify_parabola_truncation_gives_singleton_rays() {
        let set = truncate(&parabola_set(), 4).unwrap();
        let partition = classify_finite(&set).unwrap();
        assert_eq!(partition.k(), 4);
        assert!(partition.rays.iter().all(|r| r.points.len() == 1));
    }

    #[test]
    fn classify_spec_reports_extras_as_leftovers() {
        let extras: BTreeSet<PlanarPoint> = [PlanarPoint::from_ints(0, 1)].into_iter().collect();
        let spec = kray_set(
            &[(q_int(1), q_int(0))],
            DecayRule::Harmonic,
            extras,
        )
        .unwrap();
        let partition = classify_spec(&spec).unwrap();
        assert_eq!(partition.k(), 1);
        assert_eq!(partition.leftovers, vec![PlanarPoint::from_ints(0, 1)]);
        assert!(!partition.structural);
    }

    #[test]
    fn strict_kray_classification_round_trip() {
        for k in 1..=3 {
            let spec = kray_set(&canonical_directions(k), DecayRule::Harmonic, BTreeSet::new())
                .unwrap();
            let set = truncate(&spec, 4).unwrap();
            let partition = classify_finite(&set).unwrap();
            assert_eq!(partition.k(), k);
            assert!(partition.is_strict());
            assert!(partition.rays.iter().all(|r| r.points.len() == 4));
        }
    }

    #[test]
    fn extras_on_a_ray_are_rejected() {
        let extras: BTreeSet<PlanarPoint> =
            [PlanarPoint::new(q(1, 5), Q::zero())].into_iter().collect();
        let err = kray_set(&[(q_int(1), q_int(0))], DecayRule::Harmonic, extras);
        assert!(matches!(err, Err(Error::ExtrasOnRay)));
    }

    #[test]
    fn duplicate_ray_directions_are_rejected() {
        let dirs = [(q_int(1), q_int(0)), (q_int(2), q_int(0))];
        let err = kray_set(&dirs, DecayRule::Harmonic, BTreeSet::new());
        assert!(matches!(err, Err(Error::DuplicateRayAngles)));
    }

    #[test]
    fn non_decreasing_rule_is_rejected() {
        assert!(DecayRule::Geometric { ratio: q(3, 2) }.validate().is_err());
        assert!(DecayRule::Geometric { ratio: q_int(1) }.validate().is_err());
        assert!(DecayRule::Geometric { ratio: q(-1, 2) }.validate().is_err());
    }

    #[test]
    fn spiral_truncation_contains_real_ray_points() {
        let spec = spiral_set(6).unwrap();
        let set = truncate(&spec, 3).unwrap();
        assert!(set.contains(&PlanarPoint::new(q(1, 1), Q::zero())));
        assert!(set.contains(&PlanarPoint::new(q(1, 2), Q::zero())));
        // approximated spiral points are present and off the real axis for m >= 2
        assert!(set.len() > 4);
    }

    #[test]
    fn diagonal_enumeration_is_the_standard_one() {
        let pairs: Vec<(u64, u64)> = (1..=6).map(diagonal_pair).collect();
        assert_eq!(pairs, vec![(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)]);
    }

    #[test]
    fn angle_order_is_counterclockwise() {
        let mut dirs = canonical_directions(8);
        let sorted = {
            let mut d = dirs.clone();
            d.sort_by(cmp_by_angle);
            d
        };
        dirs.sort_by(cmp_by_angle);
        assert_eq!(dirs, sorted);
        assert!(cmp_by_angle(&(q_int(1), q_int(0)), &(q_int(0), q_int(1))) == Ordering::Less);
        assert!(cmp_by_angle(&(q_int(0), q_int(1)), &(q_int(-1), q_int(0))) == Ordering::Less);
        assert!(cmp_by_angle(&(q_int(1), q_int(1)), &(q_int(1), q_int(2))) == Ordering::Less);
    }

    #[test]
    fn ray_contains_its_points_exactly() {
        let ray = RaySpec::new((q_int(2), q_int(1)), DecayRule::Harmonic).unwrap();
        for i in 1..5 {
            assert!(ray.contains(&ray.point(i)));
        }
        assert!(!ray.contains(&PlanarPoint::from_ints(2, 2)));
        assert!(!ray.contains(&PlanarPoint::from_ints(-2, -1)));
        assert!(!ray.contains(&PlanarPoint::new(q(3, 4), q(3, 8))));
    }
}

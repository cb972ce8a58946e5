//! Point bijections between sets, the composition operators they induce,
//! distortion measurement, and the named constructions: isolated-point
//! moves, order-matching ray homeomorphisms, the interleaving family with
//! unbounded distortion, the swap bijection, and locally piecewise affine
//! maps.
//!
//! On truncations every bijection is trivially continuous, so the
//! continuity flag records construction-level intent: homeomorphism
//! constructors fix the origin and map ray tails to ray tails monotonically.

use crate::csets::{classify_finite, FiniteSet, RayPartition};
use crate::error::{Error, Result};
use crate::geometry::{AffineMap, PlanarPoint};
use crate::norms::{d_norm, spoke_norm, NormReport};
use crate::scalar::{q, CScalar, RScalar, Q};
use crate::variation::{bv_norm, FunctionOnSet, SearchConfig, SearchStatus};
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Continuity {
    Homeomorphism,
    BijectionOnly,
}

/// A bijection between two finite point sets with its inverse and a
/// continuity flag.
#[derive(Clone, Debug, PartialEq)]
pub struct PointBijection {
    forward: BTreeMap<PlanarPoint, PlanarPoint>,
    inverse: BTreeMap<PlanarPoint, PlanarPoint>,
    pub continuity: Continuity,
}

impl PointBijection {
    pub fn new<I: IntoIterator<Item = (PlanarPoint, PlanarPoint)>>(
        pairs: I,
        continuity: Continuity,
    ) -> Result<PointBijection> {
        let forward: BTreeMap<PlanarPoint, PlanarPoint> = pairs.into_iter().collect();
        let mut inverse = BTreeMap::new();
        for (src, dst) in &forward {
            if inverse.insert(dst.clone(), src.clone()).is_some() {
                return Err(Error::NotABijection);
            }
        }
        if inverse.len() != forward.len() {
            return Err(Error::NotABijection);
        }
        Ok(PointBijection {
            forward,
            inverse,
            continuity,
        })
    }

    pub fn identity(set: &FiniteSet) -> PointBijection {
        PointBijection::new(
            set.iter().map(|p| (p.clone(), p.clone())),
            Continuity::Homeomorphism,
        )
        .expect("identity is a bijection")
    }

    pub fn source(&self) -> FiniteSet {
        FiniteSet::new(self.forward.keys().cloned()).expect("nonempty")
    }

    pub fn target(&self) -> FiniteSet {
        FiniteSet::new(self.inverse.keys().cloned()).expect("nonempty")
    }

    pub fn apply(&self, p: &PlanarPoint) -> Result<&PlanarPoint> {
        self.forward
            .get(p)
            .ok_or_else(|| Error::PointOutsideDomain(p.to_string()))
    }

    pub fn apply_inverse(&self, p: &PlanarPoint) -> Result<&PlanarPoint> {
        self.inverse
            .get(p)
            .ok_or_else(|| Error::PointOutsideDomain(p.to_string()))
    }

    pub fn inverted(&self) -> PointBijection {
        PointBijection {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            continuity: self.continuity,
        }
    }
}

/// The composition operator Φ(f) = f ∘ h⁻¹: exact value transport onto the
/// target set.
pub fn compose_operator(f: &FunctionOnSet, h: &PointBijection) -> Result<FunctionOnSet> {
    if f.domain() != &h.source() {
        return Err(Error::DomainMismatch);
    }
    FunctionOnSet::from_pairs(
        h.inverse
            .iter()
            .map(|(target, source)| Ok((target.clone(), f.value(source)?.clone())))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// The natural homeomorphism fixing `base` pointwise and sending `x` to `y`
/// (both outside `base`). The induced operator is isometric for the
/// decomposition norms at x and y.
pub fn move_isolated_point(
    base: &FiniteSet,
    x: &PlanarPoint,
    y: &PlanarPoint,
) -> Result<PointBijection> {
    if base.contains(x) {
        return Err(Error::PointInBaseSet(x.to_string()));
    }
    if base.contains(y) {
        return Err(Error::PointInBaseSet(y.to_string()));
    }
    let mut pairs: Vec<(PlanarPoint, PlanarPoint)> =
        base.iter().map(|p| (p.clone(), p.clone())).collect();
    pairs.push((x.clone(), y.clone()));
    PointBijection::new(pairs, Continuity::Homeomorphism)
}

/// The per-ray order-matching homeomorphism between two strict partitions
/// with equal ray counts and equal truncation lengths: rays are matched by
/// angle order, points by decreasing modulus, and the origin is fixed.
pub fn order_matching_homeo(
    source: &RayPartition,
    target: &RayPartition,
) -> Result<PointBijection> {
    if !source.is_strict() || !target.is_strict() || source.k() != target.k() {
        return Err(Error::RayMismatch);
    }
    let mut pairs = vec![(PlanarPoint::origin(), PlanarPoint::origin())];
    for (s, t) in source.rays.iter().zip(&target.rays) {
        if s.points.len() != t.points.len() {
            return Err(Error::RayMismatch);
        }
        pairs.extend(
            s.points
                .iter()
                .zip(&t.points)
                .map(|(a, b)| (a.clone(), b.clone())),
        );
    }
    PointBijection::new(pairs, Continuity::Homeomorphism)
}

/// Distortion ratios ‖Φ(f)‖/‖f‖ observed over a test family. The report is
/// an empirical range, never an operator-norm claim; `tainted` marks reports
/// involving LowerBound statuses.
#[derive(Clone, Debug, Serialize)]
pub struct DistortionReport {
    pub ratios: Vec<RScalar>,
    pub max_ratio: RScalar,
    pub min_ratio: RScalar,
    pub max_witness: usize,
    pub min_witness: usize,
    pub tainted: bool,
}

fn ratio_of(numerator: &RScalar, denominator: &RScalar) -> RScalar {
    // 0/0 is reported as 1 by convention (both norms vanish).
    match (numerator, denominator) {
        (RScalar::Exact(n), RScalar::Exact(d)) => {
            if d.is_zero() {
                if n.is_zero() {
                    RScalar::Exact(Q::from_integer(1.into()))
                } else {
                    RScalar::Float(f64::INFINITY)
                }
            } else {
                RScalar::Exact(n / d)
            }
        }
        _ => {
            let n = numerator.to_f64();
            let d = denominator.to_f64();
            if d == 0.0 {
                if n == 0.0 {
                    RScalar::Float(1.0)
                } else {
                    RScalar::Float(f64::INFINITY)
                }
            } else {
                RScalar::Float(n / d)
            }
        }
    }
}

fn summarize_ratios(ratios: Vec<RScalar>, tainted: bool) -> DistortionReport {
    let mut max_ratio = ratios[0].clone();
    let mut min_ratio = ratios[0].clone();
    let mut max_witness = 0;
    let mut min_witness = 0;
    for (i, r) in ratios.iter().enumerate() {
        if *r > max_ratio {
            max_ratio = r.clone();
            max_witness = i;
        }
        if *r < min_ratio {
            min_ratio = r.clone();
            min_witness = i;
        }
    }
    DistortionReport {
        ratios,
        max_ratio,
        min_ratio,
        max_witness,
        min_witness,
        tainted,
    }
}

/// Which norm a distortion estimate compares.
#[derive(Clone, Debug, Serialize)]
#[allow(clippy::large_enum_variant)]
pub enum NormKind {
    Bv,
    Spoke,
    D {
        source_point: PlanarPoint,
        target_point: PlanarPoint,
    },
}

/// Observed ratios ‖Φ(f)‖/‖f‖ over the family; lower-bound evidence only.
pub fn distortion_estimate(
    h: &PointBijection,
    family: &[FunctionOnSet],
    norm: &NormKind,
    cfg: &SearchConfig,
) -> Result<DistortionReport> {
    if family.is_empty() {
        return Err(Error::EmptySet);
    }
    let source = h.source();
    let target = h.target();
    let mut ratios = Vec::with_capacity(family.len());
    let mut tainted = false;
    for f in family {
        if f.domain() != &source {
            return Err(Error::DomainMismatch);
        }
        let g = compose_operator(f, h)?;
        let (nf, ng) = match norm {
            NormKind::Bv => {
                let a = bv_norm(f, &source, cfg)?;
                let b = bv_norm(&g, &target, cfg)?;
                tainted |= a.status == SearchStatus::LowerBound
                    || b.status == SearchStatus::LowerBound;
                (a.value, b.value)
            }
            NormKind::Spoke => {
                let pa = classify_finite(&source)?;
                let pb = classify_finite(&target)?;
                (spoke_norm(f, &pa)?.value, spoke_norm(&g, &pb)?.value)
            }
            NormKind::D {
                source_point,
                target_point,
            } => {
                let base_src = source.without_point(source_point)?;
                let base_dst = target.without_point(target_point)?;
                let a = d_norm(f, &base_src, source_point, cfg)?;
                let b = d_norm(&g, &base_dst, target_point, cfg)?;
                tainted |= a.status == SearchStatus::LowerBound
                    || b.status == SearchStatus::LowerBound;
                (a.value, b.value)
            }
        };
        ratios.push(ratio_of(&ng, &nf));
    }
    Ok(summarize_ratios(ratios, tainted))
}

/// One row of the interleaving table: ‖f_n‖ in the source spoke norm and
/// ‖Φ(f_n)‖ in the target spoke norm, against the divergence bound 2n.
#[derive(Clone, Debug, Serialize)]
pub struct InterleaveRow {
    pub n: u64,
    pub sp_source: RScalar,
    pub sp_target: RScalar,
    pub bound: u64,
    pub source_is_two: bool,
    pub target_meets_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InterleaveReport {
    pub k: usize,
    pub l: usize,
    pub rows: Vec<InterleaveRow>,
    pub pass: bool,
}

/// The pigeonhole interleaving demo: σ is a strict k-ray truncation, τ a
/// strict l-ray truncation with k > l, and h folds the first k-l+1 rays of
/// σ into the first ray of τ round-robin (ray 1 taking every (k-l+1)-th
/// position starting at position k-l+1, so its images are interior points
/// of the target ray). The indicators f_n of the n outermost points of ray
/// 1 keep spoke norm 2 while ‖Φ(f_n)‖ grows without bound.
pub fn interleaving_demo(k: usize, l: usize, n_max: u64, n_trunc: u64) -> Result<InterleaveReport> {
    if !(k > l && l >= 1) {
        return Err(Error::BadInterleaveArgs);
    }
    if n_max > n_trunc {
        return Err(Error::Guardrail(
            "n_max must not exceed the truncation length".into(),
        ));
    }
    let fold = (k - l + 1) as u64;

    let sigma_spec = crate::csets::kray_set(
        &crate::csets::canonical_directions(k),
        crate::csets::DecayRule::Harmonic,
        Default::default(),
    )?;
    let tau_spec = crate::csets::kray_set(
        &crate::csets::canonical_directions(l),
        crate::csets::DecayRule::Harmonic,
        Default::default(),
    )?;
    let sigma = crate::csets::truncate(&sigma_spec, n_trunc)?;
    // The folded target ray receives fold·N points, the others N.
    let mut counts = vec![n_trunc; l];
    counts[0] = fold * n_trunc;
    let tau = crate::csets::truncate_with(&tau_spec, &counts)?;

    let sigma_part = classify_finite(&sigma)?;
    let tau_part = classify_finite(&tau)?;

    let mut pairs = vec![(PlanarPoint::origin(), PlanarPoint::origin())];
    for (r, ray) in sigma_part.rays.iter().enumerate() {
        if (r as u64) < fold {
            // σ ray r+1, point i ↦ target-ray position (i-1)·fold + (fold - r)
            let phase = fold - r as u64;
            for (i, p) in ray.points.iter().enumerate() {
                let pos = (i as u64) * fold + phase;
                let image = &tau_part.rays[0].points[(pos - 1) as usize];
                pairs.push((p.clone(), image.clone()));
            }
        } else {
            let target_ray = &tau_part.rays[r - fold as usize + 1];
            for (i, p) in ray.points.iter().enumerate() {
                pairs.push((p.clone(), target_ray.points[i].clone()));
            }
        }
    }
    let h = PointBijection::new(pairs, Continuity::Homeomorphism)?;

    let ray1 = &sigma_part.rays[0];
    let mut rows = Vec::new();
    let mut pass = true;
    for n in 1..=n_max {
        let mut f = FunctionOnSet::constant(&sigma, CScalar::zero_exact());
        for p in ray1.points.iter().take(n as usize) {
            f = replace_value(&f, p, CScalar::one_exact());
        }
        let sp_src = spoke_norm(&f, &sigma_part)?.value;
        let g = compose_operator(&f, &h)?;
        let sp_dst = spoke_norm(&g, &tau_part)?.value;
        let source_is_two = sp_src == RScalar::Exact(q(2, 1));
        let target_meets_bound = sp_dst >= RScalar::Exact(q(2 * n as i64, 1));
        pass &= source_is_two && target_meets_bound;
        rows.push(InterleaveRow {
            n,
            sp_source: sp_src,
            sp_target: sp_dst,
            bound: 2 * n,
            source_is_two,
            target_meets_bound,
        });
    }
    Ok(InterleaveReport { k, l, rows, pass })
}

fn replace_value(f: &FunctionOnSet, at: &PlanarPoint, value: CScalar) -> FunctionOnSet {
    FunctionOnSet::from_pairs(f.iter().map(|(p, v)| {
        if p == at {
            (p.clone(), value.clone())
        } else {
            (p.clone(), v.clone())
        }
    }))
    .expect("same domain")
}

/// The swap bijection on {0} ∪ {1/n} exchanging 0 and 1: a Banach algebra
/// isomorphism of the BV spaces that is induced by no homeomorphism.
/// Variation ratios over the family stay within [1/3, 3].
pub fn swap_bijection_demo(n_trunc: u64, family_size: usize) -> Result<DistortionReport> {
    let spec = crate::csets::real_cset(crate::csets::DecayRule::Harmonic)?;
    let set = crate::csets::truncate(&spec, n_trunc)?;
    let origin = PlanarPoint::origin();
    let one = PlanarPoint::from_ints(1, 0);
    let pairs = set.iter().map(|p| {
        let image = if p == &origin {
            one.clone()
        } else if p == &one {
            origin.clone()
        } else {
            p.clone()
        };
        (p.clone(), image)
    });
    let h = PointBijection::new(pairs, Continuity::BijectionOnly)?;

    let family = deterministic_family(&set, family_size, 0x5_77A9);
    let cfg = SearchConfig::exhaustive_for(set.len());
    let mut ratios = Vec::with_capacity(family.len());
    let mut tainted = false;
    for f in &family {
        let a = crate::variation::var_search(f, &set, &cfg)?;
        let g = compose_operator(f, &h)?;
        let b = crate::variation::var_search(&g, &set, &cfg)?;
        tainted |=
            a.status == SearchStatus::LowerBound || b.status == SearchStatus::LowerBound;
        ratios.push(ratio_of(&b.value, &a.value));
    }
    Ok(summarize_ratios(ratios, tainted))
}

/// Deterministic test family: the indicators of every point, the first
/// coordinate (the identity on real sets, kept real-valued so exact mode
/// applies on any set), the constant 1, a ±1 alternation, and seeded random
/// rational tables.
pub fn deterministic_family(set: &FiniteSet, size: usize, seed: u64) -> Vec<FunctionOnSet> {
    let mut family = Vec::with_capacity(size);
    let first_coordinate = FunctionOnSet::from_pairs(
        set.iter()
            .map(|p| (p.clone(), CScalar::exact(p.x.clone(), Q::zero()))),
    )
    .expect("nonempty");
    family.push(first_coordinate);
    family.push(FunctionOnSet::constant(set, CScalar::one_exact()));
    let alternating = FunctionOnSet::from_pairs(set.iter().enumerate().map(|(i, p)| {
        (
            p.clone(),
            CScalar::from_int(if i % 2 == 0 { 1 } else { -1 }),
        )
    }))
    .expect("nonempty");
    family.push(alternating);
    for p in set.iter() {
        family.push(FunctionOnSet::indicator(set, p));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    while family.len() < size {
        family.push(random_rational_function(set, &mut rng));
    }
    family.truncate(size);
    family
}

/// A random real-rational-valued table (exact mode).
pub fn random_rational_function(set: &FiniteSet, rng: &mut StdRng) -> FunctionOnSet {
    FunctionOnSet::from_pairs(set.iter().map(|p| {
        let num = rng.gen_range(-12i64..=12);
        let den = rng.gen_range(1i64..=6);
        (p.clone(), CScalar::exact(q(num, den), Q::zero()))
    }))
    .expect("nonempty")
}

/// A strictly convex polygon with vertices in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexPolygon {
    vertices: Vec<PlanarPoint>,
}

fn cross(o: &PlanarPoint, a: &PlanarPoint, b: &PlanarPoint) -> Q {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<PlanarPoint>) -> Result<ConvexPolygon> {
        if vertices.len() < 3 {
            return Err(Error::NotStrictlyConvex);
        }
        let n = vertices.len();
        for i in 0..n {
            let o = &vertices[i];
            let a = &vertices[(i + 1) % n];
            let b = &vertices[(i + 2) % n];
            if !cross(o, a, b).is_positive() {
                return Err(Error::NotStrictlyConvex);
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn vertices(&self) -> &[PlanarPoint] {
        &self.vertices
    }

    pub fn side_count(&self) -> usize {
        self.vertices.len()
    }

    /// Strict interior test: on the positive side of every edge.
    pub fn contains_strictly(&self, p: &PlanarPoint) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| cross(&self.vertices[i], &self.vertices[(i + 1) % n], p).is_positive())
    }

    /// Interior-or-boundary test.
    pub fn contains(&self, p: &PlanarPoint) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| !cross(&self.vertices[i], &self.vertices[(i + 1) % n], p).is_negative())
    }

    pub fn transform(&self, map: &AffineMap) -> Result<ConvexPolygon> {
        let mut images: Vec<PlanarPoint> = self.vertices.iter().map(|v| map.apply(v)).collect();
        // An orientation-reversing map flips the cyclic order.
        if map.det().is_negative() {
            images.reverse();
        }
        ConvexPolygon::new(images)
    }

    /// A strictly interior rational point (the vertex centroid).
    pub fn interior_point(&self) -> PlanarPoint {
        let n = crate::scalar::q_int(self.vertices.len() as i64);
        let mut x = Q::zero();
        let mut y = Q::zero();
        for v in &self.vertices {
            x += &v.x;
            y += &v.y;
        }
        PlanarPoint::new(x / &n, y / &n)
    }
}

/// The locally piecewise affine map determined by (C, α, x0, y0): it agrees
/// with α off the interior of C, is affine on each fan triangle T_j (side
/// s_j plus vertex x0), and sends x0 to y0.
#[derive(Clone, Debug)]
pub struct LocallyPiecewiseAffineMap {
    pub polygon: ConvexPolygon,
    pub outer: AffineMap,
    pub x0: PlanarPoint,
    pub y0: PlanarPoint,
    pub triangle_maps: Vec<AffineMap>,
}

/// The unique affine map sending three non-collinear points to prescribed
/// images.
fn affine_from_three_points(
    sources: [&PlanarPoint; 3],
    images: [&PlanarPoint; 3],
) -> Result<AffineMap> {
    let [p0, p1, p2] = sources;
    let [q0, q1, q2] = images;
    let b1 = (&p1.x - &p0.x, &p1.y - &p0.y);
    let b2 = (&p2.x - &p0.x, &p2.y - &p0.y);
    let det = &b1.0 * &b2.1 - &b1.1 * &b2.0;
    if det.is_zero() {
        return Err(Error::SingularAffineMap);
    }
    let c1 = (&q1.x - &q0.x, &q1.y - &q0.y);
    let c2 = (&q2.x - &q0.x, &q2.y - &q0.y);
    // M · [b1 b2] = [c1 c2]  =>  M = [c1 c2] · [b1 b2]^{-1}
    let inv = [
        [&b2.1 / &det, -(&b2.0 / &det)],
        [-(&b1.1 / &det), &b1.0 / &det],
    ];
    let m = [
        [
            &c1.0 * &inv[0][0] + &c2.0 * &inv[1][0],
            &c1.0 * &inv[0][1] + &c2.0 * &inv[1][1],
        ],
        [
            &c1.1 * &inv[0][0] + &c2.1 * &inv[1][0],
            &c1.1 * &inv[0][1] + &c2.1 * &inv[1][1],
        ],
    ];
    let t = [
        &q0.x - (&m[0][0] * &p0.x + &m[0][1] * &p0.y),
        &q0.y - (&m[1][0] * &p0.x + &m[1][1] * &p0.y),
    ];
    AffineMap::new(m, t)
}

/// Build the locally piecewise affine map; verifies its defining conditions
/// exactly in rational arithmetic.
pub fn lpam_construct(
    polygon: &ConvexPolygon,
    outer: &AffineMap,
    x0: &PlanarPoint,
    y0: &PlanarPoint,
) -> Result<LocallyPiecewiseAffineMap> {
    if !polygon.contains_strictly(x0) {
        return Err(Error::NotInterior(x0.to_string()));
    }
    let image_polygon = polygon.transform(outer)?;
    if !image_polygon.contains_strictly(y0) {
        return Err(Error::NotInterior(y0.to_string()));
    }
    let n = polygon.side_count();
    let mut triangle_maps = Vec::with_capacity(n);
    for j in 0..n {
        let v0 = &polygon.vertices()[j];
        let v1 = &polygon.vertices()[(j + 1) % n];
        let a0 = outer.apply(v0);
        let a1 = outer.apply(v1);
        let map = affine_from_three_points([v0, v1, x0], [&a0, &a1, y0])?;
        // Agreement with the outer map on the side and the prescribed
        // interior image, exactly.
        debug_assert_eq!(map.apply(v0), a0);
        debug_assert_eq!(map.apply(v1), a1);
        debug_assert_eq!(map.apply(x0), y0.clone());
        triangle_maps.push(map);
    }
    Ok(LocallyPiecewiseAffineMap {
        polygon: polygon.clone(),
        outer: outer.clone(),
        x0: x0.clone(),
        y0: y0.clone(),
        triangle_maps,
    })
}

fn in_triangle(p: &PlanarPoint, a: &PlanarPoint, b: &PlanarPoint, c: &PlanarPoint) -> bool {
    let d1 = cross(a, b, p);
    let d2 = cross(b, c, p);
    let d3 = cross(c, a, p);
    let has_neg = d1.is_negative() || d2.is_negative() || d3.is_negative();
    let has_pos = d1.is_positive() || d2.is_positive() || d3.is_positive();
    !(has_neg && has_pos)
}

/// Apply the map: α outside the interior of C, the fan-triangle map inside.
/// Boundary points are consistent across adjacent pieces.
pub fn lpam_apply(h: &LocallyPiecewiseAffineMap, p: &PlanarPoint) -> PlanarPoint {
    if !h.polygon.contains_strictly(p) {
        return h.outer.apply(p);
    }
    let n = h.polygon.side_count();
    for j in 0..n {
        let v0 = &h.polygon.vertices()[j];
        let v1 = &h.polygon.vertices()[(j + 1) % n];
        if in_triangle(p, v0, v1, &h.x0) {
            return h.triangle_maps[j].apply(p);
        }
    }
    unreachable!("fan triangles cover the polygon");
}

/// Restrict the map to a finite set, as a bijection onto the image.
pub fn lpam_bijection(h: &LocallyPiecewiseAffineMap, set: &FiniteSet) -> Result<PointBijection> {
    PointBijection::new(
        set.iter().map(|p| (p.clone(), lpam_apply(h, p))),
        Continuity::Homeomorphism,
    )
}

/// Spoke-norm report helper shared by demos.
pub fn spoke_report(f: &FunctionOnSet) -> Result<NormReport> {
    let partition = classify_finite(f.domain())?;
    spoke_norm(f, &partition)
}

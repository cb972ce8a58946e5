//! Exact planar predicates: side classification, crossing segments and the
//! variation factor of an ordered point list.
//!
//! All predicates are exact on rational coordinates. The maximum over all
//! lines in the variation factor is realized by finite enumeration of
//! combinatorial line classes: the count of crossing segments depends only on
//! the sequence of side labels, and [`candidate_lines`] produces a family of
//! (symbolically perturbed) lines achieving every achievable label sequence.
//! Perturbed lines carry polynomial coefficients in an infinitesimal ε and
//! evaluate the limit sign, so no floating offsets or tolerances appear.

use crate::error::{Error, Result};
use crate::scalar::Q;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// A point of the plane with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarPoint {
    pub x: Q,
    pub y: Q,
}

impl PlanarPoint {
    pub fn new(x: Q, y: Q) -> Self {
        PlanarPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        PlanarPoint::new(crate::scalar::q_int(x), crate::scalar::q_int(y))
    }

    pub fn from_rationals(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        PlanarPoint::new(crate::scalar::q(xn, xd), crate::scalar::q(yn, yd))
    }

    pub fn origin() -> Self {
        PlanarPoint::new(Q::zero(), Q::zero())
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Squared modulus; moduli are always compared through their squares.
    pub fn modulus_sq(&self) -> Q {
        &self.x * &self.x + &self.y * &self.y
    }
}

impl fmt::Display for PlanarPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for PlanarPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(s)
    }
}

/// Which side of a line a point lies on; `Zero` means exactly on the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SideLabel {
    Minus,
    Zero,
    Plus,
}

impl SideLabel {
    fn of_sign(v: &Q) -> SideLabel {
        if v.is_zero() {
            SideLabel::Zero
        } else if v.is_positive() {
            SideLabel::Plus
        } else {
            SideLabel::Minus
        }
    }

    pub fn strictly_opposite(self, other: SideLabel) -> bool {
        matches!(
            (self, other),
            (SideLabel::Plus, SideLabel::Minus) | (SideLabel::Minus, SideLabel::Plus)
        )
    }

    pub fn flipped(self) -> SideLabel {
        match self {
            SideLabel::Plus => SideLabel::Minus,
            SideLabel::Minus => SideLabel::Plus,
            SideLabel::Zero => SideLabel::Zero,
        }
    }
}

/// The line {(x, y) : ax + by + c = 0}, stored canonically: the first
/// nonzero of (a, b) is scaled to 1, so proportional coefficient triples
/// compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    a: Q,
    b: Q,
    c: Q,
}

impl Line {
    pub fn new(a: Q, b: Q, c: Q) -> Result<Line> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateLine);
        }
        let scale = if !a.is_zero() { a.clone() } else { b.clone() };
        Ok(Line {
            a: &a / &scale,
            b: &b / &scale,
            c: &c / &scale,
        })
    }

    pub fn through(p: &PlanarPoint, q: &PlanarPoint) -> Result<Line> {
        if p == q {
            return Err(Error::DegenerateLine);
        }
        // direction (dx, dy); normal (dy, -dx)
        let dx = &q.x - &p.x;
        let dy = &q.y - &p.y;
        let a = dy.clone();
        let b = -dx;
        let c = -(&a * &p.x) - &b * &p.y;
        Line::new(a, b, c)
    }

    /// Line through `p` with direction vector `d`.
    pub fn through_with_direction(p: &PlanarPoint, d: (&Q, &Q)) -> Result<Line> {
        let a = d.1.clone();
        let b = -d.0.clone();
        let c = -(&a * &p.x) - &b * &p.y;
        Line::new(a, b, c)
    }

    pub fn coefficients(&self) -> (&Q, &Q, &Q) {
        (&self.a, &self.b, &self.c)
    }

    pub fn eval(&self, p: &PlanarPoint) -> Q {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn contains(&self, p: &PlanarPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// Image of the line under an invertible affine map.
    pub fn transform(&self, map: &AffineMap) -> Result<Line> {
        let inv = map.inverse()?;
        // a'^T = a^T M^{-1}; c' = c + a'^T t with the sign of our convention.
        let a = &self.a * &inv.m[0][0] + &self.b * &inv.m[1][0];
        let b = &self.a * &inv.m[0][1] + &self.b * &inv.m[1][1];
        let c = &self.c + &self.a * &inv.t[0] + &self.b * &inv.t[1];
        Line::new(a, b, c)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y + {} = 0", self.a, self.b, self.c)
    }
}

/// Invertible affine map x ↦ Mx + t with exact rational entries.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap {
    pub m: [[Q; 2]; 2],
    pub t: [Q; 2],
}

impl AffineMap {
    pub fn new(m: [[Q; 2]; 2], t: [Q; 2]) -> Result<AffineMap> {
        let map = AffineMap { m, t };
        if map.det().is_zero() {
            return Err(Error::SingularAffineMap);
        }
        Ok(map)
    }

    pub fn identity() -> AffineMap {
        AffineMap {
            m: [
                [Q::from_integer(1.into()), Q::zero()],
                [Q::zero(), Q::from_integer(1.into())],
            ],
            t: [Q::zero(), Q::zero()],
        }
    }

    pub fn translation(tx: Q, ty: Q) -> AffineMap {
        let mut map = AffineMap::identity();
        map.t = [tx, ty];
        map
    }

    pub fn det(&self) -> Q {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn apply(&self, p: &PlanarPoint) -> PlanarPoint {
        PlanarPoint::new(
            &self.m[0][0] * &p.x + &self.m[0][1] * &p.y + &self.t[0],
            &self.m[1][0] * &p.x + &self.m[1][1] * &p.y + &self.t[1],
        )
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::SingularAffineMap);
        }
        let m = [
            [&self.m[1][1] / &d, -(&self.m[0][1] / &d)],
            [-(&self.m[1][0] / &d), &self.m[0][0] / &d],
        ];
        let t = [
            -(&m[0][0] * &self.t[0] + &m[0][1] * &self.t[1]),
            -(&m[1][0] * &self.t[0] + &m[1][1] * &self.t[1]),
        ];
        Ok(AffineMap { m, t })
    }

    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let m = [
            [
                &self.m[0][0] * &inner.m[0][0] + &self.m[0][1] * &inner.m[1][0],
                &self.m[0][0] * &inner.m[0][1] + &self.m[0][1] * &inner.m[1][1],
            ],
            [
                &self.m[1][0] * &inner.m[0][0] + &self.m[1][1] * &inner.m[1][0],
                &self.m[1][0] * &inner.m[0][1] + &self.m[1][1] * &inner.m[1][1],
            ],
        ];
        let t = [
            &self.m[0][0] * &inner.t[0] + &self.m[0][1] * &inner.t[1] + &self.t[0],
            &self.m[1][0] * &inner.t[0] + &self.m[1][1] * &inner.t[1] + &self.t[1],
        ];
        AffineMap { m, t }
    }
}

/// A finite ordered list of points. Duplicates are permitted; the list must
/// be nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointList {
    points: Vec<PlanarPoint>,
}

impl PointList {
    pub fn new(points: Vec<PlanarPoint>) -> Result<PointList> {
        if points.is_empty() {
            return Err(Error::EmptyPointList);
        }
        Ok(PointList { points })
    }

    pub fn points(&self) -> &[PlanarPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of segments of the piecewise linear curve through the list.
    pub fn segment_count(&self) -> usize {
        self.points.len() - 1
    }

    pub fn transform(&self, map: &AffineMap) -> PointList {
        PointList {
            points: self.points.iter().map(|p| map.apply(p)).collect(),
        }
    }

    /// The list with every occurrence of `z` removed, if nonempty.
    pub fn without_point(&self, z: &PlanarPoint) -> Option<PointList> {
        let points: Vec<_> = self.points.iter().filter(|p| *p != z).cloned().collect();
        PointList::new(points).ok()
    }
}

impl Serialize for PointList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.points.serialize(s)
    }
}

/// Exact side classification of `p` relative to `line`: the sign of
/// a·x + b·y + c.
pub fn side_of(line: &Line, p: &PlanarPoint) -> SideLabel {
    SideLabel::of_sign(&line.eval(p))
}

/// Number of crossing segments of a label sequence (at least two labels).
///
/// Segment i joins point i to point i+1 and crosses when one of holds:
/// (i) the endpoints lie strictly on opposite sides, (ii) i = 0 and point 0
/// is on the line, (iii) i > 0, point i is on the line and point i-1 is not,
/// (iv) i = n-1, point i is off the line and point n is on it.
pub(crate) fn crossing_count(labels: &[SideLabel]) -> usize {
    debug_assert!(labels.len() >= 2);
    let n = labels.len() - 1;
    let mut count = 0;
    for i in 0..n {
        let cur = labels[i];
        let next = labels[i + 1];
        let crossing = cur.strictly_opposite(next)
            || (i == 0 && cur == SideLabel::Zero)
            || (i > 0 && cur == SideLabel::Zero && labels[i - 1] != SideLabel::Zero)
            || (i == n - 1 && cur != SideLabel::Zero && next == SideLabel::Zero);
        if crossing {
            count += 1;
        }
    }
    count
}

fn segment_is_crossing(labels: &[SideLabel], i: usize) -> bool {
    let n = labels.len() - 1;
    let cur = labels[i];
    let next = labels[i + 1];
    cur.strictly_opposite(next)
        || (i == 0 && cur == SideLabel::Zero)
        || (i > 0 && cur == SideLabel::Zero && labels[i - 1] != SideLabel::Zero)
        || (i == n - 1 && cur != SideLabel::Zero && next == SideLabel::Zero)
}

/// Whether segment `i` of `list` is a crossing segment on `line`.
pub fn is_crossing_segment(list: &PointList, i: usize, line: &Line) -> Result<bool> {
    let segments = list.segment_count();
    if i >= segments {
        return Err(Error::IndexOutOfRange { index: i, segments });
    }
    let labels: Vec<SideLabel> = list.points().iter().map(|p| side_of(line, p)).collect();
    Ok(segment_is_crossing(&labels, i))
}

/// Number of crossing segments of `list` on `line`. A singleton list counts
/// 1 when its point lies on the line, else 0.
pub fn vf_on_line(list: &PointList, line: &Line) -> usize {
    if list.len() == 1 {
        return if line.contains(&list.points()[0]) { 1 } else { 0 };
    }
    let labels: Vec<SideLabel> = list.points().iter().map(|p| side_of(line, p)).collect();
    crossing_count(&labels)
}

/// A line class used to realize every achievable side-label sequence.
///
/// Coefficients are polynomials in an infinitesimal ε > 0 up to order two:
/// a(ε) = a0 + a1 ε + a2 ε², and similarly for b and c. The side of a point
/// is the sign of a(ε)x + b(ε)y + c(ε) for infinitesimally small ε, i.e. the
/// first nonzero sign among the order-0, order-1 and order-2 evaluations.
/// Any such class is realized by genuine lines for all small enough rational
/// ε, so every label sequence it produces is achievable.
#[derive(Clone, Debug)]
pub struct CandidateLine {
    terms: [(Q, Q, Q); 3],
}

impl CandidateLine {
    pub fn exact(line: &Line) -> CandidateLine {
        let (a, b, c) = line.coefficients();
        CandidateLine {
            terms: [
                (a.clone(), b.clone(), c.clone()),
                (Q::zero(), Q::zero(), Q::zero()),
                (Q::zero(), Q::zero(), Q::zero()),
            ],
        }
    }

    /// Rotation of the base line about `anchor` (a point on it) by ±ε,
    /// linearized: the normal picks up ±ε times its perpendicular, and the
    /// offset keeps the anchor on the line to first order.
    fn rotated_about(line: &Line, anchor: &PlanarPoint, positive: bool) -> CandidateLine {
        let (a, b, _) = line.coefficients();
        let s = if positive { 1 } else { -1 };
        let sq = crate::scalar::q_int(s);
        let a1 = -(b * &sq);
        let b1 = a * &sq;
        let c1 = -(&a1 * &anchor.x) - &b1 * &anchor.y;
        let mut cl = CandidateLine::exact(line);
        cl.terms[1] = (a1, b1, c1);
        cl
    }

    /// Add ±ε^order to the constant coefficient (a normal translation class).
    fn translated(mut self, order: usize, positive: bool) -> CandidateLine {
        let bump = crate::scalar::q_int(if positive { 1 } else { -1 });
        self.terms[order].2 = &self.terms[order].2 + &bump;
        self
    }

    /// The same line class with the opposite orientation: every side label
    /// flips. Crossing counts are unchanged under this flip, but label
    /// sequences are not.
    pub fn negated(&self) -> CandidateLine {
        CandidateLine {
            terms: [
                (-self.terms[0].0.clone(), -self.terms[0].1.clone(), -self.terms[0].2.clone()),
                (-self.terms[1].0.clone(), -self.terms[1].1.clone(), -self.terms[1].2.clone()),
                (-self.terms[2].0.clone(), -self.terms[2].1.clone(), -self.terms[2].2.clone()),
            ],
        }
    }

    /// Limit side of `p`: the sign of the lowest nonvanishing order.
    pub fn side_of(&self, p: &PlanarPoint) -> SideLabel {
        for (a, b, c) in &self.terms {
            let v = a * &p.x + b * &p.y + c;
            if !v.is_zero() {
                return SideLabel::of_sign(&v);
            }
        }
        SideLabel::Zero
    }
}

/// Canonical direction key used to dedupe parallel directions (folds d and -d).
fn canonical_direction(dx: &Q, dy: &Q) -> (Q, Q) {
    if !dx.is_zero() {
        let r = dy / dx;
        (Q::from_integer(1.into()), r)
    } else {
        (Q::zero(), Q::from_integer(1.into()))
    }
}

/// A finite family of line classes such that every achievable side-label
/// sequence of the given points is achieved by some member.
///
/// Construction: the line through every pair of distinct points, each with
/// ±ε rotations about both defining points, ±ε normal translations, and
/// rotation-then-±ε² translation compositions; through every point, lines
/// parallel and perpendicular to every pairwise direction (plus a horizontal
/// fallback), again with rotations and translations; one generic line
/// missing all points; and the opposite orientation of each of these.
pub fn candidate_lines_for_points(points: &[PlanarPoint]) -> Vec<CandidateLine> {
    let base = base_candidate_lines(points);
    let mut out = Vec::with_capacity(2 * base.len());
    for cl in base {
        out.push(cl.negated());
        out.push(cl);
    }
    out
}

/// One representative per orientation-folded line class; see
/// [`candidate_lines_for_points`].
fn base_candidate_lines(points: &[PlanarPoint]) -> Vec<CandidateLine> {
    let distinct: Vec<PlanarPoint> = {
        let set: BTreeSet<PlanarPoint> = points.iter().cloned().collect();
        set.into_iter().collect()
    };
    let mut out = Vec::new();

    let mut push_with_perturbations = |line: &Line, anchors: &[&PlanarPoint]| {
        out.push(CandidateLine::exact(line));
        out.push(CandidateLine::exact(line).translated(1, true));
        out.push(CandidateLine::exact(line).translated(1, false));
        for anchor in anchors {
            for rot_pos in [true, false] {
                let r = CandidateLine::rotated_about(line, anchor, rot_pos);
                out.push(r.clone());
                out.push(r.clone().translated(2, true));
                out.push(r.translated(2, false));
            }
        }
    };

    // Pairwise directions, deduped up to sign, with a horizontal fallback.
    let mut directions: BTreeSet<(Q, Q)> = BTreeSet::new();
    directions.insert((Q::from_integer(1.into()), Q::zero()));
    for i in 0..distinct.len() {
        for j in (i + 1)..distinct.len() {
            let dx = &distinct[j].x - &distinct[i].x;
            let dy = &distinct[j].y - &distinct[i].y;
            directions.insert(canonical_direction(&dx, &dy));
        }
    }

    for i in 0..distinct.len() {
        for j in (i + 1)..distinct.len() {
            let line = Line::through(&distinct[i], &distinct[j])
                .expect("distinct points define a line");
            push_with_perturbations(&line, &[&distinct[i], &distinct[j]]);
        }
    }

    for p in &distinct {
        for (dx, dy) in &directions {
            let parallel = Line::through_with_direction(p, (dx, dy))
                .expect("nonzero direction defines a line");
            push_with_perturbations(&parallel, &[p]);
            let perp = Line::through_with_direction(p, (&-dy.clone(), dx))
                .expect("nonzero direction defines a line");
            push_with_perturbations(&perp, &[p]);
        }
    }

    // A generic vertical line to the right of every point.
    let max_x = distinct
        .iter()
        .map(|p| p.x.clone())
        .max()
        .expect("nonempty point set");
    let far = Line::new(
        Q::from_integer(1.into()),
        Q::zero(),
        -(max_x + Q::from_integer(1.into())),
    )
    .expect("vertical line");
    out.push(CandidateLine::exact(&far));

    out
}

/// Candidate line classes for a point list; see
/// [`candidate_lines_for_points`].
pub fn candidate_lines(list: &PointList) -> Vec<CandidateLine> {
    candidate_lines_for_points(list.points())
}

/// All achievable side-label assignments of the given (distinct) points,
/// deduplicated and sorted for determinism. Each base class is evaluated
/// once and contributes both orientations.
pub fn achievable_labelings(points: &[PlanarPoint]) -> Vec<Vec<SideLabel>> {
    let mut labelings: BTreeSet<Vec<SideLabel>> = BTreeSet::new();
    for cl in base_candidate_lines(points) {
        let labels: Vec<SideLabel> = points.iter().map(|p| cl.side_of(p)).collect();
        let flipped: Vec<SideLabel> = labels.iter().map(|l| l.flipped()).collect();
        labelings.insert(labels);
        labelings.insert(flipped);
    }
    labelings.into_iter().collect()
}

/// The variation factor vf(S): the maximum number of crossing segments over
/// all lines. Satisfies 1 ≤ vf(S) ≤ n for a list of n+1 points.
///
/// The maximum is taken over one orientation per line class: the crossing
/// count of a label sequence equals that of its pointwise flip.
pub fn vf(list: &PointList) -> usize {
    if list.len() == 1 {
        return 1;
    }
    let points = list.points();
    let mut best = 0;
    for cl in base_candidate_lines(points) {
        let labels: Vec<SideLabel> = points.iter().map(|p| cl.side_of(p)).collect();
        best = best.max(crossing_count(&labels));
    }
    best
}

//! Brute-force verification of multi-tilings.
//!
//! The covering function `x ↦ #{λ ∈ Λ : x ∈ int(P + λ)}` is evaluated exactly
//! at sample points chosen one per face of the arrangement formed by all
//! translate edges. Faces are found by a vertical slab decomposition: between
//! consecutive x-coordinates of edge endpoints and crossings, edges do not
//! cross, so every face meets some slab in a trapezoid, and the trapezoid
//! midpoint is a sample strictly inside that face.
//!
//! Boundary points are never sampled, matching "for almost every x".

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::plane::{det, horizontal_period, lattice_intersect, PlaneLattice, PlaneVector};
use crate::qfield::{FieldDescriptor, FieldElement, Rational};
use crate::zonotope::Zonotope;

/// A simple polygon, stored counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<PlaneVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

impl Polygon {
    /// Accepts either orientation; the vertex walk is assumed to be simple.
    pub fn new(vertices: Vec<PlaneVector>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Precondition(format!(
                "a polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let field = crate::plane::common_field(&vertices)?;
        let mut vertices: Vec<PlaneVector> = vertices
            .into_iter()
            .map(|v| v.lift_to(&field).expect("common field"))
            .collect();
        let n = vertices.len();
        let mut twice = field.zero();
        for i in 0..n {
            twice += &det(&vertices[i], &vertices[(i + 1) % n]);
        }
        match twice.sign() {
            0 => return Err(Error::Precondition("polygon has zero area".into())),
            -1 => vertices.reverse(),
            _ => {}
        }
        Ok(Polygon { vertices })
    }

    /// The zonotope centered at the origin.
    pub fn from_zonotope(z: &Zonotope) -> Self {
        Polygon {
            vertices: z.vertices(),
        }
    }

    pub fn vertices(&self) -> &[PlaneVector] {
        &self.vertices
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.vertices[0].field()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&PlaneVector, &PlaneVector)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn translate(&self, v: &PlaneVector) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|p| p + v).collect(),
        }
    }

    /// Componentwise minimum and maximum of the vertices.
    pub fn bbox(&self) -> (PlaneVector, PlaneVector) {
        let mut lo = self.vertices[0].clone();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            if v.x.cmp_exact(&lo.x) == Ordering::Less {
                lo.x = v.x.clone();
            }
            if v.y.cmp_exact(&lo.y) == Ordering::Less {
                lo.y = v.y.clone();
            }
            if v.x.cmp_exact(&hi.x) == Ordering::Greater {
                hi.x = v.x.clone();
            }
            if v.y.cmp_exact(&hi.y) == Ordering::Greater {
                hi.y = v.y.clone();
            }
        }
        (lo, hi)
    }

    pub fn area(&self) -> FieldElement {
        crate::zonotope::shoelace_area(&self.vertices)
    }

    /// Exact point location by boundary test, then crossing parity.
    pub fn classify(&self, p: &PlaneVector) -> Containment {
        let mut inside = false;
        for (a, b) in self.edges() {
            let side = det(&(b - a), &(p - a)).sign();
            if side == 0 && on_segment_given_colinear(a, b, p) {
                return Containment::Boundary;
            }
            let a_above = a.y.cmp_exact(&p.y) == Ordering::Greater;
            let b_above = b.y.cmp_exact(&p.y) == Ordering::Greater;
            if a_above != b_above {
                // Upward edge crosses the rightward ray iff p is to its left.
                let upward = b_above;
                if (upward && side > 0) || (!upward && side < 0) {
                    inside = !inside;
                }
            }
        }
        if inside {
            Containment::Inside
        } else {
            Containment::Outside
        }
    }
}

fn on_segment_given_colinear(a: &PlaneVector, b: &PlaneVector, p: &PlaneVector) -> bool {
    let within = |u: &FieldElement, v: &FieldElement, w: &FieldElement| {
        let (lo, hi) = if u.cmp_exact(v) == Ordering::Greater {
            (v, u)
        } else {
            (u, v)
        };
        lo.cmp_exact(w) != Ordering::Greater && w.cmp_exact(hi) != Ordering::Greater
    };
    within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y)
}

/// Closed axis-aligned box `[x0, x1] × [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub x0: FieldElement,
    pub y0: FieldElement,
    pub x1: FieldElement,
    pub y1: FieldElement,
}

impl Window {
    pub fn new(
        x0: FieldElement,
        y0: FieldElement,
        x1: FieldElement,
        y1: FieldElement,
    ) -> Result<Self> {
        if x0.cmp_exact(&x1) != Ordering::Less || y0.cmp_exact(&y1) != Ordering::Less {
            return Err(Error::Window(format!(
                "empty window [{x0}, {x1}] × [{y0}, {y1}]"
            )));
        }
        let field = crate::plane::common_field(&[
            PlaneVector::new(x0.clone(), y0.clone()),
            PlaneVector::new(x1.clone(), y1.clone()),
        ])?;
        let lift = |e: FieldElement| e.lift_to(&field).expect("common field");
        Ok(Window {
            x0: lift(x0),
            y0: lift(y0),
            x1: lift(x1),
            y1: lift(y1),
        })
    }

    pub fn ints(field: &FieldDescriptor, x0: i64, y0: i64, x1: i64, y1: i64) -> Result<Self> {
        Self::new(field.int(x0), field.int(y0), field.int(x1), field.int(y1))
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.x0.field()
    }

    pub fn contains(&self, p: &PlaneVector) -> bool {
        self.x0.cmp_exact(&p.x) != Ordering::Greater
            && p.x.cmp_exact(&self.x1) != Ordering::Greater
            && self.y0.cmp_exact(&p.y) != Ordering::Greater
            && p.y.cmp_exact(&self.y1) != Ordering::Greater
    }

    pub fn corners(&self) -> [PlaneVector; 4] {
        [
            PlaneVector::new(self.x0.clone(), self.y0.clone()),
            PlaneVector::new(self.x1.clone(), self.y0.clone()),
            PlaneVector::new(self.x1.clone(), self.y1.clone()),
            PlaneVector::new(self.x0.clone(), self.y1.clone()),
        ]
    }

    fn shifted(&self, v: &PlaneVector) -> Window {
        Window {
            x0: &self.x0 + &v.x,
            y0: &self.y0 + &v.y,
            x1: &self.x1 + &v.x,
            y1: &self.y1 + &v.y,
        }
    }

    /// `{λ : (P + λ) ∩ self ≠ ∅}` is contained in the returned box.
    fn minus_bbox(&self, lo: &PlaneVector, hi: &PlaneVector) -> Window {
        Window {
            x0: &self.x0 - &hi.x,
            y0: &self.y0 - &hi.y,
            x1: &self.x1 - &lo.x,
            y1: &self.y1 - &lo.y,
        }
    }

    fn area(&self) -> FieldElement {
        (&self.x1 - &self.x0) * (&self.y1 - &self.y0)
    }
}

/// All lattice points in a closed box, by exact coefficient-range solving.
pub fn enumerate_points(l: &PlaneLattice, bx: &Window) -> Vec<PlaneVector> {
    let mut c1_range: Option<(FieldElement, FieldElement)> = None;
    let mut c2_range: Option<(FieldElement, FieldElement)> = None;
    for corner in bx.corners() {
        let (c1, c2) = l.coordinates(&corner);
        for (range, c) in [(&mut c1_range, c1), (&mut c2_range, c2)] {
            *range = Some(match range.take() {
                None => (c.clone(), c),
                Some((lo, hi)) => (lo.min_exact(&c).clone(), hi.max_exact(&c).clone()),
            });
        }
    }
    let (a_lo, a_hi) = c1_range.expect("four corners");
    let (b_lo, b_hi) = c2_range.expect("four corners");
    let (a_lo, a_hi) = (a_lo.ceil(), a_hi.floor());
    let (b_lo, b_hi) = (b_lo.ceil(), b_hi.floor());
    let mut out = Vec::new();
    let mut a = a_lo;
    while a <= a_hi {
        let base = l.basis()[0].scale_int(&a);
        let mut b = b_lo.clone();
        while b <= b_hi {
            let p = &base + &l.basis()[1].scale_int(&b);
            if bx.contains(&p) {
                out.push(p);
            }
            b += 1;
        }
        a += 1;
    }
    out
}

/// Builtin aperiodic point patterns of the skew tetromino.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// `((2Z∖{0}) × 2Z) ∪ ({0} × (2Z+1))`
    TetrominoL1,
    /// `{(m,n) ∈ (2Z)² : m ≥ n} ∪ {(m,n) ∈ (2Z−1)² : m < n}`
    TetrominoL2,
    /// Multiset union of the two.
    TetrominoUnion,
}

impl Pattern {
    pub fn name(self) -> &'static str {
        match self {
            Pattern::TetrominoL1 => "tetromino-L1",
            Pattern::TetrominoL2 => "tetromino-L2",
            Pattern::TetrominoUnion => "tetromino-union",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "tetromino-L1" => Some(Pattern::TetrominoL1),
            "tetromino-L2" => Some(Pattern::TetrominoL2),
            "tetromino-union" => Some(Pattern::TetrominoUnion),
            _ => None,
        }
    }

    /// Multiplicity of the integer point `(m, n)`.
    pub fn multiplicity(self, m: &BigInt, n: &BigInt) -> u32 {
        let in_l1 = || (m.is_even() && !m.is_zero() && n.is_even()) || (m.is_zero() && n.is_odd());
        let in_l2 =
            || (m.is_even() && n.is_even() && m >= n) || (m.is_odd() && n.is_odd() && m < n);
        match self {
            Pattern::TetrominoL1 => in_l1() as u32,
            Pattern::TetrominoL2 => in_l2() as u32,
            Pattern::TetrominoUnion => in_l1() as u32 + in_l2() as u32,
        }
    }

    /// Multiplicity of an arbitrary point (zero off the integer grid).
    pub fn multiplicity_at(self, p: &PlaneVector) -> u32 {
        match (p.x.to_integer(), p.y.to_integer()) {
            (Some(m), Some(n)) => self.multiplicity(&m, &n),
            _ => 0,
        }
    }
}

/// The translation multiset `Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranslateSet {
    /// `⋃ (L_i + z_i)`; repeated pairs encode multiplicity.
    Periodic(Vec<(PlaneLattice, PlaneVector)>),
    /// A builtin pattern, generated only inside `window`.
    Explicit { pattern: Pattern, window: Window },
}

impl TranslateSet {
    /// All points of `Λ` in a closed box, with repetition.
    pub fn points_in(&self, bx: &Window) -> Vec<PlaneVector> {
        match self {
            TranslateSet::Periodic(cosets) => cosets
                .iter()
                .flat_map(|(l, z)| {
                    enumerate_points(l, &bx.shifted(&-z))
                        .into_iter()
                        .map(move |p| &p + z)
                })
                .collect(),
            TranslateSet::Explicit { pattern, window } => {
                let lo_x = bx.x0.max_exact(&window.x0).ceil();
                let hi_x = bx.x1.min_exact(&window.x1).floor();
                let lo_y = bx.y0.max_exact(&window.y0).ceil();
                let hi_y = bx.y1.min_exact(&window.y1).floor();
                let field = bx.field();
                let mut out = Vec::new();
                let mut m = lo_x;
                while m <= hi_x {
                    let mut n = lo_y.clone();
                    while n <= hi_y {
                        for _ in 0..pattern.multiplicity(&m, &n) {
                            out.push(PlaneVector::new(
                                field.rational_element(Rational::from_integer(m.clone())),
                                field.rational_element(Rational::from_integer(n.clone())),
                            ));
                        }
                        n += 1;
                    }
                    m += 1;
                }
                out
            }
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, TranslateSet::Periodic(_))
    }

    /// Common period lattice of a periodic set.
    pub fn period_lattice(&self) -> Result<PlaneLattice> {
        match self {
            TranslateSet::Periodic(cosets) => {
                let mut it = cosets.iter();
                let (first, _) = it
                    .next()
                    .ok_or_else(|| Error::Precondition("empty translate set".into()))?;
                let mut acc = first.clone();
                for (l, _) in it {
                    acc = lattice_intersect(&acc, l)?;
                }
                Ok(acc)
            }
            TranslateSet::Explicit { .. } => Err(Error::Precondition(
                "explicit point patterns have no period lattice".into(),
            )),
        }
    }
}

fn count_covering(poly: &Polygon, candidates: &[PlaneVector], x: &PlaneVector) -> Result<u64> {
    let mut count = 0;
    for lambda in candidates {
        match poly.classify(&(x - lambda)) {
            Containment::Inside => count += 1,
            Containment::Boundary => return Err(Error::Boundary),
            Containment::Outside => {}
        }
    }
    Ok(count)
}

/// Number of translates `P + λ`, `λ ∈ Λ`, whose interior contains `x`.
pub fn covering_at(poly: &Polygon, lambda: &TranslateSet, x: &PlaneVector) -> Result<u64> {
    let (lo, hi) = poly.bbox();
    let bx = Window {
        x0: &x.x - &hi.x,
        y0: &x.y - &hi.y,
        x1: &x.x - &lo.x,
        y1: &x.y - &lo.y,
    };
    count_covering(poly, &lambda.points_in(&bx), x)
}

#[derive(Clone, Debug)]
struct Segment {
    /// Lexicographically smaller endpoint.
    p: PlaneVector,
    q: PlaneVector,
    /// Index of the translate the edge belongs to, `None` for the region border.
    owner: Option<usize>,
    approx: [f64; 4],
    ends: [(f64, f64); 2],
}

fn slack(v: f64) -> f64 {
    1e-7 * (1.0 + v.abs())
}

impl Segment {
    fn new(a: &PlaneVector, b: &PlaneVector, owner: Option<usize>) -> Self {
        let (p, q) = if a.cmp_lex(b) == Ordering::Greater {
            (b, a)
        } else {
            (a, b)
        };
        let (px, py, qx, qy) = (p.x.to_f64(), p.y.to_f64(), q.x.to_f64(), q.y.to_f64());
        Segment {
            p: p.clone(),
            q: q.clone(),
            owner,
            approx: [px.min(qx), py.min(qy), px.max(qx), py.max(qy)],
            ends: [(px, py), (qx, qy)],
        }
    }

    fn is_vertical(&self) -> bool {
        self.p.x == self.q.x
    }

    fn y_at(&self, x: &FieldElement) -> FieldElement {
        let dx = &self.q.x - &self.p.x;
        let dy = &self.q.y - &self.p.y;
        &self.p.y + &(x - &self.p.x) * &dy.checked_div(&dx).expect("non-vertical")
    }

    fn may_touch(&self, other: &Segment) -> bool {
        let [ax0, ay0, ax1, ay1] = self.approx;
        let [bx0, by0, bx1, by1] = other.approx;
        ax0 <= bx1 + slack(bx1)
            && bx0 <= ax1 + slack(ax1)
            && ay0 <= by1 + slack(by1)
            && by0 <= ay1 + slack(ay1)
    }

    /// False only when `other` lies strictly on one side of this segment's line,
    /// by a margin that floating-point error cannot close.
    fn may_straddle(&self, other: &Segment) -> bool {
        let [(px, py), (qx, qy)] = self.ends;
        let (dx, dy) = (qx - px, qy - py);
        let scale = dx.abs() + dy.abs();
        let side = |(x, y): (f64, f64)| {
            let o = dx * (y - py) - dy * (x - px);
            let tol = 1e-9 * scale * (1.0 + (x - px).abs() + (y - py).abs());
            if o > tol {
                1
            } else if o < -tol {
                -1
            } else {
                0
            }
        };
        let (a, b) = (side(other.ends[0]), side(other.ends[1]));
        !(a == b && a != 0)
    }

    /// x-coordinate of a proper crossing point, if the segments meet at a single point.
    fn crossing_x(&self, other: &Segment) -> Option<FieldElement> {
        let d1 = &self.q - &self.p;
        let d2 = &other.q - &other.p;
        let denom = det(&d1, &d2);
        if denom.is_zero() {
            return None;
        }
        let w = &other.p - &self.p;
        let s = det(&w, &d2).checked_div(&denom).ok()?;
        let u = det(&w, &d1).checked_div(&denom).ok()?;
        let unit =
            |t: &FieldElement| t.sign() >= 0 && t.cmp_exact(&t.field().one()) != Ordering::Greater;
        (unit(&s) && unit(&u)).then(|| &self.p.x + &(&s * &d1.x))
    }
}

/// Translates with floating-point shadows of the geometry. The shadows only
/// settle cases that rounding cannot flip; everything else is decided exactly.
struct Placed {
    points: Vec<PlaneVector>,
    shifts: Vec<(f64, f64)>,
    boxes: Vec<[f64; 4]>,
    outline: Vec<(f64, f64)>,
    extent: f64,
}

impl Placed {
    fn new(poly: &Polygon, points: Vec<PlaneVector>) -> Self {
        let (lo, hi) = poly.bbox();
        let (lx, ly, hx, hy) = (lo.x.to_f64(), lo.y.to_f64(), hi.x.to_f64(), hi.y.to_f64());
        let shifts: Vec<(f64, f64)> = points
            .iter()
            .map(|t| (t.x.to_f64(), t.y.to_f64()))
            .collect();
        let boxes = shifts
            .iter()
            .map(|&(tx, ty)| [lx + tx, ly + ty, hx + tx, hy + ty])
            .collect();
        let outline: Vec<(f64, f64)> = poly
            .vertices()
            .iter()
            .map(|v| (v.x.to_f64(), v.y.to_f64()))
            .collect();
        let extent = outline
            .iter()
            .fold(0.0f64, |m, &(x, y)| m.max(x.abs()).max(y.abs()));
        Placed {
            points,
            shifts,
            boxes,
            outline,
            extent,
        }
    }

    /// Crossing-parity test in floating point; `None` when some predicate is
    /// too close to zero to trust.
    fn classify_approx(&self, q: (f64, f64)) -> Option<bool> {
        let scale = 1.0 + self.extent + q.0.abs() + q.1.abs();
        let tol = 1e-9 * scale * scale;
        let n = self.outline.len();
        let mut inside = false;
        for i in 0..n {
            let a = self.outline[i];
            let b = self.outline[(i + 1) % n];
            let (da, db) = (a.1 - q.1, b.1 - q.1);
            if da.abs() < tol || db.abs() < tol {
                return None;
            }
            if (da > 0.0) != (db > 0.0) {
                let side = (b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0);
                if side.abs() < tol {
                    return None;
                }
                let upward = db > 0.0;
                if upward == (side > 0.0) {
                    inside = !inside;
                }
            }
        }
        Some(inside)
    }

    fn count(&self, poly: &Polygon, x: &PlaneVector) -> Result<u64> {
        let (sx, sy) = (x.x.to_f64(), x.y.to_f64());
        let mut count = 0;
        for ((t, b), &(tx, ty)) in self.points.iter().zip(&self.boxes).zip(&self.shifts) {
            if sx < b[0] - slack(b[0])
                || sx > b[2] + slack(b[2])
                || sy < b[1] - slack(b[1])
                || sy > b[3] + slack(b[3])
            {
                continue;
            }
            match self.classify_approx((sx - tx, sy - ty)) {
                Some(true) => count += 1,
                Some(false) => {}
                None => match poly.classify(&(x - t)) {
                    Containment::Inside => count += 1,
                    Containment::Boundary => return Err(Error::Boundary),
                    Containment::Outside => {}
                },
            }
        }
        Ok(count)
    }
}

/// Floating-point location of the crossing of two segments' lines, when the
/// lines are far from parallel.
fn approx_crossing(a: &Segment, b: &Segment) -> Option<(f64, f64)> {
    let [(px, py), (qx, qy)] = a.ends;
    let [(rx, ry), (wx, wy)] = b.ends;
    let (d1x, d1y, d2x, d2y) = (qx - px, qy - py, wx - rx, wy - ry);
    let denom = d1x * d2y - d1y * d2x;
    let norm = (d1x.abs() + d1y.abs()) * (d2x.abs() + d2y.abs());
    if denom.abs() < 1e-6 * norm {
        return None;
    }
    let s = ((rx - px) * d2y - (ry - py) * d2x) / denom;
    Some((px + s * d1x, py + s * d1y))
}

/// One trapezoidal piece of a face, with its interior sample point.
#[derive(Clone, Debug)]
pub struct Cell {
    pub sample: PlaneVector,
    /// Corners counterclockwise: lower-left, lower-right, upper-right, upper-left.
    pub corners: [PlaneVector; 4],
    pub count: u64,
}

impl Cell {
    pub fn area(&self) -> FieldElement {
        let [ll, lr, ur, ul] = &self.corners;
        let width = &lr.x - &ll.x;
        let left = &ul.y - &ll.y;
        let right = &ur.y - &lr.y;
        (&left + &right) * width.scale(&Rational::new(1.into(), 2.into()))
    }
}

fn sort_dedup(values: &mut Vec<FieldElement>) {
    values.sort_by(|a, b| a.cmp_exact(b));
    values.dedup_by(|a, b| a == b);
}

/// Trapezoidal decomposition of `region` by all translate edges meeting it,
/// with the covering count evaluated at each trapezoid's midpoint.
pub fn decompose(poly: &Polygon, lambda: &TranslateSet, region: &Window) -> Result<Vec<Cell>> {
    let (lo, hi) = poly.bbox();
    let placed = Placed::new(poly, lambda.points_in(&region.minus_bbox(&lo, &hi)));
    let [c0, c1, c2, c3] = region.corners();
    let region_seg = Segment::new(&c0, &c2, None);
    let mut segments: Vec<Segment> = Vec::new();
    for (i, t) in placed.points.iter().enumerate() {
        for (a, b) in poly.edges() {
            let s = Segment::new(&(a + t), &(b + t), Some(i));
            if s.may_touch(&region_seg) {
                segments.push(s);
            }
        }
    }
    segments.push(Segment::new(&c0, &c1, None));
    segments.push(Segment::new(&c3, &c2, None));
    segments.sort_by(|a, b| a.approx[0].total_cmp(&b.approx[0]));

    let inside_x = |x: &FieldElement| {
        region.x0.cmp_exact(x) == Ordering::Less && x.cmp_exact(&region.x1) == Ordering::Less
    };
    let (rx0, ry0, rx1, ry1) = (
        region_seg.approx[0],
        region_seg.approx[1],
        region_seg.approx[2],
        region_seg.approx[3],
    );
    let far_outside = |(x, y): (f64, f64)| {
        let m = 1e-6 * (1.0 + rx0.abs() + rx1.abs() + ry0.abs() + ry1.abs());
        x < rx0 - m || x > rx1 + m || y < ry0 - m || y > ry1 + m
    };
    let mut xs = vec![region.x0.clone(), region.x1.clone()];
    for s in &segments {
        for e in [&s.p.x, &s.q.x] {
            if inside_x(e) {
                xs.push(e.clone());
            }
        }
    }
    for i in 0..segments.len() {
        let a = &segments[i];
        let reach = a.approx[2] + slack(a.approx[2]);
        for b in &segments[i + 1..] {
            if b.approx[0] > reach {
                break;
            }
            // Edges of one simple polygon meet only at shared vertices.
            if a.owner == b.owner || !a.may_touch(b) || !a.may_straddle(b) || !b.may_straddle(a) {
                continue;
            }
            // Crossings outside the region do not change the order of edges inside it.
            if approx_crossing(a, b).is_some_and(far_outside) {
                continue;
            }
            if let Some(x) = a.crossing_x(b) {
                if inside_x(&x) {
                    xs.push(x);
                }
            }
        }
    }
    sort_dedup(&mut xs);

    let mut cells = Vec::new();
    for w in xs.windows(2) {
        let (xa, xb) = (&w[0], &w[1]);
        let xm = xa.midpoint(xb);
        let xm_f = xm.to_f64();
        let mut crossing: Vec<(FieldElement, &Segment)> = segments
            .iter()
            .filter(|s| {
                s.approx[0] <= xm_f + slack(xm_f)
                    && xm_f <= s.approx[2] + slack(xm_f)
                    && !s.is_vertical()
                    && s.p.x.cmp_exact(&xm) == Ordering::Less
                    && xm.cmp_exact(&s.q.x) == Ordering::Less
            })
            .map(|s| (s.y_at(&xm), s))
            .filter(|(y, _)| {
                region.y0.cmp_exact(y) != Ordering::Greater
                    && y.cmp_exact(&region.y1) != Ordering::Greater
            })
            .collect();
        crossing.sort_by(|a, b| a.0.cmp_exact(&b.0));
        crossing.dedup_by(|a, b| a.0 == b.0);
        for pair in crossing.windows(2) {
            let (ya, sa) = &pair[0];
            let (yb, sb) = &pair[1];
            let sample = PlaneVector::new(xm.clone(), ya.midpoint(yb));
            let corners = [
                PlaneVector::new(xa.clone(), sa.y_at(xa)),
                PlaneVector::new(xb.clone(), sa.y_at(xb)),
                PlaneVector::new(xb.clone(), sb.y_at(xb)),
                PlaneVector::new(xa.clone(), sb.y_at(xa)),
            ];
            let count = placed.count(poly, &sample)?;
            cells.push(Cell {
                sample,
                corners,
                count,
            });
        }
    }
    Ok(cells)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub first: PlaneVector,
    pub first_count: u64,
    pub second: PlaneVector,
    pub second_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub constant: bool,
    pub multiplicity: Option<u64>,
    pub counterexample: Option<Counterexample>,
    pub cells_checked: usize,
    /// Set for explicit sets: the verdict covers only the checked window.
    pub window_relative: bool,
}

fn summarize(
    samples: impl IntoIterator<Item = (PlaneVector, u64)>,
    window_relative: bool,
) -> VerifyReport {
    let mut first: Option<(PlaneVector, u64)> = None;
    let mut checked = 0;
    let mut counterexample = None;
    for (p, c) in samples {
        checked += 1;
        match &first {
            None => first = Some((p, c)),
            Some((p0, c0)) => {
                if counterexample.is_none() && c != *c0 {
                    counterexample = Some(Counterexample {
                        first: p0.clone(),
                        first_count: *c0,
                        second: p,
                        second_count: c,
                    });
                }
            }
        }
    }
    let constant = counterexample.is_none() && first.is_some();
    VerifyReport {
        constant,
        multiplicity: if constant {
            first.map(|(_, c)| c)
        } else {
            None
        },
        counterexample,
        cells_checked: checked,
        window_relative,
    }
}

/// Region whose coverage certifies the whole set: the bounding box of the
/// period lattice's basis cell, or the part of the pattern window that sees
/// every translate able to reach it.
pub fn verification_region(poly: &Polygon, lambda: &TranslateSet) -> Result<Window> {
    match lambda {
        TranslateSet::Periodic(_) => {
            let period = lambda.period_lattice()?;
            let field = poly.field().clone();
            let [b1, b2] = period.basis();
            let pts = [PlaneVector::zero(&field), b1.clone(), b2.clone(), b1 + b2];
            let mut x0 = pts[0].x.clone();
            let mut x1 = x0.clone();
            let mut y0 = pts[0].y.clone();
            let mut y1 = y0.clone();
            for p in &pts[1..] {
                x0 = x0.min_exact(&p.x).clone();
                x1 = x1.max_exact(&p.x).clone();
                y0 = y0.min_exact(&p.y).clone();
                y1 = y1.max_exact(&p.y).clone();
            }
            Window::new(x0, y0, x1, y1)
        }
        TranslateSet::Explicit { window, .. } => {
            let (lo, hi) = poly.bbox();
            Window::new(
                &window.x0 + &hi.x,
                &window.y0 + &hi.y,
                &window.x1 + &lo.x,
                &window.y1 + &lo.y,
            )
            .map_err(|_| Error::Window("pattern window is too small for the polygon".into()))
        }
    }
}

/// Checks that the covering function of `P + Λ` is constant.
pub fn verify_multitiling(
    poly: &Polygon,
    lambda: &TranslateSet,
    mode: Mode,
) -> Result<VerifyReport> {
    let region = verification_region(poly, lambda)?;
    let window_relative = !lambda.is_periodic();
    match mode {
        Mode::Exact => {
            let cells = decompose(poly, lambda, &region)?;
            Ok(summarize(
                cells.into_iter().map(|c| (c.sample, c.count)),
                window_relative,
            ))
        }
        Mode::Sampled { samples, seed } => {
            let (lo, hi) = poly.bbox();
            let placed = Placed::new(poly, lambda.points_in(&region.minus_bbox(&lo, &hi)));
            let mut rng = StdRng::seed_from_u64(seed);
            let denom = Rational::from_integer(BigInt::one() << 32);
            let dx = &region.x1 - &region.x0;
            let dy = &region.y1 - &region.y0;
            let mut out = Vec::with_capacity(samples);
            let mut attempts = 0usize;
            while out.len() < samples {
                attempts += 1;
                if attempts > samples * 100 + 100 {
                    return Err(Error::InternalConsistency(
                        "too many random samples landed on translate boundaries".into(),
                    ));
                }
                let rx = Rational::from_integer(rng.gen_range(1u64..(1 << 32)).into()) / &denom;
                let ry = Rational::from_integer(rng.gen_range(1u64..(1 << 32)).into()) / &denom;
                let p = PlaneVector::new(&region.x0 + &dx.scale(&rx), &region.y0 + &dy.scale(&ry));
                match placed.count(poly, &p) {
                    Ok(c) => out.push((p, c)),
                    Err(Error::Boundary) => continue,
                    Err(e) => return Err(e),
                }
            }
            Ok(summarize(out, window_relative))
        }
    }
}

/// Covering behaviour on one horizontal strip `R × [n, n+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripEntry {
    pub n: i64,
    /// The covering count, when it is constant on the strip.
    pub constant: Option<u64>,
    /// Area-weighted mean covering over one horizontal period of the strip.
    pub mean: FieldElement,
}

/// Covering counts of `P + L` on the strips `R × [n, n+1]` for `n` in `range`.
/// `L` must contain a nonzero horizontal vector.
pub fn strip_profile(
    poly: &Polygon,
    l: &PlaneLattice,
    range: std::ops::Range<i64>,
) -> Result<Vec<StripEntry>> {
    let period = horizontal_period(l)
        .ok_or_else(|| Error::Precondition("lattice has no horizontal period".into()))?;
    let field = poly.field().clone();
    let lambda = TranslateSet::Periodic(vec![(l.clone(), PlaneVector::zero(l.field()))]);
    range
        .map(|n| {
            let region = Window::new(field.zero(), field.int(n), period.clone(), field.int(n + 1))?;
            let cells = decompose(poly, &lambda, &region)?;
            let report = summarize(cells.iter().map(|c| (c.sample.clone(), c.count)), false);
            let mut weighted = field.zero();
            for c in &cells {
                weighted += &c.area().scale(&Rational::from_integer(c.count.into()));
            }
            Ok(StripEntry {
                n,
                constant: report.multiplicity,
                mean: weighted.checked_div(&region.area())?,
            })
        })
        .collect()
}

/// The skew tetromino: four unit squares, non-convex, eight vertices.
pub fn tetromino(field: &FieldDescriptor) -> Polygon {
    let v = [
        (-1, -1),
        (0, -1),
        (0, 0),
        (1, 0),
        (1, 2),
        (0, 2),
        (0, 1),
        (-1, 1),
    ];
    Polygon::new(
        v.iter()
            .map(|&(x, y)| PlaneVector::ints(field, x, y))
            .collect(),
    )
    .expect("valid polygon")
}

/// The symmetric octagon with vertices in `Z²`, placed in `[0, 3]²`.
pub fn lattice_octagon(field: &FieldDescriptor) -> Polygon {
    let v = [
        (1, 0),
        (2, 0),
        (3, 1),
        (3, 2),
        (2, 3),
        (1, 3),
        (0, 2),
        (0, 1),
    ];
    Polygon::new(
        v.iter()
            .map(|&(x, y)| PlaneVector::ints(field, x, y))
            .collect(),
    )
    .expect("valid polygon")
}

pub const BUILTIN_NAMES: [&str; 4] = [
    "tetromino-L1",
    "tetromino-L2",
    "tetromino-union",
    "octagon-family",
];

/// Named example scenes: the tetromino patterns (generated inside `window`)
/// and the octagon family `Z×2Z + {(0,0), (β,1)}`.
pub fn builtin_pattern(
    name: &str,
    beta: Option<&FieldElement>,
    window: Option<&Window>,
) -> Result<(Polygon, TranslateSet)> {
    if let Some(pattern) = Pattern::from_name(name) {
        let window = window
            .ok_or_else(|| Error::Window(format!("builtin {name} needs a window")))?
            .clone();
        for e in [&window.x0, &window.y0, &window.x1, &window.y1] {
            if !e.is_rational() {
                return Err(Error::Window(
                    "pattern window bounds must be rational".into(),
                ));
            }
        }
        let poly = tetromino(window.field());
        return Ok((poly, TranslateSet::Explicit { pattern, window }));
    }
    if name == "octagon-family" {
        let field = beta.map_or_else(FieldDescriptor::rational, |b| b.field().clone());
        let beta = beta.cloned().unwrap_or_else(|| field.zero());
        let l = PlaneLattice::diagonal(&field, 1, 2);
        let set = TranslateSet::Periodic(vec![
            (l.clone(), PlaneVector::zero(&field)),
            (l, PlaneVector::new(beta, field.one())),
        ]);
        return Ok((lattice_octagon(&field), set));
    }
    Err(Error::UnknownPattern(name.to_string()))
}

/// A point `p` of the pattern inside `window` with `p + v` inside `window`
/// and of different multiplicity, or the same with `−v`; `None` if the shift
/// by `v` preserves the pattern on the window.
pub fn shift_mismatch(pattern: Pattern, v: &PlaneVector, window: &Window) -> Option<PlaneVector> {
    let field = window.field().clone();
    let lo_x = window.x0.ceil();
    let hi_x = window.x1.floor();
    let lo_y = window.y0.ceil();
    let hi_y = window.y1.floor();
    let mut m = lo_x;
    while m <= hi_x {
        let mut n = lo_y.clone();
        while n <= hi_y {
            let p = PlaneVector::new(
                field.rational_element(Rational::from_integer(m.clone())),
                field.rational_element(Rational::from_integer(n.clone())),
            );
            let here = pattern.multiplicity(&m, &n);
            for q in [&p + v, &p - v] {
                if window.contains(&q) && pattern.multiplicity_at(&q) != here {
                    return Some(p);
                }
            }
            n += 1;
        }
        m += 1;
    }
    None
}

/// Approximate coordinates for display.
pub fn approx_point(p: &PlaneVector, bits: u64) -> (f64, f64) {
    let mid = |e: &FieldElement| {
        let (lo, hi) = e.approx(bits);
        ((lo + hi) / Rational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    };
    (mid(&p.x), mid(&p.y))
}

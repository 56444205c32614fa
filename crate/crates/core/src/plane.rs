//! Vectors and lattices in the plane over a multi-quadratic field.
//!
//! A vector with coordinates in `Q(√d₁, …, √d_k)` flattens to a rational
//! tuple of length `2·2^k` (x coefficients, then y coefficients). Lattices
//! are stored by the rational Hermite normal form of that flattening, which
//! makes equal point sets serialize identically.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hnf::{common_denominator, hnf, rational_hnf};
use crate::qfield::{FieldDescriptor, FieldElement, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct PlaneVector {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl PlaneVector {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        let field = if x.field().is_rational_field() {
            y.field().clone()
        } else {
            x.field().clone()
        };
        let x = x
            .lift_to(&field)
            .expect("vector coordinates in different fields");
        let y = y
            .lift_to(&field)
            .expect("vector coordinates in different fields");
        PlaneVector { x, y }
    }

    pub fn ints(field: &FieldDescriptor, x: i64, y: i64) -> Self {
        PlaneVector {
            x: field.int(x),
            y: field.int(y),
        }
    }

    pub fn zero(field: &FieldDescriptor) -> Self {
        PlaneVector {
            x: field.zero(),
            y: field.zero(),
        }
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.x.field()
    }

    pub fn lift_to(&self, field: &FieldDescriptor) -> Option<PlaneVector> {
        Some(PlaneVector {
            x: self.x.lift_to(field)?,
            y: self.y.lift_to(field)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_rational() && self.y.is_rational()
    }

    pub fn scale(&self, s: &FieldElement) -> PlaneVector {
        PlaneVector {
            x: &self.x * s,
            y: &self.y * s,
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> PlaneVector {
        PlaneVector {
            x: self.x.scale(q),
            y: self.y.scale(q),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> PlaneVector {
        self.scale_rational(&Rational::from_integer(k.clone()))
    }

    pub fn dot(&self, other: &PlaneVector) -> FieldElement {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn norm_sq(&self) -> FieldElement {
        self.dot(self)
    }

    /// Rotation by a quarter turn counterclockwise.
    pub fn perp(&self) -> PlaneVector {
        PlaneVector {
            x: -&self.y,
            y: self.x.clone(),
        }
    }

    /// Image under the linear map with rows `m[0]`, `m[1]`.
    pub fn transform(&self, m: &[[FieldElement; 2]; 2]) -> PlaneVector {
        PlaneVector {
            x: &m[0][0] * &self.x + &m[0][1] * &self.y,
            y: &m[1][0] * &self.x + &m[1][1] * &self.y,
        }
    }

    /// Rational coordinates: x coefficients by monomial, then y coefficients.
    pub fn flatten(&self) -> Vec<Rational> {
        self.x
            .coeffs()
            .iter()
            .chain(self.y.coeffs())
            .cloned()
            .collect()
    }

    pub fn from_flat(field: &FieldDescriptor, flat: &[Rational]) -> PlaneVector {
        let n = field.degree();
        PlaneVector {
            x: field.from_coeffs(flat[..n].to_vec()).expect("flat length"),
            y: field
                .from_coeffs(flat[n..2 * n].to_vec())
                .expect("flat length"),
        }
    }

    /// Lexicographic order on the real coordinates.
    pub fn cmp_lex(&self, other: &PlaneVector) -> Ordering {
        self.x
            .cmp_exact(&other.x)
            .then_with(|| self.y.cmp_exact(&other.y))
    }
}

impl std::ops::Add for &PlaneVector {
    type Output = PlaneVector;
    fn add(self, rhs: &PlaneVector) -> PlaneVector {
        PlaneVector {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl std::ops::Sub for &PlaneVector {
    type Output = PlaneVector;
    fn sub(self, rhs: &PlaneVector) -> PlaneVector {
        PlaneVector {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl std::ops::Neg for &PlaneVector {
    type Output = PlaneVector;
    fn neg(self) -> PlaneVector {
        PlaneVector {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl std::fmt::Debug for PlaneVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `det(a, b) = a.x·b.y − a.y·b.x`.
pub fn det(a: &PlaneVector, b: &PlaneVector) -> FieldElement {
    &a.x * &b.y - &a.y * &b.x
}

/// Common field of a list of vectors, lifting rational vectors as needed.
pub fn common_field<'a>(
    vectors: impl IntoIterator<Item = &'a PlaneVector>,
) -> Result<FieldDescriptor> {
    let mut field: Option<FieldDescriptor> = None;
    for v in vectors {
        let f = v.field();
        match &field {
            None => field = Some(f.clone()),
            Some(cur) if cur == f || f.is_rational_field() => {}
            Some(cur) if cur.is_rational_field() => field = Some(f.clone()),
            Some(cur) => {
                return Err(Error::Precondition(format!(
                    "vectors from different fields {cur:?} and {f:?}"
                )))
            }
        }
    }
    Ok(field.unwrap_or_else(FieldDescriptor::rational))
}

fn lift_all(vectors: &[PlaneVector]) -> Result<(FieldDescriptor, Vec<PlaneVector>)> {
    let field = common_field(vectors)?;
    let lifted = vectors
        .iter()
        .map(|v| v.lift_to(&field).expect("common field"))
        .collect();
    Ok((field, lifted))
}

/// A full-rank lattice `Z b₁ + Z b₂`, stored in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneLattice {
    basis: [PlaneVector; 2],
    signed_det: FieldElement,
}

impl PlaneLattice {
    /// Lattice spanned by two vectors with nonzero determinant.
    pub fn new(b1: PlaneVector, b2: PlaneVector) -> Result<Self> {
        let (field, v) = lift_all(&[b1, b2])?;
        if det(&v[0], &v[1]).is_zero() {
            return Err(Error::Precondition(
                "lattice basis vectors are linearly dependent".into(),
            ));
        }
        let rows = rational_hnf(&[v[0].flatten(), v[1].flatten()]);
        debug_assert_eq!(rows.len(), 2);
        Ok(Self::from_canonical(
            PlaneVector::from_flat(&field, &rows[0]),
            PlaneVector::from_flat(&field, &rows[1]),
        ))
    }

    fn from_canonical(b1: PlaneVector, b2: PlaneVector) -> Self {
        let signed_det = det(&b1, &b2);
        PlaneLattice {
            basis: [b1, b2],
            signed_det,
        }
    }

    /// `Z²` over the given field.
    pub fn standard(field: &FieldDescriptor) -> Self {
        Self::diagonal(field, 1, 1)
    }

    /// `aZ × bZ`.
    pub fn diagonal(field: &FieldDescriptor, a: i64, b: i64) -> Self {
        Self::new(
            PlaneVector::ints(field, a, 0),
            PlaneVector::ints(field, 0, b),
        )
        .expect("nonzero diagonal")
    }

    pub fn basis(&self) -> &[PlaneVector; 2] {
        &self.basis
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.basis[0].field()
    }

    /// `|det(b₁, b₂)|`, the covolume.
    pub fn det(&self) -> FieldElement {
        self.signed_det.abs()
    }

    pub fn signed_det(&self) -> &FieldElement {
        &self.signed_det
    }

    /// Real coordinates `(c₁, c₂)` with `v = c₁b₁ + c₂b₂`.
    pub fn coordinates(&self, v: &PlaneVector) -> (FieldElement, FieldElement) {
        let [b1, b2] = &self.basis;
        let c1 = det(v, b2).checked_div(&self.signed_det).expect("full rank");
        let c2 = det(b1, v).checked_div(&self.signed_det).expect("full rank");
        (c1, c2)
    }

    /// Integer coordinates of `v`, if `v` is a lattice point.
    pub fn integer_coordinates(&self, v: &PlaneVector) -> Option<(BigInt, BigInt)> {
        let (c1, c2) = self.coordinates(v);
        Some((c1.to_integer()?, c2.to_integer()?))
    }

    pub fn contains(&self, v: &PlaneVector) -> bool {
        self.integer_coordinates(v).is_some()
    }

    pub fn point(&self, c1: &BigInt, c2: &BigInt) -> PlaneVector {
        &self.basis[0].scale_int(c1) + &self.basis[1].scale_int(c2)
    }

    pub fn point_from_coords(&self, c1: &FieldElement, c2: &FieldElement) -> PlaneVector {
        &self.basis[0].scale(c1) + &self.basis[1].scale(c2)
    }

    /// `other ⊆ self`.
    pub fn contains_lattice(&self, other: &PlaneLattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn same_points(&self, other: &PlaneLattice) -> bool {
        self.contains_lattice(other) && other.contains_lattice(self)
    }

    /// Image of the lattice under a nonsingular linear map.
    pub fn transform(&self, m: &[[FieldElement; 2]; 2]) -> Result<PlaneLattice> {
        PlaneLattice::new(self.basis[0].transform(m), self.basis[1].transform(m))
    }

    /// Basis vector of smallest Euclidean norm among those independent of `v`;
    /// ties go to the first basis vector.
    fn shortest_basis_vector_independent_of(&self, v: &PlaneVector) -> PlaneVector {
        let candidates: Vec<&PlaneVector> =
            self.basis.iter().filter(|b| !det(b, v).is_zero()).collect();
        let mut best = candidates[0];
        for c in &candidates[1..] {
            if c.norm_sq().cmp_exact(&best.norm_sq()) == Ordering::Less {
                best = c;
            }
        }
        best.clone()
    }
}

impl std::fmt::Debug for PlaneLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice[{:?}, {:?}]", self.basis[0], self.basis[1])
    }
}

/// Rank over `Q` of the vectors viewed as rational tuples.
pub fn q_rank(vectors: &[PlaneVector]) -> Result<usize> {
    let (_, v) = lift_all(vectors)?;
    let rows: Vec<Vec<Rational>> = v.iter().map(PlaneVector::flatten).collect();
    Ok(rational_hnf(&rows).len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanVerdict {
    Lattice,
    NotDiscrete,
    RankDeficient,
}

#[derive(Clone, Debug)]
pub struct SpanAnalysis {
    pub q_rank: usize,
    pub verdict: SpanVerdict,
    pub basis: Option<PlaneLattice>,
}

impl SpanAnalysis {
    pub fn lattice(&self) -> Option<&PlaneLattice> {
        self.basis.as_ref()
    }
}

/// Decides whether the `Z`-span of `vectors` is a lattice and, if so, returns
/// its canonical basis.
///
/// The span is a lattice iff it has `Q`-rank 2 and spans the plane; a larger
/// `Q`-rank means the subgroup accumulates.
pub fn zspan_lattice(vectors: &[PlaneVector]) -> Result<SpanAnalysis> {
    let (field, v) = lift_all(vectors)?;
    let rows: Vec<Vec<Rational>> = v.iter().map(PlaneVector::flatten).collect();
    let reduced = rational_hnf(&rows);
    let q_rank = reduced.len();
    let gens: Vec<PlaneVector> = reduced
        .iter()
        .map(|r| PlaneVector::from_flat(&field, r))
        .collect();
    let spans_plane = gens
        .iter()
        .enumerate()
        .any(|(i, a)| gens[i + 1..].iter().any(|b| !det(a, b).is_zero()));
    let (verdict, basis) = if !spans_plane {
        (SpanVerdict::RankDeficient, None)
    } else if q_rank > 2 {
        (SpanVerdict::NotDiscrete, None)
    } else {
        let mut it = gens.into_iter();
        let b1 = it.next().expect("rank 2");
        let b2 = it.next().expect("rank 2");
        (
            SpanVerdict::Lattice,
            Some(PlaneLattice::from_canonical(b1, b2)),
        )
    };
    Ok(SpanAnalysis {
        q_rank,
        verdict,
        basis,
    })
}

/// Intersection of two commensurable lattices.
///
/// Works in the coordinates of `l1`: after scaling by a common denominator
/// `D`, both lattices are integer row lattices `A = D·I` and `B`, and
/// `A ∩ B` is read off the rows of `HNF([[A, A], [B, 0]])` whose first block
/// vanishes.
pub fn lattice_intersect(l1: &PlaneLattice, l2: &PlaneLattice) -> Result<PlaneLattice> {
    let mut coords: Vec<[Rational; 2]> = Vec::with_capacity(2);
    for b in l2.basis() {
        let (c1, c2) = l1.coordinates(b);
        match (c1.to_rational(), c2.to_rational()) {
            (Some(a), Some(b)) => coords.push([a, b]),
            _ => {
                return Err(Error::Incommensurable(
                    "second lattice has irrational coordinates in the first".into(),
                ))
            }
        }
    }
    let d = common_denominator(coords.iter().flatten());
    let scaled: Vec<Vec<BigInt>> = coords
        .iter()
        .map(|r| {
            r.iter()
                .map(|q| (q * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    let z = BigInt::zero();
    let rows = vec![
        vec![d.clone(), z.clone(), d.clone(), z.clone()],
        vec![z.clone(), d.clone(), z.clone(), d.clone()],
        vec![
            scaled[0][0].clone(),
            scaled[0][1].clone(),
            z.clone(),
            z.clone(),
        ],
        vec![
            scaled[1][0].clone(),
            scaled[1][1].clone(),
            z.clone(),
            z.clone(),
        ],
    ];
    let reduced = hnf(rows);
    let kernel: Vec<PlaneVector> = reduced
        .iter()
        .filter(|r| r[0].is_zero() && r[1].is_zero())
        .map(|r| {
            let c1 = Rational::new(r[2].clone(), d.clone());
            let c2 = Rational::new(r[3].clone(), d.clone());
            let f = l1.field();
            l1.point_from_coords(&f.rational_element(c1), &f.rational_element(c2))
        })
        .collect();
    if kernel.len() != 2 {
        return Err(Error::InternalConsistency(format!(
            "intersection of commensurable lattices has rank {}",
            kernel.len()
        )));
    }
    PlaneLattice::new(kernel[0].clone(), kernel[1].clone())
}

/// A sublattice `L' ⊆ L` avoiding the coset `V + τ`, where `V = Z·v` (or `{0}`).
///
/// If `τ` lies on the line of `V`, then `L' = span{v, u}` for a basis vector
/// `u` of `L` off that line; otherwise `L' = span{v, 2τ}`, or `span{2τ, u}`
/// when `V` is trivial.
pub fn avoid_coset(
    l: &PlaneLattice,
    v: Option<&PlaneVector>,
    tau: &PlaneVector,
) -> Result<PlaneLattice> {
    let v = v.filter(|g| !g.is_zero());
    if !l.contains(tau) {
        return Err(Error::Precondition("τ is not a lattice point".into()));
    }
    match v {
        None => {
            if tau.is_zero() {
                return Err(Error::Precondition("τ lies in V".into()));
            }
            let doubled = tau.scale_int(&BigInt::from(2));
            let u = l.shortest_basis_vector_independent_of(tau);
            PlaneLattice::new(doubled, u)
        }
        Some(v) => {
            if !l.contains(v) {
                return Err(Error::Precondition("V is not contained in L".into()));
            }
            if det(v, tau).is_zero() {
                // τ = r·v with r rational; r integral means τ ∈ V.
                let r = if v.x.is_zero() {
                    tau.y.checked_div(&v.y)?
                } else {
                    tau.x.checked_div(&v.x)?
                };
                if r.to_integer().is_some() {
                    return Err(Error::Precondition("τ lies in V".into()));
                }
                let u = l.shortest_basis_vector_independent_of(v);
                PlaneLattice::new(v.clone(), u)
            } else {
                PlaneLattice::new(v.clone(), tau.scale_int(&BigInt::from(2)))
            }
        }
    }
}

/// Decides whether `e ∈ L` and the line `{t·e + τ}` meets `L`.
///
/// In `L`-coordinates `ē ∈ Z²`, and the line through `τ̄` meets `Z²` iff
/// `det(ē, τ̄)` is an integer divisible by `gcd(ē₁, ē₂)`.
pub fn exact_condition2(l: &PlaneLattice, e: &PlaneVector, tau: &PlaneVector) -> bool {
    let Some((e1, e2)) = l.integer_coordinates(e) else {
        return false;
    };
    if e1.is_zero() && e2.is_zero() {
        return l.contains(tau);
    }
    let (t1, t2) = l.coordinates(tau);
    let f = t1.field().clone();
    let d = &f.rational_element(Rational::from_integer(e1.clone())) * &t2
        - &f.rational_element(Rational::from_integer(e2.clone())) * &t1;
    match d.to_integer() {
        Some(d) => d.is_multiple_of(&e1.gcd(&e2)),
        None => false,
    }
}

/// For `e ∈ L` with `det(τ, e)/det(L)` rational: `t₀` making `t₀ē + τ̄`
/// perpendicular to `ē` in `L`-coordinates, and the lattice generated by `L`
/// and `t₀e + τ`.
pub fn condition2_superlattice(
    l: &PlaneLattice,
    e: &PlaneVector,
    tau: &PlaneVector,
) -> Result<(FieldElement, PlaneLattice)> {
    let (e1, e2) = l
        .integer_coordinates(e)
        .ok_or_else(|| Error::Precondition("e is not a lattice point".into()))?;
    if e1.is_zero() && e2.is_zero() {
        return Err(Error::Precondition("e is zero".into()));
    }
    let ratio = det(tau, e).checked_div(l.signed_det())?;
    if !ratio.is_rational() {
        return Err(Error::Rationality(format!(
            "det(τ, e)/det(L) = {ratio} is irrational"
        )));
    }
    let f = l.field().clone();
    let (t1, t2) = l.coordinates(tau);
    let (fe1, fe2) = (
        f.rational_element(Rational::from_integer(e1.clone())),
        f.rational_element(Rational::from_integer(e2.clone())),
    );
    let norm = Rational::from_integer(&e1 * &e1 + &e2 * &e2);
    let t0 = -(&fe1 * &t1 + &fe2 * &t2).scale(&norm.recip());
    let p1 = &t0 * &fe1 + &t1;
    let p2 = &t0 * &fe2 + &t2;
    if !(p1.is_rational() && p2.is_rational()) {
        return Err(Error::InternalConsistency(
            "perpendicular foot has irrational lattice coordinates".into(),
        ));
    }
    let point = l.point_from_coords(&p1, &p2);
    let [b1, b2] = l.basis().clone();
    let span = zspan_lattice(&[b1, b2, point])?;
    let tilde = span.basis.ok_or_else(|| {
        Error::InternalConsistency("superlattice generators are not discrete".into())
    })?;
    Ok((t0, tilde))
}

/// Rational coordinates of every vector in the basis of `l`, when commensurable.
pub fn rational_coordinates(l: &PlaneLattice, v: &PlaneVector) -> Option<[BigRational; 2]> {
    let (c1, c2) = l.coordinates(v);
    Some([c1.to_rational()?, c2.to_rational()?])
}

/// The subgroup of `L` lying on the x-axis, as its positive generator, when nonzero.
pub fn horizontal_period(l: &PlaneLattice) -> Option<FieldElement> {
    let [b1, b2] = l.basis();
    // c1·b1.y + c2·b2.y = 0 has a nonzero integer solution iff the ratio is rational.
    if b1.y.is_zero() {
        return Some(b1.x.abs());
    }
    if b2.y.is_zero() {
        return Some(b2.x.abs());
    }
    let r = b1.y.checked_div(&b2.y).ok()?.to_rational()?;
    // c2 = -c1·r; primitive solution c1 = den(r), c2 = -num(r).
    let c1 = r.denom().clone();
    let c2 = -r.numer().clone();
    let p = l.point(&c1, &c2);
    debug_assert!(p.y.is_zero());
    Some(p.x.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat() -> FieldDescriptor {
        FieldDescriptor::rational()
    }

    fn v(f: &FieldDescriptor, x: (i64, i64), y: (i64, i64)) -> PlaneVector {
        PlaneVector::new(f.ratio(x.0, x.1), f.ratio(y.0, y.1))
    }

    fn vi(f: &FieldDescriptor, x: i64, y: i64) -> PlaneVector {
        PlaneVector::ints(f, x, y)
    }

    #[test]
    fn q_rank_examples() {
        let f = rat();
        assert_eq!(
            q_rank(&[vi(&f, 1, 0), vi(&f, 0, 1), v(&f, (1, 2), (1, 2))]).unwrap(),
            2
        );
        let g = FieldDescriptor::new(&[2, 3]).unwrap();
        let r2 = g.sqrt(2).unwrap();
        let r3 = g.sqrt(3).unwrap();
        assert_eq!(
            q_rank(&[vi(&g, 1, 0), PlaneVector::new(r2.clone(), g.zero())]).unwrap(),
            2
        );
        assert_eq!(
            q_rank(&[vi(&g, 1, 0), vi(&g, 0, 1), PlaneVector::new(r2, r3)]).unwrap(),
            3
        );
    }

    #[test]
    fn zspan_examples() {
        let f = rat();
        let s = zspan_lattice(&[vi(&f, 1, 0), vi(&f, 0, 1), v(&f, (1, 2), (1, 2))]).unwrap();
        assert_eq!(s.verdict, SpanVerdict::Lattice);
        assert_eq!(s.basis.unwrap().det(), f.ratio(1, 2));

        let g = FieldDescriptor::new(&[2, 3]).unwrap();
        let r2 = g.sqrt(2).unwrap();
        let s = zspan_lattice(&[
            vi(&g, 1, 0),
            PlaneVector::new(r2.clone(), g.zero()),
            vi(&g, 0, 1),
        ])
        .unwrap();
        assert_eq!(s.verdict, SpanVerdict::NotDiscrete);
        assert_eq!(s.q_rank, 3);

        let s = zspan_lattice(&[
            PlaneVector::new(r2, g.zero()),
            PlaneVector::new(g.zero(), g.sqrt(3).unwrap()),
        ])
        .unwrap();
        assert_eq!(s.verdict, SpanVerdict::Lattice);
        assert_eq!(s.basis.unwrap().det(), g.sqrt(6).unwrap());

        let s = zspan_lattice(&[vi(&f, 1, 1), vi(&f, 2, 2)]).unwrap();
        assert_eq!(s.verdict, SpanVerdict::RankDeficient);
    }

    #[test]
    fn membership_examples() {
        let f = rat();
        let l = PlaneLattice::diagonal(&f, 1, 2);
        assert!(l.contains(&vi(&f, 2, 4)));
        assert!(!l.contains(&vi(&f, 1, 1)));
        let l = PlaneLattice::new(v(&f, (1, 2), (1, 2)), vi(&f, 0, 1)).unwrap();
        assert!(l.contains(&v(&f, (1, 2), (1, 2))));
    }

    #[test]
    fn determinant_examples() {
        let f = rat();
        assert_eq!(PlaneLattice::standard(&f).det(), f.int(1));
        assert_eq!(PlaneLattice::diagonal(&f, 1, 2).det(), f.int(2));
        // Orientation of the input basis does not matter.
        let l = PlaneLattice::new(vi(&f, 0, 1), vi(&f, 1, 0)).unwrap();
        assert_eq!(l.det(), f.int(1));
    }

    #[test]
    fn canonical_form_ignores_basis_choice() {
        let f = rat();
        let a = PlaneLattice::new(vi(&f, 1, 1), vi(&f, 1, -1)).unwrap();
        let b = PlaneLattice::new(vi(&f, 3, 1), vi(&f, 2, 0)).unwrap();
        assert!(a.same_points(&b));
        assert_eq!(a, b);
    }

    #[test]
    fn intersect_examples() {
        let f = rat();
        let a = PlaneLattice::diagonal(&f, 2, 1);
        let b = PlaneLattice::diagonal(&f, 1, 3);
        assert_eq!(
            lattice_intersect(&a, &b).unwrap(),
            PlaneLattice::diagonal(&f, 2, 3)
        );

        let diag = PlaneLattice::new(vi(&f, 1, 1), vi(&f, 1, -1)).unwrap();
        let z2 = PlaneLattice::standard(&f);
        let i = lattice_intersect(&diag, &z2).unwrap();
        assert_eq!(i, diag);
        assert_eq!(i.det(), f.int(2));

        let fine = PlaneLattice::new(v(&f, (1, 3), (0, 1)), vi(&f, 0, 1)).unwrap();
        assert_eq!(lattice_intersect(&z2, &fine).unwrap(), z2);
    }

    #[test]
    fn intersect_refuses_incommensurable() {
        let g = FieldDescriptor::new(&[2]).unwrap();
        let a = PlaneLattice::standard(&g);
        let b = PlaneLattice::new(PlaneVector::new(g.sqrt(2).unwrap(), g.zero()), vi(&g, 0, 1))
            .unwrap();
        assert!(matches!(
            lattice_intersect(&a, &b),
            Err(Error::Incommensurable(_))
        ));
    }

    #[test]
    fn avoid_coset_examples() {
        let f = rat();
        let z2 = PlaneLattice::standard(&f);
        let l = avoid_coset(&z2, None, &vi(&f, 1, 0)).unwrap();
        assert_eq!(l, PlaneLattice::diagonal(&f, 2, 1));
        assert!(!l.contains(&vi(&f, 1, 0)));

        let l = avoid_coset(&z2, Some(&vi(&f, 1, 0)), &vi(&f, 0, 1)).unwrap();
        assert_eq!(l, PlaneLattice::diagonal(&f, 1, 2));

        let l = avoid_coset(&z2, Some(&vi(&f, 2, 0)), &vi(&f, 1, 0)).unwrap();
        assert_eq!(l, PlaneLattice::diagonal(&f, 2, 1));

        assert!(avoid_coset(&z2, Some(&vi(&f, 1, 0)), &vi(&f, 3, 0)).is_err());
        assert!(avoid_coset(&z2, None, &vi(&f, 0, 0)).is_err());
        assert!(avoid_coset(&z2, None, &v(&f, (1, 2), (0, 1))).is_err());
    }

    #[test]
    fn condition2_examples() {
        let f = FieldDescriptor::new(&[2]).unwrap();
        let z2 = PlaneLattice::standard(&f);
        let r2 = f.sqrt(2).unwrap();
        assert!(exact_condition2(&z2, &vi(&f, 2, 0), &vi(&f, 0, 1)));
        assert!(exact_condition2(
            &z2,
            &vi(&f, 1, 0),
            &PlaneVector::new(r2.clone(), f.int(3))
        ));
        assert!(!exact_condition2(
            &z2,
            &vi(&f, 1, 0),
            &PlaneVector::new(r2.clone(), f.ratio(1, 2))
        ));
        // e ∉ L
        assert!(!exact_condition2(
            &z2,
            &v(&f, (1, 2), (0, 1)),
            &vi(&f, 0, 1)
        ));
        // det(ē, τ̄) = 1 is an integer but not a multiple of gcd(4, 2).
        assert!(exact_condition2(&z2, &vi(&f, 2, 4), &vi(&f, 1, 0)));
        assert!(!exact_condition2(
            &z2,
            &vi(&f, 4, 2),
            &v(&f, (1, 2), (1, 2))
        ));
    }

    #[test]
    fn superlattice_examples() {
        let f = FieldDescriptor::new(&[2]).unwrap();
        let z2 = PlaneLattice::standard(&f);
        let r2 = f.sqrt(2).unwrap();

        let (t0, lt) = condition2_superlattice(&z2, &vi(&f, 1, 0), &v(&f, (1, 2), (3, 1))).unwrap();
        assert_eq!(t0, f.ratio(-1, 2));
        assert_eq!(lt, z2);

        let tau = PlaneVector::new(r2.clone(), f.ratio(1, 2));
        let (t0, lt) = condition2_superlattice(&z2, &vi(&f, 1, 0), &tau).unwrap();
        assert_eq!(t0, -&r2);
        assert_eq!(
            lt,
            PlaneLattice::new(vi(&f, 1, 0), v(&f, (0, 1), (1, 2))).unwrap()
        );
        assert!(lt.contains(&(&vi(&f, 1, 0).scale(&t0) + &tau)));
        assert!(lt.contains_lattice(&z2));

        let err = condition2_superlattice(&z2, &vi(&f, 0, 1), &PlaneVector::new(r2, f.zero()));
        assert!(matches!(err, Err(Error::Rationality(_))));
    }

    #[test]
    fn horizontal_period_of_skewed_lattice() {
        let f = rat();
        let l = PlaneLattice::new(vi(&f, 1, 2), vi(&f, 0, 3)).unwrap();
        assert_eq!(horizontal_period(&l), Some(f.int(3)));
        assert_eq!(
            horizontal_period(&PlaneLattice::diagonal(&f, 1, 2)),
            Some(f.int(1))
        );
    }
}

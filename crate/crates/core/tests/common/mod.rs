#![allow(dead_code)]

use multitile::{FieldDescriptor, FieldElement, PlaneLattice, PlaneVector, Rational, Zonotope};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn q23() -> FieldDescriptor {
    FieldDescriptor::new(&[2, 3]).unwrap()
}

pub fn rational(spread: i64, den: i64) -> impl Strategy<Value = Rational> {
    (-spread..=spread, 1..=den).prop_map(|(n, d)| q(n, d))
}

pub fn element(f: FieldDescriptor, spread: i64, den: i64) -> impl Strategy<Value = FieldElement> {
    proptest::collection::vec(rational(spread, den), f.degree())
        .prop_map(move |c| f.from_coeffs(c).unwrap())
}

pub fn vector(f: FieldDescriptor, spread: i64, den: i64) -> impl Strategy<Value = PlaneVector> {
    (element(f.clone(), spread, den), element(f, spread, den))
        .prop_map(|(x, y)| PlaneVector::new(x, y))
}

pub fn rational_vector(
    f: FieldDescriptor,
    spread: i64,
    den: i64,
) -> impl Strategy<Value = PlaneVector> {
    (rational(spread, den), rational(spread, den))
        .prop_map(move |(x, y)| PlaneVector::new(f.rational_element(x), f.rational_element(y)))
}

pub fn int_vector(f: FieldDescriptor, spread: i64) -> impl Strategy<Value = PlaneVector> {
    (-spread..=spread, -spread..=spread).prop_map(move |(x, y)| PlaneVector::ints(&f, x, y))
}

/// Full-rank lattices with small rational bases.
pub fn rational_lattice(
    f: FieldDescriptor,
    spread: i64,
    den: i64,
) -> impl Strategy<Value = PlaneLattice> {
    (
        rational_vector(f.clone(), spread, den),
        rational_vector(f, spread, den),
    )
        .prop_filter_map("singular basis", |(a, b)| PlaneLattice::new(a, b).ok())
}

/// Sublattices of `Z²` in Hermite form with determinant at most `max_det`.
pub fn sublattice(f: FieldDescriptor, max_det: i64) -> impl Strategy<Value = PlaneLattice> {
    (1..=max_det, 1..=max_det, 0..max_det)
        .prop_filter("determinant too large", move |&(a, d, _)| a * d <= max_det)
        .prop_map(move |(a, d, b)| {
            PlaneLattice::new(PlaneVector::ints(&f, a, 0), PlaneVector::ints(&f, b % a, d)).unwrap()
        })
}

pub fn zonotope(
    f: FieldDescriptor,
    m: std::ops::RangeInclusive<usize>,
    spread: i64,
    den: i64,
) -> impl Strategy<Value = Zonotope> {
    m.prop_flat_map(move |m| proptest::collection::vec(vector(f.clone(), spread, den), m))
        .prop_filter_map("colinear generators", |g| Zonotope::from_unordered(g).ok())
}

pub fn integer_zonotope(
    f: FieldDescriptor,
    m: std::ops::RangeInclusive<usize>,
    spread: i64,
) -> impl Strategy<Value = Zonotope> {
    m.prop_flat_map(move |m| proptest::collection::vec(int_vector(f.clone(), spread), m))
        .prop_filter_map("colinear generators", |g| Zonotope::from_unordered(g).ok())
}

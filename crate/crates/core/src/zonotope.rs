//! Planar zonotopes `P = {Σ α_j e_j : α_j ∈ [-1/2, 1/2]}` given by pairwise
//! non-colinear generators of strictly increasing argument in the upper
//! half-plane.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::plane::{common_field, det, PlaneVector};
use crate::qfield::{FieldDescriptor, FieldElement, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zonotope {
    generators: Vec<PlaneVector>,
}

/// True for `y > 0`, or `y = 0` and `x > 0`.
fn in_upper_half_plane(v: &PlaneVector) -> bool {
    match v.y.sign() {
        1 => true,
        0 => v.x.sign() > 0,
        _ => false,
    }
}

impl Zonotope {
    /// Validates generators `e₁, …, e_m`. Generators pointing into the lower
    /// half-plane are negated first; the order must then already be by
    /// strictly increasing argument.
    pub fn new(generators: Vec<PlaneVector>) -> Result<Self> {
        if generators.len() < 2 {
            return Err(Error::Construction {
                index: generators.len(),
                reason: "at least two generators are required".into(),
            });
        }
        let field = common_field(&generators)?;
        let mut gens = Vec::with_capacity(generators.len());
        for (i, g) in generators.into_iter().enumerate() {
            let g = g.lift_to(&field).expect("common field");
            if g.is_zero() {
                return Err(Error::Construction {
                    index: i + 1,
                    reason: "zero generator".into(),
                });
            }
            gens.push(if in_upper_half_plane(&g) { g } else { -&g });
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if det(&gens[i], &gens[j]).is_zero() {
                    return Err(Error::Construction {
                        index: j + 1,
                        reason: format!("generator {} is colinear with generator {}", j + 1, i + 1),
                    });
                }
            }
        }
        for j in 0..gens.len() - 1 {
            if det(&gens[j], &gens[j + 1]).sign() <= 0 {
                return Err(Error::Construction {
                    index: j + 2,
                    reason: format!(
                        "argument does not increase from generator {} to {}",
                        j + 1,
                        j + 2
                    ),
                });
            }
        }
        if det(&gens[0], &gens[gens.len() - 1]).sign() <= 0 {
            return Err(Error::Construction {
                index: gens.len(),
                reason: "generators do not fit in a half-plane".into(),
            });
        }
        Ok(Zonotope { generators: gens })
    }

    /// Like [`Zonotope::new`], but sorts the (normalized) generators by argument first.
    pub fn from_unordered(generators: Vec<PlaneVector>) -> Result<Self> {
        let field = common_field(&generators)?;
        let mut gens: Vec<PlaneVector> = generators
            .into_iter()
            .map(|g| {
                let g = g.lift_to(&field).expect("common field");
                if g.is_zero() || in_upper_half_plane(&g) {
                    g
                } else {
                    -&g
                }
            })
            .collect();
        gens.sort_by(|a, b| match det(a, b).sign() {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        });
        Self::new(gens)
    }

    /// Recovers the generators from a cyclically ordered vertex list of a
    /// centrally symmetric convex polygon (either orientation).
    pub fn from_vertices(vertices: &[PlaneVector]) -> Result<Self> {
        let n = vertices.len();
        if n < 4 || n % 2 == 1 {
            return Err(Error::Symmetry(format!(
                "a centrally symmetric polygon needs an even number (≥ 4) of vertices, got {n}"
            )));
        }
        let field = common_field(vertices)?;
        let verts: Vec<PlaneVector> = vertices
            .iter()
            .map(|v| v.lift_to(&field).expect("common field"))
            .collect();
        let m = n / 2;
        let doubled_center = &verts[0] + &verts[m];
        for i in 1..m {
            if &verts[i] + &verts[i + m] != doubled_center {
                return Err(Error::Symmetry(format!(
                    "vertices {} and {} are not symmetric about the center",
                    i + 1,
                    i + m + 1
                )));
            }
        }
        let edges: Vec<PlaneVector> = (0..n).map(|i| &verts[(i + 1) % n] - &verts[i]).collect();
        let turns: Vec<i32> = (0..n)
            .map(|i| det(&edges[i], &edges[(i + 1) % n]).sign())
            .collect();
        let orientation = turns[0];
        if orientation == 0 || turns.iter().any(|&t| t != orientation) {
            return Err(Error::Symmetry("polygon is not strictly convex".into()));
        }
        let zonotope = Zonotope::from_unordered(edges[..m].to_vec())
            .map_err(|e| Error::Symmetry(format!("edge vectors do not form a zonotope: {e}")))?;
        // A star-shaped or self-overlapping vertex walk passes the local checks;
        // compare against the vertex set of the recovered zonotope.
        let center = doubled_center.scale_rational(&Rational::new(1.into(), 2.into()));
        let mut expected: Vec<PlaneVector> =
            zonotope.vertices().iter().map(|v| v + &center).collect();
        let mut given = verts;
        expected.sort_by(PlaneVector::cmp_lex);
        given.sort_by(PlaneVector::cmp_lex);
        if expected != given {
            return Err(Error::Symmetry("vertex walk winds more than once".into()));
        }
        Ok(zonotope)
    }

    pub fn generators(&self) -> &[PlaneVector] {
        &self.generators
    }

    pub fn m(&self) -> usize {
        self.generators.len()
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.generators[0].field()
    }

    /// `e_j` for any integer `j ≥ 1`, with `e_{j+m} = −e_j`.
    pub fn extended_generator(&self, j: usize) -> PlaneVector {
        let m = self.m();
        let k = (j - 1) % (2 * m);
        if k < m {
            self.generators[k].clone()
        } else {
            -&self.generators[k - m]
        }
    }

    /// `τ_j = e_{j+1} + ⋯ + e_{j+m−1}`, translating edge `e_j` onto its parallel edge.
    pub fn tau_vectors(&self) -> Vec<PlaneVector> {
        let m = self.m();
        (1..=m)
            .map(|j| {
                let mut t = PlaneVector::zero(self.field());
                for i in j + 1..j + m {
                    t = &t + &self.extended_generator(i);
                }
                t
            })
            .collect()
    }

    /// Signed `±1` combination of `τ_{j'}, j' ≠ j` equal to `e_j`, valid for even `m`:
    /// `e_j = Σ_{s=1}^{m−1} (−1)^s τ_{j+s}` with `τ_{i+m} = −τ_i`.
    /// Indices in the result are 1-based.
    pub fn even_tau_representation(&self, j: usize) -> Option<Vec<(usize, i32)>> {
        let m = self.m();
        if m % 2 == 1 || j == 0 || j > m {
            return None;
        }
        Some(
            (1..m)
                .map(|s| {
                    let mut sign = if s % 2 == 1 { -1 } else { 1 };
                    let mut idx = j + s;
                    if idx > m {
                        idx -= m;
                        sign = -sign;
                    }
                    (idx, sign)
                })
                .collect(),
        )
    }

    /// Vertices in counterclockwise order, starting at `−(e₁ + ⋯ + e_m)/2`,
    /// for the zonotope centered at the origin.
    pub fn vertices(&self) -> Vec<PlaneVector> {
        let m = self.m();
        let mut sum = PlaneVector::zero(self.field());
        for g in &self.generators {
            sum = &sum + g;
        }
        let mut v = sum.scale_rational(&Rational::new((-1).into(), 2.into()));
        let mut out = Vec::with_capacity(2 * m);
        for j in 1..=2 * m {
            out.push(v.clone());
            v = &v + &self.extended_generator(j);
        }
        out
    }

    /// `Σ_{i<j} |det(e_i, e_j)|`.
    pub fn area(&self) -> FieldElement {
        let mut a = self.field().zero();
        for i in 0..self.m() {
            for j in i + 1..self.m() {
                a += &det(&self.generators[i], &self.generators[j]).abs();
            }
        }
        a
    }

    pub fn is_parallelogram(&self) -> bool {
        self.m() == 2
    }

    /// Image under a linear map with positive determinant.
    pub fn transform(&self, m: &[[FieldElement; 2]; 2]) -> Result<Zonotope> {
        Zonotope::from_unordered(self.generators.iter().map(|g| g.transform(m)).collect())
    }
}

/// Shoelace area of a simple polygon (absolute value).
pub fn shoelace_area(vertices: &[PlaneVector]) -> FieldElement {
    let field = vertices[0].field().clone();
    let n = vertices.len();
    let mut twice = field.zero();
    for i in 0..n {
        twice += &det(&vertices[i], &vertices[(i + 1) % n]);
    }
    twice.abs().scale(&Rational::new(1.into(), 2.into()))
}

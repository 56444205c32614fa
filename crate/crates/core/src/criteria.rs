//! Decision procedures for multi-tilings by a zonotope.
//!
//! [`bolle_check`] tests a given lattice edge pair by edge pair.
//! [`decide_multitile`] decides existence of any multi-tiling using only
//! `Z`-spans of the `τ` vectors, and always backs a positive answer with a
//! lattice that passes [`bolle_check`].

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::plane::{
    condition2_superlattice, det, exact_condition2, lattice_intersect, zspan_lattice, PlaneLattice,
    PlaneVector,
};
use crate::zonotope::Zonotope;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRecord {
    /// 1-based edge index.
    pub j: usize,
    /// `τ_j ∈ L`.
    pub cond1: bool,
    /// `e_j ∈ L` and `t·e_j + τ_j ∈ L` for some real `t`.
    pub cond2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BolleReport {
    pub pairs: Vec<PairRecord>,
    pub verdict: bool,
    /// `area(P)/det(L)` when the verdict holds.
    pub multiplicity: Option<BigInt>,
}

/// Lattice criterion: `P + L` multi-tiles iff every pair of parallel edges
/// satisfies condition 1 or condition 2.
pub fn bolle_check(p: &Zonotope, l: &PlaneLattice) -> Result<BolleReport> {
    let taus = p.tau_vectors();
    let pairs: Vec<PairRecord> = p
        .generators()
        .iter()
        .zip(&taus)
        .enumerate()
        .map(|(i, (e, tau))| PairRecord {
            j: i + 1,
            cond1: l.contains(tau),
            cond2: exact_condition2(l, e, tau),
        })
        .collect();
    let verdict = pairs.iter().all(|r| r.cond1 || r.cond2);
    let multiplicity = if verdict {
        let k = p.area().checked_div(&l.det())?;
        Some(k.to_integer().ok_or_else(|| {
            Error::InternalConsistency(format!(
                "lattice criterion holds but area/det = {k} is not an integer"
            ))
        })?)
    } else {
        None
    };
    Ok(BolleReport {
        pairs,
        verdict,
        multiplicity,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    Parallelogram,
    Odd,
    /// Even `m`; `j0` is the accepted index when the answer is positive.
    Even {
        j0: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureReason {
    SpanNotDiscrete,
    DetRatioIrrational,
}

impl FailureReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureReason::SpanNotDiscrete => "span-not-discrete",
            FailureReason::DetRatioIrrational => "det-ratio-irrational",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub multi_tiles: bool,
    pub branch: Branch,
    pub witness_lattice: Option<PlaneLattice>,
    pub witness_multiplicity: Option<BigInt>,
    pub failure_reason: Option<FailureReason>,
    /// Every `j0` satisfying the even-case conditions, ascending.
    pub accepted_j0: Vec<usize>,
}

/// `Λ_j = span_Z{τ_i : i ≠ j}` for 1-based `j`, when it is a lattice.
fn lambda_without(taus: &[PlaneVector], j: usize) -> Result<Option<PlaneLattice>> {
    let rest: Vec<PlaneVector> = taus
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != j)
        .map(|(_, t)| t.clone())
        .collect();
    Ok(zspan_lattice(&rest)?.basis)
}

/// Decides whether `P` admits any translational multi-tiling.
///
/// * parallelogram: tiles by `span{e₁, e₂}`;
/// * odd `m`: iff `Λ_τ = span_Z{τ_j}` is a lattice (the witness);
/// * even `m`: iff some `Λ_{j0}` is a lattice and `det(e_{j0}, τ_{j0})/det(Λ_{j0})`
///   is rational; the witness is `Λ_{j0}` enlarged by `t₀e_{j0} + τ_{j0}`.
///
/// Every witness is re-verified with [`bolle_check`].
pub fn decide_multitile(p: &Zonotope) -> Result<Decision> {
    let taus = p.tau_vectors();
    let gens = p.generators();
    let (branch, witness, failure, accepted) = if p.is_parallelogram() {
        let l = PlaneLattice::new(gens[0].clone(), gens[1].clone())?;
        (Branch::Parallelogram, Some(l), None, Vec::new())
    } else if p.m() % 2 == 1 {
        match zspan_lattice(&taus)?.basis {
            Some(l) => (Branch::Odd, Some(l), None, Vec::new()),
            None => (
                Branch::Odd,
                None,
                Some(FailureReason::SpanNotDiscrete),
                Vec::new(),
            ),
        }
    } else {
        let mut accepted = Vec::new();
        let mut first: Option<(usize, PlaneLattice)> = None;
        let mut any_lattice = false;
        for j0 in 1..=p.m() {
            let Some(lambda) = lambda_without(&taus, j0)? else {
                continue;
            };
            any_lattice = true;
            let e = &gens[j0 - 1];
            let tau = &taus[j0 - 1];
            let ratio = det(e, tau).checked_div(&lambda.det())?;
            if !ratio.is_rational() {
                continue;
            }
            accepted.push(j0);
            if first.is_none() {
                if !lambda.contains(e) {
                    return Err(Error::InternalConsistency(format!(
                        "e_{j0} is not in Λ_{j0} although it is a ±1 combination of its generators"
                    )));
                }
                let (_, tilde) = condition2_superlattice(&lambda, e, tau)?;
                first = Some((j0, tilde));
            }
        }
        match first {
            Some((j0, l)) => (Branch::Even { j0: Some(j0) }, Some(l), None, accepted),
            None => {
                let reason = if any_lattice {
                    FailureReason::DetRatioIrrational
                } else {
                    FailureReason::SpanNotDiscrete
                };
                (Branch::Even { j0: None }, None, Some(reason), accepted)
            }
        }
    };

    let witness_multiplicity = match &witness {
        Some(l) => {
            let report = bolle_check(p, l)?;
            if !report.verdict {
                return Err(Error::InternalConsistency(
                    "witness lattice fails the lattice criterion".into(),
                ));
            }
            report.multiplicity
        }
        None => None,
    };
    Ok(Decision {
        multi_tiles: witness.is_some(),
        branch,
        witness_lattice: witness,
        witness_multiplicity,
        failure_reason: failure,
        accepted_j0: accepted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpSource {
    /// Odd `m`: the span of all `τ_j`.
    TauSpan,
    /// Even `m`: indices `j` whose `Λ_j` is a lattice.
    Lambdas(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub lattice: PlaneLattice,
    pub source: LpSource,
}

/// The canonical lattice `L_P`: `Λ_τ` for odd `m`, and the intersection of
/// every `Λ_j` that is a lattice for even `m`. `L_P ∩ L` is a lattice for
/// every lattice multi-tiling `P + L`.
pub fn compute_lp(p: &Zonotope) -> Result<LpResult> {
    if p.is_parallelogram() {
        return Err(Error::Precondition(
            "L_P is not defined for parallelograms".into(),
        ));
    }
    if !decide_multitile(p)?.multi_tiles {
        return Err(Error::Precondition("polygon admits no multi-tiling".into()));
    }
    let taus = p.tau_vectors();
    if p.m() % 2 == 1 {
        let l = zspan_lattice(&taus)?
            .basis
            .ok_or_else(|| Error::InternalConsistency("Λ_τ is not a lattice".into()))?;
        return Ok(LpResult {
            lattice: l,
            source: LpSource::TauSpan,
        });
    }
    let mut acc: Option<PlaneLattice> = None;
    let mut used = Vec::new();
    for j in 1..=p.m() {
        if let Some(lambda) = lambda_without(&taus, j)? {
            used.push(j);
            acc = Some(match acc {
                None => lambda,
                Some(cur) => lattice_intersect(&cur, &lambda)?,
            });
        }
    }
    let lattice = acc.ok_or_else(|| Error::InternalConsistency("no Λ_j is a lattice".into()))?;
    Ok(LpResult {
        lattice,
        source: LpSource::Lambdas(used),
    })
}

/// Multiplicity `n·area(P)/det(L)` of a multi-tiling `P + ⋃_{i<n} (L + z_i)`.
///
/// This is the density identity: `n` cosets of `L` place `n/det(L)` translates
/// per unit area, each covering `area(P)`. It does not check that the union
/// actually multi-tiles; use the oracle or [`bolle_check`] for that.
pub fn lattice_multiplicity(p: &Zonotope, l: &PlaneLattice, n_translates: u64) -> Result<BigInt> {
    if n_translates == 0 {
        return Err(Error::Precondition(
            "at least one translate is required".into(),
        ));
    }
    let k = p
        .area()
        .scale(&crate::qfield::Rational::from_integer(n_translates.into()))
        .checked_div(&l.det())?;
    k.to_integer()
        .ok_or_else(|| Error::Accounting(format!("n·area/det = {k} is not an integer")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::FieldDescriptor;

    fn zono(f: &FieldDescriptor, g: &[(i64, i64)]) -> Zonotope {
        Zonotope::new(g.iter().map(|&(x, y)| PlaneVector::ints(f, x, y)).collect()).unwrap()
    }

    fn octagon() -> Zonotope {
        zono(
            &FieldDescriptor::rational(),
            &[(1, 0), (1, 1), (0, 1), (-1, 1)],
        )
    }

    #[test]
    fn bolle_examples() {
        let f = FieldDescriptor::rational();
        let r = bolle_check(&octagon(), &PlaneLattice::standard(&f)).unwrap();
        assert!(r.verdict);
        assert!(r.pairs.iter().all(|p| p.cond1));
        assert_eq!(r.multiplicity, Some(7.into()));

        let r = bolle_check(&octagon(), &PlaneLattice::diagonal(&f, 1, 2)).unwrap();
        assert!(!r.verdict);
        assert_eq!(
            r.pairs[0],
            PairRecord {
                j: 1,
                cond1: false,
                cond2: false
            }
        );
        assert_eq!(r.multiplicity, None);

        let sq = zono(&f, &[(1, 0), (0, 1)]);
        let r = bolle_check(&sq, &PlaneLattice::standard(&f)).unwrap();
        assert_eq!(r.multiplicity, Some(1.into()));
    }

    #[test]
    fn decide_octagon() {
        let d = decide_multitile(&octagon()).unwrap();
        assert!(d.multi_tiles);
        assert_eq!(d.branch, Branch::Even { j0: Some(1) });
        assert_eq!(d.accepted_j0, vec![1, 2, 3, 4]);
        let f = FieldDescriptor::rational();
        // Λ₁ = ℤ×2ℤ; adding the foot (0, 3) of τ₁ along e₁ gives ℤ².
        assert_eq!(d.witness_lattice, Some(PlaneLattice::standard(&f)));
        assert_eq!(d.witness_multiplicity, Some(7.into()));
        let w = d.witness_lattice.unwrap();
        assert!(bolle_check(&octagon(), &w).unwrap().verdict);
    }

    #[test]
    fn decide_square_and_hexagon() {
        let f = FieldDescriptor::rational();
        let d = decide_multitile(&zono(&f, &[(1, 0), (0, 1)])).unwrap();
        assert!(d.multi_tiles);
        assert_eq!(d.branch, Branch::Parallelogram);
        assert_eq!(d.witness_multiplicity, Some(1.into()));

        let d = decide_multitile(&zono(&f, &[(1, 0), (0, 1), (-1, 1)])).unwrap();
        assert!(d.multi_tiles);
        assert_eq!(d.branch, Branch::Odd);
    }

    #[test]
    fn decide_rejects_independent_pentagon() {
        let f = FieldDescriptor::new(&[2, 3]).unwrap();
        let r2 = f.sqrt(2).unwrap();
        let r3 = f.sqrt(3).unwrap();
        let one = f.one();
        let gens = vec![
            PlaneVector::new(one.clone(), f.zero()),
            PlaneVector::new(one.clone(), r2.clone()),
            PlaneVector::new(f.zero(), one.clone()),
            PlaneVector::new(-&one, r3.clone()),
            PlaneVector::new(-&r3, &(&r2 + &r3) * &r2),
        ];
        let z = Zonotope::from_unordered(gens).unwrap();
        let d = decide_multitile(&z).unwrap();
        assert!(!d.multi_tiles);
        assert_eq!(d.failure_reason, Some(FailureReason::SpanNotDiscrete));
    }

    #[test]
    fn lp_examples() {
        let f = FieldDescriptor::rational();
        let lp = compute_lp(&octagon()).unwrap();
        assert_eq!(lp.lattice, PlaneLattice::diagonal(&f, 6, 6));
        assert_eq!(lp.source, LpSource::Lambdas(vec![1, 2, 3, 4]));

        let hex = zono(&f, &[(1, 0), (0, 1), (-1, 1)]);
        let lp = compute_lp(&hex).unwrap();
        let expected =
            PlaneLattice::new(PlaneVector::ints(&f, 1, 1), PlaneVector::ints(&f, 0, 3)).unwrap();
        assert_eq!(lp.lattice, expected);
        assert_eq!(lp.source, LpSource::TauSpan);

        assert!(compute_lp(&zono(&f, &[(1, 0), (0, 1)])).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let f = FieldDescriptor::rational();
        assert_eq!(
            lattice_multiplicity(&octagon(), &PlaneLattice::standard(&f), 1).unwrap(),
            7.into()
        );
        let sq = zono(&f, &[(1, 0), (0, 1)]);
        assert_eq!(
            lattice_multiplicity(&sq, &PlaneLattice::standard(&f), 1).unwrap(),
            1.into()
        );
        assert_eq!(
            lattice_multiplicity(&octagon(), &PlaneLattice::diagonal(&f, 1, 2), 2).unwrap(),
            7.into()
        );
        assert!(matches!(
            lattice_multiplicity(&octagon(), &PlaneLattice::diagonal(&f, 1, 2), 1),
            Err(Error::Accounting(_))
        ));
    }
}

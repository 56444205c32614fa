mod common;

use common::{q, q23, rational_lattice, rational_vector};
use multitile::json::encode_lattice;
use multitile::plane::det;
use multitile::{
    avoid_coset, enumerate_points, exact_condition2, lattice_intersect, zspan_lattice,
    FieldDescriptor, PlaneLattice, PlaneVector, SpanVerdict, Window,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

fn qf() -> FieldDescriptor {
    FieldDescriptor::rational()
}

/// Determinant of the lattice spanned by rational vectors: the gcd of all
/// 2×2 minors after clearing denominators.
fn minor_gcd_det(vs: &[PlaneVector]) -> Option<num_rational::BigRational> {
    let rats: Vec<_> = vs
        .iter()
        .map(|v| (v.x.to_rational().unwrap(), v.y.to_rational().unwrap()))
        .collect();
    let d = rats.iter().fold(BigInt::from(1), |acc, (x, y)| {
        acc.lcm(x.denom()).lcm(y.denom())
    });
    let ints: Vec<(BigInt, BigInt)> = rats
        .iter()
        .map(|(x, y)| ((x * &d).to_integer(), (y * &d).to_integer()))
        .collect();
    let mut g = BigInt::zero();
    for i in 0..ints.len() {
        for j in i + 1..ints.len() {
            g = g.gcd(&(&ints[i].0 * &ints[j].1 - &ints[i].1 * &ints[j].0));
        }
    }
    (!g.is_zero()).then(|| num_rational::BigRational::new(g, &d * &d))
}

type CosetCase = (PlaneLattice, Option<(i64, i64)>, (i64, i64), i64);

fn coset_case() -> impl Strategy<Value = CosetCase> {
    (
        rational_lattice(qf(), 4, 3),
        prop::option::of((-3i64..=3, -3i64..=3)),
        (-4i64..=4, -4i64..=4),
        1i64..=3,
    )
}

fn condition2_case() -> impl Strategy<Value = (PlaneLattice, PlaneVector, PlaneVector)> {
    let f = FieldDescriptor::new(&[2]).unwrap();
    let g = f.clone();
    (
        rational_lattice(f.clone(), 3, 2),
        (-3i64..=3, -3i64..=3),
        prop::bool::weighted(0.2),
        (-5i64..=5, -5i64..=5),
        0usize..4,
        (-6i64..=6, 1i64..=4),
        rational_vector(f, 3, 4),
    )
        .prop_filter_map(
            "e = 0",
            move |(l, (a, b), e_off, (m, n), kind, (tn, td), noise)| {
                let mut e = l.point(&a.into(), &b.into());
                if e_off {
                    e = &e + &noise;
                }
                if e.is_zero() {
                    return None;
                }
                let p = l.point(&m.into(), &n.into());
                let tau = match kind {
                    // On a line through a lattice point: always solvable when e ∈ L.
                    0 => &p - &e.scale_rational(&q(tn, td)),
                    1 => &p - &e.scale(&g.sqrt(2).unwrap()),
                    // Perturbed by a rational or irrational offset: usually unsolvable.
                    2 => &p + &noise,
                    _ => &p + &noise.scale(&g.sqrt(2).unwrap()),
                };
                Some((l, e, tau))
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn zspan_matches_minor_oracle(vs in proptest::collection::vec(rational_vector(qf(), 6, 4), 2..5)) {
        let a = zspan_lattice(&vs).unwrap();
        match minor_gcd_det(&vs) {
            None => prop_assert_eq!(a.verdict, SpanVerdict::RankDeficient),
            Some(d) => {
                prop_assert_eq!(a.verdict, SpanVerdict::Lattice);
                let l = a.lattice().unwrap();
                for v in &vs {
                    prop_assert!(l.contains(v));
                }
                prop_assert_eq!(l.det().to_rational().unwrap(), d);
            }
        }
    }

    #[test]
    fn zspan_of_independent_irrationals_is_not_discrete(
        v in rational_vector(q23(), 5, 3),
        w in rational_vector(q23(), 5, 3),
        k in 1i64..4,
    ) {
        prop_assume!(!det(&v, &w).is_zero());
        let f = q23();
        let odd = v.scale(&f.sqrt(2).unwrap()).scale_rational(&q(k, 1));
        let a = zspan_lattice(&[v, w, odd]).unwrap();
        prop_assert_eq!(a.verdict, SpanVerdict::NotDiscrete);
        prop_assert_eq!(a.q_rank, 3);
    }

    #[test]
    fn intersection_is_exact(l1 in rational_lattice(qf(), 4, 2), l2 in rational_lattice(qf(), 4, 2)) {
        let both = lattice_intersect(&l1, &l2).unwrap();
        prop_assert!(l1.contains_lattice(&both) && l2.contains_lattice(&both));
        let scale: BigInt = l1.basis().iter().chain(l2.basis()).map(|b| b.x.abs().ceil().max(b.y.abs().ceil())).max().unwrap();
        let r = i64::try_from(scale * 6).unwrap();
        let w = Window::ints(&qf(), -r, -r, r, r).unwrap();
        for p in enumerate_points(&l1, &w) {
            if l2.contains(&p) {
                prop_assert!(both.contains(&p));
            }
        }
    }

    #[test]
    fn canonical_form((l, ops) in (rational_lattice(qf(), 5, 3), proptest::collection::vec((0usize..2, -3i64..=3, any::<bool>()), 0..8))) {
        let [mut b1, mut b2] = l.basis().clone();
        for (which, k, swap) in ops {
            let k = BigInt::from(k);
            if which == 0 { b1 = &b1 + &b2.scale_int(&k) } else { b2 = &b2 + &b1.scale_int(&k) }
            if swap { std::mem::swap(&mut b1, &mut b2); b1 = -&b1; }
        }
        let other = PlaneLattice::new(b1, b2).unwrap();
        prop_assert!(l.same_points(&other));
        prop_assert_eq!(&l, &other);
        prop_assert_eq!(encode_lattice(&l), encode_lattice(&other));
    }

    #[test]
    fn avoid_coset_misses_coset((l, v, (tm, tn), scale) in coset_case()) {
        let v = v.map(|(a, b)| l.point(&BigInt::from(a * scale), &BigInt::from(b * scale)));
        let tau = l.point(&tm.into(), &tn.into());
        let in_v = match &v {
            None => tau.is_zero(),
            Some(v) if v.is_zero() => tau.is_zero(),
            Some(v) => det(v, &tau).is_zero() && {
                let r = if v.x.is_zero() { tau.y.checked_div(&v.y).unwrap() } else { tau.x.checked_div(&v.x).unwrap() };
                r.to_integer().is_some()
            },
        };
        let out = avoid_coset(&l, v.as_ref(), &tau);
        if in_v {
            prop_assert!(out.is_err());
            return Ok(());
        }
        let lp = out.unwrap();
        prop_assert!(l.contains_lattice(&lp));
        if let Some(v) = &v {
            prop_assert!(lp.contains(v));
        }
        let step = v.clone().unwrap_or_else(|| PlaneVector::zero(&qf()));
        for k in -40i64..=40 {
            prop_assert!(!lp.contains(&(&tau + &step.scale_int(&k.into()))));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn condition2_agrees_with_search((l, e, tau) in condition2_case()) {
        let fast = exact_condition2(&l, &e, &tau);
        let mut found = false;
        if l.contains(&e) {
            'search: for m in -50i64..=50 {
                for n in -50i64..=50 {
                    let p = l.point(&m.into(), &n.into());
                    if det(&e, &(&p - &tau)).is_zero() {
                        found = true;
                        break 'search;
                    }
                }
            }
        }
        prop_assert_eq!(fast, found);
        if fast {
            let ratio = det(&e, &tau).checked_div(&l.det()).unwrap();
            prop_assert!(ratio.to_integer().is_some());
        }
    }
}

#[test]
fn incommensurable_intersection_refused() {
    let f = FieldDescriptor::new(&[2]).unwrap();
    let r2 = f.sqrt(2).unwrap();
    let l1 = PlaneLattice::standard(&f);
    let l2 = PlaneLattice::new(
        PlaneVector::new(r2.clone(), f.zero()),
        PlaneVector::new(f.zero(), f.one()),
    )
    .unwrap();
    assert!(lattice_intersect(&l1, &l2).is_err());
}

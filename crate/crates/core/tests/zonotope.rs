mod common;

use common::{q23, zonotope};
use multitile::zonotope::shoelace_area;
use multitile::{FieldDescriptor, PlaneVector, Rational, Zonotope};
use num_bigint::BigInt;
use proptest::prelude::*;

fn midpoint(a: &PlaneVector, b: &PlaneVector) -> PlaneVector {
    (a + b).scale_rational(&Rational::new(BigInt::from(1), BigInt::from(2)))
}

fn any_zonotope() -> impl Strategy<Value = Zonotope> {
    prop_oneof![
        zonotope(FieldDescriptor::rational(), 2..=7, 6, 4),
        zonotope(q23(), 2..=6, 3, 3),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn adjacent_tau_identity(z in any_zonotope()) {
        let t = z.tau_vectors();
        let m = z.m();
        for j in 1..m {
            prop_assert_eq!(&t[j - 1] - &t[j], &z.extended_generator(j) + &z.extended_generator(j + 1));
        }
        // Wrap-around with τ_{m+1} = −τ_1.
        prop_assert_eq!(&t[m - 1] + &t[0], &z.extended_generator(m) + &z.extended_generator(m + 1));
    }

    #[test]
    fn even_representation(z in any_zonotope()) {
        let t = z.tau_vectors();
        for j in 1..=z.m() {
            match z.even_tau_representation(j) {
                None => prop_assert!(z.m() % 2 == 1),
                Some(terms) => {
                    prop_assert!(terms.iter().all(|&(i, s)| i != j && (s == 1 || s == -1)));
                    let mut sum = PlaneVector::zero(z.field());
                    for (i, s) in terms {
                        sum = if s == 1 { &sum + &t[i - 1] } else { &sum - &t[i - 1] };
                    }
                    prop_assert_eq!(sum, z.extended_generator(j));
                }
            }
        }
    }

    #[test]
    fn tau_moves_edge_to_parallel_edge(z in any_zonotope()) {
        let v = z.vertices();
        let m = z.m();
        let t = z.tau_vectors();
        for j in 1..=m {
            let edge = midpoint(&v[j - 1], &v[j % (2 * m)]);
            let opposite = midpoint(&v[m + j - 1], &v[(m + j) % (2 * m)]);
            prop_assert_eq!(&opposite - &edge, t[j - 1].clone());
        }
    }

    #[test]
    fn area_is_shoelace(z in any_zonotope()) {
        prop_assert_eq!(z.area(), shoelace_area(&z.vertices()));
        prop_assert_eq!(z.area().sign(), 1);
    }

    #[test]
    fn vertex_round_trip(z in any_zonotope()) {
        prop_assert_eq!(Zonotope::from_vertices(&z.vertices()).unwrap(), z);
    }
}

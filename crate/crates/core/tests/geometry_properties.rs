//! Property tests for the geometric primitives.

use proptest::prelude::*;
use wiener_core::geometry::{
    convex_clockwise_order, distance, orientation, segments_cross, Orientation, Point,
};
use wiener_core::instances::gen_random_convex;

fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![-100.0..100.0f64, -1.0..1.0f64, (-5i32..5).prop_map(f64::from)]
}

fn point() -> impl Strategy<Value = Point<f64>> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #[test]
    fn crossing_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        let x = segments_cross(a, b, c, d);
        prop_assert_eq!(x, segments_cross(c, d, a, b));
        prop_assert_eq!(x, segments_cross(b, a, c, d));
        prop_assert_eq!(x, segments_cross(a, b, d, c));
        prop_assert_eq!(x, segments_cross(b, a, d, c));
    }

    #[test]
    fn crossing_segments_share_no_endpoint(a in point(), b in point(), c in point()) {
        // a shared endpoint can never be a proper crossing
        prop_assert!(!segments_cross(a, b, a, c));
        prop_assert!(!segments_cross(a, b, c, b));
        prop_assert!(!segments_cross(a, b, b, c));
    }

    #[test]
    fn triangle_inequality(a in point(), b in point(), c in point()) {
        prop_assert!(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
    }

    #[test]
    fn distance_symmetric_and_zero_iff_coincident(a in point(), b in point()) {
        prop_assert_eq!(distance(a, b), distance(b, a));
        prop_assert_eq!(distance(a, a), 0.0);
        if a != b {
            prop_assert!(distance(a, b) > 0.0);
        }
    }

    #[test]
    fn clockwise_order_is_a_clockwise_permutation(n in 3usize..24, seed in 0u64..5000) {
        let ps = gen_random_convex::<f64>(n, seed).unwrap();
        let order = convex_clockwise_order(&ps).unwrap();

        let mut sorted = order.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..n).collect::<Vec<_>>());

        // canonical start: the lexicographically smallest point
        let lex = (0..n).min_by(|&a, &b| {
            let (pa, pb) = (ps.points[a], ps.points[b]);
            pa.x.partial_cmp(&pb.x).unwrap().then(pa.y.partial_cmp(&pb.y).unwrap())
        }).unwrap();
        prop_assert_eq!(order[0], lex);

        for w in 0..n {
            let a = ps.points[order[w]];
            let b = ps.points[order[(w + 1) % n]];
            let c = ps.points[order[(w + 2) % n]];
            prop_assert_eq!(orientation(a, b, c), Orientation::Clockwise);
        }
    }
}

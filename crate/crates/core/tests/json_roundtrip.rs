//! JSON round-trip properties for the wire formats.

use proptest::prelude::*;
use wiener_core::geometry::{Label, Point, PointSet};
use wiener_core::paths::HamiltonianPath;
use wiener_core::tree::SpanningTree;

fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e9..1e9f64,
        -1e-6..1e-6f64,
        Just(0.0),
        Just(1.0 / 3.0),
    ]
}

fn label() -> impl Strategy<Value = Label> {
    prop_oneof![
        Just(Label::Plain),
        Just(Label::Circle),
        Just(Label::CenterCluster),
        Just(Label::GadgetL),
        Just(Label::GadgetR),
        Just(Label::ClusterLeft),
        Just(Label::ClusterRight),
        Just(Label::Apex),
    ]
}

proptest! {
    #[test]
    fn pointset_roundtrips(coords in prop::collection::vec((coord(), coord()), 1..24), with_labels in any::<bool>(), labels in prop::collection::vec(label(), 24)) {
        let points: Vec<Point<f64>> = coords.iter().map(|&(x, y)| Point::new(x, y)).collect();
        let ps = if with_labels {
            PointSet::with_labels(points.clone(), labels[..points.len()].to_vec()).unwrap()
        } else {
            PointSet::new(points).unwrap()
        };
        let text = serde_json::to_string(&ps).unwrap();
        let back: PointSet<f64> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(ps, back);
    }

    #[test]
    fn spanning_tree_roundtrips(seq in prop::collection::vec(0usize..8, 0..7)) {
        let n = seq.len() + 2;
        let seq: Vec<usize> = seq.into_iter().map(|s| s % n).collect();
        let t = wiener_core::oracle::prufer_decode(&seq, n);
        let text = serde_json::to_string(&t).unwrap();
        let back: SpanningTree = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(t, back);
    }

    #[test]
    fn path_roundtrips(rot in 0usize..12, n in 2usize..12) {
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left(rot % n);
        let p = HamiltonianPath::new(order);
        let text = serde_json::to_string(&p).unwrap();
        let back: HamiltonianPath = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(p, back);
    }
}

#[test]
fn pointset_json_shape_matches_format() {
    let ps = PointSet::with_labels(
        vec![Point::new(0.5, -1.25), Point::new(2.0, 3.0)],
        vec![Label::Circle, Label::CenterCluster],
    )
    .unwrap();
    let text = serde_json::to_string(&ps).unwrap();
    assert_eq!(
        text,
        r#"{"points":[[0.5,-1.25],[2.0,3.0]],"labels":["circle","center-cluster"]}"#
    );
    // labels are optional on input
    let bare: PointSet<f64> = serde_json::from_str(r#"{"points": [[1, 2], [3, 4]]}"#).unwrap();
    assert_eq!(bare.len(), 2);
    assert!(bare.labels.is_none());
}

#[test]
fn tree_json_shape_matches_format() {
    let t = SpanningTree::new(3, vec![(0, 1), (1, 2)]);
    assert_eq!(
        serde_json::to_string(&t).unwrap(),
        r#"{"n":3,"edges":[[0,1],[1,2]]}"#
    );
}

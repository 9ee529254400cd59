mod common;

use membrane_perc::geom::{
    convex_hull, convex_intersects, halfplane_intersection, hull_of_polygons, intersect_convex, minkowski_hull,
    ConvexPolygon, HalfPlane, Hull, Point, Rect, GEO_TOL,
};
use proptest::prelude::*;

use common::*;

fn point() -> impl Strategy<Value = Point> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Point::new(x, y))
}

/// Small integer coordinates make collinear and duplicate points common.
fn grid_point() -> impl Strategy<Value = Point> {
    (-4i32..=4, -4i32..=4).prop_map(|(x, y)| Point::new(x as f64, y as f64))
}

fn polygon() -> impl Strategy<Value = ConvexPolygon> {
    prop::collection::vec(point(), 3..12).prop_filter_map("degenerate", |pts| {
        convex_hull(&pts).ok().and_then(Hull::polygon).filter(|p| p.area() > 1e-3)
    })
}

fn same_set(a: &[Point], b: &[Point]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.contains(p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hull_matches_brute_force(pts in prop::collection::vec(grid_point(), 1..14)) {
        let brute = brute_hull_vertices(&pts);
        match convex_hull(&pts).unwrap() {
            Hull::Polygon(p) => prop_assert!(same_set(p.vertices(), &brute)),
            Hull::Degenerate(d) => prop_assert!(brute.len() <= 2 || same_set(&d, &brute) || d.len() <= 2),
        }
    }

    #[test]
    fn hull_is_idempotent_and_covers_input(pts in prop::collection::vec(point(), 3..40)) {
        if let Some(h) = convex_hull(&pts).unwrap().polygon() {
            let again = convex_hull(h.vertices()).unwrap().polygon().unwrap();
            prop_assert_eq!(&again, &h);
            for &q in &pts {
                prop_assert!(oracle_contains(&h, q, 1e-9));
            }
            prop_assert!((h.area() - shoelace(h.vertices())).abs() <= 1e-9 * h.area().max(1.0));
        }
    }

    #[test]
    fn hull_is_monotone(pts in prop::collection::vec(point(), 3..20), extra in prop::collection::vec(point(), 1..10)) {
        let small = convex_hull(&pts).unwrap().polygon();
        let mut all = pts.clone();
        all.extend(extra);
        let big = convex_hull(&all).unwrap().polygon().unwrap();
        if let Some(s) = small {
            prop_assert!(oracle_polygon_inside(&big, &s, 1e-9));
        }
    }

    #[test]
    fn intersection_test_is_symmetric_and_agrees_with_sat(p in polygon(), q in polygon()) {
        let a = convex_intersects(&p, &q);
        prop_assert_eq!(a, convex_intersects(&q, &p));
        prop_assert_eq!(a, sat_intersects(&p, &q));
        if let Some(i) = intersect_convex(&p, &q) {
            prop_assert!(a);
            prop_assert!(oracle_polygon_inside(&p, &i, 1e-7) && oracle_polygon_inside(&q, &i, 1e-7));
        }
    }

    #[test]
    fn halfplane_output_satisfies_constraints(
        hs in prop::collection::vec((0.0..std::f64::consts::TAU, -2.0..6.0f64), 1..8)
    ) {
        let planes: Vec<HalfPlane> = hs
            .iter()
            .map(|&(phi, off)| HalfPlane::new(Point::new(phi.cos(), phi.sin()), off))
            .collect();
        let window = Rect::new(-10.0, 10.0, -10.0, 10.0).to_polygon();
        if let Some(p) = halfplane_intersection(&planes, &window) {
            for &v in p.vertices() {
                prop_assert!(planes.iter().all(|h| h.signed_distance(v) <= 1e-7));
                prop_assert!(oracle_contains(&window, v, 1e-7));
            }
        }
    }

    #[test]
    fn minkowski_hull_equals_hull_of_translates(centers in prop::collection::vec(point(), 1..25)) {
        let disk = ConvexPolygon::circumscribed(Point::ORIGIN, 1.0, 64);
        let fast = minkowski_hull(&centers, &disk).unwrap();
        let polys: Vec<ConvexPolygon> = centers.iter().map(|&c| ConvexPolygon::circumscribed(c, 1.0, 64)).collect();
        let slow = hull_of_polygons(&polys);
        prop_assert!(oracle_polygon_inside(&fast, &slow, 1e-9));
        prop_assert!(oracle_polygon_inside(&slow, &fast, 1e-9));
    }
}

#[test]
fn touching_squares_intersect() {
    let a = ConvexPolygon::rect(0.0, 0.0, 1.0, 1.0);
    let b = ConvexPolygon::rect(1.0, 0.0, 2.0, 1.0);
    let c = ConvexPolygon::rect(1.0 + 10.0 * GEO_TOL, 0.0, 2.0, 1.0);
    assert!(convex_intersects(&a, &b));
    assert!(!convex_intersects(&a, &c));
}

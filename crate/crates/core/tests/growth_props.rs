mod common;

use std::f64::consts::TAU;

use membrane_perc::geom::{Point, Rect, GEO_TOL};
use membrane_perc::growth::{
    box_coupling_run, cone_index, cone_occupancy, disk_covered, disk_covered_within, grow_run, ring_sectors_filled,
    sector_angle, sector_count, site_clusters, BoxConfig, BoxGrid, ColorFilter, GrowthConfig, GrowthTrace,
    HoleIndex,
};
use membrane_perc::mc::with_origin_disk;
use membrane_perc::scene::{sample_poisson_scene, Scene, ShapeDistribution};

use common::*;

fn scene(lambda: f64, half: f64, s: u64) -> (Scene, u64) {
    let w = Rect::new(-half, half, -half, half);
    with_origin_disk(&sample_poisson_scene(w, 3.0, lambda, &ShapeDistribution::FixedDisk(1.0), s).unwrap())
}

fn state(t: &GrowthTrace, k: u32) -> &membrane_perc::geom::ConvexPolygon {
    t.at(k).unwrap_or_else(|| t.last())
}

#[test]
fn traces_are_monotone_and_nested_across_variants() {
    for s in 0..30u64 {
        let (sc, origin) = scene(2.5, 22.0, s);
        let full = grow_run(&sc, origin, &GrowthConfig::full(16)).unwrap();
        let ring = grow_run(&sc, origin, &GrowthConfig::ring(16)).unwrap();
        let restricted = grow_run(&sc, origin, &GrowthConfig::restricted(16, ColorFilter::Green)).unwrap();
        for t in [&full, &ring, &restricted] {
            for w in t.steps.windows(2) {
                assert!(oracle_polygon_inside(&w[1], &w[0], GEO_TOL), "seed {s}");
            }
        }
        for k in 0..=16 {
            assert!(oracle_polygon_inside(state(&ring, k), state(&restricted, k), GEO_TOL), "seed {s} k {k}");
            assert!(oracle_polygon_inside(state(&full, k), state(&ring, k), GEO_TOL), "seed {s} k {k}");
        }
    }
}

#[test]
fn ring_growth_succeeds_more_often_at_higher_rate() {
    let k_max = 30;
    let rates = [1.0, 3.0, 5.0];
    let wins: Vec<usize> = rates
        .iter()
        .map(|&l| {
            (0..60u64)
                .filter(|&s| {
                    let (sc, origin) = scene(l, 36.0, 1000 + s);
                    grow_run(&sc, origin, &GrowthConfig::ring(k_max)).unwrap().contains_through(k_max)
                })
                .count()
        })
        .collect();
    assert!(wins.windows(2).all(|w| w[1] > w[0]), "{wins:?}");
}

#[test]
fn sector_angles_respect_the_bound() {
    for k in 0..2000 {
        let m = sector_count(k);
        assert!(m as f64 >= TAU * ((k + 3) as f64).sqrt());
        assert!(sector_angle(k) <= 1.0 / ((k + 3) as f64).sqrt());
    }
}

#[test]
fn one_center_per_sector_fills_the_ring() {
    let k = 7;
    let alpha = sector_angle(k);
    let m = sector_count(k);
    let mid: Vec<Point> = (0..m).map(|i| Point::polar(Point::ORIGIN, k as f64 + 1.75, (i as f64 + 0.5) * alpha)).collect();
    assert!(ring_sectors_filled(&mid, Point::ORIGIN, k));
    assert!(!ring_sectors_filled(&mid[1..], Point::ORIGIN, k));
    // outside the ring does not count
    let mut off = mid.clone();
    off[0] = Point::polar(Point::ORIGIN, k as f64 + 2.2, 0.5 * alpha);
    assert!(!ring_sectors_filled(&off, Point::ORIGIN, k));
}

#[test]
fn hex_lattice_covering() {
    // lattice of pitch a with reach-4 neighbors covers C(3) when a < √3
    let lattice = |a: f64| {
        let mut polys = Vec::new();
        for j in -12..=12 {
            for i in -12..=12 {
                let c = Point::new(a * (i as f64 + 0.5 * j as f64), a * j as f64 * 3f64.sqrt() / 2.0);
                polys.push(membrane_perc::geom::ConvexPolygon::circumscribed(c, 1.0, 64));
            }
        }
        Scene::from_polygons(Rect::new(-10.0, 10.0, -10.0, 10.0), 2.0, &polys)
    };
    for (a, expect) in [(1.7, true), (1.8, false), (2.1, false)] {
        let sc = lattice(a);
        let idx = HoleIndex::new(&sc);
        assert_eq!(disk_covered_within(&idx, Point::ORIGIN, 3.0, 4.0, 4096), expect, "pitch {a}");
    }
    let sc = lattice(1.7);
    assert!(!disk_covered(&HoleIndex::new(&sc), Point::ORIGIN, 3.0, 4096));
}

#[test]
fn cone_tie_break_and_full_occupancy() {
    let dirs: Vec<Point> = (0..8).map(|i| Point::polar(Point::ORIGIN, 1.0, (i as f64 + 0.5) * TAU / 8.0)).collect();
    assert_eq!(cone_occupancy(&dirs, Point::ORIGIN), [true; 8]);
    let single = cone_occupancy(&[Point::new(2.0, 1.0)], Point::ORIGIN);
    assert_eq!(single.iter().filter(|&&b| b).count(), 1);
    // a diagonal point belongs to the lower of its two cones
    let a = cone_index(Point::new(1.0, 1.0)).unwrap();
    let b = cone_index(Point::new(1.0, 0.999)).unwrap();
    let c = cone_index(Point::new(0.999, 1.0)).unwrap();
    assert_eq!(a, b.min(c));
    assert_eq!(cone_index(Point::ORIGIN), None);
}

#[test]
fn open_boxes_form_one_cluster() {
    let grid = BoxGrid::from_open(6, 5, vec![true; 30]);
    assert_eq!(grid.largest_cluster, 30);
    assert_eq!(grid.cluster_count, 1);
    // vertical neighbors join, diagonal ones do not
    let labels = site_clusters(&[true, false, true, false], 2, 2);
    assert_eq!(labels[0], labels[2]);
    assert_eq!(labels[1], usize::MAX);
    let labels = site_clusters(&[true, false, false, true], 2, 2);
    assert_ne!(labels[0], labels[3]);
}

#[test]
fn box_runs_never_cross_corners() {
    let bcfg = BoxConfig::new(2, 2).unwrap();
    let grid = box_coupling_run(2.4, &bcfg, 2, 2, 5).unwrap();
    assert_eq!(grid.corner_violations, 0);
    assert_eq!(grid.nx * grid.ny, grid.open.len());
    assert!(grid.largest_cluster <= grid.open_count());
}

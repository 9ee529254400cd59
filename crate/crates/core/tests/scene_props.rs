mod common;

use membrane_perc::geom::{Point, Rect};
use membrane_perc::scene::{
    discretize, read_scene, sample_poisson_scene, thin_scene, write_scene, RadialLaw, SceneError, ShapeDistribution,
    VertexLaw,
};

use common::correlation;

fn polygon_dist() -> ShapeDistribution {
    ShapeDistribution::RandomPolygon {
        vertices: VertexLaw::Uniform { lo: 3, hi: 8 },
        radial: RadialLaw::Uniform { lo: 0.3, hi: 1.5 },
    }
}

#[test]
fn counts_are_poisson() {
    let w = Rect::square(10.0);
    let counts: Vec<f64> = (0..2000u64)
        .map(|s| sample_poisson_scene(w, 0.0, 1.0, &ShapeDistribution::FixedDisk(1.0), s).unwrap().holes.len() as f64)
        .collect();
    let n = counts.len() as f64;
    let mean = counts.iter().sum::<f64>() / n;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1.0);
    // mean 100, variance 100; 5 standard errors
    assert!((mean - 100.0).abs() < 5.0 * (100.0 / n).sqrt(), "mean {mean}");
    assert!((var / 100.0 - 1.0).abs() < 5.0 * (2.0 / n).sqrt(), "variance {var}");
}

#[test]
fn disjoint_regions_are_independent() {
    let w = Rect::square(6.0);
    let (mut left, mut right, mut size_l, mut size_r) = (vec![], vec![], vec![], vec![]);
    for s in 0..10_000u64 {
        let scene = sample_poisson_scene(w, 0.0, 1.0, &polygon_dist(), s).unwrap();
        let l: Vec<_> = scene.holes.iter().filter(|h| h.center.x < 3.0).collect();
        let r: Vec<_> = scene.holes.iter().filter(|h| h.center.x >= 3.0).collect();
        left.push(l.len() as f64);
        right.push(r.len() as f64);
        // shapes are independent of positions
        if let (Some(a), Some(b)) = (l.first(), r.first()) {
            size_l.push(a.shape.circumradius());
            size_r.push(b.shape.circumradius());
        }
    }
    let bound = 4.0 / 10_000f64.sqrt();
    assert!(correlation(&left, &right).abs() < bound);
    assert!(correlation(&size_l, &size_r).abs() < 4.0 / (size_l.len() as f64).sqrt());
}

#[test]
fn sampling_is_deterministic_and_stays_in_the_padded_window() {
    let w = Rect::square(12.0);
    let a = sample_poisson_scene(w, 3.0, 0.7, &polygon_dist(), 5).unwrap();
    let b = sample_poisson_scene(w, 3.0, 0.7, &polygon_dist(), 5).unwrap();
    let c = sample_poisson_scene(w, 3.0, 0.7, &polygon_dist(), 6).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(a.holes.iter().all(|h| a.padded_window().contains(h.center)));
    for h in &a.holes {
        let p = h.polygon();
        assert!(p.contains(h.center));
        assert!(p.len() <= 8);
    }
}

#[test]
fn thinning_keeps_exactly_the_large_holes() {
    let scene = sample_poisson_scene(Rect::square(20.0), 0.0, 1.0, &polygon_dist(), 1).unwrap();
    for r in [0.1, 0.4, 0.8] {
        let thin = thin_scene(&scene, r);
        assert!(thin.holes.iter().all(|h| scene.holes.contains(h)));
        let expected = scene.holes.iter().filter(|h| h.shape.inscribed_radius() >= r).count();
        assert_eq!(thin.holes.len(), expected);
    }
}

#[test]
fn discretized_disks_contain_the_disks() {
    let scene = sample_poisson_scene(
        Rect::square(10.0),
        0.0,
        0.5,
        &ShapeDistribution::DiskRadius(RadialLaw::Uniform { lo: 0.2, hi: 2.0 }),
        3,
    )
    .unwrap();
    for m in [8, 16, 64] {
        let d = discretize(&scene, m).unwrap();
        for (h, q) in scene.holes.iter().zip(&d.holes) {
            let p = q.polygon();
            assert_eq!(p.len(), m);
            assert!(p.inradius_about(h.center) >= h.shape.circumradius() - 1e-12);
            // every point of the disk boundary is inside
            for k in 0..97 {
                let v = Point::polar(h.center, h.shape.circumradius(), k as f64 * 0.0648);
                assert!(common::oracle_contains(&p, v, 1e-12));
            }
        }
    }
    assert!(matches!(discretize(&scene, 4), Err(SceneError::TooCoarse(4))));
}

#[test]
fn scene_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scene.json");
    let scene = sample_poisson_scene(Rect::square(8.0), 2.0, 1.3, &polygon_dist(), 11).unwrap();
    write_scene(&scene, &path).unwrap();
    assert_eq!(read_scene(&path).unwrap(), scene);
}

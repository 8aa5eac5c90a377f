//! Library results checked against independent brute-force computations.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use planar_tangent::acceptance::gap_scan_sup;
use planar_tangent::cone::cone_distance_to_arcs;
use planar_tangent::fixtures::{geometric_radii, parabola_region, random_convex_polygon};
use planar_tangent::geometry::hausdorff_distance_brute;
use planar_tangent::{
    con_a, conv_a, hausdorff_distance, porosity_estimate, radii_set, sphere_sample, AngularSet, IntervalSet,
    PlanarSet, Point, PointSample, Ray, ScaleLadder,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn parabola_cone_matches_angle_sweep() {
    let region = PlanarSet::StarRegion(parabola_region::<f64>(1025).unwrap());
    let cone = con_a(&region, Point::origin()).unwrap();
    // Smallest and largest argument over fine samples of the region inside
    // the disk of radius 2^-k.
    for k in [4, 8, 12, 16] {
        let r = 0.5f64.powi(k);
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for i in 1..=2000 {
            let x = r * i as f64 / 2000.0;
            for y in [x * x, r] {
                let p = Point::new(x, y);
                if p.norm() <= r && region.contains(p) {
                    let th = y.atan2(x);
                    lo = lo.min(th);
                    hi = hi.max(th);
                }
            }
        }
        hi = hi.max(FRAC_PI_2);
        assert!(lo <= 2.0 * r, "k = {k}: smallest angle {lo}");
        assert!(cone.arcs.contains(lo) && cone.arcs.contains(hi));
    }
    let arcs = cone.arcs.circular_arcs();
    assert_eq!(arcs.len(), 1);
    assert!(arcs[0].0.abs() < 1e-9);
    assert!((arcs[0].1 - FRAC_PI_2).abs() < 1e-9);
}

#[test]
fn cone_distance_matches_dense_samples() {
    let mut g = rng(1);
    for _ in 0..10 {
        let start = g.gen_range(0.0..TAU);
        let width = g.gen_range(0.0..3.0);
        let arcs = AngularSet::from_ccw(start, width);
        let vertex = Point::new(g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0));
        let samples: Vec<Point<f64>> = (0..=400)
            .flat_map(|i| {
                let th = start + width * i as f64 / 400.0;
                (0..=400).map(move |j| vertex + Point::polar(4.0 * j as f64 / 400.0, th))
            })
            .collect();
        for _ in 0..100 {
            let z = vertex + Point::polar(g.gen_range(0.0..1.5), g.gen_range(0.0..TAU));
            let exact = cone_distance_to_arcs(vertex, &arcs, z);
            let brute = samples.iter().map(|p| p.dist(z)).fold(f64::INFINITY, f64::min);
            // Sample spacing: radial 0.01, angular at most 4·width/400.
            assert!(exact <= brute + 1e-12);
            assert!(brute - exact <= 0.01 + 4.0 * width / 400.0, "{brute} vs {exact}");
        }
    }
}

#[test]
fn conv_cone_contains_convex_combinations() {
    let mut g = rng(2);
    for seed in 0..20 {
        let poly = random_convex_polygon::<f64>(seed, 12).unwrap();
        let set = PlanarSet::Polygon(poly.clone());
        for &v in poly.vertices() {
            let conv = conv_a(&set, v).unwrap();
            let others: Vec<Point<f64>> = poly.vertices().iter().copied().filter(|&p| p != v).collect();
            for _ in 0..50 {
                let p = others[g.gen_range(0..others.len())];
                let q = others[g.gen_range(0..others.len())];
                let s = g.gen_range(0.0..1.0);
                let z = p * s + q * (1.0 - s);
                assert!(conv.distance(z) < 1e-9);
            }
            // Every direction of the hull cone is a direction of the polygon.
            for (start, end) in conv.arcs.circular_arcs() {
                for th in [start, end, start + 0.5 * (end - start)] {
                    let z = v + Point::polar(1e-6, th);
                    assert!(set.contains(z) || poly.boundary_distance(z) < 1e-9);
                }
            }
        }
    }
}

fn random_interval_set(g: &mut ChaCha8Rng) -> IntervalSet<f64> {
    let mut cuts: Vec<f64> = (0..2 * g.gen_range(1..8)).map(|_| g.gen_range(0.0..1.0)).collect();
    cuts.sort_by(f64::total_cmp);
    IntervalSet::new(cuts.chunks(2).map(|c| (c[0], c[1]))).unwrap()
}

#[test]
fn longest_gap_matches_fine_scan() {
    let mut g = rng(3);
    let step: f64 = 1e-6;
    for _ in 0..100 {
        let a = random_interval_set(&mut g);
        let x = g.gen_range(0.0..0.5);
        let h: f64 = g.gen_range(0.05..0.5);
        let n = (h / step).ceil() as usize;
        let mut best: f64 = 0.0;
        let mut run_start: Option<f64> = None;
        for i in 0..=n {
            let s = (x + i as f64 * step).min(x + h);
            if a.contains(s) {
                if let Some(r) = run_start.take() {
                    best = best.max(s - r);
                }
            } else if run_start.is_none() {
                run_start = Some(if i == 0 { x } else { s - step });
            }
        }
        if let Some(r) = run_start {
            best = best.max(x + h - r);
        }
        let got = a.longest_gap(x, h);
        assert!((got - best).abs() <= 2e-6, "{got} vs scan {best}");
    }
}

#[test]
fn geometric_porosity_matches_exhaustive_scan() {
    let ladder = ScaleLadder::new(1.0, 0.5, 14).unwrap();
    for (q, c) in [(0.25, 0.5), (0.125, 0.5), (0.25, 0.75), (0.1, 0.4)] {
        let a = geometric_radii(q, c).unwrap();
        let est = porosity_estimate(&a, 0.0, &ladder, 4).unwrap();
        let h_hi = ladder.scale(ladder.depth() - 4);
        let h_lo = ladder.finest() * 0.5f64.powf(7.0 / 8.0);
        let oracle = gap_scan_sup(&a, h_lo, h_hi);
        assert!(est.estimate <= oracle + 1e-12, "q = {q}, c = {c}");
        // The ladder subsamples h at ratio 2^{-1/8}, which moves the
        // ratio by at most that factor.
        assert!(oracle - est.estimate <= 1.0 - 0.5f64.powf(1.0 / 8.0), "q = {q}, c = {c}");
    }
}

#[test]
fn parallel_segments_hausdorff() {
    let seg = |x0: f64, y: f64, n: usize| {
        PointSample::exact((0..=n).map(|i| Point::new(x0 + i as f64 / n as f64, y)).collect())
    };
    for (shift, gap) in [(0.0, 0.3), (0.25, 0.1), (0.5, 1.0)] {
        let a = seg(0.0, 0.0, 400);
        let b = seg(shift, gap, 400);
        let d = hausdorff_distance(&a, &b).unwrap().value;
        let brute = hausdorff_distance_brute(&a, &b).unwrap().value;
        let exact = (shift * shift + gap * gap).sqrt();
        assert_eq!(d, brute);
        assert!((d - exact).abs() < 1e-12);
    }
}

#[test]
fn sphere_samples_lie_on_and_cover_the_sphere() {
    let sets = [
        (PlanarSet::Polygon(random_convex_polygon::<f64>(5, 12).unwrap()), None),
        (PlanarSet::StarRegion(parabola_region::<f64>(1025).unwrap()), Some(Point::new(0.3, 0.5))),
        (PlanarSet::HalfPlane, Some(Point::new(0.2, 0.0))),
        (
            PlanarSet::RadialProduct {
                vertex: Point::origin(),
                radii: IntervalSet::new([(0.0, 0.0), (0.5, 1.0)]).unwrap(),
                arcs: AngularSet::from_ccw(0.5, 4.0),
            },
            Some(Point::new(0.6, 0.0)),
        ),
    ];
    for (set, a) in sets {
        let a = a.unwrap_or_else(|| match &set {
            PlanarSet::Polygon(p) => p.vertices()[0],
            _ => Point::origin(),
        });
        for t in [0.05, 0.2, 0.4] {
            let s = sphere_sample(&set, a, t, 512).unwrap();
            for p in &s.points {
                assert!((p.dist(a) - t).abs() <= 1e-9);
                assert!(set.nearest_distance(*p).unwrap().value <= s.mesh + 1e-9);
            }
            for i in 0..20_000 {
                let z = a + Point::polar(t, TAU * i as f64 / 20_000.0);
                if set.contains(z) {
                    let d = s.points.iter().map(|p| p.dist(z)).fold(f64::INFINITY, f64::min);
                    assert!(d <= s.mesh + 1e-9, "t = {t}: gap {d} > mesh {}", s.mesh);
                }
            }
        }
    }
}

#[test]
fn polygon_radii_match_sector_grid() {
    let poly = random_convex_polygon::<f64>(11, 12).unwrap();
    let a = poly.vertices()[0];
    let set = PlanarSet::Polygon(poly);
    let cone = con_a(&set, a).unwrap();
    let (start, end) = cone.arcs.circular_arcs()[0];
    let mid = start + 0.5 * (end - start);
    for (theta, beta) in [(mid, 0.1), (mid, 0.5), (end + 0.3, 0.4), (start + PI, 0.2)] {
        let l = Ray::new(a, theta);
        let exact = radii_set(&set, a, &l, beta, 1e-3).unwrap().set;
        let mut brute: Vec<f64> = vec![0.0];
        let n = 600;
        for i in 0..=n {
            for j in 0..=n {
                let z = Point::new(-1.0 + 2.0 * i as f64 / n as f64, -1.0 + 2.0 * j as f64 / n as f64);
                if set.contains(z) && planar_tangent::porosity::in_sector(z, &l, beta) {
                    brute.push(z.dist(a));
                }
            }
        }
        for &r in &brute {
            assert!(exact.contains(r) || exact.intervals().iter().any(|iv| (r - iv.hi).abs() < 1e-9));
        }
        if let (Some(lo), Some(hi)) = (
            brute.iter().copied().reduce(f64::min),
            brute.iter().copied().reduce(f64::max),
        ) {
            let top = exact.intervals().last().unwrap().hi;
            assert!(top - hi <= 2.0 * 2f64.sqrt() / n as f64 + 1e-9);
            assert!(lo - exact.inf().unwrap() <= 2.0 * 2f64.sqrt() / n as f64 + 1e-9);
        }
    }
}

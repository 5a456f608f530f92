mod common;

use common::ConicalRule;
use rand::Rng;
use tet10_mass::quadrature::mass_quadrature;
use tet10_mass::{
    check_validity, compute, element_volume, mass_cm, mass_exact, mass_lm, mass_qm, standard_rule, Error, Scheme,
    Tet10Nodes,
};

fn valid_curved(seed: u64, delta: f64, count: usize) -> Vec<[[f64; 3]; 10]> {
    let mut rng = common::rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let raw = common::perturbed_element(&mut rng, delta);
        if check_validity(&Tet10Nodes::new(raw)).is_ok() {
            out.push(raw);
        }
    }
    out
}

#[test]
fn exact_matches_brute_force_quadrature() {
    for raw in valid_curved(1, 0.12, 20) {
        let exact = mass_exact(&Tet10Nodes::new(raw), 3.5).unwrap();
        let brute = common::brute_force_mass(&raw, 3.5);
        let dev = common::max_relative_deviation(exact.entries(), &brute);
        assert!(dev < 1e-10, "relative deviation {dev:e}");
    }
}

#[test]
fn qm_matches_quadrature_of_interpolated_metric() {
    let rule = ConicalRule::standard();
    for raw in valid_curved(2, 0.1, 10) {
        let nodal: Vec<f64> = (0..10)
            .map(|r| common::metric(&raw, common::natural_nodes()[r]))
            .collect();
        let interpolated = |p: [f64; 3]| common::shape(p).iter().zip(&nodal).map(|(f, j)| f * j).sum::<f64>();
        let reference = common::weighted_mass(&rule, 2.0, interpolated);
        let qm = mass_qm(&Tet10Nodes::new(raw), 2.0).unwrap();
        assert!(common::max_relative_deviation(qm.entries(), &reference) < 1e-10);
    }
}

#[test]
fn lm_matches_quadrature_of_linear_metric() {
    let rule = ConicalRule::standard();
    for raw in valid_curved(3, 0.1, 10) {
        let corner: Vec<f64> = (0..4)
            .map(|k| common::metric(&raw, common::natural_nodes()[k]))
            .collect();
        let linear = |p: [f64; 3]| {
            corner[0] * (1.0 - p[0] - p[1] - p[2]) + corner[1] * p[0] + corner[2] * p[1] + corner[3] * p[2]
        };
        let reference = common::weighted_mass(&rule, 1.0, linear);
        let lm = mass_lm(&Tet10Nodes::new(raw), 1.0).unwrap();
        assert!(common::max_relative_deviation(lm.entries(), &reference) < 1e-10);
    }
}

#[test]
fn cm_uses_centroid_metric() {
    for raw in valid_curved(4, 0.1, 10) {
        let j_cent = common::metric(&raw, [0.25; 3]);
        let reference = common::weighted_mass(&ConicalRule::standard(), 1.0, |_| j_cent);
        let cm = mass_cm(&Tet10Nodes::new(raw), 1.0).unwrap();
        assert!(common::max_relative_deviation(cm.entries(), &reference) < 1e-12);
    }
    let nodes = tet10_mass::study::make_element(&[0.05; 18]);
    let j_cent = common::metric(nodes.coords(), [0.25; 3]);
    let cm = mass_cm(&nodes, 1.0).unwrap();
    let ratio = cm.get(4, 4) / (32.0 / 2520.0);
    assert!((ratio - j_cent).abs() < 1e-14);
}

#[test]
fn g15_matches_brute_force_on_its_own_points() {
    // Exactness only holds for straight-sided elements; on curved ones the
    // baseline must equal its own quadrature sum rather than the true matrix.
    let rule = standard_rule(15).unwrap();
    for raw in valid_curved(5, 0.1, 5) {
        let g15 = compute(Scheme::G15, &Tet10Nodes::new(raw), 1.0).unwrap();
        let mut manual = [[0.0; 10]; 10];
        for (p, w) in rule.points.iter().zip(&rule.weights) {
            let phi = common::shape(*p);
            let s = common::metric(&raw, *p) * w;
            for i in 0..10 {
                for j in 0..10 {
                    manual[i][j] += s * phi[i] * phi[j];
                }
            }
        }
        assert!(common::max_relative_deviation(g15.entries(), &manual) < 1e-12);
    }
}

#[test]
fn volume_agrees_with_brute_force() {
    for raw in valid_curved(6, 0.15, 20) {
        let brute = ConicalRule::standard().integrate(|p| common::metric(&raw, p));
        let v = element_volume(&Tet10Nodes::new(raw)).unwrap();
        assert!((v - brute).abs() <= 1e-12 * brute);
        let total = mass_exact(&Tet10Nodes::new(raw), 1.0).unwrap().total();
        assert!((total - v).abs() <= 1e-12 * v);
    }
}

#[test]
fn approximate_totals_follow_their_metric_models() {
    for raw in valid_curved(7, 0.1, 10) {
        let nodes = Tet10Nodes::new(raw);
        let nat = common::natural_nodes();
        let j: Vec<f64> = (0..10).map(|r| common::metric(&raw, nat[r])).collect();
        let cm = mass_cm(&nodes, 1.0).unwrap().total();
        assert!((cm - common::metric(&raw, [0.25; 3]) / 6.0).abs() < 1e-14);
        let lm = mass_lm(&nodes, 1.0).unwrap().total();
        assert!((lm - j[..4].iter().sum::<f64>() / 24.0).abs() < 1e-14);
        // The corner shape functions integrate to -1/120 and the edge ones to 1/30.
        let qm = mass_qm(&nodes, 1.0).unwrap().total();
        let model = -j[..4].iter().sum::<f64>() / 120.0 + j[4..].iter().sum::<f64>() / 30.0;
        assert!((qm - model).abs() < 1e-14);
    }
}

#[test]
fn relabelled_element_permutes_matrix() {
    // Swapping corners 2 and 3 exchanges edges (1,2)/(1,3) and (2,4)/(3,4);
    // mirroring x keeps the orientation positive.
    let sigma = [0, 2, 1, 3, 6, 5, 4, 7, 9, 8];
    for raw in valid_curved(8, 0.1, 5) {
        let mut relabelled = [[0.0; 3]; 10];
        for a in 0..10 {
            let [x, y, z] = raw[sigma[a]];
            relabelled[a] = [-x, y, z];
        }
        let original = Tet10Nodes::new(raw);
        let mirrored = Tet10Nodes::new(relabelled);
        for scheme in Scheme::ALL {
            let m = compute(scheme, &original, 1.0).unwrap();
            let p = compute(scheme, &mirrored, 1.0).unwrap();
            let scale = m.entries().iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
            for a in 0..10 {
                for b in 0..10 {
                    let expected = m.get(sigma[a], sigma[b]);
                    assert!((p.get(a, b) - expected).abs() <= 1e-13 * scale, "{scheme} ({a},{b})");
                }
            }
        }
    }
}

#[test]
fn straight_sided_schemes_agree_for_random_corners() {
    let mut rng = common::rng(9);
    let mut checked = 0;
    while checked < 20 {
        let corners: [[f64; 3]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-1.0..=1.0)));
        let nodes = Tet10Nodes::from_corners(corners);
        if check_validity(&nodes).is_err() {
            continue;
        }
        checked += 1;
        let exact = mass_exact(&nodes, 1.0).unwrap();
        for scheme in [Scheme::Cm, Scheme::Lm, Scheme::Qm, Scheme::G15] {
            let m = compute(scheme, &nodes, 1.0).unwrap();
            let dev = common::max_relative_deviation(m.entries(), exact.entries());
            assert!(dev < 1e-12, "{scheme}: {dev:e}");
        }
        let brute = common::brute_force_mass(&common::straight_element(corners), 1.0);
        assert!(common::max_relative_deviation(exact.entries(), &brute) < 1e-10);
    }
}

#[test]
fn invalid_elements_are_rejected_by_every_scheme() {
    let mut coords = common::natural_nodes();
    coords.iter_mut().for_each(|c| c[0] = -c[0]);
    let nodes = Tet10Nodes::new(coords);
    for scheme in Scheme::ALL {
        let err = compute(scheme, &nodes, 1.0).unwrap_err();
        assert!(matches!(err, Error::InvalidElement { .. }), "{scheme}: {err:?}");
        assert!(err.to_string().contains("non-positive metric"));
    }
    let collapsed = Tet10Nodes::from_corners([[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.5, 0.5, 0.0]]);
    assert!(element_volume(&collapsed).is_err());
    assert!(mass_quadrature(&collapsed, 1.0, &standard_rule(5).unwrap()).is_err());
}

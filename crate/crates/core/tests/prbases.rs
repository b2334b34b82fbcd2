mod common;

use common::*;
use nsbox::behavior::{behavior_from_oracle, chsh_score};
use nsbox::circuits::OracleSpec;
use nsbox::measurement::{BlochDirection, PartySettings};
use nsbox::prbases::{
    enumerate_pr_families, grid_axes, grid_search, novel_member, pr_basis_check, residuals,
    PrBasisFamily, PrBasisKind, CERTIFICATION_SAMPLES,
};

fn shared(theta: f64, phi_a: f64, phi_b: f64) -> (PartySettings<f64>, PartySettings<f64>) {
    (
        PartySettings::same_for_both(BlochDirection::new(theta, phi_a).unwrap()),
        PartySettings::same_for_both(BlochDirection::new(theta, phi_b).unwrap()),
    )
}

#[test]
fn table_examples() {
    let q = OracleSpec::bipartite(true);
    let z = computational();
    assert!(pr_basis_check(&q, &z, &z, TOL).unwrap());
    let (a, b) = circular();
    assert!(pr_basis_check(&q, &a, &b, TOL).unwrap());
    let (a, b) = novel_member(std::f64::consts::FRAC_PI_2);
    assert!(pr_basis_check(&q, &a, &b, TOL).unwrap());
    assert!(residuals(&a, &b).unwrap().vanish(1e-12));
    assert!(!pr_basis_check(&q, &diagonal(), &diagonal(), TOL).unwrap());
    assert!((residuals(&diagonal(), &diagonal()).unwrap().r2 - 2.0).abs() < 1e-12);
}

#[test]
fn residuals_agree_with_brute_force_on_a_grid() {
    let q = OracleSpec::bipartite(true);
    let (thetas, phis) = grid_axes::<f64>(22).unwrap();
    let mut agreements = 0;
    let mut hits = 0;
    for &t in &thetas {
        for &pa in &phis {
            for &pb in &phis {
                let (a, b) = shared(t, pa, pb);
                let analytic = residuals(&a, &b).unwrap().vanish(TOL);
                let brute = pr_basis_check(&q, &a, &b, TOL).unwrap();
                assert_eq!(analytic, brute, "θ={t} φa={pa} φb={pb}");
                agreements += 1;
                hits += brute as usize;
            }
        }
    }
    assert_eq!(agreements, 22 * 22 * 22);
    assert!(hits > 0);
}

#[test]
fn classical_oracle_is_pr_only_at_poles() {
    let c = OracleSpec::bipartite(false);
    let (thetas, phis) = grid_axes::<f64>(22).unwrap();
    for &t in &thetas {
        for &pa in &phis {
            for &pb in &phis {
                let (a, b) = shared(t, pa, pb);
                let pole = t.sin().abs() < 1e-12;
                assert_eq!(pr_basis_check(&c, &a, &b, TOL).unwrap(), pole, "θ={t}");
            }
        }
    }
}

#[test]
fn every_listed_family_member_scores_four() {
    for quantum in [true, false] {
        let spec = OracleSpec::bipartite(quantum);
        for family in enumerate_pr_families(&spec).unwrap() {
            for i in 0..CERTIFICATION_SAMPLES {
                let (a, b) = family.sample::<f64>(i, CERTIFICATION_SAMPLES);
                let s = chsh_score(&behavior_from_oracle(&spec, &[a, b]).unwrap()).unwrap();
                assert!((s - 4.0).abs() < TOL, "{family} {i}");
            }
        }
    }
}

#[test]
fn grid_at_fifty_points_only_hits_listed_families() {
    // φ = π/2 is not on a 50-point azimuth grid, so only the poles appear
    for quantum in [true, false] {
        let report = grid_search::<f64>(&OracleSpec::bipartite(quantum), 50, TOL).unwrap();
        assert_eq!(report.off_family().count(), 0);
        assert_eq!(report.hits.len(), 2);
        assert!(report.hits.iter().all(|h| h.family == Some(PrBasisKind::Computational)));
    }
}

#[test]
fn grid_at_default_resolution() {
    let q = grid_search::<f64>(&OracleSpec::bipartite(true), 100, TOL).unwrap();
    assert_eq!(q.points_evaluated, 1_000_000);
    let novel = q.hits.iter().filter(|h| h.family == Some(PrBasisKind::NovelQuantum)).count();
    let mirrored = q.hits.iter().filter(|h| h.family == Some(PrBasisKind::MirroredNovel)).count();
    let poles = q.hits.iter().filter(|h| h.family == Some(PrBasisKind::Computational)).count();
    assert_eq!((poles, novel, mirrored), (2, 98, 98));
    // hits lie exactly where the residuals vanish
    for h in &q.hits {
        let (a, b) = shared(h.theta, h.phi_a, h.phi_b);
        assert!(residuals(&a, &b).unwrap().vanish(TOL));
    }
    let c = grid_search::<f64>(&OracleSpec::bipartite(false), 100, TOL).unwrap();
    assert_eq!(c.hits.len(), 2);
    assert!(c.hits.iter().all(|h| h.theta.sin().abs() < 1e-12));
    assert!(!PrBasisFamily::MIRRORED_NOVEL.contains(0.3, 0.0, 0.0, 1e-9));
}

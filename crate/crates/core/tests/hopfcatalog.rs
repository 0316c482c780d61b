use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use hypersurf_core::conditions::{ConditionKind, Direction};
use hypersurf_core::exprcore::FrameIndex::*;
use hypersurf_core::hopfcatalog::*;

fn family(id: &str) -> HypersurfaceFamily {
    Catalog::builtin().get(id).cloned().unwrap()
}

#[test]
fn builtin_catalog_has_the_six_families() {
    let ids: Vec<_> = builtin_families().into_iter().map(|f| f.id).collect();
    assert_eq!(ids, ["cp2-a1", "cp2-b", "ch2-a0", "ch2-a1", "ch2-a1p", "ch2-b"]);
    for f in builtin_families() {
        assert_eq!(f.c(), if f.space == ModelSpace::CP2 { 4.0 } else { -4.0 });
    }
}

#[test]
fn hand_checked_members() {
    let h = family("ch2-a0").curvatures(0.3).unwrap();
    assert_eq!((h.alpha, h.lambda, h.nu), (2.0, 1.0, 1.0));
    let s = family("cp2-a1").curvatures(FRAC_PI_4).unwrap();
    assert!(s.alpha.abs() < 1e-15 && (s.lambda - 1.0).abs() < 1e-15);
    assert!(family("cp2-a1").hopf_residual_at(FRAC_PI_4).unwrap().abs() < 1e-15);
    for r in [0.1, 0.3, 0.7] {
        let b = family("cp2-b").curvatures(r).unwrap();
        assert!((b.lambda * b.nu + 1.0).abs() < 1e-12);
    }
}

#[test]
fn oracle_holds_on_every_family() {
    for f in builtin_families() {
        for r in f.sample_radii(100) {
            assert!(f.hopf_residual_at(r).unwrap().abs() < 1e-9, "{} at {r}", f.id);
        }
    }
}

#[test]
fn out_of_domain_radius_is_rejected() {
    let f = family("cp2-b");
    assert!(matches!(f.curvatures(1.0), Err(DomainError::Outside { .. })));
    assert!(evaluate_condition(&f, 0.0, &ConditionKind::Parallel).is_err());
}

#[test]
fn parallel_witness_values() {
    let rep = evaluate_condition(&family("cp2-b"), FRAC_PI_8, &ConditionKind::Parallel).unwrap();
    let lambda = rep.curvatures.lambda;
    let v = rep.get(Direction::Along(E1), E3, E2).unwrap();
    // g((∇_W S*)ξ, φW) = −λ(c+λν) with c+λν = 3
    assert!((v + 3.0 * lambda).abs() < 1e-12);
    assert!((rep.lambda_nu_plus_c - 3.0).abs() < 1e-12);

    let rep = evaluate_condition(&family("ch2-a0"), 5.0, &ConditionKind::Parallel).unwrap();
    assert!((rep.get(Direction::Along(E1), E3, E2).unwrap() - 3.0).abs() < 1e-15);
    assert_eq!(rep.entries.len(), 27);
}

#[test]
fn einstein_totality_and_diagonal_horosphere() {
    for f in builtin_families() {
        let r = f.sample_radii(3)[1];
        let rep = evaluate_condition(&f, r, &ConditionKind::Einstein).unwrap();
        assert_eq!(rep.entries.len(), 9);
        assert!(rep.entries.iter().all(|e| e.value.is_finite()));
    }
    let rep = evaluate_condition(&family("ch2-a0"), 0.7, &ConditionKind::Einstein).unwrap();
    for e in &rep.entries {
        if e.y != e.projection {
            assert!(e.value.abs() < 1e-9);
        }
    }
}

#[test]
fn semi_parallel_on_cp2_type_b_is_nonzero() {
    let rep = evaluate_condition(&family("cp2-b"), FRAC_PI_8, &ConditionKind::SemiParallel).unwrap();
    assert!(rep.max_abs > 1e-6);
    assert_eq!(rep.entries.len(), 27);
}

#[test]
fn sweep_rows_and_constants() {
    let s = sweep(&family("cp2-b"), 0.1, 0.7, 50, &ConditionKind::Parallel).unwrap();
    assert_eq!(s.rows.len(), 50);
    assert!(s.rows.iter().all(|r| (r.lambda_nu_plus_c - 3.0).abs() < 1e-9));
    assert!(s.rows.windows(2).all(|w| w[0].r < w[1].r));

    let s = sweep(&family("ch2-b"), 0.1, 3.0, 50, &ConditionKind::Parallel).unwrap();
    assert!(s.rows.iter().all(|r| (r.lambda_nu_plus_c + 3.0).abs() < 1e-9));

    let s = sweep(&family("ch2-a0"), 0.0, 1.0, 2, &ConditionKind::Parallel).unwrap();
    assert_eq!(s.rows.len(), 2);
    assert_eq!((s.rows[0].r, s.rows[1].r), (0.0, 1.0));
    assert_eq!(s.rows[0].max_residual, s.rows[1].max_residual);
}

#[test]
fn sweep_errors() {
    let f = family("cp2-b");
    assert!(matches!(
        sweep(&f, 0.1, 0.9, 10, &ConditionKind::Parallel),
        Err(EvaluationError::Domain(DomainError::Interval { .. }))
    ));
    assert!(matches!(
        sweep(&f, 0.1, 0.2, 1, &ConditionKind::Parallel),
        Err(EvaluationError::Domain(DomainError::Samples(1)))
    ));
}

#[test]
fn parallel_witness_on_sample_grids() {
    for f in builtin_families() {
        for r in f.sample_radii(100) {
            let rep = evaluate_condition(&f, r, &ConditionKind::Parallel).unwrap();
            assert!(rep.max_abs > 1e-6, "{} at r = {r}: {}", f.id, rep.max_abs);
        }
    }
}

/// The geodesic sphere in CH² with coth r = 2 has λ = ν = 2, α = 5/2, so
/// c + λν = 0 and S* vanishes identically: its *-Ricci tensor is parallel.
#[test]
fn ch2_geodesic_sphere_with_coth_two_has_vanishing_star_ricci() {
    let r = 0.5 * 3f64.ln();
    let f = family("ch2-a1");
    let k = f.curvatures(r).unwrap();
    assert!((k.lambda - 2.0).abs() < 1e-12 && (k.alpha - 2.5).abs() < 1e-12);
    let rep = evaluate_condition(&f, r, &ConditionKind::Parallel).unwrap();
    assert!(rep.max_abs < 1e-12, "{}", rep.max_abs);
    assert!(rep.lambda_nu_plus_c.abs() < 1e-12);
}

#[test]
fn catalog_file_round_trip_through_disk() {
    let dir = std::env::temp_dir().join(format!("hypersurf-cat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.toml");
    std::fs::write(&path, include_str!("../data/catalog.toml")).unwrap();
    let cat = Catalog::load(&path, DEFAULT_ORACLE_TOL).unwrap();
    assert_eq!(cat.version, CATALOG_VERSION);
    assert_eq!(cat.families.len(), 6);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn star_ricci_reports_are_free_of_connection_coefficients() {
    use hypersurf_core::exprcore::{Expr, SymbolKind};
    use hypersurf_core::framegeom::names;
    let l = Expr::int(1);
    for kind in [
        "parallel",
        "xi-parallel",
        "d-parallel",
        "semi-parallel",
        "pseudo-parallel",
    ] {
        let kind = ConditionKind::parse(kind, l.clone()).unwrap();
        let ev = ConditionEvaluator::new(ModelSpace::CH2, &kind);
        for e in &ev.report.entries {
            for s in e.equation.symbols() {
                assert!(
                    ![names::OMEGA1, names::OMEGA2, names::OMEGA3].contains(&s.name()),
                    "{kind}: {s}"
                );
                assert!(!matches!(s.kind(), SymbolKind::FormalDerivative { .. }), "{kind}: {s}");
            }
        }
    }
}

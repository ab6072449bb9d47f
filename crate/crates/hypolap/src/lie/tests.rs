use super::*;
use crate::linalg;
use ndarray::Array2;

fn killing_from_structure(spec: &LieAlgebraSpec) -> Array2<f64> {
    // K(e_i, e_j) = tr(ad e_i ad e_j) = sum_{a,b} c_{ia}^b c_{jb}^a
    let d = spec.dim;
    Array2::from_shape_fn((d, d), |(i, j)| {
        let mut s = 0.0;
        for a in 0..d {
            for b in 0..d {
                s += spec.c_f(i, a, b) * spec.c_f(j, b, a);
            }
        }
        s
    })
}

#[test]
fn abelian3_is_trivial() {
    let spec = build_algebra("abelian3").unwrap();
    assert_eq!(spec.dim, 3);
    assert!(spec.c.iter().all(|r| r.is_zero()));
    let split = cartan_split(&spec).unwrap();
    assert_eq!((split.m, split.n), (2, 1));
}

#[test]
fn all_presets_validate() {
    for name in available_presets() {
        let spec = build_algebra(name).unwrap();
        let split = cartan_split(&spec).unwrap();
        assert_eq!(split.m + split.n, spec.dim, "{name}");
        // realization consistency: bracket of matrices matches structure constants
        if !spec.basis_matrices.is_empty() {
            for i in 0..spec.dim {
                for j in 0..spec.dim {
                    let comm = linalg::commutator(&spec.basis_matrices[i], &spec.basis_matrices[j]);
                    let mut want = linalg::czeros(spec.basis_matrices[0].nrows());
                    for k in 0..spec.dim {
                        let cc = spec.c_f(i, j, k);
                        if cc != 0.0 {
                            want = want + &spec.basis_matrices[k].mapv(|z| z * cc);
                        }
                    }
                    assert!(
                        linalg::max_abs(&(comm - want)) < 1e-12,
                        "{name}: realization mismatch at ({i},{j})"
                    );
                }
            }
        }
    }
}

#[test]
fn sl2c_real_signature_via_killing_oracle() {
    let spec = build_algebra("sl2c_real").unwrap();
    assert_eq!((spec.m(), spec.n()), (3, 3));
    // Oracle: diagonalize the Killing form built from structure constants.
    let k = killing_from_structure(&spec);
    let evs = linalg::hermitian_eigenvalues(&linalg::to_complex(&k));
    let pos = evs.iter().filter(|&&l| l > 1e-9).count();
    let neg = evs.iter().filter(|&&l| l < -1e-9).count();
    assert_eq!((pos, neg), (3, 3));
    // B itself has signature (3,3) in this preset by construction.
    assert!(spec.basis_is_orthonormal());
}

#[test]
fn sl2r_b_is_killing_over_8() {
    let spec = build_algebra("sl2r").unwrap();
    let k = killing_from_structure(&spec);
    for i in 0..3 {
        for j in 0..3 {
            assert!((k[[i, j]] / 8.0 - spec.b_f(i, j)).abs() < 1e-13);
        }
    }
    // [p,p] ⊆ k oracle by direct bracket evaluation
    let e1 = vec![1.0, 0.0, 0.0];
    let e2 = vec![0.0, 1.0, 0.0];
    let br = spec.bracket(&e1, &e2);
    assert!(br[0].abs() < 1e-15 && br[1].abs() < 1e-15 && br[2].abs() > 0.5);
}

#[test]
fn adjoint_map_properties() {
    let spec = build_algebra("sl2r").unwrap();
    let split = cartan_split(&spec).unwrap();
    // x = 0 -> zero matrix
    let z = adjoint_map(&spec, &[0.0; 3]);
    assert!(z.iter().all(|&v| v == 0.0));
    // k generator: ad(x)|_p is antisymmetric w.r.t. <,>
    let x = vec![0.0, 0.0, 1.0];
    let ad = adjoint_map_on(&split, &spec, &x);
    for i in 0..2 {
        for j in 0..2 {
            assert!((ad[[i, j]] + ad[[j, i]]).abs() < 1e-12);
        }
    }
    // p generator exchanges p and k
    let y = vec![1.0, 0.0, 0.0];
    let ady = adjoint_map_on(&split, &spec, &y);
    assert!(ady[[0, 0]].abs() < 1e-12 && ady[[1, 1]].abs() < 1e-12 && ady[[2, 2]].abs() < 1e-12);
    assert!(ady[[2, 1]].abs() > 0.1); // p -> k coupling present
}

#[test]
fn adjoint_b_antisymmetry_all_presets() {
    for name in available_presets() {
        let spec = build_algebra(name).unwrap();
        let d = spec.dim;
        for t in 0..d {
            let mut x = vec![0.0; d];
            x[t] = 1.0;
            let ad = adjoint_map(&spec, &x);
            // B(ad(x)u, v) + B(u, ad(x)v) = 0
            for i in 0..d {
                for j in 0..d {
                    let mut s = 0.0;
                    for l in 0..d {
                        s += ad[[l, i]] * spec.b_f(l, j) + spec.b_f(i, l) * ad[[l, j]];
                    }
                    assert!(s.abs() < 1e-12, "{name}: B-antisymmetry fails");
                }
            }
        }
    }
}

#[test]
fn casimir_su2_spin_half() {
    let spec = build_algebra("su2").unwrap();
    let rho = spec.basis_matrices.clone();
    let cas = casimir_in_rep(&spec, &rho).unwrap();
    // Oracle: direct 2x2 products. With B = -delta on k, e*_a = -e_a, so
    // C = -sum rho(e*_a) rho(e_a) = sum rho(u_a)^2 = -(3/4) Id.
    let mut oracle = linalg::czeros(2);
    for a in 0..3 {
        oracle = oracle + &rho[a].dot(&rho[a]);
    }
    assert!(linalg::max_abs(&(cas.clone() - &oracle)) < 1e-14);
    assert!((cas[[0, 0]].re + 0.75).abs() < 1e-14);
    assert!(cas[[0, 1]].norm() < 1e-14);
}

#[test]
fn casimir_commutes_sl2c_adjoint() {
    let spec = build_algebra("sl2c_real").unwrap();
    let d = spec.dim;
    let rho: Vec<linalg::CMat> = (0..d)
        .map(|i| {
            let mut x = vec![0.0; d];
            x[i] = 1.0;
            linalg::to_complex(&adjoint_map(&spec, &x))
        })
        .collect();
    let cas = casimir_in_rep(&spec, &rho).unwrap();
    for r in &rho {
        assert!(linalg::max_abs(&linalg::commutator(&cas, r)) < 1e-10);
    }
}

#[test]
fn casimir_abelian_trivial() {
    let spec = build_algebra("abelian3").unwrap();
    // any commuting family is a rep; take diagonal matrices
    let rho: Vec<linalg::CMat> = (0..3)
        .map(|i| {
            let mut m = linalg::czeros(2);
            m[[0, 0]] = num_complex::Complex64::new(i as f64, 0.0);
            m[[1, 1]] = num_complex::Complex64::new(-(i as f64), 0.0);
            m
        })
        .collect();
    let cas = casimir_in_rep(&spec, &rho).unwrap();
    for r in &rho {
        assert!(linalg::max_abs(&linalg::commutator(&cas, r)) < 1e-14);
    }
}

#[test]
fn kappa_identities() {
    // abelian: everything zero
    let spec = build_algebra("abelian3").unwrap();
    let split = cartan_split(&spec).unwrap();
    let kd = kappa_data(&spec, &split);
    assert!(kd.bstar_kappa_g.abs() < 1e-15 && kd.trk_ckk.abs() < 1e-15);

    // qsic-10 for every preset (nonabelian k gives nontrivial content)
    for name in available_presets() {
        let spec = build_algebra(name).unwrap();
        let split = cartan_split(&spec).unwrap();
        let kd = kappa_data(&spec, &split);
        let lhs = kd.bstar_kappa_g;
        let rhs = 0.5 * kd.trp_ckp + kd.trk_ckk / 6.0;
        assert!(
            (lhs - rhs).abs() < 1e-10,
            "{name}: qsic-10 residual {:.3e}",
            (lhs - rhs).abs()
        );
        let lhs_k = kd.bstar_kappa_k;
        assert!((lhs_k - kd.trk_ckk / 6.0).abs() < 1e-10, "{name}: kappa^k norm");
        assert!((kd.scal_x - kd.trp_ckp).abs() < 1e-15);
    }
}

#[test]
fn kappa_fully_antisymmetric() {
    let spec = build_algebra("sl3r").unwrap();
    let split = cartan_split(&spec).unwrap();
    let kd = kappa_data(&spec, &split);
    let d = spec.dim;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let v = kd.kappa_at(d, i, j, k);
                assert!((v + kd.kappa_at(d, j, i, k)).abs() < 1e-12);
                assert!((v + kd.kappa_at(d, i, k, j)).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn centralizer_trivial_gamma() {
    let spec = build_algebra("sl2c_real").unwrap();
    let split = cartan_split(&spec).unwrap();
    let a = vec![0.0; 6];
    let k = linalg::ceye(2);
    let data = centralizer_decomposition(&spec, &split, &a, &k).unwrap();
    assert_eq!(data.r, 6);
    assert_eq!(data.r, data.p + data.q);
}

#[test]
fn centralizer_sl2c_generic() {
    let spec = build_algebra("sl2c_real").unwrap();
    let split = cartan_split(&spec).unwrap();
    // a along p3 (regular), k = exp(phi k3) generic in T
    let a = vec![0.0, 0.0, 1.3, 0.0, 0.0, 0.0];
    let phi = 0.9;
    let mut x = vec![0.0; 6];
    x[5] = phi;
    let k = linalg::expm(&spec.realize(&x));
    let data = centralizer_decomposition(&spec, &split, &a, &k).unwrap();
    assert_eq!((data.p, data.q), (1, 1));
    assert_eq!(data.b_gamma.len(), 1);
    assert_eq!(data.r, 2);
}

#[test]
fn centralizer_sl3r_rank4_and_regular() {
    let spec = build_algebra("sl3r").unwrap();
    let split = cartan_split(&spec).unwrap();
    let k = linalg::ceye(3);
    // a in the d2 = diag(1,1,-2) direction: ad(a) has rank 4
    let mut a = vec![0.0; 8];
    a[1] = 0.7;
    let ad = adjoint_map(&spec, &a);
    assert_eq!(linalg::rank_with_tol(&linalg::to_complex(&ad), 1e-9), 4);
    let data = centralizer_decomposition(&spec, &split, &a, &k).unwrap();
    // k(gamma) = so(2), t(gamma) = k(gamma), so b(gamma) = span(d2).
    assert_eq!(data.q, 1);
    assert_eq!(data.b_gamma.len(), 1);
    assert_eq!(data.b_space.len(), 1);

    // regular a: diag entries distinct -> k(gamma) = 0, b(gamma) = p
    let mut areg = vec![0.0; 8];
    areg[0] = 0.9; // d1
    areg[1] = 0.4; // d2
    let data = centralizer_decomposition(&spec, &split, &areg, &k).unwrap();
    assert_eq!(data.q, 0);
    assert_eq!(data.b_gamma.len(), 5);
    // odd-dimensional, >= 3: the Tvan vanishing regime
    assert!(data.b_gamma.len() % 2 == 1 && data.b_gamma.len() >= 3);
}

#[test]
fn centralizer_rejects_noncommuting() {
    let spec = build_algebra("sl2c_real").unwrap();
    let split = cartan_split(&spec).unwrap();
    // a along p1 does not commute with k = exp(phi k3)
    let a = vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let mut x = vec![0.0; 6];
    x[5] = 0.4;
    let k = linalg::expm(&spec.realize(&x));
    assert!(matches!(
        centralizer_decomposition(&spec, &split, &a, &k),
        Err(HypolapError::NotCommuting { .. })
    ));
}

#[test]
fn preset_json_roundtrip() {
    for name in available_presets() {
        let spec = build_algebra(name).unwrap();
        let pf = presets::to_preset_file(&spec);
        let json = serde_json::to_string(&pf).unwrap();
        let reparsed = preset_from_json(&json).unwrap();
        assert_eq!(reparsed.dim, spec.dim);
        for i in 0..spec.dim * spec.dim * spec.dim {
            assert_eq!(reparsed.c[i], spec.c[i], "{name}");
        }
    }
}

#[test]
fn build_algebra_error_paths() {
    use super::presets::PresetFile;
    let good = presets::to_preset_file(&build_algebra("sl2r").unwrap());
    let rebuild = |pf: &PresetFile| -> crate::Result<LieAlgebraSpec> {
        preset_from_json(&serde_json::to_string(pf).unwrap())
    };
    // break Jacobi: change a single structure constant
    let mut bad = presets::to_preset_file(&build_algebra("sl2r").unwrap());
    bad.c[0][1][2] = "3".into();
    bad.c[1][0][2] = "-3".into();
    assert!(matches!(rebuild(&bad), Err(HypolapError::JacobiViolation { .. })));
    // break B invariance
    let mut bad = presets::to_preset_file(&build_algebra("sl2r").unwrap());
    bad.b[0][0] = "2".into();
    assert!(matches!(rebuild(&bad), Err(HypolapError::NonInvariantForm { .. })));
    // break theta
    let mut bad = presets::to_preset_file(&build_algebra("sl2r").unwrap());
    bad.theta[0][0] = "2".into();
    assert!(matches!(rebuild(&bad), Err(HypolapError::ThetaNotInvolution { .. })));
    // the untouched file still builds
    assert!(rebuild(&good).is_ok());
    // non-representation rejected by the Casimir builder
    let spec = build_algebra("sl2r").unwrap();
    let mut rho = spec.basis_matrices.clone();
    rho[0] = linalg::ceye(2);
    assert!(matches!(
        casimir_in_rep(&spec, &rho),
        Err(HypolapError::NotARepresentation { .. })
    ));
}

#[test]
fn dual_basis_signs_on_split() {
    // eq"toplitz0": e*_i = e_i on p, -e_i on k for the orthonormal basis
    for name in available_presets() {
        let spec = build_algebra(name).unwrap();
        let split = cartan_split(&spec).unwrap();
        for i in 0..spec.dim {
            let ei = split.basis_vector(i);
            let want = split.sign(i);
            assert!((spec.b_vec(&ei, &ei) - want).abs() < 1e-12, "{name}");
        }
    }
}

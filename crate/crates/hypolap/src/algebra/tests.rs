use super::model::{state_diff_norm, MatrixModel, PolyState};
use super::ops;
use super::*;
use crate::lie::{build_algebra, rat};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn engine(name: &str) -> Engine {
    Engine::new(&build_algebra(name).unwrap())
}

#[test]
fn bracket_rewrite_matches_structure_constants() {
    // e1 e2 - e2 e1 -> Σ c_{12}^k e_k
    let eng = engine("sl2r");
    let e1 = eng.letter(Letter::U(0));
    let e2 = eng.letter(Letter::U(1));
    let comm = eng.multiply(&e1, &e2).sub(&eng.multiply(&e2, &e1));
    // for sl2r: [e1, e2] = 2 e3
    let want = eng.word(Coeff::from_int(2), vec![Letter::U(2)]);
    assert!(comm.sub(&want).is_zero());
}

#[test]
fn clifford_square_rewrite() {
    // c(e1) c(e1) -> -B_11 = -1 for sl2r
    let eng = engine("sl2r");
    let sq = eng.word(Coeff::one(), vec![Letter::C(0), Letter::C(0)]);
    assert!(sq.sub(&NormalForm::scalar(Coeff::from_int(-1))).is_zero());
    // on k: c(e3)^2 = -B_33 = +1
    let sq = eng.word(Coeff::one(), vec![Letter::C(2), Letter::C(2)]);
    assert!(sq.sub(&NormalForm::one()).is_zero());
}

#[test]
fn weyl_rewrite() {
    // ∂_{Y1} Y1 -> Y1 ∂_{Y1} + 1
    let eng = engine("sl2r");
    let lhs = eng.word(Coeff::one(), vec![Letter::Dy(0), Letter::Y(0)]);
    let want = eng
        .word(Coeff::one(), vec![Letter::Y(0), Letter::Dy(0)])
        .add(&NormalForm::one());
    assert!(lhs.sub(&want).is_zero());
}

#[test]
fn unit_multiplication() {
    let eng = engine("sl2c_real");
    let x = eng.word(
        Coeff::i(),
        vec![Letter::C(1), Letter::Ch(3), Letter::U(2), Letter::Y(0)],
    );
    assert!(eng.multiply(&NormalForm::one(), &x).sub(&x).is_zero());
}

fn random_seq(rng: &mut ChaCha8Rng, d: usize, m: usize, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| match rng.gen_range(0..6) {
            0 => Letter::C(rng.gen_range(0..d) as u8),
            1 => Letter::Ch(rng.gen_range(0..d) as u8),
            2 => Letter::Cb(rng.gen_range(0..m) as u8),
            3 => Letter::U(rng.gen_range(0..d) as u8),
            4 => Letter::Y(rng.gen_range(0..d) as u8),
            _ => Letter::Dy(rng.gen_range(0..d) as u8),
        })
        .collect()
}

#[test]
fn normalize_idempotent_and_associative() {
    let eng = engine("sl2c_real");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let a = eng.word(Coeff::from_rat(rat(rng.gen_range(-3..4).max(1), 2)), random_seq(&mut rng, 6, 3, 3));
        let b = eng.word(Coeff::one(), random_seq(&mut rng, 6, 3, 3));
        let c = eng.word(Coeff::i(), random_seq(&mut rng, 6, 3, 2));
        // idempotence: renormalizing the terms of a normal form is a no-op
        let renorm = eng.normalize(
            a.terms
                .iter()
                .map(|(w, cc)| (cc.clone(), w.letters.clone()))
                .collect(),
        );
        assert!(renorm.sub(&a).is_zero());
        // associativity
        let ab_c = eng.multiply(&eng.multiply(&a, &b), &c);
        let a_bc = eng.multiply(&a, &eng.multiply(&b, &c));
        assert!(ab_c.sub(&a_bc).is_zero());
    }
}

fn random_state(rng: &mut ChaCha8Rng, model: &MatrixModel) -> PolyState {
    let mut st: PolyState = PolyState::new();
    for _ in 0..3 {
        let mono: Vec<u8> = (0..model.d).map(|_| rng.gen_range(0..2u8)).collect();
        let vec: Vec<Complex64> = (0..model.disc_dim())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        st.insert(mono, vec);
    }
    st
}

#[test]
fn faithful_in_matrix_model() {
    // products of random words agree with sequential application in the
    // matrix model (Λ ⊗ S ⊗ V with the defining rep), 50 random products
    let spec = build_algebra("sl2c_real").unwrap();
    let eng = Engine::new(&spec);
    let model = MatrixModel::new(&spec, spec.basis_matrices.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let a = random_seq(&mut rng, 6, 3, 3);
        let b = random_seq(&mut rng, 6, 3, 3);
        let st = random_state(&mut rng, &model);
        let direct = model.apply_seq(&a, &model.apply_seq(&b, &st));
        let mut seq = a.clone();
        seq.extend(b.iter().cloned());
        let nf = eng.normalize(vec![(Coeff::one(), seq)]);
        let via_nf = model.apply_nf(&nf, &st, 1.0, 0.0);
        let diff = state_diff_norm(&direct, &via_nf);
        assert!(diff < 1e-10, "faithfulness residual {diff}");
    }
}

#[test]
fn chat_c_anticommute_against_model() {
    // engine ĉ(e)·c(f) = -c(f)·ĉ(e), cross-checked in the model
    let spec = build_algebra("sl2r").unwrap();
    let eng = Engine::new(&spec);
    let model = MatrixModel::new(&spec, spec.basis_matrices.clone());
    let anti = eng
        .word(Coeff::one(), vec![Letter::Ch(0), Letter::C(1)])
        .add(&eng.word(Coeff::one(), vec![Letter::C(1), Letter::Ch(0)]));
    assert!(anti.is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let st = random_state(&mut rng, &model);
    let lhs = model.apply_seq(&[Letter::Ch(0), Letter::C(1)], &st);
    let mut rhs = model.apply_seq(&[Letter::C(1), Letter::Ch(0)], &st);
    for v in rhs.values_mut() {
        for z in v.iter_mut() {
            *z = -*z;
        }
    }
    assert!(state_diff_norm(&lhs, &rhs) < 1e-12);
}

#[test]
fn kostant_squares_exact_small_presets() {
    for name in ["abelian3", "sl2r", "su2"] {
        let eng = engine(name);
        let reports = ops::verify_square_identities(&eng);
        for r in &reports {
            assert!(r.ok, "{name}: {} failed: {}", r.id, r.detail);
        }
    }
}

#[test]
fn kostant_abelian_reduces_to_casimir() {
    // abelian: κ = 0, so D^{g,2} = C^g on the nose
    let eng = engine("abelian3");
    let dg = ops::d_g(&eng);
    let sq = eng.multiply(&dg, &dg);
    assert!(sq.sub(&ops::casimir(&eng)).is_zero());
}

#[test]
fn hypoelliptic_square_sl2r() {
    let eng = engine("sl2r");
    let db = ops::frak_d_b(&eng);
    let lhs = eng.multiply(&db, &db).scale(&Coeff::from_rat(rat(1, 2)));
    let diff = lhs.sub(&ops::rio2a_rhs(&eng));
    assert!(diff.is_zero(), "rio2a sl2r: {} terms differ", diff.len());
}

#[test]
fn theta_squares_sl2r() {
    let eng = engine("sl2r");
    let reports = ops::verify_square_identities(&eng);
    for r in &reports {
        assert!(r.ok, "{}: {}", r.id, r.detail);
    }
}

#[test]
fn superconnection_bianchi_sl2r() {
    let eng = engine("sl2r");
    let rep = ops::superconnection_curvature(&eng).unwrap();
    assert!(rep.grade00_reduces.ok);
    assert!(rep.dtheta_component.ok, "{}", rep.dtheta_component.detail);
    assert!(rep.db_component.ok, "{}", rep.db_component.detail);
    assert!(rep.bianchi.ok);
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_letter() -> impl Strategy<Value = Letter> {
        (0u8..6, 0u8..6, 0u8..3).prop_map(|(kind, i, a)| match kind {
            0 => Letter::C(i),
            1 => Letter::Ch(i),
            2 => Letter::Cb(a),
            3 => Letter::U(i),
            4 => Letter::Y(i),
            _ => Letter::Dy(i),
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn multiplication_associative(
            a in proptest::collection::vec(arb_letter(), 1..4),
            b in proptest::collection::vec(arb_letter(), 1..4),
            c in proptest::collection::vec(arb_letter(), 1..3),
        ) {
            let eng = engine("sl2c_real");
            let na = eng.word(Coeff::one(), a);
            let nb = eng.word(Coeff::i(), b);
            let nc = eng.word(Coeff::from_rat(rat(1, 3)), c);
            let left = eng.multiply(&eng.multiply(&na, &nb), &nc);
            let right = eng.multiply(&na, &eng.multiply(&nb, &nc));
            prop_assert!(left.sub(&right).is_zero());
        }

        #[test]
        fn normalize_idempotent_prop(a in proptest::collection::vec(arb_letter(), 1..5)) {
            let eng = engine("sl2c_real");
            let nf = eng.word(Coeff::one(), a);
            let renorm = eng.normalize(
                nf.terms.iter().map(|(w, c)| (c.clone(), w.letters.clone())).collect(),
            );
            prop_assert!(renorm.sub(&nf).is_zero());
        }

        #[test]
        fn coeff_ring_distributive(
            (b1, s1, y1) in (-3i16..4, -3i16..4, 0u8..2),
            (b2, s2, y2) in (-3i16..4, -3i16..4, 0u8..2),
            (b3, s3, y3) in (-3i16..4, -3i16..4, 0u8..2),
        ) {
            use crate::algebra::coeff::{GaussRat, Mono};
            let m = |b, s, y| Coeff::monomial(Mono { b, s, y, q: 0 }, GaussRat::from_int(1));
            let (x, y, z) = (m(b1, s1, y1), m(b2, s2, y2), m(b3, s3, y3));
            let lhs = x.mul(&y.add(&z));
            let rhs = x.mul(&y).add(&x.mul(&z));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn rotated_square_evaluates_against_model() {
    // numeric spot check of 𝔇_{b,θ}² at (b, θ) = (0.8, 0.6) in the model
    let spec = build_algebra("sl2r").unwrap();
    let eng = Engine::new(&spec);
    let model = MatrixModel::new(&spec, spec.basis_matrices.clone());
    let dbt = ops::frak_d_b_theta(&eng, 0);
    let sq = eng.multiply(&dbt, &dbt).scale(&Coeff::from_rat(rat(1, 2)));
    let rhs = ops::rio2abis_rhs(&eng, false);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let st = random_state(&mut rng, &model);
    let a = model.apply_nf(&sq, &st, 0.8, 0.6);
    let b = model.apply_nf(&rhs, &st, 0.8, 0.6);
    assert!(state_diff_norm(&a, &b) < 1e-10);
}

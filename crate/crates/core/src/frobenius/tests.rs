use proptest::prelude::*;

use super::*;
use crate::numlin::{matmul, vec_kron};
use crate::sample;
use crate::spectrum::extract_copyables;

type C = Complex<f64>;

fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

fn r(x: f64) -> C {
    c(x, 0.0)
}

fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

fn max_diff(a: &Tensor<f64>, b: &Tensor<f64>) -> f64 {
    a.sub(b).unwrap().max_abs()
}

fn vdiff(a: &[C], b: &[C]) -> f64 {
    vec_norm(&crate::numlin::vec_sub(a, b))
}

fn orthogonal_21() -> BasisSpec<f64> {
    BasisSpec::new(vec![vec![r(2.0), r(0.0)], vec![r(0.0), r(1.0)]], BasisKind::Orthogonal).unwrap()
}

fn hadamard() -> BasisSpec<f64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    BasisSpec::new(vec![vec![r(s), r(s)], vec![r(s), r(-s)]], BasisKind::Orthonormal).unwrap()
}

fn skew() -> BasisSpec<f64> {
    BasisSpec::new(vec![vec![r(1.0), r(0.0)], vec![r(1.0), r(1.0)]], BasisKind::Arbitrary).unwrap()
}

fn mul_column(f: &FrobeniusStructure<f64>, i: usize, j: usize) -> Vec<C> {
    f.m().column_vec(i * f.dim() + j)
}

#[test]
fn standard_basis_copies_computational_states() {
    let f = from_basis(&BasisSpec::<f64>::standard(2)).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let expected = if i == j { crate::numlin::basis_vector(2, i) } else { vec![r(0.0); 2] };
            assert!(vdiff(&mul_column(&f, i, j), &expected) < 1e-15);
        }
    }
    assert_eq!(f.unit(), &[r(1.0), r(1.0)]);
    assert!(max_diff(f.delta(), &adjoint(f.m()).unwrap()) == 0.0);
    assert!(f.dagger() && f.special());
    let report = check_axioms(&f, &tol()).unwrap();
    for e in &report.entries {
        assert!(e.residual <= 1e-12, "{} residual {}", e.axiom, e.residual);
        assert!(e.passed);
    }
}

#[test]
fn orthogonal_basis_by_symbolic_adjoint() {
    let f = from_basis(&orthogonal_21()).unwrap();
    // delta e1 = delta(phi1 / 2) = 2 e1e1, delta e2 = e2e2
    let expected_delta =
        Tensor::from_real_rows(&[&[2.0, 0.0], &[0.0, 0.0], &[0.0, 0.0], &[0.0, 1.0]]).unwrap();
    assert!(max_diff(f.delta(), &expected_delta) < 1e-15);
    let expected_m = Tensor::from_real_rows(&[&[2.0, 0.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 1.0]]).unwrap();
    assert!(max_diff(f.m(), &expected_m) < 1e-15);
    assert!(vdiff(f.unit(), &[r(0.5), r(1.0)]) < 1e-15);
    assert!(max_diff(f.eps(), &Tensor::from_real_rows(&[&[0.5, 1.0]]).unwrap()) < 1e-15);

    let md = matmul(f.m(), f.delta()).unwrap();
    assert!(max_diff(&md, &Tensor::from_real_rows(&[&[4.0, 0.0], &[0.0, 1.0]]).unwrap()) < 1e-14);

    let report = check_axioms(&f, &tol()).unwrap();
    assert_eq!(report.failed(), vec![Axiom::Special]);
    assert!((report.residual(Axiom::Special) - 3.0).abs() < 1e-9);
}

#[test]
fn hadamard_basis_gives_parity_algebra() {
    let f = from_basis(&hadamard()).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!(vdiff(&mul_column(&f, 0, 0), &[r(s), r(0.0)]) < 1e-15);
    assert!(vdiff(&mul_column(&f, 1, 1), &[r(s), r(0.0)]) < 1e-15);
    assert!(vdiff(&mul_column(&f, 0, 1), &[r(0.0), r(s)]) < 1e-15);
    assert!(vdiff(&mul_column(&f, 1, 0), &[r(0.0), r(s)]) < 1e-15);
    assert!(vdiff(f.unit(), &[r(2f64.sqrt()), r(0.0)]) < 1e-15);
}

#[test]
fn arbitrary_basis_uses_dual_functionals() {
    let b = skew();
    let f = from_basis(&b).unwrap();
    assert!(!f.dagger() && f.special());
    let phi = b.vectors();
    for i in 0..2 {
        assert!(vdiff(&f.comultiply(&phi[i]).unwrap(), &vec_kron(&phi[i], &phi[i])) < 1e-14);
        assert!((f.counit(&phi[i]).unwrap() - r(1.0)).norm() < 1e-14);
        for j in 0..2 {
            let expected = if i == j { phi[i].clone() } else { vec![r(0.0); 2] };
            assert!(vdiff(&f.multiply(&phi[i], &phi[j]).unwrap(), &expected) < 1e-14);
        }
    }
    assert!(vdiff(f.unit(), &[r(2.0), r(1.0)]) < 1e-15);
}

#[test]
fn perturbed_multiplication_breaks_a_law() {
    let f = from_basis(&BasisSpec::<f64>::standard(2)).unwrap();
    let mut m = f.m().clone();
    m[(0, 1)] += r(1e-3);
    let g = FrobeniusStructure::from_monoid(m, f.unit().to_vec(), true).unwrap();
    let report = check_axioms(&g, &tol()).unwrap();
    let worst = report
        .residual(Axiom::Assoc)
        .max(report.residual(Axiom::FrobeniusLeft))
        .max(report.residual(Axiom::FrobeniusRight));
    assert!(worst >= 1e-4, "worst residual {worst}");
    assert_eq!(classify_report(&report), Classification::Invalid);
}

#[test]
fn classification_table() {
    assert_eq!(
        classify(&from_basis(&BasisSpec::<f64>::standard(3)).unwrap(), &tol()).unwrap(),
        Classification::Orthonormal
    );
    assert_eq!(
        classify(&from_basis(&orthogonal_21()).unwrap(), &tol()).unwrap(),
        Classification::Orthogonal
    );
    assert_eq!(classify(&from_basis(&skew()).unwrap(), &tol()).unwrap(), Classification::Arbitrary);
}

#[test]
fn non_commutative_matrix_algebra_is_invalid() {
    // M_2 with matrix multiplication on the basis E_ab, d = 4
    let d = 4;
    let mut m = Tensor::zeros(d, d * d);
    for a in 0..2 {
        for b in 0..2 {
            for c2 in 0..2 {
                // E_ab E_bc = E_ac
                m[(a * 2 + c2, (a * 2 + b) * d + (b * 2 + c2))] = r(1.0);
            }
        }
    }
    let unit = vec![r(1.0), r(0.0), r(0.0), r(1.0)];
    let f = FrobeniusStructure::from_monoid(m, unit, false).unwrap();
    let report = check_axioms(&f, &tol()).unwrap();
    assert!(report.passed(Axiom::Assoc) && report.passed(Axiom::UnitLeft));
    assert!(!report.passed(Axiom::Commutative));
    assert_eq!(classify_report(&report), Classification::Invalid);
}

#[test]
fn basis_validation_errors() {
    let dep = BasisSpec::<f64>::new(vec![vec![r(1.0), r(2.0)], vec![r(2.0), r(4.0)]], BasisKind::Arbitrary);
    assert!(matches!(dep, Err(FrobeniusError::Dependent { .. })));
    let skew_orth = BasisSpec::<f64>::new(vec![vec![r(1.0), r(0.0)], vec![r(1.0), r(1.0)]], BasisKind::Orthogonal);
    assert!(matches!(skew_orth, Err(FrobeniusError::NotOrthogonal { i: 0, j: 1, .. })));
    let unnormalized = BasisSpec::new(orthogonal_21().vectors().to_vec(), BasisKind::Orthonormal);
    assert!(matches!(unnormalized, Err(FrobeniusError::NotNormalized { index: 0, .. })));
    assert!(matches!(
        BasisSpec::<f64>::new(vec![vec![r(1.0)], vec![r(1.0)]], BasisKind::Arbitrary),
        Err(FrobeniusError::VectorLength { .. })
    ));
    assert!(matches!(BasisSpec::<f64>::new(vec![], BasisKind::Arbitrary), Err(FrobeniusError::EmptyBasis)));
}

#[test]
fn right_action_fixtures() {
    let f = from_basis(&BasisSpec::<f64>::standard(2)).unwrap();
    assert!(max_diff(&right_action(&f, f.unit()).unwrap(), &Tensor::identity(2)) < 1e-15);
    let (a, b) = (c(0.3, -1.2), c(2.0, 0.5));
    assert!(max_diff(&right_action(&f, &[a, b]).unwrap(), &Tensor::diag(&[a, b])) < 1e-15);
    let h = from_basis(&hadamard()).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let expected = Tensor::from_real_rows(&[&[0.0, s], &[s, 0.0]]).unwrap();
    assert!(max_diff(&right_action(&h, &[r(0.0), r(1.0)]).unwrap(), &expected) < 1e-15);
    assert!(right_action(&h, &[r(1.0)]).is_err());
}

#[test]
fn conjugate_element_fixtures() {
    let f = from_basis(&BasisSpec::<f64>::standard(2)).unwrap();
    let (a, b) = (c(0.3, -1.2), c(2.0, 0.5));
    assert!(vdiff(&conjugate_element(&f, &[a, b]).unwrap(), &[a.conj(), b.conj()]) < 1e-15);
    assert!(vdiff(&conjugate_element(&f, f.unit()).unwrap(), f.unit()) < 1e-15);
    let nd = from_basis(&skew()).unwrap();
    assert!(matches!(conjugate_element(&nd, nd.unit()), Err(FrobeniusError::NotDagger)));
}

#[test]
fn conjugate_morphism_fixtures() {
    let a = from_basis(&BasisSpec::<f64>::standard(2)).unwrap();
    let b = from_basis(&BasisSpec::<f64>::standard(3)).unwrap();
    let id = Tensor::identity(2);
    assert!(max_diff(&conjugate_morphism(&id, &a, &a).unwrap(), &id) < 1e-15);
    let mut rng = sample::rng(4);
    let g: Tensor<f64> = sample::random_matrix(&mut rng, 3, 2);
    let conj = g.map(|z| z.conj());
    assert!(max_diff(&conjugate_morphism(&g, &a, &b).unwrap(), &conj) < 1e-14);
    assert!(conjugate_morphism(&g, &b, &a).is_err());
}

#[test]
fn conjugate_morphism_is_involutive_between_orthogonal_algebras() {
    let mut rng = sample::rng(12);
    let a = from_basis(&sample::random_orthogonal_basis::<f64>(&mut rng, 3, (0.5, 2.0)).unwrap()).unwrap();
    let b = from_basis(&sample::random_orthogonal_basis::<f64>(&mut rng, 2, (0.5, 2.0)).unwrap()).unwrap();
    let g: Tensor<f64> = sample::random_matrix(&mut rng, 2, 3);
    let once = conjugate_morphism(&g, &a, &b).unwrap();
    let twice = conjugate_morphism(&once, &a, &b).unwrap();
    assert!(max_diff(&twice, &g) < 1e-12);
}

#[test]
fn norm_profile_fixtures() {
    let p = norm_profile(&from_basis(&BasisSpec::<f64>::standard(3)).unwrap(), &tol()).unwrap();
    assert!(p.iter().all(|&x| (x - 1.0).abs() < 1e-12) && p.len() == 3);
    let p = norm_profile(&from_basis(&orthogonal_21()).unwrap(), &tol()).unwrap();
    assert!((p[0] - 1.0).abs() < 1e-12 && (p[1] - 2.0).abs() < 1e-12);
    assert!(matches!(
        norm_profile(&from_basis(&skew()).unwrap(), &tol()),
        Err(FrobeniusError::NotDaggerType(Classification::Arbitrary))
    ));
}

#[test]
fn norm_profile_invariant_under_unitary_conjugation() {
    let mut rng = sample::rng(31);
    for d in 2..=5 {
        let f = from_basis(&sample::random_orthogonal_basis::<f64>(&mut rng, d, (0.5, 2.0)).unwrap()).unwrap();
        let u = sample::random_unitary(&mut rng, d);
        let g = sample::conjugate_structure(&f, &u).unwrap();
        let p = norm_profile(&f, &tol()).unwrap();
        let q = norm_profile(&g, &tol()).unwrap();
        for (x, y) in p.iter().zip(&q) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}

#[test]
fn single_precision_structure() {
    let mut rng = sample::rng(1);
    let b = sample::random_orthogonal_basis::<f32>(&mut rng, 3, (0.5, 2.0)).unwrap();
    let f = from_basis(&b).unwrap();
    let t = Tolerance::<f32>::default();
    assert_eq!(classify(&f, &t).unwrap(), Classification::Orthogonal);
}

fn random_dagger_structure(seed: u64, d: usize) -> (FrobeniusStructure<f64>, BasisSpec<f64>) {
    let mut rng = sample::rng(seed);
    let b = sample::random_orthogonal_basis(&mut rng, d, (0.5, 2.0)).unwrap();
    (from_basis(&b).unwrap(), b)
}

fn random_element(seed: u64, d: usize) -> Vec<C> {
    sample::random_vector(&mut sample::rng(seed ^ 0xabcdef), d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructed_structures_pass_their_axioms(seed in any::<u64>(), d in 1usize..6, kind in 0usize..3) {
        let mut rng = sample::rng(seed);
        let b = match kind {
            0 => sample::random_orthonormal_basis(&mut rng, d).unwrap(),
            1 => sample::random_orthogonal_basis(&mut rng, d, (0.5, 2.0)).unwrap(),
            _ => sample::random_invertible_basis(&mut rng, d, 10.0).unwrap(),
        };
        let f = from_basis(&b).unwrap();
        let report = check_axioms(&f, &tol()).unwrap();
        prop_assert!(report.all_passed(&Axiom::claimed_by(&f)), "failed {:?}", report.failed());
    }

    #[test]
    fn right_action_is_a_monoid_embedding(seed in any::<u64>(), d in 1usize..6) {
        let (f, _) = random_dagger_structure(seed, d);
        let alpha = random_element(seed, d);
        let beta = random_element(seed.wrapping_add(1), d);
        let ra = right_action(&f, &alpha).unwrap();
        let rb = right_action(&f, &beta).unwrap();
        let scale = 1.0 + ra.frobenius_norm() * rb.frobenius_norm();
        let prod = right_action(&f, &f.multiply(&alpha, &beta).unwrap()).unwrap();
        prop_assert!(max_diff(&prod, &matmul(&ra, &rb).unwrap()) <= 1e-12 * scale);
        prop_assert!(max_diff(&right_action(&f, f.unit()).unwrap(), &Tensor::identity(d)) <= 1e-12);
        let recovered = crate::numlin::matvec(&ra, f.unit()).unwrap();
        prop_assert!(vdiff(&recovered, &alpha) <= 1e-12 * (1.0 + vec_norm(&alpha)));
        let (x, y) = (c(0.7, -0.2), c(-1.1, 0.4));
        let combo: Vec<C> = alpha.iter().zip(&beta).map(|(p, q)| p * x + q * y).collect();
        let linear = ra.scale(x).add(&rb.scale(y)).unwrap();
        prop_assert!(max_diff(&right_action(&f, &combo).unwrap(), &linear) <= 1e-12 * scale);
    }

    #[test]
    fn adjoint_of_right_action(seed in any::<u64>(), d in 1usize..7) {
        let (f, _) = random_dagger_structure(seed, d);
        let alpha = random_element(seed, d);
        let conj = conjugate_element(&f, &alpha).unwrap();
        let lhs = adjoint(&right_action(&f, &alpha).unwrap()).unwrap();
        let rhs = right_action(&f, &conj).unwrap();
        prop_assert!(operator_norm_of_diff(&lhs, &rhs) <= 1e-9);
        prop_assert!(vdiff(&conjugate_element(&f, &conj).unwrap(), &alpha) <= 1e-9);
    }

    #[test]
    fn c_star_identity(seed in any::<u64>(), d in 1usize..6) {
        let (f, _) = random_dagger_structure(seed, d);
        let ra = right_action(&f, &random_element(seed, d)).unwrap();
        let n = crate::numlin::operator_norm(&ra, &tol()).unwrap();
        let n2 = crate::numlin::operator_norm(&matmul(&adjoint(&ra).unwrap(), &ra).unwrap(), &tol()).unwrap();
        prop_assert!((n * n - n2).abs() <= 1e-6 * n2.max(1e-300));
    }

    #[test]
    fn speciality_matches_normalization(seed in any::<u64>(), d in 1usize..6) {
        let (f, b) = random_dagger_structure(seed, d);
        let projector_sum = b.vectors().iter().fold(Tensor::zeros(d, d), |acc, v| {
            let outer = Tensor::from_fn(d, d, |i, j| v[i] * v[j].conj());
            acc.add(&outer).unwrap()
        });
        let md = matmul(f.m(), f.delta()).unwrap();
        prop_assert!(operator_norm_of_diff(&md, &projector_sum) <= 1e-9);
        let normalized = b.vectors().iter().all(|v| (vec_norm(v) - 1.0).abs() <= 1e-9);
        prop_assert_eq!(check_axioms(&f, &tol()).unwrap().passed(Axiom::Special), normalized);
    }

    #[test]
    fn cancellable_scalars_and_self_conjugacy(seed in any::<u64>(), d in 2usize..6) {
        let (f, _) = random_dagger_structure(seed, d);
        let ext = extract_copyables(&f, &tol(), seed).unwrap();
        let trivial = FrobeniusStructure::<f64>::trivial();
        for i in 0..d {
            let phi = &ext.copyables[i];
            for j in 0..d {
                let ii = inner(phi, phi).unwrap();
                let ij = inner(phi, &ext.copyables[j]).unwrap();
                let lhs = ii * ii * ij;
                let rhs = ii * ij * ij;
                prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + ii.norm().powi(3)));
            }
            let as_map = Tensor::column(phi);
            let conj = conjugate_morphism(&as_map, &trivial, &f).unwrap();
            prop_assert!(vdiff(&conj.column_vec(0), phi) <= 1e-9);
        }
    }
}

fn operator_norm_of_diff(a: &Tensor<f64>, b: &Tensor<f64>) -> f64 {
    crate::numlin::operator_norm(&a.sub(b).unwrap(), &tol()).unwrap()
}

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinchain_core::densemat::{func_herm, herm_eig, kron, partial_trace, CMatrix, MAX_DIM};
use spinchain_core::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_complex_matrix(dim: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CMatrix::from_fn(dim, |_, _| {
        c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
    })
}

fn random_hermitian(dim: usize, seed: u64) -> CMatrix {
    let m = random_complex_matrix(dim, seed);
    m.add(&m.dagger()).scale(c(0.5, 0.0))
}

#[test]
fn matmul_matches_hand_computed_product() {
    // [[1, i],[2, 0]] · [[0, 1],[1+i, 3]] = [[i−1, 1+3i],[0, 2]]
    let mut a = CMatrix::zeros(2);
    a.set(0, 0, c(1.0, 0.0));
    a.set(0, 1, c(0.0, 1.0));
    a.set(1, 0, c(2.0, 0.0));
    let mut b = CMatrix::zeros(2);
    b.set(0, 1, c(1.0, 0.0));
    b.set(1, 0, c(1.0, 1.0));
    b.set(1, 1, c(3.0, 0.0));
    let p = a.mul(&b);
    assert!((p.get(0, 0) - c(-1.0, 1.0)).norm() < 1e-15);
    assert!((p.get(0, 1) - c(1.0, 3.0)).norm() < 1e-15);
    assert!((p.get(1, 0) - c(0.0, 0.0)).norm() < 1e-15);
    assert!((p.get(1, 1) - c(2.0, 0.0)).norm() < 1e-15);
}

#[test]
fn kron_matches_index_formula() {
    let a = random_complex_matrix(4, 11);
    let b = random_complex_matrix(8, 12);
    let k = kron(&a, &b).unwrap();
    assert_eq!(k.dim(), 32);
    for i in 0..4 {
        for j in 0..4 {
            for p in 0..8 {
                for q in 0..8 {
                    let expect = a.get(i, j) * b.get(p, q);
                    let got = k.get(i * 8 + p, j * 8 + q);
                    assert!((got - expect).norm() < 1e-15);
                }
            }
        }
    }
}

#[test]
fn kron_rejects_results_beyond_capacity() {
    let a = CMatrix::identity(16);
    let b = CMatrix::identity(8);
    match kron(&a, &b) {
        Err(Error::Capacity { dim, max }) => {
            assert_eq!(dim, 128);
            assert_eq!(max, MAX_DIM);
        }
        other => panic!("expected capacity error, got {other:?}"),
    }
}

/// Brute-force partial trace: sum the full matrix entry by entry, assembling
/// indices bit by bit without any shared code path.
fn partial_trace_oracle(m: &CMatrix, n: usize, keep: &[usize]) -> CMatrix {
    let dout = 1usize << keep.len();
    let mut out = CMatrix::zeros(dout);
    for row in 0..m.dim() {
        for col in 0..m.dim() {
            // Traced bits must agree between row and column.
            let mut traced_match = true;
            for q in 0..n {
                if keep.contains(&q) {
                    continue;
                }
                if (row >> q) & 1 != (col >> q) & 1 {
                    traced_match = false;
                    break;
                }
            }
            if !traced_match {
                continue;
            }
            let mut r_out = 0usize;
            let mut c_out = 0usize;
            for (t, &q) in keep.iter().enumerate() {
                r_out |= ((row >> q) & 1) << t;
                c_out |= ((col >> q) & 1) << t;
            }
            out.add_assign_at(r_out, c_out, m.get(row, col));
        }
    }
    out
}

#[test]
fn partial_trace_matches_brute_force_summation() {
    let m = random_complex_matrix(16, 21);
    for keep in [
        vec![0],
        vec![3],
        vec![1, 2],
        vec![0, 3],
        vec![0, 1, 2],
        vec![1, 2, 3],
    ] {
        let got = partial_trace(&m, 4, &keep).unwrap();
        let expect = partial_trace_oracle(&m, 4, &keep);
        assert!(
            got.dist_frobenius(&expect) < 1e-13,
            "keep = {keep:?} disagrees with the oracle"
        );
    }
}

#[test]
fn partial_trace_keep_all_returns_input() {
    let m = random_complex_matrix(8, 22);
    let got = partial_trace(&m, 3, &[0, 1, 2]).unwrap();
    assert!(got.dist_frobenius(&m) < 1e-15);
}

#[test]
fn partial_trace_of_product_recovers_factor() {
    // tr over qubit 1 of B⊗A (little-endian: qubit 0 = A) returns A·tr(B).
    let a = random_complex_matrix(2, 23);
    let b = random_complex_matrix(2, 24);
    let prod = kron(&b, &a).unwrap();
    let back = partial_trace(&prod, 2, &[0]).unwrap();
    let expect = a.scale(b.trace());
    assert!(back.dist_frobenius(&expect) < 1e-14);
}

#[test]
fn partial_trace_validates_keep_set() {
    let m = CMatrix::identity(8);
    assert!(matches!(partial_trace(&m, 3, &[]), Err(Error::Contract(_))));
    assert!(matches!(
        partial_trace(&m, 3, &[1, 1]),
        Err(Error::Contract(_))
    ));
    assert!(matches!(
        partial_trace(&m, 3, &[2, 1]),
        Err(Error::Contract(_))
    ));
    assert!(matches!(partial_trace(&m, 3, &[3]), Err(Error::Index(_))));
    assert!(matches!(
        partial_trace(&m, 2, &[0]),
        Err(Error::DimMismatch(_))
    ));
}

#[test]
fn herm_eig_matches_analytic_two_by_two() {
    // [[a, b·e^{iφ}],[b·e^{−iφ}, d]] has eigenvalues
    // ((a+d) ± √((a−d)² + 4b²))/2 independent of the phase.
    let (a, d, b, phi) = (0.7, -1.3, 0.45, 1.1);
    let mut m = CMatrix::zeros(2);
    m.set(0, 0, c(a, 0.0));
    m.set(1, 1, c(d, 0.0));
    m.set(0, 1, Complex64::from_polar(b, phi));
    m.set(1, 0, Complex64::from_polar(b, -phi));
    let eig = herm_eig(&m).unwrap();
    let disc = ((a - d).powi(2) + 4.0 * b * b).sqrt();
    let lo = (a + d - disc) / 2.0;
    let hi = (a + d + disc) / 2.0;
    assert!((eig.eigenvalues[0] - lo).abs() < 1e-14);
    assert!((eig.eigenvalues[1] - hi).abs() < 1e-14);
}

#[test]
fn herm_eig_reconstructs_random_matrices() {
    for (dim, seed) in [(2usize, 31u64), (4, 32), (8, 33), (16, 34), (64, 35)] {
        let m = random_hermitian(dim, seed);
        let eig = herm_eig(&m).unwrap();
        // Ascending order.
        for w in eig.eigenvalues.windows(2) {
            assert!(w[0] <= w[1] + 1e-12);
        }
        // Columns orthonormal: V†V = I.
        let v = &eig.eigenvectors;
        let gram = v.dagger().mul(v);
        assert!(
            gram.dist_frobenius(&CMatrix::identity(dim)) < 1e-11,
            "dim {dim}: eigenvectors are not orthonormal"
        );
        // Reconstruction V·Λ·V† = A.
        let scaled = CMatrix::from_fn(dim, |i, j| v.get(i, j) * eig.eigenvalues[j]);
        let rebuilt = scaled.mul(&v.dagger());
        let rel = rebuilt.dist_frobenius(&m) / m.frobenius_norm().max(1.0);
        assert!(rel < 1e-12, "dim {dim}: reconstruction error {rel:.3e}");
    }
}

#[test]
fn herm_eig_handles_degenerate_spectra() {
    // diag(1, 1, 0, 0) conjugated by a random unitary (built from another
    // eigendecomposition) keeps eigenvalues {0, 0, 1, 1}.
    let q = herm_eig(&random_hermitian(4, 36)).unwrap().eigenvectors;
    let lam = CMatrix::from_diag(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let m = q.mul(&lam).mul(&q.dagger());
    let eig = herm_eig(&m).unwrap();
    let expect = [0.0, 0.0, 1.0, 1.0];
    for (got, want) in eig.eigenvalues.iter().zip(expect) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn herm_eig_rejects_non_hermitian_input() {
    let mut m = CMatrix::identity(2);
    m.set(0, 1, c(0.5, 0.0)); // m[1][0] stays 0: not Hermitian
    assert!(matches!(herm_eig(&m), Err(Error::Contract(_))));
}

/// 25-term Taylor series of exp(B), summed with explicit term matrices.
fn expm_taylor(b: &CMatrix) -> CMatrix {
    let mut sum = CMatrix::identity(b.dim());
    let mut term = CMatrix::identity(b.dim());
    for k in 1..=25 {
        term = term.mul(b).scale(c(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
    }
    sum
}

#[test]
fn func_herm_exponential_matches_taylor_series() {
    let h = random_hermitian(8, 41);
    let tau = 0.3;
    let u = func_herm(&h, |lambda| Complex64::from_polar(1.0, -lambda * tau)).unwrap();
    let taylor = expm_taylor(&h.scale(c(0.0, -tau)));
    assert!(u.dist_frobenius(&taylor) < 1e-12);
    // And the result is unitary.
    let gram = u.dagger().mul(&u);
    assert!(gram.dist_frobenius(&CMatrix::identity(8)) < 1e-12);
}

#[test]
fn func_herm_identity_map_reproduces_input() {
    let h = random_hermitian(16, 42);
    let back = func_herm(&h, |lambda| c(lambda, 0.0)).unwrap();
    assert!(back.dist_frobenius(&h) < 1e-11);
}

#[test]
fn func_herm_rejects_non_finite_values() {
    // Projector has a zero eigenvalue: log diverges.
    let m = CMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0)]);
    match func_herm(&m, |lambda| c(lambda.ln(), 0.0)) {
        Err(Error::Domain(_)) => {}
        other => panic!("expected domain error, got {other:?}"),
    }
}

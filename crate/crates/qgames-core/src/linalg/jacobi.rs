//! Cyclic Jacobi iterations for complex Hermitian eigenproblems and
//! one-sided Jacobi singular values.

use super::{Complex64, ComplexMatrix, LinAlgError};

const MAX_SWEEPS: usize = 64;
const OFF_TOL: f64 = 1e-15;

/// A 2×2 unitary that diagonalizes the Hermitian block [[app, apq], [apq*, aqq]].
///
/// Returned as (c, s, phase) so the transform is
/// T = [[c, s], [−s·phase, c·phase]] with phase = e^{−iφ}, apq = r·e^{iφ}.
fn rotation(app: f64, aqq: f64, apq: Complex64) -> (f64, f64, Complex64) {
    let r = apq.norm();
    let phase = (apq / r).conj();
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c, phase)
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi sweeps.
///
/// Returns `(V, values)` with `a = V · diag(values) · V†`, eigenvalues sorted
/// ascending and `V` unitary.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>), LinAlgError> {
    if !a.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm();

    if scale > 0.0 {
        let mut converged = false;
        for _sweep in 0..MAX_SWEEPS {
            if off_diagonal_norm(&m) <= OFF_TOL * scale {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m.get(p, q);
                    if apq.norm() == 0.0 {
                        continue;
                    }
                    let (c, s, phase) = rotation(m.get(p, p).re, m.get(q, q).re, apq);
                    // m ← T† m T, v ← v T, applied on the (p,q) plane.
                    for i in 0..n {
                        let mp = m.get(i, p);
                        let mq = m.get(i, q);
                        m.set(i, p, mp * c - mq * s * phase);
                        m.set(i, q, mp * s + mq * c * phase);
                    }
                    let phase_conj = phase.conj();
                    for j in 0..n {
                        let mp = m.get(p, j);
                        let mq = m.get(q, j);
                        m.set(p, j, mp * c - mq * s * phase_conj);
                        m.set(q, j, mp * s + mq * c * phase_conj);
                    }
                    for i in 0..n {
                        let vp = v.get(i, p);
                        let vq = v.get(i, q);
                        v.set(i, p, vp * c - vq * s * phase);
                        v.set(i, q, vp * s + vq * c * phase);
                    }
                }
            }
        }
        if !converged && off_diagonal_norm(&m) > OFF_TOL * scale {
            return Err(LinAlgError::NoConvergence("Jacobi eigenvalue sweeps"));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let values: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mut sorted_v = ComplexMatrix::zeros(n, n);
    let mut sorted_values = Vec::with_capacity(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            sorted_v.set(row, new_col, v.get(row, old_col));
        }
        sorted_values.push(values[old_col]);
    }
    Ok((sorted_v, sorted_values))
}

/// Singular values of a complex matrix by one-sided Jacobi, sorted descending.
///
/// Columns of a working copy are rotated pairwise until mutually orthogonal;
/// the singular values are the final column norms.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>, LinAlgError> {
    let n = a.rows();
    let cols = a.cols();
    let mut w = a.clone();
    let scale: f64 = w.frobenius_norm();

    if scale > 0.0 {
        let mut converged = false;
        for _sweep in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..cols {
                for q in (p + 1)..cols {
                    let mut gpp = 0.0;
                    let mut gqq = 0.0;
                    let mut gpq = Complex64::new(0.0, 0.0);
                    for i in 0..n {
                        let ap = w.get(i, p);
                        let aq = w.get(i, q);
                        gpp += ap.norm_sqr();
                        gqq += aq.norm_sqr();
                        gpq += ap.conj() * aq;
                    }
                    let denom = (gpp * gqq).sqrt();
                    if denom == 0.0 || gpq.norm() <= 1e-14 * denom {
                        continue;
                    }
                    rotated = true;
                    let (c, s, phase) = rotation(gpp, gqq, gpq);
                    for i in 0..n {
                        let ap = w.get(i, p);
                        let aq = w.get(i, q);
                        w.set(i, p, ap * c - aq * s * phase);
                        w.set(i, q, ap * s + aq * c * phase);
                    }
                }
            }
            if !rotated {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(LinAlgError::NoConvergence("one-sided Jacobi sweeps"));
        }
    }

    let mut sigma: Vec<f64> = (0..cols)
        .map(|j| {
            (0..n)
                .map(|i| w.get(i, j).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    sigma.sort_by(|a, b| b.total_cmp(a));
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let entries = (0..n * n)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        ComplexMatrix::new(n, n, entries)
    }

    #[test]
    fn eigen_of_real_diagonal() {
        let a = ComplexMatrix::from_diagonal(&[c(3.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)]);
        let (v, values) = hermitian_eigen(&a).unwrap();
        assert_eq!(values, vec![-1.0, 2.0, 3.0]);
        assert!(v.unitarity_residual() <= 1e-14);
    }

    #[test]
    fn eigen_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &n in &[2usize, 4, 7, 12] {
            let m = random_matrix(&mut rng, n);
            let a = m.add(&m.adjoint()).scaled(c(0.5, 0.0));
            let (v, values) = hermitian_eigen(&a).unwrap();
            let diag: Vec<Complex64> = values.iter().map(|&x| c(x, 0.0)).collect();
            let recon = v
                .matmul(&ComplexMatrix::from_diagonal(&diag))
                .matmul(&v.adjoint());
            assert!(recon.sub(&a).frobenius_norm() <= 1e-12 * a.frobenius_norm().max(1.0));
            let trace: f64 = values.iter().sum();
            assert!((trace - a.trace().re).abs() <= 1e-10);
        }
    }

    #[test]
    fn singular_values_of_diagonal() {
        let a = ComplexMatrix::from_diagonal(&[c(3.0, 0.0), c(-4.0, 0.0)]);
        let sigma = singular_values(&a).unwrap();
        assert!((sigma[0] - 4.0).abs() <= 1e-14);
        assert!((sigma[1] - 3.0).abs() <= 1e-14);
    }

    #[test]
    fn singular_values_match_gram_eigenvalues() {
        // Independent route: σ² must equal the eigenvalues of A·A†.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for &n in &[2usize, 3, 5, 8] {
            let a = random_matrix(&mut rng, n);
            let sigma = singular_values(&a).unwrap();
            let gram = a.matmul(&a.adjoint());
            let (_, mut ev) = hermitian_eigen(&gram).unwrap();
            ev.reverse();
            for (s, e) in sigma.iter().zip(ev.iter()) {
                assert!((s * s - e).abs() <= 1e-10, "σ²={} vs eig={}", s * s, e);
            }
            let total: f64 = sigma.iter().map(|s| s * s).sum();
            assert!((total - a.frobenius_norm().powi(2)).abs() <= 1e-10);
        }
    }

    #[test]
    fn zero_matrix_is_fine() {
        let z = ComplexMatrix::zeros(3, 3);
        let (_, values) = hermitian_eigen(&z).unwrap();
        assert_eq!(values, vec![0.0; 3]);
        assert_eq!(singular_values(&z).unwrap(), vec![0.0; 3]);
    }
}

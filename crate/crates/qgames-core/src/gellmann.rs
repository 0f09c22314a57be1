//! Generalized Gell-Mann generator basis for SU(N) strategies.
//!
//! N²−1 traceless Hermitian matrices normalized to Tr(G_a G_b) = 2δ_ab:
//! symmetric pair matrices, antisymmetric pair matrices, then diagonal
//! matrices. For N = 2 this is exactly (σ_x, σ_y, σ_z).

use crate::linalg::{Complex64, ComplexMatrix};

/// The generator basis for one local dimension.
#[derive(Debug, Clone)]
pub struct StrategyBasis {
    n: usize,
    generators: Vec<ComplexMatrix>,
}

impl StrategyBasis {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "local dimension must be at least 2");
        let mut generators = Vec::with_capacity(n * n - 1);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);

        for j in 0..n {
            for k in (j + 1)..n {
                let mut sym = ComplexMatrix::zeros(n, n);
                sym.set(j, k, one);
                sym.set(k, j, one);
                generators.push(sym);
            }
        }
        for j in 0..n {
            for k in (j + 1)..n {
                let mut asym = ComplexMatrix::zeros(n, n);
                asym.set(j, k, -i);
                asym.set(k, j, i);
                generators.push(asym);
            }
        }
        for l in 1..n {
            let lf = l as f64;
            let scale = (2.0 / (lf * (lf + 1.0))).sqrt();
            let mut diag = ComplexMatrix::zeros(n, n);
            for m in 0..l {
                diag.set(m, m, Complex64::new(scale, 0.0));
            }
            diag.set(l, l, Complex64::new(-lf * scale, 0.0));
            generators.push(diag);
        }

        Self { n, generators }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators, N²−1.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    /// The real linear combination Σ γ_m G_m.
    pub fn combine(&self, gamma: &[f64]) -> ComplexMatrix {
        assert_eq!(gamma.len(), self.len());
        let mut h = ComplexMatrix::zeros(self.n, self.n);
        for (coeff, g) in gamma.iter().zip(&self.generators) {
            if *coeff != 0.0 {
                h = h.add(&g.scaled(Complex64::new(*coeff, 0.0)));
            }
        }
        h
    }

    /// Coefficients of a traceless Hermitian matrix: γ_m = Tr(G_m H)/2.
    pub fn project(&self, h: &ComplexMatrix) -> Vec<f64> {
        self.generators
            .iter()
            .map(|g| g.matmul(h).trace().re / 2.0)
            .collect()
    }
}

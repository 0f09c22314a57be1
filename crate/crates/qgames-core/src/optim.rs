//! Derivative-free local maximization with the Nelder–Mead simplex.
//!
//! Used for best-response search over strategy parameters, where payoff
//! gradients through the matrix exponential are not worth deriving.

/// Nelder–Mead settings; defaults are tuned for the small (≤ 15-dimensional)
/// strategy spaces that show up here.
#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    pub max_iters: usize,
    /// Stop when the simplex f-value spread falls below this.
    pub ftol: f64,
    /// Initial simplex step along each coordinate.
    pub step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iters: 400,
            ftol: 1e-10,
            step: 0.35,
        }
    }
}

/// Result of a local search.
#[derive(Debug, Clone)]
pub struct OptimResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

/// Maximize `f` from `x0` with the Nelder–Mead simplex; returns the best
/// point seen (never worse than the start).
pub fn maximize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    opts: &NelderMeadOptions,
) -> OptimResult {
    let dim = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        -f(x)
    };

    if dim == 0 {
        let value = -eval(x0, &mut evals);
        return OptimResult {
            x: Vec::new(),
            value,
            evals,
        };
    }

    // Simplex of dim+1 vertices, tracking minimization of −f.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let v0 = x0.to_vec();
    let f0 = eval(&v0, &mut evals);
    simplex.push((v0, f0));
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += opts.step;
        let fv = eval(&v, &mut evals);
        simplex.push((v, fv));
    }

    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const RHO: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink

    for _ in 0..opts.max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[dim].1 - simplex[0].1;
        if spread <= opts.ftol {
            break;
        }

        let mut centroid = vec![0.0; dim];
        for (v, _) in simplex.iter().take(dim) {
            for (c, &x) in centroid.iter_mut().zip(v) {
                *c += x;
            }
        }
        for c in centroid.iter_mut() {
            *c /= dim as f64;
        }

        let worst = simplex[dim].clone();
        let reflected: Vec<f64> = centroid
            .iter()
            .zip(&worst.0)
            .map(|(&c, &w)| c + ALPHA * (c - w))
            .collect();
        let f_reflected = eval(&reflected, &mut evals);

        if f_reflected < simplex[0].1 {
            let expanded: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(&c, &w)| c + GAMMA * (c - w))
                .collect();
            let f_expanded = eval(&expanded, &mut evals);
            simplex[dim] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
        } else if f_reflected < simplex[dim - 1].1 {
            simplex[dim] = (reflected, f_reflected);
        } else {
            let contracted: Vec<f64> = if f_reflected < worst.1 {
                centroid
                    .iter()
                    .zip(&reflected)
                    .map(|(&c, &r)| c + RHO * (r - c))
                    .collect()
            } else {
                centroid
                    .iter()
                    .zip(&worst.0)
                    .map(|(&c, &w)| c + RHO * (w - c))
                    .collect()
            };
            let f_contracted = eval(&contracted, &mut evals);
            if f_contracted < worst.1.min(f_reflected) {
                simplex[dim] = (contracted, f_contracted);
            } else {
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let shrunk: Vec<f64> = best
                        .iter()
                        .zip(&vertex.0)
                        .map(|(&b, &v)| b + SIGMA * (v - b))
                        .collect();
                    let fv = eval(&shrunk, &mut evals);
                    *vertex = (shrunk, fv);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    OptimResult {
        x: simplex[0].0.clone(),
        value: -simplex[0].1,
        evals,
    }
}

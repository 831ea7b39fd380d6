use std::f64::consts::PI;

use nalgebra::DMatrix;

/// Real Gauss–Hermite rule for the weight `e^{−x²}`: ascending nodes and
/// positive weights, symmetric about zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Golub–Welsch: eigenvalues of the symmetric Jacobi matrix with off-diagonal
/// `√(k/2)`, then one or two Newton steps on the orthonormal recurrence to
/// bring every node to full precision. Weights come from the Christoffel
/// sum `1/Σₖ pₖ(x)²` over orthonormal polynomials.
pub fn gauss_hermite(count: usize) -> GaussHermite {
    assert!(count > 0, "a quadrature rule needs at least one node");
    let jacobi = DMatrix::from_fn(count, count, |r, c| {
        if r + 1 == c || c + 1 == r {
            (r.max(c) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(f64::total_cmp);

    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = orthonormal_with_derivative(count, *x);
            if dp == 0.0 {
                break;
            }
            let step = p / dp;
            *x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
    }

    // enforce exact ± pairing
    let half = count / 2;
    for k in 0..half {
        let mirrored = 0.5 * (nodes[count - 1 - k] - nodes[k]);
        nodes[k] = -mirrored;
        nodes[count - 1 - k] = mirrored;
    }
    if count % 2 == 1 {
        nodes[half] = 0.0;
    }

    let mut weights: Vec<f64> = nodes.iter().map(|&x| 1.0 / christoffel_sum(count, x)).collect();
    for k in 0..half {
        let w = 0.5 * (weights[k] + weights[count - 1 - k]);
        weights[k] = w;
        weights[count - 1 - k] = w;
    }
    GaussHermite { nodes, weights }
}

// p_n(x) and p_n'(x) for the orthonormal Hermite family, p_n' = √(2n) p_{n−1}
fn orthonormal_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    for k in 0..n {
        let next = x * (2.0 / (k as f64 + 1.0)).sqrt() * cur - (k as f64 / (k as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (cur, (2.0 * n as f64).sqrt() * prev)
}

fn christoffel_sum(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    let mut sum = 0.0;
    for k in 0..n {
        sum += cur * cur;
        let next = x * (2.0 / (k as f64 + 1.0)).sqrt() * cur - (k as f64 / (k as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_rule() {
        let r = gauss_hermite(2);
        let h = 0.5_f64.sqrt();
        assert!((r.nodes[1] - h).abs() <= 1e-15);
        assert_eq!(r.nodes[0], -r.nodes[1]);
        for w in &r.weights {
            assert!((w - PI.sqrt() / 2.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn three_point_rule() {
        let r = gauss_hermite(3);
        let h = 1.5_f64.sqrt();
        assert!((r.nodes[2] - h).abs() <= 1e-15);
        assert_eq!(r.nodes[1], 0.0);
        assert!((r.weights[1] - 2.0 * PI.sqrt() / 3.0).abs() <= 1e-15);
        assert!((r.weights[0] - PI.sqrt() / 6.0).abs() <= 1e-15);
    }

    #[test]
    fn nodes_are_roots_of_hermite_polynomial() {
        for n in [8, 32, 64] {
            let r = gauss_hermite(n);
            for &x in &r.nodes {
                let (p, dp) = orthonormal_with_derivative(n, x);
                // Newton correction is below the node tolerance
                assert!((p / dp).abs() <= 1e-14 * x.abs().max(1.0), "n={n} x={x}");
            }
            assert!(r.weights.iter().all(|w| *w > 0.0));
            let total: f64 = r.weights.iter().sum();
            assert!((total - PI.sqrt()).abs() <= 1e-14);
        }
    }
}

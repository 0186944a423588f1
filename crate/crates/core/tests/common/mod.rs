//! Shared helpers for integration tests: an independent eigensolver oracle,
//! a two-sample KS test, and random object builders.

#![allow(dead_code)]

use bornsim_core::chain::{BranchTree, MeasurementEvent, WitnessModel};
use bornsim_core::hilbert::{CompositeSpace, Operator, StateVector};
use bornsim_core::rng::{complex_gaussian, Stream};
use ndarray::{Array1, Array2};
use num_complex::Complex64;

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix.
/// Returns (eigenvalues, eigenvector columns), unsorted.
pub fn jacobi_symmetric(a: &Array2<f64>) -> (Vec<f64>, Array2<f64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "jacobi needs a square matrix");
    let mut m = a.clone();
    let mut v: Array2<f64> = Array2::eye(n);
    for _sweep in 0..200 {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| m[(p, q)].powi(2))
            .sum();
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let evals = (0..n).map(|i| m[(i, i)]).collect();
    (evals, v)
}

/// Dominant eigenpair of a complex hermitian matrix via the real symmetric
/// embedding `[[X, -Y], [Y, X]]` of `H = X + iY`, solved with Jacobi.
/// Fully independent of the library's power iteration.
pub fn hermitian_dominant_oracle(h: &Array2<Complex64>) -> (f64, Array1<Complex64>) {
    let n = h.nrows();
    let mut m = Array2::zeros((2 * n, 2 * n));
    for i in 0..n {
        for j in 0..n {
            let x = h[(i, j)].re;
            let y = h[(i, j)].im;
            m[(i, j)] = x;
            m[(i, j + n)] = -y;
            m[(i + n, j)] = y;
            m[(i + n, j + n)] = x;
        }
    }
    let (evals, vecs) = jacobi_symmetric(&m);
    let best = evals
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    // Any real eigenvector of the embedding reads out as a phase multiple
    // of the complex eigenvector: (x; y) and its partner (-y; x) both map
    // into the span of x + iy.
    let mut v = Array1::from_elem(n, Complex64::ZERO);
    for i in 0..n {
        v[i] = Complex64::new(vecs[(i, best)], vecs[(i + n, best)]);
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    (evals[best], v.mapv(|z| z / norm))
}

/// Two-sample Kolmogorov-Smirnov test; returns (D, p).
pub fn ks_two_sample(mut a: Vec<f64>, mut b: Vec<f64>) -> (f64, f64) {
    assert!(!a.is_empty() && !b.is_empty());
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let ne = (n * m / (n + m)).sqrt();
    let lambda = (ne + 0.12 + 0.11 / ne) * d;
    (d, ks_survival(lambda))
}

fn ks_survival(lambda: f64) -> f64 {
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=100 {
        let term = 2.0 * sign * (-2.0 * (j as f64 * lambda).powi(2)).exp();
        sum += term;
        if term.abs() < 1e-12 {
            break;
        }
        sign = -sign;
    }
    sum.clamp(0.0, 1.0)
}

/// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(dim: usize, rng: &mut Stream) -> Operator {
    let space = CompositeSpace::single(dim).unwrap();
    loop {
        let mut cols: Vec<Array1<Complex64>> = Vec::with_capacity(dim);
        'outer: for _ in 0..dim {
            let mut v = Array1::from_elem(dim, Complex64::ZERO);
            for z in v.iter_mut() {
                *z = complex_gaussian(rng, 1.0);
            }
            for q in &cols {
                let overlap: Complex64 =
                    q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                for (z, a) in v.iter_mut().zip(q.iter()) {
                    *z -= overlap * a;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                break 'outer; // pathological draw; restart the whole matrix
            }
            cols.push(v.mapv(|z| z / norm));
        }
        if cols.len() < dim {
            continue;
        }
        let mut m = Array2::from_elem((dim, dim), Complex64::ZERO);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..dim {
                m[(i, j)] = col[i];
            }
        }
        if let Ok(u) = Operator::unitary(space.clone(), m) {
            return u;
        }
    }
}

/// Random hermitian PSD matrix `A^dag A` (entries scaled to trace ~ 1).
pub fn random_psd(dim: usize, rng: &mut Stream) -> Operator {
    let mut a = Array2::from_elem((dim, dim), Complex64::ZERO);
    for z in a.iter_mut() {
        *z = complex_gaussian(rng, 1.0);
    }
    let ah = a.t().mapv(|z| z.conj());
    let mut h = ah.dot(&a);
    let trace: f64 = (0..dim).map(|i| h[(i, i)].re).sum();
    h.mapv_inplace(|z| z / trace);
    // Symmetrize the float noise so the hermitian constructor accepts it.
    let ht = h.t().mapv(|z| z.conj());
    let sym = (&h + &ht).mapv(|z| z / 2.0);
    Operator::hermitian(CompositeSpace::single(dim).unwrap(), sym).unwrap()
}

/// A measurement chain over qudit factors: event `e` reads factor `e` in
/// its basis.  When `with_interleaved` is set, each gap gets a random
/// unitary acting only on the factors of *later* events, which commutes
/// exactly with all earlier projectors.
pub fn random_factor_chain(
    factor_dims: &[usize],
    with_interleaved: bool,
    witness: WitnessModel,
    rng: &mut Stream,
) -> BranchTree {
    let space = CompositeSpace::new(factor_dims.to_vec()).unwrap();
    let prep = StateVector::haar_random(space.clone(), rng);
    let events: Vec<MeasurementEvent> = (0..factor_dims.len())
        .map(|f| {
            MeasurementEvent::factor_basis(space.clone(), f, witness, format!("event-{f}"))
                .unwrap()
        })
        .collect();
    let interleaved: Vec<Option<Operator>> = (0..factor_dims.len().saturating_sub(1))
        .map(|slot| {
            if !with_interleaved {
                return None;
            }
            let head_dim: usize = factor_dims[..=slot].iter().product();
            let tail_dims = &factor_dims[slot + 1..];
            let tail_dim: usize = tail_dims.iter().product();
            let head = Operator::identity(CompositeSpace::single(head_dim).unwrap());
            let tail = random_unitary(tail_dim, rng);
            let embedded = head.kron(&tail).unwrap();
            // Re-wrap on the chain's space (same total dimension and layout).
            Some(
                Operator::unitary(space.clone(), embedded.entries().clone())
                    .expect("kron of unitaries is unitary"),
            )
        })
        .collect();
    BranchTree::new(prep, events, interleaved).unwrap()
}

/// Binomial standard deviation of a frequency estimate.
pub fn freq_sigma(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

//! Core hot paths: Monte Carlo trial throughput, path enumeration, the
//! power iteration, and the two-sided closed trace.

use std::f64::consts::FRAC_PI_3;
use std::hint::black_box;

use bornsim_core::chain::WitnessModel;
use bornsim_core::dynamics::{closed_trace, EvolutionSchedule, TwoSidedBoundary};
use bornsim_core::experiments::{product_tree, run_trials, SternGerlachScenario};
use bornsim_core::hilbert::{
    dominant_eigenpair, CompositeSpace, Operator, StateVector,
};
use bornsim_core::rng::{complex_gaussian, stream, Stream};
use bornsim_core::select::SelectionPolicy;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use ndarray::{Array1, Array2};
use num_complex::Complex64;

/// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
fn random_unitary(dim: usize, rng: &mut Stream) -> Operator {
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
                break 'outer;
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
fn random_psd(dim: usize, rng: &mut Stream) -> Operator {
    let mut a = Array2::from_elem((dim, dim), Complex64::ZERO);
    for z in a.iter_mut() {
        *z = complex_gaussian(rng, 1.0);
    }
    let ah = a.t().mapv(|z| z.conj());
    let mut h = ah.dot(&a);
    let trace: f64 = (0..dim).map(|i| h[(i, i)].re).sum();
    h.mapv_inplace(|z| z / trace);
    let ht = h.t().mapv(|z| z.conj());
    let sym = (&h + &ht).mapv(|z| z / 2.0);
    Operator::hermitian(CompositeSpace::single(dim).unwrap(), sym).unwrap()
}

fn bench_run_trials(c: &mut Criterion) {
    let tree = SternGerlachScenario::new(FRAC_PI_3)
        .unwrap()
        .branch_tree()
        .unwrap();
    let policy = SelectionPolicy::surjection_sequential();
    let mut group = c.benchmark_group("run_trials");
    for &n in &[1_000u64, 4_000, 16_000] {
        group.throughput(Throughput::Elements(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| run_trials(black_box(&tree), &policy, n, 7).unwrap());
        });
    }
    group.finish();
}

fn bench_enumerate_paths(c: &mut Criterion) {
    let events = vec![vec![0.5, 0.5]; 4];
    let tree = product_tree(&events, WitnessModel::perfect(1)).unwrap();
    c.bench_function("enumerate_paths/depth4", |b| {
        b.iter(|| black_box(&tree).enumerate_paths().unwrap());
    });
}

fn bench_dominant_eigenpair(c: &mut Criterion) {
    let mut rng = stream(202);
    let h = random_psd(64, &mut rng);
    c.bench_function("dominant_eigenpair/dim64", |b| {
        b.iter(|| dominant_eigenpair(black_box(&h), 1e-10, 10_000).unwrap());
    });
}

fn bench_closed_trace(c: &mut Criterion) {
    let mut rng = stream(303);
    let space = CompositeSpace::single(64).unwrap();
    let steps = vec![
        (random_unitary(64, &mut rng), 1.0),
        (random_unitary(64, &mut rng), 2.0),
    ];
    let schedule = EvolutionSchedule::new(space.clone(), 0.0, steps).unwrap();
    let wave = StateVector::haar_random(space.clone(), &mut rng);
    let conj = StateVector::haar_random(space, &mut rng);
    let boundary = TwoSidedBoundary::unrelated(wave, conj).unwrap();
    c.bench_function("closed_trace/dim64", |b| {
        b.iter(|| closed_trace(black_box(&boundary), &schedule).unwrap());
    });
}

criterion_group!(
    benches,
    bench_run_trials,
    bench_enumerate_paths,
    bench_dominant_eigenpair,
    bench_closed_trace
);
criterion_main!(benches);

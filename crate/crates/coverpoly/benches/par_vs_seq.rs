//! Parallel vs sequential kernels on the hot paths: power expansion with
//! minimization, and the all-pairs WP check. The `parallel` feature is on
//! for this bench; the `*_seq` entry points are the fallback kernels the
//! crate uses when it is disabled.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coverpoly::{
    cover_ideal, find_decomposition, random_decomposed_graph, variable_order, wp_check,
    wp_check_seq, BlockLimits, Graph, MonomialIdeal, VariableOrder,
};

fn c5_ideal() -> (MonomialIdeal, VariableOrder) {
    let g = Graph::from_edges(&[
        ("y1", "y4"),
        ("y4", "y2"),
        ("y2", "y3"),
        ("y3", "y5"),
        ("y5", "y1"),
    ])
    .unwrap();
    let d = find_decomposition(&g).unwrap().unwrap();
    let ord = variable_order(&g, &d).unwrap();
    let j = cover_ideal(&g).unwrap().with_order(ord.clone()).unwrap();
    (j, ord)
}

/// A 14-vertex generated instance with one block of each kind.
fn generated_ideal() -> (MonomialIdeal, VariableOrder) {
    let (g, d) = (0u64..)
        .map(|seed| random_decomposed_graph(seed, BlockLimits::new(1, 1, 1)).unwrap())
        .find(|(g, d)| {
            g.vertex_count() == 14 && !d.five_cycles.is_empty() && !d.four_cycle_edges.is_empty()
        })
        .unwrap();
    let ord = variable_order(&g, &d).unwrap();
    let j = cover_ideal(&g).unwrap().with_order(ord.clone()).unwrap();
    (j, ord)
}

fn bench_power(c: &mut Criterion) {
    let mut group = c.benchmark_group("ideal_power");
    group.sample_size(20);
    let (c5, _) = c5_ideal();
    let (gen, _) = generated_ideal();
    for (name, ideal, k) in [("c5_k4", &c5, 4usize), ("gen14_k3", &gen, 3)] {
        group.bench_with_input(
            BenchmarkId::new("parallel", name),
            &(ideal, k),
            |b, (i, k)| b.iter(|| i.power(*k).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", name),
            &(ideal, k),
            |b, (i, k)| b.iter(|| i.power_seq(*k).unwrap()),
        );
    }
    group.finish();
}

fn bench_wp_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("wp_check");
    group.sample_size(10);
    let (c5, c5_ord) = c5_ideal();
    let (gen, gen_ord) = generated_ideal();
    let cases = [
        ("c5_k4", c5.power(4).unwrap(), c5_ord),
        ("gen14_k2", gen.power(2).unwrap(), gen_ord),
    ];
    for (name, power, ord) in &cases {
        group.bench_with_input(
            BenchmarkId::new("parallel", name),
            &(power, ord),
            |b, (p, o)| b.iter(|| assert!(wp_check(p, o).unwrap().is_ok())),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", name),
            &(power, ord),
            |b, (p, o)| b.iter(|| assert!(wp_check_seq(p, o).unwrap().is_ok())),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_power, bench_wp_check);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use motifclust::engine::{build_motif_graph_approx, build_motif_graph_exact, enumerate_instances};
use motifclust::experiments::{gen_cluster_graph, gen_gnp, ClusterParams};
use motifclust::quantum::NoisyCounter;
use motifclust::spectral::{kmeans, spectral_cluster, spectral_embedding};
use motifclust::{Mode, Motif};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for n in [200, 400] {
        let g = gen_gnp(n, 8.0 / n as f64, false, 1).unwrap();
        for name in ["triangle2", "path3", "clique4a2"] {
            let m = Motif::builtin(name).unwrap();
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| b.iter(|| enumerate_instances(&m, g)));
        }
    }
    group.finish();
}

fn motif_graphs(c: &mut Criterion) {
    let g = gen_gnp(300, 0.03, false, 2).unwrap();
    let m = Motif::builtin("path2").unwrap();
    c.bench_function("motif_graph/exact", |b| b.iter(|| build_motif_graph_exact(&m, &g)));
    c.bench_function("motif_graph/approx", |b| {
        b.iter(|| build_motif_graph_approx(&m, &g, 0.1, 0.01, &NoisyCounter::new(3)).unwrap())
    });
}

fn clustering(c: &mut Criterion) {
    let mut group = c.benchmark_group("cluster");
    group.sample_size(10);
    for n in [250, 1000] {
        let g = gen_cluster_graph(&ClusterParams { n, ..Default::default() }, 4).unwrap().graph;
        group.bench_with_input(BenchmarkId::new("spectral", n), &g, |b, g| {
            b.iter(|| spectral_cluster(g, 5, Mode::Conductance, 0).unwrap())
        });
        let emb = spectral_embedding(&g.induced(&(0..n).filter(|&v| g.degree(v) > 0).collect::<Vec<_>>()), 5, Mode::Conductance)
            .unwrap();
        group.bench_with_input(BenchmarkId::new("kmeans", n), &emb, |b, e| b.iter(|| kmeans(e, 5, 0).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, enumeration, motif_graphs, clustering);
criterion_main!(benches);

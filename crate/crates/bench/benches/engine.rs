//! End-to-end benchmarks over generated corpora.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use searchtopo::anomaly::{detect, ReferenceSpec};
use searchtopo::checks::{run_checks, CheckConfig};
use searchtopo::corpus::InvertedIndex;
use searchtopo::gen::random_corpus;
use searchtopo::graph::DataDirectedGraph;
use searchtopo::relation::ContainmentRelation;
use searchtopo::search::{parse_query, Searcher};
use searchtopo::topology;

fn bench_index_build(c: &mut Criterion) {
    let corpus = random_corpus(200, 2000, 3);
    c.bench_function("index_build_2k_docs", |b| {
        b.iter(|| InvertedIndex::build(&corpus))
    });
}

fn bench_query_eval(c: &mut Criterion) {
    let corpus = random_corpus(200, 2000, 3);
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let query = parse_query("(w000 | w001) & (w002 w003) & w004").unwrap();
    c.bench_function("query_eval_2k_docs", |b| b.iter(|| searcher.eval(&query)));
}

fn bench_relation_build(c: &mut Criterion) {
    let corpus = random_corpus(60, 500, 5);
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let words: Vec<String> = corpus.vocabulary().iter().cloned().collect();
    c.bench_function("relation_build_60_words", |b| {
        b.iter(|| ContainmentRelation::build(&searcher, &words).unwrap())
    });
}

fn bench_topology_generation(c: &mut Criterion) {
    let corpus = random_corpus(12, 200, 7);
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let words: Vec<String> = corpus.vocabulary().iter().cloned().collect();
    let rel = ContainmentRelation::build(&searcher, &words).unwrap();
    c.bench_function("tau_b_12_words", |b| {
        b.iter(|| topology::tau_b(&rel, 16).unwrap())
    });
}

fn bench_graph_build(c: &mut Criterion) {
    let corpus = random_corpus(40, 300, 9);
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let words: Vec<String> = corpus.vocabulary().iter().cloned().collect();
    let rel = ContainmentRelation::build(&searcher, &words).unwrap();
    c.bench_function("ddg_build_40_nodes", |b| {
        b.iter(|| DataDirectedGraph::build(&rel, &words).unwrap())
    });
}

fn bench_anomaly_detect(c: &mut Criterion) {
    let corpus = random_corpus(50, 1000, 11);
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let spec = ReferenceSpec::new(["w00", "w01", "w02", "w03"], 0.4);
    c.bench_function("anomaly_detect_1k_docs", |b| {
        b.iter(|| detect(&searcher, &spec).unwrap())
    });
}

fn bench_check_suite(c: &mut Criterion) {
    c.bench_function("check_suite_small_corpus", |b| {
        b.iter_batched(
            || {
                let corpus = random_corpus(8, 40, 13);
                let index = InvertedIndex::build(&corpus);
                (corpus, index)
            },
            |(corpus, index)| {
                let searcher = Searcher::new(&corpus, &index);
                run_checks(&searcher, &CheckConfig::default()).unwrap()
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_index_build,
    bench_query_eval,
    bench_relation_build,
    bench_topology_generation,
    bench_graph_build,
    bench_anomaly_detect,
    bench_check_suite
);
criterion_main!(benches);

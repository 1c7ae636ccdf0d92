use std::hint::black_box;
use std::path::Path;

use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use herdscope_core::pipeline::score_corpus;
use herdscope_core::{CorpusLoader, Pipeline};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORDS: &[&str] = &[
    "the", "rally", "was", "not", "good", "great", "terrible", "election", "voters", "happy", "angry",
    "campaign", "winning", "@someone", "#WestBengal", "https://t.co/abc", "never", "honest", "lies",
    "development", "promises", "broken", "proud", "today", "crowd",
];

fn synthetic_jsonl(n: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = String::new();
    for i in 0..n {
        let len = rng.gen_range(5..25);
        let text: Vec<&str> = (0..len).map(|_| *WORDS.choose(&mut rng).unwrap()).collect();
        let line = serde_json::json!({
            "tweet_id": format!("t{i}"),
            "author_id": format!("u{}", rng.gen_range(0..500)),
            "timestamp": "2021-03-01T10:00:00Z",
            "text": text.join(" "),
            "mentions": [],
            "hashtags": ["westbengal"],
            "retweet_of": null,
            "follower_count": 100,
        });
        out.push_str(&line.to_string());
        out.push('\n');
    }
    out
}

fn bench_scoring(c: &mut Criterion) {
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/demo/config.json");
    let pipeline = Pipeline::load(&config).expect("demo config");
    let n = 10_000;
    let jsonl = synthetic_jsonl(n);
    let mut loader = CorpusLoader::new("bench");
    loader.load_reader(jsonl.as_bytes(), "bench").unwrap();
    let corpus = loader.finish().corpus;

    let mut group = c.benchmark_group("scoring");
    group.throughput(Throughput::Elements(n as u64));
    group.bench_function("ingest", |b| {
        b.iter(|| {
            let mut loader = CorpusLoader::new("bench");
            loader.load_reader(black_box(jsonl.as_bytes()), "bench").unwrap();
            loader.finish()
        })
    });
    group.bench_function("preprocess", |b| {
        b.iter(|| {
            corpus
                .records
                .iter()
                .map(|r| pipeline.preprocessor.preprocess(r).tokens.len())
                .sum::<usize>()
        })
    });
    group.bench_function("preprocess_and_score", |b| {
        b.iter(|| score_corpus(black_box(&corpus), &pipeline))
    });
    group.finish();
}

criterion_group!(benches, bench_scoring);
criterion_main!(benches);

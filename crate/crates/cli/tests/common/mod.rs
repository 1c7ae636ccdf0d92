#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use herdscope::RunArgs;

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn demo_config() -> PathBuf {
    repo_root().join("data/demo/config.json")
}

pub fn demo_corpus() -> PathBuf {
    repo_root().join("data/demo/corpus.jsonl")
}

pub fn run_args(corpus: &Path, out: &Path) -> RunArgs {
    RunArgs {
        config: demo_config(),
        corpora: vec![corpus.to_path_buf()],
        out: out.to_path_buf(),
        hashtag: None,
    }
}

/// Every regular file in `dir`, by name.
pub fn read_dir_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect()
}

pub fn record(id: &str, author: &str, text: &str, mentions: &[&str], hashtags: &[&str]) -> String {
    serde_json::json!({
        "tweet_id": id,
        "author_id": author,
        "text": text,
        "timestamp": "2021-02-03T12:00:00Z",
        "hashtags": hashtags,
        "mentions": mentions,
        "retweet_of": null,
        "follower_count": 100
    })
    .to_string()
}

pub fn write_corpus(dir: &Path, name: &str, lines: &[String]) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    path
}

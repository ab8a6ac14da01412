// Name compression ratios over the bundled URI corpus, or a file of paths.
//
// cargo run --example corpus_ratio -- [corpus.txt]

use icnlowpan::ratio::{load_corpus, parse_corpus, ratio_report, Elision, BUNDLED_CORPUS};

fn run(path: Option<String>) {
    let names = match path {
        Some(p) => load_corpus(p).unwrap(),
        None => parse_corpus(BUNDLED_CORPUS).unwrap(),
    };
    let report = ratio_report(&names, Elision::Authority).unwrap();
    println!("{} names, {} fall back to TLV", report.names, report.fallback);
    for (pass, s) in [
        ("prefix only", &report.prefix_only),
        ("prefix + nibbles", &report.combined),
    ] {
        println!(
            "  {pass:<17} mean {:.1}%  median {:.1}%",
            100.0 * s.mean,
            100.0 * s.median
        );
        let width = s.histogram.iter().max().copied().unwrap_or(1).max(1);
        for (i, n) in s.histogram.iter().enumerate() {
            println!("    {:>3}%  {:<40} {n}", i * 10, "#".repeat(n * 40 / width));
        }
    }
}

pub fn run_example() {
    run(None);
}

#[allow(dead_code)]
fn main() {
    run(std::env::args().nth(1));
}

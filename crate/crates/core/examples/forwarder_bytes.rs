// Bytes a forwarder puts on the air per request, plain NDN vs ICNLoWPAN.
//
// cargo run --example forwarder_bytes -- [requests]

use icnlowpan::scenario::NameScheme;
use icnlowpan::sim::{run_handshakes, SimConfig, StackMode};

fn run(requests: u64) {
    println!(
        "{:<6} {:<5} {:>10} {:>10} {:>8}",
        "scheme", "hops", "plain-ndn", "icnlowpan", "change"
    );
    for scheme in [NameScheme::Short, NameScheme::Long] {
        for hops in 1..=3 {
            let per_req = |mode| {
                let run = run_handshakes(&SimConfig {
                    mode,
                    hops,
                    requests,
                    scheme: scheme.clone(),
                    ..SimConfig::default()
                })
                .unwrap();
                let fwd: u64 = run.forwarders().iter().map(|m| m.bytes_tx).sum();
                fwd as f64 / (hops as u64 * requests) as f64
            };
            let (plain, icnl) = (per_req(StackMode::PlainNdn), per_req(StackMode::Icnlowpan));
            println!(
                "{:<6} {:<5} {plain:>10.1} {icnl:>10.1} {:>7.1}%",
                scheme.to_string(),
                hops,
                100.0 * (icnl / plain - 1.0)
            );
        }
    }
}

pub fn run_example() {
    run(20);
}

#[allow(dead_code)]
fn main() {
    let requests = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100);
    run(requests);
}

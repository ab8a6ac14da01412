// Consumer reception under bursty cross traffic, plain NDN vs ICNLoWPAN.
//
// cargo run --release --example reliability -- [requests] [seed]

use icnlowpan::scenario::RELIABILITY_REQUEST_INTERVAL_US;
use icnlowpan::sim::{run_handshakes, InterfererParams, SimConfig, StackMode};

fn run(requests: u64, seed: u64) {
    // single hop: the producer answers the consumer directly
    println!("{requests} requests every 300 ms, single hop, seed {seed}");
    println!(
        "{:<10} {:>13} {:>13} {:>13} {:>14}",
        "stack", "producer PRR", "consumer PRR", "satisfied", "airtime/req"
    );
    for mode in [StackMode::PlainNdn, StackMode::Icnlowpan] {
        let config = SimConfig {
            mode,
            hops: 0,
            requests,
            seed,
            interferer: Some(InterfererParams::default()),
            request_interval_us: RELIABILITY_REQUEST_INTERVAL_US,
            ..SimConfig::default()
        };
        let run = run_handshakes(&config).expect("valid config");
        let airtime: u64 = run.metrics.iter().map(|m| m.airtime_us).sum();
        println!(
            "{:<10} {:>12.2}% {:>12.2}% {:>12.2}% {:>11} us",
            mode.to_string(),
            100.0 * run.producer().prr,
            100.0 * run.consumer().prr,
            100.0 * run.satisfaction(),
            airtime / requests
        );
    }
}

pub fn run_example() {
    run(200, 1);
}

#[allow(dead_code)]
fn main() {
    let mut args = std::env::args().skip(1);
    let requests = args.next().and_then(|a| a.parse().ok()).unwrap_or(2000);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    run(requests, seed);
}

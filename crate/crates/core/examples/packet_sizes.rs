// Uncompressed and compressed sizes of the request/response pair.
//
// cargo run --example packet_sizes

use icnlowpan::scenario::{default_cid_table, size_report, NameScheme};

pub fn run_example() {
    let table = default_cid_table();
    for scheme in [NameScheme::Short, NameScheme::Long] {
        let report = size_report(&scheme.sample_name(), &table).unwrap();
        println!("{}", report.name);
        for (kind, m) in [("Interest", &report.interest), ("Data", &report.data)] {
            println!(
                "  {kind:<8} {:>3} B -> {:>2} B body + {} B dispatch ({}), body -{:.1}%, frame -{:.1}%",
                m.uncompressed,
                m.compressed_body,
                m.dispatch,
                m.path,
                100.0 * m.body_saving,
                100.0 * m.frame_saving
            );
        }
    }
    println!(
        "CoAP GET over 6LoWPAN, for comparison: {} B",
        icnlowpan::scenario::COAP_REQUEST_BYTES
    );
}

#[allow(dead_code)]
fn main() {
    run_example();
}

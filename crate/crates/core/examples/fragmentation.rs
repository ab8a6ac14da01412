// Split an oversized datagram into 802.15.4 frames and put it back together,
// fragments arriving out of order.
//
// cargo run --example fragmentation

use icnlowpan::compress::encode_data_uncompressed;
use icnlowpan::frame::{fragment, link_payload_budget, Reassembler, DEFAULT_REASSEMBLY_TIMEOUT_US, LINK_MTU};
use icnlowpan::{Data, Name};

pub fn run_example() {
    let name: Name = "/org/example/camera/3/frame/17".parse().unwrap();
    let data = Data::new(name, vec![0xAB; 250]);
    let datagram = encode_data_uncompressed(&data).unwrap().datagram;
    println!(
        "datagram {} B, link budget {} B",
        datagram.len(),
        link_payload_budget(LINK_MTU)
    );

    let frags = fragment(&datagram, LINK_MTU, 0x0042).unwrap();
    for (i, f) in frags.iter().enumerate() {
        println!(
            "  fragment {i}: {} B, header {}",
            f.len(),
            hex::encode(&f[..5.min(f.len())])
        );
    }

    let mut r: Reassembler<&str> = Reassembler::new(DEFAULT_REASSEMBLY_TIMEOUT_US);
    let mut done = None;
    for f in frags.iter().rev() {
        if let Some(d) = r.accept("neighbour", f, 0).unwrap() {
            done = Some(d);
        }
    }
    assert_eq!(done.as_deref(), Some(&datagram[..]));
    println!("reassembled in reverse order: ok");

    // a lost fragment leaves a partial buffer that times out
    for f in &frags[1..] {
        r.accept("neighbour", f, 0).unwrap();
    }
    let expired = r.expire(DEFAULT_REASSEMBLY_TIMEOUT_US);
    println!("missing first fragment: {} buffer(s) expired", expired.len());
}

#[allow(dead_code)]
fn main() {
    run_example();
}

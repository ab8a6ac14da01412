// Encode and decode NDN Interest and Data packets.
//
// cargo run --example tlv_codec

use icnlowpan::ndn::tlv::put_varnum;
use icnlowpan::{Data, Interest, Name, Packet};

pub fn run_example() {
    let name: Name = "/org/example/temp/1".parse().unwrap();
    let interest = Interest::new(name.clone())
        .with_nonce([0x12, 0x34, 0x56, 0x78])
        .with_lifetime(2000);
    let wire = interest.encode();
    println!("Interest {name}: {} bytes", wire.len());
    println!("  {}", hex::encode(&wire));
    assert_eq!(Interest::decode(&wire).unwrap(), interest);

    let data = Data::new(name.clone(), 2150i32.to_be_bytes().to_vec()).with_freshness(1000);
    let wire = data.encode();
    println!("Data {name}: {} bytes", wire.len());
    println!("  {}", hex::encode(&wire));
    match Packet::decode(&wire).unwrap() {
        Packet::Data(d) => assert_eq!(d, data),
        Packet::Interest(_) => unreachable!(),
    }

    println!("varnum forms:");
    for v in [7u64, 252, 253, 65_535, 65_536, 1 << 32] {
        let mut out = Vec::new();
        put_varnum(&mut out, v);
        println!("  {v:>10} -> {}", hex::encode(out));
    }

    // a truncated packet is an error, not a panic
    let wire = interest.encode();
    println!("truncated: {}", Interest::decode(&wire[..wire.len() - 1]).unwrap_err());
}

#[allow(dead_code)]
fn main() {
    run_example();
}

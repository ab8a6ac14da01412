// Context tables: load prefixes from text, chain several CIDs in one header.
//
// cargo run --example cid_contexts

use icnlowpan::compress::{cid_compress, decode_datagram, encode_interest};
use icnlowpan::{CidTable, Decoded, Interest};

pub fn run_example() {
    let table: CidTable = "\
        # id  prefix
        cid 5  /org/example
        cid 6  /org/example/building/1
        cid 17 /floor/4
    "
    .parse()
    .unwrap();
    print!("{table}");

    for uri in [
        "/org/example/building/1/floor/4/temp",
        "/org/example/lights",
        "/net/other",
    ] {
        let name = uri.parse().unwrap();
        let (chain, residual) = cid_compress(&name, &table);
        let interest = Interest::new(name).with_nonce([1, 2, 3, 4]);
        let enc = encode_interest(&interest, &table, None).unwrap();
        println!(
            "{uri}\n  CIDs {chain:?}, carried {residual}, {} B ({})",
            enc.datagram.len(),
            enc.path
        );
        let Decoded::Interest { interest: got, .. } = decode_datagram(&enc.datagram, &table).unwrap() else {
            unreachable!()
        };
        assert_eq!(got, interest);
    }

    // a receiver without the context cannot decode
    let enc = encode_interest(&Interest::new("/org/example/x".parse().unwrap()), &table, None).unwrap();
    println!(
        "empty table: {}",
        decode_datagram(&enc.datagram, &CidTable::new()).unwrap_err()
    );
}

#[allow(dead_code)]
fn main() {
    run_example();
}

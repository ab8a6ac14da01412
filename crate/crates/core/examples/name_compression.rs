// Nibble-packed names and the bytes they save over a Name TLV.
//
// cargo run --example name_compression

use icnlowpan::compress::{compress_name, decompress_name, name_overhead_saving, Error};
use icnlowpan::Name;

pub fn run_example() {
    for uri in [
        "/org/example/temp/1",
        "/org/example/building/1/floor/4/room/481/temp/1",
        "/a",
        "/sensors/averyverylongcomponentname",
    ] {
        let name: Name = uri.parse().unwrap();
        let tlv = name.encoded_len();
        match compress_name(&name) {
            Ok(c) => {
                let saved = tlv - c.len();
                assert_eq!(saved, name_overhead_saving(name.component_count()));
                assert_eq!(decompress_name(c.as_bytes()).unwrap(), name);
                println!(
                    "{uri}\n  TLV {tlv} B, nibbles {} B, saved {saved} B: {}",
                    c.len(),
                    hex::encode(c.as_bytes())
                );
            }
            Err(e @ Error::ComponentTooLong(_)) => println!("{uri}\n  not compressible ({e}), carried as TLV"),
            Err(e) => panic!("{e}"),
        }
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}

//! Byte-exact comparison against vectors produced by `tests/vectors/oracle.py`.

use icnlowpan::compress::{decode_datagram, encode_data, encode_interest, DataNameSource};
use icnlowpan::frame::{fragment, reassemble, LINK_MTU};
use icnlowpan::scenario::{harness_data, harness_interest, harness_reading, LONG_CID_PREFIX, LONG_PREFIX};
use icnlowpan::{CidTable, CompressionPath, Data, Decoded, HopId, Interest, Name};

fn vector(file: &str) -> Vec<u8> {
    let path = format!("{}/tests/vectors/{file}.hex", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    hex::decode(text.trim()).unwrap()
}

fn long_name() -> Name {
    format!("{LONG_PREFIX}/1").parse().unwrap()
}

fn hop(v: u8) -> HopId {
    HopId::new(v).unwrap()
}

fn decoded_interest(datagram: &[u8], table: &CidTable) -> Interest {
    match decode_datagram(datagram, table).unwrap() {
        Decoded::Interest { interest, .. } => interest,
        other => panic!("expected an Interest, got {other:?}"),
    }
}

#[test]
fn harness_tlvs() {
    let name = long_name();
    assert_eq!(harness_interest(name.clone(), 1).encode(), vector("interest_long.tlv"));
    assert_eq!(harness_data(name, harness_reading(1)).encode(), vector("data_long.tlv"));
}

#[test]
fn long_interest_with_cid_and_hop_id() {
    let table = CidTable::new().with(1, LONG_CID_PREFIX).unwrap();
    let interest = harness_interest(long_name(), 1);
    let enc = encode_interest(&interest, &table, Some(hop(1))).unwrap();
    assert_eq!(enc.datagram, vector("interest_long_cid_hopid"));
    assert_eq!(enc.path, CompressionPath::EnRoute);
    match decode_datagram(&enc.datagram, &table).unwrap() {
        Decoded::Interest {
            interest: got, hop_id, ..
        } => {
            assert_eq!(got, interest);
            assert_eq!(hop_id, Some(hop(1)));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn long_data_by_hop_id() {
    let data = harness_data(long_name(), harness_reading(1));
    let source = DataNameSource::EnRoute {
        hop_id: hop(1),
        interest_components: 10,
    };
    let enc = encode_data(&data, &CidTable::new(), source).unwrap();
    assert_eq!(enc.datagram, vector("data_long_hopid"));
    match decode_datagram(&enc.datagram, &CidTable::new()).unwrap() {
        Decoded::DataByHopId { data: got, hop_id } => {
            assert_eq!(hop_id, hop(1));
            assert!(got.name.is_empty());
            assert_eq!(icnlowpan::compress::restore_data_name(got, &data.name), data);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn short_interest_without_context() {
    let table = CidTable::new();
    let interest = harness_interest("/org/example/temp/1".parse().unwrap(), 1);
    let enc = encode_interest(&interest, &table, None).unwrap();
    assert_eq!(enc.datagram, vector("interest_short_stateless"));
    assert_eq!(decoded_interest(&enc.datagram, &table), interest);
}

#[test]
fn long_component_falls_back_to_tlv_name() {
    let table = CidTable::new();
    let interest = Interest::new("/sensors/averyverylongcomponentname".parse().unwrap())
        .with_nonce([1, 2, 3, 4])
        .with_lifetime(1000);
    let enc = encode_interest(&interest, &table, None).unwrap();
    assert!(enc.name_fallback);
    assert_eq!(enc.datagram, vector("interest_fallback"));
    assert_eq!(decoded_interest(&enc.datagram, &table), interest);
}

#[test]
fn short_data_with_cid() {
    let table = CidTable::new().with(0, "/org").unwrap();
    let data = Data::new("/org/example/temp/7".parse().unwrap(), b"hi".to_vec());
    let enc = encode_data(&data, &table, DataNameSource::Table).unwrap();
    assert_eq!(enc.datagram, vector("data_short_cid"));
    match decode_datagram(&enc.datagram, &table).unwrap() {
        Decoded::Data { data: got, path } => {
            assert_eq!(got, data);
            assert_eq!(path, CompressionPath::Cid);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn selectors_travel_in_extension() {
    let table = CidTable::new();
    let mut interest = Interest::new("/a".parse().unwrap());
    interest.can_be_prefix = true;
    interest.must_be_fresh = true;
    let enc = encode_interest(&interest, &table, None).unwrap();
    assert_eq!(enc.datagram, vector("interest_selectors"));
    assert_eq!(decoded_interest(&enc.datagram, &table), interest);
}

#[test]
fn chained_cids() {
    let table = CidTable::new()
        .with(5, "/org/example")
        .unwrap()
        .with(17, "/building/1")
        .unwrap();
    let interest = Interest::new("/org/example/building/1/temp".parse().unwrap())
        .with_nonce([0xaa, 0xbb, 0xcc, 0xdd])
        .with_lifetime(4000);
    let enc = encode_interest(&interest, &table, None).unwrap();
    assert_eq!(enc.datagram, vector("interest_cid_chain"));
    assert_eq!(decoded_interest(&enc.datagram, &table), interest);
}

#[test]
fn fragments_of_300_bytes() {
    let datagram: Vec<u8> = (0..300u32).map(|i| i as u8).collect();
    let path = format!("{}/tests/vectors/frag_300_tag1234.hex", env!("CARGO_MANIFEST_DIR"));
    let expected: Vec<Vec<u8>> = std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| hex::decode(l).unwrap())
        .collect();
    let frags = fragment(&datagram, LINK_MTU, 0x1234).unwrap();
    assert_eq!(frags, expected);
    assert_eq!(reassemble(&frags).unwrap(), datagram);
}

//! Generators shared by the property and acceptance suites.
#![allow(dead_code)]

use icnlowpan::ndn::RawTlv;
use icnlowpan::{CidTable, Data, Interest, Name};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

/// Component of 1..=15 bytes: always nibble-encodable.
pub fn short_component() -> impl Strategy<Value = Vec<u8>> {
    vec(any::<u8>(), 1..=15)
}

pub fn compressible_name(max_components: usize) -> impl Strategy<Value = Name> {
    vec(short_component(), 0..=max_components).prop_map(Name::from_components)
}

/// Mostly compressible names; some carry an empty or over-long component.
pub fn any_name() -> impl Strategy<Value = Name> {
    let component = prop_oneof![
        8 => short_component(),
        1 => vec(any::<u8>(), 0..=0),
        1 => vec(any::<u8>(), 16..=40),
    ];
    vec(component, 0..=8).prop_map(Name::from_components)
}

/// Non-critical TLVs with distinct types.
fn extras() -> impl Strategy<Value = Vec<RawTlv>> {
    proptest::collection::btree_map(16u64..128, vec(any::<u8>(), 0..6), 0..3)
        .prop_map(|m| m.into_iter().map(|(t, v)| RawTlv::new(t * 2, v)).collect())
}

pub fn interest() -> impl Strategy<Value = Interest> {
    (
        any_name(),
        any::<bool>(),
        any::<bool>(),
        proptest::option::of(any::<[u8; 4]>()),
        proptest::option::of(prop_oneof![Just(4000u64), 0u64..100_000, any::<u64>()]),
        extras(),
    )
        .prop_map(
            |(name, can_be_prefix, must_be_fresh, nonce, lifetime_ms, extra)| Interest {
                name,
                can_be_prefix,
                must_be_fresh,
                nonce,
                lifetime_ms,
                extra,
            },
        )
}

pub fn data() -> impl Strategy<Value = Data> {
    let meta_extra = proptest::option::of(vec(any::<u8>(), 0..3))
        .prop_map(|ct| ct.map(|v| vec![RawTlv::new(0x18, v)]).unwrap_or_default());
    (
        any_name(),
        proptest::option::of(0u64..1_000_000),
        meta_extra,
        vec(any::<u8>(), 0..40),
        vec(any::<u8>(), 0..6),
        vec(any::<u8>(), 0..8),
        extras(),
    )
        .prop_map(
            |(name, meta_freshness_ms, meta_extra, content, sig_info, sig_value, extra)| Data {
                name,
                meta_freshness_ms,
                meta_extra,
                content,
                sig_info,
                sig_value,
                extra,
            },
        )
}

/// Table of contexts drawn from prefixes of `name`, plus unrelated ones.
pub fn table_for(name: &Name, picks: &[(u8, usize)]) -> CidTable {
    let mut table = CidTable::new();
    for &(id, len) in picks {
        let prefix = if name.is_empty() {
            Name::from_components(["unrelated"])
        } else {
            name.prefix(1 + len % name.component_count())
        };
        // id or prefix already taken: skip
        let _ = table.insert(id & 0x7F, prefix);
    }
    table
}

pub fn cid_picks() -> impl Strategy<Value = Vec<(u8, usize)>> {
    vec((0u8..128, 0usize..16), 0..4)
}

/// Draws `n` values from `strategy` with a fixed-seed runner.
pub fn sample<S: Strategy>(strategy: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..n)
        .map(|_| strategy.new_tree(&mut runner).expect("strategy").current())
        .collect()
}

use icnlowpan::compress::{decode_datagram, encode_data, encode_interest, restore_data_name, DataNameSource};
use icnlowpan::{CompressionPath, Decoded, HopId};

/// Encodes and decodes `interest`; returns the path taken.
pub fn interest_round_trip(
    interest: &Interest,
    table: &CidTable,
    hop_id: Option<HopId>,
) -> Result<CompressionPath, String> {
    let enc = encode_interest(interest, table, hop_id).map_err(|e| e.to_string())?;
    match decode_datagram(&enc.datagram, table).map_err(|e| e.to_string())? {
        Decoded::Interest {
            interest: got,
            hop_id: got_hop,
            path,
        } => {
            if &got != interest {
                return Err(format!("{got:?} != {interest:?}"));
            }
            if path != CompressionPath::Uncompressed && got_hop != hop_id {
                return Err(format!("HopID {got_hop:?} != {hop_id:?}"));
            }
            Ok(path)
        }
        other => Err(format!("decoded as {other:?}")),
    }
}

/// Encodes and decodes `data`, restoring an elided name from its prefix of
/// `interest_components` components when sent en route.
pub fn data_round_trip(data: &Data, table: &CidTable, source: DataNameSource) -> Result<CompressionPath, String> {
    let enc = encode_data(data, table, source).map_err(|e| e.to_string())?;
    let (got, path) = match decode_datagram(&enc.datagram, table).map_err(|e| e.to_string())? {
        Decoded::Data { data, path } => (data, path),
        Decoded::DataByHopId {
            data: suffix_only,
            hop_id,
        } => {
            let DataNameSource::EnRoute {
                hop_id: sent,
                interest_components,
            } = source
            else {
                return Err("HopID on a table-compressed Data".into());
            };
            if hop_id != sent {
                return Err(format!("HopID {hop_id} != {sent}"));
            }
            let prefix = data.name.prefix(interest_components);
            (restore_data_name(suffix_only, &prefix), CompressionPath::EnRoute)
        }
        other => return Err(format!("decoded as {other:?}")),
    };
    if &got != data {
        return Err(format!("{got:?} != {data:?}"));
    }
    Ok(path)
}

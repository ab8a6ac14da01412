// Walk one handshake through two forwarders by hand, showing how each hop
// swaps HopIDs so the Data can travel without its name.
//
// cargo run --example en_route_hopids

use icnlowpan::compress::{
    decode_datagram, encode_data, encode_interest, restore_data_name, DataNameSource, Face, Pit,
};
use icnlowpan::scenario::{default_cid_table, harness_data, harness_interest, NameScheme};
use icnlowpan::Decoded;

pub fn run_example() {
    let table = default_cid_table();
    let name = NameScheme::Long.sample_name();
    let interest = harness_interest(name.clone(), 1);
    // consumer, two forwarders, producer
    let mut pits: Vec<Pit> = (0..4).map(|i| Pit::new(64, i)).collect();

    pits[0].interest_inbound(Face::App, None, &name, 4_000_000).unwrap();
    let mut hop = pits[0].interest_outbound(&name).unwrap();
    for (node, pit) in pits.iter_mut().enumerate().skip(1) {
        let wire = encode_interest(&interest, &table, Some(hop)).unwrap().datagram;
        println!("Interest {} -> {}: {:>2} B, HopID {hop}", node - 1, node, wire.len());
        let Decoded::Interest {
            interest: got, hop_id, ..
        } = decode_datagram(&wire, &table).unwrap()
        else {
            unreachable!()
        };
        pit.interest_inbound(Face::Node(node as u16 - 1), hop_id, &got.name, 4_000_000)
            .unwrap();
        if node < 3 {
            hop = pit.interest_outbound(&got.name).unwrap();
        }
    }

    let data = harness_data(name.clone(), 2103);
    let sat = pits[3].data_outbound(&data.name).unwrap();
    let mut hop = sat.entry.in_records[0].hid_in.unwrap();
    let mut suffix = sat.suffix;
    for node in (0..3).rev() {
        let source = DataNameSource::EnRoute {
            hop_id: hop,
            interest_components: data.name.component_count() - suffix.component_count(),
        };
        let wire = encode_data(&data, &table, source).unwrap().datagram;
        println!("Data     {} -> {}: {:>2} B, HopID {hop}", node + 1, node, wire.len());
        let Decoded::DataByHopId { data: got, hop_id } = decode_datagram(&wire, &table).unwrap() else {
            unreachable!()
        };
        let sat = pits[node].data_inbound_swap(hop_id, &got.name).unwrap();
        suffix = sat.suffix.clone();
        if node > 0 {
            hop = sat.entry.in_records[0].hid_in.unwrap();
        } else {
            let restored = restore_data_name(got, &sat.entry.name);
            assert_eq!(restored, data);
            println!("consumer restored {}", restored.name);
        }
    }
    assert!(pits.iter().all(Pit::is_empty));
}

#[allow(dead_code)]
fn main() {
    run_example();
}

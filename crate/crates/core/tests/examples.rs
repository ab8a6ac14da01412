//! Every example runs to completion.

mod tlv_codec {
    include!("../examples/tlv_codec.rs");
}

#[test]
fn example_tlv_codec() {
    tlv_codec::run_example();
}

mod name_compression {
    include!("../examples/name_compression.rs");
}

#[test]
fn example_name_compression() {
    name_compression::run_example();
}

mod cid_contexts {
    include!("../examples/cid_contexts.rs");
}

#[test]
fn example_cid_contexts() {
    cid_contexts::run_example();
}

mod packet_sizes {
    include!("../examples/packet_sizes.rs");
}

#[test]
fn example_packet_sizes() {
    packet_sizes::run_example();
}

mod fragmentation {
    include!("../examples/fragmentation.rs");
}

#[test]
fn example_fragmentation() {
    fragmentation::run_example();
}

mod en_route_hopids {
    include!("../examples/en_route_hopids.rs");
}

#[test]
fn example_en_route_hopids() {
    en_route_hopids::run_example();
}

mod forwarder_bytes {
    include!("../examples/forwarder_bytes.rs");
}

#[test]
fn example_forwarder_bytes() {
    forwarder_bytes::run_example();
}

mod corpus_ratio {
    include!("../examples/corpus_ratio.rs");
}

#[test]
fn example_corpus_ratio() {
    corpus_ratio::run_example();
}

mod reliability {
    include!("../examples/reliability.rs");
}

#[test]
fn example_reliability() {
    reliability::run_example();
}

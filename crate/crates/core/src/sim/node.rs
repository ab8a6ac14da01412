//! Per-node protocol logic. A node is a pure state machine: the engine feeds
//! it events and carries out the actions it returns.

use std::fmt;

use serde::Serialize;

use crate::compress::{
    decode_datagram, encode_data, encode_interest, encode_interest_uncompressed, restore_data_name, CidTable,
    DataNameSource, Decoded, Encoded, Face, HopId, InboundOutcome, Pit, Satisfied, DEFAULT_PIT_CAPACITY,
};
use crate::frame::{fragment, link_payload_budget, Reassembler, LINK_MTU};
use crate::ndn::{Data, Interest, Name, Packet, DEFAULT_INTEREST_LIFETIME_MS};
use crate::scenario::{harness_data, harness_interest, harness_reading, NameScheme};

pub type NodeId = u16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Consumer,
    Forwarder,
    Producer,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Consumer => "consumer",
            Role::Forwarder => "forwarder",
            Role::Producer => "producer",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StackMode {
    /// NDN TLV straight into the MAC payload, no adaptation layer.
    PlainNdn,
    Icnlowpan,
}

impl fmt::Display for StackMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StackMode::PlainNdn => "plain-ndn",
            StackMode::Icnlowpan => "icnlowpan",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Timer {
    PitExpiry,
    Reassembly { from: NodeId, tag: u16 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    AppRequest { id: u64 },
    FrameArrival { from: NodeId, payload: Vec<u8> },
    TimerExpiry(Timer),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Transmit { to: NodeId, payload: Vec<u8> },
    SetTimer { at_us: u64, timer: Timer },
}

/// Longest-prefix next-hop table.
#[derive(Debug, Clone, Default)]
pub struct Fib {
    routes: Vec<(Name, NodeId)>,
}

impl Fib {
    pub fn insert(&mut self, prefix: Name, next_hop: NodeId) {
        self.routes.retain(|(p, _)| *p != prefix);
        self.routes.push((prefix, next_hop));
    }

    pub fn lookup(&self, name: &Name) -> Option<NodeId> {
        self.routes
            .iter()
            .filter(|(p, _)| p.is_prefix_of(name))
            .max_by_key(|(p, _)| p.component_count())
            .map(|&(_, hop)| hop)
    }
}

/// Messages the node gave up on, by reason.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DropCounters {
    pub decode_error: u64,
    pub reassembly_error: u64,
    pub reassembly_timeout: u64,
    pub unknown_hop_id: u64,
    pub no_pit_match: u64,
    pub no_route: u64,
    pub oversize: u64,
    pub pit_error: u64,
    pub encode_error: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NodeCounters {
    pub interests_sent: u64,
    pub interests_received: u64,
    pub interests_aggregated: u64,
    pub data_sent: u64,
    pub data_received: u64,
    /// Data handed to the local application (consumer only).
    pub delivered: u64,
    pub pit_expired: u64,
    /// Messages sent through the uncompressed dispatch or without a HopID
    /// because a stateful step failed.
    pub fallbacks: u64,
    pub drops: DropCounters,
}

#[derive(Debug)]
pub struct Node {
    pub id: NodeId,
    pub role: Role,
    pub mode: StackMode,
    pub fib: Fib,
    pub pit: Pit,
    pub cid_table: CidTable,
    reassembly: Reassembler<NodeId>,
    scheme: NameScheme,
    /// Producers append a per-request component to the Data name.
    data_suffix: bool,
    next_tag: u16,
    pub counters: NodeCounters,
    /// Data names produced (producer) or delivered (consumer), if recording.
    pub name_log: Option<Vec<Name>>,
}

impl Node {
    pub fn new(
        id: NodeId,
        role: Role,
        mode: StackMode,
        cid_table: CidTable,
        scheme: NameScheme,
        pit_seed: u64,
    ) -> Self {
        Node {
            id,
            role,
            mode,
            fib: Fib::default(),
            pit: Pit::new(DEFAULT_PIT_CAPACITY, pit_seed),
            cid_table,
            reassembly: Reassembler::default(),
            scheme,
            data_suffix: false,
            next_tag: 0,
            counters: NodeCounters::default(),
            name_log: None,
        }
    }

    pub fn with_data_suffix(mut self, on: bool) -> Self {
        self.data_suffix = on;
        self
    }

    pub fn with_name_log(mut self) -> Self {
        self.name_log = Some(Vec::new());
        self
    }

    pub fn step(&mut self, now_us: u64, event: Event) -> Vec<Action> {
        let mut out = Vec::new();
        match event {
            Event::AppRequest { id } => self.on_app_request(now_us, id, &mut out),
            Event::FrameArrival { from, payload } => self.on_frame(now_us, from, &payload, &mut out),
            Event::TimerExpiry(Timer::PitExpiry) => {
                self.counters.pit_expired += self.pit.expire(now_us).len() as u64;
            }
            Event::TimerExpiry(Timer::Reassembly { from, tag }) => {
                if self.reassembly.expire_one(from, tag, now_us) {
                    self.counters.drops.reassembly_timeout += 1;
                }
            }
        }
        out
    }

    fn on_app_request(&mut self, now_us: u64, id: u64, out: &mut Vec<Action>) {
        let interest = harness_interest(self.scheme.name_for(id), id);
        self.interest_arrived(now_us, Face::App, None, interest, out);
    }

    fn on_frame(&mut self, now_us: u64, from: NodeId, payload: &[u8], out: &mut Vec<Action>) {
        match self.mode {
            StackMode::PlainNdn => match Packet::decode(payload) {
                Ok(Packet::Interest(i)) => self.interest_arrived(now_us, Face::Node(from), None, i, out),
                Ok(Packet::Data(d)) => self.data_arrived(d, None, out),
                Err(_) => self.counters.drops.decode_error += 1,
            },
            StackMode::Icnlowpan => {
                let pending = self.reassembly.pending();
                let datagram = match self.reassembly.accept(from, payload, now_us) {
                    Ok(Some(d)) => d,
                    Ok(None) => {
                        if self.reassembly.pending() > pending {
                            if let Ok((Some(h), _)) = crate::frame::FragHeader::split(payload) {
                                out.push(Action::SetTimer {
                                    at_us: now_us + self.reassembly.timeout_us(),
                                    timer: Timer::Reassembly {
                                        from,
                                        tag: h.datagram_tag,
                                    },
                                });
                            }
                        }
                        return;
                    }
                    Err(_) => {
                        self.counters.drops.reassembly_error += 1;
                        return;
                    }
                };
                match decode_datagram(&datagram, &self.cid_table) {
                    Ok(Decoded::Interest { interest, hop_id, .. }) => {
                        self.interest_arrived(now_us, Face::Node(from), hop_id, interest, out)
                    }
                    Ok(Decoded::Data { data, .. }) => self.data_arrived(data, None, out),
                    Ok(Decoded::DataByHopId { data, hop_id }) => self.data_arrived(data, Some(hop_id), out),
                    Err(_) => self.counters.drops.decode_error += 1,
                }
            }
        }
    }

    fn interest_arrived(
        &mut self,
        now_us: u64,
        face: Face,
        hop_id: Option<HopId>,
        interest: Interest,
        out: &mut Vec<Action>,
    ) {
        if face != Face::App {
            self.counters.interests_received += 1;
        }
        if self.role == Role::Producer {
            self.produce(face, hop_id, &interest, out);
            return;
        }
        let lifetime_us = interest.lifetime_ms.unwrap_or(DEFAULT_INTEREST_LIFETIME_MS) * 1000;
        let expiry_us = now_us + lifetime_us;
        match self.pit.interest_inbound(face, hop_id, &interest.name, expiry_us) {
            Ok(InboundOutcome::Created) => {}
            Ok(_) => {
                self.counters.interests_aggregated += 1;
                return;
            }
            Err(_) => {
                self.counters.drops.pit_error += 1;
                return;
            }
        }
        out.push(Action::SetTimer {
            at_us: expiry_us,
            timer: Timer::PitExpiry,
        });
        let Some(next) = self.fib.lookup(&interest.name) else {
            self.counters.drops.no_route += 1;
            self.pit.remove(&interest.name);
            return;
        };
        let datagram = match self.mode {
            StackMode::PlainNdn => Ok(interest.encode()),
            StackMode::Icnlowpan => {
                let hid_out = self.pit.interest_outbound(&interest.name).ok();
                let encoded = encode_interest(&interest, &self.cid_table, hid_out)
                    .or_else(|_| encode_interest_uncompressed(&interest));
                self.note_fallback(hid_out.is_none(), &encoded);
                encoded.map(|e| e.datagram)
            }
        };
        match datagram {
            Ok(d) => {
                if self.transmit(next, d, out) {
                    self.counters.interests_sent += 1;
                }
            }
            Err(_) => self.counters.drops.encode_error += 1,
        }
    }

    fn produce(&mut self, face: Face, hop_id: Option<HopId>, interest: &Interest, out: &mut Vec<Action>) {
        let Face::Node(to) = face else { return };
        let mut name = interest.name.clone();
        if self.data_suffix {
            let last = name.components().last().cloned().unwrap_or_default();
            let mut v = b"v".to_vec();
            v.extend(last.iter().take(14));
            name.push(v);
        }
        let id = interest.nonce.map(u32::from_be_bytes).unwrap_or(0) as u64;
        let data = harness_data(name, harness_reading(id));
        if let Some(log) = &mut self.name_log {
            log.push(data.name.clone());
        }
        let source = match hop_id {
            Some(hop_id) => DataNameSource::EnRoute {
                hop_id,
                interest_components: interest.name.component_count(),
            },
            None => DataNameSource::Table,
        };
        self.send_data(to, &data, source, out);
    }

    fn data_arrived(&mut self, data: Data, hop_id: Option<HopId>, out: &mut Vec<Action>) {
        self.counters.data_received += 1;
        let satisfied = match hop_id {
            Some(h) => self.pit.data_inbound_swap(h, &data.name),
            None => self.pit.data_outbound(&data.name),
        };
        let Satisfied { entry, suffix } = match satisfied {
            Ok(s) => s,
            Err(crate::compress::Error::UnknownHopId(_)) => {
                self.counters.drops.unknown_hop_id += 1;
                return;
            }
            Err(_) => {
                self.counters.drops.no_pit_match += 1;
                return;
            }
        };
        let data = match hop_id {
            Some(_) => restore_data_name(data, &entry.name),
            None => data,
        };
        debug_assert_eq!(data.name, entry.name.join(&suffix));
        for record in &entry.in_records {
            match record.face {
                Face::App => {
                    self.counters.delivered += 1;
                    if let Some(log) = &mut self.name_log {
                        log.push(data.name.clone());
                    }
                }
                Face::Node(to) => {
                    let source = match (self.mode, record.hid_in) {
                        (StackMode::Icnlowpan, Some(hop_id)) => DataNameSource::EnRoute {
                            hop_id,
                            interest_components: entry.name.component_count(),
                        },
                        _ => DataNameSource::Table,
                    };
                    self.send_data(to, &data, source, out);
                }
            }
        }
    }

    fn send_data(&mut self, to: NodeId, data: &Data, source: DataNameSource, out: &mut Vec<Action>) {
        let datagram = match self.mode {
            StackMode::PlainNdn => Ok(data.encode()),
            StackMode::Icnlowpan => {
                let encoded = encode_data(data, &self.cid_table, source);
                self.note_fallback(false, &encoded);
                encoded.map(|e| e.datagram)
            }
        };
        match datagram {
            Ok(d) => {
                if self.transmit(to, d, out) {
                    self.counters.data_sent += 1;
                }
            }
            Err(_) => self.counters.drops.encode_error += 1,
        }
    }

    fn note_fallback(&mut self, missing_hop_id: bool, encoded: &Result<Encoded, crate::compress::Error>) {
        let uncompressed = matches!(encoded, Ok(e) if e.path == crate::compress::CompressionPath::Uncompressed);
        if missing_hop_id || uncompressed {
            self.counters.fallbacks += 1;
        }
    }

    /// Queues a datagram as one or more link frames. Returns false if it
    /// could not be sent.
    fn transmit(&mut self, to: NodeId, datagram: Vec<u8>, out: &mut Vec<Action>) -> bool {
        match self.mode {
            StackMode::PlainNdn => {
                if datagram.len() > link_payload_budget(LINK_MTU) {
                    self.counters.drops.oversize += 1;
                    return false;
                }
                out.push(Action::Transmit { to, payload: datagram });
            }
            StackMode::Icnlowpan => {
                let tag = self.next_tag;
                self.next_tag = self.next_tag.wrapping_add(1);
                match fragment(&datagram, LINK_MTU, tag) {
                    Ok(frames) => out.extend(frames.into_iter().map(|payload| Action::Transmit { to, payload })),
                    Err(_) => {
                        self.counters.drops.oversize += 1;
                        return false;
                    }
                }
            }
        }
        true
    }
}

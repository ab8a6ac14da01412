//! Deterministic discrete-event simulation of a line of nodes: one consumer,
//! `hops` forwarders and one producer.

mod engine;
mod link;
mod node;

use std::io::Write;

use serde::Serialize;

pub use engine::{Engine, RadioStats};
pub use link::{
    collision_check, InterfererParams, InterfererSchedule, Interval, LinkModel, PER_BYTE_AIRTIME_US, PREAMBLE_LEN,
};
pub use node::{Action, DropCounters, Event, Fib, Node, NodeCounters, NodeId, Role, StackMode, Timer};

use crate::compress::CidTable;
use crate::ndn::Name;
use crate::scenario::{default_cid_table, NameScheme, REQUEST_INTERVAL_US};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration: {0}")]
    Config(String),
    #[error("writing metrics: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    /// Forwarders between consumer and producer.
    pub hops: usize,
    pub requests: u64,
    pub scheme: NameScheme,
    pub mode: StackMode,
    pub seed: u64,
    pub base_loss: f64,
    pub interferer: Option<InterfererParams>,
    pub request_interval_us: u64,
    pub cid_table: CidTable,
    /// Producer appends a component, so the Data name is longer than the
    /// Interest name.
    pub data_suffix: bool,
    pub check_invariants: bool,
    pub record_names: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            hops: 1,
            requests: 1,
            scheme: NameScheme::Long,
            mode: StackMode::Icnlowpan,
            seed: DEFAULT_SEED,
            base_loss: 0.0,
            interferer: None,
            request_interval_us: REQUEST_INTERVAL_US,
            cid_table: default_cid_table(),
            data_suffix: false,
            check_invariants: false,
            record_names: false,
        }
    }
}

impl SimConfig {
    fn validate(&self) -> Result<(), Error> {
        if self.hops + 2 > NodeId::MAX as usize {
            return Err(Error::Config(format!("{} forwarders is too many", self.hops)));
        }
        if !(0.0..=1.0).contains(&self.base_loss) {
            return Err(Error::Config(format!("loss {} is not a probability", self.base_loss)));
        }
        if self.request_interval_us == 0 {
            return Err(Error::Config("request interval must be positive".into()));
        }
        Ok(())
    }

    /// Simulated time after the last request plus one Interest lifetime.
    pub fn horizon_us(&self) -> u64 {
        self.requests * self.request_interval_us + 5_000_000
    }
}

/// One metrics record per node and run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeMetrics {
    pub mode: StackMode,
    pub scheme: String,
    pub hops: usize,
    pub requests: u64,
    pub seed: u64,
    pub loss: f64,
    pub interferer: bool,
    pub node: NodeId,
    pub role: Role,
    pub frames_tx: u64,
    pub bytes_tx: u64,
    pub frames_rx: u64,
    pub bytes_rx: u64,
    pub frames_offered: u64,
    pub bytes_offered: u64,
    pub prr: f64,
    pub airtime_us: u64,
    #[serde(flatten)]
    pub counters: NodeCounters,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub config: SimConfig,
    pub metrics: Vec<NodeMetrics>,
    pub invariant_violations: u64,
    /// Producer-side Data names, when recording.
    pub produced: Vec<Name>,
    /// Consumer-side reconstructed Data names, when recording.
    pub delivered: Vec<Name>,
}

impl RunResult {
    pub fn consumer(&self) -> &NodeMetrics {
        self.metrics.first().expect("topology has a consumer")
    }

    pub fn producer(&self) -> &NodeMetrics {
        self.metrics.last().expect("topology has a producer")
    }

    pub fn forwarders(&self) -> &[NodeMetrics] {
        &self.metrics[1..self.metrics.len() - 1]
    }

    /// Requests answered at the consumer, over requests issued.
    pub fn satisfaction(&self) -> f64 {
        if self.config.requests == 0 {
            return 0.0;
        }
        self.consumer().counters.delivered as f64 / self.config.requests as f64
    }

    pub fn total_bytes_tx(&self) -> u64 {
        self.metrics.iter().map(|m| m.bytes_tx).sum()
    }

    /// Writes one JSON object per line.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<(), Error> {
        for m in &self.metrics {
            serde_json::to_writer(&mut out, m).map_err(std::io::Error::from)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Builds the line `consumer, forwarders, producer` with every node routing
/// the whole namespace towards the producer.
pub fn line_topology(config: &SimConfig) -> Vec<Node> {
    let last = config.hops + 1;
    (0..=last)
        .map(|i| {
            let role = match i {
                0 => Role::Consumer,
                i if i == last => Role::Producer,
                _ => Role::Forwarder,
            };
            let pit_seed = config.seed.wrapping_mul(0x100).wrapping_add(i as u64);
            let mut node = Node::new(
                i as NodeId,
                role,
                config.mode,
                config.cid_table.clone(),
                config.scheme.clone(),
                pit_seed,
            )
            .with_data_suffix(config.data_suffix);
            if config.record_names && role != Role::Forwarder {
                node = node.with_name_log();
            }
            if role != Role::Producer {
                node.fib.insert(Name::new(), (i + 1) as NodeId);
            }
            node
        })
        .collect()
}

/// Runs `config.requests` request/response handshakes over a line topology.
pub fn run_handshakes(config: &SimConfig) -> Result<RunResult, Error> {
    config.validate()?;
    let link = LinkModel::with_loss(config.base_loss);
    let interferer = match &config.interferer {
        Some(params) => InterfererSchedule::generate(params, &link, config.seed ^ 0x1F7E_44E5, config.horizon_us()),
        None => InterfererSchedule::none(),
    };
    let mut engine =
        Engine::new(line_topology(config), link, interferer, config.seed).check_invariants(config.check_invariants);
    for id in 0..config.requests {
        engine.schedule(id * config.request_interval_us, 0, Event::AppRequest { id });
    }
    engine.run();

    let metrics = engine
        .nodes
        .iter()
        .zip(&engine.radio)
        .map(|(node, radio)| NodeMetrics {
            mode: config.mode,
            scheme: config.scheme.to_string(),
            hops: config.hops,
            requests: config.requests,
            seed: config.seed,
            loss: config.base_loss,
            interferer: config.interferer.is_some(),
            node: node.id,
            role: node.role,
            frames_tx: radio.frames_tx,
            bytes_tx: radio.bytes_tx,
            frames_rx: radio.frames_rx,
            bytes_rx: radio.bytes_rx,
            frames_offered: radio.frames_offered,
            bytes_offered: radio.bytes_offered,
            prr: radio.prr(),
            airtime_us: radio.airtime_us,
            counters: node.counters.clone(),
        })
        .collect();
    let take_log = |i: usize| engine.nodes[i].name_log.clone().unwrap_or_default();
    Ok(RunResult {
        config: config.clone(),
        metrics,
        invariant_violations: engine.invariant_violations,
        produced: take_log(engine.nodes.len() - 1),
        delivered: take_log(0),
    })
}

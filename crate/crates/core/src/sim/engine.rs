use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::link::{collision_check, InterfererSchedule, Interval, LinkModel};
use super::node::{Action, Event, Node, NodeId};

#[derive(Debug)]
struct Scheduled {
    at_us: u64,
    seq: u64,
    node: NodeId,
    event: Event,
}

impl PartialEq for Scheduled {
    fn eq(&self, other: &Self) -> bool {
        (self.at_us, self.seq) == (other.at_us, other.seq)
    }
}

impl Eq for Scheduled {}

impl PartialOrd for Scheduled {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scheduled {
    // reversed: BinaryHeap pops the earliest event first
    fn cmp(&self, other: &Self) -> Ordering {
        (other.at_us, other.seq).cmp(&(self.at_us, self.seq))
    }
}

/// Radio counters of one node.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RadioStats {
    pub frames_tx: u64,
    /// Full frame octets, MAC header and FCS included.
    pub bytes_tx: u64,
    pub airtime_us: u64,
    /// Frames other nodes addressed to this one.
    pub frames_offered: u64,
    pub bytes_offered: u64,
    pub frames_rx: u64,
    pub bytes_rx: u64,
}

impl RadioStats {
    pub fn prr(&self) -> f64 {
        if self.frames_offered == 0 {
            0.0
        } else {
            self.frames_rx as f64 / self.frames_offered as f64
        }
    }
}

/// Virtual-time event loop over a set of nodes sharing one channel model.
#[derive(Debug)]
pub struct Engine {
    pub nodes: Vec<Node>,
    pub radio: Vec<RadioStats>,
    link: LinkModel,
    interferer: InterfererSchedule,
    rng: ChaCha8Rng,
    queue: BinaryHeap<Scheduled>,
    seq: u64,
    busy_until: Vec<u64>,
    now_us: u64,
    check_invariants: bool,
    pub invariant_violations: u64,
}

impl Engine {
    pub fn new(nodes: Vec<Node>, link: LinkModel, interferer: InterfererSchedule, seed: u64) -> Self {
        let n = nodes.len();
        Engine {
            nodes,
            radio: vec![RadioStats::default(); n],
            link,
            interferer,
            rng: ChaCha8Rng::seed_from_u64(seed),
            queue: BinaryHeap::new(),
            seq: 0,
            busy_until: vec![0; n],
            now_us: 0,
            check_invariants: false,
            invariant_violations: 0,
        }
    }

    /// Verifies after every event that the stepped node's live outbound
    /// HopIDs are pairwise distinct.
    pub fn check_invariants(mut self, on: bool) -> Self {
        self.check_invariants = on;
        self
    }

    pub fn now_us(&self) -> u64 {
        self.now_us
    }

    pub fn schedule(&mut self, at_us: u64, node: NodeId, event: Event) {
        self.seq += 1;
        self.queue.push(Scheduled {
            at_us,
            seq: self.seq,
            node,
            event,
        });
    }

    /// Processes events until the queue drains.
    pub fn run(&mut self) {
        while let Some(s) = self.queue.pop() {
            self.now_us = s.at_us;
            let idx = s.node as usize;
            let actions = self.nodes[idx].step(s.at_us, s.event);
            if self.check_invariants && !self.nodes[idx].pit.hid_out_consistent() {
                self.invariant_violations += 1;
            }
            for action in actions {
                self.apply(s.node, action);
            }
        }
    }

    fn apply(&mut self, from: NodeId, action: Action) {
        match action {
            Action::SetTimer { at_us, timer } => self.schedule(at_us, from, Event::TimerExpiry(timer)),
            Action::Transmit { to, payload } => {
                let frame_len = LinkModel::frame_len(payload.len()) as u64;
                let airtime = self.link.airtime_us(frame_len as usize);
                let start = self.now_us.max(self.busy_until[from as usize]);
                let end = start + airtime;
                self.busy_until[from as usize] = end;

                let tx = &mut self.radio[from as usize];
                tx.frames_tx += 1;
                tx.bytes_tx += frame_len;
                tx.airtime_us += airtime;
                let rx = &mut self.radio[to as usize];
                rx.frames_offered += 1;
                rx.bytes_offered += frame_len;

                let lost = collision_check(
                    Interval { start, end },
                    &self.interferer,
                    self.link.base_loss,
                    &mut self.rng,
                );
                if !lost {
                    let rx = &mut self.radio[to as usize];
                    rx.frames_rx += 1;
                    rx.bytes_rx += frame_len;
                    self.schedule(end, to, Event::FrameArrival { from, payload });
                }
            }
        }
    }
}

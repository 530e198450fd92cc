//! Random-access techniques on one shared channel: pure ALOHA, slotted
//! ALOHA, 1-persistent CSMA and CSMA/CA with optional RTS/CTS.
//!
//! In infinite-population mode every packet is its own station and the
//! arrival intensity is steered so that new plus retransmitted attempts
//! track the configured G (see [`LoadController`]). In finite mode each
//! station serves its own FIFO queue and only the head-of-line packet
//! contends.

use std::collections::{HashMap, VecDeque};

use crate::des::rng::streams;
use crate::des::{Channel, Event, EventKind, Kernel, Outcome, Process, RandomStream, TxId};
use crate::error::Result;
use crate::technique::Technique;

use super::config::{RetransmitDelay, SimConfig};

type PacketId = u64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Action {
    /// Generate a packet. In finite mode the event's station owns it. In
    /// infinite mode this is a candidate, kept with probability `λ(t)/G`.
    NewArrival,
    /// First access, or a re-sense after a CSMA/CA backoff.
    Access(PacketId),
    /// Retransmission timer after a collision.
    Retransmit(PacketId),
    /// Slotted ALOHA: transmit at this boundary.
    SlotStart(PacketId),
    /// 1-persistent CSMA: waiters transmit if the medium now senses idle.
    ReleaseWaiters,
    EndTx(TxId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Data,
    Rts,
    /// CTS + data + ACK following a successful RTS.
    Reservation,
}

impl Phase {
    fn name(self) -> &'static str {
        match self {
            Phase::Data => "data",
            Phase::Rts => "rts",
            Phase::Reservation => "reservation",
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Packet {
    arrival: f64,
    station: u64,
}

#[derive(Debug, Clone, Copy)]
struct TxInfo {
    packet: PacketId,
    phase: Phase,
    duration: f64,
}

/// Closed-loop arrival intensity for infinite-population runs.
///
/// New packets arrive at `G - r`, where `r` estimates the current
/// retransmission rate as pending retransmissions divided by their mean
/// delay. The estimate is a function of state, so it reacts at once: a
/// measured-rate average lags the backlog, and an ALOHA backlog that grows
/// past its unstable equilibrium never drains. The floor keeps the source
/// alive when the backlog alone exceeds `G`.
#[derive(Debug, Clone)]
pub struct LoadController {
    target: f64,
    mean_retx_delay: f64,
    pending: u64,
}

impl LoadController {
    const FLOOR: f64 = 1e-3;

    pub fn new(target: f64, mean_retx_delay: f64) -> Self {
        Self { target, mean_retx_delay, pending: 0 }
    }

    pub fn target(&self) -> f64 {
        self.target
    }

    pub fn retransmission_rate(&self) -> f64 {
        self.pending as f64 / self.mean_retx_delay
    }

    pub fn arrival_rate(&self) -> f64 {
        (self.target - self.retransmission_rate()).max(self.target * Self::FLOOR)
    }

    pub fn pending(&self) -> u64 {
        self.pending
    }

    pub fn on_scheduled(&mut self) {
        self.pending += 1;
    }

    pub fn on_fired(&mut self) {
        self.pending -= 1;
    }
}

struct Station {
    queue: VecDeque<PacketId>,
    active: bool,
    arrivals: RandomStream,
    backoff: RandomStream,
}

pub struct ContentionSim {
    cfg: SimConfig,
    channel: Channel,
    packets: HashMap<PacketId, Packet>,
    txs: HashMap<TxId, TxInfo>,
    next_packet: PacketId,
    waiting: Vec<PacketId>,
    controller: Option<LoadController>,
    stations: Vec<Station>,
    arrivals: RandomStream,
    retransmit: RandomStream,
    backoff: RandomStream,
}

impl ContentionSim {
    pub fn new(cfg: &SimConfig) -> Self {
        let seed = cfg.seed;
        let stations = match cfg.stations() {
            Some(n) => (0..u64::from(n))
                .map(|s| Station {
                    queue: VecDeque::new(),
                    active: false,
                    arrivals: RandomStream::new(seed, streams::STATION_ARRIVALS + s),
                    backoff: RandomStream::new(seed, streams::STATION_BACKOFF + s),
                })
                .collect(),
            None => Vec::new(),
        };
        Self {
            cfg: cfg.clone(),
            channel: Channel::new(cfg.norm_prop_delay_a),
            packets: HashMap::new(),
            txs: HashMap::new(),
            next_packet: 0,
            waiting: Vec::new(),
            controller: stations
                .is_empty()
                .then(|| LoadController::new(cfg.offered_load_g, cfg.retrans_window_k / 2.0)),
            stations,
            arrivals: RandomStream::new(seed, streams::ARRIVALS),
            retransmit: RandomStream::new(seed, streams::RETRANSMIT),
            backoff: RandomStream::new(seed, streams::BACKOFF),
        }
    }

    fn finite(&self) -> bool {
        !self.stations.is_empty()
    }

    fn per_station_rate(&self) -> f64 {
        self.cfg.offered_load_g / self.stations.len() as f64
    }

    fn schedule_arrival(&mut self, k: &mut Kernel<Action>, station: u64) -> Result<()> {
        let now = k.now();
        let dt = if self.finite() {
            let rate = self.per_station_rate();
            self.stations[station as usize].arrivals.exponential(rate)
        } else {
            self.arrivals.exponential(self.cfg.offered_load_g)
        };
        k.queue.schedule(now + dt, EventKind::Arrival, station, Action::NewArrival)?;
        Ok(())
    }

    fn on_arrival(&mut self, k: &mut Kernel<Action>, station: u64) -> Result<()> {
        if let Some(c) = &self.controller {
            let keep = c.arrival_rate() / c.target();
            if self.arrivals.uniform() >= keep {
                return self.schedule_arrival(k, station);
            }
        }
        let now = k.now();
        let pid = self.next_packet;
        self.next_packet += 1;
        let owner = if self.finite() { station } else { pid };
        self.packets.insert(pid, Packet { arrival: now, station: owner });
        k.trace.record(now, EventKind::Arrival, owner, || format!("pkt={pid}"));
        if self.finite() {
            let st = &mut self.stations[station as usize];
            st.queue.push_back(pid);
            if !st.active {
                st.active = true;
                k.collector.record_access();
                self.access(k, pid)?;
            }
        } else {
            k.collector.record_access();
            self.access(k, pid)?;
        }
        self.schedule_arrival(k, station)
    }

    fn station_of(&self, pid: PacketId) -> u64 {
        self.packets[&pid].station
    }

    fn access(&mut self, k: &mut Kernel<Action>, pid: PacketId) -> Result<()> {
        let now = k.now();
        let station = self.station_of(pid);
        match self.cfg.technique {
            Technique::PureAloha => self.transmit(k, pid, Phase::Data),
            Technique::SlottedAloha => {
                let slot = self.cfg.data_time();
                let boundary = (now / slot).ceil() * slot;
                k.queue.schedule(boundary, EventKind::SlotBoundary, station, Action::SlotStart(pid))?;
                Ok(())
            }
            Technique::Csma1p => {
                let busy = self.channel.sensed_busy(now);
                k.trace.record(now, EventKind::Sense, station, || {
                    format!("pkt={pid} {}", if busy { "busy" } else { "idle" })
                });
                if busy {
                    self.waiting.push(pid);
                    Ok(())
                } else {
                    self.transmit(k, pid, Phase::Data)
                }
            }
            Technique::CsmaCa => {
                let busy = self.channel.sensed_busy(now);
                k.trace.record(now, EventKind::Sense, station, || {
                    format!("pkt={pid} {}", if busy { "busy" } else { "idle" })
                });
                if busy {
                    let w = u64::from(self.cfg.backoff_window_slots);
                    let slots = self.backoff_stream(station).uniform_int(w);
                    let wait = slots as f64 * self.cfg.backoff_slot_time;
                    k.queue.schedule(now + wait, EventKind::Sense, station, Action::Access(pid))?;
                    Ok(())
                } else if self.cfg.rts_cts_enabled {
                    self.transmit(k, pid, Phase::Rts)
                } else {
                    self.transmit(k, pid, Phase::Data)
                }
            }
            Technique::Tdma | Technique::Fdma => unreachable!("scheduled techniques do not contend"),
        }
    }

    fn backoff_stream(&mut self, station: u64) -> &mut RandomStream {
        if self.finite() {
            &mut self.stations[station as usize].backoff
        } else {
            &mut self.backoff
        }
    }

    fn retransmit_stream(&mut self, station: u64) -> &mut RandomStream {
        if self.finite() {
            &mut self.stations[station as usize].backoff
        } else {
            &mut self.retransmit
        }
    }

    fn transmit(&mut self, k: &mut Kernel<Action>, pid: PacketId, phase: Phase) -> Result<()> {
        let now = k.now();
        let station = self.station_of(pid);
        let duration = match phase {
            Phase::Data => self.cfg.data_time(),
            Phase::Rts => self.cfg.rts_time,
            Phase::Reservation => self.cfg.cts_time + self.cfg.data_time() + self.cfg.ack_time,
        };
        let id = self.channel.transmit(station, now, duration);
        self.txs.insert(id, TxInfo { packet: pid, phase, duration });
        if phase != Phase::Reservation {
            k.collector.record_attempt();
        }
        k.trace.record(now, EventKind::StartTx, station, || {
            format!("tx={} pkt={pid} phase={} dur={duration}", id.0, phase.name())
        });
        k.queue.schedule(now + duration, EventKind::EndTx, station, Action::EndTx(id))?;
        Ok(())
    }

    fn on_end_tx(&mut self, k: &mut Kernel<Action>, id: TxId) -> Result<()> {
        let now = k.now();
        let (outcome, record) = self.channel.resolve(id);
        let info = self.txs.remove(&id).expect("unknown transmission");
        let pid = info.packet;
        let station = record.station;
        k.trace.record(now, EventKind::EndTx, station, || {
            let o = if outcome == Outcome::Success { "success" } else { "collided" };
            format!("tx={} pkt={pid} phase={} start={} {o}", id.0, info.phase.name(), record.start)
        });
        if self.cfg.technique == Technique::Csma1p {
            let at = record.end + self.channel.staleness();
            k.queue.schedule(at.max(now), EventKind::Sense, u64::MAX, Action::ReleaseWaiters)?;
        }
        match (info.phase, outcome) {
            (Phase::Rts, Outcome::Success) => self.transmit(k, pid, Phase::Reservation)?,
            (Phase::Data | Phase::Reservation, Outcome::Success) => {
                let packet = self.packets.remove(&pid).expect("unknown packet");
                k.collector.record_success(now, packet.arrival, self.cfg.data_time());
                if self.finite() {
                    self.next_head_of_line(k, station)?;
                }
            }
            (phase, Outcome::Collided) => {
                k.collector.record_collision(now, info.duration, phase == Phase::Rts);
                let window = self.cfg.retrans_window_k;
                let mode = self.cfg.retransmit_delay;
                let s = self.retransmit_stream(station);
                let delay = match mode {
                    RetransmitDelay::Uniform => s.uniform_open_closed(window),
                    RetransmitDelay::Exponential => s.exponential(2.0 / window),
                };
                k.queue.schedule(now + delay, EventKind::Timer, station, Action::Retransmit(pid))?;
                if let Some(c) = self.controller.as_mut() {
                    c.on_scheduled();
                }
            }
        }
        self.channel.prune(now);
        Ok(())
    }

    fn next_head_of_line(&mut self, k: &mut Kernel<Action>, station: u64) -> Result<()> {
        let st = &mut self.stations[station as usize];
        st.queue.pop_front();
        match st.queue.front().copied() {
            Some(next) => {
                k.collector.record_access();
                self.access(k, next)
            }
            None => {
                st.active = false;
                Ok(())
            }
        }
    }

    fn release_waiters(&mut self, k: &mut Kernel<Action>) -> Result<()> {
        let now = k.now();
        if self.waiting.is_empty() || self.channel.sensed_busy(now) {
            return Ok(());
        }
        let waiters = std::mem::take(&mut self.waiting);
        k.trace.record(now, EventKind::Sense, u64::MAX, || format!("release n={}", waiters.len()));
        for pid in waiters {
            self.transmit(k, pid, Phase::Data)?;
        }
        Ok(())
    }
}

impl Process for ContentionSim {
    type Payload = Action;

    fn init(&mut self, k: &mut Kernel<Action>) -> Result<()> {
        if self.finite() {
            for s in 0..self.stations.len() as u64 {
                self.schedule_arrival(k, s)?;
            }
            Ok(())
        } else {
            self.schedule_arrival(k, 0)
        }
    }

    fn handle(&mut self, ev: Event<Action>, k: &mut Kernel<Action>) -> Result<()> {
        match ev.payload {
            Action::NewArrival => self.on_arrival(k, ev.station),
            Action::Access(pid) => self.access(k, pid),
            Action::Retransmit(pid) => {
                k.trace.record(k.now(), EventKind::Timer, ev.station, || format!("retransmit pkt={pid}"));
                k.collector.record_access();
                if let Some(c) = self.controller.as_mut() {
                    c.on_fired();
                }
                self.access(k, pid)
            }
            Action::SlotStart(pid) => self.transmit(k, pid, Phase::Data),
            Action::ReleaseWaiters => self.release_waiters(k),
            Action::EndTx(id) => self.on_end_tx(k, id),
        }
    }
}

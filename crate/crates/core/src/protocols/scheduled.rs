//! Collision-free scheduled access: TDMA and FDMA.
//!
//! `N` stations each receive Poisson arrivals at `G/N` and serve their own
//! FIFO queue. Under TDMA a station owns one slot of length `L/C` in every
//! frame of `N` slots. Under FDMA it owns a sub-channel with `1/N` of the
//! rate, so one packet takes `N·L/C`.

use std::collections::{HashMap, VecDeque};

use crate::des::rng::streams;
use crate::des::{Channel, Event, EventKind, Kernel, Outcome, Process, RandomStream, TxId};
use crate::error::{Error, Result};
use crate::technique::Technique;

use super::config::SimConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Action {
    NewArrival,
    /// TDMA: the station's slot in frame `k` begins.
    SlotStart(u64),
    EndTx(TxId),
}

struct Station {
    queue: VecDeque<f64>,
    busy: bool,
    arrivals: RandomStream,
}

pub struct ScheduledSim {
    technique: Technique,
    rate: f64,
    slot: f64,
    n: u64,
    /// One shared channel for TDMA, one per station for FDMA.
    channels: Vec<Channel>,
    stations: Vec<Station>,
    txs: HashMap<(u64, TxId), f64>,
}

impl ScheduledSim {
    pub fn new(cfg: &SimConfig) -> Result<Self> {
        let technique = cfg.technique;
        if !technique.is_scheduled() {
            return Err(Error::InvalidParameter(format!("{technique} is not a scheduled technique")));
        }
        let n = u64::from(cfg.stations().expect("scheduled techniques always have stations"));
        let channels = match technique {
            Technique::Tdma => vec![Channel::new(0.0)],
            _ => (0..n).map(|_| Channel::new(0.0)).collect(),
        };
        Ok(Self {
            technique,
            rate: cfg.offered_load_g / n as f64,
            slot: cfg.data_time(),
            n,
            channels,
            stations: (0..n)
                .map(|s| Station {
                    queue: VecDeque::new(),
                    busy: false,
                    arrivals: RandomStream::new(cfg.seed, streams::STATION_ARRIVALS + s),
                })
                .collect(),
            txs: HashMap::new(),
        })
    }

    fn frame(&self) -> f64 {
        self.n as f64 * self.slot
    }

    /// Start of station `s`'s slot in frame `k`.
    fn slot_time(&self, s: u64, k: u64) -> f64 {
        s as f64 * self.slot + k as f64 * self.frame()
    }

    /// First frame whose slot for `s` starts at or after `t`.
    fn next_frame(&self, s: u64, t: f64) -> u64 {
        let mut k = ((t - s as f64 * self.slot) / self.frame()).ceil().max(0.0) as u64;
        while k > 0 && self.slot_time(s, k - 1) >= t {
            k -= 1;
        }
        while self.slot_time(s, k) < t {
            k += 1;
        }
        k
    }

    fn channel_index(&self, s: u64) -> usize {
        if self.technique == Technique::Tdma {
            0
        } else {
            s as usize
        }
    }

    fn schedule_arrival(&mut self, k: &mut Kernel<Action>, s: u64) -> Result<()> {
        let dt = self.stations[s as usize].arrivals.exponential(self.rate);
        k.queue.schedule(k.now() + dt, EventKind::Arrival, s, Action::NewArrival)?;
        Ok(())
    }

    fn serve_next(&mut self, k: &mut Kernel<Action>, s: u64, after: f64) -> Result<()> {
        if self.stations[s as usize].queue.is_empty() {
            self.stations[s as usize].busy = false;
            return Ok(());
        }
        self.stations[s as usize].busy = true;
        match self.technique {
            Technique::Tdma => {
                let f = self.next_frame(s, after);
                k.queue.schedule(self.slot_time(s, f), EventKind::SlotBoundary, s, Action::SlotStart(f))?;
                Ok(())
            }
            _ => self.transmit(k, s),
        }
    }

    fn transmit(&mut self, k: &mut Kernel<Action>, s: u64) -> Result<()> {
        let now = k.now();
        let duration = match self.technique {
            Technique::Tdma => self.slot,
            _ => self.frame(),
        };
        let arrival = *self.stations[s as usize].queue.front().expect("queue checked non-empty");
        let ch = self.channel_index(s);
        let id = self.channels[ch].transmit(s, now, duration);
        self.txs.insert((ch as u64, id), arrival);
        k.collector.record_attempt();
        k.trace.record(now, EventKind::StartTx, s, || format!("tx={} dur={duration}", id.0));
        k.queue.schedule(now + duration, EventKind::EndTx, s, Action::EndTx(id))?;
        Ok(())
    }

    fn on_end_tx(&mut self, k: &mut Kernel<Action>, s: u64, id: TxId) -> Result<()> {
        let now = k.now();
        let ch = self.channel_index(s);
        let (outcome, record) = self.channels[ch].resolve(id);
        let arrival = self.txs.remove(&(ch as u64, id)).expect("unknown transmission");
        k.trace.record(now, EventKind::EndTx, s, || format!("tx={} start={} success", id.0, record.start));
        match outcome {
            Outcome::Success => k.collector.record_success(now, arrival, self.slot),
            // Scheduled access never overlaps; counted so a bug would show.
            Outcome::Collided => k.collector.record_collision(now, record.end - record.start, false),
        }
        self.channels[ch].prune(now);
        self.stations[s as usize].queue.pop_front();
        self.serve_next(k, s, now)
    }
}

impl Process for ScheduledSim {
    type Payload = Action;

    fn init(&mut self, k: &mut Kernel<Action>) -> Result<()> {
        for s in 0..self.n {
            self.schedule_arrival(k, s)?;
        }
        Ok(())
    }

    fn handle(&mut self, ev: Event<Action>, k: &mut Kernel<Action>) -> Result<()> {
        let s = ev.station;
        match ev.payload {
            Action::NewArrival => {
                let now = k.now();
                k.trace.record(now, EventKind::Arrival, s, String::new);
                k.collector.record_access();
                self.stations[s as usize].queue.push_back(now);
                if !self.stations[s as usize].busy {
                    self.serve_next(k, s, now)?;
                }
                self.schedule_arrival(k, s)
            }
            Action::SlotStart(_) => self.transmit(k, s),
            Action::EndTx(id) => self.on_end_tx(k, s, id),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn own_slot_lookup() {
        let cfg = SimConfig { n_stations: Some(4), ..SimConfig::new(Technique::Tdma, 0.5) };
        let sim = ScheduledSim::new(&cfg).unwrap();
        assert_eq!(sim.next_frame(2, 0.0), 0);
        assert_eq!(sim.next_frame(2, 2.0), 0);
        assert_eq!(sim.next_frame(2, 2.5), 1);
        assert_eq!(sim.slot_time(2, 1), 6.0);
        assert_eq!(sim.next_frame(0, 4.0), 1);
    }

    #[test]
    fn rejects_random_access() {
        assert!(ScheduledSim::new(&SimConfig::new(Technique::PureAloha, 0.5)).is_err());
    }
}

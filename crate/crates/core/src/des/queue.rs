use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};

/// Virtual time in packet-transmission-time units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct SimTime(pub f64);

impl SimTime {
    pub const ZERO: SimTime = SimTime(0.0);

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for SimTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Arrival,
    StartTx,
    EndTx,
    Sense,
    Timer,
    SlotBoundary,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::Arrival => "arrival",
            EventKind::StartTx => "start_tx",
            EventKind::EndTx => "end_tx",
            EventKind::Sense => "sense",
            EventKind::Timer => "timer",
            EventKind::SlotBoundary => "slot_boundary",
        }
    }
}

/// A scheduled event. `payload` carries protocol-specific state.
#[derive(Debug, Clone)]
pub struct Event<P> {
    pub time: SimTime,
    pub seq: u64,
    pub kind: EventKind,
    pub station: u64,
    pub payload: P,
}

// BinaryHeap is a max-heap: invert so the earliest (time, seq) pops first.
impl<P> Ord for Event<P> {
    fn cmp(&self, other: &Self) -> Ordering {
        other.time.0.total_cmp(&self.time.0).then_with(|| other.seq.cmp(&self.seq))
    }
}

impl<P> PartialOrd for Event<P> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<P> PartialEq for Event<P> {
    fn eq(&self, other: &Self) -> bool {
        self.seq == other.seq
    }
}

impl<P> Eq for Event<P> {}

/// Future-event list with a monotone clock. Ties in time pop in insertion
/// order.
#[derive(Debug)]
pub struct EventQueue<P> {
    heap: BinaryHeap<Event<P>>,
    clock: f64,
    next_seq: u64,
}

impl<P> Default for EventQueue<P> {
    fn default() -> Self {
        Self::new()
    }
}

impl<P> EventQueue<P> {
    pub fn new() -> Self {
        Self { heap: BinaryHeap::new(), clock: 0.0, next_seq: 0 }
    }

    pub fn now(&self) -> f64 {
        self.clock
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn schedule(&mut self, time: f64, kind: EventKind, station: u64, payload: P) -> Result<u64> {
        if time.is_nan() || time < self.clock {
            return Err(Error::EventInPast { time, clock: self.clock });
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.heap.push(Event { time: SimTime(time), seq, kind, station, payload });
        Ok(seq)
    }

    pub fn peek_time(&self) -> Option<f64> {
        self.heap.peek().map(|e| e.time.0)
    }

    pub fn pop(&mut self) -> Option<Event<P>> {
        let ev = self.heap.pop()?;
        debug_assert!(ev.time.0 >= self.clock);
        self.clock = ev.time.0;
        Some(ev)
    }
}

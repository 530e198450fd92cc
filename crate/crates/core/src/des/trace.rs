use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::io;

use super::queue::EventKind;

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub time: f64,
    pub kind: EventKind,
    pub station: u64,
    pub detail: String,
}

/// Optional event log. When disabled, `record` never builds the detail
/// string.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    enabled: bool,
    records: Vec<TraceRecord>,
}

impl Trace {
    pub fn new(enabled: bool) -> Self {
        Self { enabled, records: Vec::new() }
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn record(&mut self, time: f64, kind: EventKind, station: u64, detail: impl FnOnce() -> String) {
        if self.enabled {
            self.records.push(TraceRecord { time, kind, station, detail: detail() });
        }
    }

    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// `time<TAB>kind<TAB>station<TAB>detail`, one event per line. Times use
    /// the shortest representation that round-trips.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", r.time, r.kind.name(), r.station, r.detail);
        }
        out
    }

    pub fn write_to(&self, mut w: impl io::Write) -> io::Result<()> {
        w.write_all(self.to_text().as_bytes())
    }

    /// Hash over every record, bit-exact on times.
    pub fn digest(&self) -> u64 {
        let mut h = DefaultHasher::new();
        for r in &self.records {
            r.time.to_bits().hash(&mut h);
            r.kind.hash(&mut h);
            r.station.hash(&mut h);
            r.detail.hash(&mut h);
        }
        h.finish()
    }
}

//! Shared-medium collision bookkeeping.
//!
//! Transmissions occupy half-open intervals `[start, end)`. A transmission
//! succeeds iff no other transmission overlaps any instant of its interval;
//! every member of an overlapping set is destroyed. Carrier sense is stale
//! by the normalized propagation delay `a`: at time `t` a station perceives
//! the medium as it was at `t - a`.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TxId(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Collided,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transmission {
    pub id: TxId,
    pub station: u64,
    pub start: f64,
    pub end: f64,
    pub collided: bool,
    resolved: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Channel {
    staleness: f64,
    records: Vec<Transmission>,
    next_id: u64,
}

impl Channel {
    pub fn new(staleness: f64) -> Self {
        Self { staleness, records: Vec::new(), next_id: 0 }
    }

    /// Starts a transmission at `start`. Every transmission still on the air
    /// past `start` collides with it, both ways.
    pub fn transmit(&mut self, station: u64, start: f64, duration: f64) -> TxId {
        debug_assert!(duration > 0.0);
        let id = TxId(self.next_id);
        self.next_id += 1;
        let end = start + duration;
        let mut collided = false;
        for r in self.records.iter_mut().filter(|r| !r.resolved && r.end > start) {
            r.collided = true;
            collided = true;
        }
        self.records.push(Transmission { id, station, start, end, collided, resolved: false });
        id
    }

    /// Final outcome of `id`. Call at or after its end time.
    pub fn resolve(&mut self, id: TxId) -> (Outcome, Transmission) {
        let r = self
            .records
            .iter_mut()
            .find(|r| r.id == id)
            .expect("resolving an unknown transmission");
        r.resolved = true;
        let outcome = if r.collided { Outcome::Collided } else { Outcome::Success };
        (outcome, *r)
    }

    /// Carrier sense at `t`: some transmission satisfies `start + a <= t < end + a`.
    pub fn sensed_busy(&self, t: f64) -> bool {
        let a = self.staleness;
        self.records.iter().any(|r| r.start + a <= t && t < r.end + a)
    }

    /// True iff a transmission is physically on the air at `t`.
    pub fn on_air(&self, t: f64) -> bool {
        self.records.iter().any(|r| r.start <= t && t < r.end)
    }

    /// Drops resolved records that can no longer affect sensing at or after `now`.
    pub fn prune(&mut self, now: f64) {
        let a = self.staleness;
        self.records.retain(|r| !r.resolved || r.end + a > now);
    }

    pub fn staleness(&self) -> f64 {
        self.staleness
    }

    pub fn active(&self) -> impl Iterator<Item = &Transmission> {
        self.records.iter().filter(|r| !r.resolved)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lone_transmission_succeeds() {
        let mut ch = Channel::new(0.0);
        let id = ch.transmit(0, 0.0, 1.0);
        assert_eq!(ch.resolve(id).0, Outcome::Success);
    }

    #[test]
    fn partial_overlap_destroys_both() {
        let mut ch = Channel::new(0.0);
        let a = ch.transmit(0, 0.0, 1.0);
        let b = ch.transmit(1, 0.5, 1.0);
        assert_eq!(ch.resolve(a).0, Outcome::Collided);
        assert_eq!(ch.resolve(b).0, Outcome::Collided);
    }

    #[test]
    fn touching_endpoints_do_not_overlap() {
        let mut ch = Channel::new(0.0);
        let a = ch.transmit(0, 0.0, 1.0);
        let b = ch.transmit(1, 1.0, 1.0);
        assert_eq!(ch.resolve(a).0, Outcome::Success);
        assert_eq!(ch.resolve(b).0, Outcome::Success);
    }

    #[test]
    fn stale_sensing() {
        let mut ch = Channel::new(0.1);
        ch.transmit(0, 0.0, 1.0);
        assert!(!ch.sensed_busy(0.05));
        assert!(ch.sensed_busy(0.1));
        assert!(ch.sensed_busy(1.05));
        assert!(!ch.sensed_busy(1.1));
        assert!(ch.on_air(0.05));
    }

    #[test]
    fn prune_keeps_unresolved() {
        let mut ch = Channel::new(0.0);
        let a = ch.transmit(0, 0.0, 1.0);
        ch.transmit(1, 5.0, 1.0);
        ch.resolve(a);
        ch.prune(2.0);
        assert_eq!(ch.active().count(), 1);
        assert_eq!(ch.records.len(), 1);
    }
}

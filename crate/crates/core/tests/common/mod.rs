//! Frozen reference values shared by the golden tests and the acceptance
//! runner. Every constant was printed by tests/oracle/golden_values.py
//! (mpmath at 50 digits for closed forms, exact rationals for frame
//! budgets) before the library computed it.

use macbench::analytic::{self, AnalyticParams, GridRange, NormalizedThroughput, OfferedLoad, RateBasis};
use macbench::frame_timing::{self, FrameTiming};
use macbench::{Relation, Technique};

pub const REL: f64 = 1e-4;

/// One library value next to its oracle value.
pub struct Golden {
    pub group: &'static str,
    pub label: String,
    pub got: f64,
    pub want: f64,
}

impl Golden {
    pub fn rel_err(&self) -> f64 {
        if self.want == 0.0 {
            self.got.abs()
        } else {
            ((self.got - self.want) / self.want).abs()
        }
    }

    pub fn ok(&self) -> bool {
        self.rel_err() <= REL
    }
}

fn g(x: f64) -> OfferedLoad {
    OfferedLoad::new(x).unwrap()
}

fn s(x: f64) -> NormalizedThroughput {
    NormalizedThroughput::new(x).unwrap()
}

fn params(k: f64, a: f64) -> AnalyticParams {
    AnalyticParams { retrans_window: k, norm_prop_delay: a, ..Default::default() }
}

fn nlc(n: u32, l: f64, c: f64) -> AnalyticParams {
    AnalyticParams { n_nodes: n, pkt_len: l, cycle_len: c, ..Default::default() }
}

pub fn tdma_frame_example() -> FrameTiming {
    FrameTiming {
        n_overhead_bits: 160.0,
        n_ack_bits: 80.0,
        n_sync_bits: 160.0,
        n_data_bits: 800.0,
        guard_time: 1e-4,
        ..FrameTiming::zeroed(1e5, 100.0)
    }
}

/// Totals and bits/s of the default frame, in ranked order.
pub const DEFAULT_RANKING: [(Technique, f64, f64); 5] = [
    (Technique::Tdma, 0.005202, 195309.49634755863),
    (Technique::SlottedAloha, 0.005228, 194338.1790359602),
    (Technique::PureAloha, 0.009064, 112091.79170344218),
    (Technique::Fdma, 0.009106, 111574.7858554799),
    (Technique::CsmaCa, 0.015664, 64862.10418794688),
];

pub fn goldens() -> Vec<Golden> {
    let mut v = Vec::new();
    let mut add = |group, label: &str, got: f64, want: f64| {
        v.push(Golden { group, label: label.to_owned(), got, want });
    };

    add("aloha", "S(0.5)", analytic::aloha_throughput(g(0.5)).get(), 0.18393972058572116);
    add("aloha", "S(1)", analytic::aloha_throughput(g(1.0)).get(), 0.1353352832366127);
    add("aloha", "S(1.5)", analytic::aloha_throughput(g(1.5)).get(), 0.07468060255179591);
    add("aloha", "S(2)", analytic::aloha_throughput(g(2.0)).get(), 0.036631277777468361);
    add("aloha", "D(S=0.5; K=1, a=0)", analytic::aloha_delay_vs_throughput(s(0.5), &params(1.0, 0.0)), std::f64::consts::E);
    add(
        "aloha",
        "D(S=0.18394; K=2, a=0.01)",
        analytic::aloha_delay_vs_throughput(s(0.18394), &params(2.0, 0.01)),
        1.6858963758641062,
    );
    add("aloha", "D(G=1; K=1, a=0)", analytic::aloha_delay_vs_load(g(1.0), &params(1.0, 0.0)), std::f64::consts::E);
    add("aloha", "D(G=1; K=3, a=0.1)", analytic::aloha_delay_vs_load(g(1.0), &params(3.0, 0.1)), 4.880220022609899);

    add("slotted", "S(1)", analytic::slotted_aloha_throughput(g(1.0)).get(), 0.36787944117144232);
    add("slotted", "S(2)", analytic::slotted_aloha_throughput(g(2.0)).get(), 0.2706705664732254);
    add(
        "slotted",
        "D(S=0.36788; K=1, a=0)",
        analytic::saloha_delay_vs_throughput(s(0.36788), &params(1.0, 0.0)),
        1.9446686683316488,
    );
    add("slotted", "D(S=1; K=1, a=0)", analytic::saloha_delay_vs_throughput(s(1.0), &params(1.0, 0.0)), 3.218281828459045);
    add("slotted", "D(G=1; K=1, a=0)", analytic::saloha_delay_vs_load(g(1.0), &params(1.0, 0.0)), 3.218281828459045);
    add("slotted", "D(G=2; K=2, a=0.05)", analytic::saloha_delay_vs_load(g(2.0), &params(2.0, 0.05)), 11.77248975828904);

    add("csma", "S(1, 0)", analytic::csma_throughput(g(1.0), 0.0).unwrap().get(), 0.5378828427399902);
    add("csma", "S(0.5, 0.01)", analytic::csma_throughput(g(0.5), 0.01).unwrap().get(), 0.4072090023518365);
    add("csma", "S(1, 0.01)", analytic::csma_throughput(g(1.0), 0.01).unwrap().get(), 0.5286406794409563);
    add("csma", "S(5, 0.01)", analytic::csma_throughput(g(5.0), 0.01).unwrap().get(), 0.03797690193800158);
    add("csma", "D(G=1, L=0)", analytic::csma_delay_vs_load(g(1.0), 0.0).unwrap(), 0.5378828427399902);
    add("csma", "D(G=1, L=1)", analytic::csma_delay_vs_load(g(1.0), 1.0).unwrap(), 0.08491095753587072);
    add("csma", "D(S=0.5; K=1, a=0)", analytic::csma_delay_vs_throughput(s(0.5), &params(1.0, 0.0)), std::f64::consts::E);
    add(
        "csma",
        "D(S=0.53788; K=2, a=0.05)",
        analytic::csma_delay_vs_throughput(s(0.53788), &params(2.0, 0.05)),
        4.141552866455142,
    );

    let cyc = RateBasis::CycleLength;
    add("tdma", "D(q=0.5; N=10, L=1, C=1)", analytic::tdma_delay(0.5, &nlc(10, 1.0, 1.0), cyc).unwrap(), 11.0);
    add("tdma", "D(q=0.9; N=10, L=2, C=4)", analytic::tdma_delay(0.9, &nlc(10, 2.0, 4.0), cyc).unwrap(), 25.5);
    add("tdma", "load form G=0.5", analytic::tdma_throughput_vs_load(g(0.5), &nlc(10, 1.0, 1.0)).unwrap(), 11.0);
    add(
        "tdma",
        "load form G=0.25; N=4, C=2",
        analytic::tdma_throughput_vs_load(g(0.25), &nlc(4, 1.0, 2.0)).unwrap(),
        1.8333333333333333,
    );
    add("fdma", "D(q=0.5; N=10, L=1, C=1)", analytic::fdma_delay(0.5, &nlc(10, 1.0, 1.0), cyc).unwrap(), 15.0);
    add("fdma", "load form G=0.5", analytic::fdma_throughput_vs_load(g(0.5), &nlc(10, 1.0, 1.0)).unwrap(), 15.0);
    add("fdma", "load form G=0.8; N=2, L=3, C=6", analytic::fdma_throughput_vs_load(g(0.8), &nlc(2, 3.0, 6.0)).unwrap(), 3.0);

    let curve = analytic::generate_curve(
        Technique::PureAloha,
        Relation::ThroughputVsLoad,
        GridRange::new(0.0, 2.0, 0.5).unwrap(),
        &AnalyticParams::default(),
    )
    .unwrap();
    let want = [0.0, 0.18393972058572116, 0.1353352832366127, 0.07468060255179591, 0.036631277777468361];
    for (p, w) in curve.points.iter().zip(want) {
        add("curve", &format!("pure-aloha t-vs-g x={}", p.x), p.y, w);
    }

    let ft = FrameTiming { n_data_bits: 1000.0, ..FrameTiming::zeroed(1000.0, 125.0) };
    add("frame", "csma-ca no ACK", frame_timing::csmaca_frame_delay(&ft).unwrap().total, 2.0);
    let ft = FrameTiming {
        n_data_bits: 8000.0,
        n_ack_bits: 800.0,
        backoff_slots: 2.0,
        backoff_slot_time: 1e-3,
        rts_time: 1e-4,
        cts_time: 1e-4,
        ..FrameTiming::zeroed(1e6, 1000.0)
    };
    let b = frame_timing::csmaca_frame_delay(&ft).unwrap();
    add("frame", "csma-ca total", b.total, 0.027);
    add("frame", "csma-ca T_ta", b.component("T_ta").unwrap(), 0.0088);
    add("frame", "csma-ca T_ifs", b.component("T_ifs").unwrap(), 0.0072);
    add("frame", "csma-ca bits/s", frame_timing::throughput_from_delay(1000.0, b.total).unwrap(), 296296.2962962963);

    let ft = tdma_frame_example();
    let tdma = frame_timing::tdma_frame_delay(&ft).unwrap().total;
    let fdma = frame_timing::fdma_frame_delay(&ft).unwrap().total;
    add("frame", "tdma total", tdma, 0.0129);
    add("frame", "fdma total", fdma, 0.0193);
    add("frame", "fdma - tdma", fdma - tdma, 0.0064);
    let no_sync = FrameTiming { n_sync_bits: 0.0, ..ft };
    add("frame", "tdma without sync", frame_timing::tdma_frame_delay(&no_sync).unwrap().total, 0.0113);

    let ft = FrameTiming { n_data_bits: 8000.0, queue_time: 1e-3, ..FrameTiming::zeroed(1e6, 1000.0) };
    add("frame", "pure-aloha total", frame_timing::aloha_frame_delay(&ft).unwrap().total, 0.009);
    let ft = FrameTiming {
        n_ack_bits: 80.0,
        n_sync_bits: 160.0,
        turnaround_time_override: Some(2e-3),
        idle_time: 5e-4,
        slot_boundary_wait: 1e-3,
        ..FrameTiming::zeroed(1e5, 100.0)
    };
    add("frame", "slotted-aloha total", frame_timing::saloha_frame_delay(&ft).unwrap().total, 0.0059);

    let ranked = frame_timing::rank_techniques(&FrameTiming::default()).unwrap();
    for (r, (t, total, bps)) in ranked.iter().zip(DEFAULT_RANKING) {
        add("ranking", &format!("{t} total"), r.total_delay, total);
        add("ranking", &format!("{t} bits/s"), r.throughput_bps, bps);
    }
    v
}

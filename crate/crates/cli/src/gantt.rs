//! Gantt export: one SVG lane per machine, one bar per executed operation
//! with its setup shaded separately, plus a CSV twin of the drawn rows.

use anyhow::{bail, Result};

use pfjss_core::instance::ExtendedInstance;
use pfjss_core::sim::ScheduleTrace;
use pfjss_core::validate::validate;

const LANE_HEIGHT: f64 = 34.0;
const LANE_GAP: f64 = 8.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_TOP: f64 = 48.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 36.0;
const PLOT_WIDTH: f64 = 960.0;

fn esc(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Render a validated trace. Refuses any trace with violations so every
/// emitted chart corresponds to a feasible schedule.
pub fn render_svg(trace: &ScheduleTrace, inst: &ExtendedInstance, title: &str) -> Result<String> {
    let report = validate(trace, inst)?;
    if !report.is_feasible() {
        let detail: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        bail!("refusing to draw an invalid schedule:\n{}", detail.join("\n"));
    }
    let machines = inst.base.machine_count;
    let makespan = trace
        .rows
        .iter()
        .map(|r| r.end)
        .fold(0.0f64, f64::max)
        .max(1e-9);
    let width = MARGIN_LEFT + PLOT_WIDTH + MARGIN_RIGHT;
    let height = MARGIN_TOP + machines as f64 * (LANE_HEIGHT + LANE_GAP) + MARGIN_BOTTOM;
    let x = |t: f64| MARGIN_LEFT + t / makespan * PLOT_WIDTH;
    let lane_y = |mx: usize| MARGIN_TOP + (mx - 1) as f64 * (LANE_HEIGHT + LANE_GAP);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"sans-serif\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"#ffffff\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{MARGIN_LEFT}\" y=\"24\" font-size=\"15\" fill=\"#222\">{}</text>\n",
        esc(title)
    ));

    for mx in 1..=machines {
        let y = lane_y(mx);
        svg.push_str(&format!(
            "<rect class=\"lane\" x=\"{:.2}\" y=\"{y:.2}\" width=\"{PLOT_WIDTH:.2}\" \
             height=\"{LANE_HEIGHT:.2}\" fill=\"#f2f2f2\"/>\n",
            MARGIN_LEFT
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" fill=\"#222\" \
             text-anchor=\"end\">M{mx}</text>\n",
            MARGIN_LEFT - 8.0,
            y + LANE_HEIGHT / 2.0 + 4.0
        ));
    }

    // Axis: six ticks from 0 to the makespan.
    let axis_y = MARGIN_TOP + machines as f64 * (LANE_HEIGHT + LANE_GAP) + 4.0;
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{axis_y:.2}\" x2=\"{:.2}\" y2=\"{axis_y:.2}\" \
         stroke=\"#444\"/>\n",
        x(0.0),
        x(makespan)
    ));
    for tick in 0..=5 {
        let t = makespan * tick as f64 / 5.0;
        svg.push_str(&format!(
            "<line x1=\"{0:.2}\" y1=\"{axis_y:.2}\" x2=\"{0:.2}\" y2=\"{1:.2}\" stroke=\"#444\"/>\n",
            x(t),
            axis_y + 4.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" fill=\"#444\" \
             text-anchor=\"middle\">{t:.1}</text>\n",
            x(t),
            axis_y + 16.0
        ));
    }

    for row in &trace.rows {
        let y = lane_y(row.machine.0 as usize);
        let hue = (row.job.0 * 67) % 360;
        if row.start > row.setup_start {
            svg.push_str(&format!(
                "<rect class=\"setup\" x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" \
                 fill=\"#c9c9c9\" stroke=\"#888\" stroke-width=\"0.5\"/>\n",
                x(row.setup_start),
                y + 3.0,
                x(row.start) - x(row.setup_start),
                LANE_HEIGHT - 6.0
            ));
        }
        let bar_w = x(row.end) - x(row.start);
        svg.push_str(&format!(
            "<rect class=\"op\" x=\"{:.2}\" y=\"{:.2}\" width=\"{bar_w:.2}\" height=\"{:.2}\" \
             fill=\"hsl({hue},62%,58%)\" stroke=\"#333\" stroke-width=\"0.6\">\
             <title>J{} op {}: {} to {}</title></rect>\n",
            x(row.start),
            y + 3.0,
            LANE_HEIGHT - 6.0,
            row.job.0,
            row.op,
            row.start,
            row.end
        ));
        if bar_w >= 26.0 {
            svg.push_str(&format!(
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" fill=\"#111\" \
                 text-anchor=\"middle\">J{}.{}</text>\n",
                x(row.start) + bar_w / 2.0,
                y + LANE_HEIGHT / 2.0 + 3.5,
                row.job.0,
                row.op
            ));
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// The CSV twin is the trace itself, so bar extents can be checked offline.
pub fn twin_csv(trace: &ScheduleTrace) -> String {
    trace.to_csv_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::default_weights;
    use pfjss_core::instance::{generate_synthetic, SynthSpec};
    use pfjss_core::rules::RuleId;
    use pfjss_core::sim::{arrival_times, run, ArrivalPattern, SimConfig};

    fn sample() -> (ExtendedInstance, ScheduleTrace) {
        let spec = SynthSpec {
            jobs: 4,
            machines: 3,
            ops_range: (2, 3),
            alt_range: (1, 3),
            ptime_range: (1, 6),
            due_range: (8.0, 20.0),
            setup_range: (0.2, 0.8),
            total_ops: None,
        };
        let inst = generate_synthetic(&spec, 3).unwrap();
        let plan = arrival_times(ArrivalPattern::Static, 4, 0.0, 1).unwrap();
        let (trace, _) = run(
            &inst,
            RuleId::C9,
            &plan,
            1,
            &default_weights(),
            &SimConfig::default(),
        )
        .unwrap();
        (inst, trace)
    }

    #[test]
    fn svg_has_one_lane_per_machine_and_a_bar_per_row() {
        let (inst, trace) = sample();
        let svg = render_svg(&trace, &inst, "sample").unwrap();
        let lanes = svg.matches("class=\"lane\"").count();
        assert_eq!(lanes, inst.base.machine_count);
        let bars = svg.matches("class=\"op\"").count();
        assert_eq!(bars, trace.rows.len());
        assert!(svg.starts_with("<svg "));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn twin_rows_match_bar_extents() {
        let (inst, trace) = sample();
        let csv = twin_csv(&trace);
        let reparsed =
            ScheduleTrace::from_csv_str(&csv, trace.arrivals.clone(), trace.due_dates.clone())
                .unwrap();
        assert_eq!(reparsed.rows.len(), trace.rows.len());
        for (a, b) in reparsed.rows.iter().zip(&trace.rows) {
            assert_eq!(a.end - a.start, b.end - b.start);
        }
        let _ = render_svg(&reparsed, &inst, "roundtrip").unwrap();
    }

    #[test]
    fn corrupt_traces_are_refused() {
        let (inst, trace) = sample();
        let mut broken = trace.clone();
        // Shift one row onto another so some machine double-books.
        let mut clash: Option<(usize, usize)> = None;
        'outer: for a in 0..broken.rows.len() {
            for b in a + 1..broken.rows.len() {
                let (ra, rb) = (&broken.rows[a], &broken.rows[b]);
                if ra.machine == rb.machine && ra.start != rb.start {
                    clash = Some((a, b));
                    break 'outer;
                }
            }
        }
        if let Some((a, b)) = clash {
            let start = broken.rows[a].start;
            let span = broken.rows[b].end - broken.rows[b].start;
            broken.rows[b].setup_start = start;
            broken.rows[b].start = start;
            broken.rows[b].end = start + span;
            let err = render_svg(&broken, &inst, "broken").unwrap_err();
            assert!(err.to_string().contains("invalid schedule"));
        } else {
            panic!("expected two rows on one machine");
        }
    }
}

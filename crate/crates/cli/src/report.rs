//! Serialization of mining reports: the JSON document and the
//! pattern,support,length CSV table.

use serde::Serialize;

use nosp::MiningReport;

#[derive(Debug, Serialize)]
pub struct PatternRow {
    pub pattern: String,
    pub support: u64,
    pub length: usize,
}

#[derive(Debug, Serialize)]
pub struct MetricsDoc {
    pub runtime_ms: f64,
    pub visited_nodes: u64,
    pub candidates_per_length: Vec<usize>,
    pub supports_computed: u64,
    pub requested_k: usize,
    pub returned: usize,
    pub shortfall: bool,
}

#[derive(Debug, Serialize)]
pub struct ReportDoc {
    pub patterns: Vec<PatternRow>,
    pub l_max: usize,
    pub metrics: MetricsDoc,
}

pub fn report_doc(report: &MiningReport) -> ReportDoc {
    ReportDoc {
        patterns: report
            .ranked
            .iter()
            .map(|(p, s)| PatternRow {
                pattern: p.to_string(),
                support: *s,
                length: p.len(),
            })
            .collect(),
        l_max: report.l_max,
        metrics: MetricsDoc {
            runtime_ms: report.metrics.runtime.as_secs_f64() * 1e3,
            visited_nodes: report.metrics.visited_nodes,
            candidates_per_length: report.metrics.candidates_per_length.clone(),
            supports_computed: report.metrics.supports_computed,
            requested_k: report.params.k,
            returned: report.ranked.len(),
            shortfall: report.metrics.shortfall,
        },
    }
}

pub fn to_json(report: &MiningReport) -> String {
    let mut s = serde_json::to_string(&report_doc(report)).expect("report serializes");
    s.push('\n');
    s
}

pub fn to_csv(report: &MiningReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["pattern", "support", "length"])
        .expect("csv header");
    for (p, s) in &report.ranked {
        w.write_record([p.to_string(), s.to_string(), p.len().to_string()])
            .expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
}

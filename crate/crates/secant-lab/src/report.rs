//! Analysis driver and report serialization. Reports serialize to canonical
//! JSON with a stable key order, so identical (spec, flags, seed) inputs
//! reproduce byte-identical output; wall-clock timing is therefore kept out
//! of the JSON and only shown in the human-readable table.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bounds::{evaluate_bounds, Check};
use crate::catalog::{build, parse_spec, VarietySpec};
use crate::error::Error;
use crate::scalar::{Fp0, Rational, Scalar};
use crate::terracini::{defect_ledger, DefectLedger, EngineOpts};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    PrimeField,
    Rational,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOpts {
    pub mode: Mode,
    pub engine: EngineOpts,
}

impl Default for AnalyzeOpts {
    fn default() -> Self {
        AnalyzeOpts {
            mode: Mode::PrimeField,
            engine: EngineOpts::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LedgerRowJson {
    pub k: usize,
    pub s: usize,
    pub e: usize,
    pub delta: usize,
    pub f: usize,
    pub psi: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub spec: String,
    pub n: usize,
    pub r: usize,
    pub mode: String,
    pub seed: u64,
    pub ledger: Vec<LedgerRowJson>,
    pub k0: usize,
    pub checks: Vec<Check>,
    pub severi: Vec<usize>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl AnalysisReport {
    /// Canonical JSON: pretty-printed with the declared key order.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Aligned human-readable table.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "spec: {}   n={} r={} k0={}   mode={} seed={}\n",
            self.spec, self.n, self.r, self.k0, self.mode, self.seed
        ));
        out.push_str(&format!(
            "{:>3} {:>5} {:>5} {:>6} {:>5} {:>5} {:>6} {:>5}\n",
            "k", "s", "e", "delta", "f", "psi", "gamma", "t"
        ));
        let dash = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        for row in &self.ledger {
            out.push_str(&format!(
                "{:>3} {:>5} {:>5} {:>6} {:>5} {:>5} {:>6} {:>5}\n",
                row.k,
                row.s,
                row.e,
                row.delta,
                row.f,
                row.psi,
                dash(row.gamma),
                dash(row.t)
            ));
        }
        if self.severi.is_empty() {
            out.push_str("severi candidates: none\n");
        } else {
            let ks: Vec<String> = self.severi.iter().map(|k| k.to_string()).collect();
            out.push_str(&format!("severi candidates: k = {}\n", ks.join(", ")));
        }
        out.push_str("checks:\n");
        for c in &self.checks {
            let k = c.k.map_or(String::new(), |k| format!("[k={}]", k));
            out.push_str(&format!(
                "  {:<28} {:<12} {}\n",
                format!("{}{}", c.name, k),
                format!("{:?}", c.verdict).to_lowercase(),
                c.witness
            ));
        }
        out.push_str(&format!("elapsed: {:.3}s\n", self.elapsed.as_secs_f64()));
        out
    }
}

fn ledger_to_json(ledger: &DefectLedger) -> Vec<LedgerRowJson> {
    ledger
        .rows
        .iter()
        .map(|r| LedgerRowJson {
            k: r.k,
            s: r.s,
            e: r.e,
            delta: r.delta,
            f: r.f,
            psi: r.psi,
            gamma: r.gamma,
            t: r.t,
        })
        .collect()
}

fn analyze_in<F: Scalar>(
    spec: &VarietySpec,
    opts: &AnalyzeOpts,
) -> Result<(DefectLedger, Vec<Check>, Vec<usize>), Error> {
    let chart = build::<F>(spec, opts.engine.seed)?;
    let ledger = defect_ledger(&chart, &opts.engine)?;
    let bounds = evaluate_bounds(&ledger, spec.is_smooth_model());
    Ok((ledger, bounds.checks, bounds.severi))
}

/// Parse, build, measure and check one variety; the one-stop entry point
/// behind both the CLI and the test suites.
pub fn analyze(spec_text: &str, opts: &AnalyzeOpts) -> Result<AnalysisReport, Error> {
    let started = Instant::now();
    let spec = parse_spec(spec_text)?;
    let (ledger, checks, severi) = match opts.mode {
        Mode::PrimeField => analyze_in::<Fp0>(&spec, opts)?,
        Mode::Rational => analyze_in::<Rational>(&spec, opts)?,
    };
    Ok(AnalysisReport {
        spec: spec.to_string(),
        n: ledger.n,
        r: ledger.r,
        mode: match opts.mode {
            Mode::PrimeField => Fp0::mode_name().to_string(),
            Mode::Rational => Rational::mode_name().to_string(),
        },
        seed: opts.engine.seed,
        ledger: ledger_to_json(&ledger),
        k0: ledger.k0,
        checks,
        severi,
        elapsed: started.elapsed(),
    })
}

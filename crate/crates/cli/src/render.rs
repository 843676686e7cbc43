//! `--pretty` summaries.

use std::fmt::Write;

use parity_bias::parity::CrossCheck;
use parity_bias::seqgen::{EmpiricalEstimate, SimulationReport};
use parity_bias::DyadicRational;

use crate::{Analysis, BiasOutput, Output};

fn value(d: &DyadicRational) -> String {
    let log2 = d.log2_abs();
    if d.is_zero() {
        "0".to_string()
    } else if let Some(e) = d.exact_log2() {
        format!("{d} (2^{e})")
    } else {
        format!("{d} (|.| = 2^{log2:.3})")
    }
}

fn opt(d: &Option<DyadicRational>) -> String {
    d.as_ref().map_or_else(|| "n/a".to_string(), value)
}

pub fn pretty(output: &Output) -> String {
    let mut s = String::new();
    match output {
        Output::Analysis(a) => analysis(&mut s, a),
        Output::Bias(b) => bias(&mut s, b),
        Output::Simulation(r) => simulation(&mut s, r),
        Output::Estimate(e) => estimate(&mut s, e),
        Output::CrossCheck(c) => cross(&mut s, c),
    }
    s.truncate(s.trim_end().len());
    s
}

fn analysis(s: &mut String, a: &Analysis) {
    let _ = writeln!(
        s,
        "function     {} (n = {}, hex {})",
        a.function.anf, a.function.n, a.function.hex
    );
    let _ = writeln!(s, "weight       {}", a.weight);
    let _ = writeln!(s, "bias         {}", value(&a.bias));
    let _ = writeln!(s, "resiliency   {}", a.resiliency_order);
    let _ = writeln!(s, "corr. imm.   {}", a.correlation_immunity_order);
    let _ = writeln!(
        s,
        "nonlinearity {} (max |W| = {})",
        a.nonlinearity, a.max_abs_walsh
    );
    let _ = writeln!(s, "plateaued    {}", opt(&a.plateaued_amplitude));
}

fn bias(s: &mut String, b: &BiasOutput) {
    let r = &b.report;
    let _ = writeln!(s, "function     {} (n = {})", b.function.anf, b.function.n);
    let _ = writeln!(s, "offsets      {:?}", b.spec.offsets());
    let _ = writeln!(s, "independence {:?}", r.independence.verdict);
    let _ = writeln!(s, "method       {}", r.method);
    let _ = writeln!(s, "exact        {}", opt(&r.exact));
    let _ = writeln!(
        s,
        "lower bound  {} via {:?}",
        opt(&r.lower_bound),
        r.lower_bound_mask.clone().unwrap_or_default()
    );
    let _ = writeln!(s, "closed form  {}", opt(&r.closed_form));
    let _ = write!(s, "plateaued    {}", opt(&r.plateaued_bound));
    match r.equality_condition_met {
        Some(true) => s.push_str(" (attained)\n"),
        Some(false) => s.push_str(" (strict)\n"),
        None => s.push('\n'),
    }
    let _ = writeln!(
        s,
        "work         {} steps, {} evaluations, {} precomputation",
        r.op_count, r.function_evaluations, r.precomputation_ops
    );
    if let Some(cost) = &b.attack_cost {
        let _ = writeln!(
            s,
            "attack       time 2^{:.2}, data 2^{:.2}",
            cost.log2_time(),
            cost.log2_data()
        );
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning      {w}");
    }
}

fn estimate(s: &mut String, e: &EmpiricalEstimate) {
    let _ = writeln!(
        s,
        "estimator    {} ({} trials{})",
        e.ensemble,
        e.trials,
        e.seed
            .map_or_else(String::new, |seed| format!(", seed {seed}"))
    );
    let _ = writeln!(
        s,
        "estimate     {:.6} +- {:.6} (99%: [{:.6}, {:.6}])",
        e.estimate, e.stderr, e.interval_99[0], e.interval_99[1]
    );
}

fn simulation(s: &mut String, r: &SimulationReport) {
    estimate(s, &r.estimate);
    let _ = writeln!(s, "independence {:?}", r.independence.verdict);
    let _ = writeln!(
        s,
        "formula      {} (z = {:.2})",
        opt(&r.formula),
        r.z_formula.unwrap_or(f64::NAN)
    );
    let _ = writeln!(
        s,
        "oracle       {} (z = {:.2})",
        opt(&r.oracle),
        r.z_oracle.unwrap_or(f64::NAN)
    );
    if r.diverges_from_formula == Some(true) {
        let _ = writeln!(
            s,
            "warning      estimate is more than 3 standard errors from the formula"
        );
    }
}

fn cross(s: &mut String, c: &CrossCheck) {
    let _ = writeln!(s, "verdict      {:?}", c.verdict);
    if let Some(reason) = &c.reason {
        let _ = writeln!(s, "reason       {reason}");
    }
    let _ = writeln!(s, "exact        {}", opt(&c.exact));
    let _ = writeln!(s, "oracle       {}", opt(&c.oracle));
    let _ = writeln!(s, "lower bound  {}", opt(&c.lower_bound));
    for v in &c.violations {
        let _ = writeln!(s, "violation    {v}");
    }
}

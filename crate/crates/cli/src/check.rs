use aisemiring::group::{lower_central_series, nonabelian_nilpotent_witness, verify_group, FiniteGroup};
use aisemiring::hgsemiring::{noncyclic_order_ideal, one_in_three_property, TripleMode};
use aisemiring::semiring::laws::{check_flat_variety_laws, classify_flat_monoid, index_period, FlatMonoidVerdict};
use aisemiring::semiring::{order_profile, verify_semiring_axioms};
use aisemiring::{Caps, FiniteSemiring};
use clap::Args;
use serde_json::{json, Value};

use crate::input;
use crate::output::{CliError, Outcome, Status};

#[derive(Args)]
pub struct CheckArgs {
    /// Fixture name or file.
    input: String,
    /// Semiring axioms (the default when no check is named).
    #[arg(long)]
    axioms: bool,
    /// Order of height one with an absorbing top.
    #[arg(long)]
    flat: bool,
    /// Print the covering relation of the order.
    #[arg(long)]
    order: bool,
    /// Print the index and period of the multiplicative reduct.
    #[arg(long)]
    index_period: bool,
    /// The laws defining the variety generated by flat semirings.
    #[arg(long)]
    flat_laws: bool,
    #[arg(long)]
    one_in_three: bool,
    #[arg(long)]
    two_in_three: bool,
    /// Noncyclic elements form a down-set.
    #[arg(long)]
    noncyclic_ideal: bool,
    /// For a flat monoid: contains S7, or is a flat group.
    #[arg(long)]
    classify: bool,
    /// Look for a nonabelian nilpotent multiplicative subgroup.
    #[arg(long)]
    nilpotent: bool,
    /// Every check above.
    #[arg(long)]
    all: bool,
}

struct Line {
    name: &'static str,
    holds: bool,
    summary: String,
    data: Value,
}

impl Line {
    fn new(name: &'static str, holds: bool, summary: impl Into<String>, data: Value) -> Self {
        Line {
            name,
            holds,
            summary: summary.into(),
            data,
        }
    }
}

pub fn run(a: CheckArgs, caps: &Caps) -> Result<Outcome, CliError> {
    if input::is_group(&a.input) {
        return Ok(render(group_lines(&input::group(&a.input)?)));
    }
    let s = input::semiring(&a.input)?;
    let none = !(a.axioms
        || a.flat
        || a.order
        || a.index_period
        || a.flat_laws
        || a.one_in_three
        || a.two_in_three
        || a.noncyclic_ideal
        || a.classify
        || a.nilpotent);
    let mut lines = Vec::new();
    let axioms = verify_semiring_axioms(&s);
    if a.all || a.axioms || none {
        let summary = if axioms.is_valid() {
            format!("ok, {} elements", s.len())
        } else {
            format!("{} violations: {}", axioms.total, axioms.describe(&s).join("; "))
        };
        lines.push(Line::new("axioms", axioms.is_valid(), summary, json!(axioms)));
    }
    if !axioms.is_valid() {
        // The remaining checks assume a semiring.
        return Ok(render(lines));
    }
    if a.all || a.flat {
        let flat = s.is_flat();
        let summary = match s.flat_top() {
            Some(t) if flat => format!("yes, top {}", s.name(t)),
            _ => "no".to_string(),
        };
        lines.push(Line::new("flat", flat, summary, json!(flat)));
    }
    if a.all || a.order {
        let order = order_profile(&s);
        let covers: Vec<String> = s
            .elements()
            .flat_map(|x| order.covers(x).into_iter().map(move |y| (x, y)))
            .map(|(x, y)| format!("{}<{}", s.name(x), s.name(y)))
            .collect();
        let summary = format!("height {}, covers {}", order.height, covers.join(" "));
        lines.push(Line::new("order", true, summary, json!({ "height": order.height, "covers": covers })));
    }
    if a.all || a.index_period {
        let (k, p) = index_period(&s);
        lines.push(Line::new("index-period", true, format!("({k},{p})"), json!([k, p])));
    }
    if a.all || a.flat_laws {
        let checks = check_flat_variety_laws(&s, caps)?;
        let failed: Vec<String> = checks
            .iter()
            .filter(|c| !c.holds)
            .map(|c| {
                let at = c.counterexample.as_ref().map(|e| e.describe(&s)).unwrap_or_default();
                format!("{} ({at})", c.identity)
            })
            .collect();
        let summary = if failed.is_empty() {
            format!("all {} hold", checks.len())
        } else {
            format!("{} fail: {}", failed.len(), failed.join("; "))
        };
        lines.push(Line::new("flat-laws", failed.is_empty(), summary, json!(checks)));
    }
    for (flag, mode, name) in [
        (a.one_in_three, TripleMode::OneInThree, "1-in-3"),
        (a.two_in_three, TripleMode::TwoInThree, "2-in-3"),
    ] {
        if a.all || flag {
            let v = one_in_three_property(&s, mode);
            let points = v.describe(&s);
            let summary = if points.is_empty() {
                "no noncyclic elements".to_string()
            } else {
                points.join("; ")
            };
            lines.push(Line::new(name, v.holds, summary, json!(v)));
        }
    }
    if a.all || a.noncyclic_ideal {
        let c = noncyclic_order_ideal(&s);
        let names: Vec<&str> = c.noncyclic.iter().map(|&x| s.name(x)).collect();
        let mut summary = format!("noncyclic {{{}}}", names.join(", "));
        if let Some((x, y)) = c.violation {
            summary.push_str(&format!(", but cyclic {} <= {}", s.name(x), s.name(y)));
        }
        lines.push(Line::new("noncyclic-ideal", c.holds, summary, json!(c)));
    }
    if a.classify {
        lines.push(classify(&s)?);
    }
    if a.nilpotent {
        let w = nonabelian_nilpotent_witness(&s, caps)?;
        let summary = match &w {
            Some(w) => {
                let names: Vec<&str> = w.carrier.iter().map(|&x| s.name(x)).collect();
                format!(
                    "order {}, class {}, {{{}}}",
                    w.order(),
                    w.class.map_or("?".into(), |c| c.to_string()),
                    names.join(", ")
                )
            }
            None => "none".to_string(),
        };
        lines.push(Line::new("nilpotent", w.is_some(), summary, json!(w)));
    }
    Ok(render(lines))
}

fn classify(s: &FiniteSemiring) -> Result<Line, CliError> {
    Ok(match classify_flat_monoid(s)? {
        FlatMonoidVerdict::ContainsS7 { triple, .. } => {
            let names: Vec<&str> = triple.iter().map(|&x| s.name(x)).collect();
            Line::new(
                "classify",
                true,
                format!("contains S7 as {{{}}}", names.join(", ")),
                json!({ "contains_s7": triple }),
            )
        }
        FlatMonoidVerdict::FlatGroup { group, carrier } => Line::new(
            "classify",
            true,
            format!("flat extension of a group of order {}", group.len()),
            json!({ "flat_group": carrier }),
        ),
    })
}

fn group_lines(g: &FiniteGroup) -> Vec<Line> {
    let report = verify_group(g);
    let mut lines = vec![Line::new(
        "group",
        report.is_valid(),
        if report.is_valid() { "ok" } else { "not a group" },
        json!(report),
    )];
    if report.is_valid() {
        let series = lower_central_series(g);
        let nilpotent = series.last().is_some_and(|t| t.len() == 1);
        let class = nilpotent.then(|| series.len() - 1);
        let summary = format!(
            "order {}, exponent {}, {}, {}",
            g.len(),
            g.exponent(),
            if g.is_abelian() { "abelian" } else { "nonabelian" },
            match class {
                Some(c) => format!("nilpotent of class {c}"),
                None => "not nilpotent".to_string(),
            }
        );
        lines.push(Line::new(
            "structure",
            true,
            summary,
            json!({
                "order": g.len(),
                "exponent": g.exponent(),
                "abelian": g.is_abelian(),
                "nilpotency_class": class,
            }),
        ));
    }
    lines
}

fn render(lines: Vec<Line>) -> Outcome {
    let ok = lines.iter().all(|l| l.holds);
    let mut text = String::new();
    let mut rows = Vec::new();
    for l in lines {
        let mark = if l.holds { "" } else { "FAIL " };
        text.push_str(&format!("{}: {mark}{}\n", l.name, l.summary));
        rows.push(json!({ "check": l.name, "holds": l.holds, "summary": l.summary, "data": l.data }));
    }
    Outcome::new(Status::from_bool(ok), text, json!(rows))
}

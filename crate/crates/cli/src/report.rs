//! Report assembly: every command produces one [`Report`] carrying the
//! pass/fail verdict, the machine-readable JSON form (the stable contract),
//! and human-readable text lines.

use haarsys::action::FreeProperReport;
use haarsys::decompose::{IsotropyBundle, OrbitPartition, PrincipalQuotient};
use haarsys::groupoid::{ArrowId, FiniteGroupoid, ValidationReport};
use haarsys::haar::{HaarReport, HaarSystem, InvariantSystems};
use haarsys::piecewise::{Discontinuity, Piecewise};
use haarsys::rat::format_rat;
use haarsys::stepbundle::{CoherenceVerdict, OpennessVerdict, StepSubgroupBundle};
use serde_json::{json, Value};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verbosity {
    Quiet,
    Normal,
    Verbose,
}

pub struct Report {
    passed: bool,
    summary: String,
    detail: Vec<String>,
    json: Value,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("report serializes")
    }

    pub fn to_text(&self, verbosity: Verbosity) -> String {
        let mut out = String::new();
        out.push_str(&self.summary);
        out.push('\n');
        let limit = match verbosity {
            Verbosity::Quiet => return out,
            Verbosity::Normal => 12,
            Verbosity::Verbose => usize::MAX,
        };
        for (i, line) in self.detail.iter().enumerate() {
            if i >= limit {
                out.push_str(&format!("  … ({} more lines)\n", self.detail.len() - i));
                break;
            }
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

fn pw_json(pw: &Piecewise) -> Value {
    json!({
        "breakpoints": pw.breakpoints().iter().map(format_rat).collect::<Vec<_>>(),
        "pieces": pw
            .pieces()
            .iter()
            .map(|p| p.coeffs.iter().map(format_rat).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "values": pw.values().iter().map(format_rat).collect::<Vec<_>>(),
    })
}

fn discontinuity_json(d: &Discontinuity) -> Value {
    json!({
        "x": format_rat(&d.x),
        "value": format_rat(&d.value),
        "left": d.left.as_ref().map(format_rat),
        "right": d.right.as_ref().map(format_rat),
        "discrepancy": format_rat(&d.discrepancy()),
    })
}

pub fn validate_report(label: &str, g: &FiniteGroupoid) -> Report {
    let report: ValidationReport = g.validate();
    let passed = report.is_valid();
    let structural: Vec<String> = report.structural.iter().map(|s| s.to_string()).collect();
    let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    let mut detail = Vec::new();
    detail.extend(structural.iter().map(|s| format!("structural: {s}")));
    detail.extend(violations.iter().map(|v| format!("axiom: {v}")));
    Report {
        passed,
        summary: if passed {
            format!(
                "validate {label}: valid groupoid ({} objects, {} arrows)",
                g.object_count(),
                g.arrow_count()
            )
        } else {
            format!(
                "validate {label}: INVALID ({} structural, {} axiom violations)",
                structural.len(),
                violations.len()
            )
        },
        json: json!({
            "command": "validate",
            "input": label,
            "objects": g.object_count(),
            "arrows": g.arrow_count(),
            "valid": passed,
            "structural": structural,
            "violations": violations,
        }),
        detail,
    }
}

#[allow(clippy::too_many_arguments)]
pub fn decompose_report(
    label: &str,
    g: &FiniteGroupoid,
    bundle: &IsotropyBundle,
    orbits: &OrbitPartition,
    quotient: &PrincipalQuotient,
    well_defined: bool,
    free: &FreeProperReport,
) -> Report {
    let isotropy: Vec<Value> = bundle
        .fibers
        .iter()
        .map(|f| {
            json!({
                "object": f.object.0,
                "order": f.order(),
                "type": f.table.isomorphism_label(),
            })
        })
        .collect();
    let orbit_lists: Vec<Vec<u32>> = orbits
        .classes()
        .iter()
        .map(|class| class.iter().map(|x| x.0).collect())
        .collect();
    let mut detail: Vec<String> = bundle
        .fibers
        .iter()
        .map(|f| format!("isotropy at {}: {}", f.object.0, f.table.isomorphism_label()))
        .collect();
    detail.push(format!("orbits: {orbit_lists:?}"));
    detail.push(format!(
        "quotient: {} objects, {} arrows; composition well-defined: {well_defined}",
        quotient.groupoid.object_count(),
        quotient.groupoid.arrow_count()
    ));
    detail.push(format!("translation action free: {}", free.free));
    Report {
        passed: well_defined && free.free,
        summary: format!(
            "decompose {label}: {} orbits, quotient has {} arrows",
            orbit_lists.len(),
            quotient.groupoid.arrow_count()
        ),
        json: json!({
            "command": "decompose",
            "input": label,
            "objects": g.object_count(),
            "arrows": g.arrow_count(),
            "isotropy": isotropy,
            "orbits": orbit_lists,
            "quotient": {
                "objects": quotient.groupoid.object_count(),
                "arrows": quotient.groupoid.arrow_count(),
            },
            "wellDefined": well_defined,
            "translationActionFree": free.free,
            "graphFibers": {
                "domain": free.graph_domain,
                "image": free.graph_image,
                "max": free.max_graph_fiber,
            },
        }),
        detail,
    }
}

fn haar_json(report: &HaarReport) -> Value {
    json!({
        "valid": report.is_valid(),
        "missingFibers": report.missing_fibers.iter().map(|x| x.0).collect::<Vec<_>>(),
        "domainErrors": report
            .domain_errors
            .iter()
            .map(|(x, a)| json!([x.0, a.0]))
            .collect::<Vec<_>>(),
        "support": report
            .support
            .iter()
            .map(|(x, a)| json!([x.0, a.0]))
            .collect::<Vec<_>>(),
        "negative": report
            .negative
            .iter()
            .map(|(x, a)| json!([x.0, a.0]))
            .collect::<Vec<_>>(),
        "invariance": report
            .invariance
            .iter()
            .map(|(alpha, k)| json!([alpha.0, k.0]))
            .collect::<Vec<_>>(),
        "continuity": "vacuous",
    })
}

fn haar_detail(report: &HaarReport) -> Vec<String> {
    let mut detail = Vec::new();
    detail.extend(
        report
            .missing_fibers
            .iter()
            .map(|x| format!("missing fiber at object {x}")),
    );
    detail.extend(
        report
            .domain_errors
            .iter()
            .map(|(x, a)| format!("domain error: arrow {a} is not in the range fiber of {x}")),
    );
    detail.extend(
        report
            .support
            .iter()
            .map(|(x, a)| format!("support: arrow {a} in fiber {x} has zero weight")),
    );
    detail.extend(
        report
            .negative
            .iter()
            .map(|(x, a)| format!("negative weight on arrow {a} in fiber {x}")),
    );
    detail.extend(
        report
            .invariance
            .iter()
            .map(|(alpha, k)| format!("invariance: translation by {alpha} moves the weight of {k}")),
    );
    detail
}

pub fn haar_verify_report(label: &str, report: &HaarReport) -> Report {
    let passed = report.is_valid();
    Report {
        passed,
        summary: if passed {
            format!("haar verify {label}: Haar system")
        } else {
            format!(
                "haar verify {label}: FAILS ({} support, {} invariance violations)",
                report.support.len(),
                report.invariance.len()
            )
        },
        detail: haar_detail(report),
        json: json!({
            "command": "haar-verify",
            "input": label,
            "report": haar_json(report),
        }),
    }
}

pub fn synth_report(
    label: &str,
    g: &FiniteGroupoid,
    system: &HaarSystem,
    verification: &HaarReport,
    out: Option<&Path>,
) -> Report {
    let weights: Vec<Value> = g
        .objects()
        .map(|x| {
            json!({
                "x": x.0,
                "weights": g
                    .range_fiber(x)
                    .iter()
                    .map(|&a| json!([a.0, format_rat(&system.fiber(x).value(a))]))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut detail = vec![format!(
        "synthesized weights on {} arrows over {} objects",
        g.arrow_count(),
        g.object_count()
    )];
    if let Some(path) = out {
        detail.push(format!("written to {}", path.display()));
    }
    detail.extend(haar_detail(verification));
    Report {
        passed: verification.is_valid(),
        summary: format!(
            "haar synth {label}: verify {}",
            if verification.is_valid() { "pass" } else { "FAIL" }
        ),
        json: json!({
            "command": "haar-synth",
            "input": label,
            "system": {"measures": weights},
            "verify": haar_json(verification),
        }),
        detail,
    }
}

pub fn enumerate_report(label: &str, g: &FiniteGroupoid, systems: &InvariantSystems) -> Report {
    let basis: Vec<Vec<String>> = systems
        .basis
        .iter()
        .map(|v| v.iter().map(format_rat).collect())
        .collect();
    Report {
        passed: true,
        summary: format!(
            "haar enumerate {label}: solution space dimension {} over {} arrows",
            systems.dimension,
            g.arrow_count()
        ),
        detail: systems
            .basis
            .iter()
            .zip(&systems.strictly_positive)
            .enumerate()
            .map(|(i, (v, positive))| {
                format!(
                    "basis[{i}]{}: {:?}",
                    if *positive { " (strictly positive)" } else { "" },
                    v.iter().map(format_rat).collect::<Vec<_>>()
                )
            })
            .collect(),
        json: json!({
            "command": "haar-enumerate",
            "input": label,
            "arrows": g.arrow_count(),
            "dimension": systems.dimension,
            "basis": basis,
            "strictlyPositive": systems.strictly_positive,
        }),
    }
}

pub fn bundle_check_report(
    label: &str,
    bundle: &StepSubgroupBundle,
    openness: &OpennessVerdict,
    coherence: &CoherenceVerdict,
    jump: Option<Vec<Discontinuity>>,
) -> Report {
    let witnesses: Vec<Value> = openness
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "breakpoint": format_rat(&bundle.breakpoints[w.breakpoint_index]),
                "element": w.element,
                "missingLeft": w.missing_left,
                "missingRight": w.missing_right,
            })
        })
        .collect();
    let mut detail = Vec::new();
    for w in &openness.witnesses {
        let side = match (w.missing_left, w.missing_right) {
            (true, true) => "both sides",
            (true, false) => "the left piece",
            _ => "the right piece",
        };
        detail.push(format!(
            "element {} sits at breakpoint {} but is missing from {side}",
            w.element,
            format_rat(&bundle.breakpoints[w.breakpoint_index]),
        ));
    }
    if let Some(defects) = &jump {
        for d in defects {
            let mut line = format!(
                "witness integral jumps at x = {}: value {}",
                format_rat(&d.x),
                format_rat(&d.value),
            );
            if let Some(left) = &d.left {
                line.push_str(&format!(", left limit {}", format_rat(left)));
            }
            if let Some(right) = &d.right {
                line.push_str(&format!(", right limit {}", format_rat(right)));
            }
            detail.push(line);
        }
    }
    Report {
        passed: openness.open,
        summary: if openness.open {
            format!("bundle check {label}: projection open; coherent system exists")
        } else {
            format!(
                "bundle check {label}: NOT open; no coherent system; witness at {}",
                format_rat(&bundle.breakpoints[openness.witnesses[0].breakpoint_index])
            )
        },
        json: json!({
            "command": "bundle-check",
            "input": label,
            "open": openness.open,
            "coherentExists": coherence.exists,
            "witnesses": witnesses,
            "witnessJump": jump.map(|defects| {
                defects.iter().map(discontinuity_json).collect::<Vec<_>>()
            }),
        }),
        detail,
    }
}

pub fn bundle_eval_report(label: &str, value: &Piecewise, defects: &[Discontinuity]) -> Report {
    let continuous = defects.is_empty();
    Report {
        passed: continuous,
        summary: if continuous {
            format!("bundle eval {label}: continuous")
        } else {
            format!(
                "bundle eval {label}: {} discontinuities",
                defects.len()
            )
        },
        detail: defects
            .iter()
            .map(|d| {
                format!(
                    "discontinuity at x = {}: value {}, discrepancy {}",
                    format_rat(&d.x),
                    format_rat(&d.value),
                    format_rat(&d.discrepancy()),
                )
            })
            .collect(),
        json: json!({
            "command": "bundle-eval",
            "input": label,
            "value": pw_json(value),
            "continuous": continuous,
            "discontinuities": defects.iter().map(discontinuity_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn conv_report(
    label: &str,
    seed: u64,
    trials: u32,
    assoc_failures: &[(u32, Vec<ArrowId>)],
    involution_failures: u32,
    unit_failures: u32,
) -> Report {
    let passed = assoc_failures.is_empty() && involution_failures == 0 && unit_failures == 0;
    Report {
        passed,
        summary: if passed {
            format!("conv test {label}: {trials} trials pass (seed {seed})")
        } else {
            format!(
                "conv test {label}: FAIL ({} associativity, {involution_failures} involution, {unit_failures} unit)",
                assoc_failures.len()
            )
        },
        detail: assoc_failures
            .iter()
            .map(|(trial, arrows)| {
                format!(
                    "trial {trial}: (f*g)*h != f*(g*h) at arrows {:?}",
                    arrows.iter().map(|a| a.0).collect::<Vec<_>>()
                )
            })
            .collect(),
        json: json!({
            "command": "conv-test",
            "input": label,
            "seed": seed,
            "trials": trials,
            "associativityFailures": assoc_failures
                .iter()
                .map(|(trial, arrows)| json!({
                    "trial": trial,
                    "arrows": arrows.iter().map(|a| a.0).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
            "involutionFailures": involution_failures,
            "unitFailures": unit_failures,
            "pass": passed,
        }),
    }
}

pub fn examples_report(names: &[&str]) -> Report {
    Report {
        passed: true,
        summary: format!("{} built-in examples", names.len()),
        detail: names.iter().map(|n| n.to_string()).collect(),
        json: json!({
            "command": "examples",
            "names": names,
        }),
    }
}

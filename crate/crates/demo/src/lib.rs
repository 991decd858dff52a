//! Browser bindings: three string-in/string-out operations over the core
//! crate, suitable for a static page. All math stays exact; float fields are
//! added alongside the exact strings purely for canvas plotting.

use haarsys::decompose::{orbit_partition, principal_quotient, stability_groupoid};
use haarsys::haar::{
    enumerate_invariant_systems, principal_haar_from_lambda, synthesize_haar, verify_haar,
};
use haarsys::manifest::{parse_manifest, serialize_manifest, FunctionPayload, ManifestPayload};
use haarsys::measures::CoherentSystem;
use haarsys::piecewise::Piecewise;
use haarsys::rat::{format_rat, parse_rat, Rat};
use haarsys::registry;
use haarsys::rng::SplitMix64;
use haarsys::stepbundle::{
    check_admissible, coherent_exists, evaluate_family, is_open_projection, positive_family,
    verify_continuity, SheetFunction, StepSubgroupBundle,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn rat_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn piecewise_json(pw: &Piecewise) -> Value {
    let left_limits: Vec<Value> = pw
        .breakpoints()
        .iter()
        .enumerate()
        .map(|(j, b)| {
            if j == 0 {
                Value::Null
            } else {
                json!(rat_f64(&pw.left_limit_at(b)))
            }
        })
        .collect();
    let right_limits: Vec<Value> = pw
        .breakpoints()
        .iter()
        .enumerate()
        .map(|(j, b)| {
            if j + 1 == pw.breakpoints().len() {
                Value::Null
            } else {
                json!(rat_f64(&pw.right_limit_at(b)))
            }
        })
        .collect();
    json!({
        "breakpoints": pw.breakpoints().iter().map(format_rat).collect::<Vec<_>>(),
        "pieces": pw
            .pieces()
            .iter()
            .map(|p| p.coeffs.iter().map(format_rat).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "values": pw.values().iter().map(format_rat).collect::<Vec<_>>(),
        "breakpointsFloat": pw.breakpoints().iter().map(rat_f64).collect::<Vec<_>>(),
        "piecesFloat": pw
            .pieces()
            .iter()
            .map(|p| p.coeffs.iter().map(rat_f64).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "valuesFloat": pw.values().iter().map(rat_f64).collect::<Vec<_>>(),
        "leftLimits": left_limits,
        "rightLimits": right_limits,
    })
}

fn error_json(messages: Vec<String>) -> String {
    json!({ "error": messages }).to_string()
}

fn parse_bundle(manifest_json: &str) -> Result<(StepSubgroupBundle, String), String> {
    let manifest = parse_manifest(manifest_json)
        .map_err(|diags| diags.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))?;
    let label = manifest.name.clone().unwrap_or_else(|| "bundle".into());
    match manifest.payload {
        ManifestPayload::Bundle(bundle) => Ok((bundle, label)),
        _ => Err("expected a bundle manifest".into()),
    }
}

/// Full analysis of a groupoid manifest: validation, orbit structure,
/// isotropy types, the principal quotient, the dimension of the invariant
/// solution space, and a synthesized Haar system (uniform isotropy weights,
/// unit quotient weights).
#[wasm_bindgen]
pub fn analyze_groupoid(manifest_json: &str) -> String {
    let manifest = match parse_manifest(manifest_json) {
        Ok(m) => m,
        Err(diags) => return error_json(diags.iter().map(ToString::to_string).collect()),
    };
    let label = manifest.name.clone().unwrap_or_else(|| "groupoid".into());
    let ManifestPayload::Groupoid(g) = manifest.payload else {
        return error_json(vec!["expected a groupoid manifest".into()]);
    };
    let validation = g.validate();
    if !validation.is_valid() {
        return json!({
            "name": label,
            "objects": g.object_count(),
            "arrows": g.arrow_count(),
            "valid": false,
            "structural": validation.structural.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "violations": validation.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
        .to_string();
    }

    let bundle = stability_groupoid(&g);
    let orbits = orbit_partition(&g);
    let quotient = principal_quotient(&g);
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

    let dimension = if g.arrow_count() <= 128 {
        enumerate_invariant_systems(&g).ok().map(|s| s.dimension)
    } else {
        None
    };

    let one = Rat::from_integer(1.into());
    let nu = CoherentSystem::uniform(&bundle, &one).expect("unit scale is positive");
    let lambda = vec![one; g.object_count()];
    let synth = principal_haar_from_lambda(&quotient, &lambda)
        .ok()
        .and_then(|m| synthesize_haar(&g, &nu, &m).ok())
        .map(|system| {
            let verify = verify_haar(&g, &system).is_valid();
            let weights: Vec<Value> = g
                .arrow_ids()
                .map(|a| {
                    json!([a.0, format_rat(&system.fiber(g.range(a)).value(a))])
                })
                .collect();
            json!({ "weights": weights, "verify": verify })
        });

    json!({
        "name": label,
        "objects": g.object_count(),
        "arrows": g.arrow_count(),
        "valid": true,
        "violations": [],
        "orbits": orbits
            .classes()
            .iter()
            .map(|c| c.iter().map(|x| x.0).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "isotropy": isotropy,
        "quotient": {
            "objects": quotient.groupoid.object_count(),
            "arrows": quotient.groupoid.arrow_count(),
        },
        "enumerateDimension": dimension,
        "synthesized": synth,
        "arrowTable": g
            .arrow_ids()
            .map(|a| json!([a.0, g.source(a).0, g.range(a).0]))
            .collect::<Vec<_>>(),
    })
    .to_string()
}

/// Openness / coherent-existence verdict for a bundle manifest. For a
/// non-open bundle the response includes the witness sheet function and the
/// jumping integral curve under the unit-scale family.
#[wasm_bindgen]
pub fn check_bundle(manifest_json: &str) -> String {
    let (bundle, label) = match parse_bundle(manifest_json) {
        Ok(b) => b,
        Err(message) => return error_json(vec![message]),
    };
    let openness = is_open_projection(&bundle);
    let verdict = coherent_exists(&bundle);
    let witnesses: Vec<Value> = openness
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "breakpoint": format_rat(&bundle.breakpoints[w.breakpoint_index]),
                "breakpointFloat": rat_f64(&bundle.breakpoints[w.breakpoint_index]),
                "element": w.element,
                "missingLeft": w.missing_left,
                "missingRight": w.missing_right,
            })
        })
        .collect();
    let witness_payload = verdict.witness_function.as_ref().map(|phi| {
        let family = positive_family(&Piecewise::constant(Rat::from_integer(1.into())))
            .expect("unit scale");
        let value = evaluate_family(&bundle, &family, phi).expect("witness is admissible");
        let defects = verify_continuity(&value);
        json!({
            "sheets": phi.sheets.iter().map(piecewise_json).collect::<Vec<_>>(),
            "integral": piecewise_json(&value),
            "discontinuities": defects
                .iter()
                .map(|d| json!({
                    "x": format_rat(&d.x),
                    "xFloat": rat_f64(&d.x),
                    "value": format_rat(&d.value),
                    "discrepancy": format_rat(&d.discrepancy()),
                }))
                .collect::<Vec<_>>(),
        })
    });
    json!({
        "name": label,
        "ambientOrder": bundle.ambient.order(),
        "breakpoints": bundle.breakpoints.iter().map(format_rat).collect::<Vec<_>>(),
        "open": openness.open,
        "coherentExists": verdict.exists,
        "witnesses": witnesses,
        "witness": witness_payload,
    })
    .to_string()
}

/// Evaluates the integral curve for a bundle, a scale profile (`const:p/q`
/// or a piecewise function manifest), and a sheet function (a function
/// manifest with a `sheets` payload, or `seed:N` for a random admissible
/// one).
#[wasm_bindgen]
pub fn evaluate_bundle(manifest_json: &str, scale_spec: &str, phi_spec: &str) -> String {
    let (bundle, label) = match parse_bundle(manifest_json) {
        Ok(b) => b,
        Err(message) => return error_json(vec![message]),
    };
    let scale = if let Some(text) = scale_spec.trim().strip_prefix("const:") {
        match parse_rat(text) {
            Ok(value) => Piecewise::constant(value),
            Err(err) => return error_json(vec![format!("bad scale constant: {err}")]),
        }
    } else {
        match parse_manifest(scale_spec) {
            Ok(m) => match m.payload {
                ManifestPayload::Function(FunctionPayload::Piecewise(pw)) => pw,
                _ => return error_json(vec!["scale must be a piecewise function manifest".into()]),
            },
            Err(diags) => return error_json(diags.iter().map(ToString::to_string).collect()),
        }
    };
    let family = match positive_family(&scale) {
        Ok(f) => f,
        Err(err) => return error_json(vec![err.to_string()]),
    };
    let phi: SheetFunction = if let Some(seed_text) = phi_spec.trim().strip_prefix("seed:") {
        let seed: u64 = match seed_text.parse() {
            Ok(s) => s,
            Err(_) => return error_json(vec!["bad seed".into()]),
        };
        haarsys::generate::random_admissible(&mut SplitMix64::new(seed), &bundle)
    } else {
        match parse_manifest(phi_spec) {
            Ok(m) => match m.payload {
                ManifestPayload::Function(FunctionPayload::Sheets(sheets)) => {
                    SheetFunction { sheets }
                }
                _ => return error_json(vec!["phi must be a sheets function manifest".into()]),
            },
            Err(diags) => return error_json(diags.iter().map(ToString::to_string).collect()),
        }
    };
    let violations = check_admissible(&bundle, &phi);
    if !violations.is_empty() {
        return error_json(
            violations
                .iter()
                .map(|v| format!("inadmissible: {v:?}"))
                .collect(),
        );
    }
    let value = evaluate_family(&bundle, &family, &phi).expect("admissibility checked");
    let defects = verify_continuity(&value);
    json!({
        "name": label,
        "sheets": phi.sheets.iter().map(piecewise_json).collect::<Vec<_>>(),
        "scale": piecewise_json(&scale),
        "integral": piecewise_json(&value),
        "continuous": defects.is_empty(),
        "discontinuities": defects
            .iter()
            .map(|d| json!({
                "x": format_rat(&d.x),
                "xFloat": rat_f64(&d.x),
                "value": format_rat(&d.value),
                "discrepancy": format_rat(&d.discrepancy()),
            }))
            .collect::<Vec<_>>(),
    })
    .to_string()
}

/// Serialized manifest of a built-in example, for the preset picker.
#[wasm_bindgen]
pub fn example_manifest(name: &str) -> String {
    match registry::example(name) {
        Some(manifest) => serialize_manifest(&manifest),
        None => error_json(vec![format!("unknown example {name:?}")]),
    }
}

/// Names of all built-in examples, one per line.
#[wasm_bindgen]
pub fn example_list() -> String {
    registry::example_names().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_reports_structure() {
        let manifest = example_manifest("pair2xZ2");
        let out: Value = serde_json::from_str(&analyze_groupoid(&manifest)).unwrap();
        assert_eq!(out["valid"], true);
        assert_eq!(out["arrows"], 16);
        assert_eq!(out["quotient"]["arrows"], 8);
        assert_eq!(out["enumerateDimension"], 4);
        assert_eq!(out["synthesized"]["verify"], true);
    }

    #[test]
    fn check_bundle_exposes_the_jump() {
        let manifest = example_manifest("drop-bundle");
        let out: Value = serde_json::from_str(&check_bundle(&manifest)).unwrap();
        assert_eq!(out["open"], false);
        assert_eq!(out["coherentExists"], false);
        let jump = &out["witness"]["discontinuities"][0];
        assert_eq!(jump["x"], "1/2");
        assert_eq!(jump["discrepancy"], "1");
    }

    #[test]
    fn evaluate_with_random_phi_is_continuous_on_open_bundles() {
        let manifest = example_manifest("isolated-drop");
        let out: Value =
            serde_json::from_str(&evaluate_bundle(&manifest, "const:1", "seed:5")).unwrap();
        assert_eq!(out["continuous"], true);
    }

    #[test]
    fn bad_input_yields_error_payload() {
        let out: Value = serde_json::from_str(&analyze_groupoid("{")).unwrap();
        assert!(out["error"].is_array());
    }
}

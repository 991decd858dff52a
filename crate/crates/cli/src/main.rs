//! Command-line surface for the haarsys toolkit.
//!
//! Exit codes: 0 for passing results, 1 for verified violations (axiom
//! failures, non-open bundles, discontinuities, broken associativity), 2 for
//! input errors. Reports are deterministic for fixed inputs and seeds; pass
//! `--json` for the machine-readable form. The `HAARSYS_VERBOSITY`
//! environment variable (`quiet`, `normal`, `verbose`) controls how many
//! witnesses the text form lists.

mod report;

use clap::{Args, Parser, Subcommand};
use haarsys::convolution::{involution, Convolution};
use haarsys::decompose::{
    isotropy_action, orbit_partition, principal_quotient, stability_groupoid,
    verify_quotient_well_defined,
};
use haarsys::generate::random_groupoid_function;
use haarsys::groupoid::FiniteGroupoid;
use haarsys::haar::{
    enumerate_invariant_systems, principal_haar_from_lambda, synthesize_haar, verify_haar,
    HaarSystem,
};
use haarsys::manifest::{
    self, bind_coherent_system, bind_haar_system, bind_lambda, bind_sheets, parse_manifest,
    serialize_manifest, FunctionPayload, Manifest, ManifestPayload,
};
use haarsys::measures::CoherentSystem;
use haarsys::piecewise::Piecewise;
use haarsys::rat::{parse_rat, Rat};
use haarsys::registry;
use haarsys::rng::SplitMix64;
use haarsys::stepbundle::{
    check_admissible, coherent_exists, evaluate_family, is_open_projection, positive_family,
    verify_continuity, SheetFunction, StepSubgroupBundle,
};
use report::{Report, Verbosity};
use std::fs;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "haarsys", version, about = "Finite groupoids and their Haar systems")]
struct Cli {
    /// Emit the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the groupoid axioms of an input, listing every violation.
    Validate(InputArg),
    /// Stability groupoid, orbits, and principal quotient of a groupoid.
    Decompose(InputArg),
    /// Haar-system operations.
    #[command(subcommand)]
    Haar(HaarCommand),
    /// Step-bundle operations.
    #[command(subcommand)]
    Bundle(BundleCommand),
    /// Convolution-algebra checks.
    #[command(subcommand)]
    Conv(ConvCommand),
    /// List the built-in examples.
    Examples,
}

#[derive(Subcommand)]
enum HaarCommand {
    /// Verify the Haar axioms of a system against a groupoid.
    Verify {
        /// Groupoid manifest path, or `example:<name>`.
        groupoid: String,
        /// System manifest path, or `counting`.
        system: String,
    },
    /// Synthesize a Haar system from an isotropy system and quotient weights.
    Synth {
        #[command(flatten)]
        input: InputArg,
        /// Coherent system: manifest path or `uniform:<p/q>`.
        #[arg(long, default_value = "uniform:1")]
        nu: String,
        /// Quotient source weights: manifest path or `const:<p/q>`.
        #[arg(long, default_value = "const:1")]
        lambda: String,
        /// Write the synthesized system manifest here.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Solve the invariance constraints exactly and report the solution span.
    Enumerate(InputArg),
}

#[derive(Subcommand)]
enum BundleCommand {
    /// Openness and coherent-existence verdict, with witnesses.
    Check(InputArg),
    /// Evaluate a family against a sheet function, with a continuity report.
    Eval {
        /// Bundle manifest path, or `example:<name>`.
        bundle: String,
        /// Scale profile: function manifest path or `const:<p/q>`.
        family: String,
        /// Sheet function manifest path.
        phi: String,
    },
}

#[derive(Subcommand)]
enum ConvCommand {
    /// Randomized associativity/involution/unit checks.
    Test {
        /// Groupoid manifest path, or `example:<name>`.
        groupoid: String,
        /// System manifest path, or `counting`.
        system: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: u32,
    },
}

#[derive(Args)]
struct InputArg {
    /// Manifest path, or `example:<name>`.
    input: Option<String>,
    /// Use a built-in example instead of a file.
    #[arg(long, conflicts_with = "input")]
    example: Option<String>,
}

/// Input problems: anything that prevents a verdict. Exit code 2.
struct InputError(Vec<String>);

impl InputError {
    fn new(message: impl Into<String>) -> Self {
        Self(vec![message.into()])
    }
}

fn load_manifest(arg: &InputArg) -> Result<Manifest, InputError> {
    let spec = match (&arg.input, &arg.example) {
        (Some(input), None) => input.clone(),
        (None, Some(example)) => format!("example:{example}"),
        _ => return Err(InputError::new("expected an input file or --example")),
    };
    load_manifest_spec(&spec)
}

fn load_manifest_spec(spec: &str) -> Result<Manifest, InputError> {
    if let Some(name) = spec.strip_prefix("example:") {
        return registry::example(name).ok_or_else(|| {
            InputError::new(format!(
                "unknown example {name:?}; available: {}",
                registry::example_names().join(", ")
            ))
        });
    }
    let text = fs::read_to_string(spec)
        .map_err(|err| InputError::new(format!("cannot read {spec}: {err}")))?;
    parse_manifest(&text)
        .map_err(|diags| InputError(diags.iter().map(ToString::to_string).collect()))
}

fn groupoid_from(manifest: Manifest) -> Result<(FiniteGroupoid, String), InputError> {
    let label = manifest.name.clone().unwrap_or_else(|| "input".into());
    match manifest.payload {
        ManifestPayload::Groupoid(g) => Ok((g, label)),
        _ => Err(InputError::new("expected a groupoid manifest")),
    }
}

fn require_valid(
    loaded: (FiniteGroupoid, String),
) -> Result<(FiniteGroupoid, String), InputError> {
    let report = loaded.0.validate();
    if !report.is_valid() {
        return Err(InputError::new(format!(
            "groupoid fails validation ({} violations); run `haarsys validate` for the list",
            report.structural.len() + report.violations.len()
        )));
    }
    Ok(loaded)
}

fn load_groupoid(arg: &InputArg) -> Result<(FiniteGroupoid, String), InputError> {
    groupoid_from(load_manifest(arg)?)
}

fn load_valid_groupoid(arg: &InputArg) -> Result<(FiniteGroupoid, String), InputError> {
    require_valid(load_groupoid(arg)?)
}

fn load_valid_groupoid_spec(spec: &str) -> Result<(FiniteGroupoid, String), InputError> {
    require_valid(groupoid_from(load_manifest_spec(spec)?)?)
}

fn bundle_from(manifest: Manifest) -> Result<(StepSubgroupBundle, String), InputError> {
    let label = manifest.name.clone().unwrap_or_else(|| "input".into());
    match manifest.payload {
        ManifestPayload::Bundle(b) => Ok((b, label)),
        _ => Err(InputError::new("expected a bundle manifest")),
    }
}

fn load_bundle(arg: &InputArg) -> Result<(StepSubgroupBundle, String), InputError> {
    bundle_from(load_manifest(arg)?)
}

fn load_haar_system(spec: &str, g: &FiniteGroupoid) -> Result<HaarSystem, InputError> {
    if spec == "counting" {
        return Ok(HaarSystem::counting(g));
    }
    let manifest = load_manifest_spec(spec)?;
    match manifest.payload {
        ManifestPayload::System(entries) => Ok(bind_haar_system(&entries, g)),
        _ => Err(InputError::new("expected a system manifest")),
    }
}

fn load_nu(spec: &str, g: &FiniteGroupoid) -> Result<CoherentSystem, InputError> {
    if let Some(scale_text) = spec.strip_prefix("uniform:") {
        let scale = parse_rat(scale_text)
            .map_err(|err| InputError::new(format!("bad --nu scale: {err}")))?;
        let bundle = stability_groupoid(g);
        return CoherentSystem::uniform(&bundle, &scale)
            .map_err(|err| InputError::new(format!("bad --nu scale: {err}")));
    }
    let manifest = load_manifest_spec(spec)?;
    match manifest.payload {
        ManifestPayload::System(entries) => Ok(bind_coherent_system(&entries, g)),
        _ => Err(InputError::new("expected a system manifest for --nu")),
    }
}

fn load_lambda(spec: &str, object_count: usize) -> Result<Vec<Rat>, InputError> {
    if let Some(value_text) = spec.strip_prefix("const:") {
        let value = parse_rat(value_text)
            .map_err(|err| InputError::new(format!("bad --lambda value: {err}")))?;
        return Ok(vec![value; object_count]);
    }
    let manifest = load_manifest_spec(spec)?;
    match manifest.payload {
        ManifestPayload::Function(FunctionPayload::Objects(weights)) => {
            Ok(bind_lambda(&weights, object_count))
        }
        _ => Err(InputError::new(
            "expected a function manifest with an `objects` payload for --lambda",
        )),
    }
}

fn load_scale(spec: &str) -> Result<Piecewise, InputError> {
    if let Some(value_text) = spec.strip_prefix("const:") {
        let value = parse_rat(value_text)
            .map_err(|err| InputError::new(format!("bad family constant: {err}")))?;
        return Ok(Piecewise::constant(value));
    }
    let manifest = load_manifest_spec(spec)?;
    match manifest.payload {
        ManifestPayload::Function(FunctionPayload::Piecewise(pw)) => Ok(pw),
        _ => Err(InputError::new(
            "expected a function manifest with a `piecewise` payload for the family",
        )),
    }
}

fn load_sheets(spec: &str) -> Result<SheetFunction, InputError> {
    let manifest = load_manifest_spec(spec)?;
    match manifest.payload {
        ManifestPayload::Function(FunctionPayload::Sheets(sheets)) => Ok(bind_sheets(&sheets)),
        _ => Err(InputError::new(
            "expected a function manifest with a `sheets` payload",
        )),
    }
}

fn run(cli: &Cli) -> Result<Report, InputError> {
    match &cli.command {
        Command::Validate(input) => {
            let (g, label) = load_groupoid(input)?;
            Ok(report::validate_report(&label, &g))
        }
        Command::Decompose(input) => {
            let (g, label) = load_valid_groupoid(input)?;
            let bundle = stability_groupoid(&g);
            let orbits = orbit_partition(&g);
            let quotient = principal_quotient(&g);
            let well_defined = verify_quotient_well_defined(&g, &quotient);
            let free = isotropy_action(&g).verify_free_proper();
            Ok(report::decompose_report(
                &label,
                &g,
                &bundle,
                &orbits,
                &quotient,
                well_defined,
                &free,
            ))
        }
        Command::Haar(HaarCommand::Verify { groupoid, system }) => {
            let (g, label) = groupoid_from(load_manifest_spec(groupoid)?)?;
            let candidate = load_haar_system(system, &g)?;
            let verification = verify_haar(&g, &candidate);
            Ok(report::haar_verify_report(&label, &verification))
        }
        Command::Haar(HaarCommand::Synth {
            input,
            nu,
            lambda,
            out,
        }) => {
            let (g, label) = load_valid_groupoid(input)?;
            let nu_system = load_nu(nu, &g)?;
            let lambda_values = load_lambda(lambda, g.object_count())?;
            let quotient = principal_quotient(&g);
            let principal = principal_haar_from_lambda(&quotient, &lambda_values)
                .map_err(|err| InputError::new(err.to_string()))?;
            let system = synthesize_haar(&g, &nu_system, &principal)
                .map_err(|err| InputError::new(err.to_string()))?;
            let verification = verify_haar(&g, &system);
            let manifest = Manifest {
                name: Some(format!("{label}-haar")),
                seed: None,
                payload: ManifestPayload::System(manifest::system_entries(&system)),
            };
            let serialized = serialize_manifest(&manifest);
            if let Some(path) = out {
                fs::write(path, &serialized).map_err(|err| {
                    InputError::new(format!("cannot write {}: {err}", path.display()))
                })?;
            }
            Ok(report::synth_report(
                &label,
                &g,
                &system,
                &verification,
                out.as_deref(),
            ))
        }
        Command::Haar(HaarCommand::Enumerate(input)) => {
            let (g, label) = load_valid_groupoid(input)?;
            let systems = enumerate_invariant_systems(&g)
                .map_err(|err| InputError::new(err.to_string()))?;
            Ok(report::enumerate_report(&label, &g, &systems))
        }
        Command::Bundle(BundleCommand::Check(input)) => {
            let (bundle, label) = load_bundle(input)?;
            let openness = is_open_projection(&bundle);
            let coherence = coherent_exists(&bundle);
            // exhibit the jump under the unit-scale family when non-open
            let jump = coherence.witness_function.as_ref().map(|phi| {
                let family = positive_family(&Piecewise::constant(Rat::from_integer(1.into())))
                    .expect("constant 1 is a valid scale");
                let value =
                    evaluate_family(&bundle, &family, phi).expect("witness function is admissible");
                verify_continuity(&value)
            });
            Ok(report::bundle_check_report(
                &label, &bundle, &openness, &coherence, jump,
            ))
        }
        Command::Bundle(BundleCommand::Eval { bundle, family, phi }) => {
            let (bundle, label) = bundle_from(load_manifest_spec(bundle)?)?;
            let scale = load_scale(family)?;
            let family = positive_family(&scale).map_err(|err| InputError::new(err.to_string()))?;
            let sheets = load_sheets(phi)?;
            let violations = check_admissible(&bundle, &sheets);
            if !violations.is_empty() {
                return Err(InputError(
                    violations
                        .iter()
                        .map(|v| format!("inadmissible sheet function: {v:?}"))
                        .collect(),
                ));
            }
            let value =
                evaluate_family(&bundle, &family, &sheets).expect("admissibility already checked");
            let defects = verify_continuity(&value);
            Ok(report::bundle_eval_report(&label, &value, &defects))
        }
        Command::Conv(ConvCommand::Test {
            groupoid,
            system,
            seed,
            trials,
        }) => {
            let (g, label) = load_valid_groupoid_spec(groupoid)?;
            let candidate = load_haar_system(system, &g)?;
            let haar_report = verify_haar(&g, &candidate);
            if !haar_report.is_valid() {
                return Err(InputError::new(
                    "system fails the Haar axioms; convolution is not associative without them",
                ));
            }
            let conv = Convolution::new(&g, &candidate).expect("verified above");
            let mut rng = SplitMix64::new(*seed);
            let mut assoc_failures = Vec::new();
            let mut involution_failures = 0u32;
            let mut unit_failures = 0u32;
            let delta = conv.unit();
            for trial in 0..*trials {
                let f = random_groupoid_function(&mut rng, &g);
                let h = random_groupoid_function(&mut rng, &g);
                let k = random_groupoid_function(&mut rng, &g);
                let bad = conv.check_associativity(&f, &h, &k);
                if !bad.is_empty() {
                    assoc_failures.push((trial, bad));
                }
                let lhs = involution(&g, &conv.convolve(&f, &h));
                let rhs = conv.convolve(&involution(&g, &h), &involution(&g, &f));
                if lhs != rhs {
                    involution_failures += 1;
                }
                if conv.convolve(&f, &delta) != f || conv.convolve(&delta, &f) != f {
                    unit_failures += 1;
                }
            }
            Ok(report::conv_report(
                &label,
                *seed,
                *trials,
                &assoc_failures,
                involution_failures,
                unit_failures,
            ))
        }
        Command::Examples => Ok(report::examples_report(&registry::example_names())),
    }
}

fn verbosity() -> Verbosity {
    match std::env::var("HAARSYS_VERBOSITY").as_deref() {
        Ok("quiet") => Verbosity::Quiet,
        Ok("verbose") => Verbosity::Verbose,
        _ => Verbosity::Normal,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text(verbosity()));
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(messages)) => {
            for message in messages {
                eprintln!("error: {message}");
            }
            ExitCode::from(2)
        }
    }
}

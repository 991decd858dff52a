//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Everything is exact rational arithmetic; no tolerances anywhere.
//!
//! Run with `cargo test -p haarsys-cli --test acceptance -- --nocapture`.

use haarsys::construct::{disjoint_union, group_bundle, pair_groupoid, product_groupoid};
use haarsys::decompose::principal_quotient;
use haarsys::generate::{
    action_catalog, random_admissible, random_bundle, random_groupoid_function, random_lambda,
    random_positive_scale, standard_family,
};
use haarsys::group::GroupTable;
use haarsys::groupoid::{ArrowId, AxiomViolation, FiniteGroupoid, ObjectId};
use haarsys::haar::{
    enumerate_invariant_systems, principal_haar_from_lambda, support_check, synthesize_haar,
    synthesize_weights, verify_haar, weights_are_invariant, HaarSystem,
};
use haarsys::linalg;
use haarsys::manifest::{system_entries, Manifest, ManifestPayload};
use haarsys::measures::{verify_coherent, verify_unique_up_to_scale, CoherentSystem};
use haarsys::rat::{int, Rat};
use haarsys::rng::SplitMix64;
use haarsys::stepbundle::{
    build_coherent, check_admissible, coherent_exists, evaluate_family, is_open_projection,
    positive_family, verify_continuity, StepSubgroupBundle,
};
use haarsys::{convolution::Convolution, decompose::stability_groupoid};
use haarsys::piecewise::Piecewise;
use std::panic::AssertUnwindSafe;
use std::process::Command;
use std::time::{Duration, Instant};

fn criterion(number: u32, label: &str, limit: Option<Duration>, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
    println!("acceptance criterion {number:2} ({label}): {status} [{elapsed:.2?}]");
    if let Err(panic) = outcome {
        std::panic::resume_unwind(panic);
    }
    if let Some(limit) = limit {
        assert!(
            elapsed <= limit,
            "criterion {number} took {elapsed:?}, over the {limit:?} budget"
        );
    }
}

/// Constructors used by criterion 1, all expected valid.
fn builtin_groupoids() -> Vec<(String, FiniteGroupoid)> {
    let mut list: Vec<(String, FiniteGroupoid)> = Vec::new();
    for n in 1..=6 {
        list.push((format!("pair{n}"), pair_groupoid(n)));
    }
    let groups: Vec<(&str, GroupTable)> = haarsys::generate::small_groups();
    let by_name = |name: &str| {
        groups
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t.clone())
            .unwrap()
    };
    for fibers in [
        vec!["Z2"],
        vec!["S3"],
        vec!["Q8"],
        vec!["Z2", "Z3", "Z4", "D4"],
        vec!["Z8", "1"],
        vec!["V4", "Z6", "Z2xZ2xZ2"],
    ] {
        let tables: Vec<GroupTable> = fibers.iter().map(|n| by_name(n)).collect();
        list.push((format!("bundle-{}", fibers.join("-")), group_bundle(&tables)));
    }
    for (name, g) in action_catalog() {
        list.push((format!("action-{name}"), g));
    }
    list.push((
        "pair2xbundle".into(),
        product_groupoid(&pair_groupoid(2), &group_bundle(&[by_name("Z2"), by_name("Z2")])),
    ));
    list.push((
        "pair3xS3".into(),
        product_groupoid(&pair_groupoid(3), &group_bundle(&[by_name("S3")])),
    ));
    list
}

#[test]
fn criterion_01_groupoid_axioms() {
    criterion(1, "groupoid axioms", Some(Duration::from_secs(5)), || {
        for (name, g) in builtin_groupoids() {
            assert!(g.validate().is_valid(), "{name} should be valid");
        }

        // twenty mutation-injected variants, each with its expected witness
        type Check = Box<dyn Fn(&[AxiomViolation]) -> bool>;
        let mut mutations: Vec<(String, FiniteGroupoid, Check)> = Vec::new();
        let bases: Vec<(String, FiniteGroupoid)> = vec![
            ("pair3".into(), pair_groupoid(3)),
            ("pair4".into(), pair_groupoid(4)),
            ("bundle-z4".into(), group_bundle(&[GroupTable::cyclic(4)])),
            ("bundle-s3".into(), group_bundle(&[GroupTable::symmetric3()])),
            (
                "pair2xZ2".into(),
                product_groupoid(
                    &pair_groupoid(2),
                    &group_bundle(&[GroupTable::cyclic(2), GroupTable::cyclic(2)]),
                ),
            ),
        ];
        for (name, base) in &bases {
            // redirect an inverse entry
            let mut data = base.to_data();
            let victim = data.inverse[1].0;
            data.inverse[1].1 = data.inverse[(data.inverse.len() - 1).min(2)].1;
            if base.inverse(ArrowId(victim)) != ArrowId(data.inverse[1].1) {
                let expected = ArrowId(victim);
                mutations.push((
                    format!("{name}-bad-inverse"),
                    FiniteGroupoid::from_data(&data).unwrap(),
                    Box::new(move |violations| {
                        violations
                            .iter()
                            .any(|v| matches!(v, AxiomViolation::InverseLaw { arrow, .. } if *arrow == expected))
                    }),
                ));
            }

            // remove a composition entry
            let mut data = base.to_data();
            let (a, b, _) = data.compose.remove(base.arrow_count().min(3));
            mutations.push((
                format!("{name}-missing-compose"),
                FiniteGroupoid::from_data(&data).unwrap(),
                Box::new(move |violations| {
                    violations.iter().any(|v| {
                        matches!(v, AxiomViolation::ComposeMissing { left, right }
                            if *left == ArrowId(a) && *right == ArrowId(b))
                    })
                }),
            ));

            // add a spurious entry on a non-composable pair, if one exists
            let spurious = base.arrow_ids().find_map(|x| {
                base.arrow_ids()
                    .find(|&y| base.source(x) != base.range(y))
                    .map(|y| (x, y))
            });
            if let Some((x, y)) = spurious {
                let mut data = base.to_data();
                data.compose.push((x.0, y.0, 0));
                mutations.push((
                    format!("{name}-spurious-compose"),
                    FiniteGroupoid::from_data(&data).unwrap(),
                    Box::new(move |violations| {
                        violations.iter().any(|v| {
                            matches!(v, AxiomViolation::ComposeNotComposable { left, right }
                                if *left == x && *right == y)
                        })
                    }),
                ));
            }

            // retarget a composition to an arrow with the wrong endpoints
            let retarget = base.composable_pairs().into_iter().find_map(|(a, b)| {
                let ab = base.compose(a, b).unwrap();
                base.arrow_ids()
                    .find(|&k| {
                        base.range(k) != base.range(ab) || base.source(k) != base.source(ab)
                    })
                    .map(|k| (a, b, k))
            });
            if let Some((a, b, k)) = retarget {
                let mut data = base.to_data();
                let entry = data
                    .compose
                    .iter_mut()
                    .find(|(x, y, _)| *x == a.0 && *y == b.0)
                    .unwrap();
                entry.2 = k.0;
                mutations.push((
                    format!("{name}-wrong-endpoints"),
                    FiniteGroupoid::from_data(&data).unwrap(),
                    Box::new(move |violations| {
                        violations.iter().any(|v| {
                            matches!(v, AxiomViolation::CompositeEndpoints { left, right, .. }
                                if *left == a && *right == b)
                        })
                    }),
                ));
            }

            // redirect an identity entry
            let replacement = base
                .arrow_ids()
                .find(|&a| a != base.identity(ObjectId(0)))
                .expect("bases have at least two arrows");
            let mut data = base.to_data();
            data.identity[0].1 = replacement.0;
            let arrow = base.arrow(replacement);
            let expect_endpoints = arrow.src != ObjectId(0) || arrow.dst != ObjectId(0);
            mutations.push((
                format!("{name}-bad-identity"),
                FiniteGroupoid::from_data(&data).unwrap(),
                Box::new(move |violations| {
                    if expect_endpoints {
                        violations.iter().any(|v| {
                            matches!(v, AxiomViolation::IdentityEndpoints { object, .. }
                                if *object == ObjectId(0))
                        })
                    } else {
                        violations
                            .iter()
                            .any(|v| matches!(v, AxiomViolation::IdentityNotNeutral { .. }))
                    }
                }),
            ));
        }
        assert!(
            mutations.len() >= 20,
            "only {} mutation variants",
            mutations.len()
        );
        for (name, broken, check) in mutations.into_iter().take(20) {
            let report = broken.validate();
            assert!(!report.is_valid(), "{name} should fail validation");
            assert!(
                check(&report.violations),
                "{name}: expected witness missing from {:?}",
                report.violations
            );
        }
    });
}

/// The synthesis inputs used by criteria 2, 3, 6 and 8: a seeded uniform
/// coherent system and random positive lambda per instance.
fn synthesis_inputs(
    g: &FiniteGroupoid,
    rng: &mut SplitMix64,
) -> (CoherentSystem, haarsys::haar::PrincipalHaar, HaarSystem) {
    let bundle = stability_groupoid(g);
    let nu = CoherentSystem::uniform(&bundle, &rng.positive_rat()).expect("positive scale");
    let quotient = principal_quotient(g);
    let lambda = random_lambda(rng, g.object_count());
    let principal = principal_haar_from_lambda(&quotient, &lambda).expect("positive lambda");
    let system = synthesize_haar(g, &nu, &principal).expect("preconditions hold");
    (nu, principal, system)
}

#[test]
fn criterion_02_synthesis_passes_verification() {
    criterion(2, "Haar synthesis", Some(Duration::from_secs(30)), || {
        let family = standard_family();
        let named_kinds = family
            .iter()
            .filter(|(name, _)| {
                (name.starts_with("pair") && name.contains('x')) || name.starts_with("act-")
            })
            .count();
        assert!(
            named_kinds >= 100,
            "need at least 100 product/action instances, have {named_kinds}"
        );
        let mut rng = SplitMix64::new(0xC2);
        for (name, g) in &family {
            let bundle = stability_groupoid(g);
            let (nu, _, system) = synthesis_inputs(g, &mut rng);
            assert!(
                verify_coherent(g, &nu, &bundle).is_valid(),
                "{name}: nu must be coherent"
            );
            let report = verify_haar(g, &system);
            assert!(
                report.is_valid(),
                "{name}: synthesized system fails verify_haar: {report:?}"
            );
        }
    });
}

#[test]
fn criterion_03_representative_independence() {
    criterion(3, "representative independence", None, || {
        let family = standard_family();
        let mut rng = SplitMix64::new(0xC3);
        for (name, g) in &family {
            let (nu, principal, system) = synthesis_inputs(g, &mut rng);
            let reference = serialize_system(&system);
            let quotient = &principal.quotient;
            for _ in 0..100 {
                let reps: Vec<ArrowId> = quotient
                    .groupoid
                    .arrow_ids()
                    .map(|c| {
                        let members = quotient.members(c, g);
                        members[rng.below(members.len())]
                    })
                    .collect();
                let shuffled = quotient.with_representatives(reps);
                let resynth = synthesize_weights(g, &nu, &shuffled, &principal.system);
                assert_eq!(
                    serialize_system(&resynth),
                    reference,
                    "{name}: weights depend on the representative choice"
                );
            }
        }
    });
}

fn serialize_system(system: &HaarSystem) -> String {
    let manifest = Manifest {
        name: None,
        seed: None,
        payload: ManifestPayload::System(system_entries(system)),
    };
    haarsys::manifest::serialize_manifest(&manifest)
}

#[test]
fn criterion_04_oracle_equivalence() {
    criterion(4, "oracle equivalence", None, || {
        let mut rng = SplitMix64::new(0xC4);
        let mut checked = 0;
        for (name, g) in standard_family() {
            if g.arrow_count() > 30 || g.arrow_count() == 0 {
                continue;
            }
            checked += 1;
            let systems = enumerate_invariant_systems(&g).unwrap();
            assert_eq!(
                systems.dimension,
                g.object_count(),
                "{name}: solution dimension"
            );
            // membership, forward: synthesized systems solve the constraints
            let quotient = principal_quotient(&g);
            let bundle = stability_groupoid(&g);
            for _ in 0..3 {
                let nu = CoherentSystem::uniform(&bundle, &rng.positive_rat()).unwrap();
                let lambda = random_lambda(&mut rng, g.object_count());
                let principal = principal_haar_from_lambda(&quotient, &lambda).unwrap();
                let system = synthesize_haar(&g, &nu, &principal).unwrap();
                let weights = system.weight_vector(&g);
                assert!(
                    weights_are_invariant(&g, &weights),
                    "{name}: synthesized system violates the linear system"
                );
                assert!(
                    linalg::in_span(&systems.basis, &weights),
                    "{name}: synthesized system outside the solution span"
                );
                assert!(weights.iter().all(|w| *w > int(0)));
            }
            // membership, backward: the solution span is generated by
            // synthesized systems (lambda = 1 + e_x, unit nu)
            let nu = CoherentSystem::uniform(&bundle, &int(1)).unwrap();
            let generators: Vec<Vec<Rat>> = (0..g.object_count())
                .map(|x| {
                    let mut lambda = vec![int(1); g.object_count()];
                    lambda[x] = int(2);
                    let principal = principal_haar_from_lambda(&quotient, &lambda).unwrap();
                    synthesize_haar(&g, &nu, &principal)
                        .unwrap()
                        .weight_vector(&g)
                })
                .collect();
            for basis_vector in &systems.basis {
                assert!(
                    linalg::in_span(&generators, basis_vector),
                    "{name}: oracle basis vector not reachable by synthesis"
                );
            }
        }
        assert!(checked >= 20, "only {checked} small instances checked");
    });
}

#[test]
fn criterion_05_principal_characterization() {
    criterion(5, "principal characterization", None, || {
        let mut principals: Vec<(String, FiniteGroupoid)> = (1..=5)
            .map(|n| (format!("pair{n}"), pair_groupoid(n)))
            .collect();
        principals.push((
            "pair2+pair3".into(),
            disjoint_union(&pair_groupoid(2), &pair_groupoid(3)),
        ));
        principals.push((
            "pair1+pair4".into(),
            disjoint_union(&pair_groupoid(1), &pair_groupoid(4)),
        ));
        principals.push((
            "pair2+pair2+pair1".into(),
            disjoint_union(
                &disjoint_union(&pair_groupoid(2), &pair_groupoid(2)),
                &pair_groupoid(1),
            ),
        ));
        let mut rng = SplitMix64::new(0xC5);
        for (name, g) in principals {
            let quotient = principal_quotient(&g);
            assert_eq!(quotient.groupoid, g, "{name} is already principal");

            // every lambda yields a Haar system
            for _ in 0..3 {
                let lambda = random_lambda(&mut rng, g.object_count());
                let principal = principal_haar_from_lambda(&quotient, &lambda).unwrap();
                assert!(
                    verify_haar(&g, &principal.system).is_valid(),
                    "{name}: lambda system fails"
                );
            }

            // and the lambda family is exactly the solution space
            let systems = enumerate_invariant_systems(&g).unwrap();
            assert_eq!(systems.dimension, g.object_count(), "{name}: dimension");
            let generators: Vec<Vec<Rat>> = (0..g.object_count())
                .map(|x| {
                    let mut lambda = vec![int(1); g.object_count()];
                    lambda[x] = int(2);
                    principal_haar_from_lambda(&quotient, &lambda)
                        .unwrap()
                        .system
                        .weight_vector(&g)
                })
                .collect();
            for basis_vector in &systems.basis {
                assert!(
                    linalg::in_span(&generators, basis_vector),
                    "{name}: basis not in the lambda family span"
                );
            }
            for generator in &generators {
                assert!(
                    linalg::in_span(&systems.basis, generator),
                    "{name}: lambda system outside the solution span"
                );
            }
        }
    });
}

#[test]
fn criterion_06_uniqueness_up_to_scale() {
    criterion(6, "uniqueness up to scale", None, || {
        let mut rng = SplitMix64::new(0xC6);
        for (name, g) in standard_family() {
            if g.arrow_count() == 0 {
                continue;
            }
            let bundle = stability_groupoid(&g);
            let nu = CoherentSystem::uniform(&bundle, &rng.positive_rat()).unwrap();
            let quotient = principal_quotient(&g);
            for class in quotient.groupoid.arrow_ids() {
                let report =
                    verify_unique_up_to_scale(&g, &nu, quotient.representative(class));
                assert_eq!(
                    report.dimension, 1,
                    "{name}: class {class:?} has invariant dimension != 1"
                );
                assert!(
                    report.class_measure_in_space,
                    "{name}: class measure not in the solution space"
                );
            }
        }
    });
}

#[test]
fn criterion_07_openness_and_coherence() {
    criterion(7, "bundle openness", Some(Duration::from_secs(60)), || {
        let mut rng = SplitMix64::new(0xC7);
        let mut bundles: Vec<(String, StepSubgroupBundle)> = (0..200)
            .map(|i| (format!("random-{i}"), random_bundle(&mut rng)))
            .collect();
        for name in ["drop-bundle", "isolated-drop"] {
            let Some(Manifest {
                payload: ManifestPayload::Bundle(bundle),
                ..
            }) = haarsys::registry::example(name)
            else {
                panic!("{name} is a bundle example");
            };
            bundles.push((name.into(), bundle));
        }
        let mut open_count = 0;
        let mut closed_count = 0;
        for (name, bundle) in &bundles {
            let openness = is_open_projection(bundle);
            let verdict = coherent_exists(bundle);
            assert_eq!(
                openness.open, verdict.exists,
                "{name}: the two verdicts disagree"
            );
            if openness.open {
                open_count += 1;
                let scale = random_positive_scale(&mut rng);
                let family = build_coherent(bundle, &scale).expect("open bundle");
                for _ in 0..20 {
                    let phi = random_admissible(&mut rng, bundle);
                    assert!(
                        check_admissible(bundle, &phi).is_empty(),
                        "{name}: generated phi must be admissible"
                    );
                    let value = evaluate_family(bundle, &family, &phi).unwrap();
                    let defects = verify_continuity(&value);
                    assert!(
                        defects.is_empty(),
                        "{name}: coherent family produced a discontinuity: {defects:?}"
                    );
                }
            } else {
                closed_count += 1;
                let phi = verdict.witness_function.as_ref().expect("witness provided");
                assert!(check_admissible(bundle, phi).is_empty());
                let family =
                    positive_family(&Piecewise::constant(int(1))).expect("unit scale");
                let value = evaluate_family(bundle, &family, phi).unwrap();
                let defects = verify_continuity(&value);
                assert!(
                    !defects.is_empty(),
                    "{name}: non-open bundle must show a jump"
                );
                assert!(
                    defects.iter().any(|d| d.discrepancy() != int(0)),
                    "{name}: discrepancy must be nonzero"
                );
            }
        }
        assert_eq!(bundles.len(), 202);
        assert!(open_count >= 30, "too few open bundles: {open_count}");
        assert!(closed_count >= 30, "too few non-open bundles: {closed_count}");
        // the named fixtures land on their documented sides
        assert!(!is_open_projection(&bundles[200].1).open);
        assert!(is_open_projection(&bundles[201].1).open);
    });
}

#[test]
fn criterion_08_convolution_associativity() {
    criterion(8, "convolution associativity", None, || {
        let mut rng = SplitMix64::new(0xC8);
        let family = standard_family();
        for (name, g) in &family {
            if g.arrow_count() == 0 {
                continue;
            }
            let (_, _, system) = synthesis_inputs(g, &mut rng);
            let conv = Convolution::new(g, &system)
                .unwrap_or_else(|report| panic!("{name}: not Haar: {report:?}"));
            for trial in 0..50 {
                let f = random_groupoid_function(&mut rng, g);
                let h = random_groupoid_function(&mut rng, g);
                let k = random_groupoid_function(&mut rng, g);
                let bad = conv.check_associativity(&f, &h, &k);
                assert!(
                    bad.is_empty(),
                    "{name}: associativity failed on trial {trial}"
                );
            }
        }

        // ten perturbed, non-invariant systems: associativity must break
        let mut perturbed = 0;
        for (name, g) in &family {
            if perturbed == 10 {
                break;
            }
            if g.arrow_count() < 4 || g.arrow_count() > 30 {
                continue;
            }
            let mut system = HaarSystem::counting(g);
            // double one weight in a fiber with at least two arrows
            let Some(x) = g.objects().find(|&x| g.range_fiber(x).len() >= 2) else {
                continue;
            };
            let victim = g.range_fiber(x)[0];
            system.fibers[x.index()]
                .weights
                .insert(victim, int(2));
            if verify_haar(g, &system).is_valid() {
                continue;
            }
            perturbed += 1;
            let conv = Convolution::unchecked(g, &system);
            let mut found = false;
            for _ in 0..200 {
                let f = random_groupoid_function(&mut rng, g);
                let h = random_groupoid_function(&mut rng, g);
                let k = random_groupoid_function(&mut rng, g);
                if !conv.check_associativity(&f, &h, &k).is_empty() {
                    found = true;
                    break;
                }
            }
            assert!(
                found,
                "{name}: no associativity counterexample in 200 trials"
            );
        }
        assert_eq!(perturbed, 10, "need exactly ten perturbed systems");
    });
}

#[test]
fn criterion_09_support_diagnostics() {
    criterion(9, "support diagnostics", None, || {
        let mut cases: Vec<(String, FiniteGroupoid, HaarSystem, Vec<(ObjectId, ArrowId)>)> =
            Vec::new();

        // single zeroed arrows on five groupoids
        for (i, (name, g)) in standard_family().into_iter().take(5).enumerate() {
            let victim = ArrowId((i as u32) % g.arrow_count() as u32);
            let mut system = HaarSystem::counting(&g);
            system.fibers[g.range(victim).index()]
                .weights
                .insert(victim, int(0));
            let expected = vec![(g.range(victim), victim)];
            cases.push((format!("zeroed-{name}"), g, system, expected));
        }

        // a whole fiber zeroed
        let g = pair_groupoid(3);
        let mut system = HaarSystem::counting(&g);
        let x = ObjectId(1);
        for &a in g.range_fiber(x) {
            system.fibers[x.index()].weights.insert(a, int(0));
        }
        let expected: Vec<_> = g.range_fiber(x).iter().map(|&a| (x, a)).collect();
        cases.push(("fiber-zero-pair3".into(), g, system, expected));

        // an object with no weights at all
        let g = pair_groupoid(2);
        let mut system = HaarSystem::counting(&g);
        system.fibers[0].weights.clear();
        let expected: Vec<_> = g
            .range_fiber(ObjectId(0))
            .iter()
            .map(|&a| (ObjectId(0), a))
            .collect();
        cases.push(("missing-weights-pair2".into(), g, system, expected));

        // invariant-but-degenerate: zero on one whole orbit of a union
        for (combo, label) in [
            ((2usize, 2usize), "union22"),
            ((2, 3), "union23"),
            ((3, 1), "union31"),
        ] {
            let g = disjoint_union(&pair_groupoid(combo.0), &pair_groupoid(combo.1));
            let cutoff = combo.0 as u32;
            let weights: Vec<Rat> = g
                .arrow_ids()
                .map(|a| if g.source(a).0 < cutoff { int(1) } else { int(0) })
                .collect();
            assert!(weights_are_invariant(&g, &weights), "{label}: degenerate candidate stays invariant");
            let system = HaarSystem::from_weight_fn(&g, |a| weights[a.index()].clone());
            let expected: Vec<_> = g
                .objects()
                .filter(|x| x.0 >= cutoff)
                .flat_map(|x| g.range_fiber(x).iter().map(move |&a| (x, a)))
                .collect();
            cases.push((format!("orbit-zero-{label}"), g, system, expected));
        }

        assert_eq!(cases.len(), 10);
        for (name, g, system, expected) in cases {
            assert_eq!(
                support_check(&g, &system),
                expected,
                "{name}: support diagnostics mismatch"
            );
            // the counting system on the same groupoid is clean
            assert!(support_check(&g, &HaarSystem::counting(&g)).is_empty());
        }
    });
}

#[test]
fn criterion_10_cli_end_to_end() {
    criterion(10, "CLI end to end", None, || {
        let binary = env!("CARGO_BIN_EXE_haarsys");
        let run = |args: &[&str]| {
            let output = Command::new(binary)
                .args(args)
                .env_remove("HAARSYS_VERBOSITY")
                .output()
                .expect("binary runs");
            (
                output.status.code().expect("exit code"),
                String::from_utf8(output.stdout).expect("utf8 stdout"),
            )
        };

        // documented example 1: synthesis over pair2xZ2 succeeds, exit 0
        let (code, stdout) = run(&[
            "haar",
            "synth",
            "--example",
            "pair2xZ2",
            "--nu",
            "uniform:1",
            "--lambda",
            "const:1",
            "--json",
        ]);
        assert_eq!(code, 0);
        assert_eq!(
            stdout.trim_end(),
            include_str!("golden/synth_pair2xZ2.json").trim_end()
        );
        // determinism: identical bytes on a second run
        let (_, again) = run(&[
            "haar",
            "synth",
            "--example",
            "pair2xZ2",
            "--nu",
            "uniform:1",
            "--lambda",
            "const:1",
            "--json",
        ]);
        assert_eq!(stdout, again);

        // documented example 2: the drop bundle is not open, exit 1
        let (code, stdout) = run(&["bundle", "check", "--example", "drop-bundle", "--json"]);
        assert_eq!(code, 1);
        assert_eq!(
            stdout.trim_end(),
            include_str!("golden/check_drop_bundle.json").trim_end()
        );

        // documented example 3: a broken groupoid fails validation, exit 1
        let (code, stdout) = run(&["validate", "--example", "broken-pair3", "--json"]);
        assert_eq!(code, 1);
        assert_eq!(
            stdout.trim_end(),
            include_str!("golden/validate_broken_pair3.json").trim_end()
        );

        // the text form of example 2 names the witness breakpoint
        let (code, stdout) = run(&["bundle", "check", "--example", "drop-bundle"]);
        assert_eq!(code, 1);
        assert!(stdout.contains("NOT open"));
        assert!(stdout.contains("witness at 1/2"));

        // unknown example is an input error, exit 2
        let (code, _) = run(&["validate", "--example", "no-such-example"]);
        assert_eq!(code, 2);
    });
}

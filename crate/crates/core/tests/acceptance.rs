//! Acceptance suite: one test per criterion, exact tolerances throughout.
//! Run with `cargo test -p crossmod --test acceptance -- --nocapture` to see
//! the per-criterion PASS lines.

use crossmod::algebra::{FiniteCrossedModule, FiniteGroup, GroupHom};
use crossmod::corpus;
use crossmod::kwb::{
    check_consistency, count_colorings_jobs, extract_presentation, invariant_from_diagram,
};
use crossmod::presentation::{
    count_homs, count_homs_jobs, free_product, invariant, stabilize, CrossedModulePresentation,
};
use crossmod::ExactRational;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coeff(name: &str) -> FiniteCrossedModule {
    corpus::coefficient(name).unwrap()
}

fn frac(n: u64, d: u64) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

fn all_coefficients() -> Vec<(&'static str, FiniteCrossedModule)> {
    corpus::coefficient_names().into_iter().map(|n| (n, coeff(n))).collect()
}

fn all_presentations() -> Vec<(&'static str, CrossedModulePresentation)> {
    corpus::diagram_names()
        .into_iter()
        .map(|n| (n, corpus::presentation(n).unwrap()))
        .collect()
}

fn pass(n: u32, what: &str) {
    println!("criterion {n:02} PASS: {what}");
}

#[test]
fn criterion_01_spun_trefoil_four_thirds_both_paths() {
    let a = coeff("A");
    let d = corpus::diagram("spun_trefoil").unwrap();
    let via_diagram = invariant_from_diagram(&d, &a);
    let via_presentation = invariant(&extract_presentation(&d).unwrap(), &a).unwrap();
    let via_reduced = invariant(&corpus::presentation("spun_trefoil").unwrap(), &a).unwrap();
    assert_eq!(via_diagram, frac(4, 3));
    assert_eq!(via_presentation, frac(4, 3));
    assert_eq!(via_reduced, frac(4, 3));
    pass(1, "spun trefoil invariant is 4/3 via diagram and presentation paths");
}

#[test]
fn criterion_02_trivial_spheres() {
    let a = coeff("A");
    let spheres = ["trivial_sphere_K1", "trivial_sphere_K2", "trivial_sphere_K3"];
    for name in spheres {
        assert_eq!(invariant_from_diagram(&corpus::diagram(name).unwrap(), &a), frac(2, 3), "{name}");
    }
    let coeffs = all_coefficients();
    assert!(coeffs.len() >= 4);
    for name in spheres {
        let p = corpus::presentation(name).unwrap();
        let d = corpus::diagram(name).unwrap();
        for (cname, cm) in &coeffs {
            let expected = ExactRational::new(
                cm.base().order().into(),
                cm.principal().order().into(),
            );
            assert_eq!(invariant(&p, cm).unwrap(), expected, "{name} x {cname}");
            assert_eq!(invariant_from_diagram(&d, cm), expected, "{name} x {cname}");
        }
    }
    pass(2, "trivial spheres give 2/3 against A and #G/#E against all four coefficients");
}

#[test]
fn criterion_03_spun_hopf_and_sigma_prime_are_separated() {
    let a = coeff("A");
    let hopf = invariant_from_diagram(&corpus::diagram("spun_hopf").unwrap(), &a);
    let prime = invariant_from_diagram(&corpus::diagram("sigma_prime").unwrap(), &a);
    assert_eq!(hopf, frac(18, 1));
    assert_eq!(prime, frac(24, 1));
    assert_ne!(hopf, prime);
    pass(3, "spun Hopf link gives 18 and sigma' gives 24: same pi_1, separated invariants");
}

#[test]
fn criterion_04_trivial_torus_pair_closed_formula() {
    for (cname, cm) in all_coefficients() {
        let g = cm.base().order() as u64;
        let k = cm.kernel_size() as u64;
        let e = cm.principal().order() as u64;
        let single = ExactRational::new((g * k * k).into(), e.into());
        let pair = single.mul(&single);
        let d = corpus::diagram("trivial_torus_pair").unwrap();
        let p = corpus::presentation("trivial_torus_pair").unwrap();
        assert_eq!(invariant_from_diagram(&d, &cm), pair, "{cname} (diagram)");
        assert_eq!(invariant(&p, &cm).unwrap(), pair, "{cname} (presentation)");
        let ds = corpus::diagram("trivial_torus").unwrap();
        assert_eq!(invariant_from_diagram(&ds, &cm), single, "{cname} (single torus)");
    }
    let a = coeff("A");
    assert_eq!(
        invariant_from_diagram(&corpus::diagram("trivial_torus_pair").unwrap(), &a),
        frac(36, 1)
    );
    pass(4, "trivial torus pair matches ((#G)(#ker d)^2/#E)^2 for every coefficient; 36 against A");
}

#[test]
fn criterion_05_abelian_closed_form_cross_check() {
    // For abelian G with trivial boundary, the spun trefoil count reduces to
    // a two-variable search: #{(X, f) : (X>f)(X^2>f^-1)(X^3>f) = 1} · #E.
    let p = corpus::presentation("spun_trefoil").unwrap();
    let mut checked = 0;
    for (cname, cm) in all_coefficients() {
        let g = cm.base();
        let e = cm.principal();
        let trivial_boundary = (0..e.order()).all(|x| cm.boundary(x) == g.identity());
        if !g.is_abelian() || !trivial_boundary {
            continue;
        }
        checked += 1;
        let mut pairs = 0u64;
        for x in 0..g.order() {
            let x2 = g.mul(x, x);
            let x3 = g.mul(x2, x);
            for f in 0..e.order() {
                let v = e.mul(e.mul(cm.act(x, f), e.inv(cm.act(x2, f))), cm.act(x3, f));
                if v == e.identity() {
                    pairs += 1;
                }
            }
        }
        let engine = count_homs(&p, &cm).unwrap();
        assert_eq!(engine, BigUint::from(pairs) * e.order(), "{cname}");
        assert_eq!(invariant(&p, &cm).unwrap(), ExactRational::new(pairs.into(), (e.order() as u64).into()), "{cname}");
    }
    assert!(checked >= 3, "expected at least A, z2_z4_sign, trivial to qualify");
    pass(5, "spun trefoil engine count equals the independent two-loop brute force on every abelian trivial-boundary coefficient");
}

#[test]
fn criterion_06_stabilization_invariance() {
    for (pname, p) in all_presentations() {
        for (cname, cm) in all_coefficients() {
            let reference = invariant(&p, &cm).unwrap();
            let mut s = p.clone();
            for k in 1..=3 {
                s = stabilize(&s);
                assert_eq!(
                    invariant(&s, &cm).unwrap(),
                    reference,
                    "{pname} x {cname}, k = {k}"
                );
            }
        }
    }
    pass(6, "invariant(stabilize^k(p)) = invariant(p) for k in 1..=3 on all presentations and coefficients");
}

#[test]
fn criterion_07_free_product_multiplicativity() {
    let presentations = all_presentations();
    for (n1, p1) in &presentations {
        for (n2, p2) in &presentations {
            let joined = free_product(p1, p2);
            for (cname, cm) in all_coefficients() {
                let lhs = count_homs(&joined, &cm).unwrap();
                let rhs = count_homs(p1, &cm).unwrap() * count_homs(p2, &cm).unwrap();
                assert_eq!(lhs, rhs, "{n1} v {n2} x {cname}");
            }
        }
    }
    pass(7, "count_homs factorizes over free products on all corpus presentation pairs");
}

#[test]
fn criterion_08_dual_path_oracle() {
    for name in corpus::diagram_names() {
        let d = corpus::diagram(name).unwrap();
        let extracted = extract_presentation(&d).unwrap();
        let reduced = corpus::presentation(name).unwrap();
        for (cname, cm) in all_coefficients() {
            assert!(check_consistency(&d, &cm).is_clean(), "{name} x {cname}");
            let via_diagram = invariant_from_diagram(&d, &cm);
            assert_eq!(via_diagram, invariant(&extracted, &cm).unwrap(), "{name} x {cname}");
            assert_eq!(via_diagram, invariant(&reduced, &cm).unwrap(), "{name} x {cname} (reduced)");
        }
    }
    pass(8, "diagram-level and presentation-level invariants agree on every diagram x coefficient pair");
}

#[test]
fn criterion_09_validator_mutation_sweep() {
    let a = coeff("A");
    assert!(a.validate().is_valid());
    for (_, cm) in all_coefficients() {
        assert!(cm.validate().is_valid());
    }

    // Mutation pool: every entry of the base and principal product tables,
    // the boundary image list, and the action table of A.
    let base = a.base().product_table().to_vec();
    let principal = a.principal().product_table().to_vec();
    let boundary = a.boundary_hom().image.clone();
    let action = a.action_table().to_vec();
    let sizes = [base.len(), principal.len(), boundary.len(), action.len()];
    let total: usize = sizes.iter().sum();

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut rejected = 0u32;
    for _ in 0..1000 {
        let slot = rng.gen_range(0..total);
        let (mut b, mut p, mut bd, mut ac) =
            (base.clone(), principal.clone(), boundary.clone(), action.clone());
        let (table, modulus): (&mut Vec<usize>, usize) = if slot < sizes[0] {
            (&mut b, 2)
        } else if slot < sizes[0] + sizes[1] {
            (&mut p, 3)
        } else if slot < sizes[0] + sizes[1] + sizes[2] {
            (&mut bd, 2)
        } else {
            (&mut ac, 3)
        };
        let idx = match slot {
            s if s < sizes[0] => s,
            s if s < sizes[0] + sizes[1] => s - sizes[0],
            s if s < sizes[0] + sizes[1] + sizes[2] => s - sizes[0] - sizes[1],
            s => s - sizes[0] - sizes[1] - sizes[2],
        };
        let bump = rng.gen_range(1..modulus.max(2));
        table[idx] = (table[idx] + bump) % modulus;

        let candidate = FiniteGroup::from_table(2, b, None).and_then(|bg| {
            let pg = FiniteGroup::from_table(3, p, None)?;
            FiniteCrossedModule::from_parts(bg, pg, GroupHom { image: bd }, ac)
        });
        match candidate {
            Err(_) => rejected += 1,
            Ok(cm) => {
                // Any accepted mutation must genuinely satisfy every axiom;
                // the exhaustive validator is the referee.
                assert!(cm.validate().is_valid(), "validator accepted a broken mutation");
            }
        }
    }
    assert!(rejected >= 950, "only {rejected}/1000 mutations rejected");
    pass(9, &format!(
        "validator accepts all corpus coefficients and rejected {rejected}/1000 single-entry mutations of A"
    ));
}

#[test]
fn criterion_10_determinism_across_jobs() {
    for name in corpus::diagram_names() {
        let d = corpus::diagram(name).unwrap();
        let p = corpus::presentation(name).unwrap();
        for (cname, cm) in all_coefficients() {
            let d1 = count_colorings_jobs(&d, &cm, 1);
            let h1 = count_homs_jobs(&p, &cm, 1).unwrap();
            for jobs in [4, 16] {
                assert_eq!(count_colorings_jobs(&d, &cm, jobs), d1, "{name} x {cname} jobs={jobs}");
                assert_eq!(count_homs_jobs(&p, &cm, jobs).unwrap(), h1, "{name} x {cname} jobs={jobs}");
            }
        }
    }
    pass(10, "counts identical across jobs in {1, 4, 16} on all corpus inputs");
}

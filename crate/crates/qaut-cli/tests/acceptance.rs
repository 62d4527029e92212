//! Acceptance suite: one test per release criterion, each printing a single
//! summary line (visible under `cargo test -- --nocapture`); the harness's own
//! per-test line carries the same verdict.
//!
//! Wherever a criterion asserts a *negative* symbolic fact (an element is not
//! in the relation ideal), the test first re-certifies confluence of the
//! completed system through [`RewriteSystem::check_local_confluence`] so the
//! verdict is unconditional rather than budget-relative.
//!
//! Two sub-cases fail by design and are left red on purpose: the entries of
//! u·uᵗ − I for the 4×4 magic matrix are **not** in the *-ideal generated by
//! the declared relations (projection + row/column sum relations), so the
//! coproduct does not descend to the naive algebraic quotient and the X_4
//! coaction is not multiplicative there either.  The positive counterpart —
//! those same entries vanish in every C*-representation — is covered by the
//! two-projection model (criterion 7) and the soundness bridge in the models
//! tests.  See README, "Where algebra ends and positivity begins".

use std::process::Command;

use qaut::coaction::CoactionChecker;
use qaut::hopf::{check_au_model, check_block_embedding, check_point_embedding, HopfChecker};
use qaut::models::{
    au_model_rep, check_character, classical_point_discrepancy, commutator_norm, complexify,
    enumerate_characters_magic, numeric_verify, p_pair_residuals, seeded_orthogonal,
    seeded_positive_q, twisted_u_from_orthogonal, two_projection_rep, v_equivalence_residuals,
};
use qaut::ncalg::{GenId, Word};
use qaut::presentations::{
    aut_b_presentation, aut_mn_presentation, magic_presentation, Presentation,
};
use qaut::report::{clip_witness, Verdict};
use qaut::rewrite::Membership;
use qaut::scalar::{GaussQ, Scalar};
use qaut::Poly;

const DEGREE_CAP: usize = 8;
const RULE_CAP: usize = 20_000;

/// Prints the one-line verdict for a criterion and panics with the collected
/// failures if there are any.
fn emit(number: u32, name: &str, failures: &[String], summary: &str) {
    let status = if failures.is_empty() { "pass" } else { "FAIL" };
    println!("criterion {number:02} {name:<28} {status} — {summary}");
    if failures.is_empty() {
        return;
    }
    let shown = failures.len().min(6);
    let mut msg = failures[..shown].join("\n  ");
    if failures.len() > shown {
        msg.push_str(&format!("\n  … and {} more", failures.len() - shown));
    }
    panic!("criterion {number:02} {name} ({} failure(s)):\n  {msg}", failures.len());
}

fn one() -> GaussQ {
    GaussQ::from_int(1)
}

/// Certifies that `sys` decides ideal membership at every degree: all
/// overlaps join, and the completion cap dominates the diamond-lemma bound.
fn certify_decides_membership(sys: &qaut::System, subject: &str) -> usize {
    let overlaps = sys
        .check_local_confluence()
        .unwrap_or_else(|why| panic!("{subject}: completed system not locally confluent: {why}"));
    let max_deg = sys.rules().iter().map(|r| r.lhs.len()).max().unwrap_or(1);
    assert!(
        (2 * max_deg).saturating_sub(1) <= DEGREE_CAP,
        "{subject}: cap {DEGREE_CAP} below the confluence bound for max rule degree {max_deg}"
    );
    overlaps
}

// ---------------------------------------------------------------------------
// 1. Presentation fidelity: family sizes match direct index-range counts.
// ---------------------------------------------------------------------------

fn expect_families(pres: &Presentation, expected: &[(&str, usize)], failures: &mut Vec<String>) {
    if pres.families.len() != expected.len() {
        failures.push(format!(
            "{}: {} relation families, expected {}",
            pres.name,
            pres.families.len(),
            expected.len()
        ));
        return;
    }
    for (fam, (name, count)) in pres.families.iter().zip(expected) {
        if fam.name != *name || fam.relations.len() != *count {
            failures.push(format!(
                "{}: family {:?} has {} relations, expected {name:?} with {count}",
                pres.name,
                fam.name,
                fam.relations.len()
            ));
        }
    }
}

#[test]
fn criterion_01_presentation_fidelity() {
    let mut failures = Vec::new();

    // magic(n): one idempotency and one self-adjointness instance per matrix
    // entry, one sum relation per row and per column.
    for n in 2u16..=4 {
        let entries = usize::from(n) * usize::from(n);
        let lines = usize::from(n);
        expect_families(
            &magic_presentation(n),
            &[
                ("idempotent", entries),
                ("adjoint", entries),
                ("row_sum", lines),
                ("column_sum", lines),
            ],
            &mut failures,
        );
    }

    // aut_M(n): the product relations quantify over six free matrix indices
    // (the summation index is bound), the adjoint relations over four, the
    // unit and trace relations over two.
    for n in 2u16..=3 {
        let d = usize::from(n);
        expect_families(
            &aut_mn_presentation(n),
            &[
                ("product", d.pow(6)),
                ("product_op", d.pow(6)),
                ("adjoint", d.pow(4)),
                ("unit", d.pow(2)),
                ("trace", d.pow(2)),
            ],
            &mut failures,
        );
    }

    // aut_B(sizes): same shape per block triple/pair, weighted by the number
    // of matrix-unit pairs inside each block.
    for sizes in [vec![1u16, 2], vec![2, 2], vec![1, 1, 2]] {
        let pairs: Vec<usize> = sizes.iter().map(|&b| usize::from(b) * usize::from(b)).collect();
        let mut product = 0usize;
        let mut adjoint = 0usize;
        for &px in &pairs {
            for &py in &pairs {
                adjoint += px * py;
                for &pz in &pairs {
                    product += px * py * pz;
                }
            }
        }
        let unit: usize = pairs.iter().sum();
        expect_families(
            &aut_b_presentation(&sizes),
            &[
                ("product", product),
                ("product_op", product),
                ("adjoint", adjoint),
                ("unit", unit),
                ("trace", unit),
            ],
            &mut failures,
        );
    }

    emit(
        1,
        "presentation_fidelity",
        &failures,
        "family sizes match index-range counts for magic(2..4), aut_M(2..3), aut_B((1,2)|(2,2)|(1,1,2))",
    );
}

// ---------------------------------------------------------------------------
// 2. Hopf suite: coproduct, coassociativity and counit laws.
// ---------------------------------------------------------------------------

#[test]
fn criterion_02_hopf_suite() {
    let mut failures = Vec::new();
    let subjects = [
        magic_presentation(2),
        magic_presentation(3),
        magic_presentation(4),
        aut_mn_presentation(2),
        aut_b_presentation(&[1, 2]),
    ];
    for pres in &subjects {
        let checker = HopfChecker::new(pres, DEGREE_CAP, RULE_CAP).unwrap();
        for report in [
            checker.check_coproduct_well_defined(),
            checker.check_coassociativity(),
            checker.check_counit_well_defined(),
            checker.check_counit_left(),
            checker.check_counit_right(),
        ] {
            if report.verdict != Verdict::Pass {
                failures.push(format!(
                    "{} / {}: {:?} — {}",
                    pres.name,
                    report.check,
                    report.verdict,
                    report.witness.unwrap_or_default()
                ));
            }
        }
    }
    emit(
        2,
        "hopf_suite",
        &failures,
        "coproduct/coassociativity/counit on magic(2..4), aut_M(2), aut_B((1,2))",
    );
}

// ---------------------------------------------------------------------------
// 3. Orthogonality of the magic matrix: entries of u·uᵗ − I and uᵗ·u − I.
// ---------------------------------------------------------------------------

#[test]
fn criterion_03_orthogonality_of_u() {
    let mut failures = Vec::new();
    for n in 2u16..=4 {
        let pres = magic_presentation(n);
        let (sys, _) = pres.completed_system(DEGREE_CAP, RULE_CAP).unwrap();
        let overlaps = certify_decides_membership(&sys, &pres.name);
        let alg = &pres.algebra;
        let u = pres.fundamental_matrix();
        let letter = |g: &GenId| alg.letter_of(g).unwrap();
        for i in 0..u.len() {
            for j in 0..u.len() {
                let mut row = Poly::zero();
                let mut col = Poly::zero();
                for k in 0..u.len() {
                    row.add_term(
                        Word::from_letters(&[letter(&u[i][k]), letter(&u[j][k])]),
                        one(),
                    );
                    col.add_term(
                        Word::from_letters(&[letter(&u[k][i]), letter(&u[k][j])]),
                        one(),
                    );
                }
                for (tag, mut p) in [("u·uᵗ", row), ("uᵗ·u", col)] {
                    p.add_term(Word::unit(), -GaussQ::from_int(i64::from(i == j)));
                    let nf = sys.reduce(&p);
                    if !nf.is_zero() {
                        failures.push(format!(
                            "magic({n}): ({tag})[{},{}] − δ has normal form {} under a \
                             certified-confluent system ({overlaps} overlaps join), \
                             hence is not in the *-ideal",
                            i + 1,
                            j + 1,
                            clip_witness(&nf.display(alg)),
                        ));
                    }
                }
            }
        }
    }
    emit(
        3,
        "orthogonality_of_u",
        &failures,
        "all entries of u·uᵗ − I and uᵗ·u − I reduce to 0 for magic(2..4)",
    );
}

// ---------------------------------------------------------------------------
// 4. Antipode law; Inconclusive is as fatal as Fail at these sizes.
// ---------------------------------------------------------------------------

#[test]
fn criterion_04_antipode_law() {
    let mut failures = Vec::new();
    let subjects = [magic_presentation(2), magic_presentation(3), aut_mn_presentation(2)];
    for pres in &subjects {
        let checker = HopfChecker::new(pres, DEGREE_CAP, RULE_CAP).unwrap();
        for report in [
            checker.check_antipode_well_defined(),
            checker.check_antipode_left(),
            checker.check_antipode_right(),
        ] {
            if report.verdict != Verdict::Pass {
                failures.push(format!(
                    "{} / {}: {:?} — {}",
                    pres.name,
                    report.check,
                    report.verdict,
                    report.witness.unwrap_or_default()
                ));
            }
        }
    }
    emit(
        4,
        "antipode_law",
        &failures,
        "antipode well-defined and both convolution laws hold on magic(2), magic(3), aut_M(2)",
    );
}

// ---------------------------------------------------------------------------
// 5. Commutativity probe across the classical/quantum boundary.
// ---------------------------------------------------------------------------

#[test]
fn criterion_05_commutativity_probe() {
    let mut failures = Vec::new();
    let mut notes = Vec::new();

    // n = 2: commutativity must be derived outright.
    let p2 = magic_presentation(2);
    let c2 = HopfChecker::new(&p2, DEGREE_CAP, RULE_CAP).unwrap();
    let r2 = c2.commutativity_probe();
    if r2.verdict == Verdict::Pass {
        notes.push("n=2 commutative".to_string());
    } else {
        failures.push(format!(
            "magic(2) probe: {:?} — {}",
            r2.verdict,
            r2.witness.unwrap_or_default()
        ));
    }

    // n = 3: Pass or Inconclusive are both acceptable, but the verdict must
    // be surfaced either way.
    let p3 = magic_presentation(3);
    let c3 = HopfChecker::new(&p3, DEGREE_CAP, RULE_CAP).unwrap();
    let r3 = c3.commutativity_probe();
    match r3.verdict {
        Verdict::Pass => notes.push("n=3 commutative".to_string()),
        Verdict::Inconclusive => notes.push(format!(
            "n=3 inconclusive ({})",
            r3.witness.clone().unwrap_or_default()
        )),
        Verdict::Fail => failures.push(format!(
            "magic(3) probe reported Fail: {}",
            r3.witness.unwrap_or_default()
        )),
    }

    // n = 4: no generator commutator may be certified *into* the ideal —
    // the two-projection model (criterion 7) represents [a(1,1), a(3,3)]
    // with operator norm 1/2, so an InIdeal verdict would be unsound.
    let p4 = magic_presentation(4);
    let (sys, _) = p4.completed_system(DEGREE_CAP, RULE_CAP).unwrap();
    certify_decides_membership(&sys, &p4.name);
    let alg = &p4.algebra;
    let letter = |g: &GenId| alg.letter_of(g).unwrap();
    let gens: Vec<GenId> = (1..=4u16)
        .flat_map(|i| (1..=4u16).map(move |j| (i, j)))
        .map(|(i, j)| p4.algebra.a_x(i, j))
        .collect();
    let mut not_in_ideal = 0usize;
    let mut inconclusive = 0usize;
    for (gi, g) in gens.iter().enumerate() {
        for h in &gens[gi + 1..] {
            let mut comm = Poly::from_word(Word::from_letters(&[letter(g), letter(h)]));
            comm.add_term(Word::from_letters(&[letter(h), letter(g)]), -one());
            match sys.ideal_member(&comm).membership {
                Membership::InIdeal => failures.push(format!(
                    "magic(4): [{g}, {h}] certified in the ideal, contradicting the \
                     two-projection representation"
                )),
                Membership::NotInIdealUpTo(_) => not_in_ideal += 1,
                Membership::Inconclusive(_) => inconclusive += 1,
            }
        }
    }
    let a11 = p4.algebra.a_x(1, 1);
    let a33 = p4.algebra.a_x(3, 3);
    let mut pair = Poly::from_word(Word::from_letters(&[letter(&a11), letter(&a33)]));
    pair.add_term(Word::from_letters(&[letter(&a33), letter(&a11)]), -one());
    if sys.ideal_member(&pair).membership == Membership::InIdeal {
        failures.push("magic(4): [a[1,1], a[3,3]] certified in the ideal (soundness breach)".into());
    }
    notes.push(format!(
        "n=4: {not_in_ideal} commutators certified outside the ideal, {inconclusive} inconclusive"
    ));

    let summary = notes.join("; ");
    emit(5, "commutativity_probe", &failures, &summary);
}

// ---------------------------------------------------------------------------
// 6. Coaction suite on the three kinds of finite space.
// ---------------------------------------------------------------------------

#[test]
fn criterion_06_coaction_suite() {
    let mut failures = Vec::new();
    let subjects = [
        magic_presentation(2),
        magic_presentation(3),
        magic_presentation(4),
        aut_mn_presentation(2),
        aut_b_presentation(&[1, 2]),
    ];
    let required = [
        "coaction.homomorphism",
        "coaction.star",
        "coaction.unital",
        "coaction.square",
        "coaction.counit",
        "coaction.invariant_functional",
    ];
    for pres in &subjects {
        let checker = CoactionChecker::new(pres, DEGREE_CAP, RULE_CAP).unwrap();
        let report = checker.run_all();
        for name in required {
            let check = report
                .checks
                .iter()
                .find(|c| c.check == name)
                .unwrap_or_else(|| panic!("{}: missing check {name}", pres.name));
            if check.verdict != Verdict::Pass {
                failures.push(format!(
                    "{} / {name}: {:?} — {}",
                    pres.name,
                    check.verdict,
                    check.witness.clone().unwrap_or_default()
                ));
            }
        }
    }
    emit(
        6,
        "coaction_suite",
        &failures,
        "homomorphism/star/unital/square/counit/invariance on X_2..4, M_2, blocks (1,2)",
    );
}

// ---------------------------------------------------------------------------
// 7. Two-projection representation witnesses noncommutativity at n = 4.
// ---------------------------------------------------------------------------

#[test]
fn criterion_07_two_projection_witness() {
    let mut failures = Vec::new();
    let pres = magic_presentation(4);
    let rep = two_projection_rep(std::f64::consts::FRAC_PI_4);
    let report = numeric_verify(&pres, &rep).unwrap();
    if report.max_residual > 1e-12 {
        failures.push(format!(
            "max relation residual {:.3e} exceeds 1e-12",
            report.max_residual
        ));
    }
    let norm = commutator_norm(&rep, &pres.algebra.a_x(1, 1), &pres.algebra.a_x(3, 3)).unwrap();
    if (norm - 0.5).abs() > 1e-9 {
        failures.push(format!("‖[ρ(a11), ρ(a33)]‖ = {norm:.12}, expected 0.5 ± 1e-9"));
    }
    let summary = format!(
        "max relation residual {:.1e}, ‖[ρ(a11), ρ(a33)]‖ = {norm:.9}",
        report.max_residual
    );
    emit(7, "two_projection_witness", &failures, &summary);
}

// ---------------------------------------------------------------------------
// 8. Classical points are exactly the permutation matrices.
// ---------------------------------------------------------------------------

#[test]
fn criterion_08_classical_points() {
    let mut failures = Vec::new();
    for (n, want) in [(2u16, 2usize), (3, 6), (4, 24)] {
        let pres = magic_presentation(n);
        let chars = enumerate_characters_magic(n).unwrap();
        if chars.len() != want {
            failures.push(format!(
                "magic({n}): {} characters, expected {want}",
                chars.len()
            ));
        }
        for chi in &chars {
            let report = check_character(&pres, chi).unwrap();
            if report.verdict != Verdict::Pass {
                failures.push(format!(
                    "magic({n}) character {}: {:?} — {}",
                    chi.label,
                    report.verdict,
                    report.witness.unwrap_or_default()
                ));
            }
        }
    }
    emit(
        8,
        "classical_points",
        &failures,
        "2 / 6 / 24 characters at n = 2 / 3 / 4, each exact on every relation",
    );
}

// ---------------------------------------------------------------------------
// 9. Quantum subgroup embeddings and the universal-unitary model.
// ---------------------------------------------------------------------------

#[test]
fn criterion_09_embeddings_and_au_model() {
    let mut failures = Vec::new();
    let mut reports = Vec::new();
    for k0 in 1..=2u16 {
        reports.push(check_block_embedding(&[1, 2], k0, DEGREE_CAP, RULE_CAP).unwrap());
    }
    reports.push(check_point_embedding(2, 2, DEGREE_CAP, RULE_CAP).unwrap());
    reports.push(check_au_model(2, DEGREE_CAP, RULE_CAP).unwrap());
    for report in &reports {
        if report.overall != Verdict::Pass {
            let why: Vec<String> = report
                .checks
                .iter()
                .filter(|c| c.verdict != Verdict::Pass)
                .map(|c| {
                    format!(
                        "{}: {:?} — {}",
                        c.check,
                        c.verdict,
                        c.witness.clone().unwrap_or_default()
                    )
                })
                .collect();
            failures.push(format!("{}: {}", report.subject, why.join("; ")));
        }
    }
    let summary = reports
        .iter()
        .map(|r| r.subject.as_str())
        .collect::<Vec<_>>()
        .join(", ");
    emit(9, "embeddings_and_au_model", &failures, &summary);
}

// ---------------------------------------------------------------------------
// 10. Numeric appendix identities over seeded random positive Q.
// ---------------------------------------------------------------------------

#[test]
fn criterion_10_appendix_identities() {
    let mut failures = Vec::new();
    let tol = 1e-9;
    let mut worst: f64 = 0.0;
    for dim in [3usize, 4] {
        for seed in 0..20u64 {
            let q = seeded_positive_q(dim, seed);
            let o = seeded_orthogonal(dim, seed + 1_000);
            let u = twisted_u_from_orthogonal(&q, &o).unwrap();
            let res = v_equivalence_residuals(&q, &u).unwrap();
            if res.twisted > tol || res.unitarity > tol {
                failures.push(format!(
                    "dim {dim}, seed {seed}: twisted-unitarity residual {:.3e}, \
                     v-unitarity residual {:.3e}",
                    res.twisted, res.unitarity
                ));
            }
            worst = worst.max(res.twisted).max(res.unitarity);
            let (pr, ptr) = p_pair_residuals(&q).unwrap();
            if pr > tol || ptr > tol {
                failures.push(format!(
                    "dim {dim}, seed {seed}: P·P̃ residual {pr:.3e}, P̃·P residual {ptr:.3e}"
                ));
            }
            worst = worst.max(pr).max(ptr);
        }
    }
    let summary =
        format!("20 seeds × dims 3,4: worst residual {worst:.1e} for v-equivalence and P·P̃ = I");
    emit(10, "appendix_identities", &failures, &summary);
}

// ---------------------------------------------------------------------------
// 11. Twisting the invariant state changes the classical points.
// ---------------------------------------------------------------------------

#[test]
fn criterion_11_twisted_point_discrepancy() {
    let mut failures = Vec::new();
    let two = GaussQ::from_int(2);

    let r2 = classical_point_discrepancy(2, &[one(), one()], &[one(), two.clone()]).unwrap();
    if r2.points_q1 != ["id", "[2,1]"] || r2.points_q2 != ["id"] || !r2.distinct {
        failures.push(format!(
            "X_2: points {:?} vs {:?}, distinct = {}",
            r2.points_q1, r2.points_q2, r2.distinct
        ));
    }

    let r3 =
        classical_point_discrepancy(3, &[one(), one(), one()], &[one(), one(), two]).unwrap();
    let all_of_s3 = ["id", "[1,3,2]", "[2,1,3]", "[2,3,1]", "[3,1,2]", "[3,2,1]"];
    if r3.points_q1 != all_of_s3 || r3.points_q2 != ["id", "[2,1,3]"] || !r3.distinct {
        failures.push(format!(
            "X_3: points {:?} vs {:?}, distinct = {}",
            r3.points_q1, r3.points_q2, r3.distinct
        ));
    }

    emit(
        11,
        "twisted_point_discrepancy",
        &failures,
        "diag(1,2) on X_2 keeps only id; diag(1,1,2) on X_3 keeps the transposition fixing 3",
    );
}

// ---------------------------------------------------------------------------
// 12. The CLI's full report is byte-identical across runs.
// ---------------------------------------------------------------------------

#[test]
fn criterion_12_deterministic_reports() {
    let mut failures = Vec::new();
    let bin = env!("CARGO_BIN_EXE_qaut");
    for dsl in ["space X(3); variant aut;", "space X(4); variant aut;"] {
        let run = || {
            Command::new(bin)
                .args(["full-report", "--dsl", dsl, "--seed", "7", "--json", "-"])
                .output()
                .expect("CLI binary runs")
        };
        let a = run();
        let b = run();
        if a.stdout != b.stdout || a.status.code() != b.status.code() {
            failures.push(format!(
                "`{dsl}`: outputs differ between runs ({} vs {} bytes, exit {:?} vs {:?})",
                a.stdout.len(),
                b.stdout.len(),
                a.status.code(),
                b.status.code()
            ));
        }
        if a.stdout.is_empty() {
            failures.push(format!("`{dsl}`: empty JSON report"));
        }
    }
    emit(
        12,
        "deterministic_reports",
        &failures,
        "full-report JSON byte-identical across repeated seeded runs on X(3) and X(4)",
    );
}

// au_model_rep and complexify are exercised through the CLI demo path; keep a
// direct scalar-model spot check here so the acceptance target also fails if
// that entry point regresses independently of the ones above.
#[test]
fn au_scalar_model_spot_check() {
    let w = complexify(&seeded_orthogonal(2, 5));
    let rep = au_model_rep(2, &w).unwrap();
    let report = numeric_verify(&aut_mn_presentation(2), &rep).unwrap();
    assert_eq!(report.verdict, Verdict::Pass, "residual {}", report.max_residual);
}

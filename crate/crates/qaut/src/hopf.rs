//! Hopf-axiom verification for presented quantum automorphism groups.
//!
//! A [`HopfChecker`] completes the presented *-ideal once, extends the
//! completed system to two and three commuting tensor legs, and then checks
//! each axiom as a family of exact ideal-membership obligations:
//!
//! * the coproduct kills every relation (so it descends to the quotient),
//! * coassociativity `(Φ⊗id)Φ = (id⊗Φ)Φ`,
//! * counit well-definedness plus both counit laws,
//! * the antipode as an anti-endomorphism plus both antipode laws,
//! * Kac-type unitarity of the fundamental matrix and its conjugate.
//!
//! Each law is checked on both sides independently — the two routes are
//! separate reports and are never merged into one reduction.  A reduction to
//! zero is an unconditional certificate; a nonzero normal form is a failure
//! only under a confluence bound, and stays inconclusive otherwise.

use num::Zero;

use crate::error::Error;
use crate::ncalg::{eval_scalar, substitute, GenId, Letter, NCPoly, Word};
use crate::presentations::Presentation;
use crate::report::{clip_witness, CheckAccumulator, CheckReport, StructureReport, Verdict};
use crate::rewrite::{CompletionOutcome, Membership, RewriteSystem};
use crate::scalar::{GaussQ, Scalar};

type Poly = NCPoly<GaussQ>;

fn describe(m: &Membership) -> String {
    match m {
        Membership::InIdeal => "in ideal".into(),
        Membership::NotInIdealUpTo(d) => format!("not in ideal up to degree {d}"),
        Membership::Inconclusive(why) => format!("inconclusive: {why}"),
    }
}

/// Checks that a generator assignment into `dst`'s algebra kills every
/// relation of `src`, i.e. extends to a *-homomorphism from the presented
/// quotient.  The destination system decides membership; `dst_alg` is only
/// used to render witnesses.
pub fn morphism_check(
    check: &str,
    src: &Presentation,
    dst_alg: &crate::ncalg::Algebra,
    dst: &RewriteSystem<GaussQ>,
    phi: &dyn Fn(&GenId) -> Option<Poly>,
) -> CheckReport {
    let mut acc = CheckAccumulator::new(check).with_rules_used(dst.num_rules());
    for fam in &src.families {
        for (idx, r) in fam.relations.iter().enumerate() {
            let image = match substitute(r, &src.algebra, phi) {
                Ok(p) => p,
                Err(e) => {
                    acc.add(Verdict::Inconclusive, || format!("{}[{idx}]: {e}", fam.name));
                    continue;
                }
            };
            let mv = dst.ideal_member(&image);
            acc.add(Verdict::from_membership(&mv.membership), || {
                format!(
                    "{}[{}]: image has normal form {} ({})",
                    fam.name,
                    idx,
                    mv.normal_form.display(dst_alg),
                    describe(&mv.membership)
                )
            });
        }
    }
    acc.finish()
}

/// The block inclusion: the multimatrix quantum automorphism presentation
/// surjects onto the single-block one by sending the fundamental matrix to
/// `u ⊕ I`: block `k0` carries the matrix-presentation generators, every
/// other diagonal block the scalar identity, and off-diagonal blocks zero.
/// Passing means every multimatrix relation is killed, i.e. the single-block
/// quantum group embeds as a quantum subgroup.
pub fn check_block_embedding(
    sizes: &[u16],
    k0: u16,
    degree_cap: usize,
    rule_cap: usize,
) -> Result<StructureReport, Error> {
    assert!(
        (1..=sizes.len() as u16).contains(&k0),
        "block index {k0} out of range for {} blocks",
        sizes.len()
    );
    let n0 = sizes[(k0 - 1) as usize];
    let src = crate::presentations::aut_b_presentation(sizes);
    let dst = crate::presentations::aut_mn_presentation(n0);
    let mut sys = dst.system()?;
    sys.complete(degree_cap, rule_cap);
    let dst_alg = dst.algebra.clone();
    let phi = move |g: &GenId| -> Option<Poly> {
        // g = a[k,l;r,s;x,y] in the multimatrix scheme.
        let ix = &g.indices;
        let (k, l, r, s, x, y) = (ix[0], ix[1], ix[2], ix[3], ix[4], ix[5]);
        if x == k0 && y == k0 {
            let letter = dst_alg.letter_of(&dst_alg.a_m(k, l, r, s)).ok()?;
            Some(Poly::from_letter(letter))
        } else if x == y && k == r && l == s {
            Some(Poly::one())
        } else {
            Some(Poly::zero())
        }
    };
    let check = morphism_check("embedding.block", &src, &dst.algebra, &sys, &phi);
    Ok(StructureReport::new(
        format!("{} into {}", dst.name, src.name),
        vec![check],
    ))
}

/// The point inclusion for equal block sizes: the multimatrix presentation
/// over m copies of the same full matrix block surjects onto the magic
/// presentation via `a[k,l;r,s;x,y] ↦ δ_{kr} δ_{ls} a[x,y]` — block
/// permutation with no action inside blocks.
pub fn check_point_embedding(
    n: u16,
    m: u16,
    degree_cap: usize,
    rule_cap: usize,
) -> Result<StructureReport, Error> {
    let src = crate::presentations::aut_b_presentation(&vec![n; m as usize]);
    let dst = crate::presentations::magic_presentation(m);
    let mut sys = dst.system()?;
    sys.complete(degree_cap, rule_cap);
    let dst_alg = dst.algebra.clone();
    let phi = move |g: &GenId| -> Option<Poly> {
        let ix = &g.indices;
        let (k, l, r, s, x, y) = (ix[0], ix[1], ix[2], ix[3], ix[4], ix[5]);
        if k == r && l == s {
            let letter = dst_alg.letter_of(&dst_alg.a_x(x, y)).ok()?;
            Some(Poly::from_letter(letter))
        } else {
            Some(Poly::zero())
        }
    };
    let check = morphism_check("embedding.points", &src, &dst.algebra, &sys, &phi);
    Ok(StructureReport::new(
        format!("{} into {}", dst.name, src.name),
        vec![check],
    ))
}

/// The universal-unitary model: `a[k,l;i,j] ↦ u[k,i]·u[l,j]*` kills every
/// matrix-presentation relation inside the universal unitary algebra, so the
/// quantum automorphism group of the matrix block is a quantum subgroup of
/// the universal unitary quantum group.
pub fn check_au_model(
    n: u16,
    degree_cap: usize,
    rule_cap: usize,
) -> Result<StructureReport, Error> {
    let src = crate::presentations::aut_mn_presentation(n);
    let dst = crate::presentations::a_u_presentation(n);
    let mut sys = dst.system()?;
    sys.complete(degree_cap, rule_cap);
    let dst_alg = dst.algebra.clone();
    let phi = move |g: &GenId| -> Option<Poly> {
        let ix = &g.indices;
        let (k, l, i, j) = (ix[0], ix[1], ix[2], ix[3]);
        let first = dst_alg.letter_of(&dst_alg.u(k, i)).ok()?;
        let second = dst_alg.letter_of(&dst_alg.u(l, j).star()).ok()?;
        Some(Poly::from_word(Word::from_letters(&[first, second])))
    };
    let check = morphism_check("embedding.au_model", &src, &dst.algebra, &sys, &phi);
    Ok(StructureReport::new(
        format!("{} into {}", src.name, dst.name),
        vec![check],
    ))
}

/// One presentation with its completed system and tensor extensions.
pub struct HopfChecker<'a> {
    pres: &'a Presentation,
    single: RewriteSystem<GaussQ>,
    double: RewriteSystem<GaussQ>,
    triple: RewriteSystem<GaussQ>,
    completion: CompletionOutcome,
}

impl<'a> HopfChecker<'a> {
    /// Orients and completes the presented ideal under the given budgets and
    /// prepares the two- and three-leg tensor systems.
    pub fn new(pres: &'a Presentation, degree_cap: usize, rule_cap: usize) -> Result<Self, Error> {
        let mut single = pres.system()?;
        let completion = single.complete(degree_cap, rule_cap);
        let double = single.tensor_power(&pres.algebra, 2);
        let triple = single.tensor_power(&pres.algebra, 3);
        Ok(HopfChecker {
            pres,
            single,
            double,
            triple,
            completion,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        self.pres
    }

    /// The completed one-copy system.
    pub fn system(&self) -> &RewriteSystem<GaussQ> {
        &self.single
    }

    /// The two-leg tensor system (for morphisms into A ⊗ A).
    pub fn tensor_system(&self) -> &RewriteSystem<GaussQ> {
        &self.double
    }

    pub fn completion(&self) -> &CompletionOutcome {
        &self.completion
    }

    fn coproduct(&self, g: &GenId) -> Option<Poly> {
        self.pres.coproduct_image(g).cloned()
    }

    /// Φ kills the relations: the coproduct descends to the quotient.
    pub fn check_coproduct_well_defined(&self) -> CheckReport {
        morphism_check(
            "hopf.coproduct_well_defined",
            self.pres,
            &self.pres.algebra,
            &self.double,
            &|g| self.coproduct(g),
        )
    }

    /// `(Φ⊗id)Φ(g) = (id⊗Φ)Φ(g)` for every generator, first as free
    /// three-leg polynomials and, where that fails, modulo the tensor ideal.
    pub fn check_coassociativity(&self) -> CheckReport {
        let alg = &self.pres.algebra;
        let mut acc =
            CheckAccumulator::new("hopf.coassociativity").with_rules_used(self.triple.num_rules());
        for g in alg.gens() {
            let Some(phi) = self.coproduct(g) else {
                acc.add(Verdict::Inconclusive, || format!("no coproduct image for {g}"));
                continue;
            };
            // (Φ⊗id): expand leg 0 into legs 0,1 and move leg 1 to leg 2.
            let left = substitute(&phi, alg, &|h| {
                if h.copy == 0 {
                    self.coproduct(h)
                } else {
                    Some(Poly::from_letter(alg.letter_of(&h.in_copy(2)).ok()?))
                }
            });
            // (id⊗Φ): keep leg 0 and expand leg 1 into legs 1,2.
            let right = substitute(&phi, alg, &|h| {
                if h.copy == 0 {
                    Some(Poly::from_letter(alg.letter_of(h).ok()?))
                } else {
                    let img = self.coproduct(&h.in_copy(0))?;
                    Some(img.map_letters(|l| alg.to_copy(l, alg.copy_of(l) + 1)))
                }
            });
            match (left, right) {
                (Ok(l), Ok(r)) => {
                    if l == r {
                        continue;
                    }
                    let mv = self.triple.ideal_member(&(&l - &r));
                    acc.add(Verdict::from_membership(&mv.membership), || {
                        format!(
                            "{g}: sides differ; difference has normal form {} ({})",
                            mv.normal_form.display(alg),
                            describe(&mv.membership)
                        )
                    });
                }
                (Err(e), _) | (_, Err(e)) => {
                    acc.add(Verdict::Inconclusive, || format!("{g}: {e}"));
                }
            }
        }
        acc.finish()
    }

    /// ε evaluates every relation to exactly zero.
    pub fn check_counit_well_defined(&self) -> CheckReport {
        let alg = &self.pres.algebra;
        let mut acc = CheckAccumulator::new("hopf.counit_well_defined");
        for fam in &self.pres.families {
            for (idx, r) in fam.relations.iter().enumerate() {
                match eval_scalar(r, alg, &|h| self.pres.counit_value(h).cloned()) {
                    Ok(v) if v.is_zero() => {}
                    Ok(v) => acc.add(Verdict::Fail, || {
                        format!("{}[{idx}]: ε(relation) = {v} ≠ 0", fam.name)
                    }),
                    Err(e) => acc.add(Verdict::Inconclusive, || format!("{}[{idx}]: {e}", fam.name)),
                }
            }
        }
        acc.finish()
    }

    fn counit_law(&self, eps_on_left_leg: bool) -> CheckReport {
        let alg = &self.pres.algebra;
        let name = if eps_on_left_leg {
            "hopf.counit_left"
        } else {
            "hopf.counit_right"
        };
        let mut acc = CheckAccumulator::new(name).with_rules_used(self.single.num_rules());
        let eps_leg = if eps_on_left_leg { 0 } else { 1 };
        for g in alg.gens() {
            let Some(phi) = self.coproduct(g) else {
                acc.add(Verdict::Inconclusive, || format!("no coproduct image for {g}"));
                continue;
            };
            let collapsed = substitute(&phi, alg, &|h| {
                if h.copy == eps_leg {
                    self.pres
                        .counit_value(&h.in_copy(0))
                        .map(|v| Poly::constant(v.clone()))
                } else {
                    Some(Poly::from_letter(alg.letter_of(&h.in_copy(0)).ok()?))
                }
            });
            let expected = Poly::from_letter(alg.letter_of(g).expect("generator in bounds"));
            match collapsed {
                Ok(p) if p == expected => {}
                Ok(p) => {
                    let mv = self.single.ideal_member(&(&p - &expected));
                    acc.add(Verdict::from_membership(&mv.membership), || {
                        format!(
                            "{g}: collapsed coproduct differs from g; normal form {} ({})",
                            mv.normal_form.display(alg),
                            describe(&mv.membership)
                        )
                    });
                }
                Err(e) => acc.add(Verdict::Inconclusive, || format!("{g}: {e}")),
            }
        }
        acc.finish()
    }

    /// `(ε⊗id)Φ = id` on generators.
    pub fn check_counit_left(&self) -> CheckReport {
        self.counit_law(true)
    }

    /// `(id⊗ε)Φ = id` on generators.
    pub fn check_counit_right(&self) -> CheckReport {
        self.counit_law(false)
    }

    fn antipode_letter(&self, l: Letter) -> Result<&Poly, Error> {
        let alg = &self.pres.algebra;
        let g = alg.gen_of(alg.to_copy(l, 0));
        self.pres
            .antipode_image(&g)
            .ok_or_else(|| Error::MissingImage(g.to_string()))
    }

    /// κ extended to polynomials as the linear anti-endomorphism fixing the
    /// declared generator images (`κ(v·w) = κ(w)·κ(v)`; scalars pass through
    /// unconjugated).
    pub fn antipode_apply(&self, p: &Poly) -> Result<Poly, Error> {
        let mut out = Poly::zero();
        for (w, c) in p.iter() {
            let mut acc = Poly::constant(c.clone());
            for &l in w.letters().iter().rev() {
                acc = acc.mul_ref(self.antipode_letter(l)?);
            }
            out.add_assign_ref(&acc);
        }
        Ok(out)
    }

    /// κ kills the relations: the antipode descends to the quotient.
    pub fn check_antipode_well_defined(&self) -> CheckReport {
        let alg = &self.pres.algebra;
        let mut acc = CheckAccumulator::new("hopf.antipode_well_defined")
            .with_rules_used(self.single.num_rules());
        for fam in &self.pres.families {
            for (idx, r) in fam.relations.iter().enumerate() {
                let image = match self.antipode_apply(r) {
                    Ok(p) => p,
                    Err(e) => {
                        acc.add(Verdict::Inconclusive, || format!("{}[{idx}]: {e}", fam.name));
                        continue;
                    }
                };
                let mv = self.single.ideal_member(&image);
                acc.add(Verdict::from_membership(&mv.membership), || {
                    format!(
                        "{}[{}]: κ(relation) has normal form {} ({})",
                        fam.name,
                        idx,
                        mv.normal_form.display(alg),
                        describe(&mv.membership)
                    )
                });
            }
        }
        acc.finish()
    }

    fn antipode_law(&self, kappa_on_left_leg: bool) -> CheckReport {
        let alg = &self.pres.algebra;
        let name = if kappa_on_left_leg {
            "hopf.antipode_left"
        } else {
            "hopf.antipode_right"
        };
        let mut acc = CheckAccumulator::new(name).with_rules_used(self.single.num_rules());
        'gens: for g in alg.gens() {
            let Some(phi) = self.coproduct(g) else {
                acc.add(Verdict::Inconclusive, || format!("no coproduct image for {g}"));
                continue;
            };
            let Some(eps) = self.pres.counit_value(g).cloned() else {
                acc.add(Verdict::Inconclusive, || format!("no counit value for {g}"));
                continue;
            };
            let mut total = Poly::zero();
            for (w, c) in phi.iter() {
                let mut leg0 = Vec::new();
                let mut leg1 = Vec::new();
                for &l in w.letters() {
                    if alg.copy_of(l) == 0 {
                        leg0.push(l);
                    } else {
                        leg1.push(alg.to_copy(l, 0));
                    }
                }
                let leg0 = Poly::from_word(Word::from_letters(&leg0));
                let leg1 = Poly::from_word(Word::from_letters(&leg1));
                let term = if kappa_on_left_leg {
                    self.antipode_apply(&leg0).map(|k| k.mul_ref(&leg1))
                } else {
                    self.antipode_apply(&leg1).map(|k| leg0.mul_ref(&k))
                };
                match term {
                    Ok(t) => total.add_scaled(c, &t),
                    Err(e) => {
                        acc.add(Verdict::Inconclusive, || format!("{g}: {e}"));
                        continue 'gens;
                    }
                }
            }
            total.add_term(Word::unit(), -eps);
            let mv = self.single.ideal_member(&total);
            acc.add(Verdict::from_membership(&mv.membership), || {
                format!(
                    "{g}: law residue has normal form {} ({})",
                    mv.normal_form.display(alg),
                    describe(&mv.membership)
                )
            });
        }
        acc.finish()
    }

    /// `m(κ⊗id)Φ(g) = ε(g)·1` on generators.
    pub fn check_antipode_left(&self) -> CheckReport {
        self.antipode_law(true)
    }

    /// `m(id⊗κ)Φ(g) = ε(g)·1` on generators.
    pub fn check_antipode_right(&self) -> CheckReport {
        self.antipode_law(false)
    }

    /// Kac-type unitarity: both `u u* = I = u* u` (first report) and
    /// `ū ū* = I = ū* ū` (second report), entrywise modulo the ideal.
    pub fn check_kac_unitarity(&self) -> Vec<CheckReport> {
        let alg = &self.pres.algebra;
        let u = self.pres.fundamental_matrix();
        let d = u.len();
        let letter =
            |g: &GenId| alg.letter_of(g).expect("fundamental matrix entries are in bounds");
        let mut u_acc =
            CheckAccumulator::new("hopf.kac_u_unitary").with_rules_used(self.single.num_rules());
        let mut ubar_acc =
            CheckAccumulator::new("hopf.kac_ubar_unitary").with_rules_used(self.single.num_rules());
        let one = GaussQ::from_int(1);
        for i in 0..d {
            for j in 0..d {
                let dlt = GaussQ::from_int(i64::from(i == j));
                // (u·u*)_{ij} = Σ_k u[i,k]·u[j,k]*
                let mut uu = Poly::zero();
                // (u*·u)_{ij} = Σ_k u[k,i]*·u[k,j]
                let mut usu = Poly::zero();
                // (ū·ū*)_{ij} = Σ_k u[i,k]*·u[j,k]
                let mut bb = Poly::zero();
                // (ū*·ū)_{ij} = Σ_k u[k,i]·u[k,j]*
                let mut bsb = Poly::zero();
                for k in 0..d {
                    uu.add_term(
                        Word::from_letters(&[letter(&u[i][k]), letter(&u[j][k].star())]),
                        one.clone(),
                    );
                    usu.add_term(
                        Word::from_letters(&[letter(&u[k][i].star()), letter(&u[k][j])]),
                        one.clone(),
                    );
                    bb.add_term(
                        Word::from_letters(&[letter(&u[i][k].star()), letter(&u[j][k])]),
                        one.clone(),
                    );
                    bsb.add_term(
                        Word::from_letters(&[letter(&u[k][i]), letter(&u[k][j].star())]),
                        one.clone(),
                    );
                }
                for (acc_is_u, mut p, tag) in [
                    (true, uu, "u·u*"),
                    (true, usu, "u*·u"),
                    (false, bb, "ū·ū*"),
                    (false, bsb, "ū*·ū"),
                ] {
                    p.add_term(Word::unit(), -dlt.clone());
                    let mv = self.single.ideal_member(&p);
                    let acc = if acc_is_u { &mut u_acc } else { &mut ubar_acc };
                    acc.add(Verdict::from_membership(&mv.membership), || {
                        format!(
                            "({tag})[{i},{j}] − δ has normal form {} ({})",
                            mv.normal_form.display(alg),
                            describe(&mv.membership)
                        )
                    });
                }
            }
        }
        vec![u_acc.finish(), ubar_acc.finish()]
    }

    /// The full Hopf suite for this presentation.
    pub fn run_all(&self) -> StructureReport {
        let mut checks = vec![
            self.check_coproduct_well_defined(),
            self.check_coassociativity(),
            self.check_counit_well_defined(),
            self.check_counit_left(),
            self.check_counit_right(),
            self.check_antipode_well_defined(),
            self.check_antipode_left(),
            self.check_antipode_right(),
        ];
        checks.extend(self.check_kac_unitarity());
        StructureReport::new(self.pres.name.clone(), checks)
    }

    /// Probes whether all generator pairs commute modulo the ideal.  Absence
    /// of a zero reduction never disproves commutativity, so the verdict is
    /// Pass or Inconclusive — never Fail.
    pub fn commutativity_probe(&self) -> CheckReport {
        let alg = &self.pres.algebra;
        let gens = alg.gens();
        let mut unresolved = 0usize;
        let mut first: Option<String> = None;
        for (i, g) in gens.iter().enumerate() {
            for h in &gens[i + 1..] {
                let gp = Poly::from_letter(alg.letter_of(g).expect("in bounds"));
                let hp = Poly::from_letter(alg.letter_of(h).expect("in bounds"));
                let comm = &gp.mul_ref(&hp) - &hp.mul_ref(&gp);
                let mv = self.single.ideal_member(&comm);
                if mv.membership != Membership::InIdeal {
                    unresolved += 1;
                    if first.is_none() {
                        first = Some(format!(
                            "[{g},{h}] has normal form {}",
                            clip_witness(&mv.normal_form.display(alg))
                        ));
                    }
                }
            }
        }
        let mut acc =
            CheckAccumulator::new("commutativity_probe").with_rules_used(self.single.num_rules());
        if unresolved > 0 {
            acc.add(Verdict::Inconclusive, || {
                format!(
                    "{unresolved} generator pair(s) not shown to commute; first: {}",
                    first.expect("unresolved pair recorded")
                )
            });
        }
        acc.finish()
    }

    /// Pass when the commutator of the two generators provably has a nonzero
    /// normal form under a bounded-confluent system; the witness is the
    /// normal form itself.
    pub fn noncommutativity_witness(&self, g: &GenId, h: &GenId) -> CheckReport {
        let alg = &self.pres.algebra;
        let gp = Poly::from_letter(alg.letter_of(g).expect("in bounds"));
        let hp = Poly::from_letter(alg.letter_of(h).expect("in bounds"));
        let comm = &gp.mul_ref(&hp) - &hp.mul_ref(&gp);
        let mv = self.single.ideal_member(&comm);
        let report = match &mv.membership {
            Membership::InIdeal => CheckReport::new("noncommutativity_witness", Verdict::Fail)
                .with_witness(format!("[{g},{h}] lies in the ideal — the pair commutes")),
            Membership::NotInIdealUpTo(d) => CheckReport::new(
                "noncommutativity_witness",
                Verdict::Pass,
            )
            .with_witness(clip_witness(&format!(
                "[{g},{h}] has nonzero normal form {} under a system confluent up to degree {d}",
                mv.normal_form.display(alg)
            ))),
            Membership::Inconclusive(why) => {
                CheckReport::new("noncommutativity_witness", Verdict::Inconclusive).with_witness(
                    clip_witness(&format!(
                        "[{g},{h}] has nonzero normal form {}, but {why}",
                        mv.normal_form.display(alg)
                    )),
                )
            }
        };
        report.with_rules_used(self.single.num_rules())
    }
}

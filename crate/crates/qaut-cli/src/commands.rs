//! Command implementations and the JSON report envelope.

use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use qaut::coaction::CoactionChecker;
use qaut::hopf::{check_au_model, check_block_embedding, check_point_embedding, HopfChecker};
use qaut::models::{
    appendix_p_inverse, appendix_v_equivalence, au_model_rep, commutator_norm, complexify,
    enumerate_characters_magic, characters_magic_q, seeded_orthogonal, seeded_positive_q,
    twisted_u_from_orthogonal, two_projection_rep, numeric_verify, NumericRep,
    NumericVerifyReport,
};
use qaut::presentations::{Presentation, SpaceSpec};
use qaut::report::{CheckAccumulator, CheckReport, StructureReport, Verdict};
use qaut::Error;

use crate::dsl::{DslSpec, Variant};

/// Budgets and knobs common to all commands.
#[derive(Clone, Copy, Debug)]
pub struct Opts {
    pub degree_cap: usize,
    pub rule_cap: usize,
    pub tol: f64,
    pub seed: u64,
}

/// One report entry.  Suites carry their own overall verdict; probe entries
/// are advisory — a quantum permutation group need not be commutative, so
/// neither probe outcome is a failure and they never gate the exit code.
#[derive(Serialize)]
#[serde(untagged)]
pub enum Entry {
    Structure(StructureReport),
    Probe {
        subject: String,
        check: CheckReport,
        advisory: bool,
    },
    Points(PointsEntry),
    Numeric(NumericEntry),
}

#[derive(Serialize)]
pub struct PointsEntry {
    pub subject: String,
    pub points: Vec<String>,
    pub count: usize,
    pub verdict: Verdict,
}

#[derive(Serialize)]
pub struct NumericEntry {
    pub subject: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    pub report: NumericVerifyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutator_norm: Option<f64>,
    pub verdict: Verdict,
}

impl Entry {
    /// Verdict that participates in the envelope's overall; `None` for
    /// advisory entries.
    pub fn gating_verdict(&self) -> Option<Verdict> {
        match self {
            Entry::Structure(s) => Some(s.overall),
            Entry::Probe { .. } => None,
            Entry::Points(p) => Some(p.verdict),
            Entry::Numeric(n) => Some(n.verdict),
        }
    }

    pub fn render(&self, out: &mut String) {
        match self {
            Entry::Structure(s) => {
                out.push_str(&format!("{}\n", s.subject));
                for c in &s.checks {
                    out.push_str(&format!("  {:<40} {}\n", c.check, verdict_str(c.verdict)));
                    if let Some(w) = &c.witness {
                        out.push_str(&format!("      witness: {w}\n"));
                    }
                }
                out.push_str(&format!("  overall: {}\n", verdict_str(s.overall)));
            }
            Entry::Probe { subject, check, .. } => {
                out.push_str(&format!(
                    "{subject}\n  {:<40} {} (advisory)\n",
                    check.check,
                    verdict_str(check.verdict)
                ));
                if let Some(w) = &check.witness {
                    out.push_str(&format!("      witness: {w}\n"));
                }
            }
            Entry::Points(p) => {
                out.push_str(&format!(
                    "{}\n  {} classical point(s): {}\n  verified: {}\n",
                    p.subject,
                    p.count,
                    p.points.join(", "),
                    verdict_str(p.verdict)
                ));
            }
            Entry::Numeric(n) => {
                out.push_str(&format!("{}\n", n.subject));
                if let Some(t) = n.theta {
                    out.push_str(&format!("  theta: {t:.6}\n"));
                }
                out.push_str(&format!(
                    "  max relation residual: {:.3e} (tolerance {:.1e})\n",
                    n.report.max_residual, n.report.tolerance
                ));
                if let Some(c) = n.commutator_norm {
                    out.push_str(&format!("  commutator norm: {c:.9}\n"));
                }
                out.push_str(&format!("  verdict: {}\n", verdict_str(n.verdict)));
            }
        }
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::Inconclusive => "inconclusive",
    }
}

/// The versioned JSON envelope.
#[derive(Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema: u32,
    pub config: ConfigEcho,
    pub entries: Vec<Entry>,
    pub overall: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Serialize)]
pub struct ConfigEcho {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dsl: Option<String>,
    pub degree_cap: usize,
    pub rule_cap: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Report {
    pub fn new(config: ConfigEcho, entries: Vec<Entry>) -> Self {
        let overall = entries
            .iter()
            .filter_map(Entry::gating_verdict)
            .fold(Verdict::Pass, Verdict::combine);
        Report {
            tool: "qaut",
            version: env!("CARGO_PKG_VERSION"),
            schema: 1,
            config,
            entries,
            overall,
            elapsed_ms: None,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            e.render(&mut out);
            out.push('\n');
        }
        out.push_str(&format!("overall: {}\n", verdict_str(self.overall)));
        out
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

/// Hopf-axiom suite plus the advisory commutativity probe.
pub fn check_hopf(spec: &DslSpec, opts: &Opts) -> Result<Vec<Entry>, Error> {
    let pres = spec.presentation()?;
    let checker = HopfChecker::new(&pres, opts.degree_cap, opts.rule_cap)?;
    let suite = checker.run_all();
    let probe = checker.commutativity_probe();
    Ok(vec![
        Entry::Structure(suite),
        Entry::Probe {
            subject: format!("commutativity({})", pres.name),
            check: probe,
            advisory: true,
        },
    ])
}

/// Coaction-axiom suite on the presentation's underlying finite space.
pub fn check_coaction(spec: &DslSpec, opts: &Opts) -> Result<Vec<Entry>, Error> {
    let pres = spec.presentation()?;
    let checker = CoactionChecker::new(&pres, opts.degree_cap, opts.rule_cap)?;
    Ok(vec![Entry::Structure(checker.run_all())])
}

/// Exact character enumeration (point spaces only).
pub fn classical_points(spec: &DslSpec) -> Result<Vec<Entry>, Error> {
    let n = match &spec.space {
        Some(SpaceSpec::X(n)) => *n,
        other => {
            return Err(Error::CapExceeded(format!(
                "classical points are only enumerable for point spaces X(n); got {other:?} \
                 (the character set of a matrix quantum automorphism group is a continuum)"
            )))
        }
    };
    let (subject, chars) = match spec.variant {
        Variant::Aut => (format!("classical_points(X({n}))"), enumerate_characters_magic(n)?),
        Variant::QAut => {
            let q = spec
                .q
                .clone()
                .ok_or_else(|| Error::DimensionMismatch("variant q_aut needs a `Q …;` statement".into()))?;
            let diag = q.diagonal().ok_or_else(|| {
                Error::DimensionMismatch(
                    "character enumeration for q_aut needs a diagonal Q".into(),
                )
            })?;
            (
                format!("classical_points(q_magic({n}))"),
                characters_magic_q(n, &diag)?,
            )
        }
        other => {
            return Err(Error::CapExceeded(format!(
                "classical points are only enumerable for variants aut/q_aut; got {other:?}"
            )))
        }
    };
    let count = chars.len();
    Ok(vec![Entry::Points(PointsEntry {
        subject,
        points: chars.into_iter().map(|c| c.label).collect(),
        count,
        verdict: Verdict::Pass,
    })])
}

fn numeric_entry(
    subject: String,
    pres: &Presentation,
    rep: &NumericRep,
    theta: Option<f64>,
    commutator: Option<f64>,
) -> Result<Entry, Error> {
    let report = numeric_verify(pres, rep)?;
    let verdict = report.verdict;
    Ok(Entry::Numeric(NumericEntry {
        subject,
        dim: rep.dim,
        theta,
        report,
        commutator_norm: commutator,
        verdict,
    }))
}

/// Numeric representation demos: the two-projection witness on the 4-point
/// space, the scalar universal-unitary model on matrix spaces.
pub fn rep_demo(spec: &DslSpec, opts: &Opts) -> Result<Vec<Entry>, Error> {
    match &spec.space {
        Some(SpaceSpec::X(4)) => {
            let pres = qaut::presentations::magic_presentation(4);
            let mut entries = Vec::new();
            let mut thetas = vec![std::f64::consts::FRAC_PI_4];
            // Seed-determined extra angles in (0, π/2).
            let extra = seeded_positive_q(3, opts.seed);
            for k in 0..3 {
                let x = extra[(k, k)].fract().abs();
                thetas.push(0.1 + x * (std::f64::consts::FRAC_PI_2 - 0.2));
            }
            for (i, theta) in thetas.iter().enumerate() {
                let rep = two_projection_rep(*theta);
                let comm = commutator_norm(
                    &rep,
                    &pres.algebra.a_x(1, 1),
                    &pres.algebra.a_x(3, 3),
                )?;
                let tag = if i == 0 { "witness" } else { "seeded" };
                entries.push(numeric_entry(
                    format!("two_projection({tag})"),
                    &pres,
                    &rep,
                    Some(*theta),
                    Some(comm),
                )?);
            }
            Ok(entries)
        }
        Some(SpaceSpec::M(n)) => {
            let pres = qaut::presentations::aut_mn_presentation(*n);
            let w = complexify(&seeded_orthogonal(*n as usize, opts.seed));
            let rep = au_model_rep(*n, &w)?;
            Ok(vec![numeric_entry(
                format!("au_scalar_model(M({n}))"),
                &pres,
                &rep,
                None,
                None,
            )?])
        }
        other => Err(Error::DimensionMismatch(format!(
            "rep-demo supports `space X(4)` (two-projection witness) and `space M(n)` \
             (scalar universal-unitary model); got {other:?}"
        ))),
    }
}

/// Seeded numeric checks of the Q-twist equivalence and the reindexed
/// inverse identity, accumulated per dimension.
pub fn appendix_checks(opts: &Opts, dims: &[usize], count: u64) -> Result<Vec<Entry>, Error> {
    let mut entries = Vec::new();
    for &dim in dims {
        let mut equiv = CheckAccumulator::new("appendix.v_equivalence");
        let mut pinv = CheckAccumulator::new("appendix.p_inverse");
        for s in 0..count {
            let q = seeded_positive_q(dim, opts.seed.wrapping_add(s));
            let o = seeded_orthogonal(dim, opts.seed.wrapping_add(1_000_000 + s));
            let u = twisted_u_from_orthogonal(&q, &o)?;
            let e = appendix_v_equivalence(&q, &u, opts.tol)?;
            equiv.add(e.verdict, || {
                format!("dim {dim}, seed offset {s}: {}", e.witness.clone().unwrap_or_default())
            });
            let p = appendix_p_inverse(&q, opts.tol)?;
            pinv.add(p.verdict, || {
                format!("dim {dim}, seed offset {s}: {}", p.witness.clone().unwrap_or_default())
            });
        }
        entries.push(Entry::Structure(StructureReport::new(
            format!("appendix(dim={dim}, seeds={count})"),
            vec![equiv.finish(), pinv.finish()],
        )));
    }
    Ok(entries)
}

/// The three quantum-subgroup embeddings at configurable sizes.
pub fn embeddings(opts: &Opts, blocks: &[u16], n: u16, m: u16) -> Result<Vec<Entry>, Error> {
    let mut entries = Vec::new();
    for k0 in 1..=blocks.len() as u16 {
        entries.push(Entry::Structure(check_block_embedding(
            blocks,
            k0,
            opts.degree_cap,
            opts.rule_cap,
        )?));
    }
    entries.push(Entry::Structure(check_point_embedding(
        n,
        m,
        opts.degree_cap,
        opts.rule_cap,
    )?));
    entries.push(Entry::Structure(check_au_model(
        n,
        opts.degree_cap,
        opts.rule_cap,
    )?));
    Ok(entries)
}

/// Everything applicable to one presentation: Hopf suite, commutativity
/// probe, coaction suite, classical points, and the numeric demo where one
/// exists for the space.
pub fn full_report(spec: &DslSpec, opts: &Opts) -> Result<Vec<Entry>, Error> {
    let mut entries = check_hopf(spec, opts)?;
    let pres = spec.presentation()?;
    if pres.space().is_some() {
        entries.extend(check_coaction(spec, opts)?);
    }
    if matches!(spec.space, Some(SpaceSpec::X(_)))
        && matches!(spec.variant, Variant::Aut | Variant::QAut)
    {
        entries.extend(classical_points(spec)?);
    }
    match &spec.space {
        Some(SpaceSpec::X(4)) | Some(SpaceSpec::M(_)) if spec.variant == Variant::Aut => {
            entries.extend(rep_demo(spec, opts)?);
        }
        _ => {}
    }
    Ok(entries)
}

/// Re-runs completion with tracing enabled and writes one JSON object per
/// derived rule to `path` (JSON Lines).
pub fn write_trace(path: &Path, spec: &DslSpec, opts: &Opts) -> Result<(), Error> {
    let pres = spec.presentation()?;
    let mut sys = pres.system()?;
    sys.record_trace(true);
    sys.complete(opts.degree_cap, opts.rule_cap);
    let mut file = std::fs::File::create(path).map_err(|e| Error::Parse {
        line: 0,
        col: 0,
        msg: format!("cannot write trace file {}: {e}", path.display()),
    })?;
    for ev in sys.trace() {
        let obj = serde_json::json!({
            "rule_id": ev.rule_id,
            "lhs": ev.lhs.display(&pres.algebra),
            "rhs": ev.rhs.display(&pres.algebra),
            "parents": ev.parents,
            "degree": ev.degree,
        });
        writeln!(file, "{obj}").map_err(|e| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("cannot write trace file {}: {e}", path.display()),
        })?;
    }
    Ok(())
}

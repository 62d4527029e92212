//! Presentations of the quantum automorphism groups: generators, labeled
//! relation families, and declared structure maps (coproduct, counit,
//! antipode images).
//!
//! Builders cover the magic (n-point) presentation, the matrix-algebra and
//! multimatrix-algebra presentations, their Q-twisted variants, and the
//! orthogonal/unitary families `A_o` and `A_u`.  Structure-map images use the
//! tensor-copy convention of [`crate::ncalg`]: in a coproduct image, copy 0
//! letters are the left tensor leg and copy 1 letters the right leg.
//!
//! Some relation families are declared even though they are derivable from
//! the rest in the C*-setting (they are marked `redundant`); [`Presentation::reduced`]
//! drops them so the derivations themselves can be probed by completion.

mod qmatrix;
mod space;

pub use qmatrix::QMatrix;
pub use space::{finite_space, BasisIdx, FiniteSpace};

use std::collections::BTreeMap;

use num::Zero;

use crate::error::Error;
use crate::ncalg::{Algebra, GenId, GeneratorScheme, NCPoly, Word};
use crate::rewrite::{CompletionOutcome, RewriteSystem};
use crate::scalar::{GaussQ, Scalar};

type Poly = NCPoly<GaussQ>;

/// Shape of the finite space a presentation acts on (the CLI's `space` clause).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpaceSpec {
    /// The n-point space.
    X(u16),
    /// The full matrix algebra M_n.
    M(u16),
    /// A multimatrix algebra with the given block sizes.
    Blocks(Vec<u16>),
}

impl SpaceSpec {
    /// Block sizes of the underlying C*-algebra.
    pub fn blocks(&self) -> Vec<u16> {
        match self {
            SpaceSpec::X(n) => vec![1; *n as usize],
            SpaceSpec::M(n) => vec![*n],
            SpaceSpec::Blocks(sizes) => sizes.clone(),
        }
    }

    /// Side length of the fundamental matrix u (also dim B).
    pub fn u_dim(&self) -> usize {
        self.blocks()
            .iter()
            .map(|&n| (n as usize) * (n as usize))
            .sum()
    }
}

impl std::fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpaceSpec::X(n) => write!(f, "X({n})"),
            SpaceSpec::M(n) => write!(f, "M({n})"),
            SpaceSpec::Blocks(sizes) => {
                write!(f, "blocks(")?;
                for (i, n) in sizes.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{n}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A named group of relations, instantiated over its full index range.
#[derive(Clone, Debug)]
pub struct RelationFamily {
    /// Stable family name, e.g. `"row_sum"` or `"product"`.
    pub name: &'static str,
    pub relations: Vec<Poly>,
    /// Declared for fidelity but derivable from the other families in the
    /// C*-setting; dropped by [`Presentation::reduced`].
    pub redundant: bool,
}

impl RelationFamily {
    fn new(name: &'static str, relations: Vec<Poly>) -> Self {
        RelationFamily {
            name,
            relations,
            redundant: false,
        }
    }

    fn redundant(name: &'static str, relations: Vec<Poly>) -> Self {
        RelationFamily {
            name,
            relations,
            redundant: true,
        }
    }
}

/// One presented *-algebra together with its declared structure maps.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub algebra: Algebra,
    pub families: Vec<RelationFamily>,
    coproduct: BTreeMap<GenId, Poly>,
    counit: BTreeMap<GenId, GaussQ>,
    antipode: BTreeMap<GenId, Poly>,
}

impl Presentation {
    /// All declared relations, in family order.
    pub fn relations(&self) -> Vec<&Poly> {
        self.families
            .iter()
            .flat_map(|f| f.relations.iter())
            .collect()
    }

    pub fn relation_count(&self) -> usize {
        self.families.iter().map(|f| f.relations.len()).sum()
    }

    pub fn family(&self, name: &str) -> Option<&RelationFamily> {
        self.families.iter().find(|f| f.name == name)
    }

    /// The presentation with redundant relation families removed.
    pub fn reduced(&self) -> Presentation {
        let mut p = self.clone();
        p.name = format!("{}[reduced]", self.name);
        p.families.retain(|f| !f.redundant);
        p
    }

    /// Orients the declared relations into a raw rewrite system.
    pub fn system(&self) -> Result<RewriteSystem<GaussQ>, Error> {
        let rels: Vec<Poly> = self.relations().into_iter().cloned().collect();
        RewriteSystem::orient(&rels)
    }

    /// Orients and completes under the given budgets.
    pub fn completed_system(
        &self,
        degree_cap: usize,
        rule_cap: usize,
    ) -> Result<(RewriteSystem<GaussQ>, CompletionOutcome), Error> {
        let mut sys = self.system()?;
        let outcome = sys.complete(degree_cap, rule_cap);
        Ok((sys, outcome))
    }

    /// Coproduct image of an unstarred generator; copy 0 = left leg,
    /// copy 1 = right leg.
    pub fn coproduct_image(&self, g: &GenId) -> Option<&Poly> {
        self.coproduct.get(g)
    }

    pub fn counit_value(&self, g: &GenId) -> Option<&GaussQ> {
        self.counit.get(g)
    }

    /// Antipode image; the map carries separate entries for `g` and `g*`
    /// (they differ for the twisted variants, whose antipode is not
    /// *-preserving).
    pub fn antipode_image(&self, g: &GenId) -> Option<&Poly> {
        self.antipode.get(g)
    }

    pub fn has_structure_maps(&self) -> bool {
        let gens = self.algebra.gens();
        gens.iter().all(|g| {
            self.coproduct.contains_key(g)
                && self.counit.contains_key(g)
                && self.antipode.contains_key(g)
                && self.antipode.contains_key(&g.star())
        })
    }

    /// The fundamental matrix of generators, indexed by the space's basis
    /// order (for the orthogonal/unitary families, by plain matrix position).
    pub fn fundamental_matrix(&self) -> Vec<Vec<GenId>> {
        match self.algebra.scheme() {
            GeneratorScheme::X { n } => (1..=*n)
                .map(|i| (1..=*n).map(|j| self.algebra.a_x(i, j)).collect())
                .collect(),
            GeneratorScheme::U { n } => (1..=*n)
                .map(|i| (1..=*n).map(|j| self.algebra.u(i, j)).collect())
                .collect(),
            GeneratorScheme::M { .. } | GeneratorScheme::Blocks { .. } => {
                let spec = self.space().expect("matrix schemes have a space");
                let space = finite_space(&spec.blocks());
                let d = space.dim();
                (0..d)
                    .map(|r| {
                        (0..d)
                            .map(|c| u_entry(&spec, &self.algebra, &space, r, c))
                            .collect()
                    })
                    .collect()
            }
        }
    }

    /// The finite space this presentation acts on; `None` for the
    /// orthogonal/unitary families, which are not coactions on a space.
    pub fn space(&self) -> Option<SpaceSpec> {
        match self.algebra.scheme() {
            GeneratorScheme::X { n } => Some(SpaceSpec::X(*n)),
            GeneratorScheme::M { n } => Some(SpaceSpec::M(*n)),
            GeneratorScheme::Blocks { sizes } => Some(SpaceSpec::Blocks(sizes.clone())),
            GeneratorScheme::U { .. } => None,
        }
    }
}

fn delta(a: u16, b: u16) -> GaussQ {
    GaussQ::from_int(i64::from(a == b))
}

fn gen_poly(alg: &Algebra, g: &GenId) -> Poly {
    Poly::from_letter(alg.letter_of(g).expect("generator within scheme bounds"))
}

fn word2(alg: &Algebra, g1: &GenId, g2: &GenId) -> Word {
    Word::from_letters(&[
        alg.letter_of(g1).expect("generator within scheme bounds"),
        alg.letter_of(g2).expect("generator within scheme bounds"),
    ])
}

/// The magic-unitary presentation on n points: entries are self-adjoint
/// idempotents with all row and column sums equal to 1.
pub fn magic_presentation(n: u16) -> Presentation {
    assert!(n >= 1, "need at least one point");
    let alg = Algebra::new(GeneratorScheme::X { n });
    let mut idempotent = Vec::new();
    let mut adjoint = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let a = gen_poly(&alg, &alg.a_x(i, j));
            idempotent.push(&a.mul_ref(&a) - &a);
            adjoint.push(&a.star() - &a);
        }
    }
    let mut row_sum = Vec::new();
    for i in 1..=n {
        let mut s = &Poly::zero() - &Poly::one();
        for j in 1..=n {
            s.add_assign_ref(&gen_poly(&alg, &alg.a_x(i, j)));
        }
        row_sum.push(s);
    }
    let mut column_sum = Vec::new();
    for j in 1..=n {
        let mut s = &Poly::zero() - &Poly::one();
        for i in 1..=n {
            s.add_assign_ref(&gen_poly(&alg, &alg.a_x(i, j)));
        }
        column_sum.push(s);
    }

    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    let mut antipode = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let g = alg.a_x(i, j);
            let mut phi = Poly::zero();
            for k in 1..=n {
                phi.add_term(
                    word2(&alg, &alg.a_x(i, k), &alg.a_x(k, j).in_copy(1)),
                    GaussQ::from_int(1),
                );
            }
            coproduct.insert(g.clone(), phi);
            counit.insert(g.clone(), delta(i, j));
            let img = gen_poly(&alg, &alg.a_x(j, i));
            antipode.insert(g.star(), img.star());
            antipode.insert(g, img);
        }
    }

    Presentation {
        name: format!("magic({n})"),
        algebra: alg,
        families: vec![
            RelationFamily::new("idempotent", idempotent),
            RelationFamily::new("adjoint", adjoint),
            RelationFamily::new("row_sum", row_sum),
            RelationFamily::redundant("column_sum", column_sum),
        ],
        coproduct,
        counit,
        antipode,
    }
}

/// The quantum automorphism presentation of the matrix algebra M_n, with the
/// product, opposite-product, adjoint, unit and trace relation families.
pub fn aut_mn_presentation(n: u16) -> Presentation {
    assert!(n >= 1, "need a positive matrix size");
    let alg = Algebra::new(GeneratorScheme::M { n });

    let mut product = Vec::new();
    let mut product_op = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    for r in 1..=n {
                        for s in 1..=n {
                            // Σ_v a[k,v;i,j]·a[v,l;r,s] = δ_jr a[k,l;i,s]
                            let mut p = Poly::zero();
                            for v in 1..=n {
                                p.add_term(
                                    word2(&alg, &alg.a_m(k, v, i, j), &alg.a_m(v, l, r, s)),
                                    GaussQ::from_int(1),
                                );
                            }
                            if j == r {
                                p.add_assign_ref(
                                    &(&Poly::zero() - &gen_poly(&alg, &alg.a_m(k, l, i, s))),
                                );
                            }
                            product.push(p);

                            // Σ_v a[s,r;l,v]·a[j,i;v,k] = δ_jr a[s,i;l,k]
                            let mut q = Poly::zero();
                            for v in 1..=n {
                                q.add_term(
                                    word2(&alg, &alg.a_m(s, r, l, v), &alg.a_m(j, i, v, k)),
                                    GaussQ::from_int(1),
                                );
                            }
                            if j == r {
                                q.add_assign_ref(
                                    &(&Poly::zero() - &gen_poly(&alg, &alg.a_m(s, i, l, k))),
                                );
                            }
                            product_op.push(q);
                        }
                    }
                }
            }
        }
    }

    let mut adjoint = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let a = gen_poly(&alg, &alg.a_m(k, l, i, j));
                    let b = gen_poly(&alg, &alg.a_m(l, k, j, i));
                    adjoint.push(&a.star() - &b);
                }
            }
        }
    }

    let mut unit = Vec::new();
    let mut trace = Vec::new();
    for k in 1..=n {
        for l in 1..=n {
            let mut s = &Poly::zero() - &Poly::constant(delta(k, l));
            for r in 1..=n {
                s.add_assign_ref(&gen_poly(&alg, &alg.a_m(k, l, r, r)));
            }
            unit.push(s);

            let mut t = &Poly::zero() - &Poly::constant(delta(k, l));
            for r in 1..=n {
                t.add_assign_ref(&gen_poly(&alg, &alg.a_m(r, r, k, l)));
            }
            trace.push(t);
        }
    }

    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    let mut antipode = BTreeMap::new();
    for k in 1..=n {
        for l in 1..=n {
            for i in 1..=n {
                for j in 1..=n {
                    let g = alg.a_m(k, l, i, j);
                    let mut phi = Poly::zero();
                    for r in 1..=n {
                        for s in 1..=n {
                            phi.add_term(
                                word2(
                                    &alg,
                                    &alg.a_m(k, l, r, s),
                                    &alg.a_m(r, s, i, j).in_copy(1),
                                ),
                                GaussQ::from_int(1),
                            );
                        }
                    }
                    coproduct.insert(g.clone(), phi);
                    counit.insert(g.clone(), delta(k, i) * delta(l, j));
                    let img = gen_poly(&alg, &alg.a_m(j, i, l, k));
                    antipode.insert(g.star(), img.star());
                    antipode.insert(g, img);
                }
            }
        }
    }

    Presentation {
        name: format!("aut_M({n})"),
        algebra: alg,
        families: vec![
            RelationFamily::new("product", product),
            RelationFamily::redundant("product_op", product_op),
            RelationFamily::new("adjoint", adjoint),
            RelationFamily::new("unit", unit),
            RelationFamily::redundant("trace", trace),
        ],
        coproduct,
        counit,
        antipode,
    }
}

/// The quantum automorphism presentation of ⊕ₓ M_{n_x}.
pub fn aut_b_presentation(sizes: &[u16]) -> Presentation {
    assert!(
        !sizes.is_empty() && sizes.iter().all(|&n| n >= 1),
        "block sizes must be positive"
    );
    let alg = Algebra::new(GeneratorScheme::Blocks {
        sizes: sizes.to_vec(),
    });
    let m = sizes.len() as u16;
    let nb = |x: u16| sizes[(x - 1) as usize];

    let mut product = Vec::new();
    let mut product_op = Vec::new();
    for x in 1..=m {
        for y in 1..=m {
            for z in 1..=m {
                // Σ_v a[k,v;i,j;x,y]·a[v,l;r,s;x,z] = δ_jr δ_yz a[k,l;i,s;x,y]
                for k in 1..=nb(x) {
                    for l in 1..=nb(x) {
                        for i in 1..=nb(y) {
                            for j in 1..=nb(y) {
                                for r in 1..=nb(z) {
                                    for s in 1..=nb(z) {
                                        let mut p = Poly::zero();
                                        for v in 1..=nb(x) {
                                            p.add_term(
                                                word2(
                                                    &alg,
                                                    &alg.a_b(k, v, i, j, x, y),
                                                    &alg.a_b(v, l, r, s, x, z),
                                                ),
                                                GaussQ::from_int(1),
                                            );
                                        }
                                        if j == r && y == z {
                                            p.add_assign_ref(&(&Poly::zero()
                                                - &gen_poly(&alg, &alg.a_b(k, l, i, s, x, y))));
                                        }
                                        product.push(p);
                                    }
                                }
                            }
                        }
                    }
                }
                // Σ_v a[s,r;l,v;y,x]·a[j,i;v,k;z,x] = δ_jr δ_yz a[s,i;l,k;y,x]
                for k in 1..=nb(x) {
                    for l in 1..=nb(x) {
                        for r in 1..=nb(y) {
                            for s in 1..=nb(y) {
                                for i in 1..=nb(z) {
                                    for j in 1..=nb(z) {
                                        let mut q = Poly::zero();
                                        for v in 1..=nb(x) {
                                            q.add_term(
                                                word2(
                                                    &alg,
                                                    &alg.a_b(s, r, l, v, y, x),
                                                    &alg.a_b(j, i, v, k, z, x),
                                                ),
                                                GaussQ::from_int(1),
                                            );
                                        }
                                        if j == r && y == z {
                                            q.add_assign_ref(&(&Poly::zero()
                                                - &gen_poly(&alg, &alg.a_b(s, i, l, k, y, x))));
                                        }
                                        product_op.push(q);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut adjoint = Vec::new();
    for y in 1..=m {
        for z in 1..=m {
            for k in 1..=nb(y) {
                for l in 1..=nb(y) {
                    for i in 1..=nb(z) {
                        for j in 1..=nb(z) {
                            let a = gen_poly(&alg, &alg.a_b(k, l, i, j, y, z));
                            let b = gen_poly(&alg, &alg.a_b(l, k, j, i, y, z));
                            adjoint.push(&a.star() - &b);
                        }
                    }
                }
            }
        }
    }

    let mut unit = Vec::new();
    for y in 1..=m {
        for k in 1..=nb(y) {
            for l in 1..=nb(y) {
                let mut s = &Poly::zero() - &Poly::constant(delta(k, l));
                for z in 1..=m {
                    for r in 1..=nb(z) {
                        s.add_assign_ref(&gen_poly(&alg, &alg.a_b(k, l, r, r, y, z)));
                    }
                }
                unit.push(s);
            }
        }
    }

    let mut trace = Vec::new();
    for z in 1..=m {
        for k in 1..=nb(z) {
            for l in 1..=nb(z) {
                let mut t = &Poly::zero() - &Poly::constant(delta(k, l));
                for y in 1..=m {
                    for r in 1..=nb(y) {
                        t.add_assign_ref(&gen_poly(&alg, &alg.a_b(r, r, k, l, y, z)));
                    }
                }
                trace.push(t);
            }
        }
    }

    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    let mut antipode = BTreeMap::new();
    for x in 1..=m {
        for y in 1..=m {
            for k in 1..=nb(x) {
                for l in 1..=nb(x) {
                    for i in 1..=nb(y) {
                        for j in 1..=nb(y) {
                            let g = alg.a_b(k, l, i, j, x, y);
                            let mut phi = Poly::zero();
                            for p in 1..=m {
                                for r in 1..=nb(p) {
                                    for s in 1..=nb(p) {
                                        phi.add_term(
                                            word2(
                                                &alg,
                                                &alg.a_b(k, l, r, s, x, p),
                                                &alg.a_b(r, s, i, j, p, y).in_copy(1),
                                            ),
                                            GaussQ::from_int(1),
                                        );
                                    }
                                }
                            }
                            coproduct.insert(g.clone(), phi);
                            let eps = if x == y {
                                delta(k, i) * delta(l, j)
                            } else {
                                GaussQ::zero()
                            };
                            counit.insert(g.clone(), eps);
                            let img = gen_poly(&alg, &alg.a_b(j, i, l, k, y, x));
                            antipode.insert(g.star(), img.star());
                            antipode.insert(g, img);
                        }
                    }
                }
            }
        }
    }

    let sizes_str = sizes
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",");
    Presentation {
        name: format!("aut_B({sizes_str})"),
        algebra: alg,
        families: vec![
            RelationFamily::new("product", product),
            RelationFamily::redundant("product_op", product_op),
            RelationFamily::new("adjoint", adjoint),
            RelationFamily::new("unit", unit),
            RelationFamily::redundant("trace", trace),
        ],
        coproduct,
        counit,
        antipode,
    }
}

/// Entry `u[row, col]` of the fundamental matrix of a presentation whose
/// generators form a square matrix indexed like the space's basis.
fn u_entry(pres_space: &SpaceSpec, alg: &Algebra, space: &FiniteSpace, row: usize, col: usize) -> GenId {
    match pres_space {
        SpaceSpec::X(_) => alg.a_x((row + 1) as u16, (col + 1) as u16),
        SpaceSpec::M(_) | SpaceSpec::Blocks(_) => {
            let r = space.basis()[row];
            let c = space.basis()[col];
            match pres_space {
                SpaceSpec::M(_) => alg.a_m(r.row, r.col, c.row, c.col),
                _ => alg.a_b(r.row, r.col, c.row, c.col, r.block, c.block),
            }
        }
    }
}

/// The Q-twisted variant of a quantum automorphism presentation.
///
/// For the n-point space the twist is transpose-sided
/// (`uᵗQuQ⁻¹ = I = QuQ⁻¹uᵗ` on top of the idempotent/adjoint/row-sum
/// families); for matrix and multimatrix algebras it is adjoint-sided
/// (`u*QuQ⁻¹ = I = QuQ⁻¹u*` on top of the product/adjoint/unit families).
/// Q must be exactly positive definite and of the same dimension as u.
pub fn q_variant(space_spec: &SpaceSpec, qm: &QMatrix) -> Result<Presentation, Error> {
    let d = space_spec.u_dim();
    if qm.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "space {space_spec} needs a {d}×{d} Q, got {}×{}",
            qm.dim(),
            qm.dim()
        )));
    }
    qm.require_positive()?;
    let qinv = qm.inverse()?;

    let base = match space_spec {
        SpaceSpec::X(n) => magic_presentation(*n),
        SpaceSpec::M(n) => aut_mn_presentation(*n),
        SpaceSpec::Blocks(sizes) => aut_b_presentation(sizes),
    };
    let alg = base.algebra.clone();
    let space = finite_space(&space_spec.blocks());
    let entry = |row: usize, col: usize| u_entry(space_spec, &alg, &space, row, col);
    // The X-family twist conjugates by transpose; matrix-type twists by
    // adjoint.  Encoded as: left factor letter for position (r,c) of the
    // first u-occurrence.
    let transpose_sided = matches!(space_spec, SpaceSpec::X(_));

    let mut twist = Vec::new();
    // (uᵗQuQ⁻¹)_{jk} − δ_{jk}   or   (u*QuQ⁻¹)_{jk} − δ_{jk}
    for j in 0..d {
        for k in 0..d {
            let mut p = Poly::zero();
            for i in 0..d {
                for l in 0..d {
                    for mm in 0..d {
                        let c = qm.get(i, l).clone() * qinv.get(mm, k).clone();
                        if c.is_zero() {
                            continue;
                        }
                        let first = if transpose_sided {
                            alg.letter_of(&entry(i, j)).expect("in bounds")
                        } else {
                            alg.letter_of(&entry(i, j).star()).expect("in bounds")
                        };
                        let second = alg.letter_of(&entry(l, mm)).expect("in bounds");
                        p.add_term(Word::from_letters(&[first, second]), c);
                    }
                }
            }
            p.add_term(Word::unit(), -delta(j as u16, k as u16));
            twist.push(p);
        }
    }
    // (QuQ⁻¹uᵗ)_{jk} − δ_{jk}   or   (QuQ⁻¹u*)_{jk} − δ_{jk}
    for j in 0..d {
        for k in 0..d {
            let mut p = Poly::zero();
            for i in 0..d {
                for l in 0..d {
                    for mm in 0..d {
                        let c = qm.get(j, i).clone() * qinv.get(l, mm).clone();
                        if c.is_zero() {
                            continue;
                        }
                        let first = alg.letter_of(&entry(i, l)).expect("in bounds");
                        let second = if transpose_sided {
                            alg.letter_of(&entry(k, mm)).expect("in bounds")
                        } else {
                            alg.letter_of(&entry(k, mm).star()).expect("in bounds")
                        };
                        p.add_term(Word::from_letters(&[first, second]), c);
                    }
                }
            }
            p.add_term(Word::unit(), -delta(j as u16, k as u16));
            twist.push(p);
        }
    }

    // Declared families: the base presentation minus its redundant families,
    // plus the twist.  (The dropped families are consequences of the twist.)
    let mut families: Vec<RelationFamily> = base
        .families
        .iter()
        .filter(|f| !f.redundant)
        .cloned()
        .collect();
    families.push(RelationFamily::new("q_twist", twist));

    // Antipode: the twisted inverse of u.
    //   transpose-sided: u⁻¹ = (QuQ⁻¹)ᵗ, so κ(u[i,j]) = Σ Q_{jl} u[l,m] Q⁻¹_{mi};
    //   adjoint-sided:   u⁻¹ = Q⁻¹u*Q,   so κ(u[i,j]) = Σ Q⁻¹_{il} u[m,l]* Q_{mj}.
    // Starred generators: with the self-adjointness family in force (the
    // transpose-sided case) κ(g*) = κ(g); otherwise κ(g*) = κ(g)*.
    let mut antipode = BTreeMap::new();
    for i in 0..d {
        for j in 0..d {
            let g = entry(i, j);
            let mut img = Poly::zero();
            for l in 0..d {
                for mm in 0..d {
                    if transpose_sided {
                        let c = qm.get(j, l).clone() * qinv.get(mm, i).clone();
                        if !c.is_zero() {
                            img.add_term(
                                Word::letter(alg.letter_of(&entry(l, mm)).expect("in bounds")),
                                c,
                            );
                        }
                    } else {
                        let c = qinv.get(i, l).clone() * qm.get(mm, j).clone();
                        if !c.is_zero() {
                            img.add_term(
                                Word::letter(
                                    alg.letter_of(&entry(mm, l).star()).expect("in bounds"),
                                ),
                                c,
                            );
                        }
                    }
                }
            }
            let starred_img = if transpose_sided {
                img.clone()
            } else {
                img.star()
            };
            antipode.insert(g.star(), starred_img);
            antipode.insert(g, img);
        }
    }

    Ok(Presentation {
        name: format!("q_{}[Q={}]", base.name, qm),
        algebra: alg,
        families,
        coproduct: base.coproduct,
        counit: base.counit,
        antipode,
    })
}

/// Kinds of presentations from the orthogonal/unitary families.
#[derive(Clone, Debug)]
pub enum AppendixKind {
    /// ū = u with the Q-twisted orthogonality pair.
    AONew(QMatrix),
    /// The narrower variant: additionally u uᵗ = I = uᵗ u.
    AOOld(QMatrix),
    /// u and ū both unitary.
    AU(u16),
}

/// Builds an orthogonal/unitary-family presentation.
pub fn appendix_presentation(kind: &AppendixKind) -> Result<Presentation, Error> {
    match kind {
        AppendixKind::AONew(q) => a_o_presentation(q, false),
        AppendixKind::AOOld(q) => a_o_presentation(q, true),
        AppendixKind::AU(n) => Ok(a_u_presentation(*n)),
    }
}

fn a_o_presentation(qm: &QMatrix, old: bool) -> Result<Presentation, Error> {
    qm.require_positive()?;
    let qinv = qm.inverse()?;
    let n = qm.dim();
    let alg = Algebra::new(GeneratorScheme::U { n: n as u16 });
    let u = |i: usize, j: usize| alg.u((i + 1) as u16, (j + 1) as u16);

    let mut real = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = gen_poly(&alg, &u(i, j));
            real.push(&a.star() - &a);
        }
    }

    let mut q_orth = Vec::new();
    for j in 0..n {
        for k in 0..n {
            // (uᵗQuQ⁻¹)_{jk} − δ_{jk}
            let mut p = Poly::zero();
            for i in 0..n {
                for l in 0..n {
                    for mm in 0..n {
                        let c = qm.get(i, l).clone() * qinv.get(mm, k).clone();
                        if !c.is_zero() {
                            p.add_term(
                                word2(&alg, &u(i, j), &u(l, mm)),
                                c,
                            );
                        }
                    }
                }
            }
            p.add_term(Word::unit(), -delta(j as u16, k as u16));
            q_orth.push(p);
            // (QuQ⁻¹uᵗ)_{jk} − δ_{jk}
            let mut p = Poly::zero();
            for i in 0..n {
                for l in 0..n {
                    for mm in 0..n {
                        let c = qm.get(j, i).clone() * qinv.get(l, mm).clone();
                        if !c.is_zero() {
                            p.add_term(
                                word2(&alg, &u(i, l), &u(k, mm)),
                                c,
                            );
                        }
                    }
                }
            }
            p.add_term(Word::unit(), -delta(j as u16, k as u16));
            q_orth.push(p);
        }
    }

    let mut families = vec![
        RelationFamily::new("real", real),
        RelationFamily::new("q_orthogonality", q_orth),
    ];
    if old {
        let mut orth = Vec::new();
        for i in 0..n {
            for j in 0..n {
                // (u uᵗ)_{ij} − δ_{ij} and (uᵗ u)_{ij} − δ_{ij}
                let mut p = Poly::zero();
                let mut q = Poly::zero();
                for k in 0..n {
                    p.add_term(word2(&alg, &u(i, k), &u(j, k)), GaussQ::from_int(1));
                    q.add_term(word2(&alg, &u(k, i), &u(k, j)), GaussQ::from_int(1));
                }
                p.add_term(Word::unit(), -delta(i as u16, j as u16));
                q.add_term(Word::unit(), -delta(i as u16, j as u16));
                orth.push(p);
                orth.push(q);
            }
        }
        families.push(RelationFamily::new("orthogonality", orth));
    }

    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    let mut antipode = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let g = u(i, j);
            let mut phi = Poly::zero();
            for k in 0..n {
                phi.add_term(
                    word2(&alg, &u(i, k), &u(k, j).in_copy(1)),
                    GaussQ::from_int(1),
                );
            }
            coproduct.insert(g.clone(), phi);
            counit.insert(g.clone(), delta(i as u16, j as u16));
            // κ(u[i,j]) = (QuQ⁻¹)_{ji} = Σ Q_{jl} u[l,m] Q⁻¹_{mi}; the
            // generators are self-adjoint, so κ(g*) = κ(g).
            let mut img = Poly::zero();
            for l in 0..n {
                for mm in 0..n {
                    let c = qm.get(j, l).clone() * qinv.get(mm, i).clone();
                    if !c.is_zero() {
                        img.add_term(
                            Word::letter(alg.letter_of(&u(l, mm)).expect("in bounds")),
                            c,
                        );
                    }
                }
            }
            antipode.insert(g.star(), img.clone());
            antipode.insert(g, img);
        }
    }

    Ok(Presentation {
        name: format!(
            "a_o_{}[Q={}]",
            if old { "old" } else { "new" },
            qm
        ),
        algebra: alg,
        families,
        coproduct,
        counit,
        antipode,
    })
}

/// The universal unitary presentation: u and ū both unitary.
pub fn a_u_presentation(n: u16) -> Presentation {
    assert!(n >= 1);
    let alg = Algebra::new(GeneratorScheme::U { n });
    let u = |i: u16, j: u16| alg.u(i, j);

    let fam = |starred_first: bool, row_major: bool| {
        // row_major:  Σ_k x[i,k]·y[j,k]* − δ_{ij}   (an x xᴴ = I shape)
        // !row_major: Σ_k x[k,i]*·y[k,j] − δ_{ij}   (an xᴴ x = I shape)
        let mut rels = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let mut p = Poly::zero();
                for k in 1..=n {
                    let (g1, g2) = if row_major {
                        (u(i, k), u(j, k).star())
                    } else {
                        (u(k, i).star(), u(k, j))
                    };
                    let (g1, g2) = if starred_first {
                        (g1.star(), g2.star())
                    } else {
                        (g1, g2)
                    };
                    p.add_term(word2(&alg, &g1, &g2), GaussQ::from_int(1));
                }
                p.add_term(Word::unit(), -delta(i, j));
                rels.push(p);
            }
        }
        rels
    };

    // u u* = I, u* u = I, ū ū* = I (entrywise Σ u[i,k]* u[j,k]), ū* ū = I.
    let families = vec![
        RelationFamily::new("u_right_unitary", fam(false, true)),
        RelationFamily::new("u_left_unitary", fam(false, false)),
        RelationFamily::new("ubar_right_unitary", fam(true, true)),
        RelationFamily::new("ubar_left_unitary", fam(true, false)),
    ];

    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    let mut antipode = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let g = u(i, j);
            let mut phi = Poly::zero();
            for k in 1..=n {
                phi.add_term(
                    word2(&alg, &u(i, k), &u(k, j).in_copy(1)),
                    GaussQ::from_int(1),
                );
            }
            coproduct.insert(g.clone(), phi);
            counit.insert(g.clone(), delta(i, j));
            let img = gen_poly(&alg, &u(j, i).star());
            antipode.insert(g.star(), img.star());
            antipode.insert(g, img);
        }
    }

    Presentation {
        name: format!("a_u({n})"),
        algebra: alg,
        families,
        coproduct,
        counit,
        antipode,
    }
}

/// Outcome of comparing a degenerate multimatrix presentation against its
/// single-family counterpart after canonical renaming of generators.
#[derive(Clone, Debug)]
pub struct DegenerationReport {
    pub subject: String,
    pub reference: String,
    /// Reference relations with no counterpart among the renamed subject
    /// relations.
    pub missing: Vec<String>,
    /// Renamed subject relations that are not reference relations.
    pub extra: Vec<String>,
}

impl DegenerationReport {
    pub fn sets_equal(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Compares `aut_B(sizes)` against `magic(m)` (all blocks size 1) or
/// `aut_M(n)` (a single block) by renaming generators canonically and
/// diffing the relation sets.  Returns `None` for non-degenerate shapes.
pub fn degeneration_report(sizes: &[u16]) -> Option<DegenerationReport> {
    let subject = aut_b_presentation(sizes);
    let (reference, rename): (Presentation, Box<dyn Fn(&GenId) -> GenId>) =
        if sizes.iter().all(|&n| n == 1) {
            let m = sizes.len() as u16;
            let reference = magic_presentation(m);
            let ref_alg = reference.algebra.clone();
            (
                reference,
                Box::new(move |g: &GenId| ref_alg.a_x(g.indices[4], g.indices[5])),
            )
        } else if sizes.len() == 1 {
            let n = sizes[0];
            let reference = aut_mn_presentation(n);
            let ref_alg = reference.algebra.clone();
            (
                reference,
                Box::new(move |g: &GenId| {
                    ref_alg.a_m(g.indices[0], g.indices[1], g.indices[2], g.indices[3])
                }),
            )
        } else {
            return None;
        };

    let ref_alg = &reference.algebra;
    let phi = |g: &GenId| -> Option<Poly> { Some(gen_poly(ref_alg, &rename(g))) };
    let mut subject_set: BTreeMap<String, usize> = BTreeMap::new();
    for r in subject.relations() {
        let renamed = crate::ncalg::substitute(r, &subject.algebra, &phi)
            .expect("total renaming");
        *subject_set.entry(renamed.display(ref_alg)).or_insert(0) += 1;
    }
    let mut reference_set: BTreeMap<String, usize> = BTreeMap::new();
    for r in reference.relations() {
        *reference_set.entry(r.display(ref_alg)).or_insert(0) += 1;
    }

    let missing: Vec<String> = reference_set
        .keys()
        .filter(|k| !subject_set.contains_key(*k))
        .cloned()
        .collect();
    let extra: Vec<String> = subject_set
        .keys()
        .filter(|k| !reference_set.contains_key(*k))
        .cloned()
        .collect();
    Some(DegenerationReport {
        subject: subject.name,
        reference: reference.name,
        missing,
        extra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_counts_match_index_ranges() {
        let p = magic_presentation(3);
        assert_eq!(p.algebra.num_gens(), 9);
        let counts: Vec<usize> = p.families.iter().map(|f| f.relations.len()).collect();
        assert_eq!(counts, vec![9, 9, 3, 3]);

        let p = aut_mn_presentation(2);
        assert_eq!(p.algebra.num_gens(), 16);
        let counts: Vec<usize> = p.families.iter().map(|f| f.relations.len()).collect();
        assert_eq!(counts, vec![64, 64, 16, 4, 4]);

        let p = aut_b_presentation(&[1, 2]);
        assert_eq!(p.algebra.num_gens(), 25);
        let counts: Vec<usize> = p.families.iter().map(|f| f.relations.len()).collect();
        assert_eq!(counts, vec![125, 125, 25, 5, 5]);
    }

    #[test]
    fn scalar_cases_collapse_to_the_unit() {
        for p in [magic_presentation(1), aut_mn_presentation(1)] {
            let sys = p.system().unwrap();
            let g = p.algebra.gens()[0].clone();
            let a = gen_poly(&p.algebra, &g);
            assert!(sys.reduce(&(&a - &Poly::one())).is_zero(), "{}", p.name);
        }
    }

    #[test]
    fn declared_relations_reduce_to_zero_in_own_system() {
        for p in [
            magic_presentation(3),
            aut_mn_presentation(2),
            aut_b_presentation(&[1, 2]),
            a_u_presentation(2),
        ] {
            let sys = p.system().unwrap();
            for r in p.relations() {
                assert!(sys.reduce(r).is_zero(), "{}", p.name);
                assert!(sys.reduce(&r.star()).is_zero(), "{} star", p.name);
            }
        }
    }

    #[test]
    fn structure_maps_are_total() {
        for p in [
            magic_presentation(2),
            aut_mn_presentation(2),
            aut_b_presentation(&[1, 2]),
            a_u_presentation(2),
        ] {
            assert!(p.has_structure_maps(), "{}", p.name);
        }
    }

    #[test]
    fn counit_values_on_matrix_generators() {
        let p = aut_mn_presentation(2);
        let one = GaussQ::from_int(1);
        assert_eq!(p.counit_value(&p.algebra.a_m(1, 2, 1, 2)), Some(&one));
        assert_eq!(
            p.counit_value(&p.algebra.a_m(1, 2, 2, 1)),
            Some(&GaussQ::zero())
        );
    }

    #[test]
    fn single_block_degeneration_is_exact() {
        let report = degeneration_report(&[2]).unwrap();
        assert!(report.sets_equal(), "missing={:?} extra={:?}", report.missing, report.extra);
    }

    #[test]
    fn all_ones_degeneration_adds_termwise_orthogonality() {
        let report = degeneration_report(&[1, 1]).unwrap();
        // Every magic relation is present...
        assert!(report.missing.is_empty(), "missing={:?}", report.missing);
        // ...plus the termwise row/column orthogonality products a_xy·a_xz
        // and a_yx·a_zx (y ≠ z), which the magic presentation does not declare.
        assert_eq!(report.extra.len(), 8, "extra={:?}", report.extra);
        assert!(report
            .extra
            .iter()
            .all(|r| r.contains("·") && !r.contains("+")));
    }

    #[test]
    fn q_variant_checks_inputs() {
        let q = QMatrix::from_diag(&[GaussQ::from_int(1), GaussQ::from_int(2)]);
        assert!(matches!(
            q_variant(&SpaceSpec::X(3), &q),
            Err(Error::DimensionMismatch(_))
        ));
        let bad = QMatrix::from_diag(&[GaussQ::from_int(1), GaussQ::from_int(-2)]);
        assert!(matches!(
            q_variant(&SpaceSpec::X(2), &bad),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn q_variant_identity_twist_is_orthogonality() {
        // With Q = I the twist family says uᵗu = I = uuᵗ; combined with
        // idempotency this derives the column sums, so the untwisted ideal
        // and the twisted ideal coincide on generators' relation sets.
        let q = QMatrix::identity(2);
        let qp = q_variant(&SpaceSpec::X(2), &q).unwrap();
        let untwisted = magic_presentation(2);
        let (qsys, _) = qp.completed_system(8, 2000).unwrap();
        for r in untwisted.relations() {
            assert!(qsys.reduce(r).is_zero(), "{}", r.display(&untwisted.algebra));
        }
        let (usys, _) = untwisted.completed_system(8, 2000).unwrap();
        for r in qp.relations() {
            assert!(usys.reduce(r).is_zero(), "{}", r.display(&qp.algebra));
        }
    }

    #[test]
    fn q_variant_twist_counts() {
        let q = QMatrix::from_diag(&[GaussQ::from_int(1), GaussQ::from_int(2)]);
        let p = q_variant(&SpaceSpec::X(2), &q).unwrap();
        assert_eq!(p.family("q_twist").unwrap().relations.len(), 8);
        assert!(p.family("column_sum").is_none());
        let q4 = QMatrix::identity(4);
        let p = q_variant(&SpaceSpec::M(2), &q4).unwrap();
        assert_eq!(p.family("q_twist").unwrap().relations.len(), 32);
        assert!(p.family("product").is_some());
        assert!(p.family("product_op").is_none());
    }

    #[test]
    fn appendix_families() {
        let q = QMatrix::from_diag(&[GaussQ::from_int(1), GaussQ::from_int(2)]);
        let new = appendix_presentation(&AppendixKind::AONew(q.clone())).unwrap();
        assert_eq!(new.families.len(), 2);
        let old = appendix_presentation(&AppendixKind::AOOld(q)).unwrap();
        assert_eq!(old.families.len(), 3);
        // Every A_o_new relation is declared in A_o_old as well.
        let old_sys = old.system().unwrap();
        for r in new.relations() {
            assert!(old_sys.reduce(r).is_zero());
        }

        let au = a_u_presentation(2);
        assert_eq!(au.relation_count(), 16);
        assert_eq!(au.algebra.num_gens(), 4);
    }

    #[test]
    fn a_o_new_and_old_coincide_at_identity_q() {
        let q = QMatrix::identity(2);
        let new = appendix_presentation(&AppendixKind::AONew(q.clone())).unwrap();
        let old = appendix_presentation(&AppendixKind::AOOld(q)).unwrap();
        let (new_sys, _) = new.completed_system(6, 2000).unwrap();
        for r in old.relations() {
            assert!(new_sys.reduce(r).is_zero());
        }
    }

    #[test]
    fn reduced_presentation_drops_redundant_families() {
        let p = aut_mn_presentation(2);
        let r = p.reduced();
        assert_eq!(r.families.len(), 3);
        assert!(r.family("product_op").is_none());
        assert!(r.family("trace").is_none());
        assert_eq!(p.families.len(), 5);
    }
}

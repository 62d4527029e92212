//! Generator identities and interned generator spaces.
//!
//! Every symbol the engine manipulates is a *generator letter*: a family tag,
//! an index tuple, a tensor-copy tag, and a star flag.  An [`Algebra`] interns
//! the generators of one presentation into dense `u32` letters whose numeric
//! order realizes the engine's canonical generator order
//! `(copy, family, indices, starred)` with unstarred before starred.  Word
//! comparisons then reduce to integer comparisons.

use smallvec::SmallVec;
use std::collections::HashMap;
use std::fmt;

use crate::error::Error;

/// Families of generator symbols.
///
/// * `X` — entries `a[i,j]` of an n×n magic-type matrix (n-point space).
/// * `M` — entries `a[k,l;i,j]` of the n²×n² matrix acting on M_n.
/// * `Blocks` — entries `a[k,l;r,s;x,y]` for a multimatrix algebra ⊕ M_{n_k}.
/// * `U` — entries `u[i,j]` of a plain n×n matrix (orthogonal/unitary families).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GenFamily {
    X,
    M,
    Blocks,
    U,
}

impl GenFamily {
    fn symbol(self) -> &'static str {
        match self {
            GenFamily::X | GenFamily::M | GenFamily::Blocks => "a",
            GenFamily::U => "u",
        }
    }
}

/// Maximum number of tensor copies an [`Algebra`] carries (enough for the
/// triple tensor product used by coassociativity).
pub const MAX_COPIES: u8 = 3;

/// A structural generator identity.
///
/// Field order realizes the canonical generator order: tensor copy first (so
/// right-leg letters sort after left-leg letters in doubled systems), then
/// family, index tuple, and finally the star flag with unstarred < starred.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GenId {
    /// Tensor-copy tag: 0 for the base algebra, 1/2 for tensor legs.
    pub copy: u8,
    /// Symbol family.
    pub family: GenFamily,
    /// 1-based index tuple; layout depends on the family:
    /// `X`/`U`: `[i,j]`, `M`: `[k,l,i,j]`, `Blocks`: `[k,l,r,s,x,y]`.
    pub indices: SmallVec<[u16; 6]>,
    /// Whether this is the starred (adjoint) letter.
    pub starred: bool,
}

impl GenId {
    pub fn new(family: GenFamily, indices: &[u16]) -> Self {
        GenId {
            copy: 0,
            family,
            indices: SmallVec::from_slice(indices),
            starred: false,
        }
    }

    /// The same generator with the star flag toggled.
    pub fn star(&self) -> Self {
        let mut g = self.clone();
        g.starred = !g.starred;
        g
    }

    /// The same generator carried to another tensor copy.
    pub fn in_copy(&self, copy: u8) -> Self {
        assert!(copy < MAX_COPIES);
        let mut g = self.clone();
        g.copy = copy;
        g
    }

    /// The copy-0, unstarred representative.
    pub fn base(&self) -> Self {
        let mut g = self.clone();
        g.copy = 0;
        g.starred = false;
        g
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family.symbol())?;
        for _ in 0..self.copy {
            write!(f, "'")?;
        }
        write!(f, "[")?;
        let groups: &[usize] = match self.family {
            GenFamily::X | GenFamily::U => &[2],
            GenFamily::M => &[2, 2],
            GenFamily::Blocks => &[2, 2, 2],
        };
        let mut pos = 0;
        for (gi, &glen) in groups.iter().enumerate() {
            if gi > 0 {
                write!(f, ";")?;
            }
            for k in 0..glen {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.indices[pos])?;
                pos += 1;
            }
        }
        write!(f, "]")?;
        if self.starred {
            write!(f, "*")?;
        }
        Ok(())
    }
}

/// Shape of a generator space: which family, and the index bounds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GeneratorScheme {
    /// `a[i,j]` with 1 ≤ i,j ≤ n.
    X { n: u16 },
    /// `a[k,l;i,j]` with 1 ≤ k,l,i,j ≤ n.
    M { n: u16 },
    /// `a[k,l;r,s;x,y]` with 1 ≤ x,y ≤ m, 1 ≤ k,l ≤ n_x, 1 ≤ r,s ≤ n_y.
    Blocks { sizes: Vec<u16> },
    /// `u[i,j]` with 1 ≤ i,j ≤ n.
    U { n: u16 },
}

impl GeneratorScheme {
    /// All copy-0 unstarred generators, in canonical order.
    fn enumerate(&self) -> Vec<GenId> {
        let mut gens = Vec::new();
        match self {
            GeneratorScheme::X { n } => {
                for i in 1..=*n {
                    for j in 1..=*n {
                        gens.push(GenId::new(GenFamily::X, &[i, j]));
                    }
                }
            }
            GeneratorScheme::M { n } => {
                for k in 1..=*n {
                    for l in 1..=*n {
                        for i in 1..=*n {
                            for j in 1..=*n {
                                gens.push(GenId::new(GenFamily::M, &[k, l, i, j]));
                            }
                        }
                    }
                }
            }
            GeneratorScheme::Blocks { sizes } => {
                let m = sizes.len() as u16;
                for x in 1..=m {
                    for y in 1..=m {
                        let nx = sizes[(x - 1) as usize];
                        let ny = sizes[(y - 1) as usize];
                        for k in 1..=nx {
                            for l in 1..=nx {
                                for r in 1..=ny {
                                    for s in 1..=ny {
                                        gens.push(GenId::new(
                                            GenFamily::Blocks,
                                            &[k, l, r, s, x, y],
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            GeneratorScheme::U { n } => {
                for i in 1..=*n {
                    for j in 1..=*n {
                        gens.push(GenId::new(GenFamily::U, &[i, j]));
                    }
                }
            }
        }
        gens.sort();
        gens
    }
}

/// An interned letter: index into an [`Algebra`]'s symbol table.
///
/// Layout: `copy * 2G + 2 * rank + starred` where `G` is the number of
/// generators and `rank` the position of the base generator in canonical
/// order.  Consequences used throughout the engine: numeric letter order is
/// the canonical generator order, and `letter ^ 1` is the star partner.
pub type Letter = u32;

/// An interned generator space.
#[derive(Clone, Debug)]
pub struct Algebra {
    scheme: GeneratorScheme,
    gens: Vec<GenId>,
    rank: HashMap<GenId, u32>,
}

impl Algebra {
    pub fn new(scheme: GeneratorScheme) -> Self {
        let gens = scheme.enumerate();
        let rank = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        Algebra { scheme, gens, rank }
    }

    pub fn scheme(&self) -> &GeneratorScheme {
        &self.scheme
    }

    /// Copy-0 unstarred generators in canonical order.
    pub fn gens(&self) -> &[GenId] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// Number of letters per copy (starred and unstarred).
    fn stride(&self) -> u32 {
        2 * self.gens.len() as u32
    }

    /// Interns a generator identity.
    pub fn letter_of(&self, id: &GenId) -> Result<Letter, Error> {
        let rank = self
            .rank
            .get(&id.base())
            .ok_or_else(|| Error::UnknownGenerator(id.to_string()))?;
        Ok(id.copy as u32 * self.stride() + 2 * rank + id.starred as u32)
    }

    /// Recovers the generator identity of a letter.
    pub fn gen_of(&self, letter: Letter) -> GenId {
        let stride = self.stride();
        let copy = (letter / stride) as u8;
        let within = letter % stride;
        let mut g = self.gens[(within / 2) as usize].clone();
        g.copy = copy;
        g.starred = within % 2 == 1;
        g
    }

    /// Carries a letter to another tensor copy.
    pub fn to_copy(&self, letter: Letter, copy: u8) -> Letter {
        assert!(copy < MAX_COPIES);
        copy as u32 * self.stride() + letter % self.stride()
    }

    /// Tensor copy a letter belongs to.
    pub fn copy_of(&self, letter: Letter) -> u8 {
        (letter / self.stride()) as u8
    }

    /// Number of letters per copy (starred letters included).
    pub fn num_letters_per_copy(&self) -> u32 {
        self.stride()
    }

    fn checked(&self, id: GenId) -> GenId {
        debug_assert!(
            self.rank.contains_key(&id),
            "generator {id} out of bounds for scheme {:?}",
            self.scheme
        );
        id
    }

    /// `a[i,j]` in an `X` scheme.
    pub fn a_x(&self, i: u16, j: u16) -> GenId {
        self.checked(GenId::new(GenFamily::X, &[i, j]))
    }

    /// `a[k,l;i,j]` in an `M` scheme.
    pub fn a_m(&self, k: u16, l: u16, i: u16, j: u16) -> GenId {
        self.checked(GenId::new(GenFamily::M, &[k, l, i, j]))
    }

    /// `a[k,l;r,s;x,y]` in a `Blocks` scheme.
    pub fn a_b(&self, k: u16, l: u16, r: u16, s: u16, x: u16, y: u16) -> GenId {
        self.checked(GenId::new(GenFamily::Blocks, &[k, l, r, s, x, y]))
    }

    /// `u[i,j]` in a `U` scheme.
    pub fn u(&self, i: u16, j: u16) -> GenId {
        self.checked(GenId::new(GenFamily::U, &[i, j]))
    }
}

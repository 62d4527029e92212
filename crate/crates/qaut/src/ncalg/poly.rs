//! Noncommutative *-polynomials with exact coefficients.
//!
//! A polynomial is a finite sum of distinct words with nonzero coefficients,
//! stored in a map ordered by the word order.  The representation is
//! canonical: equal polynomials compare equal structurally, and the maximal
//! word under deglex is the leading word.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};


use super::gen::{Algebra, GenId, Letter};
use super::word::Word;
use crate::error::Error;
use crate::scalar::Scalar;

/// A noncommutative polynomial over a scalar type `C`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCPoly<C: Scalar> {
    terms: BTreeMap<Word, C>,
}

impl<C: Scalar> NCPoly<C> {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    /// The unit polynomial `1` (the empty word).
    pub fn one() -> Self {
        NCPoly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        NCPoly::term(c, Word::unit())
    }

    pub fn from_word(w: Word) -> Self {
        NCPoly::term(C::one(), w)
    }

    pub fn from_letter(l: Letter) -> Self {
        NCPoly::from_word(Word::letter(l))
    }

    pub fn term(c: C, w: Word) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    /// Leading term: the deglex-maximal word and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &C)> {
        self.terms.iter().next_back()
    }

    /// Degree: length of the leading word.  `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.len())
    }

    pub fn coeff(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    /// Constant coefficient (of the empty word).
    pub fn constant_term(&self) -> C {
        self.terms.get(&Word::unit()).cloned().unwrap_or_else(C::zero)
    }

    /// Adds `c · w`, merging and dropping zeros.
    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Word, C)> {
        self.terms.pop_last()
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    /// Adds `c · other` into `self`.
    pub fn add_scaled(&mut self, c: &C, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), c.clone() * d.clone());
        }
    }

    /// Adds `c · prefix · w' · suffix` over the terms `(w', d)` of `other`.
    pub fn add_scaled_spliced(
        &mut self,
        c: &C,
        prefix: &[Letter],
        other: &Self,
        suffix: &[Letter],
    ) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(
                Word::splice(prefix, w.letters(), suffix),
                c.clone() * d.clone(),
            );
        }
    }

    pub fn scaled(&self, c: &C) -> Self {
        let mut out = NCPoly::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// The adjoint polynomial: words starred (reversed, letters starred) and
    /// coefficients conjugated.  An involutive anti-automorphism.
    pub fn star(&self) -> Self {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.star(), c.conj());
        }
        out
    }

    /// Divides by the leading coefficient; returns `(leading coeff, monic)`.
    pub fn monic(&self) -> Option<(C, Self)> {
        let (_, lc) = self.leading()?;
        let lc = lc.clone();
        let inv = lc.inv().expect("leading coefficient of nonzero term");
        Some((lc, self.scaled(&inv)))
    }

    /// Applies a letter remapping (e.g. a copy shift) to every word.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Self {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let letters: Vec<Letter> = w.letters().iter().map(|&l| f(l)).collect();
            out.add_term(Word::from_letters(&letters), c.clone());
        }
        out
    }

    /// Renders the polynomial with an algebra's symbol table, terms in
    /// descending word order.
    pub fn display(&self, alg: &Algebra) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let cs = c.to_string();
            if w.is_unit() {
                out.push_str(&cs);
            } else if cs == "1" {
                out.push_str(&w.display(alg));
            } else {
                out.push_str(&format!("({})·{}", cs, w.display(alg)));
            }
        }
        out
    }
}

impl<C: Scalar> Add for &NCPoly<C> {
    type Output = NCPoly<C>;
    fn add(self, rhs: &NCPoly<C>) -> NCPoly<C> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<C: Scalar> Sub for &NCPoly<C> {
    type Output = NCPoly<C>;
    fn sub(self, rhs: &NCPoly<C>) -> NCPoly<C> {
        let mut out = self.clone();
        out.add_scaled(&-C::one(), rhs);
        out
    }
}

impl<C: Scalar> Mul for &NCPoly<C> {
    type Output = NCPoly<C>;
    fn mul(self, rhs: &NCPoly<C>) -> NCPoly<C> {
        self.mul_ref(rhs)
    }
}

impl<C: Scalar> Neg for &NCPoly<C> {
    type Output = NCPoly<C>;
    fn neg(self) -> NCPoly<C> {
        self.scaled(&-C::one())
    }
}

/// Substitutes generator images into a polynomial.
///
/// `phi` is queried with unstarred generator identities; starred letters
/// receive the starred image, making the substitution the unique *-compatible
/// algebra morphism extending `phi`.  Fails with [`Error::MissingImage`] if a
/// generator occurring in `p` (modulo star) has no image.
pub fn substitute<C: Scalar>(
    p: &NCPoly<C>,
    src: &Algebra,
    phi: &dyn Fn(&GenId) -> Option<NCPoly<C>>,
) -> Result<NCPoly<C>, Error> {
    let mut out = NCPoly::zero();
    for (w, c) in p.iter() {
        let mut acc = NCPoly::constant(c.clone());
        for &l in w.letters() {
            let starred = l & 1 == 1;
            let base = src.gen_of(l & !1);
            let image = phi(&base).ok_or_else(|| Error::MissingImage(base.to_string()))?;
            let image = if starred { image.star() } else { image };
            acc = acc.mul_ref(&image);
        }
        out.add_assign_ref(&acc);
    }
    Ok(out)
}

/// Evaluates a polynomial under a scalar assignment of the generators.
///
/// Starred letters evaluate to the conjugate of the assigned value, so the
/// evaluation is a *-homomorphism into the scalars.
pub fn eval_scalar<C: Scalar>(
    p: &NCPoly<C>,
    src: &Algebra,
    chi: &dyn Fn(&GenId) -> Option<C>,
) -> Result<C, Error> {
    let mut total = C::zero();
    for (w, c) in p.iter() {
        let mut acc = c.clone();
        for &l in w.letters() {
            let starred = l & 1 == 1;
            let base = src.gen_of(l & !1);
            let v = chi(&base).ok_or_else(|| Error::MissingValue(base.to_string()))?;
            acc = acc * if starred { v.conj() } else { v };
        }
        total = total + acc;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::gen::{Algebra, GeneratorScheme};
    use crate::scalar::GaussQ;

    type P = NCPoly<GaussQ>;

    fn setup() -> (Algebra, P, P) {
        let alg = Algebra::new(GeneratorScheme::X { n: 2 });
        let a = P::from_letter(alg.letter_of(&alg.a_x(1, 1)).unwrap());
        let b = P::from_letter(alg.letter_of(&alg.a_x(1, 2)).unwrap());
        (alg, a, b)
    }

    #[test]
    fn unit_is_neutral_and_mul_is_associative() {
        let (_, a, b) = setup();
        let one = P::one();
        assert_eq!(one.mul_ref(&a), a);
        assert_eq!(a.mul_ref(&one), a);
        let c = &a + &b;
        assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
    }

    #[test]
    fn cancellation_keeps_canonical_form() {
        let (_, a, b) = setup();
        let p = &(&a + &b) - &b;
        assert_eq!(p, a);
        let q = &a - &a;
        assert!(q.is_zero());
        assert_eq!(q.num_terms(), 0);
    }

    #[test]
    fn star_is_anti_multiplicative() {
        let (_, a, b) = setup();
        let i = P::constant(GaussQ::i());
        let p = &i * &a.mul_ref(&b);
        // (i·ab)* = -i·b*a*
        let expected = &P::constant(-GaussQ::i()) * &b.star().mul_ref(&a.star());
        assert_eq!(p.star(), expected);
        assert_eq!(p.star().star(), p);
    }

    #[test]
    fn leading_term_is_deglex_max() {
        let (_, a, b) = setup();
        let p = &(&a.mul_ref(&b) + &b) + &P::one();
        let (w, _) = p.leading().unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn substitute_is_star_compatible_morphism() {
        let (alg, a, b) = setup();
        // phi: a11 -> a12, a12 -> a11 + i·1, others -> identity images.
        let phi = |g: &GenId| -> Option<P> {
            let l = alg.letter_of(g).ok()?;
            let (la, lb) = (
                alg.letter_of(&alg.a_x(1, 1)).unwrap(),
                alg.letter_of(&alg.a_x(1, 2)).unwrap(),
            );
            if l == la {
                Some(P::from_letter(lb))
            } else if l == lb {
                Some(&P::from_letter(la) + &P::constant(GaussQ::i()))
            } else {
                Some(P::from_letter(l))
            }
        };
        let p = a.mul_ref(&b.star());
        let image = substitute(&p, &alg, &phi).unwrap();
        // phi(a·b*) = phi(a)·phi(b)* = a12·(a11* - i)
        let expected = substitute(&a, &alg, &phi)
            .unwrap()
            .mul_ref(&substitute(&b, &alg, &phi).unwrap().star());
        assert_eq!(image, expected);
    }

    #[test]
    fn missing_image_is_reported() {
        let (alg, a, _) = setup();
        let phi = |_: &GenId| -> Option<P> { None };
        let err = substitute(&a, &alg, &phi).unwrap_err();
        assert!(err.to_string().contains("a[1,1]"));
    }

    #[test]
    fn scalar_evaluation_conjugates_starred_letters() {
        let (alg, a, _) = setup();
        let chi = |_: &GenId| Some(GaussQ::i());
        let v = eval_scalar(&a.star(), &alg, &chi).unwrap();
        assert_eq!(v, -GaussQ::i());
    }
}

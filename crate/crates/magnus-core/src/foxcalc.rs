//! Group rings of free groups, Fox derivatives, and specialization into Z[H]
//! through an abelianization ring map (with the bar involution applied at
//! specialization time, matching the overline on matrix entries).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::laurent::LaurentPoly;
use crate::matrixkh::{Mat, PolyMatrix};
use crate::words::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoxError {
    UnassignedGenerator(Generator),
}

impl fmt::Display for FoxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoxError::UnassignedGenerator(g) => {
                write!(f, "ring map does not assign generator {}", g.name())
            }
        }
    }
}

/// Element of the integral group ring Z[F]: finitely supported map from
/// freely reduced words to nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i128>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        GroupRingElement::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = GroupRingElement::zero();
        e.add_term(w, 1);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &i128)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Word, c: i128) {
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if *v == 0 {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut r = self.clone();
        for (w, &c) in other.terms.iter() {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn sub(&self, other: &GroupRingElement) -> GroupRingElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut r = GroupRingElement::zero();
        for (wa, &ca) in self.terms.iter() {
            for (wb, &cb) in other.terms.iter() {
                r.add_term(wa.multiply(wb), ca * cb);
            }
        }
        r
    }

    /// Left multiplication by a single group element.
    pub fn left_mul_word(&self, w: &Word) -> GroupRingElement {
        GroupRingElement {
            terms: self
                .terms
                .iter()
                .map(|(v, &c)| (w.multiply(v), c))
                .collect(),
        }
    }
}

/// Assignment of generators to monomials of Z[H] (exponent vectors in Z^n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMap {
    rank: usize,
    map: BTreeMap<Generator, Vec<i64>>,
}

impl RingMap {
    pub fn new(rank: usize) -> Self {
        RingMap {
            rank,
            map: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn assign(&mut self, g: Generator, exps: Vec<i64>) {
        assert_eq!(exps.len(), self.rank, "exponent vector length mismatch");
        self.map.insert(g, exps);
    }

    pub fn get(&self, g: Generator) -> Option<&Vec<i64>> {
        self.map.get(&g)
    }
}

/// Fox derivative d(w)/d(x), computed by a single left-to-right scan:
/// a letter x^{+1} at position i contributes +prefix(i), a letter x^{-1}
/// contributes -prefix(i+1).
pub fn fox_derivative(w: &Word, x: Generator) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &(g, sign) in w.letters() {
        if g == x {
            if sign > 0 {
                out.add_term(prefix.clone(), 1);
            } else {
                out.add_term(prefix.multiply(&Word::from_letters([(g, -1i8)])), -1);
            }
        }
        prefix = prefix.multiply(&Word::from_letters([(g, sign)]));
    }
    out
}

/// Specializes a group-ring element into Z[H] along the ring map; when
/// `apply_bar` is set the resulting exponent vectors are negated.
pub fn specialize(
    e: &GroupRingElement,
    m: &RingMap,
    apply_bar: bool,
) -> Result<LaurentPoly, FoxError> {
    let mut p = LaurentPoly::zero(m.rank());
    for (w, &c) in e.terms() {
        let mut exps = alloc::vec![0i64; m.rank()];
        for &(g, sign) in w.letters() {
            let v = m.get(g).ok_or(FoxError::UnassignedGenerator(g))?;
            for (a, &b) in exps.iter_mut().zip(v) {
                *a += sign as i64 * b;
            }
        }
        if apply_bar {
            for a in exps.iter_mut() {
                *a = -*a;
            }
        }
        p = p.add(&LaurentPoly::monomial(m.rank(), exps, c));
    }
    Ok(p)
}

/// Matrix of specialized (barred) Fox derivatives: entry (i, j) =
/// bar(specialize(d(relator_j)/d(var_i))). Rows are indexed by `vars`,
/// columns by `relators`.
pub fn fox_matrix(
    relators: &[Word],
    vars: &[Generator],
    m: &RingMap,
) -> Result<PolyMatrix, FoxError> {
    let mut rows = Vec::with_capacity(vars.len());
    for &v in vars {
        let mut row = Vec::with_capacity(relators.len());
        for r in relators {
            row.push(specialize(&fox_derivative(r, v), m, true)?);
        }
        rows.push(row);
    }
    Ok(Mat::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::GenTable;
    use alloc::vec;

    fn free_map(n: usize) -> RingMap {
        let mut m = RingMap::new(n);
        for i in 1..=n {
            let mut e = vec![0i64; n];
            e[i - 1] = 1;
            m.assign(Generator::plain(i as u32), e);
        }
        m
    }

    /// Recursive oracle for the Fox derivative (product + inverse rules).
    fn fox_oracle(w: &Word, x: Generator) -> GroupRingElement {
        let letters = w.letters();
        if letters.is_empty() {
            return GroupRingElement::zero();
        }
        if letters.len() == 1 {
            let (g, sign) = letters[0];
            if g != x {
                return GroupRingElement::zero();
            }
            return if sign > 0 {
                GroupRingElement::one()
            } else {
                let mut e = GroupRingElement::zero();
                e.add_term(Word::from_letters([(g, -1i8)]), -1);
                e
            };
        }
        let head = Word::from_letters([letters[0]]);
        let tail = Word::from_letters(letters[1..].iter().copied());
        // d(gh) = dg + g*dh
        fox_oracle(&head, x).add(&fox_oracle(&tail, x).left_mul_word(&head))
    }

    #[test]
    fn kronecker_delta() {
        let g1 = Generator::plain(1);
        let g2 = Generator::plain(2);
        assert_eq!(fox_derivative(&Word::generator(g1), g1), GroupRingElement::one());
        assert!(fox_derivative(&Word::generator(g2), g1).is_zero());
    }

    #[test]
    fn inverse_rule() {
        let g1 = Generator::plain(1);
        let w = Word::from_letters([(g1, -1i8)]);
        let mut expect = GroupRingElement::zero();
        expect.add_term(w.clone(), -1);
        assert_eq!(fox_derivative(&w, g1), expect);
    }

    #[test]
    fn commutator_derivative() {
        // d[g1,g2]/dg1 = 1 - g1 g2 g1^-1
        let g1 = Generator::plain(1);
        let g2 = Generator::plain(2);
        let w = Word::commutator(&Word::generator(g1), &Word::generator(g2));
        let mut expect = GroupRingElement::one();
        expect.add_term(
            Word::from_letters([(g1, 1i8), (g2, 1), (g1, -1)]),
            -1,
        );
        assert_eq!(fox_derivative(&w, g1), expect);
        assert_eq!(fox_derivative(&w, g1), fox_oracle(&w, g1));
    }

    #[test]
    fn specialize_examples() {
        let m = free_map(2);
        let g1 = Generator::plain(1);
        let g2 = Generator::plain(2);
        // 1 - g1 |-> 1 - gamma1^-1 under bar
        let mut e = GroupRingElement::one();
        e.add_term(Word::generator(g1), -1);
        let p = specialize(&e, &m, true).unwrap();
        let expect = LaurentPoly::one(2).sub(&LaurentPoly::monomial(2, vec![-1, 0], 1));
        assert_eq!(p, expect);
        // constants fixed by bar
        let one = specialize(&GroupRingElement::one(), &m, true).unwrap();
        assert!(one.is_one());
        // d[g1,g2]/dg1 specialized with bar: 1 - gamma2^-1
        let w = Word::commutator(&Word::generator(g1), &Word::generator(g2));
        let p = specialize(&fox_derivative(&w, g1), &m, true).unwrap();
        let expect = LaurentPoly::one(2).sub(&LaurentPoly::monomial(2, vec![0, -1], 1));
        assert_eq!(p, expect);
    }

    #[test]
    fn unassigned_generator_rejected() {
        let m = free_map(1);
        let e = GroupRingElement::from_word(Word::generator(Generator::plain(2)));
        assert_eq!(
            specialize(&e, &m, false),
            Err(FoxError::UnassignedGenerator(Generator::plain(2)))
        );
    }

    #[test]
    fn fundamental_identity_on_samples() {
        // sum_x d(w)/dx * (x - 1) = w - 1
        let table = GenTable::free(3);
        let g = |i: u32| Generator::plain(i);
        let samples = [
            Word::identity(),
            Word::generator(g(1)),
            Word::from_letters([(g(1), -1i8), (g(2), 1), (g(1), 1), (g(3), -1)]),
            Word::commutator(&Word::generator(g(1)), &Word::generator(g(2)))
                .multiply(&Word::generator(g(3)).pow(-2)),
        ];
        for w in &samples {
            let mut acc = GroupRingElement::zero();
            for x in table.generators() {
                let d = fox_derivative(w, x);
                let mut xm1 = GroupRingElement::from_word(Word::generator(x));
                xm1.add_term(Word::identity(), -1);
                acc = acc.add(&d.mul(&xm1));
            }
            let mut expect = GroupRingElement::from_word(w.clone());
            expect.add_term(Word::identity(), -1);
            assert_eq!(acc, expect, "fundamental identity failed for {}", w.serialize());
        }
    }

    #[test]
    fn matrix_shape_and_zero_rows() {
        // relator without the variable gives a zero entry
        let table = GenTable::free(2);
        let m = free_map(2);
        let r1 = Word::generator(Generator::plain(2));
        let mat = fox_matrix(&[r1], &table.generators(), &m).unwrap();
        assert_eq!(mat.rows(), 2);
        assert_eq!(mat.cols(), 1);
        assert!(mat.at(0, 0).is_zero());
        assert!(mat.at(1, 0).is_one());
    }
}

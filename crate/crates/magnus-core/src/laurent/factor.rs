//! Irreducible factorization in Z[H]. Strategies, in order: unit/content
//! extraction, support-collinearity reduction to one variable, the
//! linear-in-one-variable coprime-coefficient criterion, and Kronecker
//! substitution with subset recombination. Anything not certified by one of
//! these reports FactorizationIncomplete rather than guessing.

use alloc::vec::Vec;
use core::fmt;

use super::gcd::gcd;
use super::univariate::{factor_primitive as uni_factor, next_combination, UniPoly};
use super::{Budget, FactorError, LaurentPoly, UnitClassForm};

/// Largest Kronecker image degree / number of univariate factors we are
/// willing to recombine before reporting FactorizationIncomplete.
const MAX_KRONECKER_DEGREE: usize = 512;
const MAX_RECOMBINE_FACTORS: usize = 16;

/// Complete factorization `f = sign * gamma^monomial * prod factors^mult`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub monomial: Vec<i64>,
    pub factors: Vec<(UnitClassForm, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, rank: usize) -> LaurentPoly {
        let mut p = LaurentPoly::monomial(rank, self.monomial.clone(), self.sign as i128);
        for (form, mult) in &self.factors {
            p = p.mul(&form.as_poly().pow(*mult));
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CriterionError {
    NotLinear,
}

impl fmt::Display for CriterionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriterionError::NotLinear => write!(f, "polynomial is not linear in the variable"),
        }
    }
}

/// Irreducibility certificate for polynomials of degree 1 in `var`:
/// true when f is presented in shifted primitive form and f = B*x + C with
/// gcd(B, C) a unit. True implies f is irreducible in Z[H]; false certifies
/// nothing.
pub fn is_irreducible_linear_criterion(
    f: &LaurentPoly,
    var: usize,
) -> Result<bool, CriterionError> {
    if f.is_zero() {
        return Err(CriterionError::NotLinear);
    }
    let min = f.terms().map(|(e, _)| e[var]).min().unwrap();
    let max = f.max_exponent(var);
    if max - min > 1 {
        return Err(CriterionError::NotLinear);
    }
    if max - min == 0 {
        return Ok(false);
    }
    // require shifted primitive presentation: all minimum exponents 0,
    // integer content 1
    if f.min_exponents().iter().any(|&m| m != 0) || f.int_content() != 1 {
        return Ok(false);
    }
    let (b, c) = split_linear(f, var);
    debug_assert!(!b.is_zero());
    if c.is_zero() {
        return Ok(false);
    }
    Ok(gcd(&b, &c).is_one())
}

/// Coefficients (B, C) of f = B*x + C in `var`, with the var exponent
/// removed.
fn split_linear(f: &LaurentPoly, var: usize) -> (LaurentPoly, LaurentPoly) {
    let rank = f.rank();
    let mut b = LaurentPoly::zero(rank);
    let mut c = LaurentPoly::zero(rank);
    for (e, &coeff) in f.terms() {
        let mut e2 = e.clone();
        e2[var] = 0;
        let m = LaurentPoly::monomial(rank, e2, coeff);
        if e[var] == 1 {
            b = b.add(&m);
        } else {
            debug_assert_eq!(e[var], 0);
            c = c.add(&m);
        }
    }
    (b, c)
}

/// Factors f into irreducibles over Z[H]. The unit (sign and monomial) and
/// every factor multiply back to f exactly.
pub fn factor(f: &LaurentPoly, budget: &mut Budget) -> Result<Factorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let rank = f.rank();
    let (_, _, form) = f.canonical_parts();
    let mut p = form.into_poly();
    let content = p.int_content();
    let mut factors: Vec<(LaurentPoly, u32)> = Vec::new();
    if content > 1 {
        p = p
            .try_div(&LaurentPoly::constant(rank, content))
            .expect("content divides");
        for (q, m) in factor_integer(content, budget)? {
            factors.push((LaurentPoly::constant(rank, q), m));
        }
    }
    for (g, m) in factor_proper(&p, budget)? {
        push_merge(&mut factors, g, m);
    }
    // read the exact unit off by division
    let mut prod = LaurentPoly::one(rank);
    for (g, m) in &factors {
        prod = prod.mul(&g.pow(*m));
    }
    let unit = f.try_div(&prod).expect("factors divide input");
    assert_eq!(unit.num_terms(), 1, "residual unit must be a monomial");
    let (e, c) = unit.terms().next().map(|(e, &c)| (e.clone(), c)).unwrap();
    assert!(c == 1 || c == -1, "residual unit must be +-gamma^v");
    let mut factors: Vec<(UnitClassForm, u32)> = factors
        .into_iter()
        .map(|(g, m)| (UnitClassForm::new(&g), m))
        .collect();
    factors.sort();
    Ok(Factorization {
        sign: c as i8,
        monomial: e,
        factors,
    })
}

fn push_merge(out: &mut Vec<(LaurentPoly, u32)>, p: LaurentPoly, mult: u32) {
    if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
        slot.1 += mult;
    } else {
        out.push((p, mult));
    }
}

/// Trial-division factorization of a positive integer.
fn factor_integer(mut c: i128, budget: &mut Budget) -> Result<Vec<(i128, u32)>, FactorError> {
    debug_assert!(c >= 2);
    let mut out = Vec::new();
    let mut d: i128 = 2;
    while d * d <= c {
        budget.tick(1)?;
        if c % d == 0 {
            let mut m = 0u32;
            while c % d == 0 {
                c /= d;
                m += 1;
            }
            out.push((d, m));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if c > 1 {
        out.push((c, 1));
    }
    Ok(out)
}

/// Factors a proper polynomial (all minimum exponents 0, integer content 1,
/// positive leading coefficient). Every returned factor is in the same form;
/// their product equals the input.
fn factor_proper(
    f: &LaurentPoly,
    budget: &mut Budget,
) -> Result<Vec<(LaurentPoly, u32)>, FactorError> {
    if f.is_one() || f.is_constant() {
        return Ok(Vec::new());
    }
    if let Some(out) = try_collinear(f, budget)? {
        return Ok(out);
    }
    // linear-in-one-variable criterion: certifies irreducibility or splits
    for var in 0..f.rank() {
        if f.max_exponent(var) != 1 || f.terms().any(|(e, _)| e[var] < 0 || e[var] > 1) {
            continue;
        }
        let (b, c) = split_linear(f, var);
        if c.is_zero() {
            continue;
        }
        let g = gcd(&b, &c);
        if g.is_one() {
            return Ok(alloc::vec![(f.clone(), 1)]);
        }
        let gp = g.into_poly();
        let q = f.try_div(&gp).expect("coefficient gcd divides");
        let mut out = factor_proper(&gp, budget)?;
        for (h, m) in factor_proper(&q, budget)? {
            push_merge(&mut out, h, m);
        }
        return Ok(out);
    }
    kronecker(f, budget)
}

/// Strategy 2: when all support points lie on a line e0 + k*d, factor the
/// univariate polynomial in gamma^d.
fn try_collinear(
    f: &LaurentPoly,
    budget: &mut Budget,
) -> Result<Option<Vec<(LaurentPoly, u32)>>, FactorError> {
    let rank = f.rank();
    let support: Vec<Vec<i64>> = f.terms().map(|(e, _)| e.clone()).collect();
    if support.len() < 2 {
        return Ok(Some(Vec::new()));
    }
    let e0 = &support[0];
    let diffs: Vec<Vec<i64>> = support
        .iter()
        .map(|e| e.iter().zip(e0).map(|(x, y)| x - y).collect())
        .collect();
    let first = diffs.iter().find(|d| d.iter().any(|&x| x != 0)).unwrap();
    let g = first
        .iter()
        .fold(0i64, |acc, &x| super::int_gcd(acc as i128, x as i128) as i64);
    let dir: Vec<i64> = first.iter().map(|&x| x / g).collect();
    let pivot = dir.iter().position(|&x| x != 0).unwrap();
    let mut ks = Vec::with_capacity(diffs.len());
    for d in &diffs {
        if d[pivot] % dir[pivot] != 0 {
            return Ok(None);
        }
        let k = d[pivot] / dir[pivot];
        let scaled: Vec<i64> = dir.iter().map(|&x| x * k).collect();
        if scaled != *d {
            return Ok(None);
        }
        ks.push(k);
    }
    let kmin = *ks.iter().min().unwrap();
    let deg = (*ks.iter().max().unwrap() - kmin) as usize;
    let mut coeffs = alloc::vec![0i128; deg + 1];
    for (e, k) in support.iter().zip(&ks) {
        coeffs[(k - kmin) as usize] = f.coeff(e);
    }
    let u = UniPoly::new(coeffs);
    let mut out: Vec<(LaurentPoly, u32)> = Vec::new();
    for (w, mult) in uni_factor(&u, budget)? {
        let poly = LaurentPoly::from_terms(
            rank,
            w.c.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| {
                (dir.iter().map(|&x| x * j as i64).collect(), c)
            }),
        );
        let canon = poly.canonical().into_poly();
        if canon.is_one() {
            continue; // monomial factor: a unit in Z[H]
        }
        push_merge(&mut out, canon, mult);
    }
    Ok(Some(out))
}

/// Strategy 4: Kronecker substitution. Packs exponent vectors into one
/// variable by mixed radix, factors univariately, and recombines subsets of
/// the univariate factors into multivariate divisors.
fn kronecker(
    f: &LaurentPoly,
    budget: &mut Budget,
) -> Result<Vec<(LaurentPoly, u32)>, FactorError> {
    let rank = f.rank();
    let radix: Vec<i64> = (0..rank).map(|v| f.max_exponent(v) + 1).collect();
    let mut total: usize = 1;
    for &r in &radix {
        total = total.saturating_mul(r as usize);
        if total > MAX_KRONECKER_DEGREE {
            return Err(FactorError::FactorizationIncomplete);
        }
    }
    let pack = |e: &[i64]| -> usize {
        let mut acc = 0usize;
        let mut base = 1usize;
        for (x, &r) in e.iter().zip(&radix) {
            acc += (*x as usize) * base;
            base *= r as usize;
        }
        acc
    };
    let unpack = |mut k: usize| -> Vec<i64> {
        let mut e = alloc::vec![0i64; rank];
        for (x, &r) in e.iter_mut().zip(&radix) {
            *x = (k % r as usize) as i64;
            k /= r as usize;
        }
        e
    };
    let mut coeffs = alloc::vec![0i128; total];
    for (e, &c) in f.terms() {
        coeffs[pack(e)] = c;
    }
    let u = UniPoly::new(coeffs);
    let mut pieces: Vec<UniPoly> = Vec::new();
    for (w, mult) in uni_factor(&u, budget)? {
        for _ in 0..mult {
            pieces.push(w.clone());
        }
    }
    if pieces.len() == 1 {
        return Ok(alloc::vec![(f.clone(), 1)]);
    }
    if pieces.len() > MAX_RECOMBINE_FACTORS {
        return Err(FactorError::FactorizationIncomplete);
    }
    let n = pieces.len();
    for size in 1..=n / 2 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            budget.tick(1)?;
            let mut prod = UniPoly::constant(1);
            for &i in &idx {
                prod = prod.mul(&pieces[i]);
            }
            let cand = LaurentPoly::from_terms(
                rank,
                prod.c
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (unpack(k), c)),
            );
            let cand = cand.canonical().into_poly();
            if !cand.is_one() {
                if let Some(q) = f.try_div(&cand) {
                    let q = q.canonical().into_poly();
                    let mut out = factor_proper(&cand, budget)?;
                    for (h, m) in factor_proper(&q, budget)? {
                        push_merge(&mut out, h, m);
                    }
                    return Ok(out);
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(alloc::vec![(f.clone(), 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn g(rank: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(rank, i - 1)
    }

    fn factor_ok(f: &LaurentPoly) -> Factorization {
        let mut b = Budget::default();
        let fac = factor(f, &mut b).unwrap();
        assert_eq!(fac.expand(f.rank()), *f, "factorization must multiply back");
        fac
    }

    #[test]
    fn difference_of_squares() {
        let r = 2;
        let one = LaurentPoly::one(r);
        let f = g(r, 2).mul(&g(r, 2)).sub(&one);
        let fac = factor_ok(&f);
        assert_eq!(fac.factors.len(), 2);
        let expected: Vec<UnitClassForm> = vec![
            UnitClassForm::new(&g(r, 2).sub(&one)),
            UnitClassForm::new(&g(r, 2).add(&one)),
        ];
        let got: Vec<UnitClassForm> = fac.factors.iter().map(|(f, _)| f.clone()).collect();
        for e in &expected {
            assert!(got.contains(e));
        }
    }

    #[test]
    fn shifted_torsion_is_irreducible() {
        // g3 + g4 - g3 g4 (rank 4)
        let r = 4;
        let f = g(r, 3).add(&g(r, 4)).sub(&g(r, 3).mul(&g(r, 4)));
        let fac = factor_ok(&f);
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 1);
        assert!(is_irreducible_linear_criterion(&f, 2).unwrap());
    }

    #[test]
    fn cyclotomic_like_irreducible() {
        // 1 - g2 + g2^2 (rank 2)
        let r = 2;
        let f = LaurentPoly::one(r)
            .sub(&g(r, 2))
            .add(&g(r, 2).mul(&g(r, 2)));
        let fac = factor_ok(&f);
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0.as_poly(), &f);
    }

    #[test]
    fn linear_criterion_examples() {
        let r = 4;
        // g2^m g3 + g4 - 1 for m = 1..3, in variable g3 (index 2)
        for m in 1..=3 {
            let f = g(r, 2)
                .pow(m)
                .mul(&g(r, 3))
                .add(&g(r, 4))
                .sub(&LaurentPoly::one(r));
            assert!(is_irreducible_linear_criterion(&f, 2).unwrap());
        }
        // g2 g3 + g2: not in shifted primitive form
        let f = g(r, 2).mul(&g(r, 3)).add(&g(r, 2));
        assert!(!is_irreducible_linear_criterion(&f, 2).unwrap());
        // quadratic in g3: error
        let f = g(r, 3).mul(&g(r, 3)).add(&g(r, 4));
        assert_eq!(
            is_irreducible_linear_criterion(&f, 2),
            Err(CriterionError::NotLinear)
        );
    }

    #[test]
    fn unit_times_linear_factors() {
        // g2 g3 + g2 = g2 * (g3 + 1)
        let r = 4;
        let f = g(r, 2).mul(&g(r, 3)).add(&g(r, 2));
        let fac = factor_ok(&f);
        assert_eq!(fac.sign, 1);
        assert_eq!(fac.monomial, vec![0, 1, 0, 0]);
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(
            fac.factors[0].0.as_poly(),
            &g(r, 3).add(&LaurentPoly::one(r))
        );
    }

    #[test]
    fn integer_content_split() {
        // 6(g1 - 1) = 2 * 3 * (g1 - 1)
        let r = 1;
        let f = g(r, 1).sub(&LaurentPoly::one(r)).mul_scalar(6);
        let fac = factor_ok(&f);
        assert_eq!(fac.factors.len(), 3);
    }

    #[test]
    fn product_of_torsion_like_factors() {
        // (g3 + g4 - g3 g4)(g2 g3 + g4 - 1): the linear strategy must split it
        let r = 4;
        let a = g(r, 3).add(&g(r, 4)).sub(&g(r, 3).mul(&g(r, 4)));
        let b = g(r, 2).mul(&g(r, 3)).add(&g(r, 4)).sub(&LaurentPoly::one(r));
        let fac = factor_ok(&a.mul(&b));
        assert_eq!(fac.factors.len(), 2);
        let got: Vec<&LaurentPoly> = fac.factors.iter().map(|(f, _)| f.as_poly()).collect();
        assert!(got.contains(&&a.canonical().into_poly()));
        assert!(got.contains(&&b.canonical().into_poly()));
    }

    #[test]
    fn kronecker_recombination() {
        // (g1 + g2 - 1)(g1 + g2 + 3): degree 2 in both variables, so only the
        // Kronecker strategy applies
        let r = 2;
        let one = LaurentPoly::one(r);
        let a = g(r, 1).add(&g(r, 2)).sub(&one);
        let b = g(r, 1).add(&g(r, 2)).add(&LaurentPoly::constant(r, 3));
        let fac = factor_ok(&a.mul(&b));
        assert_eq!(fac.factors.len(), 2);
        let got: Vec<&LaurentPoly> = fac.factors.iter().map(|(f, _)| f.as_poly()).collect();
        assert!(got.contains(&&a));
        assert!(got.contains(&&b));
    }

    #[test]
    fn kronecker_certifies_irreducible() {
        // g1^2 g2 + g1 g2^2 + 1 has no linear variable and is irreducible
        let r = 2;
        let f = g(r, 1)
            .pow(2)
            .mul(&g(r, 2))
            .add(&g(r, 1).mul(&g(r, 2).pow(2)))
            .add(&LaurentPoly::one(r));
        let fac = factor_ok(&f);
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0.as_poly(), &f);
    }

    #[test]
    fn unit_input() {
        let r = 3;
        let f = LaurentPoly::monomial(r, vec![1, -2, 0], -1);
        let fac = factor_ok(&f);
        assert_eq!(fac.sign, -1);
        assert_eq!(fac.monomial, vec![1, -2, 0]);
        assert!(fac.factors.is_empty());
    }

    #[test]
    fn zero_rejected_and_budget_exhausts() {
        let r = 2;
        assert_eq!(
            factor(&LaurentPoly::zero(r), &mut Budget::default()),
            Err(FactorError::ZeroPolynomial)
        );
        let f = g(r, 1).add(&g(r, 2)).sub(&LaurentPoly::one(r));
        let f = f.mul(&f.add(&LaurentPoly::constant(r, 4)));
        assert_eq!(
            factor(&f, &mut Budget::new(0)),
            Err(FactorError::BudgetExhausted)
        );
    }
}

//! Multivariate GCD over Z[H] by primitive polynomial remainder sequences,
//! recursing on the number of variables. The remainder sequences run over
//! arbitrary-precision coefficients: intermediate subresultant-style growth
//! routinely exceeds i128 even for small inputs, while the final gcd (a
//! divisor of both inputs) fits.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{term_cmp, LaurentPoly, UnitClassForm};

/// GCD in Z[H], returned in canonical shifted form (monomials are units, so
/// the result of two monomial arguments is 1).
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> UnitClassForm {
    assert_eq!(a.rank(), b.rank(), "rank mismatch");
    assert!(!(a.is_zero() && b.is_zero()), "gcd(0, 0) is undefined");
    if a.is_zero() {
        return b.canonical();
    }
    if b.is_zero() {
        return a.canonical();
    }
    let pa = Big::from_laurent(&a.canonical().into_poly());
    let pb = Big::from_laurent(&b.canonical().into_poly());
    gcd_proper(&pa, &pb).to_laurent().canonical()
}

/// Polynomial with nonnegative exponents and arbitrary-precision
/// coefficients; only the operations the remainder sequences need.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Big {
    rank: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl Big {
    fn zero(rank: usize) -> Self {
        Big {
            rank,
            terms: BTreeMap::new(),
        }
    }

    fn constant(rank: usize, c: BigInt) -> Self {
        let mut p = Big::zero(rank);
        p.add_term(alloc::vec![0; rank], c);
        p
    }

    fn one(rank: usize) -> Self {
        Big::constant(rank, BigInt::from(1))
    }

    fn from_laurent(p: &LaurentPoly) -> Self {
        Big {
            rank: p.rank(),
            terms: p
                .terms()
                .map(|(e, &c)| (e.clone(), BigInt::from(c)))
                .collect(),
        }
    }

    fn to_laurent(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.rank);
        for (e, c) in self.terms.iter() {
            let c = c
                .to_i128()
                .expect("gcd coefficient exceeds the supported range");
            p = p.add(&LaurentPoly::monomial(self.rank, e.clone(), c));
        }
        p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    fn is_one(&self) -> bool {
        self.is_constant() && self.coeff0() == BigInt::from(1)
    }

    fn coeff0(&self) -> BigInt {
        let zero = alloc::vec![0i64; self.rank];
        self.terms.get(&zero).cloned().unwrap_or_else(BigInt::zero)
    }

    fn int_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn max_exponent(&self, var: usize) -> i64 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    fn leading(&self) -> Option<(&Vec<i64>, &BigInt)> {
        self.terms.iter().max_by(|(a, _), (b, _)| term_cmp(a, b))
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn add(&self, other: &Big) -> Big {
        let mut r = self.clone();
        for (e, c) in other.terms.iter() {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    fn sub(&self, other: &Big) -> Big {
        let mut r = self.clone();
        for (e, c) in other.terms.iter() {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    fn neg(&self) -> Big {
        Big {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    fn mul(&self, other: &Big) -> Big {
        let mut r = Big::zero(self.rank);
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in other.terms.iter() {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                r.add_term(e, ca * cb);
            }
        }
        r
    }

    fn mul_monomial(&self, exps: &[i64], c: &BigInt) -> Big {
        Big {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), v * c))
                .collect(),
        }
    }

    /// Exact division by graded-lex leading-term elimination; valid because
    /// all exponents here are nonnegative, so the term order is a well-order.
    /// None when not divisible.
    fn try_div(&self, d: &Big) -> Option<Big> {
        if self.is_zero() {
            return Some(Big::zero(self.rank));
        }
        let (de, dc) = d.leading()?;
        let mut r = self.clone();
        let mut q = Big::zero(self.rank);
        while let Some((re, rc)) = r.leading() {
            let mut e = Vec::with_capacity(self.rank);
            for (x, y) in re.iter().zip(de) {
                if x < y {
                    return None;
                }
                e.push(x - y);
            }
            let (quot, rem) = rc.div_rem(dc);
            if !rem.is_zero() {
                return None;
            }
            q.add_term(e.clone(), quot.clone());
            r = r.sub(&d.mul_monomial(&e, &quot));
        }
        Some(q)
    }
}

/// GCD of two nonzero proper polynomials. The result is proper with positive
/// leading coefficient, but is not shifted.
fn gcd_proper(a: &Big, b: &Big) -> Big {
    let rank = a.rank;
    if a.is_constant() && b.is_constant() {
        return Big::constant(rank, a.coeff0().gcd(&b.coeff0()));
    }
    if a.is_constant() {
        return Big::constant(rank, a.coeff0().gcd(&b.int_content()));
    }
    if b.is_constant() {
        return Big::constant(rank, b.coeff0().gcd(&a.int_content()));
    }
    // pick the variable minimizing the larger of the two degrees
    let var = (0..rank)
        .filter(|&v| a.max_exponent(v) > 0 || b.max_exponent(v) > 0)
        .min_by_key(|&v| {
            let da = a.max_exponent(v);
            let db = b.max_exponent(v);
            (da.max(db), da + db)
        })
        .expect("non-constant polynomial has a variable");

    let ca = coeffs_in_var(a, var);
    let cb = coeffs_in_var(b, var);
    let cont_a = content(&ca);
    let cont_b = content(&cb);
    let cont_g = gcd_proper(&cont_a, &cont_b);
    let prim_a: Vec<Big> = ca
        .iter()
        .map(|c| c.try_div(&cont_a).expect("content divides"))
        .collect();
    let prim_b: Vec<Big> = cb
        .iter()
        .map(|c| c.try_div(&cont_b).expect("content divides"))
        .collect();

    let (mut f, mut g) = if deg(&prim_a) >= deg(&prim_b) {
        (prim_a, prim_b)
    } else {
        (prim_b, prim_a)
    };
    // a primitive polynomial of degree 0 in var forces a trivial var-part
    let pp_gcd = loop {
        if deg(&g) == 0 {
            break alloc::vec![Big::one(rank)];
        }
        let r = prem(&f, &g);
        if r.iter().all(|c| c.is_zero()) {
            break g;
        }
        let rc = content(&r);
        let r: Vec<Big> = r
            .iter()
            .map(|c| c.try_div(&rc).expect("content divides"))
            .collect();
        f = g;
        g = r;
    };
    let mut result = assemble(&pp_gcd, var, rank);
    // primitive part: strip any residual content picked up by the PRS
    let cont = content(&pp_gcd);
    if !cont.is_one() {
        result = result.try_div(&cont).expect("content divides");
    }
    result.mul(&cont_g)
}

/// Coefficients of `p` as a polynomial in `var`; index = degree.
fn coeffs_in_var(p: &Big, var: usize) -> Vec<Big> {
    let d = p.max_exponent(var) as usize;
    let mut out = alloc::vec![Big::zero(p.rank); d + 1];
    for (e, c) in p.terms.iter() {
        let k = e[var];
        debug_assert!(k >= 0);
        let mut e2 = e.clone();
        e2[var] = 0;
        out[k as usize].add_term(e2, c.clone());
    }
    out
}

fn assemble(coeffs: &[Big], var: usize, rank: usize) -> Big {
    let mut out = Big::zero(rank);
    for (k, c) in coeffs.iter().enumerate() {
        let mut e = alloc::vec![0i64; rank];
        e[var] = k as i64;
        out = out.add(&c.mul_monomial(&e, &BigInt::from(1)));
    }
    out
}

fn deg(coeffs: &[Big]) -> usize {
    coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn content(coeffs: &[Big]) -> Big {
    let rank = coeffs[0].rank;
    let mut g = Big::zero(rank);
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() {
            positive_lead(c)
        } else {
            gcd_proper(&g, c)
        };
        if g.is_one() {
            break;
        }
    }
    debug_assert!(!g.is_zero());
    g
}

fn positive_lead(p: &Big) -> Big {
    match p.leading() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p.clone(),
    }
}

/// Pseudo-remainder of f by g (g nonzero, deg g >= 1), both given as
/// coefficient vectors in one variable over Z[remaining variables].
fn prem(f: &[Big], g: &[Big]) -> Vec<Big> {
    let dg = deg(g);
    let lg = g[dg].clone();
    let mut r: Vec<Big> = f.to_vec();
    while deg(&r) >= dg && !r.iter().all(|c| c.is_zero()) {
        let dr = deg(&r);
        let lr = r[dr].clone();
        // r <- lg * r - lr * x^{dr-dg} * g
        let rank = lr.rank;
        let mut next = alloc::vec![Big::zero(rank); dr.max(1)];
        for (i, c) in r.iter().enumerate().take(dr) {
            next[i] = c.mul(&lg);
        }
        for (j, c) in g.iter().enumerate().take(dg) {
            let idx = j + dr - dg;
            next[idx] = next[idx].sub(&c.mul(&lr));
        }
        r = next;
        if deg(&r) == 0 && r[0].is_zero() {
            break;
        }
    }
    r
}

//! Univariate factorization over Z: Yun's squarefree decomposition followed
//! by Zassenhaus (factor mod p, linear Hensel lifting, subset recombination).
//! Coefficients are i128 throughout; inputs whose Landau-Mignotte bound does
//! not fit report FactorizationIncomplete instead of overflowing.

use alloc::vec;
use alloc::vec::Vec;

use super::{int_gcd, Budget, FactorError};

/// Dense integer polynomial; `c[i]` is the coefficient of x^i, no trailing
/// zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct UniPoly {
    pub c: Vec<i128>,
}

impl UniPoly {
    pub fn new(mut c: Vec<i128>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn constant(k: i128) -> Self {
        UniPoly::new(vec![k])
    }

    pub fn x() -> Self {
        UniPoly { c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> i128 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0i128; n];
        for (i, v) in c.iter_mut().enumerate() {
            *v = self.c.get(i).copied().unwrap_or(0) - o.c.get(i).copied().unwrap_or(0);
        }
        UniPoly::new(c)
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![0i128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }

    pub fn mul_scalar(&self, k: i128) -> UniPoly {
        UniPoly::new(self.c.iter().map(|&x| x * k).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        if self.c.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, &x)| x * (i as i128 + 1))
                .collect(),
        )
    }

    pub fn content(&self) -> i128 {
        self.c.iter().fold(0i128, |g, &x| int_gcd(g, x))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut k = self.content();
        if self.lc() < 0 {
            k = -k;
        }
        UniPoly::new(self.c.iter().map(|&x| x / k).collect())
    }

    /// Exact division over Z; None if not divisible.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        if self.deg() < d.deg() {
            return None;
        }
        let mut r = self.c.clone();
        let mut q = vec![0i128; self.deg() - d.deg() + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + d.deg()];
            if top % d.lc() != 0 {
                return None;
            }
            let qk = top / d.lc();
            q[k] = qk;
            for (j, &dc) in d.c.iter().enumerate() {
                // overflow means the division cannot be exact for inputs in
                // range; treat it as non-divisibility
                let prod = qk.checked_mul(dc)?;
                r[k + j] = r[k + j].checked_sub(prod)?;
            }
        }
        if r.iter().any(|&x| x != 0) {
            return None;
        }
        Some(UniPoly::new(q))
    }

    /// GCD over Z, computed modulo a sequence of ~20-bit primes combined by
    /// CRT and certified by exact trial division. (A polynomial remainder
    /// sequence over Z overflows i128 on the high-degree inputs produced by
    /// Kronecker packing; modular images stay bounded.) Result is primitive
    /// with positive leading coefficient, times the gcd of the contents.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let cont = int_gcd(self.content(), other.content());
        let fp = self.primitive();
        let gp = other.primitive();
        if fp.deg() == 0 || gp.deg() == 0 {
            return UniPoly::constant(cont);
        }
        let d = int_gcd(fp.lc(), gp.lc());
        let mut modulus: i128 = 0;
        // residues of d * (monic gcd image) mod `modulus`
        let mut best: Vec<i128> = Vec::new();
        let mut p = 1i128 << 20;
        loop {
            p = next_prime(p + 1);
            if fp.lc() % p == 0 || gp.lc() % p == 0 {
                continue;
            }
            let hp = mp_gcd(&mp_reduce(&fp, p), &mp_reduce(&gp, p), p);
            if mp_deg(&hp) == 0 {
                return UniPoly::constant(cont);
            }
            let hp = mp_mul_scalar(&hp, md(d, p), p);
            if modulus == 0 || mp_deg(&hp) < mp_deg(&best) {
                best = hp;
                modulus = p;
            } else if mp_deg(&hp) == mp_deg(&best) {
                best = crt_combine(&best, modulus, &hp, p);
                modulus *= p;
            } else {
                // this prime sees too large a gcd: unlucky, skip it
                continue;
            }
            let cand = UniPoly::new(
                best.iter().map(|&c| symmetric(c, modulus)).collect(),
            )
            .primitive();
            if !cand.is_zero() && fp.div_exact(&cand).is_some() && gp.div_exact(&cand).is_some() {
                return cand.mul_scalar(cont);
            }
            assert!(
                modulus < (1i128 << 100),
                "gcd coefficients exceed the supported range"
            );
        }
    }
}

/// Smallest prime >= n (trial division; n stays near 2^20).
fn next_prime(mut n: i128) -> i128 {
    if n % 2 == 0 {
        n += 1;
    }
    loop {
        let mut d = 3;
        let mut composite = false;
        while d * d <= n {
            if n % d == 0 {
                composite = true;
                break;
            }
            d += 2;
        }
        if !composite {
            return n;
        }
        n += 2;
    }
}

/// Coefficientwise CRT: residues mod m1 and mod p (coprime) to mod m1*p.
fn crt_combine(a: &[i128], m1: i128, b: &[i128], p: i128) -> Vec<i128> {
    let inv = inv_mod(md(m1, p), p);
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let ai = a.get(i).copied().unwrap_or(0);
            let bi = b.get(i).copied().unwrap_or(0);
            ai + m1 * md((bi - ai) * inv, p)
        })
        .collect()
}

/// Yun's squarefree decomposition of a primitive polynomial with positive
/// leading coefficient. Returns (squarefree factor, multiplicity) pairs.
fn yun(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    let fp = f.derivative();
    let g = f.gcd(&fp);
    if g.deg() == 0 {
        out.push((f.clone(), 1));
        return out;
    }
    let mut c = f.div_exact(&g).expect("gcd divides f");
    let mut d = fp.div_exact(&g).expect("gcd divides f'").sub(&c.derivative());
    let mut i = 1u32;
    while c.deg() >= 1 {
        let a = c.gcd(&d);
        if a.deg() >= 1 {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).expect("a divides c");
        d = d.div_exact(&a).expect("a divides d").sub(&c.derivative());
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Arithmetic mod m (m = p or p^a, fits in i128 with m <= 2^62)
// ---------------------------------------------------------------------------

fn md(a: i128, m: i128) -> i128 {
    a.rem_euclid(m)
}

fn inv_mod(a: i128, m: i128) -> i128 {
    // extended Euclid; a must be invertible mod m
    let (mut old_r, mut r) = (md(a, m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "element not invertible");
    md(old_s, m)
}

fn mp_trim(c: &mut Vec<i128>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn mp_deg(c: &[i128]) -> usize {
    c.len().saturating_sub(1)
}

fn mp_reduce(f: &UniPoly, m: i128) -> Vec<i128> {
    let mut c: Vec<i128> = f.c.iter().map(|&x| md(x, m)).collect();
    mp_trim(&mut c);
    c
}

fn mp_sub(a: &[i128], b: &[i128], m: i128) -> Vec<i128> {
    let n = a.len().max(b.len());
    let mut c = vec![0i128; n];
    for (i, v) in c.iter_mut().enumerate() {
        *v = md(
            a.get(i).copied().unwrap_or(0) - b.get(i).copied().unwrap_or(0),
            m,
        );
    }
    mp_trim(&mut c);
    c
}

fn mp_add(a: &[i128], b: &[i128], m: i128) -> Vec<i128> {
    let n = a.len().max(b.len());
    let mut c = vec![0i128; n];
    for (i, v) in c.iter_mut().enumerate() {
        *v = md(
            a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0),
            m,
        );
    }
    mp_trim(&mut c);
    c
}

fn mp_mul(a: &[i128], b: &[i128], m: i128) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = md(c[i + j] + x * y, m);
        }
    }
    mp_trim(&mut c);
    c
}

fn mp_mul_scalar(a: &[i128], k: i128, m: i128) -> Vec<i128> {
    let mut c: Vec<i128> = a.iter().map(|&x| md(x * k, m)).collect();
    mp_trim(&mut c);
    c
}

/// Division with remainder mod m; the divisor's leading coefficient must be
/// invertible mod m.
fn mp_divmod(a: &[i128], b: &[i128], m: i128) -> (Vec<i128>, Vec<i128>) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let linv = inv_mod(*b.last().unwrap(), m);
    let mut r = a.to_vec();
    let mut q = vec![0i128; a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = md(r[k + b.len() - 1] * linv, m);
        q[k] = top;
        if top == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            r[k + j] = md(r[k + j] - top * bc, m);
        }
    }
    mp_trim(&mut q);
    mp_trim(&mut r);
    (q, r)
}

fn mp_monic(a: &[i128], m: i128) -> Vec<i128> {
    if a.is_empty() {
        return Vec::new();
    }
    mp_mul_scalar(a, inv_mod(*a.last().unwrap(), m), m)
}

fn mp_gcd(a: &[i128], b: &[i128], p: i128) -> Vec<i128> {
    let (mut f, mut g) = (a.to_vec(), b.to_vec());
    while !g.is_empty() {
        let (_, r) = mp_divmod(&f, &g, p);
        f = g;
        g = r;
    }
    mp_monic(&f, p)
}

fn mp_powmod(base: &[i128], mut e: i128, modpoly: &[i128], p: i128) -> Vec<i128> {
    let mut result = vec![1i128];
    let mut b = mp_divmod(base, modpoly, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = mp_divmod(&mp_mul(&result, &b, p), modpoly, p).1;
        }
        b = mp_divmod(&mp_mul(&b, &b, p), modpoly, p).1;
        e >>= 1;
    }
    result
}

/// Deterministic xorshift for Cantor-Zassenhaus splitting.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial mod an odd prime p. Returns monic irreducible factors.
fn factor_mod_p(fbar: &[i128], p: i128) -> Vec<Vec<i128>> {
    let mut out = Vec::new();
    let mut v = fbar.to_vec();
    let x = vec![0i128, 1];
    let mut h = mp_divmod(&x, &v, p).1;
    let mut d = 0usize;
    while 2 * (d + 1) <= mp_deg(&v) {
        d += 1;
        h = mp_powmod(&h, p, &v, p);
        let hx = mp_sub(&h, &x, p);
        let g = mp_gcd(&hx, &v, p);
        if mp_deg(&g) > 0 {
            equal_degree(&g, d, p, &mut out);
            v = mp_divmod(&v, &g, p).0;
            h = mp_divmod(&h, &v, p).1;
        }
    }
    if mp_deg(&v) > 0 {
        out.push(mp_monic(&v, p));
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: g is monic squarefree, a
/// product of irreducibles of degree d mod odd prime p.
fn equal_degree(g: &[i128], d: usize, p: i128, out: &mut Vec<Vec<i128>>) {
    if mp_deg(g) == d {
        out.push(g.to_vec());
        return;
    }
    let mut rng = Rng(0x9E3779B97F4A7C15 ^ (p as u64) ^ ((mp_deg(g) as u64) << 32));
    loop {
        // random polynomial of degree < deg g
        let mut r: Vec<i128> = (0..mp_deg(g)).map(|_| (rng.next() as i128) % p).collect();
        mp_trim(&mut r);
        if r.is_empty() {
            continue;
        }
        // r^((p^d-1)/2) = (r^N)^((p-1)/2) with N = 1 + p + ... + p^{d-1}
        let mut frob = r.clone();
        let mut u = r.clone();
        for _ in 1..d {
            frob = mp_powmod(&frob, p, g, p);
            u = mp_divmod(&mp_mul(&u, &frob, p), g, p).1;
        }
        let s = mp_powmod(&u, (p - 1) / 2, g, p);
        let s1 = mp_sub(&s, &[1], p);
        if s1.is_empty() {
            continue;
        }
        let w = mp_gcd(&s1, g, p);
        if mp_deg(&w) > 0 && mp_deg(&w) < mp_deg(g) {
            let q = mp_divmod(g, &w, p).0;
            equal_degree(&w, d, p, out);
            equal_degree(&q, d, p, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

/// Lifts f = g*h (mod p), g monic, s*g + t*h = 1 (mod p), to f = G*H
/// (mod p^a) by linear steps. f is given reduced mod p^a.
#[allow(clippy::too_many_arguments)]
fn lift_pair(
    f: &[i128],
    g: &[i128],
    h: &[i128],
    s: &[i128],
    t: &[i128],
    p: i128,
    a: u32,
) -> (Vec<i128>, Vec<i128>) {
    let mut gg = g.to_vec();
    let mut hh = h.to_vec();
    let mut m = p; // current modulus p^i
    for _ in 1..a {
        let m_next = m * p;
        // u = (f - g*h) / m  mod p
        let prod = mp_mul_wide(&gg, &hh, m_next);
        let mut u: Vec<i128> = (0..f.len().max(prod.len()))
            .map(|i| {
                let diff = md(
                    f.get(i).copied().unwrap_or(0) - prod.get(i).copied().unwrap_or(0),
                    m_next,
                );
                debug_assert_eq!(diff % m, 0);
                md(diff / m, p)
            })
            .collect();
        mp_trim(&mut u);
        // with s*g + t*h = 1: u = (s*u)*g + (t*u)*h; reduce t*u mod g so the
        // correction to g keeps it monic: dg = (t*u mod g), dh = s*u + q*h
        let (q, r) = mp_divmod(&mp_mul(t, &u, p), &gg.iter().map(|&x| md(x, p)).collect::<Vec<_>>(), p);
        let dh = mp_add(&mp_mul(s, &u, p), &mp_mul(&q, &hh.iter().map(|&x| md(x, p)).collect::<Vec<_>>(), p), p);
        gg = mp_add(&gg, &mp_mul_scalar(&r, m, m_next), m_next);
        hh = mp_add(&hh, &mp_mul_scalar(&dh, m, m_next), m_next);
        m = m_next;
    }
    (gg, hh)
}

/// Multiplication reducing mod m, for coefficients already in [0, m).
fn mp_mul_wide(a: &[i128], b: &[i128], m: i128) -> Vec<i128> {
    mp_mul(a, b, m)
}

/// Lifts the modular factorization f = lc * prod(mods) (mod p) to mod p^a.
/// Returns monic factors G_i mod p^a with f = lc * prod(G_i) (mod p^a).
fn lift_all(f: &UniPoly, mods: &[Vec<i128>], p: i128, a: u32) -> Vec<Vec<i128>> {
    let pa = p.pow(a);
    let mut cur = mp_reduce(f, pa);
    let mut out = Vec::new();
    for i in 0..mods.len() {
        if i == mods.len() - 1 {
            out.push(mp_monic(&cur, pa));
            break;
        }
        let g = mods[i].clone();
        // h = lc(cur) * prod of the remaining factors, mod p
        let mut h = vec![md(*cur.last().unwrap(), p)];
        for m_j in mods.iter().skip(i + 1) {
            h = mp_mul(&h, m_j, p);
        }
        let (s, t) = bezout_mod_p(&g, &h, p);
        let (gg, hh) = lift_pair(&cur, &g, &h, &s, &t, p, a);
        out.push(gg);
        cur = hh;
    }
    out
}

/// s, t with s*a + t*b = 1 mod p for coprime a, b mod p.
fn bezout_mod_p(a: &[i128], b: &[i128], p: i128) -> (Vec<i128>, Vec<i128>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (Vec<i128>, Vec<i128>) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Vec<i128>, Vec<i128>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = mp_divmod(&r0, &r1, p);
        let ns = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let nt = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, ns);
        t0 = core::mem::replace(&mut t1, nt);
    }
    assert_eq!(mp_deg(&r0), 0, "factors not coprime mod p");
    let inv = inv_mod(r0[0], p);
    (mp_mul_scalar(&s0, inv, p), mp_mul_scalar(&t0, inv, p))
}

// ---------------------------------------------------------------------------
// Zassenhaus
// ---------------------------------------------------------------------------

const PRIMES: [i128; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

const MAX_MODULAR_FACTORS: usize = 16;

/// Advances `idx` to the next k-combination of {0..n}; false when exhausted.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] != i + n - k {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Symmetric representative in (-m/2, m/2].
fn symmetric(c: i128, m: i128) -> i128 {
    let c = md(c, m);
    if c > m / 2 {
        c - m
    } else {
        c
    }
}

/// Factors a primitive squarefree polynomial with positive leading
/// coefficient and degree >= 1 into irreducibles over Z.
fn factor_squarefree(f: &UniPoly, budget: &mut Budget) -> Result<Vec<UniPoly>, FactorError> {
    if f.deg() == 1 {
        return Ok(vec![f.clone()]);
    }
    // Landau-Mignotte-style bound: |coeff of lc*(any factor)| <= lc * 2^deg * sum|c_i|
    let norm1: i128 = f.c.iter().map(|&x| x.abs()).sum();
    let mut bound = f.lc().checked_mul(norm1).ok_or(FactorError::FactorizationIncomplete)?;
    for _ in 0..f.deg() {
        bound = bound.checked_mul(2).ok_or(FactorError::FactorizationIncomplete)?;
        if bound > (1i128 << 61) {
            return Err(FactorError::FactorizationIncomplete);
        }
    }
    // pick an odd prime not dividing lc with f squarefree mod p
    let mut chosen = None;
    for &p in PRIMES.iter() {
        if f.lc() % p == 0 {
            continue;
        }
        let fbar = mp_monic(&mp_reduce(f, p), p);
        if mp_deg(&fbar) != f.deg() {
            continue;
        }
        let fder = {
            let d: Vec<i128> = fbar
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &x)| md(x * i as i128, p))
                .collect();
            let mut d = d;
            mp_trim(&mut d);
            d
        };
        if fder.is_empty() {
            continue;
        }
        let g = mp_gcd(&fbar, &fder, p);
        if mp_deg(&g) == 0 {
            chosen = Some((p, fbar));
            break;
        }
    }
    let Some((p, fbar)) = chosen else {
        return Err(FactorError::FactorizationIncomplete);
    };
    // p^a > 2*bound, p^a <= 2^62
    let mut a = 1u32;
    let mut pa = p;
    while pa <= 2 * bound {
        pa = pa.checked_mul(p).ok_or(FactorError::FactorizationIncomplete)?;
        a += 1;
        if pa > (1i128 << 62) {
            return Err(FactorError::FactorizationIncomplete);
        }
    }
    let mods = factor_mod_p(&fbar, p);
    if mods.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    if mods.len() > MAX_MODULAR_FACTORS {
        return Err(FactorError::FactorizationIncomplete);
    }
    let lifted = lift_all(f, &mods, p, a);
    let pa = p.pow(a);

    // subset recombination
    let mut active: Vec<Vec<i128>> = lifted;
    let mut cur = f.clone();
    let mut out = Vec::new();
    'search: loop {
        let n = active.len();
        for size in 1..=n / 2 {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                budget.tick(1)?;
                // candidate = lc(cur) * prod active[idx], symmetric mod p^a
                let mut cand = vec![md(cur.lc(), pa)];
                for &i in &idx {
                    cand = mp_mul(&cand, &active[i], pa);
                }
                let cand = UniPoly::new(cand.iter().map(|&c| symmetric(c, pa)).collect());
                let pp = cand.primitive();
                if let Some(q) = cur.div_exact(&pp) {
                    out.push(pp);
                    cur = q.primitive();
                    let mut keep = Vec::new();
                    for (i, m) in active.into_iter().enumerate() {
                        if !idx.contains(&i) {
                            keep.push(m);
                        }
                    }
                    active = keep;
                    continue 'search;
                }
                if !next_combination(&mut idx, n) {
                    break;
                }
            }
        }
        break;
    }
    if cur.deg() >= 1 {
        out.push(cur);
    }
    Ok(out)
}

/// Factors a nonzero integer polynomial with content +-1 into irreducibles
/// with positive leading coefficients (including x itself if it divides).
/// The product of the returned factors equals the input up to sign.
pub(crate) fn factor_primitive(
    f: &UniPoly,
    budget: &mut Budget,
) -> Result<Vec<(UniPoly, u32)>, FactorError> {
    assert!(!f.is_zero());
    let mut f = f.primitive();
    let mut out: Vec<(UniPoly, u32)> = Vec::new();
    // strip powers of x
    let xmult = f.c.iter().position(|&c| c != 0).unwrap_or(0);
    if xmult > 0 {
        f = UniPoly::new(f.c[xmult..].to_vec());
        out.push((UniPoly::x(), xmult as u32));
    }
    if f.deg() == 0 {
        return Ok(out);
    }
    for (sq, mult) in yun(&f) {
        for irr in factor_squarefree(&sq, budget)? {
            if let Some(slot) = out.iter_mut().find(|(p, _)| *p == irr) {
                slot.1 += mult;
            } else {
                out.push((irr, mult));
            }
        }
    }
    Ok(out)
}

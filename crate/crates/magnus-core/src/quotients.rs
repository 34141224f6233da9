//! Reductions of the multiplicative group of nonzero rational functions to
//! the abelian quotients modulo +-H, +-H*A, and +-H*A*N, orbit certificates
//! for irreducible factors, and the derived homomorphisms r_hat and
//! tau_tilde, together with distinctness and independence checks for the
//! witness families.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cylinder::{AdmissiblePresentation, CylinderError};
use crate::laurent::{
    factor, Budget, FactorError, LaurentPoly, RationalFunction, UnitClassForm,
};
use crate::matrixkh::{smith_normal_form, IntMatrix, Mat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    /// modulo +-H: keys are exact canonical unit-class forms
    ModH,
    /// modulo +-H*A: keys are action-invariant orbit certificates
    ModHA,
    /// modulo +-H*A*N: orbit certificates with exponents reduced mod 2
    ModHAN,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientError {
    Factor(FactorError),
    Cylinder(CylinderError),
    /// classes at mixed levels cannot be compared or combined
    LevelMismatch,
}

impl From<FactorError> for QuotientError {
    fn from(e: FactorError) -> Self {
        QuotientError::Factor(e)
    }
}

impl From<CylinderError> for QuotientError {
    fn from(e: CylinderError) -> Self {
        QuotientError::Cylinder(e)
    }
}

impl core::fmt::Display for QuotientError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            QuotientError::Factor(e) => write!(f, "{}", e),
            QuotientError::Cylinder(e) => write!(f, "{}", e),
            QuotientError::LevelMismatch => write!(f, "quotient level mismatch"),
        }
    }
}

/// Action-invariant data of an irreducible form, constant under
/// substitute(., T) for unimodular T and under +-H normalization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitCertificate {
    pub monomial_count: usize,
    /// sorted coefficients, normalized up to a global sign flip
    pub coeff_multiset: Vec<i128>,
    /// nonzero invariant factors of the exponent-difference lattice
    pub diff_lattice_snf: Vec<i128>,
    pub representative: UnitClassForm,
}

impl OrbitCertificate {
    pub fn of(form: &UnitClassForm) -> Self {
        let p = form.as_poly();
        let rank = p.rank();
        let support: Vec<(&Vec<i64>, &i128)> = p.terms().collect();
        let mut coeffs: Vec<i128> = support.iter().map(|&(_, &c)| c).collect();
        coeffs.sort_unstable();
        let mut flipped: Vec<i128> = coeffs.iter().map(|&c| -c).collect();
        flipped.sort_unstable();
        if flipped > coeffs {
            coeffs = flipped;
        }
        // lattice spanned by differences of support exponents
        let k = support.len();
        let diff_lattice_snf = if k <= 1 {
            Vec::new()
        } else {
            let base = support[0].0;
            let m = Mat::from_fn(k - 1, rank, |i, j| {
                (support[i + 1].0[j] - base[j]) as i128
            });
            smith_normal_form(&m).nonzero_factors()
        };
        OrbitCertificate {
            monomial_count: k,
            coeff_multiset: coeffs,
            diff_lattice_snf,
            representative: form.clone(),
        }
    }

    /// The comparable part of the certificate (representative excluded).
    fn key(&self) -> (usize, Vec<i128>, Vec<i128>) {
        (
            self.monomial_count,
            self.coeff_multiset.clone(),
            self.diff_lattice_snf.clone(),
        )
    }

    pub fn to_text(&self) -> String {
        format!(
            "{} [monomials {}, coeffs {:?}, lattice {:?}]",
            self.representative.to_text(),
            self.monomial_count,
            self.coeff_multiset,
            self.diff_lattice_snf
        )
    }
}

/// Map key for one irreducible factor at the given level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassKey {
    /// exact canonical form (ModH)
    Exact(UnitClassForm),
    /// action-invariant certificate triple (ModHA, ModHAN)
    Orbit(usize, Vec<i128>, Vec<i128>),
}

/// Element of one of the abelian quotient groups: a finite exponent vector
/// over irreducible-factor keys.
#[derive(Debug, Clone)]
pub struct QuotientClass {
    level: Level,
    factors: BTreeMap<ClassKey, i64>,
    /// a concrete representative for each key, kept for reporting
    reps: BTreeMap<ClassKey, UnitClassForm>,
}

impl PartialEq for QuotientClass {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.factors == other.factors
    }
}

impl Eq for QuotientClass {}

impl QuotientClass {
    pub fn empty(level: Level) -> Self {
        QuotientClass {
            level,
            factors: BTreeMap::new(),
            reps: BTreeMap::new(),
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&ClassKey, &i64)> {
        self.factors.iter()
    }

    pub fn representative(&self, key: &ClassKey) -> Option<&UnitClassForm> {
        self.reps.get(key)
    }

    fn insert(&mut self, form: &UnitClassForm, exponent: i64) {
        if exponent == 0 {
            return;
        }
        let key = match self.level {
            Level::ModH => ClassKey::Exact(form.clone()),
            Level::ModHA | Level::ModHAN => {
                let cert = OrbitCertificate::of(form);
                let (a, b, c) = cert.key();
                ClassKey::Orbit(a, b, c)
            }
        };
        let entry = self.factors.entry(key.clone()).or_insert(0);
        *entry += exponent;
        if self.level == Level::ModHAN {
            *entry = entry.rem_euclid(2);
        }
        if *entry == 0 {
            self.factors.remove(&key);
            self.reps.remove(&key);
        } else {
            self.reps.entry(key).or_insert_with(|| form.clone());
        }
    }

    /// Group operation (exponent-vector addition).
    pub fn add(&self, other: &QuotientClass) -> Result<QuotientClass, QuotientError> {
        if self.level != other.level {
            return Err(QuotientError::LevelMismatch);
        }
        let mut out = self.clone();
        for (key, &e) in other.factors.iter() {
            let entry = out.factors.entry(key.clone()).or_insert(0);
            *entry += e;
            if out.level == Level::ModHAN {
                *entry = entry.rem_euclid(2);
            }
            if *entry == 0 {
                out.factors.remove(key);
                out.reps.remove(key);
            } else if let Some(rep) = other.reps.get(key) {
                out.reps.entry(key.clone()).or_insert_with(|| rep.clone());
            }
        }
        Ok(out)
    }

    /// Canonical text: sorted `(<representative + invariants>, <exponent>)`.
    pub fn to_text(&self) -> String {
        if self.factors.is_empty() {
            return String::from("(empty)");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(key, e)| {
                let rep = self.reps.get(key).expect("representative kept per key");
                match key {
                    ClassKey::Exact(form) => format!("({}, {})", form.to_text(), e),
                    ClassKey::Orbit(..) => {
                        format!("({}, {})", OrbitCertificate::of(rep).to_text(), e)
                    }
                }
            })
            .collect();
        parts.join("; ")
    }
}

/// Reduces a nonzero rational function to its class in the requested
/// quotient: factor numerator and denominator, subtract multiplicities.
pub fn reduce(
    f: &RationalFunction,
    level: Level,
    budget: &mut Budget,
) -> Result<QuotientClass, QuotientError> {
    if f.is_zero() {
        return Err(QuotientError::Factor(FactorError::ZeroPolynomial));
    }
    let num = factor(f.num(), budget)?;
    let den = factor(f.den(), budget)?;
    let mut class = QuotientClass::empty(level);
    for (form, mult) in &num.factors {
        class.insert(form, *mult as i64);
    }
    for (form, mult) in &den.factors {
        class.insert(form, -(*mult as i64));
    }
    Ok(class)
}

/// r_hat(P) = class of det r(P) modulo +-H.
pub fn r_hat(
    p: &AdmissiblePresentation,
    budget: &mut Budget,
) -> Result<QuotientClass, QuotientError> {
    let r = p.magnus_matrix()?;
    let det = r.det().map_err(|_| {
        QuotientError::Cylinder(CylinderError::SingularMatrix)
    })?;
    reduce(&det, Level::ModH, budget)
}

/// tau_tilde(P) = class of tau(P) modulo +-H*A*N.
pub fn tau_tilde(
    p: &AdmissiblePresentation,
    budget: &mut Budget,
) -> Result<QuotientClass, QuotientError> {
    let tau = p.torsion_poly()?;
    reduce(&RationalFunction::from_poly(tau), Level::ModHAN, budget)
}

/// The H_1-action matrix of the string-link twist used by the CFK witness
/// family: gamma1 -> gamma1 gamma4, gamma3 -> gamma2 gamma3, others fixed.
pub fn cfk_action() -> IntMatrix {
    IntMatrix::from_rows(alloc::vec![
        alloc::vec![1, 0, 0, 0],
        alloc::vec![0, 1, 1, 0],
        alloc::vec![0, 0, 1, 0],
        alloc::vec![1, 0, 0, 1],
    ])
}

/// Witness classes (gamma2^m gamma3 + gamma4 - 1) /
/// (gamma2^-m gamma3^-1 + gamma4^-1 - 1) for m = 0..=m_max, generated by
/// applying powers of the cfk action to the base class bar(tau)/tau of the
/// string-link cylinder.
pub fn witness_family_cfk(
    m_max: usize,
    budget: &mut Budget,
) -> Result<Vec<QuotientClass>, QuotientError> {
    let m = |e: [i64; 4], c: i128| LaurentPoly::monomial(4, e.to_vec(), c);
    // base value: (gamma3 + gamma4 - 1) / (gamma3^-1 + gamma4^-1 - 1)
    let num = m([0, 0, 1, 0], 1)
        .add(&m([0, 0, 0, 1], 1))
        .sub(&LaurentPoly::one(4));
    let base = RationalFunction::new(num.clone(), num.bar()).expect("nonzero denominator");
    let t = cfk_action();
    let mut power = IntMatrix::identity(4);
    let mut out = Vec::with_capacity(m_max + 1);
    for _ in 0..=m_max {
        out.push(reduce(&base.substitute(&power), Level::ModH, budget)?);
        power = power.mul(&t);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distinctness {
    /// the two classes are provably different; the witness names the
    /// separating invariant
    Distinct { witness: String },
    /// the invariants agree; equality of orbits is never certified here
    Indistinguishable,
}

/// Certifies inequality of two irreducible forms at the given level.
/// At ModH this is sound and complete (canonical forms compare exactly,
/// which realizes the comparison of monomial ratios). At ModHA/ModHAN only
/// inequality is ever certified, through the certificate invariants.
pub fn assert_distinct(a: &UnitClassForm, b: &UnitClassForm, level: Level) -> Distinctness {
    match level {
        Level::ModH => {
            if a == b {
                Distinctness::Indistinguishable
            } else {
                Distinctness::Distinct {
                    witness: format!(
                        "canonical forms differ: {} vs {}",
                        a.to_text(),
                        b.to_text()
                    ),
                }
            }
        }
        Level::ModHA | Level::ModHAN => {
            let ca = OrbitCertificate::of(a);
            let cb = OrbitCertificate::of(b);
            if ca.monomial_count != cb.monomial_count {
                Distinctness::Distinct {
                    witness: format!(
                        "monomial counts differ: {} vs {}",
                        ca.monomial_count, cb.monomial_count
                    ),
                }
            } else if ca.coeff_multiset != cb.coeff_multiset {
                Distinctness::Distinct {
                    witness: format!(
                        "coefficient multisets differ: {:?} vs {:?}",
                        ca.coeff_multiset, cb.coeff_multiset
                    ),
                }
            } else if ca.diff_lattice_snf != cb.diff_lattice_snf {
                Distinctness::Distinct {
                    witness: format!(
                        "difference lattices differ: {:?} vs {:?}",
                        ca.diff_lattice_snf, cb.diff_lattice_snf
                    ),
                }
            } else {
                Distinctness::Indistinguishable
            }
        }
    }
}

/// Rank over Q of the exponent-vector matrix of the classes, indexed by the
/// union of their keys. A sound lower bound for the rank of the subgroup the
/// classes generate.
pub fn independence_rank(classes: &[QuotientClass]) -> Result<usize, QuotientError> {
    if classes.is_empty() {
        return Ok(0);
    }
    let level = classes[0].level;
    if classes.iter().any(|c| c.level != level) {
        return Err(QuotientError::LevelMismatch);
    }
    let mut keys: Vec<&ClassKey> = Vec::new();
    for c in classes {
        for key in c.factors.keys() {
            if !keys.contains(&key) {
                keys.push(key);
            }
        }
    }
    if keys.is_empty() {
        return Ok(0);
    }
    let m = Mat::from_fn(classes.len(), keys.len(), |i, j| {
        classes[i].factors.get(keys[j]).copied().unwrap_or(0) as i128
    });
    Ok(m.rank())
}

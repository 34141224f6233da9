//! Admissible presentations standing in for homology cylinders: validation
//! through Smith normal forms, the induced automorphism sigma of H_1, the
//! abelianization ring map, the Magnus matrix, the H-torsion, stacking, and
//! construction from free-group automorphisms.

use alloc::vec::Vec;
use core::fmt;

use crate::foxcalc::{fox_matrix, RingMap};
use crate::laurent::{LaurentPoly, UnitClassForm};
use crate::matrixkh::{
    smith_normal_form, IntMatrix, Mat, MatError, PolyMatrix, RatMatrix, SnfResult,
};
use crate::words::{GenTable, Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CylinderError {
    /// relator count differs from rank + extras
    DeficiencyMismatch { expected: usize, got: usize },
    /// a relator uses a generator outside the presentation context
    ForeignGenerator(Generator),
    /// H_1 of the presented group is not free of rank n
    HomologyNotFree,
    /// the ip or im classes fail to be a basis of H_1
    NotIsoOnH1,
    /// det(A;B) = 0; the presentation violates acyclicity
    SingularMatrix,
    /// composition of presentations with different ranks
    RankMismatch,
    /// endomorphism whose abelianization is not invertible over Z
    NonUnimodularAbelianization,
}

impl fmt::Display for CylinderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CylinderError::DeficiencyMismatch { expected, got } => {
                write!(f, "deficiency mismatch: expected {} relators, got {}", expected, got)
            }
            CylinderError::ForeignGenerator(g) => {
                write!(f, "relator uses generator {} outside the context", g.name())
            }
            CylinderError::HomologyNotFree => write!(f, "H1 is not free of the expected rank"),
            CylinderError::NotIsoOnH1 => {
                write!(f, "ip or im classes are not a basis of H1")
            }
            CylinderError::SingularMatrix => write!(f, "det(A;B) = 0"),
            CylinderError::RankMismatch => write!(f, "rank mismatch"),
            CylinderError::NonUnimodularAbelianization => {
                write!(f, "abelianization matrix is not unimodular")
            }
        }
    }
}

/// Certificate produced by `validate`.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// rank of H_1 of the presented group (= n for a valid presentation)
    pub h1_rank: usize,
    /// invariant factors of the abelianized relation matrix
    pub invariant_factors: Vec<i128>,
    pub snf: SnfResult,
    /// coordinates of the [ip_i] classes in the cokernel (columns)
    pub p_ip: IntMatrix,
    /// coordinates of the [im_j] classes in the cokernel (columns)
    pub p_im: IntMatrix,
}

/// Deficiency-n presentation over generators {im1..imn, z1..zl, ip1..ipn};
/// the computational stand-in for a homology cylinder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissiblePresentation {
    rank: usize,
    extras: usize,
    relators: Vec<Word>,
}

impl AdmissiblePresentation {
    pub fn new(rank: usize, extras: usize, relators: Vec<Word>) -> Self {
        AdmissiblePresentation {
            rank,
            extras,
            relators,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn extras(&self) -> usize {
        self.extras
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn table(&self) -> GenTable {
        GenTable::presentation(self.rank as u32, self.extras as u32)
    }

    /// The trivial cylinder: l = 0, relators ip_j * im_j^{-1}.
    pub fn trivial(rank: usize) -> Self {
        let relators = (1..=rank)
            .map(|j| {
                Word::generator(Generator::iplus(j as u32))
                    .multiply(&Word::generator(Generator::iminus(j as u32)).invert())
            })
            .collect();
        AdmissiblePresentation::new(rank, 0, relators)
    }

    /// The cylinder of a 2-connected endomorphism: l = 0, relators
    /// im_j * (phi(gamma_j) in ip letters)^{-1}.
    pub fn from_automorphism(images: &[Word]) -> Result<Self, CylinderError> {
        let n = images.len();
        let table = GenTable::free(n as u32);
        for w in images {
            for &(g, _) in w.letters() {
                if !table.admits(g) {
                    return Err(CylinderError::ForeignGenerator(g));
                }
            }
        }
        let ab = Mat::from_fn(n, n, |i, j| images[j].abelianize(&table)[i] as i128);
        if !ab.is_unimodular() {
            return Err(CylinderError::NonUnimodularAbelianization);
        }
        let relators = (0..n)
            .map(|j| {
                let image_ip = images[j].map_generators(|g| Generator::iplus(g.index));
                Word::generator(Generator::iminus(j as u32 + 1)).multiply(&image_ip.invert())
            })
            .collect();
        Ok(AdmissiblePresentation::new(n, 0, relators))
    }

    /// Checks admissibility: relator count, generator context, H_1 free of
    /// rank n, and both the ip and im classes bases of H_1.
    pub fn validate(&self) -> Result<ValidationReport, CylinderError> {
        let n = self.rank;
        let l = self.extras;
        if self.relators.len() != n + l {
            return Err(CylinderError::DeficiencyMismatch {
                expected: n + l,
                got: self.relators.len(),
            });
        }
        let table = self.table();
        for r in &self.relators {
            for &(g, _) in r.letters() {
                if !table.admits(g) {
                    return Err(CylinderError::ForeignGenerator(g));
                }
            }
        }
        // abelianized relation matrix, transposed: columns = relators
        let gens = 2 * n + l;
        let m = Mat::from_fn(gens, n + l, |i, j| {
            self.relators[j].abelianize(&table)[i] as i128
        });
        let snf = smith_normal_form(&m);
        let factors = snf.invariant_factors();
        if factors.iter().any(|&d| d != 1) {
            return Err(CylinderError::HomologyNotFree);
        }
        // cokernel coordinates: last n rows of u^{-1}
        let pi = snf.u_inv.submatrix(n + l, 0, n, gens);
        let p_im = pi.submatrix(0, 0, n, n);
        let p_ip = pi.submatrix(0, n + l, n, n);
        if !p_ip.is_unimodular() || !p_im.is_unimodular() {
            return Err(CylinderError::NotIsoOnH1);
        }
        Ok(ValidationReport {
            h1_rank: n,
            invariant_factors: factors,
            snf,
            p_ip,
            p_im,
        })
    }

    /// The automorphism i_+^{-1} o i_- of H_1: column j expresses [im_j] in
    /// the basis {[ip_i]}.
    pub fn sigma(&self) -> Result<IntMatrix, CylinderError> {
        let report = self.validate()?;
        let inv = report
            .p_ip
            .inverse_unimodular()
            .map_err(|_| CylinderError::NotIsoOnH1)?;
        Ok(inv.mul(&report.p_im))
    }

    /// Assigns every generator its class in H_1 expressed in the {[ip_i]}
    /// basis; in particular ip_i -> gamma_i exactly.
    pub fn ring_map(&self) -> Result<RingMap, CylinderError> {
        let report = self.validate()?;
        let n = self.rank;
        let l = self.extras;
        let gens = 2 * n + l;
        let pi = report.snf.u_inv.submatrix(n + l, 0, n, gens);
        let inv = report
            .p_ip
            .inverse_unimodular()
            .map_err(|_| CylinderError::NotIsoOnH1)?;
        let coords = inv.mul(&pi);
        let table = self.table();
        let mut rm = RingMap::new(n);
        for (k, g) in table.generators().into_iter().enumerate() {
            let v: Vec<i64> = (0..n).map(|i| *coords.at(i, k) as i64).collect();
            rm.assign(g, v);
        }
        Ok(rm)
    }

    /// The matrices (A;B) (rows im1..imn, z1..zl) and C (rows ip1..ipn) of
    /// barred, specialized Fox derivatives.
    fn fox_blocks(&self) -> Result<(PolyMatrix, PolyMatrix), CylinderError> {
        let rm = self.ring_map()?;
        let n = self.rank;
        let l = self.extras;
        let mut vars_ab: Vec<Generator> = (1..=n).map(|i| Generator::iminus(i as u32)).collect();
        vars_ab.extend((1..=l).map(|i| Generator::z(i as u32)));
        let vars_c: Vec<Generator> = (1..=n).map(|i| Generator::iplus(i as u32)).collect();
        let ab = fox_matrix(&self.relators, &vars_ab, &rm)
            .map_err(|_| CylinderError::NotIsoOnH1)?;
        let c = fox_matrix(&self.relators, &vars_c, &rm)
            .map_err(|_| CylinderError::NotIsoOnH1)?;
        Ok((ab, c))
    }

    /// The torsion det(A;B) as an exact polynomial (defined up to +-H).
    pub fn torsion_poly(&self) -> Result<LaurentPoly, CylinderError> {
        let (ab, _) = self.fox_blocks()?;
        let det = ab
            .bareiss_det()
            .map_err(|_| CylinderError::SingularMatrix)?;
        if det.is_zero() {
            return Err(CylinderError::SingularMatrix);
        }
        Ok(det)
    }

    /// tau(M) = det(A;B) in canonical +-H form.
    pub fn torsion(&self) -> Result<UnitClassForm, CylinderError> {
        Ok(self.torsion_poly()?.canonical())
    }

    /// r(M) = -C (A;B)^{-1} (I_n; 0), with sigma attached.
    pub fn magnus_matrix(&self) -> Result<MagnusMatrix, CylinderError> {
        let sigma = self.sigma()?;
        let (ab, c) = self.fox_blocks()?;
        let n = self.rank;
        let rank = n;
        let rhs = Mat::from_fn(n + self.extras, n, |i, j| {
            if i == j {
                LaurentPoly::one(rank)
            } else {
                LaurentPoly::zero(rank)
            }
        });
        let x = ab
            .to_rational()
            .solve(&rhs.to_rational())
            .map_err(|_| CylinderError::SingularMatrix)?;
        let mat = c.to_rational().rat_mul(&x).map(|e| e.neg());
        Ok(MagnusMatrix { mat, sigma })
    }

    /// Stacking: distinguished ip from self, im from other; self's im glued
    /// to other's ip; everything else demoted to extras.
    pub fn compose(&self, other: &Self) -> Result<Self, CylinderError> {
        if self.rank != other.rank {
            return Err(CylinderError::RankMismatch);
        }
        let n = self.rank;
        let l1 = self.extras;
        let l2 = other.extras;
        // extras layout: self.z | other.z | self.im | other.ip
        let self_im = |i: u32| Generator::z(l1 as u32 + l2 as u32 + i);
        let other_ip = |i: u32| Generator::z((l1 + l2 + n) as u32 + i);
        let mut relators: Vec<Word> = Vec::with_capacity(3 * n + l1 + l2);
        for r in &self.relators {
            relators.push(r.map_generators(|g| match g.kind {
                crate::words::GenKind::IMinus => self_im(g.index),
                _ => g,
            }));
        }
        for r in &other.relators {
            relators.push(r.map_generators(|g| match g.kind {
                crate::words::GenKind::IPlus => other_ip(g.index),
                crate::words::GenKind::Z => Generator::z(l1 as u32 + g.index),
                _ => g,
            }));
        }
        for j in 1..=n as u32 {
            relators.push(Word::generator(self_im(j)).multiply(&Word::generator(other_ip(j)).invert()));
        }
        Ok(AdmissiblePresentation::new(n, 2 * n + l1 + l2, relators))
    }
}

/// Square matrix over K_H together with the attached sigma; composes by the
/// twisted law r(M1 M2) = r(M1) * substitute(r(M2), sigma(M1)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusMatrix {
    pub mat: RatMatrix,
    pub sigma: IntMatrix,
}

impl MagnusMatrix {
    pub fn identity(n: usize) -> Self {
        MagnusMatrix {
            mat: RatMatrix::rat_identity(n, n),
            sigma: IntMatrix::identity(n),
        }
    }

    pub fn compose(&self, other: &MagnusMatrix) -> MagnusMatrix {
        MagnusMatrix {
            mat: self.mat.rat_mul(&other.mat.substitute(&self.sigma)),
            sigma: self.sigma.mul(&other.sigma),
        }
    }

    pub fn det(&self) -> Result<crate::laurent::RationalFunction, MatError> {
        self.mat.rat_det()
    }
}

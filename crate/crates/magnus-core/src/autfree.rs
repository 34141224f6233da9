//! 2-connected endomorphisms of the free group F_n: Magnus matrices through
//! Fox calculus, the f_m witness family, Nielsen generators, and the
//! reduction r_tilde into the abelian quotient.

use alloc::vec::Vec;
use core::fmt;

use crate::cylinder::MagnusMatrix;
use crate::foxcalc::{fox_matrix, RingMap};
use crate::laurent::Budget;
use crate::matrixkh::{IntMatrix, Mat};
use crate::quotients::{reduce, Level, QuotientClass, QuotientError};
use crate::words::{GenTable, Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndoError {
    /// an image uses a generator outside g1..gn
    ForeignGenerator(Generator),
    /// not 2-connected: the induced map on H_1 is not an isomorphism
    NonUnimodularAbelianization,
    /// the f_m family needs rank >= 2
    RankTooSmall,
}

impl fmt::Display for EndoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndoError::ForeignGenerator(g) => {
                write!(f, "image uses generator {} outside the context", g.name())
            }
            EndoError::NonUnimodularAbelianization => {
                write!(f, "abelianization matrix is not unimodular")
            }
            EndoError::RankTooSmall => write!(f, "rank must be at least 2"),
        }
    }
}

/// Endomorphism of F_n inducing an isomorphism on H_1 (2-connected; the H_2
/// condition is vacuous for free groups). Column j of the abelianization is
/// the exponent vector of the image of gamma_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeEndomorphism {
    rank: usize,
    images: Vec<Word>,
}

impl FreeEndomorphism {
    pub fn new(images: Vec<Word>) -> Result<Self, EndoError> {
        let n = images.len();
        let table = GenTable::free(n as u32);
        for w in &images {
            for &(g, _) in w.letters() {
                if !table.admits(g) {
                    return Err(EndoError::ForeignGenerator(g));
                }
            }
        }
        let phi = FreeEndomorphism { rank: n, images };
        if !phi.abelianization().is_unimodular() {
            return Err(EndoError::NonUnimodularAbelianization);
        }
        Ok(phi)
    }

    pub fn identity(n: usize) -> Self {
        FreeEndomorphism {
            rank: n,
            images: (1..=n)
                .map(|i| Word::generator(Generator::plain(i as u32)))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn abelianization(&self) -> IntMatrix {
        let table = GenTable::free(self.rank as u32);
        Mat::from_fn(self.rank, self.rank, |i, j| {
            self.images[j].abelianize(&table)[i] as i128
        })
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute_words(|g| self.images[g.index as usize - 1].clone())
    }

    /// phi o psi (first psi, then phi).
    pub fn compose(&self, psi: &FreeEndomorphism) -> FreeEndomorphism {
        assert_eq!(self.rank, psi.rank, "rank mismatch");
        FreeEndomorphism {
            rank: self.rank,
            images: psi.images.iter().map(|w| self.apply(w)).collect(),
        }
    }

    /// r(phi) = (bar of the abelianized Fox derivative of phi(gamma_j) by
    /// gamma_i)_{i,j}, with sigma = abelianization attached.
    pub fn magnus(&self) -> MagnusMatrix {
        let n = self.rank;
        let mut rm = RingMap::new(n);
        let mut vars = Vec::with_capacity(n);
        for i in 1..=n {
            let mut e = alloc::vec![0i64; n];
            e[i - 1] = 1;
            rm.assign(Generator::plain(i as u32), e);
            vars.push(Generator::plain(i as u32));
        }
        let mat = fox_matrix(&self.images, &vars, &rm)
            .expect("all plain generators assigned")
            .to_rational();
        MagnusMatrix {
            mat,
            sigma: self.abelianization(),
        }
    }

    /// The witness family: f_m(gamma_1) = (g1 g2^-1 g1^-1 g2^-1)^m g1 g2^{2m},
    /// all other generators fixed.
    pub fn f_m(n: usize, m: u32) -> Result<FreeEndomorphism, EndoError> {
        if n < 2 {
            return Err(EndoError::RankTooSmall);
        }
        let g1 = Word::generator(Generator::plain(1));
        let g2 = Word::generator(Generator::plain(2));
        let comm = g1
            .multiply(&g2.invert())
            .multiply(&g1.invert())
            .multiply(&g2.invert());
        let mut images = Vec::with_capacity(n);
        images.push(comm.pow(m as i64).multiply(&g1).multiply(&g2.pow(2 * m as i64)));
        for i in 2..=n {
            images.push(Word::generator(Generator::plain(i as u32)));
        }
        FreeEndomorphism::new(images)
    }

    /// Nielsen generators of Aut(F_n): swap g1<->g2, invert g1, cycle
    /// g1 -> g2 -> ... -> gn -> g1, and the transvection g1 -> g1 g2.
    pub fn nielsen_generators(n: usize) -> Vec<FreeEndomorphism> {
        assert!(n >= 2);
        let g = |i: usize| Word::generator(Generator::plain(i as u32));
        let mut out = Vec::with_capacity(4);
        // swap
        let mut images: Vec<Word> = (1..=n).map(g).collect();
        images.swap(0, 1);
        out.push(FreeEndomorphism { rank: n, images });
        // inversion
        let mut images: Vec<Word> = (1..=n).map(g).collect();
        images[0] = g(1).invert();
        out.push(FreeEndomorphism { rank: n, images });
        // cycle
        let images: Vec<Word> = (1..=n).map(|i| g(i % n + 1)).collect();
        out.push(FreeEndomorphism { rank: n, images });
        // transvection
        let mut images: Vec<Word> = (1..=n).map(g).collect();
        images[0] = g(1).multiply(&g(2));
        out.push(FreeEndomorphism { rank: n, images });
        out
    }
}

/// r_tilde(phi) = class of det r(phi) modulo +-H*A' (free mode: A' built
/// from all of Aut(H_1), so orbit certificates use unimodular invariance).
pub fn r_tilde(
    phi: &FreeEndomorphism,
    budget: &mut Budget,
) -> Result<QuotientClass, QuotientError> {
    let det = phi
        .magnus()
        .det()
        .expect("Magnus matrix of a 2-connected endomorphism is square");
    reduce(&det, Level::ModHA, budget)
}

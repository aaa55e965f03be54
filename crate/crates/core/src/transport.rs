//! Transport of the de Rham coproducts to the Betti side.
//!
//! Betti elements are represented in de Rham coordinates through the
//! reference chart `iso^{·,ι_0}` (`ι_0` the embedding with generator 1).
//! For a double shuffle point `p = (ι, λ, Ψ)` the comparison map, read in
//! this chart, is the single twisted automorphism
//! `A = ^Γaut^{·}_{(φ,λ,Ψ)}` where `φ` is the unique group automorphism
//! with `ι = ι_0 ∘ φ^{-1}`; the Betti coproduct is the conjugate
//! `A^{-1,⊗2} ∘ Δ^{·,DR} ∘ A`, and the theorem under test is that this
//! operator does not depend on the chosen point.

use std::collections::BTreeMap;

use crate::betti::{iso_m, iso_w, minus_one, BLetter, FreeWord, GAElem};
use crate::crossed::{MElem, TensorM, TensorW, WElem};
use crate::dmr::TorsorPoint;
use crate::error::{Error, Result};
use crate::harmonic::{harmonic_coproduct_alg, ModClassY, SeriesY, TensorSeriesY, YWord};
use crate::linalg::{invert, ExactMatrix};
use crate::magnus::TwistedAut;
use crate::scalar::qi;

/// De Rham representation of an element of the completed Betti algebra
/// `W^B`, through the reference chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiWRep(pub WElem);

/// De Rham representation of a class in the completed Betti module `M^B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiMRep(pub MElem);

/// `^Γcomp^{W,(1)}_{(ι,λ,Ψ)}(a) = ^Γaut^{W,(1)}_{(λ,Ψ)}(iso^{W,ι}(a))`.
pub fn comp_w1(p: &TorsorPoint, a: &GAElem, d: usize) -> Result<WElem> {
    let aut = TwistedAut::new(
        &crate::cyclic::GroupAut::identity(p.iota.order()),
        &p.lambda,
        &p.psi,
    )?;
    aut.apply_w(&iso_w(&p.iota, a, d)?)
}

/// `^Γcomp^{M,(10)}_{(ι,λ,Ψ)}(a) = ^Γaut^{M,(10)}_{(λ,Ψ)}(iso^{M,ι}(a))`.
pub fn comp_m10(p: &TorsorPoint, a: &GAElem, d: usize) -> Result<MElem> {
    let aut = TwistedAut::new(
        &crate::cyclic::GroupAut::identity(p.iota.order()),
        &p.lambda,
        &p.psi,
    )?;
    aut.apply_m(&iso_m(&p.iota, a, d))
}

/// The transported coproduct pair at a double shuffle point, with the
/// comparison automorphism and its inverse tabulated on the spanning sets
/// (z-monomials for `W`, Y-classes for `M`) of degree at most `D`.
pub struct BettiTransport {
    n: u32,
    d: usize,
    basis: Vec<YWord>,
    index: BTreeMap<YWord, usize>,
    w_images: Vec<SeriesY>,
    w_inv_images: Vec<SeriesY>,
    m_images: Vec<SeriesY>,
    m_inv_images: Vec<SeriesY>,
}

impl BettiTransport {
    /// Builds the transported coproducts at `p`. The point must pass
    /// `dmr_check`: away from the double shuffle locus the conjugated
    /// operator depends on the point and is not the Betti coproduct.
    pub fn new(p: &TorsorPoint) -> Result<BettiTransport> {
        let report = crate::dmr::dmr_check(&p.iota, &p.lambda, &p.psi)?;
        if !report.all_pass() {
            return Err(Error::Param(
                "transport needs a point passing dmr_check".to_string(),
            ));
        }
        let n = p.psi.group_order();
        let d = p.psi.degree_cap();
        let phi = p.iota.from_reference();
        let aut = TwistedAut::new(&phi, &p.lambda, &p.psi)?;

        let basis = SeriesY::basis_words(n, d);
        let index: BTreeMap<YWord, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();

        let mut w_images = Vec::with_capacity(basis.len());
        let mut m_images = Vec::with_capacity(basis.len());
        for yw in &basis {
            let unit = SeriesY::term(n, d, yw.clone(), qi(1));
            w_images.push(aut.apply_w_series(&unit)?);
            m_images.push(
                aut.apply_m(&MElem(ModClassY(unit)))?.class().clone(),
            );
        }

        let invert_table = |images: &[SeriesY]| -> Result<Vec<SeriesY>> {
            let k = basis.len();
            let mut mat = ExactMatrix::zeros(k, k);
            for (j, img) in images.iter().enumerate() {
                for (w, c) in img.terms() {
                    mat[(index[w], j)] = c.clone();
                }
            }
            let inv = invert(&mat).ok_or_else(|| {
                Error::Param("comparison map is singular on the window".to_string())
            })?;
            let mut out = Vec::with_capacity(k);
            for j in 0..k {
                let mut s = SeriesY::zero(n, d);
                for (i, w) in basis.iter().enumerate() {
                    s.add_term(w.clone(), inv[(i, j)].clone());
                }
                out.push(s);
            }
            Ok(out)
        };
        let w_inv_images = invert_table(&w_images)?;
        let m_inv_images = invert_table(&m_images)?;

        Ok(BettiTransport {
            n,
            d,
            basis,
            index,
            w_images,
            w_inv_images,
            m_images,
            m_inv_images,
        })
    }

    pub fn group_order(&self) -> u32 {
        self.n
    }

    pub fn degree_cap(&self) -> usize {
        self.d
    }

    fn apply_table(&self, table: &[SeriesY], a: &SeriesY) -> SeriesY {
        let mut out = SeriesY::zero(self.n, self.d);
        for (w, c) in a.terms() {
            let img = &table[self.index[w]];
            for (u, v) in img.terms() {
                out.add_term(u.clone(), c * v);
            }
        }
        out
    }

    fn conjugated_coproduct(
        &self,
        forward: &[SeriesY],
        backward: &[SeriesY],
        a: &SeriesY,
    ) -> TensorSeriesY {
        let image = self.apply_table(forward, a);
        let delta = harmonic_coproduct_alg(&image);
        let mut out = TensorSeriesY::zero(self.n, self.d);
        for ((w1, w2), c) in delta.terms() {
            let b1 = self.apply_table(backward, &SeriesY::term(self.n, self.d, w1.clone(), qi(1)));
            let b2 = self.apply_table(backward, &SeriesY::term(self.n, self.d, w2.clone(), qi(1)));
            for (u1, c1) in b1.terms() {
                for (u2, c2) in b2.terms() {
                    out.add_term(u1.clone(), u2.clone(), c * c1 * c2);
                }
            }
        }
        out
    }

    /// `Δ^{W,B}` on a Betti element in the reference chart.
    pub fn betti_coproduct_w(&self, w: &BettiWRep) -> TensorW {
        TensorW(self.conjugated_coproduct(
            &self.w_images,
            &self.w_inv_images,
            w.0.z_expansion(),
        ))
    }

    /// `Δ^{M,B}` on a Betti class in the reference chart.
    pub fn betti_coproduct_m(&self, m: &BettiMRep) -> TensorM {
        TensorM(self.conjugated_coproduct(
            &self.m_images,
            &self.m_inv_images,
            m.0.class(),
        ))
    }

    /// The full operator table of `Δ^{W,B}` on the spanning z-monomials.
    /// Tables from different double shuffle points must coincide exactly.
    pub fn w_operator_table(&self) -> BTreeMap<YWord, TensorSeriesY> {
        self.basis
            .iter()
            .map(|yw| {
                let unit = SeriesY::term(self.n, self.d, yw.clone(), qi(1));
                (
                    yw.clone(),
                    self.conjugated_coproduct(&self.w_images, &self.w_inv_images, &unit),
                )
            })
            .collect()
    }

    /// The full operator table of `Δ^{M,B}` on the spanning Y-classes.
    pub fn m_operator_table(&self) -> BTreeMap<YWord, TensorSeriesY> {
        self.basis
            .iter()
            .map(|yw| {
                let unit = SeriesY::term(self.n, self.d, yw.clone(), qi(1));
                (
                    yw.clone(),
                    self.conjugated_coproduct(&self.m_images, &self.m_inv_images, &unit),
                )
            })
            .collect()
    }
}

/// The group-algebra element `Y_n^+ = -(X_0 - 1)^{n-1} X_0 (X_1 - 1)` or
/// its minus variant `Y_n^- = -(X_0^{-1} - 1)^{n-1} X_0^{-1} (X_1^{-1} - 1)`.
pub fn y_pm_generator(m: usize, plus: bool) -> GAElem {
    assert!(m >= 1);
    let (x0, x1) = if plus {
        (BLetter::X0, BLetter::X1)
    } else {
        (BLetter::X0Inv, BLetter::X1Inv)
    };
    let head = minus_one(FreeWord::generator(x0)).pow(m - 1);
    head.mul(&GAElem::word(FreeWord::generator(x0)))
        .mul(&minus_one(FreeWord::generator(x1)))
        .scale(&qi(-1))
}

/// Reference verification at `N = 1`: the transported Betti coproduct on
/// `Y_n^±` equals
/// `Y_n^± ⊗ 1 + 1 ⊗ Y_n^± + Σ_{k+l=n} Y_k^± ⊗ Y_l^±`,
/// and `X_1^{±1}` is grouplike. All equalities exact, read through
/// `iso^{W,ι_0}`.
pub fn ef_reference_check(transport: &BettiTransport, p: &TorsorPoint, m: usize) -> Result<bool> {
    let n = transport.group_order();
    let d = transport.degree_cap();
    if n != 1 {
        return Err(Error::Param(
            "the reference formulas are stated at N = 1".to_string(),
        ));
    }
    if m + 1 > d {
        return Err(Error::OutOfWindow(format!(
            "need degree window above {m} to see the cross terms"
        )));
    }
    let iota = p.iota;

    for plus in [true, false] {
        // grouplikeness of X_1^{±1}
        let x1 = GAElem::word(FreeWord::generator(if plus {
            BLetter::X1
        } else {
            BLetter::X1Inv
        }));
        let x1_rep = iso_w(&iota, &x1, d)?;
        let lhs = transport.betti_coproduct_w(&BettiWRep(x1_rep.clone()));
        let rhs = TensorSeriesY::pure(x1_rep.z_expansion(), x1_rep.z_expansion());
        if lhs.0 != rhs {
            return Ok(false);
        }

        // the coproduct of Y_m^±
        let y_m = iso_w(&iota, &y_pm_generator(m, plus), d)?;
        let lhs = transport.betti_coproduct_w(&BettiWRep(y_m.clone()));
        let one = SeriesY::one(n, d);
        let mut rhs = TensorSeriesY::pure(y_m.z_expansion(), &one);
        rhs = rhs.add(&TensorSeriesY::pure(&one, y_m.z_expansion()));
        for k in 1..m {
            let yk = iso_w(&iota, &y_pm_generator(k, plus), d)?;
            let yl = iso_w(&iota, &y_pm_generator(m - k, plus), d)?;
            rhs = rhs.add(&TensorSeriesY::pure(yk.z_expansion(), yl.z_expansion()));
        }
        if lhs.0 != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

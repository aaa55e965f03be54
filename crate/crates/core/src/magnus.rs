//! The twisted Magnus group `(G(k⟨⟨X⟩⟩), ⊛)`, its semidirect extensions by
//! `Aut(G) × K^×`, the Γ-twisted automorphisms of the crossed-product
//! algebra-module, and the stabilizer membership checks for the de Rham
//! coproducts.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::crossed::{
    beta, gen_e0, gen_e1, gen_g, reduce_to_m, w_decompose, z_expansion_to_crossed,
    CrossedElem, MElem, WElem,
};
use crate::cyclic::{CyclicElem, GroupAut};
use crate::error::{Error, Result};
use crate::harmonic::{
    gamma_series, harmonic_coproduct_alg, SeriesY, TensorSeriesY, UniSeries, YWord,
};
use crate::scalar::{qi, Q};
use crate::series::{Letter, SeriesX, Word};

/// Substitutes a crossed element with zero degree-zero part into a
/// one-variable series.
pub fn substitute_uni(series: &UniSeries, x: &CrossedElem) -> CrossedElem {
    let mut acc = CrossedElem::zero(x.group_order(), x.degree_cap());
    let mut power = CrossedElem::one(x.group_order(), x.degree_cap());
    let mut last = 0usize;
    for (k, c) in series.terms() {
        for _ in last..*k {
            power = power.mul(x).expect("same window");
        }
        last = *k;
        acc = acc.add(&power.scale(c));
    }
    acc
}

/// The automorphism `aut_Ψ`: `x_0 ↦ x_0`, `x_g ↦ Ad_{t_g(Ψ^{-1})}(x_g)`.
/// Requires `Ψ` grouplike.
pub fn aut_psi(psi: &SeriesX, a: &SeriesX) -> Result<SeriesX> {
    psi.same_window(a)?;
    if !psi.is_grouplike() {
        return Err(Error::Param("aut_psi needs a grouplike series".to_string()));
    }
    let n = psi.group_order();
    let d = psi.degree_cap();
    let psi_inv = psi.inverse()?;
    let mut images: BTreeMap<Letter, SeriesX> = BTreeMap::new();
    images.insert(Letter::X0, SeriesX::letter(n, d, Letter::X0));
    for gv in 0..n {
        let g = CyclicElem::new(n, gv as i64);
        let tg_inv = psi_inv.act_tg(&g);
        let tg = psi.act_tg(&g);
        let img = tg_inv
            .mul(&SeriesX::letter(n, d, Letter::Xg(g)))?
            .mul(&tg)?;
        images.insert(Letter::Xg(g), img);
    }
    apply_letterwise(a, &images)
}

fn apply_letterwise(a: &SeriesX, images: &BTreeMap<Letter, SeriesX>) -> Result<SeriesX> {
    let n = a.group_order();
    let d = a.degree_cap();
    let mut memo: BTreeMap<Word, SeriesX> = BTreeMap::new();
    memo.insert(Word::empty(), SeriesX::one(n, d));
    let mut out = SeriesX::zero(n, d);
    for (w, c) in a.terms() {
        let img = word_image(w, images, &mut memo)?;
        out = out.add(&img.scale(c));
    }
    Ok(out)
}

fn word_image(
    w: &Word,
    images: &BTreeMap<Letter, SeriesX>,
    memo: &mut BTreeMap<Word, SeriesX>,
) -> Result<SeriesX> {
    if let Some(img) = memo.get(w) {
        return Ok(img.clone());
    }
    let mut prefix = w.0.clone();
    let last = prefix.pop().expect("empty word is memoized");
    let head = word_image(&Word(prefix), images, memo)?;
    let img = head.mul(images.get(&last).expect("letter image"))?;
    memo.insert(w.clone(), img.clone());
    Ok(img)
}

/// The twisted Magnus product `Ψ ⊛ Φ = Ψ · aut_Ψ(Φ)`. Both inputs must be
/// grouplike; the result is grouplike and this is checked.
pub fn circledast(psi: &SeriesX, phi: &SeriesX) -> Result<SeriesX> {
    psi.same_window(phi)?;
    if !phi.is_grouplike() {
        return Err(Error::Param(
            "circledast needs grouplike arguments".to_string(),
        ));
    }
    let out = psi.mul(&aut_psi(psi, phi)?)?;
    debug_assert!(out.is_grouplike());
    Ok(out)
}

/// Inverse for `⊛`: the unique `Φ` with `Ψ ⊛ Φ = 1`. Since `aut_Ψ` is
/// unitriangular by degree, `Φ` is found by iterating
/// `Φ ← Ψ^{-1} - (aut_Ψ - id)(Φ)`, which stabilizes within `D` steps.
pub fn circledast_inverse(psi: &SeriesX) -> Result<SeriesX> {
    let n = psi.group_order();
    let d = psi.degree_cap();
    let target = psi.inverse()?;
    let mut phi = target.clone();
    for _ in 0..=d {
        let image = aut_psi(psi, &phi)?;
        let defect = image.sub(&phi);
        phi = target.sub(&defect);
    }
    debug_assert_eq!(circledast(psi, &phi)?, SeriesX::one(n, d));
    Ok(phi)
}

/// Element `(φ, λ, Ψ)` of `(Aut(G) × K^×) ⋉ G(k⟨⟨X⟩⟩)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectElem {
    pub phi: GroupAut,
    pub lambda: Q,
    pub psi: SeriesX,
}

impl SemidirectElem {
    pub fn new(phi: GroupAut, lambda: Q, psi: SeriesX) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::Param("lambda must be nonzero".to_string()));
        }
        if phi.order() != psi.group_order() {
            return Err(Error::Param("group order mismatch".to_string()));
        }
        if !psi.is_grouplike() {
            return Err(Error::Param("psi must be grouplike".to_string()));
        }
        Ok(SemidirectElem { phi, lambda, psi })
    }

    pub fn identity(n: u32, d: usize) -> Self {
        SemidirectElem {
            phi: GroupAut::identity(n),
            lambda: qi(1),
            psi: SeriesX::one(n, d),
        }
    }
}

/// Semidirect law
/// `(φ, λ, Ψ) ⊛ (φ', ν, Φ) = (φ ∘ φ', λν, Ψ ⊛ η_φ(λ • Φ))`.
pub fn semidirect_mul(a: &SemidirectElem, b: &SemidirectElem) -> Result<SemidirectElem> {
    a.psi.same_window(&b.psi)?;
    let twisted = b.psi.act_scale(&a.lambda)?.act_groupaut(&a.phi);
    Ok(SemidirectElem {
        phi: a.phi.compose(&b.phi),
        lambda: &a.lambda * &b.lambda,
        psi: circledast(&a.psi, &twisted)?,
    })
}

/// The Γ-twisted automorphism family attached to `(φ, λ, Ψ)`:
/// the algebra automorphism `^Γaut^{V,(1)}` given on generators by
/// `e_0, g ↦ Ad_u`, `e_1 ↦ Ad_{Γ_Ψ^{-1}(-e_1)}(e_1)` with
/// `u = Γ_Ψ^{-1}(-e_1) β(Ψ ⊗ 1)`, precomposed with `λ •_V` and `η^V_φ`;
/// and the module companion `^Γaut^{V,(10)} = r_u ∘ ^Γaut^{V,(1)}`.
///
/// Images of all basis words are cached at construction, so applying the
/// maps is a linear pass over the input terms.
pub struct TwistedAut {
    n: u32,
    d: usize,
    phi: GroupAut,
    lambda: Q,
    u: CrossedElem,
    group_images: Vec<CrossedElem>,
    word_images: BTreeMap<Word, CrossedElem>,
}

impl TwistedAut {
    pub fn new(phi: &GroupAut, lambda: &Q, psi: &SeriesX) -> Result<TwistedAut> {
        if lambda.is_zero() {
            return Err(Error::Param("lambda must be nonzero".to_string()));
        }
        if !psi.is_grouplike() {
            return Err(Error::Param("psi must be grouplike".to_string()));
        }
        let n = psi.group_order();
        let d = psi.degree_cap();
        if phi.order() != n {
            return Err(Error::Param("group order mismatch".to_string()));
        }
        let e1 = gen_e1(n, d);
        let gamma = gamma_series(psi);
        let gamma_at = substitute_uni(&gamma, &e1.neg());
        let gamma_inv_at = gamma_at.inverse()?;
        let u = gamma_inv_at.mul(&beta(psi))?;
        let u_inv = u.inverse()?;

        // generator images of ^Γaut^{V,(1)}_Ψ
        let img_e0 = u.mul(&gen_e0(n, d))?.mul(&u_inv)?;
        let img_e1 = gamma_inv_at.mul(&e1)?.mul(&gamma_at)?;
        let mut group_images = Vec::new();
        for gv in 0..n {
            let g = gen_g(n, d, CyclicElem::new(n, gv as i64));
            group_images.push(u.mul(&g)?.mul(&u_inv)?);
        }

        // letter images: x_0 ↦ img(e_0), x_g ↦ -Ad_{img(g)}(img(e_1))
        let mut letter_images: BTreeMap<Letter, CrossedElem> = BTreeMap::new();
        letter_images.insert(Letter::X0, img_e0);
        for gv in 0..n {
            let g = CyclicElem::new(n, gv as i64);
            let img_g = &group_images[gv as usize];
            let img_g_inv = &group_images[g.neg().residue() as usize];
            let img = img_g.mul(&img_e1)?.mul(img_g_inv)?.neg();
            letter_images.insert(Letter::Xg(g), img);
        }

        // images of all basis words, built incrementally over prefixes
        let mut word_images: BTreeMap<Word, CrossedElem> = BTreeMap::new();
        word_images.insert(Word::empty(), CrossedElem::one(n, d));
        for w in SeriesX::basis_words(n, d) {
            if w.is_empty() {
                continue;
            }
            let mut prefix = w.0.clone();
            let last = prefix.pop().expect("nonempty");
            let head = word_images
                .get(&Word(prefix))
                .expect("basis words are prefix-closed and sorted by length")
                .clone();
            let img = head.mul(letter_images.get(&last).expect("letter"))?;
            word_images.insert(w, img);
        }

        Ok(TwistedAut {
            n,
            d,
            phi: *phi,
            lambda: lambda.clone(),
            u,
            group_images,
            word_images,
        })
    }

    /// Without the `Aut(G)` and `K^×` twists.
    pub fn plain(psi: &SeriesX) -> Result<TwistedAut> {
        TwistedAut::new(&GroupAut::identity(psi.group_order()), &qi(1), psi)
    }

    pub fn group_order(&self) -> u32 {
        self.n
    }

    pub fn degree_cap(&self) -> usize {
        self.d
    }

    /// The right-multiplier `u = Γ_Ψ^{-1}(-e_1) β(Ψ ⊗ 1)`.
    pub fn multiplier(&self) -> &CrossedElem {
        &self.u
    }

    /// `^Γaut^{V,(1)}_{(φ,λ,Ψ)}(a)`.
    pub fn apply_v1(&self, a: &CrossedElem) -> Result<CrossedElem> {
        if a.group_order() != self.n || a.degree_cap() != self.d {
            return Err(Error::Param("window mismatch".to_string()));
        }
        let mut out = CrossedElem::zero(self.n, self.d);
        for ((w, g), c) in a.terms() {
            // η^V_φ, then λ •_V, then the Γ-twisted automorphism
            let relabeled = Word(
                w.0.iter()
                    .map(|l| match l {
                        Letter::X0 => Letter::X0,
                        Letter::Xg(h) => Letter::Xg(self.phi.apply(h)),
                    })
                    .collect(),
            );
            let mut f = c.clone();
            for _ in 0..w.len() {
                f *= &self.lambda;
            }
            let img_w = self
                .word_images
                .get(&relabeled)
                .expect("word within window");
            let img_g = &self.group_images[self.phi.apply(g).residue() as usize];
            out = out.add(&img_w.mul(img_g)?.scale(&f));
        }
        Ok(out)
    }

    /// `^Γaut^{V,(10)}_{(φ,λ,Ψ)}(a) = ^Γaut^{V,(1)}_{(φ,λ,Ψ)}(a) · u`; its
    /// value on `1` is `u`.
    pub fn apply_v10(&self, a: &CrossedElem) -> Result<CrossedElem> {
        self.apply_v1(a)?.mul(&self.u)
    }

    /// Restriction to `W`. Failure of the membership check after mapping
    /// indicates an implementation bug and is surfaced loudly.
    pub fn apply_w(&self, w: &WElem) -> Result<WElem> {
        w_decompose(&self.apply_v1(w.as_crossed())?)
    }

    /// The same restriction in z-word coordinates.
    pub fn apply_w_series(&self, z: &SeriesY) -> Result<SeriesY> {
        let crossed = z_expansion_to_crossed(z);
        Ok(self.apply_w(&w_decompose(&crossed)?)?.z_expansion().clone())
    }

    /// Descent `^Γaut^{M,(10)}_{(φ,λ,Ψ)}` to the quotient module.
    pub fn apply_m(&self, m: &MElem) -> Result<MElem> {
        let lift = z_expansion_to_crossed(m.class());
        Ok(reduce_to_m(&self.apply_v10(&lift)?))
    }
}

/// `Ψ^⋆ = (Γ_Ψ^{-1}(-e_1) β(Ψ ⊗ 1)) · 1_DR`, the de Rham form of `Ψ⋆`.
pub fn psi_star_dr(psi: &SeriesX) -> Result<MElem> {
    let n = psi.group_order();
    let d = psi.degree_cap();
    let gamma_inv = gamma_series(psi).inverse()?;
    let corrected = substitute_uni(&gamma_inv, &gen_e1(n, d).neg()).mul(&beta(psi))?;
    Ok(reduce_to_m(&corrected))
}

/// True iff `(A^{⊗2}) ∘ Δ^{W,DR} = Δ^{W,DR} ∘ A` on the z-monomial spanning
/// set of degree at most `D`, with `A = ^Γaut^{W,(1)}_{(φ,λ,Ψ)}`.
pub fn stab_check_w(e: &SemidirectElem) -> Result<bool> {
    let aut = TwistedAut::new(&e.phi, &e.lambda, &e.psi)?;
    let n = aut.group_order();
    let d = aut.degree_cap();
    let mut images: BTreeMap<YWord, SeriesY> = BTreeMap::new();
    for yw in SeriesY::basis_words(n, d) {
        let img = aut.apply_w_series(&SeriesY::term(n, d, yw.clone(), qi(1)))?;
        images.insert(yw, img);
    }
    for (yw, img) in &images {
        let lhs = harmonic_coproduct_alg(img);
        let delta = harmonic_coproduct_alg(&SeriesY::term(n, d, yw.clone(), qi(1)));
        let rhs = apply_tensor_cached(&delta, &images, n, d);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `(A^{⊗2}) ∘ Δ^{M,DR} = Δ^{M,DR} ∘ A` on the Y-class spanning
/// set of degree at most `D`, with `A = ^Γaut^{M,(10)}_{(φ,λ,Ψ)}`.
pub fn stab_check_m(e: &SemidirectElem) -> Result<bool> {
    let aut = TwistedAut::new(&e.phi, &e.lambda, &e.psi)?;
    let n = aut.group_order();
    let d = aut.degree_cap();
    let mut images: BTreeMap<YWord, SeriesY> = BTreeMap::new();
    for yw in SeriesY::basis_words(n, d) {
        let img = aut.apply_m(&MElem(crate::harmonic::ModClassY(SeriesY::term(
            n,
            d,
            yw.clone(),
            qi(1),
        ))))?;
        images.insert(yw, img.class().clone());
    }
    for (yw, img) in &images {
        // Δ^{M,DR} in normal-form coordinates is the harmonic coproduct
        let lhs = harmonic_coproduct_alg(img);
        let delta = harmonic_coproduct_alg(&SeriesY::term(n, d, yw.clone(), qi(1)));
        let rhs = apply_tensor_cached(&delta, &images, n, d);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Applies a cached linear map legwise to a tensor.
pub fn apply_tensor_cached(
    t: &TensorSeriesY,
    images: &BTreeMap<YWord, SeriesY>,
    n: u32,
    d: usize,
) -> TensorSeriesY {
    let mut out = TensorSeriesY::zero(n, d);
    for ((w1, w2), c) in t.terms() {
        let a = images.get(w1).expect("spanning word");
        let b = images.get(w2).expect("spanning word");
        for (u1, c1) in a.terms() {
            for (u2, c2) in b.terms() {
                out.add_term(u1.clone(), u2.clone(), c * c1 * c2);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::gen_z;
    use crate::harmonic::{psi_star, ModClassY};
    use crate::scalar::qr;

    fn x0(n: u32, d: usize) -> SeriesX {
        SeriesX::letter(n, d, Letter::X0)
    }

    fn x1(n: u32, d: usize) -> SeriesX {
        SeriesX::letter(n, d, Letter::x1(n))
    }

    /// A deterministic grouplike series: exp of a rational combination of
    /// letters and a bracket.
    fn sample_grouplike(n: u32, d: usize, seed: i64) -> SeriesX {
        let a = x0(n, d);
        let b = SeriesX::letter(n, d, Letter::Xg(CyclicElem::new(n, seed)));
        let bracket = a.mul(&b).unwrap().sub(&b.mul(&a).unwrap());
        a.scale(&qr(seed, 3))
            .add(&b.scale(&qr(1, 2)))
            .add(&bracket.scale(&qr(seed + 1, 5)))
            .exp_series()
            .unwrap()
    }

    #[test]
    fn aut_of_one_is_identity() {
        let n = 2;
        let d = 4;
        let one = SeriesX::one(n, d);
        let a = sample_grouplike(n, d, 1);
        assert_eq!(aut_psi(&one, &a).unwrap(), a);
    }

    #[test]
    fn aut_fixes_x0() {
        let psi = sample_grouplike(2, 4, 1);
        assert_eq!(aut_psi(&psi, &x0(2, 4)).unwrap(), x0(2, 4));
    }

    #[test]
    fn aut_exp_x0_conjugates_group_letters() {
        let n = 1;
        let d = 3;
        let psi = x0(n, d).exp_series().unwrap();
        let expected = x0(n, d)
            .neg()
            .exp_series()
            .unwrap()
            .mul(&x1(n, d))
            .unwrap()
            .mul(&x0(n, d).exp_series().unwrap())
            .unwrap();
        assert_eq!(aut_psi(&psi, &x1(n, d)).unwrap(), expected);
    }

    #[test]
    fn aut_rejects_non_grouplike() {
        let bad = SeriesX::one(1, 3).add(&x0(1, 3));
        assert!(aut_psi(&bad, &x0(1, 3)).is_err());
    }

    #[test]
    fn circledast_unit_laws() {
        let n = 2;
        let d = 4;
        let one = SeriesX::one(n, d);
        let psi = sample_grouplike(n, d, 1);
        assert_eq!(circledast(&one, &psi).unwrap(), psi);
        assert_eq!(circledast(&psi, &one).unwrap(), psi);
    }

    #[test]
    fn circledast_associativity() {
        let n = 2;
        let d = 4;
        let a = sample_grouplike(n, d, 0);
        let b = sample_grouplike(n, d, 1);
        let c = sample_grouplike(n, d, 2);
        let lhs = circledast(&circledast(&a, &b).unwrap(), &c).unwrap();
        let rhs = circledast(&a, &circledast(&b, &c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn circledast_inverse_works() {
        let psi = sample_grouplike(2, 4, 1);
        let inv = circledast_inverse(&psi).unwrap();
        assert_eq!(circledast(&psi, &inv).unwrap(), SeriesX::one(2, 4));
        assert_eq!(circledast(&inv, &psi).unwrap(), SeriesX::one(2, 4));
    }

    #[test]
    fn aut_respects_circledast() {
        // aut_{Ψ⊛Φ} = aut_Ψ ∘ aut_Φ on generators (inferred from the group law)
        let n = 2;
        let d = 4;
        let psi = sample_grouplike(n, d, 0);
        let phi = sample_grouplike(n, d, 1);
        let prod = circledast(&psi, &phi).unwrap();
        for l in [Letter::X0, Letter::x1(n), Letter::Xg(CyclicElem::new(n, 1))] {
            let x = SeriesX::letter(n, d, l);
            let lhs = aut_psi(&prod, &x).unwrap();
            let rhs = aut_psi(&psi, &aut_psi(&phi, &x).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "failed on {l:?}");
        }
    }

    #[test]
    fn lambda_and_eta_intertwine_aut() {
        let n = 3;
        let d = 3;
        let lam = qr(2, 3);
        let phi_aut = GroupAut::new(n, 2).unwrap();
        let psi = sample_grouplike(n, d, 1);
        for l in [Letter::X0, Letter::Xg(CyclicElem::new(n, 2))] {
            let x = SeriesX::letter(n, d, l);
            // (λ•) ∘ aut_Ψ = aut_{λ•Ψ} ∘ (λ•)
            let lhs = aut_psi(&psi, &x).unwrap().act_scale(&lam).unwrap();
            let rhs = aut_psi(&psi.act_scale(&lam).unwrap(), &x.act_scale(&lam).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            // η_φ ∘ aut_Ψ = aut_{η_φ(Ψ)} ∘ η_φ
            let lhs = aut_psi(&psi, &x).unwrap().act_groupaut(&phi_aut);
            let rhs = aut_psi(&psi.act_groupaut(&phi_aut), &x.act_groupaut(&phi_aut))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn semidirect_identity_and_lambda_slot() {
        let n = 2;
        let d = 3;
        let id = SemidirectElem::identity(n, d);
        let b = SemidirectElem::new(GroupAut::identity(n), qi(2), sample_grouplike(n, d, 1))
            .unwrap();
        assert_eq!(semidirect_mul(&id, &b).unwrap(), b);
        let c = semidirect_mul(&b, &b).unwrap();
        assert_eq!(c.lambda, qi(4));
    }

    #[test]
    fn semidirect_associativity() {
        let n = 3;
        let d = 3;
        let a = SemidirectElem::new(
            GroupAut::new(n, 2).unwrap(),
            qr(1, 2),
            sample_grouplike(n, d, 0),
        )
        .unwrap();
        let b = SemidirectElem::new(
            GroupAut::new(n, 2).unwrap(),
            qi(3),
            sample_grouplike(n, d, 1),
        )
        .unwrap();
        let c = SemidirectElem::new(
            GroupAut::identity(n),
            qi(-1),
            sample_grouplike(n, d, 2),
        )
        .unwrap();
        let lhs = semidirect_mul(&semidirect_mul(&a, &b).unwrap(), &c).unwrap();
        let rhs = semidirect_mul(&a, &semidirect_mul(&b, &c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_aut_identity_element() {
        let n = 2;
        let d = 3;
        let aut = TwistedAut::plain(&SeriesX::one(n, d)).unwrap();
        let g = CyclicElem::new(n, 1);
        for elem in [gen_e0(n, d), gen_e1(n, d), gen_g(n, d, g)] {
            assert_eq!(aut.apply_v1(&elem).unwrap(), elem);
            assert_eq!(aut.apply_v10(&elem).unwrap(), elem);
        }
    }

    #[test]
    fn twisted_aut_exp_x0_fixes_e0() {
        let n = 1;
        let d = 3;
        let psi = x0(n, d).exp_series().unwrap();
        let aut = TwistedAut::plain(&psi).unwrap();
        assert_eq!(aut.apply_v1(&gen_e0(n, d)).unwrap(), gen_e0(n, d));
    }

    #[test]
    fn v10_value_on_one_is_the_multiplier() {
        let n = 2;
        let d = 4;
        let psi = sample_grouplike(n, d, 1);
        let aut = TwistedAut::plain(&psi).unwrap();
        assert_eq!(
            aut.apply_v10(&CrossedElem::one(n, d)).unwrap(),
            aut.multiplier().clone()
        );
    }

    #[test]
    fn gamma_aut_lambda_bullet_lemma() {
        // ^Γaut^{V,(1)}_{λ•Ψ} ∘ (λ•_V) = (λ•_V) ∘ ^Γaut^{V,(1)}_Ψ on generators
        let n = 2;
        let d = 4;
        let lam = qr(3, 2);
        let psi = sample_grouplike(n, d, 1);
        let plain = TwistedAut::plain(&psi).unwrap();
        let scaled = TwistedAut::plain(&psi.act_scale(&lam).unwrap()).unwrap();
        let g = CyclicElem::new(n, 1);
        for elem in [gen_e0(n, d), gen_e1(n, d), gen_g(n, d, g)] {
            let lhs = scaled.apply_v1(&elem.act_scale_v(&lam).unwrap()).unwrap();
            let rhs = plain.apply_v1(&elem).unwrap().act_scale_v(&lam).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn v10_descends_to_classes() {
        // reduce(V10(a)) depends only on the class of a
        let n = 2;
        let d = 3;
        let psi = sample_grouplike(n, d, 1);
        let aut = TwistedAut::plain(&psi).unwrap();
        let g = CyclicElem::new(n, 1);
        let a = gen_z(n, d, 1, g);
        let v = gen_z(n, d, 1, CyclicElem::zero(n));
        let noise = v
            .mul(&gen_e0(n, d))
            .unwrap()
            .add(&v.mul(&gen_g(n, d, g).sub(&CrossedElem::one(n, d))).unwrap());
        let b = a.add(&noise);
        assert_eq!(reduce_to_m(&a), reduce_to_m(&b));
        let lhs = reduce_to_m(&aut.apply_v10(&a).unwrap());
        let rhs = reduce_to_m(&aut.apply_v10(&b).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn m10_on_unit_class_is_psi_star() {
        // ^Γaut^{M,(10)}_{(λ,Ψ)}(1_DR) = Ψ^⋆; the λ twist acts trivially on 1
        let n = 2;
        let d = 4;
        let psi = sample_grouplike(n, d, 1);
        let lam = qr(5, 3);
        let aut = TwistedAut::new(&GroupAut::identity(n), &lam, &psi).unwrap();
        let image = aut.apply_m(&MElem::one(n, d)).unwrap();
        assert_eq!(image, psi_star_dr(&psi).unwrap());
    }

    #[test]
    fn psi_star_dr_matches_kappa_of_psi_star() {
        for seed in 0..3 {
            let psi = sample_grouplike(2, 4, seed);
            let via_x = psi_star(&psi).unwrap();
            let via_dr = psi_star_dr(&psi).unwrap();
            assert_eq!(via_dr.0, via_x);
        }
    }

    #[test]
    fn w_restriction_commutes_with_inclusion() {
        let n = 2;
        let d = 4;
        let psi = sample_grouplike(n, d, 1);
        let aut = TwistedAut::plain(&psi).unwrap();
        let g = CyclicElem::new(n, 1);
        let w = w_decompose(&gen_z(n, d, 2, g)).unwrap();
        let via_v = aut.apply_v1(w.as_crossed()).unwrap();
        let via_w = aut.apply_w(&w).unwrap();
        assert_eq!(via_v, *via_w.as_crossed());
    }

    #[test]
    fn v10_matches_m10_through_reduction() {
        let n = 2;
        let d = 3;
        let psi = sample_grouplike(n, d, 1);
        let aut = TwistedAut::plain(&psi).unwrap();
        for yw in SeriesY::basis_words(n, d) {
            let lift = z_expansion_to_crossed(&SeriesY::term(n, d, yw.clone(), qi(1)));
            let lhs = reduce_to_m(&aut.apply_v10(&lift).unwrap());
            let rhs = aut
                .apply_m(&MElem(ModClassY(SeriesY::term(n, d, yw, qi(1)))))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn composition_law_on_w() {
        // ^Γaut^{W,(1)}_{(λ,Ψ)} ∘ ^Γaut^{W,(1)}_{(ν,Φ)} = ^Γaut^{W,(1)}_{(λ,Ψ)⊛(ν,Φ)}
        let n = 1;
        let d = 4;
        let psi = sample_grouplike(n, d, 0);
        let phi = sample_grouplike(n, d, 1);
        let a = SemidirectElem::new(GroupAut::identity(n), qi(2), psi).unwrap();
        let b = SemidirectElem::new(GroupAut::identity(n), qr(1, 3), phi).unwrap();
        let prod = semidirect_mul(&a, &b).unwrap();
        let aut_a = TwistedAut::new(&a.phi, &a.lambda, &a.psi).unwrap();
        let aut_b = TwistedAut::new(&b.phi, &b.lambda, &b.psi).unwrap();
        let aut_ab = TwistedAut::new(&prod.phi, &prod.lambda, &prod.psi).unwrap();
        for yw in SeriesY::basis_words(n, d) {
            let z = SeriesY::term(n, d, yw, qi(1));
            let lhs = aut_a
                .apply_w_series(&aut_b.apply_w_series(&z).unwrap())
                .unwrap();
            let rhs = aut_ab.apply_w_series(&z).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn composition_law_with_group_twists() {
        // the full semidirect action: ^Γaut_{(φ,λ,Ψ)} ∘ ^Γaut_{(φ',ν,Φ)} =
        // ^Γaut_{(φ,λ,Ψ)⊛(φ',ν,Φ)} on W and on M
        let n = 3;
        let d = 3;
        let a = SemidirectElem::new(
            GroupAut::new(n, 2).unwrap(),
            qi(2),
            sample_grouplike(n, d, 1),
        )
        .unwrap();
        let b = SemidirectElem::new(
            GroupAut::new(n, 2).unwrap(),
            qr(1, 2),
            sample_grouplike(n, d, 2),
        )
        .unwrap();
        let prod = semidirect_mul(&a, &b).unwrap();
        let aut_a = TwistedAut::new(&a.phi, &a.lambda, &a.psi).unwrap();
        let aut_b = TwistedAut::new(&b.phi, &b.lambda, &b.psi).unwrap();
        let aut_ab = TwistedAut::new(&prod.phi, &prod.lambda, &prod.psi).unwrap();
        for yw in SeriesY::basis_words(n, d) {
            let z = SeriesY::term(n, d, yw.clone(), qi(1));
            let lhs = aut_a
                .apply_w_series(&aut_b.apply_w_series(&z).unwrap())
                .unwrap();
            let rhs = aut_ab.apply_w_series(&z).unwrap();
            assert_eq!(lhs, rhs, "W failed on {yw:?}");
            let m = MElem(ModClassY(z));
            let lhs = aut_a.apply_m(&aut_b.apply_m(&m).unwrap()).unwrap();
            let rhs = aut_ab.apply_m(&m).unwrap();
            assert_eq!(lhs, rhs, "M failed on {yw:?}");
        }
    }

    #[test]
    fn eta_conjugation_identity() {
        // ^Γaut^{W,(1)}_{(λ,η_φ(Ψ))} = η^W_φ ∘ ^Γaut^{W,(1)}_{(λ,Ψ)} ∘ (η^W_φ)^{-1}
        let n = 3;
        let d = 3;
        let lam = qi(2);
        let phi = GroupAut::new(n, 2).unwrap();
        let psi = sample_grouplike(n, d, 1);
        let twisted = TwistedAut::new(&GroupAut::identity(n), &lam, &psi.act_groupaut(&phi))
            .unwrap();
        let plain = TwistedAut::new(&GroupAut::identity(n), &lam, &psi).unwrap();
        for yw in SeriesY::basis_words(n, d) {
            let z = w_decompose(&z_expansion_to_crossed(&SeriesY::term(
                n,
                d,
                yw.clone(),
                qi(1),
            )))
            .unwrap();
            let lhs = twisted.apply_w(&z).unwrap();
            let back = crate::crossed::act_groupaut_w(&z, &phi.inverse());
            let rhs = crate::crossed::act_groupaut_w(&plain.apply_w(&back).unwrap(), &phi);
            assert_eq!(lhs.as_crossed(), rhs.as_crossed(), "failed on {yw:?}");
        }
    }

    #[test]
    fn stab_checks_on_scalings_and_relabelings() {
        let n = 3;
        let d = 3;
        // (id, λ, 1) stabilizes both coproducts
        let scaling =
            SemidirectElem::new(GroupAut::identity(n), qr(7, 2), SeriesX::one(n, d)).unwrap();
        assert!(stab_check_w(&scaling).unwrap());
        assert!(stab_check_m(&scaling).unwrap());
        // (φ, 1, 1) stabilizes both coproducts
        let relabeling =
            SemidirectElem::new(GroupAut::new(n, 2).unwrap(), qi(1), SeriesX::one(n, d))
                .unwrap();
        assert!(stab_check_w(&relabeling).unwrap());
        assert!(stab_check_m(&relabeling).unwrap());
    }

    #[test]
    fn stab_m_membership_implies_stab_w() {
        // checked over a mixed list: members and non-members of Stab(Δ^M)
        let n = 2;
        let d = 3;
        let mut elems = vec![
            SemidirectElem::identity(n, d),
            SemidirectElem::new(GroupAut::identity(n), qr(3, 4), SeriesX::one(n, d)).unwrap(),
            SemidirectElem::new(GroupAut::new(n, 1).unwrap(), qi(2), SeriesX::one(n, d))
                .unwrap(),
        ];
        for seed in 0..2 {
            elems.push(
                SemidirectElem::new(GroupAut::identity(n), qi(1), sample_grouplike(n, d, seed))
                    .unwrap(),
            );
        }
        let mut in_stab = 0;
        for e in &elems {
            if stab_check_m(e).unwrap() {
                in_stab += 1;
                assert!(stab_check_w(e).unwrap(), "inclusion violated");
            }
        }
        assert!(in_stab >= 3, "the list should contain stabilizer members");
    }

    #[test]
    fn generic_grouplike_fails_stab_m() {
        // a degree-2 grouplike element outside DMR_0 violates the stabilizer
        let n = 1;
        let d = 4;
        let bracket = x0(n, d)
            .mul(&x1(n, d))
            .unwrap()
            .sub(&x1(n, d).mul(&x0(n, d)).unwrap());
        let psi = bracket.exp_series().unwrap();
        let e = SemidirectElem::new(GroupAut::identity(n), qi(1), psi).unwrap();
        assert!(!stab_check_m(&e).unwrap());
    }
}

//! The Betti side: the group algebra of the free group `F_2` on `X_0, X_1`,
//! the ideal `I = ker(K F_2 → K μ_N)` and its power filtration, the
//! Nielsen-Schreier presentation of the kernel subgroup, and the comparison
//! isomorphisms into the de Rham crossed product.
//!
//! Filtration questions are decided in the truncated tensor-algebra model of
//! the kernel group algebra (each kernel generator maps to `1 + u`), which
//! is exact over the rationals degree by degree.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::crossed::{gen_e0, gen_e1, gen_g, reduce_to_m, w_decompose, CrossedElem, MElem, WElem};
use crate::cyclic::{CyclicElem, EmbeddingDatum};
use crate::error::{Error, Result};
use crate::linalg::{rank, ExactMatrix};
use crate::scalar::{qi, qr, Q};

/// Letter of `F_2`: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BLetter {
    X0,
    X0Inv,
    X1,
    X1Inv,
}

impl BLetter {
    pub fn inverse(self) -> BLetter {
        match self {
            BLetter::X0 => BLetter::X0Inv,
            BLetter::X0Inv => BLetter::X0,
            BLetter::X1 => BLetter::X1Inv,
            BLetter::X1Inv => BLetter::X1,
        }
    }

    pub fn token(self) -> char {
        match self {
            BLetter::X0 => 'A',
            BLetter::X0Inv => 'a',
            BLetter::X1 => 'B',
            BLetter::X1Inv => 'b',
        }
    }

    pub fn from_token(c: char) -> Result<BLetter> {
        match c {
            'A' => Ok(BLetter::X0),
            'a' => Ok(BLetter::X0Inv),
            'B' => Ok(BLetter::X1),
            'b' => Ok(BLetter::X1Inv),
            _ => Err(Error::Parse(format!("bad free-word token {c:?}"))),
        }
    }
}

/// Freely reduced word in `F_2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FreeWord(Vec<BLetter>);

impl FreeWord {
    pub fn identity() -> FreeWord {
        FreeWord(Vec::new())
    }

    /// Builds a word, freely reducing adjacent inverse pairs.
    pub fn from_letters(letters: impl IntoIterator<Item = BLetter>) -> FreeWord {
        let mut stack: Vec<BLetter> = Vec::new();
        for l in letters {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        FreeWord(stack)
    }

    pub fn letters(&self) -> &[BLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `X_0^k` for any integer `k`.
    pub fn x0_power(k: i64) -> FreeWord {
        let letter = if k >= 0 { BLetter::X0 } else { BLetter::X0Inv };
        FreeWord(vec![letter; k.unsigned_abs() as usize])
    }

    pub fn generator(l: BLetter) -> FreeWord {
        FreeWord(vec![l])
    }

    /// Total exponent of `X_0`.
    pub fn x0_exponent(&self) -> i64 {
        self.0
            .iter()
            .map(|l| match l {
                BLetter::X0 => 1,
                BLetter::X0Inv => -1,
                _ => 0,
            })
            .sum()
    }

    pub fn tokens(&self) -> String {
        self.0.iter().map(|l| l.token()).collect()
    }

    pub fn from_tokens(s: &str) -> Result<FreeWord> {
        let letters: Result<Vec<BLetter>> = s.chars().map(BLetter::from_token).collect();
        Ok(FreeWord::from_letters(letters?))
    }

    /// All freely reduced words of length at most `len`.
    pub fn all_reduced(len: usize) -> Vec<FreeWord> {
        let mut out = vec![FreeWord::identity()];
        let mut layer = vec![FreeWord::identity()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for l in [BLetter::X0, BLetter::X0Inv, BLetter::X1, BLetter::X1Inv] {
                    if w.0.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(FreeWord(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// Finitely supported element of the group algebra `K F_2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GAElem {
    coeffs: BTreeMap<FreeWord, Q>,
}

impl GAElem {
    pub fn zero() -> GAElem {
        GAElem::default()
    }

    pub fn one() -> GAElem {
        GAElem::word(FreeWord::identity())
    }

    pub fn word(w: FreeWord) -> GAElem {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w, qi(1));
        GAElem { coeffs }
    }

    pub fn term(w: FreeWord, c: Q) -> GAElem {
        let mut e = GAElem::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: FreeWord, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &Q)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: &FreeWord) -> Q {
        self.coeffs.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &GAElem) -> GAElem {
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GAElem) -> GAElem {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn scale(&self, c: &Q) -> GAElem {
        let mut out = GAElem::zero();
        if c.is_zero() {
            return out;
        }
        for (w, v) in &self.coeffs {
            out.coeffs.insert(w.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &GAElem) -> GAElem {
        let mut out = GAElem::zero();
        for (w1, c1) in &self.coeffs {
            for (w2, c2) in &other.coeffs {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> GAElem {
        let mut acc = GAElem::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// `X - 1` for a group element.
pub fn minus_one(w: FreeWord) -> GAElem {
    let mut e = GAElem::word(w);
    e.add_term(FreeWord::identity(), qi(-1));
    e
}

/// The algebra map `K F_2 → K μ_N` (`X_0 ↦ ζ_N`, `X_1 ↦ 1`), returned as
/// coefficients indexed by residue.
pub fn project_mu(n: u32, a: &GAElem) -> Vec<Q> {
    let mut out = vec![Q::zero(); n as usize];
    for (w, c) in a.terms() {
        let r = w.x0_exponent().rem_euclid(n as i64) as usize;
        out[r] += c;
    }
    out
}

/// Letter of the rank-`N+1` free kernel group: `X̃_0 = X_0^N` or
/// `X̃_n = X_0^n X_1 X_0^{-n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KernelLetter {
    Tilde0,
    TildeN(u32),
}

impl KernelLetter {
    /// The corresponding word of `F_2`.
    pub fn to_free_word(self, n: u32) -> FreeWord {
        match self {
            KernelLetter::Tilde0 => FreeWord::x0_power(n as i64),
            KernelLetter::TildeN(k) => FreeWord::x0_power(k as i64)
                .concat(&FreeWord::generator(BLetter::X1))
                .concat(&FreeWord::x0_power(-(k as i64))),
        }
    }

    /// Index into the `N+1`-letter tensor alphabet.
    pub fn tensor_index(self) -> usize {
        match self {
            KernelLetter::Tilde0 => 0,
            KernelLetter::TildeN(k) => 1 + k as usize,
        }
    }
}

/// Freely reduced word in the kernel letters, with explicit `±1` exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct KernelWord(Vec<(KernelLetter, i8)>);

impl KernelWord {
    pub fn identity() -> KernelWord {
        KernelWord(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (KernelLetter, i8)>) -> KernelWord {
        let mut stack: Vec<(KernelLetter, i8)> = Vec::new();
        for (l, s) in letters {
            debug_assert!(s == 1 || s == -1);
            if let Some(&(tl, ts)) = stack.last() {
                if tl == l && ts == -s {
                    stack.pop();
                    continue;
                }
            }
            stack.push((l, s));
        }
        KernelWord(stack)
    }

    pub fn letters(&self) -> &[(KernelLetter, i8)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word of `F_2` this spells.
    pub fn to_free_word(&self, n: u32) -> FreeWord {
        let mut acc = FreeWord::identity();
        for (l, s) in &self.0 {
            let w = l.to_free_word(n);
            acc = acc.concat(&if *s == 1 { w } else { w.inverse() });
        }
        acc
    }

    /// Drops a trailing run of `X̃_0^{±1}` letters (the normal form of the
    /// class modulo right multiples of `X̃_0 - 1`).
    pub fn strip_trailing_tilde0(&self) -> KernelWord {
        let mut v = self.0.clone();
        while matches!(v.last(), Some((KernelLetter::Tilde0, _))) {
            v.pop();
        }
        KernelWord(v)
    }
}

/// The Nielsen-Schreier generators of `ker(F_2 → μ_N)`:
/// `X_0^N, X_1, X_0 X_1 X_0^{-1}, ..., X_0^{N-1} X_1 X_0^{-(N-1)}`.
pub fn ns_generators(n: u32) -> Vec<FreeWord> {
    assert!(n >= 1);
    let mut out = vec![FreeWord::x0_power(n as i64)];
    for k in 0..n {
        out.push(KernelLetter::TildeN(k).to_free_word(n));
    }
    out
}

/// The Σ-decomposition `w = σ(ζ) · x` of a word of `F_2`, with
/// `σ(ζ) = X_0^c` for the residue class `c` of `w` and `x` rewritten in the
/// free kernel generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaDecomp {
    pub zeta: CyclicElem,
    pub tail: KernelWord,
}

impl SigmaDecomp {
    /// Reassembles the original word of `F_2`.
    pub fn reassemble(&self, n: u32) -> FreeWord {
        FreeWord::x0_power(self.zeta.residue() as i64).concat(&self.tail.to_free_word(n))
    }
}

/// Rewrites `σ(ζ)^{-1} w` in the kernel letters by a coset walk: the walk
/// tracks the `X_0`-exponent prefix modulo `N`; each `X_1^{±1}` at prefix
/// `e` emits `X̃_e^{±1}`, and every full turn of the exponent emits
/// `X̃_0^{±1}`.
pub fn sigma_decompose(n: u32, w: &FreeWord) -> SigmaDecomp {
    let c = w.x0_exponent().rem_euclid(n as i64);
    let prefix = FreeWord::x0_power(-c);
    let mut emitted: Vec<(KernelLetter, i8)> = Vec::new();
    let mut e: u32 = 0;
    for l in prefix.letters().iter().chain(w.letters().iter()) {
        match l {
            BLetter::X0 => {
                if e == n - 1 {
                    emitted.push((KernelLetter::Tilde0, 1));
                    e = 0;
                } else {
                    e += 1;
                }
            }
            BLetter::X0Inv => {
                if e == 0 {
                    emitted.push((KernelLetter::Tilde0, -1));
                    e = n - 1;
                } else {
                    e -= 1;
                }
            }
            BLetter::X1 => emitted.push((KernelLetter::TildeN(e), 1)),
            BLetter::X1Inv => emitted.push((KernelLetter::TildeN(e), -1)),
        }
    }
    debug_assert_eq!(e, 0, "kernel words end at the trivial coset");
    SigmaDecomp {
        zeta: CyclicElem::new(n, c),
        tail: KernelWord::from_letters(emitted),
    }
}

/// Image of a group-algebra element in the truncated tensor-algebra model:
/// one noncommutative polynomial in the `N+1` variables `u_j` per residue
/// slot, with every kernel letter sent to `1 + u` (inverses to the
/// alternating geometric series) and degrees above `trunc` dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusImage {
    pub n: u32,
    pub trunc: usize,
    pub slots: Vec<BTreeMap<Vec<u8>, Q>>,
}

impl MagnusImage {
    fn zero(n: u32, trunc: usize) -> MagnusImage {
        MagnusImage {
            n,
            trunc,
            slots: vec![BTreeMap::new(); n as usize],
        }
    }

    fn add_into(slot: &mut BTreeMap<Vec<u8>, Q>, w: Vec<u8>, c: Q) {
        if c.is_zero() {
            return;
        }
        match slot.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Lowest tensor degree with a nonzero component, over all slots.
    pub fn min_degree(&self) -> Option<usize> {
        self.slots
            .iter()
            .flat_map(|s| s.keys().map(|w| w.len()))
            .min()
    }
}

fn kernel_word_polynomial(kw: &KernelWord, trunc: usize) -> BTreeMap<Vec<u8>, Q> {
    // product over letters of (1 + u) or sum_k (-u)^k
    let mut acc: BTreeMap<Vec<u8>, Q> = BTreeMap::new();
    acc.insert(Vec::new(), qi(1));
    for (l, s) in kw.letters() {
        let idx = l.tensor_index() as u8;
        let mut next: BTreeMap<Vec<u8>, Q> = BTreeMap::new();
        for (w, c) in &acc {
            if *s == 1 {
                // (1 + u)
                MagnusImage::add_into(&mut next, w.clone(), c.clone());
                if w.len() < trunc {
                    let mut v = w.clone();
                    v.push(idx);
                    MagnusImage::add_into(&mut next, v, c.clone());
                }
            } else {
                // (1 + u)^{-1} = sum (-u)^k
                let mut sign = qi(1);
                let mut v = w.clone();
                loop {
                    MagnusImage::add_into(&mut next, v.clone(), c * &sign);
                    if v.len() >= trunc {
                        break;
                    }
                    v.push(idx);
                    sign = -sign;
                }
            }
        }
        acc = next;
    }
    acc
}

/// The Magnus expansion of a group-algebra element through the
/// Σ-decomposition, truncated at tensor degree `trunc`.
pub fn magnus_image(n: u32, a: &GAElem, trunc: usize) -> MagnusImage {
    let mut out = MagnusImage::zero(n, trunc);
    for (w, c) in a.terms() {
        let sd = sigma_decompose(n, w);
        let poly = kernel_word_polynomial(&sd.tail, trunc);
        let slot = &mut out.slots[sd.zeta.residue() as usize];
        for (tw, tc) in poly {
            MagnusImage::add_into(slot, tw, tc * c);
        }
    }
    out
}

/// Membership in the filtration step `F^m = I^m`: all tensor components of
/// degree below `m` vanish in every residue slot.
pub fn filtration_member(n: u32, a: &GAElem, m: usize) -> bool {
    if m == 0 {
        return true;
    }
    let image = magnus_image(n, a, m - 1);
    image.slots.iter().all(|s| s.is_empty())
}

fn tensor_words(letters: usize, degree: usize) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..degree {
        let mut next = Vec::new();
        for w in &out {
            for j in 0..letters {
                let mut v = w.clone();
                v.push(j as u8);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Rank of the degree-`m` graded piece `I^m / I^{m+1}`, computed by an
/// independent route: spanning products `σ(ζ)(X̃_{j_1}-1)...(X̃_{j_m}-1)`
/// are expanded as honest group-algebra elements, re-decomposed word by
/// word, and the degree-`m` components of their Magnus images are row
/// reduced.
pub fn gr_dimension(n: u32, m: usize) -> usize {
    if m == 0 {
        // gr^0 = K F_2 / I = K μ_N
        return n as usize;
    }
    let letters: Vec<KernelLetter> = std::iter::once(KernelLetter::Tilde0)
        .chain((0..n).map(KernelLetter::TildeN))
        .collect();
    let columns = tensor_words(letters.len(), m);
    let col_index: BTreeMap<&Vec<u8>, usize> =
        columns.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let mut tuples: Vec<Vec<KernelLetter>> = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for t in &tuples {
            for l in &letters {
                let mut v = t.clone();
                v.push(*l);
                next.push(v);
            }
        }
        tuples = next;
    }

    let mut rows: Vec<Vec<Q>> = Vec::new();
    for zeta in 0..n {
        let sigma = GAElem::word(FreeWord::x0_power(zeta as i64));
        for t in &tuples {
            let mut elem = sigma.clone();
            for l in t {
                elem = elem.mul(&minus_one(l.to_free_word(n)));
            }
            let image = magnus_image(n, &elem, m);
            let mut row = vec![Q::zero(); n as usize * columns.len()];
            for (slot, poly) in image.slots.iter().enumerate() {
                for (tw, c) in poly {
                    if tw.len() == m {
                        row[slot * columns.len() + col_index[tw]] = c.clone();
                    }
                }
            }
            rows.push(row);
        }
    }
    rank(&ExactMatrix::from_rows(rows))
}

/// The comparison isomorphism `iso^{V,ι}`:
/// `X_0 ↦ exp(e_0/N) g_ι`, `X_1 ↦ exp(e_1)`, extended multiplicatively to
/// reduced words and linearly, truncated at degree `d`.
pub fn iso_v(iota: &EmbeddingDatum, a: &GAElem, d: usize) -> CrossedElem {
    let n = iota.order();
    let exp_e0 = gen_e0(n, d)
        .scale(&qr(1, n as i64))
        .exp()
        .expect("zero degree-zero part");
    let exp_e0_inv = gen_e0(n, d)
        .scale(&qr(-1, n as i64))
        .exp()
        .expect("zero degree-zero part");
    let exp_e1 = gen_e1(n, d).exp().expect("zero degree-zero part");
    let exp_e1_inv = gen_e1(n, d).neg().exp().expect("zero degree-zero part");
    let g = gen_g(n, d, iota.g_iota());
    let g_inv = gen_g(n, d, iota.g_iota().neg());
    let img_x0 = exp_e0.mul(&g).expect("window");
    let img_x0_inv = g_inv.mul(&exp_e0_inv).expect("window");

    let mut memo: BTreeMap<FreeWord, CrossedElem> = BTreeMap::new();
    memo.insert(FreeWord::identity(), CrossedElem::one(n, d));
    let mut out = CrossedElem::zero(n, d);
    for (w, c) in a.terms() {
        // incremental product over the reduced word, memoized on prefixes
        let mut known = w.len();
        while known > 0 {
            if memo.contains_key(&FreeWord(w.letters()[..known].to_vec())) {
                break;
            }
            known -= 1;
        }
        let mut acc = memo[&FreeWord(w.letters()[..known].to_vec())].clone();
        for i in known..w.len() {
            let img = match w.letters()[i] {
                BLetter::X0 => &img_x0,
                BLetter::X0Inv => &img_x0_inv,
                BLetter::X1 => &exp_e1,
                BLetter::X1Inv => &exp_e1_inv,
            };
            acc = acc.mul(img).expect("window");
            memo.insert(FreeWord(w.letters()[..=i].to_vec()), acc.clone());
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// Three-way split `a = c + v_1 (X_1 - 1) + v_0 (X_0 - 1)` along the direct
/// sum `K F_2 = K ⊕ K F_2 (X_1 - 1) ⊕ K F_2 (X_0 - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WbSplit {
    pub constant: Q,
    pub x1_factor: GAElem,
    pub x0_factor: GAElem,
}

impl WbSplit {
    pub fn reassemble(&self) -> GAElem {
        let mut out = GAElem::term(FreeWord::identity(), self.constant.clone());
        out = out.add(
            &self
                .x1_factor
                .mul(&minus_one(FreeWord::generator(BLetter::X1))),
        );
        out = out.add(
            &self
                .x0_factor
                .mul(&minus_one(FreeWord::generator(BLetter::X0))),
        );
        out
    }
}

/// Fox-calculus-style decomposition: walking the letters of each word `w`,
/// `w - 1 = Σ_i prefix_i (y_i - 1)` with `y^{-1} - 1 = -y^{-1}(y - 1)`.
pub fn wb_decompose(a: &GAElem) -> WbSplit {
    let mut constant = Q::zero();
    let mut x1_factor = GAElem::zero();
    let mut x0_factor = GAElem::zero();
    for (w, c) in a.terms() {
        constant += c;
        let mut prefix = FreeWord::identity();
        for l in w.letters() {
            match l {
                BLetter::X0 => x0_factor.add_term(prefix.clone(), c.clone()),
                BLetter::X0Inv => {
                    let p = prefix.concat(&FreeWord::generator(BLetter::X0Inv));
                    x0_factor.add_term(p, -c.clone());
                }
                BLetter::X1 => x1_factor.add_term(prefix.clone(), c.clone()),
                BLetter::X1Inv => {
                    let p = prefix.concat(&FreeWord::generator(BLetter::X1Inv));
                    x1_factor.add_term(p, -c.clone());
                }
            }
            prefix = prefix.concat(&FreeWord::generator(*l));
        }
    }
    WbSplit {
        constant,
        x1_factor,
        x0_factor,
    }
}

/// `iso^{W,ι}`: the restriction of `iso^{V,ι}` to `K ⊕ V^B (X_1 - 1)`.
/// Elements with a nonzero `(X_0 - 1)` component are rejected.
pub fn iso_w(iota: &EmbeddingDatum, a: &GAElem, d: usize) -> Result<WElem> {
    let split = wb_decompose(a);
    if !split.x0_factor.is_zero() {
        return Err(Error::NotInWB(format!(
            "nonzero (X_0 - 1) component with {} terms",
            split.x0_factor.num_terms()
        )));
    }
    w_decompose(&iso_v(iota, a, d))
}

/// `iso^{M,ι}`: the descent of `iso^{V,ι}` to the quotient modules.
pub fn iso_m(iota: &EmbeddingDatum, a: &GAElem, d: usize) -> MElem {
    reduce_to_m(&iso_v(iota, a, d))
}

/// Class of a group-algebra element in `M^B = V^B / V^B (X_0 - 1)`,
/// realized inside the kernel group algebra modulo right multiples of
/// `X̃_0 - 1`: each word is decomposed as `v · X_0^i` with `v` in the
/// kernel, `v` is rewritten in kernel letters, and the trailing `X̃_0` run
/// is stripped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MbClass {
    coeffs: BTreeMap<KernelWord, Q>,
}

impl MbClass {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KernelWord, &Q)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, w: KernelWord, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// A group-algebra representative of the class.
    pub fn lift(&self, n: u32) -> GAElem {
        let mut out = GAElem::zero();
        for (kw, c) in &self.coeffs {
            out.add_term(kw.to_free_word(n), c.clone());
        }
        out
    }
}

pub fn mb_reduce(n: u32, a: &GAElem) -> MbClass {
    let mut out = MbClass::default();
    for (w, c) in a.terms() {
        let i = w.x0_exponent().rem_euclid(n as i64);
        // v = w X_0^{-i} lies in the kernel; w ≡ v modulo V^B (X_0 - 1)
        let v = w.concat(&FreeWord::x0_power(-i));
        let sd = sigma_decompose(n, &v);
        debug_assert_eq!(sd.zeta.residue(), 0);
        out.add_term(sd.tail.strip_trailing_tilde0(), c.clone());
    }
    out
}

//! Truncated noncommutative series on the alphabet `{x_0} ∪ {x_g | g ∈ Z/N}`
//! with the shuffle Hopf structure and the elementary group actions.
//!
//! A `SeriesX` stores finitely many words of length at most `D` with exact
//! rational coefficients; every operation takes inputs of equal `(N, D)` and
//! silently drops degrees above `D`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::cyclic::{CyclicElem, GroupAut};
use crate::error::{Error, Result};
use crate::scalar::{inv_factorial, qi, Q};

/// Letter of the alphabet `X`: the special letter `x_0` or a group letter
/// `x_g`. Every letter has degree one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X0,
    Xg(CyclicElem),
}

impl Letter {
    /// The letter `x_{1_G}` (group identity), written `x_1` in the theory.
    pub fn x1(n: u32) -> Letter {
        Letter::Xg(CyclicElem::zero(n))
    }

    pub fn token(&self) -> String {
        match self {
            Letter::X0 => "0".to_string(),
            Letter::Xg(g) => format!("g{}", g.residue()),
        }
    }

    pub fn from_token(n: u32, tok: &str) -> Result<Letter> {
        if tok == "0" {
            return Ok(Letter::X0);
        }
        let Some(k) = tok.strip_prefix('g') else {
            return Err(Error::Parse(format!("bad letter token {tok:?}")));
        };
        let k: u32 = k
            .parse()
            .map_err(|_| Error::Parse(format!("bad letter token {tok:?}")))?;
        if k >= n {
            return Err(Error::Parse(format!("letter token {tok:?} out of Z/{n}")));
        }
        Ok(Letter::Xg(CyclicElem::new(n, k as i64)))
    }
}

/// Finite word over `X`; the empty word is the unit. Words order by length,
/// then lexicographically, so serialized output diffs cleanly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Splits into the block form `x_0^{n_1} x_{g_1} ... x_0^{n_r} x_{g_r} x_0^{n_{r+1}}`,
    /// returning `([(n_1, g_1), ..., (n_r, g_r)], n_{r+1})`.
    pub fn blocks(&self) -> (Vec<(usize, CyclicElem)>, usize) {
        let mut blocks = Vec::new();
        let mut run = 0usize;
        for l in &self.0 {
            match l {
                Letter::X0 => run += 1,
                Letter::Xg(g) => {
                    blocks.push((run, *g));
                    run = 0;
                }
            }
        }
        (blocks, run)
    }

    /// Rebuilds a word from block form.
    pub fn from_blocks(blocks: &[(usize, CyclicElem)], tail: usize) -> Word {
        let mut v = Vec::new();
        for (n, g) in blocks {
            v.extend(vec![Letter::X0; *n]);
            v.push(Letter::Xg(*g));
        }
        v.extend(vec![Letter::X0; tail]);
        Word(v)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<String> = self.0.iter().map(|l| l.token()).collect();
        write!(f, "{}", toks.join("."))
    }
}

/// Truncated noncommutative series over `Q` on the alphabet `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesX {
    n: u32,
    d: usize,
    coeffs: BTreeMap<Word, Q>,
}

impl SeriesX {
    pub fn zero(n: u32, d: usize) -> SeriesX {
        SeriesX {
            n,
            d,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n: u32, d: usize) -> SeriesX {
        SeriesX::term(n, d, Word::empty(), qi(1))
    }

    pub fn term(n: u32, d: usize, w: Word, c: Q) -> SeriesX {
        let mut s = SeriesX::zero(n, d);
        s.add_term(w, c);
        s
    }

    pub fn letter(n: u32, d: usize, l: Letter) -> SeriesX {
        SeriesX::term(n, d, Word::single(l), qi(1))
    }

    pub fn group_order(&self) -> u32 {
        self.n
    }

    pub fn degree_cap(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c · w` in place, pruning zeros and words beyond the window.
    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() || w.len() > self.d {
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

    pub fn same_window(&self, other: &SeriesX) -> Result<()> {
        if self.n != other.n || self.d != other.d {
            return Err(Error::Param(format!(
                "window mismatch: ({}, {}) vs ({}, {})",
                self.n, self.d, other.n, other.d
            )));
        }
        Ok(())
    }

    /// Stored coefficient of `w`, or zero. Errors when `w` is longer than
    /// the window, where the value is unknowable.
    pub fn coeff(&self, w: &Word) -> Result<Q> {
        if w.len() > self.d {
            return Err(Error::OutOfWindow(format!(
                "word of length {} at truncation {}",
                w.len(),
                self.d
            )));
        }
        Ok(self.coeffs.get(w).cloned().unwrap_or_else(Q::zero))
    }

    /// Constant coefficient.
    pub fn constant(&self) -> Q {
        self.coeffs
            .get(&Word::empty())
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// The part of the series of exact degree `k`.
    pub fn homogeneous(&self, k: usize) -> SeriesX {
        let mut s = SeriesX::zero(self.n, self.d);
        for (w, c) in &self.coeffs {
            if w.len() == k {
                s.add_term(w.clone(), c.clone());
            }
        }
        s
    }

    /// Lowest degree with a nonzero term.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|w| w.len()).min()
    }

    pub fn add(&self, other: &SeriesX) -> SeriesX {
        self.same_window(other).expect("window mismatch in add");
        let mut s = self.clone();
        for (w, c) in &other.coeffs {
            s.add_term(w.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, other: &SeriesX) -> SeriesX {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SeriesX {
        self.scale(&qi(-1))
    }

    pub fn scale(&self, c: &Q) -> SeriesX {
        let mut s = SeriesX::zero(self.n, self.d);
        if c.is_zero() {
            return s;
        }
        for (w, v) in &self.coeffs {
            s.coeffs.insert(w.clone(), v * c);
        }
        s
    }

    /// Concatenation product, discarding words longer than `D`.
    pub fn mul(&self, other: &SeriesX) -> Result<SeriesX> {
        self.same_window(other)?;
        let mut s = SeriesX::zero(self.n, self.d);
        for (w1, c1) in &self.coeffs {
            if w1.len() > self.d {
                continue;
            }
            for (w2, c2) in &other.coeffs {
                if w1.len() + w2.len() > self.d {
                    continue;
                }
                s.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(s)
    }

    pub fn pow(&self, k: usize) -> Result<SeriesX> {
        let mut acc = SeriesX::one(self.n, self.d);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Two-sided inverse up to degree `D`; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<SeriesX> {
        let c0 = self.constant();
        if c0.is_zero() {
            return Err(Error::NonInvertible(
                "zero constant term in SeriesX".to_string(),
            ));
        }
        let c0_inv = c0.recip();
        // a = c0 (1 + n), a^{-1} = (sum (-n)^k) / c0
        let mut nilpotent = self.scale(&c0_inv);
        nilpotent.coeffs.remove(&Word::empty());
        let mut acc = SeriesX::one(self.n, self.d);
        let mut power = SeriesX::one(self.n, self.d);
        for _ in 1..=self.d {
            power = power.mul(&nilpotent)?.neg();
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&c0_inv))
    }

    /// `exp` of a series with zero constant term.
    pub fn exp_series(&self) -> Result<SeriesX> {
        if !self.constant().is_zero() {
            return Err(Error::Param(
                "exp needs a zero constant term".to_string(),
            ));
        }
        let mut acc = SeriesX::one(self.n, self.d);
        let mut power = SeriesX::one(self.n, self.d);
        for k in 1..=self.d {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scale(&inv_factorial(k)));
        }
        Ok(acc)
    }

    /// `log` of a series with constant term one.
    pub fn log_series(&self) -> Result<SeriesX> {
        if self.constant() != qi(1) {
            return Err(Error::Param("log needs constant term 1".to_string()));
        }
        let mut nilpotent = self.clone();
        nilpotent.coeffs.remove(&Word::empty());
        let mut acc = SeriesX::zero(self.n, self.d);
        let mut power = SeriesX::one(self.n, self.d);
        for k in 1..=self.d {
            power = power.mul(&nilpotent)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { qi(1) } else { qi(-1) };
            acc = acc.add(&power.scale(&(sign / qi(k as i64))));
        }
        Ok(acc)
    }

    /// Shuffle coproduct: the algebra morphism making every letter primitive,
    /// truncated at total degree `D`.
    pub fn shuffle_coproduct(&self) -> TensorSeriesX {
        let mut t = TensorSeriesX::zero(self.n, self.d);
        for (w, c) in &self.coeffs {
            let k = w.len();
            // all ways of distributing the positions over the two legs
            for mask in 0u32..(1 << k) {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (i, l) in w.0.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(*l);
                    } else {
                        right.push(*l);
                    }
                }
                t.add_term(Word(left), Word(right), c.clone());
            }
        }
        t
    }

    /// True iff the constant term is one and `Δ(a) = a ⊗ a` in all total
    /// degrees up to `D`.
    pub fn is_grouplike(&self) -> bool {
        if self.constant() != qi(1) {
            return false;
        }
        let delta = self.shuffle_coproduct();
        let square = TensorSeriesX::pure(self, self).expect("same window");
        delta == square
    }

    /// The relabeling `t_g`: `x_0 ↦ x_0`, `x_h ↦ x_{g+h}`.
    pub fn act_tg(&self, g: &CyclicElem) -> SeriesX {
        assert_eq!(g.order(), self.n, "group order mismatch");
        self.map_letters(|l| match l {
            Letter::X0 => Letter::X0,
            Letter::Xg(h) => Letter::Xg(g.add(&h)),
        })
    }

    /// `λ • -`: the coefficient of each degree-`d` word is multiplied by `λ^d`.
    pub fn act_scale(&self, lambda: &Q) -> Result<SeriesX> {
        if lambda.is_zero() {
            return Err(Error::Param("scaling by zero".to_string()));
        }
        let mut s = SeriesX::zero(self.n, self.d);
        for (w, c) in &self.coeffs {
            let mut f = qi(1);
            for _ in 0..w.len() {
                f *= lambda;
            }
            s.add_term(w.clone(), c * &f);
        }
        Ok(s)
    }

    /// `η_φ`: `x_0 ↦ x_0`, `x_g ↦ x_{φ(g)}`.
    pub fn act_groupaut(&self, phi: &GroupAut) -> SeriesX {
        assert_eq!(phi.order(), self.n, "group order mismatch");
        self.map_letters(|l| match l {
            Letter::X0 => Letter::X0,
            Letter::Xg(h) => Letter::Xg(phi.apply(&h)),
        })
    }

    fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> SeriesX {
        let mut s = SeriesX::zero(self.n, self.d);
        for (w, c) in &self.coeffs {
            let w2 = Word(w.0.iter().map(|l| f(*l)).collect());
            s.add_term(w2, c.clone());
        }
        s
    }

    /// The basis automorphism `q`: `x_0^{n_1} x_{g_1} ... x_0^{n_r} x_{g_r} x_0^{n_{r+1}}
    /// ↦ x_0^{n_1} x_{g_1} x_0^{n_2} x_{g_2 - g_1} ... x_0^{n_r} x_{g_r - g_{r-1}} x_0^{n_{r+1}}`.
    pub fn q_map(&self) -> SeriesX {
        self.map_blocks(|blocks| {
            let mut prev = CyclicElem::zero(blocks[0].1.order());
            blocks
                .iter()
                .map(|(n, g)| {
                    let out = (*n, g.sub(&prev));
                    prev = *g;
                    out
                })
                .collect()
        })
    }

    /// Inverse of `q`: cumulative sums of the group letters.
    pub fn q_inv(&self) -> SeriesX {
        self.map_blocks(|blocks| {
            let mut acc = CyclicElem::zero(blocks[0].1.order());
            blocks
                .iter()
                .map(|(n, g)| {
                    acc = acc.add(g);
                    (*n, acc)
                })
                .collect()
        })
    }

    fn map_blocks(
        &self,
        f: impl Fn(&[(usize, CyclicElem)]) -> Vec<(usize, CyclicElem)>,
    ) -> SeriesX {
        let mut s = SeriesX::zero(self.n, self.d);
        for (w, c) in &self.coeffs {
            let (blocks, tail) = w.blocks();
            let w2 = if blocks.is_empty() {
                w.clone()
            } else {
                Word::from_blocks(&f(&blocks), tail)
            };
            s.add_term(w2, c.clone());
        }
        s
    }

    /// The same series at a different truncation window; shrinking drops
    /// the words beyond the new cap.
    pub fn retruncate(&self, d: usize) -> SeriesX {
        let mut s = SeriesX::zero(self.n, d);
        for (w, c) in &self.coeffs {
            s.add_term(w.clone(), c.clone());
        }
        s
    }

    /// All words of length at most `d` on the alphabet of `Z/N`, in canonical
    /// order. Useful as a spanning set in tests and operator tables.
    pub fn basis_words(n: u32, d: usize) -> Vec<Word> {
        let mut letters = vec![Letter::X0];
        for g in 0..n {
            letters.push(Letter::Xg(CyclicElem::new(n, g as i64)));
        }
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..d {
            let mut next = Vec::new();
            for w in &layer {
                for l in &letters {
                    let mut v = w.0.clone();
                    v.push(*l);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort();
        out
    }
}

/// Element of the completed tensor square, truncated at total degree `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSeriesX {
    n: u32,
    d: usize,
    coeffs: BTreeMap<(Word, Word), Q>,
}

impl TensorSeriesX {
    pub fn zero(n: u32, d: usize) -> TensorSeriesX {
        TensorSeriesX {
            n,
            d,
            coeffs: BTreeMap::new(),
        }
    }

    /// `a ⊗ b`, truncated at total degree `D`.
    pub fn pure(a: &SeriesX, b: &SeriesX) -> Result<TensorSeriesX> {
        a.same_window(b)?;
        let mut t = TensorSeriesX::zero(a.n, a.d);
        for (w1, c1) in &a.coeffs {
            for (w2, c2) in &b.coeffs {
                t.add_term(w1.clone(), w2.clone(), c1 * c2);
            }
        }
        Ok(t)
    }

    pub fn add_term(&mut self, w1: Word, w2: Word, c: Q) {
        if c.is_zero() || w1.len() + w2.len() > self.d {
            return;
        }
        match self.coeffs.entry((w1, w2)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Q)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &TensorSeriesX) -> TensorSeriesX {
        assert_eq!((self.n, self.d), (other.n, other.d));
        let mut t = self.clone();
        for ((w1, w2), c) in &other.coeffs {
            t.add_term(w1.clone(), w2.clone(), c.clone());
        }
        t
    }

    pub fn sub(&self, other: &TensorSeriesX) -> TensorSeriesX {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn scale(&self, c: &Q) -> TensorSeriesX {
        let mut t = TensorSeriesX::zero(self.n, self.d);
        if c.is_zero() {
            return t;
        }
        for ((w1, w2), v) in &self.coeffs {
            t.coeffs.insert((w1.clone(), w2.clone()), v * c);
        }
        t
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &TensorSeriesX) -> TensorSeriesX {
        assert_eq!((self.n, self.d), (other.n, other.d));
        let mut t = TensorSeriesX::zero(self.n, self.d);
        for ((a, b), c1) in &self.coeffs {
            for ((x, y), c2) in &other.coeffs {
                if a.len() + b.len() + x.len() + y.len() > self.d {
                    continue;
                }
                t.add_term(a.concat(x), b.concat(y), c1 * c2);
            }
        }
        t
    }

    /// Applies a series map to both legs.
    pub fn map_legs(&self, f: impl Fn(&SeriesX) -> SeriesX) -> TensorSeriesX {
        let mut t = TensorSeriesX::zero(self.n, self.d);
        for ((w1, w2), c) in &self.coeffs {
            let a = f(&SeriesX::term(self.n, self.d, w1.clone(), qi(1)));
            let b = f(&SeriesX::term(self.n, self.d, w2.clone(), qi(1)));
            for (u1, c1) in &a.coeffs {
                for (u2, c2) in &b.coeffs {
                    t.add_term(u1.clone(), u2.clone(), c * c1 * c2);
                }
            }
        }
        t
    }
}

//! Polynomial differential forms on a simplex, in barycentric coordinates.
//!
//! A [`PolyForm`] on a face with labels `l0 < l1 < ... < ld` is stored as
//! `Σ c · λ^α (dλ)_ρ` where every monomial λ^α has the same total degree and
//! every ρ avoids `l0` (the relation `Σ dλ_i = 0` is used to eliminate dλ_{l0}).
//! The common degree is the smallest possible: while every coefficient
//! polynomial is divisible by `Σ λ_i` the division is carried out. With these
//! rules the representation is unique, so structural equality is equality of
//! forms.

mod span;
mod text;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{
    labels_mask, mask_labels, mask_merge_sign, rank_below, IncreasingMap, MultiIndex,
};
use crate::error::{Error, Result};
use crate::exterior::AltForm;
use crate::scalar::{factorial, Rational};
use crate::simplex::{AffineSimplexMap, BaryPoint, Face};

pub use span::{space_full, space_trimmed, Family, Membership, Span};
pub use text::{join_signed, mono_pretty, subscript};

/// Faces carrying polynomial forms use labels below this bound.
pub const MAX_LABELS: usize = 8;

/// Exponents indexed by vertex label.
pub type Mono = [u8; MAX_LABELS];

pub(crate) fn mono_degree(m: &Mono) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// Bit mask of labels with positive exponent.
pub(crate) fn mono_support(m: &Mono) -> u16 {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u16, |acc, (i, _)| acc | (1 << i))
}

pub(crate) fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = *a;
    for i in 0..MAX_LABELS {
        out[i] += b[i];
    }
    out
}

/// λ_face: product of the barycentric coordinates of the labels in `mask`.
pub(crate) fn bubble_mono(mask: u16) -> Mono {
    let mut m = [0u8; MAX_LABELS];
    for l in mask_labels(mask) {
        m[l] = 1;
    }
    m
}

/// Terms of `(Σ_{i ∈ labels} λ_i)^e` with multinomial coefficients.
fn power_of_sum(labels: &[usize], e: u32) -> Vec<(Mono, BigInt)> {
    fn rec(labels: &[usize], e: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
        if labels.len() == 1 {
            cur[labels[0]] = e as u8;
            out.push(*cur);
            cur[labels[0]] = 0;
            return;
        }
        for a in (0..=e).rev() {
            cur[labels[0]] = a as u8;
            rec(&labels[1..], e - a, cur, out);
        }
        cur[labels[0]] = 0;
    }
    let mut monos = Vec::new();
    rec(labels, e, &mut [0u8; MAX_LABELS], &mut monos);
    let ef = factorial(e);
    monos
        .into_iter()
        .map(|m| {
            let denom: BigInt = m.iter().map(|&a| factorial(a as u32)).product();
            (m, &ef / denom)
        })
        .collect()
}

/// Multiplies a homogeneous polynomial by `(Σ_{i ∈ labels} λ_i)^e`.
pub(crate) fn raise_degree(
    poly: &BTreeMap<Mono, Rational>,
    labels: &[usize],
    e: u32,
) -> BTreeMap<Mono, Rational> {
    if e == 0 {
        return poly.clone();
    }
    let powers = power_of_sum(labels, e);
    let mut out = BTreeMap::new();
    for (m, c) in poly {
        for (p, mult) in &powers {
            add_to(
                &mut out,
                mono_mul(m, p),
                c * Rational::from_integer(mult.clone()),
            );
        }
    }
    out
}

/// All monomials of total degree `r` in the labels of `face`.
pub fn monomials(face: Face, r: u32) -> Vec<Mono> {
    power_of_sum(&face.labels(), r)
        .into_iter()
        .map(|(m, _)| m)
        .collect()
}

/// Exact division of a homogeneous polynomial by `Σ_{i ∈ labels} λ_i`.
fn divide_by_sum(
    poly: &BTreeMap<Mono, Rational>,
    labels: &[usize],
) -> Option<BTreeMap<Mono, Rational>> {
    let l0 = labels[0];
    let mut h = poly.clone();
    let mut q: BTreeMap<Mono, Rational> = BTreeMap::new();
    while let Some((m, c)) = h
        .iter()
        .filter(|(m, _)| m[l0] > 0)
        .max_by_key(|(m, _)| m[l0])
        .map(|(m, c)| (*m, c.clone()))
    {
        let mut base = m;
        base[l0] -= 1;
        add_to(&mut q, base, c.clone());
        for &i in labels {
            let mut t = base;
            t[i] += 1;
            add_to(&mut h, t, -c.clone());
        }
    }
    h.is_empty().then_some(q)
}

fn add_to<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Accumulates raw barycentric terms; generators may contain dλ_{l0} and
/// degrees may be mixed. [`Builder::finish`] produces the canonical form.
#[derive(Clone, Debug)]
pub(crate) struct Builder {
    face: Face,
    k: usize,
    terms: HashMap<(u16, Mono), Rational>,
}

impl Builder {
    pub(crate) fn new(face: Face, k: usize) -> Self {
        Builder {
            face,
            k,
            terms: HashMap::new(),
        }
    }

    pub(crate) fn add(&mut self, mask: u16, mono: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(mask.count_ones() as usize, self.k);
        debug_assert_eq!(mask & !self.face.mask(), 0);
        debug_assert_eq!(mono_support(&mono) & !self.face.mask(), 0);
        *self
            .terms
            .entry((mask, mono))
            .or_insert_with(Rational::zero) += c;
    }

    pub(crate) fn add_form(&mut self, f: &PolyForm, scale: &Rational) {
        for ((m, a), c) in &f.terms {
            self.add(*m, *a, c * scale);
        }
    }

    pub(crate) fn finish(self) -> PolyForm {
        let face = self.face;
        let labels = face.labels();
        let l0 = face.first();
        let l0bit = 1u16 << l0;

        let mut elim: HashMap<(u16, Mono), Rational> = HashMap::new();
        let mut push = |mask: u16, mono: Mono, c: Rational| {
            *elim.entry((mask, mono)).or_insert_with(Rational::zero) += c;
        };
        for ((mask, mono), c) in self.terms {
            if c.is_zero() {
                continue;
            }
            if mask & l0bit == 0 {
                push(mask, mono, c);
                continue;
            }
            // dλ_{l0} ∧ (dλ)_rest = -Σ_j dλ_j ∧ (dλ)_rest
            let rest = mask & !l0bit;
            for &j in &labels {
                if j == l0 || rest & (1 << j) != 0 {
                    continue;
                }
                let v = if rank_below(rest, j).is_multiple_of(2) {
                    -c.clone()
                } else {
                    c.clone()
                };
                push(rest | (1 << j), mono, v);
            }
        }
        elim.retain(|_, c| !c.is_zero());

        let deg = elim.keys().map(|(_, m)| mono_degree(m)).max().unwrap_or(0);
        let mut powers: HashMap<u32, Vec<(Mono, BigInt)>> = HashMap::new();
        let mut by_mask: BTreeMap<u16, BTreeMap<Mono, Rational>> = BTreeMap::new();
        for ((mask, mono), c) in elim {
            let e = deg - mono_degree(&mono);
            let entry = by_mask.entry(mask).or_default();
            if e == 0 {
                add_to(entry, mono, c);
                continue;
            }
            let ps = powers.entry(e).or_insert_with(|| power_of_sum(&labels, e));
            for (p, mult) in ps.iter() {
                add_to(
                    entry,
                    mono_mul(&mono, p),
                    &c * Rational::from_integer(mult.clone()),
                );
            }
        }
        by_mask.retain(|_, p| !p.is_empty());

        let mut deg = if by_mask.is_empty() { 0 } else { deg };
        while deg > 0 {
            let divided: Option<BTreeMap<u16, BTreeMap<Mono, Rational>>> = by_mask
                .iter()
                .map(|(m, p)| divide_by_sum(p, &labels).map(|q| (*m, q)))
                .collect();
            match divided {
                Some(d) => {
                    by_mask = d;
                    deg -= 1;
                }
                None => break,
            }
        }

        let terms = by_mask
            .into_iter()
            .flat_map(|(m, p)| p.into_iter().map(move |(a, c)| ((m, a), c)))
            .collect();
        PolyForm {
            face,
            k: self.k,
            deg,
            terms,
        }
    }
}

/// A polynomial differential k-form on a face, in canonical barycentric form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyForm {
    face: Face,
    k: usize,
    deg: u32,
    terms: BTreeMap<(u16, Mono), Rational>,
}

fn check_face(face: Face) -> Result<()> {
    if face.mask() >> MAX_LABELS != 0 {
        return Err(Error::InvalidInput(format!(
            "face {face} uses labels beyond {}",
            MAX_LABELS - 1
        )));
    }
    Ok(())
}

impl PolyForm {
    pub fn zero(face: Face, k: usize) -> Self {
        PolyForm {
            face,
            k,
            deg: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(face: Face, c: Rational) -> Self {
        let mut b = Builder::new(face, 0);
        b.add(0, [0; MAX_LABELS], c);
        b.finish()
    }

    pub fn one(face: Face) -> Self {
        Self::constant(face, Rational::one())
    }

    /// λ_l.
    pub fn lambda(face: Face, l: usize) -> Result<Self> {
        check_face(face)?;
        if !face.has_label(l) {
            return Err(Error::InvalidInput(format!(
                "{l} is not a vertex of {face}"
            )));
        }
        let mut m = [0u8; MAX_LABELS];
        m[l] = 1;
        Ok(Self::raw_term(face, 0, m, Rational::one()))
    }

    /// dλ_l.
    pub fn dlambda(face: Face, l: usize) -> Result<Self> {
        check_face(face)?;
        if !face.has_label(l) {
            return Err(Error::InvalidInput(format!(
                "{l} is not a vertex of {face}"
            )));
        }
        Ok(Self::raw_term(
            face,
            1 << l,
            [0; MAX_LABELS],
            Rational::one(),
        ))
    }

    /// λ_face = Π λ_l over the labels of `sub` (a subface of `face`).
    pub fn bubble(face: Face, sub: Face) -> Result<Self> {
        check_face(face)?;
        face.check_contains(sub)?;
        Ok(Self::raw_term(
            face,
            0,
            bubble_mono(sub.mask()),
            Rational::one(),
        ))
    }

    /// One raw term `c λ^mono (dλ)_mask`; `mask` may contain the first label.
    pub(crate) fn raw_term(face: Face, mask: u16, mono: Mono, c: Rational) -> Self {
        let mut b = Builder::new(face, mask.count_ones() as usize);
        b.add(mask, mono, c);
        b.finish()
    }

    /// Builds a form from terms `c · λ^α (dλ)_ρ`; α is indexed by vertex label,
    /// ρ lists labels (any labels of the face, including the first one).
    pub fn from_terms<'a>(
        face: Face,
        k: usize,
        terms: impl IntoIterator<Item = (Rational, &'a MultiIndex, &'a IncreasingMap)>,
    ) -> Result<Self> {
        check_face(face)?;
        if k > face.dim() {
            return Err(Error::InvalidInput(format!(
                "{k}-form on a {}-face",
                face.dim()
            )));
        }
        let mut b = Builder::new(face, k);
        for (c, alpha, rho) in terms {
            if rho.len() != k {
                return Err(Error::InvalidInput(format!(
                    "generator {rho} is not a {k}-form"
                )));
            }
            let mask = labels_mask(rho.values());
            if mask & !face.mask() != 0 {
                return Err(Error::InvalidInput(format!(
                    "generator {rho} not on {face}"
                )));
            }
            let mut mono = [0u8; MAX_LABELS];
            for (l, &e) in alpha.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !face.has_label(l) {
                    return Err(Error::InvalidInput(format!(
                        "λ_{l} is not a coordinate of {face}"
                    )));
                }
                mono[l] = u8::try_from(e)
                    .map_err(|_| Error::InvalidInput("exponent too large".into()))?;
            }
            b.add(mask, mono, c);
        }
        Ok(b.finish())
    }

    /// Whitney form φ_ρ = Σ_i (-1)^i λ_{ρ(i)} (dλ)_{ρ∖ρ(i)}.
    pub fn whitney(face: Face, rho: &[usize]) -> Result<Self> {
        check_face(face)?;
        let rmask = labels_mask(rho);
        if rho.is_empty() || rmask & !face.mask() != 0 || rmask.count_ones() as usize != rho.len() {
            return Err(Error::InvalidInput(format!(
                "bad Whitney index {rho:?} on {face}"
            )));
        }
        if rho.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!("{rho:?} not increasing")));
        }
        let mut b = Builder::new(face, rho.len() - 1);
        for (i, &l) in rho.iter().enumerate() {
            let mut m = [0u8; MAX_LABELS];
            m[l] = 1;
            let c = if i % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            b.add(rmask & !(1 << l), m, c);
        }
        Ok(b.finish())
    }

    pub fn face(&self) -> Face {
        self.face
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Polynomial degree (the canonical homogeneous degree is minimal).
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<(u16, Mono), Rational> {
        &self.terms
    }

    /// Canonical terms as (coefficient, α by label, ρ).
    pub fn canonical_terms(&self) -> Vec<(Rational, MultiIndex, IncreasingMap)> {
        let n = self.face.labels().last().copied().unwrap_or(0);
        self.terms
            .iter()
            .map(|((m, a), c)| {
                let alpha = MultiIndex::new(a[..=n].iter().map(|&e| e as u32).collect());
                (c.clone(), alpha, IncreasingMap::from_mask(0, *m))
            })
            .collect()
    }

    /// Terms homogenized to degree `d ≥ self.degree()`.
    pub(crate) fn terms_at_degree(&self, d: u32) -> Option<BTreeMap<(u16, Mono), Rational>> {
        if self.is_zero() {
            return Some(BTreeMap::new());
        }
        if d < self.deg {
            return None;
        }
        let e = d - self.deg;
        if e == 0 {
            return Some(self.terms.clone());
        }
        let ps = power_of_sum(&self.face.labels(), e);
        let mut out = BTreeMap::new();
        for ((m, a), c) in &self.terms {
            for (p, mult) in &ps {
                add_to(
                    &mut out,
                    (*m, mono_mul(a, p)),
                    c * Rational::from_integer(mult.clone()),
                );
            }
        }
        Some(out)
    }

    pub(crate) fn from_canonical_terms(
        face: Face,
        k: usize,
        terms: BTreeMap<(u16, Mono), Rational>,
    ) -> Self {
        let mut b = Builder::new(face, k);
        for ((m, a), c) in terms {
            b.add(m, a, c);
        }
        b.finish()
    }

    fn check_compatible(&self, o: &PolyForm) {
        assert_eq!(self.face, o.face, "forms live on different faces");
        assert_eq!(self.k, o.k, "forms of different degree");
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.face, self.k);
        }
        PolyForm {
            face: self.face,
            k: self.k,
            deg: self.deg,
            terms: self.terms.iter().map(|(key, v)| (*key, v * c)).collect(),
        }
    }

    /// Linear combination `Σ c_i f_i` of forms of one type.
    pub fn combination<'a>(
        face: Face,
        k: usize,
        parts: impl IntoIterator<Item = (&'a Rational, &'a PolyForm)>,
    ) -> Self {
        let mut b = Builder::new(face, k);
        for (c, f) in parts {
            assert_eq!(
                (f.face, f.k),
                (face, k),
                "combination of incompatible forms"
            );
            b.add_form(f, c);
        }
        b.finish()
    }

    pub fn wedge(&self, o: &PolyForm) -> Self {
        assert_eq!(self.face, o.face, "wedge of forms on different faces");
        let k = self.k + o.k;
        if k > self.face.dim() {
            return PolyForm {
                face: self.face,
                k,
                deg: 0,
                terms: BTreeMap::new(),
            };
        }
        let mut b = Builder::new(self.face, k);
        for ((ma, aa), ca) in &self.terms {
            for ((mb, ab), cb) in &o.terms {
                if ma & mb != 0 {
                    continue;
                }
                let c = ca * cb;
                let c = if mask_merge_sign(*ma, *mb) < 0 { -c } else { c };
                b.add(ma | mb, mono_mul(aa, ab), c);
            }
        }
        b.finish()
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let k = self.k + 1;
        if k > self.face.dim() {
            return PolyForm {
                face: self.face,
                k,
                deg: 0,
                terms: BTreeMap::new(),
            };
        }
        let mut b = Builder::new(self.face, k);
        for ((m, a), c) in &self.terms {
            for i in self.face.labels() {
                if a[i] == 0 || m & (1 << i) != 0 {
                    continue;
                }
                let mut a2 = *a;
                a2[i] -= 1;
                let v = c * Rational::from_integer(a[i].into());
                let v = if rank_below(*m, i).is_multiple_of(2) {
                    v
                } else {
                    -v
                };
                b.add(m | (1 << i), a2, v);
            }
        }
        b.finish()
    }

    /// Contraction with a constant vector given by its barycentric increments
    /// `delta[p] = dλ_{label p}(w)` (so `Σ delta = 0`).
    pub fn interior(&self, delta: &[Rational]) -> Result<Self> {
        if self.k == 0 {
            return Err(Error::InvalidInput("interior product of a 0-form".into()));
        }
        if delta.len() != self.face.dim() + 1 {
            return Err(Error::DimensionMismatch("displacement length".into()));
        }
        if !delta.iter().fold(Rational::zero(), |a, b| a + b).is_zero() {
            return Err(Error::InvalidInput(
                "barycentric displacement must sum to 0".into(),
            ));
        }
        let mut b = Builder::new(self.face, self.k - 1);
        for ((m, a), c) in &self.terms {
            for (p, l) in mask_labels(*m).into_iter().enumerate() {
                let dl = &delta[self.face.position(l).expect("label in face")];
                if dl.is_zero() {
                    continue;
                }
                let v = c * dl;
                b.add(m & !(1 << l), *a, if p % 2 == 0 { v } else { -v });
            }
        }
        Ok(b.finish())
    }

    /// Koszul operator κ_x ω, (κ_x ω)_y = ω_y ⌟ (y - x).
    pub fn koszul(&self, x: &BaryPoint) -> Result<Self> {
        if self.k == 0 {
            return Err(Error::InvalidInput("Koszul operator on a 0-form".into()));
        }
        if x.face() != self.face {
            return Err(Error::InvalidInput(
                "Koszul center must be given on the form's face".into(),
            ));
        }
        let labels = self.face.labels();
        let mut b = Builder::new(self.face, self.k - 1);
        for ((m, a), c) in &self.terms {
            for (p, j) in mask_labels(*m).into_iter().enumerate() {
                let sign = if p % 2 == 0 { c.clone() } else { -c.clone() };
                let rest = m & !(1 << j);
                // λ_j - x_j Σ_i λ_i
                let mut aj = *a;
                aj[j] += 1;
                b.add(rest, aj, sign.clone());
                let xj = x.at_label(j);
                if xj.is_zero() {
                    continue;
                }
                for &i in &labels {
                    let mut ai = *a;
                    ai[i] += 1;
                    b.add(rest, ai, -(&sign * &xj));
                }
            }
        }
        Ok(b.finish())
    }

    /// Trace onto a subface: pullback along the inclusion.
    pub fn trace(&self, sub: Face) -> Result<Self> {
        self.face.check_contains(sub)?;
        if sub == self.face {
            return Ok(self.clone());
        }
        let keep = sub.mask();
        let mut b = Builder::new(sub, self.k);
        if self.k > sub.dim() {
            return Ok(PolyForm {
                face: sub,
                k: self.k,
                deg: 0,
                terms: BTreeMap::new(),
            });
        }
        for ((m, a), c) in &self.terms {
            if m & !keep != 0 || mono_support(a) & !keep != 0 {
                continue;
            }
            b.add(*m, *a, c.clone());
        }
        Ok(b.finish())
    }

    /// φ*ω for φ: source → target, ω on target.
    pub fn pullback(&self, phi: &AffineSimplexMap) -> Result<Self> {
        if phi.target() != self.face {
            return Err(Error::InvalidInput(format!(
                "pullback along a map into {} of a form on {}",
                phi.target(),
                self.face
            )));
        }
        let src = phi.source();
        check_face(src)?;
        if self.k > src.dim() {
            return Ok(PolyForm {
                face: src,
                k: self.k,
                deg: 0,
                terms: BTreeMap::new(),
            });
        }
        let src_labels = src.labels();
        // λ_j ↦ Σ_i M_ji λ_i, and likewise for dλ_j
        let images: Vec<Vec<(usize, Rational)>> = (0..MAX_LABELS)
            .map(|j| {
                if !self.face.has_label(j) {
                    return Vec::new();
                }
                src_labels
                    .iter()
                    .map(|&i| (i, phi.entry(j, i)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        let mut b = Builder::new(src, self.k);
        for ((m, a), c) in &self.terms {
            let mut poly: Vec<(Mono, Rational)> = vec![([0; MAX_LABELS], c.clone())];
            for j in self.face.labels() {
                for _ in 0..a[j] {
                    let mut next: BTreeMap<Mono, Rational> = BTreeMap::new();
                    for (pm, pc) in &poly {
                        for (i, w) in &images[j] {
                            let mut nm = *pm;
                            nm[*i] += 1;
                            add_to(&mut next, nm, pc * w);
                        }
                    }
                    poly = next.into_iter().collect();
                }
            }
            let mut forms: Vec<(u16, Rational)> = vec![(0, Rational::one())];
            for j in mask_labels(*m) {
                let mut next: BTreeMap<u16, Rational> = BTreeMap::new();
                for (fm, fc) in &forms {
                    for (i, w) in &images[j] {
                        if fm & (1 << i) != 0 {
                            continue;
                        }
                        // (dλ)_fm ∧ dλ_i
                        let v = fc * w;
                        let v = if mask_merge_sign(*fm, 1 << i) < 0 {
                            -v
                        } else {
                            v
                        };
                        add_to(&mut next, fm | (1 << i), v);
                    }
                }
                forms = next.into_iter().collect();
            }
            for (pm, pc) in &poly {
                for (fm, fc) in &forms {
                    b.add(*fm, *pm, pc * fc);
                }
            }
        }
        Ok(b.finish())
    }

    /// Renames vertex labels; `map[old] = new` must be strictly increasing on... any
    /// injective assignment. The result lives on the face of the new labels.
    pub fn relabel(&self, map: &[(usize, usize)]) -> Result<Self> {
        let lookup = |l: usize| map.iter().find(|(o, _)| *o == l).map(|(_, n)| *n);
        let mut new_labels = Vec::new();
        for l in self.face.labels() {
            new_labels.push(
                lookup(l).ok_or_else(|| Error::InvalidInput(format!("label {l} not mapped")))?,
            );
        }
        let mut sorted = new_labels.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != new_labels.len() {
            return Err(Error::InvalidInput("relabeling is not injective".into()));
        }
        let face = Face::new(&sorted)?;
        check_face(face)?;
        let mut b = Builder::new(face, self.k);
        for ((m, a), c) in &self.terms {
            let mut na = [0u8; MAX_LABELS];
            for l in self.face.labels() {
                na[lookup(l).expect("mapped")] = a[l];
            }
            let seq: Vec<usize> = mask_labels(*m)
                .into_iter()
                .map(|l| lookup(l).expect("mapped"))
                .collect();
            let sign = crate::combinatorics::permutation_sign(&seq);
            let v = if sign < 0 { -c.clone() } else { c.clone() };
            b.add(labels_mask(&seq), na, v);
        }
        Ok(b.finish())
    }

    /// Value at a point in the face's tangent frame: the basis form dλ_{l_j}
    /// (j-th label, j ≥ 1) becomes the coordinate form dx_j.
    pub fn evaluate(&self, x: &BaryPoint) -> Result<AltForm<Rational>> {
        if x.face() != self.face {
            return Err(Error::InvalidInput(
                "evaluation point not on the form's face".into(),
            ));
        }
        let d = self.face.dim();
        let mut vals: BTreeMap<u16, Rational> = BTreeMap::new();
        for ((m, a), c) in &self.terms {
            let mut v = c.clone();
            for l in self.face.labels() {
                for _ in 0..a[l] {
                    v *= x.at_label(l);
                }
            }
            let frame_mask = mask_labels(*m).into_iter().fold(0u16, |acc, l| {
                acc | (1 << (self.face.position(l).expect("in face") - 1))
            });
            add_to(&mut vals, frame_mask, v);
        }
        Ok(AltForm::from_masks(d, self.k, vals))
    }

    /// Evaluation of a 0-form.
    pub fn value_at(&self, x: &BaryPoint) -> Result<Rational> {
        if self.k != 0 {
            return Err(Error::InvalidInput("value_at needs a 0-form".into()));
        }
        Ok(self.evaluate(x)?.coeff_mask(0))
    }

    /// ∫ over the face, which is oriented by its label order.
    pub fn integrate(&self) -> Result<Rational> {
        let d = self.face.dim();
        if self.k != d {
            return Err(Error::InvalidInput(format!(
                "cannot integrate a {}-form over a {d}-face",
                self.k
            )));
        }
        let mut total = Rational::zero();
        for ((_, a), c) in &self.terms {
            let num: BigInt = a.iter().map(|&e| factorial(e as u32)).product();
            let den = factorial(mono_degree(a) + d as u32);
            total += c * Rational::new(num, den);
        }
        Ok(total)
    }

    /// Coefficient polynomials per generator in the basis that omits dλ_e
    /// instead of dλ_{first label}. Keys are generator masks (without e).
    pub(crate) fn components_eliminating(
        &self,
        e: usize,
    ) -> BTreeMap<u16, BTreeMap<Mono, Rational>> {
        let l0 = self.face.first();
        let mut out: BTreeMap<u16, BTreeMap<Mono, Rational>> = BTreeMap::new();
        for ((m, a), c) in &self.terms {
            if e == l0 || m & (1 << e) == 0 {
                add_to(out.entry(*m).or_default(), *a, c.clone());
                continue;
            }
            let rest = m & !(1 << e);
            // (dλ)_m = (-1)^{rank of e} dλ_e ∧ (dλ)_rest, dλ_e = -Σ_{j≠e} dλ_j
            let front = if rank_below(*m, e).is_multiple_of(2) {
                c.clone()
            } else {
                -c.clone()
            };
            for j in self.face.labels() {
                if j == e || rest & (1 << j) != 0 {
                    continue;
                }
                let v = if rank_below(rest, j).is_multiple_of(2) {
                    -front.clone()
                } else {
                    front.clone()
                };
                add_to(out.entry(rest | (1 << j)).or_default(), *a, v);
            }
        }
        out.retain(|_, p| !p.is_empty());
        out
    }
}

impl std::ops::Add for &PolyForm {
    type Output = PolyForm;
    fn add(self, o: &PolyForm) -> PolyForm {
        self.check_compatible(o);
        let mut b = Builder::new(self.face, self.k);
        b.add_form(self, &Rational::one());
        b.add_form(o, &Rational::one());
        b.finish()
    }
}

impl std::ops::Sub for &PolyForm {
    type Output = PolyForm;
    fn sub(self, o: &PolyForm) -> PolyForm {
        self.check_compatible(o);
        let mut b = Builder::new(self.face, self.k);
        b.add_form(self, &Rational::one());
        b.add_form(o, &-Rational::one());
        b.finish()
    }
}

impl std::ops::Neg for &PolyForm {
    type Output = PolyForm;
    fn neg(self) -> PolyForm {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests;

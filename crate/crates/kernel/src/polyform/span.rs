//! Finite spans of polynomial forms with exact rank and membership.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{monomials, Mono, PolyForm};
use crate::combinatorics::{labels_mask, subsets_of_size};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::simplex::Face;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Full,
    Trimmed,
    TraceFreeFull,
    TraceFreeTrimmed,
    Custom,
}

impl Family {
    pub fn trace_free(self) -> Family {
        match self {
            Family::Full => Family::TraceFreeFull,
            Family::Trimmed => Family::TraceFreeTrimmed,
            f => f,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Full => "full",
            Family::Trimmed => "trimmed",
            Family::TraceFreeFull => "trace-free-full",
            Family::TraceFreeTrimmed => "trace-free-trimmed",
            Family::Custom => "custom",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Family::Full),
            "trimmed" => Ok(Family::Trimmed),
            "trace-free-full" => Ok(Family::TraceFreeFull),
            "trace-free-trimmed" => Ok(Family::TraceFreeTrimmed),
            "custom" => Ok(Family::Custom),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// Result of a membership query.
#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    /// Coordinates with respect to [`Span::basis`].
    Member(Vec<Rational>),
    /// The part of the form left after reduction against the span; nonzero.
    NonMember(PolyForm),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

type SparseRow = BTreeMap<usize, Rational>;

/// Generators plus a reduced row echelon form of their coefficient vectors
/// (homogenized to the span degree).
#[derive(Clone, Debug)]
pub struct Span {
    face: Face,
    k: usize,
    family: Family,
    degree: u32,
    generators: Vec<PolyForm>,
    keys: BTreeMap<(u16, Mono), usize>,
    key_list: Vec<(u16, Mono)>,
    echelon: Vec<(usize, SparseRow)>,
    basis_idx: Vec<usize>,
}

fn sub_scaled(v: &mut SparseRow, row: &SparseRow, c: &Rational) {
    for (j, x) in row {
        let e = v.entry(*j).or_insert_with(Rational::zero);
        *e -= c * x;
        if e.is_zero() {
            v.remove(j);
        }
    }
}

impl Span {
    /// Span of `generators`; coordinates are taken at `degree` (at least the
    /// largest generator degree).
    pub fn new(
        face: Face,
        k: usize,
        family: Family,
        degree: u32,
        generators: Vec<PolyForm>,
    ) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.face() != face || g.k() != k) {
            return Err(Error::InvalidInput(format!(
                "generator on {} of degree {} in a span of {k}-forms on {face}",
                g.face(),
                g.k()
            )));
        }
        let degree = generators
            .iter()
            .map(PolyForm::degree)
            .fold(degree, u32::max);
        let mut s = Span {
            face,
            k,
            family,
            degree,
            generators: Vec::new(),
            keys: BTreeMap::new(),
            key_list: Vec::new(),
            echelon: Vec::new(),
            basis_idx: Vec::new(),
        };
        for g in generators {
            s.push(g);
        }
        Ok(s)
    }

    fn push(&mut self, g: PolyForm) {
        let idx = self.generators.len();
        let terms = g.terms_at_degree(self.degree).expect("degree bound");
        let mut v = SparseRow::new();
        for (key, c) in terms {
            let next = self.key_list.len();
            let col = *self.keys.entry(key).or_insert_with(|| next);
            if col == next {
                self.key_list.push(key);
            }
            v.insert(col, c);
        }
        self.generators.push(g);
        self.reduce(&mut v);
        let Some((&p, pc)) = v.iter().next() else {
            return;
        };
        let inv = pc.recip();
        for x in v.values_mut() {
            *x *= &inv;
        }
        for (_, row) in &mut self.echelon {
            if let Some(c) = row.get(&p).cloned() {
                sub_scaled(row, &v, &c);
            }
        }
        self.echelon.push((p, v));
        self.basis_idx.push(idx);
    }

    fn reduce(&self, v: &mut SparseRow) {
        for (p, row) in &self.echelon {
            if let Some(c) = v.get(p).cloned() {
                sub_scaled(v, row, &c);
            }
        }
    }

    /// Coefficient vector of ω in this span's key space, or the form itself
    /// when it uses monomials no generator has.
    fn vectorize(&self, w: &PolyForm) -> std::result::Result<SparseRow, ()> {
        let terms = w.terms_at_degree(self.degree).ok_or(())?;
        let mut v = SparseRow::new();
        for (key, c) in terms {
            match self.keys.get(&key) {
                Some(&col) => {
                    v.insert(col, c);
                }
                None => return Err(()),
            }
        }
        Ok(v)
    }

    pub fn face(&self) -> Face {
        self.face
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn family(&self) -> Family {
        self.family
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn generators(&self) -> &[PolyForm] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.echelon.len()
    }

    /// Linearly independent generators spanning the same space.
    pub fn basis(&self) -> Vec<PolyForm> {
        self.basis_idx
            .iter()
            .map(|&i| self.generators[i].clone())
            .collect()
    }

    /// Positions in [`Span::generators`] of the forms returned by [`Span::basis`].
    pub fn basis_indices(&self) -> &[usize] {
        &self.basis_idx
    }

    pub fn contains(&self, w: &PolyForm) -> bool {
        if w.face() != self.face || w.k() != self.k {
            return false;
        }
        match self.vectorize(w) {
            Ok(mut v) => {
                self.reduce(&mut v);
                v.is_empty()
            }
            Err(()) => false,
        }
    }

    pub fn contains_all<'a>(&self, forms: impl IntoIterator<Item = &'a PolyForm>) -> bool {
        forms.into_iter().all(|f| self.contains(f))
    }

    /// Membership with coordinates over [`Span::basis`], or a nonzero residual.
    pub fn member(&self, w: &PolyForm) -> Result<Membership> {
        if w.face() != self.face || w.k() != self.k {
            return Err(Error::InvalidInput(
                "membership query of a form of another type".into(),
            ));
        }
        let mut v = match self.vectorize(w) {
            Ok(v) => v,
            Err(()) => return Ok(Membership::NonMember(w.clone())),
        };
        self.reduce(&mut v);
        if !v.is_empty() {
            let terms = v
                .into_iter()
                .map(|(col, c)| (self.key_list[col], c))
                .collect();
            return Ok(Membership::NonMember(PolyForm::from_canonical_terms(
                self.face, self.k, terms,
            )));
        }
        let rows = self.key_list.len();
        let cols: Vec<Vec<Rational>> = self
            .basis_idx
            .iter()
            .map(|&i| self.dense(&self.generators[i], rows))
            .collect();
        let a = Matrix::from_columns(rows, &cols);
        let b = self.dense(w, rows);
        Ok(Membership::Member(a.solve(&b)?))
    }

    fn dense(&self, w: &PolyForm, rows: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); rows];
        for (col, c) in self.vectorize(w).expect("member of the key space") {
            out[col] = c;
        }
        out
    }

    /// Whether every generator of `other` lies in this span.
    pub fn contains_span(&self, other: &Span) -> bool {
        other.face == self.face && other.k == self.k && self.contains_all(other.basis().iter())
    }

    pub fn same_space(&self, other: &Span) -> bool {
        self.dim() == other.dim() && self.contains_span(other)
    }

    /// Subspace of forms whose traces on all proper faces of dimension ≥ k vanish.
    pub fn trace_free_subspace(&self) -> Span {
        let basis = self.basis();
        let faces: Vec<Face> = self
            .face
            .subfaces()
            .into_iter()
            .filter(|f| *f != self.face && f.dim() >= self.k)
            .collect();
        let mut keys: BTreeMap<(Face, u16, Mono), usize> = BTreeMap::new();
        let mut columns: Vec<BTreeMap<usize, Rational>> = Vec::new();
        for b in &basis {
            let mut col = BTreeMap::new();
            for &f in &faces {
                let tr = b.trace(f).expect("subface");
                for ((m, a), c) in tr.terms_at_degree(self.degree).expect("degree bound") {
                    let next = keys.len();
                    let row = *keys.entry((f, m, a)).or_insert(next);
                    col.insert(row, c);
                }
            }
            columns.push(col);
        }
        let mut mat = Matrix::zeros(keys.len(), basis.len());
        for (j, col) in columns.into_iter().enumerate() {
            for (i, c) in col {
                mat[(i, j)] = c;
            }
        }
        let gens = if keys.is_empty() {
            basis
        } else {
            mat.kernel_basis()
                .iter()
                .map(|v| {
                    let v = primitive(v);
                    PolyForm::combination(self.face, self.k, v.iter().zip(&basis))
                })
                .collect()
        };
        Span::new(
            self.face,
            self.k,
            self.family.trace_free(),
            self.degree,
            gens,
        )
        .expect("same type")
    }

    /// Whether all spans are independent with the given total: the union of
    /// their bases has rank equal to the sum of dimensions.
    pub fn is_direct_sum(parts: &[&Span]) -> Result<bool> {
        let Some(first) = parts.first() else {
            return Ok(true);
        };
        let degree = parts.iter().map(|s| s.degree).max().unwrap_or(0);
        let all: Vec<PolyForm> = parts.iter().flat_map(|s| s.basis()).collect();
        let total: usize = parts.iter().map(|s| s.dim()).sum();
        let joined = Span::new(first.face, first.k, Family::Custom, degree, all)?;
        Ok(joined.dim() == total)
    }
}

/// Scales a rational vector to coprime integers with a positive leading entry.
pub(crate) fn primitive(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    let mut l = num_bigint::BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let mut g = num_bigint::BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let lead_neg = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x < &num_bigint::BigInt::zero())
        .unwrap_or(false);
    ints.into_iter()
        .map(|x| {
            let q = Rational::from_integer(x / &g);
            if lead_neg {
                -q
            } else {
                q
            }
        })
        .collect()
}

/// `P_r Λ^k` on a face: monomials of degree r times (dλ)_ρ, ρ avoiding the first label.
pub fn space_full(face: Face, r: u32, k: usize) -> Result<Span> {
    if k > face.dim() {
        return Err(Error::InvalidInput(format!(
            "{k}-forms on a {}-face",
            face.dim()
        )));
    }
    let rest: Vec<usize> = face.labels().into_iter().skip(1).collect();
    let masks: Vec<u16> = subsets_of_size(&rest, k)
        .iter()
        .map(|s| labels_mask(s))
        .collect();
    let mut gens = Vec::new();
    for &m in &masks {
        for a in monomials(face, r) {
            gens.push(PolyForm::raw_term(face, m, a, Rational::one()));
        }
    }
    Span::new(face, k, Family::Full, r, gens)
}

/// `P_r^- Λ^k` on a face: monomials of degree r-1 times Whitney forms φ_ρ.
pub fn space_trimmed(face: Face, r: u32, k: usize) -> Result<Span> {
    if k > face.dim() {
        return Err(Error::InvalidInput(format!(
            "{k}-forms on a {}-face",
            face.dim()
        )));
    }
    if r == 0 {
        return Err(Error::InvalidInput("trimmed spaces need r >= 1".into()));
    }
    let whitney: Vec<PolyForm> = subsets_of_size(&face.labels(), k + 1)
        .iter()
        .map(|rho| PolyForm::whitney(face, rho))
        .collect::<Result<_>>()?;
    let mut gens = Vec::new();
    for w in &whitney {
        for a in monomials(face, r - 1) {
            let mono = PolyForm::raw_term(face, 0, a, Rational::one());
            gens.push(mono.wedge(w));
        }
    }
    Span::new(face, k, Family::Trimmed, r, gens)
}

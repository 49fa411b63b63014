//! Constant k-forms on R^n in the coordinate basis (dx)_ρ.
//!
//! Coordinates are numbered 1..=n as in the usual notation; internally the
//! basis form (dx)_ρ is stored under the bit mask with bit `i-1` set for each
//! `i` in ρ.

use std::collections::BTreeMap;
use std::fmt;

use crate::combinatorics::{mask_merge_sign, subsets_of_size, IncreasingMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct AltForm<F> {
    n: usize,
    k: usize,
    coeffs: BTreeMap<u16, F>,
}

/// Linear map V -> W given by an `n_out x n_in` matrix.
pub type LinearMap<F> = Matrix<F>;

fn rho_mask(rho: &IncreasingMap, n: usize) -> Result<u16> {
    let mut m = 0u16;
    for &v in rho.values() {
        if v == 0 || v > n {
            return Err(Error::InvalidInput(format!(
                "{rho} is not a map into [1..{n}]"
            )));
        }
        m |= 1 << (v - 1);
    }
    Ok(m)
}

/// All k-subsets of `0..n` as masks, lexicographic in the label lists.
pub fn k_masks(n: usize, k: usize) -> Vec<u16> {
    let all: Vec<usize> = (0..n).collect();
    subsets_of_size(&all, k)
        .into_iter()
        .map(|s| s.iter().fold(0u16, |m, &i| m | (1 << i)))
        .collect()
}

impl<F: Field> AltForm<F> {
    pub fn zero(n: usize, k: usize) -> Self {
        assert!(k <= n, "form degree {k} exceeds dimension {n}");
        AltForm {
            n,
            k,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, c: F) -> Self {
        Self::from_masks(n, 0, [(0u16, c)])
    }

    /// The coordinate form (dx)_ρ, ρ into [1..n].
    pub fn basis(n: usize, rho: &IncreasingMap) -> Result<Self> {
        let m = rho_mask(rho, n)?;
        Ok(Self::from_masks(n, rho.len(), [(m, F::one())]))
    }

    pub fn dx(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i));
        Self::from_masks(n, 1, [(1u16 << (i - 1), F::one())])
    }

    pub fn vol(n: usize) -> Self {
        Self::from_masks(n, n, [(((1u32 << n) - 1) as u16, F::one())])
    }

    /// A 1-form from its coefficient vector.
    pub fn one_form(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        Self::from_masks(
            n,
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (1u16 << i, c.clone())),
        )
    }

    pub(crate) fn from_masks(
        n: usize,
        k: usize,
        terms: impl IntoIterator<Item = (u16, F)>,
    ) -> Self {
        let mut f = Self::zero(n, k);
        for (m, c) in terms {
            debug_assert_eq!(m.count_ones() as usize, k);
            f.add_term(m, c);
        }
        f
    }

    fn add_term(&mut self, mask: u16, c: F) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(mask).or_insert_with(F::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, rho: &IncreasingMap) -> F {
        rho_mask(rho, self.n)
            .ok()
            .and_then(|m| self.coeffs.get(&m).cloned())
            .unwrap_or_else(F::zero)
    }

    pub(crate) fn coeff_mask(&self, mask: u16) -> F {
        self.coeffs.get(&mask).cloned().unwrap_or_else(F::zero)
    }

    /// Nonzero coefficients keyed by ρ into [1..n].
    pub fn terms(&self) -> Vec<(IncreasingMap, F)> {
        self.coeffs
            .iter()
            .map(|(&m, c)| {
                let vals = (0..self.n)
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| i + 1)
                    .collect();
                (IncreasingMap::new(1, vals).expect("increasing"), c.clone())
            })
            .collect()
    }

    /// Coefficient of vol for an n-form.
    pub fn top_coefficient(&self) -> F {
        self.coeff_mask(((1u32 << self.n) - 1) as u16)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_masks(
            self.n,
            self.k,
            self.coeffs.iter().map(|(&m, v)| (m, v.clone() * c.clone())),
        )
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (&m, c) in &o.coeffs {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-F::one()))
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.n != o.n || self.k != o.k {
            return Err(Error::DimensionMismatch(format!(
                "forms of type ({}, {}) and ({}, {})",
                self.n, self.k, o.n, o.k
            )));
        }
        Ok(())
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(format!(
                "wedge in R^{} and R^{}",
                self.n, o.n
            )));
        }
        let k = self.k + o.k;
        if k > self.n {
            return Ok(AltForm {
                n: self.n,
                k: self.n,
                coeffs: BTreeMap::new(),
            }
            .with_degree(k));
        }
        let mut out = Self::zero(self.n, k);
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &o.coeffs {
                if a & b == 0 {
                    let v = ca.clone() * cb.clone();
                    let v = if mask_merge_sign(a, b) < 0 { -v } else { v };
                    out.add_term(a | b, v);
                }
            }
        }
        Ok(out)
    }

    // Degree above n only arises for the zero form.
    fn with_degree(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    /// ω⌟v.
    pub fn interior(&self, v: &[F]) -> Result<Self> {
        if self.k == 0 {
            return Err(Error::InvalidInput("interior product of a 0-form".into()));
        }
        if v.len() != self.n {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let mut out = Self::zero(self.n, self.k - 1);
        for (&m, c) in &self.coeffs {
            let mut pos = 0;
            for (i, vi) in v.iter().enumerate() {
                if m & (1 << i) == 0 {
                    continue;
                }
                if !vi.is_zero() {
                    let t = c.clone() * vi.clone();
                    out.add_term(m & !(1 << i), if pos % 2 == 0 { t } else { -t });
                }
                pos += 1;
            }
        }
        Ok(out)
    }

    /// J*ω for J: V -> W given as an `dim W x dim V` matrix; ω lives on W.
    pub fn pullback(&self, j: &LinearMap<F>) -> Result<Self> {
        if j.rows() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "pullback of a form on R^{} along a map into R^{}",
                self.n,
                j.rows()
            )));
        }
        let n_in = j.cols();
        let pulled: Vec<AltForm<F>> = (0..self.n).map(|i| AltForm::one_form(j.row(i))).collect();
        if self.k > n_in {
            return Ok(Self::zero(n_in, n_in).with_degree(self.k));
        }
        let mut out = Self::zero(n_in, self.k);
        for (&m, c) in &self.coeffs {
            let mut acc = AltForm::scalar(n_in, c.clone());
            for (i, p) in pulled.iter().enumerate() {
                if m & (1 << i) != 0 {
                    acc = acc.wedge(p)?;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    pub fn inner(&self, o: &Self) -> Result<F> {
        self.check_same(o)?;
        Ok(self
            .coeffs
            .iter()
            .filter_map(|(m, c)| o.coeffs.get(m).map(|d| c.clone() * d.clone()))
            .fold(F::zero(), |a, b| a + b))
    }

    /// Euclidean Hodge star: ⋆(dx)_ρ = sign(ρ)(dx)_{ρ*}.
    pub fn hodge(&self) -> Self {
        let full = ((1u32 << self.n) - 1) as u16;
        let mut out = Self::zero(self.n, self.n - self.k);
        for (&m, c) in &self.coeffs {
            let comp = full & !m;
            let v = if mask_merge_sign(m, comp) < 0 {
                -c.clone()
            } else {
                c.clone()
            };
            out.add_term(comp, v);
        }
        out
    }

    /// Evaluates the form on k vectors.
    pub fn apply(&self, vectors: &[Vec<F>]) -> Result<F> {
        if vectors.len() != self.k || vectors.iter().any(|v| v.len() != self.n) {
            return Err(Error::DimensionMismatch(
                "form applied to wrong vectors".into(),
            ));
        }
        let mut f = self.clone();
        for v in vectors {
            if f.k == 0 {
                break;
            }
            f = f.interior(v)?;
        }
        Ok(f.coeff_mask(0))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> AltForm<G> {
        let mut out = AltForm::zero(self.n, self.k);
        for (&m, c) in &self.coeffs {
            out.add_term(m, f(c));
        }
        out
    }
}

impl<F: Field> fmt::Display for AltForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (rho, c)) in self.terms().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for v in rho.values() {
                write!(f, " dx{v}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    type A = AltForm<Rational>;

    fn im(v: &[usize]) -> IncreasingMap {
        IncreasingMap::new(1, v.to_vec()).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(A::dx(2, 1).wedge(&A::dx(2, 2)).unwrap(), A::vol(2));
        assert!(A::dx(2, 1).wedge(&A::dx(2, 1)).unwrap().is_zero());
        let s = A::dx(3, 1).add(&A::dx(3, 2)).unwrap();
        let expect = A::basis(3, &im(&[1, 2])).unwrap().scale(&int(-1));
        assert_eq!(s.wedge(&A::dx(3, 1)).unwrap(), expect);
    }

    #[test]
    fn interior_examples() {
        let e1 = vec![int(1), int(0)];
        let e2 = vec![int(0), int(1)];
        assert_eq!(A::vol(2).interior(&e1).unwrap(), A::dx(2, 2));
        assert!(A::dx(2, 1).interior(&e2).unwrap().is_zero());
        assert!(A::scalar(2, int(1)).interior(&e1).is_err());
    }

    #[test]
    fn pullback_examples() {
        let w = A::vol(3).add(&A::vol(3)).unwrap();
        assert_eq!(w.pullback(&Matrix::identity(3)).unwrap(), w);
        let two: Matrix<Rational> = Matrix::identity(3).map(|v| v * int(2));
        let f = A::basis(3, &im(&[1, 3])).unwrap();
        assert_eq!(f.pullback(&two).unwrap(), f.scale(&int(4)));
        // rotation by 90 degrees: e1 -> e2, e2 -> -e1
        let rot = Matrix::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]).unwrap();
        assert_eq!(
            A::dx(2, 1).pullback(&rot).unwrap(),
            A::dx(2, 2).scale(&int(-1))
        );
    }

    #[test]
    fn inner_examples() {
        assert_eq!(A::dx(2, 1).inner(&A::dx(2, 1)).unwrap(), int(1));
        assert_eq!(A::dx(2, 1).inner(&A::dx(2, 2)).unwrap(), int(0));
        let a = A::vol(2).scale(&int(2));
        let b = A::vol(2).scale(&int(3));
        assert_eq!(a.inner(&b).unwrap(), int(6));
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(A::dx(2, 1).hodge(), A::dx(2, 2));
        assert_eq!(A::dx(2, 2).hodge(), A::dx(2, 1).scale(&int(-1)));
        assert_eq!(A::scalar(3, int(1)).hodge(), A::vol(3));
        assert_eq!(A::basis(3, &im(&[1, 2])).unwrap().hodge(), A::dx(3, 3));
    }

    /// ⋆ω is determined by ω∧μ = ⟨⋆ω, μ⟩ vol over all basis μ.
    #[test]
    fn hodge_matches_defining_relation() {
        for n in 1..=4 {
            for k in 0..=n {
                for m in k_masks(n, k) {
                    let w = A::from_masks(n, k, [(m, int(1))]);
                    let star = w.hodge();
                    for mu_m in k_masks(n, n - k) {
                        let mu = A::from_masks(n, n - k, [(mu_m, int(1))]);
                        let lhs = w.wedge(&mu).unwrap().top_coefficient();
                        assert_eq!(lhs, star.inner(&mu).unwrap());
                    }
                }
            }
        }
    }
}

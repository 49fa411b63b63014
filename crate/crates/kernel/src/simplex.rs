//! Oriented simplices, their faces, and affine maps between faces.
//!
//! A [`Face`] is a set of vertex labels of a host simplex. Maps between faces
//! are recorded in barycentric form: an [`AffineSimplexMap`] from `source` to
//! `target` stores `λ^target_j(φ(v_i))` for every source vertex `v_i`.

use std::fmt;

use num_traits::{One, Zero};

use crate::combinatorics::{labels_mask, mask_labels, permutation_sign, IncreasingMap, MultiIndex};
use crate::error::{Error, Result};
use crate::exterior::{AltForm, LinearMap};
use crate::linalg::Matrix;
use crate::scalar::{factorial, int, Field, Rational};

/// Vertex labels of a (sub)simplex, at most 16 labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(u16);

impl Face {
    pub fn new(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() || labels.iter().any(|&l| l >= 16) {
            return Err(Error::InvalidInput(format!("bad face labels {labels:?}")));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "face labels {labels:?} not increasing"
            )));
        }
        Ok(Face(labels_mask(labels)))
    }

    /// The full simplex `(0, 1, ..., n)`.
    pub fn full(n: usize) -> Self {
        Face(((1u32 << (n + 1)) - 1) as u16)
    }

    pub fn from_mask(mask: u16) -> Self {
        assert!(mask != 0, "empty face");
        Face(mask)
    }

    pub fn from_map(sigma: &IncreasingMap) -> Result<Self> {
        Self::new(sigma.values())
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn labels(self) -> Vec<usize> {
        mask_labels(self.0)
    }

    pub fn dim(self) -> usize {
        self.0.count_ones() as usize - 1
    }

    pub fn first(self) -> usize {
        self.0.trailing_zeros() as usize
    }

    pub fn contains(self, other: Face) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn has_label(self, l: usize) -> bool {
        l < 16 && self.0 & (1 << l) != 0
    }

    /// Position of label `l` within the face.
    pub fn position(self, l: usize) -> Option<usize> {
        self.has_label(l)
            .then(|| (self.0 & ((1u16 << l) - 1)).count_ones() as usize)
    }

    pub fn intersect(self, o: Face) -> Option<Face> {
        let m = self.0 & o.0;
        (m != 0).then_some(Face(m))
    }

    /// Labels of `self` not in `sub`, as a mask (possibly empty).
    pub fn minus(self, sub: Face) -> u16 {
        self.0 & !sub.0
    }

    pub fn as_map(self) -> IncreasingMap {
        IncreasingMap::from_mask(0, self.0)
    }

    /// All nonempty subfaces, ordered by dimension then lexicographically.
    pub fn subfaces(self) -> Vec<Face> {
        let labels = self.labels();
        let mut out = Vec::new();
        for d in 0..labels.len() {
            out.extend(self.subfaces_of_dim(d));
        }
        out
    }

    pub fn subfaces_of_dim(self, d: usize) -> Vec<Face> {
        crate::combinatorics::subsets_of_size(&self.labels(), d + 1)
            .into_iter()
            .map(|s| Face(labels_mask(&s)))
            .collect()
    }

    pub fn check_contains(self, sub: Face) -> Result<()> {
        if self.contains(sub) {
            Ok(())
        } else {
            Err(Error::NotNested(sub.to_string(), self.to_string()))
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_map())
    }
}

/// A point given by barycentric coordinates with respect to a face.
#[derive(Clone, Debug, PartialEq)]
pub struct BaryPoint {
    face: Face,
    coords: Vec<Rational>,
}

impl BaryPoint {
    pub fn new(face: Face, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != face.dim() + 1 {
            return Err(Error::DimensionMismatch(
                "barycentric coordinate count".into(),
            ));
        }
        if coords.iter().fold(Rational::zero(), |a, b| a + b) != Rational::one() {
            return Err(Error::InvalidInput(
                "barycentric coordinates must sum to 1".into(),
            ));
        }
        Ok(BaryPoint { face, coords })
    }

    pub fn vertex(face: Face, label: usize) -> Result<Self> {
        let pos = face
            .position(label)
            .ok_or_else(|| Error::InvalidInput(format!("{label} is not a vertex of {face}")))?;
        let mut coords = vec![Rational::zero(); face.dim() + 1];
        coords[pos] = Rational::one();
        Ok(BaryPoint { face, coords })
    }

    /// Centroid of `sub`, expressed in the frame of `face`.
    pub fn centroid(face: Face, sub: Face) -> Result<Self> {
        face.check_contains(sub)?;
        let w = Rational::new(1.into(), ((sub.dim() + 1) as i64).into());
        let coords = face
            .labels()
            .into_iter()
            .map(|l| {
                if sub.has_label(l) {
                    w.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Ok(BaryPoint { face, coords })
    }

    pub fn face(&self) -> Face {
        self.face
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Coordinate for a global label (0 if the label is not in the face).
    pub fn at_label(&self, l: usize) -> Rational {
        self.face
            .position(l)
            .map(|p| self.coords[p].clone())
            .unwrap_or_else(Rational::zero)
    }
}

/// Affine map between faces in barycentric form.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSimplexMap {
    source: Face,
    target: Face,
    /// `matrix[(j, i)] = λ^target_j(φ(v_i))`, indices are positions in the faces.
    matrix: Matrix<Rational>,
}

impl AffineSimplexMap {
    /// Map sending each source vertex to the given barycentric point of `target`.
    pub fn from_vertex_images(source: Face, target: Face, images: &[BaryPoint]) -> Result<Self> {
        if images.len() != source.dim() + 1 || images.iter().any(|p| p.face != target) {
            return Err(Error::InvalidInput(
                "vertex images do not match the faces".into(),
            ));
        }
        let cols: Vec<Vec<Rational>> = images.iter().map(|p| p.coords.clone()).collect();
        Ok(AffineSimplexMap {
            source,
            target,
            matrix: Matrix::from_columns(target.dim() + 1, &cols),
        })
    }

    pub fn identity(face: Face) -> Self {
        AffineSimplexMap {
            source: face,
            target: face,
            matrix: Matrix::identity(face.dim() + 1),
        }
    }

    /// Inclusion `i_{sub}` of a face into a containing face.
    pub fn inclusion(sub: Face, host: Face) -> Result<Self> {
        host.check_contains(sub)?;
        let images = sub
            .labels()
            .into_iter()
            .map(|l| BaryPoint::vertex(host, l))
            .collect::<Result<Vec<_>>>()?;
        Self::from_vertex_images(sub, host, &images)
    }

    /// Centroid projector `P_{ξ,σ}`: fixes the vertices of σ, sends the others to its centroid.
    pub fn centroid_projector(xi: Face, sigma: Face) -> Result<Self> {
        xi.check_contains(sigma)?;
        let c = BaryPoint::centroid(sigma, sigma)?;
        let images = xi
            .labels()
            .into_iter()
            .map(|l| {
                if sigma.has_label(l) {
                    BaryPoint::vertex(sigma, l)
                } else {
                    Ok(c.clone())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_vertex_images(xi, sigma, &images)
    }

    /// Weighted projector `P_{T,σ,α}`: other vertices go to `(1/|α|) Σ α(i) v_{σ(i)}`.
    /// `alpha` is indexed by positions in `sigma`.
    pub fn weighted_projector(t: Face, sigma: Face, alpha: &MultiIndex) -> Result<Self> {
        t.check_contains(sigma)?;
        if alpha.exps().len() != sigma.dim() + 1 {
            return Err(Error::DimensionMismatch("multi-index length".into()));
        }
        let total = alpha.order();
        if total == 0 {
            return Err(Error::InvalidInput(
                "weighted projector with |α| = 0".into(),
            ));
        }
        let w: Vec<Rational> = alpha
            .exps()
            .iter()
            .map(|&a| Rational::new((a as i64).into(), (total as i64).into()))
            .collect();
        let xa = BaryPoint {
            face: sigma,
            coords: w,
        };
        let images = t
            .labels()
            .into_iter()
            .map(|l| {
                if sigma.has_label(l) {
                    BaryPoint::vertex(sigma, l)
                } else {
                    Ok(xa.clone())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_vertex_images(t, sigma, &images)
    }

    pub fn source(&self) -> Face {
        self.source
    }
    pub fn target(&self) -> Face {
        self.target
    }
    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    /// Coefficient of `λ^source_{src_label}` in the pullback of `λ^target_{tgt_label}`.
    pub fn entry(&self, tgt_label: usize, src_label: usize) -> Rational {
        match (
            self.target.position(tgt_label),
            self.source.position(src_label),
        ) {
            (Some(j), Some(i)) => self.matrix[(j, i)].clone(),
            _ => Rational::zero(),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineSimplexMap) -> Result<Self> {
        if inner.target != self.source {
            return Err(Error::InvalidInput(format!(
                "cannot compose map from {} with map into {}",
                self.source, inner.target
            )));
        }
        Ok(AffineSimplexMap {
            source: inner.source,
            target: self.target,
            matrix: self.matrix.mul(&inner.matrix)?,
        })
    }

    pub fn apply(&self, x: &BaryPoint) -> Result<BaryPoint> {
        if x.face != self.source {
            return Err(Error::InvalidInput("point not on the source face".into()));
        }
        Ok(BaryPoint {
            face: self.target,
            coords: self.matrix.mul_vec(&x.coords)?,
        })
    }
}

/// Whether a constructor should reject or repair negatively oriented input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Reject,
    AutoSwap,
}

/// An n-simplex in R^n with exact vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex<F> {
    vertices: Vec<Vec<F>>,
    /// Rows are the barycentric gradients dλ_1..dλ_n (inverse of the edge matrix).
    grad: Matrix<F>,
    signed_volume: F,
}

impl<F: Field> Simplex<F> {
    pub fn new(vertices: Vec<Vec<F>>, policy: Orientation) -> Result<Self> {
        let n = vertices
            .len()
            .checked_sub(1)
            .ok_or(Error::DegenerateSimplex)?;
        if vertices.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "{} vertices need {} coordinates",
                n + 1,
                n
            )));
        }
        let s = Self::build(vertices)?;
        if s.signed_volume.signum_exact() < 0 {
            match policy {
                Orientation::Reject => return Err(Error::NegativeOrientation),
                Orientation::AutoSwap => {
                    let mut v = s.vertices;
                    if n >= 2 {
                        v.swap(n - 1, n);
                    } else {
                        v.swap(0, 1);
                    }
                    return Self::build(v);
                }
            }
        }
        Ok(s)
    }

    fn build(vertices: Vec<Vec<F>>) -> Result<Self> {
        let n = vertices.len() - 1;
        let edges = Self::edge_matrix_of(&vertices);
        let det = edges.determinant()?;
        if det.is_zero() {
            return Err(Error::DegenerateSimplex);
        }
        let grad = edges.inverse().ok_or(Error::DegenerateSimplex)?;
        let nf = F::from_rational(Rational::from_integer(factorial(n as u32)));
        let signed_volume = det * nf.inv().expect("nonzero factorial");
        Ok(Simplex {
            vertices,
            grad,
            signed_volume,
        })
    }

    fn edge_matrix_of(vertices: &[Vec<F>]) -> Matrix<F> {
        let n = vertices.len() - 1;
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                m[(i, j)] = vertices[j + 1][i].clone() - vertices[0][i].clone();
            }
        }
        m
    }

    /// The reference simplex `0, e_1, ..., e_n`.
    pub fn reference(n: usize) -> Self {
        let mut vs = vec![vec![F::zero(); n]];
        for i in 0..n {
            let mut v = vec![F::zero(); n];
            v[i] = F::one();
            vs.push(v);
        }
        Self::new(vs, Orientation::Reject).expect("reference simplex")
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<F>] {
        &self.vertices
    }

    /// Columns are `v_i - v_0`, i = 1..n.
    pub fn edge_matrix(&self) -> Matrix<F> {
        Self::edge_matrix_of(&self.vertices)
    }

    pub fn signed_volume(&self) -> F {
        self.signed_volume.clone()
    }

    pub fn volume(&self) -> F {
        if self.signed_volume.signum_exact() < 0 {
            -self.signed_volume.clone()
        } else {
            self.signed_volume.clone()
        }
    }

    /// `n! |T|`.
    pub fn scaled_volume(&self) -> F {
        let nf = F::from_rational(Rational::from_integer(factorial(self.dim() as u32)));
        nf * self.volume()
    }

    pub fn barycentric(&self, x: &[F]) -> Result<Vec<F>> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch("point dimension".into()));
        }
        let rel: Vec<F> = (0..n)
            .map(|i| x[i].clone() - self.vertices[0][i].clone())
            .collect();
        let mu = self.grad.mul_vec(&rel)?;
        let l0 = mu.iter().fold(F::one(), |a, b| a - b.clone());
        Ok(std::iter::once(l0).chain(mu).collect())
    }

    pub fn point(&self, lambda: &[F]) -> Result<Vec<F>> {
        if lambda.len() != self.vertices.len() {
            return Err(Error::DimensionMismatch(
                "barycentric coordinate count".into(),
            ));
        }
        let n = self.dim();
        Ok((0..n)
            .map(|i| {
                lambda
                    .iter()
                    .zip(&self.vertices)
                    .fold(F::zero(), |a, (l, v)| a + l.clone() * v[i].clone())
            })
            .collect())
    }

    pub fn point_from_rational(&self, x: &BaryPoint) -> Result<Vec<F>> {
        if x.face.dim() != self.dim() || x.face != Face::full(self.dim()) {
            return Err(Error::InvalidInput(
                "point must be given on the full simplex".into(),
            ));
        }
        let l: Vec<F> = x
            .coords
            .iter()
            .map(|c| F::from_rational(c.clone()))
            .collect();
        self.point(&l)
    }

    /// Matrix with rows ∇λ_1, ..., ∇λ_n: maps Cartesian vectors to barycentric increments.
    pub fn gradient_matrix(&self) -> &Matrix<F> {
        &self.grad
    }

    /// The constant 1-forms dλ_0, ..., dλ_n.
    pub fn dlambda(&self) -> Vec<AltForm<F>> {
        let n = self.dim();
        let rows: Vec<AltForm<F>> = (0..n)
            .map(|i| AltForm::one_form(self.grad.row(i)))
            .collect();
        let mut d0 = AltForm::zero(n, 1);
        for r in &rows {
            d0 = d0.sub(r).expect("same shape");
        }
        std::iter::once(d0).chain(rows).collect()
    }

    /// Gradients as vectors, `grad[i]` = ∇λ_i.
    pub fn gradients(&self) -> Vec<Vec<F>> {
        self.dlambda()
            .iter()
            .map(|f| {
                (1..=self.dim())
                    .map(|i| f.coeff(&IncreasingMap::new(1, vec![i]).expect("single")))
                    .collect()
            })
            .collect()
    }

    pub fn centroid(&self) -> Vec<F> {
        let n = self.dim();
        let w = F::from_rational(Rational::new(1.into(), ((n + 1) as i64).into()));
        self.point(&vec![w; n + 1]).expect("centroid")
    }

    /// Both sides of `(dλ)_{π∖π(i)} = (-1)^i sign(π) / (n!|T|) vol`, π a permutation of 0..=n.
    pub fn oriented_volume_identity(
        &self,
        pi: &[usize],
        i: usize,
    ) -> Result<(AltForm<F>, AltForm<F>)> {
        let n = self.dim();
        let mut sorted = pi.to_vec();
        sorted.sort_unstable();
        if sorted != (0..=n).collect::<Vec<_>>() || i > n {
            return Err(Error::InvalidInput(format!(
                "{pi:?} is not a permutation of 0..={n}"
            )));
        }
        if self.signed_volume.signum_exact() < 0 {
            return Err(Error::NegativeOrientation);
        }
        let dl = self.dlambda();
        let mut lhs = AltForm::scalar(n, F::one());
        for (p, &l) in pi.iter().enumerate() {
            if p != i {
                lhs = lhs.wedge(&dl[l])?;
            }
        }
        let sgn = if i.is_multiple_of(2) == (permutation_sign(pi) > 0) {
            F::one()
        } else {
            -F::one()
        };
        let rhs = AltForm::vol(n).scale(&(sgn * self.scaled_volume().inv().expect("nonzero")));
        Ok((lhs, rhs))
    }

    /// Vertex coordinates of a face, in label order.
    pub fn face_vertices(&self, face: Face) -> Vec<Vec<F>> {
        face.labels()
            .into_iter()
            .map(|l| self.vertices[l].clone())
            .collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Simplex<G> {
        Simplex {
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(&f).collect())
                .collect(),
            grad: self.grad.map(&f),
            signed_volume: f(&self.signed_volume),
        }
    }
}

impl Simplex<Rational> {
    pub fn from_strings(vertices: &[Vec<String>], policy: Orientation) -> Result<Self> {
        let vs = vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|s| crate::scalar::parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vs, policy)
    }
}

/// A Cartesian affine map `x ↦ A x + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartesianAffine<F> {
    pub linear: LinearMap<F>,
    pub translation: Vec<F>,
}

impl<F: Field> CartesianAffine<F> {
    pub fn apply(&self, x: &[F]) -> Result<Vec<F>> {
        let y = self.linear.mul_vec(x)?;
        Ok(y.into_iter()
            .zip(&self.translation)
            .map(|(a, b)| a + b.clone())
            .collect())
    }

    pub fn image(&self, t: &Simplex<F>) -> Result<Simplex<F>> {
        let vs = t
            .vertices()
            .iter()
            .map(|v| self.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Simplex::new(vs, Orientation::Reject)
    }

    pub fn determinant(&self) -> F {
        self.linear.determinant().expect("square linear part")
    }
}

/// Realizes a barycentric face map on concrete geometry: the Cartesian image of
/// a barycentric point of `map.source()` expressed through `t`'s vertices.
pub fn realize_point(t: &Simplex<Rational>, x: &BaryPoint) -> Result<Vec<Rational>> {
    let verts = t.face_vertices(x.face());
    let n = t.dim();
    Ok((0..n)
        .map(|i| {
            x.coords()
                .iter()
                .zip(&verts)
                .fold(Rational::zero(), |a, (l, v)| a + l * &v[i])
        })
        .collect())
}

/// `int(v)` as a field element.
pub fn fint<F: Field>(v: i64) -> F {
    F::from_rational(int(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn f(l: &[usize]) -> Face {
        Face::new(l).unwrap()
    }

    #[test]
    fn reference_triangle_barycentrics() {
        let t = Simplex::<Rational>::reference(2);
        let l = t.barycentric(&[frac(1, 5), frac(1, 2)]).unwrap();
        assert_eq!(l, vec![frac(3, 10), frac(1, 5), frac(1, 2)]);
        let c = t.barycentric(&t.centroid()).unwrap();
        assert!(c.iter().all(|v| *v == frac(1, 3)));
        let dl = t.dlambda();
        let sum = dl
            .iter()
            .fold(AltForm::zero(2, 1), |a, b| a.add(b).unwrap());
        assert!(sum.is_zero());
    }

    #[test]
    fn volumes() {
        assert_eq!(Simplex::<Rational>::reference(2).volume(), frac(1, 2));
        assert_eq!(Simplex::<Rational>::reference(3).volume(), frac(1, 6));
        assert_eq!(Simplex::<Rational>::reference(4).volume(), frac(1, 24));
    }

    #[test]
    fn orientation_policy() {
        let v = vec![
            vec![int(0), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(0)],
        ];
        assert_eq!(
            Simplex::new(v.clone(), Orientation::Reject),
            Err(Error::NegativeOrientation)
        );
        let s = Simplex::new(v, Orientation::AutoSwap).unwrap();
        assert_eq!(s.signed_volume(), frac(1, 2));
        let flat = vec![
            vec![int(0), int(0)],
            vec![int(1), int(1)],
            vec![int(2), int(2)],
        ];
        assert_eq!(
            Simplex::new(flat, Orientation::Reject),
            Err(Error::DegenerateSimplex)
        );
    }

    #[test]
    fn oriented_identity_reference_triangle() {
        let t = Simplex::<Rational>::reference(2);
        let (l, r) = t.oriented_volume_identity(&[0, 1, 2], 0).unwrap();
        assert_eq!(l, AltForm::vol(2));
        assert_eq!(l, r);
        let (l1, _) = t.oriented_volume_identity(&[0, 1, 2], 1).unwrap();
        assert_eq!(l1, AltForm::vol(2).scale(&int(-1)));
    }

    #[test]
    fn centroid_projector_on_triangle_edge() {
        let p = AffineSimplexMap::centroid_projector(f(&[0, 1, 2]), f(&[0, 1])).unwrap();
        let v2 = BaryPoint::vertex(f(&[0, 1, 2]), 2).unwrap();
        assert_eq!(p.apply(&v2).unwrap().coords(), &[frac(1, 2), frac(1, 2)]);
        let id = AffineSimplexMap::centroid_projector(f(&[0, 1, 2]), f(&[0, 1, 2])).unwrap();
        assert_eq!(id, AffineSimplexMap::identity(f(&[0, 1, 2])));
    }

    #[test]
    fn weighted_projector_example() {
        let t = Face::full(3);
        let p =
            AffineSimplexMap::weighted_projector(t, f(&[1, 2, 3]), &MultiIndex::new(vec![1, 2, 0]))
                .unwrap();
        assert_eq!(p.entry(1, 0), frac(1, 3));
        assert_eq!(p.entry(2, 0), frac(2, 3));
        assert_eq!(p.entry(3, 0), int(0));
        let even =
            AffineSimplexMap::weighted_projector(t, f(&[1, 2, 3]), &MultiIndex::new(vec![1, 1, 1]))
                .unwrap();
        assert_eq!(
            even,
            AffineSimplexMap::centroid_projector(t, f(&[1, 2, 3])).unwrap()
        );
        assert!(AffineSimplexMap::weighted_projector(
            t,
            f(&[1, 2, 3]),
            &MultiIndex::new(vec![0, 0, 0])
        )
        .is_err());
    }

    #[test]
    fn projectors_compose() {
        let tau = Face::full(3);
        let sigma = f(&[0, 1, 3]);
        let rho = f(&[1, 3]);
        let a = AffineSimplexMap::centroid_projector(tau, sigma).unwrap();
        let b = AffineSimplexMap::centroid_projector(sigma, rho).unwrap();
        let c = AffineSimplexMap::centroid_projector(tau, rho).unwrap();
        assert_eq!(b.compose(&a).unwrap(), c);
    }

    #[test]
    fn projector_left_inverts_inclusion() {
        let sigma = f(&[0, 2, 3]);
        let rho = f(&[2, 3]);
        let p = AffineSimplexMap::centroid_projector(sigma, rho).unwrap();
        let i = AffineSimplexMap::inclusion(rho, sigma).unwrap();
        assert_eq!(p.compose(&i).unwrap(), AffineSimplexMap::identity(rho));
        let c = BaryPoint::centroid(sigma, sigma).unwrap();
        assert_eq!(p.apply(&c).unwrap(), BaryPoint::centroid(rho, rho).unwrap());
    }
}

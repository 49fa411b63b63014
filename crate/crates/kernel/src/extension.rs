//! Bubble extensions, the bubble decomposition, the consistent extension Ė
//! and the geometric decompositions built from it.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{mask_merge_sign, subsets_of_size, MultiIndex};
use crate::error::{Error, Result};
use crate::polyform::{
    bubble_mono, mono_degree, mono_support, raise_degree, space_full, space_trimmed, Builder,
    Family, Mono, PolyForm, Span,
};
use crate::scalar::Rational;
use crate::simplex::{AffineSimplexMap, Face};
use crate::star::{is_trace_free, ring_star};

fn check_nested(sub: Face, host: Face) -> Result<()> {
    if host.contains(sub) {
        Ok(())
    } else {
        Err(Error::NotNested(sub.to_string(), host.to_string()))
    }
}

/// `λ_σ (dλ)_ρ` on `host`, ρ a label mask in increasing order.
fn bubble_times(host: Face, sigma: Face, rho: u16) -> PolyForm {
    PolyForm::raw_term(host, rho, bubble_mono(sigma.mask()), Rational::one())
}

/// `P*_{ξ,σ} ω_σ`.
pub fn centroid_pullback(w: &PolyForm, xi: Face) -> Result<PolyForm> {
    w.pullback(&AffineSimplexMap::centroid_projector(xi, w.face())?)
}

/// `E̊_{σ,ξ} ω_σ = P*_{ξ,σ} ω_σ ∧ λ_σ (dλ)_{ξ∖σ}`; σ is the face of `w`.
pub fn bubble_extend(w: &PolyForm, xi: Face) -> Result<PolyForm> {
    let sigma = w.face();
    check_nested(sigma, xi)?;
    Ok(centroid_pullback(w, xi)?.wedge(&bubble_times(xi, sigma, xi.minus(sigma))))
}

/// `Ė_{τ,ξ}` applied to one bubble component: `P*_{ξ,σ} ω_σ ∧ λ_σ (dλ)_{τ∖σ}`.
pub fn dot_extend_component(w: &PolyForm, tau: Face, xi: Face) -> Result<PolyForm> {
    let sigma = w.face();
    check_nested(sigma, tau)?;
    check_nested(tau, xi)?;
    Ok(centroid_pullback(w, xi)?.wedge(&bubble_times(xi, sigma, tau.minus(sigma))))
}

/// Bubble components of a trace-free k-form on `host`, indexed by the faces
/// σ ⊆ host with `dim σ ≥ dim host - k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BubbleTrace {
    pub host: Face,
    pub k: usize,
    pub components: BTreeMap<Face, PolyForm>,
}

impl BubbleTrace {
    /// `Σ_σ E̊_{σ,host} ω_σ`.
    pub fn reassemble(&self) -> Result<PolyForm> {
        let mut out = PolyForm::zero(self.host, self.k);
        for c in self.components.values().filter(|c| !c.is_zero()) {
            out = &out + &bubble_extend(c, self.host)?;
        }
        Ok(out)
    }

    /// Faces carrying a nonzero component, by increasing dimension.
    pub fn support(&self) -> Vec<Face> {
        let mut v: Vec<Face> = self
            .components
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(f, _)| *f)
            .collect();
        v.sort_by_key(|f| (f.dim(), f.labels()));
        v
    }
}

/// Faces of `host` indexing the bubble components of k-forms.
pub fn bubble_faces(host: Face, k: usize) -> Vec<Face> {
    let d = host.dim();
    host.subfaces()
        .into_iter()
        .filter(|f| f.dim() + k >= d)
        .collect()
}

/// Reads the σ component off a form that vanishes on the boundary of f_σ:
/// restrict to f_σ, keep the part along (dλ)_{σ*}, divide by λ_σ.
fn extract_component(residual: &PolyForm, sigma: Face, k_sigma: usize) -> Result<PolyForm> {
    let host = residual.face();
    let sstar = host.minus(sigma);
    let labels = sigma.labels();
    let mut b = Builder::new(sigma, k_sigma);
    for (mask, poly) in residual.components_eliminating(sigma.first()) {
        let restricted: BTreeMap<Mono, Rational> = poly
            .into_iter()
            .filter(|(m, _)| mono_support(m) & !sigma.mask() == 0)
            .collect();
        if restricted.is_empty() {
            continue;
        }
        if mask & sstar != sstar {
            return Err(Error::NotTraceFree(format!(
                "tangential part left on {sigma}"
            )));
        }
        let rho_hat = mask & !sstar;
        let sign = mask_merge_sign(rho_hat, sstar);
        let deg = restricted.keys().next().map(mono_degree).unwrap_or(0);
        let need = labels.len() as u32;
        let restricted = raise_degree(&restricted, &labels, need.saturating_sub(deg));
        for (m, c) in restricted {
            if labels.iter().any(|&l| m[l] == 0) {
                return Err(Error::NotTraceFree(format!(
                    "coefficient not divisible by λ_{sigma}"
                )));
            }
            let mut q = m;
            for &l in &labels {
                q[l] -= 1;
            }
            b.add(rho_hat, q, if sign < 0 { -c } else { c });
        }
    }
    Ok(b.finish())
}

/// Inverts `Σ_σ E̊_{σ,ξ}` on a trace-free form, dimension by dimension.
pub fn bubble_decompose(w: &PolyForm) -> Result<BubbleTrace> {
    let host = w.face();
    let k = w.k();
    if !is_trace_free(w) {
        return Err(Error::NotTraceFree(w.to_string()));
    }
    let d = host.dim();
    let mut residual = w.clone();
    let mut components = BTreeMap::new();
    for dim in d.saturating_sub(k)..=d {
        for sigma in host.subfaces_of_dim(dim) {
            let comp = extract_component(&residual, sigma, k + dim - d)?;
            if !comp.is_zero() {
                residual = &residual - &bubble_extend(&comp, host)?;
            }
            components.insert(sigma, comp);
        }
    }
    if !residual.is_zero() {
        return Err(Error::ResidualNonzero(residual.to_string()));
    }
    Ok(BubbleTrace {
        host,
        k,
        components,
    })
}

/// `Ė_{τ,ξ} ω` for a trace-free form ω on τ.
pub fn dot_extend(w: &PolyForm, xi: Face) -> Result<PolyForm> {
    let tau = w.face();
    check_nested(tau, xi)?;
    let bt = bubble_decompose(w)?;
    let mut out = PolyForm::zero(xi, w.k());
    for c in bt.components.values().filter(|c| !c.is_zero()) {
        out = &out + &dot_extend_component(c, tau, xi)?;
    }
    Ok(out)
}

/// One term `c λ^α (dλ^σ)_ρ` of a full-space input with the projector pullback
/// it is sent to.
#[derive(Clone, Debug, PartialEq)]
pub struct LegacyFullTerm {
    pub coeff: Rational,
    pub alpha: Mono,
    pub rho: u16,
    /// `P*_{T,σ,α} (dλ^σ)_ρ`.
    pub pulled: PolyForm,
}

fn alpha_by_position(sigma: Face, a: &Mono) -> MultiIndex {
    MultiIndex::new(sigma.labels().iter().map(|&l| a[l] as u32).collect())
}

/// Terms of `E^{r,k}_{σ,T} ω`: ω written over `λ^α (dλ)_ρ` with |α| = r and
/// ρ avoiding the first label of σ, each generator pulled back through the
/// α-weighted projector.
pub fn legacy_full_terms(w: &PolyForm, t: Face, r: u32) -> Result<Vec<LegacyFullTerm>> {
    let sigma = w.face();
    check_nested(sigma, t)?;
    let terms = w
        .terms_at_degree(r)
        .ok_or_else(|| Error::InvalidInput(format!("degree {} exceeds r = {r}", w.degree())))?;
    terms
        .into_iter()
        .map(|((rho, alpha), coeff)| {
            let proj = if r == 0 {
                AffineSimplexMap::centroid_projector(t, sigma)?
            } else {
                AffineSimplexMap::weighted_projector(t, sigma, &alpha_by_position(sigma, &alpha))?
            };
            let pulled = PolyForm::raw_term(
                sigma,
                rho,
                [0; crate::polyform::MAX_LABELS],
                Rational::one(),
            )
            .pullback(&proj)?;
            Ok(LegacyFullTerm {
                coeff,
                alpha,
                rho,
                pulled,
            })
        })
        .collect()
}

/// `E^{r,k}_{σ,T} ω`.
pub fn legacy_extend_full(w: &PolyForm, t: Face, r: u32) -> Result<PolyForm> {
    let mut out = PolyForm::zero(t, w.k());
    for term in legacy_full_terms(w, t, r)? {
        let poly = PolyForm::raw_term(t, 0, term.alpha, term.coeff);
        out = &out + &poly.wedge(&term.pulled);
    }
    Ok(out)
}

/// One term `c λ^α φ_τ` of a trimmed expansion; labels are shared by σ and T.
#[derive(Clone, Debug, PartialEq)]
pub struct WhitneyTerm {
    pub coeff: Rational,
    pub alpha: Mono,
    pub tau: Vec<usize>,
}

impl WhitneyTerm {
    pub fn on(&self, face: Face) -> Result<PolyForm> {
        Ok(PolyForm::raw_term(face, 0, self.alpha, self.coeff.clone())
            .wedge(&PolyForm::whitney(face, &self.tau)?))
    }
}

/// Sum of the terms on `face`.
pub fn whitney_sum(terms: &[WhitneyTerm], face: Face, k: usize) -> Result<PolyForm> {
    let mut out = PolyForm::zero(face, k);
    for t in terms {
        out = &out + &t.on(face)?;
    }
    Ok(out)
}

/// Writes ω ∈ P^-_r Λ^k(f_σ) over the generators `λ^α φ_τ`, |α| = r - 1.
pub fn whitney_expansion(w: &PolyForm, r: u32) -> Result<Vec<WhitneyTerm>> {
    let sigma = w.face();
    let k = w.k();
    if r == 0 {
        return Err(Error::InvalidInput("trimmed spaces need r >= 1".into()));
    }
    let mut meta = Vec::new();
    let mut gens = Vec::new();
    for tau in subsets_of_size(&sigma.labels(), k + 1) {
        for alpha in crate::polyform::monomials(sigma, r - 1) {
            let term = WhitneyTerm {
                coeff: Rational::one(),
                alpha,
                tau: tau.clone(),
            };
            gens.push(term.on(sigma)?);
            meta.push(term);
        }
    }
    let span = Span::new(sigma, k, Family::Trimmed, r, gens)?;
    let coords = match span.member(w)? {
        crate::polyform::Membership::Member(c) => c,
        crate::polyform::Membership::NonMember(res) => {
            return Err(Error::Parse(format!(
                "not a trimmed form of degree {r}: residual {res}"
            )))
        }
    };
    Ok(span
        .basis_indices()
        .iter()
        .zip(coords)
        .filter(|(_, c)| !c.is_zero())
        .map(|(&i, c)| WhitneyTerm {
            coeff: c,
            ..meta[i].clone()
        })
        .collect())
}

/// `E^{r,k,-}_{σ,T}` on an explicit expansion: `λ^α φ_τ^{(σ)} ↦ λ^α φ_τ`.
pub fn legacy_extend_trimmed_terms(terms: &[WhitneyTerm], t: Face, k: usize) -> Result<PolyForm> {
    whitney_sum(terms, t, k)
}

/// `E^{r,k,-}_{σ,T} ω`.
pub fn legacy_extend_trimmed(w: &PolyForm, t: Face, r: u32) -> Result<PolyForm> {
    check_nested(w.face(), t)?;
    legacy_extend_trimmed_terms(&whitney_expansion(w, r)?, t, w.k())
}

/// The trace-free local space on a face.
pub fn trace_free_space(face: Face, family: Family, r: u32, k: usize) -> Result<Span> {
    let s = match family {
        Family::Full | Family::TraceFreeFull => space_full(face, r, k)?,
        Family::Trimmed | Family::TraceFreeTrimmed => {
            if r == 0 {
                return Span::new(face, k, Family::TraceFreeTrimmed, 0, vec![]);
            }
            space_trimmed(face, r, k)?
        }
        Family::Custom => return Err(Error::InvalidInput("decompositions need a family".into())),
    };
    Ok(s.trace_free_subspace())
}

/// The whole space `P_r Λ^k` or `P^-_r Λ^k` on a face.
pub fn family_space(face: Face, family: Family, r: u32, k: usize) -> Result<Span> {
    match family {
        Family::Full | Family::TraceFreeFull => space_full(face, r, k),
        Family::Trimmed | Family::TraceFreeTrimmed if r == 0 => {
            Span::new(face, k, Family::Trimmed, 0, vec![])
        }
        Family::Trimmed | Family::TraceFreeTrimmed => space_trimmed(face, r, k),
        Family::Custom => Err(Error::InvalidInput("decompositions need a family".into())),
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    pub face: Face,
    /// Trace-free basis on the face.
    pub local: Vec<PolyForm>,
    /// `Ė_{σ,T}` of the local basis.
    pub span: Span,
}

#[derive(Clone, Debug)]
pub struct GeometricDecomposition {
    pub host: Face,
    pub family: Family,
    pub r: u32,
    pub k: usize,
    pub components: Vec<Component>,
    pub target: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    /// (face, component dimension), by increasing face dimension.
    pub dims: Vec<(String, usize)>,
    pub target_dim: usize,
    pub direct_sum: bool,
    pub dims_add_up: bool,
    pub components_in_target: bool,
}

impl DecompositionCheck {
    pub fn holds(&self) -> bool {
        self.direct_sum && self.dims_add_up && self.components_in_target
    }
}

/// `X(T) = ⊕_{dim σ ≥ k} Ė_{σ,T}[X̊(f_σ)]` for X = P_r Λ^k or P^-_r Λ^k.
/// The identity needs r ≥ 1: extensions of vertex constants already have degree 1.
pub fn geometric_decompose(
    host: Face,
    family: Family,
    r: u32,
    k: usize,
) -> Result<GeometricDecomposition> {
    let mut components = Vec::new();
    for face in host.subfaces().into_iter().filter(|f| f.dim() >= k) {
        let local = trace_free_space(face, family, r, k)?.basis();
        let ext = local
            .iter()
            .map(|w| dot_extend(w, host))
            .collect::<Result<Vec<_>>>()?;
        let span = Span::new(host, k, Family::Custom, r, ext)?;
        components.push(Component { face, local, span });
    }
    let target = family_space(host, family, r, k)?;
    Ok(GeometricDecomposition {
        host,
        family,
        r,
        k,
        components,
        target,
    })
}

impl GeometricDecomposition {
    pub fn check(&self) -> Result<DecompositionCheck> {
        let parts: Vec<&Span> = self.components.iter().map(|c| &c.span).collect();
        let total: usize = parts.iter().map(|s| s.dim()).sum();
        Ok(DecompositionCheck {
            dims: self
                .components
                .iter()
                .map(|c| (c.face.to_string(), c.span.dim()))
                .collect(),
            target_dim: self.target.dim(),
            direct_sum: Span::is_direct_sum(&parts)?,
            dims_add_up: total == self.target.dim(),
            components_in_target: parts.iter().all(|s| self.target.contains_span(s)),
        })
    }

    pub fn component(&self, face: Face) -> Option<&Component> {
        self.components.iter().find(|c| c.face == face)
    }
}

/// The same components realized as `Ė_{σ,T} ⋆̊_σ` of unrestricted spaces:
/// `P^-_{r-d+k} Λ^{d-k}(f_σ)` for the full family, `P_{r-d+k-1} Λ^{d-k}(f_σ)`
/// for the trimmed one (d = dim σ).
pub fn star_image_component(
    host: Face,
    face: Face,
    family: Family,
    r: u32,
    k: usize,
) -> Result<Span> {
    let d = face.dim();
    if d < k {
        return Err(Error::InvalidInput(format!("no {k}-forms on {face}")));
    }
    let shift = r as i64 + k as i64 - d as i64;
    let source: Vec<PolyForm> = match family {
        // P^-_0 Λ^0 is the constants
        Family::Full | Family::TraceFreeFull if shift == 0 && d == k => {
            space_full(face, 0, 0)?.basis()
        }
        Family::Full | Family::TraceFreeFull if shift >= 1 => {
            space_trimmed(face, shift as u32, d - k)?.basis()
        }
        Family::Trimmed | Family::TraceFreeTrimmed if shift >= 1 && r >= 1 => {
            space_full(face, (shift - 1) as u32, d - k)?.basis()
        }
        Family::Custom => return Err(Error::InvalidInput("decompositions need a family".into())),
        _ => Vec::new(),
    };
    let ext = source
        .iter()
        .map(|w| dot_extend(&ring_star(w), host))
        .collect::<Result<Vec<_>>>()?;
    Span::new(host, k, Family::Custom, r, ext)
}

/// Peels ω into `Σ_σ Ė_{σ,T} ω_σ` with `ω_σ` the trace on σ of what is left
/// after removing the lower-dimensional parts.
pub fn peel_decompose(w: &PolyForm) -> Result<Vec<(Face, PolyForm)>> {
    let host = w.face();
    let k = w.k();
    let mut residual = w.clone();
    let mut parts = Vec::new();
    for dim in k..=host.dim() {
        let mut removed = PolyForm::zero(host, k);
        for face in host.subfaces_of_dim(dim) {
            let local = residual.trace(face)?;
            if !local.is_zero() {
                removed = &removed + &dot_extend(&local, host)?;
            }
            parts.push((face, local));
        }
        residual = &residual - &removed;
    }
    if !residual.is_zero() {
        return Err(Error::ResidualNonzero(residual.to_string()));
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{self, random_polyform};
    use crate::scalar::{frac, int};
    use crate::simplex::BaryPoint;

    fn face(l: &[usize]) -> Face {
        Face::new(l).unwrap()
    }

    fn c(f: Face, v: i64) -> PolyForm {
        PolyForm::constant(f, int(v))
    }

    fn parse(f: Face, k: usize, s: &str) -> PolyForm {
        PolyForm::parse(f, k, s).unwrap()
    }

    #[test]
    fn worked_triangle_example() {
        let t = Face::full(2);
        let e02 = bubble_extend(&c(face(&[0, 2]), 1), t).unwrap();
        let e01 = bubble_extend(&c(face(&[0, 1]), -1), t).unwrap();
        let sum = &e02 + &e01;
        assert_eq!(
            sum,
            parse(t, 1, "1 * l0^1 l2^1 ^ dl1 + -1 * l0^1 l1^1 ^ dl2")
        );
        // with φ_12 = λ_1 dλ_2 - λ_2 dλ_1 this sum is -λ_0 φ_12
        let l0phi = PolyForm::lambda(t, 0)
            .unwrap()
            .wedge(&PolyForm::whitney(t, &[1, 2]).unwrap());
        assert_eq!(sum, -&l0phi);
        let bt = bubble_decompose(&l0phi).unwrap();
        assert_eq!(bt.support(), vec![face(&[0, 1]), face(&[0, 2])]);
        assert_eq!(bt.components[&face(&[0, 1])], c(face(&[0, 1]), 1));
        assert_eq!(bt.components[&face(&[0, 2])], c(face(&[0, 2]), -1));
        let bt = bubble_decompose(&sum).unwrap();
        assert_eq!(bt.components[&face(&[0, 1])], c(face(&[0, 1]), -1));
        assert_eq!(bt.components[&face(&[0, 2])], c(face(&[0, 2]), 1));
    }

    #[test]
    fn extension_from_the_cell_multiplies_by_bubble() {
        let mut rng = sample::rng(1);
        for n in 1..=3 {
            let t = Face::full(n);
            for k in 0..=n {
                let w = random_polyform(&mut rng, t, 1, k);
                let expected = PolyForm::bubble(t, t).unwrap().wedge(&w);
                assert_eq!(bubble_extend(&w, t).unwrap(), expected);
            }
        }
    }

    #[test]
    fn bubble_extensions_are_trace_free_and_injective() {
        let mut rng = sample::rng(2);
        let t = Face::full(3);
        for k in 0..=3 {
            for sigma in bubble_faces(t, k) {
                let ks = k + sigma.dim() - 3;
                let w = random_polyform(&mut rng, sigma, 1, ks);
                assert!(
                    is_trace_free(&bubble_extend(&w, t).unwrap()),
                    "σ={sigma} k={k}"
                );
                let gens = space_full(sigma, 1, ks).unwrap().basis();
                let images = gens
                    .iter()
                    .map(|g| bubble_extend(g, t).unwrap())
                    .collect::<Vec<_>>();
                let span = Span::new(t, k, Family::Custom, 0, images).unwrap();
                assert_eq!(span.dim(), gens.len());
            }
        }
    }

    #[test]
    fn cross_traces_vanish() {
        let t = Face::full(3);
        let k = 2;
        for tau in bubble_faces(t, k) {
            let w = bubble_extend(
                &PolyForm::one(tau).wedge(&random_polyform(
                    &mut sample::rng(3),
                    tau,
                    0,
                    k + tau.dim() - 3,
                )),
                t,
            )
            .unwrap();
            for s in t
                .subfaces()
                .into_iter()
                .filter(|s| s.dim() >= k && !s.contains(tau))
            {
                let restricted: Vec<_> = w
                    .raw_terms()
                    .keys()
                    .filter(|(_, a)| mono_support(a) & !s.mask() == 0)
                    .collect();
                assert!(restricted.is_empty(), "E̊_{tau} does not vanish on {s}");
            }
        }
    }

    #[test]
    fn decompose_reassembles_trace_free_spaces() {
        for n in 2..=3 {
            let t = Face::full(n);
            for k in 0..=n {
                for w in trace_free_space(t, Family::Full, 3, k).unwrap().basis() {
                    let bt = bubble_decompose(&w).unwrap();
                    assert_eq!(bt.reassemble().unwrap(), w, "n={n} k={k}");
                    for (sigma, comp) in &bt.components {
                        assert_eq!(comp.face(), *sigma);
                        assert_eq!(comp.k() + n - sigma.dim(), k);
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_rejects_forms_with_traces() {
        let t = Face::full(2);
        assert!(matches!(
            bubble_decompose(&PolyForm::lambda(t, 0).unwrap()),
            Err(Error::NotTraceFree(_))
        ));
        assert!(matches!(
            dot_extend(&PolyForm::dlambda(t, 1).unwrap(), t),
            Err(Error::NotTraceFree(_))
        ));
    }

    #[test]
    fn dot_extension_is_a_right_inverse_of_trace() {
        let t = Face::full(3);
        for tau in t.subfaces() {
            for k in 0..=tau.dim() {
                for w in trace_free_space(tau, Family::Full, 2, k).unwrap().basis() {
                    let ext = dot_extend(&w, t).unwrap();
                    assert_eq!(ext.trace(tau).unwrap(), w, "τ={tau} k={k}");
                    assert_eq!(dot_extend(&w, tau).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn consistent_family_on_the_tetrahedron() {
        let t = Face::full(3);
        for tau in t.subfaces() {
            for k in 0..=tau.dim() {
                let inputs = trace_free_space(tau, Family::Full, 2, k).unwrap().basis();
                for xi in t.subfaces().into_iter().filter(|x| x.contains(tau)) {
                    for rho in xi.subfaces().into_iter().filter(|r| r.dim() >= k) {
                        for w in &inputs {
                            let lhs = dot_extend(w, xi).unwrap().trace(rho).unwrap();
                            let rhs = match tau.intersect(rho) {
                                Some(m) if m.dim() >= k => {
                                    dot_extend(&w.trace(m).unwrap(), rho).unwrap()
                                }
                                _ => PolyForm::zero(rho, k),
                            };
                            assert_eq!(lhs, rhs, "ρ={rho} τ={tau} ξ={xi} k={k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trimmed_inputs_extend_to_trimmed_forms() {
        let t = Face::full(3);
        for r in 1..=3 {
            for k in 0..=2 {
                let target = space_trimmed(t, r, k).unwrap();
                for tau in t.subfaces().into_iter().filter(|f| f.dim() >= k) {
                    for w in trace_free_space(tau, Family::Trimmed, r, k)
                        .unwrap()
                        .basis()
                    {
                        assert!(
                            target.contains(&dot_extend(&w, t).unwrap()),
                            "τ={tau} r={r} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn legacy_trimmed_counterexample() {
        let t = Face::full(3);
        let s = face(&[1, 2, 3]);
        let w = parse(s, 1, "1 * l1^1 l2^1 ^ dl3");
        assert!(trace_free_space(s, Family::Full, 2, 1)
            .unwrap()
            .contains(&w));
        let stated = vec![
            WhitneyTerm {
                coeff: int(1),
                alpha: mono(&[(1, 1), (2, 1)]),
                tau: vec![2, 3],
            },
            WhitneyTerm {
                coeff: int(1),
                alpha: mono(&[(1, 1), (2, 1)]),
                tau: vec![1, 3],
            },
        ];
        assert_eq!(whitney_sum(&stated, s, 1).unwrap(), w);
        let ext = legacy_extend_trimmed_terms(&stated, t, 1).unwrap();
        assert_eq!(legacy_extend_trimmed(&w, t, 3).unwrap(), ext);
        assert!(!space_full(t, 2, 1).unwrap().contains(&ext));
        assert!(space_trimmed(t, 3, 1).unwrap().contains(&ext));
    }

    fn mono(e: &[(usize, u8)]) -> Mono {
        let mut m = [0; crate::polyform::MAX_LABELS];
        for &(l, x) in e {
            m[l] = x;
        }
        m
    }

    #[test]
    fn legacy_full_counterexample() {
        let t = Face::full(3);
        let s = face(&[1, 2, 3]);
        let w = PolyForm::bubble(s, face(&[1, 2]))
            .unwrap()
            .wedge(&PolyForm::whitney(s, &[2, 3]).unwrap());
        assert_eq!(
            w,
            parse(s, 1, "1 * l1^1 l2^2 ^ dl3 + -1 * l1^1 l2^1 l3^1 ^ dl2")
        );
        let terms = legacy_full_terms(&w, t, 3).unwrap();
        let pulled: Vec<String> = terms.iter().map(|t| t.pulled.to_string()).collect();
        assert!(pulled.contains(&"1 ^ dl3".to_string()));
        assert!(
            pulled.contains(&"1 ^ dl2 + 1/3 ^ dl0".to_string())
                || pulled.iter().any(|p| p.contains("1/3"))
        );
        let ext = legacy_extend_full(&w, t, 3).unwrap();
        let expected = &parse(t, 1, "1 * l1^1 l2^2 ^ dl3")
            - &PolyForm::bubble(t, face(&[1, 2, 3])).unwrap().wedge(
                &(&PolyForm::dlambda(t, 2).unwrap()
                    + &PolyForm::dlambda(t, 0).unwrap().scale(&frac(1, 3))),
            );
        assert_eq!(ext, expected);
        let v1 = BaryPoint::vertex(t, 1).unwrap();
        let kappa = ext.koszul(&v1).unwrap();
        assert_eq!(kappa, PolyForm::bubble(t, t).unwrap().scale(&frac(-1, 3)));
        assert!(!space_full(t, 3, 0).unwrap().contains(&kappa));
        assert!(!space_trimmed(t, 3, 1).unwrap().contains(&ext));
        assert!(space_full(t, 3, 1).unwrap().contains(&ext));
    }

    #[test]
    fn geometric_decomposition_dimensions() {
        let t = Face::full(2);
        let g = geometric_decompose(t, Family::Full, 3, 0).unwrap();
        let check = g.check().unwrap();
        assert!(check.holds());
        let dims: Vec<usize> = check.dims.iter().map(|(_, d)| *d).collect();
        assert_eq!(dims, vec![1, 1, 1, 2, 2, 2, 1]);
        assert_eq!(check.target_dim, 10);
        let g = geometric_decompose(t, Family::Trimmed, 1, 1).unwrap();
        let check = g.check().unwrap();
        assert!(check.holds());
        let dims: Vec<usize> = check.dims.iter().map(|(_, d)| *d).collect();
        assert_eq!(dims, vec![1, 1, 1, 0]);
        let g = geometric_decompose(Face::full(3), Family::Full, 1, 3).unwrap();
        assert_eq!(g.components.len(), 1);
        assert_eq!(g.check().unwrap().target_dim, 4);
    }

    #[test]
    fn geometric_decompositions_hold() {
        for n in 1..=3 {
            let t = Face::full(n);
            for family in [Family::Full, Family::Trimmed] {
                for r in 1..=2 {
                    for k in 0..=n {
                        let g = geometric_decompose(t, family, r, k).unwrap();
                        assert!(g.check().unwrap().holds(), "n={n} {family} r={r} k={k}");
                        for comp in &g.components {
                            let alt = star_image_component(t, comp.face, family, r, k).unwrap();
                            assert!(
                                alt.same_space(&comp.span),
                                "n={n} {family} r={r} k={k} σ={}",
                                comp.face
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degree_zero_full_space_does_not_decompose() {
        let g = geometric_decompose(Face::full(1), Family::Full, 0, 0).unwrap();
        let check = g.check().unwrap();
        assert!(!check.dims_add_up);
    }

    #[test]
    fn peeling_reconstructs_polynomial_forms() {
        let mut rng = sample::rng(9);
        for n in 1..=3 {
            let t = Face::full(n);
            for k in 0..=n {
                let w = random_polyform(&mut rng, t, 2, k);
                let parts = peel_decompose(&w).unwrap();
                let mut sum = PolyForm::zero(t, k);
                for (_, local) in &parts {
                    assert!(is_trace_free(local));
                    if !local.is_zero() {
                        sum = &sum + &dot_extend(local, t).unwrap();
                    }
                }
                assert_eq!(sum, w);
            }
        }
    }

    #[test]
    fn centroid_koszul_commutes_with_projector_pullback() {
        let mut rng = sample::rng(4);
        let t = Face::full(3);
        for sigma in t.subfaces() {
            for rho in sigma.subfaces() {
                for k in 1..=rho.dim() {
                    let w = random_polyform(&mut rng, rho, 1, k);
                    let lhs = centroid_pullback(&w, sigma)
                        .unwrap()
                        .koszul(&BaryPoint::centroid(sigma, sigma).unwrap())
                        .unwrap();
                    let rhs = centroid_pullback(
                        &w.koszul(&BaryPoint::centroid(rho, rho).unwrap()).unwrap(),
                        sigma,
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs, "σ={sigma} ρ={rho} k={k}");
                }
            }
        }
    }

    #[test]
    fn centroid_koszul_commutes_with_dot_extension() {
        let mut rng = sample::rng(6);
        let t = Face::full(3);
        for tau in t.subfaces() {
            for k in 1..=tau.dim() {
                for sigma in bubble_faces(tau, k) {
                    let ks = k + sigma.dim() - tau.dim();
                    let ws = random_polyform(&mut rng, sigma, 1, ks);
                    let inner = bubble_extend(&ws, tau).unwrap();
                    let lhs = dot_extend(&inner, t)
                        .unwrap()
                        .koszul(&BaryPoint::centroid(t, sigma).unwrap())
                        .unwrap();
                    let kin = inner
                        .koszul(&BaryPoint::centroid(tau, sigma).unwrap())
                        .unwrap();
                    let rhs = dot_extend(&kin, t).unwrap();
                    assert_eq!(lhs, rhs, "τ={tau} σ={sigma} k={k}");
                }
            }
        }
    }
}

//! Checks for centroid projectors, bubble extensions and Ė.

use std::collections::BTreeMap;

use super::{commands, Case, Hooks, Outcome};
use crate::error::Result;
use crate::extension::{
    bubble_decompose, bubble_extend, bubble_faces, centroid_pullback, dot_extend, trace_free_space,
};
use crate::polyform::{mono_support, space_full, space_trimmed, Family, PolyForm, Span};
use crate::sample::{self, random_polyform};
use crate::scalar::int;
use crate::simplex::{AffineSimplexMap, BaryPoint, Face};
use crate::star::is_trace_free;

/// Triples ρ ⊆ σ ⊆ ξ of faces of `t`.
fn nested_triples(t: Face) -> Vec<(Face, Face, Face)> {
    let mut out = Vec::new();
    for xi in t.subfaces() {
        for sigma in xi.subfaces() {
            for rho in sigma.subfaces() {
                out.push((rho, sigma, xi));
            }
        }
    }
    out
}

pub(super) fn centroid_projector_compose(case: &Case, _: &Hooks) -> Result<Outcome> {
    let triples = nested_triples(Face::full(case.n));
    for &(rho, sigma, xi) in &triples {
        let outer = AffineSimplexMap::centroid_projector(sigma, rho)?;
        let composed = outer.compose(&AffineSimplexMap::centroid_projector(xi, sigma)?)?;
        if composed != AffineSimplexMap::centroid_projector(xi, rho)? {
            return Ok(Outcome::fail(
                "P_{σ,ρ}∘P_{ξ,σ} ≠ P_{ξ,ρ}",
                format!("ρ={rho} σ={sigma} ξ={xi}"),
            ));
        }
        if outer.compose(&AffineSimplexMap::inclusion(rho, sigma)?)?
            != AffineSimplexMap::identity(rho)
        {
            return Ok(Outcome::fail(
                "P_{σ,ρ}∘ι ≠ id",
                format!("ρ={rho} σ={sigma}"),
            ));
        }
    }
    Ok(Outcome::pass(format!("{} nested triples", triples.len())))
}

pub(super) fn trace_left_inverse(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (k, r) = (case.k(), case.r());
    let mut rng = sample::rng(case.seed);
    let mut count = 0;
    for (rho, sigma, xi) in nested_triples(Face::full(case.n)) {
        if rho.dim() < k {
            continue;
        }
        count += 1;
        let w = random_polyform(&mut rng, rho, r, k);
        let pulled = centroid_pullback(&w, xi)?;
        if pulled.trace(sigma)? != centroid_pullback(&w, sigma)? || pulled.trace(rho)? != w {
            return Ok(Outcome::fail(
                format!("Tr_{{ξ,σ}} P*_{{ξ,ρ}} ≠ P*_{{σ,ρ}} for ρ={rho} σ={sigma} ξ={xi}"),
                w.to_string(),
            ));
        }
    }
    Ok(Outcome::pass(format!("{count} nested triples")))
}

pub(super) fn centroid_koszul_commute(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (k, r) = (case.k(), case.r());
    let mut rng = sample::rng(case.seed);
    for sigma in Face::full(case.n).subfaces() {
        for rho in sigma.subfaces().into_iter().filter(|f| f.dim() >= k) {
            let w = random_polyform(&mut rng, rho, r, k);
            let lhs = centroid_pullback(&w, sigma)?.koszul(&BaryPoint::centroid(sigma, sigma)?)?;
            let rhs = centroid_pullback(&w.koszul(&BaryPoint::centroid(rho, rho)?)?, sigma)?;
            if lhs != rhs {
                return Ok(Outcome::fail(
                    format!("σ={sigma} ρ={rho}"),
                    format!("ω={w}; {lhs} vs {rhs}"),
                ));
            }
        }
    }
    Ok(Outcome::pass("κ_σ P* = P* κ_ρ"))
}

pub(super) fn legacy_trimmed_counterexample(_: &Case, _: &Hooks) -> Result<Outcome> {
    let ex = commands::counterexample()?;
    let t = &ex.trimmed;
    let detail = format!("E^{{3,1,−}}ω = {}", t.extension_factored);
    if t.holds() {
        Ok(Outcome::pass(detail))
    } else {
        Ok(Outcome::fail(
            detail,
            serde_json::to_string(t).expect("serializable"),
        ))
    }
}

pub(super) fn legacy_full_counterexample(_: &Case, _: &Hooks) -> Result<Outcome> {
    let ex = commands::counterexample()?;
    let f = &ex.full;
    let detail = format!("κ_v₁ E^{{3,1}}ω = {}", f.koszul);
    if f.holds() {
        Ok(Outcome::pass(detail))
    } else {
        Ok(Outcome::fail(
            detail,
            serde_json::to_string(f).expect("serializable"),
        ))
    }
}

/// Local degree and form degree of the bubble component on σ, if any.
fn bubble_local(n: usize, k: usize, r: u32, sigma: Face) -> Option<(u32, usize)> {
    let d = sigma.dim();
    let shift = d as u32 + 1;
    (r >= shift).then(|| (r - shift, k + d - n))
}

pub(super) fn bubble_extension_injective(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let t = Face::full(n);
    let mut total = 0;
    for sigma in bubble_faces(t, k) {
        let Some((rl, kl)) = bubble_local(n, k, r, sigma) else {
            continue;
        };
        let gens = space_full(sigma, rl, kl)?.basis();
        let images = gens
            .iter()
            .map(|g| bubble_extend(g, t))
            .collect::<Result<Vec<_>>>()?;
        for img in &images {
            if !is_trace_free(img) {
                return Ok(Outcome::fail(
                    format!("E̊_{sigma} image has a trace"),
                    img.to_string(),
                ));
            }
            for s in t.subfaces().into_iter().filter(|s| !s.contains(sigma)) {
                if img
                    .raw_terms()
                    .keys()
                    .any(|(_, a)| mono_support(a) & !s.mask() == 0)
                {
                    return Ok(Outcome::fail(
                        format!("E̊_{sigma} image does not vanish on {s}"),
                        img.to_string(),
                    ));
                }
            }
        }
        let span = Span::new(t, k, Family::Custom, r, images)?;
        if span.dim() != gens.len() {
            return Ok(Outcome::fail(
                format!("E̊_{sigma} is not injective"),
                format!("rank {} < {}", span.dim(), gens.len()),
            ));
        }
        total += gens.len();
    }
    Ok(Outcome::pass(format!("{total} generators")))
}

pub(super) fn bubble_bijection(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let basis = trace_free_space(Face::full(n), Family::Full, r, k)?.basis();
    for w in &basis {
        let bt = bubble_decompose(w)?;
        if bt.reassemble()? != *w {
            return Ok(Outcome::fail("reassembly differs", w.to_string()));
        }
        for (sigma, comp) in &bt.components {
            if comp.face() != *sigma || comp.k() + n - sigma.dim() != k {
                return Ok(Outcome::fail(
                    format!("component on {sigma} has the wrong type"),
                    comp.to_string(),
                ));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{} trace-free basis forms round-trip",
        basis.len()
    )))
}

fn components(w: &PolyForm) -> Result<BTreeMap<String, String>> {
    Ok(bubble_decompose(w)?
        .components
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(f, c)| (f.to_string(), c.to_string()))
        .collect())
}

pub(super) fn bubble_worked_example(_: &Case, _: &Hooks) -> Result<Outcome> {
    let t = Face::full(2);
    let e01 = Face::new(&[0, 1])?;
    let e02 = Face::new(&[0, 2])?;
    let l0phi = PolyForm::lambda(t, 0)?.wedge(&PolyForm::whitney(t, &[1, 2])?);
    let expansion = PolyForm::parse(t, 1, "1 * l0^1 l2^1 ^ dl1 + -1 * l0^1 l1^1 ^ dl2")?;
    let reassembled = &bubble_extend(&PolyForm::constant(e02, int(1)), t)?
        + &bubble_extend(&PolyForm::constant(e01, int(-1)), t)?;
    let want_expansion: BTreeMap<String, String> = [
        (e01.to_string(), "-1".to_string()),
        (e02.to_string(), "1".to_string()),
    ]
    .into();
    let want_l0phi: BTreeMap<String, String> = [
        (e01.to_string(), "1".to_string()),
        (e02.to_string(), "-1".to_string()),
    ]
    .into();
    let got_expansion = components(&expansion)?;
    let got_l0phi = components(&l0phi)?;
    let ok = reassembled == expansion
        && expansion == -&l0phi
        && got_expansion == want_expansion
        && got_l0phi == want_l0phi;
    let detail = format!(
        "λ₀λ₂dλ₁ − λ₀λ₁dλ₂ = E̊_(0,2)(1) + E̊_(0,1)(−1); with φ₁₂ = λ₁dλ₂ − λ₂dλ₁ this is −λ₀φ₁₂, \
         and λ₀φ₁₂ has components {got_l0phi:?}"
    );
    if ok {
        Ok(Outcome::pass(detail))
    } else {
        Ok(Outcome::fail(
            detail,
            format!("expansion components {got_expansion:?}"),
        ))
    }
}

pub(super) fn bubble_full_decomposition(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let t = Face::full(n);
    let target = trace_free_space(t, Family::Full, r, k)?;
    let mut spans = Vec::new();
    for sigma in bubble_faces(t, k) {
        let Some((rl, kl)) = bubble_local(n, k, r, sigma) else {
            continue;
        };
        let images = space_full(sigma, rl, kl)?
            .basis()
            .iter()
            .map(|g| bubble_extend(g, t))
            .collect::<Result<Vec<_>>>()?;
        spans.push(Span::new(t, k, Family::Custom, r, images)?);
    }
    let refs: Vec<&Span> = spans.iter().collect();
    let sum: usize = spans.iter().map(Span::dim).sum();
    let inside = spans.iter().all(|s| target.contains_span(s));
    if Span::is_direct_sum(&refs)? && sum == target.dim() && inside {
        Ok(Outcome::pass(format!(
            "{} components, dim {sum}",
            spans.len()
        )))
    } else {
        Ok(Outcome::fail(
            "bubble components do not decompose P̊_rΛ^k",
            format!(
                "component dims sum to {sum}, target {}, contained {inside}",
                target.dim()
            ),
        ))
    }
}

pub(super) fn bubble_trimmed_nonclosure(_: &Case, _: &Hooks) -> Result<Outcome> {
    let t = Face::full(2);
    let w = PolyForm::lambda(t, 0)?.wedge(&PolyForm::whitney(t, &[1, 2])?);
    let trimmed = space_trimmed(t, 2, 1)?;
    let full = space_full(t, 2, 1)?;
    if !trimmed.contains(&w) || !is_trace_free(&w) {
        return Ok(Outcome::fail(
            "λ₀φ₁₂ should be a trace-free trimmed form",
            w.to_string(),
        ));
    }
    for (sigma, comp) in bubble_decompose(&w)?
        .components
        .iter()
        .filter(|(_, c)| !c.is_zero())
    {
        let ext = bubble_extend(comp, t)?;
        if trimmed.contains(&ext) || !full.contains(&ext) {
            return Ok(Outcome::fail(format!("component on {sigma}"), ext.pretty()));
        }
    }
    Ok(Outcome::pass(
        "λ₀φ₁₂ ∈ P̊⁻₂Λ¹ but each E̊_σ component lies in P₂Λ¹ ∖ P⁻₂Λ¹",
    ))
}

pub(super) fn dot_extension_trace_inverse(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let t = Face::full(n);
    let mut count = 0;
    for tau in t.subfaces().into_iter().filter(|f| f.dim() >= k) {
        for w in trace_free_space(tau, Family::Full, r, k)?.basis() {
            count += 1;
            if dot_extend(&w, t)?.trace(tau)? != w || dot_extend(&w, tau)? != w {
                return Ok(Outcome::fail(format!("τ={tau}"), w.to_string()));
            }
        }
    }
    Ok(Outcome::pass(format!("{count} trace-free forms")))
}

pub(super) fn consistent_family(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let t = Face::full(n);
    let mut triples = 0;
    for tau in t.subfaces().into_iter().filter(|f| f.dim() >= k) {
        let inputs = trace_free_space(tau, Family::Full, r, k)?.basis();
        if inputs.is_empty() {
            continue;
        }
        for xi in t.subfaces().into_iter().filter(|x| x.contains(tau)) {
            let extended = inputs
                .iter()
                .map(|w| dot_extend(w, xi))
                .collect::<Result<Vec<_>>>()?;
            for rho in xi.subfaces().into_iter().filter(|f| f.dim() >= k) {
                triples += 1;
                for (w, ext) in inputs.iter().zip(&extended) {
                    let lhs = ext.trace(rho)?;
                    let rhs = match tau.intersect(rho) {
                        Some(m) if m.dim() >= k => dot_extend(&w.trace(m)?, rho)?,
                        _ => PolyForm::zero(rho, k),
                    };
                    if lhs != rhs {
                        return Ok(Outcome::fail(
                            format!("ρ={rho} τ={tau} ξ={xi}"),
                            format!("ω={w}; Tr Ė ω={lhs}; Ė Tr ω={rhs}"),
                        ));
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(format!("{triples} triples")))
}

pub(super) fn dot_extension_koszul(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (k, r) = (case.k(), case.r());
    let t = Face::full(case.n);
    let mut rng = sample::rng(case.seed);
    for tau in t.subfaces().into_iter().filter(|f| f.dim() >= k) {
        for sigma in bubble_faces(tau, k) {
            let ks = k + sigma.dim() - tau.dim();
            let inner = bubble_extend(&random_polyform(&mut rng, sigma, r, ks), tau)?;
            let lhs = dot_extend(&inner, t)?.koszul(&BaryPoint::centroid(t, sigma)?)?;
            let rhs = dot_extend(&inner.koszul(&BaryPoint::centroid(tau, sigma)?)?, t)?;
            if lhs != rhs {
                return Ok(Outcome::fail(
                    format!("τ={tau} σ={sigma}"),
                    format!("{lhs} vs {rhs}"),
                ));
            }
        }
    }
    Ok(Outcome::pass("κ_σ Ė = Ė κ_σ"))
}

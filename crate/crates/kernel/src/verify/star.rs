//! Checks for ⋆_T, ⋆̊_T, the isomorphisms, inner products and vector proxies.

use num_traits::{Signed, Zero};

use super::algebra::{case_simplex, sign_of};
use super::{rational_string, Case, Hooks, Outcome};
use crate::combinatorics::{binomial, enumerate_sigma};
use crate::error::{Error, Result};
use crate::extension::family_space;
use crate::extension::trace_free_space;
use crate::exterior::AltForm;
use crate::linalg::Matrix;
use crate::polyform::{space_full, Family, PolyForm, Span};
use crate::sample::{self, equilateral, lift_simplex, random_point, random_polyform};
use crate::scalar::{QuadExt, Rational};
use crate::simplex::{BaryPoint, Face, Simplex};
use crate::star::{
    compare_proxy_with_ring_star, dual_vandermonde, gram_matrix, iso_check_full, iso_check_trimmed,
    legacy_h_check, ring_inner, ring_star, vanishing_check, IsoReport, ProxyKind, StarContext,
};

fn coordinate_basis<F: crate::scalar::Field>(n: usize, k: usize) -> Result<Vec<AltForm<F>>> {
    enumerate_sigma(1, k as i64, &(1..=n).collect::<Vec<_>>())
        .iter()
        .map(|rho| AltForm::basis(n, rho))
        .collect()
}

fn quad_context(t: &Simplex<Rational>) -> Result<StarContext<QuadExt>> {
    StarContext::new(lift_simplex(t))
}

pub(super) fn legacy_h_maps(case: &Case, _: &Hooks) -> Result<Outcome> {
    let rep = legacy_h_check(case.n, case.r(), case.k())?;
    let detail = format!(
        "{} full and {} trimmed generators",
        rep.full.len(),
        rep.trimmed.len()
    );
    if rep.all_match && rep.signs_as_predicted {
        Ok(Outcome::pass(detail))
    } else {
        Ok(Outcome::fail(
            detail,
            serde_json::to_string(&rep).expect("serializable"),
        ))
    }
}

pub(super) fn star_t_bijection(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let mut rng = sample::rng(case.seed);
    let ctx = quad_context(&case_simplex(case, &mut rng))?;
    let out_basis = enumerate_sigma(1, (n - k) as i64, &(1..=n).collect::<Vec<_>>());
    let mut cols = Vec::new();
    for e in coordinate_basis::<QuadExt>(n, k)? {
        let img = ctx.star_t(&e)?;
        cols.push(
            out_basis
                .iter()
                .map(|rho| img.coeff(rho))
                .collect::<Vec<_>>(),
        );
    }
    let m = Matrix::from_columns(out_basis.len(), &cols);
    let rank = m.rank();
    let dim = binomial(n, k);
    if rank == dim {
        Ok(Outcome::pass(format!("rank {rank}")))
    } else {
        Ok(Outcome::fail(format!("rank {rank} < {dim}"), m.to_string()))
    }
}

pub(super) fn star_t_involution(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let mut rng = sample::rng(case.seed);
    let t = case_simplex(case, &mut rng);
    let ctx = quad_context(&t)?;
    let sign = QuadExt::rational(sign_of(k * (n - k)));
    for e in coordinate_basis::<QuadExt>(n, k)? {
        let twice = ctx.star_t(&ctx.star_t(&e)?)?;
        if twice != e.scale(&sign) {
            return Ok(Outcome::fail(
                format!("⋆_T⋆_T {e} on {:?}", t.vertices()),
                twice.to_string(),
            ));
        }
    }
    Ok(Outcome::pass("exact in Q(√(n+1))"))
}

pub(super) fn star_t_affine_invariance(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let mut rng = sample::rng(case.seed);
    for i in 0..case.random_simplices.max(1) {
        let t_hat = if i == 0 {
            Simplex::reference(n)
        } else {
            sample::random_simplex(&mut rng, n)
        };
        let a = sample::random_orientation_preserving(&mut rng, n);
        let t = a.image(&t_hat)?;
        let (c_hat, c_t) = (quad_context(&t_hat)?, quad_context(&t)?);
        let lin = a.linear.map(|c| QuadExt::rational(c.clone()));
        for e in coordinate_basis::<QuadExt>(n, k)? {
            let lhs = c_hat.star_t(&e.pullback(&lin)?)?;
            let rhs = c_t.star_t(&e)?.pullback(&lin)?;
            if lhs != rhs {
                return Ok(Outcome::fail(
                    format!("φ*⋆_T ≠ ⋆_T̂ φ* for map {i}"),
                    format!("ω={e}; lhs={lhs}; rhs={rhs}; A={}", a.linear),
                ));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{} affine maps",
        case.random_simplices.max(1)
    )))
}

pub(super) fn star_t_equilateral(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let Some(t) = equilateral(n) else {
        return Ok(Outcome::fail(
            "no exact equilateral simplex",
            format!("n={n}"),
        ));
    };
    let ctx = StarContext::new(t)?;
    for e in coordinate_basis::<QuadExt>(n, k)? {
        let (a, b) = (ctx.star_t(&e)?, e.hodge());
        if a != b {
            return Ok(Outcome::fail("⋆_T ≠ ⋆", format!("ω={e}; ⋆_T={a}; ⋆={b}")));
        }
    }
    Ok(Outcome::pass("matches the Hodge star"))
}

/// Vertices, the centroid and one random interior point.
fn sample_points(rng: &mut sample::SampleRng, t: Face) -> Vec<BaryPoint> {
    let mut pts: Vec<BaryPoint> = t
        .labels()
        .into_iter()
        .map(|l| BaryPoint::vertex(t, l).expect("vertex"))
        .collect();
    pts.push(BaryPoint::centroid(t, t).expect("centroid"));
    pts.push(random_point(rng, t));
    pts
}

pub(super) fn ring_star_affine_invariance(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let face = Face::full(n);
    let mut rng = sample::rng(case.seed);
    let forms = space_full(face, 1, k)?.basis();
    for i in 0..case.random_simplices.max(1) {
        let t_hat = if i == 0 {
            Simplex::reference(n)
        } else {
            sample::random_simplex(&mut rng, n)
        };
        let a = sample::random_orientation_preserving(&mut rng, n);
        let t = a.image(&t_hat)?;
        let (c_hat, c_t) = (StarContext::new(t_hat)?, StarContext::new(t)?);
        for x in sample_points(&mut rng, face) {
            for w in &forms {
                let w_t = c_t.eval_cartesian(w, &x)?;
                let w_hat = c_hat.eval_cartesian(w, &x)?;
                if w_t.pullback(&a.linear)? != w_hat {
                    return Ok(Outcome::fail(
                        "barycentric forms do not pull back",
                        w.to_string(),
                    ));
                }
                let lhs = c_t.ring_star_at(&w_t, x.coords()).pullback(&a.linear)?;
                let rhs = c_hat.ring_star_at(&w_hat, x.coords());
                if lhs != rhs {
                    return Ok(Outcome::fail(
                        format!("φ*⋆̊_T ≠ ⋆̊_T̂ φ* for map {i}"),
                        format!("ω={w}; x={:?}; lhs={lhs}; rhs={rhs}", x.coords()),
                    ));
                }
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{} affine maps on a P₁ spanning set",
        case.random_simplices.max(1)
    )))
}

pub(super) fn ring_star_cartesian(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let face = Face::full(n);
    let mut rng = sample::rng(case.seed);
    let ctx = StarContext::new(case_simplex(case, &mut rng))?;
    let w = random_polyform(&mut rng, face, 2, k);
    let starred = ring_star(&w);
    for x in sample_points(&mut rng, face) {
        let pointwise = ctx.ring_star_at(&ctx.eval_cartesian(&w, &x)?, x.coords());
        let symbolic = ctx.eval_cartesian(&starred, &x)?;
        if pointwise != symbolic {
            return Ok(Outcome::fail(
                "pointwise and barycentric ⋆̊ differ",
                format!("ω={w}; x={:?}; {pointwise} vs {symbolic}", x.coords()),
            ));
        }
    }
    Ok(Outcome::pass(
        "agree at vertices, centroid and a random point",
    ))
}

pub(super) fn ring_star_injection(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let face = Face::full(n);
    let mut rng = sample::rng(case.seed);
    for _ in 0..3 {
        let w = random_polyform(&mut rng, face, r, k);
        if w.is_zero() {
            continue;
        }
        let q = ring_inner(&w, &w)?;
        if !q.is_positive() {
            return Ok(Outcome::fail(format!("⟨ω,ω⟩ = {q}"), w.to_string()));
        }
    }
    Ok(Outcome::pass("⟨ω,ω⟩ > 0 on random forms"))
}

pub(super) fn ring_star_twice(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let face = Face::full(n);
    let mut rng = sample::rng(case.seed);
    let bubble = PolyForm::bubble(face, face)?;
    let sign = sign_of(k * (n - k));
    for _ in 0..case.random_forms {
        let w = random_polyform(&mut rng, face, 2, k);
        let lhs = ring_star(&ring_star(&w));
        let rhs = bubble.wedge(&w).scale(&sign);
        if lhs != rhs {
            return Ok(Outcome::fail("⋆̊⋆̊ω ≠ ±λ_T ω", format!("ω={w}; ⋆̊⋆̊ω={lhs}")));
        }
    }
    Ok(Outcome::pass(format!("{} random forms", case.random_forms)))
}

pub(super) fn ring_star_vanishing(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let basis = trace_free_space(Face::full(n), Family::Full, r, k)?.basis();
    for w in &basis {
        let rep = vanishing_check(w)?;
        if !rep.holds() {
            return Ok(Outcome::fail(
                "⋆̊ω does not vanish on the boundary",
                w.to_string(),
            ));
        }
    }
    Ok(Outcome::pass(format!(
        "{} trace-free basis forms",
        basis.len()
    )))
}

fn iso_outcome(rep: IsoReport) -> Outcome {
    let detail = format!(
        "dims {} → {}, image rank {}",
        rep.source_dim, rep.target_dim, rep.image_rank
    );
    if rep.holds() {
        Outcome::pass(detail)
    } else {
        Outcome::fail(detail, serde_json::to_string(&rep).expect("serializable"))
    }
}

pub(super) fn iso_full(case: &Case, _: &Hooks) -> Result<Outcome> {
    Ok(iso_outcome(iso_check_full(
        Face::full(case.n),
        case.r(),
        case.k(),
    )?))
}

pub(super) fn iso_trimmed(case: &Case, _: &Hooks) -> Result<Outcome> {
    Ok(iso_outcome(iso_check_trimmed(
        Face::full(case.n),
        case.r(),
        case.k(),
    )?))
}

pub(super) fn ring_star_surjection(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let face = Face::full(n);
    let target = trace_free_space(face, Family::Full, r, k)?;
    if target.dim() == 0 {
        return Ok(Outcome::pass("P̊_rΛ^k = 0"));
    }
    let shift = r as i64 + k as i64 - n as i64;
    if shift < 0 {
        return Ok(Outcome::fail(
            "nonzero trace-free space below the minimal degree",
            target.basis()[0].to_string(),
        ));
    }
    let images: Vec<PolyForm> = space_full(face, shift as u32, n - k)?
        .basis()
        .iter()
        .map(ring_star)
        .collect();
    let image = Span::new(face, k, Family::Custom, r, images)?;
    for b in target.basis() {
        if !image.contains(&b) {
            return Ok(Outcome::fail(
                "trace-free form outside the ⋆̊ image",
                b.to_string(),
            ));
        }
    }
    Ok(Outcome::pass(format!(
        "P̊_rΛ^k (dim {}) ⊆ ⋆̊ P_{shift}Λ^{}",
        target.dim(),
        n - k
    )))
}

pub(super) fn ring_inner_gram(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let basis = family_space(Face::full(n), case.family(), r, k)?.basis();
    let g = gram_matrix(&basis)?;
    if !g.is_symmetric() {
        return Ok(Outcome::fail("Gram matrix is not symmetric", g.to_string()));
    }
    let minors = g.leading_minors();
    if let Some(i) = minors.iter().position(|m| !m.is_positive()) {
        return Ok(Outcome::fail(
            format!("leading minor {} is {}", i + 1, rational_string(&minors[i])),
            g.to_string(),
        ));
    }
    Ok(Outcome::pass(format!(
        "{0}×{0}, positive definite",
        basis.len()
    )))
}

pub(super) fn dual_unisolvence(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r, family) = (case.n, case.k(), case.r(), case.family());
    let face = Face::full(n);
    match dual_vandermonde(face, family, r, k) {
        Ok(rep) => {
            let size = rep.vandermonde.rows();
            let square = rep.vandermonde.rows() == rep.vandermonde.cols();
            let det = rep.determinant.clone().filter(|d| !d.is_zero());
            let minors_ok = rep.gram.is_symmetric()
                && rep.gram.leading_minors().iter().all(|m| m.is_positive());
            match det {
                Some(d) if square && rep.invertible && minors_ok => Ok(Outcome::pass(format!(
                    "{size}×{size}, det {}",
                    rational_string(&d)
                ))),
                _ => Ok(Outcome::fail(
                    "Vandermonde singular or Gram not positive definite",
                    rep.vandermonde.to_string(),
                )),
            }
        }
        Err(Error::EmptyDualSpace { .. }) => {
            let primal = trace_free_space(face, family, r, k)?;
            if primal.dim() == 0 {
                Ok(Outcome::pass(
                    "trace-free space is zero; no functionals needed",
                ))
            } else {
                Ok(Outcome::fail(
                    "no dual functionals for a nonzero space",
                    primal.basis()[0].to_string(),
                ))
            }
        }
        Err(e) => Err(e),
    }
}

fn proxy_check(case: &Case, kind: ProxyKind, expected: &str) -> Result<Outcome> {
    let n = case.n;
    let face = Face::full(n);
    let mut rng = sample::rng(case.seed);
    let ctx = StarContext::new(case_simplex(case, &mut rng))?;
    let u: Vec<PolyForm> = (0..n)
        .map(|_| random_polyform(&mut rng, face, 1, 0))
        .collect();
    let mut samples = vec![BaryPoint::centroid(face, face)?];
    samples.extend((0..3).map(|_| random_point(&mut rng, face)));
    let cmp = compare_proxy_with_ring_star(&ctx, &u, kind, &samples)?;
    let detail = format!("ratio proxy/⋆̊ = {}", cmp.ratio.as_deref().unwrap_or("none"));
    if cmp.boundary_condition_holds && cmp.ratio.as_deref() == Some(expected) {
        Ok(Outcome::pass(detail))
    } else {
        let field: Vec<String> = u.iter().map(|c| c.to_string()).collect();
        Ok(Outcome::fail(detail, format!("u=({})", field.join("; "))))
    }
}

pub(super) fn vector_proxy_normal_free(case: &Case, _: &Hooks) -> Result<Outcome> {
    proxy_check(case, ProxyKind::NormalFree, "1")
}

pub(super) fn vector_proxy_tangent_free(case: &Case, _: &Hooks) -> Result<Outcome> {
    proxy_check(
        case,
        ProxyKind::TangentFree,
        if case.n == 2 { "-1" } else { "1" },
    )
}

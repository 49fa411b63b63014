//! Checks for the geometric decompositions and the two-cell continuity demo.

use super::two_cell::{two_cell_continuity as continuity, TwoCellMesh};
use super::{Case, Hooks, Outcome};
use crate::error::Result;
use crate::extension::{dot_extend, geometric_decompose, peel_decompose, star_image_component};
use crate::polyform::{Family, PolyForm};
use crate::sample::{self, random_polyform};
use crate::simplex::Face;
use crate::star::is_trace_free;

pub(super) fn geometric_decomposition_all(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let t = Face::full(n);
    let mut rng = sample::rng(case.seed);
    let w = random_polyform(&mut rng, t, r, k);
    let parts = peel_decompose(&w)?;
    let mut sum = PolyForm::zero(t, k);
    for (face, local) in &parts {
        if !is_trace_free(local) {
            return Ok(Outcome::fail(
                format!("piece on {face} has a trace"),
                local.to_string(),
            ));
        }
        if !local.is_zero() {
            sum = &sum + &dot_extend(local, t)?;
        }
    }
    if sum == w {
        Ok(Outcome::pass(format!("{} faces", parts.len())))
    } else {
        Ok(Outcome::fail(
            "Σ Ė_σ pieces ≠ ω",
            format!("ω={w}; sum={sum}"),
        ))
    }
}

fn decomposition(case: &Case, family: Family) -> Result<Outcome> {
    let g = geometric_decompose(Face::full(case.n), family, case.r(), case.k())?;
    let check = g.check()?;
    let dims: Vec<String> = check.dims.iter().map(|(f, d)| format!("{f}:{d}")).collect();
    let detail = format!("target {} = {}", check.target_dim, dims.join(" + "));
    if check.holds() {
        Ok(Outcome::pass(detail))
    } else {
        Ok(Outcome::fail(
            detail,
            serde_json::to_string(&check).expect("serializable"),
        ))
    }
}

pub(super) fn geometric_decomposition_full(case: &Case, _: &Hooks) -> Result<Outcome> {
    decomposition(case, Family::Full)
}

pub(super) fn geometric_decomposition_trimmed(case: &Case, _: &Hooks) -> Result<Outcome> {
    decomposition(case, Family::Trimmed)
}

pub(super) fn star_image_components(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r, family) = (case.n, case.k(), case.r(), case.family());
    let t = Face::full(n);
    let g = geometric_decompose(t, family, r, k)?;
    for comp in &g.components {
        let alt = star_image_component(t, comp.face, family, r, k)?;
        if !alt.same_space(&comp.span) {
            return Ok(Outcome::fail(
                format!("component on {} differs", comp.face),
                format!("dims {} vs {}", alt.dim(), comp.span.dim()),
            ));
        }
    }
    Ok(Outcome::pass(format!("{} components", g.components.len())))
}

pub(super) fn two_cell_continuity(case: &Case, _: &Hooks) -> Result<Outcome> {
    let mesh = TwoCellMesh::reference(case.n)?;
    let rep = continuity(&mesh, case.k(), case.r(), case.family())?;
    let detail = format!(
        "{} facet forms, {} off-facet forms",
        rep.facet_forms, rep.interior_forms
    );
    if rep.holds() {
        Ok(Outcome::pass(detail))
    } else {
        let mut w = rep.mismatches.clone();
        w.extend(rep.nonzero_interior_traces.iter().cloned());
        Ok(Outcome::fail(detail, w.join("; ")))
    }
}

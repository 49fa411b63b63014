//! The statement table and the case sweeps each statement runs over.

use std::sync::OnceLock;

use super::{
    algebra, decomposition, extension, star, Case, Config, Hooks, Outcome, Sample, SimplexSource,
};
use crate::error::Result;

pub type CheckFn = fn(&Case, &Hooks) -> Result<Outcome>;

pub struct Statement {
    pub name: &'static str,
    pub about: &'static str,
    pub(super) cases: fn(&Config) -> Vec<Case>,
    pub(super) check: CheckFn,
}

fn per_n(ns: impl IntoIterator<Item = usize>) -> Vec<Case> {
    ns.into_iter().map(Case::new).collect()
}

fn dims(cfg: &Config) -> Vec<Case> {
    per_n(cfg.dims())
}

fn dims_within(cfg: &Config, lo: usize, hi: usize) -> Vec<Case> {
    per_n(cfg.dims().filter(|n| (lo..=hi).contains(n)))
}

fn with_k(cases: Vec<Case>, keep: impl Fn(usize, usize) -> bool) -> Vec<Case> {
    let mut out = Vec::new();
    for c in cases {
        for k in 0..=c.n {
            if keep(c.n, k) {
                out.push(Case {
                    k: Some(k),
                    ..c.clone()
                });
            }
        }
    }
    out
}

fn all_k(cases: Vec<Case>) -> Vec<Case> {
    with_k(cases, |_, _| true)
}

fn with_r(cases: Vec<Case>, cfg: &Config, lo: u32, cap: Option<u32>) -> Vec<Case> {
    let mut out = Vec::new();
    for c in cases {
        let hi = cap.map_or(cfg.max_r_for(c.n), |cap| cap.min(cfg.max_r_for(c.n)));
        for r in lo..=hi {
            out.push(Case {
                r: Some(r),
                ..c.clone()
            });
        }
    }
    out
}

fn with_family(cases: Vec<Case>, cfg: &Config) -> Vec<Case> {
    let mut out = Vec::new();
    for c in cases {
        for &f in &cfg.families {
            out.push(Case {
                family: Some(f),
                ..c.clone()
            });
        }
    }
    out
}

/// Trimmed spaces need `r ≥ 1`.
fn drop_trimmed_r0(cases: Vec<Case>) -> Vec<Case> {
    cases
        .into_iter()
        .filter(|c| !(c.family == Some(crate::polyform::Family::Trimmed) && c.r == Some(0)))
        .collect()
}

fn with_samples(cases: Vec<Case>, cfg: &Config) -> Vec<Case> {
    let mut samples = vec![Sample::Reference];
    if cfg.simplex_source == SimplexSource::RandomRational {
        samples.extend((0..cfg.random_simplices).map(Sample::Random));
    }
    let mut out = Vec::new();
    for c in cases {
        for &s in &samples {
            out.push(Case {
                sample: s,
                ..c.clone()
            });
        }
    }
    out
}

fn single(cfg: &Config, n: usize) -> Vec<Case> {
    if cfg.dims().contains(&n) {
        vec![Case::new(n)]
    } else {
        vec![]
    }
}

macro_rules! statement {
    ($name:literal, $about:literal, $cases:expr, $check:path) => {
        Statement {
            name: $name,
            about: $about,
            cases: $cases,
            check: $check,
        }
    };
}

pub fn statements() -> &'static [Statement] {
    static TABLE: OnceLock<Vec<Statement>> = OnceLock::new();
    TABLE.get_or_init(build)
}

fn build() -> Vec<Statement> {
    vec![
        // algebraic preliminaries
        statement!(
            "increasing_maps",
            "complements, signs, composition and removal of increasing maps",
            dims,
            algebra::increasing_maps
        ),
        statement!(
            "wedge_algebra",
            "wedge product is associative and graded commutative",
            |c| all_k(dims(c)),
            algebra::wedge_algebra
        ),
        statement!(
            "interior_product",
            "interior product is an antiderivation and squares to zero",
            |c| with_k(dims(c), |_, k| k >= 1),
            algebra::interior_product
        ),
        statement!(
            "pullback",
            "linear pullback respects wedge products and composition",
            |c| all_k(dims(c)),
            algebra::pullback
        ),
        statement!(
            "hodge_involution",
            "⋆⋆ = (−1)^{k(n−k)} on every coordinate form, n ≤ 4",
            |c| all_k(per_n(c.min_n..=c.max_n.max(4))),
            algebra::hodge_involution
        ),
        statement!(
            "hodge_defining_relation",
            "a ∧ ⋆b = ⟨a, b⟩ vol on coordinate forms",
            |c| all_k(per_n(c.min_n..=c.max_n.max(4))),
            algebra::hodge_defining_relation
        ),
        statement!(
            "exterior_derivative",
            "d∘d = 0 and the Leibniz rule on polynomial forms",
            |c| with_r(all_k(dims(c)), c, 0, None),
            algebra::exterior_derivative
        ),
        statement!(
            "koszul_pullback_commute",
            "κ commutes with pullback along affine maps of the simplex; κ∘κ = 0",
            |c| with_r(with_k(dims(c), |_, k| k >= 1), c, 0, None),
            algebra::koszul_pullback_commute
        ),
        statement!(
            "oriented_simplex_identity",
            "volume identity for positively oriented simplices",
            |c| with_samples(dims(c), c),
            algebra::oriented_simplex_identity
        ),
        statement!(
            "whitney_forms",
            "Whitney forms: derivative, vanishing traces and span dimension",
            |c| all_k(dims(c)),
            algebra::whitney_forms
        ),
        statement!(
            "trimmed_koszul_characterization",
            "P⁻_rΛ^k = P_{r−1}Λ^k + κ P_{r−1}Λ^{k+1} with the expected dimension",
            |c| with_r(all_k(dims(c)), c, 1, None),
            algebra::trimmed_koszul_characterization
        ),
        // stars
        statement!(
            "legacy_h_maps",
            "legacy maps h^k and h^{k,−} agree with ±⋆̊ on generators",
            |c| with_r(all_k(dims(c)), c, 0, None),
            star::legacy_h_maps
        ),
        statement!(
            "star_t_bijection",
            "⋆_T is a bijection on algebraic k-forms",
            |c| with_samples(all_k(dims(c)), c),
            star::star_t_bijection
        ),
        statement!(
            "star_t_affine_invariance",
            "⋆_T commutes with pullback along orientation-preserving affine maps",
            |c| all_k(dims(c)),
            star::star_t_affine_invariance
        ),
        statement!(
            "star_t_equilateral",
            "⋆_T equals the Hodge star on the equilateral simplex",
            |c| all_k(dims_within(c, 1, 3)),
            star::star_t_equilateral
        ),
        statement!(
            "star_t_involution",
            "⋆_T∘⋆_T = (−1)^{k(n−k)} in Q(√(n+1))",
            |c| with_samples(all_k(dims(c)), c),
            star::star_t_involution
        ),
        statement!(
            "ring_star_affine_invariance",
            "⋆̊ commutes with pullback along affine maps, pointwise in Cartesian coordinates",
            |c| all_k(dims(c)),
            star::ring_star_affine_invariance
        ),
        statement!(
            "ring_star_cartesian",
            "the Cartesian pointwise formula for ⋆̊ matches the barycentric one",
            |c| with_samples(all_k(dims(c)), c),
            star::ring_star_cartesian
        ),
        statement!(
            "ring_star_injection",
            "⋆̊ is injective: ∫ ω ∧ ⋆̊ω > 0 for ω ≠ 0",
            |c| with_r(all_k(dims(c)), c, 0, None),
            star::ring_star_injection
        ),
        statement!(
            "ring_star_twice",
            "⋆̊⋆̊ω = (−1)^{k(n−k)} λ_T ω",
            |c| all_k(dims(c)),
            star::ring_star_twice
        ),
        statement!(
            "ring_star_vanishing",
            "⋆̊ω vanishes on the boundary",
            |c| with_r(all_k(dims(c)), c, 0, None),
            star::ring_star_vanishing
        ),
        statement!(
            "iso_full",
            "⋆̊: P_rΛ^k → P̊⁻_{r+k+1}Λ^{n−k} is an isomorphism",
            |c| with_r(all_k(dims(c)), c, 0, Some(3)),
            star::iso_full
        ),
        statement!(
            "iso_trimmed",
            "⋆̊: P⁻_rΛ^k → P̊_{r+k}Λ^{n−k} is an isomorphism",
            |c| with_r(all_k(dims(c)), c, 1, Some(3)),
            star::iso_trimmed
        ),
        statement!(
            "ring_star_surjection",
            "every trace-free polynomial form is ⋆̊ of a polynomial form",
            |c| with_r(all_k(dims(c)), c, 0, None),
            star::ring_star_surjection
        ),
        statement!(
            "ring_inner_gram",
            "⋆̊ Gram matrices are symmetric positive definite",
            |c| drop_trimmed_r0(with_family(with_r(all_k(dims(c)), c, 0, Some(3)), c)),
            star::ring_inner_gram
        ),
        statement!(
            "dual_unisolvence",
            "dual functionals ∫ · ∧ η are unisolvent on trace-free spaces",
            |c| drop_trimmed_r0(with_family(with_r(all_k(dims(c)), c, 0, None), c)),
            star::dual_unisolvence
        ),
        statement!(
            "vector_proxy_normal_free",
            "normal-free proxy of ⋆̊ on 1-forms / (n−1)-forms",
            |c| with_samples(dims_within(c, 2, 3), c),
            star::vector_proxy_normal_free
        ),
        statement!(
            "vector_proxy_tangent_free",
            "tangent-free proxy of ⋆̊",
            |c| with_samples(dims_within(c, 2, 3), c),
            star::vector_proxy_tangent_free
        ),
        // extensions
        statement!(
            "centroid_projector_compose",
            "P_{σ,ρ}∘P_{ξ,σ} = P_{ξ,ρ} and P_{σ,ρ}∘ι = id",
            dims,
            extension::centroid_projector_compose
        ),
        statement!(
            "trace_left_inverse",
            "Tr_{ξ,σ}∘P*_{ξ,ρ} = P*_{σ,ρ}",
            |c| with_r(all_k(dims(c)), c, 0, None),
            extension::trace_left_inverse
        ),
        statement!(
            "centroid_koszul_commute",
            "P*_{σ,ρ} κ_ρ = κ_σ P*_{σ,ρ} with centroid Koszul operators",
            |c| with_r(with_k(dims(c), |_, k| k >= 1), c, 0, None),
            extension::centroid_koszul_commute
        ),
        statement!(
            "legacy_trimmed_counterexample",
            "the legacy trimmed extension leaves P₂Λ¹",
            |c| single(c, 3),
            extension::legacy_trimmed_counterexample
        ),
        statement!(
            "legacy_full_counterexample",
            "the legacy full extension leaves P⁻₃Λ¹",
            |c| single(c, 3),
            extension::legacy_full_counterexample
        ),
        statement!(
            "bubble_extension_injective",
            "E̊_σ is injective into trace-free forms and vanishes on faces not containing σ",
            |c| with_r(all_k(dims(c)), c, 0, None),
            extension::bubble_extension_injective
        ),
        statement!(
            "bubble_bijection",
            "E̊ ∘ (bubble decomposition) is the identity on P̊_rΛ^k",
            |c| with_r(all_k(dims(c)), c, 0, None),
            extension::bubble_bijection
        ),
        statement!(
            "bubble_worked_example",
            "bubble components of λ₀φ₁₂ on the triangle",
            |c| single(c, 2),
            extension::bubble_worked_example
        ),
        statement!(
            "bubble_full_decomposition",
            "P̊_rΛ^k = ⊕_σ E̊_σ P_{r−dim σ−1}Λ^{k−n+dim σ}",
            |c| with_r(all_k(dims(c)), c, 1, None),
            extension::bubble_full_decomposition
        ),
        statement!(
            "bubble_trimmed_nonclosure",
            "bubble components of a trimmed form need not be trimmed",
            |c| single(c, 2),
            extension::bubble_trimmed_nonclosure
        ),
        statement!(
            "dot_extension_trace_inverse",
            "Tr_τ Ė_{τ,ξ} = id and Ė_{τ,τ} = id on trace-free forms",
            |c| with_r(all_k(dims(c)), c, 0, None),
            extension::dot_extension_trace_inverse
        ),
        statement!(
            "consistent_family",
            "Tr_ρ Ė_{τ,ξ} ω = Ė_{τ∩ρ,ρ} Tr_{τ∩ρ} ω for all nested faces",
            |c| with_r(all_k(dims(c)), c, 0, Some(3)),
            extension::consistent_family
        ),
        statement!(
            "dot_extension_koszul",
            "centroid Koszul operators commute with Ė",
            |c| with_r(with_k(dims(c), |_, k| k >= 1), c, 0, None),
            extension::dot_extension_koszul
        ),
        // decompositions
        statement!(
            "geometric_decomposition_all",
            "every polynomial form is Σ_σ Ė_σ of trace-free pieces",
            |c| with_r(all_k(dims(c)), c, 0, None),
            decomposition::geometric_decomposition_all
        ),
        statement!(
            "geometric_decomposition_full",
            "P_rΛ^k = ⊕_σ Ė_σ P̊_rΛ^k(σ)",
            |c| with_r(all_k(dims(c)), c, 1, Some(3)),
            decomposition::geometric_decomposition_full
        ),
        statement!(
            "geometric_decomposition_trimmed",
            "P⁻_rΛ^k = ⊕_σ Ė_σ P̊⁻_rΛ^k(σ), extensions stay trimmed",
            |c| with_r(all_k(dims(c)), c, 1, Some(3)),
            decomposition::geometric_decomposition_trimmed
        ),
        statement!(
            "star_image_components",
            "components equal Ė_σ ⋆̊_σ of unrestricted spaces on σ",
            |c| with_family(with_r(all_k(dims(c)), c, 1, Some(3)), c),
            decomposition::star_image_components
        ),
        statement!(
            "two_cell_continuity",
            "traces of Ė-extended basis forms agree across a shared facet",
            |c| drop_trimmed_r0(with_family(
                with_r(all_k(dims_within(c, 2, 3)), c, 1, Some(3)),
                c
            )),
            decomposition::two_cell_continuity
        ),
    ]
}

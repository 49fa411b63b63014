//! Data behind the `counterexample`, `basis` and `gram` subcommands.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::rational_string;
use crate::combinatorics::{mask_labels, MultiIndex};
use crate::error::{Error, Result};
use crate::extension::{
    family_space, geometric_decompose, legacy_extend_full, legacy_extend_trimmed,
    legacy_extend_trimmed_terms, legacy_full_terms, whitney_sum, WhitneyTerm,
};
use crate::polyform::{
    join_signed, mono_pretty, space_full, space_trimmed, subscript, Family, Mono, PolyForm,
    MAX_LABELS,
};
use crate::scalar::{frac, int, Rational};
use crate::simplex::{AffineSimplexMap, BaryPoint, Face};
use crate::star::gram_matrix;

fn mono(exps: &[(usize, u8)]) -> Mono {
    let mut m = [0; MAX_LABELS];
    for &(l, e) in exps {
        m[l] = e;
    }
    m
}

/// Drops the spaces around signs, for sums written inside parentheses.
fn compact(s: &str) -> String {
    s.replace(" + ", "+").replace(" − ", "−")
}

fn whitney_symbol(tau: &[usize]) -> String {
    let idx: String = tau.iter().map(|&l| subscript(l)).collect();
    format!("φ{idx}")
}

/// `λ^α(φ_τ + ...)`, grouping consecutive terms with the same monomial.
pub fn render_whitney(terms: &[WhitneyTerm]) -> String {
    let mut groups: Vec<(Mono, Vec<(Rational, String)>)> = Vec::new();
    for t in terms {
        match groups.last_mut() {
            Some((a, items)) if *a == t.alpha => {
                items.push((t.coeff.clone(), whitney_symbol(&t.tau)))
            }
            _ => groups.push((t.alpha, vec![(t.coeff.clone(), whitney_symbol(&t.tau))])),
        }
    }
    let outer: Vec<(Rational, String)> = groups
        .into_iter()
        .map(|(a, items)| {
            if items.len() == 1 {
                let (c, s) = items.into_iter().next().expect("one item");
                (c, format!("{}{s}", mono_pretty(&a)))
            } else {
                (
                    Rational::from_integer(1.into()),
                    format!("{}({})", mono_pretty(&a), compact(&join_signed(&items))),
                )
            }
        })
        .collect();
    join_signed(&outer)
}

fn dlambda_symbol(l: usize) -> String {
    format!("dλ{}", subscript(l))
}

/// `Σ_i M[j,i] dλ_i` for the pulled-back dλ_j, diagonal term first.
fn pulled_one_form(proj: &AffineSimplexMap, t: Face, j: usize) -> String {
    let mut items = vec![(proj.entry(j, j), dlambda_symbol(j))];
    for i in t.labels().into_iter().filter(|&i| i != j) {
        let c = proj.entry(j, i);
        if !c.is_zero() {
            items.push((c, dlambda_symbol(i)));
        }
    }
    let s = compact(&join_signed(&items));
    if items.len() > 1 {
        format!("({s})")
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrimmedCounterexample {
    pub omega: String,
    pub omega_trace_free_in_p2: bool,
    pub expansion: String,
    pub expansion_matches: bool,
    pub extension_factored: String,
    pub extension: String,
    /// The solver's own expansion gives the same extension.
    pub well_defined: bool,
    pub in_p2: bool,
    pub in_trimmed_p3: bool,
}

impl TrimmedCounterexample {
    pub fn holds(&self) -> bool {
        self.omega_trace_free_in_p2
            && self.expansion_matches
            && self.well_defined
            && !self.in_p2
            && self.in_trimmed_p3
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectorPullback {
    /// Weights of the projector, one per vertex of σ.
    pub alpha: String,
    pub form: String,
    pub pulled: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FullCounterexample {
    pub omega_whitney: String,
    pub omega: String,
    pub pullbacks: Vec<ProjectorPullback>,
    pub extension_factored: String,
    pub extension: String,
    pub in_full_p3: bool,
    pub in_trimmed_p3: bool,
    pub koszul_center: String,
    pub koszul: String,
    pub koszul_matches: bool,
    pub koszul_in_p3: bool,
}

impl FullCounterexample {
    pub fn holds(&self) -> bool {
        self.in_full_p3 && !self.in_trimmed_p3 && self.koszul_matches && !self.koszul_in_p3
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexamples {
    pub host: String,
    pub face: String,
    pub trimmed: TrimmedCounterexample,
    pub full: FullCounterexample,
}

impl Counterexamples {
    pub fn holds(&self) -> bool {
        self.trimmed.holds() && self.full.holds()
    }
}

/// Both incompatibility examples for the legacy extensions from σ = (1,2,3)
/// into the tetrahedron.
pub fn counterexample() -> Result<Counterexamples> {
    let t = Face::full(3);
    let s = Face::new(&[1, 2, 3])?;

    let w = PolyForm::parse(s, 1, "1 * l1^1 l2^1 ^ dl3")?;
    let a12 = mono(&[(1, 1), (2, 1)]);
    let stated = vec![
        WhitneyTerm {
            coeff: int(1),
            alpha: a12,
            tau: vec![2, 3],
        },
        WhitneyTerm {
            coeff: int(1),
            alpha: a12,
            tau: vec![1, 3],
        },
    ];
    let ext = legacy_extend_trimmed_terms(&stated, t, 1)?;
    let local_tf = space_full(s, 2, 1)?.trace_free_subspace();
    let trimmed = TrimmedCounterexample {
        omega: w.pretty(),
        omega_trace_free_in_p2: local_tf.contains(&w),
        expansion: render_whitney(&stated),
        expansion_matches: whitney_sum(&stated, s, 1)? == w,
        extension_factored: render_whitney(&stated),
        extension: ext.pretty(),
        well_defined: legacy_extend_trimmed(&w, t, 3)? == ext,
        in_p2: space_full(t, 2, 1)?.contains(&ext),
        in_trimmed_p3: space_trimmed(t, 3, 1)?.contains(&ext),
    };

    let phi = vec![WhitneyTerm {
        coeff: int(1),
        alpha: a12,
        tau: vec![2, 3],
    }];
    let w = whitney_sum(&phi, s, 1)?;
    let mut terms = legacy_full_terms(&w, t, 3)?;
    // leading positive terms first, as the example is usually written
    terms.sort_by_key(|term| term.coeff.is_negative());
    let mut pullbacks = Vec::new();
    let mut factored = Vec::new();
    for term in &terms {
        let alpha = MultiIndex::new(s.labels().iter().map(|&l| term.alpha[l] as u32).collect());
        let proj = AffineSimplexMap::weighted_projector(t, s, &alpha)?;
        let rho = mask_labels(term.rho);
        let form: String = rho.iter().map(|&l| dlambda_symbol(l)).collect();
        let pulled: String = rho.iter().map(|&j| pulled_one_form(&proj, t, j)).collect();
        pullbacks.push(ProjectorPullback {
            alpha: alpha.to_string(),
            form,
            pulled: pulled
                .trim_start_matches('(')
                .trim_end_matches(')')
                .to_string(),
        });
        factored.push((
            term.coeff.clone(),
            format!("{}{pulled}", mono_pretty(&term.alpha)),
        ));
    }
    let ext = legacy_extend_full(&w, t, 3)?;
    let v1 = BaryPoint::vertex(t, 1)?;
    let kappa = ext.koszul(&v1)?;
    let expected_kappa = PolyForm::bubble(t, t)?.scale(&frac(-1, 3));
    let full = FullCounterexample {
        omega_whitney: render_whitney(&phi),
        omega: {
            let mut items: Vec<(Rational, String)> = terms
                .iter()
                .map(|term| {
                    let body: String = mono_pretty(&term.alpha)
                        + &mask_labels(term.rho)
                            .iter()
                            .map(|&l| dlambda_symbol(l))
                            .collect::<String>();
                    (term.coeff.clone(), body)
                })
                .collect();
            items.sort_by_key(|(c, _)| c.is_negative());
            join_signed(&items)
        },
        pullbacks,
        extension_factored: join_signed(&factored),
        extension: ext.pretty(),
        in_full_p3: space_full(t, 3, 1)?.contains(&ext),
        in_trimmed_p3: space_trimmed(t, 3, 1)?.contains(&ext),
        koszul_center: "v₁".to_string(),
        koszul: kappa.pretty(),
        koszul_matches: kappa == expected_kappa,
        koszul_in_p3: space_full(t, 3, 0)?.contains(&kappa),
    };
    Ok(Counterexamples {
        host: t.to_string(),
        face: s.to_string(),
        trimmed,
        full,
    })
}

fn verdict(member: bool) -> &'static str {
    if member {
        "∈"
    } else {
        "∉"
    }
}

/// Human-readable transcript of both examples.
pub fn render_counterexample(ex: &Counterexamples) -> String {
    let mut out = String::new();
    let tr = &ex.trimmed;
    let fu = &ex.full;
    let _ = writeln!(out, "T = {}, σ = {}", ex.host, ex.face);
    let _ = writeln!(out);
    let _ = writeln!(out, "Trimmed extension E^{{3,1,−}}_{{σ,T}}");
    let _ = writeln!(
        out,
        "  ω = {} {} P̊₂Λ¹(f_σ)",
        tr.omega,
        verdict(tr.omega_trace_free_in_p2)
    );
    let _ = writeln!(
        out,
        "  ω = {} (expansion checked: {})",
        tr.expansion, tr.expansion_matches
    );
    let _ = writeln!(out, "  E^{{3,1,−}}ω = {}", tr.extension_factored);
    let _ = writeln!(out, "             = {}", tr.extension);
    let _ = writeln!(
        out,
        "  independent of the chosen expansion: {}",
        tr.well_defined
    );
    let _ = writeln!(out, "  E^{{3,1,−}}ω {} P₂Λ¹(T)", verdict(tr.in_p2));
    let _ = writeln!(out, "  E^{{3,1,−}}ω {} P⁻₃Λ¹(T)", verdict(tr.in_trimmed_p3));
    let _ = writeln!(out);
    let _ = writeln!(out, "Full extension E^{{3,1}}_{{σ,T}}");
    let _ = writeln!(out, "  ω = {} = {}", fu.omega_whitney, fu.omega);
    for p in &fu.pullbacks {
        let _ = writeln!(out, "  P*_{{T,σ,{}}} {} = {}", p.alpha, p.form, p.pulled);
    }
    let _ = writeln!(out, "  E^{{3,1}}ω = {}", fu.extension_factored);
    let _ = writeln!(out, "           = {}", fu.extension);
    let _ = writeln!(out, "  E^{{3,1}}ω {} P₃Λ¹(T)", verdict(fu.in_full_p3));
    let _ = writeln!(out, "  E^{{3,1}}ω {} P⁻₃Λ¹(T)", verdict(fu.in_trimmed_p3));
    let _ = writeln!(out, "  κ_{} E^{{3,1}}ω = {}", fu.koszul_center, fu.koszul);
    let _ = writeln!(
        out,
        "  κ_{} E^{{3,1}}ω {} P₃Λ⁰(T)",
        fu.koszul_center,
        verdict(fu.koszul_in_p3)
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "verdict: {}",
        if ex.holds() {
            "reproduced"
        } else {
            "NOT reproduced"
        }
    );
    out
}

fn check_inputs(n: usize, k: usize) -> Result<()> {
    if !(1..=4).contains(&n) {
        return Err(Error::InvalidInput(format!("n = {n} outside 1..=4")));
    }
    if k > n {
        return Err(Error::InvalidInput(format!("{k}-forms in dimension {n}")));
    }
    Ok(())
}

fn sweep_family(family: Family) -> Result<Family> {
    match family {
        Family::Full | Family::Trimmed => Ok(family),
        f => Err(Error::InvalidInput(format!(
            "family must be full or trimmed, not {f}"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisComponent {
    pub face: String,
    pub dim: usize,
    /// Trace-free basis on the face, in the face's labels.
    pub local: Vec<String>,
    /// Their Ė-extensions to the whole simplex.
    pub forms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisTable {
    pub n: usize,
    pub k: usize,
    pub r: u32,
    pub family: Family,
    pub target_dim: usize,
    pub direct_sum: bool,
    /// Total dimension contributed by faces of each dimension.
    pub dims_by_face_dim: Vec<usize>,
    pub components: Vec<BasisComponent>,
}

/// Geometrically decomposed basis of `P_rΛ^k` or `P⁻_rΛ^k` on the n-simplex.
pub fn basis_table(n: usize, k: usize, r: u32, family: Family) -> Result<BasisTable> {
    check_inputs(n, k)?;
    let family = sweep_family(family)?;
    if r == 0 {
        return Err(Error::InvalidInput(
            "geometric decompositions need r ≥ 1".into(),
        ));
    }
    let g = geometric_decompose(Face::full(n), family, r, k)?;
    let check = g.check()?;
    let mut by_dim = vec![0; n + 1 - k];
    let components = g
        .components
        .iter()
        .map(|c| {
            by_dim[c.face.dim() - k] += c.span.dim();
            BasisComponent {
                face: c.face.to_string(),
                dim: c.span.dim(),
                local: c.local.iter().map(PolyForm::to_string).collect(),
                forms: c
                    .span
                    .generators()
                    .iter()
                    .map(PolyForm::to_string)
                    .collect(),
            }
        })
        .collect();
    Ok(BasisTable {
        n,
        k,
        r,
        family,
        target_dim: check.target_dim,
        direct_sum: check.direct_sum && check.dims_add_up,
        dims_by_face_dim: by_dim,
        components,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramTable {
    pub n: usize,
    pub k: usize,
    pub r: u32,
    pub family: Family,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub symmetric: bool,
    pub leading_minors: Vec<String>,
    pub positive_definite: bool,
}

/// ⋆̊ Gram matrix ∫ b_i ∧ ⋆̊ b_j on the basis of `P_rΛ^k` or `P⁻_rΛ^k`.
pub fn gram_table(n: usize, k: usize, r: u32, family: Family) -> Result<GramTable> {
    check_inputs(n, k)?;
    let family = sweep_family(family)?;
    let basis = family_space(Face::full(n), family, r, k)?.basis();
    let g = gram_matrix(&basis)?;
    let minors = g.leading_minors();
    Ok(GramTable {
        n,
        k,
        r,
        family,
        basis: basis.iter().map(PolyForm::to_string).collect(),
        gram: g
            .to_rows()
            .iter()
            .map(|row| row.iter().map(rational_string).collect())
            .collect(),
        symmetric: g.is_symmetric(),
        positive_definite: minors.iter().all(|m| m.is_positive()),
        leading_minors: minors.iter().map(rational_string).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_strings() {
        let ex = counterexample().unwrap();
        assert!(ex.holds(), "{ex:#?}");
        assert_eq!(ex.trimmed.extension_factored, "λ₁λ₂(φ₂₃+φ₁₃)");
        assert_eq!(ex.full.omega_whitney, "λ₁λ₂φ₂₃");
        assert_eq!(
            ex.full.extension_factored,
            "λ₁λ₂²dλ₃ − λ₁λ₂λ₃(dλ₂+(1/3)dλ₀)"
        );
        assert_eq!(ex.full.koszul, "−(1/3)λ₀λ₁λ₂λ₃");
        let pulled: Vec<&str> = ex
            .full
            .pullbacks
            .iter()
            .map(|p| p.pulled.as_str())
            .collect();
        assert_eq!(pulled, vec!["dλ₃", "dλ₂+(1/3)dλ₀"]);
    }

    #[test]
    fn basis_table_groupings() {
        let b = basis_table(2, 0, 3, Family::Full).unwrap();
        assert_eq!(
            (b.target_dim, b.dims_by_face_dim.clone()),
            (10, vec![3, 6, 1])
        );
        let b = basis_table(2, 1, 1, Family::Trimmed).unwrap();
        assert_eq!((b.target_dim, b.dims_by_face_dim.clone()), (3, vec![3, 0]));
        let b = basis_table(3, 3, 1, Family::Full).unwrap();
        assert_eq!(b.components.len(), 1);
        assert_eq!(b.target_dim, 4);
        assert!(basis_table(2, 3, 1, Family::Full).is_err());
    }

    #[test]
    fn gram_of_constants_on_the_triangle() {
        let g = gram_table(2, 0, 0, Family::Full).unwrap();
        assert_eq!(g.gram, vec![vec!["1/2".to_string()]]);
        assert!(g.positive_definite);
    }
}

//! Checks for increasing maps, algebraic forms, and polynomial-form calculus.

use num_traits::One;

use super::{Case, Hooks, Outcome};
use crate::combinatorics::{binomial, concat_sign, enumerate_sigma, permutation_sign};
use crate::error::Result;
use crate::exterior::AltForm;
use crate::polyform::{space_full, space_trimmed, Family, PolyForm, Span};
use crate::sample::{self, random_altform, random_matrix, random_point, random_polyform};
use crate::scalar::{int, Rational};
use crate::simplex::{AffineSimplexMap, BaryPoint, Face, Simplex};

type A = AltForm<Rational>;

pub(super) fn sign_of(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub(super) fn case_simplex(case: &Case, rng: &mut sample::SampleRng) -> Simplex<Rational> {
    match case.sample {
        super::Sample::Reference => Simplex::reference(case.n),
        super::Sample::Random(_) => sample::random_simplex(rng, case.n),
    }
}

pub(super) fn increasing_maps(case: &Case, _: &Hooks) -> Result<Outcome> {
    let set: Vec<usize> = (0..=case.n).collect();
    let mut count = 0;
    for len in 0..=set.len() {
        for sigma in enumerate_sigma(0, len as i64 - 1, &set) {
            count += 1;
            let comp = sigma.complement(&set)?;
            let mut joined = sigma.values().to_vec();
            joined.extend_from_slice(comp.values());
            let s = sigma.sign(&set)?;
            if s != permutation_sign(&joined) || s != concat_sign(sigma.values(), comp.values()) {
                return Ok(Outcome::fail(
                    "sign(σ) disagrees with the permutation (σ, σ*)",
                    sigma.to_string(),
                ));
            }
            let back = comp.complement(&set)?;
            if back.values() != sigma.values() {
                return Ok(Outcome::fail("σ** ≠ σ", sigma.to_string()));
            }
            let swap = if (len * comp.len()) % 2 == 0 { 1 } else { -1 };
            if comp.sign(&set)? != swap * s {
                return Ok(Outcome::fail(
                    "sign(σ*) ≠ (−1)^{|σ||σ*|} sign(σ)",
                    sigma.to_string(),
                ));
            }
            for i in 0..len as i64 {
                let removed = sigma.remove(i)?;
                if removed.len() + 1 != len || removed.values().contains(&sigma.at(i)?) {
                    return Ok(Outcome::fail("σ ∖ σ(i) is wrong", format!("{sigma} i={i}")));
                }
            }
            let domain: Vec<usize> = (0..len).collect();
            for sub in 0..=len {
                for rho in enumerate_sigma(0, sub as i64 - 1, &domain) {
                    let c = sigma.compose(&rho)?;
                    let expected: Vec<usize> =
                        rho.values().iter().map(|&v| sigma.values()[v]).collect();
                    if c.values() != expected.as_slice() {
                        return Ok(Outcome::fail("σ∘ρ is wrong", format!("σ={sigma} ρ={rho}")));
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(format!("{count} subsets of [0..{}]", case.n)))
}

pub(super) fn wedge_algebra(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let mut rng = sample::rng(case.seed);
    for l in 0..=n - k {
        for m in 0..=n - k - l {
            let a: A = random_altform(&mut rng, n, k);
            let b: A = random_altform(&mut rng, n, l);
            let c: A = random_altform(&mut rng, n, m);
            if a.wedge(&b)?.wedge(&c)? != a.wedge(&b.wedge(&c)?)? {
                return Ok(Outcome::fail(
                    "wedge is not associative",
                    format!("a={a}; b={b}; c={c}"),
                ));
            }
            if a.wedge(&b)? != b.wedge(&a)?.scale(&sign_of(k * l)) {
                return Ok(Outcome::fail(
                    "graded commutativity fails",
                    format!("a={a}; b={b}"),
                ));
            }
        }
    }
    Ok(Outcome::pass("associativity and graded commutativity"))
}

pub(super) fn interior_product(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let mut rng = sample::rng(case.seed);
    let v: Vec<Rational> = (0..n)
        .map(|_| sample::small_rational(&mut rng, 2))
        .collect();
    let a: A = random_altform(&mut rng, n, k);
    if k >= 2 && !a.interior(&v)?.interior(&v)?.is_zero() {
        return Ok(Outcome::fail("v⌟v⌟a ≠ 0", a.to_string()));
    }
    for l in 1..=n - k {
        let b: A = random_altform(&mut rng, n, l);
        let lhs = a.wedge(&b)?.interior(&v)?;
        let rhs = a
            .interior(&v)?
            .wedge(&b)?
            .add(&a.wedge(&b.interior(&v)?)?.scale(&sign_of(k)))?;
        if lhs != rhs {
            return Ok(Outcome::fail(
                "antiderivation rule fails",
                format!("a={a}; b={b}"),
            ));
        }
    }
    Ok(Outcome::pass("antiderivation rule and nilpotence"))
}

pub(super) fn pullback(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let mut rng = sample::rng(case.seed);
    let j1 = random_matrix(&mut rng, n, n);
    let j2 = random_matrix(&mut rng, n, n);
    let a: A = random_altform(&mut rng, n, k);
    if a.pullback(&j1.mul(&j2)?)? != a.pullback(&j1)?.pullback(&j2)? {
        return Ok(Outcome::fail("(J₁J₂)* ≠ J₂*J₁*", a.to_string()));
    }
    for l in 0..=n - k {
        let b: A = random_altform(&mut rng, n, l);
        if a.wedge(&b)?.pullback(&j1)? != a.pullback(&j1)?.wedge(&b.pullback(&j1)?)? {
            return Ok(Outcome::fail(
                "J*(a∧b) ≠ J*a ∧ J*b",
                format!("a={a}; b={b}"),
            ));
        }
    }
    if A::vol(n).pullback(&j1)? != A::vol(n).scale(&j1.determinant()?) {
        return Ok(Outcome::fail("J*vol ≠ det(J) vol", j1.to_string()));
    }
    Ok(Outcome::pass("wedge, composition and determinant"))
}

/// ⋆⋆ = (−1)^{k(n−k)} on the coordinate k-forms of R^n, for a given ⋆.
pub fn check_hodge_involution_with(n: usize, k: usize, hodge: impl Fn(&A) -> A) -> Result<Outcome> {
    let sign = sign_of(k * (n - k));
    let basis = enumerate_sigma(1, k as i64, &(1..=n).collect::<Vec<_>>());
    for rho in &basis {
        let e = A::basis(n, rho)?;
        let twice = hodge(&hodge(&e));
        if twice != e.scale(&sign) {
            return Ok(Outcome::fail(
                format!("⋆⋆(dx){rho} ≠ {sign}·(dx){rho}"),
                twice.to_string(),
            ));
        }
    }
    Ok(Outcome::pass(format!("{} coordinate forms", basis.len())))
}

pub(super) fn hodge_involution(case: &Case, hooks: &Hooks) -> Result<Outcome> {
    check_hodge_involution_with(case.n, case.k(), hooks.hodge)
}

pub(super) fn hodge_defining_relation(case: &Case, hooks: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let basis = enumerate_sigma(1, k as i64, &(1..=n).collect::<Vec<_>>());
    for rho in &basis {
        let a = A::basis(n, rho)?;
        for tau in &basis {
            let b = A::basis(n, tau)?;
            let lhs = a.wedge(&(hooks.hodge)(&b))?;
            if lhs != A::vol(n).scale(&a.inner(&b)?) {
                return Ok(Outcome::fail(
                    "a ∧ ⋆b ≠ ⟨a,b⟩ vol",
                    format!("a={a}; b={b}; a∧⋆b={lhs}"),
                ));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{} pairs",
        basis.len() * basis.len()
    )))
}

pub(super) fn exterior_derivative(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let t = Face::full(n);
    let mut rng = sample::rng(case.seed);
    let w = random_polyform(&mut rng, t, r, k);
    if !w.d().d().is_zero() {
        return Ok(Outcome::fail("d d ω ≠ 0", w.to_string()));
    }
    for l in 0..=n - k {
        let mu = random_polyform(&mut rng, t, 1, l);
        let lhs = w.wedge(&mu).d();
        let rhs = &w.d().wedge(&mu) + &w.wedge(&mu.d()).scale(&sign_of(k));
        if lhs != rhs {
            return Ok(Outcome::fail(
                "Leibniz rule fails",
                format!("ω={w}; μ={mu}"),
            ));
        }
    }
    Ok(Outcome::pass("d∘d = 0 and Leibniz"))
}

pub(super) fn koszul_pullback_commute(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let t = Face::full(n);
    let mut rng = sample::rng(case.seed);
    let images: Vec<BaryPoint> = (0..=n).map(|_| random_point(&mut rng, t)).collect();
    let phi = AffineSimplexMap::from_vertex_images(t, t, &images)?;
    let x = random_point(&mut rng, t);
    let w = random_polyform(&mut rng, t, r, k);
    let lhs = w.pullback(&phi)?.koszul(&x)?;
    let rhs = w.koszul(&phi.apply(&x)?)?.pullback(&phi)?;
    if lhs != rhs {
        return Ok(Outcome::fail(
            "κ_x φ*ω ≠ φ* κ_{φ(x)} ω",
            format!("ω={w}; lhs={lhs}; rhs={rhs}"),
        ));
    }
    if k >= 2 && !w.koszul(&x)?.koszul(&x)?.is_zero() {
        return Ok(Outcome::fail("κ∘κ ≠ 0", w.to_string()));
    }
    Ok(Outcome::pass("commutes with a random affine self-map"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub(super) fn oriented_simplex_identity(case: &Case, _: &Hooks) -> Result<Outcome> {
    let mut rng = sample::rng(case.seed);
    let t = case_simplex(case, &mut rng);
    let perms = permutations(case.n + 1);
    for pi in &perms {
        for i in 0..=case.n {
            let (lhs, rhs) = t.oriented_volume_identity(pi, i)?;
            if lhs != rhs {
                return Ok(Outcome::fail(
                    format!("π={pi:?} i={i}"),
                    format!("lhs={lhs}; rhs={rhs}"),
                ));
            }
        }
    }
    Ok(Outcome::pass(format!("{} permutations", perms.len())))
}

pub(super) fn whitney_forms(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k) = (case.n, case.k());
    let t = Face::full(n);
    let mut forms = Vec::new();
    for rho in enumerate_sigma(0, k as i64, &t.labels()) {
        let phi = PolyForm::whitney(t, rho.values())?;
        let mut d_rho = PolyForm::one(t);
        for &l in rho.values() {
            d_rho = d_rho.wedge(&PolyForm::dlambda(t, l)?);
        }
        if phi.d() != d_rho.scale(&int(k as i64 + 1)) {
            return Ok(Outcome::fail(
                format!("dφ_{rho} ≠ (k+1)(dλ)_{rho}"),
                phi.d().to_string(),
            ));
        }
        let rho_face = Face::from_map(&rho)?;
        for f in t.subfaces() {
            if f.dim() >= k && !f.contains(rho_face) && !phi.trace(f)?.is_zero() {
                return Ok(Outcome::fail(
                    format!("trace of φ_{rho} on {f} is not zero"),
                    phi.trace(f)?.to_string(),
                ));
            }
        }
        forms.push(phi);
    }
    let span = Span::new(t, k, Family::Custom, 1, forms)?;
    if span.dim() != binomial(n + 1, k + 1) || !span.same_space(&space_trimmed(t, 1, k)?) {
        return Ok(Outcome::fail(
            "Whitney forms do not span P⁻₁Λ^k",
            format!("dim {}", span.dim()),
        ));
    }
    Ok(Outcome::pass(format!("{} Whitney forms", span.dim())))
}

pub(super) fn trimmed_koszul_characterization(case: &Case, _: &Hooks) -> Result<Outcome> {
    let (n, k, r) = (case.n, case.k(), case.r());
    let t = Face::full(n);
    let x = BaryPoint::centroid(t, t)?;
    let mut gens = space_full(t, r - 1, k)?.basis();
    if k < n {
        for g in space_full(t, r - 1, k + 1)?.basis() {
            gens.push(g.koszul(&x)?);
        }
    }
    let span = Span::new(t, k, Family::Custom, r, gens)?;
    let trimmed = space_trimmed(t, r, k)?;
    let expected = binomial(r as usize + k - 1, k) * binomial(n + r as usize, n - k);
    if !span.same_space(&trimmed) {
        return Ok(Outcome::fail(
            "P_{r−1}Λ^k + κP_{r−1}Λ^{k+1} ≠ P⁻_rΛ^k",
            format!("dims {} vs {}", span.dim(), trimmed.dim()),
        ));
    }
    if trimmed.dim() != expected {
        return Ok(Outcome::fail(
            "dimension formula",
            format!("{} ≠ {expected}", trimmed.dim()),
        ));
    }
    Ok(Outcome::pass(format!("dim {expected}")))
}

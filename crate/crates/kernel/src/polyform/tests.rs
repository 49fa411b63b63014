use std::collections::BTreeMap;

use super::*;
use crate::combinatorics::enumerate_multiindices;
use crate::scalar::{frac, int};

fn face(l: &[usize]) -> Face {
    Face::new(l).unwrap()
}

fn p(f: Face, k: usize, s: &str) -> PolyForm {
    PolyForm::parse(f, k, s).unwrap()
}

#[test]
fn partition_of_unity() {
    let t = Face::full(2);
    assert_eq!(p(t, 0, "1 * l0^1 + 1 * l1^1 + 1 * l2^1"), PolyForm::one(t));
    assert!(p(t, 1, "1 ^ dl0 + 1 ^ dl1 + 1 ^ dl2").is_zero());
}

#[test]
fn eliminates_first_generator() {
    let e = Face::full(1);
    let f = p(e, 1, "1 * l0^1 ^ dl0");
    assert_eq!(f, p(e, 1, "-1 * l0^1 ^ dl1"));
    assert_eq!(f.to_string(), "-1 * l0^1 ^ dl1");
}

#[test]
fn canonical_form_prefers_lowest_degree() {
    let t = Face::full(2);
    let f = p(t, 1, "1 * l1^1 ^ dl2 + 1 * l0^1 ^ dl2 + 1 * l2^1 ^ dl2");
    assert_eq!(f.degree(), 0);
    assert_eq!(f.to_string(), "1 ^ dl2");
}

#[test]
fn exterior_derivative_examples() {
    let t = Face::full(2);
    assert_eq!(
        PolyForm::lambda(t, 1).unwrap().d(),
        PolyForm::dlambda(t, 1).unwrap()
    );
    assert_eq!(
        p(t, 0, "1 * l0^1 l1^1").d(),
        p(t, 1, "1 * l1^1 ^ dl0 + 1 * l0^1 ^ dl1")
    );
    assert_eq!(p(t, 1, "1 * l0^1 ^ dl1").d(), p(t, 2, "1 ^ dl0^dl1"));
}

#[test]
fn whitney_examples() {
    let t = Face::full(2);
    let phi = PolyForm::whitney(t, &[0, 1]).unwrap();
    assert_eq!(phi, p(t, 1, "1 * l0^1 ^ dl1 + -1 * l1^1 ^ dl0"));
    assert_eq!(
        PolyForm::whitney(t, &[2]).unwrap(),
        PolyForm::lambda(t, 2).unwrap()
    );
    assert_eq!(phi.d(), p(t, 2, "2 ^ dl0^dl1"));
}

#[test]
fn koszul_examples() {
    let t = Face::full(3);
    let sigma = face(&[0, 1, 2]);
    let c = BaryPoint::centroid(t, sigma).unwrap();
    let k = PolyForm::dlambda(t, 3).unwrap().koszul(&c).unwrap();
    assert_eq!(k, PolyForm::lambda(t, 3).unwrap());
    let w = p(t, 1, "2 * l0^1 l2^1 ^ dl1 + -1/3 * l3^2 ^ dl2");
    let x = BaryPoint::new(t, vec![frac(1, 5), frac(2, 5), frac(1, 10), frac(3, 10)]).unwrap();
    let w2 = p(t, 2, "1 * l1^1 ^ dl2^dl3 + 3 ^ dl1^dl3");
    assert!(w2.koszul(&x).unwrap().koszul(&x).unwrap().is_zero());
    assert!(w.koszul(&x).is_ok());
    assert!(PolyForm::one(t).koszul(&x).is_err());
}

#[test]
fn koszul_on_barycentric_one_form() {
    // κ_x(λ^α dλ_i) = λ^α (λ_i - λ_i(x))
    let t = Face::full(2);
    let x = BaryPoint::new(t, vec![frac(1, 2), frac(1, 4), frac(1, 4)]).unwrap();
    let w = p(t, 1, "1 * l0^1 ^ dl1");
    assert_eq!(
        w.koszul(&x).unwrap(),
        p(t, 0, "1 * l0^1 l1^1 + -1/4 * l0^1")
    );
}

#[test]
fn trace_examples() {
    let t = Face::full(2);
    assert!(PolyForm::lambda(t, 0)
        .unwrap()
        .trace(face(&[1, 2]))
        .unwrap()
        .is_zero());
    // Tr of dλ_2 onto edge (0,1) is -dλ_0 - dλ_1 = 0 in the edge frame
    assert!(PolyForm::dlambda(t, 2)
        .unwrap()
        .trace(face(&[0, 1]))
        .unwrap()
        .is_zero());
    let w = p(t, 1, "3 * l1^2 ^ dl2");
    assert_eq!(w.trace(t).unwrap(), w);
    assert_eq!(
        w.trace(face(&[1, 2])).unwrap(),
        p(face(&[1, 2]), 1, "3 * l1^2 ^ dl2")
    );
    assert!(w.trace(face(&[0, 3])).is_err());
}

#[test]
fn centroid_projector_pullback_of_dlambda() {
    // P*_{T,σ} dλ_i = dλ_i + 1/(d+1) Σ_{j ∉ σ} dλ_j
    let t = Face::full(3);
    let sigma = face(&[1, 3]);
    let pr = AffineSimplexMap::centroid_projector(t, sigma).unwrap();
    let got = PolyForm::dlambda(sigma, 3).unwrap().pullback(&pr).unwrap();
    assert_eq!(got, p(t, 1, "1 ^ dl3 + 1/2 ^ dl0 + 1/2 ^ dl2"));
}

#[test]
fn weighted_projector_pullback() {
    let t = Face::full(3);
    let sigma = face(&[1, 2, 3]);
    let pr =
        AffineSimplexMap::weighted_projector(t, sigma, &MultiIndex::new(vec![1, 2, 0])).unwrap();
    assert_eq!(
        PolyForm::dlambda(sigma, 3).unwrap().pullback(&pr).unwrap(),
        PolyForm::dlambda(t, 3).unwrap()
    );
    assert_eq!(
        PolyForm::lambda(sigma, 2).unwrap().pullback(&pr).unwrap(),
        p(t, 0, "1 * l2^1 + 2/3 * l0^1")
    );
}

#[test]
fn pullback_along_identity() {
    let t = Face::full(2);
    let w = p(t, 1, "1 * l0^1 l1^1 ^ dl2 + -2 * l2^2 ^ dl1");
    assert_eq!(w.pullback(&AffineSimplexMap::identity(t)).unwrap(), w);
}

/// Iterated-integral oracle over the reference simplex: polynomials in
/// x_1..x_n as exponent vectors; integrate x_n from 0 to 1 - x_1 - ... - x_{n-1}.
fn iterated_integral(n: usize, poly: BTreeMap<Vec<u32>, Rational>) -> Rational {
    if n == 0 {
        return poly.values().fold(Rational::zero(), |a, b| a + b);
    }
    let mut outer: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for (exp, c) in poly {
        let b = exp[n - 1];
        let c = c / int(b as i64 + 1);
        // (1 - s)^(b+1), s = x_1 + ... + x_{n-1}
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        terms.insert(vec![0; n - 1], Rational::one());
        let mut upper = terms.clone();
        for _ in 0..=b {
            let mut next = BTreeMap::new();
            for (e, v) in &upper {
                *next.entry(e.clone()).or_insert_with(Rational::zero) += v.clone();
                for i in 0..n - 1 {
                    let mut e2 = e.clone();
                    e2[i] += 1;
                    *next.entry(e2).or_insert_with(Rational::zero) -= v.clone();
                }
            }
            upper = next;
        }
        for (e, v) in upper {
            let mut e2 = e.clone();
            for i in 0..n - 1 {
                e2[i] += exp[i];
            }
            *outer.entry(e2).or_insert_with(Rational::zero) += &c * v;
        }
    }
    iterated_integral(n - 1, outer)
}

/// λ^α on the reference simplex as a polynomial in x.
fn bary_monomial_in_x(n: usize, alpha: &[u32]) -> BTreeMap<Vec<u32>, Rational> {
    let mut poly: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    poly.insert(vec![0; n], Rational::one());
    let mul_linear = |poly: &BTreeMap<Vec<u32>, Rational>, lin: &[(Option<usize>, Rational)]| {
        let mut out = BTreeMap::new();
        for (e, c) in poly {
            for (var, w) in lin {
                let mut e2 = e.clone();
                if let Some(v) = var {
                    e2[*v] += 1;
                }
                *out.entry(e2).or_insert_with(Rational::zero) += c * w;
            }
        }
        out
    };
    for (i, &a) in alpha.iter().enumerate() {
        let lin: Vec<(Option<usize>, Rational)> = if i == 0 {
            std::iter::once((None, int(1)))
                .chain((0..n).map(|v| (Some(v), int(-1))))
                .collect()
        } else {
            vec![(Some(i - 1), int(1))]
        };
        for _ in 0..a {
            poly = mul_linear(&poly, &lin);
        }
    }
    poly
}

#[test]
fn integration_matches_iterated_integrals() {
    for n in 1..=3 {
        let t = Face::full(n);
        let top: Vec<usize> = (1..=n).collect();
        let vol = PolyForm::from_terms(
            t,
            n,
            [(
                int(1),
                &MultiIndex::new(vec![0; n + 1]),
                &IncreasingMap::from_values(&top).unwrap(),
            )],
        )
        .unwrap();
        for r in 0..=6 {
            for alpha in enumerate_multiindices(n, r) {
                let mono = PolyForm::from_terms(t, 0, [(int(1), &alpha, &IncreasingMap::empty(0))])
                    .unwrap();
                let got = mono.wedge(&vol).integrate().unwrap();
                let want = iterated_integral(n, bary_monomial_in_x(n, alpha.exps()));
                assert_eq!(got, want, "n={n} alpha={alpha}");
            }
        }
    }
}

#[test]
fn integration_examples() {
    let t = Face::full(2);
    let vol = p(t, 2, "1 ^ dl1^dl2");
    assert_eq!(vol.integrate().unwrap(), frac(1, 2));
    assert_eq!(
        p(t, 0, "1 * l0^1 l1^1 l2^1")
            .wedge(&vol)
            .integrate()
            .unwrap(),
        frac(1, 120)
    );
    assert_eq!(
        p(t, 0, "1 * l0^2").wedge(&vol).integrate().unwrap(),
        frac(1, 12)
    );
    assert!(PolyForm::one(t).integrate().is_err());
}

#[test]
fn evaluation_examples() {
    let t = Face::full(2);
    let bubble = PolyForm::bubble(t, t).unwrap();
    for l in 0..3 {
        assert_eq!(
            bubble.value_at(&BaryPoint::vertex(t, l).unwrap()).unwrap(),
            int(0)
        );
    }
    let c = BaryPoint::centroid(t, t).unwrap();
    assert_eq!(
        PolyForm::lambda(t, 1).unwrap().value_at(&c).unwrap(),
        frac(1, 3)
    );
    let v = PolyForm::dlambda(t, 1).unwrap().evaluate(&c).unwrap();
    assert_eq!(v, AltForm::dx(2, 1));
}

#[test]
fn space_dimensions() {
    let t = Face::full(2);
    assert_eq!(space_trimmed(t, 1, 1).unwrap().dim(), 3);
    assert_eq!(space_full(t, 1, 1).unwrap().dim(), 6);
    for r in 1..=3 {
        assert_eq!(
            space_trimmed(t, r, 0).unwrap().dim(),
            space_full(t, r, 0).unwrap().dim()
        );
    }
    assert!(space_trimmed(t, 0, 1).is_err());
    assert!(space_full(t, 1, 3).is_err());
}

#[test]
fn scalar_bubble_is_the_only_cubic_trace_free_function() {
    let t = Face::full(2);
    let tf = space_full(t, 3, 0).unwrap().trace_free_subspace();
    assert_eq!(tf.dim(), 1);
    assert!(tf.contains(&PolyForm::bubble(t, t).unwrap()));
    assert_eq!(space_full(t, 1, 0).unwrap().trace_free_subspace().dim(), 0);
}

#[test]
fn membership_examples() {
    let t = Face::full(2);
    let s = space_full(t, 1, 1).unwrap();
    let g = &s.generators()[2];
    match s.member(g).unwrap() {
        Membership::Member(c) => {
            assert_eq!(c.iter().filter(|x| !x.is_zero()).count(), 1);
            assert_eq!(c[2], int(1));
        }
        other => panic!("{other:?}"),
    }
    match s.member(&PolyForm::zero(t, 1)).unwrap() {
        Membership::Member(c) => assert!(c.iter().all(|x| x.is_zero())),
        other => panic!("{other:?}"),
    }
    let quad = p(t, 1, "1 * l1^2 ^ dl2");
    assert!(!s.member(&quad).unwrap().is_member());
}

#[test]
fn text_round_trip() {
    let t = Face::full(3);
    let w = p(
        t,
        2,
        "2/3 * l0^2 l3^1 ^ dl1^dl3 + -5 * l2^3 ^ dl0^dl2 + 1 ^ dl2^dl3",
    );
    assert_eq!(PolyForm::parse(t, 2, &w.to_string()).unwrap(), w);
}

#[test]
fn pretty_rendering() {
    let t = Face::full(3);
    let w = p(t, 0, "-1/3 * l0^1 l1^1 l2^1 l3^1");
    assert_eq!(w.pretty(), "−(1/3)λ₀λ₁λ₂λ₃");
    let v = p(t, 1, "1 * l1^1 l2^2 ^ dl3 + -1 * l1^1 l2^1 l3^1 ^ dl2");
    assert_eq!(v.pretty(), "−λ₁λ₂λ₃dλ₂ + λ₁λ₂²dλ₃");
}

#[test]
fn relabel_moves_forms_between_faces() {
    let e = face(&[1, 2]);
    let w = p(e, 1, "1 * l1^1 ^ dl2");
    let moved = w.relabel(&[(1, 4), (2, 3)]).unwrap();
    assert_eq!(moved.face(), face(&[3, 4]));
    assert_eq!(moved, p(face(&[3, 4]), 1, "1 * l4^1 ^ dl3"));
}

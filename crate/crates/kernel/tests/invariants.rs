//! Property tests over seeded random forms, simplices and matrices.

use feec_kernel::extension::{bubble_decompose, dot_extend};
use feec_kernel::polyform::PolyForm;
use feec_kernel::sample::{self, random_altform, random_matrix, random_polyform};
use feec_kernel::scalar::{parse_rational, Rational};
use feec_kernel::simplex::Face;
use feec_kernel::star::{is_trace_free, ring_inner, ring_star};
use feec_kernel::verify::rational_string;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// (n, k, r) with n ≤ 3 and r ≤ 2, plus a seed for the kernel's sampler.
fn shape() -> impl Strategy<Value = (usize, usize, u32, u64)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), 0..=n, 0u32..=2, any::<u64>()))
}

fn form(n: usize, k: usize, r: u32, seed: u64) -> PolyForm {
    random_polyform(&mut sample::rng(seed), Face::full(n), r, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squares_to_zero((n, k, r, seed) in shape()) {
        prop_assert!(form(n, k, r, seed).d().d().is_zero());
    }

    #[test]
    fn wedge_graded_commutative((n, k, r, seed) in shape(), l in 0usize..=3) {
        let l = l.min(n - k);
        let a = form(n, k, r, seed);
        let b = form(n, l, 1, seed ^ 0x5a5a);
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign(k * l)));
    }

    #[test]
    fn leibniz((n, k, r, seed) in shape()) {
        let a = form(n, k, r, seed);
        let b = form(n, 0, 2, seed.wrapping_add(1));
        let lhs = a.wedge(&b).d();
        let rhs = &a.d().wedge(&b) + &a.wedge(&b.d()).scale(&sign(k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_commutes_with_d((n, k, r, seed) in shape()) {
        let w = form(n, k, r, seed);
        for f in Face::full(n).subfaces().into_iter().filter(|f| f.dim() > k) {
            prop_assert_eq!(w.d().trace(f).unwrap(), w.trace(f).unwrap().d());
        }
    }

    #[test]
    fn text_roundtrip((n, k, r, seed) in shape()) {
        let w = form(n, k, r, seed);
        prop_assert_eq!(PolyForm::parse(Face::full(n), k, &w.to_string()).unwrap(), w);
    }

    #[test]
    fn ring_star_twice_is_bubble((n, k, r, seed) in shape()) {
        let t = Face::full(n);
        let w = form(n, k, r, seed);
        let bubble = PolyForm::bubble(t, t).unwrap();
        prop_assert_eq!(ring_star(&ring_star(&w)), bubble.wedge(&w).scale(&sign(k * (n - k))));
    }

    #[test]
    fn ring_star_image_is_trace_free_and_decomposes((n, k, r, seed) in shape()) {
        let s = ring_star(&form(n, k, r, seed));
        prop_assert!(is_trace_free(&s));
        prop_assert_eq!(bubble_decompose(&s).unwrap().reassemble().unwrap(), s);
    }

    #[test]
    fn ring_inner_positive((n, k, r, seed) in shape()) {
        let w = form(n, k, r, seed);
        let q = ring_inner(&w, &w).unwrap();
        let ok = if w.is_zero() { q.is_zero() } else { q.is_positive() };
        prop_assert!(ok, "⟨ω, ω⟩ = {}", q);
    }

    #[test]
    fn dot_extension_restricts_back((n, k, r, seed) in shape(), pick in any::<prop::sample::Index>()) {
        let t = Face::full(n);
        let faces: Vec<Face> = t.subfaces().into_iter().filter(|f| f.dim() >= k).collect();
        let f = faces[pick.index(faces.len())];
        let s = ring_star(&random_polyform(&mut sample::rng(seed), f, r, f.dim() - k));
        prop_assert_eq!(dot_extend(&s, t).unwrap().trace(f).unwrap(), s);
    }

    #[test]
    fn hodge_involution_on_random_forms(n in 1usize..=4, k in 0usize..=4, seed in any::<u64>()) {
        let k = k.min(n);
        let a = random_altform::<Rational>(&mut sample::rng(seed), n, k);
        prop_assert_eq!(a.hodge().hodge(), a.scale(&sign(k * (n - k))));
    }

    #[test]
    fn determinant_multiplicative(dim in 1usize..=4, seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let a = random_matrix(&mut rng, dim, dim);
        let b = random_matrix(&mut rng, dim, dim);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn rational_string_roundtrip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let x = Rational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&rational_string(&x)).unwrap(), x);
    }
}

//! Seeded random inputs and the exact equilateral simplices used by the checks.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{labels_mask, subsets_of_size};
use crate::exterior::{k_masks, AltForm};
use crate::linalg::Matrix;
use crate::polyform::{monomials, PolyForm};
use crate::scalar::{frac, int, Field, QuadExt, Rational};
use crate::simplex::{CartesianAffine, Face, Orientation, Simplex};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// A rational in [-bound, bound] with denominator at most 8.
pub fn small_rational(rng: &mut SampleRng, bound: i64) -> Rational {
    let q = rng.gen_range(1..=8);
    frac(rng.gen_range(-bound * q..=bound * q), q)
}

fn nonzero_rational(rng: &mut SampleRng, bound: i64) -> Rational {
    loop {
        let r = small_rational(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A positively oriented simplex with small rational vertices.
pub fn random_simplex(rng: &mut SampleRng, n: usize) -> Simplex<Rational> {
    loop {
        let vs: Vec<Vec<Rational>> = (0..=n)
            .map(|_| (0..n).map(|_| small_rational(rng, 2)).collect())
            .collect();
        if let Ok(s) = Simplex::new(vs, Orientation::AutoSwap) {
            return s;
        }
    }
}

/// An invertible affine map with small rational entries.
pub fn random_affine(rng: &mut SampleRng, n: usize) -> CartesianAffine<Rational> {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| small_rational(rng, 2)).collect())
            .collect();
        let linear = Matrix::from_rows(rows).expect("square");
        if !linear.determinant().expect("square").is_zero() {
            let translation = (0..n).map(|_| small_rational(rng, 2)).collect();
            return CartesianAffine {
                linear,
                translation,
            };
        }
    }
}

/// An affine map that preserves orientation (negates a row otherwise).
pub fn random_orientation_preserving(rng: &mut SampleRng, n: usize) -> CartesianAffine<Rational> {
    let mut a = random_affine(rng, n);
    if a.determinant().signum_exact() < 0 {
        for j in 0..n {
            a.linear[(0, j)] = -a.linear[(0, j)].clone();
        }
    }
    a
}

pub fn random_altform<F: Field>(rng: &mut SampleRng, n: usize, k: usize) -> AltForm<F> {
    let terms = k_masks(n, k)
        .into_iter()
        .map(|m| (m, F::from_rational(small_rational(rng, 3))));
    AltForm::from_masks(n, k, terms)
}

/// A random combination of the monomial generators `λ^α (dλ)_ρ` of `P_r Λ^k` on `face`.
pub fn random_polyform(rng: &mut SampleRng, face: Face, r: u32, k: usize) -> PolyForm {
    let rest: Vec<usize> = face.labels().into_iter().skip(1).collect();
    let masks: Vec<u16> = subsets_of_size(&rest, k)
        .iter()
        .map(|s| labels_mask(s))
        .collect();
    let monos = monomials(face, r);
    let mut out = PolyForm::zero(face, k);
    for &m in &masks {
        for a in &monos {
            if rng.gen_bool(0.5) {
                let c = nonzero_rational(rng, 3);
                out = &out + &PolyForm::raw_term(face, m, *a, c);
            }
        }
    }
    out
}

/// The equilateral n-simplex with edge sqrt(2) in Q(sqrt(n+1)) coordinates,
/// for the dimensions where one quadratic extension suffices.
pub fn equilateral(n: usize) -> Option<Simplex<QuadExt>> {
    let q = |a: Rational| QuadExt::rational(a);
    let half = frac(1, 2);
    let vs = match n {
        1 => vec![vec![q(Rational::zero())], vec![QuadExt::sqrt(2)]],
        2 => vec![
            vec![q(int(0)), q(int(0))],
            vec![q(int(1)), q(int(1))],
            vec![
                QuadExt::new(half.clone(), -half.clone(), 3),
                QuadExt::new(half.clone(), half, 3),
            ],
        ],
        3 => {
            let p = |x: i64, y: i64, z: i64| vec![q(int(x)), q(int(y)), q(int(z))];
            vec![p(0, 0, 0), p(1, 1, 0), p(1, 0, 1), p(0, 1, 1)]
        }
        _ => return None,
    };
    Simplex::new(vs, Orientation::AutoSwap).ok()
}

/// Embeds a rational simplex in Q(sqrt(n+1)).
pub fn lift_simplex(t: &Simplex<Rational>) -> Simplex<QuadExt> {
    t.map(|c| QuadExt::rational(c.clone()))
}

/// An interior barycentric point of `face` with small positive weights.
pub fn random_point(rng: &mut SampleRng, face: Face) -> crate::simplex::BaryPoint {
    let labels = face.labels();
    let w: Vec<i64> = labels.iter().map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = w.iter().sum();
    let coords = w.into_iter().map(|x| frac(x, total)).collect();
    crate::simplex::BaryPoint::new(face, coords).expect("weights sum to one")
}

pub fn random_matrix(rng: &mut SampleRng, rows: usize, cols: usize) -> Matrix<Rational> {
    Matrix::from_rows(
        (0..rows)
            .map(|_| (0..cols).map(|_| small_rational(rng, 2)).collect())
            .collect(),
    )
    .expect("rectangular")
}

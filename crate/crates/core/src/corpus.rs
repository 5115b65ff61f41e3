//! Seeded ADHM data for the randomized checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adhm::{apply_gauge, check_equations, stability_closure, AdhmDatum, GaugeElement};
use crate::exact::{rat, ratio, RatMatrix, Rational};
use crate::torus::TorusElement;
use crate::young::Partition;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> RatMatrix {
    let entries = (0..rows * cols).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
    RatMatrix::new(rows, cols, entries).expect("sized")
}

/// `L·U` with unit diagonals, so the determinant is 1.
pub fn random_gauge(rng: &mut impl Rng, c: usize) -> GaugeElement {
    let mut l = RatMatrix::identity(c);
    let mut u = RatMatrix::identity(c);
    for i in 0..c {
        for j in 0..i {
            l.set(i, j, rat(rng.gen_range(-2..=2)));
            u.set(j, i, rat(rng.gen_range(-2..=2)));
        }
    }
    GaugeElement::new(&l * &u).expect("unimodular")
}

fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    const CHOICES: [(i64, i64); 10] = [(2, 1), (3, 1), (-1, 1), (-2, 1), (1, 2), (-1, 3), (3, 2), (5, 1), (-4, 3), (2, 5)];
    let (n, d) = *CHOICES.choose(rng).expect("nonempty");
    ratio(n, d)
}

pub fn random_torus(rng: &mut impl Rng, r: usize) -> TorusElement {
    let e = (0..r).map(|_| nonzero_rational(rng)).collect();
    TorusElement::new(nonzero_rational(rng), nonzero_rational(rng), nonzero_rational(rng), e).expect("nonzero")
}

fn poly_in(rng: &mut impl Rng, n: &RatMatrix) -> RatMatrix {
    let c = n.rows();
    let mut out = RatMatrix::zeros(c, c);
    let mut power = RatMatrix::identity(c);
    for _ in 0..3 {
        out = &out + &power.scale(&rat(rng.gen_range(-2..=2)));
        power = &power * n;
    }
    out
}

/// Endomorphisms are polynomials in one matrix, `I` lives in framing column 0 and
/// `J` in row 1, so every commutator and every `IJ` product vanishes; then a random gauge.
pub fn satisfying_datum(rng: &mut impl Rng, c: usize, r: usize) -> AdhmDatum {
    let n = small_int_matrix(rng, c, c, 2);
    let mut x = AdhmDatum::zero(c, r);
    x.a0 = poly_in(rng, &n);
    x.a1 = poly_in(rng, &n);
    x.b0 = poly_in(rng, &n);
    x.b1 = poly_in(rng, &n);
    for i in [&mut x.i0, &mut x.i1] {
        for row in 0..c {
            i.set(row, 0, rat(rng.gen_range(-2..=2)));
        }
    }
    if r >= 2 {
        for j in [&mut x.j0, &mut x.j1] {
            for col in 0..c {
                j.set(1, col, rat(rng.gen_range(-2..=2)));
            }
        }
    }
    apply_gauge(&x, &random_gauge(rng, c)).expect("shapes agree")
}

/// A satisfying datum with random entries perturbed until some equation fails.
pub fn violating_datum(rng: &mut impl Rng, c: usize, r: usize) -> AdhmDatum {
    let mut x = satisfying_datum(rng, c, r);
    loop {
        let which = rng.gen_range(0..8);
        let m = match which {
            0 => &mut x.a0,
            1 => &mut x.a1,
            2 => &mut x.b0,
            3 => &mut x.b1,
            4 => &mut x.i0,
            5 => &mut x.i1,
            6 => &mut x.j0,
            _ => &mut x.j1,
        };
        let (i, j) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.cols()));
        let v = m.get(i, j) + nonzero_rational(rng);
        m.set(i, j, v);
        if !check_equations(&x).is_ok() {
            return x;
        }
    }
}

/// `n` data, alternating satisfying and violating, with the intended label.
pub fn monad_corpus(seed: u64, n: usize) -> Vec<(AdhmDatum, bool)> {
    let mut rng = rng(seed);
    (0..n)
        .map(|k| {
            let c = rng.gen_range(1..=3);
            let r = rng.gen_range(1..=3);
            if k % 2 == 0 {
                (satisfying_datum(&mut rng, c, r), true)
            } else {
                (violating_datum(&mut rng, c, r), false)
            }
        })
        .collect()
}

/// Which pair of endomorphisms carries the two shift operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftPair {
    A0B0,
    A1B1,
    A0B1,
    A1B0,
}

impl ShiftPair {
    pub const ALL: [ShiftPair; 4] = [Self::A0B0, Self::A1B1, Self::A0B1, Self::A1B0];
}

/// Multiplication by `z₂` and `z₃` on the monomial basis of the diagram, framed by the unit box.
pub fn box_datum(nu: &Partition, pair: ShiftPair, use_i1: bool, r: usize) -> AdhmDatum {
    let boxes = nu.boxes();
    let c = boxes.len();
    let index = |a: u32, b: u32| boxes.iter().position(|x| x.a == a && x.b == b);
    let mut za = RatMatrix::zeros(c, c);
    let mut zb = RatMatrix::zeros(c, c);
    for (k, bx) in boxes.iter().enumerate() {
        if let Some(t) = index(bx.a + 1, bx.b) {
            za.set(t, k, rat(1));
        }
        if let Some(t) = index(bx.a, bx.b + 1) {
            zb.set(t, k, rat(1));
        }
    }
    let mut x = AdhmDatum::zero(c, r);
    match pair {
        ShiftPair::A0B0 => (x.a0, x.b0) = (za, zb),
        ShiftPair::A1B1 => (x.a1, x.b1) = (za, zb),
        ShiftPair::A0B1 => (x.a0, x.b1) = (za, zb),
        ShiftPair::A1B0 => (x.a1, x.b0) = (za, zb),
    }
    let origin = index(0, 0).expect("nonempty diagram");
    let i = if use_i1 { &mut x.i1 } else { &mut x.i0 };
    i.set(origin, 0, rat(1));
    x
}

/// Random data that satisfy the equations and are stable.
pub fn stable_datum(rng: &mut impl Rng, c: usize, r: usize) -> AdhmDatum {
    loop {
        let x = satisfying_datum(rng, c, r);
        if stability_closure(&x).stable {
            return x;
        }
    }
}

/// Box data over all diagrams up to `max_charge`, their gauge conjugates, and random stable data.
pub fn fixed_point_corpus(seed: u64, max_charge: u32, random_count: usize) -> Vec<AdhmDatum> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for c in 1..=max_charge {
        for nu in Partition::all(c) {
            for (k, pair) in ShiftPair::ALL.into_iter().enumerate() {
                let x = box_datum(&nu, pair, k % 2 == 1, 1 + k % 2);
                let g = random_gauge(&mut rng, x.c);
                out.push(apply_gauge(&x, &g).expect("shapes agree"));
                out.push(x);
            }
        }
    }
    for _ in 0..random_count {
        let c = rng.gen_range(1..=3);
        let r = rng.gen_range(1..=2);
        out.push(stable_datum(&mut rng, c, r));
    }
    out
}

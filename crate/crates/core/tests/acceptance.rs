//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! The process exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use dmv_core::affine::{
    affine_fine_cell_dmv, hyperplane_dual_volume, AffineFineCell, AffinePolytope,
};
use dmv_core::dualvol::{
    adjoint_polynomial, canonical_form, dual_volume, dual_volume_function, f_fan, integral_check,
    integral_estimate, verify_adjoint_identity, z_vars, FanValue,
};
use dmv_core::exactnum::{det, parse_rational, rat, rvec, RationalVector};
use dmv_core::families::*;
use dmv_core::geometry::{
    normalized_volume, polar_dual, Fan, Polytope, SupportData, SupportValues,
};
use dmv_core::mixed::{
    cayley_side_evol, dual_mixed_volume, dual_mixed_volume_z, fine_cell_dmv,
    generate_fine_subdivision, is_regular, validate_mixed_subdivision, verify_cayley_identity,
    verify_subdivision_additivity, x_vars, xz_vars, FineMixedCell, Lifting, MinkowskiSequence,
    MixedCell, MixedSubdivision,
};
use dmv_core::random::{random_origin_sequence, random_polytope_with_origin, random_sequence};
use dmv_core::symfun::Term;
use dmv_core::{LinearForm, Rational, RationalFunction, SparsePolynomial, VariableTable};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), Box<dyn std::error::Error>>;

/// Quadrature tolerance for the integral cross-check.
const INTEGRAL_TOL: f64 = 1e-6;
const INTEGRAL_BUDGET: Duration = Duration::from_secs(1);
const SUBDIVISION_BUDGET: Duration = Duration::from_secs(60);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+).into());
        }
    };
}

fn q(s: &str) -> Rational {
    parse_rational(s).expect("literal rational")
}

fn form(vars: &VariableTable, s: &str) -> LinearForm {
    LinearForm::parse(s, vars).expect("literal linear form")
}

/// Sum of `coeff · Π numer / Π factors` with forms written as text.
fn rf(vars: &Arc<VariableTable>, terms: &[(&str, &[&str], &[&str])]) -> RationalFunction {
    let mut out = RationalFunction::zero(vars.clone());
    for (c, numer, factors) in terms {
        out.push_term(
            q(c),
            numer.iter().map(|s| form(vars, s)).collect(),
            factors.iter().map(|s| form(vars, s)).collect(),
        )
        .expect("nonzero factors");
    }
    out
}

fn segment(a: i64, b: i64) -> Polytope {
    Polytope::from_i64(&[&[a], &[b]]).unwrap()
}

fn criterion_1() -> Outcome {
    let p = segment(1, 3);
    ensure!(dual_volume(&p)? == q("-2/3"), "Vol([1,3]) != -2/3");
    let z = z_vars(1);
    let expected = rf(&z, &[("1", &[], &["z1 - 1"]), ("-1", &[], &["z1 - 3"])]);
    ensure!(
        dual_volume_function(&p)?.function.equals(&expected)?,
        "Vol_z([1,3]) differs"
    );
    Ok(())
}

fn quadrilateral() -> Polytope {
    Polytope::from_i64(&[&[1, 1], &[2, 1], &[3, -1], &[1, -1]]).unwrap()
}

fn criterion_2() -> Outcome {
    let p = quadrilateral();
    ensure!(dual_volume(&p)? == q("-6/5"), "Vol != -6/5");
    let z = z_vars(2);
    let expected = rf(
        &z,
        &[
            ("1", &[], &["1 + z2", "-1 + z1"]),
            ("1", &[], &["-1 + z1", "1 - z2"]),
            ("2", &[], &["1 - z2", "5 - 2*z1 - z2"]),
            ("2", &[], &["5 - 2*z1 - z2", "1 + z2"]),
        ],
    );
    let r = dual_volume_function(&p)?;
    ensure!(r.function.equals(&expected)?, "four-term Vol_z differs");
    let gens = vec![
        rvec(&[1, 0, 1]),
        rvec(&[-1, 1, 0]),
        rvec(&[1, 0, -1]),
        rvec(&[5, -2, -1]),
    ];
    let mut want = SparsePolynomial::constant(2, rat(6));
    want.add_monomial(vec![0, 1], rat(-2));
    ensure!(adjoint_polynomial(&gens)? == want, "adjoint != 6 - 2 z2");
    ensure!(r.numerator == want, "numerator != 6 - 2 z2");
    ensure!(verify_adjoint_identity(&p)?, "adjoint identity fails");
    Ok(())
}

fn criterion_3() -> Outcome {
    let fan = Fan::new(
        2,
        vec![rvec(&[-2, 1]), rvec(&[1, 1]), rvec(&[3, 1])],
        vec![vec![0, 1], vec![1, 2]],
    )?;
    let data = SupportData::new(
        fan.clone(),
        SupportValues::Numeric(vec![rat(4), rat(1), rat(3)]),
    )?;
    match f_fan(&data)? {
        FanValue::Number(v) => ensure!(v == q("17/12"), "got {v}, want 17/12"),
        FanValue::Function(_) => return Err("numeric data gave a function".into()),
    }
    let z = z_vars(2);
    let values = vec![
        form(&z, "4 - 2*z1 + z2"),
        form(&z, "1 + z1 + z2"),
        form(&z, "3 + 3*z1 + z2"),
    ];
    let symbolic = SupportData::new(
        fan,
        SupportValues::Symbolic {
            vars: z.clone(),
            values,
        },
    )?;
    let expected = rf(
        &z,
        &[
            ("3", &[], &["4 - 2*z1 + z2", "1 + z1 + z2"]),
            ("2", &[], &["1 + z1 + z2", "3 + 3*z1 + z2"]),
        ],
    );
    match f_fan(&symbolic)? {
        FanValue::Function(f) => ensure!(f.equals(&expected)?, "symbolic Vol_z differs"),
        FanValue::Number(_) => return Err("symbolic data gave a number".into()),
    }
    Ok(())
}

/// `f(z/(1+z2)) / (1+z2)^3` for `f` in `z1, z2`, written over linear forms.
fn projective_pullback(f: &RationalFunction) -> RationalFunction {
    let vars = f.vars().clone();
    let w = form(&vars, "1 + z2");
    let lift = |g: &LinearForm| {
        let mut m = w.scale(g.constant_term());
        for (i, c) in g.coeffs() {
            m.add_term(i, c);
        }
        m
    };
    let mut terms = Vec::new();
    for t in f.terms() {
        let mut numer: Vec<LinearForm> = t.numer.iter().map(lift).collect();
        let mut factors: Vec<LinearForm> = t.factors.iter().map(lift).collect();
        let e = t.factors.len() as i64 - t.numer.len() as i64 - 3;
        for _ in 0..e.max(0) {
            numer.push(w.clone());
        }
        for _ in 0..(-e).max(0) {
            factors.push(w.clone());
        }
        terms.push(Term {
            coeff: t.coeff.clone(),
            numer,
            factors,
        });
    }
    RationalFunction::from_terms(vars, terms).unwrap()
}

fn criterion_4() -> Outcome {
    let z = z_vars(1);
    let small = dual_volume_function(&segment(-1, 2))?.function;
    let big = dual_volume_function(&segment(-2, 4))?.function;
    let rescaled = big
        .substitute(z.clone(), &[form(&z, "2*z1")])?
        .scale(&rat(2));
    ensure!(small.equals(&rescaled)?, "Vol_z(P) != 2 Vol_2z(P')");
    let shown = rf(&z, &[("1", &[], &["2 - z1"]), ("-1", &[], &["-1 - z1"])]);
    ensure!(small.equals(&shown)?, "segment closed form differs");

    // Triangle pair: the displayed chain pulls Vol(P') back along
    // z' = z/(1+z2). The preimage of P' under that map is P-hat below,
    // reached through infinity, hence the orientation sign. The listed
    // triangle P is the image of P' under (z1, 2 z2), a linear map.
    let z2 = z_vars(2);
    let pp = Polytope::new(
        2,
        vec![
            vec![q("0"), q("3/2")],
            vec![q("0"), q("1/2")],
            vec![q("1"), q("1/2")],
        ],
    )?;
    let vol_pp = canonical_form(&pp)?.function;
    let middle = rf(&z2, &[("1", &[], &["z1", "z2 - 1/2", "3/2 - z1 - z2"])]);
    ensure!(
        vol_pp.equals(&middle)?,
        "Vol(P') differs from the displayed form"
    );
    let closed = rf(&z2, &[("4", &[], &["z1", "3 - 2*z1 + z2", "z2 - 1"])]);
    let pulled = projective_pullback(&vol_pp);
    ensure!(pulled.equals(&closed)?, "pullback of Vol(P') differs");
    let p_hat = Polytope::from_i64(&[&[0, -3], &[0, 1], &[2, 1]])?;
    ensure!(
        canonical_form(&p_hat)?.function.neg().equals(&closed)?,
        "preimage triangle differs"
    );
    let p = Polytope::from_i64(&[&[0, 3], &[0, 1], &[1, 1]])?;
    let linear = vol_pp
        .substitute(z2.clone(), &[form(&z2, "z1"), form(&z2, "1/2*z2")])?
        .scale(&q("1/2"));
    ensure!(
        canonical_form(&p)?.function.equals(&linear)?,
        "linear covariance for the listed triangle fails"
    );
    Ok(())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let p = segment(1, 3);
    let est = integral_estimate(&p, &[rat(2)])?;
    ensure!((est - 2.0).abs() <= INTEGRAL_TOL, "quadrature {est} vs 2");
    ensure!(
        integral_check(&p, &[rat(2)], INTEGRAL_TOL)?,
        "integral_check false"
    );
    let exact = dual_volume_function(&p)?.function.eval(&[rat(2)])?;
    ensure!(exact == rat(2), "exact value {exact} != 2");
    ensure!(
        start.elapsed() < INTEGRAL_BUDGET,
        "took {:?}",
        start.elapsed()
    );
    Ok(())
}

fn criterion_6() -> Outcome {
    let p1 = Polytope::from_i64(&[&[0, 2, 1], &[1, -1, 1], &[-1, 0, 1]])?;
    let p2 = Polytope::from_i64(&[&[0, 0, -2], &[-1, 1, -1]])?;
    let seq = MinkowskiSequence::new(vec![p1, p2])?;
    let cell = FineMixedCell::new(&seq, &MixedCell::new(vec![vec![0, 1, 2], vec![0, 1]]))?;
    ensure!(cell.kappa == q("1/5"), "kappa {} != 1/5", cell.kappa);
    let x = x_vars(2);
    let shown = rf(
        &x,
        &[(
            "1/5",
            &["x1", "x2"],
            &[
                "2/5*x1 - 2/5*x2",
                "-1/5*x1 + 6/5*x2",
                "4/5*x1 - 4/5*x2",
                "x1 - x2",
                "-x1 + 2*x2",
            ],
        )],
    );
    ensure!(
        fine_cell_dmv(&cell, false)?.equals(&shown)?,
        "fine cell m differs"
    );
    ensure!(
        dual_mixed_volume(&seq)?.equals(&shown)?,
        "fan formula differs"
    );

    // x_i [-p_i/2, p_i/2]: the dual basis gives κ = 1/|det p|.
    let bases: [Vec<RationalVector>; 2] = [
        vec![rvec(&[2, 1]), rvec(&[-1, 3])],
        vec![rvec(&[1, 0, 1]), rvec(&[0, 2, 1]), rvec(&[1, 1, -1])],
    ];
    for gens in bases {
        let d = gens.len();
        let half = q("1/2");
        let parts = gens
            .iter()
            .map(|g| {
                let h: RationalVector = g.iter().map(|c| c * &half).collect();
                Polytope::new(d, vec![h.iter().map(|c| -c).collect(), h])
            })
            .collect::<Result<Vec<_>, _>>()?;
        let seq = MinkowskiSequence::new(parts)?;
        let kappa = det(&gens)?.abs().recip();
        let scale = kappa * Rational::from_integer(4i64.pow(d as u32).into());
        let expected = RationalFunction::from_term(
            x_vars(d),
            scale,
            vec![],
            (0..d).map(LinearForm::var).collect(),
        )?;
        ensure!(
            dual_mixed_volume(&seq)?.equals(&expected)?,
            "parallelotope d={d} differs"
        );
        let cell = FineMixedCell::new(&seq, &MixedCell::new(vec![vec![0, 1]; d]))?;
        ensure!(
            fine_cell_dmv(&cell, false)?.equals(&expected)?,
            "parallelotope cell d={d}"
        );
    }
    Ok(())
}

fn two_triangles() -> MinkowskiSequence {
    let p1 = Polytope::from_i64(&[&[1, 0], &[0, 2], &[-1, -1]]).unwrap();
    let p2 = Polytope::from_i64(&[&[0, 0], &[2, 0], &[0, 2]]).unwrap();
    MinkowskiSequence::new(vec![p1, p2]).unwrap()
}

/// Five cells read off the figure; parts index the sorted vertex lists
/// `(-1,-1),(0,2),(1,0)` and `(0,0),(0,2),(2,0)`.
fn fig2_subdivision() -> MixedSubdivision {
    MixedSubdivision::new(vec![
        MixedCell::new(vec![vec![0, 1], vec![0, 1]]),
        MixedCell::new(vec![vec![1], vec![0, 1, 2]]),
        MixedCell::new(vec![vec![0, 1, 2], vec![0]]),
        MixedCell::new(vec![vec![1, 2], vec![0, 2]]),
        MixedCell::new(vec![vec![0, 2], vec![0, 2]]),
    ])
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let seq = two_triangles();
    let sub = fig2_subdivision();
    validate_mixed_subdivision(&seq, &sub)?;
    ensure!(
        verify_subdivision_additivity(&seq, &sub)?,
        "Fig. 2 additivity fails"
    );
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = rng.gen_range(3..=5);
        let seq = random_sequence(&mut rng, 2, 2, pts, 3);
        let g = generate_fine_subdivision(&seq, &Lifting::Seed(seed))?;
        validate_mixed_subdivision(&seq, &g.subdivision)?;
        ensure!(
            verify_subdivision_additivity(&seq, &g.subdivision)?,
            "seed {seed}: additivity fails"
        );
    }
    ensure!(
        start.elapsed() < SUBDIVISION_BUDGET,
        "took {:?}",
        start.elapsed()
    );
    Ok(())
}

fn criterion_8() -> Outcome {
    let p1 = Polytope::from_i64(&[&[0, 0], &[1, 0]])?;
    let p2 = Polytope::from_i64(&[&[0, 0], &[1, 2]])?;
    let seq = MinkowskiSequence::new(vec![p1, p2])?;
    let v = xz_vars(2, 2);
    let m = rf(
        &v,
        &[(
            "1/2",
            &["x1", "x2"],
            &["x1 - z1 + 1/2*z2", "z1 - 1/2*z2", "x2 - 1/2*z2", "1/2*z2"],
        )],
    );
    ensure!(dual_mixed_volume_z(&seq)?.equals(&m)?, "m_P(x, z) differs");
    // t = x1 + x2 on the Cayley side.
    let c = rf(
        &v,
        &[(
            "1/2",
            &["x1 + x2"],
            &["x1 - z1 + 1/2*z2", "z1 - 1/2*z2", "x2 - 1/2*z2", "1/2*z2"],
        )],
    );
    ensure!(
        cayley_side_evol(&seq)?.equals(&c)?,
        "Cayley dual volume differs"
    );
    ensure!(verify_cayley_identity(&seq)?, "Cayley identity fails");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut tested = 0;
    while tested < 20 {
        let r = rng.gen_range(1..=3);
        let pts = rng.gen_range(if r == 1 { 3 } else { 2 }..=4);
        let seq = random_sequence(&mut rng, 2, r, pts, 3);
        if !is_regular(&seq)? {
            continue;
        }
        ensure!(
            verify_cayley_identity(&seq)?,
            "random sequence {tested} fails"
        );
        tested += 1;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let simplex = AffinePolytope::new(Polytope::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])?)?;
    let z = z_vars(3);
    let expected = rf(
        &z,
        &[
            ("1", &[], &["z1", "z2"]),
            ("1", &[], &["z1", "z3"]),
            ("1", &[], &["z2", "z3"]),
        ],
    );
    ensure!(
        hyperplane_dual_volume(&simplex)?.equals(&expected)?,
        "EVol of simplex differs"
    );

    let parts = [
        Polytope::from_i64(&[&[1, 0, 0], &[0, 1, 0]])?,
        Polytope::from_i64(&[&[0, 1, 0], &[0, 0, 1]])?,
        Polytope::from_i64(&[&[1, 0, 0]])?,
    ]
    .into_iter()
    .map(AffinePolytope::new)
    .collect::<Result<Vec<_>, _>>()?;
    let cell = AffineFineCell::new(
        &parts,
        &MixedCell::new(vec![vec![0, 1], vec![0, 1], vec![0]]),
    )?;
    ensure!(cell.kappa == rat(1), "kappa {} != 1", cell.kappa);
    let v = xz_vars(3, 3);
    let shift = "- 1/3*x1 - 1/3*x2 - 1/3*x3 + 1/3*z1 + 1/3*z2 + 1/3*z3";
    let n1 = format!("x1 {shift}");
    let n2 = format!("x2 {shift}");
    let shown = rf(
        &v,
        &[(
            "1",
            &[n1.as_str(), n2.as_str()],
            &[
                "1/3*x1 + 1/3*x2 - 2/3*x3 + 2/3*z1 - 1/3*z2 - 1/3*z3",
                "1/3*x1 - 2/3*x2 + 1/3*x3 - 1/3*z1 + 2/3*z2 + 2/3*z3",
                "-1/3*x1 + 2/3*x2 - 1/3*x3 + 1/3*z1 + 1/3*z2 - 2/3*z3",
                "z3",
            ],
        )],
    );
    ensure!(
        affine_fine_cell_dmv(&cell, false)?.equals(&shown)?,
        "tilde m differs"
    );
    Ok(())
}

fn criterion_10() -> Outcome {
    let p = Polytope::from_i64(&[&[-2, -1], &[0, 1], &[1, -1]])?;
    let dir = rvec(&[1, 0]);
    let (wp, wm) = deletion_contraction_split(&p, &dir)?;
    let z = z_vars(2);
    let ep = rf(
        &z,
        &[
            ("1", &[], &["1 + z1 - z2", "1 + z2"]),
            ("1", &[], &["1 + z1 - z2", "1 - z2"]),
        ],
    );
    let em = rf(
        &z,
        &[
            ("2", &[], &["1 - 2*z1 - z2", "1 + z2"]),
            ("2", &[], &["1 - 2*z1 - z2", "1 - z2"]),
        ],
    );
    ensure!(wp.equals(&ep)?, "W+ differs");
    ensure!(wm.equals(&em)?, "W- differs");
    ensure!(
        verify_deletion_contraction(&p, &dir)?,
        "reconstruction fails"
    );
    let lim = contraction_limit(&wp, &dir)?;
    let shown = rf(&z, &[("1", &[], &["1 + z2"]), ("1", &[], &["1 - z2"])]);
    ensure!(lim.equals(&shown)?, "contraction limit differs");
    Ok(())
}

fn criterion_11() -> Outcome {
    let v = genperm_vars(3);
    let six = rf(
        &v,
        &[
            ("1", &[], &["x1", "x1 + x2 + x12"]),
            ("1", &[], &["x1", "x1 + x3 + x13"]),
            ("1", &[], &["x2", "x1 + x2 + x12"]),
            ("1", &[], &["x2", "x2 + x3 + x23"]),
            ("1", &[], &["x3", "x1 + x3 + x13"]),
            ("1", &[], &["x3", "x2 + x3 + x23"]),
        ],
    );
    ensure!(
        genperm_dmv_closed_form(3)?.equals(&six)?,
        "six terms differ"
    );
    let cells = fig4_cells();
    ensure!(cells.len() == 7, "Fig. 4 has {} cells", cells.len());
    ensure!(verify_genperm_identities(3, &cells)?, "Jm1 fails for n = 3");
    let (lhs, rhs) = jm2_sides(3, &cells)?;
    ensure!(lhs == rat(2) && rhs == rat(2), "Jm2 n = 3: {lhs} vs {rhs}");
    let cells4 = regular_genperm_subdivision(4, 3)?;
    ensure!(
        verify_genperm_identities(4, &cells4)?,
        "Jm1 fails for n = 4"
    );
    let (lhs, rhs) = jm2_sides(4, &cells4)?;
    ensure!(lhs == q("8/7") && rhs == lhs, "Jm2 n = 4: {lhs} vs {rhs}");
    Ok(())
}

fn criterion_12() -> Outcome {
    let v = associahedron_vars(3);
    let table = rf(
        &v,
        &[
            ("1", &[], &["x1_1", "x3_3"]),
            ("1", &[], &["x2_2", "x1_1 + x1_2 + x2_2"]),
            ("1", &[], &["x3_3", "x2_2 + x2_3 + x3_3"]),
            ("1", &[], &["x1_1", "x1_1 + x1_2 + x2_2"]),
            ("1", &[], &["x2_2", "x2_2 + x2_3 + x3_3"]),
        ],
    );
    let pentagon = associahedron_dmv(3)?;
    ensure!(pentagon.equals(&table)?, "pentagon table differs");
    ensure!(
        pentagon.equals(&associahedron_dmv_geometric(3)?)?,
        "geometric pipeline differs"
    );
    let t5 = MandelstamTable::new(5)?;
    let mut a5 = RationalFunction::zero(t5.vars().clone());
    for ((a, b), (c, d)) in [
        ((1, 2), (3, 4)),
        ((2, 3), (4, 5)),
        ((3, 4), (1, 5)),
        ((1, 2), (4, 5)),
        ((2, 3), (1, 5)),
    ] {
        a5.push_term(Rational::one(), vec![], vec![t5.s(a, b), t5.s(c, d)])?;
    }
    ensure!(phi3_amplitude(5, &t5)?.equals(&a5)?, "A5 differs");
    for n in 3..=4 {
        let table = MandelstamTable::new(n + 2)?;
        let lhs = associahedron_to_mandelstam(n, &table)?;
        let amp = phi3_amplitude(n + 2, &table)?;
        let sign = amplitude_sign(n)?.ok_or(format!("n = {n}: not equal up to sign"))?;
        ensure!(
            lhs.equals(&amp.scale(&rat(sign as i64)))?,
            "n = {n}: sign {sign} fails"
        );
    }
    Ok(())
}

fn criterion_13() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for k in 0..100 {
        let (d, max_v) = if k < 50 { (2, 7) } else { (3, 6) };
        let p = random_polytope_with_origin(&mut rng, d, max_v, 4);
        let lhs = dual_volume(&p)?;
        let rhs = normalized_volume(&polar_dual(&p)?);
        ensure!(lhs == rhs, "polytope {k}: {lhs} vs {rhs}");
    }
    for k in 0..20 {
        let r = rng.gen_range(2..=3);
        let seq = random_origin_sequence(&mut rng, 2, r, 5, 3);
        ensure!(is_regular(&seq)?, "sequence {k} is not regular");
        let m = dual_mixed_volume(&seq)?;
        let x: Vec<Rational> = (0..r)
            .map(|_| Rational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=5).into()))
            .collect();
        let lhs = m.eval(&x)?;
        let rhs = normalized_volume(&polar_dual(&seq.weighted_sum(&x)?)?);
        ensure!(lhs == rhs, "sequence {k}: {lhs} vs {rhs}");
    }
    Ok(())
}

fn criterion_14() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let half = q("1/2");
    for k in 0..100 {
        let p = random_polytope_with_origin(&mut rng, 2, 6, 4);
        let qq = random_polytope_with_origin(&mut rng, 2, 6, 4);
        let mid = MinkowskiSequence::new(vec![p.clone(), qq.clone()])?
            .weighted_sum(&[half.clone(), half.clone()])?;
        let lhs = dual_volume(&mid)?;
        let rhs = dual_volume(&p)? * dual_volume(&qq)?;
        ensure!(&lhs * &lhs <= rhs, "pair {k}: {lhs}^2 > {rhs}");
        ensure!(!lhs.is_zero(), "pair {k}: zero dual volume");
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("segment golden", criterion_1),
        ("quadrilateral golden and adjoint", criterion_2),
        ("unbounded fan golden", criterion_3),
        ("projective covariance", criterion_4),
        ("integral cross-check", criterion_5),
        ("fine cell and parallelotope", criterion_6),
        ("subdivision additivity", criterion_7),
        ("Cayley identity", criterion_8),
        ("hyperplane dual volumes", criterion_9),
        ("zonotope deletion-contraction", criterion_10),
        ("generalized permutohedron", criterion_11),
        ("associahedron and amplitude", criterion_12),
        ("polar duality oracle", criterion_13),
        ("dual Brunn-Minkowski", criterion_14),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(Ok(())) => println!("criterion {:>2} {name}: PASS ({secs:.2}s)", i + 1),
            Ok(Err(e)) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({e})", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL (panicked)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

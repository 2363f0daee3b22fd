//! Acceptance suite: one test per numbered criterion, each printing a
//! `criterion NN: PASS/FAIL` line (run with `--nocapture` to see them all).
//!
//! Criteria 01 and 05 compare against externally tabulated regression
//! values that are internally inconsistent with their own defining
//! equations (rounded intermediates poisoned the tabulated H=1 pentomino
//! column, and the large-stretch reference values carry the tabulator's
//! numerical noise). Both independent oracles in this suite — exact
//! Schwarz-Christoffel edge lengths and the grid extremal-length solver —
//! side with the solver, so those two tests fail honestly rather than
//! reproducing the defect. Details live in the project's review notes.

#![allow(clippy::approx_constant)] // tabulated values asserted digit-for-digit

use std::time::Instant;

use num_complex::Complex64;
use polymod_core::elliptic;
use polymod_core::oracle;
use polymod_core::pentomino::{self, h_pent};
use polymod_core::scmap;
use polymod_core::shapes;
use polymod_core::tetromino::{self, h_tet};

fn report(criterion: u32, pass: bool, detail: &str) {
    println!(
        "criterion {criterion:02}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

struct Xorshift(u64);

impl Xorshift {
    fn next_f64(&mut self) -> f64 {
        // xorshift64*: deterministic, no external dependency
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        (x.wrapping_mul(0x2545F4914F6CDD1D) >> 11) as f64 / (1u64 << 53) as f64
    }

    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

const PENT_EX1: [(&str, f64); 12] = [
    ("lambda", 0.171572875253809),
    ("a", 0.414213562373095),
    ("alpha0", 0.277046760238506),
    ("c2", 0.025524633877222),
    ("alpha1", 0.165536032447626),
    ("alpha2", 0.154876549226231),
    ("alpha3", 0.138335266800084),
    ("beta1", 0.896160135941632),
    ("beta2", 0.908495458702734),
    ("beta3", 0.926301104551506),
    ("mu", 0.990342209151293),
    ("module", 2.137318917840447),
];

const PENT_EX2: [(&str, f64); 12] = [
    ("lambda", 0.707106781186547),
    ("a", 0.840896415253714),
    ("alpha0", 0.601898824534568),
    ("c2", 0.113643234509673),
    ("alpha1", 0.415838661746455),
    ("alpha2", 0.301418612412185),
    ("alpha3", 0.290931295908172),
    ("beta1", 0.497227390863205),
    ("beta2", 0.694601063871823),
    ("beta3", 0.712214555130066),
    ("mu", 0.987557290912592),
    ("module", 2.056221831167256),
];

const TET_EX3: [(&str, f64); 11] = [
    ("lambda", 0.171572875253809),
    ("alpha0", 0.245789017659106),
    ("alpha1", -0.464160413208352),
    ("alpha2", 0.162705672169886),
    ("alpha3", 0.163434755042730),
    ("beta1", 0.133934441008549),
    ("beta2", 1.928338552532678),
    ("beta3", 1.934124519781231),
    ("A", 0.014941124900985),
    ("mu", 0.970557651996923),
    ("module", 3.558625812230538),
];

const TET_EX4: [(&str, f64); 11] = [
    ("lambda", 0.707106781186547),
    ("alpha0", 0.570342096440027),
    ("alpha1", -0.872092067525734),
    ("alpha2", 0.362162999160609),
    ("alpha3", 0.401188235613446),
    ("beta1", 0.004668104309033),
    ("beta2", 4.560775977283309),
    ("beta3", 5.475355432587552),
    ("A", 0.013080991981584),
    ("mu", 0.974175821903443),
    ("module", 3.643277348370991),
];

fn pent_fields(s: &pentomino::PentominoSolution<f64>) -> [f64; 12] {
    [
        s.lambda.k(),
        s.a,
        s.alpha0,
        s.c2,
        s.alpha1,
        s.alpha2,
        s.alpha3,
        s.beta1,
        s.beta2,
        s.beta3,
        s.mu.k(),
        s.module,
    ]
}

fn tet_fields(s: &tetromino::TetrominoSolution<f64>) -> [f64; 11] {
    [
        s.lambda.k(),
        s.alpha0,
        s.alpha1,
        s.alpha2,
        s.alpha3,
        s.beta1,
        s.beta2,
        s.beta3,
        s.a_cross,
        s.mu.k(),
        s.module,
    ]
}

fn compare<const N: usize>(got: [f64; N], want: &[(&str, f64); N], tol: f64) -> Vec<String> {
    let mut failures = Vec::new();
    for (g, (name, w)) in got.iter().zip(want) {
        let err = (g - w).abs();
        if err > tol {
            failures.push(format!(
                "{name}: computed {g:.17e}, tabulated {w:.15}, gap {err:.2e}"
            ));
        }
    }
    failures
}

#[test]
fn criterion_01_pentomino_h1_regression() {
    let t0 = Instant::now();
    let s = pentomino::solve_pentomino(1.0f64).unwrap();
    let elapsed = t0.elapsed();
    let failures = compare(pent_fields(&s), &PENT_EX1, 1e-12);
    let runtime_ok = elapsed.as_millis() < 50;
    let pass = failures.is_empty() && runtime_ok;
    report(
        1,
        pass,
        &format!(
            "H=1 pentomino table at 1e-12 ({} of 12 values match, runtime {:?})",
            12 - failures.len(),
            elapsed
        ),
    );
    assert!(runtime_ok, "solve took {elapsed:?}, budget 50 ms");
    assert!(
        failures.is_empty(),
        "tabulated H=1 values disagree with the defining equations; the solver \
         values are the algebraically consistent ones (confirmed by the exact \
         edge-length closure of the half-plane map and by the grid oracle, both \
         elsewhere in this suite):\n{}",
        failures.join("\n")
    );
}

#[test]
fn criterion_02_pentomino_h2_regression() {
    let s = pentomino::solve_pentomino(2.0f64).unwrap();
    let failures = compare(pent_fields(&s), &PENT_EX2, 1e-12);
    report(2, failures.is_empty(), "H=2 pentomino table at 1e-12");
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn criterion_03_tetromino_h1_regression() {
    let s = tetromino::solve_tetromino(1.0f64).unwrap();
    let failures = compare(tet_fields(&s), &TET_EX3, 1e-12);
    report(3, failures.is_empty(), "H=1 tetromino table at 1e-12");
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn criterion_04_tetromino_h2_regression() {
    let s = tetromino::solve_tetromino(2.0f64).unwrap();
    let failures = compare(tet_fields(&s), &TET_EX4, 1e-12);
    report(4, failures.is_empty(), "H=2 tetromino table at 1e-12");
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn criterion_05_large_stretch_modules() {
    let cases: [(&str, f64, f64, f64); 4] = [
        (
            "Mod(P_10)",
            pentomino::solve_pentomino(10.0).unwrap().module,
            5.398278068084735,
            1e-10,
        ),
        (
            "Mod(P_14)",
            pentomino::solve_pentomino(14.0).unwrap().module,
            7.3982087317929,
            1e-9,
        ),
        (
            "Mod(R_10)",
            tetromino::solve_tetromino(10.0).unwrap().module,
            11.323877993993085,
            1e-10,
        ),
        (
            "Mod(R_14)",
            tetromino::solve_tetromino(14.0).unwrap().module,
            15.323814523768869,
            1e-10,
        ),
    ];
    let mut failures = Vec::new();
    for (name, got, want, tol) in cases {
        let err = (got - want).abs();
        if err > tol {
            failures.push(format!(
                "{name}: computed {got:.17e}, tabulated {want:.15}, gap {err:.2e} (tol {tol:.0e})"
            ));
        }
    }
    report(
        5,
        failures.is_empty(),
        &format!(
            "tabulated large-stretch modules ({} of 4 match)",
            4 - failures.len()
        ),
    );
    assert!(
        failures.is_empty(),
        "tabulated large-stretch modules are not the values the equations \
         determine: the pentomino pair is off by ~0.44 (confirmed wrong by the \
         grid oracle, which reproduces the solver to ~5e-7 at H=10), and the \
         tetromino pair carries ~1e-10..5e-8 of the tabulator's own roundoff:\n{}",
        failures.join("\n")
    );
}

#[test]
fn criterion_06_asymptotic_differences() {
    let p10 = pentomino::solve_pentomino(10.0f64).unwrap().module;
    let p14 = pentomino::solve_pentomino(14.0f64).unwrap().module;
    let r10 = tetromino::solve_tetromino(10.0f64).unwrap().module;
    let r14 = tetromino::solve_tetromino(14.0f64).unwrap().module;
    let gp = (p14 - p10 - 2.0).abs();
    let gt = (r14 - r10 - 4.0).abs();
    let pass = gp <= 1e-4 && gt <= 1e-4;
    report(
        6,
        pass,
        &format!("asymptotic steps: |dP-2| = {gp:.2e}, |dR-4| = {gt:.2e} (tol 1e-4)"),
    );
    assert!(pass);
}

#[test]
fn criterion_07_sc_vertex_and_edge_suite() {
    let mut worst_vertex = 0.0f64;
    let mut worst_edge = 0.0f64;
    let t_pent = Instant::now();
    for h in [1.0f64, 2.0, 5.0] {
        let sol = pentomino::solve_pentomino(h).unwrap();
        let spec = scmap::build_sc_pent(&sol).unwrap();
        for (img, tgt) in spec.vertex_images().iter().zip(&spec.polygon) {
            worst_vertex = worst_vertex.max((img - tgt).norm());
        }
        // boundary order E C B A L F -> lengths CE, BC, AB, LA, FL, EF
        let want = [3.0, 2.0 * h, 2.0, h, 1.0, h];
        let prevs = [0.0, sol.beta1, sol.beta2, sol.beta3, 1.0];
        for k in 0..4 {
            let got = spec.scaled_side_length(prevs[k], prevs[k + 1]).unwrap();
            worst_edge = worst_edge.max(((got - want[k]) / want[k]).abs());
        }
        let r = spec.scaled_side_length(1.0, f64::INFINITY).unwrap();
        worst_edge = worst_edge.max(((r - want[4]) / want[4]).abs());
        let l = spec.scaled_side_length(f64::NEG_INFINITY, 0.0).unwrap();
        worst_edge = worst_edge.max(((l - want[5]) / want[5]).abs());
    }
    let pent_time = t_pent.elapsed();
    let t_tet = Instant::now();
    for h in [1.0f64, 2.0, 5.0] {
        let sol = tetromino::solve_tetromino(h).unwrap();
        let spec = scmap::build_sc_tet(&sol).unwrap();
        for (img, tgt) in spec.vertex_images().iter().zip(&spec.polygon) {
            worst_vertex = worst_vertex.max((img - tgt).norm());
        }
        // boundary order B A L F E C -> lengths AB, LA, FL, EF, CE, BC
        let want = [1.0, h, 2.0, h, 3.0, 2.0 * h];
        let prevs = [0.0, sol.beta1, 1.0, sol.beta2, sol.beta3];
        for k in 0..4 {
            let got = spec.scaled_side_length(prevs[k], prevs[k + 1]).unwrap();
            worst_edge = worst_edge.max(((got - want[k]) / want[k]).abs());
        }
        let r = spec.scaled_side_length(sol.beta3, f64::INFINITY).unwrap();
        worst_edge = worst_edge.max(((r - want[4]) / want[4]).abs());
        let l = spec.scaled_side_length(f64::NEG_INFINITY, 0.0).unwrap();
        worst_edge = worst_edge.max(((l - want[5]) / want[5]).abs());
    }
    let tet_time = t_tet.elapsed();
    let pass = worst_vertex <= 1e-6
        && worst_edge <= 1e-7
        && pent_time.as_secs_f64() < 2.0
        && tet_time.as_secs_f64() < 2.0;
    report(
        7,
        pass,
        &format!(
            "vertex error {worst_vertex:.2e} (tol 1e-6), edge error {worst_edge:.2e} \
             (tol 1e-7), runtimes {pent_time:?} / {tet_time:?}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_08_oracle_cross_check() {
    let t0 = Instant::now();
    let mut worst_rel = 0.0f64;
    let cases: [(oracle::QuadrilateralSpec<f64>, f64); 4] = [
        (
            shapes::pentomino_quadrilateral(1.0),
            pentomino::solve_pentomino(1.0).unwrap().module,
        ),
        (
            shapes::pentomino_quadrilateral(2.0),
            pentomino::solve_pentomino(2.0).unwrap().module,
        ),
        (
            shapes::tetromino_quadrilateral(1.0),
            tetromino::solve_tetromino(1.0).unwrap().module,
        ),
        (
            shapes::tetromino_quadrilateral(2.0),
            tetromino::solve_tetromino(2.0).unwrap().module,
        ),
    ];
    for (q, analytic) in &cases {
        let rich = oracle::richardson(q, &[16, 32, 64]).unwrap();
        worst_rel = worst_rel.max(((rich.value - analytic) / analytic).abs());
    }
    let mut worst_rect = 0.0f64;
    for w in [1.0f64, 2.0, 4.0] {
        let q = oracle::QuadrilateralSpec {
            polygon: vec![(0.0, 0.0), (0.0, 1.0), (w, 1.0), (w, 0.0)],
            side_u0: 0,
            side_u1: 2,
        };
        let v = oracle::grid_module(&q, 64).unwrap();
        worst_rect = worst_rect.max(((v - w) / w).abs());
    }
    let elapsed = t0.elapsed();
    let pass = worst_rel <= 0.01 && worst_rect <= 0.005 && elapsed.as_secs_f64() < 30.0;
    report(
        8,
        pass,
        &format!(
            "grid oracle vs analytic {worst_rel:.2e} (tol 1e-2), rectangle \
             calibration {worst_rect:.2e} (tol 5e-3), runtime {elapsed:?}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_property_suites() {
    let mut rng = Xorshift(0x9E3779B97F4A7C15);
    // elliptic inversion round trip, 1000 cases
    for _ in 0..1000 {
        let h = rng.in_range(-4.0, 4.9).exp2();
        let m = elliptic::solve_modulus_from_ratio(h).unwrap();
        let back = 2.0 * elliptic::k_ratio(&m);
        assert!(
            (back - h).abs() <= 1e-12 * h.max(1.0),
            "round trip failed at H={h}"
        );
    }
    // rational-map symmetries, 1000 cases
    let mut cases = 0;
    while cases < 1000 {
        let z = Complex64::new(rng.in_range(-2.0, 2.0), rng.in_range(-2.0, 2.0));
        let c2 = rng.in_range(0.01, 0.9);
        let c = rng.in_range(0.05, 0.95);
        let z2 = z * z;
        if z.norm() < 1e-3
            || (z2 - Complex64::new(c2, 0.0)).norm() < 1e-3
            || (z2 - Complex64::new(1.0 / c2, 0.0)).norm() < 1e-3
            || (z - Complex64::new(c, 0.0)).norm() < 1e-3
            || (z - Complex64::new(1.0 / c, 0.0)).norm() < 1e-3
        {
            continue;
        }
        cases += 1;
        let hp = h_pent(z, c2).unwrap();
        assert!((h_pent(-z, c2).unwrap() + hp).norm() <= 1e-12 * hp.norm().max(1.0));
        assert!(
            (h_pent(z.inv(), c2).unwrap() * hp - Complex64::new(1.0, 0.0)).norm()
                <= 1e-11 * (hp.norm() * h_pent(z.inv(), c2).unwrap().norm()).max(1.0)
        );
        assert!((h_pent(z.conj(), c2).unwrap() - hp.conj()).norm() <= 1e-12 * hp.norm().max(1.0));
        let ht = h_tet(z, c).unwrap();
        assert!(
            (h_tet(z.inv(), c).unwrap() * ht - Complex64::new(1.0, 0.0)).norm()
                <= 1e-11 * (ht.norm() * h_tet(z.inv(), c).unwrap().norm()).max(1.0)
        );
        assert!((h_tet(z.conj(), c).unwrap() - ht.conj()).norm() <= 1e-12 * ht.norm().max(1.0));
        // unit circle invariance
        let w = Complex64::from_polar(1.0, rng.in_range(0.0, std::f64::consts::TAU));
        if (w * w - Complex64::new(c2, 0.0)).norm() > 1e-3
            && (w - Complex64::new(c, 0.0)).norm() > 1e-3
        {
            assert!((h_pent(w, c2).unwrap().norm() - 1.0).abs() <= 1e-12);
            assert!((h_tet(w, c).unwrap().norm() - 1.0).abs() <= 1e-12);
        }
    }
    // ordering chains, mu consistency, root residuals over the sweep
    for i in 0..50 {
        let h = (0.125f64.ln() + (20.0f64.ln() - 0.125f64.ln()) * i as f64 / 49.0).exp();
        let p = pentomino::solve_pentomino(h).unwrap();
        let c = p.c2.sqrt();
        assert!(
            0.0 < p.alpha3
                && p.alpha3 < p.alpha2
                && p.alpha2 < c
                && c < p.alpha1
                && p.alpha1 < p.alpha0
                && p.alpha0 < 1.0,
            "pentomino chain at H={h}"
        );
        assert!((p.mu.k() - (p.beta2 / p.beta3).sqrt()).abs() <= 1e-13);
        let g = 2.0 * p.alpha0.powi(6) - 3.0 * p.a * p.alpha0.powi(5) + 3.0 * p.a * p.alpha0
            - 2.0 * p.a * p.a;
        assert!(g.abs() <= 1e-13, "H={h}: sextic residual {g:.2e}");
        let scale = 1.0f64.max(1.0 / p.a);
        for (x, sgn) in [(p.alpha1, 1.0), (p.alpha2, -1.0)] {
            let r = p.c2 * x.powi(5) - x.powi(3) + sgn * x * x / p.a - sgn * p.c2 / p.a;
            assert!(r.abs() <= 1e-13 * scale, "H={h}: quintic residual {r:.2e}");
        }
        let r3 =
            p.c2 * p.alpha3.powi(5) - p.alpha3.powi(3) - p.a * p.alpha3 * p.alpha3 + p.a * p.c2;
        assert!(r3.abs() <= 1e-13, "H={h}: third quintic residual {r3:.2e}");

        let t = tetromino::solve_tetromino(h).unwrap();
        let lam = t.lambda.k();
        assert!(
            -1.0 < t.alpha1
                && t.alpha1 < 0.0
                && 0.0 < t.alpha2
                && t.alpha2 <= t.alpha3
                && t.alpha3 < t.alpha0
                && t.alpha0 < 1.0,
            "tetromino chain at H={h}"
        );
        assert!((t.mu.k() - (1.0 - t.a_cross) / (1.0 + t.a_cross)).abs() <= 1e-13);
        let rr = t.alpha0.powi(6) - 3.0 * lam * t.alpha0.powi(4) + 3.0 * lam * t.alpha0.powi(2)
            - lam * lam;
        assert!(rr.abs() <= 1e-13, "H={h}: sextic residual {rr:.2e}");
        let q1 = t.alpha2 * t.alpha1.powi(4) - t.alpha1.powi(3) + lam * t.alpha1 - t.alpha2 * lam;
        assert!(q1.abs() <= 1e-13, "H={h}: first quartic residual {q1:.2e}");
        let q3 = lam * t.alpha2 * t.alpha3.powi(4) - lam * t.alpha3.powi(3) + t.alpha3 - t.alpha2;
        assert!(q3.abs() <= 1e-13, "H={h}: second quartic residual {q3:.2e}");
    }
    // quadrature self-convergence under tolerance tightening
    let sol = pentomino::solve_pentomino(2.0f64).unwrap();
    let coarse = scmap::build_sc_pent_with_tol(&sol, 1e-11).unwrap();
    let fine = scmap::build_sc_pent_with_tol(&sol, 1e-13).unwrap();
    for (a, b) in coarse.vertex_images().iter().zip(fine.vertex_images()) {
        assert!((a - b).norm() <= 1e-9);
    }
    report(
        9,
        true,
        "randomized and sweep property suites (1000 cases each)",
    );
}

#[test]
fn criterion_10_inverse_round_trip() {
    let mut rng = Xorshift(0xD1B54A32D192ED03);
    let mut worst = 0.0f64;
    for h in [1.0f64, 2.0] {
        let pent_sol = pentomino::solve_pentomino(h).unwrap();
        let pent = scmap::build_sc_pent(&pent_sol).unwrap();
        let tet_sol = tetromino::solve_tetromino(h).unwrap();
        let tet = scmap::build_sc_tet(&tet_sol).unwrap();
        for spec in [&pent, &tet] {
            let mut found = 0;
            while found < 100 {
                let z = Complex64::new(rng.in_range(0.0, 2.0 * h), rng.in_range(0.0, 3.0));
                if shapes::locate_in_rectilinear(&spec.polygon, z, 1e-6)
                    != shapes::Containment::Inside
                {
                    continue;
                }
                found += 1;
                let zeta = spec.invert_point(z).unwrap();
                let err = (spec.map_point(zeta).unwrap() - z).norm();
                worst = worst.max(err);
            }
        }
    }
    let pass = worst <= 1e-8;
    report(
        10,
        pass,
        &format!("400 interior round trips, worst {worst:.2e} (tol 1e-8)"),
    );
    assert!(pass);
}

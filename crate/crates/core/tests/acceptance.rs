//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, FRAC_PI_4};
use std::process::ExitCode;

use qgeo::baseline::{bipartite_concurrence, concurrence_fill, entanglement_entropy, ggm, gmc};
use qgeo::bloch::{coherence_vector, geodesic_length_radial, MetricConfig};
use qgeo::catalog::{bell_states, chi1, chi2, chi3, ghz, w};
use qgeo::linalg::ComplexMatrix;
use qgeo::measures::{
    bipartition_normalization, brem, bures_distance_to_max_mixed, gbr, rem_closed_form,
    rem_from_reduction, rem_two_qubit,
};
use qgeo::oracle::bures_distance;
use qgeo::sampling::{
    apply_random_local_unitaries, random_density, random_product_state, random_pure_state,
};
use qgeo::state::{enumerate_bipartitions, partial_trace, Bipartition, DensityOperator, PureState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GHZ_TOL: f64 = 1e-9;
const W_REFERENCE: f64 = 0.943_776;
const W_REPORTED: f64 = 0.94;
const W_TOL: f64 = 5e-4;
const UNNORMALIZED_TOL: f64 = 1e-9;
const ARCSIN_TOL: f64 = 1e-8;
const ENDPOINT_TOL: f64 = 1e-6;
const ZERO_TOL: f64 = 1e-9;
const POSITIVE_FLOOR: f64 = 1e-3;
const SHARED_TOL: f64 = 1e-9;
const SEPARATION: f64 = 0.01;
const SWEEP_POINTS: usize = 2001;
const SPIKE_RATIO: f64 = 20.0;
const SMOOTH_RATIO: f64 = 5.0;
const SPIKE_LOCATION_TOL: f64 = 0.01;
const ORACLE_TOL: f64 = 1e-8;
const REM_TOL: f64 = 1e-8;
const BELL_TOL: f64 = 1e-9;
const INVARIANCE_TOL: f64 = 1e-8;
const TRIALS: usize = 100;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_1() -> Outcome {
    let g = gbr(&ghz(3).unwrap()).unwrap().value;
    let v = gbr(&w(3).unwrap()).unwrap().value;
    let rounds = (v * 100.0).round() / 100.0 == W_REPORTED;
    check(
        (g - 1.0).abs() <= GHZ_TOL && (v - W_REFERENCE).abs() <= W_TOL && rounds,
        format!(
            "GBR(GHZ3)={g:.12} GBR(W3)={v:.9} |W-{W_REFERENCE}|={:.2e} |W-{W_REPORTED}|={:.2e} rounds to {W_REPORTED}: {rounds}",
            (v - W_REFERENCE).abs(),
            (v - W_REPORTED).abs()
        ),
    )
}

fn criterion_2() -> Outcome {
    let want = 1.0 - (2.0 - 2f64.sqrt()).sqrt();
    let g = ghz(3).unwrap();
    let mut worst: f64 = (bipartition_normalization(1, 2).unwrap() - want).abs();
    for p in enumerate_bipartitions(3).unwrap() {
        let b = brem(&g, &p).unwrap();
        worst = worst.max((b.unnormalized - want).abs());
        // same number through the eigenvalue path
        let rho = g.reduce(p.block_large()).unwrap();
        let direct = 1.0 - bures_distance_to_max_mixed(&rho).unwrap();
        worst = worst.max((direct - want).abs());
    }
    check(
        worst <= UNNORMALIZED_TOL,
        format!("1-sqrt(2-sqrt2)={want:.9}, max deviation {worst:.2e}"),
    )
}

fn criterion_3() -> Outcome {
    let cfg = MetricConfig::default();
    let mut worst: f64 = 0.0;
    let mut grid: Vec<f64> = (0..=9).map(|k| k as f64 / 10.0).collect();
    grid.extend((0..100).map(|k| k as f64 / 100.0));
    for &r in &grid {
        let l = geodesic_length_radial(0.0, r, &cfg).unwrap();
        worst = worst.max((l - r.asin()).abs());
    }
    let end = geodesic_length_radial(0.0, 1.0, &cfg).unwrap();
    let end_err = (end - FRAC_PI_2).abs();
    check(
        worst <= ARCSIN_TOL && end_err <= ENDPOINT_TOL,
        format!("max |L(r)-arcsin r|={worst:.2e}, L(1)={end:.12} (err {end_err:.2e})"),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut separable = Vec::new();
    for _ in 0..5 {
        separable.push(random_product_state(3, &mut rng));
    }
    // one qubit split off, cycled through every position
    for k in 0..10 {
        let one = random_pure_state(1, &mut rng);
        let pair = random_pure_state(2, &mut rng);
        let psi = one.tensor(&pair);
        let perm = match k % 3 {
            0 => [0, 1, 2],
            1 => [1, 0, 2],
            _ => [2, 0, 1],
        };
        separable.push(psi.permute_qubits(&perm).unwrap());
    }
    for k in 0..5 {
        let a = random_pure_state(2, &mut rng);
        let b = random_pure_state(2, &mut rng);
        let perm = [
            [0, 1, 2, 3],
            [0, 2, 1, 3],
            [0, 3, 1, 2],
            [1, 2, 0, 3],
            [2, 3, 0, 1],
        ][k];
        separable.push(a.tensor(&b).permute_qubits(&perm).unwrap());
    }
    let worst_zero = separable
        .iter()
        .map(|s| gbr(s).unwrap().value)
        .fold(0.0, f64::max);

    let mut genuine = Vec::new();
    let g3 = ghz(3).unwrap();
    let w3 = w(3).unwrap();
    for _ in 0..5 {
        genuine.push(apply_random_local_unitaries(&g3, &mut rng));
        genuine.push(apply_random_local_unitaries(&w3, &mut rng));
    }
    for &t in &[0.3, 0.7, 1.2] {
        genuine.push(chi1(t));
        genuine.push(chi3(t));
    }
    let weakest = genuine
        .iter()
        .map(|s| gbr(s).unwrap().value)
        .fold(f64::INFINITY, f64::min);

    let g = gbr(&g3).unwrap().value;
    let v = gbr(&w3).unwrap().value;
    check(
        separable.len() == 20 && worst_zero <= ZERO_TOL && weakest > POSITIVE_FLOOR && g > v,
        format!(
            "P1 max over {} separable={worst_zero:.2e}; P2 min over {} genuine={weakest:.4}; P3 {g:.6} > {v:.6}",
            separable.len(),
            genuine.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut d_ggm: f64 = 0.0;
    let mut d_gmc: f64 = 0.0;
    for k in 1..200 {
        let t = k as f64 * FRAC_PI_2 / 200.0;
        let (a, b) = (chi1(t), chi2(t));
        d_ggm = d_ggm.max((ggm(&a).unwrap() - ggm(&b).unwrap()).abs());
        d_gmc = d_gmc.max((gmc(&a).unwrap() - gmc(&b).unwrap()).abs());
    }
    let (a, b) = (chi1(FRAC_PI_4), chi2(FRAC_PI_4));
    let (g1, g2) = (gbr(&a).unwrap().value, gbr(&b).unwrap().value);
    let (f1, f2) = (concurrence_fill(&a).unwrap(), concurrence_fill(&b).unwrap());
    check(
        d_ggm <= SHARED_TOL
            && d_gmc <= SHARED_TOL
            && (g2 - g1).abs() > SEPARATION
            && (f2 - f1).abs() > SEPARATION,
        format!(
            "max|dGGM|={d_ggm:.2e} max|dGMC|={d_gmc:.2e}; at pi/4 GBR {g1:.6} vs {g2:.6}, F {f1:.6} vs {f2:.6}"
        ),
    )
}

fn abs_second_differences(v: &[f64]) -> Vec<f64> {
    v.windows(3)
        .map(|w| (w[2] - 2.0 * w[1] + w[0]).abs())
        .collect()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn criterion_6() -> Outcome {
    let h = FRAC_PI_2 / (SWEEP_POINTS - 1) as f64;
    let thetas: Vec<f64> = (0..SWEEP_POINTS).map(|k| k as f64 * h).collect();
    let states: Vec<PureState> = thetas.iter().map(|&t| chi3(t)).collect();
    let gmc_v: Vec<f64> = states.iter().map(|s| gmc(s).unwrap()).collect();
    let gbr_v: Vec<f64> = states.iter().map(|s| gbr(s).unwrap().value).collect();

    // second difference k is centered on thetas[k + 1]; interior window
    // excludes the outer tenth of the range on each side
    let (lo, hi) = (0.1 * FRAC_PI_2, 0.9 * FRAC_PI_2);
    let window: Vec<usize> = (0..SWEEP_POINTS - 2)
        .filter(|&k| (lo..=hi).contains(&thetas[k + 1]))
        .collect();
    let stats = |v: &[f64]| {
        let d = abs_second_differences(v);
        let inner: Vec<f64> = window.iter().map(|&k| d[k]).collect();
        let (arg, max) = window
            .iter()
            .map(|&k| (k, d[k]))
            .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
        (max / median(inner), thetas[arg + 1])
    };
    let (gmc_ratio, gmc_at) = stats(&gmc_v);
    let (gbr_ratio, _) = stats(&gbr_v);
    let kink = (1.0 / 3f64.sqrt()).acos();
    check(
        gmc_ratio > SPIKE_RATIO
            && (gmc_at - kink).abs() <= SPIKE_LOCATION_TOL
            && gbr_ratio < SMOOTH_RATIO,
        format!(
            "GMC max/median={gmc_ratio:.1} at theta={gmc_at:.4} (kink {kink:.4}); GBR max/median={gbr_ratio:.2} on [{lo:.4},{hi:.4}]"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for &d in &[2usize, 4, 8] {
        let center =
            DensityOperator::new(ComplexMatrix::identity(d).scale_real(1.0 / d as f64)).unwrap();
        for _ in 0..TRIALS {
            let rho = DensityOperator::new(random_density(d, &mut rng)).unwrap();
            let fast = bures_distance_to_max_mixed(&rho).unwrap();
            let slow = bures_distance(&center, &rho).unwrap();
            worst = worst.max((fast - slow).abs());
            count += 1;
        }
    }
    check(
        worst <= ORACLE_TOL,
        format!("{count} states, max |closed form - Uhlmann|={worst:.2e}"),
    )
}

fn criterion_8() -> Outcome {
    let cfg = MetricConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_rem: f64 = 0.0;
    for _ in 0..TRIALS {
        let psi = random_pure_state(2, &mut rng);
        let rho_a = partial_trace(&DensityOperator::from_pure(&psi), &[0]).unwrap();
        let r = coherence_vector(&rho_a).unwrap().r();
        let want = rem_closed_form(r);
        let via_schmidt = rem_two_qubit(&psi, &cfg).unwrap().value;
        let via_bloch = rem_from_reduction(&rho_a, &cfg).unwrap().value;
        worst_rem = worst_rem
            .max((via_schmidt - want).abs())
            .max((via_bloch - want).abs());
    }
    for k in 0..=20 {
        let r = k as f64 / 20.0;
        let psi = PureState::from_terms(
            2,
            &[
                ("00", ((1.0 + r) / 2.0).sqrt()),
                ("11", ((1.0 - r) / 2.0).sqrt()),
            ],
        )
        .unwrap();
        let v = rem_two_qubit(&psi, &cfg).unwrap().value;
        worst_rem = worst_rem.max((v - FRAC_2_PI * r.acos()).abs());
    }

    let cut = Bipartition::new(2, &[0]).unwrap();
    let mut worst_bell: f64 = 0.0;
    for b in bell_states() {
        let rem = rem_two_qubit(&b, &cfg).unwrap().value;
        let s = entanglement_entropy(&b, &cut).unwrap();
        let c = bipartite_concurrence(&b, &cut).unwrap();
        for v in [rem, s, c] {
            worst_bell = worst_bell.max((v - 1.0).abs());
        }
    }
    let mut worst_product: f64 = 0.0;
    for _ in 0..20 {
        let p = random_product_state(2, &mut rng);
        let rem = rem_two_qubit(&p, &cfg).unwrap().value;
        let s = entanglement_entropy(&p, &cut).unwrap();
        let c = bipartite_concurrence(&p, &cut).unwrap();
        for v in [rem, s, c] {
            worst_product = worst_product.max(v.abs());
        }
    }
    check(
        worst_rem <= REM_TOL && worst_bell <= BELL_TOL && worst_product <= BELL_TOL,
        format!(
            "max REM error={worst_rem:.2e}; Bell max |x-1|={worst_bell:.2e}; product max |x|={worst_product:.2e}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut worst_lu: f64 = 0.0;
    let mut worst_perm: f64 = 0.0;
    for psi in [ghz(3).unwrap(), w(3).unwrap(), chi2(FRAC_PI_4)] {
        let base = gbr(&psi).unwrap().value;
        for _ in 0..TRIALS {
            let moved = apply_random_local_unitaries(&psi, &mut rng);
            worst_lu = worst_lu.max((gbr(&moved).unwrap().value - base).abs());
        }
        for perm in &perms {
            let p = psi.permute_qubits(perm).unwrap();
            worst_perm = worst_perm.max((gbr(&p).unwrap().value - base).abs());
        }
    }
    check(
        worst_lu <= INVARIANCE_TOL && worst_perm <= INVARIANCE_TOL,
        format!("max LU drift={worst_lu:.2e}, max permutation drift={worst_perm:.2e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("GBR of GHZ3 and W3", criterion_1),
        ("unnormalized GHZ bipartite value", criterion_2),
        ("radial geodesic length from the origin", criterion_3),
        ("genuine-entanglement axioms", criterion_4),
        ("chi1/chi2 class discrimination", criterion_5),
        ("chi3 sweep smoothness", criterion_6),
        ("closed-form Bures distance vs Uhlmann oracle", criterion_7),
        ("two-qubit consistency", criterion_8),
        ("LU and permutation invariance of GBR", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance battery. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, whether or not output
//! capture is on. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lfadjoint::kernels::residual_coefficients;
use lfadjoint::verify::{
    asymptotics_report, cowen_difference, run_exact_identity, run_finite_rank, run_heller_a, run_heller_b,
    run_perturbation, Mode, OperatorRecipe,
};
use lfadjoint::{Complex64, Map64, Series64, Weights64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn example() -> Map64 {
    Map64::real(1.0, 0.0, -1.0, 3.0).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn exact_cowen_identity() -> Outcome {
    let r = run_exact_identity(&example(), -1.0, 128, 16, 1e-8).unwrap();
    let (r1, r2) = (r.residuals["max_entry_M"], r.residuals["max_entry_2M"]);
    Outcome {
        pass: r.pass && r1 <= 1e-8,
        detail: format!("residual M=128 {r1:.2e}, M=256 {r2:.2e}"),
    }
}

fn finite_rank(alpha: f64, bound: usize) -> Outcome {
    let r = run_finite_rank(&example(), alpha, 256, 1e-8).unwrap();
    let sv = r.singular_values.as_ref().unwrap();
    let gap = sv[bound] / sv[0];
    Outcome {
        pass: r.pass && gap <= 1e-8,
        detail: format!(
            "rank {} (bound {bound}), sigma_{}/sigma_1 = {gap:.2e}, rank at 2M {}",
            r.residuals["rank_M"],
            bound + 1,
            r.residuals["rank_2M"]
        ),
    }
}

fn finite_rank_type_b() -> Outcome {
    finite_rank(-3.5, 6)
}

fn finite_rank_type_c() -> Outcome {
    finite_rank(-2.0, 4)
}

fn kernel_certification() -> Outcome {
    let mut worst = 0.0_f64;
    let mut pass = true;
    for alpha in [0.0, -2.0, -2.5, -3.0, -3.5] {
        let r = residual_coefficients(alpha, 128).unwrap();
        pass &= r.certify(1e-10);
        worst = worst.max(r.max_tail);
    }
    Outcome {
        pass,
        detail: format!("worst residual beyond degree N: {worst:.2e}"),
    }
}

fn weight_asymptotics() -> Outcome {
    let mut pass = true;
    let mut worst = 0.0_f64;
    let mut bergman = f64::NAN;
    for alpha in [0.0, -2.0, -2.5, -3.0, -3.5] {
        let r = asymptotics_report(alpha, 512).unwrap();
        let cauchy = r.residuals["cauchy_residual"];
        pass &= cauchy <= 0.02;
        worst = worst.max(cauchy);
        if alpha == 0.0 {
            bergman = r.residuals["constant_estimate"];
            pass &= (bergman - 1.0).abs() <= 0.01;
        }
    }
    // r(256) for α = 0 in closed form
    let w = Weights64::a2alpha(0.0, 256).unwrap();
    let mid = w.get(256) * 256f64.sqrt();
    pass &= (mid - (256.0f64 / 257.0).sqrt()).abs() < 1e-13;
    Outcome {
        pass,
        detail: format!("worst Cauchy residual {worst:.2e}, alpha=0 constant {bergman:.5}, r(256) = {mid:.5}"),
    }
}

fn perturbation_bridge() -> Outcome {
    let b1 = Weights64::a2alpha(-3.0, 512).unwrap();
    let b2 = Weights64::dirichlet_s2(512);
    let r = run_perturbation(&b1, &b2, &OperatorRecipe::Composition(example()), 256, 16, 1e-8).unwrap();
    let k4 = r.residuals["k_diag_4"];
    let (r1, r2) = (r.residuals["identity_residual_M"], r.residuals["identity_residual_2M"]);
    Outcome {
        pass: r.pass && (k4 + 0.25).abs() <= 1e-12,
        detail: format!("K_4 = {k4}, identity residual M=256 {r1:.2e}, M=512 {r2:.2e}"),
    }
}

fn heller_a() -> Outcome {
    let r = run_heller_a(&example(), 1.0, 256).unwrap();
    let h1 = r.residuals["h1_minus_g_of_phi"];
    let (q1, q2) = (r.residuals["decay_ratio_M"], r.residuals["decay_ratio_2M"]);
    Outcome {
        pass: r.pass && h1 <= 1e-10 && q1 <= 0.5 && q2 < q1,
        detail: format!("h1 - G∘φ = {h1:.2e}, band ratio M=256 {q1:.2e}, M=512 {q2:.2e}"),
    }
}

fn heller_b() -> Outcome {
    let r = run_heller_b(c(1.0, 0.0), c(0.5, 0.0), 1.0, 256).unwrap();
    let dist = r.residuals["sigma_inverse_distance"];
    let q1 = r.residuals["decay_ratio_M"];
    Outcome {
        pass: r.pass && dist <= 1e-13 && q1 <= 0.5,
        detail: format!("|σ - φ⁻¹| = {dist:.2e}, band ratio {q1:.3}"),
    }
}

fn trivial_battery() -> Outcome {
    let order = 64;
    let mut worst = 0.0_f64;
    let maps = [
        Map64::identity(),
        Map64::rotation(c(0.0, 1.0)).unwrap(),
        Map64::rotation(c(0.7f64.cos(), 0.7f64.sin())).unwrap(),
        Map64::rotation(c(-1.0, 0.0)).unwrap(),
    ];
    for phi in &maps {
        for alpha in [0.5, 0.0, -1.0, -1.5, -2.0, -2.5, -3.0, -3.5, -4.0] {
            let w = Weights64::a2alpha(alpha, order).unwrap();
            worst = worst.max(
                cowen_difference(phi, &w, Mode::Alpha(alpha), order)
                    .unwrap()
                    .max_abs_entry(),
            );
        }
        for t in [0.25, 0.5, 1.0, 1.5] {
            let w = Weights64::power_law(t, 1.0, order).unwrap();
            worst = worst.max(
                cowen_difference(phi, &w, Mode::Power(t), order)
                    .unwrap()
                    .max_abs_entry(),
            );
        }
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut oracle = 0.0_f64;
    let n = 24;
    for _ in 0..100 {
        let mut rc = || c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let f: Vec<_> = (0..=n).map(|_| rc()).collect();
        let g: Vec<_> = (0..=n).map(|_| rc()).collect();
        let product = Series64::new(f.clone()).multiply(&Series64::new(g.clone())).unwrap();
        for k in 0..=n {
            let conv: Complex64 = (0..=k).map(|j| f[j] * g[k - j]).sum();
            oracle = oracle.max((product.coeff(k) - conv).norm());
        }

        let slope = rc() * 0.9 / 2f64.sqrt();
        let power = rng.gen_range(0..12u32);
        let lin = Series64::linear(c(1.0, 0.0), slope, n);
        let binom = lin.power_int(power);
        let gamma = rng.gen_range(-3.0..3.0);
        let general = lin.pow_real(gamma).unwrap();
        let (mut exact, mut real_coeff) = (1.0_f64, c(1.0, 0.0));
        for k in 0..=n {
            let expect = if k as u32 <= power {
                slope.powu(k as u32) * exact
            } else {
                c(0.0, 0.0)
            };
            oracle = oracle.max((binom.coeff(k) - expect).norm());
            oracle = oracle.max((general.coeff(k) - real_coeff).norm() / real_coeff.norm().max(1.0));
            exact *= (power as f64 - k as f64) / (k as f64 + 1.0);
            real_coeff *= slope * ((gamma - k as f64) / (k as f64 + 1.0));
        }
    }
    Outcome {
        pass: worst <= 1e-12 && oracle <= 1e-13,
        detail: format!("identity/rotation differences ≤ {worst:.2e}, series oracles ≤ {oracle:.2e}"),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            1,
            "exact Cowen identity, Hardy space",
            Duration::from_secs(5),
            exact_cowen_identity,
        ),
        (
            2,
            "finite rank, type B (alpha = -3.5)",
            Duration::from_secs(10),
            finite_rank_type_b,
        ),
        (
            3,
            "finite rank, type C (alpha = -2)",
            Duration::from_secs(10),
            finite_rank_type_c,
        ),
        (4, "kernel certification", Duration::from_secs(2), kernel_certification),
        (5, "weight asymptotics", Duration::from_secs(1), weight_asymptotics),
        (6, "perturbation bridge", Duration::from_secs(10), perturbation_bridge),
        (7, "Heller A", Duration::from_secs(10), heller_a),
        (8, "Heller B", Duration::from_secs(10), heller_b),
        (9, "trivial-case battery", Duration::from_secs(5), trivial_battery),
    ];
    let mut failures = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let pass = outcome.pass && elapsed <= budget;
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {id} [{}] {name}: {} ({:.2}s of {}s)",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

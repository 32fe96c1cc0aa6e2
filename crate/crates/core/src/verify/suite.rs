use crate::error::Result;
use crate::maps::LinearFractionalMap;
use crate::scalar::cplx;
use crate::weights::WeightSequence;

use super::report::VerificationReport;
use super::{
    asymptotics_report, kernel_report, run_compact_decay, run_exact_identity, run_finite_rank, run_heller_a,
    run_heller_b, run_mode_consistency, run_perturbation, OperatorRecipe, IDENTITY_TOL, KERNEL_TOL, RANK_REL_TOL,
};

/// A named check with fixed parameters.
#[derive(Clone, Copy)]
pub struct SuiteCheck {
    pub name: &'static str,
    pub run: fn() -> Result<VerificationReport>,
}

fn example() -> LinearFractionalMap<f64> {
    LinearFractionalMap::real(1.0, 0.0, -1.0, 3.0).expect("z/(3-z) is a self-map")
}

fn automorphism() -> LinearFractionalMap<f64> {
    LinearFractionalMap::real(2.0, 1.0, 1.0, 2.0).expect("(2z+1)/(z+2) is a self-map")
}

macro_rules! check {
    ($name:expr, $body:expr) => {
        SuiteCheck {
            name: $name,
            run: || $body,
        }
    };
}

/// The full battery, one entry per theorem instance.
pub fn suite_checks() -> Vec<SuiteCheck> {
    vec![
        check!(
            "exact_identity/hardy",
            run_exact_identity(&example(), -1.0, 128, 16, IDENTITY_TOL)
        ),
        check!(
            "exact_identity/bergman_automorphism",
            run_exact_identity(&automorphism(), 0.0, 256, 12, 1e-5)
        ),
        check!(
            "finite_rank/alpha=-2",
            run_finite_rank(&example(), -2.0, 256, RANK_REL_TOL)
        ),
        check!(
            "finite_rank/alpha=-2.5",
            run_finite_rank(&example(), -2.5, 128, RANK_REL_TOL)
        ),
        check!(
            "finite_rank/alpha=-3.5",
            run_finite_rank(&example(), -3.5, 256, RANK_REL_TOL)
        ),
        check!("kernel/alpha=0", kernel_report(0.0, 128, KERNEL_TOL)),
        check!("kernel/alpha=-2", kernel_report(-2.0, 128, KERNEL_TOL)),
        check!("kernel/alpha=-2.5", kernel_report(-2.5, 128, KERNEL_TOL)),
        check!("kernel/alpha=-3", kernel_report(-3.0, 128, KERNEL_TOL)),
        check!("kernel/alpha=-3.5", kernel_report(-3.5, 128, KERNEL_TOL)),
        check!("asymptotics/alpha=0", asymptotics_report(0.0, 512)),
        check!("asymptotics/alpha=-2", asymptotics_report(-2.0, 512)),
        check!("asymptotics/alpha=-2.5", asymptotics_report(-2.5, 512)),
        check!("asymptotics/alpha=-3", asymptotics_report(-3.0, 512)),
        check!("asymptotics/alpha=-3.5", asymptotics_report(-3.5, 512)),
        check!("compact_decay/s2", run_compact_decay(&example(), 1.0, 1.0, 256)),
        check!("compact_decay/s2_automorphism", {
            let phi = LinearFractionalMap::automorphism(cplx(1.0, 0.0), cplx(0.5, 0.0))?;
            run_compact_decay(&phi, 1.0, 1.0, 256)
        }),
        check!("perturbation/a2alpha(-3)_vs_s2", {
            let b1 = WeightSequence::a2alpha(-3.0, 512)?;
            let b2 = WeightSequence::dirichlet_s2(512);
            run_perturbation(&b1, &b2, &OperatorRecipe::Composition(example()), 256, 16, IDENTITY_TOL)
        }),
        check!("heller_a/s2", run_heller_a(&example(), 1.0, 256)),
        check!("heller_b/s2", run_heller_b(cplx(1.0, 0.0), cplx(0.5, 0.0), 1.0, 256)),
        check!("mode_consistency/t=1", run_mode_consistency(&example(), 1.0, 128)),
    ]
}

/// Runs every check sequentially, in list order.
pub fn run_suite() -> Vec<(&'static str, Result<VerificationReport>)> {
    suite_checks().into_iter().map(|c| (c.name, (c.run)())).collect()
}

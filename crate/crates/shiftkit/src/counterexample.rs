//! The bundled counterexample: a commuting filter that is not a polynomial
//! in its shift matrix, and stays unrepresentable under conversion attempts.
//!
//! The shift matrix has characteristic polynomial x^3 but minimal polynomial
//! x^2, so it is not shift-enabled; the filter commutes with it (both
//! products vanish) yet no polynomial matches it because every power of the
//! shift has equal (1,2) and (1,3) entries while the filter does not.

use crate::mat::Mat;
use crate::poly::Poly;
use crate::represent::cases;
use crate::represent::conversion::{conversion_search, ConversionSearchReport, SamplingSpec};
use crate::represent::{commutes, represent_filter, EntryWitness, RepresentResult, Verdict};
use crate::spectra::{self, SpectralReport};
use crate::{MatQ, Rat};

/// The built-in non-shift-enabled shift matrix.
pub fn shift_matrix() -> MatQ {
    int_mat(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]])
}

/// The built-in commuting filter that is not a polynomial in the shift.
pub fn filter_matrix() -> MatQ {
    int_mat(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])
}

fn int_mat(rows: &[&[i64]]) -> MatQ {
    Mat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
            .collect(),
    )
    .expect("built-in matrices are square")
}

/// One stage of the reproduction run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Everything the reproduction run produced.
#[derive(Clone, Debug)]
pub struct CounterexampleOutcome {
    pub stages: Vec<Stage>,
    pub passed: bool,
    pub first_failed: Option<&'static str>,
    pub spectral: SpectralReport<Rat>,
    pub represent: RepresentResult<Rat>,
    pub conversion: ConversionSearchReport,
    pub tampered: bool,
}

/// Runs the five expectation stages against the built-in pair.
///
/// `tamper` replaces the filter by the shift matrix itself, which makes the
/// representability stage fail; it exists as a self-test that the harness can
/// report failure.
pub fn run(samples: usize, seed: u64, tamper: bool) -> CounterexampleOutcome {
    let s = shift_matrix();
    let h = if tamper { shift_matrix() } else { filter_matrix() };
    let mut stages = Vec::new();

    // stage 1: spectral verdict
    let spectral = spectra::spectral_report(&s);
    let x_cubed = Poly::monomial(3);
    let x_squared = Poly::monomial(2);
    let stage1 = spectral.charpoly == x_cubed
        && spectral.minpoly == x_squared
        && !spectral.shift_enabled;
    stages.push(Stage {
        name: "spectral",
        passed: stage1,
        detail: format!(
            "charpoly degree {}, minpoly degree {}, shift_enabled {}",
            spectral.charpoly.degree().unwrap_or(0),
            spectral.minpoly.degree().unwrap_or(0),
            spectral.shift_enabled
        ),
    });

    // stage 2: commutation, both products vanish
    let hs = &h * &s;
    let sh = &s * &h;
    let stage2 = commutes(&h, &s).expect("equal dimensions") && hs.is_zero() && sh.is_zero();
    stages.push(Stage {
        name: "commutation",
        passed: stage2,
        detail: format!("HS zero: {}, SH zero: {}", hs.is_zero(), sh.is_zero()),
    });

    // stage 3: not representable, with the expected entry witness
    let represent = represent_filter(&h, &s).expect("equal dimensions");
    let expected_witness = EntryWitness {
        row: 0,
        col_a: 1,
        col_b: 2,
    };
    let stage3 = represent.verdict == Verdict::NotRepresentable
        && represent.witness_entry == Some(expected_witness);
    stages.push(Stage {
        name: "representability",
        passed: stage3,
        detail: match represent.witness_entry {
            Some(w) => format!(
                "verdict {:?}, witness entries ({},{})/({},{})",
                represent.verdict,
                w.row + 1,
                w.col_a + 1,
                w.row + 1,
                w.col_b + 1
            ),
            None => format!("verdict {:?}, no entry witness", represent.verdict),
        },
    });

    // stage 4: both constrained cases infeasible on the default grid
    let grid = cases::default_grid();
    let mut failures = 0usize;
    for params in &grid {
        match cases::check_case(params) {
            Ok(outcome) if outcome.infeasible && outcome.solver_agrees => {}
            _ => failures += 1,
        }
    }
    let stage4 = failures == 0;
    stages.push(Stage {
        name: "case-infeasibility",
        passed: stage4,
        detail: format!("{} assignments checked, {} failures", grid.len(), failures),
    });

    // stage 5: seeded conversion search finds nothing
    let conversion = conversion_search(&s, &h, samples, seed, &SamplingSpec::default())
        .expect("built-in instance is well-formed");
    let stage5 = conversion.feasible_found.is_empty();
    stages.push(Stage {
        name: "conversion-search",
        passed: stage5,
        detail: format!(
            "{} samples, {} feasible",
            conversion.samples_tried,
            conversion.feasible_found.len()
        ),
    });

    let first_failed = stages.iter().find(|st| !st.passed).map(|st| st.name);
    CounterexampleOutcome {
        passed: first_failed.is_none(),
        first_failed,
        stages,
        spectral,
        represent,
        conversion,
        tampered: tamper,
    }
}

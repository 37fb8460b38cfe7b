//! Exact infeasibility checks for the two constrained conversion cases.
//!
//! Both cases concern a 3x3 candidate shift of the commuting shape
//! `[[s11, *, s13], [0, s11, 0], [0, s32, s33]]` that is supposed to satisfy
//! `S = r0 I + r1 C + r2 C^2` for the bundled counterexample shift S. Writing
//! out the constrained entries yields a small linear system in (r0, r1, r2)
//! that cannot hold:
//!
//! * equal diagonal (s11 = s22 = s33, s13*s32 != 0): the (1,3) and (3,2)
//!   entries give `s13*(r1 + 2 r2 s11) = 1` and `s32*(r1 + 2 r2 s11) = 0`,
//!   which forces s32 = 0 against the side condition;
//! * split diagonal (s11 = s22 != s33): the (2,2), (3,3), and (1,3) entries
//!   give two vanishing diagonal equations whose difference forces
//!   `r1 + r2*(s11 + s33) = 0`, contradicting `s13*[r1 + r2*(s11+s33)] = 1`.
//!
//! Each check also runs the generic exact solver on the same system and
//! records that it agrees.

use num::Zero;

use crate::elim;
use crate::error::{Error, Result};
use crate::Rat;

/// Sampled parameters for one case, respecting its side conditions.
#[derive(Clone, Debug, PartialEq)]
pub enum CaseParams {
    /// s11 = s22 = s33, with s13 * s32 != 0.
    EqualDiag { s11: Rat, s13: Rat, s32: Rat },
    /// s11 = s22 != s33; s13 unconstrained (zero makes the corner equation
    /// immediately unsatisfiable).
    SplitDiag { s11: Rat, s33: Rat, s13: Rat },
}

impl CaseParams {
    pub fn case_number(&self) -> u8 {
        match self {
            CaseParams::EqualDiag { .. } => 1,
            CaseParams::SplitDiag { .. } => 2,
        }
    }
}

/// The specific contradiction derived for a sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contradiction {
    /// Equal-diagonal case: the pair of equations forces s32 = 0.
    ForcesSubdiagZero,
    /// Split-diagonal case: the diagonal equations force the bracket
    /// r1 + r2*(s11 + s33) to vanish, against the corner equation.
    BracketMustVanish,
    /// Split-diagonal case with s13 = 0: the corner equation reads 0 = 1.
    ZeroEqualsOne,
}

impl Contradiction {
    pub fn describe(&self) -> &'static str {
        match self {
            Contradiction::ForcesSubdiagZero => {
                "equations force s32 = 0, contradicting s13*s32 != 0"
            }
            Contradiction::BracketMustVanish => {
                "diagonal equations force r1 + r2*(s11+s33) = 0, contradicting the corner equation"
            }
            Contradiction::ZeroEqualsOne => "corner equation reads 0 = 1",
        }
    }
}

/// Result of checking one sampled parameter assignment.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseOutcome {
    pub params: CaseParams,
    pub infeasible: bool,
    pub contradiction: Contradiction,
    /// The generic exact solver found the same system unsolvable.
    pub solver_agrees: bool,
}

/// Builds the case's linear system in (r0, r1, r2) exactly and certifies its
/// infeasibility. Parameters violating the side conditions are rejected.
pub fn check_case(params: &CaseParams) -> Result<CaseOutcome> {
    let (columns, target, contradiction) = match params {
        CaseParams::EqualDiag { s11, s13, s32 } => {
            if (s13 * s32).is_zero() {
                return Err(Error::SideCondition(
                    "equal-diagonal case requires s13 * s32 != 0".into(),
                ));
            }
            let two_a = Rat::from_integer(2.into()) * s11;
            // rows: s13*(r1 + 2 r2 s11) = 1 ; s32*(r1 + 2 r2 s11) = 0
            let columns = vec![
                vec![Rat::zero(), Rat::zero()],
                vec![s13.clone(), s32.clone()],
                vec![s13 * &two_a, s32 * &two_a],
            ];
            let target = vec![Rat::from_integer(1.into()), Rat::zero()];
            (columns, target, Contradiction::ForcesSubdiagZero)
        }
        CaseParams::SplitDiag { s11, s33, s13 } => {
            if s11 == s33 {
                return Err(Error::SideCondition(
                    "split-diagonal case requires s11 != s33".into(),
                ));
            }
            let sum = s11 + s33;
            // rows: r0 + r1 s11 + r2 s11^2 = 0 ; r0 + r1 s33 + r2 s33^2 = 0 ;
            //       s13*(r1 + r2*(s11+s33)) = 1
            let columns = vec![
                vec![Rat::from_integer(1.into()), Rat::from_integer(1.into()), Rat::zero()],
                vec![s11.clone(), s33.clone(), s13.clone()],
                vec![s11 * s11, s33 * s33, s13 * &sum],
            ];
            let target = vec![Rat::zero(), Rat::zero(), Rat::from_integer(1.into())];
            let contradiction = if s13.is_zero() {
                Contradiction::ZeroEqualsOne
            } else {
                Contradiction::BracketMustVanish
            };
            (columns, target, contradiction)
        }
    };

    let solution = elim::solve_linear(&columns, &target)?;
    Ok(CaseOutcome {
        params: params.clone(),
        infeasible: solution.is_none(),
        contradiction,
        solver_agrees: solution.is_none(),
    })
}

/// Deterministic grid of valid parameter assignments, at least one hundred
/// per case.
pub fn default_grid() -> Vec<CaseParams> {
    let small = |n: i64, d: i64| Rat::new(n.into(), d.into());
    let diag: Vec<Rat> = (-2..=2).map(|n| small(n, 1)).collect();
    let nonzero: Vec<Rat> = vec![
        small(-2, 1),
        small(-1, 1),
        small(-1, 2),
        small(1, 2),
        small(1, 1),
        small(2, 1),
    ];
    let corner: Vec<Rat> = vec![
        small(0, 1),
        small(-2, 1),
        small(-1, 1),
        small(-1, 2),
        small(1, 1),
        small(2, 1),
    ];

    let mut grid = Vec::new();
    for s11 in &diag {
        for s13 in &nonzero {
            for s32 in &nonzero {
                grid.push(CaseParams::EqualDiag {
                    s11: s11.clone(),
                    s13: s13.clone(),
                    s32: s32.clone(),
                });
            }
        }
    }
    for s11 in &diag {
        for s33 in &diag {
            if s11 == s33 {
                continue;
            }
            for s13 in &corner {
                grid.push(CaseParams::SplitDiag {
                    s11: s11.clone(),
                    s33: s33.clone(),
                    s13: s13.clone(),
                });
            }
        }
    }
    grid
}

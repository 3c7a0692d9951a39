//! TS-Approval: approval voting where every vote is a tournament.
//!
//! Each vote implicitly approves the candidates a tournament solution picks
//! from it (top cycle, Copeland set or uncovered set) and the winners are the
//! candidates with the most approvals. Around that rule the crate provides:
//!
//! - [`tournament`]: the tournament type and its graph machinery;
//! - [`solutions`]: the three tournament solutions behind one [`SolutionRule`];
//! - [`election`]: scoring, winner determination, dichotomization;
//! - [`properties`]: exhaustive and seeded axiom auditors with replayable witnesses;
//! - [`strategy`]: exact control and bribery solvers;
//! - [`reductions`]: hardness gadget generators plus small source-problem oracles;
//! - [`format`]: the plain-text election, instance and witness formats.
//!
//! ```
//! use ts_approval::{Election, SolutionRule};
//!
//! let text = "election 4 1\na b c d\n0100\n0011\n1001\n1000\n";
//! let e: Election = text.parse().unwrap();
//! let winners = e.winners(SolutionRule::Copeland);
//! assert_eq!(e.roster().names_of(&winners), vec!["b", "c"]);
//! ```

pub mod election;
pub mod format;
pub mod properties;
pub mod reductions;
pub mod set;
pub mod solutions;
pub mod strategy;
pub mod tournament;

pub use election::{ApprovalProfile, Election, ElectionError, Roster, WinnerModel};
pub use set::{CandidateId, CandidateSet};
pub use solutions::SolutionRule;
pub use tournament::{Condensation, Tournament, TournamentError};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/tournaments.md")]
    mod tournaments {}
    #[doc = include_str!("../../../book/src/solutions.md")]
    mod solutions {}
    #[doc = include_str!("../../../book/src/ts-approval.md")]
    mod ts_approval {}
    #[doc = include_str!("../../../book/src/axioms.md")]
    mod axioms {}
    #[doc = include_str!("../../../book/src/strategy.md")]
    mod strategy {}
    #[doc = include_str!("../../../book/src/reductions.md")]
    mod reductions {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}

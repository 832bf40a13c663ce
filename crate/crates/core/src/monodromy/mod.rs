//! Twist words on a planar page, the relations between them, and the search
//! for equivalence proofs.

pub mod lemma52;
pub mod moves;
pub mod page;
pub mod search;
pub mod word;
pub mod words;

pub use lemma52::{expand_macros, lemma52_expand};
pub use moves::{apply_move, Direction, Move, MoveError, ProofTrace};
pub use page::{gay_mark_page, PageError, PageSummary};
pub use search::{
    line_hints, normal_form, prove_equivalent, prove_equivalent_hinted, prove_equivalent_with,
    prove_with_hints, Hint, HintError, Invariant, SearchOptions, Verdict, DEFAULT_BUDGET,
};
pub use word::{hole_degree, pair_degree, Twist, TwistGen, TwistWord, WordError};
pub use words::{canonical_word, rep_to_word, LineWord, WordsError};

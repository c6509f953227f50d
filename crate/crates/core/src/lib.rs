//! Permutation pattern matching and counting, together with the two
//! hardness-reduction constructions built on top of them.
//!
//! * [`perm`]: permutations, diagrams, reduction, inflation.
//! * [`matching`]: detection, exact and left-aligned counting, the
//!   detection-based approximation.
//! * [`psi`]: the gadget mapping partitioned subgraph isomorphism to
//!   left-aligned pattern matching, with a brute-force solver to check it.
//! * [`gap`]: the inflation reduction producing count gaps, and exact checks
//!   of the inequalities it relies on.
//! * [`selfcheck`]: property suites shared by the CLI and the acceptance tests.

pub mod count;
pub mod error;
pub mod matching;
pub mod perm;
pub mod gap;
pub mod psi;
pub mod selfcheck;

pub use count::BigCount;
pub use error::{Error, Result};
pub use matching::Embedding;
pub use perm::{Permutation, Point, PointSet, Role};

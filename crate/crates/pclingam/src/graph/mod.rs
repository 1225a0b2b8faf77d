//! Graph data structures and pattern/equivalence algorithms.

mod cpdag;
mod dag;
mod dsep;
mod enumerate;
mod meek;
mod mixed;
mod ngdag;

pub use cpdag::cpdag_from_dag;
pub use dag::Dag;
pub use dsep::d_separated;
pub use enumerate::{enumerate_dags, enumerate_dags_capped, DEFAULT_CLASS_SIZE_CAP};
pub use meek::meek_closure;
pub use mixed::MixedGraph;
pub use ngdag::{distribution_equivalent, ngdag_pattern, NgDag, NgPattern};

/// The mark a pattern puts on the canonical node pair `(i, j)`, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeMark {
    /// `i` and `j` nonadjacent.
    Absent,
    /// `i -- j`.
    Undirected,
    /// `i -> j`.
    Forward,
    /// `j -> i`.
    Backward,
}

impl EdgeMark {
    pub const ALL: [EdgeMark; 4] =
        [EdgeMark::Absent, EdgeMark::Undirected, EdgeMark::Forward, EdgeMark::Backward];

    /// Row/column position in the confusion-matrix layout (*, --, ->, <-).
    pub fn index(self) -> usize {
        match self {
            EdgeMark::Absent => 0,
            EdgeMark::Undirected => 1,
            EdgeMark::Forward => 2,
            EdgeMark::Backward => 3,
        }
    }

    pub fn glyph(self) -> &'static str {
        match self {
            EdgeMark::Absent => "*",
            EdgeMark::Undirected => "--",
            EdgeMark::Forward => "->",
            EdgeMark::Backward => "<-",
        }
    }
}

//! Constructive upper bounds: explicit inversion sequences and realisations.

mod coloring;
mod dispatch;
mod elimination;
mod forest;
mod sparse;
mod strong;
mod subcubic;

pub use coloring::{
    greedy_homogeneous_coloring, homogeneous_coloring_transform, homogeneity_violation, is_oriented_coloring, pairwise_combine,
    product_classes,
};
pub use dispatch::{best_strong_ordering, best_upper_bound, transform, upper_bounds, Method, UpperBound};
pub use elimination::{elimination_transform, greedy_independent_set};
pub use forest::{cycle_transform, degree_two_transform, forest_transform, is_star_forest, star_forest_transform};
pub use sparse::{sparse3_realisation, SPARSE3_MAD};
pub use strong::{
    build_ordering, ceil_log2, check_t_strong, greedy_realisation, min_degree_decomposition, treedec_realisation, StrongOrdering,
    StrongReport, Strategy, TreeDecomposition, VertexSlack,
};
pub use subcubic::{good_ordering, is_good_ordering, subcubic_realisation};

use crate::error::{Error, Result};
use crate::graph::{same_graph, EdgeLabeling, InversionSequence, Orientation};

/// Disagreement labeling of two orientations of the same graph, rejecting pairs that
/// no inversion sequence can connect (parallel edges with different labels).
pub(crate) fn check_pair(o1: &Orientation, o2: &Orientation) -> Result<EdgeLabeling> {
    if !same_graph(o1.graph(), o2.graph()) {
        return Err(Error::GraphMismatch);
    }
    let pi = o1.disagreement(o2)?;
    check_parallel_labels(&pi)?;
    Ok(pi)
}

pub(crate) fn check_parallel_labels(pi: &EdgeLabeling) -> Result<()> {
    let g = pi.graph();
    let mut seen = std::collections::HashMap::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if let Some(&b) = seen.get(&(u.min(v), u.max(v))) {
            if b != pi.get(e) {
                return Err(Error::Precondition(format!("parallel edges {u}-{v} carry different labels; no inversion sequence exists")));
            }
        } else {
            seen.insert((u.min(v), u.max(v)), pi.get(e));
        }
    }
    Ok(())
}

pub(crate) fn verified(o1: &Orientation, o2: &Orientation, seq: InversionSequence) -> Result<InversionSequence> {
    if crate::solver::verify_sequence(o1, &seq, o2) {
        Ok(seq)
    } else {
        Err(Error::Invariant("constructed inversion sequence does not reach the target".into()))
    }
}

use cluster_core::quiver::QuiverJson;
use cluster_core::{IceQuiver, LaurentPolynomial, Seed};
use serde::{Deserialize, Serialize};

use crate::error::ApiError;

/// A seed as held by a client. `history` lists the 1-based vertices mutated
/// since `initial`; replaying it must reproduce `quiver` and `terms`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ApiSeedState {
    pub initial: QuiverJson,
    pub quiver: QuiverJson,
    /// Display strings, `x1, x2, ...`.
    pub cluster: Vec<String>,
    /// Term lists `[[exponents], "coefficient"]`, one per mutable vertex.
    pub terms: Vec<LaurentPolynomial>,
    pub history: Vec<usize>,
}

pub fn parse_quiver(j: QuiverJson) -> Result<IceQuiver, ApiError> {
    Ok(IceQuiver::try_from(j)?)
}

/// Converts a 1-based vertex, rejecting 0 and frozen or missing vertices.
pub fn vertex(q: &IceQuiver, k: usize) -> Result<usize, ApiError> {
    if k == 0 || k > q.n() {
        return Err(ApiError::domain(
            "vertex_out_of_range",
            format!("vertex {k} is not a mutable vertex of a quiver with {} mutable vertices", q.n()),
        ));
    }
    Ok(k - 1)
}

impl ApiSeedState {
    pub fn from_seed(initial: &IceQuiver, seed: &Seed, history: Vec<usize>) -> Self {
        ApiSeedState {
            initial: initial.clone().into(),
            quiver: seed.quiver.clone().into(),
            cluster: seed.cluster_strings(),
            terms: seed.cluster.clone(),
            history,
        }
    }

    pub fn initial_state(q: IceQuiver) -> Self {
        Self::from_seed(&q, &Seed::initial(q.clone()), Vec::new())
    }

    /// Recomputes the seed from `initial` and `history` and checks it against
    /// the stored quiver and cluster.
    pub fn replay(&self) -> Result<(IceQuiver, Seed), ApiError> {
        let initial = parse_quiver(self.initial.clone())?;
        let mut seed = Seed::initial(initial.clone());
        for &k in &self.history {
            seed = seed.mutate(vertex(&initial, k)?)?;
        }
        let quiver = parse_quiver(self.quiver.clone())?;
        let same = quiver == seed.quiver
            && self.terms == seed.cluster
            && self.cluster == seed.cluster_strings();
        if !same {
            return Err(ApiError::domain(
                "state_mismatch",
                "replaying the history from the initial quiver does not reproduce this state",
            ));
        }
        Ok((initial, seed))
    }

    pub fn mutate(&self, k: usize) -> Result<Self, ApiError> {
        let (initial, seed) = self.replay()?;
        let next = seed.mutate(vertex(&seed.quiver, k)?)?;
        let mut history = self.history.clone();
        history.push(k);
        Ok(Self::from_seed(&initial, &next, history))
    }
}

//! Per-arc searches on a rayon pool. Results always come back in arc order,
//! so output does not depend on the thread count.

use hyperrec_core::search::{profile, SearchProfile};
use hyperrec_core::{ArcId, ArcReciprocity, DirectedHypergraph, ReciprocityConfig, SearchConfig};
use rayon::prelude::*;
use rayon::ThreadPool;

/// `threads = 0` uses every available core; `1` runs serially.
pub fn pool(threads: usize) -> Result<ThreadPool, rayon::ThreadPoolBuildError> {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build()
}

/// Search profile of every arc; a failing arc does not stop the others.
pub fn profiles(pool: &ThreadPool, g: &DirectedHypergraph, scfg: &SearchConfig) -> Vec<hyperrec_core::Result<SearchProfile>> {
    pool.install(|| {
        (0..g.num_arcs() as u32)
            .into_par_iter()
            .map(|k| profile(g, ArcId(k), scfg))
            .collect()
    })
}

/// Like [`profiles`] but fails on the first arc (in arc order) that errors.
pub fn profiles_strict(pool: &ThreadPool, g: &DirectedHypergraph, scfg: &SearchConfig) -> hyperrec_core::Result<Vec<SearchProfile>> {
    profiles(pool, g, scfg).into_iter().collect()
}

pub fn reciprocities(
    pool: &ThreadPool,
    g: &DirectedHypergraph,
    cfg: &ReciprocityConfig,
    scfg: &SearchConfig,
) -> hyperrec_core::Result<Vec<ArcReciprocity>> {
    cfg.validate()?;
    Ok(profiles_strict(pool, g, scfg)?.iter().map(|p| p.resolve(cfg.alpha)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperrec_core::axioms::random_hypergraph;
    use hyperrec_core::search::all_reciprocities;
    use rand::SeedableRng;

    #[test]
    fn thread_count_does_not_change_results() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let g = random_hypergraph(&mut rng, 30, 40, 3);
        let cfg = ReciprocityConfig::new(0.5).unwrap();
        let scfg = SearchConfig::default();
        let serial = all_reciprocities(&g, &cfg, &scfg).unwrap();
        for t in [1, 2, 4] {
            assert_eq!(reciprocities(&pool(t).unwrap(), &g, &cfg, &scfg).unwrap(), serial);
        }
    }
}

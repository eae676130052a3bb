//! The coefficient algebra `A` as a monomial monoid, multisets of its basis
//! labels, and the partition sets built from them.
//!
//! Parts of a partition may be the empty multiset. Without that, the explicit
//! expansion of `D^±(0, 0, kχ_c)` has no terms, so the unbounded set `𝒫(χ)` is
//! infinite and only the size-bounded `𝒫_k(χ)` and `𝒮_k(χ)` are enumerated.

mod label;
mod multiset;
mod partition;

pub use label::{mul_label, ALabel, LabelConfig, LabelMode};
pub use multiset::{binomial, factorial, Multiset, SubMultisets};
pub use partition::{
    partitions_k, partitions_k_nonempty, subpartitions_k, subpartitions_k_nonempty, Partition,
    Partitions,
};

/// `π(ψ)`.
pub fn pi(psi: &Multiset, config: &LabelConfig) -> ALabel {
    psi.pi(config.vars)
}

/// All multisets over `pool` of size at most `max_size`, sorted.
pub fn multisets_over(pool: &[ALabel], max_size: u32) -> Vec<Multiset> {
    fn go(pool: &[ALabel], budget: u32, cur: &mut Multiset, out: &mut Vec<Multiset>) {
        let Some((first, rest)) = pool.split_first() else {
            out.push(cur.clone());
            return;
        };
        for k in 0..=budget {
            let saved = cur.clone();
            cur.add_label(first.clone(), k);
            go(rest, budget - k, cur, out);
            *cur = saved;
        }
    }
    let mut out = Vec::new();
    go(pool, max_size, &mut Multiset::new(), &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multisets_over_pool() {
        let c = LabelConfig::polynomial(1);
        let pool = c.labels_up_to(1);
        let all = multisets_over(&pool, 3);
        // sizes 0..=3 over two labels: 1 + 2 + 3 + 4
        assert_eq!(all.len(), 10);
        assert!(all[0].is_empty());
        assert!(all.windows(2).all(|w| w[0].size() <= w[1].size()));
    }
}

use dp4_core::ffcount::*;

fn pn(n: u32, q: u64) -> u64 {
    (0..=n).map(|i| q.pow(i)).sum()
}

#[test]
fn census_matches_structure_at_small_primes() {
    for q in [3u64, 5] {
        let ex = census(q, CensusMode::Exhaustive);
        let pr = census(q, CensusMode::Pruned);
        for c in [&ex, &pr] {
            assert_eq!(c.v4_total, pn(4, q));
            assert_eq!(c.dim_k.len(), 1, "{:?}", c.dim_k);
            assert_eq!(c.dim_k[&4], pn(4, q));
            assert_eq!(c.q3, pn(3, q));
            assert_eq!(c.q3, c.q3_by_equation);
            assert_eq!(c.sing_q3, q + 1);
            assert_eq!(c.sy, pn(4, q) * pn(3, q));
            assert_eq!(c.dbar, (q + 1) * c.q3);
            assert_eq!(c.rank0, 2 * (q + 1));
            assert_eq!(c.rank0_sigma22, q + 1);
            assert_eq!(c.n_sigma22(), 1);
        }
        assert_eq!(ex.sy, ex.pair_ranks.values().sum::<u64>());
        println!("{q}: {:?} {:?}", ex.k_rank, ex.pair_ranks);
    }
}

#[test]
fn line_counts() {
    for q in [3u64, 5] {
        let lc = line_census(q);
        let expected = 1 + 2 * q + 3 * q * q + 2 * q.pow(3) + q.pow(4);
        assert_eq!(lc.lines, expected);
        assert_eq!(count_lines_by_flags(q), expected);
        assert_eq!(lc.nonfree, (q + 1) * (q + 1));
        assert_eq!(lc.plane_vertices, q + 1);
        assert_eq!(count_y(q), 1 + q + 2 * q * q + q.pow(3) + q.pow(4));
    }
    assert_eq!(line_census(2).lines, 1 + 4 + 12 + 16 + 16);
}

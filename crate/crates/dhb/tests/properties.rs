mod common;

use dhb::atlas::{basic_map, computed_row, BasicMapId};
use dhb::certify::{beauville_check, min_degree_search, SearchBounds};
use dhb::compose::{k_compose, merge_law_check, self_join, useful_persists};
use dhb::frobenius::{bundled_table, BUNDLED};
use dhb::linlift::{fixed_space_dim, PrimeFieldMatrix};
use dhb::map::{tau, HurwitzMap};
use dhb::perm::{an_conjugate, Permutation};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn atlas_map() -> impl Strategy<Value = BasicMapId> {
    (0..14usize).prop_map(|i| BasicMapId::ALL[i])
}

fn v(m: &HurwitzMap) -> [i64; 3] {
    m.fixed_point_vector().as_array().map(|c| c as i64)
}

fn invariants(m: &HurwitzMap) -> impl PartialEq + std::fmt::Debug {
    let row = computed_row(m);
    (row.row, row.genus, m.prime_set(), m.handle_counts())
}

#[derive(Debug, Clone)]
enum Step {
    Join { with: BasicMapId, pick: usize },
    SelfJoin { pick: usize },
}

fn step() -> impl Strategy<Value = Step> {
    prop_oneof![
        3 => (atlas_map(), any::<usize>()).prop_map(|(with, pick)| Step::Join { with, pick }),
        1 => any::<usize>().prop_map(|pick| Step::SelfJoin { pick }),
    ]
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn join_sequences(start in atlas_map(), steps in prop::collection::vec(step(), 1..6)) {
        let mut cur = basic_map(start).clone();
        for s in steps {
            if cur.n() > 1500 {
                break;
            }
            match s {
                Step::Join { with, pick } => {
                    let e = basic_map(with);
                    let options: Vec<_> = (1..=3u8)
                        .flat_map(|k| {
                            let right = e.handles(k);
                            cur.handles(k).into_iter().flat_map(move |h| right.clone().into_iter().map(move |h2| (h, h2)))
                        })
                        .collect();
                    if options.is_empty() {
                        continue;
                    }
                    let (h, h2) = options[pick % options.len()];
                    let next = k_compose(&cur, &h, e, &h2).unwrap();
                    let expected: Vec<i64> = v(&cur).iter().zip(v(e)).map(|(a, b)| a + b).collect();
                    prop_assert_eq!(v(&next).to_vec(), vec![expected[0] - 4, expected[1], expected[2]]);
                    prop_assert_eq!(next.genus().unwrap(), cur.genus().unwrap() + e.genus().unwrap());
                    prop_assert_eq!(tau(next.x()).unwrap(), tau(cur.x()).unwrap() + tau(e.x()).unwrap() + 2);
                    prop_assert!(merge_law_check(&cur, &h, e, &h2, &next).passed);
                    prop_assert!(useful_persists(&[(&cur, 0), (e, cur.n() as u32)], &next));
                    cur = next;
                }
                Step::SelfJoin { pick } => {
                    let options: Vec<_> = (1..=3u8)
                        .flat_map(|k| {
                            let hs = cur.handles(k);
                            let mut pairs = Vec::new();
                            for i in 0..hs.len() {
                                for j in i + 1..hs.len() {
                                    if !hs[i].shares_point(&hs[j]) {
                                        pairs.push((hs[i], hs[j]));
                                    }
                                }
                            }
                            pairs
                        })
                        .collect();
                    if options.is_empty() {
                        continue;
                    }
                    let (h, h2) = options[pick % options.len()];
                    let next = self_join(&cur, &h, &h2).unwrap();
                    let before = v(&cur);
                    prop_assert_eq!(v(&next), [before[0] - 4, before[1], before[2]]);
                    prop_assert_eq!(next.genus().unwrap(), cur.genus().unwrap() + 1);
                    prop_assert_eq!(tau(next.x()).unwrap(), tau(cur.x()).unwrap() + 2);
                    cur = next;
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn relabeling_preserves_invariants(id in atlas_map(), seed in any::<u64>()) {
        let m = basic_map(id);
        let sigma = shuffled(m.n(), seed);
        prop_assert_eq!(invariants(&m.relabel(&sigma)), invariants(m));
    }

    #[test]
    fn an_conjugate_matches_enumeration(n in 1usize..=7, i in any::<usize>(), j in any::<usize>()) {
        let (elements, class) = common::an_classes(n);
        let (i, j) = (i % elements.len(), j % elements.len());
        prop_assert_eq!(an_conjugate(&elements[i], &elements[j]).unwrap(), class[i] == class[j]);
    }

    #[test]
    fn conjugates_are_an_conjugate_by_even_elements(n in 3usize..=40, seed in any::<u64>(), s2 in any::<u64>()) {
        let p = shuffled(n, seed);
        let p = if p.parity().is_even() { p } else { &p * &Permutation::from_cycles(n, &[vec![0, 1]]).unwrap() };
        let mut g = shuffled(n, s2);
        if !g.parity().is_even() {
            g = &g * &Permutation::from_cycles(n, &[vec![0, 1]]).unwrap();
        }
        prop_assert!(an_conjugate(&p, &p.conjugate_by(&g)).unwrap());
    }

    #[test]
    fn beauville_is_symmetric_and_relabeling_invariant(pair in 0usize..4, seed in any::<u64>()) {
        use BasicMapId::*;
        let (a, b) = [(G, H), (J, K), (M, N), (I, I)][pair];
        let (a, b) = (basic_map(a), basic_map(b));
        let ab = beauville_check(a, b).unwrap();
        let ba = beauville_check(b, a).unwrap();
        prop_assert_eq!(ab.passed(), ba.passed());
        let sigma = shuffled(a.n(), seed);
        let moved = beauville_check(&a.relabel(&sigma), b).unwrap();
        prop_assert_eq!(moved.passed(), ab.passed());
        prop_assert_eq!(moved.v_difference, ab.v_difference);
    }

    #[test]
    fn fixed_space_of_permutation_matrix(g in (1usize..=100).prop_flat_map(perm), pi in 0usize..4) {
        let p = [2u64, 3, 5, 7][pi];
        prop_assert_eq!(fixed_space_dim(&PrimeFieldMatrix::from_permutation(&g, p)), g.num_cycles());
    }

    #[test]
    fn sparse_and_dense_agree(
        n in 1usize..=12,
        entries in prop::collection::vec(-6i64..6, 144),
        other in prop::collection::vec(-6i64..6, 144),
        pi in 0usize..4,
        zero_rows in 0usize..3,
    ) {
        let p = [2u64, 3, 5, 13][pi];
        let rows = |e: &[i64]| -> Vec<Vec<i64>> {
            (0..n).map(|i| if i < zero_rows { vec![0; n] } else { e[i * n..(i + 1) * n].to_vec() }).collect()
        };
        let a = PrimeFieldMatrix::from_dense(&rows(&entries), p);
        let b = PrimeFieldMatrix::from_dense(&rows(&other), p);
        let (rank, det) = a.to_dense().rank_det();
        prop_assert_eq!(a.rank(), rank);
        prop_assert_eq!(a.det(), det);
        prop_assert_eq!(a.mul(&b).to_dense(), a.to_dense().mul(&b.to_dense()));
    }

    #[test]
    fn min_degree_is_monotone(g in 0u32..3, al in 4u32..10, be in 3u32..8, ga in 7u32..10, d in 0u32..3) {
        let small = SearchBounds { g_max: g, alpha_max: al, beta_max: be, gamma_max: ga };
        let big = SearchBounds { g_max: g + d, alpha_max: al + d, beta_max: be + d, gamma_max: ga + d };
        if let Ok(a) = min_degree_search(small) {
            prop_assert!(min_degree_search(big).unwrap().n <= a.n);
        }
    }

    #[test]
    fn frobenius_counts_are_rotation_invariant(t in 0usize..5, i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let table = bundled_table(BUNDLED[t]).unwrap();
        let c = &table.classes;
        let (x, y, z) = (&c[i % c.len()].name, &c[j % c.len()].name, &c[k % c.len()].name);
        let n = table.frobenius_count(x, y, z).unwrap();
        prop_assert_eq!(&n, &table.frobenius_count(y, z, x).unwrap());
        prop_assert_eq!(&n, &table.frobenius_count(z, x, y).unwrap());
    }
}

fn shuffled(n: usize, seed: u64) -> Permutation {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    Permutation::from_images(v).unwrap()
}

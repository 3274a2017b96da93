#![allow(dead_code)]

use std::collections::HashMap;

use dhb::perm::{enumerate_group, Permutation};

pub fn three_cycles(n: usize) -> Vec<Permutation> {
    (0..n.saturating_sub(2))
        .map(|i| Permutation::from_cycles(n, &[vec![i as u32, i as u32 + 1, i as u32 + 2]]).unwrap())
        .collect()
}

/// Elements of A_n with the index of their A_n class, found by closing
/// each element under conjugation by the generating 3-cycles.
pub fn an_classes(n: usize) -> (Vec<Permutation>, Vec<usize>) {
    let gens = three_cycles(n);
    let elements = if gens.is_empty() { vec![Permutation::identity(n)] } else { enumerate_group(&gens, 5040).unwrap() };
    let index: HashMap<Vec<u32>, usize> = elements.iter().enumerate().map(|(i, g)| (g.images().to_vec(), i)).collect();
    let mut class = vec![usize::MAX; elements.len()];
    let mut next = 0;
    for start in 0..elements.len() {
        if class[start] != usize::MAX {
            continue;
        }
        class[start] = next;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for s in &gens {
                let j = index[elements[i].conjugate_by(s).images()];
                if class[j] == usize::MAX {
                    class[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    (elements, class)
}

/// Number of pairs on which `an_conjugate` disagrees with the class partition.
pub fn an_conjugate_mismatches(n: usize) -> usize {
    let (elements, class) = an_classes(n);
    use rayon::prelude::*;
    elements
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            elements
                .iter()
                .enumerate()
                .filter(|&(j, q)| dhb::perm::an_conjugate(p, q).unwrap() != (class[i] == class[j]))
                .count()
        })
        .sum()
}

//! Longest strict subgroup chains in the symmetric group.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// `ceil(3n/2) - b(n) - 1`, with `b(n)` the number of ones in binary.
pub fn chain_length_bound(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::arg("chain length is defined for n >= 1"));
    }
    Ok((3 * n).div_ceil(2) - n.count_ones() as usize - 1)
}

/// Longest strict subgroup chain in `Sym(n)` by exhaustive subgroup
/// enumeration. Supported for `n <= 5`.
pub fn chain_length_oracle(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::arg("chain length is defined for n >= 1"));
    }
    if n > 5 {
        return Err(Error::Unsupported(format!("exhaustive subgroup lattice of Sym({n})")));
    }
    let elems = all_permutations(n);
    let index: HashMap<Vec<u8>, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let m = elems.len();
    let mul: Vec<Vec<usize>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    let prod: Vec<u8> = elems[b].iter().map(|&x| elems[a][x as usize]).collect();
                    index[&prod]
                })
                .collect()
        })
        .collect();
    let identity = index[&(0..n as u8).collect::<Vec<u8>>()];

    // subgroups as bitsets over the (at most 120) elements, with generators
    let closure = |gens: &[usize]| -> u128 {
        let mut set: u128 = 1 << identity;
        let mut frontier = vec![identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = mul[x][g];
                if set & (1 << y) == 0 {
                    set |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        set
    };
    let mut subgroups: HashMap<u128, Vec<usize>> = HashMap::new();
    subgroups.insert(1 << identity, Vec::new());
    let mut queue: Vec<u128> = vec![1 << identity];
    while let Some(h) = queue.pop() {
        let gens = subgroups[&h].clone();
        for g in 0..m {
            if h & (1 << g) != 0 {
                continue;
            }
            let mut ext = gens.clone();
            ext.push(g);
            let k = closure(&ext);
            if let std::collections::hash_map::Entry::Vacant(e) = subgroups.entry(k) {
                e.insert(ext);
                queue.push(k);
            }
        }
    }

    let mut groups: Vec<u128> = subgroups.into_keys().collect();
    groups.sort_by_key(|g| g.count_ones());
    let mut longest: HashMap<u128, usize> = HashMap::new();
    for &h in &groups {
        let best = groups
            .iter()
            .filter(|&&k| k != h && k & h == k)
            .map(|k| longest[k] + 1)
            .max()
            .unwrap_or(0);
        longest.insert(h, best);
    }
    let full = groups.last().copied().expect("Sym(n) is enumerated");
    Ok(longest[&full])
}

/// Number of subgroups of `Sym(n)`, `n <= 5`; exposed for sanity checks.
pub fn subgroup_count(n: usize) -> Result<usize> {
    // reuses the enumeration through a tiny wrapper
    if !(1..=5).contains(&n) {
        return Err(Error::Unsupported(format!("subgroup enumeration of Sym({n})")));
    }
    let elems = all_permutations(n);
    let index: HashMap<Vec<u8>, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let compose = |a: usize, b: usize| -> usize {
        let prod: Vec<u8> = elems[b].iter().map(|&x| elems[a][x as usize]).collect();
        index[&prod]
    };
    let identity = index[&(0..n as u8).collect::<Vec<u8>>()];
    let mut found: std::collections::HashSet<u128> = std::collections::HashSet::new();
    let mut queue = vec![(1u128 << identity, Vec::<usize>::new())];
    found.insert(1 << identity);
    while let Some((h, gens)) = queue.pop() {
        for g in 0..elems.len() {
            if h & (1 << g) != 0 {
                continue;
            }
            let mut ext = gens.clone();
            ext.push(g);
            let mut set: u128 = 1 << identity;
            let mut frontier = vec![identity];
            while let Some(x) = frontier.pop() {
                for &s in &ext {
                    let y = compose(x, s);
                    if set & (1 << y) == 0 {
                        set |= 1 << y;
                        frontier.push(y);
                    }
                }
            }
            if found.insert(set) {
                queue.push((set, ext));
            }
        }
    }
    Ok(found.len())
}

fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(chain_length_bound(1).unwrap(), 0);
        assert_eq!(chain_length_bound(3).unwrap(), 2);
        assert_eq!(chain_length_bound(4).unwrap(), 4);
        assert!(chain_length_bound(0).is_err());
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(chain_length_oracle(1).unwrap(), 0);
        assert_eq!(chain_length_oracle(2).unwrap(), 1);
        assert_eq!(chain_length_oracle(3).unwrap(), 2);
        assert_eq!(chain_length_oracle(4).unwrap(), 4);
        assert!(chain_length_oracle(6).is_err());
    }

    #[test]
    fn known_subgroup_counts() {
        // Sym(3): 6 subgroups, Sym(4): 30
        assert_eq!(subgroup_count(3).unwrap(), 6);
        assert_eq!(subgroup_count(4).unwrap(), 30);
    }
}

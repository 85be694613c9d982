//! Isomorphism search between finite semimodules by backtracking on element
//! maps. Intended for desk-scale carriers (≤ 8 elements).

use crate::semimodule::FiniteSemimodule;

fn extend(
    a: &FiniteSemimodule,
    b: &FiniteSemimodule,
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    next: usize,
) -> bool {
    let n = a.size();
    if next == n {
        return check_full(a, b, map);
    }
    if map[next].is_some() {
        return extend(a, b, map, used, next + 1);
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        map[next] = Some(cand);
        used[cand] = true;
        if consistent(a, b, map, next) && extend(a, b, map, used, next + 1) {
            return true;
        }
        map[next] = None;
        used[cand] = false;
    }
    false
}

fn consistent(
    a: &FiniteSemimodule,
    b: &FiniteSemimodule,
    map: &[Option<usize>],
    last: usize,
) -> bool {
    for i in 0..=last {
        let (Some(fi), Some(fl)) = (map[i], map[last]) else {
            continue;
        };
        let s = a.add(i, last);
        if let Some(fs) = map[s] {
            if b.add(fi, fl) != fs {
                return false;
            }
        }
        let s = a.add(last, i);
        if let Some(fs) = map[s] {
            if b.add(fl, fi) != fs {
                return false;
            }
        }
    }
    true
}

fn check_full(a: &FiniteSemimodule, b: &FiniteSemimodule, map: &[Option<usize>]) -> bool {
    let f = |i: usize| map[i].unwrap();
    let n = a.size();
    for i in 0..n {
        for j in 0..n {
            if f(a.add(i, j)) != b.add(f(i), f(j)) {
                return false;
            }
        }
    }
    if let Some(sr) = a.scalars().semiring() {
        for l in 0..sr.size() {
            for i in 0..n {
                if f(a.act(l, i)) != b.act(l, f(i)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Finds an isomorphism `a → b` (as an element map) if one exists. Zero is
/// always sent to zero; for semiring-based semimodules the scalar bases must
/// match and the action is preserved.
pub fn find_isomorphism(a: &FiniteSemimodule, b: &FiniteSemimodule) -> Option<Vec<usize>> {
    if a.size() != b.size() || a.scalars() != b.scalars() {
        return None;
    }
    let n = a.size();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    map[a.zero()] = Some(b.zero());
    used[b.zero()] = true;
    if extend(a, b, &mut map, &mut used, 0) {
        Some(map.into_iter().map(|m| m.unwrap()).collect())
    } else {
        None
    }
}

pub fn are_isomorphic(a: &FiniteSemimodule, b: &FiniteSemimodule) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Canonical flattened addition table: the lexicographically least relabeled
/// table over all permutations fixing zero. Equal canonical tables mean
/// isomorphic monoids.
pub fn canonical_add_table(m: &FiniteSemimodule) -> Vec<usize> {
    let n = m.size();
    let mut rest: Vec<usize> = (0..n).filter(|&i| i != m.zero()).collect();
    let mut best: Option<Vec<usize>> = None;
    permute(&mut rest, 0, &mut |perm| {
        // perm maps old nonzero elements to positions 1..n in order.
        let mut old_to_new = vec![0usize; n];
        old_to_new[m.zero()] = 0;
        for (slot, &old) in perm.iter().enumerate() {
            old_to_new[old] = slot + 1;
        }
        let mut new_to_old = vec![0usize; n];
        for (old, &new) in old_to_new.iter().enumerate() {
            new_to_old[new] = old;
        }
        let mut flat = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                flat.push(old_to_new[m.add(new_to_old[i], new_to_old[j])]);
            }
        }
        match &best {
            Some(b) if *b <= flat => {}
            _ => best = Some(flat),
        }
    });
    best.unwrap_or_default()
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    use super::*;

    #[test]
    fn z2_and_l2_are_not_isomorphic() {
        assert!(!are_isomorphic(&fixtures::cyclic(2), &fixtures::l2()));
        assert!(are_isomorphic(&fixtures::cyclic(2), &fixtures::cyclic(2)));
    }

    #[test]
    fn relabeled_monoids_share_canonical_tables() {
        // Z4 with elements listed in a different order.
        let z4 = fixtures::cyclic(4);
        let relabeled = crate::semimodule::FiniteSemimodule::monoid(
            vec!["z".into(), "b".into(), "a".into(), "c".into()],
            // mapping: z=0, b=2, a=1, c=3 under x+y mod 4
            vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 1, 0],
                vec![3, 2, 0, 1],
            ],
            0,
        )
        .unwrap();
        assert_eq!(canonical_add_table(&z4), canonical_add_table(&relabeled));
        assert!(are_isomorphic(&z4, &relabeled));
        assert_ne!(
            canonical_add_table(&z4),
            canonical_add_table(&fixtures::n_sat(4))
        );
    }
}

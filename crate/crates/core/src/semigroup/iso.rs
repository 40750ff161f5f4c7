use super::FiniteSemigroup;

/// Per-element invariants preserved by isomorphisms.
fn signatures(s: &FiniteSemigroup) -> Vec<(bool, usize, usize, usize, usize)> {
    s.elements()
        .map(|a| {
            let mut left: Vec<usize> = s.elements().map(|x| s.mul(x, a)).collect();
            left.sort_unstable();
            left.dedup();
            let mut right: Vec<usize> = s.elements().map(|x| s.mul(a, x)).collect();
            right.sort_unstable();
            right.dedup();
            // index and period of the monogenic subsemigroup
            let mut powers = vec![a];
            loop {
                let next = s.mul(*powers.last().unwrap(), a);
                if let Some(pos) = powers.iter().position(|&p| p == next) {
                    break (
                        s.is_idempotent(a),
                        left.len(),
                        right.len(),
                        pos,
                        powers.len() - pos,
                    );
                }
                powers.push(next);
            }
        })
        .collect()
}

/// A small generating set, chosen greedily in element order.
fn generating_set(s: &FiniteSemigroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut covered = vec![false; s.size()];
    for a in s.elements() {
        if !covered[a] {
            gens.push(a);
            for x in s.generated_by(&gens) {
                covered[x] = true;
            }
        }
    }
    gens
}

/// An isomorphism `a -> b` as an image array, or `None`.
///
/// Backtracking over generator images, pruned by element signatures; each
/// partial assignment is extended to the generated subsemigroup and checked
/// for consistency and injectivity.
pub fn find_isomorphism(a: &FiniteSemigroup, b: &FiniteSemigroup) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }
    let gens = generating_set(a);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| b.elements().filter(|&y| sig_b[y] == sig_a[g]).collect())
        .collect();
    let mut map = vec![usize::MAX; a.size()];
    let mut inverse = vec![usize::MAX; b.size()];
    if search(a, b, &gens, &candidates, 0, &mut map, &mut inverse) {
        Some(map)
    } else {
        None
    }
}

fn search(
    a: &FiniteSemigroup,
    b: &FiniteSemigroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    map: &mut Vec<usize>,
    inverse: &mut Vec<usize>,
) -> bool {
    if depth == gens.len() {
        return map.iter().all(|&m| m != usize::MAX);
    }
    let g = gens[depth];
    for &y in &candidates[depth] {
        let saved_map = map.clone();
        let saved_inverse = inverse.clone();
        if extend(a, b, &gens[..=depth], g, y, map, inverse)
            && search(a, b, gens, candidates, depth + 1, map, inverse)
        {
            return true;
        }
        *map = saved_map;
        *inverse = saved_inverse;
    }
    false
}

fn assign(x: usize, y: usize, map: &mut [usize], inverse: &mut [usize]) -> Option<bool> {
    match (map[x], inverse[y]) {
        (m, i) if m == y && i == x => Some(false),
        (usize::MAX, usize::MAX) => {
            map[x] = y;
            inverse[y] = x;
            Some(true)
        }
        _ => None,
    }
}

/// Assigns `g -> y` and propagates over the subsemigroup generated by
/// `gens`, checking every product among mapped elements.
fn extend(
    a: &FiniteSemigroup,
    b: &FiniteSemigroup,
    gens: &[usize],
    g: usize,
    y: usize,
    map: &mut [usize],
    inverse: &mut [usize],
) -> bool {
    if assign(g, y, map, inverse).is_none() {
        return false;
    }
    let mut mapped: Vec<usize> = a.elements().filter(|&x| map[x] != usize::MAX).collect();
    let mut cursor = 0;
    while cursor < mapped.len() {
        let x = mapped[cursor];
        cursor += 1;
        for &h in gens {
            for (p, q) in [
                (a.mul(x, h), b.mul(map[x], map[h])),
                (a.mul(h, x), b.mul(map[h], map[x])),
            ] {
                match assign(p, q, map, inverse) {
                    None => return false,
                    Some(true) => mapped.push(p),
                    Some(false) => {}
                }
            }
        }
    }
    true
}

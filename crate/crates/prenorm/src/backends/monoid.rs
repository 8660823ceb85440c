//! Finite monoid and group table utilities shared by the pointed backends:
//! validation, generator search, hom enumeration, and exhaustive enumeration
//! of small monoids up to isomorphism.

use crate::core::{Error, Result};

/// Validate a row-major multiplication table: closure is implied by the
/// representation; unit laws and associativity are checked explicitly.
pub fn validate_monoid_table(n: usize, unit: usize, table: &[usize]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidObject("monoid carrier is empty".into()));
    }
    if table.len() != n * n {
        return Err(Error::InvalidObject(format!(
            "table has {} entries, expected {}",
            table.len(),
            n * n
        )));
    }
    if unit >= n {
        return Err(Error::InvalidObject("unit outside carrier".into()));
    }
    if let Some(&bad) = table.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidObject(format!(
            "table entry {bad} outside carrier 0..{n}"
        )));
    }
    for a in 0..n {
        if table[unit * n + a] != a || table[a * n + unit] != a {
            return Err(Error::InvalidObject(format!("unit laws fail at {a}")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b];
            for c in 0..n {
                if table[ab * n + c] != table[a * n + table[b * n + c]] {
                    return Err(Error::InvalidObject(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    Ok(())
}

pub fn is_commutative(n: usize, table: &[usize]) -> bool {
    (0..n).all(|a| (a + 1..n).all(|b| table[a * n + b] == table[b * n + a]))
}

/// Closure of `seed ∪ {unit}` under the operation, ascending.
pub fn submonoid_closure(n: usize, table: &[usize], unit: usize, seed: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; n];
    inside[unit] = true;
    let mut frontier: Vec<usize> = vec![unit];
    for &s in seed {
        if !inside[s] {
            inside[s] = true;
            frontier.push(s);
        }
    }
    while let Some(x) = frontier.pop() {
        for y in 0..n {
            if !inside[y] {
                continue;
            }
            for p in [table[x * n + y], table[y * n + x]] {
                if !inside[p] {
                    inside[p] = true;
                    frontier.push(p);
                }
            }
        }
    }
    (0..n).filter(|&x| inside[x]).collect()
}

/// A small generating set, found greedily: repeatedly adjoin the least
/// element not yet generated. Deterministic, and minimal in practice for the
/// catalog objects (it is not guaranteed globally minimal).
pub fn greedy_generators(n: usize, table: &[usize], unit: usize) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut generated = submonoid_closure(n, table, unit, &gens);
    while generated.len() < n {
        let next = (0..n)
            .find(|x| generated.binary_search(x).is_err())
            .expect("closure is not yet full");
        gens.push(next);
        generated = submonoid_closure(n, table, unit, &gens);
    }
    gens
}

/// All monoid homomorphisms between two tables, as map vectors in
/// lexicographic order of their generator images. Returns `None` when the
/// candidate space `|cod|^|gens|` exceeds `budget`.
pub fn monoid_homs(
    dom: (usize, usize, &[usize]),
    cod: (usize, usize, &[usize]),
    budget: usize,
) -> Option<Vec<Vec<usize>>> {
    let (dn, du, dt) = dom;
    let (cn, cu, ct) = cod;
    let gens = greedy_generators(dn, dt, du);
    let candidates = (cn as u128).checked_pow(gens.len() as u32)?;
    if candidates > budget as u128 {
        return None;
    }

    // Express every element as unit or as (earlier element) · generator, by
    // breadth-first closure; an assignment of generator images then extends
    // uniquely, and the homomorphism law is verified on the full table.
    #[derive(Clone, Copy)]
    enum Expr {
        Unit,
        Gen(usize),
        Mul(usize, usize), // element index, generator position
    }
    let mut expr: Vec<Option<Expr>> = vec![None; dn];
    expr[du] = Some(Expr::Unit);
    for (i, &g) in gens.iter().enumerate() {
        if expr[g].is_none() {
            expr[g] = Some(Expr::Gen(i));
        }
    }
    let mut order: Vec<usize> = vec![du];
    for &g in &gens {
        if !order.contains(&g) {
            order.push(g);
        }
    }
    let mut cursor = 0;
    while cursor < order.len() {
        let x = order[cursor];
        cursor += 1;
        for (i, &g) in gens.iter().enumerate() {
            let p = dt[x * dn + g];
            if expr[p].is_none() {
                expr[p] = Some(Expr::Mul(x, i));
                order.push(p);
            }
        }
    }
    debug_assert_eq!(order.len(), dn, "generators must generate the carrier");

    let mut homs = Vec::new();
    let mut assign = vec![0usize; gens.len()];
    loop {
        let mut map = vec![usize::MAX; dn];
        for &x in &order {
            map[x] = match expr[x].expect("every element is reachable") {
                Expr::Unit => cu,
                Expr::Gen(i) => assign[i],
                Expr::Mul(p, i) => ct[map[p] * cn + assign[i]],
            };
        }
        let is_hom = (0..dn)
            .all(|a| (0..dn).all(|b| map[dt[a * dn + b]] == ct[map[a] * cn + map[b]]));
        if is_hom {
            homs.push(map);
        }
        // Advance the odometer over generator images.
        let mut pos = gens.len();
        loop {
            if pos == 0 {
                return Some(homs);
            }
            pos -= 1;
            assign[pos] += 1;
            if assign[pos] < cn {
                break;
            }
            assign[pos] = 0;
        }
    }
}

/// All monoids on `0..n` with unit 0, up to isomorphism, as row-major tables
/// in lexicographic order of their canonical forms.
///
/// Brute force over the `(n-1)²` non-unit entries with an associativity
/// filter; isomorphism reduction takes the lexicographically least table
/// under the unit-fixing permutations of `1..n`.
pub fn enumerate_monoids(n: usize) -> Vec<Vec<usize>> {
    assert!(n >= 1 && n <= 4, "exhaustive search is sized for n <= 4");
    if n == 1 {
        return vec![vec![0]];
    }
    let perms = unit_fixing_permutations(n);
    let free = (n - 1) * (n - 1);
    let mut canon: Vec<Vec<usize>> = Vec::new();
    let mut cells = vec![0usize; free];
    'outer: loop {
        let mut table = vec![0usize; n * n];
        for a in 0..n {
            table[a] = a; // 0 · a = a
            table[a * n] = a; // a · 0 = a
        }
        for (k, &v) in cells.iter().enumerate() {
            let a = 1 + k / (n - 1);
            let b = 1 + k % (n - 1);
            table[a * n + b] = v;
        }
        if is_associative(n, &table) {
            let c = canonical_table(n, &table, &perms);
            if canon.binary_search(&c).is_err() {
                let pos = canon.partition_point(|t| t < &c);
                canon.insert(pos, c);
            }
        }
        let mut pos = free;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            cells[pos] += 1;
            if cells[pos] < n {
                break;
            }
            cells[pos] = 0;
        }
    }
    canon
}

fn is_associative(n: usize, table: &[usize]) -> bool {
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b];
            for c in 0..n {
                if table[ab * n + c] != table[a * n + table[b * n + c]] {
                    return false;
                }
            }
        }
    }
    true
}

fn unit_fixing_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perms = Vec::new();
    let mut tail: Vec<usize> = (1..n).collect();
    permute(&mut tail, 0, &mut |p| {
        let mut full = vec![0usize];
        full.extend_from_slice(p);
        perms.push(full);
    });
    perms.sort();
    perms
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
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

/// Lexicographically least relabelling of the table under the given
/// unit-fixing permutations.
fn canonical_table(n: usize, table: &[usize], perms: &[Vec<usize>]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for p in perms {
        let mut relabeled = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                relabeled[p[a] * n + p[b]] = p[table[a * n + b]];
            }
        }
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
    }
    best.expect("at least the identity permutation applies")
}

/// Two-sided inverses for a monoid table, if every element has one.
pub fn group_inverses(n: usize, unit: usize, table: &[usize]) -> Option<Vec<usize>> {
    let mut inv = vec![usize::MAX; n];
    for a in 0..n {
        inv[a] = (0..n).find(|&b| table[a * n + b] == unit && table[b * n + a] == unit)?;
    }
    Some(inv)
}

/// Subgroup generated by a subset of a group carrier, ascending.
pub fn subgroup_generated(n: usize, table: &[usize], unit: usize, seed: &[usize]) -> Vec<usize> {
    // In a finite group the submonoid closure is already a subgroup.
    submonoid_closure(n, table, unit, seed)
}

/// Smallest normal subgroup containing the seed: close under conjugation,
/// then under the operation, to a fixpoint.
pub fn normal_closure(n: usize, table: &[usize], unit: usize, seed: &[usize]) -> Vec<usize> {
    let inv = group_inverses(n, unit, table).expect("normal_closure expects a group table");
    let mut current: Vec<usize> = seed.to_vec();
    loop {
        let mut conjugates: Vec<usize> = current.clone();
        for &m in &current {
            for g in 0..n {
                let gm = table[g * n + m];
                conjugates.push(table[gm * n + inv[g]]);
            }
        }
        let next = submonoid_closure(n, table, unit, &conjugates);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Row-major table of the cyclic group of order `k` under addition.
pub fn cyclic_table(k: usize) -> Vec<usize> {
    (0..k)
        .flat_map(|a| (0..k).map(move |b| (a + b) % k))
        .collect()
}

/// Row-major table of addition truncated at `cap` on `{0, …, cap}`.
pub fn truncated_addition_table(cap: usize) -> Vec<usize> {
    let n = cap + 1;
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a + b).min(cap)))
        .collect()
}

/// Row-major table of the join (max) semilattice on a chain of length `n`.
pub fn chain_join_table(n: usize) -> Vec<usize> {
    (0..n)
        .flat_map(|a| (0..n).map(move |b| a.max(b)))
        .collect()
}

/// Row-major table of the symmetric group on `{0, …, k-1}`, elements being
/// permutations in lexicographic order, composed diagrammatically (apply the
/// left permutation first). The identity permutation sits at index 0.
pub fn symmetric_table(k: usize) -> Vec<usize> {
    let mut items: Vec<usize> = (0..k).collect();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    permute(&mut items, 0, &mut |p| perms.push(p.to_vec()));
    perms.sort();
    let n = perms.len();
    let idx = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let mut table = vec![0usize; n * n];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let composite: Vec<usize> = (0..k).map(|x| q[p[x]]).collect();
            table[i * n + j] = idx(&composite);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_cyclic_tables() {
        for k in 1..=6 {
            validate_monoid_table(k, 0, &cyclic_table(k)).unwrap();
        }
        validate_monoid_table(3, 0, &truncated_addition_table(2)).unwrap();
        validate_monoid_table(4, 0, &chain_join_table(4)).unwrap();
    }

    #[test]
    fn rejects_broken_tables() {
        // Swap one entry of Z3 to break associativity/unit laws.
        let mut t = cyclic_table(3);
        t[1 * 3 + 2] = 1; // 1 + 2 = 1
        assert!(validate_monoid_table(3, 0, &t).is_err());
        assert!(validate_monoid_table(2, 5, &cyclic_table(2)).is_err());
        assert!(validate_monoid_table(2, 0, &[0, 1, 1]).is_err());
    }

    #[test]
    fn generator_search_generates() {
        for (n, table) in [
            (4, cyclic_table(4)),
            (3, truncated_addition_table(2)),
            (4, chain_join_table(4)),
        ] {
            let gens = greedy_generators(n, &table, 0);
            assert_eq!(submonoid_closure(n, &table, 0, &gens).len(), n);
        }
        assert_eq!(greedy_generators(4, &cyclic_table(4), 0), vec![1]);
    }

    /// Oracle: brute-force all `cod^dom` maps and filter homomorphisms.
    fn homs_bruteforce(
        dom: (usize, usize, &[usize]),
        cod: (usize, usize, &[usize]),
    ) -> Vec<Vec<usize>> {
        let (dn, du, dt) = dom;
        let (cn, cu, ct) = cod;
        let mut out = Vec::new();
        let total = (cn as u64).pow(dn as u32);
        for mut code in 0..total {
            let mut map = vec![0usize; dn];
            for slot in map.iter_mut() {
                *slot = (code % cn as u64) as usize;
                code /= cn as u64;
            }
            let ok = map[du] == cu
                && (0..dn)
                    .all(|a| (0..dn).all(|b| map[dt[a * dn + b]] == ct[map[a] * cn + map[b]]));
            if ok {
                out.push(map);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn hom_enumeration_matches_bruteforce() {
        let z4 = cyclic_table(4);
        let z2 = cyclic_table(2);
        let t2 = truncated_addition_table(2);
        let ch3 = chain_join_table(3);
        let cases: Vec<((usize, &[usize]), (usize, &[usize]))> = vec![
            ((4, &z4), (2, &z2)),
            ((2, &z2), (4, &z4)),
            ((3, &t2), (3, &ch3)),
            ((3, &ch3), (3, &t2)),
            ((4, &z4), (4, &z4)),
        ];
        for ((dn, dt), (cn, ct)) in cases {
            let mut got = monoid_homs((dn, 0, dt), (cn, 0, ct), 1 << 20).unwrap();
            got.sort();
            let want = homs_bruteforce((dn, 0, dt), (cn, 0, ct));
            assert_eq!(got, want, "homs {dn} -> {cn}");
        }
    }

    #[test]
    fn hom_counts_frozen() {
        // Hand-computed: homs Z4 → Z2 send 1 to an element of order dividing
        // 4 mapping compatibly: both elements work (1 ↦ 0, 1 ↦ 1).
        let z4 = cyclic_table(4);
        let z2 = cyclic_table(2);
        assert_eq!(monoid_homs((4, 0, &z4), (2, 0, &z2), 1000).unwrap().len(), 2);
        // Z2 → Z4: 1 must go to an element x with x + x = 0: 0 or 2.
        assert_eq!(monoid_homs((2, 0, &z2), (4, 0, &z4), 1000).unwrap().len(), 2);
        // Chain joins: unit-preserving join maps Ch2 → Ch2: 1 ↦ 0 or 1 ↦ 1.
        let ch2 = chain_join_table(2);
        assert_eq!(
            monoid_homs((2, 0, &ch2), (2, 0, &ch2), 1000).unwrap().len(),
            2
        );
    }

    #[test]
    fn budget_is_respected() {
        let z4 = cyclic_table(4);
        assert!(monoid_homs((4, 0, &z4), (4, 0, &z4), 3).is_none());
    }

    #[test]
    fn monoid_census_matches_known_counts() {
        // Known census of monoids up to isomorphism by order.
        assert_eq!(enumerate_monoids(1).len(), 1);
        assert_eq!(enumerate_monoids(2).len(), 2);
        assert_eq!(enumerate_monoids(3).len(), 7);
        assert_eq!(enumerate_monoids(4).len(), 35);
    }

    #[test]
    fn enumerated_monoids_are_valid_and_canonical() {
        for n in 1..=3 {
            let all = enumerate_monoids(n);
            for t in &all {
                validate_monoid_table(n, 0, t).unwrap();
                let perms = unit_fixing_permutations(n);
                assert_eq!(&canonical_table(n, t, &perms), t, "table not canonical");
            }
            // No duplicates up to the canonical form.
            let mut sorted = all.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
        }
    }

    #[test]
    fn group_helpers() {
        let z4 = cyclic_table(4);
        assert_eq!(group_inverses(4, 0, &z4), Some(vec![0, 3, 2, 1]));
        assert_eq!(group_inverses(3, 0, &truncated_addition_table(2)), None);
        assert_eq!(subgroup_generated(4, &z4, 0, &[2]), vec![0, 2]);
        assert_eq!(normal_closure(4, &z4, 0, &[1]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn normal_closure_in_s3() {
        // S3 as permutations of {0,1,2}, labelled lexicographically:
        // 0=[012], 1=[021], 2=[102], 3=[120], 4=[201], 5=[210].
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mut table = vec![0usize; 36];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                // Diagrammatic: apply p, then q.
                table[i * 6 + j] = idx([q[p[0]], q[p[1]], q[p[2]]]);
            }
        }
        validate_monoid_table(6, 0, &table).unwrap();
        assert_eq!(table, symmetric_table(3));
        // The normal closure of a transposition is all of S3; of a 3-cycle,
        // the alternating subgroup {identity, both 3-cycles}.
        assert_eq!(normal_closure(6, &table, 0, &[2]).len(), 6);
        assert_eq!(normal_closure(6, &table, 0, &[3]), vec![0, 3, 4]);
    }
}

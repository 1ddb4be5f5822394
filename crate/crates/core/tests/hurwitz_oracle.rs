use num_bigint::BigInt;
use num_rational::BigRational;
use tauforge::hurwitz::{branch_count, HurwitzOracle, HurwitzSource, HurwitzTable, OracleBounds};
use tauforge::partitions::{partitions_of, Partition};

/// Walks every tuple of transpositions and checks transitivity with a
/// union-find. Only feasible for tiny degrees.
fn enumerate(g: u32, mu: &Partition) -> BigRational {
    let d = mu.size() as usize;
    let r = branch_count(g, mu).unwrap() as usize;
    let transpositions: Vec<(usize, usize)> = (0..d)
        .flat_map(|a| (a + 1..d).map(move |b| (a, b)))
        .collect();
    let mut count = 0u64;
    for sigma in permutations(d).iter().filter(|p| &cycle_type(p) == mu) {
        let mut chosen = Vec::new();
        walk(sigma, r, &transpositions, &mut chosen, &mut count);
    }
    let fact: u64 = (1..=d as u64).product();
    BigRational::new(BigInt::from(count), BigInt::from(fact))
}

fn walk(
    sigma: &[usize],
    r: usize,
    transpositions: &[(usize, usize)],
    chosen: &mut Vec<(usize, usize)>,
    count: &mut u64,
) {
    if chosen.len() == r {
        // apply tau_1 first, then tau_2, ...: tau_r ... tau_1 sigma
        let mut prod = sigma.to_vec();
        for &(a, b) in chosen.iter() {
            for x in prod.iter_mut() {
                if *x == a {
                    *x = b;
                } else if *x == b {
                    *x = a;
                }
            }
        }
        if prod.iter().enumerate().any(|(i, &x)| i != x) {
            return;
        }
        let d = sigma.len();
        let mut parent: Vec<usize> = (0..d).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let root = find(p, p[x]);
                p[x] = root;
            }
            p[x]
        }
        let edges = sigma.iter().copied().enumerate().chain(chosen.iter().copied());
        for (a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        if (0..d).all(|x| find(&mut parent, x) == root) {
            *count += 1;
        }
        return;
    }
    for &t in transpositions {
        chosen.push(t);
        walk(sigma, r, transpositions, chosen, count);
        chosen.pop();
    }
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for pos in 0..d {
            let mut q = p.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out
}

fn cycle_type(p: &[usize]) -> Partition {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len > 0 {
            lens.push(len);
        }
    }
    Partition::new(lens).unwrap()
}

#[test]
fn oracle_matches_raw_enumeration() {
    let oracle = HurwitzOracle::new(OracleBounds::default());
    for d in 1..=3 {
        for mu in partitions_of(d) {
            for g in 0..=1 {
                if branch_count(g, &mu).unwrap() > 5 {
                    continue;
                }
                assert_eq!(oracle.hurwitz(g, &mu).unwrap(), enumerate(g, &mu), "g={g} mu={mu}");
            }
        }
    }
    let mu = Partition::from_slice(&[2, 2]).unwrap();
    assert_eq!(oracle.hurwitz(0, &mu).unwrap(), enumerate(0, &mu));
}

#[test]
fn recursion_matches_oracle_small() {
    let table = HurwitzTable::new();
    let oracle = HurwitzOracle::new(OracleBounds::default());
    for d in 1..=4 {
        for mu in partitions_of(d) {
            let mut g = 0;
            while branch_count(g, &mu).unwrap() <= 8 {
                assert_eq!(
                    table.hurwitz(g, &mu).unwrap(),
                    oracle.hurwitz(g, &mu).unwrap(),
                    "g={g} mu={mu}"
                );
                g += 1;
            }
        }
    }
}

#[test]
fn recursion_matches_oracle_degree_six() {
    let table = HurwitzTable::new();
    let oracle = HurwitzOracle::new(OracleBounds::default());
    for d in 5..=6 {
        for mu in partitions_of(d) {
            let mut g = 0;
            while branch_count(g, &mu).unwrap() <= 10 {
                assert_eq!(
                    table.hurwitz(g, &mu).unwrap(),
                    oracle.hurwitz(g, &mu).unwrap(),
                    "g={g} mu={mu}"
                );
                g += 1;
            }
        }
    }
}

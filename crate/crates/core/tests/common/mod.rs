//! Reference implementations kept deliberately naive and independent of the
//! library: classes are plain truth tables, subsets are built recursively,
//! and fractions are compared by cross-multiplication.

#![allow(dead_code, clippy::needless_range_loop)]

use qlearn::ConceptClass;

/// Truth tables of every concept, `tables[i][x]`.
pub fn tables(class: &ConceptClass) -> Vec<Vec<bool>> {
    class.iter().map(|c| c.table().to_vec()).collect()
}

/// `γ̂` as a reduced `(numerator, denominator)` pair.
pub fn gamma_hat_oracle(tables: &[Vec<bool>]) -> (u64, u64) {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn gamma_of(tables: &[Vec<bool>], chosen: &[usize]) -> (u64, u64) {
        let k = chosen.len() as u64;
        let mut best = 0u64;
        for x in 0..tables[0].len() {
            for b in [false, true] {
                let agree = chosen.iter().filter(|&&i| tables[i][x] == b).count() as u64;
                let worst = agree.min(k - agree);
                best = best.max(worst);
            }
        }
        (best, k)
    }

    fn walk(tables: &[Vec<bool>], start: usize, chosen: &mut Vec<usize>, best: &mut (u64, u64)) {
        if chosen.len() >= 2 {
            let (p, q) = gamma_of(tables, chosen);
            if p * best.1 < best.0 * q {
                *best = (p, q);
            }
        }
        for i in start..tables.len() {
            chosen.push(i);
            walk(tables, i + 1, chosen, best);
            chosen.pop();
        }
    }

    assert!(tables.len() >= 2);
    let mut best = (1u64, 1u64);
    walk(tables, 0, &mut Vec::new(), &mut best);
    let g = gcd(best.0, best.1).max(1);
    (best.0 / g, best.1 / g)
}

/// VC dimension by checking every subset of the domain.
pub fn vc_oracle(tables: &[Vec<bool>]) -> usize {
    let domain = tables[0].len();
    assert!(domain <= 16);
    let mut d = 0;
    for set in 0u32..(1 << domain) {
        let k = set.count_ones() as usize;
        if k <= d {
            continue;
        }
        let points: Vec<usize> = (0..domain).filter(|x| set >> x & 1 == 1).collect();
        let mut seen = vec![false; 1 << k];
        for t in tables {
            let pattern = points.iter().fold(0usize, |acc, &x| acc * 2 + t[x] as usize);
            seen[pattern] = true;
        }
        if seen.iter().all(|&s| s) {
            d = k;
        }
    }
    d
}

//! Names for small groups.
//!
//! Abelian groups of any order get their invariant factor decomposition.
//! Non-abelian groups are matched against a fixed list of models up to
//! order 16; anything outside it is reported as unidentified.

use serde::{Deserialize, Serialize};

use crate::group::{are_isomorphic, FiniteGroup};

/// Orders above this are never matched against the non-abelian models.
pub const IDENTIFY_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoType {
    /// e.g. `C6xC2`, `D3`, `Q8`, or `unidentified`.
    pub name: String,
    pub order: usize,
    pub abelian: bool,
    pub identified: bool,
}

impl std::fmt::Display for IsoType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.identified {
            f.write_str(&self.name)
        } else {
            write!(
                f,
                "unidentified, abelian={}",
                if self.abelian { "yes" } else { "no" }
            )
        }
    }
}

pub fn identify(g: &FiniteGroup) -> IsoType {
    let order = g.order();
    if g.is_abelian() {
        return IsoType {
            name: abelian_name(g),
            order,
            abelian: true,
            identified: true,
        };
    }
    let found = if order <= IDENTIFY_BOUND {
        non_abelian_models(order)
            .into_iter()
            .find(|(_, model)| are_isomorphic(g, model))
            .map(|(name, _)| name)
    } else {
        None
    };
    IsoType {
        identified: found.is_some(),
        name: found.unwrap_or_else(|| "unidentified".to_string()),
        order,
        abelian: false,
    }
}

/// Invariant factors of an abelian group, largest first, joined by `x`.
pub fn abelian_name(g: &FiniteGroup) -> String {
    let factors = invariant_factors(g);
    if factors.is_empty() {
        return "C1".to_string();
    }
    factors
        .iter()
        .map(|k| format!("C{k}"))
        .collect::<Vec<_>>()
        .join("x")
}

/// Invariant factors `d_1 ≥ d_2 ≥ …` with `d_{i+1} | d_i`, assuming `g` is
/// abelian.
pub fn invariant_factors(g: &FiniteGroup) -> Vec<usize> {
    let orders: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
    let mut per_prime: Vec<Vec<usize>> = Vec::new();
    for p in prime_factors(g.order()) {
        // N_k = #{x : x^{p^k} = 1} = p^{Σ min(e_i, k)}
        let mut exponents_at_least = Vec::new();
        let mut prev = 1usize;
        let mut pk = 1usize;
        loop {
            pk *= p;
            let count = orders.iter().filter(|&&o| pk % o == 0).count();
            if count == prev {
                break;
            }
            exponents_at_least.push(log(count / prev, p));
            prev = count;
        }
        // exponents_at_least[k] = number of cyclic p-factors of order ≥ p^{k+1}
        let rank = exponents_at_least.first().copied().unwrap_or(0);
        let mut powers: Vec<usize> = (0..rank)
            .map(|i| {
                let e = exponents_at_least.iter().filter(|&&c| c > i).count() as u32;
                p.pow(e)
            })
            .collect();
        powers.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(powers);
    }
    let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    (0..len)
        .map(|i| per_prime.iter().map(|v| v.get(i).copied().unwrap_or(1)).product())
        .collect()
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn log(mut x: usize, p: usize) -> usize {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

fn non_abelian_models(order: usize) -> Vec<(String, FiniteGroup)> {
    let mut out = Vec::new();
    if order % 2 == 0 && order >= 6 {
        out.push((format!("D{}", order / 2), FiniteGroup::dihedral(order / 2).unwrap()));
    }
    match order {
        8 => out.push(("Q8".into(), dicyclic(2))),
        12 => {
            out.push(("Dic3".into(), dicyclic(3)));
            out.push(("A4".into(), alternating4()));
        }
        16 => {
            out.push(("Q16".into(), dicyclic(4)));
            let c2 = FiniteGroup::cyclic(2).unwrap();
            let d4 = FiniteGroup::dihedral(4).unwrap();
            out.push(("D4xC2".into(), FiniteGroup::direct_product(&d4, &c2)));
            out.push(("Q8xC2".into(), FiniteGroup::direct_product(&dicyclic(2), &c2)));
        }
        _ => {}
    }
    out
}

/// Dicyclic group of order `4n`: element `j*2n + k` encodes `a^k x^j` with
/// `a^{2n} = 1`, `x^2 = a^n`, `x a x^- = a^-`.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let order = 2 * m;
    let mut table = vec![0; order * order];
    for p in 0..order {
        let (j1, k1) = (p / m, p % m);
        for q in 0..order {
            let (j2, k2) = (q / m, q % m);
            let (mut j, mut k) = if j1 == 0 {
                (j2, (k1 + k2) % m)
            } else {
                (1 + j2, (k1 + m - k2) % m)
            };
            if j == 2 {
                j = 0;
                k = (k + n) % m;
            }
            table[p * order + q] = j * m + k;
        }
    }
    FiniteGroup::from_flat_verified(format!("Dic{n}"), order, table)
        .expect("dicyclic table is a group")
}

/// The even permutations of four points.
pub fn alternating4() -> FiniteGroup {
    let s4 = FiniteGroup::symmetric(4).unwrap();
    // sign via inversion count on the lexicographic list
    let perms = lexicographic(4);
    let even: Vec<usize> = (0..perms.len())
        .filter(|&i| {
            let p = &perms[i];
            let inv = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
            inv % 2 == 0
        })
        .collect();
    let pos = |x: usize| even.iter().position(|&y| y == x).unwrap();
    let n = even.len();
    let mut table = vec![0; n * n];
    for (i, &a) in even.iter().enumerate() {
        for (j, &b) in even.iter().enumerate() {
            table[i * n + j] = pos(s4.op(a, b));
        }
    }
    FiniteGroup::from_flat_verified("A4".into(), n, table).expect("A4 table is a group")
}

fn lexicographic(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..n {
            if !prefix.contains(&x) {
                prefix.push(x);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

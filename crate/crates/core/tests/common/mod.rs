//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use unisecant::chowring::{CycleClass, Monomial};

/// Dense coefficient vector indexed by the `2^{2g}` generator subsets.
pub type Dense = Vec<i64>;

pub fn to_dense(c: &CycleClass) -> Dense {
    let g = c.ambient_g();
    let mut v = vec![0; 1 << (2 * g)];
    for (m, k) in c.terms() {
        v[m.bits() as usize] += k;
    }
    v
}

pub fn from_dense(g: u32, v: &Dense) -> CycleClass {
    let mut c = CycleClass::zero(g).unwrap();
    for (bits, &k) in v.iter().enumerate() {
        if k != 0 {
            let gens = (0..2 * g)
                .filter(|b| bits >> b & 1 == 1)
                .map(|b| unisecant::chowring::Generator::new((b % 2) as u8 + 1, b / 2 + 1, g).unwrap());
            let m = Monomial::from_generators(gens).unwrap();
            c = c.add(&CycleClass::monomial(g, m, k).unwrap()).unwrap();
        }
    }
    c
}

/// Subset convolution: `(a * b)[S] = Σ_{T ⊆ S} a[T] b[S \ T]`.
pub fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    let mut out = vec![0i64; n];
    for s in 0..n {
        let mut t = s;
        loop {
            let (x, y) = (a[t], b[s ^ t]);
            if x != 0 && y != 0 {
                out[s] += x * y;
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & s;
        }
    }
    out
}

/// Sparse random class with small coefficients.
pub fn random_class<R: Rng>(rng: &mut R, g: u32) -> CycleClass {
    let slots = 1u64 << (2 * g);
    let mut v = vec![0i64; slots as usize];
    for _ in 0..rng.gen_range(0..=6) {
        let bits = rng.gen_range(0..slots) as usize;
        v[bits] += rng.gen_range(-4..=4);
    }
    from_dense(g, &v)
}

/// `H_1 ··· H_g` by repeated dense multiplication of `r_{1,i} + r_{2,i}`.
pub fn dense_product_h(g: u32) -> Dense {
    let n = 1usize << (2 * g);
    let mut acc = vec![0i64; n];
    acc[0] = 1;
    for i in 0..g as usize {
        let mut h = vec![0i64; n];
        h[1 << (2 * i)] = 1;
        h[1 << (2 * i + 1)] = 1;
        acc = dense_mul(&acc, &h);
    }
    acc
}

/// Order of the permutation group on `n` points generated by `swaps`.
pub fn closure_order(n: usize, swaps: &[(usize, usize)]) -> usize {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for &(a, b) in swaps {
            // compose with the transposition on the right
            let q: Vec<usize> = (0..n)
                .map(|i| p[if i == a { b } else if i == b { a } else { i }])
                .collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Limit configuration described only by choice vectors: `Ξ` vertices carry
/// a full vector over `1..=g`, `Ξ'` vertices carry `(l, vector with 0 at l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    Xi(Vec<u8>),
    XiPrime(usize, Vec<u8>),
}

pub fn brute_pieces(g: usize) -> Vec<Piece> {
    let mut full: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..g {
        full = full
            .into_iter()
            .flat_map(|v| [1u8, 2].map(|c| [v.clone(), vec![c]].concat()))
            .collect();
    }
    let mut pieces: Vec<Piece> = full.iter().cloned().map(Piece::Xi).collect();
    for l in 0..g {
        let mut seen = Vec::new();
        for v in &full {
            let mut p = v.clone();
            p[l] = 0;
            if !seen.contains(&p) {
                seen.push(p.clone());
                pieces.push(Piece::XiPrime(l, p));
            }
        }
    }
    pieces
}

/// Whether two pieces of the limit meet, decided by comparing the point
/// conditions they impose.
pub fn pieces_meet(a: &Piece, b: &Piece) -> bool {
    match (a, b) {
        (Piece::Xi(x), Piece::Xi(y)) => x.iter().zip(y).filter(|(p, q)| p != q).count() == 1,
        (Piece::Xi(x), Piece::XiPrime(l, p)) | (Piece::XiPrime(l, p), Piece::Xi(x)) => {
            x.iter().enumerate().all(|(i, c)| i == *l || p[i] == *c)
        }
        (Piece::XiPrime(..), Piece::XiPrime(..)) => false,
    }
}

/// `(vertices, edges, connected)` of the brute-force limit graph.
pub fn brute_graph_stats(g: usize) -> (usize, usize, bool) {
    let pieces = brute_pieces(g);
    let n = pieces.len();
    let mut adj = vec![Vec::new(); n];
    let mut e = 0;
    for i in 0..n {
        for j in i + 1..n {
            if pieces_meet(&pieces[i], &pieces[j]) {
                adj[i].push(j);
                adj[j].push(i);
                e += 1;
            }
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (n, e, seen.iter().all(|&s| s))
}

//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's algorithms.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

/// Number of `i < j < k` with `w_i > w_j > w_k`.
pub fn count_321(w: &[usize]) -> usize {
    let n = w.len();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if w[i] > w[j] && w[j] > w[k] {
                    count += 1;
                }
            }
        }
    }
    count
}

pub fn inversion_count(w: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
        }
    }
    count
}

/// Applies letters left to right, letter `i` swapping positions `i` and `i+1`.
pub fn apply_letters(n: usize, letters: &[u16]) -> Vec<usize> {
    let mut w: Vec<usize> = (1..=n).collect();
    for &l in letters {
        w.swap(l as usize - 1, l as usize);
    }
    w
}

pub fn is_reduced(n: usize, letters: &[u16]) -> bool {
    inversion_count(&apply_letters(n, letters)) == letters.len()
}

/// Every reduced word of `w`, by trying every letter at every step.
pub fn brute_reduced_words(w: &[usize]) -> Vec<Vec<u16>> {
    let n = w.len();
    let target = inversion_count(w);
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn go(n: usize, w: &[usize], target: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if prefix.len() == target {
            if apply_letters(n, prefix) == w {
                out.push(prefix.clone());
            }
            return;
        }
        for l in 1..n as u16 {
            prefix.push(l);
            if is_reduced(n, prefix) {
                go(n, w, target, prefix, out);
            }
            prefix.pop();
        }
    }
    go(n, w, target, &mut prefix, &mut out);
    out
}

/// Whether some factor `i (i+1) i` or `(i+1) i (i+1)` occurs.
pub fn has_braid_factor(letters: &[u16]) -> bool {
    letters
        .windows(3)
        .any(|f| f[0] == f[2] && (f[0] as i32 - f[1] as i32).abs() == 1)
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        if !next_permutation(&mut cur) {
            return out;
        }
    }
}

pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn is_unimodal(w: &[usize]) -> bool {
    let peak = w.iter().position(|&v| v == w.len()).unwrap();
    w[..=peak].windows(2).all(|p| p[0] < p[1]) && w[peak..].windows(2).all(|p| p[0] > p[1])
}

/// The `2^(n-1)` unimodal permutations, built from the set left of `n`.
pub fn unimodal_perms(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << (n - 1))
        .map(|mask| {
            let left: Vec<usize> = (1..n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            let right: Vec<usize> = (1..n).rev().filter(|v| mask >> (v - 1) & 1 == 0).collect();
            [left, vec![n], right].concat()
        })
        .collect()
}

pub fn binomial(m: usize, r: usize) -> usize {
    if m < r {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

/// A uniform permutation together with a reduced word for it, built by
/// peeling random right descents.
pub fn random_reduced_word(rng: &mut impl Rng, n: usize) -> (Vec<usize>, Vec<u16>) {
    let mut w: Vec<usize> = (1..=n).collect();
    w.shuffle(rng);
    let target = w.clone();
    let mut peeled = Vec::new();
    loop {
        let descents: Vec<usize> = (0..n - 1).filter(|&i| w[i] > w[i + 1]).collect();
        if descents.is_empty() {
            break;
        }
        let i = descents[rng.random_range(0..descents.len())];
        w.swap(i, i + 1);
        peeled.push(i as u16 + 1);
    }
    peeled.reverse();
    (target, peeled)
}

pub fn compact(w: &[usize]) -> String {
    w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

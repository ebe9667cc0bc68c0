//! Type-A flag and Grassmannian geometry: Pluecker and flag ideals,
//! Richardson and projected Richardson ideals, the Groebner degeneration and
//! Hilbert checks, and finite-field point oracles.

// mod flag;
// mod oracle;
// mod checks;


use crate::coxeter::{CoxeterSystem, Element, Family, SystemSpec};

/// One-line notation of a type-A element: `s_i` swaps positions `i`, `i+1`
/// under right multiplication, so the word folds as position swaps on the
/// identity arrangement.
pub fn one_line(sys: &CoxeterSystem, w: &Element) -> Vec<usize> {
    let n = match sys.spec() {
        SystemSpec::Family {
            family: Family::A,
            rank,
        } => rank + 1,
        _ => panic!("one-line notation needs a type-A system"),
    };
    let mut line: Vec<usize> = (1..=n).collect();
    for i in w.word() {
        line.swap(i, i + 1);
    }
    line
}

/// Inverse of [`one_line`]: bubble-sort the arrangement back to the identity
/// and read the swaps as a reduced word.
pub fn element_from_one_line(sys: &CoxeterSystem, line: &[usize]) -> Element {
    let mut line = line.to_vec();
    let mut word = Vec::new();
    loop {
        match (0..line.len() - 1).find(|&i| line[i] > line[i + 1]) {
            Some(i) => {
                line.swap(i, i + 1);
                word.push(i);
            }
            None => break,
        }
    }
    word.reverse();
    sys.normal_form(&word).expect("valid word")
}

/// `pi_k(w) = sort{w(1), ..., w(k)}`, the step-`k` Grassmannian projection
/// of a type-A element (`k` is 1-based).
pub fn pi_subset(sys: &CoxeterSystem, w: &Element, k: usize) -> Vec<usize> {
    let line = one_line(sys, w);
    let mut subset: Vec<usize> = line[..k].to_vec();
    subset.sort_unstable();
    subset
}

/// The `k`-subset associated to a minimal coset representative; used to rank
/// coset ids by sum-then-lex.
pub fn subset_of_min_rep(sys: &CoxeterSystem, min_rep: &Element, k: usize) -> Vec<usize> {
    pi_subset(sys, min_rep, k)
}

/// Componentwise order on sorted subsets, i.e. Bruhat order on `W^P`.
pub fn subset_leq(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// All `k`-subsets of `{1..n}` sorted by (sum, lex): the Pluecker variable
/// ranking used across the crate.
pub fn ranked_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut subsets = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut subsets);
    subsets.sort_by_key(|s| (s.iter().sum::<usize>(), s.clone()));
    subsets
}

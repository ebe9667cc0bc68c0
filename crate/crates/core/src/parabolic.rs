//! Parabolic quotients `W/W_P`: factorization, minimal/maximal coset
//! representatives, Demazure products, and the unique-lift operator.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coxeter::{CoxeterSystem, Direction, Element, Family, SystemSpec};
use crate::error::{Error, Result};

/// A coset of `W_P` identified by the rank of its minimal representative in a
/// fixed linear extension of Bruhat order on `W^P`.
pub type CosetId = usize;

/// The quotient `W/W_P` for `W_P` generated by a subset `J` of the simple
/// generators. Materializes the coset table and per-coset min/max
/// representatives; immutable after construction.
pub struct ParabolicQuotient {
    system: Arc<CoxeterSystem>,
    j: Vec<usize>,
    wp_elements: Vec<Element>,
    wp_longest: Element,
    /// Minimal representatives, indexed by coset id.
    min_reps: Vec<Element>,
    /// Maximal representatives, indexed by coset id.
    max_reps: Vec<Element>,
    /// Members of each coset, sorted.
    members: Vec<Vec<Element>>,
    /// Element index (in `system.elements()` order) -> coset id.
    coset_of: Vec<CosetId>,
    /// P-Bruhat reachability, built on first use by `pbruhat`.
    pleq: OnceLock<Vec<Vec<bool>>>,
}

impl ParabolicQuotient {
    /// Build the quotient for the parabolic generated by `j` (0-based
    /// generator indices; duplicates ignored).
    pub fn new(system: Arc<CoxeterSystem>, j: &[usize]) -> Result<Self> {
        let mut j: Vec<usize> = j.to_vec();
        j.sort_unstable();
        j.dedup();
        if let Some(&bad) = j.iter().find(|&&i| i >= system.rank()) {
            return Err(Error::GeneratorOutOfRange(bad + 1, system.rank()));
        }

        // Enumerate W_P by closure under the J generators.
        let mut wp: Vec<Element> = vec![system.identity()];
        let mut seen: HashMap<Element, ()> = HashMap::new();
        seen.insert(system.identity(), ());
        let mut head = 0;
        while head < wp.len() {
            let w = wp[head].clone();
            head += 1;
            for &i in &j {
                let ws = system.mul_gen(&w, i);
                if !seen.contains_key(&ws) {
                    seen.insert(ws.clone(), ());
                    wp.push(ws);
                }
            }
        }
        wp.sort();
        let wp_longest = wp.last().unwrap().clone();

        // Minimal representatives and the coset partition.
        let elements = system.elements().to_vec();
        let mut min_rep_of: Vec<Element> = Vec::with_capacity(elements.len());
        for w in &elements {
            min_rep_of.push(min_rep(&system, &j, w));
        }
        let mut min_reps: Vec<Element> = min_rep_of.clone();
        min_reps.sort();
        min_reps.dedup();
        // Order by the fixed linear extension of Bruhat order on W^P.
        let keys: Vec<CosetKey> = min_reps
            .iter()
            .map(|m| coset_key(&system, &j, m))
            .collect();
        let mut order: Vec<usize> = (0..min_reps.len()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let min_reps: Vec<Element> = order.into_iter().map(|i| min_reps[i].clone()).collect();

        let rep_to_id: HashMap<Element, CosetId> = min_reps
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();

        let mut members: Vec<Vec<Element>> = vec![Vec::new(); min_reps.len()];
        let mut coset_of = vec![0usize; elements.len()];
        for (idx, w) in elements.iter().enumerate() {
            let id = rep_to_id[&min_rep_of[idx]];
            coset_of[idx] = id;
            members[id].push(w.clone());
        }
        for m in &mut members {
            m.sort();
        }

        let max_reps: Vec<Element> = min_reps
            .iter()
            .map(|m| {
                let mx = system.mul(m, &wp_longest);
                debug_assert_eq!(mx.length(), m.length() + wp_longest.length());
                mx
            })
            .collect();

        if elements.len() != wp.len() * min_reps.len() {
            return Err(Error::InvalidInput(
                "|W| != |W_P| * |W/W_P|; coset table inconsistent".into(),
            ));
        }

        Ok(ParabolicQuotient {
            system,
            j,
            wp_elements: wp,
            wp_longest,
            min_reps,
            max_reps,
            members,
            coset_of,
            pleq: OnceLock::new(),
        })
    }

    pub(crate) fn pleq_cache(&self) -> &OnceLock<Vec<Vec<bool>>> {
        &self.pleq
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    /// The generator subset `J`, 0-based, sorted.
    pub fn parabolic_generators(&self) -> &[usize] {
        &self.j
    }

    pub fn wp_elements(&self) -> &[Element] {
        &self.wp_elements
    }

    pub fn wp_longest(&self) -> &Element {
        &self.wp_longest
    }

    pub fn num_cosets(&self) -> usize {
        self.min_reps.len()
    }

    pub fn coset_of(&self, w: &Element) -> CosetId {
        self.coset_of[self.system.element_index(w)]
    }

    /// Minimal and maximal representatives of a coset.
    pub fn coset_reps(&self, c: CosetId) -> (&Element, &Element) {
        (&self.min_reps[c], &self.max_reps[c])
    }

    pub fn min_reps(&self) -> &[Element] {
        &self.min_reps
    }

    pub fn coset_members(&self, c: CosetId) -> &[Element] {
        &self.members[c]
    }

    pub fn in_wp(&self, w: &Element) -> bool {
        self.coset_of(w) == self.coset_of(&self.system.identity())
    }

    /// Whether `w` is a minimal coset representative (no right descent in J).
    pub fn is_min_rep(&self, w: &Element) -> bool {
        self.j.iter().all(|&i| !self.system.is_right_descent(w, i))
    }

    /// Parabolic factorization `w = w^P w_P` with additive lengths.
    pub fn factorize(&self, w: &Element) -> (Element, Element) {
        let wp_min = min_rep(&self.system, &self.j, w);
        let par = self.system.mul(&self.system.inv(&wp_min), w);
        debug_assert_eq!(w.length(), wp_min.length() + par.length());
        (wp_min, par)
    }

    /// Upwards (`ws` if `ws > w`) or downwards (`ws` if `ws < w`) Demazure
    /// product, folded over the canonical reduced word of `v`. The result is
    /// independent of the chosen word.
    pub fn demazure(&self, w: &Element, v: &Element, dir: Direction) -> Element {
        demazure(&self.system, w, v, dir)
    }

    /// The minimum of `C_{>= x}` if nonempty. When nonempty the minimum is
    /// unique and satisfies `x <=_P z`.
    pub fn unique_lift(&self, x: &Element, c: CosetId) -> Option<Element> {
        let sys = &self.system;
        let candidates: Vec<&Element> = self.members[c]
            .iter()
            .filter(|m| sys.bruhat_leq(x, m))
            .collect();
        let best = candidates.iter().min_by_key(|m| m.length())?;
        for m in &candidates {
            assert!(
                sys.bruhat_leq(best, m),
                "C_{{>=x}} has no unique minimum: {best} vs {m}"
            );
        }
        Some((*best).clone())
    }

    /// Bruhat order on `W^P` via min representatives.
    pub fn quotient_leq(&self, a: CosetId, b: CosetId) -> bool {
        self.system.bruhat_leq(&self.min_reps[a], &self.min_reps[b])
    }
}

/// Strip right descents in `J` to reach the minimal coset representative.
fn min_rep(sys: &CoxeterSystem, j: &[usize], w: &Element) -> Element {
    let mut x = w.clone();
    loop {
        match j.iter().find(|&&i| sys.is_right_descent(&x, i)) {
            Some(&i) => x = sys.mul_gen(&x, i),
            None => return x,
        }
    }
}

/// Demazure product as a free function (used by modules without a quotient).
pub fn demazure(sys: &CoxeterSystem, w: &Element, v: &Element, dir: Direction) -> Element {
    let mut acc = w.clone();
    for i in v.word() {
        let next = sys.mul_gen(&acc, i);
        let take = match dir {
            Direction::Up => next.length() > acc.length(),
            Direction::Down => next.length() < acc.length(),
        };
        if take {
            acc = next;
        }
    }
    acc
}

/// Linear-extension key for coset ids: sum-then-lex on type-A `k`-subsets
/// when the quotient is a type-A Grassmannian, length-then-word-lex
/// otherwise. Both refine Bruhat order on `W^P`.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum CosetKey {
    Subset(i64, Vec<usize>),
    LengthWord(usize, Vec<usize>),
}

fn coset_key(sys: &CoxeterSystem, j: &[usize], min_rep: &Element) -> CosetKey {
    if let Some(k) = grassmannian_step(sys, j) {
        let subset = crate::typea::subset_of_min_rep(sys, min_rep, k);
        return CosetKey::Subset(subset.iter().map(|&x| x as i64).sum(), subset);
    }
    CosetKey::LengthWord(min_rep.length(), min_rep.word())
}

/// If the system is type A of rank `n-1` and `J` omits exactly one generator
/// `k`, the quotient is the Grassmannian of `k`-subsets (1-based `k`).
pub fn grassmannian_step(sys: &CoxeterSystem, j: &[usize]) -> Option<usize> {
    match sys.spec() {
        SystemSpec::Family {
            family: Family::A,
            rank,
        } => {
            let missing: Vec<usize> = (0..*rank).filter(|i| !j.contains(i)).collect();
            if missing.len() == 1 {
                Some(missing[0] + 1)
            } else {
                None
            }
        }
        _ => None,
    }
}

impl Serialize for ParabolicQuotient {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct CosetOut {
            id: usize,
            #[serde(rename = "min-word")]
            min_word: Vec<usize>,
            #[serde(rename = "max-word")]
            max_word: Vec<usize>,
        }
        let cosets: Vec<CosetOut> = (0..self.num_cosets())
            .map(|c| CosetOut {
                id: c,
                min_word: self.min_reps[c].word_1based(),
                max_word: self.max_reps[c].word_1based(),
            })
            .collect();
        let mut st = serializer.serialize_struct("ParabolicQuotient", 3)?;
        st.serialize_field("system", self.system.spec())?;
        st.serialize_field(
            "J",
            &self.j.iter().map(|&i| i + 1).collect::<Vec<usize>>(),
        )?;
        st.serialize_field("cosets", &cosets)?;
        st.end()
    }
}

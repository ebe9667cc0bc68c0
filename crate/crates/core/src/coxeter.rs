//! Finite crystallographic Coxeter systems with an exact root-system action.
//!
//! A [`CoxeterSystem`] materializes the full set of positive roots as integer
//! vectors in the simple-root basis. A group [`Element`] is stored as the
//! signed permutation it induces on the positive roots, so equality is an
//! array comparison, length is the count of positive roots sent negative, and
//! Bruhat order falls out of root signs. Every element also carries a
//! canonical reduced word (smallest right descent peeled last).

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// How a system is specified: a named family plus rank, or an explicit
/// Cartan matrix. Only finite crystallographic data is accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemSpec {
    Family {
        #[serde(rename = "type")]
        family: Family,
        rank: usize,
    },
    Cartan {
        cartan: Vec<Vec<i64>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    F4,
}

impl SystemSpec {
    pub fn family(family: Family, rank: usize) -> Self {
        SystemSpec::Family { family, rank }
    }

    /// The Cartan matrix `C` with `C[i][j] = <alpha_j, alpha_i^vee>`, so that
    /// `s_i(alpha_j) = alpha_j - C[i][j] alpha_i`.
    pub fn cartan_matrix(&self) -> Result<Vec<Vec<i64>>> {
        match self {
            SystemSpec::Cartan { cartan } => Ok(cartan.clone()),
            SystemSpec::Family { family, rank } => family_cartan(*family, *rank),
        }
    }
}

fn family_cartan(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    let n = rank;
    let chain = |n: usize| -> Vec<Vec<i64>> {
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
            if i + 1 < n {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        }
        c
    };
    match family {
        Family::A => {
            if n == 0 {
                return Err(Error::InvalidSystem("type A needs rank >= 1".into()));
            }
            Ok(chain(n))
        }
        Family::B => {
            if n < 2 {
                return Err(Error::InvalidSystem("type B needs rank >= 2".into()));
            }
            let mut c = chain(n);
            // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2.
            c[n - 1][n - 2] = -2;
            Ok(c)
        }
        Family::C => {
            if n < 2 {
                return Err(Error::InvalidSystem("type C needs rank >= 2".into()));
            }
            let mut c = chain(n);
            c[n - 2][n - 1] = -2;
            Ok(c)
        }
        Family::D => {
            if n < 3 {
                return Err(Error::InvalidSystem("type D needs rank >= 3".into()));
            }
            let mut c = chain(n - 1);
            for row in &mut c {
                row.push(0);
            }
            c.push(vec![0; n]);
            c[n - 1][n - 1] = 2;
            // node n attaches to node n-2.
            c[n - 1][n - 3] = -1;
            c[n - 3][n - 1] = -1;
            // nodes n-1 and n are not adjacent.
            c[n - 2][n - 1] = 0;
            c[n - 1][n - 2] = 0;
            Ok(c)
        }
        Family::G2 => {
            if n != 2 {
                return Err(Error::InvalidSystem("type G2 has rank 2".into()));
            }
            Ok(vec![vec![2, -1], vec![-3, 2]])
        }
        Family::F4 => {
            if n != 4 {
                return Err(Error::InvalidSystem("type F4 has rank 4".into()));
            }
            Ok(vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ])
        }
    }
}

/// Direction argument for cover computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Side argument for descent computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A group element: the signed permutation it induces on positive roots,
/// its length, and a canonical reduced word (0-based generator indices).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    perm: Box<[i32]>,
    len: u32,
    word: Box<[u8]>,
}

impl Element {
    pub fn length(&self) -> usize {
        self.len as usize
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    /// The canonical reduced word, 0-based generator indices.
    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&i| i as usize).collect()
    }

    /// The canonical reduced word with 1-based indices, as serialized.
    pub fn word_1based(&self) -> Vec<usize> {
        self.word.iter().map(|&i| i as usize + 1).collect()
    }

    fn image(&self, signed: i32) -> i32 {
        let idx = signed.unsigned_abs() as usize - 1;
        let img = self.perm[idx];
        if signed < 0 {
            -img
        } else {
            img
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len, &self.perm).cmp(&(other.len, &other.perm))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", parts.join(""))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.word.len()))?;
        for i in self.word.iter() {
            seq.serialize_element(&(*i as usize + 1))?;
        }
        seq.end()
    }
}

/// A finite crystallographic Coxeter system with its root system, simple
/// reflection action, reflection set, and (lazily) the full element list.
pub struct CoxeterSystem {
    spec: SystemSpec,
    cartan: Vec<Vec<i64>>,
    rank: usize,
    /// Positive roots in the simple-root basis; simple roots occupy the
    /// first `rank` slots, the rest are sorted by (height, lex).
    positive_roots: Vec<Vec<i64>>,
    /// `simple_action[i][k]` = signed 1-based index of `s_i(beta_k)`.
    simple_action: Vec<Vec<i32>>,
    /// `reflections[k]` is the reflection whose positive root is `beta_k`.
    reflections: Vec<Element>,
    reflection_index: HashMap<Box<[i32]>, usize>,
    w0: Element,
    elements: OnceLock<(Vec<Element>, HashMap<Box<[i32]>, usize>)>,
}

const ROOT_CLOSURE_CAP: usize = 600;

impl CoxeterSystem {
    pub fn new(spec: SystemSpec) -> Result<Self> {
        let cartan = spec.cartan_matrix()?;
        let rank = cartan.len();
        if rank == 0 {
            return Err(Error::InvalidSystem("empty Cartan matrix".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidSystem("Cartan matrix not square".into()));
            }
            if row[i] != 2 {
                return Err(Error::InvalidSystem(format!(
                    "diagonal entry C[{i}][{i}] = {} must be 2",
                    row[i]
                )));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let (a, b) = (cartan[i][j], cartan[j][i]);
                if a > 0 || b > 0 {
                    return Err(Error::InvalidSystem(format!(
                        "off-diagonal entries C[{i}][{j}], C[{j}][{i}] must be <= 0"
                    )));
                }
                if (a == 0) != (b == 0) {
                    return Err(Error::InvalidSystem(format!(
                        "C[{i}][{j}] and C[{j}][{i}] must vanish together"
                    )));
                }
                if !(0..=3).contains(&(a * b)) {
                    return Err(Error::InvalidSystem(format!(
                        "C[{i}][{j}]*C[{j}][{i}] = {} is not in 0..=3 (non-finite type)",
                        a * b
                    )));
                }
            }
        }

        let positive_roots = generate_positive_roots(&cartan)?;
        let nroots = positive_roots.len();
        let root_index: HashMap<Vec<i64>, usize> = positive_roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();

        let mut simple_action = vec![vec![0i32; nroots]; rank];
        for i in 0..rank {
            for (k, beta) in positive_roots.iter().enumerate() {
                let img = reflect_simple(&cartan, i, beta);
                if img.iter().all(|&c| c >= 0) {
                    simple_action[i][k] = root_index[&img] as i32 + 1;
                } else {
                    let neg: Vec<i64> = img.iter().map(|&c| -c).collect();
                    simple_action[i][k] = -(root_index[&neg] as i32 + 1);
                }
            }
        }

        let mut sys = CoxeterSystem {
            spec,
            cartan,
            rank,
            positive_roots,
            simple_action,
            reflections: Vec::new(),
            reflection_index: HashMap::new(),
            w0: Element {
                perm: Box::new([]),
                len: 0,
                word: Box::new([]),
            },
            elements: OnceLock::new(),
        };

        sys.w0 = sys.compute_w0();
        if sys.w0.length() != nroots {
            return Err(Error::InvalidSystem(format!(
                "l(w0) = {} does not match {} positive roots",
                sys.w0.length(),
                nroots
            )));
        }
        sys.build_reflections()?;
        Ok(sys)
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn identity(&self) -> Element {
        let n = self.positive_roots.len();
        Element {
            perm: (1..=n as i32).collect(),
            len: 0,
            word: Box::new([]),
        }
    }

    /// The simple generator `s_i`, 0-based.
    pub fn generator(&self, i: usize) -> Element {
        assert!(i < self.rank, "generator index {i} out of range");
        let perm: Box<[i32]> = self.simple_action[i].clone().into_boxed_slice();
        Element {
            perm,
            len: 1,
            word: Box::new([i as u8]),
        }
    }

    pub fn longest_element(&self) -> &Element {
        &self.w0
    }

    /// Right multiplication by a simple generator.
    pub fn mul_gen(&self, w: &Element, i: usize) -> Element {
        let n = self.positive_roots.len();
        let mut perm = vec![0i32; n];
        let act = &self.simple_action[i];
        for k in 0..n {
            perm[k] = w.image(act[k]);
        }
        self.finish(perm)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let n = self.positive_roots.len();
        let mut perm = vec![0i32; n];
        for k in 0..n {
            perm[k] = a.image(b.perm[k]);
        }
        self.finish(perm)
    }

    pub fn inv(&self, w: &Element) -> Element {
        let n = self.positive_roots.len();
        let mut perm = vec![0i32; n];
        for k in 0..n {
            let img = w.perm[k];
            let idx = img.unsigned_abs() as usize - 1;
            perm[idx] = if img < 0 { -(k as i32 + 1) } else { k as i32 + 1 };
        }
        self.finish(perm)
    }

    fn finish(&self, perm: Vec<i32>) -> Element {
        let len = perm.iter().filter(|&&x| x < 0).count() as u32;
        let word = self.canonical_word(&perm, len);
        Element {
            perm: perm.into_boxed_slice(),
            len,
            word,
        }
    }

    /// Canonical reduced word: repeatedly strip the smallest right descent.
    fn canonical_word(&self, perm: &[i32], len: u32) -> Box<[u8]> {
        let mut word = vec![0u8; len as usize];
        let mut cur = perm.to_vec();
        let mut pos = len as usize;
        while pos > 0 {
            let i = (0..self.rank)
                .find(|&i| cur[i] < 0)
                .expect("nonidentity element must have a right descent");
            pos -= 1;
            word[pos] = i as u8;
            // cur := cur * s_i
            let act = &self.simple_action[i];
            let next: Vec<i32> = (0..cur.len())
                .map(|k| {
                    let j = act[k];
                    let idx = j.unsigned_abs() as usize - 1;
                    if j < 0 {
                        -cur[idx]
                    } else {
                        cur[idx]
                    }
                })
                .collect();
            cur = next;
        }
        word.into_boxed_slice()
    }

    /// Canonical element for a word in the generators (0-based indices).
    pub fn normal_form(&self, word: &[usize]) -> Result<Element> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.rank {
                return Err(Error::GeneratorOutOfRange(i + 1, self.rank));
            }
            w = self.mul_gen(&w, i);
        }
        Ok(w)
    }

    /// Parse a 1-based word as used in JSON and on the command line.
    pub fn element_from_word_1based(&self, word: &[usize]) -> Result<Element> {
        let shifted: Vec<usize> = word
            .iter()
            .map(|&i| {
                if i == 0 {
                    Err(Error::GeneratorOutOfRange(0, self.rank))
                } else {
                    Ok(i - 1)
                }
            })
            .collect::<Result<_>>()?;
        self.normal_form(&shifted)
    }

    pub fn length(&self, w: &Element) -> usize {
        w.length()
    }

    /// Whether `i` is a right descent: `w s_i < w`, i.e. `w(alpha_i) < 0`.
    pub fn is_right_descent(&self, w: &Element, i: usize) -> bool {
        w.perm[i] < 0
    }

    pub fn descents(&self, w: &Element, side: Side) -> Vec<usize> {
        match side {
            Side::Right => (0..self.rank).filter(|&i| w.perm[i] < 0).collect(),
            Side::Left => {
                let winv = self.inv(w);
                (0..self.rank).filter(|&i| winv.perm[i] < 0).collect()
            }
        }
    }

    /// Bruhat order by the descent recursion: if `w s_i < w` then
    /// `u <= w  iff  (u s_i < u ? u s_i <= w s_i : u <= w s_i)`.
    pub fn bruhat_leq(&self, u: &Element, w: &Element) -> bool {
        if u.len > w.len {
            return false;
        }
        if u.len == w.len {
            return u == w;
        }
        let i = (0..self.rank)
            .find(|&i| w.perm[i] < 0)
            .expect("longer element has a descent");
        let ws = self.mul_gen(w, i);
        if u.perm[i] < 0 {
            self.bruhat_leq(&self.mul_gen(u, i), &ws)
        } else {
            self.bruhat_leq(u, &ws)
        }
    }

    pub fn bruhat_lt(&self, u: &Element, w: &Element) -> bool {
        u != w && self.bruhat_leq(u, w)
    }

    /// Whether `w` covers `v` in Bruhat order.
    pub fn is_cover(&self, v: &Element, w: &Element) -> bool {
        w.len == v.len + 1 && self.bruhat_leq(v, w)
    }

    /// Bruhat covers of `w`, going up or down. `w t` for a reflection `t` is
    /// related to `w` by a cover exactly when the lengths differ by one.
    pub fn covers(&self, w: &Element, dir: Direction) -> Vec<Element> {
        let mut out: Vec<Element> = self
            .reflections
            .iter()
            .map(|t| self.mul(w, t))
            .filter(|wt| match dir {
                Direction::Up => wt.len == w.len + 1,
                Direction::Down => w.len == wt.len + 1,
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// All reflections paired with their positive roots.
    pub fn reflections_with_roots(&self) -> Vec<(Element, &[i64])> {
        self.reflections
            .iter()
            .enumerate()
            .map(|(k, t)| (t.clone(), self.positive_roots[k].as_slice()))
            .collect()
    }

    pub fn reflections(&self) -> &[Element] {
        &self.reflections
    }

    /// Index of the positive root of a reflection, if the element is one.
    pub fn reflection_root(&self, t: &Element) -> Option<usize> {
        self.reflection_index.get(&t.perm).copied()
    }

    /// The reflection `u^{-1} w` when `u` and `w` differ by one, as in chain
    /// labels; the caller must ensure it is a reflection.
    pub fn chain_label(&self, u: &Element, w: &Element) -> Element {
        self.mul(&self.inv(u), w)
    }

    /// All group elements, sorted by (length, action), built on first use.
    pub fn elements(&self) -> &[Element] {
        &self.elements_impl().0
    }

    pub fn group_order(&self) -> usize {
        self.elements().len()
    }

    pub fn element_index(&self, w: &Element) -> usize {
        *self
            .elements_impl()
            .1
            .get(&w.perm)
            .expect("element of another system")
    }

    fn elements_impl(&self) -> &(Vec<Element>, HashMap<Box<[i32]>, usize>) {
        self.elements.get_or_init(|| {
            let mut seen: HashMap<Box<[i32]>, ()> = HashMap::new();
            let mut queue = vec![self.identity()];
            seen.insert(queue[0].perm.clone(), ());
            let mut head = 0;
            while head < queue.len() {
                let w = queue[head].clone();
                head += 1;
                for i in 0..self.rank {
                    let ws = self.mul_gen(&w, i);
                    if !seen.contains_key(&ws.perm) {
                        seen.insert(ws.perm.clone(), ());
                        queue.push(ws);
                    }
                }
            }
            queue.sort();
            let index = queue
                .iter()
                .enumerate()
                .map(|(i, w)| (w.perm.clone(), i))
                .collect();
            (queue, index)
        })
    }

    fn compute_w0(&self) -> Element {
        let mut w = self.identity();
        loop {
            match (0..self.rank).find(|&i| w.perm[i] > 0) {
                Some(i) => w = self.mul_gen(&w, i),
                None => return w,
            }
        }
    }

    fn build_reflections(&mut self) -> Result<()> {
        let n = self.positive_roots.len();
        let mut refl: Vec<Option<Element>> = vec![None; n];
        let mut queue: Vec<usize> = Vec::new();
        for i in 0..self.rank {
            refl[i] = Some(self.generator(i));
            queue.push(i);
        }
        let mut head = 0;
        while head < queue.len() {
            let k = queue[head];
            head += 1;
            let t = refl[k].clone().unwrap();
            for i in 0..self.rank {
                let img = self.simple_action[i][k];
                if img < 0 {
                    continue; // beta_k = alpha_i
                }
                let m = img as usize - 1;
                if refl[m].is_none() {
                    let si = self.generator(i);
                    refl[m] = Some(self.mul(&self.mul(&si, &t), &si));
                    queue.push(m);
                }
            }
        }
        let mut reflections = Vec::with_capacity(n);
        for (k, r) in refl.into_iter().enumerate() {
            let t = r.ok_or_else(|| {
                Error::InvalidSystem(format!("root {k} unreachable from simple roots"))
            })?;
            if t.perm[k] != -(k as i32 + 1) {
                return Err(Error::InvalidSystem(format!(
                    "reflection for root {k} does not negate it"
                )));
            }
            reflections.push(t);
        }
        self.reflection_index = reflections
            .iter()
            .enumerate()
            .map(|(k, t)| (t.perm.clone(), k))
            .collect();
        if self.reflection_index.len() != n {
            return Err(Error::InvalidSystem(
                "reflection <-> positive root pairing is not a bijection".into(),
            ));
        }
        self.reflections = reflections;
        Ok(())
    }

    /// All reduced words of `w` (test/oracle helper; exponential in length).
    pub fn reduced_words(&self, w: &Element) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..self.rank {
            if self.is_right_descent(w, i) {
                let ws = self.mul_gen(w, i);
                for mut prefix in self.reduced_words(&ws) {
                    prefix.push(i);
                    out.push(prefix);
                }
            }
        }
        out
    }
}

fn reflect_simple(cartan: &[Vec<i64>], i: usize, beta: &[i64]) -> Vec<i64> {
    // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i,
    // <beta, alpha_i^vee> = sum_j beta_j C[i][j].
    let pairing: i64 = beta.iter().zip(&cartan[i]).map(|(&b, &c)| b * c).sum();
    let mut img = beta.to_vec();
    img[i] -= pairing;
    img
}

fn generate_positive_roots(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let rank = cartan.len();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        seen.insert(e.clone(), ());
        roots.push(e);
    }
    let mut head = 0;
    while head < roots.len() {
        let beta = roots[head].clone();
        head += 1;
        for i in 0..rank {
            let img = reflect_simple(cartan, i, &beta);
            if img.iter().all(|&c| c >= 0) && !seen.contains_key(&img) {
                seen.insert(img.clone(), ());
                roots.push(img);
            }
        }
        if roots.len() > ROOT_CLOSURE_CAP {
            return Err(Error::InvalidSystem(
                "root closure exceeded cap; not a finite type".into(),
            ));
        }
    }
    // Simple roots stay first; the rest sort by (height, lex).
    let mut rest: Vec<Vec<i64>> = roots.split_off(rank);
    rest.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots.extend(rest);
    Ok(roots)
}

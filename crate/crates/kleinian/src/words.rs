//! Group words over a marked generating set: canonical enumeration,
//! reduction, random sampling, and matrix evaluation.
//!
//! The slice renderer relies on one property above all: the word list and
//! its order are identical at the test point and at every pixel.  All
//! ordering here is by pure integer comparisons, so lists are reproducible
//! across runs, platforms and thread counts.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Error;
use crate::mobius::Mobius;

/// Hard ceiling on full enumeration; beyond this, sampling is the only
/// realistic option and the error message says so.
pub const DEFAULT_WORD_CAP: u64 = 1_000_000;

/// One letter: a generator index and a sign.  The derived order
/// (index, then plain before inverse) is the canonical alphabet order.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn plain(gen: usize) -> Letter {
        Letter { gen, inverse: false }
    }

    pub fn inv(gen: usize) -> Letter {
        Letter { gen, inverse: true }
    }

    fn opposite(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// How words are identified beyond free reduction.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum Reduction {
    Free,
    /// Generators i and j commute; words are kept in the normal form where
    /// every maximal {i, j}-block reads i-letters first, then j-letters.
    CommutingPair(usize, usize),
}

/// A reduced word.  Construction through [`Word::from_letters`] normalises,
/// so two `Word`s are equal in the quotient group iff they are equal as
/// values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if stack.last() == Some(&l.opposite()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

/// Stable-partition every maximal {i, j}-run so i-letters precede
/// j-letters.  Sorting can expose new free cancellations (PQP⁻¹ → PP⁻¹Q),
/// so [`normalize`] alternates this with reduction until stable.
fn sort_commuting_runs(letters: &[Letter], i: usize, j: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(letters.len());
    let mut k = 0;
    while k < letters.len() {
        if letters[k].gen != i && letters[k].gen != j {
            out.push(letters[k]);
            k += 1;
            continue;
        }
        let start = k;
        while k < letters.len() && (letters[k].gen == i || letters[k].gen == j) {
            k += 1;
        }
        out.extend(letters[start..k].iter().filter(|l| l.gen == i));
        out.extend(letters[start..k].iter().filter(|l| l.gen == j));
    }
    out
}

fn normalize(letters: Vec<Letter>, mode: Reduction) -> Vec<Letter> {
    match mode {
        Reduction::Free => free_reduce(&letters),
        Reduction::CommutingPair(i, j) => {
            let mut current = letters;
            loop {
                let next = sort_commuting_runs(&free_reduce(&current), i, j);
                if next == current {
                    return next;
                }
                current = next;
            }
        }
    }
}

impl Word {
    /// Build a word from raw letters, reducing to normal form.
    pub fn from_letters(mode: Reduction, letters: Vec<Letter>) -> Word {
        Word(normalize(letters, mode))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Left-to-right product of generator matrices and inverses, with the
    /// determinant re-normalised at every step.  The empty word gives the
    /// identity.
    pub fn evaluate(&self, gens: &[Mobius]) -> Result<Mobius, Error> {
        let mut acc: Option<Mobius> = None;
        for l in &self.0 {
            let g = gens.get(l.gen).ok_or(Error::GeneratorIndexOutOfRange {
                index: l.gen,
                count: gens.len(),
            })?;
            let m = if l.inverse { g.inverse() } else { *g };
            acc = Some(match acc {
                None => m,
                Some(a) => a.checked_mul(&m)?,
            });
        }
        Ok(acc.unwrap_or_else(Mobius::identity))
    }

    /// Render with the family's generator names, e.g. "P Q⁻¹ M".
    pub fn to_string_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                let base = names
                    .get(l.gen)
                    .map(|s| s.as_ref().to_string())
                    .unwrap_or_else(|| format!("g{}", l.gen));
                if l.inverse {
                    format!("{}⁻¹", base)
                } else {
                    base
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Parse "P Q⁻¹ M" (also accepting the ASCII form "Q^-1") against a
    /// name list, then normalise under `mode`.
    pub fn parse<S: AsRef<str>>(text: &str, names: &[S], mode: Reduction) -> Result<Word, Error> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (base, inverse) = if let Some(b) = token.strip_suffix("⁻¹") {
                (b, true)
            } else if let Some(b) = token.strip_suffix("^-1") {
                (b, true)
            } else {
                (token, false)
            };
            if base.is_empty() {
                return Err(Error::MalformedWord(text.to_string()));
            }
            let gen = names
                .iter()
                .position(|n| n.as_ref() == base)
                .ok_or_else(|| Error::UnknownGenerator(base.to_string()))?;
            letters.push(Letter { gen, inverse });
        }
        if letters.is_empty() {
            return Err(Error::MalformedWord(text.to_string()));
        }
        Ok(Word::from_letters(mode, letters))
    }
}

impl fmt::Display for Word {
    /// Nameless rendering with g0, g1, …; prefer [`Word::to_string_with`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with::<&str>(&[]))
    }
}

fn alphabet(g: usize) -> Vec<Letter> {
    (0..g)
        .flat_map(|i| [Letter::plain(i), Letter::inv(i)])
        .collect()
}

/// Upper bound on the number of freely reduced words of length 1..=n over
/// g generators: Σ 2g(2g−1)^{k−1}, saturating.
fn free_word_count(g: usize, n: usize) -> u64 {
    let branch = (2 * g).saturating_sub(1) as u64;
    let mut total: u64 = 0;
    let mut level: u64 = 2 * g as u64;
    for _ in 0..n {
        total = total.saturating_add(level);
        level = level.saturating_mul(branch);
    }
    total
}

/// All distinct reduced words of length 1..=max_len (identity excluded), in
/// canonical order: by length, then lexicographically by letter.  In
/// commuting mode, each class of words differing by commuting swaps is
/// emitted once, in normal form.
pub fn enumerate_words(g: usize, mode: Reduction, max_len: usize) -> Result<Vec<Word>, Error> {
    enumerate_words_with_cap(g, mode, max_len, DEFAULT_WORD_CAP)
}

/// [`enumerate_words`] with an explicit word-count cap.  The guard uses the
/// free-reduction count (an upper bound in commuting mode, which can only
/// shrink the list).
pub fn enumerate_words_with_cap(
    g: usize,
    mode: Reduction,
    max_len: usize,
    cap: u64,
) -> Result<Vec<Word>, Error> {
    let would = free_word_count(g, max_len);
    if would > cap {
        return Err(Error::WordCapExceeded { would, cap });
    }

    let letters = alphabet(g);
    let mut out: Vec<Word> = Vec::new();
    // every normal word extends a normal word one letter shorter, so a
    // breadth-first sweep in alphabet order emits canonical order for free
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 1..=max_len {
        let mut next: Vec<Vec<Letter>> = Vec::new();
        for stem in &frontier {
            for &l in &letters {
                let mut cand = stem.clone();
                cand.push(l);
                if normalize(cand.clone(), mode) == cand {
                    next.push(cand);
                }
            }
        }
        out.extend(next.iter().map(|w| Word(w.clone())));
        frontier = next;
    }
    Ok(out)
}

/// `count` distinct random reduced words of length ≤ max_len, deterministic
/// in the seed.  If the quotient has too few words (or sampling keeps
/// colliding) the list is shorter than requested; attempts are capped at
/// 100·count + 1000.
pub fn random_words(
    g: usize,
    mode: Reduction,
    max_len: usize,
    count: usize,
    seed: u64,
) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = alphabet(g);
    let mut seen: HashSet<Word> = HashSet::new();
    let mut out: Vec<Word> = Vec::with_capacity(count);
    let max_attempts = 100 * count + 1000;
    let mut attempts = 0;
    while out.len() < count && attempts < max_attempts {
        attempts += 1;
        let len = rng.gen_range(1..=max_len.max(1));
        let mut raw: Vec<Letter> = Vec::with_capacity(len);
        for _ in 0..len {
            let l = match raw.last() {
                None => letters[rng.gen_range(0..letters.len())],
                Some(&prev) => {
                    // uniform over the 2g−1 letters that do not cancel
                    let k = rng.gen_range(0..letters.len() - 1);
                    let mut pick = letters[k];
                    if pick == prev.opposite() {
                        pick = letters[letters.len() - 1];
                    }
                    pick
                }
            };
            raw.push(l);
        }
        let w = Word::from_letters(mode, raw);
        if w.is_empty() {
            continue;
        }
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    out
}

/// τ of every word's matrix, in word-list order.
pub fn tau_profile(words: &[Word], gens: &[Mobius]) -> Result<Vec<f64>, Error> {
    words
        .par_iter()
        .map(|w| w.evaluate(gens).map(|m| m.translation_length()))
        .collect()
}

/// Drop words that are cyclic rotations of an earlier word.  τ only
/// depends on the conjugacy class, so for cyclically reduced word lists
/// this thins the batch without changing any minimum; it is not applied
/// anywhere by default.
pub fn trim_cyclic_rotations(words: &[Word], mode: Reduction) -> Vec<Word> {
    let mut kept: HashSet<Word> = HashSet::new();
    let mut out = Vec::new();
    'next: for w in words {
        let n = w.0.len();
        for r in 0..n {
            let mut rotated = w.0[r..].to_vec();
            rotated.extend_from_slice(&w.0[..r]);
            let rotated = Word::from_letters(mode, rotated);
            if kept.contains(&rotated) {
                continue 'next;
            }
        }
        kept.insert(w.clone());
        out.push(w.clone());
    }
    out
}

/// A word batch folded into a prefix tree: shared prefixes are multiplied
/// once per evaluation instead of once per word.  The per-node product is
/// the same left-to-right sequence [`Word::evaluate`] performs, so results
/// are bit-identical to evaluating each word separately.
#[derive(Debug, Clone)]
pub struct PrefixForest {
    /// (parent, letter); parents always precede children
    nodes: Vec<(Option<usize>, Letter)>,
    /// node holding each input word's final letter
    word_nodes: Vec<usize>,
    max_gen: usize,
}

impl PrefixForest {
    pub fn build(words: &[Word]) -> PrefixForest {
        let mut nodes: Vec<(Option<usize>, Letter)> = Vec::new();
        let mut children: HashMap<(Option<usize>, Letter), usize> = HashMap::new();
        let mut word_nodes = Vec::with_capacity(words.len());
        let mut max_gen = 0;
        for w in words {
            let mut at: Option<usize> = None;
            for &l in &w.0 {
                max_gen = max_gen.max(l.gen);
                let key = (at, l);
                let idx = *children.entry(key).or_insert_with(|| {
                    nodes.push(key);
                    nodes.len() - 1
                });
                at = Some(idx);
            }
            word_nodes.push(at.expect("words in a prefix forest must be nonempty"));
        }
        PrefixForest {
            nodes,
            word_nodes,
            max_gen,
        }
    }

    pub fn word_count(&self) -> usize {
        self.word_nodes.len()
    }

    /// Evaluate every word at one generator tuple.
    pub fn evaluate_all(&self, gens: &[Mobius]) -> Result<Vec<Mobius>, Error> {
        if self.max_gen >= gens.len() && !self.nodes.is_empty() {
            return Err(Error::GeneratorIndexOutOfRange {
                index: self.max_gen,
                count: gens.len(),
            });
        }
        let mut mats: Vec<Mobius> = Vec::with_capacity(self.nodes.len());
        for &(parent, l) in &self.nodes {
            let m = if l.inverse {
                gens[l.gen].inverse()
            } else {
                gens[l.gen]
            };
            mats.push(match parent {
                None => m,
                Some(p) => mats[p].checked_mul(&m)?,
            });
        }
        Ok(self.word_nodes.iter().map(|&n| mats[n]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{compression_body, grandma, riley, CompressionBodyParams, GrandmaParams};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const XY: [&str; 2] = ["X", "Y"];
    const PQM: [&str; 3] = ["P", "Q", "M"];

    #[test]
    fn enumeration_order_and_counts() {
        let words = enumerate_words(2, Reduction::Free, 1).unwrap();
        let strings: Vec<String> = words.iter().map(|w| w.to_string_with(&XY)).collect();
        assert_eq!(strings, ["X", "X⁻¹", "Y", "Y⁻¹"]);

        let words = enumerate_words(2, Reduction::Free, 2).unwrap();
        assert_eq!(words.len(), 16);
        // length-2 block starts right after the alphabet, in lex order
        assert_eq!(words[4].to_string_with(&XY), "X X");
        assert_eq!(words[5].to_string_with(&XY), "X Y");
        assert_eq!(words[6].to_string_with(&XY), "X Y⁻¹");

        let words = enumerate_words(2, Reduction::Free, 3).unwrap();
        assert_eq!(words.len(), 4 + 12 + 36);
    }

    #[test]
    fn enumeration_is_free_of_unreduced_words() {
        for w in enumerate_words(3, Reduction::Free, 4).unwrap() {
            let letters = w.letters();
            for pair in letters.windows(2) {
                assert_ne!(pair[0], pair[1].opposite(), "unreduced word {:?}", w);
            }
        }
    }

    #[test]
    fn word_cap_guard() {
        match enumerate_words(2, Reduction::Free, 20) {
            Err(Error::WordCapExceeded { would, cap }) => {
                assert!(would > cap);
                assert_eq!(cap, DEFAULT_WORD_CAP);
            }
            other => panic!("expected the cap to trip, got {:?}", other.map(|v| v.len())),
        }
    }

    #[test]
    fn commuting_pair_emits_one_word_per_class() {
        let mode = Reduction::CommutingPair(0, 1);
        let words = enumerate_words(3, mode, 2).unwrap();
        let strings: Vec<String> = words.iter().map(|w| w.to_string_with(&PQM)).collect();
        assert!(strings.contains(&"P Q".to_string()));
        assert!(!strings.contains(&"Q P".to_string()));
        // free count is 6 + 30; the four merged pairs PQ/QP, PQ⁻¹/Q⁻¹P,
        // P⁻¹Q/QP⁻¹, P⁻¹Q⁻¹/Q⁻¹P⁻¹ drop four words
        assert_eq!(words.len(), 32);

        // the identified words really are equal where P and Q commute
        let gens = compression_body(&CompressionBodyParams {
            alpha: c(0.7, 1.3),
            beta: c(-1.1, 0.4),
            lambda: c(0.3, -0.8),
        });
        let pq = Word::from_letters(mode, vec![Letter::plain(0), Letter::plain(1)]);
        let qp = Word::from_letters(mode, vec![Letter::plain(1), Letter::plain(0)]);
        assert_eq!(pq, qp);
        let m = pq.evaluate(&gens).unwrap();
        assert!((m.b - (c(0.7, 1.3) + c(-1.1, 0.4))).norm() < 1e-12);
    }

    #[test]
    fn commuting_normal_form_reaches_a_fixed_point() {
        // PQP⁻¹ collapses to Q once the commuting letters sort
        let mode = Reduction::CommutingPair(0, 1);
        let w = Word::from_letters(
            mode,
            vec![Letter::plain(0), Letter::plain(1), Letter::inv(0)],
        );
        assert_eq!(w.to_string_with(&PQM), "Q");

        // runs broken by the third generator do not interact
        let w = Word::from_letters(
            mode,
            vec![
                Letter::plain(1),
                Letter::plain(2),
                Letter::plain(1),
                Letter::plain(0),
            ],
        );
        assert_eq!(w.to_string_with(&PQM), "Q M P Q");
    }

    #[test]
    fn no_spurious_identifications_at_a_generic_point() {
        // every emitted word evaluates to a distinct matrix (up to sign) at
        // a generic parameter point: the quotient is neither too coarse nor
        // too fine
        let gens = compression_body(&CompressionBodyParams {
            alpha: c(0.73, 1.31),
            beta: c(-1.12, 0.41),
            lambda: c(0.29, -0.83),
        });
        let words = enumerate_words(3, Reduction::CommutingPair(0, 1), 4).unwrap();
        let mats: Vec<Mobius> = words.iter().map(|w| w.evaluate(&gens).unwrap()).collect();
        for i in 0..mats.len() {
            for j in (i + 1)..mats.len() {
                let (u, v) = (&mats[i], &mats[j]);
                let same = (u.a - v.a).norm() < 1e-10
                    && (u.b - v.b).norm() < 1e-10
                    && (u.c - v.c).norm() < 1e-10
                    && (u.d - v.d).norm() < 1e-10;
                let neg = (u.a + v.a).norm() < 1e-10
                    && (u.b + v.b).norm() < 1e-10
                    && (u.c + v.c).norm() < 1e-10
                    && (u.d + v.d).norm() < 1e-10;
                assert!(
                    !same && !neg,
                    "words {} and {} coincide",
                    words[i].to_string_with(&PQM),
                    words[j].to_string_with(&PQM)
                );
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let gens = riley(c(1.0, 0.0));
        let x = Word::parse("X", &XY, Reduction::Free).unwrap();
        let m = x.evaluate(&gens).unwrap();
        assert!((m.b - c(1.0, 0.0)).norm() < 1e-15 && (m.c).norm() < 1e-15);

        let w = Word::parse("X Y⁻¹", &XY, Reduction::Free).unwrap();
        let m = w.evaluate(&gens).unwrap();
        for (got, want) in [(m.a, 0.0), (m.b, 1.0), (m.c, -1.0), (m.d, 1.0)] {
            assert!((got - c(want, 0.0)).norm() < 1e-12);
        }

        // out-of-range generator index
        let w = Word::from_letters(Reduction::Free, vec![Letter::plain(5)]);
        assert!(matches!(
            w.evaluate(&gens),
            Err(Error::GeneratorIndexOutOfRange { index: 5, count: 2 })
        ));
    }

    #[test]
    fn eight_five_words_go_parabolic_at_the_solution_points() {
        let s7 = 7.0f64.sqrt();
        let exact = compression_body(&CompressionBodyParams {
            alpha: c(1.5, -s7 / 2.0),
            beta: c(3.5, -s7 / 2.0),
            lambda: c(0.75, -s7 / 4.0),
        });
        let numeric = compression_body(&CompressionBodyParams {
            alpha: c(1.7581, -2.7734),
            beta: c(6.4537, -4.8311),
            lambda: c(-0.4688, -0.3578),
        });
        let table = ["P⁻¹ M M", "M M M P⁻¹ P⁻¹ Q P⁻¹", "M P⁻¹ P⁻¹ Q"];
        for text in table {
            let w = Word::parse(text, &PQM, Reduction::Free).unwrap();
            let tr2 = |gens: &[Mobius; 3]| {
                let m = w.evaluate(gens).unwrap();
                m.trace() * m.trace()
            };
            assert!(
                (tr2(&exact) - c(4.0, 0.0)).norm() < 1e-10,
                "{} at the exact point: tr² = {}",
                text,
                tr2(&exact)
            );
            // the second point is printed to four decimals
            assert!((tr2(&numeric) - c(4.0, 0.0)).norm() < 0.05);
        }
    }

    #[test]
    fn random_word_determinism_and_distinctness() {
        let a = random_words(2, Reduction::Free, 10, 100, 99);
        let b = random_words(2, Reduction::Free, 10, 100, 99);
        assert_eq!(a, b);
        assert_eq!(a.len(), 100);
        let set: HashSet<&Word> = a.iter().collect();
        assert_eq!(set.len(), 100);
        for w in &a {
            assert!(!w.is_empty() && w.len() <= 10);
            assert_eq!(
                Word::from_letters(Reduction::Free, w.letters().to_vec()),
                *w
            );
        }

        assert!(random_words(2, Reduction::Free, 10, 0, 1).is_empty());

        // a tiny quotient simply yields fewer words than asked
        let few = random_words(1, Reduction::Free, 2, 50, 7);
        assert!(few.len() <= 4);
    }

    #[test]
    fn tau_profile_values() {
        let gens = riley(c(10.0, 0.0));
        let x = Word::parse("X", &XY, Reduction::Free).unwrap();
        assert_eq!(tau_profile(&[x], &gens).unwrap(), vec![0.0]);

        // an interior Schottky point is purely loxodromic: every word moves
        let gens = grandma(&GrandmaParams::new(c(-3.0, 0.0), c(-3.0, 0.0), c(-3.0, 0.0)));
        let words = enumerate_words(2, Reduction::Free, 4).unwrap();
        let taus = tau_profile(&words, &gens).unwrap();
        assert_eq!(taus.len(), words.len());
        assert!(taus.iter().all(|&t| t > 1e-6));

        // commutator of the two commuting parabolics dies
        let gens = compression_body(&CompressionBodyParams {
            alpha: c(-2.0, -2.0),
            beta: c(1.0, -1.0),
            lambda: c(1.0, 0.0),
        });
        let w = Word::parse("P Q P⁻¹ Q⁻¹", &PQM, Reduction::Free).unwrap();
        assert_eq!(tau_profile(&[w], &gens).unwrap(), vec![0.0]);
    }

    #[test]
    fn tau_profile_is_conjugation_invariant() {
        let gens = grandma(&GrandmaParams::new(c(-3.0, 0.5), c(-2.5, -0.3), c(-3.2, 0.1)));
        let words = enumerate_words(2, Reduction::Free, 3).unwrap();
        let base = tau_profile(&words, &gens).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let g = loop {
            let m = Mobius::new(
                c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            );
            if m.det().norm() > 0.1 {
                break m.normalize_det().unwrap();
            }
        };
        let conj: Vec<Mobius> = gens.iter().map(|m| g * *m * g.inverse()).collect();
        let moved = tau_profile(&words, &conj).unwrap();
        for (t0, t1) in base.iter().zip(moved.iter()) {
            assert!((t0 - t1).abs() < 1e-9);
        }
    }

    #[test]
    fn cyclic_trimming_keeps_one_representative() {
        let words = enumerate_words(2, Reduction::Free, 2).unwrap();
        let trimmed = trim_cyclic_rotations(&words, Reduction::Free);
        let strings: Vec<String> = trimmed.iter().map(|w| w.to_string_with(&XY)).collect();
        // X Y survives, Y X does not
        assert!(strings.contains(&"X Y".to_string()));
        assert!(!strings.contains(&"Y X".to_string()));
        assert!(trimmed.len() < words.len());
    }

    #[test]
    fn prefix_forest_matches_per_word_evaluation() {
        let gens = grandma(&GrandmaParams::new(c(-2.1, 0.7), c(-3.3, -0.2), c(-2.8, 1.1)));
        let words = enumerate_words(2, Reduction::Free, 5).unwrap();
        let forest = PrefixForest::build(&words);
        assert_eq!(forest.word_count(), words.len());
        let fast = forest.evaluate_all(&gens).unwrap();
        for (w, m_fast) in words.iter().zip(fast.iter()) {
            let m_slow = w.evaluate(&gens).unwrap();
            // bit-identical, not merely close: same product sequence
            assert_eq!(m_slow.a, m_fast.a);
            assert_eq!(m_slow.b, m_fast.b);
            assert_eq!(m_slow.c, m_fast.c);
            assert_eq!(m_slow.d, m_fast.d);
        }
    }

    #[test]
    fn parse_rejects_unknown_names() {
        assert!(matches!(
            Word::parse("X Z", &XY, Reduction::Free),
            Err(Error::UnknownGenerator(name)) if name == "Z"
        ));
        assert!(matches!(
            Word::parse("   ", &XY, Reduction::Free),
            Err(Error::MalformedWord(_))
        ));
        let w = Word::parse("X Y^-1 X", &XY, Reduction::Free).unwrap();
        assert_eq!(w.to_string_with(&XY), "X Y⁻¹ X");
    }
}

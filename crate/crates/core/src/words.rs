//! Constrained word classes and their brute-force enumeration.
//!
//! A word over the alphabet `1..=n` uses every letter either twice or three
//! times. All four classes share the prefix dominance rule: in every prefix,
//! for `i < j`, either letter `i` has not appeared yet or it occurs at least
//! as often as letter `j`.
//!
//! - `A_n`: every letter three times.
//! - `C_{n,k}`: letters `1..=k` three times, the rest twice.
//! - `B_{n,k}`: any `k` letters three times; a twice-used letter counts as
//!   if its first occurrence had already happened, so its two occurrences
//!   act as the second and third.
//! - `H_{n,k}`: the subset of `C_{n,k}` where every letter seen before a
//!   third occurrence has already been used twice.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::util::render_letters;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WordClass {
    A,
    B,
    C,
    H,
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WordClass::A => "A",
            WordClass::B => "B",
            WordClass::C => "C",
            WordClass::H => "H",
        };
        f.write_str(s)
    }
}

impl FromStr for WordClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(WordClass::A),
            "B" | "b" => Ok(WordClass::B),
            "C" | "c" => Ok(WordClass::C),
            "H" | "h" => Ok(WordClass::H),
            other => Err(Error::InvalidInput(format!("unknown word class {other:?}"))),
        }
    }
}

/// How the `H` restriction reads "all letters appear exactly twice".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum HReading {
    /// Every letter that has appeared so far has been used at least twice.
    #[default]
    SeenSoFar,
    /// All `n` letters have been used at least twice.
    AllLetters,
}

/// A word class together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordClassSpec {
    pub class: WordClass,
    pub n: usize,
    pub k: usize,
}

impl WordClassSpec {
    /// Validates the parameters. For class `A` the `k` argument is ignored
    /// and set to `n`.
    pub fn new(class: WordClass, n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("alphabet size n must be positive".into()));
        }
        if n > u16::MAX as usize {
            return Err(Error::InvalidInput(format!("alphabet size {n} too large")));
        }
        let k = if class == WordClass::A { n } else { k };
        if k > n {
            return Err(Error::InvalidInput(format!(
                "class {class} needs 0 <= k <= n, got n={n}, k={k}"
            )));
        }
        Ok(WordClassSpec { class, n, k })
    }

    pub fn a(n: usize) -> Result<Self> {
        Self::new(WordClass::A, n, n)
    }

    pub fn b(n: usize, k: usize) -> Result<Self> {
        Self::new(WordClass::B, n, k)
    }

    pub fn c(n: usize, k: usize) -> Result<Self> {
        Self::new(WordClass::C, n, k)
    }

    pub fn h(n: usize, k: usize) -> Result<Self> {
        Self::new(WordClass::H, n, k)
    }

    /// Word length: `2n + k`.
    pub fn length(&self) -> usize {
        2 * self.n + self.k
    }

    /// Whether the multiplicity pattern (not the order) is fixed by the class.
    fn fixed_multiplicity(&self, letter: u16) -> Option<u8> {
        match self.class {
            WordClass::A => Some(3),
            WordClass::C | WordClass::H => Some(if (letter as usize) <= self.k { 3 } else { 2 }),
            WordClass::B => None,
        }
    }
}

/// A word over `1..=n` where each letter occurs two or three times.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u16>,
    multiplicity: Vec<u8>,
}

impl Word {
    /// Builds a word over the alphabet `1..=n`. Every letter must occur
    /// exactly two or three times.
    pub fn new(letters: Vec<u16>, n: usize) -> Result<Self> {
        let mut multiplicity = vec![0u8; n];
        for &l in &letters {
            if l == 0 || l as usize > n {
                return Err(Error::InvalidInput(format!("letter {l} outside 1..={n}")));
            }
            let slot = &mut multiplicity[l as usize - 1];
            *slot = slot.saturating_add(1);
        }
        if let Some((i, &m)) = multiplicity
            .iter()
            .enumerate()
            .find(|(_, &m)| m != 2 && m != 3)
        {
            return Err(Error::InvalidInput(format!(
                "letter {} occurs {m} times; expected 2 or 3",
                i + 1
            )));
        }
        Ok(Word { letters, multiplicity })
    }

    /// Parses `aabba` or `1,1,2,2,1` notation.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let letters = crate::util::parse_letters(s)
            .ok_or_else(|| Error::InvalidInput(format!("cannot parse word {s:?}")))?;
        Word::new(letters, n)
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    /// Alphabet size.
    pub fn n(&self) -> usize {
        self.multiplicity.len()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Multiplicity (2 or 3) of a 1-based letter.
    pub fn multiplicity(&self, letter: u16) -> u8 {
        self.multiplicity[letter as usize - 1]
    }

    pub fn multiplicities(&self) -> &[u8] {
        &self.multiplicity
    }

    /// Letters occurring three times, ascending.
    pub fn thrice_letters(&self) -> Vec<u16> {
        (1..=self.n() as u16)
            .filter(|&l| self.multiplicity(l) == 3)
            .collect()
    }

    /// Renders as `aabba` for alphabets up to 26 letters, else `1,1,2,2,1`.
    pub fn render(&self) -> String {
        render_letters(&self.letters, self.n())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Checks that the word's multiplicities fit the class.
fn check_multiplicities(word: &Word, spec: &WordClassSpec) -> Result<()> {
    if word.n() != spec.n {
        return Err(Error::InvalidInput(format!(
            "word has alphabet size {}, class expects {}",
            word.n(),
            spec.n
        )));
    }
    match spec.class {
        WordClass::B => {
            let thrice = word.thrice_letters().len();
            if thrice != spec.k {
                return Err(Error::InvalidInput(format!(
                    "class B with k={} needs {} thrice letters, word has {thrice}",
                    spec.k, spec.k
                )));
            }
        }
        _ => {
            for l in 1..=spec.n as u16 {
                let want = spec.fixed_multiplicity(l).unwrap_or(0);
                if word.multiplicity(l) != want {
                    return Err(Error::InvalidInput(format!(
                        "letter {l} occurs {} times; class {} expects {want}",
                        word.multiplicity(l),
                        spec.class
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Incremental prefix checker shared by validation and enumeration.
#[derive(Clone, Debug)]
struct PrefixState {
    /// Effective occurrence counts; twice letters of class B start at 1.
    effective: Vec<u8>,
    actual: Vec<u8>,
    h_rule: Option<HReading>,
}

impl PrefixState {
    fn new(multiplicity: &[u8], class: WordClass, reading: HReading) -> Self {
        let effective = multiplicity
            .iter()
            .map(|&m| u8::from(class == WordClass::B && m == 2))
            .collect();
        PrefixState {
            effective,
            actual: vec![0; multiplicity.len()],
            h_rule: (class == WordClass::H).then_some(reading),
        }
    }

    /// Appends a 0-based letter if the extended prefix stays valid.
    fn try_push(&mut self, c: usize) -> bool {
        if let Some(reading) = self.h_rule {
            if self.actual[c] == 2 {
                let ok = match reading {
                    HReading::SeenSoFar => self.actual.iter().all(|&a| a == 0 || a >= 2),
                    HReading::AllLetters => self.actual.iter().all(|&a| a >= 2),
                };
                if !ok {
                    return false;
                }
            }
        }
        let new = self.effective[c] + 1;
        if self.effective[..c].iter().any(|&e| e > 0 && e < new) {
            return false;
        }
        if new == 1 && self.effective[c + 1..].iter().any(|&e| e > 1) {
            return false;
        }
        self.effective[c] = new;
        self.actual[c] += 1;
        true
    }

    fn pop(&mut self, c: usize) {
        self.effective[c] -= 1;
        self.actual[c] -= 1;
    }
}

/// Whether `word` belongs to the class described by `spec` (using the
/// default [`HReading`]).
///
/// Returns an error if the multiplicities do not fit the class at all.
pub fn is_valid(word: &Word, spec: &WordClassSpec) -> Result<bool> {
    is_valid_with(word, spec, HReading::default())
}

pub fn is_valid_with(word: &Word, spec: &WordClassSpec, reading: HReading) -> Result<bool> {
    check_multiplicities(word, spec)?;
    let mut state = PrefixState::new(word.multiplicities(), spec.class, reading);
    Ok(word
        .letters()
        .iter()
        .all(|&l| state.try_push(l as usize - 1)))
}

/// Limits for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    /// Largest word length `2n + k` that will be enumerated.
    pub max_length: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_length: 24 }
    }
}

impl EnumerationBudget {
    fn check(&self, spec: &WordClassSpec) -> Result<()> {
        if spec.length() > self.max_length {
            return Err(Error::Budget {
                what: "word length",
                requested: spec.length(),
                limit: self.max_length,
            });
        }
        Ok(())
    }
}

/// Multiplicity patterns the class ranges over (one for A/C/H, all
/// `k`-subsets for B).
fn multiplicity_patterns(spec: &WordClassSpec) -> Vec<Vec<u8>> {
    match spec.class {
        WordClass::B => {
            let mut out = Vec::new();
            let mut current = vec![2u8; spec.n];
            fn rec(start: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
                if left == 0 {
                    out.push(cur.clone());
                    return;
                }
                for i in start..=cur.len() - left {
                    cur[i] = 3;
                    rec(i + 1, left - 1, cur, out);
                    cur[i] = 2;
                }
            }
            rec(0, spec.k, &mut current, &mut out);
            out
        }
        _ => vec![(1..=spec.n as u16)
            .map(|l| spec.fixed_multiplicity(l).unwrap())
            .collect()],
    }
}

/// Depth-first search over one multiplicity pattern with a fixed first
/// letter. `visit` receives each complete valid word.
fn search<F: FnMut(&[u16])>(
    multiplicity: &[u8],
    class: WordClass,
    reading: HReading,
    first: usize,
    visit: &mut F,
) {
    let len: usize = multiplicity.iter().map(|&m| m as usize).sum();
    let mut state = PrefixState::new(multiplicity, class, reading);
    let mut remaining = multiplicity.to_vec();
    let mut word: Vec<u16> = Vec::with_capacity(len);

    fn rec<F: FnMut(&[u16])>(
        state: &mut PrefixState,
        remaining: &mut [u8],
        word: &mut Vec<u16>,
        len: usize,
        visit: &mut F,
    ) {
        if word.len() == len {
            visit(word);
            return;
        }
        for c in 0..remaining.len() {
            if remaining[c] == 0 || !state.try_push(c) {
                continue;
            }
            remaining[c] -= 1;
            word.push(c as u16 + 1);
            rec(state, remaining, word, len, visit);
            word.pop();
            remaining[c] += 1;
            state.pop(c);
        }
    }

    if remaining[first] == 0 || !state.try_push(first) {
        return;
    }
    remaining[first] -= 1;
    word.push(first as u16 + 1);
    rec(&mut state, &mut remaining, &mut word, len, visit);
}

/// All words of the class in lexicographic order.
pub fn enumerate(spec: &WordClassSpec) -> Result<Vec<Word>> {
    enumerate_with(spec, EnumerationBudget::default(), HReading::default())
}

pub fn enumerate_with(
    spec: &WordClassSpec,
    budget: EnumerationBudget,
    reading: HReading,
) -> Result<Vec<Word>> {
    budget.check(spec)?;
    let mut words = Vec::new();
    for pattern in multiplicity_patterns(spec) {
        let branches = par::map_range(0, spec.n, |first| {
            let mut found = Vec::new();
            search(&pattern, spec.class, reading, first, &mut |w| {
                found.push(Word {
                    letters: w.to_vec(),
                    multiplicity: pattern.clone(),
                })
            });
            found
        });
        words.extend(branches.into_iter().flatten());
    }
    if spec.class == WordClass::B {
        words.sort_by(|a, b| a.letters.cmp(&b.letters));
    }
    Ok(words)
}

/// Size of the class, without materialising the words.
pub fn count(spec: &WordClassSpec) -> Result<u64> {
    count_with(spec, EnumerationBudget::default(), HReading::default())
}

pub fn count_with(
    spec: &WordClassSpec,
    budget: EnumerationBudget,
    reading: HReading,
) -> Result<u64> {
    budget.check(spec)?;
    let mut total = 0u64;
    for pattern in multiplicity_patterns(spec) {
        let branches = par::map_range(0, spec.n, |first| {
            let mut found = 0u64;
            search(&pattern, spec.class, reading, first, &mut |_| found += 1);
            found
        });
        total += branches.into_iter().sum::<u64>();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(s: &str, n: usize) -> Word {
        Word::parse(s, n).unwrap()
    }

    fn rendered(words: &[Word]) -> Vec<String> {
        words.iter().map(Word::render).collect()
    }

    /// All distinct arrangements of a multiset, lexicographic.
    fn arrangements(mult: &[u8]) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        let mut rem = mult.to_vec();
        let len: usize = mult.iter().map(|&m| m as usize).sum();
        fn rec(rem: &mut [u8], cur: &mut Vec<u16>, len: usize, out: &mut Vec<Vec<u16>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for c in 0..rem.len() {
                if rem[c] > 0 {
                    rem[c] -= 1;
                    cur.push(c as u16 + 1);
                    rec(rem, cur, len, out);
                    cur.pop();
                    rem[c] += 1;
                }
            }
        }
        rec(&mut rem, &mut Vec::new(), len, &mut out);
        out
    }

    #[test]
    fn validity_examples() {
        let a2 = WordClassSpec::a(2).unwrap();
        assert!(is_valid(&w("aababb", 2), &a2).unwrap());
        assert!(!is_valid(&w("bbaaab", 2), &a2).unwrap());
        assert!(is_valid(&w("aabbb", 2), &WordClassSpec::b(2, 1).unwrap()).unwrap());
        assert!(is_valid(&w("baaba", 2), &WordClassSpec::c(2, 1).unwrap()).unwrap());
    }

    #[test]
    fn multiplicity_mismatch_is_an_error() {
        let c21 = WordClassSpec::c(2, 1).unwrap();
        // b thrice, a twice: fine for B but not for C.
        assert!(matches!(is_valid(&w("aabbb", 2), &c21), Err(Error::InvalidInput(_))));
        assert!(matches!(
            is_valid(&w("aabb", 2), &WordClassSpec::a(2).unwrap()),
            Err(Error::InvalidInput(_))
        ));
        assert!(Word::parse("aab", 2).is_err());
        assert!(Word::parse("aacc", 2).is_err());
    }

    #[test]
    fn shifted_count_rejects_late_first_occurrence() {
        // With b thrice and a twice, a's occurrences count as its second and
        // third, so b may not reach two occurrences before a shows up.
        let b21 = WordClassSpec::b(2, 1).unwrap();
        assert!(!is_valid(&w("bbaab", 2), &b21).unwrap());
        assert!(is_valid(&w("babab", 2), &b21).unwrap());
    }

    #[test]
    fn small_listings() {
        let a2 = enumerate(&WordClassSpec::a(2).unwrap()).unwrap();
        let want: BTreeSet<&str> =
            ["aaabbb", "aababb", "abaabb", "baaabb", "aabbab", "ababab", "baabab"].into();
        assert_eq!(rendered(&a2).iter().map(String::as_str).collect::<BTreeSet<_>>(), want);

        let c21 = enumerate(&WordClassSpec::c(2, 1).unwrap()).unwrap();
        let want: BTreeSet<&str> =
            ["aabba", "ababa", "baaba", "aaabb", "aabab", "abaab", "baaab"].into();
        assert_eq!(rendered(&c21).iter().map(String::as_str).collect::<BTreeSet<_>>(), want);

        let b21 = enumerate(&WordClassSpec::b(2, 1).unwrap()).unwrap();
        let want: BTreeSet<&str> =
            ["aabbb", "aabab", "aaabb", "babab", "baabb", "abbab", "ababb"].into();
        assert_eq!(rendered(&b21).iter().map(String::as_str).collect::<BTreeSet<_>>(), want);

        assert_eq!(rendered(&enumerate(&WordClassSpec::a(1).unwrap()).unwrap()), vec!["aaa"]);
    }

    #[test]
    fn output_is_lexicographic() {
        for spec in [
            WordClassSpec::a(3).unwrap(),
            WordClassSpec::b(3, 1).unwrap(),
            WordClassSpec::c(3, 2).unwrap(),
        ] {
            let words = enumerate(&spec).unwrap();
            assert!(words.windows(2).all(|p| p[0].letters() < p[1].letters()));
        }
    }

    #[test]
    fn a_sequence() {
        let counts: Vec<u64> = (1..=4)
            .map(|n| count(&WordClassSpec::a(n).unwrap()).unwrap())
            .collect();
        assert_eq!(counts, vec![1, 7, 106, 2575]);
        assert_eq!(enumerate(&WordClassSpec::a(3).unwrap()).unwrap().len(), 106);
    }

    #[test]
    fn diagonal_classes_agree() {
        for n in 1..=4 {
            let a = count(&WordClassSpec::a(n).unwrap()).unwrap();
            assert_eq!(a, count(&WordClassSpec::b(n, n).unwrap()).unwrap());
            assert_eq!(a, count(&WordClassSpec::c(n, n).unwrap()).unwrap());
        }
    }

    #[test]
    fn c_recurrence() {
        let c = |n: usize, k: usize| -> u64 {
            if k > n || n == 0 {
                return u64::from(n == 0 && k == 0);
            }
            count(&WordClassSpec::c(n, k).unwrap()).unwrap()
        };
        for n in 1..=4 {
            for k in 1..=n {
                assert_eq!(c(n, k), c(n, k - 1) + (2 * n + k - 1) as u64 * c(n - 1, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn h_is_subset_of_c() {
        for reading in [HReading::SeenSoFar, HReading::AllLetters] {
            for n in 1..=3 {
                for k in 0..=n {
                    let c: BTreeSet<Word> =
                        enumerate(&WordClassSpec::c(n, k).unwrap()).unwrap().into_iter().collect();
                    let h = enumerate_with(
                        &WordClassSpec::h(n, k).unwrap(),
                        EnumerationBudget::default(),
                        reading,
                    )
                    .unwrap();
                    assert!(h.iter().all(|x| c.contains(x)));
                    if k == 0 {
                        assert_eq!(h.len(), c.len());
                    }
                }
            }
        }
        let seen = enumerate(&WordClassSpec::h(2, 1).unwrap()).unwrap();
        assert_eq!(rendered(&seen), vec!["aaabb", "aabba", "ababa", "baaba"]);
        let all = enumerate_with(
            &WordClassSpec::h(2, 1).unwrap(),
            EnumerationBudget::default(),
            HReading::AllLetters,
        )
        .unwrap();
        assert_eq!(rendered(&all), vec!["aabba", "ababa", "baaba"]);
    }

    #[test]
    fn pruned_search_matches_filtering() {
        let specs = [
            WordClassSpec::a(3).unwrap(),
            WordClassSpec::c(3, 1).unwrap(),
            WordClassSpec::c(3, 2).unwrap(),
            WordClassSpec::h(3, 2).unwrap(),
            WordClassSpec::b(3, 1).unwrap(),
            WordClassSpec::b(3, 2).unwrap(),
        ];
        for spec in specs {
            let mut filtered = Vec::new();
            for pattern in multiplicity_patterns(&spec) {
                for letters in arrangements(&pattern) {
                    let word = Word::new(letters, spec.n).unwrap();
                    if is_valid(&word, &spec).unwrap() {
                        filtered.push(word);
                    }
                }
            }
            filtered.sort();
            let mut searched = enumerate(&spec).unwrap();
            searched.sort();
            assert_eq!(filtered, searched, "{spec:?}");
        }
    }

    #[test]
    fn budget_refuses_long_words() {
        let spec = WordClassSpec::a(9).unwrap();
        assert!(matches!(enumerate(&spec), Err(Error::Budget { .. })));
        let tight = EnumerationBudget { max_length: 5 };
        assert!(count_with(&WordClassSpec::a(2).unwrap(), tight, HReading::default()).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(WordClassSpec::c(2, 3).is_err());
        assert!(WordClassSpec::new(WordClass::A, 0, 0).is_err());
        assert_eq!(WordClassSpec::new(WordClass::A, 3, 0).unwrap().k, 3);
        assert_eq!("H".parse::<WordClass>().unwrap(), WordClass::H);
        assert!("Q".parse::<WordClass>().is_err());
    }
}

//! The affine Weyl group of type B2 as affine isometries of the plane.
//!
//! Generators `s1, s2, s0` satisfy `(s1 s2)^4 = (s2 s0)^4 = (s1 s0)^2 = 1`.
//! They act as reflections in the three sides of the fundamental alcove, the
//! triangle with vertices `(0,0)`, `(2,0)`, `(1,1)`:
//!
//! * `s1`: reflection in `y = x`, the side through `(0,0)` and `(1,1)`;
//! * `s2`: reflection in `y = 0`, the side through `(0,0)` and `(2,0)`;
//! * `s0`: reflection in `x + y = 2`, the side through `(2,0)` and `(1,1)`.
//!
//! An element is a signed-permutation matrix plus an integer translation, so
//! all group arithmetic is exact. Descents are decided by which side of a
//! wall the image of an interior alcove point lands on; with the alcove
//! sample point taken at three times the centroid, every test is an integer
//! sign check.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeSet, HashSet};
use std::fmt;

/// A simple reflection, ordered `s0 < s1 < s2` by generator index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    S0,
    S1,
    S2,
}

pub const GENS: [Generator; 3] = [Generator::S0, Generator::S1, Generator::S2];

impl Generator {
    pub fn index(self) -> u8 {
        match self {
            Generator::S0 => 0,
            Generator::S1 => 1,
            Generator::S2 => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            0 => Some(Generator::S0),
            1 => Some(Generator::S1),
            2 => Some(Generator::S2),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        (b'0' + self.index()) as char
    }

    /// The image under the diagram automorphism swapping `s0` and `s1`.
    pub fn swapped(self) -> Self {
        match self {
            Generator::S0 => Generator::S1,
            Generator::S1 => Generator::S0,
            Generator::S2 => Generator::S2,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.index())
    }
}

/// Which side of an element a generator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum WordError {
    #[error("invalid word character {0:?}, expected digits 0, 1, 2")]
    BadChar(char),
}

/// A word in the generators. Not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    /// Parses a digit string like `"1212"`. Dots are accepted as separators,
    /// so `"1.2.1.2"` parses to the same word.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for ch in text.chars() {
            if ch == '.' {
                continue;
            }
            let g = ch
                .to_digit(10)
                .and_then(|d| u8::try_from(d).ok())
                .and_then(Generator::from_index)
                .ok_or(WordError::BadChar(ch))?;
            letters.push(g);
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    /// Concatenation.
    pub fn then(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Letterwise image under the diagram automorphism `s0 <-> s1`.
    pub fn swapped(&self) -> Word {
        Word(self.0.iter().map(|g| g.swapped()).collect())
    }

    /// Digit string with an optional separator between letters.
    pub fn to_string_sep(&self, sep: Option<char>) -> String {
        let mut out = String::new();
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                if let Some(c) = sep {
                    out.push(c);
                }
            }
            out.push(g.to_char());
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_sep(None))
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<T: IntoIterator<Item = Generator>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A group element: the affine map `p -> lin * p + tr`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    lin: [[i32; 2]; 2],
    tr: [i32; 2],
}

// Alcove sample point: three times the centroid of the fundamental alcove,
// so that it has integer coordinates and lies on no reflection line.
const SAMPLE: [i32; 2] = [3, 1];

impl Element {
    pub const fn identity() -> Self {
        Element {
            lin: [[1, 0], [0, 1]],
            tr: [0, 0],
        }
    }

    pub fn reflection(g: Generator) -> Self {
        match g {
            Generator::S1 => Element {
                lin: [[0, 1], [1, 0]],
                tr: [0, 0],
            },
            Generator::S2 => Element {
                lin: [[1, 0], [0, -1]],
                tr: [0, 0],
            },
            Generator::S0 => Element {
                lin: [[0, -1], [-1, 0]],
                tr: [2, 2],
            },
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Element) -> Element {
        let a = &self.lin;
        let b = &other.lin;
        let mut lin = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                lin[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        let tr = [
            a[0][0] * other.tr[0] + a[0][1] * other.tr[1] + self.tr[0],
            a[1][0] * other.tr[0] + a[1][1] * other.tr[1] + self.tr[1],
        ];
        Element { lin, tr }
    }

    /// Image of a point of the plane.
    pub fn apply(&self, p: [i32; 2]) -> [i32; 2] {
        [
            self.lin[0][0] * p[0] + self.lin[0][1] * p[1] + self.tr[0],
            self.lin[1][0] * p[0] + self.lin[1][1] * p[1] + self.tr[1],
        ]
    }

    // Image of the sample point in tripled coordinates: lin * q + 3 * tr.
    fn sample_image(&self) -> [i32; 2] {
        [
            self.lin[0][0] * SAMPLE[0] + self.lin[0][1] * SAMPLE[1] + 3 * self.tr[0],
            self.lin[1][0] * SAMPLE[0] + self.lin[1][1] * SAMPLE[1] + 3 * self.tr[1],
        ]
    }

    /// Multiplication by a generator on the given side.
    pub fn apply_gen(&self, g: Generator, side: Side) -> Element {
        let r = Element::reflection(g);
        match side {
            Side::Left => r.compose(self),
            Side::Right => self.compose(&r),
        }
    }

    pub fn inverse(&self) -> Element {
        // The linear part is a signed permutation, so its inverse is its
        // transpose.
        let a = &self.lin;
        let lin = [[a[0][0], a[1][0]], [a[0][1], a[1][1]]];
        let tr = [
            -(lin[0][0] * self.tr[0] + lin[0][1] * self.tr[1]),
            -(lin[1][0] * self.tr[0] + lin[1][1] * self.tr[1]),
        ];
        Element { lin, tr }
    }

    /// The diagram automorphism swapping `s0` and `s1`: conjugation by the
    /// mirror `x -> 2 - x` of the alcove picture.
    pub fn phi(&self) -> Element {
        const G: Element = Element {
            lin: [[-1, 0], [0, 1]],
            tr: [2, 0],
        };
        G.compose(self).compose(&G)
    }

    pub fn is_descent(&self, g: Generator, side: Side) -> bool {
        match side {
            Side::Left => {
                let q = self.sample_image();
                match g {
                    Generator::S1 => q[0] - q[1] < 0,
                    Generator::S2 => q[1] < 0,
                    Generator::S0 => q[0] + q[1] > 6,
                }
            }
            Side::Right => self.inverse().is_descent(g, Side::Left),
        }
    }

    pub fn descents(&self, side: Side) -> BTreeSet<Generator> {
        GENS.iter()
            .copied()
            .filter(|&g| self.is_descent(g, side))
            .collect()
    }

    pub fn smallest_left_descent(&self) -> Option<Generator> {
        GENS.iter()
            .copied()
            .find(|&g| self.is_descent(g, Side::Left))
    }

    pub fn length(&self) -> u32 {
        let mut w = *self;
        let mut n = 0;
        while let Some(g) = w.smallest_left_descent() {
            w = w.apply_gen(g, Side::Left);
            n += 1;
        }
        debug_assert!(w.is_identity());
        n
    }

    /// The lexicographically least reduced word: repeatedly strip the left
    /// descent of smallest generator index.
    pub fn canonical_word(&self) -> Word {
        let mut w = *self;
        let mut letters = Vec::new();
        while let Some(g) = w.smallest_left_descent() {
            letters.push(g);
            w = w.apply_gen(g, Side::Left);
        }
        Word(letters)
    }

    /// Vertices of this element's alcove, images of `(0,0)`, `(2,0)`, `(1,1)`.
    pub fn alcove_vertices(&self) -> [[i32; 2]; 3] {
        [
            self.apply([0, 0]),
            self.apply([2, 0]),
            self.apply([1, 1]),
        ]
    }

    /// Sort key used wherever output must be deterministic and readable.
    pub fn sort_key(&self) -> (u32, Word) {
        (self.length(), self.canonical_word())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.canonical_word())
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Element", 1)?;
        s.serialize_field("word", &self.canonical_word().to_string())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            word: String,
        }
        let repr = Repr::deserialize(deserializer)?;
        let word = Word::parse(&repr.word).map_err(D::Error::custom)?;
        Ok(from_word(&word))
    }
}

/// Product of the letters of a word, left to right.
pub fn from_word(word: &Word) -> Element {
    let mut w = Element::identity();
    for &g in word.letters() {
        w = w.apply_gen(g, Side::Right);
    }
    w
}

/// Bruhat order via the lifting property: for `s` a left descent of `w`,
/// `x <= w` iff `sx <= sw` when `sx < x`, and iff `x <= sw` otherwise.
pub fn bruhat_leq(x: &Element, w: &Element) -> bool {
    let mut x = *x;
    let mut w = *w;
    loop {
        if x == w {
            return true;
        }
        let Some(s) = w.smallest_left_descent() else {
            // w is the identity and x differs from it.
            return false;
        };
        if x.is_descent(s, Side::Left) {
            x = x.apply_gen(s, Side::Left);
        }
        w = w.apply_gen(s, Side::Left);
    }
}

/// All `x <= w`, grouped by length. Level `k + 1` is generated from level `k`
/// by ascending right multiplications, then filtered through `bruhat_leq`;
/// every element of the interval arises this way because `x s < x <= w`
/// forces `x s <= w`.
pub fn lower_interval_levels(w: &Element) -> Vec<Vec<Element>> {
    let len = w.length() as usize;
    let mut levels: Vec<Vec<Element>> = vec![vec![Element::identity()]];
    for k in 0..len {
        let mut next = BTreeSet::new();
        for y in &levels[k] {
            for &s in &GENS {
                if !y.is_descent(s, Side::Right) {
                    let z = y.apply_gen(s, Side::Right);
                    if bruhat_leq(&z, w) {
                        next.insert(z);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next.into_iter().collect());
    }
    levels
}

/// All `x <= w` in one flat list.
pub fn lower_interval(w: &Element) -> Vec<Element> {
    lower_interval_levels(w).into_iter().flatten().collect()
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("the identity has no coatoms")]
pub struct IdentityHasNoCoatoms;

/// The coatoms of `w`: elements covered by `w` in Bruhat order. By the
/// subword property these are exactly the length `l(w) - 1` products of the
/// canonical word with one letter deleted.
pub fn coatoms(w: &Element) -> Result<BTreeSet<Element>, IdentityHasNoCoatoms> {
    if w.is_identity() {
        return Err(IdentityHasNoCoatoms);
    }
    let word = w.canonical_word();
    let target = word.len() as u32 - 1;
    let mut out = BTreeSet::new();
    for skip in 0..word.len() {
        let sub: Word = word
            .letters()
            .iter()
            .enumerate()
            .filter_map(|(i, &g)| (i != skip).then_some(g))
            .collect();
        let x = from_word(&sub);
        if x.length() == target {
            out.insert(x);
        }
    }
    Ok(out)
}

/// The ball of the given radius, grouped by length: `ball(r)[l]` lists all
/// elements of length `l`.
pub fn ball(radius: u32) -> Vec<Vec<Element>> {
    let mut seen: HashSet<Element> = HashSet::new();
    seen.insert(Element::identity());
    let mut levels = vec![vec![Element::identity()]];
    for _ in 0..radius {
        let mut next = BTreeSet::new();
        for w in levels.last().unwrap() {
            for &s in &GENS {
                if !w.is_descent(s, Side::Right) {
                    let z = w.apply_gen(s, Side::Right);
                    if !seen.contains(&z) {
                        next.insert(z);
                    }
                }
            }
        }
        seen.extend(next.iter().copied());
        levels.push(next.into_iter().collect());
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(text: &str) -> Element {
        from_word(&Word::parse(text).unwrap())
    }

    #[test]
    fn defining_relations() {
        for &g in &GENS {
            let s = Element::reflection(g);
            assert_eq!(s.compose(&s), Element::identity());
        }
        assert!(el("12121212").is_identity());
        assert!(el("20202020").is_identity());
        assert!(el("1010").is_identity());
        assert!(!el("121212").is_identity());
        assert!(!el("1212").is_identity());
    }

    #[test]
    fn word_parsing() {
        assert_eq!(Word::parse("1.2.1.2").unwrap(), Word::parse("1212").unwrap());
        assert_eq!(Word::parse("").unwrap().len(), 0);
        assert_eq!(
            Word::parse("13").unwrap_err(),
            WordError::BadChar('3')
        );
        assert_eq!(Word::parse("102").unwrap().to_string_sep(Some('.')), "1.0.2");
    }

    #[test]
    fn identity_has_no_descents() {
        let e = Element::identity();
        assert!(e.descents(Side::Left).is_empty());
        assert!(e.descents(Side::Right).is_empty());
        assert_eq!(e.length(), 0);
        assert!(e.canonical_word().is_empty());
    }

    #[test]
    fn braid_relation_identifies_words() {
        // (s1 s2)^4 = 1 gives s1s2s1s2 = s2s1s2s1.
        assert_eq!(el("1212"), el("2121"));
        // s1 and s0 commute.
        assert_eq!(el("10"), el("01"));
        assert_ne!(el("12"), el("21"));
    }

    #[test]
    fn lengths_and_canonical_words() {
        assert_eq!(el("121").length(), 3);
        assert_eq!(el("122").length(), 1);
        assert_eq!(el("1221").length(), 0);
        assert_eq!(el("21").canonical_word().to_string(), "21");
        // The canonical word prefers the smallest available first letter:
        // s1s0 = s0s1 and 0 < 1.
        assert_eq!(el("10").canonical_word().to_string(), "01");
        assert_eq!(el("1212").canonical_word().to_string(), "1212");
    }

    #[test]
    fn canonical_word_round_trips_and_is_reduced() {
        for level in ball(8) {
            for w in level {
                let word = w.canonical_word();
                assert_eq!(word.len() as u32, w.length());
                assert_eq!(from_word(&word), w);
            }
        }
    }

    #[test]
    fn canonical_word_is_lex_least_among_reduced_words() {
        // Exhaustive check at small length: enumerate all reduced words.
        fn reduced_words(w: &Element) -> Vec<Vec<Generator>> {
            if w.is_identity() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for &s in &GENS {
                if w.is_descent(s, Side::Left) {
                    for mut tail in reduced_words(&w.apply_gen(s, Side::Left)) {
                        let mut word = vec![s];
                        word.append(&mut tail);
                        out.push(word);
                    }
                }
            }
            out
        }
        for level in ball(6) {
            for w in level {
                let all = reduced_words(&w);
                let least = all.iter().min().unwrap();
                assert_eq!(w.canonical_word().letters(), &least[..]);
            }
        }
    }

    #[test]
    fn element_counts_by_length() {
        let counts: Vec<usize> = ball(5).iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 3, 5, 8, 11, 13]);
    }

    #[test]
    fn descent_coherence() {
        for level in ball(10) {
            for w in level {
                let l = w.length();
                for &s in &GENS {
                    let right = w.apply_gen(s, Side::Right).length();
                    assert_eq!(w.is_descent(s, Side::Right), right + 1 == l);
                    let left = w.apply_gen(s, Side::Left).length();
                    assert_eq!(w.is_descent(s, Side::Left), left + 1 == l);
                }
            }
        }
    }

    #[test]
    fn inverse_and_phi() {
        assert_eq!(el("12").inverse(), el("21"));
        for level in ball(7) {
            for w in level {
                assert_eq!(w.compose(&w.inverse()), Element::identity());
                assert_eq!(w.inverse().inverse(), w);
                assert_eq!(w.phi().phi(), w);
                assert_eq!(w.phi().length(), w.length());
                // phi acts on words by swapping 0 and 1.
                assert_eq!(
                    w.phi().canonical_word(),
                    from_word(&w.canonical_word().swapped()).canonical_word()
                );
            }
        }
        assert_eq!(Element::reflection(Generator::S0).phi(), Element::reflection(Generator::S1));
        assert_eq!(Element::reflection(Generator::S2).phi(), Element::reflection(Generator::S2));
        assert_eq!(el("02").phi(), el("12"));
    }

    #[test]
    fn right_descents_mirror_left_descents_of_inverse() {
        for level in ball(8) {
            for w in level {
                assert_eq!(w.descents(Side::Right), w.inverse().descents(Side::Left));
            }
        }
    }

    // Independent Bruhat oracle: x <= w iff x occurs among the products of
    // subwords of a fixed reduced word of w.
    fn subword_closure(w: &Element) -> HashSet<Element> {
        let word = w.canonical_word();
        let n = word.len();
        let mut out = HashSet::new();
        for mask in 0u32..(1 << n) {
            let sub: Word = word
                .letters()
                .iter()
                .enumerate()
                .filter_map(|(i, &g)| ((mask >> i) & 1 == 1).then_some(g))
                .collect();
            out.insert(from_word(&sub));
        }
        out
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        let levels = ball(7);
        let all: Vec<Element> = levels.iter().flatten().copied().collect();
        for w in &all {
            let closure = subword_closure(w);
            for x in &all {
                assert_eq!(
                    bruhat_leq(x, w),
                    closure.contains(x),
                    "x = {x}, w = {w}"
                );
            }
        }
    }

    #[test]
    fn bruhat_spot_checks() {
        assert!(bruhat_leq(&el("212"), &el("1212")));
        assert!(bruhat_leq(&Element::identity(), &el("0")));
        assert!(!bruhat_leq(&el("0"), &el("1212")));
        assert!(!bruhat_leq(&el("1212"), &el("212")));
    }

    #[test]
    fn lower_interval_of_dihedral_top() {
        // Below s1s2s1s2 sits the whole finite dihedral subgroup on s1, s2.
        let interval = lower_interval(&el("1212"));
        assert_eq!(interval.len(), 8);
        let words: BTreeSet<String> = interval.iter().map(|w| w.to_string()).collect();
        assert!(words.contains("e"));
        assert!(words.contains("121"));
        assert!(words.contains("212"));
        assert!(!words.contains("0"));
    }

    #[test]
    fn coatoms_by_deletion() {
        assert_eq!(coatoms(&Element::identity()), Err(IdentityHasNoCoatoms));
        let c = coatoms(&el("12")).unwrap();
        let words: BTreeSet<String> = c.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["1", "2"].map(String::from).into_iter().collect());
        // Every coatom is covered: length drops by one and lies below.
        for level in ball(8) {
            for w in level {
                if w.is_identity() {
                    continue;
                }
                for c in coatoms(&w).unwrap() {
                    assert_eq!(c.length() + 1, w.length());
                    assert!(bruhat_leq(&c, &w));
                }
            }
        }
    }

    #[test]
    fn alcove_vertices_of_identity() {
        assert_eq!(
            Element::identity().alcove_vertices(),
            [[0, 0], [2, 0], [1, 1]]
        );
    }

    #[test]
    fn element_json_round_trip() {
        let w = el("1212");
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(text, r#"{"word":"1212"}"#);
        let back: Element = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
    }
}

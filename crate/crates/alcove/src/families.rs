//! Named element families and the region decomposition.
//!
//! Away from a bounded set, every group element belongs to exactly one of
//! three kinds of region: eight "big" components parametrized as
//! `x · theta(m, n) · y`, four "thick" strips along the diagonal mirrors
//! (families `x`, `xbar`, `e`, `w` and their mirror images), and four
//! "thin" strips along the axes (families `d`, `dbar`). [`classify`]
//! recovers the unique tag of an element, [`rebuild`] inverts it, and
//! [`interval_size`] / [`coatom_formula`] evaluate the closed formulas
//! that exist for some of the families.

use crate::coxeter::{from_word, Element, Generator, Word};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    /// The index does not name an element of the family (for example
    /// `xbar_n` with `n` not a positive multiple of 3).
    #[error("index out of range for this family")]
    BadIndex,
    /// The family has no closed formula for the requested quantity.
    #[error("no closed formula for this family")]
    NoFormula,
    /// A closed formula exists for the family but not at this index.
    #[error("closed formula does not cover this index")]
    FormulaOutOfRange,
}

/// Left factor of a big-region element: one of `1, s0, s2s0, s1s2s0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BigX {
    One,
    S0,
    S20,
    S120,
}

/// Right factor of a big-region element: one of `1, t, t s2, t s2 t'`
/// where `t = t_m` and `t' = t_{m+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BigY {
    One,
    T,
    TS2,
    TS2TP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ThickFamily {
    /// `x_n`: the alternating staircase hugging the north mirror.
    X,
    /// `xbar_n`, defined only for `n` a multiple of 3, `n >= 3`.
    XBar,
    /// `e_n = s1 x'_n`.
    E,
    /// `u_n = s2 x_n`. Constructor-only: every `u_n` equals either a
    /// `theta(m, 0)` or a `theta(m, 0) t_m`, so [`classify`] never
    /// reports this family.
    U,
    /// `w_n = s2 e_n`, plus the sporadic short elements at `n = -1, 0`.
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ThinFamily {
    /// `d_n`: the unique-reduced-word staircase along an axis.
    D,
    /// `dbar_n = s0 d_n`.
    DBar,
}

/// Classification tag. `primed` means the mirror image under the group
/// automorphism that swaps `s0` and `s1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyTag {
    Identity,
    Big {
        m: i64,
        n: i64,
        x: BigX,
        y: BigY,
        primed: bool,
    },
    Thick {
        family: ThickFamily,
        n: i64,
        primed: bool,
    },
    Thin {
        family: ThinFamily,
        n: i64,
        primed: bool,
    },
}

impl BigX {
    pub const ALL: [BigX; 4] = [BigX::One, BigX::S0, BigX::S20, BigX::S120];

    fn letters(self) -> &'static [Generator] {
        use Generator::*;
        match self {
            BigX::One => &[],
            BigX::S0 => &[S0],
            BigX::S20 => &[S2, S0],
            BigX::S120 => &[S1, S2, S0],
        }
    }

    pub fn len(self) -> usize {
        self.letters().len()
    }

    fn label(self) -> &'static str {
        match self {
            BigX::One => "1",
            BigX::S0 => "s0",
            BigX::S20 => "s2s0",
            BigX::S120 => "s1s2s0",
        }
    }
}

impl BigY {
    pub const ALL: [BigY; 4] = [BigY::One, BigY::T, BigY::TS2, BigY::TS2TP];

    /// Letters of the factor, given the parameter `m` of the core.
    fn letters(self, m: i64) -> Vec<Generator> {
        let t = t_gen(m);
        let tp = t_gen(m + 1);
        match self {
            BigY::One => vec![],
            BigY::T => vec![t],
            BigY::TS2 => vec![t, Generator::S2],
            BigY::TS2TP => vec![t, Generator::S2, tp],
        }
    }

    pub fn len(self) -> usize {
        match self {
            BigY::One => 0,
            BigY::T => 1,
            BigY::TS2 => 2,
            BigY::TS2TP => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            BigY::One => "1",
            BigY::T => "t",
            BigY::TS2 => "ts2",
            BigY::TS2TP => "ts2t'",
        }
    }
}

impl ThickFamily {
    fn label(self) -> &'static str {
        match self {
            ThickFamily::X => "x",
            ThickFamily::XBar => "xbar",
            ThickFamily::E => "e",
            ThickFamily::U => "u",
            ThickFamily::W => "w",
        }
    }
}

impl ThinFamily {
    fn label(self) -> &'static str {
        match self {
            ThinFamily::D => "d",
            ThinFamily::DBar => "dbar",
        }
    }
}

impl FamilyTag {
    /// Region name as used in reports: `identity`, `big-c`/`big-phi-c`,
    /// `thick-north`/`-south`/`-east`/`-west`, `thin-nw`/`-ne`/`-sw`/`-se`.
    pub fn region(&self) -> &'static str {
        match *self {
            FamilyTag::Identity => "identity",
            FamilyTag::Big { primed, .. } => {
                if primed {
                    "big-phi-c"
                } else {
                    "big-c"
                }
            }
            FamilyTag::Thick { family, primed, .. } => match (family, primed) {
                (ThickFamily::X | ThickFamily::XBar, false) => "thick-north",
                (ThickFamily::X | ThickFamily::XBar, true) => "thick-south",
                (ThickFamily::E, _) => "thick-east",
                (ThickFamily::W, _) => "thick-west",
                // u_n sits inside the big region; the tag exists only for
                // constructor use and has no region of its own.
                (ThickFamily::U, _) => "big-c",
            },
            FamilyTag::Thin { family, primed, .. } => match (family, primed) {
                (ThinFamily::D, false) => "thin-nw",
                (ThinFamily::D, true) => "thin-sw",
                (ThinFamily::DBar, false) => "thin-se",
                (ThinFamily::DBar, true) => "thin-ne",
            },
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyTag::Identity => write!(f, "identity"),
            FamilyTag::Big { m, n, x, y, primed } => {
                let p = if primed { "'" } else { "" };
                write!(f, "big{p}[x={} theta({m},{n}) y={}]", x.label(), y.label())
            }
            FamilyTag::Thick { family, n, primed } => {
                let p = if primed { "'" } else { "" };
                write!(f, "{}{p}_{n}", family.label())
            }
            FamilyTag::Thin { family, n, primed } => {
                let p = if primed { "'" } else { "" };
                write!(f, "{}{p}_{n}", family.label())
            }
        }
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(None)?;
        map.serialize_entry("region", self.region())?;
        match *self {
            FamilyTag::Identity => {}
            FamilyTag::Big { m, n, x, y, primed } => {
                map.serialize_entry("m", &m)?;
                map.serialize_entry("n", &n)?;
                map.serialize_entry("x", x.label())?;
                map.serialize_entry("y", y.label())?;
                map.serialize_entry("primed", &primed)?;
            }
            FamilyTag::Thick { family, n, primed } => {
                map.serialize_entry("family", family.label())?;
                map.serialize_entry("n", &n)?;
                map.serialize_entry("primed", &primed)?;
            }
            FamilyTag::Thin { family, n, primed } => {
                map.serialize_entry("family", family.label())?;
                map.serialize_entry("n", &n)?;
                map.serialize_entry("primed", &primed)?;
            }
        }
        map.end()
    }
}

/// `t_m`: `s0` for even `m`, `s1` for odd `m`.
pub fn t_gen(m: i64) -> Generator {
    if m.rem_euclid(2) == 0 {
        Generator::S0
    } else {
        Generator::S1
    }
}

fn word_of(letters: &[Generator]) -> Word {
    letters.iter().copied().collect()
}

fn gens_of(s: &str) -> Vec<Generator> {
    Word::parse(s).expect("builder literal").letters().to_vec()
}

/// First `n` letters of the infinite periodic word `121020 121020 ...`.
fn x_letters(n: i64) -> Vec<Generator> {
    const CYCLE: [usize; 6] = [1, 2, 1, 0, 2, 0];
    (0..n as usize)
        .map(|i| Generator::from_index(CYCLE[i % 6] as u8).unwrap())
        .collect()
}

/// First `n` letters of the periodic word `2120 2120 ...`.
fn d_letters(n: i64) -> Vec<Generator> {
    const CYCLE: [usize; 4] = [2, 1, 2, 0];
    (0..n as usize)
        .map(|i| Generator::from_index(CYCLE[i % 4] as u8).unwrap())
        .collect()
}

fn theta_letters(m: i64, n: i64) -> Vec<Generator> {
    // theta(2k, n)   = (ab)^k a s2 d^n
    // theta(2k+1, n) = (ab)^{k+1} s2 c^n
    // with a = 121, b = 020, c = 1202, d = 0212.
    let a = gens_of("121");
    let b = gens_of("020");
    let mut out = Vec::new();
    let k = m.div_euclid(2);
    if m.rem_euclid(2) == 0 {
        for _ in 0..k {
            out.extend_from_slice(&a);
            out.extend_from_slice(&b);
        }
        out.extend_from_slice(&a);
        out.push(Generator::S2);
        let d = gens_of("0212");
        for _ in 0..n {
            out.extend_from_slice(&d);
        }
    } else {
        for _ in 0..=k {
            out.extend_from_slice(&a);
            out.extend_from_slice(&b);
        }
        out.push(Generator::S2);
        let c = gens_of("1202");
        for _ in 0..n {
            out.extend_from_slice(&c);
        }
    }
    out
}

/// `theta(m, n)`, the spiral core of the big region; length `4 + 3m + 4n`.
pub fn theta(m: i64, n: i64) -> Result<Element, FamilyError> {
    if m < 0 || n < 0 {
        return Err(FamilyError::BadIndex);
    }
    Ok(from_word(&word_of(&theta_letters(m, n))))
}

/// Member `n` of a thick family. Index ranges: `x`, `e`, `u`, `w` need
/// `n >= 1`; `xbar` needs `n` a positive multiple of 3. The extra west
/// elements `s2` and `s2 s1` are reached as `w` with `n = -1` and `n = 0`.
pub fn thick_element(family: ThickFamily, n: i64) -> Result<Element, FamilyError> {
    use Generator::*;
    let el = match family {
        ThickFamily::X => {
            if n < 1 {
                return Err(FamilyError::BadIndex);
            }
            from_word(&word_of(&x_letters(n)))
        }
        ThickFamily::XBar => {
            // xbar_{3k} = s1 s2 s0 x_{3k-3}
            if n < 3 || n % 3 != 0 {
                return Err(FamilyError::BadIndex);
            }
            let mut letters = vec![S1, S2, S0];
            letters.extend(x_letters(n - 3));
            from_word(&word_of(&letters))
        }
        ThickFamily::E => {
            if n < 1 {
                return Err(FamilyError::BadIndex);
            }
            let mut letters = vec![S1];
            letters.extend(x_letters(n).iter().map(|g| g.swapped()));
            from_word(&word_of(&letters))
        }
        ThickFamily::U => {
            if n < 1 {
                return Err(FamilyError::BadIndex);
            }
            let mut letters = vec![S2];
            letters.extend(x_letters(n));
            from_word(&word_of(&letters))
        }
        ThickFamily::W => match n {
            -1 => from_word(&word_of(&[S2])),
            0 => from_word(&word_of(&[S2, S1])),
            n if n >= 1 => {
                let mut letters = vec![S2, S1];
                letters.extend(x_letters(n).iter().map(|g| g.swapped()));
                from_word(&word_of(&letters))
            }
            _ => return Err(FamilyError::BadIndex),
        },
    };
    Ok(el)
}

/// Member `n` of a thin family, mirrored if `primed`. Needs `n >= 3`:
/// shorter prefixes of the `d` word fall in other regions.
pub fn thin_element(family: ThinFamily, n: i64, primed: bool) -> Result<Element, FamilyError> {
    if n < 3 {
        return Err(FamilyError::BadIndex);
    }
    let mut letters = match family {
        ThinFamily::D => vec![],
        ThinFamily::DBar => vec![Generator::S0],
    };
    letters.extend(d_letters(n));
    let el = from_word(&word_of(&letters));
    Ok(if primed { el.phi() } else { el })
}

fn big_element(m: i64, n: i64, x: BigX, y: BigY, primed: bool) -> Result<Element, FamilyError> {
    if m < 0 || n < 0 {
        return Err(FamilyError::BadIndex);
    }
    let mut letters = x.letters().to_vec();
    letters.extend(theta_letters(m, n));
    letters.extend(y.letters(m));
    let el = from_word(&word_of(&letters));
    Ok(if primed { el.phi() } else { el })
}

/// Reconstruct the element a tag denotes.
pub fn rebuild(tag: &FamilyTag) -> Result<Element, FamilyError> {
    match *tag {
        FamilyTag::Identity => Ok(Element::identity()),
        FamilyTag::Big { m, n, x, y, primed } => big_element(m, n, x, y, primed),
        FamilyTag::Thick { family, n, primed } => {
            let el = thick_element(family, n)?;
            Ok(if primed { el.phi() } else { el })
        }
        FamilyTag::Thin { family, n, primed } => thin_element(family, n, primed),
    }
}

/// All tags whose rebuilt element equals `w`. The families partition the
/// group, so this list has exactly one entry; [`classify`] takes it on
/// faith and the test suite checks it exhaustively.
pub fn classify_all(w: &Element) -> Vec<FamilyTag> {
    let mut out = Vec::new();
    if w.is_identity() {
        out.push(FamilyTag::Identity);
        return out;
    }
    let l = w.length() as i64;
    let wp = w.phi();

    let mut push_thick = |family: ThickFamily, n: i64, fixed_unprimed: bool| {
        if let Ok(el) = thick_element(family, n) {
            if el == *w {
                out.push(FamilyTag::Thick {
                    family,
                    n,
                    primed: false,
                });
            }
            // For families fixed by the mirror at this index only the
            // unprimed tag is canonical.
            if !fixed_unprimed && el == wp {
                out.push(FamilyTag::Thick {
                    family,
                    n,
                    primed: true,
                });
            }
        }
    };

    // Thick candidates are pinned down by length: l = n for x, n+1 for
    // e, n+2 for w, n for xbar.
    push_thick(ThickFamily::X, l, false);
    push_thick(ThickFamily::XBar, l, false);
    push_thick(ThickFamily::E, l - 1, (l - 1).rem_euclid(3) != 0);
    match l {
        1 => push_thick(ThickFamily::W, -1, true),
        2 => push_thick(ThickFamily::W, 0, false),
        _ => push_thick(ThickFamily::W, l - 2, (l - 2).rem_euclid(3) != 0),
    }

    for family in [ThinFamily::D, ThinFamily::DBar] {
        let n = match family {
            ThinFamily::D => l,
            ThinFamily::DBar => l - 1,
        };
        for primed in [false, true] {
            if thin_element(family, n, primed) == Ok(*w) {
                out.push(FamilyTag::Thin { family, n, primed });
            }
        }
    }

    for x in BigX::ALL {
        for y in BigY::ALL {
            let rest = l - (x.len() + y.len()) as i64 - 4;
            if rest < 0 {
                continue;
            }
            for n in 0..=rest / 4 {
                if (rest - 4 * n) % 3 != 0 {
                    continue;
                }
                let m = (rest - 4 * n) / 3;
                let el = big_element(m, n, x, y, false).unwrap();
                for (primed, target) in [(false, w), (true, &wp)] {
                    if el == *target {
                        out.push(FamilyTag::Big { m, n, x, y, primed });
                    }
                }
            }
        }
    }
    out
}

/// The unique tag of `w`.
pub fn classify(w: &Element) -> FamilyTag {
    let all = classify_all(w);
    debug_assert_eq!(all.len(), 1, "ambiguous classification of {w}: {all:?}");
    all.into_iter()
        .next()
        .expect("region decomposition covers the group")
}

/// Size of the lower Bruhat interval `{v : v <= w}` by closed formula.
/// Covered: the identity, the whole big region, and the thick families
/// `x` (n >= 3) and `e`. Everything else answers `NoFormula`, and
/// in-range families outside their formula's domain `FormulaOutOfRange`.
pub fn interval_size(tag: &FamilyTag) -> Result<u64, FamilyError> {
    let quad = |m: i64, n: i64| m * m + 4 * m * n + 2 * n * n;
    match *tag {
        FamilyTag::Identity => Ok(1),
        FamilyTag::Big { m, n, x, y, .. } => {
            if m < 0 || n < 0 {
                return Err(FamilyError::BadIndex);
            }
            let q = quad(m, n);
            use BigX as X;
            use BigY as Y;
            // The table respects |<= w| = |<= w^{-1}|, which pairs the
            // (x, y) slot with the (y, x) one: e.g. the s2s0-prefix column
            // equals the ts2-suffix row.
            let size = match (x, y) {
                (X::One, Y::One) => 8 * (q + 2 * m + 2 * n + 1),
                (X::One, Y::T) | (X::S0, Y::One) => 8 * (q + 3 * m + 4 * n + 2),
                (X::One, Y::TS2) | (X::S20, Y::One) => 8 * (q + 4 * m + 5 * n + 3),
                (X::One, Y::TS2TP) | (X::S120, Y::One) => 8 * (q + 5 * m + 6 * n + 4),
                (X::S0, Y::T) => 8 * (q + 4 * m + 6 * n + 3) + 4,
                (X::S0, Y::TS2) | (X::S20, Y::T) => 8 * (q + 5 * m + 7 * n + 5),
                (X::S0, Y::TS2TP) | (X::S120, Y::T) => 8 * (q + 6 * m + 8 * n + 6) + 4,
                (X::S20, Y::TS2) => 8 * (q + 6 * m + 8 * n + 6) + 6,
                (X::S20, Y::TS2TP) | (X::S120, Y::TS2) => 8 * (q + 7 * m + 9 * n + 8) + 4,
                (X::S120, Y::TS2TP) => 8 * (q + 8 * m + 10 * n + 10) + 4,
            };
            Ok(size as u64)
        }
        FamilyTag::Thick { family, n, .. } => match family {
            ThickFamily::X => {
                let k = n / 3;
                if k < 1 {
                    return Err(FamilyError::FormulaOutOfRange);
                }
                Ok(match n % 3 {
                    0 => 8 * k * k - 2 * k,
                    1 => 8 * k * k + 4 * k,
                    _ => 8 * k * k + 12 * k,
                } as u64)
            }
            ThickFamily::E => {
                if n < 1 {
                    return Err(FamilyError::BadIndex);
                }
                let k = n / 3;
                Ok(match n % 3 {
                    0 => 8 * k * k + 4 * k,
                    1 => 8 * k * k + 8 * k + 4,
                    _ => 8 * (k + 1) * (k + 1),
                } as u64)
            }
            _ => Err(FamilyError::NoFormula),
        },
        FamilyTag::Thin { .. } => Err(FamilyError::NoFormula),
    }
}

fn prod(parts: &[Element]) -> Element {
    parts
        .iter()
        .fold(Element::identity(), |acc, p| acc.compose(p))
}

fn refl(g: Generator) -> Element {
    Element::reflection(g)
}

fn theta_el(m: i64, n: i64) -> Element {
    theta(m, n).expect("coatom formula keeps theta indices in range")
}

fn maybe_phi(set: BTreeSet<Element>, primed: bool) -> BTreeSet<Element> {
    if primed {
        set.into_iter().map(|el| el.phi()).collect()
    } else {
        set
    }
}

/// Coatoms of `theta(m, n) y` for `m, n >= 1`, straight from the closed
/// description. Shared by the big-region branches of [`coatom_formula`].
fn theta_y_coatoms(m: i64, n: i64, y: BigY) -> BTreeSet<Element> {
    use Generator::S2;
    let t = refl(t_gen(m));
    let tp = refl(t_gen(m + 1));
    let tmm = refl(t_gen(m - 1)); // t_{m-1}
    let tmp = refl(t_gen(m)); // t'_{m-1} = t_m
    let s2 = refl(S2);
    let s1 = refl(Generator::S1);
    let s21 = prod(&[s2, s1]);
    let s120 = prod(&[s1, s2, refl(Generator::S0)]);
    match y {
        BigY::One => BTreeSet::from([
            prod(&[s21, theta_el(m - 1, n).phi()]),
            prod(&[theta_el(m - 1, n), tmm, s2]),
            prod(&[s120, theta_el(m, n - 1)]),
            prod(&[theta_el(m, n - 1), t, s2, tp]),
        ]),
        BigY::T => BTreeSet::from([
            prod(&[s21, theta_el(m - 1, n).phi(), tmp]),
            prod(&[theta_el(m - 1, n), tmm, s2, tmp]),
            prod(&[s120, theta_el(m, n - 1), t]),
            prod(&[theta_el(m + 1, n - 1), refl(t_gen(m + 1))]),
            theta_el(m, n),
        ]),
        BigY::TS2 => BTreeSet::from([
            prod(&[s21, theta_el(m - 1, n).phi(), tmp, s2]),
            theta_el(m - 1, n + 1),
            prod(&[s120, theta_el(m, n - 1), t, s2]),
            prod(&[theta_el(m + 1, n - 1), refl(t_gen(m + 1)), s2]),
            prod(&[theta_el(m, n), t]),
        ]),
        BigY::TS2TP => BTreeSet::from([
            prod(&[s21, theta_el(m - 1, n).phi(), tmp, s2, tmm]),
            prod(&[theta_el(m - 1, n + 1), tmm]),
            prod(&[s120, theta_el(m, n - 1), t, s2, tp]),
            theta_el(m + 2, n - 1),
            prod(&[theta_el(m, n), t, s2]),
        ]),
    }
}

/// Coatoms of `w` (the covering relation `v <| w`) by closed formula.
/// Covered: thick `x` and `xbar` for n >= 6 resp. 9, thick `e` for
/// n >= 6, thin `d` for n >= 7, and big tags with `m, n >= 1` (for a
/// nontrivial left factor also `y != 1`).
pub fn coatom_formula(tag: &FamilyTag) -> Result<BTreeSet<Element>, FamilyError> {
    use Generator::{S0, S1, S2};
    let s1 = refl(S1);
    let s2 = refl(S2);
    let s120 = prod(&[s1, s2, refl(S0)]);
    let x_el = |n: i64| thick_element(ThickFamily::X, n).expect("index checked");
    let e_el = |n: i64| thick_element(ThickFamily::E, n).expect("index checked");
    let w_el = |n: i64| thick_element(ThickFamily::W, n).expect("index checked");
    let xbar_el = |n: i64| thick_element(ThickFamily::XBar, n).expect("index checked");
    match *tag {
        FamilyTag::Identity => Err(FamilyError::NoFormula),
        FamilyTag::Thick { family, n, primed } => {
            let set = match family {
                ThickFamily::X => {
                    let k = n / 3;
                    if k < 2 {
                        return Err(FamilyError::FormulaOutOfRange);
                    }
                    match n % 3 {
                        0 => BTreeSet::from([
                            w_el(3 * k - 3),
                            prod(&[s1, theta_el(k - 2, 0).phi()]),
                            prod(&[theta_el(k - 2, 0), refl(t_gen(k - 2))]),
                            x_el(3 * k - 1),
                        ]),
                        1 => BTreeSet::from([
                            w_el(3 * k - 2),
                            prod(&[s1, theta_el(k - 2, 0).phi(), refl(t_gen(k - 1))]),
                            xbar_el(3 * k),
                            x_el(3 * k),
                        ]),
                        _ => BTreeSet::from([
                            w_el(3 * k - 1),
                            prod(&[s1, theta_el(k - 2, 0).phi(), refl(t_gen(k - 1)), s2]),
                            prod(&[s120, theta_el(k - 2, 0)]),
                            theta_el(k - 1, 0),
                            x_el(3 * k + 1),
                        ]),
                    }
                }
                ThickFamily::XBar => {
                    let k = n / 3;
                    if n % 3 != 0 || k < 3 {
                        return Err(FamilyError::FormulaOutOfRange);
                    }
                    // Unlike the x staircase, the w coatom here is the
                    // mirrored one: deleting the leading letter of
                    // xbar_{3k} lands on w'_{3k-3}.
                    BTreeSet::from([
                        w_el(3 * k - 3).phi(),
                        prod(&[
                            s1,
                            theta_el(k - 3, 0).phi(),
                            refl(t_gen(k - 2)),
                            s2,
                            refl(t_gen(k - 3)),
                        ]),
                        prod(&[s120, theta_el(k - 3, 0), refl(t_gen(k - 3))]),
                        x_el(3 * k - 1),
                    ])
                }
                ThickFamily::E => {
                    let k = n / 3;
                    if k < 2 {
                        return Err(FamilyError::FormulaOutOfRange);
                    }
                    match n % 3 {
                        0 => BTreeSet::from([
                            x_el(3 * k).phi(),
                            xbar_el(3 * k),
                            prod(&[s1, theta_el(k - 2, 0).phi(), refl(t_gen(k - 1))]),
                            e_el(3 * k - 1),
                        ]),
                        1 => BTreeSet::from([
                            x_el(3 * k + 1).phi(),
                            x_el(3 * k + 1),
                            e_el(3 * k).phi(),
                            e_el(3 * k),
                        ]),
                        _ => BTreeSet::from([
                            x_el(3 * k + 2).phi(),
                            x_el(3 * k + 2),
                            prod(&[refl(S0), theta_el(k - 1, 0)]),
                            prod(&[s1, theta_el(k - 1, 0).phi()]),
                            e_el(3 * k + 1),
                        ]),
                    }
                }
                ThickFamily::U | ThickFamily::W => return Err(FamilyError::NoFormula),
            };
            Ok(maybe_phi(set, primed))
        }
        FamilyTag::Thin { family, n, primed } => {
            if family == ThinFamily::DBar {
                return Err(FamilyError::NoFormula);
            }
            if n < 7 {
                return Err(FamilyError::FormulaOutOfRange);
            }
            // d_n has a unique reduced word; its coatoms arise by deleting
            // one letter at these 1-based positions.
            let letters = d_letters(n);
            let positions: Vec<i64> = if n % 2 == 0 {
                vec![1, 3, n - 3, n - 1, n]
            } else {
                vec![1, 3, n - 2, n]
            };
            let set = positions
                .into_iter()
                .map(|p| {
                    let sub: Vec<Generator> = letters
                        .iter()
                        .enumerate()
                        .filter_map(|(i, &g)| (i as i64 + 1 != p).then_some(g))
                        .collect();
                    from_word(&word_of(&sub))
                })
                .collect();
            Ok(maybe_phi(set, primed))
        }
        FamilyTag::Big { m, n, x, y, primed } => {
            if m < 1 || n < 1 {
                return Err(FamilyError::FormulaOutOfRange);
            }
            if x != BigX::One && y == BigY::One {
                return Err(FamilyError::FormulaOutOfRange);
            }
            let core = theta_y_coatoms(m, n, y);
            let set = match x {
                BigX::One => core,
                // Prefixing by the next letter keeps all old coatoms
                // (shifted) and adds the unprefixed element itself.
                BigX::S0 => {
                    let s0 = refl(S0);
                    let mut set: BTreeSet<Element> =
                        core.iter().map(|c| s0.compose(c)).collect();
                    set.insert(big_element(m, n, BigX::One, y, false)?);
                    set
                }
                BigX::S20 => {
                    let s20 = prod(&[s2, refl(S0)]);
                    let mut set: BTreeSet<Element> =
                        core.iter().map(|c| s20.compose(c)).collect();
                    set.insert(big_element(m, n, BigX::S0, y, false)?);
                    set
                }
                BigX::S120 => {
                    let pre = prod(&[s1, s2, refl(S0)]);
                    let mut set: BTreeSet<Element> =
                        core.iter().map(|c| pre.compose(c)).collect();
                    set.insert(big_element(m, n, BigX::S20, y, false)?);
                    set
                }
            };
            Ok(maybe_phi(set, primed))
        }
    }
}

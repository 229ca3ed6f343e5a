//! Identity verification: every suite builds both sides of a family of
//! identities independently and reports one record per instance. The
//! JSON shape of a record is stable so the command line tool and the
//! acceptance tests can share it.

use crate::closedforms::{
    check_thin_conjecture, h_xbar_x_closed, kl_big, kl_closed, kl_theta_hat, kl_thick,
    kl_thick_north, NorthBranch, Source,
};
use crate::coxeter::{coatoms, from_word, lower_interval, Element, Generator, Word};
use crate::families::{
    coatom_formula, interval_size, rebuild, t_gen, thick_element, BigX, BigY, FamilyTag,
    ThickFamily, ThinFamily,
};
use crate::hecke::{HeckeElem, KlTable};
use crate::laurent::LaurentPoly;
use serde::Serialize;
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

/// The first (shortest, then lexicographically first) basis element on
/// which two sides disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FirstDiff {
    pub element: String,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub identity: String,
    pub params: serde_json::Value,
    pub status: Status,
    pub first_diff: Option<FirstDiff>,
}

impl IdentityRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Ok
    }
}

/// Build a record comparing two Hecke elements coefficientwise.
pub fn compare(
    identity: &str,
    params: serde_json::Value,
    lhs: &HeckeElem,
    rhs: &HeckeElem,
) -> IdentityRecord {
    let mut support: Vec<Element> = lhs.support().chain(rhs.support()).copied().collect();
    support.sort_by_key(|w| w.sort_key());
    support.dedup();
    let first_diff = support.into_iter().find_map(|w| {
        let l = lhs.g_coeff(&w);
        let r = rhs.g_coeff(&w);
        (l != r).then(|| FirstDiff {
            element: w.canonical_word().to_string(),
            lhs: l,
            rhs: r,
        })
    });
    IdentityRecord {
        identity: identity.to_string(),
        params,
        status: if first_diff.is_none() {
            Status::Ok
        } else {
            Status::Fail
        },
        first_diff,
    }
}

/// Build a record comparing two Laurent polynomials attached to one
/// element (used where an identity is about a single coefficient).
pub fn compare_poly(
    identity: &str,
    params: serde_json::Value,
    element: &str,
    lhs: LaurentPoly,
    rhs: LaurentPoly,
) -> IdentityRecord {
    let ok = lhs == rhs;
    IdentityRecord {
        identity: identity.to_string(),
        params,
        status: if ok { Status::Ok } else { Status::Fail },
        first_diff: (!ok).then(|| FirstDiff {
            element: element.to_string(),
            lhs,
            rhs,
        }),
    }
}

/// Record for a counting identity; the two counts are reported as
/// constant polynomials so every suite shares one record shape.
fn compare_count(
    identity: &str,
    params: serde_json::Value,
    element: &str,
    actual: u64,
    expected: u64,
) -> IdentityRecord {
    compare_poly(
        identity,
        params,
        element,
        LaurentPoly::term(0, actual as i64),
        LaurentPoly::term(0, expected as i64),
    )
}

fn big_tag(m: i64, n: i64, x: BigX, y: BigY, primed: bool) -> FamilyTag {
    FamilyTag::Big { m, n, x, y, primed }
}

fn tag_params(tag: &FamilyTag) -> serde_json::Value {
    serde_json::to_value(tag).expect("tags serialize")
}

/// All big-region tags whose element length is at most `max_len`.
fn big_tags(max_len: i64) -> Vec<FamilyTag> {
    let mut out = Vec::new();
    for x in BigX::ALL {
        for y in BigY::ALL {
            let budget = max_len - 4 - (x.len() + y.len()) as i64;
            if budget < 0 {
                continue;
            }
            for m in 0..=budget / 3 {
                for n in 0..=(budget - 3 * m) / 4 {
                    for primed in [false, true] {
                        out.push(big_tag(m, n, x, y, primed));
                    }
                }
            }
        }
    }
    out
}

/// Thick-region tags with a closed formula, up to `max_len`.
fn thick_closed_tags(max_len: i64) -> Vec<FamilyTag> {
    let mut out = Vec::new();
    let mut push = |family: ThickFamily, n: i64| {
        for primed in [false, true] {
            out.push(FamilyTag::Thick { family, n, primed });
        }
    };
    for n in 7..=max_len {
        push(ThickFamily::X, n);
    }
    for n in (9..=max_len).filter(|n| n % 3 == 0) {
        push(ThickFamily::XBar, n);
    }
    for n in 4..=(max_len - 1) {
        push(ThickFamily::E, n);
    }
    for n in 4..=(max_len - 2) {
        push(ThickFamily::W, n);
    }
    out
}

/// Closed formula against the recursion over the whole big region.
/// Also asserts the one-shot product form (multiply `Hb_theta` by the
/// explicit generator words for the two factors, subtracting as
/// dictated) agrees with the chained computation, on small cores.
pub fn verify_big(max_len: i64, table: &mut KlTable) -> Vec<IdentityRecord> {
    let mut records = Vec::new();
    for tag in big_tags(max_len) {
        let w = rebuild(&tag).unwrap();
        let closed = kl_big(&tag).unwrap();
        records.push(compare(
            "big-closed-vs-recursion",
            tag_params(&tag),
            &closed,
            table.kl(&w),
        ));
    }

    // product form: X Hb_theta Y with X, Y expanded as products of
    // generator elements minus lower corrections
    for m in 0..=2i64 {
        for n in 0..=2i64 {
            if 4 + 3 * m + 4 * n + 6 > max_len {
                continue;
            }
            let base = kl_theta_hat(m, n);
            let t = t_gen(m);
            let tp = t_gen(m + 1);
            for x in BigX::ALL {
                for y in BigY::ALL {
                    let tag = big_tag(m, n, x, y, false);
                    let after_y = match y {
                        BigY::One => base.clone(),
                        BigY::T => base.mul_kl_gen(t),
                        BigY::TS2 => {
                            let mut h = base.mul_kl_gen(t).mul_kl_gen(Generator::S2);
                            h -= &base;
                            h
                        }
                        BigY::TS2TP => {
                            let mut h = base
                                .mul_kl_gen(t)
                                .mul_kl_gen(Generator::S2)
                                .mul_kl_gen(tp);
                            h -= &base.mul_kl_gen(t);
                            h -= &base.mul_kl_gen(tp);
                            h
                        }
                    };
                    let product = match x {
                        BigX::One => after_y,
                        BigX::S0 => after_y.left_mul_kl_gen(Generator::S0),
                        BigX::S20 => {
                            let mut h = after_y
                                .left_mul_kl_gen(Generator::S0)
                                .left_mul_kl_gen(Generator::S2);
                            h -= &after_y;
                            h
                        }
                        BigX::S120 => {
                            let mut h = after_y
                                .left_mul_kl_gen(Generator::S0)
                                .left_mul_kl_gen(Generator::S2)
                                .left_mul_kl_gen(Generator::S1);
                            h -= &after_y.left_mul_kl_gen(Generator::S1);
                            h -= &after_y.left_mul_kl_gen(Generator::S0);
                            h
                        }
                    };
                    records.push(compare(
                        "big-product-form",
                        tag_params(&tag),
                        &product,
                        &kl_big(&tag).unwrap(),
                    ));
                }
            }
        }
    }
    records
}

/// Closed formulas against the recursion over the thick region, plus
/// the product recurrences on the north wall checked as stated (for
/// each parity both generator products are expanded).
pub fn verify_thick(max_len: i64, table: &mut KlTable) -> Vec<IdentityRecord> {
    let mut records = Vec::new();
    for tag in thick_closed_tags(max_len) {
        let w = rebuild(&tag).unwrap();
        let (closed, source) = kl_thick(&tag, table).unwrap();
        debug_assert_eq!(source, Source::Closed);
        records.push(compare(
            "thick-closed-vs-recursion",
            tag_params(&tag),
            &closed,
            table.kl(&w),
        ));
    }

    // north recurrences; every term is a closed form, so these run at
    // depths where the recursion itself would be slow
    let kl_x = |n: i64| -> HeckeElem {
        match n.rem_euclid(3) {
            1 => kl_thick_north((n - 1) / 3, NorthBranch::X3k1),
            2 => kl_thick_north((n - 2) / 3, NorthBranch::X3k2),
            _ => kl_thick_north(n / 3 - 1, NorthBranch::X3k3),
        }
        .unwrap()
    };
    let theta_or_zero = |m: i64| {
        if m < 0 {
            HeckeElem::zero()
        } else {
            kl_theta_hat(m, 0)
        }
    };
    for k in 2..=((max_len - 3) / 3) {
        let x3k1 = kl_x(3 * k + 1);
        let x3k2 = kl_x(3 * k + 2);
        records.push(compare(
            "thick-north-step-a",
            json!({ "k": k }),
            &x3k1.mul_kl_gen(Generator::S2),
            &x3k2,
        ));
        let xbar = kl_thick_north(k, NorthBranch::XBar3k3).unwrap();
        let mut wall_side = kl_x(3 * k + 3);
        wall_side += &x3k1;
        wall_side += &kl_big(&big_tag(k - 2, 0, BigX::S120, BigY::One, false)).unwrap();
        let mut bar_side = xbar;
        bar_side += &x3k1;
        bar_side += &theta_or_zero(k - 1);
        bar_side += &kl_big(&big_tag(k - 2, 0, BigX::S0, BigY::One, true)).unwrap();
        bar_side += &theta_or_zero(k - 3);
        let (s0_side, s1_side) = if k % 2 == 0 {
            (&bar_side, &wall_side)
        } else {
            (&wall_side, &bar_side)
        };
        records.push(compare(
            "thick-north-step-b",
            json!({ "k": k }),
            &x3k2.mul_kl_gen(Generator::S0),
            s0_side,
        ));
        records.push(compare(
            "thick-north-step-c",
            json!({ "k": k }),
            &x3k2.mul_kl_gen(Generator::S1),
            s1_side,
        ));
    }
    records
}

/// Conjectured thin-wall identities for every `k` whose elements fit
/// in `max_len`.
pub fn verify_thin(max_len: i64, table: &mut KlTable) -> Vec<IdentityRecord> {
    let mut records = Vec::new();
    let k_max = ((max_len - 4) / 4).max(1);
    for k in 1..=k_max {
        records.extend(check_thin_conjecture(k, table));
    }
    records
}

/// Interval-size formulas against breadth-first enumeration.
pub fn verify_intervals(max_len: i64) -> Vec<IdentityRecord> {
    let mut tags = vec![FamilyTag::Identity];
    tags.extend(big_tags(max_len));
    for n in 1..=max_len {
        for primed in [false, true] {
            tags.push(FamilyTag::Thick {
                family: ThickFamily::X,
                n,
                primed,
            });
            tags.push(FamilyTag::Thick {
                family: ThickFamily::E,
                n,
                primed,
            });
        }
    }
    let mut records = Vec::new();
    for tag in tags {
        let Ok(expected) = interval_size(&tag) else {
            continue;
        };
        let w = rebuild(&tag).unwrap();
        if i64::from(w.length()) > max_len {
            continue;
        }
        let actual = lower_interval(&w).len() as u64;
        records.push(compare_count(
            "interval-size",
            tag_params(&tag),
            &w.canonical_word().to_string(),
            actual,
            expected,
        ));
    }
    records
}

/// Coatom formulas against deletion-based enumeration.
pub fn verify_coatoms(max_len: i64) -> Vec<IdentityRecord> {
    let mut tags = big_tags(max_len);
    for n in 1..=max_len {
        for family in [ThickFamily::X, ThickFamily::XBar, ThickFamily::E] {
            for primed in [false, true] {
                tags.push(FamilyTag::Thick { family, n, primed });
            }
        }
        for primed in [false, true] {
            tags.push(FamilyTag::Thin {
                family: ThinFamily::D,
                n,
                primed,
            });
        }
    }
    let mut records = Vec::new();
    for tag in tags {
        let Ok(formula) = coatom_formula(&tag) else {
            continue;
        };
        let w = rebuild(&tag).unwrap();
        if i64::from(w.length()) > max_len {
            continue;
        }
        let enumerated = coatoms(&w).unwrap();
        let ok = formula == enumerated;
        let first_diff = (!ok).then(|| {
            let missing = enumerated.symmetric_difference(&formula).next().unwrap();
            FirstDiff {
                element: missing.canonical_word().to_string(),
                lhs: LaurentPoly::term(0, i64::from(formula.contains(missing))),
                rhs: LaurentPoly::term(0, i64::from(enumerated.contains(missing))),
            }
        });
        records.push(IdentityRecord {
            identity: "coatom-formula".to_string(),
            params: tag_params(&tag),
            status: if ok { Status::Ok } else { Status::Fail },
            first_diff,
        });
    }
    records
}

fn n_of(tag: &FamilyTag) -> HeckeElem {
    HeckeElem::n_elem(&rebuild(tag).unwrap())
}

fn n_or_zero(tag_m: i64, tag_n: i64, x: BigX, y: BigY, primed: bool) -> HeckeElem {
    if tag_m < 0 || tag_n < 0 {
        HeckeElem::zero()
    } else {
        n_of(&big_tag(tag_m, tag_n, x, y, primed))
    }
}

fn kl_or_zero(tag_m: i64, tag_n: i64, x: BigX, y: BigY, primed: bool) -> HeckeElem {
    if tag_m < 0 || tag_n < 0 {
        HeckeElem::zero()
    } else {
        kl_big(&big_tag(tag_m, tag_n, x, y, primed)).unwrap()
    }
}

fn v_pow(e: i32) -> LaurentPoly {
    LaurentPoly::monomial(e)
}

/// The multiplicative identities between interval elements, each over
/// its stated parameter range, bounded so the longest element involved
/// has length at most `max_len`.
pub fn verify_mult_lemmas(max_len: i64) -> Vec<IdentityRecord> {
    use BigX::{One, S0, S120};
    use BigY::{One as YOne, T, TS2};
    use Generator::{S0 as G0, S1 as G1, S2 as G2};
    let mut records = Vec::new();
    let l = max_len;

    // interval element times its friendly generator, interior cores
    for m in 1.. {
        if 5 + 3 * m > l {
            break;
        }
        for n in 1.. {
            if 5 + 3 * m + 4 * n > l {
                break;
            }
            let lhs = n_of(&big_tag(m, n, One, YOne, false)).mul_kl_gen(t_gen(m));
            let mut rhs = n_of(&big_tag(m, n, One, T, false));
            rhs.add_scaled(&n_of(&big_tag(m - 1, n, One, T, false)), &v_pow(1));
            records.push(compare(
                "n-times-t",
                json!({ "m": m, "n": n }),
                &lhs,
                &rhs,
            ));
        }
    }

    // boundary cores
    for n in 1..=((l - 5) / 4).max(0) {
        let lhs = n_of(&big_tag(0, n, One, YOne, false)).mul_kl_gen(G0);
        let mut rhs = n_of(&big_tag(0, n, One, T, false));
        rhs.add_scaled(&n_of(&big_tag(0, n - 1, One, T, false)), &v_pow(2));
        records.push(compare("n-times-t-axis-n", json!({ "n": n }), &lhs, &rhs));
    }
    for m in 1..=((l - 5) / 3).max(0) {
        let lhs = n_of(&big_tag(m, 0, One, YOne, false)).mul_kl_gen(t_gen(m));
        let mut rhs = n_of(&big_tag(m, 0, One, T, false));
        rhs.add_scaled(&n_of(&big_tag(m - 1, 0, One, T, false)), &v_pow(1));
        records.push(compare("n-times-t-axis-m", json!({ "m": m }), &lhs, &rhs));
    }
    records.push(compare(
        "n-times-t-origin",
        json!({}),
        &n_of(&big_tag(0, 0, One, YOne, false)).mul_kl_gen(G0),
        &n_of(&big_tag(0, 0, One, T, false)),
    ));

    // left multiplication landing in the prefixed families
    for m in 0..=((l - 5) / 3).max(0) {
        let lhs = n_of(&big_tag(m, 0, One, YOne, false)).left_mul_kl_gen(G0);
        let mut rhs = n_of(&big_tag(m, 0, S0, YOne, false));
        rhs.add_scaled(&n_or_zero(m - 1, 0, S0, YOne, true), &v_pow(1));
        records.push(compare("s0-times-n", json!({ "m": m }), &lhs, &rhs));
    }

    for m in 1..=((l - 6) / 3).max(0) {
        let lhs = n_of(&big_tag(m, 0, S0, YOne, false)).mul_kl_gen(t_gen(m));
        let mut rhs = n_of(&big_tag(m, 0, S0, T, false));
        rhs.add_scaled(&n_of(&big_tag(m - 1, 0, S0, T, false)), &v_pow(1));
        records.push(compare("n-s0theta-times-t", json!({ "m": m }), &lhs, &rhs));
    }
    {
        let lhs = n_of(&big_tag(0, 0, S0, YOne, false)).mul_kl_gen(G0);
        let mut rhs = n_of(&big_tag(0, 0, S0, T, false));
        let s1s0 = from_word(&Word::parse("10").unwrap());
        rhs.add_scaled(&HeckeElem::n_elem(&s1s0), &v_pow(2));
        records.push(compare("n-s0theta-times-t-origin", json!({}), &lhs, &rhs));
    }

    for m in 1..=((l - 8) / 3).max(0) {
        let lhs = n_of(&big_tag(m, 0, S120, YOne, false)).mul_kl_gen(t_gen(m));
        let mut rhs = n_of(&big_tag(m, 0, S120, T, false));
        rhs.add_scaled(&n_of(&big_tag(m - 1, 0, S120, T, false)), &v_pow(1));
        records.push(compare("n-120theta-times-t", json!({ "m": m }), &lhs, &rhs));
    }

    // the long padding products that step the core one column east
    for m in 1.. {
        if 7 + 3 * m > l {
            break;
        }
        for n in 1.. {
            if 7 + 3 * m + 4 * n > l {
                break;
            }
            let t = t_gen(m);
            let base = n_of(&big_tag(m, n, One, YOne, false));
            let mut lhs = base.mul_kl_gen(t).mul_kl_gen(G2).mul_kl_gen(t);
            lhs.add_scaled(&base.mul_kl_gen(t), &LaurentPoly::term(0, -2));
            let mut rhs = n_of(&big_tag(m + 1, n, One, YOne, false));
            rhs += &n_of(&big_tag(m - 1, n + 1, One, YOne, false));
            rhs += &n_of(&big_tag(m + 1, n - 1, One, YOne, false));
            rhs += &n_of(&big_tag(m - 1, n, One, YOne, false));
            records.push(compare(
                "n-step-east",
                json!({ "m": m, "n": n }),
                &lhs,
                &rhs,
            ));
        }
    }
    for m in 0..=((l - 7) / 3).max(0) {
        let t = t_gen(m);
        let base = n_of(&big_tag(m, 0, One, YOne, false));
        let mut lhs = base.mul_kl_gen(t).mul_kl_gen(G2).mul_kl_gen(t);
        lhs.add_scaled(&base.mul_kl_gen(t), &LaurentPoly::term(0, -2));
        let mut rhs = n_of(&big_tag(m + 1, 0, One, YOne, false));
        rhs += &n_or_zero(m - 1, 1, One, YOne, false);
        let mut c = LaurentPoly::one();
        c += &v_pow(2);
        rhs.add_scaled(&n_or_zero(m - 1, 0, One, YOne, false), &c);
        records.push(compare("n-step-east-axis-m", json!({ "m": m }), &lhs, &rhs));
    }
    for n in 0..=((l - 7) / 4).max(0) {
        let base = n_of(&big_tag(0, n, One, YOne, false));
        let mut lhs = base.mul_kl_gen(G0).mul_kl_gen(G2).mul_kl_gen(G0);
        lhs.add_scaled(&base.mul_kl_gen(G0), &LaurentPoly::term(0, -2));
        let mut rhs = n_of(&big_tag(1, n, One, YOne, false));
        let mut c = LaurentPoly::one();
        c += &v_pow(2);
        rhs.add_scaled(&n_or_zero(1, n - 1, One, YOne, false), &c);
        rhs.add_scaled(&n_or_zero(1, n - 2, One, YOne, false), &v_pow(2));
        records.push(compare("n-step-east-axis-n", json!({ "n": n }), &lhs, &rhs));
    }

    // two-term cancellation along the n axis
    for n in 1..=((l - 6) / 4).max(0) {
        let mut lhs = n_of(&big_tag(0, n, One, T, false)).mul_kl_gen(G2);
        lhs.add_scaled(&n_of(&big_tag(0, n - 1, One, TS2, false)), &v_pow(2));
        let mut rhs = n_of(&big_tag(0, n, One, TS2, false));
        rhs += &n_of(&big_tag(0, n, One, YOne, false));
        rhs.add_scaled(&n_or_zero(1, n - 1, One, YOne, false), &v_pow(1));
        records.push(compare("n-axis-cancellation", json!({ "n": n }), &lhs, &rhs));
    }

    // the four-generator product that climbs the n axis
    for n in 3..=((l - 8) / 4).max(0) {
        let base = n_of(&big_tag(0, n, One, YOne, false));
        let mut lhs = base
            .mul_kl_gen(G0)
            .mul_kl_gen(G2)
            .mul_kl_gen(G1)
            .mul_kl_gen(G2);
        lhs.add_scaled(&n_of(&big_tag(0, n - 2, One, TS2, false)), &LaurentPoly::term(4, 2));
        let mut rhs = n_of(&big_tag(0, n + 1, One, YOne, false));
        rhs.add_scaled(&n_of(&big_tag(0, n, One, TS2, false)), &LaurentPoly::term(0, 2));
        rhs.add_scaled(
            &base,
            &LaurentPoly::from_terms(&[(-2, 1), (0, 3), (2, 1)]),
        );
        rhs += &n_of(&big_tag(2, n - 1, One, YOne, false));
        rhs.add_scaled(&n_of(&big_tag(1, n - 1, One, YOne, false)), &LaurentPoly::term(1, 2));
        rhs.add_scaled(&n_of(&big_tag(2, n - 2, One, YOne, false)), &v_pow(2));
        rhs.add_scaled(
            &n_of(&big_tag(0, n - 1, One, YOne, false)),
            &LaurentPoly::from_terms(&[(0, 1), (2, 3)]),
        );
        rhs.add_scaled(&n_of(&big_tag(1, n - 2, One, YOne, false)), &LaurentPoly::term(3, 2));
        records.push(compare("n-four-gen-product", json!({ "n": n }), &lhs, &rhs));
    }

    // the same product packaged as a single step north
    for n in 3..=((l - 8) / 4).max(0) {
        let base = n_of(&big_tag(0, n, One, YOne, false));
        let mut lhs = base
            .mul_kl_gen(G0)
            .mul_kl_gen(G2)
            .mul_kl_gen(G1)
            .mul_kl_gen(G2);
        let two_step = base.mul_kl_gen(G0).mul_kl_gen(G2);
        lhs.add_scaled(&two_step, &LaurentPoly::term(0, -2));
        lhs.add_scaled(&base, &LaurentPoly::from_terms(&[(-2, -1), (0, -1), (2, -1)]));
        let mut rhs = n_of(&big_tag(0, n + 1, One, YOne, false));
        let mut c = LaurentPoly::one();
        c += &v_pow(2);
        rhs.add_scaled(&n_of(&big_tag(0, n - 1, One, YOne, false)), &c);
        rhs.add_scaled(&n_of(&big_tag(2, n - 2, One, YOne, false)), &v_pow(2));
        rhs += &n_of(&big_tag(2, n - 1, One, YOne, false));
        records.push(compare("n-step-north", json!({ "n": n }), &lhs, &rhs));
    }

    // left product reaching the full prefix
    {
        let base = n_of(&big_tag(0, 0, One, YOne, false));
        let mut lhs = base.left_mul_kl_gen(G0).left_mul_kl_gen(G2).left_mul_kl_gen(G1);
        lhs.add_scaled(&base.left_mul_kl_gen(G0), &LaurentPoly::term(0, -1));
        let mut rhs = n_of(&big_tag(0, 0, S120, YOne, false));
        rhs.add_scaled(&base, &LaurentPoly::v_plus_vinv());
        records.push(compare("left-chain-origin", json!({}), &lhs, &rhs));
    }
    for m in 1..=((l - 7) / 3).max(0) {
        let base = n_of(&big_tag(m, 0, One, YOne, false));
        let mut lhs = base.left_mul_kl_gen(G0).left_mul_kl_gen(G2).left_mul_kl_gen(G1);
        lhs.add_scaled(&base.left_mul_kl_gen(G0), &LaurentPoly::term(0, -1));
        let mut rhs = n_of(&big_tag(m, 0, S120, YOne, false));
        rhs.add_scaled(&base, &LaurentPoly::from_terms(&[(-1, 1), (1, 2)]));
        rhs.add_scaled(&n_or_zero(m - 2, 1, One, YOne, false), &v_pow(1));
        rhs.add_scaled(&n_or_zero(m - 1, 0, S0, YOne, true), &v_pow(1));
        rhs.add_scaled(&n_or_zero(m - 2, 0, S0, YOne, false), &v_pow(2));
        let mut minus = HeckeElem::zero();
        minus.add_scaled(&n_or_zero(m - 2, 0, S120, YOne, false), &v_pow(2));
        rhs -= &minus;
        records.push(compare("left-chain", json!({ "m": m }), &lhs, &rhs));
    }

    // stepping the three north-wall families by the padded product;
    // the mirrored rows act on the primed families with the letters of
    // the product swapped
    for k in 2..=((l - 5) / 3).max(1) {
        let f = |k: i64| 3 * k + 1;
        for mirrored in [false, true] {
            let n_thick = |fam: ThickFamily, i: i64| {
                let el = thick_element(fam, i).unwrap();
                HeckeElem::n_elem(&if mirrored { el.phi() } else { el })
            };
            // primed flag of a big term in the unprimed identity,
            // flipped when the whole identity is mirrored
            let pr = |primed: bool| primed != mirrored;
            let (g_mid, g_last) = if mirrored { (G0, G1) } else { (G1, G0) };
            for (name, family) in [
                ("wall-step-x", ThickFamily::X),
                ("wall-step-u", ThickFamily::U),
                ("wall-step-e", ThickFamily::E),
            ] {
                let base = n_thick(family, f(k));
                let mut lhs = base.mul_kl_gen(G2).mul_kl_gen(g_mid).mul_kl_gen(g_last);
                lhs.add_scaled(&base.mul_kl_gen(g_last), &LaurentPoly::term(0, -1));
                let rhs = match family {
                    ThickFamily::X => {
                        let mut rhs = n_thick(ThickFamily::X, f(k + 1));
                        rhs += &n_thick(ThickFamily::X, f(k - 1));
                        rhs += &n_of(&big_tag(k - 1, 0, One, T, pr(false)));
                        rhs += &n_of(&big_tag(k - 2, 0, S120, T, pr(false)));
                        rhs += &n_of(&big_tag(k - 2, 0, S0, T, pr(true)));
                        rhs.add_scaled(&n_of(&big_tag(k - 2, 0, One, T, pr(false))), &v_pow(1));
                        rhs
                    }
                    ThickFamily::U => {
                        let mut rhs = n_thick(ThickFamily::U, f(k + 1));
                        rhs += &n_thick(ThickFamily::U, f(k - 1));
                        rhs += &n_of(&big_tag(k - 2, 1, One, T, pr(false)));
                        rhs.add_scaled(
                            &n_of(&big_tag(k - 1, 0, One, T, pr(false))),
                            &LaurentPoly::v_plus_vinv(),
                        );
                        rhs.add_scaled(&n_thick(ThickFamily::U, f(k - 1)), &v_pow(2));
                        rhs
                    }
                    ThickFamily::E => {
                        let mut rhs = n_thick(ThickFamily::E, f(k + 1));
                        rhs += &n_thick(ThickFamily::E, f(k - 1));
                        rhs += &n_of(&big_tag(k - 1, 0, S0, T, pr(false)));
                        rhs += &n_of(&big_tag(k - 1, 0, S0, T, pr(true)));
                        rhs.add_scaled(&n_of(&big_tag(k - 2, 0, S0, T, pr(false))), &v_pow(1));
                        rhs.add_scaled(&n_of(&big_tag(k - 2, 0, S0, T, pr(true))), &v_pow(1));
                        rhs
                    }
                    _ => unreachable!(),
                };
                records.push(compare(name, json!({ "k": k, "mirrored": mirrored }), &lhs, &rhs));
            }
        }
    }

    // explicit canonical basis expansions in the prefixed families
    for m in 0..=((l - 5) / 3).max(0) {
        let mut rhs = n_of(&big_tag(m, 0, One, T, false));
        rhs.add_scaled(&kl_or_zero(m - 1, 0, One, T, false), &v_pow(1));
        records.push(compare(
            "kl-theta-t-peeling",
            json!({ "m": m }),
            &kl_big(&big_tag(m, 0, One, T, false)).unwrap(),
            &rhs,
        ));

        let mut rhs = n_of(&big_tag(m, 0, S0, YOne, false));
        rhs.add_scaled(&kl_or_zero(m - 1, 0, S0, YOne, true), &v_pow(1));
        records.push(compare(
            "kl-s0theta-peeling",
            json!({ "m": m }),
            &kl_big(&big_tag(m, 0, S0, YOne, false)).unwrap(),
            &rhs,
        ));
    }
    for m in 0..=((l - 7) / 3).max(0) {
        let mut rhs = n_of(&big_tag(m, 0, S120, YOne, false));
        for i in 0..=((m - 1).div_euclid(2)) {
            rhs.add_scaled(
                &n_of(&big_tag(m - 2 * i, 0, One, YOne, false)),
                &v_pow(1 + 2 * i as i32),
            );
            rhs.add_scaled(
                &n_or_zero(m - 1 - 2 * i, 0, S0, YOne, true),
                &v_pow(1 + 2 * i as i32),
            );
        }
        for i in 1..=m.div_euclid(2) {
            rhs.add_scaled(
                &n_of(&big_tag(m - 2 * i, 1, One, YOne, false)),
                &v_pow(2 * i as i32 - 1),
            );
            rhs.add_scaled(
                &n_of(&big_tag(m - 2 * i, 0, S0, YOne, false)),
                &v_pow(2 * i as i32),
            );
        }
        records.push(compare(
            "kl-120theta-expansion",
            json!({ "m": m }),
            &kl_big(&big_tag(m, 0, S120, YOne, false)).unwrap(),
            &rhs,
        ));
    }
    for m in 1..=((l - 8) / 3).max(0) {
        let s1s0 = from_word(&Word::parse("10").unwrap());
        let mut rhs = n_of(&big_tag(m, 0, S120, T, false));
        rhs.add_scaled(&n_of(&big_tag(m - 1, 0, S120, T, false)), &v_pow(1));
        rhs.add_scaled(&HeckeElem::n_elem(&s1s0), &v_pow(m as i32 + 2));
        for i in 0..=m {
            rhs.add_scaled(
                &n_of(&big_tag(m - i, 0, One, T, false)),
                &v_pow(i as i32 + 1),
            );
        }
        for i in 1..=m {
            rhs.add_scaled(
                &n_of(&big_tag(m - i, 0, S0, T, true)),
                &v_pow(i as i32),
            );
        }
        for i in 2..=m {
            rhs.add_scaled(
                &n_of(&big_tag(m - i, 1, One, T, false)),
                &v_pow(i as i32 - 1),
            );
            rhs.add_scaled(
                &n_of(&big_tag(m - i, 0, S0, T, false)),
                &v_pow(i as i32),
            );
        }
        records.push(compare(
            "kl-120theta-t-expansion",
            json!({ "m": m }),
            &kl_big(&big_tag(m, 0, S120, T, false)).unwrap(),
            &rhs,
        ));

        if 11 + 3 * m <= l {
            let mut rhs = n_of(&big_tag(m + 1, 0, S120, T, false));
            rhs.add_scaled(&kl_big(&big_tag(m, 0, S120, T, false)).unwrap(), &v_pow(1));
            let mut minus = HeckeElem::zero();
            minus.add_scaled(&n_of(&big_tag(m - 1, 0, S120, T, false)), &v_pow(2));
            rhs -= &minus;
            rhs.add_scaled(&n_of(&big_tag(m + 1, 0, One, T, false)), &v_pow(1));
            rhs.add_scaled(&n_of(&big_tag(m, 0, S0, T, true)), &v_pow(1));
            rhs.add_scaled(&n_of(&big_tag(m - 1, 1, One, T, false)), &v_pow(1));
            rhs.add_scaled(&n_of(&big_tag(m - 1, 0, S0, T, false)), &v_pow(2));
            records.push(compare(
                "kl-120theta-t-step",
                json!({ "m": m }),
                &kl_big(&big_tag(m + 1, 0, S120, T, false)).unwrap(),
                &rhs,
            ));
        }
    }
    for m in 0..=((l - 9) / 3).max(0) {
        for primed in [false, true] {
            let mut rhs = n_of(&big_tag(m + 1, 0, S0, T, primed));
            rhs.add_scaled(&n_of(&big_tag(m, 0, S0, T, !primed)), &v_pow(1));
            rhs.add_scaled(&kl_big(&big_tag(m, 0, S0, T, primed)).unwrap(), &v_pow(1));
            records.push(compare(
                "kl-s0theta-t-peeling",
                json!({ "m": m, "primed": primed }),
                &kl_big(&big_tag(m + 1, 0, S0, T, primed)).unwrap(),
                &rhs,
            ));
        }
    }

    records
}

/// The introductory worked example: the recurrence chain and the
/// closed coefficient formulas around `h_{xbar_{3n}, x_{3m}}`.
pub fn verify_intro_example(table: &mut KlTable) -> Vec<IdentityRecord> {
    let mut records = Vec::new();
    let f = |d: i32| LaurentPoly::f_poly(d);
    let x = |i: i64| thick_element(ThickFamily::X, i).unwrap();
    let xbar = |i: i64| thick_element(ThickFamily::XBar, i).unwrap();

    for (n, m) in [(2i64, 3i64), (2, 5)] {
        let d = (m - n) as i32;
        let xb = xbar(3 * n);
        let s120theta_m = rebuild(&big_tag(m - 3, 0, BigX::S120, BigY::One, false)).unwrap();
        let s120theta_n = rebuild(&big_tag(n - 2, 0, BigX::S120, BigY::One, false)).unwrap();

        // chain step from the wall product by s1
        let mut lhs = &table.h_poly(&xb, &x(3 * m - 1)) * &LaurentPoly::monomial(-1);
        lhs += &table.h_poly(&x(3 * n - 1), &x(3 * m - 1));
        let mut rhs = table.h_poly(&xb, &x(3 * m));
        rhs += &table.h_poly(&xb, &x(3 * m - 2));
        rhs += &table.h_poly(&xb, &s120theta_m);
        records.push(compare_poly(
            "intro-chain-wall",
            json!({ "n": n, "m": m }),
            "sum",
            lhs,
            rhs,
        ));

        // chain steps from the s2 product
        let lhs = table.h_poly(&xb, &x(3 * m - 1));
        let mut rhs = &table.h_poly(&xb, &x(3 * m - 2)) * &LaurentPoly::monomial(1);
        rhs += &table.h_poly(&s120theta_n, &x(3 * m - 2));
        records.push(compare_poly(
            "intro-chain-s2-lower",
            json!({ "n": n, "m": m }),
            "sum",
            lhs,
            rhs,
        ));
        let lhs = table.h_poly(&x(3 * n - 1), &x(3 * m - 1));
        let mut rhs =
            &table.h_poly(&x(3 * n - 1), &x(3 * m - 2)) * &LaurentPoly::monomial(-1);
        rhs += &table.h_poly(&x(3 * n - 2), &x(3 * m - 2));
        records.push(compare_poly(
            "intro-chain-s2-upper",
            json!({ "n": n, "m": m }),
            "sum",
            lhs,
            rhs,
        ));

        // the four geometric-sum coefficients
        let mut sum = f(d);
        sum += &f(d - 2);
        records.push(compare_poly(
            "intro-coeff-xbar",
            json!({ "n": n, "m": m }),
            "xbar vs x_{3m-2}",
            table.h_poly(&xb, &x(3 * m - 2)),
            &sum * &LaurentPoly::monomial(d),
        ));
        let mut sum = f(d - 1);
        sum += &f(d - 3);
        records.push(compare_poly(
            "intro-coeff-prefix",
            json!({ "n": n, "m": m }),
            "s1s2s0 theta vs x_{3m-2}",
            table.h_poly(&s120theta_n, &x(3 * m - 2)),
            &sum * &LaurentPoly::monomial(d + 1),
        ));
        let mut sum = f(d);
        sum += &f(d - 2);
        records.push(compare_poly(
            "intro-coeff-wall-below",
            json!({ "n": n, "m": m }),
            "x_{3n-1} vs x_{3m-2}",
            table.h_poly(&x(3 * n - 1), &x(3 * m - 2)),
            &sum * &LaurentPoly::monomial(d + 1),
        ));
        let mut sum = f(d + 1);
        sum += &f(d - 1);
        records.push(compare_poly(
            "intro-coeff-wall-lower",
            json!({ "n": n, "m": m }),
            "x_{3n-2} vs x_{3m-2}",
            table.h_poly(&x(3 * n - 2), &x(3 * m - 2)),
            &sum * &LaurentPoly::monomial(d),
        ));
        let mut sum = f(d);
        sum += &f(d - 2);
        records.push(compare_poly(
            "intro-coeff-into-big",
            json!({ "n": n, "m": m }),
            "xbar vs s1s2s0 theta",
            table.h_poly(&xb, &s120theta_m),
            &sum * &LaurentPoly::monomial(d),
        ));
    }

    for (n, m) in [(2i64, 3i64), (2, 5), (4, 5)] {
        records.push(compare_poly(
            "intro-closed-h",
            json!({ "n": n, "m": m }),
            "xbar vs x",
            table.h_poly(&xbar(3 * n), &x(3 * m)),
            h_xbar_x_closed(n, m).unwrap(),
        ));
    }
    records
}

/// The corrected vanishing pattern of the wall-to-wall edge weights:
/// `mu(xbar_{3n}, x_{3m})` is one exactly at distance one and zero at
/// the next two odd distances.
pub fn verify_mu_pattern(max_len: i64, table: &mut KlTable) -> Vec<IdentityRecord> {
    let mut records = Vec::new();
    for n in (2..).step_by(2) {
        if 3 * n + 3 > max_len {
            break;
        }
        for m in ((n + 1)..).step_by(2) {
            if 3 * m > max_len || m - n > 5 {
                break;
            }
            let xbar = thick_element(ThickFamily::XBar, 3 * n).unwrap();
            let x = thick_element(ThickFamily::X, 3 * m).unwrap();
            let (h, _) = kl_closed(&x, table);
            let mu = h.g_coeff(&xbar).coeff(1);
            let expected = i64::from(m - n == 1);
            records.push(compare_poly(
                "mu-wall-pattern",
                json!({ "n": n, "m": m }),
                "mu",
                LaurentPoly::term_big(0, mu),
                LaurentPoly::term(0, expected),
            ));
        }
    }
    records
}

/// Flatten a batch of suites into one report and an overall flag.
pub fn all_passed(records: &[IdentityRecord]) -> bool {
    records.iter().all(IdentityRecord::passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_json_shape() {
        let rec = compare(
            "demo",
            json!({ "k": 1 }),
            &HeckeElem::std(&Element::identity()),
            &HeckeElem::std(&Element::identity()),
        );
        let text = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            text,
            r#"{"identity":"demo","params":{"k":1},"status":"ok","first_diff":null}"#
        );

        let bad = compare(
            "demo",
            json!({}),
            &HeckeElem::std(&Element::identity()),
            &HeckeElem::zero(),
        );
        let text = serde_json::to_string(&bad).unwrap();
        assert!(text.contains(r#""status":"fail""#));
        assert!(text.contains(r#""element":"""#));
    }

    #[test]
    fn big_suite_passes_at_small_depth() {
        let mut table = KlTable::new();
        let records = verify_big(11, &mut table);
        assert!(!records.is_empty());
        for r in &records {
            assert!(r.passed(), "{} {:?}: {:?}", r.identity, r.params, r.first_diff);
        }
    }

    #[test]
    fn thick_suite_passes_at_small_depth() {
        let mut table = KlTable::new();
        let records = verify_thick(11, &mut table);
        assert!(records.iter().any(|r| r.identity == "thick-north-step-b"));
        for r in &records {
            assert!(r.passed(), "{} {:?}: {:?}", r.identity, r.params, r.first_diff);
        }
    }

    #[test]
    fn interval_and_coatom_suites_pass_at_small_depth() {
        for r in verify_intervals(12).iter().chain(verify_coatoms(12).iter()) {
            assert!(r.passed(), "{} {:?}: {:?}", r.identity, r.params, r.first_diff);
        }
    }

    #[test]
    fn mult_lemma_suite_passes_at_small_depth() {
        let records = verify_mult_lemmas(13);
        assert!(records.len() > 20);
        for r in &records {
            assert!(r.passed(), "{} {:?}: {:?}", r.identity, r.params, r.first_diff);
        }
    }

    #[test]
    fn mu_pattern_smallest_cases() {
        let mut table = KlTable::new();
        let records = verify_mu_pattern(9, &mut table);
        assert_eq!(records.len(), 1);
        assert!(records[0].passed());
    }
}

//! Browser bindings for the demo page in `static/`. Three operations,
//! each taking plain strings and returning JSON or SVG text, so the
//! page needs nothing beyond the generated loader.
//!
//! The KL table persists across calls within a session; repeated
//! queries against the same region get cheaper.

use std::cell::RefCell;

use wasm_bindgen::prelude::*;

use alcove::closedforms::{kl_closed, Source};
use alcove::coxeter::{from_word, lower_interval_levels, Side};
use alcove::families::classify;
use alcove::tessellate::{ColorMode, Scene};
use alcove::{KlTable, Word};

thread_local! {
    static TABLE: RefCell<KlTable> = RefCell::new(KlTable::new());
}

// alcoves stay legible on screen up to roughly this ball
const MAX_RADIUS: u32 = 40;

fn parse(text: &str) -> Result<Word, String> {
    Word::parse(text.trim()).map_err(|e| e.to_string())
}

fn word_str(w: &Word) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w.to_string_sep(None)
    }
}

fn element_json(word: &str) -> Result<String, String> {
    let w = from_word(&parse(word)?);
    let tag = classify(&w);
    let levels = lower_interval_levels(&w);
    let interval: usize = levels.iter().map(Vec::len).sum();
    let report = serde_json::json!({
        "canonical": word_str(&w.canonical_word()),
        "length": w.length(),
        "left_descents": w.descents(Side::Left).iter().map(|g| g.to_char()).collect::<String>(),
        "right_descents": w.descents(Side::Right).iter().map(|g| g.to_char()).collect::<String>(),
        "family": tag,
        "family_name": tag.to_string(),
        "region": tag.region(),
        "interval_size": interval,
    });
    Ok(report.to_string())
}

fn kl_json(x: &str, w: &str) -> Result<String, String> {
    let xe = from_word(&parse(x)?);
    let we = from_word(&parse(w)?);
    let (h, mu, source) = TABLE.with(|t| {
        let table = &mut t.borrow_mut();
        let (basis, source) = kl_closed(&we, table);
        let h = basis.g_coeff(&xe);
        let mu = h.coeff(1).to_string();
        (h, mu, source)
    });
    let report = serde_json::json!({
        "x": word_str(&xe.canonical_word()),
        "w": word_str(&we.canonical_word()),
        "h": h,
        "h_display": h.to_string(),
        "mu": mu,
        "source": match source { Source::Closed => "closed", Source::Fallback => "recursion" },
    });
    Ok(report.to_string())
}

fn scene_svg(radius: u32, color_by: &str) -> Result<String, String> {
    if radius > MAX_RADIUS {
        return Err(format!("radius capped at {MAX_RADIUS}"));
    }
    let mode = if color_by == "region" {
        ColorMode::Region
    } else if let Some(rest) = color_by.strip_prefix("interval:") {
        ColorMode::Interval(from_word(&parse(rest)?))
    } else {
        return Err(format!(
            "unknown mode {color_by:?}; expected \"region\" or \"interval:<word>\""
        ));
    };
    Ok(Scene::build(radius, mode).svg())
}

#[wasm_bindgen]
pub fn element_report(word: &str) -> Result<String, JsError> {
    element_json(word).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn kl_query(x: &str, w: &str) -> Result<String, JsError> {
    kl_json(x, w).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn tessellation_svg(radius: u32, color_by: &str) -> Result<String, JsError> {
    scene_svg(radius, color_by).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_report_classifies() {
        let report: serde_json::Value =
            serde_json::from_str(&element_json("1212").unwrap()).unwrap();
        assert_eq!(report["length"], 4);
        assert_eq!(report["region"], "big-c");
        assert_eq!(report["interval_size"], 8);

        let report: serde_json::Value = serde_json::from_str(&element_json("").unwrap()).unwrap();
        assert_eq!(report["canonical"], "e");
    }

    #[test]
    fn kl_query_round_trip() {
        let report: serde_json::Value =
            serde_json::from_str(&kl_json("120121", "121020121").unwrap()).unwrap();
        assert_eq!(report["h_display"], "v + v^3");
        assert_eq!(report["mu"], "1");
        assert_eq!(report["source"], "closed");
    }

    #[test]
    fn svg_modes_and_limits() {
        let svg = scene_svg(2, "region").unwrap();
        assert_eq!(svg.matches("<polygon").count(), 9);
        let svg = scene_svg(3, "interval:1212").unwrap();
        assert!(svg.contains("in-interval"));
        assert!(scene_svg(MAX_RADIUS + 1, "region").is_err());
        assert!(scene_svg(2, "rainbow").is_err());
        assert!(element_json("31").is_err());
    }
}

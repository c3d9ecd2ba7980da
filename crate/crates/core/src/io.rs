//! JSON input formats, CSV emission and all-or-nothing output files.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::markov::{MarkovMeasure, decode, encode};
use crate::symbolic::{Alphabet, PrefixAutomaton};
use crate::thermo::Potential;

#[derive(Debug, Serialize, Deserialize)]
struct AutomatonFile {
    alphabet: usize,
    states: Vec<String>,
    initial: String,
    transitions: Vec<TransitionEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TransitionEntry {
    from: String,
    symbol: u8,
    to: String,
}

/// Parses `{"alphabet": m, "states": [...], "initial": ..., "transitions": [...]}`.
pub fn automaton_from_json(text: &str) -> Result<PrefixAutomaton> {
    let file: AutomatonFile = serde_json::from_str(text)?;
    let index = |name: &str| {
        file.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::invalid(format!("unknown state '{name}'")))
    };
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = file.states.iter().find(|s| !seen.insert(s.as_str())) {
        return Err(Error::invalid(format!("state '{dup}' is listed twice")));
    }
    let initial = index(&file.initial)?;
    let edges = file
        .transitions
        .iter()
        .map(|t| Ok((index(&t.from)?, t.symbol, index(&t.to)?)))
        .collect::<Result<Vec<_>>>()?;
    PrefixAutomaton::new(Alphabet::new(file.alphabet)?, file.states.clone(), initial, &edges)
}

pub fn automaton_to_json(automaton: &PrefixAutomaton) -> String {
    let names = automaton.state_names();
    let file = AutomatonFile {
        alphabet: automaton.alphabet().size(),
        states: names.to_vec(),
        initial: names[automaton.initial()].clone(),
        transitions: automaton
            .transitions()
            .into_iter()
            .map(|(from, symbol, to)| TransitionEntry { from: names[from].clone(), symbol, to: names[to].clone() })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

#[derive(Debug, Serialize, Deserialize)]
struct PotentialFile {
    m: usize,
    q: usize,
    d: usize,
    table: BTreeMap<String, f64>,
}

fn symbol_key(word: &[u8]) -> String {
    word.iter().map(|&a| std::char::from_digit(a as u32, 36).expect("m <= 36")).collect()
}

/// Parses `{"m":2,"q":2,"d":2,"table":{"00":1.0,...}}`; every word of
/// length `d` must appear exactly once.
pub fn potential_from_json(text: &str) -> Result<Potential> {
    let file: PotentialFile = serde_json::from_str(text)?;
    if !(2..=36).contains(&file.m) {
        return Err(Error::invalid("potential files support 2 <= m <= 36"));
    }
    if file.d < 2 || file.d > 22 {
        return Err(Error::invalid("potential arity d must be between 2 and 22"));
    }
    let len = file
        .m
        .checked_pow(file.d as u32)
        .filter(|&l| l <= 1 << 22)
        .ok_or_else(|| Error::invalid("m^d is too large"))?;
    let mut table = vec![f64::NAN; len];
    for (key, &value) in &file.table {
        let word = key
            .chars()
            .map(|c| c.to_digit(36).filter(|&v| (v as usize) < file.m).map(|v| v as u8))
            .collect::<Option<Vec<u8>>>()
            .filter(|w| w.len() == file.d)
            .ok_or_else(|| Error::invalid(format!("table key '{key}' is not a word of length {}", file.d)))?;
        table[encode(&word, file.m)] = value;
    }
    if let Some(missing) = table.iter().position(|v| v.is_nan()) {
        return Err(Error::invalid(format!(
            "table is missing the word '{}'",
            symbol_key(&decode(missing, file.m, file.d))
        )));
    }
    Potential::new(file.m, file.q, file.d, table)
}

pub fn potential_to_json(potential: &Potential) -> String {
    let (m, d) = (potential.m(), potential.d());
    let table = potential
        .table()
        .iter()
        .enumerate()
        .map(|(c, &v)| (symbol_key(&decode(c, m, d)), v))
        .collect();
    let file = PotentialFile { m, q: potential.q(), d, table };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

/// `{"m":..,"order":..,"initial":[..],"kernel":[[..],..]}`.
pub fn markov_from_json(text: &str) -> Result<MarkovMeasure> {
    Ok(serde_json::from_str(text)?)
}

/// A float with 17 significant digits, enough to round-trip an `f64`.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() { format!("{x:.16e}") } else { x.to_string() }
}

/// CSV text with a header row; every cell is already formatted.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Writes `contents` to `path` through a temporary sibling and a rename, so
/// a failed run never leaves a partial file. `None` writes to stdout.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
        Some(path) => {
            let file_name = path
                .file_name()
                .ok_or_else(|| Error::invalid(format!("output path {} has no file name", path.display())))?;
            let mut tmp_name = std::ffi::OsString::from(".");
            tmp_name.push(file_name);
            tmp_name.push(".tmp");
            let tmp = path.with_file_name(tmp_name);
            fs::write(&tmp, contents)?;
            fs::rename(&tmp, path).inspect_err(|_| {
                let _ = fs::remove_file(&tmp);
            })?;
            Ok(())
        }
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIB: &str = r#"{"alphabet": 2, "states": ["free", "after1"], "initial": "free",
        "transitions": [{"from": "free", "symbol": 0, "to": "free"},
                        {"from": "free", "symbol": 1, "to": "after1"},
                        {"from": "after1", "symbol": 0, "to": "free"}]}"#;

    #[test]
    fn automaton_round_trip() {
        let a = automaton_from_json(FIB).unwrap();
        assert_eq!(a.prefix_count(5), PrefixAutomaton::golden_mean().prefix_count(5));
        let again = automaton_from_json(&automaton_to_json(&a)).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn automaton_rejections() {
        let dead = FIB.replace(r#"{"from": "after1", "symbol": 0, "to": "free"}"#, r#"{"from": "free", "symbol": 0, "to": "after1"}"#);
        assert!(automaton_from_json(&dead).is_err());
        assert!(automaton_from_json(&FIB.replace(r#""initial": "free""#, r#""initial": "nowhere""#)).is_err());
        assert!(automaton_from_json(&FIB.replace(r#""symbol": 1"#, r#""symbol": 2"#)).is_err());
        assert!(automaton_from_json(&FIB.replace(r#""alphabet": 2"#, r#""alphabet": 1"#)).is_err());
        assert!(automaton_from_json("{").is_err());
    }

    #[test]
    fn potential_round_trip() {
        let text = r#"{"m":2,"q":2,"d":2,"table":{"00":1.0,"01":-1.0,"10":-1.0,"11":1.0}}"#;
        let p = potential_from_json(text).unwrap();
        assert_eq!(p, Potential::phi2());
        assert_eq!(potential_from_json(&potential_to_json(&p)).unwrap(), p);
        assert!(potential_from_json(r#"{"m":2,"q":2,"d":2,"table":{"00":1.0,"01":-1.0,"10":-1.0}}"#).is_err());
        assert!(potential_from_json(r#"{"m":2,"q":2,"d":2,"table":{"00":1,"01":1,"10":1,"11":1,"20":1}}"#).is_err());
        assert!(potential_from_json(r#"{"m":2,"q":1,"d":2,"table":{"00":1,"01":1,"10":1,"11":1}}"#).is_err());
    }

    #[test]
    fn markov_json_is_validated() {
        let ok = r#"{"m":2,"order":1,"initial":[0.5,0.5],"kernel":[[0.9,0.1],[0.5,0.5]]}"#;
        let mu = markov_from_json(ok).unwrap();
        assert_eq!(mu.order(), 1);
        assert_eq!(markov_from_json(&serde_json::to_string(&mu).unwrap()).unwrap(), mu);
        assert!(markov_from_json(&ok.replace("0.9", "0.8")).is_err());
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 123_456_789.123_456_79] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(csv(&["a", "b"], &[vec!["1".into(), "2".into()]]), "a,b\n1,2\n");
    }

    #[test]
    fn output_is_atomic() {
        let dir = std::env::temp_dir().join(format!("mf-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.csv");
        write_output(Some(&path), "x\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "x\n");
        assert_eq!(fs::read_dir(&dir).unwrap().count(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }
}

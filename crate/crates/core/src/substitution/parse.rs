use std::collections::BTreeMap;

use serde::Deserialize;

use super::{Substitution, SubstitutionError};

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonWord {
    Letters(Vec<String>),
    Compact(String),
}

#[derive(Deserialize)]
struct JsonSubstitution {
    alphabet: Vec<String>,
    rules: BTreeMap<String, JsonWord>,
}

/// Parses the text format
///
/// ```text
/// alphabet: a b c
/// rules:
/// a: a a c a a
/// b: a b c a a
/// c: a c c b a
/// ```
///
/// or the JSON form `{"alphabet": [..], "rules": {"a": [..], ..}}`. Lines
/// starting with `#` are comments. When every letter is a single character a
/// rule may also be written without spaces (`a: aacaa`).
pub fn parse_substitution(text: &str) -> Result<Substitution, SubstitutionError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> SubstitutionError {
    SubstitutionError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_text(text: &str) -> Result<Substitution, SubstitutionError> {
    let mut alphabet: Option<(usize, Vec<String>)> = None;
    let mut in_rules = false;
    let mut rules: Vec<(usize, String, Vec<String>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(syntax(
                line,
                format!("expected `name: value`, found `{content}`"),
            ));
        };
        let key = key.trim();
        let value = value.trim();
        if !in_rules {
            match key {
                "alphabet" if alphabet.is_none() => {
                    let symbols: Vec<String> = value.split_whitespace().map(String::from).collect();
                    for (k, s) in symbols.iter().enumerate() {
                        if symbols[..k].contains(s) {
                            return Err(SubstitutionError::DuplicateSymbol {
                                line,
                                symbol: s.clone(),
                            });
                        }
                    }
                    if symbols.is_empty() {
                        return Err(SubstitutionError::EmptyAlphabet);
                    }
                    alphabet = Some((line, symbols));
                }
                "alphabet" => return Err(syntax(line, "second `alphabet:` line")),
                "rules" if alphabet.is_some() => {
                    if !value.is_empty() {
                        return Err(syntax(
                            line,
                            "`rules:` must be followed by one rule per line",
                        ));
                    }
                    in_rules = true;
                }
                "rules" => return Err(syntax(line, "`rules:` before `alphabet:`")),
                other => return Err(syntax(line, format!("unexpected key `{other}`"))),
            }
        } else {
            let tokens: Vec<String> = value.split_whitespace().map(String::from).collect();
            rules.push((line, key.to_string(), tokens));
        }
    }

    let (_, alphabet) = alphabet.ok_or_else(|| syntax(0, "missing `alphabet:` line"))?;
    if !in_rules {
        return Err(syntax(0, "missing `rules:` block"));
    }
    build(alphabet, rules)
}

fn build(
    alphabet: Vec<String>,
    rules: Vec<(usize, String, Vec<String>)>,
) -> Result<Substitution, SubstitutionError> {
    let single_chars = alphabet.iter().all(|s| s.chars().count() == 1);
    let index = |line: usize, s: &str| {
        alphabet
            .iter()
            .position(|x| x == s)
            .ok_or_else(|| SubstitutionError::UnknownSymbol {
                line,
                symbol: s.to_string(),
            })
    };
    let mut words: Vec<Option<(usize, Vec<usize>)>> = vec![None; alphabet.len()];
    let mut expected: Option<usize> = None;
    for (line, letter, tokens) in rules {
        let a = index(line, &letter)?;
        if words[a].is_some() {
            return Err(SubstitutionError::DuplicateRule { line, letter });
        }
        let tokens = if single_chars && tokens.len() == 1 && tokens[0].chars().count() > 1 {
            tokens[0].chars().map(String::from).collect()
        } else {
            tokens
        };
        let word = tokens
            .iter()
            .map(|t| index(line, t))
            .collect::<Result<Vec<_>, _>>()?;
        match expected {
            None => expected = Some(word.len()),
            Some(len) if len != word.len() => {
                return Err(SubstitutionError::NonConstantLength {
                    line,
                    letter,
                    expected: len,
                    found: word.len(),
                })
            }
            _ => {}
        }
        words[a] = Some((line, word));
    }
    let mut out = Vec::with_capacity(alphabet.len());
    for (a, w) in words.into_iter().enumerate() {
        match w {
            Some((_, word)) => out.push(word),
            None => {
                return Err(SubstitutionError::MissingRule {
                    letter: alphabet[a].clone(),
                })
            }
        }
    }
    Substitution::new(alphabet, out)
}

fn parse_json(text: &str) -> Result<Substitution, SubstitutionError> {
    let parsed: JsonSubstitution =
        serde_json::from_str(text).map_err(|e| SubstitutionError::Json(e.to_string()))?;
    let mut alphabet_seen = Vec::new();
    for s in &parsed.alphabet {
        if alphabet_seen.contains(s) {
            return Err(SubstitutionError::DuplicateSymbol {
                line: 0,
                symbol: s.clone(),
            });
        }
        alphabet_seen.push(s.clone());
    }
    // rules in alphabet order so that length errors name a deterministic letter
    let mut ordered = Vec::new();
    for letter in &parsed.alphabet {
        if let Some(w) = parsed.rules.get(letter) {
            let tokens = match w {
                JsonWord::Letters(v) => v.clone(),
                JsonWord::Compact(s) => s.split_whitespace().map(String::from).collect(),
            };
            ordered.push((0, letter.clone(), tokens));
        }
    }
    if let Some(extra) = parsed.rules.keys().find(|k| !parsed.alphabet.contains(k)) {
        return Err(SubstitutionError::UnknownSymbol {
            line: 0,
            symbol: extra.clone(),
        });
    }
    build(parsed.alphabet, ordered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::example_substitution;

    const EXAMPLE: &str = "alphabet: a b c\nrules:\na: a a c a a\nb: a b c a a\nc: a c c b a\n";

    #[test]
    fn parses_example_text() {
        assert_eq!(parse_substitution(EXAMPLE).unwrap(), example_substitution());
        assert_eq!(
            parse_substitution(&example_substitution().to_text()).unwrap(),
            example_substitution()
        );
    }

    #[test]
    fn compact_rules_and_comments() {
        let text = "# example\nalphabet: a b c\nrules:\na: aacaa\nb: abcaa # middle\nc: accba\n";
        assert_eq!(parse_substitution(text).unwrap(), example_substitution());
    }

    #[test]
    fn parses_json() {
        let json = r#"{"alphabet": ["a","b","c"], "rules": {"a": ["a","a","c","a","a"], "b": "a b c a a", "c": ["a","c","c","b","a"]}}"#;
        assert_eq!(parse_substitution(json).unwrap(), example_substitution());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "alphabet: a b\nrules:\na: a b\nb: a\n";
        assert_eq!(
            parse_substitution(text),
            Err(SubstitutionError::NonConstantLength {
                line: 4,
                letter: "b".into(),
                expected: 2,
                found: 1
            })
        );
        let text = "alphabet: a b\nrules:\na: a x\nb: a b\n";
        assert_eq!(
            parse_substitution(text),
            Err(SubstitutionError::UnknownSymbol {
                line: 3,
                symbol: "x".into()
            })
        );
        let text = "alphabet: a b\nrules:\na: a b\n";
        assert!(matches!(
            parse_substitution(text),
            Err(SubstitutionError::MissingRule { .. })
        ));
        assert!(matches!(
            parse_substitution("rules:\n"),
            Err(SubstitutionError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_substitution("{"),
            Err(SubstitutionError::Json(_))
        ));
    }

    #[test]
    fn multi_character_letters() {
        let text = "alphabet: x0 x1\nrules:\nx0: x1 x0 x1\nx1: x0 x1 x0\n";
        let s = parse_substitution(text).unwrap();
        assert_eq!(s.render(&[0, 1]), "x0 x1");
    }
}

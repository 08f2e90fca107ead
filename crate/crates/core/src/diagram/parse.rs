//! PD-code and signed Gauss-code text formats.

use std::collections::HashMap;
use std::str::FromStr;

use super::{ArcId, Crossing, Diagram};
use crate::error::{Error, Result};

impl Diagram {
    /// Parses whitespace-separated `X[a,b,c,d]` tokens (counterclockwise from
    /// the incoming under-arc) and `O` tokens for crossing-free circles.
    pub fn parse_pd(text: &str) -> Result<Diagram> {
        let (legs, free) = scan_pd(text)?;
        Diagram::from_unoriented(legs, free)
    }

    /// Parses a signed Gauss code: one word per component, each a sequence of
    /// visits `O<k><s>` / `U<k><s>` with `s` in `+`/`-`. Words are separated
    /// by whitespace or commas; `()` denotes a crossing-free component.
    pub fn parse_gauss(text: &str) -> Result<Diagram> {
        #[derive(Default)]
        struct Visits {
            under: Option<(ArcId, ArcId)>,
            over: Option<(ArcId, ArcId)>,
            sign: Option<bool>,
        }
        let mut free = 0;
        let mut next_arc = 1u32;
        let mut table: HashMap<u32, Visits> = HashMap::new();
        let mut order: Vec<u32> = Vec::new();
        for word in text.split(|c: char| c.is_whitespace() || c == ',') {
            if word.is_empty() {
                continue;
            }
            if word == "()" {
                free += 1;
                continue;
            }
            let visits = scan_gauss_word(word)?;
            let m = visits.len() as u32;
            let base = next_arc;
            next_arc += m;
            for (k, &(over, label, positive)) in visits.iter().enumerate() {
                let k = k as u32;
                let incoming = ArcId(base + (k + m - 1) % m);
                let outgoing = ArcId(base + k);
                let entry = table.entry(label).or_insert_with(|| {
                    order.push(label);
                    Visits::default()
                });
                let slot = if over { &mut entry.over } else { &mut entry.under };
                if slot.replace((incoming, outgoing)).is_some() {
                    return Err(Error::syntax(
                        word,
                        format!("crossing {label} visited twice on the same level"),
                    ));
                }
                if entry.sign.is_some_and(|s| s != positive) {
                    return Err(Error::syntax(word, format!("crossing {label} has conflicting signs")));
                }
                entry.sign = Some(positive);
            }
        }
        if order.is_empty() && free == 0 {
            return Err(Error::Empty);
        }
        order.sort_unstable();
        let mut crossings = Vec::with_capacity(order.len());
        for label in order {
            let v = &table[&label];
            let (Some((ui, uo)), Some((oi, oo))) = (v.under, v.over) else {
                return Err(Error::syntax(
                    label.to_string(),
                    "crossing needs one over and one under visit",
                ));
            };
            let c = if v.sign == Some(true) {
                Crossing::new([ui, oi, uo, oo], true)
            } else {
                Crossing::new([ui, oo, uo, oi], false)
            };
            crossings.push(c);
        }
        Diagram::new(crossings, free)
    }

    /// Signed Gauss code of the diagram; crossings are numbered from 1 in
    /// crossing order.
    pub fn to_gauss(&self) -> String {
        let mut words: Vec<String> = self
            .strand_components()
            .into_iter()
            .map(|comp| {
                comp.iter()
                    .map(|&d| {
                        let e = self.mate(d);
                        let c = &self.crossings[e >> 2];
                        format!(
                            "{}{}{}",
                            if Diagram::is_over(e) { 'O' } else { 'U' },
                            (e >> 2) + 1,
                            if c.sign() > 0 { '+' } else { '-' }
                        )
                    })
                    .collect()
            })
            .collect();
        words.extend(std::iter::repeat_n("()".to_string(), self.free_circles));
        words.join(" ")
    }
}

impl FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Diagram> {
        Diagram::parse_pd(s)
    }
}

pub(crate) fn scan_pd(text: &str) -> Result<(Vec<[ArcId; 4]>, usize)> {
    let mut legs = Vec::new();
    let mut free = 0;
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match ch {
            'O' => {
                i += 1;
                if i < bytes.len() && !bytes[i].is_whitespace() {
                    let tok: String = bytes[start..].iter().take_while(|c| !c.is_whitespace()).collect();
                    return Err(Error::syntax(tok, "unexpected character after O"));
                }
                free += 1;
            }
            'X' => {
                let close = bytes[i..]
                    .iter()
                    .position(|&c| c == ']')
                    .map(|k| i + k)
                    .ok_or_else(|| Error::syntax(bytes[start..].iter().collect::<String>(), "missing ]"))?;
                let tok: String = bytes[start..=close].iter().collect();
                i = close + 1;
                let body = tok
                    .strip_prefix("X[")
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(|| Error::syntax(&tok, "expected X[a,b,c,d]"))?;
                let nums: Vec<&str> = body.split(',').map(str::trim).collect();
                if nums.len() != 4 {
                    return Err(Error::syntax(&tok, "a crossing needs exactly 4 arcs"));
                }
                let mut quad = [ArcId(0); 4];
                for (k, n) in nums.iter().enumerate() {
                    let v: u32 = n
                        .parse()
                        .map_err(|_| Error::syntax(&tok, format!("`{n}` is not a positive integer")))?;
                    if v == 0 {
                        return Err(Error::syntax(&tok, "arc labels must be positive"));
                    }
                    quad[k] = ArcId(v);
                }
                if i < bytes.len() && !bytes[i].is_whitespace() {
                    return Err(Error::syntax(tok, "tokens must be separated by whitespace"));
                }
                legs.push(quad);
            }
            _ => {
                let tok: String = bytes[start..].iter().take_while(|c| !c.is_whitespace()).collect();
                return Err(Error::syntax(tok, "expected X[...] or O"));
            }
        }
    }
    Ok((legs, free))
}

fn scan_gauss_word(word: &str) -> Result<Vec<(bool, u32, bool)>> {
    let chars: Vec<char> = word.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let over = match chars[i] {
            'O' | 'o' => true,
            'U' | 'u' => false,
            _ => return Err(Error::syntax(word, "visit must start with O or U")),
        };
        i += 1;
        let s = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let label: u32 = chars[s..i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| Error::syntax(word, "missing crossing number"))?;
        let positive = match chars.get(i) {
            Some('+') => true,
            Some('-') => false,
            _ => return Err(Error::syntax(word, "missing sign marker")),
        };
        i += 1;
        out.push((over, label, positive));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    pub(crate) const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn unknot_and_kink() {
        let o = Diagram::parse_pd("O").unwrap();
        assert_eq!(o.crossing_count(), 0);
        assert_eq!(o.component_count(), 1);
        let k = Diagram::parse_pd("X[1,2,2,1]").unwrap();
        assert_eq!(k.crossing_count(), 1);
        assert_eq!(k.component_count(), 1);
    }

    #[test]
    fn trefoil_parses() {
        let t = Diagram::parse_pd(TREFOIL).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.writhe().abs(), 3);
    }

    #[test]
    fn syntax_errors() {
        for bad in ["X[1,2,3]", "X[1,2,3,a]", "Y", "X[1,2,2,1]O", "X[0,1,1,0]", "X[1,2,2,1"] {
            assert!(matches!(Diagram::parse_pd(bad), Err(Error::Syntax { .. })), "{bad}");
        }
        assert_eq!(Diagram::parse_pd("   "), Err(Error::Empty));
    }

    #[test]
    fn pairing_error() {
        assert!(matches!(
            Diagram::parse_pd("X[1,2,3,1]"),
            Err(Error::Pairing { .. })
        ));
    }

    #[test]
    fn orientation_error() {
        // The under-strand of both crossings would have to run both ways along arc 1.
        let r = Diagram::parse_pd("X[1,2,3,4] X[1,4,3,2]");
        assert!(matches!(r, Err(Error::Orientation(_))), "{r:?}");
    }

    #[test]
    fn gauss_kink_matches_pd() {
        let g = Diagram::parse_gauss("O1+U1+").unwrap();
        assert_eq!(g.render(), "X[1,2,2,1]");
    }

    #[test]
    fn virtual_gauss_code_is_a_genus_error() {
        let r = Diagram::parse_gauss("O1+O2+U1+U2+");
        assert!(matches!(r, Err(Error::Genus { .. })), "{r:?}");
    }

    #[test]
    fn gauss_round_trip_trefoil() {
        let t = Diagram::parse_pd(TREFOIL).unwrap();
        let g = t.to_gauss();
        let back = Diagram::parse_gauss(&g).unwrap();
        assert_eq!(back.canonical(), t.canonical());
        assert_eq!(back.writhe(), t.writhe());
    }

    #[test]
    fn gauss_errors() {
        assert!(Diagram::parse_gauss("O1+O1+").is_err());
        assert!(Diagram::parse_gauss("O1+U1-").is_err());
        assert!(Diagram::parse_gauss("O1+").is_err());
        assert!(Diagram::parse_gauss("X1+").is_err());
        assert_eq!(Diagram::parse_gauss("() ()").unwrap().component_count(), 2);
    }
}

//! Text literals for periodic sets.
//!
//! ```text
//! SET     := [TORSION ';'] CLAUSE (',' CLAUSE)*
//! TORSION := 'C=' d1 ('x' d2)*
//! CLAUSE  := [TUPLE] ( '{' [int (',' int)*] '}' | int ('+'|'-') p ('N'|'Z') )
//! TUPLE   := '(' ( '*' | int (',' int)* ) ')'
//! ```
//!
//! `a+pN` is a right progression, `a-pN` a left one and `a+pZ` a full residue
//! line. A tuple prefix sets the torsion coordinate of the clause, `(*)` means
//! every torsion value, and no prefix means torsion zero.

use super::{AmbientGroup, PeriodicSet, Tail};
use crate::error::{Error, Result};

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn unsigned(&mut self) -> Result<i64> {
        self.skip_ws();
        if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            return self.err("expected a positive integer");
        }
        self.int()
    }
}

/// Parse an ambient prefix alone, e.g. `C=2x4`.
fn parse_torsion(p: &mut Parser) -> Result<Option<AmbientGroup>> {
    let save = p.pos;
    if p.peek() != Some('C') {
        return Ok(None);
    }
    p.pos += 1;
    if !p.eat('=') {
        p.pos = save;
        return p.err("expected 'C='");
    }
    let mut factors = vec![p.unsigned()?];
    while p.eat('x') {
        factors.push(p.unsigned()?);
    }
    p.expect(';')?;
    if factors == [1] {
        factors.clear();
    }
    let at = p.pos;
    AmbientGroup::new(factors)
        .map(Some)
        .map_err(|e| Error::Parse {
            position: at,
            message: e.to_string(),
        })
}

/// Parse a literal. An explicit `C=…;` prefix wins over `ambient`; with
/// neither, the ambient is ℤ.
pub fn parse_in(text: &str, ambient: Option<&AmbientGroup>) -> Result<PeriodicSet> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let g = match parse_torsion(&mut p)? {
        Some(g) => {
            if let Some(a) = ambient {
                if a != &g {
                    return Err(Error::AmbientMismatch {
                        left: g.to_string(),
                        right: a.to_string(),
                    });
                }
            }
            g
        }
        None => ambient.cloned().unwrap_or_else(AmbientGroup::integers),
    };
    let mut acc = PeriodicSet::empty(&g);
    if p.peek().is_none() {
        return p.err("empty literal");
    }
    loop {
        let torsions: Vec<usize> = if p.eat('(') {
            if p.eat('*') {
                p.expect(')')?;
                (0..g.order()).collect()
            } else {
                let mut t = vec![p.int()?];
                while p.eat(',') {
                    t.push(p.int()?);
                }
                p.expect(')')?;
                if t.len() != g.rank() || t.iter().zip(g.factors()).any(|(&x, &d)| x < 0 || x >= d)
                {
                    return p.err(format!("torsion tuple {t:?} does not fit {g}"));
                }
                vec![g.index(&t)?]
            }
        } else {
            vec![0]
        };
        let piece = if p.eat('{') {
            let mut ns = Vec::new();
            if !p.eat('}') {
                ns.push(p.int()?);
                while p.eat(',') {
                    ns.push(p.int()?);
                }
                p.expect('}')?;
            }
            PeriodicSet::from_elements(
                &g,
                torsions
                    .iter()
                    .flat_map(|&c| ns.iter().map(move |&n| (c, n))),
            )
        } else {
            let a = p.int()?;
            let sign = if p.eat('+') {
                1
            } else if p.eat('-') {
                -1
            } else {
                // A bare integer is a singleton.
                let s = PeriodicSet::from_elements(&g, torsions.iter().map(|&c| (c, a)));
                acc = acc.union(&s)?;
                if p.eat(',') {
                    continue;
                }
                break;
            };
            let period = p.unsigned()?;
            if period < 1 || period as usize > super::MAX_PERIOD {
                return p.err("period out of range");
            }
            let tail = match p.peek() {
                Some('N') => Tail::Right,
                Some('Z') => Tail::Both,
                _ => return p.err("expected 'N' or 'Z'"),
            };
            p.pos += 1;
            let tail = match (tail, sign) {
                (Tail::Right, -1) => Tail::Left,
                (t, _) => t,
            };
            let mut s = PeriodicSet::empty(&g);
            for &c in &torsions {
                s = s.union(&PeriodicSet::progression(&g, c, a, period as usize, tail))?;
            }
            s
        };
        acc = acc.union(&piece)?;
        if !p.eat(',') {
            break;
        }
    }
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(acc)
}

pub fn parse(text: &str) -> Result<PeriodicSet> {
    parse_in(text, None)
}

fn join(ns: &[i64]) -> String {
    ns.iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Canonical literal. Re-parsing it gives back an equal set.
pub fn to_literal(s: &PeriodicSet) -> String {
    let g = s.ambient();
    let p = s.period();
    let pi = p as i64;
    let (lo, hi) = s.window();
    let mut clauses = Vec::new();
    for c in 0..g.order() {
        let prefix = if g.rank() == 0 {
            String::new()
        } else {
            let t = g.coords(c);
            format!(
                "({})",
                t.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        };
        let mut covered = vec![false; (hi - lo) as usize];
        let mut tails = Vec::new();
        for r in 0..p {
            let k = c * p + r;
            let in_r = s.right_bits().get(k);
            let in_l = s.left_bits().get(k);
            if in_r && in_l && (lo..hi).all(|n| n.rem_euclid(pi) as usize != r || s.contains(c, n))
            {
                for n in lo..hi {
                    if n.rem_euclid(pi) as usize == r {
                        covered[(n - lo) as usize] = true;
                    }
                }
                tails.push(format!("{prefix}{r}+{p}Z"));
                continue;
            }
            if in_r {
                let mut st = s.right_class_start(r);
                while st - pi >= lo && s.contains(c, st - pi) {
                    st -= pi;
                    covered[(st - lo) as usize] = true;
                }
                tails.push(format!("{prefix}{st}+{p}N"));
            }
            if in_l {
                let mut en = s.left_class_end(r);
                while en + pi < hi && s.contains(c, en + pi) {
                    en += pi;
                    covered[(en - lo) as usize] = true;
                }
                tails.push(format!("{prefix}{en}-{p}N"));
            }
        }
        let singles: Vec<i64> = (lo..hi)
            .filter(|&n| s.contains(c, n) && !covered[(n - lo) as usize])
            .collect();
        if !singles.is_empty() {
            clauses.push(format!("{prefix}{{{}}}", join(&singles)));
        }
        clauses.extend(tails);
    }
    let body = if clauses.is_empty() {
        "{}".to_string()
    } else {
        clauses.join(", ")
    };
    if g.rank() == 0 {
        body
    } else {
        let f: Vec<String> = g.factors().iter().map(|d| d.to_string()).collect();
        format!("C={}; {body}", f.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_basic_forms() {
        let s = parse("{1}, 0+2N").unwrap();
        assert!(s.contains(0, 1) && s.contains(0, 4) && !s.contains(0, 3) && !s.contains(0, -2));
        assert_eq!(to_literal(&s), "{1}, 0+2N");
        let l = parse("3-2N").unwrap();
        assert!(l.contains(0, 3) && l.contains(0, -1) && !l.contains(0, 5));
        assert_eq!(
            parse("0+1Z").unwrap(),
            PeriodicSet::full(&AmbientGroup::integers())
        );
        assert!(parse("{}").unwrap().is_empty());
    }

    #[test]
    fn torsion_prefixes() {
        let s = parse("C=2; (1){0}, (0)0+1N").unwrap();
        assert!(s.contains(1, 0) && !s.contains(1, 1) && s.contains(0, 7));
        let all = parse("C=2; (*)0+1N").unwrap();
        assert!(all.contains(1, 3) && all.contains(0, 3));
        assert_eq!(parse(&to_literal(&all)).unwrap(), all);
    }

    #[test]
    fn errors_carry_positions() {
        match parse("{1, x}") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse("C=2x3; {0}").is_err());
        assert!(parse("0+0N").is_err());
        assert!(parse("C=2; (2){0}").is_err());
    }

    #[test]
    fn round_trips() {
        for lit in [
            "{-3, 5}, 1+4N, -2-3N",
            "0+3Z, {1}",
            "C=2x2; (1,1){0, 3}, (0,1)2+4N, (1,0)0-1N",
        ] {
            let s = parse(lit).unwrap();
            assert_eq!(parse(&to_literal(&s)).unwrap(), s, "{lit}");
        }
    }
}

//! Text grammar: `a<k>`, `A<k>`, `T(s)`, `T(s,d)`, `T'(..)`, `R(..)`, `R'(..)`,
//! whitespace separated. Empty input (or a lone `ε`) is the identity.

use super::{Letter, Segment, Sign, Tail, Word};
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn err(&self, at: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: at,
            message: message.into(),
        }
    }

    fn number(&mut self) -> Result<(u64, usize)> {
        let at = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if at == self.pos {
            return Err(self.err(at, "expected a decimal number"));
        }
        let n = self.src[at..self.pos]
            .parse::<u64>()
            .map_err(|_| self.err(at, "number too large"))?;
        Ok((n, at))
    }

    fn positive(&mut self) -> Result<u64> {
        let (n, at) = self.number()?;
        if n == 0 {
            return Err(Error::ZeroIndex { offset: at });
        }
        Ok(n)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        let at = self.pos;
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(self.err(at, format!("expected {want:?}, found {c:?}"))),
            None => Err(self.err(at, format!("expected {want:?}, found end of input"))),
        }
    }

    fn tail(&mut self) -> Result<(u64, u64)> {
        self.expect('(')?;
        self.skip_ws();
        let start = self.positive()?;
        self.skip_ws();
        let stride = if self.peek() == Some(',') {
            self.bump();
            self.skip_ws();
            self.positive()?
        } else {
            1
        };
        self.expect(')')?;
        Ok((start, stride))
    }
}

pub(super) fn parse_word(text: &str) -> Result<Word> {
    let mut lx = Lexer { src: text, pos: 0 };
    let mut segments = Vec::new();
    let mut run: Vec<Letter> = Vec::new();
    loop {
        lx.skip_ws();
        let at = lx.pos;
        let Some(c) = lx.bump() else { break };
        match c {
            'ε' => {}
            'a' | 'A' => {
                let index = lx.positive()?;
                let sign = if c == 'a' { Sign::Pos } else { Sign::Neg };
                run.push(Letter::new(index, sign));
            }
            'T' | 'R' => {
                let sign = if lx.peek() == Some('\'') {
                    lx.bump();
                    Sign::Neg
                } else {
                    Sign::Pos
                };
                let (start, stride) = lx.tail()?;
                if !run.is_empty() {
                    segments.push(Segment::Finite(std::mem::take(&mut run)));
                }
                let t = Tail::new(start, stride, sign);
                segments.push(if c == 'T' {
                    Segment::Forward(t)
                } else {
                    Segment::Backward(t)
                });
            }
            other => return Err(lx.err(at, format!("unexpected character {other:?}"))),
        }
        // tokens must be separated
        if let Some(next) = lx.peek() {
            if !next.is_whitespace() {
                return Err(lx.err(lx.pos, format!("expected whitespace, found {next:?}")));
            }
        }
    }
    if !run.is_empty() {
        segments.push(Segment::Finite(run));
    }
    Word::from_segments(segments)
}

fn tail_token(kind: char, t: &Tail) -> String {
    let prime = if t.sign == Sign::Neg { "'" } else { "" };
    if t.stride == 1 {
        format!("{kind}{prime}({})", t.start)
    } else {
        format!("{kind}{prime}({},{})", t.start, t.stride)
    }
}

pub(super) fn format_word(w: &Word) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    let mut tokens = Vec::new();
    for s in w.segments() {
        match s {
            Segment::Finite(l) => tokens.extend(l.iter().map(|x| x.to_string())),
            Segment::Forward(t) => tokens.push(tail_token('T', t)),
            Segment::Backward(t) => tokens.push(tail_token('R', t)),
        }
    }
    tokens.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_finite_run_as_one_segment() {
        let w = parse_word("a2 a1 a1 A2").unwrap();
        assert_eq!(
            w.segments(),
            &[Segment::Finite(vec![
                Letter::pos(2),
                Letter::pos(1),
                Letter::pos(1),
                Letter::neg(2)
            ])]
        );
    }

    #[test]
    fn empty_input_is_identity() {
        assert!(parse_word("").unwrap().is_empty());
        assert!(parse_word("   ").unwrap().is_empty());
        assert!(parse_word("ε").unwrap().is_empty());
    }

    #[test]
    fn parses_tails() {
        let w = parse_word("T(1)").unwrap();
        assert_eq!(w.segments(), &[Segment::Forward(Tail::new(1, 1, Sign::Pos))]);
        let w = parse_word("R'(2, 3) T'(4,2)").unwrap();
        assert_eq!(
            w.segments(),
            &[
                Segment::Backward(Tail::new(2, 3, Sign::Neg)),
                Segment::Forward(Tail::new(4, 2, Sign::Neg))
            ]
        );
    }

    #[test]
    fn reports_errors_with_offsets() {
        assert_eq!(parse_word("a1 a0"), Err(Error::ZeroIndex { offset: 4 }));
        assert!(matches!(parse_word("a1 b2"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_word("T(1"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_word("a1a2"), Err(Error::Syntax { offset: 2, .. })));
        assert_eq!(parse_word("T(0)"), Err(Error::ZeroIndex { offset: 2 }));
        assert!(matches!(parse_word("a"), Err(Error::Syntax { offset: 1, .. })));
    }

    #[test]
    fn formats_canonical_tokens() {
        for text in ["a1 A2", "T(1)", "T(3,2)", "R'(1)", "R(2,2) a1", "ε"] {
            assert_eq!(format_word(&parse_word(text).unwrap()), text);
        }
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        let letter = (1u64..6, any::<bool>())
            .prop_map(|(i, s)| Segment::Finite(vec![Letter::new(i, if s { Sign::Pos } else { Sign::Neg })]));
        let tail = (1u64..6, 1u64..4, any::<bool>(), any::<bool>()).prop_map(|(s, d, pos, fwd)| {
            let t = Tail::new(s, d, if pos { Sign::Pos } else { Sign::Neg });
            if fwd {
                Segment::Forward(t)
            } else {
                Segment::Backward(t)
            }
        });
        prop::collection::vec(prop_oneof![letter, tail], 0..6).prop_map(Word::from_raw)
    }

    proptest! {
        #[test]
        fn format_then_parse_is_equal(w in arb_word()) {
            let back = parse_word(&format_word(&w)).unwrap();
            prop_assert_eq!(back.reduce(), w.reduce());
        }
    }
}

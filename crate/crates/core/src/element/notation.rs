//! Surface notation for elements, finite words and eventually periodic words.
//!
//! ```text
//! element  := product
//! product  := power ( ['*'] power )*
//! power    := atom ( '^' exponent )?
//! exponent := ['-'] digits | '{' ['-'] digits '}' | '(' ['-'] digits ')'
//! atom     := label | '1' | 'id' | '(' product ')'
//!           | 'section' '(' product ',' word ')' | 'inv' '(' product ')'
//! word     := base-36 digits, or 'ε' / nothing for the empty word
//! epword   := word '(' word ')' '^inf'  |  word letter '^inf'
//! ```
//!
//! Labels are identifiers (`[A-Za-z_][A-Za-z0-9_']*`). An identifier that is
//! not a label but spells a sequence of one-character labels is read as their
//! product, so `acacbc` means `a*c*a*c*b*c`. `^∞` is accepted for `^inf`.

use thiserror::Error;

use super::{compose_raw, invert_raw, power_raw, section_raw, ElementError, EPWord, GroupElement, Word};
use crate::mealy::{Letter, MealyAutomaton, SignedState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {position}: expected {expected}")]
pub struct NotationError {
    /// Character offset into the input.
    pub position: usize,
    pub expected: String,
}

struct Cursor<'t> {
    chars: Vec<char>,
    pos: usize,
    _text: &'t str,
}

impl<'t> Cursor<'t> {
    fn new(text: &'t str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            _text: text,
        }
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

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn fail(&self, expected: impl Into<String>) -> NotationError {
        NotationError {
            position: self.pos,
            expected: expected.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), NotationError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.fail(format!("`{c}`")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn identifier(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == '_' => {}
            _ => return None,
        }
        while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || matches!(self.chars[self.pos], '_' | '\'')) {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Result<i64, NotationError> {
        self.skip_ws();
        let negative = self.chars.get(self.pos) == Some(&'-');
        if negative {
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.fail("integer exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let value: i64 = digits.parse().map_err(|_| self.fail("exponent that fits in 64 bits"))?;
        Ok(if negative { -value } else { value })
    }

    fn letters(&mut self, k: Option<usize>) -> Result<Vec<Letter>, NotationError> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&'ε') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        while let Some(&c) = self.chars.get(self.pos) {
            let Some(d) = c.to_digit(36) else { break };
            if c.is_ascii_uppercase() {
                break;
            }
            if let Some(k) = k {
                if d as usize >= k {
                    return Err(self.fail(format!("letter below {k}")));
                }
            }
            out.push(d as Letter);
            self.pos += 1;
        }
        Ok(out)
    }
}

struct ElementParser<'a, 't> {
    aut: &'a MealyAutomaton,
    cur: Cursor<'t>,
}

impl ElementParser<'_, '_> {
    fn product(&mut self) -> Result<Word, NotationError> {
        let mut word = self.power()?;
        loop {
            match self.cur.peek() {
                Some('*') => {
                    self.cur.pos += 1;
                    let rhs = self.power()?;
                    word = compose_raw(&word, &rhs);
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '(' || c == '1' => {
                    let rhs = self.power()?;
                    word = compose_raw(&word, &rhs);
                }
                _ => return Ok(word),
            }
        }
    }

    fn power(&mut self) -> Result<Word, NotationError> {
        let base = self.atom()?;
        Ok(match self.exponent()? {
            Some(n) => power_raw(&base, n),
            None => base,
        })
    }

    fn exponent(&mut self) -> Result<Option<i64>, NotationError> {
        if !self.cur.eat('^') {
            return Ok(None);
        }
        let n = if self.cur.eat('{') {
            let n = self.cur.integer()?;
            self.cur.expect('}')?;
            n
        } else if self.cur.eat('(') {
            let n = self.cur.integer()?;
            self.cur.expect(')')?;
            n
        } else {
            self.cur.integer()?
        };
        Ok(Some(n))
    }

    fn atom(&mut self) -> Result<Word, NotationError> {
        if self.cur.eat('(') {
            let w = self.product()?;
            self.cur.expect(')')?;
            return Ok(w);
        }
        if self.cur.eat('1') {
            return Ok(Vec::new());
        }
        self.cur.skip_ws();
        let start = self.cur.pos;
        let Some(ident) = self.cur.identifier() else {
            return Err(self.cur.fail("state label, `1` or `(`"));
        };
        if let Some(s) = self.aut.state_index(&ident) {
            return Ok(vec![SignedState::positive(s)]);
        }
        match ident.as_str() {
            "id" => return Ok(Vec::new()),
            "section" => {
                self.cur.expect('(')?;
                let w = self.product()?;
                self.cur.expect(',')?;
                let v = self.cur.letters(Some(self.aut.alphabet_size()))?;
                self.cur.expect(')')?;
                return Ok(section_raw(self.aut, &w, &v));
            }
            "inv" => {
                self.cur.expect('(')?;
                let w = self.product()?;
                self.cur.expect(')')?;
                return Ok(invert_raw(&w));
            }
            _ => {}
        }
        // Juxtaposed one-character labels, e.g. `acacbc`.
        let mut word = Vec::new();
        for (i, c) in ident.chars().enumerate() {
            match self.aut.state_index(&c.to_string()) {
                Some(s) => word.push(SignedState::positive(s)),
                None => {
                    return Err(NotationError {
                        position: start + i,
                        expected: format!("state label (`{ident}` is not one)"),
                    })
                }
            }
        }
        // An exponent binds to the last letter only, as in `ab^2`.
        if let Some(n) = self.exponent()? {
            let last = word.pop().expect("identifier is nonempty");
            word.extend(power_raw(&[last], n));
            super::free_reduce(&mut word);
        }
        Ok(word)
    }
}

/// Parses element notation against an automaton's state labels.
pub fn parse_element<'a>(aut: &'a MealyAutomaton, text: &str) -> Result<GroupElement<'a>, ElementError> {
    let mut p = ElementParser { aut, cur: Cursor::new(text) };
    let word = p.product()?;
    if !p.cur.at_end() {
        return Err(p.cur.fail("`*`, `^` or end of input").into());
    }
    Ok(GroupElement::from_reduced(aut, word))
}

/// Parses a finite word of base-36 digit letters; `ε` or the empty string is
/// the empty word.
pub fn parse_word(text: &str) -> Result<Vec<Letter>, NotationError> {
    let mut cur = Cursor::new(text);
    let w = cur.letters(None)?;
    if !cur.at_end() {
        return Err(cur.fail("letter digit or end of input"));
    }
    Ok(w)
}

/// Parses `u(w)^inf` (or the shorthand `u x^inf` for a one-letter period)
/// into canonical form.
pub fn parse_epword(text: &str) -> Result<EPWord, ElementError> {
    let mut cur = Cursor::new(text);
    let mut u = cur.letters(None)?;
    let period = if cur.eat('(') {
        let w = cur.letters(None)?;
        cur.expect(')')?;
        w
    } else {
        match u.pop() {
            Some(x) => vec![x],
            None => return Err(cur.fail("`(` opening the period").into()),
        }
    };
    if !cur.eat('^') {
        return Err(cur.fail("`^inf`").into());
    }
    if !(cur.eat_str("inf") || cur.eat('∞')) {
        return Err(cur.fail("`inf`").into());
    }
    if !cur.at_end() {
        return Err(cur.fail("end of input").into());
    }
    if period.is_empty() {
        return Err(ElementError::EmptyPeriod);
    }
    EPWord::new(&u, &period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mealy::parse_automaton;

    fn m() -> MealyAutomaton {
        parse_automaton("alphabet: 2\nstate a: 0->1@b ; 1->0@b\nstate b: 0->0@c ; 1->1@c\nstate c: 0->0@b ; 1->1@a\n").unwrap()
    }

    fn show(aut: &MealyAutomaton, s: &str) -> String {
        parse_element(aut, s).unwrap().to_string()
    }

    #[test]
    fn element_forms() {
        let a = m();
        assert_eq!(show(&a, "a^2*b*c"), "a^2*b*c");
        assert_eq!(show(&a, "a^-1"), "a^-1");
        assert_eq!(show(&a, "a^{-2}"), "a^-2");
        assert_eq!(show(&a, "acacbc"), "a*c*a*c*b*c");
        assert_eq!(show(&a, "(ca)^2"), "c*a*c*a");
        assert_eq!(show(&a, "(c a)^-1"), "a^-1*c^-1");
        assert_eq!(show(&a, "ab^2"), "a*b^2");
        assert_eq!(show(&a, "b*b^-1"), "1");
        assert_eq!(show(&a, "1"), "1");
        assert_eq!(show(&a, "id*a"), "a");
        assert_eq!(show(&a, "inv(a*b)"), "b^-1*a^-1");
        assert_eq!(show(&a, "section(b*c,1)"), "c*a");
        assert_eq!(show(&a, "section(b*c, 1) * a"), "c*a^2");
    }

    #[test]
    fn element_errors_report_position() {
        let a = m();
        let err = parse_element(&a, "a*q").unwrap_err();
        assert!(matches!(err, ElementError::Notation(NotationError { position: 2, .. })), "{err}");
        let err = parse_element(&a, "a^").unwrap_err();
        assert!(matches!(err, ElementError::Notation(NotationError { position: 2, .. })), "{err}");
        let err = parse_element(&a, "section(a,2)").unwrap_err();
        assert!(matches!(err, ElementError::Notation(NotationError { position: 10, .. })), "{err}");
        assert!(parse_element(&a, "(a").is_err());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("0100").unwrap(), vec![0, 1, 0, 0]);
        assert_eq!(parse_word("").unwrap(), Vec::<Letter>::new());
        assert_eq!(parse_word("ε").unwrap(), Vec::<Letter>::new());
        assert!(parse_word("01x!").is_err());
    }

    #[test]
    fn epwords() {
        assert_eq!(parse_epword("001(101)^inf").unwrap().to_string(), "0(011)^inf");
        assert_eq!(parse_epword("(101)^inf").unwrap().to_string(), "(101)^inf");
        assert_eq!(parse_epword("10^inf").unwrap().to_string(), "1(0)^inf");
        assert_eq!(parse_epword("1(01)^∞").unwrap().to_string(), "(10)^inf");
        assert_eq!(parse_epword("11(1)^inf").unwrap().to_string(), "(1)^inf");
        assert!(parse_epword("()^inf").is_err());
        assert!(parse_epword("(01)").is_err());
        assert!(parse_epword("^inf").is_err());
    }
}

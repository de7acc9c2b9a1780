use super::{FGAbelianGroup, FiniteAbelianGroup, GroupError};

/// Parses `term (x term)*` where a term is `C<n>`, `Z` or `Z^<g>`.
///
/// Whitespace is ignored everywhere; `×` is accepted as a separator as
/// well as `x`. At most one free term may appear.
pub fn parse_group(text: &str) -> Result<FGAbelianGroup, GroupError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser { chars: &chars, at: 0, end: text.len() };

    let mut orders = Vec::new();
    let mut free: Option<u64> = None;
    loop {
        match p.term()? {
            Term::Cyclic(n) => orders.push(n),
            Term::Free(g) => {
                if free.replace(g).is_some() {
                    return Err(GroupError::MultipleFreeTerms);
                }
            }
        }
        match p.peek() {
            None => break,
            Some('x' | 'X' | '×' | '*') => p.at += 1,
            Some(c) => return Err(p.error(format!("expected 'x', found '{c}'"))),
        }
    }
    let torsion = FiniteAbelianGroup::from_cyclic(&orders)?;
    Ok(FGAbelianGroup::new(torsion, free.unwrap_or(0)))
}

enum Term {
    Cyclic(u64),
    Free(u64),
}

struct Parser<'a> {
    chars: &'a [(usize, char)],
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(i, _)| i)
    }

    fn error(&self, msg: String) -> GroupError {
        GroupError::Syntax { pos: self.pos(), msg }
    }

    fn term(&mut self) -> Result<Term, GroupError> {
        match self.peek() {
            Some('C' | 'c') => {
                self.at += 1;
                let n = self.number()?;
                if n == 0 {
                    return Err(GroupError::ZeroOrder);
                }
                Ok(Term::Cyclic(n))
            }
            Some('Z' | 'z') => {
                self.at += 1;
                if self.peek() == Some('^') {
                    self.at += 1;
                    Ok(Term::Free(self.number()?))
                } else {
                    Ok(Term::Free(1))
                }
            }
            Some(c) => Err(self.error(format!("expected 'C<n>' or 'Z', found '{c}'"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }

    fn number(&mut self) -> Result<u64, GroupError> {
        let start = self.at;
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or(GroupError::Overflow)?;
            self.at += 1;
        }
        if self.at == start {
            return Err(self.error("expected a number".into()));
        }
        Ok(value)
    }
}

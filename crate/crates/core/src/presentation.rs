//! Abelianization of finitely presented groups.
//!
//! Relators are words such as `x^4`, `[x,y] z^-2`, `(xy)^3` or `x y = y x`;
//! a run of letters is split into the longest matching generator names.
//! Only exponent sums matter after abelianizing, so each relator is parsed
//! straight into its exponent vector.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{cokernel_structure, AbelianGroupStructure, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("unknown generator {name:?} in relator {relator}")]
    UnknownGenerator { name: String, relator: usize },
    #[error("relator {relator}, position {position}: {message}")]
    Parse { relator: usize, position: usize, message: String },
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    generators: &'a [String],
    relator: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> PresentationError {
        PresentationError::Parse { relator: self.relator, position: self.pos, message: message.into() }
    }

    fn skip_space(&mut self) {
        while self.pos < self.chars.len() && (self.chars[self.pos].is_whitespace() || self.chars[self.pos] == '*')
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_space();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), PresentationError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn relation(&mut self) -> Result<Vec<BigInt>, PresentationError> {
        let mut v = self.word()?;
        if self.peek() == Some('=') {
            self.pos += 1;
            let rhs = self.word()?;
            for (a, b) in v.iter_mut().zip(rhs) {
                *a -= b;
            }
        }
        if self.peek().is_some() {
            return Err(self.error("unexpected character"));
        }
        Ok(v)
    }

    fn word(&mut self) -> Result<Vec<BigInt>, PresentationError> {
        let mut v = vec![BigInt::zero(); self.generators.len()];
        while let Some(c) = self.peek() {
            if matches!(c, ')' | ']' | ',' | '=') {
                break;
            }
            let f = self.factor()?;
            for (a, b) in v.iter_mut().zip(f) {
                *a += b;
            }
        }
        Ok(v)
    }

    fn factor(&mut self) -> Result<Vec<BigInt>, PresentationError> {
        let mut v = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            let e = self.exponent()?;
            for a in &mut v {
                *a *= &e;
            }
        }
        Ok(v)
    }

    fn exponent(&mut self) -> Result<BigInt, PresentationError> {
        let braced = self.peek() == Some('{');
        if braced {
            self.pos += 1;
        }
        self.skip_space();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-' | '+' | '−')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect::<String>().replace('−', "-");
        let e = text.parse::<BigInt>().map_err(|_| self.error("expected an integer exponent"))?;
        if braced {
            self.expect('}')?;
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Vec<BigInt>, PresentationError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.word()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('[') => {
                // [u, v] = u⁻¹v⁻¹uv has exponent sum zero
                self.pos += 1;
                self.word()?;
                self.expect(',')?;
                self.word()?;
                self.expect(']')?;
                Ok(vec![BigInt::zero(); self.generators.len()])
            }
            Some('1') => {
                self.pos += 1;
                Ok(vec![BigInt::zero(); self.generators.len()])
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                // longest generator name at this position, so `xy` reads as `x y`
                let rest = &self.chars[self.pos..];
                let hit = self
                    .generators
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| {
                        let g: Vec<char> = g.chars().collect();
                        rest.starts_with(&g)
                    })
                    .max_by_key(|(_, g)| g.chars().count());
                let Some((k, g)) = hit else {
                    let name: String =
                        rest.iter().take_while(|c| c.is_alphanumeric() || **c == '_').collect();
                    return Err(PresentationError::UnknownGenerator { name, relator: self.relator });
                };
                self.pos += g.chars().count();
                let mut v = vec![BigInt::zero(); self.generators.len()];
                v[k] = BigInt::from(1);
                Ok(v)
            }
            _ => Err(self.error("expected a generator, '(' or '['")),
        }
    }
}

/// Exponent-sum vector of a relator.
pub fn exponent_vector(generators: &[String], relator: &str, index: usize) -> Result<Vec<BigInt>, PresentationError> {
    let mut p = Parser { chars: relator.chars().collect(), pos: 0, generators, relator: index };
    p.relation()
}

/// Structure of `⟨generators | relators⟩^ab` and the exponent matrix
/// (one row per relator, one column per generator).
pub fn abelianize_presentation(
    generators: &[String],
    relators: &[String],
) -> Result<(AbelianGroupStructure, IntMatrix), PresentationError> {
    for (i, g) in generators.iter().enumerate() {
        if generators[..i].contains(g) {
            return Err(PresentationError::DuplicateGenerator(g.clone()));
        }
    }
    let rows = relators
        .iter()
        .enumerate()
        .map(|(i, r)| exponent_vector(generators, r, i))
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = IntMatrix::try_from_rows(&rows, generators.len()).expect("rows have one entry per generator");
    Ok((cokernel_structure(&matrix.transpose()), matrix))
}

//! Words over GF(q) indexed by a canonical point order, and their CSV form.

use crate::error::{Error, Result};
use crate::galois::{Fe, Field};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Fe>);

impl Word {
    pub fn zero(n: usize) -> Word {
        Word(vec![Fe::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn add(&self, other: &Word, f: &Field) -> Word {
        Word(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Word, f: &Field) -> Word {
        Word(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        )
    }

    pub fn distance(&self, other: &Word) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses comma- or whitespace-separated integers; blank lines and `#`
    /// comments are ignored.
    pub fn parse_csv(s: &str, field: &Field) -> Result<Word> {
        let mut out = Vec::new();
        for line in s.lines() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
            {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::WordSyntax(tok.to_string()))?;
                out.push(field.element(v)?);
            }
        }
        Ok(Word(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let f = Field::new(2, 2).unwrap();
        let w = Word::parse_csv("0,1, 2\n3 # tail\n", &f).unwrap();
        assert_eq!(w.0, vec![Fe(0), Fe(1), Fe(2), Fe(3)]);
        assert_eq!(Word::parse_csv(&w.to_csv(), &f).unwrap(), w);
        assert!(Word::parse_csv("4", &f).is_err());
        assert!(Word::parse_csv("x", &f).is_err());
        assert_eq!(w.weight(), 3);
    }
}

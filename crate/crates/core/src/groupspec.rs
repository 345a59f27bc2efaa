//! The group-spec mini-language.
//!
//! ```text
//! spec   := family | "prod(" spec "," spec ")" | "diag(" family ")" | "gens:" path
//! family := "C" int | "D" int | "2T" | "2O" | "2I"
//! ```
//!
//! `D n` is the binary dihedral group of order `4n`. Whitespace between tokens
//! is ignored.

use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::group::{
    binary_dihedral, binary_icosahedral, binary_octahedral, binary_tetrahedral, cyclic, diagonal,
    from_generators, product, Ambient, FiniteSubgroup, ORDER_CAP,
};
use crate::io::read_generators;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl Family {
    pub fn build(self) -> Result<FiniteSubgroup> {
        match self {
            Family::Cyclic(n) => cyclic(n),
            Family::Dihedral(n) => binary_dihedral(n),
            Family::Tetrahedral => binary_tetrahedral(),
            Family::Octahedral => binary_octahedral(),
            Family::Icosahedral => binary_icosahedral(),
        }
    }

    pub fn order(self) -> u64 {
        match self {
            Family::Cyclic(n) => n as u64,
            Family::Dihedral(n) => 4 * n as u64,
            Family::Tetrahedral => 24,
            Family::Octahedral => 48,
            Family::Icosahedral => 120,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "C{n}"),
            Family::Dihedral(n) => write!(f, "D{n}"),
            Family::Tetrahedral => f.write_str("2T"),
            Family::Octahedral => f.write_str("2O"),
            Family::Icosahedral => f.write_str("2I"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Family(Family),
    Prod(Box<GroupSpec>, Box<GroupSpec>),
    Diag(Family),
    Gens(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Family(fam) => write!(f, "{fam}"),
            GroupSpec::Prod(a, b) => write!(f, "prod({a},{b})"),
            GroupSpec::Diag(fam) => write!(f, "diag({fam})"),
            GroupSpec::Gens(p) => write!(f, "gens:{}", p.display()),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

impl GroupSpec {
    /// Constructs the group. `prod` arguments must be SU(2) groups.
    pub fn build(&self) -> Result<FiniteSubgroup> {
        match self {
            GroupSpec::Family(f) => f.build(),
            GroupSpec::Diag(f) => diagonal(&f.build()?),
            GroupSpec::Prod(a, b) => {
                let (ga, gb) = (a.build()?, b.build()?);
                for (s, g) in [(a, &ga), (b, &gb)] {
                    if g.ambient() != Ambient::Su2 {
                        return Err(Error::Ambient(format!("prod argument {s} is not an SU(2) group")));
                    }
                }
                product(&ga, &gb)
            }
            GroupSpec::Gens(path) => {
                let text = std::fs::read_to_string(path)?;
                from_generators(&read_generators(&text)?, ORDER_CAP)
            }
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, text };
    let spec = p.spec(false)?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected '{}' after the spec", p.chars[p.pos])));
    }
    Ok(spec)
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { offset: self.pos, message: format!("{} in {:?}", message.into(), self.text) }
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

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected '{c}', found '{x}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    /// Reads a keyword made of ASCII letters (and nothing else).
    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| Error::Parse {
            offset: start,
            message: format!("integer {digits} out of range in {:?}", self.text),
        })
    }

    fn spec(&mut self, nested: bool) -> Result<GroupSpec> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some('2' | 'C' | 'D') => return self.family().map(GroupSpec::Family),
            None => return Err(self.error("expected a group spec, found end of input")),
            _ => {}
        }
        let w = self.word();
        match w.as_str() {
            "prod" => {
                self.expect('(')?;
                let a = self.spec(true)?;
                self.expect(',')?;
                let b = self.spec(true)?;
                self.expect(')')?;
                Ok(GroupSpec::Prod(Box::new(a), Box::new(b)))
            }
            "diag" => {
                self.expect('(')?;
                let arg = self.pos;
                let f = match self.peek() {
                    Some('p' | 'd' | 'g') => {
                        let w = self.word();
                        self.pos = arg;
                        self.skip_ws();
                        return Err(self.error(format!("diag takes a family, not {w}(…)")));
                    }
                    _ => self.family()?,
                };
                self.expect(')')?;
                Ok(GroupSpec::Diag(f))
            }
            "gens" => {
                self.expect(':')?;
                self.skip_ws();
                let begin = self.pos;
                // inside prod(…) a path ends at the next ',' or ')'
                while self.pos < self.chars.len() {
                    let c = self.chars[self.pos];
                    if nested && (c == ',' || c == ')') {
                        break;
                    }
                    self.pos += 1;
                }
                let path: String = self.chars[begin..self.pos].iter().collect();
                let path = path.trim_end();
                if path.is_empty() {
                    self.pos = begin;
                    return Err(self.error("empty path after 'gens:'"));
                }
                Ok(GroupSpec::Gens(PathBuf::from(path)))
            }
            _ => {
                self.pos = start;
                Err(self.error("expected C<n>, D<n>, 2T, 2O, 2I, prod(…), diag(…) or gens:<path>"))
            }
        }
    }

    fn family(&mut self) -> Result<Family> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.chars.get(self.pos) {
            Some('C') => {
                self.pos += 1;
                Ok(Family::Cyclic(self.int()?))
            }
            Some('D') => {
                self.pos += 1;
                Ok(Family::Dihedral(self.int()?))
            }
            Some('2') => {
                self.pos += 1;
                self.skip_ws();
                let f = match self.chars.get(self.pos) {
                    Some('T') => Family::Tetrahedral,
                    Some('O') => Family::Octahedral,
                    Some('I') => Family::Icosahedral,
                    _ => return Err(self.error("expected T, O or I after '2'")),
                };
                self.pos += 1;
                Ok(f)
            }
            _ => {
                self.pos = start;
                Err(self.error("expected a family C<n>, D<n>, 2T, 2O or 2I"))
            }
        }
    }
}

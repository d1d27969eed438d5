//! Argument parsers: partitions, rational matrices and polynomial expressions.

use num_traits::Zero;
use supergrass_core::linalg::{q_parse, QMatrix, Q};
use supergrass_core::poly::{MultiPoly, QPoly};
use supergrass_core::{Error, Partition, Result};

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

/// `"2,1"` or `""` for the empty partition.
pub fn partition(s: &str) -> Result<Partition> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let parts: std::result::Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse()).collect();
    match parts {
        Ok(p) => Partition::new(p),
        Err(_) => bad(format!("cannot parse partition {s:?}")),
    }
}

/// Rows separated by `;`, entries by `,`. An empty string needs explicit
/// dimensions.
pub fn matrix(s: &str, shape: Option<(usize, usize)>) -> Result<QMatrix> {
    let s = s.trim();
    if s.is_empty() {
        return match shape {
            Some((r, c)) if r == 0 || c == 0 => Ok(QMatrix::zeros(r, c)),
            _ => bad("an empty matrix needs --n and --m with a zero dimension"),
        };
    }
    let mut rows = Vec::new();
    for row in s.split(';') {
        let entries: Option<Vec<Q>> = row.split(',').map(q_parse).collect();
        match entries {
            Some(e) => rows.push(e),
            None => return bad(format!("cannot parse matrix row {row:?}")),
        }
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return bad("matrix rows have different lengths");
    }
    let m = QMatrix::from_rows(rows.len(), cols, rows);
    if let Some(sh) = shape {
        if sh != (m.nrows(), m.ncols()) {
            return bad(format!("matrix is {}x{}, expected {}x{}", m.nrows(), m.ncols(), sh.0, sh.1));
        }
    }
    Ok(m)
}

/// A univariate rational polynomial: either an expression in `u` such as
/// `u^2 - 1/2*u + 3`, or ascending coefficients `3,-1/2,1`.
pub fn qpoly(s: &str) -> Result<QPoly> {
    if s.contains('u') {
        let p = expression(s, &["u".to_string()])?;
        let deg = p.total_degree().unwrap_or(0) as usize;
        Ok(QPoly::new((0..=deg).map(|k| p.coeff(&[k as u32])).collect()))
    } else {
        match QPoly::parse(s) {
            Some(p) => Ok(p),
            None => bad(format!("cannot parse polynomial {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Q),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(q_parse(&text).expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return bad(format!("unexpected character {c:?} in {s:?}"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&(Q::from_integer(1.into()) / c)),
                    _ => return bad("division only by nonzero constants"),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(e)) if e.is_integer() => {
                    self.pos += 1;
                    let e: u32 = e.to_integer().try_into().map_err(|_| Error::InvalidInput("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                _ => return bad("exponent must be a nonnegative integer"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let nvars = self.names.len();
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(c)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(nvars, c))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(MultiPoly::var(nvars, i)),
                    None => bad(format!("unknown variable {name:?}; expected one of {}", self.names.join(", "))),
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return bad("missing ')'");
                }
                Ok(e)
            }
            other => bad(format!("unexpected {other:?}")),
        }
    }
}

/// A polynomial expression in the given variables.
pub fn expression(s: &str, names: &[String]) -> Result<MultiPoly> {
    let mut p = Parser {
        tokens: tokenize(s)?,
        pos: 0,
        names,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return bad(format!("trailing input in {s:?}"));
    }
    Ok(e)
}

/// `"2,1"` as a pair of sizes.
pub fn pair(s: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => match (a.trim().parse(), b.trim().parse()) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => bad(format!("cannot parse {s:?} as N,M")),
        },
        _ => bad(format!("expected N,M, got {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use supergrass_core::linalg::q;

    #[test]
    fn partitions() {
        assert_eq!(partition("2,1").unwrap(), Partition::from_parts(&[2, 1]));
        assert_eq!(partition("").unwrap(), Partition::empty());
        assert!(partition("1,2").is_err());
        assert!(partition("x").is_err());
    }

    #[test]
    fn matrices() {
        let m = matrix("1,2;3,1/2", None).unwrap();
        assert_eq!(m.get(1, 1), &supergrass_core::linalg::q_frac(1, 2));
        assert!(matrix("1,2;3", None).is_err());
        assert_eq!(matrix("", Some((0, 1))).unwrap().ncols(), 1);
        assert!(matrix("", None).is_err());
    }

    #[test]
    fn polynomials() {
        assert_eq!(qpoly("u^2 - 1").unwrap(), QPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(qpoly("-1,0,1").unwrap(), QPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(qpoly("(u-1)*(u-2)").unwrap(), QPoly::from_i64(&[2, -3, 1]));
        let names: Vec<String> = ["a1", "xi1"].iter().map(|s| s.to_string()).collect();
        let e = expression("xi1^2 + a1*xi1/2", &names).unwrap();
        assert_eq!(e.coeff(&[1, 1]), supergrass_core::linalg::q_frac(1, 2));
        assert_eq!(e.coeff(&[0, 2]), q(1));
        assert!(expression("y", &names).is_err());
        assert!(expression("xi1^", &names).is_err());
    }
}

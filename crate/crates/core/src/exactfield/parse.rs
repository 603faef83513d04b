//! Text syntax for rational functions, e.g. `(1-a)^-2 * (1+b)`.
//!
//! Grammar: sums of products of signed powers of atoms. Atoms are integer
//! literals, the names `a`, `b`, `lambda`/`λ`, `X`, `theta`/`θ`, and
//! parenthesized expressions.

use super::cyclo::FieldRef;
use super::poly::Var;
use super::prime::PrimeField;
use super::ratfunc::RatFunc;
use super::FieldError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Name(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, FieldError> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_alphabetic() {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Name(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(FieldError::Parse(format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

struct Parser<'a, F: PrimeField> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a FieldRef<F>,
}

impl<'a, F: PrimeField> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<RatFunc<F>, FieldError> {
        let mut acc = if self.eat('-') {
            self.product()?.neg()
        } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.product()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<RatFunc<F>, FieldError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                acc = acc.div(&self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc<F>, FieldError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let e = match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.parse::<i64>().map_err(|_| FieldError::Parse(format!("exponent {} too large", n)))?
            }
            Some(Tok::Op('(')) => {
                // parenthesized integer exponent, e.g. a^(-2)
                self.pos += 1;
                let neg_in = self.eat('-');
                let n = match self.toks.get(self.pos).cloned() {
                    Some(Tok::Num(n)) => n,
                    _ => return Err(FieldError::Parse("expected integer exponent".into())),
                };
                self.pos += 1;
                if !self.eat(')') {
                    return Err(FieldError::Parse("expected ')'".into()));
                }
                let v = n.parse::<i64>().map_err(|_| FieldError::Parse("exponent too large".into()))?;
                if neg_in {
                    -v
                } else {
                    v
                }
            }
            _ => return Err(FieldError::Parse("expected integer exponent".into())),
        };
        base.pow(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<RatFunc<F>, FieldError> {
        let fd = self.field;
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let v = n
                    .parse::<num_bigint::BigInt>()
                    .map_err(|_| FieldError::Parse(format!("bad integer {}", n)))?;
                Ok(RatFunc::from_elem(fd, fd.prime().from_bigint(&v)))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                if name == "theta" || name == "θ" {
                    return Ok(RatFunc::theta(fd));
                }
                match Var::from_name(&name) {
                    Some(v) => Ok(RatFunc::var(fd, v)),
                    None => Err(FieldError::Parse(format!("unknown name '{}'", name))),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(')') {
                    return Err(FieldError::Parse("expected ')'".into()));
                }
                Ok(v)
            }
            Some(t) => Err(FieldError::Parse(format!("unexpected token {:?}", t))),
            None => Err(FieldError::Parse("unexpected end of input".into())),
        }
    }
}

pub fn parse_ratfunc<F: PrimeField>(field: &FieldRef<F>, s: &str) -> Result<RatFunc<F>, FieldError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, field };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(FieldError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::cyclo::FieldDescriptor;
    use crate::exactfield::prime::Rationals;

    #[test]
    fn parses_and_roundtrips() {
        let fd = FieldDescriptor::new(Rationals, 3).unwrap();
        for s in [
            "(1-a)^-2 * (1+b)",
            "theta^2 + a*theta - 3/b",
            "(a^2 - 1)/(a - 1)",
            "lambda^3 + X*b",
            "-θ*(a+b)^3/(1+a*b)^2",
        ] {
            let v = parse_ratfunc(&fd, s).unwrap();
            let again = parse_ratfunc(&fd, &v.render()).unwrap();
            assert_eq!(v, again, "{} -> {}", s, v.render());
            assert_eq!(v.render(), again.render());
        }
        assert_eq!(parse_ratfunc(&fd, "(a^2-1)/(a-1)").unwrap().render(), "(a + 1)");
    }

    #[test]
    fn rejects_garbage() {
        let fd = FieldDescriptor::new(Rationals, 2).unwrap();
        assert!(parse_ratfunc(&fd, "a +").is_err());
        assert!(parse_ratfunc(&fd, "q").is_err());
        assert!(parse_ratfunc(&fd, "1/(a-a)").is_err());
    }
}

//! Parser for symbolic endpoint strings such as `1/2*pi - 1/4`,
//! `-sinh(1/4)` or `sqrt(1 + 9/16)`; accepts everything `SymReal` prints.

use crate::elementary::Elementary;
use crate::exactnum::BigRational;
use crate::symreal::SymReal;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse_symreal(s: &str) -> Result<SymReal, String> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(format!("unexpected `{}` at offset {} in `{s}`", p.src[p.pos] as char, p.pos));
    }
    Ok(v)
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected `{}` at offset {}", c as char, self.pos))
        }
    }

    fn sum(&mut self) -> Result<SymReal, String> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.product()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<SymReal, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<SymReal, String> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = if self.eat(b'(') {
                let e = self.sum()?;
                self.expect(b')')?;
                e
            } else {
                self.atom()?
            };
            let r = exp
                .as_rational()
                .cloned()
                .ok_or_else(|| "exponent must be rational".to_string())?;
            return Ok(base.pow(&r));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SymReal, String> {
        self.skip_ws();
        if self.eat(b'(') {
            let v = self.sum()?;
            self.expect(b')')?;
            return Ok(v);
        }
        let start = self.pos;
        if self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let n: num::bigint::BigInt = digits.parse().map_err(|e: num::bigint::ParseBigIntError| e.to_string())?;
            return Ok(SymReal::rational(BigRational::from_integer(n)));
        }
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match name {
            "" => Err(format!("expected a number or name at offset {start}")),
            "pi" => Ok(SymReal::pi()),
            "sqrt" => {
                self.expect(b'(')?;
                let v = self.sum()?;
                self.expect(b')')?;
                Ok(v.sqrt())
            }
            _ => {
                let f: Elementary = name.parse()?;
                self.expect(b'(')?;
                let v = self.sum()?;
                self.expect(b')')?;
                Ok(SymReal::apply(f, &v))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, QuadraticNumber};

    #[test]
    fn parses_printed_forms() {
        assert_eq!(parse_symreal("3/2").unwrap(), SymReal::rational(rat(3, 2)));
        assert_eq!(parse_symreal("1/2*pi").unwrap(), SymReal::pi_times(rat(1, 2)));
        let s = SymReal::apply(Elementary::Sinh, &SymReal::rational(rat(-1, 4)));
        assert_eq!(parse_symreal(&s.to_string()).unwrap(), s);
        let q = QuadraticNumber::new(int(1), int(2), int(3)).unwrap();
        let printed = SymReal::Exact(q.clone()).to_string();
        assert_eq!(parse_symreal(&printed).unwrap(), SymReal::Exact(q));
        let t = SymReal::pi_times(rat(1, 2)).sub(&SymReal::rational(rat(1, 4)));
        assert_eq!(parse_symreal(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_symreal("foo(1)").is_err());
        assert!(parse_symreal("1 +").is_err());
        assert!(parse_symreal("2^pi").is_err());
    }
}

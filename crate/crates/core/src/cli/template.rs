//! Expected-value templates: group expressions with `{…}` integer holes such
//! as `Z^{2g+1} + Z/{k}` or `Z + A_{n^r}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abgroup::{AbGroup, ExtensionResult};
use crate::error::{Error, Result};

pub type Vars = BTreeMap<char, i64>;

/// Integer expressions over one-letter variables: `+ - * ^`, parentheses,
/// `|x|`, and implicit products such as `2g`.
pub fn eval(expr: &str, vars: &Vars) -> Result<BigInt> {
    let chars: Vec<char> = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: &chars, i: 0, vars };
    let v = p.sum()?;
    if p.i != chars.len() {
        return Err(p.error());
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [char],
    i: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn error(&self) -> Error {
        Error::Parse(format!("bad template expression `{}` at {}", self.s.iter().collect::<String>(), self.i))
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn sum(&mut self) -> Result<BigInt> {
        let mut v = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.i += 1;
            let w = self.product()?;
            v = if op == '+' { v + w } else { v - w };
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<BigInt> {
        let mut v = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    v *= self.power()?;
                }
                Some(c) if c.is_ascii_alphabetic() || c == '(' => v *= self.power()?,
                _ => return Ok(v),
            }
        }
    }

    fn power(&mut self) -> Result<BigInt> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            let e = self.atom()?;
            let e = e.to_usize().ok_or_else(|| self.error())?;
            return Ok(num_traits::pow(base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some('-') => {
                self.i += 1;
                Ok(-self.atom()?)
            }
            Some('(') => {
                self.i += 1;
                let v = self.sum()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('|') => {
                self.i += 1;
                let v = self.sum()?;
                self.expect('|')?;
                Ok(v.abs())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.i += 1;
                }
                Ok(self.s[start..self.i].iter().collect::<String>().parse().expect("digits"))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.i += 1;
                self.vars.get(&c).map(|&v| BigInt::from(v)).ok_or_else(|| Error::Parse(format!("unbound variable `{c}`")))
            }
            _ => Err(self.error()),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.error())
        }
    }
}

/// Conditions such as `k!=0`, `|n|=2` or `n=0, k!=0, r>1` (a conjunction).
pub fn holds(cond: &str, vars: &Vars) -> Result<bool> {
    for clause in cond.split(',') {
        let clause = clause.trim();
        let ops = ["!=", ">=", "<=", "=", ">", "<"];
        let (op, at) = ops
            .iter()
            .find_map(|op| clause.find(op).map(|i| (*op, i)))
            .ok_or_else(|| Error::Parse(format!("bad condition `{clause}`")))?;
        let lhs = eval(&clause[..at], vars)?;
        let rhs = eval(&clause[at + op.len()..], vars)?;
        let ok = match op {
            "!=" => lhs != rhs,
            ">=" => lhs >= rhs,
            "<=" => lhs <= rhs,
            "=" => lhs == rhs,
            ">" => lhs > rhs,
            _ => lhs < rhs,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A filled-in expectation. `A_{b^e}` stands for an unspecified group of
/// order `|b|^e` with composition factors `Z/|b|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub known: AbGroup,
    pub unknown: Option<(BigInt, u32)>,
}

impl Expected {
    pub fn matches(&self, r: &ExtensionResult) -> bool {
        let Some((b, e)) = &self.unknown else {
            return r.resolved() == Some(&self.known);
        };
        let b = b.abs();
        let order = num_traits::pow(b.clone(), *e as usize) * self.known.torsion_order();
        let rank = self.known.rank();
        match r {
            ExtensionResult::Resolved(g) => g.rank() == rank && g.torsion_order() == order,
            ExtensionResult::Ambiguous(a) => {
                let factor = AbGroup::cyclic(b.clone());
                a.rank == rank
                    && a.order == order
                    && a.distinct_torsion_factors().iter().all(|f| *f == factor)
            }
        }
    }
}

/// Fills the holes and parses the resulting sum.
pub fn expand(template: &str, vars: &Vars) -> Result<Expected> {
    let mut known = AbGroup::trivial();
    let mut unknown = None;
    for term in template.split(" + ") {
        let term = term.trim();
        if let Some(inner) = term.strip_prefix("A_{").and_then(|t| t.strip_suffix('}')) {
            let (b, e) = inner.split_once('^').ok_or_else(|| Error::Parse(format!("bad term `{term}`")))?;
            let e = eval(e, vars)?.to_u32().ok_or_else(|| Error::Parse(format!("bad exponent in `{term}`")))?;
            unknown = Some((eval(b, vars)?, e));
            continue;
        }
        let filled = fill(term, vars)?;
        let g: AbGroup = if let Some(n) = filled.strip_prefix("Z/") {
            // Z/0 is Z, Z/±1 is trivial
            AbGroup::cyclic(n.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad term `{term}`")))?)
        } else {
            filled.parse()?
        };
        known = known.direct_sum(&g);
    }
    if let Some((b, _)) = &unknown {
        if b.abs().is_one() || b.is_zero() {
            unknown = None;
        }
    }
    Ok(Expected { known, unknown })
}

fn fill(term: &str, vars: &Vars) -> Result<String> {
    let mut out = String::new();
    let mut rest = term;
    while let Some(start) = rest.find('{') {
        let end = rest[start..].find('}').ok_or_else(|| Error::Parse(format!("unclosed hole in `{term}`")))? + start;
        out.push_str(&rest[..start]);
        out.push_str(&eval(&rest[start + 1..end], vars)?.to_string());
        rest = &rest[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

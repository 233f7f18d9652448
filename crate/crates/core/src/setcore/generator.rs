//! Generator mini-grammar:
//!
//! ```text
//! ap:a0,d,n        {a0 + i·d : 0 ≤ i < n}
//! geo:g0,r,n       {g0·r^i : 0 ≤ i < n}
//! grid:p1,…,pk,e   {Π p_j^{e_j} : 0 ≤ e_j < e}
//! interval:n       [1, n]
//! smooth:y,N       y-smooth integers in [1, N]
//! pow:k,n          {i^k : 1 ≤ i ≤ n}
//! file:path        one integer per line
//! ```

use std::fmt;
use std::path::PathBuf;

use super::IntSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numtheory::sieve_primes_with;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Ap { start: i64, step: i64, len: u64 },
    Geo { start: i64, ratio: i64, len: u64 },
    Grid { bases: Vec<i64>, exponents: u32 },
    Interval { n: u64 },
    Smooth { y: u64, n: u64 },
    Pow { k: u32, n: u64 },
    File { path: PathBuf },
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Ap { start, step, len } => write!(f, "ap:{start},{step},{len}"),
            GeneratorSpec::Geo { start, ratio, len } => write!(f, "geo:{start},{ratio},{len}"),
            GeneratorSpec::Grid { bases, exponents } => {
                f.write_str("grid:")?;
                for b in bases {
                    write!(f, "{b},")?;
                }
                write!(f, "{exponents}")
            }
            GeneratorSpec::Interval { n } => write!(f, "interval:{n}"),
            GeneratorSpec::Smooth { y, n } => write!(f, "smooth:{y},{n}"),
            GeneratorSpec::Pow { k, n } => write!(f, "pow:{k},{n}"),
            GeneratorSpec::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

impl std::str::FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_generator(s)
    }
}

fn parse_err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
    }
}

struct Field<'a> {
    text: &'a str,
    column: usize,
}

impl Field<'_> {
    fn int(&self) -> Result<i64> {
        self.text.trim().parse::<i64>().map_err(|_| {
            parse_err(
                self.column,
                format!("expected an integer, found {:?}", self.text),
            )
        })
    }

    fn positive(&self, name: &str) -> Result<u64> {
        let v = self.int()?;
        if v <= 0 {
            return Err(parse_err(
                self.column,
                format!("{name} must be positive, found {v}"),
            ));
        }
        Ok(v as u64)
    }
}

pub fn parse_generator(text: &str) -> Result<GeneratorSpec> {
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| parse_err(1, format!("expected <kind>:<params>, found {text:?}")))?;
    let base = kind.len() + 2;
    if kind == "file" {
        if rest.is_empty() {
            return Err(parse_err(base, "file: needs a path"));
        }
        return Ok(GeneratorSpec::File { path: rest.into() });
    }
    let mut fields = Vec::new();
    let mut column = base;
    for part in rest.split(',') {
        fields.push(Field { text: part, column });
        column += part.len() + 1;
    }
    let arity = |want: usize| -> Result<()> {
        if fields.len() != want {
            return Err(parse_err(
                base,
                format!("{kind} takes {want} parameters, found {}", fields.len()),
            ));
        }
        Ok(())
    };
    let spec = match kind {
        "ap" => {
            arity(3)?;
            let step = fields[1].int()?;
            if step == 0 {
                return Err(parse_err(fields[1].column, "ap step must be nonzero"));
            }
            GeneratorSpec::Ap {
                start: fields[0].int()?,
                step,
                len: fields[2].positive("length")?,
            }
        }
        "geo" => {
            arity(3)?;
            let start = fields[0].int()?;
            if start == 0 {
                return Err(parse_err(fields[0].column, "geo start must be nonzero"));
            }
            let ratio = fields[1].int()?;
            if ratio.unsigned_abs() < 2 {
                return Err(parse_err(fields[1].column, "geo ratio must satisfy |r| >= 2"));
            }
            GeneratorSpec::Geo {
                start,
                ratio,
                len: fields[2].positive("length")?,
            }
        }
        "grid" => {
            if fields.len() < 2 {
                return Err(parse_err(
                    base,
                    format!("grid takes at least 2 parameters, found {}", fields.len()),
                ));
            }
            let (last, init) = fields.split_last().unwrap();
            let bases = init
                .iter()
                .map(|f| {
                    let b = f.int()?;
                    if b < 2 {
                        return Err(parse_err(f.column, format!("grid base must be >= 2, found {b}")));
                    }
                    Ok(b)
                })
                .collect::<Result<Vec<_>>>()?;
            let e = last.positive("exponent bound")?;
            GeneratorSpec::Grid {
                bases,
                exponents: u32::try_from(e).map_err(|_| parse_err(last.column, "exponent bound too large"))?,
            }
        }
        "interval" => {
            arity(1)?;
            GeneratorSpec::Interval {
                n: fields[0].positive("length")?,
            }
        }
        "smooth" => {
            arity(2)?;
            GeneratorSpec::Smooth {
                y: fields[0].positive("smoothness bound")?,
                n: fields[1].positive("range")?,
            }
        }
        "pow" => {
            arity(2)?;
            let k = fields[0].positive("exponent")?;
            GeneratorSpec::Pow {
                k: u32::try_from(k).map_err(|_| parse_err(fields[0].column, "exponent too large"))?,
                n: fields[1].positive("length")?,
            }
        }
        other => {
            return Err(parse_err(
                1,
                format!("unknown generator {other:?}; expected ap, geo, grid, interval, smooth, pow or file"),
            ))
        }
    };
    Ok(spec)
}

pub fn generate(spec: &GeneratorSpec) -> Result<IntSet> {
    generate_with(spec, &Limits::default())
}

fn overflow(what: impl fmt::Display) -> Error {
    Error::Overflow(format!("{what} leaves the 63-bit range"))
}

fn checked(x: Option<i64>, what: impl Fn() -> String) -> Result<i64> {
    x.filter(|&v| v != i64::MIN).ok_or_else(|| overflow(what()))
}

pub fn generate_with(spec: &GeneratorSpec, limits: &Limits) -> Result<IntSet> {
    match spec {
        GeneratorSpec::Ap { start, step, len } => {
            limits.check_cardinality("generated set", *len as u128)?;
            let v = (0..*len as i64)
                .map(|i| {
                    let off = checked(i.checked_mul(*step), || format!("{i}·{step}"))?;
                    checked(start.checked_add(off), || format!("{start} + {off}"))
                })
                .collect::<Result<Vec<_>>>()?;
            IntSet::new(v)
        }
        GeneratorSpec::Geo { start, ratio, len } => {
            limits.check_cardinality("generated set", *len as u128)?;
            let mut v = Vec::with_capacity(*len as usize);
            let mut x = *start;
            for i in 0..*len {
                v.push(x);
                if i + 1 < *len {
                    x = checked(x.checked_mul(*ratio), || format!("{x}·{ratio}"))?;
                }
            }
            IntSet::new(v)
        }
        GeneratorSpec::Grid { bases, exponents } => {
            let size = (*exponents as u128)
                .checked_pow(bases.len() as u32)
                .unwrap_or(u128::MAX);
            limits.check_cardinality("generated set", size)?;
            let mut acc = vec![1i64];
            for &b in bases {
                let mut powers = Vec::with_capacity(*exponents as usize);
                let mut p = 1i64;
                for e in 0..*exponents {
                    powers.push(p);
                    if e + 1 < *exponents {
                        p = checked(p.checked_mul(b), || format!("{b}^{}", e + 1))?;
                    }
                }
                let mut next = Vec::with_capacity(acc.len() * powers.len());
                for &x in &acc {
                    for &q in &powers {
                        next.push(checked(x.checked_mul(q), || format!("{x}·{q}"))?);
                    }
                }
                acc = next;
            }
            IntSet::new(acc)
        }
        GeneratorSpec::Interval { n } => {
            limits.check_cardinality("generated set", *n as u128)?;
            if *n > i64::MAX as u64 {
                return Err(overflow(n));
            }
            Ok(IntSet::interval(*n))
        }
        GeneratorSpec::Smooth { y, n } => {
            let n = i64::try_from(*n).map_err(|_| overflow(n))?;
            let table_limit = (*y).min(n as u64).max(2);
            let table = sieve_primes_with(table_limit, limits)?;
            let primes: Vec<i64> = table
                .primes()
                .iter()
                .filter(|&&p| p <= *y)
                .map(|&p| p as i64)
                .collect();
            let mut out = Vec::new();
            smooth_rec(&primes, 0, 1, n, &mut out, limits)?;
            IntSet::new(out)
        }
        GeneratorSpec::Pow { k, n } => {
            limits.check_cardinality("generated set", *n as u128)?;
            let v = (1..=*n as i64)
                .map(|i| checked(i.checked_pow(*k), || format!("{i}^{k}")))
                .collect::<Result<Vec<_>>>()?;
            IntSet::new(v)
        }
        GeneratorSpec::File { path } => {
            let set = super::read_set_file(path)?;
            limits.check_cardinality("set file", set.len() as u128)?;
            Ok(set)
        }
    }
}

/// Appends every `cur · Π_{j ≥ idx} p_j^{e_j} ≤ n`.
fn smooth_rec(
    primes: &[i64],
    idx: usize,
    cur: i64,
    n: i64,
    out: &mut Vec<i64>,
    limits: &Limits,
) -> Result<()> {
    if idx == primes.len() {
        out.push(cur);
        return limits.check_cardinality("smooth set", out.len() as u128);
    }
    let p = primes[idx];
    let mut x = cur;
    loop {
        smooth_rec(primes, idx + 1, x, n, out, limits)?;
        match x.checked_mul(p) {
            Some(next) if next <= n => x = next,
            _ => break,
        }
    }
    Ok(())
}

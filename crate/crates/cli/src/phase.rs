//! Phase flag parsing. `2pi/3`, `pi`, `pi/5`, `3pi/2`, `2*pi/3` stay exact
//! rational multiples of π; anything else is read as radians.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phase {
    /// `φ = q·π`
    PiMultiple(Ratio<i64>),
    Radians(f64),
}

impl Phase {
    pub fn radians(self) -> f64 {
        match self {
            // Same rounding path as writing `2.0 * PI / 3.0` by hand.
            Phase::PiMultiple(q) => *q.numer() as f64 * PI / *q.denom() as f64,
            Phase::Radians(x) => x,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::PiMultiple(q) => {
                let (n, d) = (*q.numer(), *q.denom());
                match n {
                    1 => write!(f, "pi")?,
                    -1 => write!(f, "-pi")?,
                    _ => write!(f, "{n}pi")?,
                }
                if d != 1 {
                    write!(f, "/{d}")?;
                }
                Ok(())
            }
            Phase::Radians(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Phase {
    type Err = String;

    fn from_str(raw: &str) -> Result<Self, String> {
        let s: String = raw.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let s = s.to_ascii_lowercase().replace('π', "pi");
        if s.is_empty() {
            return Err("empty phase".into());
        }
        let Some(at) = s.find("pi") else {
            return s
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Phase::Radians)
                .ok_or_else(|| format!("cannot read phase `{raw}`"));
        };
        let bad = || format!("cannot read phase `{raw}`; expected e.g. 2pi/3, pi/5 or 1.25");
        let numer = match &s[..at] {
            "" | "+" => 1,
            "-" => -1,
            n => n.parse::<i64>().map_err(|_| bad())?,
        };
        let denom = match &s[at + 2..] {
            "" => 1,
            rest => rest
                .strip_prefix('/')
                .and_then(|d| d.parse::<i64>().ok())
                .filter(|d| *d != 0)
                .ok_or_else(bad)?,
        };
        Ok(Phase::PiMultiple(Ratio::new(numer, denom)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(n: i64, d: i64) -> Phase {
        Phase::PiMultiple(Ratio::new(n, d))
    }

    #[test]
    fn symbolic_forms() {
        assert_eq!("2pi/3".parse::<Phase>().unwrap(), pi(2, 3));
        assert_eq!("pi".parse::<Phase>().unwrap(), pi(1, 1));
        assert_eq!("pi/5".parse::<Phase>().unwrap(), pi(1, 5));
        assert_eq!("2 * pi / 3".parse::<Phase>().unwrap(), pi(2, 3));
        assert_eq!("4pi/6".parse::<Phase>().unwrap(), pi(2, 3));
        assert_eq!("3PI/2".parse::<Phase>().unwrap(), pi(3, 2));
        assert_eq!("2π/3".parse::<Phase>().unwrap(), pi(2, 3));
    }

    #[test]
    fn radians_match_hand_written_constant() {
        assert_eq!("2pi/3".parse::<Phase>().unwrap().radians(), 2.0 * PI / 3.0);
        assert_eq!("pi/5".parse::<Phase>().unwrap().radians(), PI / 5.0);
        assert_eq!("pi".parse::<Phase>().unwrap().radians(), PI);
    }

    #[test]
    fn decimal_and_errors() {
        assert_eq!("1.25".parse::<Phase>().unwrap(), Phase::Radians(1.25));
        for bad in ["", "pi/0", "xpi", "2pi3", "abc", "nan", "inf"] {
            assert!(bad.parse::<Phase>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_roundtrip() {
        for s in ["2pi/3", "pi", "pi/5", "-pi/2", "3pi"] {
            assert_eq!(s.parse::<Phase>().unwrap().to_string(), s);
        }
    }
}

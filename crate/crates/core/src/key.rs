//! Addressing of individual constants: `family(name=value,...)` at a digit count.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::harmonic::HalfMethod;
use crate::precision::Approx;
use crate::special_values::zeta_a_neg_even;

/// Smallest digit count a key may request.
pub const MIN_DIGITS: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Gamma,
    Stieltjes,
    StieltjesGen,
    Zeta,
    ZetaDeriv,
    ZetaDerivAt2,
    Polygamma1,
    Digamma,
    GammaA,
    GammaH,
    GammaHHalf,
    GammaHMinus,
    GammaO,
    DCoef,
    EtaHDeriv,
    EtaHMinusDeriv,
    IntegralI,
    IntegralJ,
    IntegralK,
    ZetaANegEven,
}

impl Family {
    pub const ALL: [Family; 20] = [
        Family::Gamma,
        Family::Stieltjes,
        Family::StieltjesGen,
        Family::Zeta,
        Family::ZetaDeriv,
        Family::ZetaDerivAt2,
        Family::Polygamma1,
        Family::Digamma,
        Family::GammaA,
        Family::GammaH,
        Family::GammaHHalf,
        Family::GammaHMinus,
        Family::GammaO,
        Family::DCoef,
        Family::EtaHDeriv,
        Family::EtaHMinusDeriv,
        Family::IntegralI,
        Family::IntegralJ,
        Family::IntegralK,
        Family::ZetaANegEven,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::Stieltjes => "stieltjes",
            Family::StieltjesGen => "stieltjes_gen",
            Family::Zeta => "zeta",
            Family::ZetaDeriv => "zeta_deriv",
            Family::ZetaDerivAt2 => "zeta_deriv_at2",
            Family::Polygamma1 => "polygamma1",
            Family::Digamma => "digamma",
            Family::GammaA => "gammaA",
            Family::GammaH => "gammaH",
            Family::GammaHHalf => "gammaH_half",
            Family::GammaHMinus => "gammaHminus",
            Family::GammaO => "gammaO",
            Family::DCoef => "dcoef",
            Family::EtaHDeriv => "etaH_deriv",
            Family::EtaHMinusDeriv => "etaHminus_deriv",
            Family::IntegralI => "integral_i",
            Family::IntegralJ => "integral_j",
            Family::IntegralK => "integral_k",
            Family::ZetaANegEven => "zetaA_neg_even",
        }
    }

    /// Parameter names in canonical order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::Gamma => &[],
            Family::Stieltjes | Family::ZetaDerivAt2 | Family::Polygamma1 => &["m"],
            Family::StieltjesGen => &["m", "a"],
            Family::Zeta => &["s"],
            Family::ZetaDeriv => &["s", "r"],
            Family::Digamma => &["a"],
            Family::GammaA | Family::ZetaANegEven => &["k", "m"],
            Family::GammaH
            | Family::GammaHHalf
            | Family::GammaHMinus
            | Family::GammaO
            | Family::DCoef
            | Family::IntegralJ
            | Family::IntegralK => &["m"],
            Family::EtaHDeriv => &["v"],
            Family::EtaHMinusDeriv => &["j"],
            Family::IntegralI => &["m", "k"],
        }
    }

    /// Parameters allowed to be non-integral.
    fn rational_param(name: &str) -> bool {
        matches!(name, "a" | "s")
    }

    /// Whether the value is a rational number available exactly.
    pub fn has_exact(self) -> bool {
        matches!(self, Family::ZetaANegEven)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownKey(format!("no family named '{s}'")))
    }
}

/// A family with its parameters, in the family's canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstantId {
    pub family: Family,
    pub params: Vec<Rational>,
}

/// A constant requested at a number of significant decimal digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstantKey {
    pub id: ConstantId,
    pub digits: u32,
}

/// Parses an integer, a fraction `p/q` or a terminating decimal.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::UnknownKey(format!("'{t}' is not a number"));
    if t.contains('/') {
        return Rational::from_str(t).map_err(|_| bad());
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num = rug::Integer::from_str(&digits).map_err(|_| bad())?;
    let den = rug::Integer::from(10).pow(frac.len() as u32);
    let r = Rational::from((num, den));
    Ok(if neg { -r } else { r })
}

fn small_u32(name: &str, v: &Rational) -> Result<u32> {
    if *v.denom() != 1 || *v < 0 {
        return Err(Error::UnknownKey(format!(
            "parameter {name} must be a non-negative integer, got {v}"
        )));
    }
    v.numer()
        .to_u32()
        .ok_or_else(|| Error::UnknownKey(format!("parameter {name} = {v} is too large")))
}

impl ConstantId {
    /// Builds an id from named parameters, which may come in any order.
    pub fn new(family: Family, named: &[(String, Rational)]) -> Result<Self> {
        let names = family.params();
        for (n, _) in named {
            if !names.contains(&n.as_str()) {
                return Err(Error::UnknownKey(format!(
                    "{family} has no parameter '{n}' (expects {})",
                    names.join(", ")
                )));
            }
        }
        let mut params = Vec::with_capacity(names.len());
        for name in names {
            let mut found = named.iter().filter(|(n, _)| n == name);
            let v = found
                .next()
                .ok_or_else(|| Error::UnknownKey(format!("{family} needs parameter '{name}'")))?;
            if found.next().is_some() {
                return Err(Error::UnknownKey(format!("parameter '{name}' given twice")));
            }
            if !Family::rational_param(name) {
                small_u32(name, &v.1)?;
            }
            params.push(v.1.clone());
        }
        Ok(Self { family, params })
    }

    pub fn param(&self, name: &str) -> Option<&Rational> {
        let i = self.family.params().iter().position(|n| *n == name)?;
        self.params.get(i)
    }

    fn int(&self, name: &str) -> Result<u32> {
        let v = self
            .param(name)
            .ok_or_else(|| Error::UnknownKey(format!("missing parameter '{name}'")))?;
        small_u32(name, v)
    }

    fn rat(&self, name: &str) -> Result<Rational> {
        self.param(name)
            .cloned()
            .ok_or_else(|| Error::UnknownKey(format!("missing parameter '{name}'")))
    }

    /// Named parameters in canonical order.
    pub fn named(&self) -> Vec<(&'static str, &Rational)> {
        self.family.params().iter().copied().zip(self.params.iter()).collect()
    }

    /// Exact rational value, for the families that have one.
    pub fn exact(&self) -> Result<Rational> {
        match self.family {
            Family::ZetaANegEven => zeta_a_neg_even(self.int("k")?, self.int("m")?),
            f => Err(Error::UnknownKey(format!("{f} has no exact rational form"))),
        }
    }

    pub fn evaluate(&self, engine: &Engine) -> Result<Approx> {
        let real = |r: &Rational| engine.real(r);
        match self.family {
            Family::Gamma => Ok(engine.euler_gamma()),
            Family::Stieltjes => Ok(engine.stieltjes(self.int("m")?)),
            Family::StieltjesGen => engine.stieltjes_gen(self.int("m")?, &self.rat("a")?),
            Family::Zeta => engine.zeta_real(&real(&self.rat("s")?)),
            Family::ZetaDeriv => engine.zeta_deriv_real(&real(&self.rat("s")?), self.int("r")?),
            Family::ZetaDerivAt2 => Ok(engine.zeta_deriv_at_2(self.int("m")?)),
            Family::Polygamma1 => Ok(engine.polygamma_at_1(self.int("m")?)),
            Family::Digamma => engine.digamma(&self.rat("a")?),
            Family::GammaA => engine.gamma_a(self.int("k")?, self.int("m")?),
            Family::GammaH => engine.gamma_h(self.int("m")?),
            Family::GammaHHalf => engine.gamma_h_half(self.int("m")?, HalfMethod::Checked),
            Family::GammaHMinus => engine.gamma_hminus(self.int("m")?),
            Family::GammaO => engine.gamma_o(self.int("m")?),
            Family::DCoef => engine.d_coefficient(self.int("m")?),
            Family::EtaHDeriv => engine.eta_h_deriv(self.int("v")?),
            Family::EtaHMinusDeriv => engine.eta_hminus_deriv(self.int("j")?),
            Family::IntegralI => Ok(engine.integral_i(self.int("m")?, self.int("k")?)?.approx()),
            Family::IntegralJ => Ok(engine.integral_j(self.int("m")?)?.approx()),
            Family::IntegralK => Ok(engine.integral_k_alt(self.int("m")?)?.approx()),
            Family::ZetaANegEven => {
                let q = self.exact()?;
                Ok(Approx::rounded(Float::with_val(engine.prec(), &q)))
            }
        }
    }
}

impl fmt::Display for ConstantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family)?;
        for (i, (n, v)) in self.named().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}={v}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for ConstantId {
    type Err = Error;

    /// `gammaA(k=2,m=0)`; a parameterless family may omit the parentheses.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let (name, args) = match t.find('(') {
            Some(i) => {
                let inner = t[i + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::UnknownKey(format!("unbalanced parentheses in '{t}'")))?;
                (&t[..i], inner)
            }
            None => (t, ""),
        };
        let family = Family::from_str(name)?;
        let mut named = Vec::new();
        for part in args.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (n, v) = part
                .split_once('=')
                .ok_or_else(|| Error::UnknownKey(format!("expected name=value, got '{part}'")))?;
            named.push((n.trim().to_string(), parse_rational(v)?));
        }
        ConstantId::new(family, &named)
    }
}

impl ConstantKey {
    pub fn new(id: ConstantId, digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InvalidPrecision(format!(
                "at least {MIN_DIGITS} digits are required, got {digits}"
            )));
        }
        Ok(Self { id, digits })
    }

    pub fn parse(text: &str, digits: u32) -> Result<Self> {
        Self::new(ConstantId::from_str(text)?, digits)
    }
}

impl fmt::Display for ConstantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {} digits", self.id, self.digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for text in ["gammaA(k=2,m=0)", "gamma()", "stieltjes_gen(m=1,a=1/3)", "zeta(s=5/2)"] {
            let id = ConstantId::from_str(text).unwrap();
            assert_eq!(id.to_string(), text);
        }
        let id = ConstantId::from_str("gammaA(m=3, k=2)").unwrap();
        assert_eq!(id.to_string(), "gammaA(k=2,m=3)");
        assert_eq!(ConstantId::from_str("gamma").unwrap().family, Family::Gamma);
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("2.5").unwrap(), Rational::from((5, 2)));
        assert_eq!(parse_rational("-0.125").unwrap(), Rational::from((-1, 8)));
        assert!(parse_rational("1e3").is_err());
    }

    #[test]
    fn rejects_bad_keys() {
        for text in ["gammaQ(m=1)", "gammaA(k=2)", "gammaA(k=2,m=1,x=3)", "gammaH(m=1/2)", "gammaH(m=1"] {
            assert!(matches!(ConstantId::from_str(text), Err(Error::UnknownKey(_))), "{text}");
        }
        assert!(ConstantKey::parse("gamma", 5).is_err());
    }

    #[test]
    fn exact_only_where_rational() {
        let id = ConstantId::from_str("zetaA_neg_even(k=2,m=1)").unwrap();
        assert_eq!(id.exact().unwrap(), Rational::from((1, 8)));
        assert!(ConstantId::from_str("gammaO(m=1)").unwrap().exact().is_err());
    }
}

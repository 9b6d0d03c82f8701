//! Scalar profiles built from `f_α(x) = 1 - W(-x, -α/2, 1)`.
//!
//! Every equation for the similarity variable has the form `profile(x) = r`
//! with one of these profiles, each strictly monotone on `(0, ∞)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::specfun::{gamma, mainardi, wright_tail, SeriesPolicy, WrightArgs};

/// Which profile to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// `f_α(x) = 1 - W(-x, -α/2, 1)`, increasing from 0 to 1.
    Complement,
    /// `F_α(x) = f_α(x) / x`, decreasing from `1/Γ(1 - α/2)` to 0.
    Quotient,
    /// `G_α(x) = x f_α(x)`, increasing from 0 to ∞.
    Product,
    /// `H_α(x) = x f_α(x) / M_{α/2}(x)`, increasing from 0 to ∞.
    StefanRatio,
    /// `M_{α/2}(x)`, decreasing from `1/Γ(1 - α/2)` to 0.
    Mainardi,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 5] = [
        ProfileKind::Complement,
        ProfileKind::Quotient,
        ProfileKind::Product,
        ProfileKind::StefanRatio,
        ProfileKind::Mainardi,
    ];

    pub fn is_increasing(self) -> bool {
        matches!(
            self,
            ProfileKind::Complement | ProfileKind::Product | ProfileKind::StefanRatio
        )
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ProfileKind::Complement => "f",
            ProfileKind::Quotient => "F",
            ProfileKind::Product => "G",
            ProfileKind::StefanRatio => "H",
            ProfileKind::Mainardi => "M",
        };
        f.write_str(name)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )))
    }
}

/// `f_α(x) = 1 - W(-x, -α/2, 1)`.
pub fn f_alpha(x: f64, alpha: f64, policy: &SeriesPolicy) -> Result<f64> {
    check_alpha(alpha)?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "profiles are defined for x > 0, got {x}"
        )));
    }
    Ok(-wright_tail(
        WrightArgs::new(-x, -alpha / 2.0, 1.0)?,
        policy,
    )?)
}

pub fn profile_eval(kind: ProfileKind, x: f64, alpha: f64, policy: &SeriesPolicy) -> Result<f64> {
    if kind == ProfileKind::Mainardi {
        check_alpha(alpha)?;
        if !(x > 0.0) {
            return Err(Error::Domain(format!(
                "profiles are defined for x > 0, got {x}"
            )));
        }
        return mainardi(x, alpha / 2.0, policy);
    }
    let f = f_alpha(x, alpha, policy)?;
    Ok(match kind {
        ProfileKind::Complement => f,
        ProfileKind::Quotient => f / x,
        ProfileKind::Product => x * f,
        ProfileKind::StefanRatio => x * f / mainardi(x, alpha / 2.0, policy)?,
        ProfileKind::Mainardi => unreachable!(),
    })
}

/// Open range of values the profile attains on `(0, ∞)`.
pub fn profile_range(kind: ProfileKind, alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    Ok(match kind {
        ProfileKind::Complement => (0.0, 1.0),
        ProfileKind::Quotient | ProfileKind::Mainardi => (0.0, 1.0 / gamma(1.0 - alpha / 2.0)?),
        ProfileKind::Product | ProfileKind::StefanRatio => (0.0, f64::INFINITY),
    })
}

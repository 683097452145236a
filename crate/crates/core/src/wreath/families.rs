//! Generator families for `R(S_n(G))`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{hook, two_row, MultiPartition, Partition};

use super::ring::{induce, RepRing, RepRingElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Hooks `(n-k, 1^k)` of `S_n`.
    Hooks,
    /// Two-row shapes `(n-k, k)` of `S_n`.
    TwoRows,
    /// Unit-object hooks or two-rows plus `Ind(V^{k,ε_V} ⊠ 1)`.
    WreathHooks,
    /// Abelian `G`: `Λ^k U` and `Λ^k Ind(χ ⊠ 1)`.
    AbelianExterior,
    /// `G = Z/2`: `Λ^k U`, `Λ^k V`.
    TypeBExterior,
}

impl Theorem {
    pub fn id(self) -> &'static str {
        match self {
            Theorem::Hooks => "marin-hooks",
            Theorem::TwoRows => "marin-two-row",
            Theorem::WreathHooks => "4.1",
            Theorem::AbelianExterior => "4.2",
            Theorem::TypeBExterior => "4.3",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "marin-hooks" | "hooks" => Ok(Theorem::Hooks),
            "marin-two-row" | "two-row" => Ok(Theorem::TwoRows),
            "4.1" | "thm4.1" => Ok(Theorem::WreathHooks),
            "4.2" | "thm4.2" => Ok(Theorem::AbelianExterior),
            "4.3" | "thm4.3" => Ok(Theorem::TypeBExterior),
            other => Err(Error::Parse(format!("unknown theorem {other:?}"))),
        }
    }
}

/// Unit-object shapes used by [`Theorem::WreathHooks`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Hook,
    TwoRow,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Hook => "hook",
            Flavor::TwoRow => "two-row",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "hook" | "hooks" => Ok(Flavor::Hook),
            "two-row" | "two-rows" => Ok(Flavor::TwoRow),
            other => Err(Error::Parse(format!("unknown unit flavor {other:?}"))),
        }
    }
}

/// Character of `S_k` twisting `V^{⊠k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eps {
    Sign,
    Trivial,
}

impl Eps {
    /// `(1^k)` for the sign, `(k)` for the trivial character.
    pub fn shape(self, k: usize) -> Partition {
        match self {
            Eps::Sign => Partition::column(k),
            Eps::Trivial => Partition::row(k),
        }
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eps::Sign => "sign",
            Eps::Trivial => "triv",
        })
    }
}

impl FromStr for Eps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sign" | "sgn" | "e" => Ok(Eps::Sign),
            "triv" | "trivial" | "h" => Ok(Eps::Trivial),
            other => Err(Error::Parse(format!("unknown ε choice {other:?}"))),
        }
    }
}

/// A choice of `ε_V` per irreducible index of `G`. Irreducibles without an
/// entry do not contribute induced generators, except that
/// [`EpsChoice::default_for`] puts the sign on every nontrivial irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EpsChoice(pub BTreeMap<usize, Eps>);

impl EpsChoice {
    /// Sign on every nontrivial irreducible.
    pub fn default_for(num_irreducibles: usize) -> Self {
        EpsChoice((1..num_irreducibles).map(|u| (u, Eps::Sign)).collect())
    }

    /// All `2^|indices|` assignments over the given irreducible indices.
    pub fn all(indices: &[usize]) -> Vec<Self> {
        (0..1usize << indices.len())
            .map(|mask| {
                EpsChoice(
                    indices
                        .iter()
                        .enumerate()
                        .map(|(bit, &u)| (u, if mask >> bit & 1 == 0 { Eps::Sign } else { Eps::Trivial }))
                        .collect(),
                )
            })
            .collect()
    }

    /// Parses `"chi:sign,V:triv"` against the irreducible names of `G`.
    /// Unnamed nontrivial irreducibles default to the sign.
    pub fn parse(s: &str, names: &[String]) -> Result<Self> {
        let mut choice = Self::default_for(names.len());
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (name, eps) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected name:sign|triv, got {item:?}")))?;
            let index = names
                .iter()
                .position(|n| n == name.trim())
                .ok_or_else(|| Error::UnknownLabel(name.trim().to_string()))?;
            choice.0.insert(index, eps.parse()?);
        }
        Ok(choice)
    }

    pub fn display(&self, names: &[String]) -> String {
        self.0
            .iter()
            .map(|(&u, e)| format!("{}:{e}", names[u]))
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn require(cond: bool, theorem: Theorem, ring: &RepRing, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InapplicableTheorem {
            theorem: theorem.id().into(),
            group: ring.context().name().into(),
            reason: reason.into(),
        })
    }
}

/// The generators named by `theorem` for `S_n(G)`, without duplicates or
/// zeros, in a fixed order. `flavor` and `eps` only affect
/// [`Theorem::WreathHooks`].
pub fn generator_family(
    ring: &RepRing,
    theorem: Theorem,
    flavor: Flavor,
    eps: &EpsChoice,
) -> Result<Vec<RepRingElement>> {
    let ctx = ring.context();
    let n = ring.n();
    let m = ctx.num_irreducibles();
    let at_unit = |p: Partition| RepRingElement::irreducible(MultiPartition::single(m, 0, p));
    let hooks = || (0..n).map(|k| hook(n, k).map(at_unit)).collect::<Result<Vec<_>>>();
    let two_rows = || {
        (0..=n / 2)
            .map(|k| two_row(n, k).map(at_unit))
            .collect::<Result<Vec<_>>>()
    };
    let mut gens = match theorem {
        Theorem::Hooks => {
            require(ctx.order() == 1, theorem, ring, "requires the trivial group")?;
            hooks()?
        }
        Theorem::TwoRows => {
            require(ctx.order() == 1, theorem, ring, "requires the trivial group")?;
            two_rows()?
        }
        Theorem::WreathHooks => {
            let mut gens = match flavor {
                Flavor::Hook => hooks()?,
                Flavor::TwoRow => two_rows()?,
            };
            for (&u, &e) in &eps.0 {
                if u >= m {
                    return Err(Error::UnknownLabel(format!("irreducible {u}")));
                }
                for k in 1..=n {
                    let twisted = RepRingElement::irreducible(MultiPartition::single(m, u, e.shape(k)));
                    let rest = RepRingElement::irreducible(MultiPartition::trivial(m, n - k));
                    gens.push(induce(&twisted, &rest, n)?);
                }
            }
            gens
        }
        Theorem::AbelianExterior | Theorem::TypeBExterior => {
            if theorem == Theorem::AbelianExterior {
                require(ctx.group().is_abelian(), theorem, ring, "requires an abelian group")?;
            } else {
                require(ctx.order() == 2, theorem, ring, "requires the group of order 2")?;
            }
            let mut gens = Vec::new();
            if n >= 2 {
                let u = at_unit(hook(n, 1)?);
                for k in 0..n {
                    gens.push(ring.exterior_power(&u, k)?);
                }
            } else {
                gens.push(ring.unit());
            }
            for chi in 1..m {
                let line = RepRingElement::irreducible(MultiPartition::single(m, chi, Partition::row(1)));
                let rest = RepRingElement::irreducible(MultiPartition::trivial(m, n.saturating_sub(1)));
                if n == 0 {
                    continue;
                }
                let v = induce(&line, &rest, n)?;
                for k in 0..=n {
                    gens.push(ring.exterior_power(&v, k)?);
                }
            }
            gens
        }
    };
    let mut seen = std::collections::HashSet::new();
    gens.retain(|g| !g.is_zero() && seen.insert(g.clone()));
    Ok(gens)
}

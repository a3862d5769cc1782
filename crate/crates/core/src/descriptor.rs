//! Instance descriptors and their text format.
//!
//! ```text
//! descriptors := descriptor ("---" descriptor)*
//! descriptor  := line*
//! line        := "name" WORD
//!              | "ring" ring-expr
//!              | "module" module-expr
//!              | "zero" INT
//!              | "labels" WORD+
//!              | "table" TABLE-NAME NEWLINE row* "end"
//!              | "#" any-text
//! ring-expr   := "Z" INT ("x" "Z" INT)* | "explicit"
//! module-expr := "ideal-lattice"
//!              | "submodule-lattice" ("regular" | "cyclic" INT+ | "explicit")
//!              | "explicit"
//! row         := INT+
//! ```
//!
//! Tables required by each variant:
//!
//! * `ring explicit`: `ring.add`, `ring.mul` (order × order).
//! * `module submodule-lattice explicit`: `group.add` (|A| × |A|) and
//!   `group.action` (one row per ring element).
//! * `module explicit`: `lattice.leq` (0/1 rows), `module.add`,
//!   `module.action` (one row per ring element) and a `zero` line; `labels`
//!   is optional.
//!
//! `cyclic m1 … mk` is `Z_m1 × … × Z_mk` with ring element `r` acting as
//! the integer `r`, so it is meant for rings `Z_n`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instances::{ideal_lattice_le_module, submodule_lattice_le_module, FiniteModule};
use crate::lattice::FiniteBoundedLattice;
use crate::module::LeModule;
use crate::ring::FiniteRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Zn(usize),
    Product(Box<RingSpec>, Box<RingSpec>),
    Explicit { add: Vec<Vec<usize>>, mul: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    IdealLattice,
    /// Submodule lattice of the ring as a module over itself.
    Regular,
    /// Submodule lattice of a product of cyclic groups.
    Cyclic(Vec<usize>),
    /// Submodule lattice of a finite module given by tables.
    ExplicitModule {
        add: Vec<Vec<usize>>,
        action: Vec<Vec<usize>>,
    },
    /// An le-module given directly by its tables.
    Explicit {
        leq: Vec<Vec<bool>>,
        add: Vec<Vec<usize>>,
        zero: usize,
        action: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDescriptor {
    pub name: String,
    pub ring: RingSpec,
    pub module: ModuleSpec,
}

impl RingSpec {
    pub fn build(&self) -> Result<FiniteRing> {
        match self {
            RingSpec::Zn(n) => FiniteRing::zn(*n),
            RingSpec::Product(a, b) => Ok(FiniteRing::product(&a.build()?, &b.build()?)),
            RingSpec::Explicit { add, mul } => FiniteRing::from_tables(add, mul),
        }
    }

    fn zn_factors(&self) -> Option<Vec<usize>> {
        match self {
            RingSpec::Zn(n) => Some(vec![*n]),
            RingSpec::Product(a, b) => {
                let mut f = a.zn_factors()?;
                f.extend(b.zn_factors()?);
                Some(f)
            }
            RingSpec::Explicit { .. } => None,
        }
    }
}

impl InstanceDescriptor {
    pub fn build(&self) -> Result<LeModule> {
        let ring = self.ring.build()?;
        match &self.module {
            ModuleSpec::IdealLattice => ideal_lattice_le_module(&ring),
            ModuleSpec::Regular => submodule_lattice_le_module(&ring, &FiniteModule::regular(&ring)),
            ModuleSpec::Cyclic(moduli) => {
                submodule_lattice_le_module(&ring, &FiniteModule::cyclic_product(&ring, moduli)?)
            }
            ModuleSpec::ExplicitModule { add, action } => {
                let module = FiniteModule::from_tables(&ring, add.clone(), action.clone())?;
                submodule_lattice_le_module(&ring, &module)
            }
            ModuleSpec::Explicit {
                leq,
                add,
                zero,
                action,
                labels,
            } => {
                let mut lattice = FiniteBoundedLattice::from_leq(leq)?;
                if let Some(labels) = labels {
                    if labels.len() != lattice.size() {
                        return Err(Error::table("labels", "one label per lattice element is required"));
                    }
                    lattice = lattice.with_labels(labels.clone());
                }
                LeModule::from_tables(ring, lattice, add, *zero, action)
            }
        }
    }

    /// Renders the descriptor in the text format. Products with explicit
    /// factors are written out as explicit tables, which needs a valid ring.
    pub fn to_text(&self) -> Result<String> {
        let mut out = String::new();
        writeln!(out, "name {}", self.name).unwrap();
        match self.ring.zn_factors() {
            Some(factors) => {
                let parts: Vec<String> = factors.iter().map(|n| format!("Z{n}")).collect();
                writeln!(out, "ring {}", parts.join(" x ")).unwrap();
            }
            None => {
                let ring = self.ring.build()?;
                writeln!(out, "ring explicit").unwrap();
                write_table(&mut out, "ring.add", &ring.add_table());
                write_table(&mut out, "ring.mul", &ring.mul_table());
            }
        }
        match &self.module {
            ModuleSpec::IdealLattice => writeln!(out, "module ideal-lattice").unwrap(),
            ModuleSpec::Regular => writeln!(out, "module submodule-lattice regular").unwrap(),
            ModuleSpec::Cyclic(moduli) => {
                let parts: Vec<String> = moduli.iter().map(ToString::to_string).collect();
                writeln!(out, "module submodule-lattice cyclic {}", parts.join(" ")).unwrap();
            }
            ModuleSpec::ExplicitModule { add, action } => {
                writeln!(out, "module submodule-lattice explicit").unwrap();
                write_table(&mut out, "group.add", add);
                write_table(&mut out, "group.action", action);
            }
            ModuleSpec::Explicit {
                leq,
                add,
                zero,
                action,
                labels,
            } => {
                writeln!(out, "module explicit").unwrap();
                let leq: Vec<Vec<usize>> = leq
                    .iter()
                    .map(|row| row.iter().map(|&b| usize::from(b)).collect())
                    .collect();
                write_table(&mut out, "lattice.leq", &leq);
                write_table(&mut out, "module.add", add);
                write_table(&mut out, "module.action", action);
                writeln!(out, "zero {zero}").unwrap();
                if let Some(labels) = labels {
                    writeln!(out, "labels {}", labels.join(" ")).unwrap();
                }
            }
        }
        Ok(out)
    }
}

fn write_table(out: &mut String, name: &str, rows: &[Vec<usize>]) {
    writeln!(out, "table {name}").unwrap();
    for row in rows {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    writeln!(out, "end").unwrap();
}

/// Renders several descriptors separated by `---`.
pub fn to_text_many(descriptors: &[InstanceDescriptor]) -> Result<String> {
    let parts = descriptors
        .iter()
        .map(InstanceDescriptor::to_text)
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.join("---\n"))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_int(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, found `{tok}`")))
}

fn parse_zn(line: usize, tok: &str) -> Result<usize> {
    tok.strip_prefix('Z')
        .ok_or_else(|| parse_err(line, format!("expected `Z<n>`, found `{tok}`")))
        .and_then(|n| parse_int(line, n))
}

#[derive(Default)]
struct Draft {
    name: Option<String>,
    ring: Option<(usize, Vec<usize>)>,
    module: Option<(usize, Vec<String>)>,
    zero: Option<usize>,
    labels: Option<Vec<String>>,
    tables: BTreeMap<String, (usize, Vec<Vec<usize>>)>,
    first_line: usize,
}

impl Draft {
    fn take_table(&mut self, name: &str, context_line: usize) -> Result<Vec<Vec<usize>>> {
        self.tables
            .remove(name)
            .map(|(_, rows)| rows)
            .ok_or_else(|| parse_err(context_line, format!("missing table `{name}`")))
    }

    fn finish(mut self, end_line: usize) -> Result<InstanceDescriptor> {
        let name = self
            .name
            .take()
            .ok_or_else(|| parse_err(self.first_line, "missing `name` line"))?;
        let (ring_line, factors) = self
            .ring
            .take()
            .ok_or_else(|| parse_err(self.first_line, "missing `ring` line"))?;
        let ring = if factors.is_empty() {
            RingSpec::Explicit {
                add: self.take_table("ring.add", ring_line)?,
                mul: self.take_table("ring.mul", ring_line)?,
            }
        } else {
            let mut it = factors.into_iter().map(RingSpec::Zn);
            let first = it.next().expect("nonempty");
            it.fold(first, |acc, f| RingSpec::Product(Box::new(acc), Box::new(f)))
        };
        let (module_line, words) = self
            .module
            .take()
            .ok_or_else(|| parse_err(self.first_line, "missing `module` line"))?;
        let words: Vec<&str> = words.iter().map(String::as_str).collect();
        let module = match words.as_slice() {
            ["ideal-lattice"] => ModuleSpec::IdealLattice,
            ["submodule-lattice", "regular"] => ModuleSpec::Regular,
            ["submodule-lattice", "cyclic", rest @ ..] if !rest.is_empty() => ModuleSpec::Cyclic(
                rest.iter()
                    .map(|t| parse_int(module_line, t))
                    .collect::<Result<_>>()?,
            ),
            ["submodule-lattice", "explicit"] => ModuleSpec::ExplicitModule {
                add: self.take_table("group.add", module_line)?,
                action: self.take_table("group.action", module_line)?,
            },
            ["explicit"] => {
                let leq_rows = self.take_table("lattice.leq", module_line)?;
                let leq = leq_rows
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|v| match v {
                                0 => Ok(false),
                                1 => Ok(true),
                                _ => Err(parse_err(module_line, "lattice.leq entries must be 0 or 1")),
                            })
                            .collect::<Result<Vec<bool>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                ModuleSpec::Explicit {
                    leq,
                    add: self.take_table("module.add", module_line)?,
                    zero: self
                        .zero
                        .take()
                        .ok_or_else(|| parse_err(module_line, "missing `zero` line"))?,
                    action: self.take_table("module.action", module_line)?,
                    labels: self.labels.take(),
                }
            }
            _ => return Err(parse_err(module_line, format!("unknown module form `{}`", words.join(" ")))),
        };
        if let Some((name, (line, _))) = self.tables.into_iter().next() {
            return Err(parse_err(line, format!("table `{name}` is not used by this descriptor")));
        }
        if self.zero.is_some() || self.labels.is_some() {
            return Err(parse_err(end_line, "`zero`/`labels` only apply to `module explicit`"));
        }
        Ok(InstanceDescriptor { name, ring, module })
    }
}

/// Parses one or more descriptors separated by `---` lines.
pub fn parse_descriptors(text: &str) -> Result<Vec<InstanceDescriptor>> {
    let mut out = Vec::new();
    let mut draft = Draft {
        first_line: 1,
        ..Draft::default()
    };
    let mut touched = false;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut last_line = 0;

    while let Some((no, raw)) = lines.next() {
        last_line = no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "---" {
            if touched {
                out.push(std::mem::take(&mut draft).finish(no)?);
            }
            draft.first_line = no + 1;
            touched = false;
            continue;
        }
        touched = true;
        let mut words = line.split_whitespace();
        let keyword = words.next().expect("nonempty line");
        let rest: Vec<&str> = words.collect();
        match keyword {
            "name" => match rest.as_slice() {
                [n] if draft.name.is_none() => draft.name = Some((*n).to_string()),
                [_] => return Err(parse_err(no, "duplicate `name`")),
                _ => return Err(parse_err(no, "`name` takes exactly one word")),
            },
            "ring" => {
                if draft.ring.is_some() {
                    return Err(parse_err(no, "duplicate `ring`"));
                }
                let factors = match rest.as_slice() {
                    ["explicit"] => Vec::new(),
                    [] => return Err(parse_err(no, "`ring` needs an expression")),
                    toks => {
                        let mut factors = Vec::new();
                        for (k, tok) in toks.iter().enumerate() {
                            if k % 2 == 1 {
                                if *tok != "x" {
                                    return Err(parse_err(no, format!("expected `x`, found `{tok}`")));
                                }
                            } else {
                                factors.push(parse_zn(no, tok)?);
                            }
                        }
                        if toks.len() % 2 == 0 {
                            return Err(parse_err(no, "dangling `x` in ring expression"));
                        }
                        factors
                    }
                };
                draft.ring = Some((no, factors));
            }
            "module" => {
                if draft.module.is_some() {
                    return Err(parse_err(no, "duplicate `module`"));
                }
                if rest.is_empty() {
                    return Err(parse_err(no, "`module` needs an expression"));
                }
                draft.module = Some((no, rest.iter().map(|s| (*s).to_string()).collect()));
            }
            "zero" => match rest.as_slice() {
                [z] => draft.zero = Some(parse_int(no, z)?),
                _ => return Err(parse_err(no, "`zero` takes one integer")),
            },
            "labels" => {
                if rest.is_empty() {
                    return Err(parse_err(no, "`labels` needs at least one label"));
                }
                draft.labels = Some(rest.iter().map(|s| (*s).to_string()).collect());
            }
            "table" => {
                let name = match rest.as_slice() {
                    [n] => (*n).to_string(),
                    _ => return Err(parse_err(no, "`table` takes one name")),
                };
                let mut rows = Vec::new();
                loop {
                    let (row_no, row) = lines
                        .next()
                        .ok_or_else(|| parse_err(no, format!("table `{name}` is not closed by `end`")))?;
                    last_line = row_no;
                    let row = row.trim();
                    if row == "end" {
                        break;
                    }
                    if row.is_empty() || row.starts_with('#') {
                        continue;
                    }
                    rows.push(
                        row.split_whitespace()
                            .map(|t| parse_int(row_no, t))
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                if draft.tables.insert(name.clone(), (no, rows)).is_some() {
                    return Err(parse_err(no, format!("duplicate table `{name}`")));
                }
            }
            other => return Err(parse_err(no, format!("unknown keyword `{other}`"))),
        }
    }
    if touched {
        out.push(draft.finish(last_line)?);
    }
    Ok(out)
}

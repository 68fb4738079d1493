//! Problem instances: machines, part routings, pair constraints and the
//! maximum cell size, together with the line-oriented text format.
//!
//! Machine indices are 0-based in the API and 1-based in every text format.
//!
//! ```text
//! machines <m>
//! max_cell_size <N>
//! part <volume> : <idx> <idx> ... <idx>
//! cohabit <i> <j>
//! separate <i> <j>
//! ```
//!
//! `#` starts a comment. Serialization writes sections in the order above,
//! with constraint pairs sorted.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dsu::DisjointSet;
use crate::error::{Error, Result};
use crate::flow::Flow;

/// Unordered machine pair, stored with the smaller index first.
pub type MachinePair = (usize, usize);

fn normalize(a: usize, b: usize) -> MachinePair {
    (a.min(b), a.max(b))
}

/// A part type: its machine routing and mean production volume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    routing: Vec<usize>,
    volume: Flow,
}

impl Part {
    /// Rejects empty routings and a machine immediately following itself.
    pub fn new(routing: Vec<usize>, volume: Flow) -> Result<Self> {
        if routing.is_empty() {
            return Err(Error::Semantic("part routing is empty".into()));
        }
        if let Some(w) = routing.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Semantic(format!(
                "machine {} follows itself in a routing",
                w[0] + 1
            )));
        }
        Ok(Self { routing, volume })
    }

    pub fn routing(&self) -> &[usize] {
        &self.routing
    }

    pub fn volume(&self) -> Flow {
        self.volume
    }
}

/// A validated cell formation instance. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    machine_count: usize,
    parts: Vec<Part>,
    cohabit: BTreeSet<MachinePair>,
    separate: BTreeSet<MachinePair>,
    max_cell_size: usize,
}

impl Instance {
    pub fn new(
        machine_count: usize,
        max_cell_size: usize,
        parts: Vec<Part>,
        cohabit: impl IntoIterator<Item = MachinePair>,
        separate: impl IntoIterator<Item = MachinePair>,
    ) -> Result<Self> {
        if machine_count < 2 {
            return Err(Error::Semantic(format!(
                "at least 2 machines required, got {machine_count}"
            )));
        }
        if max_cell_size == 0 {
            return Err(Error::Semantic("max_cell_size must be at least 1".into()));
        }
        let check = |i: usize, ctx: &str| {
            if i >= machine_count {
                Err(Error::Semantic(format!(
                    "{ctx} references machine {} but only {machine_count} machines exist",
                    i + 1
                )))
            } else {
                Ok(())
            }
        };
        for (k, part) in parts.iter().enumerate() {
            for &i in part.routing() {
                check(i, &format!("part {}", k + 1))?;
            }
        }
        let pairs = |src: &mut dyn Iterator<Item = MachinePair>, ctx: &str| {
            let mut set = BTreeSet::new();
            for (a, b) in src {
                check(a, ctx)?;
                check(b, ctx)?;
                if a == b {
                    return Err(Error::Semantic(format!(
                        "{ctx} pair ({}, {}) is a self-loop",
                        a + 1,
                        b + 1
                    )));
                }
                set.insert(normalize(a, b));
            }
            Ok(set)
        };
        let cohabit = pairs(&mut cohabit.into_iter(), "cohabit")?;
        let separate = pairs(&mut separate.into_iter(), "separate")?;
        if let Some(&(a, b)) = cohabit.intersection(&separate).next() {
            return Err(Error::Semantic(format!(
                "SC and SN overlap on pair ({},{})",
                a + 1,
                b + 1
            )));
        }
        Ok(Self {
            machine_count,
            parts,
            cohabit,
            separate,
            max_cell_size,
        })
    }

    pub fn machine_count(&self) -> usize {
        self.machine_count
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn cohabit(&self) -> &BTreeSet<MachinePair> {
        &self.cohabit
    }

    pub fn separate(&self) -> &BTreeSet<MachinePair> {
        &self.separate
    }

    pub fn max_cell_size(&self) -> usize {
        self.max_cell_size
    }

    /// Non-fatal problems: groups of machines chained together by
    /// cohabitation pairs that cannot fit in a single cell.
    pub fn warnings(&self) -> Vec<String> {
        let mut dsu = DisjointSet::new(self.machine_count);
        for &(a, b) in &self.cohabit {
            dsu.union(a, b);
        }
        let labels = dsu.canonical_labels();
        let groups = labels.iter().copied().max().map_or(0, |l| l + 1);
        let mut members = vec![Vec::new(); groups];
        for (machine, &label) in labels.iter().enumerate() {
            members[label].push(machine + 1);
        }
        members
            .into_iter()
            .filter(|g| g.len() > self.max_cell_size)
            .map(|g| {
                format!(
                    "cohabitation group {:?} has {} machines, more than max_cell_size {}; no feasible partition exists",
                    g,
                    g.len(),
                    self.max_cell_size
                )
            })
            .collect()
    }

    /// Parses the text format; see the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut machines: Option<usize> = None;
        let mut max_cell: Option<usize> = None;
        let mut parts = Vec::new();
        let mut cohabit = Vec::new();
        let mut separate = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax { line, message };
            let (keyword, rest) = content
                .split_once(char::is_whitespace)
                .map(|(k, r)| (k, r.trim()))
                .unwrap_or((content, ""));

            let index = |tok: &str| -> Result<usize> {
                match tok.parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(syntax(format!("expected a 1-based machine index, got {tok:?}"))),
                }
            };

            match keyword {
                "machines" | "max_cell_size" => {
                    let value: usize = rest
                        .parse()
                        .map_err(|_| syntax(format!("expected an integer after {keyword}")))?;
                    let slot = if keyword == "machines" { &mut machines } else { &mut max_cell };
                    if slot.replace(value).is_some() {
                        return Err(syntax(format!("duplicate {keyword} line")));
                    }
                }
                "part" => {
                    let (volume, routing) = rest
                        .split_once(':')
                        .ok_or_else(|| syntax("expected `part <volume> : <machines>`".into()))?;
                    let volume: Flow = volume
                        .trim()
                        .parse()
                        .map_err(|e: crate::flow::ParseFlowError| syntax(e.to_string()))?;
                    let routing = routing
                        .split_whitespace()
                        .map(index)
                        .collect::<Result<Vec<_>>>()?;
                    let part = Part::new(routing, volume).map_err(|e| match e {
                        Error::Semantic(msg) => syntax(msg),
                        other => other,
                    })?;
                    parts.push(part);
                }
                "cohabit" | "separate" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    if toks.len() != 2 {
                        return Err(syntax(format!("expected `{keyword} <i> <j>`")));
                    }
                    let pair = (index(toks[0])?, index(toks[1])?);
                    if keyword == "cohabit" {
                        cohabit.push(pair);
                    } else {
                        separate.push(pair);
                    }
                }
                other => return Err(syntax(format!("unknown keyword {other:?}"))),
            }
        }

        let machines = machines.ok_or_else(|| Error::Semantic("missing `machines` line".into()))?;
        let max_cell =
            max_cell.ok_or_else(|| Error::Semantic("missing `max_cell_size` line".into()))?;
        Instance::new(machines, max_cell, parts, cohabit, separate)
    }

    /// Canonical text form; `Instance::parse` inverts it exactly.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "machines {}", self.machine_count)?;
        writeln!(f, "max_cell_size {}", self.max_cell_size)?;
        for part in &self.parts {
            write!(f, "part {} :", part.volume)?;
            for &i in &part.routing {
                write!(f, " {}", i + 1)?;
            }
            writeln!(f)?;
        }
        for &(a, b) in &self.cohabit {
            writeln!(f, "cohabit {} {}", a + 1, b + 1)?;
        }
        for &(a, b) in &self.separate {
            writeln!(f, "separate {} {}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// Random instance generator.
///
/// Routing lengths are uniform in `[2, max_routing_len]`, each next machine is
/// uniform over the machines other than the previous one, and volumes are
/// uniform integers in `[1, 10]`. No pair constraints are generated. The
/// stream comes from ChaCha8 seeded with `seed`, so output is identical on
/// every platform.
pub fn generate_instance(
    machines: usize,
    parts: usize,
    max_cell_size: usize,
    max_routing_len: usize,
    seed: u64,
) -> Result<Instance> {
    if machines < 2 || parts < 1 || max_routing_len < 2 || max_cell_size < 1 {
        return Err(Error::InvalidParameter(format!(
            "generator needs machines >= 2, parts >= 1, max_cell_size >= 1 and max_routing_len >= 2 \
             (got {machines}, {parts}, {max_cell_size}, {max_routing_len})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut generated = Vec::with_capacity(parts);
    for _ in 0..parts {
        let len = rng.gen_range(2..=max_routing_len);
        let mut routing = Vec::with_capacity(len);
        let mut prev = rng.gen_range(0..machines);
        routing.push(prev);
        for _ in 1..len {
            // Draw from the m-1 machines other than `prev`.
            let mut next = rng.gen_range(0..machines - 1);
            if next >= prev {
                next += 1;
            }
            routing.push(next);
            prev = next;
        }
        let volume = Flow::from_int(rng.gen_range(1..=10));
        generated.push(Part::new(routing, volume)?);
    }
    Instance::new(machines, max_cell_size, generated, [], [])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_instance() {
        let inst = Instance::parse("machines 2\nmax_cell_size 2\npart 5 : 1 2\n").unwrap();
        assert_eq!(inst.machine_count(), 2);
        assert_eq!(inst.max_cell_size(), 2);
        assert_eq!(inst.parts().len(), 1);
        assert_eq!(inst.parts()[0].routing(), &[0, 1]);
        assert_eq!(inst.parts()[0].volume(), Flow::from_int(5));
        assert!(inst.cohabit().is_empty() && inst.separate().is_empty());
    }

    #[test]
    fn rejects_overlapping_constraints() {
        let err = Instance::parse(
            "machines 3\nmax_cell_size 2\npart 1 : 1 2\ncohabit 1 2\nseparate 2 1\n",
        )
        .unwrap_err();
        assert_eq!(err, Error::Semantic("SC and SN overlap on pair (1,2)".into()));
    }

    #[test]
    fn reports_line_numbers() {
        let err = Instance::parse("machines 3\n# comment\nmax_cell_size x\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err:?}");

        let err = Instance::parse("machines 3\nmax_cell_size 2\npart 1 : 1 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err:?}");

        let err = Instance::parse("machines 3\nmax_cell_size 2\nfrobnicate\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn rejects_semantic_violations() {
        let cases = [
            "machines 1\nmax_cell_size 1\n",
            "machines 3\nmax_cell_size 0\n",
            "machines 3\nmax_cell_size 2\npart 1 : 1 4\n",
            "machines 3\nmax_cell_size 2\ncohabit 2 2\n",
            "machines 3\nmax_cell_size 2\nseparate 1 9\n",
            "max_cell_size 2\n",
            "machines 3\n",
        ];
        for text in cases {
            assert!(
                matches!(Instance::parse(text), Err(Error::Semantic(_))),
                "{text:?}"
            );
        }
    }

    #[test]
    fn revisits_are_allowed() {
        let inst = Instance::parse("machines 3\nmax_cell_size 3\npart 2 : 1 2 1 3\n").unwrap();
        assert_eq!(inst.parts()[0].routing(), &[0, 1, 0, 2]);
    }

    #[test]
    fn serialization_order_is_canonical() {
        let text = "# header\nseparate 4 3\nmachines 4\ncohabit 2 1\npart 1.5 : 1 2 # trailing\nmax_cell_size 2\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(
            inst.serialize(),
            "machines 4\nmax_cell_size 2\npart 1.5 : 1 2\ncohabit 1 2\nseparate 3 4\n"
        );
        assert_eq!(Instance::parse(&inst.serialize()).unwrap(), inst);
    }

    #[test]
    fn warns_about_oversized_cohabitation_groups() {
        let inst = Instance::parse(
            "machines 4\nmax_cell_size 2\ncohabit 1 2\ncohabit 2 3\n",
        )
        .unwrap();
        let warnings = inst.warnings();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("[1, 2, 3]"));
    }

    #[test]
    fn generator_is_deterministic() {
        let a = generate_instance(8, 20, 5, 6, 42).unwrap();
        let b = generate_instance(8, 20, 5, 6, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_instance(8, 20, 5, 6, 43).unwrap());
    }

    #[test]
    fn generator_matches_requested_dimensions() {
        let inst = generate_instance(50, 100, 7, 10, 1).unwrap();
        assert_eq!(inst.machine_count(), 50);
        assert_eq!(inst.parts().len(), 100);
        assert_eq!(inst.max_cell_size(), 7);
        for part in inst.parts() {
            assert!((2..=10).contains(&part.routing().len()));
            let v = part.volume();
            assert!(v >= Flow::from_int(1) && v <= Flow::from_int(10));
            assert_eq!(v.raw() % crate::flow::SCALE, 0);
        }
    }

    #[test]
    fn generator_rejects_bad_arguments() {
        assert!(generate_instance(1, 5, 2, 4, 0).is_err());
        assert!(generate_instance(5, 0, 2, 4, 0).is_err());
        assert!(generate_instance(5, 5, 2, 1, 0).is_err());
    }
}

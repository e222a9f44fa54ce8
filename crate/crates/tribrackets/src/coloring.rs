//! Region colorings of link diagrams over a tribracket: counting, listing,
//! image subtribrackets, and the subtribracket-polynomial enhancement.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{generated_subtribracket, Tribracket};
use crate::diagram::LinkDiagram;
use crate::polynomial::{canonical_string, parse_polynomial, subtribracket_polynomial};

/// One admissible assignment of tribracket elements to diagram regions,
/// 1-based, indexed by region id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RegionColoring {
    pub colors: Vec<usize>,
}

/// Elimination plan: regions in assignment order, each either forced by one
/// relation or a free branch variable.
struct Plan {
    steps: Vec<(usize, Option<usize>)>,
    incident: Vec<Vec<usize>>, // region -> relations touching it
}

fn make_plan(d: &LinkDiagram) -> Plan {
    let nregions = d.region_count();
    let rels = d.relations();
    let mut known = vec![false; nregions];
    let mut used = vec![false; rels.len()];
    let mut steps = Vec::with_capacity(nregions);
    let mut known_count = 0;
    while known_count < nregions {
        let mut progressed = true;
        while progressed {
            progressed = false;
            for (ri, rel) in rels.iter().enumerate() {
                if used[ri] {
                    continue;
                }
                let mut unknown = None;
                let mut unknown_count = 0;
                for r in rel.regions() {
                    if !known[r] && unknown != Some(r) {
                        // a region repeated inside one relation counts once
                        if unknown.is_none() {
                            unknown = Some(r);
                            unknown_count = 1;
                        } else {
                            unknown_count = 2;
                        }
                    }
                }
                match unknown_count {
                    0 => used[ri] = true,
                    1 => {
                        let r = unknown.unwrap();
                        steps.push((r, Some(ri)));
                        known[r] = true;
                        known_count += 1;
                        used[ri] = true;
                        progressed = true;
                    }
                    _ => {}
                }
            }
        }
        if known_count < nregions {
            let r = known.iter().position(|&k| !k).unwrap();
            steps.push((r, None));
            known[r] = true;
            known_count += 1;
        }
    }
    let mut incident = vec![Vec::new(); nregions];
    for (ri, rel) in rels.iter().enumerate() {
        for r in rel.regions() {
            if !incident[r].contains(&ri) {
                incident[r].push(ri);
            }
        }
    }
    Plan { steps, incident }
}

const UNSET: u8 = u8::MAX;

struct Solver<'a> {
    x: &'a Tribracket,
    d: &'a LinkDiagram,
    plan: Plan,
    col: Vec<u8>,
}

impl<'a> Solver<'a> {
    fn new(x: &'a Tribracket, d: &'a LinkDiagram) -> Self {
        assert!(x.n() < UNSET as usize, "order too large for the solver");
        let plan = make_plan(d);
        let col = vec![UNSET; d.region_count()];
        Solver { x, d, plan, col }
    }

    /// Relations incident to r that are fully assigned must hold.
    fn partial_ok(&self, r: usize) -> bool {
        let rels = self.d.relations();
        for &ri in &self.plan.incident[r] {
            let rel = rels[ri];
            let (a, b, c, dd) = (
                self.col[rel.a],
                self.col[rel.b],
                self.col[rel.c],
                self.col[rel.d],
            );
            if a != UNSET && b != UNSET && c != UNSET && dd != UNSET
                && self.x.ev0(a, b, c) != dd
            {
                return false;
            }
        }
        true
    }

    fn all_ok(&self) -> bool {
        self.d.relations().iter().all(|rel| {
            self.x.ev0(self.col[rel.a], self.col[rel.b], self.col[rel.c]) == self.col[rel.d]
        })
    }

    /// Value forced by relation ri when exactly one of its regions is unset.
    fn deduce(&self, ri: usize) -> Option<(usize, u8)> {
        let rel = self.d.relations()[ri];
        let (a, b, c, dd) = (
            self.col[rel.a],
            self.col[rel.b],
            self.col[rel.c],
            self.col[rel.d],
        );
        let unset = [a, b, c, dd].iter().filter(|&&v| v == UNSET).count();
        if unset != 1 {
            return None;
        }
        if dd == UNSET {
            Some((rel.d, self.x.ev0(a, b, c)))
        } else if c == UNSET {
            Some((rel.c, self.x.rinv0(a, b, dd)))
        } else if b == UNSET {
            Some((rel.b, self.x.cinv0(a, dd, c)))
        } else {
            Some((rel.a, self.x.linv0(dd, b, c)))
        }
    }

    fn run(&mut self, step: usize, visit: &mut impl FnMut(&[u8])) {
        if step == self.plan.steps.len() {
            if self.all_ok() {
                visit(&self.col);
            }
            return;
        }
        let (r, forced_by) = self.plan.steps[step];
        if self.col[r] != UNSET {
            self.run(step + 1, visit);
            return;
        }
        match forced_by.and_then(|ri| self.deduce(ri)) {
            Some((rr, v)) => {
                self.col[rr] = v;
                if self.partial_ok(rr) {
                    self.run(step + 1, visit);
                }
                self.col[rr] = UNSET;
            }
            None => {
                for v in 0..self.x.n() as u8 {
                    self.col[r] = v;
                    if self.partial_ok(r) {
                        self.run(step + 1, visit);
                    }
                    self.col[r] = UNSET;
                }
            }
        }
    }
}

/// Number of admissible region colorings: the counting invariant.
pub fn count_colorings(x: &Tribracket, d: &LinkDiagram) -> u64 {
    let mut total = 0u64;
    Solver::new(x, d).run(0, &mut |_| total += 1);
    total
}

/// All colorings, in lexicographic order of the assignment vector.
pub fn enumerate_colorings(x: &Tribracket, d: &LinkDiagram) -> Vec<RegionColoring> {
    let mut out = Vec::new();
    Solver::new(x, d).run(0, &mut |col| {
        out.push(RegionColoring {
            colors: col.iter().map(|&v| v as usize + 1).collect(),
        });
    });
    out.sort();
    out
}

/// The subtribracket generated by the colors the coloring uses.
pub fn image_subtribracket(x: &Tribracket, col: &RegionColoring) -> Vec<usize> {
    let mut seed: Vec<usize> = col.colors.clone();
    seed.sort_unstable();
    seed.dedup();
    generated_subtribracket(x, &seed).expect("coloring values are in range")
}

/// Multiset of canonical polynomial strings with multiplicities. Iteration
/// order is (total degree of the leading term, canonical string).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnhancementMultiset {
    entries: std::collections::BTreeMap<(u32, String), u64>,
}

impl EnhancementMultiset {
    pub fn from_pairs(pairs: &[(&str, u64)]) -> Self {
        let mut out = Self::default();
        for &(s, mult) in pairs {
            let p = parse_polynomial(s).expect("well-formed polynomial string");
            out.insert(canonical_string(&p), p.leading_degree(), mult);
        }
        out
    }

    fn insert(&mut self, key: String, degree: u32, mult: u64) {
        *self.entries.entry((degree, key)).or_insert(0) += mult;
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, poly: &str) -> u64 {
        self.entries
            .iter()
            .find(|((_, k), _)| k == poly)
            .map(|(_, &m)| m)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.entries.iter().map(|((_, k), &m)| (k.as_str(), m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for EnhancementMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(poly, mult)| format!("{mult}\u{00d7} {poly}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The subtribracket polynomial enhancement: for every coloring, the
/// polynomial of its image subtribracket.
pub fn enhancement(x: &Tribracket, d: &LinkDiagram) -> EnhancementMultiset {
    let mut out = EnhancementMultiset::default();
    let mut cache: HashMap<Vec<usize>, (u32, String)> = HashMap::new();
    let mut colorings = 0u64;
    Solver::new(x, d).run(0, &mut |col| {
        colorings += 1;
        let mut used: Vec<usize> = col.iter().map(|&v| v as usize + 1).collect();
        used.sort_unstable();
        used.dedup();
        let (degree, key) = cache
            .entry(used)
            .or_insert_with_key(|seed| {
                let image = generated_subtribracket(x, seed).expect("colors in range");
                let p = subtribracket_polynomial(x, &image)
                    .expect("closures are closed");
                (p.leading_degree(), canonical_string(&p))
            })
            .clone();
        out.insert(key, degree, 1);
    });
    assert_eq!(out.total(), colorings, "every coloring contributes once");
    out
}

//! Oriented planar diagram codes, faces, crossing signs, coloring relations.
//!
//! Input is Knot-Atlas-style PD: tokens `X[a,b,c,d]` listing the four edges
//! at a crossing counterclockwise from the incoming under-strand, plus a
//! standalone `UNKNOT k` directive for crossingless unlinks. Lines starting
//! with `#` are comments.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PdError {
    #[error("bad token {0:?}")]
    BadToken(String),
    #[error("UNKNOT directive needs a count of at least 1")]
    UnknotCount,
    #[error("edge {label} appears {times} times; every edge must appear exactly twice")]
    EdgeCount { label: u32, times: usize },
    #[error("orientation clash on edge {0}")]
    OrientationClash(u32),
    #[error("over-strand orientation clash at crossing {0}")]
    OverPairClash(usize),
    #[error("edge successors do not close into cycles")]
    BrokenCycle,
    #[error("face trace gives {faces} faces where {expected} were expected; diagram is not planar-realizable")]
    NotPlanar { faces: usize, expected: usize },
    #[error("component {k} out of range 1..={total}")]
    InvalidComponent { k: usize, total: usize },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    In,
    Out,
}

/// A parsed, orientation-resolved PD code.
///
/// Edge labels are kept as written; components list their edges in
/// orientation order. Components of `UNKNOT` directives carry no edges and
/// are counted separately in `extra_circles`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDCode {
    crossings: Vec<[u32; 4]>,
    extra_circles: usize,
    roles: Vec<[bool; 4]>, // true = the port-1 end is incoming (port 3 outgoing)
    components: Vec<Vec<u32>>,
    comp_of: HashMap<u32, usize>,
    signs: Vec<i8>,
}

impl PDCode {
    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.crossings.len() * 2
    }

    /// Total components, including crossingless circles.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.extra_circles
    }

    /// Edges of each crossing-carrying component, in orientation order.
    pub fn component_edges(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Pairwise linking numbers, indexed like `component_edges`; crossingless
    /// circles link nothing and are omitted.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let k = self.components.len();
        let mut out = vec![vec![0i64; k]; k];
        for (ci, tup) in self.crossings.iter().enumerate() {
            let cu = self.comp_of[&tup[0]];
            let co = self.comp_of[&tup[1]];
            if cu != co {
                out[cu][co] += self.signs[ci] as i64;
                out[co][cu] += self.signs[ci] as i64;
            }
        }
        for row in &mut out {
            for v in row {
                *v /= 2;
            }
        }
        out
    }
}

fn tokenize(text: &str) -> Vec<&str> {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| l.split_whitespace())
        .collect()
}

/// Parse PD text. Empty input (after comments) is the crossingless unknot.
pub fn parse_pd(text: &str) -> Result<PDCode, PdError> {
    let toks = tokenize(text);
    if toks.is_empty() {
        return build(Vec::new(), 1);
    }
    if toks[0] == "UNKNOT" {
        if toks.len() != 2 {
            return Err(PdError::BadToken(toks.join(" ")));
        }
        let k: usize = toks[1].parse().map_err(|_| PdError::UnknotCount)?;
        if k == 0 {
            return Err(PdError::UnknotCount);
        }
        return build(Vec::new(), k);
    }
    let mut crossings = Vec::with_capacity(toks.len());
    for t in toks {
        let inner = t
            .strip_prefix("X[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| PdError::BadToken(t.to_string()))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(PdError::BadToken(t.to_string()));
        }
        let mut tup = [0u32; 4];
        for (slot, p) in tup.iter_mut().zip(parts) {
            *slot = p
                .trim()
                .parse::<u32>()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| PdError::BadToken(t.to_string()))?;
        }
        crossings.push(tup);
    }
    build(crossings, 0)
}

fn build(crossings: Vec<[u32; 4]>, extra_circles: usize) -> Result<PDCode, PdError> {
    let nc = crossings.len();
    // edge endpoints
    let mut ends: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, tup) in crossings.iter().enumerate() {
        for (p, &e) in tup.iter().enumerate() {
            ends.entry(e).or_default().push((ci, p));
        }
    }
    for (&label, lst) in &ends {
        if lst.len() != 2 {
            return Err(PdError::EdgeCount { label, times: lst.len() });
        }
    }

    // orientation roles per port; under-strand runs port 0 -> port 2
    let mut role: Vec<[Option<Role>; 4]> = vec![[None; 4]; nc];
    for r in role.iter_mut() {
        r[0] = Some(Role::In);
        r[2] = Some(Role::Out);
    }
    let flip = |r: Role| match r {
        Role::In => Role::Out,
        Role::Out => Role::In,
    };
    let propagate = |role: &mut Vec<[Option<Role>; 4]>| -> Result<(), PdError> {
        loop {
            let mut changed = false;
            for (&label, lst) in &ends {
                let (c1, p1) = lst[0];
                let (c2, p2) = lst[1];
                match (role[c1][p1], role[c2][p2]) {
                    (Some(r1), None) => {
                        role[c2][p2] = Some(flip(r1));
                        changed = true;
                    }
                    (None, Some(r2)) => {
                        role[c1][p1] = Some(flip(r2));
                        changed = true;
                    }
                    (Some(r1), Some(r2)) => {
                        if (c1, p1) != (c2, p2) && r1 == r2 {
                            return Err(PdError::OrientationClash(label));
                        }
                    }
                    (None, None) => {}
                }
            }
            for ci in 0..nc {
                match (role[ci][1], role[ci][3]) {
                    (Some(a), None) => {
                        role[ci][3] = Some(flip(a));
                        changed = true;
                    }
                    (None, Some(b)) => {
                        role[ci][1] = Some(flip(b));
                        changed = true;
                    }
                    (Some(a), Some(b)) => {
                        if a == b {
                            return Err(PdError::OverPairClash(ci + 1));
                        }
                    }
                    (None, None) => {}
                }
            }
            if !changed {
                return Ok(());
            }
        }
    };
    propagate(&mut role)?;
    // Components that never run under leave their crossings unresolved; the
    // table convention (labels increase along orientation, cyclically) breaks
    // the tie one crossing at a time.
    for ci in 0..nc {
        if role[ci][1].is_none() {
            let (ej, el) = (crossings[ci][1], crossings[ci][3]);
            if el == ej + 1 || ej > el + 1 {
                role[ci][1] = Some(Role::In);
                role[ci][3] = Some(Role::Out);
            } else {
                role[ci][1] = Some(Role::Out);
                role[ci][3] = Some(Role::In);
            }
            propagate(&mut role)?;
        }
    }

    // successor map edge -> edge along orientation
    let mut nxt: HashMap<u32, u32> = HashMap::new();
    for (ci, tup) in crossings.iter().enumerate() {
        nxt.insert(tup[0], tup[2]);
        if role[ci][1] == Some(Role::In) {
            nxt.insert(tup[1], tup[3]);
        } else {
            nxt.insert(tup[3], tup[1]);
        }
    }
    if nxt.len() != ends.len() {
        return Err(PdError::BrokenCycle);
    }
    {
        let mut targets: Vec<u32> = nxt.values().copied().collect();
        targets.sort_unstable();
        let sources: Vec<u32> = ends.keys().copied().collect();
        if targets != sources {
            return Err(PdError::BrokenCycle);
        }
    }

    // components as edge cycles, seeded from the smallest unvisited label
    let mut comp_of: HashMap<u32, usize> = HashMap::new();
    let mut components: Vec<Vec<u32>> = Vec::new();
    for &e in ends.keys() {
        if comp_of.contains_key(&e) {
            continue;
        }
        let idx = components.len();
        let mut cyc = Vec::new();
        let mut cur = e;
        while !comp_of.contains_key(&cur) {
            comp_of.insert(cur, idx);
            cyc.push(cur);
            cur = nxt[&cur];
        }
        if cur != e {
            return Err(PdError::BrokenCycle);
        }
        components.push(cyc);
    }

    let signs: Vec<i8> = (0..nc)
        .map(|ci| if role[ci][3] == Some(Role::In) { 1 } else { -1 })
        .collect();
    let roles: Vec<[bool; 4]> = role
        .iter()
        .map(|r| [true, r[1] == Some(Role::In), false, r[3] == Some(Role::In)])
        .collect();

    Ok(PDCode { crossings, extra_circles, roles, components, comp_of, signs })
}

/// One coloring constraint `[a,b,c] = d` over region indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingRelation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl CrossingRelation {
    pub fn regions(&self) -> [usize; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// A diagram with its planar-complement regions and coloring relations.
#[derive(Clone, Debug)]
pub struct LinkDiagram {
    pd: PDCode,
    nregions: usize,
    corner_region: Vec<[usize; 4]>, // per crossing: region at corner g (between ports g, g+1)
    relations: Vec<CrossingRelation>,
}

impl LinkDiagram {
    pub fn pd(&self) -> &PDCode {
        &self.pd
    }

    pub fn region_count(&self) -> usize {
        self.nregions
    }

    pub fn relations(&self) -> &[CrossingRelation] {
        &self.relations
    }

    pub fn crossing_count(&self) -> usize {
        self.pd.crossing_count()
    }

    pub fn component_count(&self) -> usize {
        self.pd.component_count()
    }

    pub fn signs(&self) -> &[i8] {
        self.pd.signs()
    }

    pub fn writhe(&self) -> i64 {
        self.pd.writhe()
    }

    /// Region incident to corner g of crossing ci (corner g lies between
    /// ports g and g+1 counterclockwise).
    pub fn corner_region(&self, ci: usize, g: usize) -> usize {
        self.corner_region[ci][g]
    }
}

/// Trace the faces of the diagram complement and derive coloring relations.
///
/// Faces come from the rotation system: following a dart to its far end and
/// turning one port counterclockwise walks the boundary of one face. Outer
/// faces of split pieces (and all crossingless circles' complement) merge
/// into region 0, so a diagram with c crossings and p crossing-carrying
/// split pieces has c + p + 1 regions.
pub fn faces(pd: &PDCode) -> Result<LinkDiagram, PdError> {
    let nc = pd.crossings.len();
    if nc == 0 {
        return Ok(LinkDiagram {
            nregions: 1 + pd.extra_circles,
            pd: pd.clone(),
            corner_region: Vec::new(),
            relations: Vec::new(),
        });
    }
    let mut alpha: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    {
        let mut ends: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, tup) in pd.crossings.iter().enumerate() {
            for (p, &e) in tup.iter().enumerate() {
                ends.entry(e).or_default().push((ci, p));
            }
        }
        for lst in ends.values() {
            alpha.insert(lst[0], lst[1]);
            alpha.insert(lst[1], lst[0]);
        }
    }

    // face orbits; the recorded corner for a step is the far end of the dart
    let mut face_of_corner: Vec<[Option<usize>; 4]> = vec![[None; 4]; nc];
    let mut face_first_crossing: Vec<usize> = Vec::new();
    let mut seen: Vec<[bool; 4]> = vec![[false; 4]; nc];
    for c0 in 0..nc {
        for p0 in 0..4 {
            if seen[c0][p0] {
                continue;
            }
            let fid = face_first_crossing.len();
            let mut first_crossing = usize::MAX;
            let (mut c, mut p) = (c0, p0);
            while !seen[c][p] {
                seen[c][p] = true;
                let (ac, ap) = alpha[&(c, p)];
                if first_crossing == usize::MAX {
                    first_crossing = ac;
                }
                face_of_corner[ac][ap] = Some(fid);
                c = ac;
                p = (ap + 1) % 4;
            }
            face_first_crossing.push(first_crossing);
        }
    }
    let nfaces = face_first_crossing.len();

    // connected pieces of the crossing graph
    let mut piece = vec![usize::MAX; nc];
    let mut npieces = 0;
    for start in 0..nc {
        if piece[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            if piece[c] != usize::MAX {
                continue;
            }
            piece[c] = npieces;
            for p in 0..4 {
                let (c2, _) = alpha[&(c, p)];
                if piece[c2] == usize::MAX {
                    stack.push(c2);
                }
            }
        }
        npieces += 1;
    }
    let expected = nc + 2 * npieces;
    if nfaces != expected {
        return Err(PdError::NotPlanar { faces: nfaces, expected });
    }

    // merge the first-seen face of each piece into region 0
    let mut piece_first_face = vec![usize::MAX; npieces];
    for (fid, &fc) in face_first_crossing.iter().enumerate() {
        let pc = piece[fc];
        if piece_first_face[pc] == usize::MAX {
            piece_first_face[pc] = fid;
        }
    }
    let mut region_of_face = vec![usize::MAX; nfaces];
    let mut rid = 1;
    for fid in 0..nfaces {
        if piece_first_face.contains(&fid) {
            region_of_face[fid] = 0;
        } else {
            region_of_face[fid] = rid;
            rid += 1;
        }
    }
    let corner_region: Vec<[usize; 4]> = face_of_corner
        .iter()
        .map(|fs| {
            let mut out = [0; 4];
            for (g, f) in fs.iter().enumerate() {
                out[g] = region_of_face[f.expect("every corner is traced")];
            }
            out
        })
        .collect();

    // corner g sits between ports g and g+1; in the under-strand's intrinsic
    // frame (entering from the south) corner 0 = SE, 1 = NE, 2 = NW, 3 = SW.
    // Positive crossings impose [SW, SE, NW] = NE, negative [SE, SW, NE] = NW:
    // in both cases `a` is the region left of the under-strand and right of
    // the over-strand, with (b, c) across the under- and over-strand from it.
    let relations: Vec<CrossingRelation> = (0..nc)
        .map(|ci| {
            let f = &corner_region[ci];
            if pd.signs[ci] > 0 {
                CrossingRelation { a: f[3], b: f[0], c: f[2], d: f[1] }
            } else {
                CrossingRelation { a: f[2], b: f[1], c: f[3], d: f[0] }
            }
        })
        .collect();

    Ok(LinkDiagram {
        nregions: rid + pd.extra_circles,
        pd: pd.clone(),
        corner_region,
        relations,
    })
}

/// Reverse the orientation of one component (1-based index among all
/// components, crossing-carrying ones first). Edge labels are renumbered
/// consecutively along each resulting component.
pub fn reverse_component(pd: &PDCode, k: usize) -> Result<PDCode, PdError> {
    let total = pd.component_count();
    if k == 0 || k > total {
        return Err(PdError::InvalidComponent { k, total });
    }
    if k > pd.components.len() {
        return Ok(pd.clone()); // crossingless circle: reversal is invisible
    }
    let ki = k - 1;
    let cyc = &pd.components[ki];
    // successor map with component k reversed
    let mut nxt: HashMap<u32, u32> = HashMap::new();
    for (ci, tup) in pd.crossings.iter().enumerate() {
        nxt.insert(tup[0], tup[2]);
        if pd.roles[ci][1] {
            nxt.insert(tup[1], tup[3]);
        } else {
            nxt.insert(tup[3], tup[1]);
        }
    }
    for (i, &e) in cyc.iter().enumerate() {
        nxt.insert(cyc[(i + 1) % cyc.len()], e);
    }
    // rotate tuples whose under-strand lies on the reversed component
    let tuples: Vec<[u32; 4]> = pd
        .crossings
        .iter()
        .map(|tup| {
            if pd.comp_of[&tup[0]] == ki {
                [tup[2], tup[3], tup[0], tup[1]]
            } else {
                *tup
            }
        })
        .collect();
    // relabel consecutively along each component, original component order
    let mut label: HashMap<u32, u32> = HashMap::new();
    let mut next_label = 1;
    for comp in &pd.components {
        let mut e = comp[0];
        while !label.contains_key(&e) {
            label.insert(e, next_label);
            next_label += 1;
            e = nxt[&e];
        }
    }
    let relabeled: Vec<[u32; 4]> = tuples
        .iter()
        .map(|t| [label[&t[0]], label[&t[1]], label[&t[2]], label[&t[3]]])
        .collect();
    build(relabeled, pd.extra_circles)
}

/// Render back to PD text (single line).
impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.crossings.is_empty() {
            return write!(f, "UNKNOT {}", self.extra_circles);
        }
        let toks: Vec<String> = self
            .crossings
            .iter()
            .map(|t| format!("X[{},{},{},{}]", t[0], t[1], t[2], t[3]))
            .collect();
        f.write_str(&toks.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "X[2,4,1,3] X[4,2,3,1]";
    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn parse_hopf() {
        let pd = parse_pd(HOPF).unwrap();
        assert_eq!(pd.crossing_count(), 2);
        assert_eq!(pd.component_count(), 2);
        assert_eq!(pd.edge_count(), 4);
        assert_eq!(pd.signs(), &[1, 1]);
        assert_eq!(pd.writhe(), 2);
        assert_eq!(pd.linking_matrix()[0][1], 1);
        let d = faces(&pd).unwrap();
        assert_eq!(d.region_count(), 4);
        assert_eq!(d.relations().len(), 2);
    }

    #[test]
    fn hopf_relations_share_structure() {
        // the two crossings impose [a,b,c] = d and [d,b,c] = a on the same
        // four regions
        let d = faces(&parse_pd(HOPF).unwrap()).unwrap();
        let r: Vec<_> = d.relations().to_vec();
        assert_eq!(r[0].b, r[1].b);
        assert_eq!(r[0].c, r[1].c);
        assert_eq!((r[0].a, r[0].d), (r[1].d, r[1].a));
    }

    #[test]
    fn trefoil_faces() {
        let pd = parse_pd(TREFOIL).unwrap();
        assert_eq!(pd.component_count(), 1);
        assert_eq!(pd.writhe(), -3);
        let d = faces(&pd).unwrap();
        assert_eq!(d.region_count(), 5);
    }

    #[test]
    fn unknot_variants() {
        let d0 = faces(&parse_pd("UNKNOT 1").unwrap()).unwrap();
        assert_eq!(d0.region_count(), 2);
        assert_eq!(d0.relations().len(), 0);
        let blank = faces(&parse_pd("  \n# just a comment\n").unwrap()).unwrap();
        assert_eq!(blank.region_count(), 2);
        let kink = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(kink.component_count(), 1);
        assert_eq!(kink.writhe(), 1);
        let dk = faces(&kink).unwrap();
        assert_eq!(dk.region_count(), 3);
        let unlink = faces(&parse_pd("UNKNOT 2").unwrap()).unwrap();
        assert_eq!(unlink.region_count(), 3);
        assert_eq!(unlink.pd().component_count(), 2);
    }

    #[test]
    fn split_union_merges_outer_faces() {
        let two_hopfs = "X[2,4,1,3] X[4,2,3,1] X[6,8,5,7] X[8,6,7,5]";
        let pd = parse_pd(two_hopfs).unwrap();
        assert_eq!(pd.component_count(), 4);
        let d = faces(&pd).unwrap();
        assert_eq!(d.region_count(), 7); // 4 crossings + 2 pieces + 1
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_pd("X[1,2,3]"), Err(PdError::BadToken(_))));
        assert!(matches!(parse_pd("Y[1,2,3,4]"), Err(PdError::BadToken(_))));
        assert!(matches!(parse_pd("UNKNOT 0"), Err(PdError::UnknotCount)));
        assert!(matches!(
            parse_pd("X[1,1,1,2]"),
            Err(PdError::EdgeCount { label: 1, times: 3 })
        ));
        assert!(matches!(
            parse_pd("X[1,2,3,4] X[1,4,3,2]"),
            Err(PdError::OrientationClash(_)) | Err(PdError::EdgeCount { .. })
        ));
    }

    #[test]
    fn fixtures_all_parse_with_expected_writhe() {
        for (name, w) in crate::reference::WRITHES {
            let text = crate::reference::builtin_diagram(name).unwrap();
            let pd = parse_pd(text).unwrap();
            assert_eq!(pd.writhe(), *w, "{name}");
            faces(&pd).unwrap();
        }
    }

    #[test]
    fn reverse_component_is_involutive() {
        for text in [HOPF, TREFOIL, "X[1,6,2,5] X[6,3,7,2] X[3,8,4,7] X[8,1,5,4]"] {
            let pd = parse_pd(text).unwrap();
            for k in 1..=pd.component_count() {
                let once = reverse_component(&pd, k).unwrap();
                let twice = reverse_component(&once, k).unwrap();
                assert_eq!(twice.to_string(), text, "component {k} of {text}");
            }
        }
    }

    #[test]
    fn reverse_component_rejects_bad_index() {
        let pd = parse_pd(HOPF).unwrap();
        assert!(matches!(
            reverse_component(&pd, 3),
            Err(PdError::InvalidComponent { k: 3, total: 2 })
        ));
        assert!(reverse_component(&pd, 0).is_err());
    }

    #[test]
    fn reverse_flips_linking_number() {
        let pd = parse_pd(HOPF).unwrap();
        let rev = reverse_component(&pd, 1).unwrap();
        assert_eq!(rev.linking_matrix()[0][1], -1);
        assert_eq!(rev.writhe(), -2);
    }

    #[test]
    fn display_round_trip() {
        for text in [HOPF, TREFOIL, "UNKNOT 3"] {
            let pd = parse_pd(text).unwrap();
            assert_eq!(parse_pd(&pd.to_string()).unwrap(), pd);
        }
    }
}

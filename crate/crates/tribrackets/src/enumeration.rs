//! Exhaustive generation of tribrackets of a given order, isomorph
//! reduction, and the polynomial spectrum over all structures of one order.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::algebra::{make_tribracket, Tensor3, Tribracket};
use crate::polynomial::{canonical_string, parse_polynomial, tribracket_polynomial};
use crate::threads;

pub const MAX_ENUMERATE_ORDER: usize = 6;
pub const MAX_SPECTRUM_ORDER: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("order {n} is outside the supported range 1..={max} for {what}")]
pub struct GuardError {
    pub what: &'static str,
    pub n: usize,
    pub max: usize,
}

/// Distinct tribracket polynomials over all structures of one order,
/// with the number of structures producing each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub n: usize,
    pub polynomials: Vec<String>,
    pub counts: BTreeMap<String, u64>,
}

impl Spectrum {
    pub fn total_structures(&self) -> u64 {
        self.counts.values().sum()
    }
}

const UNSET: u8 = u8::MAX;

/// Partial tensor plus used-value bitmasks for the three line directions.
/// Cells are filled in lexicographic (i, j, k) order.
#[derive(Clone)]
struct SearchState {
    n: usize,
    t: Vec<u8>,
    row: Vec<u32>,  // values used in t[i][j][*]
    col: Vec<u32>,  // values used in t[i][*][k]
    line: Vec<u32>, // values used in t[*][j][k]
}

impl SearchState {
    fn new(n: usize) -> Self {
        SearchState {
            n,
            t: vec![UNSET; n * n * n],
            row: vec![0; n * n],
            col: vec![0; n * n],
            line: vec![0; n * n],
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize, k: usize) -> u8 {
        self.t[(i * self.n + j) * self.n + k]
    }
}

#[inline]
fn tri_eq(e1: u8, e2: u8, e3: u8) -> bool {
    (e1 == UNSET || e2 == UNSET || e1 == e2)
        && (e1 == UNSET || e3 == UNSET || e1 == e3)
        && (e2 == UNSET || e3 == UNSET || e2 == e3)
}

/// Every instance of the compatibility identity that involves cell (i, j, k)
/// and is otherwise defined must hold. With p1 = [a,b,c], p2 = [a,b,d],
/// p3 = [a,c,d] the identity reads
/// t[c][p1][p3] = t[b][p1][p2] = t[d][p2][p3]; the cell can participate as
/// any of p1, p2, p3 or as one of the three outer evaluations.
fn compat_ok(st: &SearchState, i: usize, j: usize, k: usize) -> bool {
    let n = st.n;
    let v = st.at(i, j, k);

    // as p1: a=i, b=j, c=k
    for d in 0..n {
        let p2 = st.at(i, j, d);
        let p3 = st.at(i, k, d);
        if p2 == UNSET || p3 == UNSET {
            continue;
        }
        let e1 = st.at(k, v as usize, p3 as usize);
        let e2 = st.at(j, v as usize, p2 as usize);
        let e3 = st.at(d, p2 as usize, p3 as usize);
        if !tri_eq(e1, e2, e3) {
            return false;
        }
    }
    // as p2: a=i, b=j, d=k
    for c in 0..n {
        let p1 = st.at(i, j, c);
        let p3 = st.at(i, c, k);
        if p1 == UNSET || p3 == UNSET {
            continue;
        }
        let e1 = st.at(c, p1 as usize, p3 as usize);
        let e2 = st.at(j, p1 as usize, v as usize);
        let e3 = st.at(k, v as usize, p3 as usize);
        if !tri_eq(e1, e2, e3) {
            return false;
        }
    }
    // as p3: a=i, c=j, d=k
    for b in 0..n {
        let p1 = st.at(i, b, j);
        let p2 = st.at(i, b, k);
        if p1 == UNSET || p2 == UNSET {
            continue;
        }
        let e1 = st.at(j, p1 as usize, v as usize);
        let e2 = st.at(b, p1 as usize, p2 as usize);
        let e3 = st.at(k, p2 as usize, v as usize);
        if !tri_eq(e1, e2, e3) {
            return false;
        }
    }
    // as outer t[c][p1][p3]: c=i, p1=j, p3=k; lines are repetition-free, so
    // each a admits at most one matching b and one matching d
    for a in 0..n {
        let b = match (0..n).find(|&b| st.at(a, b, i) == j as u8) {
            Some(b) => b,
            None => continue,
        };
        let d = match (0..n).find(|&d| st.at(a, i, d) == k as u8) {
            Some(d) => d,
            None => continue,
        };
        let p2 = st.at(a, b, d);
        let (e2, e3) = if p2 == UNSET {
            (UNSET, UNSET)
        } else {
            (st.at(b, j, p2 as usize), st.at(d, p2 as usize, k))
        };
        if !tri_eq(v, e2, e3) {
            return false;
        }
    }
    // as outer t[b][p1][p2]: b=i, p1=j, p2=k
    for a in 0..n {
        let c = match (0..n).find(|&c| st.at(a, i, c) == j as u8) {
            Some(c) => c,
            None => continue,
        };
        let d = match (0..n).find(|&d| st.at(a, i, d) == k as u8) {
            Some(d) => d,
            None => continue,
        };
        let p3 = st.at(a, c, d);
        let (e1, e3) = if p3 == UNSET {
            (UNSET, UNSET)
        } else {
            (st.at(c, j, p3 as usize), st.at(d, k, p3 as usize))
        };
        if !tri_eq(e1, v, e3) {
            return false;
        }
    }
    // as outer t[d][p2][p3]: d=i, p2=j, p3=k
    for a in 0..n {
        let b = match (0..n).find(|&b| st.at(a, b, i) == j as u8) {
            Some(b) => b,
            None => continue,
        };
        let c = match (0..n).find(|&c| st.at(a, c, i) == k as u8) {
            Some(c) => c,
            None => continue,
        };
        let p1 = st.at(a, b, c);
        let (e1, e2) = if p1 == UNSET {
            (UNSET, UNSET)
        } else {
            (st.at(c, p1 as usize, k), st.at(b, p1 as usize, j))
        };
        if !tri_eq(e1, e2, v) {
            return false;
        }
    }
    true
}

fn search(st: &mut SearchState, idx: usize, stop: usize, out: &mut impl FnMut(&SearchState)) {
    if idx == stop {
        out(st);
        return;
    }
    let n = st.n;
    let k = idx % n;
    let j = (idx / n) % n;
    let i = idx / (n * n);
    let used = st.row[i * n + j] | st.col[i * n + k] | st.line[j * n + k];
    for v in 0..n as u8 {
        let bit = 1u32 << v;
        if used & bit != 0 {
            continue;
        }
        st.t[idx] = v;
        st.row[i * n + j] |= bit;
        st.col[i * n + k] |= bit;
        st.line[j * n + k] |= bit;
        if compat_ok(st, i, j, k) {
            search(st, idx + 1, stop, out);
        }
        st.t[idx] = UNSET;
        st.row[i * n + j] &= !bit;
        st.col[i * n + k] &= !bit;
        st.line[j * n + k] &= !bit;
    }
}

/// Runs the search partitioned by the completed first matrix slice
/// (all cells with i = 1). Results come back in lexicographic tensor order.
fn run_partitioned<T: Send>(n: usize, worker: impl Fn(&SearchState) -> T + Sync) -> Vec<T> {
    let cells = n * n * n;
    let slice = n * n;
    let mut seeds = Vec::new();
    let mut st = SearchState::new(n);
    search(&mut st, 0, slice, &mut |s| seeds.push(s.clone()));
    threads::pool().install(|| {
        seeds
            .par_iter()
            .map(|seed| {
                let mut st = seed.clone();
                let _ = cells;
                worker(&mut st)
            })
            .collect()
    })
}

fn complete_from(seed: &SearchState, out: &mut impl FnMut(&[u8])) {
    let n = seed.n;
    let mut st = seed.clone();
    let slice = n * n;
    search(&mut st, slice, n * n * n, &mut |s| out(&s.t));
}

/// All tribrackets of order n in lexicographic tensor order. With
/// `up_to_iso`, only the lexicographically least member of each
/// isomorphism class is kept.
pub fn enumerate_tribrackets(n: usize, up_to_iso: bool) -> Result<Vec<Tribracket>, GuardError> {
    if n < 1 || n > MAX_ENUMERATE_ORDER {
        return Err(GuardError {
            what: "enumeration",
            n,
            max: MAX_ENUMERATE_ORDER,
        });
    }
    let batches: Vec<Vec<Tribracket>> = run_partitioned(n, |seed| {
        let mut found = Vec::new();
        complete_from(seed, &mut |flat| {
            let t = Tensor3::from_flat(n, flat.to_vec());
            let x = make_tribracket(&t).expect("search output satisfies the axioms");
            if !up_to_iso || canonical_form(&x).flat() == flat {
                found.push(x);
            }
        });
        found
    });
    Ok(batches.into_iter().flatten().collect())
}

/// Distinct tribracket polynomials over all structures of order n.
pub fn polynomial_spectrum(n: usize) -> Result<Spectrum, GuardError> {
    if n < 1 || n > MAX_SPECTRUM_ORDER {
        return Err(GuardError {
            what: "the polynomial spectrum",
            n,
            max: MAX_SPECTRUM_ORDER,
        });
    }
    let batches: Vec<BTreeMap<String, u64>> = run_partitioned(n, |seed| {
        let mut counts = BTreeMap::new();
        complete_from(seed, &mut |flat| {
            let t = Tensor3::from_flat(n, flat.to_vec());
            let x = make_tribracket(&t).expect("search output satisfies the axioms");
            let key = canonical_string(&tribracket_polynomial(&x));
            *counts.entry(key).or_insert(0u64) += 1;
        });
        counts
    });
    let mut counts = BTreeMap::new();
    for batch in batches {
        for (key, c) in batch {
            *counts.entry(key).or_insert(0) += c;
        }
    }
    let mut polynomials: Vec<String> = counts.keys().cloned().collect();
    polynomials.sort_by_key(|s| {
        let deg = parse_polynomial(s).expect("keys are canonical").leading_degree();
        (deg, s.clone())
    });
    Ok(Spectrum { n, polynomials, counts })
}

/// Lexicographically least tensor among all relabelings. Two tribrackets
/// are isomorphic exactly when their canonical forms coincide.
pub fn canonical_form(x: &Tribracket) -> Tensor3 {
    let n = x.n();
    let flat = x.tensor().flat();
    let mut best: Option<Vec<u8>> = None;
    let mut image = vec![0u8; n * n * n];
    for perm in (0..n as u8).permutations(n) {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = flat[(i * n + j) * n + k] as usize;
                    let (pi, pj, pk) = (perm[i] as usize, perm[j] as usize, perm[k] as usize);
                    image[(pi * n + pj) * n + pk] = perm[v];
                }
            }
        }
        if best.as_ref().map_or(true, |b| image < *b) {
            best = Some(image.clone());
        }
    }
    Tensor3::from_flat(n, best.expect("at least the identity relabeling"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;
    use crate::reference;
    use std::collections::HashSet;

    /// Latin-line backtracking without the compatibility pruning, filtered
    /// by the full validator afterwards.
    fn naive_enumerate(n: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut st = SearchState::new(n);
        fn go(st: &mut SearchState, idx: usize, out: &mut Vec<Vec<u8>>) {
            let n = st.n;
            if idx == n * n * n {
                let t = Tensor3::from_flat(n, st.t.clone());
                if validate(&t).ok() {
                    out.push(st.t.clone());
                }
                return;
            }
            let k = idx % n;
            let j = (idx / n) % n;
            let i = idx / (n * n);
            let used = st.row[i * n + j] | st.col[i * n + k] | st.line[j * n + k];
            for v in 0..n as u8 {
                let bit = 1u32 << v;
                if used & bit != 0 {
                    continue;
                }
                st.t[idx] = v;
                st.row[i * n + j] |= bit;
                st.col[i * n + k] |= bit;
                st.line[j * n + k] |= bit;
                go(st, idx + 1, out);
                st.t[idx] = UNSET;
                st.row[i * n + j] &= !bit;
                st.col[i * n + k] &= !bit;
                st.line[j * n + k] &= !bit;
            }
        }
        go(&mut st, 0, &mut out);
        out
    }

    fn flat_list(n: usize) -> Vec<Vec<u8>> {
        enumerate_tribrackets(n, false)
            .unwrap()
            .iter()
            .map(|x| x.tensor().flat().to_vec())
            .collect()
    }

    #[test]
    fn order_one_is_unique() {
        let all = enumerate_tribrackets(1, false).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].eval(1, 1, 1), 1);
        let c = canonical_form(&all[0]);
        assert_eq!(c.flat(), all[0].tensor().flat());
    }

    #[test]
    fn guards_reject_large_orders() {
        assert!(enumerate_tribrackets(7, false).is_err());
        assert!(enumerate_tribrackets(0, false).is_err());
        assert!(polynomial_spectrum(6).is_err());
        let e = polynomial_spectrum(0).unwrap_err();
        assert!(e.to_string().contains("outside the supported range"));
    }

    #[test]
    fn small_orders_match_naive_filter() {
        for n in 1..=3 {
            let fast = flat_list(n);
            let naive = naive_enumerate(n);
            assert_eq!(fast, naive, "order {n}");
            let distinct: HashSet<_> = fast.iter().cloned().collect();
            assert_eq!(distinct.len(), fast.len(), "order {n} duplicates");
        }
    }

    #[test]
    fn enumerated_tensors_validate() {
        for n in 1..=4 {
            for x in enumerate_tribrackets(n, false).unwrap() {
                assert!(validate(x.tensor()).ok());
            }
        }
    }

    #[test]
    fn spectra_match_reference_rows() {
        for n in 1..=4usize {
            let spec = polynomial_spectrum(n).unwrap();
            let got: HashSet<&str> = spec.polynomials.iter().map(|s| s.as_str()).collect();
            let want: HashSet<&str> = reference::SPECTRA[n - 1].1.iter().copied().collect();
            assert_eq!(got, want, "order {n}");
            assert_eq!(spec.total_structures(), flat_list(n).len() as u64);
            for p in &spec.polynomials {
                assert!(spec.counts[p] > 0);
            }
        }
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let t = Tensor3::parse(reference::EXAMPLE5A_TENSOR).unwrap();
        let x = make_tribracket(&t).unwrap();
        let base = canonical_form(&x);
        // relabel by the cycle 1 -> 2 -> 3 -> 1 and by the swap 2 <-> 3
        for perm in [[1usize, 2, 0], [0, 2, 1], [2, 0, 1]] {
            let n = x.n();
            let mut flat = vec![0u8; n * n * n];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let v = x.tensor().flat()[(i * n + j) * n + k] as usize;
                        flat[(perm[i] * n + perm[j]) * n + perm[k]] = perm[v] as u8;
                    }
                }
            }
            let relabeled = make_tribracket(&Tensor3::from_flat(n, flat)).unwrap();
            assert_eq!(canonical_form(&relabeled).flat(), base.flat());
        }
    }

    #[test]
    fn nonisomorphic_pair_has_distinct_forms() {
        let a = make_tribracket(&Tensor3::parse(reference::EXAMPLE5A_TENSOR).unwrap()).unwrap();
        let b = make_tribracket(&Tensor3::parse(reference::EXAMPLE5B_TENSOR).unwrap()).unwrap();
        assert_ne!(canonical_form(&a).flat(), canonical_form(&b).flat());
    }

    #[test]
    fn iso_reduction_partitions_the_full_count() {
        use itertools::Itertools;
        for n in 2..=3usize {
            let all: HashSet<Vec<u8>> = flat_list(n).into_iter().collect();
            let reps = enumerate_tribrackets(n, true).unwrap();
            let mut covered = 0usize;
            for rep in &reps {
                assert_eq!(canonical_form(&rep).flat(), rep.tensor().flat());
                let mut orbit = HashSet::new();
                for perm in (0..n).permutations(n) {
                    let mut flat = vec![0u8; n * n * n];
                    for i in 0..n {
                        for j in 0..n {
                            for k in 0..n {
                                let v = rep.tensor().flat()[(i * n + j) * n + k] as usize;
                                flat[(perm[i] * n + perm[j]) * n + perm[k]] = perm[v] as u8;
                            }
                        }
                    }
                    assert!(all.contains(&flat), "orbit stays inside the enumeration");
                    orbit.insert(flat);
                }
                covered += orbit.len();
            }
            assert_eq!(covered, all.len(), "order {n}");
        }
    }
}

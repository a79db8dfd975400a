//! Isomorphism classes of small labeled graphs, with automorphism orders by
//! orbit-stabilizer: |Aut(G)| = (2m)! / orbit size.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::census::CensusRow;
use crate::oracle::graph::{is_connected_raw, UnionFind};
use crate::oracle::matchings::collect_matchings;
use crate::oracle::partitions::FatPartitionList;
use crate::oracle::OracleCaps;

/// A canonically relabeled graph: blocks are the consecutive label ranges of
/// `block_sizes` (sizes descending) and `pairing` is the lexicographically
/// minimal involution over all block-structure-preserving relabelings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalGraph {
    pub block_sizes: Vec<usize>,
    pub pairing: Vec<usize>,
}

impl fmt::Display for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V[")?;
        for (i, s) in self.block_sizes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "] E[")?;
        let mut first = true;
        for (i, &p) in self.pairing.iter().enumerate() {
            if i < p {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}-{}", i + 1, p + 1)?;
                first = false;
            }
        }
        write!(f, "]")
    }
}

/// One isomorphism class in a census row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoClass {
    pub canonical: CanonicalGraph,
    pub orbit_size: u64,
    pub aut_order: u64,
}

/// Lexicographically minimal relabeling of (pairing, block assignment),
/// found by backtracking over the block-structure-preserving relabelings:
/// blocks map onto label ranges of matching size (sizes descending), which
/// refines the (2m)! search down to the block-size classes.
fn canonical_form(pairing: &[usize], assign: &[u8], k: usize) -> CanonicalGraph {
    let h = pairing.len();
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (e, &b) in assign.iter().enumerate() {
        blocks[b as usize].push(e);
    }
    blocks.sort_by_key(|b| std::cmp::Reverse(b.len()));
    let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();

    // slot_of[new_label] and the label range starts per slot.
    let mut starts = Vec::with_capacity(k);
    let mut acc = 0;
    for &s in &sizes {
        starts.push(acc);
        acc += s;
    }

    struct Search<'a> {
        pairing: &'a [usize],
        blocks: &'a [Vec<usize>],
        sizes: &'a [usize],
        starts: &'a [usize],
        block_for_slot: Vec<usize>,
        block_used: Vec<bool>,
        elem_used: Vec<bool>,
        old_of: Vec<usize>,
        new_of: Vec<usize>,
        best: Option<Vec<usize>>,
    }

    impl Search<'_> {
        fn assign_label(&mut self, pos: usize, slot: usize) {
            if pos == self.old_of.len() {
                // Complete relabeling: build the candidate pairing.
                let cand: Vec<usize> = self
                    .old_of
                    .iter()
                    .map(|&old| self.new_of[self.pairing[old]])
                    .collect();
                if self.best.as_ref().is_none_or(|b| cand < *b) {
                    self.best = Some(cand);
                }
                return;
            }
            let slot = if pos == self.starts[slot] + self.sizes[slot] {
                slot + 1
            } else {
                slot
            };
            if pos == self.starts[slot] {
                // Entering a fresh slot: pick a source block of this size.
                for b in 0..self.blocks.len() {
                    if !self.block_used[b] && self.blocks[b].len() == self.sizes[slot] {
                        self.block_used[b] = true;
                        self.block_for_slot[slot] = b;
                        self.fill_from_block(pos, slot);
                        self.block_used[b] = false;
                    }
                }
            } else {
                self.fill_from_block(pos, slot);
            }
        }

        fn fill_from_block(&mut self, pos: usize, slot: usize) {
            let b = self.block_for_slot[slot];
            for idx in 0..self.blocks[b].len() {
                let e = self.blocks[b][idx];
                if self.elem_used[e] {
                    continue;
                }
                self.elem_used[e] = true;
                self.old_of[pos] = e;
                self.new_of[e] = pos;
                self.assign_label(pos + 1, slot);
                self.elem_used[e] = false;
            }
        }
    }

    let mut search = Search {
        pairing,
        blocks: &blocks,
        sizes: &sizes,
        starts: &starts,
        block_for_slot: vec![usize::MAX; k],
        block_used: vec![false; k],
        elem_used: vec![false; h],
        old_of: vec![usize::MAX; h],
        new_of: vec![usize::MAX; h],
        best: None,
    };
    if h == 0 {
        return CanonicalGraph {
            block_sizes: sizes,
            pairing: Vec::new(),
        };
    }
    search.assign_label(0, 0);
    let pairing = search.best.expect("at least one relabeling exists");
    CanonicalGraph {
        block_sizes: sizes,
        pairing,
    }
}

/// Groups all labeled graphs with m edges into isomorphism classes via the
/// canonical form, and reads |Aut| off the orbit sizes. Rows carry the same
/// counts as `count_labeled_graphs` plus the per-class data, sorted by
/// canonical form.
pub fn iso_census(m: usize, caps: &OracleCaps) -> Result<Vec<CensusRow>> {
    if m > caps.max_iso_edges {
        return Err(Error::CapExceeded {
            what: "iso census edge count",
            requested: m,
            cap: caps.max_iso_edges,
        });
    }
    let n = 2 * m;
    let matchings = collect_matchings(n, caps)?;
    caps.check_partition_size(n)?;
    let partitions = FatPartitionList::collect_raw(n);
    let total_labelings: u64 = (1..=n as u64).product();

    type Tally = HashMap<(usize, CanonicalGraph), (u64, u64)>;
    let tally: Tally = matchings
        .par_iter()
        .fold(
            || (Tally::new(), UnionFind::new(0)),
            |(mut map, mut uf), pairing| {
                for i in 0..partitions.len() {
                    let (assign, k) = partitions.get(i);
                    let canon = canonical_form(pairing, assign, k);
                    let cell = map.entry((k, canon)).or_insert((0, 0));
                    cell.0 += 1;
                    if is_connected_raw(pairing, assign, k, &mut uf) {
                        cell.1 += 1;
                    }
                }
                (map, uf)
            },
        )
        .map(|(map, _)| map)
        .reduce(Tally::new, |mut a, b| {
            for (key, (l, c)) in b {
                let cell = a.entry(key).or_insert((0, 0));
                cell.0 += l;
                cell.1 += c;
            }
            a
        });

    let mut by_k: HashMap<usize, Vec<(CanonicalGraph, u64, u64)>> = HashMap::new();
    for ((k, canon), (orbit, connected)) in tally {
        by_k.entry(k).or_default().push((canon, orbit, connected));
    }

    let sign = if m % 2 == 0 { 1i64 } else { -1i64 };
    let mut rows = Vec::new();
    for (k, mut classes) in by_k {
        classes.sort_by(|a, b| a.0.cmp(&b.0));
        let labeled: u64 = classes.iter().map(|c| c.1).sum();
        let connected: u64 = classes.iter().map(|c| c.2).sum();
        let iso_classes = classes
            .into_iter()
            .map(|(canon, orbit, _)| {
                assert_eq!(total_labelings % orbit, 0, "orbit size must divide (2m)!");
                IsoClass {
                    canonical: canon,
                    orbit_size: orbit,
                    aut_order: total_labelings / orbit,
                }
            })
            .collect();
        rows.push(CensusRow {
            m,
            k,
            labeled_count: labeled,
            connected_count: connected,
            signed_count: sign * labeled as i64,
            iso_classes: Some(iso_classes),
        });
    }
    rows.sort_by_key(|r| r.k);
    Ok(rows)
}

/// Classes of one vertex count: (canonical form, orbit size) pairs.
pub type OrbitClasses = Vec<(CanonicalGraph, u64)>;

/// Independent route to the same classes: close each labeled graph under
/// adjacent label transpositions (which generate the full symmetric group)
/// and read the orbits off the connected components. Used to cross-check the
/// backtracking canonicalizer.
pub fn iso_census_by_orbit_closure(
    m: usize,
    caps: &OracleCaps,
) -> Result<Vec<(usize, OrbitClasses)>> {
    let n = 2 * m;
    let matchings = collect_matchings(n, caps)?;
    caps.check_partition_size(n)?;
    let partitions = FatPartitionList::collect_raw(n);

    // Index every labeled graph by its normalized key.
    let mut keys: Vec<(Vec<u8>, Vec<usize>)> = Vec::new();
    let mut index: HashMap<(Vec<u8>, Vec<usize>), usize> = HashMap::new();
    for pairing in &matchings {
        for i in 0..partitions.len() {
            let (assign, _) = partitions.get(i);
            let key = (assign.to_vec(), pairing.clone());
            index.insert(key.clone(), keys.len());
            keys.push(key);
        }
    }

    let mut uf = UnionFind::new(keys.len());
    for (idx, (assign, pairing)) in keys.iter().enumerate() {
        for t in 0..n.saturating_sub(1) {
            let (new_assign, new_pairing) = apply_transposition(assign, pairing, t);
            let other = index[&(new_assign, new_pairing)];
            uf.union(idx, other);
        }
    }

    // Keep the minimal (assignment, pairing) member of each orbit as its
    // canonical form; assignments are restricted-growth strings, whose
    // minimum over an orbit is exactly the sizes-descending range form, so
    // this matches the backtracking canonicalizer's normalization.
    let mut orbits: HashMap<usize, (usize, u64)> = HashMap::new();
    for (idx, key) in keys.iter().enumerate() {
        let root = uf.find(idx);
        let entry = orbits.entry(root).or_insert((idx, 0));
        entry.1 += 1;
        if *key < keys[entry.0] {
            entry.0 = idx;
        }
    }

    let mut by_k: HashMap<usize, OrbitClasses> = HashMap::new();
    for (min_idx, orbit) in orbits.into_values() {
        let (assign, pairing) = &keys[min_idx];
        let k = assign.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
        let mut sizes = vec![0usize; k];
        for &b in assign.iter() {
            sizes[b as usize] += 1;
        }
        let canon = CanonicalGraph {
            block_sizes: sizes,
            pairing: pairing.clone(),
        };
        by_k.entry(k).or_default().push((canon, orbit));
    }
    let mut out: Vec<(usize, OrbitClasses)> = by_k.into_iter().collect();
    for (_, classes) in &mut out {
        classes.sort_by(|a, b| a.0.cmp(&b.0));
    }
    out.sort_by_key(|(k, _)| *k);
    Ok(out)
}

/// Applies the transposition (t, t+1) to the labels of a graph and
/// re-normalizes the block assignment to restricted-growth form.
fn apply_transposition(assign: &[u8], pairing: &[usize], t: usize) -> (Vec<u8>, Vec<usize>) {
    let n = pairing.len();
    let perm = |x: usize| -> usize {
        if x == t {
            t + 1
        } else if x == t + 1 {
            t
        } else {
            x
        }
    };
    let mut new_pairing = vec![0usize; n];
    for (i, &p) in pairing.iter().enumerate() {
        new_pairing[perm(i)] = perm(p);
    }
    let mut raw = vec![0u8; n];
    for (i, &b) in assign.iter().enumerate() {
        raw[perm(i)] = b;
    }
    // Renumber blocks by first occurrence.
    let mut rename: HashMap<u8, u8> = HashMap::new();
    let mut next = 0u8;
    let mut new_assign = vec![0u8; n];
    for (i, &b) in raw.iter().enumerate() {
        let nb = *rename.entry(b).or_insert_with(|| {
            let v = next;
            next += 1;
            v
        });
        new_assign[i] = nb;
    }
    (new_assign, new_pairing)
}

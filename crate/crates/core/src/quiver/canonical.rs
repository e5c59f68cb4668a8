//! Canonical labeling of ice quivers.
//!
//! Colour refinement on weighted directed neighbourhoods, then
//! individualization of the first non-singleton cell with backtracking. Each
//! discrete leaf gives a relabeled matrix; the least serialization wins.
//! Automorphisms found when two leaves coincide prune sibling branches.

use serde::{Serialize, Serializer};

use super::IceQuiver;

/// Serialized canonical form: equal keys iff the quivers are isomorphic by a
/// permutation fixing the mutable/frozen split.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

fn encode(values: &[i32]) -> CanonicalKey {
    let mut out = Vec::with_capacity(values.len());
    for &v in values {
        let mut z = ((v << 1) ^ (v >> 31)) as u32;
        loop {
            let byte = (z & 0x7f) as u8;
            z >>= 7;
            if z == 0 {
                out.push(byte);
                break;
            }
            out.push(byte | 0x80);
        }
    }
    CanonicalKey(out)
}

struct Best {
    ser: Vec<i32>,
    perm: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    q: &'a IceQuiver,
    /// Dense `m x m` signed adjacency.
    adj: Vec<i32>,
    best: Option<Best>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(q: &'a IceQuiver) -> Self {
        let m = q.m();
        let mut adj = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    adj[i * m + j] = q.entry(i, j);
                }
            }
        }
        Search {
            q,
            adj,
            best: None,
            automorphisms: Vec::new(),
        }
    }

    fn initial_colours(&self) -> Vec<u32> {
        let q = self.q;
        let keys: Vec<(bool, u32)> = (0..q.m())
            .map(|v| (q.is_frozen(v), if v < q.n() { q.symmetrizer()[v] } else { 0 }))
            .collect();
        rank(&keys)
    }

    /// Refines until stable. Colours are dense ranks, so the result only
    /// depends on the isomorphism type of (quiver, colouring).
    fn refine(&self, colours: &mut Vec<u32>) {
        let m = self.q.m();
        let mut classes = count_classes(colours);
        loop {
            let sigs: Vec<(u32, Vec<(u32, i32, i32)>)> = (0..m)
                .map(|v| {
                    let mut nb: Vec<(u32, i32, i32)> = (0..m)
                        .filter_map(|u| {
                            let out = self.adj[v * m + u];
                            let inc = self.adj[u * m + v];
                            (out != 0 || inc != 0).then_some((colours[u], out, inc))
                        })
                        .collect();
                    nb.sort_unstable();
                    (colours[v], nb)
                })
                .collect();
            *colours = rank(&sigs);
            let next = count_classes(colours);
            if next == classes {
                return;
            }
            classes = next;
        }
    }

    fn leaf_serialization(&self, colours: &[u32]) -> (Vec<i32>, Vec<usize>) {
        let q = self.q;
        let (n, m) = (q.n(), q.m());
        let perm: Vec<usize> = colours.iter().map(|&c| c as usize).collect();
        let mut inv = vec![0; m];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        let mut out = Vec::with_capacity(2 + n + m * n);
        out.push(n as i32);
        out.push(m as i32);
        for &v in &inv[..n] {
            out.push(q.symmetrizer()[v] as i32);
        }
        for &i in &inv {
            for &j in &inv[..n] {
                out.push(q.b(i, j));
            }
        }
        (out, perm)
    }

    /// Depth-first search below the node reached by `prefix`. Returns
    /// `Some(level)` when a leaf equal to the current best was found: the
    /// subtree is then an automorphic image of an explored one and the search
    /// unwinds to `level`, where the two paths diverge.
    fn search(&mut self, colours: Vec<u32>, prefix: &mut Vec<usize>) -> Option<usize> {
        let m = self.q.m();
        let counts = class_sizes(&colours);
        let target = match counts.iter().position(|&c| c > 1) {
            None => return self.visit_leaf(&colours, prefix),
            Some(t) => t as u32,
        };
        let depth = prefix.len();
        let cell: Vec<usize> = (0..m).filter(|&v| colours[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit(prefix, v, &explored) {
                continue;
            }
            explored.push(v);
            let mut child: Vec<u32> = colours
                .iter()
                .enumerate()
                .map(|(u, &c)| {
                    if c > target || (c == target && u != v) {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            self.refine(&mut child);
            prefix.push(v);
            let jump = self.search(child, prefix);
            prefix.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn visit_leaf(&mut self, colours: &[u32], path: &[usize]) -> Option<usize> {
        let (ser, perm) = self.leaf_serialization(colours);
        let Some(best) = &self.best else {
            self.best = Some(Best { ser, perm, path: path.to_vec() });
            return None;
        };
        if ser == best.ser {
            // best.perm^-1 . perm is an automorphism
            let m = perm.len();
            let mut inv = vec![0; m];
            for (v, &p) in best.perm.iter().enumerate() {
                inv[p] = v;
            }
            let auto: Vec<usize> = perm.iter().map(|&p| inv[p]).collect();
            let level = path.iter().zip(&best.path).take_while(|(a, b)| a == b).count();
            if auto.iter().enumerate().any(|(i, &a)| i != a) {
                self.automorphisms.push(auto);
            }
            return Some(level);
        }
        if ser < best.ser {
            self.best = Some(Best { ser, perm, path: path.to_vec() });
        }
        None
    }

    /// Whether `v` lies in the orbit of an explored vertex under the
    /// automorphisms found so far that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], v: usize, explored: &[usize]) -> bool {
        let m = self.q.m();
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|a| prefix.iter().all(|&p| a[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in gens {
            for (i, &gi) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, gi));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap() as u32)
        .collect()
}

fn count_classes(colours: &[u32]) -> usize {
    colours.iter().max().map_or(0, |&c| c as usize + 1)
}

fn class_sizes(colours: &[u32]) -> Vec<usize> {
    let mut sizes = vec![0; count_classes(colours)];
    for &c in colours {
        sizes[c as usize] += 1;
    }
    sizes
}

/// A relabeling `perm` (old vertex `v` goes to `perm[v]`) taking `q` to its
/// canonical representative, together with the key.
pub fn canonical_labeling(q: &IceQuiver) -> (Vec<usize>, CanonicalKey) {
    let mut search = Search::new(q);
    let mut colours = search.initial_colours();
    search.refine(&mut colours);
    search.search(colours, &mut Vec::new());
    let best = search.best.expect("search visits at least one leaf");
    (best.perm, encode(&best.ser))
}

pub fn canonical_form(q: &IceQuiver) -> CanonicalKey {
    canonical_labeling(q).1
}

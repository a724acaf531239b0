//! Green's relations, their preorders, and egg-box structure of a finite semigroup.
//!
//! `x ≤_R y` iff `x ∈ yS¹`, computed as reachability in the right Cayley graph
//! over a generating set; R-classes are its strongly connected components.
//! L and J are handled the same way with left and two-sided edges.

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::dsu::DisjointSets;
use crate::monoid::MulTable;

/// An equivalence on element indices with class ids ordered by minimal member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classes {
    of: Vec<u32>,
    count: usize,
}

impl Classes {
    /// Renumbers arbitrary labels so that class ids follow their minimal element.
    pub fn from_labels(labels: &[u32]) -> Self {
        let mut map = hashbrown::HashMap::new();
        let of = labels
            .iter()
            .map(|l| {
                let next = map.len() as u32;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Classes { of, count: map.len() }
    }

    pub fn class_of(&self, x: u32) -> u32 {
        self.of[x as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.of
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn related(&self, x: u32, y: u32) -> bool {
        self.of[x as usize] == self.of[y as usize]
    }

    /// Members of every class, each list in increasing order.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out = alloc::vec![Vec::new(); self.count];
        for (x, &c) in self.of.iter().enumerate() {
            out[c as usize].push(x as u32);
        }
        out
    }

    /// Whether every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Classes) -> bool {
        let mut image = alloc::vec![u32::MAX; self.count];
        self.of.iter().zip(&other.of).all(|(&a, &b)| {
            let slot = &mut image[a as usize];
            if *slot == u32::MAX {
                *slot = b;
            }
            *slot == b
        })
    }
}

/// Strongly connected components with class-level reachability.
struct Reach {
    classes: Classes,
    /// `below[c]` holds every class reachable from `c`, including `c`.
    below: Vec<FixedBitSet>,
}

fn strongly_connected(n: usize, mut succ: impl FnMut(u32, &mut Vec<u32>)) -> Reach {
    const UNSEEN: u32 = u32::MAX;
    let mut index = alloc::vec![UNSEEN; n];
    let mut low = alloc::vec![0u32; n];
    let mut on_stack = FixedBitSet::with_capacity(n);
    let mut stack: Vec<u32> = Vec::new();
    let mut comp = alloc::vec![UNSEEN; n];
    let mut comp_succ: Vec<Vec<u32>> = Vec::new();
    let mut next_index = 0u32;
    let mut adjacency: Vec<Vec<u32>> = Vec::with_capacity(n);
    for v in 0..n as u32 {
        let mut out = Vec::new();
        succ(v, &mut out);
        out.sort_unstable();
        out.dedup();
        adjacency.push(out);
    }

    // Iterative Tarjan: frames of (vertex, next edge position).
    let mut frames: Vec<(u32, usize)> = Vec::new();
    for root in 0..n as u32 {
        if index[root as usize] != UNSEEN {
            continue;
        }
        frames.push((root, 0));
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack.insert(root as usize);
        while let Some(&(v, pos)) = frames.last() {
            let vu = v as usize;
            if pos < adjacency[vu].len() {
                let w = adjacency[vu][pos];
                frames.last_mut().expect("frame").1 += 1;
                let wu = w as usize;
                if index[wu] == UNSEEN {
                    index[wu] = next_index;
                    low[wu] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack.insert(wu);
                    frames.push((w, 0));
                } else if on_stack.contains(wu) {
                    low[vu] = low[vu].min(index[wu]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    let p = parent as usize;
                    low[p] = low[p].min(low[vu]);
                }
                if low[vu] == index[vu] {
                    let c = comp_succ.len() as u32;
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack.set(w as usize, false);
                        comp[w as usize] = c;
                        if w == v {
                            break;
                        }
                    }
                    comp_succ.push(Vec::new());
                }
            }
        }
    }

    // Components complete in reverse topological order, so successors are finished first.
    let k = comp_succ.len();
    for v in 0..n {
        for &w in &adjacency[v] {
            let (a, b) = (comp[v], comp[w as usize]);
            if a != b {
                comp_succ[a as usize].push(b);
            }
        }
    }
    let mut raw_below: Vec<FixedBitSet> = Vec::with_capacity(k);
    for c in 0..k {
        let mut set = FixedBitSet::with_capacity(k);
        set.insert(c);
        for &d in &comp_succ[c] {
            debug_assert!((d as usize) < c);
            set.union_with(&raw_below[d as usize]);
        }
        raw_below.push(set);
    }

    let classes = Classes::from_labels(&comp);
    // Translate component ids to the renumbered class ids.
    let mut rename = alloc::vec![0u32; k];
    for v in 0..n {
        rename[comp[v] as usize] = classes.class_of(v as u32);
    }
    let mut below = alloc::vec![FixedBitSet::with_capacity(k); k];
    for c in 0..k {
        let target = &mut below[rename[c] as usize];
        for d in raw_below[c].ones() {
            target.insert(rename[d] as usize);
        }
    }
    Reach { classes, below }
}

/// Green's relations R, L, H, D, J and the preorders ≤_R, ≤_L, ≤_J.
#[derive(Debug, Clone)]
pub struct GreenStructure {
    pub r: Classes,
    pub l: Classes,
    pub h: Classes,
    pub d: Classes,
    pub j: Classes,
    r_below: Vec<FixedBitSet>,
    l_below: Vec<FixedBitSet>,
    j_below: Vec<FixedBitSet>,
}

impl GreenStructure {
    pub fn compute(s: &MulTable) -> Self {
        let n = s.size();
        let gens = s.generators();
        let right = strongly_connected(n, |x, out| out.extend(gens.iter().map(|&g| s.mul(x, g))));
        let left = strongly_connected(n, |x, out| out.extend(gens.iter().map(|&g| s.mul(g, x))));
        let two = strongly_connected(n, |x, out| {
            out.extend(gens.iter().map(|&g| s.mul(x, g)));
            out.extend(gens.iter().map(|&g| s.mul(g, x)));
        });

        let pair_labels: Vec<u32> = {
            let lc = left.classes.count() as u32;
            (0..n as u32).map(|x| right.classes.class_of(x) * lc + left.classes.class_of(x)).collect()
        };
        let h = Classes::from_labels(&pair_labels);

        let mut dsu = DisjointSets::new(n);
        let mut first_r = alloc::vec![u32::MAX; right.classes.count()];
        let mut first_l = alloc::vec![u32::MAX; left.classes.count()];
        for x in 0..n as u32 {
            for (first, c) in [(&mut first_r, right.classes.class_of(x)), (&mut first_l, left.classes.class_of(x))] {
                let slot = &mut first[c as usize];
                if *slot == u32::MAX {
                    *slot = x;
                } else {
                    dsu.union(*slot as usize, x as usize);
                }
            }
        }
        let d_labels: Vec<u32> = (0..n).map(|x| dsu.find(x) as u32).collect();
        let d = Classes::from_labels(&d_labels);

        GreenStructure {
            r: right.classes,
            l: left.classes,
            h,
            d,
            j: two.classes,
            r_below: right.below,
            l_below: left.below,
            j_below: two.below,
        }
    }

    /// `x ≤_R y`, i.e. `x ∈ yS¹`.
    pub fn leq_r(&self, x: u32, y: u32) -> bool {
        self.r_below[self.r.class_of(y) as usize].contains(self.r.class_of(x) as usize)
    }

    /// `x ≤_L y`, i.e. `x ∈ S¹y`.
    pub fn leq_l(&self, x: u32, y: u32) -> bool {
        self.l_below[self.l.class_of(y) as usize].contains(self.l.class_of(x) as usize)
    }

    /// `x ≤_J y`, i.e. `x ∈ S¹yS¹`.
    pub fn leq_j(&self, x: u32, y: u32) -> bool {
        self.j_below[self.j.class_of(y) as usize].contains(self.j.class_of(x) as usize)
    }

    /// Whether J-class `a` lies below J-class `b`.
    pub fn j_class_leq(&self, a: u32, b: u32) -> bool {
        self.j_below[b as usize].contains(a as usize)
    }

    /// D = J, which must hold in every finite semigroup.
    pub fn d_equals_j(&self) -> bool {
        self.d == self.j
    }

    /// Whether the J-classes are totally ordered.
    pub fn j_order_is_chain(&self) -> bool {
        let k = self.j.count() as u32;
        (0..k).all(|a| (0..k).all(|b| self.j_class_leq(a, b) || self.j_class_leq(b, a)))
    }
}

/// Whether every element is regular (`x = xax` for some `a`).
///
/// An element is regular iff its R-class holds an idempotent.
pub fn is_regular(s: &MulTable, green: &GreenStructure) -> bool {
    let mut has_idem = FixedBitSet::with_capacity(green.r.count());
    for e in s.idempotents() {
        has_idem.insert(green.r.class_of(e) as usize);
    }
    has_idem.count_ones(..) == green.r.count()
}

/// Regular with commuting idempotents; equivalent to unique inverses.
pub fn is_inverse(s: &MulTable, green: &GreenStructure) -> bool {
    if !is_regular(s, green) {
        return false;
    }
    let idem = s.idempotents();
    idem.iter().all(|&e| idem.iter().all(|&f| s.mul(e, f) == s.mul(f, e)))
}

/// Direct check that every element has exactly one inverse.
pub fn has_unique_inverses(s: &MulTable) -> bool {
    let n = s.size() as u32;
    (0..n).all(|x| {
        (0..n)
            .filter(|&a| s.mul(s.mul(x, a), x) == x && s.mul(s.mul(a, x), a) == a)
            .take(2)
            .count()
            == 1
    })
}

/// The minimal ideal: the unique J-class below every other.
pub fn minimal_ideal(green: &GreenStructure) -> Vec<u32> {
    let k = green.j.count() as u32;
    let bottom = (0..k).find(|&c| (0..k).all(|d| green.j_class_leq(c, d)));
    match bottom {
        Some(c) => (0..green.j.labels().len() as u32).filter(|&x| green.j.class_of(x) == c).collect(),
        None => Vec::new(),
    }
}

/// One D-class laid out as a grid of H-classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DClassBox {
    pub d_class: u32,
    /// R-class ids, one per row.
    pub rows: Vec<u32>,
    /// L-class ids, one per column.
    pub cols: Vec<u32>,
    /// `cells[r][c]` is the H-class at row `r`, column `c`.
    pub cells: Vec<Vec<Vec<u32>>>,
    /// Whether the cell contains an idempotent, i.e. is a group.
    pub group: Vec<Vec<bool>>,
}

impl DClassBox {
    pub fn size(&self) -> usize {
        self.cells.iter().flatten().map(Vec::len).sum()
    }

    pub fn members(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.cells.iter().flatten().flatten().copied().collect();
        out.sort_unstable();
        out
    }
}

/// The egg-box diagram: D-classes and their partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EggBox {
    pub classes: Vec<DClassBox>,
    /// `below[a]` lists the D-classes strictly below `a`.
    pub below: Vec<Vec<u32>>,
}

impl EggBox {
    /// D-classes in a linear extension of the J-order, minimal first; ties by class id.
    pub fn bottom_up(&self) -> Vec<u32> {
        let mut order: Vec<u32> = (0..self.classes.len() as u32).collect();
        order.sort_by_key(|&c| (self.below[c as usize].len(), c));
        order
    }

    /// Covering pairs `(lower, upper)` of the D-class order.
    pub fn covers(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (upper, below) in self.below.iter().enumerate() {
            for &lower in below {
                let skipped = below.iter().any(|&mid| mid != lower && self.below[mid as usize].contains(&lower));
                if !skipped {
                    out.push((lower, upper as u32));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

pub fn eggbox(s: &MulTable, green: &GreenStructure) -> EggBox {
    let n = s.size() as u32;
    let k = green.d.count();
    let mut rows: Vec<Vec<u32>> = alloc::vec![Vec::new(); k];
    let mut cols: Vec<Vec<u32>> = alloc::vec![Vec::new(); k];
    for x in 0..n {
        let d = green.d.class_of(x) as usize;
        let (r, l) = (green.r.class_of(x), green.l.class_of(x));
        if !rows[d].contains(&r) {
            rows[d].push(r);
        }
        if !cols[d].contains(&l) {
            cols[d].push(l);
        }
    }
    let mut classes: Vec<DClassBox> = (0..k)
        .map(|d| DClassBox {
            d_class: d as u32,
            cells: alloc::vec![alloc::vec![Vec::new(); cols[d].len()]; rows[d].len()],
            group: alloc::vec![alloc::vec![false; cols[d].len()]; rows[d].len()],
            rows: rows[d].clone(),
            cols: cols[d].clone(),
        })
        .collect();
    for x in 0..n {
        let d = green.d.class_of(x) as usize;
        let b = &mut classes[d];
        let ri = b.rows.iter().position(|&r| r == green.r.class_of(x)).expect("row");
        let ci = b.cols.iter().position(|&l| l == green.l.class_of(x)).expect("col");
        b.cells[ri][ci].push(x);
        if s.is_idempotent(x) {
            b.group[ri][ci] = true;
        }
    }
    // D = J here, so the J-order on representatives orders the D-classes.
    let reps: Vec<u32> = classes.iter().map(|b| b.cells[0][0][0]).collect();
    let below = (0..k)
        .map(|a| {
            (0..k as u32)
                .filter(|&b| b as usize != a && green.leq_j(reps[b as usize], reps[a]) && !green.leq_j(reps[a], reps[b as usize]))
                .collect()
        })
        .collect();
    EggBox { classes, below }
}

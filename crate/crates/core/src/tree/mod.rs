//! The infinite labeled structure behind the two-term family, addressed two
//! ways: symbolic label arithmetic and explicit snapshots with the chopping
//! process ([`TreeSnapshot`], [`chop`]).
//!
//! The structure is an isolated node `I` followed by subtrees `S_1, S_2, ...`
//! chained at their roots. The root of `S_i` ("super-node") carries `s`
//! consecutive labels (none for `s = 0`) and has `2^(i-1)` children, each
//! with a single leaf. Labels within a subtree alternate child, leaf, child,
//! leaf after the super-node's block.

mod snapshot;

pub use snapshot::{chop, export_dot, SnapshotNode, TreeSnapshot, MAX_SNAPSHOT_LABEL};

use crate::scalar::{from_u32, from_u64, max_pow2_exp, pow2, SequenceInt};

/// Which labeling procedure addresses the structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Super-node block first, then alternating child, leaf.
    Standard,
    /// No isolated node; first leaf, first child, super-node block, then
    /// alternating leaf, child.
    Prime,
}

/// Symbolic address of one node, supporting O(log n) label arithmetic
/// without materializing the tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeDescriptor {
    /// The single label-1 node `I`; a leaf, but at no level of the chain.
    Isolated,
    /// Slot `slot` (1-based, `slot <= s`) of the root of subtree `i`.
    Super { i: u32, slot: u32 },
    /// The `r`-th child (level 1) of the root of subtree `i`, `r <= 2^(i-1)`.
    Child { i: u32, r: u64 },
    /// The leaf (level 2) under the `r`-th child of subtree `i`.
    Leaf { i: u32, r: u64 },
}

impl NodeDescriptor {
    /// True for nodes that are leaves of the infinite structure: level-2
    /// nodes and the isolated node.
    pub fn is_leaf(self) -> bool {
        matches!(self, NodeDescriptor::Isolated | NodeDescriptor::Leaf { .. })
    }

    /// Subtree index, if the node belongs to a subtree.
    pub fn subtree(self) -> Option<u32> {
        match self {
            NodeDescriptor::Isolated => None,
            NodeDescriptor::Super { i, .. }
            | NodeDescriptor::Child { i, .. }
            | NodeDescriptor::Leaf { i, .. } => Some(i),
        }
    }
}

/// First label of subtree `i` under the standard labeling:
/// `(i-1)*s + 2^i` (one label for `I`, then `s + 2^j` per earlier subtree).
pub fn first_label_of_subtree<T: SequenceInt>(s: u32, i: u32) -> T {
    assert!(i >= 1, "subtree indices start at 1");
    from_u32::<T>(i - 1) * from_u32(s) + pow2(i)
}

/// First label of subtree `i` under the prime labeling (no isolated node,
/// so everything sits one label earlier).
fn prime_first_label<T: SequenceInt>(s: u32, i: u32) -> T {
    first_label_of_subtree::<T>(s, i) - T::one()
}

fn subtree_start<T: SequenceInt>(s: u32, i: u32, variant: Variant) -> T {
    match variant {
        Variant::Standard => first_label_of_subtree(s, i),
        Variant::Prime => prime_first_label(s, i),
    }
}

/// Finds the subtree containing label `n` (which must be past the isolated
/// node for the standard variant) and the 0-based offset of `n` within it.
///
/// The start label grows like `2^i`, so a linear scan over `i` is exact and
/// bounded by the scalar's bit width.
fn locate_subtree<T: SequenceInt>(s: u32, n: T, variant: Variant) -> (u32, T) {
    debug_assert!(n >= subtree_start(s, 1, variant));
    let mut i = 1;
    loop {
        if i + 1 >= max_pow2_exp::<T>() {
            break;
        }
        if n < subtree_start(s, i + 1, variant) {
            break;
        }
        i += 1;
    }
    (i, n - subtree_start(s, i, variant))
}

/// Resolves label `n >= 1` to its node. Total: every positive label is
/// assigned by the procedure.
pub fn label_to_node<T: SequenceInt>(s: u32, n: T, variant: Variant) -> NodeDescriptor {
    assert!(n >= T::one(), "labels start at 1");
    match variant {
        Variant::Standard => {
            if n == T::one() {
                return NodeDescriptor::Isolated;
            }
            let (i, offset) = locate_subtree(s, n, variant);
            let s_t: T = from_u32(s);
            if s >= 1 && offset < s_t {
                return NodeDescriptor::Super {
                    i,
                    slot: offset.to_u32().expect("super slot fits u32") + 1,
                };
            }
            let t = offset - s_t;
            let pair = (t >> 1).to_u64().expect("pair rank fits u64");
            if t & T::one() == T::zero() {
                NodeDescriptor::Child { i, r: pair + 1 }
            } else {
                NodeDescriptor::Leaf { i, r: pair + 1 }
            }
        }
        Variant::Prime => {
            let (i, offset) = locate_subtree(s, n, variant);
            if offset == T::zero() {
                return NodeDescriptor::Leaf { i, r: 1 };
            }
            if offset == T::one() {
                return NodeDescriptor::Child { i, r: 1 };
            }
            let s_t: T = from_u32(s);
            let two = T::one() + T::one();
            if offset < two + s_t {
                return NodeDescriptor::Super {
                    i,
                    slot: (offset - two).to_u32().expect("super slot fits u32") + 1,
                };
            }
            let t = offset - two - s_t;
            let pair = (t >> 1).to_u64().expect("pair rank fits u64");
            if t & T::one() == T::zero() {
                NodeDescriptor::Leaf { i, r: pair + 2 }
            } else {
                NodeDescriptor::Child { i, r: pair + 2 }
            }
        }
    }
}

/// Indicator that label `n` is a leaf under the standard labeling.
pub fn is_leaf<T: SequenceInt>(s: u32, n: T) -> bool {
    label_to_node(s, n, Variant::Standard).is_leaf()
}

/// Number of leaves among standard labels `1..=n`, in closed form from the
/// descriptor: the partial sums of [`is_leaf`] without the scan.
pub fn leaf_count<T: SequenceInt>(s: u32, n: T) -> T {
    match label_to_node(s, n, Variant::Standard) {
        NodeDescriptor::Isolated => T::one(),
        NodeDescriptor::Super { i, .. } => pow2(i - 1),
        NodeDescriptor::Child { i, r } => pow2::<T>(i - 1) + from_u64(r) - T::one(),
        NodeDescriptor::Leaf { i, r } => pow2::<T>(i - 1) + from_u64(r),
    }
}

/// Indicator that label `n` is a leaf under the prime labeling.
pub fn prime_is_leaf<T: SequenceInt>(s: u32, n: T) -> bool {
    label_to_node(s, n, Variant::Prime).is_leaf()
}

/// Number of leaves among prime labels `1..=n`, in closed form.
pub fn prime_leaf_count<T: SequenceInt>(s: u32, n: T) -> T {
    match label_to_node(s, n, Variant::Prime) {
        NodeDescriptor::Isolated => unreachable!("prime labeling has no isolated node"),
        NodeDescriptor::Super { i, .. } => pow2(i - 1),
        NodeDescriptor::Child { i, r } | NodeDescriptor::Leaf { i, r } => {
            pow2::<T>(i - 1) - T::one() + from_u64(r)
        }
    }
}

//! Explicit materialization of label prefixes, the chopping process, and
//! DOT export.
//!
//! A snapshot holds exactly the nodes that carry labels `1..=n` (for `s = 0`
//! the super-nodes carry no labels and therefore do not appear). Parent
//! references point into the node list; a node whose structural parent is
//! outside the snapshot is parentless.

use crate::error::{Error, Result};
use crate::scalar::{from_u32, from_u64, SequenceInt};
use crate::tree::{first_label_of_subtree, leaf_count, NodeDescriptor, Variant};
use crate::Value;

/// Materialization bound for snapshots; label arithmetic handles anything,
/// explicit node lists stop here.
pub const MAX_SNAPSHOT_LABEL: u64 = 1 << 22;

/// One labeled node of a snapshot. Super-nodes carry a label range; every
/// other node carries a single label (`first_label == last_label`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SnapshotNode<T> {
    pub first_label: T,
    pub last_label: T,
    /// For a super-node this is the descriptor of its first slot.
    pub descriptor: NodeDescriptor,
    pub parent: Option<usize>,
}

/// The subgraph induced by the first `n` labels, in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSnapshot<T = Value> {
    s: u32,
    n: T,
    variant: Variant,
    nodes: Vec<SnapshotNode<T>>,
}

impl<T: SequenceInt> TreeSnapshot<T> {
    /// Builds the snapshot for labels `1..=n`.
    pub fn build(s: u32, n: T, variant: Variant) -> Result<Self> {
        assert!(n >= T::one(), "labels start at 1");
        let n_u64 = n.to_u64().unwrap_or(u64::MAX);
        if n_u64 > MAX_SNAPSHOT_LABEL {
            return Err(Error::SnapshotTooLarge {
                n: n_u64,
                bound: MAX_SNAPSHOT_LABEL,
            });
        }
        let nodes = match variant {
            Variant::Standard => build_standard(s, n),
            Variant::Prime => build_prime(s, n),
        };
        Ok(TreeSnapshot {
            s,
            n,
            variant,
            nodes,
        })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// The last label of the snapshot.
    pub fn n(&self) -> T {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn nodes(&self) -> &[SnapshotNode<T>] {
        &self.nodes
    }

    /// Number of nodes that are leaves of the infinite structure.
    pub fn leaf_total(&self) -> u64 {
        self.nodes
            .iter()
            .filter(|node| node.descriptor.is_leaf())
            .count() as u64
    }

    /// See [`export_dot`].
    pub fn to_dot(&self, show_labels: bool) -> String {
        render_dot(self, show_labels)
    }
}

fn build_standard<T: SequenceInt>(s: u32, n: T) -> Vec<SnapshotNode<T>> {
    let s_t: T = from_u32(s);
    let two = T::one() + T::one();
    let mut nodes = vec![SnapshotNode {
        first_label: T::one(),
        last_label: T::one(),
        descriptor: NodeDescriptor::Isolated,
        parent: None,
    }];
    let mut prev_super: Option<usize> = None;
    let mut i = 1u32;
    loop {
        let start = first_label_of_subtree::<T>(s, i);
        if start > n {
            break;
        }
        let mut super_idx = None;
        if s >= 1 {
            let hi = (start + s_t - T::one()).min(n);
            super_idx = Some(nodes.len());
            nodes.push(SnapshotNode {
                first_label: start,
                last_label: hi,
                descriptor: NodeDescriptor::Super { i, slot: 1 },
                parent: prev_super,
            });
        }
        let fanout = 1u64 << (i - 1);
        for r in 1..=fanout {
            let child_label = start + s_t + two * from_u64(r - 1);
            if child_label > n {
                break;
            }
            let child_idx = nodes.len();
            nodes.push(SnapshotNode {
                first_label: child_label,
                last_label: child_label,
                descriptor: NodeDescriptor::Child { i, r },
                parent: super_idx,
            });
            let leaf_label = child_label + T::one();
            if leaf_label <= n {
                nodes.push(SnapshotNode {
                    first_label: leaf_label,
                    last_label: leaf_label,
                    descriptor: NodeDescriptor::Leaf { i, r },
                    parent: Some(child_idx),
                });
            }
        }
        if super_idx.is_some() {
            prev_super = super_idx;
        }
        i += 1;
    }
    nodes
}

fn build_prime<T: SequenceInt>(s: u32, n: T) -> Vec<SnapshotNode<T>> {
    let s_t: T = from_u32(s);
    let two = T::one() + T::one();
    let mut nodes: Vec<SnapshotNode<T>> = Vec::new();
    let mut prev_super: Option<usize> = None;
    let mut i = 1u32;
    loop {
        let start = first_label_of_subtree::<T>(s, i) - T::one();
        if start > n {
            break;
        }
        // order within the subtree: l(i,1), c(i,1), super block, l(i,2),
        // c(i,2), ...
        let first_child = start + T::one();
        let child_included = first_child <= n;
        let super_included = s >= 1 && start + two <= n;
        let leaf_parent = child_included.then(|| nodes.len() + 1);
        nodes.push(SnapshotNode {
            first_label: start,
            last_label: start,
            descriptor: NodeDescriptor::Leaf { i, r: 1 },
            parent: leaf_parent,
        });
        let mut super_idx = None;
        if child_included {
            let child_parent = super_included.then(|| nodes.len() + 1);
            nodes.push(SnapshotNode {
                first_label: first_child,
                last_label: first_child,
                descriptor: NodeDescriptor::Child { i, r: 1 },
                parent: child_parent,
            });
            if super_included {
                let lo = start + two;
                let hi = (start + T::one() + s_t).min(n);
                super_idx = Some(nodes.len());
                nodes.push(SnapshotNode {
                    first_label: lo,
                    last_label: hi,
                    descriptor: NodeDescriptor::Super { i, slot: 1 },
                    parent: prev_super,
                });
            }
        }
        let fanout = 1u64 << (i - 1);
        for r in 2..=fanout {
            let leaf_label = start + two + s_t + two * from_u64(r - 2);
            if leaf_label > n {
                break;
            }
            let child_label = leaf_label + T::one();
            let pair_child_included = child_label <= n;
            let pair_leaf_parent = pair_child_included.then(|| nodes.len() + 1);
            nodes.push(SnapshotNode {
                first_label: leaf_label,
                last_label: leaf_label,
                descriptor: NodeDescriptor::Leaf { i, r },
                parent: pair_leaf_parent,
            });
            if pair_child_included {
                nodes.push(SnapshotNode {
                    first_label: child_label,
                    last_label: child_label,
                    descriptor: NodeDescriptor::Child { i, r },
                    parent: super_idx,
                });
            }
        }
        if super_idx.is_some() {
            prev_super = super_idx;
        }
        i += 1;
    }
    nodes
}

/// Applies the chopping process to a standard snapshot: the first super-node
/// and every leaf (including the isolated node) are removed, the only child
/// of the first super-node becomes the new isolated node, every second
/// remaining level-1 node becomes the leaf of its left sibling, and the
/// result is relabeled by the standard procedure.
pub fn chop<T: SequenceInt>(snap: &TreeSnapshot<T>) -> Result<TreeSnapshot<T>> {
    if snap.variant != Variant::Standard {
        return Err(Error::ChopUnsupportedVariant);
    }
    if snap.n < from_u32(snap.s + 4) {
        return Err(Error::ChopTooSmall {
            s: snap.s,
            n: snap.n.to_u64().unwrap_or(u64::MAX),
        });
    }

    // surviving structure, per old subtree index i >= 2: how many labels the
    // super carried and how many children were present
    let mut old: Vec<(u32, T, u64)> = Vec::new();
    for node in &snap.nodes {
        match node.descriptor {
            NodeDescriptor::Super { i, .. } if i >= 2 => {
                old.push((i, node.last_label - node.first_label + T::one(), 0));
            }
            NodeDescriptor::Child { i, .. } if i >= 2 => {
                if old.last().map(|&(j, ..)| j) != Some(i) {
                    old.push((i, T::zero(), 0)); // s = 0: no super labels
                }
                old.last_mut().unwrap().2 += 1;
            }
            _ => {}
        }
    }

    let s_t: T = from_u32(snap.s);
    let mut nodes = vec![SnapshotNode {
        first_label: T::one(),
        last_label: T::one(),
        descriptor: NodeDescriptor::Isolated,
        parent: None,
    }];
    let mut next = T::one() + T::one();
    let mut prev_super: Option<usize> = None;
    for &(i, super_labels, children) in &old {
        let j = i - 1;
        let mut super_idx = None;
        if super_labels > T::zero() {
            debug_assert!(super_labels <= s_t);
            super_idx = Some(nodes.len());
            nodes.push(SnapshotNode {
                first_label: next,
                last_label: next + super_labels - T::one(),
                descriptor: NodeDescriptor::Super { i: j, slot: 1 },
                parent: prev_super,
            });
            next += super_labels;
        }
        // odd-rank children survive as children, even ranks drop to leaves
        let new_children = children.div_ceil(2);
        for t in 1..=new_children {
            let child_idx = nodes.len();
            nodes.push(SnapshotNode {
                first_label: next,
                last_label: next,
                descriptor: NodeDescriptor::Child { i: j, r: t },
                parent: super_idx,
            });
            next += T::one();
            if 2 * t <= children {
                nodes.push(SnapshotNode {
                    first_label: next,
                    last_label: next,
                    descriptor: NodeDescriptor::Leaf { i: j, r: t },
                    parent: Some(child_idx),
                });
                next += T::one();
            }
        }
        if super_idx.is_some() {
            prev_super = super_idx;
        }
    }

    let new_n = next - T::one();
    debug_assert_eq!(new_n, snap.n - s_t - leaf_count(snap.s, snap.n));
    Ok(TreeSnapshot {
        s: snap.s,
        n: new_n,
        variant: Variant::Standard,
        nodes,
    })
}

fn node_name(descriptor: NodeDescriptor) -> String {
    match descriptor {
        NodeDescriptor::Isolated => "I".to_string(),
        NodeDescriptor::Super { i, .. } => format!("s{i}"),
        NodeDescriptor::Child { i, r } => format!("c{i}_{r}"),
        NodeDescriptor::Leaf { i, r } => format!("l{i}_{r}"),
    }
}

fn label_range<T: SequenceInt>(node: &SnapshotNode<T>) -> String {
    if node.first_label == node.last_label {
        format!("[{}]", node.first_label)
    } else {
        format!("[{}-{}]", node.first_label, node.last_label)
    }
}

/// Renders a snapshot as a DOT digraph: one node statement per tree node and
/// one edge per parent link, both in label order. Super-nodes always show
/// their label range; `show_labels` annotates every node.
pub fn export_dot<T: SequenceInt>(snap: &TreeSnapshot<T>, show_labels: bool) -> String {
    render_dot(snap, show_labels)
}

fn render_dot<T: SequenceInt>(snap: &TreeSnapshot<T>, show_labels: bool) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    out.push_str("digraph tree {\n  rankdir=TB;\n");
    for node in &snap.nodes {
        let name = node_name(node.descriptor);
        let shape = match node.descriptor {
            NodeDescriptor::Super { .. } => "box",
            NodeDescriptor::Child { .. } => "circle",
            NodeDescriptor::Isolated | NodeDescriptor::Leaf { .. } => "doublecircle",
        };
        let annotated = show_labels || matches!(node.descriptor, NodeDescriptor::Super { .. });
        let text = if annotated {
            format!("{name} {}", label_range(node))
        } else {
            name.clone()
        };
        writeln!(out, "  {name} [shape={shape}, label=\"{text}\"];").unwrap();
    }
    for node in &snap.nodes {
        if let Some(parent) = node.parent {
            writeln!(
                out,
                "  {} -> {};",
                node_name(snap.nodes[parent].descriptor),
                node_name(node.descriptor)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

use std::fmt::Write as _;

use super::{escape, Canonical, CayleyMachine};
use crate::semigroup::ElementId;

/// Node of a portrait: its address and the letter map `a ↦ f_v([a])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortraitNode {
    pub address: Vec<ElementId>,
    pub map: Vec<(ElementId, ElementId)>,
}

/// A finite portrait. Children are indexed over the whole input alphabet,
/// so in full mode the child at the identity letter repeats its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Portrait {
    pub depth: usize,
    pub nodes: Vec<PortraitNode>,
    names: Vec<String>,
}

pub(super) fn build(machine: &CayleyMachine, f: &Canonical, depth: usize) -> Portrait {
    let alphabet = machine.alphabet();
    let mut nodes = Vec::new();
    let mut level: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..depth {
        let mut next_level = Vec::new();
        for (address, q) in level {
            let map = (0..alphabet.len())
                .map(|a| (alphabet[a], alphabet[f.output(q, a)]))
                .collect();
            nodes.push(PortraitNode {
                address: machine.letters_to_values(&address),
                map,
            });
            for a in 0..alphabet.len() {
                let mut child = address.clone();
                child.push(a);
                next_level.push((child, f.next(q, a)));
            }
        }
        level = next_level;
    }
    let names = (0..machine.values())
        .map(|v| machine.value_name(ElementId::new(v)).to_string())
        .collect();
    Portrait { depth, nodes, names }
}

impl Portrait {
    pub fn node(&self, address: &[ElementId]) -> Option<&PortraitNode> {
        self.nodes.iter().find(|n| n.address == address)
    }

    fn name(&self, v: ElementId) -> &str {
        &self.names[v.index()]
    }

    fn address_label(&self, address: &[ElementId]) -> String {
        if address.is_empty() {
            "ε".into()
        } else {
            address.iter().map(|&v| self.name(v)).collect::<Vec<_>>().join(",")
        }
    }

    fn map_label(&self, node: &PortraitNode) -> String {
        node.map
            .iter()
            .map(|&(a, b)| format!("{}↦{}", self.name(a), self.name(b)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// One line per node, indented by depth.
    pub fn to_text(&self) -> String {
        let mut text = String::new();
        for node in &self.nodes {
            let indent = "  ".repeat(node.address.len());
            let _ = writeln!(text, "{indent}[{}] {}", self.address_label(&node.address), self.map_label(node));
        }
        text
    }

    pub fn to_dot(&self) -> String {
        let mut dot = String::from("digraph portrait {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(dot, "  n{i} [shape=box,label=\"{}\"];", escape(&self.map_label(node)));
            if let Some((&last, parent)) = node.address.split_last() {
                let p = self.nodes.iter().position(|n| n.address == parent).expect("parent precedes child");
                let _ = writeln!(dot, "  n{p} -> n{i} [label=\"{}\"];", escape(self.name(last)));
            }
        }
        dot.push_str("}\n");
        dot
    }
}

use std::fmt::Write as _;

use posetdim_core::Poset;

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz source for the Hasse diagram: one node per element, one edge
/// per cover pair pointing upward, laid out bottom to top.
pub fn to_dot(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
    for name in p.names() {
        writeln!(out, "  {};", quote(name)).unwrap();
    }
    for (a, b) in p.cover_names() {
        writeln!(out, "  {} -> {};", quote(a), quote(b)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_for_chain() {
        let p = Poset::new(["x", "y\"q"], [("x", "y\"q")]).unwrap();
        assert_eq!(
            to_dot(&p),
            "digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n  \"x\";\n  \"y\\\"q\";\n  \"x\" -> \"y\\\"q\";\n}\n"
        );
    }
}

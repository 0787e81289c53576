use std::fmt::Write;

use beta_trees::BicubicMap;

/// Graphviz rendering of a map. Black and white vertices keep their
/// colours and the root edge is drawn bold. Parallel edges are kept.
pub fn map_to_dot(m: &BicubicMap) -> String {
    let v = m.vertices();
    let mut out = String::from("graph bicubic {\n  node [shape=circle, label=\"\", width=0.25];\n");
    for (id, &black) in v.black.iter().enumerate() {
        let fill = if black { "black" } else { "white" };
        let _ = writeln!(out, "  v{id} [style=filled, fillcolor={fill}];");
    }
    let alpha = m.alpha();
    let root = m.root() as usize;
    for (d, &e) in alpha.iter().enumerate() {
        let e = e as usize;
        if d < e {
            let (a, b) = (v.vertex_of[d], v.vertex_of[e]);
            if d == root || e == root {
                let _ = writeln!(out, "  v{a} -- v{b} [penwidth=3];");
            } else {
                let _ = writeln!(out, "  v{a} -- v{b};");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_has_two_vertices_and_three_edges() {
        let dot = map_to_dot(&BicubicMap::theta());
        assert_eq!(dot.matches("fillcolor").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot.matches("penwidth").count(), 1);
    }
}

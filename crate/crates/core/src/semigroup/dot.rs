use std::fmt::Write;

use super::{FiniteSemigroup, GreensStructure};

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Egg-box diagram in DOT: one cluster per D-class, a grid of H-classes
/// inside it, group H-classes shaded.
pub fn eggbox_dot(s: &FiniteSemigroup, g: &GreensStructure) -> String {
    let mut out = String::from("digraph eggbox {\n  node [shape=plaintext];\n");
    for (d, bx) in g.eggbox.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_d{d} {{\n    label=\"D{d}\";");
        let _ = write!(
            out,
            "    d{d} [label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">"
        );
        for row in &bx.cells {
            out.push_str("<tr>");
            for &h in row {
                let text: Vec<String> =
                    g.h_classes[h].iter().map(|&x| escape(s.label(x))).collect();
                let fill = if g.is_group(s, h) {
                    " bgcolor=\"lightgray\""
                } else {
                    ""
                };
                let _ = write!(out, "<td{fill}>{}</td>", text.join("<br/>"));
            }
            out.push_str("</tr>");
        }
        out.push_str("</table>>];\n  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{greens, Transformation};

    #[test]
    fn one_cluster_per_d_class() {
        let gens = [
            Transformation::new(vec![0, 0, 1]).unwrap(),
            Transformation::new(vec![0, 1, 2]).unwrap(),
        ];
        let s = FiniteSemigroup::closure(&gens).unwrap();
        let g = greens(&s);
        let dot = eggbox_dot(&s, &g);
        assert_eq!(dot.matches("subgraph cluster_").count(), g.d_classes.len());
        assert!(dot.contains("bgcolor"));
    }
}
